//! Machine checks for finite presentations of the orthogonal group `O(g, F2)`,
//! viewed as the action of the mapping class group of a non-orientable
//! surface on mod-2 first homology.
//!
//! Words are read right to left: in `a1 a2` the twist `a2` acts first.
//! Matrices act on row vectors, row `i` being the image of `x_i`.

pub mod coset;
pub mod gf2;
pub mod homology;
pub mod ortho;
pub mod par;
pub mod presentation;
pub mod report;
pub mod rewriter;

pub use gf2::{BitMatrix, BitVec, Gf2Error};
pub use ortho::{GeneratorSet, OrthoError};
pub use par::Exec;
pub use presentation::{eval, Presentation, PresentationError, Word};
pub use report::{Report, Status};
