//! Finitely presented groups: words, relators, the concrete presentations of
//! the mod-2 homology automorphism group, and their evaluation as matrices.

mod builders;
mod json;
mod tietze;
mod word;

use thiserror::Error;

pub use builders::{
    b_word, level2_rho, quotient_mod_level2, section4, theorem_1_1, theorem_1_1_simplified,
    theorem_2_1, RhoExpression,
};
pub use json::{parse, serialize};
pub use tietze::eliminate_generators;
pub use word::{exponent_sums, free_reduce, word_concat, word_invert, word_pow, Letter, Word};

use crate::gf2::BitMatrix;
use crate::ortho::GeneratorSet;
use crate::par::{self, Exec};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("genus {0} is outside the supported range")]
    InvalidGenus(usize),
    #[error("generator `{0}` is not bound")]
    UnboundGenerator(String),
    #[error("relator {tag} uses unknown generator `{gen}`")]
    UnknownGenerator { tag: String, gen: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("bad word token `{0}`")]
    BadToken(String),
    #[error("malformed presentation at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
    #[error("presentation has the wrong shape: {0}")]
    WrongShape(String),
}

/// A relator together with the relation it was derived from, e.g. `"(3)"` or `"(A5)"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub tag: String,
    pub word: Word,
}

/// Generators and relators; the group is the free group on the generators
/// modulo the normal closure of the relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    genus: usize,
    generators: Vec<String>,
    relators: Vec<Relator>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        genus: usize,
        generators: Vec<String>,
    ) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        Ok(Self { name: name.into(), genus, generators, relators: Vec::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn relator_words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|r| &r.word)
    }

    pub fn relators_tagged<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a Relator> {
        self.relators.iter().filter(move |r| r.tag == tag)
    }

    /// Adds a relator after free reduction. Empty words and words already
    /// present are skipped; returns whether the relator was added.
    pub fn add_relator(
        &mut self,
        tag: impl Into<String>,
        word: Word,
    ) -> Result<bool, PresentationError> {
        let tag = tag.into();
        if let Some(gen) = word.generators().find(|g| !self.generators.iter().any(|x| x == g)) {
            return Err(PresentationError::UnknownGenerator { tag, gen: gen.to_string() });
        }
        let word = word.free_reduce();
        if word.is_empty() || self.relators.iter().any(|r| r.word == word) {
            return Ok(false);
        }
        self.relators.push(Relator { tag, word });
        Ok(true)
    }

    /// Appends a relator verbatim, bypassing reduction and deduplication.
    pub(crate) fn push_raw(&mut self, relator: Relator) {
        self.relators.push(relator);
    }
}

/// Evaluates a word as a matrix. The rightmost letter acts first, so with
/// matrices acting on row vectors `eval(u·v) = eval(v)·eval(u)`.
pub fn eval(w: &Word, gens: &GeneratorSet) -> Result<BitMatrix, PresentationError> {
    let mut acc = BitMatrix::identity(gens.dim()).expect("generator set has valid dimension");
    for l in w.letters() {
        let m = gens
            .letter_matrix(&l.gen, l.exp)
            .ok_or_else(|| PresentationError::UnboundGenerator(l.gen.clone()))?;
        acc = m.mul_unchecked(&acc);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct RelatorCheck {
    pub tag: String,
    pub word: Word,
    pub holds: bool,
    /// The evaluated matrix when it is not the identity.
    pub offending: Option<BitMatrix>,
}

#[derive(Clone, Debug)]
pub struct RelatorReport {
    pub checks: Vec<RelatorCheck>,
}

impl RelatorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Evaluates every relator and records whether it is the identity.
pub fn verify_relators(
    p: &Presentation,
    gens: &GeneratorSet,
) -> Result<RelatorReport, PresentationError> {
    verify_relators_with(p, gens, Exec::default())
}

pub fn verify_relators_with(
    p: &Presentation,
    gens: &GeneratorSet,
    exec: Exec,
) -> Result<RelatorReport, PresentationError> {
    if let Some(g) = p.generators().iter().find(|g| !gens.contains(g)) {
        return Err(PresentationError::UnboundGenerator(g.clone()));
    }
    let checks = par::map(exec, p.relators(), |r| {
        let m = eval(&r.word, gens)?;
        let holds = m.is_identity();
        Ok(RelatorCheck {
            tag: r.tag.clone(),
            word: r.word.clone(),
            holds,
            offending: (!holds).then_some(m),
        })
    });
    Ok(RelatorReport { checks: checks.into_iter().collect::<Result<_, _>>()? })
}
