//! The orthogonal group `O(g, F2)`: the Dehn twist images `a_i`, `b`, `b_i`
//! as matrices, group orders by breadth-first closure and by formula, the
//! stabilization embedding, and conjugator search.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use indexmap::IndexMap;
use num_bigint::BigUint;
use thiserror::Error;

use crate::gf2::{BitMatrix, Gf2Error};
use crate::par::{self, Exec};
use crate::presentation::{eval, Letter, Word};

/// Default element cap for [`bfs_closure`]; covers genus 7.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Default word length for [`conjugator_search`].
pub const DEFAULT_CONJUGATOR_DEPTH: usize = 8;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OrthoError {
    #[error("index {index} out of range for genus {genus}")]
    IndexOutOfRange { genus: usize, index: usize },
    #[error("genus {genus} too small (need at least {min})")]
    GenusTooSmall { genus: usize, min: usize },
    #[error("b_{index} needs even genus >= 6 and 0 <= index <= (g-2)/2, got genus {genus}")]
    ParityOrRange { genus: usize, index: usize },
    #[error("closure exceeded cap after finding {found} elements")]
    CapExceeded { found: usize },
    #[error("matrix of dimension {got} where {expected} was required")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix `{0}` is not orthogonal")]
    NotOrthogonal(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// `a_i`: swaps `x_i` and `x_{i+1}`.
pub fn gen_a(g: usize, i: usize) -> Result<BitMatrix, OrthoError> {
    if g < 2 {
        return Err(OrthoError::GenusTooSmall { genus: g, min: 2 });
    }
    if i == 0 || i >= g {
        return Err(OrthoError::IndexOutOfRange { genus: g, index: i });
    }
    let mut rows = BitMatrix::identity(g)?.rows().to_vec();
    rows.swap(i - 1, i);
    Ok(BitMatrix::from_rows(rows)?)
}

/// `b`: `x_k ↦ x_1 + x_2 + x_3 + x_4 - x_k` for `k ≤ 4`, identity elsewhere.
pub fn gen_b(g: usize) -> Result<BitMatrix, OrthoError> {
    if g < 4 {
        return Err(OrthoError::GenusTooSmall { genus: g, min: 4 });
    }
    let mut rows = BitMatrix::identity(g)?.rows().to_vec();
    for (k, row) in rows.iter_mut().take(4).enumerate() {
        *row = 0b1111 & !(1 << k);
    }
    Ok(BitMatrix::from_rows(rows)?)
}

/// `b_i` for even genus, through `b0 = a1`, `b1 = b`, `b2 = (a1 a2 a3 a4 a5 b)^5`
/// and the recursion for `b_{i+1}` in terms of `b_{i-1}`, `b_i`.
pub fn gen_bi(g: usize, i: usize) -> Result<BitMatrix, OrthoError> {
    if g % 2 != 0 || g < 6 || i > (g - 2) / 2 {
        return Err(OrthoError::ParityOrRange { genus: g, index: i });
    }
    let mut set = GeneratorSet::base(g)?;
    extend_b_family(&mut set, i)?;
    Ok(set.get(&format!("b{i}")).expect("just inserted").clone())
}

fn extend_b_family(set: &mut GeneratorSet, upto: usize) -> Result<(), OrthoError> {
    let g = set.genus;
    set.insert("b0", gen_a(g, 1)?);
    set.insert("b1", gen_b(g)?);
    for j in 2..=upto {
        let word = if j == 2 {
            Word::parse("a1 a2 a3 a4 a5 b").pow_raw(5)
        } else {
            let i = j - 1;
            let prev = format!("b{}", i - 1);
            let cur = format!("b{i}");
            let mid: Vec<String> = (2 * i..=2 * i + 3).map(|k| format!("a{k}")).collect();
            let head = Word::chain([&Word::gen(&prev), &Word::product(&mid), &Word::gen(&cur)]);
            let tail = Word::chain([&Word::gen(&prev), &Word::product(&mid)]);
            head.pow_raw(5).concat_raw(&tail.pow_raw(-6))
        };
        let m = eval(&word, set).expect("recursion only uses bound generators");
        set.insert(&format!("b{j}"), m);
    }
    Ok(())
}

/// Named generator matrices for one genus, in generator-name order.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    genus: usize,
    elements: IndexMap<String, BitMatrix>,
    inverses: IndexMap<String, BitMatrix>,
}

impl GeneratorSet {
    fn empty(g: usize) -> Result<Self, OrthoError> {
        if g == 0 {
            return Err(OrthoError::GenusTooSmall { genus: 0, min: 1 });
        }
        Ok(Self { genus: g, elements: IndexMap::new(), inverses: IndexMap::new() })
    }

    fn insert(&mut self, name: &str, m: BitMatrix) {
        let inv = m.inverse().expect("generator matrices are invertible");
        self.elements.insert(name.to_string(), m);
        self.inverses.insert(name.to_string(), inv);
    }

    /// `a_1 … a_{g-1}` and, for `g ≥ 4`, `b`.
    fn base(g: usize) -> Result<Self, OrthoError> {
        let mut set = Self::empty(g)?;
        for i in 1..g {
            set.insert(&format!("a{i}"), gen_a(g, i)?);
        }
        if g >= 4 {
            set.insert("b", gen_b(g)?);
        }
        Ok(set)
    }

    /// The generators of the genus-`g` presentation: `a_i`, `b`, and for even
    /// `g ≥ 8` also `b_0, …, b_{(g-2)/2}`.
    pub fn new(g: usize) -> Result<Self, OrthoError> {
        let mut set = Self::base(g)?;
        if g % 2 == 0 && g >= 8 {
            extend_b_family(&mut set, (g - 2) / 2)?;
        }
        Ok(set)
    }

    /// Like [`GeneratorSet::new`], with the `b_i` family also at genus 6.
    pub fn with_b_family(g: usize) -> Result<Self, OrthoError> {
        let mut set = Self::base(g)?;
        if g % 2 == 0 && g >= 6 {
            extend_b_family(&mut set, (g - 2) / 2)?;
        }
        Ok(set)
    }

    /// Images of all mapping class group generators: `y` and `rho` act trivially.
    pub fn level2_images(g: usize) -> Result<Self, OrthoError> {
        let mut set = Self::with_b_family(g)?;
        set.insert("y", BitMatrix::identity(g)?);
        set.insert("rho", BitMatrix::identity(g)?);
        Ok(set)
    }

    /// Only the named generators, in the given order.
    pub fn restricted_to<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, OrthoError> {
        let mut set = Self::empty(self.genus)?;
        for n in names {
            let m = self.get(n.as_ref()).ok_or_else(|| OrthoError::IndexOutOfRange {
                genus: self.genus,
                index: 0,
            })?;
            set.insert(n.as_ref(), m.clone());
        }
        Ok(set)
    }

    /// Builds a set from arbitrary orthogonal matrices.
    pub fn from_matrices(
        g: usize,
        named: impl IntoIterator<Item = (String, BitMatrix)>,
    ) -> Result<Self, OrthoError> {
        let mut set = Self::empty(g)?;
        for (name, m) in named {
            if m.dim() != g {
                return Err(OrthoError::DimensionMismatch { expected: g, got: m.dim() });
            }
            if !m.is_orthogonal() {
                return Err(OrthoError::NotOrthogonal(name));
            }
            set.insert(&name, m);
        }
        Ok(set)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Matrix dimension (equal to the genus).
    pub fn dim(&self) -> usize {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.elements.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Option<&BitMatrix> {
        self.elements.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.elements.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BitMatrix)> {
        self.elements.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The matrix of `name^exp` for `exp = ±1`.
    pub fn letter_matrix(&self, name: &str, exp: i8) -> Option<&BitMatrix> {
        if exp < 0 {
            self.inverses.get(name)
        } else {
            self.elements.get(name)
        }
    }
}

/// Packed form of a matrix used as a hash key during closure.
trait Packed: Clone + Eq + Hash + Send + Sync {
    fn pack(m: &BitMatrix) -> Self;
    fn unpack(&self, dim: usize) -> BitMatrix;
    /// `gen · self`
    fn left_mul(&self, gen_rows: &[u64], dim: usize) -> Self;
}

/// Rows concatenated into 128 bits; used for `g ≤ 11`.
impl Packed for u128 {
    fn pack(m: &BitMatrix) -> Self {
        let g = m.dim();
        m.rows().iter().enumerate().fold(0u128, |acc, (i, &r)| acc | (r as u128) << (i * g))
    }

    fn unpack(&self, dim: usize) -> BitMatrix {
        let mask = (1u128 << dim) - 1;
        let rows = (0..dim).map(|i| ((self >> (i * dim)) & mask) as u64).collect();
        BitMatrix::from_rows(rows).expect("valid dimension")
    }

    fn left_mul(&self, gen_rows: &[u64], dim: usize) -> Self {
        let mask = (1u128 << dim) - 1;
        let mut out = 0u128;
        for (i, &r) in gen_rows.iter().enumerate() {
            let mut acc = 0u128;
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                acc ^= (self >> (j * dim)) & mask;
                bits &= bits - 1;
            }
            out |= acc << (i * dim);
        }
        out
    }
}

impl Packed for Box<[u64]> {
    fn pack(m: &BitMatrix) -> Self {
        m.rows().into()
    }

    fn unpack(&self, _dim: usize) -> BitMatrix {
        BitMatrix::from_rows(self.to_vec()).expect("valid dimension")
    }

    fn left_mul(&self, gen_rows: &[u64], _dim: usize) -> Self {
        gen_rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    acc ^= self[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                acc
            })
            .collect()
    }
}

/// Result of a breadth-first closure.
#[derive(Clone, Debug)]
pub struct Closure {
    pub order: u64,
    /// Elements in discovery order, when requested.
    pub elements: Option<Vec<BitMatrix>>,
}

/// Order of the group generated by `gens`, by breadth-first closure under
/// left multiplication starting from the identity.
pub fn bfs_closure(gens: &GeneratorSet, cap: usize) -> Result<Closure, OrthoError> {
    bfs_closure_with(gens, cap, false, Exec::default())
}

/// [`bfs_closure`] with control over element retention and execution mode.
/// Discovery order, and therefore the result, does not depend on `exec`.
pub fn bfs_closure_with(
    gens: &GeneratorSet,
    cap: usize,
    keep_elements: bool,
    exec: Exec,
) -> Result<Closure, OrthoError> {
    for (name, m) in gens.iter() {
        if !m.is_orthogonal() {
            return Err(OrthoError::NotOrthogonal(name.to_string()));
        }
    }
    if gens.dim() <= 11 {
        closure::<u128>(gens, cap, keep_elements, exec)
    } else {
        closure::<Box<[u64]>>(gens, cap, keep_elements, exec)
    }
}

fn closure<K: Packed>(
    gens: &GeneratorSet,
    cap: usize,
    keep_elements: bool,
    exec: Exec,
) -> Result<Closure, OrthoError> {
    let dim = gens.dim();
    let gen_rows: Vec<&[u64]> = gens.iter().map(|(_, m)| m.rows()).collect();
    let identity = K::pack(&BitMatrix::identity(dim)?);
    let mut seen: HashSet<K> = HashSet::from([identity.clone()]);
    let mut found = vec![identity.clone()];
    let mut frontier = vec![identity];
    if cap == 0 {
        return Err(OrthoError::CapExceeded { found: 1 });
    }
    while !frontier.is_empty() {
        let candidates: Vec<Vec<K>> = par::map(exec, &frontier, |x| {
            gen_rows.iter().map(|r| x.left_mul(r, dim)).filter(|y| !seen.contains(y)).collect()
        });
        let mut next = Vec::new();
        for y in candidates.into_iter().flatten() {
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(OrthoError::CapExceeded { found: seen.len() });
                }
                if keep_elements {
                    found.push(y.clone());
                }
                next.push(y);
            }
        }
        frontier = next;
    }
    Ok(Closure {
        order: seen.len() as u64,
        elements: keep_elements.then(|| found.iter().map(|k| k.unpack(dim)).collect()),
    })
}

/// `|O(g, F2)|`: `|Sp(2h, F2)| = 2^{h²} ∏_{i=1}^{h} (4^i - 1)` for `g = 2h + 1`,
/// times `2^{2h+1}` for `g = 2h + 2`.
pub fn group_order(g: usize) -> BigUint {
    if g <= 1 {
        return BigUint::from(1u32);
    }
    let h = (g - 1) / 2;
    let mut order = BigUint::from(1u32) << (h * h);
    for i in 1..=h {
        order *= (BigUint::from(1u32) << (2 * i)) - 1u32;
    }
    if g % 2 == 0 {
        order <<= 2 * h + 1;
    }
    order
}

/// Least `k ≥ 1` with `m^k = E`.
pub fn element_order(m: &BitMatrix) -> Result<u64, OrthoError> {
    if m.rank() != m.dim() {
        return Err(OrthoError::NotOrthogonal("argument".into()));
    }
    Ok(m.order(u64::MAX).expect("invertible matrices have finite order"))
}

/// `ι_g`: places an element of `O(g-1)` in the upper-left block, 1 at `(g, g)`.
pub fn embed(g: usize, m: &BitMatrix) -> Result<BitMatrix, OrthoError> {
    if g < 2 || m.dim() != g - 1 {
        return Err(OrthoError::DimensionMismatch { expected: g.saturating_sub(1), got: m.dim() });
    }
    if !m.is_orthogonal() {
        return Err(OrthoError::NotOrthogonal("argument".into()));
    }
    let mut rows = m.rows().to_vec();
    rows.push(1 << (g - 1));
    Ok(BitMatrix::from_rows(rows)?)
}

/// Letters usable in searches: every generator, plus its inverse unless it is an involution.
fn search_letters(gens: &GeneratorSet) -> Vec<(Letter, BitMatrix, BitMatrix)> {
    let mut out = Vec::new();
    for (name, m) in gens.iter() {
        let inv = gens.letter_matrix(name, -1).expect("inverse stored").clone();
        let involution = &inv == m;
        out.push((Letter::new(name, 1), m.clone(), inv.clone()));
        if !involution {
            out.push((Letter::new(name, -1), inv, m.clone()));
        }
    }
    out
}

/// Finds a word `w` with `w · base · w⁻¹ = target` in the group (so that
/// `eval(w base w⁻¹) = target`), of length at most `depth`, by meeting in the
/// middle between conjugates of `base` and of `target`. Returns a shortest
/// such word, or `None`.
pub fn conjugator_search(
    target: &BitMatrix,
    base: &BitMatrix,
    gens: &GeneratorSet,
    depth: usize,
) -> Option<Word> {
    if target.dim() != gens.dim() || base.dim() != gens.dim() {
        return None;
    }
    let letters = search_letters(gens);
    // ℓ x ℓ⁻¹ evaluates to E(ℓ)⁻¹ X E(ℓ) under the right-to-left convention.
    let forward = orbit_layers(base, &letters, depth.div_ceil(2), false, |x, m, inv| {
        inv.mul_unchecked(x).mul_unchecked(m)
    });
    let backward = orbit_layers(target, &letters, depth / 2, true, |x, m, inv| {
        m.mul_unchecked(x).mul_unchecked(inv)
    });
    let mut best: Option<Word> = None;
    for (mat, v) in &backward.order {
        if let Some(u) = forward.words.get(mat) {
            let w = Word::chain([v, u]);
            if best.as_ref().map_or(true, |b| w.len() < b.len()) {
                best = Some(w);
            }
        }
    }
    best
}

struct Orbit {
    words: HashMap<BitMatrix, Word>,
    order: Vec<(BitMatrix, Word)>,
}

/// Breadth-first orbit of `start`, recording one shortest word per element.
/// Forward words grow on the left, backward words (`append`) on the right.
fn orbit_layers(
    start: &BitMatrix,
    letters: &[(Letter, BitMatrix, BitMatrix)],
    depth: usize,
    append: bool,
    step: impl Fn(&BitMatrix, &BitMatrix, &BitMatrix) -> BitMatrix,
) -> Orbit {
    let mut words = HashMap::from([(start.clone(), Word::empty())]);
    let mut order = vec![(start.clone(), Word::empty())];
    let mut frontier = vec![(start.clone(), Word::empty())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (x, w) in &frontier {
            for (letter, m, inv) in letters {
                let y = step(x, m, inv);
                if words.contains_key(&y) {
                    continue;
                }
                let one = Word::from_letters(vec![letter.clone()]);
                let nw = if append { w.concat_raw(&one) } else { one.concat_raw(w) };
                words.insert(y.clone(), nw.clone());
                order.push((y.clone(), nw.clone()));
                next.push((y, nw));
            }
        }
        frontier = next;
    }
    Orbit { words, order }
}

/// The braid-conjugation word `w_i` with `w_i b w_i⁻¹ = a_i`: start from
/// `b a4` (conjugating `b` to `a4`) and extend one index at a time by
/// `a_j a_{j±1}`, using `(x y) x (x y)⁻¹ = y` whenever `x y x = y x y`.
pub fn lemma42_conjugator(g: usize, i: usize) -> Result<Word, OrthoError> {
    if g < 5 {
        return Err(OrthoError::GenusTooSmall { genus: g, min: 5 });
    }
    if i == 0 || i >= g {
        return Err(OrthoError::IndexOutOfRange { genus: g, index: i });
    }
    let mut w = Word::parse("b a4");
    let mut j = 4;
    while j != i {
        let next = if i > j { j + 1 } else { j - 1 };
        w = Word::product(&[format!("a{j}"), format!("a{next}")]).concat_raw(&w);
        j = next;
    }
    Ok(w)
}

/// Whether `w · base · w⁻¹` evaluates to `target`.
pub fn conjugates_to(
    w: &Word,
    base: &Word,
    target: &BitMatrix,
    gens: &GeneratorSet,
) -> bool {
    let conj = Word::chain([w, base, &w.inverse_raw()]);
    eval(&conj, gens).map(|m| &m == target).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_bit_strings(rows).unwrap()
    }

    #[test]
    fn generator_matrices() {
        assert_eq!(gen_a(3, 1).unwrap(), bits(&["010", "100", "001"]));
        assert!(gen_a(2, 1).unwrap().mul(&gen_a(2, 1).unwrap()).unwrap().is_identity());
        assert_eq!(gen_a(5, 4).unwrap(), bits(&["10000", "01000", "00100", "00001", "00010"]));
        assert_eq!(gen_b(4).unwrap(), bits(&["0111", "1011", "1101", "1110"]));
        let b6 = gen_b(6).unwrap();
        assert_eq!(b6.row(5).bits(), 1 << 4);
        assert_eq!(b6.row(6).bits(), 1 << 5);
        assert!(gen_a(3, 3).is_err());
        assert!(gen_a(3, 0).is_err());
        assert!(gen_b(3).is_err());
    }

    #[test]
    fn b_family() {
        assert_eq!(gen_bi(8, 0).unwrap(), gen_a(8, 1).unwrap());
        assert_eq!(gen_bi(8, 1).unwrap(), gen_b(8).unwrap());
        let b3 = gen_bi(8, 3).unwrap();
        assert!(b3.is_orthogonal());
        let a3 = gen_a(8, 3).unwrap();
        assert_eq!(a3.mul(&b3).unwrap(), b3.mul(&a3).unwrap());
        assert!(gen_bi(7, 1).is_err());
        assert!(gen_bi(8, 4).is_err());
        assert!(gen_bi(4, 0).is_err());
        assert!(gen_bi(6, 2).unwrap().is_orthogonal());
    }

    #[test]
    fn generator_sets() {
        let s4 = GeneratorSet::new(4).unwrap();
        assert_eq!(s4.names().collect::<Vec<_>>(), ["a1", "a2", "a3", "b"]);
        let s8 = GeneratorSet::new(8).unwrap();
        assert!(s8.contains("b3") && s8.contains("b0") && !s8.contains("b4"));
        assert!(!GeneratorSet::new(6).unwrap().contains("b2"));
        assert!(GeneratorSet::with_b_family(6).unwrap().contains("b2"));
        assert!(GeneratorSet::new(12).unwrap().iter().all(|(_, m)| m.is_orthogonal()));
        assert!(GeneratorSet::new(1).unwrap().is_empty());
        assert!(GeneratorSet::new(0).is_err());
        let bad = GeneratorSet::from_matrices(2, [("x".to_string(), bits(&["11", "01"]))]);
        assert!(matches!(bad, Err(OrthoError::NotOrthogonal(_))));
    }

    #[test]
    fn small_closures() {
        let order = |g: usize| bfs_closure(&GeneratorSet::new(g).unwrap(), DEFAULT_CAP).unwrap().order;
        assert_eq!(order(1), 1);
        assert_eq!(order(2), 2);
        assert_eq!(order(3), 6);
        assert_eq!(order(4), 48);
        assert_eq!(order(5), 720);
    }

    #[test]
    fn closure_cap_and_elements() {
        let gens = GeneratorSet::new(5).unwrap();
        assert_eq!(bfs_closure(&gens, 100).unwrap_err(), OrthoError::CapExceeded { found: 101 });
        let c = bfs_closure_with(&gens, 720, true, Exec::Sequential).unwrap();
        let elems = c.elements.unwrap();
        assert_eq!(elems.len(), 720);
        assert!(elems[0].is_identity());
        assert!(elems.iter().all(BitMatrix::is_orthogonal));
        let p = bfs_closure_with(&gens, 720, true, Exec::Parallel).unwrap();
        assert_eq!(p.elements.unwrap(), elems);
    }

    #[test]
    fn wide_closure_uses_generic_packing() {
        // a1, a2 in genus 12 generate S3
        let gens = GeneratorSet::new(12).unwrap().restricted_to(&["a1", "a2"]).unwrap();
        assert_eq!(bfs_closure(&gens, 100).unwrap().order, 6);
        let gens = GeneratorSet::new(3).unwrap();
        let small = bfs_closure_with(&gens, 100, true, Exec::Sequential).unwrap();
        let big = closure::<Box<[u64]>>(&gens, 100, true, Exec::Sequential).unwrap();
        assert_eq!(small.elements, big.elements);
    }

    #[test]
    fn orders_by_formula() {
        let expect: [u64; 7] = [1, 2, 6, 48, 720, 23040, 1451520];
        for (g, &o) in (1..=7).zip(expect.iter()) {
            assert_eq!(group_order(g), BigUint::from(o), "genus {g}");
        }
        assert_eq!(group_order(9), BigUint::from(47_377_612_800u64));
    }

    #[test]
    fn element_orders() {
        assert_eq!(element_order(&BitMatrix::identity(5).unwrap()).unwrap(), 1);
        assert_eq!(element_order(&gen_a(6, 3).unwrap()).unwrap(), 2);
        let a1a2 = gen_a(4, 1).unwrap().mul(&gen_a(4, 2).unwrap()).unwrap();
        assert_eq!(element_order(&a1a2).unwrap(), 3);
        let a4b = gen_a(5, 4).unwrap().mul(&gen_b(5).unwrap()).unwrap();
        assert_eq!(element_order(&a4b).unwrap(), 3);
        assert!(element_order(&BitMatrix::zero(3).unwrap()).is_err());
    }

    #[test]
    fn embedding() {
        for g in 5..=9 {
            for i in 1..=g - 2 {
                assert_eq!(embed(g, &gen_a(g - 1, i).unwrap()).unwrap(), gen_a(g, i).unwrap());
            }
            assert_eq!(embed(g, &gen_b(g - 1).unwrap()).unwrap(), gen_b(g).unwrap());
            assert!(embed(g, &BitMatrix::identity(g - 1).unwrap()).unwrap().is_identity());
        }
        assert!(embed(5, &BitMatrix::identity(5).unwrap()).is_err());
    }

    #[test]
    fn conjugators() {
        let gens = GeneratorSet::new(7).unwrap();
        let b = gens.get("b").unwrap().clone();
        let a4 = gens.get("a4").unwrap().clone();
        let a5 = gens.get("a5").unwrap().clone();
        assert_eq!(conjugator_search(&b, &b, &gens, 4), Some(Word::empty()));
        assert!(conjugates_to(&Word::parse("b a4"), &Word::gen("b"), &a4, &gens));
        assert!(conjugates_to(&Word::parse("a4 a5"), &Word::gen("a4"), &a5, &gens));
        let w = conjugator_search(&a4, &b, &gens, 4).unwrap();
        assert_eq!(w.len(), 2);
        assert!(conjugates_to(&w, &Word::gen("b"), &a4, &gens));
        let w = conjugator_search(&gens.get("a1").unwrap().clone(), &b, &gens, 8).unwrap();
        assert!(conjugates_to(&w, &Word::gen("b"), gens.get("a1").unwrap(), &gens));
        // a transposition is not conjugate to the identity
        assert_eq!(conjugator_search(&BitMatrix::identity(7).unwrap(), &b, &gens, 4), None);
    }

    #[test]
    fn lemma42_words() {
        for g in [7, 8, 9, 10] {
            let gens = GeneratorSet::new(g).unwrap();
            for i in 1..g {
                let w = lemma42_conjugator(g, i).unwrap();
                assert!(conjugates_to(&w, &Word::gen("b"), gens.get(&format!("a{i}")).unwrap(), &gens));
            }
        }
    }
}
