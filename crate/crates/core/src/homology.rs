//! Integer linear algebra for abelianizations (Smith normal form, integer
//! kernels) and the exponent-sum bookkeeping behind the second homology
//! generator `x0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ortho::{embed, GeneratorSet, OrthoError};
use crate::presentation::{
    b_word, eval, section4, Letter, Presentation, PresentationError, Word,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("genus {genus} too small (need at least {min})")]
    GenusTooSmall { genus: usize, min: usize },
    #[error("matrix shapes {0:?} and {1:?} do not compose")]
    Shape((usize, usize), (usize, usize)),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i * self.cols + j] = v.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, HomologyError> {
        if self.cols != other.rows {
            return Err(HomologyError::Shape((self.rows, self.cols), (other.rows, other.cols)));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Whether every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `d`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form, pivoting on the entry of least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t..m, t..n) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t) / &p;
                if !q.is_zero() {
                    d.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j) / &p;
                if !q.is_zero() {
                    d.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // a remainder is now smaller than the pivot; bring it to (t, t)
                let col_best = (t..m).filter(|&i| !d.get(i, t).is_zero()).min_by_key(|&i| d.get(i, t).abs());
                let row_best = (t..n).filter(|&j| !d.get(t, j).is_zero()).min_by_key(|&j| d.get(t, j).abs());
                let ci = col_best.expect("pivot is nonzero");
                let rj = row_best.expect("pivot is nonzero");
                if d.get(ci, t).abs() <= d.get(t, rj).abs() {
                    d.swap_rows(t, ci);
                    u.swap_rows(t, ci);
                } else {
                    d.swap_cols(t, rj);
                    v.swap_cols(t, rj);
                }
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(d.get(i, j) % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

fn min_abs_entry(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = d.get(i, j);
            if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Basis of `{x ∈ Z^n : a x = 0}` in Hermite form, each vector primitive,
/// with its first nonzero entry negative.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols;
    let mut basis: Vec<Vec<BigInt>> =
        (r..n).map(|j| (0..n).map(|i| snf.v.get(i, j).clone()).collect()).collect();
    hermite_rows(&mut basis);
    for vec in &mut basis {
        let content = vec.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for x in vec.iter_mut() {
                *x /= &content;
            }
        }
        if vec.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()) {
            for x in vec.iter_mut() {
                *x = -&*x;
            }
        }
    }
    basis
}

/// Row-style Hermite normal form in place (positive pivots, reduced above).
fn hermite_rows(rows: &mut Vec<Vec<BigInt>>) {
    let n = rows.first().map_or(0, Vec::len);
    let mut pr = 0;
    for c in 0..n {
        if pr == rows.len() {
            break;
        }
        loop {
            let best = (pr..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs());
            let Some(bi) = best else { break };
            rows.swap(pr, bi);
            let mut done = true;
            for i in pr + 1..rows.len() {
                let q = &rows[i][c] / &rows[pr][c];
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[pr]) {
                        *x -= &q * y;
                    }
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if pr < rows.len() && !rows[pr][c].is_zero() {
            if rows[pr][c].is_negative() {
                for x in rows[pr].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..pr {
                let q = rows[i][c].div_floor(&rows[pr][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(pr);
                    for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                        *x -= &q * y;
                    }
                }
            }
            pr += 1;
        }
    }
}

/// `H_1` of a presented group as an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    /// Invariant factors greater than 1.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl H1 {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        use num_traits::ToPrimitive;
        self.torsion.iter().map(|x| x.to_u64().expect("small factor")).collect()
    }
}

impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Relator exponent-sum matrix: one row per relator, one column per generator.
pub fn exponent_sum_matrix(p: &Presentation) -> IntMatrix {
    let rows: Vec<Vec<i64>> = p.relator_words().map(|w| w.exponent_sums(p.generators())).collect();
    let mut m = IntMatrix::zero(rows.len(), p.generators().len());
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// Abelianization of the presented group.
pub fn h1(p: &Presentation) -> H1 {
    let snf = smith_normal_form(&exponent_sum_matrix(p));
    let factors = snf.invariant_factors();
    H1 {
        free_rank: p.generators().len() - factors.len(),
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// The named relator words of the second homology computation, with
/// `a_0` written as `b`.
#[derive(Clone, Debug)]
pub struct NamedRelatorWords {
    pub genus: usize,
    /// `A = a0²`
    pub a_word: Word,
    /// `B = a0 a4 a0 a4⁻¹ a0⁻¹ a4⁻¹`
    pub b_word: Word,
    pub c_word: Word,
    /// `B_i = a_i a_{i+1} a_i a_{i+1}⁻¹ a_i⁻¹ a_{i+1}⁻¹`, `1 ≤ i ≤ g-2`
    pub bi_words: BTreeMap<usize, Word>,
    /// `D_{i,j} = [a_i, a_j]` for `j - i > 1, i ≠ 0` or `i = 0, j ≠ 4`
    pub dij_words: BTreeMap<(usize, usize), Word>,
    /// `D = [a_{g-5}, b_{(g-2)/2}]`, even genus only
    pub d_word: Option<Word>,
}

impl NamedRelatorWords {
    /// Every word with its label, in a fixed order.
    pub fn labelled(&self) -> Vec<(String, &Word)> {
        let mut out = vec![("A".to_string(), &self.a_word)];
        out.extend(self.bi_words.iter().map(|(i, w)| (format!("B_{i}"), w)));
        out.push(("B".to_string(), &self.b_word));
        out.push(("C".to_string(), &self.c_word));
        out.extend(self.dij_words.iter().map(|((i, j), w)| (format!("D_{i},{j}"), w)));
        if let Some(d) = &self.d_word {
            out.push(("D".to_string(), d));
        }
        out
    }
}

/// Generator name of `a_i` with `a_0 = b`.
pub fn a_name(i: usize) -> String {
    if i == 0 {
        "b".to_string()
    } else {
        format!("a{i}")
    }
}

fn braid(x: &str, y: &str) -> Word {
    Word::from_letters(vec![
        Letter::new(x, 1),
        Letter::new(y, 1),
        Letter::new(x, 1),
        Letter::new(y, -1),
        Letter::new(x, -1),
        Letter::new(y, -1),
    ])
}

pub fn named_words(g: usize) -> Result<NamedRelatorWords, HomologyError> {
    if g < 7 {
        return Err(HomologyError::GenusTooSmall { genus: g, min: 7 });
    }
    let p = section4(g)?;
    let c_word = p.relators_tagged("(4)").next().expect("section4 has C").word.clone();
    let mut dij_words = BTreeMap::new();
    for i in 0..g {
        for j in i + 1..g {
            if (j - i > 1 && i != 0) || (i == 0 && j != 4) {
                dij_words.insert((i, j), Word::commutator(&Word::gen(a_name(i)), &Word::gen(a_name(j))));
            }
        }
    }
    let d_word = (g % 2 == 0)
        .then(|| Word::commutator(&Word::gen(a_name(g - 5)), &b_word((g - 2) / 2)));
    Ok(NamedRelatorWords {
        genus: g,
        a_word: Word::gen("b").pow_raw(2),
        b_word: braid("b", "a4"),
        c_word,
        bi_words: (1..=g - 2).map(|i| (i, braid(&a_name(i), &a_name(i + 1)))).collect(),
        dij_words,
        d_word,
    })
}

/// The 7×8 exponent-sum system exactly as displayed: rows `a0..a6`, columns
/// `(n, m1, …, m5, m, l)`.
pub fn prop41_matrix(g: usize) -> Result<IntMatrix, HomologyError> {
    if g < 9 {
        return Err(HomologyError::GenusTooSmall { genus: g, min: 9 });
    }
    Ok(IntMatrix::from_rows(&[
        vec![2, 0, 0, 0, 0, 0, 1, 1],
        vec![0, 1, 0, 0, 0, 0, 0, 1],
        vec![0, -1, 1, 0, 0, 0, 0, 1],
        vec![0, 0, -1, 1, 0, 0, 0, 1],
        vec![0, 0, 0, -1, 1, 0, -1, 1],
        vec![0, 0, 0, 0, -1, 1, 0, 1],
        vec![0, 0, 0, 0, 0, -1, 0, 1],
    ]))
}

/// Exponent sums of `A, B_1..B_m, B, C` (as columns) in `a_0..a_{rows-1}`.
fn sums_matrix(words: &NamedRelatorWords, rows: usize, bis: usize) -> IntMatrix {
    let gens: Vec<String> = (0..rows).map(a_name).collect();
    let mut columns = vec![&words.a_word];
    columns.extend((1..=bis).map(|i| &words.bi_words[&i]));
    columns.push(&words.b_word);
    columns.push(&words.c_word);
    let mut m = IntMatrix::zero(rows, columns.len());
    for (j, w) in columns.iter().enumerate() {
        for (i, s) in w.exponent_sums(&gens).into_iter().enumerate() {
            m.set(i, j, s);
        }
    }
    m
}

/// [`prop41_matrix`] recomputed from the exponent sums of the named words.
pub fn prop41_recomputed(g: usize) -> Result<IntMatrix, HomologyError> {
    if g < 9 {
        return Err(HomologyError::GenusTooSmall { genus: g, min: 9 });
    }
    Ok(sums_matrix(&named_words(g)?, 7, 5))
}

/// The full system: rows `a0..a_{g-1}`, columns `(n, m1, …, m_{g-2}, m, l)`.
pub fn prop41_extended(g: usize) -> Result<IntMatrix, HomologyError> {
    if g < 9 {
        return Err(HomologyError::GenusTooSmall { genus: g, min: 9 });
    }
    Ok(sums_matrix(&named_words(g)?, g, g - 2))
}

/// `A^-7 B_1^-2 B_2^-4 B_3^-6 B_4^4 B_5^2 B^12 C^2`, letters concatenated
/// without reduction.
pub fn x0_word(g: usize) -> Result<Word, HomologyError> {
    if g < 9 {
        return Err(HomologyError::GenusTooSmall { genus: g, min: 9 });
    }
    let w = named_words(g)?;
    Ok(Word::chain([
        &w.a_word.pow_raw(-7),
        &w.bi_words[&1].pow_raw(-2),
        &w.bi_words[&2].pow_raw(-4),
        &w.bi_words[&3].pow_raw(-6),
        &w.bi_words[&4].pow_raw(4),
        &w.bi_words[&5].pow_raw(2),
        &w.b_word.pow_raw(12),
        &w.c_word.pow_raw(2),
    ]))
}

/// Whether `ι_g(eval_{g-1}(w)) = eval_g(w)`: the letterwise lift of `w` from
/// genus `g-1` evaluates compatibly with the block embedding.
pub fn lift_commutes(g: usize, w: &Word) -> Result<bool, HomologyError> {
    let small = eval(w, &GeneratorSet::new(g - 1)?)?;
    let big = eval(w, &GeneratorSet::new(g)?)?;
    Ok(embed(g, &small)? == big)
}

/// A printed lettering that differs from the one used, with what it fails.
#[derive(Clone, Debug)]
pub struct PrintedVariant {
    pub label: String,
    pub word: Word,
    pub evaluates_to_identity: bool,
    pub sums_match: bool,
}

/// The printed letterings of `B_1` (two of them) and the five-letter `B`,
/// checked against evaluation and against the exponent sums the system
/// requires. The six-letter `B` is already the braid relator.
pub fn printed_variants(g: usize) -> Result<Vec<PrintedVariant>, HomologyError> {
    let gens = GeneratorSet::new(g)?;
    let names: Vec<String> = (0..g).map(a_name).collect();
    let words = named_words(g)?;
    let candidates = [
        ("B_1 (six letters)", Word::parse("a1 a2 a1^-1 a2^-1 a1^-1 a2^-1"), &words.bi_words[&1]),
        ("B_1 (five letters)", Word::parse("a1 a2 a1^-1 a2^-1 a1^-1"), &words.bi_words[&1]),
        ("B (five letters)", Word::parse("b a4 b^-1 a4^-1 b^-1"), &words.b_word),
    ];
    candidates
        .into_iter()
        .map(|(label, word, used)| {
            Ok(PrintedVariant {
                label: label.to_string(),
                evaluates_to_identity: eval(&word, &gens)?.is_identity(),
                sums_match: word.exponent_sums(&names) == used.exponent_sums(&names),
                word,
            })
        })
        .collect()
}
