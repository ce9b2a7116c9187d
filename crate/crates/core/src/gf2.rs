//! Dense linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into a single `u64`, so dimensions are
//! limited to [`MAX_DIM`]. Entry `(i, j)` of a matrix is bit `j - 1` of row
//! `i`; all public indices are 1-based.
//!
//! Matrices act on row vectors: row `i` of a matrix is the image of the basis
//! vector `x_i`, and `v ↦ v·A`.

use std::fmt;

use thiserror::Error;

/// Largest supported dimension (one machine word per row).
pub const MAX_DIM: usize = 64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} outside 1..={MAX_DIM}")]
    InvalidDimension(usize),
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("malformed hex encoding: {0}")]
    MalformedHex(String),
}

#[inline]
fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A vector in 𝔽₂^len.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    bits: u64,
}

impl BitVec {
    pub fn zero(len: usize) -> Result<Self, Gf2Error> {
        if len == 0 || len > MAX_DIM {
            return Err(Gf2Error::InvalidDimension(len));
        }
        Ok(Self { len, bits: 0 })
    }

    /// Builds a vector from packed bits; bits beyond `len` are cleared.
    pub fn from_bits(len: usize, bits: u64) -> Result<Self, Gf2Error> {
        let mut v = Self::zero(len)?;
        v.bits = bits & low_mask(len);
        Ok(v)
    }

    /// The `i`-th standard basis vector (1-based).
    pub fn unit(len: usize, i: usize) -> Result<Self, Gf2Error> {
        if i == 0 || i > len {
            return Err(Gf2Error::IndexOutOfRange { row: i, col: 0, dim: len });
        }
        Self::from_bits(len, 1 << (i - 1))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i >= 1 && i <= self.len && (self.bits >> (i - 1)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i >= 1 && i <= self.len, "index {i} out of range");
        if value {
            self.bits |= 1 << (i - 1);
        } else {
            self.bits &= !(1 << (i - 1));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Standard dot product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }
}

impl std::ops::Add for BitVec {
    type Output = BitVec;

    fn add(self, rhs: BitVec) -> BitVec {
        assert_eq!(self.len, rhs.len, "vector length mismatch");
        BitVec { len: self.len, bits: self.bits ^ rhs.bits }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Square matrix over 𝔽₂ with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    dim: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(dim: usize) -> Result<Self, Gf2Error> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Gf2Error::InvalidDimension(dim));
        }
        Ok(Self { dim, rows: vec![0; dim] })
    }

    pub fn identity(dim: usize) -> Result<Self, Gf2Error> {
        let mut m = Self::zero(dim)?;
        for (i, row) in m.rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        Ok(m)
    }

    /// Builds a matrix from packed rows (bit `j - 1` of `rows[i - 1]` is entry `(i, j)`).
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, Gf2Error> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Gf2Error::InvalidDimension(dim));
        }
        let mask = low_mask(dim);
        Ok(Self { dim, rows: rows.into_iter().map(|r| r & mask).collect() })
    }

    /// Builds a matrix from rows written as binary strings, entry 1 first:
    /// `["010", "100", "001"]`.
    pub fn from_bit_strings(rows: &[&str]) -> Result<Self, Gf2Error> {
        let dim = rows.len();
        let mut m = Self::zero(dim)?;
        for (i, s) in rows.iter().enumerate() {
            if s.len() != dim {
                return Err(Gf2Error::DimensionMismatch { left: dim, right: s.len() });
            }
            for (j, c) in s.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.rows[i] |= 1 << j,
                    _ => return Err(Gf2Error::MalformedHex(s.to_string())),
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Packed rows, row 1 first.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec { len: self.dim, bits: self.rows[i - 1] }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i >= 1 && i <= self.dim && j >= 1 && j <= self.dim);
        (self.rows[i - 1] >> (j - 1)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) -> Result<(), Gf2Error> {
        if i == 0 || j == 0 || i > self.dim || j > self.dim {
            return Err(Gf2Error::IndexOutOfRange { row: i, col: j, dim: self.dim });
        }
        if value {
            self.rows[i - 1] |= 1 << (j - 1);
        } else {
            self.rows[i - 1] &= !(1 << (j - 1));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// `self · other`, entries mod 2.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.dim != other.dim {
            return Err(Gf2Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Row `i` of the product is the sum of the rows of `other` selected by row `i` of `self`.
    pub(crate) fn mul_unchecked(&self, other: &BitMatrix) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc ^= other.rows[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BitMatrix { dim: self.dim, rows }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut rows = vec![0u64; self.dim];
        for (i, &r) in self.rows.iter().enumerate() {
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                rows[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        BitMatrix { dim: self.dim, rows }
    }

    /// Whether `ᵗA·A = E`.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul_unchecked(self).is_identity()
    }

    /// Row rank via Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.dim {
            let bit = 1u64 << col;
            let Some(p) = (rank..self.dim).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse by Gauss-Jordan elimination on `[A | E]`.
    pub fn inverse(&self) -> Result<BitMatrix, Gf2Error> {
        let n = self.dim;
        let mut left = self.rows.clone();
        let mut right = BitMatrix::identity(n)?.rows;
        for col in 0..n {
            let bit = 1u64 << col;
            let p = (col..n).find(|&r| left[r] & bit != 0).ok_or(Gf2Error::Singular)?;
            left.swap(col, p);
            right.swap(col, p);
            for r in 0..n {
                if r != col && left[r] & bit != 0 {
                    left[r] ^= left[col];
                    right[r] ^= right[col];
                }
            }
        }
        Ok(BitMatrix { dim: n, rows: right })
    }

    /// Least `k ≥ 1` with `A^k = E`, or `None` if no power up to `limit` is the identity.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut power = self.clone();
        for k in 1..=limit {
            if power.is_identity() {
                return Some(k);
            }
            power = power.mul_unchecked(self);
        }
        None
    }

    /// Canonical text form: `dim:` followed by comma-separated rows, each a
    /// big-endian hex number of ⌈dim/4⌉ digits in which bit `j - 1` holds entry `(i, j)`.
    pub fn to_hex(&self) -> String {
        let width = self.dim.div_ceil(4);
        let rows: Vec<String> = self.rows.iter().map(|r| format!("{r:0width$x}")).collect();
        format!("{}:{}", self.dim, rows.join(","))
    }

    pub fn from_hex(s: &str) -> Result<BitMatrix, Gf2Error> {
        let bad = || Gf2Error::MalformedHex(s.to_string());
        let (dim, body) = s.split_once(':').ok_or_else(bad)?;
        let dim: usize = dim.parse().map_err(|_| bad())?;
        let width = dim.div_ceil(4);
        let rows = body
            .split(',')
            .map(|r| {
                if r.len() != width {
                    return Err(bad());
                }
                let v = u64::from_str_radix(r, 16).map_err(|_| bad())?;
                if v & !low_mask(dim) != 0 {
                    return Err(bad());
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != dim {
            return Err(bad());
        }
        BitMatrix::from_rows(rows)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (1..=self.dim).map(|i| format!("{:?}", self.row(i))).collect();
        write!(f, "BitMatrix[{}]", rows.join(" "))
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn mat_mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
    a.mul(b)
}

pub fn transpose(a: &BitMatrix) -> BitMatrix {
    a.transpose()
}

pub fn is_orthogonal(a: &BitMatrix) -> bool {
    a.is_orthogonal()
}

pub fn rank(a: &BitMatrix) -> usize {
    a.rank()
}

pub fn inverse(a: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
    a.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_ones_minus_identity() -> BitMatrix {
        BitMatrix::from_bit_strings(&["0111", "1011", "1101", "1110"]).unwrap()
    }

    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        let n = a.dim();
        let mut c = BitMatrix::zero(n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let mut s = false;
                for k in 1..=n {
                    s ^= a.get(i, k) & b.get(k, j);
                }
                c.set(i, j, s).unwrap();
            }
        }
        c
    }

    fn matrix(dim: usize) -> impl Strategy<Value = BitMatrix> {
        prop::collection::vec(any::<u64>(), dim).prop_map(|r| BitMatrix::from_rows(r).unwrap())
    }

    #[test]
    fn identity_products() {
        let e = BitMatrix::identity(3).unwrap();
        assert_eq!(mat_mul(&e, &e).unwrap(), e);
    }

    #[test]
    fn all_ones_minus_identity_is_involution() {
        let b = all_ones_minus_identity();
        assert!(mat_mul(&b, &b).unwrap().is_identity());
        assert_eq!(transpose(&b), b);
        assert!(is_orthogonal(&b));
        assert_eq!(rank(&b), 4);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = BitMatrix::identity(3).unwrap();
        let b = BitMatrix::identity(4).unwrap();
        assert_eq!(a.mul(&b), Err(Gf2Error::DimensionMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn non_orthogonal_example() {
        let m = BitMatrix::from_bit_strings(&["11", "01"]).unwrap();
        assert!(!is_orthogonal(&m));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&BitMatrix::identity(4).unwrap()), 4);
        assert_eq!(rank(&BitMatrix::zero(4).unwrap()), 0);
    }

    #[test]
    fn singular_inverse() {
        assert_eq!(inverse(&BitMatrix::zero(2).unwrap()), Err(Gf2Error::Singular));
        let e = BitMatrix::identity(6).unwrap();
        assert_eq!(inverse(&e).unwrap(), e);
    }

    #[test]
    fn dimension_bounds() {
        assert!(BitMatrix::zero(0).is_err());
        assert!(BitMatrix::zero(65).is_err());
        assert!(BitMatrix::identity(64).unwrap().is_orthogonal());
    }

    #[test]
    fn hex_encoding() {
        let b = all_ones_minus_identity();
        assert_eq!(b.to_hex(), "4:e,d,b,7");
        let a = BitMatrix::from_bit_strings(&["010", "100", "001"]).unwrap();
        assert_eq!(a.to_hex(), "3:2,1,4");
        assert_eq!(BitMatrix::from_hex("3:2,1,4").unwrap(), a);
        assert!(BitMatrix::from_hex("3:2,1").is_err());
        assert!(BitMatrix::from_hex("3:8,1,4").is_err());
        assert!(BitMatrix::from_hex("nonsense").is_err());
        let wide = BitMatrix::identity(9).unwrap();
        assert_eq!(wide.to_hex(), "9:001,002,004,008,010,020,040,080,100");
    }

    #[test]
    fn vectors() {
        let v = BitVec::from_bits(4, 0b1110).unwrap();
        assert!(v.get(2) && !v.get(1));
        assert!(v.dot(&BitVec::unit(4, 2).unwrap()));
        assert_eq!(BitVec::from_bits(3, u64::MAX).unwrap().bits(), 0b111);
        assert_eq!(format!("{:?}", v), "0111");
    }

    #[test]
    fn element_order() {
        let m = BitMatrix::from_bit_strings(&["010", "001", "100"]).unwrap();
        assert_eq!(m.order(10), Some(3));
        assert_eq!(BitMatrix::from_bit_strings(&["11", "01"]).unwrap().order(10), Some(2));
    }

    proptest! {
        #[test]
        fn packed_mul_matches_triple_loop(a in matrix(8), b in matrix(8)) {
            prop_assert_eq!(mat_mul(&a, &b).unwrap(), naive_mul(&a, &b));
        }

        #[test]
        fn associativity_and_identity(a in matrix(7), b in matrix(7), c in matrix(7)) {
            let e = BitMatrix::identity(7).unwrap();
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(a.mul(&e).unwrap(), a.clone());
            prop_assert_eq!(e.mul(&a).unwrap(), a);
        }

        #[test]
        fn transpose_is_involution(a in matrix(11)) {
            prop_assert_eq!(a.transpose().transpose(), a);
        }

        #[test]
        fn inverse_when_invertible(a in matrix(6)) {
            match a.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(a.rank(), 6);
                    prop_assert!(a.mul(&inv).unwrap().is_identity());
                }
                Err(e) => {
                    prop_assert_eq!(e, Gf2Error::Singular);
                    prop_assert!(a.rank() < 6);
                }
            }
        }

        #[test]
        fn hex_roundtrip(a in matrix(13)) {
            prop_assert_eq!(BitMatrix::from_hex(&a.to_hex()).unwrap(), a);
        }
    }
}
