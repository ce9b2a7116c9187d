use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PresentationError;

/// One letter of a free-group word: a generator name raised to ±1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: String,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: impl Into<String>, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "letter exponent must be ±1");
        Self { gen: gen.into(), exp }
    }

    pub fn pos(gen: impl Into<String>) -> Self {
        Self::new(gen, 1)
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen.clone(), exp: -self.exp }
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            f.write_str(&self.gen)
        } else {
            write!(f, "{}^-1", self.gen)
        }
    }
}

/// A word in a free group, stored leftmost letter first.
///
/// Words are read right to left: as a map, the rightmost letter acts first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    /// A single generator.
    pub fn gen(name: impl Into<String>) -> Self {
        Self { letters: vec![Letter::pos(name)] }
    }

    /// Product of positive generators in the given order.
    pub fn product<S: AsRef<str>>(names: &[S]) -> Self {
        Self { letters: names.iter().map(|n| Letter::pos(n.as_ref())).collect() }
    }

    /// Parses whitespace-separated tokens `x`, `x^-1` or `x^k`. Panics on bad input;
    /// use [`Word::from_str`] for fallible parsing.
    pub fn parse(text: &str) -> Self {
        text.parse().expect("malformed word literal")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Removes every adjacent `x x⁻¹` / `x⁻¹ x` pair until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if out.last().is_some_and(|last| last.is_inverse_of(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Word { letters: out }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].is_inverse_of(&w[1]))
    }

    /// Free reduction followed by stripping cancelling letters from both ends.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce();
        let mut lo = 0;
        let mut hi = reduced.letters.len();
        while hi - lo >= 2 && reduced.letters[lo].is_inverse_of(&reduced.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word { letters: reduced.letters[lo..hi].to_vec() }
    }

    /// Literal inverse: letters reversed and each inverted (no reduction).
    pub fn inverse_raw(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::inverse).collect() }
    }

    pub fn invert(&self) -> Word {
        self.inverse_raw().free_reduce()
    }

    /// Literal concatenation (no reduction).
    pub fn concat_raw(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        self.concat_raw(other).free_reduce()
    }

    /// Literal `k`-th power; negative `k` repeats the literal inverse.
    pub fn pow_raw(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse_raw() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        Word { letters }
    }

    pub fn pow(&self, k: i64) -> Word {
        self.pow_raw(k).free_reduce()
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`, literal.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat_raw(y).concat_raw(&x.inverse_raw()).concat_raw(&y.inverse_raw())
    }

    /// Concatenates a sequence of words literally.
    pub fn chain<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend(p.letters.iter().cloned());
        }
        Word { letters }
    }

    /// Signed letter count per generator, in the order of `generators`.
    /// Letters whose generator is not listed are ignored.
    pub fn exponent_sums<S: AsRef<str>>(&self, generators: &[S]) -> Vec<i64> {
        let mut sums = vec![0i64; generators.len()];
        for l in &self.letters {
            if let Some(i) = generators.iter().position(|g| g.as_ref() == l.gen) {
                sums[i] += l.exp as i64;
            }
        }
        sums
    }

    /// Replaces each generator named in `subst` by its word (inverted for `x⁻¹`),
    /// then free-reduces.
    pub fn substitute(&self, subst: &dyn Fn(&str) -> Option<Word>) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match subst(&l.gen) {
                Some(w) if l.exp == 1 => letters.extend(w.letters),
                Some(w) => letters.extend(w.inverse_raw().letters),
                None => letters.push(l.clone()),
            }
        }
        Word { letters }.free_reduce()
    }

    /// Renames generators letter by letter.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Word {
        Word {
            letters: self.letters.iter().map(|l| Letter { gen: f(&l.gen), exp: l.exp }).collect(),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|l| l.gen.as_str())
    }
}

impl FromStr for Word {
    type Err = PresentationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => {
                    let p: i64 = p.parse().map_err(|_| PresentationError::BadToken(tok.into()))?;
                    (n, p)
                }
                None => (tok, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(PresentationError::BadToken(tok.into()));
            }
            let exp: i8 = if power < 0 { -1 } else { 1 };
            for _ in 0..power.unsigned_abs() {
                letters.push(Letter::new(name, exp));
            }
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

pub fn word_invert(w: &Word) -> Word {
    w.invert()
}

pub fn word_pow(w: &Word, k: i64) -> Word {
    w.pow(k)
}

pub fn word_concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

pub fn exponent_sums<S: AsRef<str>>(w: &Word, generators: &[S]) -> Vec<i64> {
    w.exponent_sums(generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s)
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w("a1 a1^-1").free_reduce(), Word::empty());
        assert_eq!(w("a1 a2 a2^-1 a1").free_reduce(), w("a1 a1"));
        assert_eq!(Word::empty().free_reduce(), Word::empty());
        assert_eq!(w("a1 a2 a3 a3^-1 a2^-1 b").free_reduce(), w("a1 b"));
    }

    #[test]
    fn group_operations() {
        assert_eq!(word_invert(&w("a1 a2")), w("a2^-1 a1^-1"));
        assert_eq!(word_pow(&w("a1"), -2), w("a1^-1 a1^-1"));
        assert_eq!(word_concat(&w("a1"), &w("a1^-1")), Word::empty());
        assert_eq!(w("a1 a2").pow(3).len(), 6);
        assert_eq!(w("a1 a2").pow(0), Word::empty());
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("b a1 a2 b^-1").cyclic_reduce(), w("a1 a2"));
        assert_eq!(w("b a1 b^-1").cyclic_reduce(), w("a1"));
        assert_eq!(w("a1 a1").cyclic_reduce(), w("a1 a1"));
    }

    #[test]
    fn exponent_sum_examples() {
        let gens = ["b", "a1", "a2"];
        assert_eq!(w("b b").exponent_sums(&gens), vec![2, 0, 0]);
        let c = Word::commutator(&w("a1 a2 b"), &w("b a2^-1"));
        assert_eq!(c.exponent_sums(&gens), vec![0, 0, 0]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("a1^3").to_string(), "a1 a1 a1");
        assert_eq!(w("x^-2 y").to_string(), "x^-1 x^-1 y");
        assert_eq!(Word::empty().to_string(), "1");
        assert!("a1^q".parse::<Word>().is_err());
        assert!("a-1".parse::<Word>().is_err());
    }

    #[test]
    fn substitution() {
        let r = w("y a1 y^-1 a1");
        let out = r.substitute(&|g| (g == "y").then(Word::empty));
        assert_eq!(out, w("a1 a1"));
        let rho = w("a1 a2");
        let out = w("rho^-1 a1").substitute(&|g| (g == "rho").then(|| rho.clone()));
        assert_eq!(out, w("a2^-1"));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((0usize..4, any::<bool>()), 0..30).prop_map(|v| {
            Word::from_letters(
                v.into_iter()
                    .map(|(g, inv)| Letter::new(format!("a{g}"), if inv { -1 } else { 1 }))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_preserves_exponent_sums(u in arb_word()) {
            let gens = ["a0", "a1", "a2", "a3"];
            prop_assert_eq!(u.free_reduce().exponent_sums(&gens), u.exponent_sums(&gens));
            prop_assert!(u.free_reduce().is_freely_reduced());
        }

        #[test]
        fn inverse_cancels(u in arb_word()) {
            prop_assert!(u.concat(&u.invert()).is_empty());
        }

        #[test]
        fn commutators_have_zero_sums(u in arb_word(), v in arb_word()) {
            let gens = ["a0", "a1", "a2", "a3"];
            prop_assert!(Word::commutator(&u, &v).exponent_sums(&gens).iter().all(|&s| s == 0));
        }
    }
}
