//! The concrete presentations: the presentation of the automorphism group in
//! every genus regime, the mapping class group presentation used to derive
//! it, the level-2 quotient construction, and the modified presentation used
//! for the second homology bookkeeping.

use super::{Letter, Presentation, PresentationError, Word};

pub(crate) fn a(i: usize) -> String {
    format!("a{i}")
}

pub(crate) fn bi(i: usize) -> String {
    format!("b{i}")
}

/// `a_from a_{from+1} ⋯ a_to`
fn a_run(from: usize, to: usize) -> Word {
    Word::product(&(from..=to).map(a).collect::<Vec<_>>())
}

fn w(text: &str) -> Word {
    Word::parse(text)
}

/// The relator `lhs · rhs⁻¹` for the equation `lhs = rhs`.
fn eq(lhs: &Word, rhs: &Word) -> Word {
    lhs.concat_raw(&rhs.inverse_raw())
}

fn comm(x: &Word, y: &Word) -> Word {
    Word::commutator(x, y)
}

/// `W = a1 a2 a3 a4 a5 b`, whose fifth power is `b2`.
pub(crate) fn w_block() -> Word {
    w("a1 a2 a3 a4 a5 b")
}

/// Right-hand side of the `b_{i+1}` recursion, with `b_{i-1}` and `b_i` given as words.
fn b_recursion(i: usize, prev: &Word, cur: &Word) -> Word {
    let mid = a_run(2 * i, 2 * i + 3);
    let head = Word::chain([prev, &mid, cur]).pow_raw(5);
    let tail = Word::chain([prev, &mid]).pow_raw(-6);
    head.concat_raw(&tail)
}

fn ensure(p: &mut Presentation, tag: &str, word: Word) -> Result<(), PresentationError> {
    p.add_relator(tag, word).map(|_| ())
}

/// Presentation of the automorphism group of `H_1(N_g; Z_2)` preserving the
/// intersection form, in the regime dictated by `g`.
pub fn theorem_1_1(g: usize) -> Result<Presentation, PresentationError> {
    let name = format!("aut-h1-genus-{g}");
    match g {
        0 => Err(PresentationError::InvalidGenus(g)),
        1 => Presentation::new(name, 1, vec![]),
        2 => {
            let mut p = Presentation::new(name, 2, vec![a(1)])?;
            ensure(&mut p, "(1)", w("a1^2"))?;
            Ok(p)
        }
        3 => {
            let mut p = Presentation::new(name, 3, vec![a(1), a(2)])?;
            ensure(&mut p, "(1)", w("a1^2"))?;
            ensure(&mut p, "(1)", w("a2^2"))?;
            ensure(&mut p, "(3)", w("a1 a2").pow_raw(3))?;
            Ok(p)
        }
        _ => {
            let even_family = g % 2 == 0 && g >= 8;
            let k = (g - 2) / 2;
            let mut gens: Vec<String> = (1..g).map(a).collect();
            gens.push("b".into());
            if even_family {
                gens.extend((0..=k).map(bi));
            }
            let mut p = Presentation::new(name, g, gens)?;
            for i in 1..g {
                ensure(&mut p, "(1)", Word::gen(a(i)).pow_raw(2))?;
            }
            ensure(&mut p, "(1)", w("b^2"))?;
            for i in 1..g {
                for j in i + 2..g {
                    ensure(&mut p, "(2)", Word::product(&[a(i), a(j)]).pow_raw(2))?;
                }
            }
            for i in 1..g - 1 {
                ensure(&mut p, "(3)", Word::product(&[a(i), a(i + 1)]).pow_raw(3))?;
            }
            for i in (1..g).filter(|&i| i != 4) {
                ensure(&mut p, "(4)", Word::product(&[a(i), "b".into()]).pow_raw(2))?;
            }
            if g >= 5 {
                ensure(&mut p, "(5)", w("a4 b").pow_raw(3))?;
            }
            if g >= 7 {
                ensure(
                    &mut p,
                    "(6)",
                    eq(&w("a2 a3 a4 a5 a6 b").pow_raw(12), &w("a1 a2 a3 a4 a5 a6 b").pow_raw(9)),
                )?;
            }
            if even_family {
                ensure(&mut p, "(7)", eq(&Word::gen(bi(0)), &w("a1")))?;
                ensure(&mut p, "(7)", eq(&Word::gen(bi(1)), &w("b")))?;
                ensure(&mut p, "(7)", eq(&Word::gen(bi(2)), &w_block().pow_raw(5)))?;
                for i in 2..=(g - 4) / 2 {
                    let rhs = b_recursion(i, &Word::gen(bi(i - 1)), &Word::gen(bi(i)));
                    ensure(&mut p, "(8)", eq(&Word::gen(bi(i + 1)), &rhs))?;
                }
                ensure(&mut p, "(9)", comm(&Word::gen(a(g - 5)), &Word::gen(bi(k))))?;
            }
            Ok(p)
        }
    }
}

/// [`theorem_1_1`] with `b0`, `b1` eliminated by substituting `a1`, `b`.
pub fn theorem_1_1_simplified(g: usize) -> Result<Presentation, PresentationError> {
    let full = theorem_1_1(g)?;
    if !(g % 2 == 0 && g >= 8) {
        return Ok(full);
    }
    let gens: Vec<String> =
        full.generators().iter().filter(|x| *x != "b0" && *x != "b1").cloned().collect();
    let mut p = Presentation::new(format!("{}-simplified", full.name()), g, gens)?;
    let subst = |x: &str| match x {
        "b0" => Some(w("a1")),
        "b1" => Some(w("b")),
        _ => None,
    };
    for r in full.relators() {
        ensure(&mut p, &r.tag, r.word.substitute(&subst))?;
    }
    Ok(p)
}

/// The mapping class group presentation in Dehn twists `a_i`, `b`, the
/// crosscap slide `y` and `rho`, stored purely as relator data.
pub fn theorem_2_1(g: usize) -> Result<Presentation, PresentationError> {
    if g < 4 {
        return Err(PresentationError::InvalidGenus(g));
    }
    let odd = g % 2 == 1;
    let even_family = !odd && g >= 6;
    let k = (g - 2) / 2;
    let mut gens: Vec<String> = (1..g).map(a).collect();
    gens.extend(["b".to_string(), "y".to_string(), "rho".to_string()]);
    if even_family {
        gens.extend((0..=k).map(bi));
    }
    let mut p = Presentation::new(format!("mcg-genus-{g}"), g, gens)?;

    for i in 1..g {
        for j in i + 2..g {
            ensure(&mut p, "(A1)", comm(&Word::gen(a(i)), &Word::gen(a(j))))?;
        }
    }
    for i in 1..g - 1 {
        let (x, y) = (a(i), a(i + 1));
        ensure(
            &mut p,
            "(A2)",
            eq(&Word::product(&[&x, &y, &x]), &Word::product(&[&y, &x, &y])),
        )?;
    }
    for i in (1..g).filter(|&i| i != 4) {
        ensure(&mut p, "(A3)", comm(&Word::gen(a(i)), &w("b")))?;
    }
    if g >= 5 {
        ensure(&mut p, "(A4)", eq(&w("a4 b a4"), &w("b a4 b")))?;
        ensure(&mut p, "(A5)", eq(&w("a2 a3 a4 b").pow_raw(10), &w("a1 a2 a3 a4 b").pow_raw(6)))?;
    }
    if g >= 7 {
        ensure(
            &mut p,
            "(A6)",
            eq(&w("a2 a3 a4 a5 a6 b").pow_raw(12), &w("a1 a2 a3 a4 a5 a6 b").pow_raw(9)),
        )?;
    }

    let x1 = w("a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1");
    ensure(&mut p, "(B1)", eq(&w("y").concat_raw(&x1), &x1.concat_raw(&w("y"))))?;
    let z = w("a2 a1 y^-1 a2^-1 y a1 a2");
    ensure(
        &mut p,
        "(B2)",
        eq(&Word::chain([&w("y"), &z, &w("y")]), &Word::chain([&w("a1"), &z, &w("a1")])),
    )?;
    for i in 3..g {
        ensure(&mut p, "(B3)", comm(&Word::gen(a(i)), &w("y")))?;
    }
    ensure(&mut p, "(B4)", comm(&w("a2"), &w("y a2 y^-1")))?;
    ensure(&mut p, "(B5)", eq(&w("y a1"), &w("a1^-1 y")))?;
    ensure(
        &mut p,
        "(B6)",
        eq(
            &w("b y b y^-1"),
            &w("a1 a2 a3 y^-1 a2 y a3^-1 a2^-1 a1^-1 a2^-1 a3^-1 y a2 y^-1 a3 a2"),
        ),
    )?;
    if g >= 6 {
        let x7 = w("a4 a5 a3 a4 a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1 a5^-1 a4^-1");
        ensure(&mut p, "(B7)", comm(&x7, &w("b")))?;
    }
    if g >= 5 {
        let lhs = w("y a1^-1 a2^-1 a3^-1 a4^-1 b a4 a3 a2 a1 y^-1 \
                     a1^-1 a2^-1 a3^-1 a4^-1 b^-1 a4 a3 a2 a1");
        let rhs = w("a4^-1 a3^-1 a2^-1 y a2 a3 a4 a3^-1 a2^-1 y^-1 a2 a3 a2^-1 y a2 y^-1");
        ensure(&mut p, "(B8)", eq(&lhs, &rhs))?;
    }

    let full_cycle = a_run(1, g - 1).pow_raw(g as i64);
    if odd {
        ensure(&mut p, "(C1a)", eq(&full_cycle, &w("rho")))?;
    } else {
        ensure(&mut p, "(C1b)", full_cycle)?;
    }
    ensure(&mut p, "(C2)", comm(&w("a1"), &w("rho")))?;
    ensure(&mut p, "(C3)", w("rho^2"))?;
    let tail = a_run(2, g - 1);
    let twisted = Word::chain([&w("y^-1"), &tail, &w("y"), &tail]);
    if odd {
        ensure(&mut p, "(C4a)", twisted.pow_raw(((g - 1) / 2) as i64))?;
    } else {
        let lhs = Word::chain([&twisted.pow_raw(((g - 2) / 2) as i64), &w("y^-1"), &tail]);
        ensure(&mut p, "(C4b)", eq(&lhs, &w("rho")))?;
    }

    if even_family {
        ensure(&mut p, "(A7)", eq(&Word::gen(bi(0)), &w("a1")))?;
        ensure(&mut p, "(A7)", eq(&Word::gen(bi(1)), &w("b")))?;
        for i in 1..=(g - 4) / 2 {
            let rhs = b_recursion(i, &Word::gen(bi(i - 1)), &Word::gen(bi(i)));
            ensure(&mut p, "(A8)", eq(&Word::gen(bi(i + 1)), &rhs))?;
        }
        if g == 6 {
            ensure(&mut p, "(A9a)", comm(&Word::gen(bi(2)), &w("b")))?;
        } else {
            ensure(&mut p, "(A9b)", comm(&Word::gen(a(g - 5)), &Word::gen(bi(k))))?;
        }
    }
    Ok(p)
}

/// The two available expressions for `rho` once `y = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoExpression {
    /// Solved literally from (C1a) or (C4b) after deleting `y`.
    pub literal: Word,
    /// `(a1 ⋯ a_{g-1})^g` for odd `g`, `(a2 ⋯ a_{g-1})^{g-1}` for even `g`.
    pub closed_form: Word,
}

impl RhoExpression {
    pub fn agree(&self) -> bool {
        self.literal.free_reduce() == self.closed_form.free_reduce()
    }
}

/// Solves the (C1a)/(C4b) relator of a mapping class group presentation for `rho` under `y = 1`.
pub fn level2_rho(p: &Presentation) -> Result<RhoExpression, PresentationError> {
    let g = p.genus();
    check_mcg_shape(p)?;
    let tag = if g % 2 == 1 { "(C1a)" } else { "(C4b)" };
    let rel = p
        .relators_tagged(tag)
        .next()
        .ok_or_else(|| PresentationError::WrongShape(format!("missing relator {tag}")))?;
    let r = rel.word.substitute(&|x| (x == "y").then(Word::empty));
    let positions: Vec<usize> =
        r.letters().iter().enumerate().filter(|(_, l)| l.gen == "rho").map(|(i, _)| i).collect();
    let [pos] = positions[..] else {
        return Err(PresentationError::WrongShape(format!("{tag} must contain rho exactly once")));
    };
    let before = Word::from_letters(r.letters()[..pos].to_vec());
    let after = Word::from_letters(r.letters()[pos + 1..].to_vec());
    // U rho V = 1 gives rho = U^-1 V^-1; U rho^-1 V = 1 gives rho = V U.
    let literal = if r.letters()[pos].exp == 1 {
        before.inverse_raw().concat_raw(&after.inverse_raw())
    } else {
        after.concat_raw(&before)
    }
    .free_reduce();
    let closed_form = if g % 2 == 1 {
        a_run(1, g - 1).pow_raw(g as i64)
    } else {
        a_run(2, g - 1).pow_raw((g - 1) as i64)
    };
    Ok(RhoExpression { literal, closed_form })
}

fn check_mcg_shape(p: &Presentation) -> Result<(), PresentationError> {
    for needed in ["y", "rho", "b"] {
        if !p.generators().iter().any(|x| x == needed) {
            return Err(PresentationError::WrongShape(format!("generator `{needed}` missing")));
        }
    }
    if p.genus() < 4 {
        return Err(PresentationError::WrongShape("genus below 4".into()));
    }
    Ok(())
}

/// Adds `a_i^2`, `b^2` and `y` to a mapping class group presentation, then
/// eliminates `y` (set to 1) and `rho` (replaced by its literal expression),
/// dropping relators that become trivial.
pub fn quotient_mod_level2(p: &Presentation) -> Result<Presentation, PresentationError> {
    let g = p.genus();
    let rho = level2_rho(p)?.literal;
    let gens: Vec<String> =
        p.generators().iter().filter(|x| *x != "y" && *x != "rho").cloned().collect();
    let mut q = Presentation::new(format!("{}-mod-level2", p.name()), g, gens)?;
    let subst = |x: &str| match x {
        "y" => Some(Word::empty()),
        "rho" => Some(rho.clone()),
        _ => None,
    };
    let mut added: Vec<(String, Word)> = p.relators().iter().map(|r| (r.tag.clone(), r.word.clone())).collect();
    for i in 1..g {
        added.push(("(1)".into(), Word::gen(a(i)).pow_raw(2)));
    }
    added.push(("(1)".into(), w("b^2")));
    added.push(("y".into(), w("y")));
    for (tag, word) in added {
        ensure(&mut q, &tag, word.substitute(&subst))?;
    }
    Ok(q)
}

/// `b_k` written in `a_i` and `b`, expanded through the recursion
/// (`b_0 = a1`, `b_1 = b`, `b_2 = (a1 a2 a3 a4 a5 b)^5`).
pub fn b_word(k: usize) -> Word {
    let mut words = vec![w("a1"), w("b"), w_block().pow_raw(5)];
    for i in 2..k {
        let next = b_recursion(i, &words[i - 1], &words[i]).free_reduce();
        words.push(next);
    }
    words.swap_remove(k)
}

/// The modified presentation on `a_0 = b, a_1, …, a_{g-1}` with relators
/// (1) squares, (2) commutators, (3) braid relators, (4) the long relator
/// and, for even `g`, (5) `[a_{g-5}, b_{(g-2)/2}]`. `a_0` is named `b`.
pub fn section4(g: usize) -> Result<Presentation, PresentationError> {
    if g < 7 {
        return Err(PresentationError::InvalidGenus(g));
    }
    let name_of = |i: usize| if i == 0 { "b".to_string() } else { a(i) };
    let gens: Vec<String> = (0..g).map(name_of).collect();
    let mut p = Presentation::new(format!("hopf-genus-{g}"), g, gens)?;
    for i in 0..g {
        ensure(&mut p, "(1)", Word::gen(name_of(i)).pow_raw(2))?;
    }
    for i in 0..g {
        for j in i + 1..g {
            if (j - i > 1 && i != 0) || (i == 0 && j != 4) {
                ensure(&mut p, "(2)", comm(&Word::gen(name_of(i)), &Word::gen(name_of(j))))?;
            }
        }
    }
    for i in 1..g - 1 {
        ensure(&mut p, "(3)", braid_relator(&a(i), &a(i + 1)))?;
    }
    ensure(&mut p, "(3)", braid_relator("b", "a4"))?;
    ensure(&mut p, "(4)", c_word())?;
    if g % 2 == 0 {
        ensure(&mut p, "(5)", comm(&Word::gen(a(g - 5)), &b_word((g - 2) / 2)))?;
    }
    Ok(p)
}

/// `x y x y⁻¹ x⁻¹ y⁻¹`, the relator of `xyx = yxy`.
pub(crate) fn braid_relator(x: &str, y: &str) -> Word {
    Word::from_letters(vec![
        Letter::new(x, 1),
        Letter::new(y, 1),
        Letter::new(x, 1),
        Letter::new(y, -1),
        Letter::new(x, -1),
        Letter::new(y, -1),
    ])
}

/// `(a2 ⋯ a6 a0)^6 (a2⁻¹ ⋯ a6⁻¹ a0⁻¹)^6 (a1 ⋯ a6 a0)^-4 (a1⁻¹ ⋯ a6⁻¹ a0⁻¹)^-5`, literal.
pub(crate) fn c_word() -> Word {
    let short = w("a2 a3 a4 a5 a6 b");
    let long = w("a1 a2 a3 a4 a5 a6 b");
    let letterwise_inverse =
        |u: &Word| Word::from_letters(u.letters().iter().map(Letter::inverse).collect());
    Word::chain([
        &short.pow_raw(6),
        &letterwise_inverse(&short).pow_raw(6),
        &long.pow_raw(-4),
        &letterwise_inverse(&long).pow_raw(-5),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(p: &Presentation, tag: &str) -> usize {
        p.relators_tagged(tag).count()
    }

    #[test]
    fn small_genus_regimes() {
        assert!(theorem_1_1(0).is_err());
        let p1 = theorem_1_1(1).unwrap();
        assert!(p1.generators().is_empty() && p1.relators().is_empty());
        let p2 = theorem_1_1(2).unwrap();
        assert_eq!(p2.generators(), ["a1"]);
        assert_eq!(p2.relators()[0].word, w("a1 a1"));
        let p3 = theorem_1_1(3).unwrap();
        let words: Vec<_> = p3.relator_words().cloned().collect();
        assert_eq!(words, vec![w("a1^2"), w("a2^2"), w("a1 a2 a1 a2 a1 a2")]);
    }

    #[test]
    fn genus_five_relator_count() {
        let p = theorem_1_1(5).unwrap();
        assert_eq!(count(&p, "(1)"), 5);
        assert_eq!(count(&p, "(2)"), 3);
        assert_eq!(count(&p, "(3)"), 3);
        assert_eq!(count(&p, "(4)"), 3);
        assert_eq!(count(&p, "(5)"), 1);
        assert_eq!(p.relators().len(), 15);
    }

    #[test]
    fn genus_guards() {
        let p4 = theorem_1_1(4).unwrap();
        assert_eq!(count(&p4, "(5)"), 0);
        assert_eq!(count(&p4, "(4)"), 3);
        let p6 = theorem_1_1(6).unwrap();
        assert_eq!(count(&p6, "(6)"), 0);
        assert_eq!(count(&p6, "(7)"), 0);
        let p7 = theorem_1_1(7).unwrap();
        assert_eq!(count(&p7, "(6)"), 1);
        // the shared suffix a2 a3 a4 a5 a6 b cancels against the inverse
        assert_eq!(p7.relators_tagged("(6)").next().unwrap().word.len(), 72 + 63 - 12);
        let p10 = theorem_1_1(10).unwrap();
        assert_eq!(p10.generators().len(), 9 + 1 + 5);
        assert_eq!(count(&p10, "(7)"), 3);
        assert_eq!(count(&p10, "(8)"), 2);
        assert_eq!(
            p10.relators_tagged("(9)").next().unwrap().word,
            w("a5 b4 a5^-1 b4^-1")
        );
    }

    #[test]
    fn simplified_drops_b0_b1() {
        let p = theorem_1_1_simplified(8).unwrap();
        assert!(!p.generators().iter().any(|x| x == "b0" || x == "b1"));
        assert_eq!(count(&p, "(7)"), 1);
        assert!(p.relator_words().all(|r| r.generators().all(|x| x != "b0" && x != "b1")));
    }

    #[test]
    fn mcg_guards() {
        assert!(theorem_2_1(3).is_err());
        let p4 = theorem_2_1(4).unwrap();
        assert_eq!(count(&p4, "(A4)"), 0);
        assert_eq!(count(&p4, "(A2)"), 2);
        assert_eq!(count(&p4, "(C1a)"), 0);
        assert_eq!(p4.relators_tagged("(C1b)").next().unwrap().word, w("a1 a2 a3").pow_raw(4));
        let p5 = theorem_2_1(5).unwrap();
        assert_eq!(
            p5.relators_tagged("(A5)").next().unwrap().word,
            eq(&w("a2 a3 a4 b").pow_raw(10), &w("a1 a2 a3 a4 b").pow_raw(6)).free_reduce()
        );
        assert_eq!(count(&p5, "(B7)"), 0);
        let p6 = theorem_2_1(6).unwrap();
        assert_eq!(count(&p6, "(A9a)"), 1);
        assert_eq!(count(&p6, "(A8)"), 1);
        let p8 = theorem_2_1(8).unwrap();
        assert_eq!(count(&p8, "(A9b)"), 1);
        assert_eq!(count(&p8, "(A8)"), 2);
    }

    #[test]
    fn rho_expressions_agree() {
        for g in 4..=11 {
            let rho = level2_rho(&theorem_2_1(g).unwrap()).unwrap();
            assert!(rho.agree(), "genus {g}");
        }
        assert!(level2_rho(&theorem_1_1(5).unwrap()).is_err());
    }

    #[test]
    fn quotient_substitutions() {
        let q = quotient_mod_level2(&theorem_2_1(5).unwrap()).unwrap();
        assert!(q.generators().iter().all(|x| x != "y" && x != "rho"));
        assert!(q.relator_words().all(|r| r.generators().all(|x| x != "y" && x != "rho")));
        let b5 = q.relators_tagged("(B5)").next().unwrap();
        assert_eq!(b5.word, w("a1 a1"));
        let c3 = q.relators_tagged("(C3)").next().unwrap();
        assert_eq!(c3.word, w("a1 a2 a3 a4").pow_raw(10));
        for dropped in ["(B1)", "(B3)", "(B4)", "(B8)", "(C1a)", "y"] {
            assert_eq!(count(&q, dropped), 0, "{dropped}");
        }
        assert!(quotient_mod_level2(&theorem_1_1(5).unwrap()).is_err());
    }

    #[test]
    fn b_words() {
        assert_eq!(b_word(0), w("a1"));
        assert_eq!(b_word(1), w("b"));
        assert_eq!(b_word(2).len(), 30);
        assert_eq!(b_word(3).generators().filter(|x| *x == "b").count() > 0, true);
    }

    #[test]
    fn section4_shape() {
        let p = section4(9).unwrap();
        assert_eq!(p.generators()[0], "b");
        assert_eq!(count(&p, "(1)"), 9);
        // i = 0 pairs: j in 1..9 minus 4 = 7; i >= 1 pairs with j - i > 1: C(8,2) - 7 = 21
        assert_eq!(count(&p, "(2)"), 7 + 21);
        assert_eq!(count(&p, "(3)"), 8);
        assert_eq!(count(&p, "(5)"), 0);
        assert_eq!(count(&section4(10).unwrap(), "(5)"), 1);
        assert_eq!(c_word().exponent_sums(&["b", "a1", "a2", "a3", "a4", "a5", "a6"]), vec![1; 7]);
    }
}
