use std::path::Path;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use o2pres::coset::{enumerate_table, validate, CosetError};
use o2pres::homology::{
    h1 as abelianization, kernel_basis, lift_commutes, prop41_extended, prop41_matrix,
    prop41_recomputed, x0_word,
};
use o2pres::ortho::{bfs_closure, group_order, OrthoError};
use o2pres::presentation::{
    eliminate_generators, quotient_mod_level2, section4, serialize, theorem_1_1, theorem_2_1,
    verify_relators,
};
use o2pres::report::{Report, Status};
use o2pres::rewriter::{
    a5_derivation, b_relator_replays, claim31_rho_derivation, claim32_derivation,
    claim33_checks, verify_derivation, Derivation,
};
use o2pres::{GeneratorSet, Presentation, Word};

const MAX_GENUS: usize = 64;
const EXPECTED_KERNEL: [i64; 8] = [-7, -2, -4, -6, 4, 2, 12, 2];

pub struct Options {
    pub slow: bool,
    pub max_cosets: usize,
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Formula,
    Bfs,
    Coset,
    Quotient,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Claim {
    #[value(name = "3.1")]
    Rho,
    #[value(name = "3.2")]
    Chain,
    #[value(name = "3.3")]
    WBlock,
    #[value(name = "b-relators")]
    BRelators,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Thm11,
    Thm21,
    Quotient,
    Section4,
}

/// Usage errors; these exit with status 2 and no report.
pub type Usage = String;

fn genus_in(g: usize, min: usize) -> Result<(), Usage> {
    if g < min || g > MAX_GENUS {
        Err(format!("genus must be between {min} and {MAX_GENUS}, got {g}"))
    } else {
        Ok(())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Usage {
    e.to_string()
}

pub fn verify(g: usize) -> Result<Report, Usage> {
    genus_in(g, 1)?;
    let p = theorem_1_1(g).map_err(usage)?;
    let gens = GeneratorSet::new(g).map_err(usage)?;
    let rr = verify_relators(&p, &gens).map_err(usage)?;
    let mut report = Report::new("verify", g);
    let mut seen = std::collections::HashMap::<&str, usize>::new();
    for c in &rr.checks {
        let k = seen.entry(c.tag.as_str()).or_default();
        *k += 1;
        let detail = if c.holds {
            format!("length {}", c.word.len())
        } else {
            format!("length {}, does not evaluate to the identity", c.word.len())
        };
        report.push(format!("{} #{k}", c.tag), c.holds.into(), detail);
    }
    Ok(report)
}

fn b_family(p: &Presentation) -> Vec<String> {
    p.generators()
        .iter()
        .filter(|s| s.len() > 1 && s.starts_with('b') && s[1..].bytes().all(|c| c.is_ascii_digit()))
        .cloned()
        .collect()
}

fn coset_check(report: &mut Report, name: &str, p: &Presentation, expected: u64, max: usize) {
    match enumerate_table(p, &[], max) {
        Ok(t) => {
            let n = t.len() as u64;
            let ok = n == expected && validate(&t, p);
            report.push(name, ok.into(), format!("{n} (expected {expected})"));
        }
        Err(CosetError::Overflow { live }) => report.push(
            name,
            Status::Inconclusive,
            format!("coset table overflow at {max} ({live} live)"),
        ),
        Err(e) => report.push(name, Status::Fail, e.to_string()),
    }
}

pub fn order(g: usize, method: Method, opts: &Options) -> Result<Report, Usage> {
    genus_in(g, 1)?;
    let formula = group_order(g);
    let mut report = Report::new("order", g);
    let gated = g >= 7 && !opts.slow;
    match method {
        Method::Formula => report.push("order (formula)", Status::Pass, formula.to_string()),
        Method::Bfs => {
            let name = "order (bfs)";
            let too_big = formula.to_u64().map_or(true, |n| n > opts.cap as u64);
            if gated {
                let why = if too_big { "order exceeds cap" } else { "needs --slow" };
                report.push(name, Status::Inconclusive, format!("{why} (cap {})", opts.cap));
            } else {
                match bfs_closure(&GeneratorSet::new(g).map_err(usage)?, opts.cap) {
                    Ok(c) => {
                        let ok = formula.to_u64() == Some(c.order);
                        report.push(name, ok.into(), format!("{} (expected {formula})", c.order));
                    }
                    Err(OrthoError::CapExceeded { found }) => report.push(
                        name,
                        Status::Inconclusive,
                        format!("cap {} exceeded ({found} found)", opts.cap),
                    ),
                    Err(e) => report.push(name, Status::Fail, e.to_string()),
                }
            }
        }
        Method::Coset | Method::Quotient => {
            let name = if matches!(method, Method::Coset) { "order (coset)" } else { "order (quotient)" };
            let p = if matches!(method, Method::Coset) {
                theorem_1_1(g).map_err(usage)?
            } else {
                let q = quotient_mod_level2(&theorem_2_1(g).map_err(usage)?).map_err(usage)?;
                eliminate_generators(&q, &b_family(&q)).map_err(usage)?
            };
            match formula.to_u64() {
                _ if gated => report.push(name, Status::Inconclusive, "needs --slow"),
                Some(expected) => coset_check(&mut report, name, &p, expected, opts.max_cosets),
                None => report.push(name, Status::Inconclusive, "order too large to enumerate"),
            }
        }
    }
    Ok(report)
}

/// Expected invariant factors of the abelianization: `[2]` for g in
/// {2, 3, 5, 6}, `[2, 2]` for g = 4, trivial from g = 7 on.
fn expected_h1(g: usize) -> Vec<u64> {
    match g {
        1 => vec![],
        2 | 3 | 5 | 6 => vec![2],
        4 => vec![2, 2],
        _ => vec![],
    }
}

pub fn h1(g: usize) -> Result<Report, Usage> {
    genus_in(g, 1)?;
    let h = abelianization(&theorem_1_1(g).map_err(usage)?);
    let expected = expected_h1(g);
    let got = h.torsion_u64();
    let mut report = Report::new("h1", g);
    report.push(
        "h1",
        (h.free_rank == 0 && got == expected).into(),
        format!("{h} = {got:?} (expected {expected:?})"),
    );
    Ok(report)
}

pub fn hopf(g: usize) -> Result<Report, Usage> {
    genus_in(g, 9)?;
    let mut report = Report::new("hopf", g);
    let printed = prop41_matrix(g).map_err(usage)?;
    let recomputed = prop41_recomputed(g).map_err(usage)?;
    report.push("matrix", (printed == recomputed).into(), "printed vs recomputed exponent sums");
    let rank = printed.rank();
    report.push("rank", (rank == 7).into(), format!("{rank}"));
    let kernel: Vec<Vec<i64>> = kernel_basis(&printed)
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect();
    let ok = kernel.len() == 1 && kernel[0] == EXPECTED_KERNEL;
    report.push("kernel", ok.into(), format!("{kernel:?}"));

    let ext = prop41_extended(g).map_err(usage)?;
    let ext_kernel: Vec<Vec<i64>> = kernel_basis(&ext)
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
        .collect();
    // columns A, B_1 … B_{g-2}, B, C: the extra B_i must vanish
    let mut padded = EXPECTED_KERNEL[..6].to_vec();
    padded.extend(std::iter::repeat(0).take(g - 7));
    padded.extend_from_slice(&EXPECTED_KERNEL[6..]);
    let ok = ext_kernel.len() == 1 && ext_kernel[0] == padded;
    report.push("kernel (all B_i)", ok.into(), format!("{ext_kernel:?}"));

    let x0 = x0_word(g).map_err(usage)?;
    let names: std::collections::BTreeSet<&str> = x0.generators().collect();
    let names: Vec<&str> = names.into_iter().collect();
    let sums_zero = x0.exponent_sums(&names).iter().all(|&s| s == 0);
    report.push("x0 exponent sums", sums_zero.into(), format!("length {}", x0.len()));
    let gens = GeneratorSet::new(g).map_err(usage)?;
    let trivial = o2pres::eval(&x0, &gens).map(|m| m.is_identity()).unwrap_or(false);
    report.push("x0 evaluates to identity", trivial.into(), "");
    let stable = x0 == x0_word(9).map_err(usage)?
        && (g == 9 || lift_commutes(g, &x0).unwrap_or(false));
    report.push("x0 genus-independent", stable.into(), "same letters as at g = 9");
    Ok(report)
}

fn push_derivation(report: &mut Report, name: &str, d: &Derivation, end: Option<&Word>) {
    let ok = verify_derivation(d) && end.map_or(true, |e| &d.end == e);
    report.push(name, ok.into(), format!("{} moves, {} -> {} letters", d.len(), d.start.len(), d.end.len()));
}

pub fn rewrite(
    claim: Claim,
    n: Option<usize>,
    genus: Option<usize>,
    out: Option<&Path>,
) -> Result<Report, Usage> {
    let need_genus = |min: usize| -> Result<usize, Usage> {
        let g = genus.ok_or_else(|| "--genus is required for this claim".to_string())?;
        genus_in(g, min)?;
        Ok(g)
    };
    let mut named: Vec<(String, Derivation)> = Vec::new();
    let mut report;
    match claim {
        Claim::Chain => {
            let n = n.ok_or_else(|| "--n is required for claim 3.2".to_string())?;
            if n == 0 || n > 64 {
                return Err(format!("--n must be between 1 and 64, got {n}"));
            }
            report = Report::new("rewrite 3.2", genus.unwrap_or(0));
            let d = claim32_derivation(n).map_err(usage)?;
            let names: Vec<String> = (1..=n).map(|i| format!("g{i}")).collect();
            let end = Word::gen("g1").concat_raw(&Word::product(&names)).pow_raw(n as i64);
            push_derivation(&mut report, &format!("chain n={n}"), &d, Some(&end));
            named.push((format!("chain n={n}"), d));
        }
        Claim::Rho => {
            let g = need_genus(2)?;
            report = Report::new("rewrite 3.1", g);
            let d = claim31_rho_derivation(g).map_err(usage)?;
            push_derivation(&mut report, "rho", &d, Some(&Word::empty()));
            named.push(("rho".into(), d));
            if g >= 5 {
                let (l, r) = a5_derivation(g).map_err(usage)?;
                push_derivation(&mut report, "(A5) lhs", &l, Some(&Word::empty()));
                push_derivation(&mut report, "(A5) rhs", &r, Some(&Word::empty()));
                named.push(("(A5) lhs".into(), l));
                named.push(("(A5) rhs".into(), r));
            }
        }
        Claim::WBlock => {
            let g = need_genus(6)?;
            report = Report::new("rewrite 3.3", g);
            for c in claim33_checks(g).map_err(usage)? {
                let detail = format!(
                    "{} moves, replay {}, matrices {}",
                    c.derivation.len(),
                    if c.replay_ok { "ok" } else { "failed" },
                    if c.matrix_ok { "agree" } else { "differ" },
                );
                report.push(&c.name, (c.replay_ok && c.matrix_ok).into(), detail);
                named.push((c.name, c.derivation));
            }
        }
        Claim::BRelators => {
            let g = need_genus(4)?;
            report = Report::new("rewrite b-relators", g);
            for r in b_relator_replays(g).map_err(usage)? {
                let detail = format!("both sides reach {}", r.lhs.end);
                report.push(&r.tag, r.holds().into(), detail);
                named.push((format!("{} lhs", r.tag), r.lhs));
                named.push((format!("{} rhs", r.tag), r.rhs));
            }
        }
    }
    if let Some(path) = out {
        let doc: Vec<serde_json::Value> = named
            .iter()
            .map(|(name, d)| {
                serde_json::json!({
                    "name": name,
                    "start": d.start.to_string(),
                    "end": d.end.to_string(),
                    "moves": d.moves,
                })
            })
            .collect();
        let text = serde_json::to_string_pretty(&doc).expect("derivations serialize");
        write_check(&mut report, path, &text);
    }
    Ok(report)
}

fn write_check(report: &mut Report, path: &Path, text: &str) {
    match std::fs::write(path, text) {
        Ok(()) => report.push("write", Status::Pass, path.display().to_string()),
        Err(e) => report.push("write", Status::Fail, format!("{}: {e}", path.display())),
    }
}

pub fn export(g: usize, which: Which, out: &Path) -> Result<Report, Usage> {
    genus_in(g, 1)?;
    let p = match which {
        Which::Thm11 => theorem_1_1(g),
        Which::Thm21 => theorem_2_1(g),
        Which::Quotient => theorem_2_1(g).and_then(|p| quotient_mod_level2(&p)),
        Which::Section4 => section4(g),
    }
    .map_err(usage)?;
    let mut report = Report::new("export", g);
    report.push(
        "presentation",
        Status::Pass,
        format!("{} generators, {} relators", p.generators().len(), p.relators().len()),
    );
    write_check(&mut report, out, &serialize(&p));
    Ok(report)
}
