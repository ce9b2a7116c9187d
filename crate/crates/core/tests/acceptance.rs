//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.
//!
//! Pinned tolerances: all checks are exact; relator soundness must finish in
//! under 1 s; the g = 7 enumeration (run with `--ignored` or `O2PRES_SLOW=1`)
//! must finish in under 300 s.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use o2pres::coset::{enumerate, DEFAULT_MAX_COSETS};
use o2pres::homology::{
    h1, kernel_basis, prop41_matrix, prop41_recomputed, smith_normal_form, x0_word, IntMatrix,
};
use o2pres::ortho::{bfs_closure, gen_a, gen_b, lemma42_conjugator, DEFAULT_CAP};
use o2pres::presentation::{
    eliminate_generators, quotient_mod_level2, theorem_1_1, theorem_2_1, verify_relators, Letter,
};
use o2pres::rewriter::{
    apply_move, claim31_rho_derivation, claim32_derivation, claim33_checks, shrinking_moves,
    verify_derivation, Move, MoveKind, RewriteSystem,
};
use o2pres::{eval, GeneratorSet, Word};

const RELATOR_BUDGET: Duration = Duration::from_secs(1);
const G7_BUDGET: Duration = Duration::from_secs(300);

fn outcome(n: &str, ok: bool, detail: impl AsRef<str>) {
    println!("criterion {n}: {} {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(ok, "criterion {n} failed: {}", detail.as_ref());
}

/// Orders of `O(g, F2)` by testing every `g × g` matrix for `A Aᵗ = I`.
fn orthogonal_count_exhaustive(g: usize) -> u64 {
    let mask = (1u64 << g) - 1;
    let mut count = 0;
    for bits in 0u64..(1u64 << (g * g)) {
        let rows: Vec<u64> = (0..g).map(|i| (bits >> (i * g)) & mask).collect();
        let ok = (0..g).all(|i| {
            rows[i].count_ones() % 2 == 1
                && (i + 1..g).all(|j| (rows[i] & rows[j]).count_ones() % 2 == 0)
        });
        count += ok as u64;
    }
    count
}

#[test]
fn criterion_1_relator_soundness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut total = 0;
    for g in 4..=12 {
        let p = theorem_1_1(g).unwrap();
        let r = verify_relators(&p, &GeneratorSet::new(g).unwrap()).unwrap();
        total += r.checks.len();
        failures.extend(r.failures().map(|c| format!("g={g} {}", c.tag)));
        if g % 2 == 0 && g >= 8 {
            for tag in ["(7)", "(8)", "(9)"] {
                if !p.relators().iter().any(|x| x.tag == tag) {
                    failures.push(format!("g={g} missing {tag}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        "1",
        failures.is_empty() && elapsed < RELATOR_BUDGET,
        format!("{total} relators for 4 <= g <= 12 in {elapsed:?}; failures {failures:?}"),
    );
}

#[test]
fn criterion_2_presentation_completeness() {
    let expected = [(3usize, 6u64), (4, 48), (5, 720), (6, 23040)];
    let mut bad = Vec::new();
    for (g, order) in expected {
        let coset = enumerate(&theorem_1_1(g).unwrap(), &[], DEFAULT_MAX_COSETS).unwrap() as u64;
        let bfs = bfs_closure(&GeneratorSet::new(g).unwrap(), DEFAULT_CAP).unwrap().order;
        let exhaustive = (g <= 5).then(|| orthogonal_count_exhaustive(g));
        if coset != order || bfs != order || exhaustive.is_some_and(|e| e != order) {
            bad.push(format!("g={g}: coset {coset}, bfs {bfs}, exhaustive {exhaustive:?}"));
        }
    }
    outcome("2", bad.is_empty(), format!("g = 3..6 orders 6, 48, 720, 23040; mismatches {bad:?}"));
}

fn g7_run() {
    let start = Instant::now();
    let n = enumerate(&theorem_1_1(7).unwrap(), &[], DEFAULT_MAX_COSETS);
    let elapsed = start.elapsed();
    outcome(
        "2 (g = 7)",
        n == Ok(1_451_520) && elapsed < G7_BUDGET,
        format!("{n:?} in {elapsed:?}"),
    );
}

#[test]
#[ignore = "about 80 s in release; run with --ignored"]
fn criterion_2_genus_7() {
    g7_run();
}

#[test]
fn criterion_2_genus_7_when_slow() {
    if std::env::var_os("O2PRES_SLOW").is_some() {
        g7_run();
    } else {
        println!("criterion 2 (g = 7): skipped, set O2PRES_SLOW=1 or run --ignored");
    }
}

#[test]
fn criterion_3_quotient_end_to_end() {
    let mut bad = Vec::new();
    for (g, order) in [(4usize, 48usize), (5, 720), (6, 23040)] {
        let q = quotient_mod_level2(&theorem_2_1(g).unwrap()).unwrap();
        let family: Vec<String> =
            q.generators().iter().filter(|s| s.starts_with('b') && s.len() > 1).cloned().collect();
        let q = eliminate_generators(&q, &family).unwrap();
        let n = enumerate(&q, &[], DEFAULT_MAX_COSETS);
        if n != Ok(order) {
            bad.push(format!("g={g}: {n:?}"));
        }
    }
    outcome("3", bad.is_empty(), format!("quotient orders for g = 4, 5, 6; mismatches {bad:?}"));
}

#[test]
fn criterion_4_h1_table() {
    let mut bad = Vec::new();
    for g in 2..=12 {
        let expected: Vec<u64> = match g {
            2 | 3 | 5 | 6 => vec![2],
            4 => vec![2, 2],
            _ => vec![],
        };
        let h = h1(&theorem_1_1(g).unwrap());
        if h.torsion_u64() != expected || h.free_rank != 0 {
            bad.push(format!("g={g}: {h}"));
        }
    }
    outcome("4", bad.is_empty(), format!("h1 for 2 <= g <= 12; mismatches {bad:?}"));
}

/// Rank by fraction-free elimination.
fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == r {
            break;
        }
    }
    rank
}

fn det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[test]
fn criterion_5_relation_matrix() {
    let printed: Vec<Vec<i64>> = vec![
        vec![2, 0, 0, 0, 0, 0, 1, 1],
        vec![0, 1, 0, 0, 0, 0, 0, 1],
        vec![0, -1, 1, 0, 0, 0, 0, 1],
        vec![0, 0, -1, 1, 0, 0, 0, 1],
        vec![0, 0, 0, -1, 1, 0, -1, 1],
        vec![0, 0, 0, 0, -1, 1, 0, 1],
        vec![0, 0, 0, 0, 0, -1, 0, 1],
    ];
    let m = prop41_matrix(9).unwrap();
    let entries = m.to_i64_rows() == Some(printed.clone());
    let recomputed = prop41_recomputed(9).unwrap() == m;
    let rows: Vec<Vec<BigInt>> =
        printed.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rank = bareiss_rank(&rows);
    let kernel = kernel_basis(&m);
    let target: Vec<BigInt> = [-7, -2, -4, -6, 4, 2, 12, 2].iter().map(|&x| BigInt::from(x)).collect();
    let neg: Vec<BigInt> = target.iter().map(|x| -x).collect();
    let in_kernel = printed.iter().all(|r| r.iter().zip(&target).map(|(a, b)| a * b).sum::<BigInt>().is_zero());
    let kernel_ok = kernel.len() == 1 && (kernel[0] == target || kernel[0] == neg) && in_kernel;
    outcome(
        "5",
        entries && recomputed && rank == 7 && m.rank() == 7 && kernel_ok,
        format!("entries {entries}, recomputed {recomputed}, rank {rank}, kernel {kernel:?}"),
    );
}

#[test]
fn criterion_6_x0_well_formed() {
    let reference = x0_word(9).unwrap();
    let mut bad = Vec::new();
    for g in 9..=12 {
        let x0 = x0_word(g).unwrap();
        let names: Vec<String> = GeneratorSet::new(g).unwrap().names().map(str::to_string).collect();
        let mut sums = std::collections::BTreeMap::<&str, i64>::new();
        for l in x0.letters() {
            *sums.entry(l.gen.as_str()).or_default() += l.exp as i64;
        }
        let sums_zero = sums.values().all(|&s| s == 0);
        let bound = x0.generators().all(|n| names.iter().any(|m| m == n));
        let identity = eval(&x0, &GeneratorSet::new(g).unwrap()).unwrap().is_identity();
        if !(sums_zero && bound && identity && x0 == reference) {
            bad.push(format!("g={g}: sums {sums_zero}, identity {identity}, stable {}", x0 == reference));
        }
    }
    outcome("6", bad.is_empty(), format!("x0 for 9 <= g <= 12, {} letters; {bad:?}", reference.len()));
}

#[test]
fn criterion_7_rewriting_claims() {
    let mut bad = Vec::new();
    for n in 1..=12 {
        let d = claim32_derivation(n).unwrap();
        let mut end = String::new();
        for _ in 0..n {
            end.push_str("g1 g1");
            for i in 2..=n {
                end.push_str(&format!(" g{i}"));
            }
            end.push(' ');
        }
        if !verify_derivation(&d) || d.end != Word::parse(&end) {
            bad.push(format!("chain n={n}"));
        }
    }
    for g in 3..=10 {
        let d = claim31_rho_derivation(g).unwrap();
        if !verify_derivation(&d) || !d.end.is_empty() {
            bad.push(format!("rho g={g}"));
        }
    }
    for c in claim33_checks(8).unwrap() {
        if !(c.replay_ok && c.matrix_ok) {
            bad.push(format!("g=8 {}", c.name));
        }
    }
    outcome("7", bad.is_empty(), format!("chain n <= 12, rho g = 3..10, W-block g = 8; failures {bad:?}"));
}

fn random_move(w: &Word, sys: &RewriteSystem, rng: &mut ChaCha8Rng) -> Move {
    let mut moves = shrinking_moves(w, sys);
    let n = sys.generators().len() as i64;
    for kind in [MoveKind::FreeInsert, MoveKind::InvolutionInsert] {
        let e = if rng.gen() { 1 } else { -1 };
        moves.push(Move::new(kind, rng.gen_range(1..=w.len() + 1), &[rng.gen_range(0..n), e]));
    }
    moves.swap_remove(rng.gen_range(0..moves.len()))
}

#[test]
fn criterion_8_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sys = RewriteSystem::for_genus(8).unwrap();
    let gens = GeneratorSet::new(8).unwrap();
    let names = sys.generators().to_vec();
    let mut move_failures = 0;
    for _ in 0..10_000 {
        let len = rng.gen_range(0..30);
        let w = Word::from_letters(
            (0..len)
                .map(|_| Letter::new(names[rng.gen_range(0..names.len())].clone(), if rng.gen() { 1 } else { -1 }))
                .collect(),
        );
        let m = random_move(&w, &sys, &mut rng);
        let ok = apply_move(&w, &m, &sys)
            .map(|w2| eval(&w2, &gens).unwrap() == eval(&w, &gens).unwrap())
            .unwrap_or(false);
        move_failures += !ok as usize;
    }

    let mut snf_failures = 0;
    for _ in 0..1_000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        let big = |m: &IntMatrix| to_rows(m);
        let mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            x.iter()
                .map(|row| (0..y[0].len()).map(|j| row.iter().zip(y).map(|(p, q)| p * &q[j]).sum()).collect())
                .collect()
        };
        let uav = mul(&mul(&big(&s.u), &big(&a)), &big(&s.v));
        let product_ok = uav == big(&s.d);
        let unimodular = det(&big(&s.u)).abs().is_one() && det(&big(&s.v)).abs().is_one();
        let diag: Vec<BigInt> = s.invariant_factors();
        let d_rows = big(&s.d);
        let off_diag_zero =
            (0..r).all(|i| (0..c).all(|j| i == j || d_rows[i][j].is_zero()));
        let chain = diag.windows(2).all(|p| (&p[1] % &p[0]).is_zero()) && diag.iter().all(|x| x.is_positive());
        // determinantal divisors: d_k = gcd of all k × k minors, s_k = d_k / d_{k-1}
        let a_rows = big(&a);
        let mut oracle = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=r.min(c) {
            let mut g = BigInt::zero();
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let minor: Vec<Vec<BigInt>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| a_rows[i][j].clone()).collect()).collect();
                    g = g.gcd(&det(&minor));
                }
            }
            if g.is_zero() {
                break;
            }
            oracle.push(&g / &prev);
            prev = g;
        }
        let ok = product_ok && unimodular && off_diag_zero && chain && diag == oracle;
        snf_failures += !ok as usize;
    }
    outcome(
        "8",
        move_failures == 0 && snf_failures == 0,
        format!("10000 moves at g = 8: {move_failures} failures; 1000 SNF cases: {snf_failures} failures"),
    );
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

#[test]
fn criterion_9_conjugators() {
    let mut bad = Vec::new();
    for g in 7..=10 {
        let gens = GeneratorSet::new(g).unwrap();
        let b = gen_b(g).unwrap();
        for i in 1..g {
            let w = lemma42_conjugator(g, i).unwrap();
            let c = eval(&w, &gens).unwrap();
            let c_inv = c.inverse().unwrap();
            // w b w⁻¹ evaluates to M(w)⁻¹ M(b) M(w) under the right-to-left reading
            let conj = c_inv.mul(&b).unwrap().mul(&c).unwrap();
            if conj != gen_a(g, i).unwrap() {
                bad.push(format!("g={g} i={i}"));
            }
        }
    }
    outcome("9", bad.is_empty(), format!("a_i conjugate to b for 7 <= g <= 10; failures {bad:?}"));
}
