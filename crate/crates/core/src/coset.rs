//! Todd–Coxeter coset enumeration, Felsch strategy.
//!
//! Cosets are numbered from 1 in the public API (coset 1 is the subgroup
//! coset). Internally rows are 0-based. Generators with a relator `x²` get a
//! single self-inverse column.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::par::{self, Exec};
use crate::presentation::{Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 5_000_000;

/// Environment variable overriding [`DEFAULT_MAX_COSETS`].
pub const MAX_COSETS_ENV: &str = "O2PRES_MAX_COSETS";

const NONE: u32 = u32::MAX;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CosetError {
    /// Not a proof of anything: the enumeration simply ran out of room.
    #[error("coset table overflow with {live} live cosets")]
    Overflow { live: usize },
    #[error("word uses generator `{0}` which is not in the presentation")]
    UnknownGenerator(String),
}

/// `O2PRES_MAX_COSETS` if set and parseable, else the default.
pub fn default_max_cosets() -> usize {
    std::env::var(MAX_COSETS_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_COSETS)
}

/// Column layout shared by the enumerator and the finished table.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Columns {
    /// (generator, exponent) per column; self-inverse columns carry exponent 1.
    labels: Vec<(String, i8)>,
    inv: Vec<u32>,
    index: HashMap<(String, i8), u32>,
}

impl Columns {
    fn new(p: &Presentation) -> Self {
        let involutions: HashSet<String> = p
            .relator_words()
            .filter_map(|w| {
                let w = w.cyclic_reduce();
                let l = w.letters();
                (l.len() == 2 && l[0] == l[1]).then(|| l[0].gen.clone())
            })
            .collect();
        let mut cols = Columns { labels: Vec::new(), inv: Vec::new(), index: HashMap::new() };
        for g in p.generators() {
            let c = cols.labels.len() as u32;
            if involutions.contains(g) {
                cols.labels.push((g.clone(), 1));
                cols.inv.push(c);
                cols.index.insert((g.clone(), 1), c);
                cols.index.insert((g.clone(), -1), c);
            } else {
                cols.labels.push((g.clone(), 1));
                cols.labels.push((g.clone(), -1));
                cols.inv.extend([c + 1, c]);
                cols.index.insert((g.clone(), 1), c);
                cols.index.insert((g.clone(), -1), c + 1);
            }
        }
        cols
    }

    fn width(&self) -> usize {
        self.labels.len()
    }

    fn word(&self, w: &Word) -> Result<Vec<u32>, CosetError> {
        w.letters()
            .iter()
            .map(|l| {
                self.index
                    .get(&(l.gen.clone(), l.exp.signum()))
                    .copied()
                    .ok_or_else(|| CosetError::UnknownGenerator(l.gen.clone()))
            })
            .collect()
    }

    /// Cancels `x x⁻¹` pairs (including `x x` for self-inverse columns), cyclically.
    fn cyclic_reduce(&self, w: Vec<u32>) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::with_capacity(w.len());
        for x in w {
            if out.last() == Some(&self.inv[x as usize]) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        let (mut lo, mut hi) = (0, out.len());
        while hi - lo >= 2 && out[hi - 1] == self.inv[out[lo] as usize] {
            lo += 1;
            hi -= 1;
        }
        out[lo..hi].to_vec()
    }
}

/// A completed coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    cols: Columns,
    rows: Vec<u32>,
    n: usize,
    subgroup: Vec<Word>,
}

impl CosetTable {
    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of columns (one per involution, two per other generator).
    pub fn width(&self) -> usize {
        self.cols.width()
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    /// `coset · gen^exp`, 1-based; `None` if undefined or out of range.
    pub fn action(&self, coset: usize, gen: &str, exp: i8) -> Option<usize> {
        let col = *self.cols.index.get(&(gen.to_string(), exp.signum()))?;
        self.entry(coset.checked_sub(1)?, col).map(|d| d + 1)
    }

    fn entry(&self, row: usize, col: u32) -> Option<usize> {
        if row >= self.n {
            return None;
        }
        let v = self.rows[row * self.width() + col as usize];
        (v != NONE).then_some(v as usize)
    }

    /// Undefines one entry (and nothing else), for exercising [`validate`].
    pub fn clear_entry(&mut self, coset: usize, gen: &str, exp: i8) {
        if let Some(&col) = self.cols.index.get(&(gen.to_string(), exp.signum())) {
            if (1..=self.n).contains(&coset) {
                let w = self.width();
                self.rows[(coset - 1) * w + col as usize] = NONE;
            }
        }
    }

    /// Identifies coset `drop` with `keep` by redirecting every reference and
    /// deleting the row of `drop`, without any further processing. Used to
    /// build corrupted tables for [`validate`].
    pub fn identify(&mut self, keep: usize, drop: usize) {
        if keep == drop || !(1..=self.n).contains(&keep) || !(1..=self.n).contains(&drop) {
            return;
        }
        let (keep, drop) = ((keep - 1) as u32, (drop - 1) as u32);
        let w = self.width();
        let renumber = |v: u32| match v {
            NONE => NONE,
            v if v == drop => renumber_index(keep, drop),
            v => renumber_index(v, drop),
        };
        let mut rows = Vec::with_capacity((self.n - 1) * w);
        for r in 0..self.n as u32 {
            if r != drop {
                rows.extend(self.rows[r as usize * w..(r as usize + 1) * w].iter().map(|&v| renumber(v)));
            }
        }
        self.rows = rows;
        self.n -= 1;
    }

    /// Debug listing, one line per defined entry: `coset generator → coset`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in 0..self.n {
            for (col, (g, e)) in self.cols.labels.iter().enumerate() {
                if let Some(d) = self.entry(c, col as u32) {
                    let label = if *e < 0 { format!("{g}^-1") } else { g.clone() };
                    let _ = writeln!(out, "{} {} → {}", c + 1, label, d + 1);
                }
            }
        }
        out
    }
}

fn renumber_index(v: u32, removed: u32) -> u32 {
    if v > removed {
        v - 1
    } else {
        v
    }
}

/// Index of the subgroup generated by `subgroup` (the group order when empty).
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<usize, CosetError> {
    enumerate_table(p, subgroup, max_cosets).map(|t| t.len())
}

/// Runs the enumeration and returns the completed, compacted table.
pub fn enumerate_table(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, CosetError> {
    let cols = Columns::new(p);
    let mut rels: Vec<Vec<u32>> = Vec::new();
    for w in p.relator_words() {
        let r = cols.cyclic_reduce(cols.word(w)?);
        if !r.is_empty() && !rels.contains(&r) {
            rels.push(r);
        }
    }
    let sub: Vec<Vec<u32>> = subgroup.iter().map(|w| cols.word(w)).collect::<Result<_, _>>()?;
    let mut e = Enumerator::new(&cols, &rels, sub, max_cosets.max(1));
    e.run()?;
    let (rows, n) = e.finish();
    Ok(CosetTable { cols, rows, n, subgroup: subgroup.to_vec() })
}

enum ScanOutcome {
    Done,
    Incomplete { f: u32, i: usize },
}

struct Enumerator<'a> {
    width: usize,
    inv: &'a [u32],
    table: Vec<u32>,
    parent: Vec<u32>,
    alive: usize,
    max: usize,
    /// All distinct cyclic rotations of the relators.
    conjugates: Vec<Vec<u32>>,
    /// Indices into `conjugates` by first column.
    starting: Vec<Vec<usize>>,
    subgroup: Vec<Vec<u32>>,
    deductions: Vec<(u32, u32)>,
    queue: VecDeque<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(cols: &'a Columns, rels: &[Vec<u32>], subgroup: Vec<Vec<u32>>, max: usize) -> Self {
        let width = cols.width();
        let mut seen = HashSet::new();
        let mut conjugates = Vec::new();
        let mut starting = vec![Vec::new(); width];
        for r in rels {
            for s in 0..r.len() {
                let rot: Vec<u32> = r[s..].iter().chain(&r[..s]).copied().collect();
                if seen.insert(rot.clone()) {
                    starting[rot[0] as usize].push(conjugates.len());
                    conjugates.push(rot);
                }
            }
        }
        Self {
            width,
            inv: &cols.inv,
            table: Vec::new(),
            parent: Vec::new(),
            alive: 0,
            max,
            conjugates,
            starting,
            subgroup,
            deductions: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.width + x as usize]
    }

    fn put(&mut self, c: u32, x: u32, d: u32) {
        self.table[c as usize * self.width + x as usize] = d;
    }

    fn is_alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.put(c, x, d);
        self.put(d, self.inv[x as usize], c);
    }

    fn new_coset(&mut self) -> Result<u32, CosetError> {
        if self.rows() >= self.max {
            return Err(CosetError::Overflow { live: self.alive });
        }
        let c = self.rows() as u32;
        self.table.extend(std::iter::repeat(NONE).take(self.width));
        self.parent.push(c);
        self.alive += 1;
        Ok(c)
    }

    fn define(&mut self, c: u32, x: u32) -> Result<u32, CosetError> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.deductions.push((c, x));
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (k, l) = if k < l { (k, l) } else { (l, k) };
        self.parent[l as usize] = k;
        self.alive -= 1;
        self.queue.push_back(l);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.width as u32 {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let ix = self.inv[x as usize];
                self.put(f, ix, NONE);
                let mu = self.rep(e);
                let nu = self.rep(f);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                    continue;
                }
                let ny = self.get(nu, ix);
                if ny != NONE {
                    self.merge(mu, ny);
                } else {
                    self.set(mu, x, nu);
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Traces `rel` from `c` forwards and backwards; closes a single gap by
    /// deduction, or reports a coincidence.
    fn scan(&mut self, c: u32, rel: &[u32]) -> ScanOutcome {
        let n = rel.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let next = self.get(f, rel[i]);
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != c {
                self.coincidence(f, c);
            }
            return ScanOutcome::Done;
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let prev = self.get(b, self.inv[rel[j - 1] as usize]);
            if prev == NONE {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i {
            if f != b {
                self.coincidence(f, b);
            }
            ScanOutcome::Done
        } else if j == i + 1 {
            self.set(f, rel[i], b);
            self.deductions.push((f, rel[i]));
            ScanOutcome::Done
        } else {
            ScanOutcome::Incomplete { f, i }
        }
    }

    fn scan_and_fill(&mut self, c: u32, rel: &[u32]) -> Result<(), CosetError> {
        loop {
            if !self.is_alive(c) {
                return Ok(());
            }
            match self.scan(c, rel) {
                ScanOutcome::Done => return Ok(()),
                ScanOutcome::Incomplete { f, i } => {
                    self.define(f, rel[i])?;
                }
            }
        }
    }

    fn scan_conjugates(&mut self, c: u32, x: u32) {
        for idx in 0..self.starting[x as usize].len() {
            if !self.is_alive(c) {
                return;
            }
            let k = self.starting[x as usize][idx];
            let rel = std::mem::take(&mut self.conjugates[k]);
            self.scan(c, &rel);
            self.conjugates[k] = rel;
        }
    }

    fn process_deductions(&mut self) {
        loop {
            while let Some((c, x)) = self.deductions.pop() {
                if !self.is_alive(c) || self.get(c, x) == NONE {
                    continue;
                }
                self.scan_conjugates(c, x);
                if !self.is_alive(c) {
                    continue;
                }
                let d = self.get(c, x);
                if d != NONE && self.is_alive(d) {
                    self.scan_conjugates(d, self.inv[x as usize]);
                }
            }
            for k in 0..self.subgroup.len() {
                let w = std::mem::take(&mut self.subgroup[k]);
                self.scan(0, &w);
                self.subgroup[k] = w;
            }
            if self.deductions.is_empty() {
                return;
            }
        }
    }

    /// Renumbers live cosets consecutively, preserving their order.
    fn compact(&mut self) {
        let n = self.rows();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] == c as u32 {
                *slot = next;
                next += 1;
            }
        }
        let w = self.width;
        let mut table = Vec::with_capacity(next as usize * w);
        for c in 0..n {
            if map[c] != NONE {
                table.extend(self.table[c * w..(c + 1) * w].iter().map(|&v| {
                    if v == NONE {
                        NONE
                    } else {
                        map[v as usize]
                    }
                }));
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions = std::mem::take(&mut self.deductions)
            .into_iter()
            .filter(|&(c, _)| map[c as usize] != NONE)
            .map(|(c, x)| (map[c as usize], x))
            .collect();
    }

    fn run(&mut self) -> Result<(), CosetError> {
        self.new_coset()?;
        for k in 0..self.subgroup.len() {
            let w = self.subgroup[k].clone();
            self.scan_and_fill(0, &w)?;
            self.process_deductions();
        }
        let mut c = 0usize;
        let mut x = 0usize;
        loop {
            self.process_deductions();
            if self.rows() >= self.max && self.alive < self.rows() {
                self.compact();
                c = 0;
                x = 0;
            }
            // first undefined entry in coset order
            loop {
                if c >= self.rows() {
                    return Ok(());
                }
                if self.is_alive(c as u32) {
                    while x < self.width && self.get(c as u32, x as u32) != NONE {
                        x += 1;
                    }
                    if x < self.width {
                        break;
                    }
                }
                c += 1;
                x = 0;
            }
            self.define(c as u32, x as u32)?;
        }
    }

    fn finish(mut self) -> (Vec<u32>, usize) {
        self.compact();
        let n = self.rows();
        (self.table, n)
    }
}

/// Whether `t` is a complete, consistent coset table for `p` in which every
/// relator fixes every coset and every subgroup word fixes coset 1.
pub fn validate(t: &CosetTable, p: &Presentation) -> bool {
    validate_with(t, p, Exec::default())
}

pub fn validate_with(t: &CosetTable, p: &Presentation, exec: Exec) -> bool {
    let w = t.width();
    if t.n == 0 || t.rows.len() != t.n * w || t.cols != Columns::new(p) {
        return false;
    }
    let consistent = par::all_range(exec, t.n, |c| {
        (0..w).all(|x| {
            let d = t.rows[c * w + x];
            d != NONE
                && (d as usize) < t.n
                && t.rows[d as usize * w + t.cols.inv[x] as usize] == c as u32
        })
    });
    if !consistent {
        return false;
    }
    let words = |ws: Vec<&Word>| -> Option<Vec<Vec<u32>>> {
        ws.into_iter().map(|x| t.cols.word(x).ok()).collect()
    };
    let Some(rels) = words(p.relator_words().collect()) else { return false };
    let Some(sub) = words(t.subgroup.iter().collect()) else { return false };
    let trace = |c: usize, word: &[u32]| {
        word.iter().fold(c, |acc, &x| t.rows[acc * w + x as usize] as usize)
    };
    sub.iter().all(|s| trace(0, s) == 0)
        && par::all_range(exec, t.n, |c| rels.iter().all(|r| trace(c, r) == c))
}
