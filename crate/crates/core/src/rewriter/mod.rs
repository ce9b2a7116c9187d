//! Elementary-move rewriting over generators with braid, disjointness and
//! involution relations, with replayable derivations.
//!
//! Positions are 1-based letter indices. Moves are purely local: nothing is
//! reduced automatically, so every cancellation is an explicit move.

mod claims;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Letter, Word};

pub use claims::{
    a5_derivation, b_relator_replays, chain_power_to_empty, claim31_rho_derivation,
    claim32_derivation, claim32_on_chain, claim33_checks, BRelatorReplay, Claim33Check,
};

/// Default depth for [`bounded_search`].
pub const DEFAULT_SEARCH_DEPTH: usize = 10;
/// Default number of visited words before [`bounded_search`] gives up.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("move {kind:?} is not defined at position {pos}: {reason}")]
    Undefined { kind: MoveKind, pos: usize, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    BadIndex(usize),
    #[error("pair ({0}, {1}) is declared both braid and disjoint")]
    Conflict(usize, usize),
    #[error("genus {0} is outside the supported range")]
    InvalidGenus(usize),
}

/// Generators `g_0, …` (0-based indices) with the relations that moves may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    generators: Vec<String>,
    braid: BTreeSet<(usize, usize)>,
    disjoint: BTreeSet<(usize, usize)>,
    involutions: BTreeSet<usize>,
}

fn pair(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl RewriteSystem {
    pub fn new(
        generators: Vec<String>,
        braid: &[(usize, usize)],
        disjoint: &[(usize, usize)],
        involutions: &[usize],
    ) -> Result<Self, RewriteError> {
        let n = generators.len();
        let check = |&(i, j): &(usize, usize)| {
            if i >= n {
                Err(RewriteError::BadIndex(i))
            } else if j >= n || i == j {
                Err(RewriteError::BadIndex(j))
            } else {
                Ok(pair(i, j))
            }
        };
        let braid: BTreeSet<_> = braid.iter().map(check).collect::<Result<_, _>>()?;
        let disjoint: BTreeSet<_> = disjoint.iter().map(check).collect::<Result<_, _>>()?;
        if let Some(&(i, j)) = braid.intersection(&disjoint).next() {
            return Err(RewriteError::Conflict(i, j));
        }
        if let Some(&i) = involutions.iter().find(|&&i| i >= n) {
            return Err(RewriteError::BadIndex(i));
        }
        Ok(Self { generators, braid, disjoint, involutions: involutions.iter().copied().collect() })
    }

    /// `g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1}` and `[g_i, g_j] = 1` for `|i - j| > 1`.
    pub fn chain<S: AsRef<str>>(names: &[S], involutive: bool) -> Self {
        let n = names.len();
        let braid: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let disjoint: Vec<_> =
            (0..n).flat_map(|i| (i + 2..n).map(move |j| (i, j))).collect();
        let inv: Vec<usize> = if involutive { (0..n).collect() } else { Vec::new() };
        Self::new(names.iter().map(|s| s.as_ref().to_string()).collect(), &braid, &disjoint, &inv)
            .expect("chain relations are consistent")
    }

    /// `a_1 … a_{g-1}` and, for `g ≥ 4`, `b`, all involutions; braids between
    /// consecutive `a_i` and between `a4` and `b`; every other pair commutes.
    pub fn for_genus(g: usize) -> Result<Self, RewriteError> {
        if g < 2 {
            return Err(RewriteError::InvalidGenus(g));
        }
        let mut names: Vec<String> = (1..g).map(|i| format!("a{i}")).collect();
        let mut braid: Vec<_> = (1..g - 1).map(|i| (i - 1, i)).collect();
        if g >= 4 {
            names.push("b".into());
            if g >= 5 {
                braid.push((3, g - 1));
            }
        }
        let n = names.len();
        let mut disjoint = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !braid.contains(&(i, j)) {
                    disjoint.push((i, j));
                }
            }
        }
        let inv: Vec<usize> = (0..n).collect();
        Self::new(names, &braid, &disjoint, &inv)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn is_braid(&self, i: usize, j: usize) -> bool {
        self.braid.contains(&pair(i, j))
    }

    pub fn is_disjoint(&self, i: usize, j: usize) -> bool {
        self.disjoint.contains(&pair(i, j))
    }

    pub fn is_involution(&self, i: usize) -> bool {
        self.involutions.contains(&i)
    }

    pub fn braid_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.braid.iter().copied()
    }

    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.disjoint.iter().copied()
    }

    pub fn involutions(&self) -> impl Iterator<Item = usize> + '_ {
        self.involutions.iter().copied()
    }

    fn letter(&self, i: usize, exp: i64) -> Result<Letter, RewriteError> {
        let name = self.generators.get(i).ok_or(RewriteError::BadIndex(i))?;
        Ok(Letter::new(name.clone(), if exp < 0 { -1 } else { 1 }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// `x^e x^-e → ε`; params `[i, e]`
    FreeReduce,
    /// `ε → x^e x^-e` before `pos`; params `[i, e]`
    FreeInsert,
    /// `x^e y^e x^e → y^e x^e y^e`; params `[i, j]`
    Braid,
    /// `x^e y^f → y^f x^e`; params `[i, j]`
    Disjoint,
    /// `x^e x^e → ε` for an involution; params `[i, e]`
    InvolutionCancel,
    /// `ε → x^e x^e` before `pos` for an involution; params `[i, e]`
    InvolutionInsert,
}

/// One rewriting step. `params` holds generator indices and, where relevant,
/// an exponent sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub pos: usize,
    pub params: Vec<i64>,
}

impl Move {
    pub fn new(kind: MoveKind, pos: usize, params: &[i64]) -> Self {
        Self { kind, pos, params: params.to_vec() }
    }

    pub fn braid(pos: usize, i: usize, j: usize) -> Self {
        Self::new(MoveKind::Braid, pos, &[i as i64, j as i64])
    }

    pub fn disjoint(pos: usize, i: usize, j: usize) -> Self {
        Self::new(MoveKind::Disjoint, pos, &[i as i64, j as i64])
    }

    pub fn cancel(pos: usize, i: usize) -> Self {
        Self::new(MoveKind::InvolutionCancel, pos, &[i as i64, 1])
    }

    pub fn insert(pos: usize, i: usize) -> Self {
        Self::new(MoveKind::InvolutionInsert, pos, &[i as i64, 1])
    }

    pub fn free_reduce(pos: usize, i: usize, e: i64) -> Self {
        Self::new(MoveKind::FreeReduce, pos, &[i as i64, e])
    }

    /// The move undoing `self`, as applied to the word `self` produced.
    pub fn inverse(&self) -> Move {
        let p = &self.params;
        let kind = match self.kind {
            MoveKind::FreeReduce => MoveKind::FreeInsert,
            MoveKind::FreeInsert => MoveKind::FreeReduce,
            MoveKind::InvolutionCancel => MoveKind::InvolutionInsert,
            MoveKind::InvolutionInsert => MoveKind::InvolutionCancel,
            MoveKind::Braid | MoveKind::Disjoint => {
                return Move { kind: self.kind, pos: self.pos, params: vec![p[1], p[0]] };
            }
        };
        Move { kind, pos: self.pos, params: p.clone() }
    }
}

fn undefined(m: &Move, reason: impl Into<String>) -> RewriteError {
    RewriteError::Undefined { kind: m.kind, pos: m.pos, reason: reason.into() }
}

/// Applies one move; the result is not reduced in any way.
pub fn apply_move(w: &Word, m: &Move, sys: &RewriteSystem) -> Result<Word, RewriteError> {
    let letters = w.letters();
    if m.params.len() != 2 {
        return Err(undefined(m, "expected two parameters"));
    }
    let gi = usize::try_from(m.params[0]).map_err(|_| undefined(m, "negative index"))?;
    let idx = |l: &Letter| sys.index(&l.gen);
    let window = |len: usize| -> Result<&[Letter], RewriteError> {
        if m.pos == 0 || m.pos - 1 + len > letters.len() {
            return Err(undefined(m, "position out of range"));
        }
        Ok(&letters[m.pos - 1..m.pos - 1 + len])
    };
    let splice = |start: usize, remove: usize, insert: Vec<Letter>| {
        let mut out = letters[..start].to_vec();
        out.extend(insert);
        out.extend_from_slice(&letters[start + remove..]);
        Word::from_letters(out)
    };
    match m.kind {
        MoveKind::FreeReduce | MoveKind::InvolutionCancel => {
            let win = window(2)?;
            let e = m.params[1].signum();
            if idx(&win[0]) != Some(gi) || idx(&win[1]) != Some(gi) || win[0].exp as i64 != e {
                return Err(undefined(m, "letters do not match parameters"));
            }
            if m.kind == MoveKind::FreeReduce {
                if !win[1].is_inverse_of(&win[0]) {
                    return Err(undefined(m, "not an inverse pair"));
                }
            } else if !sys.is_involution(gi) || win[0] != win[1] {
                return Err(undefined(m, "not a repeated involution"));
            }
            Ok(splice(m.pos - 1, 2, vec![]))
        }
        MoveKind::FreeInsert | MoveKind::InvolutionInsert => {
            if m.pos == 0 || m.pos > letters.len() + 1 {
                return Err(undefined(m, "position out of range"));
            }
            let e = m.params[1];
            if e != 1 && e != -1 {
                return Err(undefined(m, "exponent must be ±1"));
            }
            let x = sys.letter(gi, e)?;
            let second = if m.kind == MoveKind::FreeInsert {
                x.inverse()
            } else if sys.is_involution(gi) {
                x.clone()
            } else {
                return Err(undefined(m, "not an involution"));
            };
            Ok(splice(m.pos - 1, 0, vec![x, second]))
        }
        MoveKind::Braid => {
            let gj = usize::try_from(m.params[1]).map_err(|_| undefined(m, "negative index"))?;
            let win = window(3)?;
            let e = win[0].exp;
            let ok = idx(&win[0]) == Some(gi)
                && idx(&win[1]) == Some(gj)
                && idx(&win[2]) == Some(gi)
                && win.iter().all(|l| l.exp == e)
                && sys.is_braid(gi, gj);
            if !ok {
                return Err(undefined(m, "no braid pattern here"));
            }
            let (x, y) = (win[0].clone(), win[1].clone());
            Ok(splice(m.pos - 1, 3, vec![y.clone(), x, y]))
        }
        MoveKind::Disjoint => {
            let gj = usize::try_from(m.params[1]).map_err(|_| undefined(m, "negative index"))?;
            let win = window(2)?;
            let ok = idx(&win[0]) == Some(gi) && idx(&win[1]) == Some(gj) && sys.is_disjoint(gi, gj);
            if !ok {
                return Err(undefined(m, "letters do not commute by a declared relation"));
            }
            Ok(splice(m.pos - 1, 2, vec![win[1].clone(), win[0].clone()]))
        }
    }
}

/// A start word, the moves applied to it, the claimed end word, and the
/// system the moves are taken in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub system: RewriteSystem,
    pub start: Word,
    pub moves: Vec<Move>,
    pub end: Word,
}

impl Derivation {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Every intermediate word, start and end included.
    pub fn words(&self) -> Result<Vec<Word>, RewriteError> {
        let mut out = vec![self.start.clone()];
        for m in &self.moves {
            let next = apply_move(out.last().expect("nonempty"), m, &self.system)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Moves as JSON: `[{"kind": …, "pos": …, "params": […]}, …]`.
    pub fn moves_json(&self) -> String {
        serde_json::to_string(&self.moves).expect("moves serialize")
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn then(mut self, other: Derivation) -> Derivation {
        debug_assert_eq!(self.end, other.start);
        self.moves.extend(other.moves);
        self.end = other.end;
        self
    }
}

/// Builds a derivation by applying moves one at a time, so that the end word
/// is computed rather than asserted.
#[derive(Clone, Debug)]
pub(crate) struct Builder {
    system: RewriteSystem,
    start: Word,
    current: Word,
    moves: Vec<Move>,
}

impl Builder {
    pub(crate) fn new(system: RewriteSystem, start: Word) -> Self {
        Self { system, current: start.clone(), start, moves: Vec::new() }
    }

    pub(crate) fn apply(&mut self, m: Move) -> Result<&mut Self, RewriteError> {
        self.current = apply_move(&self.current, &m, &self.system)?;
        self.moves.push(m);
        Ok(self)
    }

    pub(crate) fn apply_all(&mut self, ms: impl IntoIterator<Item = Move>) -> Result<&mut Self, RewriteError> {
        for m in ms {
            self.apply(m)?;
        }
        Ok(self)
    }

    pub(crate) fn current(&self) -> &Word {
        &self.current
    }

    pub(crate) fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub(crate) fn finish(self) -> Derivation {
        Derivation { system: self.system, start: self.start, moves: self.moves, end: self.current }
    }
}

/// Replays every move and checks that the result is exactly `d.end`.
pub fn verify_derivation(d: &Derivation) -> bool {
    let mut w = d.start.clone();
    for m in &d.moves {
        match apply_move(&w, m, &d.system) {
            Ok(next) => w = next,
            Err(_) => return false,
        }
    }
    w == d.end
}

/// Every move applicable to `w` that does not lengthen it.
pub fn shrinking_moves(w: &Word, sys: &RewriteSystem) -> Vec<Move> {
    let l = w.letters();
    let mut out = Vec::new();
    for p in 0..l.len() {
        let Some(i) = sys.index(&l[p].gen) else { continue };
        if p + 1 < l.len() {
            let Some(j) = sys.index(&l[p + 1].gen) else { continue };
            if i == j {
                if l[p + 1].is_inverse_of(&l[p]) {
                    out.push(Move::free_reduce(p + 1, i, l[p].exp as i64));
                } else if sys.is_involution(i) {
                    out.push(Move::new(MoveKind::InvolutionCancel, p + 1, &[i as i64, l[p].exp as i64]));
                }
            } else if sys.is_disjoint(i, j) {
                out.push(Move::disjoint(p + 1, i, j));
            }
            if p + 2 < l.len() && l[p + 2] == l[p] && l[p + 1].exp == l[p].exp && sys.is_braid(i, j) {
                out.push(Move::braid(p + 1, i, j));
            }
        }
    }
    out
}

/// Bidirectional breadth-first search for a derivation from `u` to `v`:
/// both ends are rewritten with non-lengthening moves, at most `depth` moves
/// each, until they meet; moves found from the `v` side are inverted on the
/// way back. `None` means nothing was found within
/// `depth` moves or `state_cap` visited words; it is not a refutation.
pub fn bounded_search(
    u: &Word,
    v: &Word,
    sys: &RewriteSystem,
    depth: usize,
    state_cap: usize,
) -> Option<Derivation> {
    type Parents = HashMap<Word, Option<(Word, Move)>>;
    let mut fwd: Parents = HashMap::from([(u.clone(), None)]);
    let mut bwd: Parents = HashMap::from([(v.clone(), None)]);
    let mut fq = VecDeque::from([u.clone()]);
    let mut bq = VecDeque::from([v.clone()]);
    let mut meet = fwd.contains_key(v).then(|| v.clone());
    let expand = |q: &mut VecDeque<Word>, seen: &mut Parents, other: &Parents| -> Option<Word> {
        let layer: Vec<Word> = q.drain(..).collect();
        for w in layer {
            for m in shrinking_moves(&w, sys) {
                let next = apply_move(&w, &m, sys).expect("enumerated moves apply");
                if seen.contains_key(&next) {
                    continue;
                }
                seen.insert(next.clone(), Some((w.clone(), m)));
                if other.contains_key(&next) {
                    return Some(next);
                }
                q.push_back(next);
            }
        }
        None
    };
    let (mut fsteps, mut bsteps) = (0, 0);
    while meet.is_none() {
        let can_f = fsteps < depth && !fq.is_empty();
        let can_b = bsteps < depth && !bq.is_empty();
        if can_f && (!can_b || fsteps <= bsteps) {
            meet = expand(&mut fq, &mut fwd, &bwd);
            fsteps += 1;
        } else if can_b {
            meet = expand(&mut bq, &mut bwd, &fwd);
            bsteps += 1;
        } else {
            break;
        }
        if fwd.len() + bwd.len() > state_cap {
            return None;
        }
    }
    let mid = meet?;
    let mut head = Vec::new();
    let mut w = mid.clone();
    while let Some(Some((prev, m))) = fwd.get(&w) {
        head.push(m.clone());
        w = prev.clone();
    }
    head.reverse();
    let mut w = mid;
    while let Some(Some((prev, m))) = bwd.get(&w) {
        head.push(m.inverse());
        w = prev.clone();
    }
    let d = Derivation { system: sys.clone(), start: u.clone(), moves: head, end: v.clone() };
    verify_derivation(&d).then_some(d)
}
