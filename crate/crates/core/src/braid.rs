//! Braid words on `Σ_{g,p}`, the relator families of the standard
//! presentation, the degree-zero evaluation `ε₀` into the wreath product
//! `π₁ⁿ ⋊ S_n`, and a bounded search for equality of braid words.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::surface::{normalize_unchecked, Gen, Letter, Pi1Word, SurfaceParams};

/// Default cap on the number of words visited by [`bounded_equal`].
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum BraidGen {
    Sigma(usize),
    Surface(Gen),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BraidLetter {
    pub gen: BraidGen,
    pub inv: bool,
}

impl BraidLetter {
    pub fn sigma(i: usize) -> Self {
        BraidLetter { gen: BraidGen::Sigma(i), inv: false }
    }

    pub fn surface(l: Letter) -> Self {
        BraidLetter { gen: BraidGen::Surface(l.gen), inv: l.inv }
    }

    pub fn inverse(self) -> Self {
        BraidLetter { gen: self.gen, inv: !self.inv }
    }

    pub fn pow(self, e: i32) -> Vec<BraidLetter> {
        let l = if e < 0 { self.inverse() } else { self };
        vec![l; e.unsigned_abs() as usize]
    }

    fn cancels(self, other: BraidLetter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }

    pub fn parse(tok: &str) -> Result<Self> {
        if let Some(rest) = tok.strip_prefix('s') {
            let (body, inv) = match rest.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (rest, false),
            };
            let i = body
                .parse()
                .map_err(|_| Error::Parse(format!("bad token `{tok}`")))?;
            return Ok(BraidLetter { gen: BraidGen::Sigma(i), inv });
        }
        Letter::parse(tok).map(BraidLetter::surface)
    }

    pub fn check(&self, s: &SurfaceParams) -> Result<()> {
        match self.gen {
            BraidGen::Sigma(i) if 1 <= i && i < s.strands => Ok(()),
            BraidGen::Sigma(i) => Err(Error::InvalidGenerator(format!("s{i}"))),
            BraidGen::Surface(g) => s.check_gen(g),
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gen {
            BraidGen::Sigma(i) => write!(f, "s{i}")?,
            BraidGen::Surface(g) => write!(f, "{g}")?,
        }
        if self.inv {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl PartialOrd for BraidLetter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BraidLetter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |l: &BraidLetter| match l.gen {
            BraidGen::Sigma(i) => (0, i, 0),
            BraidGen::Surface(Gen::A(r)) => (1, r, 0),
            BraidGen::Surface(Gen::B(r)) => (1, r, 1),
            BraidGen::Surface(Gen::Z(k)) => (2, k, 0),
        };
        (key(self), self.inv).cmp(&(key(other), other.inv))
    }
}

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord::default()
    }

    pub fn new(letters: Vec<BraidLetter>) -> Self {
        BraidWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .filter(|t| *t != "1")
            .map(BraidLetter::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(BraidWord { letters })
    }

    pub fn validate(&self, s: &SurfaceParams) -> Result<()> {
        self.letters.iter().try_for_each(|l| l.check(s))
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn free_reduced(&self) -> Self {
        let mut out: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord { letters: out }
    }

    pub fn from_pi1(w: &Pi1Word) -> Self {
        BraidWord {
            letters: w.letters.iter().map(|&l| BraidLetter::surface(l)).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// `[x, y] = x y x⁻¹ y⁻¹`.
fn commutator(x: &[BraidLetter], y: &[BraidLetter]) -> Vec<BraidLetter> {
    let inv = |w: &[BraidLetter]| w.iter().rev().map(|l| l.inverse()).collect::<Vec<_>>();
    let mut out = x.to_vec();
    out.extend_from_slice(y);
    out.extend(inv(x));
    out.extend(inv(y));
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RelatorFamily {
    /// Braid relations among the σ_i.
    Braid,
    /// Commutativity relations.
    Commute,
    /// Skew commutativity on a handle.
    Skew,
    /// The closed-surface relation.
    Closed,
}

impl RelatorFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            RelatorFamily::Braid => "2.i",
            RelatorFamily::Commute => "2.ii",
            RelatorFamily::Skew => "2.iii",
            RelatorFamily::Closed => "2.iv",
        }
    }
}

/// A word equal to the identity in `B(Σ_{g,p}, n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relator {
    pub family: RelatorFamily,
    pub word: BraidWord,
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.family.tag(), self.word)
    }
}

/// Every relator instance of the presentation, as words equal to 1.
pub fn relators(s: &SurfaceParams) -> Vec<Relator> {
    let n = s.strands;
    let sig = BraidLetter::sigma;
    let sinv = |i| BraidLetter::sigma(i).inverse();
    let a = |r| BraidLetter::surface(Letter::new(Gen::A(r)));
    let b = |r| BraidLetter::surface(Letter::new(Gen::B(r)));
    let z = |k| BraidLetter::surface(Letter::new(Gen::Z(k)));
    let mut out = Vec::new();
    let mut push = |family, letters: Vec<BraidLetter>| {
        out.push(Relator { family, word: BraidWord::new(letters) })
    };

    // 2.i
    for i in 1..n.saturating_sub(1) {
        push(
            RelatorFamily::Braid,
            vec![sig(i), sig(i + 1), sig(i), sinv(i + 1), sinv(i), sinv(i + 1)],
        );
    }
    for i in 1..n {
        for j in i + 2..n {
            push(RelatorFamily::Braid, commutator(&[sig(i)], &[sig(j)]));
        }
    }

    // 2.ii
    let mut surface_gens = Vec::new();
    for r in 1..=s.genus {
        surface_gens.push(a(r));
        surface_gens.push(b(r));
    }
    surface_gens.extend((1..=s.boundary_loops()).map(z));
    for &g in &surface_gens {
        for i in 2..n {
            push(RelatorFamily::Commute, commutator(&[g], &[sig(i)]));
        }
    }
    for &g in &surface_gens {
        push(RelatorFamily::Commute, commutator(&[g], &[sinv(1), g, sinv(1)]));
    }
    let conj = |x: BraidLetter| vec![sinv(1), x, sig(1)];
    for r in 1..=s.genus {
        for sidx in 1..r {
            for x in [a(r), b(r)] {
                for y in [a(sidx), b(sidx)] {
                    push(RelatorFamily::Commute, commutator(&[x], &conj(y)));
                }
            }
        }
    }
    for i in 1..=s.boundary_loops() {
        for j in 1..i {
            push(RelatorFamily::Commute, commutator(&[z(i)], &conj(z(j))));
        }
    }
    for r in 1..=s.genus {
        for k in 1..=s.boundary_loops() {
            push(RelatorFamily::Commute, commutator(&[a(r)], &conj(z(k))));
            push(RelatorFamily::Commute, commutator(&[b(r)], &conj(z(k))));
        }
    }

    // 2.iii: σ1^-2 [a_r, σ1^-1 b_r σ1^-1]
    for r in 1..=s.genus {
        let mut w = vec![sinv(1), sinv(1)];
        w.extend(commutator(&[a(r)], &[sinv(1), b(r), sinv(1)]));
        push(RelatorFamily::Skew, w);
    }

    // 2.iv: ∏[a_s, b_s^-1] · (σ1 ⋯ σ_{n-1}² ⋯ σ1)^-1
    if s.is_closed() {
        let mut w = Vec::new();
        for r in 1..=s.genus {
            w.extend(commutator(&[a(r)], &[b(r).inverse()]));
        }
        w.extend((1..n).map(sinv));
        w.extend((1..n).rev().map(sinv));
        push(RelatorFamily::Closed, w);
    }
    out
}

/// An element of `π₁ⁿ ⋊ S_n`: one π₁ class per strand and a permutation.
///
/// Multiplication is `(g;π)(h;ρ) = (g · π▷h; π∘ρ)` with
/// `(π▷h)_i = h_{π⁻¹(i)}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathElement {
    pub beads: Vec<Pi1Word>,
    pub perm: Perm,
}

impl WreathElement {
    pub fn identity(n: usize) -> Self {
        WreathElement { beads: vec![Pi1Word::empty(); n], perm: Perm::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.beads.iter().all(|b| b.is_empty())
    }

    pub fn mul(&self, other: &WreathElement, s: &SurfaceParams) -> WreathElement {
        let n = self.beads.len();
        let inv = self.perm.inverse();
        let beads = (1..=n)
            .map(|i| {
                let moved = &other.beads[inv.apply(i) - 1];
                normalize_unchecked(&self.beads[i - 1].concat(moved), s)
            })
            .collect();
        WreathElement { beads, perm: self.perm.compose(&other.perm) }
    }

    pub fn inverse(&self, s: &SurfaceParams) -> WreathElement {
        // (g;π)^-1 = (π^-1 ▷ g^-1; π^-1)
        let n = self.beads.len();
        let pinv = self.perm.inverse();
        let beads = (1..=n)
            .map(|i| normalize_unchecked(&self.beads[self.perm.apply(i) - 1].inverse(), s))
            .collect();
        WreathElement { beads, perm: pinv }
    }

    /// Image of a single generator.
    pub fn generator(l: BraidLetter, s: &SurfaceParams) -> WreathElement {
        let n = s.strands;
        match l.gen {
            BraidGen::Sigma(i) => WreathElement {
                beads: vec![Pi1Word::empty(); n],
                perm: Perm::adjacent(n, i),
            },
            BraidGen::Surface(g) => {
                let mut beads = vec![Pi1Word::empty(); n];
                beads[0] = Pi1Word::letter(Letter { gen: g, inv: l.inv });
                WreathElement { beads, perm: Perm::identity(n) }
            }
        }
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let beads: Vec<String> = self.beads.iter().map(|b| b.to_string()).collect();
        write!(f, "beads=({}) perm={}", beads.join(","), self.perm)
    }
}

/// The degree-zero evaluation `ε₀ = θ ⋊ perm` of a braid word.
pub fn epsilon0(w: &BraidWord, s: &SurfaceParams) -> Result<WreathElement> {
    w.validate(s)?;
    Ok(epsilon0_unchecked(w, s))
}

pub(crate) fn epsilon0_unchecked(w: &BraidWord, s: &SurfaceParams) -> WreathElement {
    w.letters
        .iter()
        .fold(WreathElement::identity(s.strands), |acc, &l| {
            acc.mul(&WreathElement::generator(l, s), s)
        })
}

/// One rewriting step: insert the `rotation`-th cyclic conjugate of a
/// relator (or its inverse) at `position`, then freely reduce.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Move {
    pub position: usize,
    pub relator: usize,
    pub inverse: bool,
    pub rotation: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "insert{} relator #{} rotated {} at {}",
            if self.inverse { " inverse" } else { "" },
            self.relator,
            self.rotation,
            self.position
        )
    }
}

pub fn apply_move(w: &BraidWord, mv: &Move, rels: &[Relator]) -> Option<BraidWord> {
    let rel = rels.get(mv.relator)?;
    if mv.position > w.len() || mv.rotation >= rel.word.len().max(1) {
        return None;
    }
    let base = if mv.inverse { rel.word.inverse() } else { rel.word.clone() };
    let mut rotated = base.letters[mv.rotation..].to_vec();
    rotated.extend_from_slice(&base.letters[..mv.rotation]);
    let mut letters = w.letters[..mv.position].to_vec();
    letters.extend(rotated);
    letters.extend_from_slice(&w.letters[mv.position..]);
    Some(BraidWord::new(letters).free_reduced())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EqualityResult {
    Equal(Vec<Move>),
    Unknown,
}

/// Breadth-first search for a sequence of at most `depth` relator moves
/// rewriting `u` into `v` (both taken up to free reduction). `Equal` is
/// replayed before it is returned; `Unknown` proves nothing.
pub fn bounded_equal(
    u: &BraidWord,
    v: &BraidWord,
    s: &SurfaceParams,
    depth: usize,
    node_budget: usize,
) -> Result<EqualityResult> {
    u.validate(s)?;
    v.validate(s)?;
    let rels = relators(s);
    let start = u.free_reduced();
    let goal = v.free_reduced();
    if start == goal {
        return Ok(EqualityResult::Equal(Vec::new()));
    }
    // word -> (parent, move)
    let mut parent: HashMap<BraidWord, Option<(BraidWord, Move)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut frontier = VecDeque::from([(start.clone(), 0usize)]);
    let mut found = None;
    'search: while let Some((w, d)) = frontier.pop_front() {
        if d >= depth {
            continue;
        }
        for position in 0..=w.len() {
            for (relator, rel) in rels.iter().enumerate() {
                for inverse in [false, true] {
                    for rotation in 0..rel.word.len().max(1) {
                        let mv = Move { position, relator, inverse, rotation };
                        let Some(next) = apply_move(&w, &mv, &rels) else { continue };
                        if parent.contains_key(&next) {
                            continue;
                        }
                        if parent.len() >= node_budget {
                            break 'search;
                        }
                        parent.insert(next.clone(), Some((w.clone(), mv)));
                        if next == goal {
                            found = Some(next);
                            break 'search;
                        }
                        frontier.push_back((next, d + 1));
                    }
                }
            }
        }
    }
    let Some(end) = found else { return Ok(EqualityResult::Unknown) };
    let mut moves = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, mv))) = parent.get(&cur) {
        moves.push(*mv);
        cur = prev.clone();
    }
    moves.reverse();

    let mut replay = start;
    for mv in &moves {
        replay = apply_move(&replay, mv, &rels).expect("recorded move applies");
    }
    assert_eq!(replay, goal, "bounded_equal produced an invalid move sequence");
    Ok(EqualityResult::Equal(moves))
}
