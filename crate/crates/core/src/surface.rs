//! Surface parameters and word arithmetic in the fundamental group of
//! `Σ_{g,p}`.
//!
//! The group is free on `a_1..a_g, b_1..b_g, z_1..z_{p-1}` when `p ≥ 1`.
//! For closed surfaces it is the one-relator group with relator
//! `[a_1, b_1^{-1}] ⋯ [a_g, b_g^{-1}]`. Normal forms:
//!
//! * `p ≥ 1`: free reduction.
//! * `p = 0, g = 1`: abelian form `a^m b^k`.
//! * `p = 0, g ≥ 2`: Dehn reduction, then the shortlex-least word among
//!   those reachable by half-relator swaps.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Closed-surface orbits larger than this stop growing; the least word seen
/// so far is returned.
const ORBIT_CAP: usize = 50_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SurfaceParams {
    pub genus: usize,
    pub boundary: usize,
    pub strands: usize,
}

impl SurfaceParams {
    pub fn new(genus: usize, boundary: usize, strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Parameter(format!(
                "need at least two strands, got {strands}"
            )));
        }
        Ok(SurfaceParams { genus, boundary, strands })
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    /// Number of boundary loops `z_k` among the generators.
    pub fn boundary_loops(&self) -> usize {
        self.boundary.saturating_sub(1)
    }

    /// All generators of π₁ in the fixed order `a_1, b_1, a_2, …, z_1, …`.
    pub fn generators(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        for r in 1..=self.genus {
            out.push(Gen::A(r));
            out.push(Gen::B(r));
        }
        out.extend((1..=self.boundary_loops()).map(Gen::Z));
        out
    }

    /// All letters (generators and their inverses), sorted.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self
            .generators()
            .into_iter()
            .flat_map(|g| [Letter::new(g), Letter::new(g).inverse()])
            .collect();
        out.sort();
        out
    }

    pub fn check_gen(&self, g: Gen) -> Result<()> {
        let ok = match g {
            Gen::A(r) | Gen::B(r) => 1 <= r && r <= self.genus,
            Gen::Z(k) => 1 <= k && k <= self.boundary_loops(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(g.to_string()))
        }
    }
}

impl fmt::Display for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} p={} n={}", self.genus, self.boundary, self.strands)
    }
}

/// A generator of π₁(Σ_{g,p}); indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    A(usize),
    B(usize),
    Z(usize),
}

impl Gen {
    fn key(&self) -> (u8, usize, u8) {
        match *self {
            Gen::A(r) => (0, r, 0),
            Gen::B(r) => (0, r, 1),
            Gen::Z(k) => (1, k, 0),
        }
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A(r) => write!(f, "a{r}"),
            Gen::B(r) => write!(f, "b{r}"),
            Gen::Z(k) => write!(f, "z{k}"),
        }
    }
}

/// A generator with a sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub gen: Gen,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: Gen) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }

    /// Parses `a1`, `b2^-1`, `z1`.
    pub fn parse(token: &str) -> Result<Letter> {
        let (body, inv) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        let mut chars = body.chars();
        let head = chars
            .next()
            .ok_or_else(|| Error::Parse("empty token".into()))?;
        let index: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad token `{token}`")))?;
        let gen = match head {
            'a' => Gen::A(index),
            'b' => Gen::B(index),
            'z' => Gen::Z(index),
            _ => return Err(Error::Parse(format!("unexpected token `{token}`"))),
        };
        Ok(Letter { gen, inv })
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.gen.key(), self.inv).cmp(&(other.gen.key(), other.inv))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        if self.inv {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A word in the generators of π₁. Equality is syntactic; normalize first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Pi1Word {
    pub letters: Vec<Letter>,
}

impl PartialOrd for Pi1Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex.
impl Ord for Pi1Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl Pi1Word {
    pub fn empty() -> Self {
        Pi1Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Pi1Word { letters }
    }

    pub fn letter(l: Letter) -> Self {
        Pi1Word { letters: vec![l] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Formal inverse (no normalization).
    pub fn inverse(&self) -> Pi1Word {
        Pi1Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Formal concatenation (no normalization).
    pub fn concat(&self, other: &Pi1Word) -> Pi1Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Pi1Word { letters }
    }

    /// Parses whitespace-separated tokens; `1` or an empty string is the
    /// empty word. Braid tokens `s1` are rejected.
    pub fn parse(text: &str) -> Result<Pi1Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            if tok.starts_with('s') {
                return Err(Error::Parse(format!(
                    "braid generator `{tok}` is not a π₁ letter"
                )));
            }
            letters.push(Letter::parse(tok)?);
        }
        Ok(Pi1Word { letters })
    }

    pub fn validate(&self, s: &SurfaceParams) -> Result<()> {
        self.letters.iter().try_for_each(|l| s.check_gen(l.gen))
    }
}

impl fmt::Display for Pi1Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Stack-based free reduction.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// The closed-surface relator `∏_s a_s b_s^{-1} a_s^{-1} b_s`.
pub fn closed_relator(genus: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(4 * genus);
    for s in 1..=genus {
        let a = Letter::new(Gen::A(s));
        let b = Letter::new(Gen::B(s));
        out.extend([a, b.inverse(), a.inverse(), b]);
    }
    out
}

/// Cyclic permutations of the closed relator and of its inverse.
struct RelatorCycles {
    cycles: Vec<Vec<Letter>>,
    half: usize,
}

impl RelatorCycles {
    fn new(genus: usize) -> Self {
        let r = closed_relator(genus);
        let r_inv: Vec<Letter> = r.iter().rev().map(|l| l.inverse()).collect();
        let mut cycles = Vec::new();
        for base in [&r, &r_inv] {
            for k in 0..base.len() {
                let mut c = base[k..].to_vec();
                c.extend_from_slice(&base[..k]);
                cycles.push(c);
            }
        }
        RelatorCycles { cycles, half: 2 * genus }
    }

    /// Finds a subword of `w` matching at least `min_len` letters of some
    /// cyclic relator; returns (position, cycle index, match length).
    fn find(&self, w: &[Letter], min_len: usize, from: usize) -> Option<(usize, usize, usize)> {
        for i in from..w.len() {
            for (ci, c) in self.cycles.iter().enumerate() {
                if c[0] != w[i] {
                    continue;
                }
                let m = c.iter().zip(&w[i..]).take_while(|(x, y)| x == y).count();
                if m >= min_len {
                    return Some((i, ci, m));
                }
            }
        }
        None
    }

    /// Replaces `w[i..i+m]` (a prefix of cycle `ci`) by the inverse of the
    /// cycle's remaining suffix.
    fn splice(&self, w: &[Letter], i: usize, ci: usize, m: usize) -> Vec<Letter> {
        let c = &self.cycles[ci];
        let mut out = w[..i].to_vec();
        out.extend(c[m..].iter().rev().map(|l| l.inverse()));
        out.extend_from_slice(&w[i + m..]);
        free_reduce(&out)
    }

    fn dehn_reduce(&self, word: &[Letter]) -> Vec<Letter> {
        let mut w = free_reduce(word);
        while let Some((i, ci, m)) = self.find(&w, self.half + 1, 0) {
            w = self.splice(&w, i, ci, m);
        }
        w
    }

    fn normal_form(&self, word: &[Letter]) -> Vec<Letter> {
        let mut start = self.dehn_reduce(word);
        'restart: loop {
            let len = start.len();
            let mut seen: HashSet<Vec<Letter>> = HashSet::new();
            let mut queue = VecDeque::new();
            seen.insert(start.clone());
            queue.push_back(start.clone());
            while let Some(w) = queue.pop_front() {
                let mut from = 0;
                while let Some((i, ci, _)) = self.find(&w, self.half, from) {
                    from = i + 1;
                    let next = self.dehn_reduce(&self.splice(&w, i, ci, self.half));
                    if next.len() < len {
                        start = next;
                        continue 'restart;
                    }
                    if seen.len() < ORBIT_CAP && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            return seen
                .into_iter()
                .min_by(|x, y| x.cmp(y))
                .unwrap_or_default();
        }
    }
}

/// Dehn's algorithm on a closed surface of genus ≥ 2: the word is trivial
/// iff the result is empty.
pub fn dehn_reduce(w: &Pi1Word, genus: usize) -> Pi1Word {
    Pi1Word::from_letters(RelatorCycles::new(genus).dehn_reduce(&w.letters))
}

fn abelian_form(letters: &[Letter]) -> Vec<Letter> {
    let (mut ea, mut eb) = (0i64, 0i64);
    for l in letters {
        let e = if l.inv { -1 } else { 1 };
        match l.gen {
            Gen::A(_) => ea += e,
            Gen::B(_) => eb += e,
            Gen::Z(_) => {}
        }
    }
    let power = |g: Gen, e: i64| {
        let l = Letter { gen: g, inv: e < 0 };
        std::iter::repeat_n(l, e.unsigned_abs() as usize)
    };
    power(Gen::A(1), ea).chain(power(Gen::B(1), eb)).collect()
}

/// Canonical representative of the class of `w` in π₁(Σ_{g,p}).
pub fn pi1_normalize(w: &Pi1Word, s: &SurfaceParams) -> Result<Pi1Word> {
    w.validate(s)?;
    Ok(normalize_unchecked(w, s))
}

pub(crate) fn normalize_unchecked(w: &Pi1Word, s: &SurfaceParams) -> Pi1Word {
    let letters = if !s.is_closed() {
        free_reduce(&w.letters)
    } else {
        match s.genus {
            0 => Vec::new(),
            1 => abelian_form(&w.letters),
            g => RelatorCycles::new(g).normal_form(&w.letters),
        }
    };
    Pi1Word { letters }
}

pub fn pi1_mul(u: &Pi1Word, v: &Pi1Word, s: &SurfaceParams) -> Result<Pi1Word> {
    pi1_normalize(&u.concat(v), s)
}

pub fn pi1_inv(u: &Pi1Word, s: &SurfaceParams) -> Result<Pi1Word> {
    pi1_normalize(&u.inverse(), s)
}

/// Decides equality in π₁. For closed genus ≥ 2 this runs Dehn's algorithm
/// on `u v^{-1}`, which does not depend on the tie-break of the normal form.
pub fn pi1_equal(u: &Pi1Word, v: &Pi1Word, s: &SurfaceParams) -> Result<bool> {
    u.validate(s)?;
    v.validate(s)?;
    if s.is_closed() && s.genus >= 2 {
        Ok(dehn_reduce(&u.concat(&v.inverse()), s.genus).is_empty())
    } else {
        Ok(normalize_unchecked(u, s) == normalize_unchecked(v, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Pi1Word {
        Pi1Word::parse(text).unwrap()
    }

    fn surf(g: usize, p: usize) -> SurfaceParams {
        SurfaceParams::new(g, p, 2).unwrap()
    }

    #[test]
    fn free_cancellation() {
        for (g, p) in [(1, 1), (1, 0), (2, 0), (2, 2)] {
            assert!(pi1_normalize(&w("a1 a1^-1"), &surf(g, p)).unwrap().is_empty());
        }
    }

    #[test]
    fn torus_commutator_vanishes() {
        let c = w("a1 b1 a1^-1 b1^-1");
        assert!(pi1_normalize(&c, &surf(1, 0)).unwrap().is_empty());
        // not on the once-punctured torus
        assert_eq!(pi1_normalize(&c, &surf(1, 1)).unwrap(), c);
    }

    #[test]
    fn genus_two_relator_vanishes() {
        let r = w("a1 b1^-1 a1^-1 b1 a2 b2^-1 a2^-1 b2");
        assert!(pi1_normalize(&r, &surf(2, 0)).unwrap().is_empty());
        assert!(pi1_normalize(&r.inverse(), &surf(2, 0)).unwrap().is_empty());
        // a cyclic conjugate
        let c = w("b2 a1 b1^-1 a1^-1 b1 a2 b2^-1 a2^-1");
        assert!(pi1_normalize(&c, &surf(2, 0)).unwrap().is_empty());
    }

    #[test]
    fn half_relator_words_agree() {
        let s = surf(2, 0);
        // a1 b1^-1 a1^-1 b1 = (a2 b2^-1 a2^-1 b2)^-1
        let u = w("a1 b1^-1 a1^-1 b1");
        let v = w("b2^-1 a2 b2 a2^-1");
        assert_eq!(pi1_normalize(&u, &s).unwrap(), pi1_normalize(&v, &s).unwrap());
        assert!(pi1_equal(&u, &v, &s).unwrap());
        assert!(!pi1_equal(&u, &w("a1"), &s).unwrap());
    }

    #[test]
    fn mul_and_inv() {
        let s = surf(1, 1);
        assert_eq!(pi1_mul(&w("a1"), &w("b1"), &s).unwrap(), w("a1 b1"));
        assert_eq!(pi1_inv(&w("a1 b1"), &s).unwrap(), w("b1^-1 a1^-1"));
        let s = surf(0, 2);
        assert!(pi1_mul(&w("z1"), &w("z1^-1"), &s).unwrap().is_empty());
    }

    #[test]
    fn invalid_generators() {
        assert!(matches!(
            pi1_normalize(&w("z1"), &surf(1, 1)),
            Err(Error::InvalidGenerator(_))
        ));
        assert!(pi1_normalize(&w("a2"), &surf(1, 3)).is_err());
        assert!(Pi1Word::parse("s1").is_err());
    }

    #[test]
    fn letter_order() {
        let s = SurfaceParams::new(2, 2, 2).unwrap();
        let names: Vec<String> = s.letters().iter().map(|l| l.to_string()).collect();
        assert_eq!(
            names,
            ["a1", "a1^-1", "b1", "b1^-1", "a2", "a2^-1", "b2", "b2^-1", "z1", "z1^-1"]
        );
    }

    #[test]
    fn display_round_trip() {
        let x = w("a1 b2^-1 z1");
        assert_eq!(Pi1Word::parse(&x.to_string()).unwrap(), x);
        assert_eq!(Pi1Word::empty().to_string(), "1");
    }
}
