//! Group-like normal form for beaded monomials.
//!
//! Modulo the bead relations, a monomial is a sequence of bead tuples
//! (one π₁ element per strand) separated by chords. Pushing a tuple that
//! commutes with `Z_ab` (the same element on strands `a` and `b`, anything
//! elsewhere) across the chord gives the canonical representative: each
//! slot before a chord becomes `y` on strand `b` alone, with
//! `y = s_b s_a^{-1}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num::Zero;

use super::relations::RelKey;
use super::{Coef, DiagMonomial, DiagSymbol};
use crate::surface::{normalize_unchecked, Letter, Pi1Word, SurfaceParams};

pub type Tuple = Vec<Pi1Word>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GroupMonomial {
    /// `chords.len() + 1` bead tuples.
    pub slots: Vec<Tuple>,
    /// 1-based strand pairs with `a < b`.
    pub chords: Vec<(usize, usize)>,
}

impl GroupMonomial {
    pub fn degree(&self) -> usize {
        self.chords.len()
    }

    pub fn bead_length(&self) -> usize {
        self.slots.iter().flatten().map(Pi1Word::len).sum()
    }
}

pub type GroupPoly = BTreeMap<GroupMonomial, Coef>;

pub fn poly_add(p: &mut GroupPoly, m: GroupMonomial, c: Coef) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m.clone()).or_insert_with(Coef::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

/// One relation inserted between two monomials: `coef · left · r · right`.
#[derive(Clone, PartialEq, Debug)]
pub struct Placement {
    pub left: GroupMonomial,
    pub key: RelKey,
    pub right: GroupMonomial,
    pub coef: Coef,
}

/// Word arithmetic for one surface, with a memo for slow normal forms.
pub struct Beads {
    pub s: SurfaceParams,
    pub n: usize,
    memo: Option<Mutex<HashMap<Vec<Letter>, Pi1Word>>>,
}

impl Beads {
    pub fn new(s: &SurfaceParams) -> Self {
        let memo = (s.is_closed() && s.genus >= 2).then(|| Mutex::new(HashMap::new()));
        Beads { s: *s, n: s.strands, memo }
    }

    pub fn norm(&self, letters: Vec<Letter>) -> Pi1Word {
        let w = Pi1Word::from_letters(letters);
        match &self.memo {
            None => normalize_unchecked(&w, &self.s),
            Some(m) => {
                if let Some(hit) = m.lock().unwrap().get(&w.letters) {
                    return hit.clone();
                }
                let out = normalize_unchecked(&w, &self.s);
                m.lock().unwrap().insert(w.letters, out.clone());
                out
            }
        }
    }

    pub fn wmul(&self, u: &Pi1Word, v: &Pi1Word) -> Pi1Word {
        if u.is_empty() {
            return v.clone();
        }
        if v.is_empty() {
            return u.clone();
        }
        self.norm(u.letters.iter().chain(&v.letters).copied().collect())
    }

    pub fn winv(&self, u: &Pi1Word) -> Pi1Word {
        self.norm(u.inverse().letters)
    }

    pub fn one(&self) -> Tuple {
        vec![Pi1Word::empty(); self.n]
    }

    pub fn tmul(&self, x: &Tuple, y: &Tuple) -> Tuple {
        x.iter().zip(y).map(|(u, v)| self.wmul(u, v)).collect()
    }

    pub fn tinv(&self, x: &Tuple) -> Tuple {
        x.iter().map(|u| self.winv(u)).collect()
    }

    /// `w` on `strand` (1-based), trivial elsewhere.
    pub fn at(&self, strand: usize, w: Pi1Word) -> Tuple {
        let mut t = self.one();
        t[strand - 1] = w;
        t
    }

    pub fn unit(&self) -> GroupMonomial {
        GroupMonomial { slots: vec![self.one()], chords: Vec::new() }
    }

    pub fn from_diag(&self, m: &DiagMonomial) -> GroupMonomial {
        let mut raw: Vec<Vec<Vec<Letter>>> = vec![vec![Vec::new(); self.n]];
        let mut chords = Vec::new();
        for sym in &m.symbols {
            match *sym {
                DiagSymbol::Bead(i, l) => raw.last_mut().unwrap()[i - 1].push(l),
                DiagSymbol::Chord(i, j) => {
                    chords.push((i, j));
                    raw.push(vec![Vec::new(); self.n]);
                }
            }
        }
        let slots = raw
            .into_iter()
            .map(|t| t.into_iter().map(|w| self.norm(w)).collect())
            .collect();
        GroupMonomial { slots, chords }
    }

    pub fn to_diag(&self, g: &GroupMonomial) -> DiagMonomial {
        let mut symbols = Vec::new();
        for (k, slot) in g.slots.iter().enumerate() {
            for (i, w) in slot.iter().enumerate() {
                symbols.extend(w.letters.iter().map(|&l| DiagSymbol::Bead(i + 1, l)));
            }
            if let Some(&(a, b)) = g.chords.get(k) {
                symbols.push(DiagSymbol::Chord(a, b));
            }
        }
        DiagMonomial::new(symbols)
    }

    pub fn mul(&self, x: &GroupMonomial, y: &GroupMonomial) -> GroupMonomial {
        let mut slots = x.slots[..x.slots.len() - 1].to_vec();
        slots.push(self.tmul(x.slots.last().unwrap(), &y.slots[0]));
        slots.extend_from_slice(&y.slots[1..]);
        let mut chords = x.chords.clone();
        chords.extend_from_slice(&y.chords);
        GroupMonomial { slots, chords }
    }

    pub fn poly_of(&self, terms: impl IntoIterator<Item = (DiagMonomial, Coef)>) -> GroupPoly {
        let mut out = GroupPoly::new();
        for (m, c) in terms {
            poly_add(&mut out, self.from_diag(&m), c);
        }
        out
    }

    /// `left · p · right`.
    pub fn sandwich(&self, left: &GroupMonomial, p: &GroupPoly, right: &GroupMonomial) -> GroupPoly {
        let mut out = GroupPoly::new();
        for (m, c) in p {
            poly_add(&mut out, self.mul(&self.mul(left, m), right), c.clone());
        }
        out
    }

    /// Moves the tuple `g` from after chord `t` to before it, i.e. replaces
    /// slots `(P, Q)` around the chord by `(P·g, g⁻¹·Q)`. Requires `g` to
    /// commute with the chord. Records one placement per letter.
    fn push(
        &self,
        cur: &mut GroupMonomial,
        t: usize,
        strands: &[usize],
        w: &Pi1Word,
        coef: &Coef,
        cert: &mut Option<&mut Vec<Placement>>,
    ) {
        let (a, b) = cur.chords[t];
        for &l in &w.letters {
            let lw = Pi1Word::letter(l);
            let mut g = self.one();
            for &k in strands {
                g[k - 1] = lw.clone();
            }
            let after = self.tmul(&self.tinv(&g), &cur.slots[t + 1]);
            if let Some(out) = cert.as_mut() {
                let key = if strands.len() == 2 {
                    RelKey::BeadPush { g: l, i: a, j: b }
                } else {
                    RelKey::BeadFar { g: l, k: strands[0], i: a, j: b }
                };
                let left = GroupMonomial {
                    slots: cur.slots[..=t].to_vec(),
                    chords: cur.chords[..t].to_vec(),
                };
                let mut rslots = vec![after.clone()];
                rslots.extend_from_slice(&cur.slots[t + 2..]);
                let right = GroupMonomial { slots: rslots, chords: cur.chords[t + 1..].to_vec() };
                out.push(Placement { left, key, right, coef: -coef.clone() });
            }
            cur.slots[t] = self.tmul(&cur.slots[t], &g);
            cur.slots[t + 1] = after;
        }
    }

    fn canonicalize(
        &self,
        m: &GroupMonomial,
        coef: &Coef,
        mut cert: Option<&mut Vec<Placement>>,
    ) -> GroupMonomial {
        let mut cur = m.clone();
        for t in 0..cur.chords.len() {
            let (a, b) = cur.chords[t];
            let s = cur.slots[t].clone();
            let da = self.winv(&s[a - 1]);
            self.push(&mut cur, t, &[a, b], &da, coef, &mut cert);
            for k in (1..=self.n).filter(|&k| k != a && k != b) {
                let e = self.winv(&s[k - 1]);
                self.push(&mut cur, t, &[k], &e, coef, &mut cert);
            }
        }
        cur
    }

    /// Canonical representative of the bead-relation class of `m`.
    pub fn class(&self, m: &GroupMonomial) -> GroupMonomial {
        self.canonicalize(m, &Coef::zero(), None)
    }

    /// The class of `m`, appending placements whose sum is
    /// `coef · (m − class(m))`.
    pub fn class_cert(&self, m: &GroupMonomial, coef: &Coef, out: &mut Vec<Placement>) -> GroupMonomial {
        self.canonicalize(m, coef, Some(out))
    }

    pub fn class_poly(&self, p: &GroupPoly) -> GroupPoly {
        let mut out = GroupPoly::new();
        for (m, c) in p {
            poly_add(&mut out, self.class(m), c.clone());
        }
        out
    }
}
