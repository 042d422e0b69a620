//! The commutator quotient H₁ in chord degrees 0 and 1.
//!
//! Modulo commutators, conjugation by transpositions identifies strands, so
//! every bead `γ^i` becomes a strand-free variable, every chord becomes
//! `Z12`, and a permutation survives only through its sign `τ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::diagram::beaded::{poly_add, Beads, GroupMonomial, GroupPoly, Tuple};
use crate::diagram::{relation_element, Coef, DiagSymbol, RelKey, Trunc, WreathDiagram};
use crate::error::{Error, Result};
use crate::linalg::elementary_divisors;
use crate::surface::{Gen, Pi1Word, SurfaceParams};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct H1Monomial {
    pub z12: usize,
    /// Nonzero exponents, keyed by `(kind, index)` with kind 0 = a, 1 = b, 2 = z.
    pub beads: BTreeMap<(u8, usize), i64>,
    pub tau: bool,
}

fn gen_key(g: Gen) -> (u8, usize) {
    match g {
        Gen::A(r) => (0, r),
        Gen::B(r) => (1, r),
        Gen::Z(k) => (2, k),
    }
}

impl fmt::Display for H1Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.z12 {
            0 => {}
            1 => parts.push("Z12".to_string()),
            k => parts.push(format!("Z12^{k}")),
        }
        for (&(kind, idx), &e) in &self.beads {
            let name = ["abar", "bbar", "zbar"][kind as usize];
            if e == 1 {
                parts.push(format!("{name}{idx}"));
            } else {
                parts.push(format!("{name}{idx}^{e}"));
            }
        }
        if self.tau {
            parts.push("tau".into());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct H1Element {
    pub terms: BTreeMap<H1Monomial, Coef>,
}

impl H1Element {
    pub fn zero() -> Self {
        H1Element::default()
    }

    pub fn z12() -> Self {
        let mut out = H1Element::zero();
        out.add(H1Monomial { z12: 1, ..Default::default() }, Coef::one());
        out
    }

    pub fn one() -> Self {
        let mut out = H1Element::zero();
        out.add(H1Monomial::default(), Coef::one());
        out
    }

    pub fn add(&mut self, m: H1Monomial, c: Coef) {
        let e = self.terms.entry(m.clone()).or_insert_with(Coef::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for H1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c} * {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The image of `x` in H₁. Chord degree two and up is not modelled.
pub fn h1_class(x: &WreathDiagram, s: &SurfaceParams) -> Result<H1Element> {
    if let Some(d) = x.terms().map(|(m, _, _)| m.chord_degree()).find(|&d| d >= 2) {
        return Err(Error::UnsupportedDegree(d));
    }
    commutative_image(x, s)
}

/// The image in the free commutative model, in any chord degree
/// (`Z12` then carries the chord count as exponent).
pub fn commutative_image(x: &WreathDiagram, s: &SurfaceParams) -> Result<H1Element> {
    x.check(s)?;
    let mut out = H1Element::zero();
    for (m, p, c) in x.terms() {
        let mut mono = H1Monomial { tau: p.is_odd(), ..Default::default() };
        for sym in &m.symbols {
            match *sym {
                DiagSymbol::Chord(..) => mono.z12 += 1,
                DiagSymbol::Bead(_, l) => {
                    let e = mono.beads.entry(gen_key(l.gen)).or_insert(0);
                    *e += if l.inv { -1 } else { 1 };
                }
            }
        }
        mono.beads.retain(|_, e| *e != 0);
        out.add(mono, c.clone());
    }
    Ok(out)
}

/// A monomial with nonzero coefficient, if `h ≠ 0`.
pub fn h1_nonzero(h: &H1Element) -> Option<(H1Monomial, Coef)> {
    h.terms.iter().next().map(|(m, c)| (m.clone(), c.clone()))
}

/// Outcome of the integer check on the degree-one relation span.
#[derive(Clone, PartialEq, Debug)]
pub struct TorsionReport {
    /// Bead classes of chord degree one met by the relations.
    pub classes: usize,
    /// Relations left after the bead relations are quotiented out.
    pub relations: usize,
    pub rank: usize,
    /// Elementary divisors greater than one.
    pub torsion: Vec<BigInt>,
}

impl TorsionReport {
    pub fn torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for TorsionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "classes={} relations={} rank={} torsion={}",
            self.classes,
            self.relations,
            self.rank,
            if self.torsion.is_empty() {
                "none".to_string()
            } else {
                self.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            }
        )
    }
}

/// Elements grouped by normal-form length, up to `max`.
fn elements_by_length(b: &Beads, max: usize) -> Vec<Vec<Pi1Word>> {
    let letters = b.s.letters();
    let mut seen = std::collections::HashSet::from([Pi1Word::empty()]);
    let mut layers = vec![vec![Pi1Word::empty()]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in layers.last().unwrap() {
            for &l in &letters {
                let x = b.wmul(w, &Pi1Word::letter(l));
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        layers.push(next);
    }
    let mut by_len = vec![Vec::new(); max + 1];
    for w in layers.into_iter().flatten() {
        if w.len() <= max {
            by_len[w.len()].push(w);
        }
    }
    by_len
}

/// All tuples of `slots` elements with total length ≤ `budget`.
fn assignments(by_len: &[Vec<Pi1Word>], slots: usize, budget: usize) -> Vec<Vec<Pi1Word>> {
    if slots == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for len in 0..=budget.min(by_len.len() - 1) {
        for rest in assignments(by_len, slots - 1, budget - len) {
            for w in &by_len[len] {
                let mut v = vec![w.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

/// Integer elementary divisors of the degree-one relation span, with bead
/// lengths at most `trunc.max_beads`.
///
/// Bead relations identify monomials in pairs, so their quotient is free on
/// bead classes; only the closed-surface sums can contribute torsion. These
/// are placed on either side of each chord with all free bead slots
/// enumerated up to the truncation.
pub fn degree_one_torsion(s: &SurfaceParams, trunc: Trunc) -> TorsionReport {
    let b = Beads::new(s);
    let n = s.strands;
    let big = Trunc { max_chords: 8, max_beads: 64 };
    let mut rows: Vec<GroupPoly> = Vec::new();
    if s.is_closed() && s.genus >= 1 && trunc.max_chords >= 1 {
        for i in 1..=n {
            let el = relation_element(&RelKey::ClosedSum { i }, s, big);
            let terms: Vec<(Tuple, Coef)> = el
                .terms()
                .map(|(m, _, c)| (b.from_diag(m).slots[0].clone(), c.clone()))
                .collect();
            let rel_len = terms.iter().map(|(t, _)| t[i - 1].len()).max().unwrap_or(0);
            if trunc.max_beads < rel_len {
                continue;
            }
            let budget = trunc.max_beads - rel_len;
            let by_len = elements_by_length(&b, budget);
            for a in 1..=n {
                for bb in a + 1..=n {
                    // before the chord: (z·E·w at i, P elsewhere) Z (Q)
                    for v in assignments(&by_len, 2 + (n - 1) + n, budget) {
                        let (z, w) = (&v[0], &v[1]);
                        let others = &v[2..n + 1];
                        let q: Tuple = v[n + 1..].to_vec();
                        let mut row = GroupPoly::new();
                        for (e, c) in &terms {
                            let mut slot = Vec::with_capacity(n);
                            let mut it = others.iter();
                            for k in 1..=n {
                                if k == i {
                                    slot.push(b.wmul(&b.wmul(z, &e[i - 1]), w));
                                } else {
                                    slot.push(it.next().unwrap().clone());
                                }
                            }
                            let m = GroupMonomial { slots: vec![slot, q.clone()], chords: vec![(a, bb)] };
                            poly_add(&mut row, b.class(&m), c.clone());
                        }
                        rows.push(row);
                    }
                    // after the chord: (y at b) Z (z·E·w at i, f elsewhere)
                    for v in assignments(&by_len, 3 + (n - 1), budget) {
                        let (y, z, w) = (&v[0], &v[1], &v[2]);
                        let others = &v[3..];
                        let mut row = GroupPoly::new();
                        for (e, c) in &terms {
                            let mut slot = Vec::with_capacity(n);
                            let mut it = others.iter();
                            for k in 1..=n {
                                if k == i {
                                    slot.push(b.wmul(&b.wmul(z, &e[i - 1]), w));
                                } else {
                                    slot.push(it.next().unwrap().clone());
                                }
                            }
                            let m = GroupMonomial { slots: vec![b.at(bb, y.clone()), slot], chords: vec![(a, bb)] };
                            poly_add(&mut row, b.class(&m), c.clone());
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows.retain(|r| !r.is_empty());
    let mut index: HashMap<GroupMonomial, usize> = HashMap::new();
    let int_rows: Vec<BTreeMap<usize, BigInt>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|(m, c)| {
                    let next = index.len();
                    let k = *index.entry(m.clone()).or_insert(next);
                    (k, c.to_integer())
                })
                .collect()
        })
        .collect();
    let relations = int_rows.len();
    let divisors = elementary_divisors(int_rows);
    TorsionReport {
        classes: index.len(),
        relations,
        rank: divisors.len(),
        torsion: divisors.into_iter().filter(|d| d.abs() > BigInt::one()).collect(),
    }
}
