//! Equality in the truncated quotient by span membership.
//!
//! Bead relations are binomial: they identify monomials in the same
//! group-like class (see [`super::beaded`]). After passing to classes, the
//! remaining relations (chord relations and the closed-surface sum) are
//! placed around every class reachable within the window, and the target is
//! solved for by exact elimination. A found combination is expanded back and
//! checked against the input before it is returned.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num::One;
use rayon::prelude::*;

use super::beaded::{poly_add, Beads, GroupMonomial, GroupPoly, Placement, Tuple};
use super::relations::{relation_element, relation_instances, RelKey, RelationFamily};
use super::{Coef, DiagMonomial, Trunc, WreathDiagram};
use crate::error::{Error, Result};
use crate::linalg::{Eliminator, SparseVec};
use crate::perm::Perm;
use crate::surface::{dehn_reduce, Pi1Word, SurfaceParams};

/// Classes explored per window before giving up.
const MAX_CLASSES: usize = 150_000;

#[derive(Clone, PartialEq, Debug)]
pub struct CertificateEntry {
    pub left: DiagMonomial,
    pub relation: usize,
    pub right: DiagMonomial,
    pub coef: Coef,
    pub perm: Perm,
}

/// `x = Σ coef · (left · r_relation · right; perm)`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Certificate {
    pub entries: Vec<CertificateEntry>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "({}, {}, {}, {}) ; perm={}",
                e.left, e.relation, e.right, e.coef, e.perm
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Membership {
    Member(Certificate),
    NotFoundAtWindow,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

struct Solver {
    b: Beads,
    rel_ids: HashMap<RelKey, usize>,
    rel_polys: HashMap<RelKey, GroupPoly>,
    chord_keys: Vec<RelKey>,
    closed_keys: Vec<RelKey>,
}

struct Generator {
    placement: Placement,
    classes: GroupPoly,
}

/// Union-find over strand variables with π₁-valued potentials:
/// `u_p = pot[p] · u_parent[p]`.
struct Potentials<'b> {
    b: &'b Beads,
    parent: Vec<usize>,
    pot: Vec<Pi1Word>,
}

impl<'b> Potentials<'b> {
    fn new(b: &'b Beads) -> Self {
        Potentials { b, parent: (0..b.n).collect(), pot: vec![Pi1Word::empty(); b.n] }
    }

    fn find(&self, mut p: usize) -> (usize, Pi1Word) {
        let mut acc = Pi1Word::empty();
        while self.parent[p] != p {
            acc = self.b.wmul(&acc, &self.pot[p]);
            p = self.parent[p];
        }
        (p, acc)
    }

    fn same(&self, x: &Pi1Word, y: &Pi1Word) -> bool {
        if self.b.s.is_closed() && self.b.s.genus >= 2 {
            dehn_reduce(&x.concat(&y.inverse()), self.b.s.genus).is_empty()
        } else {
            x == y
        }
    }

    /// Imposes `u_p = y · u_q`; false if inconsistent.
    fn union(&mut self, p: usize, q: usize, y: &Pi1Word) -> bool {
        let (rp, pp) = self.find(p);
        let (rq, pq) = self.find(q);
        let rhs = self.b.wmul(y, &pq);
        if rp == rq {
            return self.same(&pp, &rhs);
        }
        self.parent[rp] = rq;
        self.pot[rp] = self.b.wmul(&self.b.winv(&pp), &rhs);
        true
    }

    fn value(&self, p: usize) -> Pi1Word {
        self.find(p).1
    }
}

/// All group elements spelled by words of length ≤ `k`, deduplicated.
fn short_elements(b: &Beads, k: usize) -> Vec<Pi1Word> {
    let letters = b.s.letters();
    let mut seen: HashSet<Pi1Word> = HashSet::from([Pi1Word::empty()]);
    let mut out = vec![Pi1Word::empty()];
    let mut frontier = vec![Pi1Word::empty()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let x = b.wmul(w, &Pi1Word::letter(l));
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    out
}

impl Solver {
    fn new(s: &SurfaceParams, trunc: Trunc) -> Self {
        let b = Beads::new(s);
        let rels = relation_instances(s, trunc);
        let mut rel_ids = HashMap::new();
        let mut rel_polys = HashMap::new();
        let mut chord_keys = Vec::new();
        let mut closed_keys = Vec::new();
        for r in &rels {
            rel_ids.insert(r.key, r.id);
            let poly = b.poly_of(r.element.terms().map(|(m, _, c)| (m.clone(), c.clone())));
            match r.family {
                RelationFamily::FourT | RelationFamily::ChordFar => chord_keys.push(r.key),
                RelationFamily::ClosedSum if !b.class_poly(&poly).is_empty() => {
                    closed_keys.push(r.key)
                }
                _ => {}
            }
            rel_polys.insert(r.key, poly);
        }
        Solver { b, rel_ids, rel_polys, chord_keys, closed_keys }
    }

    fn generator(&self, left: GroupMonomial, key: RelKey, right: GroupMonomial) -> Generator {
        let raw = self.b.sandwich(&left, &self.rel_polys[&key], &right);
        let classes = self.b.class_poly(&raw);
        Generator { placement: Placement { left, key, right, coef: Coef::one() }, classes }
    }

    /// Carry entering each chord of a canonical class, plus the final one.
    fn carries(&self, k: &GroupMonomial) -> Vec<Tuple> {
        let mut carry = self.b.one();
        let mut out = Vec::with_capacity(k.degree() + 1);
        for (t, &(a, b)) in k.chords.iter().enumerate() {
            out.push(carry.clone());
            let mut s = self.b.tmul(&carry, &k.slots[t]);
            s[b - 1] = s[a - 1].clone();
            carry = s;
        }
        out.push(carry);
        out
    }

    /// Chord relations placed so that one of their terms lands on `k`.
    fn chord_generators(&self, k: &GroupMonomial, out: &mut Vec<Generator>) {
        let d = k.degree();
        let carries = self.carries(k);
        for key in &self.chord_keys {
            let rpoly = &self.rel_polys[key];
            for term in rpoly.keys() {
                let e = term.degree();
                for a in 0..=d.saturating_sub(e) {
                    if e > d || term.chords[..] != k.chords[a..a + e] {
                        continue;
                    }
                    let mut pots = Potentials::new(&self.b);
                    let mut orig: Vec<usize> = (0..self.b.n).collect();
                    let mut ok = true;
                    for (q, &(al, be)) in term.chords.iter().enumerate() {
                        let y = &k.slots[a + q][be - 1];
                        if !pots.union(orig[be - 1], orig[al - 1], y) {
                            ok = false;
                            break;
                        }
                        orig[be - 1] = orig[al - 1];
                    }
                    if !ok {
                        continue;
                    }
                    let u: Tuple = (0..self.b.n).map(|p| pots.value(p)).collect();
                    let z = self.b.tmul(&self.b.tinv(&carries[a]), &u);
                    let after: Tuple = (0..self.b.n).map(|p| u[orig[p]].clone()).collect();
                    let v = if a + e < d {
                        let (_, be) = k.chords[a + e];
                        let at = self.b.at(be, k.slots[a + e][be - 1].clone());
                        self.b.tmul(&self.b.tinv(&after), &at)
                    } else {
                        self.b.tmul(&self.b.tinv(&after), &k.slots[d])
                    };
                    let mut lslots = k.slots[..a].to_vec();
                    lslots.push(z);
                    let left = GroupMonomial { slots: lslots, chords: k.chords[..a].to_vec() };
                    let mut rslots = vec![v];
                    rslots.extend_from_slice(&k.slots[a + e + 1..]);
                    let right = GroupMonomial { slots: rslots, chords: k.chords[a + e..].to_vec() };
                    let g = self.generator(left, *key, right);
                    debug_assert!(g.classes.contains_key(k) || g.classes.is_empty());
                    out.push(g);
                }
            }
        }
    }

    /// Closed-surface sums placed in a slot of `k`, conjugated by short
    /// elements on their strand.
    fn closed_generators(&self, k: &GroupMonomial, budget: usize, out: &mut Vec<Generator>) {
        if self.closed_keys.is_empty() {
            return;
        }
        let reach = (budget / 2).min(2);
        let elems = short_elements(&self.b, reach);
        let d = k.degree();
        for key in &self.closed_keys {
            let RelKey::ClosedSum { i } = *key else { continue };
            let lead = self.rel_polys[key].keys().next().unwrap().slots[0].clone();
            let lead_inv = self.b.tinv(&lead);
            for t in 0..=d {
                let hs: Vec<Tuple> = if t < d {
                    let (a, b) = k.chords[t];
                    let mut hs = Vec::new();
                    for w in &elems {
                        let mut h = self.b.one();
                        h[a - 1] = w.clone();
                        h[b - 1] = w.clone();
                        hs.push(h);
                        for far in (1..=self.b.n).filter(|&f| f != a && f != b) {
                            if !w.is_empty() {
                                hs.push(self.b.at(far, w.clone()));
                            }
                        }
                    }
                    hs
                } else {
                    vec![self.b.one()]
                };
                for h in &hs {
                    for v in &elems {
                        if h.iter().map(Pi1Word::len).sum::<usize>() + v.len() > reach {
                            continue;
                        }
                        let w = self.b.at(i, v.clone());
                        let z = self.b.tmul(
                            &self.b.tmul(&self.b.tmul(&k.slots[t], h), &self.b.tinv(&w)),
                            &lead_inv,
                        );
                        let mut lslots = k.slots[..t].to_vec();
                        lslots.push(z);
                        let left = GroupMonomial { slots: lslots, chords: k.chords[..t].to_vec() };
                        let mut rslots = vec![w];
                        if t < d {
                            rslots.push(self.b.tmul(&self.b.tinv(h), &k.slots[t + 1]));
                            rslots.extend_from_slice(&k.slots[t + 2..]);
                        }
                        let right = GroupMonomial { slots: rslots, chords: k.chords[t..].to_vec() };
                        out.push(self.generator(left, *key, right));
                    }
                }
            }
        }
    }

    /// Searches the class span at one window; `Some(λ)` over generators.
    fn search(
        &self,
        target: &GroupPoly,
        window: usize,
        with_closed: bool,
    ) -> Option<(Vec<Generator>, SparseVec)> {
        let mut index: HashMap<GroupMonomial, usize> = HashMap::new();
        let mut frontier: Vec<GroupMonomial> = Vec::new();
        for m in target.keys() {
            if !index.contains_key(m) {
                index.insert(m.clone(), index.len());
                frontier.push(m.clone());
            }
        }
        let to_vec = |p: &GroupPoly, index: &HashMap<GroupMonomial, usize>| -> SparseVec {
            p.iter().map(|(m, c)| (index[m], c.clone())).collect()
        };
        let tvec = to_vec(target, &index);
        let mut elim = Eliminator::new(true);
        let mut gens: Vec<Generator> = Vec::new();
        let mut seen: HashSet<Vec<(GroupMonomial, Coef)>> = HashSet::new();
        while !frontier.is_empty() {
            let batches: Vec<Vec<Generator>> = frontier
                .par_iter()
                .map(|k| {
                    let mut out = Vec::new();
                    self.chord_generators(k, &mut out);
                    if with_closed {
                        self.closed_generators(k, window.saturating_sub(k.bead_length()), &mut out);
                    }
                    out.retain(|g| {
                        !g.classes.is_empty()
                            && g.classes.keys().all(|m| m.bead_length() <= window)
                    });
                    out
                })
                .collect();
            let mut next = Vec::new();
            for g in batches.into_iter().flatten() {
                let lead = g.classes.values().next().unwrap().clone();
                let key: Vec<(GroupMonomial, Coef)> =
                    g.classes.iter().map(|(m, c)| (m.clone(), c / &lead)).collect();
                if !seen.insert(key) {
                    continue;
                }
                for m in g.classes.keys() {
                    if !index.contains_key(m) {
                        index.insert(m.clone(), index.len());
                        next.push(m.clone());
                    }
                }
                elim.add_row(to_vec(&g.classes, &index), gens.len());
                gens.push(g);
            }
            if let Some(lam) = elim.solve(&tvec) {
                return Some((gens, lam));
            }
            if index.len() > MAX_CLASSES {
                return None;
            }
            frontier = next;
        }
        None
    }

    /// Placements summing to `target`, or `None`.
    fn solve(&self, target: &GroupPoly, window: usize) -> Option<Vec<Placement>> {
        let mut out = Vec::new();
        let mut classes = GroupPoly::new();
        for (m, c) in target {
            let k = self.b.class_cert(m, c, &mut out);
            poly_add(&mut classes, k, c.clone());
        }
        if classes.is_empty() {
            return Some(out);
        }
        let start = classes.keys().map(GroupMonomial::bead_length).max().unwrap_or(0);
        let stages: Vec<bool> =
            if self.closed_keys.is_empty() { vec![false] } else { vec![false, true] };
        for w in start.min(window)..=window {
            for &with_closed in &stages {
                let Some((gens, lam)) = self.search(&classes, w, with_closed) else {
                    continue;
                };
                for (k, l) in lam {
                    let g = &gens[k];
                    let raw = self.b.sandwich(&g.placement.left, &self.rel_polys[&g.placement.key], &g.placement.right);
                    out.push(Placement { coef: l.clone(), ..g.placement.clone() });
                    for (m, c) in raw {
                        self.b.class_cert(&m, &(-(&l * &c)), &mut out);
                    }
                }
                return Some(out);
            }
        }
        None
    }

    fn expand(&self, ps: &[Placement]) -> GroupPoly {
        let mut out = GroupPoly::new();
        for p in ps {
            for (m, c) in self.b.sandwich(&p.left, &self.rel_polys[&p.key], &p.right) {
                poly_add(&mut out, m, c * &p.coef);
            }
        }
        out
    }
}

/// Decides whether `x` lies in the relation ideal, searching the span up to
/// bead length `window`. A `Member` certificate has been re-expanded and
/// compared with `x` (modulo bead multiplication within a strand segment
/// and commuting beads on different strands).
pub fn ideal_member(
    x: &WreathDiagram,
    s: &SurfaceParams,
    trunc: Trunc,
    window: usize,
) -> Result<Membership> {
    if window < trunc.max_beads {
        return Err(Error::Parameter(format!(
            "window {window} is below the bead truncation {}",
            trunc.max_beads
        )));
    }
    if x.n != s.strands {
        return Err(Error::Dimension(format!("{} strands for {s}", x.n)));
    }
    x.check(s)?;
    if x.is_zero() {
        return Ok(Membership::Member(Certificate::default()));
    }
    let solver = Solver::new(s, trunc);
    let mut parts: BTreeMap<Perm, Vec<(DiagMonomial, Coef)>> = BTreeMap::new();
    for (m, p, c) in x.terms() {
        parts.entry(p.clone()).or_default().push((m.clone(), c.clone()));
    }
    let mut cert = Certificate::default();
    for (perm, terms) in parts {
        let target = solver.b.poly_of(terms);
        let Some(placements) = solver.solve(&target, window) else {
            return Ok(Membership::NotFoundAtWindow);
        };
        if placements.iter().any(|p| !solver.rel_ids.contains_key(&p.key)) {
            return Ok(Membership::NotFoundAtWindow);
        }
        assert_eq!(solver.expand(&placements), target, "certificate does not re-expand");
        for p in placements {
            cert.entries.push(CertificateEntry {
                left: solver.b.to_diag(&p.left),
                relation: solver.rel_ids[&p.key],
                right: solver.b.to_diag(&p.right),
                coef: p.coef,
                perm: perm.clone(),
            });
        }
    }
    Ok(Membership::Member(cert))
}

/// Re-expands a certificate against the relation list for `s` and `trunc`
/// and compares with `x`.
pub fn verify_certificate(
    cert: &Certificate,
    x: &WreathDiagram,
    s: &SurfaceParams,
    trunc: Trunc,
) -> bool {
    let b = Beads::new(s);
    let rels = relation_instances(s, trunc);
    let big = Trunc { max_chords: usize::MAX, max_beads: usize::MAX };
    let mut got: BTreeMap<Perm, GroupPoly> = BTreeMap::new();
    for e in &cert.entries {
        let Some(r) = rels.get(e.relation) else { return false };
        let el = relation_element(&r.key, s, big);
        let rp = b.poly_of(el.terms().map(|(m, _, c)| (m.clone(), c.clone())));
        let part = got.entry(e.perm.clone()).or_default();
        for (m, c) in b.sandwich(&b.from_diag(&e.left), &rp, &b.from_diag(&e.right)) {
            poly_add(part, m, c * &e.coef);
        }
    }
    got.retain(|_, p| !p.is_empty());
    let mut want: BTreeMap<Perm, GroupPoly> = BTreeMap::new();
    for (m, p, c) in x.terms() {
        poly_add(want.entry(p.clone()).or_default(), b.from_diag(m), c.clone());
    }
    want.retain(|_, p| !p.is_empty());
    got == want
}

/// `x = y` in the quotient, searched at `window`.
pub fn diagram_equal(
    x: &WreathDiagram,
    y: &WreathDiagram,
    s: &SurfaceParams,
    trunc: Trunc,
    window: usize,
) -> Result<Membership> {
    ideal_member(&x.sub(y)?, s, trunc, window)
}
