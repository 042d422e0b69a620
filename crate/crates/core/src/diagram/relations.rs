//! Generating relations of the beaded chord algebra, with bead letters of
//! length one.
//!
//! Beads are group elements, so pushing a bead across a chord moves it onto
//! both endpoints at once: `γ^i γ^j Z_ij = Z_ij γ^i γ^j`.

use std::fmt;

use super::{coef, DiagMonomial, DiagSymbol, Trunc, WreathDiagram};
use crate::perm::Perm;
use crate::surface::{Gen, Letter, SurfaceParams};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RelationFamily {
    BeadBead,
    BeadPush,
    BeadFar,
    ChordSym,
    ChordFar,
    FourT,
    ClosedSum,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 7] = [
        RelationFamily::BeadBead,
        RelationFamily::BeadPush,
        RelationFamily::BeadFar,
        RelationFamily::ChordSym,
        RelationFamily::ChordFar,
        RelationFamily::FourT,
        RelationFamily::ClosedSum,
    ];
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Parameters identifying one relation instance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RelKey {
    BeadBead { g: Letter, i: usize, d: Letter, j: usize },
    BeadPush { g: Letter, i: usize, j: usize },
    BeadFar { g: Letter, k: usize, i: usize, j: usize },
    ChordFar { i: usize, j: usize, k: usize, l: usize },
    FourT { i: usize, j: usize, k: usize },
    ClosedSum { i: usize },
}

impl RelKey {
    pub fn family(&self) -> RelationFamily {
        match self {
            RelKey::BeadBead { .. } => RelationFamily::BeadBead,
            RelKey::BeadPush { .. } => RelationFamily::BeadPush,
            RelKey::BeadFar { .. } => RelationFamily::BeadFar,
            RelKey::ChordFar { .. } => RelationFamily::ChordFar,
            RelKey::FourT { .. } => RelationFamily::FourT,
            RelKey::ClosedSum { .. } => RelationFamily::ClosedSum,
        }
    }
}

impl fmt::Display for RelKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelKey::BeadBead { g, i, d, j } => write!(f, "[{g}@{i},{d}@{j}]"),
            RelKey::BeadPush { g, i, j } => write!(f, "[{g}@{i} {g}@{j},Z({i},{j})]"),
            RelKey::BeadFar { g, k, i, j } => write!(f, "[{g}@{k},Z({i},{j})]"),
            RelKey::ChordFar { i, j, k, l } => write!(f, "[Z({i},{j}),Z({k},{l})]"),
            RelKey::FourT { i, j, k } => write!(f, "[Z({i},{j}),Z({j},{k})+Z({i},{k})]"),
            RelKey::ClosedSum { i } => write!(f, "sum_s [A_s@{i},B_s@{i}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub id: usize,
    pub family: RelationFamily,
    pub key: RelKey,
    pub element: WreathDiagram,
}

fn bead(i: usize, l: Letter) -> DiagSymbol {
    DiagSymbol::Bead(i, l)
}

fn commutator(x: &[DiagSymbol], y: &[DiagSymbol], n: usize, trunc: Trunc) -> WreathDiagram {
    let mut out = WreathDiagram::zero(n, trunc);
    let xy = DiagMonomial::new(x.iter().chain(y).copied().collect());
    let yx = DiagMonomial::new(y.iter().chain(x).copied().collect());
    out.add_unchecked(xy, Perm::identity(n), coef(1));
    out.add_unchecked(yx, Perm::identity(n), coef(-1));
    out
}

/// The element for `key`, in the free algebra on `n` strands.
pub fn relation_element(key: &RelKey, s: &SurfaceParams, trunc: Trunc) -> WreathDiagram {
    let n = s.strands;
    match *key {
        RelKey::BeadBead { g, i, d, j } => commutator(&[bead(i, g)], &[bead(j, d)], n, trunc),
        RelKey::BeadPush { g, i, j } => {
            commutator(&[bead(i, g), bead(j, g)], &[DiagSymbol::chord(i, j)], n, trunc)
        }
        RelKey::BeadFar { g, k, i, j } => {
            commutator(&[bead(k, g)], &[DiagSymbol::chord(i, j)], n, trunc)
        }
        RelKey::ChordFar { i, j, k, l } => {
            commutator(&[DiagSymbol::chord(i, j)], &[DiagSymbol::chord(k, l)], n, trunc)
        }
        RelKey::FourT { i, j, k } => {
            let zij = [DiagSymbol::chord(i, j)];
            commutator(&zij, &[DiagSymbol::chord(j, k)], n, trunc)
                .add(&commutator(&zij, &[DiagSymbol::chord(i, k)], n, trunc))
                .expect("same strand count")
        }
        RelKey::ClosedSum { i } => {
            let mut out = WreathDiagram::zero(n, trunc);
            for r in 1..=s.genus {
                let a = [bead(i, Letter::new(Gen::A(r)))];
                let b = [bead(i, Letter::new(Gen::B(r)))];
                out = out.add(&commutator(&a, &b, n, trunc)).expect("same strand count");
            }
            out
        }
    }
}

/// All relation keys for the surface, in a fixed order. `ChordSym` has no
/// instances because chords are stored with `i < j`.
pub fn relation_keys(s: &SurfaceParams) -> Vec<RelKey> {
    let n = s.strands;
    let letters = s.letters();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for &g in &letters {
                for &d in &letters {
                    out.push(RelKey::BeadBead { g, i, d, j });
                }
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for &g in &letters {
                out.push(RelKey::BeadPush { g, i, j });
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                for &g in &letters {
                    out.push(RelKey::BeadFar { g, k, i, j });
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            if k != i && k != j && l != i && l != j {
                out.push(RelKey::ChordFar { i, j, k, l });
            }
        }
    }
    for &(i, j) in &pairs {
        for k in (1..=n).filter(|&k| k != i && k != j) {
            out.push(RelKey::FourT { i, j, k });
        }
    }
    if s.is_closed() && s.genus >= 1 {
        out.extend((1..=n).map(|i| RelKey::ClosedSum { i }));
    }
    out
}

/// All relation instances whose monomials fit `trunc`, numbered from 0.
pub fn relation_instances(s: &SurfaceParams, trunc: Trunc) -> Vec<RelationInstance> {
    relation_keys(s)
        .into_iter()
        .map(|key| (key, relation_element(&key, s, trunc)))
        .filter(|(_, el)| el.terms().all(|(m, _, _)| trunc.admits(m)))
        .enumerate()
        .map(|(id, (key, element))| RelationInstance { id, family: key.family(), key, element })
        .collect()
}
