//! The graded symplectic chord-diagram algebra: beads `A_s^k, B_s^k` of
//! degree 1, chords `Z_ij` and boundary chords `Z_αk` of degree 2.
//!
//! Boundary labels run over `α = n+1 ..= n+p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigRational, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Eliminator, SparseVec};
use crate::surface::SurfaceParams;

pub const DEFAULT_WORD_CAP: usize = 200_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SympGenerator {
    /// `A_s^k`
    A(usize, usize),
    /// `B_s^k`
    B(usize, usize),
    /// `Z_αk` with `α > n`
    Zb(usize, usize),
    /// `Z_ij`, stored with `i < j`
    Z(usize, usize),
}

impl SympGenerator {
    pub fn z(i: usize, j: usize) -> Self {
        SympGenerator::Z(i.min(j), i.max(j))
    }

    pub fn parse(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad generator `{tok}`"));
        let (head, rest) = tok.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let (x, y) = body.split_once(',').ok_or_else(bad)?;
        let x: usize = x.trim().parse().map_err(|_| bad())?;
        let y: usize = y.trim().parse().map_err(|_| bad())?;
        match head {
            "A" => Ok(SympGenerator::A(x, y)),
            "B" => Ok(SympGenerator::B(x, y)),
            "Zb" => Ok(SympGenerator::Zb(x, y)),
            "Z" if x != y => Ok(SympGenerator::z(x, y)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SympGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SympGenerator::A(s, k) => write!(f, "A({s},{k})"),
            SympGenerator::B(s, k) => write!(f, "B({s},{k})"),
            SympGenerator::Zb(a, k) => write!(f, "Zb({a},{k})"),
            SympGenerator::Z(i, j) => write!(f, "Z({i},{j})"),
        }
    }
}

/// Degrees of the generators. At genus 0 the chords may be given degree 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grading {
    pub chord: usize,
}

impl Default for Grading {
    fn default() -> Self {
        Grading { chord: 2 }
    }
}

impl Grading {
    pub fn regraded() -> Self {
        Grading { chord: 1 }
    }

    pub fn degree(&self, g: SympGenerator) -> usize {
        match g {
            SympGenerator::A(..) | SympGenerator::B(..) => 1,
            SympGenerator::Zb(..) | SympGenerator::Z(..) => self.chord,
        }
    }

    pub fn word_degree(&self, w: &[SympGenerator]) -> usize {
        w.iter().map(|&g| self.degree(g)).sum()
    }
}

pub type Word = Vec<SympGenerator>;

#[derive(Clone, PartialEq, Debug, Default)]
pub struct SympElement {
    pub terms: BTreeMap<Word, BigRational>,
}

impl SympElement {
    pub fn add(&mut self, w: Word, c: BigRational) {
        let e = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    fn commutator(x: &[(SympGenerator, i64)], y: &[(SympGenerator, i64)]) -> Self {
        let mut out = SympElement::default();
        for &(a, ca) in x {
            for &(b, cb) in y {
                out.add(vec![a, b], BigRational::from_integer((ca * cb).into()));
                out.add(vec![b, a], BigRational::from_integer((-ca * cb).into()));
            }
        }
        out
    }

    fn plus(mut self, g: SympGenerator, c: i64) -> Self {
        self.add(vec![g], BigRational::from_integer(c.into()));
        self
    }

    /// The common degree of the terms, or `None` if not homogeneous.
    pub fn degree(&self, gr: Grading) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| gr.word_degree(w));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for SympElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let w: Vec<String> = w.iter().map(|g| g.to_string()).collect();
                format!("{c} * {}", w.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generators of the algebra for `s`.
pub fn symp_generators(s: &SurfaceParams) -> Vec<SympGenerator> {
    let (g, p, n) = (s.genus, s.boundary, s.strands);
    let mut out = Vec::new();
    for r in 1..=g {
        for k in 1..=n {
            out.push(SympGenerator::A(r, k));
            out.push(SympGenerator::B(r, k));
        }
    }
    for a in n + 1..=n + p {
        for k in 1..=n {
            out.push(SympGenerator::Zb(a, k));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(SympGenerator::Z(i, j));
        }
    }
    out
}

/// All defining relations of degree at most `max_degree`.
pub fn symp_relations(s: &SurfaceParams, max_degree: usize, gr: Grading) -> Vec<SympElement> {
    use SympGenerator::{Zb, A, B};
    let (g, p, n) = (s.genus, s.boundary, s.strands);
    let z = SympGenerator::z;
    let boundary: Vec<usize> = (n + 1..=n + p).collect();
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let c = SympElement::commutator;
    let mut out = Vec::new();

    // infinitesimal braid relations, with boundary chords
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[x + 1..] {
            if k != i && k != j && l != i && l != j {
                out.push(c(&[(z(i, j), 1)], &[(z(k, l), 1)]));
            }
        }
    }
    for &(i, j) in &pairs {
        for k in (1..=n).filter(|&k| k != i && k != j) {
            out.push(c(&[(z(i, j), 1)], &[(z(j, k), 1), (z(i, k), 1)]));
        }
    }
    for &a in &boundary {
        for j in 1..=n {
            for &(k, l) in &pairs {
                if j != k && j != l {
                    out.push(c(&[(Zb(a, j), 1)], &[(z(k, l), 1)]));
                }
            }
            for &b in &boundary {
                for k in 1..=n {
                    if a != b && j != k && (a, j) < (b, k) {
                        out.push(c(&[(Zb(a, j), 1)], &[(Zb(b, k), 1)]));
                    }
                }
            }
            for k in (1..=n).filter(|&k| k != j) {
                out.push(c(&[(Zb(a, j), 1)], &[(Zb(a, k), 1), (z(j, k), 1)]));
            }
        }
    }

    // fundamental group of the surface
    let beads: Vec<(usize, usize)> =
        (1..=g).flat_map(|r| (1..=n).map(move |k| (r, k))).collect();
    for (x, &(si, i)) in beads.iter().enumerate() {
        for &(r, k) in &beads[x + 1..] {
            if i != k {
                out.push(c(&[(A(si, i), 1)], &[(A(r, k), 1)]));
                out.push(c(&[(B(si, i), 1)], &[(B(r, k), 1)]));
            }
        }
    }
    for &(si, i) in &beads {
        for &(r, j) in &beads {
            if r != si && i != j {
                out.push(c(&[(A(si, i), 1)], &[(B(r, j), 1)]));
            }
        }
    }
    for k in 1..=n {
        let mut sum = SympElement::default();
        for r in 1..=g {
            for (w, x) in c(&[(A(r, k), 1)], &[(B(r, k), 1)]).terms {
                sum.add(w, x);
            }
        }
        for j in (1..=n).filter(|&j| j != k) {
            sum = sum.plus(z(j, k), 1);
        }
        for &a in &boundary {
            sum = sum.plus(Zb(a, k), 1);
        }
        out.push(sum);
    }

    // mixed relations
    for r in 1..=g {
        for &(j, k) in &pairs {
            for i in (1..=n).filter(|&i| i != j && i != k) {
                out.push(c(&[(z(j, k), 1)], &[(A(r, i), 1)]));
            }
            out.push(c(&[(A(r, j), 1), (A(r, k), 1)], &[(z(j, k), 1)]));
            out.push(c(&[(B(r, j), 1), (B(r, k), 1)], &[(z(j, k), 1)]));
        }
        for &a in &boundary {
            for k in 1..=n {
                for i in (1..=n).filter(|&i| i != k) {
                    out.push(c(&[(Zb(a, k), 1)], &[(A(r, i), 1)]));
                }
            }
        }
    }

    // twist
    for r in 1..=g {
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                out.push(c(&[(A(r, i), 1)], &[(B(r, j), 1)]).plus(z(i, j), -1));
            }
        }
    }

    out.retain(|r| !r.is_zero() && r.degree(gr).is_some_and(|d| d <= max_degree));
    out
}

/// Number of words of each degree `0..=d`.
fn word_counts(gens: &[SympGenerator], gr: Grading, d: usize) -> Vec<u128> {
    let mut counts = vec![0u128; d + 1];
    counts[0] = 1;
    for e in 1..=d {
        counts[e] = gens
            .iter()
            .map(|&g| gr.degree(g))
            .filter(|&k| k <= e)
            .map(|k| counts[e - k])
            .fold(0u128, |a, b| a.saturating_add(b));
    }
    counts
}

/// All words of each degree `0..=d`.
fn words_by_degree(gens: &[SympGenerator], gr: Grading, d: usize) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new(); d + 1];
    out[0].push(Vec::new());
    for e in 1..=d {
        let mut layer = Vec::new();
        for &g in gens {
            let k = gr.degree(g);
            if k <= e {
                for w in &out[e - k] {
                    let mut x = vec![g];
                    x.extend_from_slice(w);
                    layer.push(x);
                }
            }
        }
        layer.sort();
        out[e] = layer;
    }
    out
}

fn check_grading(s: &SurfaceParams, gr: Grading) -> Result<()> {
    if gr.chord != 2 && s.genus > 0 {
        return Err(Error::Parameter("chords can be regraded only at genus 0".into()));
    }
    if gr.chord == 0 {
        return Err(Error::Parameter("chord degree must be positive".into()));
    }
    Ok(())
}

/// Rows `u·r·v` of total degree `d`, as vectors over the degree-`d` words.
fn relation_rows(
    rels: &[SympElement],
    words: &[Vec<Word>],
    index: &HashMap<&Word, usize>,
    gr: Grading,
    d: usize,
) -> Vec<SparseVec> {
    rels.par_iter()
        .flat_map_iter(|r| {
            let e = r.degree(gr).unwrap();
            let mut rows = Vec::new();
            if e > d {
                return rows;
            }
            for a in 0..=d - e {
                for u in &words[a] {
                    for v in &words[d - e - a] {
                        let mut row = SparseVec::new();
                        for (w, c) in &r.terms {
                            let mut full = u.clone();
                            full.extend_from_slice(w);
                            full.extend_from_slice(v);
                            row.insert(index[&full], c.clone());
                        }
                        rows.push(row);
                    }
                }
            }
            rows
        })
        .collect()
}

/// Dimension of the degree-`d` piece over the rationals.
pub fn symp_graded_dim(
    s: &SurfaceParams,
    d: usize,
    gr: Grading,
    word_cap: usize,
) -> Result<usize> {
    check_grading(s, gr)?;
    let gens = symp_generators(s);
    let count = word_counts(&gens, gr, d)[d];
    if count > word_cap as u128 {
        return Err(Error::Resource(format!(
            "{count} words in degree {d} exceed the cap {word_cap}"
        )));
    }
    let words = words_by_degree(&gens, gr, d);
    let index: HashMap<&Word, usize> = words[d].iter().enumerate().map(|(k, w)| (w, k)).collect();
    let rels = symp_relations(s, d, gr);
    let rows = relation_rows(&rels, &words, &index, gr, d);
    let mut elim = Eliminator::new(false);
    for (k, row) in rows.into_iter().enumerate() {
        elim.add_row(row, k);
    }
    Ok(words[d].len() - elim.rank())
}

/// Dimensions for degrees `0..=max_degree`.
pub fn symp_dims(
    s: &SurfaceParams,
    max_degree: usize,
    gr: Grading,
    word_cap: usize,
) -> Result<Vec<usize>> {
    (0..=max_degree).map(|d| symp_graded_dim(s, d, gr, word_cap)).collect()
}

/// Whether every chord `Z_ij` lies in the span of products of two beads
/// modulo the degree-2 relations.
pub fn symp_twist_redundancy(s: &SurfaceParams) -> Result<bool> {
    if s.genus == 0 {
        return Err(Error::Hypothesis("chords are derived from beads only for genus ≥ 1".into()));
    }
    let gr = Grading::default();
    let gens = symp_generators(s);
    let words = words_by_degree(&gens, gr, 2);
    let index: HashMap<&Word, usize> = words[2].iter().enumerate().map(|(k, w)| (w, k)).collect();
    let rels = symp_relations(s, 2, gr);
    let mut elim = Eliminator::new(false);
    let mut tag = 0;
    for row in relation_rows(&rels, &words, &index, gr, 2) {
        elim.add_row(row, tag);
        tag += 1;
    }
    for w in words[2].iter().filter(|w| w.len() == 2) {
        elim.add_row(SparseVec::from([(index[w], BigRational::one())]), tag);
        tag += 1;
    }
    let n = s.strands;
    Ok((1..=n).all(|i| {
        (i + 1..=n).all(|j| {
            let w = vec![SympGenerator::Z(i, j)];
            elim.contains(&SparseVec::from([(index[&w], BigRational::one())]))
        })
    }))
}
