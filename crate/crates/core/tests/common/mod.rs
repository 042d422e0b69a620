//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use surface_braids::braid::{BraidLetter, BraidWord};
use surface_braids::surface::{Gen, Letter};
use surface_braids::diagram::{Trunc, WreathDiagram};
use surface_braids::{Perm, SurfaceParams};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn surf(g: usize, p: usize, n: usize) -> SurfaceParams {
    SurfaceParams::new(g, p, n).unwrap()
}

/// Surfaces used for the obstruction pipeline.
pub const PIPELINE: [(usize, usize, usize); 7] =
    [(1, 1, 2), (1, 0, 2), (2, 1, 3), (1, 0, 3), (2, 0, 2), (0, 1, 2), (0, 2, 3)];

/// Cancels adjacent inverse pairs with an explicit stack of (generator,
/// exponent sign) pairs.
pub fn stack_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<(Gen, i8)> = Vec::new();
    for l in word {
        let e: i8 = if l.inv { -1 } else { 1 };
        if let Some(&(g, f)) = stack.last() {
            if g == l.gen && f == -e {
                stack.pop();
                continue;
            }
        }
        stack.push((l.gen, e));
    }
    stack.into_iter().map(|(gen, e)| Letter { gen, inv: e < 0 }).collect()
}

pub fn random_letters(r: &mut StdRng, s: &SurfaceParams, len: usize) -> Vec<Letter> {
    let letters = s.letters();
    if letters.is_empty() {
        return Vec::new();
    }
    (0..len).map(|_| letters[r.gen_range(0..letters.len())]).collect()
}

pub fn random_braid(r: &mut StdRng, s: &SurfaceParams, len: usize) -> BraidWord {
    let mut pool: Vec<BraidLetter> = Vec::new();
    for i in 1..s.strands {
        pool.push(BraidLetter::sigma(i));
        pool.push(BraidLetter::sigma(i).inverse());
    }
    pool.extend(s.letters().into_iter().map(BraidLetter::surface));
    BraidWord::new((0..len).map(|_| pool[r.gen_range(0..pool.len())]).collect())
}

/// Dense rank over the rationals by plain Gaussian elimination.
pub fn dense_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let d = &f * &m[rank][k];
                    m[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Generators of the symplectic algebra as plain strings with degrees.
fn symp_alphabet(g: usize, p: usize, n: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for s in 1..=g {
        for k in 1..=n {
            out.push((format!("A{s}_{k}"), 1));
            out.push((format!("B{s}_{k}"), 1));
        }
    }
    for a in n + 1..=n + p {
        for k in 1..=n {
            out.push((format!("W{a}_{k}"), 2));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((format!("Z{i}_{j}"), 2));
        }
    }
    out
}

type Poly = BTreeMap<Vec<String>, i64>;

fn zname(i: usize, j: usize) -> String {
    format!("Z{}_{}", i.min(j), i.max(j))
}

fn comm(x: &[(String, i64)], y: &[(String, i64)]) -> Poly {
    let mut p = Poly::new();
    for (a, ca) in x {
        for (b, cb) in y {
            *p.entry(vec![a.clone(), b.clone()]).or_default() += ca * cb;
            *p.entry(vec![b.clone(), a.clone()]).or_default() -= ca * cb;
        }
    }
    p.retain(|_, c| *c != 0);
    p
}

fn one(name: String) -> Vec<(String, i64)> {
    vec![(name, 1)]
}

/// Defining relations written out directly from the presentation, with
/// every index range enumerated in full (duplicates are harmless here).
fn symp_oracle_relations(g: usize, p: usize, n: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let bd: Vec<usize> = (n + 1..=n + p).collect();
    let w = |a: usize, k: usize| format!("W{a}_{k}");
    let a = |s: usize, k: usize| format!("A{s}_{k}");
    let b = |s: usize, k: usize| format!("B{s}_{k}");
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if i != j && k != l && i != k && i != l && j != k && j != l {
                        out.push(comm(&one(zname(i, j)), &one(zname(k, l))));
                    }
                }
                if i != j && j != k && i != k {
                    out.push(comm(&one(zname(i, j)), &[(zname(j, k), 1), (zname(i, k), 1)]));
                }
            }
        }
    }
    for &al in &bd {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if k != l && j != k && j != l {
                        out.push(comm(&one(w(al, j)), &one(zname(k, l))));
                    }
                }
                for &be in &bd {
                    if al != be && j != k {
                        out.push(comm(&one(w(al, j)), &one(w(be, k))));
                    }
                }
                if j != k {
                    out.push(comm(&one(w(al, j)), &[(w(al, k), 1), (zname(j, k), 1)]));
                }
            }
        }
    }
    for s in 1..=g {
        for r in 1..=g {
            for i in 1..=n {
                for k in 1..=n {
                    if i != k {
                        out.push(comm(&one(a(s, i)), &one(a(r, k))));
                        out.push(comm(&one(b(s, i)), &one(b(r, k))));
                    }
                    if r != s && i != k {
                        out.push(comm(&one(a(s, i)), &one(b(r, k))));
                    }
                }
            }
        }
    }
    for k in 1..=n {
        let mut sum = Poly::new();
        for s in 1..=g {
            for (m, c) in comm(&one(a(s, k)), &one(b(s, k))) {
                *sum.entry(m).or_default() += c;
            }
        }
        for j in (1..=n).filter(|&j| j != k) {
            *sum.entry(vec![zname(j, k)]).or_default() += 1;
        }
        for &al in &bd {
            *sum.entry(vec![w(al, k)]).or_default() += 1;
        }
        sum.retain(|_, c| *c != 0);
        out.push(sum);
    }
    for s in 1..=g {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if j != k && i != j && i != k {
                        out.push(comm(&one(zname(j, k)), &one(a(s, i))));
                    }
                    if j < k && i == 1 {
                        out.push(comm(&[(a(s, j), 1), (a(s, k), 1)], &one(zname(j, k))));
                        out.push(comm(&[(b(s, j), 1), (b(s, k), 1)], &one(zname(j, k))));
                    }
                }
                for &al in &bd {
                    if i != j {
                        out.push(comm(&one(w(al, j)), &one(a(s, i))));
                    }
                }
                if i != j {
                    let mut t = comm(&one(a(s, i)), &one(b(s, j)));
                    *t.entry(vec![zname(i, j)]).or_default() -= 1;
                    out.push(t);
                }
            }
        }
    }
    out.retain(|p| !p.is_empty());
    out
}

/// Graded dimension by dense enumeration of all words and all products
/// `u·r·v` of degree `d`.
pub fn symp_dim_oracle(g: usize, p: usize, n: usize, d: usize) -> usize {
    let alpha = symp_alphabet(g, p, n);
    let deg = |w: &[String]| -> usize {
        w.iter().map(|x| alpha.iter().find(|(a, _)| a == x).unwrap().1).sum()
    };
    let mut words: Vec<Vec<Vec<String>>> = vec![vec![vec![]]];
    for e in 1..=d {
        let mut layer = Vec::new();
        for (a, k) in &alpha {
            if *k <= e {
                for w in &words[e - k] {
                    let mut x = w.clone();
                    x.push(a.clone());
                    layer.push(x);
                }
            }
        }
        words.push(layer);
    }
    let col: BTreeMap<&Vec<String>, usize> =
        words[d].iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut mat = Vec::new();
    for r in symp_oracle_relations(g, p, n) {
        let e = deg(r.keys().next().unwrap());
        if e > d {
            continue;
        }
        for a in 0..=d - e {
            for u in &words[a] {
                for v in &words[d - e - a] {
                    let mut row = vec![BigRational::zero(); words[d].len()];
                    for (m, c) in &r {
                        let mut full = u.clone();
                        full.extend(m.iter().cloned());
                        full.extend(v.iter().cloned());
                        row[col[&full]] += BigRational::from_integer((*c).into());
                    }
                    mat.push(row);
                }
            }
        }
    }
    words[d].len() - dense_rank(mat)
}

/// Degree-`d` dimension of the algebra on `Z_ij` (degree 1) modulo the
/// four-term and far-commutativity relations only.
pub fn infinitesimal_braid_dim(n: usize, d: usize) -> usize {
    let gens: Vec<String> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| zname(i, j))).collect();
    let mut words: Vec<Vec<Vec<String>>> = vec![vec![vec![]]];
    for e in 1..=d {
        let layer = words[e - 1]
            .iter()
            .flat_map(|w| gens.iter().map(move |g| {
                let mut x = w.clone();
                x.push(g.clone());
                x
            }))
            .collect();
        words.push(layer);
    }
    let col: BTreeMap<&Vec<String>, usize> =
        words[d].iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i != j && j != k && i != k {
                    rels.push(comm(&one(zname(i, j)), &[(zname(j, k), 1), (zname(i, k), 1)]));
                }
                for l in 1..=n {
                    if i != j && k != l && i != k && i != l && j != k && j != l {
                        rels.push(comm(&one(zname(i, j)), &one(zname(k, l))));
                    }
                }
            }
        }
    }
    let mut mat = Vec::new();
    if d >= 2 {
        for r in rels {
            for a in 0..=d - 2 {
                for u in &words[a] {
                    for v in &words[d - 2 - a] {
                        let mut row = vec![BigRational::zero(); words[d].len()];
                        for (m, c) in &r {
                            let mut full = u.clone();
                            full.extend(m.iter().cloned());
                            full.extend(v.iter().cloned());
                            row[col[&full]] += BigRational::from_integer((*c).into());
                        }
                        mat.push(row);
                    }
                }
            }
        }
    }
    words[d].len() - dense_rank(mat)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn is_one(x: &BigRational) -> bool {
    x.is_one()
}

/// A random diagram with `chords` chords and at most two beads per term.
pub fn random_diagram(r: &mut StdRng, s: &SurfaceParams, trunc: Trunc, chords: usize) -> WreathDiagram {
    let n = s.strands;
    let letters = s.letters();
    let mut x = WreathDiagram::zero(n, trunc);
    for _ in 0..r.gen_range(1..4) {
        let mut text = Vec::new();
        let mut placed = 0;
        for _ in 0..chords + 2 {
            if placed < chords && r.gen_bool(0.5) {
                let i = r.gen_range(1..=n);
                let j = (i % n) + 1;
                text.push(format!("Z({i},{j})"));
                placed += 1;
            } else if !letters.is_empty() {
                let l = letters[r.gen_range(0..letters.len())];
                text.push(format!("{l}@{}", r.gen_range(1..=n)));
            }
        }
        while placed < chords {
            text.push("Z(1,2)".into());
            placed += 1;
        }
        let mut images: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            images.swap(k, r.gen_range(0..=k));
        }
        let perm = Perm::from_images(images).unwrap();
        let term = WreathDiagram::parse(&format!("{} ; perm={perm}", text.join(" ")), n, trunc).unwrap();
        x = x.add(&term.scale(&q(r.gen_range(-3..=3)))).unwrap();
    }
    x
}
