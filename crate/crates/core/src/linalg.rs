//! Exact sparse linear algebra: rational row echelon form with tracked row
//! combinations, and integer elementary divisors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Q = BigRational;
pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(v: &mut BTreeMap<usize, Q>, f: &Q, row: &BTreeMap<usize, Q>) {
    for (k, x) in row {
        let e = v.entry(*k).or_insert_with(Q::zero);
        *e -= f * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

struct PivotRow {
    row: SparseVec,
    combo: SparseVec,
}

/// Incremental row echelon form over the rationals.
///
/// Each stored row has a leading coefficient 1 at a column no other stored
/// row leads with. With tracking on, every stored row remembers how it is
/// built from the rows that were added (by tag).
#[derive(Default)]
pub struct Eliminator {
    pivots: HashMap<usize, PivotRow>,
    track: bool,
}

impl Eliminator {
    pub fn new(track: bool) -> Self {
        Eliminator { pivots: HashMap::new(), track }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0;
        while let Some((&k, x)) = v.range(cursor..).next() {
            cursor = k + 1;
            if let Some(p) = self.pivots.get(&k) {
                let f = x.clone();
                axpy(&mut v, &f, &p.row);
                if self.track {
                    axpy(&mut combo, &f, &p.combo);
                }
            }
        }
        (v, combo)
    }

    /// Adds a row; returns whether it was independent of the earlier rows.
    pub fn add_row(&mut self, v: SparseVec, tag: usize) -> bool {
        let combo = if self.track {
            SparseVec::from([(tag, Q::one())])
        } else {
            SparseVec::new()
        };
        let (mut v, mut combo) = self.reduce(v, combo);
        let Some((&lead, x)) = v.iter().next() else {
            return false;
        };
        let inv = x.recip();
        v.values_mut().for_each(|e| *e *= &inv);
        combo.values_mut().for_each(|e| *e *= &inv);
        self.pivots.insert(lead, PivotRow { row: v, combo });
        true
    }

    pub fn contains(&self, target: &SparseVec) -> bool {
        self.reduce(target.clone(), SparseVec::new()).0.is_empty()
    }

    /// Coefficients `λ_tag` with `target = Σ λ_tag · row_tag`, if the target
    /// lies in the span. Requires tracking.
    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve needs tracked combinations");
        let (rest, combo) = self.reduce(target.clone(), SparseVec::new());
        if !rest.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|(k, x)| (k, -x)).collect())
    }
}

/// Rank of a list of sparse rational rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Eliminator::new(false);
    for (k, r) in rows.into_iter().enumerate() {
        e.add_row(r, k);
    }
    e.rank()
}

/// Nonzero elementary divisors of an integer matrix given by sparse rows.
///
/// Unit entries are eliminated sparsely first; what remains goes through a
/// dense Smith reduction.
pub fn elementary_divisors(rows: Vec<BTreeMap<usize, BigInt>>) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut cols: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols.entry(c).or_default().insert(r);
        }
    }
    let mut alive: BTreeSet<usize> = (0..rows.len()).collect();
    let mut out = Vec::new();
    loop {
        let unit = alive.iter().copied().find_map(|r| {
            rows[r].iter().find(|(_, x)| x.abs().is_one()).map(|(&c, x)| (r, c, x.clone()))
        });
        let Some((r, c, u)) = unit else { break };
        let pivot = std::mem::take(&mut rows[r]);
        for k in pivot.keys() {
            cols.get_mut(k).unwrap().remove(&r);
        }
        alive.remove(&r);
        out.push(BigInt::one());
        let others: Vec<usize> = cols[&c].iter().copied().collect();
        for r2 in others {
            let f = &rows[r2][&c] * &u;
            for (k, x) in &pivot {
                let e = rows[r2].entry(*k).or_insert_with(BigInt::zero);
                *e -= &f * x;
                if e.is_zero() {
                    rows[r2].remove(k);
                    cols.get_mut(k).unwrap().remove(&r2);
                } else {
                    cols.entry(*k).or_default().insert(r2);
                }
            }
            if rows[r2].is_empty() {
                alive.remove(&r2);
            }
        }
    }
    let rest: Vec<&BTreeMap<usize, BigInt>> = alive.iter().map(|&r| &rows[r]).collect();
    let colset: BTreeSet<usize> = rest.iter().flat_map(|r| r.keys().copied()).collect();
    let index: HashMap<usize, usize> = colset.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut dense: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); colset.len()];
            for (c, x) in *r {
                v[index[c]] = x.clone();
            }
            v
        })
        .collect();
    out.extend(smith_diagonal(&mut dense));
    out
}

/// Nonzero invariant factors of a dense integer matrix (destroys it).
pub fn smith_diagonal(m: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = m[t][t].clone();
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                }
                if !m[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..rows {
                        let d = &q * &m[i][t];
                        m[i][j] -= d;
                    }
                }
                if !m[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].mod_floor(&p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let x = m[i][j].clone();
                            m[t][j] += x;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the corner
            let mut bi = t;
            let mut bj = t;
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
