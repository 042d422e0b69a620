//! Permutations of `{1..n}`, stored 0-based as image vectors.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The transposition exchanging strands `i` and `i + 1` (1-based).
    pub fn adjacent(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    /// Transposition of the 1-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i - 1, j - 1);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// True when the permutation is odd.
    pub fn is_odd(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Compact form: `id` for the identity, otherwise nontrivial cycles only.
    pub fn short(&self) -> String {
        if self.is_identity() {
            return "id".to_string();
        }
        self.cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", join(&c, " ")))
            .collect()
    }

    /// Parses cycle notation such as `(1 2)(3)`, or `id`.
    pub fn parse(text: &str, n: usize) -> Result<Perm> {
        let text = text.trim();
        if text.is_empty() || text == "id" {
            return Ok(Self::identity(n));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle notation `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let points = open[..close]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .ok()
                        .filter(|&x| 1 <= x && x <= n)
                        .ok_or_else(|| Error::Parse(format!("bad point `{t}` in `{text}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            for (k, &x) in points.iter().enumerate() {
                images[x - 1] = points[(k + 1) % points.len()] - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_images(images)
    }
}

fn join(xs: &[usize], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Full cycle notation including fixed points, e.g. `(1)(2)`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            write!(f, "({})", join(&c, " "))?;
        }
        Ok(())
    }
}
