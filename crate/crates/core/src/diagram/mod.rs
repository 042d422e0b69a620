//! The algebra of horizontal chord diagrams with beads, `D(n,Σ) ⋊ S_n`,
//! truncated by chord degree and bead length.
//!
//! Elements are stored as formal sums over free monomials (sequences of
//! bead and chord symbols) paired with a permutation. The quotient by the
//! relation ideal is handled in [`membership`]; nonvanishing is certified
//! through the bead-erasing map [`disk_augmentation`].

pub mod beaded;
pub mod membership;
pub mod relations;

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::algebra::JExpression;
use crate::braid::{epsilon0, WreathElement};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::surface::{Letter, Pi1Word, SurfaceParams};

pub use membership::{
    diagram_equal, ideal_member, verify_certificate, Certificate, CertificateEntry, Membership,
};
pub use relations::{relation_element, relation_instances, RelKey, RelationFamily, RelationInstance};

pub type Coef = BigRational;

pub fn coef(n: i64) -> Coef {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum DiagSymbol {
    /// A bead on a strand (1-based).
    Bead(usize, Letter),
    /// A chord `Z(i,j)`, stored with `i < j`.
    Chord(usize, usize),
}

impl DiagSymbol {
    pub fn chord(i: usize, j: usize) -> Self {
        DiagSymbol::Chord(i.min(j), i.max(j))
    }

    fn relabel(&self, p: &Perm) -> Self {
        match *self {
            DiagSymbol::Bead(i, l) => DiagSymbol::Bead(p.apply(i), l),
            DiagSymbol::Chord(i, j) => DiagSymbol::chord(p.apply(i), p.apply(j)),
        }
    }
}

impl fmt::Display for DiagSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagSymbol::Bead(i, l) => write!(f, "{l}@{i}"),
            DiagSymbol::Chord(i, j) => write!(f, "Z({i},{j})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct DiagMonomial {
    pub symbols: Vec<DiagSymbol>,
}

impl DiagMonomial {
    pub fn one() -> Self {
        DiagMonomial::default()
    }

    pub fn new(symbols: Vec<DiagSymbol>) -> Self {
        DiagMonomial { symbols }
    }

    pub fn chord_degree(&self) -> usize {
        self.symbols
            .iter()
            .filter(|s| matches!(s, DiagSymbol::Chord(..)))
            .count()
    }

    pub fn bead_length(&self) -> usize {
        self.symbols.len() - self.chord_degree()
    }

    pub fn concat(&self, other: &DiagMonomial) -> Self {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        DiagMonomial { symbols }
    }

    pub fn relabel(&self, p: &Perm) -> Self {
        DiagMonomial { symbols: self.symbols.iter().map(|s| s.relabel(p)).collect() }
    }

    /// The monomial with the letters of `w` as beads on `strand`.
    pub fn beads(strand: usize, w: &Pi1Word) -> Self {
        DiagMonomial {
            symbols: w.letters.iter().map(|&l| DiagSymbol::Bead(strand, l)).collect(),
        }
    }

    pub fn without_beads(&self) -> Self {
        DiagMonomial {
            symbols: self
                .symbols
                .iter()
                .filter(|s| matches!(s, DiagSymbol::Chord(..)))
                .copied()
                .collect(),
        }
    }

    pub fn check(&self, s: &SurfaceParams, n: usize) -> Result<()> {
        for sym in &self.symbols {
            match *sym {
                DiagSymbol::Bead(i, l) => {
                    if !(1..=n).contains(&i) {
                        return Err(Error::Dimension(format!("bead on strand {i}, n = {n}")));
                    }
                    s.check_gen(l.gen)?;
                }
                DiagSymbol::Chord(i, j) => {
                    if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                        return Err(Error::Dimension(format!("chord Z({i},{j}) with n = {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses `a1@1 Z(1,2) a1^-1@1`; `1` or empty is the unit.
    pub fn parse(text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            if let Some(body) = tok.strip_prefix("Z(").and_then(|t| t.strip_suffix(')')) {
                let (i, j) = body
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad chord `{tok}`")))?;
                let i: usize = i.trim().parse().map_err(|_| Error::Parse(tok.into()))?;
                let j: usize = j.trim().parse().map_err(|_| Error::Parse(tok.into()))?;
                if i == j {
                    return Err(Error::Parse(format!("degenerate chord `{tok}`")));
                }
                symbols.push(DiagSymbol::chord(i, j));
            } else {
                let (letter, strand) = tok
                    .split_once('@')
                    .ok_or_else(|| Error::Parse(format!("bead `{tok}` needs `@strand`")))?;
                let strand = strand.parse().map_err(|_| Error::Parse(tok.into()))?;
                symbols.push(DiagSymbol::Bead(strand, Letter::parse(letter)?));
            }
        }
        Ok(DiagMonomial { symbols })
    }
}

impl fmt::Display for DiagMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Truncation: maximal chord degree and maximal bead length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Trunc {
    pub max_chords: usize,
    pub max_beads: usize,
}

impl Default for Trunc {
    fn default() -> Self {
        Trunc { max_chords: 2, max_beads: 4 }
    }
}

impl Trunc {
    pub fn admits(&self, m: &DiagMonomial) -> bool {
        m.chord_degree() <= self.max_chords && m.bead_length() <= self.max_beads
    }
}

pub const DEFAULT_WINDOW: usize = 6;

/// A formal sum of `(monomial; permutation)` pairs.
///
/// Products whose monomials leave the truncation are not added; instead
/// `overflow` is set on the result.
#[derive(Clone, PartialEq, Debug)]
pub struct WreathDiagram {
    pub n: usize,
    pub trunc: Trunc,
    terms: BTreeMap<(DiagMonomial, Perm), Coef>,
    pub overflow: bool,
}

impl WreathDiagram {
    pub fn zero(n: usize, trunc: Trunc) -> Self {
        WreathDiagram { n, trunc, terms: BTreeMap::new(), overflow: false }
    }

    pub fn monomial(m: DiagMonomial, perm: Perm, trunc: Trunc) -> Result<Self> {
        let mut x = Self::zero(perm.len(), trunc);
        x.add_term(m, perm, coef(1))?;
        Ok(x)
    }

    pub fn one(n: usize, trunc: Trunc) -> Self {
        let mut x = Self::zero(n, trunc);
        x.terms.insert((DiagMonomial::one(), Perm::identity(n)), coef(1));
        x
    }

    pub fn permutation(p: Perm, trunc: Trunc) -> Self {
        let mut x = Self::zero(p.len(), trunc);
        x.terms.insert((DiagMonomial::one(), p), coef(1));
        x
    }

    /// Adds `c · (m; perm)`; errors if the monomial is outside the truncation.
    pub fn add_term(&mut self, m: DiagMonomial, perm: Perm, c: Coef) -> Result<()> {
        if perm.len() != self.n {
            return Err(Error::Dimension(format!(
                "permutation on {} points, diagram on {} strands",
                perm.len(),
                self.n
            )));
        }
        if !self.trunc.admits(&m) {
            return Err(Error::Overflow(format!("{m} exceeds {:?}", self.trunc)));
        }
        self.add_unchecked(m, perm, c);
        Ok(())
    }

    fn add_unchecked(&mut self, m: DiagMonomial, perm: Perm, c: Coef) {
        let key = (m, perm);
        let entry = self.terms.entry(key.clone()).or_insert_with(Coef::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiagMonomial, &Perm, &Coef)> {
        self.terms.iter().map(|((m, p), c)| (m, p, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &DiagMonomial, p: &Perm) -> Coef {
        self.terms
            .get(&(m.clone(), p.clone()))
            .cloned()
            .unwrap_or_else(Coef::zero)
    }

    /// Largest chord degree among the terms.
    pub fn chord_degree(&self) -> usize {
        self.terms.keys().map(|(m, _)| m.chord_degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(m, _)| m.chord_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("{} vs {} strands", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.overflow |= other.overflow;
        for ((m, p), c) in &other.terms {
            out.add_unchecked(m.clone(), p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Coef) -> Self {
        let mut out = Self::zero(self.n, self.trunc);
        out.overflow = self.overflow;
        for ((m, p), c) in &self.terms {
            out.add_unchecked(m.clone(), p.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-coef(1)))
    }

    /// `(m;π)(m′;ρ) = (m · π(m′); π∘ρ)`, where `π(m′)` relabels strands.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.trunc);
        out.overflow = self.overflow || other.overflow;
        for ((m, p), a) in &self.terms {
            for ((m2, q), b) in &other.terms {
                let prod = m.concat(&m2.relabel(p));
                if self.trunc.admits(&prod) {
                    out.add_unchecked(prod, p.compose(q), a * b);
                } else {
                    out.overflow = true;
                }
            }
        }
        Ok(out)
    }

    pub fn check(&self, s: &SurfaceParams) -> Result<()> {
        self.terms.keys().try_for_each(|(m, _)| m.check(s, self.n))
    }

    /// Parses terms `[coef *] monomial [; perm=cycles]` separated by `|` or
    /// newlines. The display form `(monomial; perm) - 2*(...)` is also
    /// accepted.
    pub fn parse(text: &str, n: usize, trunc: Trunc) -> Result<Self> {
        let mut out = Self::zero(n, trunc);
        if text.trim() == "0" {
            return Ok(out);
        }
        let pieces = text.split(['|', '\n']).flat_map(split_signed);
        for (negate, raw) in pieces.filter(|(_, t)| !t.is_empty()) {
            let (raw, negate) = match raw.strip_prefix('-') {
                Some(r) if r.starts_with('(') => (r, !negate),
                _ => (raw, negate),
            };
            let (mut c, body) = match raw.split_once('*') {
                Some((c, body)) => (parse_coef(c.trim())?, body.trim()),
                None => (coef(1), raw),
            };
            if negate {
                c = -c;
            }
            let body = if body.starts_with('(') && body.ends_with(')') && body.contains(';') {
                &body[1..body.len() - 1]
            } else {
                body
            };
            let (mono, perm) = match body.split_once(';') {
                Some((m, p)) => {
                    let p = p.trim();
                    (m, p.strip_prefix("perm=").unwrap_or(p))
                }
                None => (body, "id"),
            };
            out.add_term(DiagMonomial::parse(mono)?, Perm::parse(perm, n)?, c)?;
        }
        Ok(out)
    }

    /// One `coef * monomial ; perm=cycles` line per term.
    pub fn to_lines(&self) -> String {
        self.terms
            .iter()
            .map(|((m, p), c)| format!("{c} * {m} ; perm={p}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Splits at ` + ` and ` - ` outside parentheses; the flag marks terms
/// preceded by a minus.
fn split_signed(line: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let (mut depth, mut start, mut neg) = (0i32, 0, false);
    for k in 0..bytes.len() {
        match bytes[k] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-'
                if depth == 0
                    && k > 0
                    && bytes[k - 1] == b' '
                    && bytes.get(k + 1) == Some(&b' ') =>
            {
                out.push((neg, line[start..k].trim()));
                neg = bytes[k] == b'-';
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push((neg, line[start..].trim()));
    out
}

fn parse_coef(t: &str) -> Result<Coef> {
    let bad = || Error::Parse(format!("bad coefficient `{t}`"));
    match t.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Ok(BigRational::new(a.into(), b.into()))
        }
        None => t.parse::<i64>().map(coef).map_err(|_| bad()),
    }
}

/// Sums print as `(m; perm) - 2*(m′; perm′)`; the zero diagram prints `0`.
impl fmt::Display for WreathDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((m, p), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "({m}; {})", p.short())?;
        }
        Ok(())
    }
}

pub fn diag_mul(x: &WreathDiagram, y: &WreathDiagram) -> Result<WreathDiagram> {
    x.mul(y)
}

/// Embeds a wreath element as the bead monomial (strands in order) with its
/// permutation.
pub fn embed_wreath(w: &WreathElement, trunc: Trunc) -> Result<WreathDiagram> {
    let mono = w
        .beads
        .iter()
        .enumerate()
        .fold(DiagMonomial::one(), |acc, (k, b)| acc.concat(&DiagMonomial::beads(k + 1, b)));
    WreathDiagram::monomial(mono, w.perm.clone(), trunc)
}

/// `γ^i · Z_ij · (γ⁻¹)^i` with identity permutation.
pub fn gmp_generator(
    i: usize,
    j: usize,
    gamma: &Pi1Word,
    n: usize,
    trunc: Trunc,
) -> Result<WreathDiagram> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Parameter(format!("bad strand pair ({i},{j}) for n = {n}")));
    }
    let mono = DiagMonomial::beads(i, gamma)
        .concat(&DiagMonomial::new(vec![DiagSymbol::chord(i, j)]))
        .concat(&DiagMonomial::beads(i, &gamma.inverse()));
    WreathDiagram::monomial(mono, Perm::identity(n), trunc)
}

/// `Σ c · ι(ε₀(u)) · (Z_{i,i+1}; s_i) · ι(ε₀(v))`: the class of a
/// J-expression in the degree-one piece of the associated graded algebra.
pub fn degree_one_symbol(
    e: &JExpression,
    s: &SurfaceParams,
    trunc: Trunc,
) -> Result<WreathDiagram> {
    e.validate(s)?;
    let n = s.strands;
    let mut out = WreathDiagram::zero(n, trunc);
    for t in &e.summands {
        let left = embed_wreath(&epsilon0(&t.u, s)?, trunc)?;
        let right = embed_wreath(&epsilon0(&t.v, s)?, trunc)?;
        let mid = WreathDiagram::monomial(
            DiagMonomial::new(vec![DiagSymbol::chord(t.crossing, t.crossing + 1)]),
            Perm::adjacent(n, t.crossing),
            trunc,
        )?;
        let term = left.mul(&mid)?.mul(&right)?;
        if term.overflow {
            return Err(Error::Overflow(format!(
                "symbol of summand `{}` exceeds {trunc:?}",
                JExpression { summands: vec![t.clone()] }
            )));
        }
        out = out.add(&term.scale(&coef(t.coef)))?;
    }
    Ok(out)
}

/// Erases all beads: the algebra map onto `D(n, disk) ⋊ S_n`.
pub fn disk_augmentation(x: &WreathDiagram) -> WreathDiagram {
    let mut out = WreathDiagram::zero(x.n, x.trunc);
    out.overflow = x.overflow;
    for ((m, p), c) in &x.terms {
        out.add_unchecked(m.without_beads(), p.clone(), c.clone());
    }
    out
}

/// A basis element of `D(n, disk) ⋊ S_n` in chord degree ≤ 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum DiskBasis {
    Unit(Perm),
    Chord(usize, usize, Perm),
}

impl fmt::Display for DiskBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskBasis::Unit(p) => write!(f, "(1; {})", p.short()),
            DiskBasis::Chord(i, j, p) => write!(f, "(Z({i},{j}); {})", p.short()),
        }
    }
}

/// Coordinates of the bead-free image in the explicit basis
/// `{(1;π)} ∪ {(Z_ij;π)}`. In chord degree ≤ 1 there are no relations
/// left among these, so any nonzero coordinate certifies `x ≠ 0`.
pub fn disk_coordinates(x: &WreathDiagram) -> Result<BTreeMap<DiskBasis, Coef>> {
    let aug = disk_augmentation(x);
    let mut out = BTreeMap::new();
    for ((m, p), c) in &aug.terms {
        let key = match m.symbols.as_slice() {
            [] => DiskBasis::Unit(p.clone()),
            [DiagSymbol::Chord(i, j)] => DiskBasis::Chord(*i, *j, p.clone()),
            _ => return Err(Error::UnsupportedDegree(m.chord_degree())),
        };
        out.insert(key, c.clone());
    }
    Ok(out)
}

/// A nonzero coordinate of the disk augmentation, if any.
pub fn disk_witness(x: &WreathDiagram) -> Result<Option<(DiskBasis, Coef)>> {
    Ok(disk_coordinates(x)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    fn t() -> Trunc {
        Trunc::default()
    }

    fn mono(text: &str) -> DiagMonomial {
        DiagMonomial::parse(text).unwrap()
    }

    fn wd(text: &str, n: usize) -> WreathDiagram {
        WreathDiagram::parse(text, n, t()).unwrap()
    }

    #[test]
    fn twisted_products() {
        let z = wd("Z(1,2)", 2);
        let s1 = WreathDiagram::permutation(Perm::adjacent(2, 1), t());
        assert_eq!(z.mul(&s1).unwrap(), wd("Z(1,2) ; perm=(1 2)", 2));
        assert_eq!(s1.mul(&wd("Z(2,1) ; perm=(1 2)", 2)).unwrap(), z);
        let beads = wd("a1@1", 2).mul(&wd("a1^-1@1", 2)).unwrap();
        assert_eq!(beads, wd("a1@1 a1^-1@1", 2));
        let moved = WreathDiagram::permutation(Perm::adjacent(3, 2), t())
            .mul(&wd("a1@2 Z(1,2)", 3))
            .unwrap();
        assert_eq!(moved, wd("a1@3 Z(1,3) ; perm=(2 3)", 3));
    }

    #[test]
    fn overflow_is_flagged() {
        let small = Trunc { max_chords: 1, max_beads: 4 };
        let z = WreathDiagram::parse("Z(1,2)", 2, small).unwrap();
        let zz = z.mul(&z).unwrap();
        assert!(zz.overflow);
        assert!(zz.is_zero());
        assert!(WreathDiagram::parse("Z(1,2) Z(1,2)", 2, small).is_err());
        assert!(z.mul(&WreathDiagram::one(3, small)).is_err());
    }

    #[test]
    fn gmp_generators() {
        let g = gmp_generator(1, 2, &Pi1Word::empty(), 2, t()).unwrap();
        assert_eq!(g, wd("Z(1,2)", 2));
        let a = Pi1Word::parse("a1").unwrap();
        let g = gmp_generator(1, 2, &a, 2, t()).unwrap();
        assert_eq!(g, wd("a1@1 Z(1,2) a1^-1@1", 2));
        let long = Pi1Word::parse("a1 b1 a1").unwrap();
        assert!(matches!(gmp_generator(1, 2, &long, 2, t()), Err(Error::Overflow(_))));
    }

    #[test]
    fn symbols_of_generators() {
        let s = SurfaceParams::new(1, 1, 3).unwrap();
        let e = JExpression::single(1, BraidWord::empty(), 2, BraidWord::empty());
        assert_eq!(
            degree_one_symbol(&e, &s, t()).unwrap(),
            wd("Z(2,3) ; perm=(2 3)", 3)
        );
        let s = SurfaceParams::new(1, 1, 2).unwrap();
        let e = JExpression::parse("1 | | 1 | s1").unwrap();
        let sym = degree_one_symbol(&e, &s, t()).unwrap();
        assert_eq!(sym, wd("Z(1,2)", 2));
        assert_eq!(sym.to_string(), "(Z(1,2); id)");
        let e = JExpression::parse("1 | a1 | 1 |").unwrap();
        assert_eq!(
            degree_one_symbol(&e, &s, t()).unwrap(),
            wd("a1@1 Z(1,2) ; perm=(1 2)", 2)
        );
    }

    #[test]
    fn disk_augmentation_basics() {
        let a = Pi1Word::parse("a1").unwrap();
        let g = gmp_generator(1, 2, &a, 2, t()).unwrap();
        assert_eq!(disk_augmentation(&g), wd("Z(1,2)", 2));
        let w = disk_witness(&wd("Z(1,2)", 2)).unwrap().unwrap();
        assert_eq!(w, (DiskBasis::Chord(1, 2, Perm::identity(2)), coef(1)));
        let zero = wd("a1@1 Z(1,2) | -1 * a1^-1@2 Z(1,2)", 2);
        assert_eq!(disk_witness(&zero).unwrap(), None);
        assert!(disk_coordinates(&wd("Z(1,2) Z(1,2)", 2)).is_err());
    }

    #[test]
    fn monomial_text_round_trip() {
        let m = mono("a1@1 Z(1,2) a1^-1@1");
        assert_eq!(mono(&m.to_string()), m);
        assert_eq!(mono("Z(2,1)"), mono("Z(1,2)"));
        assert!(DiagMonomial::parse("a1").is_err());
        let x = wd("2 * a1@1 Z(1,2) ; perm=(1 2) | -1/2 * Z(1,2)", 2);
        assert_eq!(WreathDiagram::parse(&x.to_lines(), 2, t()).unwrap(), x);
    }
}
