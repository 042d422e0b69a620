//! Formal linear combinations of braid words, singular braids and their
//! desingularization, and explicit elements of the ideal `J` generated by
//! the `σ_i − σ_i⁻¹`.
//!
//! Equality of [`AlgebraElement`]s is syntactic on freely reduced words.
//! Group-level equality is never decided here; callers compare images
//! under `ε₀` or the degree-one symbol instead.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num::{One, Zero};

use crate::braid::{BraidLetter, BraidWord};
use crate::error::{Error, Result};
use crate::surface::SurfaceParams;

/// Coefficient ring for formal sums (`i64`, `BigInt`, `BigRational`, …).
pub trait Scalar:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Add<Output = Self> + Mul<Output = Self>
    + fmt::Display + fmt::Debug
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Add<Output = T> + Mul<Output = T>
        + fmt::Display + fmt::Debug
{
}

#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraElement<C = i64> {
    terms: BTreeMap<BraidWord, C>,
}

impl<C: Scalar> Default for AlgebraElement<C> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> AlgebraElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: BraidWord) -> Self {
        let mut x = Self::zero();
        x.add_term(w, C::one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BraidWord, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &BraidWord) -> C {
        self.terms.get(&w.free_reduced()).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c · w`, freely reducing `w`.
    pub fn add_term(&mut self, w: BraidWord, c: C) {
        let w = w.free_reduced();
        let entry = self.terms.entry(w.clone()).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    /// Bilinear extension of concatenation.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn validate(&self, s: &SurfaceParams) -> Result<()> {
        self.terms.keys().try_for_each(|w| w.validate(s))
    }
}

pub fn algebra_mul<C: Scalar>(x: &AlgebraElement<C>, y: &AlgebraElement<C>) -> AlgebraElement<C> {
    x.mul(y)
}

/// One `coef * word` per line; `0` for the zero element.
impl<C: Scalar> fmt::Display for AlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{c} * {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SingularLetter {
    Gen(BraidLetter),
    /// A transverse double point between strands `i` and `i + 1`.
    Crossing(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SingularBraidWord {
    pub letters: Vec<SingularLetter>,
}

impl SingularBraidWord {
    pub fn new(letters: Vec<SingularLetter>) -> Self {
        SingularBraidWord { letters }
    }

    pub fn degree(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| matches!(l, SingularLetter::Crossing(_)))
            .count()
    }

    /// Braid tokens plus `x<i>` for a double point.
    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .filter(|t| *t != "1")
            .map(|tok| match tok.strip_prefix('x') {
                Some(i) => i
                    .parse()
                    .map(SingularLetter::Crossing)
                    .map_err(|_| Error::Parse(format!("bad token `{tok}`"))),
                None => BraidLetter::parse(tok).map(SingularLetter::Gen),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SingularBraidWord { letters })
    }

    pub fn validate(&self, s: &SurfaceParams) -> Result<()> {
        self.letters.iter().try_for_each(|l| match l {
            SingularLetter::Gen(g) => g.check(s),
            SingularLetter::Crossing(i) => BraidLetter::sigma(*i).check(s),
        })
    }
}

impl fmt::Display for SingularBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                SingularLetter::Gen(g) => g.to_string(),
                SingularLetter::Crossing(i) => format!("x{i}"),
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Signed sum over the `2^d` resolutions of the double points: each
/// crossing becomes `σ_i` (sign +) or `σ_i⁻¹` (sign −).
pub fn desingularize(w: &SingularBraidWord) -> AlgebraElement<i64> {
    let crossings: Vec<usize> = w
        .letters
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l, SingularLetter::Crossing(_)))
        .map(|(k, _)| k)
        .collect();
    let d = crossings.len();
    let mut out = AlgebraElement::zero();
    for mask in 0u64..(1u64 << d) {
        let mut sign = 1i64;
        let mut letters = Vec::with_capacity(w.letters.len());
        let mut bit = 0;
        for l in &w.letters {
            match *l {
                SingularLetter::Gen(g) => letters.push(g),
                SingularLetter::Crossing(i) => {
                    let negative = mask >> bit & 1 == 1;
                    bit += 1;
                    if negative {
                        sign = -sign;
                        letters.push(BraidLetter::sigma(i).inverse());
                    } else {
                        letters.push(BraidLetter::sigma(i));
                    }
                }
            }
        }
        out.add_term(BraidWord::new(letters), sign);
    }
    out
}

/// `coef · u · (σ_i − σ_i⁻¹) · v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JSummand {
    pub coef: i64,
    pub u: BraidWord,
    pub crossing: usize,
    pub v: BraidWord,
}

/// A formal sum of [`JSummand`]s: an explicit element of `J`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct JExpression {
    pub summands: Vec<JSummand>,
}

impl JExpression {
    pub fn single(coef: i64, u: BraidWord, crossing: usize, v: BraidWord) -> Self {
        JExpression { summands: vec![JSummand { coef, u, crossing, v }] }
    }

    /// `coef | u | i | v`, summands separated by `;`. Empty fields are the
    /// empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut summands = Vec::new();
        for part in text.split(';').filter(|p| !p.trim().is_empty()) {
            let fields: Vec<&str> = part.split('|').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!(
                    "expected `coef | u | i | v`, got `{part}`"
                )));
            }
            let coef = fields[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", fields[0])))?;
            let crossing = fields[2]
                .trim_start_matches('s')
                .parse()
                .map_err(|_| Error::Parse(format!("bad crossing index `{}`", fields[2])))?;
            summands.push(JSummand {
                coef,
                u: BraidWord::parse(fields[1])?,
                crossing,
                v: BraidWord::parse(fields[3])?,
            });
        }
        Ok(JExpression { summands })
    }

    pub fn validate(&self, s: &SurfaceParams) -> Result<()> {
        for t in &self.summands {
            t.u.validate(s)?;
            t.v.validate(s)?;
            BraidLetter::sigma(t.crossing).check(s)?;
        }
        Ok(())
    }
}

impl fmt::Display for JExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|t| {
                let w = |x: &BraidWord| if x.is_empty() { String::new() } else { x.to_string() };
                format!("{} | {} | {} | {}", t.coef, w(&t.u), t.crossing, w(&t.v))
            })
            .collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

/// `σ_i − σ_i⁻¹` as a formal sum.
pub fn crossing_difference(i: usize) -> AlgebraElement<i64> {
    let mut x = AlgebraElement::word(BraidWord::new(vec![BraidLetter::sigma(i)]));
    x.add_term(BraidWord::new(vec![BraidLetter::sigma(i).inverse()]), -1);
    x
}

pub fn jexpr_value(e: &JExpression) -> AlgebraElement<i64> {
    let mut out = AlgebraElement::zero();
    for t in &e.summands {
        let term = AlgebraElement::word(t.u.clone())
            .mul(&crossing_difference(t.crossing))
            .mul(&AlgebraElement::word(t.v.clone()))
            .scale(&t.coef);
        out = out.add(&term);
    }
    out
}
