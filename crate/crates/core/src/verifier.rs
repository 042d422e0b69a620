//! Machine-checked obstruction to multiplicative universal finite type
//! invariants of surface braids at explicit parameters.
//!
//! For genus ≥ 1 the skew-commutativity relator writes `σ₁²` as a
//! commutator. A multiplicative invariant sends commutators to elements with
//! trivial degree-one abelianized class, yet the degree-one symbol of
//! `σ₁² − 1` is `Z_12`, whose class is nonzero. The computable pieces are
//! checked here; the two structural inferences are listed as cited.

use std::fmt;

use crate::abelian::{h1_class, h1_nonzero, H1Element};
use crate::algebra::JExpression;
use crate::braid::{bounded_equal, relators, BraidWord, EqualityResult, RelatorFamily};
use crate::diagram::{
    degree_one_symbol, disk_witness, ideal_member, verify_certificate, Membership, Trunc,
    WreathDiagram,
};
use crate::error::Result;
use crate::perm::Perm;
use crate::surface::SurfaceParams;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepKind {
    Computed,
    Cited,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    pub name: &'static str,
    pub kind: StepKind,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            StepKind::Computed => "COMPUTED",
            StepKind::Cited => "CITED",
        };
        let pass = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "STEP {} {kind} {pass} {}", self.name, self.detail)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    ObstructionEstablished,
    HypothesisNotMet,
    /// A computed step failed; nothing is claimed.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub params: SurfaceParams,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PARAMS genus={} boundary={} strands={}",
            self.params.genus, self.params.boundary, self.params.strands
        )?;
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        writeln!(f, "VERDICT {}", self.verdict)
    }
}

fn computed(name: &'static str, pass: bool, detail: String) -> Step {
    Step { name, kind: StepKind::Computed, pass, detail }
}

fn cited_steps() -> Step {
    Step {
        name: "logical_steps_cited",
        kind: StepKind::Cited,
        pass: true,
        detail: "[a multiplicative universal invariant induces an isomorphism from the \
                 associated graded of the group algebra onto the diagram algebra, so its \
                 degree-one symbol map is injective] [a multiplicative invariant sends a \
                 commutator xyx^-1y^-1 to an element whose degree-one class vanishes in H1, \
                 hence sigma1^2 - 1 would have zero class]"
            .into(),
    }
}

/// Runs the obstruction pipeline for `s`.
pub fn verify_nonexistence(s: &SurfaceParams) -> Result<VerificationReport> {
    let mut steps = Vec::new();
    if s.genus == 0 {
        steps.push(computed(
            "relator_2iii_checked",
            false,
            "genus 0: no skew-commutativity relator, sigma1^2 has no commutator expression".into(),
        ));
        steps.push(cited_steps());
        return Ok(VerificationReport { params: *s, steps, verdict: Verdict::HypothesisNotMet });
    }
    let trunc = Trunc::default();

    // (a) σ₁² as a commutator
    let skew = BraidWord::parse("s1^-1 s1^-1 a1 s1^-1 b1 s1^-1 a1^-1 s1 b1^-1 s1")?;
    let listed = relators(s)
        .iter()
        .any(|r| r.family == RelatorFamily::Skew && r.word == skew);
    let comm = BraidWord::parse("a1 s1^-1 b1 s1^-1 a1^-1 s1 b1^-1 s1")?;
    let sq = BraidWord::parse("s1 s1")?;
    let eq = bounded_equal(&comm, &sq, s, 1, crate::braid::DEFAULT_NODE_BUDGET)?;
    let moves = match &eq {
        EqualityResult::Equal(m) => Some(m.len()),
        EqualityResult::Unknown => None,
    };
    steps.push(computed(
        "relator_2iii_checked",
        listed && moves.is_some(),
        format!(
            "relator {} listed={listed}; [a1, s1^-1 b1 s1^-1] = s1^2 {}",
            skew,
            match moves {
                Some(k) => format!("by {k} relator move(s)"),
                None => "not found at depth 1".into(),
            }
        ),
    ));

    // (b) symbol of σ₁² − 1
    let e = JExpression::parse("1 | | 1 | s1")?;
    let symbol = degree_one_symbol(&e, s, trunc)?;
    let z12 = WreathDiagram::parse("Z(1,2)", s.strands, trunc)?;
    let diff = symbol.sub(&z12)?;
    let member = ideal_member(&diff, s, trunc, crate::diagram::DEFAULT_WINDOW)?;
    let (sym_ok, sym_detail) = match &member {
        Membership::Member(cert) => {
            let ok = verify_certificate(cert, &diff, s, trunc);
            (ok, format!("symbol={symbol}; certificate with {} entries re-expands={ok}", cert.entries.len()))
        }
        Membership::NotFoundAtWindow => (false, format!("symbol={symbol}; no certificate at window")),
    };
    steps.push(computed("symbol_is_Z12", sym_ok, sym_detail));

    // (c) H₁ class and witnesses
    let h = h1_class(&symbol, s)?;
    steps.push(computed("h1_class_value", h == H1Element::z12(), format!("h1={h}")));
    let cert = h1_nonzero(&h);
    let disk = disk_witness(&symbol)?;
    let wanted = crate::diagram::DiskBasis::Chord(1, 2, Perm::identity(s.strands));
    let disk_ok = disk.as_ref().is_some_and(|(b, _)| *b == wanted);
    steps.push(computed(
        "nonzero_certificate",
        cert.is_some() && disk_ok,
        format!(
            "h1 coefficient {}; disk augmentation coordinate {}",
            cert.map(|(m, c)| format!("{c} at {m}")).unwrap_or_else(|| "none".into()),
            disk.map(|(b, c)| format!("{c} at {b}")).unwrap_or_else(|| "none".into()),
        ),
    ));

    // (d)
    steps.push(cited_steps());
    let all = steps.iter().all(|s| s.pass);
    let verdict = if all { Verdict::ObstructionEstablished } else { Verdict::Inconclusive };
    Ok(VerificationReport { params: *s, steps, verdict })
}
