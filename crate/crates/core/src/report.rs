//! Verification reports: per-case results tagged with a fixed anchor, and
//! text or JSON rendering.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::linalg::Matrix;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Pass,
    Fail,
    /// A negative control that failed, as it should.
    ExpectedFailure,
}

impl CaseStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CaseStatus::Pass => "PASS",
            CaseStatus::Fail => "FAIL",
            CaseStatus::ExpectedFailure => "XFAIL",
        }
    }

    /// `Pass` when `ok`.
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail
        }
    }

    /// For negative controls: `ExpectedFailure` when the check failed.
    pub fn negative_control(check_passed: bool) -> Self {
        if check_passed {
            CaseStatus::Fail
        } else {
            CaseStatus::ExpectedFailure
        }
    }
}

/// The statement each case exercises. The set is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    GeneratorSquares,
    BladeProduct,
    Associativity,
    GradeInvolution,
    AlgebraDimension,
    Anticommutant,
    RelationCheck,
    SplitIsomorphism,
    SpinorModule,
    Chirality,
    GradedTensor,
    Commutant,
    StructureMap,
    Intertwiner,
    SpinCAction,
    ExteriorModule,
    Cl3Extension,
    TwistedAdjoint,
    Equivariance,
    LhFiber,
    FiberCorrespondence,
    EndomorphismAlgebra,
    ExtraGeneratorSigns,
    SupportIdentity,
    TwistedSymbol,
    SplitModels,
    ThetaOperator,
    ThomSymbol,
    ExteriorThomIntertwiner,
    VerticalMap,
    LocalizationIntertwiner,
    ExpSeries,
    AHatSeries,
    OddPartIdentity,
    IndexModels,
    IndexComparison,
}

impl Anchor {
    pub const ALL: [Anchor; 36] = [
        Anchor::GeneratorSquares,
        Anchor::BladeProduct,
        Anchor::Associativity,
        Anchor::GradeInvolution,
        Anchor::AlgebraDimension,
        Anchor::Anticommutant,
        Anchor::RelationCheck,
        Anchor::SplitIsomorphism,
        Anchor::SpinorModule,
        Anchor::Chirality,
        Anchor::GradedTensor,
        Anchor::Commutant,
        Anchor::StructureMap,
        Anchor::Intertwiner,
        Anchor::SpinCAction,
        Anchor::ExteriorModule,
        Anchor::Cl3Extension,
        Anchor::TwistedAdjoint,
        Anchor::Equivariance,
        Anchor::LhFiber,
        Anchor::FiberCorrespondence,
        Anchor::EndomorphismAlgebra,
        Anchor::ExtraGeneratorSigns,
        Anchor::SupportIdentity,
        Anchor::TwistedSymbol,
        Anchor::SplitModels,
        Anchor::ThetaOperator,
        Anchor::ThomSymbol,
        Anchor::ExteriorThomIntertwiner,
        Anchor::VerticalMap,
        Anchor::LocalizationIntertwiner,
        Anchor::ExpSeries,
        Anchor::AHatSeries,
        Anchor::OddPartIdentity,
        Anchor::IndexModels,
        Anchor::IndexComparison,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Anchor::GeneratorSquares => "generator-squares",
            Anchor::BladeProduct => "blade-product",
            Anchor::Associativity => "associativity",
            Anchor::GradeInvolution => "grade-involution",
            Anchor::AlgebraDimension => "algebra-dimension",
            Anchor::Anticommutant => "anticommutant",
            Anchor::RelationCheck => "relation-check",
            Anchor::SplitIsomorphism => "split-isomorphism",
            Anchor::SpinorModule => "spinor-module",
            Anchor::Chirality => "chirality",
            Anchor::GradedTensor => "graded-tensor",
            Anchor::Commutant => "commutant",
            Anchor::StructureMap => "structure-map",
            Anchor::Intertwiner => "intertwiner",
            Anchor::SpinCAction => "spin-c-action",
            Anchor::ExteriorModule => "exterior-module",
            Anchor::Cl3Extension => "cl3-extension",
            Anchor::TwistedAdjoint => "twisted-adjoint",
            Anchor::Equivariance => "equivariance",
            Anchor::LhFiber => "lh-fiber",
            Anchor::FiberCorrespondence => "fiber-correspondence",
            Anchor::EndomorphismAlgebra => "endomorphism-algebra",
            Anchor::ExtraGeneratorSigns => "extra-generator-signs",
            Anchor::SupportIdentity => "support-identity",
            Anchor::TwistedSymbol => "twisted-symbol",
            Anchor::SplitModels => "split-models",
            Anchor::ThetaOperator => "theta-operator",
            Anchor::ThomSymbol => "thom-symbol",
            Anchor::ExteriorThomIntertwiner => "exterior-thom-intertwiner",
            Anchor::VerticalMap => "vertical-map",
            Anchor::LocalizationIntertwiner => "localization-intertwiner",
            Anchor::ExpSeries => "exp-series",
            Anchor::AHatSeries => "a-hat-series",
            Anchor::OddPartIdentity => "odd-part-identity",
            Anchor::IndexModels => "index-models",
            Anchor::IndexComparison => "index-comparison",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub anchor: Anchor,
    pub status: CaseStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl CaseResult {
    pub fn new(id: impl Into<String>, anchor: Anchor, status: CaseStatus, detail: impl Into<String>) -> Self {
        CaseResult { id: id.into(), anchor, status, detail: detail.into(), witness: Value::Null, elapsed_ms: None }
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = witness;
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub expected_failures: usize,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport<C: Serialize> {
    pub version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub config: C,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl<C: Serialize> VerificationReport<C> {
    pub fn new(suite: impl Into<String>, seed: u64, config: C, cases: Vec<CaseResult>) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                CaseStatus::Pass => summary.passed += 1,
                CaseStatus::Fail => summary.failed += 1,
                CaseStatus::ExpectedFailure => summary.expected_failures += 1,
            }
        }
        VerificationReport { version: VERSION, suite: suite.into(), seed, config, cases, summary, elapsed_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.summary.ok()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {}, version {})", self.suite, self.seed, self.version);
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.cases {
            let _ = write!(out, "{:<5} {:<width$}  [{}]  {}", c.status.label(), c.id, c.anchor.as_str(), c.detail);
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, "  ({ms} ms)");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = write!(out, "{} passed, {} failed, {} expected failures", s.passed, s.failed, s.expected_failures);
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, " in {ms} ms");
        }
        out.push('\n');
        out
    }
}

/// A matrix as rows of `p/q` strings.
pub fn matrix_witness(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| Value::String(m[(r, c)].to_string())).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn anchors_are_distinct() {
        let names: HashSet<_> = Anchor::ALL.iter().map(|a| a.as_str()).collect();
        assert_eq!(names.len(), Anchor::ALL.len());
        for a in Anchor::ALL {
            let json = serde_json::to_value(a).unwrap();
            assert_eq!(json, Value::String(a.as_str().into()));
        }
    }

    #[test]
    fn expected_failures_do_not_fail_the_run() {
        let cases = vec![
            CaseResult::new("a", Anchor::BladeProduct, CaseStatus::Pass, ""),
            CaseResult::new("b", Anchor::StructureMap, CaseStatus::negative_control(false), ""),
        ];
        let r = VerificationReport::new("x", 1, (), cases);
        assert!(r.passed());
        assert_eq!(r.summary.expected_failures, 1);
        let r = VerificationReport::new("x", 1, (), vec![CaseResult::new("c", Anchor::BladeProduct, CaseStatus::Fail, "")]);
        assert!(!r.passed());
        assert!(r.to_text().starts_with("suite x"));
    }
}
