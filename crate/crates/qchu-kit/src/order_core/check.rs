use std::fmt;
use std::str::FromStr;

use super::OrderError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    TrivialFinite,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::TrivialFinite => "trivial_finite",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "trivial_finite" => Ok(Verdict::TrivialFinite),
            other => Err(format!("unknown verdict `{other}`")),
        }
    }
}

/// Order-theoretic axioms checked on a finite state poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    BoundedComplete,
    StrongAtomicity,
    RelativeComplement,
    LowerSemimodular,
    CondUpperSemimodular,
    CondModular,
    Atomistic,
    NoType2,
    JoinContinuity,
    ChainComplete,
    DirectedComplete,
    MeetContinuous,
    Algebraic,
}

impl AxiomId {
    pub const ALL: [AxiomId; 13] = [
        AxiomId::BoundedComplete,
        AxiomId::StrongAtomicity,
        AxiomId::RelativeComplement,
        AxiomId::LowerSemimodular,
        AxiomId::CondUpperSemimodular,
        AxiomId::CondModular,
        AxiomId::Atomistic,
        AxiomId::NoType2,
        AxiomId::JoinContinuity,
        AxiomId::ChainComplete,
        AxiomId::DirectedComplete,
        AxiomId::MeetContinuous,
        AxiomId::Algebraic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomId::BoundedComplete => "BoundedComplete",
            AxiomId::StrongAtomicity => "StrongAtomicity",
            AxiomId::RelativeComplement => "RelativeComplement",
            AxiomId::LowerSemimodular => "LowerSemimodular",
            AxiomId::CondUpperSemimodular => "CondUpperSemimodular",
            AxiomId::CondModular => "CondModular",
            AxiomId::Atomistic => "Atomistic",
            AxiomId::NoType2 => "NoType2",
            AxiomId::JoinContinuity => "JoinContinuity",
            AxiomId::ChainComplete => "ChainComplete",
            AxiomId::DirectedComplete => "DirectedComplete",
            AxiomId::MeetContinuous => "MeetContinuous",
            AxiomId::Algebraic => "Algebraic",
        }
    }

    /// Automatic on every finite poset.
    pub fn is_trivial_finite(self) -> bool {
        matches!(
            self,
            AxiomId::ChainComplete | AxiomId::DirectedComplete | AxiomId::MeetContinuous | AxiomId::Algebraic
        )
    }
}

impl FromStr for AxiomId {
    type Err = OrderError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::ALL.into_iter().find(|a| a.as_str() == s).ok_or_else(|| OrderError::UnknownAxiom(s.to_string()))
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tag naming every check the library can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Axiom(AxiomId),
    Biextensional,
    QuotientMorphism,
    ScottIdeal,
    MinEqQuasiClassical,
    FilterMeet,
    Specker,
    Coherence,
    SchemeComplete,
    SchemeIrredundant,
    SchemeClosed,
    SchemeDiscriminating,
    StarOrderReversing,
    StarInvolution,
    StarDeMorgan,
    PerpFilter,
    PerpClosure,
    UniquePair,
    DiscriminatingPerfect,
    LatticeClosure,
    Orthocomplement,
    Atomic,
    LatticeAtomistic,
    Orthomodular,
    Covering,
    Exchange,
    Irreducible,
    Separation,
    Representation,
    Superposition,
    ChuMorphism,
    Centerdot,
    Succession,
    Injectivity,
    Surjectivity,
    SchemePreservation,
    MinimalPreservation,
    ConjugationPreservation,
    OrthogonalityPreservation,
    LatticeMapInjective,
    LatticeMapSups,
    LatticeMapAtoms,
    LatticeMapOrtho,
    LatticeMapAdjunction,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Axiom(a) => a.as_str(),
            CheckId::Biextensional => "Biextensional",
            CheckId::QuotientMorphism => "QuotientMorphism",
            CheckId::ScottIdeal => "ScottIdeal",
            CheckId::MinEqQuasiClassical => "MinEqQuasiClassical",
            CheckId::FilterMeet => "FilterMeet",
            CheckId::Specker => "Specker",
            CheckId::Coherence => "Coherence",
            CheckId::SchemeComplete => "SchemeComplete",
            CheckId::SchemeIrredundant => "SchemeIrredundant",
            CheckId::SchemeClosed => "SchemeClosed",
            CheckId::SchemeDiscriminating => "SchemeDiscriminating",
            CheckId::StarOrderReversing => "StarOrderReversing",
            CheckId::StarInvolution => "StarInvolution",
            CheckId::StarDeMorgan => "StarDeMorgan",
            CheckId::PerpFilter => "PerpFilter",
            CheckId::PerpClosure => "PerpClosure",
            CheckId::UniquePair => "UniquePair",
            CheckId::DiscriminatingPerfect => "DiscriminatingPerfect",
            CheckId::LatticeClosure => "LatticeClosure",
            CheckId::Orthocomplement => "Orthocomplement",
            CheckId::Atomic => "Atomic",
            CheckId::LatticeAtomistic => "LatticeAtomistic",
            CheckId::Orthomodular => "Orthomodular",
            CheckId::Covering => "Covering",
            CheckId::Exchange => "Exchange",
            CheckId::Irreducible => "Irreducible",
            CheckId::Separation => "Separation",
            CheckId::Representation => "Representation",
            CheckId::Superposition => "Superposition",
            CheckId::ChuMorphism => "ChuMorphism",
            CheckId::Centerdot => "Centerdot",
            CheckId::Succession => "Succession",
            CheckId::Injectivity => "Injectivity",
            CheckId::Surjectivity => "Surjectivity",
            CheckId::SchemePreservation => "SchemePreservation",
            CheckId::MinimalPreservation => "MinimalPreservation",
            CheckId::ConjugationPreservation => "ConjugationPreservation",
            CheckId::OrthogonalityPreservation => "OrthogonalityPreservation",
            CheckId::LatticeMapInjective => "LatticeMapInjective",
            CheckId::LatticeMapSups => "LatticeMapSups",
            CheckId::LatticeMapAtoms => "LatticeMapAtoms",
            CheckId::LatticeMapOrtho => "LatticeMapOrtho",
            CheckId::LatticeMapAdjunction => "LatticeMapAdjunction",
        }
    }

    /// Checks whose failures are discrepancy reports rather than defects.
    pub fn is_report(self) -> bool {
        matches!(
            self,
            CheckId::Axiom(AxiomId::JoinContinuity)
                | CheckId::Specker
                | CheckId::Coherence
                | CheckId::DiscriminatingPerfect
                | CheckId::FilterMeet
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<AxiomId> for CheckId {
    fn from(a: AxiomId) -> Self {
        CheckId::Axiom(a)
    }
}

/// Outcome of one check. A witness is present exactly when the verdict is `Fail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    check: CheckId,
    verdict: Verdict,
    witness: Option<Vec<String>>,
    detail: String,
}

impl CheckResult {
    pub fn pass(check: impl Into<CheckId>, detail: impl Into<String>) -> Self {
        CheckResult { check: check.into(), verdict: Verdict::Pass, witness: None, detail: detail.into() }
    }

    pub fn fail(check: impl Into<CheckId>, witness: Vec<String>, detail: impl Into<String>) -> Self {
        CheckResult { check: check.into(), verdict: Verdict::Fail, witness: Some(witness), detail: detail.into() }
    }

    pub fn trivial(check: impl Into<CheckId>) -> Self {
        CheckResult {
            check: check.into(),
            verdict: Verdict::TrivialFinite,
            witness: None,
            detail: "trivially satisfied (finite)".to_string(),
        }
    }

    /// `Pass` when `witness` is `None`, otherwise `Fail`.
    pub fn from_witness(
        check: impl Into<CheckId>,
        witness: Option<Vec<String>>,
        pass_detail: impl Into<String>,
        fail_detail: impl Into<String>,
    ) -> Self {
        match witness {
            None => Self::pass(check, pass_detail),
            Some(w) => Self::fail(check, w, fail_detail),
        }
    }

    pub fn check(&self) -> CheckId {
        self.check
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn witness(&self) -> Option<&[String]> {
        self.witness.as_deref()
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn is_report(&self) -> bool {
        self.check.is_report()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.is_report() { "report" } else { "check" };
        write!(f, "{mode} {:<26} {}", self.check.as_str(), self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " witness=({})", w.join(","))?;
        }
        if !self.detail.is_empty() {
            write!(f, " : {}", self.detail)?;
        }
        Ok(())
    }
}

/// `Pass` iff no non-report check failed.
pub fn aggregate(results: &[CheckResult]) -> Verdict {
    if results.iter().any(|r| !r.is_report() && r.verdict() == Verdict::Fail) {
        Verdict::Fail
    } else {
        Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_iff_fail() {
        let p = CheckResult::pass(AxiomId::CondModular, "");
        assert!(p.witness().is_none());
        let f = CheckResult::fail(AxiomId::CondModular, vec!["a".into()], "bad");
        assert_eq!(f.verdict(), Verdict::Fail);
        assert_eq!(f.witness().unwrap(), ["a".to_string()]);
        let t = CheckResult::trivial(AxiomId::Algebraic);
        assert_eq!(t.verdict(), Verdict::TrivialFinite);
        assert!(t.witness().is_none());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in AxiomId::ALL {
            assert_eq!(a.as_str().parse::<AxiomId>().unwrap(), a);
        }
        assert!(matches!("Modularish".parse::<AxiomId>(), Err(OrderError::UnknownAxiom(_))));
    }

    #[test]
    fn reports_do_not_fail_the_aggregate() {
        let rs = vec![
            CheckResult::pass(AxiomId::CondModular, ""),
            CheckResult::fail(AxiomId::JoinContinuity, vec![], "noted"),
        ];
        assert_eq!(aggregate(&rs), Verdict::Pass);
        let rs = vec![CheckResult::fail(AxiomId::NoType2, vec!["a".into()], "")];
        assert_eq!(aggregate(&rs), Verdict::Fail);
    }
}
