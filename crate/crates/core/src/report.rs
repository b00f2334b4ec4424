//! Serializable records emitted by the command-line front end.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::congruence::{CheckResult, CongruenceOutcome};
use crate::numeric::rational::format_rational;
use crate::registry::{Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Ok,
    Fail,
    DomainError,
    ConvergenceError,
    Inapplicable,
}

impl ReportStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportStatus::Ok => "ok",
            ReportStatus::Fail => "fail",
            ReportStatus::DomainError => "domain_error",
            ReportStatus::ConvergenceError => "convergence_error",
            ReportStatus::Inapplicable => "inapplicable",
        }
    }
}

impl From<Status> for ReportStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ReportStatus::Ok,
            Status::Fail => ReportStatus::Fail,
            Status::DomainError => ReportStatus::DomainError,
            Status::ConvergenceError => ReportStatus::ConvergenceError,
        }
    }
}

impl From<CheckResult> for ReportStatus {
    fn from(r: CheckResult) -> Self {
        match r {
            CheckResult::Holds => ReportStatus::Ok,
            CheckResult::Fails => ReportStatus::Fail,
            CheckResult::Inapplicable => ReportStatus::Inapplicable,
        }
    }
}

/// One verification or congruence check. Numeric fields are decimal
/// strings with exactly `digits` places; bindings are `num/den` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub id: String,
    pub bindings: BTreeMap<String, String>,
    pub digits: u32,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub abs_residual: Option<String>,
    pub terms_used: u64,
    pub elapsed_ms: u64,
    pub status: ReportStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl ReportRecord {
    pub fn is_ok(&self) -> bool {
        self.status == ReportStatus::Ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(line: &str) -> serde_json::Result<ReportRecord> {
        serde_json::from_str(line)
    }
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        let d = r.digits as usize;
        ReportRecord {
            id: r.id.clone(),
            bindings: r.bindings.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
            digits: r.digits,
            lhs: r.lhs.as_ref().map(|a| a.to_decimal_string(d)),
            rhs: r.rhs.as_ref().map(|a| a.to_decimal_string(d)),
            abs_residual: r.residual.as_ref().map(|x| x.to_decimal_string(d)),
            terms_used: r.terms_used,
            elapsed_ms: r.elapsed_ms,
            status: r.status.into(),
            message: r.message.clone(),
        }
    }
}

/// Residues are printed as integers in `[0, p²)`; `rhs` already carries the
/// Legendre factor, so the check holds iff `lhs == rhs`.
impl From<&CongruenceOutcome> for ReportRecord {
    fn from(c: &CongruenceOutcome) -> Self {
        let signed = match (c.rhs, c.symbol) {
            (Some(r), Some(1)) => Some(r),
            (Some(r), Some(-1)) => Some((c.modulus - r) % c.modulus),
            (Some(_), Some(_)) => Some(0),
            _ => None,
        };
        let residual = match (c.lhs, signed) {
            (Some(l), Some(r)) => Some(((l + c.modulus - r) % c.modulus).to_string()),
            _ => None,
        };
        ReportRecord {
            id: format!("supercongruence-{}", c.which),
            bindings: [("p".to_string(), format!("{}/1", c.p))].into(),
            digits: 0,
            lhs: c.lhs.map(|v| v.to_string()),
            rhs: signed.map(|v| v.to_string()),
            abs_residual: residual,
            terms_used: if c.lhs.is_some() { c.p } else { 0 },
            elapsed_ms: c.elapsed_ms,
            status: c.result.into(),
            message: c.symbol.map(|s| format!("modulus {}, legendre factor {s}", c.modulus)),
        }
    }
}

/// A named constant printed to `digits` places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantRecord {
    pub name: String,
    pub digits: u32,
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::SUPERCONGRUENCES;
    use crate::numeric::rational::int;
    use crate::registry::verify;

    #[test]
    fn verification_round_trips() {
        let b = [("x".to_string(), int(-216))].into();
        let r = ReportRecord::from(&verify("thm2-p", &b, 20).unwrap());
        assert_eq!(r.bindings["x"], "-216/1");
        let lhs = r.lhs.as_deref().unwrap();
        assert_eq!(lhs.split_once('.').unwrap().1.len(), 20);
        assert_eq!(ReportRecord::from_json(&r.to_json()).unwrap(), r);
        assert!(r.to_json().contains("\"status\":\"ok\""));
    }

    #[test]
    fn failures_round_trip() {
        let b = [("x".to_string(), int(16))].into();
        let r = ReportRecord::from(&verify("thm2-o", &b, 20).unwrap());
        assert_eq!(r.status, ReportStatus::ConvergenceError);
        assert!(r.lhs.is_none() && r.message.is_some());
        assert_eq!(ReportRecord::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn congruence_records() {
        let r = ReportRecord::from(&SUPERCONGRUENCES[0].check(5));
        assert_eq!((r.lhs.as_deref(), r.rhs.as_deref(), r.abs_residual.as_deref()), (Some("20"), Some("20"), Some("0")));
        assert!(r.is_ok());
        let r = ReportRecord::from(&SUPERCONGRUENCES[2].check(7));
        assert_eq!(r.status, ReportStatus::Inapplicable);
        assert_eq!(ReportRecord::from_json(&r.to_json()).unwrap(), r);
    }
}
