//! Valuation inequalities on matrix entries, loaded from a data file.
//!
//! A constraint reads `ν(∏ M[r][c]^e) cmp value` with `M ∈ {A, B}`. The
//! outcome is "certified" only for a transcribed, nonempty criterion whose
//! every constraint holds.

use serde::{Deserialize, Serialize};

use crate::symbolalg::FiMatrix;

use super::{CertError, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRef {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationConstraint {
    pub monomial: Vec<EntryRef>,
    pub cmp: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionDescriptor {
    pub provenance: String,
    pub transcribed: bool,
    pub constraints: Vec<ValuationConstraint>,
}

impl CriterionDescriptor {
    /// Placeholder shipped while no transcription of the external criterion exists.
    pub fn untranscribed() -> Self {
        CriterionDescriptor {
            provenance: "external ping-pong criterion; not transcribed".into(),
            transcribed: false,
            constraints: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self, CertError> {
        let c: CriterionDescriptor = serde_json::from_str(s).map_err(|e| CertError::MalformedCriterion(e.to_string()))?;
        for k in &c.constraints {
            cmp_op(&k.cmp)?;
            for e in &k.monomial {
                if e.matrix != "A" && e.matrix != "B" {
                    return Err(CertError::MalformedCriterion(format!("unknown matrix {}", e.matrix)));
                }
            }
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintResult {
    /// `None` stands for `+∞`.
    pub nu: Option<i64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub provenance: String,
    pub transcribed: bool,
    pub results: Vec<ConstraintResult>,
    pub certified: bool,
}

fn cmp_op(s: &str) -> Result<fn(Option<i64>, i64) -> bool, CertError> {
    // +∞ exceeds every integer
    Ok(match s {
        ">=" => |v, c| v.map_or(true, |v| v >= c),
        ">" => |v, c| v.map_or(true, |v| v > c),
        "<=" => |v, c| v.is_some_and(|v| v <= c),
        "<" => |v, c| v.is_some_and(|v| v < c),
        "==" => |v, c| v == Some(c),
        _ => return Err(CertError::MalformedCriterion(format!("unknown comparison {}", s))),
    })
}

pub fn check_criterion(
    a: &FiMatrix,
    b: &FiMatrix,
    val: &Valuation,
    crit: &CriterionDescriptor,
) -> Result<CriterionOutcome, CertError> {
    let mut results = Vec::new();
    for k in &crit.constraints {
        let op = cmp_op(&k.cmp)?;
        // None = +∞; a zero entry raised to a negative power makes the constraint fail
        let mut total: Option<Option<i64>> = Some(Some(0));
        for e in &k.monomial {
            let m = if e.matrix == "A" { a } else { b };
            let entry = m
                .get(e.row)
                .and_then(|r| r.get(e.col))
                .ok_or_else(|| CertError::MalformedCriterion(format!("entry ({}, {}) out of range", e.row, e.col)))?;
            let nu = val.nu(entry);
            total = match (total, nu) {
                (None, _) => None,
                (Some(_), None) if e.exp < 0 => None,
                (Some(_), None) if e.exp == 0 => total,
                (Some(_), None) => Some(None),
                (Some(None), Some(_)) => Some(None),
                (Some(Some(t)), Some(v)) => Some(Some(t + e.exp * v)),
            };
        }
        let (nu, holds) = match total {
            None => (None, false),
            Some(v) => (v, op(v, k.value)),
        };
        results.push(ConstraintResult { nu, holds });
    }
    let certified = crit.transcribed && !results.is_empty() && results.iter().all(|r| r.holds);
    Ok(CriterionOutcome { provenance: crit.provenance.clone(), transcribed: crit.transcribed, results, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rf;
    use crate::symbolalg::SymbolAlgebra;

    fn identity(alg: &crate::symbolalg::AlgRef) -> FiMatrix {
        let fd = alg.field();
        (0..2).map(|r| (0..2).map(|c| if r == c { Rf::one(fd) } else { Rf::zero(fd) }).collect()).collect()
    }

    #[test]
    fn always_false_is_inconclusive() {
        let h = SymbolAlgebra::with_params(0, 2).unwrap();
        let v = Valuation::new(&h);
        let id = identity(&h);
        let crit = CriterionDescriptor::from_json(
            r#"{"provenance": "test", "transcribed": true,
                "constraints": [{"monomial": [], "cmp": ">=", "value": 1}]}"#,
        )
        .unwrap();
        let o = check_criterion(&id, &id, &v, &crit).unwrap();
        assert!(!o.certified);
        assert_eq!(o.results[0].nu, Some(0));
    }

    #[test]
    fn identity_fails_separation() {
        let h = SymbolAlgebra::with_params(0, 2).unwrap();
        let v = Valuation::new(&h);
        let id = identity(&h);
        let crit = CriterionDescriptor::from_json(
            r#"{"provenance": "test", "transcribed": true,
                "constraints": [{"monomial": [{"matrix": "A", "row": 0, "col": 1, "exp": 1}], "cmp": "<", "value": 0}]}"#,
        )
        .unwrap();
        let o = check_criterion(&id, &id, &v, &crit).unwrap();
        assert!(!o.certified);
        assert_eq!(o.results[0].nu, None);
    }

    #[test]
    fn holding_constraints_certify() {
        let h = SymbolAlgebra::with_params(0, 2).unwrap();
        let v = Valuation::new(&h);
        let id = identity(&h);
        let crit = CriterionDescriptor::from_json(
            r#"{"provenance": "test", "transcribed": true,
                "constraints": [{"monomial": [{"matrix": "B", "row": 1, "col": 1, "exp": 2}], "cmp": "==", "value": 0}]}"#,
        )
        .unwrap();
        assert!(check_criterion(&id, &id, &v, &crit).unwrap().certified);
    }

    #[test]
    fn malformed_rejected() {
        assert!(CriterionDescriptor::from_json("{}").is_err());
        let bad = r#"{"provenance": "", "transcribed": true,
            "constraints": [{"monomial": [], "cmp": "!=", "value": 0}]}"#;
        assert!(CriterionDescriptor::from_json(bad).is_err());
    }
}
