//! Versioned JSON report documents. Every payload carries the permutations
//! it talks about, so `verify` needs nothing beyond the document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::{validate_atlas, AtlasReport};
use crate::certify::{beauville_check, min_degree_search, CoverCertificate, DhbCertificate, MinDegree};
use crate::construct::{ConstructionPlan, JoinRecord, MapPair};
use crate::frobenius::CharacterTable;
use crate::linlift::{lift_pair, LiftReport};
use crate::map::{FixedPointVector, HurwitzMap};

pub const SCHEMA: &str = "dhb-report/1";

/// Serializes big integers as decimal strings.
pub(crate) mod big_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("verification failed: {0}")]
    Verify(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeSummary {
    pub expression: String,
    pub degree: usize,
    pub genus: Option<u64>,
    pub fixed_points: FixedPointVector,
    pub handles: [usize; 3],
    pub w_cycles: Vec<usize>,
    pub primes: Vec<u64>,
    pub map: HurwitzMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSummary {
    pub table: String,
    pub classes: [String; 3],
    pub count: String,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Atlas { report: AtlasReport },
    Compose { result: ComposeSummary },
    Construct { plan: ConstructionPlan, prime: u64, degree: usize, pair: MapPair, joins: Vec<JoinRecord> },
    Certificate { certificate: DhbCertificate, group_order_oracle: Option<bool> },
    Cover { certificate: CoverCertificate },
    MinDegree { result: MinDegree },
    Frobenius { result: FrobeniusSummary },
    Lift { report: LiftReport },
    Verification { checked: usize, failures: Vec<String> },
    Failure { error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub passed: bool,
    pub summary: Vec<String>,
    pub payload: Payload,
}

impl Report {
    pub fn new(
        command: &str,
        input: BTreeMap<String, String>,
        passed: bool,
        summary: Vec<String>,
        payload: Payload,
    ) -> Self {
        Report { schema: SCHEMA.to_string(), command: command.to_string(), input, passed, summary, payload }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, ReportError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let schema = value.get("schema").and_then(|s| s.as_str()).unwrap_or("");
        if schema != SCHEMA {
            return Err(ReportError::Schema(schema.to_string()));
        }
        Ok(serde_json::from_value(value)?)
    }

    /// Parses a single report or a JSON array of reports.
    pub fn many_from_json(text: &str) -> Result<Vec<Report>, ReportError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let docs = match value {
            serde_json::Value::Array(v) => v,
            other => vec![other],
        };
        docs.into_iter().map(|d| Report::from_json(&d.to_string())).collect()
    }

    /// Re-derives the recorded verdict from the payload alone.
    pub fn verify(&self) -> Result<(), ReportError> {
        let fail = |m: String| Err(ReportError::Verify(m));
        let ok = match &self.payload {
            Payload::Atlas { report } => {
                let again = validate_atlas();
                if &again != report {
                    return fail("atlas report differs from recomputation".into());
                }
                report.passed()
            }
            Payload::Compose { result } => {
                let m = &result.map;
                let same = m.n() == result.degree
                    && m.fixed_point_vector() == result.fixed_points
                    && m.handle_counts() == result.handles
                    && m.w_cycles().cycle_type().lengths() == result.w_cycles.as_slice()
                    && m.prime_set().into_iter().collect::<Vec<_>>() == result.primes
                    && m.genus().ok() == result.genus;
                if !same {
                    return fail("composition summary does not match its map".into());
                }
                true
            }
            Payload::Construct { pair, degree, prime, .. } => {
                if pair.degree() != *degree || pair.w2.n() != *degree {
                    return fail("pair degree differs from the recorded one".into());
                }
                let diff = pair.v_difference();
                diff.iter().all(|&d| d != 0)
                    && [&pair.w1, &pair.w2].iter().all(|m| {
                        m.w_cycles()
                            .cycle_type()
                            .lengths()
                            .iter()
                            .filter(|&&l| (l as u64).is_multiple_of(*prime))
                            .count()
                            == 1
                    })
            }
            Payload::Certificate { certificate, group_order_oracle } => {
                certificate.verify().map_err(|e| ReportError::Verify(e.to_string()))?;
                *group_order_oracle != Some(false)
            }
            Payload::Cover { certificate } => {
                certificate.verify().map_err(|e| ReportError::Verify(e.to_string()))?;
                true
            }
            Payload::MinDegree { result } => {
                let again = min_degree_search(result.bounds).map_err(|e| ReportError::Verify(e.to_string()))?;
                if &again != result {
                    return fail("minimum degree differs from recomputation".into());
                }
                true
            }
            Payload::Frobenius { result } => {
                let t = CharacterTable::parse(&result.table).map_err(|e| ReportError::Verify(e.to_string()))?;
                let [x, y, z] = &result.classes;
                let n = t.frobenius_count(x, y, z).map_err(|e| ReportError::Verify(e.to_string()))?;
                let c = t.class_sum_coefficient(x, y, z).map_err(|e| ReportError::Verify(e.to_string()))?;
                if n.to_string() != result.count || c.to_string() != result.coefficient {
                    return fail("structure constant differs from recomputation".into());
                }
                true
            }
            Payload::Lift { report } => {
                let (_, _, dims) = lift_pair(&report.pair, report.points, report.p, report.t1)
                    .map_err(|e| ReportError::Verify(e.to_string()))?;
                if dims != report.dims {
                    return fail("fixed-space dimensions differ from recomputation".into());
                }
                let beau = beauville_check(&report.pair.w1, &report.pair.w2)
                    .map_err(|e| ReportError::Verify(e.to_string()))?;
                beau.passed()
            }
            Payload::Verification { failures, .. } => failures.is_empty(),
            Payload::Failure { .. } => false,
        };
        if ok != self.passed {
            return fail(format!("recorded verdict {} but payload gives {ok}", self.passed));
        }
        Ok(())
    }
}
