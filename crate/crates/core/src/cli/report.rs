use std::fmt::Write as _;

use serde::Serialize;

use super::json::{certificate_to_json, operator_to_json, CertificateJson, OperatorJson};
use crate::algsols::AlgDecision;
use crate::certsearch::{Certificate, GrowthProbe};
use crate::localsolve::PointClassification;
use crate::ore::OrePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Certificate found or decision reached.
    Found,
    /// Nothing at the given bounds.
    NoneFound,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Found => 0,
            Outcome::NoneFound => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Outcome::Found => "found",
            Outcome::NoneFound => "none_found_at_bounds",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub operator: OrePoly,
    pub singularities: Vec<PointClassification>,
    pub certificate: Option<Certificate>,
    pub growth: Option<GrowthProbe>,
    pub algsols: Option<(usize, AlgDecision)>,
    pub verified: Option<bool>,
    pub notes: Vec<String>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &'static str, operator: OrePoly) -> Self {
        Report {
            command,
            operator,
            singularities: Vec::new(),
            certificate: None,
            growth: None,
            algsols: None,
            verified: None,
            notes: Vec::new(),
            outcome: Outcome::NoneFound,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ReportJson::from(self)).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "operator: {}", self.operator);
        if !self.singularities.is_empty() {
            let _ = writeln!(o, "singularities:");
            for c in &self.singularities {
                let e: Vec<String> = c.exponents.iter().map(|e| e.to_string()).collect();
                let e = if e.is_empty() { "none".to_string() } else { e.join(", ") };
                let _ = writeln!(o, "  {:<8} {:<20} exponents: {e}", c.point.to_string(), c.kind.as_str());
            }
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(o, "certificate: {} (s = {})", c.kind, c.s);
            if let Some(p) = &c.p {
                let _ = writeln!(o, "  P = {p}");
            }
            if let (Some(pt), Some(k)) = (&c.point, c.classification) {
                let _ = writeln!(o, "  point {pt}: {k}");
            }
        }
        if let Some(g) = &self.growth {
            let orders: Vec<String> = g.orders.iter().map(|(_, n)| n.to_string()).collect();
            let _ = writeln!(o, "growth: orders {} ({})", orders.join(", "), g.classification);
        }
        if let Some((d, a)) = &self.algsols {
            match a {
                AlgDecision::MinimalPolynomial(m) => {
                    let _ = writeln!(o, "algebraic solutions of degree {d}: minimal polynomial {m}");
                }
                _ => {
                    let _ = writeln!(o, "algebraic solutions of degree {d}: {}", a.as_str());
                }
            }
        }
        if let Some(v) = self.verified {
            let _ = writeln!(o, "verified: {v}");
        }
        for n in &self.notes {
            let _ = writeln!(o, "note: {n}");
        }
        let _ = writeln!(o, "result: {}", self.outcome.as_str());
        o
    }
}

#[derive(Serialize)]
struct SingularityJson {
    point: String,
    classification: String,
    exponents: Vec<String>,
}

#[derive(Serialize)]
struct GrowthJson {
    orders: Vec<usize>,
    classification: String,
}

#[derive(Serialize)]
struct AlgsolsJson {
    degree: usize,
    decision: String,
    minimal_polynomial: Option<String>,
}

#[derive(Serialize)]
struct ReportJson {
    command: String,
    operator: OperatorJson,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    singularities: Vec<SingularityJson>,
    certificate: Option<CertificateJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    growth: Option<GrowthJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    algsols: Option<AlgsolsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    notes: Vec<String>,
    result: String,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> Self {
        ReportJson {
            command: r.command.into(),
            operator: operator_to_json(&r.operator),
            singularities: r
                .singularities
                .iter()
                .map(|c| SingularityJson {
                    point: c.point.to_string(),
                    classification: c.kind.as_str().into(),
                    exponents: c.exponents.iter().map(|e| e.to_string()).collect(),
                })
                .collect(),
            certificate: r.certificate.as_ref().map(certificate_to_json),
            growth: r.growth.as_ref().map(|g| GrowthJson {
                orders: g.orders.iter().map(|o| o.1).collect(),
                classification: g.classification.as_str().into(),
            }),
            algsols: r.algsols.as_ref().map(|(d, a)| AlgsolsJson {
                degree: *d,
                decision: a.as_str().into(),
                minimal_polynomial: match a {
                    AlgDecision::MinimalPolynomial(m) => Some(m.to_string()),
                    _ => None,
                },
            }),
            verified: r.verified,
            notes: r.notes.clone(),
            result: r.outcome.as_str().into(),
        }
    }
}
