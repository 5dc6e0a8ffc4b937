//! JSON forms of operators and certificates. Rationals are strings, field
//! order is fixed.

use std::fmt;
use std::str::FromStr;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::certsearch::{Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::localsolve::{Point, PointKind};
use crate::ore::OrePoly;

pub const TOOL_VERSION: &str = concat!("dct ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub var: String,
    pub coeffs: Vec<FunctionJson>,
}

/// Map that keeps insertion order on both ends.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentMap(pub Vec<(String, Vec<String>)>);

impl Serialize for ExponentMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for ExponentMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExponentMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from points to exponent lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> std::result::Result<ExponentMap, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry::<String, Vec<String>>()? {
                    out.push((k, v));
                }
                Ok(ExponentMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub s: usize,
    pub operator: OperatorJson,
    #[serde(rename = "P", default)]
    pub p: Option<OperatorJson>,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(default)]
    pub classification: Option<String>,
    #[serde(default)]
    pub exponents: ExponentMap,
    pub tool_version: String,
}

fn rat_str(c: &Rational) -> String {
    c.to_string()
}

fn parse_rat(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let r = Rational::from_str(s.trim()).map_err(|_| bad())?;
    Ok(r)
}

fn poly_json(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(rat_str).collect()
}

fn poly_from_json(v: &[String]) -> Result<Polynomial> {
    Ok(Polynomial::new(v.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?))
}

pub fn function_to_json(f: &RationalFunction) -> FunctionJson {
    FunctionJson {
        num: poly_json(f.num()),
        den: poly_json(f.den()),
    }
}

pub fn function_from_json(f: &FunctionJson) -> Result<RationalFunction> {
    RationalFunction::new(poly_from_json(&f.num)?, poly_from_json(&f.den)?)
}

pub fn operator_to_json(l: &OrePoly) -> OperatorJson {
    OperatorJson {
        var: "x".into(),
        coeffs: l.coeffs().iter().map(function_to_json).collect(),
    }
}

pub fn operator_from_json(o: &OperatorJson) -> Result<OrePoly> {
    if o.var != "x" {
        return Err(Error::InvalidArgument(format!("unsupported variable {:?}", o.var)));
    }
    Ok(OrePoly::new(o.coeffs.iter().map(function_from_json).collect::<Result<_>>()?))
}

pub fn parse_point_kind(s: &str) -> Option<PointKind> {
    [
        PointKind::Ordinary,
        PointKind::PuiseuxRegular,
        PointKind::Logarithmic,
        PointKind::IrrationalExponent,
        PointKind::Irregular,
    ]
    .into_iter()
    .find(|k| k.as_str() == s)
}

pub fn certificate_to_json(c: &Certificate) -> CertificateJson {
    CertificateJson {
        kind: c.kind.as_str().into(),
        s: c.s,
        operator: operator_to_json(&c.operator),
        p: c.p.as_ref().map(operator_to_json),
        point: c.point.as_ref().map(|p| p.to_string()),
        classification: c.classification.map(|k| k.as_str().to_string()),
        exponents: ExponentMap(
            c.exponents
                .iter()
                .map(|(p, e)| (p.to_string(), e.iter().map(rat_str).collect()))
                .collect(),
        ),
        tool_version: TOOL_VERSION.into(),
    }
}

pub fn certificate_from_json(j: &CertificateJson) -> Result<Certificate> {
    let malformed = |m: String| Error::MalformedCertificate(m);
    let kind = CertificateKind::parse(&j.kind).ok_or_else(|| malformed(format!("unknown kind {:?}", j.kind)))?;
    let point = match &j.point {
        Some(s) => Some(Point::from_str(s).map_err(|_| malformed(format!("bad point {s:?}")))?),
        None => None,
    };
    let classification = match &j.classification {
        Some(s) => Some(parse_point_kind(s).ok_or_else(|| malformed(format!("bad classification {s:?}")))?),
        None => None,
    };
    let mut exponents = Vec::new();
    for (k, v) in &j.exponents.0 {
        let p = Point::from_str(k).map_err(|_| malformed(format!("bad point {k:?}")))?;
        exponents.push((p, v.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?));
    }
    Ok(Certificate {
        kind,
        operator: operator_from_json(&j.operator)?,
        s: j.s,
        p: j.p.as_ref().map(operator_from_json).transpose()?,
        point,
        classification,
        exponents,
    })
}

pub fn operator_to_string(l: &OrePoly) -> String {
    serde_json::to_string(&operator_to_json(l)).expect("serializable")
}

pub fn operator_from_str(s: &str) -> Result<OrePoly> {
    let j: OperatorJson = serde_json::from_str(s)?;
    operator_from_json(&j)
}

pub fn certificate_to_string(c: &Certificate) -> String {
    serde_json::to_string_pretty(&certificate_to_json(c)).expect("serializable")
}

pub fn certificate_from_str(s: &str) -> Result<Certificate> {
    let j: CertificateJson = serde_json::from_str(s)?;
    certificate_from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn operator_round_trip() {
        for (_, l) in fixtures::all() {
            let j = serde_json::to_string(&operator_to_json(&l)).unwrap();
            let back: OperatorJson = serde_json::from_str(&j).unwrap();
            assert_eq!(operator_from_json(&back).unwrap(), l);
        }
    }

    #[test]
    fn rationals_are_strings() {
        let l = crate::cli::parse_operator("(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48").unwrap();
        let j = serde_json::to_string(&operator_to_json(&l)).unwrap();
        assert!(j.starts_with(r#"{"var":"x","coeffs":[{"num":["1/48"],"den":["1"]}"#), "{j}");
    }

    #[test]
    fn field_order() {
        let c = Certificate {
            kind: CertificateKind::SingularStructure,
            operator: fixtures::exp(),
            s: 1,
            p: None,
            point: Some(Point::Infinity),
            classification: Some(PointKind::Irregular),
            exponents: vec![],
        };
        let s = serde_json::to_string(&certificate_to_json(&c)).unwrap();
        let keys = ["\"kind\"", "\"s\"", "\"operator\"", "\"P\"", "\"point\"", "\"classification\"", "\"exponents\"", "\"tool_version\""];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
        assert_eq!(certificate_from_str(&s).unwrap(), c);
    }
}
