//! JSON encodings of fields, curves, certificates and census reports.
//!
//! An element is its little-endian coefficient list over `F_p`, a polynomial
//! is a little-endian list of elements. Keys keep declaration order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::census::CensusReport;
use crate::constructions::{Branch, Construction, ConstructionCertificate, Params};
use crate::curve::HyperellipticModel;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::poly::Polynomial;

pub const SCHEMA_VERSION: u32 = 1;

pub type ElementJson = Vec<u32>;
pub type PolynomialJson = Vec<ElementJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub field: FieldJson,
    #[serde(rename = "Q")]
    pub q_poly: PolynomialJson,
    #[serde(rename = "P")]
    pub p_poly: PolynomialJson,
    pub genus: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<PolynomialJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub branch: String,
    pub guaranteed: bool,
    pub params: ParamsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_value: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub smooth: bool,
    pub genus: u32,
    pub n1: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nk: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub schema_version: u32,
    pub curve: CurveJson,
    pub certificate: CertificateJson,
    pub verification: VerificationJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReportJson {
    pub q: u64,
    pub g: u32,
    pub total_models_scanned: u64,
    pub pointless_count: u64,
    pub first_pointless: Option<CurveJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

pub fn field_to_json(field: &FiniteField) -> FieldJson {
    FieldJson {
        p: field.p() as u64,
        n: field.n(),
        modulus: field.modulus().to_vec(),
    }
}

pub fn field_from_json(json: &FieldJson) -> Result<FiniteField> {
    let field = FiniteField::with_modulus(json.p, &json.modulus)?;
    if field.n() != json.n {
        return Err(Error::Malformed(format!(
            "field degree {} does not match modulus of degree {}",
            json.n,
            field.n()
        )));
    }
    Ok(field)
}

pub fn element_to_json(field: &FiniteField, x: FieldElement) -> Result<ElementJson> {
    field.coeffs(x)
}

pub fn element_from_json(field: &FiniteField, json: &[u32]) -> Result<FieldElement> {
    field.element(json)
}

pub fn poly_to_json(poly: &Polynomial) -> PolynomialJson {
    let field = poly.field();
    poly.indices()
        .iter()
        .map(|&c| field.digits_vec(c))
        .collect()
}

pub fn poly_from_json(field: &FiniteField, json: &[ElementJson]) -> Result<Polynomial> {
    let coeffs = json
        .iter()
        .map(|c| field.element(c))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::new(field, &coeffs)
}

pub fn curve_to_json(model: &HyperellipticModel) -> CurveJson {
    CurveJson {
        field: field_to_json(model.field()),
        q_poly: poly_to_json(model.Q()),
        p_poly: poly_to_json(model.P()),
        genus: model.genus(),
    }
}

/// Rebuilds the model; the stored genus is a claim and is not checked here.
pub fn curve_from_json(json: &CurveJson) -> Result<HyperellipticModel> {
    let field = field_from_json(&json.field)?;
    let q_poly = poly_from_json(&field, &json.q_poly)?;
    let p_poly = poly_from_json(&field, &json.p_poly)?;
    HyperellipticModel::new(&field, q_poly, p_poly)
}

fn opt_element(field: &FiniteField, x: Option<FieldElement>) -> Result<Option<ElementJson>> {
    x.map(|x| element_to_json(field, x)).transpose()
}

fn opt_from(field: &FiniteField, x: &Option<ElementJson>) -> Result<Option<FieldElement>> {
    x.as_deref()
        .map(|x| element_from_json(field, x))
        .transpose()
}

pub fn certificate_to_json(
    field: &FiniteField,
    cert: &ConstructionCertificate,
) -> Result<CertificateJson> {
    let p = &cert.params;
    let params = ParamsJson {
        l: p.l,
        a: opt_element(field, p.a)?,
        n: p.n,
        b: opt_element(field, p.b)?,
        xi: opt_element(field, p.xi)?,
        alpha: opt_element(field, p.alpha)?,
        beta: opt_element(field, p.beta)?,
        gamma: opt_element(field, p.gamma)?,
        c: opt_element(field, p.c)?,
        d: opt_element(field, p.d)?,
        f: p.f.as_ref().map(poly_to_json),
        index: p.index,
        q_index: p.q_index,
    };
    Ok(CertificateJson {
        branch: cert.branch.tag().to_string(),
        guaranteed: cert.guaranteed,
        params,
        s_value: opt_element(field, cert.s_value)?,
        twist: opt_element(field, cert.twist)?,
    })
}

/// `field` is the curve's field; the `f` parameter of `Q2_ARTIN` lives over
/// `F_2`, which is the same field in that case.
pub fn certificate_from_json(
    field: &FiniteField,
    json: &CertificateJson,
) -> Result<ConstructionCertificate> {
    let branch = Branch::from_tag(&json.branch)
        .ok_or_else(|| Error::Malformed(format!("unknown branch tag {:?}", json.branch)))?;
    let p = &json.params;
    let params = Params {
        l: p.l,
        a: opt_from(field, &p.a)?,
        n: p.n,
        b: opt_from(field, &p.b)?,
        xi: opt_from(field, &p.xi)?,
        alpha: opt_from(field, &p.alpha)?,
        beta: opt_from(field, &p.beta)?,
        gamma: opt_from(field, &p.gamma)?,
        c: opt_from(field, &p.c)?,
        d: opt_from(field, &p.d)?,
        f: p.f
            .as_deref()
            .map(|f| poly_from_json(field, f))
            .transpose()?,
        index: p.index,
        q_index: p.q_index,
    };
    Ok(ConstructionCertificate {
        branch,
        guaranteed: json.guaranteed,
        params,
        s_value: opt_from(field, &json.s_value)?,
        twist: opt_from(field, &json.twist)?,
    })
}

/// Recomputes smoothness, genus and `N_k` for each `k` in `ks` (`N_1`
/// always).
pub fn verify_model(model: &HyperellipticModel, ks: &[u32]) -> Result<VerificationJson> {
    let n1 = model.count_points(1)?;
    let nk = if ks.is_empty() {
        None
    } else {
        let mut map = BTreeMap::new();
        for &k in ks {
            map.insert(k.to_string(), model.count_points(k)?);
        }
        Some(map)
    };
    Ok(VerificationJson {
        smooth: model.is_smooth(),
        genus: model.genus(),
        n1,
        nk,
    })
}

impl CurveDocument {
    pub fn from_construction(c: &Construction) -> Result<CurveDocument> {
        Ok(CurveDocument {
            schema_version: SCHEMA_VERSION,
            curve: curve_to_json(&c.model),
            certificate: certificate_to_json(c.model.field(), &c.certificate)?,
            verification: verify_model(&c.model, &[])?,
        })
    }
}

impl CensusReportJson {
    pub fn from_report(report: &CensusReport, timing: bool) -> CensusReportJson {
        CensusReportJson {
            q: report.q,
            g: report.g,
            total_models_scanned: report.total_models_scanned,
            pointless_count: report.pointless_count,
            first_pointless: report.first_pointless.as_ref().map(curve_to_json),
            wall_time: timing.then_some(report.wall_time),
        }
    }
}

/// Indented JSON in which arrays without nested objects stay on one line.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn has_object(value: &Value) -> bool {
    match value {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

fn write_value(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, depth + 1, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if has_object(value) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(v, depth + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::construct_pointless;
    use crate::field::field_of_order;

    #[test]
    fn field_round_trip() {
        let f9 = field_of_order(9).unwrap();
        let json = field_to_json(&f9);
        assert_eq!(json.modulus, vec![1, 0, 1]);
        assert_eq!(field_from_json(&json).unwrap(), f9);
        let bad = FieldJson {
            p: 3,
            n: 3,
            modulus: vec![1, 0, 1],
        };
        assert!(field_from_json(&bad).is_err());
        let reducible = FieldJson {
            p: 3,
            n: 2,
            modulus: vec![2, 0, 1],
        };
        assert!(field_from_json(&reducible).is_err());
    }

    #[test]
    fn document_round_trip() {
        for (q, g) in [(7, 2), (9, 4), (4, 3), (2, 3)] {
            let c = construct_pointless(q, g).unwrap();
            let doc = CurveDocument::from_construction(&c).unwrap();
            let text = to_pretty(&doc).unwrap();
            let back: CurveDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(back, doc);
            let model = curve_from_json(&back.curve).unwrap();
            assert_eq!(model, c.model);
            let cert = certificate_from_json(model.field(), &back.certificate).unwrap();
            assert_eq!(cert, c.certificate);
        }
    }

    #[test]
    fn key_order_and_layout() {
        let c = construct_pointless(7, 2).unwrap();
        let text = to_pretty(&CurveDocument::from_construction(&c).unwrap()).unwrap();
        let keys = [
            "\"schema_version\"",
            "\"curve\"",
            "\"certificate\"",
            "\"verification\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"P\": [[3],[0],[0],[0],[0],[0],[3]]"));
        assert!(text.contains("\"branch\": \"LAST_GENUS\""));
        assert!(text.contains("\"twist\": [3]"));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let f7 = field_of_order(7).unwrap();
        assert!(poly_from_json(&f7, &[vec![7]]).is_err());
        assert!(poly_from_json(&f7, &[vec![1, 0]]).is_err());
        let cert = CertificateJson {
            branch: "NOPE".into(),
            guaranteed: true,
            params: ParamsJson::default(),
            s_value: None,
            twist: None,
        };
        assert!(certificate_from_json(&f7, &cert).is_err());
    }
}
