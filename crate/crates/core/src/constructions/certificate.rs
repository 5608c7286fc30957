use std::fmt;

use crate::curve::HyperellipticModel;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::poly::Polynomial;

use super::dispatch;
use super::families;

/// Which construction produced a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    LastGenus,
    GcdGt2,
    LGe2,
    OldCurve,
    PrimeFieldTrinomial,
    Family2,
    EvenChar,
    Q2Artin,
    FallbackSearch,
}

impl Branch {
    pub const ALL: [Branch; 9] = [
        Branch::LastGenus,
        Branch::GcdGt2,
        Branch::LGe2,
        Branch::OldCurve,
        Branch::PrimeFieldTrinomial,
        Branch::Family2,
        Branch::EvenChar,
        Branch::Q2Artin,
        Branch::FallbackSearch,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Branch::LastGenus => "LAST_GENUS",
            Branch::GcdGt2 => "GCD_GT2",
            Branch::LGe2 => "L_GE2",
            Branch::OldCurve => "OLD_CURVE",
            Branch::PrimeFieldTrinomial => "PRIME_FIELD_TRINOMIAL",
            Branch::Family2 => "FAMILY2",
            Branch::EvenChar => "EVEN_CHAR",
            Branch::Q2Artin => "Q2_ARTIN",
            Branch::FallbackSearch => "FALLBACK_SEARCH",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Branch> {
        Branch::ALL.into_iter().find(|b| b.tag() == tag)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Branch parameters; each branch fills in the ones it uses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub l: Option<u64>,
    pub a: Option<FieldElement>,
    pub n: Option<u64>,
    pub b: Option<FieldElement>,
    pub xi: Option<FieldElement>,
    pub alpha: Option<FieldElement>,
    pub beta: Option<FieldElement>,
    pub gamma: Option<FieldElement>,
    pub c: Option<FieldElement>,
    pub d: Option<FieldElement>,
    pub f: Option<Polynomial>,
    /// Enumeration index of a searched polynomial (fallback only).
    pub index: Option<u64>,
    /// Enumeration index of the searched `Q` (even-characteristic fallback).
    pub q_index: Option<u64>,
}

/// Enough information to rebuild a constructed curve deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub branch: Branch,
    /// False when the genus lies below the guaranteed threshold.
    pub guaranteed: bool,
    pub params: Params,
    pub s_value: Option<FieldElement>,
    /// Non-square used for the final quadratic twist (odd `q`).
    pub twist: Option<FieldElement>,
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::Malformed(format!("certificate is missing parameter {name}")))
}

impl ConstructionCertificate {
    pub(crate) fn new(branch: Branch, params: Params) -> Self {
        ConstructionCertificate {
            branch,
            guaranteed: true,
            params,
            s_value: None,
            twist: None,
        }
    }

    /// Rebuilds the model this certificate describes, including the twist.
    pub fn replay(&self, field: &FiniteField, g: u32) -> Result<HyperellipticModel> {
        let p = &self.params;
        let model = match self.branch {
            Branch::LastGenus => {
                let (alpha, beta) = (need(&p.alpha, "alpha")?, need(&p.beta, "beta")?);
                HyperellipticModel::odd(families::last_genus_polynomial(field, alpha, beta)?)?
            }
            Branch::GcdGt2 | Branch::LGe2 | Branch::OldCurve => {
                let f = families::build_f_gla(field, g, need(&p.l, "l")?, need(&p.a, "a")?)?;
                HyperellipticModel::odd(f)?
            }
            Branch::PrimeFieldTrinomial => {
                HyperellipticModel::odd(families::build_special_trinomial(field)?)?
            }
            Branch::Family2 => {
                let f = families::build_family2(
                    field,
                    need(&p.n, "n")?,
                    need(&p.b, "b")?,
                    need(&p.xi, "xi")?,
                )?;
                HyperellipticModel::odd(f)?
            }
            Branch::EvenChar => families::even_char_model(
                field,
                g,
                need(&p.a, "a")?,
                need(&p.b, "b")?,
                need(&p.c, "c")?,
                need(&p.d, "d")?,
            )?,
            Branch::Q2Artin => families::q2_model(&need(&p.f, "f")?)?,
            Branch::FallbackSearch => dispatch::replay_fallback(field, g, p)?,
        };
        match self.twist {
            None => Ok(model),
            Some(nu) => {
                let scaled = model.P().scale(nu)?;
                HyperellipticModel::new(field, model.Q().clone(), scaled)
            }
        }
    }
}
