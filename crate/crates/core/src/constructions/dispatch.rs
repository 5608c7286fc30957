//! Picks a construction for `(q, g)` and verifies what it returns.

use crate::curve::{hasse_weil_min_genus, solutions, HyperellipticModel};
use crate::error::{Error, Result};
use crate::field::{field_of_order, FieldElement, FiniteField};
use crate::poly::{s_quantity, Polynomial};

use super::certificate::{Branch, ConstructionCertificate, Params};
use super::families;
use super::{genus_bound, params_d, params_l};

/// Candidate budget of each fallback stage.
pub const FALLBACK_BUDGET: u64 = 1 << 22;

/// A verified model together with the certificate that rebuilds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub model: HyperellipticModel,
    pub certificate: ConstructionCertificate,
}

/// Smooth, genus `g`, exactly `n1` rational points.
pub(crate) fn verified(model: &HyperellipticModel, g: u32, n1: u64) -> Result<bool> {
    Ok(model.genus() == g && model.is_smooth() && model.count_points(1)? == n1)
}

fn not_found(q: u64, g: u32) -> Error {
    Error::NotFound {
        q: q as u32,
        g,
        hasse_weil_floor: hasse_weil_min_genus(q, 1),
        genus_bound: genus_bound(q).unwrap_or(2),
    }
}

/// Tries one odd-characteristic candidate `y^2 = f`.
fn accept(
    f: Polynomial,
    g: u32,
    branch: Branch,
    params: Params,
    s_value: Option<FieldElement>,
) -> Result<Option<Construction>> {
    let q = f.field().q() as u64;
    if f.degree() != Some(2 * g as usize + 2) {
        return Ok(None);
    }
    let model = HyperellipticModel::odd(f)?;
    if !verified(&model, g, 2 * q + 2)? {
        log::debug!("{branch} candidate for q = {q}, g = {g} failed verification");
        return Ok(None);
    }
    let mut certificate = ConstructionCertificate::new(branch, params);
    certificate.s_value = s_value;
    Ok(Some(Construction { model, certificate }))
}

/// `f_{g,l,a}` for the first `a` in `F_q^*` with `s_{g,l,a} != 0`.
fn scan_a(field: &FiniteField, g: u32, l: u64, branch: Branch) -> Result<Option<Construction>> {
    for a in field.elements().skip(1) {
        let s = s_quantity(field, g as u64, l, a)?;
        if s.is_zero() {
            continue;
        }
        let f = families::build_f_gla(field, g, l, a)?;
        let params = Params {
            l: Some(l),
            a: Some(a),
            ..Params::default()
        };
        if let Some(c) = accept(f, g, branch, params, Some(s))? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Whether `g = (p(2k+1) - 5)/4` for some `k >= 0`.
fn has_exceptional_form(p: u64, g: u64) -> bool {
    let t = 4 * g + 5;
    t.is_multiple_of(p) && (t / p) % 2 == 1
}

fn explicit_branches(field: &FiniteField, g: u32) -> Result<Option<Construction>> {
    let (q, p, n) = (field.q() as u64, field.p() as u64, field.n());
    let g64 = g as u64;

    if q > 5 && 2 * g64 + 3 == q {
        let (f, lg) = families::build_last_genus(field)?;
        let params = Params {
            alpha: Some(lg.alpha),
            beta: Some(lg.beta),
            gamma: Some(lg.gamma),
            ..Params::default()
        };
        if let Some(c) = accept(f, g, Branch::LastGenus, params, None)? {
            return Ok(Some(c));
        }
    }

    let l_max = params_l(q, g64)?;
    let d = params_d(q, g64);
    if l_max == 0 {
        return Ok(None);
    }
    if d > 2 {
        return scan_a(field, g, 1, Branch::GcdGt2);
    }
    if l_max >= 2 {
        let a = field.one();
        for l in [1, 2] {
            let s = s_quantity(field, g64, l, a)?;
            if s.is_zero() {
                continue;
            }
            let f = families::build_f_gla(field, g, l, a)?;
            let params = Params {
                l: Some(l),
                a: Some(a),
                ..Params::default()
            };
            if let Some(c) = accept(f, g, Branch::LGe2, params, Some(s))? {
                return Ok(Some(c));
            }
        }
        return Ok(None);
    }

    let old_curve = n % 2 == 0 || p % 8 == 1 || !has_exceptional_form(p, g64);
    if old_curve {
        scan_a(field, g, 1, Branch::OldCurve)
    } else if n == 1 {
        let f = families::build_special_trinomial(field)?;
        accept(f, g, Branch::PrimeFieldTrinomial, Params::default(), None)
    } else {
        let Ok((n_param, b, xi)) = families::choose_family2_params(field, g) else {
            return Ok(None);
        };
        let f = families::build_family2(field, n_param, b, xi)?;
        let params = Params {
            n: Some(n_param),
            b: Some(b),
            xi: Some(xi),
            ..Params::default()
        };
        accept(f, g, Branch::Family2, params, None)
    }
}

/// Deterministic search: first `f_{g,l,a}` over all `l <= L` and `a`, then
/// monic degree-`(2g+2)` polynomials in index order that are nonzero
/// squares at every `x` in `F_q`.
fn fallback_odd(field: &FiniteField, g: u32) -> Result<Option<Construction>> {
    let q = field.q() as u64;
    let g64 = g as u64;
    let l_max = params_l(q, g64)?;
    for l in 1..=l_max {
        for a in field.elements().skip(1) {
            let f = families::build_f_gla(field, g, l, a)?;
            let params = Params {
                l: Some(l),
                a: Some(a),
                ..Params::default()
            };
            if let Some(c) = accept(f, g, Branch::FallbackSearch, params, None)? {
                return Ok(Some(c));
            }
        }
    }
    let degree = 2 * g as usize + 2;
    let space = (q as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    let limit = space.min(FALLBACK_BUDGET as u128) as u64;
    for index in 0..limit {
        let f = Polynomial::monic_from_index(field, degree, index);
        if !(0..field.q()).all(|x| field.chi_raw(f.eval_raw(x)) == 1) {
            continue;
        }
        let params = Params {
            index: Some(index),
            ..Params::default()
        };
        if let Some(c) = accept(f, g, Branch::FallbackSearch, params, None)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// A smooth genus-`g` model over odd `F_q` with exactly `2q + 2` points.
///
/// Below the guaranteed genus the branches are tried anyway and the
/// certificate is marked `guaranteed = false`.
pub fn construct_maximal_odd(field: &FiniteField, g: u32) -> Result<Construction> {
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    let q = field.q() as u64;
    if (g as u64) < hasse_weil_min_genus(q, 1) || g < 2 {
        return Err(not_found(q, g));
    }
    let found = match explicit_branches(field, g)? {
        Some(c) => Some(c),
        None => {
            log::warn!("fallback search fired for q = {q}, g = {g}");
            fallback_odd(field, g)?
        }
    };
    let mut c = found.ok_or_else(|| not_found(q, g))?;
    c.certificate.guaranteed = g >= genus_bound(q)?;
    Ok(c)
}

fn rootless(poly: &Polynomial) -> bool {
    !poly.has_root()
}

/// Characteristic-2 search: `Q` monic of degree `g + 1` without roots,
/// `P = t Q^2 + R` with `Tr(t) = 1` and `deg R <= 2g + 1`.
fn fallback_even(field: &FiniteField, g: u32) -> Result<Option<Construction>> {
    let q = field.q() as u64;
    let t = (0..field.q())
        .find(|&x| field.trace_raw(x) == 1)
        .expect("trace is surjective");
    let q_deg = g as usize + 1;
    let r_len = 2 * g as usize + 2;
    let q_space = (q as u128).checked_pow(q_deg as u32).unwrap_or(u128::MAX);
    let r_space = (q as u128).checked_pow(r_len as u32).unwrap_or(u128::MAX);
    let mut budget = FALLBACK_BUDGET;
    for q_index in 0..q_space.min(u64::MAX as u128) as u64 {
        let q_poly = Polynomial::monic_from_index(field, q_deg, q_index);
        if !rootless(&q_poly) {
            continue;
        }
        let tq2 = q_poly.mul_unchecked(&q_poly).scale_raw(t);
        let q_vals: Vec<u32> = (0..field.q()).map(|x| q_poly.eval_raw(x)).collect();
        for index in 0..r_space.min(u64::MAX as u128) as u64 {
            if budget == 0 {
                return Ok(None);
            }
            budget -= 1;
            let r = r_from_index(field, r_len, index);
            let p_poly = tq2.add_unchecked(&r);
            let pointless = (0..field.q())
                .all(|x| solutions(field, q_vals[x as usize], p_poly.eval_raw(x)) == 0);
            if !pointless {
                continue;
            }
            let model = HyperellipticModel::new(field, q_poly.clone(), p_poly)?;
            if verified(&model, g, 0)? {
                let params = Params {
                    q_index: Some(q_index),
                    index: Some(index),
                    ..Params::default()
                };
                return Ok(Some(Construction {
                    model,
                    certificate: ConstructionCertificate::new(Branch::FallbackSearch, params),
                }));
            }
        }
    }
    Ok(None)
}

/// The polynomial with `len` coefficients spelled by `index` in base `q`.
fn r_from_index(field: &FiniteField, len: usize, mut index: u64) -> Polynomial {
    let q = field.q() as u64;
    let coeffs = (0..len)
        .map(|_| {
            let d = (index % q) as u32;
            index /= q;
            d
        })
        .collect();
    Polynomial::from_raw(field, coeffs)
}

/// Rebuilds a `FALLBACK_SEARCH` model from its indices.
pub(crate) fn replay_fallback(
    field: &FiniteField,
    g: u32,
    p: &Params,
) -> Result<HyperellipticModel> {
    if field.is_odd() {
        if let (Some(l), Some(a)) = (p.l, p.a) {
            return HyperellipticModel::odd(families::build_f_gla(field, g, l, a)?);
        }
        let index = p
            .index
            .ok_or_else(|| Error::Malformed("fallback certificate lacks an index".into()))?;
        let degree = 2 * g as usize + 2;
        return HyperellipticModel::odd(Polynomial::monic_from_index(field, degree, index));
    }
    let (Some(q_index), Some(index)) = (p.q_index, p.index) else {
        return Err(Error::Malformed(
            "fallback certificate lacks q_index or index".into(),
        ));
    };
    let t = (0..field.q())
        .find(|&x| field.trace_raw(x) == 1)
        .expect("trace is surjective");
    let q_poly = Polynomial::monic_from_index(field, g as usize + 1, q_index);
    let r = r_from_index(field, 2 * g as usize + 2, index);
    let p_poly = q_poly.mul_unchecked(&q_poly).scale_raw(t).add_unchecked(&r);
    HyperellipticModel::new(field, q_poly, p_poly)
}

/// A smooth genus-`g` hyperelliptic model over `F_q` with no rational
/// points.
pub fn construct_pointless(q: u64, g: u32) -> Result<Construction> {
    let field = field_of_order(q)?;
    let bound = genus_bound(q)?;
    if (g as u64) < hasse_weil_min_genus(q, 1) || g < 2 {
        return Err(not_found(q, g));
    }
    let mut c = if field.is_odd() {
        let maximal = construct_maximal_odd(&field, g)?;
        let (model, nu) = maximal.model.quadratic_twist()?;
        let mut certificate = maximal.certificate;
        certificate.twist = Some(nu);
        Construction { model, certificate }
    } else if q == 2 {
        families::build_q2(g)?
    } else if g >= bound {
        families::build_even_char(&field, g)?
    } else {
        log::warn!("fallback search fired for q = {q}, g = {g}");
        fallback_even(&field, g)?.ok_or_else(|| not_found(q, g))?
    };
    if !verified(&c.model, g, 0)? {
        return Err(not_found(q, g));
    }
    c.certificate.guaranteed = g >= bound;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q7_g2_is_last_genus() {
        let f7 = field_of_order(7).unwrap();
        let c = construct_maximal_odd(&f7, 2).unwrap();
        assert_eq!(c.certificate.branch, Branch::LastGenus);
        assert_eq!(
            c.model.P(),
            &Polynomial::from_ints(&f7, &[1, 0, 0, 0, 0, 0, 1])
        );
        assert_eq!(c.model.count_points(1).unwrap(), 16);

        let c = construct_pointless(7, 2).unwrap();
        assert_eq!(
            c.model.P(),
            &Polynomial::from_ints(&f7, &[3, 0, 0, 0, 0, 0, 3])
        );
        assert_eq!(c.certificate.twist, Some(f7.from_int(3)));
        assert_eq!(c.model.count_points(1).unwrap(), 0);
    }

    #[test]
    fn q3_g2_is_l_ge2() {
        let f3 = field_of_order(3).unwrap();
        let c = construct_maximal_odd(&f3, 2).unwrap();
        assert_eq!(c.certificate.branch, Branch::LGe2);
        assert_eq!(c.certificate.params.l, Some(1));
        assert_eq!(c.certificate.s_value, Some(f3.one()));
        assert_eq!(
            c.model.P(),
            &Polynomial::from_ints(&f3, &[1, 0, 0, 0, 2, 0, 1])
        );
        assert_eq!(c.model.count_points(1).unwrap(), 8);
    }

    #[test]
    fn q7_g3_routes_through_case_d() {
        let f7 = field_of_order(7).unwrap();
        let c = construct_maximal_odd(&f7, 3).unwrap();
        // 4*3 + 5 = 17 is not a multiple of 7, so the old-curve branch applies
        assert_eq!(c.certificate.branch, Branch::OldCurve);
        assert!(c.model.is_maximal().unwrap());
    }

    #[test]
    fn q7_g4_uses_the_special_trinomial() {
        let c = construct_pointless(7, 4).unwrap();
        assert_eq!(c.certificate.branch, Branch::PrimeFieldTrinomial);
        assert_eq!(c.model.count_points(1).unwrap(), 0);
    }

    #[test]
    fn exceptional_form() {
        // (7(2k+1) - 5)/4 takes the values 4, 11, ...
        assert!(has_exceptional_form(7, 4));
        assert!(has_exceptional_form(7, 11));
        assert!(!has_exceptional_form(7, 3));
        // 4g + 5 = 15 is an odd multiple of 5 but 13 is no multiple of 3
        assert!(has_exceptional_form(5, 5));
        assert!(!has_exceptional_form(3, 2));
    }

    #[test]
    fn genus_two_over_f13_is_not_found() {
        match construct_pointless(13, 2) {
            Err(Error::NotFound {
                hasse_weil_floor, ..
            }) => assert_eq!(hasse_weil_floor, 2),
            other => panic!("expected not-found, got {other:?}"),
        }
        assert!(matches!(
            construct_pointless(13, 1),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn even_q_routes() {
        let c = construct_pointless(4, 3).unwrap();
        assert_eq!(c.certificate.branch, Branch::EvenChar);
        let c = construct_pointless(2, 5).unwrap();
        assert_eq!(c.certificate.branch, Branch::Q2Artin);
        assert!(construct_pointless(6, 3).is_err());
    }

    #[test]
    fn even_fallback_below_bound_replays() {
        let c = construct_pointless(4, 2).unwrap();
        assert_eq!(c.certificate.branch, Branch::FallbackSearch);
        assert!(!c.certificate.guaranteed);
        let f4 = field_of_order(4).unwrap();
        assert_eq!(c.certificate.replay(&f4, 2).unwrap(), c.model);
    }

    #[test]
    fn unguaranteed_odd_genus_is_flagged() {
        // g_11 = 4; genus 3 is below it but still reachable
        let c = construct_pointless(11, 3).unwrap();
        assert!(!c.certificate.guaranteed);
        assert_eq!(c.model.count_points(1).unwrap(), 0);
    }
}
