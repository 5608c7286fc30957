//! Hyperelliptic models `y^2 + Q(x) y = P(x)`: genus, smoothness, exact point
//! counts over `F_{q^k}`, quadratic twists, and the Hasse-Weil genus floor.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{make_field, FiniteField, MAX_FIELD_SIZE};
use crate::numtheory;
use crate::poly::{fmt_element, Polynomial};

/// The curve `y^2 + Q(x) y = P(x)` over `F_q`, with
/// `2g+1 <= max(2 deg Q, deg P) <= 2g+2`.
#[derive(Clone, PartialEq, Eq)]
pub struct HyperellipticModel {
    field: FiniteField,
    q_poly: Polynomial,
    p_poly: Polynomial,
    genus: u32,
}

impl fmt::Debug for HyperellipticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HyperellipticModel({self}, genus {})", self.genus)
    }
}

impl fmt::Display for HyperellipticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q_poly.is_zero() {
            write!(f, "y^2 = {}", self.p_poly)
        } else {
            write!(f, "y^2 + ({})*y = {}", self.q_poly, self.p_poly)
        }
    }
}

/// `max(2 deg Q, deg P)`, treating the zero polynomial as having no degree.
fn weighted_degree(q_poly: &Polynomial, p_poly: &Polynomial) -> Option<usize> {
    let dq = q_poly.degree().map(|d| 2 * d);
    dq.max(p_poly.degree())
}

/// `g = ceil(D / 2) - 1` for the weighted degree `D`.
fn genus_from_degree(d: usize) -> u32 {
    (d.div_ceil(2) - 1) as u32
}

impl HyperellipticModel {
    pub fn new(field: &FiniteField, q_poly: Polynomial, p_poly: Polynomial) -> Result<Self> {
        if q_poly.field() != field || p_poly.field() != field {
            return Err(Error::ForeignElement);
        }
        if !field.is_odd() && q_poly.is_zero() {
            return Err(Error::DegreeCondition(
                "Q must be nonzero in characteristic 2".into(),
            ));
        }
        let d = weighted_degree(&q_poly, &p_poly)
            .filter(|&d| d >= 1)
            .ok_or_else(|| {
                Error::DegreeCondition("max(2 deg Q, deg P) must be at least 1".into())
            })?;
        Ok(HyperellipticModel {
            field: field.clone(),
            q_poly,
            p_poly,
            genus: genus_from_degree(d),
        })
    }

    /// `y^2 = P(x)`, odd characteristic only.
    pub fn odd(p_poly: Polynomial) -> Result<Self> {
        let field = p_poly.field().clone();
        HyperellipticModel::new(&field, Polynomial::zero(&field), p_poly)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    #[allow(non_snake_case)]
    pub fn Q(&self) -> &Polynomial {
        &self.q_poly
    }

    #[allow(non_snake_case)]
    pub fn P(&self) -> &Polynomial {
        &self.p_poly
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The chart at infinity: `(x^{g+1} Q(1/x), x^{2g+2} P(1/x))`.
    pub fn infinity_chart(&self) -> (Polynomial, Polynomial) {
        let g = self.genus as usize;
        let q_rev = self
            .q_poly
            .reversed(g + 1)
            .expect("degree condition bounds deg Q by g+1");
        let p_rev = self
            .p_poly
            .reversed(2 * g + 2)
            .expect("degree condition bounds deg P by 2g+2");
        (q_rev, p_rev)
    }

    /// The same curve described from the other chart (`x -> 1/x`).
    pub fn swap_charts(&self) -> Result<Self> {
        let (q_rev, p_rev) = self.infinity_chart();
        let swapped = HyperellipticModel::new(&self.field, q_rev, p_rev)?;
        if swapped.genus != self.genus {
            return Err(Error::DegreeCondition(
                "chart at infinity has lower weighted degree".into(),
            ));
        }
        Ok(swapped)
    }

    /// Projective smoothness.
    ///
    /// Odd characteristic: `Q^2 + 4P` is squarefree of degree at least
    /// `2g+1` (for `Q = 0` this is squarefreeness of `P`). Characteristic 2:
    /// `Q` and `Q'^2 P + P'^2` are coprime on both affine charts.
    pub fn is_smooth(&self) -> bool {
        if self.field.is_odd() {
            let four = self.field.from_int(4);
            let disc = self
                .q_poly
                .mul_unchecked(&self.q_poly)
                .add_unchecked(&self.p_poly.scale(four).expect("same field"));
            let deg_ok = disc.degree().is_some_and(|d| d > 2 * self.genus as usize);
            deg_ok && disc.is_squarefree().unwrap_or(false)
        } else {
            let (q_rev, p_rev) = self.infinity_chart();
            even_chart_smooth(&self.q_poly, &self.p_poly) && even_chart_smooth(&q_rev, &p_rev)
        }
    }

    /// `N_k`: the number of points over `F_{q^k}`.
    pub fn count_points(&self, k: u32) -> Result<u64> {
        let ext = extension(&self.field, k)?;
        let emb = self.field.embedding(&ext)?;
        let q_ext = self.q_poly.embed(&emb)?;
        let p_ext = self.p_poly.embed(&emb)?;
        let affine: u64 = (0..ext.q())
            .map(|x| solutions(&ext, q_ext.eval_raw(x), p_ext.eval_raw(x)) as u64)
            .sum();
        let (q_rev, p_rev) = self.infinity_chart();
        let at_infinity = solutions(
            &ext,
            emb.apply_raw(q_rev.indices().first().copied().unwrap_or(0)),
            emb.apply_raw(p_rev.indices().first().copied().unwrap_or(0)),
        ) as u64;
        Ok(affine + at_infinity)
    }

    /// `q + 1 - N_1`.
    pub fn frobenius_trace(&self) -> Result<i64> {
        Ok(self.field.q() as i64 + 1 - self.count_points(1)? as i64)
    }

    /// `P -> nu P` for the first non-square `nu`; returns the twist and `nu`.
    pub fn quadratic_twist(&self) -> Result<(HyperellipticModel, crate::field::FieldElement)> {
        if !self.field.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if !self.q_poly.is_zero() {
            return Err(Error::InvalidParameter(
                "twist needs a model with Q = 0".into(),
            ));
        }
        let nu = self.field.first_non_square()?;
        let twisted = HyperellipticModel {
            field: self.field.clone(),
            q_poly: self.q_poly.clone(),
            p_poly: self.p_poly.scale_raw(nu.index()),
            genus: self.genus,
        };
        Ok((twisted, nu))
    }

    /// `N_1 = 2q + 2`.
    pub fn is_maximal(&self) -> Result<bool> {
        Ok(self.count_points(1)? == 2 * self.field.q() as u64 + 2)
    }

    /// `N_k = 0`.
    pub fn is_pointless(&self, k: u32) -> Result<bool> {
        Ok(self.count_points(k)? == 0)
    }

    /// Renders the model with its coefficients, for text output.
    pub fn describe(&self) -> String {
        format!("{self} over F_{}", self.field.q())
    }
}

fn even_chart_smooth(q_poly: &Polynomial, p_poly: &Polynomial) -> bool {
    let dq = q_poly.derivative();
    let dp = p_poly.derivative();
    let r = dq
        .mul_unchecked(&dq)
        .mul_unchecked(p_poly)
        .add_unchecked(&dp.mul_unchecked(&dp));
    q_poly.gcd_unchecked(&r).degree() == Some(0)
}

/// `F_{q^k}` built on the same prime, checked against the size cap.
pub(crate) fn extension(field: &FiniteField, k: u32) -> Result<FiniteField> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "extension degree must be at least 1".into(),
        ));
    }
    if k == 1 {
        return Ok(field.clone());
    }
    let size = (field.q() as u128).checked_pow(k);
    if size.is_none_or(|s| s > MAX_FIELD_SIZE as u128) {
        return Err(Error::FieldTooLarge {
            p: field.p() as u64,
            n: field.n() * k,
        });
    }
    make_field(field.p() as u64, field.n() * k)
}

/// Number of `y` in the field with `y^2 + c y = e`.
pub(crate) fn solutions(field: &FiniteField, c: u32, e: u32) -> u32 {
    if field.is_odd() {
        // discriminant c^2 + 4e
        let disc = field.add_raw(field.mul_raw(c, c), field.mul_raw(field.int_raw(4), e));
        (1 + field.chi_raw(disc) as i32) as u32
    } else if c == 0 {
        1
    } else {
        // y = c z turns the equation into z^2 + z = e / c^2
        let t = field.mul_raw(e, field.inv_raw(field.mul_raw(c, c)));
        if field.trace_raw(t) == 0 {
            2
        } else {
            0
        }
    }
}

/// Least genus compatible with `N_k = 0`:
/// `ceil((q^k + 1) / floor(2 q^{k/2}))`.
pub fn hasse_weil_min_genus(q: u64, k: u32) -> u64 {
    let qk = (q as u128).pow(k);
    let width = numtheory::isqrt(4 * qk);
    (qk + 1).div_ceil(width) as u64
}

/// The Fermat plane curve `X^d + Y^d + Z^d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    field: FiniteField,
    degree: u32,
}

impl PlaneCurve {
    pub fn fermat(field: &FiniteField, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameter("degree must be at least 1".into()));
        }
        Ok(PlaneCurve {
            field: field.clone(),
            degree,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Counts projective points by enumerating normalized representatives.
    pub fn count_points(&self) -> u64 {
        let f = &self.field;
        let d = self.degree as u64;
        let pw: Vec<u32> = (0..f.q()).map(|a| f.pow_raw(a, d)).collect();
        let on_curve = |x: u32, y: u32, z: u32| {
            f.add_raw(f.add_raw(pw[x as usize], pw[y as usize]), pw[z as usize]) == 0
        };
        let mut count = 0;
        // (x : y : 1)
        for x in 0..f.q() {
            for y in 0..f.q() {
                count += on_curve(x, y, 1) as u64;
            }
        }
        // (x : 1 : 0)
        for x in 0..f.q() {
            count += on_curve(x, 1, 0) as u64;
        }
        // (1 : 0 : 0)
        count += on_curve(1, 0, 0) as u64;
        count
    }
}

/// The degree-`(q-1)` Fermat curve, which has no points when `p > 3`.
pub fn fermat_pointless(q: u64) -> Result<PlaneCurve> {
    let field = crate::field::field_of_order(q)?;
    if field.p() <= 3 {
        return Err(Error::InvalidParameter(format!(
            "Fermat example needs characteristic above 3, got {}",
            field.p()
        )));
    }
    PlaneCurve::fermat(&field, field.q() - 1)
}

/// Human-readable coefficient, used by text renderers.
pub fn format_element(field: &FiniteField, x: crate::field::FieldElement) -> String {
    fmt_element(field, x.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn odd_model(q: u64, p: &[i64]) -> HyperellipticModel {
        let f = crate::field::field_of_order(q).unwrap();
        HyperellipticModel::odd(Polynomial::from_ints(&f, p)).unwrap()
    }

    #[test]
    fn genus_from_degrees() {
        assert_eq!(odd_model(3, &[0, 1, 0, 1]).genus(), 1);
        assert_eq!(odd_model(7, &[1, 0, 0, 0, 0, 0, 1]).genus(), 2);
        let f4 = make_field(2, 2).unwrap();
        let err = HyperellipticModel::new(
            &f4,
            Polynomial::zero(&f4),
            Polynomial::from_ints(&f4, &[0, 0, 0, 0, 1]),
        );
        assert!(matches!(err, Err(Error::DegreeCondition(_))));
        let f3 = make_field(3, 1).unwrap();
        assert!(HyperellipticModel::odd(Polynomial::from_ints(&f3, &[1])).is_err());
    }

    #[test]
    fn smoothness_examples() {
        assert!(odd_model(3, &[1, 0, 0, 0, 2, 0, 1]).is_smooth());
        assert!(!odd_model(3, &[0, 0, 0, 0, 0, 0, 1]).is_smooth());

        let f4 = make_field(2, 2).unwrap();
        let w = 2;
        let q_poly = Polynomial::from_indices(&f4, &[1, 1, 0, 0, 1]).unwrap();
        let h = Polynomial::from_indices(&f4, &[w, 0, 1, 0, 0, 0, 0, 0, 1]).unwrap();
        let p_poly = h.scale(f4.from_index(w).unwrap()).unwrap();
        let m = HyperellipticModel::new(&f4, q_poly, p_poly).unwrap();
        assert_eq!(m.genus(), 3);
        assert!(m.is_smooth());
    }

    #[test]
    fn point_count_examples() {
        assert_eq!(odd_model(3, &[0, 1, 0, 1]).count_points(1).unwrap(), 4);
        assert_eq!(
            odd_model(7, &[1, 0, 0, 0, 0, 0, 1])
                .count_points(1)
                .unwrap(),
            16
        );

        let f2 = make_field(2, 1).unwrap();
        let m = HyperellipticModel::new(&f2, Polynomial::one(&f2), Polynomial::x(&f2)).unwrap();
        assert_eq!(m.genus(), 0);
        assert_eq!(m.count_points(1).unwrap(), 3);
        assert_eq!(m.frobenius_trace().unwrap(), 0);
    }

    #[test]
    fn twist_of_maximal_is_pointless() {
        let m = odd_model(7, &[1, 0, 0, 0, 0, 0, 1]);
        assert!(m.is_maximal().unwrap());
        assert_eq!(m.frobenius_trace().unwrap(), -1 - 7);
        let (t, nu) = m.quadratic_twist().unwrap();
        assert_eq!(nu.index(), 3);
        assert_eq!(
            t.P(),
            &Polynomial::from_ints(m.field(), &[3, 0, 0, 0, 0, 0, 3])
        );
        assert!(t.is_pointless(1).unwrap());
        assert_eq!(t.frobenius_trace().unwrap(), 8);
    }

    #[test]
    fn genus_zero_is_never_pointless() {
        let m = odd_model(5, &[2, 0, 1]);
        assert_eq!(m.genus(), 0);
        assert!(!m.is_pointless(1).unwrap());
    }

    #[test]
    fn extension_cap() {
        let m = odd_model(7, &[1, 0, 0, 0, 0, 0, 1]);
        assert!(m.count_points(8).is_err());
        assert!(m.count_points(0).is_err());
    }

    #[test]
    fn hasse_weil_examples() {
        assert_eq!(hasse_weil_min_genus(13, 1), 2);
        assert_eq!(hasse_weil_min_genus(2, 1), 2);
        assert_eq!(hasse_weil_min_genus(4, 1), 2);
        assert_eq!(hasse_weil_min_genus(14 * 14, 1), 8);
    }

    #[test]
    fn fermat_examples() {
        assert_eq!(fermat_pointless(5).unwrap().count_points(), 0);
        assert_eq!(fermat_pointless(7).unwrap().count_points(), 0);
        assert!(fermat_pointless(3).is_err());
        // the degree-1 Fermat curve is a line with q + 1 points
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(PlaneCurve::fermat(&f5, 1).unwrap().count_points(), 6);
    }
}
