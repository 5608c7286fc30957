//! The explicit polynomial families.

use crate::curve::HyperellipticModel;
use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement, FiniteField};
use crate::numtheory;
use crate::poly::{find_irreducible, Polynomial};

use super::certificate::{Branch, ConstructionCertificate, Params};
use super::dispatch::{verified, Construction};
use super::params_l;

fn require_odd(field: &FiniteField) -> Result<()> {
    if field.is_odd() {
        Ok(())
    } else {
        Err(Error::EvenCharacteristic)
    }
}

fn require_member(field: &FiniteField, xs: &[FieldElement]) -> Result<()> {
    if xs.iter().all(|&x| field.contains(x)) {
        Ok(())
    } else {
        Err(Error::ForeignElement)
    }
}

/// `x^{2g+2} - x^{2g+2-l(q-1)} + a^2`.
pub fn build_f_gla(field: &FiniteField, g: u32, l: u64, a: FieldElement) -> Result<Polynomial> {
    require_odd(field)?;
    require_member(field, &[a])?;
    let q = field.q() as u64;
    let limit = params_l(q, g as u64)?;
    if l == 0 || l > limit {
        return Err(Error::InvalidParameter(format!(
            "l = {l} outside 1..=L(q, g) = {limit}"
        )));
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let top = 2 * g as usize + 2;
    let mid = top - (l * (q - 1)) as usize;
    let a2 = field.mul(a, a)?;
    Polynomial::from_terms(
        field,
        &[(field.one(), top), (field.from_int(-1), mid), (a2, 0)],
    )
}

/// Euler's criterion for an element of the prime subfield, computed in `F_p`.
fn chi_prime(field: &FiniteField, x: FieldElement) -> i8 {
    let p = field.p() as u64;
    if x.is_zero() {
        0
    } else if field.pow_raw(x.index(), (p - 1) / 2) == 1 {
        1
    } else {
        -1
    }
}

/// `x^{q-1+n} + b^2 x^{2n} - (2 b^2 xi + 1) x^n + b^2 xi^2`.
pub fn build_family2(
    field: &FiniteField,
    n: u64,
    b: FieldElement,
    xi: FieldElement,
) -> Result<Polynomial> {
    require_odd(field)?;
    require_member(field, &[b, xi])?;
    let (q, p) = (field.q() as u64, field.p() as u64);
    if field.n() == 1 || field.n().is_multiple_of(2) {
        return Err(Error::InvalidParameter(
            "family needs q to be neither prime nor a square".into(),
        ));
    }
    let n_ok = n.is_multiple_of(2)
        && n > 0
        && n < q - 1
        && numtheory::gcd(n, q - 1) == 2
        && (2 * n) % p == 1;
    if !n_ok {
        return Err(Error::InvalidParameter(format!(
            "n = {n} must be even, 0 < n < q-1, gcd(n, q-1) = 2 and n = 1/2 mod p"
        )));
    }
    if !field.in_prime_field(b) || !field.in_prime_field(xi) || b.is_zero() || xi.is_zero() {
        return Err(Error::InvalidParameter(
            "b and xi must be nonzero elements of F_p".into(),
        ));
    }
    if chi_prime(field, xi) != -1 {
        return Err(Error::InvalidParameter(
            "xi must be a non-square in F_p".into(),
        ));
    }
    let f = field;
    let b2 = f.mul(b, b)?;
    let middle = f.neg(f.add(f.mul(f.from_int(2), f.mul(b2, xi)?)?, f.one())?)?;
    let constant = f.mul(b2, f.mul(xi, xi)?)?;
    let n = n as usize;
    Polynomial::from_terms(
        f,
        &[
            (f.one(), (q - 1) as usize + n),
            (b2, 2 * n),
            (middle, n),
            (constant, 0),
        ],
    )
}

/// Parameters `(n, b, xi)` for [`build_family2`] in genus `g`.
///
/// `n = 2g+2-(q-1)`. For `p = 3` the only candidate is `b = 1, xi = -1`; for
/// `p = 5` the candidates `(1, 2)` and `(2, -2)` are tried in that order;
/// otherwise `xi` is the first non-residue of `F_p` and `b` the first element
/// of `F_p^*` with `b^4 xi^2 + 4 b^2 xi + 1` a nonzero square and a
/// squarefree result.
pub fn choose_family2_params(
    field: &FiniteField,
    g: u32,
) -> Result<(u64, FieldElement, FieldElement)> {
    require_odd(field)?;
    let (q, p) = (field.q() as u64, field.p() as u64);
    let g = g as u64;
    let in_range = 2 * g + 1 >= q && g + 2 < q;
    let coprime = numtheory::gcd(2 * g + 2, q - 1) == 2;
    let congruent = (4 * g + 5).is_multiple_of(p);
    if !(in_range && coprime && congruent) {
        return Err(Error::InvalidParameter(format!(
            "genus {g} is outside the range covered by this family over F_{q}"
        )));
    }
    let n = 2 * g + 2 - (q - 1);
    let candidates: Vec<(i64, i64)> = match p {
        3 => vec![(1, -1)],
        5 => vec![(1, 2), (2, -2)],
        _ => {
            let xi = (1..p as i64)
                .find(|&k| chi_prime(field, field.from_int(k)) == -1)
                .expect("odd prime field has non-residues");
            (1..p as i64).map(|b| (b, xi)).collect()
        }
    };
    for (b, xi) in candidates {
        let (b, xi) = (field.from_int(b), field.from_int(xi));
        if p > 5 {
            let b2 = field.mul(b, b)?;
            let t = field.mul(b2, xi)?;
            // b^4 xi^2 + 4 b^2 xi + 1 = t^2 + 4t + 1
            let s2 = field.add(
                field.add(field.mul(t, t)?, field.mul(field.from_int(4), t)?)?,
                field.one(),
            )?;
            if chi_prime(field, s2) != 1 {
                continue;
            }
        }
        let poly = build_family2(field, n, b, xi)?;
        if poly.is_squarefree()? {
            return Ok((n, b, xi));
        }
    }
    Err(Error::InvalidParameter(format!(
        "no admissible b for genus {g} over F_{q}"
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LastGenusParams {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

pub(crate) fn last_genus_polynomial(
    field: &FiniteField,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<Polynomial> {
    require_odd(field)?;
    require_member(field, &[alpha, beta])?;
    let f = field;
    let gamma = f.add(alpha, beta)?;
    if gamma.is_zero() {
        return Err(Error::InvalidParameter(
            "alpha + beta must be nonzero".into(),
        ));
    }
    let half = (f.q() - 1) as usize / 2;
    let middle = f.mul(f.from_int(2), f.div(f.sub(alpha, beta)?, gamma)?)?;
    Polynomial::from_terms(f, &[(f.one(), 2 * half), (middle, half), (f.one(), 0)])
}

/// `x^{q-1} + 2 (alpha-beta)/(alpha+beta) x^{(q-1)/2} + 1` for the first pair
/// of nonzero squares `(alpha, beta)` whose sum is a nonzero square.
pub fn build_last_genus(field: &FiniteField) -> Result<(Polynomial, LastGenusParams)> {
    require_odd(field)?;
    if field.q() <= 5 {
        return Err(Error::InvalidParameter("needs q > 5".into()));
    }
    let f = field;
    let squares: Vec<u32> = (1..f.q()).filter(|&x| f.chi_raw(x) == 1).collect();
    for &a in &squares {
        for &b in &squares {
            let c = f.add_raw(a, b);
            if f.chi_raw(c) == 1 {
                let (alpha, beta, gamma) = (f.wrap(a), f.wrap(b), f.wrap(c));
                let poly = last_genus_polynomial(f, alpha, beta)?;
                return Ok((poly, LastGenusParams { alpha, beta, gamma }));
            }
        }
    }
    Err(Error::InvalidParameter(format!(
        "no admissible (alpha, beta) in F_{}",
        f.q()
    )))
}

/// `x^{q+(q-1)/2} + x^{q-1} + x^{(q-3)/2} + 1`.
pub fn build_special_trinomial(field: &FiniteField) -> Result<Polynomial> {
    require_odd(field)?;
    let q = field.q() as usize;
    if q <= 3 {
        return Err(Error::InvalidParameter("needs q > 3".into()));
    }
    let one = field.one();
    Polynomial::from_terms(
        field,
        &[
            (one, q + (q - 1) / 2),
            (one, q - 1),
            (one, (q - 3) / 2),
            (one, 0),
        ],
    )
}

/// `y^2 + a f(x) y = b h(x)` with `f = x^{g+1} + x^{g+1-(q-1)} + c` and
/// `h = x^{2g+2} + x^{2g+2-2(q-1)} + d`.
pub(crate) fn even_char_model(
    field: &FiniteField,
    g: u32,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
) -> Result<HyperellipticModel> {
    if field.is_odd() {
        return Err(Error::OddCharacteristic);
    }
    require_member(field, &[a, b, c, d])?;
    let (q, g) = (field.q() as usize, g as usize);
    if g + 1 < q {
        return Err(Error::InvalidParameter(format!(
            "needs g >= q - 1 = {}",
            q - 1
        )));
    }
    let one = field.one();
    let f = Polynomial::from_terms(field, &[(one, g + 1), (one, g + 2 - q), (c, 0)])?;
    let h = Polynomial::from_terms(field, &[(one, 2 * g + 2), (one, 2 * g + 4 - 2 * q), (d, 0)])?;
    HyperellipticModel::new(field, f.scale(a)?, h.scale(b)?)
}

/// Pointless genus-`g` curve over `F_{2^m}`, `2^m > 2`, `g >= q - 1`.
///
/// `a = c = 1`, `b = alpha`, `d = beta / alpha` for the first two distinct
/// elements `alpha`, `beta` of absolute trace one; then both `b/a^2` and
/// `bd/(ac)^2` have trace one and no point lies over `x` in `F_q` or over
/// infinity.
pub fn build_even_char(field: &FiniteField, g: u32) -> Result<Construction> {
    if field.is_odd() {
        return Err(Error::OddCharacteristic);
    }
    let q = field.q();
    if q == 2 {
        return Err(Error::InvalidParameter(
            "q = 2 is handled by build_q2".into(),
        ));
    }
    if (g as u64) + 1 < q as u64 {
        return Err(Error::InvalidParameter(format!(
            "needs g >= q - 1 = {}",
            q - 1
        )));
    }
    let f = field;
    let mut trace_one = (0..q).filter(|&x| f.trace_raw(x) == 1).map(|x| f.wrap(x));
    let alpha = trace_one.next().expect("trace is surjective");
    let beta = trace_one
        .next()
        .expect("q > 2 gives two trace-one elements");
    let (a, c) = (f.one(), f.one());
    let b = alpha;
    let d = f.div(beta, alpha)?;
    let model = even_char_model(f, g, a, b, c, d)?;
    if !verified(&model, g, 0)? {
        return Err(Error::InvalidParameter(format!(
            "even-characteristic model failed verification for q = {q}, g = {g}"
        )));
    }
    let params = Params {
        a: Some(a),
        b: Some(b),
        c: Some(c),
        d: Some(d),
        alpha: Some(alpha),
        beta: Some(beta),
        ..Params::default()
    };
    Ok(Construction {
        model,
        certificate: ConstructionCertificate::new(Branch::EvenChar, params),
    })
}

/// `z^2 + f z = (x^2 + x) f + f^2`, the polynomial form of
/// `y^2 + y = (x^2+x)/f(x) + 1` under `z = y f(x)`.
pub(crate) fn q2_model(f: &Polynomial) -> Result<HyperellipticModel> {
    let field = f.field();
    if field.q() != 2 {
        return Err(Error::InvalidParameter(
            "needs a polynomial over F_2".into(),
        ));
    }
    let x2x = Polynomial::from_ints(field, &[0, 1, 1]);
    let p_poly = x2x.mul(f)?.add(&f.mul(f)?)?;
    HyperellipticModel::new(field, f.clone(), p_poly)
}

/// Pointless genus-`g` curve over `F_2` from the first irreducible `f` of
/// degree `g + 1`.
pub fn build_q2(g: u32) -> Result<Construction> {
    if g < 2 {
        return Err(Error::InvalidParameter("needs g >= 2".into()));
    }
    let f2 = make_field(2, 1)?;
    let f = find_irreducible(&f2, g as usize + 1);
    let model = q2_model(&f)?;
    if !verified(&model, g, 0)? {
        return Err(Error::InvalidParameter(format!(
            "q = 2 model failed verification for g = {g}"
        )));
    }
    let params = Params {
        f: Some(f),
        ..Params::default()
    };
    Ok(Construction {
        model,
        certificate: ConstructionCertificate::new(Branch::Q2Artin, params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;

    fn ints(field: &FiniteField, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(field, c)
    }

    #[test]
    fn f_gla_examples() {
        let f3 = field_of_order(3).unwrap();
        let f5 = field_of_order(5).unwrap();
        assert_eq!(
            build_f_gla(&f3, 2, 1, f3.one()).unwrap(),
            ints(&f3, &[1, 0, 0, 0, 2, 0, 1])
        );
        assert_eq!(
            build_f_gla(&f5, 2, 1, f5.one()).unwrap(),
            ints(&f5, &[1, 0, 4, 0, 0, 0, 1])
        );
        assert!(build_f_gla(&f3, 2, 4, f3.one()).is_err());
        assert!(build_f_gla(&f3, 2, 1, f3.zero()).is_err());
    }

    #[test]
    fn f_gla_with_full_step_collapses_to_binomial() {
        // l(q-1) = 2g+2: x^6 - 1 + a^2
        let f7 = field_of_order(7).unwrap();
        let f = build_f_gla(&f7, 2, 1, f7.from_int(2)).unwrap();
        assert_eq!(f, ints(&f7, &[3, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn last_genus_examples() {
        let f7 = field_of_order(7).unwrap();
        let (poly, params) = build_last_genus(&f7).unwrap();
        assert_eq!(poly, ints(&f7, &[1, 0, 0, 0, 0, 0, 1]));
        // 1 + 1 = 2 = 3^2 is the first admissible pair
        assert_eq!((params.alpha.index(), params.beta.index()), (1, 1));
        assert_eq!(params.gamma.index(), 2);
        // (2, 2) is admissible too and gives the same polynomial
        assert_eq!(
            last_genus_polynomial(&f7, f7.from_int(2), f7.from_int(2)).unwrap(),
            poly
        );

        let f9 = field_of_order(9).unwrap();
        let (poly, p) = build_last_genus(&f9).unwrap();
        assert_eq!(poly.degree(), Some(8));
        for x in [p.alpha, p.beta, p.gamma] {
            assert_eq!(f9.quadratic_character(x).unwrap(), 1);
        }
        assert!(build_last_genus(&field_of_order(5).unwrap()).is_err());
    }

    #[test]
    fn special_trinomial_examples() {
        let f7 = field_of_order(7).unwrap();
        let t = build_special_trinomial(&f7).unwrap();
        assert_eq!(
            t.indices()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| i)
                .collect::<Vec<_>>(),
            vec![0, 2, 6, 10]
        );
        let f11 = field_of_order(11).unwrap();
        let t = build_special_trinomial(&f11).unwrap();
        assert_eq!(t.degree(), Some(16));
        assert_eq!(t.indices().iter().filter(|&&c| c == 1).count(), 4);
        assert_eq!(t.coeff(10), f11.one());
        assert_eq!(t.coeff(4), f11.one());
        assert!(build_special_trinomial(&field_of_order(3).unwrap()).is_err());
    }

    #[test]
    fn family2_small_p_shapes() {
        let f27 = field_of_order(27).unwrap();
        // genus 13: n = 28 - 26 = 2
        let (n, b, xi) = choose_family2_params(&f27, 13).unwrap();
        assert_eq!((n, b, xi), (2, f27.one(), f27.from_int(-1)));
        let poly = build_family2(&f27, n, b, xi).unwrap();
        // x^{q-1+n} + x^{2n} + x^n + 1
        assert_eq!(
            poly,
            Polynomial::from_terms(
                &f27,
                &[
                    (f27.one(), 28),
                    (f27.one(), 4),
                    (f27.one(), 2),
                    (f27.one(), 0)
                ]
            )
            .unwrap()
        );

        let f125 = field_of_order(125).unwrap();
        let n = 2;
        // n = 1/2 mod 5 forces n = 3 mod 5; n = 8 also has gcd(8, 124) = 4
        assert!(build_family2(&f125, n, f125.one(), f125.from_int(2)).is_err());
        let poly = build_family2(&f125, 18, f125.one(), f125.from_int(2)).unwrap();
        assert_eq!(
            poly,
            Polynomial::from_terms(
                &f125,
                &[
                    (f125.one(), 124 + 18),
                    (f125.one(), 36),
                    (f125.from_int(-1), 0)
                ]
            )
            .unwrap()
        );
        let poly = build_family2(&f125, 18, f125.from_int(2), f125.from_int(-2)).unwrap();
        assert_eq!(
            poly,
            Polynomial::from_terms(
                &f125,
                &[
                    (f125.one(), 124 + 18),
                    (f125.from_int(-1), 36),
                    (f125.one(), 0)
                ]
            )
            .unwrap()
        );
    }

    #[test]
    fn family2_rejects_bad_parameters() {
        let f27 = field_of_order(27).unwrap();
        // xi = 1 is a square
        assert!(build_family2(&f27, 2, f27.one(), f27.one()).is_err());
        // n odd
        assert!(build_family2(&f27, 5, f27.one(), f27.from_int(2)).is_err());
        // prime and square fields are excluded
        let f7 = field_of_order(7).unwrap();
        assert!(build_family2(&f7, 2, f7.one(), f7.from_int(3)).is_err());
        let f9 = field_of_order(9).unwrap();
        assert!(build_family2(&f9, 2, f9.one(), f9.from_int(2)).is_err());
        // genus outside the covered range
        assert!(choose_family2_params(&f27, 14).is_err());
    }

    #[test]
    fn family2_character_identity() {
        // F = (x^{q-1} - 1) x^n + b^2 (x^n - xi)^2
        let f27 = field_of_order(27).unwrap();
        for g in [13u32, 16, 19, 22] {
            let (n, b, xi) = choose_family2_params(&f27, g).unwrap();
            let poly = build_family2(&f27, n, b, xi).unwrap();
            let n = n as usize;
            let xn = Polynomial::monomial(&f27, f27.one(), n).unwrap();
            let lhs = Polynomial::from_terms(&f27, &[(f27.one(), 26 + n), (f27.from_int(-1), n)])
                .unwrap();
            let sq = xn
                .sub(&Polynomial::from_terms(&f27, &[(xi, 0)]).unwrap())
                .unwrap();
            let b2 = f27.mul(b, b).unwrap();
            let rhs = sq.mul(&sq).unwrap().scale(b2).unwrap();
            assert_eq!(lhs.add(&rhs).unwrap(), poly);
        }
    }

    #[test]
    fn even_char_example_q4_g3() {
        let f4 = field_of_order(4).unwrap();
        let c = build_even_char(&f4, 3).unwrap();
        let w = f4.from_index(2).unwrap();
        let p = &c.certificate.params;
        assert_eq!(p.alpha, Some(w));
        assert_eq!(p.beta, Some(f4.from_index(3).unwrap()));
        assert_eq!(
            c.model.Q(),
            &Polynomial::from_indices(&f4, &[1, 1, 0, 0, 1]).unwrap()
        );
        let h = Polynomial::from_indices(&f4, &[2, 0, 1, 0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(c.model.P(), &h.scale(w).unwrap());
        assert_eq!(c.model.count_points(1).unwrap(), 0);
        // both trace conditions
        let (a, b, cc, d) = (p.a.unwrap(), p.b.unwrap(), p.c.unwrap(), p.d.unwrap());
        let a2 = f4.mul(a, a).unwrap();
        let ac2 = f4.mul(a2, f4.mul(cc, cc).unwrap()).unwrap();
        let t1 = f4.div(b, a2).unwrap();
        let t2 = f4.div(f4.mul(b, d).unwrap(), ac2).unwrap();
        assert_eq!(f4.absolute_trace(t1).unwrap(), f4.one());
        assert_eq!(f4.absolute_trace(t2).unwrap(), f4.one());
    }

    #[test]
    fn even_char_degree_bookkeeping() {
        let f4 = field_of_order(4).unwrap();
        let c = build_even_char(&f4, 4).unwrap();
        // f = x^5 + x^2 + c
        let nonzero: Vec<usize> = c
            .model
            .Q()
            .indices()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(nonzero, vec![0, 2, 5]);
        assert!(build_even_char(&field_of_order(2).unwrap(), 5).is_err());
        assert!(build_even_char(&f4, 2).is_err());
    }

    #[test]
    fn q2_examples() {
        let c = build_q2(2).unwrap();
        let f2 = c.model.field().clone();
        let f = ints(&f2, &[1, 1, 0, 1]);
        assert_eq!(c.certificate.params.f.as_ref(), Some(&f));
        assert_eq!(c.model.Q(), &f);
        assert_eq!(c.model.genus(), 2);
        assert_eq!(c.model.count_points(1).unwrap(), 0);

        let c = build_q2(3).unwrap();
        assert_eq!(
            c.certificate.params.f.as_ref(),
            Some(&ints(&f2, &[1, 1, 0, 0, 1]))
        );
        assert_eq!(c.model.count_points(1).unwrap(), 0);
        assert!(build_q2(1).is_err());
    }
}
