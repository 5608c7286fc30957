//! Dense univariate polynomials over a [`FiniteField`], with the gcd,
//! squarefreeness, and irreducibility machinery, plus closed-form trinomial
//! discriminants.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, FieldElement, FiniteField};
use crate::numtheory;

/// A polynomial with little-endian coefficients. The leading coefficient is
/// nonzero unless the polynomial is zero, in which case the list is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FiniteField,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} over F_{})", self.field.q())
    }
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Polynomial {
    pub(crate) fn from_raw(field: &FiniteField, coeffs: Vec<u32>) -> Polynomial {
        debug_assert!(coeffs.iter().all(|&c| c < field.q()));
        Polynomial {
            field: field.clone(),
            coeffs: trim(coeffs),
        }
    }

    pub fn zero(field: &FiniteField) -> Polynomial {
        Polynomial::from_raw(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Polynomial {
        Polynomial::from_raw(field, vec![1])
    }

    /// The polynomial `x`.
    pub fn x(field: &FiniteField) -> Polynomial {
        Polynomial::from_raw(field, vec![0, 1])
    }

    /// `c * x^degree`.
    pub fn monomial(field: &FiniteField, c: FieldElement, degree: usize) -> Result<Polynomial> {
        if !field.contains(c) {
            return Err(Error::ForeignElement);
        }
        let mut v = vec![0; degree + 1];
        v[degree] = c.index();
        Ok(Polynomial::from_raw(field, v))
    }

    pub fn new(field: &FiniteField, coeffs: &[FieldElement]) -> Result<Polynomial> {
        if coeffs.iter().any(|&c| !field.contains(c)) {
            return Err(Error::ForeignElement);
        }
        Ok(Polynomial::from_raw(
            field,
            coeffs.iter().map(|c| c.index()).collect(),
        ))
    }

    /// Coefficients given as element indices.
    pub fn from_indices(field: &FiniteField, coeffs: &[u32]) -> Result<Polynomial> {
        if coeffs.iter().any(|&c| c >= field.q()) {
            return Err(Error::ElementOutOfRange { q: field.q() });
        }
        Ok(Polynomial::from_raw(field, coeffs.to_vec()))
    }

    /// Coefficients given as integers, read in the prime subfield.
    pub fn from_ints(field: &FiniteField, coeffs: &[i64]) -> Polynomial {
        Polynomial::from_raw(field, coeffs.iter().map(|&c| field.int_raw(c)).collect())
    }

    /// Sum of `c * x^e` terms; repeated exponents accumulate.
    pub fn from_terms(field: &FiniteField, terms: &[(FieldElement, usize)]) -> Result<Polynomial> {
        let top = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
        let mut v = vec![0; top + 1];
        for &(c, e) in terms {
            if !field.contains(c) {
                return Err(Error::ForeignElement);
            }
            v[e] = field.add_raw(v[e], c.index());
        }
        Ok(Polynomial::from_raw(field, v))
    }

    /// The monic polynomial of degree `degree` whose lower coefficients,
    /// read little-endian as base-`q` digits, spell `index`.
    pub fn monic_from_index(field: &FiniteField, degree: usize, mut index: u64) -> Polynomial {
        let q = field.q() as u64;
        let mut v = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            v.push((index % q) as u32);
            index /= q;
        }
        v.push(1);
        Polynomial::from_raw(field, v)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.wrap(c)).collect()
    }

    /// Coefficients as element indices, little-endian.
    pub fn indices(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn leading(&self) -> FieldElement {
        self.field.wrap(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add_raw(a, b)
            })
            .collect();
        Polynomial::from_raw(f, v)
    }

    pub(crate) fn sub_unchecked(&self, other: &Polynomial) -> Polynomial {
        self.add_unchecked(&other.neg())
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add_raw(v[i + j], f.mul_raw(a, b));
                }
            }
        }
        Polynomial::from_raw(f, v)
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Polynomial::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }

    pub fn scale(&self, c: FieldElement) -> Result<Polynomial> {
        if !self.field.contains(c) {
            return Err(Error::ForeignElement);
        }
        Ok(self.scale_raw(c.index()))
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Polynomial {
        let f = &self.field;
        Polynomial::from_raw(f, self.coeffs.iter().map(|&a| f.mul_raw(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Polynomial::from_raw(&self.field, v)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.div_rem_unchecked(divisor))
    }

    pub(crate) fn div_rem_unchecked(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let f = &self.field;
        let dl = divisor.coeffs.len();
        if self.coeffs.len() < dl {
            return (Polynomial::zero(f), self.clone());
        }
        let lead_inv = f.inv_raw(*divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dl - 1];
            if c == 0 {
                continue;
            }
            let t = f.mul_raw(c, lead_inv);
            quot[k] = t;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[k + i] = f.sub_raw(rem[k + i], f.mul_raw(t, d));
                }
            }
        }
        rem.truncate(dl - 1);
        (Polynomial::from_raw(f, quot), Polynomial::from_raw(f, rem))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&c) => self.scale_raw(self.field.inv_raw(c)),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.gcd_unchecked(other))
    }

    pub(crate) fn gcd_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem_unchecked(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul_raw(c, f.int_raw(i as i64)))
            .collect();
        Polynomial::from_raw(f, v)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        if !self.field.contains(x) {
            return Err(Error::ForeignElement);
        }
        Ok(self.field.wrap(self.eval_raw(x.index())))
    }

    pub(crate) fn eval_raw(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add_raw(f.mul_raw(acc, x), c))
    }

    /// `x^m f(1/x)`, defined when `m >= deg f`.
    pub fn reversed(&self, m: usize) -> Result<Polynomial> {
        let deg = self.degree().unwrap_or(0);
        if deg > m {
            return Err(Error::InvalidParameter(format!(
                "cannot reverse a degree-{deg} polynomial at order {m}"
            )));
        }
        let mut v = vec![0; m + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[m - i] = c;
        }
        Ok(Polynomial::from_raw(&self.field, v))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
        self.check_same(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.div_rem_unchecked(modulus).1;
        let mut acc = Polynomial::one(&self.field).div_rem_unchecked(modulus).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base).div_rem_unchecked(modulus).1;
            }
            base = base.mul_unchecked(&base).div_rem_unchecked(modulus).1;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image of the polynomial under a field embedding.
    pub fn embed(&self, embedding: &Embedding) -> Result<Polynomial> {
        if embedding.source() != &self.field {
            return Err(Error::ForeignElement);
        }
        let v = self
            .coeffs
            .iter()
            .map(|&c| embedding.apply_raw(c))
            .collect();
        Ok(Polynomial::from_raw(embedding.target(), v))
    }

    /// No repeated roots over the algebraic closure.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.coeffs.len() <= 1 {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd_unchecked(&d).degree() == Some(0))
    }

    /// Rabin's test: `f | x^{q^d} - x` and `gcd(f, x^{q^{d/r}} - x) = 1`
    /// for every prime `r | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let q = self.field.q() as u64;
        let x = Polynomial::x(&self.field);
        // frob[i] = x^{q^i} mod f
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(x.clone());
        for i in 1..=d {
            let next = frob[i - 1].pow_mod(q, &f)?;
            frob.push(next);
        }
        if frob[d] != x {
            return Ok(false);
        }
        for r in numtheory::prime_factors(d as u64) {
            let h = frob[d / r as usize].sub_unchecked(&x);
            if f.gcd_unchecked(&h).degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Roots lying in the base field, in enumeration order.
    pub fn roots(&self) -> Vec<FieldElement> {
        (0..self.field.q())
            .filter(|&x| self.eval_raw(x) == 0)
            .map(|x| self.field.wrap(x))
            .collect()
    }

    pub fn has_root(&self) -> bool {
        (0..self.field.q()).any(|x| self.eval_raw(x) == 0)
    }
}

/// Formats a field element: integers in prime fields, a polynomial in `w`
/// (the class of the modulus variable) otherwise.
pub(crate) fn fmt_element(field: &FiniteField, index: u32) -> String {
    if field.n() == 1 {
        return index.to_string();
    }
    let digits = field.digits_vec(index);
    let terms: Vec<String> = digits
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| match (i, d) {
            (0, d) => d.to_string(),
            (1, 1) => "w".to_string(),
            (1, d) => format!("{d}w"),
            (i, 1) => format!("w^{i}"),
            (i, d) => format!("{d}w^{i}"),
        })
        .collect();
    match terms.len() {
        0 => "0".to_string(),
        1 => terms[0].clone(),
        _ => format!("({})", terms.join("+")),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = fmt_element(&self.field, c);
            match (i, c) {
                (0, _) => write!(f, "{coeff}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{coeff}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{coeff}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// First monic irreducible polynomial of degree `d` in enumeration order of
/// its lower coefficients.
pub fn find_irreducible(field: &FiniteField, d: usize) -> Polynomial {
    assert!(d >= 1, "degree must be positive");
    (0u64..)
        .map(|i| Polynomial::monic_from_index(field, d, i))
        .find(|f| f.is_irreducible().expect("nonconstant"))
        .expect("irreducible polynomials exist in every degree")
}

/// Whether `x^n - x^{n-m} + a` has a repeated root, decided by the vanishing
/// of `n^N a^M - m^M (n-m)^{N-M}` with `d = gcd(n, m)`, `N = n/d`, `M = m/d`.
pub fn trinomial_has_multiple_roots(
    field: &FiniteField,
    n: u64,
    m: u64,
    a: FieldElement,
) -> Result<bool> {
    if !field.contains(a) {
        return Err(Error::ForeignElement);
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter(
            "constant term must be nonzero".into(),
        ));
    }
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 < m < n, got m={m}, n={n}"
        )));
    }
    let d = numtheory::gcd(n, m);
    let (big_n, big_m) = (n / d, m / d);
    let f = field;
    let lhs = f.mul_raw(
        f.pow_raw(f.int_raw(n as i64), big_n),
        f.pow_raw(a.index(), big_m),
    );
    let rhs = f.mul_raw(
        f.pow_raw(f.int_raw(m as i64), big_m),
        f.pow_raw(f.int_raw((n - m) as i64), big_n - big_m),
    );
    Ok(lhs == rhs)
}

/// Discriminant of `x^n + a x^k + b` by the closed form
/// `(-1)^{n(n-1)/2} b^{k-1} [n^N b^{N-K} - (-1)^N (n-k)^{N-K} k^K a^N]^d`,
/// `d = gcd(n, k)`, `N = n/d`, `K = k/d`.
pub fn trinomial_discriminant(
    field: &FiniteField,
    n: u64,
    k: u64,
    a: FieldElement,
    b: FieldElement,
) -> Result<FieldElement> {
    if !field.contains(a) || !field.contains(b) {
        return Err(Error::ForeignElement);
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 < k < n, got k={k}, n={n}"
        )));
    }
    if b.is_zero() {
        return Err(Error::InvalidParameter(
            "constant term must be nonzero".into(),
        ));
    }
    let f = field;
    let d = numtheory::gcd(n, k);
    let (big_n, big_k) = (n / d, k / d);
    let first = f.mul_raw(
        f.pow_raw(f.int_raw(n as i64), big_n),
        f.pow_raw(b.index(), big_n - big_k),
    );
    let mut second = f.mul_raw(
        f.pow_raw(f.int_raw((n - k) as i64), big_n - big_k),
        f.mul_raw(
            f.pow_raw(f.int_raw(k as i64), big_k),
            f.pow_raw(a.index(), big_n),
        ),
    );
    if big_n % 2 == 1 {
        second = f.neg_raw(second);
    }
    let bracket = f.pow_raw(f.sub_raw(first, second), d);
    let mut disc = f.mul_raw(f.pow_raw(b.index(), k - 1), bracket);
    if (n * (n - 1) / 2) % 2 == 1 {
        disc = f.neg_raw(disc);
    }
    Ok(f.wrap(disc))
}

/// `s = (2g+2)^N a^{2M} - (-l)^M (2g+2+l)^{N-M}` with
/// `d = gcd(2g+2, l(q-1))`, `N = (2g+2)/d`, `M = l(q-1)/d`.
///
/// Nonzero exactly when `x^{2g+2} - x^{2g+2-l(q-1)} + a^2` is squarefree.
/// The value lies in whatever subfield `a` does; for `a` in `F_p` it is an
/// element of `F_p`.
pub fn s_quantity(field: &FiniteField, g: u64, l: u64, a: FieldElement) -> Result<FieldElement> {
    if !field.contains(a) {
        return Err(Error::ForeignElement);
    }
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let q = field.q() as u64;
    let limit = crate::constructions::params_l(q, g)?;
    if g < 2 || l == 0 || l > limit {
        return Err(Error::InvalidParameter(format!(
            "need g >= 2 and 1 <= l <= L(q,g) = {limit}, got g={g}, l={l}"
        )));
    }
    let n = 2 * g + 2;
    let m = l * (q - 1);
    let d = numtheory::gcd(n, m);
    let (big_n, big_m) = (n / d, m / d);
    let f = field;
    let first = f.mul_raw(
        f.pow_raw(f.int_raw(n as i64), big_n),
        f.pow_raw(a.index(), 2 * big_m),
    );
    let second = f.mul_raw(
        f.pow_raw(f.int_raw(-(l as i64)), big_m),
        f.pow_raw(f.int_raw((n + l) as i64), big_n - big_m),
    );
    Ok(f.wrap(f.sub_raw(first, second)))
}
