//! Finite fields `F_{p^n}` in a polynomial basis over `F_p`.
//!
//! An element is stored as its *index*: the little-endian coefficient vector
//! `(c_0, ..., c_{n-1})` read as a base-`p` integer `c_0 + c_1 p + ...`.
//! Counting indices `0, 1, ..., q-1` is the canonical enumeration order that
//! every deterministic search in this crate relies on, and the prime subfield
//! is exactly the indices below `p`.
//!
//! Multiplication in extension fields goes through discrete log tables built
//! once at construction; the field is immutable afterwards.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numtheory;
use crate::poly;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u64);

/// An element of a particular [`FiniteField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldId,
    index: u32,
}

impl FieldElement {
    /// Position of the element in the field's enumeration order.
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }
}

struct LogTables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    id: FieldId,
    /// `p^i` for `0 <= i <= n`.
    radix: Vec<u32>,
    logs: Option<LogTables>,
}

/// The finite field `F_{p^n} = F_p[x] / (modulus)`.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id && self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}(p={}, n={}, modulus={:?})",
            self.q(),
            self.p(),
            self.n(),
            self.modulus()
        )
    }
}

fn fingerprint(p: u32, modulus: &[u32]) -> FieldId {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(modulus.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    FieldId(h)
}

/// Builds `F_{p^n}` with the first monic irreducible degree-`n` modulus in
/// enumeration order.
pub fn make_field(p: u64, n: u32) -> Result<FiniteField> {
    check_size(p, n)?;
    if n == 1 {
        return Ok(FiniteField::build(p as u32, vec![0, 1]));
    }
    let prime = make_field(p, 1)?;
    let modulus = poly::find_irreducible(&prime, n as usize);
    let coeffs = modulus.coeffs().iter().map(|c| c.index()).collect();
    Ok(FiniteField::build(p as u32, coeffs))
}

/// Builds `F_q` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, n) = numtheory::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, n)
}

fn check_size(p: u64, n: u32) -> Result<()> {
    if !numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "extension degree must be at least 1".into(),
        ));
    }
    let too_large = (p as u128)
        .checked_pow(n)
        .is_none_or(|q| q > MAX_FIELD_SIZE as u128);
    if too_large {
        return Err(Error::FieldTooLarge { p, n });
    }
    Ok(())
}

impl FiniteField {
    /// Builds `F_p[x] / (modulus)` for an explicitly given little-endian
    /// modulus, which must be monic and irreducible over `F_p`. Degree-one
    /// moduli must be the canonical `x`.
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<FiniteField> {
        let n = modulus
            .len()
            .checked_sub(1)
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidModulus("modulus must have degree at least 1".into()))?
            as u32;
        check_size(p, n)?;
        if modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::InvalidModulus(
                "coefficient not reduced mod p".into(),
            ));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if n == 1 {
            if modulus != [0, 1] {
                return Err(Error::InvalidModulus("degree-one modulus must be x".into()));
            }
            return Ok(FiniteField::build(p as u32, modulus.to_vec()));
        }
        let prime = make_field(p, 1)?;
        let f = poly::Polynomial::from_indices(&prime, modulus)?;
        if !f.is_irreducible()? {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        Ok(FiniteField::build(p as u32, modulus.to_vec()))
    }

    fn build(p: u32, modulus: Vec<u32>) -> FiniteField {
        let n = (modulus.len() - 1) as u32;
        let radix: Vec<u32> = (0..=n).map(|i| p.pow(i)).collect();
        let q = radix[n as usize];
        let mut inner = Inner {
            p,
            n,
            q,
            id: fingerprint(p, &modulus),
            modulus,
            radix,
            logs: None,
        };
        if n > 1 {
            inner.logs = Some(build_log_tables(&inner));
        }
        FiniteField(Arc::new(inner))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Little-endian coefficients of the defining polynomial over `F_p`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn id(&self) -> FieldId {
        self.0.id
    }

    pub fn is_odd(&self) -> bool {
        self.0.p != 2
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.field == self.0.id
    }

    pub(crate) fn wrap(&self, index: u32) -> FieldElement {
        debug_assert!(index < self.0.q);
        FieldElement {
            field: self.0.id,
            index,
        }
    }

    /// Element with the given enumeration index.
    pub fn from_index(&self, index: u32) -> Result<FieldElement> {
        if index >= self.0.q {
            return Err(Error::ElementOutOfRange { q: self.0.q });
        }
        Ok(self.wrap(index))
    }

    /// Element of the prime subfield congruent to `k`.
    pub fn from_int(&self, k: i64) -> FieldElement {
        self.wrap(k.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from its little-endian coefficient vector (length `n`).
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.0.n as usize {
            return Err(Error::Malformed(format!(
                "element of F_{} needs {} coefficients, got {}",
                self.0.q,
                self.0.n,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::ElementOutOfRange { q: self.0.q });
        }
        let index = coeffs.iter().zip(&self.0.radix).map(|(&c, &r)| c * r).sum();
        Ok(self.wrap(index))
    }

    /// Little-endian coefficient vector of `x` (length `n`).
    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u32>> {
        self.check(x)?;
        Ok(self.digits_vec(x.index))
    }

    pub(crate) fn digits_vec(&self, mut a: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.n)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// All elements in enumeration order, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |i| self.wrap(i))
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ForeignElement)
        }
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.add_raw(x.index, y.index)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.sub_raw(x.index, y.index)))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.wrap(self.neg_raw(x.index)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.mul_raw(x.index, y.index)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_raw(x.index)))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let y_inv = self.inv(y)?;
        self.mul(x, y_inv)
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.wrap(self.pow_raw(x.index, e)))
    }

    /// The quadratic character: `0` at zero, `1` on nonzero squares, `-1`
    /// otherwise. Defined only in odd characteristic.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<i8> {
        self.check(x)?;
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.chi_raw(x.index))
    }

    /// `Tr_{F_q/F_p}(x)`, returned as an element of the prime subfield.
    pub fn absolute_trace(&self, x: FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.wrap(self.trace_raw(x.index)))
    }

    /// First nonzero element with quadratic character `-1`.
    pub fn first_non_square(&self) -> Result<FieldElement> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        let idx = (1..self.0.q)
            .find(|&i| self.chi_raw(i) == -1)
            .expect("odd field has non-squares");
        Ok(self.wrap(idx))
    }

    /// Whether `x` lies in the prime subfield `F_p`.
    pub fn in_prime_field(&self, x: FieldElement) -> bool {
        self.contains(x) && x.index < self.0.p
    }

    /// The fixed embedding of this field into `target`, sending the class of
    /// `x` to the first root of the modulus in the target's enumeration order.
    pub fn embedding(&self, target: &FiniteField) -> Result<Embedding> {
        if target.p() != self.p() || !target.n().is_multiple_of(self.n()) {
            return Err(Error::IncompatibleEmbedding(format!(
                "F_{} does not embed in F_{}",
                self.q(),
                target.q()
            )));
        }
        let root = (0..target.q())
            .find(|&t| {
                // modulus coefficients are prime-field values, valid in target
                self.modulus()
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| target.add_raw(target.mul_raw(acc, t), c))
                    == 0
            })
            .ok_or_else(|| Error::IncompatibleEmbedding("modulus has no root in target".into()))?;
        let mut powers = Vec::with_capacity(self.n() as usize);
        let mut acc = 1;
        for _ in 0..self.n() {
            powers.push(acc);
            acc = target.mul_raw(acc, root);
        }
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            root_powers: powers,
        })
    }

    /// Convenience wrapper around [`FiniteField::embedding`] for one element.
    pub fn embed(&self, x: FieldElement, target: &FiniteField) -> Result<FieldElement> {
        self.embedding(target)?.apply(x)
    }

    // ---- raw arithmetic on enumeration indices -------------------------

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.n == 1 {
            let s = a + b;
            return if s >= inner.p { s - inner.p } else { s };
        }
        if inner.p == 2 {
            return a ^ b;
        }
        let p = inner.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &r in &inner.radix[..inner.n as usize] {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * r;
            a /= p;
            b /= p;
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if inner.n == 1 {
            return if a == 0 { 0 } else { inner.p - a };
        }
        let p = inner.p;
        let mut a = a;
        let mut out = 0;
        for &r in &inner.radix[..inner.n as usize] {
            let d = a % p;
            if d != 0 {
                out += (p - d) * r;
            }
            a /= p;
        }
        out
    }

    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        match &inner.logs {
            None => ((a as u64 * b as u64) % inner.p as u64) as u32,
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
        }
    }

    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let inner = &*self.0;
        match &inner.logs {
            None => self.pow_raw(a, inner.p as u64 - 2),
            Some(t) => {
                let l = t.log[a as usize];
                t.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]
            }
        }
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub(crate) fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn chi_raw(&self, a: u32) -> i8 {
        if a == 0 {
            0
        } else if self.pow_raw(a, (self.0.q as u64 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub(crate) fn trace_raw(&self, a: u32) -> u32 {
        let p = self.0.p as u64;
        let mut t = a;
        let mut sum = a;
        for _ in 1..self.0.n {
            t = self.pow_raw(t, p);
            sum = self.add_raw(sum, t);
        }
        debug_assert!(sum < self.0.p, "trace must land in the prime field");
        sum
    }

    /// Integer `k` reduced into the prime subfield (raw index).
    pub(crate) fn int_raw(&self, k: i64) -> u32 {
        k.rem_euclid(self.0.p as i64) as u32
    }
}

/// Schoolbook product of two elements modulo the field's modulus, used only
/// while the log tables are being built.
fn slow_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    let n = inner.n as usize;
    let mut da = [0u64; MAX_DEGREE];
    let mut db = [0u64; MAX_DEGREE];
    let (mut x, mut y) = (a, b);
    for i in 0..n {
        da[i] = (x % inner.p) as u64;
        db[i] = (y % inner.p) as u64;
        x /= inner.p;
        y /= inner.p;
    }
    let mut prod = [0u64; 2 * MAX_DEGREE];
    for i in 0..n {
        if da[i] == 0 {
            continue;
        }
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    // reduce by the monic modulus from the top down
    for k in (n..2 * n - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            let m = inner.modulus[i] as u64;
            prod[k - n + i] = (prod[k - n + i] + (p - c) * m) % p;
        }
    }
    (0..n).map(|i| prod[i] as u32 * inner.radix[i]).sum()
}

fn slow_pow(inner: &Inner, a: u32, mut e: u64) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

fn build_log_tables(inner: &Inner) -> LogTables {
    let order = (inner.q - 1) as u64;
    let factors = numtheory::prime_factors(order);
    let g = (2..inner.q)
        .find(|&g| factors.iter().all(|&r| slow_pow(inner, g, order / r) != 1))
        .expect("multiplicative group is cyclic");
    let m = order as usize;
    let mut exp = vec![0u32; 2 * m];
    let mut log = vec![0u32; inner.q as usize];
    let mut acc = 1;
    for i in 0..m {
        exp[i] = acc;
        exp[i + m] = acc;
        log[acc as usize] = i as u32;
        acc = slow_mul(inner, acc, g);
    }
    LogTables { exp, log }
}

/// A fixed ring embedding `F_{p^n} -> F_{p^{nk}}`.
#[derive(Clone)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    root_powers: Vec<u32>,
}

impl Embedding {
    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn apply(&self, x: FieldElement) -> Result<FieldElement> {
        self.source.check(x)?;
        Ok(self.target.wrap(self.apply_raw(x.index)))
    }

    pub(crate) fn apply_raw(&self, a: u32) -> u32 {
        let p = self.source.p();
        let mut a = a;
        let mut out = 0;
        for &w in &self.root_powers {
            let d = a % p;
            a /= p;
            if d != 0 {
                out = self.target.add_raw(out, self.target.mul_raw(d, w));
            }
        }
        out
    }
}
