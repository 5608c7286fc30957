use crate::error::{Error, Result};
use crate::field::field_of_order;
use crate::poly::{find_irreducible, Polynomial};

/// Description of the pointless curve `y^q - y = u(x)/v(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierRecord {
    pub q: u64,
    pub n: u32,
    pub u: Polynomial,
    pub v: Polynomial,
    /// `(q - 1) n`, taken from the genus formula and not recomputed.
    pub claimed_genus: u64,
    pub genus_verified: bool,
    /// No `x` in `F_q` with `u(x) = 0`, and nonzero leading terms at infinity.
    pub pointless_verified: bool,
}

/// `u` is the first monic rootless polynomial of degree `n + 1` and `v` the
/// first irreducible one.
pub fn artin_schreier_pointless(q: u64, n: u32) -> Result<ArtinSchreierRecord> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if q > 1 << 10 {
        return Err(Error::InvalidParameter(format!("q = {q} exceeds 2^10")));
    }
    let field = field_of_order(q)?;
    let d = n as usize + 1;
    let v = find_irreducible(&field, d);
    let u = (0..)
        .map(|i| Polynomial::monic_from_index(&field, d, i))
        .find(|u| !u.has_root())
        .expect("an irreducible of degree n + 1 >= 2 is rootless");
    // y^q - y = c has a solution in F_q only for c = 0; v has no roots so the
    // right-hand side is defined everywhere, and at infinity it tends to the
    // ratio of the leading coefficients.
    let affine = (0..field.q()).all(|x| u.eval_raw(x) != 0 && v.eval_raw(x) != 0);
    let at_infinity = !u.leading().is_zero() && !v.leading().is_zero();
    Ok(ArtinSchreierRecord {
        q,
        n,
        claimed_genus: (q - 1) * n as u64,
        genus_verified: false,
        pointless_verified: affine && at_infinity,
        u,
        v,
    })
}
