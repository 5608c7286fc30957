//! Explicit families of smooth hyperelliptic curves with prescribed point
//! counts, and a dispatcher that picks the right family for `(q, g)`.
//!
//! Odd `q`: a smooth `F_q`-maximal curve `y^2 = F(x)` is built and then
//! twisted by a non-square, which turns `2q + 2` points into none. Even `q`:
//! pointless models `y^2 + Q y = P` are written down directly.

mod artin_schreier;
mod certificate;
mod dispatch;
mod families;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numtheory;

pub use artin_schreier::{artin_schreier_pointless, ArtinSchreierRecord};
pub use certificate::{Branch, ConstructionCertificate, Params};
pub use dispatch::{construct_maximal_odd, construct_pointless, Construction, FALLBACK_BUDGET};
pub use families::{
    build_even_char, build_f_gla, build_family2, build_last_genus, build_q2,
    build_special_trinomial, choose_family2_params, LastGenusParams,
};

/// `L(q, g) = floor((2g+2) / (q-1))`.
pub fn params_l(q: u64, g: u64) -> Result<u64> {
    if q < 3 {
        return Err(Error::InvalidParameter("L(q, g) needs q >= 3".into()));
    }
    Ok((2 * g + 2) / (q - 1))
}

/// `D(q, g) = gcd(2g+2, q-1)`.
pub fn params_d(q: u64, g: u64) -> u64 {
    numtheory::gcd(2 * g + 2, q.saturating_sub(1))
}

/// The guaranteed genus threshold: `max((q-3)/2, 2)` for odd `q`,
/// `max(q-1, 2)` for even `q`.
pub fn genus_bound(q: u64) -> Result<u32> {
    let (p, _) = numtheory::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let g = if p == 2 { q - 1 } else { (q - 3) / 2 };
    Ok(g.max(2) as u32)
}

/// `q -> g_q` for every prime power up to a limit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenusBoundTable {
    entries: BTreeMap<u64, u32>,
}

impl GenusBoundTable {
    pub fn up_to(q_max: u64) -> GenusBoundTable {
        let entries = (2..=q_max)
            .filter_map(|q| genus_bound(q).ok().map(|g| (q, g)))
            .collect();
        GenusBoundTable { entries }
    }

    pub fn get(&self, q: u64) -> Option<u32> {
        self.entries.get(&q).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.entries.iter().map(|(&q, &g)| (q, g))
    }
}
