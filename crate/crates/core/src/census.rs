//! Exhaustive enumeration of hyperelliptic models over small fields.
//!
//! Odd `q`: equations `y^2 = P(x)` with `deg P` in `{2g+1, 2g+2}`. A
//! pointless model has no point at infinity, which rules out odd degree and
//! square leading coefficients; the prefiltered scan only visits the
//! remaining `(q-1)/2 * q^{2g+2}` polynomials.
//!
//! Even `q`: pairs `(Q, P)` with `deg Q <= g+1`, `deg P <= 2g+2`, for tiny
//! spaces only.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use crate::curve::{solutions, HyperellipticModel};
use crate::error::{Error, Result};
use crate::field::{field_of_order, FiniteField};
use crate::poly::Polynomial;

/// Largest odd-`q` candidate space a census will scan.
pub const ODD_CAP: u128 = 1 << 34;
/// Largest even-`q` `(Q, P)` space a census will scan.
pub const EVEN_CAP: u128 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusConfig {
    /// Only visit degree-`(2g+2)` equations with non-square leading
    /// coefficient (odd `q`).
    pub prefilter: bool,
    pub jobs: usize,
    /// Stop at the first pointless model; the count is then 0 or 1.
    pub first_only: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            prefilter: true,
            jobs: 1,
            first_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub q: u64,
    pub g: u32,
    /// Candidate equations visited.
    pub total_models_scanned: u64,
    pub pointless_count: u64,
    pub first_pointless: Option<HyperellipticModel>,
    pub wall_time: f64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Partial {
    scanned: u64,
    count: u64,
    first: Option<u64>,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        let first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Partial {
            scanned: self.scanned + other.scanned,
            count: self.count + other.count,
            first,
        }
    }
}

fn pow_u128(q: u64, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// The coefficient space being enumerated, with a flat index.
#[derive(Clone, Debug)]
enum Space {
    /// Outer index over (leading coefficient, `c_1 .. c_{D-1}`); `c_0` is
    /// resolved by a bitmask scan.
    Filtered { degree: usize, leads: Vec<u32> },
    /// Degrees `2g+1` then `2g+2`, every nonzero leading coefficient.
    Unfiltered { g: u32 },
    /// Pairs `(Q, P)`, `Q != 0`, characteristic 2.
    Pairs { g: u32 },
}

impl Space {
    fn new(field: &FiniteField, g: u32, prefilter: bool) -> Result<Space> {
        let q = field.q() as u64;
        let g_us = g as usize;
        if !field.is_odd() {
            let size = pow_u128(q, g_us + 2).saturating_mul(pow_u128(q, 2 * g_us + 3));
            if size > EVEN_CAP {
                return Err(Error::SpaceTooLarge {
                    size,
                    cap: EVEN_CAP,
                });
            }
            return Ok(Space::Pairs { g });
        }
        let size = (q as u128 - 1) * (pow_u128(q, 2 * g_us + 1) + pow_u128(q, 2 * g_us + 2));
        if prefilter {
            let filtered = (q as u128 - 1) / 2 * pow_u128(q, 2 * g_us + 2);
            if filtered > ODD_CAP {
                return Err(Error::SpaceTooLarge {
                    size: filtered,
                    cap: ODD_CAP,
                });
            }
            let leads = (1..field.q()).filter(|&c| field.chi_raw(c) == -1).collect();
            Ok(Space::Filtered {
                degree: 2 * g_us + 2,
                leads,
            })
        } else if size > ODD_CAP {
            Err(Error::SpaceTooLarge { size, cap: ODD_CAP })
        } else {
            Ok(Space::Unfiltered { g })
        }
    }

    /// Length of the range that is partitioned across workers.
    fn outer_len(&self, q: u64) -> u64 {
        match self {
            Space::Filtered { degree, leads } => leads.len() as u64 * q.pow(*degree as u32 - 1),
            Space::Unfiltered { g } => {
                let g = *g;
                (q - 1) * (q.pow(2 * g + 1) + q.pow(2 * g + 2))
            }
            Space::Pairs { g } => {
                let g = *g;
                (q.pow(g + 2) - 1) * q.pow(2 * g + 3)
            }
        }
    }

    /// Candidates per outer step.
    fn inner_len(&self, q: u64) -> u64 {
        match self {
            Space::Filtered { .. } => q,
            _ => 1,
        }
    }
}

fn digits(q: u64, mut index: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (index % q) as u32;
            index /= q;
            d
        })
        .collect()
}

/// The odd-`q` equation with unfiltered index `index`.
fn unfiltered_poly(field: &FiniteField, g: u32, index: u64) -> Polynomial {
    let q = field.q() as u64;
    let low = 2 * g as usize + 1;
    let block = (q - 1) * q.pow(low as u32);
    let (degree, rest) = if index < block {
        (low, index)
    } else {
        (low + 1, index - block)
    };
    let span = q.pow(degree as u32);
    let mut coeffs = digits(q, rest % span, degree);
    coeffs.push((rest / span + 1) as u32);
    Polynomial::from_raw(field, coeffs)
}

/// The filtered equation with candidate index `outer * q + c0`.
fn filtered_poly(field: &FiniteField, degree: usize, leads: &[u32], index: u64) -> Polynomial {
    let q = field.q() as u64;
    let (outer, c0) = (index / q, (index % q) as u32);
    let span = q.pow(degree as u32 - 1);
    let mut coeffs = vec![c0];
    coeffs.extend(digits(q, outer % span, degree - 1));
    coeffs.push(leads[(outer / span) as usize]);
    Polynomial::from_raw(field, coeffs)
}

/// The characteristic-2 pair with index `index`.
fn pair(field: &FiniteField, g: u32, index: u64) -> (Polynomial, Polynomial) {
    let q = field.q() as u64;
    let span = q.pow(2 * g + 3);
    let q_poly = Polynomial::from_raw(field, digits(q, index / span + 1, g as usize + 2));
    let p_poly = Polynomial::from_raw(field, digits(q, index % span, 2 * g as usize + 3));
    (q_poly, p_poly)
}

fn odd_pointless(field: &FiniteField, p_poly: &Polynomial) -> bool {
    let Some(deg) = p_poly.degree() else {
        return false;
    };
    deg % 2 == 0
        && field.chi_raw(p_poly.leading().index()) == -1
        && (0..field.q()).all(|x| field.chi_raw(p_poly.eval_raw(x)) == -1)
}

/// Shared cut-off for first-only scans: the lowest index found so far.
struct Best<'a>(Option<&'a AtomicU64>);

impl Best<'_> {
    fn beaten(&self, index: u64) -> bool {
        self.0.is_some_and(|b| index > b.load(Ordering::Relaxed))
    }

    fn offer(&self, index: u64) {
        if let Some(b) = self.0 {
            b.fetch_min(index, Ordering::Relaxed);
        }
    }

    fn active(&self) -> bool {
        self.0.is_some()
    }
}

fn scan_filtered(
    field: &FiniteField,
    degree: usize,
    leads: &[u32],
    range: Range<u64>,
    best: &Best<'_>,
) -> Partial {
    let q = field.q();
    let qu = q as u64;
    let span = qu.pow(degree as u32 - 1);
    let powers: Vec<Vec<u32>> = (0..=degree)
        .map(|i| (0..q).map(|x| field.pow_raw(x, i as u64)).collect())
        .collect();
    let use_mask = q <= 64;
    let masks: Vec<u64> = if use_mask {
        (0..q)
            .map(|v| {
                (0..q)
                    .filter(|&c| field.chi_raw(field.add_raw(v, c)) == -1)
                    .fold(0u64, |m, c| m | 1 << c)
            })
            .collect()
    } else {
        Vec::new()
    };
    let full = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };

    // state at range.start
    let mut lead_idx = (range.start / span) as usize;
    let mut coeffs = digits(qu, range.start % span, degree - 1);
    let mut values: Vec<u32> = (0..q)
        .map(|x| {
            let mut v = field.mul_raw(
                leads.get(lead_idx).copied().unwrap_or(0),
                powers[degree][x as usize],
            );
            for (i, &c) in coeffs.iter().enumerate() {
                v = field.add_raw(v, field.mul_raw(c, powers[i + 1][x as usize]));
            }
            v
        })
        .collect();

    let mut out = Partial::default();
    for outer in range {
        if best.beaten(outer * qu) {
            break;
        }
        out.scanned += qu;
        let mut survivors = Vec::new();
        if use_mask {
            let mut m = full;
            for &v in &values {
                m &= masks[v as usize];
                if m == 0 {
                    break;
                }
            }
            while m != 0 {
                survivors.push(m.trailing_zeros());
                m &= m - 1;
            }
        } else {
            for c0 in 0..q {
                if values
                    .iter()
                    .all(|&v| field.chi_raw(field.add_raw(v, c0)) == -1)
                {
                    survivors.push(c0);
                }
            }
        }
        for c0 in survivors {
            let mut full_coeffs = Vec::with_capacity(degree + 1);
            full_coeffs.push(c0);
            full_coeffs.extend_from_slice(&coeffs);
            full_coeffs.push(leads[lead_idx]);
            let poly = Polynomial::from_raw(field, full_coeffs);
            if poly.is_squarefree().unwrap_or(false) {
                let index = outer * qu + c0 as u64;
                out.count += 1;
                out.first = Some(out.first.map_or(index, |f| f.min(index)));
                best.offer(index);
                if best.active() {
                    return out;
                }
            }
        }
        // advance the odometer; a digit stepping from q-1 to 0 also adds x^i
        let mut i = 0;
        loop {
            if i == degree - 1 {
                let old = leads[lead_idx];
                lead_idx += 1;
                if let Some(&new) = leads.get(lead_idx) {
                    let delta = field.sub_raw(new, old);
                    for (x, v) in values.iter_mut().enumerate() {
                        *v = field.add_raw(*v, field.mul_raw(delta, powers[degree][x]));
                    }
                }
                break;
            }
            coeffs[i] += 1;
            for (x, v) in values.iter_mut().enumerate() {
                *v = field.add_raw(*v, powers[i + 1][x]);
            }
            if coeffs[i] == q {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
    out
}

fn scan_unfiltered(field: &FiniteField, g: u32, range: Range<u64>, best: &Best<'_>) -> Partial {
    let mut out = Partial::default();
    for index in range {
        if best.beaten(index) {
            break;
        }
        out.scanned += 1;
        let poly = unfiltered_poly(field, g, index);
        if odd_pointless(field, &poly) && poly.is_squarefree().unwrap_or(false) {
            out.count += 1;
            out.first = Some(out.first.map_or(index, |f| f.min(index)));
            best.offer(index);
            if best.active() {
                return out;
            }
        }
    }
    out
}

fn pair_model(field: &FiniteField, g: u32, index: u64) -> Option<HyperellipticModel> {
    let (q_poly, p_poly) = pair(field, g, index);
    HyperellipticModel::new(field, q_poly, p_poly)
        .ok()
        .filter(|m| m.genus() == g)
}

fn scan_pairs(field: &FiniteField, g: u32, range: Range<u64>, best: &Best<'_>) -> Partial {
    let mut out = Partial::default();
    for index in range {
        if best.beaten(index) {
            break;
        }
        out.scanned += 1;
        let Some(model) = pair_model(field, g, index) else {
            continue;
        };
        let (q_rev, p_rev) = model.infinity_chart();
        let at_inf = solutions(
            field,
            q_rev.indices().first().copied().unwrap_or(0),
            p_rev.indices().first().copied().unwrap_or(0),
        );
        if at_inf != 0 {
            continue;
        }
        let pointless = (0..field.q())
            .all(|x| solutions(field, model.Q().eval_raw(x), model.P().eval_raw(x)) == 0);
        if pointless && model.is_smooth() {
            out.count += 1;
            out.first = Some(out.first.map_or(index, |f| f.min(index)));
            best.offer(index);
            if best.active() {
                return out;
            }
        }
    }
    out
}

fn model_at(field: &FiniteField, space: &Space, index: u64) -> Result<HyperellipticModel> {
    match space {
        Space::Filtered { degree, leads } => {
            HyperellipticModel::odd(filtered_poly(field, *degree, leads, index))
        }
        Space::Unfiltered { g } => HyperellipticModel::odd(unfiltered_poly(field, *g, index)),
        Space::Pairs { g } => {
            let (q_poly, p_poly) = pair(field, *g, index);
            HyperellipticModel::new(field, q_poly, p_poly)
        }
    }
}

/// Splits `0..len` into `k` contiguous ranges of nearly equal length.
pub fn partition(len: u64, k: usize) -> Vec<Range<u64>> {
    let k = k.max(1) as u64;
    (0..k).map(|i| (len * i / k)..(len * (i + 1) / k)).collect()
}

/// Counts pointless smooth genus-`g` equations over `F_q`.
pub fn count_pointless(q: u64, g: u32, config: &CensusConfig) -> Result<CensusReport> {
    let start = Instant::now();
    let field = field_of_order(q)?;
    let space = Space::new(&field, g, config.prefilter)?;
    let outer = space.outer_len(q);
    let best = AtomicU64::new(u64::MAX);
    let cutoff = config.first_only.then_some(&best);
    let ranges = partition(outer, config.jobs);

    let scan = |range: Range<u64>| {
        let best = Best(cutoff);
        match &space {
            Space::Filtered { degree, leads } => {
                scan_filtered(&field, *degree, leads, range, &best)
            }
            Space::Unfiltered { g } => scan_unfiltered(&field, *g, range, &best),
            Space::Pairs { g } => scan_pairs(&field, *g, range, &best),
        }
    };
    let merged = if ranges.len() == 1 {
        scan(ranges[0].clone())
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|r| {
                    let scan = &scan;
                    s.spawn(move || scan(r))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("census worker panicked"))
                .fold(Partial::default(), Partial::merge)
        })
    };
    let (total, count) = if config.first_only {
        (merged.scanned, merged.first.map_or(0, |_| 1))
    } else {
        (outer * space.inner_len(q), merged.count)
    };
    let first_pointless = merged
        .first
        .map(|i| model_at(&field, &space, i))
        .transpose()?;
    Ok(CensusReport {
        q,
        g,
        total_models_scanned: total,
        pointless_count: count,
        first_pointless,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Smallest `g <= g_max` admitting a pointless smooth model, scanning upward.
pub fn min_pointless_genus(q: u64, g_max: u32, jobs: usize) -> Result<Option<u32>> {
    let config = CensusConfig {
        prefilter: true,
        jobs,
        first_only: true,
    };
    for g in 0..=g_max {
        if count_pointless(q, g, &config)?.pointless_count > 0 {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Every smooth genus-`g` model in the census space, in index order.
pub fn enumerate_models(
    q: u64,
    g: u32,
    prefilter: bool,
) -> Result<impl Iterator<Item = HyperellipticModel>> {
    let field = field_of_order(q)?;
    let space = Space::new(&field, g, prefilter)?;
    let len = space.outer_len(q) * space.inner_len(q);
    Ok((0..len).filter_map(move |i| {
        model_at(&field, &space, i)
            .ok()
            .filter(|m| m.genus() == g && m.is_smooth())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(q: u64, g: u32, prefilter: bool, jobs: usize) -> CensusReport {
        let config = CensusConfig {
            prefilter,
            jobs,
            first_only: false,
        };
        count_pointless(q, g, &config).unwrap()
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(count(3, 2, true, 1).total_models_scanned, 729);
        assert_eq!(
            count(3, 2, false, 1).total_models_scanned,
            2 * 729 + 2 * 243
        );
        assert_eq!(count(13, 0, true, 1).total_models_scanned, 6 * 169);
    }

    #[test]
    fn genus_zero_has_no_pointless_models() {
        for q in [3, 5, 7] {
            let r = count(q, 0, true, 1);
            assert_eq!(r.pointless_count, 0);
            assert!(r.first_pointless.is_none());
        }
        assert_eq!(count(3, 0, false, 1).pointless_count, 0);
    }

    #[test]
    fn prefilter_matches_unfiltered() {
        for q in [3, 5] {
            assert_eq!(
                count(q, 1, true, 1).pointless_count,
                count(q, 1, false, 1).pointless_count
            );
        }
        let (a, b) = (count(3, 2, true, 1), count(3, 2, false, 1));
        assert!(a.pointless_count > 0);
        assert_eq!(a.pointless_count, b.pointless_count);
        assert_eq!(a.first_pointless, b.first_pointless);
    }

    #[test]
    fn first_pointless_is_pointless() {
        let r = count(3, 2, true, 1);
        let m = r.first_pointless.unwrap();
        assert_eq!(m.count_points(1).unwrap(), 0);
        assert!(m.is_smooth());
        assert_eq!(m.genus(), 2);
    }

    #[test]
    fn partitions_cover_the_range() {
        let parts = partition(10, 4);
        assert_eq!(parts.first().unwrap().start, 0);
        assert_eq!(parts.last().unwrap().end, 10);
        for w in parts.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
    }

    #[test]
    fn jobs_do_not_change_the_answer() {
        let one = count(5, 2, true, 1);
        for k in [2, 3, 8] {
            let r = count(5, 2, true, k);
            assert_eq!(r.pointless_count, one.pointless_count);
            assert_eq!(r.first_pointless, one.first_pointless);
        }
    }

    #[test]
    fn even_pairs_over_f2() {
        let r = count(2, 2, true, 1);
        assert!(r.pointless_count > 0);
        assert_eq!(r.first_pointless.unwrap().count_points(1).unwrap(), 0);
        assert_eq!(count(2, 1, true, 1).pointless_count, 0);
    }

    #[test]
    fn caps_are_enforced() {
        let config = CensusConfig::default();
        assert!(matches!(
            count_pointless(13, 5, &config),
            Err(Error::SpaceTooLarge { .. })
        ));
        assert!(matches!(
            count_pointless(4, 5, &config),
            Err(Error::SpaceTooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_yields_smooth_models() {
        let models: Vec<_> = enumerate_models(3, 1, true).unwrap().collect();
        assert!(!models.is_empty());
        assert!(models.iter().all(|m| m.is_smooth() && m.genus() == 1));
    }

    #[test]
    fn min_genus_small() {
        assert_eq!(min_pointless_genus(3, 4, 1).unwrap(), Some(2));
        assert_eq!(min_pointless_genus(2, 4, 1).unwrap(), Some(2));
    }
}
