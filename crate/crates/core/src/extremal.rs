//! The envelope of `z(x)/x^γ`.
//!
//! Along the super-collection's geometric scale the ratio `z(x)/x^γ` is
//! asymptotically `(α/α̃^γ)·δ*`, where `δ*` is a function of the normalized
//! leading digits of `x`. Its extreme values are attained on a finite,
//! explicitly enumerable set of candidates:
//!
//! - maximizers are a prefix made of proper `L*`-blocks (read bottom-up from
//!   index 1) followed by the periodic tail `β̄^{b+1} = (e_1, e_2, ...)`
//!   starting right above the prefix, with the tail no higher than `p*`;
//! - minimizers are finite `L*`-block sums supported below `p† = max(2, p)`.
//!
//! Both searches only look at candidates whose first digit is nonzero; every
//! value of `δ*` is already taken on that slice of the unit interval.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::collections::{CoeffFn, Digit, ListSpec};
use crate::duality::SystemPair;
use crate::spectra::{derived_constants, SpectralConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("invalid candidate {candidate}: {reason}")]
    InvalidCandidate { candidate: String, reason: String },
}

/// `prefix` alone, or `prefix + β̄^{b+1}` when `tail` is `Some(b + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarCandidate {
    pub prefix: CoeffFn,
    pub tail: Option<usize>,
}

impl StarCandidate {
    pub fn finite(prefix: CoeffFn) -> Self {
        Self { prefix, tail: None }
    }

    pub fn with_tail(prefix: CoeffFn, tail: usize) -> Self {
        Self {
            prefix,
            tail: Some(tail),
        }
    }

    /// `β¹`.
    pub fn beta1() -> Self {
        Self::finite(CoeffFn::basis(1))
    }

    /// `β̄¹`, the pure periodic tail.
    pub fn bar_beta1() -> Self {
        Self::with_tail(CoeffFn::zero(), 1)
    }

    /// Checks the block structure against the subcollection's list.
    pub fn validate(&self, list: &ListSpec) -> Result<(), ExtremalError> {
        let fail = |reason: &str| {
            Err(ExtremalError::InvalidCandidate {
                candidate: self.to_string(),
                reason: reason.to_string(),
            })
        };
        match self.tail {
            Some(0) => fail("tail index starts at 1"),
            Some(t) => {
                let b = t - 1;
                if self.prefix.ord() > b {
                    return fail("prefix reaches into the tail");
                }
                if b >= 1 && self.prefix.get(1) == 0 {
                    return fail("first digit is zero");
                }
                if !partitions_exactly(list, &self.prefix, b) {
                    return fail("prefix is not a union of proper blocks on [1, b]");
                }
                Ok(())
            }
            None => {
                if self.prefix.get(1) == 0 {
                    return fail("first digit is zero");
                }
                if !is_finite_star_member(list, &self.prefix) {
                    return fail("not a union of proper blocks");
                }
                Ok(())
            }
        }
    }
}

/// `1:1,3:2` for finite candidates, `1:1+bar:4` with a tail, `bar:1` for `β̄¹`.
impl fmt::Display for StarCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.prefix.is_zero(), self.tail) {
            (_, None) => write!(f, "{}", self.prefix),
            (true, Some(t)) => write!(f, "bar:{t}"),
            (false, Some(t)) => write!(f, "{}+bar:{t}", self.prefix),
        }
    }
}

/// Reads proper `L*`-blocks upward from `start`; returns the top index of the
/// block, or `None` if a digit exceeds the pattern or the block runs past `limit`.
fn star_block_end(list: &ListSpec, eps: &CoeffFn, start: usize, limit: usize) -> Option<usize> {
    let mut j = start;
    while j <= limit {
        let expected = list.pattern(j - start);
        let d = eps.get(j);
        if d > expected {
            return None;
        }
        if d < expected {
            return Some(j);
        }
        j += 1;
    }
    None
}

/// True when `[1, b]` splits exactly into proper `L*`-blocks of `eps`.
fn partitions_exactly(list: &ListSpec, eps: &CoeffFn, b: usize) -> bool {
    let mut i = 1;
    while i <= b {
        match star_block_end(list, eps, i, b) {
            Some(end) => i = end + 1,
            None => return false,
        }
    }
    true
}

/// Membership in the finite part of `E*`: proper blocks from index 1 upward,
/// where blocks may run past the support on zero digits.
pub fn is_finite_star_member(list: &ListSpec, eps: &CoeffFn) -> bool {
    // A block started at or below ord closes within N further steps, because
    // the pattern returns to e_1 >= 1 while the digits are zero.
    let limit = eps.ord() + list.len() + 1;
    let mut i = 1;
    while i <= eps.ord() {
        match star_block_end(list, eps, i, limit) {
            Some(end) => i = end + 1,
            None => return false,
        }
    }
    true
}

/// Every digit vector on `[1, b]` that splits exactly into proper `L*`-blocks,
/// in lexicographic order of block lengths and closing digits.
pub fn star_prefixes(list: &ListSpec, b: usize) -> Vec<CoeffFn> {
    let mut out = Vec::new();
    let mut digits = vec![0 as Digit; b];
    fill_blocks(list, b, 1, &mut digits, &mut out);
    out
}

fn fill_blocks(list: &ListSpec, b: usize, start: usize, digits: &mut Vec<Digit>, out: &mut Vec<CoeffFn>) {
    if start > b {
        out.push(CoeffFn::from_digits(digits.clone()));
        return;
    }
    for len in 1..=(b + 1 - start) {
        let top = start + len - 1;
        for k in start..top {
            digits[k - 1] = list.pattern(k - start);
        }
        for last in 0..list.pattern(len - 1) {
            digits[top - 1] = last;
            fill_blocks(list, b, top + 1, digits, out);
        }
    }
    for d in digits.iter_mut().skip(start - 1) {
        *d = 0;
    }
}

/// `δ*` of a candidate:
/// `(Σ ε_k ω^k + ω^b) / (Σ ε_k ω̃^k + ρ ω̃^b)^γ`, the tail terms present only
/// when the candidate has one.
pub fn delta_star(
    pair: &SystemPair,
    cand: &StarCandidate,
    consts: &SpectralConstants,
) -> Result<f64, ExtremalError> {
    cand.validate(pair.sub())?;
    Ok(delta_star_unchecked(cand, consts))
}

fn delta_star_unchecked(cand: &StarCandidate, c: &SpectralConstants) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (k, d) in cand.prefix.nonzero() {
        num += f64::from(d) * c.omega.powi(k as i32);
        den += f64::from(d) * c.omega_sup.powi(k as i32);
    }
    if let Some(t) = cand.tail {
        let b = (t - 1) as i32;
        num += c.omega.powi(b);
        den += c.rho * c.omega_sup.powi(b);
    }
    num / den.powf(c.gamma)
}

/// Number of digit vectors on `[1, n]` made of proper `L*`-blocks, for `n = 0..=n_max`.
pub fn count_cn(list: &ListSpec, n_max: usize) -> Vec<BigUint> {
    let big_n = list.len();
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n_max {
        let next = if k <= big_n {
            (1..=k).fold(BigUint::zero(), |acc, j| acc + &c[k - j] * list.entry(j))
        } else {
            let mut acc = &c[k - big_n] * (list.entry(big_n) + 1);
            for j in 1..big_n {
                acc += &c[k - j] * list.entry(j);
            }
            acc
        };
        c.push(next);
    }
    c
}

/// Checks `(Σ C_k x^k)·f(x) = 1 - x^N` up to `x^degree` over the integers,
/// with `f(x) = 1 - Σ_{k<N} e_k x^k - (1 + e_N) x^N`.
pub fn generating_identity_check(list: &ListSpec, degree: usize) -> bool {
    let big_n = list.len();
    let c: Vec<BigInt> = count_cn(list, degree).into_iter().map(BigInt::from).collect();
    let mut f = vec![BigInt::zero(); big_n + 1];
    f[0] = BigInt::one();
    for (k, fk) in f.iter_mut().enumerate().take(big_n).skip(1) {
        *fk = -BigInt::from(list.entry(k));
    }
    f[big_n] = -BigInt::from(list.entry(big_n) + 1);
    (0..=degree).all(|d| {
        let conv: BigInt = (0..=d.min(big_n)).map(|j| &f[j] * &c[d - j]).sum();
        let expected = if d == 0 {
            BigInt::one()
        } else if d == big_n {
            -BigInt::one()
        } else {
            BigInt::zero()
        };
        conv == expected
    })
}

/// `(1 - ρ) Σ_{b=0}^{terms} C_b ω̃^b`, the measure of the cylinder sets
/// covered by candidates with tails at `b + 1 <= terms + 1`.
pub fn measure_check(pair: &SystemPair, consts: &SpectralConstants, terms: usize) -> f64 {
    let c = count_cn(pair.sub(), terms);
    let sum: f64 = c
        .iter()
        .enumerate()
        .map(|(b, cb)| cb.to_f64().unwrap_or(f64::INFINITY) * consts.omega_sup.powi(b as i32))
        .sum();
    sum * (1.0 - consts.rho)
}

/// Upper bound on the part of the measure series beyond `terms`, using
/// `C_b <= φ^b`.
pub fn measure_tail_bound(consts: &SpectralConstants, terms: usize) -> f64 {
    let r = consts.phi * consts.omega_sup;
    (1.0 - consts.rho) * r.powi(terms as i32 + 1) / (1.0 - r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    pub constants: SpectralConstants,
    pub max_candidate: StarCandidate,
    pub min_candidate: StarCandidate,
    pub delta_max: f64,
    pub delta_min: f64,
    pub limsup: f64,
    pub liminf: f64,
    /// Tail candidates first (by tail index), then finite candidates.
    pub all_candidates: Vec<(StarCandidate, f64)>,
}

/// Tail candidates of the maximum search: tails at `1..=ceil(max(2, p*))`.
pub fn max_candidates(list: &ListSpec, consts: &SpectralConstants) -> Vec<StarCandidate> {
    let top = consts.p_star.max(2.0).ceil() as usize;
    let mut out = Vec::new();
    for tail in 1..=top {
        for prefix in star_prefixes(list, tail - 1) {
            if tail == 1 || prefix.get(1) >= 1 {
                out.push(StarCandidate::with_tail(prefix, tail));
            }
        }
    }
    out
}

/// Finite candidates of the minimum search: support in `[1, p† - 1]`.
pub fn min_candidates(list: &ListSpec, consts: &SpectralConstants) -> Vec<StarCandidate> {
    let width = consts.p_dagger as usize - 1;
    let mut out = Vec::new();
    let mut digits = vec![0 as Digit; width];
    loop {
        let eps = CoeffFn::from_digits(digits.clone());
        if eps.get(1) >= 1 && is_finite_star_member(list, &eps) {
            out.push(StarCandidate::finite(eps));
        }
        // Odometer over digits 0..=max_entry.
        let mut k = 0;
        while k < width && digits[k] == list.max_entry() {
            digits[k] = 0;
            k += 1;
        }
        if k == width {
            break;
        }
        digits[k] += 1;
    }
    let beta1 = StarCandidate::beta1();
    if !out.contains(&beta1) {
        out.push(beta1);
    }
    out
}

/// Arg-max (or arg-min) with ties broken by the smaller serialization.
fn pick(items: &[(StarCandidate, f64)], want: Ordering) -> &(StarCandidate, f64) {
    items
        .iter()
        .reduce(|best, cur| {
            match cur.1.partial_cmp(&best.1).unwrap_or(Ordering::Equal) {
                o if o == want => cur,
                Ordering::Equal if cur.0.to_string() < best.0.to_string() => cur,
                _ => best,
            }
        })
        .expect("candidate lists are never empty")
}

/// Runs both finite searches and scales the extreme `δ*` values into the
/// lim sup and lim inf of `z(x)/x^γ`.
pub fn extremes(pair: &SystemPair) -> ExtremalReport {
    let consts = derived_constants(pair);
    let eval = |cands: Vec<StarCandidate>| -> Vec<(StarCandidate, f64)> {
        cands
            .into_iter()
            .map(|c| {
                let d = delta_star(pair, &c, &consts).expect("generated candidates are valid");
                (c, d)
            })
            .collect()
    };
    let maxes = eval(max_candidates(pair.sub(), &consts));
    let mins = eval(min_candidates(pair.sub(), &consts));
    let (max_candidate, delta_max) = pick(&maxes, Ordering::Greater).clone();
    let (min_candidate, delta_min) = pick(&mins, Ordering::Less).clone();
    let scale = consts.scale();
    let mut all_candidates = maxes;
    all_candidates.extend(mins);
    ExtremalReport {
        constants: consts,
        max_candidate,
        min_candidate,
        delta_max,
        delta_min,
        limsup: scale * delta_max,
        liminf: scale * delta_min,
        all_candidates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(v: &[u32]) -> ListSpec {
        ListSpec::new(v.to_vec()).unwrap()
    }

    fn pair(a: &[u32], b: &[u32]) -> SystemPair {
        SystemPair::new(list(a), list(b)).unwrap()
    }

    fn golden() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }

    #[test]
    fn delta_examples() {
        let p = pair(&[1, 0], &[1, 1]);
        let c = derived_constants(&p);
        assert!((delta_star(&p, &StarCandidate::beta1(), &c).unwrap() - 1.0).abs() < 1e-12);
        let top = delta_star(&p, &StarCandidate::bar_beta1(), &c).unwrap();
        assert!((top - 1.5f64.powf(c.gamma)).abs() < 1e-12);

        let p = pair(&[2, 0, 1], &[10, 4]);
        let c = derived_constants(&p);
        let em = StarCandidate::with_tail(CoeffFn::basis(1), 2);
        let d = delta_star(&p, &em, &c).unwrap();
        assert!((d - 2.0 / (1.0 + c.rho).powf(c.gamma)).abs() < 1e-12);
        assert!((d - 1.8757).abs() < 5e-4);
    }

    #[test]
    fn invalid_candidates() {
        let p = pair(&[1, 0], &[1, 1]);
        let c = derived_constants(&p);
        let bad = [
            StarCandidate::finite(CoeffFn::from_digits(vec![1, 1])),
            StarCandidate::finite(CoeffFn::from_digits(vec![0, 1])),
            StarCandidate::with_tail(CoeffFn::from_digits(vec![1, 0, 1]), 3),
            StarCandidate::with_tail(CoeffFn::basis(1), 2),
        ];
        for cand in bad {
            assert!(delta_star(&p, &cand, &c).is_err(), "{cand}");
        }
        assert!(delta_star(&p, &StarCandidate::with_tail(CoeffFn::basis(1), 4), &c).is_ok());
    }

    #[test]
    fn block_counts_match_enumeration() {
        for l in [list(&[1, 0]), list(&[2, 3, 0]), list(&[2, 0, 1]), list(&[1, 1, 0]), list(&[3, 0, 0, 1])] {
            let c = count_cn(&l, 12);
            assert_eq!(c[0], BigUint::one());
            assert_eq!(c[1], BigUint::from(l.entry(1)));
            for (b, cb) in c.iter().enumerate() {
                let all = star_prefixes(&l, b);
                assert_eq!(BigUint::from(all.len()), *cb, "{l} b={b}");
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
            }
        }
        let fib: Vec<u64> = count_cn(&list(&[1, 0]), 6).iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(fib, vec![1, 1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn generating_identity() {
        for l in [list(&[1, 0]), list(&[2, 3, 0]), list(&[10, 4]), list(&[1, 1, 1, 1, 0])] {
            assert!(generating_identity_check(&l, 50));
            assert!(generating_identity_check(&l, l.len()));
        }
    }

    #[test]
    fn measure_is_one() {
        for (a, b) in [(&[1u32, 0][..], &[1u32, 1][..]), (&[1, 1, 0], &[2, 2, 2]), (&[2, 0, 1], &[10, 4])] {
            let p = pair(a, b);
            let c = derived_constants(&p);
            let m = measure_check(&p, &c, 200);
            assert!((m + measure_tail_bound(&c, 200) - 1.0).abs() < 1e-6);
            assert!(measure_check(&p, &c, 0) < 1.0);
            assert!((measure_check(&p, &c, 0) - (1.0 - c.rho)).abs() < 1e-15);
        }
    }

    #[test]
    fn binary_extremes() {
        let r = extremes(&pair(&[1, 0], &[1, 1]));
        let phi = golden();
        let gamma = r.constants.gamma;
        assert!((r.liminf - (3.0 * phi + 1.0) / 5.0).abs() < 1e-10);
        assert!((r.limsup - (phi + 2.0) / 5.0 * 3f64.powf(gamma)).abs() < 1e-10);
        assert_eq!(r.max_candidate, StarCandidate::bar_beta1());
        assert_eq!(r.min_candidate, StarCandidate::beta1());
        // Only β̄¹ and (1,0,0)+β̄⁴ survive as tail candidates with first digit 1
        // once p* < 5; the tail at 5 adds the remaining prefixes of length 4.
        let tails: Vec<String> = r
            .all_candidates
            .iter()
            .filter(|(c, _)| c.tail.is_some() && c.tail.unwrap() <= 4)
            .map(|(c, _)| c.to_string())
            .collect();
        assert_eq!(tails, vec!["bar:1", "1:1+bar:4"]);
    }

    #[test]
    fn second_pair_extremes() {
        let r = extremes(&pair(&[2, 0, 1], &[10, 4]));
        assert!((r.limsup - 2.2666).abs() < 5e-4);
        assert!((r.liminf - 1.2084).abs() < 5e-4);
        assert_eq!(r.max_candidate.to_string(), "1:1+bar:2");
        assert!((r.delta_min - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generic_upper_bound_holds() {
        for (a, b) in [(&[1u32, 0][..], &[1u32, 1][..]), (&[1, 1, 0], &[2, 2, 2]), (&[2, 0, 1], &[10, 4])] {
            let r = extremes(&pair(a, b));
            let c = r.constants;
            let bound = (c.omega / c.omega_sup).powi(c.p as i32) / c.gamma;
            for (cand, d) in &r.all_candidates {
                assert!(*d < bound, "{cand}: {d} >= {bound}");
            }
            assert!(r.delta_min >= 1.0 - 1e-12);
            if c.p <= 2 {
                assert!((r.delta_min - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ties_prefer_smaller_serialization() {
        let a = (StarCandidate::beta1(), 1.0);
        let b = (StarCandidate::bar_beta1(), 1.0);
        let items = vec![b.clone(), a.clone()];
        assert_eq!(pick(&items, Ordering::Greater).0, a.0);
        assert_eq!(pick(&items, Ordering::Less).0, a.0);
    }
}
