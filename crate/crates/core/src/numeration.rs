//! Fundamental sequences, evaluation and greedy expansion.
//!
//! Every member of a collection evaluates to a distinct nonnegative integer
//! over the collection's fundamental sequence `H`, and every integer is hit
//! exactly once. Expansion runs greedily from the top index, with each digit
//! capped by the block pattern it would continue; the result is checked for
//! membership before it is returned.

use std::sync::{PoisonError, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::collections::{is_member, CoeffFn, Digit, ListSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerationError {
    #[error("greedy expansion of {value} over ({list}) is not a member")]
    InternalInconsistency { list: String, value: BigUint },
}

/// `H_1, H_2, ...` for a list, extended on demand.
///
/// Terms live behind a lock so a shared sequence can grow from any thread;
/// readers never observe a partially written prefix.
#[derive(Debug)]
pub struct FundamentalSequence {
    list: ListSpec,
    terms: RwLock<Vec<BigUint>>,
}

impl Clone for FundamentalSequence {
    fn clone(&self) -> Self {
        Self {
            list: self.list.clone(),
            terms: RwLock::new(self.read().clone()),
        }
    }
}

/// First `count` terms (at least one) of the fundamental sequence of `list`.
pub fn fundamental_sequence(list: &ListSpec, count: usize) -> FundamentalSequence {
    let seq = FundamentalSequence::new(list.clone());
    seq.ensure(count.max(1));
    seq
}

impl FundamentalSequence {
    pub fn new(list: ListSpec) -> Self {
        Self {
            list,
            terms: RwLock::new(vec![BigUint::one()]),
        }
    }

    pub fn list(&self) -> &ListSpec {
        &self.list
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Vec<BigUint>> {
        self.terms.read().unwrap_or_else(PoisonError::into_inner)
    }

    /// Number of cached terms.
    pub fn len(&self) -> usize {
        self.read().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Extends the cache to hold at least `count` terms.
    pub fn ensure(&self, count: usize) {
        if self.read().len() >= count {
            return;
        }
        let mut terms = self.terms.write().unwrap_or_else(PoisonError::into_inner);
        while terms.len() < count {
            let next = next_term(&self.list, &terms);
            terms.push(next);
        }
    }

    /// `H_k` for `k >= 1`.
    pub fn term(&self, k: usize) -> BigUint {
        assert!(k >= 1, "fundamental sequence is indexed from 1");
        self.ensure(k);
        self.read()[k - 1].clone()
    }

    /// Copy of `H_1..H_count`.
    pub fn terms(&self, count: usize) -> Vec<BigUint> {
        self.ensure(count);
        self.read()[..count].to_vec()
    }

    /// `Σ ε_k H_k`.
    pub fn eval(&self, eps: &CoeffFn) -> BigUint {
        self.ensure(eps.ord());
        let terms = self.read();
        eps.nonzero()
            .fold(BigUint::zero(), |acc, (k, d)| acc + &terms[k - 1] * d)
    }

    /// Greedy expansion of `n`; the inverse of [`eval`](Self::eval) on members.
    ///
    /// Plain floor division is not enough: for `(2,3,0)`, `9 = 3·H_2` has digit
    /// 3 above `e_1`, while the member is `(3,2)`. Since evaluation is order
    /// preserving, taking at each index the largest digit that keeps the value
    /// `<= n` and stays within the running block's pattern (zeros below are
    /// always a valid completion) lands on the largest member `<= n`.
    pub fn encode(&self, n: &BigUint) -> Result<CoeffFn, NumerationError> {
        if n.is_zero() {
            return Ok(CoeffFn::zero());
        }
        // Grow until the last term exceeds n, so the top index is in the cache.
        let mut count = self.len();
        while &self.term(count) <= n {
            count += 1;
        }
        let terms = self.read();
        let top = terms[..count].partition_point(|h| h <= n);
        let mut digits = vec![0 as Digit; top];
        let mut rest = n.clone();
        // Offset inside the current block; a digit below the pattern closes it.
        let mut offset = 0;
        for k in (1..=top).rev() {
            let cap = self.list.pattern(offset);
            let q = (&rest / &terms[k - 1]).to_u32().unwrap_or(Digit::MAX);
            let d = q.min(cap);
            rest -= &terms[k - 1] * d;
            digits[k - 1] = d;
            offset = if d < cap { 0 } else { offset + 1 };
        }
        let eps = CoeffFn::from_digits(digits);
        if !rest.is_zero() || !is_member(&self.list, &eps) {
            return Err(self.inconsistency(n));
        }
        Ok(eps)
    }

    fn inconsistency(&self, n: &BigUint) -> NumerationError {
        NumerationError::InternalInconsistency {
            list: self.list.to_string(),
            value: n.clone(),
        }
    }
}

/// Next term from the first-`N` rule `H_n = 1 + Σ θ̂^n H` or the order-`N`
/// recurrence `H_n = Σ_{k<N} e_k H_{n-k} + (1 + e_N) H_{n-N}`.
fn next_term(list: &ListSpec, terms: &[BigUint]) -> BigUint {
    let n = terms.len() + 1;
    let big_n = list.len();
    if n <= big_n {
        // θ̂^n has digit e_{((n-1-k) mod N)+1} at index k < n.
        (1..n).fold(BigUint::one(), |acc, k| {
            acc + &terms[k - 1] * list.pattern(n - 1 - k)
        })
    } else {
        let mut acc = &terms[n - big_n - 1] * (list.entry(big_n) + 1);
        for k in 1..big_n {
            acc += &terms[n - k - 1] * list.entry(k);
        }
        acc
    }
}

/// `Σ ε_k H_k`.
pub fn eval_int(eps: &CoeffFn, h: &FundamentalSequence) -> BigUint {
    h.eval(eps)
}

/// Greedy expansion of `n` in the collection of `list`.
pub fn encode_greedy(list: &ListSpec, n: &BigUint) -> Result<CoeffFn, NumerationError> {
    FundamentalSequence::new(list.clone()).encode(n)
}

/// Every member with value below `max_value`, in increasing value order.
///
/// Exhaustive: all digit vectors with digits up to the largest list entry are
/// generated top-down (pruned by value), then filtered by membership. This is
/// independent of greedy expansion and serves as its oracle.
pub fn enumerate_collection(list: &ListSpec, max_value: &BigUint) -> Vec<(CoeffFn, BigUint)> {
    if max_value.is_zero() {
        return Vec::new();
    }
    let h = FundamentalSequence::new(list.clone());
    let mut top = 0;
    while &h.term(top + 1) < max_value {
        top += 1;
    }
    let terms = h.terms(top.max(1));
    let mut out = Vec::new();
    let mut digits = vec![0 as Digit; top];
    walk(list, &terms, max_value, top, BigUint::zero(), &mut digits, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

fn walk(
    list: &ListSpec,
    terms: &[BigUint],
    max_value: &BigUint,
    k: usize,
    value: BigUint,
    digits: &mut Vec<Digit>,
    out: &mut Vec<(CoeffFn, BigUint)>,
) {
    if k == 0 {
        let eps = CoeffFn::from_digits(digits.clone());
        if is_member(list, &eps) {
            out.push((eps, value));
        }
        return;
    }
    for d in 0..=list.max_entry() {
        let v = &value + &terms[k - 1] * d;
        if &v >= max_value {
            break;
        }
        digits[k - 1] = d;
        walk(list, terms, max_value, k - 1, v, digits, out);
    }
    digits[k - 1] = 0;
}
