//! Characteristic polynomials, dominant roots and the scalar constants that
//! govern the growth of `z(x)`.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::collections::ListSpec;
use crate::duality::SystemPair;
use crate::numeration::FundamentalSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("polynomial has no sign change on the search interval")]
    NoSignChange,
}

/// Integer polynomial, `coeffs[i]` is the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i64)
                .collect(),
        }
    }

    /// Coefficients of `self / (x - r)`, lowest power first; the remainder is dropped.
    pub fn deflate(&self, r: f64) -> Vec<f64> {
        let n = self.degree();
        let mut q = vec![0.0; n];
        let mut carry = 0.0;
        for i in (1..=n).rev() {
            carry = carry * r + self.coeffs[i] as f64;
            q[i - 1] = carry;
        }
        q
    }
}

/// `x^N - Σ_{k<N} e_k x^{N-k} - (1 + e_N)`.
pub fn char_poly(list: &ListSpec) -> Polynomial {
    let n = list.len();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[n] = 1;
    for k in 1..n {
        coeffs[n - k] = -i64::from(list.entry(k));
    }
    coeffs[0] = -(1 + i64::from(list.entry(n)));
    Polynomial { coeffs }
}

/// The positive root of a characteristic polynomial (it is simple and above 1).
///
/// Bisection on `[1, 2 + Σ|c|]` brackets the root, Newton steps polish it.
pub fn dominant_root(poly: &Polynomial) -> Result<f64, SpectraError> {
    let mut lo = 1.0;
    let mut hi = 2.0 + poly.coeffs[..poly.degree()].iter().map(|c| c.abs() as f64).sum::<f64>();
    if poly.eval(lo) >= 0.0 || poly.eval(hi) <= 0.0 {
        return Err(SpectraError::NoSignChange);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if poly.eval(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    let d = poly.derivative();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let step = poly.eval(x) / d.eval(x);
        x -= step;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    Ok(x)
}

/// `lim H_n / φ^{n-1}`, from the coefficients of `g = f / (x - φ)`:
/// `α = Σ_{k=1}^{N} H_k g_{k-1} / f'(φ)`.
pub fn alpha_constant(list: &ListSpec, h: &FundamentalSequence, phi: f64) -> f64 {
    let f = char_poly(list);
    let g = f.deflate(phi);
    let n = list.len();
    let sum: f64 = h
        .terms(n)
        .iter()
        .zip(&g)
        .map(|(hk, gk)| hk.to_f64().unwrap_or(f64::INFINITY) * gk)
        .sum();
    sum / f.derivative().eval(phi)
}

/// Scalar constants of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConstants {
    pub phi: f64,
    pub phi_sup: f64,
    pub omega: f64,
    pub omega_sup: f64,
    /// `ln φ / ln φ̃`, the growth exponent of `z`.
    pub gamma: f64,
    pub alpha: f64,
    pub alpha_sup: f64,
    /// Value of `β̄¹` over the super-collection weights `ω̃^k`.
    pub rho: f64,
    /// Exponent of the generic upper bound of `δ*`.
    pub p: u32,
    /// Bound on the position of the tail in a maximizer.
    pub p_star: f64,
    /// `max(2, p)`; minimizers live below this index.
    pub p_dagger: u32,
}

impl SpectralConstants {
    /// `α / α̃^γ`, the factor turning `δ*` into a bound for `z(x)/x^γ`.
    pub fn scale(&self) -> f64 {
        self.alpha / self.alpha_sup.powf(self.gamma)
    }
}

pub fn derived_constants(pair: &SystemPair) -> SpectralConstants {
    let sub = pair.sub();
    let phi = dominant_root(&char_poly(sub)).expect("characteristic polynomial has a positive root");
    let phi_sup =
        dominant_root(&char_poly(pair.sup())).expect("characteristic polynomial has a positive root");
    let omega = 1.0 / phi;
    let omega_sup = 1.0 / phi_sup;
    let gamma = phi.ln() / phi_sup.ln();
    let alpha = alpha_constant(sub, pair.h(), phi);
    let alpha_sup = alpha_constant(pair.sup(), pair.h_sup(), phi_sup);

    let n = sub.len();
    let rho = (1..=n)
        .map(|k| f64::from(sub.entry(k)) * omega_sup.powi(k as i32))
        .sum::<f64>()
        / (1.0 - omega_sup.powi(n as i32));

    let mut p = 1u32;
    while gamma * omega_sup.powi(p as i32 - 1) >= omega.powi(p as i32) {
        p += 1;
    }
    let p_star = f64::from(p)
        + 1.0
        + (n as f64 * phi.ln() + (1.0 - rho + omega_sup.powi(n as i32)).ln())
            / (phi_sup.ln() - phi.ln());

    SpectralConstants {
        phi,
        phi_sup,
        omega,
        omega_sup,
        gamma,
        alpha,
        alpha_sup,
        rho,
        p,
        p_star,
        p_dagger: p.max(2),
    }
}
