//! The perturbation witnesses `a₀` and `b_ε` that show the identity of the
//! augmentation ideal has `F^p` norm strictly above one for `p ≠ 2`.
//!
//! `a₀ = nδ_1 − Σ_g δ_g` lies in the ideal and `b_ε = a₀ + εΣ_g δ_g` leaves it,
//! while `𝟙₀ ∗ b_ε = a₀` for every `ε`. Choosing `ε` to minimise `‖b_ε‖_p`
//! gives the attained ratio `‖a₀‖_p / ‖b_ε‖_p ≤ ‖λ_p(𝟙₀)‖`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone)]
pub struct PerturbationWitnesses {
    pub a0: AlgebraElement,
    pub b_eps: AlgebraElement,
    pub epsilon: f64,
}

/// The maximiser of `f_p` on `(−1, 1)`; exactly zero at `p = 2`.
pub fn perturbation_epsilon(n: usize, p: f64) -> f64 {
    if p == 2.0 {
        return 0.0;
    }
    let m = (n - 1) as f64;
    let t = m.powf(1.0 / (p - 1.0));
    (t - m) / (t + 1.0)
}

/// `f_p(ε) = ‖a₀‖_p^p − ‖b_ε‖_p^p`, the difference of p-th powers.
pub fn perturbation_gap(n: usize, p: f64, epsilon: f64) -> f64 {
    let m = (n - 1) as f64;
    m.powf(p) + m - (m + epsilon).abs().powf(p) - m * (1.0 - epsilon).abs().powf(p)
}

pub fn perturbation_witnesses(group: &Arc<FiniteGroup>, p: f64) -> Result<PerturbationWitnesses> {
    let n = group.order();
    if n < 3 {
        return Err(Error::GroupTooSmall { order: n, min: 3 });
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent {
            p,
            reason: "perturbation witnesses need 1 < p < ∞",
        });
    }
    let epsilon = perturbation_epsilon(n, p);
    let mut a0 = vec![Complex64::new(-1.0, 0.0); n];
    a0[0] = Complex64::new((n - 1) as f64, 0.0);
    let b: Vec<Complex64> = a0.iter().map(|&x| x + epsilon).collect();
    Ok(PerturbationWitnesses {
        a0: AlgebraElement::new(group.clone(), a0)?,
        b_eps: AlgebraElement::new(group.clone(), b)?,
        epsilon,
    })
}

/// Closed form of `(‖a₀‖_p / ‖b_{ε_p}‖_p)^p` for groups of order three:
/// `(2^p + 2)(2^{1/(p−1)} + 1)^p / (3^p (2^{p/(p−1)} + 2))`.
///
/// This is a ratio of p-th powers. The attained norm ratio is its `1/p`-th root.
pub fn ratio_power_formula(p: f64) -> f64 {
    let q = p / (p - 1.0);
    (2f64.powf(p) + 2.0) * (2f64.powf(1.0 / (p - 1.0)) + 1.0).powf(p)
        / (3f64.powf(p) * (2f64.powf(q) + 2.0))
}
