//! Certificates that the multiplier algebra of the augmentation ideal of
//! `Z/3Z` admits no isometric representation on any `L^q` space.
//!
//! The idempotent `e = γΔ_1 + γ̄Δ_2` has `‖e‖₁ = ‖𝟙₀ − e‖₁ = 1`, so it is
//! bicontractive for every `p`. On an `L^q` space the symmetry of a
//! bicontractive idempotent is an invertible isometry, so any exponent at which
//! `⦀𝟙₀ − 2e⦀_p > 1` rules out an isometric representation. The lower bound on
//! `⦀𝟙₀ − 2e⦀_p` comes from `(𝟙₀ − 2e)² = 𝟙₀`:
//!
//! `⦀𝟙₀ − 2e⦀_p ≥ ‖𝟙₀‖_{F^p} / ‖𝟙₀ − 2e‖_{F^p} ≥ ‖𝟙₀‖_{F^p} / (2√3/3)^{|2/p − 1|}`.

use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::gelfand::z3_idempotent;
use crate::group::FiniteGroup;
use crate::multiplier::multiplier_norm_bounds;
use crate::pnorm::{conjugate_exponent, DEFAULT_RESTARTS};
use crate::witness::ratio_power_formula;

/// The exponent below which the closed-form chain is claimed to certify.
pub const P0: f64 = 1.606;
/// Margin the symmetry's lower bound must clear.
pub const VERDICT_MARGIN: f64 = 1e-6;
/// Slack on the bicontractivity upper bounds.
pub const BICONTRACTIVE_SLACK: f64 = 1e-9;
/// Replay tolerance on every trail value.
pub const REPLAY_TOL: f64 = 1e-12;

pub fn p0_conj() -> f64 {
    conjugate_exponent(P0)
}

/// `2√3/3`, the `ℓ¹` norm of `𝟙₀ − 2e`.
pub fn symmetry_l1() -> f64 {
    2.0 * 3f64.sqrt() / 3.0
}

/// Riesz–Thorin bound `(2√3/3)^{|2/p − 1|}` on `‖𝟙₀ − 2e‖_{F^p}`.
pub fn symmetry_upper(p: f64) -> f64 {
    symmetry_l1().powf((2.0 / p - 1.0).abs())
}

/// The closed form
/// `(2^{p/(p−1)} + 2)(2^{p−1} + 1)^{1/(p−1)} / (3^{1/2 − 1/p + p/(p−1)} · 2^{2/p})`,
/// defined on `1 < p < 2`.
///
/// It equals `ratio_power_formula(p′) / (2√3/3)^{2/p − 1}`.
pub fn h(p: f64) -> Result<f64> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::InvalidExponent {
            p,
            reason: "h is defined on 1 < p < 2",
        });
    }
    let q = p / (p - 1.0);
    Ok((2f64.powf(q) + 2.0) * (2f64.powf(p - 1.0) + 1.0).powf(1.0 / (p - 1.0))
        / (3f64.powf(0.5 - 1.0 / p + q) * 2f64.powf(2.0 / p)))
}

/// Lower bound on `‖𝟙₀‖_{F^p(Z/3Z)}` from the perturbation witnesses.
///
/// The witnesses give `‖𝟙₀‖_{F^p} ≥ ‖a₀‖_p/‖b_ε‖_p`, the `1/p`-th root of
/// [`ratio_power_formula`]. Since `𝟙₀` is symmetric its `F^p` and `F^{p′}`
/// norms agree, so the better of the two exponents is used. Exact at `p = 1`
/// (`4/3`) and `p = 2` (`1`).
pub fn one_zero_fp_lower(p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent {
            p,
            reason: "norms need p ≥ 1",
        });
    }
    if p == 1.0 || p.is_infinite() {
        return Ok(4.0 / 3.0);
    }
    if p == 2.0 {
        return Ok(1.0);
    }
    let q = conjugate_exponent(p);
    let at = |r: f64| ratio_power_formula(r).powf(1.0 / r);
    Ok(at(p).max(at(q)))
}

/// Which part of [`symmetry_lower`] produced the reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerSource {
    Analytic,
    Empirical,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryLower {
    pub value: f64,
    pub analytic: f64,
    pub empirical: f64,
    pub source: LowerSource,
}

/// The closed-form chain `‖𝟙₀‖_{F^p} / ‖𝟙₀ − 2e‖_{F^p}` with both sides bounded
/// soundly; exact at `p ∈ {1, 2}`.
pub fn symmetry_lower_analytic(p: f64) -> Result<f64> {
    if p == 1.0 {
        return Ok(symmetry_l1());
    }
    if p == 2.0 {
        return Ok(1.0);
    }
    Ok(one_zero_fp_lower(p)? / symmetry_upper(p))
}

/// The quoted closed form for the chain: `h(p)` below 2, `h(p′)` above.
pub fn symmetry_lower_formula_value(p: f64) -> Result<f64> {
    if p == 1.0 {
        Ok(symmetry_l1())
    } else if p == 2.0 {
        Ok(1.0)
    } else if p < 2.0 {
        h(p)
    } else {
        h(conjugate_exponent(p))
    }
}

fn z3() -> Arc<FiniteGroup> {
    FiniteGroup::cyclic(3).expect("3 is a valid order")
}

/// Max of the analytic chain and the witness-based multiplier bound.
pub fn symmetry_lower(p: f64, seed: u64) -> Result<SymmetryLower> {
    symmetry_lower_with(p, seed, DEFAULT_RESTARTS)
}

pub fn symmetry_lower_with(p: f64, seed: u64, restarts: usize) -> Result<SymmetryLower> {
    let g = z3();
    let s = symmetry_element(&g)?;
    let analytic = symmetry_lower_analytic(p)?;
    let empirical = multiplier_norm_bounds(&g, &s, p, restarts, seed)?.lower;
    // rounding-level gains are not improvements
    let (value, source) = if empirical > analytic + 1e-12 {
        (empirical, LowerSource::Empirical)
    } else {
        (analytic, LowerSource::Analytic)
    };
    Ok(SymmetryLower {
        value,
        analytic,
        empirical,
        source,
    })
}

fn symmetry_element(g: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
    let e = z3_idempotent(g)?;
    Ok(&AlgebraElement::one_zero(g)? - &e.scale(2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NOT_LQ_REPRESENTABLE")]
    NotLqRepresentable,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NotLqRepresentable => "NOT_LQ_REPRESENTABLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Named values in the order they were computed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trail(Vec<(String, f64)>);

impl Trail {
    fn push(&mut self, name: &str, value: f64) {
        self.0.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.0
    }
}

impl Serialize for Trail {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub p: f64,
    pub p0: f64,
    pub p0_conj: f64,
    pub verdict: Verdict,
    pub trail: Trail,
    /// Whether the closed-form chain alone clears the margin.
    pub analytic_sufficient: bool,
    pub seed: u64,
    pub restarts: usize,
}

/// Builds the certificate at `p` with the default restart count.
///
/// ```
/// use lpalg::certify::{certify_not_lq, Verdict};
///
/// let c = certify_not_lq(1.0, 0).unwrap();
/// assert_eq!(c.verdict, Verdict::NotLqRepresentable);
/// assert!((c.trail.get("symmetry_lower").unwrap() - 2.0 * 3f64.sqrt() / 3.0).abs() < 1e-12);
/// ```
pub fn certify_not_lq(p: f64, seed: u64) -> Result<Certificate> {
    certify_not_lq_with(p, seed, DEFAULT_RESTARTS)
}

pub fn certify_not_lq_with(p: f64, seed: u64, restarts: usize) -> Result<Certificate> {
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        return Err(Error::InvalidExponent {
            p,
            reason: "certificates need 1 ≤ p < ∞",
        });
    }
    let g = z3();
    let one0 = AlgebraElement::one_zero(&g)?;
    let e = z3_idempotent(&g)?;
    let complement = &one0 - &e;

    let residual = e.convolve(&e)?.max_distance(&e);
    // ⦀x⦀_p ≤ ‖x‖₁ for every ideal element
    let e_upper = e.l1_norm();
    let one_minus_e_upper = complement.l1_norm();
    let lower = symmetry_lower_with(p, seed, restarts)?;
    let formula = symmetry_lower_formula_value(p)?;

    let mut trail = Trail::default();
    trail.push("e_idempotent_residual", residual);
    trail.push("e_upper", e_upper);
    trail.push("one_minus_e_upper", one_minus_e_upper);
    trail.push("symmetry_lower", lower.value);
    trail.push("symmetry_lower_formula_value", formula);
    trail.push("margin", VERDICT_MARGIN);
    trail.push("symmetry_lower_analytic", lower.analytic);
    trail.push("symmetry_lower_empirical", lower.empirical);
    trail.push("symmetry_upper", symmetry_upper(p));

    let bicontractive = residual <= 1e-12
        && e_upper <= 1.0 + BICONTRACTIVE_SLACK
        && one_minus_e_upper <= 1.0 + BICONTRACTIVE_SLACK;
    let verdict = if bicontractive && lower.value > 1.0 + VERDICT_MARGIN {
        Verdict::NotLqRepresentable
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        p,
        p0: P0,
        p0_conj: p0_conj(),
        verdict,
        trail,
        analytic_sufficient: bicontractive && lower.analytic > 1.0 + VERDICT_MARGIN,
        seed,
        restarts,
    })
}

/// Outcome of recomputing a certificate from its stored inputs.
#[derive(Debug, Clone, Serialize)]
pub struct Replay {
    pub matches: bool,
    pub max_deviation: f64,
    pub verdict_preserved: bool,
}

pub fn replay(cert: &Certificate) -> Result<Replay> {
    let again = certify_not_lq_with(cert.p, cert.seed, cert.restarts)?;
    let mut max_deviation: f64 = 0.0;
    let mut same_names = again.trail.0.len() == cert.trail.0.len();
    for (name, value) in &cert.trail.0 {
        match again.trail.get(name) {
            Some(v) => max_deviation = max_deviation.max((v - value).abs()),
            None => same_names = false,
        }
    }
    Ok(Replay {
        matches: same_names && max_deviation <= REPLAY_TOL,
        max_deviation,
        verdict_preserved: again.verdict == cert.verdict,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub one_zero_fp_lower: f64,
    pub one_zero_upper: f64,
    pub symmetry_lower: f64,
    pub symmetry_upper: f64,
    /// `(√3/3)(1 + 2^{p−1})^{1/p}` on `[1, 2]`; empty elsewhere.
    pub conjectured: Option<f64>,
    pub verdict: Verdict,
}

/// `(√3/3)(1 + 2^{p−1})^{1/p}`, a conjectured closed form for `‖𝟙₀ − 2e‖_{F^p}`
/// on `[1, 2]`. Reported for comparison only.
pub fn conjectured_symmetry_norm(p: f64) -> f64 {
    3f64.sqrt() / 3.0 * (1.0 + 2f64.powf(p - 1.0)).powf(1.0 / p)
}

/// Evenly spaced exponents from `from` to `to` inclusive.
pub fn sweep(from: f64, to: f64, steps: usize, seed: u64) -> Result<Vec<SweepRow>> {
    sweep_with(from, to, steps, seed, DEFAULT_RESTARTS)
}

pub fn sweep_with(from: f64, to: f64, steps: usize, seed: u64, restarts: usize) -> Result<Vec<SweepRow>> {
    if !(from >= 1.0 && from < to && to.is_finite()) {
        return Err(Error::Unsupported(format!(
            "sweep needs 1 ≤ from < to < ∞, got from = {from}, to = {to}"
        )));
    }
    if steps < 2 {
        return Err(Error::Unsupported(format!("sweep needs at least 2 steps, got {steps}")));
    }
    (0..steps)
        .map(|i| {
            let p = if i + 1 == steps {
                to
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            };
            let cert = certify_not_lq_with(p, seed, restarts)?;
            Ok(SweepRow {
                p,
                one_zero_fp_lower: one_zero_fp_lower(p)?,
                one_zero_upper: 4.0 / 3.0,
                symmetry_lower: cert.trail.get("symmetry_lower").expect("recorded"),
                symmetry_upper: symmetry_upper(p),
                conjectured: (p <= 2.0).then(|| conjectured_symmetry_norm(p)),
                verdict: cert.verdict,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_values() {
        assert!(h(P0).unwrap() > 1.000098);
        let hs: Vec<f64> = [1.1, 1.3, 1.5, 1.606].iter().map(|&p| h(p).unwrap()).collect();
        assert!(hs.windows(2).all(|w| w[0] > w[1]));
        assert!(h(2.0).is_err() && h(1.0).is_err());
    }

    #[test]
    fn h_is_formula_over_interpolation() {
        for p in [1.1, 1.3, 1.606, 1.9] {
            let q = p / (p - 1.0);
            let assembled = ratio_power_formula(q) / symmetry_l1().powf(2.0 / p - 1.0);
            assert!((h(p).unwrap() - assembled).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn one_zero_lower_is_bounded_and_exact_at_two() {
        assert_eq!(one_zero_fp_lower(2.0).unwrap(), 1.0);
        for p in [1.1, 1.5, 1.9, 2.5, 3.0, 6.0] {
            let v = one_zero_fp_lower(p).unwrap();
            assert!(v > 1.0 && v <= 4.0 / 3.0, "p={p} v={v}");
        }
        assert!(one_zero_fp_lower(0.5).is_err());
    }

    #[test]
    fn analytic_chain_crosses_one_near_1_28() {
        assert!(symmetry_lower_analytic(1.2).unwrap() > 1.0 + VERDICT_MARGIN);
        assert!(symmetry_lower_analytic(1.35).unwrap() < 1.0);
        assert!(symmetry_lower_analytic(5.0).unwrap() > 1.0 + VERDICT_MARGIN);
    }

    #[test]
    fn conjecture_endpoints() {
        assert!((conjectured_symmetry_norm(1.0) - symmetry_l1()).abs() < 1e-15);
        assert!((conjectured_symmetry_norm(2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(sweep(2.0, 1.0, 5, 0).is_err());
        assert!(sweep(1.0, 2.0, 1, 0).is_err());
        assert!(sweep(0.5, 2.0, 3, 0).is_err());
    }
}
