//! Operator norms `‖M‖_{p→p}` of small complex matrices.
//!
//! Exact values are available at `p ∈ {1, 2, ∞}`. For other exponents the
//! norm is bracketed: the lower side comes from a multi-start duality-map
//! ascent and is always an attained Rayleigh ratio, the upper side from
//! Riesz–Thorin interpolation between the exact endpoints. The ascent finds
//! stationary points only, so it never contributes to an upper bound.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::element::lp_norm_unchecked;
use crate::error::{Error, Result};
use crate::optim::compass_maximize;
use crate::{CMatrix, CVector};

pub const DEFAULT_RESTARTS: usize = 64;
pub const CONVERGENCE_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 500;
/// How far a computed lower bound may exceed the upper bound before it is
/// treated as a numerical failure rather than rounding.
const CONSISTENCY_SLACK: f64 = 1e-9;
const BRUTE_FORCE_MAX_DIM: usize = 4;
const BRUTE_FORCE_MIN_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    #[serde(rename = "exact-1")]
    Exact1,
    #[serde(rename = "exact-2")]
    Exact2,
    ExactInf,
    PowerIteration,
    #[serde(rename = "interpolation-1-2")]
    Interpolation12,
    #[serde(rename = "interpolation-2-inf")]
    Interpolation2Inf,
    #[serde(rename = "l1-bound")]
    L1Bound,
    Oracle,
    Idempotent,
    WitnessRatio,
    ExtremePoint,
    ShiftBound,
    Sup,
    CoordinateBound,
}

/// Certified bracket `lower ≤ ‖·‖ ≤ upper`.
#[derive(Debug, Clone, Serialize)]
pub struct NormBound {
    pub p: f64,
    pub lower: f64,
    pub upper: f64,
    #[serde(with = "crate::serial::opt_pairs")]
    pub witness: Option<CVector>,
    pub methods: Vec<NormMethod>,
}

impl NormBound {
    pub fn exact(p: f64, value: f64, witness: Option<CVector>, method: NormMethod) -> Self {
        NormBound {
            p,
            lower: value,
            upper: value,
            witness,
            methods: vec![method],
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.lower - slack <= value && value <= self.upper + slack
    }

    pub(crate) fn push_method(&mut self, m: NormMethod) {
        if !self.methods.contains(&m) {
            self.methods.push(m);
        }
    }

    /// Clamps rounding-level inversions; larger inversions are errors.
    pub(crate) fn reconcile(mut self) -> Result<Self> {
        if self.lower > self.upper {
            if self.lower - self.upper > CONSISTENCY_SLACK * self.upper.max(1.0) {
                return Err(Error::Numerical(format!(
                    "lower bound {} exceeds upper bound {}",
                    self.lower, self.upper
                )));
            }
            self.lower = self.upper;
        }
        Ok(self)
    }
}

/// `θ` with `1/p = (1−θ)/p₁ + θ/p₂`; `p₂` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationParams {
    pub p1: f64,
    pub p2: f64,
    pub theta: f64,
}

impl InterpolationParams {
    pub fn new(p: f64, p1: f64, p2: f64) -> Self {
        let (a, b) = (1.0 / p1, 1.0 / p2);
        InterpolationParams {
            p1,
            p2,
            theta: (1.0 / p - a) / (b - a),
        }
    }

    /// `A^{1−θ} B^θ` for endpoint norms `A` (at `p₁`) and `B` (at `p₂`).
    pub fn combine(&self, at_p1: f64, at_p2: f64) -> f64 {
        at_p1.powf(1.0 - self.theta) * at_p2.powf(self.theta)
    }
}

/// Hölder conjugate `p/(p−1)`, with `1 ↔ ∞`.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn max_column_sum(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn max_row_sum(m: &CMatrix) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    crate::linalg::singular_values(m).into_iter().fold(0.0, f64::max)
}

fn require_square(m: &CMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "operator norms need a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

/// Exact `‖M‖_{p→p}` for `p ∈ {1, 2, ∞}`.
pub fn opnorm_exact(m: &CMatrix, p: f64) -> Result<f64> {
    require_square(m)?;
    if p == 1.0 {
        Ok(max_column_sum(m))
    } else if p == 2.0 {
        Ok(spectral_norm(m))
    } else if p == f64::INFINITY {
        Ok(max_row_sum(m))
    } else {
        Err(Error::InvalidExponent {
            p,
            reason: "exact operator norms are only available for p ∈ {1, 2, ∞}",
        })
    }
}

fn exact_with_witness(m: &CMatrix, p: f64) -> NormBound {
    let n = m.ncols();
    if p == 1.0 {
        let (j, value) = m
            .column_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .enumerate()
            .fold((0, 0.0), |best, x| if x.1 > best.1 { x } else { best });
        let mut w = CVector::zeros(n);
        if n > 0 {
            w[j] = Complex64::new(1.0, 0.0);
        }
        NormBound::exact(p, value, Some(w), NormMethod::Exact1)
    } else {
        let value = spectral_norm(m);
        let w = crate::linalg::top_right_singular_vector(m);
        NormBound::exact(p, value, Some(w), NormMethod::Exact2)
    }
}

/// `‖Mx‖_p / ‖x‖_p`, zero for the zero vector.
pub fn rayleigh_ratio(m: &CMatrix, x: &CVector, p: f64) -> f64 {
    let nx = lp_norm_unchecked(x.as_slice(), p);
    if nx == 0.0 {
        return 0.0;
    }
    lp_norm_unchecked((m * x).as_slice(), p) / nx
}

/// Duality map `J_q(y)_i = |y_i|^{q−1} · y_i/|y_i|`, evaluated after scaling
/// `y` to unit max-modulus (only directions matter to the iteration).
fn duality_map(y: &CVector, q: f64) -> CVector {
    let scale = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return CVector::zeros(y.len());
    }
    y.map(|z| {
        let r = z.norm();
        if r == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            z / r * (r / scale).powf(q - 1.0)
        }
    })
}

fn normalize(x: CVector, p: f64) -> Option<CVector> {
    let n = lp_norm_unchecked(x.as_slice(), p);
    (n > 0.0 && n.is_finite()).then(|| x.unscale(n))
}

/// One ascent run; returns the best ratio seen along the path and its iterate.
fn ascend(m: &CMatrix, mh: &CMatrix, start: &CVector, p: f64, q: f64) -> Option<(f64, CVector)> {
    let mut x = normalize(start.clone(), p)?;
    let mut best: Option<(f64, CVector)> = None;
    let mut previous = f64::NEG_INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let ratio = rayleigh_ratio(m, &x, p);
        if best.as_ref().is_none_or(|b| ratio > b.0) {
            best = Some((ratio, x.clone()));
        }
        if (ratio - previous).abs() < CONVERGENCE_TOL {
            break;
        }
        previous = ratio;
        let y = m * &x;
        let z = mh * duality_map(&y, p);
        match normalize(duality_map(&z, q), p) {
            Some(next) => x = next,
            None => break,
        }
    }
    best
}

/// Pseudo-random complex start for restart `index`, keyed by `(seed, index)`.
pub fn seeded_start(dim: usize, seed: u64, index: u64) -> CVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    CVector::from_fn(dim, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    })
}

fn check_open_range(p: f64) -> Result<()> {
    if p.is_nan() || p <= 1.0 || p.is_infinite() {
        Err(Error::InvalidExponent {
            p,
            reason: "the ascent needs 1 < p < ∞; use opnorm_exact at the endpoints",
        })
    } else {
        Ok(())
    }
}

/// Best attained ratio over the standard starts plus `restarts` seeded ones.
pub fn opnorm_lower(m: &CMatrix, p: f64, restarts: usize, seed: u64) -> Result<(f64, CVector)> {
    opnorm_lower_from(m, p, restarts, seed, &[])
}

/// As [`opnorm_lower`], also starting from each vector in `extra`.
pub fn opnorm_lower_from(
    m: &CMatrix,
    p: f64,
    restarts: usize,
    seed: u64,
    extra: &[CVector],
) -> Result<(f64, CVector)> {
    require_square(m)?;
    check_open_range(p)?;
    if restarts == 0 {
        return Err(Error::Guard("at least one restart is required".into()));
    }
    let n = m.ncols();
    let q = conjugate_exponent(p);
    let mh = m.adjoint();

    let mut starts: Vec<CVector> = (0..n)
        .map(|i| {
            let mut e = CVector::zeros(n);
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    starts.push(CVector::from_element(n, Complex64::new(1.0, 0.0)));
    starts.extend(extra.iter().filter(|v| v.len() == n).cloned());
    starts.extend((0..restarts as u64).map(|k| seeded_start(n, seed, k)));

    let mut best: (f64, CVector) = (0.0, starts[0].clone());
    for start in &starts {
        if let Some((ratio, x)) = ascend(m, &mh, start, p, q) {
            if ratio > best.0 {
                best = (ratio, x);
            }
        }
    }
    Ok(best)
}

pub(crate) fn upper_with_method(m: &CMatrix, p: f64) -> (f64, NormMethod) {
    let n1 = max_column_sum(m);
    let ninf = max_row_sum(m);
    if p == 1.0 {
        return (n1, NormMethod::Exact1);
    }
    if p == 2.0 {
        return (spectral_norm(m), NormMethod::Exact2);
    }
    if p.is_infinite() {
        return (ninf, NormMethod::ExactInf);
    }
    let n2 = spectral_norm(m);
    let (interp, method) = if p < 2.0 {
        (
            InterpolationParams::new(p, 1.0, 2.0).combine(n1, n2),
            NormMethod::Interpolation12,
        )
    } else {
        (
            InterpolationParams::new(p, 2.0, f64::INFINITY).combine(n2, ninf),
            NormMethod::Interpolation2Inf,
        )
    };
    let l1 = InterpolationParams::new(p, 1.0, f64::INFINITY).combine(n1, ninf);
    if l1 < interp {
        (l1, NormMethod::L1Bound)
    } else {
        (interp, method)
    }
}

/// Riesz–Thorin upper bound, exact at `p ∈ {1, 2}`.
pub fn opnorm_upper(m: &CMatrix, p: f64) -> Result<f64> {
    require_square(m)?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent {
            p,
            reason: "operator norms need p ≥ 1",
        });
    }
    Ok(upper_with_method(m, p).0)
}

pub fn opnorm_bounds(m: &CMatrix, p: f64, restarts: usize, seed: u64) -> Result<NormBound> {
    opnorm_bounds_from(m, p, restarts, seed, &[])
}

/// Lower bound from the ascent (seeded also from `extra`), upper bound from
/// interpolation; exact at `p ∈ {1, 2}`.
pub fn opnorm_bounds_from(
    m: &CMatrix,
    p: f64,
    restarts: usize,
    seed: u64,
    extra: &[CVector],
) -> Result<NormBound> {
    require_square(m)?;
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        return Err(Error::InvalidExponent {
            p,
            reason: "norm bounds need 1 ≤ p < ∞",
        });
    }
    if p == 1.0 || p == 2.0 {
        return Ok(exact_with_witness(m, p));
    }
    let (lower, witness) = opnorm_lower_from(m, p, restarts, seed, extra)?;
    let (upper, method) = upper_with_method(m, p);
    NormBound {
        p,
        lower,
        upper,
        witness: Some(witness),
        methods: vec![NormMethod::PowerIteration, method],
    }
    .reconcile()
}

/// Statistical lower envelope: best ratio over seeded Gaussian samples and a
/// phase/magnitude grid, with the best few candidates polished by compass
/// search. Dimension is capped at 4.
pub fn brute_force_opnorm(m: &CMatrix, p: f64, samples: usize, seed: u64) -> Result<f64> {
    require_square(m)?;
    let n = m.ncols();
    if n > BRUTE_FORCE_MAX_DIM {
        return Err(Error::Guard(format!(
            "brute force is limited to dimension {BRUTE_FORCE_MAX_DIM}, got {n}"
        )));
    }
    if samples < BRUTE_FORCE_MIN_SAMPLES {
        return Err(Error::Guard(format!(
            "brute force needs at least {BRUTE_FORCE_MIN_SAMPLES} samples"
        )));
    }
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent {
            p,
            reason: "operator norms need p ≥ 1",
        });
    }
    if n == 0 {
        return Ok(0.0);
    }

    const KEEP: usize = 8;
    let mut top: Vec<(f64, CVector)> = Vec::with_capacity(KEEP + 1);
    let mut consider = |x: CVector| {
        let r = rayleigh_ratio(m, &x, p);
        if top.len() < KEEP || r > top[top.len() - 1].0 {
            let pos = top.partition_point(|(v, _)| *v >= r);
            top.insert(pos, (r, x));
            top.truncate(KEEP);
        }
    };

    for x in phase_grid(n) {
        consider(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6272_7574_655f_6f72);
    for _ in 0..samples {
        consider(CVector::from_fn(n, |_, _| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        }));
    }

    let to_vec = |v: &[f64]| -> CVector {
        CVector::from_fn(n, |i, _| Complex64::new(v[2 * i], v[2 * i + 1]))
    };
    let mut best = top.first().map(|t| t.0).unwrap_or(0.0);
    for (_, x) in top {
        let scale = lp_norm_unchecked(x.as_slice(), p);
        let flat: Vec<f64> = x.iter().flat_map(|z| [z.re / scale, z.im / scale]).collect();
        let (_, v) = compass_maximize(
            |v| rayleigh_ratio(m, &to_vec(v), p),
            flat,
            0.05,
            1e-11,
            200_000,
        );
        best = best.max(v);
    }
    Ok(best)
}

/// Deterministic grid: the first coordinate real in {0, ½, 1}, the others in
/// {0} ∪ {r e^{iπk/4} : r ∈ {½, 1}}.
fn phase_grid(n: usize) -> Vec<CVector> {
    let mut options = vec![Complex64::new(0.0, 0.0)];
    for r in [0.5, 1.0] {
        for k in 0..8 {
            options.push(Complex64::from_polar(r, std::f64::consts::FRAC_PI_4 * k as f64));
        }
    }
    let first = [0.0, 0.5, 1.0].map(|x| Complex64::new(x, 0.0));
    let mut out = Vec::new();
    let tail = n - 1;
    let count = options.len().pow(tail as u32);
    for &f in &first {
        for mut idx in 0..count {
            let mut v = DVector::zeros(n);
            v[0] = f;
            for slot in 1..n {
                v[slot] = options[idx % options.len()];
                idx /= options.len();
            }
            out.push(v);
        }
    }
    out
}

/// Lower bounds for `‖M‖_{p→p}` and `‖Mᵀ‖_{p′→p′}`, which are equal norms.
pub fn transpose_dual_check(m: &CMatrix, p: f64) -> Result<(f64, f64)> {
    transpose_dual_check_with(m, p, DEFAULT_RESTARTS, 0)
}

pub fn transpose_dual_check_with(
    m: &CMatrix,
    p: f64,
    restarts: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    check_open_range(p)?;
    let q = conjugate_exponent(p);
    let at_p = if p == 2.0 {
        spectral_norm(m)
    } else {
        opnorm_lower(m, p, restarts, seed)?.0
    };
    let mt = m.transpose();
    let at_q = if q == 2.0 {
        spectral_norm(&mt)
    } else {
        opnorm_lower(&mt, q, restarts, seed)?.0
    };
    Ok((at_p, at_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::AlgebraElement;
    use crate::group::parse_group;
    use crate::witness::{perturbation_witnesses, ratio_power_formula};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let v = seeded_start(n * n, seed, 9_999);
        CMatrix::from_column_slice(n, n, v.as_slice())
    }

    fn symmetry_z3() -> CMatrix {
        let f = c(0.0, -(3f64.sqrt()) / 3.0);
        nalgebra::DMatrix::<f64>::from_row_slice(3, 3, &[0.0, 1.0, -1.0, -1.0, 0.0, 1.0, 1.0, -1.0, 0.0])
            .map(|x| f * x)
    }

    fn one_zero_z3() -> CMatrix {
        AlgebraElement::one_zero(&parse_group("Z3").unwrap()).unwrap().lambda_matrix().0
    }

    #[test]
    fn identity_has_norm_one() {
        let id = CMatrix::identity(3, 3);
        for p in [1.0, 2.0, f64::INFINITY] {
            assert_eq!(opnorm_exact(&id, p).unwrap(), 1.0);
        }
        assert!((opnorm_lower(&id, 1.5, 8, 0).unwrap().0 - 1.0).abs() < 1e-15);
        for p in [1.0, 1.3, 2.0, 3.7] {
            assert!((opnorm_upper(&id, p).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_rejects_other_p() {
        assert!(opnorm_exact(&CMatrix::identity(2, 2), 1.5).is_err());
    }

    #[test]
    fn symmetry_spectral_norm_is_one() {
        assert!((opnorm_exact(&symmetry_z3(), 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn column_sum_of_convolution_is_l1() {
        assert!((opnorm_exact(&one_zero_z3(), 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((opnorm_exact(&one_zero_z3(), f64::INFINITY).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn symmetry_interpolation_bounds() {
        let m = symmetry_z3();
        let k = 2.0 * 3f64.sqrt() / 3.0;
        assert!((opnorm_upper(&m, 1.0).unwrap() - k).abs() < 1e-12);
        for p in [1.1, 1.25, 1.5, 1.75, 2.0] {
            assert!(opnorm_upper(&m, p).unwrap() <= k.powf(2.0 / p - 1.0) + 1e-12);
        }
    }

    #[test]
    fn one_zero_lower_bound_at_three() {
        // the attained ratio of the perturbation witnesses is formula^(1/p)
        let m = one_zero_z3();
        let g = parse_group("Z3").unwrap();
        let w = perturbation_witnesses(&g, 3.0).unwrap();
        let (lower, witness) =
            opnorm_lower_from(&m, 3.0, 64, 0, &[w.b_eps.to_vector()]).unwrap();
        let expected = ratio_power_formula(3.0).powf(1.0 / 3.0);
        assert!(lower >= expected - 1e-12, "{lower} < {expected}");
        assert!((rayleigh_ratio(&m, &witness, 3.0) - lower).abs() < 1e-12);
        assert!(lower <= opnorm_upper(&m, 3.0).unwrap());
    }

    #[test]
    fn lower_matches_svd_at_two() {
        for s in 0..10 {
            let m = random_matrix(3, s);
            let (lower, _) = opnorm_lower(&m, 2.0, 64, 0).unwrap();
            assert!((lower - spectral_norm(&m)).abs() < 1e-8, "seed {s}");
        }
    }

    #[test]
    fn lower_rejects_endpoints() {
        let m = CMatrix::identity(2, 2);
        assert!(opnorm_lower(&m, 1.0, 4, 0).is_err());
        assert!(opnorm_lower(&m, f64::INFINITY, 4, 0).is_err());
        assert!(opnorm_lower(&m, 1.5, 0, 0).is_err());
    }

    #[test]
    fn zero_matrix() {
        let z = CMatrix::zeros(3, 3);
        let b = opnorm_bounds(&z, 1.7, 4, 0).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 0.0));
    }

    #[test]
    fn bounds_at_two_are_exact() {
        let m = random_matrix(3, 3);
        let b = opnorm_bounds(&m, 2.0, 8, 0).unwrap();
        assert_eq!(b.lower, b.upper);
        assert!((b.lower - spectral_norm(&m)).abs() < 1e-15);
        let w = b.witness.unwrap();
        assert!((rayleigh_ratio(&m, &w, 2.0) - b.lower).abs() < 1e-9);
    }

    #[test]
    fn bounds_sandwich_oracle() {
        for s in 0..3 {
            let m = random_matrix(3, 100 + s);
            let b = opnorm_bounds(&m, 1.5, 64, 0).unwrap();
            let oracle = brute_force_opnorm(&m, 1.5, 100_000, s).unwrap();
            assert!(b.contains(oracle, 1e-9), "{b:?} vs {oracle}");
            let w = b.witness.as_ref().unwrap();
            assert!(rayleigh_ratio(&m, w, 1.5) >= b.lower - 1e-9);
        }
    }

    #[test]
    fn brute_force_identity_is_one() {
        let id = CMatrix::identity(3, 3);
        assert_eq!(brute_force_opnorm(&id, 2.7, 100_000, 0).unwrap(), 1.0);
    }

    #[test]
    fn brute_force_guards() {
        assert!(brute_force_opnorm(&CMatrix::identity(5, 5), 1.5, 100_000, 0).is_err());
        assert!(brute_force_opnorm(&CMatrix::identity(2, 2), 1.5, 10, 0).is_err());
    }

    #[test]
    fn brute_force_close_to_svd() {
        for s in 0..3 {
            let m = random_matrix(3, 200 + s);
            let oracle = brute_force_opnorm(&m, 2.0, 100_000, s).unwrap();
            let exact = spectral_norm(&m);
            assert!((oracle - exact).abs() <= 0.005 * exact);
            assert!(oracle <= opnorm_upper(&m, 2.0).unwrap() + 1e-9);
        }
    }

    #[test]
    fn duality_agrees() {
        let m = random_matrix(3, 7);
        let (a, b) = transpose_dual_check(&m, 1.5).unwrap();
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        let (a, b) = transpose_dual_check(&one_zero_z3(), 1.2).unwrap();
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        let sym = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let (a, b) = transpose_dual_check(&sym, 2.0).unwrap();
        assert_eq!(a, spectral_norm(&sym));
        assert_eq!(b, spectral_norm(&sym));
        assert!(transpose_dual_check(&sym, 1.0).is_err());
    }

    #[test]
    fn interpolation_theta() {
        let t = InterpolationParams::new(4.0 / 3.0, 1.0, 2.0);
        assert!((t.theta - 0.5).abs() < 1e-15);
        let t = InterpolationParams::new(4.0, 2.0, f64::INFINITY);
        assert!((t.theta - 0.5).abs() < 1e-15);
    }

    #[test]
    fn seeded_starts_are_reproducible() {
        assert_eq!(seeded_start(4, 11, 3), seeded_start(4, 11, 3));
        assert_ne!(seeded_start(4, 11, 3), seeded_start(4, 11, 4));
        assert_ne!(seeded_start(4, 11, 3), seeded_start(4, 12, 3));
    }

    #[test]
    fn norm_bound_json() {
        let b = NormBound::exact(2.0, 1.0, Some(CVector::from_vec(vec![c(1.0, 0.0)])), NormMethod::Exact2);
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"p":2.0,"lower":1.0,"upper":1.0,"witness":[[1.0,0.0]],"methods":["exact-2"]}"#);
    }
}
