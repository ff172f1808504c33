//! Double centralizers and multiplier norms.
//!
//! A finite-dimensional algebra is given by structure constants in a fixed
//! basis plus a description of its norm. The multiplier algebra is computed
//! as the nullspace of the linear system expressing the three centralizer
//! identities, and multiplier norms are bracketed like operator norms.
//!
//! On the augmentation ideal of `ℓ¹(G)` carrying the `F^p` norm,
//! `⦀a⦀_p = sup ‖λ_p(a∗b)‖ / ‖λ_p(b)‖` over nonzero ideal elements `b`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::gelfand::idempotent_basis;
use crate::group::FiniteGroup;
use crate::optim::compass_maximize;
use crate::pnorm::{
    opnorm_bounds, opnorm_lower, seeded_start, spectral_norm, upper_with_method, NormBound,
    NormMethod,
};
use crate::serial::complex_pairs;
use crate::{CMatrix, CVector};

/// Largest algebra dimension accepted by [`double_centralizers`].
pub const MAX_CENTRALIZER_DIM: usize = 8;
/// Relative singular-value cutoff for the centralizer nullspace.
pub const NULLSPACE_CUTOFF: f64 = 1e-10;
/// Evaluation budget for each outer ascent over an algebra's unit sphere.
pub const OUTER_MAX_EVALS: usize = 200;
/// Inner restarts used while screening witnesses; survivors are re-run with
/// the full restart count.
const SCREEN_RESTARTS: usize = 2;
const POLISH_CANDIDATES: usize = 4;
const MAX_IDEMPOTENT_WITNESS_ORDER: usize = 32;
/// Stream offset that keeps witness sampling independent of inner restarts.
const WITNESS_STREAM: u64 = 1 << 32;

#[derive(Debug, Clone)]
pub enum NormDescriptor {
    /// `‖λ_p(x)‖` on `ℓ^p(G)`, coordinates in the `Δ` basis of the ideal.
    ConvOperator { group: Arc<FiniteGroup>, p: f64 },
    /// Norm on `ℓ^p_d` of the `d×d` matrix with basis element `i` at `positions[i]`.
    MatrixOperator {
        d: usize,
        p: f64,
        positions: Vec<(usize, usize)>,
    },
    /// Largest coordinate modulus.
    Sup,
}

impl Serialize for NormDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormDescriptor::ConvOperator { group, p } => {
                let mut st = s.serialize_struct("NormDescriptor", 3)?;
                st.serialize_field("kind", "conv-operator")?;
                st.serialize_field("group", group.label())?;
                st.serialize_field("p", p)?;
                st.end()
            }
            NormDescriptor::MatrixOperator { d, p, .. } => {
                let mut st = s.serialize_struct("NormDescriptor", 3)?;
                st.serialize_field("kind", "matrix-operator")?;
                st.serialize_field("d", d)?;
                st.serialize_field("p", p)?;
                st.end()
            }
            NormDescriptor::Sup => {
                let mut st = s.serialize_struct("NormDescriptor", 1)?;
                st.serialize_field("kind", "sup")?;
                st.end()
            }
        }
    }
}

/// A finite-dimensional algebra with product `b_i·b_j = Σ_k c_{ij}^k b_k`.
#[derive(Debug, Clone)]
pub struct FiniteDimAlgebra {
    label: String,
    basis_labels: Vec<String>,
    /// `c_{ij}^k` at `(i·d + j)·d + k`.
    structure: Vec<Complex64>,
    norm_descriptor: NormDescriptor,
}

impl Serialize for FiniteDimAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim();
        let table: Vec<Vec<Vec<[f64; 2]>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| complex_pairs(&self.structure[(i * d + j) * d..(i * d + j + 1) * d]))
                    .collect()
            })
            .collect();
        let mut st = s.serialize_struct("FiniteDimAlgebra", 5)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("dim", &d)?;
        st.serialize_field("basis_labels", &self.basis_labels)?;
        st.serialize_field("structure", &table)?;
        st.serialize_field("norm_descriptor", &self.norm_descriptor)?;
        st.end()
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl FiniteDimAlgebra {
    /// `structure[i][j]` holds the coordinates of `b_i·b_j`.
    pub fn new(
        label: impl Into<String>,
        basis_labels: Vec<String>,
        structure: Vec<Vec<Vec<Complex64>>>,
        norm_descriptor: NormDescriptor,
    ) -> Result<Self> {
        let d = basis_labels.len();
        if d == 0 {
            return Err(Error::InvalidTable("an algebra needs at least one basis element".into()));
        }
        if structure.len() != d
            || structure
                .iter()
                .any(|row| row.len() != d || row.iter().any(|c| c.len() != d))
        {
            return Err(Error::InvalidTable(format!(
                "structure table must be {d}×{d} with coordinate vectors of length {d}"
            )));
        }
        if let NormDescriptor::MatrixOperator { d: md, positions, .. } = &norm_descriptor {
            if positions.len() != d || positions.iter().any(|&(r, c)| r >= *md || c >= *md) {
                return Err(Error::InvalidTable("matrix positions do not match the basis".into()));
            }
        }
        Ok(FiniteDimAlgebra {
            label: label.into(),
            basis_labels,
            structure: structure.into_iter().flatten().flatten().collect(),
            norm_descriptor,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn norm_descriptor(&self) -> &NormDescriptor {
        &self.norm_descriptor
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Complex64 {
        let d = self.dim();
        self.structure[(i * d + j) * d + k]
    }

    /// Coordinates of `b_i·b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Complex64] {
        let d = self.dim();
        &self.structure[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn product(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        let mut out = vec![zero(); d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let w = xi * yj;
                if w == zero() {
                    continue;
                }
                for (o, &c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    *o += w * c;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_matrix(&self, x: &[Complex64]) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.product(x, &unit_vector(d, j));
            m.column_mut(j).copy_from_slice(&col);
        }
        m
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_matrix(&self, x: &[Complex64]) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.product(&unit_vector(d, j), x);
            m.column_mut(j).copy_from_slice(&col);
        }
        m
    }

    /// Largest `|(b_i b_j) b_k − b_i (b_j b_k)|` over basis triples.
    pub fn associativity_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.product(&ij, &unit_vector(d, k));
                    let right = self.product(&unit_vector(d, i), self.basis_product(j, k));
                    worst = worst.max(max_diff(&left, &right));
                }
            }
        }
        worst
    }

    /// Coordinates of a two-sided identity, if there is one.
    pub fn unit(&self) -> Option<Vec<Complex64>> {
        let d = self.dim();
        // u·b_j = b_j and b_j·u = b_j, linear in u
        let mut sys = CMatrix::zeros(2 * d * d, d);
        let mut rhs = CVector::zeros(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                for i in 0..d {
                    sys[(j * d + k, i)] = self.structure_constant(i, j, k);
                    sys[(d * d + j * d + k, i)] = self.structure_constant(j, i, k);
                }
                if j == k {
                    rhs[j * d + k] = one();
                    rhs[d * d + j * d + k] = one();
                }
            }
        }
        let u = crate::linalg::least_squares(&sys, &rhs, 1e-12);
        let residual = crate::max_modulus((&sys * &u - &rhs).iter());
        (residual < 1e-9).then(|| u.iter().copied().collect())
    }

    /// Bracket for the norm of the element with coordinates `x`.
    pub fn element_norm(&self, x: &[Complex64], restarts: usize, seed: u64) -> Result<NormBound> {
        if x.len() != self.dim() {
            return Err(Error::Numerical(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                x.len()
            )));
        }
        match &self.norm_descriptor {
            NormDescriptor::ConvOperator { group, p } => {
                let a = AlgebraElement::from_delta_coords(group, x)?;
                opnorm_bounds(a.lambda_matrix().as_matrix(), *p, restarts, seed)
            }
            NormDescriptor::MatrixOperator { d, p, positions } => {
                let mut m = CMatrix::zeros(*d, *d);
                for (&c, &(r, col)) in x.iter().zip(positions) {
                    m[(r, col)] += c;
                }
                opnorm_bounds(&m, *p, restarts, seed)
            }
            NormDescriptor::Sup => {
                let v = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
                Ok(NormBound::exact(f64::INFINITY, v, None, NormMethod::Sup))
            }
        }
    }

    fn exponent(&self) -> f64 {
        match &self.norm_descriptor {
            NormDescriptor::ConvOperator { p, .. } | NormDescriptor::MatrixOperator { p, .. } => *p,
            NormDescriptor::Sup => f64::INFINITY,
        }
    }
}

fn unit_vector(d: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![zero(); d];
    v[i] = one();
    v
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 || p.is_infinite() {
        Err(Error::InvalidExponent {
            p,
            reason: "multiplier norms need 1 ≤ p < ∞",
        })
    } else {
        Ok(())
    }
}

/// Strictly upper triangular `d×d` matrices acting on `ℓ^p_d`, for `d ∈ {2, 3}`.
///
/// ```
/// use lpalg::multiplier::triangular_algebra;
/// use lpalg::Complex64;
///
/// let t3 = triangular_algebra(3, 1.0).unwrap();
/// let c = |x: f64| Complex64::new(x, 0.0);
/// // E12·E23 = E13
/// assert_eq!(t3.product(&[c(1.0), c(0.0), c(0.0)], &[c(0.0), c(0.0), c(1.0)]),
///            vec![c(0.0), c(1.0), c(0.0)]);
/// ```
pub fn triangular_algebra(d: usize, p: f64) -> Result<FiniteDimAlgebra> {
    check_exponent(p)?;
    let z = zero();
    match d {
        2 => FiniteDimAlgebra::new(
            "T2",
            vec!["E12".into()],
            vec![vec![vec![z]]],
            NormDescriptor::MatrixOperator {
                d: 2,
                p,
                positions: vec![(0, 1)],
            },
        ),
        3 => {
            let mut structure = vec![vec![vec![z; 3]; 3]; 3];
            // E12·E23 = E13; every other basis product vanishes
            structure[0][2][1] = one();
            FiniteDimAlgebra::new(
                "T3",
                vec!["E12".into(), "E13".into(), "E23".into()],
                structure,
                NormDescriptor::MatrixOperator {
                    d: 3,
                    p,
                    positions: vec![(0, 1), (0, 2), (1, 2)],
                },
            )
        }
        _ => Err(Error::Unsupported(format!(
            "triangular algebras are available for d ∈ {{2, 3}}, got {d}"
        ))),
    }
}

fn element_label(group: &FiniteGroup, g: usize) -> String {
    match group.tuple_of_index(g) {
        Some(t) if t.len() > 1 => {
            let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            format!("D[{}]", parts.join(","))
        }
        _ => format!("D[{g}]"),
    }
}

/// The augmentation ideal in the basis `{Δ_g : g ≠ 1}`, with
/// `Δ_g Δ_h = Δ_{gh} − Δ_g − Δ_h`.
pub fn augmentation_ideal_algebra(group: &Arc<FiniteGroup>, p: f64) -> Result<FiniteDimAlgebra> {
    check_exponent(p)?;
    let n = group.order();
    if n < 2 {
        return Err(Error::GroupTooSmall { order: n, min: 2 });
    }
    let d = n - 1;
    let mut structure = vec![vec![vec![zero(); d]; d]; d];
    for (gi, row) in structure.iter_mut().enumerate() {
        for (hi, coords) in row.iter_mut().enumerate() {
            let (g, h) = (gi + 1, hi + 1);
            let gh = group.mul(g, h);
            if gh != 0 {
                coords[gh - 1] += one();
            }
            coords[gi] -= one();
            coords[hi] -= one();
        }
    }
    FiniteDimAlgebra::new(
        format!("aug:{}", group.label()),
        (1..n).map(|g| element_label(group, g)).collect(),
        structure,
        NormDescriptor::ConvOperator {
            group: group.clone(),
            p,
        },
    )
}

/// A pair `(L, R)` of linear maps on the coordinate space of an algebra.
#[derive(Debug, Clone, Serialize)]
pub struct DoubleCentralizer {
    #[serde(rename = "L", with = "crate::serial::matrix")]
    pub l: CMatrix,
    #[serde(rename = "R", with = "crate::serial::matrix")]
    pub r: CMatrix,
}

impl DoubleCentralizer {
    /// Largest violation of `L(ab) = L(a)b`, `R(ab) = aR(b)` and
    /// `aL(b) = R(a)b` over basis pairs.
    pub fn residual(&self, algebra: &FiniteDimAlgebra) -> f64 {
        let d = algebra.dim();
        let col = |m: &CMatrix, j: usize| -> Vec<Complex64> { m.column(j).iter().copied().collect() };
        let apply = |m: &CMatrix, x: &[Complex64]| -> Vec<Complex64> {
            (m * CVector::from_column_slice(x)).iter().copied().collect()
        };
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let bi = unit_vector(d, i);
            for j in 0..d {
                let bj = unit_vector(d, j);
                let bij = algebra.basis_product(i, j);
                let e1 = max_diff(&apply(&self.l, bij), &algebra.product(&col(&self.l, i), &bj));
                let e2 = max_diff(&apply(&self.r, bij), &algebra.product(&bi, &col(&self.r, j)));
                let e3 = max_diff(
                    &algebra.product(&bi, &col(&self.l, j)),
                    &algebra.product(&col(&self.r, i), &bj),
                );
                worst = worst.max(e1).max(e2).max(e3);
            }
        }
        worst
    }
}

/// `(L_a, R_a)`: left and right multiplication by `a`.
pub fn embed_element(algebra: &FiniteDimAlgebra, a: &[Complex64]) -> DoubleCentralizer {
    DoubleCentralizer {
        l: algebra.left_matrix(a),
        r: algebra.right_matrix(a),
    }
}

/// An orthonormal basis of the double centralizers, from the nullspace of the
/// `3d³ × 2d²` system of centralizer identities.
pub fn double_centralizers(algebra: &FiniteDimAlgebra) -> Result<Vec<DoubleCentralizer>> {
    let d = algebra.dim();
    if d > MAX_CENTRALIZER_DIM {
        return Err(Error::Guard(format!(
            "double centralizers are limited to dimension {MAX_CENTRALIZER_DIM}, got {d}"
        )));
    }
    let dd = d * d;
    // unknowns: L[m][i] at i·d + m, R[m][i] at d² + i·d + m
    let l_var = |m: usize, i: usize| i * d + m;
    let r_var = |m: usize, i: usize| dd + i * d + m;
    let c = |i, j, k| algebra.structure_constant(i, j, k);
    let mut sys = CMatrix::zeros(3 * d * dd, 2 * dd);
    let mut row = 0;
    for i in 0..d {
        for j in 0..d {
            for t in 0..d {
                // L(b_i b_j) − L(b_i) b_j
                for k in 0..d {
                    sys[(row, l_var(t, k))] += c(i, j, k);
                    sys[(row, l_var(k, i))] -= c(k, j, t);
                }
                row += 1;
                // R(b_i b_j) − b_i R(b_j)
                for k in 0..d {
                    sys[(row, r_var(t, k))] += c(i, j, k);
                    sys[(row, r_var(k, j))] -= c(i, k, t);
                }
                row += 1;
                // b_i L(b_j) − R(b_i) b_j
                for k in 0..d {
                    sys[(row, l_var(k, j))] += c(i, k, t);
                    sys[(row, r_var(k, i))] -= c(k, j, t);
                }
                row += 1;
            }
        }
    }
    let basis = crate::linalg::nullspace(&sys, NULLSPACE_CUTOFF)
        .into_iter()
        .map(|v| DoubleCentralizer {
            l: CMatrix::from_fn(d, d, |m, i| v[l_var(m, i)]),
            r: CMatrix::from_fn(d, d, |m, i| v[r_var(m, i)]),
        })
        .collect();
    Ok(basis)
}

/// Which multiplication a multiplier norm refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `b ↦ a∗b`
    Left,
    /// `b ↦ b∗a`
    Right,
}

/// Bracket for `max(‖L‖, ‖R‖)`, each an operator norm on the algebra with its
/// own norm.
pub fn centralizer_norm(
    algebra: &FiniteDimAlgebra,
    dc: &DoubleCentralizer,
    restarts: usize,
    seed: u64,
) -> Result<NormBound> {
    let l = map_norm(algebra, &dc.l, Side::Left, restarts, seed)?;
    let r = map_norm(algebra, &dc.r, Side::Right, restarts, seed)?;
    let (big, small) = if r.lower > l.lower { (r, l) } else { (l, r) };
    let mut out = NormBound {
        p: algebra.exponent(),
        lower: big.lower,
        upper: big.upper.max(small.upper),
        witness: big.witness,
        methods: big.methods,
    };
    for m in small.methods {
        out.push_method(m);
    }
    out.reconcile()
}

/// `‖T‖_{A→A}` for a map that is multiplication by some element on `side`.
fn map_norm(
    algebra: &FiniteDimAlgebra,
    t: &CMatrix,
    side: Side,
    restarts: usize,
    seed: u64,
) -> Result<NormBound> {
    let d = algebra.dim();
    let p = algebra.exponent();
    if d == 1 {
        let v = t[(0, 0)].norm();
        return Ok(NormBound::exact(p, v, Some(CVector::from_element(1, one())), NormMethod::Sup));
    }
    match algebra.norm_descriptor() {
        NormDescriptor::Sup => {
            let v = t
                .row_iter()
                .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max);
            Ok(NormBound::exact(p, v, None, NormMethod::ExactInf))
        }
        NormDescriptor::ConvOperator { group, p } => {
            // with an identity, T = multiplication by T(𝟙₀)
            if let Some(u) = algebra.unit() {
                let coords: Vec<Complex64> =
                    (t * CVector::from_vec(u)).iter().copied().collect();
                let expected = match side {
                    Side::Left => algebra.left_matrix(&coords),
                    Side::Right => algebra.right_matrix(&coords),
                };
                if crate::max_modulus((&expected - t).iter()) <= 1e-9 * (1.0 + crate::max_modulus(t.iter())) {
                    let a = AlgebraElement::from_delta_coords(group, &coords)?;
                    return multiplier_norm_bounds_side(group, &a, *p, side, restarts, seed);
                }
            }
            nested_map_norm(algebra, t, restarts, seed)
        }
        NormDescriptor::MatrixOperator { .. } => nested_map_norm(algebra, t, restarts, seed),
    }
}

fn to_complex(v: &[f64]) -> Vec<Complex64> {
    v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// Outer compass ascent of `lower(‖Tx‖)/upper(‖x‖)` over the coordinate
/// space, with the coordinate bound `Σ|T_ij| · max_i upper(‖b_i‖)` on top.
fn nested_map_norm(
    algebra: &FiniteDimAlgebra,
    t: &CMatrix,
    restarts: usize,
    seed: u64,
) -> Result<NormBound> {
    let d = algebra.dim();
    let p = algebra.exponent();
    let inner = restarts.clamp(1, SCREEN_RESTARTS);
    let ratio = |x: &[Complex64], r: usize| -> Result<f64> {
        let den = algebra.element_norm(x, r, seed)?.upper;
        if den <= 0.0 {
            return Ok(0.0);
        }
        let tx: Vec<Complex64> = (t * CVector::from_column_slice(x)).iter().copied().collect();
        Ok(algebra.element_norm(&tx, r, seed)?.lower / den)
    };

    let mut starts: Vec<Vec<Complex64>> = (0..d).map(|i| unit_vector(d, i)).collect();
    starts.extend(
        (0..restarts.min(8) as u64)
            .map(|k| seeded_start(d, seed, WITNESS_STREAM + k).iter().copied().collect()),
    );
    let mut best = (0.0, starts[0].clone());
    for start in starts {
        let x0: Vec<f64> = start.iter().flat_map(|c| [c.re, c.im]).collect();
        let (x, _) = compass_maximize(
            |v| ratio(&to_complex(v), inner).unwrap_or(0.0),
            x0,
            0.25,
            1e-6,
            OUTER_MAX_EVALS,
        );
        let x = to_complex(&x);
        let value = ratio(&x, restarts)?;
        if value > best.0 {
            best = (value, x);
        }
    }

    let mut kappa: f64 = 0.0;
    for i in 0..d {
        kappa = kappa.max(algebra.element_norm(&unit_vector(d, i), restarts, seed)?.upper);
    }
    let total: f64 = t.iter().map(|z| z.norm()).sum();
    NormBound {
        p,
        lower: best.0,
        upper: kappa * total,
        witness: Some(CVector::from_vec(best.1)),
        methods: vec![NormMethod::PowerIteration, NormMethod::CoordinateBound],
    }
    .reconcile()
}

/// `sup ‖Mx‖₁ / ‖x‖₁` over nonzero `x` with `Σx = 0`.
///
/// The unit ball of that subspace has its extreme points on supports of at
/// most three elements, so the supremum is a maximum over pairs and triples.
/// Pairs are evaluated in closed form; triples are parametrised as
/// `cos ψ (δ_g − δ_k) + sin ψ e^{iφ} (δ_h − δ_k)` and maximised by a grid
/// followed by compass search.
fn ideal_l1_opnorm(m: &CMatrix) -> (f64, CVector) {
    let n = m.ncols();
    let col = |j: usize| m.column(j).clone_owned();
    let l1 = |v: &CVector| v.iter().map(|z| z.norm()).sum::<f64>();
    let mut best = (0.0, CVector::zeros(n));
    for g in 0..n {
        for h in g + 1..n {
            let v = l1(&(col(g) - col(h))) / 2.0;
            if v > best.0 {
                let mut x = CVector::zeros(n);
                x[g] = Complex64::new(0.5, 0.0);
                x[h] = Complex64::new(-0.5, 0.0);
                best = (v, x);
            }
        }
    }
    if n < 3 {
        return best;
    }

    const PSI_STEPS: usize = 17;
    const PHI_STEPS: usize = 32;
    let f = |u: &CVector, w: &CVector, psi: f64, phi: f64| {
        let (c, s) = (psi.cos(), psi.sin());
        let beta = Complex64::from_polar(s, phi);
        let num = l1(&(u * Complex64::new(c, 0.0) + w * beta));
        let den = c.abs() + s.abs() + (Complex64::new(c, 0.0) + beta).norm();
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    };
    let mut candidates: Vec<(f64, usize, usize, usize, f64, f64)> = Vec::new();
    for k in 0..n {
        for g in 0..n {
            for h in g + 1..n {
                if g == k || h == k {
                    continue;
                }
                let (u, w) = (col(g) - col(k), col(h) - col(k));
                let mut local = (f64::NEG_INFINITY, 0.0, 0.0);
                for a in 0..PSI_STEPS {
                    let psi = std::f64::consts::FRAC_PI_2 * a as f64 / (PSI_STEPS - 1) as f64;
                    for b in 0..PHI_STEPS {
                        let phi = std::f64::consts::TAU * b as f64 / PHI_STEPS as f64;
                        let v = f(&u, &w, psi, phi);
                        if v > local.0 {
                            local = (v, psi, phi);
                        }
                    }
                }
                candidates.push((local.0, g, h, k, local.1, local.2));
            }
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    let top = candidates[0].0;
    for &(v, g, h, k, psi, phi) in candidates.iter().take(32) {
        if v < 0.98 * top && v < best.0 {
            break;
        }
        let (u, w) = (col(g) - col(k), col(h) - col(k));
        let (x, value) = compass_maximize(|x| f(&u, &w, x[0], x[1]), vec![psi, phi], 0.05, 1e-13, 4000);
        if value > best.0 {
            let (c, s) = (x[0].cos(), x[0].sin());
            let beta = Complex64::from_polar(s, x[1]);
            let mut v = CVector::zeros(n);
            v[g] += Complex64::new(c, 0.0);
            v[h] += beta;
            v[k] -= Complex64::new(c, 0.0) + beta;
            let scale = l1(&v);
            best = (value, v.unscale(scale));
        }
    }
    best
}

fn require_same_group(group: &Arc<FiniteGroup>, a: &AlgebraElement) -> Result<()> {
    if Arc::ptr_eq(group, a.group()) || **group == **a.group() {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `⦀a⦀₁` on the ideal of `ℓ¹(G)`, evaluated exactly over extreme points.
///
/// ```
/// use lpalg::{parse_group, AlgebraElement};
/// use lpalg::multiplier::multiplier_norm_l1_exact;
///
/// let g = parse_group("Z3").unwrap();
/// let a = &AlgebraElement::cap_delta(&g, 1).unwrap() + &AlgebraElement::cap_delta(&g, 2).unwrap();
/// assert!((multiplier_norm_l1_exact(&g, &a).unwrap() - 3.0).abs() < 1e-12);
/// assert_eq!(a.l1_norm(), 4.0);
/// ```
pub fn multiplier_norm_l1_exact(group: &Arc<FiniteGroup>, a: &AlgebraElement) -> Result<f64> {
    require_same_group(group, a)?;
    a.require_ideal()?;
    Ok(ideal_l1_opnorm(a.lambda_matrix().as_matrix()).0)
}

/// Bracket for the left multiplier norm `⦀a⦀_p` on the ideal.
pub fn multiplier_norm_bounds(
    group: &Arc<FiniteGroup>,
    a: &AlgebraElement,
    p: f64,
    restarts: usize,
    seed: u64,
) -> Result<NormBound> {
    multiplier_norm_bounds_side(group, a, p, Side::Left, restarts, seed)
}

/// Bracket for `sup ‖λ_p(a∗b)‖/‖λ_p(b)‖` (or `b∗a` on the right).
///
/// The upper side is `min_c upper(‖λ_p(a + cΣδ_g)‖)`: adding a multiple of
/// `Σδ_g` does not change the product with an ideal element. The lower side
/// is the best attained ratio `lower(‖λ_p(a∗b)‖)/upper(‖λ_p(b)‖)` over a
/// witness set, and at least one for a nonzero idempotent. At `p = 1` both
/// sides are the extreme-point value.
pub fn multiplier_norm_bounds_side(
    group: &Arc<FiniteGroup>,
    a: &AlgebraElement,
    p: f64,
    side: Side,
    restarts: usize,
    seed: u64,
) -> Result<NormBound> {
    require_same_group(group, a)?;
    check_exponent(p)?;
    a.require_ideal()?;
    let n = group.order();
    if n < 2 {
        return Err(Error::GroupTooSmall { order: n, min: 2 });
    }
    if restarts == 0 {
        return Err(Error::Guard("at least one restart is required".into()));
    }
    if p == 1.0 {
        let m = match side {
            Side::Left => a.lambda_matrix(),
            Side::Right => a.rho_matrix(),
        };
        let (value, witness) = ideal_l1_opnorm(m.as_matrix());
        return Ok(NormBound::exact(p, value, Some(witness), NormMethod::ExtremePoint));
    }

    let (upper, upper_methods) = shifted_upper(a, p);
    let mut bound = NormBound {
        p,
        lower: 0.0,
        upper,
        witness: None,
        methods: upper_methods,
    };

    let product = |b: &AlgebraElement| -> AlgebraElement {
        let r = match side {
            Side::Left => a.convolve(b),
            Side::Right => b.convolve(a),
        };
        r.expect("same group")
    };
    let ratio = |b: &AlgebraElement, r: usize| -> Result<f64> {
        let den = upper_with_method(b.lambda_matrix().as_matrix(), p).0;
        if den <= 1e-300 {
            return Ok(0.0);
        }
        let num = norm_lower(product(b).lambda_matrix().as_matrix(), p, r, seed)?;
        Ok(num / den)
    };

    let witnesses = witness_set(group, a, restarts, seed)?;
    let mut scored = Vec::with_capacity(witnesses.len());
    for b in witnesses {
        let v = ratio(&b, SCREEN_RESTARTS.min(restarts))?;
        scored.push((v, b));
    }
    scored.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut best: (f64, Option<AlgebraElement>) = (0.0, None);
    for (_, b) in scored.iter().take(POLISH_CANDIDATES) {
        let v = ratio(b, restarts)?;
        if v > best.0 {
            best = (v, Some(b.clone()));
        }
    }
    if let Some(b0) = best.1.clone() {
        let x0: Vec<f64> = b0.delta_coords().iter().flat_map(|c| [c.re, c.im]).collect();
        let scale = x0.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-3);
        let build = |x: &[f64]| AlgebraElement::from_delta_coords(group, &to_complex(x));
        let (x, _) = compass_maximize(
            |x| {
                build(x)
                    .and_then(|b| ratio(&b, SCREEN_RESTARTS.min(restarts)))
                    .unwrap_or(0.0)
            },
            x0,
            0.25 * scale,
            1e-6 * scale,
            OUTER_MAX_EVALS,
        );
        let b = build(&x)?;
        let v = ratio(&b, restarts)?;
        if v > best.0 {
            best = (v, Some(b));
        }
    }
    if best.0 > 0.0 {
        bound.lower = best.0;
        bound.witness = best.1.map(|b| b.to_vector());
        bound.push_method(NormMethod::WitnessRatio);
    }
    if is_nonzero_idempotent(a) && bound.lower < 1.0 {
        bound.lower = 1.0;
        bound.push_method(NormMethod::Idempotent);
    }
    bound.reconcile()
}

fn norm_lower(m: &CMatrix, p: f64, restarts: usize, seed: u64) -> Result<f64> {
    if p == 2.0 {
        Ok(spectral_norm(m))
    } else {
        Ok(opnorm_lower(m, p, restarts, seed)?.0)
    }
}

fn is_nonzero_idempotent(a: &AlgebraElement) -> bool {
    let scale = a.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale < 1e-9 {
        return false;
    }
    let sq = a.convolve(a).expect("same group");
    sq.max_distance(a) <= 1e-10 * (1.0 + scale)
}

/// `min_c upper(‖λ_p(a + cΣδ_g)‖)`, starting from `c = 0` and `c = −a(g)`.
fn shifted_upper(a: &AlgebraElement, p: f64) -> (f64, Vec<NormMethod>) {
    let group = a.group();
    let sum = AlgebraElement::sum_of_deltas(group);
    let eval = |c: Complex64| -> (f64, NormMethod) {
        let shifted = a + &sum.scale(c);
        upper_with_method(shifted.lambda_matrix().as_matrix(), p)
    };
    let (base, base_method) = eval(zero());
    let mut best = (base, zero());
    for &x in a.coeffs() {
        let v = eval(-x).0;
        if v < best.0 {
            best = (v, -x);
        }
    }
    let scale = a.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-3);
    let (x, neg) = compass_maximize(
        |x| -eval(Complex64::new(x[0], x[1])).0,
        vec![best.1.re, best.1.im],
        0.1 * scale,
        1e-13 * scale,
        2000,
    );
    if -neg < best.0 {
        best = (-neg, Complex64::new(x[0], x[1]));
    }
    if best.0 < base {
        let (_, method) = eval(best.1);
        (best.0, vec![method, NormMethod::ShiftBound])
    } else {
        (base, vec![base_method])
    }
}

/// `𝟙₀`, `a`, all `(δ_g − δ_h)/2`, the minimal idempotents when the group is
/// abelian, and `restarts` seeded ideal elements.
fn witness_set(
    group: &Arc<FiniteGroup>,
    a: &AlgebraElement,
    restarts: usize,
    seed: u64,
) -> Result<Vec<AlgebraElement>> {
    let n = group.order();
    let mut out = vec![AlgebraElement::one_zero(group)?];
    if a.l1_norm() > 0.0 {
        out.push(a.clone());
    }
    for g in 0..n {
        for h in g + 1..n {
            let d = &AlgebraElement::delta(group, g)? - &AlgebraElement::delta(group, h)?;
            out.push(d.scale(0.5));
        }
    }
    if group.is_abelian() && n <= MAX_IDEMPOTENT_WITNESS_ORDER {
        out.extend(idempotent_basis(group)?.elements);
    }
    for k in 0..restarts as u64 {
        let v = seeded_start(n, seed, WITNESS_STREAM + k);
        let mean = v.iter().sum::<Complex64>() / n as f64;
        out.push(AlgebraElement::new(
            group.clone(),
            v.iter().map(|&z| z - mean).collect(),
        )?);
    }
    Ok(out)
}
