//! Elements of the complex group algebra, convolution and the left regular
//! representation.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::{CMatrix, CVector};

/// Relative tolerance for augmentation-ideal membership.
pub const IDEAL_TOLERANCE: f64 = 1e-9;

/// A function `G -> C`, stored as `coeffs[i] = a(g_i)`.
#[derive(Clone)]
pub struct AlgebraElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Complex64>,
}

impl AlgebraElement {
    pub fn new(group: Arc<FiniteGroup>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Numerical(format!(
                "coefficient vector has length {} but the group has order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(AlgebraElement { group, coeffs })
    }

    pub fn from_real(group: Arc<FiniteGroup>, coeffs: &[f64]) -> Result<Self> {
        Self::new(group, coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        AlgebraElement {
            group: group.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); group.order()],
        }
    }

    /// The indicator function of `g`.
    pub fn delta(group: &Arc<FiniteGroup>, g: usize) -> Result<Self> {
        group.check_index(g)?;
        let mut a = Self::zero(group);
        a.coeffs[g] = Complex64::new(1.0, 0.0);
        Ok(a)
    }

    /// `Δ_g = δ_g − δ_1`; zero when `g` is the identity.
    pub fn cap_delta(group: &Arc<FiniteGroup>, g: usize) -> Result<Self> {
        group.check_index(g)?;
        let mut a = Self::zero(group);
        a.coeffs[g] += 1.0;
        a.coeffs[0] -= 1.0;
        Ok(a)
    }

    /// `Σ_g δ_g`, the element that the ideal annihilates.
    pub fn sum_of_deltas(group: &Arc<FiniteGroup>) -> Self {
        AlgebraElement {
            group: group.clone(),
            coeffs: vec![Complex64::new(1.0, 0.0); group.order()],
        }
    }

    /// The identity of the augmentation ideal, `−(1/n) Σ_g Δ_g`.
    pub fn one_zero(group: &Arc<FiniteGroup>) -> Result<Self> {
        let n = group.order();
        if n < 2 {
            return Err(Error::GroupTooSmall { order: n, min: 2 });
        }
        let mut coeffs = vec![Complex64::new(-1.0 / n as f64, 0.0); n];
        coeffs[0] = Complex64::new((n - 1) as f64 / n as f64, 0.0);
        Ok(AlgebraElement {
            group: group.clone(),
            coeffs,
        })
    }

    /// Builds `Σ_k c_k Δ_{g_k}` from coordinates over the non-identity elements.
    pub fn from_delta_coords(group: &Arc<FiniteGroup>, coords: &[Complex64]) -> Result<Self> {
        let n = group.order();
        if coords.len() + 1 != n {
            return Err(Error::Numerical(format!(
                "expected {} Δ-coordinates, got {}",
                n - 1,
                coords.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(-coords.iter().sum::<Complex64>());
        coeffs.extend_from_slice(coords);
        Ok(AlgebraElement {
            group: group.clone(),
            coeffs,
        })
    }

    /// Coordinates in the basis `{Δ_g : g ≠ 1}`, i.e. `(a(g_1), …, a(g_{n−1}))`.
    ///
    /// Only meaningful for elements of the ideal.
    pub fn delta_coords(&self) -> Vec<Complex64> {
        self.coeffs[1..].to_vec()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn to_vector(&self) -> CVector {
        CVector::from_column_slice(&self.coeffs)
    }

    pub fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `(a ∗ b)(g) = Σ_h a(h) b(h⁻¹ g)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let g = &self.group;
        let mut out = vec![Complex64::new(0.0, 0.0); g.order()];
        for (h, &ah) in self.coeffs.iter().enumerate() {
            if ah == Complex64::new(0.0, 0.0) {
                continue;
            }
            // h * k runs over the group as k does
            for (k, &bk) in other.coeffs.iter().enumerate() {
                out[g.mul(h, k)] += ah * bk;
            }
        }
        Ok(AlgebraElement {
            group: g.clone(),
            coeffs: out,
        })
    }

    /// The augmentation `Σ_g a(g)`.
    pub fn augmentation(&self) -> Complex64 {
        self.coeffs.iter().sum()
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm(&self.coeffs, p)
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `|ι₀(a)|`, the quantity compared against the ideal tolerance.
    pub fn ideal_residual(&self) -> f64 {
        self.augmentation().norm()
    }

    pub fn in_ideal(&self) -> bool {
        self.ideal_residual() <= IDEAL_TOLERANCE * (1.0 + self.l1_norm())
    }

    pub fn require_ideal(&self) -> Result<()> {
        if self.in_ideal() {
            Ok(())
        } else {
            Err(Error::NotInIdeal {
                residual: self.ideal_residual(),
            })
        }
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        AlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    /// Max-modulus distance between coefficient vectors.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// The standard matrix of left convolution, `M[k][j] = a(g_k g_j⁻¹)`.
    pub fn lambda_matrix(&self) -> ConvMatrix {
        let g = &self.group;
        let n = g.order();
        ConvMatrix(CMatrix::from_fn(n, n, |k, j| {
            self.coeffs[g.mul(k, g.inv(j))]
        }))
    }

    /// The standard matrix of right convolution `b ↦ b ∗ a`, `M[k][j] = a(g_j⁻¹ g_k)`.
    pub fn rho_matrix(&self) -> ConvMatrix {
        let g = &self.group;
        let n = g.order();
        ConvMatrix(CMatrix::from_fn(n, n, |k, j| {
            self.coeffs[g.mul(g.inv(j), k)]
        }))
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraElement")
            .field("group", &self.group.label())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    /// Panics if the elements live over different groups.
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert!(self.same_group(rhs), "adding elements of different groups");
        AlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    /// Panics if the elements live over different groups.
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert!(self.same_group(rhs), "subtracting elements of different groups");
        AlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

/// The matrix of a convolution operator on `ℓ^p(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvMatrix(pub CMatrix);

impl ConvMatrix {
    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn apply(&self, b: &AlgebraElement) -> CVector {
        &self.0 * b.to_vector()
    }
}

/// The ℓ^p norm of a complex vector; `p = f64::INFINITY` gives the max modulus.
pub fn lp_norm(v: &[Complex64], p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent {
            p,
            reason: "ℓ^p norms need p ≥ 1",
        });
    }
    Ok(lp_norm_unchecked(v, p))
}

pub(crate) fn lp_norm_unchecked(v: &[Complex64], p: f64) -> f64 {
    let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if p.is_infinite() || scale == 0.0 {
        return scale;
    }
    if p == 1.0 {
        return v.iter().map(|c| c.norm()).sum();
    }
    if p == 2.0 {
        return v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    }
    // scaled to avoid overflow for large p
    let s: f64 = v.iter().map(|c| (c.norm() / scale).powf(p)).sum();
    scale * s.powf(1.0 / p)
}
