//! Multiplicative functionals of the augmentation ideal of a finite abelian
//! group, the Gelfand transform, and idempotents.
//!
//! Every nontrivial character `χ` gives a functional `ω(Δ_g) = χ(g) − 1`. In
//! the basis `{Δ_g : g ≠ 1}` these functionals form the translation matrix
//! `X`, and the transform of an ideal element `a` is `X·[a]`, where `[a]`
//! lists the values of `a` off the identity.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multiplier::multiplier_norm_bounds;
use crate::pnorm::NormBound;
use crate::{CMatrix, CVector};

/// Largest order accepted by [`enumerate_idempotents`].
pub const MAX_ENUMERATION_ORDER: usize = 16;
/// Two idempotents are the same when their coefficients differ by less than this.
pub const IDEMPOTENT_DEDUP_TOL: f64 = 1e-8;
/// Margin a symmetry's lower bound must clear to be flagged as a non-isometry.
pub const NON_ISOMETRY_MARGIN: f64 = 1e-6;
const BICONTRACTIVE_SLACK: f64 = 1e-9;
const CHARACTER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct FunctionalTable {
    #[serde(skip)]
    pub group: Arc<FiniteGroup>,
    /// `X[j][k] = ω_j(Δ_{g_{k+1}})`, rows indexed by nontrivial characters.
    #[serde(with = "crate::serial::matrix")]
    pub values: CMatrix,
    /// Full character values `χ_j(g)`, including the trivial character at row 0.
    #[serde(skip)]
    pub characters: CMatrix,
}

fn root_of_unity(k: usize, m: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

/// Characters of a product of cyclic factors, indexed like the group elements.
fn product_characters(group: &FiniteGroup, factors: &[usize]) -> CMatrix {
    let n = group.order();
    let tuples: Vec<Vec<usize>> = (0..n)
        .map(|i| group.tuple_of_index(i).expect("group has factors"))
        .collect();
    CMatrix::from_fn(n, n, |j, k| {
        let mut phase = 0.0;
        for ((&t, &g), &m) in tuples[j].iter().zip(&tuples[k]).zip(factors) {
            phase += ((t * g) % m) as f64 / m as f64;
        }
        Complex64::from_polar(1.0, 2.0 * PI * phase)
    })
}

/// Characters of an abelian Cayley table without a known factorisation:
/// assign roots of unity to a greedy generating set and keep the assignments
/// that extend consistently to the whole group.
fn table_characters(group: &FiniteGroup) -> Result<CMatrix> {
    let n = group.order();
    let mut generators = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    while let Some(g) = (0..n).find(|&g| !span[g]) {
        generators.push(g);
        // closure of the span under the new generator
        let mut frontier: Vec<usize> = (0..n).filter(|&x| span[x]).collect();
        while let Some(x) = frontier.pop() {
            for &s in &generators {
                let y = group.mul(x, s);
                if !span[y] {
                    span[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    let orders: Vec<usize> = generators.iter().map(|&g| group.element_order(g)).collect();
    let total: usize = orders.iter().product();
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    'assign: for code in 0..total {
        let mut c = code;
        let images: Vec<Complex64> = orders
            .iter()
            .map(|&m| {
                let k = c % m;
                c /= m;
                root_of_unity(k, m)
            })
            .collect();
        let mut chi: Vec<Option<Complex64>> = vec![None; n];
        chi[0] = Some(Complex64::new(1.0, 0.0));
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            let cx = chi[x].expect("visited");
            for (&s, &img) in generators.iter().zip(&images) {
                let y = group.mul(x, s);
                let value = cx * img;
                match chi[y] {
                    None => {
                        chi[y] = Some(value);
                        frontier.push(y);
                    }
                    Some(existing) if (existing - value).norm() > CHARACTER_TOL => continue 'assign,
                    Some(_) => {}
                }
            }
        }
        rows.push(chi.into_iter().map(|v| v.expect("generators span")).collect());
    }
    if rows.len() != n {
        return Err(Error::Numerical(format!(
            "found {} characters for a group of order {n}",
            rows.len()
        )));
    }
    Ok(CMatrix::from_fn(n, n, |j, k| rows[j][k]))
}

/// The translation matrix of the ideal of an abelian group.
pub fn functionals(group: &Arc<FiniteGroup>) -> Result<FunctionalTable> {
    let n = group.order();
    if n < 2 {
        return Err(Error::GroupTooSmall { order: n, min: 2 });
    }
    if !group.is_abelian() {
        return Err(Error::Unsupported(format!(
            "{} is not abelian; characters do not separate its ideal",
            group.label()
        )));
    }
    let characters = match group.factors() {
        Some(factors) => product_characters(group, factors),
        None => table_characters(group)?,
    };
    let values = CMatrix::from_fn(n - 1, n - 1, |j, k| {
        characters[(j + 1, k + 1)] - Complex64::new(1.0, 0.0)
    });
    Ok(FunctionalTable {
        group: group.clone(),
        values,
        characters,
    })
}

impl FunctionalTable {
    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    /// Largest violation of `x_{gh} = x_g x_h + x_g + x_h` over all rows.
    pub fn system_residual(&self) -> f64 {
        let g = &self.group;
        let n = g.order();
        // x at the identity is zero
        let x = |j: usize, k: usize| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                self.values[(j, k - 1)]
            }
        };
        let mut worst: f64 = 0.0;
        for j in 0..n - 1 {
            for a in 1..n {
                for b in 1..n {
                    let lhs = x(j, g.mul(a, b));
                    let rhs = x(j, a) * x(j, b) + x(j, a) + x(j, b);
                    worst = worst.max((lhs - rhs).norm());
                }
            }
        }
        worst
    }

    pub fn smallest_singular_value(&self) -> f64 {
        crate::linalg::singular_values(&self.values)
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }
}

/// `X·[a]` for an element of the ideal.
pub fn gelfand_transform(table: &FunctionalTable, a: &AlgebraElement) -> Result<CVector> {
    if !a.same_group(&AlgebraElement::zero(&table.group)) {
        return Err(Error::GroupMismatch);
    }
    a.require_ideal()?;
    Ok(&table.values * CVector::from_vec(a.delta_coords()))
}

#[derive(Debug, Clone)]
pub struct IdempotentBasis {
    pub elements: Vec<AlgebraElement>,
}

/// The minimal idempotents `a_k` with `X·[a_k] = e_k`.
pub fn idempotent_basis(group: &Arc<FiniteGroup>) -> Result<IdempotentBasis> {
    let table = functionals(group)?;
    idempotent_basis_from(&table)
}

pub fn idempotent_basis_from(table: &FunctionalTable) -> Result<IdempotentBasis> {
    let d = table.dim();
    if table.smallest_singular_value() < 1e-8 {
        return Err(Error::Numerical("translation matrix is singular".into()));
    }
    let inverse = table
        .values
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("translation matrix is singular".into()))?;
    let elements = (0..d)
        .map(|k| {
            let coords: Vec<Complex64> = inverse.column(k).iter().copied().collect();
            AlgebraElement::from_delta_coords(&table.group, &coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdempotentBasis { elements })
}

/// An idempotent `Σ_{k ∈ mask} a_k`; bit `k` selects the `k`-th minimal idempotent.
#[derive(Debug, Clone)]
pub struct Idempotent {
    pub mask: u64,
    pub element: AlgebraElement,
}

/// All `2^{n−1}` idempotents of the ideal, in mask order.
pub fn enumerate_idempotents(group: &Arc<FiniteGroup>) -> Result<Vec<Idempotent>> {
    let n = group.order();
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Guard(format!(
            "idempotent enumeration is limited to order {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let basis = idempotent_basis(group)?;
    let d = basis.elements.len();
    Ok((0..1u64 << d)
        .map(|mask| {
            let mut element = AlgebraElement::zero(group);
            for (k, a) in basis.elements.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    element = &element + a;
                }
            }
            Idempotent { mask, element }
        })
        .collect())
}

/// The idempotent `γΔ_1 + γ̄Δ_2` of `Z/3Z`, with `γ = exp(2πi/3)/3`.
pub fn z3_idempotent(group: &Arc<FiniteGroup>) -> Result<AlgebraElement> {
    if group.order() != 3 {
        return Err(Error::Unsupported(format!(
            "the Z3 idempotent needs a group of order 3, got {}",
            group.label()
        )));
    }
    let gamma = root_of_unity(1, 3) / 3.0;
    AlgebraElement::from_delta_coords(group, &[gamma, gamma.conj()])
}

#[derive(Debug, Clone, Serialize)]
pub struct BicontractiveFlags {
    pub bicontractive: bool,
    pub non_isometry: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdempotentReport {
    pub mask: u64,
    #[serde(serialize_with = "serialize_coeffs")]
    pub coeffs: AlgebraElement,
    pub l1_norm: f64,
    pub multiplier_norm_p: NormBound,
    pub complement_norm_p: NormBound,
    pub symmetry_norm_p: NormBound,
    pub bicontractive_flags: BicontractiveFlags,
}

fn serialize_coeffs<S: serde::Serializer>(
    a: &AlgebraElement,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    crate::serial::complex_pairs(a.coeffs()).serialize(s)
}

/// Multiplier-norm bounds for every idempotent `f`, its complement `𝟙₀ − f`
/// and the symmetry `𝟙₀ − 2f` (which is its own inverse).
pub fn bicontractive_search(
    group: &Arc<FiniteGroup>,
    p: f64,
    restarts: usize,
    seed: u64,
) -> Result<Vec<IdempotentReport>> {
    let one0 = AlgebraElement::one_zero(group)?;
    enumerate_idempotents(group)?
        .into_iter()
        .map(|f| {
            let complement = &one0 - &f.element;
            let symmetry = &one0 - &f.element.scale(2.0);
            let norm_f = multiplier_norm_bounds(group, &f.element, p, restarts, seed)?;
            let norm_c = multiplier_norm_bounds(group, &complement, p, restarts, seed)?;
            let norm_s = multiplier_norm_bounds(group, &symmetry, p, restarts, seed)?;
            let bicontractive =
                norm_f.upper <= 1.0 + BICONTRACTIVE_SLACK && norm_c.upper <= 1.0 + BICONTRACTIVE_SLACK;
            let non_isometry = norm_s.lower > 1.0 + NON_ISOMETRY_MARGIN;
            Ok(IdempotentReport {
                mask: f.mask,
                l1_norm: f.element.l1_norm(),
                coeffs: f.element,
                multiplier_norm_p: norm_f,
                complement_norm_p: norm_c,
                symmetry_norm_p: norm_s,
                bicontractive_flags: BicontractiveFlags {
                    bicontractive,
                    non_isometry,
                },
            })
        })
        .collect()
}
