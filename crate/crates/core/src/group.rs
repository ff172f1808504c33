//! Finite groups as explicit multiplication tables.
//!
//! Elements are indexed `0..n` and the identity always sits at index 0, so
//! coefficient vectors everywhere in the crate share one canonical ordering.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Tables larger than this skip the exhaustive associativity check.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    inverse: Vec<usize>,
    label: String,
    factors: Option<Vec<usize>>,
}

impl FiniteGroup {
    /// The cyclic group Z/nZ; element `i` is the residue `[i]`.
    pub fn cyclic(n: i64) -> Result<Arc<Self>> {
        if n < 1 {
            return Err(Error::InvalidOrder(n));
        }
        let n = n as usize;
        let cayley = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) % n))
            .collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        Ok(Arc::new(FiniteGroup {
            order: n,
            cayley,
            inverse,
            label: format!("Z{n}"),
            factors: Some(vec![n]),
        }))
    }

    /// Direct product `G x H`. The pair `(g_i, h_j)` gets index `i * |H| + j`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Arc<Self> {
        let (ng, nh) = (g.order, h.order);
        let n = ng * nh;
        let mut cayley = vec![0; n * n];
        for a in 0..n {
            let (ai, aj) = (a / nh, a % nh);
            for b in 0..n {
                let (bi, bj) = (b / nh, b % nh);
                cayley[a * n + b] = g.mul(ai, bi) * nh + h.mul(aj, bj);
            }
        }
        let inverse = (0..n)
            .map(|a| g.inv(a / nh) * nh + h.inv(a % nh))
            .collect();
        let factors = match (&g.factors, &h.factors) {
            (Some(f), Some(k)) => Some(f.iter().chain(k).copied().collect()),
            _ => None,
        };
        Arc::new(FiniteGroup {
            order: n,
            cayley,
            inverse,
            label: format!("{}x{}", g.label, h.label),
            factors,
        })
    }

    /// Builds a group from a user-supplied Cayley table.
    ///
    /// The table must have the identity at index 0 and be a Latin square;
    /// associativity is checked exhaustively for orders up to 64.
    pub fn from_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            for &x in &table[i] {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {i} repeats an element")));
                }
            }
        }
        let cayley: Vec<usize> = table.into_iter().flatten().collect();
        let mut inverse = vec![0; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&j| cayley[i * n + j] == 0)
                .expect("Latin rows contain the identity");
            if cayley[*inv * n + i] != 0 {
                return Err(Error::InvalidTable(format!("element {i} has no two-sided inverse")));
            }
        }
        let group = FiniteGroup {
            order: n,
            cayley,
            inverse,
            label: label.into(),
            factors: None,
        };
        if n <= ASSOCIATIVITY_CHECK_LIMIT && !group.is_associative() {
            return Err(Error::InvalidTable("operation is not associative".into()));
        }
        Ok(Arc::new(group))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Cyclic factor orders when the group was built from `cyclic`/`direct_product`.
    pub fn factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }

    /// Index of `g_i * g_j`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cayley[i * self.order + j]
    }

    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn cayley_row(&self, i: usize) -> &[usize] {
        &self.cayley[i * self.order..(i + 1) * self.order]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (i + 1..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let ij = self.mul(i, j);
                (0..n).all(|k| self.mul(ij, k) == self.mul(i, self.mul(j, k)))
            })
        })
    }

    /// Order of the element `g`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Maps per-factor residues to an element index (left-associated product order).
    pub fn index_of_tuple(&self, residues: &[i64]) -> Result<usize> {
        let factors = self.factors.as_deref().ok_or_else(|| {
            Error::Unsupported("tuple indices need a group built from cyclic factors".into())
        })?;
        if residues.len() != factors.len() {
            return Err(Error::parse(
                format!("{residues:?}"),
                format!("expected {} components for {}", factors.len(), self.label),
            ));
        }
        let mut index = 0usize;
        for (&r, &m) in residues.iter().zip(factors) {
            index = index * m + r.rem_euclid(m as i64) as usize;
        }
        Ok(index)
    }

    /// Inverse of [`index_of_tuple`](Self::index_of_tuple).
    pub fn tuple_of_index(&self, mut index: usize) -> Option<Vec<usize>> {
        let factors = self.factors.as_deref()?;
        let mut out = vec![0; factors.len()];
        for (slot, &m) in out.iter_mut().zip(factors).rev() {
            *slot = index % m;
            index /= m;
        }
        Some(out)
    }

    pub(crate) fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: g,
                order: self.order,
            })
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FiniteGroup", 3)?;
        s.serialize_field("label", &self.label)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("factors", &self.factors)?;
        s.end()
    }
}

/// Parses `Z<n>` or `Z<n>xZ<m>[xZ<k>...]` into a cyclic group or a
/// left-associated direct product.
pub fn parse_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::parse(spec, "empty group spec"));
    }
    let mut group: Option<Arc<FiniteGroup>> = None;
    for token in spec.split(['x', '×']) {
        let token = token.trim();
        let digits = token
            .strip_prefix('Z')
            .ok_or_else(|| Error::parse(token, "expected a factor of the form Z<n>"))?;
        let n: i64 = digits
            .parse()
            .map_err(|_| Error::parse(token, "expected a positive integer after Z"))?;
        if n < 1 {
            return Err(Error::parse(token, "cyclic order must be at least 1"));
        }
        let factor = FiniteGroup::cyclic(n)?;
        group = Some(match group {
            None => factor,
            Some(g) => FiniteGroup::direct_product(&g, &factor),
        });
    }
    Ok(group.expect("split yields at least one token"))
}
