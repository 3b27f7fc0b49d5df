//! Explicit subgroups of `GL(μ, F)` and of `GL(i, F) × GL(j, F)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::finite_group::{all_normal_subgroups, generated_subgroup, is_normal, GroupElement};

use super::linalg::Matrix;

/// Largest `p^(μ²)` for which `GL(μ, F)` is enumerated.
pub const GL_ENUMERATION_CAP: usize = 1000;

impl GroupElement for Matrix {
    fn mul(&self, other: &Self) -> Self {
        Matrix::mul(self, other)
    }

    fn inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }
}

/// Every element of `GL(μ, F)`.
pub fn gl_elements(p: u8, mu: usize) -> Result<Vec<Matrix>> {
    let total = (p as usize)
        .checked_pow((mu * mu) as u32)
        .unwrap_or(usize::MAX);
    if total > GL_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: format!("enumeration of GL({mu},{p})"),
            size: total,
            cap: GL_ENUMERATION_CAP,
        });
    }
    Ok(Matrix::all(p, mu)
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect())
}

/// A subgroup of `GL(degree, F)` stored by its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixGroup {
    p: u8,
    degree: usize,
    elements: BTreeSet<Matrix>,
}

impl MatrixGroup {
    pub fn trivial(p: u8, degree: usize) -> Self {
        MatrixGroup {
            p,
            degree,
            elements: [Matrix::identity(p, degree)].into(),
        }
    }

    pub fn full(p: u8, degree: usize) -> Result<Self> {
        Ok(MatrixGroup {
            p,
            degree,
            elements: gl_elements(p, degree)?.into_iter().collect(),
        })
    }

    /// Checks that `elements` form a normal subgroup of `GL(degree, F)`.
    pub fn normal_from_elements(p: u8, degree: usize, elements: BTreeSet<Matrix>) -> Result<Self> {
        if elements
            .iter()
            .any(|m| m.characteristic() != p || m.size() != degree || !m.is_invertible())
        {
            return Err(Error::InvalidParameters(format!(
                "elements must lie in GL({degree},{p})"
            )));
        }
        let ambient = gl_elements(p, degree)?;
        if !crate::finite_group::is_subgroup(&elements) || !is_normal(&ambient, &elements) {
            return Err(Error::InvalidParameters(format!(
                "not a normal subgroup of GL({degree},{p})"
            )));
        }
        Ok(MatrixGroup {
            p,
            degree,
            elements,
        })
    }

    /// Normal closure of one element.
    pub fn normal_closure(g: &Matrix) -> Result<Self> {
        let (p, degree) = (g.characteristic(), g.size());
        let ambient = gl_elements(p, degree)?;
        let class: Vec<Matrix> = ambient
            .iter()
            .map(|a| g.conj(a))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(MatrixGroup {
            p,
            degree,
            elements: generated_subgroup(&Matrix::identity(p, degree), &class),
        })
    }

    /// Every normal subgroup of `GL(degree, F)`, by order.
    pub fn all_normal(p: u8, degree: usize) -> Result<Vec<Self>> {
        let ambient = gl_elements(p, degree)?;
        let mut out: Vec<Self> = all_normal_subgroups(&ambient, &Matrix::identity(p, degree))
            .into_iter()
            .map(|elements| MatrixGroup {
                p,
                degree,
                elements,
            })
            .collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &BTreeSet<Matrix> {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &Matrix) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &MatrixGroup) -> bool {
        self.elements.is_subset(&other.elements)
    }
}

impl fmt::Display for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self.elements.iter().map(Matrix::body).collect();
        write!(f, "{{{}}}", els.join(" "))
    }
}

/// A normal subgroup of `GL(i, F) × GL(j, F)`, with its projections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairGroup {
    elements: BTreeSet<(Matrix, Matrix)>,
    left: BTreeSet<Matrix>,
    right: BTreeSet<Matrix>,
}

impl PairGroup {
    /// Normal closure of `(g, h)` in `GL(i, F) × GL(j, F)`. The conjugacy
    /// class of a pair is the product of the two classes.
    pub fn normal_closure(g: &Matrix, h: &Matrix) -> Result<Self> {
        let amb_l = gl_elements(g.characteristic(), g.size())?;
        let amb_r = gl_elements(h.characteristic(), h.size())?;
        let class_l: BTreeSet<Matrix> = amb_l.iter().map(|a| g.conj(a)).collect();
        let class_r: BTreeSet<Matrix> = amb_r.iter().map(|b| h.conj(b)).collect();
        let gens: Vec<(Matrix, Matrix)> = class_l
            .iter()
            .flat_map(|a| class_r.iter().map(move |b| (*a, *b)))
            .collect();
        let identity = (
            Matrix::identity(g.characteristic(), g.size()),
            Matrix::identity(h.characteristic(), h.size()),
        );
        Ok(Self::from_elements(generated_subgroup(&identity, &gens)))
    }

    fn from_elements(elements: BTreeSet<(Matrix, Matrix)>) -> Self {
        let left = elements.iter().map(|(a, _)| *a).collect();
        let right = elements.iter().map(|(_, b)| *b).collect();
        PairGroup {
            elements,
            left,
            right,
        }
    }

    pub fn elements(&self) -> &BTreeSet<(Matrix, Matrix)> {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Matrix, h: &Matrix) -> bool {
        self.elements.contains(&(*g, *h))
    }

    pub fn left_contains(&self, g: &Matrix) -> bool {
        self.left.contains(g)
    }

    pub fn right_contains(&self, h: &Matrix) -> bool {
        self.right.contains(h)
    }

    pub fn left_projection(&self) -> &BTreeSet<Matrix> {
        &self.left
    }

    pub fn right_projection(&self) -> &BTreeSet<Matrix> {
        &self.right
    }

    pub fn is_subgroup_of(&self, other: &PairGroup) -> bool {
        self.elements.is_subset(&other.elements)
    }
}

impl fmt::Display for PairGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let els: Vec<String> = self
            .elements
            .iter()
            .map(|(a, b)| format!("({}|{})", a.body(), b.body()))
            .collect();
        write!(f, "{{{}}}", els.join(" "))
    }
}

/// The normal subgroup of `GL(i, F) × GL(j, F)` associated with a pair of
/// componentwise H-related elements `((K, L), (K', L'))`: reduce `(K, L)` to
/// `(E_i, E_j)` and take the normal closure of the image of `(K', L')`.
pub fn associated_normal_subgroup(
    k: &Matrix,
    l: &Matrix,
    k2: &Matrix,
    l2: &Matrix,
) -> Result<PairGroup> {
    let reduce = |a: &Matrix, b: &Matrix| -> Result<Matrix> {
        let (s1, s2) = a.reduce_to_partial_identity();
        s1.mul(b)
            .mul(&s2)
            .leading_block(a.rank())
            .ok_or(Error::NotHRelated)
    };
    PairGroup::normal_closure(&reduce(k, k2)?, &reduce(l, l2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_elements(2, 2).unwrap().len(), 6);
        assert_eq!(gl_elements(3, 2).unwrap().len(), 48);
        assert_eq!(gl_elements(2, 3).unwrap().len(), 168);
        assert_eq!(gl_elements(5, 1).unwrap().len(), 4);
        assert_eq!(gl_elements(2, 0).unwrap().len(), 1);
        assert!(gl_elements(3, 3).is_err());
    }

    #[test]
    fn normal_subgroups_of_small_gl() {
        // GL(2,2) is S_3.
        assert_eq!(MatrixGroup::all_normal(2, 2).unwrap().len(), 3);
        let swap = Matrix::parse("0,1;1,0@GF(2)", None).unwrap();
        assert_eq!(MatrixGroup::normal_closure(&swap).unwrap().order(), 6);
        // SL(2,3) and the centre are among the normal subgroups of GL(2,3).
        let orders: Vec<usize> = MatrixGroup::all_normal(3, 2)
            .unwrap()
            .iter()
            .map(MatrixGroup::order)
            .collect();
        assert!(orders.contains(&24) && orders.contains(&2));
    }

    #[test]
    fn associated_subgroup_examples() {
        let e = Matrix::identity(2, 2);
        let swap = Matrix::parse("0,1;1,0@GF(2)", None).unwrap();
        assert_eq!(
            associated_normal_subgroup(&e, &e, &e, &e).unwrap().order(),
            1
        );
        let h = associated_normal_subgroup(&e, &e, &swap, &swap).unwrap();
        let direct = PairGroup::normal_closure(&swap, &swap).unwrap();
        assert_eq!(h, direct);
        // Both transposition classes paired: the parity diagonal of S_3 x S_3.
        assert_eq!(h.order(), 18);
        let e1 = Matrix::partial_identity(2, 2, 1);
        assert!(matches!(
            associated_normal_subgroup(&e, &e1, &swap, &e),
            Err(Error::NotHRelated)
        ));
    }
}
