//! Normal subgroups of `S_k` and of `S_i × S_k` in classified form.
//!
//! The normal subgroups of `S_k` form a chain `ε ⊂ (V_4) ⊂ A_k ⊂ S_k`. In
//! `S_i × S_k` every normal subgroup is either a product `N_1 × N_2` or the
//! parity diagonal `{(a,b) : a, b of the same parity}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Parity, Permutation};

/// Degree bound for [`all_normal_subgroups_product`].
pub const PRODUCT_DEGREE_CAP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupKind {
    Trivial,
    Klein4,
    Alternating,
    Full,
}

impl SubgroupKind {
    fn literal(self) -> &'static str {
        match self {
            SubgroupKind::Trivial => "eps",
            SubgroupKind::Klein4 => "V4",
            SubgroupKind::Alternating => "A",
            SubgroupKind::Full => "S",
        }
    }
}

/// A normal subgroup of `S_degree`.
///
/// Construction normalises degenerate names: in `S_0`, `S_1` every kind is the
/// trivial group and in `S_2` the alternating group is trivial, so equal
/// groups always compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalSubgroupSk {
    degree: usize,
    kind: SubgroupKind,
}

impl NormalSubgroupSk {
    pub fn new(degree: usize, kind: SubgroupKind) -> Result<Self> {
        let kind = match (degree, kind) {
            (_, SubgroupKind::Klein4) if degree != 4 => {
                return Err(Error::InvalidElement(format!(
                    "V4 is not a normal subgroup of S_{degree}"
                )))
            }
            (0 | 1, _) => SubgroupKind::Trivial,
            (2, SubgroupKind::Alternating) => SubgroupKind::Trivial,
            (_, k) => k,
        };
        Ok(NormalSubgroupSk { degree, kind })
    }

    pub fn trivial(degree: usize) -> Self {
        NormalSubgroupSk {
            degree,
            kind: SubgroupKind::Trivial,
        }
    }

    pub fn full(degree: usize) -> Self {
        Self::new(degree, SubgroupKind::Full).expect("S_k is always normal")
    }

    pub fn alternating(degree: usize) -> Self {
        Self::new(degree, SubgroupKind::Alternating).expect("A_k is always normal")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == SubgroupKind::Trivial
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        if sigma.degree() != self.degree {
            return false;
        }
        match self.kind {
            SubgroupKind::Trivial => sigma.is_identity(),
            SubgroupKind::Klein4 => sigma.is_identity() || sigma.cycle_type() == [2, 2],
            SubgroupKind::Alternating => sigma.parity() == Parity::Even,
            SubgroupKind::Full => true,
        }
    }

    /// Containment for groups of the same degree (the normal subgroups of `S_k`
    /// form a chain).
    pub fn is_subgroup_of(&self, other: &NormalSubgroupSk) -> bool {
        self.degree == other.degree && self.kind <= other.kind
    }

    pub fn order(&self) -> usize {
        let fact: usize = (1..=self.degree).product();
        match self.kind {
            SubgroupKind::Trivial => 1,
            SubgroupKind::Klein4 => 4,
            SubgroupKind::Alternating => fact / 2,
            SubgroupKind::Full => fact,
        }
    }

    pub fn elements(&self) -> Vec<Permutation> {
        Permutation::all(self.degree)
            .into_iter()
            .filter(|p| self.contains(p))
            .collect()
    }

    /// Every normal subgroup of `S_degree`, smallest first.
    pub fn all(degree: usize) -> Vec<NormalSubgroupSk> {
        let kinds: &[SubgroupKind] = match degree {
            0 | 1 => &[SubgroupKind::Trivial],
            2 => &[SubgroupKind::Trivial, SubgroupKind::Full],
            4 => &[
                SubgroupKind::Trivial,
                SubgroupKind::Klein4,
                SubgroupKind::Alternating,
                SubgroupKind::Full,
            ],
            _ => &[
                SubgroupKind::Trivial,
                SubgroupKind::Alternating,
                SubgroupKind::Full,
            ],
        };
        kinds
            .iter()
            .map(|&kind| NormalSubgroupSk { degree, kind })
            .collect()
    }

    /// Parses `eps`, `V4`, `A` or `S`.
    pub fn parse(degree: usize, input: &str) -> Result<Self> {
        let kind = match input.trim() {
            "eps" | "ε" | "e" => SubgroupKind::Trivial,
            "V4" => SubgroupKind::Klein4,
            "A" => SubgroupKind::Alternating,
            "S" => SubgroupKind::Full,
            other => {
                return Err(Error::parse(
                    input,
                    0,
                    format!("unknown subgroup literal {other:?}"),
                ))
            }
        };
        NormalSubgroupSk::new(degree, kind).map_err(|e| Error::parse(input, 0, e.to_string()))
    }
}

impl fmt::Display for NormalSubgroupSk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.literal())
    }
}

/// Normal closure of `σ` in `S_k`, `k = deg σ`.
pub fn normal_closure_sk(sigma: &Permutation) -> NormalSubgroupSk {
    let k = sigma.degree();
    let kind = if sigma.is_identity() {
        SubgroupKind::Trivial
    } else if sigma.parity() == Parity::Odd {
        SubgroupKind::Full
    } else if k == 4 && sigma.cycle_type() == [2, 2] {
        SubgroupKind::Klein4
    } else {
        SubgroupKind::Alternating
    };
    NormalSubgroupSk::new(k, kind).expect("closure kinds are valid for their degree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductForm {
    Product(NormalSubgroupSk, NormalSubgroupSk),
    ParityDiagonal,
}

/// A normal subgroup of `S_i × S_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalSubgroupProduct {
    left_degree: usize,
    right_degree: usize,
    form: ProductForm,
}

impl NormalSubgroupProduct {
    pub fn product(left: NormalSubgroupSk, right: NormalSubgroupSk) -> Self {
        NormalSubgroupProduct {
            left_degree: left.degree(),
            right_degree: right.degree(),
            form: ProductForm::Product(left, right),
        }
    }

    pub fn trivial(i: usize, k: usize) -> Self {
        Self::product(NormalSubgroupSk::trivial(i), NormalSubgroupSk::trivial(k))
    }

    /// Pairs of permutations with equal parity; needs `i, k ≥ 2`.
    pub fn parity_diagonal(i: usize, k: usize) -> Result<Self> {
        if i < 2 || k < 2 {
            return Err(Error::InvalidElement(format!(
                "the parity diagonal of S_{i} x S_{k} needs both degrees at least 2"
            )));
        }
        Ok(NormalSubgroupProduct {
            left_degree: i,
            right_degree: k,
            form: ProductForm::ParityDiagonal,
        })
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.left_degree, self.right_degree)
    }

    pub fn form(&self) -> ProductForm {
        self.form
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.form, ProductForm::Product(a, b) if a.is_trivial() && b.is_trivial())
    }

    pub fn contains(&self, left: &Permutation, right: &Permutation) -> bool {
        if left.degree() != self.left_degree || right.degree() != self.right_degree {
            return false;
        }
        match self.form {
            ProductForm::Product(a, b) => a.contains(left) && b.contains(right),
            ProductForm::ParityDiagonal => left.parity() == right.parity(),
        }
    }

    /// `π_1(N)`.
    pub fn left_projection(&self) -> NormalSubgroupSk {
        match self.form {
            ProductForm::Product(a, _) => a,
            ProductForm::ParityDiagonal => NormalSubgroupSk::full(self.left_degree),
        }
    }

    /// `π_2(N)`.
    pub fn right_projection(&self) -> NormalSubgroupSk {
        match self.form {
            ProductForm::Product(_, b) => b,
            ProductForm::ParityDiagonal => NormalSubgroupSk::full(self.right_degree),
        }
    }

    /// When `N = ε × N'`, returns `N'`.
    pub fn right_factor_if_left_trivial(&self) -> Option<NormalSubgroupSk> {
        match self.form {
            ProductForm::Product(a, b) if a.is_trivial() => Some(b),
            _ => None,
        }
    }

    /// When `N = N' × ε`, returns `N'`.
    pub fn left_factor_if_right_trivial(&self) -> Option<NormalSubgroupSk> {
        match self.form {
            ProductForm::Product(a, b) if b.is_trivial() => Some(a),
            _ => None,
        }
    }

    pub fn is_subgroup_of(&self, other: &NormalSubgroupProduct) -> bool {
        if self.degrees() != other.degrees() {
            return false;
        }
        match (self.form, other.form) {
            (ProductForm::Product(a, b), ProductForm::Product(c, d)) => {
                a.is_subgroup_of(&c) && b.is_subgroup_of(&d)
            }
            (ProductForm::Product(a, b), ProductForm::ParityDiagonal) => {
                a.kind() <= SubgroupKind::Alternating && b.kind() <= SubgroupKind::Alternating
            }
            (ProductForm::ParityDiagonal, ProductForm::Product(c, d)) => {
                c.kind() == SubgroupKind::Full && d.kind() == SubgroupKind::Full
            }
            (ProductForm::ParityDiagonal, ProductForm::ParityDiagonal) => true,
        }
    }

    pub fn order(&self) -> usize {
        match self.form {
            ProductForm::Product(a, b) => a.order() * b.order(),
            ProductForm::ParityDiagonal => {
                let fi: usize = (1..=self.left_degree).product();
                let fk: usize = (1..=self.right_degree).product();
                fi * fk / 2
            }
        }
    }

    pub fn elements(&self) -> Vec<(Permutation, Permutation)> {
        let lefts = Permutation::all(self.left_degree);
        let rights = Permutation::all(self.right_degree);
        let mut out = Vec::new();
        for a in &lefts {
            for b in &rights {
                if self.contains(a, b) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Parses `parity` or `N1,N2` with subgroup literals.
    pub fn parse(i: usize, k: usize, input: &str) -> Result<Self> {
        let t = input.trim();
        if t == "parity" {
            return Self::parity_diagonal(i, k).map_err(|e| Error::parse(input, 0, e.to_string()));
        }
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::parse(input, 0, "expected 'parity' or 'N1,N2'"))?;
        Ok(Self::product(
            NormalSubgroupSk::parse(i, a)?,
            NormalSubgroupSk::parse(k, b)?,
        ))
    }
}

impl fmt::Display for NormalSubgroupProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            ProductForm::Product(a, b) => write!(f, "{a},{b}"),
            ProductForm::ParityDiagonal => f.write_str("parity"),
        }
    }
}

/// Normal closure of `(σ1, σ2)` in `S_i × S_k`.
///
/// Both odd gives the parity diagonal; otherwise the closure splits as the
/// product of the two closures.
pub fn normal_closure_product(sigma1: &Permutation, sigma2: &Permutation) -> NormalSubgroupProduct {
    let both_odd = sigma1.parity() == Parity::Odd && sigma2.parity() == Parity::Odd;
    if both_odd {
        NormalSubgroupProduct::parity_diagonal(sigma1.degree(), sigma2.degree())
            .expect("odd permutations have degree at least 2")
    } else {
        NormalSubgroupProduct::product(normal_closure_sk(sigma1), normal_closure_sk(sigma2))
    }
}

/// Every normal subgroup of `S_i × S_k`: all products plus the parity diagonal
/// when `i, k ≥ 2`.
pub fn all_normal_subgroups_product(i: usize, k: usize) -> Result<Vec<NormalSubgroupProduct>> {
    let biggest = i.max(k);
    if biggest > PRODUCT_DEGREE_CAP {
        return Err(Error::CapExceeded {
            what: format!("degree of S_{i} x S_{k}"),
            size: biggest,
            cap: PRODUCT_DEGREE_CAP,
        });
    }
    let mut out = Vec::new();
    for a in NormalSubgroupSk::all(i) {
        for b in NormalSubgroupSk::all(k) {
            out.push(NormalSubgroupProduct::product(a, b));
        }
    }
    if i >= 2 && k >= 2 {
        out.push(NormalSubgroupProduct::parity_diagonal(i, k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_group::{normal_closure, GroupElement};
    use std::collections::BTreeSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            normal_closure_sk(&Permutation::identity(3)).kind(),
            SubgroupKind::Trivial
        );
        assert_eq!(
            normal_closure_sk(&p("(1 2)(3 4)", 4)).kind(),
            SubgroupKind::Klein4
        );
        assert_eq!(
            normal_closure_sk(&p("(1 2 3)", 3)).kind(),
            SubgroupKind::Alternating
        );
        assert_eq!(normal_closure_sk(&p("(1 2)", 3)).kind(), SubgroupKind::Full);
    }

    #[test]
    fn closure_sk_matches_bfs() {
        for k in 1..=4 {
            let all = Permutation::all(k);
            let id = Permutation::identity(k);
            for sigma in &all {
                let bfs = normal_closure(&all, &id, std::slice::from_ref(sigma));
                let classified: BTreeSet<Permutation> =
                    normal_closure_sk(sigma).elements().into_iter().collect();
                assert_eq!(bfs, classified, "sigma = {sigma}");
            }
        }
    }

    #[test]
    fn product_closure_examples() {
        let id2 = Permutation::identity(2);
        assert_eq!(
            normal_closure_product(&id2, &id2),
            NormalSubgroupProduct::trivial(2, 2)
        );
        let s = p("(1 2)", 2);
        let diag = normal_closure_product(&s, &s);
        assert_eq!(diag.form(), ProductForm::ParityDiagonal);
        assert_eq!(diag.order(), 2);
        let n = normal_closure_product(&p("(1 2 3)", 3), &p("(1 2)", 3));
        assert_eq!(
            n,
            NormalSubgroupProduct::product(
                NormalSubgroupSk::alternating(3),
                NormalSubgroupSk::full(3)
            )
        );
    }

    #[test]
    fn all_product_counts() {
        assert_eq!(all_normal_subgroups_product(2, 2).unwrap().len(), 5);
        assert_eq!(all_normal_subgroups_product(1, 3).unwrap().len(), 3);
        assert_eq!(all_normal_subgroups_product(3, 4).unwrap().len(), 13);
        assert!(all_normal_subgroups_product(6, 2).is_err());
    }

    #[test]
    fn parity_diagonal_structure() {
        for (i, k) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
            let diag = NormalSubgroupProduct::parity_diagonal(i, k).unwrap();
            let alt = NormalSubgroupProduct::product(
                NormalSubgroupSk::alternating(i),
                NormalSubgroupSk::alternating(k),
            );
            assert!(alt.is_subgroup_of(&diag));
            let fi: usize = (1..=i).product();
            let fk: usize = (1..=k).product();
            assert_eq!(diag.elements().len() * 2, fi * fk);
        }
        assert!(NormalSubgroupProduct::parity_diagonal(1, 3).is_err());
    }

    #[test]
    fn containment_agrees_with_element_sets() {
        for (i, k) in [(2, 2), (2, 3), (3, 4)] {
            let all = all_normal_subgroups_product(i, k).unwrap();
            for a in &all {
                let ea: BTreeSet<_> = a.elements().into_iter().collect();
                for b in &all {
                    let eb: BTreeSet<_> = b.elements().into_iter().collect();
                    assert_eq!(a.is_subgroup_of(b), ea.is_subset(&eb), "{a} <= {b}");
                }
            }
        }
    }

    #[test]
    fn literals() {
        assert_eq!(NormalSubgroupSk::parse(4, "V4").unwrap().order(), 4);
        assert!(NormalSubgroupSk::parse(3, "V4").is_err());
        assert_eq!(NormalSubgroupSk::parse(2, "A").unwrap().to_string(), "eps");
        let n = NormalSubgroupProduct::parse(3, 2, "A,S").unwrap();
        assert_eq!(n.to_string(), "A,S");
        assert_eq!(
            NormalSubgroupProduct::parse(2, 2, "parity").unwrap().form(),
            ProductForm::ParityDiagonal
        );
    }

    #[test]
    fn pair_conjugation_is_componentwise() {
        let x = (p("(1 2)", 3), p("(1 2 3)", 3));
        let g = (p("(2 3)", 3), p("(1 2)", 3));
        let c = x.conj(&g);
        assert_eq!(c.0, x.0.conjugate_by(&g.0));
        assert_eq!(c.1, x.1.conjugate_by(&g.1));
    }
}
