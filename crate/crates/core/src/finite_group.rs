//! Explicit finite groups given by their elements.
//!
//! These routines compute subgroups by breadth-first closure and make no use
//! of any classification; they are the independent check on the classified
//! forms in [`crate::group`] and the workhorse for the small linear groups in
//! [`crate::matrix`].

use std::collections::BTreeSet;
use std::hash::Hash;

use crate::perm::Permutation;

pub trait GroupElement: Clone + Ord + Hash {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;

    /// `g⁻¹ x g`.
    fn conj(&self, g: &Self) -> Self {
        g.inv().mul(self).mul(g)
    }
}

impl GroupElement for Permutation {
    fn mul(&self, other: &Self) -> Self {
        self.then(other)
    }

    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl<A: GroupElement, B: GroupElement> GroupElement for (A, B) {
    fn mul(&self, other: &Self) -> Self {
        (self.0.mul(&other.0), self.1.mul(&other.1))
    }

    fn inv(&self) -> Self {
        (self.0.inv(), self.1.inv())
    }
}

/// Subgroup generated by `gens` inside a finite group.
pub fn generated_subgroup<T: GroupElement>(identity: &T, gens: &[T]) -> BTreeSet<T> {
    let mut out = BTreeSet::new();
    out.insert(identity.clone());
    let mut frontier = vec![identity.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if out.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    out
}

pub fn conjugacy_class<T: GroupElement>(ambient: &[T], x: &T) -> BTreeSet<T> {
    ambient.iter().map(|g| x.conj(g)).collect()
}

/// Smallest normal subgroup of `ambient` containing every element of `gens`.
pub fn normal_closure<T: GroupElement>(ambient: &[T], identity: &T, gens: &[T]) -> BTreeSet<T> {
    let mut conjugates = BTreeSet::new();
    for x in gens {
        conjugates.extend(conjugacy_class(ambient, x));
    }
    let conjugates: Vec<T> = conjugates.into_iter().collect();
    generated_subgroup(identity, &conjugates)
}

pub fn is_normal<T: GroupElement>(ambient: &[T], subgroup: &BTreeSet<T>) -> bool {
    subgroup
        .iter()
        .all(|x| ambient.iter().all(|g| subgroup.contains(&x.conj(g))))
}

pub fn is_subgroup<T: GroupElement>(set: &BTreeSet<T>) -> bool {
    !set.is_empty()
        && set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&a.mul(&b.inv()))))
}

/// Every normal subgroup of `ambient`, found by closing the normal closures
/// of single elements under joins. Sorted by order, then elementwise.
pub fn all_normal_subgroups<T: GroupElement>(ambient: &[T], identity: &T) -> Vec<BTreeSet<T>> {
    let mut seen_classes: BTreeSet<T> = BTreeSet::new();
    let mut principal: BTreeSet<BTreeSet<T>> = BTreeSet::new();
    for x in ambient {
        if seen_classes.contains(x) {
            continue;
        }
        seen_classes.extend(conjugacy_class(ambient, x));
        principal.insert(normal_closure(ambient, identity, std::slice::from_ref(x)));
    }
    let principal: Vec<BTreeSet<T>> = principal.into_iter().collect();
    let mut all: BTreeSet<BTreeSet<T>> = principal.iter().cloned().collect();
    let mut frontier: Vec<BTreeSet<T>> = principal.clone();
    while let Some(n) = frontier.pop() {
        for p in &principal {
            if p.is_subset(&n) {
                continue;
            }
            let gens: Vec<T> = n.iter().chain(p.iter()).cloned().collect();
            let join = generated_subgroup(identity, &gens);
            if all.insert(join.clone()) {
                frontier.push(join);
            }
        }
    }
    let mut out: Vec<BTreeSet<T>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_normal_subgroups() {
        let s3 = Permutation::all(3);
        let id = Permutation::identity(3);
        let normals = all_normal_subgroups(&s3, &id);
        let orders: Vec<usize> = normals.iter().map(BTreeSet::len).collect();
        assert_eq!(orders, vec![1, 3, 6]);
        for n in &normals {
            assert!(is_subgroup(n));
            assert!(is_normal(&s3, n));
        }
    }

    #[test]
    fn s4_normal_subgroups() {
        let s4 = Permutation::all(4);
        let id = Permutation::identity(4);
        let orders: Vec<usize> = all_normal_subgroups(&s4, &id)
            .iter()
            .map(BTreeSet::len)
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }
}
