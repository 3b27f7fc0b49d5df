//! Property checks shared by the proptest suite and the acceptance target.
//! Each check drives a deterministic proptest runner and reports the first
//! failing case.

#![allow(dead_code)]

use std::sync::OnceLock;

use congrkit::matrix::{associated_normal_subgroup, Matrix, PairGroup};
use congrkit::monoid::enumerate_elements;
use congrkit::oracle::{congruence_closure, CongruencePartition, IndexedMonoid};
use congrkit::{
    MatrixPair, MatrixProductFamily, MonoidFamily, NormalSubgroupSk, Permutation, ProductElement,
    ProductFamily, Transformation,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn report<V: std::fmt::Debug>(r: Result<(), TestError<V>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn elements(family: &str) -> Vec<Transformation> {
    enumerate_elements(family.parse().unwrap(), 4).unwrap()
}

fn positive_rank(family: &str) -> Vec<Transformation> {
    elements(family)
        .into_iter()
        .filter(|f| f.rank() > 0)
        .collect()
}

/// A positive-rank element of `T_3`, `PT_3`, `I_3` or `T_4` with two
/// permutations of its rank.
fn element_and_perms() -> impl Strategy<Value = (Transformation, Permutation, Permutation)> {
    prop_oneof![Just("T3"), Just("PT3"), Just("I3"), Just("T4")]
        .prop_flat_map(|fam| prop::sample::select(positive_rank(fam)))
        .prop_flat_map(|f| {
            let perms = Permutation::all(f.rank());
            (
                Just(f),
                prop::sample::select(perms.clone()),
                prop::sample::select(perms),
            )
        })
}

/// Right action, H-preservation and uniqueness of the H-class witness.
pub fn check_action_laws(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&element_and_perms(), |(f, a, b)| {
        let fa = f.act(&a).unwrap();
        prop_assert_eq!(fa.act(&b).unwrap(), f.act(&a.then(&b)).unwrap());
        prop_assert_eq!(f.act(&Permutation::identity(f.rank())).unwrap(), f.clone());
        prop_assert!(fa.h_related(&f));
        prop_assert_eq!(f.hclass_witness(&fa), Some(a.clone()));
        if a != b {
            prop_assert_ne!(fa, f.act(&b).unwrap());
        }
        Ok(())
    }))
}

/// Membership of an H-class witness in a normal subgroup does not depend on
/// how the image is listed.
pub fn check_ordering_independence(cases: u32) -> Result<(), String> {
    let strategy = element_and_perms().prop_flat_map(|(f, a, _)| {
        let image = f.image();
        let groups = NormalSubgroupSk::all(f.rank());
        (
            Just(f),
            Just(a),
            Just(image).prop_shuffle(),
            prop::sample::select(groups),
        )
    });
    report(runner(cases).run(&strategy, |(f, a, order, group)| {
        let g = f.act(&a).unwrap();
        let canonical = f.hclass_witness(&g).unwrap();
        let other = f.hclass_witness_with_order(&g, &order).unwrap();
        prop_assert_eq!(group.contains(&canonical), group.contains(&other));
        // Acting through the same listing recovers `g`.
        prop_assert_eq!(f.act_with_order(&other, &order).unwrap(), g);
        Ok(())
    }))
}

struct ProductTable {
    monoid: IndexedMonoid<ProductElement>,
    ranks: Vec<(usize, usize)>,
}

fn product_table(family: &str) -> ProductTable {
    let fam: ProductFamily = family.parse().unwrap();
    let monoid = fam.table(4).unwrap();
    let ranks = monoid
        .elements()
        .iter()
        .map(ProductElement::ranks)
        .collect();
    ProductTable { monoid, ranks }
}

fn t2t2() -> &'static ProductTable {
    static T: OnceLock<ProductTable> = OnceLock::new();
    T.get_or_init(|| product_table("T2xT2"))
}

fn i2t2() -> &'static ProductTable {
    static T: OnceLock<ProductTable> = OnceLock::new();
    T.get_or_init(|| product_table("I2xT2"))
}

struct MatrixTable {
    monoid: IndexedMonoid<MatrixPair>,
    ranks: Vec<(usize, usize)>,
}

fn f2f2() -> &'static MatrixTable {
    static T: OnceLock<MatrixTable> = OnceLock::new();
    T.get_or_init(|| {
        let fam: MatrixProductFamily = "F2xF2@GF(2)".parse().unwrap();
        let monoid = fam.table().unwrap();
        let ranks = monoid.elements().iter().map(MatrixPair::ranks).collect();
        MatrixTable { monoid, ranks }
    })
}

/// `θ_f ⊆ θ_{f'}` whenever `|f'| ≤ |f|`, where `θ_f` relates `g, g'` when
/// `(f, g) θ (f, g')`. Elements are indexed as `left * right_count + right`.
fn slices_monotone(
    theta: &CongruencePartition,
    left_count: usize,
    right_count: usize,
    left_rank: impl Fn(usize) -> usize,
) -> Result<(), TestCaseError> {
    let idx = |l: usize, r: usize| l * right_count + r;
    for f in 0..left_count {
        for f2 in 0..left_count {
            if left_rank(f2) > left_rank(f) {
                continue;
            }
            for g in 0..right_count {
                for g2 in 0..right_count {
                    if theta.same_block(idx(f, g), idx(f, g2)) {
                        prop_assert!(
                            theta.same_block(idx(f2, g), idx(f2, g2)),
                            "slice at {f} relates {g},{g2} but the slice at {f2} does not"
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// Slice monotonicity for principal congruences, computed by the oracle, on
/// `T_2 × T_2`, `I_2 × T_2` and `F_2 × F_2` over GF(2).
pub fn check_slice_monotonicity(cases: u32) -> Result<(), String> {
    let strategy = (
        0..3usize,
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    );
    report(runner(cases).run(&strategy, |(which, a, b)| {
        let (table, ranks, right_count) = match which {
            0 => (t2t2().monoid.table(), &t2t2().ranks, 4),
            1 => (i2t2().monoid.table(), &i2t2().ranks, 4),
            _ => (f2f2().monoid.table(), &f2f2().ranks, 16),
        };
        let n = table.size();
        let theta = congruence_closure(table, &[(a.index(n), b.index(n))]);
        slices_monotone(&theta, n / right_count, right_count, |l| {
            ranks[l * right_count].0
        })
    }))
}

/// Over GF(2) and GF(3) with `n ∈ {2, 3}`, `A` maps every hyperplane onto
/// itself exactly when `A` is a non-zero scalar matrix. Exhaustive.
pub fn check_hyperplane_equivalence() -> Result<(), String> {
    for p in [2u8, 3] {
        for n in [2usize, 3] {
            for a in Matrix::all(p, n) {
                let scalar = (1..p).any(|l| a == Matrix::scalar(p, n, l));
                if a.fixes_all_hyperplanes() != scalar {
                    return Err(format!("{a}: fixes all hyperplanes = {}", !scalar));
                }
            }
        }
    }
    Ok(())
}

fn invertible(p: u8, n: usize) -> Vec<Matrix> {
    Matrix::all(p, n)
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect()
}

/// `g` placed in the top-left corner of an `n × n` zero matrix.
fn embed(g: &Matrix, n: usize) -> Matrix {
    let p = g.characteristic();
    let mut entries = vec![0u8; n * n];
    for r in 0..g.size() {
        for c in 0..g.size() {
            entries[r * n + c] = g.get(r, c);
        }
    }
    Matrix::from_entries(p, n, &entries).unwrap()
}

/// A matrix, a random element of its H-class, and a random invertible pair
/// used to build a second reduction.
fn h_pair(p: u8, n: usize) -> impl Strategy<Value = (Matrix, Matrix, Matrix, Matrix)> {
    prop::sample::select(Matrix::all(p, n)).prop_flat_map(move |k| {
        let rank = k.rank();
        (
            Just(k),
            prop::sample::select(invertible(p, rank)),
            prop::sample::select(invertible(p, n)),
            prop::sample::select(invertible(p, n)),
        )
            .prop_map(move |(k, g, x, y)| {
                let (s1, s2) = k.reduce_to_partial_identity();
                let k2 = s1
                    .inverse()
                    .unwrap()
                    .mul(&embed(&g, n))
                    .mul(&s2.inverse().unwrap());
                (k, k2, x, y)
            })
    })
}

/// The reduced block of `k2` for the reduction of `k` that first moves it to
/// `x k y`.
fn block_via(k: &Matrix, k2: &Matrix, x: &Matrix, y: &Matrix) -> Matrix {
    let (u1, u2) = x.mul(k).mul(y).reduce_to_partial_identity();
    let t1 = u1.mul(x);
    let t2 = y.mul(&u2);
    t1.mul(k2).mul(&t2).leading_block(k.rank()).unwrap()
}

/// `associated_normal_subgroup` gives the same group for any two reductions,
/// over GF(2) and GF(3) with sizes at most 2.
pub fn check_reduction_invariance(cases: u32) -> Result<(), String> {
    let strategy = (prop_oneof![Just(2u8), Just(3u8)], 1..=2usize, 1..=2usize)
        .prop_flat_map(|(p, m, n)| (h_pair(p, m), h_pair(p, n)));
    report(
        runner(cases).run(&strategy, |((k, k2, x, y), (l, l2, u, v))| {
            let h = associated_normal_subgroup(&k, &l, &k2, &l2).unwrap();
            let other =
                PairGroup::normal_closure(&block_via(&k, &k2, &x, &y), &block_via(&l, &l2, &u, &v))
                    .unwrap();
            prop_assert_eq!(h.elements(), other.elements());
            Ok(())
        }),
    )
}

fn t3() -> &'static IndexedMonoid<Transformation> {
    static T: OnceLock<IndexedMonoid<Transformation>> = OnceLock::new();
    T.get_or_init(|| MonoidFamily::t(3).table(4).unwrap())
}

/// The oracle closure is idempotent and monotone in its generating pairs.
pub fn check_closure_laws(cases: u32) -> Result<(), String> {
    let n = t3().size();
    let pairs = || prop::collection::vec((0..n, 0..n), 0..4);
    report(runner(cases).run(&(pairs(), pairs()), |(p1, p2)| {
        let table = t3().table();
        let c1 = congruence_closure(table, &p1);
        prop_assert_eq!(&congruence_closure(table, &c1.pairs()), &c1);
        let both: Vec<(usize, usize)> = p1.iter().chain(&p2).copied().collect();
        let c12 = congruence_closure(table, &both);
        prop_assert!(c1.refines(&c12));
        prop_assert!(congruence_closure(table, &p2).refines(&c12));
        prop_assert!(p1.iter().all(|&(a, b)| c1.same_block(a, b)));
        Ok(())
    }))
}
