//! Principal congruences on `F_m × F_n` over fields with non-trivial scalars,
//! where the scalar cases of the dispatch are reachable.

use congrkit::matrix::{principal_fmfn, MatrixPair};
use congrkit::verify::{sweep_fmfn, Selection};
use congrkit::Execution;

fn sweep(family: &str, selection: Selection) {
    let r = sweep_fmfn(family.parse().unwrap(), selection, Execution::Parallel).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn f1_f1_over_gf3_all_pairs() {
    sweep("F1xF1@GF(3)", Selection::All);
}

#[test]
fn f1_f1_over_gf5_all_pairs() {
    sweep("F1xF1@GF(5)", Selection::All);
}

#[test]
fn f1_f2_over_gf3_sampled() {
    sweep(
        "F1xF2@GF(3)",
        Selection::Sample {
            count: 1500,
            seed: 11,
        },
    );
}

#[test]
fn f2_f1_over_gf3_sampled() {
    sweep(
        "F2xF1@GF(3)",
        Selection::Sample {
            count: 1500,
            seed: 12,
        },
    );
}

#[test]
fn f1_f2_over_gf2_all_pairs() {
    sweep("F1xF2@GF(2)", Selection::All);
}

#[test]
#[ignore = "full sweep of 65536 generator pairs; run with --ignored"]
fn f2_f2_over_gf2_all_pairs() {
    sweep("F2xF2@GF(2)", Selection::All);
}

#[test]
fn every_case_tag_is_reachable_over_gf3() {
    // F_1 has no H-related pairs beyond scalar multiples, so this needs F_2 on
    // both sides; the table is too large for the oracle, so only dispatch is
    // checked here.
    let fam: congrkit::MatrixProductFamily = "F2xF2@GF(3)".parse().unwrap();
    let els = fam.elements(10_000).unwrap();
    let mut tags = std::collections::BTreeSet::new();
    for (a, b) in (Selection::Sample {
        count: 4000,
        seed: 3,
    })
    .pairs(els.len())
    {
        tags.insert(principal_fmfn(&els[a], &els[b]).unwrap().tag());
    }
    let scalar = MatrixPair::parse("1,0;0,1|1,0;0,1@GF(3)", None).unwrap();
    let scaled = MatrixPair::parse("2,0;0,2|2,0;0,2@GF(3)", None).unwrap();
    tags.insert(principal_fmfn(&scalar, &scaled).unwrap().tag());
    tags.insert(principal_fmfn(&scalar, &scalar).unwrap().tag());
    let flipped = MatrixPair::parse("0,1;1,0|1,0;0,1@GF(3)", None).unwrap();
    tags.insert(principal_fmfn(&scalar, &flipped).unwrap().tag());
    let both = MatrixPair::parse("0,1;1,0|0,1;1,0@GF(3)", None).unwrap();
    tags.insert(principal_fmfn(&scalar, &both).unwrap().tag());
    for tag in [
        "identity",
        "scalar-pair",
        "rees",
        "h-right",
        "h-left",
        "scalar-h",
        "h-scalar",
        "h-both",
    ] {
        assert!(tags.contains(tag), "{tag} never selected; saw {tags:?}");
    }
}

#[test]
fn scalar_pair_on_gf3_lines() {
    let x = MatrixPair::parse("1|1@GF(3)", None).unwrap();
    let y = MatrixPair::parse("2|2@GF(3)", None).unwrap();
    let d = principal_fmfn(&x, &y).unwrap();
    assert_eq!(d.tag(), "scalar-pair");
    let a = MatrixPair::parse("1|2@GF(3)", None).unwrap();
    let b = MatrixPair::parse("2|1@GF(3)", None).unwrap();
    let c = MatrixPair::parse("2|2@GF(3)", None).unwrap();
    assert!(d.related(&a, &b).unwrap());
    assert!(!d.related(&a, &c).unwrap());
}
