use congrkit::matrix::{principal_fn, CongruenceFn, FnVariant, Matrix, MatrixFacts};
use congrkit::oracle::{is_congruence, CongruencePartition};
use congrkit::verify::Selection;
use congrkit::MatrixFamily;

fn m(s: &str) -> Matrix {
    Matrix::parse(s, None).unwrap()
}

#[test]
fn scalar_generators_give_scalar_chains() {
    let c = principal_fn(&Matrix::identity(3, 2), &Matrix::scalar(3, 2, 2)).unwrap();
    let FnVariant::Params { mu, chain, .. } = c.variant() else {
        panic!("expected parameters");
    };
    assert_eq!(*mu, 0);
    assert_eq!(chain.iter().map(|g| g.order()).collect::<Vec<_>>(), [2, 2]);
    let table = "F2@GF(3)".parse::<MatrixFamily>().unwrap().table().unwrap();
    let oracle = table
        .closure_of(&Matrix::identity(3, 2), &Matrix::scalar(3, 2, 2))
        .unwrap();
    let facts: Vec<MatrixFacts> = table
        .elements()
        .iter()
        .map(|a| MatrixFacts::of(*a))
        .collect();
    assert_eq!(
        oracle,
        CongruencePartition::from_equivalence(facts.len(), |x, y| {
            c.related(&facts[x].matrix, &facts[y].matrix).unwrap()
        })
    );
}

#[test]
fn same_rank_without_h_relation_collapses_the_ideal() {
    let c = principal_fn(&m("1,0;0,0@GF(2)"), &m("0,1;0,0@GF(2)")).unwrap();
    assert!(matches!(c.variant(), FnVariant::Params { mu: 2, .. }));
    assert!(c.related(&m("1,1;1,1@GF(2)"), &Matrix::zero(2, 2)).unwrap());
    assert!(!c
        .related(&Matrix::identity(2, 2), &m("0,1;1,0@GF(2)"))
        .unwrap());
}

#[test]
fn every_parameter_tuple_is_a_congruence() {
    for fam in ["F2@GF(2)", "F2@GF(3)", "F1@GF(5)"] {
        let family: MatrixFamily = fam.parse().unwrap();
        let table = family.table().unwrap();
        let facts: Vec<MatrixFacts> = table
            .elements()
            .iter()
            .map(|a| MatrixFacts::of(*a))
            .collect();
        let tuples = CongruenceFn::all(family).unwrap();
        let mut relations = std::collections::BTreeSet::new();
        for c in &tuples {
            let related =
                |x: usize, y: usize| c.related(&facts[x].matrix, &facts[y].matrix).unwrap();
            let p = CongruencePartition::from_equivalence(facts.len(), related);
            assert!(
                p.first_disagreement(related).is_none(),
                "{fam} {c}: not an equivalence"
            );
            assert!(is_congruence(table.table(), &p), "{fam} {c}");
            relations.insert(p);
        }
        assert_eq!(
            relations.len(),
            tuples.len(),
            "{fam}: tuples are not pairwise distinct"
        );
    }
}

/// `F_3` over GF(2) is too large for exhaustive axiom checks, so compatibility
/// is tested on random triples.
#[test]
fn parameter_tuples_on_f3_are_compatible_on_samples() {
    let family: MatrixFamily = "F3@GF(2)".parse().unwrap();
    let els = Matrix::all(2, 3);
    let triples = Selection::Sample {
        count: 3000,
        seed: 5,
    }
    .pairs(els.len());
    let thirds = Selection::Sample {
        count: 3000,
        seed: 6,
    }
    .pairs(els.len());
    for c in CongruenceFn::all(family).unwrap() {
        for (&(a, b), &(s, _)) in triples.iter().zip(&thirds) {
            let (x, y, z) = (els[a], els[b], els[s]);
            if c.related(&x, &y).unwrap() {
                assert!(
                    c.related(&z.mul(&x), &z.mul(&y)).unwrap(),
                    "{c}: left by {z}"
                );
                assert!(
                    c.related(&x.mul(&z), &y.mul(&z)).unwrap(),
                    "{c}: right by {z}"
                );
                assert!(c.related(&y, &x).unwrap());
            }
        }
    }
}

#[test]
fn json_parameters_round_trip() {
    let family: MatrixFamily = "F2@GF(3)".parse().unwrap();
    for c in CongruenceFn::all(family).unwrap() {
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let back = CongruenceFn::from_json(family, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
