//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see
//! the lines; the test fails if any criterion fails.
//!
//! Pinned tolerances: every sweep must report zero mismatches, every count
//! must match exactly, and the property criterion must finish within
//! `PROPERTY_BUDGET`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use congrkit::finite_group::{all_normal_subgroups, conjugacy_class, normal_closure};
use congrkit::group::{all_normal_subgroups_product, normal_closure_product};
use congrkit::product::enumerate::DEFAULT_LANDSCAPE_CAP;
use congrkit::verify::{
    check_chain, check_fn_lattice, check_landscapes, sweep_fmfn, sweep_fn, sweep_product, sweep_qn,
    LandscapeReport, Selection,
};
use congrkit::{Execution, MonoidFamily, Permutation};

const SAMPLE_SEED: u64 = 0x5eed;
const T3T2_SAMPLES: usize = 500;
const F2F2_SAMPLES: usize = 5000;
const PROPERTY_BUDGET: Duration = Duration::from_secs(120);

struct Outcome {
    passed: bool,
    detail: String,
}

fn line(number: u32, title: &str, outcome: &Outcome, elapsed: Duration) -> String {
    format!(
        "criterion {number} {} {title} ({}; {:.1}s)",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64()
    )
}

fn principal_qn_sweeps() -> Outcome {
    let mut detail = Vec::new();
    let mut passed = true;
    for fam in ["T2", "T3", "PT2", "I2", "I3"] {
        let r = sweep_qn(fam.parse().unwrap(), Selection::All, Execution::Parallel).unwrap();
        passed &= r.passed();
        detail.push(format!(
            "{fam}: {}/{} mismatches",
            r.mismatch_count, r.generators
        ));
        if !r.passed() {
            eprintln!("{r}");
        }
    }
    Outcome {
        passed,
        detail: detail.join(", "),
    }
}

fn chain_counts() -> Outcome {
    let mut detail = Vec::new();
    let mut passed = true;
    for (fam, expected) in [("T2", 4), ("T3", 7), ("PT3", 7), ("I3", 7)] {
        let r = check_chain(fam.parse::<MonoidFamily>().unwrap()).unwrap();
        let ok = r.passed() && r.oracle_count == expected;
        passed &= ok;
        detail.push(format!(
            "{fam}: {} congruences, chain {}, ordered {}",
            r.oracle_count, r.chain_matches, r.totally_ordered
        ));
    }
    Outcome {
        passed,
        detail: detail.join(", "),
    }
}

fn product_sweeps() -> Outcome {
    let runs = [
        ("T2xT2", Selection::All, 256),
        ("I2xI2", Selection::All, 2401),
        ("PT2xT2", Selection::All, 1296),
        (
            "T3xT2",
            Selection::Sample {
                count: T3T2_SAMPLES,
                seed: SAMPLE_SEED,
            },
            T3T2_SAMPLES,
        ),
    ];
    let mut detail = Vec::new();
    let mut passed = true;
    for (fam, selection, expected) in runs {
        let r = sweep_product(fam.parse().unwrap(), selection, Execution::Parallel).unwrap();
        let ok = r.passed() && r.generators >= expected;
        passed &= ok;
        detail.push(format!(
            "{fam}: {}/{} mismatches",
            r.mismatch_count, r.generators
        ));
        if !r.passed() {
            eprintln!("{r}");
        }
    }
    Outcome {
        passed,
        detail: detail.join(", "),
    }
}

fn landscape_reports() -> Vec<LandscapeReport> {
    ["T2xT2", "I2xT2"]
        .iter()
        .map(|fam| {
            check_landscapes(
                fam.parse().unwrap(),
                DEFAULT_LANDSCAPE_CAP,
                Execution::Parallel,
            )
            .unwrap()
        })
        .collect()
}

fn landscapes(reports: &[LandscapeReport]) -> Outcome {
    let passed = reports
        .iter()
        .all(|r| r.all_valid() && r.all_congruences() && r.count_matches() && r.principal_agrees());
    for r in reports {
        for m in r
            .invalid
            .iter()
            .chain(&r.not_congruences)
            .chain(&r.principal_mismatches)
        {
            eprintln!("{}: {m}", r.family);
        }
    }
    Outcome {
        passed,
        detail: reports
            .iter()
            .map(|r| {
                format!(
                    "{}: {} landscapes vs {} oracle congruences, {} invalid, {} not congruences, {} principal mismatches",
                    r.family,
                    r.enumerated,
                    r.oracle_count,
                    r.invalid.len(),
                    r.not_congruences.len(),
                    r.principal_mismatches.len()
                )
            })
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn normal_subgroups() -> Outcome {
    let mut detail = Vec::new();
    let mut passed = true;
    for (i, k, expected) in [(2, 2, 5), (3, 3, 10), (3, 4, 13)] {
        let ambient: Vec<(Permutation, Permutation)> = Permutation::all(i)
            .into_iter()
            .flat_map(|a| Permutation::all(k).into_iter().map(move |b| (a.clone(), b)))
            .collect();
        let identity = (Permutation::identity(i), Permutation::identity(k));
        let exhaustive: BTreeSet<BTreeSet<_>> = all_normal_subgroups(&ambient, &identity)
            .into_iter()
            .collect();
        let closed: BTreeSet<BTreeSet<_>> = all_normal_subgroups_product(i, k)
            .unwrap()
            .iter()
            .map(|g| g.elements().into_iter().collect())
            .collect();
        let ok = exhaustive == closed && closed.len() == expected;
        passed &= ok;
        detail.push(format!(
            "S{i}xS{k}: {} of {}",
            closed.len(),
            exhaustive.len()
        ));
    }
    // Normal closures depend only on the conjugacy classes of the generators,
    // so one representative pair per class pair covers every pair.
    let mut pairs_checked = 0;
    for i in 1..=4 {
        for k in 1..=4 {
            let left = Permutation::all(i);
            let right = Permutation::all(k);
            let ambient: Vec<(Permutation, Permutation)> = left
                .iter()
                .flat_map(|a| right.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            let identity = (Permutation::identity(i), Permutation::identity(k));
            for a in class_representatives(&left) {
                for b in class_representatives(&right) {
                    let bfs = normal_closure(&ambient, &identity, &[(a.clone(), b.clone())]);
                    let closed: BTreeSet<_> = normal_closure_product(&a, &b)
                        .elements()
                        .into_iter()
                        .collect();
                    passed &= bfs == closed;
                    pairs_checked += 1;
                }
            }
        }
    }
    detail.push(format!(
        "{pairs_checked} class pairs of degree <= 4 against BFS"
    ));
    Outcome {
        passed,
        detail: detail.join(", "),
    }
}

fn class_representatives(group: &[Permutation]) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for g in group {
        if seen.insert(g.clone()) {
            seen.extend(conjugacy_class(group, g));
            reps.push(g.clone());
        }
    }
    reps
}

fn matrix_monoid() -> Outcome {
    let mut detail = Vec::new();
    let mut passed = true;
    for fam in ["F2@GF(2)", "F2@GF(3)"] {
        let family = fam.parse().unwrap();
        let sweep = sweep_fn(family, Selection::All, Execution::Parallel).unwrap();
        let lattice = check_fn_lattice(family).unwrap();
        passed &= sweep.passed() && lattice.passed();
        if !sweep.passed() {
            eprintln!("{sweep}");
        }
        detail.push(format!(
            "{fam}: {}/{} mismatches, {} tuples, {} relations vs {} oracle congruences",
            sweep.mismatch_count,
            sweep.generators,
            lattice.tuples,
            lattice.distinct,
            lattice.oracle_count
        ));
    }
    Outcome {
        passed,
        detail: detail.join(", "),
    }
}

fn matrix_product() -> Outcome {
    let r = sweep_fmfn(
        "F2xF2@GF(2)".parse().unwrap(),
        Selection::Sample {
            count: F2F2_SAMPLES,
            seed: SAMPLE_SEED,
        },
        Execution::Parallel,
    )
    .unwrap();
    if !r.passed() {
        eprintln!("{r}");
    }
    Outcome {
        passed: r.passed() && r.generators >= F2F2_SAMPLES,
        detail: format!(
            "F2xF2@GF(2): {}/{} mismatches",
            r.mismatch_count, r.generators
        ),
    }
}

fn properties() -> (Outcome, Duration) {
    let start = Instant::now();
    let checks: [(&str, Result<(), String>); 6] = [
        ("action laws", common::check_action_laws(256)),
        (
            "ordering independence",
            common::check_ordering_independence(256),
        ),
        ("slice monotonicity", common::check_slice_monotonicity(48)),
        (
            "hyperplane equivalence",
            common::check_hyperplane_equivalence(),
        ),
        (
            "reduction invariance",
            common::check_reduction_invariance(128),
        ),
        ("closure laws", common::check_closure_laws(128)),
    ];
    let elapsed = start.elapsed();
    let failures: Vec<String> = checks
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    for f in &failures {
        eprintln!("{f}");
    }
    (
        Outcome {
            passed: failures.is_empty() && elapsed < PROPERTY_BUDGET,
            detail: format!(
                "{} of {} suites, budget {}s",
                checks.len() - failures.len(),
                checks.len(),
                PROPERTY_BUDGET.as_secs()
            ),
        },
        elapsed,
    )
}

fn round_trips(reports: &[LandscapeReport]) -> Outcome {
    for r in reports {
        for m in &r.round_trip_failures {
            eprintln!("{}: {m}", r.family);
        }
    }
    Outcome {
        passed: reports.iter().all(LandscapeReport::round_trips),
        detail: format!(
            "{} landscapes, {} failures",
            reports.iter().map(|r| r.enumerated).sum::<usize>(),
            reports
                .iter()
                .map(|r| r.round_trip_failures.len())
                .sum::<usize>()
        ),
    }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f();
    (o, start.elapsed())
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut all = true;
    let mut record = |n: u32, title: &str, (o, t): (Outcome, Duration)| {
        all &= o.passed;
        let l = line(n, title, &o, t);
        println!("{l}");
        lines.push(l);
    };

    record(
        1,
        "principal congruences on single monoids",
        timed(principal_qn_sweeps),
    );
    record(
        2,
        "congruence chains against the oracle lattice",
        timed(chain_counts),
    );
    record(
        3,
        "principal congruences on products",
        timed(product_sweeps),
    );
    let start = Instant::now();
    let reports = landscape_reports();
    let landscape_time = start.elapsed();
    record(4, "landscapes", (landscapes(&reports), landscape_time));
    record(5, "normal subgroups of S_i x S_k", timed(normal_subgroups));
    record(6, "matrix monoid congruences", timed(matrix_monoid));
    record(
        7,
        "principal congruences on F2 x F2 over GF(2)",
        timed(matrix_product),
    );
    record(8, "property suites", properties());
    record(
        9,
        "landscape render round trips",
        timed(|| round_trips(&reports)),
    );

    assert!(all, "failing criteria:\n{}", lines.join("\n"));
}
