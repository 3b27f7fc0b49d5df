//! Sweeps that compare the closed forms with the oracle.
//!
//! Every sweep takes a list of generator pairs, builds the closed-form
//! description of the principal congruence for each, and checks it pointwise
//! against the oracle closure over the whole monoid.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::matrix::{
    principal_fmfn, principal_fn, CongruenceFn, MatrixFacts, MatrixFamily, MatrixProductFamily,
    PairFacts,
};
use crate::monoid::{MonoidFamily, DEFAULT_ENUMERATION_CAP};
use crate::oracle::{
    all_congruences, congruence_closure, is_congruence, CongruencePartition, IndexedMonoid,
    DEFAULT_LATTICE_CAP,
};
use crate::product::enumerate::enumerate_landscapes;
use crate::product::render::{parse, render, Layout};
use crate::product::{principal_product, DlockLandscape, ProductFamily};
use crate::qn::{congruence_chain, principal_qn};

/// At most this many mismatches are kept per report.
pub const MISMATCH_REPORT_LIMIT: usize = 20;

/// Which generator pairs a sweep visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    /// Every ordered pair, including `(x, x)`.
    All,
    /// `count` ordered pairs drawn uniformly with a seeded ChaCha8 stream.
    Sample { count: usize, seed: u64 },
}

impl Selection {
    pub fn pairs(&self, n: usize) -> Vec<(usize, usize)> {
        match *self {
            Selection::All => (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect(),
            Selection::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub label: String,
    pub generators: usize,
    pub mismatch_count: usize,
    /// The first few mismatches, described in words.
    pub mismatches: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} generator pairs, {} mismatches",
            self.label, self.generators, self.mismatch_count
        )?;
        for m in &self.mismatches {
            write!(f, "\n  {m}")?;
        }
        Ok(())
    }
}

/// What a sweep checks for each generator pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Check {
    /// The closed form agrees pointwise with the oracle closure of `(a, b)`.
    #[default]
    Oracle,
    /// The closed form is an equivalence containing `(a, b)` and compatible
    /// with multiplication, checked directly on the table.
    Axioms,
}

fn oracle_mismatch<T: Clone + Eq + std::hash::Hash + fmt::Display, D: fmt::Display>(
    monoid: &IndexedMonoid<T>,
    (a, b): (usize, usize),
    desc: &D,
    related: impl Fn(usize, usize) -> bool,
) -> Option<String> {
    let oracle = congruence_closure(monoid.table(), &[(a, b)]);
    let (x, y) = oracle.first_disagreement(&related)?;
    let classes: Vec<String> = oracle
        .blocks()
        .iter()
        .filter(|b| b.len() > 1)
        .map(|b| {
            let names: Vec<String> = b.iter().map(|&i| monoid.element(i).to_string()).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect();
    Some(format!(
        "generators ({}, {}) [{desc}]: closed form says {} for ({}, {}), the oracle says {}; oracle classes {}",
        monoid.element(a),
        monoid.element(b),
        related(x, y),
        monoid.element(x),
        monoid.element(y),
        oracle.same_block(x, y),
        if classes.is_empty() { "all singletons".to_string() } else { classes.join(" ") },
    ))
}

fn axiom_failure<T: Clone + Eq + std::hash::Hash + fmt::Display, D: fmt::Display>(
    monoid: &IndexedMonoid<T>,
    (a, b): (usize, usize),
    desc: &D,
    related: impl Fn(usize, usize) -> bool,
) -> Option<String> {
    let partition = CongruencePartition::from_equivalence(monoid.size(), &related);
    let failure = if let Some((x, y)) = partition.first_disagreement(&related) {
        format!(
            "not an equivalence at ({}, {})",
            monoid.element(x),
            monoid.element(y)
        )
    } else if !related(a, b) {
        "does not contain its generators".to_string()
    } else if !is_congruence(monoid.table(), &partition) {
        "not compatible with multiplication".to_string()
    } else {
        return None;
    };
    Some(format!(
        "generators ({}, {}) [{desc}]: {failure}",
        monoid.element(a),
        monoid.element(b)
    ))
}

/// Runs `check` on `describe(a, b)` for every generator pair, where
/// `related(d, x, y)` evaluates a description on table indices.
pub fn sweep<T, D>(
    label: impl Into<String>,
    monoid: &IndexedMonoid<T>,
    pairs: &[(usize, usize)],
    exec: Execution,
    check: Check,
    describe: impl Fn(usize, usize) -> Result<D> + Sync + Send,
    related: impl Fn(&D, usize, usize) -> bool + Sync + Send,
) -> Result<SweepReport>
where
    T: Clone + Eq + std::hash::Hash + fmt::Display + Sync,
    D: fmt::Display,
{
    let outcomes = exec.map(pairs, |&pair| -> Result<Option<String>> {
        let desc = describe(pair.0, pair.1)?;
        let rel = |x, y| related(&desc, x, y);
        Ok(match check {
            Check::Oracle => oracle_mismatch(monoid, pair, &desc, rel),
            Check::Axioms => axiom_failure(monoid, pair, &desc, rel),
        })
    });
    let mut mismatches = Vec::new();
    let mut mismatch_count = 0;
    for o in outcomes {
        if let Some(m) = o? {
            mismatch_count += 1;
            if mismatches.len() < MISMATCH_REPORT_LIMIT {
                mismatches.push(m);
            }
        }
    }
    let label = label.into();
    Ok(SweepReport {
        label: match check {
            Check::Oracle => label,
            Check::Axioms => format!("{label} axioms"),
        },
        generators: pairs.len(),
        mismatch_count,
        mismatches,
    })
}

/// Principal congruences on `Q_n`.
pub fn sweep_qn(
    family: MonoidFamily,
    selection: Selection,
    exec: Execution,
) -> Result<SweepReport> {
    check_qn(family, selection, exec, Check::Oracle)
}

pub fn check_qn(
    family: MonoidFamily,
    selection: Selection,
    exec: Execution,
    check: Check,
) -> Result<SweepReport> {
    let monoid = family.table(DEFAULT_ENUMERATION_CAP)?;
    let els = monoid.elements();
    sweep(
        format!("principal {family}"),
        &monoid,
        &selection.pairs(monoid.size()),
        exec,
        check,
        |a, b| principal_qn(&els[a], &els[b]),
        |c, x, y| c.related_unchecked(&els[x], &els[y]),
    )
}

/// Principal congruences on `Q_m × P_n`.
pub fn sweep_product(
    family: ProductFamily,
    selection: Selection,
    exec: Execution,
) -> Result<SweepReport> {
    check_product(family, selection, exec, Check::Oracle)
}

pub fn check_product(
    family: ProductFamily,
    selection: Selection,
    exec: Execution,
    check: Check,
) -> Result<SweepReport> {
    let monoid = family.table(DEFAULT_ENUMERATION_CAP)?;
    let els = monoid.elements();
    sweep(
        format!("principal {family}"),
        &monoid,
        &selection.pairs(monoid.size()),
        exec,
        check,
        |a, b| principal_product(&els[a], &els[b]),
        |d, x, y| d.related_unchecked(&els[x], &els[y]),
    )
}

/// Principal congruences on `F_n`.
pub fn sweep_fn(
    family: MatrixFamily,
    selection: Selection,
    exec: Execution,
) -> Result<SweepReport> {
    check_fn(family, selection, exec, Check::Oracle)
}

pub fn check_fn(
    family: MatrixFamily,
    selection: Selection,
    exec: Execution,
    check: Check,
) -> Result<SweepReport> {
    let monoid = family.table()?;
    let facts: Vec<MatrixFacts> = monoid
        .elements()
        .iter()
        .map(|m| MatrixFacts::of(*m))
        .collect();
    let els = monoid.elements();
    sweep(
        format!("principal {family}"),
        &monoid,
        &selection.pairs(monoid.size()),
        exec,
        check,
        |a, b| principal_fn(&els[a], &els[b]),
        |c, x, y| c.related_facts(&facts[x], &facts[y]),
    )
}

/// Principal congruences on `F_m × F_n`.
pub fn sweep_fmfn(
    family: MatrixProductFamily,
    selection: Selection,
    exec: Execution,
) -> Result<SweepReport> {
    check_fmfn(family, selection, exec, Check::Oracle)
}

pub fn check_fmfn(
    family: MatrixProductFamily,
    selection: Selection,
    exec: Execution,
    check: Check,
) -> Result<SweepReport> {
    let monoid = family.table()?;
    let facts: Vec<PairFacts> = monoid.elements().iter().map(PairFacts::of).collect();
    let els = monoid.elements();
    sweep(
        format!("principal {family}"),
        &monoid,
        &selection.pairs(monoid.size()),
        exec,
        check,
        |a, b| principal_fmfn(&els[a], &els[b]),
        |d, x, y| d.related_facts(&facts[x], &facts[y]),
    )
}

/// The closed-form chain of congruences on `Q_n` against the oracle lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub family: String,
    pub oracle_count: usize,
    pub chain_count: usize,
    /// Every chain member induces an oracle congruence, and the chain covers
    /// the lattice.
    pub chain_matches: bool,
    pub totally_ordered: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.chain_matches && self.totally_ordered && self.oracle_count == self.chain_count
    }
}

pub fn check_chain(family: MonoidFamily) -> Result<ChainReport> {
    let monoid = family.table(DEFAULT_ENUMERATION_CAP)?;
    let lattice = all_congruences(monoid.table(), DEFAULT_LATTICE_CAP)?;
    let els = monoid.elements();
    let chain = congruence_chain(family)?;
    let induced: BTreeSet<CongruencePartition> = chain
        .iter()
        .map(|c| {
            CongruencePartition::from_equivalence(els.len(), |x, y| {
                c.related_unchecked(&els[x], &els[y])
            })
        })
        .collect();
    let ordered: Vec<&CongruencePartition> = lattice.iter().collect();
    let totally_ordered = ordered.iter().enumerate().all(|(i, a)| {
        ordered[i + 1..]
            .iter()
            .all(|b| a.refines(b) || b.refines(a))
    });
    Ok(ChainReport {
        family: family.to_string(),
        oracle_count: lattice.len(),
        chain_count: chain.len(),
        chain_matches: induced == lattice,
        totally_ordered,
    })
}

/// Distinct relations of all parameter tuples on `F_n` against the oracle
/// lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FnLatticeReport {
    pub family: String,
    pub tuples: usize,
    pub distinct: usize,
    pub oracle_count: usize,
    /// Oracle congruences no tuple produces.
    pub missing: usize,
    /// Tuple relations that are not oracle congruences.
    pub extra: usize,
}

impl FnLatticeReport {
    pub fn passed(&self) -> bool {
        self.missing == 0 && self.extra == 0
    }
}

pub fn check_fn_lattice(family: MatrixFamily) -> Result<FnLatticeReport> {
    let monoid = family.table()?;
    let lattice = all_congruences(monoid.table(), DEFAULT_LATTICE_CAP)?;
    let facts: Vec<MatrixFacts> = monoid
        .elements()
        .iter()
        .map(|m| MatrixFacts::of(*m))
        .collect();
    let tuples = CongruenceFn::all(family)?;
    let relations: BTreeSet<CongruencePartition> = tuples
        .iter()
        .map(|c| {
            CongruencePartition::from_equivalence(facts.len(), |x, y| {
                c.related_facts(&facts[x], &facts[y])
            })
        })
        .collect();
    Ok(FnLatticeReport {
        family: family.to_string(),
        tuples: tuples.len(),
        distinct: relations.len(),
        oracle_count: lattice.len(),
        missing: lattice.difference(&relations).count(),
        extra: relations.difference(&lattice).count(),
    })
}

/// Enumerated landscapes of `Q_m × P_n` against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LandscapeReport {
    pub family: String,
    pub enumerated: usize,
    pub oracle_count: usize,
    /// Landscapes failing `validate`.
    pub invalid: Vec<String>,
    /// Landscapes whose relation is not an equivalence or not a congruence.
    pub not_congruences: Vec<String>,
    /// Landscapes inducing the same relation as an earlier one.
    pub duplicates: usize,
    /// Landscapes whose relation is missing from the oracle lattice.
    pub unknown: usize,
    /// Generator pairs where the landscape of the principal description and
    /// the description itself disagree.
    pub principal_mismatches: Vec<String>,
    /// Landscapes for which `parse(render(l)) != l` in some layout.
    pub round_trip_failures: Vec<String>,
}

impl LandscapeReport {
    pub fn all_valid(&self) -> bool {
        self.invalid.is_empty()
    }

    pub fn all_congruences(&self) -> bool {
        self.not_congruences.is_empty()
    }

    pub fn count_matches(&self) -> bool {
        self.enumerated == self.oracle_count && self.duplicates == 0 && self.unknown == 0
    }

    pub fn principal_agrees(&self) -> bool {
        self.principal_mismatches.is_empty()
    }

    pub fn round_trips(&self) -> bool {
        self.round_trip_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.all_valid()
            && self.all_congruences()
            && self.count_matches()
            && self.principal_agrees()
            && self.round_trips()
    }
}

pub fn check_landscapes(
    family: ProductFamily,
    cap: usize,
    exec: Execution,
) -> Result<LandscapeReport> {
    let monoid = family.table(DEFAULT_ENUMERATION_CAP)?;
    let els = monoid.elements();
    let n = els.len();
    let lattice = all_congruences(monoid.table(), DEFAULT_LATTICE_CAP)?;
    let landscapes = enumerate_landscapes(family, cap)?;

    let mut report = LandscapeReport {
        family: family.to_string(),
        enumerated: landscapes.len(),
        oracle_count: lattice.len(),
        invalid: Vec::new(),
        not_congruences: Vec::new(),
        duplicates: 0,
        unknown: 0,
        principal_mismatches: Vec::new(),
        round_trip_failures: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for l in &landscapes {
        if !l.is_valid() {
            report.invalid.push(l.to_string());
        }
        let related = |x: usize, y: usize| l.related_unchecked(&els[x], &els[y]);
        let partition = CongruencePartition::from_equivalence(n, related);
        if partition.first_disagreement(related).is_some()
            || !is_congruence(monoid.table(), &partition)
        {
            report.not_congruences.push(l.to_string());
        }
        if !lattice.contains(&partition) {
            report.unknown += 1;
        }
        if !seen.insert(partition) {
            report.duplicates += 1;
        }
        for layout in [Layout::Diamond, Layout::Matrix] {
            if parse(&render(l, layout)).ok().as_ref() != Some(l) {
                report.round_trip_failures.push(format!("{l} ({layout:?})"));
            }
        }
    }

    let pairs = Selection::All.pairs(n);
    let outcomes = exec.map(&pairs, |&(a, b)| -> Result<Option<String>> {
        let desc = principal_product(&els[a], &els[b])?;
        let l = DlockLandscape::of_principal(&desc);
        let bad = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                l.related_unchecked(&els[x], &els[y]) != desc.related_unchecked(&els[x], &els[y])
            });
        Ok(bad.map(|(x, y)| {
            format!(
                "generators ({}, {}): landscape {l} and {} disagree on ({}, {})",
                els[a], els[b], desc, els[x], els[y]
            )
        }))
    });
    for o in outcomes {
        if let Some(m) = o? {
            report.principal_mismatches.push(m);
        }
    }
    report.principal_mismatches.truncate(MISMATCH_REPORT_LIMIT);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_reproducible() {
        let s = Selection::Sample { count: 50, seed: 7 };
        assert_eq!(s.pairs(30), s.pairs(30));
        assert_ne!(
            s.pairs(30),
            Selection::Sample { count: 50, seed: 8 }.pairs(30)
        );
        assert_eq!(Selection::All.pairs(4).len(), 16);
    }

    #[test]
    fn small_sweeps_pass() {
        let r = sweep_qn(MonoidFamily::t(2), Selection::All, Execution::Sequential).unwrap();
        assert!(r.passed(), "{r}");
        let r = sweep_fn(
            "F1@GF(5)".parse().unwrap(),
            Selection::All,
            Execution::Parallel,
        )
        .unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn axioms_catch_a_wrong_description() {
        let monoid = MonoidFamily::t(2).table(4).unwrap();
        let pairs = Selection::All.pairs(monoid.size());
        let ok = check_qn(
            MonoidFamily::t(2),
            Selection::All,
            Execution::Sequential,
            Check::Axioms,
        )
        .unwrap();
        assert!(ok.passed(), "{ok}");
        // Relating exactly the generators is not closed under multiplication
        // once the generators differ.
        let bad = sweep(
            "generators only",
            &monoid,
            &pairs,
            Execution::Sequential,
            Check::Axioms,
            |a, b| Ok(format!("{a}~{b}")),
            |d, x, y| x == y || d == &format!("{x}~{y}") || d == &format!("{y}~{x}"),
        )
        .unwrap();
        assert!(bad.mismatch_count > 0);
        assert!(bad.mismatches.iter().any(|m| m.contains("not compatible")));
    }
}
