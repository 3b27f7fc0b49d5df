//! Dlock landscapes: the classification of all congruences on `Q_m × P_n`.
//!
//! A congruence is described by a partition of the grid of D-classes
//! `D_{i,j}` into typed parts. Each part carries a type in `{F, H, ε}²` and,
//! except for `FF`, a normal subgroup controlling how elements inside the part
//! are related.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{all_normal_subgroups_product, NormalSubgroupProduct, NormalSubgroupSk};
use crate::oracle::CongruencePartition;
use crate::perm::Permutation;
use crate::qn::{CongruenceQn, QnVariant};

use super::principal::{PrincipalCase, PrincipalDescription};
use super::{ProductElement, ProductFamily};

pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    F,
    H,
    Eps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DlockType {
    FF,
    HF,
    EpsF,
    FH,
    FEps,
    HH,
    EpsH,
    HEps,
    EpsEps,
}

impl DlockType {
    pub const ALL: [DlockType; 9] = [
        DlockType::FF,
        DlockType::HF,
        DlockType::EpsF,
        DlockType::FH,
        DlockType::FEps,
        DlockType::HH,
        DlockType::EpsH,
        DlockType::HEps,
        DlockType::EpsEps,
    ];

    pub fn from_components(first: Component, second: Component) -> Self {
        use Component::*;
        match (first, second) {
            (F, F) => DlockType::FF,
            (H, F) => DlockType::HF,
            (Eps, F) => DlockType::EpsF,
            (F, H) => DlockType::FH,
            (F, Eps) => DlockType::FEps,
            (H, H) => DlockType::HH,
            (Eps, H) => DlockType::EpsH,
            (H, Eps) => DlockType::HEps,
            (Eps, Eps) => DlockType::EpsEps,
        }
    }

    pub fn components(self) -> (Component, Component) {
        use Component::*;
        match self {
            DlockType::FF => (F, F),
            DlockType::HF => (H, F),
            DlockType::EpsF => (Eps, F),
            DlockType::FH => (F, H),
            DlockType::FEps => (F, Eps),
            DlockType::HH => (H, H),
            DlockType::EpsH => (Eps, H),
            DlockType::HEps => (H, Eps),
            DlockType::EpsEps => (Eps, Eps),
        }
    }

    /// Short ASCII code: `FF`, `HF`, `eF`, `FH`, `Fe`, `HH`, `eH`, `He`, `ee`.
    pub fn code(self) -> &'static str {
        match self {
            DlockType::FF => "FF",
            DlockType::HF => "HF",
            DlockType::EpsF => "eF",
            DlockType::FH => "FH",
            DlockType::FEps => "Fe",
            DlockType::HH => "HH",
            DlockType::EpsH => "eH",
            DlockType::HEps => "He",
            DlockType::EpsEps => "ee",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        DlockType::ALL.into_iter().find(|t| t.code() == code)
    }

    /// Parts of these types occupy a single D-class.
    pub fn is_single_cell(self) -> bool {
        matches!(
            self,
            DlockType::HH | DlockType::EpsH | DlockType::HEps | DlockType::EpsEps
        )
    }
}

impl fmt::Display for DlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartGroup {
    None,
    /// A subgroup of `S_i` (types `HF`, `εF`) or of `S_j` (types `FH`, `Fε`).
    Single(NormalSubgroupSk),
    /// A subgroup of `S_i × S_j` (single-cell types).
    Pair(NormalSubgroupProduct),
}

impl fmt::Display for PartGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartGroup::None => f.write_str("-"),
            PartGroup::Single(n) => write!(f, "{n}"),
            PartGroup::Pair(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DlockPart {
    cells: Vec<Cell>,
    dtype: DlockType,
    group: PartGroup,
}

impl DlockPart {
    pub fn new(dtype: DlockType, mut cells: Vec<Cell>, group: PartGroup) -> Self {
        cells.sort_unstable();
        cells.dedup();
        DlockPart {
            cells,
            dtype,
            group,
        }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn dtype(&self) -> DlockType {
        self.dtype
    }

    pub fn group(&self) -> PartGroup {
        self.group
    }

    pub fn min_cell(&self) -> Cell {
        self.cells[0]
    }

    fn single(&self) -> Option<NormalSubgroupSk> {
        match self.group {
            PartGroup::Single(n) => Some(n),
            _ => None,
        }
    }

    fn pair(&self) -> Option<NormalSubgroupProduct> {
        match self.group {
            PartGroup::Pair(n) => Some(n),
            _ => None,
        }
    }

    /// The part-local relation, for two elements whose D-classes lie in this part.
    fn relates(&self, x: &ProductElement, y: &ProductElement) -> bool {
        let witness_in = |a: &crate::monoid::Transformation,
                          c: &crate::monoid::Transformation,
                          n: Option<NormalSubgroupSk>| {
            a.hclass_witness(c)
                .is_some_and(|s| n.is_some_and(|n| n.contains(&s)))
        };
        match self.dtype {
            DlockType::FF => true,
            DlockType::HF | DlockType::EpsF => witness_in(&x.left, &y.left, self.single()),
            DlockType::FH | DlockType::FEps => witness_in(&x.right, &y.right, self.single()),
            _ => match (
                x.left.hclass_witness(&y.left),
                x.right.hclass_witness(&y.right),
                self.pair(),
            ) {
                (Some(s), Some(t), Some(n)) => n.contains(&s, &t),
                _ => false,
            },
        }
    }
}

impl fmt::Display for DlockPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .cells
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(f, "{} {{{}}}", self.dtype, cells.join(","))?;
        if self.group != PartGroup::None {
            write!(f, " [{}]", self.group)?;
        }
        Ok(())
    }
}

/// One failed validity condition, named by a short tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Tag such as `"ff-shape"` or `"hh-group"`.
    pub condition: String,
    pub part: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition)?;
        if let Some(p) = &self.part {
            write!(f, " at {p}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// A partition of the D-class grid of `Q_m × P_n` into typed parts.
///
/// Parts are kept sorted by their least cell, so equal landscapes compare
/// equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DlockLandscape {
    family: ProductFamily,
    parts: Vec<DlockPart>,
    cell_part: Vec<usize>,
}

impl DlockLandscape {
    /// Checks only that `parts` partition the grid; see [`Self::validate`].
    pub fn new(family: ProductFamily, mut parts: Vec<DlockPart>) -> Result<Self> {
        let mut cell_part = vec![usize::MAX; family.cell_count()];
        parts.retain(|p| !p.cells.is_empty());
        parts.sort();
        for (idx, part) in parts.iter().enumerate() {
            for &cell in &part.cells {
                if !family.contains_cell(cell) {
                    return Err(Error::InvalidElement(format!(
                        "cell {cell:?} lies outside the grid of {family}"
                    )));
                }
                let slot = &mut cell_part[family.cell_index(cell)];
                if *slot != usize::MAX {
                    return Err(Error::InvalidElement(format!(
                        "cell {cell:?} belongs to two parts"
                    )));
                }
                *slot = idx;
            }
        }
        if let Some(pos) = cell_part.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidElement(format!(
                "cell {:?} is not covered by any part",
                family.cells()[pos]
            )));
        }
        Ok(DlockLandscape {
            family,
            parts,
            cell_part,
        })
    }

    /// Builds and validates.
    pub fn validated(family: ProductFamily, parts: Vec<DlockPart>) -> Result<Self> {
        let l = Self::new(family, parts)?;
        l.validate().map_err(Error::InvalidLandscape)?;
        Ok(l)
    }

    /// Every D-class its own `εε` part: the identity congruence.
    pub fn identity(family: ProductFamily) -> Self {
        LandscapeBuilder::new(family).finish()
    }

    /// A single `FF` part: the universal congruence.
    pub fn universal(family: ProductFamily) -> Self {
        let parts = vec![DlockPart::new(
            DlockType::FF,
            family.cells(),
            PartGroup::None,
        )];
        Self::new(family, parts).expect("one part covers the grid")
    }

    pub fn family(&self) -> ProductFamily {
        self.family
    }

    pub fn parts(&self) -> &[DlockPart] {
        &self.parts
    }

    pub fn part_at(&self, cell: Cell) -> Option<&DlockPart> {
        if !self.family.contains_cell(cell) {
            return None;
        }
        Some(&self.parts[self.cell_part[self.family.cell_index(cell)]])
    }

    fn part_index(&self, cell: Cell) -> usize {
        self.cell_part[self.family.cell_index(cell)]
    }

    pub fn related(&self, x: &ProductElement, y: &ProductElement) -> Result<bool> {
        let fam = (self.family.left, self.family.right);
        if x.family() != fam || y.family() != fam {
            return Err(Error::mismatch(
                self.family,
                format!("{}x{}", x.left.family(), x.right.family()),
            ));
        }
        Ok(self.related_unchecked(x, y))
    }

    pub(crate) fn related_unchecked(&self, x: &ProductElement, y: &ProductElement) -> bool {
        if x == y {
            return true;
        }
        let p = self.part_index(x.ranks());
        p == self.part_index(y.ranks()) && self.parts[p].relates(x, y)
    }

    /// Checks the eleven conditions of the classification. Rank floors are
    /// taken per factor.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut v = Validator {
            l: self,
            out: Vec::new(),
        };
        v.run();
        if v.out.is_empty() {
            Ok(())
        } else {
            Err(v.out)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Reads off the landscape of a congruence given as a partition of the
    /// product's elements. Fails if the partition does not have the shape the
    /// classification predicts (for instance, if it is not a congruence).
    pub fn from_partition(
        family: ProductFamily,
        elements: &[ProductElement],
        partition: &CongruencePartition,
    ) -> Result<Self> {
        if elements.len() != partition.len() {
            return Err(Error::InvalidElement(
                "partition and element list differ in length".into(),
            ));
        }
        let n_cells = family.cell_count();
        let mut uf: UnionFind<usize> = UnionFind::new(n_cells);
        let pairs = partition.pairs();
        for &(a, b) in &pairs {
            uf.union(
                family.cell_index(elements[a].ranks()),
                family.cell_index(elements[b].ranks()),
            );
        }
        let cells = family.cells();
        let mut dlocks: Vec<Vec<Cell>> = Vec::new();
        let mut root_slot = vec![usize::MAX; n_cells];
        for &cell in &cells {
            let r = uf.find_mut(family.cell_index(cell));
            if root_slot[r] == usize::MAX {
                root_slot[r] = dlocks.len();
                dlocks.push(Vec::new());
            }
            dlocks[root_slot[r]].push(cell);
        }
        struct Evidence {
            first: Component,
            second: Component,
            left: BTreeSet<Permutation>,
            right: BTreeSet<Permutation>,
            joint: BTreeSet<(Permutation, Permutation)>,
        }
        let mut evidence: Vec<Evidence> = dlocks
            .iter()
            .map(|_| Evidence {
                first: Component::Eps,
                second: Component::Eps,
                left: BTreeSet::new(),
                right: BTreeSet::new(),
                joint: BTreeSet::new(),
            })
            .collect();
        let bump = |c: &mut Component, new: Component| {
            let rank = |c: Component| match c {
                Component::Eps => 0,
                Component::H => 1,
                Component::F => 2,
            };
            if rank(new) > rank(*c) {
                *c = new;
            }
        };
        for &(a, b) in &pairs {
            let (x, y) = (&elements[a], &elements[b]);
            let d = root_slot[uf.find_mut(family.cell_index(x.ranks()))];
            let e = &mut evidence[d];
            let wl = x.left.hclass_witness(&y.left);
            let wr = x.right.hclass_witness(&y.right);
            bump(
                &mut e.first,
                match &wl {
                    None => Component::F,
                    Some(s) if !s.is_identity() => Component::H,
                    Some(_) => Component::Eps,
                },
            );
            bump(
                &mut e.second,
                match &wr {
                    None => Component::F,
                    Some(s) if !s.is_identity() => Component::H,
                    Some(_) => Component::Eps,
                },
            );
            if let Some(s) = &wl {
                e.left.insert(s.clone());
            }
            if let Some(t) = &wr {
                e.right.insert(t.clone());
            }
            if let (Some(s), Some(t)) = (wl, wr) {
                e.joint.insert((s, t));
            }
        }
        let mut parts = Vec::with_capacity(dlocks.len());
        for (cells, e) in dlocks.into_iter().zip(evidence) {
            let dtype = DlockType::from_components(e.first, e.second);
            let (i, j) = cells[0];
            let group = match dtype {
                DlockType::FF => PartGroup::None,
                DlockType::HF | DlockType::EpsF => PartGroup::Single(match_single(i, e.left)?),
                DlockType::FH | DlockType::FEps => PartGroup::Single(match_single(j, e.right)?),
                _ => PartGroup::Pair(match_pair(i, j, e.joint)?),
            };
            parts.push(DlockPart::new(dtype, cells, group));
        }
        Self::new(family, parts)
    }

    /// The landscape of a principal congruence, in closed form.
    pub fn of_principal(desc: &PrincipalDescription) -> Self {
        let family = desc.family();
        let mut b = LandscapeBuilder::new(family);
        let (fl, fr) = (family.left.rank_floor(), family.right.rank_floor());
        let (m, n) = (family.left.degree, family.right.degree);
        match desc.case() {
            PrincipalCase::Identity => {}
            PrincipalCase::FixedLeft { fixed_rank, theta } => {
                for i in fl..=fixed_rank.min(m) {
                    b.fixed_strip(i, theta, false);
                }
            }
            PrincipalCase::FixedRight { fixed_rank, theta } => {
                for j in fr..=fixed_rank.min(n) {
                    b.fixed_strip(j, theta, true);
                }
            }
            PrincipalCase::Rees { corners } => {
                let cells = family
                    .cells()
                    .into_iter()
                    .filter(|&(r, s)| corners.iter().any(|&(i, k)| r <= i && s <= k))
                    .collect();
                b.add(DlockType::FF, cells, PartGroup::None);
            }
            PrincipalCase::HRight { left_bound, theta } => {
                let (k, group) = theta_parts(theta);
                b.add(
                    DlockType::FF,
                    rect(fl..=left_bound, fr..=k - 1),
                    PartGroup::None,
                );
                b.add(
                    DlockType::FH,
                    rect(fl..=left_bound, k..=k),
                    PartGroup::Single(group),
                );
            }
            PrincipalCase::HLeft { right_bound, theta } => {
                let (k, group) = theta_parts(theta);
                b.add(
                    DlockType::FF,
                    rect(fl..=k - 1, fr..=right_bound),
                    PartGroup::None,
                );
                b.add(
                    DlockType::HF,
                    rect(k..=k, fr..=right_bound),
                    PartGroup::Single(group),
                );
            }
            PrincipalCase::HBoth {
                ranks: (i, k),
                group,
            } => {
                b.add(DlockType::FF, rect(fl..=i - 1, fr..=k - 1), PartGroup::None);
                b.add(
                    DlockType::HF,
                    rect(i..=i, fr..=k - 1),
                    PartGroup::Single(group.left_projection()),
                );
                b.add(
                    DlockType::FH,
                    rect(fl..=i - 1, k..=k),
                    PartGroup::Single(group.right_projection()),
                );
                b.add(DlockType::HH, vec![(i, k)], PartGroup::Pair(group));
            }
        }
        b.finish()
    }
}

fn theta_parts(theta: CongruenceQn) -> (usize, NormalSubgroupSk) {
    match theta.variant() {
        QnVariant::Theta { k, group } => (k, group),
        QnVariant::Universal => {
            unreachable!("an H-related pair never generates the universal congruence")
        }
    }
}

fn rect(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> Vec<Cell> {
    rows.flat_map(|i| cols.clone().map(move |j| (i, j)))
        .collect()
}

fn match_single(degree: usize, witnesses: BTreeSet<Permutation>) -> Result<NormalSubgroupSk> {
    let mut w = witnesses;
    w.insert(Permutation::identity(degree));
    NormalSubgroupSk::all(degree)
        .into_iter()
        .find(|n| n.elements().into_iter().collect::<BTreeSet<_>>() == w)
        .ok_or_else(|| {
            Error::InvalidParameters(format!(
                "witnesses {w:?} do not form a normal subgroup of S_{degree}"
            ))
        })
}

fn match_pair(
    i: usize,
    j: usize,
    witnesses: BTreeSet<(Permutation, Permutation)>,
) -> Result<NormalSubgroupProduct> {
    let mut w = witnesses;
    w.insert((Permutation::identity(i), Permutation::identity(j)));
    all_normal_subgroups_product(i, j)?
        .into_iter()
        .find(|n| n.elements().into_iter().collect::<BTreeSet<_>>() == w)
        .ok_or_else(|| {
            Error::InvalidParameters(format!(
                "witnesses {w:?} do not form a normal subgroup of S_{i} x S_{j}"
            ))
        })
}

/// Incremental construction: add parts, then fill every untouched cell with
/// a trivial `εε` part.
#[derive(Debug, Clone)]
pub(crate) struct LandscapeBuilder {
    family: ProductFamily,
    parts: Vec<DlockPart>,
    taken: Vec<bool>,
}

impl LandscapeBuilder {
    pub(crate) fn new(family: ProductFamily) -> Self {
        LandscapeBuilder {
            family,
            parts: Vec::new(),
            taken: vec![false; family.cell_count()],
        }
    }

    pub(crate) fn is_taken(&self, cell: Cell) -> bool {
        self.taken[self.family.cell_index(cell)]
    }

    /// Adds a part; returns false (and adds nothing) if a cell is already taken
    /// or the cell list is empty.
    pub(crate) fn add(&mut self, dtype: DlockType, cells: Vec<Cell>, group: PartGroup) -> bool {
        if cells.is_empty()
            || cells
                .iter()
                .any(|&c| !self.family.contains_cell(c) || self.is_taken(c))
        {
            return false;
        }
        for &c in &cells {
            let idx = self.family.cell_index(c);
            self.taken[idx] = true;
        }
        self.parts.push(DlockPart::new(dtype, cells, group));
        true
    }

    /// The parts generated at one fixed rank by a pair that varies only in the
    /// other coordinate: an `εF` strip below the rank of `theta` and an `εH`
    /// cell at it (transposed when `transpose` is set).
    fn fixed_strip(&mut self, at: usize, theta: CongruenceQn, transpose: bool) {
        let (other_floor, other_degree) = if transpose {
            (self.family.left.rank_floor(), self.family.left.degree)
        } else {
            (self.family.right.rank_floor(), self.family.right.degree)
        };
        let orient = |k: usize| if transpose { (k, at) } else { (at, k) };
        let (strip_type, cell_type) = if transpose {
            (DlockType::FEps, DlockType::HEps)
        } else {
            (DlockType::EpsF, DlockType::EpsH)
        };
        let trivial_at = NormalSubgroupSk::trivial(at);
        let (top, group) = match theta.variant() {
            QnVariant::Universal => (other_degree, None),
            QnVariant::Theta { k, group } => (k - 1, Some((k, group))),
        };
        if top >= other_floor.max(1) {
            let cells = (other_floor..=top).map(orient).collect();
            self.add(strip_type, cells, PartGroup::Single(trivial_at));
        }
        if let Some((k, n)) = group {
            if !n.is_trivial() {
                let g = if transpose {
                    NormalSubgroupProduct::product(n, trivial_at)
                } else {
                    NormalSubgroupProduct::product(trivial_at, n)
                };
                self.add(cell_type, vec![orient(k)], PartGroup::Pair(g));
            }
        }
    }

    pub(crate) fn finish(mut self) -> DlockLandscape {
        for (i, j) in self.family.cells() {
            if !self.is_taken((i, j)) {
                self.add(
                    DlockType::EpsEps,
                    vec![(i, j)],
                    PartGroup::Pair(NormalSubgroupProduct::trivial(i, j)),
                );
            }
        }
        DlockLandscape::new(self.family, self.parts).expect("builder covers each cell once")
    }
}

struct Validator<'a> {
    l: &'a DlockLandscape,
    out: Vec<Violation>,
}

impl Validator<'_> {
    fn fail(&mut self, condition: &str, part: Option<&DlockPart>, message: impl Into<String>) {
        self.out.push(Violation {
            condition: condition.to_string(),
            part: part.map(ToString::to_string),
            message: message.into(),
        });
    }

    fn run(&mut self) {
        let fam = self.l.family;
        let (fl, fr) = (fam.left.rank_floor(), fam.right.rank_floor());
        let parts = &self.l.parts;

        let ff: Vec<&DlockPart> = parts.iter().filter(|p| p.dtype == DlockType::FF).collect();
        if ff.len() > 1 {
            self.fail("ff-unique", Some(ff[1]), "more than one part of type FF");
        }
        for p in &ff {
            self.check_ff(p, fl, fr);
        }
        for p in parts {
            match p.dtype {
                DlockType::HF | DlockType::EpsF => self.check_strip(p, false),
                DlockType::FH | DlockType::FEps => self.check_strip(p, true),
                DlockType::FF => {}
                _ => self.check_cell(p),
            }
        }
        self.check_h_strip(false);
        self.check_h_strip(true);
        self.check_eps_stack(false);
        self.check_eps_stack(true);
        for p in parts {
            match p.dtype {
                DlockType::HH => self.check_hh(p),
                DlockType::EpsH => self.check_eps_h(p, false),
                DlockType::HEps => self.check_eps_h(p, true),
                _ => {}
            }
        }
    }

    fn check_ff(&mut self, p: &DlockPart, fl: usize, fr: usize) {
        if p.group != PartGroup::None {
            self.fail("ff-group", Some(p), "an FF part carries no group");
        }
        let set: BTreeSet<Cell> = p.cells.iter().copied().collect();
        for &(i, j) in &p.cells {
            let below_ok = i == fl || set.contains(&(i - 1, j));
            let left_ok = j == fr || set.contains(&(i, j - 1));
            if !below_ok || !left_ok {
                self.fail(
                    "ff-shape",
                    Some(p),
                    format!("not downward closed at ({i},{j})"),
                );
                return;
            }
        }
        if fl == 0 && p.cells.iter().all(|&(i, _)| i == 0) {
            self.fail("ff-row", Some(p), "an FF part may not lie in row 0 alone");
        }
        if fr == 0 && p.cells.iter().all(|&(_, j)| j == 0) {
            self.fail(
                "ff-column",
                Some(p),
                "an FF part may not lie in column 0 alone",
            );
        }
    }

    /// Shape of `HF`/`εF` strips, or of `FH`/`Fε` strips when transposed.
    fn check_strip(&mut self, p: &DlockPart, transpose: bool) {
        let cond = if transpose {
            "right-strip"
        } else {
            "left-strip"
        };
        let fam = self.l.family;
        let floor = if transpose {
            fam.left.rank_floor()
        } else {
            fam.right.rank_floor()
        };
        let key = |c: Cell| if transpose { (c.1, c.0) } else { c };
        let (at, _) = key(p.cells[0]);
        let top = key(*p.cells.last().expect("parts are non-empty")).1;
        let expected: Vec<Cell> = (floor..=top)
            .map(|k| if transpose { (k, at) } else { (at, k) })
            .collect();
        if p.cells != expected {
            self.fail(
                cond,
                Some(p),
                "cells must form a strip starting at the rank floor",
            );
            return;
        }
        if top < 1 {
            self.fail(cond, Some(p), "the strip must reach rank 1");
        }
        let n = match p.group {
            PartGroup::Single(n) if n.degree() == at => n,
            _ => {
                self.fail(cond, Some(p), format!("needs a normal subgroup of S_{at}"));
                return;
            }
        };
        let is_h = matches!(p.dtype, DlockType::HF | DlockType::FH);
        if is_h {
            if at < 2 {
                self.fail(
                    &format!("{cond}-h"),
                    Some(p),
                    "an H strip needs rank at least 2",
                );
            }
            if n.is_trivial() {
                self.fail(
                    &format!("{cond}-h"),
                    Some(p),
                    "an H strip needs a non-trivial group",
                );
            }
        } else if !n.is_trivial() {
            self.fail(
                &format!("{cond}-eps"),
                Some(p),
                "an ε strip carries the trivial group",
            );
        }
    }

    /// At most one `HF` and one `FH` strip, each resting on the `FF` part.
    fn check_h_strip(&mut self, transpose: bool) {
        let (cond, dtype) = if transpose {
            ("fh-support", DlockType::FH)
        } else {
            ("hf-support", DlockType::HF)
        };
        let strips: Vec<&DlockPart> = self.l.parts.iter().filter(|p| p.dtype == dtype).collect();
        if strips.len() > 1 {
            self.fail(
                cond,
                Some(strips[1]),
                format!("more than one part of type {dtype}"),
            );
        }
        let fam = self.l.family;
        for p in strips {
            let (at, top) = if transpose {
                (p.cells[0].1, p.cells.last().unwrap().0)
            } else {
                (p.cells[0].0, p.cells.last().unwrap().1)
            };
            let (floor_at, floor_other) = if transpose {
                (fam.right.rank_floor(), fam.left.rank_floor())
            } else {
                (fam.left.rank_floor(), fam.right.rank_floor())
            };
            let covered = at > floor_at
                && (floor_at..at).all(|a| {
                    (floor_other..=top).all(|o| {
                        let c = if transpose { (o, a) } else { (a, o) };
                        self.l.part_at(c).is_some_and(|q| q.dtype == DlockType::FF)
                    })
                });
            if !covered {
                self.fail(
                    cond,
                    Some(p),
                    "the cells below the strip must all lie in the FF part",
                );
            }
        }
    }

    /// Stacks of `εF` rows and `Fε` columns.
    fn check_eps_stack(&mut self, transpose: bool) {
        let (cond, dtype, h_type) = if transpose {
            ("f-eps-stack", DlockType::FEps, DlockType::FH)
        } else {
            ("eps-f-stack", DlockType::EpsF, DlockType::HF)
        };
        let fam = self.l.family;
        let (floor_at, floor_other) = if transpose {
            (fam.right.rank_floor(), fam.left.rank_floor())
        } else {
            (fam.left.rank_floor(), fam.right.rank_floor())
        };
        let mut stack: Vec<(usize, usize, &DlockPart)> = self
            .l
            .parts
            .iter()
            .filter(|p| p.dtype == dtype)
            .map(|p| {
                if transpose {
                    (p.cells[0].1, p.cells.last().unwrap().0, p)
                } else {
                    (p.cells[0].0, p.cells.last().unwrap().1, p)
                }
            })
            .collect();
        stack.sort_by_key(|s| s.0);
        for w in stack.windows(2) {
            if w[1].0 != w[0].0 + 1 {
                self.fail(cond, Some(w[1].2), "ε strips must sit at consecutive ranks");
            }
            if w[1].1 > w[0].1 {
                self.fail(cond, Some(w[1].2), "ε strip heights must not increase");
            }
        }
        if let Some(&(lowest, height, p)) = stack.first() {
            if lowest > floor_at {
                let below: Vec<Cell> = (floor_other..=height)
                    .map(|o| {
                        if transpose {
                            (o, lowest - 1)
                        } else {
                            (lowest - 1, o)
                        }
                    })
                    .collect();
                let idx: BTreeSet<usize> = below.iter().map(|&c| self.l.part_index(c)).collect();
                let ok = idx.len() == 1 && {
                    let q = &self.l.parts[*idx.iter().next().unwrap()];
                    q.dtype == DlockType::FF || q.dtype == h_type
                };
                if !ok {
                    self.fail(
                        cond,
                        Some(p),
                        format!("the lowest ε strip must rest on the FF part or the {h_type} part"),
                    );
                }
            }
        }
    }

    /// Groups and ranks of single-cell parts.
    fn check_cell(&mut self, p: &DlockPart) {
        if p.cells.len() != 1 {
            self.fail(
                "single-cell",
                Some(p),
                "this type occupies a single D-class",
            );
            return;
        }
        let (i, j) = p.cells[0];
        let n = match p.group {
            PartGroup::Pair(n) if n.degrees() == (i, j) => n,
            _ => {
                self.fail(
                    "single-cell",
                    Some(p),
                    format!("needs a normal subgroup of S_{i} x S_{j}"),
                );
                return;
            }
        };
        match p.dtype {
            DlockType::HH => {
                if i < 2 || j < 2 {
                    self.fail("hh-group", Some(p), "HH needs both ranks at least 2");
                }
                if n.left_projection().is_trivial() || n.right_projection().is_trivial() {
                    self.fail("hh-group", Some(p), "HH needs both projections non-trivial");
                }
            }
            DlockType::EpsH => {
                if j < 2 {
                    self.fail("eh-group", Some(p), "εH needs right rank at least 2");
                }
                if !n
                    .right_factor_if_left_trivial()
                    .is_some_and(|r| !r.is_trivial())
                {
                    self.fail(
                        "eh-group",
                        Some(p),
                        "εH needs a group ε x N' with N' non-trivial",
                    );
                }
            }
            DlockType::HEps => {
                if i < 2 {
                    self.fail("he-group", Some(p), "Hε needs left rank at least 2");
                }
                if !n
                    .left_factor_if_right_trivial()
                    .is_some_and(|l| !l.is_trivial())
                {
                    self.fail(
                        "he-group",
                        Some(p),
                        "Hε needs a group N' x ε with N' non-trivial",
                    );
                }
            }
            _ => {
                if !n.is_trivial() {
                    self.fail("ee-group", Some(p), "εε carries the trivial group");
                }
            }
        }
    }

    /// Neighbours of an `HH` cell.
    fn check_hh(&mut self, p: &DlockPart) {
        let (i, j) = p.cells[0];
        let Some(n) = p.pair() else { return };
        if i == 0 || j == 0 {
            return;
        }
        if let Some(left) = self.l.part_at((i, j - 1)) {
            let ok = match left.dtype {
                DlockType::FF => true,
                DlockType::HF => left
                    .single()
                    .is_some_and(|m| n.left_projection().is_subgroup_of(&m)),
                _ => false,
            };
            if !ok {
                self.fail(
                    "hh-neighbours",
                    Some(p),
                    "the cell to the left must be FF, or HF containing the first projection",
                );
            }
        }
        if let Some(below) = self.l.part_at((i - 1, j)) {
            let ok = match below.dtype {
                DlockType::FF => true,
                DlockType::FH => below
                    .single()
                    .is_some_and(|m| n.right_projection().is_subgroup_of(&m)),
                _ => false,
            };
            if !ok {
                self.fail(
                    "hh-neighbours",
                    Some(p),
                    "the cell below must be FF, or FH containing the second projection",
                );
            }
        }
    }

    /// Neighbours of an `εH` cell, or of an `Hε` cell when transposed.
    fn check_eps_h(&mut self, p: &DlockPart, transpose: bool) {
        let cond = if transpose {
            "he-neighbours"
        } else {
            "eh-neighbours"
        };
        let (i, j) = p.cells[0];
        let Some(n) = p.pair() else { return };
        let inner = if transpose {
            n.left_factor_if_right_trivial()
        } else {
            n.right_factor_if_left_trivial()
        };
        let Some(inner) = inner else { return };
        if i == 0 || j == 0 {
            return;
        }
        let (strip_f, strip_h, strip_e) = if transpose {
            (DlockType::FF, DlockType::FH, DlockType::FEps)
        } else {
            (DlockType::FF, DlockType::HF, DlockType::EpsF)
        };
        let along = if transpose { (i - 1, j) } else { (i, j - 1) };
        if let Some(q) = self.l.part_at(along) {
            if ![strip_f, strip_h, strip_e].contains(&q.dtype) {
                self.fail(
                    cond,
                    Some(p),
                    format!(
                        "the neighbouring cell {along:?} must be {strip_f}, {strip_h} or {strip_e}"
                    ),
                );
            }
        }
        let fam = self.l.family;
        let across_floor = if transpose {
            fam.right.rank_floor()
        } else {
            fam.left.rank_floor()
        };
        let across_at = if transpose { j } else { i };
        if across_at <= across_floor {
            return;
        }
        let across = if transpose { (i, j - 1) } else { (i - 1, j) };
        let Some(q) = self.l.part_at(across) else {
            return;
        };
        let (cross_h, cross_single_h) = if transpose {
            (DlockType::HF, DlockType::HEps)
        } else {
            (DlockType::FH, DlockType::EpsH)
        };
        let shifted = if transpose {
            NormalSubgroupProduct::product(inner, NormalSubgroupSk::trivial(j - 1))
        } else {
            NormalSubgroupProduct::product(NormalSubgroupSk::trivial(i - 1), inner)
        };
        let ok = if [strip_f, strip_h, strip_e].contains(&q.dtype) {
            true
        } else if q.dtype == cross_h {
            q.single().is_some_and(|m| inner.is_subgroup_of(&m))
        } else if q.dtype == DlockType::HH || q.dtype == cross_single_h {
            q.pair().is_some_and(|m| shifted.is_subgroup_of(&m))
        } else {
            false
        };
        if !ok {
            self.fail(
                cond,
                Some(p),
                format!("the neighbouring cell {across:?} does not admit this part"),
            );
        }
    }
}

impl fmt::Display for DlockLandscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.family)?;
        for p in &self.parts {
            write!(f, " {p};")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::principal::principal_product;

    fn t2t2() -> ProductFamily {
        "T2xT2".parse().unwrap()
    }

    #[test]
    fn trivial_landscapes_are_valid() {
        for fam in ["T2xT2", "I2xT2", "PT2xPT3"] {
            let fam: ProductFamily = fam.parse().unwrap();
            assert!(DlockLandscape::identity(fam).is_valid());
            assert!(DlockLandscape::universal(fam).is_valid());
        }
    }

    #[test]
    fn h_both_landscape() {
        let fam = t2t2();
        let x = fam.parse_element("([1,2],[1,2])").unwrap();
        let y = fam.parse_element("([2,1],[2,1])").unwrap();
        let l = DlockLandscape::of_principal(&principal_product(&x, &y).unwrap());
        assert_eq!(l.validate(), Ok(()));
        assert_eq!(l.part_at((1, 1)).unwrap().dtype(), DlockType::FF);
        assert_eq!(l.part_at((2, 1)).unwrap().dtype(), DlockType::HF);
        assert_eq!(l.part_at((1, 2)).unwrap().dtype(), DlockType::FH);
        assert_eq!(l.part_at((2, 2)).unwrap().dtype(), DlockType::HH);
        let a = fam.parse_element("([1,2],[2,1])").unwrap();
        let b = fam.parse_element("([2,1],[1,2])").unwrap();
        assert!(l.related(&a, &b).unwrap());
        let c = fam.parse_element("([1,2],[1,2])").unwrap();
        assert!(!l.related(&c, &a).unwrap());
    }

    #[test]
    fn hf_without_ff_violates_condition_4() {
        let fam = t2t2();
        let parts = vec![
            DlockPart::new(
                DlockType::HF,
                vec![(2, 1)],
                PartGroup::Single(NormalSubgroupSk::full(2)),
            ),
            DlockPart::new(
                DlockType::EpsEps,
                vec![(1, 1)],
                PartGroup::Pair(NormalSubgroupProduct::trivial(1, 1)),
            ),
            DlockPart::new(
                DlockType::EpsEps,
                vec![(1, 2)],
                PartGroup::Pair(NormalSubgroupProduct::trivial(1, 2)),
            ),
            DlockPart::new(
                DlockType::EpsEps,
                vec![(2, 2)],
                PartGroup::Pair(NormalSubgroupProduct::trivial(2, 2)),
            ),
        ];
        let l = DlockLandscape::new(fam, parts).unwrap();
        let errs = l.validate().unwrap_err();
        assert!(errs.iter().any(|v| v.condition == "hf-support"), "{errs:?}");
    }

    #[test]
    fn partition_checks() {
        let fam = t2t2();
        let part = DlockPart::new(DlockType::FF, vec![(1, 1)], PartGroup::None);
        assert!(DlockLandscape::new(fam, vec![part.clone()]).is_err());
        assert!(DlockLandscape::new(fam, vec![part.clone(), part]).is_err());
    }

    #[test]
    fn row_zero_ff_is_rejected() {
        let fam: ProductFamily = "PT2xPT2".parse().unwrap();
        let mut b = LandscapeBuilder::new(fam);
        b.add(DlockType::FF, vec![(0, 0), (0, 1)], PartGroup::None);
        let errs = b.finish().validate().unwrap_err();
        assert!(errs.iter().any(|v| v.condition == "ff-row"));
    }
}
