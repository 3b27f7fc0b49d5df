//! Enumeration of every valid dlock landscape of a product.
//!
//! The search sweeps the grid from its minimum corner: an `FF` staircase,
//! the optional `HF`/`FH` strips on its first empty row and column, the
//! stacks of `εF` rows and `Fε` columns resting on them, and finally the
//! single-cell parts. Every condition looks only down and to the left, so
//! each choice can be checked against neighbours that are already placed.

use crate::error::{Error, Result};
use crate::group::{all_normal_subgroups_product, NormalSubgroupProduct, NormalSubgroupSk};

use super::landscape::{Cell, DlockLandscape, DlockPart, DlockType, PartGroup};
use super::ProductFamily;

pub const DEFAULT_LANDSCAPE_CAP: usize = 3;

/// All valid landscapes of `family`, in a deterministic order. Distinct
/// landscapes describe distinct congruences.
pub fn enumerate_landscapes(family: ProductFamily, cap: usize) -> Result<Vec<DlockLandscape>> {
    for f in [family.left, family.right] {
        if f.degree > cap {
            return Err(Error::CapExceeded {
                what: format!("landscape enumeration for {family}"),
                size: f.degree,
                cap,
            });
        }
    }
    let grid = Grid::new(family);
    let mut out = Vec::new();
    for heights in staircases(&grid) {
        let mut state = State::new(&grid);
        let ff: Vec<Cell> = heights
            .iter()
            .enumerate()
            .flat_map(|(r, h)| {
                let i = grid.fl + r;
                h.map(|h| (grid.fr..=h).map(move |j| (i, j)))
                    .into_iter()
                    .flatten()
            })
            .collect();
        if !ff.is_empty() {
            state.place(DlockType::FF, ff, PartGroup::None);
        }
        let hf_options = h_strips(&grid, &state, false)?;
        let fh_options = h_strips(&grid, &state, true)?;
        for hf in &hf_options {
            for fh in &fh_options {
                let mut s = state.clone();
                if !s.place_strip(&grid, hf.as_ref(), false)
                    || !s.place_strip(&grid, fh.as_ref(), true)
                {
                    continue;
                }
                let rows = eps_stacks(&grid, &s, hf.as_ref(), false);
                let cols = eps_stacks(&grid, &s, fh.as_ref(), true);
                for r in &rows {
                    for c in &cols {
                        let mut t = s.clone();
                        if !t.place_stack(&grid, r, false) || !t.place_stack(&grid, c, true) {
                            continue;
                        }
                        let free: Vec<Cell> = family
                            .cells()
                            .into_iter()
                            .filter(|&c| t.at(c).is_none())
                            .collect();
                        sweep(&grid, &mut t, &free, 0, &mut out)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

struct Grid {
    family: ProductFamily,
    fl: usize,
    fr: usize,
    m: usize,
    n: usize,
}

impl Grid {
    fn new(family: ProductFamily) -> Self {
        Grid {
            family,
            fl: family.left.rank_floor(),
            fr: family.right.rank_floor(),
            m: family.left.degree,
            n: family.right.degree,
        }
    }

    /// `(along, other)` coordinates to a cell; `transpose` swaps the roles of
    /// rows and columns.
    fn cell(&self, transpose: bool, a: usize, o: usize) -> Cell {
        if transpose {
            (o, a)
        } else {
            (a, o)
        }
    }

    fn floors(&self, transpose: bool) -> (usize, usize) {
        if transpose {
            (self.fr, self.fl)
        } else {
            (self.fl, self.fr)
        }
    }

    fn tops(&self, transpose: bool) -> (usize, usize) {
        if transpose {
            (self.n, self.m)
        } else {
            (self.m, self.n)
        }
    }
}

#[derive(Clone)]
struct State {
    family: ProductFamily,
    slots: Vec<Option<(DlockType, PartGroup)>>,
    parts: Vec<DlockPart>,
}

impl State {
    fn new(grid: &Grid) -> Self {
        State {
            family: grid.family,
            slots: vec![None; grid.family.cell_count()],
            parts: Vec::new(),
        }
    }

    fn at(&self, cell: Cell) -> Option<(DlockType, PartGroup)> {
        if !self.family.contains_cell(cell) {
            return None;
        }
        self.slots[self.family.cell_index(cell)]
    }

    fn place(&mut self, dtype: DlockType, cells: Vec<Cell>, group: PartGroup) -> bool {
        if cells.iter().any(|&c| self.at(c).is_some()) {
            return false;
        }
        for &c in &cells {
            let idx = self.family.cell_index(c);
            self.slots[idx] = Some((dtype, group));
        }
        self.parts.push(DlockPart::new(dtype, cells, group));
        true
    }

    fn unplace_last(&mut self) {
        let part = self.parts.pop().expect("a placed part");
        for &c in part.cells() {
            let idx = self.family.cell_index(c);
            self.slots[idx] = None;
        }
    }

    /// Height (largest other-coordinate) of the FF part along line `a`.
    fn ff_height(&self, grid: &Grid, transpose: bool, a: usize) -> Option<usize> {
        let (_, fo) = grid.floors(transpose);
        let (_, to) = grid.tops(transpose);
        (fo..=to)
            .take_while(|&o| {
                matches!(
                    self.at(grid.cell(transpose, a, o)),
                    Some((DlockType::FF, _))
                )
            })
            .last()
    }

    fn first_empty_line(&self, grid: &Grid, transpose: bool) -> usize {
        let (fa, _) = grid.floors(transpose);
        let (ta, _) = grid.tops(transpose);
        (fa..=ta)
            .find(|&a| self.ff_height(grid, transpose, a).is_none())
            .unwrap_or(ta + 1)
    }

    fn place_strip(&mut self, grid: &Grid, strip: Option<&Strip>, transpose: bool) -> bool {
        let Some(s) = strip else { return true };
        let (_, fo) = grid.floors(transpose);
        let dtype = if transpose {
            DlockType::FH
        } else {
            DlockType::HF
        };
        let cells = (fo..=s.top)
            .map(|o| grid.cell(transpose, s.at, o))
            .collect();
        self.place(dtype, cells, PartGroup::Single(s.group))
    }

    fn place_stack(&mut self, grid: &Grid, stack: &Stack, transpose: bool) -> bool {
        let (_, fo) = grid.floors(transpose);
        let dtype = if transpose {
            DlockType::FEps
        } else {
            DlockType::EpsF
        };
        for (k, &h) in stack.heights.iter().enumerate() {
            let a = stack.start + k;
            let cells = (fo..=h).map(|o| grid.cell(transpose, a, o)).collect();
            if !self.place(
                dtype,
                cells,
                PartGroup::Single(NormalSubgroupSk::trivial(a)),
            ) {
                return false;
            }
        }
        true
    }
}

/// Non-increasing row heights, `None` marking rows without FF cells.
fn staircases(grid: &Grid) -> Vec<Vec<Option<usize>>> {
    fn go(grid: &Grid, prefix: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        let rows = grid.m - grid.fl + 1;
        if prefix.len() == rows {
            out.push(prefix.clone());
            return;
        }
        let bound = match prefix.last() {
            None => Some(grid.n),
            Some(h) => *h,
        };
        prefix.push(None);
        go(grid, prefix, out);
        prefix.pop();
        if let Some(bound) = bound {
            for h in grid.fr..=bound {
                prefix.push(Some(h));
                go(grid, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(grid, &mut Vec::new(), &mut out);
    out
}

struct Strip {
    at: usize,
    top: usize,
    group: NormalSubgroupSk,
}

/// The possible `HF` strips (or `FH` when transposed), including none.
fn h_strips(grid: &Grid, state: &State, transpose: bool) -> Result<Vec<Option<Strip>>> {
    let mut out = vec![None];
    let (fa, fo) = grid.floors(transpose);
    let (ta, _) = grid.tops(transpose);
    let a0 = state.first_empty_line(grid, transpose);
    if a0 > ta || a0 < 2 || a0 == fa {
        return Ok(out);
    }
    let Some(below) = state.ff_height(grid, transpose, a0 - 1) else {
        return Ok(out);
    };
    for top in fo.max(1)..=below {
        for group in NormalSubgroupSk::all(a0) {
            if !group.is_trivial() {
                out.push(Some(Strip { at: a0, top, group }));
            }
        }
    }
    Ok(out)
}

struct Stack {
    start: usize,
    heights: Vec<usize>,
}

/// The possible stacks of `εF` rows (or `Fε` columns), including the empty one.
fn eps_stacks(grid: &Grid, state: &State, strip: Option<&Strip>, transpose: bool) -> Vec<Stack> {
    let (fa, fo) = grid.floors(transpose);
    let (ta, to) = grid.tops(transpose);
    let a0 = state.first_empty_line(grid, transpose);
    let (start, bound) = match strip {
        Some(s) => (s.at + 1, s.top),
        None if a0 > fa => match state.ff_height(grid, transpose, a0 - 1) {
            Some(h) => (a0, h),
            None => (a0, to),
        },
        None => (a0, to),
    };
    let mut out = vec![Stack {
        start,
        heights: Vec::new(),
    }];
    fn go(
        start: usize,
        ta: usize,
        lo: usize,
        bound: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Stack>,
    ) {
        let a = start + prefix.len();
        if a > ta {
            return;
        }
        for h in lo..=bound {
            prefix.push(h);
            out.push(Stack {
                start,
                heights: prefix.clone(),
            });
            go(start, ta, lo, h, prefix, out);
            prefix.pop();
        }
    }
    go(start, ta, fo.max(1), bound, &mut Vec::new(), &mut out);
    out
}

fn sweep(
    grid: &Grid,
    state: &mut State,
    free: &[Cell],
    pos: usize,
    out: &mut Vec<DlockLandscape>,
) -> Result<()> {
    let Some(&(i, j)) = free.get(pos) else {
        let l = DlockLandscape::new(grid.family, state.parts.clone())?;
        if l.is_valid() {
            out.push(l);
        }
        return Ok(());
    };
    for (dtype, group) in cell_candidates(grid, state, (i, j))? {
        state.place(dtype, vec![(i, j)], PartGroup::Pair(group));
        sweep(grid, state, free, pos + 1, out)?;
        state.unplace_last();
    }
    Ok(())
}

/// Single-cell parts admissible at `(i, j)` given the parts to its left and
/// below.
fn cell_candidates(
    grid: &Grid,
    state: &State,
    (i, j): Cell,
) -> Result<Vec<(DlockType, NormalSubgroupProduct)>> {
    let mut out = vec![(DlockType::EpsEps, NormalSubgroupProduct::trivial(i, j))];
    let left = if j > grid.fr {
        state.at((i, j - 1))
    } else {
        None
    };
    let below = if i > grid.fl {
        state.at((i - 1, j))
    } else {
        None
    };
    if i >= 2 && j >= 2 {
        for n in all_normal_subgroups_product(i, j)? {
            if n.left_projection().is_trivial() || n.right_projection().is_trivial() {
                continue;
            }
            let left_ok = match left {
                Some((DlockType::FF, _)) => true,
                Some((DlockType::HF, PartGroup::Single(m))) => {
                    n.left_projection().is_subgroup_of(&m)
                }
                _ => false,
            };
            let below_ok = match below {
                Some((DlockType::FF, _)) => true,
                Some((DlockType::FH, PartGroup::Single(m))) => {
                    n.right_projection().is_subgroup_of(&m)
                }
                _ => false,
            };
            if left_ok && below_ok {
                out.push((DlockType::HH, n));
            }
        }
    }
    for transpose in [false, true] {
        let (along, across, at, other, other_floor) = if transpose {
            (below, left, i, j, grid.fr)
        } else {
            (left, below, j, i, grid.fl)
        };
        if at < 2 {
            continue;
        }
        let (strip_h, strip_e, cross_h, cross_single) = if transpose {
            (
                DlockType::FH,
                DlockType::FEps,
                DlockType::HF,
                DlockType::HEps,
            )
        } else {
            (
                DlockType::HF,
                DlockType::EpsF,
                DlockType::FH,
                DlockType::EpsH,
            )
        };
        let along_ok =
            matches!(along, Some((t, _)) if t == DlockType::FF || t == strip_h || t == strip_e);
        if !along_ok {
            continue;
        }
        for inner in NormalSubgroupSk::all(at) {
            if inner.is_trivial() {
                continue;
            }
            let (n, shifted) = if transpose {
                (
                    NormalSubgroupProduct::product(inner, NormalSubgroupSk::trivial(j)),
                    (j > grid.fr).then(|| {
                        NormalSubgroupProduct::product(inner, NormalSubgroupSk::trivial(j - 1))
                    }),
                )
            } else {
                (
                    NormalSubgroupProduct::product(NormalSubgroupSk::trivial(i), inner),
                    (i > grid.fl).then(|| {
                        NormalSubgroupProduct::product(NormalSubgroupSk::trivial(i - 1), inner)
                    }),
                )
            };
            let across_ok = other == other_floor
                || match across {
                    Some((t, _)) if t == DlockType::FF || t == strip_h || t == strip_e => true,
                    Some((t, PartGroup::Single(m))) if t == cross_h => inner.is_subgroup_of(&m),
                    Some((t, PartGroup::Pair(m))) if t == DlockType::HH || t == cross_single => {
                        shifted.is_some_and(|s| s.is_subgroup_of(&m))
                    }
                    _ => false,
                };
            if across_ok {
                let dtype = if transpose {
                    DlockType::HEps
                } else {
                    DlockType::EpsH
                };
                out.push((dtype, n));
            }
        }
    }
    Ok(out)
}
