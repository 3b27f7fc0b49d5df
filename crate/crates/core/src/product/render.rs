//! Text diagrams and JSON for landscapes.
//!
//! Each cell is drawn as a token naming the type of its part, with the group
//! in brackets where it carries information: `FF`, `HF[S]`, `eF`, `FH[A]`,
//! `Fe`, `HH[parity]`, `eH[eps,S]`, `He[A,eps]`, `ee`. Parts are recovered
//! from the tokens alone, so `parse(render(l)) == l`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{NormalSubgroupProduct, NormalSubgroupSk};

use super::landscape::{Cell, DlockLandscape, DlockPart, DlockType, PartGroup};
use super::ProductFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Rank levels `i + j` from the top down, as in the usual D-class picture.
    #[default]
    Diamond,
    /// Rows `i` from the top down, columns `j` left to right.
    Matrix,
}

impl Layout {
    fn name(self) -> &'static str {
        match self {
            Layout::Diamond => "diamond",
            Layout::Matrix => "matrix",
        }
    }
}

fn token(part: &DlockPart) -> String {
    let code = part.dtype().code();
    match (part.dtype(), part.group()) {
        (DlockType::FF | DlockType::EpsF | DlockType::FEps | DlockType::EpsEps, _) => {
            code.to_string()
        }
        (_, PartGroup::None) => code.to_string(),
        (_, g) => format!("{code}[{g}]"),
    }
}

fn levels(family: ProductFamily) -> Vec<(usize, Vec<Cell>)> {
    let cells = family.cells();
    let lo = cells.iter().map(|(i, j)| i + j).min().unwrap_or(0);
    let hi = cells.iter().map(|(i, j)| i + j).max().unwrap_or(0);
    (lo..=hi)
        .rev()
        .map(|l| {
            let mut on: Vec<Cell> = cells.iter().copied().filter(|(i, j)| i + j == l).collect();
            on.sort_by_key(|&(i, j)| j as isize - i as isize);
            (l, on)
        })
        .collect()
}

pub fn render(landscape: &DlockLandscape, layout: Layout) -> String {
    let family = landscape.family();
    let tok = |c: Cell| token(landscape.part_at(c).expect("cell inside grid"));
    let mut out = format!("landscape {family} {}\n", layout.name());
    match layout {
        Layout::Matrix => {
            let width = family
                .cells()
                .into_iter()
                .map(|c| tok(c).len())
                .max()
                .unwrap_or(2);
            for i in family.rows().rev() {
                let row: Vec<String> = family
                    .cols()
                    .map(|j| format!("{:<width$}", tok((i, j))))
                    .collect();
                out.push_str(&format!("{i}: {}\n", row.join(" ").trim_end()));
            }
        }
        Layout::Diamond => {
            let lv = levels(family);
            let width = family
                .cells()
                .into_iter()
                .map(|c| tok(c).len())
                .max()
                .unwrap_or(2)
                + 1;
            let widest = lv.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
            let label = lv
                .iter()
                .map(|(l, _)| l.to_string().len())
                .max()
                .unwrap_or(1);
            for (l, cells) in lv {
                let indent = (widest - cells.len()) * width / 2;
                let body: String = cells
                    .iter()
                    .map(|&c| format!("{:<width$}", tok(c)))
                    .collect();
                out.push_str(&format!(
                    "{l:>label$}: {}{}\n",
                    " ".repeat(indent),
                    body.trim_end()
                ));
            }
        }
    }
    out
}

/// Parses the output of [`render`] in either layout. The result partitions
/// the grid but is not validated.
pub fn parse(input: &str) -> Result<DlockLandscape> {
    let mut lines = input.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(input, 0, "empty landscape text"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (family, layout) = match words.as_slice() {
        ["landscape", fam, layout] => {
            let family = ProductFamily::from_str(fam)?;
            let layout = match *layout {
                "matrix" => Layout::Matrix,
                "diamond" => Layout::Diamond,
                other => return Err(Error::parse(header, 0, format!("unknown layout {other:?}"))),
            };
            (family, layout)
        }
        _ => {
            return Err(Error::parse(
                header,
                0,
                "expected 'landscape <family> <layout>'",
            ))
        }
    };
    let expected: Vec<(usize, Vec<Cell>)> = match layout {
        Layout::Matrix => family
            .rows()
            .rev()
            .map(|i| (i, family.cols().map(|j| (i, j)).collect()))
            .collect(),
        Layout::Diamond => levels(family),
    };
    let mut tokens: Vec<(Cell, String)> = Vec::new();
    let mut seen = 0;
    for line in lines {
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(line, 0, "expected '<index>: tokens'"))?;
        let label: usize = label
            .trim()
            .parse()
            .map_err(|_| Error::parse(line, 0, "expected a numeric line label"))?;
        let (want, cells) = expected
            .get(seen)
            .ok_or_else(|| Error::parse(line, 0, "too many lines"))?;
        if label != *want {
            return Err(Error::parse(line, 0, format!("expected line {want}")));
        }
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.len() != cells.len() {
            return Err(Error::parse(
                line,
                0,
                format!("expected {} cells, found {}", cells.len(), toks.len()),
            ));
        }
        tokens.extend(
            cells
                .iter()
                .copied()
                .zip(toks.into_iter().map(String::from)),
        );
        seen += 1;
    }
    if seen != expected.len() {
        return Err(Error::parse(input, input.len(), "missing lines"));
    }
    tokens.sort();
    let mut typed = Vec::with_capacity(tokens.len());
    for (cell, tok) in &tokens {
        typed.push((*cell, parse_token(tok, *cell)?));
    }
    assemble(family, typed)
}

fn parse_token(tok: &str, (i, j): Cell) -> Result<(DlockType, PartGroup)> {
    let (code, group) = match tok.split_once('[') {
        Some((c, rest)) => {
            let g = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::parse(tok, tok.len(), "missing ']'"))?;
            (c, Some(g))
        }
        None => (tok, None),
    };
    let dtype = DlockType::from_code(code)
        .ok_or_else(|| Error::parse(tok, 0, format!("unknown part type {code:?}")))?;
    group_for(dtype, group, (i, j)).map(|g| (dtype, g))
}

/// Group of a part from its literal, with the implied defaults for types that
/// carry no literal.
fn group_for(dtype: DlockType, literal: Option<&str>, (i, j): Cell) -> Result<PartGroup> {
    let need = |what: &str| Error::parse(literal.unwrap_or(""), 0, format!("{dtype} needs {what}"));
    Ok(match dtype {
        DlockType::FF => PartGroup::None,
        DlockType::EpsF => PartGroup::Single(match literal {
            Some(g) => NormalSubgroupSk::parse(i, g)?,
            None => NormalSubgroupSk::trivial(i),
        }),
        DlockType::FEps => PartGroup::Single(match literal {
            Some(g) => NormalSubgroupSk::parse(j, g)?,
            None => NormalSubgroupSk::trivial(j),
        }),
        DlockType::HF => PartGroup::Single(NormalSubgroupSk::parse(
            i,
            literal.ok_or_else(|| need("a group"))?,
        )?),
        DlockType::FH => PartGroup::Single(NormalSubgroupSk::parse(
            j,
            literal.ok_or_else(|| need("a group"))?,
        )?),
        DlockType::EpsEps => PartGroup::Pair(match literal {
            Some(g) => NormalSubgroupProduct::parse(i, j, g)?,
            None => NormalSubgroupProduct::trivial(i, j),
        }),
        _ => PartGroup::Pair(NormalSubgroupProduct::parse(
            i,
            j,
            literal.ok_or_else(|| need("a group"))?,
        )?),
    })
}

/// Groups typed cells into parts: FF, HF and FH each form one part, `εF`
/// cells group by row, `Fε` cells by column, and the rest are single cells.
fn assemble(
    family: ProductFamily,
    typed: Vec<(Cell, (DlockType, PartGroup))>,
) -> Result<DlockLandscape> {
    let mut parts: Vec<DlockPart> = Vec::new();
    let mut open: Vec<((DlockType, usize), usize)> = Vec::new();
    for ((i, j), (dtype, group)) in typed {
        let key = match dtype {
            DlockType::FF | DlockType::HF | DlockType::FH => Some((dtype, 0)),
            DlockType::EpsF => Some((dtype, i)),
            DlockType::FEps => Some((dtype, j)),
            _ => None,
        };
        match key.and_then(|k| open.iter().find(|(ok, _)| *ok == k).map(|&(_, idx)| idx)) {
            Some(idx) => {
                if parts[idx].group() != group {
                    return Err(Error::InvalidElement(format!(
                        "cells of one {dtype} part carry different groups"
                    )));
                }
                let mut cells = parts[idx].cells().to_vec();
                cells.push((i, j));
                parts[idx] = DlockPart::new(dtype, cells, group);
            }
            None => {
                if let Some(k) = key {
                    open.push((k, parts.len()));
                }
                parts.push(DlockPart::new(dtype, vec![(i, j)], group));
            }
        }
    }
    DlockLandscape::new(family, parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandscapeJson {
    pub families: [String; 2],
    pub parts: Vec<PartJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub cells: Vec<[usize; 2]>,
    #[serde(rename = "type")]
    pub dtype: String,
    pub group: Option<String>,
}

impl From<&DlockLandscape> for LandscapeJson {
    fn from(l: &DlockLandscape) -> Self {
        let family = l.family();
        LandscapeJson {
            families: [family.left.to_string(), family.right.to_string()],
            parts: l
                .parts()
                .iter()
                .map(|p| PartJson {
                    cells: p.cells().iter().map(|&(i, j)| [i, j]).collect(),
                    dtype: p.dtype().code().to_string(),
                    group: match p.group() {
                        PartGroup::None => None,
                        g => Some(g.to_string()),
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<&LandscapeJson> for DlockLandscape {
    type Error = Error;

    fn try_from(j: &LandscapeJson) -> Result<Self> {
        let family = ProductFamily::new(j.families[0].parse()?, j.families[1].parse()?)?;
        let mut parts = Vec::with_capacity(j.parts.len());
        for p in &j.parts {
            let dtype = DlockType::from_code(&p.dtype)
                .ok_or_else(|| Error::parse(&p.dtype, 0, "unknown part type"))?;
            let cells: Vec<Cell> = p.cells.iter().map(|&[a, b]| (a, b)).collect();
            let first = *cells
                .iter()
                .min()
                .ok_or_else(|| Error::InvalidElement("a part without cells".into()))?;
            // Strip groups live in the degree of the fixed coordinate.
            let anchor = match dtype {
                DlockType::HF | DlockType::EpsF => (first.0, 0),
                DlockType::FH | DlockType::FEps => (0, first.1),
                _ => first,
            };
            let group = group_for(dtype, p.group.as_deref(), anchor)?;
            parts.push(DlockPart::new(dtype, cells, group));
        }
        DlockLandscape::new(family, parts)
    }
}

pub fn to_json(l: &DlockLandscape) -> String {
    serde_json::to_string_pretty(&LandscapeJson::from(l)).expect("landscape JSON is serialisable")
}

pub fn from_json(input: &str) -> Result<DlockLandscape> {
    let j: LandscapeJson =
        serde_json::from_str(input).map_err(|e| Error::parse(input, e.column(), e.to_string()))?;
    DlockLandscape::try_from(&j)
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
