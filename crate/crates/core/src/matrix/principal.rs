//! Principal congruences on `F_m × F_n` in closed form.
//!
//! Each coordinate pair of the generators is classified as a scalar multiple
//! (`K' = ρK`, which includes `K = K'`), H-related but not scalar, or not
//! H-related; the pair of classes selects the case.

use std::fmt;

use crate::error::{Error, Result};

use super::congruence::{principal_fn, CongruenceFn};
use super::field::{self, ScalarGroup};
use super::gl::{associated_normal_subgroup, PairGroup};
use super::linalg::{Matrix, MatrixFacts};
use super::{MatrixPair, MatrixProductFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixPrincipalCase {
    Identity,
    /// `K' = λK`, `L' = νL`: `(M,N) ~ (λ'M, ν'N)` for `|M| ≤ i`, `|N| ≤ j`
    /// and `(λ', ν')` in the cyclic group `scalars` generated by `(λ, ν)`.
    ScalarPair {
        ranks: (usize, usize),
        scalars: Vec<(u8, u8)>,
    },
    /// Neither coordinate pair is H-related: the Rees congruence of the
    /// ideal generated by both generators, stored as its corners.
    Rees {
        corners: [(usize, usize); 2],
    },
    /// Left pair not H-related, right pair H-related: pairs with left ranks
    /// at most `left_bound` and right ranks at most `right_bound` are related
    /// when their right coordinates are `theta`-related.
    HRight {
        left_bound: usize,
        right_bound: usize,
        theta: CongruenceFn,
    },
    /// Mirror image of `HRight`.
    HLeft {
        left_bound: usize,
        right_bound: usize,
        theta: CongruenceFn,
    },
    /// Left pair scalar, right pair H-related but not scalar, at ranks
    /// `(i, j)`. `group ⊴ GL(1) × GL(j)` is the normal closure of the joint
    /// witness and `scalars` is generated by the left scalar.
    ScalarH {
        ranks: (usize, usize),
        scalars: ScalarGroup,
        group: PairGroup,
    },
    /// Mirror image of `ScalarH`; `group` still lists the scalar coordinate
    /// first.
    HScalar {
        ranks: (usize, usize),
        scalars: ScalarGroup,
        group: PairGroup,
    },
    /// Both pairs H-related and neither scalar, at ranks `(i, j)`, with the
    /// associated normal subgroup of `GL(i) × GL(j)`.
    HBoth {
        ranks: (usize, usize),
        group: PairGroup,
    },
}

impl MatrixPrincipalCase {
    pub fn tag(&self) -> &'static str {
        match self {
            MatrixPrincipalCase::Identity => "identity",
            MatrixPrincipalCase::ScalarPair { .. } => "scalar-pair",
            MatrixPrincipalCase::Rees { .. } => "rees",
            MatrixPrincipalCase::HRight { .. } => "h-right",
            MatrixPrincipalCase::HLeft { .. } => "h-left",
            MatrixPrincipalCase::ScalarH { .. } => "scalar-h",
            MatrixPrincipalCase::HScalar { .. } => "h-scalar",
            MatrixPrincipalCase::HBoth { .. } => "h-both",
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum PairClass {
    Scalar(u8),
    H,
    None,
}

fn classify(a: &Matrix, b: &Matrix) -> PairClass {
    if let Some(rho) = b.scalar_factor(a) {
        PairClass::Scalar(rho)
    } else if a.h_related(b) {
        PairClass::H
    } else {
        PairClass::None
    }
}

/// `s1 · b · s2` in `GL(rank a)` for the reducer of `a`.
fn reduced(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    MatrixFacts::of(*a).reduce(b).ok_or(Error::NotHRelated)
}

/// The congruence on `F_m × F_n` generated by one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPrincipal {
    family: MatrixProductFamily,
    generators: (MatrixPair, MatrixPair),
    case: MatrixPrincipalCase,
}

pub fn principal_fmfn(x: &MatrixPair, y: &MatrixPair) -> Result<MatrixPrincipal> {
    let family = x.family()?;
    if y.family()? != family {
        return Err(Error::mismatch(family, y.family()?));
    }
    let p = family.p();
    let (k, l) = (&x.left, &x.right);
    let (k2, l2) = (&y.left, &y.right);
    let ranks = (k.rank(), l.rank());
    let case = if x == y {
        MatrixPrincipalCase::Identity
    } else {
        match (classify(k, k2), classify(l, l2)) {
            (PairClass::Scalar(lambda), PairClass::Scalar(nu)) => {
                let mut scalars = Vec::new();
                let mut cur = (1, 1);
                loop {
                    scalars.push(cur);
                    cur = (field::mul(p, cur.0, lambda), field::mul(p, cur.1, nu));
                    if cur == (1, 1) {
                        break;
                    }
                }
                MatrixPrincipalCase::ScalarPair { ranks, scalars }
            }
            (PairClass::None, PairClass::None) => MatrixPrincipalCase::Rees {
                corners: [ranks, (k2.rank(), l2.rank())],
            },
            (PairClass::None, _) => MatrixPrincipalCase::HRight {
                left_bound: k.rank().max(k2.rank()),
                right_bound: l.rank(),
                theta: principal_fn(l, l2)?,
            },
            (_, PairClass::None) => MatrixPrincipalCase::HLeft {
                left_bound: k.rank(),
                right_bound: l.rank().max(l2.rank()),
                theta: principal_fn(k, k2)?,
            },
            (PairClass::Scalar(rho), PairClass::H) => MatrixPrincipalCase::ScalarH {
                ranks,
                scalars: ScalarGroup::generated_by(p, rho),
                group: PairGroup::normal_closure(&Matrix::scalar(p, 1, rho), &reduced(l, l2)?)?,
            },
            (PairClass::H, PairClass::Scalar(rho)) => MatrixPrincipalCase::HScalar {
                ranks,
                scalars: ScalarGroup::generated_by(p, rho),
                group: PairGroup::normal_closure(&Matrix::scalar(p, 1, rho), &reduced(k, k2)?)?,
            },
            (PairClass::H, PairClass::H) => MatrixPrincipalCase::HBoth {
                ranks,
                group: associated_normal_subgroup(k, l, k2, l2)?,
            },
        }
    };
    Ok(MatrixPrincipal {
        family,
        generators: (*x, *y),
        case,
    })
}

impl MatrixPrincipal {
    pub fn family(&self) -> MatrixProductFamily {
        self.family
    }

    pub fn generators(&self) -> &(MatrixPair, MatrixPair) {
        &self.generators
    }

    pub fn case(&self) -> &MatrixPrincipalCase {
        &self.case
    }

    pub fn tag(&self) -> &'static str {
        self.case.tag()
    }

    pub fn related(&self, x: &MatrixPair, y: &MatrixPair) -> Result<bool> {
        for e in [x, y] {
            let f = e.family()?;
            if f != self.family {
                return Err(Error::mismatch(self.family, f));
            }
        }
        Ok(self.related_facts(&PairFacts::of(x), &PairFacts::of(y)))
    }

    pub(crate) fn related_facts(&self, x: &PairFacts, y: &PairFacts) -> bool {
        if x.left.matrix == y.left.matrix && x.right.matrix == y.right.matrix {
            return true;
        }
        match &self.case {
            MatrixPrincipalCase::Identity => false,
            MatrixPrincipalCase::ScalarPair {
                ranks: (i, j),
                scalars,
            } => {
                x.left.rank <= *i
                    && x.right.rank <= *j
                    && scalars.iter().any(|&(a, b)| {
                        y.left.matrix == x.left.matrix.scale(a)
                            && y.right.matrix == x.right.matrix.scale(b)
                    })
            }
            MatrixPrincipalCase::Rees { corners } => {
                let inside = |f: &PairFacts| {
                    corners
                        .iter()
                        .any(|&(i, j)| f.left.rank <= i && f.right.rank <= j)
                };
                inside(x) && inside(y)
            }
            MatrixPrincipalCase::HRight {
                left_bound,
                right_bound,
                theta,
            } => bounded_theta(
                [&x.left, &y.left],
                [&x.right, &y.right],
                *left_bound,
                *right_bound,
                theta,
            ),
            MatrixPrincipalCase::HLeft {
                left_bound,
                right_bound,
                theta,
            } => bounded_theta(
                [&x.right, &y.right],
                [&x.left, &y.left],
                *right_bound,
                *left_bound,
                theta,
            ),
            MatrixPrincipalCase::ScalarH {
                ranks,
                scalars,
                group,
            } => scalar_h(
                [&x.left, &y.left],
                [&x.right, &y.right],
                *ranks,
                scalars,
                group,
            ),
            MatrixPrincipalCase::HScalar {
                ranks: (i, j),
                scalars,
                group,
            } => scalar_h(
                [&x.right, &y.right],
                [&x.left, &y.left],
                (*j, *i),
                scalars,
                group,
            ),
            MatrixPrincipalCase::HBoth { ranks, group } => h_both(x, y, *ranks, group),
        }
    }
}

/// Both coordinates of one element, with their facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairFacts {
    pub left: MatrixFacts,
    pub right: MatrixFacts,
}

impl PairFacts {
    pub fn of(x: &MatrixPair) -> Self {
        PairFacts {
            left: MatrixFacts::of(x.left),
            right: MatrixFacts::of(x.right),
        }
    }
}

fn bounded_theta(
    free: [&MatrixFacts; 2],
    tied: [&MatrixFacts; 2],
    free_bound: usize,
    tied_bound: usize,
    theta: &CongruenceFn,
) -> bool {
    free.iter().all(|f| f.rank <= free_bound)
        && tied.iter().all(|f| f.rank <= tied_bound)
        && theta.related_facts(tied[0], tied[1])
}

/// The scalar coordinate is `s`, the H coordinate is `h`.
fn scalar_h(
    s: [&MatrixFacts; 2],
    h: [&MatrixFacts; 2],
    (i, j): (usize, usize),
    scalars: &ScalarGroup,
    group: &PairGroup,
) -> bool {
    if s[0].rank > i {
        return false;
    }
    let Some(lambda) = s[1].matrix.scalar_factor(&s[0].matrix) else {
        return false;
    };
    let (r, r2) = (h[0].rank, h[1].rank);
    if r == j && r2 == j {
        let Some(g) = h[0].reduce(&h[1].matrix) else {
            return false;
        };
        if s[0].rank == 0 {
            group.right_contains(&g)
        } else {
            let p = s[0].matrix.characteristic();
            group.contains(&Matrix::scalar(p, 1, lambda), &g)
        }
    } else {
        r < j && r2 < j && scalars.contains(lambda)
    }
}

fn h_both(x: &PairFacts, y: &PairFacts, (i, j): (usize, usize), group: &PairGroup) -> bool {
    let left_top = x.left.rank == i && y.left.rank == i;
    let left_low = x.left.rank < i && y.left.rank < i;
    let right_top = x.right.rank == j && y.right.rank == j;
    let right_low = x.right.rank < j && y.right.rank < j;
    match (left_top, left_low, right_top, right_low) {
        (true, _, true, _) => match (
            x.left.reduce(&y.left.matrix),
            x.right.reduce(&y.right.matrix),
        ) {
            (Some(a), Some(b)) => group.contains(&a, &b),
            _ => false,
        },
        (true, _, _, true) => x
            .left
            .reduce(&y.left.matrix)
            .is_some_and(|a| group.left_contains(&a)),
        (_, true, true, _) => x
            .right
            .reduce(&y.right.matrix)
            .is_some_and(|b| group.right_contains(&b)),
        (_, true, _, true) => true,
        _ => false,
    }
}

impl fmt::Display for MatrixPrincipal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        match &self.case {
            MatrixPrincipalCase::Identity => Ok(()),
            MatrixPrincipalCase::ScalarPair {
                ranks: (i, j),
                scalars,
            } => {
                let gen = scalars.get(1).copied().unwrap_or((1, 1));
                write!(f, ": ranks <= ({i},{j}), scalars <({},{})>", gen.0, gen.1)
            }
            MatrixPrincipalCase::Rees {
                corners: [(i, k), (j, l)],
            } => write!(f, ": ideal I{i}xI{k} u I{j}xI{l}"),
            MatrixPrincipalCase::HRight {
                left_bound,
                right_bound,
                theta,
            } => write!(
                f,
                ": left ranks <= {left_bound}, right ranks <= {right_bound}, right {theta}"
            ),
            MatrixPrincipalCase::HLeft {
                left_bound,
                right_bound,
                theta,
            } => write!(
                f,
                ": left ranks <= {left_bound}, right ranks <= {right_bound}, left {theta}"
            ),
            MatrixPrincipalCase::ScalarH {
                ranks: (i, j),
                scalars,
                group,
            }
            | MatrixPrincipalCase::HScalar {
                ranks: (i, j),
                scalars,
                group,
            } => write!(
                f,
                ": ranks ({i},{j}), scalars {scalars}, group of order {}",
                group.order()
            ),
            MatrixPrincipalCase::HBoth {
                ranks: (i, j),
                group,
            } => write!(f, ": ranks ({i},{j}), group of order {}", group.order()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(s: &str) -> MatrixPair {
        MatrixPair::parse(s, None).unwrap()
    }

    #[test]
    fn case_selection() {
        let cases = [
            ("1,0;0,1|1,0;0,1@GF(2)", "1,0;0,1|1,0;0,1@GF(2)", "identity"),
            ("1,0;0,1|1,0;0,0@GF(2)", "1,0;0,0|0,0;0,1@GF(2)", "rees"),
            ("1,0;0,1|1,0;0,1@GF(2)", "1,0;0,0|0,1;1,0@GF(2)", "h-right"),
            ("0,1;1,0|1,0;0,1@GF(2)", "1,0;0,1|0,0;0,0@GF(2)", "h-left"),
            ("1,0;0,1|1,0;0,1@GF(2)", "0,1;1,0|0,1;1,0@GF(2)", "h-both"),
            (
                "1,0;0,1|1,0;0,1@GF(3)",
                "2,0;0,2|1,0;0,1@GF(3)",
                "scalar-pair",
            ),
            ("1,0;0,1|1,0;0,1@GF(3)", "2,0;0,2|0,1;1,0@GF(3)", "scalar-h"),
            ("0,1;1,0|1,0;0,0@GF(3)", "1,0;0,1|1,0;0,0@GF(3)", "h-scalar"),
        ];
        for (a, b, tag) in cases {
            assert_eq!(
                principal_fmfn(&pair(a), &pair(b)).unwrap().tag(),
                tag,
                "{a} / {b}"
            );
        }
    }

    #[test]
    fn scalar_pair_orbit() {
        let d = principal_fmfn(
            &pair("1,0;0,1|1,0;0,1@GF(3)"),
            &pair("2,0;0,2|2,0;0,2@GF(3)"),
        )
        .unwrap();
        assert!(d
            .related(
                &pair("1,1;0,0|0,1;0,0@GF(3)"),
                &pair("2,2;0,0|0,2;0,0@GF(3)")
            )
            .unwrap());
        assert!(!d
            .related(
                &pair("1,1;0,0|0,1;0,0@GF(3)"),
                &pair("2,2;0,0|0,1;0,0@GF(3)")
            )
            .unwrap());
    }

    #[test]
    fn family_mismatch_is_an_error() {
        assert!(principal_fmfn(&pair("1|1@GF(2)"), &pair("1|1@GF(3)")).is_err());
    }
}
