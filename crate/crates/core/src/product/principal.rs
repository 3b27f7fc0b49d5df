//! Principal congruences on `Q_m × P_n` in closed form.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{normal_closure_product, NormalSubgroupProduct, NormalSubgroupSk};
use crate::monoid::Transformation;
use crate::qn::{principal_qn, CongruenceQn, QnVariant};

use super::{ProductElement, ProductFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrincipalCase {
    /// The generators coincide.
    Identity,
    /// `f = f'`, `g ≠ g'`: `(a,b) ~ (a,d)` for `|a| ≤ fixed_rank` and `b θ d`,
    /// where `θ` is generated by `(g, g')` in the right factor.
    FixedLeft {
        fixed_rank: usize,
        theta: CongruenceQn,
    },
    /// Mirror image of `FixedLeft`.
    FixedRight {
        fixed_rank: usize,
        theta: CongruenceQn,
    },
    /// Neither coordinate pair is H-related: the Rees congruence of the ideal
    /// `I_i × I_k ∪ I_j × I_l`, stored as its two corners.
    Rees { corners: [(usize, usize); 2] },
    /// Left pair not H-related, right pair H-related and distinct. Pairs with
    /// left ranks at most `left_bound` and right ranks at most the rank of
    /// `theta` are related when their right coordinates are `theta`-related.
    HRight {
        left_bound: usize,
        theta: CongruenceQn,
    },
    /// Mirror image of `HRight`.
    HLeft {
        right_bound: usize,
        theta: CongruenceQn,
    },
    /// Both coordinate pairs H-related and distinct, at ranks `(i, k)`, with
    /// joint witness group `group ⊴ S_i × S_k`.
    HBoth {
        ranks: (usize, usize),
        group: NormalSubgroupProduct,
    },
}

impl PrincipalCase {
    pub fn tag(&self) -> &'static str {
        match self {
            PrincipalCase::Identity => "identity",
            PrincipalCase::FixedLeft { .. } => "fixed-left",
            PrincipalCase::FixedRight { .. } => "fixed-right",
            PrincipalCase::Rees { .. } => "rees",
            PrincipalCase::HRight { .. } => "h-right",
            PrincipalCase::HLeft { .. } => "h-left",
            PrincipalCase::HBoth { .. } => "h-both",
        }
    }
}

/// The congruence generated by one pair of product elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrincipalDescription {
    family: ProductFamily,
    generators: (ProductElement, ProductElement),
    case: PrincipalCase,
}

pub fn principal_product(x: &ProductElement, y: &ProductElement) -> Result<PrincipalDescription> {
    if x.family() != y.family() {
        return Err(Error::mismatch(
            format!("{}x{}", x.left.family(), x.right.family()),
            format!("{}x{}", y.left.family(), y.right.family()),
        ));
    }
    let family = ProductFamily::new(x.left.family(), x.right.family())?;
    let (f, g) = (&x.left, &x.right);
    let (f2, g2) = (&y.left, &y.right);
    let case = if x == y {
        PrincipalCase::Identity
    } else if f == f2 {
        PrincipalCase::FixedLeft {
            fixed_rank: f.rank(),
            theta: principal_qn(g, g2)?,
        }
    } else if g == g2 {
        PrincipalCase::FixedRight {
            fixed_rank: g.rank(),
            theta: principal_qn(f, f2)?,
        }
    } else {
        match (f.hclass_witness(f2), g.hclass_witness(g2)) {
            (None, None) => PrincipalCase::Rees {
                corners: [(f.rank(), g.rank()), (f2.rank(), g2.rank())],
            },
            (None, Some(_)) => PrincipalCase::HRight {
                left_bound: f.rank().max(f2.rank()),
                theta: principal_qn(g, g2)?,
            },
            (Some(_), None) => PrincipalCase::HLeft {
                right_bound: g.rank().max(g2.rank()),
                theta: principal_qn(f, f2)?,
            },
            (Some(s1), Some(s2)) => PrincipalCase::HBoth {
                ranks: (f.rank(), g.rank()),
                group: normal_closure_product(&s1, &s2),
            },
        }
    };
    Ok(PrincipalDescription {
        family,
        generators: (x.clone(), y.clone()),
        case,
    })
}

fn theta_rank(theta: &CongruenceQn) -> usize {
    match theta.variant() {
        QnVariant::Universal => theta.family().degree,
        QnVariant::Theta { k, .. } => k,
    }
}

/// `a = c` or `a H c` with witness in `group`.
fn in_orbit(a: &Transformation, c: &Transformation, group: &NormalSubgroupSk) -> bool {
    a == c || a.hclass_witness(c).is_some_and(|s| group.contains(&s))
}

impl PrincipalDescription {
    pub fn family(&self) -> ProductFamily {
        self.family
    }

    pub fn generators(&self) -> &(ProductElement, ProductElement) {
        &self.generators
    }

    pub fn case(&self) -> PrincipalCase {
        self.case
    }

    pub fn tag(&self) -> &'static str {
        self.case.tag()
    }

    /// Membership in the principal congruence.
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
        let (a, b) = (&x.left, &x.right);
        let (c, d) = (&y.left, &y.right);
        match self.case {
            PrincipalCase::Identity => false,
            PrincipalCase::FixedLeft { fixed_rank, theta } => {
                a == c && a.rank() <= fixed_rank && theta.related_unchecked(b, d)
            }
            PrincipalCase::FixedRight { fixed_rank, theta } => {
                b == d && b.rank() <= fixed_rank && theta.related_unchecked(a, c)
            }
            PrincipalCase::Rees { corners } => {
                let inside =
                    |(r, s): (usize, usize)| corners.iter().any(|&(i, k)| r <= i && s <= k);
                inside(x.ranks()) && inside(y.ranks())
            }
            PrincipalCase::HRight { left_bound, theta } => {
                let k = theta_rank(&theta);
                a.rank() <= left_bound
                    && c.rank() <= left_bound
                    && b.rank() <= k
                    && d.rank() <= k
                    && theta.related_unchecked(b, d)
            }
            PrincipalCase::HLeft { right_bound, theta } => {
                let k = theta_rank(&theta);
                b.rank() <= right_bound
                    && d.rank() <= right_bound
                    && a.rank() <= k
                    && c.rank() <= k
                    && theta.related_unchecked(a, c)
            }
            PrincipalCase::HBoth {
                ranks: (i, k),
                group,
            } => {
                let (ra, rb) = x.ranks();
                let (rc, rd) = y.ranks();
                let low_left = ra < i && rc < i;
                let low_right = rb < k && rd < k;
                let top_left = ra == i && rc == i;
                let top_right = rb == k && rd == k;
                if low_left && low_right {
                    true
                } else if top_left && low_right {
                    in_orbit(a, c, &group.left_projection())
                } else if low_left && top_right {
                    in_orbit(b, d, &group.right_projection())
                } else if top_left && top_right {
                    match (a.hclass_witness(c), b.hclass_witness(d)) {
                        (Some(s), Some(t)) => group.contains(&s, &t),
                        _ => false,
                    }
                } else {
                    false
                }
            }
        }
    }

    /// For the fixed-coordinate cases, the relation obtained by reading the
    /// explicit clause list literally: when the varying pair is H-related, the
    /// clause for the top rank omits the bound on the fixed coordinate. Other
    /// cases return `None`.
    pub fn literal_clause_related(&self, x: &ProductElement, y: &ProductElement) -> Option<bool> {
        let (fixed_rank, theta, (p, p2), (q, q2)) = match self.case {
            PrincipalCase::FixedLeft { fixed_rank, theta } => {
                (fixed_rank, theta, (&x.left, &y.left), (&x.right, &y.right))
            }
            PrincipalCase::FixedRight { fixed_rank, theta } => {
                (fixed_rank, theta, (&x.right, &y.right), (&x.left, &y.left))
            }
            _ => return None,
        };
        if x == y {
            return Some(true);
        }
        if p != p2 {
            return Some(false);
        }
        let within = p.rank() <= fixed_rank;
        Some(match theta.variant() {
            QnVariant::Theta { k, group } if self.varying_pair_h_related() => {
                let top = q.rank() == k
                    && q2.rank() == k
                    && q.hclass_witness(q2).is_some_and(|s| group.contains(&s));
                top || (within && q.rank() < k && q2.rank() < k)
            }
            _ => within && theta.related_unchecked(q, q2),
        })
    }

    fn varying_pair_h_related(&self) -> bool {
        let (x, y) = &self.generators;
        match self.case {
            PrincipalCase::FixedLeft { .. } => x.right.h_related(&y.right),
            PrincipalCase::FixedRight { .. } => x.left.h_related(&y.left),
            _ => false,
        }
    }
}

impl fmt::Display for PrincipalDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())?;
        match self.case {
            PrincipalCase::Identity => Ok(()),
            PrincipalCase::FixedLeft { fixed_rank, theta } => {
                write!(f, ": left ranks <= {fixed_rank}, right {theta}")
            }
            PrincipalCase::FixedRight { fixed_rank, theta } => {
                write!(f, ": right ranks <= {fixed_rank}, left {theta}")
            }
            PrincipalCase::Rees {
                corners: [(i, k), (j, l)],
            } => {
                write!(f, ": ideal I{i}xI{k} u I{j}xI{l}")
            }
            PrincipalCase::HRight { left_bound, theta } => {
                write!(f, ": left ranks <= {left_bound}, right {theta}")
            }
            PrincipalCase::HLeft { right_bound, theta } => {
                write!(f, ": right ranks <= {right_bound}, left {theta}")
            }
            PrincipalCase::HBoth {
                ranks: (i, k),
                group,
            } => {
                write!(f, ": ranks ({i},{k}), N={group}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ProductForm;

    fn fam() -> ProductFamily {
        "T2xT2".parse().unwrap()
    }

    fn el(s: &str) -> ProductElement {
        fam().parse_element(s).unwrap()
    }

    #[test]
    fn dispatch_examples() {
        let d = principal_product(&el("([1,1],[1,2])"), &el("([2,2],[2,1])")).unwrap();
        assert_eq!(d.tag(), "h-right");
        let d = principal_product(&el("([1,2],[1,2])"), &el("([2,1],[2,1])")).unwrap();
        match d.case() {
            PrincipalCase::HBoth { group, .. } => {
                assert_eq!(group.form(), ProductForm::ParityDiagonal)
            }
            other => panic!("unexpected case {other:?}"),
        }
        let x = el("([1,2],[1,1])");
        assert_eq!(principal_product(&x, &x).unwrap().tag(), "identity");
        let d = principal_product(&x, &el("([1,2],[2,2])")).unwrap();
        assert_eq!(d.tag(), "fixed-left");
    }

    #[test]
    fn h_both_classes() {
        let d = principal_product(&el("([1,2],[1,2])"), &el("([2,1],[2,1])")).unwrap();
        assert!(d
            .related(&el("([1,2],[2,1])"), &el("([2,1],[1,2])"))
            .unwrap());
        assert!(!d
            .related(&el("([1,2],[1,2])"), &el("([1,2],[2,1])"))
            .unwrap());
        assert!(d
            .related(&el("([1,1],[1,2])"), &el("([2,2],[2,1])"))
            .unwrap());
    }

    #[test]
    fn mismatch_rejected() {
        let x = el("([1,1],[1,2])");
        let other: ProductFamily = "T2xPT2".parse().unwrap();
        let y = other.parse_element("([1,1],[1,2])").unwrap();
        assert!(principal_product(&x, &y).is_err());
    }
}
