//! Congruences on a single monoid `Q_n`.
//!
//! Every non-universal congruence is some `θ(k, N)`: the identity above rank
//! `k`, universal on ranks below `k`, and on rank `k` it relates `f` and `g`
//! exactly when `f H g` and `g = f·σ` with `σ ∈ N`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{normal_closure_sk, NormalSubgroupSk};
use crate::monoid::{MonoidFamily, Transformation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QnVariant {
    Universal,
    Theta { k: usize, group: NormalSubgroupSk },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceQn {
    family: MonoidFamily,
    variant: QnVariant,
}

impl CongruenceQn {
    pub fn universal(family: MonoidFamily) -> Self {
        CongruenceQn {
            family,
            variant: QnVariant::Universal,
        }
    }

    /// `θ(k, N)` with `1 ≤ k ≤ n` and `N ⊴ S_k`.
    pub fn theta(family: MonoidFamily, k: usize, group: NormalSubgroupSk) -> Result<Self> {
        if k == 0 || k > family.degree {
            return Err(Error::InvalidParameters(format!(
                "theta({k},{group}) needs 1 <= k <= {}",
                family.degree
            )));
        }
        if group.degree() != k {
            return Err(Error::InvalidParameters(format!(
                "theta({k},N) needs N inside S_{k}, got a subgroup of S_{}",
                group.degree()
            )));
        }
        Ok(CongruenceQn {
            family,
            variant: QnVariant::Theta { k, group },
        })
    }

    /// The identity congruence `θ(1, ε)`.
    pub fn identity(family: MonoidFamily) -> Self {
        CongruenceQn {
            family,
            variant: QnVariant::Theta {
                k: 1,
                group: NormalSubgroupSk::trivial(1),
            },
        }
    }

    /// Rees congruence by the ideal of elements of rank at most `j`.
    pub fn rees(family: MonoidFamily, j: usize) -> Self {
        if j >= family.degree {
            Self::universal(family)
        } else {
            CongruenceQn {
                family,
                variant: QnVariant::Theta {
                    k: j + 1,
                    group: NormalSubgroupSk::trivial(j + 1),
                },
            }
        }
    }

    pub fn family(&self) -> MonoidFamily {
        self.family
    }

    pub fn variant(&self) -> QnVariant {
        self.variant
    }

    pub fn is_universal(&self) -> bool {
        self.variant == QnVariant::Universal
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.variant, QnVariant::Theta { k: 1, .. })
    }

    pub fn related(&self, f: &Transformation, g: &Transformation) -> Result<bool> {
        if f.family() != self.family {
            return Err(Error::mismatch(self.family, f.family()));
        }
        if g.family() != self.family {
            return Err(Error::mismatch(self.family, g.family()));
        }
        Ok(self.related_unchecked(f, g))
    }

    pub(crate) fn related_unchecked(&self, f: &Transformation, g: &Transformation) -> bool {
        match self.variant {
            QnVariant::Universal => true,
            QnVariant::Theta { k, group } => {
                if f == g {
                    return true;
                }
                let (rf, rg) = (f.rank(), g.rank());
                if rf < k && rg < k {
                    return true;
                }
                rf == k
                    && rg == k
                    && f.hclass_witness(g)
                        .is_some_and(|sigma| group.contains(&sigma))
            }
        }
    }

    /// Position in the chain of all congruences of `Q_n`; inclusion of
    /// congruences is comparison of positions.
    pub fn chain_key(&self) -> (usize, usize) {
        match self.variant {
            QnVariant::Universal => (usize::MAX, 0),
            QnVariant::Theta { k, group } => (k, group.kind() as usize),
        }
    }

    pub fn is_subcongruence_of(&self, other: &CongruenceQn) -> bool {
        self.family == other.family && self.chain_key() <= other.chain_key()
    }

    /// Parses `iota`, `universal` or `theta(k,N)`.
    pub fn parse(family: MonoidFamily, input: &str) -> Result<Self> {
        let t = input.trim();
        match t {
            "iota" => return Ok(Self::identity(family)),
            "universal" | "omega" => return Ok(Self::universal(family)),
            _ => {}
        }
        let inner = t
            .strip_prefix("theta(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(input, 0, "expected iota, universal or theta(k,N)"))?;
        let (k, n) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(input, 6, "expected theta(k,N)"))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::parse(input, 6, "expected a rank"))?;
        let group = NormalSubgroupSk::parse(k, n)?;
        Self::theta(family, k, group).map_err(|e| Error::parse(input, 0, e.to_string()))
    }
}

impl fmt::Display for CongruenceQn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            QnVariant::Universal => f.write_str("universal"),
            QnVariant::Theta { k: 1, .. } => f.write_str("iota"),
            QnVariant::Theta { k, group } => write!(f, "theta({k},{group})"),
        }
    }
}

/// The congruence generated by the single pair `(f, g)`.
pub fn principal_qn(f: &Transformation, g: &Transformation) -> Result<CongruenceQn> {
    if f.family() != g.family() {
        return Err(Error::mismatch(f.family(), g.family()));
    }
    let family = f.family();
    if f == g {
        return Ok(CongruenceQn::identity(family));
    }
    if let Some(sigma) = f.hclass_witness(g) {
        return CongruenceQn::theta(family, g.rank(), normal_closure_sk(&sigma));
    }
    Ok(CongruenceQn::rees(family, f.rank().max(g.rank())))
}

/// All congruences of `Q_n` in increasing order.
pub fn congruence_chain(family: MonoidFamily) -> Result<Vec<CongruenceQn>> {
    if family.degree < 2 {
        return Err(Error::InvalidParameters(format!(
            "the congruence chain is listed for degree at least 2, got {family}"
        )));
    }
    let mut out = vec![CongruenceQn::identity(family)];
    for k in 2..=family.degree {
        for group in NormalSubgroupSk::all(k) {
            out.push(CongruenceQn::theta(family, k, group)?);
        }
    }
    out.push(CongruenceQn::universal(family));
    Ok(out)
}
