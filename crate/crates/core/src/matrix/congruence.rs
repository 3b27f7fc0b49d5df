//! Congruences on the full matrix monoid `F_n`.
//!
//! A non-universal congruence is given by a rank `μ`, a normal subgroup
//! `Ḡ_μ ⊴ GL(μ, F)` and a descending chain `G_n ⊆ … ⊆ G_{μ+1}` of subgroups
//! of `F*` with `G_{μ+1}·E_μ ⊆ Ḡ_μ`. Below rank `μ` everything is related;
//! at rank `μ`, H-related matrices are related when they differ by an element
//! of `Ḡ_μ`; at rank `i > μ`, `A ~ λA` for `λ ∈ G_i`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::field::{self, ScalarGroup};
use super::gl::MatrixGroup;
use super::linalg::{Matrix, MatrixFacts};
use super::MatrixFamily;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FnVariant {
    Universal,
    Params {
        mu: usize,
        gbar: MatrixGroup,
        /// `chain[k]` is `G_{μ+1+k}`.
        chain: Vec<ScalarGroup>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruenceFn {
    family: MatrixFamily,
    variant: FnVariant,
}

impl CongruenceFn {
    pub fn universal(family: MatrixFamily) -> Self {
        CongruenceFn {
            family,
            variant: FnVariant::Universal,
        }
    }

    pub fn identity(family: MatrixFamily) -> Self {
        CongruenceFn {
            family,
            variant: FnVariant::Params {
                mu: 0,
                gbar: MatrixGroup::trivial(family.p, 0),
                chain: vec![ScalarGroup::trivial(family.p); family.n],
            },
        }
    }

    /// Validates the parameter conditions.
    pub fn new(
        family: MatrixFamily,
        mu: usize,
        gbar: MatrixGroup,
        chain: Vec<ScalarGroup>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if mu > family.n {
            return bad(format!("mu = {mu} exceeds n = {}", family.n));
        }
        if gbar.degree() != mu || gbar.characteristic() != family.p {
            return bad(format!("the group must lie in GL({mu},{})", family.p));
        }
        if chain.len() != family.n - mu {
            return bad(format!(
                "expected {} scalar groups for ranks {}..={}",
                family.n - mu,
                mu + 1,
                family.n
            ));
        }
        if chain.iter().any(|g| g.characteristic() != family.p) {
            return bad("scalar groups must lie in the same field".into());
        }
        if chain.windows(2).any(|w| !w[1].is_subgroup_of(&w[0])) {
            return bad("scalar groups must descend with rank".into());
        }
        if let Some(first) = chain.first() {
            if mu > 0 {
                let missing = first
                    .elements()
                    .into_iter()
                    .any(|l| !gbar.contains(&Matrix::scalar(family.p, mu, l)));
                if missing {
                    return bad(
                        "the scalars of the first chain group must lie in the group at rank mu"
                            .into(),
                    );
                }
            }
        }
        // At rank 1 the group is a group of scalars, so `μ = 1` says the same
        // as `μ = 0` with that group prepended to the chain.
        let (mu, gbar, chain) = if mu == 1 {
            let top = ScalarGroup::generated_by(
                family.p,
                gbar.elements()
                    .iter()
                    .map(|g| g.get(0, 0))
                    .max_by_key(|&l| field::order(family.p, l))
                    .unwrap_or(1),
            );
            let mut full = vec![top];
            full.extend(chain);
            (0, MatrixGroup::trivial(family.p, 0), full)
        } else {
            (mu, gbar, chain)
        };
        Ok(CongruenceFn {
            family,
            variant: FnVariant::Params { mu, gbar, chain },
        })
    }

    pub fn family(&self) -> MatrixFamily {
        self.family
    }

    pub fn variant(&self) -> &FnVariant {
        &self.variant
    }

    pub fn is_universal(&self) -> bool {
        self.variant == FnVariant::Universal
    }

    pub fn is_identity(&self) -> bool {
        match &self.variant {
            FnVariant::Universal => false,
            FnVariant::Params { mu, gbar, chain } => {
                *mu == 0 && gbar.is_trivial() && chain.iter().all(ScalarGroup::is_trivial)
            }
        }
    }

    pub fn related(&self, a: &Matrix, b: &Matrix) -> Result<bool> {
        for m in [a, b] {
            if !self.family.contains(m) {
                return Err(Error::mismatch(self.family, m));
            }
        }
        Ok(self.related_facts(&MatrixFacts::of(*a), &MatrixFacts::of(*b)))
    }

    pub(crate) fn related_facts(&self, a: &MatrixFacts, b: &MatrixFacts) -> bool {
        let FnVariant::Params { mu, gbar, chain } = &self.variant else {
            return true;
        };
        let mu = *mu;
        if a.matrix == b.matrix {
            return true;
        }
        let (ra, rb) = (a.rank, b.rank);
        if ra < mu && rb < mu {
            return true;
        }
        if ra != rb || ra < mu {
            return false;
        }
        if ra == mu {
            return a.reduce(&b.matrix).is_some_and(|g| gbar.contains(&g));
        }
        a.matrix
            .scalar_factor(&b.matrix)
            .is_some_and(|l| chain[ra - mu - 1].contains(l))
    }

    /// All congruences of `F_n`: every admissible parameter tuple in
    /// canonical form, and the universal congruence.
    pub fn all(family: MatrixFamily) -> Result<Vec<CongruenceFn>> {
        let p = family.p;
        let mut out: Vec<CongruenceFn> = Vec::new();
        for mu in 0..=family.n {
            for gbar in MatrixGroup::all_normal(p, mu)? {
                for chain in descending_chains(p, family.n - mu) {
                    if let Ok(c) = Self::new(family, mu, gbar.clone(), chain) {
                        if !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out.push(Self::universal(family));
        Ok(out)
    }

    pub fn to_json(&self) -> CongruenceFnJson {
        match &self.variant {
            FnVariant::Universal => CongruenceFnJson {
                universal: true,
                mu: None,
                gbar: Vec::new(),
                chain: Vec::new(),
            },
            FnVariant::Params { mu, gbar, chain } => CongruenceFnJson {
                universal: false,
                mu: Some(*mu),
                gbar: gbar.elements().iter().map(Matrix::body).collect(),
                chain: chain.iter().map(ScalarGroup::generator).collect(),
            },
        }
    }

    pub fn from_json(family: MatrixFamily, j: &CongruenceFnJson) -> Result<Self> {
        if j.universal {
            return Ok(Self::universal(family));
        }
        let mu =
            j.mu.ok_or_else(|| Error::InvalidParameters("missing mu".into()))?;
        let elements: BTreeSet<Matrix> = if mu == 0 {
            [Matrix::identity(family.p, 0)].into()
        } else {
            j.gbar
                .iter()
                .map(|s| Matrix::parse(s, Some(family.p)))
                .collect::<Result<_>>()?
        };
        let gbar = MatrixGroup::normal_from_elements(family.p, mu, elements)?;
        let chain = j
            .chain
            .iter()
            .map(|&g| ScalarGroup::generated_by(family.p, g))
            .collect();
        Self::new(family, mu, gbar, chain)
    }
}

/// Parameters as JSON: `{universal, mu, gbar: [matrix literals], chain: [generators]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFnJson {
    pub universal: bool,
    pub mu: Option<usize>,
    pub gbar: Vec<String>,
    pub chain: Vec<u8>,
}

fn descending_chains(p: u8, len: usize) -> Vec<Vec<ScalarGroup>> {
    fn go(p: u8, len: usize, prefix: &mut Vec<ScalarGroup>, out: &mut Vec<Vec<ScalarGroup>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for g in ScalarGroup::all(p) {
            if prefix.last().is_none_or(|last| g.is_subgroup_of(last)) {
                prefix.push(g);
                go(p, len, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(p, len, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for CongruenceFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            FnVariant::Universal => f.write_str("universal"),
            FnVariant::Params { mu, gbar, chain } => {
                write!(f, "mu={mu} Gbar={gbar}")?;
                if !chain.is_empty() {
                    let c: Vec<String> = chain.iter().map(ToString::to_string).collect();
                    write!(f, " chain=[{}]", c.join(","))?;
                }
                Ok(())
            }
        }
    }
}

/// The congruence on `F_n` generated by `(A, B)`.
pub fn principal_fn(a: &Matrix, b: &Matrix) -> Result<CongruenceFn> {
    let family = MatrixFamily::of(a)?;
    if !family.contains(b) {
        return Err(Error::mismatch(family, b));
    }
    let p = family.p;
    let n = family.n;
    if a == b {
        return Ok(CongruenceFn::identity(family));
    }
    if let Some(lambda) = a.scalar_factor(b) {
        let r = a.rank();
        let chain = (1..=n)
            .map(|i| {
                if i <= r {
                    ScalarGroup::generated_by(p, lambda)
                } else {
                    ScalarGroup::trivial(p)
                }
            })
            .collect();
        return CongruenceFn::new(family, 0, MatrixGroup::trivial(p, 0), chain);
    }
    let fa = MatrixFacts::of(*a);
    if let Some(g) = fa.reduce(b) {
        let mu = fa.rank;
        return CongruenceFn::new(
            family,
            mu,
            MatrixGroup::normal_closure(&g)?,
            vec![ScalarGroup::trivial(p); n - mu],
        );
    }
    let top = a.rank().max(b.rank());
    if top < n {
        let mu = top + 1;
        return CongruenceFn::new(
            family,
            mu,
            MatrixGroup::trivial(p, mu),
            vec![ScalarGroup::trivial(p); n - mu],
        );
    }
    Ok(CongruenceFn::universal(family))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matrix {
        Matrix::parse(s, None).unwrap()
    }

    #[test]
    fn principal_examples() {
        let e2 = Matrix::identity(3, 2);
        let c = principal_fn(&e2, &Matrix::scalar(3, 2, 2)).unwrap();
        match c.variant() {
            FnVariant::Params { mu, chain, .. } => {
                assert_eq!(*mu, 0);
                assert!(chain.iter().all(|g| g.order() == 2));
            }
            FnVariant::Universal => panic!("expected parameters"),
        }
        assert!(c.related(&e2, &Matrix::scalar(3, 2, 2)).unwrap());
        let e1 = Matrix::partial_identity(2, 2, 1);
        let c = principal_fn(&e1, &m("0,1;0,0@GF(2)")).unwrap();
        assert!(matches!(c.variant(), FnVariant::Params { mu: 2, .. }));
        let c = principal_fn(&e1, &m("1,1;0,0@GF(2)")).unwrap();
        assert!(matches!(c.variant(), FnVariant::Params { mu: 2, .. }));
        let id = Matrix::identity(2, 2);
        assert!(principal_fn(&id, &m("0,1;1,0@GF(2)"))
            .unwrap()
            .related(&id, &m("1,1;0,1@GF(2)"))
            .unwrap());
        assert!(principal_fn(&id, &e1).unwrap().is_universal());
        assert!(principal_fn(&id, &id).unwrap().is_identity());
    }

    #[test]
    fn parameter_validation() {
        let fam = MatrixFamily::new(3, 2).unwrap();
        let bad_chain = vec![ScalarGroup::trivial(3), ScalarGroup::full(3)];
        assert!(CongruenceFn::new(fam, 0, MatrixGroup::trivial(3, 0), bad_chain).is_err());
        let needs_scalars = vec![ScalarGroup::full(3)];
        assert!(
            CongruenceFn::new(fam, 1, MatrixGroup::trivial(3, 1), needs_scalars.clone()).is_err()
        );
        assert!(CongruenceFn::new(fam, 1, MatrixGroup::full(3, 1).unwrap(), needs_scalars).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let fam = MatrixFamily::new(3, 2).unwrap();
        for c in CongruenceFn::all(fam).unwrap() {
            assert_eq!(CongruenceFn::from_json(fam, &c.to_json()).unwrap(), c);
        }
    }
}
