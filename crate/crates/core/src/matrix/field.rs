//! Prime fields GF(2), GF(3), GF(5) and the subgroups of their unit groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u8; 3] = [2, 3, 5];

pub(crate) fn check_prime(p: u8) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "GF({p}): only GF(2), GF(3) and GF(5) are supported"
        )))
    }
}

#[inline]
pub(crate) fn add(p: u8, a: u8, b: u8) -> u8 {
    (a + b) % p
}

#[inline]
pub(crate) fn sub(p: u8, a: u8, b: u8) -> u8 {
    (a + p - b) % p
}

#[inline]
pub(crate) fn mul(p: u8, a: u8, b: u8) -> u8 {
    (a * b) % p
}

/// Multiplicative inverse of a non-zero element.
pub(crate) fn inv(p: u8, a: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    (1..p)
        .find(|&x| mul(p, a, x) == 1)
        .expect("non-zero elements are units")
}

pub(crate) fn pow(p: u8, a: u8, e: u32) -> u8 {
    (0..e).fold(1, |acc, _| mul(p, acc, a))
}

/// Multiplicative order of a unit.
pub(crate) fn order(p: u8, a: u8) -> u8 {
    (1..p)
        .find(|&k| pow(p, a, k as u32) == 1)
        .expect("units have finite order")
}

/// Parses `GF(p)`.
pub fn parse_field(input: &str) -> Result<u8> {
    let t = input.trim();
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::parse(input, 0, "expected GF(p)"))?;
    let p: u8 = inner
        .trim()
        .parse()
        .map_err(|_| Error::parse(input, 3, "expected a prime"))?;
    check_prime(p)?;
    Ok(p)
}

/// A subgroup of the cyclic group `F*`, determined by its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScalarGroup {
    p: u8,
    order: u8,
}

impl ScalarGroup {
    pub fn trivial(p: u8) -> Self {
        ScalarGroup { p, order: 1 }
    }

    pub fn full(p: u8) -> Self {
        ScalarGroup { p, order: p - 1 }
    }

    /// `⟨λ⟩`.
    pub fn generated_by(p: u8, lambda: u8) -> Self {
        ScalarGroup {
            p,
            order: order(p, lambda % p),
        }
    }

    /// Every subgroup of `F*`, smallest first.
    pub fn all(p: u8) -> Vec<ScalarGroup> {
        (1..p)
            .filter(|d| (p - 1).is_multiple_of(*d))
            .map(|order| ScalarGroup { p, order })
            .collect()
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, lambda: u8) -> bool {
        !lambda.is_multiple_of(self.p) && pow(self.p, lambda, self.order as u32) == 1
    }

    pub fn elements(&self) -> Vec<u8> {
        (1..self.p).filter(|&x| self.contains(x)).collect()
    }

    pub fn is_subgroup_of(&self, other: &ScalarGroup) -> bool {
        other.order.is_multiple_of(self.order)
    }

    /// The least generator.
    pub fn generator(&self) -> u8 {
        (1..self.p)
            .find(|&x| self.contains(x) && order(self.p, x) == self.order)
            .expect("cyclic groups have generators")
    }
}

impl fmt::Display for ScalarGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(inv(5, 2), 3);
        assert_eq!(order(5, 2), 4);
        assert_eq!(order(5, 4), 2);
        assert_eq!(sub(3, 0, 1), 2);
    }

    #[test]
    fn unit_subgroups() {
        assert_eq!(ScalarGroup::all(5).len(), 3);
        assert_eq!(ScalarGroup::all(2).len(), 1);
        let g = ScalarGroup::generated_by(3, 2);
        assert_eq!(g.elements(), vec![1, 2]);
        assert!(ScalarGroup::trivial(5).is_subgroup_of(&ScalarGroup::generated_by(5, 4)));
        assert!(!ScalarGroup::generated_by(5, 2).is_subgroup_of(&ScalarGroup::generated_by(5, 4)));
        assert_eq!(ScalarGroup::generated_by(5, 4).generator(), 4);
        assert_eq!(parse_field("GF(3)").unwrap(), 3);
        assert!(parse_field("GF(4)").is_err());
    }
}
