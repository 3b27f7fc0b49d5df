//! Elements of the monoids `T_n`, `PT_n` and `I_n`, Green's relations,
//! ideals and the right action of `S_i` on rank-`i` elements.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{IndexedMonoid, DEFAULT_TABLE_CAP};
use crate::perm::Permutation;

/// Default cap on the degree accepted by [`enumerate_elements`].
pub const DEFAULT_ENUMERATION_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Full transformations.
    T,
    /// Partial transformations.
    PT,
    /// Partial injections.
    I,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::T => "T",
            Family::PT => "PT",
            Family::I => "I",
        }
    }
}

/// One of `T_n`, `PT_n`, `I_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidFamily {
    pub family: Family,
    pub degree: usize,
}

impl MonoidFamily {
    pub fn new(family: Family, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidElement(format!(
                "{}0 has degree 0",
                family.name()
            )));
        }
        if degree > u8::MAX as usize - 1 {
            return Err(Error::InvalidElement(format!("degree {degree} too large")));
        }
        Ok(MonoidFamily { family, degree })
    }

    pub fn t(n: usize) -> Self {
        Self::new(Family::T, n).expect("valid degree")
    }

    pub fn pt(n: usize) -> Self {
        Self::new(Family::PT, n).expect("valid degree")
    }

    pub fn i(n: usize) -> Self {
        Self::new(Family::I, n).expect("valid degree")
    }

    /// Smallest rank present: 1 for `T`, 0 for `PT` and `I`.
    pub fn rank_floor(&self) -> usize {
        match self.family {
            Family::T => 1,
            Family::PT | Family::I => 0,
        }
    }

    /// `T_1` is the trivial monoid; every other member of the three families has
    /// at least two elements.
    pub fn is_trivial(&self) -> bool {
        self.family == Family::T && self.degree == 1
    }

    pub fn order(&self) -> u128 {
        let n = self.degree as u128;
        match self.family {
            Family::T => n.pow(n as u32),
            Family::PT => (n + 1).pow(n as u32),
            Family::I => (0..=n)
                .map(|k| {
                    let c = binomial(n, k);
                    c * c * factorial(k)
                })
                .sum(),
        }
    }

    pub fn identity(&self) -> Transformation {
        Transformation {
            family: *self,
            map: (1..=self.degree as u8).collect(),
        }
    }

    /// Multiplication table, for the oracle.
    pub fn table(&self, degree_cap: usize) -> Result<IndexedMonoid<Transformation>> {
        IndexedMonoid::build(
            enumerate_elements(*self, degree_cap)?,
            &self.identity(),
            |a, b| a.compose_unchecked(b),
            DEFAULT_TABLE_CAP,
        )
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(k: u128) -> u128 {
    (1..=k).product()
}

impl fmt::Display for MonoidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.name(), self.degree)
    }
}

impl FromStr for MonoidFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (family, rest) = if let Some(rest) = t.strip_prefix("PT") {
            (Family::PT, rest)
        } else if let Some(rest) = t.strip_prefix('T') {
            (Family::T, rest)
        } else if let Some(rest) = t.strip_prefix('I') {
            (Family::I, rest)
        } else {
            return Err(Error::parse(s, 0, "expected T, PT or I"));
        };
        let offset = t.len() - rest.len();
        let degree: usize = rest
            .parse()
            .map_err(|_| Error::parse(s, offset, "expected a degree"))?;
        MonoidFamily::new(family, degree).map_err(|e| Error::parse(s, offset, e.to_string()))
    }
}

/// A map on `{1..n}` belonging to `T_n`, `PT_n` or `I_n`.
///
/// Entries are stored 1-based with `0` marking an undefined point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    family: MonoidFamily,
    map: Vec<u8>,
}

impl Transformation {
    /// `map[x-1]` is the image of `x`, or `None` when `x` is outside the domain.
    pub fn new(family: MonoidFamily, map: &[Option<usize>]) -> Result<Self> {
        let n = family.degree;
        if map.len() != n {
            return Err(Error::InvalidElement(format!(
                "expected {n} entries for {family}, got {}",
                map.len()
            )));
        }
        let mut raw = Vec::with_capacity(n);
        for &entry in map {
            match entry {
                None => raw.push(0),
                Some(v) if (1..=n).contains(&v) => raw.push(v as u8),
                Some(v) => return Err(Error::InvalidElement(format!("point {v} outside 1..{n}"))),
            }
        }
        Self::from_raw(family, raw)
    }

    /// Total map from 1-based images.
    pub fn total(family: MonoidFamily, images: &[usize]) -> Result<Self> {
        let map: Vec<Option<usize>> = images.iter().map(|&x| Some(x)).collect();
        Self::new(family, &map)
    }

    fn from_raw(family: MonoidFamily, map: Vec<u8>) -> Result<Self> {
        match family.family {
            Family::T => {
                if map.contains(&0) {
                    return Err(Error::InvalidElement(format!(
                        "elements of {family} must be total"
                    )));
                }
            }
            Family::I => {
                let mut seen = vec![false; family.degree + 1];
                for &v in map.iter().filter(|&&v| v != 0) {
                    if seen[v as usize] {
                        return Err(Error::InvalidElement(format!(
                            "elements of {family} must be injective"
                        )));
                    }
                    seen[v as usize] = true;
                }
            }
            Family::PT => {}
        }
        Ok(Transformation { family, map })
    }

    /// The constant map with value `a` (total, so it lies in `T_n` and `PT_n`).
    pub fn constant(family: MonoidFamily, a: usize) -> Result<Self> {
        Self::total(family, &vec![a; family.degree])
    }

    pub fn family(&self) -> MonoidFamily {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.family.degree
    }

    /// Image of the 1-based point `x`.
    pub fn get(&self, x: usize) -> Option<usize> {
        match self.map[x - 1] {
            0 => None,
            v => Some(v as usize),
        }
    }

    pub fn entries(&self) -> Vec<Option<usize>> {
        (1..=self.degree()).map(|x| self.get(x)).collect()
    }

    /// Ascending list of image points.
    pub fn image(&self) -> Vec<usize> {
        let mut present = vec![false; self.degree() + 1];
        for &v in &self.map {
            present[v as usize] = true;
        }
        (1..=self.degree()).filter(|&v| present[v]).collect()
    }

    pub fn domain(&self) -> Vec<usize> {
        (1..=self.degree())
            .filter(|&x| self.map[x - 1] != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut present = 0u64;
        let mut count = 0;
        for &v in &self.map {
            if v != 0 && present & (1 << v) == 0 {
                present |= 1 << v;
                count += 1;
            }
        }
        count
    }

    /// Kernel classes, each listed ascending, ordered by least element.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<(u8, Vec<usize>)> = Vec::new();
        for x in 1..=self.degree() {
            let v = self.map[x - 1];
            if v == 0 {
                continue;
            }
            match classes.iter_mut().find(|(img, _)| *img == v) {
                Some((_, c)) => c.push(x),
                None => classes.push((v, vec![x])),
            }
        }
        classes.into_iter().map(|(_, c)| c).collect()
    }

    /// Domain and kernel in one value: position `x` holds the least point with
    /// the same image as `x`, or 0 outside the domain.
    fn kernel_signature(&self) -> Vec<u8> {
        let n = self.degree();
        let mut first = vec![0u8; n + 1];
        let mut sig = vec![0u8; n];
        for (x, (&m, s)) in self.map.iter().zip(sig.iter_mut()).enumerate() {
            let v = m as usize;
            if v == 0 {
                continue;
            }
            if first[v] == 0 {
                first[v] = x as u8 + 1;
            }
            *s = first[v];
        }
        sig
    }

    fn image_mask(&self) -> u64 {
        self.map
            .iter()
            .filter(|&&v| v != 0)
            .fold(0, |acc, &v| acc | (1 << v))
    }

    /// Left-to-right composition: `x(fg) = (xf)g`.
    pub fn compose(&self, g: &Transformation) -> Result<Transformation> {
        self.check_same(g)?;
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &Transformation) -> Transformation {
        let map = self
            .map
            .iter()
            .map(|&v| if v == 0 { 0 } else { g.map[v as usize - 1] })
            .collect();
        Transformation {
            family: self.family,
            map,
        }
    }

    fn check_same(&self, g: &Transformation) -> Result<()> {
        if self.family != g.family {
            return Err(Error::mismatch(self.family, g.family));
        }
        Ok(())
    }

    pub fn same_image(&self, g: &Transformation) -> bool {
        self.image_mask() == g.image_mask()
    }

    pub fn same_kernel(&self, g: &Transformation) -> bool {
        self.kernel_signature() == g.kernel_signature()
    }

    pub fn h_related(&self, g: &Transformation) -> bool {
        self.family == g.family && self.same_image(g) && self.same_kernel(g)
    }

    pub fn green_related(&self, g: &Transformation, relation: GreenRelation) -> Result<bool> {
        self.check_same(g)?;
        Ok(match relation {
            GreenRelation::D => self.rank() == g.rank(),
            GreenRelation::L => self.same_image(g),
            GreenRelation::R => self.same_kernel(g),
            GreenRelation::H => self.same_image(g) && self.same_kernel(g),
        })
    }

    /// `f·ω` with the image ordered ascending.
    pub fn act(&self, omega: &Permutation) -> Result<Transformation> {
        self.act_with_order(omega, &self.image())
    }

    /// `f·ω` with respect to an explicit listing `order = (a_1, …, a_i)` of the image.
    pub fn act_with_order(&self, omega: &Permutation, order: &[usize]) -> Result<Transformation> {
        let rank = self.rank();
        if omega.degree() != rank {
            return Err(Error::mismatch(
                format!("permutation of degree {rank}"),
                format!("degree {}", omega.degree()),
            ));
        }
        if rank == 0 {
            return Err(Error::InvalidElement(
                "the action is only defined on elements of positive rank".into(),
            ));
        }
        check_order(self, order)?;
        let mut position = vec![0usize; self.degree() + 1];
        for (j, &a) in order.iter().enumerate() {
            position[a] = j;
        }
        let map = self
            .map
            .iter()
            .map(|&v| {
                if v == 0 {
                    0
                } else {
                    order[omega.apply0(position[v as usize])] as u8
                }
            })
            .collect();
        Ok(Transformation {
            family: self.family,
            map,
        })
    }

    /// The `σ` with `g = f·σ` when `f H g`, using the ascending image order.
    pub fn hclass_witness(&self, g: &Transformation) -> Option<Permutation> {
        self.hclass_witness_with_order(g, &self.image())
    }

    pub fn hclass_witness_with_order(
        &self,
        g: &Transformation,
        order: &[usize],
    ) -> Option<Permutation> {
        if !self.h_related(g) || check_order(self, order).is_err() {
            return None;
        }
        let mut position = vec![0usize; self.degree() + 1];
        for (j, &a) in order.iter().enumerate() {
            position[a] = j;
        }
        let mut sigma = vec![u8::MAX; order.len()];
        for x in 0..self.degree() {
            let (a, b) = (self.map[x], g.map[x]);
            if a != 0 {
                sigma[position[a as usize]] = position[b as usize] as u8;
            }
        }
        Some(Permutation::from_zero_based(sigma))
    }

    pub fn parse(family: MonoidFamily, input: &str) -> Result<Self> {
        let t = input.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(input, 0, "expected [..]"))?;
        let offset = input.find('[').unwrap_or(0) + 1;
        let mut map = Vec::new();
        let mut pos = offset;
        for token in inner.split(',') {
            let tok = token.trim();
            if tok == "-" {
                map.push(None);
            } else {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(input, pos, format!("bad entry {tok:?}")))?;
                map.push(Some(v));
            }
            pos += token.len() + 1;
        }
        if inner.trim().is_empty() {
            map.clear();
        }
        Transformation::new(family, &map).map_err(|e| Error::parse(input, offset, e.to_string()))
    }
}

fn check_order(f: &Transformation, order: &[usize]) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != f.image() {
        return Err(Error::InvalidElement(format!(
            "{order:?} does not list the image of {f}"
        )));
    }
    Ok(())
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .map
            .iter()
            .map(|&v| if v == 0 { "-".into() } else { v.to_string() })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GreenRelation {
    H,
    L,
    R,
    D,
}

/// The ideal `I_bound` of all elements of rank at most `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub family: MonoidFamily,
    pub bound: usize,
}

impl Ideal {
    pub fn new(family: MonoidFamily, bound: usize) -> Result<Self> {
        if bound < family.rank_floor() || bound > family.degree {
            return Err(Error::InvalidElement(format!(
                "I_{bound} is not an ideal of {family}"
            )));
        }
        Ok(Ideal { family, bound })
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        f.family() == self.family && f.rank() <= self.bound
    }
}

/// Every element of the monoid, in lexicographic order of the entry list
/// (undefined sorts first).
pub fn enumerate_elements(family: MonoidFamily, cap: usize) -> Result<Vec<Transformation>> {
    let n = family.degree;
    if n > cap {
        return Err(Error::CapExceeded {
            what: format!("degree of {family}"),
            size: n,
            cap,
        });
    }
    let lo: u8 = if family.family == Family::T { 1 } else { 0 };
    let mut out = Vec::new();
    let mut current = vec![lo; n];
    loop {
        if let Ok(t) = Transformation::from_raw(family, current.clone()) {
            out.push(t);
        }
        // odometer increment
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if (current[pos] as usize) < n {
                current[pos] += 1;
                break;
            }
            current[pos] = lo;
        }
    }
}
