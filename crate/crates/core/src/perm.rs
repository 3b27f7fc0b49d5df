//! Permutations of `{1..n}` acting on the right.
//!
//! Products are read left to right: `j(στ) = (jσ)τ`, the same convention
//! as transformation composition.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `{1..degree}`. Points are stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[j-1] = jσ`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidElement(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.iter().enumerate().all(|(i, &x)| x as usize == i)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `jσ` for a 1-based point `j`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub(crate) fn apply0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `g⁻¹ σ g` in left-to-right notation.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of the non-trivial cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self
            .cycles()
            .into_iter()
            .map(|c| c.len())
            .filter(|&l| l > 1)
            .collect();
        t.sort_unstable();
        t
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// All permutations of the given degree in lexicographic order of images.
    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut current: Vec<u8> = (0..degree as u8).collect();
        let mut out = vec![Permutation {
            images: current.clone(),
        }];
        while next_permutation(&mut current) {
            out.push(Permutation {
                images: current.clone(),
            });
        }
        out
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"` or `"()"`.
    pub fn parse_cycles(input: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut seen = vec![false; degree];
        let bytes = input.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Ok(Permutation { images });
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::parse(input, pos, "expected '('"));
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                skip_ws(&mut pos);
                if pos >= bytes.len() {
                    return Err(Error::parse(input, pos, "unterminated cycle"));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                if bytes[pos] == b',' {
                    pos += 1;
                    continue;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::parse(input, pos, "expected a point"));
                }
                let point: usize = input[start..pos]
                    .parse()
                    .map_err(|_| Error::parse(input, start, "bad number"))?;
                if point == 0 || point > degree {
                    return Err(Error::parse(
                        input,
                        start,
                        format!("point {point} outside 1..{degree}"),
                    ));
                }
                if seen[point - 1] {
                    return Err(Error::parse(
                        input,
                        start,
                        format!("point {point} repeated"),
                    ));
                }
                seen[point - 1] = true;
                cycle.push(point - 1);
            }
            for (idx, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(idx + 1) % cycle.len()] as u8;
            }
            skip_ws(&mut pos);
        }
        Ok(Permutation { images })
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(3).parity(), Parity::Even);
        assert_eq!(
            Permutation::parse_cycles("(1 2)", 3).unwrap().parity(),
            Parity::Odd
        );
        assert_eq!(
            Permutation::parse_cycles("(1 2 3)", 3).unwrap().parity(),
            Parity::Even
        );
    }

    #[test]
    fn cycle_round_trip() {
        for p in Permutation::all(4) {
            let text = p.to_string();
            assert_eq!(Permutation::parse_cycles(&text, 4).unwrap(), p);
        }
    }

    #[test]
    fn all_counts() {
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn then_is_left_to_right() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(1), 3);
    }

    #[test]
    fn parity_is_multiplicative() {
        let all = Permutation::all(4);
        for a in &all {
            for b in &all {
                assert_eq!(a.then(b).parity(), a.parity().combine(b.parity()));
            }
        }
    }

    #[test]
    fn bad_cycles_rejected() {
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
    }
}
