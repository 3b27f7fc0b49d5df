//! The full matrix monoids `F_n = M_n(GF(p))` for `p ∈ {2, 3, 5}`, their
//! congruences, and principal congruences on products `F_m × F_n`.

pub mod congruence;
pub mod field;
pub mod gl;
pub mod linalg;
pub mod principal;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{IndexedMonoid, DEFAULT_TABLE_CAP};

pub use congruence::{principal_fn, CongruenceFn, CongruenceFnJson, FnVariant};
pub use field::{parse_field, ScalarGroup};
pub use gl::{associated_normal_subgroup, MatrixGroup, PairGroup};
pub use linalg::{Matrix, MatrixFacts, MAX_MATRIX_SIZE};
pub use principal::{principal_fmfn, MatrixPrincipal, MatrixPrincipalCase, PairFacts};

/// `F_n` over `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixFamily {
    pub p: u8,
    pub n: usize,
}

impl MatrixFamily {
    pub fn new(p: u8, n: usize) -> Result<Self> {
        field::check_prime(p)?;
        if n == 0 || n > MAX_MATRIX_SIZE {
            return Err(Error::Unsupported(format!(
                "matrix size {n}: sizes 1..={MAX_MATRIX_SIZE} are supported"
            )));
        }
        Ok(MatrixFamily { p, n })
    }

    pub fn of(m: &Matrix) -> Result<Self> {
        Self::new(m.characteristic(), m.size())
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.characteristic() == self.p && m.size() == self.n
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow((self.n * self.n) as u32)
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.p, self.n)
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<Matrix>> {
        let size = self.order();
        if size > cap as u128 {
            return Err(Error::CapExceeded {
                what: self.to_string(),
                size: size.min(usize::MAX as u128) as usize,
                cap,
            });
        }
        Ok(Matrix::all(self.p, self.n))
    }

    pub fn table(&self) -> Result<IndexedMonoid<Matrix>> {
        IndexedMonoid::build(
            self.elements(DEFAULT_TABLE_CAP)?,
            &self.identity(),
            Matrix::mul,
            DEFAULT_TABLE_CAP,
        )
    }

    pub fn parse_element(&self, input: &str) -> Result<Matrix> {
        let m = Matrix::parse(input, Some(self.p))?;
        if m.size() != self.n {
            return Err(Error::mismatch(
                self,
                MatrixFamily {
                    p: self.p,
                    n: m.size(),
                },
            ));
        }
        Ok(m)
    }
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}@GF({})", self.n, self.p)
    }
}

fn parse_size(input: &str, s: &str) -> Result<usize> {
    s.trim()
        .strip_prefix('F')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::parse(input, 0, "expected F<n>"))
}

impl FromStr for MatrixFamily {
    type Err = Error;

    /// `F2@GF(3)`.
    fn from_str(s: &str) -> Result<Self> {
        let (size, fld) = s
            .trim()
            .split_once('@')
            .ok_or_else(|| Error::parse(s, 0, "expected F<n>@GF(p)"))?;
        MatrixFamily::new(parse_field(fld)?, parse_size(s, size)?)
    }
}

/// `F_m × F_n` over one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixProductFamily {
    pub left: MatrixFamily,
    pub right: MatrixFamily,
}

impl MatrixProductFamily {
    pub fn new(left: MatrixFamily, right: MatrixFamily) -> Result<Self> {
        if left.p != right.p {
            return Err(Error::mismatch(
                format!("GF({})", left.p),
                format!("GF({})", right.p),
            ));
        }
        Ok(MatrixProductFamily { left, right })
    }

    pub fn p(&self) -> u8 {
        self.left.p
    }

    pub fn order(&self) -> u128 {
        self.left.order() * self.right.order()
    }

    pub fn identity(&self) -> MatrixPair {
        MatrixPair {
            left: self.left.identity(),
            right: self.right.identity(),
        }
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<MatrixPair>> {
        let size = self.order();
        if size > cap as u128 {
            return Err(Error::CapExceeded {
                what: self.to_string(),
                size: size.min(usize::MAX as u128) as usize,
                cap,
            });
        }
        let rights = Matrix::all(self.p(), self.right.n);
        Ok(Matrix::all(self.p(), self.left.n)
            .into_iter()
            .flat_map(|a| {
                rights
                    .iter()
                    .map(move |&b| MatrixPair { left: a, right: b })
            })
            .collect())
    }

    pub fn table(&self) -> Result<IndexedMonoid<MatrixPair>> {
        IndexedMonoid::build(
            self.elements(DEFAULT_TABLE_CAP)?,
            &self.identity(),
            MatrixPair::mul,
            DEFAULT_TABLE_CAP,
        )
    }

    pub fn parse_element(&self, input: &str) -> Result<MatrixPair> {
        let x = MatrixPair::parse(input, Some(self.p()))?;
        let f = x.family()?;
        if f != *self {
            return Err(Error::mismatch(self, f));
        }
        Ok(x)
    }
}

impl fmt::Display for MatrixProductFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}xF{}@GF({})", self.left.n, self.right.n, self.p())
    }
}

impl FromStr for MatrixProductFamily {
    type Err = Error;

    /// `F2xF2@GF(2)` or `F2@GF(2)xF2@GF(2)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (a, b) = t
            .split_once('x')
            .ok_or_else(|| Error::parse(s, 0, "expected F<m>xF<n>@GF(p)"))?;
        let right: MatrixFamily = b.parse()?;
        let left = if a.contains('@') {
            a.parse()?
        } else {
            MatrixFamily::new(right.p, parse_size(s, a)?)?
        };
        MatrixProductFamily::new(left, right)
    }
}

/// An element `(A, B)` of `F_m × F_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixPair {
    pub left: Matrix,
    pub right: Matrix,
}

impl MatrixPair {
    pub fn new(left: Matrix, right: Matrix) -> Self {
        MatrixPair { left, right }
    }

    pub fn family(&self) -> Result<MatrixProductFamily> {
        MatrixProductFamily::new(
            MatrixFamily::of(&self.left)?,
            MatrixFamily::of(&self.right)?,
        )
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.left.rank(), self.right.rank())
    }

    pub fn mul(&self, other: &MatrixPair) -> MatrixPair {
        MatrixPair {
            left: self.left.mul(&other.left),
            right: self.right.mul(&other.right),
        }
    }

    /// Parses `A|B`, e.g. `1,0;0,1|0,1;1,0@GF(2)`. Each side may carry its
    /// own field suffix.
    pub fn parse(input: &str, default_p: Option<u8>) -> Result<Self> {
        let (a, b) = input
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::parse(input, 0, "expected A|B"))?;
        let p = match b.split_once('@') {
            Some((_, f)) => Some(parse_field(f)?),
            None => default_p,
        };
        let left = Matrix::parse(a, p)?;
        let right = Matrix::parse(b, p.or(Some(left.characteristic())))?;
        Ok(MatrixPair { left, right })
    }
}

impl fmt::Display for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}@GF({})",
            self.left.body(),
            self.right.body(),
            self.left.characteristic()
        )
    }
}

impl fmt::Debug for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_syntax() {
        let f: MatrixFamily = "F2@GF(3)".parse().unwrap();
        assert_eq!(f.order(), 81);
        assert_eq!(f.to_string(), "F2@GF(3)");
        let a: MatrixProductFamily = "F2xF1@GF(2)".parse().unwrap();
        let b: MatrixProductFamily = "F2@GF(2)xF1@GF(2)".parse().unwrap();
        assert_eq!(a, b);
        assert!("F2@GF(2)xF1@GF(3)".parse::<MatrixProductFamily>().is_err());
        assert!("F4@GF(2)".parse::<MatrixFamily>().is_err());
    }

    #[test]
    fn pair_syntax() {
        let x = MatrixPair::parse("1,0;0,1|0,1;1,0@GF(2)", None).unwrap();
        assert_eq!(x.to_string(), "1,0;0,1|0,1;1,0@GF(2)");
        assert_eq!(MatrixPair::parse(&x.to_string(), None).unwrap(), x);
        assert!(MatrixPair::parse("1,0;0,1", Some(2)).is_err());
    }

    #[test]
    fn product_table() {
        let fam: MatrixProductFamily = "F1xF1@GF(3)".parse().unwrap();
        assert_eq!(fam.table().unwrap().size(), 9);
    }
}
