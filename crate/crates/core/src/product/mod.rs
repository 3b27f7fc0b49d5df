//! Direct products `Q_m × P_n` of two transformation monoids.

pub mod enumerate;
pub mod landscape;
pub mod principal;
pub mod render;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::monoid::{enumerate_elements, MonoidFamily, Transformation};
use crate::oracle::{CongruencePartition, IndexedMonoid, DEFAULT_TABLE_CAP};

pub use landscape::{DlockLandscape, DlockPart, DlockType, PartGroup, Violation};
pub use principal::{principal_product, PrincipalCase, PrincipalDescription};

/// The pair of factors of a product monoid. Trivial factors are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductFamily {
    pub left: MonoidFamily,
    pub right: MonoidFamily,
}

impl ProductFamily {
    pub fn new(left: MonoidFamily, right: MonoidFamily) -> Result<Self> {
        for f in [left, right] {
            if f.is_trivial() {
                return Err(Error::ExcludedFactor(f.to_string()));
            }
        }
        Ok(ProductFamily { left, right })
    }

    /// Row indices (ranks of the left factor) of the D-class grid.
    pub fn rows(&self) -> std::ops::RangeInclusive<usize> {
        self.left.rank_floor()..=self.left.degree
    }

    /// Column indices (ranks of the right factor) of the D-class grid.
    pub fn cols(&self) -> std::ops::RangeInclusive<usize> {
        self.right.rank_floor()..=self.right.degree
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.rows()
            .flat_map(|i| self.cols().map(move |j| (i, j)))
            .collect()
    }

    pub fn contains_cell(&self, (i, j): (usize, usize)) -> bool {
        self.rows().contains(&i) && self.cols().contains(&j)
    }

    pub fn cell_count(&self) -> usize {
        self.rows().count() * self.cols().count()
    }

    /// Position of a cell in row-major order; the cell must lie in the grid.
    pub(crate) fn cell_index(&self, (i, j): (usize, usize)) -> usize {
        let cols = self.cols().count();
        (i - self.left.rank_floor()) * cols + (j - self.right.rank_floor())
    }

    pub fn order(&self) -> u128 {
        self.left.order() * self.right.order()
    }

    pub fn identity(&self) -> ProductElement {
        ProductElement {
            left: self.left.identity(),
            right: self.right.identity(),
        }
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<ProductElement>> {
        let lefts = enumerate_elements(self.left, cap)?;
        let rights = enumerate_elements(self.right, cap)?;
        let mut out = Vec::with_capacity(lefts.len() * rights.len());
        for a in &lefts {
            for b in &rights {
                out.push(ProductElement {
                    left: a.clone(),
                    right: b.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Multiplication table of the product, for the oracle.
    pub fn table(&self, degree_cap: usize) -> Result<IndexedMonoid<ProductElement>> {
        IndexedMonoid::build(
            self.elements(degree_cap)?,
            &self.identity(),
            |a, b| a.compose_unchecked(b),
            DEFAULT_TABLE_CAP,
        )
    }

    pub fn parse_element(&self, input: &str) -> Result<ProductElement> {
        ProductElement::parse(*self, input)
    }
}

impl fmt::Display for ProductFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.left, self.right)
    }
}

impl FromStr for ProductFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim()
            .split_once('x')
            .ok_or_else(|| Error::parse(s, 0, "expected <FAM><m>x<FAM><n>"))?;
        let left: MonoidFamily = a.parse()?;
        let right: MonoidFamily = b
            .parse()
            .map_err(|e: Error| Error::parse(s, a.len() + 1, e.to_string()))?;
        ProductFamily::new(left, right)
    }
}

/// The slice `θ_f = {(g, g') : (f, g) θ (f, g')}` of a congruence `θ` on a
/// product, as a partition of `right`.
pub fn theta_slice(
    f: &Transformation,
    right: &[Transformation],
    related: impl Fn(&ProductElement, &ProductElement) -> bool,
) -> CongruencePartition {
    let pair = |g: &Transformation| ProductElement::new(f.clone(), g.clone());
    CongruencePartition::from_equivalence(right.len(), |a, b| {
        related(&pair(&right[a]), &pair(&right[b]))
    })
}

/// An element `(f, g)` of `Q_m × P_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductElement {
    pub left: Transformation,
    pub right: Transformation,
}

impl ProductElement {
    pub fn new(left: Transformation, right: Transformation) -> Self {
        ProductElement { left, right }
    }

    pub fn family(&self) -> (MonoidFamily, MonoidFamily) {
        (self.left.family(), self.right.family())
    }

    /// `|(f,g)| = (|f|, |g|)`, the index of the D-class.
    pub fn ranks(&self) -> (usize, usize) {
        (self.left.rank(), self.right.rank())
    }

    pub fn compose(&self, other: &ProductElement) -> Result<ProductElement> {
        Ok(ProductElement {
            left: self.left.compose(&other.left)?,
            right: self.right.compose(&other.right)?,
        })
    }

    pub(crate) fn compose_unchecked(&self, other: &ProductElement) -> ProductElement {
        ProductElement {
            left: self.left.compose_unchecked(&other.left),
            right: self.right.compose_unchecked(&other.right),
        }
    }

    pub fn h_related(&self, other: &ProductElement) -> bool {
        self.left.h_related(&other.left) && self.right.h_related(&other.right)
    }

    /// Parses `"(f,g)"` with bracketed transformation literals.
    pub fn parse(family: ProductFamily, input: &str) -> Result<Self> {
        let (a, b) = split_pair(input)?;
        let left = Transformation::parse(family.left, a)?;
        let right = Transformation::parse(family.right, b)?;
        Ok(ProductElement { left, right })
    }
}

/// Splits `"(x,y)"` or `"x|y"` at the comma (or bar) outside any brackets.
pub(crate) fn split_pair(input: &str) -> Result<(&str, &str)> {
    let t = input.trim();
    let inner = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner,
        None => t,
    };
    if let Some((a, b)) = inner.split_once('|') {
        return Ok((a.trim(), b.trim()));
    }
    let mut depth = 0i32;
    for (pos, ch) in inner.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => return Ok((inner[..pos].trim(), inner[pos + 1..].trim())),
            _ => {}
        }
    }
    Err(Error::parse(input, 0, "expected a pair (x,y)"))
}

impl fmt::Display for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

impl fmt::Debug for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
