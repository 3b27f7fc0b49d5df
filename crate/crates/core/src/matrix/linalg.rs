//! Square matrices of size at most 3 over a small prime field.

use std::fmt;

use crate::error::{Error, Result};

use super::field::{self, check_prime, parse_field};

pub const MAX_MATRIX_SIZE: usize = 3;

/// An `n × n` matrix over GF(p), `n ≤ 3`, stored row-major. Size 0 is allowed
/// and stands for the trivial group `GL(0, F)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    p: u8,
    n: u8,
    e: [u8; 9],
}

impl Matrix {
    pub fn from_entries(p: u8, n: usize, entries: &[u8]) -> Result<Self> {
        check_prime(p)?;
        if n > MAX_MATRIX_SIZE {
            return Err(Error::Unsupported(format!(
                "matrices of size {n}: at most {MAX_MATRIX_SIZE} is supported"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidElement(format!(
                "{} entries given for a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(&x) = entries.iter().find(|&&x| x >= p) {
            return Err(Error::InvalidElement(format!(
                "entry {x} is not in GF({p})"
            )));
        }
        let mut e = [0u8; 9];
        e[..n * n].copy_from_slice(entries);
        Ok(Matrix { p, n: n as u8, e })
    }

    pub(crate) fn raw(p: u8, n: usize) -> Self {
        Matrix {
            p,
            n: n as u8,
            e: [0; 9],
        }
    }

    pub fn zero(p: u8, n: usize) -> Self {
        Self::raw(p, n)
    }

    pub fn identity(p: u8, n: usize) -> Self {
        Self::partial_identity(p, n, n)
    }

    /// `E_μ`: ones in the first `μ` diagonal positions.
    pub fn partial_identity(p: u8, n: usize, mu: usize) -> Self {
        Self::scalar_partial(p, n, mu, 1)
    }

    fn scalar_partial(p: u8, n: usize, mu: usize, lambda: u8) -> Self {
        let mut m = Self::raw(p, n);
        for k in 0..mu.min(n) {
            m.set(k, k, lambda);
        }
        m
    }

    /// `λ·1`.
    pub fn scalar(p: u8, n: usize, lambda: u8) -> Self {
        Self::scalar_partial(p, n, n, lambda % p)
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.e[r * self.n as usize + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: u8) {
        self.e[r * self.n as usize + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.p, self.n), (other.p, other.n));
        let n = self.size();
        let p = self.p;
        let mut out = Self::raw(p, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u16;
                for k in 0..n {
                    acc += (self.get(r, k) as u16) * (other.get(k, c) as u16);
                }
                out.set(r, c, (acc % p as u16) as u8);
            }
        }
        out
    }

    pub fn scale(&self, lambda: u8) -> Matrix {
        let mut out = *self;
        for x in out.e.iter_mut().take(self.size() * self.size()) {
            *x = field::mul(self.p, *x, lambda % self.p);
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.size();
        let mut out = Self::raw(self.p, n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let n = self.size();
        let p = self.p;
        let mut m = *self;
        let mut rank = 0;
        for c in 0..n {
            let Some(pivot) = (rank..n).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let s = field::inv(p, m.get(rank, c));
            m.scale_row(rank, s);
            for r in 0..n {
                let f = m.get(r, c);
                if r != rank && f != 0 {
                    m.add_row_multiple(r, rank, p - f);
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.size() {
                let t = self.get(a, c);
                self.set(a, c, self.get(b, c));
                self.set(b, c, t);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.size() {
                let t = self.get(r, a);
                self.set(r, a, self.get(r, b));
                self.set(r, b, t);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        for c in 0..self.size() {
            self.set(r, c, field::mul(self.p, self.get(r, c), s));
        }
    }

    /// `row_dst += f · row_src`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: u8) {
        for c in 0..self.size() {
            let v = field::add(
                self.p,
                self.get(dst, c),
                field::mul(self.p, f, self.get(src, c)),
            );
            self.set(dst, c, v);
        }
    }

    /// `col_dst += f · col_src`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: u8) {
        for r in 0..self.size() {
            let v = field::add(
                self.p,
                self.get(r, dst),
                field::mul(self.p, f, self.get(r, src)),
            );
            self.set(r, dst, v);
        }
    }

    /// Canonical form of the column space (the image).
    pub fn image_key(&self) -> Matrix {
        self.transpose().rref().0
    }

    /// Canonical form of the row space, which determines the kernel.
    pub fn kernel_key(&self) -> Matrix {
        self.rref().0
    }

    /// A basis of the column space, as column vectors.
    pub fn image_space(&self) -> Vec<Vec<u8>> {
        let (r, rank) = self.transpose().rref();
        r.rows().into_iter().take(rank).collect()
    }

    /// A basis of `{x : Ax = 0}`.
    pub fn kernel_space(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        let p = self.p;
        let (r, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        for row in 0..rank {
            pivots.push(
                (0..n)
                    .find(|&c| r.get(row, c) != 0)
                    .expect("pivot rows are non-zero"),
            );
        }
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u8; n];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = field::sub(p, 0, r.get(row, free));
                }
                v
            })
            .collect()
    }

    pub fn same_image(&self, other: &Matrix) -> bool {
        self.image_key() == other.image_key()
    }

    pub fn same_kernel(&self, other: &Matrix) -> bool {
        self.kernel_key() == other.kernel_key()
    }

    pub fn h_related(&self, other: &Matrix) -> bool {
        self.same_image(other) && self.same_kernel(other)
    }

    /// `λ ∈ F*` with `self = λ · other`. For two zero matrices this is 1.
    pub fn scalar_factor(&self, other: &Matrix) -> Option<u8> {
        (1..self.p).find(|&l| other.scale(l) == *self)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.size()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let (s1, s2) = self.reduce_to_partial_identity();
        // s1 A s2 = 1, so A⁻¹ = s2 s1.
        self.is_invertible().then(|| s2.mul(&s1))
    }

    /// Invertible `(s1, s2)` with `s1 · A · s2 = E_μ`, `μ = rank A`.
    pub fn reduce_to_partial_identity(&self) -> (Matrix, Matrix) {
        let n = self.size();
        let p = self.p;
        let mut m = *self;
        let mut s1 = Self::identity(p, n);
        let mut s2 = Self::identity(p, n);
        for t in 0..n {
            let Some((r, c)) = (t..n)
                .flat_map(|r| (t..n).map(move |c| (r, c)))
                .find(|&(r, c)| m.get(r, c) != 0)
            else {
                break;
            };
            m.swap_rows(t, r);
            s1.swap_rows(t, r);
            m.swap_cols(t, c);
            s2.swap_cols(t, c);
            let s = field::inv(p, m.get(t, t));
            m.scale_row(t, s);
            s1.scale_row(t, s);
            for r in 0..n {
                let f = m.get(r, t);
                if r != t && f != 0 {
                    m.add_row_multiple(r, t, p - f);
                    s1.add_row_multiple(r, t, p - f);
                }
            }
            for c in 0..n {
                let f = m.get(t, c);
                if c != t && f != 0 {
                    m.add_col_multiple(c, t, p - f);
                    s2.add_col_multiple(c, t, p - f);
                }
            }
        }
        (s1, s2)
    }

    /// The top-left `μ × μ` block, provided every other entry is zero and the
    /// block is invertible: membership in the copy of `GL(μ, F)` at `E_μ`.
    pub fn leading_block(&self, mu: usize) -> Option<Matrix> {
        let n = self.size();
        if mu > n {
            return None;
        }
        let mut block = Self::raw(self.p, mu);
        for r in 0..n {
            for c in 0..n {
                let v = self.get(r, c);
                if r < mu && c < mu {
                    block.set(r, c, v);
                } else if v != 0 {
                    return None;
                }
            }
        }
        block.is_invertible().then_some(block)
    }

    /// Every `n × n` matrix over GF(p), in lexicographic order of entries.
    pub fn all(p: u8, n: usize) -> Vec<Matrix> {
        let cells = n * n;
        let total = (p as usize).pow(cells as u32);
        (0..total)
            .map(|mut code| {
                let mut m = Self::raw(p, n);
                for k in (0..cells).rev() {
                    m.e[k] = (code % p as usize) as u8;
                    code /= p as usize;
                }
                m
            })
            .collect()
    }

    /// Whether `A V = V` for every subspace `V` of dimension `n − 1`.
    pub fn fixes_all_hyperplanes(&self) -> bool {
        let n = self.size();
        if n == 0 {
            return true;
        }
        let p = self.p;
        let vectors = Self::all_vectors(p, n);
        let apply = |v: &[u8]| -> Vec<u8> {
            (0..n)
                .map(|r| {
                    (0..n).fold(0, |acc, c| {
                        field::add(p, acc, field::mul(p, self.get(r, c), v[c]))
                    })
                })
                .collect()
        };
        // Hyperplanes are kernels of non-zero functionals; one per scalar class.
        for phi in vectors
            .iter()
            .filter(|f| f.iter().find(|&&x| x != 0) == Some(&1))
        {
            let dot = |v: &[u8]| {
                v.iter()
                    .zip(phi)
                    .fold(0, |acc, (a, b)| field::add(p, acc, field::mul(p, *a, *b)))
            };
            let plane: Vec<&Vec<u8>> = vectors.iter().filter(|v| dot(v) == 0).collect();
            let mut mapped: Vec<Vec<u8>> = plane.iter().map(|v| apply(v)).collect();
            mapped.sort();
            mapped.dedup();
            if mapped.len() != plane.len() || mapped.iter().any(|w| dot(w) != 0) {
                return false;
            }
        }
        true
    }

    fn all_vectors(p: u8, n: usize) -> Vec<Vec<u8>> {
        let total = (p as usize).pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut v = vec![0u8; n];
                for k in (0..n).rev() {
                    v[k] = (code % p as usize) as u8;
                    code /= p as usize;
                }
                v
            })
            .collect()
    }

    /// Parses `"1,0;1,1@GF(2)"`; the field suffix may be omitted when `p` is
    /// known from context.
    pub fn parse(input: &str, default_p: Option<u8>) -> Result<Self> {
        let t = input.trim();
        let (body, p) = match t.split_once('@') {
            Some((b, f)) => (b, parse_field(f)?),
            None => (
                t,
                default_p.ok_or_else(|| Error::parse(input, t.len(), "missing @GF(p)"))?,
            ),
        };
        if let Some(dp) = default_p {
            if dp != p {
                return Err(Error::mismatch(format!("GF({dp})"), format!("GF({p})")));
            }
        }
        let rows: Vec<&str> = body.split(';').collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        let mut pos = 0;
        for row in &rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != n {
                return Err(Error::parse(
                    input,
                    pos,
                    format!("expected {n} entries per row, found {}", cells.len()),
                ));
            }
            for cell in cells {
                let v: i64 = cell
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(input, pos, format!("bad entry {cell:?}")))?;
                entries.push(v.rem_euclid(p as i64) as u8);
                pos += cell.len() + 1;
            }
        }
        Self::from_entries(p, n, &entries).map_err(|e| Error::parse(input, 0, e.to_string()))
    }

    /// Entries without the field suffix.
    pub fn body(&self) -> String {
        self.rows()
            .iter()
            .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.body(), self.p)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Data about a matrix that membership tests consult repeatedly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixFacts {
    pub matrix: Matrix,
    pub rank: usize,
    image: Matrix,
    kernel: Matrix,
    reducer: (Matrix, Matrix),
}

impl MatrixFacts {
    pub fn of(matrix: Matrix) -> Self {
        let (kernel, rank) = matrix.rref();
        MatrixFacts {
            matrix,
            rank,
            image: matrix.image_key(),
            kernel,
            reducer: matrix.reduce_to_partial_identity(),
        }
    }

    pub fn h_related(&self, other: &MatrixFacts) -> bool {
        self.image == other.image && self.kernel == other.kernel
    }

    /// `s1 · B · s2` as an element of `GL(rank, F)`, where `(s1, s2)` reduces
    /// this matrix to `E_rank`. `None` unless `B` is H-related to it.
    pub fn reduce(&self, other: &Matrix) -> Option<Matrix> {
        let (s1, s2) = self.reducer;
        s1.mul(other).mul(&s2).leading_block(self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matrix {
        Matrix::parse(s, None).unwrap()
    }

    #[test]
    fn rank_and_spaces() {
        assert_eq!(Matrix::identity(2, 2).rank(), 2);
        let z = Matrix::zero(3, 2);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_space().len(), 2);
        let a = m("1,0;1,0@GF(2)");
        assert_eq!(a.rank(), 1);
        assert_eq!(a.image_space(), vec![vec![1, 1]]);
        assert_eq!(a.kernel_space(), vec![vec![0, 1]]);
    }

    #[test]
    fn scalar_factors() {
        let a = m("1,1;0,1@GF(2)");
        assert_eq!(a.scalar_factor(&a), Some(1));
        let e = Matrix::identity(3, 2);
        assert_eq!(Matrix::scalar(3, 2, 2).scalar_factor(&e), Some(2));
        assert_eq!(Matrix::identity(2, 2).scalar_factor(&a), None);
    }

    #[test]
    fn reduction_is_exact() {
        for p in [2, 3] {
            for a in Matrix::all(p, 2) {
                let (s1, s2) = a.reduce_to_partial_identity();
                assert!(s1.is_invertible() && s2.is_invertible());
                assert_eq!(
                    s1.mul(&a).mul(&s2),
                    Matrix::partial_identity(p, 2, a.rank()),
                    "{a}"
                );
            }
        }
        let a = m("0,1;0,0@GF(2)");
        let (s1, s2) = a.reduce_to_partial_identity();
        assert_eq!(s1.mul(&a).mul(&s2), Matrix::partial_identity(2, 2, 1));
    }

    #[test]
    fn inverse_and_blocks() {
        let a = m("1,2;0,1@GF(3)");
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(3, 2));
        assert!(m("1,1;1,1@GF(2)").inverse().is_none());
        let b = m("2,0,0;0,0,0;0,0,0@GF(3)");
        assert_eq!(b.leading_block(1).unwrap(), m("2@GF(3)"));
        assert!(b.leading_block(2).is_none());
    }

    #[test]
    fn literals() {
        let a = m("1,0;1,1@GF(2)");
        assert_eq!(a.to_string(), "1,0;1,1@GF(2)");
        assert_eq!(
            Matrix::parse("2,-1;0,1", Some(3)).unwrap().body(),
            "2,2;0,1"
        );
        assert!(Matrix::parse("1,0;1@GF(2)", None).is_err());
        assert!(Matrix::parse("1,0;0,1", None).is_err());
        assert!(Matrix::parse("1,0;0,1@GF(2)", Some(3)).is_err());
    }

    #[test]
    fn green_relations() {
        let e1 = Matrix::partial_identity(2, 2, 1);
        let a = m("0,1;0,0@GF(2)");
        assert!(!e1.h_related(&a));
        assert!(e1.same_image(&a));
        let fa = MatrixFacts::of(e1);
        assert_eq!(fa.reduce(&e1), Some(m("1@GF(2)")));
        assert_eq!(fa.reduce(&a), None);
    }
}
