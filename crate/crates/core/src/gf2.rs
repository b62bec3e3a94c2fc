//! Bit-packed exact linear algebra over the two-element field.
//!
//! `GF2Vec` is a dense vector of bits, `GF2Mat` a row-major packed matrix.
//! Addition is coordinatewise XOR; all arithmetic is exact.
//!
//! Conventions used throughout the crate:
//! - coordinate 0 is the lowest bit; bitstring text prints coordinate 0 first;
//! - matrices act on column vectors, so column `j` is the image of basis
//!   vector `j`;
//! - linear forms are row vectors and compose by `form . matrix`
//!   (see [`GF2Mat::pullback`]).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2). Coordinates beyond `len` are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Vec {
    len: usize,
    words: Vec<u64>,
}

impl GF2Vec {
    /// The zero vector of the given length.
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector with a single 1 at `index`.
    ///
    /// # Panics
    /// Panics if `index >= len`.
    #[must_use]
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, 1);
        v
    }

    /// Builds a vector from explicit 0/1 coordinates, coordinate 0 first.
    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1);
        }
        v
    }

    /// Interprets `counter` as `width` bits with coordinate 0 taken from the
    /// most significant position, so increasing counters enumerate vectors in
    /// ascending bitstring order.
    ///
    /// # Panics
    /// Panics if `counter >= 2^width`.
    #[must_use]
    pub fn from_counter_msb(counter: u64, width: usize) -> Self {
        assert!(width >= 64 || counter < (1u64 << width), "counter out of range");
        let mut v = Self::zeros(width);
        for i in 0..width {
            v.set(i, ((counter >> (width - 1 - i)) & 1) as u8);
        }
        v
    }

    #[must_use]
    pub const fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Coordinate `i` as 0 or 1.
    ///
    /// # Panics
    /// Panics if `i >= len`.
    #[must_use]
    pub fn get(&self, i: usize) -> u8 {
        assert!(i < self.len, "coordinate {i} out of range (len={})", self.len);
        ((self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1) as u8
    }

    /// Sets coordinate `i` to `bit & 1`.
    ///
    /// # Panics
    /// Panics if `i >= len`.
    pub fn set(&mut self, i: usize, bit: u8) {
        assert!(i < self.len, "coordinate {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit & 1 == 1 {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Flips coordinate `i`.
    ///
    /// # Panics
    /// Panics if `i >= len`.
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "coordinate {i} out of range (len={})", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Coordinatewise XOR (addition over GF(2)).
    ///
    /// # Panics
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(
            self.len, other.len,
            "xor_assign: length mismatch ({} vs {})",
            self.len, other.len
        );
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Sum over GF(2).
    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard dot product `sum x_i y_i` over GF(2).
    ///
    /// # Panics
    /// Panics if lengths differ.
    #[must_use]
    pub fn dot(&self, other: &Self) -> u8 {
        assert_eq!(
            self.len, other.len,
            "dot: length mismatch ({} vs {})",
            self.len, other.len
        );
        let acc: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        (acc & 1) as u8
    }

    /// Number of nonzero coordinates.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the coordinate sum.
    #[must_use]
    pub fn parity(&self) -> u8 {
        (self.weight() & 1) as u8
    }

    /// Indices of nonzero coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i) == 1)
    }

    /// The first `n` coordinates as a new vector.
    ///
    /// # Panics
    /// Panics if `n > len`.
    #[must_use]
    pub fn prefix(&self, n: usize) -> Self {
        assert!(n <= self.len);
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.set(i, self.get(i));
        }
        out
    }

    /// Copy with the length extended to `n`, new coordinates zero.
    ///
    /// # Panics
    /// Panics if `n < len`.
    #[must_use]
    pub fn extended(&self, n: usize) -> Self {
        assert!(n >= self.len);
        let mut out = Self::zeros(n);
        for i in self.ones() {
            out.set(i, 1);
        }
        out
    }

    /// Bitstring text form, coordinate 0 first.
    #[must_use]
    pub fn bitstring(&self) -> String {
        self.to_string()
    }

    /// Parses a bitstring of '0'/'1' characters, coordinate 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for GF2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vec({self})")
    }
}

impl FromStr for GF2Vec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = GF2Vec::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, 1),
                other => {
                    return Err(Error::Parse(format!(
                        "invalid character {other:?} in bitstring {s:?}"
                    )))
                }
            }
        }
        Ok(v)
    }
}

impl Ord for GF2Vec {
    /// Ascending bitstring order: the first differing coordinate decides,
    /// shorter strings compare before longer ones on a shared prefix.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff.trailing_zeros();
                let self_bit = (a >> first) & 1;
                return if self_bit == 1 { Ordering::Greater } else { Ordering::Less };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for GF2Vec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A matrix over GF(2), row-major packed bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Mat {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// One solution of a linear system together with a basis of the homogeneous
/// solution space.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: GF2Vec,
    pub kernel: Vec<GF2Vec>,
}

impl GF2Mat {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: &[GF2Vec]) -> Result<Self> {
        let cols = rows.first().map_or(0, GF2Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for j in row.ones() {
                m.set(i, j, 1);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from columns (images of basis vectors).
    pub fn from_cols(cols: &[GF2Vec]) -> Result<Self> {
        let rows = cols.first().map_or(0, GF2Vec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for i in col.ones() {
                m.set(i, j, 1);
            }
        }
        Ok(m)
    }

    #[must_use]
    pub const fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub const fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at row `i`, column `j`.
    ///
    /// # Panics
    /// Panics if out of range.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        ((self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1) as u8
    }

    /// Sets entry at row `i`, column `j` to `bit & 1`.
    ///
    /// # Panics
    /// Panics if out of range.
    pub fn set(&mut self, i: usize, j: usize, bit: u8) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let mask = 1u64 << (j % WORD_BITS);
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        if bit & 1 == 1 {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s0 = src * self.stride;
        let d0 = dst * self.stride;
        for w in 0..self.stride {
            let v = self.data[s0 + w];
            self.data[d0 + w] ^= v;
        }
    }

    /// Row `i` as a vector.
    #[must_use]
    pub fn row(&self, i: usize) -> GF2Vec {
        assert!(i < self.rows);
        let mut v = GF2Vec::zeros(self.cols);
        v.words.copy_from_slice(self.row_words(i));
        v
    }

    /// Column `j` as a vector (the image of basis vector `j`).
    #[must_use]
    pub fn col(&self, j: usize) -> GF2Vec {
        assert!(j < self.cols);
        let mut v = GF2Vec::zeros(self.rows);
        for i in 0..self.rows {
            v.set(i, self.get(i, j));
        }
        v
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Exact matrix product over GF(2).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_base = i * out.stride;
            for k in 0..self.cols {
                if self.get(i, k) == 1 {
                    let src = k * other.stride;
                    for w in 0..other.stride {
                        out.data[out_base + w] ^= other.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M x` (column convention).
    ///
    /// # Panics
    /// Panics if `x.len() != cols`.
    #[must_use]
    pub fn apply(&self, x: &GF2Vec) -> GF2Vec {
        assert_eq!(x.len(), self.cols, "apply: expected length {}, got {}", self.cols, x.len());
        let mut out = GF2Vec::zeros(self.rows);
        for i in 0..self.rows {
            let acc: u32 = self
                .row_words(i)
                .iter()
                .zip(&x.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            out.set(i, (acc & 1) as u8);
        }
        out
    }

    /// Pullback of a linear form: returns `phi . M`, the coordinates of
    /// `x -> phi(M x)`.
    ///
    /// # Panics
    /// Panics if `phi.len() != rows`.
    #[must_use]
    pub fn pullback(&self, phi: &GF2Vec) -> GF2Vec {
        assert_eq!(phi.len(), self.rows, "pullback: expected length {}, got {}", self.rows, phi.len());
        let mut out = GF2Vec::zeros(self.cols);
        for i in phi.ones() {
            out.words
                .iter_mut()
                .zip(self.row_words(i))
                .for_each(|(o, r)| *o ^= r);
        }
        out
    }

    /// Rank via Gaussian elimination.
    #[must_use]
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon().len()
    }

    /// In-place forward elimination; returns the pivot columns in order.
    fn row_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) == 1) else {
                continue;
            };
            if p != r {
                for w in 0..self.stride {
                    self.data.swap(r * self.stride + w, p * self.stride + w);
                }
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) == 1 {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Inverse over GF(2), or `None` when the matrix is singular.
    ///
    /// # Panics
    /// Panics if the matrix is not square.
    #[must_use]
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse: matrix must be square");
        let n = self.rows;
        // augmented [self | I], eliminate, read off the right block
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.row_echelon();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// A basis of the right kernel `{x : M x = 0}`.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<GF2Vec> {
        let mut m = self.clone();
        let pivots = m.row_echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot.iter().enumerate().filter(|(_, &p)| !p) {
            let mut v = GF2Vec::zeros(self.cols);
            v.set(free, 1);
            for (r, &c) in pivots.iter().enumerate() {
                if m.get(r, free) == 1 {
                    v.set(c, 1);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `M x = b`: one particular solution plus a kernel basis, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &GF2Vec) -> Result<Option<LinearSolution>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "solve: matrix has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b.get(i));
        }
        let pivots = aug.row_echelon();
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return Ok(None);
        }
        let mut particular = GF2Vec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) == 1 {
                particular.set(c, 1);
            }
        }
        Ok(Some(LinearSolution {
            particular,
            kernel: self.kernel_basis(),
        }))
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Rectangular block copy starting at `(r0, c0)`.
    ///
    /// # Panics
    /// Panics if the block exceeds the matrix.
    #[must_use]
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Writes `block` into this matrix with its top-left corner at `(r0, c0)`.
    ///
    /// # Panics
    /// Panics if the block exceeds the matrix.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    /// Parses plain text rows of '0'/'1' characters, one row per line.
    pub fn parse_text(s: &str) -> Result<Self> {
        let rows: Vec<GF2Vec> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(GF2Vec::parse)
            .collect::<Result<_>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("matrix text has no rows".into()));
        }
        Self::from_rows(&rows)
    }
}

impl fmt::Display for GF2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Ord for GF2Mat {
    /// Deterministic order: shape first, then rows in ascending bitstring order.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| {
                for i in 0..self.rows {
                    let ord = self.row(i).cmp(&other.row(i));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for GF2Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Mul for &GF2Mat {
    type Output = GF2Mat;

    /// # Panics
    /// Panics on a shape mismatch; use [`GF2Mat::mul`] for a checked product.
    fn mul(self, rhs: &GF2Mat) -> GF2Mat {
        GF2Mat::mul(self, rhs).expect("matrix shape mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&str]) -> GF2Mat {
        GF2Mat::parse_text(&rows.join("\n")).unwrap()
    }

    #[test]
    fn identity_times_anything() {
        let m = mat(&["101", "011", "110"]);
        assert_eq!(GF2Mat::identity(3).mul(&m).unwrap(), m);
        assert_eq!(m.mul(&GF2Mat::identity(3)).unwrap(), m);
    }

    #[test]
    fn char_two_involution() {
        // [[1,1],[0,1]] squares to the identity over GF(2)
        let m = mat(&["11", "01"]);
        assert!(m.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn mul_matches_naive_oracle() {
        let mut rng = crate::rng::SplitMix64::new(0x9e3779b97f4a7c15);
        for _ in 0..20 {
            let a = rng.matrix(8, 8);
            let b = rng.matrix(8, 8);
            let c = a.mul(&b).unwrap();
            for i in 0..8 {
                for j in 0..8 {
                    let mut acc = 0u8;
                    for k in 0..8 {
                        acc ^= a.get(i, k) & b.get(k, j);
                    }
                    assert_eq!(c.get(i, j), acc, "mismatch at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn mul_shape_error() {
        let a = GF2Mat::zeros(2, 3);
        let b = GF2Mat::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_identity_and_unipotent() {
        assert_eq!(GF2Mat::identity(4).inverse().unwrap(), GF2Mat::identity(4));
        let m = mat(&["11", "01"]);
        assert_eq!(m.inverse().unwrap(), m); // self-inverse in characteristic 2
    }

    #[test]
    fn exactly_six_invertible_2x2() {
        // all 16 matrices; invertible exactly for the 6 elements of GL(2)
        let mut invertible = 0;
        for bits in 0..16u8 {
            let mut m = GF2Mat::zeros(2, 2);
            m.set(0, 0, bits & 1);
            m.set(0, 1, (bits >> 1) & 1);
            m.set(1, 0, (bits >> 2) & 1);
            m.set(1, 1, (bits >> 3) & 1);
            match m.inverse() {
                Some(inv) => {
                    invertible += 1;
                    assert!(inv.mul(&m).unwrap().is_identity());
                    assert_eq!(m.rank(), 2);
                }
                None => assert!(m.rank() < 2),
            }
        }
        assert_eq!(invertible, 6);
    }

    #[test]
    fn solve_zero_matrix() {
        let a = GF2Mat::zeros(3, 4);
        let sol = a.solve(&GF2Vec::zeros(3)).unwrap().unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.kernel.len(), 4); // kernel is the full space
    }

    #[test]
    fn solve_identity() {
        let a = GF2Mat::identity(5);
        let b = GF2Vec::parse("10110").unwrap();
        let sol = a.solve(&b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_residual_random_systems() {
        let mut rng = crate::rng::SplitMix64::new(42);
        let mut seen_consistent = 0;
        while seen_consistent < 10 {
            let a = rng.matrix(6, 9);
            // force consistency: b = a * x0 for a random x0
            let x0 = rng.vector(9);
            let b = a.apply(&x0);
            let sol = a.solve(&b).unwrap().expect("consistent by construction");
            assert!(a.apply(&sol.particular).xor(&b).is_zero());
            // every kernel combination keeps the residual zero
            for mask in 0..(1u32 << sol.kernel.len().min(5)) {
                let mut x = sol.particular.clone();
                for (k, kv) in sol.kernel.iter().enumerate().take(5) {
                    if (mask >> k) & 1 == 1 {
                        x.xor_assign(kv);
                    }
                }
                assert!(a.apply(&x).xor(&b).is_zero());
            }
            seen_consistent += 1;
        }
    }

    #[test]
    fn solve_inconsistent() {
        // x + y = 0 and x + y = 1 has no solution
        let a = mat(&["11", "11"]);
        let b = GF2Vec::parse("01").unwrap();
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_shape_error() {
        let a = GF2Mat::identity(3);
        assert!(matches!(a.solve(&GF2Vec::zeros(2)), Err(Error::Shape(_))));
    }

    #[test]
    fn rank_nullity_exhaustive_small() {
        // every 2x2 and a sample of 3x3: rank + dim ker = cols
        for bits in 0..16u32 {
            let mut m = GF2Mat::zeros(2, 2);
            for k in 0..4 {
                m.set(k / 2, k % 2, ((bits >> k) & 1) as u8);
            }
            assert_eq!(m.rank() + m.kernel_basis().len(), 2);
        }
        for bits in 0..512u32 {
            let mut m = GF2Mat::zeros(3, 3);
            for k in 0..9 {
                m.set(k / 3, k % 3, ((bits >> k) & 1) as u8);
            }
            assert_eq!(m.rank() + m.kernel_basis().len(), 3);
        }
    }

    #[test]
    fn pullback_is_row_composition() {
        let m = mat(&["110", "011", "101"]);
        let phi = GF2Vec::parse("101").unwrap();
        let pulled = m.pullback(&phi);
        for j in 0..3 {
            assert_eq!(pulled.get(j), phi.dot(&m.col(j)));
        }
    }

    #[test]
    fn bitstring_roundtrip_and_order() {
        let v = GF2Vec::parse("0110").unwrap();
        assert_eq!(v.to_string(), "0110");
        let a = GF2Vec::parse("011").unwrap();
        let b = GF2Vec::parse("100").unwrap();
        assert!(a < b, "bitstring order treats coordinate 0 as most significant");
        let c = GF2Vec::from_counter_msb(3, 3);
        assert_eq!(c.to_string(), "011");
    }

    #[test]
    fn counter_enumeration_is_ascending() {
        let mut prev: Option<GF2Vec> = None;
        for k in 0..32 {
            let v = GF2Vec::from_counter_msb(k, 5);
            if let Some(p) = prev {
                assert!(p < v);
            }
            prev = Some(v);
        }
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m = mat(&["10", "11", "01"]);
        let rendered = m.to_string();
        assert_eq!(rendered, "10\n11\n01");
        assert_eq!(GF2Mat::parse_text(&rendered).unwrap(), m);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(GF2Vec::parse("01x").is_err());
        assert!(GF2Mat::parse_text("10\n1").is_err());
        assert!(GF2Mat::parse_text("").is_err());
    }
}
