//! Dense matrices over a prime field and the elimination kernels built on them.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{check_cap, Error, Result};
use crate::field::PrimeField;

pub const DEFAULT_GL_CAP: u128 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u16>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod p.
    pub fn from_vec(rows: usize, cols: usize, field: PrimeField, data: Vec<u16>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let p = field.p();
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Convenience constructor from nested rows (entries reduced mod p).
    ///
    /// # Panics
    /// If the rows are ragged.
    pub fn from_rows<R: AsRef<[u16]>>(field: PrimeField, rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend(row.as_ref().iter().map(|&x| x % field.p()));
        }
        Matrix {
            rows: r,
            cols: c,
            field,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols<R: AsRef<[u16]>>(field: PrimeField, rows: usize, cols: &[R]) -> Self {
        let mut m = Self::zeros(rows, cols.len(), field);
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i] % field.p();
            }
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: PrimeField,
        mut f: impl FnMut(usize, usize) -> u16,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn data(&self) -> &[u16] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u16> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u16> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |i, j| self.get(j, i))
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        Ok(self.mul(other))
    }

    /// Matrix product.
    ///
    /// # Panics
    /// On incompatible shapes; use [`Matrix::try_mul`] for a checked version.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let p = self.field.p() as u64;
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (x % p) as u16;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u16]) -> Vec<u16> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u16
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: u16) -> Matrix {
        let f = self.field;
        let c = c % f.p();
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..*self }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix { data, ..*self }
    }

    /// `block_diag(A, B)`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.rows + b.rows;
        let m = a.cols + b.cols;
        let mut out = Matrix::zeros(n, m, a.field);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.data[i * m + j] = a.get(i, j);
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.data[(a.rows + i) * m + a.cols + j] = b.get(i, j);
            }
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(r1 - r0, c1 - c0, self.field, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Reduced row-echelon form with deterministic pivoting: columns are
    /// scanned left to right, and the first row at or below the current rank
    /// with a nonzero entry becomes the pivot row.
    pub fn rref(&self) -> Rref {
        if self.field.p() == 2 {
            return rref_gf2(self);
        }
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zeros(n, 2 * n, self.field);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.matrix.submatrix(0, n, n, 2 * n))
    }

    pub fn determinant(&self) -> u16 {
        assert!(self.is_square());
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u16;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| m.get(r, c) != 0) else {
                return 0;
            };
            if r != c {
                m.swap_rows(r, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for r2 in c + 1..n {
                let factor = f.mul(m.get(r2, c), inv);
                if factor != 0 {
                    for k in c..n {
                        let v = f.sub(m.get(r2, k), f.mul(factor, m.get(c, k)));
                        m.data[r2 * n + k] = v;
                    }
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (rows, cols, row-major entries); the modulus is compared
/// last so that matrices over one field sort by entries.
impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data, self.field.p()).cmp(&(
            other.rows,
            other.cols,
            &other.data,
            other.field.p(),
        ))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{{", self.field)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let f = m.field;
    let p = f.p() as u32;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(r) = (rank..rows).find(|&r| m.data[r * cols + c] != 0) else {
            continue;
        };
        m.swap_rows(r, rank);
        let inv = f.inv(m.data[rank * cols + c]).expect("nonzero pivot");
        for k in c..cols {
            let x = &mut m.data[rank * cols + k];
            *x = f.mul(*x, inv);
        }
        let (before, rest) = m.data.split_at_mut(rank * cols);
        let (prow, after) = rest.split_at_mut(cols);
        for row in before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            let neg = p - factor as u32;
            for k in c..cols {
                row[k] = ((row[k] as u32 + neg * prow[k] as u32) % p) as u16;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    pivots
}

/// Bit-packed elimination over GF(2). Performs exactly the same row
/// operations as the generic path, so the result is identical.
fn rref_gf2(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows, m.cols);
    let words = cols.div_ceil(64).max(1);
    let mut bits = vec![0u64; rows * words];
    for i in 0..rows {
        for j in 0..cols {
            if m.data[i * cols + j] != 0 {
                bits[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(r) = (rank..rows).find(|&r| bits[r * words + w] & b != 0) else {
            continue;
        };
        if r != rank {
            for k in 0..words {
                bits.swap(r * words + k, rank * words + k);
            }
        }
        for r2 in 0..rows {
            if r2 != rank && bits[r2 * words + w] & b != 0 {
                for k in w..words {
                    let v = bits[rank * words + k];
                    bits[r2 * words + k] ^= v;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let mut out = Matrix::zeros(rows, cols, m.field);
    for i in 0..rows {
        for j in 0..cols {
            out.data[i * cols + j] = ((bits[i * words + j / 64] >> (j % 64)) & 1) as u16;
        }
    }
    Rref {
        matrix: out,
        rank,
        pivots,
    }
}

/// Basis of the null space `{x : A x = 0}`: one vector per free column, in
/// column order, with that free variable set to 1 and the other free
/// variables set to 0.
pub fn solve_homogeneous(a: &Matrix) -> Vec<Vec<u16>> {
    let r = a.rref();
    let f = a.field;
    let cols = a.cols;
    let mut is_pivot = vec![false; cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::with_capacity(cols - r.rank);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u16; cols];
        v[free] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = f.neg(r.matrix.get(i, free));
        }
        basis.push(v);
    }
    basis
}

/// An incrementally maintained subspace of `F_p^len` kept in reduced
/// row-echelon form (rows sorted by pivot, pivots cleared elsewhere).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EchelonBasis {
    field: PrimeField,
    len: usize,
    rows: Vec<Vec<u16>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, len: usize) -> Self {
        EchelonBasis {
            field,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<R: AsRef<[u16]>>(field: PrimeField, len: usize, vs: &[R]) -> Self {
        let mut b = Self::new(field, len);
        for v in vs {
            b.insert(v.as_ref());
        }
        b
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the basis; the result is zero iff `v`
    /// was in the span.
    pub fn reduce_in_place(&self, v: &mut [u16]) {
        let p = self.field.p() as u32;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u32;
            for k in pc..self.len {
                v[k] = ((v[k] as u32 + neg * row[k] as u32) % p) as u16;
            }
        }
    }

    pub fn contains(&self, v: &[u16]) -> bool {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns `false` if it was already there.
    pub fn insert(&mut self, v: &[u16]) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let f = self.field;
        let p = f.p() as u32;
        let mut w: Vec<u16> = v.iter().map(|&x| x % f.p()).collect();
        self.reduce_in_place(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u32;
            for k in pc..self.len {
                row[k] = ((row[k] as u32 + neg * w[k] as u32) % p) as u16;
            }
        }
        let pos = self.pivots.partition_point(|&x| x < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.rows.len() * self.len);
        for r in &self.rows {
            data.extend_from_slice(r);
        }
        Matrix {
            rows: self.rows.len(),
            cols: self.len,
            field: self.field,
            data,
        }
    }

    /// Rows of a matrix `P` with `P v = 0` exactly for `v` in the span.
    pub fn parity_check(&self) -> Vec<Vec<u16>> {
        solve_homogeneous(&self.to_matrix())
    }
}

/// Encodes a vector as the integer whose base-q digits are its entries, most
/// significant first. This is the lexicographic order on vectors.
pub fn encode_vector(v: &[u16], q: u16) -> u64 {
    v.iter().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

pub fn decode_vector(mut code: u64, n: usize, q: u16) -> Vec<u16> {
    let mut v = vec![0u16; n];
    decode_vector_into(&mut code, &mut v, q);
    v
}

pub(crate) fn decode_vector_into(code: &mut u64, out: &mut [u16], q: u16) {
    for x in out.iter_mut().rev() {
        *x = (*code % q as u64) as u16;
        *code /= q as u64;
    }
}

/// `q^e` as a saturating `u128`.
pub fn pow_u128(q: u64, e: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// `|GL(n, q)| = ∏_{i<n} (q^n − q^i)`.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let qn = pow_u128(q, n as u64);
    (0..n as u64).fold(1u128, |acc, i| acc.saturating_mul(qn - pow_u128(q, i)))
}

/// Streams every invertible `n×n` matrix exactly once, in lexicographic
/// row-major order.
pub fn enumerate_gl(n: usize, field: PrimeField, cap: u128) -> Result<GlIter> {
    check_cap("enumerate_gl", pow_u128(field.order(), (n * n) as u64), cap)?;
    Ok(GlIter(IndependentTuples::new(n, n, field)))
}

/// Iterator over `GL(n, q)`; see [`enumerate_gl`].
pub struct GlIter(IndependentTuples);

impl GlIter {
    /// Advances and returns the current matrix entries without allocating.
    pub fn next_entries(&mut self) -> Option<&[u16]> {
        self.0.next_entries()
    }
}

impl Iterator for GlIter {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        let (n, field) = (self.0.n, self.0.field);
        self.0.next_entries().map(|d| Matrix {
            rows: n,
            cols: n,
            field,
            data: d.to_vec(),
        })
    }
}

/// All ordered `k`-tuples of linearly independent vectors of `F_q^n`, in
/// lexicographic order of the concatenated entries.
pub struct IndependentTuples {
    n: usize,
    k: usize,
    field: PrimeField,
    limit: u64,
    codes: Vec<u64>,
    // spans[i] = span of vectors 0..i
    spans: Vec<EchelonBasis>,
    buf: Vec<u16>,
    started: bool,
    done: bool,
}

impl IndependentTuples {
    pub fn new(n: usize, k: usize, field: PrimeField) -> Self {
        IndependentTuples {
            n,
            k,
            field,
            limit: (field.order()).pow(n as u32),
            codes: vec![0; k],
            spans: (0..=k).map(|_| EchelonBasis::new(field, n)).collect(),
            buf: vec![0; k * n],
            started: false,
            done: k > n,
        }
    }

    /// Smallest code `>= from` for vector `i` outside the span of the ones
    /// before it.
    fn seek(&mut self, i: usize, from: u64) -> bool {
        let n = self.n;
        let q = self.field.p();
        let mut code = from;
        while code < self.limit {
            let mut c = code;
            decode_vector_into(&mut c, &mut self.buf[i * n..(i + 1) * n], q);
            if !self.spans[i].contains(&self.buf[i * n..(i + 1) * n]) {
                self.codes[i] = code;
                let mut next = self.spans[i].clone();
                next.insert(&self.buf[i * n..(i + 1) * n]);
                self.spans[i + 1] = next;
                return true;
            }
            code += 1;
        }
        false
    }

    /// Fills positions `i..k` with their smallest admissible values,
    /// backtracking when a position is exhausted.
    fn fill_from(&mut self, mut i: usize, mut from: u64) -> bool {
        loop {
            if self.seek(i, from) {
                i += 1;
                if i == self.k {
                    return true;
                }
                from = 0;
            } else {
                if i == 0 {
                    return false;
                }
                i -= 1;
                from = self.codes[i] + 1;
            }
        }
    }

    /// Advances; the returned slice holds the `k` vectors back to back.
    pub fn next_entries(&mut self) -> Option<&[u16]> {
        if self.done {
            return None;
        }
        let ok = if self.k == 0 {
            !std::mem::replace(&mut self.started, true)
        } else if !self.started {
            self.started = true;
            self.fill_from(0, 0)
        } else {
            let last = self.k - 1;
            self.fill_from(last, self.codes[last] + 1)
        };
        if ok {
            Some(&self.buf)
        } else {
            self.done = true;
            None
        }
    }

    /// Span of the current tuple.
    pub fn span(&self) -> &EchelonBasis {
        &self.spans[self.k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn empty_matrix_is_invertible() {
        let f = PrimeField::new(3).unwrap();
        let e = Matrix::zeros(0, 0, f);
        assert!(e.is_invertible());
        assert_eq!(e.inverse(), Some(e.clone()));
    }

    #[test]
    fn rref_examples() {
        let f2 = gf(2);
        let i3 = Matrix::identity(3, f2);
        let r = i3.rref();
        assert_eq!(r.matrix, i3);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(Matrix::from_rows(f2, &[[1, 1], [1, 1]]).rank(), 1);
        assert_eq!(Matrix::from_rows(gf(3), &[[0, 1], [2, 0]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let f2 = gf(2);
        assert!(solve_homogeneous(&Matrix::identity(2, f2)).is_empty());
        assert_eq!(solve_homogeneous(&Matrix::zeros(2, 3, f2)).len(), 3);
        let a = Matrix::from_rows(f2, &[[1, 1, 0]]);
        let k = solve_homogeneous(&a);
        assert_eq!(k, vec![vec![1, 1, 0], vec![0, 0, 1]]);
        // independent check: enumerate all of GF(2)^3
        let sols: Vec<u64> = (0..8)
            .filter(|&c| a.mul_vec(&decode_vector(c, 3, 2)).iter().all(|&x| x == 0))
            .collect();
        let mut span: Vec<u64> = (0..4u64)
            .map(|mask| {
                let mut v = [0u16; 3];
                for (i, b) in k.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for j in 0..3 {
                            v[j] ^= b[j];
                        }
                    }
                }
                encode_vector(&v, 2)
            })
            .collect();
        span.sort();
        assert_eq!(span, sols);
    }

    fn brute_gl_count(n: usize, q: u16) -> usize {
        let f = gf(q as u32);
        let total = (q as u64).pow((n * n) as u32);
        (0..total)
            .filter(|&c| {
                Matrix::from_vec(n, n, f, decode_vector(c, n * n, q))
                    .unwrap()
                    .is_invertible()
            })
            .count()
    }

    #[test]
    fn gl_counts() {
        for (n, q) in [(1usize, 2u16), (2, 2), (2, 3), (3, 2)] {
            let f = gf(q as u32);
            let all: Vec<Matrix> = enumerate_gl(n, f, DEFAULT_GL_CAP).unwrap().collect();
            assert_eq!(all.len(), brute_gl_count(n, q), "n={n} q={q}");
            assert_eq!(all.len() as u128, gl_order(n, q as u64));
            assert!(all.windows(2).all(|w| w[0] < w[1]), "lex order");
            assert!(all.iter().all(|m| m.is_invertible()));
        }
        assert_eq!(enumerate_gl(1, gf(2), DEFAULT_GL_CAP).unwrap().count(), 1);
        assert_eq!(enumerate_gl(3, gf(3), DEFAULT_GL_CAP).unwrap().count(), 11232);
    }

    #[test]
    fn gl_cap() {
        assert!(matches!(
            enumerate_gl(5, gf(2), DEFAULT_GL_CAP),
            Err(Error::CapExceeded { .. })
        ));
        assert!(enumerate_gl(4, gf(3), DEFAULT_GL_CAP).is_err());
        assert!(enumerate_gl(4, gf(2), DEFAULT_GL_CAP).is_ok());
    }

    #[test]
    fn inverse_and_det() {
        let f = gf(5);
        let a = Matrix::from_rows(f, &[[1, 2], [3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, f));
        assert_eq!(a.determinant(), f.reduce_signed(-2));
        assert!(Matrix::from_rows(f, &[[1, 2], [2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let f = gf(3);
        let a = EchelonBasis::from_vectors(f, 3, &[[1, 2, 0], [0, 1, 1]]);
        let b = EchelonBasis::from_vectors(f, 3, &[[1, 0, 1], [2, 1, 2], [1, 0, 1]]);
        assert_eq!(a.to_matrix(), a.to_matrix().rref().matrix);
        assert_eq!(a.dim(), 2);
        let span_b = Matrix::from_rows(f, &[[1, 0, 1], [2, 1, 2]]).rref();
        assert_eq!(b.to_matrix(), span_b.matrix);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 1..=max, 1..=max).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p as u16, r * c)
                .prop_map(move |d| Matrix::from_vec(r, c, gf(p), d).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rank_of_transpose(m in arb_matrix(6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rref_idempotent(m in arb_matrix(6)) {
            let r = m.rref();
            prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        }

        #[test]
        fn kernel_completes_row_space(m in arb_matrix(6)) {
            let k = solve_homogeneous(&m);
            prop_assert_eq!(k.len(), m.cols() - m.rank());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            // Over a finite field the row space and the kernel can intersect
            // (e.g. [1 1] over GF(2)), so the check is rank-nullity plus
            // independence of the kernel basis.
            let kb = EchelonBasis::from_vectors(m.field(), m.cols(), &k);
            prop_assert_eq!(kb.dim() + m.rank(), m.cols());
        }

        #[test]
        fn gf2_path_matches_generic(rows in 1usize..12, cols in 1usize..140, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let d: Vec<u16> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
            let m = Matrix::from_vec(rows, cols, gf(2), d).unwrap();
            let mut g = m.clone();
            let piv = rref_in_place(&mut g);
            let fast = rref_gf2(&m);
            prop_assert_eq!(fast.pivots, piv);
            prop_assert_eq!(fast.matrix, g);
        }

        #[test]
        fn echelon_matches_rref(m in arb_matrix(6)) {
            let mut b = EchelonBasis::new(m.field(), m.cols());
            for i in 0..m.rows() {
                b.insert(m.row(i));
            }
            let r = m.rref();
            prop_assert_eq!(b.to_matrix(), r.matrix.submatrix(0, r.rank, 0, m.cols()));
        }

        #[test]
        fn inverse_roundtrip(m in arb_matrix(5)) {
            if m.is_square() {
                match m.inverse() {
                    Some(inv) => prop_assert_eq!(inv.mul(&m), Matrix::identity(m.rows(), m.field())),
                    None => prop_assert!(m.rank() < m.rows()),
                }
                prop_assert_eq!(m.determinant() != 0, m.is_invertible());
            }
        }
    }
}
