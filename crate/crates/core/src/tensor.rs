//! Matrix tuples, alternating tuples and the spaces they span.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{EchelonBasis, Matrix};

/// Number of strictly-upper-triangular coordinates of an `n×n` matrix.
#[inline]
pub fn alt_dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Checks `uᵗAu = 0` for all `u`: zero diagonal and `Aᵗ = −A`. Over GF(2)
/// the diagonal condition is not implied by skew-symmetry, so both are
/// tested.
pub fn alternating_defect(a: &Matrix) -> Option<String> {
    if !a.is_square() {
        return Some(format!("not square ({}x{})", a.rows(), a.cols()));
    }
    let f = a.field();
    for i in 0..a.rows() {
        if a.get(i, i) != 0 {
            return Some(format!("nonzero diagonal entry at ({i},{i})"));
        }
        for j in i + 1..a.cols() {
            if a.get(j, i) != f.neg(a.get(i, j)) {
                return Some(format!("entry ({j},{i}) is not the negative of ({i},{j})"));
            }
        }
    }
    None
}

pub fn is_alternating(a: &Matrix) -> bool {
    alternating_defect(a).is_none()
}

/// Strictly-upper coordinates `(0,1),(0,2),…,(n−2,n−1)` in row-major order.
pub fn alt_coords(a: &Matrix) -> Vec<u16> {
    let n = a.rows();
    let mut v = Vec::with_capacity(alt_dim(n));
    for i in 0..n {
        for j in i + 1..n {
            v.push(a.get(i, j));
        }
    }
    v
}

/// Inverse of [`alt_coords`].
pub fn alt_from_coords(n: usize, field: PrimeField, coords: &[u16]) -> Matrix {
    assert_eq!(coords.len(), alt_dim(n));
    let mut m = Matrix::zeros(n, n, field);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, coords[k]);
            m.set(j, i, field.neg(coords[k] % field.p()));
            k += 1;
        }
    }
    m
}

/// `AᵗGA` computed directly in strictly-upper coordinates.
pub fn congruence_coords(g: &Matrix, a: &Matrix) -> Vec<u16> {
    let ga = g.mul(a);
    let f = g.field();
    let p = f.p() as u64;
    let (n, k) = (a.rows(), a.cols());
    let mut out = Vec::with_capacity(alt_dim(k));
    for i in 0..k {
        for j in i + 1..k {
            let mut s = 0u64;
            for r in 0..n {
                s += a.get(r, i) as u64 * ga.get(r, j) as u64;
            }
            out.push((s % p) as u16);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlternatingTuple {
    n: usize,
    field: PrimeField,
    mats: Vec<Matrix>,
}

impl AlternatingTuple {
    pub fn new(n: usize, field: PrimeField, mats: Vec<Matrix>) -> Result<Self> {
        for (index, a) in mats.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {index} is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != field {
                return Err(Error::FieldMismatch(a.field().p(), field.p()));
            }
            if let Some(reason) = alternating_defect(a) {
                return Err(Error::NotAlternating { index, reason });
            }
        }
        Ok(AlternatingTuple { n, field, mats })
    }

    pub fn zero(n: usize, m: usize, field: PrimeField) -> Self {
        AlternatingTuple {
            n,
            field,
            mats: vec![Matrix::zeros(n, n, field); m],
        }
    }

    pub fn from_coords(n: usize, field: PrimeField, coords: &[Vec<u16>]) -> Self {
        AlternatingTuple {
            n,
            field,
            mats: coords.iter().map(|c| alt_from_coords(n, field, c)).collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.mats.len()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn coords(&self) -> Vec<Vec<u16>> {
        self.mats.iter().map(alt_coords).collect()
    }

    /// `(AᵗG₁A, …, AᵗG_mA)`.
    pub fn congruent(&self, a: &Matrix) -> AlternatingTuple {
        let at = a.transpose();
        AlternatingTuple {
            n: a.cols(),
            field: self.field,
            mats: self.mats.iter().map(|g| at.mul(g).mul(a)).collect(),
        }
    }

    pub fn space(&self) -> MatrixSpace {
        MatrixSpace::from_alternating(self)
    }

    pub fn to_matrix_tuple(&self) -> MatrixTuple {
        MatrixTuple {
            s: self.n,
            t: self.n,
            field: self.field,
            mats: self.mats.clone(),
        }
    }

    /// Canonical tuple for the spanned space: the RREF basis, one matrix per
    /// basis vector.
    pub fn canonical_basis(&self) -> AlternatingTuple {
        let sp = self.space();
        AlternatingTuple::from_coords(self.n, self.field, sp.basis().rows())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixTuple {
    s: usize,
    t: usize,
    field: PrimeField,
    mats: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(s: usize, t: usize, field: PrimeField, mats: Vec<Matrix>) -> Result<Self> {
        for (i, a) in mats.iter().enumerate() {
            if a.rows() != s || a.cols() != t {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {i} is {}x{}, expected {s}x{t}",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.field() != field {
                return Err(Error::FieldMismatch(a.field().p(), field.p()));
            }
        }
        Ok(MatrixTuple { s, t, field, mats })
    }

    pub fn zero(s: usize, t: usize, r: usize, field: PrimeField) -> Self {
        MatrixTuple {
            s,
            t,
            field,
            mats: vec![Matrix::zeros(s, t, field); r],
        }
    }

    #[inline]
    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn transpose(&self) -> MatrixTuple {
        MatrixTuple {
            s: self.t,
            t: self.s,
            field: self.field,
            mats: self.mats.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `(P B₁ Q, …, P B_r Q)`.
    pub fn transform(&self, p: &Matrix, q: &Matrix) -> MatrixTuple {
        MatrixTuple {
            s: p.rows(),
            t: q.cols(),
            field: self.field,
            mats: self.mats.iter().map(|b| p.mul(b).mul(q)).collect(),
        }
    }

    pub fn space(&self) -> MatrixSpace {
        MatrixSpace::from_tuple(self)
    }

    /// `span ∪ im(B_i)` has full dimension `s`.
    pub fn is_image_nondegenerate(&self) -> bool {
        let mut b = EchelonBasis::new(self.field, self.s);
        for m in &self.mats {
            for j in 0..self.t {
                b.insert(&m.col(j));
                if b.dim() == self.s {
                    return true;
                }
            }
        }
        b.dim() == self.s
    }

    /// `∩ ker(B_i) = 0`.
    pub fn is_kernel_nondegenerate(&self) -> bool {
        self.transpose().is_image_nondegenerate()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// `Λ(n, q)` in strictly-upper coordinates.
    Alternating { n: usize },
    /// `M(s×t, q)` in row-major coordinates.
    General { s: usize, t: usize },
}

/// A linear span of matrices, stored by its canonical RREF coordinate basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSpace {
    ambient: Ambient,
    basis: EchelonBasis,
}

impl MatrixSpace {
    pub fn from_alternating(g: &AlternatingTuple) -> Self {
        let mut basis = EchelonBasis::new(g.field, alt_dim(g.n));
        for a in &g.mats {
            basis.insert(&alt_coords(a));
        }
        MatrixSpace {
            ambient: Ambient::Alternating { n: g.n },
            basis,
        }
    }

    pub fn from_tuple(b: &MatrixTuple) -> Self {
        let mut basis = EchelonBasis::new(b.field, b.s * b.t);
        for a in &b.mats {
            basis.insert(a.data());
        }
        MatrixSpace {
            ambient: Ambient::General { s: b.s, t: b.t },
            basis,
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn basis(&self) -> &EchelonBasis {
        &self.basis
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        match self.ambient {
            Ambient::Alternating { .. } => is_alternating(a) && self.basis.contains(&alt_coords(a)),
            Ambient::General { .. } => self.basis.contains(a.data()),
        }
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        let f = self.field();
        match self.ambient {
            Ambient::Alternating { n } => self
                .basis
                .rows()
                .iter()
                .map(|c| alt_from_coords(n, f, c))
                .collect(),
            Ambient::General { s, t } => self
                .basis
                .rows()
                .iter()
                .map(|c| Matrix::from_vec(s, t, f, c.clone()).expect("shape"))
                .collect(),
        }
    }
}

/// Whether two tuples span the same subspace of `M(s×t, q)`.
pub fn span_equal(x: &MatrixTuple, y: &MatrixTuple) -> Result<bool> {
    if (x.s, x.t) != (y.s, y.t) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            x.s, x.t, y.s, y.t
        )));
    }
    if x.field != y.field {
        return Err(Error::FieldMismatch(x.field.p(), y.field.p()));
    }
    Ok(x.space() == y.space())
}

pub fn span_equal_alt(x: &AlternatingTuple, y: &AlternatingTuple) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", x.n, y.n)));
    }
    if x.field != y.field {
        return Err(Error::FieldMismatch(x.field.p(), y.field.p()));
    }
    Ok(x.space() == y.space())
}

/// Takes the upper-right `r×(n−r)` block of each `G_k` and re-slices the
/// resulting `r×(n−r)×m` tensor along its first index:
/// `B_i(j, k) = G_k(i, r + j)`, with every `B_i` of size `(n−r)×m`.
pub fn flip_slice(g: &AlternatingTuple, r: usize) -> Result<MatrixTuple> {
    let n = g.n;
    if r == 0 || r >= n {
        return Err(Error::OutOfRange(format!("r = {r} must satisfy 1 <= r < n = {n}")));
    }
    let m = g.m();
    let mats = (0..r)
        .map(|i| Matrix::from_fn(n - r, m, g.field, |j, k| g.mats[k].get(i, r + j)))
        .collect();
    Ok(MatrixTuple {
        s: n - r,
        t: m,
        field: g.field,
        mats,
    })
}

/// An alternating tuple whose flip is `b` (zero outside the off-diagonal
/// blocks). Used to round-trip [`flip_slice`].
pub fn unflip(b: &MatrixTuple) -> AlternatingTuple {
    let r = b.len();
    let n = r + b.s;
    let f = b.field;
    let mats = (0..b.t)
        .map(|k| {
            let mut g = Matrix::zeros(n, n, f);
            for i in 0..r {
                for j in 0..b.s {
                    let v = b.mats[i].get(j, k);
                    g.set(i, r + j, v);
                    g.set(r + j, i, f.neg(v));
                }
            }
            g
        })
        .collect();
    AlternatingTuple { n, field: f, mats }
}
