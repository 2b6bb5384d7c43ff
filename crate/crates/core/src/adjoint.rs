//! Adjoint algebras `Adj(B)` and adjoint spaces `Adj(B, C)`.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{solve_homogeneous, EchelonBasis, Matrix};
use crate::tensor::{flip_slice, AlternatingTuple, MatrixTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointBasis {
    pub s: usize,
    pub t: usize,
    pub field: PrimeField,
    pub basis: Vec<(Matrix, Matrix)>,
}

impl AdjointBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The A-components, reduced to a canonical basis of `π₁`.
    pub fn pi1(&self) -> EchelonBasis {
        let mut e = EchelonBasis::new(self.field, self.s * self.s);
        for (a, _) in &self.basis {
            e.insert(a.data());
        }
        e
    }

    /// `Σ cᵢ (Aᵢ, Dᵢ)`.
    pub fn combination(&self, coeffs: &[u16]) -> (Matrix, Matrix) {
        let f = self.field;
        let mut a = Matrix::zeros(self.s, self.s, f);
        let mut d = Matrix::zeros(self.t, self.t, f);
        for (c, (ai, di)) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                a = a.add(&ai.scale(*c));
                d = d.add(&di.scale(*c));
            }
        }
        (a, d)
    }
}

/// Coefficient matrix of `{A·B_i − C_i·D = 0}` in the unknowns
/// `(A row-major, D row-major)`; one row per `(i, j, l)`.
pub fn adjoint_system(b: &MatrixTuple, c: &MatrixTuple) -> Matrix {
    let (s, t, r) = (b.s(), b.t(), b.len());
    let f = b.field();
    let cols = s * s + t * t;
    let mut sys = Matrix::zeros(r * s * t, cols, f);
    let mut row = 0;
    for (bi, ci) in b.mats().iter().zip(c.mats()) {
        for j in 0..s {
            for l in 0..t {
                // Σ_k A[j,k] B_i[k,l]
                for k in 0..s {
                    let v = bi.get(k, l);
                    if v != 0 {
                        sys.set(row, j * s + k, v);
                    }
                }
                // − Σ_k C_i[j,k] D[k,l]
                for k in 0..t {
                    let v = ci.get(j, k);
                    if v != 0 {
                        sys.set(row, s * s + k * t + l, f.neg(v));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

fn check_pair(b: &MatrixTuple, c: &MatrixTuple) -> Result<()> {
    if (b.s(), b.t(), b.len()) != (c.s(), c.t(), c.len()) {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices of {}x{} vs {} matrices of {}x{}",
            b.len(),
            b.s(),
            b.t(),
            c.len(),
            c.s(),
            c.t()
        )));
    }
    if b.field() != c.field() {
        return Err(Error::FieldMismatch(b.field().p(), c.field().p()));
    }
    Ok(())
}

/// Basis of `{(A, D) : A·B_i = C_i·D for all i}`.
pub fn adjoint_space(b: &MatrixTuple, c: &MatrixTuple) -> Result<AdjointBasis> {
    check_pair(b, c)?;
    let (s, t) = (b.s(), b.t());
    let f = b.field();
    let kernel = solve_homogeneous(&adjoint_system(b, c));
    let basis = kernel
        .into_iter()
        .map(|v| {
            let a = Matrix::from_vec(s, s, f, v[..s * s].to_vec()).expect("shape");
            let d = Matrix::from_vec(t, t, f, v[s * s..].to_vec()).expect("shape");
            (a, d)
        })
        .collect();
    Ok(AdjointBasis { s, t, field: f, basis })
}

pub fn adjoint_algebra(b: &MatrixTuple) -> AdjointBasis {
    adjoint_space(b, b).expect("a tuple is compatible with itself")
}

/// `(dim π₁(Adj(B)), dim π₁ ≤ n − r)` for `B = flip_slice(G, r)`.
pub fn property_f_margin(g: &AlternatingTuple, r: usize) -> Result<(usize, bool)> {
    let b = flip_slice(g, r)?;
    let dim = adjoint_algebra(&b).pi1().dim();
    Ok((dim, dim <= g.n() - r))
}
