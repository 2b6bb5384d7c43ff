//! r-individualisations of `F_q^n`: an ordered basis `v₁, …, v_r` of an
//! `r`-dimensional `L` together with a complement of `L`.

use crate::error::{check_cap, Error, Result};
use crate::field::PrimeField;
use crate::matrix::{pow_u128, EchelonBasis, IndependentTuples, Matrix};

pub const DEFAULT_INDIVIDUALISATION_CAP: u128 = 100_000_000;

/// `[v₁, …, v_r, u₁+w₁, …, u_{n−r}+w_{n−r}]` as columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Individualisation {
    pub r: usize,
    pub a1: Matrix,
}

impl Individualisation {
    pub fn l_basis(&self) -> Vec<Vec<u16>> {
        (0..self.r).map(|j| self.a1.col(j)).collect()
    }

    pub fn complement_basis(&self) -> Vec<Vec<u16>> {
        (self.r..self.a1.cols()).map(|j| self.a1.col(j)).collect()
    }
}

/// `(∏_{i<r}(qⁿ − qⁱ)) · q^{r(n−r)}`.
pub fn individualisation_count(n: usize, r: usize, q: u64) -> u128 {
    let qn = pow_u128(q, n as u64);
    let ordered: u128 = (0..r as u64).fold(1u128, |acc, i| acc.saturating_mul(qn - pow_u128(q, i)));
    ordered.saturating_mul(pow_u128(q, (r * (n - r)) as u64))
}

/// Streams all r-individualisations: `v`-tuples in lexicographic order, and
/// for each, every `(w₁, …, w_{n−r}) ∈ L^{n−r}` (by coefficient vectors in
/// lexicographic order) added to the greedy complement `u₁, …, u_{n−r}`
/// drawn from `e₁, …, eₙ`.
pub fn enumerate_individualisations(
    n: usize,
    r: usize,
    field: PrimeField,
    cap: u128,
) -> Result<IndividualisationIter> {
    if r == 0 || r >= n {
        return Err(Error::OutOfRange(format!("r = {r} must satisfy 1 <= r < n = {n}")));
    }
    check_cap(
        "enumerate_individualisations",
        individualisation_count(n, r, field.order()),
        cap,
    )?;
    Ok(IndividualisationIter {
        n,
        r,
        field,
        tuples: IndependentTuples::new(n, r, field),
        v: Vec::new(),
        u: Vec::new(),
        coeffs: Vec::new(),
        fresh: true,
    })
}

pub struct IndividualisationIter {
    n: usize,
    r: usize,
    field: PrimeField,
    tuples: IndependentTuples,
    v: Vec<Vec<u16>>,
    u: Vec<Vec<u16>>,
    // coefficient of v_i in w_j at [j * r + i]
    coeffs: Vec<u16>,
    fresh: bool,
}

impl IndividualisationIter {
    fn next_v(&mut self) -> bool {
        let (n, r) = (self.n, self.r);
        let Some(buf) = self.tuples.next_entries() else {
            return false;
        };
        self.v = (0..r).map(|i| buf[i * n..(i + 1) * n].to_vec()).collect();
        let mut span = EchelonBasis::from_vectors(self.field, n, &self.v);
        self.u.clear();
        for k in 0..n {
            let mut e = vec![0u16; n];
            e[k] = 1;
            if span.insert(&e) {
                self.u.push(e);
            }
        }
        self.coeffs = vec![0; r * (n - r)];
        true
    }

    fn bump_coeffs(&mut self) -> bool {
        let q = self.field.p();
        for c in self.coeffs.iter_mut().rev() {
            *c += 1;
            if *c < q {
                return true;
            }
            *c = 0;
        }
        false
    }
}

impl IndividualisationIter {
    /// Moves to the next individualisation. Returns `Some(true)` when the
    /// `v`-tuple changed (always on the first call), `Some(false)` when only
    /// the complement changed, `None` at the end.
    pub fn advance(&mut self) -> Option<bool> {
        if self.fresh {
            self.fresh = false;
            return self.next_v().then_some(true);
        }
        if self.bump_coeffs() {
            Some(false)
        } else {
            self.next_v().then_some(true)
        }
    }

    /// The current ordered basis of `L`.
    pub fn v(&self) -> &[Vec<u16>] {
        &self.v
    }

    /// The current complement basis `u_j + w_j`.
    pub fn complement(&self) -> Vec<Vec<u16>> {
        let f = self.field;
        let r = self.r;
        (0..self.n - r)
            .map(|j| {
                let mut col = self.u[j].clone();
                for (i, v) in self.v.iter().enumerate() {
                    let c = self.coeffs[j * r + i];
                    if c != 0 {
                        for (x, &y) in col.iter_mut().zip(v) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                }
                col
            })
            .collect()
    }

    pub fn current(&self) -> Individualisation {
        let mut cols = self.v.clone();
        cols.extend(self.complement());
        Individualisation {
            r: self.r,
            a1: Matrix::from_cols(self.field, self.n, &cols),
        }
    }
}

impl Iterator for IndividualisationIter {
    type Item = Individualisation;

    fn next(&mut self) -> Option<Individualisation> {
        self.advance()?;
        Some(self.current())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{enumerate_gl, DEFAULT_GL_CAP};
    use std::collections::HashSet;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn all(n: usize, r: usize, p: u32) -> Vec<Individualisation> {
        enumerate_individualisations(n, r, gf(p), DEFAULT_INDIVIDUALISATION_CAP)
            .unwrap()
            .collect()
    }

    #[test]
    fn counts() {
        assert_eq!(all(2, 1, 2).len(), 6);
        assert_eq!(all(2, 1, 3).len(), 24);
        assert_eq!(all(3, 1, 2).len(), 28);
        for n in 2..=4 {
            for r in 1..n {
                let got = all(n, r, 2);
                assert_eq!(got.len() as u128, individualisation_count(n, r, 2));
                let distinct: HashSet<_> = got.iter().map(|x| x.a1.clone()).collect();
                assert_eq!(distinct.len(), got.len());
                assert!(got.iter().all(|x| x.a1.is_invertible()));
            }
        }
    }

    #[test]
    fn rejects_bad_r() {
        assert!(enumerate_individualisations(3, 0, gf(2), 1000).is_err());
        assert!(enumerate_individualisations(3, 3, gf(2), 1000).is_err());
        assert!(matches!(
            enumerate_individualisations(4, 2, gf(2), 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    /// `A₁⁻¹A₀ = diag(I_r, A)` has exactly one solution `A₁` per `A₀`.
    #[test]
    fn unique_factorisation() {
        for n in 2..=3 {
            for r in 1..n {
                let f = gf(2);
                let inds = all(n, r, 2);
                let invs: Vec<Matrix> = inds.iter().map(|x| x.a1.inverse().unwrap()).collect();
                for a0 in enumerate_gl(n, f, DEFAULT_GL_CAP).unwrap() {
                    let hits = invs
                        .iter()
                        .filter(|inv| {
                            let m = inv.mul(&a0);
                            (0..n).all(|i| {
                                (0..n).all(|j| {
                                    let in_top = i < r || j < r;
                                    !in_top || m.get(i, j) == u16::from(i == j)
                                })
                            })
                        })
                        .count();
                    assert_eq!(hits, 1, "n={n} r={r} a0={a0:?}");
                }
            }
        }
    }

    #[test]
    fn first_columns_are_the_v_tuple() {
        let first = all(3, 2, 2).into_iter().next().unwrap();
        assert_eq!(first.l_basis(), vec![vec![0, 0, 1], vec![0, 1, 0]]);
        assert_eq!(first.complement_basis(), vec![vec![1, 0, 0]]);
    }
}
