//! Stability and semi-stability of matrix tuples under the left-right action.
//!
//! A tuple `B ∈ M(s×t, q)^r` is stable when it is nondegenerate and every
//! nontrivial `U ≤ F_q^t` has `t·dim B(U) > s·dim U`; semi-stable when every
//! `U` has `t·dim B(U) ≥ s·dim U` (for square tuples, `dim B(U) ≥ dim U`).
//!
//! Deciding this by listing every subspace of `F_q^t` is hopeless at `t = 10`
//! (2.3·10⁸ subspaces over GF(2)), so [`is_stable`] runs an exact pruned
//! search instead:
//!
//! * Subspaces are visited along the tree of reduced row-echelon bases in
//!   which a node's parent is obtained by deleting its first row. Children
//!   contain their parent, and `dim B(U)` is monotone in `U`, so a branch whose
//!   image is already too large for any violator of bounded dimension can be
//!   cut.
//! * A violator `U` with image `W` can be shrunk to a violator of dimension
//!   about `t·dim W / s`, and `W^⊥` is a violator for `Bᵗ` of dimension
//!   `s − dim W`. One of the two is at most half the ambient dimension, so
//!   both sides are searched only up to `⌈t/2⌉` and `⌈s/2⌉`.
//!
//! The plain exhaustive checkers are kept as test oracles.

use crate::error::{check_cap, Result};
use crate::matrix::EchelonBasis;
use crate::subspace::{enumerate_subspaces, DEFAULT_SUBSPACE_CAP};
use crate::tensor::MatrixTuple;

/// Default bound on the number of search-tree nodes per side.
pub const DEFAULT_STABILITY_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    Stable,
    Semistable,
}

impl Condition {
    /// `U` (of dimension `d`, image dimension `w`) witnesses failure.
    #[inline]
    fn violated(self, s: usize, t: usize, d: usize, w: usize) -> bool {
        match self {
            Condition::Stable => d >= 1 && d < t && t * w <= s * d,
            Condition::Semistable => d >= 1 && t * w < s * d,
        }
    }

    /// No superspace of `U` with dimension `≤ dmax` can be a violator.
    #[inline]
    fn hopeless(self, s: usize, t: usize, w: usize, dmax: usize) -> bool {
        match self {
            Condition::Stable => t * w > s * dmax,
            Condition::Semistable => t * w >= s * dmax,
        }
    }

    fn max_dim(self, t: usize) -> usize {
        let half = t.div_ceil(2);
        match self {
            Condition::Stable => half.min(t.saturating_sub(1)),
            Condition::Semistable => half.min(t),
        }
    }
}

/// `B(U)` for `U` spanned by `basis`.
pub fn image_of(b: &MatrixTuple, basis: &[Vec<u16>]) -> EchelonBasis {
    let mut img = EchelonBasis::new(b.field(), b.s());
    for u in basis {
        for bi in b.mats() {
            img.insert(&bi.mul_vec(u));
        }
    }
    img
}

fn common_kernel_nonzero(b: &MatrixTuple) -> bool {
    !b.is_kernel_nondegenerate()
}

/// Searches `U ≤ F_q^t` with `1 ≤ dim U ≤ dmax` for a violator of `cond`.
/// Returns a basis of one if it exists.
pub fn find_violator(
    b: &MatrixTuple,
    cond: Condition,
    dmax: usize,
    cap: u128,
) -> Result<Option<Vec<Vec<u16>>>> {
    let dmax = dmax.min(b.t());
    if dmax == 0 {
        return Ok(None);
    }
    if b.field().p() == 2 && b.s() <= 64 && b.t() <= 64 {
        let mut s = Gf2Search::new(b, cond, dmax, cap);
        let found = s.run()?;
        Ok(found.map(|rows| {
            rows.iter()
                .map(|&x| (0..b.t()).map(|j| ((x >> j) & 1) as u16).collect())
                .collect()
        }))
    } else {
        let mut s = GenericSearch {
            b,
            cond,
            dmax,
            cap,
            nodes: 0,
        };
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        let img = EchelonBasis::new(b.field(), b.s());
        if s.dfs(&mut rows, &mut pivots, &img)? {
            Ok(Some(rows))
        } else {
            Ok(None)
        }
    }
}

struct GenericSearch<'a> {
    b: &'a MatrixTuple,
    cond: Condition,
    dmax: usize,
    cap: u128,
    nodes: u128,
}

impl GenericSearch<'_> {
    fn dfs(
        &mut self,
        rows: &mut Vec<Vec<u16>>,
        pivots: &mut Vec<usize>,
        img: &EchelonBasis,
    ) -> Result<bool> {
        let (s, t) = (self.b.s(), self.b.t());
        let q = self.b.field().p();
        let first = pivots.first().copied().unwrap_or(t);
        for p in 0..first {
            let free: Vec<usize> = (p + 1..t).filter(|c| !pivots.contains(c)).collect();
            let mut x = vec![0u16; t];
            x[p] = 1;
            // odometer over the free entries
            loop {
                self.nodes += 1;
                check_cap("stability search", self.nodes, self.cap)?;
                let mut child = img.clone();
                for bi in self.b.mats() {
                    child.insert(&bi.mul_vec(&x));
                }
                let d = rows.len() + 1;
                let w = child.dim();
                rows.insert(0, x.clone());
                pivots.insert(0, p);
                if self.cond.violated(s, t, d, w) {
                    return Ok(true);
                }
                if d < self.dmax
                    && !self.cond.hopeless(s, t, w, self.dmax)
                    && self.dfs(rows, pivots, &child)?
                {
                    return Ok(true);
                }
                rows.remove(0);
                pivots.remove(0);

                let mut k = 0;
                while k < free.len() {
                    let c = free[k];
                    x[c] += 1;
                    if x[c] < q {
                        break;
                    }
                    x[c] = 0;
                    k += 1;
                }
                if k == free.len() {
                    break;
                }
            }
        }
        Ok(false)
    }
}

/// GF(2) specialisation: vectors are bitmasks, bit `j` = coordinate `j`.
struct Gf2Search {
    s: usize,
    t: usize,
    // cols[i][j] = column j of B_i as an s-bit mask
    cols: Vec<Vec<u64>>,
    cond: Condition,
    dmax: usize,
    cap: u128,
    nodes: u128,
    rows: Vec<u64>,
}

/// XOR basis with distinct leading bits, kept sorted by decreasing leading bit.
#[derive(Clone)]
struct XorBasis(Vec<u64>);

impl XorBasis {
    #[inline]
    fn insert(&mut self, mut v: u64) {
        for &r in &self.0 {
            v = v.min(v ^ r);
        }
        if v != 0 {
            let pos = self.0.partition_point(|&r| r > v);
            self.0.insert(pos, v);
        }
    }
}

impl Gf2Search {
    fn new(b: &MatrixTuple, cond: Condition, dmax: usize, cap: u128) -> Self {
        let cols = b
            .mats()
            .iter()
            .map(|m| {
                (0..b.t())
                    .map(|j| (0..b.s()).fold(0u64, |acc, i| acc | ((m.get(i, j) as u64) << i)))
                    .collect()
            })
            .collect();
        Gf2Search {
            s: b.s(),
            t: b.t(),
            cols,
            cond,
            dmax,
            cap,
            nodes: 0,
            rows: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<Option<Vec<u64>>> {
        let found = self.dfs(0, &XorBasis(Vec::new()))?;
        Ok(found.then(|| self.rows.clone()))
    }

    #[inline]
    fn apply(&self, i: usize, x: u64) -> u64 {
        let mut acc = 0;
        let mut y = x;
        while y != 0 {
            let j = y.trailing_zeros() as usize;
            acc ^= self.cols[i][j];
            y &= y - 1;
        }
        acc
    }

    /// `first` is the first pivot (or `t`); `pivmask` the pivot columns.
    fn dfs(&mut self, pivmask: u64, img: &XorBasis) -> Result<bool> {
        let (s, t) = (self.s, self.t);
        let first = if pivmask == 0 {
            t
        } else {
            pivmask.trailing_zeros() as usize
        };
        for p in 0..first {
            let free = t_mask(t) & !t_mask(p + 1) & !pivmask;
            let mut sub = 0u64;
            loop {
                self.nodes += 1;
                check_cap("stability search", self.nodes, self.cap)?;
                let x = (1u64 << p) | sub;
                let mut child = img.clone();
                for i in 0..self.cols.len() {
                    child.insert(self.apply(i, x));
                }
                let d = self.rows.len() + 1;
                let w = child.0.len();
                self.rows.insert(0, x);
                if self.cond.violated(s, t, d, w) {
                    return Ok(true);
                }
                if d < self.dmax
                    && !self.cond.hopeless(s, t, w, self.dmax)
                    && self.dfs(pivmask | (1u64 << p), &child)?
                {
                    return Ok(true);
                }
                self.rows.remove(0);
                sub = sub.wrapping_sub(free) & free;
                if sub == 0 {
                    break;
                }
            }
        }
        Ok(false)
    }
}

#[inline]
fn t_mask(t: usize) -> u64 {
    if t >= 64 {
        u64::MAX
    } else {
        (1u64 << t) - 1
    }
}

/// Some nonzero combination `Σ cᵢBᵢ` is invertible (square tuples only).
/// Only tried when there are at most `limit` combinations.
fn has_invertible_combination(b: &MatrixTuple, limit: u64) -> bool {
    if b.s() != b.t() || b.is_empty() {
        return false;
    }
    let f = b.field();
    let q = f.order();
    let Some(total) = q.checked_pow(b.len() as u32) else {
        return false;
    };
    if total > limit {
        // fall back to the individual matrices
        return b.mats().iter().any(|m| m.is_invertible());
    }
    let mut coeffs = vec![0u16; b.len()];
    for _ in 1..total {
        for c in coeffs.iter_mut() {
            *c += 1;
            if (*c as u64) < q {
                break;
            }
            *c = 0;
        }
        let m = b
            .mats()
            .iter()
            .zip(&coeffs)
            .filter(|(_, &c)| c != 0)
            .fold(None, |acc: Option<crate::matrix::Matrix>, (bi, &c)| {
                let term = bi.scale(c);
                Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                })
            })
            .expect("nonzero coefficients");
        if m.is_invertible() {
            return true;
        }
    }
    false
}

pub fn is_stable(b: &MatrixTuple) -> Result<bool> {
    is_stable_capped(b, DEFAULT_STABILITY_CAP)
}

pub fn is_stable_capped(b: &MatrixTuple, cap: u128) -> Result<bool> {
    if !b.is_image_nondegenerate() || common_kernel_nonzero(b) {
        return Ok(false);
    }
    let c = Condition::Stable;
    if find_violator(b, c, c.max_dim(b.t()), cap)?.is_some() {
        return Ok(false);
    }
    let bt = b.transpose();
    Ok(find_violator(&bt, c, c.max_dim(bt.t()), cap)?.is_none())
}

pub fn is_semistable(b: &MatrixTuple) -> Result<bool> {
    is_semistable_capped(b, DEFAULT_STABILITY_CAP)
}

pub fn is_semistable_capped(b: &MatrixTuple, cap: u128) -> Result<bool> {
    if b.t() == 0 {
        return Ok(true);
    }
    if common_kernel_nonzero(b) {
        return Ok(false);
    }
    if has_invertible_combination(b, 1 << 12) {
        return Ok(true);
    }
    let c = Condition::Semistable;
    if find_violator(b, c, c.max_dim(b.t()), cap)?.is_some() {
        return Ok(false);
    }
    let bt = b.transpose();
    Ok(find_violator(&bt, c, c.max_dim(bt.t()), cap)?.is_none())
}

/// Checks `cond` on every subspace of `F_q^t` listed by the subspace
/// enumerator. Stability additionally requires image-nondegeneracy.
pub fn check_exhaustive(b: &MatrixTuple, cond: Condition, cap: u128) -> Result<bool> {
    let (s, t) = (b.s(), b.t());
    if cond == Condition::Stable && (!b.is_image_nondegenerate() || common_kernel_nonzero(b)) {
        return Ok(false);
    }
    let table = enumerate_subspaces(t, b.field(), cap)?;
    for u in &table.subspaces {
        let w = image_of(b, &u.basis).dim();
        if cond.violated(s, t, u.dim(), w) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_stable_exhaustive(b: &MatrixTuple) -> Result<bool> {
    check_exhaustive(b, Condition::Stable, DEFAULT_SUBSPACE_CAP)
}

pub fn is_semistable_exhaustive(b: &MatrixTuple) -> Result<bool> {
    check_exhaustive(b, Condition::Semistable, DEFAULT_SUBSPACE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::field::PrimeField;
    use crate::matrix::Matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn tuple(f: PrimeField, mats: Vec<Matrix>) -> MatrixTuple {
        let (s, t) = (mats[0].rows(), mats[0].cols());
        MatrixTuple::new(s, t, f, mats).unwrap()
    }

    fn random_tuple(rng: &mut ChaCha8Rng, s: usize, t: usize, r: usize, f: PrimeField) -> MatrixTuple {
        let mats = (0..r)
            .map(|_| Matrix::from_fn(s, t, f, |_, _| rng.gen_range(0..f.p())))
            .collect();
        MatrixTuple::new(s, t, f, mats).unwrap()
    }

    #[test]
    fn stable_examples() {
        let f = gf(2);
        let i2 = Matrix::identity(2, f);
        assert!(!is_stable(&tuple(f, vec![i2.clone()])).unwrap());
        let b = tuple(f, vec![i2.clone(), Matrix::from_rows(f, &[[0, 1], [1, 1]])]);
        assert!(is_stable(&b).unwrap());
        assert!(is_stable_exhaustive(&b).unwrap());
        assert!(!is_stable(&MatrixTuple::zero(2, 2, 2, f)).unwrap());
    }

    #[test]
    fn semistable_examples() {
        for p in [2u32, 3] {
            let f = gf(p);
            for n in 1..5 {
                assert!(is_semistable(&tuple(f, vec![Matrix::identity(n, f)])).unwrap());
                assert!(!is_semistable(&MatrixTuple::zero(n, n, 1, f)).unwrap());
            }
        }
        let f = gf(3);
        let singular = Matrix::from_rows(f, &[[1, 2, 0], [2, 1, 0], [0, 1, 1]]);
        assert_eq!(singular.rank(), 2);
        assert!(!is_semistable(&tuple(f, vec![singular])).unwrap());
    }

    #[test]
    fn single_matrix_semistable_iff_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u32, 3, 5] {
            let f = gf(p);
            for _ in 0..40 {
                let n = rng.gen_range(1..6);
                let b = random_tuple(&mut rng, n, n, 1, f);
                assert_eq!(is_semistable(&b).unwrap(), b.mats()[0].is_invertible());
            }
        }
    }

    /// The pruned search agrees with full enumeration; covers both the
    /// bitmask path (q = 2) and the generic path (q = 3).
    #[test]
    fn pruned_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for p in [2u32, 3] {
            let f = gf(p);
            for _ in 0..300 {
                let s = rng.gen_range(1..5);
                let t = rng.gen_range(1..5);
                let r = rng.gen_range(0..4);
                let b = random_tuple(&mut rng, s, t, r, f);
                assert_eq!(
                    is_stable(&b).unwrap(),
                    is_stable_exhaustive(&b).unwrap(),
                    "{b:?}"
                );
                assert_eq!(
                    is_semistable(&b).unwrap(),
                    is_semistable_exhaustive(&b).unwrap(),
                    "{b:?}"
                );
            }
        }
    }

    /// Low-rank tuples are where violators live; random tuples are almost
    /// always stable, so this is the more demanding comparison.
    #[test]
    fn pruned_matches_exhaustive_on_structured_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2u32, 3] {
            let f = gf(p);
            for _ in 0..300 {
                let s = rng.gen_range(2..6);
                let t = rng.gen_range(2..if p == 2 { 6 } else { 5 });
                let r = rng.gen_range(1..4);
                // B_i = X_i Y_i with a thin middle dimension
                let k = rng.gen_range(1..s.min(t) + 1);
                let mats = (0..r)
                    .map(|_| {
                        let x = Matrix::from_fn(s, k, f, |_, _| rng.gen_range(0..p as u16));
                        let y = Matrix::from_fn(k, t, f, |_, _| rng.gen_range(0..p as u16));
                        x.mul(&y)
                    })
                    .collect();
                let b = MatrixTuple::new(s, t, f, mats).unwrap();
                assert_eq!(is_stable(&b).unwrap(), is_stable_exhaustive(&b).unwrap(), "{b:?}");
                assert_eq!(
                    is_semistable(&b).unwrap(),
                    is_semistable_exhaustive(&b).unwrap(),
                    "{b:?}"
                );
            }
        }
    }

    #[test]
    fn gf2_and_generic_searches_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = gf(2);
        for _ in 0..200 {
            let s = rng.gen_range(1..7);
            let t = rng.gen_range(1..7);
            let r = rng.gen_range(1..3);
            let b = random_tuple(&mut rng, s, t, r, f);
            for cond in [Condition::Stable, Condition::Semistable] {
                let fast = find_violator(&b, cond, t, u128::MAX).unwrap().is_some();
                let mut g = GenericSearch {
                    b: &b,
                    cond,
                    dmax: t,
                    cap: u128::MAX,
                    nodes: 0,
                };
                let slow = g
                    .dfs(&mut Vec::new(), &mut Vec::new(), &EchelonBasis::new(f, s))
                    .unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn violators_are_genuine() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for p in [2u32, 3] {
            let f = gf(p);
            for _ in 0..100 {
                let s = rng.gen_range(2..5);
                let t = rng.gen_range(2..5);
                let b = random_tuple(&mut rng, s, t, 1, f);
                if let Some(u) = find_violator(&b, Condition::Stable, t, u128::MAX).unwrap() {
                    let d = EchelonBasis::from_vectors(f, t, &u).dim();
                    assert_eq!(d, u.len());
                    let w = image_of(&b, &u).dim();
                    assert!(t * w <= s * d && d < t);
                }
            }
        }
    }

    #[test]
    fn cap_is_reported() {
        let f = gf(2);
        let b = MatrixTuple::zero(8, 8, 1, f);
        let r = find_violator(&b, Condition::Semistable, 8, 5);
        assert!(r.unwrap().is_some(), "a zero tuple fails on the first node");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_tuple(&mut rng, 8, 8, 4, f);
        assert!(matches!(
            is_stable_capped(&b, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
