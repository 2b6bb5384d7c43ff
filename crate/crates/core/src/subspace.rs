//! Enumeration of all subspaces of `F_q^n` with ordered bases.

use std::collections::HashMap;

use crate::error::{check_cap, Result};
use crate::field::PrimeField;
use crate::matrix::{decode_vector, pow_u128, EchelonBasis};

pub const DEFAULT_SUBSPACE_CAP: u128 = 1_000_000;

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(pow_u128(q, (n - i) as u64) - 1);
        den = den.saturating_mul(pow_u128(q, (i + 1) as u64) - 1);
    }
    num / den
}

pub fn subspace_count(n: usize, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    /// Ordered basis `v₁, …, v_d`; the prefix of length `d − 1` is the basis
    /// of the subspace this one was discovered from.
    pub basis: Vec<Vec<u16>>,
    /// Canonical RREF form, usable as a key.
    pub canonical: EchelonBasis,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn key(&self) -> Vec<u16> {
        canonical_key(&self.canonical)
    }
}

pub fn canonical_key(e: &EchelonBasis) -> Vec<u16> {
    let mut k = Vec::with_capacity(1 + e.dim() * e.ambient());
    k.push(e.dim() as u16);
    for r in e.rows() {
        k.extend_from_slice(r);
    }
    k
}

/// All subspaces of `F_q^n`, ordered by dimension, each exactly once.
///
/// Level `d` is built by extending every `(d−1)`-subspace `U` (in order) by
/// every vector outside `U` (in lexicographic order), keeping the first
/// occurrence of each canonical form.
#[derive(Clone, Debug)]
pub struct SubspaceTable {
    pub n: usize,
    pub field: PrimeField,
    pub subspaces: Vec<Subspace>,
    /// `levels[d]` is the index range of the `d`-dimensional subspaces.
    pub levels: Vec<std::ops::Range<usize>>,
    index: HashMap<Vec<u16>, usize>,
}

impl SubspaceTable {
    pub fn index_of(&self, e: &EchelonBasis) -> Option<usize> {
        self.index.get(&canonical_key(e)).copied()
    }

    pub fn level(&self, d: usize) -> &[Subspace] {
        &self.subspaces[self.levels[d].clone()]
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

pub fn enumerate_subspaces(n: usize, field: PrimeField, cap: u128) -> Result<SubspaceTable> {
    enumerate_subspaces_upto(n, n, field, cap)
}

/// Same as [`enumerate_subspaces`], stopping after dimension `max_dim`.
pub fn enumerate_subspaces_upto(
    n: usize,
    max_dim: usize,
    field: PrimeField,
    cap: u128,
) -> Result<SubspaceTable> {
    let q = field.order();
    let max_dim = max_dim.min(n);
    let total: u128 = (0..=max_dim).map(|k| gaussian_binomial(n, k, q)).sum();
    check_cap("enumerate_subspaces", total, cap)?;

    let vectors: Vec<Vec<u16>> = (0..q.pow(n as u32))
        .map(|c| decode_vector(c, n, field.p()))
        .collect();
    let zero = Subspace {
        basis: Vec::new(),
        canonical: EchelonBasis::new(field, n),
    };
    let mut index = HashMap::new();
    index.insert(zero.key(), 0);
    let mut subspaces = vec![zero];
    #[allow(clippy::single_range_in_vec_init)]
    let mut levels = vec![0..1];
    for _d in 1..=max_dim {
        let prev = levels.last().unwrap().clone();
        let start = subspaces.len();
        for ui in prev {
            for v in &vectors {
                if subspaces[ui].canonical.contains(v) {
                    continue;
                }
                let mut canonical = subspaces[ui].canonical.clone();
                canonical.insert(v);
                let key = canonical_key(&canonical);
                if index.contains_key(&key) {
                    continue;
                }
                let mut basis = subspaces[ui].basis.clone();
                basis.push(v.clone());
                index.insert(key, subspaces.len());
                subspaces.push(Subspace { basis, canonical });
            }
        }
        levels.push(start..subspaces.len());
    }
    Ok(SubspaceTable {
        n,
        field,
        subspaces,
        levels,
        index,
    })
}
