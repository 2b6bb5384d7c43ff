//! Seeded samplers for the naive tuple models and the linear-algebraic
//! Erdős–Rényi model of alternating spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{EchelonBasis, Matrix};
use crate::tensor::{alt_dim, AlternatingTuple, MatrixTuple};

/// A `(seed, stream)` pair. Each trial of an experiment gets its own stream,
/// so trials are reproducible independently of each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngSeed { seed, stream }
    }

    pub fn rng(self) -> ChaCha8Rng {
        trial_rng(self.seed, self.stream)
    }
}

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `m` independent uniform alternating `n×n` matrices. Each matrix draws its
/// strictly-upper entries in row-major order.
pub fn sample_nait<R: Rng + ?Sized>(n: usize, m: usize, field: PrimeField, rng: &mut R) -> AlternatingTuple {
    let coords: Vec<Vec<u16>> = (0..m)
        .map(|_| (0..alt_dim(n)).map(|_| rng.gen_range(0..field.p())).collect())
        .collect();
    AlternatingTuple::from_coords(n, field, &coords)
}

/// `r` independent uniform `s×t` matrices.
pub fn sample_bipnait<R: Rng + ?Sized>(
    s: usize,
    t: usize,
    r: usize,
    field: PrimeField,
    rng: &mut R,
) -> MatrixTuple {
    let mats = (0..r)
        .map(|_| Matrix::from_fn(s, t, field, |_, _| rng.gen_range(0..field.p())))
        .collect();
    MatrixTuple::new(s, t, field, mats).expect("uniform shapes")
}

/// Draws naive tuples until the `m` matrices are linearly independent, which
/// makes the spanned space uniform among `m`-dimensional subspaces of
/// `Λ(n, q)`. Returns the accepted tuple and the number of draws it took
/// (at least 1).
pub fn sample_liner<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    field: PrimeField,
    rng: &mut R,
) -> Result<(AlternatingTuple, usize)> {
    let big_n = alt_dim(n);
    if m > big_n {
        return Err(Error::DimensionTooLarge { m, max: big_n });
    }
    let mut draws = 0;
    loop {
        draws += 1;
        let g = sample_nait(n, m, field, rng);
        let mut e = EchelonBasis::new(field, big_n);
        if g.coords().iter().all(|c| e.insert(c)) {
            return Ok((g, draws));
        }
    }
}
