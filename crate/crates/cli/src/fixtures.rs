//! Values computed by the exhaustive oracles and by seeded pilot runs,
//! written to `tests/fixtures/` and re-checked by the test suite.

use std::path::{Path, PathBuf};

use altiso_core::individualisation::enumerate_individualisations;
use altiso_core::matrix::enumerate_gl;
use altiso_core::oracle::brute_force_iso;
use altiso_core::random::{sample_nait, trial_rng};
use altiso_core::subspace::enumerate_subspaces;
use altiso_core::tensor::AlternatingTuple;
use altiso_core::{Matrix, PrimeField};
use anyhow::{Context, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::experiment::{self, Caps, Kind, Row};
use crate::format;

pub const FIXTURE_SEED: u64 = 2024;
pub const GOLDEN_NAIT: &str = "nait_n4_m2_q2.txt";
pub const ORACLE_JSON: &str = "oracle.json";
pub const PILOT_TRIALS: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlCount {
    pub n: usize,
    pub q: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceCount {
    pub n: usize,
    pub q: u32,
    /// Number of subspaces of each dimension `0..=n`.
    pub by_dim: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndividualisationCount {
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoSize {
    pub n: usize,
    pub m: usize,
    pub q: u32,
    pub stream: u64,
    /// Whether `H` was built as a random congruent copy of `G`.
    pub congruent: bool,
    pub aut: usize,
    pub iso: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleFixtures {
    pub seed: u64,
    pub gl_counts: Vec<GlCount>,
    pub subspace_counts: Vec<SubspaceCount>,
    pub individualisation_counts: Vec<IndividualisationCount>,
    pub iso_sizes: Vec<IsoSize>,
    pub pilots: Vec<Row>,
}

pub fn golden_nait() -> AlternatingTuple {
    let f = PrimeField::new(2).expect("prime");
    sample_nait(4, 2, f, &mut trial_rng(FIXTURE_SEED, 0))
}

pub fn random_invertible<R: Rng>(n: usize, f: PrimeField, rng: &mut R) -> Matrix {
    loop {
        let a = Matrix::from_fn(n, n, f, |_, _| rng.gen_range(0..f.p()));
        if a.is_invertible() {
            return a;
        }
    }
}

/// The seeded pair used for an `iso_sizes` entry.
pub fn iso_pair(n: usize, m: usize, q: u32, stream: u64) -> (AlternatingTuple, AlternatingTuple, bool) {
    let f = PrimeField::new(q).expect("prime");
    let mut rng = trial_rng(FIXTURE_SEED, 1000 + stream);
    let g = sample_nait(n, m, f, &mut rng);
    let congruent = stream.is_multiple_of(2);
    let h = if congruent {
        g.congruent(&random_invertible(n, f, &mut rng))
    } else {
        sample_nait(n, m, f, &mut rng)
    };
    (g, h, congruent)
}

pub const ISO_SHAPES: [(usize, usize, u32); 3] = [(3, 2, 2), (4, 2, 2), (3, 2, 3)];
pub const ISO_STREAMS: u64 = 4;

/// Seeded pilot points whose rates fix the statistical thresholds.
pub fn pilot_points() -> Vec<(experiment::Point, u64)> {
    let mut out = Vec::new();
    for p in experiment::grid(Kind::Stability, &[4, 6, 8, 10], &[], &[2], &[4]) {
        out.push((p, PILOT_TRIALS));
    }
    for p in experiment::grid(Kind::PropertyF, &[6], &[6], &[2], &[2, 3, 4]) {
        out.push((p, PILOT_TRIALS));
    }
    for p in experiment::grid(Kind::SemistableThreshold, &[6], &[1, 2, 3, 4], &[2], &[]) {
        out.push((p, PILOT_TRIALS));
    }
    for (n, m, q) in [(4, 3, 2), (5, 4, 3)] {
        for p in experiment::grid(Kind::RetryCount, &[n], &[m], &[q], &[]) {
            out.push((p, 1000));
        }
    }
    out
}

pub fn compute() -> Result<OracleFixtures> {
    let gf = |q| PrimeField::new(q).expect("prime");
    let mut gl_counts = Vec::new();
    for (n, q) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (2, 5)] {
        let count = enumerate_gl(n, gf(q), u128::MAX)?.count() as u64;
        gl_counts.push(GlCount { n, q, count });
    }
    let mut subspace_counts = Vec::new();
    for q in [2, 3] {
        for n in 0..=5 {
            let table = enumerate_subspaces(n, gf(q), u128::MAX)?;
            let by_dim = (0..=n).map(|d| table.level(d).len() as u64).collect();
            subspace_counts.push(SubspaceCount { n, q, by_dim });
        }
    }
    let mut individualisation_counts = Vec::new();
    for n in 2..=4 {
        for r in 1..n {
            let count = enumerate_individualisations(n, r, gf(2), u128::MAX)?.count() as u64;
            individualisation_counts.push(IndividualisationCount { n, r, q: 2, count });
        }
    }
    let mut iso_sizes = Vec::new();
    for (n, m, q) in ISO_SHAPES {
        for stream in 0..ISO_STREAMS {
            let (g, h, congruent) = iso_pair(n, m, q, stream);
            iso_sizes.push(IsoSize {
                n,
                m,
                q,
                stream,
                congruent,
                aut: brute_force_iso(&g, &g)?.len(),
                iso: brute_force_iso(&g, &h)?.len(),
            });
        }
    }
    let caps = Caps::default();
    let pilots = pilot_points()
        .iter()
        .map(|(p, trials)| experiment::run_point(p, *trials, FIXTURE_SEED, &caps))
        .collect();
    Ok(OracleFixtures {
        seed: FIXTURE_SEED,
        gl_counts,
        subspace_counts,
        individualisation_counts,
        iso_sizes,
        pilots,
    })
}

pub fn write_all(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let golden = dir.join(GOLDEN_NAIT);
    let text = format!(
        "# NaiT sample, n=4 m=2 q=2, seed {FIXTURE_SEED}, stream 0\n{}",
        format::write_alt(&golden_nait())
    );
    std::fs::write(&golden, text).with_context(|| format!("writing {}", golden.display()))?;
    let oracle = dir.join(ORACLE_JSON);
    let json = serde_json::to_string_pretty(&compute()?)? + "\n";
    std::fs::write(&oracle, json).with_context(|| format!("writing {}", oracle.display()))?;
    Ok(vec![golden, oracle])
}
