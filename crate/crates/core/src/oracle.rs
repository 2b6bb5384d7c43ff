//! Brute-force isometry sets, the ground truth for everything else.
//!
//! [`brute_force_iso`] searches `GL(n, q)` column by column: once the first
//! `k` columns of `A` are fixed, the top-left `k×k` block of every `AᵗG_lA`
//! is fixed too, and it has to lie in the projection of `ℋ` onto those
//! coordinates. Branches failing that test contain no isometry, so the
//! result is the same as the full scan [`brute_force_iso_scan`], only faster.

use crate::error::{check_cap, Result};
use crate::matrix::{decode_vector, enumerate_gl, pow_u128, EchelonBasis, Matrix, DEFAULT_GL_CAP};
use crate::tensor::{congruence_coords, span_equal_alt, AlternatingTuple};

/// Default bound on `q^{n²}`.
pub const DEFAULT_ORACLE_CAP: u128 = DEFAULT_GL_CAP;

/// Every `A ∈ GL(n, q)` with `span(AᵗGA) = span(H)`, sorted.
pub fn brute_force_iso(g: &AlternatingTuple, h: &AlternatingTuple) -> Result<Vec<Matrix>> {
    brute_force_iso_capped(g, h, DEFAULT_ORACLE_CAP)
}

fn check(g: &AlternatingTuple, h: &AlternatingTuple, cap: u128) -> Result<()> {
    // reuse the shape and field checks of span_equal_alt
    span_equal_alt(g, h)?;
    let n = g.n();
    check_cap(
        "brute_force_iso",
        pow_u128(g.field().order(), (n * n) as u64),
        cap,
    )
}

/// Position of `(i, j)`, `i < j`, in the strictly-upper row-major order.
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn brute_force_iso_capped(
    g: &AlternatingTuple,
    h: &AlternatingTuple,
    cap: u128,
) -> Result<Vec<Matrix>> {
    check(g, h, cap)?;
    let (n, f) = (g.n(), g.field());
    let h_space = h.space();
    if g.space().dim() != h_space.dim() {
        return Ok(Vec::new());
    }
    // order[..k(k-1)/2] are the coordinates of the top-left k×k block
    let order: Vec<usize> = (0..n)
        .flat_map(|j| (0..j).map(move |i| upper_index(n, i, j)))
        .collect();
    let h_rows: Vec<Vec<u16>> = h_space.basis().rows().to_vec();
    let proj: Vec<EchelonBasis> = (0..=n)
        .map(|k| {
            let len = k * k.saturating_sub(1) / 2;
            let vecs: Vec<Vec<u16>> = h_rows
                .iter()
                .map(|r| order[..len].iter().map(|&c| r[c]).collect())
                .collect();
            EchelonBasis::from_vectors(f, len, &vecs)
        })
        .collect();
    let vectors: Vec<Vec<u16>> = (1..f.order().pow(n as u32))
        .map(|c| decode_vector(c, n, f.p()))
        .collect();

    let mut search = Search {
        g,
        proj: &proj,
        vectors: &vectors,
        cols: Vec::with_capacity(n),
        values: vec![Vec::new(); g.m()],
        out: Vec::new(),
    };
    search.dfs(&EchelonBasis::new(f, n));
    let mut out = search.out;
    out.sort();
    Ok(out)
}

struct Search<'a> {
    g: &'a AlternatingTuple,
    proj: &'a [EchelonBasis],
    vectors: &'a [Vec<u16>],
    cols: Vec<Vec<u16>>,
    // values[l] lists the fixed coordinates of AᵗG_lA in `order`
    values: Vec<Vec<u16>>,
    out: Vec<Matrix>,
}

impl Search<'_> {
    fn dfs(&mut self, span: &EchelonBasis) {
        let n = self.g.n();
        let f = self.g.field();
        let k = self.cols.len();
        if k == n {
            self.out.push(Matrix::from_cols(f, n, &self.cols));
            return;
        }
        let mark = k * k.saturating_sub(1) / 2;
        for v in self.vectors {
            if span.contains(v) {
                continue;
            }
            let mut ok = true;
            for (l, gl) in self.g.mats().iter().enumerate() {
                let gv = gl.mul_vec(v);
                let vals = &mut self.values[l];
                for c in &self.cols {
                    let dot = c
                        .iter()
                        .zip(&gv)
                        .fold(0u16, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                    vals.push(dot);
                }
                if !self.proj[k + 1].contains(vals) {
                    ok = false;
                }
            }
            if ok {
                let mut next = span.clone();
                next.insert(v);
                self.cols.push(v.clone());
                self.dfs(&next);
                self.cols.pop();
            }
            for vals in &mut self.values {
                vals.truncate(mark);
            }
        }
    }
}

/// The plain scan over `enumerate_gl`, kept as a cross-check of the pruned
/// search.
pub fn brute_force_iso_scan(
    g: &AlternatingTuple,
    h: &AlternatingTuple,
    cap: u128,
) -> Result<Vec<Matrix>> {
    check(g, h, cap)?;
    let h_space = h.space();
    if g.space().dim() != h_space.dim() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Matrix> = enumerate_gl(g.n(), g.field(), cap)?
        .filter(|a| {
            g.mats()
                .iter()
                .all(|gl| h_space.basis().contains(&congruence_coords(gl, a)))
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::matrix::gl_order;
    use crate::random::{sample_nait, trial_rng};
    use crate::Error;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn j2(f: PrimeField) -> AlternatingTuple {
        AlternatingTuple::from_coords(2, f, &[vec![1]])
    }

    #[test]
    fn upper_index_is_row_major() {
        let n = 5;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(upper_index(n, i, j), k);
                k += 1;
            }
        }
    }

    #[test]
    fn single_form_in_dimension_two() {
        let f = gf(2);
        let j = j2(f);
        assert_eq!(brute_force_iso(&j, &j).unwrap().len(), 6);
        let zero = AlternatingTuple::zero(2, 1, f);
        assert!(brute_force_iso(&j, &zero).unwrap().is_empty());
    }

    #[test]
    fn autometries_form_a_group() {
        let f = gf(2);
        let mut rng = trial_rng(3, 0);
        for _ in 0..5 {
            let g = sample_nait(4, 2, f, &mut rng);
            let aut = brute_force_iso(&g, &g).unwrap();
            assert!(aut.contains(&Matrix::identity(4, f)));
            for a in &aut {
                for b in &aut {
                    assert!(aut.binary_search(&a.mul(b)).is_ok());
                }
            }
            assert_eq!(gl_order(4, 2) % aut.len() as u128, 0);
        }
    }

    #[test]
    fn pruned_matches_scan() {
        for (p, n, m, trials) in [(2u32, 3usize, 1usize, 20usize), (2, 3, 2, 20), (2, 4, 2, 6), (2, 4, 3, 6), (3, 3, 2, 10)] {
            let f = gf(p);
            let mut rng = trial_rng(11, (p as usize * 100 + n * 10 + m) as u64);
            for t in 0..trials {
                let g = sample_nait(n, m, f, &mut rng);
                // half congruent pairs, half independent ones
                let h = if t % 2 == 0 {
                    let a = enumerate_gl(n, f, u128::MAX).unwrap().nth(7 * t + 3).unwrap();
                    g.congruent(&a)
                } else {
                    sample_nait(n, m, f, &mut rng)
                };
                let fast = brute_force_iso(&g, &h).unwrap();
                let slow = brute_force_iso_scan(&g, &h, u128::MAX).unwrap();
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn nonempty_sets_are_cosets_of_aut() {
        let f = gf(3);
        let mut rng = trial_rng(4, 0);
        for _ in 0..5 {
            let g = sample_nait(3, 2, f, &mut rng);
            let a = Matrix::from_vec(3, 3, f, vec![1, 2, 0, 0, 1, 1, 2, 0, 1]).unwrap();
            let h = g.congruent(&a);
            let aut = brute_force_iso(&g, &g).unwrap();
            let iso = brute_force_iso(&g, &h).unwrap();
            assert_eq!(aut.len(), iso.len());
            assert!(iso.contains(&a));
        }
    }

    #[test]
    fn cap_and_mismatch() {
        let f = gf(3);
        let g = AlternatingTuple::zero(4, 1, f);
        assert!(matches!(brute_force_iso(&g, &g), Err(Error::CapExceeded { .. })));
        assert!(brute_force_iso(&g, &AlternatingTuple::zero(3, 1, f)).is_err());
    }
}
