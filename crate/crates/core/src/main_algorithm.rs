//! The average-case isometry algorithm: a property-F gate on `G`, then for
//! every r-individualisation of `F_q^n` an adjoint-space computation whose
//! invertible solutions are the only possible isometries.
//!
//! With the flip `B_i(j,k) = G_k(i, r+j)`, a block isometry `diag(I_r, X)`
//! acts on the corner tuple as `B_i ↦ XᵗB_i`, so an element `A` of
//! `π₁(Adj(B, C))` corresponds to the block `X = Aᵗ`.

use std::collections::HashSet;

use crate::adjoint::{adjoint_algebra, adjoint_system};
use crate::error::{check_cap, Error, Result};
use crate::field::PrimeField;
use crate::individualisation::{enumerate_individualisations, IndividualisationIter, DEFAULT_INDIVIDUALISATION_CAP};
use crate::matrix::{pow_u128, solve_homogeneous, EchelonBasis, Matrix};
use crate::tensor::{congruence_coords, flip_slice, AlternatingTuple, MatrixSpace, MatrixTuple};

/// Smallest `r ≥ 1` with `r ≥ 4(n−r)/m` when `n−r ≥ m`, and `r ≥ 4m/(n−r)`
/// when `m ≥ n−r`.
pub fn choose_r(n: usize, m: usize) -> Result<usize> {
    if n < 2 || m < 1 {
        return Err(Error::OutOfRange(format!("choose_r needs n >= 2 and m >= 1, got n = {n}, m = {m}")));
    }
    (1..n)
        .find(|&r| {
            let k = n - r;
            (k >= m && r * m >= 4 * k) || (m >= k && r * k >= 4 * m)
        })
        .ok_or(Error::Infeasible { n, m })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MainOptions {
    /// Stop at the first verified isometry.
    pub find_one: bool,
    /// Bound on the number of individualisations.
    pub individualisation_cap: u128,
    /// Bound on `q^dim π₁(Adj(B, C))` for the candidate enumeration.
    pub pi1_cap: u128,
}

impl Default for MainOptions {
    fn default() -> Self {
        MainOptions {
            find_one: false,
            individualisation_cap: DEFAULT_INDIVIDUALISATION_CAP,
            pi1_cap: 1 << 22,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MainStats {
    pub individualisations: u64,
    /// Elements of `π₁(Adj(B, C))` examined.
    pub adjoint_candidates: u64,
    pub invertible_candidates: u64,
    pub verified: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResultKind {
    NotPropertyF,
    IsoSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryResult {
    pub kind: ResultKind,
    pub r: usize,
    pub dim_pi1: usize,
    /// Sorted; empty for `NotPropertyF` or when no isometry exists.
    pub isometries: Vec<Matrix>,
    pub stats: MainStats,
}

impl IsometryResult {
    pub fn passed_gate(&self) -> bool {
        self.kind == ResultKind::IsoSet
    }
}

fn check_inputs(g: &AlternatingTuple, h: &AlternatingTuple) -> Result<()> {
    if (g.n(), g.m()) != (h.n(), h.m()) {
        return Err(Error::DimensionMismatch(format!(
            "G is ({}, {}), H is ({}, {})",
            g.n(),
            g.m(),
            h.n(),
            h.m()
        )));
    }
    if g.field() != h.field() {
        return Err(Error::FieldMismatch(g.field().p(), h.field().p()));
    }
    Ok(())
}

/// Computes `Iso(𝒢, ℋ)`, or reports that `G` fails the property-F gate.
pub fn main_isometry(
    g: &AlternatingTuple,
    h: &AlternatingTuple,
    r: usize,
    opts: &MainOptions,
) -> Result<IsometryResult> {
    check_inputs(g, h)?;
    let (n, field) = (g.n(), g.field());
    let b = flip_slice(g, r)?;
    let s = n - r;
    let dim_pi1 = adjoint_algebra(&b).pi1().dim();
    let mut result = IsometryResult {
        kind: ResultKind::IsoSet,
        r,
        dim_pi1,
        isometries: Vec::new(),
        stats: MainStats::default(),
    };
    if dim_pi1 > s {
        result.kind = ResultKind::NotPropertyF;
        return Ok(result);
    }
    let g_space = g.space();
    let h_space = h.space();
    if g_space.dim() != h_space.dim() {
        return Ok(result);
    }
    let g_basis = g_space.basis_matrices();

    let mut iter = enumerate_individualisations(n, r, field, opts.individualisation_cap)?;
    let mut solver = AdjSolver::new(&b);
    if let AdjSolver::Gf2(gs) = &mut solver {
        if Gf2Verifier::supports(n) {
            let verifier = Gf2Verifier::new(n, &g_basis, &h_space);
            result.isometries = run_gf2(h, r, opts, gs, &mut iter, &verifier, &mut result.stats)?;
            return Ok(result);
        }
    }
    let mut found: HashSet<Vec<u16>> = HashSet::new();
    let mut out: Vec<Matrix> = Vec::new();
    // y[i][k] = v_iᵗ H_k, refreshed whenever the v-tuple changes
    let mut y: Vec<Vec<Vec<u16>>> = Vec::new();

    while let Some(new_v) = iter.advance() {
        result.stats.individualisations += 1;
        if new_v {
            y = iter
                .v()
                .iter()
                .map(|v| {
                    h.mats()
                        .iter()
                        .map(|hk| hk.transpose().mul_vec(v))
                        .collect()
                })
                .collect();
        }
        let comp = iter.complement();
        let pi1 = solver.pi1(&y, &comp);
        if pi1.is_empty() || pi1.len() > s {
            continue;
        }
        check_cap(
            "pi1 enumeration",
            pow_u128(field.order(), pi1.len() as u64),
            opts.pi1_cap,
        )?;

        let a1 = {
            let mut cols = iter.v().to_vec();
            cols.extend(comp);
            Matrix::from_cols(field, n, &cols)
        };
        let a1_inv = a1.inverse().expect("individualisations are invertible");
        let done = for_each_combination(field, &pi1, |coords| {
            result.stats.adjoint_candidates += 1;
            let a = Matrix::from_vec(s, s, field, coords.to_vec()).expect("shape");
            if !a.is_invertible() {
                return false;
            }
            result.stats.invertible_candidates += 1;
            let a2 = Matrix::block_diag(&Matrix::identity(r, field), &a.transpose());
            let a0 = a2.mul(&a1_inv);
            let ok = g_basis
                .iter()
                .all(|gb| h_space.basis().contains(&congruence_coords(gb, &a0)));
            if ok {
                result.stats.verified += 1;
                if found.insert(a0.data().to_vec()) {
                    out.push(a0);
                }
                return opts.find_one;
            }
            false
        });
        if done {
            break;
        }
    }
    out.sort();
    result.isometries = out;
    Ok(result)
}

/// The individualisation loop over GF(2) with everything bit-packed.
fn run_gf2(
    h: &AlternatingTuple,
    r: usize,
    opts: &MainOptions,
    solver: &mut Gf2Adj,
    iter: &mut IndividualisationIter,
    verifier: &Gf2Verifier,
    stats: &mut MainStats,
) -> Result<Vec<Matrix>> {
    let (n, field) = (h.n(), h.field());
    let s = n - r;
    let smask = (1u64 << s) - 1;
    let rmask = (1u64 << r) - 1;
    let mut found: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    let mut ym: Vec<Vec<u64>> = Vec::new();
    let mut a1cols = vec![0u64; n];
    let mut inv_cols = vec![0u64; n];
    let mut a0cols = vec![0u64; n];
    let mut cm = vec![0u64; s];
    while let Some(new_v) = iter.advance() {
        stats.individualisations += 1;
        if new_v {
            ym = iter
                .v()
                .iter()
                .map(|v| h.mats().iter().map(|hk| to_mask(&hk.transpose().mul_vec(v))).collect())
                .collect();
            for (i, v) in iter.v().iter().enumerate() {
                a1cols[i] = to_mask(v);
            }
        }
        for (j, c) in iter.complement().iter().enumerate() {
            cm[j] = to_mask(c);
            a1cols[r + j] = cm[j];
        }
        let pi1 = solver.pi1_masks(&ym, &cm);
        let d = pi1.len();
        if d == 0 || d > s {
            continue;
        }
        check_cap("pi1 enumeration", 1u128 << d, opts.pi1_cap)?;
        let mut basis = [0u64; 8];
        basis[..d].copy_from_slice(pi1);

        let a1rows: Vec<u64> = (0..n)
            .map(|x| (0..n).fold(0u64, |m, c| m | (a1cols[c] >> x & 1) << c))
            .collect();
        let inv_rows = gf2_inverse(&a1rows).expect("individualisations are invertible");
        for (y, col) in inv_cols.iter_mut().enumerate() {
            *col = (0..n).fold(0u64, |m, i| m | (inv_rows[i] >> y & 1) << i);
        }

        let mut acc = 0u64;
        for idx in 0..1u64 << d {
            if idx > 0 {
                acc ^= basis[idx.trailing_zeros() as usize];
            }
            stats.adjoint_candidates += 1;
            let mut rows = [0u64; 8];
            for (j, row) in rows.iter_mut().enumerate().take(s) {
                *row = acc >> (j * s) & smask;
            }
            if !gf2_invertible(&mut rows[..s]) {
                continue;
            }
            stats.invertible_candidates += 1;
            // A₀ = diag(I_r, Aᵗ)·A₁⁻¹, column by column
            let mut col_a = [0u64; 8];
            for (j, ca) in col_a.iter_mut().enumerate().take(s) {
                *ca = (0..s).fold(0u64, |m, a| m | (acc >> (a * s + j) & 1) << a);
            }
            for (y, out_col) in a0cols.iter_mut().enumerate() {
                let c = inv_cols[y];
                let tail = c >> r;
                *out_col = (0..s).fold(c & rmask, |m, j| m | parity(col_a[j] & tail) << (r + j));
            }
            if verifier.check(&a0cols) {
                stats.verified += 1;
                if found.insert(a0cols.clone()) {
                    let cols: Vec<Vec<u16>> = a0cols
                        .iter()
                        .map(|&c| (0..n).map(|x| (c >> x & 1) as u16).collect())
                        .collect();
                    out.push(Matrix::from_cols(field, n, &cols));
                }
                if opts.find_one {
                    out.sort();
                    return Ok(out);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Calls `f` on every linear combination of `basis` (coefficients in
/// lexicographic order) until it returns `true`.
fn for_each_combination(
    field: PrimeField,
    basis: &[Vec<u16>],
    mut f: impl FnMut(&[u16]) -> bool,
) -> bool {
    let len = basis[0].len();
    let q = field.p();
    let mut coeffs = vec![0u16; basis.len()];
    let mut acc = vec![0u16; len];
    loop {
        acc.iter_mut().for_each(|x| *x = 0);
        for (c, v) in coeffs.iter().zip(basis) {
            if *c != 0 {
                for (x, &y) in acc.iter_mut().zip(v) {
                    *x = field.add(*x, field.mul(*c, y));
                }
            }
        }
        if f(&acc) {
            return true;
        }
        let mut k = coeffs.len();
        loop {
            if k == 0 {
                return false;
            }
            k -= 1;
            coeffs[k] += 1;
            if coeffs[k] < q {
                break;
            }
            coeffs[k] = 0;
        }
    }
}

/// Solves `{(A, D) : A·B_i = C_i·D}` for a fixed `B` and many `C`, returning
/// a basis of the `A`-projection.
enum AdjSolver {
    Gf2(Gf2Adj),
    Dense(DenseAdj),
    #[allow(dead_code)]
    Generic(MatrixTuple),
}

impl AdjSolver {
    fn new(b: &MatrixTuple) -> Self {
        if Gf2Adj::supports(b) {
            AdjSolver::Gf2(Gf2Adj::new(b))
        } else {
            AdjSolver::Dense(DenseAdj::new(b))
        }
    }

    /// `C_i(j, k) = y[i][k] · c_j`.
    fn pi1(&mut self, y: &[Vec<Vec<u16>>], comp: &[Vec<u16>]) -> Vec<Vec<u16>> {
        match self {
            AdjSolver::Gf2(s) => s.pi1(y, comp),
            AdjSolver::Dense(s) => s.pi1(y, comp),
            AdjSolver::Generic(b) => {
                let f = b.field();
                let (s, t) = (b.s(), b.t());
                let p = f.p() as u64;
                let mats = y
                    .iter()
                    .map(|yi| {
                        Matrix::from_fn(s, t, f, |j, k| {
                            let dot: u64 = yi[k]
                                .iter()
                                .zip(&comp[j])
                                .map(|(&a, &c)| a as u64 * c as u64)
                                .sum();
                            (dot % p) as u16
                        })
                    })
                    .collect();
                let c = MatrixTuple::new(s, t, f, mats).expect("shape");
                let kernel = solve_homogeneous(&adjoint_system(b, &c));
                let mut e = EchelonBasis::new(f, s * s);
                for v in &kernel {
                    e.insert(&v[..s * s]);
                }
                e.rows().to_vec()
            }
        }
    }
}

/// Reference-free elimination over `u32` with reused buffers.
struct DenseAdj {
    s: usize,
    t: usize,
    r: usize,
    cols: usize,
    field: PrimeField,
    inv: Vec<u32>,
    // A-part of equation row (i, j, l), `s²` entries each
    arow: Vec<u32>,
    c: Vec<u32>,
    rows: Vec<u32>,
}

impl DenseAdj {
    fn new(b: &MatrixTuple) -> Self {
        let (s, t, r) = (b.s(), b.t(), b.len());
        let field = b.field();
        let mut arow = vec![0u32; r * s * t * s * s];
        for (i, bi) in b.mats().iter().enumerate() {
            for j in 0..s {
                for l in 0..t {
                    let base = ((i * s + j) * t + l) * s * s;
                    for a in 0..s {
                        arow[base + j * s + a] = bi.get(a, l) as u32;
                    }
                }
            }
        }
        let p = field.p();
        let inv = (0..p)
            .map(|x| field.inv(x).map_or(0, u32::from))
            .collect();
        DenseAdj {
            s,
            t,
            r,
            cols: s * s + t * t,
            field,
            inv,
            arow,
            c: vec![0; r * s * t],
            rows: vec![0; r * s * t * (s * s + t * t)],
        }
    }

    fn pi1(&mut self, y: &[Vec<Vec<u16>>], comp: &[Vec<u16>]) -> Vec<Vec<u16>> {
        let (s, t, r, cols) = (self.s, self.t, self.r, self.cols);
        let p = self.field.p() as u32;
        let ss = s * s;
        for i in 0..r {
            for j in 0..s {
                for k in 0..t {
                    let dot: u32 = y[i][k]
                        .iter()
                        .zip(&comp[j])
                        .map(|(&a, &c)| a as u32 * c as u32 % p)
                        .sum();
                    self.c[(i * s + j) * t + k] = dot % p;
                }
            }
        }
        let nrows = r * s * t;
        for i in 0..r {
            for j in 0..s {
                for l in 0..t {
                    let e = (i * s + j) * t + l;
                    let row = &mut self.rows[e * cols..(e + 1) * cols];
                    row[..ss].copy_from_slice(&self.arow[e * ss..(e + 1) * ss]);
                    row[ss..].iter_mut().for_each(|x| *x = 0);
                    for a in 0..t {
                        row[ss + a * t + l] = (p - self.c[(i * s + j) * t + a]) % p;
                    }
                }
            }
        }
        let rows = &mut self.rows;
        let mut pivots = Vec::with_capacity(cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..nrows).find(|&k| rows[k * cols + c] != 0) else {
                continue;
            };
            if pr != rank {
                for x in 0..cols {
                    rows.swap(pr * cols + x, rank * cols + x);
                }
            }
            let iv = self.inv[rows[rank * cols + c] as usize];
            for x in c..cols {
                rows[rank * cols + x] = rows[rank * cols + x] * iv % p;
            }
            for k in 0..nrows {
                let f = rows[k * cols + c];
                if k != rank && f != 0 {
                    for x in c..cols {
                        let sub = f * rows[rank * cols + x] % p;
                        rows[k * cols + x] = (rows[k * cols + x] + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if rank == cols {
            return Vec::new();
        }
        let mut e = EchelonBasis::new(self.field, ss);
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut v = vec![0u16; ss];
        for f in (0..cols).filter(|&c| !is_pivot[c]) {
            v.iter_mut().for_each(|x| *x = 0);
            if f < ss {
                v[f] = 1;
            }
            for (k, &pc) in pivots.iter().enumerate() {
                if pc < ss {
                    v[pc] = ((p - rows[k * cols + f]) % p) as u16;
                }
            }
            e.insert(&v);
        }
        e.rows().to_vec()
    }
}

/// Bit-packed solver over GF(2). Writing `M_C` for the matrix whose rows are
/// the rows of `C_1, …, C_r`, the equations `A·B_i = C_i·D` read
/// `M_C·d_l = α_l(A)` for every column `d_l` of `D`, where `α_l(A)` stacks
/// column `l` of every `A·B_i`. So `A ∈ π₁` exactly when `w·α_l(A) = 0` for
/// every `w` in the left kernel of `M_C` and every `l`, which is a small
/// system in the `s²` entries of `A` alone.
struct Gf2Adj {
    s: usize,
    t: usize,
    r: usize,
    // alpha[(i*s + j)*t + l]: A-entries (bit j*s + a) of (A·B_i)(j, l)
    alpha: Vec<u64>,
    crow: Vec<u64>,
    combo: Vec<u64>,
    cons: Vec<u64>,
    pivots: Vec<usize>,
    basis: Vec<u64>,
}

impl Gf2Adj {
    fn new(b: &MatrixTuple) -> Self {
        let (s, t, r) = (b.s(), b.t(), b.len());
        let mut alpha = vec![0u64; r * s * t];
        for (i, bi) in b.mats().iter().enumerate() {
            for j in 0..s {
                for l in 0..t {
                    let mut m = 0u64;
                    for a in 0..s {
                        if bi.get(a, l) != 0 {
                            m |= 1 << (j * s + a);
                        }
                    }
                    alpha[(i * s + j) * t + l] = m;
                }
            }
        }
        Gf2Adj {
            s,
            t,
            r,
            alpha,
            crow: vec![0; r * s],
            combo: vec![0; r * s],
            cons: Vec::with_capacity(r * s * t),
            pivots: Vec::with_capacity(s * s),
            basis: Vec::with_capacity(s * s),
        }
    }

    fn supports(b: &MatrixTuple) -> bool {
        let (s, t, r) = (b.s(), b.t(), b.len());
        b.field().p() == 2 && r > 0 && s * s <= 64 && r * s <= 64 && t <= 64
    }

    fn pi1(&mut self, y: &[Vec<Vec<u16>>], comp: &[Vec<u16>]) -> Vec<Vec<u16>> {
        let ym: Vec<Vec<u64>> = y.iter().map(|yi| yi.iter().map(|v| to_mask(v)).collect()).collect();
        let cm: Vec<u64> = comp.iter().map(|c| to_mask(c)).collect();
        let cols = self.s * self.s;
        self.pi1_masks(&ym, &cm)
            .iter()
            .map(|&v| (0..cols).map(|i| (v >> i & 1) as u16).collect())
            .collect()
    }

    /// Basis of `π₁` as bit masks (bit `j·s + a` is `A(j, a)`), given
    /// `ym[i][k] = y[i][k]` and `cm[j] = c_j` as masks.
    fn pi1_masks(&mut self, ym: &[Vec<u64>], cm: &[u64]) -> &[u64] {
        let (s, t, r) = (self.s, self.t, self.r);
        for i in 0..r {
            for j in 0..s {
                let mut row = 0u64;
                for (k, &yk) in ym[i].iter().enumerate() {
                    row |= (((yk & cm[j]).count_ones() & 1) as u64) << k;
                }
                let idx = i * s + j;
                self.crow[idx] = row;
                self.combo[idx] = 1 << idx;
            }
        }
        // left kernel of M_C: eliminate rows, tracking combinations
        let rows = r * s;
        let mut rank = 0;
        for c in 0..t {
            let bit = 1u64 << c;
            let Some(p) = (rank..rows).find(|&k| self.crow[k] & bit != 0) else {
                continue;
            };
            self.crow.swap(p, rank);
            self.combo.swap(p, rank);
            let (pr, pc) = (self.crow[rank], self.combo[rank]);
            for k in rank + 1..rows {
                if self.crow[k] & bit != 0 {
                    self.crow[k] ^= pr;
                    self.combo[k] ^= pc;
                }
            }
            rank += 1;
        }
        self.cons.clear();
        for &w in &self.combo[rank..rows] {
            for l in 0..t {
                let mut m = 0u64;
                let mut bits = w;
                while bits != 0 {
                    let idx = bits.trailing_zeros() as usize;
                    m ^= self.alpha[idx * t + l];
                    bits &= bits - 1;
                }
                if m != 0 {
                    self.cons.push(m);
                }
            }
        }
        // kernel of the constraints on the s² entries of A
        let cols = s * s;
        let cons = &mut self.cons;
        self.pivots.clear();
        self.basis.clear();
        for c in 0..cols {
            let rank = self.pivots.len();
            let bit = 1u64 << c;
            let Some(p) = (rank..cons.len()).find(|&k| cons[k] & bit != 0) else {
                continue;
            };
            cons.swap(p, rank);
            let pr = cons[rank];
            for (k, row) in cons.iter_mut().enumerate() {
                if k != rank && *row & bit != 0 {
                    *row ^= pr;
                }
            }
            self.pivots.push(c);
            if self.pivots.len() == cols {
                return &self.basis;
            }
        }
        let mut pivot_set = 0u64;
        for &c in &self.pivots {
            pivot_set |= 1 << c;
        }
        for f in (0..cols).filter(|&c| pivot_set >> c & 1 == 0) {
            let mut v = 1u64 << f;
            for (k, &pc) in self.pivots.iter().enumerate() {
                if cons[k] >> f & 1 == 1 {
                    v |= 1 << pc;
                }
            }
            self.basis.push(v);
        }
        &self.basis
    }
}

fn to_mask(v: &[u16]) -> u64 {
    v.iter().enumerate().fold(0u64, |m, (i, &x)| m | (x as u64) << i)
}

fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

/// Inverse of a GF(2) matrix given by row masks, as row masks.
fn gf2_inverse(rows: &[u64]) -> Option<Vec<u64>> {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    for c in 0..n {
        let p = (c..n).find(|&k| a[k] >> c & 1 == 1)?;
        a.swap(p, c);
        inv.swap(p, c);
        for k in 0..n {
            if k != c && a[k] >> c & 1 == 1 {
                a[k] ^= a[c];
                inv[k] ^= inv[c];
            }
        }
    }
    Some(inv)
}

fn gf2_invertible(rows: &mut [u64]) -> bool {
    let n = rows.len();
    for c in 0..n {
        let Some(p) = (c..n).find(|&k| rows[k] >> c & 1 == 1) else {
            return false;
        };
        rows.swap(p, c);
        for k in c + 1..n {
            if rows[k] >> c & 1 == 1 {
                rows[k] ^= rows[c];
            }
        }
    }
    true
}

/// Isometry check `span(A₀ᵗ𝒢A₀) ⊆ span(ℋ)` over GF(2) on bit masks.
struct Gf2Verifier {
    n: usize,
    // row masks of each basis matrix of 𝒢
    g: Vec<Vec<u64>>,
    // RREF basis of ℋ in strictly-upper coordinates, with pivots
    h: Vec<(u32, u64)>,
}

impl Gf2Verifier {
    fn supports(n: usize) -> bool {
        n * n.saturating_sub(1) / 2 <= 64
    }

    fn new(n: usize, g_basis: &[Matrix], h_space: &MatrixSpace) -> Self {
        let g = g_basis
            .iter()
            .map(|a| (0..a.rows()).map(|i| to_mask(a.row(i))).collect())
            .collect();
        let h = h_space
            .basis()
            .rows()
            .iter()
            .map(|row| {
                let m = to_mask(row);
                (m.trailing_zeros(), m)
            })
            .collect();
        Gf2Verifier { n, g, h }
    }

    /// `cols[y]` is column `y` of `A₀` as a mask.
    fn check(&self, cols: &[u64]) -> bool {
        let n = self.n;
        let mut w = [0u64; 64];
        for gm in &self.g {
            for (y, &c) in cols.iter().enumerate() {
                w[y] = gm
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &gi)| acc | parity(gi & c) << i);
            }
            let mut v = 0u64;
            let mut idx = 0;
            for x in 0..n {
                for y in x + 1..n {
                    v |= parity(cols[x] & w[y]) << idx;
                    idx += 1;
                }
            }
            // ℋ's basis is fully reduced, so one pass over the pivots suffices
            for &(p, row) in &self.h {
                if v >> p & 1 == 1 {
                    v ^= row;
                }
            }
            if v != 0 {
                return false;
            }
        }
        true
    }
}
