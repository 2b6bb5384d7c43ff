//! Dynamic programming over subspaces: the subspace transporter, the
//! alternating-matrix transporter, and the worst-case isometry algorithm.
//!
//! Each table cell, indexed by a subspace `U`, holds the coset of group
//! elements that carry the first `d = dim U` standard (or given) basis
//! vectors onto a basis of `U` while respecting the constraint restricted to
//! those vectors. A cell at level `d` is the union, over hyperplanes `U′ < U`
//! and `u ∈ U \ U′`, of the cell of `U′` cut down by pointwise transporters.
//!
//! For the alternating-matrix transporter the constraint on the new vector
//! is `gᵗAg·e_d = B·e_d`, i.e. `g⁻ᵗ(B·e_d) = A·u` with `u = g·e_d`: a
//! pointwise transporter on the dual copy of the space.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{decode_vector, EchelonBasis, Matrix};
use crate::permgroup::{pointwise_transporter, Coset, Part, PartKind, PermGroup, PointDomain};
use crate::subspace::{enumerate_subspaces, SubspaceTable, DEFAULT_SUBSPACE_CAP};
use crate::tensor::{is_alternating, AlternatingTuple};

/// Transvections `I + E_ij` and `diag(ω, 1, …, 1)` for a primitive `ω`.
pub fn gl_generators(n: usize, field: PrimeField) -> Vec<Matrix> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let w = field.primitive_element();
    if w != 1 {
        let mut d = Matrix::identity(n, field);
        d.set(0, 0, w);
        gens.push(d);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = Matrix::identity(n, field);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    gens
}

/// `∏ GL(n_c, q)` acting on `domain`.
pub fn full_group(domain: &PointDomain) -> Result<Coset> {
    let f = domain.field();
    let ids: Vec<Matrix> = domain.dims().iter().map(|&n| Matrix::identity(n, f)).collect();
    let mut perms = Vec::new();
    for (c, &n) in domain.dims().iter().enumerate() {
        for g in gl_generators(n, f) {
            let mut mats = ids.clone();
            mats[c] = g;
            perms.push(domain.perm_of(&mats)?);
        }
    }
    Ok(Coset::from_group(PermGroup::new(domain.len(), &perms)?))
}

fn part_of(domain: &PointDomain, component: usize, kind: PartKind) -> Result<usize> {
    domain
        .find_part(component, kind)
        .ok_or_else(|| Error::OutOfRange(format!("component {component} has no {kind:?} part")))
}

fn combination(field: PrimeField, coeffs: &[u16], basis: &[Vec<u16>], len: usize) -> Vec<u16> {
    let mut out = vec![0u16; len];
    for (&c, v) in coeffs.iter().zip(basis) {
        if c != 0 {
            for (x, &y) in out.iter_mut().zip(v) {
                *x = field.add(*x, field.mul(c, y));
            }
        }
    }
    out
}

/// Fills the table level by level and returns the cell of the whole space.
/// `step(cell, d, u)` restricts a level-`(d−1)` cell to the elements sending
/// the `d`-th basis vector to `u` (given in the table's coordinates).
fn run_dp(
    table: &SubspaceTable,
    start: Coset,
    mut step: impl FnMut(&Coset, usize, &[u16]) -> Result<Coset>,
) -> Result<Coset> {
    let field = table.field;
    let k = table.n;
    let degree = start.degree();
    let mut cells: Vec<Coset> = vec![Coset::empty(degree); table.len()];
    cells[0] = start;
    for d in 1..=k {
        let mut any = false;
        for ui in table.levels[d].clone() {
            let u_space = &table.subspaces[ui].canonical;
            let mut pieces = Vec::new();
            for wi in table.levels[d - 1].clone() {
                if cells[wi].is_empty() {
                    continue;
                }
                let w_space = &table.subspaces[wi].canonical;
                if !w_space.rows().iter().all(|r| u_space.contains(r)) {
                    continue;
                }
                for code in 0..field.order().pow(d as u32) {
                    let coeffs = decode_vector(code, d, field.p());
                    let u = combination(field, &coeffs, u_space.rows(), k);
                    if w_space.contains(&u) {
                        continue;
                    }
                    let piece = step(&cells[wi], d, &u)?;
                    if !piece.is_empty() {
                        pieces.push(piece);
                    }
                }
            }
            cells[ui] = Coset::union(degree, &pieces);
            any |= !cells[ui].is_empty();
        }
        if !any {
            return Ok(Coset::empty(degree));
        }
    }
    Ok(cells.swap_remove(table.levels[k].start))
}

fn check_basis(field: PrimeField, n: usize, basis: &[Vec<u16>], what: &str) -> Result<()> {
    if basis.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!("{what}: vectors must have length {n}")));
    }
    if EchelonBasis::from_vectors(field, n, basis).dim() != basis.len() {
        return Err(Error::DimensionMismatch(format!("{what}: basis is not independent")));
    }
    Ok(())
}

/// `{g ∈ C : g(V) = W}`, where `v` is an ordered basis of `V` and `w` a
/// basis of `W`, both in the primal copy of `component`.
pub fn subspace_transporter(
    domain: &PointDomain,
    component: usize,
    c: &Coset,
    v: &[Vec<u16>],
    w: &[Vec<u16>],
) -> Result<Coset> {
    let field = domain.field();
    let n = domain.dims()[component];
    check_basis(field, n, v, "V")?;
    check_basis(field, n, w, "W")?;
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "dim V = {} but dim W = {}",
            v.len(),
            w.len()
        )));
    }
    let part = part_of(domain, component, PartKind::Primal)?;
    let table = enumerate_subspaces(w.len(), field, DEFAULT_SUBSPACE_CAP)?;
    run_dp(&table, c.clone(), |cell, d, coords| {
        let u = combination(field, coords, w, n);
        Ok(pointwise_transporter(
            cell,
            domain.point(part, &v[d - 1]),
            domain.point(part, &u),
        ))
    })
}

/// `{g ∈ C : gᵗAg = B}`, for `g` the matrix of `component`; the domain needs
/// both a primal and a dual copy of that component.
pub fn alt_matrix_transporter(
    domain: &PointDomain,
    component: usize,
    c: &Coset,
    a: &Matrix,
    b: &Matrix,
) -> Result<Coset> {
    let field = domain.field();
    let n = domain.dims()[component];
    for (name, x) in [("A", a), ("B", b)] {
        if x.rows() != n || x.cols() != n || !is_alternating(x) {
            return Err(Error::DimensionMismatch(format!(
                "{name} must be an alternating {n}x{n} matrix"
            )));
        }
    }
    if a.rank() != b.rank() {
        return Ok(Coset::empty(c.degree()));
    }
    let primal = part_of(domain, component, PartKind::Primal)?;
    let dual = part_of(domain, component, PartKind::Dual)?;
    let table = enumerate_subspaces(n, field, DEFAULT_SUBSPACE_CAP)?;
    run_dp(&table, c.clone(), |cell, d, u| {
        let mut e = vec![0u16; n];
        e[d - 1] = 1;
        let moved = pointwise_transporter(cell, domain.point(primal, &e), domain.point(primal, u));
        if moved.is_empty() {
            return Ok(moved);
        }
        Ok(pointwise_transporter(
            &moved,
            domain.point(dual, &b.col(d - 1)),
            domain.point(dual, &a.mul_vec(u)),
        ))
    })
}

/// The result of [`dp_isometry`]: the coset of pairs `(g, h)` with
/// `gᵗ·G^{h(x)}·g = H^{x}` for all `x ∈ F_q^m`, where `G^{y} = Σ y_k G_k`.
#[derive(Clone, Debug)]
pub struct DpIsometry {
    pub domain: PointDomain,
    pub coset: Coset,
}

impl DpIsometry {
    pub fn is_empty(&self) -> bool {
        self.coset.is_empty()
    }

    /// The `g`-components, which make up `Iso(𝒢, ℋ)`, sorted.
    pub fn g_projection(&self, cap: u128) -> Result<Vec<Matrix>> {
        let (Some(rep), Some(group)) = (self.coset.rep(), self.coset.group()) else {
            return Ok(Vec::new());
        };
        let field = self.domain.field();
        let n = self.domain.dims()[0];
        let small = PointDomain::vector_space(field, n)?;
        let gens = group
            .generators()
            .iter()
            .map(|p| small.perm_of(&[self.domain.component_matrix(p, 0)]))
            .collect::<Result<Vec<_>>>()?;
        let projected = PermGroup::new(small.len(), &gens)?;
        let g0 = self.domain.component_matrix(rep, 0);
        let mut out: Vec<Matrix> = projected
            .elements(cap)?
            .iter()
            .map(|k| g0.mul(&small.component_matrix(k, 0)))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Domain of the isometry search: `F_q^n`, its dual, and `F_q^m`.
pub fn pairs_domain(field: PrimeField, n: usize, m: usize) -> Result<PointDomain> {
    PointDomain::new(
        field,
        vec![n, m],
        vec![
            Part {
                component: 0,
                kind: PartKind::Primal,
            },
            Part {
                component: 0,
                kind: PartKind::Dual,
            },
            Part {
                component: 1,
                kind: PartKind::Primal,
            },
        ],
    )
}

/// The isometry coset of two tuples, by dynamic programming over subspaces
/// `V ≤ F_q^m`: the cell of `V` (dimension `d`) holds the pairs with
/// `h(E_d) = V` and `gᵗ·G^{h(e_i)}·g = H_i` for `i ≤ d`.
pub fn dp_isometry(g: &AlternatingTuple, h: &AlternatingTuple) -> Result<DpIsometry> {
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
    let (n, m, field) = (g.n(), g.m(), g.field());
    let domain = pairs_domain(field, n, m)?;
    let h_part = part_of(&domain, 1, PartKind::Primal)?;
    let table = enumerate_subspaces(m, field, DEFAULT_SUBSPACE_CAP)?;
    let start = full_group(&domain)?;
    let coset = run_dp(&table, start, |cell, d, v| {
        let mut e = vec![0u16; m];
        e[d - 1] = 1;
        let moved = pointwise_transporter(cell, domain.point(h_part, &e), domain.point(h_part, v));
        if moved.is_empty() {
            return Ok(moved);
        }
        let mut gv = Matrix::zeros(n, n, field);
        for (&c, gk) in v.iter().zip(g.mats()) {
            if c != 0 {
                gv = gv.add(&gk.scale(c));
            }
        }
        alt_matrix_transporter(&domain, 0, &moved, &gv, &h.mats()[d - 1])
    })?;
    Ok(DpIsometry { domain, coset })
}
