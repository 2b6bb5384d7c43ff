//! Permutation groups on the points of vector spaces: deterministic
//! Schreier–Sims, membership, pointwise transporters and cosets.
//!
//! Composition is right to left: `(a∘b)(x) = a(b(x))`.

use std::collections::HashSet;

use crate::error::{check_cap, Error, Result};
use crate::field::PrimeField;
use crate::matrix::{decode_vector, encode_vector, pow_u128, Matrix};

/// Largest domain [`PointDomain::new`] accepts.
pub const DEFAULT_DOMAIN_CAP: u128 = 1 << 14;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartKind {
    /// `x ↦ g·x`
    Primal,
    /// `y ↦ g⁻ᵗ·y`
    Dual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Part {
    pub component: usize,
    pub kind: PartKind,
}

/// A disjoint union of copies of `F_q^{n_c}`, acted on by tuples of
/// matrices `(g_0, g_1, …) ∈ ∏ GL(n_c, q)`; each part is a primal or dual
/// copy of one component. Points of a part are numbered in lexicographic
/// order of their vectors, parts one after the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointDomain {
    field: PrimeField,
    dims: Vec<usize>,
    parts: Vec<Part>,
    offsets: Vec<usize>,
    len: usize,
}

impl PointDomain {
    pub fn new(field: PrimeField, dims: Vec<usize>, parts: Vec<Part>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut len: u128 = 0;
        for part in &parts {
            let n = *dims.get(part.component).ok_or_else(|| {
                Error::OutOfRange(format!("component {} of {}", part.component, dims.len()))
            })?;
            offsets.push(len as usize);
            len += pow_u128(field.order(), n as u64);
            check_cap("point domain", len, DEFAULT_DOMAIN_CAP)?;
        }
        Ok(PointDomain {
            field,
            dims,
            parts,
            offsets,
            len: len as usize,
        })
    }

    /// `F_q^n` with the natural action.
    pub fn vector_space(field: PrimeField, n: usize) -> Result<Self> {
        Self::new(
            field,
            vec![n],
            vec![Part {
                component: 0,
                kind: PartKind::Primal,
            }],
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Index of the first part of the given component and kind.
    pub fn find_part(&self, component: usize, kind: PartKind) -> Option<usize> {
        self.parts
            .iter()
            .position(|p| p.component == component && p.kind == kind)
    }

    pub fn point(&self, part: usize, v: &[u16]) -> u32 {
        debug_assert_eq!(v.len(), self.dims[self.parts[part].component]);
        (self.offsets[part] as u64 + encode_vector(v, self.field.p())) as u32
    }

    pub fn vector(&self, point: u32) -> (usize, Vec<u16>) {
        let point = point as usize;
        let part = self.offsets.partition_point(|&o| o <= point) - 1;
        let n = self.dims[self.parts[part].component];
        let v = decode_vector((point - self.offsets[part]) as u64, n, self.field.p());
        (part, v)
    }

    /// The permutation induced by one matrix per component.
    pub fn perm_of(&self, mats: &[Matrix]) -> Result<Perm> {
        if mats.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} components",
                mats.len(),
                self.dims.len()
            )));
        }
        let mut duals = Vec::with_capacity(mats.len());
        for (c, m) in mats.iter().enumerate() {
            if m.rows() != self.dims[c] || m.cols() != self.dims[c] {
                return Err(Error::DimensionMismatch(format!(
                    "component {c} is {}-dimensional, got {}x{}",
                    self.dims[c],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != self.field {
                return Err(Error::FieldMismatch(m.field().p(), self.field.p()));
            }
            let inv = m
                .inverse()
                .ok_or_else(|| Error::InvalidPermutation("singular matrix".into()))?;
            duals.push(inv.transpose());
        }
        let mut images = vec![0u32; self.len];
        for (pi, part) in self.parts.iter().enumerate() {
            let n = self.dims[part.component];
            let m = match part.kind {
                PartKind::Primal => &mats[part.component],
                PartKind::Dual => &duals[part.component],
            };
            let count = self.field.order().pow(n as u32);
            for code in 0..count {
                let v = decode_vector(code, n, self.field.p());
                images[self.offsets[pi] + code as usize] = self.point(pi, &m.mul_vec(&v));
            }
        }
        Ok(Perm(images))
    }

    /// Reads the matrix of `component` off the images of the standard basis
    /// in its primal part.
    pub fn component_matrix(&self, perm: &Perm, component: usize) -> Matrix {
        let part = self
            .find_part(component, PartKind::Primal)
            .expect("component has a primal part");
        let n = self.dims[component];
        let cols: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                let mut e = vec![0u16; n];
                e[i] = 1;
                self.vector(perm.apply(self.point(part, &e))).1
            })
            .collect();
        Matrix::from_cols(self.field, n, &cols)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Indices into `PermGroup::strong` of the generators fixing the earlier
    /// base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    transversal: Vec<Option<Perm>>,
    inverse: Vec<Option<Perm>>,
    checked: HashSet<(u32, usize)>,
    dirty: bool,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base as usize] = Some(Perm::identity(degree));
        inverse[base as usize] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            inverse,
            checked: HashSet::new(),
            dirty: false,
        }
    }
}

/// A base and strong generating set built by deterministic Schreier–Sims.
/// New base points are the smallest points moved by the element that needs
/// them.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::with_base(degree, gens, &[])
    }

    /// Like [`PermGroup::new`], with the base starting with `prefix`.
    pub fn with_base(degree: usize, gens: &[Perm], prefix: &[u32]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut group = PermGroup::trivial(degree);
        for &b in prefix {
            if b as usize >= degree || group.levels.iter().any(|l| l.base == b) {
                return Err(Error::InvalidPermutation(format!("bad base point {b}")));
            }
            group.levels.push(Level::new(b, degree));
        }
        for g in gens {
            group.add_generator(g);
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// The strong generators; they generate the group.
    pub fn generators(&self) -> Vec<Perm> {
        match self.levels.first() {
            Some(l) => l.gens.iter().map(|&i| self.strong[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    /// Adds `g` to the generators; returns whether the group grew.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        let (h, j) = self.sift(g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_strong(h, j);
        self.complete();
        true
    }

    /// The orbit of `x`, in discovery order.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let gens = self.generators();
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            for g in &gens {
                let y = g.apply(orbit[i]);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    /// The group with the first `from` levels of the chain removed: the
    /// pointwise stabiliser of the first `from` base points.
    pub fn stabilizer_of_prefix(&self, from: usize) -> PermGroup {
        let levels = self.levels[from.min(self.levels.len())..].to_vec();
        PermGroup {
            degree: self.degree,
            strong: self.strong.clone(),
            levels,
        }
    }

    /// All elements, when there are at most `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Perm>> {
        check_cap("group elements", self.order(), cap)?;
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &b in &level.orbit {
                let u = level.transversal[b as usize].as_ref().unwrap();
                for g in &out {
                    next.push(u.compose(g));
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.base);
            match &level.inverse[b as usize] {
                Some(inv) => h = inv.compose(&h),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn add_strong(&mut self, h: Perm, j: usize) {
        if j == self.levels.len() {
            let b = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for level in &mut self.levels[..=j] {
            level.gens.push(idx);
            level.dirty = true;
        }
    }

    /// Closes orbits and sifts Schreier generators until every level is
    /// consistent, deepest level first.
    fn complete(&mut self) {
        while let Some(i) = self.levels.iter().rposition(|l| l.dirty) {
            self.levels[i].dirty = false;
            self.close_orbit(i);
            let gens = self.levels[i].gens.clone();
            let mut k = 0;
            while k < self.levels[i].orbit.len() {
                let b = self.levels[i].orbit[k];
                for &s in &gens {
                    if !self.levels[i].checked.insert((b, s)) {
                        continue;
                    }
                    let level = &self.levels[i];
                    let sb = self.strong[s].apply(b);
                    let sg = level.inverse[sb as usize]
                        .as_ref()
                        .unwrap()
                        .compose(&self.strong[s])
                        .compose(level.transversal[b as usize].as_ref().unwrap());
                    let (h, j) = self.sift(&sg, i + 1);
                    if !h.is_identity() {
                        self.add_strong(h, j);
                    }
                }
                k += 1;
            }
        }
    }

    fn close_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        let mut k = 0;
        while k < level.orbit.len() {
            let b = level.orbit[k];
            for &s in &level.gens {
                let g = &self.strong[s];
                let c = g.apply(b);
                if level.transversal[c as usize].is_none() {
                    let u = g.compose(level.transversal[b as usize].as_ref().unwrap());
                    level.inverse[c as usize] = Some(u.inverse());
                    level.transversal[c as usize] = Some(u);
                    level.orbit.push(c);
                }
            }
            k += 1;
        }
    }
}

/// Keeps each generator that is not already in the group generated by the
/// ones kept before it.
pub fn sims_reduce(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut group = PermGroup::trivial(degree);
    gens.iter()
        .filter(|g| group.add_generator(g))
        .cloned()
        .collect()
}

/// `rep ∘ group`, or the empty set.
#[derive(Clone, Debug)]
pub struct Coset {
    degree: usize,
    inner: Option<(Perm, PermGroup)>,
}

impl Coset {
    pub fn empty(degree: usize) -> Self {
        Coset {
            degree,
            inner: None,
        }
    }

    pub fn new(rep: Perm, group: PermGroup) -> Self {
        assert_eq!(rep.degree(), group.degree());
        Coset {
            degree: group.degree(),
            inner: Some((rep, group)),
        }
    }

    pub fn from_group(group: PermGroup) -> Self {
        Coset::new(Perm::identity(group.degree()), group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_none()
    }

    pub fn rep(&self) -> Option<&Perm> {
        self.inner.as_ref().map(|(r, _)| r)
    }

    pub fn group(&self) -> Option<&PermGroup> {
        self.inner.as_ref().map(|(_, g)| g)
    }

    pub fn size(&self) -> u128 {
        self.group().map_or(0, PermGroup::order)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        match &self.inner {
            Some((rep, group)) => group.contains(&rep.inverse().compose(g)),
            None => false,
        }
    }

    pub fn elements(&self, cap: u128) -> Result<Vec<Perm>> {
        match &self.inner {
            Some((rep, group)) => {
                let mut out: Vec<Perm> = group.elements(cap)?.iter().map(|k| rep.compose(k)).collect();
                out.sort();
                Ok(out)
            }
            None => Ok(Vec::new()),
        }
    }

    /// The union of cosets known to make up a single coset: the first
    /// representative with the group generated by all subgroups and the
    /// differences of representatives, reduced.
    pub fn union(degree: usize, pieces: &[Coset]) -> Coset {
        let mut nonempty = pieces.iter().filter_map(|c| c.inner.as_ref());
        let Some((r1, k1)) = nonempty.next() else {
            return Coset::empty(degree);
        };
        let r1_inv = r1.inverse();
        let mut gens = k1.generators();
        for (r, k) in nonempty {
            gens.push(r1_inv.compose(r));
            gens.extend(k.generators());
        }
        let reduced = sims_reduce(degree, &gens);
        let group = PermGroup::new(degree, &reduced).expect("degrees checked");
        Coset::new(r1.clone(), group)
    }
}

/// `{g ∈ C : g(x) = y}`.
pub fn pointwise_transporter(c: &Coset, x: u32, y: u32) -> Coset {
    let Some((rep, group)) = &c.inner else {
        return c.clone();
    };
    let z = rep.inverse().apply(y);
    let chain = PermGroup::with_base(c.degree, &group.generators(), &[x]).expect("valid");
    match &chain.levels[0].transversal[z as usize] {
        Some(u) => Coset::new(rep.compose(u), chain.stabilizer_of_prefix(1)),
        None => Coset::empty(c.degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{enumerate_gl, gl_order};
    use crate::random::trial_rng;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn gl_perms(n: usize, p: u32) -> (PointDomain, Vec<Perm>) {
        let f = gf(p);
        let dom = PointDomain::vector_space(f, n).unwrap();
        let perms = enumerate_gl(n, f, u128::MAX)
            .unwrap()
            .map(|a| dom.perm_of(&[a]).unwrap())
            .collect();
        (dom, perms)
    }

    /// Closure of a generating set by breadth-first multiplication.
    fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = Perm::identity(degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(g) = queue.pop() {
            for s in gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        let mut v: Vec<Perm> = seen.into_iter().collect();
        v.sort();
        v
    }

    #[test]
    fn perm_basics() {
        let a = Perm::new(vec![1, 2, 0]).unwrap();
        let b = Perm::new(vec![1, 0, 2]).unwrap();
        assert_eq!(a.compose(&b).images(), &[2, 1, 0]);
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::new(vec![0, 2]).is_err());
    }

    #[test]
    fn domain_points_round_trip() {
        let f = gf(3);
        let dom = PointDomain::new(
            f,
            vec![2, 1],
            vec![
                Part { component: 0, kind: PartKind::Primal },
                Part { component: 0, kind: PartKind::Dual },
                Part { component: 1, kind: PartKind::Primal },
            ],
        )
        .unwrap();
        assert_eq!(dom.len(), 9 + 9 + 3);
        for p in 0..dom.len() as u32 {
            let (part, v) = dom.vector(p);
            assert_eq!(dom.point(part, &v), p);
        }
        assert!(PointDomain::vector_space(gf(2), 15).is_err());
    }

    #[test]
    fn matrix_actions_are_homomorphisms() {
        let f = gf(3);
        let dom = PointDomain::new(
            f,
            vec![2],
            vec![
                Part { component: 0, kind: PartKind::Primal },
                Part { component: 0, kind: PartKind::Dual },
            ],
        )
        .unwrap();
        let gl: Vec<Matrix> = enumerate_gl(2, f, u128::MAX).unwrap().collect();
        for a in gl.iter().step_by(5) {
            for b in gl.iter().step_by(7) {
                let pa = dom.perm_of(std::slice::from_ref(a)).unwrap();
                let pb = dom.perm_of(std::slice::from_ref(b)).unwrap();
                assert_eq!(dom.perm_of(&[a.mul(b)]).unwrap(), pa.compose(&pb));
                assert_eq!(dom.component_matrix(&pa, 0), *a);
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::new(4, &[Perm::identity(4)]).unwrap().order(), 1);
        let (dom, all) = gl_perms(2, 2);
        assert_eq!(PermGroup::new(dom.len(), &all).unwrap().order(), 6);
        let (dom, all) = gl_perms(3, 2);
        let g = PermGroup::new(dom.len(), &all).unwrap();
        assert_eq!(g.order(), gl_order(3, 2));
        let mut rng = trial_rng(1, 0);
        for _ in 0..10 {
            let two: Vec<Perm> = all.choose_multiple(&mut rng, 2).cloned().collect();
            let h = PermGroup::new(dom.len(), &two).unwrap();
            assert_eq!(168 % h.order(), 0);
            assert_eq!(h.order() as usize, closure(dom.len(), &two).len());
        }
        let (dom, all) = gl_perms(2, 3);
        assert_eq!(PermGroup::new(dom.len(), &all).unwrap().order(), 48);
    }

    #[test]
    fn membership_matches_enumeration() {
        let (dom, all) = gl_perms(3, 2);
        let mut rng = trial_rng(2, 0);
        for _ in 0..10 {
            let k = rng.gen_range(1..4);
            let gens: Vec<Perm> = all.choose_multiple(&mut rng, k).cloned().collect();
            let g = PermGroup::new(dom.len(), &gens).unwrap();
            let elements = closure(dom.len(), &gens);
            assert_eq!(g.elements(u128::MAX).unwrap(), elements);
            for x in &all {
                assert_eq!(g.contains(x), elements.binary_search(x).is_ok());
            }
        }
    }

    #[test]
    fn transporters() {
        let (dom, all) = gl_perms(2, 2);
        let c = Coset::from_group(PermGroup::new(dom.len(), &all).unwrap());
        let e1 = dom.point(0, &[1, 0]);
        let e2 = dom.point(0, &[0, 1]);
        let zero = dom.point(0, &[0, 0]);
        assert_eq!(pointwise_transporter(&c, e1, e1).size(), 2);
        assert_eq!(pointwise_transporter(&c, zero, zero).size(), 6);
        assert!(pointwise_transporter(&c, e1, zero).is_empty());
        let t = pointwise_transporter(&c, e1, e2);
        let mut expect: Vec<Perm> = all.iter().filter(|g| g.apply(e1) == e2).cloned().collect();
        expect.sort();
        assert_eq!(t.elements(100).unwrap(), expect);
    }

    #[test]
    fn transporters_match_filtering() {
        let (dom, all) = gl_perms(3, 2);
        let mut rng = trial_rng(3, 0);
        for _ in 0..10 {
            let gens: Vec<Perm> = all.choose_multiple(&mut rng, 2).cloned().collect();
            let rep = all.choose(&mut rng).unwrap().clone();
            let c = Coset::new(rep, PermGroup::new(dom.len(), &gens).unwrap());
            let elements = c.elements(u128::MAX).unwrap();
            for x in 0..8 {
                for y in 0..8 {
                    let t = pointwise_transporter(&c, x, y);
                    let expect: Vec<Perm> = elements.iter().filter(|g| g.apply(x) == y).cloned().collect();
                    assert_eq!(t.elements(u128::MAX).unwrap(), expect);
                    if !t.is_empty() {
                        let orbit = c.group().unwrap().orbit(x).len() as u128;
                        assert_eq!(t.size(), c.size() / orbit);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_keeps_the_group() {
        let (dom, all) = gl_perms(3, 2);
        let mut rng = trial_rng(4, 0);
        let hundred: Vec<Perm> = (0..100).map(|_| all.choose(&mut rng).unwrap().clone()).collect();
        let reduced = sims_reduce(dom.len(), &hundred);
        let g = PermGroup::new(dom.len(), &reduced).unwrap();
        assert_eq!(g.order(), 168);
        let bound = g.base().len() * 7;
        assert!(reduced.len() <= bound, "{}", reduced.len());
        let single = vec![all[5].clone()];
        assert_eq!(sims_reduce(dom.len(), &single).len(), usize::from(!all[5].is_identity()));
    }

    #[test]
    fn union_of_transporter_pieces() {
        let (dom, all) = gl_perms(2, 2);
        let c = Coset::from_group(PermGroup::new(dom.len(), &all).unwrap());
        let e1 = dom.point(0, &[1, 0]);
        let pieces: Vec<Coset> = (1..4).map(|y| pointwise_transporter(&c, e1, y)).collect();
        let u = Coset::union(dom.len(), &pieces);
        assert_eq!(u.size(), 6);
        assert!(Coset::union(dom.len(), &[Coset::empty(dom.len())]).is_empty());
    }
}
