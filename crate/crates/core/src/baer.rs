//! Baer groups: the class-2, exponent-`p` group on `F_p^m × F_p^n` defined
//! by an alternating tuple, with `(v₁, u₁)∘(v₂, u₂) = (v₁ + v₂ + ½b(u₁, u₂),
//! u₁ + u₂)` and `b(u₁, u₂) = (u₁ᵗG_k u₂)_k`. Two such groups are isomorphic
//! exactly when the spaces are isometric; [`group_iso_micro`] decides the
//! group side by backtracking so the two sides can be compared.

use std::collections::HashSet;

use crate::error::{check_cap, Result};
use crate::field::PrimeField;
use crate::matrix::{decode_vector, encode_vector, pow_u128};
use crate::tensor::AlternatingTuple;

pub const DEFAULT_BAER_CAP: u128 = 2187;
pub const DEFAULT_GROUP_ISO_CAP: u128 = 729;

/// A multiplication table. Element `(v, u)` has index
/// `code(v)·pⁿ + code(u)`, codes being lexicographic; the identity is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    p: u16,
    n: usize,
    m: usize,
    order: usize,
    mul: Vec<u32>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn index(&self, v: &[u16], u: &[u16]) -> u32 {
        let pn = (self.p as u64).pow(self.n as u32);
        (encode_vector(v, self.p) * pn + encode_vector(u, self.p)) as u32
    }

    pub fn element(&self, x: u32) -> (Vec<u16>, Vec<u16>) {
        let pn = (self.p as u64).pow(self.n as u32);
        let x = x as u64;
        (
            decode_vector(x / pn, self.m, self.p),
            decode_vector(x % pn, self.n, self.p),
        )
    }

    #[inline]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn inverse(&self, a: u32) -> u32 {
        (0..self.order as u32)
            .find(|&b| self.op(a, b) == 0)
            .expect("every element has an inverse")
    }

    pub fn power(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(0, |acc, _| self.op(acc, a))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    fn elements(&self) -> std::ops::Range<u32> {
        0..self.order as u32
    }

    /// Unit and inverse laws: 0 is a two-sided identity, and every row and
    /// column is a permutation.
    pub fn is_quasigroup_with_identity(&self) -> bool {
        let n = self.order;
        self.elements().all(|a| self.op(0, a) == a && self.op(a, 0) == a)
            && (0..n).all(|a| {
                let row: HashSet<u32> = (0..n).map(|b| self.mul[a * n + b]).collect();
                let col: HashSet<u32> = (0..n).map(|b| self.mul[b * n + a]).collect();
                row.len() == n && col.len() == n
            })
    }

    /// Associativity by Light's test over the generators `(e_i, 0)`, `(0, e_j)`,
    /// valid because every element is reached from the identity by left
    /// multiplication with generators (checked first).
    pub fn is_associative(&self) -> bool {
        let gens = self.standard_generators();
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0u32];
        while let Some(x) = queue.pop() {
            for &s in &gens {
                let y = self.op(s, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return self.is_associative_exhaustive();
        }
        gens.iter().all(|&s| {
            self.elements()
                .all(|x| self.elements().all(|y| self.op(self.op(x, s), y) == self.op(x, self.op(s, y))))
        })
    }

    pub fn is_associative_exhaustive(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.elements().all(|c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c))))
        })
    }

    pub fn is_group(&self) -> bool {
        self.is_quasigroup_with_identity() && self.is_associative()
    }

    fn standard_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        for i in 0..self.m {
            let mut v = vec![0u16; self.m];
            v[i] = 1;
            gens.push(self.index(&v, &vec![0; self.n]));
        }
        for j in 0..self.n {
            let mut u = vec![0u16; self.n];
            u[j] = 1;
            gens.push(self.index(&vec![0; self.m], &u));
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let (ai, bi) = (self.inverse(a), self.inverse(b));
        self.op(self.op(ai, bi), self.op(a, b))
    }

    fn commutators(&self) -> Vec<u32> {
        let inv: Vec<u32> = self.elements().map(|a| self.inverse(a)).collect();
        let mut set = HashSet::new();
        for a in self.elements() {
            for b in self.elements() {
                set.insert(self.op(self.op(inv[a as usize], inv[b as usize]), self.op(a, b)));
            }
        }
        let mut v: Vec<u32> = set.into_iter().collect();
        v.sort();
        v
    }

    /// Every commutator is central.
    pub fn has_class_at_most_two(&self) -> bool {
        self.commutators()
            .iter()
            .all(|&c| self.elements().all(|z| self.op(c, z) == self.op(z, c)))
    }

    pub fn has_exponent(&self, e: u64) -> bool {
        self.elements().all(|a| self.power(a, e) == 0)
    }

    /// The subgroup generated by the given elements.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let y = self.op(out[i], g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }

    pub fn derived_subgroup(&self) -> Vec<u32> {
        self.closure(&self.commutators())
    }
}

/// The Baer group of `G` over an odd prime field.
pub fn baer_group(g: &AlternatingTuple) -> Result<FiniteGroupTable> {
    baer_group_capped(g, DEFAULT_BAER_CAP)
}

pub fn baer_group_capped(g: &AlternatingTuple, cap: u128) -> Result<FiniteGroupTable> {
    let f: PrimeField = g.field();
    let half = f.half()?;
    let (n, m, p) = (g.n(), g.m(), f.p());
    let order = pow_u128(f.order(), (n + m) as u64);
    check_cap("baer_group", order, cap)?;
    let order = order as usize;
    let pn = (p as usize).pow(n as u32);
    let pm = (p as usize).pow(m as u32);
    let us: Vec<Vec<u16>> = (0..pn as u64).map(|c| decode_vector(c, n, p)).collect();
    let vs: Vec<Vec<u16>> = (0..pm as u64).map(|c| decode_vector(c, m, p)).collect();
    // half_b[u1 * pn + u2] = code of ½b(u1, u2)
    let gu: Vec<Vec<Vec<u16>>> = us
        .iter()
        .map(|u| g.mats().iter().map(|gk| gk.transpose().mul_vec(u)).collect())
        .collect();
    let mut half_b = vec![Vec::new(); pn * pn];
    for (i, gui) in gu.iter().enumerate() {
        for (j, u2) in us.iter().enumerate() {
            half_b[i * pn + j] = gui
                .iter()
                .map(|w| {
                    let dot = w.iter().zip(u2).fold(0u16, |a, (&x, &y)| f.add(a, f.mul(x, y)));
                    f.mul(half, dot)
                })
                .collect::<Vec<u16>>();
        }
    }
    let add = |a: &[u16], b: &[u16]| -> Vec<u16> { a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect() };
    let mut mul = vec![0u32; order * order];
    for a in 0..order {
        let (va, ua) = (&vs[a / pn], a % pn);
        for b in 0..order {
            let (vb, ub) = (&vs[b / pn], b % pn);
            let v = add(&add(va, vb), &half_b[ua * pn + ub]);
            let u = encode_vector(&add(&us[ua], &us[ub]), p) as usize;
            mul[a * order + b] = (encode_vector(&v, p) as usize * pn + u) as u32;
        }
    }
    Ok(FiniteGroupTable {
        p,
        n,
        m,
        order,
        mul,
    })
}

/// Whether two group tables are isomorphic, by backtracking over the images
/// of a greedily chosen generating set of `t1`.
pub fn group_iso_micro(t1: &FiniteGroupTable, t2: &FiniteGroupTable) -> Result<bool> {
    check_cap("group_iso_micro", t1.order() as u128, DEFAULT_GROUP_ISO_CAP)?;
    check_cap("group_iso_micro", t2.order() as u128, DEFAULT_GROUP_ISO_CAP)?;
    if t1.order() != t2.order() {
        return Ok(false);
    }
    // element order and centraliser size are preserved by isomorphisms
    let profile = |t: &FiniteGroupTable| -> Vec<u64> {
        t.elements()
            .map(|a| {
                let centraliser = t.elements().filter(|&b| t.op(a, b) == t.op(b, a)).count() as u64;
                t.element_order(a) << 32 | centraliser
            })
            .collect()
    };
    let orders1 = profile(t1);
    let orders2 = profile(t2);
    let mut o1 = orders1.clone();
    let mut o2 = orders2.clone();
    o1.sort();
    o2.sort();
    if o1 != o2 || t1.derived_subgroup().len() != t2.derived_subgroup().len() {
        return Ok(false);
    }
    let mut gens = Vec::new();
    let mut span = vec![0u32];
    for a in t1.elements() {
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = t1.closure(&gens);
        }
    }
    let mut phi = vec![u32::MAX; t1.order()];
    phi[0] = 0;
    let mut used = vec![false; t2.order()];
    used[0] = true;
    Ok(extend(t1, t2, &gens, &orders1, &orders2, 0, &phi, &used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    t1: &FiniteGroupTable,
    t2: &FiniteGroupTable,
    gens: &[u32],
    orders1: &[u64],
    orders2: &[u64],
    i: usize,
    phi: &[u32],
    used: &[bool],
) -> bool {
    if i == gens.len() {
        return true;
    }
    let g = gens[i];
    for y in t2.elements() {
        if used[y as usize] || orders2[y as usize] != orders1[g as usize] {
            continue;
        }
        let mut phi = phi.to_vec();
        let mut used = used.to_vec();
        phi[g as usize] = y;
        used[y as usize] = true;
        // close the partial map under right multiplication by gens[..=i]
        let mut queue: Vec<u32> = t1.elements().filter(|&x| phi[x as usize] != u32::MAX).collect();
        let mut k = 0;
        let mut ok = true;
        'close: while k < queue.len() {
            let x = queue[k];
            for &s in &gens[..=i] {
                let z = t1.op(x, s);
                let img = t2.op(phi[x as usize], phi[s as usize]);
                match phi[z as usize] {
                    u32::MAX => {
                        if used[img as usize] {
                            ok = false;
                            break 'close;
                        }
                        phi[z as usize] = img;
                        used[img as usize] = true;
                        queue.push(z);
                    }
                    w if w != img => {
                        ok = false;
                        break 'close;
                    }
                    _ => {}
                }
            }
            k += 1;
        }
        if ok && extend(t1, t2, gens, orders1, orders2, i + 1, &phi, &used) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::EchelonBasis;
    use crate::oracle::brute_force_iso;
    use crate::Error;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn heisenberg() -> AlternatingTuple {
        AlternatingTuple::from_coords(2, gf(3), &[vec![1]])
    }

    #[test]
    fn zero_tuple_gives_elementary_abelian() {
        let t = baer_group(&AlternatingTuple::zero(2, 1, gf(3))).unwrap();
        assert_eq!(t.order(), 27);
        assert!(t.is_group() && t.is_abelian() && t.has_exponent(3));
        assert_eq!(t.derived_subgroup(), vec![0]);
    }

    #[test]
    fn heisenberg_group() {
        let t = baer_group(&heisenberg()).unwrap();
        assert_eq!(t.order(), 27);
        assert!(t.is_group());
        assert!(t.is_associative_exhaustive());
        assert!(!t.is_abelian());
        assert!(t.has_exponent(3));
        assert!(t.has_class_at_most_two());
        assert_eq!(t.derived_subgroup().len(), 3);
    }

    #[test]
    fn even_characteristic_is_rejected() {
        let g = AlternatingTuple::from_coords(2, gf(2), &[vec![1]]);
        assert_eq!(baer_group(&g), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn cap_is_enforced() {
        let g = AlternatingTuple::zero(4, 4, gf(3));
        assert!(matches!(baer_group(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn structure_on_random_tuples() {
        let f = gf(3);
        let mut rng = crate::random::trial_rng(1, 0);
        for (n, m) in [(3, 1), (3, 2), (4, 2), (3, 3)] {
            let g = crate::random::sample_nait(n, m, f, &mut rng);
            let t = baer_group(&g).unwrap();
            assert!(t.is_group());
            assert!(t.has_class_at_most_two());
            assert!(t.has_exponent(3));
            let span = EchelonBasis::from_vectors(f, crate::tensor::alt_dim(n), &g.coords()).dim();
            assert_eq!(t.derived_subgroup().len(), 3usize.pow(span as u32));
        }
    }

    #[test]
    fn light_test_agrees_with_exhaustive() {
        let f = gf(3);
        let t = baer_group(&AlternatingTuple::from_coords(3, f, &[vec![1, 2, 0]])).unwrap();
        assert_eq!(t.is_associative(), t.is_associative_exhaustive());
        // a non-associative table: perturb one product
        let mut bad = t.clone();
        let (a, b) = (5usize, 7usize);
        let k = bad.mul[a * bad.order + b];
        let other = (0..bad.order as u32).find(|&x| x != k).unwrap();
        let j = (0..bad.order).find(|&j| bad.mul[a * bad.order + j] == other).unwrap();
        bad.mul.swap(a * bad.order + b, a * bad.order + j);
        assert!(!bad.is_associative_exhaustive());
        assert!(!bad.is_associative());
    }

    #[test]
    fn isomorphism_examples() {
        let h = baer_group(&heisenberg()).unwrap();
        let z = baer_group(&AlternatingTuple::zero(2, 1, gf(3))).unwrap();
        assert!(group_iso_micro(&h, &h).unwrap());
        assert!(!group_iso_micro(&h, &z).unwrap());
        let small = baer_group(&AlternatingTuple::zero(1, 1, gf(3))).unwrap();
        assert!(!group_iso_micro(&h, &small).unwrap());
        let two = AlternatingTuple::from_coords(2, gf(3), &[vec![2]]);
        assert!(group_iso_micro(&h, &baer_group(&two).unwrap()).unwrap());
    }

    #[test]
    fn correspondence_on_small_corpus() {
        let f = gf(3);
        let n = 2;
        for m in 1..=2 {
            let tuples: Vec<AlternatingTuple> = (0..3u64.pow(m as u32))
                .map(|c| {
                    let coords: Vec<Vec<u16>> = decode_vector(c, m, 3).into_iter().map(|x| vec![x]).collect();
                    AlternatingTuple::from_coords(n, f, &coords)
                })
                .collect();
            for g1 in &tuples {
                for g2 in &tuples {
                    let iso = !brute_force_iso(g1, g2).unwrap().is_empty();
                    let grp = group_iso_micro(&baer_group(g1).unwrap(), &baer_group(g2).unwrap()).unwrap();
                    assert_eq!(iso, grp);
                }
            }
        }
    }
}
