//! Fully enumerated permutation groups.
//!
//! A [`GroupTable`] lists every element of the group generated by a set of
//! permutations, in a deterministic order with the identity at index 0, and
//! carries a full multiplication table. A [`Subgroup`] is a bitset over those
//! indices together with a generating list, so subgroup containment is a
//! bitwise subset test.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the order of a group that will be enumerated.
pub const DEFAULT_ORDER_BOUND: usize = 2000;

pub struct GroupTable {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of some [`GroupTable`], as a set of element indices.
///
/// Equality and hashing look only at the members.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: ElementSet,
    generators: Vec<usize>,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }
}

/// A quotient group together with the projection from the ambient group.
#[derive(Debug)]
pub struct Quotient {
    pub table: GroupTable,
    /// Coset number of each parent element (cosets are numbered by their
    /// least element index); `None` outside the ambient subgroup.
    pub coset: Vec<Option<usize>>,
    /// Index in `table` of the image of each parent element; `None` outside
    /// the ambient subgroup.
    pub projection: Vec<Option<usize>>,
}

impl Quotient {
    /// Preimage of a subgroup of the quotient, as a subgroup of the parent.
    pub fn preimage(&self, parent: &GroupTable, sub: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            parent.order(),
            self.projection
                .iter()
                .enumerate()
                .filter_map(|(i, p)| p.filter(|&q| sub.contains(q)).map(|_| i)),
        );
        parent.subgroup_from_members(set)
    }
}

impl GroupTable {
    /// Enumerates the group generated by `generators` with the default order
    /// bound.
    pub fn close_generators(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::close_generators_bounded(degree, generators, DEFAULT_ORDER_BOUND)
    }

    /// Enumerates the group generated by `generators`, one generator at a
    /// time: when a generator outside the current subgroup `H` is added, the
    /// coset `H g` is appended and further cosets are discovered by
    /// multiplying coset representatives by the generators seen so far.
    pub fn close_generators_bounded(
        degree: usize,
        generators: &[Permutation],
        bound: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Input("group degree must be positive".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut seen_gens: Vec<&Permutation> = Vec::new();

        let push = |p: Permutation,
                    elements: &mut Vec<Permutation>,
                    index: &mut HashMap<Permutation, usize>|
         -> Result<()> {
            if elements.len() >= bound {
                return Err(Error::OrderBound { bound });
            }
            index.insert(p.clone(), elements.len());
            elements.push(p);
            Ok(())
        };

        for g in generators {
            seen_gens.push(g);
            if index.contains_key(g) {
                continue;
            }
            let base_len = elements.len();
            let mut reps = vec![g.clone()];
            for i in 0..base_len {
                let p = elements[i].compose_unchecked(g);
                push(p, &mut elements, &mut index)?;
            }
            let mut next = 0;
            while next < reps.len() {
                let rep = reps[next].clone();
                next += 1;
                for &s in &seen_gens {
                    let x = rep.compose_unchecked(s);
                    if index.contains_key(&x) {
                        continue;
                    }
                    for i in 0..base_len {
                        let p = elements[i].compose_unchecked(&x);
                        push(p, &mut elements, &mut index)?;
                    }
                    reps.push(x);
                }
            }
        }

        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mult[i * n + j] = index[&a.compose_unchecked(b)] as u32;
            }
        }
        let inv = elements
            .iter()
            .map(|a| index[&a.inverse()] as u32)
            .collect();
        let orders = elements.iter().map(|a| a.order() as u32).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();

        let table = GroupTable {
            degree,
            generators: generators.to_vec(),
            generator_indices,
            elements,
            index,
            mult,
            inv,
            orders,
        };
        debug_assert!(table.is_closed());
        Ok(table)
    }

    fn is_closed(&self) -> bool {
        self.mult.iter().all(|&m| (m as usize) < self.order())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `element(a)` composed with `element(b)` (`a` first).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    /// `a^e` for any integer `e`.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let e = e.rem_euclid(self.element_order(a) as i64);
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab_inv = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(ab_inv, a), b)
    }

    /// `b⁻¹ a b`.
    #[inline]
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: ElementSet::full(self.order()),
            generators: self
                .generator_indices
                .iter()
                .copied()
                .filter(|&g| g != 0)
                .collect(),
            order: self.order(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            members: ElementSet::from_indices(self.order(), [0]),
            generators: Vec::new(),
            order: 1,
        }
    }

    /// Least subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Subgroup {
        self.extend(&self.trivial(), seed)
    }

    /// `⟨base, extra⟩`, reusing the coset structure of `base`.
    pub fn extend(&self, base: &Subgroup, extra: &[usize]) -> Subgroup {
        let mut members = base.members.clone();
        let mut generators = base.generators.clone();
        for &g in extra {
            if members.contains(g) {
                continue;
            }
            generators.push(g);
            let current: Vec<usize> = members.iter().collect();
            let mut reps = vec![0];
            let mut next = 0;
            while next < reps.len() {
                let rep = reps[next];
                next += 1;
                for &t in &generators {
                    let x = self.mul(rep, t);
                    if members.contains(x) {
                        continue;
                    }
                    for &c in &current {
                        members.insert(self.mul(c, x));
                    }
                    reps.push(x);
                }
            }
        }
        let order = members.count();
        assert_eq!(
            self.order() % order,
            0,
            "subgroup order must divide group order"
        );
        Subgroup {
            members,
            generators,
            order,
        }
    }

    /// Wraps a member set known to be a subgroup, choosing generators
    /// greedily in index order.
    pub fn subgroup_from_members(&self, members: ElementSet) -> Subgroup {
        let mut sub = self.trivial();
        for i in members.iter() {
            if !sub.contains(i) {
                sub = self.extend(&sub, &[i]);
            }
        }
        assert!(sub.members == members, "member set is not a subgroup");
        sub
    }

    /// Members of `ambient` satisfying `keep`, which must form a subgroup.
    pub fn filter_subgroup(&self, ambient: &Subgroup, keep: impl Fn(usize) -> bool) -> Subgroup {
        let set = ElementSet::from_indices(self.order(), ambient.elements().filter(|&g| keep(g)));
        self.subgroup_from_members(set)
    }

    /// Subgroup generated by all `[x, y]` with `x` in `a` and `y` in `b`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seen = ElementSet::new(self.order());
        let mut seed = Vec::new();
        for x in a.elements() {
            for y in b.elements() {
                let c = self.commutator(x, y);
                if seen.insert(c) {
                    seed.push(c);
                }
            }
        }
        self.subgroup_generated(&seed)
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h)
    }

    /// `h ⊇ h' ⊇ h'' ⊇ …`, ending with the first repeated term (included
    /// once).
    pub fn derived_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.derived_subgroup(last);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// `Γ₁ = h`, `Γᵢ₊₁ = [Γᵢ, h]`, ending with the first repeated term.
    pub fn lower_central_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.commutator_subgroup(last, h);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// Least common multiple of the element orders of `h`.
    pub fn exponent(&self, h: &Subgroup) -> usize {
        h.elements()
            .fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    /// Whether `s` is normalized by every element of `ambient`.
    pub fn is_normal_in(&self, ambient: &Subgroup, s: &Subgroup) -> bool {
        ambient
            .generators()
            .iter()
            .all(|&t| s.elements().all(|m| s.contains(self.conjugate(m, t))))
    }

    /// `C_ambient(s)`.
    pub fn centralizer(&self, ambient: &Subgroup, s: &Subgroup) -> Subgroup {
        self.filter_subgroup(ambient, |g| {
            s.generators()
                .iter()
                .all(|&x| self.mul(g, x) == self.mul(x, g))
        })
    }

    /// `C_ambient(h/k) = {g : [g, x] ∈ k for all x ∈ h}`; `k` must be normal
    /// in `ambient` and contained in `h`.
    pub fn centralizer_mod(
        &self,
        ambient: &Subgroup,
        h: &Subgroup,
        k: &Subgroup,
    ) -> Result<Subgroup> {
        if !k.is_subgroup_of(h) {
            return Err(Error::Input(
                "centralizer_mod: k is not contained in h".into(),
            ));
        }
        if !self.is_normal_in(ambient, k) {
            return Err(Error::Input("centralizer_mod: k is not normal".into()));
        }
        Ok(self.filter_subgroup(ambient, |g| {
            h.elements().all(|x| k.contains(self.commutator(g, x)))
        }))
    }

    /// `ambient / n`, acting on the right cosets of `n` by right
    /// multiplication. Coset representatives are least element indices.
    pub fn quotient(&self, ambient: &Subgroup, n: &Subgroup) -> Result<Quotient> {
        if !n.is_subgroup_of(ambient) || !self.is_normal_in(ambient, n) {
            return Err(Error::Input(
                "quotient by a subgroup that is not normal".into(),
            ));
        }
        let mut coset = vec![None; self.order()];
        let mut reps = Vec::new();
        for x in ambient.elements() {
            if coset[x].is_some() {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for m in n.elements() {
                coset[self.mul(m, x)] = Some(id);
            }
        }
        let index = reps.len();
        let action = |g: usize| -> Permutation {
            Permutation::from_zero_based(
                reps.iter()
                    .map(|&r| coset[self.mul(r, g)].expect("coset of ambient element") as u32)
                    .collect(),
            )
        };
        let gens: Vec<Permutation> = ambient.generators().iter().map(|&g| action(g)).collect();
        let table = GroupTable::close_generators_bounded(index, &gens, usize::MAX)?;
        let mut projection = vec![None; self.order()];
        for x in ambient.elements() {
            let image = table
                .index_of(&action(x))
                .ok_or_else(|| Error::Internal("coset action image outside quotient".into()))?;
            projection[x] = Some(image);
        }
        if table.order() * n.order() != ambient.order() {
            return Err(Error::Internal("quotient order mismatch".into()));
        }
        for &a in ambient.generators() {
            for &b in ambient.generators() {
                let lhs = projection[self.mul(a, b)].unwrap();
                let rhs = table.mul(projection[a].unwrap(), projection[b].unwrap());
                if lhs != rhs {
                    return Err(Error::Internal("projection is not a homomorphism".into()));
                }
            }
        }
        Ok(Quotient {
            table,
            coset,
            projection,
        })
    }

    /// `self / n`.
    pub fn quotient_by(&self, n: &Subgroup) -> Result<Quotient> {
        self.quotient(&self.whole(), n)
    }

    /// Cycle notation of an element.
    pub fn describe(&self, i: usize) -> String {
        self.element(i).format_cycles()
    }

    /// Generator list of a subgroup in cycle notation, e.g. `⟨(1 2), (1 2 3)⟩`.
    pub fn describe_subgroup(&self, s: &Subgroup) -> String {
        let gens: Vec<String> = s.generators().iter().map(|&g| self.describe(g)).collect();
        format!("<{}>", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(degree: usize, gens: &[&str]) -> GroupTable {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|g| Permutation::parse_cycles(g, degree).unwrap())
            .collect();
        GroupTable::close_generators(degree, &gens).unwrap()
    }

    fn elt(g: &GroupTable, text: &str) -> usize {
        g.index_of(&Permutation::parse_cycles(text, g.degree()).unwrap())
            .unwrap()
    }

    fn s3() -> GroupTable {
        table(3, &["(1 2)", "(1 2 3)"])
    }

    fn a4() -> GroupTable {
        table(4, &["(1 2 3)", "(1 2)(3 4)"])
    }

    fn q8() -> GroupTable {
        table(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])
    }

    /// Naive closure: multiply every element by every element until stable.
    fn naive_closure(g: &GroupTable, seed: &[usize]) -> ElementSet {
        let mut set =
            ElementSet::from_indices(g.order(), std::iter::once(0).chain(seed.iter().copied()));
        loop {
            let current: Vec<usize> = set.iter().collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    grew |= set.insert(g.mul(a, b));
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn close_generators_examples() {
        assert_eq!(s3().order(), 6);
        assert_eq!(GroupTable::close_generators(4, &[]).unwrap().order(), 1);
        assert_eq!(table(5, &["(1 2 3 4 5)", "(1 2)"]).order(), 120);
    }

    #[test]
    fn table_invariants() {
        let g = table(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert!(g.element(0).is_identity());
        for (i, p) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(p), Some(i));
            assert_eq!(g.mul(i, g.inv(i)), 0);
            assert_eq!(g.order() % g.element_order(i), 0);
        }
        for gen in g.generators() {
            assert!(g.index_of(gen).is_some());
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = table(5, &["(1 2 3 4 5)", "(1 2)"]);
        let b = table(5, &["(1 2 3 4 5)", "(1 2)"]);
        assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn order_bound_is_enforced() {
        let gens = vec![
            Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap(),
            Permutation::parse_cycles("(1 2)", 5).unwrap(),
        ];
        match GroupTable::close_generators_bounded(5, &gens, 100) {
            Err(Error::OrderBound { bound: 100 }) => {}
            other => panic!("expected order bound error, got {other:?}"),
        }
        assert!(GroupTable::close_generators_bounded(5, &gens, 120).is_ok());
        assert!(GroupTable::close_generators(0, &[]).is_err());
        assert!(GroupTable::close_generators(3, &gens).is_err());
    }

    #[test]
    fn subgroup_generated_examples() {
        let g = s3();
        assert!(g.subgroup_generated(&[0]).is_trivial());
        assert_eq!(g.subgroup_generated(&[elt(&g, "(1 2 3)")]).order(), 3);
        let a = a4();
        let seed = [elt(&a, "(1 2)(3 4)"), elt(&a, "(1 3)(2 4)")];
        let klein = a.subgroup_generated(&seed);
        assert_eq!(klein.order(), 4);
        assert_eq!(*klein.members(), naive_closure(&a, &seed));
    }

    #[test]
    fn extend_matches_naive_closure_on_s5() {
        let g = table(5, &["(1 2 3 4 5)", "(1 2)"]);
        for a in (0..g.order()).step_by(7) {
            for b in (0..g.order()).step_by(11) {
                let sub = g.subgroup_generated(&[a, b]);
                assert_eq!(*sub.members(), naive_closure(&g, &[a, b]));
                for x in sub.elements() {
                    assert!(sub.contains(g.inv(x)));
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let c3 = g.subgroup_generated(&[elt(&g, "(1 2 3)")]);
        assert_eq!(g.quotient_by(&c3).unwrap().table.order(), 2);

        let a = a4();
        let klein = a.subgroup_generated(&[elt(&a, "(1 2)(3 4)"), elt(&a, "(1 3)(2 4)")]);
        let q = a.quotient_by(&klein).unwrap();
        assert_eq!(q.table.order(), 3);
        assert_eq!(q.table.degree(), 3);
        for x in 0..a.order() {
            assert_eq!(q.projection[x] == Some(0), klein.contains(x));
            for y in 0..a.order() {
                let lhs = q.projection[a.mul(x, y)].unwrap();
                let rhs = q
                    .table
                    .mul(q.projection[x].unwrap(), q.projection[y].unwrap());
                assert_eq!(lhs, rhs);
            }
        }

        let q1 = a.quotient_by(&a.trivial()).unwrap();
        assert_eq!(q1.table.order(), 12);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = s3();
        let c2 = g.subgroup_generated(&[elt(&g, "(1 2)")]);
        assert!(matches!(g.quotient_by(&c2), Err(Error::Input(_))));
    }

    /// Oracle: the set of all commutators, closed naively.
    fn commutator_oracle(g: &GroupTable) -> ElementSet {
        let mut seed = Vec::new();
        for x in 0..g.order() {
            for y in 0..g.order() {
                let (px, py) = (g.element(x), g.element(y));
                seed.push(g.index_of(&px.commutator(py).unwrap()).unwrap());
            }
        }
        naive_closure(g, &seed)
    }

    #[test]
    fn commutator_subgroup_examples() {
        let c6 = table(6, &["(1 2 3 4 5 6)"]);
        assert!(c6.derived_subgroup(&c6.whole()).is_trivial());

        let g = s3();
        let d = g.derived_subgroup(&g.whole());
        assert_eq!(d.order(), 3);
        assert_eq!(*d.members(), commutator_oracle(&g));

        let a = a4();
        let d = a.derived_subgroup(&a.whole());
        assert_eq!(d.order(), 4);
        assert_eq!(*d.members(), commutator_oracle(&a));
        assert!(a.is_normal_in(&a.whole(), &d));
    }

    #[test]
    fn series_examples() {
        let c6 = table(6, &["(1 2 3 4 5 6)"]);
        let orders = |s: Vec<Subgroup>| s.iter().map(Subgroup::order).collect::<Vec<_>>();
        assert_eq!(orders(c6.derived_series(&c6.whole())), vec![6, 1]);
        let s4 = table(4, &["(1 2 3 4)", "(1 2)"]);
        let ds = s4.derived_series(&s4.whole());
        assert_eq!(orders(ds.clone()), vec![24, 12, 4, 1]);
        for term in &ds {
            assert!(s4.is_normal_in(&s4.whole(), term));
        }
        assert_eq!(orders(s3().lower_central_series(&s3().whole())), vec![6, 3]);
    }

    #[test]
    fn exponent_examples() {
        let g = s3();
        assert_eq!(g.exponent(&g.whole()), 6);
        let v4 = table(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(v4.exponent(&v4.whole()), 2);
        let q = q8();
        assert_eq!(q.order(), 8);
        assert_eq!(q.exponent(&q.whole()), 4);
        let c12 = table(12, &["(1 2 3 4 5 6 7 8 9 10 11 12)"]);
        assert_eq!(c12.exponent(&c12.whole()), 12);
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        assert_eq!(g.centralizer(&g.whole(), &g.trivial()).order(), 6);
        let a = a4();
        let klein = a.derived_subgroup(&a.whole());
        let c = a.centralizer(&a.whole(), &klein);
        assert_eq!(c, klein);
        let c3 = g.subgroup_generated(&[elt(&g, "(1 2 3)")]);
        let cm = g.centralizer_mod(&g.whole(), &c3, &g.trivial()).unwrap();
        assert_eq!(cm, c3);
        let c2 = g.subgroup_generated(&[elt(&g, "(1 2)")]);
        assert!(g.centralizer_mod(&g.whole(), &g.whole(), &c2).is_err());
        assert!(g.centralizer_mod(&g.whole(), &c2, &c3).is_err());
    }
}
