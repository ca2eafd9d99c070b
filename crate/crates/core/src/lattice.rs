//! The lattice of all subgroups of a finite group.
//!
//! Subgroups are found by cyclic extension: starting from the trivial
//! subgroup, every known subgroup `S` is extended by one element `g` outside
//! it, and `⟨S, g⟩` is kept if its member set is new. Every subgroup is
//! reached this way, since it can be built from the trivial subgroup by
//! adding its own elements one at a time.
//!
//! Every query is relative to the lattice's top member. A lattice restricted
//! to a member `H` (see [`Lattice::restrict`]) is the subgroup lattice of `H`.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::arith::{is_prime, p_part, prime_divisors};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

pub const DEFAULT_SUBGROUP_BOUND: usize = 1_000_000;

pub struct Lattice<'g> {
    table: &'g GroupTable,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElementSet, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    normal: OnceLock<Vec<bool>>,
    reaches_top: OnceLock<Vec<bool>>,
}

/// A factor `upper / lower` of a chief series.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub order: usize,
    pub primes: Vec<usize>,
}

impl<'g> Lattice<'g> {
    pub fn build(table: &'g GroupTable) -> Result<Self> {
        Self::build_bounded(table, DEFAULT_SUBGROUP_BOUND)
    }

    pub fn build_bounded(table: &'g GroupTable, bound: usize) -> Result<Self> {
        let n = table.order();
        let mut subgroups = vec![table.trivial()];
        let mut lookup: HashMap<ElementSet, usize> =
            HashMap::from([(table.trivial().members().clone(), 0)]);
        let mut next = 0;
        while next < subgroups.len() {
            let s = subgroups[next].clone();
            next += 1;
            let mut covered = s.members().clone();
            for g in 0..n {
                if covered.contains(g) {
                    continue;
                }
                // ⟨S, g⟩ = ⟨S, cg⟩ = ⟨S, gc⟩ for c in S.
                for c in s.elements() {
                    covered.insert(table.mul(c, g));
                    covered.insert(table.mul(g, c));
                }
                let t = table.extend(&s, &[g]);
                if lookup.contains_key(t.members()) {
                    continue;
                }
                if subgroups.len() >= bound {
                    return Err(Error::SubgroupBound { bound });
                }
                lookup.insert(t.members().clone(), subgroups.len());
                subgroups.push(t);
            }
        }
        subgroups.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        Ok(Self::from_sorted(table, subgroups))
    }

    fn from_sorted(table: &'g GroupTable, subgroups: Vec<Subgroup>) -> Self {
        let lookup: HashMap<ElementSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        let mut by_order: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, s) in subgroups.iter().enumerate() {
            by_order.entry(s.order()).or_default().push(i);
        }
        let top_order = subgroups.last().map_or(1, Subgroup::order);
        let mut up = vec![Vec::new(); subgroups.len()];
        let mut down = vec![Vec::new(); subgroups.len()];
        for (a, sa) in subgroups.iter().enumerate() {
            for p in prime_divisors(top_order / sa.order()) {
                let Some(candidates) = by_order.get(&(sa.order() * p)) else {
                    continue;
                };
                for &b in candidates {
                    if sa.is_subgroup_of(&subgroups[b]) {
                        up[a].push(b);
                        down[b].push(a);
                    }
                }
            }
        }
        Lattice {
            table,
            subgroups,
            lookup,
            up,
            down,
            normal: OnceLock::new(),
            reaches_top: OnceLock::new(),
        }
    }

    /// The lattice of the member `h` (all members contained in it).
    pub fn restrict(&self, h: usize) -> Lattice<'g> {
        let top = &self.subgroups[h];
        let kept: Vec<Subgroup> = self
            .subgroups
            .iter()
            .filter(|s| s.is_subgroup_of(top))
            .cloned()
            .collect();
        Self::from_sorted(self.table, kept)
    }

    pub fn table(&self) -> &'g GroupTable {
        self.table
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// All members, sorted by order and then by member list.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn top_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn top(&self) -> &Subgroup {
        &self.subgroups[self.top_index()]
    }

    pub fn trivial(&self) -> &Subgroup {
        &self.subgroups[0]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.lookup.get(s.members()).copied()
    }

    pub fn index_of_members(&self, members: &ElementSet) -> Option<usize> {
        self.lookup.get(members).copied()
    }

    /// Lattice index of the member that `s` must be; panics if absent.
    fn member(&self, s: &Subgroup) -> usize {
        self.index_of(s).expect("subgroup is not a lattice member")
    }

    pub fn is_contained(&self, a: usize, b: usize) -> bool {
        self.subgroups[a].is_subgroup_of(&self.subgroups[b])
    }

    /// Members `b` with `a ⊂ b` and `|b : a|` prime.
    pub fn prime_index_overgroups(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn prime_index_subgroups(&self, b: usize) -> &[usize] {
        &self.down[b]
    }

    pub fn prime_index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    fn normal_flags(&self) -> &[bool] {
        self.normal.get_or_init(|| {
            let top = self.top();
            self.subgroups
                .iter()
                .map(|s| self.table.is_normal_in(top, s))
                .collect()
        })
    }

    /// Whether member `i` is normal in the top member.
    pub fn is_normal(&self, i: usize) -> bool {
        self.normal_flags()[i]
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }

    /// Proper members not contained in any other proper member.
    pub fn maximal_subgroups(&self) -> Vec<usize> {
        let top = self.top_index();
        (0..top)
            .filter(|&i| {
                (i + 1..top).all(|j| {
                    self.subgroups[j].order() == self.subgroups[i].order()
                        || !self.is_contained(i, j)
                })
            })
            .collect()
    }

    /// Nontrivial normal members containing no smaller nontrivial normal
    /// member.
    pub fn minimal_normal_subgroups(&self) -> Vec<usize> {
        let normals: Vec<usize> = self
            .normal_subgroups()
            .into_iter()
            .filter(|&i| i != 0)
            .collect();
        normals
            .iter()
            .copied()
            .filter(|&i| normals.iter().all(|&j| j == i || !self.is_contained(j, i)))
            .collect()
    }

    /// Intersection of the maximal subgroups; the whole group if there are
    /// none.
    pub fn frattini(&self) -> Subgroup {
        let members = self
            .maximal_subgroups()
            .into_iter()
            .fold(self.top().members().clone(), |acc, m| {
                acc.intersection(self.subgroups[m].members())
            });
        self.subgroups[self
            .index_of_members(&members)
            .expect("intersection of subgroups")]
        .clone()
    }

    /// First member in lattice order whose order is the `p`-part of the top
    /// order; the trivial subgroup when `p` does not divide it.
    pub fn sylow_subgroup(&self, p: usize) -> Subgroup {
        let target = p_part(self.top().order(), p);
        self.subgroups
            .iter()
            .find(|s| s.order() == target)
            .expect("Sylow subgroups exist")
            .clone()
    }

    /// Largest normal subgroup whose order has prime divisors only in `pi`.
    pub fn o_pi(&self, pi: &[usize]) -> Subgroup {
        let mut seed = Vec::new();
        for i in self.normal_subgroups() {
            let s = &self.subgroups[i];
            if prime_divisors(s.order()).iter().all(|p| pi.contains(p)) {
                seed.extend_from_slice(s.generators());
            }
        }
        let join = self.table.subgroup_generated(&seed);
        self.subgroups[self.member(&join)].clone()
    }

    /// `O_{p'}(G)`.
    pub fn o_pprime(&self, p: usize) -> Subgroup {
        let others: Vec<usize> = prime_divisors(self.top().order())
            .into_iter()
            .filter(|&q| q != p)
            .collect();
        self.o_pi(&others)
    }

    /// `O_{p',p}(G)`: the preimage of `O_p(G / O_{p'}(G))`.
    pub fn o_pprime_p(&self, p: usize) -> Result<Subgroup> {
        let lower = self.o_pprime(p);
        let quotient = self.table.quotient(self.top(), &lower)?;
        let q_lattice = Lattice::build(&quotient.table)?;
        let op = q_lattice.o_pi(&[p]);
        let pre = quotient.preimage(self.table, &op);
        Ok(self.subgroups[self.member(&pre)].clone())
    }

    /// One chief series, picking at each step the least normal member in
    /// lattice order that strictly contains the previous term.
    pub fn chief_series(&self) -> Vec<ChiefFactor> {
        let normals = self.normal_subgroups();
        let mut lower = 0;
        let mut factors = Vec::new();
        while lower != self.top_index() {
            let upper = normals
                .iter()
                .copied()
                .find(|&j| {
                    self.subgroups[j].order() > self.subgroups[lower].order()
                        && self.is_contained(lower, j)
                })
                .expect("the top member is normal");
            let order = self.subgroups[upper].order() / self.subgroups[lower].order();
            factors.push(ChiefFactor {
                lower: self.subgroups[lower].clone(),
                upper: self.subgroups[upper].clone(),
                order,
                primes: prime_divisors(order),
            });
            lower = upper;
        }
        factors
    }

    fn reaches_top_flags(&self) -> &[bool] {
        self.reaches_top.get_or_init(|| {
            let mut seen = vec![false; self.len()];
            let top = self.top_index();
            seen[top] = true;
            let mut queue = VecDeque::from([top]);
            while let Some(b) = queue.pop_front() {
                for &a in &self.down[b] {
                    if !std::mem::replace(&mut seen[a], true) {
                        queue.push_back(a);
                    }
                }
            }
            seen
        })
    }

    /// Whether the top member is reachable from member `from` along
    /// prime-index steps.
    pub fn p_reachable(&self, from: usize) -> bool {
        self.reaches_top_flags()[from]
    }

    /// A chain `from = H₀ ⊂ H₁ ⊂ … ⊂ Hₙ = top` with prime indices, found by
    /// breadth-first search, or `None`.
    pub fn prime_index_chain(&self, from: usize) -> Option<Vec<usize>> {
        let top = self.top_index();
        let mut parent: Vec<Option<usize>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            if a == top {
                let mut chain = vec![top];
                let mut cur = top;
                while let Some(prev) = parent[cur] {
                    chain.push(prev);
                    cur = prev;
                }
                chain.reverse();
                return Some(chain);
            }
            for &b in &self.up[a] {
                if !std::mem::replace(&mut seen[b], true) {
                    parent[b] = Some(a);
                    queue.push_back(b);
                }
            }
        }
        None
    }

    /// Checks the structural invariants: trivial and top present, no
    /// duplicates, sorted, and every prime-index edge is a maximal
    /// inclusion with a prime index.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("lattice: {m}")));
        if !self.subgroups[0].is_trivial() {
            return fail("first member is not trivial");
        }
        if self.lookup.len() != self.len() {
            return fail("duplicate members");
        }
        for w in self.subgroups.windows(2) {
            if (w[0].order(), w[0].members()) >= (w[1].order(), w[1].members()) {
                return fail("members are not sorted");
            }
        }
        for (a, b) in self.prime_index_edges() {
            let (sa, sb) = (&self.subgroups[a], &self.subgroups[b]);
            if !sa.is_subgroup_of(sb) || !is_prime(sb.order() / sa.order()) {
                return fail("bad prime-index edge");
            }
            let between = self.subgroups.iter().any(|s| {
                s.order() > sa.order()
                    && s.order() < sb.order()
                    && sa.is_subgroup_of(s)
                    && s.is_subgroup_of(sb)
            });
            if between {
                return fail("prime-index edge with an intermediate subgroup");
            }
        }
        Ok(())
    }
}
