//! The four equivalent membership conditions and the word iteration behind
//! one of them.
//!
//! * [`condition_x`]: every cyclic primary subgroup is ℙ-subnormal (reaches
//!   the whole group through a chain of prime indices).
//! * [`condition_b_subgroups`]: every subgroup with nilpotent derived
//!   subgroup is supersoluble.
//! * [`condition_b_law`]: for every pair `x, y` the words `ü₁ = [x, y]`,
//!   `üₖ₊₁ = üₖ^(−k) [üₖ, y]` eventually reach the identity.
//! * [`condition_lf_f`]: for every chief factor `H/K` and prime `p` dividing
//!   its order, `G / C_G(H/K)` is soluble with exponent dividing `p − 1`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arith::prime_power_base;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::lattice::Lattice;
use crate::perm::Permutation;
use crate::predicates::{
    in_f_p, is_nilpotent, is_supersoluble, non_cyclic_chief_factor, sylow_tower_failure,
};

/// A predicate value with a witness whenever it is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness.into()),
        }
    }
}

/// Order in which products are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `ab` applies `a` first (the library-wide convention).
    LeftToRight,
    /// `ab` applies `b` first.
    RightToLeft,
}

/// One step of the word iteration: `value = üₖ`, `step = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandlState {
    pub value: Permutation,
    pub step: u64,
    pub y: Permutation,
}

impl BrandlState {
    /// `ü₁ = [x, y]`.
    pub fn start(x: &Permutation, y: &Permutation) -> Result<Self> {
        Ok(BrandlState {
            value: x.commutator(y)?,
            step: 1,
            y: y.clone(),
        })
    }

    /// `üₖ₊₁ = üₖ^(−k) [üₖ, y]`, applied from `k = 1` on.
    pub fn next(&self) -> Result<Self> {
        let power = self.value.power(-(self.step as i64));
        let comm = self.value.commutator(&self.y)?;
        Ok(BrandlState {
            value: power.compose(&comm)?,
            step: self.step + 1,
            y: self.y.clone(),
        })
    }
}

pub fn brandl_next(s: &BrandlState) -> Result<BrandlState> {
    s.next()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandlTrace {
    pub terminated: bool,
    /// `ü₁, ü₂, …` up to the identity or up to the first repeated state.
    pub steps: Vec<Permutation>,
    /// Least `k` with `üₖ = 1`.
    pub k_final: Option<u64>,
    pub cycle_detected: bool,
    /// Length of the detected cycle of states.
    pub cycle_length: Option<u64>,
}

/// Iterates the words for `(x, y)` until the identity appears or a state
/// `(üₖ, k mod exponent)` repeats. Since `ü^(−k)` depends on `k` only modulo
/// the order of `ü`, which divides `exponent`, such a state determines the
/// rest of the sequence, so a repeat means the identity is never reached.
///
/// `group_order * exponent` bounds the number of distinct states; exceeding
/// it is an internal error.
pub fn brandl_terminates(
    x: &Permutation,
    y: &Permutation,
    exponent: u64,
    group_order: u64,
) -> Result<BrandlTrace> {
    if exponent == 0 {
        return Err(Error::Input("exponent must be positive".into()));
    }
    let cap = group_order.saturating_mul(exponent);
    let mut state = BrandlState::start(x, y)?;
    let mut seen: HashMap<(Permutation, u64), u64> = HashMap::new();
    let mut steps = Vec::new();
    loop {
        steps.push(state.value.clone());
        if state.value.is_identity() {
            return Ok(BrandlTrace {
                terminated: true,
                steps,
                k_final: Some(state.step),
                cycle_detected: false,
                cycle_length: None,
            });
        }
        let key = (state.value.clone(), state.step % exponent);
        if let Some(first) = seen.insert(key, state.step) {
            steps.pop();
            return Ok(BrandlTrace {
                terminated: false,
                steps,
                k_final: None,
                cycle_detected: true,
                cycle_length: Some(state.step - first),
            });
        }
        if state.step > cap {
            return Err(Error::Internal(format!(
                "word iteration exceeded {cap} steps without repeating a state"
            )));
        }
        state = state.next()?;
    }
}

/// Table-driven word iteration over all pairs of a group.
///
/// States `(ü, k mod e)` are shared between all `x` with the same `y`, so
/// every state's outcome is computed once per `y`.
pub struct BrandlSweep<'g> {
    table: &'g GroupTable,
    exponent: usize,
    convention: Convention,
    power_offsets: Vec<usize>,
    powers: Vec<u32>,
}

const UNKNOWN: u8 = 0;
const TERMINATES: u8 = 1;
const CYCLES: u8 = 2;

impl<'g> BrandlSweep<'g> {
    pub fn new(table: &'g GroupTable, convention: Convention) -> Self {
        let exponent = table.exponent(&table.whole());
        let mut power_offsets = Vec::with_capacity(table.order() + 1);
        let mut powers = Vec::new();
        for a in 0..table.order() {
            power_offsets.push(powers.len());
            let mut cur = 0;
            for _ in 0..table.element_order(a) {
                powers.push(cur as u32);
                cur = table.mul(cur, a);
            }
        }
        power_offsets.push(powers.len());
        BrandlSweep {
            table,
            exponent,
            convention,
            power_offsets,
            powers,
        }
    }

    #[inline]
    fn op(&self, a: usize, b: usize) -> usize {
        match self.convention {
            Convention::LeftToRight => self.table.mul(a, b),
            Convention::RightToLeft => self.table.mul(b, a),
        }
    }

    #[inline]
    fn commutator(&self, a: usize, b: usize) -> usize {
        let t = self.table;
        self.op(self.op(self.op(t.inv(a), t.inv(b)), a), b)
    }

    #[inline]
    fn power_neg(&self, a: usize, k: usize) -> usize {
        let order = self.table.element_order(a);
        let e = (order - k % order) % order;
        self.powers[self.power_offsets[a] + e] as usize
    }

    #[inline]
    fn step(&self, value: usize, k: usize, y: usize) -> usize {
        self.op(self.power_neg(value, k), self.commutator(value, y))
    }

    /// The sequence for one pair, as element indices: `Ok(k)` when `üₖ = 1`,
    /// `Err(values)` when a state repeats.
    pub fn trace(&self, x: usize, y: usize) -> std::result::Result<u64, Vec<usize>> {
        let mut seen = std::collections::HashSet::new();
        let mut values = Vec::new();
        let mut value = self.commutator(x, y);
        let mut k = 1usize;
        loop {
            if value == 0 {
                return Ok(k as u64);
            }
            if !seen.insert((value, k % self.exponent)) {
                return Err(values);
            }
            values.push(value);
            value = self.step(value, k, y);
            k += 1;
        }
    }

    /// Lexicographically least pair `(x, y)` whose sequence never reaches
    /// the identity.
    pub fn first_failing_pair(&self) -> Option<(usize, usize)> {
        let n = self.table.order();
        let e = self.exponent;
        let mut outcome = vec![UNKNOWN; n * e];
        let mut on_path = vec![u32::MAX; n * e];
        let mut path = Vec::new();
        let mut failing: Vec<Option<usize>> = vec![None; n];
        for (y, least) in failing.iter_mut().enumerate() {
            outcome.fill(UNKNOWN);
            for x in 0..n {
                path.clear();
                let mut value = self.commutator(x, y);
                let mut k = 1usize;
                let result = loop {
                    if value == 0 {
                        break TERMINATES;
                    }
                    let state = value * e + k % e;
                    match outcome[state] {
                        UNKNOWN => {}
                        known => break known,
                    }
                    if on_path[state] == x as u32 {
                        break CYCLES;
                    }
                    on_path[state] = x as u32;
                    path.push(state);
                    value = self.step(value, k, y);
                    k += 1;
                };
                for &s in &path {
                    outcome[s] = result;
                    on_path[s] = u32::MAX;
                }
                if result == CYCLES {
                    *least = Some(x);
                    break;
                }
            }
        }
        // failing[y] is the least failing x for that y.
        failing
            .iter()
            .enumerate()
            .filter_map(|(y, x)| x.map(|x| (x, y)))
            .min()
    }
}

/// Every pair's sequence reaches the identity.
pub fn condition_b_law(table: &GroupTable) -> Verdict {
    condition_b_law_with(table, Convention::LeftToRight)
}

pub fn condition_b_law_with(table: &GroupTable, convention: Convention) -> Verdict {
    let sweep = BrandlSweep::new(table, convention);
    match sweep.first_failing_pair() {
        None => Verdict::yes(),
        Some((x, y)) => Verdict::no(format!(
            "x = {}, y = {} never reach the identity",
            table.describe(x),
            table.describe(y)
        )),
    }
}

/// A witness that a subgroup is ℙ-subnormal: lattice indices
/// `H = H₀ ⊂ … ⊂ Hₙ = G` and the prime indices `|Hᵢ : Hᵢ₋₁|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIndexChain {
    pub members: Vec<usize>,
    pub indices: Vec<usize>,
}

pub fn is_p_subnormal(lat: &Lattice, h: usize) -> bool {
    lat.p_reachable(h)
}

pub fn p_subnormal_chain(lat: &Lattice, h: usize) -> Option<PrimeIndexChain> {
    let members = lat.prime_index_chain(h)?;
    let indices = members
        .windows(2)
        .map(|w| lat.get(w[1]).order() / lat.get(w[0]).order())
        .collect();
    Some(PrimeIndexChain { members, indices })
}

/// Every nontrivial cyclic subgroup of prime-power order is ℙ-subnormal.
pub fn condition_x(lat: &Lattice) -> Verdict {
    let g = lat.table();
    let mut checked = vec![false; lat.len()];
    for x in lat.top().elements() {
        if prime_power_base(g.element_order(x)).is_none() {
            continue;
        }
        let cyclic = g.subgroup_generated(&[x]);
        let i = lat
            .index_of(&cyclic)
            .expect("cyclic subgroup is a lattice member");
        if std::mem::replace(&mut checked[i], true) {
            continue;
        }
        if !is_p_subnormal(lat, i) {
            return Verdict::no(format!(
                "<{}> of order {} is not P-subnormal",
                g.describe(x),
                cyclic.order()
            ));
        }
    }
    Verdict::yes()
}

/// Every subgroup whose derived subgroup is nilpotent is supersoluble.
pub fn condition_b_subgroups(lat: &Lattice) -> Verdict {
    let g = lat.table();
    for (i, h) in lat.subgroups().iter().enumerate() {
        let derived = g.derived_subgroup(h);
        if is_nilpotent(g, &derived) && !is_supersoluble(&lat.restrict(i)) {
            return Verdict::no(format!(
                "{} of order {} has nilpotent derived subgroup but is not supersoluble",
                g.describe_subgroup(h),
                h.order()
            ));
        }
    }
    Verdict::yes()
}

/// Membership in the local formation: for every chief factor `H/K` and
/// every prime `p` dividing `|H/K|`, `G / C_G(H/K)` lies in `f(p)`.
pub fn condition_lf_f(lat: &Lattice) -> Result<Verdict> {
    let g = lat.table();
    let top = lat.top();
    for factor in lat.chief_series() {
        let c = g.centralizer_mod(top, &factor.upper, &factor.lower)?;
        let quotient = g.quotient(top, &c)?;
        for &p in &factor.primes {
            if !in_f_p(&quotient.table, p) {
                let q = &quotient.table;
                return Ok(Verdict::no(format!(
                    "chief factor {} / {} of order {}: G/C has order {} and exponent {}, not in f({p})",
                    g.describe_subgroup(&factor.upper),
                    g.describe_subgroup(&factor.lower),
                    factor.order,
                    q.order(),
                    q.exponent(&q.whole()),
                )));
            }
        }
    }
    Ok(Verdict::yes())
}

pub fn supersoluble_verdict(lat: &Lattice) -> Verdict {
    if is_supersoluble(lat) {
        return Verdict::yes();
    }
    let g = lat.table();
    match non_cyclic_chief_factor(lat) {
        Some(f) => Verdict::no(format!(
            "chief factor {} / {} has order {}",
            g.describe_subgroup(&f.upper),
            g.describe_subgroup(&f.lower),
            f.order
        )),
        None => Verdict::no("no normal prime-index chain"),
    }
}

pub fn sylow_tower_verdict(lat: &Lattice) -> Verdict {
    match sylow_tower_failure(lat) {
        None => Verdict::yes(),
        Some(p) => Verdict::no(format!(
            "Sylow {p}-subgroup {} is not normal modulo the larger primes",
            lat.table().describe_subgroup(&lat.sylow_subgroup(p))
        )),
    }
}

/// Wall time spent on each predicate.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub lattice: Duration,
    pub supersoluble: Duration,
    pub sylow_tower: Duration,
    pub condition_x: Duration,
    pub condition_b_subgroups: Duration,
    pub condition_b_law: Duration,
    pub condition_lf_f: Duration,
}

/// All predicate values for one group.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub subgroup_count: usize,
    pub supersoluble: Verdict,
    pub sylow_tower: Verdict,
    pub condition_x: Verdict,
    pub condition_b_subgroups: Verdict,
    pub condition_b_law: Verdict,
    pub condition_lf_f: Verdict,
    #[serde(skip)]
    pub timings: Timings,
}

impl ClassReport {
    /// The four theorem predicates, in a fixed order.
    pub fn theorem_values(&self) -> [bool; 4] {
        [
            self.condition_x.holds,
            self.condition_b_subgroups.holds,
            self.condition_b_law.holds,
            self.condition_lf_f.holds,
        ]
    }

    pub fn theorem_agrees(&self) -> bool {
        let v = self.theorem_values();
        v.iter().all(|&b| b == v[0])
    }

    /// Violations of `U ⊆ X ⊆ D`.
    pub fn inclusion_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.supersoluble.holds && !self.condition_x.holds {
            out.push("U not in X");
        }
        if self.condition_x.holds && !self.sylow_tower.holds {
            out.push("X not in D");
        }
        out
    }
}

fn timed<T>(slot: &mut Duration, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot = start.elapsed();
    out
}

/// Builds the lattice once and evaluates every predicate.
pub fn classify(name: &str, table: &GroupTable) -> Result<ClassReport> {
    let mut t = Timings::default();
    let lat = timed(&mut t.lattice, || Lattice::build(table)).map_err(|e| e.in_group(name))?;
    let supersoluble = timed(&mut t.supersoluble, || supersoluble_verdict(&lat));
    let sylow_tower = timed(&mut t.sylow_tower, || sylow_tower_verdict(&lat));
    let condition_x = timed(&mut t.condition_x, || condition_x(&lat));
    let condition_b_subgroups = timed(&mut t.condition_b_subgroups, || condition_b_subgroups(&lat));
    let condition_b_law = timed(&mut t.condition_b_law, || condition_b_law(table));
    let condition_lf_f =
        timed(&mut t.condition_lf_f, || condition_lf_f(&lat)).map_err(|e| e.in_group(name))?;
    Ok(ClassReport {
        name: name.to_string(),
        degree: table.degree(),
        order: table.order(),
        subgroup_count: lat.len(),
        supersoluble,
        sylow_tower,
        condition_x,
        condition_b_subgroups,
        condition_b_law,
        condition_lf_f,
        timings: t,
    })
}
