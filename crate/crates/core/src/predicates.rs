//! Membership tests for the auxiliary group classes: abelian, cyclic,
//! primary, soluble, nilpotent, supersoluble, Sylow tower of supersoluble
//! type, and the local classes `f(p)` of soluble groups with exponent
//! dividing `p - 1`.
//!
//! Functions taking a [`Lattice`] answer for its top member; functions
//! taking a table and a subgroup answer for that subgroup.

use std::collections::VecDeque;

use crate::arith::{is_prime, prime_divisors, prime_power_base};
use crate::group::{GroupTable, Subgroup};
use crate::lattice::{ChiefFactor, Lattice};

pub fn is_abelian(g: &GroupTable, h: &Subgroup) -> bool {
    let gens = h.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn is_cyclic(g: &GroupTable, h: &Subgroup) -> bool {
    h.elements().any(|x| g.element_order(x) == h.order())
}

/// Order is `p^k` with `k >= 1`; the trivial subgroup is not primary.
pub fn is_primary(h: &Subgroup) -> bool {
    prime_power_base(h.order()).is_some()
}

pub fn is_soluble(g: &GroupTable, h: &Subgroup) -> bool {
    g.derived_series(h).last().is_some_and(Subgroup::is_trivial)
}

pub fn is_nilpotent(g: &GroupTable, h: &Subgroup) -> bool {
    g.lower_central_series(h)
        .last()
        .is_some_and(Subgroup::is_trivial)
}

/// Nilpotency as "every Sylow subgroup is normal".
pub fn is_nilpotent_by_sylow(lat: &Lattice) -> bool {
    prime_divisors(lat.top().order()).into_iter().all(|p| {
        let sylow = lat.sylow_subgroup(p);
        lat.table().is_normal_in(lat.top(), &sylow)
    })
}

/// Supersolubility as reachability from the trivial subgroup to the top
/// along prime-index steps between normal members.
pub fn is_supersoluble(lat: &Lattice) -> bool {
    let top = lat.top_index();
    let mut seen = vec![false; lat.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(a) = queue.pop_front() {
        if a == top {
            return true;
        }
        for &b in lat.prime_index_overgroups(a) {
            if lat.is_normal(b) && !std::mem::replace(&mut seen[b], true) {
                queue.push_back(b);
            }
        }
    }
    false
}

/// First chief factor whose order is not prime, if any.
pub fn non_cyclic_chief_factor(lat: &Lattice) -> Option<ChiefFactor> {
    lat.chief_series().into_iter().find(|f| !is_prime(f.order))
}

/// Supersolubility as "every chief factor has prime order".
pub fn is_supersoluble_by_chief(lat: &Lattice) -> bool {
    non_cyclic_chief_factor(lat).is_none()
}

/// The prime at which the Sylow tower of supersoluble type breaks, if it
/// does.
///
/// Walking the primes downward, `N` collects the Sylow subgroups so far;
/// the tower continues at `p` iff `N·P` is normal, i.e. the Sylow
/// `p`-subgroup of `G/N` is normal there.
pub fn sylow_tower_failure(lat: &Lattice) -> Option<usize> {
    let g = lat.table();
    let mut lower = lat.trivial().clone();
    for p in prime_divisors(lat.top().order()).into_iter().rev() {
        let sylow = lat.sylow_subgroup(p);
        let next = g.extend(&lower, sylow.generators());
        if next.order() != lower.order() * sylow.order() || !g.is_normal_in(lat.top(), &next) {
            return Some(p);
        }
        lower = next;
    }
    None
}

pub fn has_sylow_tower_sst(lat: &Lattice) -> bool {
    sylow_tower_failure(lat).is_none()
}

/// `h ∈ f(p)`: soluble with exponent dividing `p - 1`.
pub fn in_f_p_subgroup(g: &GroupTable, h: &Subgroup, p: usize) -> bool {
    is_soluble(g, h) && (p - 1).is_multiple_of(g.exponent(h))
}

pub fn in_f_p(g: &GroupTable, p: usize) -> bool {
    in_f_p_subgroup(g, &g.whole(), p)
}
