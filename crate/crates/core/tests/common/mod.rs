//! Slow, direct oracles used to cross-check the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use formationlab::arith::{is_prime, prime_divisors};
use formationlab::{GroupTable, Lattice, Permutation};

/// Members of the subgroup generated by `seed`: right-multiply by the seed
/// elements until nothing new appears.
pub fn naive_closure(g: &GroupTable, seed: &[usize]) -> BTreeSet<usize> {
    let identity = g.index_of(&Permutation::identity(g.degree())).unwrap();
    let mut set = BTreeSet::from([identity]);
    let mut queue = vec![identity];
    while let Some(a) = queue.pop() {
        for &s in seed {
            let b = g.mul(a, s);
            if set.insert(b) {
                queue.push(b);
            }
        }
    }
    set
}

/// Every subgroup, found by closing each known subgroup together with every
/// subset of size at most two of its complement until nothing new appears.
pub fn exhaustive_subgroups(g: &GroupTable) -> BTreeSet<Vec<usize>> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial: Vec<usize> = naive_closure(g, &[]).into_iter().collect();
    all.insert(trivial.clone());
    // Each frontier entry carries the seed that produced it.
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = vec![(trivial, vec![])];
    while let Some((members, seed)) = frontier.pop() {
        let inside: BTreeSet<usize> = members.iter().copied().collect();
        let outside: Vec<usize> = (0..g.order()).filter(|x| !inside.contains(x)).collect();
        let mut extras: Vec<Vec<usize>> = outside.iter().map(|&a| vec![a]).collect();
        for (i, &a) in outside.iter().enumerate() {
            for &b in &outside[i + 1..] {
                extras.push(vec![a, b]);
            }
        }
        for extra in extras {
            let mut next_seed = seed.clone();
            next_seed.extend(extra);
            let closed: Vec<usize> = naive_closure(g, &next_seed).into_iter().collect();
            if all.insert(closed.clone()) {
                frontier.push((closed, next_seed));
            }
        }
    }
    all
}

pub fn lattice_member_sets(lat: &Lattice) -> BTreeSet<Vec<usize>> {
    lat.subgroups()
        .iter()
        .map(|s| s.elements().collect())
        .collect()
}

/// `h` is P-subnormal in the top member: `h` is the top, or some subgroup of
/// prime index in the top contains `h` and is P-subnormal in its own lattice.
/// Containment and indices are read from member sets, not from lattice edges.
pub fn recursive_p_subnormal(lat: &Lattice, h: usize) -> bool {
    fn go(lat: &Lattice, ambient: usize, h: usize, memo: &mut HashMap<usize, bool>) -> bool {
        if ambient == h {
            return true;
        }
        if let Some(&v) = memo.get(&ambient) {
            return v;
        }
        let a = lat.get(ambient);
        let target = lat.get(h);
        let result = (0..lat.len()).any(|m| {
            let sub = lat.get(m);
            m != ambient
                && sub.is_subgroup_of(a)
                && target.is_subgroup_of(sub)
                && is_prime(a.order() / sub.order())
                && go(lat, m, h, memo)
        });
        memo.insert(ambient, result);
        result
    }
    go(lat, lat.top_index(), h, &mut HashMap::new())
}

/// Sylow tower of supersoluble type by literal recursion: the Sylow subgroup
/// for the largest prime is normal and the quotient by it has the property.
pub fn recursive_sylow_tower(g: &GroupTable) -> bool {
    let Some(&p) = prime_divisors(g.order()).last() else {
        return true;
    };
    let lat = Lattice::build(g).unwrap();
    let sylow = lat.sylow_subgroup(p);
    if !g.is_normal_in(&g.whole(), &sylow) {
        return false;
    }
    recursive_sylow_tower(&g.quotient_by(&sylow).unwrap().table)
}

/// Supersolubility by literal recursion: some normal subgroup of prime order
/// exists and the quotient by it is supersoluble.
pub fn recursive_supersoluble(g: &GroupTable) -> bool {
    if g.order() == 1 {
        return true;
    }
    let lat = Lattice::build(g).unwrap();
    lat.normal_subgroups().into_iter().any(|n| {
        let n = lat.get(n);
        is_prime(n.order()) && recursive_supersoluble(&g.quotient_by(n).unwrap().table)
    })
}
