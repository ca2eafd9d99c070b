//! Closure properties of the class defined by [`condition_x`]: saturation,
//! subgroup closure, quotient closure and closure under subdirect products
//! of two quotients. Each check returns a description of every violation.

use crate::error::Result;
use crate::group::{GroupTable, Subgroup};
use crate::lattice::Lattice;
use crate::theorem::condition_x;

fn x_of_quotient(lat: &Lattice, n: &Subgroup) -> Result<bool> {
    let q = lat.table().quotient(lat.top(), n)?;
    Ok(condition_x(&Lattice::build(&q.table)?).holds)
}

/// `G/Φ(G)` is in the class iff `G` is.
pub fn saturation(lat: &Lattice) -> Result<Vec<String>> {
    let frattini = lat.frattini();
    let whole = condition_x(lat).holds;
    let quotient = x_of_quotient(lat, &frattini)?;
    if whole == quotient {
        return Ok(vec![]);
    }
    Ok(vec![format!(
        "X(G) = {whole} but X(G/Phi) = {quotient} with Phi = {}",
        lat.table().describe_subgroup(&frattini)
    )])
}

/// Every subgroup of a member is a member.
pub fn hereditary(lat: &Lattice) -> Vec<String> {
    if !condition_x(lat).holds {
        return vec![];
    }
    let g = lat.table();
    (0..lat.len())
        .filter(|&i| lat.is_contained(i, lat.top_index()))
        .filter(|&i| !condition_x(&lat.restrict(i)).holds)
        .map(|i| format!("subgroup {} is not in X", g.describe_subgroup(lat.get(i))))
        .collect()
}

/// Every quotient of a member is a member.
pub fn quotient_closure(lat: &Lattice) -> Result<Vec<String>> {
    if !condition_x(lat).holds {
        return Ok(vec![]);
    }
    let g = lat.table();
    let mut out = Vec::new();
    for n in lat.normal_subgroups() {
        let n = lat.get(n);
        if !n.is_trivial() && !x_of_quotient(lat, n)? {
            out.push(format!("G/{} is not in X", g.describe_subgroup(n)));
        }
    }
    Ok(out)
}

/// For distinct minimal normal `N₁, N₂` (so `N₁ ∩ N₂ = 1`), `G` embeds in
/// `G/N₁ × G/N₂`; membership of both quotients forces membership of `G`.
pub fn subdirect(lat: &Lattice) -> Result<Vec<String>> {
    let g = lat.table();
    let minimal = lat.minimal_normal_subgroups();
    if minimal.len() < 2 || condition_x(lat).holds {
        return Ok(vec![]);
    }
    let mut in_x = Vec::with_capacity(minimal.len());
    for &n in &minimal {
        in_x.push(x_of_quotient(lat, lat.get(n))?);
    }
    let mut out = Vec::new();
    for i in 0..minimal.len() {
        for j in i + 1..minimal.len() {
            if in_x[i] && in_x[j] {
                out.push(format!(
                    "G/{} and G/{} are in X but G is not",
                    g.describe_subgroup(lat.get(minimal[i])),
                    g.describe_subgroup(lat.get(minimal[j]))
                ));
            }
        }
    }
    Ok(out)
}

/// All four checks on the whole group.
pub fn check_closure_laws(table: &GroupTable) -> Result<Vec<String>> {
    let lat = Lattice::build(table)?;
    let mut out = saturation(&lat)?;
    out.extend(hereditary(&lat));
    out.extend(quotient_closure(&lat)?);
    out.extend(subdirect(&lat)?);
    Ok(out)
}
