//! Group constructions, the standard verification corpus and the group file
//! format.
//!
//! A group file is UTF-8 text. Lines starting with `#` are comments and
//! blank lines are ignored. The first other line is `degree N`, followed by
//! an optional `name STRING` and one `gen CYCLES` line per generator:
//!
//! ```text
//! # the symmetric group of degree 3
//! degree 3
//! name S3
//! gen (1 2)
//! gen (1 2 3)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::lattice::Lattice;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    NamedFamily,
    SnSubgroup,
    UserFile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub provenance: Provenance,
}

/// A 2×2 matrix over `F_p`, row-major, entries taken modulo `p`.
pub type Matrix2 = [[i64; 2]; 2];

impl GroupSpec {
    fn from_perms(
        name: String,
        degree: usize,
        gens: &[Permutation],
        provenance: Provenance,
    ) -> Self {
        GroupSpec {
            name,
            degree,
            generators: gens.iter().map(Permutation::format_cycles).collect(),
            provenance,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn parse_generators(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree))
            .collect::<Result<_>>()
            .map_err(|e| e.in_group(&self.name))
    }

    /// Enumerates the group, failing if its order exceeds `order_bound`.
    pub fn build(&self, order_bound: usize) -> Result<GroupTable> {
        let gens = self.parse_generators()?;
        GroupTable::close_generators_bounded(self.degree, &gens, order_bound)
            .map_err(|e| e.in_group(&self.name))
    }

    /// Group file text for this spec.
    pub fn to_text(&self) -> Result<String> {
        if self.name.contains(['\n', '\r']) {
            return Err(Error::Input("group name must be a single line".into()));
        }
        let mut out = String::new();
        writeln!(out, "degree {}", self.degree).unwrap();
        if !self.name.is_empty() {
            writeln!(out, "name {}", self.name).unwrap();
        }
        for g in &self.generators {
            writeln!(out, "gen {g}").unwrap();
        }
        Ok(out)
    }

    /// Parses group file text; `default_name` is used when there is no
    /// `name` line.
    pub fn from_text(text: &str, default_name: &str) -> Result<Self> {
        let line_err = |line: usize, message: String| Error::Line { line, message };
        let mut degree: Option<usize> = None;
        let mut name: Option<String> = None;
        let mut generators = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(char::is_whitespace)
                .map(|(k, r)| (k, r.trim()))
                .unwrap_or((line, ""));
            match (key, degree) {
                ("degree", None) => {
                    let d: usize = rest
                        .parse()
                        .map_err(|_| line_err(line_no, format!("invalid degree {rest:?}")))?;
                    if d == 0 {
                        return Err(line_err(line_no, "degree must be positive".into()));
                    }
                    degree = Some(d);
                }
                (_, None) => {
                    return Err(line_err(line_no, "expected \"degree N\" first".into()));
                }
                ("degree", Some(_)) => {
                    return Err(line_err(line_no, "repeated degree line".into()));
                }
                ("name", Some(_)) => {
                    if name.is_some() {
                        return Err(line_err(line_no, "repeated name line".into()));
                    }
                    if rest.is_empty() {
                        return Err(line_err(line_no, "empty name".into()));
                    }
                    name = Some(rest.to_string());
                }
                ("gen", Some(d)) => {
                    let perm = Permutation::parse_cycles(rest, d)
                        .map_err(|e| line_err(line_no, e.to_string()))?;
                    generators.push(perm.format_cycles());
                }
                (other, Some(_)) => {
                    return Err(line_err(line_no, format!("unknown keyword {other:?}")));
                }
            }
        }
        let degree = degree.ok_or_else(|| line_err(last_line, "missing degree line".into()))?;
        Ok(GroupSpec {
            name: name.unwrap_or_else(|| default_name.to_string()),
            degree,
            generators,
            provenance: Provenance::UserFile,
        })
    }
}

pub fn load_group(path: impl AsRef<Path>) -> Result<GroupSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    GroupSpec::from_text(&text, &stem).map_err(|e| e.in_file(path))
}

pub fn save_group(spec: &GroupSpec, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, spec.to_text()?)?;
    Ok(())
}

/// Every `*.grp` file in `dir`, in file-name order.
pub fn load_dir(dir: impl AsRef<Path>) -> Result<Vec<GroupSpec>> {
    let dir = dir.as_ref();
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::from(e).in_file(dir))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths.iter().map(load_group).collect()
}

fn cycle_text(points: impl IntoIterator<Item = usize>) -> String {
    let pts: Vec<String> = points.into_iter().map(|p| p.to_string()).collect();
    format!("({})", pts.join(" "))
}

fn named(name: String, degree: usize, generators: Vec<String>) -> GroupSpec {
    GroupSpec {
        name,
        degree,
        generators,
        provenance: Provenance::NamedFamily,
    }
}

/// `C_n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> Result<GroupSpec> {
    if n == 0 {
        return Err(Error::Input("cyclic(n) needs n >= 1".into()));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![cycle_text(1..=n)]
    };
    Ok(named(format!("C{n}"), n, gens))
}

/// The dihedral group of order `2n` acting on the `n` vertices of a polygon.
pub fn dihedral(n: usize) -> Result<GroupSpec> {
    if n < 3 {
        return Err(Error::Input("dihedral(n) needs n >= 3".into()));
    }
    let reflection: Vec<usize> = (1..=n).map(|i| n + 1 - i).collect();
    let reflection = Permutation::from_images(&reflection)?.format_cycles();
    Ok(named(
        format!("D{}", 2 * n),
        n,
        vec![cycle_text(1..=n), reflection],
    ))
}

pub fn symmetric(n: usize) -> Result<GroupSpec> {
    let gens = match n {
        0 => return Err(Error::Input("symmetric(n) needs n >= 1".into())),
        1 => vec![],
        2 => vec!["(1 2)".to_string()],
        _ => vec![cycle_text(1..=n), "(1 2)".to_string()],
    };
    Ok(named(format!("S{n}"), n, gens))
}

pub fn alternating(n: usize) -> Result<GroupSpec> {
    if n == 0 {
        return Err(Error::Input("alternating(n) needs n >= 1".into()));
    }
    let gens = (3..=n).map(|i| cycle_text([1, 2, i])).collect();
    Ok(named(format!("A{n}"), n, gens))
}

/// The generalized quaternion (dicyclic) group of order `4m`,
/// `⟨a, b | a^{2m} = 1, b² = a^m, b⁻¹ab = a⁻¹⟩`, in its regular action.
pub fn quaternion_generalized(m: usize) -> Result<GroupSpec> {
    if m == 0 {
        return Err(Error::Input(
            "quaternion_generalized(m) needs m >= 1".into(),
        ));
    }
    let n = 2 * m;
    // Element a^i b^s is point 1 + i + n*s.
    let point = |i: usize, s: usize| 1 + i % n + n * s;
    let mut right_a = vec![0; 2 * n];
    let mut right_b = vec![0; 2 * n];
    for s in 0..2 {
        for i in 0..n {
            // a^i b^s · a = a^{i ± 1} b^s
            right_a[point(i, s) - 1] = if s == 0 {
                point(i + 1, 0)
            } else {
                point(i + n - 1, 1)
            };
            // a^i b^s · b = a^i b^{s+1}, with b² = a^m
            right_b[point(i, s) - 1] = if s == 0 { point(i, 1) } else { point(i + m, 0) };
        }
    }
    let a = Permutation::from_images(&right_a)?;
    let b = Permutation::from_images(&right_b)?;
    Ok(GroupSpec::from_perms(
        format!("Q{}", 4 * m),
        2 * n,
        &[a, b],
        Provenance::NamedFamily,
    ))
}

/// `a × b` on the disjoint union of their point sets.
pub fn direct_product(a: &GroupSpec, b: &GroupSpec) -> Result<GroupSpec> {
    let degree = a.degree + b.degree;
    let lift = |spec: &GroupSpec, offset: usize| -> Result<Vec<Permutation>> {
        spec.parse_generators()?
            .iter()
            .map(|g| {
                let mut images: Vec<usize> = (1..=degree).collect();
                for p in 1..=spec.degree {
                    images[p + offset - 1] = g.image(p) + offset;
                }
                Permutation::from_images(&images)
            })
            .collect()
    };
    let mut gens = lift(a, 0)?;
    gens.extend(lift(b, a.degree)?);
    Ok(GroupSpec::from_perms(
        format!("{}x{}", a.name, b.name),
        degree,
        &gens,
        Provenance::NamedFamily,
    ))
}

fn reduce(m: &Matrix2, p: i64) -> Matrix2 {
    m.map(|row| row.map(|x| x.rem_euclid(p)))
}

fn mat_mul(a: &Matrix2, b: &Matrix2, p: i64) -> Matrix2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]).rem_euclid(p);
        }
    }
    out
}

/// Order of the subgroup of `GL₂(p)` generated by `matrices`.
pub fn matrix_group_order(p: usize, matrices: &[Matrix2]) -> usize {
    let p = p as i64;
    let gens: Vec<Matrix2> = matrices.iter().map(|m| reduce(m, p)).collect();
    let mut seen = std::collections::HashSet::from([[[1, 0], [0, 1]]]);
    let mut queue = vec![[[1, 0], [0, 1]]];
    while let Some(m) = queue.pop() {
        for g in &gens {
            let next = mat_mul(&m, g, p);
            if seen.insert(next) {
                queue.push(next);
            }
        }
    }
    seen.len()
}

/// `F_p² ⋊ ⟨matrices⟩` acting on the `p²` vectors: translations by the two
/// basis vectors together with the linear maps `v ↦ M v`. Vector `(u, v)` is
/// point `1 + u + p·v`.
pub fn affine_semidirect(p: usize, matrices: &[Matrix2]) -> Result<GroupSpec> {
    if !is_prime(p) {
        return Err(Error::Input(format!("affine_semidirect: {p} is not prime")));
    }
    if p * p > 10_000 {
        return Err(Error::Input(format!(
            "affine_semidirect: p = {p} is too large"
        )));
    }
    let pi = p as i64;
    let point = |u: i64, v: i64| 1 + u.rem_euclid(pi) as usize + p * v.rem_euclid(pi) as usize;
    let map = |f: &dyn Fn(i64, i64) -> (i64, i64)| -> Result<Permutation> {
        let mut images = vec![0; p * p];
        for v in 0..pi {
            for u in 0..pi {
                let (a, b) = f(u, v);
                images[point(u, v) - 1] = point(a, b);
            }
        }
        Permutation::from_images(&images)
    };
    let mut gens = vec![map(&|u, v| (u + 1, v))?, map(&|u, v| (u, v + 1))?];
    let mut labels = Vec::new();
    for m in matrices {
        let m = reduce(m, pi);
        let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).rem_euclid(pi);
        if det == 0 {
            return Err(Error::Input(format!(
                "affine_semidirect: singular matrix {m:?} mod {p}"
            )));
        }
        gens.push(map(&|u, v| {
            (m[0][0] * u + m[0][1] * v, m[1][0] * u + m[1][1] * v)
        })?);
        labels.push(format!("[{},{};{},{}]", m[0][0], m[0][1], m[1][0], m[1][1]));
    }
    Ok(GroupSpec::from_perms(
        format!("F{p}^2:<{}>", labels.join(",")),
        p * p,
        &gens,
        Provenance::NamedFamily,
    ))
}

/// Largest symmetric degree whose subgroups are enumerated without an
/// explicit opt-in.
pub const SN_DEFAULT_MAX: usize = 5;

/// One spec per subgroup of `S_n` (no isomorphism deduplication), in lattice
/// order. `n = 6` requires `allow_six`.
pub fn subgroups_of_symmetric(n: usize, allow_six: bool) -> Result<Vec<GroupSpec>> {
    if n == 0 || n > 6 || (n == 6 && !allow_six) {
        return Err(Error::Input(format!(
            "subgroups_of_symmetric: n = {n} is out of range (1..=5, or 6 when enabled)"
        )));
    }
    let sn = symmetric(n)?;
    let table = sn.build(usize::MAX)?;
    let lat = Lattice::build(&table)?;
    Ok(lat
        .subgroups()
        .iter()
        .enumerate()
        .map(|(i, s)| GroupSpec {
            name: format!("S{n}.sub{i:03}.o{}", s.order()),
            degree: n,
            generators: s.generators().iter().map(|&g| table.describe(g)).collect(),
            provenance: Provenance::SnSubgroup,
        })
        .collect())
}

/// Order-3 matrix `x ↦ [[0,−1],[1,−1]]` (companion of `x² + x + 1`).
pub const ORDER_THREE: Matrix2 = [[0, -1], [1, -1]];
/// Coordinate swap.
pub const SWAP: Matrix2 = [[0, 1], [1, 0]];

/// `C₅² ⋊ C₃`, order 75, with an irreducible action (3 ∤ 5 − 1).
pub fn affine_75() -> GroupSpec {
    affine_semidirect(5, &[ORDER_THREE])
        .unwrap()
        .with_name("F5^2:C3")
}

/// `C₅² ⋊ Q₈`, order 200, with `Q₈ ≤ SL₂(5)` acting irreducibly.
pub fn affine_200() -> GroupSpec {
    affine_semidirect(5, &[[[0, -1], [1, 0]], [[0, 2], [2, 0]]])
        .unwrap()
        .with_name("F5^2:Q8")
}

/// `C₇² ⋊ S₃`, order 294, with the faithful two-dimensional action of `S₃`.
pub fn affine_294() -> GroupSpec {
    affine_semidirect(7, &[ORDER_THREE, SWAP])
        .unwrap()
        .with_name("F7^2:S3")
}

/// Named families of order at most 300, including extra affine groups.
pub fn named_families() -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in (1..=12).chain([15, 16, 30, 64, 210]) {
        out.push(cyclic(n).unwrap());
    }
    for n in (3..=12).chain([15, 20, 30, 50, 75, 150]) {
        out.push(dihedral(n).unwrap());
    }
    for n in 1..=5 {
        out.push(symmetric(n).unwrap());
    }
    for n in 3..=5 {
        out.push(alternating(n).unwrap());
    }
    for m in (1..=8).chain([15]) {
        out.push(quaternion_generalized(m).unwrap());
    }
    let c = |n| cyclic(n).unwrap();
    let s = |n| symmetric(n).unwrap();
    let a = |n| alternating(n).unwrap();
    let dp = |x: &GroupSpec, y: &GroupSpec| direct_product(x, y).unwrap();
    out.push(dp(&c(2), &c(2)));
    out.push(dp(&dp(&c(2), &c(2)), &c(2)));
    out.push(dp(&dp(&dp(&c(2), &c(2)), &c(2)), &c(2)));
    out.push(dp(&c(3), &c(3)));
    out.push(dp(&c(5), &c(5)));
    out.push(dp(&s(3), &c(2)));
    out.push(dp(&s(3), &c(3)));
    out.push(dp(&s(3), &c(5)));
    out.push(dp(&s(3), &s(3)));
    out.push(dp(&a(4), &c(2)));
    out.push(dp(&a(4), &c(3)));
    out.push(dp(&s(4), &c(2)));
    out.push(dp(&s(4), &c(3)));
    out.push(dp(&a(5), &c(2)));
    out.push(dp(&dihedral(4).unwrap(), &c(3)));
    out.push(dp(&quaternion_generalized(2).unwrap(), &c(3)));
    out.push(dp(&dihedral(5).unwrap(), &s(3)));
    out.push(affine_semidirect(2, &[[[0, 1], [1, 1]]]).unwrap());
    out.push(affine_semidirect(5, &[[[2, 0], [0, 3]]]).unwrap());
    out.push(affine_semidirect(7, &[SWAP]).unwrap());
    out.push(affine_semidirect(7, &[ORDER_THREE]).unwrap());
    out
}

/// Small affine groups with irreducible actions that are kept out of the
/// standard corpus: `C₃² ⋊ C₄` (order 36) and `C₃² ⋊ Q₈` (order 72).
pub fn small_irreducible_affine() -> Vec<GroupSpec> {
    vec![
        affine_semidirect(3, &[[[0, -1], [1, 0]]]).unwrap(),
        affine_semidirect(3, &[[[0, -1], [1, 0]], [[1, 1], [1, -1]]]).unwrap(),
    ]
}

/// Subgroups of `S₄` and `S₅`, the named families, and the affine groups of
/// orders 75, 200 and 294.
pub fn standard_corpus() -> Vec<GroupSpec> {
    let mut out = subgroups_of_symmetric(4, false).unwrap();
    out.extend(subgroups_of_symmetric(5, false).unwrap());
    out.extend(named_families());
    out.push(affine_75());
    out.push(affine_200());
    out.push(affine_294());
    out
}

/// Only the abelian named families.
pub fn abelian_corpus() -> Vec<GroupSpec> {
    let c = |n| cyclic(n).unwrap();
    let dp = |x: &GroupSpec, y: &GroupSpec| direct_product(x, y).unwrap();
    let mut out: Vec<GroupSpec> = (1..=12).chain([16, 30, 64]).map(c).collect();
    out.push(dp(&c(2), &c(2)));
    out.push(dp(&dp(&c(2), &c(2)), &c(2)));
    out.push(dp(&c(3), &c(3)));
    out.push(dp(&c(4), &c(6)));
    out.push(dp(&c(5), &c(5)));
    out
}
