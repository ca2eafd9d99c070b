//! Batch verification over a corpus, report writers, witness search and the
//! subgroup census.
//!
//! Reports are deterministic: rows follow corpus order whatever the worker
//! count, and wall-clock timings are only written on request.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::GroupSpec;
use crate::error::{Error, ErrorKind, Result};
use crate::group::DEFAULT_ORDER_BOUND;
use crate::lattice::Lattice;
use crate::theorem::{
    classify, condition_x, supersoluble_verdict, sylow_tower_verdict, ClassReport, Verdict,
};

pub const ORDER_BOUND_ENV: &str = "FORMATIONLAB_MAX_ORDER";

/// The order bound from `FORMATIONLAB_MAX_ORDER`, or the default.
pub fn order_bound_from_env() -> Result<usize> {
    match std::env::var(ORDER_BOUND_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Input(format!("{ORDER_BOUND_ENV}={v:?} is not a positive integer"))
        }),
        Err(_) => Ok(DEFAULT_ORDER_BOUND),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Mismatch,
    ResourceSkip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::ResourceSkip => "resource-skip",
        }
    }
}

/// One report line. `report` is absent exactly when the group was skipped.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationRow {
    pub name: String,
    pub degree: usize,
    pub status: Status,
    pub skip_reason: Option<String>,
    pub report: Option<ClassReport>,
    pub inclusion_violations: Vec<String>,
}

impl VerificationRow {
    pub fn order(&self) -> Option<usize> {
        self.report.as_ref().map(|r| r.order)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub order_bound: usize,
    /// Test hook: negate the word-law verdict of the group with this name.
    pub corrupt: Option<String>,
}

fn verify_one(spec: &GroupSpec, opts: &VerifyOptions) -> Result<VerificationRow> {
    let skip = |e: Error| VerificationRow {
        name: spec.name.clone(),
        degree: spec.degree,
        status: Status::ResourceSkip,
        skip_reason: Some(e.to_string()),
        report: None,
        inclusion_violations: vec![],
    };
    let table = match spec.build(opts.order_bound) {
        Ok(t) => t,
        Err(e) if e.kind() == ErrorKind::Resource => return Ok(skip(e)),
        Err(e) => return Err(e),
    };
    let mut report = match classify(&spec.name, &table) {
        Ok(r) => r,
        Err(e) if e.kind() == ErrorKind::Resource => return Ok(skip(e)),
        Err(e) => return Err(e),
    };
    if opts.corrupt.as_deref() == Some(spec.name.as_str()) {
        let law = &mut report.condition_b_law;
        *law = if law.holds {
            Verdict::no("corrupted by test hook")
        } else {
            Verdict::yes()
        };
    }
    let status = if report.theorem_agrees() {
        Status::Ok
    } else {
        Status::Mismatch
    };
    Ok(VerificationRow {
        name: spec.name.clone(),
        degree: spec.degree,
        status,
        skip_reason: None,
        inclusion_violations: report
            .inclusion_violations()
            .into_iter()
            .map(String::from)
            .collect(),
        report: Some(report),
    })
}

/// Classifies every spec on a worker pool; rows come back in input order.
pub fn verify(specs: &[GroupSpec], opts: &VerifyOptions) -> Result<Vec<VerificationRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| specs.par_iter().map(|s| verify_one(s, opts)).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub ok: usize,
    pub skipped: usize,
    pub mismatches: Vec<String>,
    pub inclusion_violations: Vec<String>,
}

impl Summary {
    pub fn of(rows: &[VerificationRow]) -> Self {
        let mut s = Summary {
            groups: rows.len(),
            ..Summary::default()
        };
        for r in rows {
            match r.status {
                Status::Ok => s.ok += 1,
                Status::Mismatch => s.mismatches.push(r.name.clone()),
                Status::ResourceSkip => s.skipped += 1,
            }
            for v in &r.inclusion_violations {
                s.inclusion_violations.push(format!("{}: {v}", r.name));
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "groups: {}  ok: {}  mismatches: {}  resource-skips: {}  inclusion violations: {}",
            self.groups,
            self.ok,
            self.mismatches.len(),
            self.skipped,
            self.inclusion_violations.len()
        )?;
        for m in &self.mismatches {
            writeln!(f, "MISMATCH {m}")?;
        }
        for v in &self.inclusion_violations {
            writeln!(f, "INCLUSION {v}")?;
        }
        Ok(())
    }
}

const PREDICATE_COLUMNS: [&str; 6] = ["U", "D", "X", "B_sub", "B_law", "LF_f"];

fn verdicts(r: &ClassReport) -> [&Verdict; 6] {
    [
        &r.supersoluble,
        &r.sylow_tower,
        &r.condition_x,
        &r.condition_b_subgroups,
        &r.condition_b_law,
        &r.condition_lf_f,
    ]
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// Tab-separated report with a header row. Predicate columns hold `1`/`0`,
/// followed by one witness column per predicate (`-` when it holds).
/// Timing columns (milliseconds) are appended only when `timings` is set.
pub fn write_tsv(rows: &[VerificationRow], mut w: impl Write, timings: bool) -> Result<()> {
    let mut header = vec!["name", "degree", "order", "subgroups", "status"];
    header.extend(PREDICATE_COLUMNS);
    let witness_cols: Vec<String> = PREDICATE_COLUMNS.iter().map(|c| format!("w_{c}")).collect();
    header.extend(witness_cols.iter().map(String::as_str));
    header.push("note");
    let timing_cols = [
        "t_lattice_ms",
        "t_U_ms",
        "t_D_ms",
        "t_X_ms",
        "t_B_sub_ms",
        "t_B_law_ms",
        "t_LF_f_ms",
    ];
    if timings {
        header.extend(timing_cols);
    }
    writeln!(w, "{}", header.join("\t"))?;

    for row in rows {
        let mut fields = vec![tsv_field(&row.name), row.degree.to_string()];
        match &row.report {
            Some(r) => {
                fields.push(r.order.to_string());
                fields.push(r.subgroup_count.to_string());
                fields.push(row.status.as_str().into());
                let vs = verdicts(r);
                fields.extend(
                    vs.iter()
                        .map(|v| if v.holds { "1" } else { "0" }.to_string()),
                );
                fields.extend(
                    vs.iter()
                        .map(|v| tsv_field(v.witness.as_deref().unwrap_or("-"))),
                );
                fields.push(if row.inclusion_violations.is_empty() {
                    "-".into()
                } else {
                    row.inclusion_violations.join("; ")
                });
                if timings {
                    let t = &r.timings;
                    let ds = [
                        t.lattice,
                        t.supersoluble,
                        t.sylow_tower,
                        t.condition_x,
                        t.condition_b_subgroups,
                        t.condition_b_law,
                        t.condition_lf_f,
                    ];
                    fields.extend(ds.iter().map(|d| format!("{:.3}", d.as_secs_f64() * 1e3)));
                }
            }
            None => {
                fields.extend(["-", "-"].map(String::from));
                fields.push(row.status.as_str().into());
                fields.extend(std::iter::repeat_n("-".to_string(), 12));
                fields.push(tsv_field(row.skip_reason.as_deref().unwrap_or("-")));
                if timings {
                    fields.extend(std::iter::repeat_n("-".to_string(), timing_cols.len()));
                }
            }
        }
        writeln!(w, "{}", fields.join("\t"))?;
    }
    Ok(())
}

pub fn tsv_string(rows: &[VerificationRow], timings: bool) -> String {
    let mut buf = Vec::new();
    write_tsv(rows, &mut buf, timings).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("report is UTF-8")
}

/// The classes the witness search distinguishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Class {
    U,
    X,
    D,
}

impl FromStr for Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(Class::U),
            "X" | "x" => Ok(Class::X),
            "D" | "d" => Ok(Class::D),
            _ => Err(Error::Input(format!(
                "unknown class {s:?}; expected U, X or D"
            ))),
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::U => "U",
            Class::X => "X",
            Class::D => "D",
        })
    }
}

pub fn class_verdict(lat: &Lattice, class: Class) -> Verdict {
    match class {
        Class::U => supersoluble_verdict(lat),
        Class::X => condition_x(lat),
        Class::D => sylow_tower_verdict(lat),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessHit {
    pub name: String,
    pub order: usize,
    pub degree: usize,
    /// Why the group fails the excluded class.
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSearch {
    pub in_class: Class,
    pub notin_class: Class,
    pub order_bound: usize,
    pub scanned: usize,
    pub skipped: usize,
    pub hit: Option<WitnessHit>,
}

/// The smallest-order group (ties broken by corpus position) lying in
/// `in_class` but not in `notin_class`.
pub fn find_witness(
    specs: &[GroupSpec],
    in_class: Class,
    notin_class: Class,
    order_bound: usize,
) -> Result<WitnessSearch> {
    let mut tables = Vec::new();
    let mut skipped = 0;
    for spec in specs {
        match spec.build(order_bound) {
            Ok(t) => tables.push((spec, t)),
            Err(e) if e.kind() == ErrorKind::Resource => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    tables.sort_by_key(|(_, t)| t.order());
    let mut scanned = 0;
    let mut hit = None;
    for (spec, table) in &tables {
        let lat = match Lattice::build(table) {
            Ok(l) => l,
            Err(e) if e.kind() == ErrorKind::Resource => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.in_group(&spec.name)),
        };
        scanned += 1;
        if !class_verdict(&lat, in_class).holds {
            continue;
        }
        let excluded = class_verdict(&lat, notin_class);
        if !excluded.holds {
            hit = Some(WitnessHit {
                name: spec.name.clone(),
                order: table.order(),
                degree: table.degree(),
                witness: excluded.witness.unwrap_or_default(),
            });
            break;
        }
    }
    Ok(WitnessSearch {
        in_class,
        notin_class,
        order_bound,
        scanned,
        skipped,
        hit,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCount {
    pub order: usize,
    pub subgroups: usize,
    pub normal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub order: usize,
    pub subgroups: usize,
    pub normal_subgroups: usize,
    pub by_order: Vec<OrderCount>,
    pub frattini: String,
    pub frattini_order: usize,
    pub minimal_normal: Vec<(String, usize)>,
}

pub fn census(lat: &Lattice) -> Census {
    let g = lat.table();
    let mut by_order: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (i, s) in lat.subgroups().iter().enumerate() {
        let e = by_order.entry(s.order()).or_default();
        e.0 += 1;
        e.1 += usize::from(lat.is_normal(i));
    }
    let frattini = lat.frattini();
    Census {
        order: lat.top().order(),
        subgroups: lat.len(),
        normal_subgroups: lat.normal_subgroups().len(),
        by_order: by_order
            .into_iter()
            .map(|(order, (subgroups, normal))| OrderCount {
                order,
                subgroups,
                normal,
            })
            .collect(),
        frattini: g.describe_subgroup(&frattini),
        frattini_order: frattini.order(),
        minimal_normal: lat
            .minimal_normal_subgroups()
            .into_iter()
            .map(|i| (g.describe_subgroup(lat.get(i)), lat.get(i).order()))
            .collect(),
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        writeln!(f, "subgroups {}", self.subgroups)?;
        writeln!(f, "normal subgroups {}", self.normal_subgroups)?;
        writeln!(f, "order\tsubgroups\tnormal")?;
        for c in &self.by_order {
            writeln!(f, "{}\t{}\t{}", c.order, c.subgroups, c.normal)?;
        }
        writeln!(
            f,
            "frattini {} (order {})",
            self.frattini, self.frattini_order
        )?;
        for (gens, order) in &self.minimal_normal {
            writeln!(f, "minimal normal {gens} (order {order})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn opts(jobs: usize) -> VerifyOptions {
        VerifyOptions {
            jobs,
            order_bound: DEFAULT_ORDER_BOUND,
            corrupt: None,
        }
    }

    #[test]
    fn rows_follow_input_order() {
        let specs = corpus::subgroups_of_symmetric(4, false).unwrap();
        let a = verify(&specs, &opts(1)).unwrap();
        let b = verify(&specs, &opts(4)).unwrap();
        let names: Vec<_> = a.iter().map(|r| r.name.clone()).collect();
        assert_eq!(
            names,
            specs.iter().map(|s| s.name.clone()).collect::<Vec<_>>()
        );
        assert_eq!(tsv_string(&a, false), tsv_string(&b, false));
        assert!(Summary::of(&a).mismatches.is_empty());
    }

    #[test]
    fn corruption_hook_produces_a_mismatch() {
        let specs = vec![corpus::symmetric(3).unwrap(), corpus::cyclic(4).unwrap()];
        let mut o = opts(2);
        o.corrupt = Some("S3".into());
        let rows = verify(&specs, &o).unwrap();
        assert_eq!(Summary::of(&rows).mismatches, vec!["S3".to_string()]);
        assert_eq!(rows[1].status, Status::Ok);
    }

    #[test]
    fn resource_bound_skips_rather_than_fails() {
        let specs = vec![corpus::symmetric(5).unwrap(), corpus::cyclic(3).unwrap()];
        let mut o = opts(1);
        o.order_bound = 50;
        let rows = verify(&specs, &o).unwrap();
        assert_eq!(rows[0].status, Status::ResourceSkip);
        assert_eq!(rows[1].status, Status::Ok);
        let tsv = tsv_string(&rows, true);
        let widths: Vec<usize> = tsv.lines().map(|l| l.split('\t').count()).collect();
        assert!(widths.iter().all(|&w| w == widths[0]));
    }

    #[test]
    fn witness_search_orders_by_group_order() {
        let specs = vec![
            corpus::affine_75(),
            corpus::symmetric(4).unwrap(),
            corpus::alternating(4).unwrap(),
        ];
        let found = find_witness(&specs, Class::D, Class::X, 2000).unwrap();
        assert_eq!(found.hit.unwrap().order, 75);
        let none = find_witness(&specs, Class::U, Class::X, 2000).unwrap();
        assert!(none.hit.is_none());
        assert_eq!(none.scanned, 3);
    }

    #[test]
    fn census_of_a4_and_c8() {
        let a4 = corpus::alternating(4).unwrap().build(100).unwrap();
        let c = census(&Lattice::build(&a4).unwrap());
        assert_eq!(c.subgroups, 10);
        assert_eq!(c.frattini_order, 1);
        assert_eq!(c.minimal_normal.len(), 1);
        assert_eq!(c.minimal_normal[0].1, 4);

        let c8 = corpus::cyclic(8).unwrap().build(100).unwrap();
        let c = census(&Lattice::build(&c8).unwrap());
        assert_eq!(c.subgroups, 4);
        assert_eq!(
            c.by_order.iter().map(|o| o.order).collect::<Vec<_>>(),
            vec![1, 2, 4, 8]
        );
    }

    #[test]
    fn class_parsing() {
        assert_eq!("X".parse::<Class>().unwrap(), Class::X);
        assert!("Y".parse::<Class>().is_err());
    }
}
