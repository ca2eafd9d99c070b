//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use formationlab::corpus::{self, GroupSpec};
use formationlab::group::DEFAULT_ORDER_BOUND;
use formationlab::harness::{self, find_witness, Class, Status, Summary, VerifyOptions};
use formationlab::laws::check_closure_laws;
use formationlab::predicates::{
    has_sylow_tower_sst, is_nilpotent, is_nilpotent_by_sylow, is_supersoluble,
    is_supersoluble_by_chief,
};
use formationlab::theorem::{
    classify, condition_b_law_with, condition_x, is_p_subnormal, BrandlState, BrandlSweep,
    Convention,
};
use formationlab::{GroupTable, Lattice, Permutation};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Corpus {
    specs: Vec<GroupSpec>,
    tables: Vec<GroupTable>,
}

impl Corpus {
    fn standard() -> Self {
        let specs = corpus::standard_corpus();
        let tables = specs
            .iter()
            .map(|s| s.build(DEFAULT_ORDER_BOUND).expect("corpus group builds"))
            .collect();
        Corpus { specs, tables }
    }

    fn iter(&self) -> impl Iterator<Item = (&GroupSpec, &GroupTable)> {
        self.specs.iter().zip(&self.tables)
    }
}

fn options(jobs: usize) -> VerifyOptions {
    VerifyOptions {
        jobs,
        order_bound: DEFAULT_ORDER_BOUND,
        corrupt: None,
    }
}

fn first_failures(failures: Vec<String>) -> Outcome {
    let shown: Vec<_> = failures.iter().take(5).cloned().collect();
    Err(format!(
        "{} failures, first: {}",
        failures.len(),
        shown.join(" | ")
    ))
}

fn theorem_sweep(c: &Corpus) -> Outcome {
    let rows = harness::verify(&c.specs, &options(0)).map_err(|e| e.to_string())?;
    let summary = Summary::of(&rows);
    let names: Vec<&str> = rows.iter().map(|r| r.name.as_str()).collect();
    for required in ["F5^2:C3", "F7^2:S3"] {
        if !names.contains(&required) {
            return Err(format!("{required} missing from the corpus"));
        }
    }
    if summary.skipped > 0 {
        return Err(format!("{} groups skipped", summary.skipped));
    }
    if !summary.mismatches.is_empty() {
        return Err(format!("mismatches: {}", summary.mismatches.join(", ")));
    }
    Ok(format!("{} groups, 0 mismatches", summary.groups))
}

fn inclusion_chain(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    for (spec, table) in c.iter() {
        let lat = Lattice::build(table).unwrap();
        let u = is_supersoluble(&lat);
        let x = condition_x(&lat).holds;
        let d = has_sylow_tower_sst(&lat);
        if (u && !x) || (x && !d) {
            failures.push(format!("{}: U={u} X={x} D={d}", spec.name));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} groups, 0 violations", c.specs.len()))
    } else {
        first_failures(failures)
    }
}

fn separation_witnesses(c: &Corpus) -> Outcome {
    let a4 = corpus::alternating(4).unwrap().build(100).unwrap();
    let r = classify("A4", &a4).map_err(|e| e.to_string())?;
    if r.theorem_values() != [false; 4] || r.supersoluble.holds {
        return Err(format!(
            "A4 classified as {:?}, U={}",
            r.theorem_values(),
            r.supersoluble.holds
        ));
    }
    let g75 = corpus::affine_75().build(100).unwrap();
    let r = classify("F5^2:C3", &g75).map_err(|e| e.to_string())?;
    if !(r.sylow_tower.holds && !r.condition_x.holds) || r.order != 75 {
        return Err(format!(
            "order-75 group: D={} X={}",
            r.sylow_tower.holds, r.condition_x.holds
        ));
    }
    let search = find_witness(&c.specs, Class::X, Class::U, DEFAULT_ORDER_BOUND)
        .map_err(|e| e.to_string())?;
    let xu = match search.hit {
        Some(h) => format!("X\\U witness {} of order {}", h.name, h.order),
        None => format!("no X\\U witness up to order {}", search.order_bound),
    };
    let g294 = corpus::affine_294().build(DEFAULT_ORDER_BOUND).unwrap();
    let r = classify("F7^2:S3", &g294).map_err(|e| e.to_string())?;
    Ok(format!(
        "A4 outside all four, order 75 in D\\X; {xu}; order 294: X={} U={}",
        r.condition_x.holds, r.supersoluble.holds
    ))
}

fn closure_laws(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    for (spec, table) in c.iter() {
        match check_closure_laws(table) {
            Ok(v) => failures.extend(v.into_iter().map(|m| format!("{}: {m}", spec.name))),
            Err(e) => failures.push(format!("{}: {e}", spec.name)),
        }
    }
    if failures.is_empty() {
        Ok(format!("{} groups, 0 violations", c.specs.len()))
    } else {
        first_failures(failures)
    }
}

fn oracle_equivalences(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    let (mut small, mut medium) = (0, 0);
    for (spec, table) in c.iter() {
        if table.order() > 120 {
            continue;
        }
        let lat = Lattice::build(table).unwrap();
        if table.order() <= 48 {
            small += 1;
            if common::lattice_member_sets(&lat) != common::exhaustive_subgroups(table) {
                failures.push(format!(
                    "{}: lattice differs from the exhaustive oracle",
                    spec.name
                ));
            }
            if is_supersoluble(&lat) != is_supersoluble_by_chief(&lat) {
                failures.push(format!(
                    "{}: supersolubility algorithms disagree",
                    spec.name
                ));
            }
            if is_nilpotent(table, &table.whole()) != is_nilpotent_by_sylow(&lat) {
                failures.push(format!("{}: nilpotency algorithms disagree", spec.name));
            }
        }
        medium += 1;
        for h in 0..lat.len() {
            if is_p_subnormal(&lat, h) != common::recursive_p_subnormal(&lat, h) {
                failures.push(format!(
                    "{}: P-subnormality of {} disagrees",
                    spec.name,
                    table.describe_subgroup(lat.get(h))
                ));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{small} groups of order <= 48, P-subnormality on {medium} groups of order <= 120"
        ))
    } else {
        first_failures(failures)
    }
}

fn hand_trace() -> Outcome {
    let x = Permutation::parse_cycles("(1 2)", 3).unwrap();
    let y = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
    let mut s = BrandlState::start(&x, &y).map_err(|e| e.to_string())?;
    let mut seen = vec![s.value.format_cycles()];
    while !s.value.is_identity() && seen.len() < 10 {
        s = s.next().map_err(|e| e.to_string())?;
        seen.push(s.value.format_cycles());
    }
    let expected = ["(1 3 2)", "(1 2 3)", "(1 2 3)", "()"];
    if seen == expected && s.step == 4 {
        Ok(format!("{}, k = {}", seen.join(", "), s.step))
    } else {
        Err(format!("got {}, k = {}", seen.join(", "), s.step))
    }
}

fn convention_robustness(c: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    let mut differing_witnesses = 0;
    for (spec, table) in c.iter() {
        let ltr = condition_b_law_with(table, Convention::LeftToRight);
        let rtl = condition_b_law_with(table, Convention::RightToLeft);
        if ltr.holds != rtl.holds {
            failures.push(format!("{}: {} vs {}", spec.name, ltr.holds, rtl.holds));
        }
        differing_witnesses += usize::from(ltr.witness != rtl.witness);
    }
    // The conventions must actually produce different sequences somewhere.
    let s4 = corpus::symmetric(4).unwrap().build(100).unwrap();
    let (ltr, rtl) = (
        BrandlSweep::new(&s4, Convention::LeftToRight),
        BrandlSweep::new(&s4, Convention::RightToLeft),
    );
    let differing_traces = (0..s4.order())
        .flat_map(|x| (0..s4.order()).map(move |y| (x, y)))
        .filter(|&(x, y)| ltr.trace(x, y) != rtl.trace(x, y))
        .count();
    if differing_traces == 0 {
        failures.push("the two conventions give identical traces on S4".into());
    }
    if failures.is_empty() {
        Ok(format!(
            "{} groups agree; {differing_witnesses} differ in witness pair, \
             {differing_traces} S4 pairs differ in trace",
            c.specs.len()
        ))
    } else {
        first_failures(failures)
    }
}

fn determinism(c: &Corpus) -> Outcome {
    let one = harness::verify(&c.specs, &options(1)).map_err(|e| e.to_string())?;
    let four = harness::verify(&c.specs, &options(4)).map_err(|e| e.to_string())?;
    if one.iter().any(|r| r.status == Status::ResourceSkip) {
        return Err("unexpected resource skips".into());
    }
    let (a, b) = (
        harness::tsv_string(&one, false),
        harness::tsv_string(&four, false),
    );
    let ja = serde_json::to_string(&one).unwrap();
    let jb = serde_json::to_string(&four).unwrap();
    if a != b {
        return Err("TSV reports differ between 1 and 4 workers".into());
    }
    if ja != jb {
        return Err("JSON reports differ between 1 and 4 workers".into());
    }
    Ok(format!(
        "{} bytes of TSV identical for --jobs 1 and 4",
        a.len()
    ))
}

fn main() -> ExitCode {
    let corpus = Corpus::standard();
    let criteria: Vec<Criterion> = vec![
        (
            "theorem equivalence sweep",
            Box::new(|| theorem_sweep(&corpus)),
        ),
        (
            "inclusion chain U <= X <= D",
            Box::new(|| inclusion_chain(&corpus)),
        ),
        (
            "separation witnesses",
            Box::new(|| separation_witnesses(&corpus)),
        ),
        ("closure laws", Box::new(|| closure_laws(&corpus))),
        (
            "oracle equivalences",
            Box::new(|| oracle_equivalences(&corpus)),
        ),
        ("worked word trace in S3", Box::new(hand_trace)),
        (
            "convention robustness",
            Box::new(|| convention_robustness(&corpus)),
        ),
        ("report determinism", Box::new(|| determinism(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
