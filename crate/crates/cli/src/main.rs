use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use formationlab::corpus::{self, load_group, GroupSpec};
use formationlab::harness::{
    self, census, find_witness, Class, Summary, VerificationRow, VerifyOptions,
};
use formationlab::lattice::Lattice;
use formationlab::theorem::{brandl_terminates, classify, ClassReport, Verdict};
use formationlab::{Error, ErrorKind, Permutation, Result};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "formationlab",
    version,
    about = "Finite group class-membership checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one group.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bound: Bound,
    },
    /// Print the word sequence for one pair of elements.
    Brandl {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        bound: Bound,
    },
    /// Classify a whole corpus and check that the four conditions agree.
    Verify {
        #[command(flatten)]
        source: CorpusArgs,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        /// JSON report instead of TSV.
        #[arg(long)]
        json: bool,
        /// Add wall-time columns (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
        #[arg(long, hide = true)]
        corrupt: Option<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Find the smallest corpus group in one class but not another.
    Witness {
        #[arg(long = "in")]
        in_class: Class,
        #[arg(long = "notin")]
        notin_class: Class,
        #[command(flatten)]
        source: CorpusArgs,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bound: Bound,
    },
    /// Subgroup census of one group.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        bound: Bound,
    },
}

#[derive(Args)]
struct Bound {
    /// Largest group order to enumerate (default: $FORMATIONLAB_MAX_ORDER or 2000).
    #[arg(long)]
    max_order: Option<usize>,
}

impl Bound {
    fn resolve(&self) -> Result<usize> {
        match self.max_order {
            Some(0) => Err(Error::Input("--max-order must be positive".into())),
            Some(n) => Ok(n),
            None => harness::order_bound_from_env(),
        }
    }
}

#[derive(Args)]
struct CorpusArgs {
    /// `standard`, `abelian`, or a directory of .grp files.
    #[arg(long, default_value = "standard", conflicts_with = "sn")]
    corpus: String,
    /// Use every subgroup of S_N instead (N <= 5, or 6 with --allow-s6).
    #[arg(long)]
    sn: Option<usize>,
    #[arg(long)]
    allow_s6: bool,
}

impl CorpusArgs {
    fn specs(&self) -> Result<Vec<GroupSpec>> {
        if let Some(n) = self.sn {
            return corpus::subgroups_of_symmetric(n, self.allow_s6);
        }
        match self.corpus.as_str() {
            "standard" => Ok(corpus::standard_corpus()),
            "abelian" => Ok(corpus::abelian_corpus()),
            dir => corpus::load_dir(dir),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Input => EXIT_INPUT,
        ErrorKind::Resource => EXIT_RESOURCE,
        ErrorKind::Internal => EXIT_MISMATCH,
    }
}

fn yes_no(v: &Verdict) -> String {
    match &v.witness {
        None if v.holds => "yes".into(),
        None => "no".into(),
        Some(w) => format!("no   {w}"),
    }
}

fn print_report(r: &ClassReport, out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "group {}  degree {}  order {}  subgroups {}",
        r.name, r.degree, r.order, r.subgroup_count
    )?;
    let rows = [
        ("U", &r.supersoluble),
        ("D", &r.sylow_tower),
        ("X", &r.condition_x),
        ("B_sub", &r.condition_b_subgroups),
        ("B_law", &r.condition_b_law),
        ("LF_f", &r.condition_lf_f),
    ];
    for (label, v) in rows {
        writeln!(out, "{label:<6} {}", yes_no(v))?;
    }
    if r.theorem_agrees() {
        writeln!(out, "theorem conditions agree")?;
    } else {
        writeln!(out, "MISMATCH: theorem conditions disagree")?;
    }
    for v in r.inclusion_violations() {
        writeln!(out, "INCLUSION VIOLATION: {v}")?;
    }
    Ok(())
}

fn cmd_check(file: &Path, json: bool, bound: usize) -> Result<u8> {
    let spec = load_group(file)?;
    let table = spec.build(bound)?;
    let report = classify(&spec.name, &table)?;
    let mut out = io::stdout().lock();
    if json {
        let value = json!({
            "report": report,
            "theorem_agrees": report.theorem_agrees(),
            "inclusion_violations": report.inclusion_violations(),
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        )?;
    } else {
        print_report(&report, &mut out)?;
    }
    let consistent = report.theorem_agrees() && report.inclusion_violations().is_empty();
    Ok(if consistent { 0 } else { EXIT_MISMATCH })
}

fn cmd_brandl(file: &Path, x: &str, y: &str, bound: usize) -> Result<u8> {
    let spec = load_group(file)?;
    let table = spec.build(bound)?;
    let parse = |text: &str, flag: &str| -> Result<Permutation> {
        let p = Permutation::parse_cycles(text, spec.degree)
            .map_err(|e| Error::Input(format!("--{flag}: {e}")))?;
        if table.index_of(&p).is_none() {
            return Err(Error::Input(format!("--{flag} {text} is not in the group")));
        }
        Ok(p)
    };
    let (x, y) = (parse(x, "x")?, parse(y, "y")?);
    let exponent = table.exponent(&table.whole()) as u64;
    let trace = brandl_terminates(&x, &y, exponent, table.order() as u64)?;
    let mut out = io::stdout().lock();
    for (k, u) in trace.steps.iter().enumerate() {
        writeln!(out, "u{} = {u}", k + 1)?;
    }
    match (trace.k_final, trace.cycle_length) {
        (Some(k), _) => writeln!(out, "terminates at k = {k}")?,
        (None, Some(len)) => writeln!(
            out,
            "cycle detected: length {len}, the identity is never reached"
        )?,
        (None, None) => return Err(Error::Internal("trace ended without a verdict".into())),
    }
    Ok(0)
}

fn write_rows(
    rows: &[VerificationRow],
    json: bool,
    timings: bool,
    out: &mut impl Write,
) -> Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut *out, rows)
            .map_err(|e| Error::Internal(format!("json: {e}")))?;
        writeln!(out)?;
    } else {
        harness::write_tsv(rows, &mut *out, timings)?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_verify(
    source: &CorpusArgs,
    jobs: usize,
    report: Option<&Path>,
    json: bool,
    timings: bool,
    corrupt: Option<String>,
    bound: usize,
) -> Result<u8> {
    let specs = source.specs()?;
    let opts = VerifyOptions {
        jobs,
        order_bound: bound,
        corrupt,
    };
    let rows = harness::verify(&specs, &opts)?;
    let summary = Summary::of(&rows);
    match report {
        Some(path) => {
            let file = File::create(path).map_err(|e| Error::from(e).in_file(path))?;
            write_rows(&rows, json, timings, &mut BufWriter::new(file))?;
            print!("{summary}");
        }
        None => {
            write_rows(&rows, json, timings, &mut io::stdout().lock())?;
            eprint!("{summary}");
        }
    }
    let failed = !summary.mismatches.is_empty() || !summary.inclusion_violations.is_empty();
    Ok(if failed { EXIT_MISMATCH } else { 0 })
}

fn cmd_witness(
    in_class: Class,
    notin_class: Class,
    source: &CorpusArgs,
    json: bool,
    bound: usize,
) -> Result<u8> {
    let specs = source.specs()?;
    let search = find_witness(&specs, in_class, notin_class, bound)?;
    // U ⊆ X ⊆ D, so a hit against the inclusion order contradicts the theory.
    let rank = |c: Class| match c {
        Class::U => 0,
        Class::X => 1,
        Class::D => 2,
    };
    let violation = search.hit.is_some() && rank(in_class) < rank(notin_class);
    let mut out = io::stdout().lock();
    if json {
        let value = json!({ "search": search, "inclusion_violation": violation });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        )?;
    } else {
        writeln!(
            out,
            "in {in_class}, not in {notin_class}: scanned {} groups, skipped {} (order bound {})",
            search.scanned, search.skipped, search.order_bound
        )?;
        match &search.hit {
            Some(h) => {
                writeln!(
                    out,
                    "found {} (order {}, degree {})",
                    h.name, h.order, h.degree
                )?;
                writeln!(out, "witness: {}", h.witness)?;
            }
            None => writeln!(out, "none found up to order {}", search.order_bound)?,
        }
    }
    if violation {
        eprintln!("INCLUSION VIOLATION: a group in {in_class} lies outside {notin_class}");
        return Ok(EXIT_MISMATCH);
    }
    Ok(0)
}

fn cmd_lattice(file: &Path, json: bool, bound: usize) -> Result<u8> {
    let spec = load_group(file)?;
    let table = spec.build(bound)?;
    let lat = Lattice::build(&table).map_err(|e| e.in_group(&spec.name))?;
    let c = census(&lat);
    let mut out = io::stdout().lock();
    if json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&c).expect("serializable")
        )?;
    } else {
        writeln!(out, "group {}", spec.name)?;
        write!(out, "{c}")?;
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { file, json, bound } => cmd_check(&file, json, bound.resolve()?),
        Command::Brandl { file, x, y, bound } => cmd_brandl(&file, &x, &y, bound.resolve()?),
        Command::Verify {
            source,
            jobs,
            report,
            json,
            timings,
            corrupt,
            bound,
        } => cmd_verify(
            &source,
            jobs,
            report.as_deref(),
            json,
            timings,
            corrupt,
            bound.resolve()?,
        ),
        Command::Witness {
            in_class,
            notin_class,
            source,
            json,
            bound,
        } => cmd_witness(in_class, notin_class, &source, json, bound.resolve()?),
        Command::Lattice { file, json, bound } => cmd_lattice(&file, json, bound.resolve()?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
