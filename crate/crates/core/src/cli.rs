//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{Analyzer, Cache};
use crate::bounds::{certify_distance_optimal, sphere_packing_dmax, BoundCertificate};
use crate::codes::{DistanceStatus, LinearCode, MinDistance, WeightDistribution, DEFAULT_BUDGET, EXTENDED_BUDGET};
use crate::cosets::{all_cosets, cyclotomic_coset, odd_cosets, DefiningSet, Kind};
use crate::error::{Error, Result};
use crate::families::{self, catalog, find, instantiate, FamilyReport, Outcome};
use crate::gf::field_of_order;
use crate::reference::BoundsTable;
use crate::report::{Format, RunReport};
use crate::tables;

#[derive(Debug, Parser)]
#[command(name = "bchfam", version, about = "Cyclic and negacyclic BCH code families over small fields")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Neither read nor write the results cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Cache file (default: $BCHFAM_CACHE, else the user cache directory).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// No summary lines on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print one cyclotomic coset, or all of them.
    Cosets {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        /// Odd cosets of Z_2n instead of cosets of Z_n.
        #[arg(long)]
        negacyclic: bool,
        #[arg(long)]
        i: Option<u64>,
    },
    /// Construct a code and print its parameters and bounds.
    Build(CodeArgs),
    /// Build, then compute the weight distribution and minimum distance.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        /// Use the extended enumeration budget (2^31).
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Sphere-packing certificate that no [n, k, d+1]_q code exists.
    Certify {
        #[command(flatten)]
        code: CodeArgs,
        /// Dimension, when certifying bare parameters instead of a code.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: u64,
    },
    /// Family catalog and verification sweeps.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Regenerate a table of codes from the catalog and derivation scripts.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Annotate constructed codes with best-known distances from a CSV file.
    Compare {
        #[arg(long)]
        bounds: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    List,
    Run {
        id: String,
        /// A single parameter, e.g. `3`, `m=3` or `q=3,p=5`.
        #[arg(long, conflicts_with = "max_n")]
        param: Option<String>,
        /// Sweep every valid parameter up to this length.
        #[arg(long)]
        max_n: Option<u64>,
        /// Attempt exact distances only up to this length.
        #[arg(long)]
        exact_max_n: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct CodeArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub param: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub negacyclic: bool,
    #[arg(long, value_delimiter = ',')]
    pub coset_reps: Vec<u64>,
    /// Replace the code by its dual.
    #[arg(long)]
    pub dual: bool,
    /// Shorten this many times at position 0.
    #[arg(long)]
    pub shorten: Option<usize>,
    /// Puncture this many times at position 0.
    #[arg(long)]
    pub puncture: Option<usize>,
}

const DEFAULT_SWEEP_MAX_N: u64 = 255;

/// Result of one command: the report plus whether every verified claim held.
pub struct CommandOutput {
    pub report: RunReport,
    pub pass: bool,
    pub lines: Vec<String>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

impl CodeArgs {
    fn build(&self) -> Result<LinearCode> {
        let mut code = match (&self.family, &self.param) {
            (Some(id), Some(p)) => {
                if self.q.is_some() || self.n.is_some() || self.negacyclic || !self.coset_reps.is_empty() {
                    return Err(usage("--family cannot be combined with --q, --n, --negacyclic or --coset-reps"));
                }
                let spec = find(id)?;
                instantiate(spec.id, &spec.parse_param(p)?)?.0
            }
            (Some(_), None) => return Err(usage("--family needs --param")),
            (None, Some(_)) => return Err(usage("--param needs --family")),
            (None, None) => {
                let q = self.q.ok_or_else(|| usage("give --family and --param, or --q and --n"))?;
                let n = self.n.ok_or_else(|| usage("--n is required with --q"))?;
                let kind = if self.negacyclic { Kind::Negacyclic } else { Kind::Cyclic };
                let t = DefiningSet::from_reps(q, n, kind, &self.coset_reps)?;
                LinearCode::from_defining_set(&field_of_order(q)?, &t)?
            }
        };
        if self.dual {
            code = code.dual()?;
        }
        if let Some(s) = self.shorten {
            code = code.shorten_many(&vec![0; s])?;
        }
        if let Some(p) = self.puncture {
            code = code.puncture_many(&vec![0; p])?;
        }
        Ok(code)
    }
}

#[derive(Serialize)]
struct CodeRecord {
    q: u64,
    n: usize,
    k: usize,
    kind: String,
    family: Option<String>,
    param: Option<String>,
    ops: Vec<String>,
    coset_reps: Option<Vec<u64>>,
    defining_set: Option<Vec<u64>>,
    bch_bound: Option<u64>,
    boston_bound: Option<u64>,
    lower_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<MinDistance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight_distribution: Option<WeightDistribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<BoundCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dmax: Option<u64>,
}

fn code_record(code: &LinearCode) -> CodeRecord {
    let prov = code.provenance();
    CodeRecord {
        q: code.q(),
        n: code.n(),
        k: code.k(),
        kind: code.kind().to_string(),
        family: prov.family.clone(),
        param: prov.param.clone(),
        ops: prov.ops.clone(),
        coset_reps: code.defining_set().map(DefiningSet::reps),
        defining_set: code.defining_set().map(|t| t.elems().to_vec()),
        bch_bound: code.bch_bound(),
        boston_bound: code.boston_bound(),
        lower_bound: code.lower_bound(),
        distance: None,
        weight_distribution: None,
        certificate: None,
        dmax: None,
    }
}

fn analyze(code: &LinearCode, analyzer: &Analyzer) -> Result<CodeRecord> {
    let mut rec = code_record(code);
    let (md, dist) = analyzer.min_distance(code)?;
    if code.k() >= 1 && code.n() >= 1 {
        if let Some(d) = md.d {
            rec.certificate = Some(certify_distance_optimal(code.q(), code.n(), code.k(), d)?);
        }
        rec.dmax = Some(sphere_packing_dmax(code.q(), code.n(), code.k())?);
    }
    rec.distance = Some(md);
    rec.weight_distribution = Some(dist);
    Ok(rec)
}

fn describe_distance(md: &MinDistance) -> String {
    match (md.d, md.status) {
        (Some(d), DistanceStatus::Exact) => format!("exact d = {d}"),
        (Some(d), DistanceStatus::LowerBoundOnly) => format!("d >= {d} (lower bound only)"),
        (None, _) => "no nonzero codeword".into(),
    }
}

fn family_line(r: &FamilyReport) -> String {
    let mut parts = vec![format!("{} {}: [{}, {}]_{}", r.id, r.param, r.n, r.k, r.q), format!("BCH {}", r.bch_bound)];
    if let Some(b) = r.boston_bound {
        parts.push(format!("Boston {b}"));
    }
    if let Some(md) = &r.distance {
        parts.push(describe_distance(md));
    }
    if let Some(c) = &r.certificate {
        if c.verdict == crate::bounds::Verdict::DistanceOptimal {
            parts.push("distance-optimal".into());
        }
    }
    let failed: Vec<&str> = r.checks.iter().filter(|c| c.outcome == Outcome::Fail).map(|c| c.claim.as_str()).collect();
    if failed.is_empty() {
        parts.push("PASS".into());
    } else {
        parts.push(format!("FAIL ({})", failed.join(", ")));
    }
    parts.join(", ")
}

fn analyzer_for(output: &OutputArgs, budget: u64) -> (Analyzer, Option<String>) {
    if output.no_cache {
        return (Analyzer::new(budget), None);
    }
    let Some(path) = output.cache.clone().or_else(Cache::default_path) else {
        return (Analyzer::new(budget), None);
    };
    match Cache::open(&path) {
        Ok(c) => (Analyzer::with_cache(budget, c), None),
        Err(e) => (Analyzer::new(budget), Some(format!("cache disabled ({}: {e})", path.display()))),
    }
}

/// Runs a parsed command and builds its report.
pub fn execute(cli: &Cli, command_line: &str) -> Result<CommandOutput> {
    let mut report = RunReport::new(command_line);
    let mut lines = Vec::new();
    let mut pass = true;
    match &cli.command {
        Command::Cosets { q, n, negacyclic, i } => {
            let kind = if *negacyclic { Kind::Negacyclic } else { Kind::Cyclic };
            DefiningSet::empty(*q, *n, kind)?;
            let ambient = kind.ambient(*n);
            let cosets = match i {
                Some(i) => {
                    if *negacyclic && i % 2 == 0 {
                        return Err(usage(format!("--i {i} is even; negacyclic cosets are odd")));
                    }
                    vec![cyclotomic_coset(*q, ambient, *i)?]
                }
                None if *negacyclic => odd_cosets(*q, ambient)?,
                None => all_cosets(*q, ambient)?,
            };
            for c in &cosets {
                report.push(
                    "coset",
                    &json!({"q": q, "ambient": ambient, "rep": c.rep(), "size": c.len(), "elems": c.elems()}),
                )?;
                lines.push(format!("C_{} = {:?}", c.rep(), c.elems()));
            }
        }
        Command::Build(args) => {
            let code = args.build()?;
            let rec = code_record(&code);
            lines.push(format!("{code}, lower bound {}", rec.lower_bound));
            report.push("code", &rec)?;
        }
        Command::Analyze { code, exact, budget } => {
            let budget = budget.unwrap_or(if *exact { EXTENDED_BUDGET } else { DEFAULT_BUDGET });
            let (analyzer, warn) = analyzer_for(&cli.output, budget);
            lines.extend(warn);
            let c = code.build()?;
            let rec = analyze(&c, &analyzer)?;
            if let Some(md) = &rec.distance {
                lines.push(format!("{c}, {}", describe_distance(md)));
            }
            report.push("code", &rec)?;
        }
        Command::Certify { code, k, d } => {
            let (q, n, k) = match k {
                Some(k) => {
                    let q = code.q.ok_or_else(|| usage("--k needs --q and --n"))?;
                    let n = code.n.ok_or_else(|| usage("--k needs --q and --n"))?;
                    (q, n as usize, *k)
                }
                None => {
                    let c = code.build()?;
                    (c.q(), c.n(), c.k())
                }
            };
            let cert = certify_distance_optimal(q, n, k, *d)?;
            let dmax = sphere_packing_dmax(q, n, k)?;
            lines.push(format!(
                "[{n}, {k}, {d}]_{q}: {q}^{k} * V({r}) = {} vs {q}^{n} = {}: {:?}; d_max = {dmax}",
                cert.lhs, cert.rhs, cert.verdict,
                r = cert.r
            ));
            report.push("certificate", &json!({"certificate": cert, "dmax": dmax}))?;
        }
        Command::Family { command } => match command {
            FamilyCommand::List => {
                for spec in catalog() {
                    report.push("family", spec)?;
                    lines.push(format!("{:6} {}", spec.id, spec.parameters));
                }
            }
            FamilyCommand::Run {
                id,
                param,
                max_n,
                exact_max_n,
                budget,
            } => {
                let spec = find(id)?;
                let (analyzer, warn) = analyzer_for(&cli.output, budget.unwrap_or(DEFAULT_BUDGET));
                lines.extend(warn);
                let reports = match param {
                    Some(p) => vec![families::verify_instance_with(spec.id, &spec.parse_param(p)?, &analyzer)?],
                    None => {
                        let max_n = max_n.unwrap_or(DEFAULT_SWEEP_MAX_N);
                        families::verify_family_with(spec.id, max_n, exact_max_n.unwrap_or(max_n), &analyzer)?
                    }
                };
                for r in &reports {
                    lines.push(family_line(r));
                    report.push("family-instance", r)?;
                }
                let failures = reports.iter().filter(|r| !r.pass).count();
                pass = failures == 0;
                report.set_summary(&json!({"family": spec.id, "instances": reports.len(), "failures": failures, "pass": pass}))?;
            }
        },
        Command::Table { id, budget } => {
            let (analyzer, warn) = analyzer_for(&cli.output, budget.unwrap_or(DEFAULT_BUDGET));
            lines.extend(warn);
            let t = tables::regenerate(*id, &analyzer)?;
            for row in &t.rows {
                for e in &row.entries {
                    let mut v = serde_json::to_value(e).map_err(|e| Error::Io(e.to_string()))?;
                    if let Value::Object(m) = &mut v {
                        m.insert("row".into(), Value::String(row.label.clone()));
                        m.insert("derivation".into(), Value::String(row.derivation.clone()));
                    }
                    report.push("table-entry", &v)?;
                    if e.outcome == Outcome::Fail {
                        lines.push(format!("FAIL {} (t = {:?}): {}", row.label, e.t, e.detail));
                    }
                }
                let verdict = if row.pass { "PASS" } else { "FAIL" };
                lines.push(format!("{verdict} {} <- {} ({} codes)", row.label, row.derivation, row.entries.len()));
            }
            lines.extend(t.notes.iter().map(|n| format!("note: {n}")));
            lines.push(format!("table {}: {} rows, {} codes", t.table, t.row_count, t.code_count));
            pass = t.pass;
            report.set_summary(&json!({
                "table": t.table,
                "row_count": t.row_count,
                "code_count": t.code_count,
                "published_code_count": t.published_code_count,
                "notes": t.notes,
                "distribution_check": t.distribution_check,
                "pass": t.pass,
            }))?;
        }
        Command::Compare { bounds, budget } => {
            let table = BoundsTable::from_path(bounds)?;
            let (analyzer, warn) = analyzer_for(&cli.output, budget.unwrap_or(DEFAULT_BUDGET));
            lines.extend(warn);
            let mut annotated = 0usize;
            for id in [1u8, 2] {
                let t = tables::regenerate(id, &analyzer)?;
                for row in &t.rows {
                    for e in &row.entries {
                        let d_best = table.get(e.q, e.n, e.k);
                        let gap = d_best.zip(e.distance.d).map(|(b, d)| b as i64 - d as i64);
                        annotated += usize::from(d_best.is_some());
                        if let (Some(b), Some(g)) = (d_best, gap) {
                            lines.push(format!("[{}, {}]_{}: d = {:?}, d_best = {b}, gap {g}", e.n, e.k, e.q, e.distance.d.unwrap_or(0)));
                        }
                        report.push(
                            "comparison",
                            &json!({
                                "source": format!("table {id}: {}", row.derivation),
                                "t": e.t,
                                "q": e.q, "n": e.n, "k": e.k,
                                "distance": e.distance,
                                "d_best": d_best,
                                "gap": gap,
                            }),
                        )?;
                    }
                }
            }
            for spec in catalog() {
                let Ok(inst) = families::first_instance(spec.id) else { continue };
                let Ok(code) = inst.build_code() else { continue };
                let (md, _) = analyzer.min_distance(&code)?;
                let d_best = table.get(code.q(), code.n(), code.k());
                let gap = d_best.zip(md.d).map(|(b, d)| b as i64 - d as i64);
                annotated += usize::from(d_best.is_some());
                report.push(
                    "comparison",
                    &json!({
                        "source": format!("{} {}", inst.id, inst.param),
                        "q": code.q(), "n": code.n(), "k": code.k(),
                        "distance": md,
                        "d_best": d_best,
                        "gap": gap,
                    }),
                )?;
            }
            let note = if table.is_empty() { Some("no reference data") } else { None };
            if let Some(n) = note {
                lines.push(n.to_string());
            }
            lines.push(format!("{annotated} of {} codes have a reference entry", report.records.len()));
            report.set_summary(&json!({"reference_rows": table.len(), "annotated": annotated, "note": note}))?;
        }
    }
    Ok(CommandOutput { report, pass, lines })
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    }
}

/// Parses `argv` (program name first), runs it and writes the report.
/// Returns the process exit code: 0 on success, 1 when a verified claim
/// fails, 2 on usage or input errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command_line = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let mut stderr = std::io::stderr().lock();
    match execute(&cli, &command_line).and_then(|out| {
        out.report.emit(format_of(cli.output.format), cli.output.out.as_deref())?;
        Ok(out)
    }) {
        Ok(out) => {
            if !cli.output.quiet {
                for l in &out.lines {
                    let _ = writeln!(stderr, "{l}");
                }
            }
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<CommandOutput> {
        let mut argv = vec!["bchfam", "--no-cache"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).expect("parses");
        execute(&cli, &args.join(" "))
    }

    #[test]
    fn build_length_one() {
        let out = exec(&["build", "--q", "2", "--n", "1"]).unwrap();
        assert_eq!(out.report.records[0]["n"], 1);
        assert_eq!(out.report.records[0]["k"], 1);
    }

    #[test]
    fn family_mixing_rejected() {
        assert!(exec(&["build", "--family", "T2.1", "--param", "3", "--q", "2"]).is_err());
        assert!(exec(&["build", "--family", "T2.1"]).is_err());
    }

    #[test]
    fn family_run_reports_pass() {
        let out = exec(&["family", "run", "T2.1", "--param", "3"]).unwrap();
        assert!(out.pass);
        assert_eq!(out.lines[0], "T2.1 m=3: [21, 11]_2, BCH 6, exact d = 6, distance-optimal, PASS");
    }

    #[test]
    fn cosets_of_negacyclic_ambient() {
        let out = exec(&["cosets", "--q", "5", "--n", "62", "--negacyclic", "--i", "31"]).unwrap();
        assert_eq!(out.report.records[0]["elems"], json!([31]));
        assert!(exec(&["cosets", "--q", "5", "--n", "62", "--negacyclic", "--i", "2"]).is_err());
    }

    #[test]
    fn certify_bare_parameters() {
        let out = exec(&["certify", "--q", "2", "--n", "21", "--k", "11", "--d", "6"]).unwrap();
        let cert = &out.report.records[0]["certificate"];
        assert_eq!(cert["volume"], "1562");
        assert_eq!(cert["verdict"], "distance-optimal");
    }
}
