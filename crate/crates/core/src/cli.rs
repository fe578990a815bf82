//! The `bergeham` command line.
//!
//! Exit codes: 0 success (condition holds, cycle found, certificate valid),
//! 1 definite negative (condition violated, no cycle exists, certificate
//! rejected), 2 unknown (budget ran out), 64 usage or input error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conditions::{self, Theorem};
use crate::constructions::{self, Family};
use crate::error::{Error, Result};
use crate::harness::{self, CampaignConfig, CampaignReport, GridPoint};
use crate::hypergraph::{DegreeSequence, Hypergraph};
use crate::io::{parse_bhg, write_bhg, Certificate};
use crate::path::{verify_berge_path, BergePath};
use crate::solver::{
    find_hamiltonian_berge_cycle, rotation_closure_with_limit, Outcome, SearchBudget,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "bergeham",
    version,
    about = "Hamiltonian Berge cycles in hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a degree condition on a sequence or a hypergraph.
    Check(CheckArgs),
    /// Build a member of an extremal family.
    Generate(GenerateArgs),
    /// Decide whether a hypergraph has a Hamiltonian Berge cycle.
    Solve(SolveArgs),
    /// Rotation closure of a Hamiltonian Berge path.
    Rotate(RotateArgs),
    /// Run a campaign.
    #[command(subcommand)]
    Campaign(CampaignCommand),
    /// Check a path or cycle certificate.
    VerifyCert(VerifyCertArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    Posa,
    Chvatal,
    RUniform,
    NonUniform,
    Conjecture,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Posa => Theorem::Posa,
            TheoremArg::Chvatal => Theorem::Chvatal,
            TheoremArg::RUniform => Theorem::RUniform,
            TheoremArg::NonUniform => Theorem::NonUniform,
            TheoremArg::Conjecture => Theorem::Conjecture,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    H1,
    H2,
    H3,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::H1 => Family::H1,
            FamilyArg::H2 => Family::H2,
            FamilyArg::H3 => Family::H3,
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// `seq:"d1 d2 ..."`, a `.bhg` file, or a file holding a sequence.
    #[arg(conflicts_with = "seq", required_unless_present = "seq")]
    input: Option<String>,
    /// Inline ascending degree sequence.
    #[arg(long)]
    seq: Option<String>,
    #[arg(long, value_enum, default_value = "r-uniform")]
    theorem: TheoremArg,
    /// Uniformity; inferred from a uniform `.bhg` input when omitted.
    #[arg(long)]
    r: Option<usize>,
    /// Allow the non-uniform conditions for n <= 40.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Write the `.bhg` here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print only the predicted degree sequence.
    #[arg(long)]
    predict: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    budget_nodes: u64,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Write the cycle certificate here.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct RotateArgs {
    file: PathBuf,
    /// `v,e,v,e,...,v` with edge ids written `e3` or `3`.
    #[arg(long)]
    path: String,
    /// Paths whose rotations are enumerated.
    #[arg(long, default_value_t = crate::solver::DEFAULT_CLOSURE_LIMIT)]
    limit: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum CampaignCommand {
    /// Condition-satisfying samples must be Hamiltonian.
    Verify(CampaignArgs),
    /// The extremal families up to `--n`.
    Sharpness(CampaignArgs),
    /// Search for counterexamples to the conjectured condition.
    Conjecture(CampaignArgs),
    /// Exact solver against the brute-force oracle.
    Oracle(CampaignArgs),
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    budget_nodes: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "r-uniform")]
    theorem: TheoremArg,
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct VerifyCertArgs {
    certificate: PathBuf,
    /// Check against this hypergraph; otherwise against the certificate's own edges.
    #[arg(long)]
    hypergraph: Option<PathBuf>,
}

/// Runs the command line with process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Check(a) => check(a, out),
        Command::Generate(a) => generate(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Rotate(a) => rotate(a, out),
        Command::Campaign(c) => campaign(c, out, err),
        Command::VerifyCert(a) => verify_cert(a, out),
    }
}

/// Reads a file, prefixing parse diagnostics with its path.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::precondition(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::ParseFile {
            path: path.display().to_string(),
            line,
            column,
            message,
        },
        other => other,
    })
}

/// Numbers separated by spaces or commas, optionally in parentheses.
pub fn parse_sequence(text: &str) -> Result<DegreeSequence> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut values = Vec::new();
    for (line_no, line) in body.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 1;
        for piece in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if !piece.is_empty() {
                let v = piece.parse::<u64>().map_err(|_| {
                    Error::parse(
                        line_no + 1,
                        col,
                        format!("expected a degree, found '{piece}'"),
                    )
                })?;
                values.push(v);
            }
            col += piece.chars().count() + 1;
        }
    }
    if values.is_empty() {
        return Err(Error::parse(1, 1, "empty degree sequence"));
    }
    DegreeSequence::new(values)
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let _ = a.threads;
    let mut r = a.r;
    let d = match (&a.seq, &a.input) {
        (Some(s), _) => parse_sequence(s)?,
        (None, Some(input)) => {
            if let Some(s) = input.strip_prefix("seq:") {
                parse_sequence(s.trim_matches('"'))?
            } else if input.ends_with(".bhg") {
                let h = load(Path::new(input), parse_bhg)?;
                if r.is_none() {
                    r = h.uniformity();
                }
                h.degree_sequence()
            } else {
                load(Path::new(input), parse_sequence)?
            }
        }
        (None, None) => return Err(Error::precondition("no input")),
    };
    let report = conditions::check(a.theorem.into(), &d, r, a.force)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        writeln!(out, "sequence={d}")?;
        write!(out, "{report}")?;
    }
    Ok(if report.satisfied {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = constructions::ConstructionSpec::new(a.family.into(), a.n, a.r, a.k)?;
    if a.predict {
        writeln!(out, "{}", spec.predicted_degree_sequence())?;
        return Ok(EXIT_OK);
    }
    let h = spec.build()?;
    let text = write_bhg(&h);
    match a.out {
        Some(path) => {
            std::fs::write(&path, text)?;
            writeln!(
                out,
                "wrote {} ({} vertices, {} edges)",
                path.display(),
                h.n(),
                h.edge_count()
            )?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let _ = a.threads;
    let h = load(&a.file, parse_bhg)?;
    let time_limit = match a.time_limit {
        Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(Error::precondition(format!("bad time limit {s}"))),
        None => None,
    };
    let budget = SearchBudget::new(a.budget_nodes, time_limit, 0)?;
    let report = find_hamiltonian_berge_cycle(&h, &budget)?;
    let cert = report
        .outcome
        .cycle()
        .map(|c| Certificate::from_cycle(&h, c));
    if let (Some(path), Some(cert)) = (&a.certificate, &cert) {
        std::fs::write(path, cert.to_json()? + "\n")?;
    }
    if a.json {
        let doc = serde_json::json!({
            "outcome": report.outcome.label(),
            "nodes": report.nodes,
            "certificate": cert,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "outcome={}", report.outcome)?;
        writeln!(out, "nodes={}", report.nodes)?;
        if let Some(c) = report.outcome.cycle() {
            writeln!(out, "cycle={c}")?;
        }
    }
    Ok(match report.outcome {
        Outcome::Cycle(_) => EXIT_OK,
        Outcome::NoneExists => EXIT_NEGATIVE,
        Outcome::Unknown => EXIT_UNKNOWN,
    })
}

/// Parses `v,e,v,...,v`; edge tokens may carry an `e` prefix.
pub fn parse_path(text: &str) -> Result<BergePath> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut col = 1;
    for (i, tok) in text.split(',').enumerate() {
        let t = tok.trim();
        let digits = if i % 2 == 1 {
            t.strip_prefix('e').unwrap_or(t)
        } else {
            t
        };
        let value = digits
            .parse::<usize>()
            .map_err(|_| Error::parse(1, col, format!("expected a number, found '{t}'")))?;
        if i % 2 == 0 {
            vertices.push(value);
        } else {
            edges.push(value);
        }
        col += tok.chars().count() + 1;
    }
    if vertices.len() != edges.len() + 1 {
        return Err(Error::parse(
            1,
            col.saturating_sub(1).max(1),
            "a path must end with a vertex",
        ));
    }
    Ok(BergePath::new(vertices, edges))
}

fn rotate(a: RotateArgs, out: &mut dyn Write) -> Result<i32> {
    let h = load(&a.file, parse_bhg)?;
    let p = parse_path(&a.path)?;
    verify_berge_path(&h, &p).map_err(|v| Error::precondition(format!("not a Berge path: {v}")))?;
    let state = rotation_closure_with_limit(&h, &p, a.limit)?;
    let claim = state.claim_one_set(&h);
    let holds = claim.is_subset(state.reachable_ends);
    if a.json {
        let witnesses: Vec<_> = state
            .witnesses()
            .map(|(v, w)| serde_json::json!({ "start": v, "path": w }))
            .collect();
        let doc = serde_json::json!({
            "fixed_end": state.fixed_end,
            "reachable_ends": state.reachable_ends.to_vec(),
            "prefix_bound": state.prefix_bound,
            "claim_one_set": claim.to_vec(),
            "claim_one_holds": holds,
            "witnesses": witnesses,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "fixed_end={}", state.fixed_end)?;
        writeln!(out, "reachable_ends={}", state.reachable_ends)?;
        for (v, w) in state.witnesses() {
            writeln!(out, "witness {v}: {w}")?;
        }
        writeln!(out, "prefix_bound={}", state.prefix_bound)?;
        writeln!(out, "claim_one_set={claim}")?;
        writeln!(out, "claim_one_holds={holds}")?;
    }
    Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn campaign(c: CampaignCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (mut cfg, a) = match c {
        CampaignCommand::Verify(a) => {
            let theorem: Theorem = a.theorem.into();
            let mut cfg = CampaignConfig::verify(theorem, a.n, a.r, a.samples, a.seed);
            if let harness::CampaignKind::Verify { force, .. } = &mut cfg.kind {
                *force = theorem == Theorem::NonUniform && a.n <= 40 && a.force;
            }
            (cfg, a)
        }
        CampaignCommand::Sharpness(a) => (
            CampaignConfig::sharpness(a.family.map(Into::into), a.n, a.r, a.k),
            a,
        ),
        CampaignCommand::Conjecture(a) => {
            let r = a.r.ok_or_else(|| Error::precondition("--r is required"))?;
            (CampaignConfig::conjecture(a.n, r, a.samples, a.seed), a)
        }
        CampaignCommand::Oracle(a) => {
            let grid = vec![GridPoint {
                n: a.n,
                r: Some(a.r.unwrap_or(2)),
            }];
            (CampaignConfig::oracle(grid, a.samples, a.seed), a)
        }
    };
    cfg.budget = SearchBudget::new(a.budget_nodes, None, 0)?;
    cfg.threads = a.threads;
    let report = harness::run_campaign(&cfg)?;
    let text = if a.json {
        report.to_json()? + "\n"
    } else {
        report.to_string()
    };
    match &a.report {
        Some(path) => {
            std::fs::write(path, &text)?;
            write_summary(&report, out)?;
        }
        None => write!(out, "{text}")?,
    }
    for x in &report.counterexamples {
        writeln!(
            err,
            "COUNTEREXAMPLE: trial {} satisfies {} but has no Hamiltonian Berge cycle (suspect: {})",
            x.trial, x.theorem, x.suspect
        )?;
    }
    Ok(if report.counts.fail > 0 {
        EXIT_NEGATIVE
    } else if report.counts.unknown > 0 {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    })
}

fn write_summary(report: &CampaignReport, out: &mut dyn Write) -> Result<()> {
    let c = report.counts;
    writeln!(
        out,
        "trials={} pass={} fail={} unknown={} vacuous={} counterexamples={}",
        c.total(),
        c.pass,
        c.fail,
        c.unknown,
        c.vacuous,
        report.counterexamples.len()
    )?;
    Ok(())
}

fn verify_cert(a: VerifyCertArgs, out: &mut dyn Write) -> Result<i32> {
    let cert = load(&a.certificate, Certificate::from_json)?;
    let h: Option<Hypergraph> = a
        .hypergraph
        .as_deref()
        .map(|p| load(p, parse_bhg))
        .transpose()?;
    match cert.verify(h.as_ref()) {
        Ok(()) => {
            writeln!(
                out,
                "valid {:?} certificate on {} vertices",
                cert.kind, cert.n
            )?;
            Ok(EXIT_OK)
        }
        Err(why) => {
            writeln!(out, "invalid: {why}")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bergeham").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_inline_sequence() {
        let (code, out, _) = run_capture(&[
            "check",
            "--theorem",
            "r-uniform",
            "--r",
            "3",
            "seq:\"6 6 6 6 6 18 18 18 18\"",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("condition-2"), "{out}");
        assert!(out.contains("i=4"), "{out}");
        let (code, _, _) = run_capture(&["check", "--theorem", "posa", "--seq", "2 2 2"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["check", "--seq", "2 2 2", "seq:2 2 2"]).0, 64);
        assert_eq!(run_capture(&["check"]).0, 64);
        assert_eq!(run_capture(&["frobnicate"]).0, 64);
        assert_eq!(
            run_capture(&["check", "--theorem", "posa", "--seq", "3 2 2"]).0,
            64
        );
        assert_eq!(
            run_capture(&["check", "--seq", "6 6 6 6 6 18 18 18 18"]).0,
            64
        );
        assert_eq!(run_capture(&["--help"]).0, 0);
        assert_eq!(run_capture(&["--version"]).0, 0);
    }

    #[test]
    fn sequence_parsing() {
        assert_eq!(parse_sequence("(1,2, 3)").unwrap().values(), &[1, 2, 3]);
        match parse_sequence("1 2 x") {
            Err(Error::Parse {
                line: 1, column: 5, ..
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn path_parsing() {
        let p = parse_path("0,e3,1,4,2").unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.edges, vec![3, 4]);
        assert!(parse_path("0,e3").is_err());
        assert!(parse_path("0,x,1").is_err());
    }

    #[test]
    fn generate_predict() {
        let (code, out, _) = run_capture(&[
            "generate",
            "--family",
            "h2",
            "--n",
            "9",
            "--r",
            "3",
            "--k",
            "4",
            "--predict",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(6,6,6,6,6,18,18,18,18)");
    }
}
