//! `crsym`: exact checks for symmetric CR geometries of hypersurface type.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crsym::builtins;
use crsym::cralgebra::{check_symmetric, search, CrError, SearchVerdict, Verdict};
use crsym::extensions::{check_extension, CheckOutcome};
use crsym::io::{
    self, choice_from_json, cr_from_json, extension_from_json, extension_to_file, parse_vector_text, scalar_repr,
    to_canonical, ScalarRepr, SignatureRepr,
};
use crsym::linalg::AffineSpace;
use crsym::regression::{verify_builtin, DEFAULT_SEED};
use crsym::scalars::{is_valid_radicand, Scalar};
use crsym::sualg::Signature;
use crsym::symmetries::{classify_pair, find_symmetries, verify_solution_set, Mode, NullLinePair};

#[derive(Parser, Debug)]
#[command(name = "crsym", version, about = "Exact checks for symmetric CR geometries")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for randomized property suites.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Preserve,
    Swap,
    Any,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symmetries s_(Z,z) of the standard model preserving or swapping two null lines.
    FindSymmetries {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Radicand of the scalar field ℚ(i, √d).
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// First null vector, comma separated, e.g. "i,sqrt(2),0,0,0,-i".
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Second null vector.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Any)]
        mode: ModeArg,
    },
    /// Algebraic conditions on an extension file.
    CheckExtension { file: PathBuf },
    /// Symmetry test for a CR algebra file.
    CheckCralgebra {
        file: PathBuf,
        /// Basis choice file.
        #[arg(long, conflicts_with = "search")]
        choice: Option<PathBuf>,
        /// Search over adapted bases (dim 𝔨 ≤ 4).
        #[arg(long)]
        search: bool,
    },
    /// Emit the data of a built-in example and optionally run its suite.
    Builtin {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(builtins::NAMES))]
        name: String,
        #[arg(long)]
        verify: bool,
        /// Directory for the emitted files; printed to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Usage or parse failure, reported with exit code 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

fn usage<E: Into<anyhow::Error>>(e: E) -> UsageError {
    UsageError(e.into())
}

#[derive(Debug, Default, Serialize)]
struct Report {
    command: Vec<String>,
    passed: bool,
    checks: Vec<Value>,
    #[serde(flatten)]
    data: serde_json::Map<String, Value>,
    #[serde(skip)]
    text: Vec<String>,
}

impl Report {
    fn new(command: Vec<String>) -> Self {
        Report { command, passed: true, ..Default::default() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn check(&mut self, c: &CheckOutcome) {
        if c.passed == Some(false) {
            self.passed = false;
        }
        let status = match c.passed {
            Some(true) => "pass",
            Some(false) => "fail",
            None => "info",
        };
        self.checks.push(json!({"name": c.name, "status": status, "detail": c.detail}));
        self.text.push(c.to_string());
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    fn emit(&self, format: Format) {
        match format {
            Format::Text => {
                println!("$ {}", self.command.join(" "));
                for l in &self.text {
                    println!("{l}");
                }
                println!("result: {}", if self.passed { "PASS" } else { "FAIL" });
            }
            Format::Machine => print!("{}", to_canonical(self)),
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(usage)
}

fn vec_text(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))
}

fn vec_repr(v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(scalar_repr).collect()
}

fn param_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=n).map(|k| format!("a{k}")).collect();
    names.extend((1..=n).map(|k| format!("b{k}")));
    names.push("z".into());
    names
}

fn describe_set(report: &mut Report, mode: Mode, set: &AffineSpace, n: usize) -> Value {
    let Some(p) = &set.particular else {
        report.line(format!("{mode}: EMPTY"));
        return json!({"mode": mode.to_string(), "empty": true});
    };
    let zi = 2 * n;
    let z_free = set.directions.iter().any(|d| !d[zi].is_zero());
    let involutive = z_free || p[zi].is_zero();
    let z_status = if z_free { "z free".to_string() } else { format!("z = {}", p[zi]) };
    report.line(format!("{mode}: affine set of dimension {}", set.directions.len()));
    report.line(format!("  parameters {}", param_names(n).join(", ")));
    report.line(format!("  particular {}", vec_text(p)));
    for d in &set.directions {
        report.line(format!("  direction  {}", vec_text(d)));
    }
    report.line(format!("  {z_status}; involutive solutions {}", if involutive { "exist" } else { "do not exist" }));
    json!({
        "mode": mode.to_string(),
        "empty": false,
        "dimension": set.directions.len(),
        "parameters": param_names(n),
        "particular": vec_repr(p),
        "directions": set.directions.iter().map(|d| vec_repr(d)).collect::<Vec<_>>(),
        "z_free": z_free,
        "involutive_solutions": involutive,
    })
}

fn cmd_find_symmetries(
    report: &mut Report,
    (p, q, d): (usize, usize, u32),
    u: &str,
    v: &str,
    mode: ModeArg,
) -> Result<(), UsageError> {
    if !is_valid_radicand(d) {
        return Err(usage(anyhow!("--d {d} is not a square-free integer > 1")));
    }
    let sig = Signature::unordered(p, q).map_err(usage)?;
    let u = parse_vector_text(u, d).context("--u").map_err(usage)?;
    let v = parse_vector_text(v, d).context("--v").map_err(usage)?;
    let pair = NullLinePair::new(u, v, sig).map_err(usage)?;
    let case = classify_pair(&pair, sig);
    report.line(format!("case: {case}"));
    report.set("signature", SignatureRepr { p, q, d });
    report.set("case", case.to_string());
    let modes = match mode {
        ModeArg::Preserve => vec![Mode::Preserve],
        ModeArg::Swap => vec![Mode::Swap],
        ModeArg::Any => vec![Mode::Preserve, Mode::Swap],
    };
    let mut sets = Vec::new();
    for m in modes {
        let set = find_symmetries(&pair, m, sig).map_err(usage)?;
        sets.push(describe_set(report, m, &set, sig.n()));
        let ok = verify_solution_set(&set, &pair, m, sig).unwrap_or(false);
        report.check(&CheckOutcome::verdict(
            &format!("{m} sample points verified"),
            if ok { Ok(()) } else { Err("a sample point fails".into()) },
        ));
    }
    report.set("solutions", sets);
    Ok(())
}

fn cmd_check_extension(report: &mut Report, file: &Path) -> Result<(), UsageError> {
    let ext = extension_from_json(&read(file)?).map_err(usage)?;
    for c in check_extension(&ext) {
        report.check(&c);
    }
    Ok(())
}

fn cmd_check_cralgebra(report: &mut Report, file: &Path, choice: Option<&Path>, do_search: bool) -> Result<(), UsageError> {
    let cr = cr_from_json(&read(file)?).map_err(usage)?;
    if do_search {
        let r = match search(&cr) {
            Ok(r) => r,
            Err(e @ CrError::Degenerate(_)) => {
                report.check(&CheckOutcome::verdict("search", Err(e.to_string())));
                return Ok(());
            }
            Err(e) => return Err(usage(e)),
        };
        report.line(format!("unknowns: {}", r.unknowns.join(", ")));
        report.line("constraint system:");
        let mut eqs = Vec::new();
        for (label, p) in &r.equations {
            if !p.is_zero() {
                report.line(format!("  {label}: {p} = 0"));
                eqs.push(json!({"label": label, "degree": p.degree(), "equation": p.to_string()}));
            }
        }
        let mut cands = Vec::new();
        for c in &r.candidates {
            report.line(format!(
                "candidate levi {:?} complement {} representatives {}: {}",
                c.levi_signs,
                vec_text(&c.choice.complement),
                c.choice.representatives.iter().map(|v| vec_text(v)).collect::<Vec<_>>().join(" "),
                c.verdict
            ));
            cands.push(json!({
                "levi_signs": c.levi_signs,
                "choice": io::choice_to_file(&c.choice),
                "verdict": c.verdict.to_string(),
            }));
        }
        report.set("unknowns", &r.unknowns);
        report.set("equations", eqs);
        report.set("candidates", cands);
        let verdict = match r.verdict {
            SearchVerdict::Symmetric(k) => Ok(format!("{k} symmetric candidates")),
            SearchVerdict::NotSymmetric => Err("NotSymmetric".to_string()),
            SearchVerdict::Inconclusive => Err("Inconclusive: no candidate on the grid is symmetric".to_string()),
        };
        report.set("verdict", verdict.as_ref().map_or_else(|e| e.clone(), |s| s.clone()));
        report.check(&CheckOutcome::verdict("search", verdict.map(|_| ())));
        return Ok(());
    }
    let Some(choice) = choice else {
        return Err(usage(anyhow!("give --choice FILE or --search")));
    };
    let choice = choice_from_json(&read(choice)?).map_err(usage)?;
    let r = match check_symmetric(&cr, &choice) {
        Ok(r) => r,
        Err(e @ (CrError::Degenerate(_) | CrError::NotSubalgebra)) => {
            report.check(&CheckOutcome::verdict("cr algebra", Err(e.to_string())));
            return Ok(());
        }
        Err(e) => return Err(usage(e)),
    };
    report.line(format!("dim 𝔩 = {}, dim H = {}", r.lh.l_basis.len(), r.lh.h_basis.len()));
    report.line(format!("Levi signature {:?}", r.lh.levi_signature));
    report.line(format!("injectivity: {}", r.injectivity));
    report.line(format!("ν automorphism: direct {}, via curvature {}", r.nu.direct, r.nu.via_curvature));
    for n in &r.notes {
        report.line(format!("note: {n}"));
    }
    report.set("levi_signature", r.lh.levi_signature);
    report.set("injectivity", r.injectivity.to_string());
    report.set("nu", json!({"direct": r.nu.direct, "via_curvature": r.nu.via_curvature}));
    report.set("notes", &r.notes);
    report.set("verdict", r.verdict.to_string());
    match &r.verdict {
        Verdict::Symmetric(ext) => {
            report.check(&CheckOutcome::verdict("verdict", Ok(())));
            report.line("extension:");
            report.line(io::extension_to_json(ext).trim_end());
            report.set("extension", extension_to_file(ext));
        }
        other => report.check(&CheckOutcome::verdict("verdict", Err(other.to_string()))),
    }
    Ok(())
}

#[derive(Serialize)]
struct LinePairFile {
    label: String,
    signature: SignatureRepr,
    u: Vec<ScalarRepr>,
    v: Vec<ScalarRepr>,
}

fn builtin_files(name: &str) -> Vec<(String, String)> {
    let mut files = Vec::new();
    if let Some(ext) = builtins::extension_by_name(name) {
        files.push((format!("{name}.json"), io::extension_to_json(&ext)));
    }
    if name == "e2" {
        files.push(("e2.cr.json".into(), io::cr_to_json(&builtins::e2_cr())));
        files.push(("e2.choice.json".into(), io::choice_to_json(&builtins::e2_choice())));
    }
    let pairs = match name {
        "exam61" => builtins::exam61(),
        "exam62" => vec![builtins::exam62()],
        _ => Vec::new(),
    };
    for (k, ex) in pairs.iter().enumerate() {
        let f = LinePairFile {
            label: ex.label.into(),
            signature: SignatureRepr { p: ex.sig.p(), q: ex.sig.q(), d: 2 },
            u: vec_repr(&ex.u),
            v: vec_repr(&ex.v),
        };
        files.push((format!("{name}.pair{}.json", k + 1), to_canonical(&f)));
    }
    files
}

fn cmd_builtin(report: &mut Report, name: &str, verify: bool, out: Option<&Path>, seed: u64) -> Result<(), UsageError> {
    let files = builtin_files(name);
    let mut emitted = serde_json::Map::new();
    for (fname, content) in &files {
        match out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(usage)?;
                let path = dir.join(fname);
                fs::write(&path, content).with_context(|| format!("cannot write {}", path.display())).map_err(usage)?;
                report.line(format!("wrote {}", path.display()));
            }
            None => {
                report.line(format!("== {fname} =="));
                report.line(content.trim_end());
            }
        }
        emitted.insert(fname.clone(), serde_json::from_str(content).expect("emitted JSON parses"));
    }
    report.set("files", emitted);
    if verify {
        for c in verify_builtin(name, seed).expect("known builtin") {
            report.check(&c);
        }
    }
    Ok(())
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), UsageError> {
    match &cli.command {
        Command::FindSymmetries { p, q, d, u, v, mode } => cmd_find_symmetries(report, (*p, *q, *d), u, v, *mode),
        Command::CheckExtension { file } => cmd_check_extension(report, file),
        Command::CheckCralgebra { file, choice, search } => {
            cmd_check_cralgebra(report, file, choice.as_deref(), *search)
        }
        Command::Builtin { name, verify, out } => cmd_builtin(report, name, *verify, out.as_deref(), cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::iter::once("crsym".to_string()).chain(std::env::args().skip(1)).collect();
    let mut report = Report::new(echo);
    match run(&cli, &mut report) {
        Ok(()) => {
            report.emit(cli.format);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
