//! `homind` command-line front end.
//!
//! Exit codes: 0 verdict computed, 1 verdict is a failure or violation,
//! 2 usage or input error, 3 resource bound exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use homind_core::acceptance;
use homind_core::closure::{
    cancellation_probe, finite_generating_subclass, hd_closed_check, homind_decide, in_closure, parse_class,
    witness_pair, GraphClassSpec, HdVerdict, HomIndVerdict, SpanCertificate, WitnessOptions,
};
use homind_core::fo::{check_self_complementarity, parse_corpus, parse_formula};
use homind_core::graph::parse_graph;
use homind_core::hom::hom;
use homind_core::identities::{expand, group, verify_identity, Expansion, IdentityKind};
use homind_core::{Error, Graph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "homind", version, about = "Exact homomorphism indistinguishability laboratory")]
struct Cli {
    /// One JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homomorphism counts.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Hom-count identities.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Homomorphism distinguishing closures of essentially finite classes.
    #[command(subcommand)]
    Closure(ClosureCmd),
    /// Homomorphism indistinguishability over a class.
    #[command(subcommand)]
    Homind(HomindCmd),
    /// Cancellation of categorical factors.
    #[command(subcommand)]
    Cancel(CancelCmd),
    /// First-order logic and the complement transform.
    #[command(subcommand)]
    Fo(FoCmd),
    /// Runs the acceptance suite.
    Selftest {
        /// Criterion ids to run; all by default.
        ids: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum HomCmd {
    /// Prints hom(F, G).
    Count { f: PathBuf, g: PathBuf },
}

#[derive(Subcommand, Debug)]
enum IdentityCmd {
    /// Prints the terms of an expansion.
    Expand {
        name: String,
        f: PathBuf,
        /// Group isomorphic terms.
        #[arg(long)]
        group: bool,
    },
    /// Compares an expansion with the direct count.
    Verify {
        name: String,
        f: PathBuf,
        g: PathBuf,
        h: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ClosureCmd {
    /// Decides whether K is in the closure.
    Member { class: PathBuf, k: PathBuf },
    /// Semi-decides whether the class is closed.
    HdCheck {
        class: PathBuf,
        #[arg(long)]
        bound: usize,
    },
    /// Builds graphs separating K from the class.
    Witness {
        class: PathBuf,
        k: PathBuf,
        #[command(flatten)]
        seed: Seed,
    },
}

#[derive(Args, Debug)]
struct Seed {
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum HomindCmd {
    /// Decides G and H are indistinguishable by the class.
    Decide { class: PathBuf, g: PathBuf, h: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CancelCmd {
    /// Compares the colourability criterion with random sampling.
    Check {
        class: PathBuf,
        k: PathBuf,
        #[command(flatten)]
        seed: Seed,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FoCmd {
    /// Prints the complement transform of a formula.
    Complement { formula: String },
    /// Checks the complement transform exhaustively on small graphs.
    Check {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long = "max-n", default_value_t = 4)]
        max_n: usize,
    },
}

/// A command result: text lines for humans, one JSON object for machines.
struct Report {
    command: &'static str,
    verdict: String,
    certificate: Option<Value>,
    values: Option<Value>,
    text: Vec<String>,
    exit: i32,
}

impl Report {
    fn new(command: &'static str, verdict: impl Into<String>) -> Self {
        Report {
            command,
            verdict: verdict.into(),
            certificate: None,
            values: None,
            text: Vec::new(),
            exit: EXIT_OK,
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.text.push(s.into());
        self
    }

    fn values(mut self, v: Value) -> Self {
        self.values = Some(v);
        self
    }

    fn certificate(mut self, v: Value) -> Self {
        self.certificate = Some(v);
        self
    }

    fn exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }

    fn json(&self) -> Value {
        let mut obj = json!({ "command": self.command, "verdict": self.verdict });
        if let Some(c) = &self.certificate {
            obj["certificate"] = c.clone();
        }
        if let Some(v) = &self.values {
            obj["values"] = v.clone();
        }
        obj
    }
}

/// Failure before a verdict: bad input or an exhausted bound.
struct Failure {
    message: String,
    exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            exit: if e.is_resource_bound() { EXIT_RESOURCE } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        exit: EXIT_USAGE,
    })
}

fn in_file<T>(path: &Path, r: homind_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    in_file(path, parse_graph(text.trim_end()))
}

fn class(path: &Path) -> Result<GraphClassSpec, Failure> {
    let text = read(path)?;
    in_file(path, parse_class(&text))
}

fn identity(name: &str) -> Result<IdentityKind, Failure> {
    name.parse::<IdentityKind>().map_err(Failure::from)
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    strings(xs).join(" ")
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let json = cli.json;
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(report) => {
            let _ = if json {
                writeln!(out, "{}", report.json())
            } else {
                report.text.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            report.exit
        }
        Err(failure) => {
            if json {
                let obj = json!({
                    "command": name,
                    "verdict": "ERROR",
                    "values": { "message": failure.message, "exit": failure.exit },
                });
                let _ = writeln!(out, "{obj}");
            }
            let _ = writeln!(err, "error: {}", failure.message);
            failure.exit
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hom(HomCmd::Count { .. }) => "hom count",
        Command::Identity(IdentityCmd::Expand { .. }) => "identity expand",
        Command::Identity(IdentityCmd::Verify { .. }) => "identity verify",
        Command::Closure(ClosureCmd::Member { .. }) => "closure member",
        Command::Closure(ClosureCmd::HdCheck { .. }) => "closure hd-check",
        Command::Closure(ClosureCmd::Witness { .. }) => "closure witness",
        Command::Homind(HomindCmd::Decide { .. }) => "homind decide",
        Command::Cancel(CancelCmd::Check { .. }) => "cancel check",
        Command::Fo(FoCmd::Complement { .. }) => "fo complement",
        Command::Fo(FoCmd::Check { .. }) => "fo check",
        Command::Selftest { .. } => "selftest",
    }
}

fn dispatch(command: Command) -> Result<Report, Failure> {
    let name = command_name(&command);
    match command {
        Command::Hom(HomCmd::Count { f, g }) => {
            let count = hom(&graph(&f)?, &graph(&g)?);
            Ok(Report::new(name, "OK")
                .line(count.to_string())
                .values(json!({ "count": count.to_string() })))
        }
        Command::Identity(IdentityCmd::Expand { name: id, f, group: grouped }) => {
            let kind = identity(&id)?;
            let mut e = expand(kind, &graph(&f)?)?;
            if grouped {
                e = group(&e)?;
            }
            let terms: Vec<Value> = match &e {
                Expansion::Single(lc) => lc
                    .terms()
                    .iter()
                    .map(|(g, c)| json!({ "coeff": c.to_string(), "graph": g.to_string() }))
                    .collect(),
                Expansion::Pair(lc) => lc
                    .terms()
                    .iter()
                    .map(|(l, r, c)| json!({ "coeff": c.to_string(), "left": l.to_string(), "right": r.to_string() }))
                    .collect(),
            };
            let mut report = Report::new(name, "OK").values(json!({ "identity": kind.name(), "terms": terms }));
            report.text = e.to_string().lines().map(String::from).collect();
            Ok(report)
        }
        Command::Identity(IdentityCmd::Verify { name: id, f, g, h }) => {
            let kind = identity(&id)?;
            let h = h.as_deref().map(graph).transpose()?;
            let check = verify_identity(kind, &graph(&f)?, &graph(&g)?, h.as_ref())?;
            let verdict = if check.holds { "OK" } else { "FAIL" };
            Ok(Report::new(name, verdict)
                .line(format!("{verdict} lhs={} rhs={}", check.lhs, check.rhs))
                .values(json!({ "lhs": check.lhs.to_string(), "rhs": check.rhs.to_string() }))
                .exit(if check.holds { EXIT_OK } else { EXIT_VERDICT }))
        }
        Command::Closure(ClosureCmd::Member { class: c, k }) => closure_member(name, &class(&c)?, &graph(&k)?),
        Command::Closure(ClosureCmd::HdCheck { class: c, bound }) => hd_check(name, &class(&c)?, bound),
        Command::Closure(ClosureCmd::Witness { class: c, k, seed }) => {
            witness(name, &class(&c)?, &graph(&k)?, seed.seed)
        }
        Command::Homind(HomindCmd::Decide { class: c, g, h }) => {
            let spec = class(&c)?;
            let (g, h) = (graph(&g)?, graph(&h)?);
            let subclass = finite_generating_subclass(&spec)?;
            let verdict = homind_decide(&spec, &g, &h)?;
            let mut report = match &verdict {
                HomIndVerdict::Equivalent => Report::new(name, "EQUIVALENT").line("RESULT EQUIVALENT"),
                HomIndVerdict::Distinguisher { f, hom_g, hom_h } => Report::new(name, "DISTINGUISHED")
                    .line("RESULT DISTINGUISHED")
                    .line(format!("distinguisher\t{f}\t{hom_g}\t{hom_h}"))
                    .certificate(json!({
                        "distinguisher": f.to_string(),
                        "hom_g": hom_g.to_string(),
                        "hom_h": hom_h.to_string(),
                    })),
            };
            for f in &subclass {
                report = report.line(format!("subclass\t{f}"));
            }
            Ok(report.values(json!({ "subclass": strings(&subclass) })))
        }
        Command::Cancel(CancelCmd::Check { class: c, k, seed, trials, max_n }) => {
            let spec = class(&c)?;
            let k = graph(&k)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
            let r = cancellation_probe(&spec, &k, trials, max_n, &mut rng)?;
            let verdict = if r.agreement { "PASS" } else { "FAIL" };
            let mut report = Report::new(name, verdict)
                .line(format!("RESULT {verdict}"))
                .line(format!("admits\t{}", bool_word(r.admits)))
                .line(format!("pairs\t{}", r.pairs))
                .line(format!("lemma\t{}", if r.passes() { "holds" } else { "violated" }));
            let pair = |p: &Option<(Graph, Graph)>| p.as_ref().map(|(a, b)| json!([a.to_string(), b.to_string()]));
            if let Some((a, b)) = &r.counterexample {
                report = report.line(format!("counterexample\t{a}\t{b}"));
            }
            if let Some((a, b)) = &r.lemma_violation {
                report = report.line(format!("lemma-violation\t{a}\t{b}"));
            }
            Ok(report
                .values(json!({
                    "admits": r.admits,
                    "pairs": r.pairs,
                    "agreement": r.agreement,
                    "counterexample": pair(&r.counterexample),
                    "lemma_violation": pair(&r.lemma_violation),
                }))
                .exit(if r.agreement { EXIT_OK } else { EXIT_VERDICT }))
        }
        Command::Fo(FoCmd::Complement { formula }) => {
            let phi = parse_formula(&formula)?;
            let bar = phi.complement();
            Ok(Report::new(name, "OK")
                .line(bar.to_string())
                .values(json!({ "formula": phi.to_string(), "complement": bar.to_string() })))
        }
        Command::Fo(FoCmd::Check { corpus, max_n }) => {
            let text = read(&corpus)?;
            let formulas = in_file(&corpus, parse_corpus(&text))?;
            let r = check_self_complementarity(&formulas, max_n)?;
            let verdict = if r.passes() { "PASS" } else { "FAIL" };
            let mut report = Report::new(name, verdict)
                .line(format!("RESULT {verdict}"))
                .line(format!("formulas\t{}", r.formulas))
                .line(format!("graphs\t{}", r.graphs))
                .line(format!("checks\t{}", r.checks));
            let mut values = json!({ "formulas": r.formulas, "graphs": r.graphs, "checks": r.checks });
            if let Some(c) = &r.counterexample {
                let assignment: Vec<String> = c.assignment.iter().map(|(x, v)| format!("{x}={v}")).collect();
                report = report.line(format!(
                    "counterexample\t{}\t{}\t{}",
                    c.formula,
                    c.graph,
                    assignment.join(",")
                ));
                values["counterexample"] = json!({
                    "formula": c.formula.to_string(),
                    "graph": c.graph.to_string(),
                    "assignment": c.assignment,
                });
            }
            Ok(report
                .values(values)
                .exit(if r.passes() { EXIT_OK } else { EXIT_VERDICT }))
        }
        Command::Selftest { ids } => {
            let selected: Vec<&str> = if ids.is_empty() {
                acceptance::CRITERIA.to_vec()
            } else {
                for id in &ids {
                    if !acceptance::CRITERIA.contains(&id.as_str()) {
                        return Err(Failure {
                            message: format!("unknown criterion `{id}`"),
                            exit: EXIT_USAGE,
                        });
                    }
                }
                ids.iter().map(String::as_str).collect()
            };
            let outcomes: Vec<acceptance::Outcome> =
                selected.iter().map(|id| acceptance::run(id).expect("known criterion")).collect();
            let failing = outcomes.iter().filter(|o| !o.pass).count();
            let verdict = if failing == 0 { "PASS" } else { "FAIL" };
            let mut report = Report::new(name, verdict);
            for o in &outcomes {
                report = report.line(o.to_string());
            }
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "title": o.title,
                        "pass": o.pass,
                        "detail": o.detail,
                        "seconds": o.elapsed.as_secs_f64(),
                    })
                })
                .collect();
            Ok(report
                .line(format!("RESULT {verdict} ({failing} failing of {})", outcomes.len()))
                .values(json!({ "criteria": rows }))
                .exit(if failing == 0 { EXIT_OK } else { EXIT_VERDICT }))
        }
    }
}

fn closure_member(name: &'static str, spec: &GraphClassSpec, k: &Graph) -> Result<Report, Failure> {
    let v = in_closure(spec, k)?;
    let verdict = if v.member { "IN" } else { "OUT" };
    let mut report = Report::new(name, verdict).line(format!("RESULT {verdict}"));
    for c in v.basis.components() {
        report = report.line(format!("basis\t{c}"));
    }
    for (f, x) in v.restricted.generators().iter().zip(&v.generator_vectors) {
        report = report.line(format!("generator\t{f}\t{x}"));
    }
    report = report.line(format!("target\t{}", v.target));
    let certificate = match &v.certificate {
        SpanCertificate::In { alpha } => {
            report = report.line(format!("alpha\t{}", joined(alpha)));
            json!({ "kind": "IN", "alpha": strings(alpha) })
        }
        SpanCertificate::Out { z } => {
            report = report.line(format!("z\t{}", joined(z)));
            json!({ "kind": "OUT", "z": strings(z) })
        }
    };
    let generators: Vec<Value> = v
        .restricted
        .generators()
        .iter()
        .zip(&v.generator_vectors)
        .map(|(f, x)| json!({ "graph": f.to_string(), "vector": x.entries() }))
        .collect();
    Ok(report.certificate(certificate).values(json!({
        "basis": strings(v.basis.components()),
        "generators": generators,
        "target": v.target.entries(),
    })))
}

fn hd_check(name: &'static str, spec: &GraphClassSpec, bound: usize) -> Result<Report, Failure> {
    Ok(match hd_closed_check(spec, bound)? {
        HdVerdict::Closed { dimensions } => {
            let mut report = Report::new(name, "CLOSED").line("RESULT CLOSED");
            let mut rows = Vec::new();
            for (support, dim) in &dimensions {
                let s = format!("{{{}}}", strings(support).join(","));
                report = report.line(format!("support\t{s}\tdim\t{dim}"));
                rows.push(json!({ "support": support, "dim": dim }));
            }
            report.certificate(json!({ "dimensions": rows }))
        }
        HdVerdict::Violation { k, vector } => Report::new(name, "VIOLATION")
            .line("RESULT VIOLATION")
            .line(format!("k\t{k}"))
            .line(format!("vector\t{vector}"))
            .certificate(json!({ "k": k.to_string(), "vector": vector.entries() }))
            .exit(EXIT_VERDICT),
        HdVerdict::NoViolationUpTo(b) => Report::new(name, "NO_VIOLATION_UP_TO")
            .line(format!("RESULT NO_VIOLATION_UP_TO {b}"))
            .values(json!({ "bound": b })),
    })
}

fn witness(name: &'static str, spec: &GraphClassSpec, k: &Graph, seed: u64) -> Result<Report, Failure> {
    let w = match witness_pair(spec, k, &WitnessOptions::with_seed(seed)) {
        Ok(w) => w,
        Err(Error::InClosure) => {
            return Ok(Report::new(name, "IN_CLOSURE")
                .line("RESULT IN_CLOSURE")
                .exit(EXIT_VERDICT))
        }
        Err(e) => return Err(e.into()),
    };
    let mut report = Report::new(name, "WITNESS").line("RESULT WITNESS");
    for c in &w.basis {
        report = report.line(format!("basis\t{c}"));
    }
    report = report.line(format!("z\t{}", joined(&w.z)));
    for p in &w.probes {
        report = report.line(format!("probe\t{p}"));
    }
    report = report
        .line(format!("det\t{}", w.determinant))
        .line(format!("t\t{}", w.t))
        .line(format!("lambda\t{}", w.lambda))
        .line(format!("H\t{}", w.h))
        .line(format!("H'\t{}", w.h_prime));
    let mut checks = Vec::new();
    for f in spec.generators() {
        let (a, b) = (w.h.hom_from(f), w.h_prime.hom_from(f));
        report = report.line(format!("check\t{f}\t{a}\t{b}"));
        checks.push(json!({ "graph": f.to_string(), "hom_h": a.to_string(), "hom_h_prime": b.to_string() }));
    }
    report = report.line(format!("hom_K\t{}\t{}", w.hom_k.0, w.hom_k.1));
    let parts = |g: &homind_core::closure::WitnessGraph| -> Value {
        json!({
            "parts": g.parts.iter().map(|(a, x)| json!({ "count": a.to_string(), "graph": x.to_string() })).collect::<Vec<_>>(),
            "times": g.times.as_ref().map(|x| x.to_string()),
        })
    };
    let z: Vec<BigInt> = w.z.clone();
    Ok(report
        .certificate(json!({
            "z": strings(&z),
            "probes": strings(&w.probes),
            "determinant": w.determinant.to_string(),
            "t": w.t.to_string(),
            "lambda": w.lambda.to_string(),
            "h": parts(&w.h),
            "h_prime": parts(&w.h_prime),
        }))
        .values(json!({
            "basis": strings(&w.basis),
            "generator_checks": checks,
            "hom_k": [w.hom_k.0.to_string(), w.hom_k.1.to_string()],
        })))
}
