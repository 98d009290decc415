//! Command-line front end: argument parsing, the individual commands, and
//! the [`RunReport`] every command returns.
//!
//! Exit codes: `0` the command finished with a definite answer, `2` it
//! finished but the answer is inconclusive, `1` bad input or an error.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use algzero::algebra::{hermitian_subspace, AlgebraFile, AlgebraKind};
use algzero::fixtures;
use algzero::groebner::Certificate;
use algzero::parser::{parse_element, parse_maps, print_map};
use algzero::poly::scalarize;
use algzero::solve::{
    certify_nondegenerate, find_common_zero, mapping_degree_estimate, numeric_nondegeneracy_min, theorem_verdicts,
    two_monomial_guarantee, Method, SolveConfig, SolveReport,
};
use algzero::{Algebra, BuiltinSpec, Error, PolynomialMap, Subspace};

pub const EXIT_DEFINITE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Parser, Debug, Clone)]
#[command(name = "algzero", version, about = "Zeros of polynomial maps over finite-dimensional algebras")]
pub struct Cli {
    /// Print a machine-readable report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Degree, homogeneous parts, non-degeneracy of the leading forms, and
    /// which existence results apply.
    Check(Input),
    /// Look for a common zero numerically and verify it in the algebra.
    Solve {
        #[command(flatten)]
        input: Input,
        /// homotopy, newton or auto.
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
    },
    /// Exact certificate that the scalarized system has no real zero.
    Certify {
        #[command(flatten)]
        input: Input,
        /// Certify over the reals (the only mode; accepted for clarity).
        #[arg(long)]
        real: bool,
    },
    /// Recompute the built-in quaternion and matrix examples end to end.
    WorkedExample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Signed preimage count of the leading forms at a random regular value.
    DegreeEstimate(Input),
    /// Information about an algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCommand,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum AlgebraCommand {
    /// Dimension, basis, classification and multiplication table.
    Info {
        #[arg(long, default_value = "quaternions")]
        algebra: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Builtin name (quaternions, octonions, mat:M, cmat:M, cmat-as-real:M, ...) or a JSON file.
    #[arg(long, default_value = "quaternions")]
    pub algebra: String,
    /// Map text, or @path to read it from a file. Separate several maps with `;`.
    #[arg(long, required = true)]
    pub map: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub nvars: usize,
    /// `full` (default), `hermitian`, or basis elements separated by `;`.
    #[arg(long)]
    pub subspace: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Residual tolerance for accepting a zero.
    #[arg(long)]
    pub tol: Option<f64>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// What a command did, for printing as text or JSON.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub text: String,
    pub exit_code: i32,
}

impl RunReport {
    fn error(command: &str, config: Value, message: String) -> RunReport {
        RunReport {
            command: command.into(),
            config,
            results: json!({ "error": message }),
            text: format!("error: {message}\n"),
            exit_code: EXIT_ERROR,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "exit_code": self.exit_code,
        })
    }
}

/// Algebra, maps and subspace resolved from [`Input`].
pub struct Problem {
    pub algebra: Arc<Algebra>,
    pub maps: Vec<PolynomialMap>,
    pub subspace: Subspace,
}

pub fn load_algebra(spec: &str) -> Result<Arc<Algebra>, String> {
    if let Ok(b) = spec.parse::<BuiltinSpec>() {
        return b.build().map(Arc::new).map_err(|e| e.to_string());
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(format!("unknown algebra `{spec}` (not a builtin name or a file)"));
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
    let file = AlgebraFile::from_json(&text).map_err(|e| format!("{spec}: {e}"))?;
    file.build().map(Arc::new).map_err(|e| format!("{spec}: {e}"))
}

fn read_source(s: &str) -> Result<String, String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}")),
        None => Ok(s.to_string()),
    }
}

fn load_subspace(alg: &Arc<Algebra>, spec: Option<&str>) -> Result<Subspace, String> {
    match spec.map(str::trim) {
        None | Some("full") => Ok(Subspace::full(alg)),
        Some("hermitian") => match alg.kind() {
            AlgebraKind::ComplexMatrixAsReal { m } => hermitian_subspace(alg, *m).map_err(|e| e.to_string()),
            _ => Err("the hermitian subspace needs a cmat-as-real:M algebra".into()),
        },
        Some(list) => {
            let text = read_source(list)?;
            let basis = text
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_element(s, alg).map_err(|e| format!("subspace element `{}`: {e}", s.trim())))
                .collect::<Result<Vec<_>, _>>()?;
            Subspace::new(alg.dim(), basis).map_err(|e| e.to_string())
        }
    }
}

pub fn load_problem(input: &Input) -> Result<Problem, String> {
    let algebra = load_algebra(&input.algebra)?;
    let mut maps = Vec::new();
    for m in &input.map {
        let text = read_source(m)?;
        maps.extend(parse_maps(&text, algebra.clone(), input.nvars).map_err(|e| e.to_string())?);
    }
    let subspace = load_subspace(&algebra, input.subspace.as_deref())?;
    Ok(Problem { algebra, maps, subspace })
}

fn input_config(input: &Input) -> Value {
    json!({
        "algebra": input.algebra,
        "maps": input.map,
        "nvars": input.nvars,
        "subspace": input.subspace.as_deref().unwrap_or("full"),
        "seed": input.seed,
        "tol": input.tol,
    })
}

fn solve_config(input: &Input) -> SolveConfig {
    let mut cfg = SolveConfig::with_seed(input.seed);
    if let Some(t) = input.tol {
        cfg.tol_residual = t;
        cfg.verify_tol = t;
    }
    cfg
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> RunReport {
    match &cli.command {
        Command::Check(input) => with_problem("check", input, input_config(input), check),
        Command::Solve { input, method } => {
            let mut config = input_config(input);
            config["method"] = json!(method);
            let method = *method;
            with_problem("solve", input, config, move |p, i, c| solve(p, i, c, method))
        }
        Command::Certify { input, .. } => {
            let mut config = input_config(input);
            config["real"] = json!(true);
            with_problem("certify", input, config, certify)
        }
        Command::WorkedExample { seed } => worked_example(*seed),
        Command::DegreeEstimate(input) => with_problem("degree-estimate", input, input_config(input), degree_estimate),
        Command::Algebra { action: AlgebraCommand::Info { algebra } } => algebra_info(algebra),
    }
}

fn with_problem(
    command: &str,
    input: &Input,
    config: Value,
    f: impl FnOnce(&Problem, &Input, Value) -> RunReport,
) -> RunReport {
    match load_problem(input) {
        Ok(p) => {
            let mut report = f(&p, input, config);
            report.command = command.into();
            report
        }
        Err(e) => RunReport::error(command, config, e),
    }
}

fn report(config: Value, results: Value, text: String, exit_code: i32) -> RunReport {
    RunReport { command: String::new(), config, results, text, exit_code }
}

fn check(p: &Problem, input: &Input, config: Value) -> RunReport {
    let h = &p.subspace;
    let mut text = String::new();
    let mut per_map = Vec::new();
    for (i, m) in p.maps.iter().enumerate() {
        let dec = m.decompose();
        let lead_terms = dec.leading_form.collect_terms().terms().len();
        let degree = dec.degree.map_or("none (zero map)".to_string(), |d| d.to_string());
        let _ = writeln!(text, "map {}: {}", i + 1, print_map(m));
        let _ = writeln!(text, "  degree: {degree}");
        for (d, part) in &dec.components {
            let _ = writeln!(text, "  degree {d} part: {}", print_map(part));
        }
        let _ = writeln!(text, "  leading form monomials: {lead_terms}");
        per_map.push(json!({
            "map": print_map(m),
            "degree": dec.degree,
            "components": dec.components.iter().map(|(d, part)| json!({"degree": d, "part": print_map(part)})).collect::<Vec<_>>(),
            "leading_form_monomials": lead_terms,
        }));
    }
    let names = scalarize(&p.maps, h, h).map(|s| s.names()).unwrap_or_default();
    let cert = certify_nondegenerate(&p.maps, h, h, input.seed);
    let _ = writeln!(text, "leading forms: {}", cert.kind());
    if let Certificate::Inconclusive { reason } = &cert {
        let _ = writeln!(text, "  reason: {reason}");
    }
    let mut probe = Value::Null;
    if cert.is_inconclusive() {
        let forms: Vec<PolynomialMap> = p.maps.iter().map(PolynomialMap::leading_form).collect();
        if let Ok(r) = numeric_nondegeneracy_min(&forms, h, &solve_config(input)) {
            let _ = writeln!(text, "  numeric probe: {:?}, min on the unit sphere {:.3e}", r.verdict, r.min_value);
            probe = serde_json::to_value(&r).unwrap_or(Value::Null);
        }
    }
    let verdicts = theorem_verdicts(&p.maps, h, h, &cert);
    let _ = writeln!(text, "existence results:");
    for v in &verdicts {
        let _ = writeln!(text, "  {:?}: {} ({})", v.theorem, if v.applies { "applies" } else { "not covered" }, v.reason);
    }
    let mut two = Value::Null;
    if p.maps.len() == 1 && p.algebra.kind().is_quaternion_or_octonion() && p.maps[0].nvars() == 1 {
        let g = two_monomial_guarantee(&p.maps[0], &solve_config(input));
        two = serde_json::to_value(&g).unwrap_or(Value::Null);
    }
    let results = json!({
        "maps": per_map,
        "nondegeneracy": cert.to_json(&names),
        "probe": probe,
        "verdicts": verdicts,
        "two_monomial": two,
    });
    let exit = if cert.is_inconclusive() { EXIT_INCONCLUSIVE } else { EXIT_DEFINITE };
    report(config, results, text, exit)
}

fn format_float_element(alg: &Algebra, x: &[f64]) -> String {
    let mut out = String::new();
    for (c, label) in x.iter().zip(alg.labels()) {
        if c.abs() < 1e-12 {
            continue;
        }
        let sign = if c < &0.0 { "-" } else { "+" };
        if out.is_empty() {
            if c < &0.0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let _ = write!(out, "{:.10}*{label}", c.abs());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn solve_text(p: &Problem, r: &SolveReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "method: {:?}, seed {}", r.method, r.seed);
    if let Some(b) = r.bezout_count {
        let _ = writeln!(text, "Bezout number: {b}");
    }
    if let Some(ps) = &r.paths {
        let _ = writeln!(
            text,
            "paths: {} converged, {} diverged, {} singular, {} failed",
            ps.converged, ps.diverged, ps.singular_endpoint, ps.failed
        );
    }
    if r.zeros.is_empty() {
        let _ = writeln!(text, "no zero found");
    }
    for (k, z) in r.zeros.iter().enumerate() {
        let args: Vec<String> = z.point.iter().map(|x| format_float_element(&p.algebra, x)).collect();
        let _ = writeln!(text, "zero {}: ({}) residual {:.3e}", k + 1, args.join(", "), z.residual);
    }
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
    text
}

fn solve(p: &Problem, input: &Input, config: Value, method: Method) -> RunReport {
    let cfg = solve_config(input);
    match find_common_zero(&p.maps, &p.subspace, &p.subspace, method, &cfg) {
        Ok(r) => {
            let text = solve_text(p, &r);
            let exit = if r.zeros.is_empty() { EXIT_INCONCLUSIVE } else { EXIT_DEFINITE };
            let results = serde_json::to_value(&r).unwrap_or(Value::Null);
            report(config, results, text, exit)
        }
        Err(e) => RunReport::error("solve", config, e.to_string()),
    }
}

fn certify(p: &Problem, _input: &Input, config: Value) -> RunReport {
    let sys = match scalarize(&p.maps, &p.subspace, &p.subspace) {
        Ok(s) => s,
        Err(e) => return RunReport::error("certify", config, e.to_string()),
    };
    let names = sys.names();
    let cert = algzero::groebner::certify_no_real_zero(&sys);
    let replayed = cert.replay(&sys.polys);
    let mut text = format!("certificate: {}\n", cert.kind());
    let cj = cert.to_json(&names);
    match &cert {
        Certificate::NoRealZero { .. } => {
            let _ = writeln!(text, "  variable: {}", cj["variable"].as_str().unwrap_or("none (the ideal is the whole ring)"));
            let _ = writeln!(text, "  eliminant: {}", cj["eliminant"].as_str().unwrap_or(""));
            let _ = writeln!(text, "  real roots of the eliminant: {}", cj["real_root_count"]);
            let _ = writeln!(text, "  replay: {}", if replayed { "ok" } else { "FAILED" });
            let _ = writeln!(text, "the system has no real zero");
        }
        Certificate::Inconclusive { reason } => {
            let _ = writeln!(text, "  {reason}");
        }
        _ => {}
    }
    let exit = if matches!(cert, Certificate::NoRealZero { .. }) && replayed { EXIT_DEFINITE } else { EXIT_INCONCLUSIVE };
    let results = json!({ "certificate": cj, "replayed": replayed, "variables": names });
    report(config, results, text, exit)
}

fn degree_estimate(p: &Problem, input: &Input, config: Value) -> RunReport {
    let forms: Vec<PolynomialMap> = p.maps.iter().map(PolynomialMap::leading_form).collect();
    match mapping_degree_estimate(&forms, &p.subspace, &p.subspace, &solve_config(input)) {
        Ok(d) => {
            let mut text = format!("degree estimate: {}\n", d.value);
            let _ = writeln!(text, "  preimages: {} (signs {:?}), attempts {}", d.preimage_count(), d.signs, d.attempts);
            if d.low_confidence {
                let _ = writeln!(text, "  low confidence");
            }
            for n in &d.notes {
                let _ = writeln!(text, "  note: {n}");
            }
            let exit = if d.low_confidence { EXIT_INCONCLUSIVE } else { EXIT_DEFINITE };
            report(config, serde_json::to_value(&d).unwrap_or(Value::Null), text, exit)
        }
        Err(Error::Degenerate) => report(
            config,
            json!({ "error": "leading forms are degenerate; the degree is undefined" }),
            "leading forms are degenerate; the degree is undefined\n".into(),
            EXIT_INCONCLUSIVE,
        ),
        Err(e) => RunReport::error("degree-estimate", config, e.to_string()),
    }
}

fn worked_example(seed: u64) -> RunReport {
    let checks = fixtures::run_all(seed);
    let mut text = String::new();
    for (k, c) in checks.iter().enumerate() {
        let _ = writeln!(text, "({}) {} {}: {}", k + 1, if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let all = checks.iter().all(|c| c.passed);
    let exit = if all { EXIT_DEFINITE } else { EXIT_ERROR };
    RunReport { command: "worked-example".into(), config: json!({ "seed": seed }), results: json!({ "checks": checks }), text, exit_code: exit }
}

fn algebra_info(spec: &str) -> RunReport {
    let config = json!({ "algebra": spec });
    let alg = match load_algebra(spec) {
        Ok(a) => a,
        Err(e) => return RunReport::error("algebra info", config, e),
    };
    let cls = alg.classify();
    let mut text = format!("{alg}\n");
    let _ = writeln!(text, "dimension: {}", alg.dim());
    let _ = writeln!(text, "basis: {}", alg.labels().join(", "));
    let _ = writeln!(text, "associative: {}, commutative: {}, unital: {}", cls.associative, cls.commutative, cls.unital);
    let _ = writeln!(text, "composition norm: {}", alg.has_composition_norm());
    let _ = writeln!(text, "involution: {}", alg.involution_matrix().is_some());
    let d = alg.dim();
    let basis: Vec<Vec<algzero::Rational>> = (0..d).map(|i| algzero::Element::basis(d, i).coords).collect();
    let mut table = Vec::new();
    if d <= 16 {
        let _ = writeln!(text, "multiplication table (row * column):");
        for x in &basis {
            let row: Vec<String> = basis.iter().map(|y| alg.format_element(&alg.mul(x, y))).collect();
            let _ = writeln!(text, "  {}", row.join(" | "));
            table.push(row);
        }
    }
    let results = json!({
        "description": alg.to_string(),
        "dimension": d,
        "labels": alg.labels(),
        "associative": cls.associative,
        "commutative": cls.commutative,
        "unital": cls.unital,
        "composition_norm": alg.has_composition_norm(),
        "involution": alg.involution_matrix().is_some(),
        "table": table,
    });
    RunReport { command: "algebra info".into(), config, results, text, exit_code: EXIT_DEFINITE }
}
