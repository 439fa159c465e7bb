//! Command-line surface. Everything prints machine-readable JSON or CSV.
//! Exit codes: 0 when every residual is within tolerance, 1 on a breach
//! (the report is still printed), 2 on bad usage or input.

pub mod suites;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num::complex::Complex64;
use num::BigRational;
use serde_json::{json, Value};

use crate::asymptotics::{macas_partial, macas_remainder, zeta3_value, zeta_prime_minus_one};
use crate::chernsimons::{
    comparison_residuals, diameter_root, modular_data, quantum_diameter, CSLevelRank, DiameterMethod,
};
use crate::multigamma::{gq_alternating, gq_nishizawa, gq_terminated, MultigammaQuery, DEFAULT_TOL};
use crate::qfuncs::{macmahon_eval, macmahon_series};
use crate::series::TruncSeries;
use crate::stirling::rational_to_f64;
use crate::vertex::{conifold_graph, conifold_product, dt_coeffs, state_sum, ToricGraph};
use crate::{Error, Result};
use suites::{run_suite, SuiteConfig, SUITES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Defaults, then the config file, then flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub tol: f64,
    /// Set only when the user asked for a tolerance; suites otherwise use
    /// their own per-check values.
    pub tol_override: Option<f64>,
    pub a_order: u32,
    pub q_order: i64,
    pub workers: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tol: 1e-9,
            tol_override: None,
            a_order: 6,
            q_order: 20,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            format: Format::Json,
            output: None,
        }
    }
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: expected key=value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |_| Error::Parse(format!("config line {}: bad value for {key}", no + 1));
            match key {
                "tol" => {
                    let t = parse_real(value)?;
                    self.tol = t;
                    self.tol_override = Some(t);
                }
                "a_order" => self.a_order = value.parse().map_err(bad)?,
                "q_order" => self.q_order = value.parse().map_err(bad)?,
                "workers" => self.workers = value.parse().map_err(bad)?,
                "format" => {
                    self.format = Format::from_str(value, true)
                        .map_err(|_| Error::Parse(format!("config line {}: unknown format {value}", no + 1)))?
                }
                "output" => self.output = Some(PathBuf::from(value)),
                other => return Err(Error::Parse(format!("config line {}: unknown key {other}", no + 1))),
            }
        }
        Ok(())
    }

    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig { tol: self.tol_override, a_order: self.a_order, q_order: self.q_order }
    }
}

/// A real as a decimal or `p/q`.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let r: BigRational = BigRational::new(
            p.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s}")))?,
            q.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s}")))?,
        );
        return Ok(rational_to_f64(&r));
    }
    s.parse().map_err(|_| Error::Parse(format!("bad number {s}")))
}

/// A complex number as `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => parse_real(t),
    };
    match split {
        Some(i) => Ok(Complex64::new(parse_real(&body[..i])?, imag(&body[i..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

#[derive(Parser, Debug)]
#[command(name = "qbarnes", about = "Conifold vertex sums, Chern-Simons invariants of S^3 and q-multigammas")]
struct Cli {
    /// key=value file with tol, a_order, q_order, workers, format, output
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    tol: Option<String>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Zs3Method {
    Statesum,
    Closed,
    Compare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GqMethod {
    Alternating,
    Nishizawa,
    Both,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Conifold state sum against (aq;q)^(2)
    Zx {
        #[arg(long)]
        a_order: Option<u32>,
        #[arg(long)]
        q_order: Option<i64>,
    },
    /// Quantum diameter, Z(S^3) and modular relations at rank N, level k
    Zs3 {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "compare")]
        method: Zs3Method,
    },
    /// q-multigamma G^(d) at z+1
    Gq {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value = "both")]
        method: GqMethod,
    },
    /// MacMahon coefficients, or the small-x expansion as CSV
    Macmahon {
        #[arg(long)]
        q_order: Option<i64>,
        #[arg(long)]
        asymptotics: bool,
        #[arg(long, default_value_t = 4)]
        genus_max: u32,
        /// comma-separated sample points
        #[arg(long, value_delimiter = ',')]
        x: Vec<String>,
    },
    /// DT invariants D_{n,d} of the conifold
    Dt {
        #[arg(long, default_value_t = 4)]
        d_max: u32,
        #[arg(long)]
        q_order: Option<i64>,
    },
    /// Vertex state sum of a toric graph given as JSON
    VertexZ {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        a_order: Option<u32>,
        #[arg(long)]
        q_order: Option<i64>,
    },
    /// Run a named suite, or all of them
    Verify {
        #[arg(long)]
        suite: String,
    },
}

struct Outcome {
    text: String,
    pass: bool,
}

fn c_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn series_csv(s: &TruncSeries) -> String {
    let mut out = String::from("a_exp,q_exp,numerator,denominator\n");
    for (&(a, u), c) in s.terms() {
        let q = if u % 2 == 0 { format!("{}", u / 2) } else { format!("{}", u as f64 / 2.0) };
        let _ = writeln!(out, "{a},{q},{},{}", c.numer(), c.denom());
    }
    out
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn zx(cfg: &RunConfig, a_order: u32, q_order: i64, graph: Option<&Path>) -> Result<Outcome> {
    let (sum, reference) = match graph {
        None => (state_sum(&conifold_graph(), a_order, q_order)?, Some(conifold_product(a_order, q_order))),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            (state_sum(&ToricGraph::from_json(&text)?, a_order, q_order)?, None)
        }
    };
    let residual = reference.as_ref().map(|r| sum.max_abs_diff(r));
    let pass = residual.as_ref().is_none_or(num::Zero::is_zero);
    let text = match cfg.format {
        Format::Csv => series_csv(&sum),
        Format::Json => {
            let mut v = json!({ "a_order": a_order, "q_order": q_order, "coefficients": sum.to_json() });
            if let Some(r) = residual {
                v["residual"] = json!(r.to_string());
                v["exact"] = json!(pass);
            }
            json_text(&v)
        }
    };
    Ok(Outcome { text, pass })
}

fn zs3(cfg: &RunConfig, n: u32, k: u32, method: Zs3Method) -> Result<Outcome> {
    let ctx = CSLevelRank::new(n, k)?;
    let state = quantum_diameter(ctx, DiameterMethod::Statesum);
    let closed = quantum_diameter(ctx, DiameterMethod::Closed);
    let d2 = if method == Zs3Method::Closed { closed } else { state };
    let (d, positive) = diameter_root(d2);
    let z = 1.0 / d;
    let sl2z = {
        let r = modular_data(ctx).residuals();
        r.st_cubed.max(r.s2_t).max(r.s4)
    };
    let comparison = comparison_residuals(ctx).norm();
    let mut residuals = json!({ "sl2z": sl2z, "comparison": comparison });
    let mut worst = sl2z.max(comparison);
    if method == Zs3Method::Compare {
        let r = (state - closed).norm() / closed.norm();
        residuals["diameter"] = json!(r);
        worst = worst.max(r);
    }
    let pass = worst <= cfg.tol;
    let text = match cfg.format {
        Format::Json => json_text(&json!({
            "N": n,
            "k": k,
            "method": format!("{method:?}").to_lowercase(),
            "D2": c_json(d2),
            "D_branch": if positive { "positive" } else { "principal" },
            "Z": c_json(z),
            "residuals": residuals,
        })),
        Format::Csv => {
            let mut out = String::from("quantity,re,im\n");
            let _ = writeln!(out, "D2,{},{}", d2.re, d2.im);
            let _ = writeln!(out, "Z,{},{}", z.re, z.im);
            for (key, val) in residuals.as_object().expect("object") {
                let _ = writeln!(out, "residual_{key},{},0", val);
            }
            out
        }
    };
    Ok(Outcome { text, pass })
}

fn gq(cfg: &RunConfig, d: u32, z: &str, q: &str, method: GqMethod) -> Result<Outcome> {
    let (z, q) = (parse_complex(z)?, parse_complex(q)?);
    let query = MultigammaQuery::new(d, z, q)?;
    let mut values: Vec<(&str, Complex64)> = Vec::new();
    if method != GqMethod::Nishizawa {
        values.push(("alternating", gq_alternating(query, DEFAULT_TOL)?));
    }
    if method != GqMethod::Alternating {
        values.push(("nishizawa", gq_nishizawa(query, DEFAULT_TOL)?));
    }
    if z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0 && z.re <= 1e6 {
        values.push(("terminated", gq_terminated(d, z.re as u32, q)));
    }
    let residual = values.iter().map(|v| (v.1 - values[0].1).norm() / values[0].1.norm()).fold(0.0, f64::max);
    let pass = residual <= cfg.tol;
    let text = match cfg.format {
        Format::Json => {
            let vals: serde_json::Map<String, Value> = values.iter().map(|(k, v)| (k.to_string(), c_json(*v))).collect();
            json_text(&json!({ "d": d, "z": c_json(z), "q": c_json(q), "values": vals, "residual": residual }))
        }
        Format::Csv => {
            let mut out = String::from("method,re,im\n");
            for (k, v) in &values {
                let _ = writeln!(out, "{k},{},{}", v.re, v.im);
            }
            out
        }
    };
    Ok(Outcome { text, pass })
}

fn macmahon(cfg: &RunConfig, q_order: i64, asymptotics: bool, genus_max: u32, xs: &[String]) -> Result<Outcome> {
    if asymptotics {
        if genus_max < 2 {
            return Err(Error::Domain("--genus-max must be at least 2".into()));
        }
        let (z3, zp) = (zeta3_value(), zeta_prime_minus_one());
        let mut out = String::from("x,lnM,partial,remainder\n");
        for x in xs {
            let x = parse_real(x)?;
            let ln_m = macmahon_eval(x)?;
            let partial = macas_partial(x, genus_max, z3, zp);
            let _ = writeln!(out, "{x:e},{ln_m:e},{partial:e},{:e}", macas_remainder(x, genus_max));
        }
        return Ok(Outcome { text: out, pass: true });
    }
    let s = macmahon_series(q_order);
    let coeffs: Vec<String> = (0..=q_order).map(|n| s.coeff_q(0, n).to_string()).collect();
    let text = match cfg.format {
        Format::Json => json_text(&json!({ "q_order": q_order, "coefficients": coeffs })),
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, c) in coeffs.iter().enumerate() {
                let _ = writeln!(out, "{n},{c}");
            }
            out
        }
    };
    Ok(Outcome { text, pass: true })
}

fn dt(cfg: &RunConfig, d_max: u32, q_order: i64) -> Result<Outcome> {
    let z = state_sum(&conifold_graph(), d_max, q_order)?;
    let table: Vec<Vec<i64>> = (1..=d_max).map(|d| dt_coeffs(&z, d)).collect::<Result<_>>()?;
    let text = match cfg.format {
        Format::Json => {
            let rows: Vec<Value> = table.iter().enumerate().map(|(i, v)| json!({ "d": i + 1, "D": v })).collect();
            json_text(&json!({ "q_order": q_order, "degrees": rows }))
        }
        Format::Csv => {
            let mut out = String::from("d,n,D\n");
            for (i, v) in table.iter().enumerate() {
                for (n, x) in v.iter().enumerate() {
                    let _ = writeln!(out, "{},{n},{x}", i + 1);
                }
            }
            out
        }
    };
    Ok(Outcome { text, pass: true })
}

fn verify(cfg: &RunConfig, suite: &str) -> Result<Outcome> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::Parse(format!("unknown suite {suite}; known: all, {}", SUITES.join(", "))));
    };
    let reports = names.iter().map(|s| run_suite(s, cfg.suite_config())).collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let text = match cfg.format {
        Format::Json => json_text(&json!({ "pass": pass, "suites": reports })),
        Format::Csv => {
            let mut out = String::from("suite,criterion,check,residual,tol,pass\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(out, "{},{},\"{}\",{:e},{:e},{}", r.suite, r.criterion, c.name, c.residual, c.tol, c.pass);
                }
            }
            out
        }
    };
    Ok(Outcome { text, pass })
}

fn run(cli: Cli, cfg: &RunConfig) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Zx { a_order, q_order } => zx(cfg, a_order.unwrap_or(cfg.a_order), q_order.unwrap_or(cfg.q_order), None),
        Cmd::VertexZ { graph, a_order, q_order } => {
            zx(cfg, a_order.unwrap_or(cfg.a_order), q_order.unwrap_or(cfg.q_order), Some(&graph))
        }
        Cmd::Zs3 { n, k, method } => zs3(cfg, n, k, method),
        Cmd::Gq { d, z, q, method } => gq(cfg, d, &z, &q, method),
        Cmd::Macmahon { q_order, asymptotics, genus_max, x } => {
            macmahon(cfg, q_order.unwrap_or(cfg.q_order), asymptotics, genus_max, &x)
        }
        Cmd::Dt { d_max, q_order } => dt(cfg, d_max, q_order.unwrap_or(cfg.q_order)),
        Cmd::Verify { suite } => verify(cfg, &suite),
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        cfg.apply_file_text(&text)?;
    }
    if let Some(t) = &cli.tol {
        let t = parse_real(t)?;
        cfg.tol = t;
        cfg.tol_override = Some(t);
    }
    if let Some(w) = cli.workers {
        cfg.workers = w.max(1);
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(o) = &cli.output {
        cfg.output = Some(o.clone());
    }
    Ok(cfg)
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn dispatch(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let outcome = match pool.install(|| run(cli, &cfg)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match cfg.output.as_deref().filter(|p| p.as_os_str() != "-") {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-0.3+0.4i").unwrap(), Complex64::new(-0.3, 0.4));
        assert_eq!(parse_complex("1e-3-2e-1i").unwrap(), Complex64::new(1e-3, -0.2));
        assert_eq!(parse_complex("0.5i").unwrap(), Complex64::new(0.0, 0.5));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1/2").unwrap(), Complex64::new(0.5, 0.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn config_file() {
        let mut cfg = RunConfig::default();
        cfg.apply_file_text("# comment\ntol = 1e-6\nq_order=12\nformat = csv\n").unwrap();
        assert_eq!(cfg.tol_override, Some(1e-6));
        assert_eq!(cfg.q_order, 12);
        assert_eq!(cfg.format, Format::Csv);
        assert!(cfg.apply_file_text("bogus = 1").is_err());
    }

    #[test]
    fn usage_errors() {
        let argv = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        assert_eq!(dispatch(argv("qbarnes frobnicate")), 2);
        assert_eq!(dispatch(argv("qbarnes zx --bogus")), 2);
        assert_eq!(dispatch(argv("qbarnes verify --suite nope")), 2);
    }
}
