//! The `lpalg` command line. Every subcommand parses its inputs, calls one
//! library entry point and formats the result.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certify::{certify_not_lq_with, sweep_with, Certificate, SweepRow};
use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::gelfand::{bicontractive_search, IdempotentReport};
use crate::group::{parse_group, FiniteGroup};
use crate::literal::parse_element;
use crate::multiplier::{
    augmentation_ideal_algebra, centralizer_norm, double_centralizers, multiplier_norm_bounds,
    triangular_algebra, DoubleCentralizer, FiniteDimAlgebra,
};
use crate::pnorm::{opnorm_bounds, opnorm_exact, NormBound, NormMethod, DEFAULT_RESTARTS};
use crate::serial::{complex_pairs, to_json_string};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "lpalg", version, about = "Norms, multipliers and idempotents of group L^p-operator algebras")]
pub struct Cli {
    /// Seed for every randomized search
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random restarts per norm estimate
    #[arg(long, global = true, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    /// Output format; defaults to csv for `sweep` and json otherwise
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a group such as Z3 or Z2xZ2
    GroupInfo { spec: String },
    /// Bracket the operator norm of left convolution on ℓ^p(G)
    Norm {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        p: f64,
    },
    /// Bracket the multiplier norm of an element of the augmentation ideal
    MultiplierNorm {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        p: f64,
    },
    /// Enumerate idempotents of the augmentation ideal with their norms
    Idempotents {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: f64,
    },
    /// Double centralizers of t2, t3 or aug:<group>
    Centralizers {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        p: f64,
    },
    /// Non-representability certificate for Z3 at exponent p
    Certify {
        #[arg(long)]
        p: f64,
    },
    /// Certificate summaries over a range of exponents
    Sweep {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 on success, 1 on usage or input errors, 2 when a
/// numerical guard fails.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(mut output) => {
            if !output.ends_with('\n') {
                output.push('\n');
            }
            match &cli.out {
                Some(path) => match std::fs::write(path, output) {
                    Ok(()) => 0,
                    Err(e) => {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        1
                    }
                },
                None => {
                    print!("{output}");
                    0
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    to_json_string(value).map_err(|e| Error::Numerical(format!("serialization failed: {e}")))
}

fn no_csv(command: &str) -> Error {
    Error::Unsupported(format!("csv output is not available for {command}"))
}

/// Runs the parsed command and renders its output.
pub fn execute(cli: &Cli) -> Result<String> {
    let (seed, restarts) = (cli.seed, cli.restarts);
    if restarts == 0 {
        return Err(Error::Unsupported("--restarts must be at least 1".into()));
    }
    match &cli.command {
        Command::GroupInfo { spec } => {
            let g = parse_group(spec)?;
            let info = GroupInfo::new(&g);
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&info),
                Format::Text => Ok(info.text()),
                Format::Csv => Err(no_csv("group-info")),
            }
        }
        Command::Norm { group, element, p } => {
            let g = parse_group(group)?;
            let a = parse_element(&g, element)?;
            let m = a.lambda_matrix();
            let bound = if p.is_infinite() {
                let v = opnorm_exact(m.as_matrix(), *p)?;
                NormBound::exact(*p, v, None, NormMethod::ExactInf)
            } else {
                opnorm_bounds(m.as_matrix(), *p, restarts, seed)?
            };
            render_bound(cli.format, &g, &a, bound)
        }
        Command::MultiplierNorm { group, element, p } => {
            let g = parse_group(group)?;
            let a = parse_element(&g, element)?;
            let bound = multiplier_norm_bounds(&g, &a, *p, restarts, seed)?;
            render_bound(cli.format, &g, &a, bound)
        }
        Command::Idempotents { group, p } => {
            let g = parse_group(group)?;
            let reports = bicontractive_search(&g, *p, restarts, seed)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&reports),
                Format::Csv => idempotents_csv(&reports),
                Format::Text => Ok(idempotents_text(&g, *p, &reports)),
            }
        }
        Command::Centralizers { algebra, p } => {
            let a = parse_algebra(algebra, *p)?;
            let report = CentralizerReport::compute(&a, restarts, seed)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Text => Ok(report.text()),
                Format::Csv => Err(no_csv("centralizers")),
            }
        }
        Command::Certify { p } => {
            let cert = certify_not_lq_with(*p, seed, restarts)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => json(&cert),
                Format::Text => Ok(certificate_text(&cert)),
                Format::Csv => Err(no_csv("certify")),
            }
        }
        Command::Sweep { from, to, steps } => {
            let rows = sweep_with(*from, *to, *steps, seed, restarts)?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep_csv(&rows),
                Format::Json => json(&rows),
                Format::Text => Ok(sweep_text(&rows)),
            }
        }
    }
}

/// `t2`, `t3` or `aug:<group spec>`.
pub fn parse_algebra(spec: &str, p: f64) -> Result<FiniteDimAlgebra> {
    match spec.trim() {
        "t2" | "T2" => triangular_algebra(2, p),
        "t3" | "T3" => triangular_algebra(3, p),
        s => match s.strip_prefix("aug:") {
            Some(group) => augmentation_ideal_algebra(&parse_group(group)?, p),
            None => Err(Error::parse(s, "expected t2, t3 or aug:<group>")),
        },
    }
}

#[derive(Serialize)]
struct GroupInfo {
    label: String,
    order: usize,
    factors: Option<Vec<usize>>,
    abelian: bool,
    inverse: Vec<usize>,
    element_orders: Vec<usize>,
    cayley: Vec<Vec<usize>>,
}

impl GroupInfo {
    fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        GroupInfo {
            label: g.label().to_string(),
            order: n,
            factors: g.factors().map(|f| f.to_vec()),
            abelian: g.is_abelian(),
            inverse: g.inverse_table().to_vec(),
            element_orders: (0..n).map(|i| g.element_order(i)).collect(),
            cayley: (0..n).map(|i| g.cayley_row(i).to_vec()).collect(),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group {} of order {}", self.label, self.order);
        let _ = writeln!(s, "abelian: {}", self.abelian);
        let _ = writeln!(s, "inverses: {:?}", self.inverse);
        let _ = writeln!(s, "element orders: {:?}", self.element_orders);
        for row in &self.cayley {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "  {}", cells.join(" "));
        }
        s
    }
}

#[derive(Serialize)]
struct BoundReport<'a> {
    group: &'a str,
    element: Vec<[f64; 2]>,
    #[serde(flatten)]
    bound: NormBound,
}

fn method_list(methods: &[NormMethod]) -> String {
    methods
        .iter()
        .map(|m| {
            serde_json::to_value(m)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default()
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn render_bound(
    format: Option<Format>,
    g: &Arc<FiniteGroup>,
    a: &AlgebraElement,
    bound: NormBound,
) -> Result<String> {
    match format.unwrap_or(Format::Json) {
        Format::Json => json(&BoundReport {
            group: g.label(),
            element: complex_pairs(a.coeffs()),
            bound,
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let to_err = |e: csv::Error| Error::Numerical(e.to_string());
            w.write_record(["p", "lower", "upper", "methods"]).map_err(to_err)?;
            w.write_record([
                fmt_float(bound.p),
                fmt_float(bound.lower),
                fmt_float(bound.upper),
                method_list(&bound.methods),
            ])
            .map_err(to_err)?;
            finish_csv(w)
        }
        Format::Text => Ok(format!(
            "p = {}\nlower = {}\nupper = {}\nmethods = {}\n",
            bound.p,
            bound.lower,
            bound.upper,
            method_list(&bound.methods)
        )),
    }
}

fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Numerical(format!("csv output failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Numerical(e.to_string()))
}

fn idempotents_csv(reports: &[IdempotentReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Numerical(e.to_string());
    w.write_record([
        "mask",
        "l1_norm",
        "multiplier_lower",
        "multiplier_upper",
        "complement_upper",
        "symmetry_lower",
        "symmetry_upper",
        "bicontractive",
        "non_isometry",
    ])
    .map_err(to_err)?;
    for r in reports {
        w.write_record([
            r.mask.to_string(),
            fmt_float(r.l1_norm),
            fmt_float(r.multiplier_norm_p.lower),
            fmt_float(r.multiplier_norm_p.upper),
            fmt_float(r.complement_norm_p.upper),
            fmt_float(r.symmetry_norm_p.lower),
            fmt_float(r.symmetry_norm_p.upper),
            r.bicontractive_flags.bicontractive.to_string(),
            r.bicontractive_flags.non_isometry.to_string(),
        ])
        .map_err(to_err)?;
    }
    finish_csv(w)
}

fn idempotents_text(g: &FiniteGroup, p: f64, reports: &[IdempotentReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} idempotents of the ideal of {} at p = {p}", reports.len(), g.label());
    for r in reports {
        let _ = writeln!(
            s,
            "mask {:>3}: ‖f‖₁ = {:.6}, ⦀f⦀ ∈ [{:.6}, {:.6}], ⦀𝟙₀−2f⦀ ∈ [{:.6}, {:.6}]{}{}",
            r.mask,
            r.l1_norm,
            r.multiplier_norm_p.lower,
            r.multiplier_norm_p.upper,
            r.symmetry_norm_p.lower,
            r.symmetry_norm_p.upper,
            if r.bicontractive_flags.bicontractive { ", bicontractive" } else { "" },
            if r.bicontractive_flags.non_isometry { ", symmetry not an isometry" } else { "" },
        );
    }
    s
}

#[derive(Serialize)]
struct CentralizerReport {
    algebra: FiniteDimAlgebra,
    multiplier_dim: usize,
    basis: Vec<DoubleCentralizer>,
    norms: Vec<NormBound>,
    /// Whether every basis norm is exactly `max(|l|, |r|)` on a one-dimensional algebra.
    sup_norm: bool,
}

impl CentralizerReport {
    fn compute(algebra: &FiniteDimAlgebra, restarts: usize, seed: u64) -> Result<Self> {
        let basis = double_centralizers(algebra)?;
        let norms = basis
            .iter()
            .map(|dc| centralizer_norm(algebra, dc, restarts, seed))
            .collect::<Result<Vec<_>>>()?;
        let sup_norm = algebra.dim() == 1
            && basis.iter().zip(&norms).all(|(dc, n)| {
                let sup = dc.l[(0, 0)].norm().max(dc.r[(0, 0)].norm());
                (n.lower - sup).abs() <= 1e-12 && (n.upper - sup).abs() <= 1e-12
            });
        Ok(CentralizerReport {
            algebra: algebra.clone(),
            multiplier_dim: basis.len(),
            basis,
            norms,
            sup_norm,
        })
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}: dimension {}, multiplier algebra dimension {}",
            self.algebra.label(),
            self.algebra.dim(),
            self.multiplier_dim
        );
        for (k, n) in self.norms.iter().enumerate() {
            let _ = writeln!(s, "  basis {k}: norm ∈ [{:.9}, {:.9}]", n.lower, n.upper);
        }
        if self.sup_norm {
            let _ = writeln!(s, "centralizer norm is the sup norm of (l, r)");
        }
        s
    }
}

fn certificate_text(c: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "p = {}: {}", c.p, c.verdict);
    for (k, v) in c.trail.entries() {
        let _ = writeln!(s, "  {k} = {v}");
    }
    let _ = writeln!(s, "  analytic_sufficient = {}", c.analytic_sufficient);
    let _ = writeln!(s, "  seed = {}", c.seed);
    s
}

fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::Numerical(e.to_string());
    w.write_record([
        "p",
        "one_zero_fp_lower",
        "one_zero_upper",
        "symmetry_lower",
        "symmetry_upper",
        "conjectured",
        "verdict",
    ])
    .map_err(to_err)?;
    for r in rows {
        w.write_record([
            fmt_float(r.p),
            fmt_float(r.one_zero_fp_lower),
            fmt_float(r.one_zero_upper),
            fmt_float(r.symmetry_lower),
            fmt_float(r.symmetry_upper),
            r.conjectured.map(fmt_float).unwrap_or_default(),
            r.verdict.to_string(),
        ])
        .map_err(to_err)?;
    }
    finish_csv(w)
}

fn sweep_text(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(
            s,
            "p = {:<8.4} ‖𝟙₀‖ ≥ {:.6}  ⦀𝟙₀−2e⦀ ∈ [{:.6}, {:.6}]  {}",
            r.p, r.one_zero_fp_lower, r.symmetry_lower, r.symmetry_upper, r.verdict
        );
    }
    s
}
