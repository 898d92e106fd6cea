//! Command-line front end: `eval`, `table`, `verify`, `list-suites`.
//!
//! Exit status: 0 on success, 1 on a domain error or failed identity check,
//! 2 on malformed arguments or an unknown suite.

pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use num_complex::Complex64;

use crate::identity::{mehler_kernel, run_suite, SuiteParams, SUITES};
use crate::quadrature::{default_rule_order, QuadratureRule};
use crate::report::{fmt17, fmt_complex_g6, fmt_g6, plain_table, Num};
use crate::special::{
    complex_hermite_eval, hermite_eval, hermite_fn_eval, laguerre_eval, HermiteFnValue,
    HermiteFunctionSpec,
};
use crate::wigner::{fwt_hermite_closed, fwt_quadrature, PhasePoint, WindowFunction};
use crate::Error;
use parse::{parse_complexes, parse_indices, parse_reals, UsageError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hermite-wigner", version, about = "Hermite families, the Fourier-Wigner transform and identity checks")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: OutputFormat,
    /// write output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// replace every identity tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// fixed quadrature rule order
    #[arg(long = "quad-order", global = true)]
    quad_order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one family member at one point
    Eval(FamilyCmd),
    /// Tabulate a family over index ranges and grids
    Table(FamilyCmd),
    /// Run a verification suite
    Verify {
        suite: String,
        /// series truncation order
        #[arg(long)]
        order: Option<usize>,
        /// largest Hermite index in index sweeps
        #[arg(long = "max-index")]
        max_index: Option<usize>,
        /// seed for sampled points
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List registered verification suites
    ListSuites,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Family {
    Hermite,
    HermiteFn,
    Laguerre,
    ComplexHermite,
    FwtClosed,
    FwtQuad,
    MehlerKernel,
}

#[derive(Args, Debug)]
struct FamilyCmd {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long = "lambda", allow_hyphen_values = true)]
    lambda: Option<String>,
    /// use e_n = h_n / ||h_n|| (hermite_fn)
    #[arg(long)]
    normalized: bool,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("invalid value '{t}' for --tol: must be positive")));
        }
    }
    if cli.quad_order == Some(0) {
        return Err(Failure::Usage("invalid value '0' for --quad-order: must be at least 1".into()));
    }
    match &cli.command {
        Command::Eval(cmd) => {
            let table = tabulate(cmd, cli.quad_order, true)?;
            emit(cli, &table.render(cli.format, true))?;
            Ok(0)
        }
        Command::Table(cmd) => {
            let table = tabulate(cmd, cli.quad_order, false)?;
            emit(cli, &table.render(cli.format, false))?;
            Ok(0)
        }
        Command::Verify {
            suite,
            order,
            max_index,
            seed,
        } => {
            if *order == Some(0) {
                return Err(Failure::Usage("invalid value '0' for --order: must be at least 1".into()));
            }
            let params = SuiteParams {
                tol: cli.tol,
                quad_order: cli.quad_order,
                trunc_order: *order,
                max_index: *max_index,
                seed: *seed,
            };
            let report = run_suite(suite, &params)?;
            let text = match cli.format {
                OutputFormat::Plain => report.to_plain(),
                OutputFormat::Csv => report.to_csv()?,
                OutputFormat::Json => report.to_json() + "\n",
            };
            emit(cli, &text)?;
            if cli.out.is_some() {
                eprintln!("{}/{} checks passed", report.summary.passed, report.summary.total);
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::ListSuites => {
            let text = match cli.format {
                OutputFormat::Plain => {
                    let rows: Vec<Vec<String>> =
                        SUITES.iter().map(|s| vec![s.id.to_string(), s.description.to_string()]).collect();
                    plain_table(&["suite", "description"], &rows)
                }
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let io = |e: csv::Error| Failure::Domain(e.to_string());
                    w.write_record(["suite", "description"]).map_err(io)?;
                    for s in SUITES {
                        w.write_record([s.id, s.description]).map_err(io)?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| Failure::Domain(e.to_string()))?)
                        .expect("csv output is utf-8")
                }
                OutputFormat::Json => {
                    let list: Vec<serde_json::Value> = SUITES
                        .iter()
                        .map(|s| serde_json::json!({"id": s.id, "description": s.description}))
                        .collect();
                    serde_json::to_string_pretty(&list).expect("json") + "\n"
                }
            };
            emit(cli, &text)?;
            Ok(0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Arg {
    Index(usize),
    Real(f64),
    Complex(Complex64),
}

impl Arg {
    fn label(&self) -> String {
        match self {
            Arg::Index(i) => i.to_string(),
            Arg::Real(x) => format!("{x}"),
            Arg::Complex(z) => complex_label(*z),
        }
    }

}

fn complex_label(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

enum Value {
    Real(f64),
    Complex(Complex64),
}

struct Axis {
    name: &'static str,
    values: Vec<Arg>,
}

struct Table {
    family: Family,
    axes: Vec<Axis>,
    /// row-major over the cartesian product of the axes, first axis slowest
    values: Vec<Value>,
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Hermite => "hermite",
        Family::HermiteFn => "hermite_fn",
        Family::Laguerre => "laguerre",
        Family::ComplexHermite => "complex_hermite",
        Family::FwtClosed => "fwt_closed",
        Family::FwtQuad => "fwt_quad",
        Family::MehlerKernel => "mehler_kernel",
    }
}

fn axis(name: &'static str, raw: &Option<String>, family: Family, kind: u8, single: bool) -> Result<Axis, Failure> {
    let raw = raw
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("missing --{name} for family {}", family_name(family))))?;
    let values: Vec<Arg> = match kind {
        b'i' => parse_indices(name, raw)?.into_iter().map(Arg::Index).collect(),
        b'r' => parse_reals(name, raw)?.into_iter().map(Arg::Real).collect(),
        _ => parse_complexes(name, raw)?.into_iter().map(Arg::Complex).collect(),
    };
    if values.is_empty() {
        return Err(Failure::Usage(format!("empty grid for --{name}: '{raw}'")));
    }
    if single && values.len() != 1 {
        return Err(Failure::Usage(format!("eval takes a single value for --{name}, got '{raw}'")));
    }
    Ok(Axis { name, values })
}

fn tabulate(cmd: &FamilyCmd, quad_order: Option<usize>, single: bool) -> Result<Table, Failure> {
    use Family::*;
    let f = cmd.family;
    let mk = |name: &'static str, raw: &Option<String>, kind: u8| axis(name, raw, f, kind, single);
    let axes = match f {
        Hermite | HermiteFn => vec![mk("n", &cmd.n, b'i')?, mk("x", &cmd.x, b'r')?],
        Laguerre => vec![mk("n", &cmd.n, b'i')?, mk("alpha", &cmd.alpha, b'r')?, mk("x", &cmd.x, b'r')?],
        ComplexHermite => vec![mk("m", &cmd.m, b'i')?, mk("n", &cmd.n, b'i')?, mk("z", &cmd.z, b'c')?],
        FwtClosed | FwtQuad => vec![
            mk("m", &cmd.m, b'i')?,
            mk("n", &cmd.n, b'i')?,
            mk("p", &cmd.p, b'r')?,
            mk("q", &cmd.q, b'r')?,
        ],
        MehlerKernel => vec![mk("lambda", &cmd.lambda, b'r')?, mk("x", &cmd.x, b'r')?, mk("y", &cmd.y, b'r')?],
    };
    let mut points: Vec<Vec<Arg>> = vec![vec![]];
    for a in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                a.values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    let mut rules: std::collections::BTreeMap<usize, QuadratureRule> = Default::default();
    let mut values = Vec::with_capacity(points.len());
    for pt in &points {
        values.push(evaluate(f, pt, cmd.normalized, quad_order, &mut rules)?);
    }
    Ok(Table { family: f, axes, values })
}

fn idx(a: &Arg) -> usize {
    match a {
        Arg::Index(i) => *i,
        _ => unreachable!("axis kinds are fixed per family"),
    }
}

fn re(a: &Arg) -> f64 {
    match a {
        Arg::Real(x) => *x,
        _ => unreachable!("axis kinds are fixed per family"),
    }
}

fn cx(a: &Arg) -> Complex64 {
    match a {
        Arg::Complex(z) => *z,
        _ => unreachable!("axis kinds are fixed per family"),
    }
}

fn evaluate(
    f: Family,
    pt: &[Arg],
    normalized: bool,
    quad_order: Option<usize>,
    rules: &mut std::collections::BTreeMap<usize, QuadratureRule>,
) -> Result<Value, Failure> {
    use Family::*;
    Ok(match f {
        Hermite => Value::Real(hermite_eval(idx(&pt[0]), re(&pt[1]))?),
        HermiteFn => {
            let spec = if normalized {
                HermiteFunctionSpec::e(idx(&pt[0]))
            } else {
                HermiteFunctionSpec::h(idx(&pt[0]))
            };
            match hermite_fn_eval(spec, re(&pt[1])) {
                HermiteFnValue::Direct { value, underflow, .. } => {
                    if underflow {
                        eprintln!("warning: h_n(x) underflowed to zero");
                    }
                    Value::Real(value)
                }
                v => Value::Real(v.value()),
            }
        }
        Laguerre => Value::Real(laguerre_eval(idx(&pt[0]), re(&pt[1]), re(&pt[2]))),
        ComplexHermite => Value::Complex(complex_hermite_eval(idx(&pt[0]), idx(&pt[1]), cx(&pt[2]))),
        FwtClosed => {
            let point = PhasePoint::new(re(&pt[2]), re(&pt[3]))?;
            Value::Complex(fwt_hermite_closed(idx(&pt[0]), idx(&pt[1]), point))
        }
        FwtQuad => {
            let (m, n) = (idx(&pt[0]), idx(&pt[1]));
            let point = PhasePoint::new(re(&pt[2]), re(&pt[3]))?;
            let order = quad_order.unwrap_or_else(|| default_rule_order(m + n, point.q));
            if !rules.contains_key(&order) {
                rules.insert(order, QuadratureRule::gauss_hermite(order)?);
            }
            let v = fwt_quadrature(&WindowFunction::hermite(m), &WindowFunction::hermite(n), point, &rules[&order]);
            Value::Complex(v)
        }
        MehlerKernel => Value::Real(mehler_kernel(re(&pt[1]), re(&pt[2]), re(&pt[0]))?),
    })
}

fn cell17(v: &Value) -> String {
    match v {
        Value::Real(x) => fmt17(*x),
        Value::Complex(z) => {
            let im = fmt17(z.im.abs());
            let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) { '-' } else { '+' };
            format!("{}{sign}{im}i", fmt17(z.re))
        }
    }
}

fn cell6(v: &Value) -> String {
    match v {
        Value::Real(x) => fmt_g6(*x),
        Value::Complex(z) => fmt_complex_g6(*z),
    }
}

impl Table {
    fn render(&self, format: OutputFormat, single: bool) -> String {
        match format {
            OutputFormat::Json => self.json(),
            OutputFormat::Plain if single => format!("{}\n", cell6(&self.values[0])),
            OutputFormat::Csv if single => {
                let mut rows = vec![self.axes.iter().map(|a| a.name.to_string()).chain(["value".to_string()]).collect()];
                let mut r: Vec<String> = self.axes.iter().map(|a| a.values[0].label()).collect();
                r.push(cell17(&self.values[0]));
                rows.push(r);
                csv_text(&rows)
            }
            _ => {
                // rows: first axis; columns: product of the remaining axes
                let ncols = self.values.len() / self.axes[0].values.len();
                let mut col_labels = vec![String::new(); ncols];
                let mut stride = ncols;
                for a in &self.axes[1..] {
                    stride /= a.values.len();
                    for (c, label) in col_labels.iter_mut().enumerate() {
                        let v = &a.values[(c / stride) % a.values.len()];
                        if !label.is_empty() {
                            label.push(';');
                        }
                        label.push_str(&format!("{}={}", a.name, v.label()));
                    }
                }
                let header: Vec<String> = std::iter::once(self.axes[0].name.to_string()).chain(col_labels).collect();
                let cell = if format == OutputFormat::Csv { cell17 } else { cell6 };
                let body: Vec<Vec<String>> = self.axes[0]
                    .values
                    .iter()
                    .enumerate()
                    .map(|(r, v)| {
                        std::iter::once(v.label())
                            .chain(self.values[r * ncols..(r + 1) * ncols].iter().map(cell))
                            .collect()
                    })
                    .collect();
                if format == OutputFormat::Csv {
                    let mut rows = vec![header];
                    rows.extend(body);
                    csv_text(&rows)
                } else {
                    let h: Vec<&str> = header.iter().map(String::as_str).collect();
                    plain_table(&h, &body)
                }
            }
        }
    }

    fn json(&self) -> String {
        let sizes: Vec<usize> = self.axes.iter().map(|a| a.values.len()).collect();
        let points: Vec<JsonPoint> = self
            .values
            .iter()
            .enumerate()
            .map(|(k, value)| {
                let mut rem = k;
                let mut coords = vec![0; sizes.len()];
                for d in (0..sizes.len()).rev() {
                    coords[d] = rem % sizes[d];
                    rem /= sizes[d];
                }
                let params = self.axes.iter().zip(coords).map(|(a, c)| (a.name, a.values[c])).collect();
                JsonPoint { params, value }
            })
            .collect();
        let doc = JsonTable { family: family_name(self.family), points };
        serde_json::to_string_pretty(&doc).expect("table serialization is infallible") + "\n"
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    family: &'static str,
    points: Vec<JsonPoint<'a>>,
}

struct JsonPoint<'a> {
    params: Vec<(&'static str, Arg)>,
    value: &'a Value,
}

#[derive(Serialize)]
struct JsonComplex {
    re: Num,
    im: Num,
}

impl Serialize for Arg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Arg::Index(i) => s.serialize_u64(*i as u64),
            Arg::Real(x) => Num(*x).serialize(s),
            Arg::Complex(z) => JsonComplex { re: Num(z.re), im: Num(z.im) }.serialize(s),
        }
    }
}

impl Serialize for JsonPoint<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct P<'b>(&'b [(&'static str, Arg)]);
        impl Serialize for P<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0 {
                    m.serialize_entry(k, v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("params", &P(&self.params))?;
        match self.value {
            Value::Real(x) => m.serialize_entry("value", &Num(*x))?,
            Value::Complex(z) => m.serialize_entry("value", &JsonComplex { re: Num(z.re), im: Num(z.im) })?,
        }
        m.end()
    }
}

fn csv_text(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv output is utf-8")
}
