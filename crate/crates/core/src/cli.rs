//! The `vpaths` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bijections::{self, tau, DecoratedVPath, MapId};
use crate::oracles::{formula_vn, oracle, OracleResult, Params, FORMULA_NAMES, ORACLE_NAMES};
use crate::paths::{analyze, enumerate_family, parse_path, render_ascii, Family, Filter, Path, PathStats};
use crate::ring::{Polynomial, Rational};
use crate::series::v_series;
use crate::verify::{run_suite, Suite};
use crate::weights::{registry_get, weight_sum_v, WeightSpec};

#[derive(Parser, Debug)]
#[command(name = "vpaths", version, about = "Valley-restricted weighted Dyck paths")]
struct Cli {
    /// Truncation order for series output.
    #[arg(long, global = true, default_value_t = 12)]
    order: usize,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Numeric values `k=v` used to flatten polynomials for csv output.
    #[arg(long = "at", global = true, value_name = "K=V")]
    at: Vec<String>,
    /// Worker threads for `verify`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also write the exact standard output bytes to this file.
    #[arg(long, global = true, value_name = "FILE")]
    seed_fixtures: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
    Ascii,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of the generating function of V for a weight spec.
    Series(SeriesArgs),
    /// Brute-force weight sum over V of size n.
    Count(CountArgs),
    /// List the paths of a family.
    Enumerate(EnumerateArgs),
    /// Apply, invert or check one of the bijections.
    Biject(BijectArgs),
    /// Evaluate a named sequence or closed formula.
    Oracle(OracleArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Draw a path.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Registry name, or `@file` holding a spec JSON object.
    #[arg(long)]
    spec: String,
    /// Parameter binding `k=v`; the value may be a polynomial or `sym`.
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Print the weight sequences instead of the series.
    #[arg(long)]
    show_weights: bool,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "none")]
    filter: String,
}

#[derive(Args, Debug)]
struct BijectArgs {
    /// phi, theta, sigma, rho, psi or tau.
    #[arg(long)]
    map: String,
    #[arg(long)]
    n: Option<usize>,
    /// Check both round trips and the image at size n.
    #[arg(long, requires = "n")]
    roundtrip: bool,
    /// Print every decorated object of size n.
    #[arg(long, requires = "n", conflicts_with = "roundtrip")]
    list: bool,
    /// Map decorated objects from `@file` forward.
    #[arg(long, value_name = "@FILE", conflicts_with_all = ["n", "invert"])]
    apply: Option<String>,
    /// Map paths (or tau objects) from `@file` back.
    #[arg(long, value_name = "@FILE", conflicts_with = "n")]
    invert: Option<String>,
    /// Side of the tau objects listed with `--list`.
    #[arg(long, default_value = "src_4372")]
    side: String,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    n: usize,
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    path: String,
    #[arg(long, default_value = "dyck")]
    family: String,
}

/// JSON form of `series`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesOutput {
    pub spec: String,
    pub params: BTreeMap<String, String>,
    pub order: usize,
    pub coefficients: Vec<Polynomial>,
}

/// JSON form of `count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    pub spec: String,
    pub params: BTreeMap<String, String>,
    pub n: usize,
    pub value: Polynomial,
}

/// JSON form of `render`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderOutput {
    pub path: Path,
    pub ascii: String,
    pub stats: PathStats,
}

/// JSON form of `biject --roundtrip`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripOutput {
    pub map: String,
    pub n: usize,
    pub objects: usize,
    pub targets: usize,
    pub roundtrip: bool,
    pub image_matches: bool,
}

/// Outcome of a subcommand: text for standard output plus an exit code.
struct Outcome {
    text: String,
    code: i32,
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

type CliResult<T> = Result<T, CliError>;

/// Runs the command line. Returns 0 on success, 1 when a verification or
/// computation fails and 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(&cli, err) {
        Ok(o) => {
            if out.write_all(o.text.as_bytes()).is_err() {
                return 1;
            }
            if let Some(file) = &cli.seed_fixtures {
                if let Err(e) = std::fs::write(file, o.text.as_bytes()) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", file.display());
                    return 1;
                }
            }
            o.code
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli, err: &mut dyn Write) -> CliResult<Outcome> {
    let ok = |text: String| Ok(Outcome { text, code: 0 });
    match &cli.command {
        Command::Series(a) => ok(series(cli, a)?),
        Command::Count(a) => ok(count(cli, a)?),
        Command::Enumerate(a) => ok(enumerate(cli, a)?),
        Command::Biject(a) => biject(cli, a),
        Command::Oracle(a) => ok(oracle_cmd(cli, a)?),
        Command::Verify(a) => verify(cli, a, err),
        Command::Render(a) => ok(render(cli, a)?),
    }
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn read_at_file(arg: &str) -> CliResult<String> {
    let file = arg.strip_prefix('@').ok_or_else(|| usage(format!("expected @file, got `{arg}`")))?;
    std::fs::read_to_string(file).map_err(|e| usage(format!("cannot read {file}: {e}")))
}

/// Parses a file holding either one object or a list of them.
fn read_many<T: for<'de> Deserialize<'de>>(arg: &str) -> CliResult<(Vec<T>, bool)> {
    let text = read_at_file(arg)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| usage(format!("bad JSON in {arg}: {e}")))?;
    let many = value.is_array();
    let items = if many {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|x| vec![x])
    };
    let items = items.map_err(|e| usage(format!("bad JSON in {arg}: {e}")))?;
    Ok((items, many))
}

fn write_many<T: Serialize>(items: &[T], many: bool) -> CliResult<String> {
    if many {
        json(&items)
    } else {
        json(&items[0])
    }
}

fn parse_params(raw: &[String]) -> CliResult<(Params, BTreeMap<String, String>)> {
    let mut params = Params::new();
    let mut shown = BTreeMap::new();
    for kv in raw {
        let (k, v) = kv.split_once('=').ok_or_else(|| usage(format!("expected k=v, got `{kv}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if v == "sym" {
            continue;
        }
        let p: Polynomial = v.parse().map_err(|e| usage(format!("bad value for `{k}`: {e}")))?;
        params.insert(k, p.clone());
        shown.insert(k.to_string(), p.to_string());
    }
    Ok((params, shown))
}

fn load_spec(a: &SpecArgs, order: usize) -> CliResult<(WeightSpec, BTreeMap<String, String>)> {
    let (params, shown) = parse_params(&a.params)?;
    if a.spec.starts_with('@') {
        let text = read_at_file(&a.spec)?;
        let spec: WeightSpec =
            serde_json::from_str(&text).map_err(|e| usage(format!("bad spec file {}: {e}", a.spec)))?;
        let spec = apply_spec(&spec, &params)?;
        if spec.order() < order {
            return Err(usage(format!("spec file has order {}, need {order}", spec.order())));
        }
        Ok((spec, shown))
    } else {
        Ok((registry_get(&a.spec, &params, order).map_err(|e| usage(e.to_string()))?, shown))
    }
}

fn apply_spec(spec: &WeightSpec, params: &Params) -> CliResult<WeightSpec> {
    let f = |v: &[Polynomial]| v.iter().map(|p| params.apply(p)).collect::<Result<Vec<_>, _>>();
    Ok(WeightSpec { alpha: f(&spec.alpha)?, beta: f(&spec.beta)?, gamma: f(&spec.gamma)? })
}

/// Evaluates `p` at the `--at` bindings, requiring a number.
fn flatten(cli: &Cli, p: &Polynomial) -> CliResult<Rational> {
    let (params, _) = parse_params(&cli.at)?;
    let v = params.apply(p)?;
    v.as_constant().ok_or_else(|| usage(format!("csv needs every symbol bound with --at; left with `{v}`")))
}

fn csv_rows(cli: &Cli, header: &str, rows: &[(usize, &Polynomial)]) -> CliResult<String> {
    let mut s = format!("{header}\n");
    for (n, p) in rows {
        s.push_str(&format!("{n},{}\n", flatten(cli, p)?));
    }
    Ok(s)
}

fn no_format(cli: &Cli, what: &str) -> CliError {
    usage(format!("format {:?} is not available for {what}", cli.format.unwrap()).to_lowercase())
}

fn series(cli: &Cli, a: &SeriesArgs) -> CliResult<String> {
    let (spec, params) = load_spec(&a.spec, cli.order.max(1))?;
    if a.show_weights {
        return match cli.format.unwrap_or(Format::Json) {
            Format::Json => json(&spec),
            Format::Pretty => {
                let mut s = String::new();
                for (name, seq) in [("alpha", &spec.alpha), ("beta", &spec.beta), ("gamma", &spec.gamma)] {
                    for (i, p) in seq.iter().enumerate() {
                        s.push_str(&format!("{name}_{} = {p}\n", i + 1));
                    }
                }
                Ok(s)
            }
            _ => Err(no_format(cli, "series --show-weights")),
        };
    }
    let [al, be, ga] = spec.to_series();
    let v = v_series(&al.truncate(cli.order), &be.truncate(cli.order), &ga.truncate(cli.order))?;
    let output = SeriesOutput { spec: a.spec.spec.clone(), params, order: cli.order, coefficients: v.coeffs().to_vec() };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(&output),
        Format::Pretty => Ok(output.coefficients.iter().enumerate().map(|(n, p)| format!("V_{n} = {p}\n")).collect()),
        Format::Csv => {
            let rows: Vec<_> = output.coefficients.iter().enumerate().collect();
            csv_rows(cli, "n,value", &rows)
        }
        Format::Ascii => Err(no_format(cli, "series")),
    }
}

fn count(cli: &Cli, a: &CountArgs) -> CliResult<String> {
    let (spec, params) = load_spec(&a.spec, a.n.max(1))?;
    let value = weight_sum_v(a.n, &spec)?;
    let output = CountOutput { spec: a.spec.spec.clone(), params, n: a.n, value };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(&output),
        Format::Pretty => Ok(format!("{}\n", output.value)),
        Format::Csv => csv_rows(cli, "n,value", &[(a.n, &output.value)]),
        Format::Ascii => Err(no_format(cli, "count")),
    }
}

fn family(s: &str) -> CliResult<Family> {
    Family::parse(s).ok_or_else(|| usage(format!("unknown family `{s}`")))
}

fn enumerate(cli: &Cli, a: &EnumerateArgs) -> CliResult<String> {
    let fam = family(&a.family)?;
    let filter = Filter::parse(&a.filter).ok_or_else(|| usage(format!("unknown filter `{}`", a.filter)))?;
    let paths = enumerate_family(fam, a.n, filter);
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(&paths),
        Format::Pretty => Ok(paths.iter().map(|p| format!("{p}\n")).collect()),
        Format::Ascii => Ok(paths.iter().map(|p| format!("{p}\n{}\n", render_ascii(p))).collect()),
        Format::Csv => {
            let mut s = String::from("index,steps\n");
            for (i, p) in paths.iter().enumerate() {
                s.push_str(&format!("{i},{p}\n"));
            }
            Ok(s)
        }
    }
}

fn biject(cli: &Cli, a: &BijectArgs) -> CliResult<Outcome> {
    let fmt = cli.format.unwrap_or(Format::Json);
    if !matches!(fmt, Format::Json | Format::Pretty) {
        return Err(no_format(cli, "biject"));
    }
    if a.map == "tau" {
        return biject_tau(a, fmt);
    }
    let map = MapId::parse(&a.map).map_err(|e| usage(e.to_string()))?;
    let done = |text: String| Ok(Outcome { text, code: 0 });
    if let Some(file) = &a.apply {
        let (objs, many) = read_many::<DecoratedVPath>(file)?;
        let mut images = Vec::with_capacity(objs.len());
        for d in &objs {
            if d.map != map {
                return Err(usage(format!("object is decorated for {}, not {}", d.map.name(), map.name())));
            }
            images.push(bijections::forward(d)?);
        }
        return done(match fmt {
            Format::Json => write_many(&images, many)?,
            _ => images.iter().map(|p| format!("{p}\n")).collect(),
        });
    }
    if let Some(file) = &a.invert {
        let (paths, many) = read_many::<Path>(file)?;
        let objs = paths.iter().map(|p| bijections::inverse(map, p)).collect::<Result<Vec<_>, _>>()?;
        return done(match fmt {
            Format::Json => write_many(&objs, many)?,
            _ => objs.iter().map(|d| format!("{d:?}\n")).collect(),
        });
    }
    let n = a.n.ok_or_else(|| usage("biject needs --n, --apply or --invert"))?;
    let objs = bijections::enumerate_decorated(n, map);
    if a.list {
        return done(match fmt {
            Format::Json => json(&objs)?,
            _ => objs
                .iter()
                .map(|d| Ok(format!("{} -> {}\n", d.structure, bijections::forward(d)?)))
                .collect::<CliResult<String>>()?,
        });
    }
    let mut roundtrip = true;
    let mut images = Vec::with_capacity(objs.len());
    for d in &objs {
        let img = bijections::forward(d)?;
        roundtrip &= bijections::inverse(map, &img).as_ref() == Ok(d);
        images.push(img);
    }
    let mut targets = enumerate_family(map.target_family(), n, map.target_filter());
    for t in &targets {
        roundtrip &= bijections::inverse(map, t).and_then(|d| bijections::forward(&d)).as_ref() == Ok(t);
    }
    images.sort();
    targets.sort();
    let output = RoundtripOutput {
        map: map.name().to_string(),
        n,
        objects: objs.len(),
        targets: targets.len(),
        roundtrip,
        image_matches: images == targets,
    };
    roundtrip_outcome(output, fmt)
}

fn roundtrip_outcome(output: RoundtripOutput, fmt: Format) -> CliResult<Outcome> {
    let code = if output.roundtrip && output.image_matches { 0 } else { 1 };
    let text = match fmt {
        Format::Json => json(&output)?,
        _ => format!(
            "{} n={}: {} objects, {} targets, roundtrip {}, image {}\n",
            output.map,
            output.n,
            output.objects,
            output.targets,
            if output.roundtrip { "ok" } else { "FAILED" },
            if output.image_matches { "ok" } else { "FAILED" },
        ),
    };
    Ok(Outcome { text, code })
}

fn biject_tau(a: &BijectArgs, fmt: Format) -> CliResult<Outcome> {
    let show = |objs: &[tau::TauDecorated], many: bool| -> CliResult<String> {
        match fmt {
            Format::Json => write_many(objs, many),
            _ => Ok(objs
                .iter()
                .map(|d| {
                    let letters: Vec<&str> = d.full_letters().iter().map(|l| l.token()).collect();
                    format!("{} {} [{}]\n", d.side.name(), d.structure(), letters.join(","))
                })
                .collect()),
        }
    };
    let done = |text: String| Ok(Outcome { text, code: 0 });
    if let Some(file) = &a.apply {
        let (objs, many) = read_many::<tau::TauDecorated>(file)?;
        let images = objs.iter().map(tau::forward).collect::<Result<Vec<_>, _>>()?;
        return done(show(&images, many)?);
    }
    if let Some(file) = &a.invert {
        let (objs, many) = read_many::<tau::TauDecorated>(file)?;
        let images = objs.iter().map(tau::inverse).collect::<Result<Vec<_>, _>>()?;
        return done(show(&images, many)?);
    }
    let n = a.n.ok_or_else(|| usage("biject needs --n, --apply or --invert"))?;
    if a.list {
        let side = tau::Side::parse(&a.side).ok_or_else(|| usage(format!("unknown side `{}`", a.side)))?;
        return done(show(&tau::enumerate(n, side), true)?);
    }
    let src = tau::enumerate(n, tau::Side::Src4372);
    let mut dst = tau::enumerate(n, tau::Side::Dst2174);
    let mut roundtrip = true;
    let mut images = Vec::with_capacity(src.len());
    for d in &src {
        let img = tau::forward(d)?;
        roundtrip &= tau::inverse(&img).as_ref() == Ok(d) && img.weight() == d.weight();
        images.push(img);
    }
    for d in &dst {
        roundtrip &= tau::inverse(d).and_then(|x| tau::forward(&x)).as_ref() == Ok(d);
    }
    images.sort();
    dst.sort();
    let output = RoundtripOutput {
        map: "tau".into(),
        n,
        objects: src.len(),
        targets: dst.len(),
        roundtrip,
        image_matches: images == dst,
    };
    roundtrip_outcome(output, fmt)
}

fn oracle_cmd(cli: &Cli, a: &OracleArgs) -> CliResult<String> {
    let (params, shown) = parse_params(&a.params)?;
    let value = if ORACLE_NAMES.contains(&a.name.as_str()) {
        oracle(&a.name, a.n, &params)?
    } else if FORMULA_NAMES.contains(&a.name.as_str()) {
        formula_vn(&a.name, a.n, &params)?
    } else {
        return Err(usage(format!("unknown oracle `{}`", a.name)));
    };
    let output = OracleResult { name: a.name.clone(), n: a.n, params: shown, value };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json(&output),
        Format::Pretty => Ok(format!("{}\n", output.value)),
        Format::Csv => csv_rows(cli, "n,value", &[(a.n, &output.value)]),
        Format::Ascii => Err(no_format(cli, "oracle")),
    }
}

fn verify(cli: &Cli, a: &VerifyArgs, err: &mut dyn Write) -> CliResult<Outcome> {
    let suite = Suite::parse(&a.suite).map_err(|e| usage(e.to_string()))?;
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let start = Instant::now();
    let report = run_suite(suite, a.max_n, jobs)?;
    let _ = writeln!(err, "{}: {} checks in {:.2?}", report.suite, report.checks.len(), start.elapsed());
    let text = match cli.format.unwrap_or(Format::Pretty) {
        Format::Json => json(&report)?,
        Format::Pretty => report.table(),
        Format::Csv => {
            let mut s = String::from("name,status\n");
            for c in &report.checks {
                s.push_str(&format!("{},{}\n", c.name, if c.counterexample.is_none() { "pass" } else { "fail" }));
            }
            s
        }
        Format::Ascii => return Err(no_format(cli, "verify")),
    };
    Ok(Outcome { text, code: if report.all_passed() { 0 } else { 1 } })
}

fn render(cli: &Cli, a: &RenderArgs) -> CliResult<String> {
    let fam = family(&a.family)?;
    let path = parse_path(&a.path, fam).map_err(|e| usage(e.to_string()))?;
    let ascii = render_ascii(&path);
    match cli.format.unwrap_or(Format::Ascii) {
        Format::Ascii => Ok(ascii),
        Format::Json => json(&RenderOutput { stats: analyze(&path), path, ascii }),
        Format::Pretty => Ok(format!("{path}\n{ascii}")),
        Format::Csv => Err(no_format(cli, "render")),
    }
}
