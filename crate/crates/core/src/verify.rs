//! Named verification suites. Every check compares two independently
//! computed exact values; the driver runs checks in parallel and reports
//! them in declaration order.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bijections::{self, tau, MapId};
use crate::oracles::{self, formula_vn, Params};
use crate::paths::{enumerate_family, is_in_v, Family, Filter};
use crate::ring::{vars, Polynomial, Var};
use crate::series::{gen_named, v_series, v_series_ab, NamedSeries, TruncatedSeries};
use crate::weights::{
    registry_series, target_weight, weight_of_path, weight_sum_target, weight_sum_v, TargetWeighting, WeightSpec,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem21,
    Examples2,
    Weights,
    Motzkin31,
    Schroder32,
    Narayana33,
    Chebyshev34,
    Delannoy35,
    Fuss36,
    Bijections,
    Oracles,
    All,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Theorem21,
        Suite::Examples2,
        Suite::Weights,
        Suite::Motzkin31,
        Suite::Schroder32,
        Suite::Narayana33,
        Suite::Chebyshev34,
        Suite::Delannoy35,
        Suite::Fuss36,
        Suite::Bijections,
        Suite::Oracles,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem21 => "theorem21",
            Suite::Examples2 => "examples2",
            Suite::Weights => "weights",
            Suite::Motzkin31 => "motzkin31",
            Suite::Schroder32 => "schroder32",
            Suite::Narayana33 => "narayana33",
            Suite::Chebyshev34 => "chebyshev34",
            Suite::Delannoy35 => "delannoy35",
            Suite::Fuss36 => "fuss36",
            Suite::Bijections => "bijections",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, VerifyError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Counterexample payload of a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: Option<usize>,
    pub spec: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_n: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Human-readable table, one line per check.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match (&c.status, &c.counterexample) {
                (Status::Pass, _) => out.push_str(&format!("PASS  {}\n", c.name)),
                (Status::Fail, Some(f)) => {
                    let n = f.n.map(|n| format!(" n={n}")).unwrap_or_default();
                    out.push_str(&format!("FAIL  {}{n} [{}]: {} != {}\n", c.name, f.spec, f.left, f.right));
                }
                (Status::Fail, None) => out.push_str(&format!("FAIL  {}\n", c.name)),
            }
        }
        out.push_str(&format!("{}: {} passed, {} failed\n", self.suite, self.passed, self.failed));
        out
    }
}

type Job = Box<dyn Fn() -> Result<(), Failure> + Send + Sync>;

pub struct Check {
    pub name: String,
    job: Job,
}

impl Check {
    fn new(name: impl Into<String>, job: impl Fn() -> Result<(), Failure> + Send + Sync + 'static) -> Check {
        Check { name: name.into(), job: Box::new(job) }
    }

    pub fn run(&self) -> CheckResult {
        match (self.job)() {
            Ok(()) => CheckResult { name: self.name.clone(), status: Status::Pass, counterexample: None },
            Err(f) => CheckResult { name: self.name.clone(), status: Status::Fail, counterexample: Some(f) },
        }
    }
}

fn expect_eq(n: usize, spec: &str, left: &Polynomial, right: &Polynomial) -> Result<(), Failure> {
    if left == right {
        Ok(())
    } else {
        Err(Failure { n: Some(n), spec: spec.to_string(), left: left.to_string(), right: right.to_string() })
    }
}

fn expect(n: usize, spec: &str, ok: bool, what: impl FnOnce() -> (String, String)) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        let (left, right) = what();
        Err(Failure { n: Some(n), spec: spec.to_string(), left, right })
    }
}

trait OrFail<T> {
    fn or_fail(self, n: usize, spec: &str) -> Result<T, Failure>;
}

impl<T, E: fmt::Display> OrFail<T> for Result<T, E> {
    fn or_fail(self, n: usize, spec: &str) -> Result<T, Failure> {
        self.map_err(|e| Failure { n: Some(n), spec: spec.to_string(), left: "error".into(), right: e.to_string() })
    }
}

/// A check that fails up front, used when a suite's shared setup errors.
fn setup_failure(name: String, spec: String, err: String) -> Check {
    Check::new(name, move || Err(Failure { n: None, spec: spec.clone(), left: "setup error".into(), right: err.clone() }))
}

fn int(k: i64) -> Polynomial {
    Polynomial::int(k)
}

fn big(k: num_bigint::BigInt) -> Polynomial {
    Polynomial::from_bigint(k)
}

/// Builds the checks of one suite in declaration order.
pub fn build_checks(suite: Suite, max_n: usize) -> Vec<Check> {
    match suite {
        Suite::Theorem21 => theorem21(max_n),
        Suite::Examples2 => examples2(max_n),
        Suite::Weights => weights(max_n),
        Suite::Motzkin31 => motzkin31(max_n),
        Suite::Schroder32 => schroder32(max_n),
        Suite::Narayana33 => narayana33(max_n),
        Suite::Chebyshev34 => chebyshev34(max_n),
        Suite::Delannoy35 => delannoy35(max_n),
        Suite::Fuss36 => fuss36(max_n),
        Suite::Bijections => bijection_checks(max_n),
        Suite::Oracles => oracle_checks(max_n),
        Suite::All => Suite::ALL[..Suite::ALL.len() - 1]
            .iter()
            .flat_map(|&s| build_checks(s, max_n))
            .collect(),
    }
}

/// Runs a suite on `jobs` worker threads. The report does not depend on
/// `jobs`.
pub fn run_suite(suite: Suite, max_n: usize, jobs: usize) -> Result<VerifyReport, VerifyError> {
    let checks = build_checks(suite, max_n);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let results: Vec<CheckResult> = pool.install(|| checks.par_iter().map(Check::run).collect());
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    Ok(VerifyReport {
        suite: suite.name().to_string(),
        max_n,
        passed: results.len() - failed,
        failed,
        checks: results,
    })
}

fn theorem21(max_n: usize) -> Vec<Check> {
    let spec = Arc::new(WeightSpec::generic(max_n.max(1)));
    let [a, b, g] = spec.to_series();
    let v = match v_series(&a, &b, &g) {
        Ok(v) => Arc::new(v),
        Err(e) => return vec![setup_failure("theorem21/setup".into(), "generic".into(), e.to_string())],
    };
    (0..=max_n)
        .map(|n| {
            let (spec, v) = (spec.clone(), v.clone());
            Check::new(format!("theorem21/n={n}"), move || {
                let tag = "generic";
                let sum = weight_sum_v(n, &spec).or_fail(n, tag)?;
                expect_eq(n, tag, &sum, v.coeff(n))?;
                let mut brute = Polynomial::zero();
                for p in enumerate_family(Family::Dyck, n, Filter::None).iter().filter(|p| is_in_v(p)) {
                    brute += &weight_of_path(p, &spec).or_fail(n, tag)?;
                }
                expect_eq(n, tag, &sum, &brute)
            })
        })
        .collect()
}

/// Shared registry series with both series forms precomputed.
struct RegistryData {
    tag: String,
    spec: WeightSpec,
    v_full: TruncatedSeries,
    v_ab: Option<TruncatedSeries>,
}

fn registry_data(name: &str, params: &Params, order: usize) -> Result<RegistryData, String> {
    let s = registry_series(name, params, order).map_err(|e| e.to_string())?;
    let spec = WeightSpec::from_series(&s.alpha, &s.beta, &s.gamma).map_err(|e| e.to_string())?;
    let v_full = v_series(&s.alpha, &s.beta, &s.gamma).map_err(|e| e.to_string())?;
    let v_ab = if s.product_form {
        Some(v_series_ab(&s.alpha, &s.beta).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let mut tag = name.to_string();
    for (k, v) in params.iter() {
        tag.push_str(&format!(" {k}={v}"));
    }
    Ok(RegistryData { tag, spec, v_full, v_ab })
}

/// Target-family side of a difference identity.
#[derive(Clone, Copy)]
struct Target {
    family: Family,
    filter: Filter,
    weighting: TargetWeighting,
}

struct FormulaCase {
    prefix: String,
    registry: String,
    params: Params,
    formula: String,
    formula_params: Params,
    target: Option<Target>,
    /// Largest `n` for the brute-force weight sums.
    brute_max: usize,
}

/// Per-`n` checks that a closed formula equals the series coefficients of a
/// registry spec, and for small `n` the brute-force sums over V and over the
/// target family.
fn formula_checks(case: FormulaCase, max_n: usize) -> Vec<Check> {
    let data = match registry_data(&case.registry, &case.params, max_n.max(1)) {
        Ok(d) => Arc::new(d),
        Err(e) => return vec![setup_failure(format!("{}/setup", case.prefix), case.registry, e)],
    };
    let formula = case.formula;
    let fparams = Arc::new(case.formula_params);
    (0..=max_n)
        .map(|n| {
            let (data, formula, fparams) = (data.clone(), formula.clone(), fparams.clone());
            let (target, brute_max) = (case.target, case.brute_max);
            Check::new(format!("{}/n={n}", case.prefix), move || {
                let tag = format!("{} vs {formula}", data.tag);
                let want = formula_vn(&formula, n, &fparams).or_fail(n, &tag)?;
                if let Some(v) = &data.v_ab {
                    expect_eq(n, &tag, v.coeff(n), &want)?;
                }
                expect_eq(n, &tag, data.v_full.coeff(n), &want)?;
                if n <= brute_max {
                    let sum = weight_sum_v(n, &data.spec).or_fail(n, &tag)?;
                    expect_eq(n, &tag, &sum, &want)?;
                    if let Some(t) = target {
                        expect_eq(n, &tag, &weight_sum_target(n, t.family, t.filter, t.weighting), &want)?;
                    }
                }
                Ok(())
            })
        })
        .collect()
}

fn plain(prefix: &str, registry: &str, formula: &str, target: Option<Target>, brute_max: usize) -> FormulaCase {
    FormulaCase {
        prefix: prefix.to_string(),
        registry: registry.to_string(),
        params: Params::new(),
        formula: formula.to_string(),
        formula_params: Params::new(),
        target,
        brute_max,
    }
}

fn examples2(max_n: usize) -> Vec<Check> {
    let mut out = formula_checks(plain("examples2/geom_3x", "geom_3x", "ex21_geom3", None, 8), max_n);
    out.extend(formula_checks(plain("examples2/geom_fib", "geom_fib", "ex21_fib", None, 8), max_n));
    out
}

fn motzkin31(max_n: usize) -> Vec<Check> {
    let target = Target { family: Family::Motzkin, filter: Filter::FirstNotFlat, weighting: TargetWeighting::MotzkinAb };
    formula_checks(plain("motzkin31/ex31", "motzkin_ab", "ex31", Some(target), 7), max_n)
}

fn schroder32(max_n: usize) -> Vec<Check> {
    let large = Target { family: Family::SchroderLarge, filter: Filter::YFilter, weighting: TargetWeighting::SchroderQ };
    let small =
        Target { family: Family::SchroderSmall, filter: Filter::FirstTwoNotUd, weighting: TargetWeighting::SchroderQ };
    let mut out = formula_checks(plain("schroder32/ex33", "schroder_large_q", "ex33", Some(large), 6), max_n);
    out.extend(formula_checks(plain("schroder32/ex35", "schroder_small_q", "ex35", Some(small), 6), max_n));
    out
}

fn narayana33(max_n: usize) -> Vec<Check> {
    let plain_t =
        Target { family: Family::Dyck, filter: Filter::FirstTwoNotUd, weighting: TargetWeighting::NarayanaT };
    let level = Target { family: Family::Dyck, filter: Filter::FirstTwoNotUd, weighting: TargetWeighting::LevelPeaks };
    let mut out = formula_checks(plain("narayana33/ex37", "narayana_t", "ex37", Some(plain_t), 7), max_n);
    out.extend(formula_checks(plain("narayana33/ex39", "narayana_shift_t", "ex39", Some(level), 7), max_n));
    // At t = 1 the two families count Dyck paths not starting with ud.
    for n in 0..=max_n {
        out.push(Check::new(format!("narayana33/t=1/n={n}"), move || {
            let one = Params::new().with_int("t", 1);
            let ex37 = formula_vn("ex37", n, &one).or_fail(n, "ex37 t=1")?;
            let ex39 = formula_vn("ex39", n, &one).or_fail(n, "ex39 t=1")?;
            let c = |k: usize| big(oracles::catalan(k as u64));
            let prev = if n == 0 { Polynomial::zero() } else { c(n - 1) };
            expect_eq(n, "ex37 t=1 vs C_n - C_(n-1)", &ex37, &(&c(n) - &prev))?;
            let want = if n == 0 { Polynomial::one() } else { &c(n + 1) - &(&int(2) * &c(n)) };
            expect_eq(n, "ex39 t=1 vs C_(n+1) - 2C_n", &ex39, &want)
        }));
    }
    out
}

fn abcd(a: i64, b: i64, c: i64, d: i64) -> Params {
    Params::new().with_int("a", a).with_int("b", b).with_int("c", c).with_int("d", d)
}

fn chebyshev34(max_n: usize) -> Vec<Check> {
    let mut out = formula_checks(plain("chebyshev34/eq31", "chebyshev_abcd", "eq31_closed", None, 5), max_n);
    let cases: [(&str, [i64; 4]); 6] = [
        ("case1", [2, 1, 2, 1]),
        ("case1", [3, 1, 3, 2]),
        ("case2", [2, 1, 3, 2]),
        ("case2", [3, 2, 5, 2]),
        ("case3", [2, 1, 1, 1]),
        ("case3", [1, 0, 1, 2]),
    ];
    for (formula, [a, b, c, d]) in cases {
        for closed in [formula, "eq31_closed"] {
            out.extend(formula_checks(
                FormulaCase {
                    prefix: format!("chebyshev34/{formula}({a},{b},{c},{d})/{closed}"),
                    registry: "chebyshev_abcd".into(),
                    params: abcd(a, b, c, d),
                    formula: closed.into(),
                    formula_params: abcd(a, b, c, d),
                    target: None,
                    brute_max: 6,
                },
                max_n,
            ));
        }
    }
    out.extend(formula_checks(plain("chebyshev34/cheb2", "chebyshev_second", "cheb2", None, 5), max_n));
    out
}

/// The seven parameter tuples of the Delannoy table with their multiplier.
pub const DELANNOY_TUPLES: [([i64; 4], i64); 7] = [
    ([4, 3, 7, 2], 7),
    ([2, 1, 7, 4], 7),
    ([5, 4, 4, 1], 4),
    ([5, 1, 1, 1], 4),
    ([1, 0, 4, 5], 4),
    ([3, 2, 8, 3], 8),
    ([3, 1, 4, 3], 8),
];

fn delannoy35(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let mut series = Vec::new();
    for ([a, b, c, d], m) in DELANNOY_TUPLES {
        let params = abcd(a, b, c, d);
        out.extend(formula_checks(
            FormulaCase {
                prefix: format!("delannoy35/table31({a},{b},{c},{d})"),
                registry: "delannoy_tuple".into(),
                params: params.clone(),
                formula: "table31".into(),
                formula_params: Params::new().with_int("m", m),
                target: None,
                brute_max: 0,
            },
            max_n,
        ));
        series.push((registry_data("delannoy_tuple", &params, max_n.max(1)), m));
    }
    let series = Arc::new(series);
    for (i, pair) in [[0, 1], [2, 3], [3, 4], [5, 6]].into_iter().enumerate() {
        let series = series.clone();
        out.push(Check::new(format!("delannoy35/pair{}", i + 1), move || {
            let get = |k: usize| series[k].0.as_ref().map_err(|e| e.clone()).or_fail(0, "delannoy_tuple");
            let (x, y) = (get(pair[0])?, get(pair[1])?);
            for n in 0..=max_n {
                expect_eq(n, &format!("{} vs {}", x.tag, y.tag), x.v_ab.as_ref().unwrap().coeff(n), y.v_ab.as_ref().unwrap().coeff(n))?;
            }
            Ok(())
        }));
    }
    if max_n >= 4 {
        out.push(Check::new("delannoy35/pair1/V4", || {
            let d = registry_data("delannoy_tuple", &abcd(4, 3, 7, 2), 4).or_fail(4, "delannoy_tuple")?;
            expect_eq(4, &d.tag, d.v_full.coeff(4), &int(245))
        }));
    }
    // Scaled weight sums over V agree with the convolution of central
    // Delannoy numbers.
    for n in 2..=max_n.min(9) {
        let series = series.clone();
        out.push(Check::new(format!("delannoy35/scaled_sums/n={n}"), move || {
            let conv = big(oracles::delannoy_convolution(n - 2));
            for (data, m) in series.iter() {
                let data = data.as_ref().map_err(|e| e.clone()).or_fail(n, "delannoy_tuple")?;
                let sum = weight_sum_v(n, &data.spec).or_fail(n, &data.tag)?;
                expect_eq(n, &data.tag, &sum, &(&int(*m) * &conv))?;
            }
            Ok(())
        }));
    }
    for n in 2..=max_n.min(8) {
        out.push(Check::new(format!("delannoy35/tau/n={n}"), move || tau_check(n)));
    }
    out
}

fn tau_check(n: usize) -> Result<(), Failure> {
    let spec = "tau";
    let want = &int(7) * &big(oracles::delannoy_convolution(n - 2));
    let mut images = Vec::new();
    for side in [tau::Side::Src4372, tau::Side::Dst2174] {
        let objs = tau::enumerate(n, side);
        let mut total = Polynomial::zero();
        for d in &objs {
            total += &d.weight();
            let (fwd, again) = match side {
                tau::Side::Src4372 => {
                    let f = tau::forward(d).or_fail(n, spec)?;
                    let g = tau::inverse(&f).or_fail(n, spec)?;
                    (f, g)
                }
                tau::Side::Dst2174 => {
                    let f = tau::inverse(d).or_fail(n, spec)?;
                    let g = tau::forward(&f).or_fail(n, spec)?;
                    (f, g)
                }
            };
            expect(n, spec, &again == d, || (format!("{d:?}"), format!("{again:?}")))?;
            expect(n, spec, fwd.weight() == d.weight() && fwd.size() == d.size(), || {
                (format!("{d:?}"), format!("{fwd:?}"))
            })?;
            if side == tau::Side::Src4372 {
                images.push(fwd);
            }
        }
        expect_eq(n, &format!("{spec} {}", side.name()), &total, &want)?;
    }
    let mut dst = tau::enumerate(n, tau::Side::Dst2174);
    dst.sort();
    images.sort();
    expect(n, spec, images == dst, || (format!("{} images", images.len()), format!("{} targets", dst.len())))
}

fn fuss36(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for r in 1..=3i64 {
        for m in r..=r + 2 {
            let params = Params::new().with_int("r", r).with_int("m", m);
            let mut pairs = vec![("fuss_sym", "ex314_first"), ("fuss_asym", "ex314_second"), ("remark315", "rem315")];
            if m == r + 1 {
                pairs.push(("fuss_asym", "ex314_collapse"));
                pairs.push(("remark315", "rem315_collapse"));
            }
            for (registry, formula) in pairs {
                let formula_params =
                    if formula.ends_with("_collapse") { Params::new().with_int("r", r) } else { params.clone() };
                out.extend(formula_checks(
                    FormulaCase {
                        prefix: format!("fuss36/{formula}(r={r},m={m})"),
                        registry: registry.into(),
                        params: params.clone(),
                        formula: formula.into(),
                        formula_params,
                        target: None,
                        brute_max: 6,
                    },
                    max_n,
                ));
            }
        }
    }
    out
}

/// Brute-force sums over V against both series forms for every
/// product-form registry entry.
fn weights(max_n: usize) -> Vec<Check> {
    let entries: Vec<(&str, Params)> = vec![
        ("geom_3x", Params::new()),
        ("geom_fib", Params::new()),
        ("motzkin_ab", Params::new()),
        ("schroder_large_q", Params::new()),
        ("schroder_small_q", Params::new()),
        ("narayana_t", Params::new()),
        ("narayana_shift_t", Params::new()),
        ("chebyshev_abcd", Params::new()),
        ("chebyshev_second", Params::new()),
        ("delannoy_tuple", abcd(4, 3, 7, 2)),
        ("fuss_sym", Params::new().with_int("r", 2).with_int("m", 1)),
        ("fuss_asym", Params::new().with_int("r", 1).with_int("m", 3)),
        ("remark315", Params::new().with_int("r", 2).with_int("m", 2)),
    ];
    let top = max_n.min(8);
    let mut out = Vec::new();
    for (name, params) in entries {
        let data = match registry_data(name, &params, top.max(1)) {
            Ok(d) => Arc::new(d),
            Err(e) => {
                out.push(setup_failure(format!("weights/{name}/setup"), name.to_string(), e));
                continue;
            }
        };
        for n in 0..=top {
            let data = data.clone();
            out.push(Check::new(format!("weights/{name}/n={n}"), move || {
                let sum = weight_sum_v(n, &data.spec).or_fail(n, &data.tag)?;
                expect_eq(n, &data.tag, &sum, data.v_full.coeff(n))?;
                if let Some(v) = &data.v_ab {
                    expect_eq(n, &data.tag, &sum, v.coeff(n))?;
                }
                Ok(())
            }));
        }
    }
    out
}

fn bijection_checks(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for map in MapId::ALL {
        for n in 0..=max_n {
            out.push(Check::new(format!("bijections/{}/n={n}", map.name()), move || bijection_check(map, n)));
        }
    }
    out
}

fn formula_for(map: MapId) -> &'static str {
    match map {
        MapId::Phi => "ex31",
        MapId::Theta => "ex33",
        MapId::Sigma => "ex35",
        MapId::Rho => "ex37",
        MapId::Psi => "ex39",
    }
}

fn bijection_check(map: MapId, n: usize) -> Result<(), Failure> {
    let spec = map.name();
    let objs = bijections::enumerate_decorated(n, map);
    let mut images = Vec::with_capacity(objs.len());
    let mut total = Polynomial::zero();
    for d in &objs {
        let img = bijections::forward(d).or_fail(n, spec)?;
        let back = bijections::inverse(map, &img).or_fail(n, spec)?;
        expect(n, &format!("{spec} roundtrip"), &back == d, || (format!("{d:?}"), format!("{back:?}")))?;
        let w = bijections::eval_decorated_weight(d).or_fail(n, spec)?;
        expect_eq(n, &format!("{spec} weight of {img}"), &w, &target_weight(&img, map.target_weighting()))?;
        total += &w;
        images.push(img);
    }
    let mut targets = enumerate_family(map.target_family(), n, map.target_filter());
    for t in &targets {
        let d = bijections::inverse(map, t).or_fail(n, spec)?;
        let again = bijections::forward(&d).or_fail(n, spec)?;
        expect(n, &format!("{spec} roundtrip"), &again == t, || (t.to_string(), again.to_string()))?;
    }
    images.sort();
    targets.sort();
    expect(n, &format!("{spec} image"), images == targets, || {
        (format!("{} images", images.len()), format!("{} targets", targets.len()))
    })?;
    let want = formula_vn(formula_for(map), n, &Params::new()).or_fail(n, spec)?;
    expect_eq(n, &format!("{spec} aggregate vs {}", formula_for(map)), &total, &want)
}

fn oracle_checks(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let one = Polynomial::one();
    let q1 = &vars::q() + &one;
    for n in 0..=max_n {
        let q1 = q1.clone();
        out.push(Check::new(format!("oracles/narayana_specializations/n={n}"), move || {
            let nar = oracles::narayana(n);
            let at = |v: Polynomial| nar.eval(&[(Var::T, v)].into()).or_fail(n, "narayana");
            expect_eq(n, "N_n(1) vs C_n", &at(Polynomial::one())?, &big(oracles::catalan(n as u64)))?;
            expect_eq(n, "N_n(q+1) vs R_n(q)", &at(q1.clone())?, &oracles::schroder_large(n))
        }));
    }
    for n in 1..=max_n {
        let q1 = q1.clone();
        out.push(Check::new(format!("oracles/schroder_small/n={n}"), move || {
            let s = oracles::schroder_small(n).or_fail(n, "schroder_small")?;
            expect_eq(n, "(q+1)S_n vs R_n", &(&q1 * &s), &oracles::schroder_large(n))
        }));
    }
    out.push(Check::new("oracles/named_series", move || {
        let order = max_n.max(1);
        let named = [
            (NamedSeries::MotzkinAb, "motzkin_ab"),
            (NamedSeries::SchroderLarge, "schroder_large"),
            (NamedSeries::SchroderSmall, "schroder_small"),
            (NamedSeries::Narayana, "narayana"),
            (NamedSeries::ChebyshevU, "chebyshev_u"),
            (NamedSeries::Catalan, "catalan"),
            (NamedSeries::Delannoy, "delannoy"),
        ];
        for (series, name) in named {
            let s = gen_named(series, order).or_fail(0, name)?;
            for n in 0..=order {
                let o = oracles::oracle(name, n, &Params::new()).or_fail(n, name)?;
                expect_eq(n, &format!("{name} series vs oracle"), s.coeff(n), &o)?;
            }
        }
        for r in 1..=3u32 {
            let s = gen_named(NamedSeries::Fuss(r), order).or_fail(0, "fuss")?;
            for n in 0..=order {
                expect_eq(n, &format!("fuss r={r}"), s.coeff(n), &big(oracles::fuss(n as u64, r as u64)))?;
            }
        }
        Ok(())
    }));
    out.push(Check::new("oracles/chebyshev_recurrence", || {
        let two_t = &int(2) * &vars::t();
        for n in 2..=20 {
            let rec = &(&two_t * &oracles::chebyshev_u(n - 1)) - &oracles::chebyshev_u(n - 2);
            expect_eq(n, "U_n = 2t U_(n-1) - U_(n-2)", &oracles::chebyshev_u(n), &rec)?;
        }
        Ok(())
    }));
    out.push(Check::new("oracles/delannoy_forms", || {
        for n in 0..=20u64 {
            let (x, y) = oracles::delannoy_forms(n);
            expect(n as usize, "delannoy binomial forms", x == y, || (x.to_string(), y.to_string()))?;
        }
        Ok(())
    }));
    for n in 0..=max_n.min(10) {
        out.push(Check::new(format!("oracles/counts/n={n}"), move || {
            let count = |f: Family| int(enumerate_family(f, n, Filter::None).len() as i64);
            let at_one = |p: &Polynomial| {
                p.eval(&[(Var::A, Polynomial::one()), (Var::B, Polynomial::one()), (Var::Q, Polynomial::one())].into())
                    .or_fail(n, "count")
            };
            expect_eq(n, "catalan vs Dyck count", &big(oracles::catalan(n as u64)), &count(Family::Dyck))?;
            expect_eq(n, "motzkin vs Motzkin count", &at_one(&oracles::motzkin_ab(n))?, &count(Family::Motzkin))?;
            if n <= 8 {
                let r = at_one(&oracles::schroder_large(n))?;
                expect_eq(n, "large schroder vs count", &r, &count(Family::SchroderLarge))?;
                let s = at_one(&oracles::schroder_small(n).or_fail(n, "schroder_small")?)?;
                expect_eq(n, "small schroder vs count", &s, &count(Family::SchroderSmall))?;
                expect_eq(n, "delannoy vs count", &big(oracles::delannoy(n as u64)), &count(Family::Delannoy))?;
            }
            Ok(())
        }));
    }
    for n in 1..=max_n.min(5) {
        out.push(Check::new(format!("oracles/delannoy_hstep/n={n}"), move || {
            let conv: num_bigint::BigInt =
                (0..n).map(|i| oracles::delannoy(i as u64) * oracles::delannoy((n - 1 - i) as u64)).sum();
            let got = num_bigint::BigInt::from(oracles::delannoy_hstep_count(n));
            expect(n, "axis H steps vs sum D_i D_(n-1-i)", got == conv, || (got.to_string(), conv.to_string()))
        }));
    }
    out
}
