//! Closed forms, recurrences and brute-force counts used as independent
//! checks on the series and enumeration code.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::paths::{enumerate_family, Family, Filter, Step};
use crate::ring::{binomial, binomial_q, vars, Polynomial, Rational, RingError, Var};
use crate::series::{gen_named, NamedSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown oracle or formula `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("`{name}` is not defined at n = {n}")]
    IndexOutOfRange { name: String, n: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub const ORACLE_NAMES: [&str; 9] = [
    "catalan",
    "fibonacci",
    "motzkin_ab",
    "schroder_large",
    "schroder_small",
    "narayana",
    "chebyshev_u",
    "delannoy",
    "fuss",
];

pub const FORMULA_NAMES: [&str; 18] = [
    "ex21_geom3",
    "ex21_fib",
    "ex31",
    "ex33",
    "ex35",
    "ex37",
    "ex39",
    "eq31_closed",
    "case1",
    "case2",
    "case3",
    "cheb2",
    "table31",
    "ex314_first",
    "ex314_second",
    "ex314_collapse",
    "rem315",
    "rem315_collapse",
];

/// Named parameter values. Ring variables that are not bound stay symbolic;
/// integer parameters (`r`, `m`) must be bound to integer constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, Polynomial>);

impl Params {
    pub fn new() -> Params {
        Params::default()
    }

    pub fn with(mut self, name: &str, value: Polynomial) -> Params {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn with_int(self, name: &str, value: i64) -> Params {
        self.with(name, Polynomial::int(value))
    }

    pub fn insert(&mut self, name: &str, value: Polynomial) {
        self.0.insert(name.to_string(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Polynomial)> {
        self.0.iter()
    }

    /// The bound value of `name`, or the variable of that name.
    pub fn poly(&self, name: &str) -> Result<Polynomial, OracleError> {
        match self.0.get(name) {
            Some(p) => Ok(p.clone()),
            None => Ok(Polynomial::var(Var::parse(name)?)),
        }
    }

    pub fn integer(&self, name: &str) -> Result<i64, OracleError> {
        let p = self
            .0
            .get(name)
            .ok_or_else(|| OracleError::BadParams(format!("missing integer parameter `{name}`")))?;
        p.as_integer()
            .and_then(|v| v.to_i64())
            .ok_or_else(|| OracleError::BadParams(format!("`{name}` must be an integer, got `{p}`")))
    }

    /// Substitutes every bound ring variable into `p`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, OracleError> {
        let mut bindings = BTreeMap::new();
        for (name, value) in &self.0 {
            if let Ok(v) = Var::parse(name) {
                bindings.insert(v, value.clone());
            }
        }
        Ok(p.eval(&bindings)?)
    }

    fn check_known(&self, allowed: &[&str]) -> Result<(), OracleError> {
        for name in self.0.keys() {
            if !allowed.contains(&name.as_str()) {
                return Err(OracleError::BadParams(format!("unexpected parameter `{name}`")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub name: String,
    pub n: usize,
    pub params: BTreeMap<String, String>,
    pub value: Polynomial,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn int(n: BigInt) -> Polynomial {
    Polynomial::from_bigint(n)
}

pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// Fibonacci numbers with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(k: u64) -> BigInt {
    let (mut x, mut y) = (BigInt::zero(), BigInt::one());
    for _ in 0..k {
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
    }
    x
}

/// `M_n = sum_k C(n, 2k) C_k a^(n-2k) b^k`.
pub fn motzkin_ab(n: usize) -> Polynomial {
    (0..=n / 2)
        .map(|k| {
            let c = binomial(n as i64, 2 * k as i64) * catalan(k as u64);
            int(c) * vars::a().pow((n - 2 * k) as u32) * vars::b().pow(k as u32)
        })
        .sum()
}

/// `R_n(q) = sum_k C(2n-k, k) C_(n-k) q^k`.
pub fn schroder_large(n: usize) -> Polynomial {
    (0..=n)
        .map(|k| {
            let c = binomial((2 * n - k) as i64, k as i64) * catalan((n - k) as u64);
            int(c) * vars::q().pow(k as u32)
        })
        .sum()
}

/// Small Schröder polynomials, read off the fixed point of their functional
/// equation.
pub fn schroder_small(n: usize) -> Result<Polynomial, OracleError> {
    Ok(gen_named(NamedSeries::SchroderSmall, n)?.coeff(n).clone())
}

/// `N_n(t) = sum_i (1/n) C(n,i) C(n,i-1) t^i`, `N_0 = 1`.
pub fn narayana(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let ni = n as i64;
    (1..=ni)
        .map(|i| {
            let c = binomial(ni, i) * binomial(ni, i - 1) / BigInt::from(ni);
            int(c) * vars::t().pow(i as u32)
        })
        .sum()
}

/// Chebyshev polynomials of the second kind by the three-term recurrence.
pub fn chebyshev_u(n: usize) -> Polynomial {
    let two_t = Polynomial::int(2) * vars::t();
    let (mut prev, mut cur) = (Polynomial::zero(), Polynomial::one());
    for _ in 0..n {
        let next = &(&two_t * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Both binomial forms of the central Delannoy number.
pub fn delannoy_forms(n: u64) -> (BigInt, BigInt) {
    let n = n as i64;
    let first = (0..=n).map(|i| binomial(n, i) * binomial(n + i, i)).sum();
    let second = (0..=n)
        .map(|i| {
            let c = binomial(n, i);
            &c * &c * (BigInt::one() << i as usize)
        })
        .sum();
    (first, second)
}

pub fn delannoy(n: u64) -> BigInt {
    let (first, second) = delannoy_forms(n);
    assert_eq!(first, second, "Delannoy binomial forms disagree at n = {n}");
    first
}

/// `T_n = C(n(r+1), n) / (nr + 1)`.
pub fn fuss(n: u64, r: u64) -> BigInt {
    binomial((n * (r + 1)) as i64, n as i64) / BigInt::from(n * r + 1)
}

/// `sum_{i=0}^{m} D_i D_{m-i}`.
pub fn delannoy_convolution(m: usize) -> BigInt {
    let d: Vec<BigInt> = (0..=m as u64).map(delannoy).collect();
    (0..=m).map(|i| &d[i] * &d[m - i]).sum()
}

/// Number of `H` steps lying on the axis, over all Delannoy paths of
/// semilength `n`, by enumeration.
pub fn delannoy_hstep_count(n: usize) -> u64 {
    enumerate_family(Family::Delannoy, n, Filter::None)
        .iter()
        .map(|p| {
            let mut level = 0i64;
            let mut on_axis = 0u64;
            for &s in p.steps() {
                if s == Step::H && level == 0 {
                    on_axis += 1;
                }
                level += s.rise();
            }
            on_axis
        })
        .sum()
}

/// Value of a named sequence at `n`, with any bound parameters substituted.
pub fn oracle(name: &str, n: usize, params: &Params) -> Result<Polynomial, OracleError> {
    let symbolic = match name {
        "catalan" => {
            params.check_known(&[])?;
            int(catalan(n as u64))
        }
        "fibonacci" => {
            params.check_known(&[])?;
            int(fibonacci(n as u64))
        }
        "motzkin_ab" => {
            params.check_known(&["a", "b"])?;
            motzkin_ab(n)
        }
        "schroder_large" => {
            params.check_known(&["q"])?;
            schroder_large(n)
        }
        "schroder_small" => {
            params.check_known(&["q"])?;
            schroder_small(n)?
        }
        "narayana" => {
            params.check_known(&["t"])?;
            narayana(n)
        }
        "chebyshev_u" => {
            params.check_known(&["t"])?;
            chebyshev_u(n)
        }
        "delannoy" => {
            params.check_known(&[])?;
            int(delannoy(n as u64))
        }
        "fuss" => {
            params.check_known(&["r"])?;
            let r = params.integer("r")?;
            if r < 1 {
                return Err(OracleError::BadParams("fuss needs r >= 1".into()));
            }
            int(fuss(n as u64, r as u64))
        }
        _ => return Err(OracleError::UnknownName(name.to_string())),
    };
    params.apply(&symbolic)
}

fn shifted(f: impl Fn(usize) -> Polynomial, n: usize) -> Polynomial {
    if n == 0 {
        Polynomial::zero()
    } else {
        f(n - 1)
    }
}

/// Evaluates one of the displayed closed formulas for `V_n`.
///
/// Boundary values `V_0 = 1` (and `V_1 = 0` where the formula starts at
/// `n = 2`) are returned directly.
pub fn formula_vn(name: &str, n: usize, params: &Params) -> Result<Polynomial, OracleError> {
    let one = Polynomial::one();
    let value = match name {
        "ex21_geom3" => {
            params.check_known(&[])?;
            if n == 0 {
                one
            } else {
                let p = BigInt::from(3).pow(n as u32 - 1);
                int((p - 1) / 2)
            }
        }
        "ex21_fib" => {
            params.check_known(&[])?;
            if n == 0 {
                one
            } else {
                int(fibonacci(2 * (n as u64 - 1)))
            }
        }
        "ex31" => {
            params.check_known(&["a", "b"])?;
            let v = &motzkin_ab(n) - &(&vars::a() * &shifted(motzkin_ab, n));
            params.apply(&v)?
        }
        "ex33" => {
            params.check_known(&["q"])?;
            let q1 = &vars::q() + &one;
            let v = &schroder_large(n) - &(&q1 * &shifted(schroder_large, n));
            params.apply(&v)?
        }
        "ex35" => {
            params.check_known(&["q"])?;
            let s = gen_named(NamedSeries::SchroderSmall, n)?;
            let prev = if n == 0 { Polynomial::zero() } else { s.coeff(n - 1).clone() };
            params.apply(&(s.coeff(n) - &prev))?
        }
        "ex37" => {
            params.check_known(&["t"])?;
            let v = &narayana(n) - &(&vars::t() * &shifted(narayana, n));
            params.apply(&v)?
        }
        "ex39" => {
            params.check_known(&["t"])?;
            if n == 0 {
                one
            } else {
                let t1 = &vars::t() + &one;
                let num = &narayana(n + 1) - &(&t1 * &narayana(n));
                params.apply(&num.exact_div(&vars::t())?)?
            }
        }
        "eq31_closed" => {
            params.check_known(&["a", "b", "c", "d"])?;
            let (a, b, c, d) = (params.poly("a")?, params.poly("b")?, params.poly("c")?, params.poly("d")?);
            match n {
                0 => one,
                1 => Polynomial::zero(),
                _ => {
                    // Coefficients of 1 / (1 - (a+d)x + (ad - (a-b)c)x^2).
                    let lin = &a + &d;
                    let ac = &(&a - &b) * &c;
                    let quad = &(&a * &d) - &ac;
                    let (mut g0, mut g1) = (one.clone(), lin.clone());
                    for _ in 0..(n - 2) {
                        let next = &(&lin * &g1) - &(&quad * &g0);
                        g0 = std::mem::replace(&mut g1, next);
                    }
                    &ac * &g0
                }
            }
        }
        "case1" => {
            params.check_known(&["a", "b", "c", "d"])?;
            let (a, d) = (params.poly("a")?, params.poly("d")?);
            match n {
                0 => one,
                1 => Polynomial::zero(),
                _ => &(&a * &d) * &(&a + &d).pow(n as u32 - 2),
            }
        }
        "case2" => {
            params.check_known(&["a", "b", "c", "d"])?;
            let (a, d) = (params.poly("a")?, params.poly("d")?);
            match n {
                0 => one,
                1 => Polynomial::zero(),
                _ => {
                    let half = (&a + &d).scale(&Rational::new(1.into(), 2.into()));
                    let u = chebyshev_u(n - 2).eval(&[(Var::T, half)].into())?;
                    &(&(&a * &d) - &one) * &u
                }
            }
        }
        "case3" => {
            params.check_known(&["a", "b", "c", "d"])?;
            let (a, d) = (params.poly("a")?, params.poly("d")?);
            if n == 0 {
                one
            } else {
                &(&(&a * &d) - &one) * &int(fibonacci(2 * n as u64 - 2))
            }
        }
        "cheb2" => {
            params.check_known(&["a", "b", "c"])?;
            let (a, b, c) = (params.poly("a")?, params.poly("b")?, params.poly("c")?);
            match n {
                0 => one,
                1 => Polynomial::zero(),
                _ => {
                    let u = chebyshev_u(n - 2).eval(&[(Var::T, &b + &c)].into())?;
                    &(&Polynomial::int(2) * &(&a * &b)) * &u
                }
            }
        }
        "table31" => {
            params.check_known(&["m"])?;
            let m = params.0.get("m").cloned().ok_or_else(|| {
                OracleError::BadParams("table31 needs the multiplier `m`".into())
            })?;
            match n {
                0 => one,
                1 => Polynomial::zero(),
                _ => &m * &int(delannoy_convolution(n - 2)),
            }
        }
        "ex314_first" | "ex314_second" | "ex314_collapse" | "rem315" | "rem315_collapse" => {
            fuss_formula(name, n, params)?
        }
        _ => return Err(OracleError::UnknownName(name.to_string())),
    };
    Ok(value)
}

fn fuss_formula(name: &str, n: usize, params: &Params) -> Result<Polynomial, OracleError> {
    let collapse = name.ends_with("_collapse");
    if collapse {
        params.check_known(&["r"])?;
    } else {
        params.check_known(&["m", "r"])?;
    }
    let r = params.integer("r")?;
    if r < 1 {
        return Err(OracleError::BadParams("r must be at least 1".into()));
    }
    let m = if collapse { r + 1 } else { params.integer("m")? };
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let ni = n as i64;
    let top = ni * (r + 1);
    let e = m - r - 1;
    let mut acc = Rational::zero();
    match name {
        "ex314_first" => {
            if n == 1 {
                return Ok(Polynomial::zero());
            }
            for k in 1..ni {
                let big = top + e * (k + 1);
                if big == 0 {
                    return Err(OracleError::BadParams(format!("zero denominator at k = {k}")));
                }
                let f = Rational::from_integer(fibonacci(k as u64));
                acc += q(m * (k + 1)) * f / q(big) * binomial_q(big, ni - k - 1);
            }
        }
        "ex314_second" => {
            for k in 0..=ni / 2 {
                for j in 0..=(ni - 2 * k) {
                    acc += binomial_q(k * e, j) * q(2 * k + j) / q(ni) * binomial_q(top, ni - 2 * k - j);
                }
            }
        }
        "ex314_collapse" => {
            for k in 0..=ni / 2 {
                acc += q(2 * k) / q(ni) * binomial_q(top, ni - 2 * k);
            }
        }
        "rem315" => {
            for k in 0..=ni / 3 {
                for j in 0..=(ni - 3 * k) {
                    acc += binomial_q(k * e + 1, j) * q(3 * k + j) / q(ni) * binomial_q(top, ni - 3 * k - j);
                }
            }
        }
        "rem315_collapse" => {
            for k in 0..=ni / 3 {
                acc += q(3 * k * r + 3 * k + 1) / q(ni * r + 3 * k + 1) * binomial_q(top, ni - 3 * k);
            }
        }
        _ => unreachable!("dispatched by formula_vn"),
    }
    Ok(Polynomial::constant(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(catalan(3), 5.into());
        assert_eq!(fibonacci(0), 0.into());
        assert_eq!(fibonacci(10), 55.into());
        assert_eq!(delannoy(2), 13.into());
        assert_eq!(narayana(2), p("t^2 + t"));
        assert_eq!(narayana(3), p("t^3 + 3*t^2 + t"));
        assert_eq!(fuss(2, 2), 3.into());
        assert_eq!(motzkin_ab(3), p("a^3 + 3*a*b"));
        assert_eq!(schroder_large(2), p("q^2 + 3*q + 2"));
        assert_eq!(schroder_small(2).unwrap(), p("q + 2"));
        assert_eq!(chebyshev_u(2), p("4*t^2 - 1"));
    }

    #[test]
    fn delannoy_forms_agree() {
        for n in 0..=20 {
            let (x, y) = delannoy_forms(n);
            assert_eq!(x, y);
        }
        let d: Vec<BigInt> = (0..5).map(delannoy).collect();
        assert_eq!(d, [1, 3, 13, 63, 321].map(BigInt::from).to_vec());
    }

    #[test]
    fn hstep_counts() {
        assert_eq!(delannoy_hstep_count(1), 1);
        assert_eq!(delannoy_hstep_count(2), 6);
        assert_eq!(delannoy_hstep_count(3), 35);
    }

    #[test]
    fn oracle_with_params() {
        let one = Params::new().with("t", Polynomial::one());
        assert_eq!(oracle("narayana", 4, &one).unwrap(), Polynomial::int(14));
        let shift = Params::new().with("t", p("q + 1"));
        assert_eq!(oracle("narayana", 2, &shift).unwrap(), p("q^2 + 3*q + 2"));
        let r2 = Params::new().with_int("r", 2);
        assert_eq!(oracle("fuss", 2, &r2).unwrap(), Polynomial::int(3));
        assert!(matches!(oracle("fuss", 2, &Params::new()), Err(OracleError::BadParams(_))));
        assert!(matches!(oracle("nope", 2, &Params::new()), Err(OracleError::UnknownName(_))));
        assert!(matches!(oracle("catalan", 2, &one), Err(OracleError::BadParams(_))));
    }

    #[test]
    fn formula_examples() {
        let none = Params::new();
        assert_eq!(formula_vn("ex21_geom3", 3, &none).unwrap(), Polynomial::int(4));
        let pair1 = Params::new().with_int("m", 7);
        assert_eq!(formula_vn("table31", 4, &pair1).unwrap(), Polynomial::int(245));
        let r1 = Params::new().with_int("r", 1);
        assert_eq!(formula_vn("ex314_collapse", 2, &r1).unwrap(), Polynomial::one());
        assert_eq!(formula_vn("ex31", 2, &none).unwrap(), p("b"));
        assert_eq!(formula_vn("ex33", 2, &none).unwrap(), p("q + 1"));
        assert_eq!(formula_vn("ex39", 0, &none).unwrap(), Polynomial::one());
        assert_eq!(formula_vn("ex39", 1, &none).unwrap(), Polynomial::zero());
    }

    #[test]
    fn case_formulas_match_closed_eq31_on_instances() {
        // (2,1,2,1) satisfies ad = (a-b)c; (2,1,3,2) satisfies ad = (a-b)c + 1.
        let c1 = Params::new().with_int("a", 2).with_int("b", 1).with_int("c", 2).with_int("d", 1);
        let c2 = Params::new().with_int("a", 2).with_int("b", 1).with_int("c", 3).with_int("d", 2);
        let c3 = Params::new().with_int("a", 2).with_int("b", 1).with_int("c", 1).with_int("d", 1);
        for n in 0..=10 {
            let closed = formula_vn("eq31_closed", n, &c1).unwrap();
            assert_eq!(formula_vn("case1", n, &c1).unwrap(), closed);
            let closed = formula_vn("eq31_closed", n, &c2).unwrap();
            assert_eq!(formula_vn("case2", n, &c2).unwrap(), closed);
            let closed = formula_vn("eq31_closed", n, &c3).unwrap();
            assert_eq!(formula_vn("case3", n, &c3).unwrap(), closed);
        }
    }
}
