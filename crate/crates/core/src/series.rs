//! Truncated formal power series in `x` with polynomial coefficients, the
//! functional-equation solver, the named generating functions and the
//! valley-path generating function.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracles;
use crate::ring::{vars, Polynomial, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("constant term is not a nonzero rational, series is not invertible")]
    NotAUnit,
    #[error("coefficient of x^{0} is nonzero, cannot divide by x")]
    NotDivisibleByX(usize),
    #[error("coefficient of x^{0} is not exactly divisible")]
    NotDivisible(usize),
    #[error("map is not an x-adic contraction")]
    NotAContraction,
    #[error("weight series must have zero constant term")]
    NonzeroConstantTerm,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Coefficients `c_0..c_N` of a power series, `N` being the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct TruncatedSeries {
    coeffs: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<Polynomial>,
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = String;
    fn try_from(j: SeriesJson) -> Result<Self, String> {
        if j.coeffs.len() != j.order + 1 {
            return Err(format!(
                "series of order {} needs {} coefficients, got {}",
                j.order,
                j.order + 1,
                j.coeffs.len()
            ));
        }
        Ok(TruncatedSeries { coeffs: j.coeffs })
    }
}

impl From<TruncatedSeries> for SeriesJson {
    fn from(s: TruncatedSeries) -> Self {
        SeriesJson { order: s.order(), coeffs: s.coeffs }
    }
}

impl TruncatedSeries {
    /// Builds a series from coefficients, padding with zeros or truncating
    /// to exactly `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<Polynomial>, order: usize) -> Self {
        coeffs.resize(order + 1, Polynomial::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Polynomial::one(), order)
    }

    pub fn constant(c: Polynomial, order: usize) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    /// `c * x^k`.
    pub fn monomial(c: Polynomial, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(Polynomial::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Polynomial {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Polynomial) {
        self.coeffs[n] = c;
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![Polynomial::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, p: &Polynomial) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    /// Reciprocal of a series whose constant term is a nonzero rational.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeffs[0].as_constant().ok_or(SeriesError::NotAUnit)?;
        if num_traits::Zero::is_zero(&c0) {
            return Err(SeriesError::NotAUnit);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Polynomial> = Vec::with_capacity(n + 1);
        out.push(Polynomial::constant(inv0.clone()));
        let neg_inv0 = -inv0;
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out[k - i].is_zero() {
                    acc += &(&self.coeffs[i] * &out[k - i]);
                }
            }
            out.push(acc.scale(&neg_inv0));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        self.mul(&other.inverse()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.order());
        for _ in 0..k {
            result = result.mul(self).expect("same order");
        }
        result
    }

    /// `self / x^k`; the order drops to `N - k`.
    pub fn shift_div_x(&self, k: usize) -> Result<Self, SeriesError> {
        if let Some(i) = (0..k.min(self.coeffs.len())).find(|&i| !self.coeffs[i].is_zero()) {
            return Err(SeriesError::NotDivisibleByX(i));
        }
        if k > self.order() {
            return Err(SeriesError::NotDivisibleByX(self.order()));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// `x^k * self`, keeping the order.
    pub fn mul_x(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Polynomial::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        TruncatedSeries { coeffs }
    }

    /// Divides every coefficient exactly by `p`.
    pub fn div_scalar_poly(&self, p: &Polynomial) -> Result<Self, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.exact_div(p).map_err(|_| SeriesError::NotDivisible(i)))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    /// Same series at a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }
}

impl fmt::Display for TruncatedSeries {
    /// One coefficient per line, `n: <polynomial>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}: {c}")?;
        }
        Ok(())
    }
}

/// Computes the fixed point of `phi` to order `n`.
///
/// `phi` must raise x-adic agreement by one: if `F` and `G` agree below
/// `x^v` then `phi(F)` and `phi(G)` agree below `x^(v+1)`. The result is
/// re-substituted and probed at the top coefficient before it is returned.
pub fn solve_fe<F>(phi: F, n: usize) -> Result<TruncatedSeries, SeriesError>
where
    F: Fn(&TruncatedSeries) -> Result<TruncatedSeries, SeriesError>,
{
    let seed = phi(&TruncatedSeries::zero(n))?;
    let mut fixed = TruncatedSeries::constant(seed.coeff(0).clone(), n);
    for _ in 0..=n {
        fixed = phi(&fixed)?;
    }
    let image = phi(&fixed)?;
    if image != fixed {
        return Err(SeriesError::NotAContraction);
    }
    let mut probe = fixed.clone();
    probe.coeffs[n] = &probe.coeffs[n] + &Polynomial::one();
    if phi(&probe)? != image {
        return Err(SeriesError::NotAContraction);
    }
    Ok(fixed)
}

/// The named generating functions, with symbolic parameters
/// (`a`, `b` for Motzkin; `q` for Schröder; `t` for Narayana and Chebyshev).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSeries {
    Catalan,
    MotzkinAb,
    SchroderLarge,
    SchroderSmall,
    Narayana,
    /// `f(x,t) = (N(x,t) - 1) / (t x)`.
    FSeries,
    ChebyshevU,
    Fuss(u32),
    Delannoy,
}

impl NamedSeries {
    pub fn parse(name: &str, r: Option<u32>) -> Option<Self> {
        Some(match name {
            "catalan" => Self::Catalan,
            "motzkin_ab" => Self::MotzkinAb,
            "schroder_large" => Self::SchroderLarge,
            "schroder_small" => Self::SchroderSmall,
            "narayana" => Self::Narayana,
            "f_series" => Self::FSeries,
            "chebyshev_u" => Self::ChebyshevU,
            "fuss" => Self::Fuss(r.unwrap_or(1)),
            "delannoy" => Self::Delannoy,
            _ => return None,
        })
    }
}

/// Generating function of a named family, to order `n`.
pub fn gen_named(name: NamedSeries, n: usize) -> Result<TruncatedSeries, SeriesError> {
    let x = TruncatedSeries::x(n);
    let one = TruncatedSeries::one(n);
    match name {
        NamedSeries::Catalan => solve_fe(|f| one.add(&x.mul(&f.mul(f)?)?), n),
        NamedSeries::MotzkinAb => solve_fe(
            |f| {
                let lin = f.mul_x(1).scale(&vars::a());
                let quad = f.mul(f)?.mul_x(2).scale(&vars::b());
                one.add(&lin)?.add(&quad)
            },
            n,
        ),
        NamedSeries::SchroderLarge => solve_fe(
            |f| {
                let lin = f.mul_x(1).scale(&vars::q());
                one.add(&lin)?.add(&f.mul(f)?.mul_x(1))
            },
            n,
        ),
        NamedSeries::SchroderSmall => solve_fe(
            |f| {
                let lin = f.mul_x(1).scale(&vars::q());
                let quad = f.mul(f)?.mul_x(1).scale(&(Polynomial::one() + vars::q()));
                one.sub(&lin)?.add(&quad)
            },
            n,
        ),
        NamedSeries::Narayana => solve_fe(
            |f| {
                let lin = f.mul_x(1).scale(&(vars::t() - Polynomial::one()));
                one.add(&lin)?.add(&f.mul(f)?.mul_x(1))
            },
            n,
        ),
        NamedSeries::FSeries => solve_fe(
            |f| {
                let left = one.add(&f.mul_x(1))?;
                let right = one.add(&f.mul_x(1).scale(&vars::t()))?;
                left.mul(&right)
            },
            n,
        ),
        NamedSeries::ChebyshevU => {
            let denom = TruncatedSeries::from_coeffs(
                vec![Polynomial::one(), Polynomial::int(-2) * vars::t(), Polynomial::one()],
                n,
            );
            denom.inverse()
        }
        NamedSeries::Fuss(r) => solve_fe(|f| one.add(&f.pow(r + 1).mul_x(1)), n),
        NamedSeries::Delannoy => Ok(TruncatedSeries::from_coeffs(
            (0..=n as u64)
                .map(|k| Polynomial::from_bigint(oracles::delannoy(k)))
                .collect(),
            n,
        )),
    }
}

fn require_weight_series(s: &TruncatedSeries) -> Result<(), SeriesError> {
    if s.coeff(0).is_zero() {
        Ok(())
    } else {
        Err(SeriesError::NonzeroConstantTerm)
    }
}

/// `V(x) = 1 / (1 - gamma - alpha^2 beta / (1 - alpha))`.
pub fn v_series(
    alpha: &TruncatedSeries,
    beta: &TruncatedSeries,
    gamma: &TruncatedSeries,
) -> Result<TruncatedSeries, SeriesError> {
    for s in [alpha, beta, gamma] {
        require_weight_series(s)?;
    }
    alpha.check(beta)?;
    alpha.check(gamma)?;
    let n = alpha.order();
    let one = TruncatedSeries::one(n);
    let blocks = alpha.mul(alpha)?.mul(beta)?.div(&one.sub(alpha)?)?;
    one.sub(gamma)?.sub(&blocks)?.inverse()
}

/// The `gamma = alpha * beta` case: `(1 - alpha) / (1 - alpha - alpha beta)`.
pub fn v_series_ab(
    alpha: &TruncatedSeries,
    beta: &TruncatedSeries,
) -> Result<TruncatedSeries, SeriesError> {
    require_weight_series(alpha)?;
    require_weight_series(beta)?;
    alpha.check(beta)?;
    let one = TruncatedSeries::one(alpha.order());
    let num = one.sub(alpha)?;
    num.div(&num.sub(&alpha.mul(beta)?)?)
}
