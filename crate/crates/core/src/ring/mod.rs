//! Exact arithmetic: rationals, sparse multivariate polynomials and
//! generalized binomial coefficients.
//!
//! Polynomials live in the quotient ring
//! `Q[a, b, c, d, q, t, a_inv, tp1_inv, alpha_k, beta_k, gamma_k]`
//! modulo `a * a_inv = 1` and `(1 + t) * tp1_inv = 1`. The two relations have
//! coprime leading monomials under graded lex order, so reduction by them
//! yields a unique normal form and structural equality is ring equality.

mod json;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use json::PolynomialJson;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot invert `{0}` under the given bindings")]
    NotInvertible(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// An indeterminate of the fixed variable universe.
///
/// The derived order is the variable order used by the monomial ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
    C,
    D,
    Q,
    T,
    /// Formal inverse of `a`.
    InvA,
    /// Formal inverse of `1 + t`.
    InvTp1,
    Alpha(u16),
    Beta(u16),
    Gamma(u16),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::A => "a".into(),
            Var::B => "b".into(),
            Var::C => "c".into(),
            Var::D => "d".into(),
            Var::Q => "q".into(),
            Var::T => "t".into(),
            Var::InvA => "a_inv".into(),
            Var::InvTp1 => "tp1_inv".into(),
            Var::Alpha(k) => format!("alpha{k}"),
            Var::Beta(k) => format!("beta{k}"),
            Var::Gamma(k) => format!("gamma{k}"),
        }
    }

    pub fn parse(name: &str) -> Result<Var, RingError> {
        let indexed = |prefix: &str| -> Option<u16> {
            let rest = name.strip_prefix(prefix)?;
            let k: u16 = rest.parse().ok()?;
            (k >= 1).then_some(k)
        };
        Ok(match name {
            "a" => Var::A,
            "b" => Var::B,
            "c" => Var::C,
            "d" => Var::D,
            "q" => Var::Q,
            "t" => Var::T,
            "a_inv" => Var::InvA,
            "tp1_inv" => Var::InvTp1,
            _ => {
                if let Some(k) = indexed("alpha") {
                    Var::Alpha(k)
                } else if let Some(k) = indexed("beta") {
                    Var::Beta(k)
                } else if let Some(k) = indexed("gamma") {
                    Var::Gamma(k)
                } else {
                    return Err(RingError::UnknownVariable(name.to_string()));
                }
            }
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A power product of variables. Exponents are positive; entries are sorted
/// by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents<I: IntoIterator<Item = (Var, u32)>>(it: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    fn mul_raw(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    fn div_exact(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > e {
                return None;
            }
            if e > f {
                out.push((v, e - f));
            }
        }
        if other.0.iter().any(|&(v, _)| self.exponent(v) == 0) {
            return None;
        }
        Some(Monomial(out))
    }

    fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut map: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        if e == 0 {
            map.remove(&v);
        } else {
            map.insert(v, e);
        }
        Monomial(map.into_iter().collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.degree().cmp(&other.degree()) {
            Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Equal,
                (Some(_), None) => return Greater,
                (None, Some(_)) => return Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        match ea.cmp(&eb) {
                            Equal => {
                                i += 1;
                                j += 1;
                            }
                            o => return o,
                        }
                    } else if va < vb {
                        return Greater;
                    } else {
                        return Less;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients in canonical
/// form: no zero coefficients, every monomial reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn int(n: i64) -> Self {
        Polynomial::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Polynomial::constant(Rational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Polynomial::constant(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from arbitrary (possibly unreduced, repeated)
    /// terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Monomial::one())
                .cloned(),
            _ => None,
        }
    }

    /// Integer value of a constant integral polynomial.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_constant()
            .filter(|c| c.is_integer())
            .map(|c| c.to_integer())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match reduce_monomial(&m) {
            None => self.add_reduced(m, c),
            Some(expansion) => {
                for (m2, c2) in expansion {
                    self.add_term(m2, c2 * &c);
                }
            }
        }
    }

    fn add_reduced(&mut self, m: Monomial, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor` by multivariate long division.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, RingError> {
        let (lead_m, lead_c) = divisor.leading_term().ok_or(RingError::DivisionByZero)?;
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero();
        // Reduction by the inverse relations can in principle raise the
        // leading monomial, so the loop is bounded.
        let mut budget = 64 * (self.num_terms() + 8) * (divisor.num_terms() + 8);
        while let Some((m, c)) = rem.leading_term() {
            if budget == 0 {
                return Err(RingError::NotDivisible);
            }
            budget -= 1;
            let qm = m.div_exact(lead_m).ok_or(RingError::NotDivisible)?;
            let qc = c / lead_c;
            let t = Polynomial::term(qc, qm);
            rem -= &(&t * divisor);
            quotient += &t;
        }
        if &(&quotient * divisor) != self {
            return Err(RingError::NotDivisible);
        }
        Ok(quotient)
    }

    /// Substitutes polynomials for variables. Unbound variables stay
    /// symbolic. The inverse symbols are evaluated through their base: when
    /// `a` (resp. `t`) is bound, `a_inv` (resp. `tp1_inv`) becomes the
    /// reciprocal of `a` (resp. `1 + t`), which must then be a nonzero
    /// constant.
    pub fn eval(&self, bindings: &BTreeMap<Var, Polynomial>) -> Result<Polynomial, RingError> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut cache: BTreeMap<Var, Polynomial> = BTreeMap::new();
        let mut value_of = |v: Var| -> Result<Polynomial, RingError> {
            if let Some(p) = cache.get(&v) {
                return Ok(p.clone());
            }
            let p = if let Some(p) = bindings.get(&v) {
                p.clone()
            } else {
                match v {
                    Var::InvA if bindings.contains_key(&Var::A) => {
                        invert_constant(&bindings[&Var::A], "a")?
                    }
                    Var::InvTp1 if bindings.contains_key(&Var::T) => {
                        invert_constant(&(Polynomial::one() + &bindings[&Var::T]), "1+t")?
                    }
                    _ => Polynomial::var(v),
                }
            };
            cache.insert(v, p.clone());
            Ok(p)
        };
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                acc = &acc * &value_of(v)?.pow(e);
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Evaluates every variable at a rational and returns the constant.
    pub fn eval_rational(&self, bindings: &BTreeMap<Var, Rational>) -> Result<Rational, RingError> {
        let b: BTreeMap<Var, Polynomial> = bindings
            .iter()
            .map(|(v, r)| (*v, Polynomial::constant(r.clone())))
            .collect();
        let p = self.eval(&b)?;
        p.as_constant()
            .ok_or_else(|| RingError::NotInvertible(format!("unbound variables remain in {p}")))
    }
}

fn invert_constant(p: &Polynomial, what: &str) -> Result<Polynomial, RingError> {
    match p.as_constant() {
        Some(c) if !c.is_zero() => Ok(Polynomial::constant(c.recip())),
        _ => Err(RingError::NotInvertible(what.to_string())),
    }
}

/// One reduction step for a monomial that is not in normal form; `None` if
/// it already is.
fn reduce_monomial(m: &Monomial) -> Option<Vec<(Monomial, Rational)>> {
    let (ea, eia) = (m.exponent(Var::A), m.exponent(Var::InvA));
    if ea > 0 && eia > 0 {
        let k = ea.min(eia);
        let r = m.with_exponent(Var::A, ea - k).with_exponent(Var::InvA, eia - k);
        return Some(vec![(r, Rational::one())]);
    }
    let (et, ew) = (m.exponent(Var::T), m.exponent(Var::InvTp1));
    if et > 0 && ew > 0 {
        // (t * w)^k = (1 - w)^k since w * (1 + t) = 1.
        let k = et.min(ew);
        let base = m.with_exponent(Var::T, et - k).with_exponent(Var::InvTp1, ew - k);
        let mut out = Vec::with_capacity(k as usize + 1);
        for i in 0..=k {
            let c = binomial(i64::from(k), i64::from(i));
            let c = if i % 2 == 1 { -c } else { c };
            let mi = base.mul_raw(&Monomial::from_exponents([(Var::InvTp1, i)]));
            out.push((mi, Rational::from_integer(c)));
        }
        return Some(out);
    }
    None
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing graded lex order, e.g. `a^5 + 4*a^3*b + 3*a*b^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        text::parse(s)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::int(n)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_reduced(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_reduced(m.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul_raw(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc = Polynomial::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

/// Generalized binomial coefficient: `n (n-1) ... (n-k+1) / k!` for `k >= 0`
/// and `0` for `k < 0`. Defined for every integer `n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    // Use symmetry for nonnegative n to keep the product short.
    let k = if n >= 0 && k > n - k { n - k } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc
}

/// Binomial coefficient as a rational, for use in exact formulas.
pub fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Parses a decimal integer or fraction `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let s = s.trim();
    let parse_int = |x: &str| -> Result<BigInt, RingError> {
        x.trim()
            .parse::<BigInt>()
            .map_err(|_| RingError::Parse(format!("bad number `{s}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(RingError::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Shorthand constructors used throughout the crate.
pub mod vars {
    use super::{Polynomial, Var};

    pub fn a() -> Polynomial {
        Polynomial::var(Var::A)
    }
    pub fn b() -> Polynomial {
        Polynomial::var(Var::B)
    }
    pub fn c() -> Polynomial {
        Polynomial::var(Var::C)
    }
    pub fn d() -> Polynomial {
        Polynomial::var(Var::D)
    }
    pub fn q() -> Polynomial {
        Polynomial::var(Var::Q)
    }
    pub fn t() -> Polynomial {
        Polynomial::var(Var::T)
    }
    pub fn a_inv() -> Polynomial {
        Polynomial::var(Var::InvA)
    }
    pub fn tp1_inv() -> Polynomial {
        Polynomial::var(Var::InvTp1)
    }
}
