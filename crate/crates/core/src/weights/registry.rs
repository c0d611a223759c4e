//! Named weight specializations, built as series and read off coefficientwise.

use crate::oracles::Params;
use crate::ring::{vars, Polynomial};
use crate::series::{gen_named, NamedSeries, TruncatedSeries};

use super::{WeightError, WeightSpec};

pub const REGISTRY_NAMES: [&str; 14] = [
    "generic",
    "geom_3x",
    "geom_fib",
    "motzkin_ab",
    "schroder_large_q",
    "schroder_small_q",
    "narayana_t",
    "narayana_shift_t",
    "chebyshev_abcd",
    "chebyshev_second",
    "delannoy_tuple",
    "fuss_sym",
    "fuss_asym",
    "remark315",
];

/// The three weight series of a registry entry. `product_form` records
/// whether the entry is defined with `gamma = alpha * beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecSeries {
    pub alpha: TruncatedSeries,
    pub beta: TruncatedSeries,
    pub gamma: TruncatedSeries,
    pub product_form: bool,
}

/// `sum_{k>=1} c^(k-1) x^k = x / (1 - c x)`.
fn geometric(c: &Polynomial, n: usize) -> TruncatedSeries {
    let mut coeffs = vec![Polynomial::zero()];
    let mut pw = Polynomial::one();
    for _ in 1..=n {
        coeffs.push(pw.clone());
        pw = &pw * c;
    }
    TruncatedSeries::from_coeffs(coeffs, n)
}

fn linear(c: Polynomial, n: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(c, 1, n)
}

fn with_product(alpha: TruncatedSeries, beta: TruncatedSeries) -> Result<SpecSeries, WeightError> {
    let gamma = alpha.mul(&beta)?;
    Ok(SpecSeries { alpha, beta, gamma, product_form: true })
}

fn nonneg_int(params: &Params, name: &str) -> Result<u32, WeightError> {
    let v = params.integer(name)?;
    u32::try_from(v).map_err(|_| WeightError::BadParams(format!("`{name}` must be nonnegative")))
}

fn require_bound(params: &Params, names: &[&str]) -> Result<(), WeightError> {
    for name in names {
        let v = params.poly(name)?;
        if v.as_constant().is_none() {
            return Err(WeightError::BadParams(format!("`{name}` must be bound to a number")));
        }
    }
    Ok(())
}

/// Series of a registry entry at order `n`, with bound parameters applied.
pub fn registry_series(name: &str, params: &Params, n: usize) -> Result<SpecSeries, WeightError> {
    let one = Polynomial::one();
    let x = TruncatedSeries::x(n);
    let raw = match name {
        "generic" => {
            let [alpha, beta, gamma] = WeightSpec::generic(n).to_series();
            SpecSeries { alpha, beta, gamma, product_form: false }
        }
        "geom_3x" => with_product(geometric(&one, n), geometric(&Polynomial::int(2), n))?,
        "geom_fib" => with_product(geometric(&one, n), geometric(&one, n))?,
        "motzkin_ab" => {
            let m = gen_named(NamedSeries::MotzkinAb, n)?;
            let alpha = linear(vars::a(), n);
            let beta = m.mul_x(1).scale(&(&vars::b() * &vars::a_inv()));
            let gamma = m.mul_x(2).scale(&vars::b());
            SpecSeries { alpha, beta, gamma, product_form: true }
        }
        "schroder_large_q" => {
            let r = gen_named(NamedSeries::SchroderLarge, n)?;
            let q1 = &vars::q() + &one;
            let r1 = r.sub(&TruncatedSeries::one(n))?;
            let alpha = linear(q1.clone(), n);
            let beta = r1.div_scalar_poly(&q1)?;
            let gamma = r1.mul_x(1);
            SpecSeries { alpha, beta, gamma, product_form: true }
        }
        "schroder_small_q" => {
            let s = gen_named(NamedSeries::SchroderSmall, n)?;
            let q1 = &vars::q() + &one;
            let s1 = s.sub(&TruncatedSeries::one(n))?.scale(&q1);
            SpecSeries { alpha: x.clone(), gamma: s1.mul_x(1), beta: s1, product_form: true }
        }
        "narayana_t" => {
            let nt = gen_named(NamedSeries::Narayana, n)?;
            let n1 = nt.sub(&TruncatedSeries::one(n))?;
            let alpha = linear(vars::t(), n);
            let beta = n1.div_scalar_poly(&vars::t())?;
            let gamma = n1.mul_x(1);
            SpecSeries { alpha, beta, gamma, product_form: true }
        }
        "narayana_shift_t" => {
            let f = gen_named(NamedSeries::FSeries, n)?;
            let alpha = linear(&vars::t() + &one, n);
            let beta = f.mul_x(1).scale(&(&vars::t() * &vars::tp1_inv()));
            let gamma = f.mul_x(2).scale(&vars::t());
            SpecSeries { alpha, beta, gamma, product_form: true }
        }
        "chebyshev_abcd" | "delannoy_tuple" => {
            if name == "delannoy_tuple" {
                require_bound(params, &["a", "b", "c", "d"])?;
            }
            let (a, b, c, d) = (params.poly("a")?, params.poly("b")?, params.poly("c")?, params.poly("d")?);
            let alpha = geometric(&b, n).scale(&(&a - &b));
            let beta = geometric(&d, n).scale(&c);
            with_product(alpha, beta)?
        }
        "chebyshev_second" => {
            let (a, b, c) = (params.poly("a")?, params.poly("b")?, params.poly("c")?);
            let denom = TruncatedSeries::from_coeffs(
                vec![one.clone(), &Polynomial::int(-2) * &c, one.clone()],
                n,
            );
            let u = denom.inverse()?;
            let one_minus_ax = TruncatedSeries::from_coeffs(vec![one.clone(), -&a], n);
            let two_b = &Polynomial::int(2) * &b;
            let alpha = u.mul(&one_minus_ax)?.mul_x(1).scale(&two_b);
            let beta = geometric(&a, n).scale(&a);
            let gamma = u.mul_x(2).scale(&(&two_b * &a));
            SpecSeries { alpha, beta, gamma, product_form: true }
        }
        "fuss_sym" | "fuss_asym" | "remark315" => {
            let r = nonneg_int(params, "r")?;
            let m = nonneg_int(params, "m")?;
            if r < 1 {
                return Err(WeightError::BadParams("r must be at least 1".into()));
            }
            let t = gen_named(NamedSeries::Fuss(r), n)?;
            let xtm = t.pow(m).mul_x(1);
            let xtr = t.pow(r).mul_x(1);
            match name {
                "fuss_sym" => with_product(xtm.clone(), xtm)?,
                "fuss_asym" => with_product(xtr, xtm)?,
                _ => SpecSeries { alpha: xtr.clone(), beta: xtm, gamma: xtr, product_form: false },
            }
        }
        _ => return Err(WeightError::UnknownSpec(name.to_string())),
    };
    let apply = |s: &TruncatedSeries| -> Result<TruncatedSeries, WeightError> {
        let coeffs = s.coeffs().iter().map(|c| params.apply(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::from_coeffs(coeffs, n))
    };
    Ok(SpecSeries {
        alpha: apply(&raw.alpha)?,
        beta: apply(&raw.beta)?,
        gamma: apply(&raw.gamma)?,
        product_form: raw.product_form,
    })
}

pub fn registry_get(name: &str, params: &Params, n: usize) -> Result<WeightSpec, WeightError> {
    let s = registry_series(name, params, n)?;
    WeightSpec::from_series(&s.alpha, &s.beta, &s.gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Polynomial> {
        v.iter().map(|&k| Polynomial::int(k)).collect()
    }

    #[test]
    fn motzkin_entry() {
        let spec = registry_get("motzkin_ab", &Params::new(), 4).unwrap();
        assert_eq!(spec.alpha, vec![vars::a(), Polynomial::zero(), Polynomial::zero(), Polynomial::zero()]);
        let ba = &vars::b() * &vars::a_inv();
        assert_eq!(spec.beta[0], ba);
        assert_eq!(spec.beta[2], &ba * &p("a^2 + b"));
        assert_eq!(spec.gamma, vec![Polynomial::zero(), p("b"), p("a*b"), p("a^2*b + b^2")]);
    }

    #[test]
    fn delannoy_entry() {
        let params = Params::new().with_int("a", 4).with_int("b", 3).with_int("c", 7).with_int("d", 2);
        let spec = registry_get("delannoy_tuple", &params, 3).unwrap();
        assert_eq!(spec.alpha, ints(&[1, 3, 9]));
        assert_eq!(spec.beta, ints(&[7, 14, 28]));
        assert_eq!(spec.gamma, ints(&[0, 7, 35]));
        assert!(matches!(
            registry_get("delannoy_tuple", &Params::new(), 3),
            Err(WeightError::BadParams(_))
        ));
    }

    #[test]
    fn generic_and_unknown() {
        assert_eq!(registry_get("generic", &Params::new(), 2).unwrap(), WeightSpec::generic(2));
        assert!(matches!(registry_get("bogus", &Params::new(), 2), Err(WeightError::UnknownSpec(_))));
    }

    #[test]
    fn exact_quotients_are_polynomials() {
        let spec = registry_get("schroder_large_q", &Params::new(), 3).unwrap();
        assert_eq!(spec.beta, vec![Polynomial::one(), p("q + 2"), p("q^2 + 5*q + 5")]);
        let spec = registry_get("narayana_t", &Params::new(), 3).unwrap();
        assert_eq!(spec.beta, vec![Polynomial::one(), p("t + 1"), p("t^2 + 3*t + 1")]);
    }
}
