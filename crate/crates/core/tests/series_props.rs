use proptest::prelude::*;
use valley_paths::ring::{vars, Polynomial};
use valley_paths::series::{gen_named, solve_fe, v_series, v_series_ab, NamedSeries, TruncatedSeries};
use valley_paths::weights::{weight_sum_v, WeightSpec};

const ORDER: usize = 7;

fn int_series(constant: bool) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-4i64..=4, ORDER + 1).prop_map(move |mut v| {
        if constant {
            if v[0] == 0 {
                v[0] = 1;
            }
        } else {
            v[0] = 0;
        }
        TruncatedSeries::from_coeffs(v.into_iter().map(Polynomial::int).collect(), ORDER)
    })
}

/// A weight series whose coefficients are small polynomials in `a` and `q`.
fn sym_weight() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-2i64..=2, -2i64..=2), ORDER).prop_map(|v| {
        let mut coeffs = vec![Polynomial::zero()];
        coeffs.extend(v.into_iter().map(|(x, y)| &Polynomial::int(x) * &vars::a() + Polynomial::int(y) * vars::q()));
        TruncatedSeries::from_coeffs(coeffs, ORDER)
    })
}

proptest! {
    #[test]
    fn inverse_is_two_sided(s in int_series(true)) {
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv).unwrap(), TruncatedSeries::one(ORDER));
        prop_assert_eq!(inv.inverse().unwrap(), s);
    }

    #[test]
    fn product_form_matches_master_series(alpha in sym_weight(), beta in sym_weight()) {
        let gamma = alpha.mul(&beta).unwrap();
        prop_assert_eq!(v_series(&alpha, &beta, &gamma).unwrap(), v_series_ab(&alpha, &beta).unwrap());
    }

    #[test]
    fn brute_force_sum_matches_series(alpha in int_series(false), beta in int_series(false), gamma in int_series(false)) {
        let spec = WeightSpec::from_series(&alpha, &beta, &gamma).unwrap();
        let v = v_series(&alpha, &beta, &gamma).unwrap();
        for n in 0..=6 {
            prop_assert_eq!(&weight_sum_v(n, &spec).unwrap(), v.coeff(n));
        }
    }
}

#[test]
fn catalan_fixed_point() {
    let c = solve_fe(|f| f.mul(f).map(|g| g.mul_x(1).add(&TruncatedSeries::one(f.order())).unwrap()), 10).unwrap();
    assert_eq!(c, gen_named(NamedSeries::Catalan, 10).unwrap());
    let want = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    assert_eq!(c.coeffs().to_vec(), want.iter().map(|&k| Polynomial::int(k)).collect::<Vec<_>>());
}
