//! Weight systems on valley-uniform paths and brute-force weight sums.

mod registry;
mod target;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracles::OracleError;
use crate::paths::{analyze, enumerate_v_structures, Family, Part, Path, VStructure};
use crate::ring::{Polynomial, Var};
use crate::series::{SeriesError, TruncatedSeries};

pub use registry::{registry_get, registry_series, SpecSeries, REGISTRY_NAMES};
pub use target::{target_weight, weight_sum_target, TargetWeighting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weight index {index} exceeds the spec order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("path is not in V (valleys of a primitive factor on different levels, or not a Dyck path)")]
    NotInV,
    #[error("weight series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("unknown weight spec `{0}`")]
    UnknownSpec(String),
    #[error("bad spec parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Weight sequences `alpha_k`, `beta_k`, `gamma_k` for `k = 1..=order`,
/// stored at index `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub alpha: Vec<Polynomial>,
    pub beta: Vec<Polynomial>,
    pub gamma: Vec<Polynomial>,
}

impl WeightSpec {
    /// Independent symbols `alpha_k`, `beta_k`, `gamma_k`.
    pub fn generic(order: usize) -> WeightSpec {
        let sym = |f: fn(u16) -> Var| (1..=order).map(|k| Polynomial::var(f(k as u16))).collect();
        WeightSpec { alpha: sym(Var::Alpha), beta: sym(Var::Beta), gamma: sym(Var::Gamma) }
    }

    pub fn order(&self) -> usize {
        self.alpha.len().min(self.beta.len()).min(self.gamma.len())
    }

    fn get(seq: &[Polynomial], k: usize, order: usize) -> Result<&Polynomial, WeightError> {
        if k == 0 || k > order {
            return Err(WeightError::OrderExceeded { index: k, order });
        }
        Ok(&seq[k - 1])
    }

    pub fn alpha(&self, k: usize) -> Result<&Polynomial, WeightError> {
        Self::get(&self.alpha, k, self.order())
    }

    pub fn beta(&self, k: usize) -> Result<&Polynomial, WeightError> {
        Self::get(&self.beta, k, self.order())
    }

    pub fn gamma(&self, k: usize) -> Result<&Polynomial, WeightError> {
        Self::get(&self.gamma, k, self.order())
    }

    /// Reads coefficients `1..=N` of three weight series.
    pub fn from_series(
        alpha: &TruncatedSeries,
        beta: &TruncatedSeries,
        gamma: &TruncatedSeries,
    ) -> Result<WeightSpec, WeightError> {
        for s in [alpha, beta, gamma] {
            if !s.coeff(0).is_zero() {
                return Err(WeightError::NonzeroConstantTerm);
            }
        }
        let take = |s: &TruncatedSeries| s.coeffs()[1..].to_vec();
        Ok(WeightSpec { alpha: take(alpha), beta: take(beta), gamma: take(gamma) })
    }

    /// The three weight series, truncated at this spec's order.
    pub fn to_series(&self) -> [TruncatedSeries; 3] {
        let n = self.order();
        let series = |seq: &[Polynomial]| {
            let mut coeffs = vec![Polynomial::zero()];
            coeffs.extend(seq[..n].iter().cloned());
            TruncatedSeries::from_coeffs(coeffs, n)
        };
        [series(&self.alpha), series(&self.beta), series(&self.gamma)]
    }
}

pub fn weight_of_part(part: &Part, spec: &WeightSpec) -> Result<Polynomial, WeightError> {
    match part {
        Part::Pyr { h } => Ok(spec.gamma(*h)?.clone()),
        Part::Block { k, heights } => {
            let mut w = spec.beta(*k)?.clone();
            for &i in heights {
                w = &w * spec.alpha(i)?;
            }
            Ok(w)
        }
    }
}

/// Product of the part weights.
pub fn weight_of_structure(s: &VStructure, spec: &WeightSpec) -> Result<Polynomial, WeightError> {
    let mut w = Polynomial::one();
    for part in &s.parts {
        w = &w * &weight_of_part(part, spec)?;
    }
    Ok(w)
}

/// The weight read directly off a Dyck path: `gamma_h` for each maximal
/// pyramid on the axis, `alpha_h` for each one above it, and `beta_k` for
/// every primitive factor whose valleys sit at level `k`.
pub fn weight_of_path(path: &Path, spec: &WeightSpec) -> Result<Polynomial, WeightError> {
    if path.family() != Family::Dyck {
        return Err(WeightError::NotInV);
    }
    let mut w = Polynomial::one();
    for factor in path.primitive_factors() {
        let st = analyze(&factor);
        if let Some(first) = st.valleys.first() {
            if st.valleys.iter().any(|v| v.level != first.level) {
                return Err(WeightError::NotInV);
            }
            w = &w * spec.beta(first.level as usize)?;
        }
        for pyr in &st.pyramids {
            let f = if pyr.altitude == 0 { spec.gamma(pyr.height)? } else { spec.alpha(pyr.height)? };
            w = &w * f;
        }
    }
    Ok(w)
}

/// `w(V_n)`: sum of the weights of all valley-uniform paths of semilength `n`.
pub fn weight_sum_v(n: usize, spec: &WeightSpec) -> Result<Polynomial, WeightError> {
    if n > spec.order() {
        return Err(WeightError::OrderExceeded { index: n, order: spec.order() });
    }
    let mut total = Polynomial::zero();
    for s in enumerate_v_structures(n) {
        total += &weight_of_structure(&s, spec)?;
    }
    Ok(total)
}
