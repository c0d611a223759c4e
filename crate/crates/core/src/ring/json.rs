//! JSON form of a polynomial: a list of `{"coeff": "p/q", "monomial": {...}}`
//! entries in canonical (decreasing) order.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, Monomial, Polynomial, RingError, Var};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolynomialJson {
    pub coeff: String,
    pub monomial: BTreeMap<String, u32>,
}

impl Polynomial {
    pub fn to_json_terms(&self) -> Vec<PolynomialJson> {
        self.terms()
            .rev()
            .map(|(m, c)| PolynomialJson {
                coeff: c.to_string(),
                monomial: m.iter().map(|(v, e)| (v.name(), e)).collect(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[PolynomialJson]) -> Result<Polynomial, RingError> {
        let mut out = Polynomial::zero();
        for t in terms {
            let c = parse_rational(&t.coeff)?;
            let m = t
                .monomial
                .iter()
                .map(|(name, &e)| Var::parse(name).map(|v| (v, e)))
                .collect::<Result<Vec<_>, _>>()?;
            out += &Polynomial::term(c, Monomial::from_exponents(m));
        }
        Ok(out)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<PolynomialJson>::deserialize(d)?;
        Polynomial::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p: Polynomial = "a^3*b^3 - 7/3".parse().unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"coeff": "1", "monomial": {"a": 3, "b": 3}},
                {"coeff": "-7/3", "monomial": {}}
            ])
        );
        let back: Polynomial = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_unknown_variable() {
        let v = serde_json::json!([{"coeff": "1", "monomial": {"zz": 1}}]);
        assert!(serde_json::from_value::<Polynomial>(v).is_err());
    }
}
