//! Serde forms.
//!
//! * `Rational`: `{"num": "-1", "den": "2"}` (decimal strings)
//! * `Polynomial`: `{"vars": ["t1"], "terms": [{"exps": [2], "coeff": Rational}]}`;
//!   a bare `Rational` object is also accepted as a constant
//! * `Coderivation`: `{"space": {"even": 2, "odd": 1}, "terms": [{"word": [2,3], "target": 2, "coeff": ...}]}`

use std::sync::Arc;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coder::Coderivation;
use crate::poly::Polynomial;
use crate::scalar::{Coeff, Rational};
use crate::space::{GradedSpace, Word};

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        format!("{}/{}", r.num, r.den)
            .parse()
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTerm {
    exps: Vec<u32>,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<PolyTerm>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyOrRational {
    Poly(PolyRepr),
    Rational(Rational),
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars().iter().cloned().collect(),
            terms: self
                .terms()
                .map(|(m, c)| PolyTerm {
                    exps: m.exps().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match PolyOrRational::deserialize(d)? {
            PolyOrRational::Rational(r) => Ok(Polynomial::constant(r)),
            PolyOrRational::Poly(p) => {
                let vars: Arc<[String]> = p.vars.into();
                Polynomial::from_terms(&vars, p.terms.into_iter().map(|t| (t.exps, t.coeff)))
                    .map_err(D::Error::custom)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<S> {
    word: Word,
    target: usize,
    coeff: S,
}

#[derive(Serialize, Deserialize)]
struct CoderRepr<S> {
    space: GradedSpace,
    terms: Vec<TermRepr<S>>,
}

impl<S: Coeff + Serialize> Serialize for Coderivation<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        CoderRepr {
            space: *self.space(),
            terms: self
                .terms()
                .map(|(t, c)| TermRepr {
                    word: t.word.clone(),
                    target: t.target(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Coeff + DeserializeOwned> Deserialize<'de> for Coderivation<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r: CoderRepr<S> = CoderRepr::deserialize(d)?;
        let space =
            GradedSpace::new(r.space.even_dim(), r.space.odd_dim()).map_err(D::Error::custom)?;
        Coderivation::from_terms(
            space,
            r.terms.into_iter().map(|t| (t.word, t.target, t.coeff)),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coder::{parse_coderivation, parse_rational_coderivation};

    #[test]
    fn rational_form() {
        let r = Rational::new(-1, 2).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"num":"-1","den":"2"}"#);
        assert_eq!(serde_json::from_str::<Rational>(&j).unwrap(), r);
        assert!(serde_json::from_str::<Rational>(r#"{"num":"1","den":"0"}"#).is_err());
    }

    #[test]
    fn coderivation_round_trip() {
        let s = GradedSpace::standard();
        let d = parse_rational_coderivation(s, "psi(2,3;2) - 1/2*psi(3,2;2)").unwrap();
        let j = serde_json::to_value(&d).unwrap();
        assert_eq!(j["space"]["even"], 2);
        assert_eq!(j["terms"][0]["word"], serde_json::json!([2, 3]));
        assert_eq!(j["terms"][0]["target"], 2);
        let back: Coderivation<Rational> = serde_json::from_value(j).unwrap();
        assert_eq!(back, d);

        let p = parse_coderivation(s, "psi(2,2;3) + (t1 - 3*t2^2)*psi(1,1;3)", None).unwrap();
        let j = serde_json::to_string(&p).unwrap();
        let back: Coderivation<Polynomial> = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn invalid_terms_rejected() {
        let j = r#"{"space":{"even":2,"odd":1},"terms":[{"word":[4],"target":1,"coeff":{"num":"1","den":"1"}}]}"#;
        assert!(serde_json::from_str::<Coderivation<Rational>>(j).is_err());
    }
}
