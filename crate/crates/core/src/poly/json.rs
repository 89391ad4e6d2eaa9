//! JSON representation: a polynomial is an array of `{"coeff": "...", "mono": {"1": 2}}`.

use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::Domain;

/// Monomial as a map from 1-based variable index (string key) to exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoRepr(pub Monomial);

impl Serialize for MonoRepr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.support_size()))?;
        for (v, e) in self.0.pairs() {
            map.serialize_entry(&(v + 1).to_string(), &e)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for MonoRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = MonoRepr;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from 1-based variable index to exponent")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<MonoRepr, A::Error> {
                use serde::de::Error as _;
                let mut pairs = Vec::new();
                while let Some((k, e)) = map.next_entry::<String, u32>()? {
                    let v: usize = k
                        .trim()
                        .parse()
                        .ok()
                        .filter(|&v: &usize| v >= 1)
                        .ok_or_else(|| A::Error::custom(format!("bad variable index '{k}'")))?;
                    pairs.push((v - 1, e));
                }
                Ok(MonoRepr(Monomial::from_pairs(pairs)))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub coeff: String,
    pub mono: MonoRepr,
}

/// Either the term array or, for hand-written files, the text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyRepr {
    Terms(Vec<TermRepr>),
    Text(String),
}

impl PolyRepr {
    /// Canonical term array, descending graded-lex.
    pub fn from_poly(p: &Polynomial) -> Self {
        let d = p.domain();
        PolyRepr::Terms(
            p.terms()
                .rev()
                .map(|(m, c)| TermRepr {
                    coeff: d.format(c),
                    mono: MonoRepr(m.clone()),
                })
                .collect(),
        )
    }

    pub fn to_poly(&self, domain: Domain, nvars: usize) -> Result<Polynomial> {
        match self {
            PolyRepr::Text(s) => Polynomial::parse(domain, Some(nvars), s),
            PolyRepr::Terms(ts) => {
                let mut p = Polynomial::zero(domain, nvars);
                for t in ts {
                    if let Some(v) = t.mono.0.max_var() {
                        if v >= nvars {
                            return Err(Error::DimensionMismatch {
                                expected: nvars,
                                found: v + 1,
                            });
                        }
                    }
                    p.add_term(t.mono.0.clone(), domain.parse_coeff(&t.coeff)?);
                }
                Ok(p)
            }
        }
    }
}
