//! JSON wire format for tensor elements:
//! `{"rank": r, "legs": m, "terms": [{"c": "p/q", "e": [[..r ints..] × m]}, ...]}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GroupElement, TensorElement};
use crate::error::{Error, Result};
use crate::rational;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    c: String,
    e: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorElementRepr {
    rank: usize,
    legs: usize,
    terms: Vec<TermRepr>,
}

impl From<&TensorElement> for TensorElementRepr {
    fn from(x: &TensorElement) -> Self {
        TensorElementRepr {
            rank: x.rank,
            legs: x.legs,
            terms: x
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    c: rational::format(c),
                    e: m.iter().map(|g| g.exponents().to_vec()).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<TensorElementRepr> for TensorElement {
    type Error = Error;

    fn try_from(r: TensorElementRepr) -> Result<Self> {
        let terms = r
            .terms
            .into_iter()
            .map(|t| {
                let c = rational::parse(&t.c)?;
                Ok((t.e.into_iter().map(GroupElement::new).collect(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        TensorElement::from_terms(r.rank, r.legs, terms)
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorElementRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TensorElementRepr::deserialize(d)?;
        TensorElement::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl TensorElement {
    /// Compact canonical JSON; equal elements give byte-identical strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tensor elements always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn wire_format() {
        let x = TensorElement::mono(1, frac(1, 2), &[&[-1], &[1]]).unwrap();
        assert_eq!(x.to_json(), r#"{"rank":1,"legs":2,"terms":[{"c":"1/2","e":[[-1],[1]]}]}"#);
        assert_eq!(TensorElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn parse_normalizes() {
        let s = r#"{"rank":1,"legs":1,"terms":[{"c":"2","e":[[1]]},{"c":"-2/1","e":[[1]]},{"c":"3/6","e":[[0]]}]}"#;
        let x = TensorElement::from_json(s).unwrap();
        assert_eq!(x, TensorElement::mono(1, frac(1, 2), &[&[0]]).unwrap());
    }

    #[test]
    fn parse_rejects_bad_shapes() {
        assert!(TensorElement::from_json(r#"{"rank":1,"legs":2,"terms":[{"c":"1","e":[[1]]}]}"#).is_err());
        assert!(TensorElement::from_json(r#"{"rank":2,"legs":1,"terms":[{"c":"1","e":[[1]]}]}"#).is_err());
        assert!(TensorElement::from_json(r#"{"rank":1,"legs":1,"terms":[{"c":"1/0","e":[[1]]}]}"#).is_err());
        assert!(TensorElement::from_json(r#"{"rank":1,"legs":1,"terms":[],"x":1}"#).is_err());
    }
}
