//! JSON interchange forms.
//!
//! - matrix: `{"n": 2, "entries": [[1, 2, 1], [2, 2, 1]]}`, rows in `1..=n`,
//!   entries sorted by `(i, j)` and positive;
//! - element: `{"n": 2, "r": 2, "terms": [{"matrix": ..., "coeff": "p/q"}]}`
//!   with terms in canonical matrix order;
//! - PBW coordinates: `[{"Aplus": ..., "lambda": [..], "Aminus": ..., "coeff": "p/q"}]`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::{format_rational, parse_rational, AlgebraElement};
use crate::error::{Error, Result};
use crate::lattice::{AffineMatrix, Composition};
use crate::pbw::{Coordinates, PbwMonomial};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<(i64, i64, u64)>,
}

impl From<&AffineMatrix> for MatrixJson {
    fn from(a: &AffineMatrix) -> Self {
        MatrixJson {
            n: a.n(),
            entries: a.entries().collect(),
        }
    }
}

impl TryFrom<MatrixJson> for AffineMatrix {
    type Error = Error;
    fn try_from(m: MatrixJson) -> Result<Self> {
        AffineMatrix::try_from_sorted_entries(m.n, &m.entries)
    }
}

impl Serialize for AffineMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixJson::deserialize(d)?;
        AffineMatrix::try_from(wire).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub matrix: AffineMatrix,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub n: usize,
    pub r: u64,
    pub terms: Vec<TermJson>,
}

impl From<&AlgebraElement> for ElementJson {
    fn from(x: &AlgebraElement) -> Self {
        ElementJson {
            n: x.n(),
            r: x.r(),
            terms: x
                .terms()
                .map(|(a, c)| TermJson {
                    matrix: a.clone(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementJson> for AlgebraElement {
    type Error = Error;
    fn try_from(x: ElementJson) -> Result<Self> {
        if x.n < 2 {
            return Err(Error::InvalidPeriod(x.n));
        }
        let mut out = AlgebraElement::zero(x.n, x.r);
        for t in x.terms {
            if t.matrix.n() != x.n {
                return Err(Error::Mismatch {
                    expected: (x.n, x.r),
                    found: (t.matrix.n(), t.matrix.sigma()),
                });
            }
            if t.matrix.sigma() != x.r {
                return Err(Error::DegreeMismatch {
                    sigma: t.matrix.sigma(),
                    r: x.r,
                });
            }
            out.add_term(t.matrix, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ElementJson::deserialize(d)?;
        AlgebraElement::try_from(wire).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PbwCoordinateJson {
    #[serde(rename = "Aplus")]
    pub a_plus: AffineMatrix,
    pub lambda: Composition,
    #[serde(rename = "Aminus")]
    pub a_minus: AffineMatrix,
    pub coeff: String,
}

pub fn coordinates_to_json(coords: &Coordinates) -> Vec<PbwCoordinateJson> {
    coords
        .iter()
        .map(|(m, c)| PbwCoordinateJson {
            a_plus: m.off_diagonal().upper(),
            lambda: m.lambda().clone(),
            a_minus: m.off_diagonal().lower(),
            coeff: format_rational(c),
        })
        .collect()
}

pub fn coordinates_from_json(items: Vec<PbwCoordinateJson>) -> Result<Coordinates> {
    let mut coords = Coordinates::new();
    for item in items {
        if !item.a_plus.lower().is_zero() || !item.a_plus.is_diagonal_free() {
            return Err(Error::BadCoefficient("Aplus must be strictly upper".into()));
        }
        if !item.a_minus.upper().is_zero() || !item.a_minus.is_diagonal_free() {
            return Err(Error::BadCoefficient("Aminus must be strictly lower".into()));
        }
        let m = PbwMonomial::new(item.a_plus.add(&item.a_minus), item.lambda)?;
        coords.insert(m, parse_rational(&item.coeff)?);
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ratio;
    use proptest::prelude::*;

    #[test]
    fn matrix_json_shape() {
        let a = AffineMatrix::from_entries(2, [(2, 2, 1), (1, 2, 1)]);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"n":2,"entries":[[1,2,1],[2,2,1]]}"#
        );
        let back: AffineMatrix = serde_json::from_str(r#"{"n":2,"entries":[[1,2,1],[2,2,1]]}"#).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn matrix_json_rejects_noncanonical() {
        for bad in [
            r#"{"n":2,"entries":[[3,2,1]]}"#,
            r#"{"n":2,"entries":[[1,2,0]]}"#,
            r#"{"n":2,"entries":[[2,2,1],[1,2,1]]}"#,
            r#"{"n":1,"entries":[]}"#,
            r#"{"n":2,"entries":[[1,2,-1]]}"#,
        ] {
            assert!(serde_json::from_str::<AffineMatrix>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn element_json_shape() {
        let x = AlgebraElement::basis(AffineMatrix::unit(1, 2, 2)).scale(&ratio(1, 2));
        assert_eq!(
            serde_json::to_string(&x).unwrap(),
            r#"{"n":2,"r":1,"terms":[{"matrix":{"n":2,"entries":[[1,2,1]]},"coeff":"1/2"}]}"#
        );
    }

    #[test]
    fn element_json_rejects_wrong_degree() {
        let s = r#"{"n":2,"r":2,"terms":[{"matrix":{"n":2,"entries":[[1,2,1]]},"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<AlgebraElement>(s).is_err());
    }

    fn small_element() -> impl Strategy<Value = AlgebraElement> {
        prop::collection::vec(((1i64..=3), (-4i64..=4), (1u64..=2), (-5i64..=5), (1i64..=4)), 0..6)
            .prop_map(|raw| {
                let mut x = AlgebraElement::zero(3, 2);
                for (i, j, a, p, q) in raw {
                    let m = if a == 2 {
                        AffineMatrix::from_entries(3, [(i, j, 2)])
                    } else {
                        AffineMatrix::from_entries(3, [(i, j, 1), (i, i, 1)])
                    };
                    x.add_term(m, ratio(p, q));
                }
                x
            })
    }

    proptest! {
        #[test]
        fn element_json_round_trips(x in small_element()) {
            let text = serde_json::to_string(&x).unwrap();
            let back: AlgebraElement = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
