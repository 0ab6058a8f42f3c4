//! Generator symbols and their images in the Schur algebra.
//!
//! Text vocabulary (used by the CLI): `e<i>`, `f<i>`, `h<i>`, `k<λ1>,<λ2>,...`
//! and `E<i>,<j>` for a general `e_{i,j}`.

use std::fmt;
use std::str::FromStr;

use num::One;

use crate::element::{bracket_element, rat, AlgebraElement, ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_compositions, AffineMatrix, Composition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `e_i = e_{i,i+1}`.
    E(i64),
    /// `f_i = e_{i+1,i}`.
    F(i64),
    /// The idempotent `k_λ`.
    K(Composition),
    /// `h_i`, the image of the diagonal unit `E_{i,i}`.
    H(i64),
    /// A general off-diagonal `e_{i,j}`, including the loops `e_{i,i+mn}`.
    Unit(i64, i64),
}

impl Generator {
    /// `e_{i,j}`, read as `h_i` when `i == j`.
    pub fn unit(i: i64, j: i64) -> Self {
        if i == j {
            Generator::H(i)
        } else {
            Generator::Unit(i, j)
        }
    }

    /// The loop generator `e_{i,i+mn}`.
    pub fn loop_unit(i: i64, m: i64, n: usize) -> Self {
        Generator::unit(i, i + m * n as i64)
    }

    /// The off-diagonal position `(i, j)` of a unit-type generator.
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        match *self {
            Generator::E(i) => Some((i, i + 1)),
            Generator::F(i) => Some((i + 1, i)),
            Generator::Unit(i, j) => Some((i, j)),
            Generator::K(_) | Generator::H(_) => None,
        }
    }

    /// Image under the anti-automorphism exchanging `e_{i,j}` and `e_{j,i}`.
    pub fn transpose(&self) -> Generator {
        match self {
            Generator::E(i) => Generator::F(*i),
            Generator::F(i) => Generator::E(*i),
            Generator::Unit(i, j) => Generator::Unit(*j, *i),
            g => g.clone(),
        }
    }

    /// Checks that row indices lie in `1..=n` and `k_λ` has `n` parts.
    pub fn validate(&self, n: usize) -> Result<()> {
        let check = |i: i64| {
            if (1..=n as i64).contains(&i) {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index: i, n })
            }
        };
        match self {
            Generator::E(i) | Generator::F(i) | Generator::H(i) => check(*i),
            Generator::Unit(i, _) => check(*i),
            Generator::K(lambda) if lambda.len() != n => Err(Error::WrongLength {
                expected: n,
                found: lambda.len(),
            }),
            Generator::K(_) => Ok(()),
        }
    }

    /// The element this generator denotes in the degree-`r` algebra.
    pub fn image(&self, n: usize, r: u64) -> AlgebraElement {
        match self {
            Generator::K(lambda) => {
                if lambda.degree() == r {
                    AlgebraElement::basis(AffineMatrix::diag(lambda))
                } else {
                    AlgebraElement::zero(n, r)
                }
            }
            Generator::H(i) => {
                let mut out = AlgebraElement::zero(n, r);
                for lambda in enumerate_compositions(n, r as i64) {
                    let w = lambda.get(*i);
                    if w > 0 {
                        out.add_term(AffineMatrix::diag(&lambda), rat(w as i64));
                    }
                }
                out
            }
            g => {
                let (i, j) = g.as_unit().expect("unit-type generator");
                bracket_element(&AffineMatrix::unit(i, j, n), &ExponentVector::zero(n), r)
                    .expect("off-diagonal unit")
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::H(i) => write!(f, "h{i}"),
            Generator::Unit(i, j) => write!(f, "E{i},{j}"),
            Generator::K(lambda) => {
                let parts: Vec<String> = lambda.parts().iter().map(u64::to_string).collect();
                write!(f, "k{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGenerator(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        match head {
            'e' => Ok(Generator::E(int(rest)?)),
            'f' => Ok(Generator::F(int(rest)?)),
            'h' => Ok(Generator::H(int(rest)?)),
            'E' => {
                let (i, j) = rest.split_once(',').ok_or_else(bad)?;
                let (i, j) = (int(i)?, int(j)?);
                if i == j {
                    return Err(bad());
                }
                Ok(Generator::Unit(i, j))
            }
            'k' => {
                let parts = rest
                    .split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Generator::K(Composition::new(parts)))
            }
            _ => Err(bad()),
        }
    }
}

/// Sum of the generators' images, each with coefficient one.
pub fn image_sum(gens: &[Generator], n: usize, r: u64) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n, r);
    for g in gens {
        out.add_scaled(&Rational::one(), &g.image(n, r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(p: &[u64]) -> AffineMatrix {
        AffineMatrix::diag(&Composition::new(p.to_vec()))
    }

    #[test]
    fn generator_images() {
        assert_eq!(
            Generator::E(1).image(2, 1),
            AlgebraElement::basis(AffineMatrix::unit(1, 2, 2))
        );
        assert_eq!(Generator::H(1).image(2, 1), AlgebraElement::basis(diag(&[1, 0])));
        assert_eq!(
            Generator::F(1).image(2, 1),
            AlgebraElement::basis(AffineMatrix::unit(2, 1, 2))
        );
        assert!(Generator::K(Composition::new(vec![1, 1])).image(2, 1).is_zero());
    }

    #[test]
    fn h_weights_by_part() {
        let h = Generator::H(2).image(2, 2);
        assert_eq!(h.coeff(&diag(&[0, 2])), rat(2));
        assert_eq!(h.coeff(&diag(&[1, 1])), rat(1));
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn parse_vocabulary() {
        for s in ["e1", "f2", "h1", "k1,0", "E1,-3", "E2,5"] {
            let g: Generator = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("E1,1".parse::<Generator>().is_err());
        assert!("x1".parse::<Generator>().is_err());
        assert!("e".parse::<Generator>().is_err());
        assert!("k1,a".parse::<Generator>().is_err());
    }

    #[test]
    fn validate_indices() {
        assert!(Generator::E(3).validate(2).is_err());
        assert!(Generator::Unit(1, 9).validate(2).is_ok());
        assert!(Generator::K(Composition::new(vec![1])).validate(2).is_err());
    }

    #[test]
    fn transpose_swaps_raising_and_lowering() {
        assert_eq!(Generator::E(1).transpose(), Generator::F(1));
        assert_eq!(Generator::loop_unit(1, 2, 2).transpose(), Generator::Unit(5, 1));
        assert_eq!(Generator::H(2).transpose(), Generator::H(2));
    }
}
