//! Exact rational linear combinations of basis symbols `[A]_1`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_compositions, AffineMatrix, Composition};

pub type Rational = BigRational;

pub fn rat(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a coefficient as `num/den`, always with an explicit denominator.
pub fn format_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadCoefficient(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Exponent vector `j ∈ N^n` for the weights `λ^j = Π λ_i^{j_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(parts: Vec<u64>) -> Self {
        ExponentVector(parts)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// `e_i`, periodic in `i`.
    pub fn unit(i: i64, n: usize) -> Self {
        ExponentVector(Composition::unit(i, n).parts().to_vec())
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: i64) -> u64 {
        self.0[crate::lattice::residue(i, self.0.len()) - 1]
    }

    /// `self + delta * e_i`; `None` if a part would go negative.
    pub fn shifted(&self, i: i64, delta: i64) -> Option<Self> {
        let mut parts = self.0.clone();
        let k = crate::lattice::residue(i, parts.len()) - 1;
        parts[k] = u64::try_from(parts[k] as i64 + delta).ok()?;
        Some(ExponentVector(parts))
    }

    /// `λ^j` with `0^0 = 1`.
    pub fn weight(&self, lambda: &Composition) -> BigInt {
        self.0
            .iter()
            .zip(lambda.parts())
            .map(|(&j, &l)| num::pow(BigInt::from(l), j as usize))
            .product()
    }
}

/// An element of the degree-`r` algebra with period `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    r: u64,
    terms: BTreeMap<AffineMatrix, Rational>,
}

impl AlgebraElement {
    pub fn zero(n: usize, r: u64) -> Self {
        assert!(n >= 2, "period must be at least 2");
        AlgebraElement {
            n,
            r,
            terms: BTreeMap::new(),
        }
    }

    /// The basis symbol `[A]_1`; its degree is `σ(A)`.
    pub fn basis(a: AffineMatrix) -> Self {
        let mut x = AlgebraElement::zero(a.n(), a.sigma());
        x.terms.insert(a, Rational::one());
        x
    }

    /// `Σ_λ [diag(λ)]_1`, the unit of the algebra.
    pub fn identity(n: usize, r: u64) -> Self {
        let mut x = AlgebraElement::zero(n, r);
        for lambda in enumerate_compositions(n, r as i64) {
            x.terms.insert(AffineMatrix::diag(&lambda), Rational::one());
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineMatrix, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (AffineMatrix, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, a: &AffineMatrix) -> Rational {
        self.terms.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn same_algebra(&self, other: &AlgebraElement) -> bool {
        self.n == other.n && self.r == other.r
    }

    pub fn check_compatible(&self, other: &AlgebraElement) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::Mismatch {
                expected: (self.n, self.r),
                found: (other.n, other.r),
            })
        }
    }

    /// Adds `c · [A]_1`, pruning a resulting zero coefficient.
    ///
    /// Panics if `A` lives in another algebra.
    pub fn add_term(&mut self, a: AffineMatrix, c: Rational) {
        assert!(
            a.n() == self.n && a.sigma() == self.r,
            "basis symbol {a} does not belong to the algebra (n, r) = ({}, {})",
            self.n,
            self.r
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &AlgebraElement) {
        assert!(self.same_algebra(other), "mismatched algebras");
        if c.is_zero() {
            return;
        }
        for (a, d) in &other.terms {
            self.add_term(a.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n, self.r);
        out.add_scaled(c, self);
        out
    }

    /// Applies a coefficient-preserving map to every basis symbol.
    pub fn map_basis(&self, f: impl Fn(&AffineMatrix) -> AffineMatrix) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n, self.r);
        for (a, c) in &self.terms {
            out.add_term(f(a), c.clone());
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&AffineMatrix) -> bool) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            r: self.r,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Canonical one-line text: `0`, or terms `p/q·[entries]` joined by ` + `
    /// in canonical matrix order.
    pub fn serialize(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(a, c)| format!("{}·[{}]", format_rational(c), a))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Largest absolute numerator or denominator, for diagnostics.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.numer().abs().max(c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S(n={}, r={}): {}", self.n, self.r, self.serialize())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(mut self, rhs: AlgebraElement) -> AlgebraElement {
        self.add_scaled(&Rational::one(), &rhs);
        self
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(mut self, rhs: AlgebraElement) -> AlgebraElement {
        self.add_scaled(&-Rational::one(), &rhs);
        self
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Rational::one())
    }
}

/// `A[j, r] = Σ_{λ ∈ Λ(n, r - σ(A))} λ^j [A + diag(λ)]_1`.
///
/// `A` must have zero diagonal. The sum is empty (zero) when `σ(A) > r`.
pub fn bracket_element(a: &AffineMatrix, j: &ExponentVector, r: u64) -> Result<AlgebraElement> {
    if let Some((i, _, _)) = a.entries().find(|&(i, k, _)| i == k) {
        return Err(Error::NonzeroDiagonal(i));
    }
    if j.len() != a.n() {
        return Err(Error::WrongLength {
            expected: a.n(),
            found: j.len(),
        });
    }
    let mut out = AlgebraElement::zero(a.n(), r);
    for lambda in enumerate_compositions(a.n(), r as i64 - a.sigma() as i64) {
        let w = j.weight(&lambda);
        if !w.is_zero() {
            out.add_term(a.add(&AffineMatrix::diag(&lambda)), Rational::from_integer(w));
        }
    }
    Ok(out)
}

/// The idempotent `k_λ = [diag(λ)]_1`.
pub fn idempotent(lambda: &Composition) -> AlgebraElement {
    AlgebraElement::basis(AffineMatrix::diag(lambda))
}
