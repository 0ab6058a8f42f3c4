//! PBW monomials, the unitriangular expansion, normal forms and general products.
//!
//! A monomial `(A, λ)` with `A` diagonal-free stands for the word
//!
//! ```text
//! Π_{(i,j) upper} e_{i,j}^{a_{i,j}} · k_λ · Π_{(i,j) lower} e_{i,j}^{a_{i,j}}
//! ```
//!
//! (divided by `Π a_{i,j}!` in the divided form). Upper positions are taken in
//! `(i, j)` ascending order, lower positions by `i` ascending then `j`
//! descending. The divided monomial equals `[A + diag(λ - σ̂(A))]_1` plus
//! terms `[B]_1` with a strictly smaller off-diagonal weight, which is what
//! [`NormalForm`] inverts.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, One, Zero};

use crate::element::{AlgebraElement, Rational};
use crate::engine::{mult_diag, mult_generator};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::lattice::{AffineMatrix, Composition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    off: AffineMatrix,
    lambda: Composition,
}

impl PbwMonomial {
    pub fn new(off: AffineMatrix, lambda: Composition) -> Result<Self> {
        if let Some((i, _, _)) = off.entries().find(|&(i, j, _)| i == j) {
            return Err(Error::NonzeroDiagonal(i));
        }
        if lambda.len() != off.n() {
            return Err(Error::WrongLength {
                expected: off.n(),
                found: lambda.len(),
            });
        }
        Ok(PbwMonomial { off, lambda })
    }

    /// The monomial whose leading term is `[C]_1`: `(C - diag, σ̂(C))`.
    pub fn for_basis(c: &AffineMatrix) -> Self {
        PbwMonomial {
            off: c.off_diagonal(),
            lambda: c.sigma_vec(),
        }
    }

    pub fn off_diagonal(&self) -> &AffineMatrix {
        &self.off
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.off.n()
    }

    pub fn r(&self) -> u64 {
        self.lambda.degree()
    }

    /// `A + diag(λ - σ̂(A))`, or `None` when the diagonal would be negative.
    pub fn leading_matrix(&self) -> Option<AffineMatrix> {
        let slack = self.lambda.checked_sub(&self.off.sigma_vec())?;
        Some(self.off.add(&AffineMatrix::diag(&slack)))
    }

    /// Upper factors in position order, each repeated by its multiplicity.
    pub fn upper_word(&self) -> Vec<Generator> {
        let mut word = Vec::new();
        for (i, j, a) in self.off.upper().entries() {
            word.extend(std::iter::repeat_n(Generator::Unit(i, j), a as usize));
        }
        word
    }

    pub fn lower_word(&self) -> Vec<Generator> {
        let mut lower: Vec<_> = self.off.lower().entries().collect();
        lower.sort_by_key(|&(i, j, _)| (i, std::cmp::Reverse(j)));
        let mut word = Vec::new();
        for (i, j, a) in lower {
            word.extend(std::iter::repeat_n(Generator::Unit(i, j), a as usize));
        }
        word
    }

    /// The full word: upper factors, `k_λ`, lower factors.
    pub fn word(&self) -> Vec<Generator> {
        let mut word = self.upper_word();
        word.push(Generator::K(self.lambda.clone()));
        word.extend(self.lower_word());
        word
    }

    /// `Π a_{i,j}!` over all off-diagonal entries.
    pub fn divisor(&self) -> BigInt {
        self.off
            .entries()
            .map(|(_, _, a)| (1..=a).map(BigInt::from).product::<BigInt>())
            .product()
    }

    /// Left action of the monomial's word on `y`.
    pub fn act(&self, y: &AlgebraElement, divided: bool) -> AlgebraElement {
        let mut acc = y.clone();
        for g in self.lower_word().iter().rev() {
            acc = mult_generator(g, &acc);
        }
        acc = mult_diag(&self.lambda, &acc);
        for g in self.upper_word().iter().rev() {
            acc = mult_generator(g, &acc);
        }
        if divided {
            acc = acc.scale(&Rational::new(BigInt::one(), self.divisor()));
        }
        acc
    }
}

/// Evaluates a monomial as an element.
///
/// The idempotent is moved past the lower factors first: `k_λ f = f k_{λ'}` with
/// `λ' = λ - ro(A⁻) + co(A⁻)`, so the word acts on the single symbol `k_{λ'}`.
pub fn pbw_evaluate(m: &PbwMonomial, divided: bool) -> AlgebraElement {
    let lower = m.off.lower();
    let shifted: Vec<i64> = m
        .lambda
        .weights()
        .iter()
        .zip(lower.row_sum().parts())
        .zip(lower.col_sum().parts())
        .map(|((l, ro), co)| l - *ro as i64 + *co as i64)
        .collect();
    match Composition::from_weights(&shifted) {
        Some(seed) => m.act(&AlgebraElement::basis(AffineMatrix::diag(&seed)), divided),
        None => AlgebraElement::zero(m.n(), m.r()),
    }
}

/// Outcome of checking the unitriangular expansion of one divided monomial.
#[derive(Clone, Debug)]
pub struct TriangularReport {
    pub monomial: PbwMonomial,
    /// `A + diag(λ - σ̂(A))`, absent when that diagonal is negative.
    pub leading: Option<AffineMatrix>,
    pub leading_coeff: Rational,
    /// All other terms of the expansion.
    pub residual: Vec<(AffineMatrix, Rational)>,
    pub passed: bool,
}

impl TriangularReport {
    pub fn degenerate(&self) -> bool {
        self.leading.is_none()
    }
}

pub fn triangular_check(off: &AffineMatrix, lambda: &Composition) -> Result<TriangularReport> {
    let monomial = PbwMonomial::new(off.clone(), lambda.clone())?;
    let value = pbw_evaluate(&monomial, true);
    let leading = monomial.leading_matrix();
    let bound = off.sigma();
    let leading_coeff = leading
        .as_ref()
        .map(|l| value.coeff(l))
        .unwrap_or_else(Rational::zero);
    let residual: Vec<_> = value
        .terms()
        .filter(|(b, _)| Some(*b) != leading.as_ref())
        .map(|(b, c)| (b.clone(), c.clone()))
        .collect();
    let lower_ok = residual.iter().all(|(b, _)| b.off_diagonal().sigma() < bound);
    let lead_ok = leading.is_none() || leading_coeff.is_one();
    Ok(TriangularReport {
        monomial,
        leading,
        leading_coeff,
        residual,
        passed: lower_ok && lead_ok,
    })
}

pub type Coordinates = BTreeMap<PbwMonomial, Rational>;

/// Normal forms in the divided PBW basis, memoized per basis symbol.
///
/// Single-threaded: the memo tables are owned by the instance.
#[derive(Default)]
pub struct NormalForm {
    basis_memo: HashMap<AffineMatrix, Coordinates>,
    eval_memo: HashMap<PbwMonomial, AlgebraElement>,
}

impl NormalForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// The divided monomial as an element (memoized).
    pub fn evaluate(&mut self, m: &PbwMonomial) -> AlgebraElement {
        if let Some(v) = self.eval_memo.get(m) {
            return v.clone();
        }
        let v = pbw_evaluate(m, true);
        self.eval_memo.insert(m.clone(), v.clone());
        v
    }

    /// Coordinates of `[C]_1`, by back-substitution on the off-diagonal weight.
    pub fn of_basis(&mut self, c: &AffineMatrix) -> Coordinates {
        if let Some(v) = self.basis_memo.get(c) {
            return v.clone();
        }
        let m = PbwMonomial::for_basis(c);
        let value = self.evaluate(&m);
        assert!(
            value.coeff(c).is_one(),
            "leading coefficient of the monomial for {c} is {}",
            value.coeff(c)
        );
        let bound = c.off_diagonal().sigma();
        let mut coords = Coordinates::new();
        coords.insert(m, Rational::one());
        for (b, f) in value.terms() {
            if b == c {
                continue;
            }
            assert!(
                b.off_diagonal().sigma() < bound,
                "non-triangular term {b} in the expansion for {c}"
            );
            for (mono, g) in self.of_basis(b) {
                accumulate(&mut coords, mono, -(f * g));
            }
        }
        self.basis_memo.insert(c.clone(), coords.clone());
        coords
    }

    pub fn normal_form(&mut self, x: &AlgebraElement) -> Coordinates {
        let mut coords = Coordinates::new();
        for (c, f) in x.terms() {
            for (mono, g) in self.of_basis(c) {
                accumulate(&mut coords, mono, f * g);
            }
        }
        coords
    }

    /// `Σ c_M · M` as an element.
    pub fn expand(&mut self, coords: &Coordinates, n: usize, r: u64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(n, r);
        for (m, c) in coords {
            let v = self.evaluate(m);
            out.add_scaled(c, &v);
        }
        out
    }

    /// `x · y`: the PBW words of `x` act on `y`.
    pub fn general_product(&mut self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        x.check_compatible(y)?;
        let mut out = AlgebraElement::zero(y.n(), y.r());
        for (m, c) in self.normal_form(x) {
            out.add_scaled(&c, &m.act(y, true));
        }
        Ok(out)
    }
}

fn accumulate(coords: &mut Coordinates, m: PbwMonomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = coords.entry(m.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        coords.remove(&m);
    }
}

/// All matrices of total weight `total` supported on positions `(i, j)` with
/// `1 ≤ i ≤ n` and `|j - i| ≤ band`, optionally excluding the diagonal.
pub fn enumerate_band(n: usize, band: u64, total: u64, diagonal: bool) -> Vec<AffineMatrix> {
    let band = band as i64;
    let positions: Vec<(i64, i64)> = (1..=n as i64)
        .flat_map(|i| (i - band..=i + band).map(move |j| (i, j)))
        .filter(|&(i, j)| diagonal || i != j)
        .collect();
    let mut out = Vec::new();
    let mut counts = vec![0u64; positions.len()];
    fill_band(&positions, &mut counts, 0, total, n, &mut out);
    out
}

fn fill_band(
    positions: &[(i64, i64)],
    counts: &mut Vec<u64>,
    pos: usize,
    left: u64,
    n: usize,
    out: &mut Vec<AffineMatrix>,
) {
    if pos == positions.len() {
        if left == 0 {
            out.push(AffineMatrix::from_entries(
                n,
                positions.iter().zip(counts.iter()).map(|(&(i, j), &a)| (i, j, a)),
            ));
        }
        return;
    }
    for v in (0..=left).rev() {
        counts[pos] = v;
        fill_band(positions, counts, pos + 1, left - v, n, out);
    }
    counts[pos] = 0;
}

/// `Θ(n, r)` restricted to the band `|j - i| ≤ band`.
pub fn enumerate_theta(n: usize, r: u64, band: u64) -> Vec<AffineMatrix> {
    enumerate_band(n, band, r, true)
}

/// Diagonal-free matrices of weight at most `max_weight` in the band.
pub fn enumerate_theta_pm(n: usize, max_weight: u64, band: u64) -> Vec<AffineMatrix> {
    (0..=max_weight)
        .flat_map(|w| enumerate_band(n, band, w, false))
        .collect()
}
