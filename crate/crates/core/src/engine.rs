//! Closed-form products with a generator-type left factor.
//!
//! The basic rule: for `i ≠ j`, `λ = ro(A)` with `λ_j ≥ 1`,
//!
//! ```text
//! [E_{i,j} + diag(λ - e_j)]_1 · [A]_1 = Σ_t (a_{i,t} + 1) [A + E_{i,t} - E_{j,t}]_1
//! ```
//!
//! and every other product `[B]_1 · [A]_1` with `co(B) ≠ ro(A)` vanishes.
//! Products with a general left factor go through [`crate::pbw`]; right
//! products are obtained by conjugating with the transpose.

use num::{BigInt, One};

use crate::element::{bracket_element, rat, AlgebraElement, ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::lattice::{AffineMatrix, Composition};

/// The basis symbol `[E_{i,j} + diag(μ)]_1`, `i ≠ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftUnitFactor {
    i: i64,
    j: i64,
    mu: Composition,
}

impl LeftUnitFactor {
    pub fn new(i: i64, j: i64, mu: Composition) -> Result<Self> {
        let n = mu.len();
        if !(1..=n as i64).contains(&i) {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if i == j {
            return Err(Error::NonzeroDiagonal(i));
        }
        Ok(LeftUnitFactor { i, j, mu })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn matrix(&self) -> AffineMatrix {
        AffineMatrix::unit(self.i, self.j, self.n()).add(&AffineMatrix::diag(&self.mu))
    }

    /// `co = μ + e_j`.
    pub fn col_sum(&self) -> Composition {
        self.mu.add(&Composition::unit(self.j, self.n()))
    }
}

/// Adds `coeff · Σ_{t : a_{j,t} ≥ 1} (a_{i,t} + 1) [A + E_{i,t} - E_{j,t}]` to `out`.
fn unit_action(i: i64, j: i64, a: &AffineMatrix, coeff: &Rational, out: &mut AlgebraElement) {
    for (t, _) in a.row(j) {
        let reduced = a.sub_unit(j, t).expect("entry a_{j,t} is positive");
        let weight = a.get(i, t) + 1;
        out.add_term(reduced.add_unit(i, t), coeff * rat(weight as i64));
    }
}

/// `F · [A]_1` for a unit-type left factor `F`.
pub fn mult_left_unit(factor: &LeftUnitFactor, a: &AffineMatrix) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.n(), a.sigma());
    if factor.n() != a.n() || factor.col_sum() != a.row_sum() {
        return out;
    }
    unit_action(factor.i, factor.j, a, &Rational::one(), &mut out);
    out
}

/// `k_λ · x`: keeps the terms with `ro = λ`.
pub fn mult_diag(lambda: &Composition, x: &AlgebraElement) -> AlgebraElement {
    x.filter(|a| &a.row_sum() == lambda)
}

/// `x · k_λ`: keeps the terms with `co = λ`.
pub fn mult_by_diag(x: &AlgebraElement, lambda: &Composition) -> AlgebraElement {
    x.filter(|a| &a.col_sum() == lambda)
}

/// `g · x` for a generator `g`.
pub fn mult_generator(g: &Generator, x: &AlgebraElement) -> AlgebraElement {
    match g {
        Generator::K(lambda) => mult_diag(lambda, x),
        Generator::H(i) => {
            let mut out = AlgebraElement::zero(x.n(), x.r());
            for (a, c) in x.terms() {
                let w = a.row_sum().get(*i);
                if w > 0 {
                    out.add_term(a.clone(), c * rat(w as i64));
                }
            }
            out
        }
        _ => {
            let (i, j) = g.as_unit().expect("unit-type generator");
            let mut out = AlgebraElement::zero(x.n(), x.r());
            for (a, c) in x.terms() {
                unit_action(i, j, a, c, &mut out);
            }
            out
        }
    }
}

/// The basis-level transpose `[A]_1 ↦ [ᵗA]_1`.
pub fn transpose_tau(x: &AlgebraElement) -> AlgebraElement {
    x.map_basis(AffineMatrix::transpose)
}

/// `x · g`, computed as `τ(τ(g) · τ(x))`.
pub fn mult_generator_right(x: &AlgebraElement, g: &Generator) -> AlgebraElement {
    transpose_tau(&mult_generator(&g.transpose(), &transpose_tau(x)))
}

/// Applies the word right-to-left onto `seed`.
pub fn word_product(word: &[Generator], seed: &AlgebraElement) -> AlgebraElement {
    word.iter()
        .rev()
        .fold(seed.clone(), |acc, g| mult_generator(g, &acc))
}

/// Evaluates a word as an algebra element.
pub fn evaluate_word(word: &[Generator], n: usize, r: u64) -> AlgebraElement {
    word_product(word, &AlgebraElement::identity(n, r))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bracket_or_zero(b: Option<AffineMatrix>, j: Option<ExponentVector>, n: usize, r: u64) -> AlgebraElement {
    match (b, j) {
        (Some(b), Some(j)) => bracket_element(&b, &j, r).expect("diagonal-free matrix"),
        _ => AlgebraElement::zero(n, r),
    }
}

/// `E_{h,k}[0,r] · A[j,r]` evaluated from the three-sum closed form.
///
/// Terms whose matrix would have a negative off-diagonal entry vanish.
pub fn mult_bracket(
    h: i64,
    k: i64,
    a: &AffineMatrix,
    j: &ExponentVector,
    r: u64,
) -> Result<AlgebraElement> {
    if h == k {
        return Err(Error::NonzeroDiagonal(h));
    }
    if !a.is_diagonal_free() {
        let (i, _, _) = a.entries().find(|&(i, c, _)| i == c).unwrap();
        return Err(Error::NonzeroDiagonal(i));
    }
    let n = a.n();
    let mut out = AlgebraElement::zero(n, r);

    // Σ_{t ∉ {h,k}} (a_{h,t} + 1) (A + E_{h,t} - E_{k,t})[j, r]
    for (t, _) in a.row(k) {
        if t == h || t == k {
            continue;
        }
        let b = a.sub_unit(k, t).map(|b| b.add_unit(h, t));
        let w = rat(a.get(h, t) as i64 + 1);
        out.add_scaled(&w, &bracket_or_zero(b, Some(j.clone()), n, r));
    }

    // Σ_{0 ≤ t ≤ j_h} (-1)^t C(j_h, t) (A - E_{k,h})[j + (1 - t) e_h, r]
    if let Some(b) = a.sub_unit(k, h) {
        let jh = j.get(h);
        for t in 0..=jh {
            let sign = if t % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let c = Rational::from_integer(sign * binomial(jh, t));
            let shifted = j.shifted(h, 1 - t as i64);
            out.add_scaled(&c, &bracket_or_zero(Some(b.clone()), shifted, n, r));
        }
    }

    // (a_{h,k} + 1) Σ_{0 ≤ t ≤ j_k} C(j_k, t) (A + E_{h,k})[j - t e_k, r]
    let b = a.add_unit(h, k);
    let outer = a.get(h, k) as i64 + 1;
    let jk = j.get(k);
    for t in 0..=jk {
        let c = Rational::from_integer(binomial(jk, t) * BigInt::from(outer));
        let shifted = j.shifted(k, -(t as i64));
        out.add_scaled(&c, &bracket_or_zero(Some(b.clone()), shifted, n, r));
    }
    Ok(out)
}

/// `0[e_l, r] · A[j, r] = A[j + e_l, r] + (Σ_s a_{l,s}) A[j, r]`.
pub fn mult_zero_bracket(l: i64, a: &AffineMatrix, j: &ExponentVector, r: u64) -> Result<AlgebraElement> {
    let raised = j.shifted(l, 1).expect("raising an exponent stays nonnegative");
    let mut out = bracket_element(a, &raised, r)?;
    let row_total: u64 = a.row(l).map(|(_, v)| v).sum();
    if row_total > 0 {
        out.add_scaled(&rat(row_total as i64), &bracket_element(a, j, r)?);
    }
    Ok(out)
}

/// Column window wide enough to contain every position a product can touch.
fn column_window(a: &AffineMatrix, pad: i64) -> std::ops::RangeInclusive<i64> {
    let lo = a.entries().map(|(_, j, _)| j).min().unwrap_or(0);
    let hi = a.entries().map(|(_, j, _)| j).max().unwrap_or(0);
    (lo - pad)..=(hi + pad)
}

/// `[E_{h,h+ε} + diag(λ - e_{h+ε})]_1 · [A]_1` with `λ = ro(A)`, summed over an
/// explicit column window (terms with a negative entry dropped).
///
/// Returns `None` when `λ_{h+ε} = 0`, where the left factor does not exist.
pub fn adjacent_unit_product(h: i64, eps: i64, a: &AffineMatrix) -> Option<AlgebraElement> {
    assert!(eps == 1 || eps == -1);
    let n = a.n();
    if a.row_sum().get(h + eps) == 0 {
        return None;
    }
    let mut out = AlgebraElement::zero(n, a.sigma());
    for i in column_window(a, 2 * n as i64 + 2) {
        if let Some(b) = a.add_unit(h, i).sub_unit(h + eps, i) {
            out.add_term(b, rat(a.get(h, i) as i64 + 1));
        }
    }
    Some(out)
}

/// `[E_{h,h+mn} + diag(λ - e_h)]_1 · [A]_1` with `λ = ro(A)`, summed over an
/// explicit window of `s` in `Σ_s (a_{h,s+mn} + 1)[A + E_{h,s+mn} - E_{h,s}]_1`.
///
/// Returns `None` when `λ_h = 0`.
pub fn loop_unit_product(h: i64, m: i64, a: &AffineMatrix) -> Option<AlgebraElement> {
    assert!(m != 0);
    let n = a.n();
    if a.row_sum().get(h) == 0 {
        return None;
    }
    let shift = m * n as i64;
    let mut out = AlgebraElement::zero(n, a.sigma());
    for s in column_window(a, shift.abs() + 2 * n as i64 + 2) {
        if let Some(b) = a.add_unit(h, s + shift).sub_unit(h, s) {
            out.add_term(b, rat(a.get(h, s + shift) as i64 + 1));
        }
    }
    Some(out)
}
