//! The relations of the presented algebra, checked inside the Schur algebra.
//!
//! Every relation side is evaluated through generator-type left actions on
//! the identity, so a relation holds iff the engine returns a zero residual.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::element::{bracket_element, rat, AlgebraElement, ExponentVector, Rational};
use crate::engine::{mult_by_diag, mult_generator};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::lattice::{canonicalize, enumerate_compositions, residue, AffineMatrix, Composition};
use crate::pbw::enumerate_theta;

/// Entry `c_{i,j}` of the affine Cartan matrix of type `A_{n-1}`.
pub fn cartan_entry(i: i64, j: i64, n: usize) -> i64 {
    let (a, b) = (residue(i, n), residue(j, n));
    if a == b {
        2
    } else if n == 2 {
        -2
    } else if residue(i + 1, n) == b || residue(j + 1, n) == a {
        -1
    } else {
        0
    }
}

/// A linear combination of the affine units `ê_{i,j}`; the diagonal `ê_{i,i}`
/// stands for `h_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    terms: BTreeMap<(i64, i64), Rational>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(i: i64, j: i64, n: usize) -> Self {
        let mut out = LieElement::zero(n);
        out.add_term(i, j, Rational::one());
        out
    }

    pub fn e(i: i64, n: usize) -> Self {
        LieElement::unit(i, i + 1, n)
    }

    pub fn f(i: i64, n: usize) -> Self {
        LieElement::unit(i + 1, i, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: Rational) {
        let key = canonicalize(i, j, self.n);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &LieElement) {
        for (&(i, j), d) in &other.terms {
            self.add_term(i, j, c * d);
        }
    }

    /// The bracket, extended bilinearly from
    /// `[ê_{i,j}, ê_{k,l}] = δ_{j̄,k̄} ê_{i,l+j-k} - δ_{l̄,ī} ê_{k,j+l-i}`.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let n = self.n;
        let mut out = LieElement::zero(n);
        for (&(i, j), c) in &self.terms {
            for (&(k, l), d) in &other.terms {
                let cd = c * d;
                if residue(j, n) == residue(k, n) {
                    out.add_term(i, l + j - k, cd.clone());
                }
                if residue(l, n) == residue(i, n) {
                    out.add_term(k, j + l - i, -cd);
                }
            }
        }
        out
    }

    /// The generators with their coefficients.
    pub fn generators(&self) -> Vec<(Generator, Rational)> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (Generator::unit(i, j), c.clone()))
            .collect()
    }

    pub fn has_diagonal(&self) -> bool {
        self.terms.keys().any(|&(i, j)| i == j)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let sym = if i == j { format!("h{i}") } else { format!("E{i},{j}") };
                if c.is_one() {
                    sym
                } else {
                    format!("{c}·{sym}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Left actions of generators on the degree-`r` algebra.
///
/// With `fault` set the action of `e_1` is doubled, which breaks the
/// relations; it exists so that the verifier can be shown to detect errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluator {
    n: usize,
    r: u64,
    fault: bool,
}

impl Evaluator {
    pub fn new(n: usize, r: u64) -> Self {
        Evaluator { n, r, fault: false }
    }

    pub fn with_fault(n: usize, r: u64) -> Self {
        Evaluator { n, r, fault: true }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.n, self.r)
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement::identity(self.n, self.r)
    }

    pub fn act(&self, g: &Generator, x: &AlgebraElement) -> AlgebraElement {
        let out = mult_generator(g, x);
        let faulty = g
            .as_unit()
            .map(|(i, j)| canonicalize(i, j, self.n) == (1, 2))
            .unwrap_or(false);
        if self.fault && faulty {
            out.scale(&rat(2))
        } else {
            out
        }
    }

    /// Left action of a sum of generators with coefficient one each.
    pub fn act_sum(&self, gens: &[Generator], x: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for g in gens {
            out.add_scaled(&Rational::one(), &self.act(g, x));
        }
        out
    }

    pub fn act_lie(&self, a: &LieElement, x: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        for (g, c) in a.generators() {
            out.add_scaled(&c, &self.act(&g, x));
        }
        out
    }

    pub fn word(&self, word: &[Generator]) -> AlgebraElement {
        word.iter()
            .rev()
            .fold(self.identity(), |acc, g| self.act(g, &acc))
    }

    pub fn value(&self, a: &LieElement) -> AlgebraElement {
        self.act_lie(a, &self.identity())
    }

    /// `k_λ` for an arbitrary integer weight, zero off `Λ(n, r)`.
    pub fn idempotent(&self, weights: &[i64]) -> AlgebraElement {
        match Composition::from_weights(weights) {
            Some(lambda) if lambda.degree() == self.r => {
                self.act(&Generator::K(lambda), &self.identity())
            }
            _ => self.zero(),
        }
    }

    /// `Σ_λ (λ_i - λ_{i+1}) k_λ`.
    pub fn cartan_sum(&self, i: i64) -> AlgebraElement {
        let mut out = self.zero();
        for lambda in enumerate_compositions(self.n, self.r as i64) {
            let c = lambda.get(i) as i64 - lambda.get(i + 1) as i64;
            out.add_scaled(&rat(c), &self.idempotent(&lambda.weights()));
        }
        out
    }

    /// `[x, y]` computed through the engine as `x·y - y·x` on the values, and
    /// its symbolic counterpart. The third component is the difference between
    /// the engine value and the image of the symbolic bracket, which is zero
    /// exactly when the nesting stays generator-type.
    pub fn commutator(
        &self,
        x: &LieElement,
        x_value: &AlgebraElement,
        y: &LieElement,
        y_value: &AlgebraElement,
    ) -> (LieElement, AlgebraElement, AlgebraElement) {
        let value = self.act_lie(x, y_value) - self.act_lie(y, x_value);
        let symbolic = x.bracket(y);
        let closure = &value - &self.value(&symbolic);
        (symbolic, value, closure)
    }
}

/// A nested bracket evaluated step by step.
#[derive(Clone, Debug)]
pub struct Nest {
    pub symbolic: LieElement,
    pub value: AlgebraElement,
    pub closure: Vec<AlgebraElement>,
}

impl Nest {
    pub fn leaf(ev: &Evaluator, a: LieElement) -> Self {
        let value = ev.value(&a);
        Nest {
            symbolic: a,
            value,
            closure: Vec::new(),
        }
    }

    /// `[self, other]`.
    pub fn bracket(self, ev: &Evaluator, other: Nest) -> Nest {
        let (symbolic, value, closure) =
            ev.commutator(&self.symbolic, &self.value, &other.symbolic, &other.value);
        let mut all = self.closure;
        all.extend(other.closure);
        all.push(closure);
        Nest {
            symbolic,
            value,
            closure: all,
        }
    }

    pub fn closed(&self) -> bool {
        self.closure.iter().all(AlgebraElement::is_zero)
    }
}

/// `X_{i,m} = [[…[[E_1, E_{2,2+(m-1)n}], E_2], …], E_{i-1}]`.
pub fn nest_x(ev: &Evaluator, i: i64, m: i64) -> Nest {
    let n = ev.n();
    let inner = LieElement::unit(2, 2 + (m - 1) * n as i64, n);
    let mut x = Nest::leaf(ev, LieElement::e(1, n)).bracket(ev, Nest::leaf(ev, inner));
    for k in 2..i {
        x = x.bracket(ev, Nest::leaf(ev, LieElement::e(k, n)));
    }
    x
}

/// `Y_{i,m} = [F_{i-1}, […, [F_2, [E_{2,2-(m-1)n}, F_1]], …]]`.
pub fn nest_y(ev: &Evaluator, i: i64, m: i64) -> Nest {
    let n = ev.n();
    let inner = LieElement::unit(2, 2 - (m - 1) * n as i64, n);
    let mut y = Nest::leaf(ev, inner).bracket(ev, Nest::leaf(ev, LieElement::f(1, n)));
    for k in 2..i {
        y = Nest::leaf(ev, LieElement::f(k, n)).bracket(ev, y);
    }
    y
}

/// `[[…[E_i, E_{i+1}], …], E_n]`.
pub fn nest_right(ev: &Evaluator, i: i64) -> Nest {
    let n = ev.n();
    let mut w = Nest::leaf(ev, LieElement::e(i, n));
    for k in i + 1..=n as i64 {
        w = w.bracket(ev, Nest::leaf(ev, LieElement::e(k, n)));
    }
    w
}

/// `[F_n, […, [F_{i+1}, F_i]…]]`.
pub fn nest_left(ev: &Evaluator, i: i64) -> Nest {
    let n = ev.n();
    let mut w = Nest::leaf(ev, LieElement::f(i, n));
    for k in i + 1..=n as i64 {
        w = Nest::leaf(ev, LieElement::f(k, n)).bracket(ev, w);
    }
    w
}

fn check_nest_args(i: i64, m: i64, n: usize) -> Result<()> {
    if !(2..=n as i64).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if m <= 0 {
        return Err(Error::ZeroLoop);
    }
    Ok(())
}

/// The value of `X_{i,m}` in the degree-`r` algebra.
pub fn bracket_word_x(i: i64, m: i64, n: usize, r: u64) -> Result<AlgebraElement> {
    check_nest_args(i, m, n)?;
    Ok(nest_x(&Evaluator::new(n, r), i, m).value)
}

/// The value of `Y_{i,m}` in the degree-`r` algebra.
pub fn bracket_word_y(i: i64, m: i64, n: usize, r: u64) -> Result<AlgebraElement> {
    check_nest_args(i, m, n)?;
    Ok(nest_y(&Evaluator::new(n, r), i, m).value)
}

/// Memoized values of `f_i(m_1, …, m_t)` for one `i`.
#[derive(Clone, Debug)]
pub struct FiFamily {
    ev: Evaluator,
    i: i64,
    memo: HashMap<Vec<i64>, AlgebraElement>,
}

impl FiFamily {
    pub fn new(ev: Evaluator, i: i64) -> Self {
        FiFamily {
            ev,
            i,
            memo: HashMap::new(),
        }
    }

    fn generator(&self, m: i64) -> Generator {
        Generator::loop_unit(self.i, m, self.ev.n())
    }

    /// `f_i(m_1, …, m_t)`; the product `f_i(…)·f_i(m_t)` is taken in the
    /// commuted order `f_i(m_t)·f_i(…)`.
    pub fn get(&mut self, ms: &[i64]) -> AlgebraElement {
        if let Some(v) = self.memo.get(ms) {
            return v.clone();
        }
        let value = match ms {
            [] => self.ev.identity(),
            [m] => self.ev.act(&self.generator(*m), &self.ev.identity()),
            _ => {
                let t = ms.len();
                let (head, last) = (&ms[..t - 1], ms[t - 1]);
                let prev = self.get(head);
                let mut out = self.ev.act(&self.generator(last), &prev);
                for (j, &mj) in head.iter().enumerate() {
                    let mut sub: Vec<i64> = head.to_vec();
                    sub.remove(j);
                    sub.push(mj + last);
                    let term = self.get(&sub);
                    out = out - term;
                }
                out
            }
        };
        self.memo.insert(ms.to_vec(), value.clone());
        value
    }
}

fn check_fi_args(i: i64, ms: &[i64], n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidPeriod(n));
    }
    if !(1..=n as i64).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if ms.is_empty() {
        return Err(Error::EmptyList);
    }
    Ok(())
}

/// `f_i(m_1, …, m_t)` evaluated by the recursion.
pub fn fi(i: i64, ms: &[i64], n: usize, r: u64) -> Result<AlgebraElement> {
    check_fi_args(i, ms, n)?;
    Ok(FiFamily::new(Evaluator::new(n, r), i).get(ms))
}

/// `a_{m_1,…,m_t} = Π_{2≤k≤t} #{s ≤ k : m_s = m_k}`.
pub fn closed_form_coefficient(ms: &[i64]) -> u64 {
    (1..ms.len())
        .map(|k| ms[..=k].iter().filter(|&&m| m == ms[k]).count() as u64)
        .product()
}

/// `a_{m_1,…,m_t} · (Σ_j E_{i,i+m_j n})[0, r]`.
pub fn fi_closed_form(i: i64, ms: &[i64], n: usize, r: u64) -> Result<AlgebraElement> {
    check_fi_args(i, ms, n)?;
    if ms.contains(&0) {
        return Err(Error::ZeroLoop);
    }
    let stacked = AffineMatrix::from_entries(n, ms.iter().map(|&m| (i, i + m * n as i64, 1)));
    let base = bracket_element(&stacked, &ExponentVector::zero(n), r)?;
    Ok(base.scale(&rat(closed_form_coefficient(ms) as i64)))
}

/// All lists of length `1..=t_max` with entries in `±[1..m_max]`.
pub fn loop_lists(t_max: usize, m_max: u64) -> Vec<Vec<i64>> {
    let m_max = m_max as i64;
    let values: Vec<i64> = (-m_max..=m_max).filter(|&m| m != 0).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..t_max {
        layer = layer
            .iter()
            .flat_map(|l| {
                values.iter().map(move |&m| {
                    let mut next = l.clone();
                    next.push(m);
                    next
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    UR1,
    UR2,
    UR3,
    UR4,
    UR5,
    UR6,
    UR6p,
    UR7p,
    UR8p,
    UR9p,
}

impl RelationId {
    pub const ALL: [RelationId; 20] = [
        RelationId::R1,
        RelationId::R2,
        RelationId::R3,
        RelationId::R4,
        RelationId::R5,
        RelationId::R6,
        RelationId::R7,
        RelationId::R8,
        RelationId::R9,
        RelationId::R10,
        RelationId::UR1,
        RelationId::UR2,
        RelationId::UR3,
        RelationId::UR4,
        RelationId::UR5,
        RelationId::UR6,
        RelationId::UR6p,
        RelationId::UR7p,
        RelationId::UR8p,
        RelationId::UR9p,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::R1 => "R1",
            RelationId::R2 => "R2",
            RelationId::R3 => "R3",
            RelationId::R4 => "R4",
            RelationId::R5 => "R5",
            RelationId::R6 => "R6",
            RelationId::R7 => "R7",
            RelationId::R8 => "R8",
            RelationId::R9 => "R9",
            RelationId::R10 => "R10",
            RelationId::UR1 => "UR1",
            RelationId::UR2 => "UR2",
            RelationId::UR3 => "UR3",
            RelationId::UR4 => "UR4",
            RelationId::UR5 => "UR5",
            RelationId::UR6 => "UR6",
            RelationId::UR6p => "UR6'",
            RelationId::UR7p => "UR7'",
            RelationId::UR8p => "UR8'",
            RelationId::UR9p => "UR9'",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The shape of a relation instance; each side is built from generator
/// actions on the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    /// `k_λ k_μ = δ_{λ,μ} k_λ`.
    Orthogonal { lambda: Composition, mu: Composition },
    /// `Σ_λ k_λ · [A] = [A] = [A] · Σ_λ k_λ`.
    Unit { basis: AffineMatrix },
    /// `e_i k_λ = k_{λ+α_i} e_i`, or `f_i k_λ = k_{λ-α_i} f_i`.
    WeightShift { i: i64, weights: Vec<i64>, lowering: bool },
    /// `e_i f_j - f_j e_i = δ_{i,j} Σ_λ (λ_i - λ_{i+1}) k_λ`, or with
    /// `H_j - H_{j+1}` on the right when `idempotents` is false.
    EfCommutator { i: i64, j: i64, idempotents: bool },
    /// `Σ_{a+b=1-c_{i,j}} (-1)^a C(1-c_{i,j}, a) x_i^a x_j x_i^b = 0`.
    Serre { i: i64, j: i64, lowering: bool },
    /// The nested-bracket relations for the loops `E_{1,1±mn} - E_{i,i±mn}`.
    LoopNest { i: i64, m: i64, lowering: bool },
    /// `a·b = b·a` for two sums of generators.
    Commute { a: Vec<Generator>, b: Vec<Generator> },
    /// `f_i(m_1, …, m_t) k_λ = 0` for `λ_i < t`.
    Vanish { i: i64, ms: Vec<i64>, lambda: Composition },
    /// `H_i E_j - E_j H_i = (δ_{i,j} - δ_{i,j+1}) E_j` and the `F_j` version.
    CartanAction { i: i64, j: i64, lowering: bool },
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join("+")
}

fn list(items: &[i64]) -> String {
    let parts: Vec<String> = items.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Orthogonal { lambda, mu } => write!(f, "lambda={lambda} mu={mu}"),
            Instance::Unit { basis } => write!(f, "A={basis}"),
            Instance::WeightShift { i, weights, lowering } => {
                write!(f, "{}{i} lambda={}", if *lowering { "f" } else { "e" }, list(weights))
            }
            Instance::EfCommutator { i, j, .. } => write!(f, "i={i} j={j}"),
            Instance::Serre { i, j, lowering } => {
                write!(f, "{} i={i} j={j}", if *lowering { "f" } else { "e" })
            }
            Instance::LoopNest { i, m, .. } => write!(f, "i={i} m={m}"),
            Instance::Commute { a, b } => write!(f, "{} with {}", join(a), join(b)),
            Instance::Vanish { i, ms, lambda } => {
                write!(f, "i={i} m={} lambda={lambda}", list(ms))
            }
            Instance::CartanAction { i, j, lowering } => {
                write!(f, "h{i} with {}{j}", if *lowering { "f" } else { "e" })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub id: RelationId,
    pub instance: Instance,
    /// Set for the `m = 1` nested-bracket instances, where the inner unit
    /// `E_{2,2}` is read as `h_2`.
    pub flagged: bool,
}

/// Result of checking one instance.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
    /// Nonzero engine-vs-symbolic differences met while nesting brackets.
    pub closure: Vec<AlgebraElement>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs && self.closure.iter().all(AlgebraElement::is_zero)
    }

    /// `lhs - rhs`, or the first closure defect when the sides agree.
    pub fn residual(&self) -> AlgebraElement {
        let diff = &self.lhs - &self.rhs;
        if !diff.is_zero() {
            return diff;
        }
        self.closure
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or(diff)
    }
}

fn delta(a: i64, b: i64, n: usize) -> i64 {
    (residue(a, n) == residue(b, n)) as i64
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, s| acc * (n - s) / (s + 1))
}

fn serre(ev: &Evaluator, i: i64, j: i64, lowering: bool) -> AlgebraElement {
    let n = ev.n();
    let d = 1 - cartan_entry(i, j, n);
    let gen = |k: i64| if lowering { Generator::F(k) } else { Generator::E(k) };
    let mut out = ev.zero();
    for a in 0..=d {
        let mut word = vec![gen(i); a as usize];
        word.push(gen(j));
        word.extend(std::iter::repeat_n(gen(i), (d - a) as usize));
        let sign = if a % 2 == 0 { 1 } else { -1 };
        out.add_scaled(&rat(sign * binomial(d, a)), &ev.word(&word));
    }
    out
}

/// Evaluates both sides of an instance with a fresh `f_i` cache.
pub fn check_relation(ev: &Evaluator, inst: &RelationInstance) -> Outcome {
    let mut cache = HashMap::new();
    check_with_cache(ev, inst, &mut cache)
}

fn check_with_cache(
    ev: &Evaluator,
    inst: &RelationInstance,
    families: &mut HashMap<i64, FiFamily>,
) -> Outcome {
    let n = ev.n();
    let plain = |lhs, rhs| Outcome {
        lhs,
        rhs,
        closure: Vec::new(),
    };
    match &inst.instance {
        Instance::Orthogonal { lambda, mu } => {
            let lhs = ev.act(&Generator::K(lambda.clone()), &ev.idempotent(&mu.weights()));
            let rhs = if lambda == mu {
                ev.idempotent(&lambda.weights())
            } else {
                ev.zero()
            };
            plain(lhs, rhs)
        }
        Instance::Unit { basis } => {
            let x = AlgebraElement::basis(basis.clone());
            let mut left = ev.zero();
            let mut right = ev.zero();
            for lambda in enumerate_compositions(n, ev.r() as i64) {
                left = left + ev.act(&Generator::K(lambda.clone()), &x);
                right = right + mult_by_diag(&x, &lambda);
            }
            Outcome {
                lhs: left,
                rhs: x.clone(),
                closure: vec![right - x],
            }
        }
        Instance::WeightShift { i, weights, lowering } => {
            let (g, sign) = if *lowering {
                (Generator::F(*i), -1)
            } else {
                (Generator::E(*i), 1)
            };
            let lhs = ev.act(&g, &ev.idempotent(weights));
            let mut shifted = weights.clone();
            shifted[residue(*i, n) - 1] += sign;
            shifted[residue(*i + 1, n) - 1] -= sign;
            let k = ev.idempotent(&shifted);
            let rhs = match Composition::from_weights(&shifted) {
                Some(lambda) if !k.is_zero() => ev.act(&Generator::K(lambda), &ev.word(&[g])),
                _ => ev.zero(),
            };
            plain(lhs, rhs)
        }
        Instance::EfCommutator { i, j, idempotents } => {
            let lhs = ev.word(&[Generator::E(*i), Generator::F(*j)])
                - ev.word(&[Generator::F(*j), Generator::E(*i)]);
            let rhs = if delta(*i, *j, n) == 0 {
                ev.zero()
            } else if *idempotents {
                ev.cartan_sum(*j)
            } else {
                let next = residue(*j + 1, n) as i64;
                ev.word(&[Generator::H(*j)]) - ev.word(&[Generator::H(next)])
            };
            plain(lhs, rhs)
        }
        Instance::Serre { i, j, lowering } => plain(serre(ev, *i, *j, *lowering), ev.zero()),
        Instance::LoopNest { i, m, lowering } => {
            let (lhs, rhs_m) = if *lowering {
                (nest_left(ev, *i).bracket(ev, nest_y(ev, *i, *m)), -*m)
            } else {
                (nest_x(ev, *i, *m).bracket(ev, nest_right(ev, *i)), *m)
            };
            let mut target = LieElement::unit(1, 1 + rhs_m * n as i64, n);
            target.add_term(*i, *i + rhs_m * n as i64, -Rational::one());
            Outcome {
                lhs: lhs.value,
                rhs: ev.value(&target),
                closure: lhs.closure,
            }
        }
        Instance::Commute { a, b } => {
            let lhs = ev.act_sum(a, &ev.act_sum(b, &ev.identity()));
            let rhs = ev.act_sum(b, &ev.act_sum(a, &ev.identity()));
            plain(lhs, rhs)
        }
        Instance::Vanish { i, ms, lambda } => {
            let family = families
                .entry(*i)
                .or_insert_with(|| FiFamily::new(*ev, *i));
            plain(mult_by_diag(&family.get(ms), lambda), ev.zero())
        }
        Instance::CartanAction { i, j, lowering } => {
            let (g, c) = if *lowering {
                (Generator::F(*j), delta(*i, *j + 1, n) - delta(*i, *j, n))
            } else {
                (Generator::E(*j), delta(*i, *j, n) - delta(*i, *j + 1, n))
            };
            let h = Generator::H(*i);
            let lhs = ev.word(&[h.clone(), g.clone()]) - ev.word(&[g.clone(), h]);
            let rhs = ev.word(&[g]).scale(&rat(c));
            plain(lhs, rhs)
        }
    }
}

/// Sweep bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub mmax: u64,
    pub tmax: usize,
    pub band: u64,
}

impl Bounds {
    pub fn standard(n: usize) -> Self {
        Bounds {
            mmax: 2,
            tmax: 3,
            band: 2 * n as u64,
        }
    }
}

fn z_sum(s: i64, n: usize) -> Vec<Generator> {
    (1..=n as i64).map(|h| Generator::loop_unit(h, s, n)).collect()
}

/// Every relation instance within the bounds, in a fixed order.
pub fn relation_instances(n: usize, r: u64, bounds: &Bounds) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let mut push = |id, instance, flagged| {
        out.push(RelationInstance {
            id,
            instance,
            flagged,
        })
    };
    let idx: Vec<i64> = (1..=n as i64).collect();
    let lambdas = enumerate_compositions(n, r as i64);
    let mmax = bounds.mmax as i64;
    let loops: Vec<i64> = (-mmax..=mmax).filter(|&m| m != 0).collect();
    let e = Generator::E;
    let f = Generator::F;
    let h = Generator::H;
    let lp = |i, m| Generator::loop_unit(i, m, n);

    for lambda in &lambdas {
        for mu in &lambdas {
            push(
                RelationId::R1,
                Instance::Orthogonal {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                },
                false,
            );
        }
    }
    for basis in enumerate_theta(n, r, bounds.band) {
        push(RelationId::R1, Instance::Unit { basis }, false);
    }

    for &i in &idx {
        for lowering in [false, true] {
            let mut weights = BTreeSet::new();
            for lambda in &lambdas {
                let w = lambda.weights();
                weights.insert(w.clone());
                for sign in [1, -1] {
                    let mut v = w.clone();
                    v[residue(i, n) - 1] += sign;
                    v[residue(i + 1, n) - 1] -= sign;
                    weights.insert(v);
                }
            }
            for weights in weights {
                push(
                    RelationId::R2,
                    Instance::WeightShift {
                        i,
                        weights,
                        lowering,
                    },
                    false,
                );
            }
        }
    }

    for &i in &idx {
        for &j in &idx {
            push(
                RelationId::R3,
                Instance::EfCommutator {
                    i,
                    j,
                    idempotents: true,
                },
                false,
            );
        }
    }
    for (id, lowering) in [(RelationId::R4, false), (RelationId::R5, true)] {
        for &i in &idx {
            for &j in idx.iter().filter(|&&j| j != i) {
                push(id, Instance::Serre { i, j, lowering }, false);
            }
        }
    }
    for (id, lowering) in [(RelationId::R6, false), (RelationId::R7, true)] {
        for i in 2..=n as i64 {
            for m in 1..=mmax {
                push(id, Instance::LoopNest { i, m, lowering }, m == 1);
            }
        }
    }
    for &i in &idx {
        for &m in &loops {
            for lambda in &lambdas {
                push(
                    RelationId::R8,
                    Instance::Commute {
                        a: vec![lp(i, m)],
                        b: vec![Generator::K(lambda.clone())],
                    },
                    false,
                );
            }
            for &j in &idx {
                for &l in &loops {
                    push(
                        RelationId::R8,
                        Instance::Commute {
                            a: vec![lp(i, m)],
                            b: vec![lp(j, l)],
                        },
                        false,
                    );
                }
            }
        }
    }
    for id in [RelationId::R9, RelationId::UR7p] {
        for &m in &loops {
            for &j in &idx {
                for g in [e(j), f(j)] {
                    push(
                        id,
                        Instance::Commute {
                            a: z_sum(m, n),
                            b: vec![g],
                        },
                        false,
                    );
                }
            }
        }
    }
    for &i in &idx {
        for ms in loop_lists(bounds.tmax, bounds.mmax) {
            for lambda in lambdas.iter().filter(|l| (l.get(i) as usize) < ms.len()) {
                push(
                    RelationId::R10,
                    Instance::Vanish {
                        i,
                        ms: ms.clone(),
                        lambda: lambda.clone(),
                    },
                    false,
                );
            }
        }
    }

    for &i in &idx {
        for &j in &idx {
            push(
                RelationId::UR1,
                Instance::Commute {
                    a: vec![h(i)],
                    b: vec![h(j)],
                },
                false,
            );
        }
    }
    for &i in &idx {
        for &j in &idx {
            for lowering in [false, true] {
                push(RelationId::UR2, Instance::CartanAction { i, j, lowering }, false);
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            push(
                RelationId::UR3,
                Instance::EfCommutator {
                    i,
                    j,
                    idempotents: false,
                },
                false,
            );
        }
    }
    for (id, lowering) in [(RelationId::UR4, false), (RelationId::UR5, true)] {
        for &i in &idx {
            for &j in idx.iter().filter(|&&j| j != i) {
                push(id, Instance::Serre { i, j, lowering }, false);
            }
        }
    }
    for &s in &loops {
        for &i in &idx {
            for g in [e(i), f(i), h(i)] {
                push(
                    RelationId::UR6,
                    Instance::Commute {
                        a: vec![g],
                        b: z_sum(s, n),
                    },
                    false,
                );
            }
        }
        for &t in &loops {
            push(
                RelationId::UR6,
                Instance::Commute {
                    a: z_sum(s, n),
                    b: z_sum(t, n),
                },
                false,
            );
        }
    }
    for &i in &idx {
        for &m in &loops {
            for &j in &idx {
                push(
                    RelationId::UR6p,
                    Instance::Commute {
                        a: vec![lp(i, m)],
                        b: vec![h(j)],
                    },
                    false,
                );
                for &l in &loops {
                    push(
                        RelationId::UR6p,
                        Instance::Commute {
                            a: vec![lp(i, m)],
                            b: vec![lp(j, l)],
                        },
                        false,
                    );
                }
            }
        }
    }
    for (id, lowering) in [(RelationId::UR8p, false), (RelationId::UR9p, true)] {
        for i in 2..=n as i64 {
            for m in 1..=mmax {
                push(id, Instance::LoopNest { i, m, lowering }, m == 1);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: String,
    pub residual: AlgebraElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    /// Instances resting on the `E_{2,2} = h_2` reading.
    pub flagged: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub r: u64,
    pub bounds: Bounds,
    pub relations: Vec<RelationReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failure_count(&self) -> usize {
        self.relations.iter().map(|rel| rel.failures.len()).sum()
    }

    pub fn instance_count(&self) -> usize {
        self.relations.iter().map(|rel| rel.instances).sum()
    }
}

/// Checks every instance from [`relation_instances`].
pub fn verify_with(ev: &Evaluator, bounds: &Bounds) -> VerifyReport {
    let mut by_id: BTreeMap<RelationId, RelationReport> = RelationId::ALL
        .iter()
        .map(|&id| {
            (
                id,
                RelationReport {
                    id: id.name().to_string(),
                    instances: 0,
                    failures: Vec::new(),
                    flagged: Vec::new(),
                },
            )
        })
        .collect();
    let mut families = HashMap::new();
    for inst in relation_instances(ev.n(), ev.r(), bounds) {
        let outcome = check_with_cache(ev, &inst, &mut families);
        let entry = by_id.get_mut(&inst.id).expect("known relation id");
        entry.instances += 1;
        if inst.flagged {
            entry.flagged.push(inst.instance.to_string());
        }
        if !outcome.passed() {
            entry.failures.push(Failure {
                instance: inst.instance.to_string(),
                residual: outcome.residual(),
            });
        }
    }
    let relations: Vec<RelationReport> = by_id.into_values().collect();
    let passed = relations.iter().all(|rel| rel.failures.is_empty());
    VerifyReport {
        n: ev.n(),
        r: ev.r(),
        bounds: *bounds,
        relations,
        passed,
    }
}

pub fn verify_presentation(n: usize, r: u64, mmax: u64, tmax: usize, band: u64) -> VerifyReport {
    verify_with(&Evaluator::new(n, r), &Bounds { mmax, tmax, band })
}

/// Outcome of a sweep that compares two computations per instance.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub r: u64,
    pub instances: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl SweepReport {
    fn new(n: usize, r: u64) -> Self {
        SweepReport {
            n,
            r,
            instances: 0,
            failures: Vec::new(),
            passed: true,
        }
    }

    fn record(&mut self, label: impl FnOnce() -> String, residual: AlgebraElement) {
        self.instances += 1;
        if !residual.is_zero() {
            self.passed = false;
            self.failures.push(Failure {
                instance: label(),
                residual,
            });
        }
    }
}

/// Recursion against closed form for the given `i` values and all loop
/// lists up to `tmax` with entries in `±[1..mmax]`.
pub fn closed_form_sweep(n: usize, r: u64, rows: &[i64], tmax: usize, mmax: u64) -> SweepReport {
    let mut report = SweepReport::new(n, r);
    let lists = loop_lists(tmax, mmax);
    for &i in rows {
        let mut family = FiFamily::new(Evaluator::new(n, r), i);
        for ms in &lists {
            let closed = fi_closed_form(i, ms, n, r).expect("nonzero loop list");
            report.record(|| format!("i={i} m={}", list(ms)), family.get(ms) - closed);
        }
    }
    report
}

/// `f_i(m_1, …, m_t) k_λ = 0` for all `λ_i < t`, for the given rows and lists.
pub fn vanishing_sweep(n: usize, r: u64, rows: &[i64], tmax: usize, mmax: u64) -> SweepReport {
    let mut report = SweepReport::new(n, r);
    let lambdas = enumerate_compositions(n, r as i64);
    for &i in rows {
        let mut family = FiFamily::new(Evaluator::new(n, r), i);
        for ms in loop_lists(tmax, mmax) {
            let value = family.get(&ms);
            for lambda in lambdas.iter().filter(|l| (l.get(i) as usize) < ms.len()) {
                report.record(
                    || format!("i={i} m={} lambda={lambda}", list(&ms)),
                    mult_by_diag(&value, lambda),
                );
            }
        }
    }
    report
}

/// `e_{i,j} e_{k,l} - e_{k,l} e_{i,j}` through the engine minus the image of
/// the bracket formula.
pub fn commutator_law_residual(ev: &Evaluator, i: i64, j: i64, k: i64, l: i64) -> AlgebraElement {
    let n = ev.n();
    let x = LieElement::unit(i, j, n);
    let y = LieElement::unit(k, l, n);
    let (_, _, closure) = ev.commutator(&x, &ev.value(&x), &y, &ev.value(&y));
    closure
}

/// The bracket formula for all `i, k ∈ [1..n]` and `|j - i|, |l - k| ≤ window`.
pub fn commutator_law_sweep(n: usize, r: u64, window: i64) -> SweepReport {
    let ev = Evaluator::new(n, r);
    let mut report = SweepReport::new(n, r);
    for i in 1..=n as i64 {
        for j in i - window..=i + window {
            for k in 1..=n as i64 {
                for l in k - window..=k + window {
                    report.record(
                        || format!("[E{i},{j}, E{k},{l}]"),
                        commutator_law_residual(&ev, i, j, k, l),
                    );
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::idempotent;

    fn comp(p: &[u64]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn basis(n: usize, e: &[(i64, i64, u64)]) -> AlgebraElement {
        AlgebraElement::basis(AffineMatrix::from_entries(n, e.iter().copied()))
    }

    #[test]
    fn cartan_matrix_entries() {
        assert_eq!(cartan_entry(1, 2, 2), -2);
        assert_eq!(cartan_entry(2, 1, 2), -2);
        assert_eq!(cartan_entry(1, 3, 3), -1);
        assert_eq!(cartan_entry(1, 3, 4), 0);
        assert_eq!(cartan_entry(4, 1, 4), -1);
        assert_eq!(cartan_entry(2, 2, 3), 2);
    }

    #[test]
    fn lie_bracket_examples() {
        let b = LieElement::unit(1, 2, 3).bracket(&LieElement::unit(2, 3, 3));
        assert_eq!(b, LieElement::unit(1, 3, 3));
        let b = LieElement::unit(1, 2, 2).bracket(&LieElement::unit(2, 3, 2));
        let mut expected = LieElement::unit(1, 3, 2);
        expected.add_term(2, 4, -Rational::one());
        assert_eq!(b, expected);
    }

    #[test]
    fn fi_examples() {
        assert_eq!(
            fi(1, &[1], 2, 2).unwrap(),
            basis(2, &[(1, 3, 1), (1, 1, 1)]) + basis(2, &[(1, 3, 1), (2, 2, 1)])
        );
        assert_eq!(
            fi(1, &[1, 1], 2, 2).unwrap(),
            basis(2, &[(1, 3, 2)]).scale(&rat(2))
        );
        assert!(fi(1, &[1, -1], 2, 1).unwrap().is_zero());
        assert_eq!(fi(1, &[], 2, 1), Err(Error::EmptyList));
        assert!(fi(3, &[1], 2, 1).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            fi_closed_form(1, &[1, 1], 2, 2).unwrap(),
            basis(2, &[(1, 3, 2)]).scale(&rat(2))
        );
        assert_eq!(fi_closed_form(1, &[1], 2, 3).unwrap(), fi(1, &[1], 2, 3).unwrap());
        let stacked = AffineMatrix::from_entries(2, [(1, 3, 1), (1, 5, 1)]);
        assert_eq!(
            fi_closed_form(1, &[1, 2], 2, 3).unwrap(),
            bracket_element(&stacked, &ExponentVector::zero(2), 3).unwrap()
        );
        assert_eq!(closed_form_coefficient(&[1, 2, 1, 1]), 6);
        assert_eq!(fi_closed_form(1, &[0], 2, 1), Err(Error::ZeroLoop));
    }

    #[test]
    fn loop_lists_counts() {
        assert_eq!(loop_lists(1, 2), vec![vec![-2], vec![-1], vec![1], vec![2]]);
        assert_eq!(loop_lists(3, 2).len(), 4 + 16 + 64);
    }

    #[test]
    fn nested_brackets_match_units() {
        let ev = Evaluator::new(3, 2);
        for m in 1..=2 {
            let x = nest_x(&ev, 3, m);
            assert!(x.closed());
            assert_eq!(x.symbolic, LieElement::unit(1, 3 + (m - 1) * 3, 3));
            let y = nest_y(&ev, 3, m);
            assert!(y.closed());
            assert_eq!(y.symbolic, LieElement::unit(3, 1 - (m - 1) * 3, 3));
        }
        assert_eq!(nest_right(&ev, 2).symbolic, LieElement::unit(2, 4, 3));
        assert_eq!(nest_left(&ev, 2).symbolic, LieElement::unit(4, 2, 3));
        assert!(bracket_word_x(1, 1, 3, 2).is_err());
        assert_eq!(
            bracket_word_x(2, 1, 2, 1).unwrap(),
            basis(2, &[(1, 2, 1)])
        );
    }

    #[test]
    fn check_relation_examples() {
        let ev = Evaluator::new(2, 1);
        let r3 = RelationInstance {
            id: RelationId::R3,
            instance: Instance::EfCommutator {
                i: 1,
                j: 1,
                idempotents: true,
            },
            flagged: false,
        };
        let out = check_relation(&ev, &r3);
        assert!(out.passed());
        assert_eq!(out.rhs, idempotent(&comp(&[1, 0])) - idempotent(&comp(&[0, 1])));

        let r10 = RelationInstance {
            id: RelationId::R10,
            instance: Instance::Vanish {
                i: 1,
                ms: vec![1, -1],
                lambda: comp(&[1, 0]),
            },
            flagged: false,
        };
        assert!(check_relation(&ev, &r10).passed());

        let ev = Evaluator::new(2, 2);
        for lambda in enumerate_compositions(2, 2) {
            for mu in enumerate_compositions(2, 2) {
                let inst = RelationInstance {
                    id: RelationId::R1,
                    instance: Instance::Orthogonal {
                        lambda: lambda.clone(),
                        mu,
                    },
                    flagged: false,
                };
                assert!(check_relation(&ev, &inst).passed());
            }
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for (n, r) in [(2, 1), (2, 2), (3, 1)] {
            let report = verify_presentation(n, r, 2, 3, 2 * n as u64);
            assert!(report.passed, "{n} {r}: {:?}", report.relations);
            assert!(report.relations.iter().all(|rel| rel.instances > 0));
        }
    }

    #[test]
    fn flagged_instances_are_the_m1_nests() {
        let report = verify_presentation(2, 1, 2, 2, 2);
        let r6 = report.relations.iter().find(|rel| rel.id == "R6").unwrap();
        assert_eq!(r6.instances, 2);
        assert_eq!(r6.flagged, vec!["i=2 m=1".to_string()]);
    }

    #[test]
    fn fault_is_detected() {
        let report = verify_with(&Evaluator::with_fault(2, 1), &Bounds::standard(2));
        assert!(!report.passed);
        let r3 = report.relations.iter().find(|rel| rel.id == "R3").unwrap();
        assert!(!r3.failures.is_empty());
    }

    #[test]
    fn commutator_law_small_window() {
        let report = commutator_law_sweep(2, 2, 2);
        assert!(report.passed, "{:?}", report.failures);
        assert_eq!(report.instances, 2 * 5 * 2 * 5);
    }
}
