//! Polynomials in real coordinates `x₀..x_{d−1}` with hypercomplex coefficients
//! acting on the left of the monomials, and the first-order operators built
//! from them (partials, Dirac, Weyl, Laplacian).

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::algebra::{AlgebraElement, AlgebraKind, Blade};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

pub use text::{format_poly, parse_poly};

/// Exponent multi-index `α ∈ ℕ^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(SmallVec<[u8; 16]>);

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent(SmallVec::from_elem(0, nvars))
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.0[var] = 1;
        e
    }

    pub fn from_slice(powers: &[u8]) -> Self {
        Exponent(SmallVec::from_slice(powers))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn powers(&self) -> &[u8] {
        &self.0
    }

    pub fn power(&self, var: usize) -> u8 {
        self.0[var]
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_power(&self, var: usize, power: u8) -> Exponent {
        let mut e = self.clone();
        e.0[var] = power;
        e
    }

    /// Bitmask of the variables with odd power.
    pub fn parity_mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a % 2 == 1)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// `α!`.
    pub fn factorial(&self) -> Rational {
        let mut acc = Rational::one();
        for &a in self.0.iter() {
            for j in 2..=a as i64 {
                acc *= int(j);
            }
        }
        acc
    }

    /// Canonical display order: higher total degree first, then
    /// lexicographically larger exponent vectors first.
    pub fn display_cmp(&self, other: &Exponent) -> std::cmp::Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

/// All exponents of total degree `degree` supported on `vars`, in display order.
pub fn exponents_of_degree(nvars: usize, vars: &[usize], degree: usize) -> Vec<Exponent> {
    fn rec(vars: &[usize], remaining: usize, current: &mut Exponent, out: &mut Vec<Exponent>) {
        match vars.split_first() {
            None => {
                if remaining == 0 {
                    out.push(current.clone());
                }
            }
            Some((&v, rest)) => {
                for p in (0..=remaining).rev() {
                    current.0[v] = p as u8;
                    rec(rest, remaining - p, current, out);
                }
                current.0[v] = 0;
            }
        }
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    rec(&sorted, degree, &mut Exponent::zero(nvars), &mut out);
    out
}

/// First-order (and Laplace) operators on [`HPolynomial`]. Generators act on
/// the left of the coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OperatorSpec {
    Partial(usize),
    /// `Σ e_b ∂_v` over the `(v, b)` pairs.
    Dirac(Vec<(usize, Blade)>),
    /// `∂_real + Σ e_b ∂_v`.
    Weyl { real: usize, pairs: Vec<(usize, Blade)> },
    /// `∂_real − Σ e_b ∂_v`.
    WeylConjugate { real: usize, pairs: Vec<(usize, Blade)> },
    /// `Σ ∂_v²` over the listed variables.
    Laplacian(Vec<usize>),
}

impl OperatorSpec {
    pub fn laplacian_all(nvars: usize) -> Self {
        OperatorSpec::Laplacian((0..nvars).collect())
    }

    /// Variables the operator differentiates in.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = match self {
            OperatorSpec::Partial(i) => vec![*i],
            OperatorSpec::Dirac(pairs) => pairs.iter().map(|p| p.0).collect(),
            OperatorSpec::Weyl { real, pairs } | OperatorSpec::WeylConjugate { real, pairs } => {
                std::iter::once(*real).chain(pairs.iter().map(|p| p.0)).collect()
            }
            OperatorSpec::Laplacian(vars) => vars.clone(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Order of the operator (1, or 2 for the Laplacian).
    pub fn order(&self) -> usize {
        match self {
            OperatorSpec::Laplacian(_) => 2,
            _ => 1,
        }
    }
}

/// Multivariate polynomial with [`AlgebraElement`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolynomial {
    kind: AlgebraKind,
    nvars: usize,
    terms: BTreeMap<Exponent, AlgebraElement>,
}

impl HPolynomial {
    pub fn zero(kind: AlgebraKind, nvars: usize) -> Self {
        HPolynomial { kind, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, value: AlgebraElement) -> Self {
        Self::monomial(Exponent::zero(nvars), value)
    }

    pub fn monomial(exponent: Exponent, coeff: AlgebraElement) -> Self {
        let mut p = Self::zero(coeff.kind(), exponent.nvars());
        p.add_term(exponent, &coeff);
        p
    }

    /// The coordinate `x_var` with unit coefficient.
    pub fn variable(kind: AlgebraKind, nvars: usize, var: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, var), AlgebraElement::one(kind))
    }

    /// `Σ x_v e_b` over the pairs.
    pub fn vector_variable(kind: AlgebraKind, nvars: usize, pairs: &[(usize, Blade)]) -> Self {
        let mut p = Self::zero(kind, nvars);
        for &(v, b) in pairs {
            p.add_term(Exponent::unit(nvars, v), &AlgebraElement::basis(kind, b));
        }
        p
    }

    /// `Σ x_v²` over `vars` as a scalar-valued polynomial.
    pub fn squared_norm(kind: AlgebraKind, nvars: usize, vars: &[usize]) -> Self {
        let mut p = Self::zero(kind, nvars);
        for &v in vars {
            let mut e = Exponent::zero(nvars);
            e.0[v] = 2;
            p.add_term(e, &AlgebraElement::one(kind));
        }
        p
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &AlgebraElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &Exponent) -> AlgebraElement {
        self.terms.get(exponent).cloned().unwrap_or_else(|| AlgebraElement::zero(self.kind))
    }

    /// Highest total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// True for the zero polynomial and for polynomials whose terms all have degree `k`.
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|e| e.degree() == k)
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|e| e.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn uses_variable(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.power(var) > 0)
    }

    /// True when every coefficient is real.
    pub fn is_scalar_valued(&self) -> bool {
        self.terms.values().all(|c| c.iter().all(|(b, _)| b.is_scalar()))
    }

    pub(crate) fn add_term(&mut self, exponent: Exponent, coeff: &AlgebraElement) {
        debug_assert_eq!(exponent.nvars(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponent) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn add_blade_term(&mut self, exponent: Exponent, blade: Blade, value: Rational) {
        if value.is_zero() {
            return;
        }
        let kind = self.kind;
        let entry = self.terms.entry(exponent.clone()).or_insert_with(|| AlgebraElement::zero(kind));
        entry.add_term(blade, value);
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &HPolynomial, factor: &Rational) {
        assert_eq!(self.kind, other.kind, "algebra mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if factor.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &c.scale(factor));
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.kind, self.nvars);
        }
        HPolynomial {
            kind: self.kind,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scale(factor))).collect(),
        }
    }

    /// `a · p`, the constant multiplying every coefficient from the left.
    pub fn left_mul(&self, a: &AlgebraElement) -> Self {
        let mut out = Self::zero(self.kind, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    /// `p · a`.
    pub fn right_mul(&self, a: &AlgebraElement) -> Self {
        let mut out = Self::zero(self.kind, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * a));
        }
        out
    }

    /// Product with coefficients multiplied in the order `self · other`.
    pub fn mul(&self, other: &HPolynomial) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch { left: self.kind, right: other.kind });
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        let mut out = Self::zero(self.kind, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), &(ca * cb));
            }
        }
        Ok(out)
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange { index: var, nvars: self.nvars });
        }
        Ok(())
    }

    pub fn partial(&self, var: usize) -> Result<Self> {
        self.check_var(var)?;
        Ok(self.partial_unchecked(var))
    }

    fn partial_unchecked(&self, var: usize) -> Self {
        let mut out = Self::zero(self.kind, self.nvars);
        for (e, c) in &self.terms {
            let p = e.power(var);
            if p == 0 {
                continue;
            }
            out.terms.insert(e.with_power(var, p - 1), c.scale(&int(p as i64)));
        }
        out
    }

    /// Directional derivative `Σ ζ_i ∂_i`.
    pub fn directional(&self, direction: &[Rational]) -> Result<Self> {
        if direction.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: direction.len() });
        }
        let mut out = Self::zero(self.kind, self.nvars);
        for (i, z) in direction.iter().enumerate() {
            if !z.is_zero() {
                out.add_assign_scaled(&self.partial_unchecked(i), z);
            }
        }
        Ok(out)
    }

    fn dirac_part(&self, pairs: &[(usize, Blade)], negate: bool) -> Self {
        let mut out = Self::zero(self.kind, self.nvars);
        for &(v, b) in pairs {
            for (e, c) in &self.terms {
                let p = e.power(v);
                if p == 0 {
                    continue;
                }
                let coeff = c.left_mul_blade(b, negate).scale(&int(p as i64));
                out.add_term(e.with_power(v, p - 1), &coeff);
            }
        }
        out
    }

    pub fn differentiate(&self, op: &OperatorSpec) -> Result<Self> {
        for v in op.variables() {
            self.check_var(v)?;
        }
        for (_, b) in match op {
            OperatorSpec::Dirac(p) => p.as_slice(),
            OperatorSpec::Weyl { pairs, .. } | OperatorSpec::WeylConjugate { pairs, .. } => pairs.as_slice(),
            _ => &[],
        } {
            if !self.kind.contains(*b) {
                return Err(Error::UnknownBlade { index: b.0 as usize, kind: self.kind });
            }
        }
        Ok(match op {
            OperatorSpec::Partial(i) => self.partial_unchecked(*i),
            OperatorSpec::Dirac(pairs) => self.dirac_part(pairs, false),
            OperatorSpec::Weyl { real, pairs } => &self.partial_unchecked(*real) + &self.dirac_part(pairs, false),
            OperatorSpec::WeylConjugate { real, pairs } => {
                &self.partial_unchecked(*real) + &self.dirac_part(pairs, true)
            }
            OperatorSpec::Laplacian(vars) => {
                let mut out = Self::zero(self.kind, self.nvars);
                for &v in vars {
                    out = &out + &self.partial_unchecked(v).partial_unchecked(v);
                }
                out
            }
        })
    }

    /// Exact substitution of a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<AlgebraElement> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        let mut out = AlgebraElement::zero(self.kind);
        let max_power = self.terms.keys().flat_map(|e| e.powers().iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|x| {
                let mut v = Vec::with_capacity(max_power + 1);
                v.push(Rational::one());
                for j in 1..=max_power {
                    let next = &v[j - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        for (e, c) in &self.terms {
            let mut m = Rational::one();
            for (i, &a) in e.powers().iter().enumerate() {
                if a > 0 {
                    m *= &powers[i][a as usize];
                }
            }
            if !m.is_zero() {
                out.add_assign_scaled(c, &m);
            }
        }
        Ok(out)
    }

    /// Sets `x_var = 0`.
    pub fn restrict_to_zero(&self, var: usize) -> Result<Self> {
        self.check_var(var)?;
        Ok(HPolynomial {
            kind: self.kind,
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.power(var) == 0).map(|(e, c)| (e.clone(), c.clone())).collect(),
        })
    }

    /// Splits into real-valued components, one scalar polynomial per blade.
    pub fn components(&self) -> BTreeMap<Blade, BTreeMap<Exponent, Rational>> {
        let mut out: BTreeMap<Blade, BTreeMap<Exponent, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            for (b, v) in c.iter() {
                out.entry(b).or_default().insert(e.clone(), v.clone());
            }
        }
        out
    }

    /// `Σ_A p_A²` as a scalar-valued polynomial (pointwise `|p(x)|²`).
    pub fn norm_sq_poly(&self) -> Self {
        let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for comp in self.components().values() {
            let items: Vec<(&Exponent, &Rational)> = comp.iter().collect();
            for (i, (ea, ca)) in items.iter().enumerate() {
                *acc.entry(ea.add(ea)).or_insert_with(Rational::zero) += *ca * *ca;
                for (eb, cb) in &items[i + 1..] {
                    *acc.entry(ea.add(eb)).or_insert_with(Rational::zero) += (*ca * *cb) * int(2);
                }
            }
        }
        let mut out = Self::zero(self.kind, self.nvars);
        for (e, v) in acc {
            out.add_term(e, &AlgebraElement::scalar(self.kind, v));
        }
        out
    }

    /// Scalar value of a real-valued polynomial at a point.
    pub fn evaluate_scalar(&self, point: &[Rational]) -> Result<Rational> {
        Ok(self.evaluate(point)?.scalar_part())
    }

    /// `x̲ · p` for the vector variable `x̲ = Σ x_v e_b`.
    pub fn vector_left_mul(&self, pairs: &[(usize, Blade)]) -> Self {
        let mut out = Self::zero(self.kind, self.nvars);
        for &(v, b) in pairs {
            for (e, c) in &self.terms {
                let p = e.power(v);
                out.add_term(e.with_power(v, p + 1), &c.left_mul_blade(b, false));
            }
        }
        out
    }
}

/// `x̲ˢ · p` with `x̲ = Σ x_v e_b` over `pairs`. Even powers of `x̲` are the real
/// polynomials `(−|x̲|²)^{s/2}`; an odd power multiplies `x̲ · p` first, so the
/// grouping is well defined in 𝕆 as well.
pub fn xu_power_multiply(s: usize, p: &HPolynomial, pairs: &[(usize, Blade)]) -> HPolynomial {
    let vars: Vec<usize> = pairs.iter().map(|q| q.0).collect();
    let mut out = if s % 2 == 1 { p.vector_left_mul(pairs) } else { p.clone() };
    let minus_norm = HPolynomial::squared_norm(p.kind(), p.nvars(), &vars).scale(&int(-1));
    for _ in 0..s / 2 {
        out = minus_norm.mul(&out).expect("same algebra and variables");
    }
    out
}

/// All multisets of size `m` over `0..nvars` with the number of ordered
/// sequences each one represents.
pub(crate) fn multisets_with_multiplicity(nvars: usize, m: usize) -> Vec<(Vec<usize>, u64)> {
    fn rec(start: usize, nvars: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..nvars {
            cur.push(v);
            rec(v, nvars, remaining - 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    rec(0, nvars, m, &mut Vec::new(), &mut sets);
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    sets.into_iter()
        .map(|s| {
            let mut counts = vec![0usize; nvars];
            for &v in &s {
                counts[v] += 1;
            }
            let mult = fact(m) / counts.iter().map(|&c| fact(c)).product::<u64>();
            (s, mult)
        })
        .collect()
}

/// `u = |∇ᵐf|² = Σ_{|β|=m} |∂^β f|²`, summed over all ordered multi-indices
/// `β ∈ {0..d−1}^m`.
pub fn gradient_norm_sq(f: &HPolynomial, m: usize) -> HPolynomial {
    let mut u = HPolynomial::zero(f.kind(), f.nvars());
    for (beta, mult) in multisets_with_multiplicity(f.nvars(), m) {
        let mut d = f.clone();
        for &v in &beta {
            d = d.partial_unchecked(v);
            if d.is_zero() {
                break;
            }
        }
        if !d.is_zero() {
            u.add_assign_scaled(&d.norm_sq_poly(), &int(mult as i64));
        }
    }
    u
}

impl Add for &HPolynomial {
    type Output = HPolynomial;
    fn add(self, rhs: &HPolynomial) -> HPolynomial {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &HPolynomial {
    type Output = HPolynomial;
    fn sub(self, rhs: &HPolynomial) -> HPolynomial {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &int(-1));
        out
    }
}

impl Neg for &HPolynomial {
    type Output = HPolynomial;
    fn neg(self) -> HPolynomial {
        self.scale(&int(-1))
    }
}

impl fmt::Display for HPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(self))
    }
}
