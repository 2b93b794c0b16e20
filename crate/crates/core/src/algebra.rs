//! Exact arithmetic in the quaternions ℍ, the Clifford algebras ℝₙ (generators
//! squaring to −1) and the octonions 𝕆.
//!
//! All three algebras use a blade index with the property that the product of
//! two basis elements is `±e_{a XOR b}`:
//!
//! * ℍ: `0 = 1, 1 = i, 2 = j, 3 = k`;
//! * ℝₙ: the blade `e_A` is the bitmask of `A`, bit `i − 1` standing for `e_i`;
//! * 𝕆: the Cayley–Dickson index, `e₀..e₃ = (1,0),(i,0),(j,0),(k,0)` and
//!   `e₄..e₇ = (0,1),(0,i),(0,j),(0,k)`.
//!
//! Only the sign has to be tabulated.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Largest supported number of Clifford generators.
pub const MAX_CLIFFORD_GENERATORS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    Quaternion,
    Clifford(u8),
    Octonion,
}

impl AlgebraKind {
    pub fn clifford(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_CLIFFORD_GENERATORS {
            return Err(Error::UnsupportedClifford(n));
        }
        Ok(AlgebraKind::Clifford(n as u8))
    }

    /// Real dimension of the algebra.
    pub fn dim(self) -> usize {
        match self {
            AlgebraKind::Quaternion => 4,
            AlgebraKind::Clifford(n) => 1 << n,
            AlgebraKind::Octonion => 8,
        }
    }

    /// Number of anticommuting imaginary generators.
    pub fn generator_count(self) -> usize {
        match self {
            AlgebraKind::Quaternion => 3,
            AlgebraKind::Clifford(n) => n as usize,
            AlgebraKind::Octonion => 7,
        }
    }

    /// The blade of the generator `e_i`, `1 ≤ i ≤ generator_count`.
    pub fn generator(self, i: usize) -> Blade {
        assert!(
            (1..=self.generator_count()).contains(&i),
            "generator e{i} out of range for {self}"
        );
        match self {
            AlgebraKind::Clifford(_) => Blade(1 << (i - 1)),
            _ => Blade(i as u16),
        }
    }

    pub fn blades(self) -> impl Iterator<Item = Blade> {
        (0..self.dim() as u16).map(Blade)
    }

    pub fn contains(self, blade: Blade) -> bool {
        (blade.0 as usize) < self.dim()
    }

    /// `e_a · e_b = (−1)^neg · e_{a XOR b}`; returns `neg`.
    pub fn product_sign(self, a: Blade, b: Blade) -> bool {
        match self {
            AlgebraKind::Quaternion => QUATERNION_SIGNS[a.0 as usize][b.0 as usize],
            AlgebraKind::Octonion => OCTONION_SIGNS[a.0 as usize][b.0 as usize],
            AlgebraKind::Clifford(_) => clifford_sign(a.0, b.0),
        }
    }

    pub fn blade_product(self, a: Blade, b: Blade) -> (bool, Blade) {
        (self.product_sign(a, b), Blade(a.0 ^ b.0))
    }

    /// Sign of the conjugate of a basis element: `conj(e_A) = (−1)^neg e_A`.
    pub fn conjugation_sign(self, a: Blade) -> bool {
        match self {
            AlgebraKind::Clifford(_) => {
                // (−1)^k times the reversal sign (−1)^{k(k−1)/2}
                let k = a.0.count_ones();
                (k * (k + 1) / 2) % 2 == 1
            }
            _ => a.0 != 0,
        }
    }

    /// The blade as an index list, as used by the text format `e[..]`.
    pub fn blade_indices(self, a: Blade) -> Vec<usize> {
        match self {
            AlgebraKind::Clifford(_) => (0..16).filter(|i| a.0 >> i & 1 == 1).map(|i| i + 1).collect(),
            _ => {
                if a.0 == 0 {
                    Vec::new()
                } else {
                    vec![a.0 as usize]
                }
            }
        }
    }

    /// Product `e_{i₁}·e_{i₂}···` (left to right) of generators given by index.
    /// Index 0 denotes the unit in ℍ and 𝕆.
    pub fn blade_from_indices(self, indices: &[usize]) -> Result<(bool, Blade)> {
        let mut neg = false;
        let mut acc = Blade::SCALAR;
        for &i in indices {
            let g = match self {
                AlgebraKind::Clifford(n) if (1..=n as usize).contains(&i) => Blade(1 << (i - 1)),
                AlgebraKind::Quaternion | AlgebraKind::Octonion if i < self.dim() => Blade(i as u16),
                _ => return Err(Error::UnknownBlade { index: i, kind: self }),
            };
            let (s, b) = self.blade_product(acc, g);
            neg ^= s;
            acc = b;
        }
        Ok((neg, acc))
    }

    pub fn format_blade(self, a: Blade) -> String {
        let idx: Vec<String> = self.blade_indices(a).iter().map(|i| i.to_string()).collect();
        format!("e[{}]", idx.join(","))
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Quaternion => write!(f, "quaternion"),
            AlgebraKind::Clifford(n) => write!(f, "clifford({n})"),
            AlgebraKind::Octonion => write!(f, "octonion"),
        }
    }
}

/// Basis element index; see the module docs for the encoding per algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Blade(pub u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn is_scalar(self) -> bool {
        self.0 == 0
    }
}

fn clifford_sign(a: u16, b: u16) -> bool {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // each shared generator squares to −1
    (swaps + (a & b).count_ones()) % 2 == 1
}

const QUATERNION_SIGNS: [[bool; 4]; 4] = [
    // 1      i      j      k
    [false, false, false, false], // 1
    [false, true, false, true],   // i: i·i = −1, i·j = k, i·k = −j
    [false, true, true, false],   // j: j·i = −k, j·j = −1, j·k = i
    [false, false, true, true],   // k: k·i = j, k·j = −i, k·k = −1
];

/// Signs of `e_a e_b` in 𝕆, generated once by the Cayley–Dickson doubling
/// `(a,b)(c,d) = (ac − d b̄, cb + ā d)` applied to the quaternion table.
static OCTONION_SIGNS: Lazy<[[bool; 8]; 8]> = Lazy::new(|| {
    let mut table = [[false; 8]; 8];
    for x in 0..8usize {
        for y in 0..8usize {
            let product = cayley_dickson_basis_product(x, y);
            let target = x ^ y;
            for (idx, &c) in product.iter().enumerate() {
                if idx == target {
                    assert!(c == 1 || c == -1, "octonion basis product not a unit");
                    table[x][y] = c == -1;
                } else {
                    assert_eq!(c, 0, "octonion basis product not a single basis element");
                }
            }
        }
    }
    table
});

type Quat = [i64; 4];

fn quat_mul(a: &Quat, b: &Quat) -> Quat {
    let mut out = [0i64; 4];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            let s = if QUATERNION_SIGNS[i][j] { -1 } else { 1 };
            out[i ^ j] += s * ai * bj;
        }
    }
    out
}

fn quat_conj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn quat_sub(a: &Quat, b: &Quat) -> Quat {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn quat_add(a: &Quat, b: &Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn cayley_dickson_basis_product(x: usize, y: usize) -> [i64; 8] {
    let unit = |i: usize| {
        let mut q = [0i64; 4];
        q[i] = 1;
        q
    };
    let split = |i: usize| if i < 4 { (unit(i), [0; 4]) } else { ([0; 4], unit(i - 4)) };
    let (a, b) = split(x);
    let (c, d) = split(y);
    let first = quat_sub(&quat_mul(&a, &c), &quat_mul(&d, &quat_conj(&b)));
    let second = quat_add(&quat_mul(&c, &b), &quat_mul(&quat_conj(&a), &d));
    let mut out = [0i64; 8];
    out[..4].copy_from_slice(&first);
    out[4..].copy_from_slice(&second);
    out
}

/// The frozen octonion sign table, row `a`, column `b`: `true` means `e_a e_b = −e_{a⊕b}`.
pub fn octonion_sign_table() -> [[bool; 8]; 8] {
    *OCTONION_SIGNS
}

/// A hypercomplex number with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    kind: AlgebraKind,
    coeffs: BTreeMap<Blade, Rational>,
}

impl AlgebraElement {
    pub fn zero(kind: AlgebraKind) -> Self {
        AlgebraElement { kind, coeffs: BTreeMap::new() }
    }

    pub fn one(kind: AlgebraKind) -> Self {
        Self::scalar(kind, Rational::one())
    }

    pub fn scalar(kind: AlgebraKind, value: Rational) -> Self {
        Self::term(kind, Blade::SCALAR, value)
    }

    pub fn basis(kind: AlgebraKind, blade: Blade) -> Self {
        Self::term(kind, blade, Rational::one())
    }

    pub fn term(kind: AlgebraKind, blade: Blade, value: Rational) -> Self {
        assert!(kind.contains(blade), "blade {blade:?} outside {kind}");
        let mut coeffs = BTreeMap::new();
        if !value.is_zero() {
            coeffs.insert(blade, value);
        }
        AlgebraElement { kind, coeffs }
    }

    /// Generator `e_i` (`i ≥ 1`).
    pub fn generator(kind: AlgebraKind, i: usize) -> Self {
        Self::basis(kind, kind.generator(i))
    }

    pub fn from_coeffs(kind: AlgebraKind, coeffs: impl IntoIterator<Item = (Blade, Rational)>) -> Self {
        let mut e = Self::zero(kind);
        for (b, c) in coeffs {
            e.add_term(b, c);
        }
        e
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> Rational {
        self.coeffs.get(&blade).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Blade, &Rational)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add_term(&mut self, blade: Blade, value: Rational) {
        assert!(self.kind.contains(blade), "blade {blade:?} outside {}", self.kind);
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(value);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += value;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &AlgebraElement, factor: &Rational) {
        debug_assert_eq!(self.kind, other.kind);
        for (b, c) in &other.coeffs {
            self.add_term(*b, c * factor);
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.kind);
        }
        AlgebraElement {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|(b, c)| (*b, c * factor)).collect(),
        }
    }

    fn check_kind(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::AlgebraMismatch { left: self.kind, right: other.kind });
        }
        Ok(())
    }

    /// Bilinear product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let mut out = Self::zero(self.kind);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let (neg, blade) = self.kind.blade_product(*a, *b);
                let v = ca * cb;
                out.add_term(blade, if neg { -v } else { v });
            }
        }
        Ok(out)
    }

    /// Left multiplication by a signed basis element, `(−1)^neg e_b · self`.
    pub fn left_mul_blade(&self, blade: Blade, neg: bool) -> Self {
        let mut coeffs = BTreeMap::new();
        for (a, c) in &self.coeffs {
            let (s, out) = self.kind.blade_product(blade, *a);
            coeffs.insert(out, if s ^ neg { -c.clone() } else { c.clone() });
        }
        AlgebraElement { kind: self.kind, coeffs }
    }

    pub fn conjugate(&self) -> Self {
        AlgebraElement {
            kind: self.kind,
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| (*b, if self.kind.conjugation_sign(*b) { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// The real part `(a)₀`.
    pub fn scalar_part(&self) -> Rational {
        self.coeff(Blade::SCALAR)
    }

    /// `(b̄ a)₀`, which on the orthonormal blade basis is `Σ a_A b_A`.
    pub fn scalar_product(&self, other: &Self) -> Result<Rational> {
        self.check_kind(other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> Rational {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Rational::zero();
        for (b, c) in &small.coeffs {
            if let Some(d) = large.coeffs.get(b) {
                acc += c * d;
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> Rational {
        self.coeffs.values().map(|c| c * c).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn parse(text: &str, kind: AlgebraKind) -> Result<Self> {
        let p = crate::poly::parse_poly(text, kind, 0)?;
        Ok(p.coefficient(&crate::poly::Exponent::zero(0)))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(b, c)| {
                if b.is_scalar() {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), self.kind.format_blade(*b))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.check_kind(rhs).expect("algebra mismatch");
        let mut out = self.clone();
        for (b, c) in &rhs.coeffs {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|(b, c)| (*b, -c.clone())).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.multiply(rhs).expect("algebra mismatch")
    }
}

/// Canonical blade basis, starting with 1.
pub fn algebra_basis(kind: AlgebraKind) -> Vec<AlgebraElement> {
    kind.blades().map(|b| AlgebraElement::basis(kind, b)).collect()
}

impl AlgebraElement {
    /// True when every coefficient is non-negative; used by tests of norms.
    pub fn coefficients_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
}
