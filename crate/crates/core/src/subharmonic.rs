//! Exact pointwise tests of subharmonicity of `u^{α/2}` with
//! `u = |∇ᵐf|²` for monogenic `f`: the Rayleigh quotient
//! `R = |∇u|²/(2uΔu)`, the sign function `s_α = uΔu + (α/2 − 1)|∇u|²`,
//! seeded sampling, sharpness witnesses and the harmonic-derivative constant.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraKind};
use crate::error::{Error, Result};
use crate::extremal::{cross_term_probe, extremal_piece};
use crate::inner::l2_norm_sq;
use crate::poly::{gradient_norm_sq, HPolynomial, OperatorSpec};
use crate::rational::{int, rat, Rational};
use crate::setting::Setting;
use crate::spaces::{ck_extend, is_monogenic, monogenic_basis, poly_space_basis_on};

/// Seed of the default sampler.
pub const DEFAULT_SAMPLE_SEED: u64 = 0x5ab_4a12;
/// Largest denominator of a sampled coordinate.
pub const MAX_DENOMINATOR: i64 = 64;

/// `u`, `∇u` and `Δu` for one `(f, m)`, built once and evaluated exactly.
#[derive(Clone, Debug)]
pub struct GradientField {
    pub u: HPolynomial,
    pub grad: Vec<HPolynomial>,
    pub laplacian: HPolynomial,
}

/// Values of `u`, `|∇u|²` and `Δu` at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointValues {
    pub u: Rational,
    pub grad_sq: Rational,
    pub laplacian: Rational,
}

impl GradientField {
    /// Fails with `NotMonogenic` unless `f` is annihilated by the ambient
    /// operator of its setting.
    pub fn new(f: &HPolynomial, m: usize) -> Result<Self> {
        let setting = Setting::from_algebra(f.kind(), f.nvars())?;
        if !is_monogenic(f, &setting.ambient_operator())? {
            return Err(Error::NotMonogenic(format!("input is not monogenic in the {setting} setting")));
        }
        let u = gradient_norm_sq(f, m);
        let grad = (0..f.nvars()).map(|i| u.partial(i)).collect::<Result<_>>()?;
        let laplacian = u.differentiate(&OperatorSpec::laplacian_all(f.nvars()))?;
        Ok(GradientField { u, grad, laplacian })
    }

    pub fn values(&self, x: &[Rational]) -> Result<PointValues> {
        let mut grad_sq = Rational::zero();
        for g in &self.grad {
            let v = g.evaluate_scalar(x)?;
            grad_sq += &v * &v;
        }
        Ok(PointValues { u: self.u.evaluate_scalar(x)?, grad_sq, laplacian: self.laplacian.evaluate_scalar(x)? })
    }

    /// `|∇u|²/(2uΔu)`, or `None` where `uΔu = 0`.
    pub fn rayleigh(&self, x: &[Rational]) -> Result<Option<Rational>> {
        let v = self.values(x)?;
        let den = &v.u * &v.laplacian * int(2);
        Ok((!den.is_zero()).then(|| v.grad_sq / den))
    }

    /// `uΔu + (α/2 − 1)|∇u|²`.
    pub fn sign_value(&self, alpha: &Rational, x: &[Rational]) -> Result<Rational> {
        let v = self.values(x)?;
        Ok(sign_from_values(&v, alpha))
    }
}

fn sign_from_values(v: &PointValues, alpha: &Rational) -> Rational {
    &v.u * &v.laplacian + (alpha / int(2) - int(1)) * &v.grad_sq
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if !alpha.is_positive() || alpha > &int(2) {
        return Err(Error::InvalidArgument(format!("exponent {alpha} outside (0, 2]")));
    }
    Ok(())
}

/// `R(x) = |∇u(x)|²/(2u(x)Δu(x))` for `u = |∇ᵐf|²`; `None` where `uΔu = 0`.
pub fn rayleigh_r(f: &HPolynomial, m: usize, x: &[Rational]) -> Result<Option<Rational>> {
    GradientField::new(f, m)?.rayleigh(x)
}

/// `s_α(x) = u(x)Δu(x) + (α/2 − 1)|∇u(x)|²`, whose sign is that of
/// `Δ(u^{α/2})(x)` wherever `u(x) > 0`.
pub fn sign_function(f: &HPolynomial, m: usize, alpha: &Rational, x: &[Rational]) -> Result<Rational> {
    check_alpha(alpha)?;
    GradientField::new(f, m)?.sign_value(alpha, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    /// Prepend the origin to the sampled points.
    pub include_origin: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { samples: 200, seed: DEFAULT_SAMPLE_SEED, include_origin: false }
    }
}

/// Rational point of `[−1,1]^d` with denominators at most [`MAX_DENOMINATOR`].
pub fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d)
        .map(|_| {
            let q = rng.gen_range(1..=MAX_DENOMINATOR);
            rat(rng.gen_range(-q..=q), q)
        })
        .collect()
}

/// Deterministic sample points for a configuration.
pub fn sample_points(config: &SamplerConfig, d: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut points = Vec::with_capacity(config.samples + 1);
    if config.include_origin {
        points.push(vec![Rational::zero(); d]);
    }
    points.extend((0..config.samples).map(|_| random_point(&mut rng, d)));
    points
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleResult {
    /// Exact value of `s_α` at a point with `u > 0`.
    Value(Rational),
    /// `u = 0` at the point.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    AllNonnegative,
    /// First sampled point with `s_α < 0`.
    ViolationAt(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct SubharmonicityCheck {
    pub f: HPolynomial,
    pub m: usize,
    pub alpha: Rational,
    pub samples: Vec<Vec<Rational>>,
    pub results: Vec<SampleResult>,
    pub verdict: Verdict,
}

impl SubharmonicityCheck {
    pub fn skipped(&self) -> usize {
        self.results.iter().filter(|r| matches!(r, SampleResult::Skipped)).count()
    }

    pub fn evaluated(&self) -> usize {
        self.results.len() - self.skipped()
    }

    pub fn violations(&self) -> usize {
        self.results.iter().filter(|r| matches!(r, SampleResult::Value(v) if v.is_negative())).count()
    }
}

/// Evaluates `s_α` at the configured sample points.
pub fn check_on_samples(
    f: &HPolynomial,
    m: usize,
    alpha: &Rational,
    config: &SamplerConfig,
) -> Result<SubharmonicityCheck> {
    let field = GradientField::new(f, m)?;
    let samples = sample_points(config, f.nvars());
    check_points(f, m, alpha, &field, samples)
}

/// [`check_on_samples`] at given points with a prebuilt field.
pub fn check_points(
    f: &HPolynomial,
    m: usize,
    alpha: &Rational,
    field: &GradientField,
    samples: Vec<Vec<Rational>>,
) -> Result<SubharmonicityCheck> {
    check_alpha(alpha)?;
    let mut results = Vec::with_capacity(samples.len());
    let mut verdict = Verdict::AllNonnegative;
    for x in &samples {
        let v = field.values(x)?;
        if v.u.is_zero() {
            results.push(SampleResult::Skipped);
            continue;
        }
        let s = sign_from_values(&v, alpha);
        if s.is_negative() && verdict == Verdict::AllNonnegative {
            verdict = Verdict::ViolationAt(x.clone());
        }
        results.push(SampleResult::Value(s));
    }
    Ok(SubharmonicityCheck { f: f.clone(), m, alpha: alpha.clone(), samples, results, verdict })
}

/// `f = ∂_dist f* + f*` with `f* = CK(x̲^{m+1})`, and the point `0`, where
/// `R(0) = M` exactly. Fails with `WitnessInvalid` if the cross terms
/// `⟨∂ᵢf*, ∂_dist f*⟩` do not all vanish.
pub fn sharpness_witness(setting: Setting, m: usize) -> Result<(HPolynomial, Vec<Rational>)> {
    if !cross_term_probe(setting, m)? {
        return Err(Error::WitnessInvalid(format!(
            "cross terms of the extremal piece do not vanish for {setting}, m = {m}"
        )));
    }
    let top = extremal_piece(setting, m)?;
    let f = &top.partial(setting.distinguished_var())? + &top;
    Ok((f, vec![Rational::zero(); setting.nvars()]))
}

/// Random monogenic polynomial with homogeneous parts in the given degrees,
/// each the extension of a few random hyperplane monomials with small
/// integer coefficients.
pub fn random_monogenic(setting: Setting, degrees: &[usize], rng: &mut ChaCha8Rng) -> Result<HPolynomial> {
    let kind = setting.kind();
    let nvars = setting.nvars();
    let space_dim = kind.dim();
    let mut f = HPolynomial::zero(kind, nvars);
    for &k in degrees {
        let basis = poly_space_basis_on(k, nvars, &setting.hyperplane_vars(), kind);
        loop {
            let mut p = HPolynomial::zero(kind, nvars);
            for _ in 0..4 {
                let j = rng.gen_range(0..basis.len());
                let c = int(rng.gen_range(-3..=3));
                let blade_shift = rng.gen_range(0..space_dim) as u16;
                let e = &basis.elements[j];
                let b = AlgebraElement::basis(kind, crate::algebra::Blade(blade_shift));
                p = &p + &e.right_mul(&b).scale(&c);
            }
            if !p.is_zero() {
                f = &f + &ck_extend(&p, setting)?;
                break;
            }
        }
    }
    Ok(f)
}

/// `Σ_{|β|=m} |∂^βU(0)|² / ‖U‖²` over a basis of degree-`m` polynomials on
/// `ℝ^d` with harmonic components, and over random combinations of it;
/// fails if the ratio is not constant, otherwise returns it.
pub fn harmonic_derivative_probe(d: usize, m: usize, kind: AlgebraKind) -> Result<Rational> {
    let basis = monogenic_basis(m, d, kind, &OperatorSpec::laplacian_all(d))?;
    let origin = vec![Rational::zero(); d];
    let ratio = |u: &HPolynomial| -> Result<Rational> {
        Ok(gradient_norm_sq(u, m).evaluate_scalar(&origin)? / l2_norm_sq(u))
    };
    let mut candidates: Vec<HPolynomial> = basis.elements.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SAMPLE_SEED ^ (d as u64) << 8 ^ m as u64);
    for _ in 0..3 {
        let coeffs: Vec<Rational> = (0..basis.len()).map(|_| int(rng.gen_range(-4..=4))).collect();
        let u = basis.combine(&coeffs)?;
        if !u.is_zero() {
            candidates.push(u);
        }
    }
    let first = candidates.first().ok_or_else(|| Error::Internal("empty harmonic basis".into()))?;
    let value = ratio(first)?;
    for u in &candidates[1..] {
        let r = ratio(u)?;
        if r != value {
            return Err(Error::Internal(format!("harmonic derivative ratio not constant: {value} and {r}")));
        }
    }
    Ok(value)
}

/// `m!·d(d+2)···(d+2m−2)·(d+2m)/d`.
pub fn harmonic_derivative_constant(d: usize, m: usize) -> Rational {
    let d = d as i64;
    let mut c = Rational::one();
    for j in 0..m as i64 {
        c *= int(j + 1) * int(d + 2 * j);
    }
    c * rat(d + 2 * m as i64, d)
}
