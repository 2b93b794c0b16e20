//! The extremal constant `M = max ‖∂_dist f‖² / Σᵢ‖∂ᵢf‖²` over `f ∈ M^{m+1}`,
//! its per-piece Rayleigh ratios along the Fischer–CK splitting, and an exact
//! certificate of it as the top generalized eigenvalue of the Gram pencil.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraKind, Blade};
use crate::error::{Error, Result};
use crate::inner::{l2_gram, l2_inner, l2_norm_sq};
use crate::linalg::{
    certify_max_generalized_eigenvalue, float_max_eigenvalue, independent_columns_sparse, psd_certify, EigenCertificate,
    RationalMatrix, SparseMatrix,
};
use crate::poly::{xu_power_multiply, HPolynomial};
use crate::rational::{int, rat, Rational};
use crate::setting::Setting;
use crate::spaces::{ambient_monogenic_basis, ck_closed_form, ck_extend, hyperplane_monogenic_basis, MonomialIndex};

/// Seed of the random directions used by [`certify_m`].
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Number of random directions used by [`certify_m`].
pub const DEFAULT_DIRECTIONS: usize = 20;

fn n_of(setting: Setting) -> Rational {
    int(setting.dimension() as i64)
}

/// `s(n+2s+2k)(n+2k+s−2)/(n+2k+2s−2)`: `‖∂ CK(x̲ˢf)‖² / ‖CK(x̲ˢf)‖²` for `f ∈ Mᵏ`.
pub fn piece_ratio(s: usize, k: usize, setting: Setting) -> Rational {
    let n = n_of(setting);
    let (s, k) = (int(s as i64), int(k as i64));
    let num = &s * (&n + &s * int(2) + &k * int(2)) * (&n + &k * int(2) + &s - int(2));
    let den = &n + &k * int(2) + &s * int(2) - int(2);
    if den.is_zero() {
        return Rational::zero();
    }
    num / den
}

/// `M(n, m) = (n+m−1)/(n+2m)`.
pub fn closed_form_m(setting: Setting, m: usize) -> Rational {
    let n = setting.dimension() as i64;
    let m = m as i64;
    rat(n + m - 1, n + 2 * m)
}

/// `α₀ = (n−2)/(n+m−1) = 2 − 1/M`.
pub fn alpha0(setting: Setting, m: usize) -> Rational {
    let n = setting.dimension() as i64;
    rat(n - 2, n + m as i64 - 1)
}

/// `(m+1)(2m+2+n)`, the energy factor `deg·(2·deg+n)` at degree `m+1`.
pub fn normalizer(setting: Setting, m: usize) -> Rational {
    let deg = int(m as i64 + 1);
    &deg * (&deg * int(2) + n_of(setting))
}

/// `λ* = (m+1)(2m+2+n)·M`, the top generalized eigenvalue of `(A_dist, G)`.
pub fn lambda_star(setting: Setting, m: usize) -> Rational {
    normalizer(setting, m) * closed_form_m(setting, m)
}

/// `‖∂_dist F‖² / ‖F‖²` for `F = ck_extend(x̲ˢ f)`, computed from the
/// polynomials themselves.
pub fn direct_piece_ratio(s: usize, f: &HPolynomial, setting: Setting) -> Result<Rational> {
    let big = ck_extend(&xu_power_multiply(s, f, &setting.vector_pairs()), setting)?;
    let norm = l2_norm_sq(&big);
    if norm.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has no ratio".into()));
    }
    Ok(l2_norm_sq(&big.partial(setting.distinguished_var())?) / norm)
}

/// Per-piece table behind [`compute_m_from_pieces`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceTable {
    /// `s ↦` direct ratio for `k = m+1−s`.
    pub ratios: BTreeMap<usize, Rational>,
    /// Largest ratio divided by the normalizer.
    pub maximum: Rational,
    pub argmax: usize,
}

/// Computes every piece ratio directly, checks it against [`piece_ratio`],
/// checks strict growth in `s`, and returns the maximum over the normalizer.
pub fn compute_m_from_pieces(setting: Setting, m: usize) -> Result<PieceTable> {
    let mut ratios = BTreeMap::new();
    for s in 0..=m + 1 {
        let k = m + 1 - s;
        let basis = hyperplane_monogenic_basis(setting, k)?;
        let f = basis.elements.first().ok_or_else(|| Error::Internal("empty monogenic basis".into()))?;
        let direct = direct_piece_ratio(s, f, setting)?;
        if direct != piece_ratio(s, k, setting) {
            return Err(Error::Internal(format!(
                "piece ratio mismatch at s={s}, k={k}: direct {direct}, formula {}",
                piece_ratio(s, k, setting)
            )));
        }
        ratios.insert(s, direct);
    }
    let values: Vec<&Rational> = ratios.values().collect();
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Internal("piece ratios are not strictly increasing in s".into()));
    }
    let (argmax, best) = ratios.iter().max_by(|a, b| a.1.cmp(b.1)).expect("nonempty");
    Ok(PieceTable { maximum: best / normalizer(setting, m), argmax: *argmax, ratios })
}

/// Σᵢ‖∂ᵢf‖² = deg·(2·deg+n)·‖f‖² on every element of a basis of `M^deg`.
pub fn verify_energy_identity(setting: Setting, degree: usize) -> Result<bool> {
    let basis = ambient_monogenic_basis(setting, degree)?;
    let d = int(degree as i64);
    let factor = &d * (&d * int(2) + n_of(setting));
    for f in &basis.elements {
        let mut energy = Rational::zero();
        for i in 0..setting.nvars() {
            energy += l2_norm_sq(&f.partial(i)?);
        }
        if energy != &factor * l2_norm_sq(f) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⟨∂ᵢf*, ∂_dist f*⟩ = 0` for every non-distinguished `i`, with
/// `f* = CK(x̲^{m+1})`.
pub fn cross_term_probe(setting: Setting, m: usize) -> Result<bool> {
    let f = extremal_piece(setting, m)?;
    let dist = f.partial(setting.distinguished_var())?;
    for i in setting.hyperplane_vars() {
        if !l2_inner(&f.partial(i)?, &dist)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub directions: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { directions: DEFAULT_DIRECTIONS, seed: DEFAULT_SEED }
    }
}

/// Outcome of [`certify_m`].
#[derive(Clone, Debug)]
pub struct ExtremalReport {
    pub setting: Setting,
    pub m: usize,
    pub basis_dimension: usize,
    pub m_closed: Rational,
    /// `λ/normalizer` for the certified top eigenvalue; `None` when refuted.
    pub m_certified: Option<Rational>,
    pub alpha0: Rational,
    pub lambda_star: Rational,
    pub piece_ratios: BTreeMap<usize, Rational>,
    pub certificate: EigenCertificate,
    pub random_direction_checks: usize,
    pub random_directions: usize,
    /// Dimensions of the symmetry-reduced spaces the directions are checked on.
    pub direction_check_dimensions: Vec<usize>,
    /// Floating-point estimate of the top eigenvalue; advisory.
    pub float_lambda: f64,
}

impl ExtremalReport {
    /// Certificate holds and every random direction passed.
    pub fn all_passed(&self) -> bool {
        self.certificate.is_certified() && self.random_direction_checks == self.random_directions
    }
}

/// The extremal degree-(m+1) piece `CK(x̲^{m+1})`.
pub fn extremal_piece(setting: Setting, m: usize) -> Result<HPolynomial> {
    let one = HPolynomial::constant(setting.nvars(), AlgebraElement::one(setting.kind()));
    ck_closed_form(m + 1, 0, &one, setting)
}

/// Random nonzero direction with small rational entries.
pub fn random_direction(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    loop {
        let z: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect();
        if z.iter().any(|x| !x.is_zero()) {
            return z;
        }
    }
}

/// Gram pencil `(A_ζ, G)` on a basis: `G` of the basis, `A_ζ` of the
/// directional derivatives.
pub fn directional_gram(elements: &[HPolynomial], direction: &[Rational]) -> Result<RationalMatrix> {
    let derivs: Vec<HPolynomial> = elements.iter().map(|f| f.directional(direction)).collect::<Result<_>>()?;
    l2_gram(&derivs)
}

/// Commuting blades `B` with `e_B² = +1` whose right multiplications are
/// independent involutions; empty outside Clifford algebras.
pub fn right_involutions(kind: AlgebraKind) -> Vec<Blade> {
    if !matches!(kind, AlgebraKind::Clifford(_)) {
        return Vec::new();
    }
    let mut chosen: Vec<Blade> = Vec::new();
    let mut span: HashSet<u16> = HashSet::from([0]);
    for b in kind.blades().filter(|b| !b.is_scalar()) {
        let squares_to_one = !kind.product_sign(b, b);
        let commutes = chosen.iter().all(|&c| kind.product_sign(b, c) == kind.product_sign(c, b));
        if squares_to_one && commutes && !span.contains(&b.0) {
            let shifted: Vec<u16> = span.iter().map(|x| x ^ b.0).collect();
            span.extend(shifted);
            chosen.push(b);
        }
    }
    chosen
}

/// One sign vector per orbit of joint eigenspaces of the right involutions
/// under right multiplication by blades (`true` marks eigenvalue −1).
fn eigenspace_representatives(kind: AlgebraKind, gens: &[Blade]) -> Vec<u32> {
    let flips: Vec<u32> = kind
        .blades()
        .map(|c| {
            gens.iter()
                .enumerate()
                .filter(|(_, &b)| kind.product_sign(b, c) != kind.product_sign(c, b))
                .fold(0u32, |acc, (j, _)| acc | (1 << j))
        })
        .collect();
    let mut seen = vec![false; 1 << gens.len()];
    let mut reps = Vec::new();
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        reps.push(start as u32);
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(v) = queue.pop() {
            for &f in &flips {
                let w = v ^ f as usize;
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
    }
    reps
}

/// Bases of representative joint eigenspaces of the right involutions on the
/// span of `elements`. Right multiplication by a blade preserves the ball
/// product and commutes with every derivative, so the eigenspaces split both
/// Gram forms orthogonally and blades carry one eigenspace isometrically
/// onto another; semidefiniteness on the representatives is equivalent to
/// semidefiniteness on the whole span.
pub fn symmetry_reduced_spaces(elements: &[HPolynomial], kind: AlgebraKind) -> Result<Vec<Vec<HPolynomial>>> {
    let gens = right_involutions(kind);
    if gens.is_empty() || elements.is_empty() {
        return Ok(vec![elements.to_vec()]);
    }
    let nvars = elements[0].nvars();
    let degree = elements[0].degree();
    let index = MonomialIndex::new(kind, nvars, &(0..nvars).collect::<Vec<_>>(), degree);
    let half = rat(1, 2);
    let mut out = Vec::new();
    for signs in eigenspace_representatives(kind, &gens) {
        let mut projector = AlgebraElement::one(kind);
        for (j, &b) in gens.iter().enumerate() {
            let mut factor = AlgebraElement::basis(kind, b);
            if signs >> j & 1 == 1 {
                factor = -&factor;
            }
            projector = &projector * &(&AlgebraElement::one(kind) + &factor).scale(&half);
        }
        let projected: Vec<HPolynomial> = elements.iter().map(|f| f.right_mul(&projector)).collect();
        let mut columns = SparseMatrix::new(index.len());
        for p in &projected {
            columns.push_column(index.coordinates(p)?);
        }
        out.push(independent_columns_sparse(&columns).into_iter().map(|j| projected[j].clone()).collect());
    }
    Ok(out)
}

/// Certifies `M(setting, m)` exactly: the witness `CK(x̲^{m+1})` attains
/// `λ* = (m+1)(2m+2+n)M` for the pencil `(A_dist, G)` on `M^{m+1}` and
/// `λ*G − A_dist ⪰ 0`; then `λ*|ζ|²G − A_ζ ⪰ 0` for random directions `ζ`.
pub fn certify_m(setting: Setting, m: usize) -> Result<ExtremalReport> {
    certify_m_with(setting, m, CertifyOptions::default())
}

pub fn certify_m_with(setting: Setting, m: usize, options: CertifyOptions) -> Result<ExtremalReport> {
    let basis = ambient_monogenic_basis(setting, m + 1)?;
    let dist = setting.distinguished_var();
    let g = l2_gram(&basis.elements)?;
    let mut e_dist = vec![Rational::zero(); setting.nvars()];
    e_dist[dist] = Rational::one();
    let a0 = directional_gram(&basis.elements, &e_dist)?;
    let lambda = lambda_star(setting, m);
    let witness_poly = extremal_piece(setting, m)?;
    let witness = basis
        .coordinates_of(&witness_poly)?
        .ok_or_else(|| Error::Internal("extremal piece outside the monogenic basis".into()))?;
    let certificate = certify_max_generalized_eigenvalue(&a0, &g, &lambda, &witness)?;
    let float_lambda = float_max_eigenvalue(&a0, &g);
    let spaces = symmetry_reduced_spaces(&basis.elements, setting.kind())?;
    let grams: Vec<RationalMatrix> = spaces.iter().map(|s| l2_gram(s)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut passed = 0;
    for _ in 0..options.directions {
        let zeta = random_direction(&mut rng, setting.nvars());
        let scale = &lambda * zeta.iter().fold(Rational::zero(), |acc, z| acc + z * z);
        let mut ok = true;
        for (space, gram) in spaces.iter().zip(&grams) {
            if !psd_certify(&gram.scale(&scale).sub(&directional_gram(space, &zeta)?)?)? {
                ok = false;
                break;
            }
        }
        passed += usize::from(ok);
    }
    let pieces = compute_m_from_pieces(setting, m)?;
    let m_certified = certificate.is_certified().then(|| &certificate.lambda / normalizer(setting, m));
    Ok(ExtremalReport {
        setting,
        m,
        basis_dimension: basis.len(),
        m_closed: closed_form_m(setting, m),
        m_certified,
        alpha0: alpha0(setting, m),
        lambda_star: lambda,
        piece_ratios: pieces.ratios,
        certificate,
        random_direction_checks: passed,
        random_directions: options.directions,
        direction_check_dimensions: spaces.iter().map(Vec::len).collect(),
        float_lambda,
    })
}
