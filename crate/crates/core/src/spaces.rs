//! Bases of homogeneous and monogenic polynomial spaces, the Fischer
//! decomposition `Pᵏ = ⊕ⱼ x̲ʲ Mᵏ⁻ʲ`, and Cauchy–Kovalevskaya extension off the
//! hyperplane, both as a finite series and in Gegenbauer closed form.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::algebra::{AlgebraElement, AlgebraKind, Blade};
use crate::error::{Error, Result};
use crate::gegenbauer::gegenbauer;
use crate::linalg::{kernel_basis_sparse, solve_sparse, RationalVector, SolveOutcome, SparseMatrix};
use crate::poly::{exponents_of_degree, xu_power_multiply, Exponent, HPolynomial, OperatorSpec};
use crate::rational::{int, Rational};
use crate::setting::Setting;

/// Index of the monomial-times-blade basis of `Pᵏ` on a set of variables:
/// column `i·dim(A) + b` is `x^{α_i} e_b`.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    kind: AlgebraKind,
    exponents: Vec<Exponent>,
    position: HashMap<Exponent, usize>,
}

impl MonomialIndex {
    pub fn new(kind: AlgebraKind, nvars: usize, vars: &[usize], degree: usize) -> Self {
        let exponents = exponents_of_degree(nvars, vars, degree);
        let position = exponents.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialIndex { kind, exponents, position }
    }

    pub fn len(&self) -> usize {
        self.exponents.len() * self.kind.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn element(&self, column: usize) -> HPolynomial {
        let dim = self.kind.dim();
        HPolynomial::monomial(
            self.exponents[column / dim].clone(),
            AlgebraElement::basis(self.kind, Blade((column % dim) as u16)),
        )
    }

    /// Sparse coordinates; fails if `p` has a term outside the space.
    pub fn coordinates(&self, p: &HPolynomial) -> Result<Vec<(usize, Rational)>> {
        let dim = self.kind.dim();
        let mut out = Vec::new();
        for (e, c) in p.terms() {
            let i = *self
                .position
                .get(e)
                .ok_or_else(|| Error::InvalidArgument(format!("monomial {e:?} outside the space")))?;
            out.extend(c.iter().map(|(b, v)| (i * dim + b.0 as usize, v.clone())));
        }
        Ok(out)
    }

    pub fn dense_coordinates(&self, p: &HPolynomial) -> Result<RationalVector> {
        let mut v = vec![Rational::zero(); self.len()];
        for (i, x) in self.coordinates(p)? {
            v[i] = x;
        }
        Ok(v)
    }
}

/// An ordered basis of `Pᵏ` or `Mᵏ`.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    pub degree: usize,
    pub nvars: usize,
    pub kind: AlgebraKind,
    /// Variables the polynomials may depend on.
    pub variables: Vec<usize>,
    /// The operator whose kernel this is, for monogenic bases.
    pub operator: Option<OperatorSpec>,
    pub elements: Vec<HPolynomial>,
}

impl SpaceBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self) -> MonomialIndex {
        MonomialIndex::new(self.kind, self.nvars, &self.variables, self.degree)
    }

    /// Coordinates of `p` in this basis, or `None` if `p` is not in the span.
    pub fn coordinates_of(&self, p: &HPolynomial) -> Result<Option<RationalVector>> {
        let index = self.index();
        let mut m = SparseMatrix::new(index.len());
        for e in &self.elements {
            m.push_column(index.coordinates(e)?);
        }
        let target = match index.dense_coordinates(p) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        Ok(match solve_sparse(&m, &target)? {
            SolveOutcome::Solution(x) => Some(x),
            SolveOutcome::Inconsistent => None,
        })
    }

    /// `Σ cᵢ bᵢ`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<HPolynomial> {
        if coeffs.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: coeffs.len() });
        }
        let mut out = HPolynomial::zero(self.kind, self.nvars);
        for (c, b) in coeffs.iter().zip(&self.elements) {
            out.add_assign_scaled(b, c);
        }
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim Pᵏ(ℝᵈ, A) = dim(A)·C(k+d−1, d−1)`.
pub fn poly_space_dimension(k: usize, d: usize, kind: AlgebraKind) -> usize {
    kind.dim() * binomial(k + d - 1, d - 1)
}

/// `dim Mᵏ(ℝᵈ, A) = dim(A)·[C(k+d−1, d−1) − C(k+d−2, d−1)]`.
pub fn monogenic_dimension(k: usize, d: usize, kind: AlgebraKind) -> usize {
    let lower = if k == 0 { 0 } else { binomial(k + d - 2, d - 1) };
    kind.dim() * (binomial(k + d - 1, d - 1) - lower)
}

/// Monomial-times-blade basis of `Pᵏ(ℝᵈ, A)` in canonical order.
pub fn poly_space_basis(k: usize, d: usize, kind: AlgebraKind) -> SpaceBasis {
    poly_space_basis_on(k, d, &(0..d).collect::<Vec<_>>(), kind)
}

/// `Pᵏ` on the listed variables, embedded in `nvars` coordinates.
pub fn poly_space_basis_on(k: usize, nvars: usize, vars: &[usize], kind: AlgebraKind) -> SpaceBasis {
    let index = MonomialIndex::new(kind, nvars, vars, k);
    SpaceBasis {
        degree: k,
        nvars,
        kind,
        variables: vars.to_vec(),
        operator: None,
        elements: (0..index.len()).map(|i| index.element(i)).collect(),
    }
}

type BasisKey = (usize, usize, AlgebraKind, OperatorSpec);

static BASES: Lazy<Mutex<HashMap<BasisKey, Arc<SpaceBasis>>>> = Lazy::new(Default::default);

fn check_operator(nvars: usize, kind: AlgebraKind, op: &OperatorSpec) -> Result<()> {
    for v in op.variables() {
        if v >= nvars {
            return Err(Error::VariableOutOfRange { index: v, nvars });
        }
    }
    let pairs = match op {
        OperatorSpec::Dirac(p) => p.as_slice(),
        OperatorSpec::Weyl { pairs, .. } | OperatorSpec::WeylConjugate { pairs, .. } => pairs.as_slice(),
        _ => &[],
    };
    for (_, b) in pairs {
        if !kind.contains(*b) {
            return Err(Error::UnknownBlade { index: b.0 as usize, kind });
        }
    }
    Ok(())
}

/// Basis of the kernel of `op` on `Pᵏ` over the operator's variables, from
/// the exact null space of the operator matrix. Results are cached per key.
pub fn monogenic_basis(k: usize, nvars: usize, kind: AlgebraKind, op: &OperatorSpec) -> Result<Arc<SpaceBasis>> {
    check_operator(nvars, kind, op)?;
    let key = (k, nvars, kind, op.clone());
    if let Some(b) = BASES.lock().get(&key) {
        return Ok(b.clone());
    }
    let vars = op.variables();
    let source = MonomialIndex::new(kind, nvars, &vars, k);
    let elements: Vec<HPolynomial> = if k < op.order() {
        (0..source.len()).map(|i| source.element(i)).collect()
    } else {
        let target = MonomialIndex::new(kind, nvars, &vars, k - op.order());
        let mut m = SparseMatrix::new(target.len());
        for i in 0..source.len() {
            let image = source.element(i).differentiate(op)?;
            m.push_column(target.coordinates(&image)?);
        }
        kernel_basis_sparse(&m)
            .into_iter()
            .map(|v| {
                let mut p = HPolynomial::zero(kind, nvars);
                for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    p.add_assign_scaled(&source.element(i), c);
                }
                p
            })
            .collect()
    };
    let basis = Arc::new(SpaceBasis { degree: k, nvars, kind, variables: vars, operator: Some(op.clone()), elements });
    Ok(BASES.lock().entry(key).or_insert(basis).clone())
}

/// `Mᵏ` of the ambient operator of a setting.
pub fn ambient_monogenic_basis(setting: Setting, k: usize) -> Result<Arc<SpaceBasis>> {
    monogenic_basis(k, setting.nvars(), setting.kind(), &setting.ambient_operator())
}

/// `Mᵏ` of the Dirac operator on the hyperplane of a setting.
pub fn hyperplane_monogenic_basis(setting: Setting, k: usize) -> Result<Arc<SpaceBasis>> {
    monogenic_basis(k, setting.nvars(), setting.kind(), &setting.hyperplane_operator())
}

pub fn is_monogenic(p: &HPolynomial, op: &OperatorSpec) -> Result<bool> {
    Ok(p.differentiate(op)?.is_zero())
}

fn pair_vars(pairs: &[(usize, Blade)]) -> Vec<usize> {
    let mut v: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    v.sort_unstable();
    v
}

/// Splits a homogeneous `p` of degree `k` on the variables of `pairs` as
/// `p = Σⱼ x̲ʲ mⱼ` with `mⱼ ∈ Mᵏ⁻ʲ` for `D = Σ e_b ∂_v`. Entry `j` of the
/// result is `mⱼ`.
pub fn fischer_decompose(p: &HPolynomial, pairs: &[(usize, Blade)]) -> Result<Vec<HPolynomial>> {
    let vars = pair_vars(pairs);
    let (kind, nvars) = (p.kind(), p.nvars());
    if p.is_zero() {
        return Ok(vec![p.clone()]);
    }
    let k = p
        .homogeneous_degree()
        .ok_or_else(|| Error::InvalidArgument("polynomial is not homogeneous".into()))?;
    if (0..nvars).any(|v| !vars.contains(&v) && p.uses_variable(v)) {
        return Err(Error::InvalidArgument("polynomial depends on a variable outside the hyperplane".into()));
    }
    let op = OperatorSpec::Dirac(pairs.to_vec());
    let index = MonomialIndex::new(kind, nvars, &vars, k);
    let mut m = SparseMatrix::new(index.len());
    let mut owners = Vec::new();
    let bases: Vec<Arc<SpaceBasis>> = (0..=k).map(|j| monogenic_basis(k - j, nvars, kind, &op)).collect::<Result<_>>()?;
    for (j, basis) in bases.iter().enumerate() {
        for (t, b) in basis.elements.iter().enumerate() {
            m.push_column(index.coordinates(&xu_power_multiply(j, b, pairs))?);
            owners.push((j, t));
        }
    }
    let target = index.dense_coordinates(p)?;
    let coeffs = match solve_sparse(&m, &target)? {
        SolveOutcome::Solution(x) => x,
        SolveOutcome::Inconsistent => {
            return Err(Error::Internal("Fischer system inconsistent; monogenic bases incomplete".into()))
        }
    };
    let mut pieces = vec![HPolynomial::zero(kind, nvars); k + 1];
    for ((j, t), c) in owners.into_iter().zip(coeffs) {
        if !c.is_zero() {
            pieces[j].add_assign_scaled(&bases[j].elements[t], &c);
        }
    }
    Ok(pieces)
}

fn power_of_var(kind: AlgebraKind, nvars: usize, var: usize, power: usize) -> HPolynomial {
    HPolynomial::monomial(Exponent::zero(nvars).with_power(var, power as u8), AlgebraElement::one(kind))
}

fn check_hyperplane(p: &HPolynomial, setting: Setting) -> Result<()> {
    if p.kind() != setting.kind() {
        return Err(Error::AlgebraMismatch { left: p.kind(), right: setting.kind() });
    }
    if p.nvars() != setting.nvars() {
        return Err(Error::DimensionMismatch { expected: setting.nvars(), found: p.nvars() });
    }
    if p.uses_variable(setting.distinguished_var()) {
        return Err(Error::InvalidArgument(format!(
            "input must not depend on x{}",
            setting.distinguished_var()
        )));
    }
    Ok(())
}

/// Monogenic extension of a hyperplane polynomial by the finite series
/// `Σᵢ xᵢ/i!·Tⁱp` in the distinguished variable, with `T = −D` (ℍ, 𝕆) or
/// `T = e_n D` (ℝₙ).
pub fn ck_extend(p: &HPolynomial, setting: Setting) -> Result<HPolynomial> {
    check_hyperplane(p, setting)?;
    let (kind, nvars, dist) = (setting.kind(), setting.nvars(), setting.distinguished_var());
    let op = setting.hyperplane_operator();
    let unit = setting.distinguished_unit();
    let mut out = HPolynomial::zero(kind, nvars);
    let mut term = p.clone();
    let mut factorial = Rational::one();
    let mut i = 0usize;
    while !term.is_zero() {
        if i > 0 {
            factorial *= int(i as i64);
        }
        let shifted = power_of_var(kind, nvars, dist, i).mul(&term)?;
        out.add_assign_scaled(&shifted, &(Rational::one() / &factorial));
        term = match setting {
            Setting::Clifford(_) => term.differentiate(&op)?.left_mul(&unit),
            _ => -&term.differentiate(&op)?,
        };
        i += 1;
    }
    Ok(out)
}

/// Closed form of `ck_extend(x̲ˢ f)` for `f ∈ Mᵏ` on the hyperplane:
/// with `t = x/r`, `μ = (n−2)/2 + k` and `κ = (n+2k−2)/(n+2k+s−2)`,
///
/// `F = c·rˢ[C_s^μ(t) g + κ C_{s−1}^{μ+1}(t) (x̲/r) τ g]`,
///
/// where `τ` is the distinguished unit, `g = f` for even `s` and `τ⁻¹f` for
/// odd `s`, and `c` makes the hyperplane restriction equal `x̲ˢ f`.
pub fn ck_closed_form(s: usize, k: usize, f: &HPolynomial, setting: Setting) -> Result<HPolynomial> {
    check_hyperplane(f, setting)?;
    if !f.is_homogeneous_of(k) {
        return Err(Error::NotMonogenic(format!("input is not homogeneous of degree {k}")));
    }
    if !is_monogenic(f, &setting.hyperplane_operator())? {
        return Err(Error::NotMonogenic("D f ≠ 0 on the hyperplane".into()));
    }
    let (kind, nvars, dist) = (setting.kind(), setting.nvars(), setting.distinguished_var());
    let pairs = setting.vector_pairs();
    let n = int(setting.dimension() as i64);
    let (s_r, k_r) = (int(s as i64), int(k as i64));
    let mu = (&n - int(2)) / int(2) + &k_r;
    let tau = setting.distinguished_unit();
    let g = if s % 2 == 0 { f.clone() } else { f.left_mul(&tau.conjugate()) };
    let all_vars: Vec<usize> = (0..nvars).collect();
    let r2 = HPolynomial::squared_norm(kind, nvars, &all_vars);
    let mut r2_powers = vec![HPolynomial::constant(nvars, AlgebraElement::one(kind))];
    for i in 1..=s / 2 {
        let next = r2_powers[i - 1].mul(&r2)?;
        r2_powers.push(next);
    }
    let profile = |c: &crate::gegenbauer::UnivariatePoly, degree: usize, h: &HPolynomial| -> Result<HPolynomial> {
        let mut acc = HPolynomial::zero(kind, nvars);
        for (j, a) in c.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let radial = power_of_var(kind, nvars, dist, j).mul(&r2_powers[(degree - j) / 2])?;
            acc.add_assign_scaled(&radial.mul(h)?, a);
        }
        Ok(acc)
    };
    let a = gegenbauer(s, &mu);
    let mut total = profile(&a, s, &g)?;
    let norm = if s % 2 == 0 {
        let sign = if (s / 2) % 2 == 0 { int(1) } else { int(-1) };
        sign / a.eval(&Rational::zero())
    } else {
        Rational::one()
    };
    let norm = if s >= 1 {
        let kappa = (&n + &k_r * int(2) - int(2)) / (&n + &k_r * int(2) + &s_r - int(2));
        let b = gegenbauer(s - 1, &(&mu + int(1))).scale(&kappa);
        let h = g.left_mul(&tau).vector_left_mul(&pairs);
        total = &total + &profile(&b, s - 1, &h)?;
        if s % 2 == 1 {
            let sign = if ((s - 1) / 2) % 2 == 0 { int(1) } else { int(-1) };
            sign / b.eval(&Rational::zero())
        } else {
            norm
        }
    } else {
        norm
    };
    let result = total.scale(&norm);
    if result.restrict_to_zero(dist)? != xu_power_multiply(s, f, &pairs) {
        return Err(Error::Internal("closed form does not restrict to x̲ˢf".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::rat;

    const H: AlgebraKind = AlgebraKind::Quaternion;

    #[test]
    fn dimension_counts() {
        assert_eq!(poly_space_basis(1, 3, H).len(), 12);
        assert_eq!(poly_space_basis(2, 4, H).len(), 40);
        let p0 = poly_space_basis(0, 3, H);
        assert_eq!(p0.len(), 4);
        assert!(p0.elements.iter().all(|e| e.degree() == 0));
        assert_eq!(monogenic_dimension(1, 3, H), 8);
        assert_eq!(monogenic_dimension(0, 5, AlgebraKind::Octonion), 8);
    }

    #[test]
    fn small_monogenic_bases() {
        let q = Setting::Quaternion;
        let m1 = hyperplane_monogenic_basis(q, 1).unwrap();
        assert_eq!(m1.len(), 8);
        for e in &m1.elements {
            assert!(is_monogenic(e, &q.hyperplane_operator()).unwrap());
            assert!(e.is_homogeneous_of(1));
            assert!(!e.uses_variable(0));
        }
        let m0 = ambient_monogenic_basis(q, 0).unwrap();
        assert_eq!(m0.len(), 4);
        for m in 0..3 {
            assert_eq!(ambient_monogenic_basis(q, m + 1).unwrap().len(), 4 * binomial(m + 3, 2));
        }
    }

    #[test]
    fn fischer_example_from_coordinate() {
        let q = Setting::Quaternion;
        let p = parse_poly("x1", H, 4).unwrap();
        let pieces = fischer_decompose(&p, &q.vector_pairs()).unwrap();
        assert_eq!(pieces.len(), 2);
        // x1 = (x1 + x̲ i/3) + x̲·(−i/3)
        let xu = HPolynomial::vector_variable(H, 4, &q.vector_pairs());
        let i = AlgebraElement::generator(H, 1);
        let expected0 = &p + &xu.right_mul(&i).scale(&rat(1, 3));
        assert_eq!(pieces[0], expected0);
        assert_eq!(pieces[1], HPolynomial::constant(4, i.scale(&rat(-1, 3))));
        let monogenic = &pieces[0];
        assert_eq!(fischer_decompose(monogenic, &q.vector_pairs()).unwrap()[1], HPolynomial::zero(H, 4));
    }

    #[test]
    fn ck_series_examples() {
        let q = Setting::Quaternion;
        let xu = HPolynomial::vector_variable(H, 4, &q.vector_pairs());
        let ext = ck_extend(&xu, q).unwrap();
        assert_eq!(ext, parse_poly("3*x0 + e[1]*x1 + e[2]*x2 + e[3]*x3", H, 4).unwrap());
        assert!(is_monogenic(&ext, &q.ambient_operator()).unwrap());
        assert_eq!(ext.evaluate(&[int(1), int(0), int(0), int(0)]).unwrap(), AlgebraElement::scalar(H, int(3)));
        let c = HPolynomial::constant(4, AlgebraElement::parse("2 + e[3]", H).unwrap());
        assert_eq!(ck_extend(&c, q).unwrap(), c);
        assert!(ck_extend(&parse_poly("x0", H, 4).unwrap(), q).is_err());
    }

    #[test]
    fn clifford_series_example() {
        // ck(x̲) = x̲ − (n−1)·x_n·e_n
        let c = Setting::Clifford(4);
        let kind = c.kind();
        let xu = HPolynomial::vector_variable(kind, 4, &c.vector_pairs());
        let ext = ck_extend(&xu, c).unwrap();
        assert_eq!(ext, parse_poly("e[1]*x0 + e[2]*x1 + e[3]*x2 - 3*e[4]*x3", kind, 4).unwrap());
        assert!(is_monogenic(&ext, &c.ambient_operator()).unwrap());
    }

    #[test]
    fn closed_form_examples() {
        let q = Setting::Quaternion;
        let one = HPolynomial::constant(4, AlgebraElement::one(H));
        let f1 = ck_closed_form(1, 0, &one, q).unwrap();
        assert_eq!(f1, parse_poly("3*x0 + e[1]*x1 + e[2]*x2 + e[3]*x3", H, 4).unwrap());
        let g = hyperplane_monogenic_basis(q, 1).unwrap().elements[0].clone();
        assert_eq!(ck_closed_form(0, 1, &g, q).unwrap(), g);
        let not_mono = parse_poly("x1", H, 4).unwrap();
        assert!(matches!(ck_closed_form(1, 1, &not_mono, q), Err(Error::NotMonogenic(_))));
    }

    #[test]
    fn closed_form_matches_series_small() {
        for setting in [Setting::Quaternion, Setting::Clifford(3), Setting::Clifford(4), Setting::Octonion] {
            for k in 0..=1 {
                let f = hyperplane_monogenic_basis(setting, k).unwrap().elements.last().unwrap().clone();
                for s in 0..=3 {
                    let closed = ck_closed_form(s, k, &f, setting).unwrap();
                    let series = ck_extend(&xu_power_multiply(s, &f, &setting.vector_pairs()), setting).unwrap();
                    assert_eq!(closed, series, "{setting} s={s} k={k}");
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let b = ambient_monogenic_basis(Setting::Quaternion, 1).unwrap();
        let coeffs: Vec<Rational> = (0..b.len()).map(|i| rat(i as i64 - 3, 2)).collect();
        let p = b.combine(&coeffs).unwrap();
        assert_eq!(b.coordinates_of(&p).unwrap(), Some(coeffs));
        let outside = parse_poly("x1", H, 4).unwrap();
        assert_eq!(b.coordinates_of(&outside).unwrap(), None);
    }
}
