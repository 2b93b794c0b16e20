//! Exact inner products on polynomials: the volume-normalized `L²` product on
//! the unit ball and the Fischer pairing.

use std::collections::HashMap;

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use num_traits::{One, Zero};

use crate::algebra::Blade;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{Exponent, HPolynomial};
use crate::rational::{int, Rational};

type MomentKey = (Vec<u8>, usize);

static MOMENTS: Lazy<RwLock<HashMap<MomentKey, Rational>>> = Lazy::new(Default::default);

/// `(1/|B|) ∫_B x^α dx` over the unit ball `B ⊂ ℝ^d`; entries of `alpha`
/// beyond its length are zero.
pub fn ball_moment(alpha: &[u8], d: usize) -> Rational {
    assert!(d >= 1 && alpha.len() <= d, "moment dimension");
    if alpha.iter().any(|a| a % 2 == 1) {
        return Rational::zero();
    }
    let mut half: Vec<u8> = alpha.iter().filter(|&&a| a > 0).map(|a| a / 2).collect();
    half.sort_unstable();
    let key = (half, d);
    if let Some(v) = MOMENTS.read().get(&key) {
        return v.clone();
    }
    let value = moment_formula(&key.0, d);
    MOMENTS.write().entry(key).or_insert(value).clone()
}

fn moment_formula(half: &[u8], d: usize) -> Rational {
    let d = d as i64;
    let mut num = Rational::one();
    for &b in half {
        for k in (1..2 * b as i64).step_by(2) {
            num *= int(k);
        }
    }
    let total: i64 = half.iter().map(|&b| b as i64).sum();
    let mut den = int(2 * total + d);
    for j in 1..=total {
        den *= int(d + 2 * j - 2);
    }
    num * int(d) / den
}

fn check_pair(p: &HPolynomial, q: &HPolynomial) -> Result<()> {
    if p.kind() != q.kind() {
        return Err(Error::AlgebraMismatch { left: p.kind(), right: q.kind() });
    }
    if p.nvars() != q.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), found: q.nvars() });
    }
    Ok(())
}

/// Volume-normalized `L²(B^d)` product `Σ ⟨a_α, b_β⟩·moment(α+β)` with `d = nvars`.
pub fn l2_inner(p: &HPolynomial, q: &HPolynomial) -> Result<Rational> {
    check_pair(p, q)?;
    let d = p.nvars();
    let mut acc = Rational::zero();
    for (ea, ca) in p.terms() {
        for (eb, cb) in q.terms() {
            let sum = ea.add(eb);
            if sum.parity_mask() != 0 {
                continue;
            }
            let dot = ca.dot_unchecked(cb);
            if !dot.is_zero() {
                acc += dot * ball_moment(sum.powers(), d);
            }
        }
    }
    Ok(acc)
}

pub fn l2_norm_sq(p: &HPolynomial) -> Rational {
    l2_inner(p, p).expect("same polynomial")
}

/// Real part of the Fischer pairing `Σ_α (ā_α b_α)₀ α!`; zero unless both
/// are homogeneous of one common degree.
pub fn fischer_inner(p: &HPolynomial, q: &HPolynomial) -> Result<Rational> {
    check_pair(p, q)?;
    match (p.homogeneous_degree(), q.homogeneous_degree()) {
        (Some(a), Some(b)) if a == b => {}
        _ => return Ok(Rational::zero()),
    }
    let mut acc = Rational::zero();
    for (e, a) in p.terms() {
        let b = q.coefficient(e);
        let dot = a.dot_unchecked(&b);
        if !dot.is_zero() {
            acc += dot * e.factorial();
        }
    }
    Ok(acc)
}

/// Full algebra-valued Fischer pairing `Σ_α ā_α b_α α!`.
pub fn fischer_pairing(p: &HPolynomial, q: &HPolynomial) -> Result<crate::algebra::AlgebraElement> {
    check_pair(p, q)?;
    let mut acc = crate::algebra::AlgebraElement::zero(p.kind());
    for (e, a) in p.terms() {
        let b = q.coefficient(e);
        if !b.is_zero() {
            acc = &acc + &(&a.conjugate() * &b).scale(&e.factorial());
        }
    }
    Ok(acc)
}

/// Sparse coordinates grouped by `(blade, exponent parity)`: only entries in
/// the same group can pair to a nonzero moment.
type Groups = HashMap<(Blade, u32), Vec<(Exponent, Rational)>>;

fn group_terms(p: &HPolynomial) -> Groups {
    let mut g: Groups = HashMap::new();
    for (e, c) in p.terms() {
        let parity = e.parity_mask();
        for (b, v) in c.iter() {
            g.entry((b, parity)).or_default().push((e.clone(), v.clone()));
        }
    }
    g
}

/// Gram matrix of the `L²(B)` product on a list of polynomials over one
/// algebra and variable count.
pub fn l2_gram(polys: &[HPolynomial]) -> Result<RationalMatrix> {
    let n = polys.len();
    let mut g = RationalMatrix::zeros(n, n);
    let Some(first) = polys.first() else {
        return Ok(g);
    };
    for p in polys {
        check_pair(first, p)?;
    }
    let d = first.nvars();
    let grouped: Vec<Groups> = polys.iter().map(group_terms).collect();
    let mut members: HashMap<(Blade, u32), Vec<usize>> = HashMap::new();
    for (i, gr) in grouped.iter().enumerate() {
        for key in gr.keys() {
            members.entry(*key).or_default().push(i);
        }
    }
    let mut memo: HashMap<Exponent, Rational> = HashMap::new();
    let mut moment = |e: Exponent| -> Rational {
        memo.entry(e).or_insert_with_key(|e| ball_moment(e.powers(), d)).clone()
    };
    for (key, idx) in &members {
        // W·c_j restricted to the group's exponents, then dot products
        let mut exps: Vec<Exponent> = idx.iter().flat_map(|&i| grouped[i][key].iter().map(|t| t.0.clone())).collect();
        exps.sort();
        exps.dedup();
        let pos: HashMap<&Exponent, usize> = exps.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let w: Vec<Vec<Rational>> = exps.iter().map(|a| exps.iter().map(|b| moment(a.add(b))).collect()).collect();
        let weighted: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&j| {
                let mut y = vec![Rational::zero(); exps.len()];
                for (e, c) in &grouped[j][key] {
                    let col = pos[e];
                    for (r, yr) in y.iter_mut().enumerate() {
                        let m = &w[r][col];
                        if !m.is_zero() {
                            *yr += c * m;
                        }
                    }
                }
                y
            })
            .collect();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                let y = &weighted[b];
                let mut s = Rational::zero();
                for (e, c) in &grouped[i][key] {
                    let v = &y[pos[e]];
                    if !v.is_zero() {
                        s += c * v;
                    }
                }
                if !s.is_zero() {
                    let total = g.get(i, j) + &s;
                    g.set(i, j, total.clone());
                    if i != j {
                        g.set(j, i, total);
                    }
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraElement, AlgebraKind};
    use crate::poly::parse_poly;
    use crate::rational::rat;

    const H: AlgebraKind = AlgebraKind::Quaternion;

    #[test]
    fn moment_examples() {
        assert_eq!(ball_moment(&[2, 0, 0], 3), rat(1, 5));
        assert_eq!(ball_moment(&[1, 2, 0], 3), int(0));
        assert_eq!(ball_moment(&[0, 0, 0, 0], 4), int(1));
        assert_eq!(ball_moment(&[], 5), int(1));
        // permutation invariance through the cache key
        assert_eq!(ball_moment(&[4, 2], 2), ball_moment(&[2, 4], 2));
    }

    #[test]
    fn moments_match_radial_oracle() {
        // ∫ x₁^{2a} over B^d / |B| = (2a−1)!!·d / ((2a+d)·d(d+2)···(d+2a−2)),
        // independently: E[x₁^{2a}] on the sphere is (2a−1)!!/(d(d+2)···(d+2a−2))
        // and the radial factor is d/(2a+d).
        for d in 1..=8i64 {
            for a in 0..=4i64 {
                let mut sphere = Rational::one();
                for j in 0..a {
                    sphere *= rat(2 * j + 1, d + 2 * j);
                }
                let expect = sphere * rat(d, 2 * a + d);
                let mut alpha = vec![0u8; d as usize];
                alpha[0] = 2 * a as u8;
                assert_eq!(ball_moment(&alpha, d as usize), expect, "d={d} a={a}");
            }
        }
    }

    #[test]
    fn l2_examples() {
        let x0 = parse_poly("x0", H, 4).unwrap();
        let x1 = parse_poly("x1", H, 4).unwrap();
        assert_eq!(l2_inner(&x0, &x1).unwrap(), int(0));
        assert_eq!(l2_norm_sq(&x0), rat(1, 6));
        let c3 = parse_poly("x0", AlgebraKind::Clifford(3), 4).unwrap();
        assert!(matches!(l2_inner(&x0, &c3), Err(Error::AlgebraMismatch { .. })));
        let short = parse_poly("x0", H, 3).unwrap();
        assert!(l2_inner(&x0, &short).is_err());
    }

    #[test]
    fn fischer_examples() {
        let p = parse_poly("x0^2*x1^3", H, 4).unwrap();
        assert_eq!(fischer_inner(&p, &p).unwrap(), int(12));
        let x0 = parse_poly("x0", H, 4).unwrap();
        let x1 = parse_poly("x1", H, 4).unwrap();
        assert_eq!(fischer_inner(&x0, &x1).unwrap(), int(0));
        let sq = parse_poly("x0^2", H, 4).unwrap();
        assert_eq!(fischer_inner(&x0, &sq).unwrap(), int(0));
        let a = parse_poly("e[1]*x0 + 2*x1", H, 4).unwrap();
        let pairing = fischer_pairing(&a, &x0).unwrap();
        assert_eq!(pairing, AlgebraElement::parse("-1*e[1]", H).unwrap());
    }

    #[test]
    fn gram_matches_pairwise_products() {
        let polys: Vec<HPolynomial> = ["x0^2 + e[1]*x1*x2", "x1^2 - x3^2", "e[2]*x0*x3 + 1/2*x1^2", "x2^2"]
            .iter()
            .map(|t| parse_poly(t, H, 4).unwrap())
            .collect();
        let g = l2_gram(&polys).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.get(i, j), &l2_inner(&polys[i], &polys[j]).unwrap());
            }
        }
    }
}
