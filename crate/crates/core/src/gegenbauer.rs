//! Univariate rational polynomials and the Gegenbauer family `C_ν^μ`.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{int, Rational};

/// Dense univariate polynomial, `coeffs[j]` multiplying `t^j`. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
    /// Gegenbauer parameter when built by [`gegenbauer`].
    pub mu: Option<Rational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs, mu: None }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `Some(0)` if even, `Some(1)` if odd, `None` if mixed (zero is even).
    pub fn parity(&self) -> Option<usize> {
        let even = self.coeffs.iter().step_by(2).any(|c| !c.is_zero());
        let odd = self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero());
        match (even, odd) {
            (_, false) => Some(0),
            (false, true) => Some(1),
            (true, true) => None,
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c * int(j as i64)).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `C_ν^μ(t)` by the three-term recurrence
/// `ν C_ν = 2t(ν+μ−1) C_{ν−1} − (ν+2μ−2) C_{ν−2}`.
pub fn gegenbauer(nu: usize, mu: &Rational) -> UnivariatePoly {
    let mut prev = UnivariatePoly::constant(Rational::one());
    let mut cur = UnivariatePoly::t().scale(&(mu * int(2)));
    if nu == 0 {
        prev.mu = Some(mu.clone());
        return prev;
    }
    for k in 2..=nu {
        let k_r = int(k as i64);
        let a = UnivariatePoly::t().mul(&cur).scale(&((&k_r + mu - int(1)) * int(2)));
        let b = prev.scale(&(&k_r + mu * int(2) - int(2)));
        let next = a.sub(&b).scale(&(Rational::one() / &k_r));
        prev = cur;
        cur = next;
    }
    cur.mu = Some(mu.clone());
    cur
}

/// `∫_{−1}^{1} p(t)(1−t²)^{μ−1/2} dt` divided by the same integral of 1,
/// using `m_j / m_{j−2} = (j−1)/(j+2μ)` for the even moments.
pub fn weighted_integral(p: &UnivariatePoly, mu: &Rational) -> Rational {
    let mut moment = Rational::one();
    let mut acc = Rational::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        if j >= 2 && j % 2 == 0 {
            moment = moment * int(j as i64 - 1) / (int(j as i64) + mu * int(2));
        }
        if j % 2 == 0 {
            acc += c * &moment;
        }
    }
    acc
}

/// `Γ(a + k) / Γ(a) = a(a+1)···(a+k−1)`.
pub fn rising_factorial(a: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}

/// Ratio `‖C_ν^μ‖² / ‖C_{ν′}^μ‖²` of the weighted norms from the closed form
/// `∝ Γ(ν+2μ) / (ν!(ν+μ))`, which is rational for rational `μ`.
pub fn closed_form_norm_ratio(nu: usize, nu_prime: usize, mu: &Rational) -> Rational {
    let fact = |k: usize| (1..=k).fold(Rational::one(), |acc, i| acc * int(i as i64));
    let two_mu = mu * int(2);
    let gamma_ratio = if nu >= nu_prime {
        rising_factorial(&(&two_mu + int(nu_prime as i64)), nu - nu_prime)
    } else {
        Rational::one() / rising_factorial(&(&two_mu + int(nu as i64)), nu_prime - nu)
    };
    gamma_ratio * fact(nu_prime) * (int(nu_prime as i64) + mu) / (fact(nu) * (int(nu as i64) + mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn low_orders() {
        let mu = rat(3, 2);
        assert_eq!(gegenbauer(0, &mu).coeffs(), &[int(1)]);
        assert_eq!(gegenbauer(1, &mu).coeffs(), &[int(0), int(3)]);
        // C₂^μ = 2μ(μ+1)t² − μ
        let c2 = gegenbauer(2, &int(1));
        assert_eq!(c2.coeffs(), &[int(-1), int(0), int(4)]);
    }

    #[test]
    fn matches_generating_function() {
        // coefficients of x^ν in (1 − 2xt + x²)^{−μ} = Σ_k binom(−μ,k)(x² − 2xt)^k
        let mu = rat(5, 2);
        let order = 6;
        // expand on the grid of (x power, t power)
        let mut grid = vec![vec![Rational::zero(); order + 1]; order + 1];
        let mut binom = Rational::one();
        for k in 0..=order {
            if k > 0 {
                binom = binom * (-&mu - int(k as i64 - 1)) / int(k as i64);
            }
            // (x² − 2xt)^k = Σ_j C(k,j) x^{2(k−j)} (−2xt)^j
            let mut c = Rational::one();
            for j in 0..=k {
                if j > 0 {
                    c = c * int((k - j + 1) as i64) / int(j as i64);
                }
                let xp = 2 * (k - j) + j;
                if xp <= order {
                    let sign = if j % 2 == 1 { int(-1) } else { int(1) };
                    grid[xp][j] += &binom * &c * sign * int(1 << j);
                }
            }
        }
        for nu in 0..=order {
            let g = gegenbauer(nu, &mu);
            for j in 0..=order {
                assert_eq!(g.coeff(j), grid[nu][j], "nu={nu} t^{j}");
            }
            assert_eq!(g.degree(), Some(nu));
            assert_eq!(g.parity(), Some(nu % 2));
        }
    }

    #[test]
    fn univariate_arithmetic() {
        let p = UnivariatePoly::new(vec![int(1), int(2), int(0)]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&int(3)), int(7));
        assert_eq!(p.mul(&p).coeffs(), &[int(1), int(4), int(4)]);
        assert_eq!(p.derivative().coeffs(), &[int(2)]);
        assert_eq!(p.sub(&p), UnivariatePoly::zero());
        assert_eq!(p.to_string(), "(2)*t + 1");
    }

    #[test]
    fn weighted_integral_half_integer_weight() {
        // μ = 1/2: weight 1, so ∫t²/∫1 = 1/3 and ∫t⁴/∫1 = 1/5
        let half = rat(1, 2);
        assert_eq!(weighted_integral(&UnivariatePoly::new(vec![int(0), int(0), int(1)]), &half), rat(1, 3));
        assert_eq!(
            weighted_integral(&UnivariatePoly::new(vec![int(0), int(0), int(0), int(0), int(1)]), &half),
            rat(1, 5)
        );
        // μ = 3/2: weight 1 − t², ∫t²(1−t²)/∫(1−t²) = (4/15)/(4/3) = 1/5
        assert_eq!(weighted_integral(&UnivariatePoly::new(vec![int(0), int(0), int(1)]), &rat(3, 2)), rat(1, 5));
    }
}
