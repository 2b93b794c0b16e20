//! The three geometric settings: ℍ-valued functions on ℝ⁴ (Weyl operator),
//! ℝₙ-valued functions on ℝⁿ (Dirac operator), 𝕆-valued functions on ℝ⁸.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraElement, AlgebraKind, Blade, MAX_CLIFFORD_GENERATORS};
use crate::error::{Error, Result};
use crate::poly::OperatorSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Setting {
    Quaternion,
    /// Clifford algebra with `n ≥ 3` generators acting on ℝⁿ.
    Clifford(usize),
    Octonion,
}

impl Setting {
    pub fn clifford(n: usize) -> Result<Self> {
        if !(3..=MAX_CLIFFORD_GENERATORS).contains(&n) {
            return Err(Error::UnsupportedClifford(n));
        }
        Ok(Setting::Clifford(n))
    }

    /// The setting whose functions take values in `kind` on `nvars` variables.
    pub fn from_algebra(kind: AlgebraKind, nvars: usize) -> Result<Self> {
        let setting = match kind {
            AlgebraKind::Quaternion => Setting::Quaternion,
            AlgebraKind::Clifford(n) => Setting::clifford(n as usize)?,
            AlgebraKind::Octonion => Setting::Octonion,
        };
        if setting.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: setting.nvars(), found: nvars });
        }
        Ok(setting)
    }

    pub fn kind(self) -> AlgebraKind {
        match self {
            Setting::Quaternion => AlgebraKind::Quaternion,
            Setting::Clifford(n) => AlgebraKind::Clifford(n as u8),
            Setting::Octonion => AlgebraKind::Octonion,
        }
    }

    /// Real dimension of the ambient space: 4, n or 8.
    pub fn dimension(self) -> usize {
        match self {
            Setting::Quaternion => 4,
            Setting::Clifford(n) => n,
            Setting::Octonion => 8,
        }
    }

    pub fn nvars(self) -> usize {
        self.dimension()
    }

    /// The real direction `x₀` (ℍ, 𝕆) or the last coordinate (ℝₙ).
    pub fn distinguished_var(self) -> usize {
        match self {
            Setting::Clifford(n) => n - 1,
            _ => 0,
        }
    }

    pub fn hyperplane_vars(self) -> Vec<usize> {
        let d = self.distinguished_var();
        (0..self.nvars()).filter(|&v| v != d).collect()
    }

    /// Hyperplane coordinates paired with their imaginary units, defining
    /// `x̲ = Σ x_v e_v` and the Dirac operator `D`.
    pub fn vector_pairs(self) -> Vec<(usize, Blade)> {
        let kind = self.kind();
        match self {
            Setting::Clifford(n) => (0..n - 1).map(|v| (v, kind.generator(v + 1))).collect(),
            _ => (1..self.nvars()).map(|v| (v, kind.generator(v))).collect(),
        }
    }

    /// `D` on the hyperplane.
    pub fn hyperplane_operator(self) -> OperatorSpec {
        OperatorSpec::Dirac(self.vector_pairs())
    }

    /// Operator defining monogenicity on the whole space.
    pub fn ambient_operator(self) -> OperatorSpec {
        match self {
            Setting::Clifford(n) => {
                let mut pairs = self.vector_pairs();
                pairs.push((n - 1, self.kind().generator(n)));
                OperatorSpec::Dirac(pairs)
            }
            _ => OperatorSpec::Weyl { real: 0, pairs: self.vector_pairs() },
        }
    }

    /// Unit attached to the distinguished direction: 1, or `e_n` in ℝₙ.
    pub fn distinguished_unit(self) -> AlgebraElement {
        match self {
            Setting::Clifford(n) => AlgebraElement::generator(self.kind(), n),
            _ => AlgebraElement::one(self.kind()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Setting::Quaternion => "quaternion",
            Setting::Clifford(_) => "clifford",
            Setting::Octonion => "octonion",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::Clifford(n) => write!(f, "clifford({n})"),
            other => write!(f, "{}", other.name()),
        }
    }
}

impl FromStr for Setting {
    type Err = Error;

    /// Accepts `quaternion`, `octonion`, `clifford(n)` and `clifford:n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "quaternion" | "h" => return Ok(Setting::Quaternion),
            "octonion" | "o" => return Ok(Setting::Octonion),
            _ => {}
        }
        let n = s
            .strip_prefix("clifford")
            .map(|r| r.trim_start_matches([':', '(']).trim_end_matches(')'))
            .and_then(|r| r.parse::<usize>().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown setting '{s}'")))?;
        Setting::clifford(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roles() {
        let c = Setting::clifford(4).unwrap();
        assert_eq!(c.distinguished_var(), 3);
        assert_eq!(c.hyperplane_vars(), vec![0, 1, 2]);
        assert_eq!(c.vector_pairs(), vec![(0, Blade(1)), (1, Blade(2)), (2, Blade(4))]);
        assert_eq!(Setting::Octonion.vector_pairs().len(), 7);
        assert_eq!(Setting::Quaternion.vector_pairs()[2], (3, Blade(3)));
        assert!(Setting::clifford(2).is_err());
        assert!(Setting::clifford(13).is_err());
        assert_eq!(Setting::from_algebra(AlgebraKind::Clifford(5), 5).unwrap(), Setting::Clifford(5));
        assert!(Setting::from_algebra(AlgebraKind::Octonion, 4).is_err());
    }

    #[test]
    fn parse_names() {
        for s in [Setting::Quaternion, Setting::Octonion, Setting::Clifford(5)] {
            assert_eq!(s.to_string().parse::<Setting>().unwrap(), s);
        }
        assert_eq!("clifford:3".parse::<Setting>().unwrap(), Setting::Clifford(3));
        assert!("sedenion".parse::<Setting>().is_err());
    }
}
