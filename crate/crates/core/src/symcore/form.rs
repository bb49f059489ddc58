use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{default_names, Poly};
use crate::error::{Error, Result};

/// The torus variables `X, Y1, …, Ym`; position 0 is `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Structural("at least one variable is required".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Structural(format!("duplicate variable name {a:?}")));
            }
        }
        Ok(Variables { names })
    }

    pub fn standard(count: usize) -> Self {
        Variables { names: default_names(count) }
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// An integer linear form `Σ c_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<BigInt>);

impl LinearForm {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        LinearForm(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        LinearForm(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn coeff(&self, var: usize) -> &BigInt {
        &self.0[var]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn involves(&self, var: usize) -> bool {
        !self.0[var].is_zero()
    }

    pub fn rational_coeffs(&self) -> Vec<BigRational> {
        self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.rational_coeffs())
    }

    pub fn dot(&self, v: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(v)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn dot_int(&self, v: &[BigInt]) -> BigInt {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Writes `Σ r_i x_i = scale · form` with `form` primitive and its first
    /// nonzero coefficient positive. `None` for the zero form.
    pub fn normalize_rational(coeffs: &[BigRational]) -> Option<(BigRational, LinearForm)> {
        if coeffs.iter().all(Zero::is_zero) {
            return None;
        }
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead = ints.iter().find(|c| !c.is_zero()).unwrap();
        if lead.is_negative() {
            g = -g;
        }
        let form = LinearForm(ints.iter().map(|c| c / &g).collect());
        Some((BigRational::new(g, lcm), form))
    }

    /// `scale · primitive` decomposition of an integer form.
    pub fn normalize(&self) -> Option<(BigRational, LinearForm)> {
        LinearForm::normalize_rational(&self.rational_coeffs())
    }

    pub fn display_with(&self, names: &[String]) -> String {
        self.to_poly().display_with(names)
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalizes_to_primitive_positive_lead() {
        let (s, f) = LinearForm::normalize_rational(&[q(-2, 3), q(4, 3)]).unwrap();
        assert_eq!(f, LinearForm::from_i64(&[1, -2]));
        assert_eq!(s, q(-2, 3));
        let (s, f) = LinearForm::from_i64(&[0, -3]).normalize().unwrap();
        assert_eq!(f, LinearForm::from_i64(&[0, 1]));
        assert_eq!(s, q(-3, 1));
        assert!(LinearForm::from_i64(&[0, 0]).normalize().is_none());
    }

    #[test]
    fn variables_reject_duplicates() {
        assert!(Variables::new(vec!["X".into(), "X".into()]).is_err());
        assert!(Variables::new(vec![]).is_err());
    }
}
