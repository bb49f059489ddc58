//! Elements of `H*(F) ⊗ ℚ[X, Y1, …, Ym]`, stored as one polynomial per
//! algebra basis element.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::GradedAlgebra;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct EquivariantPolynomial {
    algebra: Arc<GradedAlgebra>,
    coeffs: Vec<Poly>,
}

impl PartialEq for EquivariantPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for EquivariantPolynomial {}

pub fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Scale,
}

/// Checked arithmetic; `Scale` multiplies `a` by the pure polynomial part
/// of `b`, which must have no positive-degree algebra component.
pub fn poly_arith(
    a: &EquivariantPolynomial,
    b: &EquivariantPolynomial,
    op: ArithOp,
) -> Result<EquivariantPolynomial> {
    a.check_compatible(b)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Scale => {
            if b.coeffs[1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Structural("scale factor has algebra components".into()));
            }
            a.mul_poly(&b.coeffs[0])
        }
    })
}

impl EquivariantPolynomial {
    pub fn zero(algebra: Arc<GradedAlgebra>, nvars: usize) -> Self {
        let coeffs = vec![Poly::zero(nvars); algebra.dim()];
        EquivariantPolynomial { algebra, coeffs }
    }

    pub fn one(algebra: Arc<GradedAlgebra>, nvars: usize) -> Self {
        Self::from_poly(algebra, Poly::one(nvars))
    }

    /// `p · 1`.
    pub fn from_poly(algebra: Arc<GradedAlgebra>, p: Poly) -> Self {
        let mut e = Self::zero(algebra, p.nvars());
        e.coeffs[0] = p;
        e
    }

    pub fn basis_element(algebra: Arc<GradedAlgebra>, nvars: usize, i: usize) -> Self {
        let mut e = Self::zero(algebra, nvars);
        e.coeffs[i] = Poly::one(nvars);
        e
    }

    pub fn from_coeffs(algebra: Arc<GradedAlgebra>, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::Structural(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                algebra.dim()
            )));
        }
        let n = coeffs[0].nvars();
        if coeffs.iter().any(|c| c.nvars() != n) {
            return Err(Error::Structural("coefficients over different variable sets".into()));
        }
        Ok(EquivariantPolynomial { algebra, coeffs })
    }

    /// Builds from `(coefficient, exponents, basis index)` terms.
    pub fn from_terms(
        algebra: Arc<GradedAlgebra>,
        nvars: usize,
        terms: impl IntoIterator<Item = (BigRational, Vec<u32>, usize)>,
    ) -> Result<Self> {
        let mut e = Self::zero(algebra, nvars);
        for (c, exps, b) in terms {
            if exps.len() != nvars {
                return Err(Error::Structural(format!(
                    "exponent vector of length {} for {nvars} variables",
                    exps.len()
                )));
            }
            if b >= e.algebra.dim() {
                return Err(Error::Structural(format!("basis index {b} out of range")));
            }
            e.coeffs[b].add_term(Monomial::new(exps), c);
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, basis: usize) -> &Poly {
        &self.coeffs[basis]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// The pure `ℚ[X,Y]` part when every positive-degree component vanishes.
    pub fn as_pure(&self) -> Option<&Poly> {
        self.coeffs[1..].iter().all(Poly::is_zero).then_some(&self.coeffs[0])
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::Structural("operands over different coefficient algebras".into()));
        }
        if self.nvars() != other.nvars() {
            return Err(Error::Structural(format!(
                "operands over {} and {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        Ok(())
    }

    /// Cohomological degree `2·|exponent| + deg(basis)` if homogeneous.
    /// The zero element reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut found: Option<u32> = None;
        for (b, p) in self.coeffs.iter().enumerate() {
            for (m, _) in p.terms() {
                let d = 2 * m.degree() + self.algebra.degree(b);
                match found {
                    None => found = Some(d),
                    Some(f) if f != d => return None,
                    _ => {}
                }
            }
        }
        found
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.coeffs.iter().enumerate().all(|(b, p)| {
            p.terms().all(|(m, _)| 2 * m.degree() + self.algebra.degree(b) == degree)
        })
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        EquivariantPolynomial { algebra: self.algebra.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    fn try_map(&self, f: impl Fn(&Poly) -> Option<Poly>) -> Option<Self> {
        let coeffs = self.coeffs.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(EquivariantPolynomial { algebra: self.algebra.clone(), coeffs })
    }

    /// Unchecked sum; callers guarantee compatibility.
    pub fn add(&self, other: &Self) -> Self {
        EquivariantPolynomial {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        EquivariantPolynomial {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &Poly) -> Self {
        self.map(|p| p * q)
    }

    /// Unchecked product through the structure constants.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.nvars();
        let mut out = vec![Poly::zero(n); self.algebra.dim()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.algebra.product(i, j) {
                    out[*k] = &out[*k] + &ab.scale(c);
                }
            }
        }
        EquivariantPolynomial { algebra: self.algebra.clone(), coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.algebra.clone(), self.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn substitute(&self, images: &[Poly]) -> Self {
        self.map(|p| p.substitute(images))
    }

    pub fn linear_substitute(&self, rows: &[Vec<BigRational>]) -> Self {
        self.map(|p| p.linear_substitute(rows))
    }

    pub fn derivative(&self, var: usize) -> Self {
        self.map(|p| p.derivative(var))
    }

    pub fn truncate_in(&self, var: usize, k: u32) -> Self {
        self.map(|p| p.truncate_in(var, k))
    }

    pub fn coeff_in(&self, var: usize, k: u32) -> Self {
        self.map(|p| p.coeff_in(var, k))
    }

    pub fn mul_var_pow(&self, var: usize, k: u32) -> Self {
        self.map(|p| p.mul_var_pow(var, k))
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.coeffs.iter().filter_map(|p| p.degree_in(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.coeffs.iter().any(|p| p.involves(var))
    }

    pub fn mul_truncated_poly(&self, q: &Poly, var: usize, k: u32) -> Self {
        self.map(|p| p.mul_truncated(q, var, k))
    }

    pub fn div_linear(&self, coeffs: &[BigRational]) -> Option<Self> {
        self.try_map(|p| p.div_linear(coeffs))
    }

    /// `∫_F` applied coefficientwise: `Σ_b ∫(e_b)·coeff_b`.
    pub fn integrate(&self) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (b, p) in self.coeffs.iter().enumerate() {
            let w = &self.algebra.integral()[b];
            if !w.is_zero() {
                out = &out + &p.scale(w);
            }
        }
        out
    }

    /// Reinterprets a pure element over another algebra (used to move a
    /// scalar-valued polynomial into `H*(F)`).
    pub fn with_algebra(&self, algebra: Arc<GradedAlgebra>) -> Result<Self> {
        let pure = self
            .as_pure()
            .ok_or_else(|| Error::Structural("element has algebra components".into()))?;
        Ok(Self::from_poly(algebra, pure.clone()))
    }

    /// `(coefficient, exponents, basis index)` terms in canonical order.
    pub fn terms(&self) -> Vec<(BigRational, Vec<u32>, usize)> {
        let mut out = Vec::new();
        for (b, p) in self.coeffs.iter().enumerate() {
            for (m, c) in p.terms().rev() {
                out.push((c.clone(), m.exponents().to_vec(), b));
            }
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(b, p)| {
                if b == 0 {
                    p.display_with(names)
                } else {
                    format!("({})*{}", p.display_with(names), self.algebra.names()[b])
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl std::fmt::Display for EquivariantPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display_with(&super::poly::default_names(self.nvars())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn cp1() -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::projective(1))
    }

    #[test]
    fn nilpotent_square_cancels() {
        let a = cp1();
        let x = EquivariantPolynomial::from_poly(a.clone(), Poly::var(1, 0));
        let u = EquivariantPolynomial::basis_element(a.clone(), 1, 1);
        let p = x.add(&u).mul(&x.sub(&u));
        assert_eq!(p, EquivariantPolynomial::from_poly(a, Poly::var(1, 0).pow(2)));
    }

    #[test]
    fn unit_law_and_degree() {
        let a = cp1();
        let p = EquivariantPolynomial::from_terms(a.clone(), 2, [(int(3), vec![1, 0], 1), (int(1), vec![2, 0], 0)]).unwrap();
        assert_eq!(p.mul(&EquivariantPolynomial::one(a, 2)), p);
        assert_eq!(p.homogeneous_degree(), Some(4));
    }

    #[test]
    fn integrate_cp1() {
        let a = cp1();
        let one = EquivariantPolynomial::one(a.clone(), 2);
        assert!(one.integrate().is_zero());
        // ∫(X·u + Y1) = X
        let p = EquivariantPolynomial::from_terms(a, 2, [(int(1), vec![1, 0], 1), (int(1), vec![0, 1], 0)]).unwrap();
        assert_eq!(p.integrate(), Poly::var(2, 0));
    }

    #[test]
    fn point_integral_is_identity() {
        let a = Arc::new(GradedAlgebra::point());
        let p = EquivariantPolynomial::from_terms(a, 2, [(int(5), vec![3, 1], 0), (int(-2), vec![0, 4], 0)]).unwrap();
        assert_eq!(&p.integrate(), p.coeff(0));
    }

    #[test]
    fn checked_arith_rejects_mismatch() {
        let p = EquivariantPolynomial::one(cp1(), 1);
        let q = EquivariantPolynomial::one(Arc::new(GradedAlgebra::point()), 1);
        assert!(matches!(poly_arith(&p, &q, ArithOp::Add), Err(Error::Structural(_))));
        let r = EquivariantPolynomial::one(cp1(), 2);
        assert!(poly_arith(&p, &r, ArithOp::Mul).is_err());
    }
}
