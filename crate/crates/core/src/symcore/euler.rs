//! Equivariant Euler classes `∏ (⟨w_i,(X,Y)⟩ + c_i)` and their inverses.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::algebra::GradedAlgebra;
use super::equivariant::EquivariantPolynomial;
use super::form::LinearForm;
use super::poly::Poly;
use super::section::RationalSection;
use crate::error::{Error, Result};

/// One equivariant line bundle in a normal bundle splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalLine {
    pub weight: LinearForm,
    /// First Chern class as coefficients over the algebra basis.
    pub chern: Vec<BigRational>,
}

impl NormalLine {
    pub fn new(weight: LinearForm, chern: Vec<BigRational>) -> Self {
        NormalLine { weight, chern }
    }

    /// A line with trivial Chern class.
    pub fn flat(weight: LinearForm, algebra_dim: usize) -> Self {
        NormalLine { weight, chern: vec![BigRational::zero(); algebra_dim] }
    }

    fn chern_class(&self, algebra: &Arc<GradedAlgebra>, nvars: usize) -> EquivariantPolynomial {
        let polys = self.chern.iter().map(|c| Poly::constant(nvars, c.clone())).collect();
        EquivariantPolynomial::from_coeffs(algebra.clone(), polys).expect("checked length")
    }
}

fn check_lines(algebra: &GradedAlgebra, nvars: usize, lines: &[NormalLine]) -> Result<()> {
    for (i, l) in lines.iter().enumerate() {
        if l.weight.nvars() != nvars {
            return Err(Error::Structural(format!(
                "line {i}: weight has {} entries, expected {nvars}",
                l.weight.nvars()
            )));
        }
        if l.chern.len() != algebra.dim() {
            return Err(Error::Structural(format!(
                "line {i}: Chern class has {} coefficients, algebra has dimension {}",
                l.chern.len(),
                algebra.dim()
            )));
        }
        for (b, c) in l.chern.iter().enumerate() {
            if !c.is_zero() && algebra.degree(b) != 2 {
                return Err(Error::Structural(format!(
                    "line {i}: Chern class has a component on {} of degree {}",
                    algebra.names()[b],
                    algebra.degree(b)
                )));
            }
        }
    }
    Ok(())
}

pub fn euler_class(
    algebra: &Arc<GradedAlgebra>,
    nvars: usize,
    lines: &[NormalLine],
) -> Result<EquivariantPolynomial> {
    check_lines(algebra, nvars, lines)?;
    let mut e = EquivariantPolynomial::one(algebra.clone(), nvars);
    for l in lines {
        let factor = EquivariantPolynomial::from_poly(algebra.clone(), l.weight.to_poly())
            .add(&l.chern_class(algebra, nvars));
        e = e.mul(&factor);
    }
    Ok(e)
}

/// `1/e_F = ∏_i Σ_r (−c_i)^r / L_i^{r+1}`, finite because each `c_i` is
/// nilpotent; all terms share the denominator `∏ L_i^{N_i+1}`.
pub fn invert_euler(
    algebra: &Arc<GradedAlgebra>,
    nvars: usize,
    lines: &[NormalLine],
) -> Result<RationalSection> {
    check_lines(algebra, nvars, lines)?;
    let mut num = EquivariantPolynomial::one(algebra.clone(), nvars);
    let mut den = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        if l.weight.is_zero() {
            return Err(Error::SingularEuler(format!("line {i} has zero weight")));
        }
        let neg_c = l.chern_class(algebra, nvars).neg();
        let mut powers = vec![EquivariantPolynomial::one(algebra.clone(), nvars)];
        loop {
            let next = powers.last().unwrap().mul(&neg_c);
            if next.is_zero() {
                break;
            }
            powers.push(next);
        }
        let n = powers.len() - 1;
        let lin = l.weight.to_poly();
        let mut factor = EquivariantPolynomial::zero(algebra.clone(), nvars);
        for (r, p) in powers.iter().enumerate() {
            factor = factor.add(&p.mul_poly(&lin.pow((n - r) as u32)));
        }
        num = num.mul(&factor);
        den.push((l.weight.clone(), n as u32 + 1));
    }
    RationalSection::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn cp1_two_term_series() {
        let a = Arc::new(GradedAlgebra::projective(1));
        let line = NormalLine::new(LinearForm::from_i64(&[1, 0]), vec![int(0), int(1)]);
        let inv = invert_euler(&a, 2, std::slice::from_ref(&line)).unwrap();
        // 1/X − u/X²
        let x = Poly::var(2, 0);
        let expected = RationalSection::new(
            EquivariantPolynomial::from_coeffs(a.clone(), vec![x, Poly::constant(2, int(-1))]).unwrap(),
            [(LinearForm::from_i64(&[1, 0]), 2)],
        )
        .unwrap();
        assert!(inv.equals(&expected));
        let e = euler_class(&a, 2, &[line]).unwrap();
        assert!(inv.mul_num(&e).unwrap().to_polynomial().unwrap() == EquivariantPolynomial::one(a, 2));
    }

    #[test]
    fn point_lines_multiply() {
        let a = Arc::new(GradedAlgebra::point());
        let lines = [
            NormalLine::flat(LinearForm::from_i64(&[1, 0]), 1),
            NormalLine::flat(LinearForm::from_i64(&[-1, 1]), 1),
        ];
        let e = euler_class(&a, 2, &lines).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(e.coeff(0), &(&(&x * &y) - &x.pow(2)));
        let inv = invert_euler(&a, 2, &lines).unwrap();
        assert_eq!(inv.den().len(), 2);
    }

    #[test]
    fn zero_weight_is_singular() {
        let a = Arc::new(GradedAlgebra::point());
        let lines = [NormalLine::flat(LinearForm::from_i64(&[0, 0]), 1)];
        assert!(matches!(invert_euler(&a, 2, &lines), Err(Error::SingularEuler(_))));
    }
}
