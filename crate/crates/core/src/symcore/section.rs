//! Rational sections `p / ∏ L_j^{k_j}` with an explicit, factored denominator.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::algebra::GradedAlgebra;
use super::equivariant::EquivariantPolynomial;
use super::form::LinearForm;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Multiset of primitive linear forms (first nonzero coefficient positive).
pub type Denominator = BTreeMap<LinearForm, u32>;

#[derive(Clone, Debug)]
pub struct RationalSection {
    num: EquivariantPolynomial,
    den: Denominator,
}

impl RationalSection {
    /// Normalizes every factor to its primitive representative, moving the
    /// scale into the numerator. Zero factors are rejected.
    pub fn new(
        num: EquivariantPolynomial,
        factors: impl IntoIterator<Item = (LinearForm, u32)>,
    ) -> Result<Self> {
        let mut den = Denominator::new();
        let mut scale = BigRational::one();
        for (form, k) in factors {
            if form.nvars() != num.nvars() {
                return Err(Error::Structural(format!(
                    "denominator form over {} variables, numerator over {}",
                    form.nvars(),
                    num.nvars()
                )));
            }
            if k == 0 {
                continue;
            }
            let (s, f) = form
                .normalize()
                .ok_or_else(|| Error::SingularEuler("zero linear form in denominator".into()))?;
            for _ in 0..k {
                scale *= &s;
            }
            *den.entry(f).or_insert(0) += k;
        }
        let num = if scale.is_one() { num } else { num.scale(&scale.recip()) };
        Ok(RationalSection { num, den })
    }

    /// Same as [`new`](Self::new) with rational factor coefficients.
    pub fn with_rational_factors(
        num: EquivariantPolynomial,
        factors: impl IntoIterator<Item = (Vec<BigRational>, u32)>,
    ) -> Result<Self> {
        let mut scale = BigRational::one();
        let mut forms = Vec::new();
        for (coeffs, k) in factors {
            if coeffs.len() != num.nvars() {
                return Err(Error::Structural("denominator form has wrong length".into()));
            }
            let (s, f) = LinearForm::normalize_rational(&coeffs)
                .ok_or_else(|| Error::NonGenericOrdering("denominator factor degenerates to zero".into()))?;
            for _ in 0..k {
                scale *= &s;
            }
            forms.push((f, k));
        }
        RationalSection::new(num.scale(&scale.recip()), forms)
    }

    pub fn from_poly(num: EquivariantPolynomial) -> Self {
        RationalSection { num, den: Denominator::new() }
    }

    /// A scalar (point-algebra) section.
    pub fn scalar(p: Poly, factors: impl IntoIterator<Item = (LinearForm, u32)>) -> Result<Self> {
        RationalSection::new(EquivariantPolynomial::from_poly(point_algebra(), p), factors)
    }

    pub fn num(&self) -> &EquivariantPolynomial {
        &self.num
    }

    pub fn den(&self) -> &Denominator {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.num.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Product of the denominator factors as a polynomial.
    pub fn den_poly(&self) -> Poly {
        den_poly(&self.den, self.nvars())
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        self.num.check_compatible(&other.num)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let a = self.num.mul_poly(&cofactor(&den, &self.den, self.nvars()));
        let b = other.num.mul_poly(&cofactor(&den, &other.den, self.nvars()));
        Ok(RationalSection { num: a.add(&b), den })
    }

    pub fn neg(&self) -> Self {
        RationalSection { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        Ok(RationalSection { num: self.num.mul(&other.num), den })
    }

    pub fn mul_num(&self, p: &EquivariantPolynomial) -> Result<Self> {
        self.num.check_compatible(p)?;
        Ok(RationalSection { num: self.num.mul(p), den: self.den.clone() })
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RationalSection { num: self.num.mul_poly(p), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalSection { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> Self {
        let mut num = self.num.clone();
        let mut den = Denominator::new();
        if num.is_zero() {
            return RationalSection { num, den };
        }
        for (f, &k) in &self.den {
            let coeffs = f.rational_coeffs();
            let mut left = k;
            while left > 0 {
                match num.div_linear(&coeffs) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(f.clone(), left);
            }
        }
        RationalSection { num, den }
    }

    /// Equality of the represented rational sections, by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        if self.check_compatible(other).is_err() {
            return false;
        }
        let a = self.num.mul_poly(&other.den_poly());
        let b = other.num.mul_poly(&self.den_poly());
        a == b
    }

    /// The numerator, if the reduced section has no denominator.
    pub fn to_polynomial(&self) -> Option<EquivariantPolynomial> {
        let r = self.reduce();
        r.den.is_empty().then_some(r.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.to_polynomial().is_some()
    }

    /// `∂/∂x_var`, exact: `(N'·∏L − N·Σ k·∂L·∏_{L'≠L} L') / (D·∏L)`.
    pub fn derivative(&self, var: usize) -> Self {
        let n = self.nvars();
        let involved: Vec<(&LinearForm, u32)> =
            self.den.iter().filter(|(f, _)| f.involves(var)).map(|(f, &k)| (f, k)).collect();
        if involved.is_empty() {
            return RationalSection { num: self.num.derivative(var), den: self.den.clone() };
        }
        let forms: Vec<Poly> = involved.iter().map(|(f, _)| f.to_poly()).collect();
        let all = forms.iter().fold(Poly::one(n), |acc, p| &acc * p);
        let mut num = self.num.derivative(var).mul_poly(&all);
        for (i, (f, k)) in involved.iter().enumerate() {
            let others = forms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Poly::one(n), |acc, (_, p)| &acc * p);
            let c = BigRational::from_integer(f.coeff(var) * BigInt::from(*k));
            num = num.sub(&self.num.mul_poly(&others.scale(&c)));
        }
        let mut den = self.den.clone();
        for (f, _) in involved {
            *den.get_mut(f).unwrap() += 1;
        }
        RationalSection { num, den }
    }

    /// `∫_F` applied to the numerator; the result is a scalar section.
    pub fn integrate(&self) -> Self {
        let num = EquivariantPolynomial::from_poly(point_algebra(), self.num.integrate());
        RationalSection { num, den: self.den.clone() }
    }

    /// Change of variables `x = U x'`: polynomials are substituted, forms
    /// transform by `w ↦ Uᵀ w`.
    pub fn change_basis(&self, u: &[Vec<BigInt>]) -> Self {
        let rows: Vec<Vec<BigRational>> = u
            .iter()
            .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
            .collect();
        let num = self.num.linear_substitute(&rows);
        let n = self.nvars();
        let factors = self.den.iter().map(|(f, &k)| {
            let w: Vec<BigInt> = (0..n)
                .map(|j| (0..n).map(|i| &u[i][j] * f.coeff(i)).sum())
                .collect();
            (LinearForm::new(w), k)
        });
        RationalSection::new(num, factors.collect::<Vec<_>>()).expect("unimodular change keeps forms nonzero")
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let num = self.num.display_with(names);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, &k)| {
                let s = format!("({})", f.display_with(names));
                if k == 1 {
                    s
                } else {
                    format!("{s}^{k}")
                }
            })
            .collect();
        format!("({num}) / ({})", den.join("*"))
    }
}

impl std::fmt::Display for RationalSection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display_with(&super::poly::default_names(self.nvars())))
    }
}

pub fn point_algebra() -> Arc<GradedAlgebra> {
    thread_local! {
        static POINT: Arc<GradedAlgebra> = Arc::new(GradedAlgebra::point());
    }
    POINT.with(Arc::clone)
}

pub fn den_poly(den: &Denominator, nvars: usize) -> Poly {
    den.iter()
        .fold(Poly::one(nvars), |acc, (f, &k)| &acc * &f.to_poly().pow(k))
}

/// `full / part` for multisets with `part ⊆ full`.
fn cofactor(full: &Denominator, part: &Denominator, nvars: usize) -> Poly {
    let mut out = Poly::one(nvars);
    for (f, &k) in full {
        let extra = k - part.get(f).copied().unwrap_or(0);
        if extra > 0 {
            out = &out * &f.to_poly().pow(extra);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn form(c: &[i64]) -> LinearForm {
        LinearForm::from_i64(c)
    }

    fn scalar(p: Poly, f: &[(&[i64], u32)]) -> RationalSection {
        RationalSection::scalar(p, f.iter().map(|(c, k)| (form(c), *k))).unwrap()
    }

    #[test]
    fn normalization_merges_proportional_forms() {
        // 1/(−X) · 1/(2X) = −1/(2X²)
        let a = scalar(Poly::one(1), &[(&[-1], 1), (&[2], 1)]);
        assert_eq!(a.den().get(&form(&[1])), Some(&2));
        assert_eq!(a.num().coeff(0).constant_term(), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn partial_fraction_identity() {
        // 1/(X(X−Y1)) = (1/Y1)(1/(X−Y1) − 1/X)
        let lhs = scalar(Poly::one(2), &[(&[1, 0], 1), (&[1, -1], 1)]);
        let a = scalar(Poly::one(2), &[(&[1, -1], 1), (&[0, 1], 1)]);
        let b = scalar(Poly::one(2), &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(lhs.equals(&a.sub(&b).unwrap()));
    }

    #[test]
    fn reduce_cancels_factors() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let num = &(&x - &y) * &x;
        let s = scalar(num, &[(&[1, -1], 2), (&[0, 1], 1)]);
        let r = s.reduce();
        assert_eq!(r.den().len(), 2);
        assert_eq!(r.den().get(&form(&[1, -1])), Some(&1));
        assert!(r.equals(&s));
        assert!(scalar(x.clone(), &[(&[1, 0], 1)]).is_polynomial());
    }

    #[test]
    fn derivative_of_inverse_power() {
        // d/dX X^{-2} = −2 X^{-3}
        let s = scalar(Poly::one(1), &[(&[1], 2)]);
        let d = s.derivative(0);
        assert!(d.equals(&scalar(Poly::constant(1, rational(-2)), &[(&[1], 3)])));
    }

    #[test]
    fn change_basis_round_trip() {
        let x = Poly::var(2, 0);
        let s = scalar(x, &[(&[1, 1], 1), (&[0, 1], 2)]);
        let u = vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(0), BigInt::from(1)]];
        let uinv = vec![vec![BigInt::from(1), BigInt::from(-2)], vec![BigInt::from(0), BigInt::from(1)]];
        assert!(s.change_basis(&u).change_basis(&uinv).equals(&s));
    }
}
