use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::symcore::{EquivariantPolynomial, NormalLine, Poly};

/// `∫_F γ_{−1}`, where `γ_{−1}` is the `X^{-1}` coefficient of `α/e_F`
/// expanded in `1/X` with algebra-valued coefficients:
/// `1/(mX + γ) = (1/(mX)) Σ_r (−γ/m)^r X^{−r}`, `γ = β(Y) + c_1(L)`.
pub fn gk_residue(alpha: &EquivariantPolynomial, lines: &[NormalLine]) -> Result<Poly> {
    let algebra = alpha.algebra().clone();
    let n = alpha.nvars();
    // validates lengths and Chern degrees
    crate::symcore::euler_class(&algebra, n, lines)?;
    for (i, l) in lines.iter().enumerate() {
        if l.weight.coeff(0).is_zero() {
            return Err(Error::NonGenericWeight(format!("line {i} has weight {}", l.weight)));
        }
    }
    let deg_p = match alpha.degree_in(0) {
        Some(d) => d as i64,
        None => return Ok(Poly::zero(n)),
    };
    let d_total = lines.len() as i64;
    let s_max = deg_p + 1 - d_total;
    if s_max < 0 {
        return Ok(Poly::zero(n));
    }
    let len = s_max as usize + 1;

    let one = EquivariantPolynomial::one(algebra.clone(), n);
    let mut series = vec![EquivariantPolynomial::zero(algebra.clone(), n); len];
    series[0] = one.clone();
    let mut m_prod = BigRational::one();
    for l in lines {
        let m = BigRational::from_integer(l.weight.coeff(0).clone());
        let mut beta = l.weight.rational_coeffs();
        beta[0] = BigRational::zero();
        let chern: Vec<Poly> = l.chern.iter().map(|c| Poly::constant(n, c.clone())).collect();
        let gamma = EquivariantPolynomial::from_coeffs(algebra.clone(), chern)?
            .add(&EquivariantPolynomial::from_poly(algebra.clone(), Poly::linear(&beta)));
        let ratio = gamma.scale(&(-m.recip()));
        let mut factor = Vec::with_capacity(len);
        let mut power = one.clone();
        for _ in 0..len {
            factor.push(power.clone());
            power = power.mul(&ratio);
        }
        let mut next = vec![EquivariantPolynomial::zero(algebra.clone(), n); len];
        for (i, a) in series.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().enumerate().take(len - i) {
                next[i + j] = next[i + j].add(&a.mul(b));
            }
        }
        series = next;
        m_prod *= m;
    }

    let mut gamma_minus_one = EquivariantPolynomial::zero(algebra, n);
    for i in 0..=deg_p {
        let s = i + 1 - d_total;
        if s < 0 {
            continue;
        }
        let a_i = alpha.coeff_in(0, i as u32);
        if !a_i.is_zero() {
            gamma_minus_one = gamma_minus_one.add(&a_i.mul(&series[s as usize]));
        }
    }
    Ok(gamma_minus_one.scale(&m_prod.recip()).integrate())
}
