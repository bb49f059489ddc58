use num_rational::BigRational;
use num_traits::One;

use super::{binom_neg, check_var, pow_rational, series_mul, split_den, zero_section};
use crate::error::Result;
use crate::symcore::{EquivariantPolynomial, Poly, RationalSection};

/// `Res^+` as the coefficient of `var^{-1}` in the expansion at infinity.
///
/// With `L_j = a_j·x + β_j`, the dependent part of the denominator is
/// `x^{-D}/A · S(1/x)` where `S = ∏_j (1 + β_j/(a_j x))^{-k_j}`; only
/// `S_0 … S_{deg p + 1 − D}` can meet the `x^{-1}` coefficient.
pub fn res_laurent(h: &RationalSection, var: usize) -> Result<RationalSection> {
    check_var(h, var)?;
    let (dep, indep) = split_den(h.den(), var);
    let n = h.nvars();
    let num = h.num();
    let deg_p = match num.degree_in(var) {
        Some(d) => d as i64,
        None => return zero_section(h, indep),
    };
    let d_total: i64 = dep.iter().map(|(_, k)| *k as i64).sum();
    let s_max = deg_p + 1 - d_total;
    if s_max < 0 || dep.is_empty() {
        return zero_section(h, indep);
    }
    let len = s_max as usize + 1;

    let mut series = vec![Poly::zero(n); len];
    series[0] = Poly::one(n);
    let mut a_prod = BigRational::one();
    for (f, k) in &dep {
        let a = BigRational::from_integer(f.coeff(var).clone());
        let mut beta = f.rational_coeffs();
        beta[var] = BigRational::from_integer(0.into());
        let beta = Poly::linear(&beta).scale(&a.recip());
        let mut factor = Vec::with_capacity(len);
        let mut power = Poly::one(n);
        for r in 0..len {
            factor.push(power.scale(&binom_neg(*k, r)));
            power = &power * &beta;
        }
        series = series_mul(&series, &factor, len);
        a_prod *= pow_rational(&a, *k);
    }

    let mut out = EquivariantPolynomial::zero(h.algebra().clone(), n);
    for i in 0..=deg_p {
        let s = i + 1 - d_total;
        if s < 0 {
            continue;
        }
        let p_i = num.coeff_in(var, i as u32);
        if p_i.is_zero() {
            continue;
        }
        out = out.add(&p_i.mul_poly(&series[s as usize]));
    }
    RationalSection::new(out.scale(&a_prod.recip()), indep)
}
