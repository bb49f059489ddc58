use num_rational::BigRational;
use num_traits::Zero;

use super::{binom_neg, check_var, pow_rational, split_den, zero_section};
use crate::error::{Error, Result};
use crate::symcore::{LinearForm, Poly, RationalSection};

/// Residue at the pole of one denominator form `L = a·x + β`, located at
/// `x = b := −β/a`.
#[derive(Clone, Debug)]
pub struct PoleResidue {
    pub form: LinearForm,
    pub multiplicity: u32,
    /// Coefficients of `b` over all variables (zero at the eliminated one).
    pub location: Vec<BigRational>,
    pub residue: RationalSection,
}

/// Per-pole residues in `var`. Distinct normalized forms have distinct poles,
/// so each dependent form contributes exactly one entry.
///
/// At `x = b + t`, each other dependent form is `c' + a't` with `c' = L'(b)`,
/// and `1/(c' + a't)^{e'}` is expanded to order `t^{k−1}`, pre-multiplied by
/// `c'^{e'+k−1}` to stay polynomial.
pub fn residues_by_pole(h: &RationalSection, var: usize) -> Result<Vec<PoleResidue>> {
    check_var(h, var)?;
    let (dep, indep) = split_den(h.den(), var);
    let n = h.nvars();
    let mut out = Vec::with_capacity(dep.len());
    for (pi, (form, k)) in dep.iter().enumerate() {
        let a = BigRational::from_integer(form.coeff(var).clone());
        let location: Vec<BigRational> = (0..n)
            .map(|i| {
                if i == var {
                    BigRational::zero()
                } else {
                    -BigRational::from_integer(form.coeff(i).clone()) / &a
                }
            })
            .collect();
        let b = Poly::linear(&location);
        let images: Vec<Poly> = (0..n)
            .map(|i| if i == var { &b + &Poly::var(n, var) } else { Poly::var(n, i) })
            .collect();
        let mut acc = h.num().substitute(&images).truncate_in(var, *k);

        let mut factors: Vec<(Vec<BigRational>, u32)> = indep
            .iter()
            .map(|(f, e)| (f.rational_coeffs(), *e))
            .collect();
        for (pj, (other, e)) in dep.iter().enumerate() {
            if pj == pi {
                continue;
            }
            let a2 = BigRational::from_integer(other.coeff(var).clone());
            let c: Vec<BigRational> = (0..n)
                .map(|i| {
                    if i == var {
                        BigRational::zero()
                    } else {
                        BigRational::from_integer(other.coeff(i).clone()) + &a2 * &location[i]
                    }
                })
                .collect();
            if c.iter().all(Zero::is_zero) {
                return Err(Error::NonGenericOrdering(format!(
                    "forms {form} and {other} share a pole in variable {var}"
                )));
            }
            let c_poly = Poly::linear(&c);
            let mut series = Poly::zero(n);
            for r in 0..*k as usize {
                let coeff = binom_neg(*e, r) * pow_rational(&a2, r as u32);
                let term = c_poly.pow(*k - 1 - r as u32).scale(&coeff).mul_var_pow(var, r as u32);
                series = &series + &term;
            }
            acc = acc.mul_truncated_poly(&series, var, *k);
            factors.push((c, e + k - 1));
        }
        let top = acc.coeff_in(var, k - 1).scale(&pow_rational(&a, *k).recip());
        let residue = RationalSection::with_rational_factors(top, factors)?;
        out.push(PoleResidue { form: form.clone(), multiplicity: *k, location, residue });
    }
    Ok(out)
}

/// `Res^+` as the sum of the per-pole residues.
pub fn res_partial_fractions(h: &RationalSection, var: usize) -> Result<RationalSection> {
    let (_, indep) = split_den(h.den(), var);
    let mut total = zero_section(h, indep)?;
    for p in residues_by_pole(h, var)? {
        total = total.add(&p.residue)?;
    }
    Ok(total.reduce())
}
