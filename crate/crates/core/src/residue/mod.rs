//! `Res_X^+` — the sum of residues over all finite poles in one variable —
//! and iterated residues over an ordering of all variables.

mod gk;
mod iterated;
mod laurent;
mod poles;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::symcore::{Denominator, EquivariantPolynomial, LinearForm, Poly, RationalSection};

pub use gk::gk_residue;
pub use iterated::{iterated_res, selected_iterated_res, VariableOrdering, WeightedSection};
pub use laurent::res_laurent;
pub use poles::{res_partial_fractions, residues_by_pole, PoleResidue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMethod {
    PartialFractions,
    Laurent,
}

/// `Res^+` in `var`, by partial fractions. The result does not involve `var`.
pub fn res_x_plus(h: &RationalSection, var: usize) -> Result<RationalSection> {
    res_partial_fractions(h, var)
}

pub fn res_x_plus_with(h: &RationalSection, var: usize, method: ResidueMethod) -> Result<RationalSection> {
    match method {
        ResidueMethod::PartialFractions => res_partial_fractions(h, var),
        ResidueMethod::Laurent => res_laurent(h, var),
    }
}

fn check_var(h: &RationalSection, var: usize) -> Result<()> {
    if var >= h.nvars() {
        return Err(Error::Structural(format!(
            "variable index {var} out of range for {} variables",
            h.nvars()
        )));
    }
    Ok(())
}

/// Forms involving `var`, and the rest.
fn split_den(den: &Denominator, var: usize) -> (Vec<(LinearForm, u32)>, Vec<(LinearForm, u32)>) {
    den.iter()
        .map(|(f, &k)| (f.clone(), k))
        .partition(|(f, _)| f.involves(var))
}

fn zero_section(h: &RationalSection, den: Vec<(LinearForm, u32)>) -> Result<RationalSection> {
    RationalSection::new(EquivariantPolynomial::zero(h.algebra().clone(), h.nvars()), den)
}

/// `binom(−e, r) = (−1)^r · binom(e+r−1, r)`.
fn binom_neg(e: u32, r: usize) -> BigRational {
    let mut c = BigInt::one();
    for i in 0..r {
        c = c * BigInt::from(e as usize + i) / BigInt::from(i + 1);
    }
    if r % 2 == 1 {
        c = -c;
    }
    BigRational::from_integer(c)
}

fn pow_rational(a: &BigRational, k: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= a;
    }
    out
}

/// Truncated product of power series in an auxiliary variable, stored as
/// coefficient lists.
fn series_mul(a: &[Poly], b: &[Poly], len: usize) -> Vec<Poly> {
    let n = a[0].nvars();
    let mut out = vec![Poly::zero(n); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
