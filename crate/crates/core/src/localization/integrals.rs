use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::circle::{is_generic, require_generic, AdaptedBasis, CircleDirection};
use super::space::{HamiltonianSpace, RestrictedClass};
use crate::error::{Error, Result};
use crate::residue::{res_x_plus, selected_iterated_res, VariableOrdering, WeightedSection};
use crate::symcore::{Poly, RationalSection};

/// `∫_F η|_F / e_F` as a scalar section in the original coordinates.
pub fn localized_integrand(space: &HamiltonianSpace, eta: &RestrictedClass, component: usize) -> Result<RationalSection> {
    Ok(space.inverse_euler(component).mul_num(eta.restriction(component))?.integrate())
}

fn integrand_in(space: &HamiltonianSpace, eta: &RestrictedClass, component: usize, basis: &AdaptedBasis) -> Result<RationalSection> {
    let s = space.inverse_euler(component).mul_num(eta.restriction(component))?;
    Ok(s.change_basis(basis.matrix()).integrate())
}

#[derive(Clone, Debug)]
pub struct AbbvReport {
    pub sum: RationalSection,
    /// The sum, when it is a polynomial.
    pub polynomial: Option<Poly>,
}

impl AbbvReport {
    pub fn is_polynomial(&self) -> bool {
        self.polynomial.is_some()
    }
}

/// `Σ_F ∫_F η|_F / e_F` over a common denominator.
pub fn abbv_sum(space: &HamiltonianSpace, eta: &RestrictedClass) -> Result<AbbvReport> {
    let mut sum = RationalSection::scalar(Poly::zero(space.nvars()), [])?;
    for i in 0..space.components().len() {
        sum = sum.add(&localized_integrand(space, eta, i)?)?;
    }
    let sum = sum.reduce();
    let polynomial = sum.den().is_empty().then(|| sum.num().coeff(0).clone());
    Ok(AbbvReport { sum, polynomial })
}

#[derive(Clone, Debug)]
pub struct KappaS {
    /// Polynomial in the adapted coordinates `Y'_1, …` (`X'` does not occur).
    pub value: Poly,
    pub basis: AdaptedBasis,
}

/// `Σ_{F : ⟨μ(F),ξ⟩ > 0} Res^+_{X'} ∫_F η|_F / e_F` in coordinates adapted
/// to the circle; `X'` is the coordinate along the normalized generator.
pub fn kappa_s_integral(space: &HamiltonianSpace, eta: &RestrictedClass, xi: &CircleDirection) -> Result<KappaS> {
    require_generic(space, xi)?;
    let basis = AdaptedBasis::for_direction(xi);
    let mut total = RationalSection::scalar(Poly::zero(space.nvars()), [])?;
    for (i, c) in space.components().iter().enumerate() {
        if !xi.pair(c.moment()).is_positive() {
            continue;
        }
        let integrand = integrand_in(space, eta, i, &basis)?;
        total = total.add(&res_x_plus(&integrand, 0)?)?;
    }
    let reduced = total.reduce();
    if !reduced.den().is_empty() {
        return Err(Error::DataInconsistency(format!(
            "κ_S integral along {xi} is not polynomial: {reduced}"
        )));
    }
    Ok(KappaS { value: reduced.num().coeff(0).clone(), basis })
}

/// Adapted coordinates plus the order in which their residues are taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueFrame {
    pub basis: AdaptedBasis,
    pub ordering: VariableOrdering,
}

impl ResidueFrame {
    pub fn new(basis: AdaptedBasis, ordering: VariableOrdering) -> Result<Self> {
        if basis.rank() != ordering.len() {
            return Err(Error::Structural("frame basis and ordering differ in rank".into()));
        }
        Ok(ResidueFrame { basis, ordering })
    }

    /// Original coordinates, `X` first.
    pub fn standard(n: usize) -> Self {
        ResidueFrame { basis: AdaptedBasis::identity(n), ordering: VariableOrdering::identity(n) }
    }

    /// Coordinates adapted to `ξ`, with the residue along `ξ` taken first.
    pub fn along(xi: &CircleDirection) -> Self {
        ResidueFrame { basis: AdaptedBasis::for_direction(xi), ordering: VariableOrdering::identity(xi.rank()) }
    }

    /// The standard frame when `X` is generic, else the first generic
    /// chamber direction.
    pub fn suggest(space: &HamiltonianSpace) -> Result<Self> {
        let n = space.nvars();
        let x = CircleDirection::new((0..n).map(|i| if i == 0 { BigInt::one() } else { BigInt::zero() }).collect())?;
        if is_generic(space, &x)?.generic {
            return Ok(ResidueFrame::standard(n));
        }
        let chambers = crate::kernels::enumerate_generic_directions(space, crate::kernels::ChamberStrategy::default())?;
        let xi = chambers
            .directions
            .first()
            .ok_or_else(|| Error::NotGeneric("the space has no generic circle".into()))?;
        Ok(ResidueFrame::along(xi))
    }

    /// The circle of the first-applied residue.
    pub fn first_direction(&self) -> CircleDirection {
        self.basis.column(self.ordering.order()[0])
    }
}

/// `Δ · Res ∘ … ∘ Res (Σ_F e^{μ(F)} ∫_F η|_F/e_F)` with the exponential
/// selecting which poles contribute at each step; `0` off the degree
/// `dim_M − 2·rank`.
pub fn kappa_t_integral(space: &HamiltonianSpace, eta: &RestrictedClass, frame: &ResidueFrame) -> Result<BigRational> {
    let n = space.nvars();
    if frame.basis.rank() != n {
        return Err(Error::Structural("frame rank differs from torus rank".into()));
    }
    let first = frame.first_direction();
    if !is_generic(space, &first)?.generic {
        return Err(Error::NonGenericOrdering(format!("first residue direction {first} is not generic")));
    }
    if eta.is_zero() || eta.degree() as i64 != space.dim_m() as i64 - 2 * n as i64 {
        return Ok(BigRational::zero());
    }
    let mut terms = Vec::new();
    for (i, c) in space.components().iter().enumerate() {
        let section = integrand_in(space, eta, i, &frame.basis)?;
        if section.is_zero() {
            continue;
        }
        let mut layers = vec![frame.basis.dual(c.moment())];
        for k in 0..n {
            layers.push((0..n).map(|j| if j == k { -BigRational::one() } else { BigRational::zero() }).collect());
        }
        terms.push(WeightedSection { section, layers });
    }
    selected_iterated_res(&terms, &frame.ordering)
}

#[derive(Clone, Debug)]
pub enum Pairing {
    KappaS(CircleDirection),
    KappaT(ResidueFrame),
}

/// `M[i][j] = κ(b_i · b_j)`; scalar pairings give constant polynomials.
pub fn pairing_matrix(space: &HamiltonianSpace, basis: &[RestrictedClass], pairing: &Pairing) -> Result<Vec<Vec<Poly>>> {
    let n = space.nvars();
    let eval = |c: &RestrictedClass| -> Result<Poly> {
        match pairing {
            Pairing::KappaS(xi) => Ok(kappa_s_integral(space, c, xi)?.value),
            Pairing::KappaT(frame) => Ok(Poly::constant(n, kappa_t_integral(space, c, frame)?)),
        }
    };
    let mut m = vec![vec![Poly::zero(n); basis.len()]; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            m[i][j] = eval(&basis[i].mul(&basis[j]))?;
        }
    }
    Ok(m)
}
