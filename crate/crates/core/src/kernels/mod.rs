//! Kernel subspaces of the Kirwan-map pairings, and the theorems relating
//! them to the Tolman–Weitsman subspaces, as executable checks.

mod chambers;
mod model;

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg::{Subspace, Vector};
use crate::localization::{
    kappa_s_integral, kappa_t_integral, require_generic, CircleDirection, HamiltonianSpace, RestrictedClass,
    ResidueFrame,
};
use crate::symcore::{euler_class, Monomial, NormalLine, Poly};

pub use chambers::{enumerate_generic_directions, sign_vector, ChamberEnumeration, ChamberStrategy};
pub use model::DegreeTruncatedModel;
pub(crate) use model::restriction_matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn symbol(self) -> &'static str {
        match self {
            Side::Minus => "-",
            Side::Plus => "+",
        }
    }
}

/// `𝓕 = 𝓕_− ∪ 𝓕_+`, one sign per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern(pub Vec<Side>);

impl SignPattern {
    pub fn components(&self, side: Side) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, s)| **s == side).map(|(i, _)| i).collect()
    }
}

pub fn partition(space: &HamiltonianSpace, xi: &CircleDirection) -> Result<SignPattern> {
    require_generic(space, xi)?;
    Ok(SignPattern(
        space
            .components()
            .iter()
            .map(|c| if xi.pair(c.moment()).is_positive() { Side::Plus } else { Side::Minus })
            .collect(),
    ))
}

/// `K_±`: classes of the slice restricting to zero on every `F ∈ 𝓕_±`.
pub fn tw_subspace(model: &DegreeTruncatedModel, xi: &CircleDirection, side: Side, degree: u32) -> Result<Subspace> {
    let pattern = partition(model.space(), xi)?;
    let rows = restriction_matrix(model.slice(degree), &pattern.components(side));
    Ok(Subspace::null_space_of(&rows, model.dim(degree)))
}

/// Rows `coeff_m(κ(b_k·ζ))` for every monomial `m`, one block per `ζ`.
fn pairing_rows<F>(slice: &[RestrictedClass], tests: &[&RestrictedClass], mut kappa: F) -> Result<Vec<Vector>>
where
    F: FnMut(&RestrictedClass) -> Result<Poly>,
{
    let mut rows = Vec::new();
    for z in tests {
        let values = slice.iter().map(|b| kappa(&b.mul(z))).collect::<Result<Vec<_>>>()?;
        let monomials: BTreeSet<Monomial> = values.iter().flat_map(|v| v.terms().map(|(m, _)| m.clone())).collect();
        for m in monomials {
            rows.push(values.iter().map(|v| v.coefficient(&m)).collect());
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct ResidueKernel {
    pub subspace: Subspace,
    /// Whether enlarging the testing set to degree `dim_M` left it unchanged.
    pub stable: bool,
}

/// `{η : κ_S(η·ζ) = 0 for every ζ}` with `ζ` over the model in degrees
/// `≤ dim_M − 2`, cross-checked against degree `dim_M`.
pub fn residue_kernel_s(model: &DegreeTruncatedModel, xi: &CircleDirection, degree: u32) -> Result<ResidueKernel> {
    let space = model.space();
    require_generic(space, xi)?;
    let slice = model.slice(degree);
    let top = space.dim_m();
    let base: Vec<&RestrictedClass> = (0..top.saturating_sub(1)).step_by(2).flat_map(|d| model.slice(d)).collect();
    let extra: Vec<&RestrictedClass> = model.slice(top).iter().collect();
    let kappa = |c: &RestrictedClass| Ok(kappa_s_integral(space, c, xi)?.value);
    let mut rows = pairing_rows(slice, &base, kappa)?;
    let small = Subspace::null_space_of(&rows, slice.len());
    rows.extend(pairing_rows(slice, &extra, kappa)?);
    let subspace = Subspace::null_space_of(&rows, slice.len());
    Ok(ResidueKernel { stable: subspace == small, subspace })
}

/// `ker κ_T` in one degree: the null space of the pairing against the
/// complementary degree (the whole slice when there is none).
pub fn kappa_t_kernel(model: &DegreeTruncatedModel, frame: &ResidueFrame, degree: u32) -> Result<Subspace> {
    let space = model.space();
    let slice = model.slice(degree);
    let c = space.dim_m() as i64 - 2 * space.nvars() as i64 - degree as i64;
    if c < 0 {
        return Ok(Subspace::full(slice.len()));
    }
    let tests: Vec<&RestrictedClass> = model.slice(c as u32).iter().collect();
    let n = space.nvars();
    let rows = pairing_rows(slice, &tests, |z| Ok(Poly::constant(n, kappa_t_integral(space, z, frame)?)))?;
    Ok(Subspace::null_space_of(&rows, slice.len()))
}

#[derive(Clone, Debug)]
pub struct SecondMainDegree {
    pub degree: u32,
    pub slice_dim: usize,
    pub k_minus: Subspace,
    pub k_plus: Subspace,
    pub direct: bool,
    pub kernel: Subspace,
    pub kernel_stable: bool,
    pub equal: bool,
    /// A basis vector of one side missing from the other, when unequal.
    pub witness: Option<Vector>,
}

#[derive(Clone, Debug)]
pub struct SecondMainReport {
    pub xi: CircleDirection,
    pub degrees: Vec<SecondMainDegree>,
}

impl SecondMainReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.equal && d.direct)
    }
}

fn witness(a: &Subspace, b: &Subspace) -> Option<Vector> {
    a.basis()
        .iter()
        .find(|v| !b.contains(v))
        .or_else(|| b.basis().iter().find(|v| !a.contains(v)))
        .cloned()
}

/// `ker_res(κ_S) = K_− ⊕ K_+`, degree by degree.
pub fn check_theorem_secondmain(
    model: &DegreeTruncatedModel,
    xi: &CircleDirection,
    degrees: &[u32],
) -> Result<SecondMainReport> {
    let mut out = Vec::new();
    for &d in degrees {
        let k_minus = tw_subspace(model, xi, Side::Minus, d)?;
        let k_plus = tw_subspace(model, xi, Side::Plus, d)?;
        let direct = k_minus.intersect(&k_plus).dim() == 0;
        let sum = k_minus.sum(&k_plus);
        let kernel = residue_kernel_s(model, xi, d)?;
        let equal = sum == kernel.subspace;
        out.push(SecondMainDegree {
            degree: d,
            slice_dim: model.dim(d),
            witness: if equal { None } else { witness(&sum, &kernel.subspace) },
            k_minus,
            k_plus,
            direct,
            kernel_stable: kernel.stable,
            kernel: kernel.subspace,
            equal,
        });
    }
    Ok(SecondMainReport { xi: xi.clone(), degrees: out })
}

#[derive(Clone, Debug)]
pub struct ChamberContribution {
    pub xi: CircleDirection,
    /// `(dim K_−, dim K_+)` per degree.
    pub dims: Vec<(u32, usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct FullKernelDegree {
    pub degree: u32,
    pub slice_dim: usize,
    pub kernel_t: Subspace,
    pub chamber_sum: Subspace,
    pub equal: bool,
    pub witness: Option<Vector>,
}

#[derive(Clone, Debug)]
pub struct FullKernelReport {
    pub frame: ResidueFrame,
    pub chambers: ChamberEnumeration,
    pub contributions: Vec<ChamberContribution>,
    pub degrees: Vec<FullKernelDegree>,
}

impl FullKernelReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }
}

/// `ker κ_T` against `Σ_S (K_−^S ⊕ K_+^S)` over one circle per chamber.
pub fn full_kernel(
    model: &DegreeTruncatedModel,
    frame: &ResidueFrame,
    degrees: &[u32],
    strategy: ChamberStrategy,
) -> Result<FullKernelReport> {
    let chambers = enumerate_generic_directions(model.space(), strategy)?;
    let mut sums: Vec<Subspace> = degrees.iter().map(|&d| Subspace::zero(model.dim(d))).collect();
    let mut contributions = Vec::new();
    for xi in &chambers.directions {
        let mut dims = Vec::new();
        for (k, &d) in degrees.iter().enumerate() {
            let minus = tw_subspace(model, xi, Side::Minus, d)?;
            let plus = tw_subspace(model, xi, Side::Plus, d)?;
            dims.push((d, minus.dim(), plus.dim()));
            sums[k] = sums[k].sum(&minus).sum(&plus);
        }
        contributions.push(ChamberContribution { xi: xi.clone(), dims });
    }
    let mut out = Vec::new();
    for (k, &d) in degrees.iter().enumerate() {
        let kernel_t = kappa_t_kernel(model, frame, d)?;
        let equal = kernel_t == sums[k];
        out.push(FullKernelDegree {
            degree: d,
            slice_dim: model.dim(d),
            witness: if equal { None } else { witness(&kernel_t, &sums[k]) },
            kernel_t,
            chamber_sum: sums[k].clone(),
            equal,
        });
    }
    Ok(FullKernelReport { frame: frame.clone(), chambers, contributions, degrees: out })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaPlusReport {
    pub failures: Vec<String>,
}

impl AlphaPlusReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks a candidate `α⁺(F)` for `f = ⟨μ, ξ⟩`: it vanishes on every `G`
/// with `f(G) > f(F)`, and restricts on `F` to the Euler class of the
/// normal lines with `⟨w, ξ⟩ > 0`.
pub fn validate_alpha_plus(
    space: &HamiltonianSpace,
    component: usize,
    candidate: &RestrictedClass,
    xi: &CircleDirection,
) -> Result<AlphaPlusReport> {
    require_generic(space, xi)?;
    let f = space.components()[component].clone();
    let level = xi.pair(f.moment());
    let mut failures = Vec::new();
    for (i, g) in space.components().iter().enumerate() {
        if xi.pair(g.moment()) > level && !candidate.restriction(i).is_zero() {
            failures.push(format!("restriction to {} (above {}) is nonzero", g.name(), f.name()));
        }
    }
    let positive: Vec<NormalLine> = f
        .normal_lines()
        .iter()
        .filter(|l| xi.pair_int(l.weight.coeffs()).is_positive())
        .cloned()
        .collect();
    let expected = euler_class(f.algebra(), space.nvars(), &positive)?;
    if candidate.restriction(component) != &expected {
        failures.push(format!(
            "restriction to {} is {}, expected the positive normal Euler class {}",
            f.name(),
            candidate.restriction(component).display_with(space.variables().names()),
            expected.display_with(space.variables().names())
        ));
    }
    Ok(AlphaPlusReport { failures })
}

/// Scales a vector to have its first nonzero entry equal to 1 (for reports).
pub fn normalized_vector(v: &[BigRational]) -> Vector {
    match v.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|c| c * &inv).collect()
        }
        None => v.to_vec(),
    }
}
