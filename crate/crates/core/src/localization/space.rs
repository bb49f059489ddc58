use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::symcore::{
    euler_class, invert_euler, EquivariantPolynomial, GradedAlgebra, NormalLine, Poly, RationalSection, Variables,
};

#[derive(Clone, Debug)]
pub struct FixedComponent {
    name: String,
    moment: Vec<BigRational>,
    algebra: Arc<GradedAlgebra>,
    normal_lines: Vec<NormalLine>,
}

impl FixedComponent {
    pub fn new(
        name: impl Into<String>,
        moment: Vec<BigRational>,
        algebra: Arc<GradedAlgebra>,
        normal_lines: Vec<NormalLine>,
    ) -> Result<Self> {
        let name = name.into();
        for (i, l) in normal_lines.iter().enumerate() {
            if l.weight.is_zero() {
                return Err(Error::InvalidSpace(format!("component {name}: line {i} has zero weight")));
            }
            if l.weight.nvars() != moment.len() {
                return Err(Error::InvalidSpace(format!(
                    "component {name}: line {i} weight has {} entries, moment has {}",
                    l.weight.nvars(),
                    moment.len()
                )));
            }
        }
        Ok(FixedComponent { name, moment, algebra, normal_lines })
    }

    /// An isolated fixed point with flat normal lines.
    pub fn point(name: impl Into<String>, moment: Vec<BigRational>, weights: Vec<crate::symcore::LinearForm>) -> Result<Self> {
        let lines = weights.into_iter().map(|w| NormalLine::flat(w, 1)).collect();
        FixedComponent::new(name, moment, Arc::new(GradedAlgebra::point()), lines)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moment(&self) -> &[BigRational] {
        &self.moment
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn normal_lines(&self) -> &[NormalLine] {
        &self.normal_lines
    }

    /// Real dimension of `M` implied by this component.
    pub fn ambient_dim(&self) -> u32 {
        2 * self.normal_lines.len() as u32 + self.algebra.top_degree()
    }

    pub fn euler_class(&self) -> EquivariantPolynomial {
        euler_class(&self.algebra, self.moment.len(), &self.normal_lines).expect("validated component")
    }

    pub fn inverse_euler(&self) -> Result<RationalSection> {
        invert_euler(&self.algebra, self.moment.len(), &self.normal_lines)
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub class: RestrictedClass,
}

/// Fixed-point data of a compact Hamiltonian torus space, with a finite
/// family of equivariant classes given by their restrictions.
#[derive(Clone, Debug)]
pub struct HamiltonianSpace {
    variables: Variables,
    dim_m: u32,
    components: Vec<FixedComponent>,
    generators: Vec<Generator>,
    inverse_euler: Vec<RationalSection>,
}

impl HamiltonianSpace {
    pub fn new(
        variables: Variables,
        dim_m: u32,
        components: Vec<FixedComponent>,
        generators: Vec<(String, u32, Vec<EquivariantPolynomial>)>,
    ) -> Result<Self> {
        let n = variables.count();
        if !dim_m.is_multiple_of(2) {
            return Err(Error::InvalidSpace(format!("dim_M = {dim_m} is odd")));
        }
        if components.is_empty() {
            return Err(Error::InvalidSpace("no fixed components".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if components[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::InvalidSpace(format!("duplicate component name {}", c.name)));
            }
            if c.moment.len() != n {
                return Err(Error::InvalidSpace(format!(
                    "component {}: moment has {} entries for torus rank {n}",
                    c.name,
                    c.moment.len()
                )));
            }
            if c.ambient_dim() != dim_m {
                return Err(Error::InvalidSpace(format!(
                    "component {}: 2·{} normal lines + top degree {} ≠ dim_M = {dim_m}",
                    c.name,
                    c.normal_lines.len(),
                    c.algebra.top_degree()
                )));
            }
        }
        let inverse_euler = components.iter().map(FixedComponent::inverse_euler).collect::<Result<Vec<_>>>()?;
        let mut space = HamiltonianSpace { variables, dim_m, components, generators: Vec::new(), inverse_euler };
        let mut gens = Vec::new();
        for (name, degree, restrictions) in generators {
            if gens.iter().any(|g: &Generator| g.name == name) {
                return Err(Error::InvalidSpace(format!("duplicate generator name {name}")));
            }
            let class = RestrictedClass::new(&space, restrictions, degree)
                .map_err(|e| Error::InvalidSpace(format!("generator {name}: {e}")))?;
            gens.push(Generator { name, degree, class });
        }
        let unit = RestrictedClass::one(&space);
        if !gens.iter().any(|g| g.class == unit) {
            return Err(Error::InvalidSpace("generators must include the unit class".into()));
        }
        space.generators = gens;
        Ok(space)
    }

    pub fn variables(&self) -> &Variables {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.count()
    }

    pub fn dim_m(&self) -> u32 {
        self.dim_m
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn inverse_euler(&self, component: usize) -> &RationalSection {
        &self.inverse_euler[component]
    }
}

/// An equivariant class, represented by its restriction to every fixed
/// component (in component order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedClass {
    restrictions: Vec<EquivariantPolynomial>,
    degree: u32,
}

impl RestrictedClass {
    pub fn new(space: &HamiltonianSpace, restrictions: Vec<EquivariantPolynomial>, degree: u32) -> Result<Self> {
        if restrictions.len() != space.components.len() {
            return Err(Error::Structural(format!(
                "{} restrictions for {} components",
                restrictions.len(),
                space.components.len()
            )));
        }
        for (r, c) in restrictions.iter().zip(&space.components) {
            if !crate::symcore::equivariant::same_algebra(r.algebra(), &c.algebra) {
                return Err(Error::Structural(format!("restriction to {} uses the wrong algebra", c.name)));
            }
            if r.nvars() != space.nvars() {
                return Err(Error::Structural(format!("restriction to {} has wrong variable count", c.name)));
            }
            if !r.is_homogeneous_of(degree) {
                return Err(Error::Structural(format!(
                    "restriction to {} is not homogeneous of degree {degree}",
                    c.name
                )));
            }
        }
        Ok(RestrictedClass { restrictions, degree })
    }

    pub fn one(space: &HamiltonianSpace) -> Self {
        let n = space.nvars();
        RestrictedClass {
            restrictions: space.components.iter().map(|c| EquivariantPolynomial::one(c.algebra.clone(), n)).collect(),
            degree: 0,
        }
    }

    pub fn zero(space: &HamiltonianSpace, degree: u32) -> Self {
        let n = space.nvars();
        RestrictedClass {
            restrictions: space.components.iter().map(|c| EquivariantPolynomial::zero(c.algebra.clone(), n)).collect(),
            degree,
        }
    }

    /// `p · 1` for a homogeneous pure polynomial `p`.
    pub fn from_poly(space: &HamiltonianSpace, p: &Poly) -> Result<Self> {
        let degree = 2 * p.homogeneous_degree().ok_or_else(|| Error::Structural("polynomial is not homogeneous".into()))?;
        Ok(RestrictedClass::one(space).mul_poly(p, degree))
    }

    pub fn restrictions(&self) -> &[EquivariantPolynomial] {
        &self.restrictions
    }

    pub fn restriction(&self, component: usize) -> &EquivariantPolynomial {
        &self.restrictions[component]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.iter().all(EquivariantPolynomial::is_zero)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Structural(format!("adding classes of degrees {} and {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(RestrictedClass {
            restrictions: self.restrictions.iter().zip(&other.restrictions).map(|(a, b)| a.add(b)).collect(),
            degree,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RestrictedClass { restrictions: self.restrictions.iter().map(|r| r.scale(c)).collect(), degree: self.degree }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RestrictedClass {
            restrictions: self.restrictions.iter().zip(&other.restrictions).map(|(a, b)| a.mul(b)).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Multiplies by a pure polynomial of cohomological degree `p_degree`.
    pub fn mul_poly(&self, p: &Poly, p_degree: u32) -> Self {
        RestrictedClass {
            restrictions: self.restrictions.iter().map(|r| r.mul_poly(p)).collect(),
            degree: self.degree + p_degree,
        }
    }

    /// Replaces the restrictions, keeping the degree (for maps that
    /// preserve it, such as Weyl actions).
    pub fn with_restrictions(&self, restrictions: Vec<EquivariantPolynomial>) -> Self {
        RestrictedClass { restrictions, degree: self.degree }
    }

    pub(crate) fn with_parts(&self, restrictions: Vec<EquivariantPolynomial>, degree: u32) -> Self {
        RestrictedClass { restrictions, degree }
    }

    /// Whether every restriction to the listed components vanishes.
    pub fn vanishes_on(&self, components: &[usize]) -> bool {
        components.iter().all(|&i| self.restrictions[i].is_zero())
    }

    pub fn linear_combination(space: &HamiltonianSpace, degree: u32, terms: &[(BigRational, &RestrictedClass)]) -> Self {
        let mut out = RestrictedClass::zero(space, degree);
        for (c, t) in terms {
            if c.is_zero() {
                continue;
            }
            out = RestrictedClass {
                restrictions: out.restrictions.iter().zip(&t.restrictions).map(|(a, b)| a.add(&b.scale(c))).collect(),
                degree,
            };
        }
        out
    }
}
