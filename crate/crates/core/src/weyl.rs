//! Weyl group actions on restriction tuples, the anti-invariant `𝒟`, Brion
//! division, and the nonabelian kernel checks.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernels::{kappa_t_kernel, DegreeTruncatedModel};
use crate::linalg::{rref, Subspace, Vector};
use crate::localization::{int_det, kappa_t_integral, HamiltonianSpace, ResidueFrame, RestrictedClass};
use crate::symcore::{EquivariantPolynomial, GradedAlgebra, LinearForm, Poly};

/// `w` acts on `𝔱*` by `matrix`, sends component `i` to `perm[i]`, and
/// identifies `H*(F_i)` with `H*(F_{perm[i]})` by `maps[i]`, where
/// `maps[i][j]` lists the image of basis element `j` over the target basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<BigInt>>,
    pub perm: Vec<usize>,
    pub maps: Vec<Vec<Vec<BigRational>>>,
}

#[derive(Clone, Debug)]
pub struct WeylData {
    elements: Vec<WeylElement>,
    signs: Vec<i8>,
    identity: usize,
    inverse: Vec<usize>,
    table: Vec<Vec<usize>>,
    positive_roots: Vec<LinearForm>,
    d_poly: Poly,
}

impl WeylElement {
    fn substitution(&self) -> Vec<Vec<BigRational>> {
        // x_i ↦ Σ_j M_ji x_j, so that ⟨c, x⟩ ↦ ⟨Mc, x⟩
        let n = self.matrix.len();
        (0..n)
            .map(|i| (0..n).map(|j| BigRational::from_integer(self.matrix[j][i].clone())).collect())
            .collect()
    }

    fn act_on_poly(&self, p: &Poly) -> Poly {
        p.linear_substitute(&self.substitution())
    }

    /// `φ_{w,F}(w·p)` for `p` over the algebra of component `i`.
    fn act_on_restriction(&self, i: usize, p: &EquivariantPolynomial, target: &Arc<GradedAlgebra>) -> EquivariantPolynomial {
        let moved = p.linear_substitute(&self.substitution());
        let n = p.nvars();
        let dim = target.dim();
        let mut coeffs = vec![Poly::zero(n); dim];
        for (j, c) in moved.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, a) in self.maps[i][j].iter().enumerate() {
                if !a.is_zero() {
                    coeffs[k] = &coeffs[k] + &c.scale(a);
                }
            }
        }
        EquivariantPolynomial::from_coeffs(target.clone(), coeffs).expect("dimensions checked at load")
    }

    fn compose(&self, w: &WeylElement) -> WeylElement {
        // (self ∘ w): matrix product, F ↦ self(w(F)), φ_{self,wF} ∘ φ_{w,F}
        let n = self.matrix.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &self.matrix[i][k] * &w.matrix[k][j]).sum()).collect())
            .collect();
        let perm = w.perm.iter().map(|&f| self.perm[f]).collect();
        let maps = (0..w.perm.len())
            .map(|i| {
                let mid = w.perm[i];
                w.maps[i]
                    .iter()
                    .map(|col| {
                        let target_dim = self.maps[mid][0].len();
                        let mut out = vec![BigRational::zero(); target_dim];
                        for (k, c) in col.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (l, d) in self.maps[mid][k].iter().enumerate() {
                                out[l] += c * d;
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        WeylElement { matrix, perm, maps }
    }
}

impl WeylData {
    /// Validates the group structure and compatibility with `space`.
    pub fn new(space: &HamiltonianSpace, elements: Vec<WeylElement>, positive_roots: Vec<LinearForm>) -> Result<Self> {
        let n = space.nvars();
        let comps = space.components();
        if elements.is_empty() {
            return Err(Error::InvalidWeyl("no group elements".into()));
        }
        let mut signs = Vec::new();
        for (e, w) in elements.iter().enumerate() {
            if w.matrix.len() != n || w.matrix.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidWeyl(format!("element {e}: matrix is not {n}×{n}")));
            }
            let det = int_det(&w.matrix);
            signs.push(if det == BigInt::one() {
                1
            } else if det == -BigInt::one() {
                -1
            } else {
                return Err(Error::InvalidWeyl(format!("element {e}: determinant {det} is not ±1")));
            });
            let mut seen = vec![false; comps.len()];
            if w.perm.len() != comps.len() {
                return Err(Error::InvalidWeyl(format!("element {e}: perm has wrong length")));
            }
            for &p in &w.perm {
                if p >= comps.len() || seen[p] {
                    return Err(Error::InvalidWeyl(format!("element {e}: perm is not a permutation")));
                }
                seen[p] = true;
            }
            if w.maps.len() != comps.len() {
                return Err(Error::InvalidWeyl(format!("element {e}: one algebra map per component is required")));
            }
            for (i, c) in comps.iter().enumerate() {
                let target = &comps[w.perm[i]];
                if w.maps[i].len() != c.algebra().dim()
                    || w.maps[i].iter().any(|col| col.len() != target.algebra().dim())
                {
                    return Err(Error::InvalidWeyl(format!(
                        "element {e}: algebra map {} → {} has wrong shape",
                        c.name(),
                        target.name()
                    )));
                }
                let moved: Vec<BigRational> = (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|k| BigRational::from_integer(w.matrix[r][k].clone()) * &c.moment()[k])
                            .fold(BigRational::zero(), |a, b| a + b)
                    })
                    .collect();
                if moved != target.moment() {
                    return Err(Error::InvalidWeyl(format!(
                        "element {e}: w·μ({}) ≠ μ({})",
                        c.name(),
                        target.name()
                    )));
                }
                check_algebra_map(space, w, e, i)?;
            }
        }

        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for a in 0..elements.len() {
            for b in 0..elements.len() {
                let prod = elements[a].compose(&elements[b]);
                table[a][b] = elements
                    .iter()
                    .position(|w| *w == prod)
                    .ok_or_else(|| Error::InvalidWeyl(format!("product of elements {a} and {b} is not in the list")))?;
                if signs[table[a][b]] != signs[a] * signs[b] {
                    return Err(Error::InvalidWeyl(format!("ε is not multiplicative on ({a}, {b})")));
                }
            }
        }
        let identity = (0..elements.len())
            .find(|&e| (0..elements.len()).all(|b| table[e][b] == b && table[b][e] == b))
            .ok_or_else(|| Error::InvalidWeyl("no identity element".into()))?;
        let mut inverse = Vec::new();
        for a in 0..elements.len() {
            inverse.push(
                (0..elements.len())
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| Error::InvalidWeyl(format!("element {a} has no inverse")))?,
            );
        }
        for a in 0..elements.len() {
            for b in 0..elements.len() {
                for c in 0..elements.len() {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidWeyl(format!("not associative on ({a}, {b}, {c})")));
                    }
                }
            }
        }

        for (k, r) in positive_roots.iter().enumerate() {
            if r.nvars() != n || r.is_zero() {
                return Err(Error::InvalidWeyl(format!("positive root {k} is zero or has the wrong length")));
            }
        }
        let d_poly = positive_roots.iter().fold(Poly::one(n), |acc, r| &acc * &r.to_poly());
        let data = WeylData { elements, signs, identity, inverse, table, positive_roots, d_poly };
        for (e, w) in data.elements.iter().enumerate() {
            if w.act_on_poly(&data.d_poly) != data.d_poly.scale(&sign_rational(data.signs[e])) {
                return Err(Error::InvalidWeyl(format!("𝒟 is not anti-invariant under element {e}")));
            }
        }
        Ok(data)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// Index of `v ∘ w`.
    pub fn compose(&self, v: usize, w: usize) -> usize {
        self.table[v][w]
    }

    /// `ε(w) = det` of the action on `𝔱*`.
    pub fn sign(&self, w: usize) -> i8 {
        self.signs[w]
    }

    pub fn positive_roots(&self) -> &[LinearForm] {
        &self.positive_roots
    }

    pub fn d_poly(&self) -> &Poly {
        &self.d_poly
    }

    /// Cohomological degree of `𝒟`.
    pub fn d_degree(&self) -> u32 {
        2 * self.positive_roots.len() as u32
    }

    pub fn act_on_poly(&self, w: usize, p: &Poly) -> Result<Poly> {
        Ok(self.element(w)?.act_on_poly(p))
    }

    fn element(&self, w: usize) -> Result<&WeylElement> {
        self.elements
            .get(w)
            .ok_or_else(|| Error::InvalidWeyl(format!("element {w} is not in the group")))
    }

    /// `(w·η)|_{wF} = φ_{w,F}(w·(η|_F))`.
    pub fn w_act(&self, w: usize, eta: &RestrictedClass) -> Result<RestrictedClass> {
        let el = self.element(w)?;
        let mut out: Vec<EquivariantPolynomial> = eta.restrictions().to_vec();
        for (i, r) in eta.restrictions().iter().enumerate() {
            let target = el.perm[i];
            out[target] = el.act_on_restriction(i, r, eta.restrictions()[target].algebra());
        }
        Ok(eta.with_restrictions(out))
    }

    pub fn symmetrize(&self, space: &HamiltonianSpace, eta: &RestrictedClass) -> Result<RestrictedClass> {
        let mut acc = RestrictedClass::zero(space, eta.degree());
        for w in 0..self.order() {
            acc = acc.add(&self.w_act(w, eta)?)?;
        }
        Ok(acc)
    }

    pub fn antisymmetrize(&self, space: &HamiltonianSpace, eta: &RestrictedClass) -> Result<RestrictedClass> {
        let mut acc = RestrictedClass::zero(space, eta.degree());
        for w in 0..self.order() {
            acc = acc.add(&self.w_act(w, eta)?.scale(&sign_rational(self.signs[w])))?;
        }
        Ok(acc)
    }

    pub fn is_invariant(&self, eta: &RestrictedClass) -> Result<bool> {
        for w in 0..self.order() {
            if &self.w_act(w, eta)? != eta {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_anti_invariant(&self, eta: &RestrictedClass) -> Result<bool> {
        for w in 0..self.order() {
            if self.w_act(w, eta)? != eta.scale(&sign_rational(self.signs[w])) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `𝒟·η`.
    pub fn mul_d(&self, eta: &RestrictedClass) -> RestrictedClass {
        eta.mul_poly(&self.d_poly, self.d_degree())
    }

    /// `η` with `𝒟·η = ξ`, for anti-invariant `ξ`; the quotient is checked
    /// to be invariant.
    pub fn brion_divide(&self, xi: &RestrictedClass) -> Result<RestrictedClass> {
        if !self.is_anti_invariant(xi)? {
            return Err(Error::Symmetry("class is not anti-invariant".into()));
        }
        let Some(degree) = xi.degree().checked_sub(self.d_degree()) else {
            // below deg 𝒟 only 0 is anti-invariant; its quotient is 0, filed under degree 0
            if xi.is_zero() {
                return Ok(xi.with_parts(xi.restrictions().to_vec(), 0));
            }
            return Err(Error::NotDivisible(format!("degree {} is below deg 𝒟", xi.degree())));
        };
        let mut out = Vec::new();
        for (i, r) in xi.restrictions().iter().enumerate() {
            let mut q = r.clone();
            for root in &self.positive_roots {
                q = q
                    .div_linear(&root.rational_coeffs())
                    .ok_or_else(|| Error::NotDivisible(format!("restriction {i} is not divisible by {root}")))?;
            }
            out.push(q);
        }
        let eta = xi.with_parts(out, degree);
        if !self.is_invariant(&eta)? {
            return Err(Error::Symmetry("quotient by 𝒟 is not invariant".into()));
        }
        Ok(eta)
    }
}

fn sign_rational(s: i8) -> BigRational {
    BigRational::from_integer(BigInt::from(s))
}

/// `φ` must be multiplicative, unital, integral-preserving, and carry the
/// moved Euler class of `F` to the Euler class of `wF`.
fn check_algebra_map(space: &HamiltonianSpace, w: &WeylElement, e: usize, i: usize) -> Result<()> {
    let comps = space.components();
    let src = comps[i].algebra();
    let dst_comp = &comps[w.perm[i]];
    let dst = dst_comp.algebra();
    let map = &w.maps[i];
    let as_vec = |j: usize| -> Vec<(usize, BigRational)> {
        map[j].iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    };
    let dense = |v: &[(usize, BigRational)]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); dst.dim()];
        for (k, c) in v {
            out[*k] += c;
        }
        out
    };
    let unit = dense(&[(0, BigRational::one())]);
    if map[0] != unit {
        return Err(Error::InvalidWeyl(format!("element {e}: algebra map on {} is not unital", comps[i].name())));
    }
    for a in 0..src.dim() {
        for b in 0..src.dim() {
            let lhs: Vec<(usize, BigRational)> = src
                .product(a, b)
                .iter()
                .flat_map(|(k, c)| as_vec(*k).into_iter().map(move |(l, d)| (l, c * d)))
                .collect();
            let rhs = dst.mul_vec(&as_vec(a), &as_vec(b));
            if dense(&lhs) != dense(&rhs) {
                return Err(Error::InvalidWeyl(format!(
                    "element {e}: algebra map on {} is not multiplicative on ({}, {})",
                    comps[i].name(),
                    src.names()[a],
                    src.names()[b]
                )));
            }
        }
        let image: BigRational = map[a].iter().zip(dst.integral()).map(|(c, t)| c * t).sum();
        if image != src.integral()[a] {
            return Err(Error::InvalidWeyl(format!(
                "element {e}: algebra map on {} does not preserve the integral",
                comps[i].name()
            )));
        }
    }
    let euler = comps[i].euler_class();
    let moved = w.act_on_restriction(i, &euler, dst);
    if moved != dst_comp.euler_class() {
        return Err(Error::InvalidWeyl(format!(
            "element {e}: normal data of {} does not map to that of {}",
            comps[i].name(),
            dst_comp.name()
        )));
    }
    Ok(())
}

/// `κ_T(𝒟²·η)` for invariant `η`.
pub fn kappa_k_integral(
    space: &HamiltonianSpace,
    weyl: &WeylData,
    eta: &RestrictedClass,
    frame: &ResidueFrame,
) -> Result<BigRational> {
    if !weyl.is_invariant(eta)? {
        return Err(Error::Symmetry("κ_K needs a W-invariant class".into()));
    }
    kappa_t_integral(space, &weyl.mul_d(&weyl.mul_d(eta)), frame)
}

/// An invariant slice: a basis of `Σ_w w·(slice)` as classes, together with
/// its RREF coordinates over the model slice.
#[derive(Clone, Debug)]
pub struct InvariantSlice {
    pub degree: u32,
    pub coords: Subspace,
    pub classes: Vec<RestrictedClass>,
}

pub fn invariant_slice(model: &DegreeTruncatedModel, weyl: &WeylData, degree: u32) -> Result<InvariantSlice> {
    let space = model.space();
    let mut vecs = Vec::new();
    for b in model.slice(degree) {
        let s = weyl.symmetrize(space, b)?;
        vecs.push(model.coordinates(&s).ok_or_else(|| {
            Error::DataInconsistency(format!("the degree-{degree} model is not closed under W"))
        })?);
    }
    let coords = Subspace::span(model.dim(degree), &vecs);
    let classes = coords.basis().iter().map(|v| model.class_of(degree, v)).collect();
    Ok(InvariantSlice { degree, coords, classes })
}

/// Coefficients of a slice vector over an RREF basis (`None` off the span).
fn rref_coefficients(basis: &Subspace, v: &[BigRational]) -> Option<Vector> {
    if !basis.contains(v) {
        return None;
    }
    let (_, pivots) = rref(basis.basis(), basis.ambient());
    Some(pivots.iter().map(|&p| v[p].clone()).collect())
}

fn pairing_null_space<F>(classes: &[RestrictedClass], tests: &[RestrictedClass], mut value: F) -> Result<Subspace>
where
    F: FnMut(&RestrictedClass) -> Result<BigRational>,
{
    let mut rows = Vec::new();
    for z in tests {
        rows.push(classes.iter().map(|c| value(&c.mul(z))).collect::<Result<Vector>>()?);
    }
    Ok(Subspace::null_space_of(&rows, classes.len()))
}

#[derive(Clone, Debug)]
pub struct NonabelianDegree {
    pub degree: u32,
    pub invariant_dim: usize,
    /// Null space of `κ_T(𝒟²ηζ)` over invariant `ζ`.
    pub kappa_k_kernel: Subspace,
    /// `{η : 𝒟η ∈ ker κ_T}`.
    pub d_pullback: Subspace,
    /// `{η : 𝒟²η ∈ ker κ_T}`.
    pub d2_pullback: Subspace,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct NonabelianReport {
    pub degrees: Vec<NonabelianDegree>,
}

impl NonabelianReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }
}

/// The three characterizations of `ker κ_K` on invariant classes.
pub fn check_theorem_nonabelian(
    model: &DegreeTruncatedModel,
    weyl: &WeylData,
    frame: &ResidueFrame,
    degrees: &[u32],
) -> Result<NonabelianReport> {
    let space = model.space();
    let top = space.dim_m() as i64 - 2 * space.nvars() as i64;
    let dd = weyl.d_degree() as i64;
    let kt = |c: &RestrictedClass| kappa_t_integral(space, c, frame);
    let mut out = Vec::new();
    for &d in degrees {
        let inv = invariant_slice(model, weyl, d)?;
        let k = inv.classes.len();
        let complement = |shift: i64| top - d as i64 - shift;

        let c1 = complement(2 * dd);
        let kappa_k_kernel = if c1 < 0 {
            Subspace::full(k)
        } else {
            let tests = invariant_slice(model, weyl, c1 as u32)?.classes;
            let d2: Vec<RestrictedClass> = inv.classes.iter().map(|c| weyl.mul_d(&weyl.mul_d(c))).collect();
            pairing_null_space(&d2, &tests, kt)?
        };
        let pullback = |times: usize| -> Result<Subspace> {
            let c = complement(times as i64 * dd);
            if c < 0 {
                return Ok(Subspace::full(k));
            }
            let moved: Vec<RestrictedClass> = inv
                .classes
                .iter()
                .map(|c| (0..times).fold(c.clone(), |acc, _| weyl.mul_d(&acc)))
                .collect();
            pairing_null_space(&moved, model.slice(c as u32), kt)
        };
        let d_pullback = pullback(1)?;
        let d2_pullback = pullback(2)?;
        let equal = kappa_k_kernel == d_pullback && d_pullback == d2_pullback;
        out.push(NonabelianDegree { degree: d, invariant_dim: k, kappa_k_kernel, d_pullback, d2_pullback, equal });
    }
    Ok(NonabelianReport { degrees: out })
}

#[derive(Clone, Debug)]
pub struct FirstCharDegree {
    pub degree: u32,
    pub kernel_t_dim: usize,
    /// Span of `(1/𝒟) Σ_w ε(w) w·η` over a basis of `ker κ_T` in degree `d + deg 𝒟`.
    pub span: Subspace,
    pub kappa_k_kernel: Subspace,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct FirstCharReport {
    pub degrees: Vec<FirstCharDegree>,
}

impl FirstCharReport {
    pub fn pass(&self) -> bool {
        self.degrees.iter().all(|d| d.equal)
    }
}

/// `ker κ_K = {(1/𝒟) Σ ε(w) w·η : η ∈ ker κ_T}`, degree by degree. The
/// model needs `deg 𝒟` degrees of headroom.
pub fn firstchar_kernel(
    model: &DegreeTruncatedModel,
    weyl: &WeylData,
    frame: &ResidueFrame,
    degrees: &[u32],
) -> Result<FirstCharReport> {
    let space = model.space();
    let nonabelian = check_theorem_nonabelian(model, weyl, frame, degrees)?;
    let mut out = Vec::new();
    for (&d, na) in degrees.iter().zip(&nonabelian.degrees) {
        let up = d + weyl.d_degree();
        if up > model.top() {
            return Err(Error::Structural(format!(
                "model stops at degree {}, degree {up} is needed",
                model.top()
            )));
        }
        let inv = invariant_slice(model, weyl, d)?;
        let kernel = kappa_t_kernel(model, frame, up)?;
        let mut vecs = Vec::new();
        for v in kernel.basis() {
            let eta = model.class_of(up, v);
            let q = weyl.brion_divide(&weyl.antisymmetrize(space, &eta)?)?;
            let coords = model
                .coordinates(&q)
                .and_then(|c| rref_coefficients(&inv.coords, &c))
                .ok_or_else(|| Error::DataInconsistency(format!("quotient in degree {d} is outside the model")))?;
            vecs.push(coords);
        }
        let span = Subspace::span(inv.classes.len(), &vecs);
        let equal = span == na.kappa_k_kernel;
        out.push(FirstCharDegree {
            degree: d,
            kernel_t_dim: kernel.dim(),
            span,
            kappa_k_kernel: na.kappa_k_kernel.clone(),
            equal,
        });
    }
    Ok(FirstCharReport { degrees: out })
}
