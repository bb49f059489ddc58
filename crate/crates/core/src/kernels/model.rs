use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rref, Vector};
use crate::localization::{HamiltonianSpace, RestrictedClass};
use crate::symcore::{Monomial, Poly};

/// Per even degree, an independent list of classes spanning
/// `monomials(X, Y) × products of non-unit generators` in that degree.
#[derive(Clone, Debug)]
pub struct DegreeTruncatedModel {
    space: HamiltonianSpace,
    max_degree: u32,
    top: u32,
    basis: BTreeMap<u32, Vec<RestrictedClass>>,
    labels: BTreeMap<u32, Vec<String>>,
}

/// Coordinates of a restriction tuple: (component, algebra basis, monomial).
type CoordKey = (usize, usize, Monomial);

impl DegreeTruncatedModel {
    /// Builds every slice up to `max(max_degree, dim_M)`; pairings need the
    /// complementary degrees.
    pub fn new(space: &HamiltonianSpace, max_degree: u32) -> Result<Self> {
        DegreeTruncatedModel::with_headroom(space, max_degree, 0)
    }

    /// As [`new`](Self::new), with slices built `extra` degrees beyond
    /// `max_degree` (multiplying by `𝒟` needs them).
    pub fn with_headroom(space: &HamiltonianSpace, max_degree: u32, extra: u32) -> Result<Self> {
        if !max_degree.is_multiple_of(2) || !extra.is_multiple_of(2) {
            return Err(Error::Structural(format!("max degree {max_degree} (+{extra}) is odd")));
        }
        let top = (max_degree + extra).max(space.dim_m());
        let n = space.nvars();
        let gens: Vec<(&str, &RestrictedClass)> = space
            .generators()
            .iter()
            .filter(|g| g.degree > 0)
            .map(|g| (g.name.as_str(), &g.class))
            .collect();

        // products of non-unit generators, by degree (multisets, nondecreasing index)
        let mut products: BTreeMap<u32, Vec<(Vec<&str>, RestrictedClass)>> = BTreeMap::new();
        let mut frontier: Vec<(usize, Vec<&str>, RestrictedClass)> = vec![(0, Vec::new(), RestrictedClass::one(space))];
        while let Some((start, names, p)) = frontier.pop() {
            for (i, (g_name, g)) in gens.iter().enumerate().skip(start) {
                if p.degree() + g.degree() <= top {
                    let mut next = names.clone();
                    next.push(g_name);
                    frontier.push((i, next, p.mul(g)));
                }
            }
            products.entry(p.degree()).or_default().push((names, p));
        }

        let var_names = space.variables().names();
        let mut basis = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for d in (0..=top).step_by(2) {
            let mut candidates = Vec::new();
            let mut names = Vec::new();
            for (&pd, ps) in &products {
                if pd > d {
                    continue;
                }
                for m in Monomial::all_of_degree(n, (d - pd) / 2) {
                    let mono = Poly::term(n, m, BigRational::from_integer(1.into()));
                    for (gs, p) in ps {
                        candidates.push(p.mul_poly(&mono, d - pd));
                        names.push(label(&mono.display_with(var_names), gs));
                    }
                }
            }
            let keep = independent(&candidates);
            basis.insert(d, keep.iter().map(|&k| candidates[k].clone()).collect());
            labels.insert(d, keep.iter().map(|&k| names[k].clone()).collect());
        }
        Ok(DegreeTruncatedModel { space: space.clone(), max_degree, top, basis, labels })
    }

    pub fn space(&self) -> &HamiltonianSpace {
        &self.space
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Highest degree with a built slice.
    pub fn top(&self) -> u32 {
        self.top
    }

    /// Degrees `0, 2, …, max_degree`.
    pub fn degrees(&self) -> Vec<u32> {
        (0..=self.max_degree).step_by(2).collect()
    }

    pub fn slice(&self, degree: u32) -> &[RestrictedClass] {
        self.basis.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Names like `X^2*a1` for the slice classes.
    pub fn labels(&self, degree: u32) -> &[String] {
        self.labels.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.slice(degree).len()
    }

    /// `Σ c_k b_k` over the degree slice.
    pub fn class_of(&self, degree: u32, coeffs: &[BigRational]) -> RestrictedClass {
        let terms: Vec<(BigRational, &RestrictedClass)> =
            coeffs.iter().cloned().zip(self.slice(degree)).collect();
        RestrictedClass::linear_combination(&self.space, degree, &terms)
    }

    /// Coefficients of `class` over the slice, if it lies in the span.
    pub fn coordinates(&self, class: &RestrictedClass) -> Option<Vector> {
        let slice = self.slice(class.degree());
        if class.is_zero() {
            return Some(vec![BigRational::zero(); slice.len()]);
        }
        let mut all = slice.to_vec();
        all.push(class.clone());
        let comps: Vec<usize> = (0..class.restrictions().len()).collect();
        let k = slice.len();
        let rows = restriction_matrix(&all, &comps);
        let (red, pivots) = rref(&rows, k + 1);
        if pivots.contains(&k) {
            return None;
        }
        let mut out = vec![BigRational::zero(); k];
        for (row, &p) in red.iter().zip(&pivots) {
            out[p] = row[k].clone();
        }
        Some(out)
    }
}

/// Dense coordinate vectors (one per class) over the joint support,
/// restricted to the given components.
pub(crate) fn restriction_matrix(classes: &[RestrictedClass], components: &[usize]) -> Vec<Vector> {
    let mut index: BTreeMap<CoordKey, usize> = BTreeMap::new();
    let mut cols: Vec<BTreeMap<usize, BigRational>> = Vec::new();
    for c in classes {
        let mut col = BTreeMap::new();
        for &fi in components {
            for (b, p) in c.restriction(fi).coeffs().iter().enumerate() {
                for (m, v) in p.terms() {
                    let next = index.len();
                    let key = *index.entry((fi, b, m.clone())).or_insert(next);
                    col.insert(key, v.clone());
                }
            }
        }
        cols.push(col);
    }
    // rows = coordinates, columns = classes
    (0..index.len())
        .map(|r| cols.iter().map(|col| col.get(&r).cloned().unwrap_or_else(BigRational::zero)).collect())
        .collect()
}

fn label(mono: &str, gens: &[&str]) -> String {
    let mut parts: Vec<&str> = Vec::new();
    if mono != "1" || gens.is_empty() {
        parts.push(mono);
    }
    parts.extend(gens);
    parts.join("*")
}

/// Indices of the first maximal independent sublist.
fn independent(candidates: &[RestrictedClass]) -> Vec<usize> {
    if candidates.is_empty() {
        return Vec::new();
    }
    let all: Vec<usize> = (0..candidates[0].restrictions().len()).collect();
    let rows = restriction_matrix(candidates, &all);
    let (_, pivots) = rref(&rows, candidates.len());
    pivots
}
