//! Exact linear algebra over ℚ: ranks, null spaces and subspaces in a
//! canonical (reduced row echelon) form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Vector = Vec<BigRational>;
pub type Matrix = Vec<Vector>;

/// Rank by fraction-free (Bareiss) elimination on integer-scaled rows.
pub fn rank(rows: &[Vector]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..ncols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn integer_row(r: &[BigRational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    r.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..ncols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of `{v : rows · v = 0}`, one vector per free column.
pub fn null_space(rows: &[Vector], ncols: usize) -> Matrix {
    let (m, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// A subspace of `ℚ^ambient`, stored by its canonical RREF basis so that
/// equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, &identity(ambient))
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let (basis, _) = rref(vectors, ambient);
        Subspace { ambient, basis }
    }

    pub fn null_space_of(rows: &[Vector], ambient: usize) -> Self {
        Subspace::span(ambient, &null_space(rows, ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &rows)
    }

    /// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut rows = null_space(&self.basis, self.ambient);
        rows.extend(null_space(&other.basis, self.ambient));
        Subspace::null_space_of(&rows, self.ambient)
    }

    /// Images of the basis under `v ↦ Σ v_i · images[i]`.
    pub fn map(&self, images: &[Vector], target: usize) -> Subspace {
        let vecs: Matrix = self.basis.iter().map(|v| combine(v, images, target)).collect();
        Subspace::span(target, &vecs)
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

/// `Σ coeffs[i] · vectors[i]`.
pub fn combine(coeffs: &[BigRational], vectors: &[Vector], len: usize) -> Vector {
    let mut out = vec![BigRational::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn rank_matches_rref() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])];
        assert_eq!(rank(&m), 2);
        assert_eq!(rref(&m, 3).0.len(), 2);
        assert_eq!(rank(&[v(&[0, 0])]), 0);
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = vec![v(&[1, 2, 3, 4]), v(&[0, 1, 1, 1])];
        let ns = null_space(&m, 4);
        assert_eq!(ns.len(), 2);
        for n in &ns {
            for r in &m {
                let dot: BigRational = r.iter().zip(n).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 1]), v(&[0, 2, 2])]);
        assert_eq!(b.dim(), 1);
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.intersect(&b).dim(), 0);
        let c = Subspace::span(3, &[v(&[1, 1, 0])]);
        assert!(c.is_subspace_of(&a));
        assert_eq!(a.intersect(&c), c);
        assert_eq!(Subspace::span(3, &[v(&[2, 2, 0])]), c);
    }
}
