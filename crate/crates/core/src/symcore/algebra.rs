//! Finite graded commutative algebras given by structure constants, with an
//! integration functional. These model `H*(F)` for a fixed component.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse vector over the basis.
pub type BasisVec = Vec<(usize, BigRational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    names: Vec<String>,
    degrees: Vec<u32>,
    table: Vec<Vec<BasisVec>>,
    integral: Vec<BigRational>,
    top_degree: u32,
}

impl GradedAlgebra {
    /// Builds and validates an algebra from `(i, j, k, c)` entries meaning
    /// `e_i·e_j` has coefficient `c` on `e_k`. Products with the unit `e_0`
    /// may be omitted.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u32>,
        entries: &[(usize, usize, usize, BigRational)],
        integral: Vec<BigRational>,
        top_degree: u32,
    ) -> Result<Self> {
        let dim = names.len();
        let bad = |m: String| Err(Error::InvalidAlgebra(m));
        if dim == 0 {
            return bad("empty basis".into());
        }
        if degrees.len() != dim || integral.len() != dim {
            return bad(format!(
                "basis has {dim} elements but {} degrees and {} integral values",
                degrees.len(),
                integral.len()
            ));
        }
        if degrees[0] != 0 {
            return bad("basis element 0 must be the unit in degree 0".into());
        }
        for (i, &d) in degrees.iter().enumerate() {
            if d % 2 != 0 {
                return bad(format!("basis element {} has odd degree {d}", names[i]));
            }
            if d > top_degree {
                return bad(format!("basis element {} exceeds top degree", names[i]));
            }
            if i > 0 && d == 0 {
                return bad(format!("basis element {} has degree 0 but is not the unit", names[i]));
            }
        }
        let mut table = vec![vec![Vec::<(usize, BigRational)>::new(); dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return bad(format!("table entry ({i},{j},{k}) out of range"));
            }
            if c.is_zero() {
                given[i][j] = true;
                continue;
            }
            if degrees[k] != degrees[i] + degrees[j] {
                return bad(format!(
                    "table entry {}·{} -> {} breaks the grading",
                    names[i], names[j], names[k]
                ));
            }
            given[i][j] = true;
            add_into(&mut table[i][j], k, c.clone());
        }
        for j in 0..dim {
            for (a, b) in [(0, j), (j, 0)] {
                let expected: BasisVec = vec![(j, BigRational::one())];
                if given[a][b] {
                    if normalized(&table[a][b]) != expected {
                        return bad(format!("unit law fails for {}", names[j]));
                    }
                } else {
                    table[a][b] = expected;
                }
            }
        }
        for v in table.iter_mut().flatten() {
            *v = normalized(v);
        }
        let alg = GradedAlgebra { names, degrees, table, integral, top_degree };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::InvalidAlgebra(format!(
                        "not commutative on ({}, {})",
                        self.names[i], self.names[j]
                    )));
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = self.mul_vec(&self.table[i][j], &[(k, BigRational::one())]);
                    let right = self.mul_vec(&[(i, BigRational::one())], &self.table[j][k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        for (i, c) in self.integral.iter().enumerate() {
            if !c.is_zero() && self.degrees[i] != self.top_degree {
                return Err(Error::InvalidAlgebra(format!(
                    "integral is nonzero on {} outside the top degree",
                    self.names[i]
                )));
            }
        }
        let bound = self.top_degree / 2 + 1;
        for i in 1..dim {
            let mut p: BasisVec = vec![(i, BigRational::one())];
            let mut k = 1;
            while !p.is_empty() {
                if k > bound {
                    return Err(Error::InvalidAlgebra(format!("{} is not nilpotent", self.names[i])));
                }
                p = self.mul_vec(&p, &[(i, BigRational::one())]);
                k += 1;
            }
        }
        Ok(())
    }

    /// `H*(pt)`: one basis element, `∫1 = 1`.
    pub fn point() -> Self {
        GradedAlgebra {
            names: vec!["1".into()],
            degrees: vec![0],
            table: vec![vec![vec![(0, BigRational::one())]]],
            integral: vec![BigRational::one()],
            top_degree: 0,
        }
    }

    /// `H*(ℂP^k) = ℚ[u]/u^{k+1}` with `∫u^k = 1`.
    pub fn projective(k: usize) -> Self {
        let names: Vec<String> = (0..=k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            })
            .collect();
        let degrees = (0..=k).map(|i| 2 * i as u32).collect();
        let mut entries = Vec::new();
        for i in 0..=k {
            for j in 0..=k {
                if i + j <= k {
                    entries.push((i, j, i + j, BigRational::one()));
                }
            }
        }
        let mut integral = vec![BigRational::zero(); k + 1];
        integral[k] = BigRational::one();
        GradedAlgebra::new(names, degrees, &entries, integral, 2 * k as u32).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn integral(&self) -> &[BigRational] {
        &self.integral
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, BigRational)] {
        &self.table[i][j]
    }

    /// Entries `(i, j, k, c)` of the multiplication table.
    pub fn table_entries(&self) -> Vec<(usize, usize, usize, BigRational)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, a: &[(usize, BigRational)], b: &[(usize, BigRational)]) -> BasisVec {
        let mut out = Vec::new();
        for (i, ca) in a {
            for (j, cb) in b {
                for (k, c) in &self.table[*i][*j] {
                    add_into(&mut out, *k, ca * cb * c);
                }
            }
        }
        normalized(&out)
    }

    /// Tensor product `A ⊗ B`, e.g. cohomology of a product of fixed spheres.
    pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> Self {
        let idx = |i: usize, j: usize| i * b.dim() + j;
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut integral = Vec::new();
        for i in 0..a.dim() {
            for j in 0..b.dim() {
                names.push(match (i, j) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => a.names[i].clone(),
                    (0, _) => b.names[j].clone(),
                    _ => format!("{}*{}", a.names[i], b.names[j]),
                });
                degrees.push(a.degrees[i] + b.degrees[j]);
                integral.push(&a.integral[i] * &b.integral[j]);
            }
        }
        let mut entries = Vec::new();
        for i1 in 0..a.dim() {
            for j1 in 0..b.dim() {
                for i2 in 0..a.dim() {
                    for j2 in 0..b.dim() {
                        for (ka, ca) in &a.table[i1][i2] {
                            for (kb, cb) in &b.table[j1][j2] {
                                entries.push((idx(i1, j1), idx(i2, j2), idx(*ka, *kb), ca * cb));
                            }
                        }
                    }
                }
            }
        }
        GradedAlgebra::new(names, degrees, &entries, integral, a.top_degree + b.top_degree)
            .expect("tensor of valid algebras is valid")
    }
}

fn add_into(v: &mut BasisVec, k: usize, c: BigRational) {
    if let Some(slot) = v.iter_mut().find(|(i, _)| *i == k) {
        slot.1 += c;
    } else {
        v.push((k, c));
    }
}

fn normalized(v: &[(usize, BigRational)]) -> BasisVec {
    let mut out: BasisVec = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    out.sort_by_key(|(k, _)| *k);
    let mut merged: BasisVec = Vec::new();
    for (k, c) in out {
        match merged.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => merged.push((k, c)),
        }
    }
    merged.retain(|(_, c)| !c.is_zero());
    merged
}

#[allow(dead_code)]
fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp2_square_of_generator() {
        // truncated-polynomial table built by hand: u·u = u², u·u² = 0
        let a = GradedAlgebra::projective(2);
        assert_eq!(a.product(1, 1), &[(2, int(1))]);
        assert!(a.product(1, 2).is_empty());
        assert_eq!(a.integral(), &[int(0), int(0), int(1)]);
    }

    #[test]
    fn rejects_non_associative_table() {
        let names = vec!["1".into(), "u".into(), "v".into(), "w".into()];
        let degrees = vec![0, 2, 2, 4];
        let entries = vec![
            (1, 2, 3, int(1)),
            (2, 1, 3, int(1)),
            (1, 1, 3, int(1)),
            (2, 2, 3, int(0)),
        ];
        let ok = GradedAlgebra::new(names.clone(), degrees.clone(), &entries, vec![int(0), int(0), int(0), int(1)], 4);
        assert!(ok.is_ok());
        // degree-2 element with a nonzero product into degree 2 is a grading error
        let bad = vec![(1, 1, 2, int(1))];
        let err = GradedAlgebra::new(names.clone(), degrees.clone(), &bad, vec![int(0); 4], 4).unwrap_err();
        assert!(err.to_string().contains("grading"));
        let asym = vec![(1, 2, 3, int(1))];
        let err = GradedAlgebra::new(names, degrees, &asym, vec![int(0); 4], 4).unwrap_err();
        assert!(err.to_string().contains("commutative"));
    }

    #[test]
    fn associativity_failure_names_triple() {
        // a·a = c, a·b = d, a·c = t, b·c = t: (a·a)·b = t but a·(a·b) = a·d = 0
        let names: Vec<String> = ["1", "a", "b", "c", "d", "t"].iter().map(|s| s.to_string()).collect();
        let degrees = vec![0, 2, 2, 4, 4, 6];
        let mut entries = Vec::new();
        for (i, j, k) in [(1, 1, 3), (1, 2, 4), (1, 3, 5), (2, 3, 5)] {
            entries.push((i, j, k, int(1)));
            entries.push((j, i, k, int(1)));
        }
        let integral = vec![int(0), int(0), int(0), int(0), int(0), int(1)];
        let err = GradedAlgebra::new(names, degrees, &entries, integral, 6).unwrap_err();
        assert!(err.to_string().contains("not associative on (a, a, b)"), "{err}");
    }

    #[test]
    fn tensor_of_spheres() {
        let s = GradedAlgebra::projective(1);
        let t = GradedAlgebra::tensor(&s, &s);
        assert_eq!(t.dim(), 4);
        assert_eq!(t.top_degree(), 4);
        assert_eq!(t.product(1, 2), &[(3, int(1))]);
        assert_eq!(t.integral()[3], int(1));
    }
}
