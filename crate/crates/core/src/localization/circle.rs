use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::space::HamiltonianSpace;
use crate::error::{Error, Result};

/// A circle `S ⊂ T`, by a primitive integer generator `ξ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleDirection {
    xi: Vec<BigInt>,
}

impl CircleDirection {
    pub fn new(xi: Vec<BigInt>) -> Result<Self> {
        let g = xi.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::Structural("circle direction must be nonzero".into()));
        }
        if !g.is_one() {
            return Err(Error::Structural(format!("circle direction {xi:?} is not primitive")));
        }
        Ok(CircleDirection { xi })
    }

    pub fn from_i64(xi: &[i64]) -> Result<Self> {
        CircleDirection::new(xi.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Divides out the content of a nonzero integer vector.
    pub fn primitive(v: &[BigInt]) -> Option<Self> {
        let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return None;
        }
        Some(CircleDirection { xi: v.iter().map(|c| c / &g).collect() })
    }

    /// Parses `"1,-2"`.
    pub fn parse(text: &str) -> Result<Self> {
        let xi = text
            .split(',')
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad circle entry {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CircleDirection::new(xi)
    }

    pub fn xi(&self) -> &[BigInt] {
        &self.xi
    }

    pub fn rank(&self) -> usize {
        self.xi.len()
    }

    pub fn neg(&self) -> Self {
        CircleDirection { xi: self.xi.iter().map(|c| -c).collect() }
    }

    /// The generator of the same circle whose first nonzero entry is positive.
    pub fn normalized(&self) -> Self {
        let lead = self.xi.iter().find(|c| !c.is_zero()).unwrap();
        if lead.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pair(&self, v: &[BigRational]) -> BigRational {
        self.xi
            .iter()
            .zip(v)
            .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn pair_int(&self, v: &[BigInt]) -> BigInt {
        self.xi.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn to_string_list(&self) -> String {
        self.xi.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl std::fmt::Display for CircleDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_string_list())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityCertificate {
    pub generic: bool,
    pub violations: Vec<String>,
}

/// `⟨μ(F), ξ⟩ ≠ 0` for every component and `⟨w, ξ⟩ ≠ 0` for every normal
/// weight.
pub fn is_generic(space: &HamiltonianSpace, xi: &CircleDirection) -> Result<GenericityCertificate> {
    if xi.rank() != space.nvars() {
        return Err(Error::Structural(format!(
            "circle of rank {} in a torus of rank {}",
            xi.rank(),
            space.nvars()
        )));
    }
    let mut violations = Vec::new();
    for c in space.components() {
        if xi.pair(c.moment()).is_zero() {
            violations.push(format!("component {}: moment pairs to zero", c.name()));
        }
        for (i, l) in c.normal_lines().iter().enumerate() {
            if xi.pair_int(l.weight.coeffs()).is_zero() {
                violations.push(format!("component {}: normal weight {i} ({}) pairs to zero", c.name(), l.weight));
            }
        }
    }
    Ok(GenericityCertificate { generic: violations.is_empty(), violations })
}

pub(crate) fn require_generic(space: &HamiltonianSpace, xi: &CircleDirection) -> Result<()> {
    let cert = is_generic(space, xi)?;
    if !cert.generic {
        return Err(Error::NotGeneric(format!("{xi}: {}", cert.violations.join("; "))));
    }
    Ok(())
}

/// A unimodular integer matrix `U` whose first column is the normalized
/// circle generator, with `det U = 1` in rank ≥ 2. Coordinates change by
/// `x = U x'`, so `X'` runs along the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
}

impl AdaptedBasis {
    pub fn identity(n: usize) -> Self {
        let id = int_identity(n);
        AdaptedBasis { u: id.clone(), u_inv: id }
    }

    pub fn for_direction(xi: &CircleDirection) -> Self {
        let n = xi.rank();
        let mut v: Vec<BigInt> = xi.normalized().xi.clone();
        // row operations V with V·v = e_0, tracking V⁻¹
        let mut vinv = int_identity(n);
        let mut det_sign = 1i8;
        loop {
            let nonzero: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
            if nonzero.len() == 1 {
                let p = nonzero[0];
                if p != 0 {
                    v.swap(0, p);
                    for row in vinv.iter_mut() {
                        row.swap(0, p);
                    }
                    det_sign = -det_sign;
                }
                if v[0].is_negative() {
                    v[0] = -v[0].clone();
                    for row in vinv.iter_mut() {
                        row[0] = -row[0].clone();
                    }
                    det_sign = -det_sign;
                }
                break;
            }
            let j = *nonzero.iter().min_by_key(|&&i| v[i].abs()).unwrap();
            for &i in &nonzero {
                if i == j {
                    continue;
                }
                let q = v[i].div_floor(&v[j]);
                v[i] = &v[i] - &q * &v[j];
                // V ← E·V with E: row_i −= q·row_j, so V⁻¹ ← V⁻¹·E⁻¹: col_j += q·col_i
                for row in vinv.iter_mut() {
                    let add = &q * &row[i];
                    row[j] += add;
                }
            }
        }
        if det_sign < 0 && n >= 2 {
            for row in vinv.iter_mut() {
                row[n - 1] = -row[n - 1].clone();
            }
        }
        let u_inv = int_inverse_unimodular(&vinv);
        AdaptedBasis { u: vinv, u_inv }
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.u
    }

    pub fn inverse(&self) -> &[Vec<BigInt>] {
        &self.u_inv
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    /// The direction of adapted coordinate `k` (column `k` of `U`).
    pub fn column(&self, k: usize) -> CircleDirection {
        CircleDirection::primitive(&self.u.iter().map(|r| r[k].clone()).collect::<Vec<_>>()).expect("unimodular")
    }

    pub fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        self.u
            .iter()
            .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
            .collect()
    }

    /// `Uᵀ v`: a vector of `𝔱*` in adapted coordinates.
    pub fn dual(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| BigRational::from_integer(self.u[i][j].clone()) * &v[i])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }
}

fn int_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Inverse of a unimodular integer matrix via rational Gauss–Jordan.
fn int_inverse_unimodular(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let rows: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let (red, _) = crate::linalg::rref(&rows, 2 * n);
    red.iter()
        .map(|r| r[n..].iter().map(|c| {
            assert!(c.is_integer(), "matrix is not unimodular");
            c.to_integer()
        }).collect())
        .collect()
}

/// Determinant of a small integer matrix by cofactor expansion.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut total = BigInt::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, c)| c.clone()).collect())
                    .collect();
                let term = &m[0][j] * int_det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adapted_basis_first_column_and_det() {
        for xi in [vec![1, 2], vec![-3, 5], vec![0, -1], vec![2, 3, 5], vec![0, 0, 1], vec![6, 10, 15]] {
            let d = CircleDirection::from_i64(&xi).unwrap();
            let b = AdaptedBasis::for_direction(&d);
            assert_eq!(b.column(0), d.normalized());
            assert_eq!(int_det(b.matrix()), BigInt::one(), "{xi:?}");
            let prod: Vec<Vec<BigInt>> = (0..xi.len())
                .map(|i| (0..xi.len()).map(|j| (0..xi.len()).map(|k| &b.matrix()[i][k] * &b.inverse()[k][j]).sum()).collect())
                .collect();
            assert_eq!(prod, int_identity(xi.len()));
        }
        let b = AdaptedBasis::for_direction(&CircleDirection::from_i64(&[-1]).unwrap());
        assert_eq!(b.matrix(), &[vec![BigInt::one()]]);
    }

    #[test]
    fn rejects_non_primitive() {
        assert!(CircleDirection::from_i64(&[2, 4]).is_err());
        assert!(CircleDirection::from_i64(&[0, 0]).is_err());
        assert_eq!(CircleDirection::parse("1, -2").unwrap().xi()[1], BigInt::from(-2));
    }
}
