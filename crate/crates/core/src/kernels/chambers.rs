//! One generic circle per chamber of the arrangement cut out by the moment
//! values and normal weights.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::localization::{is_generic, CircleDirection, HamiltonianSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberStrategy {
    /// Exact traversal in rank ≤ 3, lattice search above.
    Auto { box_radius: u32 },
    /// Integer vectors in `[−r, r]^n`; may miss thin chambers.
    Lattice { box_radius: u32 },
}

impl Default for ChamberStrategy {
    fn default() -> Self {
        ChamberStrategy::Auto { box_radius: 8 }
    }
}

#[derive(Clone, Debug)]
pub struct ChamberEnumeration {
    pub directions: Vec<CircleDirection>,
    pub exact: bool,
    pub warnings: Vec<String>,
}

/// Signs of `⟨μ(F), ξ⟩` for every component, then `⟨w, ξ⟩` for every
/// normal weight, in dataset order.
pub fn sign_vector(space: &HamiltonianSpace, xi: &CircleDirection) -> Vec<i8> {
    let mut out = Vec::new();
    for c in space.components() {
        out.push(sign(&xi.pair(c.moment())));
    }
    for c in space.components() {
        for l in c.normal_lines() {
            out.push(sign_int(&xi.pair_int(l.weight.coeffs())));
        }
    }
    out
}

fn sign(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_int(r: &BigInt) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn enumerate_generic_directions(space: &HamiltonianSpace, strategy: ChamberStrategy) -> Result<ChamberEnumeration> {
    let n = space.nvars();
    let mut warnings = Vec::new();
    let mut normals: Vec<Vec<BigInt>> = Vec::new();
    for c in space.components() {
        match integer_primitive(c.moment()) {
            Some(v) => normals.push(v),
            None => {
                warnings.push(format!("component {} has moment 0; no circle is generic", c.name()));
                return Ok(ChamberEnumeration { directions: Vec::new(), exact: true, warnings });
            }
        }
        for l in c.normal_lines() {
            normals.push(primitive_int(l.weight.coeffs()));
        }
    }
    normals.sort();
    normals.dedup();

    let (candidates, exact) = match strategy {
        ChamberStrategy::Auto { .. } if n <= 3 => (exact_chambers(&normals, n), true),
        ChamberStrategy::Auto { box_radius } | ChamberStrategy::Lattice { box_radius } => {
            warnings.push(format!(
                "chambers found by lattice search in [-{box_radius}, {box_radius}]^{n}; enumeration may be incomplete"
            ));
            (lattice_points(n, box_radius as i64), false)
        }
    };

    let mut by_pattern: BTreeMap<Vec<i8>, CircleDirection> = BTreeMap::new();
    for v in candidates {
        let Some(xi) = CircleDirection::primitive(&v) else { continue };
        if !is_generic(space, &xi)?.generic {
            continue;
        }
        let pattern = sign_vector(space, &xi);
        by_pattern
            .entry(pattern)
            .and_modify(|cur| {
                if smaller(&xi, cur) {
                    *cur = xi.clone();
                }
            })
            .or_insert(xi);
    }
    let mut directions: Vec<CircleDirection> = by_pattern.into_values().collect();
    directions.sort_by(|a, b| if smaller(a, b) { Ordering::Less } else if smaller(b, a) { Ordering::Greater } else { Ordering::Equal });
    Ok(ChamberEnumeration { directions, exact, warnings })
}

/// Shorter (sup norm) first, then lexicographic.
fn smaller(a: &CircleDirection, b: &CircleDirection) -> bool {
    let na = a.xi().iter().map(|c| c.abs()).max().unwrap();
    let nb = b.xi().iter().map(|c| c.abs()).max().unwrap();
    (na, a.xi()) < (nb, b.xi())
}

fn integer_primitive(v: &[BigRational]) -> Option<Vec<BigInt>> {
    let l = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    if ints.iter().all(Zero::is_zero) {
        return None;
    }
    Some(primitive_int(&ints))
}

fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
    if out.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        out = out.iter().map(|c| -c).collect();
    }
    out
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A point in every chamber of the central arrangement `{⟨h, ·⟩ = 0}` in
/// `ℚ^n`, `n ≤ 3` (possibly with repeats).
fn exact_chambers(normals: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if normals.is_empty() {
        let mut e = vec![BigInt::zero(); n];
        e[0] = BigInt::one();
        return vec![e];
    }
    let basis = independent_subset(normals);
    let r = basis.len();
    if r < n {
        // chambers are cylinders over those of the span of the normals:
        // work in coordinates d = Σ t_k·basis_k
        let reduced: Vec<Vec<BigInt>> = normals.iter().map(|h| basis.iter().map(|b| dot(h, b)).collect()).collect();
        return exact_chambers(&reduced, r)
            .into_iter()
            .map(|t| (0..n).map(|i| basis.iter().zip(&t).map(|(b, tk)| &b[i] * tk).sum()).collect())
            .collect();
    }
    match n {
        1 => vec![vec![BigInt::one()], vec![-BigInt::one()]],
        2 => chambers_2d(normals),
        3 => chambers_3d(normals),
        _ => unreachable!("exact enumeration is limited to rank 3"),
    }
}

/// Rank-2 arrangement of lines: sort the rays perpendicular to each line
/// by angle; every sector between consecutive rays is a chamber.
fn chambers_2d(normals: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rays: Vec<[BigInt; 2]> = Vec::new();
    for h in normals {
        let r = [-h[1].clone(), h[0].clone()];
        rays.push([-r[0].clone(), -r[1].clone()]);
        rays.push(r);
    }
    rays.sort_by(angle_cmp);
    rays.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);
    let k = rays.len();
    (0..k)
        .map(|i| {
            let a = &rays[i];
            let b = &rays[(i + 1) % k];
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            if cross.is_positive() {
                vec![&a[0] + &b[0], &a[1] + &b[1]]
            } else {
                // a straight angle (a single line): rotate a by +90°
                vec![-a[1].clone(), a[0].clone()]
            }
        })
        .collect()
}

fn half(v: &[BigInt; 2]) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn angle_cmp(a: &[BigInt; 2], b: &[BigInt; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn cross3(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Essential rank-3 arrangement: every chamber is a pointed cone, so it has
/// an extreme ray `v` on two or more planes. Near `v` the chambers touching
/// it are `K·v + d` for `d` in the chambers of the planes through `v`.
fn chambers_3d(normals: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut vertices: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let v = cross3(&normals[i], &normals[j]);
            if v.iter().any(|c| !c.is_zero()) {
                let v = primitive_int(&v);
                vertices.push(v.iter().map(|c| -c).collect());
                vertices.push(v);
            }
        }
    }
    vertices.sort();
    vertices.dedup();
    let mut out = Vec::new();
    for v in &vertices {
        let through: Vec<Vec<BigInt>> = normals.iter().filter(|h| dot(h, v).is_zero()).cloned().collect();
        // basis a, b of v^⊥ and the planes through v in those coordinates
        let a = primitive_int(&through[0]);
        let a = primitive_int(&cross3(v, &a));
        let b = cross3(v, &a);
        let local: Vec<Vec<BigInt>> = through.iter().map(|h| primitive_int(&[dot(h, &a), dot(h, &b)])).collect();
        let mut local_dedup = local.clone();
        local_dedup.sort();
        local_dedup.dedup();
        for st in chambers_2d(&local_dedup) {
            let d: Vec<BigInt> = (0..3).map(|i| &st[0] * &a[i] + &st[1] * &b[i]).collect();
            // K > |⟨h,d⟩| / |⟨h,v⟩| for every plane not through v
            let mut k = BigInt::one();
            for h in normals {
                let hv = dot(h, v).abs();
                if hv.is_zero() {
                    continue;
                }
                let hd = dot(h, &d).abs();
                let need = hd / &hv + BigInt::one();
                if need > k {
                    k = need;
                }
            }
            out.push((0..3).map(|i| &k * &v[i] + &d[i]).collect());
        }
    }
    out
}

/// Greedy maximal linearly independent subset.
fn independent_subset(vs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    for v in vs {
        let mut rows: Vec<Vec<BigRational>> = chosen.iter().map(|c| to_rat(c)).collect();
        rows.push(to_rat(v));
        if crate::linalg::rank(&rows) == chosen.len() + 1 {
            chosen.push(v.clone());
        }
    }
    chosen
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn lattice_points(n: usize, r: i64) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut cur = vec![-r; n];
    loop {
        if cur.iter().any(|&c| c != 0) {
            out.push(cur.iter().map(|&c| BigInt::from(c)).collect());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < r {
                cur[i] += 1;
                break;
            }
            cur[i] = -r;
            i += 1;
        }
    }
}
