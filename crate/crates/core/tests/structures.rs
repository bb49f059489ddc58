use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use kirwan::dataset::{builtin_source, load_builtin, parse_dataset};
use kirwan::kernels::{enumerate_generic_directions, sign_vector, ChamberStrategy};
use kirwan::localization::{
    abbv_sum, is_generic, kappa_s_integral, CircleDirection, HamiltonianSpace, RestrictedClass,
};
use kirwan::symcore::Poly;
use kirwan::Error;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// ℂP² with weights (0, 0, 1): a fixed ℂP¹ at the minimum and an isolated
/// maximum. `h` restricts to the hyperplane class `u` and to `−X`.
fn cp2() -> Value {
    json!({
        "torus_rank": 1,
        "dim_M": 4,
        "variables": ["X"],
        "components": [
            {
                "name": "L", "moment": ["-1"],
                "algebra": {"basis": ["1", "u"], "degrees": [0, 2], "mult_table": [], "integral": ["0", "1"], "top_degree": 2},
                "normal_lines": [{"weight": [1], "chern": ["0", "1"]}]
            },
            {
                "name": "p", "moment": ["1"],
                "algebra": {"basis": ["1"], "degrees": [0], "mult_table": [], "integral": ["1"], "top_degree": 0},
                "normal_lines": [{"weight": [-1], "chern": ["0"]}, {"weight": [-1], "chern": ["0"]}]
            }
        ],
        "generators": [
            {"name": "1", "degree": 0, "restrictions": {
                "L": [{"coeff": "1", "exponents": [0], "basis_index": 0}],
                "p": [{"coeff": "1", "exponents": [0], "basis_index": 0}]}},
            {"name": "h", "degree": 2, "restrictions": {
                "L": [{"coeff": "1", "exponents": [0], "basis_index": 1}],
                "p": [{"coeff": "-1", "exponents": [1], "basis_index": 0}]}}
        ]
    })
}

#[test]
fn projective_plane_with_fixed_line() {
    let d = parse_dataset(&cp2().to_string()).unwrap();
    let s = &d.space;
    let h = s.generator("h").unwrap().class.clone();
    // ∫_L u/(X+u) − X/X² = 1/X − 1/X
    assert!(abbv_sum(s, &h).unwrap().polynomial.unwrap().is_zero());
    // ∫_M h² = 1
    assert_eq!(abbv_sum(s, &h.mul(&h)).unwrap().polynomial, Some(Poly::constant(1, q(1))));
    let up = CircleDirection::from_i64(&[1]).unwrap();
    let down = up.neg();
    assert_eq!(kappa_s_integral(s, &h, &up).unwrap().value, Poly::constant(1, q(-1)));
    assert_eq!(kappa_s_integral(s, &h, &down).unwrap().value, Poly::constant(1, q(1)));
    assert!(kappa_s_integral(s, &RestrictedClass::one(s), &up).unwrap().value.is_zero());
}

/// `(S²)^k` with the full torus, sphere `i` of moment range `±a_i`.
fn sphere_product(sizes: &[i64]) -> String {
    let k = sizes.len();
    let names: Vec<String> = (0..k).map(|i| format!("Y{i}")).collect();
    let mut components = Vec::new();
    for mask in 0..(1u32 << k) {
        let north = |i: usize| mask & (1 << i) == 0;
        let moment: Vec<String> = (0..k).map(|i| (if north(i) { sizes[i] } else { -sizes[i] }).to_string()).collect();
        let lines: Vec<Value> = (0..k)
            .map(|i| {
                let mut w = vec![0i64; k];
                w[i] = if north(i) { -1 } else { 1 };
                json!({"weight": w, "chern": ["0"]})
            })
            .collect();
        let name: String = (0..k).map(|i| if north(i) { 'N' } else { 'S' }).collect();
        components.push(json!({
            "name": name, "moment": moment,
            "algebra": {"basis": ["1"], "degrees": [0], "mult_table": [], "integral": ["1"], "top_degree": 0},
            "normal_lines": lines
        }));
    }
    let unit: serde_json::Map<String, Value> = components
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), json!([{"coeff": "1", "exponents": vec![0; k], "basis_index": 0}])))
        .collect();
    json!({
        "torus_rank": k, "dim_M": 2 * k, "variables": names, "components": components,
        "generators": [{"name": "1", "degree": 0, "restrictions": unit}]
    })
    .to_string()
}

/// Every sign vector realized by an integer direction in a box.
fn lattice_chambers(space: &HamiltonianSpace, radius: i64) -> BTreeSet<Vec<i8>> {
    let n = space.nvars();
    let mut out = BTreeSet::new();
    let mut v = vec![-radius; n];
    loop {
        if let Ok(xi) = CircleDirection::from_i64(&v) {
            if is_generic(space, &xi).unwrap().generic {
                out.insert(sign_vector(space, &xi));
            }
        }
        let mut i = 0;
        while i < n && v[i] == radius {
            v[i] = -radius;
            i += 1;
        }
        if i == n {
            return out;
        }
        v[i] += 1;
    }
}

#[test]
fn chambers_match_a_lattice_oracle() {
    for sizes in [&[1i64, 1][..], &[1, 2], &[1, 1, 1], &[1, 2, 3]] {
        let d = parse_dataset(&sphere_product(sizes)).unwrap();
        let found = enumerate_generic_directions(&d.space, ChamberStrategy::default()).unwrap();
        assert!(found.exact);
        let signs: BTreeSet<Vec<i8>> = found.directions.iter().map(|xi| sign_vector(&d.space, xi)).collect();
        assert_eq!(signs.len(), found.directions.len(), "{sizes:?}: one direction per chamber");
        assert_eq!(signs, lattice_chambers(&d.space, 7), "{sizes:?}");
        assert!(found.directions.windows(2).all(|w| w[0] != w[1]));
    }
}

#[test]
fn chamber_output_is_stable() {
    let d = load_builtin("s2xs2-t2").unwrap();
    let a = enumerate_generic_directions(&d.space, ChamberStrategy::default()).unwrap();
    let b = enumerate_generic_directions(&d.space, ChamberStrategy::default()).unwrap();
    assert_eq!(a.directions, b.directions);
    let lattice = enumerate_generic_directions(&d.space, ChamberStrategy::Lattice { box_radius: 3 }).unwrap();
    assert!(!lattice.exact);
    assert_eq!(lattice.directions.len(), 8);
}

#[test]
fn zero_moment_has_no_generic_circle() {
    let mut v: Value = serde_json::from_str(&sphere_product(&[1])).unwrap();
    v["components"][0]["moment"] = json!(["0"]);
    let d = parse_dataset(&v.to_string()).unwrap();
    let found = enumerate_generic_directions(&d.space, ChamberStrategy::default()).unwrap();
    assert!(found.directions.is_empty());
    assert!(!found.warnings.is_empty());
}

fn weyl_variant(edit: impl FnOnce(&mut Value)) -> Result<(), Error> {
    let mut v: Value = serde_json::from_str(builtin_source("s2cubed-su2").unwrap()).unwrap();
    edit(&mut v["weyl"]);
    parse_dataset(&v.to_string()).map(|_| ())
}

#[test]
fn malformed_weyl_data_is_rejected() {
    assert!(weyl_variant(|_| {}).is_ok());
    // perm not a bijection
    assert!(weyl_variant(|w| w["elements"][1]["perm"][0] = json!(1)).is_err());
    // det 2
    assert!(weyl_variant(|w| w["elements"][1]["matrix"] = json!([[2]])).is_err());
    // not closed under composition: drop the identity
    assert!(weyl_variant(|w| {
        let flip = w["elements"][1].clone();
        w["elements"] = json!([flip]);
    })
    .is_err());
    // moments not carried along
    assert!(weyl_variant(|w| w["elements"][1]["matrix"] = json!([[1]])).is_err());
    // zero root
    assert!(weyl_variant(|w| w["positive_roots"] = json!([[0]])).is_err());
}
