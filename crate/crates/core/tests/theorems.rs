use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use kirwan::dataset::load_builtin;
use kirwan::kernels::{
    check_theorem_secondmain, enumerate_generic_directions, full_kernel, ChamberStrategy, DegreeTruncatedModel,
};
use kirwan::localization::{
    abbv_sum, kappa_s_integral, kappa_t_integral, CircleDirection, RestrictedClass, ResidueFrame,
};
use kirwan::symcore::{EquivariantPolynomial, Poly};
use kirwan::weyl::{check_theorem_nonabelian, firstchar_kernel};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn gen(space: &kirwan::localization::HamiltonianSpace, name: &str) -> RestrictedClass {
    space.generator(name).unwrap().class.clone()
}

#[test]
fn sphere_integrals() {
    let d = load_builtin("s2").unwrap();
    let s = &d.space;
    let a = gen(s, "a");
    // a = (X, 0) and e_N = −X
    let r = abbv_sum(s, &a).unwrap();
    assert_eq!(r.polynomial, Some(Poly::constant(1, q(-1))));
    let one = RestrictedClass::one(s);
    assert!(abbv_sum(s, &one).unwrap().polynomial.unwrap().is_zero());

    let plus = CircleDirection::from_i64(&[1]).unwrap();
    let minus = CircleDirection::from_i64(&[-1]).unwrap();
    assert_eq!(kappa_s_integral(s, &one, &plus).unwrap().value, Poly::constant(1, q(-1)));
    assert_eq!(kappa_s_integral(s, &one, &minus).unwrap().value, Poly::constant(1, q(1)));
}

#[test]
fn sphere_pair_kappa_t() {
    let d = load_builtin("s2xs2-t2").unwrap();
    let s = &d.space;
    let one = RestrictedClass::one(s);
    // X alone pairs to zero with (0, −1)
    let std = ResidueFrame::standard(2);
    assert!(matches!(kappa_t_integral(s, &one, &std), Err(kirwan::Error::NonGenericOrdering(_))));
    let xi = CircleDirection::from_i64(&[1, 2]).unwrap();
    assert_eq!(kappa_t_integral(s, &one, &ResidueFrame::along(&xi)).unwrap(), q(1));
    let frame = ResidueFrame::suggest(s).unwrap();
    assert_eq!(kappa_t_integral(s, &one, &frame).unwrap(), q(1));
    // wrong degree
    assert!(kappa_t_integral(s, &gen(s, "a1"), &frame).unwrap().is_zero());

    let ch = enumerate_generic_directions(s, ChamberStrategy::default()).unwrap();
    assert!(ch.exact);
    assert_eq!(ch.directions.len(), 8);
}

#[test]
fn sphere_cube_kappa_t() {
    let d = load_builtin("s2cubed-su2").unwrap();
    let s = &d.space;
    let frame = ResidueFrame::suggest(s).unwrap();
    let x = Poly::var(1, 0);
    let x2 = RestrictedClass::from_poly(s, &x.pow(2)).unwrap();
    assert_eq!(kappa_t_integral(s, &x2, &frame).unwrap(), q(2));
    let xa = RestrictedClass::from_poly(s, &x).unwrap().mul(&gen(s, "a1"));
    assert_eq!(kappa_t_integral(s, &xa, &frame).unwrap(), q(1));
}

#[test]
fn secondmain_on_sphere() {
    let d = load_builtin("s2").unwrap();
    let model = DegreeTruncatedModel::new(&d.space, 4).unwrap();
    for xi in [[1], [-1]] {
        let xi = CircleDirection::from_i64(&xi).unwrap();
        let r = check_theorem_secondmain(&model, &xi, &model.degrees()).unwrap();
        assert!(r.pass(), "{:?}", r.degrees.iter().map(|d| (d.degree, d.equal, d.direct)).collect::<Vec<_>>());
    }
}

#[test]
fn secondmain_every_chamber_of_pair() {
    let d = load_builtin("s2xs2-t2").unwrap();
    let model = DegreeTruncatedModel::new(&d.space, 4).unwrap();
    let ch = enumerate_generic_directions(&d.space, ChamberStrategy::default()).unwrap();
    for xi in &ch.directions {
        let r = check_theorem_secondmain(&model, xi, &model.degrees()).unwrap();
        assert!(r.pass(), "{xi}");
    }
}

#[test]
fn secondmain_nonisolated() {
    let d = load_builtin("s2xs2-nonisolated").unwrap();
    let model = DegreeTruncatedModel::new(&d.space, 4).unwrap();
    for xi in [[1], [-1]] {
        let xi = CircleDirection::from_i64(&xi).unwrap();
        let r = check_theorem_secondmain(&model, &xi, &model.degrees()).unwrap();
        assert!(r.pass(), "{xi}");
    }
}

#[test]
fn full_kernel_on_examples() {
    for name in ["s2", "s2xs2-t2"] {
        let d = load_builtin(name).unwrap();
        let model = DegreeTruncatedModel::new(&d.space, 4).unwrap();
        let frame = ResidueFrame::suggest(&d.space).unwrap();
        let r = full_kernel(&model, &frame, &model.degrees(), ChamberStrategy::default()).unwrap();
        assert!(
            r.pass(),
            "{name}: {:?}",
            r.degrees.iter().map(|d| (d.degree, d.kernel_t.dim(), d.chamber_sum.dim())).collect::<Vec<_>>()
        );
    }
}

#[test]
fn nonabelian_and_firstchar() {
    let d = load_builtin("s2cubed-su2").unwrap();
    let weyl = d.weyl.as_ref().unwrap();
    let model = DegreeTruncatedModel::with_headroom(&d.space, 6, weyl.d_degree()).unwrap();
    let frame = ResidueFrame::suggest(&d.space).unwrap();
    let r = check_theorem_nonabelian(&model, weyl, &frame, &model.degrees()).unwrap();
    assert!(r.pass());
    let f = firstchar_kernel(&model, weyl, &frame, &model.degrees()).unwrap();
    assert!(f.pass());
    // the pairing must be nondegenerate somewhere for the check to mean anything
    assert!(r.degrees.iter().any(|d| d.kappa_k_kernel.dim() < d.invariant_dim));
}

#[test]
fn constant_class_is_the_unit() {
    let d = load_builtin("s2").unwrap();
    let one = RestrictedClass::one(&d.space);
    for r in one.restrictions() {
        assert_eq!(r, &EquivariantPolynomial::one(r.algebra().clone(), 1));
    }
}
