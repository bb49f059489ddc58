use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use kirwan::dataset::{load_builtin, Dataset};
use kirwan::kernels::{
    enumerate_generic_directions, kappa_t_kernel, residue_kernel_s, tw_subspace, ChamberStrategy,
    DegreeTruncatedModel, Side,
};
use kirwan::localization::{
    abbv_sum, kappa_s_integral, kappa_t_integral, pairing_matrix, CircleDirection, Pairing, RestrictedClass,
    ResidueFrame,
};
use kirwan::residue::{gk_residue, res_laurent, res_partial_fractions};
use kirwan::symcore::{
    euler_class, invert_euler, EquivariantPolynomial, GradedAlgebra, LinearForm, Monomial, NormalLine, Poly,
    RationalSection,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), rational()), 0..=max_terms).prop_map(
        move |terms| {
            Poly::from_terms(
                nvars,
                terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| (Monomial::new(e), c)),
            )
        },
    )
}

fn form(nvars: usize) -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(-3i64..=3, nvars)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| LinearForm::from_i64(&v))
}

/// Forms with a nonzero `X` coefficient.
fn x_form(nvars: usize) -> impl Strategy<Value = LinearForm> {
    (prop_oneof![-3i64..=-1, 1i64..=3], prop::collection::vec(-3i64..=3, nvars - 1)).prop_map(|(x, rest)| {
        let mut v = vec![x];
        v.extend(rest);
        LinearForm::from_i64(&v)
    })
}

fn section(nvars: usize) -> impl Strategy<Value = RationalSection> {
    (poly(nvars, 4, 4), prop::collection::vec((form(nvars), 1u32..=3), 0..=5)).prop_map(move |(num, fs)| {
        RationalSection::scalar(num, fs).expect("nonzero forms")
    })
}

fn sized_section() -> impl Strategy<Value = RationalSection> {
    (1usize..=3).prop_flat_map(section)
}

fn res(h: &RationalSection) -> RationalSection {
    res_partial_fractions(h, 0).unwrap()
}

fn algebras() -> Vec<Arc<GradedAlgebra>> {
    let p1 = GradedAlgebra::projective(1);
    vec![
        Arc::new(GradedAlgebra::point()),
        Arc::new(p1.clone()),
        Arc::new(GradedAlgebra::projective(2)),
        Arc::new(GradedAlgebra::tensor(&p1, &p1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in poly(2, 3, 4), b in poly(2, 3, 4), c in poly(2, 3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Poly::zero(2), a.clone());
        prop_assert_eq!(&a * &Poly::one(2), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_euler_inverts(alg in 0usize..4, lines in prop::collection::vec((form(2), prop::collection::vec(-2i64..=2, 4)), 1..=4)) {
        let a = algebras()[alg].clone();
        let lines: Vec<NormalLine> = lines
            .into_iter()
            .map(|(w, cs)| {
                let chern = (0..a.dim())
                    .map(|b| if a.degree(b) == 2 { q(cs[b % cs.len()], 1) } else { BigRational::zero() })
                    .collect();
                NormalLine::new(w, chern)
            })
            .collect();
        let e = euler_class(&a, 2, &lines).unwrap();
        let inv = invert_euler(&a, 2, &lines).unwrap();
        let one = RationalSection::new(EquivariantPolynomial::one(a.clone(), 2), []).unwrap();
        prop_assert!(inv.mul_num(&e).unwrap().equals(&one));
    }

    #[test]
    fn residue_methods_agree(h in sized_section()) {
        prop_assert!(res(&h).equals(&res_laurent(&h, 0).unwrap()));
    }

    #[test]
    fn gk_matches_partial_fractions(
        alg in 0usize..4,
        alpha in poly(2, 3, 3),
        basis in 0usize..4,
        lines in prop::collection::vec((x_form(2), -2i64..=2), 1..=4),
    ) {
        let a = algebras()[alg].clone();
        let lines: Vec<NormalLine> = lines
            .into_iter()
            .map(|(w, c)| {
                let chern = (0..a.dim()).map(|b| if a.degree(b) == 2 { q(c, 1) } else { BigRational::zero() }).collect();
                NormalLine::new(w, chern)
            })
            .collect();
        let alpha = EquivariantPolynomial::from_poly(a.clone(), alpha)
            .mul(&EquivariantPolynomial::basis_element(a.clone(), 2, basis % a.dim()));
        let gk = gk_residue(&alpha, &lines).unwrap();
        let integrand = invert_euler(&a, 2, &lines).unwrap().mul_num(&alpha).unwrap().integrate();
        let pf = res(&integrand).to_polynomial().expect("every pole involves X");
        prop_assert_eq!(pf.coeff(0), &gk);
    }

    #[test]
    fn residue_of_derivative_vanishes(h in sized_section()) {
        prop_assert!(res(&h.derivative(0)).is_zero());
    }

    #[test]
    fn residue_is_linear_over_y(h1 in section(2), h2 in section(2), a in poly(2, 2, 3)) {
        // a is free of X
        let a = Poly::from_terms(2, a.terms().filter(|(m, _)| m.exponent(0) == 0).map(|(m, c)| (m.clone(), c.clone())));
        let lhs = res(&h1.mul_poly(&a).add(&h2).unwrap());
        let rhs = res(&h1).mul_poly(&a).add(&res(&h2)).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn residue_vanishes_on_polynomials(p in poly(3, 5, 6)) {
        let h = RationalSection::scalar(p, []).unwrap();
        prop_assert!(res(&h).is_zero());
        prop_assert!(res_laurent(&h, 0).unwrap().is_zero());
    }

    #[test]
    fn residue_vanishes_with_degree_gap(
        fs in prop::collection::vec((x_form(2), 1u32..=3), 1..=4),
        num in poly(2, 6, 5),
    ) {
        let den_deg: u32 = fs.iter().map(|(_, k)| k).sum();
        prop_assume!(den_deg >= 2);
        let num = num.truncate_in(0, den_deg - 1);
        let h = RationalSection::scalar(num, fs).unwrap();
        prop_assert!(res(&h).is_zero());
        prop_assert!(res_laurent(&h, 0).unwrap().is_zero());
    }
}

struct Fixture {
    data: Dataset,
    model: DegreeTruncatedModel,
    chambers: Vec<CircleDirection>,
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        ["s2", "s2xs2-t2", "s2xs2-nonisolated", "s2cubed-su2"]
            .iter()
            .map(|n| {
                let data = load_builtin(n).unwrap();
                let model = DegreeTruncatedModel::new(&data.space, 4).unwrap();
                let chambers = enumerate_generic_directions(&data.space, ChamberStrategy::default()).unwrap().directions;
                Fixture { data, model, chambers }
            })
            .collect()
    })
}

/// A random class in a model slice.
fn class_in(f: &Fixture, degree: u32, coeffs: &[i64]) -> RestrictedClass {
    let c: Vec<BigRational> = (0..f.model.dim(degree)).map(|i| q(coeffs[i % coeffs.len()], 1)).collect();
    f.model.class_of(degree, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn abbv_is_polynomial_on_model_classes(ds in 0usize..4, deg in 0u32..=3, coeffs in prop::collection::vec(-3i64..=3, 1..6)) {
        let f = &fixtures()[ds];
        let eta = class_in(f, 2 * deg, &coeffs);
        let r = abbv_sum(&f.data.space, &eta).unwrap();
        prop_assert!(r.is_polynomial());
        if 2 * deg < f.data.space.dim_m() {
            prop_assert!(r.polynomial.unwrap().is_zero());
        }
    }

    #[test]
    fn kappa_s_is_odd_in_the_circle(ds in 0usize..4, deg in 0u32..=2, ch in 0usize..16, coeffs in prop::collection::vec(-3i64..=3, 1..6)) {
        let f = &fixtures()[ds];
        let xi = &f.chambers[ch % f.chambers.len()];
        let eta = class_in(f, 2 * deg, &coeffs);
        let plus = kappa_s_integral(&f.data.space, &eta, xi).unwrap();
        let minus = kappa_s_integral(&f.data.space, &eta, &xi.neg()).unwrap();
        prop_assert_eq!(plus.basis.matrix(), minus.basis.matrix());
        prop_assert!((&plus.value + &minus.value).is_zero());
    }

    #[test]
    fn kappa_t_is_linear(ds in 0usize..4, a in prop::collection::vec(-3i64..=3, 1..6), b in prop::collection::vec(-3i64..=3, 1..6), s in -3i64..=3) {
        let f = &fixtures()[ds];
        let space = &f.data.space;
        let frame = ResidueFrame::suggest(space).unwrap();
        let top = space.dim_m() - 2 * space.nvars() as u32;
        let (x, y) = (class_in(f, top, &a), class_in(f, top, &b));
        let lhs = kappa_t_integral(space, &x.scale(&q(s, 1)).add(&y).unwrap(), &frame).unwrap();
        let rhs = q(s, 1) * kappa_t_integral(space, &x, &frame).unwrap() + kappa_t_integral(space, &y, &frame).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sides_swap_with_the_circle(ds in 0usize..3, ch in 0usize..16, deg in 0u32..=2) {
        let f = &fixtures()[ds];
        let xi = &f.chambers[ch % f.chambers.len()];
        let d = 2 * deg;
        let plus = tw_subspace(&f.model, xi, Side::Plus, d).unwrap();
        let minus = tw_subspace(&f.model, xi, Side::Minus, d).unwrap();
        prop_assert_eq!(&plus, &tw_subspace(&f.model, &xi.neg(), Side::Minus, d).unwrap());
        prop_assert_eq!(minus.intersect(&plus).dim(), 0);
        let kernel = residue_kernel_s(&f.model, xi, d).unwrap().subspace;
        prop_assert!(plus.is_subspace_of(&kernel));
        prop_assert!(minus.is_subspace_of(&kernel));
        let frame = ResidueFrame::along(xi);
        prop_assert!(kernel.is_subspace_of(&kappa_t_kernel(&f.model, &frame, d).unwrap()));
    }

    #[test]
    fn kernels_ignore_scale(ds in 0usize..2, deg in 0u32..=2, n in 1i64..=5, sign in prop::bool::ANY) {
        let f = &fixtures()[ds];
        let frame = ResidueFrame::suggest(&f.data.space).unwrap();
        let delta = q(if sign { n } else { -n }, 7);
        let scaled = ResidueFrame { ordering: frame.ordering.with_delta(delta).unwrap(), ..frame.clone() };
        prop_assert_eq!(
            kappa_t_kernel(&f.model, &frame, 2 * deg).unwrap(),
            kappa_t_kernel(&f.model, &scaled, 2 * deg).unwrap()
        );
    }
}

#[test]
fn pairing_matrices_are_symmetric() {
    for f in fixtures() {
        let space = &f.data.space;
        let basis: Vec<RestrictedClass> = (0..=4).step_by(2).flat_map(|d| f.model.slice(d).to_vec()).collect();
        let xi = &f.chambers[0];
        for p in [Pairing::KappaS(xi.clone()), Pairing::KappaT(ResidueFrame::suggest(space).unwrap())] {
            let m = pairing_matrix(space, &basis, &p).unwrap();
            for i in 0..m.len() {
                for j in 0..m.len() {
                    assert_eq!(m[i][j], m[j][i]);
                }
            }
            assert!(m.iter().flatten().any(|v| !v.is_zero()));
        }
    }
}

#[test]
fn graded_algebra_laws() {
    for a in algebras() {
        let n = a.dim();
        let basis = |i: usize| vec![(i, BigRational::one())];
        for i in 0..n {
            assert_eq!(a.mul_vec(&basis(0), &basis(i)), a.mul_vec(&basis(i), &basis(0)));
            for j in 0..n {
                assert_eq!(a.mul_vec(&basis(i), &basis(j)), a.mul_vec(&basis(j), &basis(i)));
                for k in 0..n {
                    let l = a.mul_vec(&a.mul_vec(&basis(i), &basis(j)), &basis(k));
                    let r = a.mul_vec(&basis(i), &a.mul_vec(&basis(j), &basis(k)));
                    assert_eq!(l, r);
                }
            }
            if a.degree(i) > 0 {
                let bound = a.top_degree() / 2 + 1;
                let mut p: Vec<(usize, BigRational)> = basis(i);
                let mut k = 1;
                while !p.is_empty() {
                    p = a.mul_vec(&p, &basis(i));
                    k += 1;
                    assert!(k <= bound);
                }
            }
        }
    }
}
