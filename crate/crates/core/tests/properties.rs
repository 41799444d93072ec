use gutt::bch::{bch_ab, bch_tilde, cn_polarized};
use gutt::hopf::{antipode, coproduct, counit};
use gutt::lie::{add_vectors, scale_vector};
use gutt::rational::{int, parse_rational, to_f64};
use gutt::seminorm::within_slack;
use gutt::weyl::weyl_project;
use gutt::{Gutt, LieAlgebra, Monomial, PolyZ, Rational, Seminorm, SymElement};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), dim)
}

fn monomial(dim: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_degree, dim)
        .prop_filter("degree bound", move |e| e.iter().sum::<u32>() <= max_degree)
        .prop_map(Monomial::new)
}

/// z-constant elements with up to `terms` monomials of degree `<= max_degree`.
fn element(dim: usize, max_degree: u32, terms: usize) -> impl Strategy<Value = SymElement> {
    proptest::collection::vec((monomial(dim, max_degree), small_rational()), 0..=terms).prop_map(move |ts| {
        SymElement::from_terms(dim, ts.into_iter().map(|(m, c)| (m, PolyZ::constant(c)))).unwrap()
    })
}

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        Just(LieAlgebra::heisenberg()),
        Just(LieAlgebra::sl2()),
        Just(LieAlgebra::so3()),
        Just(LieAlgebra::abelian(3)),
    ]
}

fn seminorm() -> impl Strategy<Value = Seminorm> {
    proptest::collection::vec((1i64..=5, 1i64..=3), 3)
        .prop_map(|w| Seminorm::new(w.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sym_mul_commutative_associative(x in element(3, 3, 3), y in element(3, 3, 3), w in element(3, 2, 2)) {
        prop_assert_eq!(x.sym_mul(&y).unwrap(), y.sym_mul(&x).unwrap());
        prop_assert_eq!(x.sym_mul(&y).unwrap().sym_mul(&w).unwrap(), x.sym_mul(&y.sym_mul(&w).unwrap()).unwrap());
    }

    #[test]
    fn degree_is_additive(a in monomial(3, 4), b in monomial(3, 4)) {
        let p = SymElement::monomial(a.clone()).sym_mul(&SymElement::monomial(b.clone())).unwrap();
        prop_assert_eq!(p.degree(), Some(a.degree() + b.degree()));
    }

    #[test]
    fn star_is_associative(alg in algebra(), x in element(3, 2, 2), y in element(3, 2, 2), w in element(3, 2, 2)) {
        let g = Gutt::new(alg);
        let left = g.star_pbw(&g.star_pbw(&x, &y).unwrap(), &w).unwrap();
        let right = g.star_pbw(&x, &g.star_pbw(&y, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn routes_agree_on_random_elements(alg in algebra(), x in element(3, 3, 3), y in element(3, 3, 3)) {
        let g = Gutt::new(alg);
        let oracle = g.star_pbw(&x, &y).unwrap();
        prop_assert_eq!(g.star_graded(&x, &y).unwrap(), oracle.clone());
        prop_assert_eq!(g.star_bch(&x, &y).unwrap(), oracle.clone());
        prop_assert_eq!(oracle.z_coefficient(0), x.sym_mul(&y).unwrap());
    }

    #[test]
    fn linear_factor_formula(alg in algebra(), x in element(3, 4, 3), eta in vector(3)) {
        let g = Gutt::new(alg);
        prop_assert_eq!(g.star_linear(&x, &eta).unwrap(), g.star_pbw(&x, &SymElement::from_vector(&eta)).unwrap());
    }

    #[test]
    fn first_order_term_is_half_bracket(alg in algebra(), xi in vector(3), eta in vector(3)) {
        let g = Gutt::new(alg.clone());
        let c1 = g.star_pbw(&SymElement::from_vector(&xi), &SymElement::from_vector(&eta)).unwrap().z_coefficient(1);
        let half = scale_vector(&alg.bracket(&xi, &eta).unwrap(), &Rational::new(1.into(), 2.into()));
        prop_assert_eq!(c1, SymElement::from_vector(&half));
        prop_assert_eq!(bch_ab(&alg, 1, 1, &xi, &eta).unwrap(), half);
    }

    #[test]
    fn bch_of_collinear_vectors_vanishes(alg in algebra(), xi in vector(3), c in small_rational(), a in 1usize..4, b in 1usize..4) {
        let eta = scale_vector(&xi, &c);
        prop_assert!(bch_ab(&alg, a, b, &xi, &eta).unwrap().iter().all(|x| *x == int(0)));
    }

    #[test]
    fn polarization_is_symmetric(alg in algebra(), u in vector(3), v in vector(3), w in vector(3)) {
        let a = bch_tilde(&alg, &[u.clone(), v.clone()], std::slice::from_ref(&w)).unwrap();
        let b = bch_tilde(&alg, &[v.clone(), u.clone()], std::slice::from_ref(&w)).unwrap();
        prop_assert_eq!(a.clone(), b);
        // multilinear in the first slot
        let s = add_vectors(&u, &v);
        let sum = bch_tilde(&alg, &[s, w.clone()], std::slice::from_ref(&u)).unwrap();
        let parts = add_vectors(
            &bch_tilde(&alg, &[u.clone(), w.clone()], std::slice::from_ref(&u)).unwrap(),
            &bch_tilde(&alg, &[v.clone(), w.clone()], std::slice::from_ref(&u)).unwrap(),
        );
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn polarized_coefficients_match_product(alg in algebra(), xs in proptest::collection::vec(vector(3), 0..3), ys in proptest::collection::vec(vector(3), 0..3)) {
        let g = Gutt::new(alg.clone());
        let prod = |vs: &[Vec<Rational>]| vs.iter().fold(SymElement::one(3), |acc, v| acc.sym_mul(&SymElement::from_vector(v)).unwrap());
        let star = g.star_pbw(&prod(&xs), &prod(&ys)).unwrap();
        for n in 0..=xs.len() + ys.len() {
            prop_assert_eq!(cn_polarized(&alg, &xs, &ys, n).unwrap(), star.z_coefficient(n));
        }
    }

    #[test]
    fn pr_norm_is_a_seminorm(p in seminorm(), x in element(3, 4, 3), y in element(3, 4, 3), c in small_rational(), r in 0.0f64..3.0) {
        let sum = p.pr_norm(r, &(&x + &y)).unwrap();
        prop_assert!(within_slack(sum, p.pr_norm(r, &x).unwrap() + p.pr_norm(r, &y).unwrap()));
        let scaled = p.pr_norm(r, &x.scale(&c)).unwrap();
        let expected = to_f64(&num_traits::Signed::abs(&c)) * p.pr_norm(r, &x).unwrap();
        prop_assert!((scaled - expected).abs() <= 1e-9 * expected.max(1.0));
    }

    #[test]
    fn exact_and_float_norms_agree(p in seminorm(), x in element(3, 5, 4), r in 0u32..=3) {
        let exact = to_f64(&p.pr_norm_exact(r, &x).unwrap());
        let float = p.pr_norm(r as f64, &x).unwrap();
        prop_assert!((exact - float).abs() <= 1e-9 * exact.max(1.0));
    }

    #[test]
    fn commutative_product_bound(p in seminorm(), x in element(3, 4, 3), y in element(3, 4, 3), r in 0.0f64..3.0) {
        // p_R(xy) <= (2^R p)_R(x) (2^R p)_R(y)
        let lhs = p.pr_norm(r, &x.sym_mul(&y).unwrap()).unwrap();
        let c = 2f64.powf(r);
        let rhs = p.scaled_pr_norm(c, r, &x).unwrap() * p.scaled_pr_norm(c, r, &y).unwrap();
        prop_assert!(within_slack(lhs, rhs), "{} > {}", lhs, rhs);
    }

    #[test]
    fn antipode_properties(x in element(3, 4, 3), y in element(3, 3, 2), p in seminorm(), r in 0.0f64..2.0) {
        prop_assert_eq!(antipode(&antipode(&x)), x.clone());
        prop_assert_eq!(antipode(&x.sym_mul(&y).unwrap()), antipode(&x).sym_mul(&antipode(&y)).unwrap());
        prop_assert!(within_slack(p.pr_norm(r, &antipode(&x)).unwrap(), p.pr_norm(r, &x).unwrap()));
        for (_, part) in x.homogeneous_parts() {
            prop_assert_eq!(p.pr_norm(r, &antipode(&part)).unwrap(), p.pr_norm(r, &part).unwrap());
        }
    }

    #[test]
    fn counit_is_multiplicative_for_star(alg in algebra(), x in element(3, 3, 3), y in element(3, 3, 3)) {
        let g = Gutt::new(alg);
        prop_assert_eq!(counit(&g.star_pbw(&x, &y).unwrap()), &counit(&x) * &counit(&y));
    }

    #[test]
    fn coproduct_has_full_tensor_degree(x in element(3, 4, 3)) {
        for ((a, b), _) in coproduct(&x).terms() {
            prop_assert!(x.terms().any(|(m, _)| m.degree() == a.degree() + b.degree()));
        }
    }

    #[test]
    fn weyl_projection_is_well_defined(x in element(3, 3, 2), w in element(3, 2, 2), y in element(3, 3, 2), c in small_rational(), z0 in small_rational()) {
        // x and x + (E - c) w represent the same class
        let g = Gutt::new(LieAlgebra::heisenberg());
        let e_minus_c = &g.parse("E").unwrap() - &SymElement::constant(3, c.clone());
        let x2 = &x + &e_minus_c.sym_mul(&w).unwrap();
        prop_assert_eq!(weyl_project(g.algebra(), &x, &c).unwrap(), weyl_project(g.algebra(), &x2, &c).unwrap());
        let a = weyl_project(g.algebra(), &g.star_pbw(&x, &y).unwrap().evaluate_z(&z0), &c).unwrap();
        let b = weyl_project(g.algebra(), &g.star_pbw(&x2, &y).unwrap().evaluate_z(&z0), &c).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn render_parse_round_trip(alg in algebra(), x in element(3, 3, 3), y in element(3, 2, 2)) {
        let g = Gutt::new(alg);
        // products carry z-dependent coefficients
        let p = g.star_pbw(&x, &y).unwrap();
        prop_assert_eq!(g.parse(&g.render(&p)).unwrap(), p);
        prop_assert_eq!(g.parse(&g.render(&x)).unwrap(), x);
    }

    #[test]
    fn brackets_are_lie(alg in algebra(), u in vector(3), v in vector(3), w in vector(3)) {
        let uv = alg.bracket(&u, &v).unwrap();
        let vu = alg.bracket(&v, &u).unwrap();
        prop_assert_eq!(add_vectors(&uv, &vu), vec![int(0); 3]);
        prop_assert!(alg.jacobi_residual(&u, &v, &w).iter().all(|c| *c == int(0)));
    }

    #[test]
    fn polynomial_evaluation_is_a_homomorphism(a in proptest::collection::vec(small_rational(), 0..4), b in proptest::collection::vec(small_rational(), 0..4), z in small_rational()) {
        let (pa, pb) = (PolyZ::from_coeffs(a), PolyZ::from_coeffs(b));
        prop_assert_eq!((&pa * &pb).eval(&z), pa.eval(&z) * pb.eval(&z));
        prop_assert_eq!((&pa + &pb).eval(&z), pa.eval(&z) + pb.eval(&z));
    }

    #[test]
    fn rationals_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&gutt::rational::fmt_rational(&r)).unwrap(), r);
    }
}
