//! Worked values for the experiment drivers.

use gutt::experiments::{
    check_nilpotent_estimates, heisenberg_growth, linear_constant, no_exponential_witness, GridConfig, SampleSet,
};
use gutt::lie::basis_vector;
use gutt::rational::int;
use gutt::{Gutt, LieAlgebra, Seminorm};

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

#[test]
fn growth_table_small_rows() {
    let g = Gutt::new(LieAlgebra::heisenberg());
    let t = heisenberg_growth(&g, 0.5, 0.125, 4).unwrap();
    assert_eq!(t.rows.len(), 4);
    assert!(close(t.rows[3].factor_norm, 24f64.powf(-0.125)));
    // P ⋆ Q = PQ + E/2 at z = 1
    assert!(close(t.rows[0].product_norm, 2f64.sqrt() + 0.5));
    assert!(t.product_increasing() && t.factor_decreasing());
}

#[test]
fn growth_bound_fails_without_the_power_of_two() {
    let g = Gutt::new(LieAlgebra::heisenberg());
    let t = heisenberg_growth(&g, 0.0, 0.2, 12).unwrap();
    assert!(t.stated_bound_failures().contains(&8));
    assert!(t.corrected_bound_holds());
}

#[test]
fn third_coefficient_of_squares_vanishes() {
    let g = Gutt::new(LieAlgebra::heisenberg());
    let c = g.star_pbw(&g.parse("P^2").unwrap(), &g.parse("Q^2").unwrap()).unwrap();
    assert_eq!(c.z_degree(), Some(2));
    assert!(c.z_coefficient(3).is_zero());
}

#[test]
fn exponential_series_diverges_at_r2() {
    let s = no_exponential_witness(&Seminorm::unit(3), 2.0, &basis_vector(3, 0), 10).unwrap();
    let mut fact = 1.0;
    for n in 0..=10 {
        if n > 0 {
            fact *= n as f64;
        }
        assert!(s.partial[n] >= fact * (1.0 - 1e-12), "N = {n}");
    }
    assert!(s.witness_holds());
}

#[test]
fn linear_constant_values() {
    assert!(close(linear_constant(0.0, 1.0).unwrap(), 1.0));
    // |z| >= 2π switches to the product of two series, which needs R > 1
    let big = linear_constant(7.0, 2.0).unwrap();
    assert!(big.is_finite() && big > linear_constant(6.0, 2.0).unwrap());
    assert!(linear_constant(7.0, 1.0).is_err());
    assert!(linear_constant(1.0, 0.5).is_err());
}

#[test]
fn nilpotent_epsilon_for_heisenberg() {
    let g = Gutt::new(LieAlgebra::heisenberg());
    let config = GridConfig { max_degree: 3, random: 2, seed: 0 };
    let s = SampleSet::new(&g, &config).unwrap();
    let reports = check_nilpotent_estimates(&g, &Seminorm::unit(3), 0.5, &int(1), &s, 3, &config).unwrap();
    // N = 2, so ε = (1 - R)/2
    assert!(reports[0].samples[0].params.contains("eps=0.25"), "{}", reports[0].samples[0].params);
    assert!(reports.iter().all(|r| r.passed()));
    let sl2 = Gutt::new(LieAlgebra::sl2());
    let s = SampleSet::new(&sl2, &config).unwrap();
    assert!(matches!(
        check_nilpotent_estimates(&sl2, &Seminorm::unit(3), 0.5, &int(1), &s, 3, &config),
        Err(gutt::Error::NotNilpotent)
    ));
}
