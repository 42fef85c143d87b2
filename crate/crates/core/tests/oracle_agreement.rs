use dirac_pauli::oracle::{canonical_residual, compare_spectrum, first_order_residual, shoot_eigenvalue, standard_grid};
use dirac_pauli::{coefficients, energy_level, BoundState, Branch, Convention, FieldConfig, PartnerMode, QuantumNumbers};

fn cfg() -> FieldConfig {
    FieldConfig::new(1.0, 1.0, 0.001).unwrap()
}

const BRANCHES: [(Branch, Convention); 2] =
    [(Branch::Plus, Convention::SignAware), (Branch::Minus, Convention::CorrectedMinus)];

#[test]
fn shooting_rediscovers_both_branches() {
    for (branch, conv) in BRANCHES {
        let rows = compare_spectrum(&cfg(), branch, conv, 2, 2).unwrap();
        assert_eq!(rows.len(), 9);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!((row.n, row.ell), (i as u32 / 3, i as u32 % 3));
            assert!(row.passes(1e-6), "{branch} {row:?}");
            assert_eq!(row.shooting.unwrap().node_count, row.n);
        }
    }
}

#[test]
fn first_excited_plus_state() {
    let c = cfg();
    let qn = QuantumNumbers::new(1, 0);
    let want = energy_level(&c, qn, Branch::Plus, Convention::SignAware).unwrap();
    let family = |e: f64| coefficients(&c, qn, Branch::Plus, e, Convention::SignAware);
    let r = shoot_eigenvalue(family, 1, (1.2 * want, 0.8 * want), 1e-10).unwrap();
    assert!((r.energy / want - 1.0).abs() <= 1e-6);
    assert_eq!(r.node_count, 1);
}

#[test]
fn shooting_is_bit_identical() {
    let c = cfg();
    let qn = QuantumNumbers::new(2, 1);
    let family = |e: f64| coefficients(&c, qn, Branch::Minus, e, Convention::CorrectedMinus);
    let want = energy_level(&c, qn, Branch::Minus, Convention::CorrectedMinus).unwrap();
    let bracket = (want - 2e-4, want + 2e-4);
    let a = shoot_eigenvalue(family, 2, bracket, 1e-10).unwrap();
    let b = shoot_eigenvalue(family, 2, bracket, 1e-10).unwrap();
    assert_eq!(a.energy.to_bits(), b.energy.to_bits());
    assert_eq!(a, b);
}

#[test]
fn closed_forms_solve_the_canonical_equation() {
    for (branch, conv) in BRANCHES {
        for n in 0..3 {
            for ell in 0..3 {
                let s = BoundState::new(&cfg(), QuantumNumbers::new(n, ell), branch, conv).unwrap();
                let grid = standard_grid(s.ode()).unwrap();
                let rep = canonical_residual(s.ode(), &s, &grid).unwrap();
                assert!(rep.max_rel <= 1e-9, "{branch} n={n} ell={ell}: {}", rep.max_rel);
            }
        }
    }
}

#[test]
fn residual_tracks_energy_error() {
    // shifting eps by delta moves c1 by +-2 delta, so the residual becomes -+2 delta y / r
    for (branch, conv) in BRANCHES {
        let c = cfg();
        let qn = QuantumNumbers::new(1, 1);
        let s = BoundState::new(&c, qn, branch, conv).unwrap();
        let delta = 1e-3 * s.energy().abs();
        let off = coefficients(&c, qn, branch, s.energy() + delta, conv).unwrap();
        let grid = standard_grid(s.ode()).unwrap();
        let rep = canonical_residual(&off, &s, &grid).unwrap();
        let sign = if branch == Branch::Plus { -1.0 } else { 1.0 };
        for (&r, &res) in grid.iter().zip(&rep.residuals) {
            let y = s.upper(r).unwrap();
            let expected = sign * 2.0 * delta * y / r;
            if expected.abs() > 1e-300 {
                assert!((res / expected - 1.0).abs() <= 1e-3, "{branch} r={r}: {res} vs {expected}");
            }
        }
    }
}

#[test]
fn plus_first_order_system_closes() {
    for n in 0..3 {
        for ell in 0..3 {
            let s = BoundState::new(&cfg(), QuantumNumbers::new(n, ell), Branch::Plus, Convention::SignAware).unwrap();
            let grid = standard_grid(s.ode()).unwrap();
            let rep = first_order_residual(&s, PartnerMode::RelationDerived, &grid).unwrap();
            assert!(rep.partner_relation.max_rel <= 1e-12, "{}", rep.partner_relation.max_rel);
            assert!(rep.closure_relation.max_rel <= 1e-9, "n={n} ell={ell}: {}", rep.closure_relation.max_rel);
        }
    }
}

#[test]
fn minus_relation_partner_is_exact_by_construction() {
    let s = BoundState::new(&cfg(), QuantumNumbers::new(1, 1), Branch::Minus, Convention::CorrectedMinus).unwrap();
    let grid = standard_grid(s.ode()).unwrap();
    let rep = first_order_residual(&s, PartnerMode::RelationDerived, &grid).unwrap();
    assert!(rep.partner_relation.max_rel <= 1e-12, "{}", rep.partner_relation.max_rel);
}
