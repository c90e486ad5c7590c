use hawksteer::hawking::{
    closed_form_from_amplitudes, closed_form_report, critical_temperatures, monogamy_residuals, pipeline_all,
    pipeline_from_amplitudes, pipeline_report, temperature_grid, tripartite_state, BipartitionReport,
    HawkingAmplitudes,
};
use hawksteer::qstate::{bloch_coefficients, partial_trace};
use hawksteer::{GridKind, Pair, Params};

fn log_grid() -> Vec<f64> {
    temperature_grid(1e-2, 1e4, 200, GridKind::Log).unwrap()
}

fn reports(t: f64) -> [BipartitionReport<f64>; 3] {
    let p = Params::new(t, 1.0).unwrap();
    Pair::ALL.map(|pair| closed_form_report(&p, pair))
}

#[test]
fn pipeline_matches_closed_forms_everywhere() {
    let mut worst: f64 = 0.0;
    for t in log_grid() {
        let a = HawkingAmplitudes::at_temperature_ratio(t).unwrap();
        let piped = pipeline_all(&a).unwrap();
        for (pair, via_matrix) in Pair::ALL.into_iter().zip(piped) {
            let closed = closed_form_from_amplitudes(&a, pair);
            for (x, y) in closed.values().iter().zip(via_matrix.values()) {
                worst = worst.max((x - y).abs());
            }
            if closed.ent.t_ab > 1e-12 {
                assert_eq!(closed.ent.branch_ab, via_matrix.ent.branch_ab, "{pair:?} at T={t}");
            }
            if closed.ent.t_ba > 1e-12 {
                assert_eq!(closed.ent.branch_ba, via_matrix.ent.branch_ba, "{pair:?} at T={t}");
            }
        }
    }
    println!("max pipeline discrepancy = {worst:e}");
    assert!(worst <= 1e-10);
}

#[test]
fn pipeline_examples() {
    for (t, pair) in [(1.0, Pair::AB), (3.0, Pair::ABbar), (0.5, Pair::BBbar)] {
        let p = Params::new(t, 1.0).unwrap();
        let a = closed_form_report(&p, pair).values();
        let b = pipeline_report(&p, pair).unwrap().values();
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= 1e-10, "{pair:?} at T={t}: {x} vs {y}");
        }
    }
}

#[test]
fn reduced_states_match_their_matrix_forms() {
    for t in temperature_grid(1e-2, 1e2, 100, GridKind::Log).unwrap() {
        let a = HawkingAmplitudes::<f64>::at_temperature_ratio(t).unwrap();
        let full = tripartite_state(&a).unwrap();
        let (c, s, c2, s2) = (a.c_amp, a.s_amp, a.c_sq, a.s_sq);
        let expected = [
            [c2 / 2.0, s2 / 2.0, 0.0, 0.5, c / 2.0, 0.0],
            [c2 / 2.0, s2 / 2.0, 0.5, 0.0, 0.0, s / 2.0],
            [c2 / 2.0, 0.0, 0.5, s2 / 2.0, c * s / 2.0, 0.0],
        ];
        for (pair, want) in Pair::ALL.into_iter().zip(expected) {
            let r = partial_trace(&full, pair.modes()).unwrap();
            let got = [r.p11, r.p22, r.p33, r.p44, r.c14, r.c23];
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).abs() <= 1e-15, "{pair:?} at T={t}: {got:?}");
            }
        }
    }
}

#[test]
fn bloch_coefficients_of_the_reduced_states() {
    let a = HawkingAmplitudes::<f64>::from_ratio(1.0).unwrap();
    let full = tripartite_state(&a).unwrap();
    let (c, s, c2, s2) = (a.c_amp, a.s_amp, a.c_sq, a.s_sq);
    let want = [[c, -c, c2, 0.0, -s2], [s, s, -s2, 0.0, c2], [c * s, -c * s, 0.0, -s2, c2]];
    for (pair, want) in Pair::ALL.into_iter().zip(want) {
        let b = bloch_coefficients(&partial_trace(&full, pair.modes()).unwrap()).unwrap();
        for (g, w) in b.as_array().iter().zip(want) {
            assert!((g - w).abs() <= 1e-15, "{pair:?}: {:?}", b.as_array());
        }
    }
}

#[test]
fn high_temperature_asymmetries() {
    let [ab, abar, _] = reports(1e4);
    assert!((ab.entropy.delta - 0.0944).abs() < 5e-4);
    assert!((ab.entropy.delta - 0.094351).abs() < 1e-6);
    assert!((ab.ent.delta - 3f64.sqrt() / 12.0).abs() < 2e-5);
    for (x, y) in ab.values()[2..8].iter().zip(&abar.values()[2..8]) {
        assert!((x - y).abs() < 1e-3);
    }
}

#[test]
fn ab_and_abbar_pair_up_asymptotically() {
    let [ab, abar, _] = reports(1e6);
    for (x, y) in ab.values()[2..8].iter().zip(&abar.values()[2..8]) {
        assert!((x - y).abs() < 1e-5, "{x} vs {y}");
    }
    assert!((ab.ent.delta - 3f64.sqrt() / 12.0).abs() < 1e-6);
}

#[test]
fn ab_steerabilities_degrade_with_temperature() {
    let grid = log_grid();
    let rows: Vec<_> = grid.iter().map(|&t| reports(t)[0]).collect();
    for w in rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        assert!(b.entropy.s_ab <= a.entropy.s_ab);
        assert!(b.entropy.s_ba <= a.entropy.s_ba);
        assert!(b.ent.t_ab <= a.ent.t_ab);
        assert!(b.ent.t_ba <= a.ent.t_ba);
    }
    for r in &rows {
        assert!(r.entropy.s_ab >= r.entropy.s_ba);
        assert!(r.ent.t_ab >= r.ent.t_ba);
    }
}

#[test]
fn abbar_direction_and_sensitivity_orderings() {
    for t in log_grid() {
        let abar = reports(t)[1];
        assert!(abar.ent.t_ab >= abar.ent.t_ba, "T={t}");
    }
    let crit = critical_temperatures(1.0).unwrap();
    let s_a_to_abar = *crit.t_birth_entropy_a_to_abar.numeric.as_ref().unwrap();
    let s_abar_to_a = *crit.t_birth_entropy_abar_to_a.numeric.as_ref().unwrap();
    let t_abar_to_a = *crit.t_birth_ent_abar_to_a.numeric.as_ref().unwrap();
    assert!(s_a_to_abar <= s_abar_to_a);
    assert!(t_abar_to_a <= s_abar_to_a);
    // T^{A->Bbar} = S^2 (1 - C^2/sqrt3) is positive for every T > 0, so its
    // birth is at the origin and precedes the entropy-based one.
    for t in [1e-2, 0.1] {
        assert!(reports(t)[1].ent.t_ab > 0.0);
    }
}

#[test]
fn bbbar_is_unimodal_with_sudden_death() {
    let grid = temperature_grid(1e-2, 1e2, 2000, GridKind::Log).unwrap();
    let t: Vec<f64> = grid.iter().map(|&x| reports(x)[2].ent.t_ab).collect();
    let peak = t.iter().enumerate().fold(0, |best, (i, v)| if *v > t[best] { i } else { best });
    assert!(t[..=peak].windows(2).all(|w| w[1] >= w[0]));
    assert!(t[peak..].windows(2).all(|w| w[1] <= w[0]));
    let positive: Vec<bool> = t.iter().map(|&v| v > 1e-14).collect();
    let flips = positive.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(flips, 2, "one birth and one death crossing");
    let death = -1.0 / (3f64.sqrt() - 1.0).ln();
    for (x, v) in grid.iter().zip(&t) {
        if *x > death * (1.0 + 1e-9) {
            assert_eq!(*v, 0.0);
        }
    }
    let tmax = 1.0 / (2.0 + 3f64.sqrt()).ln();
    assert!((grid[peak] - tmax).abs() / tmax < 1e-2);
}

#[test]
fn bbbar_zero_claims_hold_exactly() {
    let root3 = 3f64.sqrt();
    for t in log_grid() {
        let a = HawkingAmplitudes::at_temperature_ratio(t).unwrap();
        let closed = closed_form_from_amplitudes(&a, Pair::BBbar);
        assert_eq!(closed.entropy.s_ab, 0.0, "T={t}");
        assert_eq!(closed.entropy.s_ba, 0.0, "T={t}");
        assert_eq!(closed.ent.t_ba, 0.0, "T={t}");
        assert_eq!(closed.ent.t_ab, (a.s_sq * (a.c_sq - 1.0 / root3)).max(0.0));

        // The matrix route sums order-one logarithms whose exact total sits a
        // hair below the clamp, so it can land one ulp above it.
        let piped = pipeline_from_amplitudes(&a, Pair::BBbar).unwrap();
        assert!(piped.entropy.s_ab <= 1e-15 && piped.entropy.s_ba <= 1e-15, "T={t}");
        assert_eq!(piped.ent.t_ba, 0.0, "T={t}");
    }
}

#[test]
fn concurrence_identities() {
    for t in log_grid() {
        let [ab, abar, bbar] = pipeline_all(&HawkingAmplitudes::at_temperature_ratio(t).unwrap()).unwrap();
        let (x, y, z) = (ab.concurrence, abar.concurrence, bbar.concurrence);
        assert!((x * x + y * y - 1.0).abs() <= 1e-12);
        assert!((z - x * y).abs() <= 1e-12);
    }
}

#[test]
fn monogamy_identities_on_the_grid() {
    let threshold = 1.0 / 3f64.sqrt().ln();
    for t in log_grid() {
        let r = monogamy_residuals(&Params::new(t, 1.0).unwrap()).unwrap();
        assert_eq!(r.sum_to_a.is_some(), t > threshold);
        assert!(r.max_abs() <= 1e-12, "T={t}: {r:?}");
    }
}

#[test]
fn monogamy_examples() {
    let at = |t| monogamy_residuals(&Params::new(t, 1.0).unwrap()).unwrap();
    let below = at(0.1);
    assert!(below.difference_to_a.is_none() && below.sum_to_a.is_none());
    assert!(below.max_abs() <= 1e-12);
    for t in [1.0, 100.0] {
        let r = at(t);
        assert!(r.max_abs() <= 1e-12);
    }
    assert!(at(100.0).all().iter().all(Option::is_some));
}

#[test]
fn critical_temperatures_match_their_formulas() {
    let crit = critical_temperatures(1.0).unwrap();
    let sqrt3 = 3f64.sqrt();
    let tt = crit.t_birth_ent_abar_to_a.numeric.clone().unwrap();
    assert!((tt - 1.0 / sqrt3.ln()).abs() / tt < 1e-9);
    assert!(crit.t_peak_bbbar.discrepancy().unwrap() < 1e-6);
    assert!((crit.t_peak_bbbar.closed_form.unwrap() - 1.0 / (2.0 + sqrt3).ln()).abs() < 1e-14);
    assert!(crit.t_death_bbbar.discrepancy().unwrap() < 1e-6);
    assert!((crit.t_death_bbbar.closed_form.unwrap() - 3.2061).abs() < 1e-4);
    assert!(crit.t_birth_entropy_abar_to_a.discrepancy().unwrap() < 1e-3);
    let ts = crit.t_birth_entropy_abar_to_a.numeric.clone().unwrap();
    assert!((ts - 5.802045611581013).abs() < 1e-8);
    let sa = crit.t_birth_entropy_a_to_abar.numeric.clone().unwrap();
    assert!((sa - 1.0734509476253322).abs() < 1e-8);
}

#[test]
fn critical_temperatures_scale_with_omega() {
    let one = critical_temperatures(1.0).unwrap();
    let two = critical_temperatures(2.0).unwrap();
    for (a, b) in one.entries().iter().zip(two.entries()) {
        let (x, y) = (a.numeric.clone().unwrap(), b.numeric.clone().unwrap());
        assert!((2.0 * x - y).abs() / y < 1e-9, "{}: {x} vs {y}", a.name);
    }
}
