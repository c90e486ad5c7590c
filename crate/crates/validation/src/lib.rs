//! The acceptance criteria as functions returning a verdict and a one-line
//! summary.

use std::path::Path;
use std::time::{Duration, Instant};

use hawksteer::hawking::{
    closed_form_from_amplitudes, closed_form_report, critical_temperatures, monogamy_residuals,
    pipeline_from_amplitudes, temperature_grid, HawkingAmplitudes,
};
use hawksteer::{GridKind, Pair, Params};
use hawksteer_cli::{app, selfcheck, threads};

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

pub const GOLDEN_ARGS: [&str; 15] = [
    "sweep",
    "--omega",
    "1",
    "--t-min",
    "0.01",
    "--t-max",
    "10",
    "--steps",
    "50",
    "--grid",
    "linear",
    "--pairs",
    "AB,ABbar,BBbar",
    "--measures",
    "both",
];

/// The committed reference sweep for [`GOLDEN_ARGS`].
pub fn golden_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden/sweep_linear_50.csv")
}

fn grid() -> Vec<f64> {
    temperature_grid(1e-2, 1e4, 200, GridKind::Log).unwrap()
}

pub fn asymptotic_entropy_asymmetry() -> Outcome {
    let (delta, took) = timed(|| closed_form_report(&Params::new(1e4, 1.0).unwrap(), Pair::AB).entropy.delta);
    let err = (delta - 0.0944).abs();
    Outcome {
        pass: err < 5e-4 && took < Duration::from_millis(1),
        detail: format!("S_delta(AB, T=1e4) = {delta:.7}, |diff| = {err:.2e} (tol 5e-4), {took:?} (limit 1ms)"),
    }
}

pub fn asymptotic_ent_asymmetry() -> Outcome {
    let (delta, took) = timed(|| closed_form_report(&Params::new(1e4, 1.0).unwrap(), Pair::AB).ent.delta);
    let target = 3f64.sqrt() / 12.0;
    let err = (delta - target).abs();
    // S^4/sqrt3 approaches sqrt3/12 only as O(w/T); shown for comparison.
    let far = (closed_form_report(&Params::new(1e6, 1.0).unwrap(), Pair::AB).ent.delta - target).abs();
    Outcome {
        pass: err < 1e-6 && took < Duration::from_millis(1),
        detail: format!(
            "T_delta(AB, T=1e4) = {delta:.9}, sqrt3/12 = {target:.9}, |diff| = {err:.2e} (tol 1e-6), {took:?} (limit 1ms); \
             |diff| at T=1e6 = {far:.2e}"
        ),
    }
}

pub fn critical_temperature_finders() -> Outcome {
    let (crit, took) = timed(|| critical_temperatures(1.0).unwrap());
    let mut pass = took < Duration::from_secs(1);
    let mut parts = Vec::new();
    for (c, tol) in [
        (&crit.t_birth_ent_abar_to_a, 1e-6),
        (&crit.t_peak_bbbar, 1e-6),
        (&crit.t_death_bbbar, 1e-6),
        (&crit.t_birth_entropy_abar_to_a, 1e-3),
    ] {
        let d = c.discrepancy().unwrap_or(f64::INFINITY);
        pass &= d < tol;
        parts.push(format!("{} rel {d:.1e}", c.name));
    }
    Outcome { pass, detail: format!("{}; {took:?} (limit 1s)", parts.join(", ")) }
}

pub fn monogamy() -> Outcome {
    let threshold = 1.0 / 3f64.sqrt().ln();
    let (result, took) = timed(|| {
        let mut worst = 0.0f64;
        let mut applicability_ok = true;
        for t in grid() {
            let r = monogamy_residuals(&Params::new(t, 1.0).unwrap()).unwrap();
            applicability_ok &=
                r.sum_to_a.is_some() == (t > threshold) && r.difference_to_a.is_some() == (t > threshold);
            worst = worst.max(r.max_abs());
        }
        (worst, applicability_ok)
    });
    let (worst, applicability_ok) = result;
    Outcome {
        pass: worst <= 1e-12 && applicability_ok && took < Duration::from_secs(1),
        detail: format!("max residual {worst:.2e} (tol 1e-12) over 200 points, to-A identities gated at T > {threshold:.4}; {took:?} (limit 1s)"),
    }
}

pub fn concurrence_oracle() -> Outcome {
    let states = selfcheck::oracle_population().unwrap();
    let gap = selfcheck::concurrence_oracle_gap(&states).unwrap();
    Outcome {
        pass: gap <= 1e-10,
        detail: format!("max |formula - spin-flip oracle| = {gap:.2e} over {} states", states.len()),
    }
}

pub fn entropy_oracle() -> Outcome {
    let states = selfcheck::oracle_population().unwrap();
    let gap = selfcheck::entropy_oracle_gap(&states).unwrap();
    Outcome {
        pass: gap <= 1e-10,
        detail: format!("max |closed form - f(oracle)| = {gap:.2e} over {} states", states.len()),
    }
}

pub fn pipeline() -> Outcome {
    let gap = selfcheck::pipeline_gap().unwrap();
    Outcome { pass: gap <= 1e-10, detail: format!("max field discrepancy {gap:.2e}, 3 pairs x 200 points") }
}

pub fn zero_steering() -> Outcome {
    let mut nonzero = 0;
    for t in grid() {
        let a = HawkingAmplitudes::at_temperature_ratio(t).unwrap();
        let closed = closed_form_from_amplitudes(&a, Pair::BBbar);
        let piped = pipeline_from_amplitudes(&a, Pair::BBbar).unwrap();
        for v in [closed.entropy.s_ab, closed.entropy.s_ba, closed.ent.t_ba, piped.ent.t_ba] {
            if v != 0.0 {
                nonzero += 1;
            }
        }
    }
    Outcome {
        pass: nonzero == 0,
        detail: format!("S(BBbar) both directions and T^(Bbar->B): {nonzero} nonzero values"),
    }
}

pub fn orderings_and_shapes() -> Outcome {
    let g = grid();
    let ab: Vec<_> = g.iter().map(|&t| closed_form_report(&Params::new(t, 1.0).unwrap(), Pair::AB)).collect();
    let ordered = ab.iter().all(|r| r.entropy.s_ab >= r.entropy.s_ba);
    let monotone = ab.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        b.entropy.s_ab <= a.entropy.s_ab
            && b.entropy.s_ba <= a.entropy.s_ba
            && b.ent.t_ab <= a.ent.t_ab
            && b.ent.t_ba <= a.ent.t_ba
    });

    let bb: Vec<f64> =
        g.iter().map(|&t| closed_form_report(&Params::new(t, 1.0).unwrap(), Pair::BBbar).ent.t_ab).collect();
    let peak = (0..bb.len()).fold(0, |best, i| if bb[i] > bb[best] { i } else { best });
    let unimodal = bb[..=peak].windows(2).all(|w| w[1] >= w[0]) && bb[peak..].windows(2).all(|w| w[1] <= w[0]);
    let signs: Vec<bool> = bb.iter().map(|&v| v > 1e-14).collect();
    let ups = signs.windows(2).filter(|w| !w[0] && w[1]).count();
    let downs = signs.windows(2).filter(|w| w[0] && !w[1]).count();

    let p = Params::new(1e6, 1.0).unwrap();
    let (x, y) = (closed_form_report(&p, Pair::AB).values(), closed_form_report(&p, Pair::ABbar).values());
    let pairing = x[2..8].iter().zip(&y[2..8]).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);

    Outcome {
        pass: ordered && monotone && unimodal && ups == 1 && downs == 1 && pairing < 1e-5,
        detail: format!(
            "S(A->B) >= S(B->A): {ordered}; AB non-increasing: {monotone}; T(B->Bbar) unimodal: {unimodal} \
             ({ups} up / {downs} down crossing); AB/ABbar gap at 1e6 = {pairing:.2e} (tol 1e-5)"
        ),
    }
}

pub fn cli_determinism() -> Outcome {
    let run = |args: &[&str], threads: &str| -> Vec<u8> {
        std::env::set_var(threads::THREADS_ENV, threads);
        let argv = std::iter::once("hawksteer").chain(args.iter().copied());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = app::run(argv, &mut out, &mut err);
        assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
        out
    };
    let golden = std::fs::read(golden_path()).unwrap();
    let csv_runs = [run(&GOLDEN_ARGS, "1"), run(&GOLDEN_ARGS, "1"), run(&GOLDEN_ARGS, "8"), run(&GOLDEN_ARGS, "8")];
    let csv_ok = csv_runs.iter().all(|c| *c == golden);

    let dir = tempfile::tempdir().unwrap();
    let mut svgs = Vec::new();
    for (k, threads) in ["1", "8"].iter().enumerate() {
        let csv = dir.path().join(format!("s{k}.csv"));
        let svg = dir.path().join(format!("s{k}.svg"));
        std::fs::write(&csv, run(&GOLDEN_ARGS, threads)).unwrap();
        for _ in 0..2 {
            run(&["plot", csv.to_str().unwrap(), "-o", svg.to_str().unwrap(), "--panel", "fig2"], threads);
            svgs.push(std::fs::read(&svg).unwrap());
        }
    }
    std::env::remove_var(threads::THREADS_ENV);
    let svg_ok = svgs.windows(2).all(|w| w[0] == w[1]);
    Outcome {
        pass: csv_ok && svg_ok,
        detail: format!(
            "golden CSV identical over 4 runs (threads 1, 8): {csv_ok}; SVG identical over 4 renders: {svg_ok}"
        ),
    }
}

pub type Criterion = (&'static str, fn() -> Outcome);

pub const CRITERIA: [Criterion; 10] = [
    ("asymptotic entropy asymmetry", asymptotic_entropy_asymmetry),
    ("asymptotic entanglement asymmetry", asymptotic_ent_asymmetry),
    ("critical temperatures", critical_temperature_finders),
    ("monogamy identities", monogamy),
    ("concurrence oracle equivalence", concurrence_oracle),
    ("entropy oracle equivalence", entropy_oracle),
    ("pipeline equivalence", pipeline),
    ("zero-steering claims", zero_steering),
    ("orderings and shapes", orderings_and_shapes),
    ("CLI determinism", cli_determinism),
];
