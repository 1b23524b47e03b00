use nlse_solitons::diagnostics::{advance, is_single_peaked, single_notch};
use nlse_solitons::evolver::{initial_state, Problem, Scheme};
use nlse_solitons::{
    evolve, AnalyticSoliton, EvolverConfig, ModulationShape, ProfileKind, Scenario, SimilarityMap, StationaryProfile,
    WidthProfile,
};

fn short(kind: ProfileKind, scheme: Scheme, t1: f64) -> Scenario {
    let mut s = Scenario::for_kind(kind).with_scheme(scheme);
    s.time.t1 = t1;
    s.time.snapshot_stride = 250;
    s
}

#[test]
fn cubic_bright_follows_the_closed_form() {
    let cn = evolve(&short(ProfileKind::CubicBright, Scheme::CrankNicolson, 2.0)).unwrap();
    assert!(cn.max_linf_error() < 1e-4, "{}", cn.max_linf_error());
    let ssf = evolve(&short(ProfileKind::CubicBright, Scheme::SplitStepFourier, 2.0)).unwrap();
    assert!(ssf.max_linf_error() < 2e-3, "{}", ssf.max_linf_error());
    for snap in cn.snapshots.iter().chain(&ssf.snapshots) {
        assert!(is_single_peaked(&snap.state.density()));
    }
}

#[test]
fn width_follows_chi() {
    let s = short(ProfileKind::CubicBright, Scheme::CrankNicolson, 2.0 * std::f64::consts::PI);
    let traj = evolve(&s).unwrap();
    // The density is a fixed shape in x/χ, so its rms width is proportional to χ.
    let chi = |t: f64| {
        let s = 1.0 + 0.1 * t.sin();
        1.0 / (1.0 + s * s)
    };
    let ratios: Vec<f64> = traj.series.iter().map(|o| o.width / chi(o.t)).collect();
    let r0 = ratios[0];
    let spread = ratios.iter().map(|r| (r / r0 - 1.0).abs()).fold(0.0, f64::max);
    assert!(spread < 1e-4, "{spread}");
    let widths: Vec<f64> = traj.series.iter().map(|o| o.width).collect();
    let (lo, hi) = widths.iter().fold((f64::MAX, 0.0f64), |(a, b), &w| (a.min(w), b.max(w)));
    assert!(hi / lo > 1.05, "the soliton should breathe");
}

#[test]
fn dark_notch_stays_centred() {
    for kind in [ProfileKind::CubicDark, ProfileKind::CqDark] {
        let mut s = short(kind, Scheme::CrankNicolson, 3.0);
        s.beta = 0.1;
        let traj = evolve(&s).unwrap();
        assert!(traj.max_linf_error() < 1e-4, "{kind}: {}", traj.max_linf_error());
        for snap in &traj.snapshots {
            let notch = single_notch(&snap.state.grid.points(), &snap.state.density());
            assert_eq!(notch, Some(0.0), "{kind} t={}", snap.state.t);
        }
    }
}

#[test]
fn autonomous_cq_bright_is_stationary() {
    let mut s = short(ProfileKind::CqBright, Scheme::CrankNicolson, 0.5);
    s.lambda = 0.0;
    s.alpha = 0.0;
    s.beta = 0.0;
    s.time.snapshot_stride = 50;
    let problem = s.problem().unwrap();
    let xs = s.grid().unwrap().points();
    let mut v = vec![0.0; xs.len()];
    let mut g = vec![vec![0.0; xs.len()]; 2];
    problem.coefficients(&xs, 0.37, &mut v, &mut g);
    assert!(v.iter().all(|v| v.abs() < 1e-14));
    // χ = 1/2, u = 1: g₃ = sgn(G₃)/χ, g₅ = G₅ |G₃|^{-4/3}.
    assert!(g[0].iter().all(|&c| (c - 2.0).abs() < 1e-13));
    assert!(g[1].iter().all(|&c| (c + 3.0 * 2f64.powf(-4.0 / 3.0)).abs() < 1e-13));

    let traj = evolve(&s).unwrap();
    let d0 = traj.snapshots[0].state.density();
    for snap in &traj.snapshots {
        let dev = snap.state.density().iter().zip(&d0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-6, "t={} {dev}", snap.state.t);
    }
}

#[test]
fn strang_error_quarters_per_halving() {
    let mut s = short(ProfileKind::CubicBright, Scheme::SplitStepFourier, 1.0);
    s.time.dt = 1e-2;
    let problem = s.problem().unwrap();
    let initial = initial_state(&s, &problem).unwrap();
    let xs = initial.grid.points();
    let errors: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
        .iter()
        .map(|&dt| {
            let steps = (1.0 / dt as f64).round() as usize;
            let end = advance(&problem, &initial, EvolverConfig::new(Scheme::SplitStepFourier, dt), steps).unwrap();
            xs.iter()
                .zip(&end.values)
                .map(|(&x, v)| (v - problem.exact(x, end.t).unwrap()).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    for w in errors.windows(2) {
        let r = w[0] / w[1];
        assert!((3.5..=4.5).contains(&r), "{errors:?}");
    }
}

#[test]
fn split_step_conserves_norm() {
    let s = short(ProfileKind::CubicBright, Scheme::SplitStepFourier, 10.0);
    assert_eq!(s.steps(), 10_000);
    let traj = evolve(&s).unwrap();
    let n0 = traj.series[0].norm;
    let drift = traj.series.iter().map(|o| ((o.norm - n0) / n0).abs()).fold(0.0, f64::max);
    assert!(drift < 1e-11, "{drift}");
}

#[test]
fn inconsistent_coefficients_are_detected() {
    let bright = StationaryProfile::new(ProfileKind::CubicBright);
    let dark = StationaryProfile::new(ProfileKind::CubicDark);
    let shape = ModulationShape::new(0.5).unwrap();
    let width = WidthProfile::periodic();
    let map = SimilarityMap::for_profile(width, shape, &bright).unwrap();
    let wrong = SimilarityMap::for_profile(width, shape, &dark).unwrap();
    let problem = AnalyticSoliton::new(map, bright).unwrap().with_coefficients_from(wrong);
    let mut s = short(ProfileKind::CubicBright, Scheme::CrankNicolson, 1.0);
    s.time.dt = 2e-3;
    let initial = initial_state(&s, &problem).unwrap();
    let traj = nlse_solitons::integrate(&problem, initial, &s.evolver_config(), s.steps()).unwrap();
    assert!(traj.max_linf_error() > 0.1, "{}", traj.max_linf_error());
}

#[test]
fn seeded_noise_is_reproducible() {
    let mut s = short(ProfileKind::CubicBright, Scheme::CrankNicolson, 0.2);
    s.seed_perturbation = Some(0.01);
    s.seed = 7;
    let a = evolve(&s).unwrap();
    let b = evolve(&s).unwrap();
    assert_eq!(a.final_state().unwrap().values, b.final_state().unwrap().values);
    assert!(a.series[0].linf_error > 1e-4);
    s.seed = 8;
    let c = evolve(&s).unwrap();
    assert_ne!(a.final_state().unwrap().values, c.final_state().unwrap().values);
}
