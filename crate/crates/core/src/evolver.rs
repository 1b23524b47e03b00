//! Time integration of `iΨ_t = −Ψ_xx + v(x,t)Ψ + Σₙ g₂ₙ₊₁(x,t)|Ψ|²ⁿΨ`.
//!
//! Two schemes are provided:
//!
//! * **Split-step Fourier** (Strang): half kinetic step in wavenumber space,
//!   full local phase rotation with coefficients sampled at `t + dt/2`,
//!   second kinetic half step. Periodic boundaries.
//! * **Crank–Nicolson** with a compact fourth-order Laplacian
//!   `B⁻¹δ²/h²`, `B = (1, 10, 1)/12`, so every solve stays tridiagonal. The
//!   nonlinear density is evaluated at the half-step field and refined by
//!   fixed-point iteration. End nodes are pinned to the analytic field.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{compute_observables, FieldState, Grid1D, GridLayout, Observables};
use crate::scenario::Scenario;
use crate::similarity::SimilarityMap;
use crate::stationary::StationaryProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    SplitStepFourier,
    CrankNicolson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Periodic,
    AnalyticDirichlet,
}

impl Scheme {
    pub fn boundary(self) -> Boundary {
        match self {
            Scheme::SplitStepFourier => Boundary::Periodic,
            Scheme::CrankNicolson => Boundary::AnalyticDirichlet,
        }
    }
}

impl Boundary {
    pub fn layout(self) -> GridLayout {
        match self {
            Boundary::Periodic => GridLayout::Periodic,
            Boundary::AnalyticDirichlet => GridLayout::Closed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolverConfig {
    pub scheme: Scheme,
    pub dt: f64,
    pub boundary: Boundary,
    pub snapshot_stride: usize,
}

impl EvolverConfig {
    pub fn new(scheme: Scheme, dt: f64) -> Self {
        Self {
            scheme,
            dt,
            boundary: scheme.boundary(),
            snapshot_stride: 1000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::invalid("dt", format!("must be > 0, got {}", self.dt)));
        }
        if self.boundary != self.scheme.boundary() {
            return Err(Error::invalid(
                "boundary",
                format!("{:?} cannot be used with {:?}", self.boundary, self.scheme),
            ));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::invalid("snapshot_stride", "must be at least 1"));
        }
        Ok(())
    }
}

/// Coefficients of the equation being integrated, and its exact solution
/// when one is known.
pub trait Problem: Sync {
    /// Number of nonlinear terms `g₃, g₅, …`.
    fn order(&self) -> usize;

    /// Fills `v[j] = v(xs[j], t)` and `g[n-1][j] = g₂ₙ₊₁(xs[j], t)`.
    fn coefficients(&self, xs: &[f64], t: f64, v: &mut [f64], g: &mut [Vec<f64>]);

    fn exact(&self, x: f64, t: f64) -> Option<Complex64>;

    /// Exact field on a set of points; returns false if unknown.
    fn exact_on(&self, xs: &[f64], t: f64, out: &mut [Complex64]) -> bool {
        for (o, &x) in out.iter_mut().zip(xs) {
            match self.exact(x, t) {
                Some(v) => *o = v,
                None => return false,
            }
        }
        true
    }
}

/// The modulated equation whose exact solution is `ρ e^{iφ} Φ(ζ)`.
#[derive(Debug, Clone)]
pub struct AnalyticSoliton {
    pub map: SimilarityMap,
    pub profile: StationaryProfile,
    /// When set, `v` and `g` come from this map while the exact field still
    /// uses `map`. Used to build deliberately inconsistent problems.
    coefficient_map: Option<SimilarityMap>,
}

impl AnalyticSoliton {
    pub fn new(map: SimilarityMap, profile: StationaryProfile) -> Result<Self> {
        map.assemble_wavefunction(&profile, 0.0, 0.0)?;
        Ok(Self {
            map,
            profile,
            coefficient_map: None,
        })
    }

    pub fn with_coefficients_from(mut self, other: SimilarityMap) -> Self {
        self.coefficient_map = Some(other);
        self
    }
}

impl Problem for AnalyticSoliton {
    fn order(&self) -> usize {
        self.coefficient_map
            .as_ref()
            .unwrap_or(&self.map)
            .couplings()
            .order()
    }

    fn coefficients(&self, xs: &[f64], t: f64, v: &mut [f64], g: &mut [Vec<f64>]) {
        let map = self.coefficient_map.as_ref().unwrap_or(&self.map);
        let frame = map.frame(t);
        for (j, &x) in xs.iter().enumerate() {
            v[j] = map.potential(&frame, x);
            let rho = map.rho(&frame, x);
            for (n, row) in g.iter_mut().enumerate() {
                row[j] = map.nonlinearity_unchecked(n + 1, &frame, rho);
            }
        }
    }

    fn exact(&self, x: f64, t: f64) -> Option<Complex64> {
        Some(self.map.compose(&self.profile, &self.map.frame(t), x))
    }

    fn exact_on(&self, xs: &[f64], t: f64, out: &mut [Complex64]) -> bool {
        let frame = self.map.frame(t);
        for (o, &x) in out.iter_mut().zip(xs) {
            *o = self.map.compose(&self.profile, &frame, x);
        }
        true
    }
}

/// `iΨ_t = −Ψ_xx` with a known exact solution.
pub struct FreeEvolution<F> {
    exact: F,
}

impl<F: Fn(f64, f64) -> Complex64 + Sync> FreeEvolution<F> {
    pub fn new(exact: F) -> Self {
        Self { exact }
    }
}

impl<F: Fn(f64, f64) -> Complex64 + Sync> Problem for FreeEvolution<F> {
    fn order(&self) -> usize {
        0
    }

    fn coefficients(&self, _xs: &[f64], _t: f64, v: &mut [f64], _g: &mut [Vec<f64>]) {
        v.fill(0.0);
    }

    fn exact(&self, x: f64, t: f64) -> Option<Complex64> {
        Some((self.exact)(x, t))
    }
}

/// Plane wave `e^{i(kx − k²t)}`.
pub fn plane_wave(k: f64) -> impl Fn(f64, f64) -> Complex64 + Sync {
    move |x, t| Complex64::from_polar(1.0, k * x - k * k * t)
}

/// Freely spreading Gaussian `√(σ²/a) exp(−x²/(2a))`, `a = σ² + 2it`.
pub fn free_gaussian(sigma: f64) -> impl Fn(f64, f64) -> Complex64 + Sync {
    move |x, t| {
        let a = Complex64::new(sigma * sigma, 2.0 * t);
        (Complex64::new(sigma * sigma, 0.0) / a).sqrt() * (-(x * x) / (2.0 * a)).exp()
    }
}

struct Workspace {
    xs: Vec<f64>,
    v: Vec<f64>,
    g: Vec<Vec<f64>>,
}

impl Workspace {
    fn new(grid: &Grid1D, order: usize) -> Self {
        let n = grid.len();
        Self {
            xs: grid.points(),
            v: vec![0.0; n],
            g: vec![vec![0.0; n]; order],
        }
    }

    fn sample(&mut self, problem: &dyn Problem, t: f64) {
        if self.g.len() != problem.order() {
            self.g = vec![vec![0.0; self.xs.len()]; problem.order()];
        }
        problem.coefficients(&self.xs, t, &mut self.v, &mut self.g);
    }

    /// `v + Σ gₙ |ψ|²ⁿ` at node `j`.
    fn local_energy(&self, j: usize, density: f64) -> f64 {
        let mut e = self.v[j];
        let mut p = 1.0;
        for row in &self.g {
            p *= density;
            e += row[j] * p;
        }
        e
    }
}

struct SplitStep {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// `exp(−i k² dt/2) / n`
    half_kinetic: Vec<Complex64>,
    scratch: Vec<Complex64>,
    wavenumbers: Vec<f64>,
}

impl SplitStep {
    fn new(grid: &Grid1D, dt: f64) -> Self {
        let n = grid.len();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        let length = n as f64 * grid.spacing();
        let wavenumbers: Vec<f64> = (0..n)
            .map(|j| {
                let m = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
                2.0 * std::f64::consts::PI * m / length
            })
            .collect();
        let mut s = Self {
            forward,
            inverse,
            half_kinetic: Vec::new(),
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
            wavenumbers,
        };
        s.set_dt(dt);
        s
    }

    fn set_dt(&mut self, dt: f64) {
        let inv_n = 1.0 / self.wavenumbers.len() as f64;
        self.half_kinetic = self
            .wavenumbers
            .iter()
            .map(|k| Complex64::from_polar(inv_n, -k * k * dt / 2.0))
            .collect();
    }

    fn kinetic(&mut self, psi: &mut [Complex64]) {
        self.forward.process_with_scratch(psi, &mut self.scratch);
        for (p, k) in psi.iter_mut().zip(&self.half_kinetic) {
            *p *= k;
        }
        self.inverse.process_with_scratch(psi, &mut self.scratch);
    }

    fn step(&mut self, psi: &mut [Complex64], work: &Workspace, dt: f64) {
        self.kinetic(psi);
        for (j, p) in psi.iter_mut().enumerate() {
            let e = work.local_energy(j, p.norm_sqr());
            *p *= Complex64::from_polar(1.0, -e * dt);
        }
        self.kinetic(psi);
    }
}

struct CrankNicolson {
    h: f64,
    energy: Vec<f64>,
    guess: Vec<Complex64>,
    next: Vec<Complex64>,
    lower: Vec<Complex64>,
    diag: Vec<Complex64>,
    upper: Vec<Complex64>,
    rhs: Vec<Complex64>,
    last_iterations: usize,
}

impl CrankNicolson {
    const MAX_ITERATIONS: usize = 10;
    const TOLERANCE: f64 = 1e-12;

    fn new(grid: &Grid1D) -> Self {
        let n = grid.len();
        let zero = Complex64::new(0.0, 0.0);
        Self {
            h: grid.spacing(),
            energy: vec![0.0; n],
            guess: vec![zero; n],
            next: vec![zero; n],
            lower: vec![zero; n],
            diag: vec![zero; n],
            upper: vec![zero; n],
            rhs: vec![zero; n],
            last_iterations: 0,
        }
    }

    fn step(
        &mut self,
        psi: &mut [Complex64],
        work: &Workspace,
        dt: f64,
        left: Complex64,
        right: Complex64,
    ) {
        let n = psi.len();
        let a = Complex64::new(0.0, 1.0 / (12.0 * dt));
        let c = 1.0 / (2.0 * self.h * self.h);

        self.guess.copy_from_slice(psi);
        self.guess[0] = left;
        self.guess[n - 1] = right;

        self.last_iterations = 0;
        for _ in 0..Self::MAX_ITERATIONS {
            self.last_iterations += 1;
            for j in 0..n {
                let half = 0.5 * (psi[j] + self.guess[j]);
                self.energy[j] = work.local_energy(j, half.norm_sqr());
            }
            let e = &self.energy;
            for j in 1..n - 1 {
                self.lower[j] = a + c - e[j - 1] / 24.0;
                self.diag[j] = 10.0 * a - 2.0 * c - 10.0 * e[j] / 24.0;
                self.upper[j] = a + c - e[j + 1] / 24.0;
                self.rhs[j] = (a - c + e[j - 1] / 24.0) * psi[j - 1]
                    + (10.0 * a + 2.0 * c + 10.0 * e[j] / 24.0) * psi[j]
                    + (a - c + e[j + 1] / 24.0) * psi[j + 1];
            }
            self.rhs[1] -= self.lower[1] * left;
            self.rhs[n - 2] -= self.upper[n - 2] * right;

            self.next[0] = left;
            self.next[n - 1] = right;
            solve_tridiagonal(
                &self.lower[1..n - 1],
                &mut self.diag[1..n - 1],
                &self.upper[1..n - 1],
                &mut self.rhs[1..n - 1],
            );
            self.next[1..n - 1].copy_from_slice(&self.rhs[1..n - 1]);

            let change = self
                .next
                .iter()
                .zip(&self.guess)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            std::mem::swap(&mut self.guess, &mut self.next);
            if change < Self::TOLERANCE {
                break;
            }
        }
        psi.copy_from_slice(&self.guess);
    }
}

/// Thomas algorithm; the solution overwrites `rhs`, `diag` is clobbered.
fn solve_tridiagonal(
    lower: &[Complex64],
    diag: &mut [Complex64],
    upper: &[Complex64],
    rhs: &mut [Complex64],
) {
    let n = diag.len();
    for i in 1..n {
        let w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        let prev = rhs[i - 1];
        rhs[i] -= w * prev;
    }
    rhs[n - 1] /= diag[n - 1];
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1];
        rhs[i] = (rhs[i] - upper[i] * next) / diag[i];
    }
}

enum Engine {
    SplitStep(SplitStep),
    CrankNicolson(CrankNicolson),
}

/// Stepper bound to one grid and one configuration.
pub struct Evolver {
    config: EvolverConfig,
    grid: Grid1D,
    dt: f64,
    work: Workspace,
    engine: Engine,
}

impl Evolver {
    pub fn new(grid: Grid1D, config: EvolverConfig) -> Result<Self> {
        config.validate()?;
        if grid.layout() != config.boundary.layout() {
            return Err(Error::invalid(
                "grid",
                format!("{:?} boundary needs a {:?} grid", config.boundary, config.boundary.layout()),
            ));
        }
        let engine = match config.scheme {
            Scheme::SplitStepFourier => Engine::SplitStep(SplitStep::new(&grid, config.dt)),
            Scheme::CrankNicolson => Engine::CrankNicolson(CrankNicolson::new(&grid)),
        };
        Ok(Self {
            config,
            grid,
            dt: config.dt,
            work: Workspace::new(&grid, 0),
            engine,
        })
    }

    pub fn config(&self) -> &EvolverConfig {
        &self.config
    }

    /// Signed step currently in use.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Flips the direction of time.
    pub fn reverse(&mut self) {
        self.dt = -self.dt;
        if let Engine::SplitStep(s) = &mut self.engine {
            s.set_dt(self.dt);
        }
    }

    /// Fixed-point iterations used by the last Crank–Nicolson step.
    pub fn last_iterations(&self) -> usize {
        match &self.engine {
            Engine::CrankNicolson(cn) => cn.last_iterations,
            Engine::SplitStep(_) => 0,
        }
    }

    /// Advances `state` by one step. `index` is only used for error reports.
    pub fn step(&mut self, state: &mut FieldState, problem: &dyn Problem, index: usize) -> Result<()> {
        if state.grid != self.grid {
            return Err(Error::GridMismatch {
                expected: self.grid.len(),
                found: state.values.len(),
            });
        }
        let dt = self.dt;
        let t_mid = state.t + 0.5 * dt;
        self.work.sample(problem, t_mid);
        match &mut self.engine {
            Engine::SplitStep(s) => s.step(&mut state.values, &self.work, dt),
            Engine::CrankNicolson(cn) => {
                let t_new = state.t + dt;
                let (left, right) = problem
                    .exact(self.grid.point(0), t_new)
                    .zip(problem.exact(self.grid.point(self.grid.len() - 1), t_new))
                    .ok_or_else(|| {
                        Error::invalid("boundary", "Dirichlet pinning needs an analytic field")
                    })?;
                cn.step(&mut state.values, &self.work, dt, left, right);
            }
        }
        state.t += dt;
        if !state.is_finite() {
            return Err(Error::NonFinite {
                step: index,
                t: state.t,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub state: FieldState,
    /// `|Ψ_exact|²` on the same nodes, when an exact field is known.
    pub exact_density: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    /// One row per step, including the initial state.
    pub series: Vec<Observables>,
}

impl Trajectory {
    pub fn final_state(&self) -> Option<&FieldState> {
        self.snapshots.last().map(|s| &s.state)
    }

    /// Largest `linf_error` over the whole run.
    pub fn max_linf_error(&self) -> f64 {
        self.series.iter().map(|o| o.linf_error).fold(0.0, f64::max)
    }
}

/// Runs `steps` steps from `initial`, recording observables every step and
/// snapshots every `snapshot_stride` steps (plus the last one).
pub fn integrate(
    problem: &dyn Problem,
    initial: FieldState,
    config: &EvolverConfig,
    steps: usize,
) -> Result<Trajectory> {
    let mut evolver = Evolver::new(initial.grid, *config)?;
    let xs = initial.grid.points();
    let mut reference = vec![Complex64::new(0.0, 0.0); xs.len()];
    let mut state = initial;
    let mut traj = Trajectory::default();

    let mut record = |state: &FieldState, step: usize, traj: &mut Trajectory| -> Result<()> {
        let known = problem.exact_on(&xs, state.t, &mut reference);
        let mut obs = compute_observables(state, &reference)?;
        if !known {
            obs.l2_error = f64::NAN;
            obs.linf_error = f64::NAN;
        }
        traj.series.push(obs);
        if step % config.snapshot_stride == 0 || step == steps {
            traj.snapshots.push(Snapshot {
                step,
                state: state.clone(),
                exact_density: known.then(|| reference.iter().map(|r| r.norm_sqr()).collect()),
            });
        }
        Ok(())
    };

    record(&state, 0, &mut traj)?;
    for k in 1..=steps {
        evolver.step(&mut state, problem, k)?;
        record(&state, k, &mut traj)?;
    }
    Ok(traj)
}

/// Integrates a scenario from its analytic initial field (optionally
/// perturbed) over `[t0, t1]`.
pub fn evolve(scenario: &Scenario) -> Result<Trajectory> {
    let problem = scenario.problem()?;
    let initial = initial_state(scenario, &problem)?;
    integrate(&problem, initial, &scenario.evolver_config(), scenario.steps())
}

/// Analytic `Ψ(x, t0)`, multiplied point-wise by `1 + a·U(−1, 1)` when a
/// seed perturbation of relative amplitude `a` is configured.
pub fn initial_state(scenario: &Scenario, problem: &AnalyticSoliton) -> Result<FieldState> {
    let grid = scenario.grid()?;
    let t0 = scenario.time.t0;
    let mut state = FieldState::from_fn(grid, t0, |x| problem.exact(x, t0).unwrap_or_default())?;
    if let Some(amplitude) = scenario.seed_perturbation.filter(|&a| a != 0.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
        let last = state.values.len() - 1;
        for (j, v) in state.values.iter_mut().enumerate() {
            let r: f64 = rng.gen_range(-1.0..=1.0);
            // Dirichlet ends stay on the analytic field.
            if scenario.boundary == Boundary::AnalyticDirichlet && (j == 0 || j == last) {
                continue;
            }
            *v *= 1.0 + amplitude * r;
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::{ModulationShape, WidthProfile};
    use crate::stationary::ProfileKind;

    fn soliton(kind: ProfileKind, lambda: f64, alpha: f64, beta: f64) -> AnalyticSoliton {
        let profile = StationaryProfile::new(kind);
        let map = SimilarityMap::for_profile(
            WidthProfile::new(alpha, beta),
            ModulationShape::new(lambda).unwrap(),
            &profile,
        )
        .unwrap();
        AnalyticSoliton::new(map, profile).unwrap()
    }

    #[test]
    fn thomas_solves_small_system() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let lower = [c(0.0, 0.0), c(1.0, 0.5), c(-1.0, 0.0)];
        let mut diag = [c(4.0, 1.0), c(5.0, 0.0), c(3.0, -2.0)];
        let upper = [c(1.0, 0.0), c(0.5, 0.5), c(0.0, 0.0)];
        let x = [c(1.0, 2.0), c(-1.0, 0.5), c(0.25, -3.0)];
        let d0 = diag;
        let mut rhs = [
            d0[0] * x[0] + upper[0] * x[1],
            lower[1] * x[0] + d0[1] * x[1] + upper[1] * x[2],
            lower[2] * x[1] + d0[2] * x[2],
        ];
        solve_tridiagonal(&lower, &mut diag, &upper, &mut rhs);
        for (a, b) in rhs.iter().zip(&x) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn plane_wave_is_exact_under_split_step() {
        let length = 2.0 * std::f64::consts::PI;
        let grid = Grid1D::periodic(0.0, length, 64).unwrap();
        let k = 3.0;
        let problem = FreeEvolution::new(plane_wave(k));
        let initial = FieldState::from_fn(grid, 0.0, |x| plane_wave(k)(x, 0.0)).unwrap();
        let traj = integrate(&problem, initial, &EvolverConfig::new(Scheme::SplitStepFourier, 1e-2), 100).unwrap();
        let end = traj.final_state().unwrap();
        for (x, psi) in grid.points().iter().zip(&end.values) {
            assert!((psi - plane_wave(k)(*x, end.t)).norm() < 1e-10);
        }
    }

    #[test]
    fn split_step_preserves_norm_each_step() {
        let problem = soliton(ProfileKind::CubicBright, 0.5, 0.1, 0.0);
        let grid = Grid1D::periodic(-40.0, 40.0, 2048).unwrap();
        let mut state = FieldState::from_fn(grid, 0.0, |x| problem.exact(x, 0.0).unwrap()).unwrap();
        let mut ev = Evolver::new(grid, EvolverConfig::new(Scheme::SplitStepFourier, 1e-3)).unwrap();
        for k in 1..=50 {
            let before = state.norm();
            ev.step(&mut state, &problem, k).unwrap();
            assert!(((state.norm() - before) / before).abs() < 1e-12);
        }
    }

    #[test]
    fn split_step_is_time_reversible() {
        let problem = soliton(ProfileKind::CubicBright, 0.5, 0.1, 0.0);
        let grid = Grid1D::periodic(-40.0, 40.0, 2048).unwrap();
        let initial = FieldState::from_fn(grid, 0.0, |x| problem.exact(x, 0.0).unwrap()).unwrap();
        let mut state = initial.clone();
        let mut ev = Evolver::new(grid, EvolverConfig::new(Scheme::SplitStepFourier, 1e-3)).unwrap();
        for k in 1..=1000 {
            ev.step(&mut state, &problem, k).unwrap();
        }
        ev.reverse();
        for k in 1..=1000 {
            ev.step(&mut state, &problem, k).unwrap();
        }
        let err = state
            .values
            .iter()
            .zip(&initial.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
        assert!(state.t.abs() < 1e-12);
    }

    #[test]
    fn crank_nicolson_fixed_point_converges() {
        let problem = soliton(ProfileKind::CubicDark, 0.5, 0.1, 0.0);
        let grid = Grid1D::closed(-20.0, 20.0, 2001).unwrap();
        let mut state = FieldState::from_fn(grid, 0.0, |x| problem.exact(x, 0.0).unwrap()).unwrap();
        let mut ev = Evolver::new(grid, EvolverConfig::new(Scheme::CrankNicolson, 1e-3)).unwrap();
        ev.step(&mut state, &problem, 1).unwrap();
        assert!(ev.last_iterations() < CrankNicolson::MAX_ITERATIONS);
    }

    #[test]
    fn incompatible_configs_are_rejected() {
        let mut cfg = EvolverConfig::new(Scheme::SplitStepFourier, 1e-3);
        cfg.boundary = Boundary::AnalyticDirichlet;
        assert!(cfg.validate().is_err());
        assert!(EvolverConfig::new(Scheme::CrankNicolson, 0.0).validate().is_err());
        let closed = Grid1D::closed(-1.0, 1.0, 64).unwrap();
        assert!(Evolver::new(closed, EvolverConfig::new(Scheme::SplitStepFourier, 1e-3)).is_err());
    }

    #[test]
    fn blow_up_reports_step_index() {
        struct Explosive;
        impl Problem for Explosive {
            fn order(&self) -> usize {
                1
            }
            fn coefficients(&self, _: &[f64], _: f64, v: &mut [f64], g: &mut [Vec<f64>]) {
                v.fill(0.0);
                g[0].fill(0.0);
            }
            fn exact(&self, _: f64, t: f64) -> Option<Complex64> {
                Some(Complex64::new(if t > 0.0035 { f64::NAN } else { 1.0 }, 0.0))
            }
        }
        let grid = Grid1D::closed(-1.0, 1.0, 32).unwrap();
        let initial = FieldState::from_fn(grid, 0.0, |_| Complex64::new(1.0, 0.0)).unwrap();
        let err = integrate(&Explosive, initial, &EvolverConfig::new(Scheme::CrankNicolson, 1e-3), 10)
            .unwrap_err();
        assert!(matches!(err, Error::NonFinite { step: 4, .. }), "{err}");
    }
}
