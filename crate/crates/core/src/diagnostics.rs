//! Validation studies built on the closed forms and the evolver.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolver::{AnalyticSoliton, Evolver, EvolverConfig, Problem, Scheme, Trajectory};
use crate::field::FieldState;
use crate::scenario::{Branch, Scenario};
use crate::similarity::{linspace, Lattice, ModulationShape, PotentialForm, SimilarityMap, WidthProfile};
use crate::stationary::{default_samples, stationary_residual, ProfileKind, StationaryProfile};

/// Max residual per refinement level and the observed order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub quantity: String,
    /// Refinement parameter of each level (`h` or `dt`), coarsest first.
    pub levels: Vec<f64>,
    pub residuals: Vec<f64>,
    /// `residuals[k] / residuals[k+1]`.
    pub ratios: Vec<f64>,
    /// Least-squares slope of `ln r` against `ln h`; `None` with fewer than
    /// three levels.
    pub order: Option<f64>,
    /// Levels left out of the fit for sitting on the roundoff floor.
    pub excluded: usize,
    pub reliable: bool,
}

impl ResidualReport {
    fn build(quantity: impl Into<String>, levels: Vec<f64>, residuals: Vec<f64>, floors: &[f64]) -> Self {
        let ratios = residuals.windows(2).map(|w| w[0] / w[1]).collect();
        let mut usable = residuals.len();
        while usable > 0 && residuals[usable - 1] < 10.0 * floors[usable - 1] {
            usable -= 1;
        }
        let excluded = residuals.len() - usable;
        let order = (levels.len() >= 3 && usable >= 2).then(|| fit_order(&levels[..usable], &residuals[..usable]));
        let decreasing = residuals.windows(2).all(|w| w[1] < w[0]);
        Self {
            quantity: quantity.into(),
            levels,
            residuals,
            ratios,
            order,
            excluded,
            reliable: excluded == 0 && decreasing && order.is_some(),
        }
    }

    pub fn order_within(&self, lo: f64, hi: f64) -> bool {
        self.order.is_some_and(|p| (lo..=hi).contains(&p))
    }

    pub fn ratios_within(&self, target: f64, tolerance: f64) -> bool {
        !self.ratios.is_empty() && self.ratios.iter().all(|r| (r - target).abs() <= tolerance)
    }
}

/// Slope of the least-squares line through `(ln h, ln r)`.
pub fn fit_order(levels: &[f64], residuals: &[f64]) -> f64 {
    let n = levels.len() as f64;
    let xs: Vec<f64> = levels.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Constraint residuals at each lattice, one report per constraint.
pub fn constraint_study(map: &SimilarityMap, lattices: &[Lattice]) -> [ResidualReport; 3] {
    let reports: Vec<_> = lattices.par_iter().map(|l| map.verify_constraints(l)).collect();
    let levels: Vec<f64> = lattices.iter().map(|l| l.step).collect();
    let floors = vec![0.0; levels.len()];
    let names = ["continuity", "transport", "flux"];
    std::array::from_fn(|i| {
        let residuals = reports.iter().map(|r| r.residuals()[i]).collect();
        ResidualReport::build(names[i], levels.clone(), residuals, &floors)
    })
}

/// `max |R|` and `max |Ψ|` over one lattice, where
/// `R = iΨ_t + Ψ_xx − vΨ − Σ gₙ|Ψ|²ⁿΨ` is evaluated with fourth-order
/// central differences of step `lattice.step` in both `x` and `t`.
///
/// `Ψ = ρ e^{iφ} Φ(ζ)` is composed without checking that `profile` belongs
/// to the couplings of `map`, so mismatched pairs can be probed.
pub fn pde_residual_level(map: &SimilarityMap, profile: &StationaryProfile, lattice: &Lattice) -> (f64, f64) {
    let h = lattice.step;
    let xs = lattice.xs();
    lattice
        .ts()
        .par_iter()
        .map(|&t| {
            let frames: Vec<_> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|k| map.frame(t + k * h)).collect();
            let now = &frames[2];
            let psi = |frame, x| map.compose(profile, frame, x);
            let mut max_r = 0.0f64;
            let mut max_psi = 0.0f64;
            for &x in &xs {
                let p0 = psi(now, x);
                let psi_t = (-psi(&frames[4], x) + 8.0 * psi(&frames[3], x) - 8.0 * psi(&frames[1], x)
                    + psi(&frames[0], x))
                    / (12.0 * h);
                let psi_xx = (-psi(now, x + 2.0 * h) + 16.0 * psi(now, x + h) - 30.0 * p0
                    + 16.0 * psi(now, x - h)
                    - psi(now, x - 2.0 * h))
                    / (12.0 * h * h);
                let rho = map.rho(now, x);
                let density = p0.norm_sqr();
                let mut local = map.potential(now, x);
                let mut power = 1.0;
                for n in 1..=map.couplings().order() {
                    power *= density;
                    local += map.nonlinearity_unchecked(n, now, rho) * power;
                }
                let r = Complex64::i() * psi_t + psi_xx - local * p0;
                max_r = max_r.max(r.norm());
                max_psi = max_psi.max(p0.norm());
            }
            (max_r, max_psi)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)))
}

/// Residual of the full equation for the assembled analytic field over a
/// sequence of lattices. A level is dropped from the order fit when its
/// residual is within 10× of the roundoff floor `1e-13·max|Ψ|/h²`.
pub fn pde_residual(map: &SimilarityMap, profile: &StationaryProfile, lattices: &[Lattice]) -> ResidualReport {
    let (residuals, floors): (Vec<f64>, Vec<f64>) = lattices
        .iter()
        .map(|l| {
            let (r, p) = pde_residual_level(map, profile, l);
            (r, 1e-13 * p / (l.step * l.step))
        })
        .unzip();
    let levels = lattices.iter().map(|l| l.step).collect();
    ResidualReport::build(format!("pde-residual/{}", profile.kind), levels, residuals, &floors)
}

/// `levels` differencing steps `h0, h0/2, …` on the same sample points.
pub fn refinement(base: Lattice, levels: usize) -> Vec<Lattice> {
    std::iter::successors(Some(base), |l| Some(l.refined())).take(levels).collect()
}

/// Advances `initial` by `steps` steps without recording anything.
pub fn advance(problem: &dyn Problem, initial: &FieldState, config: EvolverConfig, steps: usize) -> Result<FieldState> {
    let mut evolver = Evolver::new(initial.grid, config)?;
    let mut state = initial.clone();
    for k in 1..=steps {
        evolver.step(&mut state, problem, k)?;
    }
    Ok(state)
}

/// Field error `max |Ψ_num − Ψ_exact|` at `t0 + duration` for
/// `dt0, dt0/2, …`. The levels run in parallel.
pub fn temporal_convergence(
    problem: &dyn Problem,
    initial: &FieldState,
    scheme: Scheme,
    dt0: f64,
    duration: f64,
    levels: usize,
) -> Result<ResidualReport> {
    if levels < 3 {
        return Err(Error::invalid("levels", format!("need at least 3, got {levels}")));
    }
    let xs = initial.grid.points();
    let dts: Vec<f64> = (0..levels).map(|k| dt0 / 2f64.powi(k as i32)).collect();
    let runs: Vec<Result<(f64, f64)>> = dts
        .par_iter()
        .map(|&dt| {
            let steps = (duration / dt).round() as usize;
            let config = EvolverConfig::new(scheme, duration / steps as f64);
            let end = advance(problem, initial, config, steps)?;
            let mut exact = vec![Complex64::new(0.0, 0.0); xs.len()];
            if !problem.exact_on(&xs, end.t, &mut exact) {
                return Err(Error::invalid("problem", "convergence needs an exact solution"));
            }
            let err = end.values.iter().zip(&exact).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            let scale = exact.iter().map(|v| v.norm()).fold(0.0, f64::max);
            Ok((err, scale))
        })
        .collect();
    let mut residuals = Vec::with_capacity(levels);
    let mut floors = Vec::with_capacity(levels);
    for r in runs {
        let (err, scale) = r?;
        residuals.push(err);
        floors.push(1e-11 * scale);
    }
    Ok(ResidualReport::build(format!("temporal/{scheme:?}"), dts, residuals, &floors))
}

/// Halves the scenario's `dt` `levels − 1` times over its own time span.
pub fn convergence_study(scenario: &Scenario, levels: usize) -> Result<ResidualReport> {
    let problem = scenario.problem()?;
    let initial = crate::evolver::initial_state(scenario, &problem)?;
    temporal_convergence(
        &problem,
        &initial,
        scenario.scheme,
        scenario.time.dt,
        scenario.time.t1 - scenario.time.t0,
        levels,
    )
}

/// True when the density has exactly one local maximum above `1e-3` of its
/// peak and has decayed below `1e-2` of the peak at both ends.
pub fn is_single_peaked(density: &[f64]) -> bool {
    let peak = density.iter().copied().fold(0.0, f64::max);
    if peak <= 0.0 || density.len() < 3 {
        return false;
    }
    let floor = 1e-3 * peak;
    let maxima = (1..density.len() - 1)
        .filter(|&j| density[j] > floor && density[j] >= density[j - 1] && density[j] > density[j + 1])
        .count();
    maxima == 1 && density[0] < 1e-2 * peak && density[density.len() - 1] < 1e-2 * peak
}

/// Position of the single notch, if the density has exactly one local
/// minimum below half its maximum.
pub fn single_notch(xs: &[f64], density: &[f64]) -> Option<f64> {
    let top = density.iter().copied().fold(0.0, f64::max);
    let minima: Vec<usize> = (1..density.len() - 1)
        .filter(|&j| density[j] < 0.5 * top && density[j] <= density[j - 1] && density[j] < density[j + 1])
        .collect();
    match minima.as_slice() {
        [j] => Some(xs[*j]),
        _ => None,
    }
}

/// Summary of one run of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub value: f64,
    pub peak_min: f64,
    pub peak_max: f64,
    pub width_min: f64,
    pub width_max: f64,
    pub max_l2_error: f64,
    pub max_linf_error: f64,
    /// Every snapshot single-peaked (bright) or single-notched (dark).
    pub localized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub parameter: String,
    pub values: Vec<f64>,
    pub summaries: Vec<RunSummary>,
}

pub fn summarize(value: f64, branch: Branch, traj: &Trajectory) -> RunSummary {
    let fold = |f: fn(&crate::field::Observables) -> f64, init: f64, op: fn(f64, f64) -> f64| {
        traj.series.iter().map(f).fold(init, op)
    };
    let localized = traj.snapshots.iter().all(|s| {
        let d = s.state.density();
        match branch {
            Branch::Bright => is_single_peaked(&d),
            Branch::Dark => single_notch(&s.state.grid.points(), &d).is_some(),
        }
    });
    RunSummary {
        value,
        peak_min: fold(|o| o.peak, f64::INFINITY, f64::min),
        peak_max: fold(|o| o.peak, 0.0, f64::max),
        width_min: fold(|o| o.width, f64::INFINITY, f64::min),
        width_max: fold(|o| o.width, 0.0, f64::max),
        max_l2_error: fold(|o| o.l2_error, 0.0, f64::max),
        max_linf_error: fold(|o| o.linf_error, 0.0, f64::max),
        localized,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParameter {
    Lambda,
    Alpha,
    Beta,
    Dt,
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(Self::Lambda),
            "alpha" => Ok(Self::Alpha),
            "beta" => Ok(Self::Beta),
            "dt" => Ok(Self::Dt),
            other => Err(Error::invalid("param", format!("unknown sweep parameter `{other}`"))),
        }
    }
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            Self::Lambda => "lambda",
            Self::Alpha => "alpha",
            Self::Beta => "beta",
            Self::Dt => "dt",
        }
    }

    fn apply(self, scenario: &Scenario, value: f64) -> Scenario {
        let mut s = scenario.clone();
        match self {
            Self::Lambda => s.lambda = value,
            Self::Alpha => s.alpha = value,
            Self::Beta => s.beta = value,
            Self::Dt => s.time.dt = value,
        }
        s
    }
}

/// Runs `scenario` once per value of `param`, in parallel.
pub fn sweep(scenario: &Scenario, param: SweepParameter, values: &[f64]) -> Result<SweepResult> {
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    if values.is_empty() || !(increasing || decreasing) {
        return Err(Error::invalid("values", "need a non-empty, strictly monotone list"));
    }
    let scenarios = values
        .iter()
        .map(|&v| {
            let s = param.apply(scenario, v);
            s.validate()?;
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    let summaries = scenarios
        .par_iter()
        .zip(values)
        .map(|(s, &v)| Ok(summarize(v, s.branch, &crate::evolver::evolve(s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        parameter: param.name().to_owned(),
        values: values.to_vec(),
        summaries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaFlipReport {
    pub sweep: SweepResult,
    /// `λ = 0`: the flip is the identity and only one run is made.
    pub identity: bool,
    /// `|Ψ_{−λ}(0,t)|² / |Ψ_{+λ}(0,t)|²` from the closed forms at `t0`;
    /// bright branches only.
    pub analytic_peak_ratio: Option<f64>,
    pub both_localized: bool,
    pub amplitudes_differ: bool,
}

/// Compares the scenario's `λ` with `−λ`.
pub fn lambda_flip_study(scenario: &Scenario) -> Result<LambdaFlipReport> {
    let lambda = scenario.lambda;
    if lambda.abs() >= 1.0 {
        return Err(Error::invalid("lambda", format!("flipping {lambda} leaves the range λ > -1")));
    }
    let mut values = vec![-lambda.abs(), lambda.abs()];
    values.dedup();
    let result = sweep(scenario, SweepParameter::Lambda, &values)?;

    let analytic_peak_ratio = if scenario.branch == Branch::Bright {
        let centre = |l: f64| -> Result<f64> {
            let map = SimilarityMap::new(scenario.width(), ModulationShape::new(l)?, scenario.couplings.clone())?;
            Ok(map.compose(&scenario.profile(), &map.frame(scenario.time.t0), 0.0).norm_sqr())
        };
        Some(centre(-lambda)? / centre(lambda)?)
    } else {
        None
    };
    let both_localized = result.summaries.iter().all(|s| s.localized);
    let amplitudes_differ = match result.summaries.as_slice() {
        [a, b] => (a.peak_max - b.peak_max).abs() > 1e-6 * a.peak_max.max(b.peak_max),
        _ => false,
    };
    Ok(LambdaFlipReport {
        identity: values.len() == 1,
        sweep: result,
        analytic_peak_ratio,
        both_localized,
        amplitudes_differ,
    })
}

/// Parameters shared by the figure tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureParams {
    pub lambda: f64,
    pub periodic: WidthProfile,
    pub quasiperiodic: WidthProfile,
    /// `None` uses `[−10, 10]`, or `[−2, 2]` for figure 3.
    pub x_range: Option<(f64, f64)>,
    pub t_range: (f64, f64),
    pub nx: usize,
    pub nt: usize,
}

impl Default for FigureParams {
    fn default() -> Self {
        Self {
            lambda: ModulationShape::DEFAULT_LAMBDA,
            periodic: WidthProfile::periodic(),
            quasiperiodic: WidthProfile::quasiperiodic(),
            x_range: None,
            t_range: (0.0, 50.0),
            nx: 401,
            nt: 401,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PanelData {
    /// `(t, value)` pairs.
    Series { column: &'static str, t: Vec<f64>, values: Vec<f64> },
    /// `values[it * xs.len() + ix]`.
    Surface { quantity: &'static str, xs: Vec<f64>, ts: Vec<f64>, values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub width: WidthProfile,
    pub kind: Option<ProfileKind>,
    pub data: PanelData,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: u32,
    pub panels: Vec<Panel>,
}

fn surface(xs: &[f64], ts: &[f64], f: impl Fn(f64, f64) -> f64 + Sync) -> Vec<f64> {
    ts.par_iter()
        .flat_map_iter(|&t| xs.iter().map(move |&x| (x, t)).collect::<Vec<_>>())
        .map(|(x, t)| f(x, t))
        .collect()
}

/// Tabulated data behind figures 1–7: the trap frequency series (1),
/// potential surfaces (2, 3) and density surfaces (4–7).
pub fn figure_data(which: u32, params: &FigureParams) -> Result<FigureData> {
    let shape = ModulationShape::new(params.lambda)?;
    let ts = linspace(params.t_range.0, params.t_range.1, params.nt);
    let default_x = if which == 3 { (-2.0, 2.0) } else { (-10.0, 10.0) };
    let (x0, x1) = params.x_range.unwrap_or(default_x);
    let xs = linspace(x0, x1, params.nx);

    let density_panels = |kind: ProfileKind| -> Result<Vec<Panel>> {
        let profile = StationaryProfile::new(kind);
        [("a", params.periodic), ("b", params.quasiperiodic)]
            .into_iter()
            .map(|(name, width)| {
                let map = SimilarityMap::for_profile(width, shape, &profile)?;
                let values = surface(&xs, &ts, |x, t| map.compose(&profile, &map.frame(t), x).norm_sqr());
                Ok(Panel {
                    name: name.to_owned(),
                    width,
                    kind: Some(kind),
                    data: PanelData::Surface { quantity: "density", xs: xs.clone(), ts: ts.clone(), values },
                })
            })
            .collect()
    };

    let panels = match which {
        1 => [("periodic", params.periodic), ("quasiperiodic", params.quasiperiodic)]
            .into_iter()
            .map(|(name, width)| Panel {
                name: name.to_owned(),
                width,
                kind: None,
                data: PanelData::Series {
                    column: "omega",
                    t: ts.clone(),
                    values: ts.iter().map(|&t| width.omega(t)).collect(),
                },
            })
            .collect(),
        2 | 3 => [("a", ProfileKind::CubicBright), ("b", ProfileKind::CubicDark)]
            .into_iter()
            .map(|(name, kind)| {
                let map = SimilarityMap::for_profile(params.periodic, shape, &StationaryProfile::new(kind))?;
                let values = surface(&xs, &ts, |x, t| map.eval_potential(PotentialForm::Branch(kind), x, t));
                Ok(Panel {
                    name: name.to_owned(),
                    width: params.periodic,
                    kind: Some(kind),
                    data: PanelData::Surface { quantity: "potential", xs: xs.clone(), ts: ts.clone(), values },
                })
            })
            .collect::<Result<_>>()?,
        4 => density_panels(ProfileKind::CubicBright)?,
        5 => density_panels(ProfileKind::CubicDark)?,
        6 => density_panels(ProfileKind::CqBright)?,
        7 => density_panels(ProfileKind::CqDark)?,
        other => return Err(Error::InvalidFigure(other)),
    };
    Ok(FigureData { id: which, panels })
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub criterion: String,
    pub passed: bool,
}

impl CheckResult {
    fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            criterion: format!("< {threshold:e}"),
            passed: value < threshold,
        }
    }

    fn ratios(name: impl Into<String>, report: &ResidualReport, target: f64, tol: f64) -> Self {
        let worst = report
            .ratios
            .iter()
            .copied()
            .max_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
            .unwrap_or(f64::NAN);
        Self {
            name: name.into(),
            value: worst,
            criterion: format!("ratio per halving in {target} ± {tol}"),
            passed: report.ratios_within(target, tol),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub lambda: f64,
    pub width: WidthProfile,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Lattice of the algebraic identity checks: 100×100 over
/// `x ∈ [−10, 10]`, `t ∈ [0, 50]`.
pub fn identity_lattice() -> Lattice {
    Lattice::new((-10.0, 10.0, 100), (0.0, 50.0, 100), 0.0)
}

/// Base lattice of the constraint convergence check (steps 0.04, 0.02, 0.01).
pub fn constraint_lattice() -> Lattice {
    Lattice::new((-5.0, 5.0, 41), (0.0, 10.0, 21), 0.04)
}

/// Base lattice of the PDE residual convergence check (steps 0.04, 0.02, 0.01).
pub fn residual_lattice() -> Lattice {
    Lattice::new((-4.0, 4.0, 33), (0.0, 6.0, 13), 0.04)
}

/// Largest deviations of the generic closed forms from the simplified
/// specialisations: `(cubic, quintic, potential, phase)`.
pub fn identity_deviations(map: &SimilarityMap, kind: ProfileKind, lattice: &Lattice) -> (f64, f64, f64, f64) {
    let mut out = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (x, t) in lattice.points() {
        let f = map.frame(t);
        let rho = map.rho(&f, x);
        out.0 = out.0.max((map.nonlinearity_unchecked(1, &f, rho) - map.cubic_modulation(&f, x)).abs());
        if map.couplings().order() >= 2 {
            out.1 = out.1.max((map.nonlinearity_unchecked(2, &f, rho) - map.quintic_modulation(&f, x)).abs());
        }
        out.2 = out.2.max((map.potential(&f, x) - map.branch_potential(kind, &f, x)).abs());
        let phase = -map.phase_gradient(&f, x).powi(2) - map.phase_rate(&f, x);
        out.3 = out.3.max((phase - f.omega() * x * x).abs());
    }
    out
}

/// Stationary, identity, constraint and PDE-residual checks for all four
/// families at the given `λ` and width.
pub fn verify_suite(lambda: f64, width: WidthProfile) -> Result<VerifyReport> {
    let shape = ModulationShape::new(lambda)?;
    let mut checks = Vec::new();
    let samples = default_samples();
    let ident = identity_lattice();

    for kind in ProfileKind::ALL {
        let profile = StationaryProfile::new(kind);
        checks.push(CheckResult::below(
            format!("stationary/{kind}"),
            stationary_residual(&profile, &samples),
            1e-12,
        ));
        let map = SimilarityMap::for_profile(width, shape, &profile)?;
        let (cubic, quintic, potential, phase) = identity_deviations(&map, kind, &ident);
        checks.push(CheckResult::below(format!("identity-cubic/{kind}"), cubic, 1e-12));
        if !kind.is_cubic() {
            checks.push(CheckResult::below(format!("identity-quintic/{kind}"), quintic, 1e-12));
        }
        checks.push(CheckResult::below(format!("branch-potential/{kind}"), potential, 1e-12));
        checks.push(CheckResult::below(format!("phase-trap/{kind}"), phase, 1e-12));
    }

    let bright = StationaryProfile::new(ProfileKind::CubicBright);
    let map = SimilarityMap::for_profile(width, shape, &bright)?;
    let lattices = refinement(constraint_lattice(), 3);
    for report in constraint_study(&map, &lattices) {
        checks.push(CheckResult::ratios(format!("constraint/{}", report.quantity), &report, 4.0, 0.5));
    }
    checks.push(CheckResult::below(
        "constraint/flux-identity",
        map.verify_constraints(&constraint_lattice()).flux_identity,
        1e-12,
    ));

    let lattices = refinement(residual_lattice(), 3);
    let reports: Vec<_> = ProfileKind::ALL
        .par_iter()
        .map(|&kind| -> Result<ResidualReport> {
            let profile = StationaryProfile::new(kind);
            let map = SimilarityMap::for_profile(width, shape, &profile)?;
            Ok(pde_residual(&map, &profile, &lattices))
        })
        .collect::<Result<_>>()?;
    for report in &reports {
        checks.push(CheckResult::ratios(report.quantity.clone(), report, 16.0, 4.0));
    }
    Ok(VerifyReport { lambda, width, checks })
}

/// Builds the analytic problem for one family.
pub fn analytic_problem(kind: ProfileKind, lambda: f64, width: WidthProfile) -> Result<AnalyticSoliton> {
    let profile = StationaryProfile::new(kind);
    let map = SimilarityMap::for_profile(width, ModulationShape::new(lambda)?, &profile)?;
    AnalyticSoliton::new(map, profile)
}
