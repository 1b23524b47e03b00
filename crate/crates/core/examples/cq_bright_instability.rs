//! The cubic-quintic bright state (1+ζ²)^{-1/2} sits on the edge of
//! quintic collapse. Even with constant coefficients (α = β = λ = 0) the
//! truncation error grows at a fixed exponential rate, and refining the
//! grid only shifts the curve down.

use nlse_solitons::{evolve, ProfileKind, Scenario};

fn main() -> nlse_solitons::Result<()> {
    for n in [1001, 4001] {
        let mut s = Scenario::for_kind(ProfileKind::CqBright);
        s.lambda = 0.0;
        s.alpha = 0.0;
        s.beta = 0.0;
        s.grid.n = n;
        s.time.t1 = 4.0;
        let traj = evolve(&s)?;
        println!("n = {n}");
        let mut prev: Option<f64> = None;
        for o in traj.series.iter().step_by(500).skip(1) {
            let rate = prev.map_or(String::new(), |p| format!("  growth rate {:.2}", (o.linf_error / p).ln() / 0.5));
            println!("  t={:4.1} max |Δρ| = {:.3e}{rate}", o.t, o.linf_error);
            prev = Some(o.linf_error);
        }
    }
    Ok(())
}
