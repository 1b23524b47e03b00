//! Temporal convergence of both schemes on the cubic bright soliton over
//! t ∈ [0, 2].

use nlse_solitons::diagnostics::convergence_study;
use nlse_solitons::evolver::Scheme;
use nlse_solitons::{ProfileKind, Scenario};

fn main() -> nlse_solitons::Result<()> {
    for (scheme, dt, n) in [(Scheme::SplitStepFourier, 1e-2, None), (Scheme::CrankNicolson, 4e-2, Some(4001))] {
        let mut s = Scenario::for_kind(ProfileKind::CubicBright).with_scheme(scheme);
        s.time.t1 = 2.0;
        s.time.dt = dt;
        if let Some(n) = n {
            s.grid.n = n;
        }
        let r = convergence_study(&s, 4)?;
        println!("{scheme:?} on {} points:", s.grid.n);
        for (dt, e) in r.levels.iter().zip(&r.residuals) {
            println!("  dt={dt:<8} max|Ψ−Ψ_exact| = {e:.3e}");
        }
        println!("  order {:.3?} (reliable: {})", r.order, r.reliable);
    }
    Ok(())
}
