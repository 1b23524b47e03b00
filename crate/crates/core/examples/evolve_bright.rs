//! Evolves the cubic bright soliton from its closed form and compares with
//! the exact density as the trap breathes.

use nlse_solitons::{evolve, ProfileKind, Scenario};

fn main() -> nlse_solitons::Result<()> {
    let mut s = Scenario::for_kind(ProfileKind::CubicBright);
    s.beta = 0.1;
    s.time.t1 = 10.0;
    let traj = evolve(&s)?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>12}", "t", "norm", "peak", "width", "max |Δρ|");
    for o in traj.series.iter().step_by(500) {
        println!("{:6.2} {:10.6} {:10.6} {:10.6} {:12.3e}", o.t, o.norm, o.peak, o.width, o.linf_error);
    }
    println!("max density error over the run: {:.3e}", traj.max_linf_error());
    Ok(())
}
