//! Residual of the reduced stationary equation for the four families.

use nlse_solitons::stationary::default_samples;
use nlse_solitons::{stationary_residual, ProfileKind, StationaryProfile};

fn main() {
    let samples = default_samples();
    for kind in ProfileKind::ALL {
        let p = StationaryProfile::new(kind);
        let r = stationary_residual(&p, &samples);
        println!("{kind:<13} μ={:>4} G3={:>4} G5={:>4}  max residual {r:.2e}", p.mu, p.g3, p.g5);
    }
    // A wrong eigenvalue is visible immediately.
    let off = StationaryProfile::new(ProfileKind::CubicDark).with_mu(2.05);
    println!("cubic-dark with μ=2.05: max residual {:.2e}", stationary_residual(&off, &samples));
}
