//! The fields of the similarity map for one family: ζ, ρ, φ, the trap v
//! and the modulated couplings, at a few points.
//!
//!     cargo run --example similarity_fields -- cq-dark 1.5

use nlse_solitons::{ModulationShape, PotentialForm, ProfileKind, SimilarityMap, StationaryProfile, WidthProfile};

fn main() -> nlse_solitons::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: ProfileKind = args.next().as_deref().unwrap_or("cubic-bright").parse()?;
    let t: f64 = args.next().map_or(Ok(0.0), |s| s.parse()).expect("time must be a number");

    let profile = StationaryProfile::new(kind);
    let map = SimilarityMap::for_profile(WidthProfile::periodic(), ModulationShape::new(0.5)?, &profile)?;
    let w = map.eval_chi(t);
    println!("{kind} at t = {t}: χ = {:.6}, χ' = {:.6}, ω = {:.6}", w.chi, w.chi_dot, map.eval_omega(t));
    println!("{:>6} {:>10} {:>10} {:>10} {:>12} {:>12} {:>12}", "x", "zeta", "rho", "phi", "v", "g3", "|psi|^2");
    for x in [-4.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0] {
        let (_, zeta) = map.eval_zeta(x, t);
        let psi = map.assemble_wavefunction(&profile, x, t)?;
        println!(
            "{x:6.2} {zeta:10.5} {:10.5} {:10.5} {:12.5} {:12.5} {:12.6}",
            map.eval_rho(x, t),
            map.eval_phase(x, t),
            map.eval_potential(PotentialForm::Generic, x, t),
            map.eval_nonlinearity(1, x, t)?,
            psi.norm_sqr()
        );
    }
    if !kind.is_cubic() {
        println!("g5(0, t) = {:.6}", map.eval_nonlinearity(2, 0.0, t)?);
    }
    Ok(())
}
