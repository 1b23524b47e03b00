//! χ(t) and the trap frequency ω(t) for the periodic and quasiperiodic
//! width profiles. ω changes sign, so the trap alternates between
//! confining and expulsive.

use nlse_solitons::similarity::linspace;
use nlse_solitons::WidthProfile;

fn main() {
    let profiles = [("periodic", WidthProfile::periodic()), ("quasiperiodic", WidthProfile::quasiperiodic())];
    println!("{:>6} {:>10} {:>12} {:>10} {:>12}", "t", "chi_p", "omega_p", "chi_q", "omega_q");
    for t in linspace(0.0, 12.0, 25) {
        let p = &profiles[0].1;
        let q = &profiles[1].1;
        println!(
            "{t:6.2} {:10.6} {:12.6} {:10.6} {:12.6}",
            p.eval(t).chi,
            p.omega(t),
            q.eval(t).chi,
            q.omega(t)
        );
    }
    for (name, w) in profiles {
        let ts = linspace(0.0, 50.0, 5001);
        let expulsive = ts.iter().filter(|&&t| w.omega(t) < 0.0).count();
        println!("{name}: ω < 0 for {:.1}% of t in [0, 50]", 100.0 * expulsive as f64 / ts.len() as f64);
    }
}
