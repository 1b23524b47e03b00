//! Parses a scenario document, runs it and writes the standard output
//! layout (metadata.json, series.csv, snapshots/).
//!
//!     cargo run --release --example scenario_run -- scenario.json out/

use std::path::PathBuf;

use nlse_solitons::scenario::{load_scenario, parse_scenario, write_outputs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let scenario = match args.next() {
        Some(path) => load_scenario(path.as_ref())?,
        None => parse_scenario(r#"{"model": "cubic-quintic", "branch": "dark", "beta": 0.1, "time": {"t1": 2}}"#)?,
    };
    let out = PathBuf::from(args.next().unwrap_or_else(|| "run".into()));
    println!("{}", scenario.to_json());
    let traj = nlse_solitons::evolve(&scenario)?;
    write_outputs(&out, &scenario, &traj)?;
    println!("{} snapshots in {}, max density error {:.3e}", traj.snapshots.len(), out.display(), traj.max_linf_error());
    Ok(())
}
