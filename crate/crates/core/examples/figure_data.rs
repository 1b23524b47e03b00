//! Writes the tabulated data of figures 1–7 as CSV.
//!
//!     cargo run --release --example figure_data -- /tmp/figures

use std::path::PathBuf;

use nlse_solitons::diagnostics::{figure_data, FigureParams, PanelData};
use nlse_solitons::scenario::write_csv;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&out)?;
    for which in 1..=7 {
        let fig = figure_data(which, &FigureParams::default())?;
        for panel in &fig.panels {
            let path = out.join(format!("fig{which}_{}.csv", panel.name));
            match &panel.data {
                PanelData::Series { column, t, values } => {
                    write_csv(&path, &["t", column], t.iter().zip(values).map(|(a, b)| vec![*a, *b]))?
                }
                PanelData::Surface { quantity, xs, ts, values } => write_csv(
                    &path,
                    &["x", "t", quantity],
                    values.iter().enumerate().map(|(k, v)| vec![xs[k % xs.len()], ts[k / xs.len()], *v]),
                )?,
            }
            println!("{}", path.display());
        }
    }
    Ok(())
}
