//! Key rate against fiber length for five squeezing levels. Writes the CSV
//! to the given path (stdout otherwise) and reports where each curve ends.
//!
//! ```bash
//! cargo run --example distance_sweep -- /tmp/distance.csv
//! ```

use udqkd::runner::{cmd_sweep_distance, Scenario};

fn main() -> udqkd::Result<()> {
    let scenario = Scenario::default();
    let report = cmd_sweep_distance(&scenario)?;
    match std::env::args().nth(1) {
        Some(path) => report.write(Some(path.as_ref()), false)?,
        None => print!("{}", report.to_csv()?),
    }

    let distances = report.column("distance_km").expect("distance column");
    for (j, r) in scenario.r_grid.iter().enumerate() {
        let col = report.column(&report.columns[2 + j]).expect("rate column");
        let reach = distances
            .iter()
            .zip(&col)
            .filter(|(_, k)| k.as_f64().is_some_and(|v| v > 0.0))
            .filter_map(|(d, _)| d.as_f64())
            .fold(None, |_, d| Some(d));
        match reach {
            Some(d) => eprintln!("r = {r}: positive key up to {d} km"),
            None => eprintln!("r = {r}: no positive key on the grid"),
        }
    }
    Ok(())
}
