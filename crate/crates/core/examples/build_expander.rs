//! Grow a d-regular expander from K_{d+1} by repeated 2-lifts.
//!
//! ```text
//! cargo run --release --example build_expander -- 3 512 derandomized
//! ```

use twolift::builder::{build_expander, BuildParams, Strategy};

fn main() -> twolift::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().map_or(3, |a| a.parse().expect("d"));
    let target: usize = args.next().map_or(256, |a| a.parse().expect("target n"));
    let strategy: Strategy = args.next().map_or(Ok(Strategy::Random), |a| a.parse())?;

    let params = BuildParams { seed: 7, ..BuildParams::default() };
    let (g, record) = build_expander(d, target, strategy, &params)?;
    println!("strategy {strategy}, target radius {:.4}", record.target_radius);
    for level in &record.levels {
        println!(
            "level {:>2}: n={:>5}  new radius {:.4}  λ {:.4}  {}",
            level.level,
            level.n,
            level.radius_new,
            level.lambda,
            if level.met_target { "ok" } else { "missed" }
        );
    }
    println!("final: {} vertices, λ = {:.6}, connected = {}", g.n(), record.final_lambda, record.connected);
    Ok(())
}
