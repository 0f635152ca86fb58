//! Runs every acceptance criterion and prints one line per criterion.

use latstat_core::reproduce::{reproduce_all, ReproduceConfig};

fn main() {
    let results = reproduce_all(&ReproduceConfig::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
