//! Runs every acceptance criterion and prints one line per criterion.

use parahoric::verify;

fn main() {
    let ids = verify::select("all").expect("all suites");
    let results = verify::run(&ids);
    println!();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
