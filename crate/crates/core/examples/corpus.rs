//! Runs the fixture corpus and prints a summary per fixture.

use hkmult::corpus::{corpus, run_corpus, DEFAULT_SEED};
use hkmult::Limits;

fn main() {
    let fixtures = corpus(DEFAULT_SEED);
    let report = run_corpus(&fixtures, DEFAULT_SEED, Limits::default());
    for f in &report.fixtures {
        println!(
            "{:<22} pass {:>3}  fail {}  inapplicable {}  errors {}",
            f.id, f.passed, f.failed, f.inapplicable, f.errors
        );
    }
    println!("exit code {}", report.exit_code());
}
