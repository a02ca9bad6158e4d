//! Runs every bundled corpus entry and prints one line per entry.
use lucascert::cli::corpus::{corpus, run_entry};

fn main() {
    let mut failed = 0;
    for e in corpus() {
        let r = run_entry(e);
        failed += usize::from(!r.ok);
        let checks: Vec<_> = r.checks.iter().map(|c| c.check.as_str()).collect();
        println!("{} {:<36} {:<16} {}", if r.ok { "ok  " } else { "FAIL" }, e.id, e.basis, checks.join(","));
    }
    println!("{} entries, {failed} failed", corpus().len());
}
