use qdlab::suite::{run_criterion, SuiteConfig, CRITERIA};

fn main() {
    let seed = std::env::var("QDLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let cfg = SuiteConfig { seed, tolerance: None };
    let mut failed = 0;
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &cfg);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {} ({:.2} s): {}", r.id, r.name, r.seconds, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed (seed {seed})", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
