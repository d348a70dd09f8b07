//! Seeded random grafts: reproducible fuzzing beyond the exhaustive family.
//!
//! The generator draws a random tree, two-colors it by depth, adds extra
//! edges between the classes (parallel edges allowed), and fixes the
//! terminal parity. Instance `i` of a spec seeds its own stream, so any
//! single instance replays without generating the rest — which is how a
//! failure report stays replayable.
//!
//! Run with `cargo run --example random_instances`.

use grafts::format::GraftDocument;
use grafts::harness::{oracle_audit, random_graft, run_checks, CheckId, InstanceSpec};

fn main() {
    let spec = InstanceSpec::random(40, 8, 12, 42);

    // Drawing the same index twice gives the same instance.
    assert_eq!(random_graft(&spec, 7), random_graft(&spec, 7));

    let mut failures = 0usize;
    for i in 0..spec.count {
        let gt = random_graft(&spec, i);

        // The solver stack against its brute-force oracles.
        if let Err(detail) = oracle_audit(&gt) {
            failures += 1;
            println!("instance {i}: oracle disagreement: {detail}");
        }

        // The full registry on each instance.
        for report in run_checks(&gt, &CheckId::ALL) {
            if let grafts::harness::Verdict::Fail(w) = report.verdict {
                failures += 1;
                println!("instance {i}: {} failed: {}", report.check, w.detail);
                println!("{}", w.instance);
            }
        }
    }
    println!("{} instances, {failures} failures", spec.count);
    assert_eq!(failures, 0);

    // Any instance renders as a document for the CLI or a bug report.
    let gt = random_graft(&spec, 0);
    print!("{}", GraftDocument::from_graft(&gt, Some("seed 42, index 0".into())).render());
}
