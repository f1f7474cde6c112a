//! Majority voting over repeated tries. A solver that is right 60% of the
//! time but always wrong the *same* way gains from best-of-5 voting; the
//! gain follows the binomial tail P(>=3 of 5) = 0.68256.
//!
//!     cargo run --example self_consistency

use vtb::eyegen::{self, CanvasConfig, TaskFamily};
use vtb::harness::adapter::{Profile, ScriptedSolver};
use vtb::harness::{report, run_eval, EvalConfig, Suite};

fn main() -> anyhow::Result<()> {
    let dir = tempfile::tempdir()?;
    let root = dir.path();

    eyegen::generate_batch(
        root,
        Some(&[TaskFamily::Midpoint]),
        200,
        21,
        &CanvasConfig::small(),
    )?;

    let solver = ScriptedSolver::new(Profile::Noisy(0.6), 5);
    let cfg = EvalConfig { tries: 5, ..EvalConfig::new(Suite::Eyeballing) };
    let log = root.join("results.jsonl");
    let outcome = run_eval(root, &log, &cfg, &solver)?;
    println!("{} attempts, per-try accuracy {:.3}", outcome.written, outcome.accuracy);

    let records = report::load_records(&log)?;
    let agg = report::aggregate(&records);
    let vote = agg.vote.expect("multi-try log always has vote stats");
    println!(
        "single-try {:.3} vs 5-try majority {:.3} over {} instances (theory 0.683)",
        vote.single, vote.voted, vote.instances
    );

    println!("\n{}", report::render_text_report(&records, "noisy 0.6, 5 tries"));
    Ok(())
}
