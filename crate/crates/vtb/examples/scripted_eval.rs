//! Batch evaluation with scripted solvers: a perfect oracle and a decoy
//! picker, with an append-only JSONL log that makes reruns resumable.
//!
//!     cargo run --example scripted_eval

use vtb::eyegen::{self, CanvasConfig, TaskFamily};
use vtb::harness::adapter::{Adapter, Profile, ScriptedSolver};
use vtb::harness::{report, run_eval, EvalConfig, Method, Suite};

fn main() -> anyhow::Result<()> {
    let dir = tempfile::tempdir()?;
    let root = dir.path();
    let families = [TaskFamily::Midpoint, TaskFamily::CircleCenter, TaskFamily::SquareOutlier];
    eyegen::generate_batch(root, Some(&families), 10, 7, &CanvasConfig::small())?;

    for profile in [Profile::Perfect, Profile::Distractor] {
        let solver = ScriptedSolver::new(profile, 1);
        let log = root.join(format!("{}.jsonl", solver.name()));
        let cfg = EvalConfig { method: Method::LastFrame, ..EvalConfig::new(Suite::Eyeballing) };

        let first = run_eval(root, &log, &cfg, &solver)?;
        println!(
            "{:10} first run: wrote {:2}, accuracy {:.2}",
            solver.name(),
            first.written,
            first.accuracy
        );

        // a second pass finds every attempt already logged
        let second = run_eval(root, &log, &cfg, &solver)?;
        println!(
            "{:10} rerun:     wrote {:2}, skipped {:2} (log untouched)",
            solver.name(),
            second.written,
            second.skipped
        );

        let records = report::load_records(&log)?;
        print!("{}", report::render_text_report(&records, solver.name()));
        println!();
    }
    Ok(())
}
