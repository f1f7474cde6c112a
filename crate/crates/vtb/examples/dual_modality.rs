//! Score the same answer videos through two channels, the drawn frames and
//! the spoken transcript, and check the inclusion-exclusion identity
//! |V| + |A| = |V and A| + |V or A| on the joined attempts.
//!
//!     cargo run --example dual_modality

use vtb::eyegen::{self, CanvasConfig, TaskFamily};
use vtb::harness::adapter::{Profile, ScriptedSolver};
use vtb::harness::{report, run_eval, EvalConfig, Method, Suite};

fn main() -> anyhow::Result<()> {
    let dir = tempfile::tempdir()?;
    let root = dir.path();
    eyegen::generate_batch(
        root,
        Some(&[TaskFamily::Midpoint, TaskFamily::Incenter]),
        40,
        3,
        &CanvasConfig::small(),
    )?;

    // same solver, judged once per modality
    let solver = ScriptedSolver::new(Profile::Noisy(0.7), 9);
    let mut logs = Vec::new();
    for method in [Method::LastFrame, Method::Audio] {
        let cfg = EvalConfig { method, ..EvalConfig::new(Suite::Eyeballing) };
        let log = root.join(format!("{}.jsonl", method.id()));
        let out = run_eval(root, &log, &cfg, &solver)?;
        println!("{:10} accuracy {:.3} over {} attempts", method.id(), out.accuracy, out.written);
        logs.push(report::load_records(&log)?);
    }

    let video: Vec<_> = logs[0].iter().collect();
    let audio: Vec<_> = logs[1].iter().collect();
    let c = report::dual_modality(&video, &audio);
    let [v, a, both, either] = c.percentages();
    println!(
        "\njoined n={}: video {v:.1}%  audio {a:.1}%  both {both:.1}%  either {either:.1}%",
        c.n
    );
    println!("identity holds: {}", c.identity_holds());

    // a published reference point for a math benchmark with both channels
    let r = report::gsm8k_reference();
    let [v, a, both, either] = r.percentages();
    println!(
        "\nreference (n={}): video {v}%  audio {a}%  both {both}%  either {either}%  identity {}",
        r.n,
        r.identity_holds()
    );
    Ok(())
}
