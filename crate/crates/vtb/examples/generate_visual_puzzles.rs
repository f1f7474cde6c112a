//! Build completion puzzles and score candidate frames by masked pixel
//! distance. The solution must win; a distractor must lose.
//!
//!     cargo run --example generate_visual_puzzles [out_dir]

use vtb::vpuzzle::{self, TASK_COUNT};

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/example_out/vpuzzle".into());
    let out = std::path::PathBuf::from(out);

    for task_id in 1..=TASK_COUNT {
        let gp = vtb::vpuzzle::generate_instance(task_id, 5)?;
        let inst = &gp.instance;
        let dir = out.join(vpuzzle::task_id_name(task_id).unwrap());
        vpuzzle::write_instance(&dir, &gp)?;

        // pretend the model output a clip: starts on the unfilled puzzle,
        // ends on the right answer
        let frames = vec![gp.puzzle.clone(), gp.completions[0].clone()];
        let score = vpuzzle::score_puzzle(&frames, &gp.completions, &gp.area, inst.metric)?;

        println!(
            "task {:2} {:28} metric={:<5?} candidates={}",
            task_id,
            vpuzzle::task_display_name(task_id).unwrap(),
            inst.metric,
            inst.candidates.len()
        );
        println!(
            "  chosen={} ({}) correct={} best_frame={} margin={:.0}{}",
            score.chosen,
            inst.candidates[score.chosen],
            score.correct,
            score.best_frame,
            score.margin,
            if score.low_margin { "  [low margin]" } else { "" }
        );
        if let Some(opts) = &inst.vlm_options {
            println!("  options: {}", opts.join(" | "));
        }
    }
    println!("\npuzzle/area/solution/distractor images under {}", out.display());
    Ok(())
}
