//! Render a grid-induction task to a portrait canvas, paint the ground truth
//! into the blank answer slot, and read the grid back out of the pixels.
//!
//!     cargo run --example arc_roundtrip [out_dir]

use vtb::arcbridge::{self, Shots};
use vtb::raster::save_png;

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/example_out/arc".into());
    let out = std::path::PathBuf::from(out);
    std::fs::create_dir_all(&out)?;

    let task = arcbridge::synthetic_task(42);
    println!(
        "synthetic task: {} train pairs, test input {}x{}",
        task.train.len(),
        task.test_pair().input.rows(),
        task.test_pair().input.cols()
    );

    for shots in [Shots::All, Shots::One] {
        let (img, info) = arcbridge::render_arc_task(&task, shots)?;
        let name = format!("input_{shots:?}").to_lowercase();
        save_png(&img, &out.join(format!("{name}.png")))?;
        println!(
            "{shots:?}: canvas {}x{}, cell {}px, answer slot at ({}, {}) size {}x{}",
            info.canvas.0,
            info.canvas.1,
            info.cell,
            info.answer_region.0,
            info.answer_region.1,
            info.answer_region.2,
            info.answer_region.3
        );

        // a faithful "model output": truth drawn into the slot
        let solved = arcbridge::render_answer(&img, &task.test_pair().output, &info);
        save_png(&solved, &out.join(format!("solved_{shots:?}.png").to_lowercase()))?;
        let got = arcbridge::extract_answer_grid(&solved, &info);
        println!(
            "  round trip exact={} pixel_accuracy={:.3}",
            arcbridge::exact_match(&got, &task.test_pair().output),
            arcbridge::pixel_accuracy(&got, &task.test_pair().output)?
        );

        // one corrupted cell: no longer exact, accuracy 1 - 1/n
        let bad = vtb::harness::adapter::corrupt_first_cell(&task.test_pair().output);
        let painted = arcbridge::render_answer(&img, &bad, &info);
        let got = arcbridge::extract_answer_grid(&painted, &info);
        println!(
            "  corrupted cell  exact={} pixel_accuracy={:.3}",
            arcbridge::exact_match(&got, &task.test_pair().output),
            arcbridge::pixel_accuracy(&got, &task.test_pair().output)?
        );
    }

    let accs = [1.0, 0.96, 0.5, 0.34, 0.0];
    println!("\nhistogram of {accs:?} -> {:?}", arcbridge::accuracy_histogram(&accs));
    println!("images under {}", out.display());
    Ok(())
}
