//! Generate a small eyeballing tree, reload it, and replay the oracle.
//!
//!     cargo run --example generate_eyeballing [out_dir]

use vtb::eyegen::{self, CanvasConfig, TaskFamily};

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/example_out/eyeballing".into());
    let out = std::path::PathBuf::from(out);

    // one family per category keeps the demo quick
    let families = [
        TaskFamily::Midpoint,
        TaskFamily::Perpendicular,
        TaskFamily::Parallelogram,
    ];
    let summary = eyegen::generate_batch(&out, Some(&families), 4, 7, &CanvasConfig::default())?;
    println!("wrote {} instances under {}", summary.instances, out.display());

    for family in families {
        let inst = eyegen::load_instance(&out.join(family.id()).join("000"))?;
        println!(
            "\n[{}] {} ({})",
            family.id(),
            family.display_name(),
            family.category().display_name()
        );
        println!("  truth: {} of options:", inst.truth);
        for (label, p) in inst.options.iter() {
            let mark = if label == inst.truth { " <- truth" } else { "" };
            println!("    {label}: ({:7.2}, {:7.2}){mark}", p.x, p.y);
        }
        println!("  oracle_check: {}", eyegen::oracle_check(&inst));
        println!("  video prompt: {}", inst.prompt_video);
    }

    // regeneration from (family, seed) alone is byte-stable
    let inst = eyegen::load_instance(&out.join("midpoint").join("000"))?;
    let again = eyegen::generate_instance(inst.family, inst.seed, &CanvasConfig::default())?;
    let a = vtb::raster::encode_png(&eyegen::render_instance(&inst));
    let b = vtb::raster::encode_png(&eyegen::render_instance(&again));
    println!("\nregenerated PNG identical: {}", a == b);
    Ok(())
}
