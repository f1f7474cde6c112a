//! Carve one maze per topology, then check a solved frame and a decoy frame
//! against the wall mask.
//!
//!     cargo run --example generate_mazes [out_dir]

use vtb::mazegen::{self, Topology};
use vtb::raster::save_png;

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/example_out/mazes".into());
    let out = std::path::PathBuf::from(out);
    std::fs::create_dir_all(&out)?;

    for topo in Topology::ALL {
        let (cm, input, inst) = mazegen::generate_instance(topo, topo.default_size(), 11)?;
        let dir = out.join(topo.id());
        std::fs::create_dir_all(&dir)?;
        save_png(&input, &dir.join("input.png"))?;

        // the oracle path, drawn in red on top of the input
        let solved = mazegen::render_solution(&cm);
        save_png(&solved, &dir.join("solution.png"))?;
        let good = mazegen::verify_path_frame(&input, &solved, inst.start, inst.end);

        // a wall-crossing chord that any checker must reject
        let decoy = mazegen::distractor_frame(&cm);
        save_png(&decoy, &dir.join("distractor.png"))?;
        let bad = mazegen::verify_path_frame(&input, &decoy, inst.start, inst.end);

        println!(
            "{:8} size {}  start ({:6.1},{:6.1}) -> end ({:6.1},{:6.1})",
            topo.id(),
            inst.size,
            inst.start.0,
            inst.start.1,
            inst.end.0,
            inst.end.1
        );
        println!("  solution frame: pass={} {:?}", good.pass(), good);
        println!("  decoy frame:    pass={} {:?}", bad.pass(), bad);
        println!("  wall mask sha256: {}...", &inst.wall_mask_sha256[..16]);
    }
    println!("\nimages under {}", out.display());
    Ok(())
}
