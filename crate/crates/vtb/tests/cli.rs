//! The binary must be a thin wrapper: byte-identical trees to direct library
//! calls, verdicts on stdout, and exit codes that separate "tool failed"
//! from "answer was wrong".

use sha2::{Digest, Sha256};
use std::path::Path;
use std::process::Command;
use vtb::arcbridge::{self, Shots};
use vtb::eyegen::{self, CanvasConfig, TaskFamily};
use vtb::mazegen;
use vtb::raster::save_png;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vtb"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tree_hash(root: &Path) -> String {
    let mut files: Vec<_> = walkdir::WalkDir::new(root)
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| e.path().to_path_buf())
        .collect();
    files.sort();
    let mut h = Sha256::new();
    for f in &files {
        h.update(f.strip_prefix(root).unwrap().to_string_lossy().as_bytes());
        h.update([0u8]);
        h.update(std::fs::read(f).unwrap());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn gen_matches_direct_library_calls() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();

    let (code, _, _) = run(&[
        "gen", "eyeballing", "--task", "midpoint", "--n", "3", "--seed", "5", "--out",
        root.join("cli_eye").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    eyegen::generate_batch(
        &root.join("lib_eye"),
        Some(&[TaskFamily::Midpoint]),
        3,
        5,
        &CanvasConfig::default(),
    )
    .unwrap();
    assert_eq!(tree_hash(&root.join("cli_eye")), tree_hash(&root.join("lib_eye")));

    let (code, _, _) = run(&[
        "gen", "maze", "--task", "square", "--n", "2", "--seed", "5", "--out",
        root.join("cli_maze").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    mazegen::generate_batch(&root.join("lib_maze"), Some(&[mazegen::Topology::Square]), 2, 5, None)
        .unwrap();
    assert_eq!(tree_hash(&root.join("cli_maze")), tree_hash(&root.join("lib_maze")));

    let (code, _, _) = run(&[
        "gen", "vpuzzle", "--task", "hexagon_color", "--n", "2", "--seed", "5", "--out",
        root.join("cli_vp").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    vtb::vpuzzle::generate_batch(&root.join("lib_vp"), Some(&[1]), 2, 5).unwrap();
    assert_eq!(tree_hash(&root.join("cli_vp")), tree_hash(&root.join("lib_vp")));

    let (code, _, _) = run(&[
        "gen", "arc", "--n", "2", "--seed", "5", "--shots", "one", "--out",
        root.join("cli_arc").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    arcbridge::render_batch(&root.join("lib_arc"), &arcbridge::synthetic_batch(2, 5), Shots::One)
        .unwrap();
    assert_eq!(tree_hash(&root.join("cli_arc")), tree_hash(&root.join("lib_arc")));
}

#[test]
fn gen_arc_renders_provided_task_files() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let src = root.join("tasks");
    std::fs::create_dir_all(&src).unwrap();
    for (name, seed) in [("aaa", 1u64), ("bbb", 2)] {
        let task = arcbridge::synthetic_task(seed);
        std::fs::write(src.join(format!("{name}.json")), serde_json::to_vec(&task).unwrap())
            .unwrap();
    }

    let (code, _, _) = run(&[
        "gen", "arc", "--shots", "one", "--in", src.to_str().unwrap(), "--out",
        root.join("cli").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    for name in ["aaa", "bbb"] {
        let m = arcbridge::load_manifest(&root.join("cli").join(name)).unwrap();
        assert_eq!(m.shots, Shots::One);
        assert_eq!(m.task_id, name);
    }

    let pairs = vec![
        ("aaa".to_string(), arcbridge::ArcTask::load(&src.join("aaa.json")).unwrap()),
        ("bbb".to_string(), arcbridge::ArcTask::load(&src.join("bbb.json")).unwrap()),
    ];
    arcbridge::render_batch(&root.join("lib"), &pairs, Shots::One).unwrap();
    assert_eq!(tree_hash(&root.join("cli")), tree_hash(&root.join("lib")));
}

#[test]
fn verify_reports_wrong_answers_with_exit_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let inst_dir = root.join("inst");
    let inst = eyegen::generate_instance(TaskFamily::Midpoint, 77, &CanvasConfig::default()).unwrap();
    eyegen::write_instance(&inst_dir, &inst).unwrap();

    // a blank frame: evaluation runs, concludes "incorrect"
    let frames = root.join("frames");
    std::fs::create_dir_all(&frames).unwrap();
    let blank = image::RgbImage::from_pixel(inst.canvas.0, inst.canvas.1, image::Rgb([255; 3]));
    save_png(&blank, &frames.join("frame_00000.png")).unwrap();
    let (code, stdout, _) = run(&[
        "verify", inst_dir.to_str().unwrap(), frames.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["suite"], "eyeballing");
    assert_eq!(v["method"], "last_frame");
    assert_eq!(v["correct"], false);

    // mark the truth red: correct, same exit code
    let mut c = vtb::raster::Canvas::new(inst.canvas.0, inst.canvas.1, vtb::raster::WHITE);
    c.disc(inst.options.get(inst.truth), 9.0, vtb::raster::RED);
    save_png(c.image(), &frames.join("frame_00001.png")).unwrap();
    std::fs::write(frames.join("audio.txt"), format!("The answer is {}.", inst.truth.phonetic()))
        .unwrap();
    let (code, stdout, _) = run(&[
        "verify", inst_dir.to_str().unwrap(), frames.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["correct"], true);
    assert_eq!(v["answer"], inst.truth.to_string());

    // the spoken channel agrees when asked for explicitly
    let (code, stdout, _) = run(&[
        "verify", inst_dir.to_str().unwrap(), frames.to_str().unwrap(), "--method", "audio",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["method"], "audio");
    assert_eq!(v["correct"], true);
}

#[test]
fn verify_maze_solution_frame() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let (cm, img, inst) = mazegen::generate_instance(mazegen::Topology::Square, 8, 3).unwrap();
    let inst_dir = root.join("maze");
    std::fs::create_dir_all(&inst_dir).unwrap();
    save_png(&img, &inst_dir.join("input.png")).unwrap();
    std::fs::write(inst_dir.join("manifest.json"), serde_json::to_vec_pretty(&inst).unwrap())
        .unwrap();

    let frames = root.join("frames");
    std::fs::create_dir_all(&frames).unwrap();
    save_png(&mazegen::render_solution(&cm), &frames.join("frame_00000.png")).unwrap();
    let (code, stdout, _) =
        run(&["verify", inst_dir.to_str().unwrap(), frames.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["suite"], "maze");
    assert_eq!(v["correct"], true);
}

#[test]
fn verify_rejects_malformed_inputs() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let inst_dir = root.join("inst");
    let inst = eyegen::generate_instance(TaskFamily::Midpoint, 8, &CanvasConfig::small()).unwrap();
    eyegen::write_instance(&inst_dir, &inst).unwrap();

    // missing instance dir
    let (code, _, stderr) = run(&[
        "verify", root.join("nope").to_str().unwrap(), inst_dir.to_str().unwrap(),
    ]);
    assert_ne!(code, 0);
    assert!(stderr.contains("error"));

    // frames dir exists but holds no frames
    let empty = root.join("empty");
    std::fs::create_dir_all(&empty).unwrap();
    let (code, _, _) = run(&["verify", inst_dir.to_str().unwrap(), empty.to_str().unwrap()]);
    assert_ne!(code, 0);

    // method that does not apply to the suite
    let frames = root.join("frames");
    std::fs::create_dir_all(&frames).unwrap();
    let blank = image::RgbImage::from_pixel(8, 8, image::Rgb([255; 3]));
    save_png(&blank, &frames.join("frame_00000.png")).unwrap();
    let (code, _, _) = run(&[
        "verify", inst_dir.to_str().unwrap(), frames.to_str().unwrap(), "--method", "maze",
    ]);
    assert_ne!(code, 0);
}

#[test]
fn run_then_report_roundtrip() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().join("tree");
    eyegen::generate_batch(&root, Some(&[TaskFamily::Midpoint]), 4, 9, &CanvasConfig::small())
        .unwrap();

    let (code, stdout, _) = run(&[
        "run", "--task", "eyeballing", "--out", root.to_str().unwrap(), "--config", "perfect",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["written"], 4);
    assert_eq!(v["accuracy"], 1.0);

    // rerun resumes and appends nothing
    let (code, stdout, _) = run(&[
        "run", "--task", "eyeballing", "--out", root.to_str().unwrap(), "--config", "perfect",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["written"], 0);
    assert_eq!(v["skipped"], 4);

    let log = root.join("results.jsonl");
    let report_dir = tmp.path().join("report");
    let (code, stdout, _) = run(&[
        "report", log.to_str().unwrap(), "--out", report_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("100.0%"));
    assert!(report_dir.join("report.txt").exists());
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(report_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(json["perfect / last_frame"]["overall"]["correct"], 4);

    // empty log is a tool failure
    let empty = tmp.path().join("empty.jsonl");
    std::fs::write(&empty, b"").unwrap();
    let (code, _, _) = run(&["report", empty.to_str().unwrap()]);
    assert_ne!(code, 0);
}

#[test]
fn run_rejects_bad_adapter_configs() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().join("tree");
    eyegen::generate_batch(&root, Some(&[TaskFamily::Midpoint]), 1, 9, &CanvasConfig::small())
        .unwrap();

    for config in ["bogus", "noisy=1.5", "noisy=x"] {
        let (code, _, stderr) = run(&[
            "run", "--task", "eyeballing", "--out", root.to_str().unwrap(), "--config", config,
        ]);
        assert_ne!(code, 0, "config {config} should be rejected");
        assert!(stderr.contains("error"));
    }

    // external without VTB_DECODER_CMD
    let out = bin()
        .args(["run", "--task", "eyeballing", "--out", root.to_str().unwrap(), "--config", "external"])
        .env_remove("VTB_DECODER_CMD")
        .output()
        .unwrap();
    assert_ne!(out.status.code().unwrap_or(-1), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("VTB_DECODER_CMD"));
}

#[test]
fn selfcheck_passes() {
    let (code, stdout, _) = run(&["selfcheck"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.matches(": ok").count(), 4);
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn usage_errors_exit_nonzero() {
    let (code, _, _) = run(&["gen", "nonsense", "--n", "1"]);
    assert_ne!(code, 0);
    let (code, _, _) = run(&["frobnicate"]);
    assert_ne!(code, 0);
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("gen") && stdout.contains("verify") && stdout.contains("selfcheck"));
}
