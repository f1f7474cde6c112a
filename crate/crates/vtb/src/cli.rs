//! Command-line front door. Every verb is a thin wrapper over the library
//! modules: `gen` writes instance trees, `verify` scores one frames
//! directory, `run` drives the batch harness, `report` renders a results
//! log, and `selfcheck` replays the oracle suite.
//!
//! Exit codes separate tool failure from wrong answers: a verification that
//! ran and concluded "incorrect" still exits 0; malformed inputs, missing
//! files, and failing decoders exit nonzero.

use crate::arcbridge::{self, Shots};
use crate::eyegen::{self, CanvasConfig, TaskFamily};
use crate::harness::adapter::{Adapter, CommandAdapter, Profile, ScriptedSolver, ENV_DECODER_CMD};
use crate::harness::{self, report, EvalConfig, Method, Suite};
use crate::judge::FrameSet;
use crate::{mazegen, vpuzzle};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "vtb",
    version,
    about = "Generate, verify, and score vision-centric reasoning tasks for video models"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance tree with images and manifests.
    Gen {
        /// Suite: eyeballing | maze | vpuzzle | arc
        suite: Suite,
        /// Restrict to one task (family id, topology, or puzzle name).
        #[arg(long)]
        task: Option<String>,
        /// Instances per task.
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Master seed; per-instance seeds derive from it.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Grid tasks: render all demonstration pairs or only the first.
        #[arg(long, default_value = "all")]
        shots: Shots,
        /// Grid tasks: JSON file or directory of task JSONs to render
        /// instead of synthesizing tasks.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Score one solver response directory against one instance.
    Verify {
        /// Directory holding the instance's manifest.json.
        instance_dir: PathBuf,
        /// Directory with frame_00000.png... and optional audio.txt.
        frames_dir: PathBuf,
        /// audio | last_frame | major_frame | maze | arc | vpuzzle
        /// (defaults to the suite's native method).
        #[arg(long)]
        method: Option<Method>,
    },
    /// Evaluate an adapter over a whole instance tree, resumably.
    Run {
        /// Suite to evaluate: eyeballing | maze | vpuzzle | arc
        #[arg(long)]
        task: Suite,
        /// Instance tree produced by `gen`; the log lands at
        /// <out>/results.jsonl.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        method: Option<Method>,
        /// Attempts per instance (majority voting happens in `report`).
        #[arg(long, default_value_t = 1)]
        tries: u32,
        /// Parallel workers.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Adapter: perfect | random | distractor | noisy=<p> |
        /// external[=<command>] (external reads VTB_DECODER_CMD when no
        /// inline command is given).
        #[arg(long, default_value = "perfect")]
        config: String,
        /// Master seed for scripted adapters.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Render accuracy tables from a results log.
    Report {
        /// results.jsonl written by `run`.
        log: PathBuf,
        /// Where to write report.txt and report.json (defaults to the
        /// log's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay the oracle suite; nonzero exit on any failure.
    Selfcheck,
}

pub fn run() -> i32 {
    run_with_args(std::env::args())
}

pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/version output.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn dispatch(cmd: Cmd) -> anyhow::Result<()> {
    match cmd {
        Cmd::Gen { suite, task, n, seed, out, shots, input } => {
            gen(suite, task.as_deref(), n, seed, &out, shots, input.as_deref())
        }
        Cmd::Verify { instance_dir, frames_dir, method } => verify(&instance_dir, &frames_dir, method),
        Cmd::Run { task, out, method, tries, jobs, config, seed } => {
            run_suite(task, &out, method, tries, jobs, &config, seed)
        }
        Cmd::Report { log, out } => run_report(&log, out.as_deref()),
        Cmd::Selfcheck => selfcheck(),
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn gen(
    suite: Suite,
    task: Option<&str>,
    n: usize,
    seed: u64,
    out: &Path,
    shots: Shots,
    input: Option<&Path>,
) -> anyhow::Result<()> {
    match suite {
        Suite::Eyeballing => {
            let filter = match task {
                Some(id) => Some(vec![TaskFamily::from_id(id)
                    .ok_or_else(|| anyhow::anyhow!("unknown eyeballing family {id}"))?]),
                None => None,
            };
            let summary =
                eyegen::generate_batch(out, filter.as_deref(), n, seed, &CanvasConfig::default())?;
            print_json(&summary)
        }
        Suite::Maze => {
            let filter = match task {
                Some(id) => Some(vec![mazegen::Topology::from_id(id)
                    .ok_or_else(|| anyhow::anyhow!("unknown maze topology {id}"))?]),
                None => None,
            };
            let summary = mazegen::generate_batch(out, filter.as_deref(), n, seed, None)?;
            print_json(&summary)
        }
        Suite::Vpuzzle => {
            let filter = match task {
                Some(t) => {
                    let id = t
                        .parse::<u32>()
                        .ok()
                        .or_else(|| vpuzzle::task_from_name(t))
                        .ok_or_else(|| anyhow::anyhow!("unknown puzzle task {t}"))?;
                    Some(vec![id])
                }
                None => None,
            };
            let summary = vpuzzle::generate_batch(out, filter.as_deref(), n, seed)?;
            print_json(&summary)
        }
        Suite::Arc => {
            let tasks = match input {
                Some(path) => load_arc_tasks(path)?,
                None => arcbridge::synthetic_batch(n, seed),
            };
            let summary = arcbridge::render_batch(out, &tasks, shots)?;
            print_json(&summary)
        }
    }
}

fn load_arc_tasks(path: &Path) -> anyhow::Result<Vec<(String, arcbridge::ArcTask)>> {
    let mut tasks = Vec::new();
    if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        for f in files {
            let id = f.file_stem().unwrap_or_default().to_string_lossy().to_string();
            tasks.push((id, arcbridge::ArcTask::load(&f)?));
        }
    } else {
        let id = path.file_stem().unwrap_or_default().to_string_lossy().to_string();
        tasks.push((id, arcbridge::ArcTask::load(path)?));
    }
    if tasks.is_empty() {
        anyhow::bail!("no task JSON files under {}", path.display());
    }
    Ok(tasks)
}

/// Tries each suite's manifest schema in a fixed order; the field sets are
/// disjoint, so exactly one parses.
fn detect_manifest(dir: &Path) -> anyhow::Result<(Suite, harness::InstanceManifest)> {
    for suite in Suite::ALL {
        if let Ok(m) = harness::load_manifest(suite, dir) {
            return Ok((suite, m));
        }
    }
    anyhow::bail!("no readable manifest.json under {}", dir.display())
}

#[derive(Serialize)]
struct Verdict {
    suite: Suite,
    method: Method,
    correct: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    answer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truth: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pixel_accuracy: Option<f64>,
}

fn verify(instance_dir: &Path, frames_dir: &Path, method: Option<Method>) -> anyhow::Result<()> {
    let (suite, manifest) = detect_manifest(instance_dir)?;
    let method = method.unwrap_or_else(|| Method::default_for(suite));
    harness::validate_combo(suite, method)?;
    let (frames, transcript) = FrameSet::from_dir(frames_dir)?.into_parts();
    let output = harness::adapter::SolverOutput { frames, transcript };
    let scored = harness::score_attempt(method, instance_dir, &manifest, &output)?;
    print_json(&Verdict {
        suite,
        method,
        correct: scored.correct,
        answer: scored.answer,
        truth: scored.truth,
        pixel_accuracy: scored.pixel_accuracy,
    })
}

fn parse_adapter(config: &str, seed: u64) -> anyhow::Result<Box<dyn Adapter>> {
    let scripted = |p| Box::new(ScriptedSolver::new(p, seed)) as Box<dyn Adapter>;
    Ok(match config {
        "perfect" => scripted(Profile::Perfect),
        "random" => scripted(Profile::Random),
        "distractor" => scripted(Profile::Distractor),
        "external" => Box::new(CommandAdapter::from_env().ok_or_else(|| {
            anyhow::anyhow!("--config external needs {ENV_DECODER_CMD} to be set")
        })?),
        other => {
            if let Some(p) = other.strip_prefix("noisy=") {
                let p: f64 = p.parse()?;
                anyhow::ensure!((0.0..=1.0).contains(&p), "noisy=<p> needs p in [0,1]");
                scripted(Profile::Noisy(p))
            } else if let Some(cmd) = other.strip_prefix("external=") {
                Box::new(CommandAdapter::new(cmd))
            } else {
                anyhow::bail!(
                    "unknown adapter config {other}; use perfect|random|distractor|noisy=<p>|external[=<command>]"
                )
            }
        }
    })
}

fn run_suite(
    suite: Suite,
    out: &Path,
    method: Option<Method>,
    tries: u32,
    jobs: usize,
    config: &str,
    seed: u64,
) -> anyhow::Result<()> {
    let adapter = parse_adapter(config, seed)?;
    let cfg = EvalConfig {
        suite,
        method: method.unwrap_or_else(|| Method::default_for(suite)),
        tries,
        jobs: jobs.max(1),
        limit: None,
    };
    let log = out.join("results.jsonl");
    let outcome = harness::run_eval(out, &log, &cfg, adapter.as_ref())?;
    print_json(&outcome)
}

fn run_report(log: &Path, out: Option<&Path>) -> anyhow::Result<()> {
    let records = report::load_records(log)?;
    anyhow::ensure!(!records.is_empty(), "results log {} is empty", log.display());

    let mut slices: Vec<(String, Method)> = records
        .iter()
        .map(|r| (r.adapter.clone(), r.method))
        .collect();
    slices.sort_by(|a, b| (&a.0, a.1.id()).cmp(&(&b.0, b.1.id())));
    slices.dedup();

    let mut text = String::new();
    let mut json = serde_json::Map::new();
    for (adapter, method) in &slices {
        let recs: Vec<harness::RunRecord> = report::slice(&records, Some(adapter), Some(*method))
            .into_iter()
            .cloned()
            .collect();
        let title = format!("{adapter} / {}", method.id());
        text.push_str(&report::render_text_report(&recs, &title));
        text.push('\n');
        json.insert(title, serde_json::to_value(report::aggregate(&recs))?);
    }

    // When one adapter was judged through both modalities, join them.
    let adapters: Vec<&String> = {
        let mut a: Vec<&String> = slices.iter().map(|(a, _)| a).collect();
        a.dedup();
        a
    };
    for adapter in adapters {
        let audio = report::slice(&records, Some(adapter), Some(Method::Audio));
        for frame_method in [Method::LastFrame, Method::MajorFrame] {
            let video = report::slice(&records, Some(adapter), Some(frame_method));
            if audio.is_empty() || video.is_empty() {
                continue;
            }
            let c = report::dual_modality(&video, &audio);
            let [v, a, both, either] = c.percentages();
            text.push_str(&format!(
                "dual modality [{adapter}, video={}]: video {v:.1}% audio {a:.1}% both {both:.1}% either {either:.1}% (identity {})\n",
                frame_method.id(),
                if c.identity_holds() { "ok" } else { "VIOLATED" }
            ));
            json.insert(
                format!("dual_modality/{adapter}/{}", frame_method.id()),
                serde_json::to_value(c)?,
            );
        }
    }

    print!("{text}");
    let out_dir = out
        .map(Path::to_path_buf)
        .or_else(|| log.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)?;
    std::fs::write(out_dir.join("report.txt"), &text)?;
    let mut bytes = serde_json::to_vec_pretty(&serde_json::Value::Object(json))?;
    bytes.push(b'\n');
    std::fs::write(out_dir.join("report.json"), bytes)?;
    Ok(())
}

fn selfcheck() -> anyhow::Result<()> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("selfcheck {name}: {}", if ok { "ok" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    // Eyeballing: oracle over a 21x5 sample.
    let cfg = CanvasConfig::default();
    let mut oracle_ok = true;
    for family in TaskFamily::ALL {
        for i in 0..5u64 {
            let seed = crate::util::derive_seed(1, family.id(), i);
            match eyegen::generate_instance(family, seed, &cfg) {
                Ok(inst) => oracle_ok &= eyegen::oracle_check(&inst),
                Err(_) => oracle_ok = false,
            }
        }
    }
    check("eyeballing oracle (105 instances)", oracle_ok);

    // Mazes: oracle path passes, distractor fails, regeneration matches.
    let mut maze_ok = true;
    for topo in mazegen::Topology::ALL {
        for seed in [1u64, 2] {
            match mazegen::generate_instance(topo, topo.default_size(), seed) {
                Ok((cm, img, inst)) => {
                    let good = mazegen::render_solution(&cm);
                    maze_ok &= mazegen::verify_path_frame(&img, &good, inst.start, inst.end).pass();
                    let bad = mazegen::distractor_frame(&cm);
                    maze_ok &= !mazegen::verify_path_frame(&img, &bad, inst.start, inst.end).pass();
                    maze_ok &= mazegen::wall_mask_sha(&img) == inst.wall_mask_sha256;
                }
                Err(_) => maze_ok = false,
            }
        }
    }
    check("maze round trips (3 topologies)", maze_ok);

    // Visual puzzles: the solution wins, the distractor loses.
    let mut vp_ok = true;
    for task_id in 1..=vpuzzle::TASK_COUNT {
        match vpuzzle::generate_instance(task_id, 3) {
            Ok(gp) => {
                let sol = vpuzzle::score_puzzle(
                    &[gp.completions[0].clone()],
                    &gp.completions,
                    &gp.area,
                    gp.instance.metric,
                );
                vp_ok &= sol.map(|s| s.correct && s.distances[0] == 0.0).unwrap_or(false);
                let bad = vpuzzle::score_puzzle(
                    &[gp.completions[1].clone()],
                    &gp.completions,
                    &gp.area,
                    gp.instance.metric,
                );
                vp_ok &= bad.map(|s| !s.correct).unwrap_or(false);
            }
            Err(_) => vp_ok = false,
        }
    }
    check("visual puzzle diff sanity (10 tasks)", vp_ok);

    // Grid tasks: render, paint the truth, read it back.
    let mut arc_ok = true;
    for seed in [1u64, 2, 3] {
        let task = arcbridge::synthetic_task(seed);
        match arcbridge::render_arc_task(&task, Shots::All) {
            Ok((img, info)) => {
                let solved = arcbridge::render_answer(&img, &task.test_pair().output, &info);
                let got = arcbridge::extract_answer_grid(&solved, &info);
                arc_ok &= arcbridge::exact_match(&got, &task.test_pair().output);
            }
            Err(_) => arc_ok = false,
        }
    }
    check("grid-task round trips", arc_ok);

    anyhow::ensure!(failures == 0, "{failures} selfcheck group(s) failed");
    Ok(())
}
