//! Batch evaluation over generated instance trees.
//!
//! `run_eval` walks a directory of instances, asks an adapter (a scripted
//! solver or an external command) for frames, scores each attempt with the
//! suite's verifier, and appends one JSON line per attempt to a results log.
//! The log is the source of truth: reruns skip attempts already recorded, so
//! a killed run continues where it stopped and ends up with the same log an
//! uninterrupted run would have produced.

pub mod adapter;
pub mod judge_client;
pub mod report;

use crate::eyegen::{self, Label};
use crate::raster::load_png;
use crate::{arcbridge, judge, mazegen, vpuzzle};
use adapter::{Adapter, SolveContext, SolverOutput};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;
use walkdir::WalkDir;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
    #[error(transparent)]
    Eyeballing(#[from] eyegen::EyegenError),
    #[error(transparent)]
    Maze(#[from] mazegen::MazeError),
    #[error(transparent)]
    Grid(#[from] arcbridge::ArcError),
    #[error(transparent)]
    Puzzle(#[from] vpuzzle::VpuzzleError),
    #[error(transparent)]
    Judge(#[from] judge::JudgeError),
    #[error("method {method:?} does not apply to suite {suite:?}")]
    BadCombo { suite: Suite, method: Method },
    #[error("adapter: {0}")]
    Adapter(String),
    #[error("no instances under {0}")]
    NoInstances(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Eyeballing,
    Maze,
    Arc,
    Vpuzzle,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Eyeballing, Suite::Maze, Suite::Arc, Suite::Vpuzzle];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Eyeballing => "eyeballing",
            Suite::Maze => "maze",
            Suite::Arc => "arc",
            Suite::Vpuzzle => "vpuzzle",
        }
    }

    pub fn from_id(id: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.id() == id)
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::from_id(s).ok_or_else(|| format!("expected eyeballing|maze|arc|vpuzzle, got {s}"))
    }
}

/// How an attempt is turned into a correct/incorrect decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Spoken phonetic-alphabet option from the transcript.
    Audio,
    /// Red-centroid option in the final frame.
    LastFrame,
    /// Majority option over every fifth frame.
    MajorFrame,
    /// Connectivity and wall-contact check of the drawn path.
    Maze,
    /// Answer-grid extraction and exact match.
    Arc,
    /// Nearest-completion diff inside the puzzle area.
    Vpuzzle,
}

impl Method {
    pub fn id(self) -> &'static str {
        match self {
            Method::Audio => "audio",
            Method::LastFrame => "last_frame",
            Method::MajorFrame => "major_frame",
            Method::Maze => "maze",
            Method::Arc => "arc",
            Method::Vpuzzle => "vpuzzle",
        }
    }

    pub fn default_for(suite: Suite) -> Method {
        match suite {
            Suite::Eyeballing => Method::LastFrame,
            Suite::Maze => Method::Maze,
            Suite::Arc => Method::Arc,
            Suite::Vpuzzle => Method::Vpuzzle,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let all = [
            Method::Audio,
            Method::LastFrame,
            Method::MajorFrame,
            Method::Maze,
            Method::Arc,
            Method::Vpuzzle,
        ];
        all.into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| format!("unknown method {s}"))
    }
}

pub fn validate_combo(suite: Suite, method: Method) -> Result<(), HarnessError> {
    let ok = matches!(
        (suite, method),
        (Suite::Eyeballing, Method::Audio | Method::LastFrame | Method::MajorFrame)
            | (Suite::Maze, Method::Maze)
            | (Suite::Arc, Method::Arc)
            | (Suite::Vpuzzle, Method::Vpuzzle)
    );
    if ok {
        Ok(())
    } else {
        Err(HarnessError::BadCombo { suite, method })
    }
}

/// Parsed manifest of one instance, whatever the suite.
pub enum InstanceManifest {
    Eyeballing(eyegen::EyeballInstance),
    Maze(mazegen::MazeInstance),
    Arc(arcbridge::ArcManifest),
    Vpuzzle(vpuzzle::VpuzzleInstance),
}

pub fn load_manifest(suite: Suite, dir: &Path) -> Result<InstanceManifest, HarnessError> {
    Ok(match suite {
        Suite::Eyeballing => InstanceManifest::Eyeballing(eyegen::load_instance(dir)?),
        Suite::Maze => InstanceManifest::Maze(mazegen::load_instance(dir)?),
        Suite::Arc => InstanceManifest::Arc(arcbridge::load_manifest(dir)?),
        Suite::Vpuzzle => InstanceManifest::Vpuzzle(vpuzzle::load_instance(dir)?),
    })
}

/// All instance directories under `root`, as (relative id, absolute path),
/// sorted by id so every run sees the same order.
pub fn discover_instances(root: &Path) -> Result<Vec<(String, PathBuf)>, HarnessError> {
    let mut out = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            HarnessError::Io(e.into_io_error().unwrap_or_else(|| std::io::Error::other("walk")))
        })?;
        if entry.file_type().is_file() && entry.file_name() == "manifest.json" {
            let dir = entry.path().parent().expect("manifest has a parent").to_path_buf();
            let rel = dir
                .strip_prefix(root)
                .unwrap_or(&dir)
                .to_string_lossy()
                .replace('\\', "/");
            out.push((rel, dir));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    if out.is_empty() {
        return Err(HarnessError::NoInstances(root.display().to_string()));
    }
    Ok(out)
}

/// One scored attempt. `ts` stays `None` for deterministic adapters so that
/// rerunning a scripted evaluation reproduces the log byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub adapter: String,
    pub method: Method,
    pub try_index: u32,
    pub correct: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub answer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub truth: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pixel_accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ts: Option<u64>,
}

/// Reads a results log, dropping a torn trailing line if the previous run
/// died mid-write. When damage is found the file is rewritten to the last
/// intact record so appends stay well-formed.
pub fn read_log(path: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = std::fs::read_to_string(path)?;
    let mut records = Vec::new();
    let mut good = String::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        match serde_json::from_str::<RunRecord>(trimmed) {
            Ok(r) => {
                records.push(r);
                good.push_str(trimmed);
                good.push('\n');
            }
            Err(_) => break,
        }
    }
    if good != text {
        std::fs::write(path, good)?;
    }
    Ok(records)
}

fn append_records(path: &Path, records: &[RunRecord]) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        let line = serde_json::to_string(r)?;
        f.write_all(line.as_bytes())?;
        f.write_all(b"\n")?;
    }
    f.flush()?;
    Ok(())
}

/// Scores one attempt. Missing frames or an unreadable answer count as an
/// incorrect attempt, not a tool failure: the evaluation still ran.
pub fn score_attempt(
    method: Method,
    dir: &Path,
    manifest: &InstanceManifest,
    output: &SolverOutput,
) -> Result<Scored, HarnessError> {
    match manifest {
        InstanceManifest::Eyeballing(inst) => {
            let verdict: Option<Label> = match method {
                Method::Audio => output.transcript.as_deref().and_then(judge::audio_option),
                Method::LastFrame => output
                    .frames
                    .last()
                    .and_then(|f| judge::detect_red_option(f, &inst.options)),
                Method::MajorFrame => {
                    if output.frames.is_empty() {
                        None
                    } else {
                        let fs = judge::FrameSet::new(
                            output.frames.clone(),
                            output.transcript.clone(),
                        )?;
                        judge::major_frame_verdict(&fs, &inst.options)
                    }
                }
                other => return Err(HarnessError::BadCombo { suite: Suite::Eyeballing, method: other }),
            };
            Ok(Scored {
                correct: verdict == Some(inst.truth),
                answer: verdict.map(|l| l.to_string()),
                truth: Some(inst.truth.to_string()),
                pixel_accuracy: None,
            })
        }
        InstanceManifest::Maze(inst) => {
            let input = load_png(&dir.join("input.png"))?;
            let correct = match output.frames.last() {
                Some(frame) => {
                    mazegen::verify_path_frame(&input, frame, inst.start, inst.end).pass()
                }
                None => false,
            };
            Ok(Scored { correct, answer: None, truth: None, pixel_accuracy: None })
        }
        InstanceManifest::Arc(m) => match output.frames.last() {
            Some(frame) => {
                let got = arcbridge::extract_answer_grid(frame, &m.render);
                let pa = arcbridge::pixel_accuracy(&got, &m.truth).ok();
                Ok(Scored {
                    correct: arcbridge::exact_match(&got, &m.truth),
                    answer: None,
                    truth: None,
                    pixel_accuracy: pa,
                })
            }
            None => Ok(Scored { correct: false, answer: None, truth: None, pixel_accuracy: None }),
        },
        InstanceManifest::Vpuzzle(inst) => {
            if output.frames.is_empty() {
                return Ok(Scored {
                    correct: false,
                    answer: None,
                    truth: Some(inst.truth.clone()),
                    pixel_accuracy: None,
                });
            }
            let (completions, area) = vpuzzle::load_candidates(dir, inst)?;
            let score = vpuzzle::score_puzzle(&output.frames, &completions, &area, inst.metric)?;
            Ok(Scored {
                correct: score.correct,
                answer: Some(inst.candidates[score.chosen].clone()),
                truth: Some(inst.truth.clone()),
                pixel_accuracy: None,
            })
        }
    }
}

pub struct Scored {
    pub correct: bool,
    pub answer: Option<String>,
    pub truth: Option<String>,
    pub pixel_accuracy: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct EvalConfig {
    pub suite: Suite,
    pub method: Method,
    pub tries: u32,
    pub jobs: usize,
    /// Stop after writing this many new records; used to emulate a killed
    /// run in tests and to checkpoint long external runs.
    pub limit: Option<usize>,
}

impl EvalConfig {
    pub fn new(suite: Suite) -> Self {
        EvalConfig { suite, method: Method::default_for(suite), tries: 1, jobs: 1, limit: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EvalOutcome {
    pub written: usize,
    pub skipped: usize,
    pub pending_left: usize,
    /// Accuracy over this adapter+method's records currently in the log.
    pub accuracy: f64,
    pub records: usize,
}

pub fn run_eval(
    root: &Path,
    log_path: &Path,
    cfg: &EvalConfig,
    adapter: &dyn Adapter,
) -> Result<EvalOutcome, HarnessError> {
    validate_combo(cfg.suite, cfg.method)?;
    let instances = discover_instances(root)?;
    let existing = read_log(log_path)?;
    let done: HashSet<(String, String, Method, u32)> = existing
        .iter()
        .map(|r| (r.instance.clone(), r.adapter.clone(), r.method, r.try_index))
        .collect();

    let mut pending: Vec<(String, PathBuf, u32)> = Vec::new();
    let mut skipped = 0usize;
    for (rel, dir) in &instances {
        for t in 0..cfg.tries {
            let key = (rel.clone(), adapter.name().to_string(), cfg.method, t);
            if done.contains(&key) {
                skipped += 1;
            } else {
                pending.push((rel.clone(), dir.clone(), t));
            }
        }
    }
    let pending_left = pending.len().saturating_sub(cfg.limit.unwrap_or(usize::MAX));
    if let Some(limit) = cfg.limit {
        pending.truncate(limit);
    }

    let run_one = |rel: &str, dir: &Path, t: u32| -> Result<RunRecord, HarnessError> {
        let manifest = load_manifest(cfg.suite, dir)?;
        let ctx = SolveContext {
            suite: cfg.suite,
            rel,
            dir,
            try_index: t,
            manifest: &manifest,
        };
        let output = adapter.solve(&ctx)?;
        let scored = score_attempt(cfg.method, dir, &manifest, &output)?;
        let ts = if adapter.deterministic() {
            None
        } else {
            Some(
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        };
        Ok(RunRecord {
            instance: rel.to_string(),
            adapter: adapter.name().to_string(),
            method: cfg.method,
            try_index: t,
            correct: scored.correct,
            answer: scored.answer,
            truth: scored.truth,
            pixel_accuracy: scored.pixel_accuracy,
            ts,
        })
    };

    let mut written = 0usize;
    if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| HarnessError::Adapter(e.to_string()))?;
        // Compute in parallel per chunk, append in deterministic order.
        for chunk in pending.chunks(cfg.jobs.max(1) * 8) {
            let records: Vec<Result<RunRecord, HarnessError>> = pool.install(|| {
                use rayon::prelude::*;
                chunk.par_iter().map(|(rel, dir, t)| run_one(rel, dir, *t)).collect()
            });
            let records: Result<Vec<_>, _> = records.into_iter().collect();
            let records = records?;
            append_records(log_path, &records)?;
            written += records.len();
        }
    } else {
        let mut buf = Vec::with_capacity(64);
        for (rel, dir, t) in &pending {
            buf.push(run_one(rel, dir, *t)?);
            if buf.len() >= 64 {
                append_records(log_path, &buf)?;
                written += buf.len();
                buf.clear();
            }
        }
        append_records(log_path, &buf)?;
        written += buf.len();
    }

    let all = read_log(log_path)?;
    let mine: Vec<&RunRecord> = all
        .iter()
        .filter(|r| r.adapter == adapter.name() && r.method == cfg.method)
        .collect();
    let correct = mine.iter().filter(|r| r.correct).count();
    let accuracy = if mine.is_empty() { 0.0 } else { correct as f64 / mine.len() as f64 };
    Ok(EvalOutcome { written, skipped, pending_left, accuracy, records: mine.len() })
}
