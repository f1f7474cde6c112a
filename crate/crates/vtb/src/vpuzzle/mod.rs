//! Inductive visual puzzles: a scene with one slot hidden behind a grey
//! question mark, solved by regenerating the scene with the slot completed.
//!
//! Every instance ships with the masked `puzzle.png`, the completed
//! `solution.png`, one or more `distractor_k.png` wrong completions, and an
//! `area.png` mask of the slot. Scoring is rule-based: candidate frames are
//! compared against each completion inside the slot area using a color
//! difference for the color tasks and a binarized silhouette difference for
//! the shape tasks, and the nearest completion wins.

mod tasks;

use crate::raster::{load_png, luma8, save_png};
use crate::util::derive_seed;
use image::imageops::FilterType;
use image::RgbImage;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

pub const TASK_COUNT: u32 = 10;
pub const VPUZZLE_CANVAS: (u32, u32) = (720, 1280);
/// Pixels with luma above this are background in the shape metric.
pub const BINARIZE_THRESHOLD: u8 = 245;
/// A winning candidate this relatively close to the runner-up is flagged.
pub const LOW_MARGIN_FRACTION: f64 = 0.05;

#[derive(Debug, Error)]
pub enum VpuzzleError {
    #[error("task id must be 1..={TASK_COUNT}, got {0}")]
    BadTask(u32),
    #[error("image is {got:?} but expected {expected:?}")]
    DimensionMismatch { expected: (u32, u32), got: (u32, u32) },
    #[error("no frames to score")]
    NoFrames,
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffMetric {
    Color,
    Shape,
}

/// Stable snake-case identifier per task.
pub fn task_id_name(task_id: u32) -> Option<&'static str> {
    tasks::catalog().get((task_id as usize).checked_sub(1)?).map(|t| t.name)
}

pub fn task_display_name(task_id: u32) -> Option<&'static str> {
    tasks::catalog().get((task_id as usize).checked_sub(1)?).map(|t| t.display)
}

pub fn task_from_name(name: &str) -> Option<u32> {
    tasks::catalog()
        .iter()
        .position(|t| t.name == name)
        .map(|i| i as u32 + 1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VpuzzleInstance {
    pub task_id: u32,
    pub task: String,
    pub seed: u64,
    pub canvas: (u32, u32),
    pub metric: DiffMetric,
    pub truth: String,
    /// Candidate names; index 0 is the truth, index k+1 is `distractor_k.png`.
    pub candidates: Vec<String>,
    pub prompt_video: String,
    pub prompt_vlm: String,
    /// Shuffled multiple-choice options, for the tasks that use them.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vlm_options: Option<Vec<String>>,
}

/// Generated images plus manifest, before hitting disk.
pub struct GeneratedPuzzle {
    pub instance: VpuzzleInstance,
    pub puzzle: RgbImage,
    pub area: RgbImage,
    /// `[solution, distractor_0, ...]`, aligned with `instance.candidates`.
    pub completions: Vec<RgbImage>,
}

pub fn generate_instance(task_id: u32, seed: u64) -> Result<GeneratedPuzzle, VpuzzleError> {
    if task_id == 0 || task_id > TASK_COUNT {
        return Err(VpuzzleError::BadTask(task_id));
    }
    Ok(tasks::build(task_id, seed))
}

fn require_same_dims(a: &RgbImage, b: &RgbImage) -> Result<(), VpuzzleError> {
    if a.dimensions() != b.dimensions() {
        return Err(VpuzzleError::DimensionMismatch {
            expected: a.dimensions(),
            got: b.dimensions(),
        });
    }
    Ok(())
}

fn area_pixels(area: &RgbImage) -> impl Iterator<Item = (u32, u32)> + '_ {
    area.enumerate_pixels()
        .filter(|(_, _, p)| p.0[0] > 127)
        .map(|(x, y, _)| (x, y))
}

/// Sum of per-pixel Euclidean RGB distances inside the slot area.
pub fn diff_color(a: &RgbImage, b: &RgbImage, area: &RgbImage) -> Result<f64, VpuzzleError> {
    require_same_dims(a, b)?;
    require_same_dims(a, area)?;
    let mut total = 0.0;
    for (x, y) in area_pixels(area) {
        let pa = a.get_pixel(x, y).0;
        let pb = b.get_pixel(x, y).0;
        let dr = pa[0] as f64 - pb[0] as f64;
        let dg = pa[1] as f64 - pb[1] as f64;
        let db = pa[2] as f64 - pb[2] as f64;
        total += (dr * dr + dg * dg + db * db).sqrt();
    }
    Ok(total)
}

/// Number of slot pixels whose binarized intensities disagree.
pub fn diff_shape(a: &RgbImage, b: &RgbImage, area: &RgbImage) -> Result<f64, VpuzzleError> {
    require_same_dims(a, b)?;
    require_same_dims(a, area)?;
    let ink = |img: &RgbImage, x: u32, y: u32| luma8(*img.get_pixel(x, y)) <= BINARIZE_THRESHOLD;
    let mut mismatches = 0u64;
    for (x, y) in area_pixels(area) {
        if ink(a, x, y) != ink(b, x, y) {
            mismatches += 1;
        }
    }
    Ok(mismatches as f64)
}

pub fn diff(metric: DiffMetric, a: &RgbImage, b: &RgbImage, area: &RgbImage) -> Result<f64, VpuzzleError> {
    match metric {
        DiffMetric::Color => diff_color(a, b, area),
        DiffMetric::Shape => diff_shape(a, b, area),
    }
}

/// Bilinear resize to the reference dimensions; identity when they match.
pub fn conform(frame: &RgbImage, reference: &RgbImage) -> RgbImage {
    let (w, h) = reference.dimensions();
    if frame.dimensions() == (w, h) {
        frame.clone()
    } else {
        image::imageops::resize(frame, w, h, FilterType::Triangle)
    }
}

/// Frame closest to `target` inside the slot; ties go to the earliest frame.
pub fn best_frame(
    frames: &[RgbImage],
    target: &RgbImage,
    area: &RgbImage,
    metric: DiffMetric,
) -> Result<(usize, f64), VpuzzleError> {
    if frames.is_empty() {
        return Err(VpuzzleError::NoFrames);
    }
    let mut best = (0usize, f64::INFINITY);
    for (i, f) in frames.iter().enumerate() {
        let d = diff(metric, &conform(f, target), target, area)?;
        if d < best.1 {
            best = (i, d);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct PuzzleScore {
    /// Winning candidate index into `candidates` (0 = solution).
    pub chosen: usize,
    pub correct: bool,
    /// Per-candidate best distance over all frames.
    pub distances: Vec<f64>,
    /// Frame index realizing the winner's distance.
    pub best_frame: usize,
    pub margin: f64,
    pub low_margin: bool,
}

/// Scores solver frames against every completion: each candidate gets its
/// best distance over the frames, and the smallest distance wins (ties to
/// the lowest candidate index). The margin to the runner-up flags
/// hard-to-trust wins.
pub fn score_puzzle(
    frames: &[RgbImage],
    completions: &[RgbImage],
    area: &RgbImage,
    metric: DiffMetric,
) -> Result<PuzzleScore, VpuzzleError> {
    if frames.is_empty() || completions.is_empty() {
        return Err(VpuzzleError::NoFrames);
    }
    let mut distances = Vec::with_capacity(completions.len());
    let mut frame_of = Vec::with_capacity(completions.len());
    for cand in completions {
        let (fi, d) = best_frame(frames, cand, area, metric)?;
        distances.push(d);
        frame_of.push(fi);
    }
    let chosen = distances
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let best_d = distances[chosen];
    let runner_up = distances
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != chosen)
        .map(|(_, d)| *d)
        .fold(f64::INFINITY, f64::min);
    let margin = runner_up - best_d;
    let low_margin = if best_d == 0.0 {
        margin == 0.0
    } else {
        margin / best_d < LOW_MARGIN_FRACTION
    };
    Ok(PuzzleScore {
        chosen,
        correct: chosen == 0,
        distances,
        best_frame: frame_of[chosen],
        margin,
        low_margin,
    })
}

pub fn write_instance(dir: &Path, gp: &GeneratedPuzzle) -> Result<(), VpuzzleError> {
    std::fs::create_dir_all(dir)?;
    save_png(&gp.puzzle, &dir.join("puzzle.png"))?;
    save_png(&gp.area, &dir.join("area.png"))?;
    save_png(&gp.completions[0], &dir.join("solution.png"))?;
    for (k, img) in gp.completions[1..].iter().enumerate() {
        save_png(img, &dir.join(format!("distractor_{k}.png")))?;
    }
    let mut manifest = serde_json::to_vec_pretty(&gp.instance)?;
    manifest.push(b'\n');
    std::fs::write(dir.join("manifest.json"), manifest)?;
    Ok(())
}

pub fn load_instance(dir: &Path) -> Result<VpuzzleInstance, VpuzzleError> {
    let bytes = std::fs::read(dir.join("manifest.json"))?;
    Ok(serde_json::from_slice(&bytes)?)
}

/// Loads `[solution, distractor_0, ...]` plus the area mask.
pub fn load_candidates(
    dir: &Path,
    inst: &VpuzzleInstance,
) -> Result<(Vec<RgbImage>, RgbImage), VpuzzleError> {
    let mut completions = vec![load_png(&dir.join("solution.png"))?];
    for k in 0..inst.candidates.len() - 1 {
        completions.push(load_png(&dir.join(format!("distractor_{k}.png")))?);
    }
    Ok((completions, load_png(&dir.join("area.png"))?))
}

#[derive(Clone, Debug, Serialize)]
pub struct VpuzzleBatchSummary {
    pub instances: usize,
    pub per_task: BTreeMap<String, usize>,
}

/// Writes `out/<task name>/<index>/{puzzle, solution, distractor_k, area,
/// manifest}` for `n` instances of each requested task (1-based ids).
pub fn generate_batch(
    out: &Path,
    task_filter: Option<&[u32]>,
    n: usize,
    master_seed: u64,
) -> Result<VpuzzleBatchSummary, VpuzzleError> {
    let all: Vec<u32> = (1..=TASK_COUNT).collect();
    let list: &[u32] = task_filter.unwrap_or(&all);
    let mut per_task = BTreeMap::new();
    for &task_id in list {
        let name = task_id_name(task_id).ok_or(VpuzzleError::BadTask(task_id))?;
        for index in 0..n {
            let seed = derive_seed(master_seed, &format!("vpuzzle_{name}"), index as u64);
            let gp = generate_instance(task_id, seed)?;
            write_instance(&out.join(name).join(format!("{index:03}")), &gp)?;
        }
        per_task.insert(name.to_string(), n);
    }
    Ok(VpuzzleBatchSummary { instances: list.len() * n, per_task })
}
