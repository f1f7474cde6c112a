//! Grid-reasoning tasks rendered as images and recovered from frames.
//!
//! Tasks follow the common JSON schema `{train: [{input, output}], test:
//! [{input, output}]}` where grids are row-major arrays of color indices
//! 0..=9. A task renders to a portrait image: one row per demonstration pair
//! (input grid, arrow, output grid) and a final row whose output slot is a
//! solid black answer region the solver must paint. The answer is read back
//! by sampling each cell and snapping to the nearest palette color.

use crate::raster::{Canvas, WHITE};
use crate::util::derive_seed;
use image::imageops::FilterType;
use image::{Rgb, RgbImage};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

pub const MAX_GRID_DIM: usize = 30;

/// Index, name, RGB for the ten grid colors.
pub const ARC_PALETTE: [(u8, &str, [u8; 3]); 10] = [
    (0, "black", [0x00, 0x00, 0x00]),
    (1, "blue", [0x00, 0x74, 0xD9]),
    (2, "red", [0xFF, 0x41, 0x36]),
    (3, "green", [0x2E, 0xCC, 0x40]),
    (4, "yellow", [0xFF, 0xDC, 0x00]),
    (5, "gray", [0xAA, 0xAA, 0xAA]),
    (6, "magenta", [0xF0, 0x12, 0xBE]),
    (7, "orange", [0xFF, 0x85, 0x1B]),
    (8, "azure", [0x7F, 0xDB, 0xFF]),
    (9, "maroon", [0x87, 0x0C, 0x25]),
];

pub const ARC_PROMPT: &str = "Each row contains input and output grids. Learn the pattern and generate the output grid for the last input while keeping existing patterns without modification. Static camera perspective, no zoom or pan. In portrait.";

const GRID_LINE: Rgb<u8> = Rgb([0x50, 0x50, 0x50]);
const MARGIN: f64 = 20.0;
const PAIR_GAP: f64 = 40.0; // input-to-output gap; the arrow lives here
const ROW_GAP: f64 = 30.0;
const MIN_CELL: u32 = 4;
const MAX_CELL: u32 = 60;
/// Fraction of each cell sampled when reading colors back.
const SAMPLE_FRACTION: f64 = 0.6;

#[derive(Debug, Error)]
pub enum ArcError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("task needs at least one train and one test pair")]
    EmptyTask,
    #[error("grids are {a:?} and {b:?}")]
    DimensionMismatch { a: (usize, usize), b: (usize, usize) },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<Vec<u8>>);

impl Grid {
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn cols(&self) -> usize {
        self.0.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.0[r][c]
    }

    pub fn cells(&self) -> usize {
        self.rows() * self.cols()
    }

    pub fn validate(&self) -> Result<(), ArcError> {
        let (r, c) = (self.rows(), self.cols());
        if r == 0 || c == 0 {
            return Err(ArcError::InvalidGrid("empty grid".into()));
        }
        if r > MAX_GRID_DIM || c > MAX_GRID_DIM {
            return Err(ArcError::InvalidGrid(format!("{r}x{c} exceeds {MAX_GRID_DIM}")));
        }
        for row in &self.0 {
            if row.len() != c {
                return Err(ArcError::InvalidGrid("ragged rows".into()));
            }
            if let Some(v) = row.iter().find(|v| **v > 9) {
                return Err(ArcError::InvalidGrid(format!("value {v} out of range")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcPair {
    pub input: Grid,
    pub output: Grid,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcTask {
    pub train: Vec<ArcPair>,
    pub test: Vec<ArcPair>,
}

impl ArcTask {
    pub fn from_json(s: &str) -> Result<Self, ArcError> {
        let task: ArcTask = serde_json::from_str(s)?;
        task.validate()?;
        Ok(task)
    }

    pub fn load(path: &Path) -> Result<Self, ArcError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), ArcError> {
        if self.train.is_empty() || self.test.is_empty() {
            return Err(ArcError::EmptyTask);
        }
        for p in self.train.iter().chain(&self.test) {
            p.input.validate()?;
            p.output.validate()?;
        }
        Ok(())
    }

    /// The evaluated pair: the first test input and its reference output.
    pub fn test_pair(&self) -> &ArcPair {
        &self.test[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shots {
    /// All demonstration pairs are shown above the test row.
    All,
    /// Only the first demonstration pair is shown.
    One,
}

impl std::str::FromStr for Shots {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Shots::All),
            "one" => Ok(Shots::One),
            other => Err(format!("expected all|one, got {other}")),
        }
    }
}

/// Pixel geometry of a rendered task, needed to recover the answer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcRenderInfo {
    pub canvas: (u32, u32),
    pub cell: u32,
    /// Rendered row count, including the test row.
    pub rows: usize,
    /// (x, y, w, h) of the black answer slot.
    pub answer_region: (u32, u32, u32, u32),
    /// (rows, cols) of the expected answer grid.
    pub answer_dims: (usize, usize),
}

fn palette_rgb(v: u8) -> Rgb<u8> {
    Rgb(ARC_PALETTE[v as usize].2)
}

fn nearest_palette(mean: [f64; 3]) -> u8 {
    let mut best = (0u8, f64::INFINITY);
    for (idx, _, rgb) in ARC_PALETTE {
        let d: f64 = (0..3).map(|i| (mean[i] - rgb[i] as f64).powi(2)).sum();
        if d < best.1 {
            best = (idx, d);
        }
    }
    best.0
}

/// Draws `grid` with 1 px separators; occupies `cols*cell+1` x `rows*cell+1`.
fn draw_grid(cv: &mut Canvas, grid: &Grid, x0: f64, y0: f64, cell: f64) {
    let (rows, cols) = (grid.rows(), grid.cols());
    for r in 0..rows {
        for c in 0..cols {
            cv.fill_rect(x0 + c as f64 * cell, y0 + r as f64 * cell, cell, cell, palette_rgb(grid.get(r, c)));
        }
    }
    for k in 0..=cols {
        cv.fill_rect(x0 + k as f64 * cell, y0, 1.0, rows as f64 * cell + 1.0, GRID_LINE);
    }
    for k in 0..=rows {
        cv.fill_rect(x0, y0 + k as f64 * cell, cols as f64 * cell + 1.0, 1.0, GRID_LINE);
    }
}

fn draw_arrow(cv: &mut Canvas, x: f64, cy: f64) {
    let (a, b) = (crate::geom::pt(x + 8.0, cy), crate::geom::pt(x + PAIR_GAP - 8.0, cy));
    cv.line(a, b, 2.0, GRID_LINE);
    cv.line(b, crate::geom::pt(b.x - 9.0, cy - 6.0), 2.0, GRID_LINE);
    cv.line(b, crate::geom::pt(b.x - 9.0, cy + 6.0), 2.0, GRID_LINE);
}

fn included_pairs(task: &ArcTask, shots: Shots) -> Vec<&ArcPair> {
    match shots {
        Shots::All => task.train.iter().collect(),
        Shots::One => task.train.iter().take(1).collect(),
    }
}

/// Cell size shared by every layout of the task, so that swapping `shots`
/// never reflows the rows that remain.
fn cell_size(task: &ArcTask) -> u32 {
    let test = task.test_pair();
    let mut max_w_cells = 0usize;
    let mut total_h_cells = 0usize;
    let mut rows = 0usize;
    for p in task.train.iter().chain(std::iter::once(test)) {
        max_w_cells = max_w_cells.max(p.input.cols() + p.output.cols());
        total_h_cells += p.input.rows().max(p.output.rows());
        rows += 1;
    }
    let s_w = (720.0 - 2.0 * MARGIN - PAIR_GAP) / max_w_cells as f64;
    let s_h = (1280.0 - 2.0 * MARGIN - ROW_GAP * (rows - 1) as f64) / total_h_cells as f64;
    (s_w.min(s_h).floor() as u32).clamp(MIN_CELL, MAX_CELL)
}

/// Renders the task in portrait. The content anchors at the top-left margin
/// and the canvas pads out with white to a 9:16 aspect.
pub fn render_arc_task(task: &ArcTask, shots: Shots) -> Result<(RgbImage, ArcRenderInfo), ArcError> {
    task.validate()?;
    let cell = cell_size(task) as f64;
    let test = task.test_pair();
    let shown = included_pairs(task, shots);

    // Row geometry: (input grid, Option<output grid>); None = answer slot.
    let mut content_w = 0.0f64;
    let mut y = MARGIN;
    struct Row<'a> {
        y: f64,
        input: &'a Grid,
        output: Option<&'a Grid>,
        answer_dims: (usize, usize),
    }
    let mut rows: Vec<Row> = Vec::new();
    for p in &shown {
        rows.push(Row { y, input: &p.input, output: Some(&p.output), answer_dims: (0, 0) });
        let h = p.input.rows().max(p.output.rows()) as f64 * cell + 1.0;
        let w = (p.input.cols() + p.output.cols()) as f64 * cell + 2.0 + PAIR_GAP;
        content_w = content_w.max(w);
        y += h + ROW_GAP;
    }
    let truth = &test.output;
    rows.push(Row {
        y,
        input: &test.input,
        output: None,
        answer_dims: (truth.rows(), truth.cols()),
    });
    let h = test.input.rows().max(truth.rows()) as f64 * cell + 1.0;
    let w = (test.input.cols() + truth.cols()) as f64 * cell + 2.0 + PAIR_GAP;
    content_w = content_w.max(w);
    let content_h = y + h;

    let w0 = 720u32.max((content_w + 2.0 * MARGIN).ceil() as u32);
    let h0 = 1280u32.max((content_h + MARGIN).ceil() as u32);
    let (cw, ch) = if (w0 as f64) * 16.0 < (h0 as f64) * 9.0 {
        (((h0 as f64) * 9.0 / 16.0).ceil() as u32, h0)
    } else {
        (w0, (((w0 as f64) * 16.0 / 9.0).ceil() as u32))
    };

    let mut cv = Canvas::new(cw, ch, WHITE);
    let mut answer_region = (0u32, 0u32, 0u32, 0u32);
    for row in &rows {
        let in_w = row.input.cols() as f64 * cell + 1.0;
        let row_h_cells = row
            .input
            .rows()
            .max(row.output.map_or(row.answer_dims.0, |g| g.rows()));
        let cy = row.y + row_h_cells as f64 * cell / 2.0;
        draw_grid(&mut cv, row.input, MARGIN, row.y, cell);
        draw_arrow(&mut cv, MARGIN + in_w, cy);
        let ox = MARGIN + in_w + PAIR_GAP;
        match row.output {
            Some(g) => draw_grid(&mut cv, g, ox, row.y, cell),
            None => {
                let (ar, ac) = row.answer_dims;
                let (aw, ah) = (ac as f64 * cell + 1.0, ar as f64 * cell + 1.0);
                cv.fill_rect(ox, row.y, aw, ah, crate::raster::BLACK);
                answer_region = (ox as u32, row.y as u32, aw.ceil() as u32, ah.ceil() as u32);
            }
        }
    }

    let info = ArcRenderInfo {
        canvas: (cw, ch),
        cell: cell as u32,
        rows: rows.len(),
        answer_region,
        answer_dims: (truth.rows(), truth.cols()),
    };
    Ok((cv.into_image(), info))
}

/// Paints a grid into the answer slot of a rendered task image.
pub fn render_answer(base: &RgbImage, answer: &Grid, info: &ArcRenderInfo) -> RgbImage {
    let mut cv = Canvas::from_image(base.clone());
    let (x, y, _, _) = info.answer_region;
    draw_grid(&mut cv, answer, x as f64, y as f64, info.cell as f64);
    cv.into_image()
}

/// Reads the answer grid back out of a frame. Frames of other sizes are
/// first resized (bilinear) to the render geometry; each cell's color is the
/// palette entry nearest the mean RGB over the cell's central region.
pub fn extract_answer_grid(frame: &RgbImage, info: &ArcRenderInfo) -> Grid {
    let (cw, ch) = info.canvas;
    let resized;
    let frame = if frame.dimensions() == (cw, ch) {
        frame
    } else {
        resized = image::imageops::resize(frame, cw, ch, FilterType::Triangle);
        &resized
    };
    let (ax, ay, _, _) = info.answer_region;
    let cell = info.cell as f64;
    let (rows, cols) = info.answer_dims;
    let pad = cell * (1.0 - SAMPLE_FRACTION) / 2.0;
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for c in 0..cols {
            let x0 = ax as f64 + c as f64 * cell + pad;
            let x1 = ax as f64 + (c + 1) as f64 * cell - pad;
            let y0 = ay as f64 + r as f64 * cell + pad;
            let y1 = ay as f64 + (r + 1) as f64 * cell - pad;
            let mut sum = [0.0f64; 3];
            let mut n = 0.0f64;
            let (xa, xb) = (x0.floor() as u32, (x1.ceil() as u32).min(cw));
            let (ya, yb) = (y0.floor() as u32, (y1.ceil() as u32).min(ch));
            for py in ya..yb {
                for px in xa..xb {
                    let (fx, fy) = (px as f64 + 0.5, py as f64 + 0.5);
                    if fx >= x0 && fx < x1 && fy >= y0 && fy < y1 {
                        let p = frame.get_pixel(px, py).0;
                        for i in 0..3 {
                            sum[i] += p[i] as f64;
                        }
                        n += 1.0;
                    }
                }
            }
            let mean = if n > 0.0 {
                [sum[0] / n, sum[1] / n, sum[2] / n]
            } else {
                [0.0, 0.0, 0.0]
            };
            row.push(nearest_palette(mean));
        }
        out.push(row);
    }
    Grid(out)
}

/// Dimension mismatches score as a miss, not an error.
pub fn exact_match(a: &Grid, b: &Grid) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && a.0 == b.0
}

/// Fraction of matching cells; the grids must have identical shapes.
pub fn pixel_accuracy(a: &Grid, b: &Grid) -> Result<f64, ArcError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(ArcError::DimensionMismatch {
            a: (a.rows(), a.cols()),
            b: (b.rows(), b.cols()),
        });
    }
    let total = a.cells() as f64;
    let same = a
        .0
        .iter()
        .zip(&b.0)
        .flat_map(|(ra, rb)| ra.iter().zip(rb))
        .filter(|(x, y)| x == y)
        .count() as f64;
    Ok(same / total)
}

/// Buckets per-task pixel accuracy into low / middle / high.
pub const HISTOGRAM_EDGES: [f64; 2] = [0.35, 0.65];

pub fn accuracy_histogram(accs: &[f64]) -> [usize; 3] {
    let mut h = [0usize; 3];
    for &a in accs {
        let b = if a < HISTOGRAM_EDGES[0] {
            0
        } else if a < HISTOGRAM_EDGES[1] {
            1
        } else {
            2
        };
        h[b] += 1;
    }
    h
}

/// A small color-permutation task: outputs are inputs with every color
/// remapped by a fixed permutation the solver must infer.
pub fn synthetic_task(seed: u64) -> ArcTask {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u8> = (0..10).collect();
    perm.shuffle(&mut rng);
    let make_pair = |rng: &mut ChaCha8Rng| {
        let rows = rng.random_range(3..=8usize);
        let cols = rng.random_range(3..=8usize);
        let input = Grid(
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.random_range(0..10u8)).collect())
                .collect(),
        );
        let output = Grid(input.0.iter().map(|r| r.iter().map(|&v| perm[v as usize]).collect()).collect());
        ArcPair { input, output }
    };
    ArcTask {
        train: (0..3).map(|_| make_pair(&mut rng)).collect(),
        test: vec![make_pair(&mut rng)],
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcManifest {
    pub task_id: String,
    pub shots: Shots,
    pub render: ArcRenderInfo,
    pub truth: Grid,
    pub prompt_video: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcBatchSummary {
    pub tasks: usize,
    pub out: String,
}

/// Renders `out/<task_id>/{input.png, manifest.json}` for each task.
pub fn render_batch(
    out: &Path,
    tasks: &[(String, ArcTask)],
    shots: Shots,
) -> Result<ArcBatchSummary, ArcError> {
    for (id, task) in tasks {
        let dir = out.join(id);
        std::fs::create_dir_all(&dir)?;
        let (img, info) = render_arc_task(task, shots)?;
        crate::raster::save_png(&img, &dir.join("input.png"))?;
        let manifest = ArcManifest {
            task_id: id.clone(),
            shots,
            render: info,
            truth: task.test_pair().output.clone(),
            prompt_video: ARC_PROMPT.to_string(),
        };
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        std::fs::write(dir.join("manifest.json"), bytes)?;
    }
    Ok(ArcBatchSummary { tasks: tasks.len(), out: out.display().to_string() })
}

pub fn load_manifest(dir: &Path) -> Result<ArcManifest, ArcError> {
    Ok(serde_json::from_slice(&std::fs::read(dir.join("manifest.json"))?)?)
}

/// `n` synthetic tasks with ids derived from a master seed.
pub fn synthetic_batch(n: usize, master_seed: u64) -> Vec<(String, ArcTask)> {
    (0..n)
        .map(|i| {
            let seed = derive_seed(master_seed, "arc_synth", i as u64);
            (format!("synthetic_{i:03}"), synthetic_task(seed))
        })
        .collect()
}
