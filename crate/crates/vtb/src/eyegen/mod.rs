//! Generator for "eyeball the construction" geometry puzzles.
//!
//! Each instance is a white portrait canvas with some given elements drawn in
//! black plus five small labelled marker circles (A-E). Exactly one marker
//! sits on the ground-truth construction; the other four are decoys placed in
//! an annulus around the truth, far enough from every valid answer that a
//! careful eye can rank them. A solver answers by painting one marker red
//! and/or saying the label out loud.
//!
//! Instances are fully determined by `(family, seed, config)`; regenerating
//! with the same triple reproduces byte-identical images and manifests.

mod families;
mod prompts;

use crate::geom::{pt, Point2};
use crate::raster::{save_png, Canvas, BLACK, MASK_GRAY, WHITE};
use crate::util::derive_seed;
use image::{Rgb, RgbImage};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EyegenError {
    #[error("could not place a valid configuration for {family} (seed {seed}) within the retry budget")]
    GenerationExhausted { family: &'static str, seed: u64 },
    #[error("bad canvas config: {0}")]
    BadConfig(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
}

/// Task grouping used for reporting averages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Point,
    Line,
    Shape,
}

impl Category {
    pub fn display_name(self) -> &'static str {
        match self {
            Category::Point => "Point Tasks",
            Category::Line => "Line Tasks",
            Category::Shape => "Shape Tasks",
        }
    }
}

/// The 21 puzzle families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskFamily {
    // Point tasks
    CircleCenter,
    Circumcenter,
    FermatPoint,
    Incenter,
    Midpoint,
    Orthocenter,
    PointReflection,
    RayIntersection,
    TriangleCenter,
    // Line tasks
    AngleBisector,
    ArcConnect,
    CircleTangentLine,
    CircleTangentPoint,
    Parallel,
    Perpendicular,
    PerpendicularBisector,
    RayReflection,
    // Shape tasks
    IsoscelesTrapezoid,
    Parallelogram,
    RightTriangle,
    SquareOutlier,
}

impl TaskFamily {
    pub const ALL: [TaskFamily; 21] = [
        TaskFamily::CircleCenter,
        TaskFamily::Circumcenter,
        TaskFamily::FermatPoint,
        TaskFamily::Incenter,
        TaskFamily::Midpoint,
        TaskFamily::Orthocenter,
        TaskFamily::PointReflection,
        TaskFamily::RayIntersection,
        TaskFamily::TriangleCenter,
        TaskFamily::AngleBisector,
        TaskFamily::ArcConnect,
        TaskFamily::CircleTangentLine,
        TaskFamily::CircleTangentPoint,
        TaskFamily::Parallel,
        TaskFamily::Perpendicular,
        TaskFamily::PerpendicularBisector,
        TaskFamily::RayReflection,
        TaskFamily::IsoscelesTrapezoid,
        TaskFamily::Parallelogram,
        TaskFamily::RightTriangle,
        TaskFamily::SquareOutlier,
    ];

    /// Stable directory/manifest identifier.
    pub fn id(self) -> &'static str {
        use TaskFamily::*;
        match self {
            CircleCenter => "circle_center",
            Circumcenter => "circumcenter",
            FermatPoint => "fermat_point",
            Incenter => "incenter",
            Midpoint => "midpoint",
            Orthocenter => "orthocenter",
            PointReflection => "point_reflection",
            RayIntersection => "ray_intersection",
            TriangleCenter => "triangle_center",
            AngleBisector => "angle_bisector",
            ArcConnect => "arc_connect",
            CircleTangentLine => "circle_tangent_line",
            CircleTangentPoint => "circle_tangent_point",
            Parallel => "parallel",
            Perpendicular => "perpendicular",
            PerpendicularBisector => "perpendicular_bisector",
            RayReflection => "ray_reflection",
            IsoscelesTrapezoid => "isosceles_trapezoid",
            Parallelogram => "parallelogram",
            RightTriangle => "right_triangle",
            SquareOutlier => "square_outlier",
        }
    }

    pub fn display_name(self) -> &'static str {
        use TaskFamily::*;
        match self {
            CircleCenter => "Circle Center",
            Circumcenter => "Circumcenter",
            FermatPoint => "Fermat Point",
            Incenter => "Incenter",
            Midpoint => "Midpoint",
            Orthocenter => "Orthocenter",
            PointReflection => "Point Reflection",
            RayIntersection => "Ray Intersection",
            TriangleCenter => "Triangle Center",
            AngleBisector => "Angle Bisector",
            ArcConnect => "Arc Connect",
            CircleTangentLine => "Circle Tangent Line",
            CircleTangentPoint => "Circle Tangent Point",
            Parallel => "Parallel",
            Perpendicular => "Perpendicular",
            PerpendicularBisector => "Perpendicular Bisector",
            RayReflection => "Ray Reflection",
            IsoscelesTrapezoid => "Isosceles Trapezoid",
            Parallelogram => "Parallelogram",
            RightTriangle => "Right Triangle",
            SquareOutlier => "Square Outlier",
        }
    }

    pub fn category(self) -> Category {
        use TaskFamily::*;
        match self {
            CircleCenter | Circumcenter | FermatPoint | Incenter | Midpoint | Orthocenter
            | PointReflection | RayIntersection | TriangleCenter => Category::Point,
            AngleBisector | ArcConnect | CircleTangentLine | CircleTangentPoint | Parallel
            | Perpendicular | PerpendicularBisector | RayReflection => Category::Line,
            IsoscelesTrapezoid | Parallelogram | RightTriangle | SquareOutlier => Category::Shape,
        }
    }

    pub fn from_id(id: &str) -> Option<TaskFamily> {
        TaskFamily::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn prompt_video(self) -> &'static str {
        prompts::prompt_pair(self).0
    }

    pub fn prompt_vlm(self) -> &'static str {
        prompts::prompt_pair(self).1
    }
}

/// Candidate marker labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
}

impl Label {
    pub const ALL: [Label; 5] = [Label::A, Label::B, Label::C, Label::D, Label::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Label {
        Label::ALL[i]
    }

    pub fn as_char(self) -> char {
        (b'A' + self.index() as u8) as char
    }

    /// NATO phonetic word used in spoken answers.
    pub fn phonetic(self) -> &'static str {
        match self {
            Label::A => "Alpha",
            Label::B => "Bravo",
            Label::C => "Charlie",
            Label::D => "Delta",
            Label::E => "Echo",
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl std::str::FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Label::A),
            "B" => Ok(Label::B),
            "C" => Ok(Label::C),
            "D" => Ok(Label::D),
            "E" => Ok(Label::E),
            other => Err(format!("not an option label: {other:?}")),
        }
    }
}

/// The five labelled marker positions of one instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptionSet {
    positions: [Point2; 5],
}

impl OptionSet {
    pub fn new(positions: [Point2; 5]) -> Self {
        OptionSet { positions }
    }

    pub fn get(&self, label: Label) -> Point2 {
        self.positions[label.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, Point2)> + '_ {
        Label::ALL.into_iter().map(|l| (l, self.positions[l.index()]))
    }
}

impl Serialize for OptionSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = BTreeMap::new();
        for (l, p) in self.iter() {
            m.insert(l.as_char().to_string(), (p.x, p.y));
        }
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OptionSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, (f64, f64)>::deserialize(d)?;
        let mut positions = [pt(0.0, 0.0); 5];
        for l in Label::ALL {
            let key = l.as_char().to_string();
            let (x, y) = m
                .get(&key)
                .copied()
                .ok_or_else(|| D::Error::custom(format!("missing option {key}")))?;
            positions[l.index()] = pt(x, y);
        }
        Ok(OptionSet { positions })
    }
}

/// Canvas geometry and placement thresholds.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct CanvasConfig {
    pub width: u32,
    pub height: u32,
    /// Markers stay at least this far from every canvas edge (px).
    pub margin: f64,
    /// Minimum pairwise distance between markers (px).
    pub min_sep: f64,
    /// Decoys sit at least this far from every valid answer (px).
    pub decoy_min_err: f64,
    /// Decoys are sampled at most this far from the truth marker (px).
    pub decoy_max_err: f64,
    /// The truth marker must be within this distance of the construction (px).
    pub snap_tol: f64,
}

impl Default for CanvasConfig {
    fn default() -> Self {
        CanvasConfig {
            width: 720,
            height: 1280,
            margin: 40.0,
            min_sep: 60.0,
            decoy_min_err: 40.0,
            decoy_max_err: 300.0,
            snap_tol: 0.5,
        }
    }
}

impl CanvasConfig {
    /// A small square canvas, handy for statistical runs.
    pub fn small() -> Self {
        CanvasConfig { width: 256, height: 256, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), EyegenError> {
        if self.width < 256 || self.height < 256 {
            return Err(EyegenError::BadConfig(format!(
                "canvas must be at least 256x256, got {}x{}",
                self.width, self.height
            )));
        }
        Ok(())
    }

    pub fn min_dim(&self) -> f64 {
        self.width.min(self.height) as f64
    }

    pub(crate) fn in_margins(&self, p: Point2) -> bool {
        p.x >= self.margin
            && p.y >= self.margin
            && p.x <= self.width as f64 - self.margin
            && p.y <= self.height as f64 - self.margin
    }
}

/// Drawable scene elements. The per-family element list doubles as the
/// machine-readable statement of the problem, so the order and kinds of
/// elements per family are part of the format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GivenElement {
    Segment { a: Point2, b: Point2, width: f64 },
    Circle { center: Point2, r: f64, width: f64 },
    Disc { center: Point2, r: f64 },
    Polygon { points: Vec<Point2>, width: f64 },
    /// Upper branch of a circle, drawn for x in [x0, x1].
    UpperArc { center: Point2, r: f64, x0: f64, x1: f64, width: f64 },
    Rect { x: f64, y: f64, w: f64, h: f64, fill: [u8; 3] },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectRegion {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

/// One generated puzzle; serializes to `manifest.json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EyeballInstance {
    pub family: TaskFamily,
    pub seed: u64,
    pub canvas: (u32, u32),
    pub options: OptionSet,
    pub truth: Label,
    pub prompt_video: String,
    pub prompt_vlm: String,
    #[serde(rename = "given_elements")]
    pub given: Vec<GivenElement>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mask_region: Option<RectRegion>,
}

/// How options are validated for a family, derived from the given elements.
/// `valid` describes everything that counts as a correct answer; `exclude`
/// lists extra keep-away points (ambiguous completions, drawn point markers)
/// that decoys must also avoid without being themselves correct.
pub(crate) struct ErrModel {
    pub(crate) valid: families::Valid,
    pub(crate) exclude: Vec<Point2>,
}

impl ErrModel {
    /// Distance from `p` to the nearest correct answer.
    pub(crate) fn truth_error(&self, p: Point2) -> f64 {
        self.valid.distance(p)
    }

    /// Distance from `p` to the nearest correct answer or keep-away point;
    /// decoys must keep this at or above `decoy_min_err`.
    pub(crate) fn error(&self, p: Point2) -> f64 {
        let near_excluded =
            self.exclude.iter().map(|v| v.dist(p)).fold(f64::INFINITY, f64::min);
        self.truth_error(p).min(near_excluded)
    }
}

/// Places the truth marker under a uniformly random label and rejection-samples
/// the four decoys in the `[decoy_min_err, decoy_max_err]` annulus around the
/// truth, subject to the margin box, pairwise `min_sep`, and the family error
/// model. Fails (for the caller to resample the construction) after 1000
/// rejected samples.
pub(crate) fn place_options(
    rng: &mut ChaCha8Rng,
    truth: Point2,
    model: &ErrModel,
    cfg: &CanvasConfig,
) -> Option<(OptionSet, Label)> {
    if !cfg.in_margins(truth) {
        return None;
    }
    let truth_label = Label::from_index(rng.random_range(0..5));
    let mut positions = [pt(0.0, 0.0); 5];
    positions[truth_label.index()] = truth;
    let mut placed: Vec<Point2> = vec![truth];
    let mut budget = 1000;
    for label in Label::ALL {
        if label == truth_label {
            continue;
        }
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let ang = rng.random_range(0.0..std::f64::consts::TAU);
            let rad = rng.random_range(cfg.decoy_min_err..cfg.decoy_max_err);
            let p = truth + pt(ang.cos(), ang.sin()) * rad;
            if !cfg.in_margins(p) {
                continue;
            }
            if placed.iter().any(|q| q.dist(p) < cfg.min_sep) {
                continue;
            }
            if model.error(p) < cfg.decoy_min_err {
                continue;
            }
            positions[label.index()] = p;
            placed.push(p);
            break;
        }
    }
    Some((OptionSet::new(positions), truth_label))
}

/// Assigns the five preset marker positions to shuffled labels.
fn label_preset(
    rng: &mut ChaCha8Rng,
    points: [Point2; 5],
    truth_idx: usize,
) -> (OptionSet, Label) {
    let mut order = [0usize, 1, 2, 3, 4];
    // Fisher-Yates with the instance RNG.
    for i in (1..5).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut positions = [pt(0.0, 0.0); 5];
    let mut truth_label = Label::A;
    for (slot, &point_idx) in order.iter().enumerate() {
        positions[slot] = points[point_idx];
        if point_idx == truth_idx {
            truth_label = Label::from_index(slot);
        }
    }
    (OptionSet::new(positions), truth_label)
}

/// Generates one instance. Deterministic in `(family, seed, cfg)`.
pub fn generate_instance(
    family: TaskFamily,
    seed: u64,
    cfg: &CanvasConfig,
) -> Result<EyeballInstance, EyegenError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..1000 {
        let Some(constr) = families::construct(family, &mut rng, cfg) else {
            continue;
        };
        let (options, truth) = match constr.preset {
            Some((points, truth_idx)) => {
                if points.iter().any(|p| !cfg.in_margins(*p)) {
                    continue;
                }
                let mut ok = true;
                for i in 0..5 {
                    for j in i + 1..5 {
                        if points[i].dist(points[j]) < cfg.min_sep {
                            ok = false;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                label_preset(&mut rng, points, truth_idx)
            }
            None => {
                let model = families::error_model(family, &constr.given)
                    .expect("constructed elements must yield an error model");
                match place_options(&mut rng, constr.truth_point, &model, cfg) {
                    Some(v) => v,
                    None => continue,
                }
            }
        };
        return Ok(EyeballInstance {
            family,
            seed,
            canvas: (cfg.width, cfg.height),
            options,
            truth,
            prompt_video: family.prompt_video().to_string(),
            prompt_vlm: family.prompt_vlm().to_string(),
            given: constr.given,
            mask_region: constr.mask_region,
        });
    }
    Err(EyegenError::GenerationExhausted { family: family.id(), seed })
}

/// Marker geometry shared by the renderer and by scripted solvers.
pub const MARKER_RADIUS: f64 = 9.0;
pub const MARKER_STROKE: f64 = 2.0;
pub const LABEL_SCALE: u32 = 4;

fn draw_element(cv: &mut Canvas, el: &GivenElement) {
    match el {
        GivenElement::Segment { a, b, width } => cv.line(*a, *b, *width, BLACK),
        GivenElement::Circle { center, r, width } => cv.circle(*center, *r, *width, BLACK),
        GivenElement::Disc { center, r } => cv.disc(*center, *r, BLACK),
        GivenElement::Polygon { points, width } => cv.polygon_outline(points, *width, BLACK),
        GivenElement::UpperArc { center, r, x0, x1, width } => {
            let mut pts_v = Vec::new();
            let steps = ((x1 - x0) / 2.0).ceil().max(2.0) as usize;
            for i in 0..=steps {
                let x = x0 + (x1 - x0) * i as f64 / steps as f64;
                let dx = x - center.x;
                let dy = (r * r - dx * dx).max(0.0).sqrt();
                pts_v.push(pt(x, center.y - dy));
            }
            cv.polyline(&pts_v, *width, BLACK);
        }
        GivenElement::Rect { x, y, w, h, fill } => {
            cv.fill_rect(*x, *y, *w, *h, Rgb(*fill));
        }
    }
}

/// Rasterizes an instance. Pure function of the manifest; contains no red.
pub fn render_instance(inst: &EyeballInstance) -> RgbImage {
    let (w, h) = inst.canvas;
    let mut cv = Canvas::new(w, h, WHITE);
    for el in &inst.given {
        draw_element(&mut cv, el);
    }
    let glyph_w = (crate::raster::GLYPH_W * LABEL_SCALE) as f64;
    let glyph_h = (crate::raster::GLYPH_H * LABEL_SCALE) as f64;
    for (label, p) in inst.options.iter() {
        cv.circle(p, MARKER_RADIUS, MARKER_STROKE, BLACK);
        let mut gx = p.x + MARKER_RADIUS + 5.0;
        if gx + glyph_w > w as f64 - 2.0 {
            gx = p.x - MARKER_RADIUS - 5.0 - glyph_w;
        }
        let gy = (p.y - glyph_h / 2.0).clamp(2.0, h as f64 - glyph_h - 2.0);
        cv.glyph(label.as_char(), gx, gy, LABEL_SCALE, BLACK);
    }
    cv.into_image()
}

/// Recomputes the construction from the given elements and checks that the
/// truth marker satisfies it (within `snap_tol`) while every decoy stays at
/// least `decoy_min_err` away from every valid answer.
pub fn oracle_check(inst: &EyeballInstance) -> bool {
    let cfg = CanvasConfig {
        width: inst.canvas.0,
        height: inst.canvas.1,
        ..CanvasConfig::default()
    };
    match inst.family {
        TaskFamily::RightTriangle => families::check_right_triangle(&inst.options, inst.truth),
        TaskFamily::SquareOutlier => families::check_square_outlier(&inst.options, inst.truth),
        _ => {
            let Some(model) = families::error_model(inst.family, &inst.given) else {
                return false;
            };
            let mut on_construction = 0;
            for (label, p) in inst.options.iter() {
                if model.truth_error(p) <= cfg.snap_tol {
                    on_construction += 1;
                }
                if label == inst.truth {
                    if model.truth_error(p) > cfg.snap_tol {
                        return false;
                    }
                } else if model.error(p) < cfg.decoy_min_err {
                    return false;
                }
            }
            on_construction == 1
        }
    }
}

/// Summary of a generated tree.
#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub instances: usize,
    pub per_family: BTreeMap<String, usize>,
}

/// Writes `out/<family>/<index>/{input.png, manifest.json}` for `n` instances
/// of each requested family (all 21 when `families` is `None`).
pub fn generate_batch(
    out: &Path,
    families_filter: Option<&[TaskFamily]>,
    n: usize,
    master_seed: u64,
    cfg: &CanvasConfig,
) -> Result<BatchSummary, EyegenError> {
    let all = TaskFamily::ALL;
    let list: &[TaskFamily] = families_filter.unwrap_or(&all);
    let mut per_family = BTreeMap::new();
    for &family in list {
        for index in 0..n {
            let seed = derive_seed(master_seed, family.id(), index as u64);
            let inst = generate_instance(family, seed, cfg)?;
            let dir = out.join(family.id()).join(format!("{index:03}"));
            write_instance(&dir, &inst)?;
        }
        per_family.insert(family.id().to_string(), n);
    }
    Ok(BatchSummary { instances: list.len() * n, per_family })
}

pub fn write_instance(dir: &Path, inst: &EyeballInstance) -> Result<(), EyegenError> {
    std::fs::create_dir_all(dir)?;
    save_png(&render_instance(inst), &dir.join("input.png"))?;
    let mut manifest = serde_json::to_vec_pretty(inst)?;
    manifest.push(b'\n');
    std::fs::write(dir.join("manifest.json"), manifest)?;
    Ok(())
}

pub fn load_instance(dir: &Path) -> Result<EyeballInstance, EyegenError> {
    let bytes = std::fs::read(dir.join("manifest.json"))?;
    Ok(serde_json::from_slice(&bytes)?)
}

/// Color of the band that hides the middle of Arc Connect scenes.
pub const MASK_BAND_COLOR: Rgb<u8> = MASK_GRAY;
