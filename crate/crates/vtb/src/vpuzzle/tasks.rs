//! The ten puzzle scene builders.
//!
//! Each builder lays out a patterned scene, picks one slot to hide, and
//! returns the masked puzzle plus the correct and incorrect completions.
//! Fills are drawn through a shared `Region`/`Variant` pair so the masked
//! pixels, the area mask, and every completion stay perfectly aligned.

use super::{DiffMetric, GeneratedPuzzle, VpuzzleInstance, VPUZZLE_CANVAS};
use crate::geom::{pt, Point2};
use crate::raster::{Canvas, BLACK, MASK_GRAY, WHITE};
use image::Rgb;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub struct TaskMeta {
    pub name: &'static str,
    pub display: &'static str,
}

const CATALOG: [TaskMeta; 10] = [
    TaskMeta { name: "hexagon_color", display: "Hexagon Color" },
    TaskMeta { name: "grid_color", display: "Grid Color" },
    TaskMeta { name: "shape_color", display: "Shape Color" },
    TaskMeta { name: "rect_height_color", display: "Rectangle Height Color" },
    TaskMeta { name: "color_gradient", display: "Color Gradient" },
    TaskMeta { name: "color_mixing", display: "Color Mixing" },
    TaskMeta { name: "grid_size_pattern", display: "Grid Size Pattern" },
    TaskMeta { name: "cycle_size_pattern", display: "Cycle Size Pattern" },
    TaskMeta { name: "grid_shape_size_pattern", display: "Grid Shape & Size Pattern" },
    TaskMeta { name: "reflection", display: "Reflection" },
];

pub fn catalog() -> &'static [TaskMeta; 10] {
    &CATALOG
}

// Scene colors. None of these classify as "red" under the frame judge, so a
// solver's red annotations stay unambiguous even if puzzle and eyeballing
// imagery ever get mixed in one clip.
const PALETTE: [(&str, [u8; 3]); 7] = [
    ("blue", [0, 90, 220]),
    ("green", [0, 160, 70]),
    ("yellow", [250, 210, 0]),
    ("purple", [140, 60, 200]),
    ("magenta", [200, 40, 190]),
    ("cyan", [0, 190, 190]),
    ("brown", [140, 90, 40]),
];

const COLOR_VIDEO: &str = "What is the missing color of the part denoted with a question mark? This part should be completely filled with the correct color while the other parts should be unchanged. The question mark disappears. Then nothing happens and the scene remains static. Do not zoom in or out, or change the positions of the shapes.";
const COLOR_VLM: &str = "What is the missing color of the part denoted with a question mark?";
const GRADIENT_VIDEO: &str = "What is the missing color of the part denoted with a question mark? This part should be completely filled with the correct color (not white or the original grey) to match the pattern in the image while the other parts should be unchanged. The question mark disappears. Then nothing happens and the scene remains static. Do not zoom in or out, or change the positions of the shapes.";
const GRADIENT_VLM_BASE: &str = "What is the missing color of the part denoted with a question mark? Options: ";
const SIZE_CIRCLE_VIDEO: &str = "What is the size of the missing part denoted with a question mark? This part should be replaced with the correct circle while the other circles should be unchanged. The question mark disappears. Then nothing happens and the scene remains static. Do not zoom in or out, or change the positions of the shapes.";
const SIZE_CIRCLE_VLM_BASE: &str = "What is the size of the missing circle denoted with a question mark? Options: ";
const SIZE_SHAPE_VIDEO: &str = "What is the size of the missing part denoted by a question mark? This part should be replaced with the correct shape while the other shapes should be unchanged. The question mark disappears. Then nothing happens and the scene remains static. Do not zoom in or out, or change the positions of the shapes.";
const SIZE_SHAPE_VLM_BASE: &str = "What is the size of the missing part denoted by a question mark? Options: ";
const SHAPE_VIDEO: &str = "What is the missing shape denoted by a question mark? The question mark area should be replaced with the correct shape while the other shapes should be unchanged. The question mark disappears. Then nothing happens and the scene remains static. Do not zoom in or out, or change the positions of the shapes.";
const SHAPE_VLM_BASE: &str = "What is the missing shape denoted by a question mark? Options: ";

const QMARK_SCALE: u32 = 8; // 40x56 px question mark

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Shape {
    Triangle,
    Square,
    Pentagon,
    Hexagon,
    Circle,
}

impl Shape {
    fn name(self) -> &'static str {
        match self {
            Shape::Triangle => "triangle",
            Shape::Square => "square",
            Shape::Pentagon => "pentagon",
            Shape::Hexagon => "hexagon",
            Shape::Circle => "circle",
        }
    }

    fn draw(self, cv: &mut Canvas, c: Point2, r: f64, color: Rgb<u8>) {
        match self {
            Shape::Circle => cv.disc(c, r, color),
            Shape::Triangle => cv.fill_polygon(&regular_poly(c, r, 3, -PI / 2.0), color),
            Shape::Square => cv.fill_polygon(&regular_poly(c, r, 4, -PI / 4.0), color),
            Shape::Pentagon => cv.fill_polygon(&regular_poly(c, r, 5, -PI / 2.0), color),
            Shape::Hexagon => cv.fill_polygon(&regular_poly(c, r, 6, -PI / 2.0), color),
        }
    }
}

fn regular_poly(c: Point2, r: f64, n: u32, rot: f64) -> Vec<Point2> {
    (0..n)
        .map(|k| {
            let a = rot + 2.0 * PI * k as f64 / n as f64;
            c + pt(a.cos(), a.sin()) * r
        })
        .collect()
}

/// Pixel set owned by the masked slot.
enum Region {
    Poly(Vec<Point2>),
    Disc { c: Point2, r: f64 },
    Rect { x: f64, y: f64, w: f64, h: f64 },
}

impl Region {
    fn fill(&self, cv: &mut Canvas, color: Rgb<u8>) {
        match self {
            Region::Poly(pts) => cv.fill_polygon(pts, color),
            Region::Disc { c, r } => cv.disc(*c, *r, color),
            Region::Rect { x, y, w, h } => cv.fill_rect(*x, *y, *w, *h, color),
        }
    }
}

/// One way of completing the slot.
enum Variant {
    /// Fill the whole region with a color (the color tasks).
    Fill(Rgb<u8>),
    /// Draw a figure centered in the region over background (the shape tasks).
    Figure { shape: Shape, r: f64, color: Rgb<u8> },
}

struct Scene {
    metric: DiffMetric,
    base: Canvas,
    region: Region,
    center: Point2,
    /// (name, completion), truth first.
    variants: Vec<(String, Variant)>,
    prompt_video: &'static str,
    prompt_vlm: String,
    vlm_options: Option<Vec<String>>,
}

fn assemble(task_id: u32, seed: u64, scene: Scene) -> GeneratedPuzzle {
    let meta = &CATALOG[(task_id - 1) as usize];
    let base = scene.base.into_image();
    let (w, h) = (base.width(), base.height());

    let mut puzzle = Canvas::from_image(base.clone());
    scene.region.fill(&mut puzzle, MASK_GRAY);
    let gw = (crate::raster::GLYPH_W * QMARK_SCALE) as f64;
    let gh = (crate::raster::GLYPH_H * QMARK_SCALE) as f64;
    puzzle.glyph('?', scene.center.x - gw / 2.0, scene.center.y - gh / 2.0, QMARK_SCALE, BLACK);

    let mut area = Canvas::new(w, h, BLACK);
    scene.region.fill(&mut area, WHITE);

    let mut completions = Vec::with_capacity(scene.variants.len());
    let mut candidates = Vec::with_capacity(scene.variants.len());
    for (name, v) in &scene.variants {
        let mut cv = Canvas::from_image(base.clone());
        match v {
            Variant::Fill(color) => scene.region.fill(&mut cv, *color),
            Variant::Figure { shape, r, color } => shape.draw(&mut cv, scene.center, *r, *color),
        }
        completions.push(cv.into_image());
        candidates.push(name.clone());
    }

    let instance = VpuzzleInstance {
        task_id,
        task: meta.name.to_string(),
        seed,
        canvas: (w, h),
        metric: scene.metric,
        truth: candidates[0].clone(),
        candidates,
        prompt_video: scene.prompt_video.to_string(),
        prompt_vlm: scene.prompt_vlm,
        vlm_options: scene.vlm_options,
    };
    GeneratedPuzzle { instance, puzzle: puzzle.into_image(), area: area.into_image(), completions }
}

fn canvas() -> Canvas {
    Canvas::new(VPUZZLE_CANVAS.0, VPUZZLE_CANVAS.1, WHITE)
}

fn pick_colors(rng: &mut ChaCha8Rng, k: usize) -> Vec<(&'static str, Rgb<u8>)> {
    let mut idx: Vec<usize> = (0..PALETTE.len()).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    idx.iter().map(|&i| (PALETTE[i].0, Rgb(PALETTE[i].1))).collect()
}

fn rgb_dist(a: Rgb<u8>, b: Rgb<u8>) -> f64 {
    let d = |i: usize| a.0[i] as f64 - b.0[i] as f64;
    (d(0) * d(0) + d(1) * d(1) + d(2) * d(2)).sqrt()
}

fn mix(a: Rgb<u8>, b: Rgb<u8>) -> Rgb<u8> {
    Rgb([
        ((a.0[0] as u16 + b.0[0] as u16) / 2) as u8,
        ((a.0[1] as u16 + b.0[1] as u16) / 2) as u8,
        ((a.0[2] as u16 + b.0[2] as u16) / 2) as u8,
    ])
}

fn lerp_color(a: Rgb<u8>, b: Rgb<u8>, t: f64) -> Rgb<u8> {
    let ch = |i: usize| (a.0[i] as f64 + (b.0[i] as f64 - a.0[i] as f64) * t).round() as u8;
    Rgb([ch(0), ch(1), ch(2)])
}

const SIZE_NAMES: [&str; 3] = ["small", "medium", "large"];

fn shuffled_options(rng: &mut ChaCha8Rng, names: &[String]) -> Vec<String> {
    let mut opts = names.to_vec();
    opts.shuffle(rng);
    opts
}

pub fn build(task_id: u32, seed: u64) -> GeneratedPuzzle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scene = match task_id {
        1 => hexagon_color(&mut rng),
        2 => grid_color(&mut rng),
        3 => shape_color(&mut rng),
        4 => rect_height_color(&mut rng),
        5 => color_gradient(&mut rng),
        6 => color_mixing(&mut rng),
        7 => grid_size_pattern(&mut rng),
        8 => cycle_size_pattern(&mut rng),
        9 => grid_shape_size_pattern(&mut rng),
        10 => reflection(&mut rng),
        _ => unreachable!("task ids validated by the caller"),
    };
    assemble(task_id, seed, scene)
}

/// Flower of seven hexagons; outer ring alternates two colors around a third.
fn hexagon_color(rng: &mut ChaCha8Rng) -> Scene {
    let colors = pick_colors(rng, 3);
    let center = pt(360.0, 640.0);
    let (r, d) = (90.0, 170.0);
    let masked = rng.random_range(0..6usize);

    let mut cv = canvas();
    cv.fill_polygon(&regular_poly(center, r, 6, -PI / 2.0), colors[2].1);
    let mut slot = None;
    for k in 0..6usize {
        let a = k as f64 * PI / 3.0;
        let c = center + pt(a.cos(), a.sin()) * d;
        let poly = regular_poly(c, r, 6, -PI / 2.0);
        if k == masked {
            slot = Some((poly, c));
        } else {
            cv.fill_polygon(&poly, colors[k % 2].1);
        }
    }
    let (poly, c) = slot.unwrap();
    let truth = colors[masked % 2];
    let wrong = colors[(masked + 1) % 2];
    Scene {
        metric: DiffMetric::Color,
        base: cv,
        region: Region::Poly(poly),
        center: c,
        variants: vec![
            (truth.0.to_string(), Variant::Fill(truth.1)),
            (wrong.0.to_string(), Variant::Fill(wrong.1)),
            (colors[2].0.to_string(), Variant::Fill(colors[2].1)),
        ],
        prompt_video: COLOR_VIDEO,
        prompt_vlm: COLOR_VLM.to_string(),
        vlm_options: None,
    }
}

/// 5x7 grid of squares with a three-color diagonal pattern.
fn grid_color(rng: &mut ChaCha8Rng) -> Scene {
    let colors = pick_colors(rng, 3);
    let (cols, rows, cell, gap) = (5usize, 7usize, 120.0, 8.0);
    let x0 = (720.0 - (cols as f64 * cell + (cols - 1) as f64 * gap)) / 2.0;
    let y0 = (1280.0 - (rows as f64 * cell + (rows - 1) as f64 * gap)) / 2.0;
    let (mr, mc) = (rng.random_range(0..rows), rng.random_range(0..cols));

    let mut cv = canvas();
    let mut slot = None;
    for r in 0..rows {
        for c in 0..cols {
            let x = x0 + c as f64 * (cell + gap);
            let y = y0 + r as f64 * (cell + gap);
            if (r, c) == (mr, mc) {
                slot = Some((x, y));
            } else {
                cv.fill_rect(x, y, cell, cell, colors[(r + c) % 3].1);
            }
        }
    }
    let (x, y) = slot.unwrap();
    let truth = colors[(mr + mc) % 3];
    let (d1, d2) = (colors[(mr + mc + 1) % 3], colors[(mr + mc + 2) % 3]);
    Scene {
        metric: DiffMetric::Color,
        base: cv,
        region: Region::Rect { x, y, w: cell, h: cell },
        center: pt(x + cell / 2.0, y + cell / 2.0),
        variants: vec![
            (truth.0.to_string(), Variant::Fill(truth.1)),
            (d1.0.to_string(), Variant::Fill(d1.1)),
            (d2.0.to_string(), Variant::Fill(d2.1)),
        ],
        prompt_video: COLOR_VIDEO,
        prompt_vlm: COLOR_VLM.to_string(),
        vlm_options: None,
    }
}

/// 3x4 grid where each column is one shape and each shape owns a color.
fn shape_color(rng: &mut ChaCha8Rng) -> Scene {
    let colors = pick_colors(rng, 3);
    let shapes = [Shape::Triangle, Shape::Circle, Shape::Square];
    let xs = [180.0, 360.0, 540.0];
    let ys = [320.0, 560.0, 800.0, 1040.0];
    let r = 70.0;
    let (mr, mc) = (rng.random_range(0..ys.len()), rng.random_range(0..xs.len()));

    let mut cv = canvas();
    for (ci, &x) in xs.iter().enumerate() {
        for (ri, &y) in ys.iter().enumerate() {
            if (ri, ci) != (mr, mc) {
                shapes[ci].draw(&mut cv, pt(x, y), r, colors[ci].1);
            }
        }
    }
    let c = pt(xs[mc], ys[mr]);
    let region = match shapes[mc] {
        Shape::Circle => Region::Disc { c, r },
        s => Region::Poly(regular_poly(
            c,
            r,
            match s {
                Shape::Triangle => 3,
                Shape::Square => 4,
                _ => unreachable!(),
            },
            if s == Shape::Square { -PI / 4.0 } else { -PI / 2.0 },
        )),
    };
    let truth = colors[mc];
    let (d1, d2) = (colors[(mc + 1) % 3], colors[(mc + 2) % 3]);
    Scene {
        metric: DiffMetric::Color,
        base: cv,
        region,
        center: c,
        variants: vec![
            (truth.0.to_string(), Variant::Fill(truth.1)),
            (d1.0.to_string(), Variant::Fill(d1.1)),
            (d2.0.to_string(), Variant::Fill(d2.1)),
        ],
        prompt_video: COLOR_VIDEO,
        prompt_vlm: COLOR_VLM.to_string(),
        vlm_options: None,
    }
}

/// Six bars whose height class (short/medium/tall) dictates the color.
/// The mask keeps the bar's height, so only the color is in question.
fn rect_height_color(rng: &mut ChaCha8Rng) -> Scene {
    let colors = pick_colors(rng, 3);
    let heights = [180.0, 330.0, 480.0];
    let (wbar, gap, base_y) = (90.0, 16.0, 1100.0);
    let x0 = (720.0 - (6.0 * wbar + 5.0 * gap)) / 2.0;
    let masked = rng.random_range(0..6usize);

    let mut cv = canvas();
    let mut slot = None;
    for i in 0..6usize {
        let x = x0 + i as f64 * (wbar + gap);
        let h = heights[i % 3];
        if i == masked {
            slot = Some((x, base_y - h, h));
        } else {
            cv.fill_rect(x, base_y - h, wbar, h, colors[i % 3].1);
        }
    }
    let (x, y, h) = slot.unwrap();
    let truth = colors[masked % 3];
    let (d1, d2) = (colors[(masked + 1) % 3], colors[(masked + 2) % 3]);
    Scene {
        metric: DiffMetric::Color,
        base: cv,
        region: Region::Rect { x, y, w: wbar, h },
        center: pt(x + wbar / 2.0, y + h / 2.0),
        variants: vec![
            (truth.0.to_string(), Variant::Fill(truth.1)),
            (d1.0.to_string(), Variant::Fill(d1.1)),
            (d2.0.to_string(), Variant::Fill(d2.1)),
        ],
        prompt_video: COLOR_VIDEO,
        prompt_vlm: COLOR_VLM.to_string(),
        vlm_options: None,
    }
}

/// Five swatches running light to dark in one hue; an inner step is hidden.
fn color_gradient(rng: &mut ChaCha8Rng) -> Scene {
    let hue = pick_colors(rng, 1)[0];
    let light = lerp_color(hue.1, Rgb([255, 255, 255]), 0.65);
    let dark = lerp_color(hue.1, Rgb([0, 0, 0]), 0.55);
    let steps: Vec<Rgb<u8>> = (0..5).map(|k| lerp_color(light, dark, k as f64 / 4.0)).collect();
    let names: Vec<String> = ["very light", "light", "medium", "dark", "very dark"]
        .iter()
        .map(|lvl| format!("{lvl} {}", hue.0))
        .collect();
    let (sw, gap, x) = (150.0, 60.0, 285.0);
    let y0 = (1280.0 - (5.0 * sw + 4.0 * gap)) / 2.0;
    let masked = rng.random_range(1..4usize);

    let mut cv = canvas();
    let mut slot = None;
    for k in 0..5usize {
        let y = y0 + k as f64 * (sw + gap);
        if k == masked {
            slot = Some(y);
        } else {
            cv.fill_rect(x, y, sw, sw, steps[k]);
        }
    }
    let y = slot.unwrap();

    let mut others: Vec<usize> = (0..5).filter(|&k| k != masked).collect();
    others.shuffle(rng);
    others.truncate(3);
    let mut variants = vec![(names[masked].clone(), Variant::Fill(steps[masked]))];
    for k in others {
        variants.push((names[k].clone(), Variant::Fill(steps[k])));
    }
    let option_names: Vec<String> = variants.iter().map(|(n, _)| n.clone()).collect();
    let opts = shuffled_options(rng, &option_names);
    let prompt_vlm = format!("{GRADIENT_VLM_BASE}{}", opts.join(", "));
    Scene {
        metric: DiffMetric::Color,
        base: cv,
        region: Region::Rect { x, y, w: sw, h: sw },
        center: pt(x + sw / 2.0, y + sw / 2.0),
        variants,
        prompt_video: GRADIENT_VIDEO,
        prompt_vlm,
        vlm_options: Some(opts),
    }
}

/// Three "A + B = C" rows of paint mixing; the last result is hidden.
fn color_mixing(rng: &mut ChaCha8Rng) -> Scene {
    // Reshuffle until every candidate fill is clearly distinguishable.
    let (pairs, extra) = loop {
        let cols = pick_colors(rng, 7);
        let pairs: Vec<_> = (0..3).map(|i| (cols[2 * i], cols[2 * i + 1])).collect();
        let extra = cols[6];
        let fills = [
            mix(pairs[2].0 .1, pairs[2].1 .1),
            mix(pairs[0].0 .1, pairs[0].1 .1),
            mix(pairs[1].0 .1, pairs[1].1 .1),
            extra.1,
        ];
        let ok = (0..fills.len()).all(|i| {
            (i + 1..fills.len()).all(|j| rgb_dist(fills[i], fills[j]) >= 30.0)
        });
        if ok {
            break (pairs, extra);
        }
    };

    let sq = 130.0;
    let ys = [230.0, 560.0, 890.0];
    let xa = 75.0;
    let xb = xa + sq + 90.0; // 295
    let xc = xb + sq + 90.0; // 515
    let glyph_scale = 6u32;
    let gx_plus = xa + sq + 30.0;
    let gx_eq = xb + sq + 30.0;

    let mut cv = canvas();
    let mut slot = None;
    for (i, &y) in ys.iter().enumerate() {
        let (a, b) = pairs[i];
        cv.fill_rect(xa, y, sq, sq, a.1);
        cv.fill_rect(xb, y, sq, sq, b.1);
        let gy = y + (sq - (crate::raster::GLYPH_H * glyph_scale) as f64) / 2.0;
        cv.glyph('+', gx_plus, gy, glyph_scale, BLACK);
        cv.glyph('=', gx_eq, gy, glyph_scale, BLACK);
        if i == 2 {
            slot = Some(y);
        } else {
            cv.fill_rect(xc, y, sq, sq, mix(a.1, b.1));
        }
    }
    let y = slot.unwrap();
    let mix_name = |p: &((&str, Rgb<u8>), (&str, Rgb<u8>))| format!("mix of {} and {}", p.0 .0, p.1 .0);
    Scene {
        metric: DiffMetric::Color,
        base: cv,
        region: Region::Rect { x: xc, y, w: sq, h: sq },
        center: pt(xc + sq / 2.0, y + sq / 2.0),
        variants: vec![
            (mix_name(&pairs[2]), Variant::Fill(mix(pairs[2].0 .1, pairs[2].1 .1))),
            (mix_name(&pairs[0]), Variant::Fill(mix(pairs[0].0 .1, pairs[0].1 .1))),
            (mix_name(&pairs[1]), Variant::Fill(mix(pairs[1].0 .1, pairs[1].1 .1))),
            (extra.0.to_string(), Variant::Fill(extra.1)),
        ],
        prompt_video: COLOR_VIDEO,
        prompt_vlm: COLOR_VLM.to_string(),
        vlm_options: None,
    }
}

const DISC_RADII: [f64; 3] = [22.0, 38.0, 54.0];

fn size_variants(shape: Shape, truth_class: usize, color: Rgb<u8>) -> Vec<(String, Variant)> {
    let mut v = vec![(
        SIZE_NAMES[truth_class].to_string(),
        Variant::Figure { shape, r: shape_r(shape, truth_class), color },
    )];
    for k in 0..3usize {
        if k != truth_class {
            v.push((
                SIZE_NAMES[k].to_string(),
                Variant::Figure { shape, r: shape_r(shape, k), color },
            ));
        }
    }
    v
}

fn shape_r(shape: Shape, class: usize) -> f64 {
    match shape {
        Shape::Circle => DISC_RADII[class],
        _ => [24.0, 40.0, 56.0][class],
    }
}

/// 3x4 grid of discs whose radius cycles small/medium/large by row.
fn grid_size_pattern(rng: &mut ChaCha8Rng) -> Scene {
    let xs = [180.0, 360.0, 540.0];
    let ys = [320.0, 560.0, 800.0, 1040.0];
    let (mr, mc) = (rng.random_range(0..ys.len()), rng.random_range(0..xs.len()));

    let mut cv = canvas();
    for (ri, &y) in ys.iter().enumerate() {
        for (ci, &x) in xs.iter().enumerate() {
            if (ri, ci) != (mr, mc) {
                cv.disc(pt(x, y), DISC_RADII[ri % 3], BLACK);
            }
        }
    }
    let c = pt(xs[mc], ys[mr]);
    let truth_class = mr % 3;
    let variants = size_variants(Shape::Circle, truth_class, BLACK);
    let opts = shuffled_options(rng, &SIZE_NAMES.map(String::from));
    Scene {
        metric: DiffMetric::Shape,
        base: cv,
        region: Region::Rect { x: c.x - 75.0, y: c.y - 75.0, w: 150.0, h: 150.0 },
        center: c,
        variants,
        prompt_video: SIZE_CIRCLE_VIDEO,
        prompt_vlm: format!("{SIZE_CIRCLE_VLM_BASE}{}", opts.join(", ")),
        vlm_options: Some(opts),
    }
}

/// Nine discs around a ring, sizes cycling with position.
fn cycle_size_pattern(rng: &mut ChaCha8Rng) -> Scene {
    let center = pt(360.0, 640.0);
    let ring_r = 300.0;
    let masked = rng.random_range(0..9usize);

    let mut cv = canvas();
    let mut slot = None;
    for k in 0..9usize {
        let a = -PI / 2.0 + 2.0 * PI * k as f64 / 9.0;
        let c = center + pt(a.cos(), a.sin()) * ring_r;
        if k == masked {
            slot = Some(c);
        } else {
            cv.disc(c, DISC_RADII[k % 3], BLACK);
        }
    }
    let c = slot.unwrap();
    let truth_class = masked % 3;
    let variants = size_variants(Shape::Circle, truth_class, BLACK);
    let opts = shuffled_options(rng, &SIZE_NAMES.map(String::from));
    Scene {
        metric: DiffMetric::Shape,
        base: cv,
        region: Region::Rect { x: c.x - 70.0, y: c.y - 70.0, w: 140.0, h: 140.0 },
        center: c,
        variants,
        prompt_video: SIZE_CIRCLE_VIDEO,
        prompt_vlm: format!("{SIZE_CIRCLE_VLM_BASE}{}", opts.join(", ")),
        vlm_options: Some(opts),
    }
}

/// 3x4 grid: shape fixed per column, size cycling per row.
fn grid_shape_size_pattern(rng: &mut ChaCha8Rng) -> Scene {
    let shapes = [Shape::Triangle, Shape::Square, Shape::Pentagon];
    let xs = [180.0, 360.0, 540.0];
    let ys = [320.0, 560.0, 800.0, 1040.0];
    let (mr, mc) = (rng.random_range(0..ys.len()), rng.random_range(0..xs.len()));

    let mut cv = canvas();
    for (ri, &y) in ys.iter().enumerate() {
        for (ci, &x) in xs.iter().enumerate() {
            if (ri, ci) != (mr, mc) {
                shapes[ci].draw(&mut cv, pt(x, y), shape_r(shapes[ci], ri % 3), BLACK);
            }
        }
    }
    let c = pt(xs[mc], ys[mr]);
    let truth_class = mr % 3;
    let variants = size_variants(shapes[mc], truth_class, BLACK);
    let opts = shuffled_options(rng, &SIZE_NAMES.map(String::from));
    Scene {
        metric: DiffMetric::Shape,
        base: cv,
        region: Region::Rect { x: c.x - 65.0, y: c.y - 65.0, w: 130.0, h: 130.0 },
        center: c,
        variants,
        prompt_video: SIZE_SHAPE_VIDEO,
        prompt_vlm: format!("{SIZE_SHAPE_VLM_BASE}{}.", opts.join(", ")),
        vlm_options: Some(opts),
    }
}

/// Shapes on the left of a mirror line, their reflections on the right;
/// one reflection is hidden.
fn reflection(rng: &mut ChaCha8Rng) -> Scene {
    let mut shapes = [Shape::Triangle, Shape::Square, Shape::Pentagon, Shape::Hexagon];
    shapes.shuffle(rng);
    let colors = pick_colors(rng, 4);
    let ys = [260.0, 520.0, 780.0, 1040.0];
    let (xl, xr, r) = (180.0, 540.0, 60.0);
    let masked = rng.random_range(0..4usize);

    let mut cv = canvas();
    cv.line(pt(360.0, 180.0), pt(360.0, 1120.0), 3.0, BLACK);
    for (i, &y) in ys.iter().enumerate() {
        shapes[i].draw(&mut cv, pt(xl, y), r, colors[i].1);
        if i != masked {
            // Point-up regular polygons are their own mirror image.
            shapes[i].draw(&mut cv, pt(xr, y), r, colors[i].1);
        }
    }
    let c = pt(xr, ys[masked]);
    let truth_shape = shapes[masked];
    let fill = colors[masked].1;
    let mut variants = vec![(
        truth_shape.name().to_string(),
        Variant::Figure { shape: truth_shape, r, color: fill },
    )];
    for s in [Shape::Triangle, Shape::Square, Shape::Pentagon, Shape::Hexagon] {
        if s != truth_shape {
            variants.push((s.name().to_string(), Variant::Figure { shape: s, r, color: fill }));
        }
    }
    let names: Vec<String> =
        [Shape::Triangle, Shape::Square, Shape::Pentagon, Shape::Hexagon]
            .iter()
            .map(|s| s.name().to_string())
            .collect();
    let opts = shuffled_options(rng, &names);
    Scene {
        metric: DiffMetric::Shape,
        base: cv,
        region: Region::Rect { x: c.x - 70.0, y: c.y - 70.0, w: 140.0, h: 140.0 },
        center: c,
        variants,
        prompt_video: SHAPE_VIDEO,
        prompt_vlm: format!("{SHAPE_VLM_BASE}{}.", opts.join(", ")),
        vlm_options: Some(opts),
    }
}
