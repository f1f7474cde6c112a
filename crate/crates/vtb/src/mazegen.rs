//! Maze generation, rendering, and path verification for three board
//! topologies: square grids, hexagonal boards, and concentric rings.
//!
//! A maze instance is a portrait image with black walls and two red dots;
//! the solver must paint a connected red path between the dots without
//! touching a wall. The manifest stores only `(topology, size, seed)` plus
//! integrity data, because the full maze regenerates deterministically.

use crate::geom::{pt, Point2};
use crate::raster::{luma8, save_png, Canvas, BLACK, RED, WHITE};
use crate::util::{derive_seed, sha256_hex};
use image::RgbImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use thiserror::Error;

pub const MAZE_CANVAS: (u32, u32) = (720, 1280);
pub const WALL_WIDTH: f64 = 3.0;
pub const PATH_WIDTH: f64 = 4.0;
pub const DOT_RADIUS: f64 = 8.0;
/// Input pixels at or below this luma are walls.
pub const WALL_LUMA_MAX: u8 = 63;

pub const MAZE_PROMPT: &str =
    "Draw a red path connecting two red dots without touching the black walls. In portrait. Static camera.";

#[derive(Debug, Error)]
pub enum MazeError {
    #[error("unsupported {topology} size {size} (allowed {min}..={max})")]
    BadSize { topology: &'static str, size: u32, min: u32, max: u32 },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
    #[error("manifest: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Square,
    Hexagon,
    Circle,
}

impl Topology {
    pub const ALL: [Topology; 3] = [Topology::Square, Topology::Hexagon, Topology::Circle];

    pub fn id(self) -> &'static str {
        match self {
            Topology::Square => "square",
            Topology::Hexagon => "hexagon",
            Topology::Circle => "circle",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Topology::Square => "Square",
            Topology::Hexagon => "Hexagon",
            Topology::Circle => "Circle",
        }
    }

    /// Side length, board radius + 1, or ring count respectively.
    pub fn default_size(self) -> u32 {
        match self {
            Topology::Square => 8,
            Topology::Hexagon => 5,
            Topology::Circle => 5,
        }
    }

    pub fn from_id(id: &str) -> Option<Topology> {
        Topology::ALL.into_iter().find(|t| t.id() == id)
    }

    fn size_range(self) -> (u32, u32) {
        match self {
            Topology::Square => (2, 32),
            Topology::Hexagon => (2, 10),
            Topology::Circle => (2, 8),
        }
    }
}

#[derive(Clone, Debug)]
pub enum WallGeom {
    Seg { a: Point2, b: Point2 },
    Arc { center: Point2, r: f64, a0: f64, a1: f64 },
}

#[derive(Clone, Debug)]
pub struct Wall {
    pub geom: WallGeom,
    /// `None` for boundary walls, which are never carved.
    pub between: Option<(usize, usize)>,
}

/// Board geometry and adjacency before carving.
pub struct MazeBoard {
    pub topology: Topology,
    pub size: u32,
    pub canvas: (u32, u32),
    pub centers: Vec<Point2>,
    pub walls: Vec<Wall>,
    /// `adj[cell] = [(neighbor, wall index), ...]` for carvable walls.
    pub adj: Vec<Vec<(usize, usize)>>,
    /// Sector count per ring (circle topology only).
    pub rings: Vec<usize>,
    /// `(ring, mid radius, mid angle)` per cell (circle topology only).
    cell_polar: Vec<(usize, f64, f64)>,
    start: usize,
    /// Fixed for square/hexagon; chosen per seed for circle.
    end: Option<usize>,
}

pub fn build_board(topology: Topology, size: u32) -> Result<MazeBoard, MazeError> {
    let (min, max) = topology.size_range();
    if size < min || size > max {
        return Err(MazeError::BadSize { topology: topology.id(), size, min, max });
    }
    Ok(match topology {
        Topology::Square => build_square(size),
        Topology::Hexagon => build_hexagon(size),
        Topology::Circle => build_circle(size),
    })
}

fn finish_adjacency(walls: &[Wall], cells: usize) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); cells];
    for (w, wall) in walls.iter().enumerate() {
        if let Some((a, b)) = wall.between {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
    }
    adj
}

fn build_square(size: u32) -> MazeBoard {
    let n = size as usize;
    let (cw, ch) = MAZE_CANVAS;
    let side = (cw.min(ch) as f64) - 80.0;
    let cell = side / n as f64;
    let ox = (cw as f64 - side) / 2.0;
    let oy = (ch as f64 - side) / 2.0;
    let corner = |c: usize, r: usize| pt(ox + c as f64 * cell, oy + r as f64 * cell);

    let mut centers = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            centers.push(pt(ox + (c as f64 + 0.5) * cell, oy + (r as f64 + 0.5) * cell));
        }
    }
    let mut walls = Vec::new();
    for (a, b) in [
        (corner(0, 0), corner(n, 0)),
        (corner(n, 0), corner(n, n)),
        (corner(n, n), corner(0, n)),
        (corner(0, n), corner(0, 0)),
    ] {
        walls.push(Wall { geom: WallGeom::Seg { a, b }, between: None });
    }
    for r in 0..n {
        for c in 0..n - 1 {
            walls.push(Wall {
                geom: WallGeom::Seg { a: corner(c + 1, r), b: corner(c + 1, r + 1) },
                between: Some((r * n + c, r * n + c + 1)),
            });
        }
    }
    for r in 0..n - 1 {
        for c in 0..n {
            walls.push(Wall {
                geom: WallGeom::Seg { a: corner(c, r + 1), b: corner(c + 1, r + 1) },
                between: Some((r * n + c, (r + 1) * n + c)),
            });
        }
    }
    let adj = finish_adjacency(&walls, n * n);
    MazeBoard {
        topology: Topology::Square,
        size,
        canvas: MAZE_CANVAS,
        centers,
        walls,
        adj,
        rings: Vec::new(),
        cell_polar: Vec::new(),
        start: 0,
        end: Some(n * n - 1),
    }
}

fn build_hexagon(size: u32) -> MazeBoard {
    let nn = (size - 1) as i32;
    let (cw, ch) = MAZE_CANVAS;
    let rhex = (cw.min(ch) as f64 - 80.0) / (3f64.sqrt() * (2 * nn + 1) as f64);
    let c0 = pt(cw as f64 / 2.0, ch as f64 / 2.0);

    let mut centers = Vec::new();
    for q in -nn..=nn {
        for r in -nn..=nn {
            if (q + r).abs() > nn {
                continue;
            }
            centers.push(
                c0 + pt(
                    3f64.sqrt() * rhex * (q as f64 + r as f64 / 2.0),
                    1.5 * rhex * r as f64,
                ),
            );
        }
    }
    let key = |p: Point2| ((p.x * 8.0).round() as i64, (p.y * 8.0).round() as i64);
    let by_pos: BTreeMap<(i64, i64), usize> =
        centers.iter().enumerate().map(|(i, p)| (key(*p), i)).collect();
    let corner = |c: Point2, k: usize| {
        let a = (2 * k + 1) as f64 * std::f64::consts::PI / 6.0;
        c + pt(a.cos(), a.sin()) * rhex
    };

    let mut walls = Vec::new();
    for (i, &center) in centers.iter().enumerate() {
        for k in 0..6 {
            let ca = corner(center, k);
            let cb = corner(center, (k + 1) % 6);
            let mid = crate::geom::midpoint(ca, cb);
            let neighbor = by_pos.get(&key(mid * 2.0 - center)).copied();
            match neighbor {
                Some(j) if j > i => walls.push(Wall {
                    geom: WallGeom::Seg { a: ca, b: cb },
                    between: Some((i, j)),
                }),
                Some(_) => {}
                None => walls.push(Wall { geom: WallGeom::Seg { a: ca, b: cb }, between: None }),
            }
        }
    }
    let adj = finish_adjacency(&walls, centers.len());
    // Topmost-left cell to the farthest cell from it.
    let start = (0..centers.len())
        .min_by(|&a, &b| {
            (centers[a].y, centers[a].x)
                .partial_cmp(&(centers[b].y, centers[b].x))
                .unwrap()
        })
        .unwrap();
    let end = (0..centers.len())
        .max_by(|&a, &b| {
            centers[start]
                .dist(centers[a])
                .partial_cmp(&centers[start].dist(centers[b]))
                .unwrap()
        })
        .unwrap();
    MazeBoard {
        topology: Topology::Hexagon,
        size,
        canvas: MAZE_CANVAS,
        centers,
        walls,
        adj,
        rings: Vec::new(),
        cell_polar: Vec::new(),
        start,
        end: Some(end),
    }
}

fn build_circle(size: u32) -> MazeBoard {
    use std::f64::consts::TAU;
    let n = size as usize;
    let (cw, ch) = MAZE_CANVAS;
    let c0 = pt(cw as f64 / 2.0, ch as f64 / 2.0);
    let r_out = cw.min(ch) as f64 / 2.0 - 40.0;
    let t = r_out / n as f64;

    // Sector counts: a single centre disc, six first-ring sectors, then
    // adaptive doubling whenever sectors grow wider than ~2.2 ring widths.
    let mut rings = vec![1usize];
    for i in 1..n {
        if i == 1 {
            rings.push(6);
        } else {
            let prev = rings[i - 1];
            let arc_w = TAU * (i as f64 * t) / prev as f64;
            rings.push(if arc_w > 2.2 * t { prev * 2 } else { prev });
        }
    }
    let mut first_idx = vec![0usize; n + 1];
    for i in 0..n {
        first_idx[i + 1] = first_idx[i] + rings[i];
    }
    let cells = first_idx[n];
    let cell_at = |ring: usize, sector: usize| first_idx[ring] + sector;

    let mut centers = Vec::with_capacity(cells);
    let mut cell_polar = Vec::with_capacity(cells);
    for (ring, &s) in rings.iter().enumerate() {
        for j in 0..s {
            if ring == 0 {
                centers.push(c0);
                cell_polar.push((0, 0.0, 0.0));
            } else {
                let rm = (ring as f64 + 0.5) * t;
                let am = (j as f64 + 0.5) * TAU / s as f64;
                centers.push(c0 + pt(am.cos(), am.sin()) * rm);
                cell_polar.push((ring, rm, am));
            }
        }
    }

    let mut walls = Vec::new();
    walls.push(Wall {
        geom: WallGeom::Arc { center: c0, r: r_out, a0: 0.0, a1: TAU },
        between: None,
    });
    for (ring, &s) in rings.iter().enumerate().skip(1) {
        let da = TAU / s as f64;
        // Radial walls between same-ring sectors.
        if s > 1 {
            for j in 0..s {
                let a = j as f64 * da;
                let u = pt(a.cos(), a.sin());
                walls.push(Wall {
                    geom: WallGeom::Seg {
                        a: c0 + u * (ring as f64 * t),
                        b: c0 + u * ((ring + 1) as f64 * t),
                    },
                    between: Some((cell_at(ring, (j + s - 1) % s), cell_at(ring, j))),
                });
            }
        }
        // Arc walls between this ring and its parent ring.
        let parent_s = rings[ring - 1];
        for j in 0..s {
            let parent = if ring == 1 { 0 } else { cell_at(ring - 1, j * parent_s / s) };
            walls.push(Wall {
                geom: WallGeom::Arc {
                    center: c0,
                    r: ring as f64 * t,
                    a0: j as f64 * da,
                    a1: (j + 1) as f64 * da,
                },
                between: Some((parent, cell_at(ring, j))),
            });
        }
    }
    let adj = finish_adjacency(&walls, cells);
    MazeBoard {
        topology: Topology::Circle,
        size,
        canvas: MAZE_CANVAS,
        centers,
        walls,
        adj,
        rings,
        cell_polar,
        start: 0,
        end: None,
    }
}

/// A board with a spanning tree carved through it.
pub struct CarvedMaze {
    pub board: MazeBoard,
    pub carved: Vec<bool>,
    pub start: usize,
    pub end: usize,
    pub seed: u64,
}

/// Randomized depth-first spanning tree; deterministic in `(board, seed)`.
pub fn carve(board: MazeBoard, seed: u64) -> CarvedMaze {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = board.start;
    let end = match board.end {
        Some(e) => e,
        None => {
            // Circle: any outermost-ring sector, chosen by seed.
            let outer = *board.rings.last().unwrap();
            board.centers.len() - outer + rng.random_range(0..outer)
        }
    };
    let mut carved = vec![false; board.walls.len()];
    let mut visited = vec![false; board.centers.len()];
    let mut stack = vec![start];
    visited[start] = true;
    while let Some(&cur) = stack.last() {
        let open: Vec<(usize, usize)> = board.adj[cur]
            .iter()
            .copied()
            .filter(|&(nb, _)| !visited[nb])
            .collect();
        if open.is_empty() {
            stack.pop();
            continue;
        }
        let (nb, wall) = open[rng.random_range(0..open.len())];
        carved[wall] = true;
        visited[nb] = true;
        stack.push(nb);
    }
    CarvedMaze { board, carved, start, end, seed }
}

/// Unique start-to-end cell path through the carved tree (BFS).
pub fn solve(cm: &CarvedMaze) -> Vec<usize> {
    let n = cm.board.centers.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut q = VecDeque::from([cm.start]);
    seen[cm.start] = true;
    while let Some(cur) = q.pop_front() {
        if cur == cm.end {
            break;
        }
        for &(nb, wall) in &cm.board.adj[cur] {
            if cm.carved[wall] && !seen[nb] {
                seen[nb] = true;
                prev[nb] = cur;
                q.push_back(nb);
            }
        }
    }
    let mut path = vec![cm.end];
    while *path.last().unwrap() != cm.start {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Turns a cell path into a drawable polyline. Square and hexagon paths walk
/// cell centers; circle paths move along constant-radius arcs within a ring
/// and radially at the destination cell's angle between rings, so they pass
/// through carved gaps only.
pub fn path_waypoints(cm: &CarvedMaze, path: &[usize]) -> Vec<Point2> {
    use std::f64::consts::PI;
    let b = &cm.board;
    if b.topology != Topology::Circle {
        return path.iter().map(|&c| b.centers[c]).collect();
    }
    let c0 = pt(b.canvas.0 as f64 / 2.0, b.canvas.1 as f64 / 2.0);
    let polar_pt = |r: f64, a: f64| c0 + pt(a.cos(), a.sin()) * r;
    let wrap = |d: f64| (d + PI).rem_euclid(2.0 * PI) - PI;
    let mut wp = vec![b.centers[path[0]]];
    let arc_to = |wp: &mut Vec<Point2>, r: f64, a_from: f64, a_to: f64| {
        let d = wrap(a_to - a_from);
        let steps = ((d.abs() * r) / 6.0).ceil().max(1.0) as usize;
        for s in 1..=steps {
            wp.push(polar_pt(r, a_from + d * s as f64 / steps as f64));
        }
    };
    for pair in path.windows(2) {
        let (a, bb) = (pair[0], pair[1]);
        let (ring_a, r_a, th_a) = b.cell_polar[a];
        let (ring_b, r_b, th_b) = b.cell_polar[bb];
        if ring_a == ring_b {
            arc_to(&mut wp, r_a, th_a, th_b);
        } else if ring_b > ring_a {
            // Outward: rotate to the child's angle first, then go radial.
            if ring_a > 0 {
                arc_to(&mut wp, r_a, th_a, th_b);
            }
            wp.push(polar_pt(r_b, th_b));
        } else {
            // Inward: go radial at our own angle, then rotate to the parent.
            if ring_b > 0 {
                wp.push(polar_pt(r_b, th_a));
                arc_to(&mut wp, r_b, th_a, th_b);
            } else {
                wp.push(c0);
            }
        }
    }
    wp
}

pub fn render_maze(cm: &CarvedMaze) -> RgbImage {
    let (w, h) = cm.board.canvas;
    let mut cv = Canvas::new(w, h, WHITE);
    for (i, wall) in cm.board.walls.iter().enumerate() {
        if cm.carved[i] {
            continue;
        }
        match wall.geom {
            WallGeom::Seg { a, b } => cv.line(a, b, WALL_WIDTH, BLACK),
            WallGeom::Arc { center, r, a0, a1 } => cv.arc(center, r, a0, a1, WALL_WIDTH, BLACK),
        }
    }
    cv.disc(cm.board.centers[cm.start], DOT_RADIUS, RED);
    cv.disc(cm.board.centers[cm.end], DOT_RADIUS, RED);
    cv.into_image()
}

/// The input image with the oracle path painted on it.
pub fn render_solution(cm: &CarvedMaze) -> RgbImage {
    let mut cv = Canvas::from_image(render_maze(cm));
    cv.polyline(&path_waypoints(cm, &solve(cm)), PATH_WIDTH, RED);
    cv.into_image()
}

/// Manifest stored beside `input.png`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MazeInstance {
    pub topology: Topology,
    pub size: u32,
    pub seed: u64,
    pub canvas: (u32, u32),
    pub start: (f64, f64),
    pub end: (f64, f64),
    pub wall_mask_sha256: String,
    pub prompt_video: String,
}

/// 1 where the input pixel is wall-dark, 0 elsewhere, row-major.
pub fn wall_mask(img: &RgbImage) -> Vec<u8> {
    img.pixels().map(|p| u8::from(luma8(*p) <= WALL_LUMA_MAX)).collect()
}

pub fn wall_mask_sha(img: &RgbImage) -> String {
    sha256_hex(&wall_mask(img))
}

pub fn generate_instance(
    topology: Topology,
    size: u32,
    seed: u64,
) -> Result<(CarvedMaze, RgbImage, MazeInstance), MazeError> {
    let cm = carve(build_board(topology, size)?, seed);
    let img = render_maze(&cm);
    let inst = MazeInstance {
        topology,
        size,
        seed,
        canvas: cm.board.canvas,
        start: (cm.board.centers[cm.start].x, cm.board.centers[cm.start].y),
        end: (cm.board.centers[cm.end].x, cm.board.centers[cm.end].y),
        wall_mask_sha256: wall_mask_sha(&img),
        prompt_video: MAZE_PROMPT.to_string(),
    };
    Ok((cm, img, inst))
}

/// Rebuilds the carved maze this manifest was generated from.
pub fn regenerate(inst: &MazeInstance) -> Result<CarvedMaze, MazeError> {
    Ok(carve(build_board(inst.topology, inst.size)?, inst.seed))
}

#[derive(Clone, Debug, Serialize)]
pub struct MazeBatchSummary {
    pub instances: usize,
    pub per_topology: BTreeMap<String, usize>,
}

/// Writes `out/<topology>/<index>/{input.png, manifest.json}`.
pub fn generate_batch(
    out: &Path,
    topologies: Option<&[Topology]>,
    n: usize,
    master_seed: u64,
    size_override: Option<u32>,
) -> Result<MazeBatchSummary, MazeError> {
    let list: &[Topology] = topologies.unwrap_or(&Topology::ALL);
    let mut per_topology = BTreeMap::new();
    for &topo in list {
        let size = size_override.unwrap_or_else(|| topo.default_size());
        for index in 0..n {
            let seed = derive_seed(master_seed, &format!("maze_{}", topo.id()), index as u64);
            let (_, img, inst) = generate_instance(topo, size, seed)?;
            let dir = out.join(topo.id()).join(format!("{index:03}"));
            std::fs::create_dir_all(&dir)?;
            save_png(&img, &dir.join("input.png"))?;
            let mut manifest = serde_json::to_vec_pretty(&inst)?;
            manifest.push(b'\n');
            std::fs::write(dir.join("manifest.json"), manifest)?;
        }
        per_topology.insert(topo.id().to_string(), n);
    }
    Ok(MazeBatchSummary { instances: list.len() * n, per_topology })
}

pub fn load_instance(dir: &Path) -> Result<MazeInstance, MazeError> {
    let bytes = std::fs::read(dir.join("manifest.json"))?;
    Ok(serde_json::from_slice(&bytes)?)
}

/// Outcome of checking one solver frame against the maze input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MazeVerdict {
    pub dims_ok: bool,
    /// Red pixels form one 8-connected component touching both dots.
    pub connected: bool,
    /// Some red pixel lies on an input wall pixel.
    pub wall_contact: bool,
}

impl MazeVerdict {
    pub fn pass(&self) -> bool {
        self.dims_ok && self.connected && !self.wall_contact
    }
}

/// Verifies a candidate solution frame. The path must be red, 8-connected
/// from the start dot to the end dot, and may not overlap any wall pixel of
/// the input image.
pub fn verify_path_frame(
    input: &RgbImage,
    frame: &RgbImage,
    start: (f64, f64),
    end: (f64, f64),
) -> MazeVerdict {
    if input.dimensions() != frame.dimensions() {
        return MazeVerdict { dims_ok: false, connected: false, wall_contact: false };
    }
    let (w, h) = frame.dimensions();
    let (w, h) = (w as i64, h as i64);
    let red: Vec<bool> = frame.pixels().map(|p| crate::judge::is_red(*p)).collect();
    let idx = |x: i64, y: i64| (y * w + x) as usize;

    let mut wall_contact = false;
    for (i, p) in input.pixels().enumerate() {
        if red[i] && luma8(*p) <= WALL_LUMA_MAX {
            wall_contact = true;
            break;
        }
    }

    let near = |cx: f64, cy: f64, x: i64, y: i64| {
        let dx = x as f64 + 0.5 - cx;
        let dy = y as f64 + 0.5 - cy;
        dx * dx + dy * dy <= DOT_RADIUS * DOT_RADIUS
    };
    let mut seen = vec![false; red.len()];
    let mut q = VecDeque::new();
    for y in 0..h {
        for x in 0..w {
            if red[idx(x, y)] && near(start.0, start.1, x, y) {
                seen[idx(x, y)] = true;
                q.push_back((x, y));
            }
        }
    }
    let mut connected = false;
    'bfs: while let Some((x, y)) = q.pop_front() {
        if near(end.0, end.1, x, y) {
            connected = true;
            break 'bfs;
        }
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    continue;
                }
                let i = idx(nx, ny);
                if red[i] && !seen[i] {
                    seen[i] = true;
                    q.push_back((nx, ny));
                }
            }
        }
    }
    MazeVerdict { dims_ok: true, connected, wall_contact }
}

/// A deliberately failing answer: the straight chord between the dots plus a
/// red stamp on the first wall pixel, guaranteeing wall contact.
pub fn distractor_frame(cm: &CarvedMaze) -> RgbImage {
    let input = render_maze(cm);
    let mut cv = Canvas::from_image(input.clone());
    cv.line(
        cm.board.centers[cm.start],
        cm.board.centers[cm.end],
        PATH_WIDTH,
        RED,
    );
    if let Some(i) = wall_mask(&input).iter().position(|&m| m == 1) {
        let (w, _) = input.dimensions();
        let x = (i as u32 % w) as f64 + 0.5;
        let y = (i as u32 / w) as f64 + 0.5;
        cv.disc(pt(x, y), 3.0, RED);
    }
    cv.into_image()
}

/// Number of red 8-connected components in an image.
pub fn red_component_count(img: &RgbImage) -> usize {
    let (w, h) = img.dimensions();
    let (w, h) = (w as i64, h as i64);
    let red: Vec<bool> = img.pixels().map(|p| crate::judge::is_red(*p)).collect();
    let idx = |x: i64, y: i64| (y * w + x) as usize;
    let mut seen = vec![false; red.len()];
    let mut components = 0;
    for sy in 0..h {
        for sx in 0..w {
            if !red[idx(sx, sy)] || seen[idx(sx, sy)] {
                continue;
            }
            components += 1;
            let mut q = VecDeque::from([(sx, sy)]);
            seen[idx(sx, sy)] = true;
            while let Some((x, y)) = q.pop_front() {
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let (nx, ny) = (x + dx, y + dy);
                        if nx < 0 || ny < 0 || nx >= w || ny >= h {
                            continue;
                        }
                        let i = idx(nx, ny);
                        if red[i] && !seen[i] {
                            seen[i] = true;
                            q.push_back((nx, ny));
                        }
                    }
                }
            }
        }
    }
    components
}
