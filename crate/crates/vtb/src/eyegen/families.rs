//! Per-family scene constructions and the shared answer models.
//!
//! `construct` builds the given elements plus the exact truth for one family;
//! `error_model` re-derives the answer model from the given elements alone, so
//! the oracle exercises the same derivation path that placement used.

use super::{CanvasConfig, ErrModel, GivenElement, Label, OptionSet, RectRegion};
use crate::geom::{
    self, midpoint, pt, tangent_points, CenterKind, Circle2, Line2, Point2,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub(super) struct Construction {
    pub given: Vec<GivenElement>,
    pub mask_region: Option<RectRegion>,
    /// Exact answer position (unused for preset families).
    pub truth_point: Point2,
    /// For families whose five markers are part of the construction itself:
    /// the marker positions and which index is the answer.
    pub preset: Option<([Point2; 5], usize)>,
}

/// Where correct answers live.
pub(crate) enum Valid {
    /// A finite set of acceptable points.
    Points(Vec<Point2>),
    Locus(Locus),
}

impl Valid {
    pub(crate) fn distance(&self, p: Point2) -> f64 {
        match self {
            Valid::Points(v) => v.iter().map(|q| q.dist(p)).fold(f64::INFINITY, f64::min),
            Valid::Locus(l) => l.distance(p),
        }
    }
}

pub(crate) enum Locus {
    Line(Line2),
    Ray { origin: Point2, dir: Point2 },
    Circle(Circle2),
}

impl Locus {
    pub(crate) fn distance(&self, p: Point2) -> f64 {
        match self {
            Locus::Line(l) => geom::point_line_distance(p, *l),
            Locus::Ray { origin, dir } => geom::point_ray_distance(p, *origin, *dir),
            Locus::Circle(c) => ((p - c.center).norm() - c.r).abs(),
        }
    }
}

const STROKE: f64 = 3.0;
const POINT_MARK_R: f64 = 6.0;
const ANCHOR_CIRCLE_R: f64 = 16.0;

fn unit(angle: f64) -> Point2 {
    pt(angle.cos(), angle.sin())
}

fn seg(a: Point2, b: Point2) -> GivenElement {
    GivenElement::Segment { a, b, width: STROKE }
}

fn disc(center: Point2) -> GivenElement {
    GivenElement::Disc { center, r: POINT_MARK_R }
}

fn lerp(a: Point2, b: Point2, t: f64) -> Point2 {
    a + (b - a) * t
}

fn sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Uniform point in the canvas inset by `inset` on every side.
fn box_pt(rng: &mut ChaCha8Rng, cfg: &CanvasConfig, inset: f64) -> Option<Point2> {
    let (w, h) = (cfg.width as f64, cfg.height as f64);
    if w - 2.0 * inset < 1.0 || h - 2.0 * inset < 1.0 {
        return None;
    }
    Some(pt(
        rng.random_range(inset..w - inset),
        rng.random_range(inset..h - inset),
    ))
}

fn in_canvas(cfg: &CanvasConfig, p: Point2, inset: f64) -> bool {
    p.x >= inset
        && p.y >= inset
        && p.x <= cfg.width as f64 - inset
        && p.y <= cfg.height as f64 - inset
}

/// Clips the infinite line `o + t*d` to a rectangle (Liang-Barsky).
fn clip_line(
    o: Point2,
    d: Point2,
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
) -> Option<(Point2, Point2)> {
    let mut tmin = f64::NEG_INFINITY;
    let mut tmax = f64::INFINITY;
    for (p, q) in [
        (-d.x, o.x - x0),
        (d.x, x1 - o.x),
        (-d.y, o.y - y0),
        (d.y, y1 - o.y),
    ] {
        if p.abs() < 1e-12 {
            if q < 0.0 {
                return None;
            }
            continue;
        }
        let t = q / p;
        if p < 0.0 {
            tmin = tmin.max(t);
        } else {
            tmax = tmax.min(t);
        }
    }
    if tmin >= tmax {
        return None;
    }
    Some((o + d * tmin, o + d * tmax))
}

/// A line through the interior, clipped to the drawable area.
/// Returns (anchor on the line, unit direction, drawn segment).
fn random_long_line(
    rng: &mut ChaCha8Rng,
    cfg: &CanvasConfig,
) -> Option<(Point2, Point2, (Point2, Point2))> {
    let anchor = box_pt(rng, cfg, cfg.margin + 20.0)?;
    let dir = unit(rng.random_range(0.0..PI));
    let (w, h) = (cfg.width as f64, cfg.height as f64);
    let (a, b) = clip_line(anchor, dir, 16.0, 16.0, w - 16.0, h - 16.0)?;
    if a.dist(b) < 0.55 * cfg.min_dim() {
        return None;
    }
    Some((anchor, dir, (a, b)))
}

fn vertex_angle_deg(v: Point2, p: Point2, q: Point2) -> f64 {
    let u1 = p - v;
    let u2 = q - v;
    let n1 = u1.norm();
    let n2 = u2.norm();
    if n1 < 1e-9 || n2 < 1e-9 {
        return f64::NAN;
    }
    let c = (u1.dot(u2) / (n1 * n2)).clamp(-1.0, 1.0);
    c.acos().to_degrees()
}

/// Triangle sampled uniformly in the interior box, with minimum side and
/// area and an optional cap on the largest interior angle (degrees).
fn sample_triangle(
    rng: &mut ChaCha8Rng,
    cfg: &CanvasConfig,
    max_angle_deg: f64,
) -> Option<[Point2; 3]> {
    let md = cfg.min_dim();
    for _ in 0..60 {
        let a = box_pt(rng, cfg, 14.0)?;
        let b = box_pt(rng, cfg, 14.0)?;
        let c = box_pt(rng, cfg, 14.0)?;
        let min_side = 0.22 * md;
        if a.dist(b) < min_side || b.dist(c) < min_side || a.dist(c) < min_side {
            continue;
        }
        if geom::triangle_area(a, b, c) < 0.035 * md * md {
            continue;
        }
        let angles = [
            vertex_angle_deg(a, b, c),
            vertex_angle_deg(b, a, c),
            vertex_angle_deg(c, a, b),
        ];
        if angles.iter().any(|x| !x.is_finite() || *x > max_angle_deg) {
            continue;
        }
        return Some([a, b, c]);
    }
    None
}

/// Acute triangle inscribed in a circle around `center`: arc gaps in
/// [75, 150] degrees keep every inscribed angle well inside (37.5, 75).
fn acute_triangle(rng: &mut ChaCha8Rng, cfg: &CanvasConfig) -> Option<[Point2; 3]> {
    let md = cfg.min_dim();
    let r = rng.random_range(0.24..0.38) * md;
    let center = box_pt(rng, cfg, cfg.margin + r * 0.2)?;
    for _ in 0..30 {
        let g1 = rng.random_range(75.0f64..150.0);
        let g2 = rng.random_range(75.0f64..150.0);
        let g3 = 360.0 - g1 - g2;
        if !(75.0..=150.0).contains(&g3) {
            continue;
        }
        let t0 = rng.random_range(0.0..TAU);
        let a = center + unit(t0) * r;
        let b = center + unit(t0 + g1.to_radians()) * r;
        let c = center + unit(t0 + (g1 + g2).to_radians()) * r;
        if [a, b, c].iter().all(|p| in_canvas(cfg, *p, 14.0)) {
            return Some([a, b, c]);
        }
    }
    None
}

fn triangle_construction(tri: [Point2; 3], truth: Point2) -> Construction {
    Construction {
        given: vec![GivenElement::Polygon { points: tri.to_vec(), width: STROKE }],
        mask_region: None,
        truth_point: truth,
        preset: None,
    }
}

/// Mean relative deviation of four points from a perfect square (0 for an
/// exact square, large otherwise). Order-free.
pub(super) fn square_error(pts: [Point2; 4]) -> f64 {
    let mut d = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            d.push(pts[i].dist(pts[j]));
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let side = (d[0] + d[1] + d[2] + d[3]) / 4.0;
    let diag = (d[4] + d[5]) / 2.0;
    if side < 1e-9 {
        return f64::INFINITY;
    }
    let mut err: f64 = 0.0;
    for s in &d[..4] {
        err = err.max((s - side).abs() / side);
    }
    for g in &d[4..] {
        err = err.max((g - diag).abs() / diag);
    }
    err.max((diag - side * std::f64::consts::SQRT_2).abs() / (side * std::f64::consts::SQRT_2))
}

pub(super) fn construct(
    family: super::TaskFamily,
    rng: &mut ChaCha8Rng,
    cfg: &CanvasConfig,
) -> Option<Construction> {
    use super::TaskFamily::*;
    let md = cfg.min_dim();
    match family {
        CircleCenter => {
            let r = rng.random_range(0.16..0.3) * md;
            let c = box_pt(rng, cfg, r + 14.0)?;
            Some(Construction {
                given: vec![GivenElement::Circle { center: c, r, width: STROKE }],
                mask_region: None,
                truth_point: c,
                preset: None,
            })
        }
        Circumcenter => {
            let tri = acute_triangle(rng, cfg)?;
            let truth = geom::classic_center(CenterKind::Circumcenter, tri[0], tri[1], tri[2]).ok()?;
            Some(triangle_construction(tri, truth))
        }
        Orthocenter => {
            let tri = acute_triangle(rng, cfg)?;
            let truth = geom::classic_center(CenterKind::Orthocenter, tri[0], tri[1], tri[2]).ok()?;
            Some(triangle_construction(tri, truth))
        }
        Incenter => {
            let tri = sample_triangle(rng, cfg, 180.0)?;
            let truth = geom::classic_center(CenterKind::Incenter, tri[0], tri[1], tri[2]).ok()?;
            Some(triangle_construction(tri, truth))
        }
        TriangleCenter => {
            let tri = sample_triangle(rng, cfg, 180.0)?;
            let truth = geom::classic_center(CenterKind::Centroid, tri[0], tri[1], tri[2]).ok()?;
            Some(triangle_construction(tri, truth))
        }
        FermatPoint => {
            // Keep every angle under 115 degrees so the point is interior
            // and clearly distinct from a vertex.
            let tri = sample_triangle(rng, cfg, 115.0)?;
            let truth = geom::fermat_point(tri[0], tri[1], tri[2]).ok()?;
            Some(triangle_construction(tri, truth))
        }
        Midpoint => {
            for _ in 0..40 {
                let p1 = box_pt(rng, cfg, ANCHOR_CIRCLE_R + 4.0)?;
                let p2 = box_pt(rng, cfg, ANCHOR_CIRCLE_R + 4.0)?;
                let d = p1.dist(p2);
                if !(0.35 * md..0.62 * md).contains(&d) {
                    continue;
                }
                return Some(Construction {
                    given: vec![
                        GivenElement::Circle { center: p1, r: ANCHOR_CIRCLE_R, width: STROKE },
                        GivenElement::Circle { center: p2, r: ANCHOR_CIRCLE_R, width: STROKE },
                    ],
                    mask_region: None,
                    truth_point: midpoint(p1, p2),
                    preset: None,
                });
            }
            None
        }
        PointReflection => {
            let (_, dir, (a, b)) = random_long_line(rng, cfg)?;
            let slide = lerp(a, b, rng.random_range(0.25..0.75));
            let off = sign(rng) * rng.random_range(0.1..0.28) * md;
            let p = slide + dir.perp() * off;
            if !in_canvas(cfg, p, 14.0) {
                return None;
            }
            let truth = geom::reflect_point(p, Line2::through(a, b));
            Some(Construction {
                given: vec![seg(a, b), disc(p)],
                mask_region: None,
                truth_point: truth,
                preset: None,
            })
        }
        RayIntersection => {
            let t = box_pt(rng, cfg, cfg.margin + 0.12 * md)?;
            let base = rng.random_range(0.0..TAU);
            let mut given = Vec::new();
            for i in 0..3 {
                let ang = base + i as f64 * TAU / 3.0 + rng.random_range(-0.3..0.3);
                let u = unit(ang);
                let near = rng.random_range(0.09..0.16) * md;
                let far = rng.random_range(0.26..0.42) * md;
                let a = t + u * far;
                let b = t + u * near;
                if !in_canvas(cfg, a, 12.0) || !in_canvas(cfg, b, 12.0) {
                    return None;
                }
                given.push(seg(a, b));
            }
            Some(Construction { given, mask_region: None, truth_point: t, preset: None })
        }
        AngleBisector => {
            let v = box_pt(rng, cfg, cfg.margin + 20.0)?;
            let a0 = rng.random_range(0.0..TAU);
            let open = rng.random_range(0.9..2.3);
            let e1 = v + unit(a0) * (rng.random_range(0.2..0.4) * md);
            let e2 = v + unit(a0 + open) * (rng.random_range(0.2..0.4) * md);
            if !in_canvas(cfg, e1, 12.0) || !in_canvas(cfg, e2, 12.0) {
                return None;
            }
            let truth = v + unit(a0 + open / 2.0) * (rng.random_range(0.15..0.4) * md);
            Some(Construction {
                given: vec![seg(v, e1), seg(v, e2)],
                mask_region: None,
                truth_point: truth,
                preset: None,
            })
        }
        ArcConnect => arc_connect(rng, cfg),
        CircleTangentLine => {
            let r = rng.random_range(0.17..0.28) * md;
            let c = box_pt(rng, cfg, r + 16.0)?;
            let psi = rng.random_range(0.0..TAU);
            let tp = c + unit(psi) * r;
            let truth = tp + unit(psi).perp() * (sign(rng) * rng.random_range(0.14..0.36) * md);
            Some(Construction {
                given: vec![
                    GivenElement::Circle { center: c, r, width: STROKE },
                    disc(tp),
                ],
                mask_region: None,
                truth_point: truth,
                preset: None,
            })
        }
        CircleTangentPoint => {
            let r = rng.random_range(0.16..0.26) * md;
            let c = box_pt(rng, cfg, r + 14.0)?;
            let e = c + unit(rng.random_range(0.0..TAU)) * (rng.random_range(1.7..2.7) * r);
            if !in_canvas(cfg, e, 14.0) {
                return None;
            }
            let (t1, t2) = tangent_points(Circle2 { center: c, r }, e).ok()?;
            let truth = if rng.random_bool(0.5) { t1 } else { t2 };
            Some(Construction {
                given: vec![GivenElement::Circle { center: c, r, width: STROKE }, disc(e)],
                mask_region: None,
                truth_point: truth,
                preset: None,
            })
        }
        Parallel | Perpendicular => {
            let (_, dir, (a, b)) = random_long_line(rng, cfg)?;
            let slide = lerp(a, b, rng.random_range(0.25..0.75));
            let p = slide + dir.perp() * (sign(rng) * rng.random_range(0.12..0.3) * md);
            if !in_canvas(cfg, p, 14.0) || !cfg.in_margins(p) {
                return None;
            }
            let along = if family == Parallel { dir } else { dir.perp() };
            let truth = p + along * (sign(rng) * rng.random_range(0.15..0.38) * md);
            Some(Construction {
                given: vec![seg(a, b), disc(p)],
                mask_region: None,
                truth_point: truth,
                preset: None,
            })
        }
        PerpendicularBisector => {
            for _ in 0..40 {
                let p1 = box_pt(rng, cfg, cfg.margin + 10.0)?;
                let p2 = box_pt(rng, cfg, cfg.margin + 10.0)?;
                let d = p1.dist(p2);
                if !(0.32 * md..0.58 * md).contains(&d) {
                    continue;
                }
                let mid = midpoint(p1, p2);
                let perp = (p2 - p1).normalized().perp();
                let truth = mid + perp * (sign(rng) * rng.random_range(0.04..0.36) * md);
                return Some(Construction {
                    given: vec![disc(p1), disc(p2)],
                    mask_region: None,
                    truth_point: truth,
                    preset: None,
                });
            }
            None
        }
        RayReflection => {
            let (_, mdir, (a, b)) = random_long_line(rng, cfg)?;
            let foot = lerp(a, b, rng.random_range(0.3..0.7));
            let dist = rng.random_range(0.16..0.4) * md;
            let o = foot + mdir.perp() * (sign(rng) * dist);
            if !in_canvas(cfg, o, 14.0) || !cfg.in_margins(o) {
                return None;
            }
            // Incidence angle measured from the mirror normal.
            let alpha: f64 = rng.random_range(0.35..0.96);
            let hit = foot + mdir * (sign(rng) * dist * alpha.tan());
            if hit.dist(a) < 40.0 || hit.dist(b) < 40.0 {
                return None;
            }
            let (hit2, outdir) = geom::reflect_ray(o, hit - o, Line2::through(a, b)).ok()?;
            let truth = hit2 + outdir * (rng.random_range(0.14..0.38) * md);
            Some(Construction {
                given: vec![seg(a, b), disc(o), seg(o, lerp(o, hit, 0.55))],
                mask_region: None,
                truth_point: truth,
                preset: None,
            })
        }
        IsoscelesTrapezoid => {
            let u = unit(rng.random_range(0.0..TAU));
            let n = u.perp() * sign(rng);
            let la = rng.random_range(0.24..0.4) * md;
            let lc = la * rng.random_range(1.35..1.9);
            let hh = rng.random_range(0.18..0.34) * md;
            let mid_ab = box_pt(rng, cfg, cfg.margin + 10.0)?;
            let a = mid_ab - u * (la / 2.0);
            let b = mid_ab + u * (la / 2.0);
            let mid_dc = mid_ab + n * hh;
            let c = mid_dc + u * (lc / 2.0);
            let d = mid_dc - u * (lc / 2.0);
            if ![a, b, c].iter().all(|p| in_canvas(cfg, *p, 14.0)) {
                return None;
            }
            let d_alt = geom::reflect_point(
                a,
                Line2::new(midpoint(b, c), (c - b).normalized().perp()),
            );
            if d.dist(d_alt) < 25.0 {
                return None;
            }
            Some(Construction {
                given: vec![disc(a), disc(b), disc(c), seg(a, b), seg(b, c)],
                mask_region: None,
                truth_point: d,
                preset: None,
            })
        }
        Parallelogram => {
            let a = box_pt(rng, cfg, cfg.margin + 10.0)?;
            let theta = rng.random_range(0.0..TAU);
            let gamma = sign(rng) * rng.random_range(0.9..2.25);
            let b = a + unit(theta) * (rng.random_range(0.22..0.38) * md);
            let c = b + unit(theta + gamma) * (rng.random_range(0.22..0.38) * md);
            if !in_canvas(cfg, b, 14.0) || !in_canvas(cfg, c, 14.0) {
                return None;
            }
            Some(Construction {
                given: vec![disc(a), disc(b), disc(c), seg(a, b), seg(b, c)],
                mask_region: None,
                truth_point: geom::parallelogram_fourth(a, b, c),
                preset: None,
            })
        }
        RightTriangle => {
            let v = box_pt(rng, cfg, cfg.margin + 6.0)?;
            let phi = rng.random_range(0.0..TAU);
            let p = v + unit(phi) * (rng.random_range(0.22..0.4) * md);
            let q = v + unit(phi + sign(rng) * PI / 2.0) * (rng.random_range(0.22..0.4) * md);
            let d1 = box_pt(rng, cfg, cfg.margin)?;
            let d2 = box_pt(rng, cfg, cfg.margin)?;
            let pts = [v, p, q, d1, d2];
            // No non-designed apex may come close to a right angle.
            for i in 0..5 {
                for j in 0..5 {
                    for k in j + 1..5 {
                        if j == i || k == i {
                            continue;
                        }
                        if i == 0 && j == 1 && k == 2 {
                            continue;
                        }
                        let ang = vertex_angle_deg(pts[i], pts[j], pts[k]);
                        if !ang.is_finite() || (ang - 90.0).abs() < 12.0 {
                            return None;
                        }
                    }
                }
            }
            Some(Construction {
                given: Vec::new(),
                mask_region: None,
                truth_point: v,
                preset: Some((pts, 0)),
            })
        }
        SquareOutlier => {
            let rho = rng.random_range(0.17..0.29) * md;
            if rho * std::f64::consts::SQRT_2 < cfg.min_sep + 6.0 {
                return None;
            }
            let ctr = box_pt(rng, cfg, cfg.margin + rho)?;
            let psi = rng.random_range(0.0..TAU);
            let corners = [
                ctr + unit(psi) * rho,
                ctr + unit(psi + PI / 2.0) * rho,
                ctr + unit(psi + PI) * rho,
                ctr + unit(psi + 1.5 * PI) * rho,
            ];
            let o = box_pt(rng, cfg, cfg.margin)?;
            // Dropping any single corner in favour of the outlier must not
            // leave something square-like.
            for k in 0..4 {
                let mut four = [o; 4];
                let mut idx = 0;
                for (ci, c) in corners.iter().enumerate() {
                    if ci != k {
                        four[idx] = *c;
                        idx += 1;
                    }
                }
                four[3] = o;
                if square_error(four) < 0.04 {
                    return None;
                }
            }
            Some(Construction {
                given: Vec::new(),
                mask_region: None,
                truth_point: o,
                preset: Some(([corners[0], corners[1], corners[2], corners[3], o], 4)),
            })
        }
    }
}

/// Five nearly-concentric arcs approach a grey band from the right; only one
/// continues the arc entering from the left. Needs a portrait canvas.
fn arc_connect(rng: &mut ChaCha8Rng, cfg: &CanvasConfig) -> Option<Construction> {
    let (w, h) = (cfg.width as f64, cfg.height as f64);
    if w < 600.0 || h < 900.0 {
        return None;
    }
    let band_w = rng.random_range(0.12..0.18) * w;
    let band_x = w / 2.0 - band_w / 2.0 + rng.random_range(-0.06..0.06) * w;
    let x_l = 0.07 * w;
    let x_r = 0.93 * w;
    let cx = rng.random_range(0.38..0.62) * w;
    let apex = rng.random_range(0.28..0.42) * h;
    let max_dx = (cx - x_l).max(x_r - cx);
    let r = rng.random_range(1.3..1.9) * max_dx;
    let cc = pt(cx, apex + r);
    let x_opt = band_x + band_w + 34.0;
    if x_opt > x_r - 60.0 {
        return None;
    }
    let y_at = |x: f64| cc.y - (r * r - (x - cx) * (x - cx)).sqrt();

    let mut deltas: [f64; 5] = [-140.0, -70.0, 0.0, 70.0, 140.0];
    for d in deltas.iter_mut() {
        if *d != 0.0 {
            *d += d.signum() * rng.random_range(0.0..8.0);
        }
    }
    let base_y = y_at(x_opt);
    let mut points = [pt(0.0, 0.0); 5];
    for (i, dy) in deltas.iter().enumerate() {
        points[i] = pt(x_opt, base_y + dy);
    }
    // The radial error of every decoy must clear the rejection band.
    let model_circle = Circle2 { center: cc, r };
    for (i, p) in points.iter().enumerate() {
        let err = ((*p - model_circle.center).norm() - r).abs();
        if i == 2 {
            if err > 1e-6 {
                return None;
            }
        } else if err < cfg.decoy_min_err + 2.0 {
            return None;
        }
    }

    let mut given = vec![GivenElement::UpperArc {
        center: cc,
        r,
        x0: x_l,
        x1: band_x,
        width: STROKE,
    }];
    for dy in deltas {
        given.push(GivenElement::UpperArc {
            center: pt(cc.x, cc.y + dy),
            r,
            x0: band_x + band_w,
            x1: x_r,
            width: STROKE,
        });
    }
    given.push(GivenElement::Rect {
        x: band_x,
        y: 0.0,
        w: band_w,
        h,
        fill: [200, 200, 200],
    });
    Some(Construction {
        given,
        mask_region: Some(RectRegion { x: band_x, y: 0.0, w: band_w, h }),
        truth_point: points[2],
        preset: Some((points, 2)),
    })
}

/// Rebuilds the answer model purely from the given elements. Returns `None`
/// when the element list does not match the family's schema.
pub(super) fn error_model(
    family: super::TaskFamily,
    given: &[GivenElement],
) -> Option<ErrModel> {
    use super::TaskFamily::*;
    let model = |valid, exclude| Some(ErrModel { valid, exclude });
    match family {
        CircleCenter => {
            let [GivenElement::Circle { center, .. }] = given else { return None };
            model(Valid::Points(vec![*center]), vec![])
        }
        Circumcenter | Incenter | Orthocenter | TriangleCenter | FermatPoint => {
            let [GivenElement::Polygon { points, .. }] = given else { return None };
            let [a, b, c] = points.as_slice() else { return None };
            let truth = match family {
                Circumcenter => geom::classic_center(CenterKind::Circumcenter, *a, *b, *c).ok()?,
                Incenter => geom::classic_center(CenterKind::Incenter, *a, *b, *c).ok()?,
                Orthocenter => geom::classic_center(CenterKind::Orthocenter, *a, *b, *c).ok()?,
                TriangleCenter => geom::classic_center(CenterKind::Centroid, *a, *b, *c).ok()?,
                _ => geom::fermat_point(*a, *b, *c).ok()?,
            };
            model(Valid::Points(vec![truth]), vec![])
        }
        Midpoint => {
            let [GivenElement::Circle { center: p1, .. }, GivenElement::Circle { center: p2, .. }] =
                given
            else {
                return None;
            };
            model(Valid::Points(vec![midpoint(*p1, *p2)]), vec![*p1, *p2])
        }
        PointReflection => {
            let [GivenElement::Segment { a, b, .. }, GivenElement::Disc { center: p, .. }] = given
            else {
                return None;
            };
            let truth = geom::reflect_point(*p, Line2::through(*a, *b));
            model(Valid::Points(vec![truth]), vec![*p])
        }
        RayIntersection => {
            let segs: Vec<(Point2, Point2)> = given
                .iter()
                .filter_map(|e| match e {
                    GivenElement::Segment { a, b, .. } => Some((*a, *b)),
                    _ => None,
                })
                .collect();
            let [s0, s1, s2] = segs.as_slice() else { return None };
            let l0 = Line2::through(s0.0, s0.1);
            let l1 = Line2::through(s1.0, s1.1);
            let l2 = Line2::through(s2.0, s2.1);
            let t = geom::intersect_lines(l0, l1).ok()?;
            if geom::point_line_distance(t, l2) > 1e-6 {
                return None;
            }
            model(Valid::Points(vec![t]), vec![])
        }
        AngleBisector => {
            let [GivenElement::Segment { a: v1, b: e1, .. }, GivenElement::Segment { a: v2, b: e2, .. }] =
                given
            else {
                return None;
            };
            if v1.dist(*v2) > 1e-9 {
                return None;
            }
            let u1 = (*e1 - *v1).normalized();
            let u2 = (*e2 - *v1).normalized();
            let bis = (u1 + u2).normalized();
            model(Valid::Locus(Locus::Ray { origin: *v1, dir: bis }), vec![])
        }
        ArcConnect => {
            let [GivenElement::UpperArc { center, r, .. }, ..] = given else { return None };
            model(
                Valid::Locus(Locus::Circle(Circle2 { center: *center, r: *r })),
                vec![],
            )
        }
        CircleTangentLine => {
            let [GivenElement::Circle { center, r, .. }, GivenElement::Disc { center: tp, .. }] =
                given
            else {
                return None;
            };
            if ((tp.dist(*center)) - r).abs() > 1.0 {
                return None;
            }
            let dir = (*tp - *center).normalized().perp();
            model(Valid::Locus(Locus::Line(Line2::new(*tp, dir))), vec![])
        }
        CircleTangentPoint => {
            let [GivenElement::Circle { center, r, .. }, GivenElement::Disc { center: e, .. }] =
                given
            else {
                return None;
            };
            let (t1, t2) = tangent_points(Circle2 { center: *center, r: *r }, *e).ok()?;
            model(Valid::Points(vec![t1, t2]), vec![*e])
        }
        Parallel | Perpendicular => {
            let [GivenElement::Segment { a, b, .. }, GivenElement::Disc { center: p, .. }] = given
            else {
                return None;
            };
            let dir = (*b - *a).normalized();
            let along = if family == Parallel { dir } else { dir.perp() };
            model(Valid::Locus(Locus::Line(Line2::new(*p, along))), vec![])
        }
        PerpendicularBisector => {
            let [GivenElement::Disc { center: p1, .. }, GivenElement::Disc { center: p2, .. }] =
                given
            else {
                return None;
            };
            let line = Line2::new(midpoint(*p1, *p2), (*p2 - *p1).normalized().perp());
            model(Valid::Locus(Locus::Line(line)), vec![])
        }
        RayReflection => {
            let [GivenElement::Segment { a, b, .. }, GivenElement::Disc { center: o, .. }, GivenElement::Segment { a: ia, b: ib, .. }] =
                given
            else {
                return None;
            };
            if ia.dist(*o) > 1e-9 {
                return None;
            }
            let (hit, out) = geom::reflect_ray(*o, *ib - *ia, Line2::through(*a, *b)).ok()?;
            model(Valid::Locus(Locus::Ray { origin: hit, dir: out }), vec![*o])
        }
        IsoscelesTrapezoid => {
            let [GivenElement::Disc { center: a, .. }, GivenElement::Disc { center: b, .. }, GivenElement::Disc { center: c, .. }, _, _] =
                given
            else {
                return None;
            };
            let d = geom::reflect_point(
                *c,
                Line2::new(midpoint(*a, *b), (*b - *a).normalized().perp()),
            );
            let d_alt = geom::reflect_point(
                *a,
                Line2::new(midpoint(*b, *c), (*c - *b).normalized().perp()),
            );
            model(Valid::Points(vec![d]), vec![d_alt, *a, *b, *c])
        }
        Parallelogram => {
            let [GivenElement::Disc { center: a, .. }, GivenElement::Disc { center: b, .. }, GivenElement::Disc { center: c, .. }, _, _] =
                given
            else {
                return None;
            };
            let d = geom::parallelogram_fourth(*a, *b, *c);
            let alt1 = *a + *b - *c;
            let alt2 = *b + *c - *a;
            model(Valid::Points(vec![d]), vec![alt1, alt2, *a, *b, *c])
        }
        RightTriangle | SquareOutlier => None,
    }
}

/// Exactly one marker (the truth) closes a right angle with some pair of the
/// other markers; every other apex stays far from 90 degrees.
pub(super) fn check_right_triangle(opts: &OptionSet, truth: Label) -> bool {
    let pts: Vec<Point2> = opts.iter().map(|(_, p)| p).collect();
    for i in 0..5 {
        let mut best = f64::INFINITY;
        for j in 0..5 {
            for k in j + 1..5 {
                if j == i || k == i {
                    continue;
                }
                let ang = vertex_angle_deg(pts[i], pts[j], pts[k]);
                if ang.is_finite() {
                    best = best.min((ang - 90.0).abs());
                }
            }
        }
        if i == truth.index() {
            if best > 0.5 {
                return false;
            }
        } else if best < 8.0 {
            return false;
        }
    }
    true
}

/// Exactly one marker (the truth) can be removed to leave a perfect square.
pub(super) fn check_square_outlier(opts: &OptionSet, truth: Label) -> bool {
    let pts: Vec<Point2> = opts.iter().map(|(_, p)| p).collect();
    for excluded in 0..5 {
        let mut four = [pts[0]; 4];
        let mut idx = 0;
        for (i, p) in pts.iter().enumerate() {
            if i != excluded {
                four[idx] = *p;
                idx += 1;
            }
        }
        let err = square_error(four);
        if excluded == truth.index() {
            if err > 1e-6 {
                return false;
            }
        } else if err < 0.03 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_error_is_zero_for_squares_and_large_for_noise() {
        let sq = [pt(0.0, 0.0), pt(10.0, 0.0), pt(10.0, 10.0), pt(0.0, 10.0)];
        assert!(square_error(sq) < 1e-12);
        let rot = [pt(5.0, 0.0), pt(10.0, 5.0), pt(5.0, 10.0), pt(0.0, 5.0)];
        assert!(square_error(rot) < 1e-12);
        let skew = [pt(0.0, 0.0), pt(10.0, 0.0), pt(11.0, 10.0), pt(0.0, 10.0)];
        assert!(square_error(skew) > 0.04);
    }

    #[test]
    fn clip_line_matches_rect_bounds() {
        let (a, b) = clip_line(pt(5.0, 5.0), pt(1.0, 0.0), 0.0, 0.0, 10.0, 10.0).unwrap();
        assert!((a.x - 0.0).abs() < 1e-9 && (b.x - 10.0).abs() < 1e-9);
        assert!(clip_line(pt(-5.0, -5.0), pt(0.0, 1.0), 0.0, 0.0, 10.0, 10.0).is_none());
    }

    #[test]
    fn vertex_angle_right() {
        let ang = vertex_angle_deg(pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0));
        assert!((ang - 90.0).abs() < 1e-9);
    }
}
