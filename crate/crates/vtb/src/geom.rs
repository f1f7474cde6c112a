//! Exact 2-D constructions used by the puzzle generators.
//!
//! All coordinates are in pixels with the origin at the top-left corner and
//! +y pointing down. Closed-form constructions are good to [`EXACT_TOL`];
//! the one iterative solver (Fermat point) is good to [`ITER_TOL`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for closed-form constructions, in pixels.
pub const EXACT_TOL: f64 = 1e-9;
/// Tolerance for iterative constructions, in pixels.
pub const ITER_TOL: f64 = 1e-4;
/// Triangles with area at or below this (px^2) are treated as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("degenerate (collinear) triangle")]
    DegenerateTriangle,
    #[error("lines are parallel or identical")]
    ParallelLines,
    #[error("ray does not hit the mirror at a forward point")]
    RayMissesMirror,
    #[error("point is not strictly outside the circle")]
    PointNotOutsideCircle,
}

/// A point (or free vector) in pixel space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl From<(f64, f64)> for Point2 {
    fn from(t: (f64, f64)) -> Self {
        Point2 { x: t.0, y: t.1 }
    }
}

impl From<Point2> for (f64, f64) {
    fn from(p: Point2) -> Self {
        (p.x, p.y)
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        pt(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        pt(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        pt(self.x * k, self.y * k)
    }
}

impl Point2 {
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        pt(self.x / n, self.y / n)
    }

    /// Rotates the vector by 90 degrees (counter-clockwise in y-down space).
    pub fn perp(self) -> Point2 {
        pt(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// Shorthand constructor.
pub fn pt(x: f64, y: f64) -> Point2 {
    Point2 { x, y }
}

/// An infinite line through `origin` with direction `dir` (not necessarily unit).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub origin: Point2,
    pub dir: Point2,
}

impl Line2 {
    pub fn new(origin: Point2, dir: Point2) -> Self {
        Line2 { origin, dir }
    }

    pub fn through(a: Point2, b: Point2) -> Self {
        Line2 { origin: a, dir: b - a }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle2 {
    pub center: Point2,
    pub r: f64,
}

/// Named triangle centers computed by [`classic_center`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterKind {
    Circumcenter,
    Incenter,
    Orthocenter,
    Centroid,
}

pub fn midpoint(a: Point2, b: Point2) -> Point2 {
    pt((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
}

/// Unsigned triangle area in px^2.
pub fn triangle_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * (b - a).cross(c - a).abs()
}

fn check_triangle(a: Point2, b: Point2, c: Point2) -> Result<(), GeomError> {
    if triangle_area(a, b, c) <= DEGENERATE_AREA {
        Err(GeomError::DegenerateTriangle)
    } else {
        Ok(())
    }
}

/// Computes one of the four classic triangle centers.
pub fn classic_center(
    kind: CenterKind,
    a: Point2,
    b: Point2,
    c: Point2,
) -> Result<Point2, GeomError> {
    check_triangle(a, b, c)?;
    Ok(match kind {
        CenterKind::Centroid => pt((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0),
        CenterKind::Circumcenter => circumcenter(a, b, c),
        CenterKind::Incenter => {
            let wa = b.dist(c);
            let wb = c.dist(a);
            let wc = a.dist(b);
            let w = wa + wb + wc;
            pt(
                (wa * a.x + wb * b.x + wc * c.x) / w,
                (wa * a.y + wb * b.y + wc * c.y) / w,
            )
        }
        CenterKind::Orthocenter => {
            // Intersection of the altitudes from a and from b.
            let alt_a = Line2::new(a, (c - b).perp());
            let alt_b = Line2::new(b, (c - a).perp());
            intersect_lines(alt_a, alt_b)?
        }
    })
}

fn circumcenter(a: Point2, b: Point2, c: Point2) -> Point2 {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let a2 = a.x * a.x + a.y * a.y;
    let b2 = b.x * b.x + b.y * b.y;
    let c2 = c.x * c.x + c.y * c.y;
    pt(
        (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
        (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d,
    )
}

/// The point minimizing the summed distance to the three vertices.
///
/// If some interior angle is >= 120 degrees that vertex is the minimizer and
/// is returned exactly; otherwise Weiszfeld iteration runs from the centroid
/// until the step is below 1e-10 px (at most 10,000 iterations).
pub fn fermat_point(a: Point2, b: Point2, c: Point2) -> Result<Point2, GeomError> {
    check_triangle(a, b, c)?;
    let vs = [a, b, c];
    for i in 0..3 {
        let (v, p, q) = (vs[i], vs[(i + 1) % 3], vs[(i + 2) % 3]);
        let u = p - v;
        let w = q - v;
        // angle >= 120 degrees <=> cos <= -1/2
        if u.dot(w) <= -0.5 * u.norm() * w.norm() {
            return Ok(v);
        }
    }
    let mut cur = classic_center(CenterKind::Centroid, a, b, c)?;
    for _ in 0..10_000 {
        let mut num = pt(0.0, 0.0);
        let mut den = 0.0;
        let mut at_vertex = None;
        for v in vs {
            let d = cur.dist(v);
            if d < 1e-12 {
                at_vertex = Some(v);
                break;
            }
            num = num + v * (1.0 / d);
            den += 1.0 / d;
        }
        let next = match at_vertex {
            // No vertex has an angle >= 120 degrees, so a vertex cannot be the
            // minimizer; nudge off it toward the centroid and keep going.
            Some(v) => midpoint(v, classic_center(CenterKind::Centroid, a, b, c)?),
            None => num * (1.0 / den),
        };
        let step = cur.dist(next);
        cur = next;
        if step < 1e-10 {
            break;
        }
    }
    Ok(cur)
}

/// Mirrors `p` across `line`.
pub fn reflect_point(p: Point2, line: Line2) -> Point2 {
    let d = line.dir.normalized();
    let foot = line.origin + d * (p - line.origin).dot(d);
    foot + (foot - p)
}

/// Shoots a ray from `origin` along `dir` at `mirror` and reflects it.
///
/// Returns the hit point and the unit outgoing direction. Fails when the ray
/// is parallel to the mirror or points away from it.
pub fn reflect_ray(
    origin: Point2,
    dir: Point2,
    mirror: Line2,
) -> Result<(Point2, Point2), GeomError> {
    let denom = dir.cross(mirror.dir);
    if denom.abs() < 1e-12 {
        return Err(GeomError::RayMissesMirror);
    }
    let t = (mirror.origin - origin).cross(mirror.dir) / denom;
    if t <= 1e-9 {
        return Err(GeomError::RayMissesMirror);
    }
    let hit = origin + dir * t;
    let m = mirror.dir.normalized();
    let d = dir.normalized();
    let out = (m * (2.0 * d.dot(m)) - d).normalized();
    Ok((hit, out))
}

/// Both tangent points on `circle` as seen from the strictly external point `p`.
///
/// The pair is ordered deterministically: first the point on the
/// counter-clockwise side (positive-`perp` side of the center-to-p axis).
pub fn tangent_points(circle: Circle2, p: Point2) -> Result<(Point2, Point2), GeomError> {
    let d = p.dist(circle.center);
    if d <= circle.r + 1e-12 {
        return Err(GeomError::PointNotOutsideCircle);
    }
    let u = (p - circle.center) * (1.0 / d);
    let along = circle.r * circle.r / d;
    let off = circle.r * (d * d - circle.r * circle.r).sqrt() / d;
    let base = circle.center + u * along;
    Ok((base + u.perp() * off, base + u.perp() * (-off)))
}

/// Intersection of two infinite lines.
pub fn intersect_lines(l1: Line2, l2: Line2) -> Result<Point2, GeomError> {
    let denom = l1.dir.cross(l2.dir);
    let scale = l1.dir.norm() * l2.dir.norm();
    if denom.abs() <= 1e-12 * scale.max(1.0) {
        return Err(GeomError::ParallelLines);
    }
    let t = (l2.origin - l1.origin).cross(l2.dir) / denom;
    Ok(l1.origin + l1.dir * t)
}

/// Fourth vertex `d` of parallelogram `abcd` (vertices in order, `b` opposite `d`).
pub fn parallelogram_fourth(a: Point2, b: Point2, c: Point2) -> Point2 {
    a + c - b
}

/// The unique circle through three non-collinear points.
pub fn circle_through(a: Point2, b: Point2, c: Point2) -> Result<Circle2, GeomError> {
    let center = classic_center(CenterKind::Circumcenter, a, b, c)?;
    Ok(Circle2 { center, r: center.dist(a) })
}

/// Distance from `p` to the infinite line.
pub fn point_line_distance(p: Point2, line: Line2) -> f64 {
    let d = line.dir.normalized();
    (p - line.origin).cross(d).abs()
}

/// Distance from `p` to the half-line from `origin` along `dir`.
pub fn point_ray_distance(p: Point2, origin: Point2, dir: Point2) -> f64 {
    let d = dir.normalized();
    let t = (p - origin).dot(d);
    if t <= 0.0 {
        p.dist(origin)
    } else {
        p.dist(origin + d * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn assert_close(p: Point2, q: Point2, tol: f64) {
        assert!(
            p.dist(q) <= tol,
            "expected {:?} ~ {:?} (dist {})",
            p,
            q,
            p.dist(q)
        );
    }

    /// Brute-force minimizer of the summed vertex distance, refined to 1e-4 px.
    /// The objective is convex, so shrinking the search box around the current
    /// argmin cannot lose the optimum.
    fn fermat_grid_oracle(a: Point2, b: Point2, c: Point2) -> Point2 {
        let sum = |p: Point2| p.dist(a) + p.dist(b) + p.dist(c);
        let mut lo = pt(
            a.x.min(b.x).min(c.x),
            a.y.min(b.y).min(c.y),
        );
        let mut hi = pt(
            a.x.max(b.x).max(c.x),
            a.y.max(b.y).max(c.y),
        );
        let mut best = midpoint(lo, hi);
        loop {
            let step = ((hi.x - lo.x) / 100.0).max((hi.y - lo.y) / 100.0);
            let mut best_val = f64::INFINITY;
            for iy in 0..=100 {
                for ix in 0..=100 {
                    let p = pt(
                        lo.x + (hi.x - lo.x) * ix as f64 / 100.0,
                        lo.y + (hi.y - lo.y) * iy as f64 / 100.0,
                    );
                    let v = sum(p);
                    if v < best_val {
                        best_val = v;
                        best = p;
                    }
                }
            }
            if step <= 1e-5 {
                return best;
            }
            let pad = step * 2.0;
            lo = pt(best.x - pad, best.y - pad);
            hi = pt(best.x + pad, best.y + pad);
        }
    }

    /// Independent reflection oracle: mirror a direction by doubling the angle
    /// difference to the mirror direction.
    fn reflect_dir_oracle(dir: Point2, mirror_dir: Point2) -> Point2 {
        let out = 2.0 * mirror_dir.angle() - dir.angle();
        pt(out.cos(), out.sin())
    }

    fn rand_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Point2 {
        pt(rng.random_range(lo..hi), rng.random_range(lo..hi))
    }

    #[test]
    fn circumcenter_of_right_triangle() {
        let o = classic_center(
            CenterKind::Circumcenter,
            pt(0.0, 0.0),
            pt(4.0, 0.0),
            pt(0.0, 4.0),
        )
        .unwrap();
        assert_close(o, pt(2.0, 2.0), EXACT_TOL);
    }

    #[test]
    fn circumcenter_is_equidistant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (a, b, c) = (
                rand_point(&mut rng, 0.0, 1000.0),
                rand_point(&mut rng, 0.0, 1000.0),
                rand_point(&mut rng, 0.0, 1000.0),
            );
            if triangle_area(a, b, c) < 1.0 {
                continue;
            }
            let o = classic_center(CenterKind::Circumcenter, a, b, c).unwrap();
            let (ra, rb, rc) = (o.dist(a), o.dist(b), o.dist(c));
            let scale = ra.max(1.0);
            assert!((ra - rb).abs() <= 1e-6 * scale && (ra - rc).abs() <= 1e-6 * scale);
        }
    }

    #[test]
    fn incenter_of_3_4_5_triangle() {
        let i = classic_center(
            CenterKind::Incenter,
            pt(0.0, 0.0),
            pt(4.0, 0.0),
            pt(0.0, 3.0),
        )
        .unwrap();
        assert_close(i, pt(1.0, 1.0), EXACT_TOL);
    }

    #[test]
    fn incenter_is_equidistant_from_sides() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let (a, b, c) = (
                rand_point(&mut rng, 0.0, 1000.0),
                rand_point(&mut rng, 0.0, 1000.0),
                rand_point(&mut rng, 0.0, 1000.0),
            );
            if triangle_area(a, b, c) < 1.0 {
                continue;
            }
            let i = classic_center(CenterKind::Incenter, a, b, c).unwrap();
            let d0 = point_line_distance(i, Line2::through(a, b));
            let d1 = point_line_distance(i, Line2::through(b, c));
            let d2 = point_line_distance(i, Line2::through(c, a));
            assert!((d0 - d1).abs() <= 1e-6 && (d0 - d2).abs() <= 1e-6);
        }
    }

    #[test]
    fn orthocenter_of_right_triangle_is_the_right_vertex() {
        let h = classic_center(
            CenterKind::Orthocenter,
            pt(0.0, 0.0),
            pt(4.0, 0.0),
            pt(0.0, 4.0),
        )
        .unwrap();
        assert_close(h, pt(0.0, 0.0), EXACT_TOL);
    }

    #[test]
    fn orthocenter_lies_on_all_three_altitudes() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let (a, b, c) = (
                rand_point(&mut rng, 0.0, 1000.0),
                rand_point(&mut rng, 0.0, 1000.0),
                rand_point(&mut rng, 0.0, 1000.0),
            );
            if triangle_area(a, b, c) < 10.0 {
                continue;
            }
            let h = classic_center(CenterKind::Orthocenter, a, b, c).unwrap();
            // (h - v) must be perpendicular to the opposite side for each vertex.
            for (v, p, q) in [(a, b, c), (b, c, a), (c, a, b)] {
                let cosang = (h - v).dot(q - p) / ((h - v).norm().max(1e-12) * (q - p).norm());
                assert!(cosang.abs() <= 1e-6, "altitude violated: {cosang}");
            }
        }
    }

    #[test]
    fn centroid_is_vertex_mean() {
        let g = classic_center(
            CenterKind::Centroid,
            pt(0.0, 0.0),
            pt(6.0, 0.0),
            pt(0.0, 3.0),
        )
        .unwrap();
        assert_close(g, pt(2.0, 1.0), EXACT_TOL);
    }

    #[test]
    fn degenerate_triangle_is_rejected() {
        for kind in [
            CenterKind::Circumcenter,
            CenterKind::Incenter,
            CenterKind::Orthocenter,
            CenterKind::Centroid,
        ] {
            let r = classic_center(kind, pt(0.0, 0.0), pt(1.0, 1.0), pt(2.0, 2.0));
            assert_eq!(r, Err(GeomError::DegenerateTriangle));
        }
        assert_eq!(
            fermat_point(pt(0.0, 0.0), pt(1.0, 1.0), pt(3.0, 3.0)),
            Err(GeomError::DegenerateTriangle)
        );
    }

    #[test]
    fn fermat_point_of_equilateral_triangle_is_its_center() {
        let f = fermat_point(pt(0.0, 0.0), pt(2.0, 0.0), pt(1.0, 3f64.sqrt())).unwrap();
        assert_close(f, pt(1.0, 1.0 / 3f64.sqrt()), 1e-6);
    }

    #[test]
    fn fermat_point_snaps_to_wide_angle_vertex() {
        // The angle at the origin is about 169 degrees.
        let f = fermat_point(pt(0.0, 0.0), pt(10.0, 0.0), pt(-5.0, 1.0)).unwrap();
        assert_close(f, pt(0.0, 0.0), 0.0);
    }

    #[test]
    fn fermat_point_matches_grid_oracle() {
        // Right isosceles triangle; the closed form of the minimizer is
        // ((3 - sqrt(3)) / 6, (3 - sqrt(3)) / 6).
        let (a, b, c) = (pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0));
        let expected = (3.0 - 3f64.sqrt()) / 6.0;
        let f = fermat_point(a, b, c).unwrap();
        assert_close(f, pt(expected, expected), 1e-6);
        let oracle = fermat_grid_oracle(a, b, c);
        assert_close(f, oracle, ITER_TOL);

        // A few scaled/translated scalene triangles against the oracle.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..5 {
            let (a, b, c) = (
                rand_point(&mut rng, 100.0, 900.0),
                rand_point(&mut rng, 100.0, 900.0),
                rand_point(&mut rng, 100.0, 900.0),
            );
            if triangle_area(a, b, c) < 5000.0 {
                continue;
            }
            let f = fermat_point(a, b, c).unwrap();
            assert_close(f, fermat_grid_oracle(a, b, c), ITER_TOL * 2.0);
        }
    }

    #[test]
    fn fermat_point_beats_nearby_perturbations() {
        let (a, b, c) = (pt(120.0, 80.0), pt(600.0, 140.0), pt(300.0, 700.0));
        let f = fermat_point(a, b, c).unwrap();
        let base = f.dist(a) + f.dist(b) + f.dist(c);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10_000 {
            let ang = rng.random_range(0.0..std::f64::consts::TAU);
            let rad = rng.random_range(0.0..1.0f64);
            let p = f + pt(ang.cos(), ang.sin()) * rad;
            let v = p.dist(a) + p.dist(b) + p.dist(c);
            assert!(v + 1e-9 >= base, "perturbation beat the solver: {v} < {base}");
        }
    }

    #[test]
    fn reflect_point_examples() {
        let x_axis = Line2::through(pt(0.0, 0.0), pt(1.0, 0.0));
        assert_close(reflect_point(pt(3.0, 5.0), x_axis), pt(3.0, -5.0), EXACT_TOL);
        // Points on the line are fixed.
        assert_close(reflect_point(pt(2.0, 0.0), x_axis), pt(2.0, 0.0), EXACT_TOL);
        let diag = Line2::through(pt(0.0, 0.0), pt(1.0, 1.0));
        assert_close(reflect_point(pt(1.0, 2.0), diag), pt(2.0, 1.0), EXACT_TOL);
    }

    proptest! {
        #[test]
        fn reflect_point_is_an_involution(
            px in -500.0..500.0f64, py in -500.0..500.0f64,
            ox in -500.0..500.0f64, oy in -500.0..500.0f64,
            ang in 0.0..std::f64::consts::PI,
        ) {
            let line = Line2::new(pt(ox, oy), pt(ang.cos(), ang.sin()));
            let p = pt(px, py);
            let back = reflect_point(reflect_point(p, line), line);
            prop_assert!(back.dist(p) <= 1e-7);
        }

        #[test]
        fn parallelogram_diagonals_bisect(
            ax in -500.0..500.0f64, ay in -500.0..500.0f64,
            bx in -500.0..500.0f64, by in -500.0..500.0f64,
            cx in -500.0..500.0f64, cy in -500.0..500.0f64,
        ) {
            let (a, b, c) = (pt(ax, ay), pt(bx, by), pt(cx, cy));
            let d = parallelogram_fourth(a, b, c);
            prop_assert!(midpoint(a, c).dist(midpoint(b, d)) <= 1e-9);
        }

        #[test]
        fn reflected_ray_preserves_incidence_angle(
            ox in -300.0..300.0f64, oy in 10.0..300.0f64,
            tx in -300.0..300.0f64,
            mang in 0.0..std::f64::consts::PI,
        ) {
            // Mirror through the origin at angle mang; ray aims at a mirror point.
            let mirror = Line2::new(pt(0.0, 0.0), pt(mang.cos(), mang.sin()));
            let target = mirror.origin + mirror.dir * (tx / 300.0);
            let origin = pt(ox, oy);
            prop_assume!(point_line_distance(origin, mirror) > 1.0);
            prop_assume!(origin.dist(target) > 1.0);
            let dir = target - origin;
            if let Ok((hit, out)) = reflect_ray(origin, dir, mirror) {
                let m = mirror.dir.normalized();
                let cos_in = dir.normalized().dot(m).abs();
                let cos_out = out.dot(m).abs();
                prop_assert!((cos_in - cos_out).abs() <= 1e-7);
                prop_assert!(point_line_distance(hit, mirror) <= 1e-6);
            }
        }
    }

    #[test]
    fn reflect_ray_basic_45_degrees() {
        let mirror = Line2::through(pt(0.0, 0.0), pt(1.0, 0.0));
        let (hit, out) = reflect_ray(pt(0.0, 2.0), pt(1.0, -1.0), mirror).unwrap();
        assert_close(hit, pt(2.0, 0.0), EXACT_TOL);
        let s = 0.5f64.sqrt();
        assert_close(out, pt(s, s), EXACT_TOL);
    }

    #[test]
    fn reflect_ray_perpendicular_retroreflects() {
        let mirror = Line2::through(pt(0.0, 0.0), pt(1.0, 0.0));
        let (hit, out) = reflect_ray(pt(3.0, 5.0), pt(0.0, -1.0), mirror).unwrap();
        assert_close(hit, pt(3.0, 0.0), EXACT_TOL);
        assert_close(out, pt(0.0, 1.0), EXACT_TOL);
    }

    #[test]
    fn reflect_ray_oblique_matches_rotation_oracle() {
        let mirror = Line2::through(pt(0.0, 0.0), pt(1.0, 1.0));
        let origin = pt(4.0, 0.0);
        // Aim at a point on y = x from below-right: incidence is oblique.
        let dir = pt(3.0, 3.0) - origin;
        let (hit, out) = reflect_ray(origin, dir, mirror).unwrap();
        assert_close(hit, pt(3.0, 3.0), 1e-9);
        let oracle = reflect_dir_oracle(dir, mirror.dir);
        assert_close(out, oracle, 1e-9);
    }

    #[test]
    fn reflect_ray_rejects_parallel_and_backward() {
        let mirror = Line2::through(pt(0.0, 0.0), pt(1.0, 0.0));
        assert_eq!(
            reflect_ray(pt(0.0, 2.0), pt(1.0, 0.0), mirror),
            Err(GeomError::RayMissesMirror)
        );
        assert_eq!(
            reflect_ray(pt(0.0, 2.0), pt(0.0, 1.0), mirror),
            Err(GeomError::RayMissesMirror)
        );
    }

    #[test]
    fn tangent_points_from_external_point() {
        let c = Circle2 { center: pt(0.0, 0.0), r: 1.0 };
        let (t1, t2) = tangent_points(c, pt(2.0, 0.0)).unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        assert_close(t1, pt(0.5, s3), EXACT_TOL);
        assert_close(t2, pt(0.5, -s3), EXACT_TOL);
    }

    #[test]
    fn tangent_points_are_perpendicular_to_radii() {
        let c = Circle2 { center: pt(3.0, 4.0), r: 2.0 };
        let p = pt(3.0, 10.0);
        let (t1, t2) = tangent_points(c, p).unwrap();
        for t in [t1, t2] {
            assert!((t.dist(c.center) - c.r).abs() <= 1e-9);
            let radial = t - c.center;
            let to_p = p - t;
            assert!(radial.dot(to_p).abs() <= 1e-9 * radial.norm() * to_p.norm().max(1.0));
        }
        // The pair is symmetric about the vertical axis through x = 3.
        assert!((t1.x + t2.x - 6.0).abs() <= 1e-9 && (t1.y - t2.y).abs() <= 1e-9);
    }

    #[test]
    fn tangent_rejects_points_on_or_inside_the_circle() {
        let c = Circle2 { center: pt(0.0, 0.0), r: 1.0 };
        assert_eq!(tangent_points(c, pt(1.0, 0.0)), Err(GeomError::PointNotOutsideCircle));
        assert_eq!(tangent_points(c, pt(0.3, 0.0)), Err(GeomError::PointNotOutsideCircle));
    }

    #[test]
    fn intersect_lines_examples() {
        let l1 = Line2::through(pt(0.0, 0.0), pt(1.0, 1.0));
        let l2 = Line2::through(pt(0.0, 2.0), pt(1.0, 1.0));
        assert_close(intersect_lines(l1, l2).unwrap(), pt(1.0, 1.0), EXACT_TOL);

        let vertical = Line2::through(pt(3.0, 0.0), pt(3.0, 1.0));
        let horizontal = Line2::through(pt(0.0, 7.0), pt(1.0, 7.0));
        assert_close(intersect_lines(vertical, horizontal).unwrap(), pt(3.0, 7.0), EXACT_TOL);

        assert_eq!(
            intersect_lines(l1, Line2::through(pt(5.0, 5.0), pt(6.0, 6.0))),
            Err(GeomError::ParallelLines)
        );
    }

    #[test]
    fn parallelogram_fourth_examples() {
        assert_close(
            parallelogram_fourth(pt(0.0, 0.0), pt(2.0, 0.0), pt(3.0, 1.0)),
            pt(1.0, 1.0),
            EXACT_TOL,
        );
        assert_close(
            parallelogram_fourth(pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0)),
            pt(0.0, 1.0),
            EXACT_TOL,
        );
    }

    #[test]
    fn circle_through_three_points() {
        let c = circle_through(pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0)).unwrap();
        assert_close(c.center, pt(0.0, 0.0), EXACT_TOL);
        assert!((c.r - 1.0).abs() <= EXACT_TOL);
        assert_eq!(
            circle_through(pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)),
            Err(GeomError::DegenerateTriangle)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..100 {
            let (a, b, c) = (
                rand_point(&mut rng, 0.0, 500.0),
                rand_point(&mut rng, 0.0, 500.0),
                rand_point(&mut rng, 0.0, 500.0),
            );
            if triangle_area(a, b, c) < 1.0 {
                continue;
            }
            let circ = circle_through(a, b, c).unwrap();
            let o = classic_center(CenterKind::Circumcenter, a, b, c).unwrap();
            assert_close(circ.center, o, 1e-9);
        }
    }

    #[test]
    fn ray_distance_handles_points_behind_origin() {
        let d = point_ray_distance(pt(-3.0, 4.0), pt(0.0, 0.0), pt(1.0, 0.0));
        assert!((d - 5.0).abs() <= EXACT_TOL);
        let d2 = point_ray_distance(pt(3.0, 4.0), pt(0.0, 0.0), pt(1.0, 0.0));
        assert!((d2 - 4.0).abs() <= EXACT_TOL);
    }
}
