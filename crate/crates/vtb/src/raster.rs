//! Minimal deterministic software rasterizer.
//!
//! Everything the generators draw goes through this module so that a given
//! (instance, seed) pair always produces byte-identical pixels: no
//! anti-aliasing, no platform-dependent text shaping, and PNG encoding with
//! fixed settings.

use crate::geom::Point2;
use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{ExtendedColorType, ImageEncoder, Rgb, RgbImage};
use std::io::BufWriter;
use std::path::Path;

pub const WHITE: Rgb<u8> = Rgb([255, 255, 255]);
pub const BLACK: Rgb<u8> = Rgb([0, 0, 0]);
pub const RED: Rgb<u8> = Rgb([255, 0, 0]);
pub const MASK_GRAY: Rgb<u8> = Rgb([200, 200, 200]);

/// Rec. 601 luma, rounded to the nearest integer.
pub fn luma8(p: Rgb<u8>) -> u8 {
    let v = 299u32 * p[0] as u32 + 587 * p[1] as u32 + 114 * p[2] as u32;
    ((v + 500) / 1000) as u8
}

/// 5x7 bitmap glyphs for the option labels, the question mark, and the
/// arithmetic signs used by puzzle scenes.
/// Each byte is one row, most significant of the low five bits on the left.
const GLYPHS: [(char, [u8; 7]); 8] = [
    ('A', [0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11]),
    ('B', [0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E]),
    ('C', [0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E]),
    ('D', [0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E]),
    ('E', [0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F]),
    ('?', [0x0E, 0x11, 0x01, 0x02, 0x04, 0x00, 0x04]),
    ('+', [0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00]),
    ('=', [0x00, 0x00, 0x1F, 0x00, 0x1F, 0x00, 0x00]),
];

pub const GLYPH_W: u32 = 5;
pub const GLYPH_H: u32 = 7;

/// A mutable RGB image with clipping draw primitives.
pub struct Canvas {
    img: RgbImage,
}

impl Canvas {
    pub fn new(w: u32, h: u32, bg: Rgb<u8>) -> Self {
        Canvas { img: RgbImage::from_pixel(w, h, bg) }
    }

    pub fn from_image(img: RgbImage) -> Self {
        Canvas { img }
    }

    pub fn width(&self) -> u32 {
        self.img.width()
    }

    pub fn height(&self) -> u32 {
        self.img.height()
    }

    pub fn image(&self) -> &RgbImage {
        &self.img
    }

    pub fn into_image(self) -> RgbImage {
        self.img
    }

    pub fn put(&mut self, x: i64, y: i64, c: Rgb<u8>) {
        if x >= 0 && y >= 0 && (x as u32) < self.img.width() && (y as u32) < self.img.height() {
            self.img.put_pixel(x as u32, y as u32, c);
        }
    }

    /// Paints every pixel whose center satisfies `pred` inside the given
    /// bounding box (in float pixel coordinates, clipped to the canvas).
    fn paint_where(
        &mut self,
        x0: f64,
        y0: f64,
        x1: f64,
        y1: f64,
        c: Rgb<u8>,
        pred: impl Fn(f64, f64) -> bool,
    ) {
        let xa = x0.floor().max(0.0) as i64;
        let ya = y0.floor().max(0.0) as i64;
        let xb = x1.ceil().min(self.img.width() as f64 - 1.0) as i64;
        let yb = y1.ceil().min(self.img.height() as f64 - 1.0) as i64;
        for y in ya..=yb {
            for x in xa..=xb {
                let (cx, cy) = (x as f64 + 0.5, y as f64 + 0.5);
                if pred(cx, cy) {
                    self.img.put_pixel(x as u32, y as u32, c);
                }
            }
        }
    }

    pub fn fill_rect(&mut self, x: f64, y: f64, w: f64, h: f64, c: Rgb<u8>) {
        self.paint_where(x, y, x + w, y + h, c, |px, py| {
            px >= x && px < x + w && py >= y && py < y + h
        });
    }

    /// Filled disc.
    pub fn disc(&mut self, center: Point2, r: f64, c: Rgb<u8>) {
        let r2 = r * r;
        self.paint_where(
            center.x - r,
            center.y - r,
            center.x + r,
            center.y + r,
            c,
            |px, py| {
                let (dx, dy) = (px - center.x, py - center.y);
                dx * dx + dy * dy <= r2
            },
        );
    }

    /// Circle outline of the given stroke width.
    pub fn circle(&mut self, center: Point2, r: f64, width: f64, c: Rgb<u8>) {
        let (rin, rout) = (r - width / 2.0, r + width / 2.0);
        let (rin2, rout2) = ((rin.max(0.0)) * (rin.max(0.0)), rout * rout);
        self.paint_where(
            center.x - rout,
            center.y - rout,
            center.x + rout,
            center.y + rout,
            c,
            |px, py| {
                let (dx, dy) = (px - center.x, py - center.y);
                let d2 = dx * dx + dy * dy;
                d2 >= rin2 && d2 <= rout2
            },
        );
    }

    /// Thick line segment with round caps.
    pub fn line(&mut self, a: Point2, b: Point2, width: f64, c: Rgb<u8>) {
        let r = width / 2.0;
        let ab = b - a;
        let len2 = ab.dot(ab);
        let r2 = r * r;
        self.paint_where(
            a.x.min(b.x) - r,
            a.y.min(b.y) - r,
            a.x.max(b.x) + r,
            a.y.max(b.y) + r,
            c,
            |px, py| {
                let p = crate::geom::pt(px, py);
                let t = if len2 > 0.0 { ((p - a).dot(ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
                let q = a + ab * t;
                (p - q).dot(p - q) <= r2
            },
        );
    }

    pub fn polyline(&mut self, pts: &[Point2], width: f64, c: Rgb<u8>) {
        for w in pts.windows(2) {
            self.line(w[0], w[1], width, c);
        }
    }

    pub fn polygon_outline(&mut self, pts: &[Point2], width: f64, c: Rgb<u8>) {
        if pts.len() < 2 {
            return;
        }
        self.polyline(pts, width, c);
        self.line(pts[pts.len() - 1], pts[0], width, c);
    }

    /// Even-odd scanline fill of a simple polygon.
    pub fn fill_polygon(&mut self, pts: &[Point2], c: Rgb<u8>) {
        if pts.len() < 3 {
            return;
        }
        let ymin = pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min).floor().max(0.0) as i64;
        let ymax = pts
            .iter()
            .map(|p| p.y)
            .fold(f64::NEG_INFINITY, f64::max)
            .ceil()
            .min(self.img.height() as f64 - 1.0) as i64;
        for y in ymin..=ymax {
            let fy = y as f64 + 0.5;
            let mut xs: Vec<f64> = Vec::new();
            for i in 0..pts.len() {
                let (p, q) = (pts[i], pts[(i + 1) % pts.len()]);
                if (p.y <= fy && q.y > fy) || (q.y <= fy && p.y > fy) {
                    xs.push(p.x + (fy - p.y) / (q.y - p.y) * (q.x - p.x));
                }
            }
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for pair in xs.chunks(2) {
                if let [x0, x1] = pair {
                    let xa = (x0 - 0.5).ceil().max(0.0) as i64;
                    let xb = (x1 - 0.5).floor().min(self.img.width() as f64 - 1.0) as i64;
                    for x in xa..=xb {
                        self.img.put_pixel(x as u32, y as u32, c);
                    }
                }
            }
        }
    }

    /// Circular arc stroke between two angles (radians, measured in y-down
    /// screen space). The angular span runs counter-clockwise in parameter
    /// terms from `a0` to `a1`; pass `a1 > a0` (up to a full turn).
    pub fn arc(&mut self, center: Point2, r: f64, a0: f64, a1: f64, width: f64, c: Rgb<u8>) {
        let span = a1 - a0;
        let steps = ((r * span.abs()) / 2.0).ceil().max(8.0) as usize;
        let mut pts = Vec::with_capacity(steps + 1);
        for i in 0..=steps {
            let t = a0 + span * i as f64 / steps as f64;
            pts.push(center + crate::geom::pt(t.cos(), t.sin()) * r);
        }
        self.polyline(&pts, width, c);
    }

    /// One glyph from the built-in font, top-left at (x, y), integer scale.
    pub fn glyph(&mut self, ch: char, x: f64, y: f64, scale: u32, c: Rgb<u8>) {
        let rows = match GLYPHS.iter().find(|(g, _)| *g == ch) {
            Some((_, rows)) => rows,
            None => return,
        };
        let s = scale as f64;
        for (ry, row) in rows.iter().enumerate() {
            for cx in 0..GLYPH_W {
                if row & (1 << (GLYPH_W - 1 - cx)) != 0 {
                    self.fill_rect(x + cx as f64 * s, y + ry as f64 * s, s, s, c);
                }
            }
        }
    }
}

/// Writes an image as PNG with fixed, deterministic encoder settings.
pub fn save_png(img: &RgbImage, path: &Path) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let file = std::fs::File::create(path)?;
    let enc =
        PngEncoder::new_with_quality(BufWriter::new(file), CompressionType::Fast, FilterType::Sub);
    enc.write_image(img.as_raw(), img.width(), img.height(), ExtendedColorType::Rgb8)
        .map_err(|e| std::io::Error::other(e.to_string()))
}

/// PNG encoding into memory with the same settings as [`save_png`].
pub fn encode_png(img: &RgbImage) -> Vec<u8> {
    let mut buf = Vec::new();
    let enc = PngEncoder::new_with_quality(&mut buf, CompressionType::Fast, FilterType::Sub);
    enc.write_image(img.as_raw(), img.width(), img.height(), ExtendedColorType::Rgb8)
        .expect("in-memory png encode");
    buf
}

pub fn load_png(path: &Path) -> Result<RgbImage, image::ImageError> {
    Ok(image::open(path)?.to_rgb8())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;

    fn count(img: &RgbImage, c: Rgb<u8>) -> usize {
        img.pixels().filter(|p| **p == c).count()
    }

    #[test]
    fn disc_area_is_close_to_analytic() {
        let mut cv = Canvas::new(100, 100, WHITE);
        cv.disc(pt(50.0, 50.0), 20.0, BLACK);
        let n = count(cv.image(), BLACK) as f64;
        let expect = std::f64::consts::PI * 400.0;
        assert!((n - expect).abs() / expect < 0.02, "disc area {n} vs {expect}");
    }

    #[test]
    fn line_covers_endpoints_and_respects_width() {
        let mut cv = Canvas::new(100, 100, WHITE);
        cv.line(pt(10.0, 50.0), pt(90.0, 50.0), 4.0, BLACK);
        let img = cv.image();
        assert_eq!(*img.get_pixel(50, 50), BLACK);
        assert_eq!(*img.get_pixel(50, 40), WHITE);
        // 80 px long, 4 px wide, plus round caps.
        let n = count(img, BLACK) as f64;
        assert!(n > 300.0 && n < 400.0, "{n}");
    }

    #[test]
    fn fill_polygon_triangle_area() {
        let mut cv = Canvas::new(120, 120, WHITE);
        cv.fill_polygon(&[pt(10.0, 10.0), pt(110.0, 10.0), pt(10.0, 110.0)], BLACK);
        let n = count(cv.image(), BLACK) as f64;
        assert!((n - 5000.0).abs() < 150.0, "{n}");
    }

    #[test]
    fn glyphs_render_expected_pixel_counts() {
        for (ch, bits) in [('A', 18), ('E', 18), ('?', 9)] {
            let mut cv = Canvas::new(40, 40, WHITE);
            cv.glyph(ch, 2.0, 2.0, 2, BLACK);
            assert_eq!(count(cv.image(), BLACK), bits * 4, "glyph {ch}");
        }
        // Unknown glyphs draw nothing rather than garbage.
        let mut cv = Canvas::new(40, 40, WHITE);
        cv.glyph('z', 2.0, 2.0, 2, BLACK);
        assert_eq!(count(cv.image(), BLACK), 0);
    }

    #[test]
    fn png_roundtrip_preserves_pixels_and_bytes() {
        let mut cv = Canvas::new(64, 64, WHITE);
        cv.disc(pt(20.0, 30.0), 10.0, RED);
        cv.glyph('B', 40.0, 10.0, 3, BLACK);
        let img = cv.into_image();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.png");
        save_png(&img, &p).unwrap();
        let back = load_png(&p).unwrap();
        assert_eq!(img, back);
        assert_eq!(encode_png(&img), std::fs::read(&p).unwrap());
    }

    #[test]
    fn luma_examples() {
        assert_eq!(luma8(WHITE), 255);
        assert_eq!(luma8(BLACK), 0);
        assert_eq!(luma8(RED), 76);
    }
}
