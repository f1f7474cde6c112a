//! Verdict extraction from solver output: red-mark detection in frames,
//! option words in transcripts, and self-consistency voting.
//!
//! A solver answers a multiple-choice scene by painting something red near
//! one labelled marker and/or by saying the option's phonetic word. The
//! functions here reduce a frame sequence plus transcript to `Option<Label>`
//! verdicts without any model in the loop.

use crate::eyegen::{Label, OptionSet};
use image::{Rgb, RgbImage};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Every fifth frame is inspected by the frame-majority rule.
pub const FRAME_SAMPLE_STRIDE: usize = 5;

/// A red centroid snaps to the nearest option only within this distance (px).
pub const RED_SNAP_RADIUS: f64 = 30.0;

#[derive(Debug, Error)]
pub enum JudgeError {
    #[error("frame set is empty")]
    Empty,
    #[error("no frames found under {0}")]
    NoFrames(PathBuf),
    #[error("frame {index} is {w}x{h} but frame 0 is {w0}x{h0}")]
    MixedDimensions { index: usize, w: u32, h: u32, w0: u32, h0: u32 },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("image: {0}")]
    Image(#[from] image::ImageError),
}

/// A decoded solver response: one or more frames plus an optional transcript.
pub struct FrameSet {
    frames: Vec<RgbImage>,
    pub transcript: Option<String>,
}

impl FrameSet {
    pub fn new(frames: Vec<RgbImage>, transcript: Option<String>) -> Result<Self, JudgeError> {
        if frames.is_empty() {
            return Err(JudgeError::Empty);
        }
        let (w0, h0) = frames[0].dimensions();
        for (index, f) in frames.iter().enumerate() {
            let (w, h) = f.dimensions();
            if (w, h) != (w0, h0) {
                return Err(JudgeError::MixedDimensions { index, w, h, w0, h0 });
            }
        }
        Ok(FrameSet { frames, transcript })
    }

    /// Loads `frame_00000.png, frame_00001.png, ...` from `dir/frames` (or
    /// `dir` itself) plus an optional `dir/audio.txt` transcript.
    pub fn from_dir(dir: &Path) -> Result<Self, JudgeError> {
        let frames_dir = if dir.join("frames").is_dir() {
            dir.join("frames")
        } else {
            dir.to_path_buf()
        };
        let mut frames = Vec::new();
        loop {
            let path = frames_dir.join(format!("frame_{:05}.png", frames.len()));
            if !path.is_file() {
                break;
            }
            frames.push(crate::raster::load_png(&path)?);
        }
        if frames.is_empty() {
            return Err(JudgeError::NoFrames(frames_dir));
        }
        let audio = dir.join("audio.txt");
        let transcript = if audio.is_file() {
            Some(std::fs::read_to_string(audio)?)
        } else {
            None
        };
        FrameSet::new(frames, transcript)
    }

    /// Writes the inverse layout of `from_dir`.
    pub fn write_to_dir(&self, dir: &Path) -> Result<(), JudgeError> {
        let frames_dir = dir.join("frames");
        std::fs::create_dir_all(&frames_dir)?;
        for (i, f) in self.frames.iter().enumerate() {
            crate::raster::save_png(f, &frames_dir.join(format!("frame_{i:05}.png")))?;
        }
        if let Some(t) = &self.transcript {
            std::fs::write(dir.join("audio.txt"), t)?;
        }
        Ok(())
    }

    pub fn frames(&self) -> &[RgbImage] {
        &self.frames
    }

    pub fn last(&self) -> &RgbImage {
        self.frames.last().expect("FrameSet is never empty")
    }

    /// Indices inspected by the frame-majority rule: 0, 5, 10, ...
    pub fn sampled_indices(&self) -> Vec<usize> {
        (0..self.frames.len()).step_by(FRAME_SAMPLE_STRIDE).collect()
    }

    pub fn into_parts(self) -> (Vec<RgbImage>, Option<String>) {
        (self.frames, self.transcript)
    }
}

/// A pixel counts as red when clearly dominated by its red channel.
pub fn is_red(p: Rgb<u8>) -> bool {
    let [r, g, b] = p.0;
    r >= 128 && r as i16 - g as i16 >= 60 && r as i16 - b as i16 >= 60
}

/// Mean position of red pixels (pixel centers), if any.
pub fn red_centroid(img: &RgbImage) -> Option<(f64, f64)> {
    let mut n = 0u64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for (x, y, p) in img.enumerate_pixels() {
        if is_red(*p) {
            n += 1;
            sx += x as f64 + 0.5;
            sy += y as f64 + 0.5;
        }
    }
    if n == 0 {
        None
    } else {
        Some((sx / n as f64, sy / n as f64))
    }
}

/// Snaps the red centroid of one frame to the nearest labelled option.
/// `None` when the frame has no red or the centroid is not near any option.
pub fn detect_red_option(img: &RgbImage, options: &OptionSet) -> Option<Label> {
    let (cx, cy) = red_centroid(img)?;
    let c = crate::geom::pt(cx, cy);
    let (label, d) = options
        .iter()
        .map(|(l, p)| (l, p.dist(c)))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())?;
    (d <= RED_SNAP_RADIUS).then_some(label)
}

/// Verdict read from the final frame only.
pub fn last_frame_verdict(fs: &FrameSet, options: &OptionSet) -> Option<Label> {
    detect_red_option(fs.last(), options)
}

/// Majority verdict over every fifth frame. Frames without a readable mark
/// abstain; a tied majority resolves to the latest tied verdict, on the view
/// that later frames reflect the solver's settled answer.
pub fn major_frame_verdict(fs: &FrameSet, options: &OptionSet) -> Option<Label> {
    let mut counts = [0usize; 5];
    let mut verdicts = Vec::new();
    for i in fs.sampled_indices() {
        if let Some(l) = detect_red_option(&fs.frames[i], options) {
            counts[l.index()] += 1;
            verdicts.push(l);
        }
    }
    let best = *counts.iter().max()?;
    if best == 0 {
        return None;
    }
    verdicts
        .into_iter()
        .rev()
        .find(|l| counts[l.index()] == best)
}

/// First phonetic option word spoken in a transcript, as a whole word,
/// case-insensitive. Misspellings do not count.
pub fn audio_option(transcript: &str) -> Option<Label> {
    for word in transcript.split(|c: char| !c.is_ascii_alphabetic()) {
        let label = match word.to_ascii_lowercase().as_str() {
            "alpha" => Some(Label::A),
            "bravo" => Some(Label::B),
            "charlie" => Some(Label::C),
            "delta" => Some(Label::D),
            "echo" => Some(Label::E),
            _ => None,
        };
        if label.is_some() {
            return label;
        }
    }
    None
}

/// Plurality vote over independent tries. Abstentions are dropped; a tie
/// resolves to the alphabetically lowest label; all-abstain yields `None`.
pub fn self_consistency_vote(verdicts: &[Option<Label>]) -> Option<Label> {
    let mut counts = [0usize; 5];
    for v in verdicts.iter().flatten() {
        counts[v.index()] += 1;
    }
    let best = *counts.iter().max().unwrap();
    if best == 0 {
        return None;
    }
    Label::ALL.into_iter().find(|l| counts[l.index()] == best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use crate::raster::{Canvas, RED, WHITE};
    use proptest::prelude::*;

    fn five_options() -> OptionSet {
        OptionSet::new([
            pt(20.0, 20.0),
            pt(80.0, 20.0),
            pt(20.0, 80.0),
            pt(80.0, 80.0),
            pt(50.0, 50.0),
        ])
    }

    fn frame_marking(label: Option<Label>) -> RgbImage {
        let mut cv = Canvas::new(100, 100, WHITE);
        if let Some(l) = label {
            cv.disc(five_options().get(l), 6.0, RED);
        }
        cv.into_image()
    }

    #[test]
    fn red_classifier_examples() {
        assert!(is_red(image::Rgb([255, 0, 0])));
        assert!(is_red(image::Rgb([128, 60, 60])));
        assert!(is_red(image::Rgb([200, 120, 30])));
        assert!(!is_red(image::Rgb([127, 0, 0])));
        assert!(!is_red(image::Rgb([255, 200, 0])));
        assert!(!is_red(image::Rgb([255, 255, 255])));
        assert!(!is_red(image::Rgb([0, 0, 0])));
    }

    #[test]
    fn centroid_finds_painted_disc() {
        let img = frame_marking(Some(Label::D));
        let (cx, cy) = red_centroid(&img).unwrap();
        assert!((cx - 80.0).abs() < 1.0 && (cy - 80.0).abs() < 1.0);
        assert_eq!(red_centroid(&frame_marking(None)), None);
    }

    #[test]
    fn detect_snaps_only_within_radius() {
        let opts = five_options();
        assert_eq!(detect_red_option(&frame_marking(Some(Label::B)), &opts), Some(Label::B));
        // Red far from every option: centered between all of them is near E,
        // so paint in a corner away from everything.
        let mut cv = Canvas::new(200, 200, WHITE);
        cv.disc(pt(190.0, 190.0), 4.0, RED);
        assert_eq!(detect_red_option(&cv.into_image(), &opts), None);
    }

    fn frameset_sampled(seq: &[Option<Label>]) -> FrameSet {
        // Builds a clip whose *sampled* frames (stride 5) carry `seq`;
        // in-between frames are blank.
        let mut frames = Vec::new();
        for v in seq {
            frames.push(frame_marking(*v));
            for _ in 0..FRAME_SAMPLE_STRIDE - 1 {
                frames.push(frame_marking(None));
            }
        }
        FrameSet::new(frames, None).unwrap()
    }

    #[test]
    fn majority_ignores_abstentions() {
        let fs = frameset_sampled(&[
            Some(Label::A),
            Some(Label::A),
            None,
            Some(Label::B),
            Some(Label::A),
        ]);
        assert_eq!(major_frame_verdict(&fs, &five_options()), Some(Label::A));
    }

    #[test]
    fn majority_tie_prefers_later_frames() {
        let fs = frameset_sampled(&[Some(Label::A), Some(Label::B)]);
        assert_eq!(major_frame_verdict(&fs, &five_options()), Some(Label::B));
        let fs = frameset_sampled(&[Some(Label::B), Some(Label::A)]);
        assert_eq!(major_frame_verdict(&fs, &five_options()), Some(Label::A));
    }

    #[test]
    fn majority_all_blank_is_none() {
        let fs = frameset_sampled(&[None, None]);
        assert_eq!(major_frame_verdict(&fs, &five_options()), None);
    }

    #[test]
    fn last_frame_reads_final_state() {
        let frames = vec![frame_marking(Some(Label::A)), frame_marking(Some(Label::E))];
        let fs = FrameSet::new(frames, None).unwrap();
        assert_eq!(last_frame_verdict(&fs, &five_options()), Some(Label::E));
    }

    #[test]
    fn audio_examples() {
        assert_eq!(audio_option("The answer is Charlie."), Some(Label::C));
        assert_eq!(audio_option("alpha... no wait, bravo"), Some(Label::A));
        assert_eq!(audio_option("The answer is Charly."), None);
        assert_eq!(audio_option("DELTA!"), Some(Label::D));
        assert_eq!(audio_option("echolocation is not an option word"), None);
        assert_eq!(audio_option(""), None);
    }

    #[test]
    fn vote_examples() {
        use Label::*;
        assert_eq!(self_consistency_vote(&[Some(A), Some(B), Some(A)]), Some(A));
        assert_eq!(self_consistency_vote(&[Some(B), Some(A)]), Some(A));
        assert_eq!(self_consistency_vote(&[None, Some(D), None]), Some(D));
        assert_eq!(self_consistency_vote(&[None, None]), None);
        assert_eq!(self_consistency_vote(&[]), None);
    }

    #[test]
    fn frameset_rules() {
        assert!(matches!(FrameSet::new(vec![], None), Err(JudgeError::Empty)));
        let mixed = vec![RgbImage::new(4, 4), RgbImage::new(5, 4)];
        assert!(matches!(
            FrameSet::new(mixed, None),
            Err(JudgeError::MixedDimensions { .. })
        ));
    }

    #[test]
    fn frameset_roundtrips_through_dir() {
        let dir = tempfile::tempdir().unwrap();
        let fs = FrameSet::new(
            vec![frame_marking(Some(Label::C)); 3],
            Some("The answer is Charlie.".into()),
        )
        .unwrap();
        fs.write_to_dir(dir.path()).unwrap();
        let back = FrameSet::from_dir(dir.path()).unwrap();
        assert_eq!(back.frames().len(), 3);
        assert_eq!(audio_option(back.transcript.as_deref().unwrap()), Some(Label::C));
        assert_eq!(last_frame_verdict(&back, &five_options()), Some(Label::C));
    }

    proptest! {
        #[test]
        fn vote_is_order_invariant(mut v in proptest::collection::vec(
            proptest::option::of(0usize..5), 0..12), seed in 0u64..1000)
        {
            let verdicts: Vec<Option<Label>> =
                v.iter().map(|o| o.map(Label::from_index)).collect();
            let base = self_consistency_vote(&verdicts);
            // Deterministic shuffle driven by the seed.
            let mut s = seed;
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                v.swap(i, j);
            }
            let shuffled: Vec<Option<Label>> =
                v.iter().map(|o| o.map(Label::from_index)).collect();
            prop_assert_eq!(self_consistency_vote(&shuffled), base);
        }
    }
}
