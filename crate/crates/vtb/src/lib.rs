//! vtb: generator + verifier toolkit for vision-centric reasoning benchmarks
//! aimed at video generation models.
//!
//! The library produces four task suites as plain PNG + JSON files, and scores
//! candidate solutions that arrive as decoded video frames (plus an optional
//! speech transcript):
//!
//! * [`eyegen`] - 21 families of "eyeball the construction" geometry puzzles
//!   with five labelled candidate markers per image.
//! * [`mazegen`] - square / hexagon / circle mazes with two red dots; a frame
//!   passes when a red path connects the dots without touching a wall.
//! * [`vpuzzle`] - abstract visual puzzles (color filling and shape drawing)
//!   scored by pixel difference against rendered candidate answers.
//! * [`arcbridge`] - renders grid-transformation tasks from the standard JSON
//!   schema into images and reads answers back out of frames.
//!
//! [`judge`] turns frames/transcripts into option verdicts, [`harness`] runs
//! batch evaluations with scripted or external solvers and aggregates reports,
//! and [`cli`] backs the thin `vtb` binary.
//!
//! Runnable demos live under `examples/`; each one covers one capability:
//!
//! ```text
//! cargo run -p vtb --example generate_eyeballing
//! cargo run -p vtb --example generate_mazes
//! cargo run -p vtb --example generate_visual_puzzles
//! cargo run -p vtb --example arc_roundtrip
//! cargo run -p vtb --example judge_frames
//! cargo run -p vtb --example self_consistency
//! cargo run -p vtb --example scripted_eval
//! cargo run -p vtb --example dual_modality
//! ```

pub mod arcbridge;
pub mod cli;
pub mod eyegen;
pub mod geom;
pub mod harness;
pub mod judge;
pub mod mazegen;
pub mod raster;
pub mod util;
pub mod vpuzzle;
