//! Solvers the harness can drive: scripted profiles for calibration and
//! testing, and an external command hook for real video models.

use super::{HarnessError, InstanceManifest, Suite};
use crate::eyegen::{EyeballInstance, Label};
use crate::judge::FrameSet;
use crate::raster::{load_png, Canvas, RED, WHITE};
use crate::util::derive_seed;
use crate::{arcbridge, mazegen, vpuzzle};
use image::RgbImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};

/// Environment variable holding the external decode command.
pub const ENV_DECODER_CMD: &str = "VTB_DECODER_CMD";
/// Exported to the external command: the instance directory.
pub const ENV_INSTANCE_DIR: &str = "VTB_INSTANCE_DIR";
/// Exported to the external command: the zero-based attempt number.
pub const ENV_TRY: &str = "VTB_TRY";
/// Exported to the external command: where to write frames and audio.txt.
pub const ENV_FRAMES_DIR: &str = "VTB_FRAMES_DIR";

pub struct SolverOutput {
    pub frames: Vec<RgbImage>,
    pub transcript: Option<String>,
}

pub struct SolveContext<'a> {
    pub suite: Suite,
    pub rel: &'a str,
    pub dir: &'a Path,
    pub try_index: u32,
    pub manifest: &'a InstanceManifest,
}

pub trait Adapter: Sync {
    fn name(&self) -> &str;
    /// Deterministic adapters omit timestamps so their logs are reproducible.
    fn deterministic(&self) -> bool {
        true
    }
    fn solve(&self, ctx: &SolveContext) -> Result<SolverOutput, HarnessError>;
}

/// Behavior of a scripted solver.
#[derive(Clone, Copy, Debug)]
pub enum Profile {
    /// Always answers correctly.
    Perfect,
    /// Picks uniformly at random each try.
    Random,
    /// Correct with probability `p` per try; when wrong, repeats the same
    /// wrong answer every try (a solver with a consistent misconception),
    /// so majority voting follows the binomial P(majority correct) exactly.
    Noisy(f64),
    /// Always answers with the same wrong option.
    Distractor,
}

/// A solver that never looks at the rendered input: it reads the manifest
/// and synthesizes response frames directly, exercising the verifier's
/// decision path end to end.
pub struct ScriptedSolver {
    profile: Profile,
    master_seed: u64,
    name: String,
}

impl ScriptedSolver {
    pub fn new(profile: Profile, master_seed: u64) -> Self {
        let name = match profile {
            Profile::Perfect => "perfect".to_string(),
            Profile::Random => "random".to_string(),
            Profile::Noisy(p) => format!("noisy_{p:.2}"),
            Profile::Distractor => "distractor".to_string(),
        };
        ScriptedSolver { profile, master_seed, name }
    }

    fn rng(&self, tag: &str, rel: &str, index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.master_seed, &format!("{tag}|{rel}"), index))
    }

    /// Per-try correctness draw for suites with a binary outcome.
    fn attempt_good(&self, rel: &str, try_index: u32) -> bool {
        match self.profile {
            Profile::Perfect => true,
            Profile::Distractor => false,
            Profile::Random => self.rng("flip", rel, try_index as u64).random_bool(0.5),
            Profile::Noisy(p) => self.rng("flip", rel, try_index as u64).random_bool(p),
        }
    }

    /// The wrong option is a function of the instance alone, not the try.
    fn sticky_wrong(&self, rel: &str, truth: Label) -> Label {
        let wrong: Vec<Label> =
            Label::ALL.into_iter().filter(|l| *l != truth).collect();
        wrong[self.rng("sticky_wrong", rel, 0).random_range(0..wrong.len())]
    }

    fn eyeballing(&self, ctx: &SolveContext, inst: &EyeballInstance) -> SolverOutput {
        let chosen = match self.profile {
            Profile::Perfect => inst.truth,
            Profile::Distractor => self.sticky_wrong(ctx.rel, inst.truth),
            Profile::Random => Label::from_index(
                self.rng("pick", ctx.rel, ctx.try_index as u64).random_range(0..Label::ALL.len()),
            ),
            Profile::Noisy(_) => {
                if self.attempt_good(ctx.rel, ctx.try_index) {
                    inst.truth
                } else {
                    self.sticky_wrong(ctx.rel, inst.truth)
                }
            }
        };
        let pos = inst.options.get(chosen);
        let (w, h) = inst.canvas;
        let mut cv = Canvas::new(w, h, WHITE);
        cv.disc(pos, 10.0, RED);
        let frame = cv.into_image();
        SolverOutput {
            frames: vec![frame; 6],
            transcript: Some(format!("The answer is {}.", chosen.phonetic())),
        }
    }

    fn maze(
        &self,
        ctx: &SolveContext,
        inst: &mazegen::MazeInstance,
    ) -> Result<SolverOutput, HarnessError> {
        let cm = mazegen::regenerate(inst)?;
        let frame = if self.attempt_good(ctx.rel, ctx.try_index) {
            mazegen::render_solution(&cm)
        } else {
            mazegen::distractor_frame(&cm)
        };
        Ok(SolverOutput { frames: vec![frame], transcript: None })
    }

    fn arc(
        &self,
        ctx: &SolveContext,
        m: &arcbridge::ArcManifest,
    ) -> Result<SolverOutput, HarnessError> {
        let base = load_png(&ctx.dir.join("input.png"))?;
        let grid = if self.attempt_good(ctx.rel, ctx.try_index) {
            m.truth.clone()
        } else {
            corrupt_first_cell(&m.truth)
        };
        let frame = arcbridge::render_answer(&base, &grid, &m.render);
        Ok(SolverOutput { frames: vec![frame], transcript: None })
    }

    fn vpuzzle(
        &self,
        ctx: &SolveContext,
        inst: &vpuzzle::VpuzzleInstance,
    ) -> Result<SolverOutput, HarnessError> {
        let candidate = match self.profile {
            Profile::Perfect => 0,
            Profile::Distractor => 1,
            Profile::Random => self
                .rng("pick", ctx.rel, ctx.try_index as u64)
                .random_range(0..inst.candidates.len()),
            Profile::Noisy(_) => {
                if self.attempt_good(ctx.rel, ctx.try_index) {
                    0
                } else {
                    1
                }
            }
        };
        let file = if candidate == 0 {
            "solution.png".to_string()
        } else {
            format!("distractor_{}.png", candidate - 1)
        };
        let frame = load_png(&ctx.dir.join(file))?;
        Ok(SolverOutput { frames: vec![frame], transcript: None })
    }
}

/// Changes cell (0,0), so pixel accuracy drops by exactly one cell.
pub fn corrupt_first_cell(g: &arcbridge::Grid) -> arcbridge::Grid {
    let mut g = g.clone();
    g.0[0][0] = (g.0[0][0] + 1) % 10;
    g
}

impl Adapter for ScriptedSolver {
    fn name(&self) -> &str {
        &self.name
    }

    fn solve(&self, ctx: &SolveContext) -> Result<SolverOutput, HarnessError> {
        match ctx.manifest {
            InstanceManifest::Eyeballing(inst) => Ok(self.eyeballing(ctx, inst)),
            InstanceManifest::Maze(inst) => self.maze(ctx, inst),
            InstanceManifest::Arc(m) => self.arc(ctx, m),
            InstanceManifest::Vpuzzle(inst) => self.vpuzzle(ctx, inst),
        }
    }
}

static FRAMES_DIR_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Runs a shell command per attempt. The command sees the instance through
/// `VTB_INSTANCE_DIR`, the attempt number through `VTB_TRY`, and must write
/// `frame_00000.png, ...` (plus optional `audio.txt`) into `VTB_FRAMES_DIR`.
pub struct CommandAdapter {
    cmd: String,
    name: String,
    retries: u32,
    backoff: std::time::Duration,
}

impl CommandAdapter {
    pub fn new(cmd: impl Into<String>) -> Self {
        CommandAdapter {
            cmd: cmd.into(),
            name: "external".to_string(),
            retries: 2,
            backoff: std::time::Duration::from_millis(500),
        }
    }

    pub fn with_retries(mut self, retries: u32, backoff: std::time::Duration) -> Self {
        self.retries = retries;
        self.backoff = backoff;
        self
    }

    /// Builds the adapter from `VTB_DECODER_CMD` when set.
    pub fn from_env() -> Option<Self> {
        std::env::var(ENV_DECODER_CMD).ok().map(Self::new)
    }

    fn run_once(&self, ctx: &SolveContext) -> Result<SolverOutput, HarnessError> {
        let scratch = std::env::temp_dir().join(format!(
            "vtb_frames_{}_{}",
            std::process::id(),
            FRAMES_DIR_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::create_dir_all(&scratch)?;
        let result = (|| -> Result<SolverOutput, HarnessError> {
            let status = std::process::Command::new("sh")
                .arg("-c")
                .arg(&self.cmd)
                .env(ENV_INSTANCE_DIR, ctx.dir)
                .env(ENV_TRY, ctx.try_index.to_string())
                .env(ENV_FRAMES_DIR, &scratch)
                .status()?;
            if !status.success() {
                return Err(HarnessError::Adapter(format!(
                    "decoder command exited with {status}"
                )));
            }
            let (frames, transcript) = FrameSet::from_dir(&scratch)?.into_parts();
            Ok(SolverOutput { frames, transcript })
        })();
        let _ = std::fs::remove_dir_all(&scratch);
        result
    }
}

impl Adapter for CommandAdapter {
    fn name(&self) -> &str {
        &self.name
    }

    fn deterministic(&self) -> bool {
        false
    }

    fn solve(&self, ctx: &SolveContext) -> Result<SolverOutput, HarnessError> {
        let mut last_err = None;
        for attempt in 0..=self.retries {
            match self.run_once(ctx) {
                Ok(out) => return Ok(out),
                Err(e) => {
                    last_err = Some(e);
                    if attempt < self.retries {
                        std::thread::sleep(self.backoff * 2u32.pow(attempt));
                    }
                }
            }
        }
        Err(last_err.unwrap_or_else(|| HarnessError::Adapter("decoder never ran".into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eyegen::{self, CanvasConfig, TaskFamily};

    fn ctx_for<'a>(
        rel: &'a str,
        dir: &'a Path,
        manifest: &'a InstanceManifest,
        try_index: u32,
    ) -> SolveContext<'a> {
        SolveContext { suite: Suite::Eyeballing, rel, dir, try_index, manifest }
    }

    #[test]
    fn noisy_wrong_answer_is_sticky_across_tries() {
        let inst =
            eyegen::generate_instance(TaskFamily::Midpoint, 42, &CanvasConfig::small()).unwrap();
        let truth = inst.truth;
        let manifest = InstanceManifest::Eyeballing(inst);
        let solver = ScriptedSolver::new(Profile::Noisy(0.0), 5);
        let dir = Path::new(".");
        let mut wrong = std::collections::BTreeSet::new();
        for t in 0..8 {
            let out = solver.solve(&ctx_for("x/000", dir, &manifest, t)).unwrap();
            let spoken = out.transcript.unwrap();
            let label = Label::ALL
                .into_iter()
                .find(|l| spoken.contains(l.phonetic()))
                .expect("transcript names an option");
            assert_ne!(label, truth);
            wrong.insert(label);
        }
        assert_eq!(wrong.len(), 1, "p=0 noisy solver must repeat one wrong option");
    }

    #[test]
    fn random_profile_varies_with_try_but_not_reruns() {
        let inst =
            eyegen::generate_instance(TaskFamily::Midpoint, 43, &CanvasConfig::small()).unwrap();
        let manifest = InstanceManifest::Eyeballing(inst);
        let solver = ScriptedSolver::new(Profile::Random, 5);
        let dir = Path::new(".");
        let picks: Vec<String> = (0..10)
            .map(|t| solver.solve(&ctx_for("x/000", dir, &manifest, t)).unwrap().transcript.unwrap())
            .collect();
        let picks2: Vec<String> = (0..10)
            .map(|t| solver.solve(&ctx_for("x/000", dir, &manifest, t)).unwrap().transcript.unwrap())
            .collect();
        assert_eq!(picks, picks2);
        assert!(picks.iter().collect::<std::collections::BTreeSet<_>>().len() > 1);
    }

    #[test]
    fn command_adapter_collects_frames_and_transcript() {
        let tmp = tempfile::tempdir().unwrap();
        let inst =
            eyegen::generate_instance(TaskFamily::Midpoint, 44, &CanvasConfig::small()).unwrap();
        eyegen::write_instance(tmp.path(), &inst).unwrap();
        let manifest = InstanceManifest::Eyeballing(inst);
        // The "decoder" copies the input image as the single frame and
        // writes a transcript naming Alpha.
        let adapter = CommandAdapter::new(
            "cp \"$VTB_INSTANCE_DIR/input.png\" \"$VTB_FRAMES_DIR/frame_00000.png\" && \
             printf 'The answer is Alpha.' > \"$VTB_FRAMES_DIR/audio.txt\"",
        );
        let out = adapter.solve(&ctx_for("x/000", tmp.path(), &manifest, 0)).unwrap();
        assert_eq!(out.frames.len(), 1);
        assert_eq!(out.transcript.as_deref(), Some("The answer is Alpha."));
    }

    #[test]
    fn command_adapter_reports_failure_after_retries() {
        let tmp = tempfile::tempdir().unwrap();
        let inst =
            eyegen::generate_instance(TaskFamily::Midpoint, 45, &CanvasConfig::small()).unwrap();
        eyegen::write_instance(tmp.path(), &inst).unwrap();
        let manifest = InstanceManifest::Eyeballing(inst);
        let adapter = CommandAdapter::new("exit 3")
            .with_retries(1, std::time::Duration::from_millis(1));
        let err = adapter.solve(&ctx_for("x/000", tmp.path(), &manifest, 0));
        assert!(matches!(err, Err(HarnessError::Adapter(_))));
    }
}
