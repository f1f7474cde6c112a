//! End-to-end acceptance: one pass/fail line per criterion, tolerances
//! pinned in code. Run with `--nocapture` to watch the lines stream.

use image::RgbImage;
use sha2::{Digest, Sha256};
use std::path::Path;
use std::process::Command;
use std::time::Instant;
use vtb::arcbridge::{self, Shots};
use vtb::eyegen::{self, CanvasConfig, GivenElement, TaskFamily};
use vtb::geom::{pt, Point2};
use vtb::harness::adapter::{corrupt_first_cell, Profile, ScriptedSolver};
use vtb::harness::{self, report, run_eval, EvalConfig, EvalOutcome, Method, Suite};
use vtb::vpuzzle::{self, DiffMetric};

/// Binomial P(>=3 of 5) at p = 0.6; what 5-try majority voting converges to.
const VOTE_EXPECTED: f64 = 0.68256;
const VOTE_TOL: f64 = 0.03;
const RANDOM_BAND: (f64, f64) = (0.14, 0.26);
const GEN_BUDGET_SECS: f64 = 60.0;
const FERMAT_ORACLE_TOL: f64 = 1e-4;

struct Criteria {
    failures: Vec<usize>,
}

impl Criteria {
    fn record(&mut self, n: usize, ok: bool, detail: &str) {
        println!("acceptance criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures.push(n);
        }
    }
}

fn count_instances(root: &Path) -> usize {
    harness::discover_instances(root).map(|v| v.len()).unwrap_or(0)
}

/// Order-independent digest of a directory tree: sorted relative paths and
/// file bytes.
fn tree_hash(root: &Path) -> String {
    let mut files: Vec<_> = walkdir::WalkDir::new(root)
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().is_file())
        .map(|e| e.path().to_path_buf())
        .collect();
    files.sort();
    let mut h = Sha256::new();
    for f in &files {
        let rel = f.strip_prefix(root).unwrap();
        h.update(rel.to_string_lossy().as_bytes());
        h.update([0u8]);
        h.update(std::fs::read(f).unwrap());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn gen_cli(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_vtb"))
        .args(args)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn eval(
    root: &Path,
    log_name: &str,
    suite: Suite,
    method: Method,
    tries: u32,
    limit: Option<usize>,
    profile: Profile,
    master: u64,
) -> EvalOutcome {
    let cfg = EvalConfig { suite, method, tries, jobs: 1, limit };
    let solver = ScriptedSolver::new(profile, master);
    run_eval(root, &root.join(log_name), &cfg, &solver).expect("eval runs")
}

/// Coarse-to-fine scan minimizing total distance to the three vertices;
/// independent of the closed-form/iterative solver under test.
fn fermat_grid_oracle(a: Point2, b: Point2, c: Point2) -> Point2 {
    let cost = |p: Point2| p.dist(a) + p.dist(b) + p.dist(c);
    let mut best = pt((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0);
    let mut span = [a, b, c]
        .iter()
        .flat_map(|p| [p.x, p.y])
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1.0);
    for _ in 0..12 {
        let step = span / 10.0;
        let center = best;
        for i in -10..=10 {
            for j in -10..=10 {
                let p = pt(center.x + i as f64 * step, center.y + j as f64 * step);
                if cost(p) < cost(best) {
                    best = p;
                }
            }
        }
        span /= 5.0;
    }
    best
}

#[test]
fn acceptance_criteria() {
    let mut c = Criteria { failures: Vec::new() };
    let tmp = tempfile::tempdir().expect("tempdir");
    let root = tmp.path();
    let eye = root.join("eye");
    let maze = root.join("maze");

    // 1: generation scale, speed, and byte-identical regeneration
    let started = Instant::now();
    let gen_ok = gen_cli(&["gen", "eyeballing", "--n", "50", "--seed", "7", "--out", eye.to_str().unwrap()])
        && gen_cli(&["gen", "maze", "--n", "50", "--seed", "7", "--out", maze.to_str().unwrap()]);
    let elapsed = started.elapsed().as_secs_f64();
    let n_eye = count_instances(&eye);
    let n_maze = count_instances(&maze);
    let eye2 = root.join("eye2");
    let maze2 = root.join("maze2");
    let regen_ok = gen_cli(&["gen", "eyeballing", "--n", "50", "--seed", "7", "--out", eye2.to_str().unwrap()])
        && gen_cli(&["gen", "maze", "--n", "50", "--seed", "7", "--out", maze2.to_str().unwrap()])
        && tree_hash(&eye) == tree_hash(&eye2)
        && tree_hash(&maze) == tree_hash(&maze2);
    std::fs::remove_dir_all(&eye2).ok();
    std::fs::remove_dir_all(&maze2).ok();
    c.record(
        1,
        gen_ok && n_eye == 1050 && n_maze == 150 && elapsed < GEN_BUDGET_SECS && regen_ok,
        &format!(
            "gen eyeballing -> {n_eye} (want 1050), gen maze -> {n_maze} (want 150) in {elapsed:.1}s, regeneration byte-identical: {regen_ok}"
        ),
    );

    // 2: oracle over every generated instance + independent Fermat oracle
    let dirs = harness::discover_instances(&eye).expect("eye tree");
    let mut oracle_pass = 0usize;
    let mut fermat_checked = 0usize;
    let mut fermat_max_err = 0.0f64;
    for (_, dir) in &dirs {
        let inst = eyegen::load_instance(dir).expect("manifest loads");
        if eyegen::oracle_check(&inst) {
            oracle_pass += 1;
        }
        if inst.family == TaskFamily::FermatPoint {
            let tri = inst
                .given
                .iter()
                .find_map(|g| match g {
                    GivenElement::Polygon { points, .. } if points.len() == 3 => {
                        Some([points[0], points[1], points[2]])
                    }
                    _ => None,
                })
                .expect("fermat instance states its triangle");
            let iterative = vtb::geom::fermat_point(tri[0], tri[1], tri[2]).unwrap();
            let oracle = fermat_grid_oracle(tri[0], tri[1], tri[2]);
            fermat_max_err = fermat_max_err.max(iterative.dist(oracle));
            // the truth marker sits on the iterative point
            if inst.options.get(inst.truth).dist(iterative) < 1e-9 {
                fermat_checked += 1;
            }
        }
    }
    c.record(
        2,
        oracle_pass == 1050 && fermat_checked == 50 && fermat_max_err <= FERMAT_ORACLE_TOL,
        &format!(
            "oracle_check {oracle_pass}/1050, fermat grid-oracle max err {fermat_max_err:.2e} (tol {FERMAT_ORACLE_TOL:.0e})"
        ),
    );

    // 3: two-sided verifiers on all four suites
    let arc = root.join("arc");
    arcbridge::render_batch(&arc, &arcbridge::synthetic_batch(100, 11), Shots::All).expect("arc tree");
    let vp = root.join("vp");
    vpuzzle::generate_batch(&vp, None, 50, 13).expect("vpuzzle tree");

    let mut two_sided = true;
    let mut detail = String::new();
    for (idx, method) in [Method::Audio, Method::LastFrame, Method::MajorFrame].iter().enumerate() {
        let good = eval(&eye, &format!("p{idx}.jsonl"), Suite::Eyeballing, *method, 1, None, Profile::Perfect, 1);
        let bad = eval(&eye, &format!("d{idx}.jsonl"), Suite::Eyeballing, *method, 1, None, Profile::Distractor, 1);
        two_sided &= good.records == 1050 && good.accuracy == 1.0 && bad.accuracy == 0.0;
        detail.push_str(&format!("{}={:.0}/{:.0}% ", method.id(), good.accuracy * 100.0, bad.accuracy * 100.0));
    }
    for (suite, tree, n) in [(Suite::Maze, &maze, 150), (Suite::Arc, &arc, 100), (Suite::Vpuzzle, &vp, 500)] {
        let m = Method::default_for(suite);
        let good = eval(tree, "p.jsonl", suite, m, 1, None, Profile::Perfect, 1);
        let bad = eval(tree, "d.jsonl", suite, m, 1, None, Profile::Distractor, 1);
        two_sided &= good.records == n && good.accuracy == 1.0 && bad.accuracy == 0.0;
        detail.push_str(&format!("{}={:.0}/{:.0}% ", suite.id(), good.accuracy * 100.0, bad.accuracy * 100.0));
    }
    c.record(3, two_sided, &format!("perfect/distractor accuracy: {}", detail.trim_end()));

    // 4: uniform-random calibration over >=1000 trials
    let small = root.join("small");
    eyegen::generate_batch(&small, Some(&[TaskFamily::Midpoint]), 2000, 21, &CanvasConfig::small())
        .expect("small tree");
    let rand_out = eval(&small, "rand.jsonl", Suite::Eyeballing, Method::LastFrame, 1, None, Profile::Random, 3);
    let in_band = rand_out.accuracy >= RANDOM_BAND.0 && rand_out.accuracy <= RANDOM_BAND.1;
    c.record(
        4,
        rand_out.records == 2000 && in_band,
        &format!(
            "random accuracy {:.3} over {} trials (band [{}, {}])",
            rand_out.accuracy, rand_out.records, RANDOM_BAND.0, RANDOM_BAND.1
        ),
    );

    // 5: majority voting follows the binomial tail
    let noisy_out = eval(&small, "noisy.jsonl", Suite::Eyeballing, Method::LastFrame, 5, None, Profile::Noisy(0.6), 5);
    let records = report::load_records(&small.join("noisy.jsonl")).expect("noisy log");
    let agg = report::aggregate(&records);
    let vote = agg.vote.expect("multi-try vote stats");
    let vote_ok = (vote.voted - VOTE_EXPECTED).abs() <= VOTE_TOL && vote.voted >= vote.single;
    c.record(
        5,
        noisy_out.records == 10_000 && vote.instances == 2000 && vote_ok,
        &format!(
            "single {:.3}, 5-try vote {:.3} over {} instances (expect {VOTE_EXPECTED} +/- {VOTE_TOL})",
            vote.single, vote.voted, vote.instances
        ),
    );

    // 6: diff metric separates solution from distractors; threshold at 245
    let vp_dirs = harness::discover_instances(&vp).expect("vp tree");
    let mut diff_ok = 0usize;
    for (_, dir) in &vp_dirs {
        let inst = vpuzzle::load_instance(dir).expect("vp manifest");
        let (cands, area) = vpuzzle::load_candidates(dir, &inst).expect("vp candidates");
        let self_zero = vpuzzle::diff(inst.metric, &cands[0], &cands[0], &area).unwrap() == 0.0;
        let separated = cands[1..]
            .iter()
            .all(|d| vpuzzle::diff(inst.metric, d, &cands[0], &area).unwrap() > 0.0);
        if self_zero && separated {
            diff_ok += 1;
        }
    }
    let white = RgbImage::from_pixel(1, 1, image::Rgb([255, 255, 255]));
    let ink = RgbImage::from_pixel(1, 1, image::Rgb([0, 0, 0]));
    let gray = |v: u8| RgbImage::from_pixel(1, 1, image::Rgb([v, v, v]));
    let at_threshold = vpuzzle::diff(DiffMetric::Shape, &gray(245), &ink, &white).unwrap();
    let above_threshold = vpuzzle::diff(DiffMetric::Shape, &gray(246), &ink, &white).unwrap();
    c.record(
        6,
        diff_ok == 500 && at_threshold == 0.0 && above_threshold == 1.0,
        &format!("diff sanity {diff_ok}/500, shape binarization 245->{at_threshold} 246->{above_threshold}"),
    );

    // 7: grid metrics are exact; 1-shot shows one train pair
    let task = arcbridge::synthetic_task(42);
    let truth = &task.test_pair().output;
    let cells = truth.rows() * truth.cols();
    let corrupted = corrupt_first_cell(truth);
    let expected_acc = 1.0 - 1.0 / cells as f64;
    let direct_ok = !arcbridge::exact_match(&corrupted, truth)
        && arcbridge::pixel_accuracy(&corrupted, truth).unwrap() == expected_acc;
    let (img, info) = arcbridge::render_arc_task(&task, Shots::All).unwrap();
    let painted = arcbridge::render_answer(&img, &corrupted, &info);
    let extracted = arcbridge::extract_answer_grid(&painted, &info);
    let painted_ok = !arcbridge::exact_match(&extracted, truth)
        && arcbridge::pixel_accuracy(&extracted, truth).unwrap() == expected_acc;
    let hist = arcbridge::accuracy_histogram(&[0.0, 0.34, 0.35, 0.64, 0.65, 1.0]);
    let (_, one_info) = arcbridge::render_arc_task(&task, Shots::One).unwrap();
    let shots_ok = one_info.rows == 2 && info.rows == task.train.len() + 1;
    c.record(
        7,
        cells == 64 && direct_ok && painted_ok && hist == [2, 2, 2] && shots_ok,
        &format!(
            "corrupt 1 of {cells} cells -> accuracy exactly {expected_acc}, histogram {hist:?}, 1-shot rows {}",
            one_info.rows
        ),
    );

    // 8: dual-modality inclusion-exclusion
    let mut identity_ok = true;
    for (profile, master) in [(Profile::Noisy(0.7), 9), (Profile::Random, 17)] {
        let tag = match profile {
            Profile::Random => "r",
            _ => "n",
        };
        eval(&small, &format!("v_{tag}.jsonl"), Suite::Eyeballing, Method::LastFrame, 1, None, profile, master);
        eval(&small, &format!("a_{tag}.jsonl"), Suite::Eyeballing, Method::Audio, 1, None, profile, master);
        let v = report::load_records(&small.join(format!("v_{tag}.jsonl"))).unwrap();
        let a = report::load_records(&small.join(format!("a_{tag}.jsonl"))).unwrap();
        let counts = report::dual_modality(&v.iter().collect::<Vec<_>>(), &a.iter().collect::<Vec<_>>());
        identity_ok &= counts.n == 2000 && counts.identity_holds();
    }
    let fixture = report::gsm8k_reference();
    let fixture_ok = fixture.identity_holds() && fixture.percentages() == [75.7, 98.9, 75.7, 98.9];
    c.record(
        8,
        identity_ok && fixture_ok,
        &format!("identity on live runs: {identity_ok}, reference fixture {:?}: {fixture_ok}", fixture.percentages()),
    );

    // 9: a killed run, resumed, leaves the same log as an uninterrupted one
    let resume_root = root.join("resume");
    eyegen::generate_batch(&resume_root, Some(&[TaskFamily::Midpoint]), 25, 31, &CanvasConfig::small())
        .expect("resume tree");
    let partial = eval(&resume_root, "kill.jsonl", Suite::Eyeballing, Method::LastFrame, 2, Some(17), Profile::Noisy(0.5), 2);
    let resumed = eval(&resume_root, "kill.jsonl", Suite::Eyeballing, Method::LastFrame, 2, None, Profile::Noisy(0.5), 2);
    let reference = eval(&resume_root, "full.jsonl", Suite::Eyeballing, Method::LastFrame, 2, None, Profile::Noisy(0.5), 2);
    let killed_log = std::fs::read(resume_root.join("kill.jsonl")).unwrap();
    let full_log = std::fs::read(resume_root.join("full.jsonl")).unwrap();
    c.record(
        9,
        partial.written == 17
            && partial.pending_left == 33
            && resumed.skipped == 17
            && reference.written == 50
            && !killed_log.is_empty()
            && killed_log == full_log,
        &format!(
            "interrupted after {} of 50, resumed {} more; logs byte-identical: {}",
            partial.written,
            resumed.written,
            killed_log == full_log
        ),
    );

    assert!(c.failures.is_empty(), "acceptance criteria failed: {:?}", c.failures);
}
