//! Extract verdicts from synthetic answer videos: red-marker detection on
//! the last frame, a majority over sampled frames, and the spoken answer.
//!
//!     cargo run --example judge_frames

use vtb::eyegen::{self, CanvasConfig, Label, TaskFamily};
use vtb::judge::{self, FrameSet};
use vtb::raster::{Canvas, RED};

fn main() -> anyhow::Result<()> {
    let inst = eyegen::generate_instance(TaskFamily::Midpoint, 99, &CanvasConfig::default())?;
    let (w, h) = inst.canvas;
    println!("truth is {} at {:?}", inst.truth, inst.options.get(inst.truth));

    // a frame with a red dot on a given option
    let frame_on = |label: Label| {
        let mut c = Canvas::new(w, h, vtb::raster::WHITE);
        c.disc(inst.options.get(label), 9.0, RED);
        c.into_image()
    };

    // clip that wanders over B before settling on the truth
    let wrong = Label::from_index((inst.truth.index() + 1) % 5);
    let mut frames = vec![frame_on(wrong); 4];
    frames.extend(vec![frame_on(inst.truth); 12]);
    let fs = FrameSet::new(frames, Some(format!("The answer is {}.", inst.truth.phonetic())))?;

    println!("last frame verdict:  {:?}", judge::last_frame_verdict(&fs, &inst.options));
    println!(
        "major frame verdict: {:?} (sampled frames {:?})",
        judge::major_frame_verdict(&fs, &inst.options),
        fs.sampled_indices()
    );
    let transcript = fs.transcript.clone().unwrap();
    println!("audio verdict:       {:?} from {transcript:?}", judge::audio_option(&transcript));

    // the spoken channel only accepts whole phonetic words
    for t in ["I think it's charlie", "Charlien maybe?", "delta... no, Echo"] {
        println!("audio {:?} -> {:?}", t, judge::audio_option(t));
    }

    // majority vote across independent tries; ties go to the lowest label
    let votes = [Some(Label::C), Some(Label::A), Some(Label::C), None, Some(Label::A)];
    println!("vote {:?} -> {:?}", votes, judge::self_consistency_vote(&votes));
    Ok(())
}
