//! LLM-judge interface for free-form answers.
//!
//! The geometric suites are scored programmatically; this hook exists for
//! text-centric questions (math word problems and the like) where deciding
//! whether a frame or transcript "contains the correct answer" needs a
//! vision/language judge. The prompt constants are the exact texts an
//! external judge should receive; implementations supply the transport.

use super::HarnessError;
use image::RgbImage;

/// Environment variable carrying the judge API key, when a remote
/// implementation is in use.
pub const ENV_API_KEY: &str = "VTB_API_KEY";

pub const VIDEO_JUDGE_SYSTEM_PROMPT: &str = "You are an expert answer checker for educational videos. Your task is to determine if an image (the last frame of a solution video) displays the correct answer to a given question.

Rules:
0. First, determine the visible answer from the image using this priority:
   - If there is an explicit statement indicating the answer (e.g., \"The answer is ...\"), use that answer.
   - Else, check for an answer marked by a symbol such as box, circle, underline, arrow, etc. If multiple positions are marked but show different results, respond 'no' immediately.
   - Else, use the bottom-rightmost result in the image as the visible answer.
1. Compare the visible answer in the image with the provided correct answer
2. Be strict but reasonable - minor formatting differences are acceptable if the core answer is correct
3. For multiple choice questions, check if the correct option (A, B, C, etc.) is clearly marked or highlighted
4. For numerical answers, check if the number matches (ignore minor formatting like \"4\" vs \"4.0\")
5. For text answers, check if the key content matches (ignore case sensitivity and minor punctuation)
6. You must respond with ONLY 'yes' or 'no', nothing else";

pub const AUDIO_JUDGE_SYSTEM_PROMPT: &str = "You are an expert answer checker for educational video transcripts. Your task is to determine if an audio transcript from a solution video contains the correct answer to a given question.

Rules:
1. Check if the transcript explicitly states or clearly implies the correct answer
2. Be lenient with phrasing - the transcript may explain the answer in different words
3. For multiple choice questions, check if the correct option (A, B, C, etc.) is mentioned
4. For numerical answers, check if the number is stated (ignore surrounding explanation)
5. For text answers, check if the key concept is explained correctly
6. Common phrases like \"the correct answer is...\", \"the answer is...\", \"it should be...\" indicate the answer
7. You must respond with ONLY 'yes' or 'no', nothing else";

/// User message accompanying the last frame.
pub fn video_judge_user_prompt(question: &str, correct_answer: &str) -> String {
    format!("Question: {question}\n\nCorrect answer: {correct_answer}\n\nDoes the image show the correct answer?")
}

/// User message accompanying the transcript.
pub fn audio_judge_user_prompt(question: &str, correct_answer: &str, transcript: &str) -> String {
    format!("Question: {question}\n\nCorrect answer: {correct_answer}\n\nAudio transcript: {transcript}\n\nDoes the transcript provide the correct answer?")
}

pub trait JudgeClient {
    /// Does the frame display the correct answer?
    fn judge_frame(
        &self,
        question: &str,
        correct_answer: &str,
        frame: &RgbImage,
    ) -> Result<bool, HarnessError>;

    /// Does the transcript state the correct answer?
    fn judge_transcript(
        &self,
        question: &str,
        correct_answer: &str,
        transcript: &str,
    ) -> Result<bool, HarnessError>;
}

/// Offline stand-in: accepts a transcript that literally contains the
/// answer. Frames cannot be judged without a vision model.
pub struct LexicalJudge;

impl JudgeClient for LexicalJudge {
    fn judge_frame(
        &self,
        _question: &str,
        _correct_answer: &str,
        _frame: &RgbImage,
    ) -> Result<bool, HarnessError> {
        Err(HarnessError::Adapter(
            "frame judging needs an external judge (set VTB_API_KEY and plug in a JudgeClient)"
                .into(),
        ))
    }

    fn judge_transcript(
        &self,
        _question: &str,
        correct_answer: &str,
        transcript: &str,
    ) -> Result<bool, HarnessError> {
        Ok(transcript.to_lowercase().contains(&correct_answer.to_lowercase()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn user_prompts_fill_in_the_fields() {
        let v = video_judge_user_prompt("What is 2+2?", "4");
        assert_eq!(
            v,
            "Question: What is 2+2?\n\nCorrect answer: 4\n\nDoes the image show the correct answer?"
        );
        let a = audio_judge_user_prompt("What is 2+2?", "4", "So the answer is 4.");
        assert!(a.starts_with("Question: What is 2+2?\n\nCorrect answer: 4\n\nAudio transcript: "));
        assert!(a.ends_with("Does the transcript provide the correct answer?"));
    }

    #[test]
    fn system_prompts_pin_the_required_rules() {
        assert!(VIDEO_JUDGE_SYSTEM_PROMPT.contains("bottom-rightmost result"));
        assert!(VIDEO_JUDGE_SYSTEM_PROMPT.contains("ONLY 'yes' or 'no'"));
        assert!(AUDIO_JUDGE_SYSTEM_PROMPT.contains("Be lenient with phrasing"));
        assert!(AUDIO_JUDGE_SYSTEM_PROMPT.contains("ONLY 'yes' or 'no'"));
    }

    #[test]
    fn lexical_judge_checks_containment() {
        let j = LexicalJudge;
        assert!(j.judge_transcript("q", "42", "the answer is 42!").unwrap());
        assert!(!j.judge_transcript("q", "42", "the answer is 41").unwrap());
        let frame = RgbImage::new(2, 2);
        assert!(j.judge_frame("q", "42", &frame).is_err());
    }
}
