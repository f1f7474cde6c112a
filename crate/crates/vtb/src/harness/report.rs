//! Turning result logs into accuracy tables and modality summaries.

use super::{HarnessError, Method, RunRecord};
use crate::arcbridge;
use crate::eyegen::{Label, TaskFamily};
use crate::judge::self_consistency_vote;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct GroupStats {
    pub attempts: usize,
    pub instances: usize,
    pub correct: usize,
}

impl GroupStats {
    pub fn accuracy(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.correct as f64 / self.attempts as f64
        }
    }
}

/// Majority-vote accuracy across each instance's tries, next to the plain
/// per-try accuracy over the same records.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VoteStats {
    pub instances: usize,
    pub single: f64,
    pub voted: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub overall: GroupStats,
    pub by_group: BTreeMap<String, GroupStats>,
    pub vote: Option<VoteStats>,
    /// Unweighted mean accuracy per eyeballing category, when the groups are
    /// eyeballing families.
    pub category_means: Option<BTreeMap<String, f64>>,
    pub mean_pixel_accuracy: Option<f64>,
    pub pixel_histogram: Option<[usize; 3]>,
}

fn group_of(instance: &str) -> &str {
    instance.rsplit_once('/').map(|(g, _)| g).unwrap_or(instance)
}

pub fn aggregate(records: &[RunRecord]) -> Aggregate {
    let mut by_group: BTreeMap<String, GroupStats> = BTreeMap::new();
    let mut overall = GroupStats::default();
    let mut instances: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        let g = by_group.entry(group_of(&r.instance).to_string()).or_default();
        g.attempts += 1;
        overall.attempts += 1;
        if r.correct {
            g.correct += 1;
            overall.correct += 1;
        }
        instances.entry(&r.instance).or_default().push(r);
    }
    overall.instances = instances.len();
    let mut per_group_instances: BTreeMap<&str, usize> = BTreeMap::new();
    for inst in instances.keys() {
        *per_group_instances.entry(group_of(inst)).or_default() += 1;
    }
    for (g, n) in per_group_instances {
        if let Some(stats) = by_group.get_mut(g) {
            stats.instances = n;
        }
    }

    // Vote column: only meaningful with labeled answers and several tries.
    let multi_try = instances.values().any(|rs| rs.len() > 1);
    let labeled = records.iter().any(|r| r.answer.is_some() && r.truth.is_some());
    let vote = (multi_try && labeled).then(|| {
        let mut voted_correct = 0usize;
        let mut n = 0usize;
        for rs in instances.values() {
            let truth = match rs.iter().find_map(|r| r.truth.as_deref()) {
                Some(t) => t,
                None => continue,
            };
            let mut rs = rs.clone();
            rs.sort_by_key(|r| r.try_index);
            let verdicts: Vec<Option<Label>> =
                rs.iter().map(|r| r.answer.as_deref().and_then(|a| a.parse().ok())).collect();
            let winner = self_consistency_vote(&verdicts);
            if winner.map(|l| l.to_string()).as_deref() == Some(truth) {
                voted_correct += 1;
            }
            n += 1;
        }
        VoteStats {
            instances: n,
            single: overall.accuracy(),
            voted: if n == 0 { 0.0 } else { voted_correct as f64 / n as f64 },
        }
    });

    // Category means appear when every group is a known eyeballing family.
    let families: Option<Vec<TaskFamily>> =
        by_group.keys().map(|g| TaskFamily::from_id(g)).collect();
    let category_means = families.filter(|f| !f.is_empty()).map(|fams| {
        let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
        for (fam, (_, stats)) in fams.iter().zip(&by_group) {
            let e = sums.entry(fam.category().display_name().to_string()).or_default();
            e.0 += stats.accuracy();
            e.1 += 1;
        }
        sums.into_iter().map(|(k, (s, n))| (k, s / n as f64)).collect()
    });

    let accs: Vec<f64> = records.iter().filter_map(|r| r.pixel_accuracy).collect();
    let (mean_pixel_accuracy, pixel_histogram) = if accs.is_empty() {
        (None, None)
    } else {
        (
            Some(accs.iter().sum::<f64>() / accs.len() as f64),
            Some(arcbridge::accuracy_histogram(&accs)),
        )
    };

    Aggregate { overall, by_group, vote, category_means, mean_pixel_accuracy, pixel_histogram }
}

/// Records for one adapter+method slice of a log.
pub fn slice<'a>(
    records: &'a [RunRecord],
    adapter: Option<&str>,
    method: Option<Method>,
) -> Vec<&'a RunRecord> {
    records
        .iter()
        .filter(|r| adapter.is_none_or(|a| r.adapter == a))
        .filter(|r| method.is_none_or(|m| r.method == m))
        .collect()
}

pub fn render_text_report(records: &[RunRecord], title: &str) -> String {
    let owned: Vec<RunRecord> = records.to_vec();
    let agg = aggregate(&owned);
    let mut out = String::new();
    out.push_str(&format!("== {title} ==\n"));
    out.push_str(&format!(
        "{:<28} {:>9} {:>8} {:>9}\n",
        "group", "instances", "tries", "accuracy"
    ));
    for (g, s) in &agg.by_group {
        out.push_str(&format!(
            "{:<28} {:>9} {:>8} {:>8.1}%\n",
            g,
            s.instances,
            s.attempts,
            100.0 * s.accuracy()
        ));
    }
    out.push_str(&format!(
        "{:<28} {:>9} {:>8} {:>8.1}%\n",
        "overall",
        agg.overall.instances,
        agg.overall.attempts,
        100.0 * agg.overall.accuracy()
    ));
    if let Some(cats) = &agg.category_means {
        for (c, m) in cats {
            out.push_str(&format!("category mean [{c}]: {:.1}%\n", 100.0 * m));
        }
    }
    if let Some(v) = &agg.vote {
        out.push_str(&format!(
            "single-try {:.1}%  vs  vote over tries {:.1}%  ({} instances)\n",
            100.0 * v.single,
            100.0 * v.voted,
            v.instances
        ));
    }
    if let Some(mean) = agg.mean_pixel_accuracy {
        let h = agg.pixel_histogram.unwrap();
        out.push_str(&format!(
            "pixel accuracy mean {:.3}; histogram <0.35: {}, 0.35-0.65: {}, >=0.65: {}\n",
            mean, h[0], h[1], h[2]
        ));
    }
    out
}

/// Correctness counts of the same attempts judged through two modalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModalityCounts {
    pub n: usize,
    pub video: usize,
    pub audio: usize,
    pub both: usize,
    pub either: usize,
}

impl ModalityCounts {
    /// Inclusion-exclusion over the same attempt set; holds for any input.
    pub fn identity_holds(&self) -> bool {
        self.video + self.audio == self.both + self.either
    }

    /// [video, audio, both, either] as percentages.
    pub fn percentages(&self) -> [f64; 4] {
        let pct = |c: usize| 100.0 * c as f64 / self.n as f64;
        [pct(self.video), pct(self.audio), pct(self.both), pct(self.either)]
    }
}

/// Joins a video-judged log slice with an audio-judged one on
/// (instance, try) and counts correctness in each, both, and either.
pub fn dual_modality(video: &[&RunRecord], audio: &[&RunRecord]) -> ModalityCounts {
    let key = |r: &RunRecord| (r.instance.clone(), r.try_index);
    let vm: BTreeMap<_, bool> = video.iter().map(|r| (key(r), r.correct)).collect();
    let am: BTreeMap<_, bool> = audio.iter().map(|r| (key(r), r.correct)).collect();
    let mut c = ModalityCounts { n: 0, video: 0, audio: 0, both: 0, either: 0 };
    for (k, &v) in &vm {
        let Some(&a) = am.get(k) else { continue };
        c.n += 1;
        c.video += v as usize;
        c.audio += a as usize;
        c.both += (v && a) as usize;
        c.either += (v || a) as usize;
    }
    c
}

/// The published GSM8K reference row (75.7 / 98.9 / 75.7 / 98.9 over 1000
/// problems), used as a fixture to pin the identity and the formatting.
pub fn gsm8k_reference() -> ModalityCounts {
    ModalityCounts { n: 1000, video: 757, audio: 989, both: 757, either: 989 }
}

pub fn load_records(log: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    super::read_log(log)
}
