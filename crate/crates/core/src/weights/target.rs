use std::fmt;

use serde::{Deserialize, Serialize};

use crate::paths::{analyze, enumerate_family, Family, Filter, Path, Step};
use crate::ring::{vars, Polynomial};

/// Step or peak weightings of the target families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetWeighting {
    /// Down steps `b`, unit flat steps `a`.
    MotzkinAb,
    /// Double flat steps `q`.
    SchroderQ,
    /// Every peak `t`.
    NarayanaT,
    /// Peaks at level 1 weigh `t + 1`, higher peaks `t`.
    LevelPeaks,
}

impl TargetWeighting {
    pub const ALL: [TargetWeighting; 4] = [
        TargetWeighting::MotzkinAb,
        TargetWeighting::SchroderQ,
        TargetWeighting::NarayanaT,
        TargetWeighting::LevelPeaks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TargetWeighting::MotzkinAb => "motzkin_ab",
            TargetWeighting::SchroderQ => "schroder_q",
            TargetWeighting::NarayanaT => "narayana_t",
            TargetWeighting::LevelPeaks => "level_peaks",
        }
    }

    pub fn parse(s: &str) -> Option<TargetWeighting> {
        TargetWeighting::ALL.into_iter().find(|w| w.name() == s)
    }
}

impl fmt::Display for TargetWeighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn target_weight(path: &Path, weighting: TargetWeighting) -> Polynomial {
    let steps = path.steps();
    let count = |s: Step| steps.iter().filter(|&&x| x == s).count() as u32;
    match weighting {
        TargetWeighting::MotzkinAb => &vars::b().pow(count(Step::D)) * &vars::a().pow(count(Step::F)),
        TargetWeighting::SchroderQ => vars::q().pow(count(Step::H)),
        TargetWeighting::NarayanaT => vars::t().pow(analyze(path).peaks.len() as u32),
        TargetWeighting::LevelPeaks => {
            let peaks = analyze(path).peaks;
            let low = peaks.iter().filter(|p| p.level == 1).count() as u32;
            let high = peaks.len() as u32 - low;
            &(&vars::t() + &Polynomial::one()).pow(low) * &vars::t().pow(high)
        }
    }
}

/// Sum of target weights over an enumerated, filtered family.
pub fn weight_sum_target(n: usize, family: Family, filter: Filter, weighting: TargetWeighting) -> Polynomial {
    let mut total = Polynomial::zero();
    for p in enumerate_family(family, n, filter) {
        total += &target_weight(&p, weighting);
    }
    total
}
