use serde::{Deserialize, Serialize};

use super::{Path, Step};

/// A peak or valley: x-coordinate of the turning point and its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremum {
    pub position: usize,
    pub level: i64,
}

/// A maximal pyramid `u^h d^h`. `position` is the x-coordinate where it
/// starts; `altitude` is the level of its base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pyramid {
    pub height: usize,
    pub altitude: i64,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStats {
    pub peaks: Vec<Extremum>,
    pub valleys: Vec<Extremum>,
    pub pyramids: Vec<Pyramid>,
    /// Step indices (exclusive ends) at which primitive factors close.
    pub factor_ends: Vec<usize>,
    pub first_step: Option<Step>,
    pub starts_with_ud: bool,
}

pub fn analyze(path: &Path) -> PathStats {
    let steps = path.steps();
    let mut xs = Vec::with_capacity(steps.len() + 1);
    let mut levels = Vec::with_capacity(steps.len() + 1);
    let (mut x, mut lvl) = (0usize, 0i64);
    xs.push(x);
    levels.push(lvl);
    for s in steps {
        x += s.width();
        lvl += s.rise();
        xs.push(x);
        levels.push(lvl);
    }

    let mut peaks = Vec::new();
    let mut valleys = Vec::new();
    let mut pyramids = Vec::new();
    for i in 1..steps.len() {
        let point = Extremum { position: xs[i], level: levels[i] };
        match (steps[i - 1], steps[i]) {
            (Step::U, Step::D) => {
                peaks.push(point);
                let ups = steps[..i].iter().rev().take_while(|&&s| s == Step::U).count();
                let downs = steps[i..].iter().take_while(|&&s| s == Step::D).count();
                let h = ups.min(downs);
                pyramids.push(Pyramid {
                    height: h,
                    altitude: levels[i] - h as i64,
                    position: xs[i] - h,
                });
            }
            (Step::D, Step::U) => valleys.push(point),
            _ => {}
        }
    }
    let factor_ends = (1..=steps.len()).filter(|&i| levels[i] == 0).collect();
    PathStats {
        peaks,
        valleys,
        pyramids,
        factor_ends,
        first_step: steps.first().copied(),
        starts_with_ud: path.starts_with_ud(),
    }
}
