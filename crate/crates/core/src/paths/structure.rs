//! Valley-uniform paths as sequences of primitive parts.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{analyze, Family, Path, PathError, Step};

/// A primitive valley-uniform part: either a pyramid `u^h d^h` or
/// `u^k u^{i_1} d^{i_1} ... u^{i_r} d^{i_r} d^k` with `r >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Part {
    Pyr { h: usize },
    Block { k: usize, heights: Vec<usize> },
}

impl Part {
    pub fn size(&self) -> usize {
        match self {
            Part::Pyr { h } => *h,
            Part::Block { k, heights } => k + heights.iter().sum::<usize>(),
        }
    }

    pub fn is_valid(&self) -> bool {
        match self {
            Part::Pyr { h } => *h >= 1,
            Part::Block { k, heights } => *k >= 1 && heights.len() >= 2 && heights.iter().all(|&i| i >= 1),
        }
    }

    pub fn push_steps(&self, out: &mut Vec<Step>) {
        let run = |out: &mut Vec<Step>, s: Step, n: usize| out.extend(std::iter::repeat_n(s, n));
        match self {
            Part::Pyr { h } => {
                run(out, Step::U, *h);
                run(out, Step::D, *h);
            }
            Part::Block { k, heights } => {
                run(out, Step::U, *k);
                for &i in heights {
                    run(out, Step::U, i);
                    run(out, Step::D, i);
                }
                run(out, Step::D, *k);
            }
        }
    }

    pub fn to_path(&self) -> Path {
        let mut steps = Vec::with_capacity(2 * self.size());
        self.push_steps(&mut steps);
        Path::new_unchecked(Family::Dyck, steps)
    }

    /// Reads one primitive Dyck factor back as a part.
    pub fn from_primitive(factor: &Path) -> Result<Part, PathError> {
        let stats = analyze(factor);
        let part = match stats.valleys.first() {
            None => Part::Pyr { h: factor.size() },
            Some(v) => {
                let k = v.level;
                if k < 1 || stats.valleys.iter().any(|w| w.level != k) {
                    return Err(PathError::NotValleyUniform);
                }
                let heights = stats.peaks.iter().map(|p| (p.level - k) as usize).collect();
                Part::Block { k: k as usize, heights }
            }
        };
        if part.is_valid() && part.to_path() == *factor {
            Ok(part)
        } else {
            Err(PathError::NotValleyUniform)
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Pyr { h } => write!(f, "Pyr({h})"),
            Part::Block { k, heights } => {
                let hs: Vec<String> = heights.iter().map(|i| i.to_string()).collect();
                write!(f, "Block({k},[{}])", hs.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VStructure {
    pub parts: Vec<Part>,
}

impl VStructure {
    pub fn new(parts: Vec<Part>) -> VStructure {
        VStructure { parts }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(Part::size).sum()
    }

    pub fn to_path(&self) -> Path {
        let mut steps = Vec::with_capacity(2 * self.size());
        for p in &self.parts {
            p.push_steps(&mut steps);
        }
        Path::new_unchecked(Family::Dyck, steps)
    }

    pub fn from_path(path: &Path) -> Result<VStructure, PathError> {
        if path.family() != Family::Dyck {
            return Err(PathError::WrongFamily { expected: Family::Dyck, found: path.family() });
        }
        let parts = path
            .primitive_factors()
            .iter()
            .map(Part::from_primitive)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VStructure { parts })
    }
}

impl fmt::Display for VStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", ps.join(", "))
    }
}

/// Whether every primitive factor of a Dyck path has all of its valleys on
/// one level.
pub fn is_in_v(path: &Path) -> bool {
    VStructure::from_path(path).is_ok()
}
