//! Lattice path model: steps, families, validation and concatenation.

mod analyze;
mod enumerate;
mod render;
mod structure;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use analyze::{analyze, Extremum, PathStats, Pyramid};
pub use enumerate::{enumerate_family, enumerate_v_structures, primitive_parts, Filter};
pub use render::render_ascii;
pub use structure::{is_in_v, Part, VStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("illegal character `{ch}` at position {pos}")]
    IllegalCharacter { ch: char, pos: usize },
    #[error("path goes below the x-axis at step {pos}")]
    NegativeLevel { pos: usize },
    #[error("path ends at level {level}, expected 0")]
    NonzeroEnd { level: i64 },
    #[error("step `{step}` at position {pos} is not allowed in a {family} path")]
    FamilyViolation { step: Step, pos: usize, family: Family },
    #[error("path is not valley-uniform")]
    NotValleyUniform,
    #[error("operation needs a {expected} path, got {found}")]
    WrongFamily { expected: Family, found: Family },
}

/// A single step. `F` is the unit flat step `(1,0)`, `H` the double flat
/// step `(2,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    U,
    D,
    F,
    H,
}

impl Step {
    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::U),
            'D' => Some(Step::D),
            'F' => Some(Step::F),
            'H' => Some(Step::H),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
            Step::F => 'F',
            Step::H => 'H',
        }
    }

    pub fn rise(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
            Step::F | Step::H => 0,
        }
    }

    pub fn width(self) -> usize {
        match self {
            Step::H => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Dyck,
    Motzkin,
    SchroderLarge,
    SchroderSmall,
    /// Unconstrained in sign; only the endpoints are fixed.
    Delannoy,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Dyck,
        Family::Motzkin,
        Family::SchroderLarge,
        Family::SchroderSmall,
        Family::Delannoy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dyck => "dyck",
            Family::Motzkin => "motzkin",
            Family::SchroderLarge => "schroder_large",
            Family::SchroderSmall => "schroder_small",
            Family::Delannoy => "delannoy",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn allows(self, step: Step) -> bool {
        match self {
            Family::Dyck => matches!(step, Step::U | Step::D),
            Family::Motzkin => matches!(step, Step::U | Step::D | Step::F),
            Family::SchroderLarge | Family::SchroderSmall | Family::Delannoy => {
                matches!(step, Step::U | Step::D | Step::H)
            }
        }
    }

    /// Step alphabet in enumeration order.
    pub(crate) fn alphabet(self) -> &'static [Step] {
        match self {
            Family::Dyck => &[Step::U, Step::D],
            Family::Motzkin => &[Step::U, Step::D, Step::F],
            _ => &[Step::U, Step::D, Step::H],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated path of one family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PathJson", into = "PathJson")]
pub struct Path {
    family: Family,
    steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    family: Family,
    steps: String,
}

impl TryFrom<PathJson> for Path {
    type Error = PathError;
    fn try_from(j: PathJson) -> Result<Self, PathError> {
        parse_path(&j.steps, j.family)
    }
}

impl From<Path> for PathJson {
    fn from(p: Path) -> Self {
        PathJson { family: p.family, steps: p.step_string() }
    }
}

/// Parses a step string over `{U, D, F, H}` and validates it for `family`.
pub fn parse_path(text: &str, family: Family) -> Result<Path, PathError> {
    let steps = text
        .chars()
        .enumerate()
        .map(|(pos, ch)| Step::from_char(ch).ok_or(PathError::IllegalCharacter { ch, pos }))
        .collect::<Result<Vec<_>, _>>()?;
    Path::new(family, steps)
}

impl Path {
    pub fn new(family: Family, steps: Vec<Step>) -> Result<Path, PathError> {
        let mut level = 0i64;
        for (pos, &step) in steps.iter().enumerate() {
            if !family.allows(step) {
                return Err(PathError::FamilyViolation { step, pos, family });
            }
            if family == Family::SchroderSmall && step == Step::H && level == 0 {
                return Err(PathError::FamilyViolation { step, pos, family });
            }
            level += step.rise();
            if level < 0 && family != Family::Delannoy {
                return Err(PathError::NegativeLevel { pos });
            }
        }
        if level != 0 {
            return Err(PathError::NonzeroEnd { level });
        }
        Ok(Path { family, steps })
    }

    /// The empty path of a family.
    pub fn empty(family: Family) -> Path {
        Path { family, steps: Vec::new() }
    }

    pub(crate) fn new_unchecked(family: Family, steps: Vec<Step>) -> Path {
        debug_assert!(Path::new(family, steps.clone()).is_ok());
        Path { family, steps }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(|s| s.as_char()).collect()
    }

    /// Index used by the enumerators: step count for Motzkin paths,
    /// semilength otherwise.
    pub fn size(&self) -> usize {
        match self.family {
            Family::Motzkin => self.steps.len(),
            _ => self.steps.iter().map(|s| s.width()).sum::<usize>() / 2,
        }
    }

    /// Level after each step.
    pub fn levels(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |lvl, s| {
                *lvl += s.rise();
                Some(*lvl)
            })
            .collect()
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Splits the path after every step that ends on the x-axis.
    pub fn primitive_factors(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, lvl) in self.levels().into_iter().enumerate() {
            if lvl == 0 {
                out.push(Path { family: self.family, steps: self.steps[start..=i].to_vec() });
                start = i + 1;
            }
        }
        out
    }

    /// `u P d`.
    pub fn elevate(&self) -> Result<Path, PathError> {
        if self.family != Family::Dyck {
            return Err(PathError::WrongFamily { expected: Family::Dyck, found: self.family });
        }
        let mut steps = Vec::with_capacity(self.steps.len() + 2);
        steps.push(Step::U);
        steps.extend_from_slice(&self.steps);
        steps.push(Step::D);
        Ok(Path { family: Family::Dyck, steps })
    }

    pub fn concat(&self, other: &Path) -> Result<Path, PathError> {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        // Re-validate: small Schröder factors glue freely, but the family
        // tags must agree.
        if self.family != other.family {
            return Err(PathError::WrongFamily { expected: self.family, found: other.family });
        }
        Path::new(self.family, steps)
    }

    /// Whether the path starts with an `ud` peak.
    pub fn starts_with_ud(&self) -> bool {
        self.steps.starts_with(&[Step::U, Step::D])
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.step_string())
    }
}

/// Builds a step vector from a compact string; panics on bad input. For
/// literals in code and tests.
pub fn steps(s: &str) -> Vec<Step> {
    s.chars().map(|c| Step::from_char(c).expect("step letter")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = parse_path("UUDD", Family::Dyck).unwrap();
        assert_eq!(p.size(), 2);
        let sample3 = parse_path("UUUDDDUUDUDUDUDD", Family::Dyck).unwrap();
        assert_eq!(sample3.size(), 8);
        assert_eq!(parse_path("UDU", Family::Dyck), Err(PathError::NonzeroEnd { level: 1 }));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_path("UxD", Family::Dyck),
            Err(PathError::IllegalCharacter { ch: 'x', pos: 1 })
        );
        assert_eq!(parse_path("DU", Family::Dyck), Err(PathError::NegativeLevel { pos: 0 }));
        assert!(parse_path("DU", Family::Delannoy).is_ok());
        assert!(matches!(
            parse_path("UFD", Family::Dyck),
            Err(PathError::FamilyViolation { pos: 1, .. })
        ));
        assert!(matches!(
            parse_path("HUD", Family::SchroderSmall),
            Err(PathError::FamilyViolation { pos: 0, .. })
        ));
        assert!(parse_path("UHD", Family::SchroderSmall).is_ok());
        assert!(parse_path("HUD", Family::SchroderLarge).is_ok());
    }

    #[test]
    fn factors_elevate_concat() {
        let sample1 = parse_path("UUUUUUDDDUDUDDDDUUUDUDDDUUDD", Family::Dyck).unwrap();
        let factors: Vec<String> = sample1.primitive_factors().iter().map(|p| p.to_string()).collect();
        assert_eq!(factors, vec!["UUUUUUDDDUDUDDDD", "UUUDUDDD", "UUDD"]);
        let sizes: Vec<usize> = sample1.primitive_factors().iter().map(Path::size).collect();
        assert_eq!(sizes, vec![8, 4, 2]);
        let ud = parse_path("UD", Family::Dyck).unwrap();
        assert_eq!(ud.elevate().unwrap().to_string(), "UUDD");
        let udud = parse_path("UDUD", Family::Dyck).unwrap();
        assert_eq!(udud.primitive_factors(), vec![ud.clone(), ud.clone()]);
        assert_eq!(Path::empty(Family::Dyck).concat(&ud).unwrap(), ud);
        let glued = sample1
            .primitive_factors()
            .iter()
            .fold(Path::empty(Family::Dyck), |acc, f| acc.concat(f).unwrap());
        assert_eq!(glued, sample1);
    }

    #[test]
    fn json_round_trip() {
        let p = parse_path("UHD", Family::SchroderSmall).unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"family":"schroder_small","steps":"UHD"}"#);
        assert_eq!(serde_json::from_str::<Path>(&js).unwrap(), p);
        assert!(serde_json::from_str::<Path>(r#"{"family":"dyck","steps":"DU"}"#).is_err());
    }
}
