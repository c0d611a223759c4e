//! Decorated valley-uniform paths and the maps that send them to weighted
//! Motzkin, Schröder and Dyck paths.
//!
//! Every admissible part is read as a pair `(k, r)`: `r = 1` stands for the
//! pyramid `u^(k+1) d^(k+1)` and `r >= 2` for `u^k (ud)^r d^k`. A part carries
//! a sub-path `Q` (and, for `theta`, `r - 1` flat letters) and is sent to
//! `u Q d` followed by a tail of `r - 1` level-0 pieces.

pub mod tau;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::paths::{enumerate_family, enumerate_v_structures, Family, Filter, Part, Path, Step, VStructure};
use crate::ring::{vars, Polynomial};
use crate::weights::{target_weight, TargetWeighting};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),
    #[error("path is not in the target family: {0}")]
    NotInTargetFamily(String),
    #[error("unique factorization failed: {0}")]
    UniqueFactorizationFailure(String),
    #[error("unknown map `{0}`")]
    UnknownMap(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapId {
    Phi,
    Theta,
    Sigma,
    Rho,
    Psi,
}

impl MapId {
    pub const ALL: [MapId; 5] = [MapId::Phi, MapId::Theta, MapId::Sigma, MapId::Rho, MapId::Psi];

    pub fn name(self) -> &'static str {
        match self {
            MapId::Phi => "phi",
            MapId::Theta => "theta",
            MapId::Sigma => "sigma",
            MapId::Rho => "rho",
            MapId::Psi => "psi",
        }
    }

    pub fn parse(s: &str) -> Result<MapId, BijectionError> {
        MapId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| BijectionError::UnknownMap(s.to_string()))
    }

    pub fn target_family(self) -> Family {
        match self {
            MapId::Phi => Family::Motzkin,
            MapId::Theta => Family::SchroderLarge,
            MapId::Sigma => Family::SchroderSmall,
            MapId::Rho | MapId::Psi => Family::Dyck,
        }
    }

    pub fn target_filter(self) -> Filter {
        match self {
            MapId::Phi => Filter::FirstNotFlat,
            MapId::Theta => Filter::YFilter,
            MapId::Sigma | MapId::Rho | MapId::Psi => Filter::FirstTwoNotUd,
        }
    }

    pub fn target_weighting(self) -> TargetWeighting {
        match self {
            MapId::Phi => TargetWeighting::MotzkinAb,
            MapId::Theta | MapId::Sigma => TargetWeighting::SchroderQ,
            MapId::Rho => TargetWeighting::NarayanaT,
            MapId::Psi => TargetWeighting::LevelPeaks,
        }
    }

    /// Registry entry whose weight sums the decorated objects realize.
    pub fn registry_name(self) -> &'static str {
        match self {
            MapId::Phi => "motzkin_ab",
            MapId::Theta => "schroder_large_q",
            MapId::Sigma => "schroder_small_q",
            MapId::Rho => "narayana_t",
            MapId::Psi => "narayana_shift_t",
        }
    }

    pub fn decoration_family(self) -> Family {
        match self {
            MapId::Phi => Family::Motzkin,
            MapId::Theta | MapId::Sigma => Family::SchroderLarge,
            MapId::Rho | MapId::Psi => Family::Dyck,
        }
    }

    /// Size of the sub-path attached to a part with ascent `k`.
    fn decoration_size(self, k: usize) -> usize {
        match self {
            MapId::Phi => k - 1,
            _ => k,
        }
    }

    fn tail_piece(self) -> &'static [Step] {
        match self {
            MapId::Phi => &[Step::F],
            _ => &[Step::U, Step::D],
        }
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the two level-0 pieces a `theta` tail is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FlatLetter {
    H,
    #[serde(rename = "ud")]
    Ud,
}

impl FlatLetter {
    fn steps(self) -> &'static [Step] {
        match self {
            FlatLetter::H => &[Step::H],
            FlatLetter::Ud => &[Step::U, Step::D],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decoration {
    pub sub: Path,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub letters: Vec<FlatLetter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecoratedVPath {
    pub map: MapId,
    pub structure: VStructure,
    pub decorations: Vec<Decoration>,
}

/// `(k, r)` of an admissible part, or `None` if the part has zero weight
/// under every map here.
pub fn part_shape(part: &Part) -> Option<(usize, usize)> {
    match part {
        Part::Pyr { h } if *h >= 2 => Some((h - 1, 1)),
        Part::Block { k, heights } if heights.iter().all(|&i| i == 1) => Some((*k, heights.len())),
        _ => None,
    }
}

fn part_from_shape(k: usize, r: usize) -> Part {
    if r == 1 {
        Part::Pyr { h: k + 1 }
    } else {
        Part::Block { k, heights: vec![1; r] }
    }
}

pub(crate) fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn decorations_for(map: MapId, k: usize, r: usize) -> Vec<Decoration> {
    let subs = enumerate_family(map.decoration_family(), map.decoration_size(k), Filter::None);
    let letter_sets = if map == MapId::Theta {
        cartesian(&vec![vec![FlatLetter::H, FlatLetter::Ud]; r - 1])
    } else {
        vec![Vec::new()]
    };
    let mut out = Vec::new();
    for sub in subs {
        for letters in &letter_sets {
            out.push(Decoration { sub: sub.clone(), letters: letters.clone() });
        }
    }
    out
}

/// All decorated objects of size `n` for `map`, in a fixed order.
pub fn enumerate_decorated(n: usize, map: MapId) -> Vec<DecoratedVPath> {
    let mut out = Vec::new();
    for s in enumerate_v_structures(n) {
        let Some(shapes) = s.parts.iter().map(part_shape).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let per_part: Vec<Vec<Decoration>> = shapes.iter().map(|&(k, r)| decorations_for(map, k, r)).collect();
        for decorations in cartesian(&per_part) {
            out.push(DecoratedVPath { map, structure: s.clone(), decorations });
        }
    }
    out
}

impl DecoratedVPath {
    pub fn validate(&self) -> Result<Vec<(usize, usize)>, BijectionError> {
        if self.structure.parts.len() != self.decorations.len() {
            return Err(BijectionError::InvalidDecoration(format!(
                "{} parts but {} decorations",
                self.structure.parts.len(),
                self.decorations.len()
            )));
        }
        let mut shapes = Vec::new();
        for (part, dec) in self.structure.parts.iter().zip(&self.decorations) {
            let (k, r) = part_shape(part).ok_or_else(|| {
                BijectionError::InvalidDecoration(format!("part {part} has zero weight for {}", self.map))
            })?;
            if !part.is_valid() {
                return Err(BijectionError::InvalidDecoration(format!("malformed part {part}")));
            }
            if dec.sub.family() != self.map.decoration_family() {
                return Err(BijectionError::InvalidDecoration(format!(
                    "sub-path of part {part} must be a {} path",
                    self.map.decoration_family()
                )));
            }
            if dec.sub.size() != self.map.decoration_size(k) {
                return Err(BijectionError::InvalidDecoration(format!(
                    "sub-path of part {part} must have size {}",
                    self.map.decoration_size(k)
                )));
            }
            let wanted = if self.map == MapId::Theta { r - 1 } else { 0 };
            if dec.letters.len() != wanted {
                return Err(BijectionError::InvalidDecoration(format!(
                    "part {part} needs {wanted} flat letters"
                )));
            }
            shapes.push((k, r));
        }
        Ok(shapes)
    }

    pub fn size(&self) -> usize {
        self.structure.size()
    }
}

pub fn forward(d: &DecoratedVPath) -> Result<Path, BijectionError> {
    let shapes = d.validate()?;
    let mut steps = Vec::new();
    for ((_, r), dec) in shapes.into_iter().zip(&d.decorations) {
        steps.push(Step::U);
        steps.extend_from_slice(dec.sub.steps());
        steps.push(Step::D);
        if d.map == MapId::Theta {
            for l in &dec.letters {
                steps.extend_from_slice(l.steps());
            }
        } else {
            for _ in 1..r {
                steps.extend_from_slice(d.map.tail_piece());
            }
        }
    }
    Path::new(d.map.target_family(), steps)
        .map_err(|e| BijectionError::InvalidDecoration(format!("image is not a valid path: {e}")))
}

fn is_tail_piece(map: MapId, factor: &[Step]) -> Option<Option<FlatLetter>> {
    match map {
        MapId::Theta => match factor {
            [Step::H] => Some(Some(FlatLetter::H)),
            [Step::U, Step::D] => Some(Some(FlatLetter::Ud)),
            _ => None,
        },
        _ => (factor == map.tail_piece()).then_some(None),
    }
}

/// Factors a target path as `u Q d` plus a greedy tail, part by part.
pub fn inverse(map: MapId, target: &Path) -> Result<DecoratedVPath, BijectionError> {
    if target.family() != map.target_family() {
        return Err(BijectionError::NotInTargetFamily(format!(
            "expected a {} path, got {}",
            map.target_family(),
            target.family()
        )));
    }
    if !map.target_filter().accepts(target.steps()) {
        return Err(BijectionError::NotInTargetFamily(format!(
            "path fails the {} filter",
            map.target_filter()
        )));
    }
    let factors = target.primitive_factors();
    let mut parts = Vec::new();
    let mut decorations = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let f = factors[i].steps();
        if f.len() < 2 || f[0] != Step::U || f[f.len() - 1] != Step::D {
            return Err(BijectionError::UniqueFactorizationFailure(format!(
                "factor `{}` does not open a part",
                factors[i]
            )));
        }
        let sub = Path::new(map.decoration_family(), f[1..f.len() - 1].to_vec())
            .map_err(|e| BijectionError::UniqueFactorizationFailure(format!("inner path: {e}")))?;
        let k = match map {
            MapId::Phi => sub.size() + 1,
            _ => sub.size(),
        };
        if k == 0 {
            return Err(BijectionError::UniqueFactorizationFailure(format!(
                "factor `{}` has an empty inner path",
                factors[i]
            )));
        }
        i += 1;
        let mut letters = Vec::new();
        let mut r = 1;
        while i < factors.len() {
            match is_tail_piece(map, factors[i].steps()) {
                Some(letter) => {
                    letters.extend(letter);
                    r += 1;
                    i += 1;
                }
                None => break,
            }
        }
        parts.push(part_from_shape(k, r));
        decorations.push(Decoration { sub, letters });
    }
    Ok(DecoratedVPath { map, structure: VStructure::new(parts), decorations })
}

/// Target-side weight carried by the decoration choices.
pub fn eval_decorated_weight(d: &DecoratedVPath) -> Result<Polynomial, BijectionError> {
    let shapes = d.validate()?;
    let mut w = Polynomial::one();
    for ((_, r), dec) in shapes.into_iter().zip(&d.decorations) {
        let tail = (r - 1) as u32;
        let part = match d.map {
            MapId::Phi => {
                let inner = target_weight(&dec.sub, TargetWeighting::MotzkinAb);
                &(&inner * &vars::b()) * &vars::a().pow(tail)
            }
            MapId::Theta => {
                let inner = target_weight(&dec.sub, TargetWeighting::SchroderQ);
                let hs = dec.letters.iter().filter(|&&l| l == FlatLetter::H).count() as u32;
                &inner * &vars::q().pow(hs)
            }
            MapId::Sigma => target_weight(&dec.sub, TargetWeighting::SchroderQ),
            MapId::Rho => &target_weight(&dec.sub, TargetWeighting::NarayanaT) * &vars::t().pow(tail),
            MapId::Psi => {
                let inner = target_weight(&dec.sub, TargetWeighting::NarayanaT);
                &inner * &(&vars::t() + &Polynomial::one()).pow(tail)
            }
        };
        w = &w * &part;
    }
    Ok(w)
}
