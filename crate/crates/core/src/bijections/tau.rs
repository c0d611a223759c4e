//! The map between the `(4,3,7,2)` and `(2,1,7,4)` weightings of the
//! Delannoy-type specs, acting on marked and lettered primitive parts.
//!
//! A part is `u^k0 Q d^k0` with a marked point after its `k0`-th up step and
//! `Q` a run of pyramids with heights `blocks`. The up steps carry letters:
//!
//! * source: `7`, then `k0 - 1` letters from `{1, 1h}`, then `3^(b-1) 1` for
//!   every pyramid of height `b` in `Q`;
//! * target: `7`, then `k0 - 1` letters from `{1, 3h}`, then `1` for every
//!   up step of `Q`.
//!
//! The product of letter values (`1h = 1`, `3h = 3`) is the part's weight.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::paths::{enumerate_v_structures, Part, Path, VStructure};
use crate::ring::Polynomial;

use super::{cartesian, BijectionError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "1h")]
    OneHat,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "3h")]
    ThreeHat,
    #[serde(rename = "7")]
    Seven,
}

impl Letter {
    pub fn value(self) -> u64 {
        match self {
            Letter::One | Letter::OneHat => 1,
            Letter::Three | Letter::ThreeHat => 3,
            Letter::Seven => 7,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Letter::One => "1",
            Letter::OneHat => "1h",
            Letter::Three => "3",
            Letter::ThreeHat => "3h",
            Letter::Seven => "7",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "src_4372")]
    Src4372,
    #[serde(rename = "dst_2174")]
    Dst2174,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Src4372 => "src_4372",
            Side::Dst2174 => "dst_2174",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        [Side::Src4372, Side::Dst2174].into_iter().find(|x| x.name() == s)
    }

    pub fn other(self) -> Side {
        match self {
            Side::Src4372 => Side::Dst2174,
            Side::Dst2174 => Side::Src4372,
        }
    }

    /// The two letters available before the marked point.
    fn choice_letters(self) -> [Letter; 2] {
        match self {
            Side::Src4372 => [Letter::One, Letter::OneHat],
            Side::Dst2174 => [Letter::One, Letter::ThreeHat],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TauPart {
    pub k0: usize,
    pub letters: Vec<Letter>,
    pub blocks: Vec<usize>,
}

impl TauPart {
    pub fn size(&self) -> usize {
        self.k0 + self.blocks.iter().sum::<usize>()
    }

    pub fn to_part(&self) -> Part {
        match self.blocks.as_slice() {
            [b] => Part::Pyr { h: self.k0 + b },
            _ => Part::Block { k: self.k0, heights: self.blocks.clone() },
        }
    }

    fn validate(&self, side: Side) -> Result<(), BijectionError> {
        let bad = |m: String| Err(BijectionError::InvalidDecoration(m));
        if self.k0 == 0 {
            return bad("marked ascent k0 must be at least 1".into());
        }
        if self.blocks.is_empty() || self.blocks.contains(&0) {
            return bad("pyramid heights must be a nonempty list of positive integers".into());
        }
        if self.letters.len() != self.k0 - 1 {
            return bad(format!("expected {} letters, got {}", self.k0 - 1, self.letters.len()));
        }
        let allowed = side.choice_letters();
        if let Some(l) = self.letters.iter().find(|l| !allowed.contains(l)) {
            return bad(format!("letter `{l}` is not allowed on side {}", side.name()));
        }
        Ok(())
    }

    /// Letters of all up steps, in path order.
    pub fn full_letters(&self, side: Side) -> Vec<Letter> {
        let mut out = vec![Letter::Seven];
        out.extend_from_slice(&self.letters);
        for &b in &self.blocks {
            match side {
                Side::Src4372 => {
                    out.extend(std::iter::repeat_n(Letter::Three, b - 1));
                    out.push(Letter::One);
                }
                Side::Dst2174 => out.extend(std::iter::repeat_n(Letter::One, b)),
            }
        }
        out
    }

    pub fn weight(&self, side: Side) -> u64 {
        self.full_letters(side).iter().map(|l| l.value()).product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TauDecorated {
    pub side: Side,
    pub parts: Vec<TauPart>,
}

impl TauDecorated {
    pub fn validate(&self) -> Result<(), BijectionError> {
        self.parts.iter().try_for_each(|p| p.validate(self.side))
    }

    pub fn structure(&self) -> VStructure {
        VStructure::new(self.parts.iter().map(TauPart::to_part).collect())
    }

    pub fn to_path(&self) -> Path {
        self.structure().to_path()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(TauPart::size).sum()
    }

    /// Product of every letter value.
    pub fn weight(&self) -> Polynomial {
        let w: u64 = self.parts.iter().map(|p| p.weight(self.side)).product();
        Polynomial::int(w as i64)
    }

    /// Letters of all up steps in path order.
    pub fn full_letters(&self) -> Vec<Letter> {
        self.parts.iter().flat_map(|p| p.full_letters(self.side)).collect()
    }

    /// Positions (1-based, counted over the whole path) of the up steps that
    /// end at a marked point.
    pub fn marked_up_steps(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut seen = 0;
        for p in &self.parts {
            out.push(seen + p.k0);
            seen += p.size();
        }
        out
    }
}

/// Pyramid heights read from a letter run where `cont` extends the current
/// pyramid and any other letter closes it.
fn decode_runs(letters: &[Letter], cont: Letter) -> Vec<usize> {
    let mut out = Vec::new();
    let mut h = 0;
    for &l in letters {
        h += 1;
        if l != cont {
            out.push(h);
            h = 0;
        }
    }
    out
}

fn encode_runs(blocks: &[usize], cont: Letter) -> Vec<Letter> {
    let mut out = Vec::new();
    for &b in blocks {
        out.extend(std::iter::repeat_n(cont, b - 1));
        out.push(Letter::One);
    }
    out
}

fn swap_letter(l: Letter) -> Letter {
    match l {
        Letter::Three => Letter::ThreeHat,
        Letter::ThreeHat => Letter::Three,
        other => other,
    }
}

fn forward_part(p: &TauPart) -> TauPart {
    // Source pyramid letters 3^(b-1) 1 ..., read backwards, become the
    // letters before the new mark; the old choice letters, read backwards
    // and closed by a 1, become the new pyramid heights.
    let mut tail: Vec<Letter> = encode_runs(&p.blocks, Letter::Three);
    tail.reverse();
    let letters = tail[1..].iter().map(|&l| swap_letter(l)).collect();
    let mut head: Vec<Letter> = p.letters.iter().rev().copied().collect();
    head.push(Letter::One);
    TauPart { k0: p.blocks.iter().sum(), letters, blocks: decode_runs(&head, Letter::OneHat) }
}

fn inverse_part(p: &TauPart) -> TauPart {
    let mut runs = encode_runs(&p.blocks, Letter::OneHat);
    runs.pop();
    runs.reverse();
    let mut tail = vec![Letter::One];
    tail.extend(p.letters.iter().map(|&l| swap_letter(l)));
    tail.reverse();
    TauPart { k0: p.blocks.iter().sum(), letters: runs, blocks: decode_runs(&tail, Letter::Three) }
}

/// Sends a source object to the target side.
pub fn forward(d: &TauDecorated) -> Result<TauDecorated, BijectionError> {
    if d.side != Side::Src4372 {
        return Err(BijectionError::InvalidDecoration("forward expects side src_4372".into()));
    }
    d.validate()?;
    Ok(TauDecorated { side: Side::Dst2174, parts: d.parts.iter().map(forward_part).collect() })
}

pub fn inverse(d: &TauDecorated) -> Result<TauDecorated, BijectionError> {
    if d.side != Side::Dst2174 {
        return Err(BijectionError::NotInTargetFamily("inverse expects side dst_2174".into()));
    }
    d.validate()?;
    Ok(TauDecorated { side: Side::Src4372, parts: d.parts.iter().map(inverse_part).collect() })
}

/// Marked, lettered versions of a part: a pyramid of height `h` may carry
/// its mark after any of its first `h - 1` up steps.
fn part_choices(part: &Part, side: Side) -> Vec<TauPart> {
    let shapes: Vec<(usize, Vec<usize>)> = match part {
        Part::Pyr { h } => (1..*h).map(|k0| (k0, vec![h - k0])).collect(),
        Part::Block { k, heights } => vec![(*k, heights.clone())],
    };
    let mut out = Vec::new();
    for (k0, blocks) in shapes {
        let choices = vec![side.choice_letters().to_vec(); k0 - 1];
        for letters in cartesian(&choices) {
            out.push(TauPart { k0, letters, blocks: blocks.clone() });
        }
    }
    out
}

/// All decorated objects of size `n` on one side.
pub fn enumerate(n: usize, side: Side) -> Vec<TauDecorated> {
    let mut out = Vec::new();
    for s in enumerate_v_structures(n) {
        let per_part: Vec<Vec<TauPart>> = s.parts.iter().map(|p| part_choices(p, side)).collect();
        for parts in cartesian(&per_part) {
            out.push(TauDecorated { side, parts });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{One as I, OneHat as Ih, Seven as S, Three as T, ThreeHat as Th};

    fn worked_source() -> TauDecorated {
        TauDecorated {
            side: Side::Src4372,
            parts: vec![TauPart { k0: 8, letters: vec![I, Ih, I, I, Ih, Ih, Ih], blocks: vec![3, 1, 2] }],
        }
    }

    #[test]
    fn worked_letters() {
        let src = worked_source();
        assert_eq!(src.full_letters(), vec![S, I, Ih, I, I, Ih, Ih, Ih, T, T, I, I, T, I]);
        assert_eq!(src.to_path().to_string(), "UUUUUUUUUUUDDDUDUUDDDDDDDDDD");
        let dst = forward(&src).unwrap();
        assert_eq!(dst.parts, vec![TauPart { k0: 6, letters: vec![Th, I, I, Th, Th], blocks: vec![4, 1, 2, 1] }]);
        assert_eq!(dst.full_letters(), vec![S, Th, I, I, Th, Th, I, I, I, I, I, I, I, I]);
        assert_eq!(dst.marked_up_steps(), vec![6]);
        assert_eq!(src.weight(), dst.weight());
        assert_eq!(inverse(&dst).unwrap(), src);
    }

    #[test]
    fn unmarked_run_gives_unit_pyramids() {
        let src = TauDecorated {
            side: Side::Src4372,
            parts: vec![TauPart { k0: 3, letters: vec![I, I], blocks: vec![2] }],
        };
        let dst = forward(&src).unwrap();
        assert_eq!(dst.parts[0].blocks, vec![1, 1, 1]);
        assert_eq!(inverse(&dst).unwrap(), src);
    }

    #[test]
    fn sizes_and_sums() {
        // 7 * sum D_i D_(n-2-i): 7, 42, 245 for n = 2, 3, 4.
        for (n, expected) in [(2, 7), (3, 42), (4, 245)] {
            for side in [Side::Src4372, Side::Dst2174] {
                let total: Polynomial = enumerate(n, side).iter().map(TauDecorated::weight).sum();
                assert_eq!(total, Polynomial::int(expected), "n = {n}, {side:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_objects() {
        let mut src = worked_source();
        src.parts[0].letters.pop();
        assert!(forward(&src).is_err());
        assert!(inverse(&worked_source()).is_err());
        let wrong_letter = TauDecorated {
            side: Side::Src4372,
            parts: vec![TauPart { k0: 2, letters: vec![Th], blocks: vec![1] }],
        };
        assert!(forward(&wrong_letter).is_err());
    }

    #[test]
    fn json_shape() {
        let js = serde_json::to_value(worked_source()).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"side": "src_4372", "parts": [
                {"k0": 8, "letters": ["1", "1h", "1", "1", "1h", "1h", "1h"], "blocks": [3, 1, 2]}
            ]})
        );
    }
}
