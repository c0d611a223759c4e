use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Family, Part, Path, Step, VStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    None,
    /// First step is not a flat step.
    FirstNotFlat,
    /// First two steps are not `ud`.
    FirstTwoNotUd,
    /// Neither of the two above: no flat first step and no leading `ud`.
    YFilter,
}

impl Filter {
    pub const ALL: [Filter; 4] = [Filter::None, Filter::FirstNotFlat, Filter::FirstTwoNotUd, Filter::YFilter];

    pub fn name(self) -> &'static str {
        match self {
            Filter::None => "none",
            Filter::FirstNotFlat => "first_not_flat",
            Filter::FirstTwoNotUd => "first_two_not_ud",
            Filter::YFilter => "y_filter",
        }
    }

    pub fn parse(s: &str) -> Option<Filter> {
        Filter::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn accepts(self, steps: &[Step]) -> bool {
        let flat_first = matches!(steps.first(), Some(Step::F | Step::H));
        let ud_first = steps.starts_with(&[Step::U, Step::D]);
        match self {
            Filter::None => true,
            Filter::FirstNotFlat => !flat_first,
            Filter::FirstTwoNotUd => !ud_first,
            Filter::YFilter => !flat_first && !ud_first,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All paths of `family` with size `n` passing `filter`, in lexicographic
/// order over `U < D < F < H`.
pub fn enumerate_family(family: Family, n: usize, filter: Filter) -> Vec<Path> {
    let width = match family {
        Family::Motzkin => n,
        _ => 2 * n,
    };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(width);
    extend(family, width, 0, &mut cur, &mut |steps| {
        if filter.accepts(steps) {
            out.push(Path::new_unchecked(family, steps.to_vec()));
        }
    });
    out
}

fn extend(family: Family, remaining: usize, level: i64, cur: &mut Vec<Step>, emit: &mut dyn FnMut(&[Step])) {
    if remaining == 0 {
        if level == 0 {
            emit(cur);
        }
        return;
    }
    for &s in family.alphabet() {
        if s.width() > remaining {
            continue;
        }
        let next = level + s.rise();
        let rest = remaining - s.width();
        if next.unsigned_abs() as usize > rest {
            continue;
        }
        if family != Family::Delannoy && next < 0 {
            continue;
        }
        if family == Family::SchroderSmall && s == Step::H && level == 0 {
            continue;
        }
        cur.push(s);
        extend(family, rest, next, cur, emit);
        cur.pop();
    }
}

/// All primitive parts of size `m`: the pyramid first, then blocks by
/// increasing `k` with their height lists in lexicographic order.
pub fn primitive_parts(m: usize) -> Vec<Part> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    out.push(Part::Pyr { h: m });
    for k in 1..m {
        for heights in compositions(m - k) {
            if heights.len() >= 2 {
                out.push(Part::Block { k, heights });
            }
        }
    }
    out
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every valley-uniform structure of size `n`, largest first part first.
pub fn enumerate_v_structures(n: usize) -> Vec<VStructure> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    structures(n, &mut cur, &mut out);
    out
}

fn structures(n: usize, cur: &mut Vec<Part>, out: &mut Vec<VStructure>) {
    if n == 0 {
        out.push(VStructure::new(cur.clone()));
        return;
    }
    for m in (1..=n).rev() {
        for part in primitive_parts(m) {
            cur.push(part);
            structures(n - m, cur, out);
            cur.pop();
        }
    }
}
