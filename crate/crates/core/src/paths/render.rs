use super::{Path, Step};

/// Draws a path with one text row per level band, highest band first.
/// `U` is `/`, `D` is `\`, flat steps are `_` per unit of width.
pub fn render_ascii(path: &Path) -> String {
    let steps = path.steps();
    if steps.is_empty() {
        return String::new();
    }
    // (column, band, glyph)
    let mut marks = Vec::new();
    let (mut col, mut lvl) = (0usize, 0i64);
    for &s in steps {
        match s {
            Step::U => marks.push((col, lvl, '/')),
            Step::D => marks.push((col, lvl - 1, '\\')),
            Step::F => marks.push((col, lvl, '_')),
            Step::H => {
                marks.push((col, lvl, '_'));
                marks.push((col + 1, lvl, '_'));
            }
        }
        col += s.width();
        lvl += s.rise();
    }
    let lo = marks.iter().map(|m| m.1).min().unwrap_or(0);
    let hi = marks.iter().map(|m| m.1).max().unwrap_or(0);
    let rows = (hi - lo + 1) as usize;
    let mut grid = vec![vec![' '; col]; rows];
    for (c, band, g) in marks {
        grid[(hi - band) as usize][c] = g;
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
