//! Text formats: patterns, tile sets, seeds, assemblies, formulas, results.

use std::fmt::Write as _;
use std::path::Path;

use pats_core::reduction::MonotoneFormula;
use pats_core::signal::{horizontal_name, vertical_name};
use pats_core::{Assembly, Color, Glue, Pattern, ResultRecord, Seed, Tile, TileFields, TileSet, BLANK};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Core(#[from] pats_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, col, msg: msg.into() }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Non-empty lines with `#` comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// One line per row, top row first; digits are colors, `#` and `.` stand for 1 and 0.
pub fn parse_pattern(text: &str) -> Result<Pattern, FormatError> {
    let mut rows: Vec<Vec<Color>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::with_capacity(line.len());
        for (j, ch) in line.chars().enumerate() {
            row.push(match ch {
                '0'..='9' => ch as u8 - b'0',
                '#' => 1,
                '.' => 0,
                _ => return Err(syntax(i + 1, j + 1, format!("unexpected character {ch:?}"))),
            });
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(syntax(i + 1, row.len().min(first.len()) + 1, format!("row has {} cells, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(syntax(1, 1, "empty pattern"));
    }
    Ok(Pattern::from_rows_top_down(&rows)?)
}

pub fn emit_pattern(p: &Pattern) -> String {
    let mut s = String::with_capacity((p.width() + 1) * p.height());
    for y in (0..p.height()).rev() {
        s.extend(p.row(y).iter().map(|&c| char::from(b'0' + c)));
        s.push('\n');
    }
    s
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, col: usize, what: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| syntax(line, col, format!("bad {what} {tok:?}")))
}

/// `N E S W COLOR` per line; `COLOR` may be `BLANK`.
pub fn parse_tileset(text: &str) -> Result<TileSet, FormatError> {
    let mut tiles = Vec::new();
    for (ln, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(syntax(ln, 1, format!("expected 5 fields, found {}", toks.len())));
        }
        let g = |k: usize| parse_num::<Glue>(toks[k], ln, k + 1, "glue");
        let color = if toks[4].eq_ignore_ascii_case("BLANK") { BLANK } else { parse_num::<Color>(toks[4], ln, 5, "color")? };
        tiles.push(Tile::new(g(0)?, g(1)?, g(2)?, g(3)?, color).map_err(|e| syntax(ln, 1, e.to_string()))?);
    }
    if tiles.len() > Tile::CAPACITY {
        return Err(pats_core::Error::Capacity { requested: tiles.len(), max: Tile::CAPACITY }.into());
    }
    Ok(TileSet::new(tiles))
}

fn tile_line(t: Tile) -> String {
    let c = if t.color() == BLANK { "BLANK".to_string() } else { t.color().to_string() };
    format!("{} {} {} {} {}", t.north(), t.east(), t.south(), t.west(), c)
}

pub fn emit_tileset(ts: &TileSet) -> String {
    let mut s = String::from("# N E S W COLOR\n");
    for &t in ts {
        s.push_str(&tile_line(t));
        s.push('\n');
    }
    s
}

/// `south g...` (left to right) and `west g...` (bottom to top).
pub fn parse_seed(text: &str) -> Result<Seed, FormatError> {
    let (mut south, mut west) = (None, None);
    for (ln, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap_or_default();
        let glues = toks.map(|t| parse_num::<Glue>(t, ln, 1, "glue")).collect::<Result<Vec<_>, _>>()?;
        match key {
            "south" => south = Some(glues),
            "west" => west = Some(glues),
            other => return Err(syntax(ln, 1, format!("unknown key {other:?}"))),
        }
    }
    match (south, west) {
        (Some(s), Some(w)) if !s.is_empty() && !w.is_empty() => Ok(Seed::new(s, w)),
        _ => Err(syntax(1, 1, "seed needs nonempty south and west lines")),
    }
}

pub fn emit_seed(seed: &Seed) -> String {
    let join = |v: &[Glue]| v.iter().map(Glue::to_string).collect::<Vec<_>>().join(" ");
    format!("south {}\nwest {}\n", join(&seed.south), join(&seed.west))
}

/// Tile indices, top row first, whitespace separated; `.` marks an empty cell.
pub fn parse_assembly(text: &str, len: usize) -> Result<Assembly, FormatError> {
    let mut rows: Vec<Vec<i8>> = Vec::new();
    for (ln, line) in content_lines(text) {
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(j, t)| if t == "." { Ok(-1) } else { parse_num::<i8>(t, ln, j + 1, "tile index") })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.first().is_some_and(|r| r.len() != row.len()) {
            return Err(syntax(ln, 1, "ragged assembly row"));
        }
        rows.push(row);
    }
    let h = rows.len();
    let w = rows.first().map_or(0, Vec::len);
    let cells = rows.into_iter().rev().flatten().collect();
    Ok(Assembly::from_cells(w, h, cells, len)?)
}

pub fn emit_assembly(a: &Assembly) -> String {
    let mut s = String::new();
    for y in (0..a.height()).rev() {
        let row: Vec<String> = (0..a.width()).map(|x| a.get(x, y).map_or(".".to_string(), |i| i.to_string())).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Each cell as `north/east/south/west:color`, top row first.
pub fn emit_glue_grid(a: &Assembly, ts: &TileSet, named: bool) -> String {
    let mut s = String::new();
    for y in (0..a.height()).rev() {
        let cells: Vec<String> = (0..a.width())
            .map(|x| match a.get(x, y) {
                None => "-".to_string(),
                Some(i) => {
                    let t = ts[i];
                    if named {
                        format!(
                            "{}/{}/{}/{}:{}",
                            vertical_name(t.north()),
                            horizontal_name(t.east()),
                            vertical_name(t.south()),
                            horizontal_name(t.west()),
                            t.color()
                        )
                    } else {
                        format!("{}/{}/{}/{}:{}", t.north(), t.east(), t.south(), t.west(), t.color())
                    }
                }
            })
            .collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

/// `c` comments, a `p msat n m k` header, then one clause per line ending in `0`.
pub fn parse_formula(text: &str) -> Result<(MonotoneFormula, usize), FormatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() || toks.len() != 4 || toks[0] != "msat" {
                return Err(syntax(ln, 1, "expected a single header `p msat n m k`"));
            }
            header = Some((parse_num(toks[1], ln, 2, "n")?, parse_num(toks[2], ln, 3, "m")?, parse_num(toks[3], ln, 4, "k")?));
            continue;
        }
        if header.is_none() {
            return Err(syntax(ln, 1, "clause before header"));
        }
        for (j, tok) in line.split_whitespace().enumerate() {
            let v: usize = parse_num(tok, ln, j + 1, "literal")?;
            if v == 0 {
                if current.is_empty() {
                    return Err(syntax(ln, j + 1, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(v);
            }
        }
    }
    let (n, m, k) = header.ok_or_else(|| syntax(1, 1, "missing header"))?;
    if !current.is_empty() {
        return Err(syntax(text.lines().count(), 1, "last clause lacks terminating 0"));
    }
    if clauses.len() != m {
        return Err(syntax(1, 1, format!("header announces {m} clauses, found {}", clauses.len())));
    }
    Ok((MonotoneFormula::new(n, clauses)?, k))
}

pub fn emit_formula(f: &MonotoneFormula, k: usize) -> String {
    let mut s = format!("p msat {} {} {}\n", f.vars(), f.clauses().len(), k);
    for c in f.clauses() {
        for v in c {
            let _ = write!(s, "{v} ");
        }
        s.push_str("0\n");
    }
    s
}

/// Blocks of `tile N E S W C` lines and `row i...` lines (top first) closed by `end`.
pub fn emit_results(results: &[ResultRecord]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str("result\n");
        for &t in &r.tiles {
            let _ = writeln!(s, "tile {}", tile_line(t));
        }
        for line in emit_assembly(&r.assembly).lines() {
            let _ = writeln!(s, "row {line}");
        }
        s.push_str("end\n");
    }
    s
}

pub fn parse_results(text: &str) -> Result<Vec<ResultRecord>, FormatError> {
    let mut out = Vec::new();
    let mut tiles = String::new();
    let mut rows = String::new();
    let mut open = false;
    for (ln, line) in content_lines(text) {
        match line.split_once(' ').map_or((line, ""), |(a, b)| (a, b)) {
            ("result", _) if !open => open = true,
            ("tile", rest) if open => {
                tiles.push_str(rest);
                tiles.push('\n');
            }
            ("row", rest) if open => {
                rows.push_str(rest);
                rows.push('\n');
            }
            ("end", _) if open => {
                let ts = parse_tileset(&tiles)?;
                let assembly = parse_assembly(&rows, ts.len())?;
                if !assembly.is_total() {
                    return Err(syntax(ln, 1, "result assembly is partial"));
                }
                out.push(ResultRecord { tiles: ts, assembly });
                tiles.clear();
                rows.clear();
                open = false;
            }
            (other, _) => return Err(syntax(ln, 1, format!("unexpected {other:?}"))),
        }
    }
    if open {
        return Err(syntax(text.lines().count(), 1, "unterminated result"));
    }
    Ok(out)
}
