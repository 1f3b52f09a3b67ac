//! Text and JSON serialization of bitrades.
//!
//! Three formats are supported:
//!
//! * `triples`: one `row col sym` entry per line, halves separated by a
//!   line containing `%`, `#` starts a comment, whitespace-insensitive.
//! * `grid`: two grids separated by `%`, one line per row, `.` for an
//!   empty cell. Row and column labels are the 0-based line/column indices;
//!   cell tokens are parsed as symbol labels.
//! * `json`: `{"t_dia": [[r,c,s],...], "t_oti": [[r,c,s],...]}` with
//!   string labels.
//!
//! Parsing produces raw (unvalidated) halves so that the validator can
//! report on malformed data; serialization is canonical (entries sorted,
//! LF line endings) so equal bitrades always produce identical bytes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitrade::{Bitrade, Entry};
use crate::label::LabelValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Triples,
    Grid,
    Json,
}

impl Format {
    pub fn parse_name(name: &str) -> Option<Format> {
        match name {
            "triples" => Some(Format::Triples),
            "grid" => Some(Format::Grid),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// An unvalidated pair of entry sets, as read from disk.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawBitrade {
    pub t_dia: BTreeSet<Entry>,
    pub t_oti: BTreeSet<Entry>,
}

impl From<&Bitrade> for RawBitrade {
    fn from(b: &Bitrade) -> RawBitrade {
        RawBitrade {
            t_dia: b.t_dia().entries().clone(),
            t_oti: b.t_oti().entries().clone(),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: expected 3 whitespace-separated tokens, found {found}")]
    BadTripleLine { line: usize, found: usize },
    #[error("expected exactly one `%` separator between the halves, found {0}")]
    BadSeparatorCount(usize),
    #[error("line {line}: grid row has {found} cells, expected {expected}")]
    RaggedGrid {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("the two grids have different shapes")]
    GridShapeMismatch,
    #[error("invalid JSON: {0}")]
    Json(String),
}

pub fn parse(input: &str, format: Format) -> Result<RawBitrade, FormatError> {
    match format {
        Format::Triples => parse_triples(input),
        Format::Grid => parse_grid(input),
        Format::Json => parse_json(input),
    }
}

pub fn serialize(raw: &RawBitrade, format: Format) -> String {
    match format {
        Format::Triples => serialize_triples(raw),
        Format::Grid => serialize_grid(raw),
        Format::Json => serialize_json(raw),
    }
}

fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn parse_triples(input: &str) -> Result<RawBitrade, FormatError> {
    let mut halves = [BTreeSet::new(), BTreeSet::new()];
    let mut current = 0usize;
    let mut separators = 0usize;
    for (line_no, line) in content_lines(input) {
        if line == "%" {
            separators += 1;
            current = 1;
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(FormatError::BadTripleLine {
                line: line_no,
                found: tokens.len(),
            });
        }
        halves[current].insert(Entry::new(
            LabelValue::parse(tokens[0]),
            LabelValue::parse(tokens[1]),
            LabelValue::parse(tokens[2]),
        ));
    }
    if separators != 1 {
        return Err(FormatError::BadSeparatorCount(separators));
    }
    let [t_dia, t_oti] = halves;
    Ok(RawBitrade { t_dia, t_oti })
}

pub fn serialize_triples(raw: &RawBitrade) -> String {
    let mut out = String::new();
    for e in &raw.t_dia {
        out.push_str(&format!("{} {} {}\n", e.row(), e.col(), e.sym()));
    }
    out.push_str("%\n");
    for e in &raw.t_oti {
        out.push_str(&format!("{} {} {}\n", e.row(), e.col(), e.sym()));
    }
    out
}

pub fn parse_grid(input: &str) -> Result<RawBitrade, FormatError> {
    let mut grids: Vec<Vec<(usize, Vec<&str>)>> = vec![Vec::new()];
    for (line_no, line) in content_lines(input) {
        if line == "%" {
            grids.push(Vec::new());
            continue;
        }
        grids
            .last_mut()
            .unwrap()
            .push((line_no, line.split_whitespace().collect()));
    }
    if grids.len() != 2 {
        return Err(FormatError::BadSeparatorCount(grids.len() - 1));
    }
    let shape = |g: &Vec<(usize, Vec<&str>)>| (g.len(), g.first().map_or(0, |(_, r)| r.len()));
    if shape(&grids[0]) != shape(&grids[1]) {
        return Err(FormatError::GridShapeMismatch);
    }
    let mut halves = [BTreeSet::new(), BTreeSet::new()];
    for (grid, half) in grids.iter().zip(halves.iter_mut()) {
        let width = grid.first().map_or(0, |(_, r)| r.len());
        for (i, (line_no, row)) in grid.iter().enumerate() {
            if row.len() != width {
                return Err(FormatError::RaggedGrid {
                    line: *line_no,
                    expected: width,
                    found: row.len(),
                });
            }
            for (j, token) in row.iter().enumerate() {
                if *token == "." {
                    continue;
                }
                half.insert(Entry::new(
                    LabelValue::Int(i as i64),
                    LabelValue::Int(j as i64),
                    LabelValue::parse(token),
                ));
            }
        }
    }
    let [t_dia, t_oti] = halves;
    Ok(RawBitrade { t_dia, t_oti })
}

pub fn serialize_grid(raw: &RawBitrade) -> String {
    let rows: BTreeSet<_> = raw
        .t_dia
        .iter()
        .chain(&raw.t_oti)
        .map(|e| e.row().clone())
        .collect();
    let cols: BTreeSet<_> = raw
        .t_dia
        .iter()
        .chain(&raw.t_oti)
        .map(|e| e.col().clone())
        .collect();
    let mut out = String::new();
    for (half, set) in [(0, &raw.t_dia), (1, &raw.t_oti)] {
        if half == 1 {
            out.push_str("%\n");
        }
        for r in &rows {
            let cells: Vec<String> = cols
                .iter()
                .map(|c| {
                    set.iter()
                        .find(|e| e.row() == r && e.col() == c)
                        .map_or(".".to_owned(), |e| e.sym().to_string())
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonBitrade {
    t_dia: Vec<[String; 3]>,
    t_oti: Vec<[String; 3]>,
}

pub fn parse_json(input: &str) -> Result<RawBitrade, FormatError> {
    let parsed: JsonBitrade =
        serde_json::from_str(input).map_err(|e| FormatError::Json(e.to_string()))?;
    let to_set = |triples: Vec<[String; 3]>| {
        triples
            .into_iter()
            .map(|[r, c, s]| {
                Entry::new(
                    LabelValue::parse(&r),
                    LabelValue::parse(&c),
                    LabelValue::parse(&s),
                )
            })
            .collect()
    };
    Ok(RawBitrade {
        t_dia: to_set(parsed.t_dia),
        t_oti: to_set(parsed.t_oti),
    })
}

pub fn serialize_json(raw: &RawBitrade) -> String {
    let to_triples = |set: &BTreeSet<Entry>| {
        set.iter()
            .map(|e| {
                [
                    e.row().to_string(),
                    e.col().to_string(),
                    e.sym().to_string(),
                ]
            })
            .collect()
    };
    let doc = JsonBitrade {
        t_dia: to_triples(&raw.t_dia),
        t_oti: to_triples(&raw.t_oti),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
    out.push('\n');
    out
}
