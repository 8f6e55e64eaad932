//! CSV emission: header row, comma separation, floats in shortest
//! round-trip decimal (Rust's `{}` formatting), complex columns split as
//! `<name>_re` / `<name>_im`, empty cells for absent values.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Table {
        Table { headers: headers.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        debug_assert!(self.headers.iter().all(|h| !h.contains(',')));
        let _ = writeln!(out, "{}", self.headers.join(","));
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    // `{}` on f64 prints the shortest decimal that parses
                    // back to the identical bits.
                    Cell::Num(x) => {
                        let _ = write!(out, "{x}");
                    }
                    Cell::Text(s) => {
                        debug_assert!(!s.contains(','));
                        out.push_str(s);
                    }
                    Cell::Empty => {}
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Parses CSV text back into headers and numeric-or-empty cells (used by the
/// round-trip tests; text cells come back as unparsed `Text`).
pub fn parse(text: &str) -> Option<(Vec<String>, Vec<Vec<Cell>>)> {
    let mut lines = text.lines();
    let headers: Vec<String> = lines.next()?.split(',').map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    for line in lines {
        let row = line
            .split(',')
            .map(|field| {
                if field.is_empty() {
                    Cell::Empty
                } else if let Ok(x) = field.parse::<f64>() {
                    Cell::Num(x)
                } else {
                    Cell::Text(field.to_string())
                }
            })
            .collect::<Vec<_>>();
        if row.len() != headers.len() {
            return None;
        }
        rows.push(row);
    }
    Some((headers, rows))
}
