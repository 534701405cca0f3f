//! Rendering of computed tables: CSV, JSON, Markdown and a LaTeX tabular.
//!
//! Every format carries the seed revision marker verbatim and the same
//! per-cell numbers; only the layout differs.

use std::fmt::Write as _;
use std::str::FromStr;

use rbf_core::{BoundEntry, BoundsTable, MethodSet, RamseyPoint, Warning};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
    Textable,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            "tex" | "latex" | "textable" => Ok(Format::Textable),
            other => Err(CliError::Usage(format!("unknown format {other:?} (csv, json, markdown, textable)"))),
        }
    }
}

pub struct Report<'a> {
    pub table: &'a BoundsTable,
    pub max_m: u32,
    pub max_n: u32,
    pub methods: MethodSet,
    pub warnings: &'a [Warning],
}

/// One displayed cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellView {
    pub m: u32,
    pub n: u32,
    pub upper: u64,
    pub lower: u64,
    /// `a`, `b`, `c` or `seed`.
    pub label: String,
    pub improved: bool,
}

fn label_of(entry: &BoundEntry) -> String {
    entry.provenance.label().map_or_else(|| "seed".to_string(), |c| c.to_string())
}

impl Report<'_> {
    pub fn cells(&self) -> Vec<CellView> {
        let mut out = Vec::new();
        for m in 3..=self.max_m {
            for n in m..=self.max_n {
                if let Some(e) = self.table.query(m, n) {
                    out.push(CellView {
                        m,
                        n,
                        upper: e.upper,
                        lower: e.lower,
                        label: label_of(&e),
                        improved: e.improved(),
                    });
                }
            }
        }
        out
    }

    fn in_range(&self, p: RamseyPoint) -> bool {
        p.m >= 3 && p.m <= self.max_m && p.n <= self.max_n
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string_pretty(&self.json())? + "\n",
            Format::Markdown => self.markdown(),
            Format::Textable => self.textable(),
        })
    }

    fn csv(&self) -> String {
        let mut s = format!("# revision: {}\n", self.table.revision());
        s.push_str("m,n,upper,label,lower,improved\n");
        for c in self.cells() {
            let _ = writeln!(s, "{},{},{},{},{},{}", c.m, c.n, c.upper, c.label, c.lower, c.improved);
        }
        s
    }

    fn grid(&self) -> Vec<(u32, Vec<Option<CellView>>)> {
        let cells = self.cells();
        (3..=self.max_m)
            .map(|m| {
                let row = (3..=self.max_n)
                    .map(|n| cells.iter().find(|c| c.m == m && c.n == n).cloned())
                    .collect();
                (m, row)
            })
            .collect()
    }

    fn markdown(&self) -> String {
        let mut s = format!("<!-- revision: {} -->\n\n", self.table.revision());
        let _ = writeln!(s, "Upper bounds on R(m,n); seeds: {}\n", self.table.revision());
        s.push_str("| m \\ n |");
        for n in 3..=self.max_n {
            let _ = write!(s, " {n} |");
        }
        s.push_str("\n|---|");
        for _ in 3..=self.max_n {
            s.push_str("---:|");
        }
        s.push('\n');
        for (m, row) in self.grid() {
            let _ = write!(s, "| {m} |");
            for cell in row {
                match cell {
                    None => s.push_str(" |"),
                    Some(c) => {
                        let value = if c.improved { format!("**{}**", c.upper) } else { c.upper.to_string() };
                        match c.label.as_str() {
                            "seed" => {
                                let _ = write!(s, " {value} |");
                            }
                            l => {
                                let _ = write!(s, " {value} ({l}) |");
                            }
                        }
                    }
                }
            }
            s.push('\n');
        }
        s
    }

    fn textable(&self) -> String {
        let cols = (3..=self.max_n).count();
        let mut s = format!("% revision: {}\n", self.table.revision());
        let _ = writeln!(s, "\\begin{{tabular}}{{|l r||{}}}", "c|".repeat(cols));
        s.push_str("\\hline\n & $n$");
        for n in 3..=self.max_n {
            let _ = write!(s, " & {n}");
        }
        s.push_str(" \\\\\n$m$ & ");
        s.push_str(&" & ".repeat(cols));
        s.push_str("\\\\\n\\hline\n");
        for (m, row) in self.grid() {
            let _ = write!(s, "{m} & ");
            for cell in row {
                s.push_str(" & ");
                if let Some(c) = cell {
                    if c.improved {
                        let _ = write!(s, "\\textbf{{{}}}", c.upper);
                    } else {
                        let _ = write!(s, "{}", c.upper);
                    }
                    if c.label != "seed" {
                        let _ = write!(s, "$^{}$", c.label);
                    }
                }
            }
            s.push_str(" \\\\\n");
        }
        s.push_str("\\hline\n\\end{tabular}\n");
        s
    }

    pub fn json(&self) -> JsonReport {
        let cell = |p: RamseyPoint, e: BoundEntry| JsonCell {
            m: p.m,
            n: p.n,
            upper: e.upper,
            label: label_of(&e),
            improved: e.improved(),
            entry: e,
        };
        let cells = self
            .cells()
            .into_iter()
            .filter_map(|c| self.table.query(c.m, c.n).map(|e| cell(RamseyPoint::new(c.m, c.n), e)))
            .collect();
        let other_entries = self
            .table
            .iter()
            .filter(|(p, _)| !self.in_range(*p))
            .map(|(p, e)| cell(p, e.clone()))
            .collect();
        JsonReport {
            revision: self.table.revision().to_string(),
            max_m: self.max_m,
            max_n: self.max_n,
            methods: self.methods.to_string(),
            cells,
            other_entries,
            warnings: self.warnings.iter().map(|w| w.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonReport {
    pub revision: String,
    pub max_m: u32,
    pub max_n: u32,
    pub methods: String,
    pub cells: Vec<JsonCell>,
    /// Stored entries outside the displayed range, kept so the report can
    /// be read back as a complete table.
    pub other_entries: Vec<JsonCell>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonCell {
    pub m: u32,
    pub n: u32,
    pub upper: u64,
    pub label: String,
    pub improved: bool,
    pub entry: BoundEntry,
}

impl JsonReport {
    /// Rebuilds the bounds table the report was rendered from.
    pub fn into_table(self) -> Result<BoundsTable, CliError> {
        let mut table = BoundsTable::new(self.revision);
        for c in self.cells.into_iter().chain(self.other_entries) {
            table.insert(RamseyPoint::new(c.m, c.n), c.entry)?;
        }
        Ok(table)
    }
}
