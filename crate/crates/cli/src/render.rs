//! Text and LaTeX layout for matrices, polynomials and reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use quadfix::report::{CheckResult, Status};

/// A matrix of rendered cells with block rules after the given zero-based
/// row and column indices.
pub struct Ruled {
    pub cells: Vec<Vec<String>>,
    pub row_rules: Vec<usize>,
    pub col_rules: Vec<usize>,
}

impl Ruled {
    pub fn plain(cells: Vec<Vec<String>>) -> Self {
        Ruled {
            cells,
            row_rules: Vec::new(),
            col_rules: Vec::new(),
        }
    }

    fn cols(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    /// Right-aligned columns, `|` between column blocks and a dashed line
    /// between row blocks.
    pub fn text(&self) -> String {
        let cols = self.cols();
        let widths: Vec<usize> = (0..cols)
            .map(|c| self.cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (r, row) in self.cells.iter().enumerate() {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                let _ = write!(line, " {cell:>w$}", w = widths[c]);
                if self.col_rules.contains(&c) {
                    line.push_str(" |");
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
            if self.row_rules.contains(&r) {
                let mut rule = String::new();
                for (c, w) in widths.iter().enumerate() {
                    rule.push_str(&"-".repeat(w + 1));
                    if self.col_rules.contains(&c) {
                        rule.push_str("-+");
                    }
                }
                out.push_str(&rule);
                out.push('\n');
            }
        }
        out
    }

    /// A parenthesized `array` with `|` column rules and `\hline` row rules.
    pub fn latex(&self) -> String {
        let cols = self.cols();
        let mut column_format = String::new();
        for c in 0..cols {
            column_format.push('c');
            if self.col_rules.contains(&c) {
                column_format.push('|');
            }
        }
        let mut out = format!("\\left( \\begin{{array}}{{{column_format}}}\n");
        let last = self.cells.len().saturating_sub(1);
        for (r, row) in self.cells.iter().enumerate() {
            let entries: Vec<String> = row.iter().map(|s| latex_poly(s)).collect();
            out.push_str(&entries.join(" & "));
            if r < last {
                out.push_str(" \\\\");
            }
            out.push('\n');
            if self.row_rules.contains(&r) && r < last {
                out.push_str("\\hline\n");
            }
        }
        out.push_str("\\end{array} \\right)");
        out
    }
}

/// LaTeX for a polynomial in canonical text form: `*` becomes a thin
/// product, exponents are braced, and indexed names `v1_2_3` become
/// `v_{1,2,3}`.
pub fn latex_poly(s: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            match name.find(|c: char| c.is_ascii_digit()) {
                Some(split) => {
                    let (stem, index) = name.split_at(split);
                    let _ = write!(out, "{stem}_{{{}}}", index.replace('_', ","));
                }
                None => out.push_str(&name),
            }
            continue;
        }
        match ch {
            '*' => out.push(' '),
            '^' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let exp: String = chars[start..i].iter().collect();
                let _ = write!(out, "^{{{exp}}}");
                continue;
            }
            _ => out.push(ch),
        }
        i += 1;
    }
    out
}

pub fn status_word(status: Status) -> &'static str {
    match status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

/// Aligned `name  status  detail` lines.
pub fn checks_text(checks: &BTreeMap<String, CheckResult>) -> String {
    let width = checks.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (name, c) in checks {
        let mut line = format!("  {name:<width$}  {:<7}", status_word(c.status));
        if let Some(ms) = c.millis {
            let _ = write!(line, "  {ms} ms");
        }
        if let Some(detail) = &c.detail {
            let _ = write!(line, "  {detail}");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Aligned `key  value` lines.
pub fn fields_text(fields: &[(&str, String)]) -> String {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    fields.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

/// Two-column `tabular` of fields followed by the checks.
pub fn latex_table(fields: &[(&str, String)], checks: &BTreeMap<String, CheckResult>) -> String {
    let mut out = String::from("\\begin{tabular}{ll}\n");
    for (k, v) in fields {
        let _ = writeln!(out, "{} & {} \\\\", latex_text(k), v);
    }
    if !checks.is_empty() {
        out.push_str("\\hline\n");
        for (name, c) in checks {
            let _ = writeln!(out, "{} & {} \\\\", latex_text(name), status_word(c.status));
        }
    }
    out.push_str("\\end{tabular}");
    out
}

pub fn latex_text(s: &str) -> String {
    format!("\\texttt{{{}}}", s.replace('_', "\\_"))
}

pub fn math(s: &str) -> String {
    format!("${}$", latex_poly(s))
}
