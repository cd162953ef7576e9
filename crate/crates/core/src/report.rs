//! Rendering of sequence tables, continued-fraction dumps, and verification
//! reports as text, CSV, or JSON.
//!
//! Everything here is deterministic: the same rows render to the same bytes,
//! so output files can be diffed across runs.

use std::fmt::Write as _;

use crate::analysis::{AsymptoticReport, IntegralityReport, LinformAsymptotics};
use crate::contfrac::{CFElement, Convergent};
use crate::numkit::Rat;
use crate::sequences::{AptekarevPair, DiscrepancyRow, GammaPair, RivoalPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// A rectangular block of cells under named columns.  `numeric` marks columns
/// whose cells are machine-size integers and may appear unquoted in JSON;
/// everything else (big integers, rationals, fixed-point decimals) is kept as
/// a string so no consumer silently rounds it.
pub struct Table {
    title: &'static str,
    columns: Vec<&'static str>,
    numeric: Vec<bool>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &'static str, columns: &[(&'static str, bool)]) -> Table {
        Table {
            title,
            columns: columns.iter().map(|c| c.0).collect(),
            numeric: columns.iter().map(|c| c.1).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.columns.len(), "ragged row");
        self.rows.push(cells);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn render_csv(&self, out: &mut String) {
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let escaped: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&escaped.join(","));
            out.push('\n');
        }
    }

    fn render_text(&self, out: &mut String, titled: bool) {
        if titled {
            out.push_str(self.title);
            out.push_str(":\n");
        }
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut line = |cells: &[&str]| {
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                let pad = w - cell.chars().count();
                for _ in 0..pad {
                    out.push(' ');
                }
                out.push_str(cell);
            }
            out.push('\n');
        };
        line(&self.columns);
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
            line(&cells);
        }
    }

    fn render_json(&self, out: &mut String) {
        out.push('[');
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n  {");
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{}\": ", json_escape(self.columns[j]));
                if self.numeric[j] {
                    out.push_str(cell);
                } else {
                    let _ = write!(out, "\"{}\"", json_escape(cell));
                }
            }
            out.push('}');
        }
        if !self.rows.is_empty() {
            out.push('\n');
        }
        out.push(']');
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// Render one or more tables.  A single table becomes a bare CSV block or
/// JSON array; several tables are separated by blank lines in CSV/text and
/// keyed by title in JSON.
pub fn render(tables: &[Table], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                t.render_csv(&mut out);
            }
        }
        Format::Text => {
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                t.render_text(&mut out, tables.len() > 1);
            }
        }
        Format::Json => {
            if tables.len() == 1 {
                tables[0].render_json(&mut out);
            } else {
                out.push('{');
                for (i, t) in tables.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "\n\"{}\": ", json_escape(t.title));
                    t.render_json(&mut out);
                }
                out.push_str("\n}");
            }
            out.push('\n');
        }
    }
    out
}

fn rat_cells(x: &Rat) -> (String, String) {
    (x.numer().to_string(), x.denom().to_string())
}

pub fn gamma_table(rows: &[GammaPair]) -> Table {
    let mut t = Table::new(
        "gamma",
        &[("n", true), ("q", false), ("p_num", false), ("p_den", false)],
    );
    for r in rows {
        let (pn, pd) = rat_cells(&r.p);
        t.push(vec![r.n.to_string(), r.q.to_string(), pn, pd]);
    }
    t
}

pub fn aptekarev_table(rows: &[AptekarevPair]) -> Table {
    let mut t = Table::new("aptekarev", &[("n", true), ("q", false), ("p", false)]);
    for r in rows {
        t.push(vec![r.n.to_string(), r.q.to_string(), r.p.to_string()]);
    }
    t
}

pub fn rivoal_report(rows: &[RivoalPair]) -> Table {
    let mut t = Table::new(
        "rivoal",
        &[
            ("n", true),
            ("q_num", false),
            ("q_den", false),
            ("p_num", false),
            ("p_den", false),
        ],
    );
    for r in rows {
        let (qn, qd) = rat_cells(&r.q);
        let (pn, pd) = rat_cells(&r.p);
        t.push(vec![r.n.to_string(), qn, qd, pn, pd]);
    }
    t
}

pub fn int_column_table(title: &'static str, column: &'static str, values: &[(u64, String)]) -> Table {
    let mut t = Table::new(title, &[("n", true), (column, false)]);
    for (n, v) in values {
        t.push(vec![n.to_string(), v.clone()]);
    }
    t
}

pub fn discrepancy_report(rows: &[DiscrepancyRow]) -> Table {
    let mut t = Table::new(
        "discrepancy",
        &[("n", true), ("d_num", false), ("d_den", false), ("delta", false)],
    );
    for r in rows {
        let (dn, dd) = rat_cells(&r.d);
        t.push(vec![r.n.to_string(), dn, dd, r.delta.to_string()]);
    }
    t
}

pub fn cf_tables(elements: &[CFElement], convergents: &[Convergent]) -> Vec<Table> {
    let mut el = Table::new(
        "elements",
        &[
            ("index", true),
            ("a_num", false),
            ("a_den", false),
            ("b_num", false),
            ("b_den", false),
        ],
    );
    for e in elements {
        let (an, ad) = rat_cells(&e.a);
        let (bn, bd) = rat_cells(&e.b);
        el.push(vec![e.index.to_string(), an, ad, bn, bd]);
    }
    let mut cv = Table::new("convergents", &[("n", true), ("num", false), ("den", false)]);
    for c in convergents {
        cv.push(vec![c.n.to_string(), c.num.to_string(), c.den.to_string()]);
    }
    vec![el, cv]
}

pub fn error_report(report: &AsymptoticReport) -> Table {
    let mut t = Table::new(
        "errors",
        &[
            ("family", false),
            ("n", true),
            ("approx_num", false),
            ("approx_den", false),
            ("err", false),
            ("predicted", false),
            ("ratio", false),
        ],
    );
    for r in &report.rows {
        let (an, ad) = rat_cells(&r.approx);
        t.push(vec![
            report.family.name().to_string(),
            r.n.to_string(),
            an,
            ad,
            r.err.to_string(),
            r.predicted.to_string(),
            r.ratio.to_string(),
        ]);
    }
    t
}

pub fn linform_report(report: &LinformAsymptotics) -> Table {
    let mut t = Table::new(
        "linform-asymptotics",
        &[("n", true), ("c_f", false), ("c_q", false), ("product", false)],
    );
    for r in &report.rows {
        t.push(vec![
            r.n.to_string(),
            r.c_f.to_string(),
            r.c_q.to_string(),
            r.product.to_string(),
        ]);
    }
    t
}

/// One verification check with an optional witness for the failure.
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckLine {
    pub fn pass(name: impl Into<String>) -> CheckLine {
        CheckLine { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> CheckLine {
        CheckLine { name: name.into(), pass: false, witness: Some(witness.into()) }
    }
}

pub fn checks_from_integrality(report: &IntegralityReport) -> Vec<CheckLine> {
    report
        .claims
        .iter()
        .map(|c| match c.first_counterexample {
            None if c.pass => CheckLine::pass(c.claim),
            Some(n) => CheckLine::fail(c.claim, format!("first counterexample at n = {n}")),
            None => CheckLine::fail(c.claim, "no counterexample recorded"),
        })
        .collect()
}

pub fn check_table(checks: &[CheckLine]) -> Table {
    let mut t = Table::new("checks", &[("check", false), ("pass", false), ("witness", false)]);
    for c in checks {
        t.push(vec![
            c.name.clone(),
            if c.pass { "true" } else { "false" }.to_string(),
            c.witness.clone().unwrap_or_default(),
        ]);
    }
    t
}

/// Plain-text verification summary: one `ok`/`FAIL` line per check plus a
/// closing tally.  CSV/JSON callers go through [`check_table`] instead.
pub fn render_checks_text(checks: &[CheckLine]) -> String {
    let mut out = String::new();
    for c in checks {
        if c.pass {
            let _ = writeln!(out, "ok    {}", c.name);
        } else {
            let _ = writeln!(
                out,
                "FAIL  {} ({})",
                c.name,
                c.witness.as_deref().unwrap_or("no witness")
            );
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        let _ = writeln!(out, "all {} checks passed", checks.len());
    } else {
        let _ = writeln!(out, "{failed} of {} checks failed", checks.len());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences;

    #[test]
    fn csv_matches_pinned_element_header() {
        let rows = sequences::gamma_table_rec(3);
        let t = gamma_table(&rows);
        let csv = render(&[t], Format::Csv);
        assert!(csv.starts_with("n,q,p_num,p_den\n"));
        assert!(csv.contains("3,34,59,3\n"));
    }

    #[test]
    fn json_is_parseable_and_keeps_big_values_as_strings() {
        let rows = sequences::gamma_table_rec(2);
        let t = gamma_table(&rows);
        let json = render(&[t], Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[2]["n"], 2);
        assert_eq!(v[2]["q"], "7");
        assert_eq!(v[2]["p_num"], "4");
    }

    #[test]
    fn multiple_tables_are_keyed_by_title_in_json() {
        let mut cf = crate::contfrac::cf_family("gamma", &Default::default()).unwrap();
        let elements = cf.elements(3).unwrap();
        let convergents = cf.convergents(3).unwrap();
        let tables = cf_tables(&elements, &convergents);
        let json = render(&tables, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["elements"][0]["index"], 1);
        assert_eq!(v["convergents"][3]["num"], "59");
        assert_eq!(v["convergents"][3]["den"], "102");
        let csv = render(&tables, Format::Csv);
        assert!(csv.starts_with("index,a_num,a_den,b_num,b_den\n"));
    }

    #[test]
    fn error_table_keeps_pinned_columns() {
        let rep = crate::analysis::error_table(
            crate::analysis::ErrorFamily::GammaMain,
            &[25, 36],
            40,
        )
        .unwrap();
        let csv = render(&[error_report(&rep)], Format::Csv);
        assert!(csv.starts_with("family,n,approx_num,approx_den,err,predicted,ratio\n"));
        assert!(csv.contains("gamma-main,25,"));
        let json = render(&[error_report(&rep)], Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[1]["n"], 36);
        assert_eq!(v[1]["family"], "gamma-main");
        // Dec cells carry their full digit count.
        assert_eq!(v[0]["err"].as_str().unwrap().len(), "0.".len() + 40);
    }

    #[test]
    fn csv_quotes_cells_with_commas() {
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("plain"), "plain");
        assert_eq!(csv_cell("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn text_columns_align() {
        let rows = sequences::gamma_table_rec(4);
        let text = render(&[gamma_table(&rows)], Format::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        let width = lines[0].len();
        assert!(lines.iter().all(|l| l.len() == width));
        assert!(lines[5].contains("209"));
    }

    #[test]
    fn check_lines_render_with_tally() {
        let checks = vec![
            CheckLine::pass("first"),
            CheckLine::fail("second", "n = 7"),
        ];
        let text = render_checks_text(&checks);
        assert!(text.contains("ok    first"));
        assert!(text.contains("FAIL  second (n = 7)"));
        assert!(text.ends_with("1 of 2 checks failed\n"));
    }
}
