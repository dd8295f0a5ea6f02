//! Plain-text tables and the tab-separated row format.

use std::fmt::Write as _;

use chebotarev::sft::{format_decimal, DensityReport, DensityRow};
use num_rational::Ratio;

/// Decimal places used for empirical quantities.
pub const PLACES: u32 = 6;

/// Header of the machine-readable row format.
pub const ROWS_HEADER: &str = "cutoff\tkind\tkey\tcount\ttotal\tdensity\ttarget\tdeviation";

pub fn ratio(r: &Ratio<i128>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn decimal(r: &Ratio<i128>) -> String {
    format_decimal(r, PLACES)
}

/// Left-aligned columns separated by two spaces.
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.headers).chain(&self.rows) {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        out
    }
}

fn density_row_cells(r: &DensityRow) -> Vec<String> {
    vec![
        r.key.clone(),
        r.count.to_string(),
        r.total.to_string(),
        decimal(&r.density()),
        ratio(&r.target),
        decimal(&r.deviation()),
    ]
}

/// Final-cutoff tables by class and by type.
pub fn density_text(report: &DensityReport) -> String {
    let mut out = String::new();
    let Some(last) = report.final_cutoff() else {
        return "no orbits counted\n".into();
    };
    let _ = writeln!(out, "cutoff {last} (first {} orbits skipped)", report.skipped);
    for (title, rows) in [("class", &report.class_rows), ("cycle type", &report.type_rows)] {
        let mut t = Table::new([title, "count", "total", "density", "target", "deviation"]);
        for r in report.rows_at(rows, last) {
            t.push(density_row_cells(r));
        }
        out.push('\n');
        out.push_str(&t.render());
    }
    out
}

/// Every cutoff, classes then types, one tab-separated row each.
pub fn density_rows(report: &DensityReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{ROWS_HEADER}");
    for &cutoff in &report.cutoffs {
        for (kind, rows) in [("class", &report.class_rows), ("type", &report.type_rows)] {
            for r in report.rows_at(rows, cutoff) {
                let _ = writeln!(out, "{cutoff}\t{kind}\t{}", density_row_cells(r).join("\t"));
            }
        }
    }
    out
}

/// Largest deviation over the rows of the final cutoff.
pub fn final_deviation(report: &DensityReport, rows: &[DensityRow]) -> Option<Ratio<i128>> {
    let last = report.final_cutoff()?;
    report.rows_at(rows, last).map(DensityRow::deviation).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_decimal() {
        assert_eq!(ratio(&Ratio::new(2, 5)), "2/5");
        assert_eq!(ratio(&Ratio::from_integer(1)), "1");
        assert_eq!(decimal(&Ratio::new(1, 60)), "0.016667");
    }

    #[test]
    fn table_aligns() {
        let mut t = Table::new(["a", "bb"]);
        t.push(vec!["ccc".into(), "d".into()]);
        assert_eq!(t.render(), "a    bb\nccc  d\n");
    }
}
