//! Coefficient tables of the attitude and velocity algorithms for one
//! component of the vector polynomials.

use std::fmt::Write as _;

use crate::analysis::{self, MotionCoefficients};
use crate::poly::VecPoly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(format!("unknown axis '{other}'")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    /// Coefficients of `t^1 ..= t^columns`.
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub title: String,
    pub columns: usize,
    pub rows: Vec<TableRow>,
}

impl CoefficientTable {
    fn new(title: &str, columns: usize) -> Self {
        Self { title: title.to_string(), columns, rows: Vec::new() }
    }

    fn push(&mut self, label: &str, poly: &VecPoly, axis: Axis) {
        let values = (1..=self.columns).map(|k| poly.coeff(k).0[axis.index()].clone()).collect();
        self.rows.push(TableRow { label: label.to_string(), values });
    }

    pub fn row(&self, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    fn header(&self) -> Vec<String> {
        (1..=self.columns)
            .map(|k| if k == 1 { "t".to_string() } else { format!("t^{k}") })
            .collect()
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut head = vec![String::new()];
        head.extend(self.header());
        cells.push(head);
        for r in &self.rows {
            let mut line = vec![r.label.clone()];
            line.extend(r.values.iter().map(Rational::to_string));
            cells.push(line);
        }
        let widths: Vec<usize> = (0..=self.columns)
            .map(|c| cells.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!("{}\n", self.title);
        for line in &cells {
            let mut s = format!("{:<w$}", line[0], w = widths[0]);
            for (c, cell) in line.iter().enumerate().skip(1) {
                let _ = write!(s, "  {:>w$}", cell, w = widths[c]);
            }
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }

    /// CSV with exact `p/q` strings; header `algorithm,t,t^2,...`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("algorithm");
        for h in self.header() {
            out.push(',');
            out.push_str(&h);
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.label);
            for v in &r.values {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Attitude and velocity coefficient tables for one vector component.
///
/// The attitude table lists the traditional and enhanced rotation vectors and
/// every functional-iteration iterate `l = 1..=iterations`; the velocity table
/// lists the second-order, enhanced, ViaGen-1, ViaGen-8 and reference rows.
pub fn emit_tables(
    mc: &MotionCoefficients,
    axis: Axis,
    iterations: usize,
    dmax: usize,
) -> (CoefficientTable, CoefficientTable) {
    let mut att = CoefficientTable::new("Polynomial coefficients of attitude computation", dmax);
    att.push("Typical", &analysis::sigma_traditional(mc), axis);
    att.push("Enhanced", &analysis::sigma_enhanced(mc), axis);
    for (l, s) in analysis::sigma_fiter_iterates(mc, iterations, dmax).iter().enumerate() {
        att.push(&format!("FIterTrue (l={})", l + 1), s, axis);
    }

    let mut vel = CoefficientTable::new("Polynomial coefficients of velocity computation (u)", dmax);
    vel.push("Typical", &analysis::u_second_order(mc), axis);
    vel.push("Enhanced", &analysis::u_enhanced(mc), axis);
    vel.push("ViaGen-1", &analysis::u_viagen(mc, 1, dmax), axis);
    vel.push("ViaGen-8", &analysis::u_viagen(mc, 8, dmax), axis);
    vel.push("FIterTrue", &analysis::u_fiter(mc, dmax), axis);
    (att, vel)
}
