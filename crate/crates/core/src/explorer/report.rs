//! Uniform tabular view of the experiment reports, for serialization.

use crate::numerics::Real;

use super::*;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(Real),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<&Real> for Cell {
    fn from(v: &Real) -> Self {
        Cell::Real(v.clone())
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Header, summary and rows of one report.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub problem: String,
    pub title: String,
    pub notes: Vec<String>,
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(problem: &str, title: &str, columns: &[&str]) -> Self {
        Table {
            problem: problem.to_string(),
            title: title.to_string(),
            notes: Vec::new(),
            summary: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    fn sum(mut self, key: &str, v: impl Into<Cell>) -> Self {
        self.summary.push((key.to_string(), v.into()));
        self
    }

    pub fn summary_value(&self, key: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

pub trait Report {
    fn table(&self) -> Table;
}

impl Report for MonotonicityReport {
    fn table(&self) -> Table {
        let mut t = Table::new("1", "monotonicity of R_{n-1}R_{n+1}/R_n^2", &["x", "f", "lhs", "rhs", "margin", "rel_margin"])
            .note("margin = R_{n-2}R_nR_{n+1} + R_{n-1}R_n^2 - 2R_{n-1}^2R_{n+1}; f increases where it is positive")
            .sum("n", self.n)
            .sum("min_rel_margin", &self.min_rel_margin)
            .sum("min_at", &self.min_at)
            .sum("sign_changes", self.sign_changes)
            .sum("f_increasing", self.f_increasing);
        for p in &self.points {
            t.rows.push(vec![
                (&p.x).into(),
                (&p.f).into(),
                (&p.lhs).into(),
                (&p.rhs).into(),
                (&p.margin).into(),
                (&p.rel_margin).into(),
            ]);
        }
        t
    }
}

impl Report for PadeCmReport {
    fn table(&self) -> Table {
        let mut cols = vec!["x".to_string(), "pattern".to_string()];
        cols.extend((0..=self.k_max).map(|k| format!("d{k}")));
        let mut t = Table::new(
            "5",
            "derivative signs of the diagonal Pade approximant",
            &[],
        )
        .note("central differences evaluated in exact rational arithmetic")
        .sum("n", self.n)
        .sum("k_max", self.k_max)
        .sum("step", &self.step)
        .sum("first_pole", self.first_pole.as_ref())
        .sum("excluded", self.excluded.len())
        .sum("all_positive", self.all_positive);
        t.columns = cols;
        for p in &self.points {
            let mut row = vec![(&p.x).into(), p.pattern.as_str().into()];
            row.extend(p.derivatives.iter().map(Cell::from));
            t.rows.push(row);
        }
        for x in &self.excluded {
            t.notes
                .push(format!("excluded x = {} (first pole)", x.to_f64()));
        }
        t
    }
}

impl Report for LimitReport {
    fn table(&self) -> Table {
        let mut t = Table::new(self.problem, &self.heading, &["n", "x", "value"])
            .note("extrapolation: Richardson in h = 1/n over n = 10, 20, 40, ...")
            .sum("estimate", self.estimate.as_ref())
            .sum("converged", self.estimate.is_some())
            .sum("last_term_ratio", self.last_term_ratio.as_ref())
            .sum("extrapolants", self.extrapolants.len());
        for (n, x, v) in &self.sequence {
            t.rows.push(vec![(*n).into(), x.into(), v.into()]);
        }
        t
    }
}

impl Report for GautschiReport {
    fn table(&self) -> Table {
        let mut t = Table::new(
            "8",
            "signs of (-1)^k Delta^k Q_n",
            &[
                "n",
                "x",
                "signed_diff",
                "scale",
                "status",
                "remainder_margin",
                "remainder_ratio",
            ],
        )
        .sum("k", self.k)
        .sum("violations", self.violations);
        if self.k == 3 {
            t = t
                .note("k = 3 remainder form: R_n R_{n+2}^3 > (n+2)(n+4)/(n+3)^2 R_{n+1}^3 R_{n+3}");
            for (n, r, c) in &self.small_x {
                t.notes.push(format!(
                    "n = {n}: ratio at x = 1e-8 is {}, constant {}",
                    r.to_f64(),
                    c.to_f64()
                ));
            }
        }
        for p in &self.points {
            t.rows.push(vec![
                p.n.into(),
                (&p.x).into(),
                (&p.signed_diff).into(),
                (&p.scale).into(),
                p.status.label().into(),
                p.remainder_margin.as_ref().into(),
                p.remainder_ratio.as_ref().into(),
            ]);
        }
        t
    }
}

impl Report for GDiffReport {
    fn table(&self) -> Table {
        let mut t = Table::new(
            "11",
            "differences in n of g_n = R_{n-1}/R_n",
            &["x", "k", "n", "forward", "backward"],
        )
        .note("forward: Delta^k g_n; backward: nabla^k g_n = Delta^k g_{n-k}")
        .note("k = 1 forward is R_n^2 > R_{n-1}R_{n+1}; k = 2 backward is the problem-1 inequality")
        .sum("k_max", self.k_max)
        .sum("negative_forward", self.negative_forward)
        .sum("negative_backward", self.negative_backward)
        .sum("k1_deviation", &self.k1_deviation)
        .sum("k2_deviation", &self.k2_deviation)
        .sum("crosschecks_agree", self.crosschecks_agree);
        for r in &self.rows {
            t.rows.push(vec![
                (&r.x).into(),
                r.k.into(),
                r.n.into(),
                (&r.forward).into(),
                r.backward.as_ref().into(),
            ]);
        }
        t
    }
}

impl Report for RowMonotoneReport {
    fn table(&self) -> Table {
        let mut t = Table::new(
            "12",
            "[n+1/1](x) < [n/1](x) on 0 < x < n+1",
            &["n", "x", "[n/1]", "[n+1/1]", "margin"],
        )
        .sum("points", self.points.len())
        .sum("excluded", self.excluded.len())
        .sum("violations", self.violations);
        for p in &self.points {
            t.rows.push(vec![
                p.n.into(),
                (&p.x).into(),
                (&p.lower_row).into(),
                (&p.upper_row).into(),
                (&p.margin).into(),
            ]);
        }
        for (n, x, why) in &self.excluded {
            t.notes
                .push(format!("excluded n = {n}, x = {}: {why}", x.to_f64()));
        }
        t
    }
}

impl Report for RangeReport {
    fn table(&self) -> Table {
        let mut t = Table::new(
            "15",
            "range of R_{n-2}R_n/R_{n-1}^2 + R_n^2/(R_{n-1}R_{n+1})",
            &["x", "f"],
        )
        .sum("n", self.n)
        .sum("lower", &self.lower)
        .sum("upper", &self.upper)
        .sum("observed_min", &self.observed_min)
        .sum("observed_max", &self.observed_max)
        .sum("contained", self.contained)
        .sum("small_x_value", &self.small_x_value);
        for x in &self.violations {
            t.notes
                .push(format!("outside the bounds at x = {}", x.to_f64()));
        }
        for (x, f) in &self.samples {
            t.rows.push(vec![x.into(), f.into()]);
        }
        t
    }
}

impl Report for RkReport {
    fn table(&self) -> Table {
        Table::new("rk", "one classical RK4 step on y' = lambda y", &[])
            .note("identity: y0 e^{lambda h} - y1 = y0 R_4(lambda h)")
            .sum("lambda", &self.lambda)
            .sum("h", &self.h)
            .sum("y0", &self.y0)
            .sum("z", &self.z)
            .sum("y1", &self.y1)
            .sum("exact", &self.exact)
            .sum("step_error", &self.step_error)
            .sum("identity", &self.identity)
            .sum("rel_deviation", &self.rel_deviation)
            .sum("scaled_error", self.scaled_error.as_ref())
    }
}
