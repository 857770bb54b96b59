//! Coefficient tables shared by every series output: one row per exponent
//! `N` with the list of its coefficients (a single entry for series in `q`,
//! the powers of `r` for the Hilbert-scheme series).

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::BivariateSeries;
use crate::qseries::series::{format_exponent, format_rational};
use crate::qseries::{Exponent, FormalSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: String,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub name: String,
    pub params: BTreeMap<String, String>,
    /// Exclusive order of the `N` column.
    pub order: String,
    pub rows: Vec<TableRow>,
}

impl CoefficientTable {
    /// One row per point of the coarsest grid containing every nonzero term,
    /// from the offset up to the order, zeros included.
    pub fn from_series(name: &str, series: &FormalSeries) -> Self {
        let terms = series.terms();
        let grid = series.grid();
        let offset = series.offset();
        let step = terms
            .iter()
            .map(|(e, _)| ((*e - offset) * grid).to_integer())
            .fold(0i64, |acc, j| acc.gcd(&j));
        let step = if step == 0 { grid } else { step };
        let total = (series.precision() * grid).to_integer();
        let rows = (0..total)
            .step_by(step as usize)
            .map(|j| {
                let e = offset + Exponent::new(j, grid);
                let c = series.coefficient(e).expect("below order");
                TableRow {
                    n: format_exponent(e),
                    coefficients: vec![format_rational(&c)],
                }
            })
            .collect();
        Self {
            name: name.to_string(),
            params: BTreeMap::new(),
            order: format_exponent(series.order()),
            rows,
        }
    }

    /// One row per `N` with the coefficients of `r^0, r^1, …` up to the
    /// slice's degree.
    pub fn from_bivariate(name: &str, series: &BivariateSeries) -> Self {
        let rows = (0..series.order_q())
            .map(|n| TableRow {
                n: n.to_string(),
                coefficients: series
                    .slice(n)
                    .expect("within order")
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            })
            .collect();
        Self {
            name: name.to_string(),
            params: BTreeMap::new(),
            order: series.order_q().to_string(),
            rows,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// `N,c0,c1,…` with a header naming the coefficient columns.
    pub fn to_csv(&self) -> Result<String> {
        let width = self
            .rows
            .iter()
            .map(|r| r.coefficients.len())
            .max()
            .unwrap_or(1);
        let mut writer = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        let header: Vec<String> = std::iter::once("N".to_string())
            .chain((0..width).map(|j| format!("c{j}")))
            .collect();
        let csv_err = |e: csv::Error| Error::InvalidArgument(e.to_string());
        writer.write_record(&header).map_err(csv_err)?;
        for row in &self.rows {
            let record =
                std::iter::once(row.n.as_str()).chain(row.coefficients.iter().map(String::as_str));
            writer.write_record(record).map_err(csv_err)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// `N: c0 c1 …`, one line per row.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&row.n);
            out.push_str(": ");
            out.push_str(&row.coefficients.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{goettsche_series, BettiVector};
    use crate::qseries::{dedekind_eta_series, partition_gf};

    #[test]
    fn partition_table() {
        let t = CoefficientTable::from_series("partition", &partition_gf(6).unwrap());
        let coeffs: Vec<&str> = t.rows.iter().map(|r| r.coefficients[0].as_str()).collect();
        assert_eq!(coeffs, ["1/1", "1/1", "2/1", "3/1", "5/1", "7/1"]);
        assert_eq!(t.rows[5].n, "5/1");
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("N,c0\n0/1,1/1\n"));
    }

    #[test]
    fn fractional_offset_keeps_integer_spacing() {
        let t = CoefficientTable::from_series("eta", &dedekind_eta_series(4).unwrap());
        let ns: Vec<&str> = t.rows.iter().map(|r| r.n.as_str()).collect();
        assert_eq!(ns, ["1/24", "25/24", "49/24", "73/24"]);
    }

    #[test]
    fn bivariate_rows() {
        let s = goettsche_series(&BettiVector::new(1, 0, 1, 0, 1), 3, 9).unwrap();
        let t = CoefficientTable::from_bivariate("goettsche", &s).param("betti", "1,0,1,0,1");
        assert_eq!(t.rows[1].coefficients, ["1", "0", "1", "0", "1"]);
        let json = t.to_json().unwrap();
        let back: CoefficientTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(t
            .to_csv()
            .unwrap()
            .starts_with("N,c0,c1,c2,c3,c4,c5,c6,c7,c8\n0,1\n"));
    }
}
