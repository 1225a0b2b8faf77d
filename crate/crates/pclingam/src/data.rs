//! Observed datasets: named variables by samples, CSV on the wire.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// An `n`-variable by `N`-sample real matrix with variable names.
///
/// Row `i` holds all samples of variable `i`. Every entry is finite and
/// `N >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    values: DMatrix<f64>,
}

impl Dataset {
    pub fn new(names: Vec<String>, values: DMatrix<f64>) -> Result<Self> {
        if names.len() != values.nrows() {
            return Err(Error::InvalidArgument(format!(
                "{} names for {} variables",
                names.len(),
                values.nrows()
            )));
        }
        if values.ncols() == 0 {
            return Err(Error::InvalidArgument("dataset needs at least one sample".into()));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            // column-major storage
            let var = bad % values.nrows();
            let sample = bad / values.nrows();
            return Err(Error::Input(format!(
                "non-finite value for variable {var} in sample {sample}"
            )));
        }
        Ok(Self { names, values })
    }

    /// Default names x0, x1, ...
    pub fn with_default_names(values: DMatrix<f64>) -> Result<Self> {
        let names = (0..values.nrows()).map(|i| format!("x{i}")).collect();
        Self::new(names, values)
    }

    pub fn n_vars(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_samples(&self) -> usize {
        self.values.ncols()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// All samples of variable `i`.
    pub fn variable(&self, i: usize) -> DVector<f64> {
        self.values.row(i).transpose()
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.values.row(i).mean()
    }

    /// Population variance (denominator `N`).
    pub fn variance(&self, i: usize) -> f64 {
        let row = self.values.row(i);
        let m = row.mean();
        row.iter().map(|&v| (v - m) * (v - m)).sum::<f64>() / self.n_samples() as f64
    }

    /// Sample covariance matrix with denominator `N - 1`.
    pub fn covariance(&self) -> DMatrix<f64> {
        let n = self.n_vars();
        let cols = self.n_samples();
        let means = DVector::from_fn(n, |i, _| self.mean(i));
        let mut centered = self.values.clone();
        for i in 0..n {
            centered.row_mut(i).add_scalar_mut(-means[i]);
        }
        let denom = if cols > 1 { cols - 1 } else { 1 } as f64;
        &centered * centered.transpose() / denom
    }

    /// Parses CSV with a header row of variable names; each subsequent row is
    /// one sample. Decimal numbers with `.`; any non-finite or unparseable
    /// field is reported with its row and column.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let names: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Input(format!("bad CSV header: {e}")))?
            .iter()
            .map(|s| s.to_string())
            .collect();
        if names.is_empty() {
            return Err(Error::Input("CSV header has no columns".into()));
        }
        let n = names.len();
        let mut samples: Vec<f64> = Vec::new();
        for (row_idx, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Input(format!("bad CSV row {}: {e}", row_idx + 2)))?;
            if record.len() != n {
                return Err(Error::Input(format!(
                    "row {} has {} fields, expected {n}",
                    row_idx + 2,
                    record.len()
                )));
            }
            for (col_idx, field) in record.iter().enumerate() {
                let value: f64 = field.parse().map_err(|_| {
                    Error::Input(format!(
                        "row {} column {} ({}): cannot parse {field:?} as a number",
                        row_idx + 2,
                        col_idx + 1,
                        names[col_idx]
                    ))
                })?;
                if !value.is_finite() {
                    return Err(Error::Input(format!(
                        "row {} column {} ({}): non-finite value {field:?}",
                        row_idx + 2,
                        col_idx + 1,
                        names[col_idx]
                    )));
                }
                samples.push(value);
            }
        }
        if samples.is_empty() {
            return Err(Error::Input("CSV has a header but no data rows".into()));
        }
        let n_samples = samples.len() / n;
        // samples is row-major (sample-major); DMatrix wants column-major over (var, sample)
        let values = DMatrix::from_fn(n, n_samples, |i, j| samples[j * n + i]);
        Self::new(names, values)
    }

    /// Writes the dataset in the same CSV layout `from_csv` reads.
    pub fn to_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(&self.names)
            .map_err(|e| Error::Input(format!("CSV write failed: {e}")))?;
        for j in 0..self.n_samples() {
            let row: Vec<String> =
                (0..self.n_vars()).map(|i| format!("{}", self.values[(i, j)])).collect();
            wtr.write_record(&row)
                .map_err(|e| Error::Input(format!("CSV write failed: {e}")))?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Keeps only the listed variables, in the given order.
    pub fn select(&self, vars: &[usize]) -> Result<Self> {
        for &v in vars {
            if v >= self.n_vars() {
                return Err(Error::InvalidArgument(format!("variable {v} out of range")));
            }
        }
        let values = DMatrix::from_fn(vars.len(), self.n_samples(), |i, j| {
            self.values[(vars[i], j)]
        });
        let names = vars.iter().map(|&v| self.names[v].clone()).collect();
        Self::new(names, values)
    }
}
