//! Text formats: 12-significant-digit numbers, state and density CSV, and
//! the verification report CSV.
//!
//! State CSV has one `re,im` row per basis index. Density CSV has one row per
//! matrix row, each carrying `N` consecutive `re,im` pairs. Neither has a header.

use std::io::{Read, Write};
use std::path::Path;

use hypernoise_core::verify::VerificationReport;
use hypernoise_core::{Complex64, DensityMatrix, Hypergraph, Matrix, StateVector};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("row {row}: cannot parse {field:?} as a number")]
    Number { row: usize, field: String },
    #[error("row {row}: expected {expected} fields, found {found}")]
    Shape { row: usize, expected: usize, found: usize },
    #[error("row {row}: {reason}")]
    Record { row: usize, reason: String },
    #[error(transparent)]
    Core(#[from] hypernoise_core::Error),
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `1e-4 <= |x| < 1e12`. `-0` prints as `0`.
pub fn fmt_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

/// Magnitudes below this are printed as `0` in metric columns.
pub const CHOP: f64 = 1e-14;

/// [`fmt_g12`] after snapping round-off residue below [`CHOP`] to zero.
pub fn fmt_metric(x: f64) -> String {
    fmt_g12(if x.abs() < CHOP { 0.0 } else { x })
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn parse_f64(field: &str, row: usize) -> Result<f64, FormatError> {
    field.trim().parse().map_err(|_| FormatError::Number {
        row,
        field: field.to_owned(),
    })
}

fn headerless_reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(r)
}

fn headerless_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

pub fn write_amplitudes_csv<W: Write>(amplitudes: &[Complex64], w: W) -> Result<(), FormatError> {
    let mut out = headerless_writer(w);
    for z in amplitudes {
        out.write_record([fmt_g12(z.re), fmt_g12(z.im)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_state_csv<W: Write>(psi: &StateVector, w: W) -> Result<(), FormatError> {
    write_amplitudes_csv(psi.amplitudes(), w)
}

/// Amplitudes exactly as written, without a normalization check.
pub fn read_amplitudes_csv<R: Read>(r: R) -> Result<Vec<Complex64>, FormatError> {
    let mut amplitudes = Vec::new();
    for (row, record) in headerless_reader(r).records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(FormatError::Shape {
                row: row + 1,
                expected: 2,
                found: record.len(),
            });
        }
        amplitudes.push(Complex64::new(parse_f64(&record[0], row + 1)?, parse_f64(&record[1], row + 1)?));
    }
    Ok(amplitudes)
}

pub fn write_matrix_csv<W: Write>(m: &Matrix, w: W) -> Result<(), FormatError> {
    let mut out = headerless_writer(w);
    for i in 0..m.dim() {
        let fields: Vec<String> = m.row(i).iter().flat_map(|z| [fmt_g12(z.re), fmt_g12(z.im)]).collect();
        out.write_record(&fields)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_density_csv<W: Write>(rho: &DensityMatrix, w: W) -> Result<(), FormatError> {
    write_matrix_csv(rho.matrix(), w)
}

/// A square matrix; every row must hold `2N` fields for `N` rows.
pub fn read_matrix_csv<R: Read>(r: R) -> Result<Matrix, FormatError> {
    let rows: Vec<csv::StringRecord> = headerless_reader(r).records().collect::<Result<_, _>>()?;
    let dim = rows.len();
    let mut entries = Vec::with_capacity(dim * dim);
    for (i, record) in rows.iter().enumerate() {
        if record.len() != 2 * dim {
            return Err(FormatError::Shape {
                row: i + 1,
                expected: 2 * dim,
                found: record.len(),
            });
        }
        for pair in 0..dim {
            let re = parse_f64(&record[2 * pair], i + 1)?;
            let im = parse_f64(&record[2 * pair + 1], i + 1)?;
            entries.push(Complex64::new(re, im));
        }
    }
    Ok(Matrix::from_row_major(entries)?)
}

/// Reads and parses a hypergraph file. I/O and parse failures stay distinct.
pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, FormatError> {
    let text = std::fs::read_to_string(path)?;
    Ok(Hypergraph::parse(&text)?)
}

pub const REPORT_HEADER: [&str; 10] = [
    "channel",
    "hypergraph",
    "params",
    "analytic_fidelity",
    "oracle_fidelity",
    "fidelity_delta",
    "analytic_coherence",
    "oracle_coherence",
    "coherence_delta",
    "pass",
];

/// Header row, one row per report row. A random hypergraph seed, when
/// present, goes in a leading `#` comment line.
pub fn write_report_csv<W: Write>(report: &VerificationReport, mut w: W) -> Result<(), FormatError> {
    if let Some(seed) = report.seed {
        writeln!(w, "# random hypergraph seed: {seed}")?;
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(REPORT_HEADER)?;
    for row in &report.rows {
        out.write_record([
            row.channel.tag().to_owned(),
            row.hypergraph.clone(),
            row.param_string(),
            fmt_metric(row.analytic_fidelity),
            fmt_metric(row.oracle_fidelity),
            fmt_g12(row.fidelity_delta),
            fmt_metric(row.analytic_coherence),
            fmt_metric(row.oracle_coherence),
            fmt_g12(row.coherence_delta),
            row.pass.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// One report row read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub channel: String,
    pub hypergraph: String,
    pub params: String,
    /// Numeric columns in header order.
    pub values: [f64; 6],
    pub pass: bool,
}

pub fn read_report_csv<R: Read>(r: R) -> Result<Vec<ReportRecord>, FormatError> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let header = reader.headers()?.clone();
    if header.iter().ne(REPORT_HEADER) {
        return Err(FormatError::Record {
            row: 0,
            reason: format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()),
        });
    }
    let mut records = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let mut values = [0.0; 6];
        for (k, v) in values.iter_mut().enumerate() {
            *v = parse_f64(&record[3 + k], row)?;
        }
        let pass = match &record[9] {
            "true" => true,
            "false" => false,
            other => {
                return Err(FormatError::Record {
                    row,
                    reason: format!("pass must be true or false, got {other:?}"),
                })
            }
        };
        records.push(ReportRecord {
            channel: record[0].to_owned(),
            hypergraph: record[1].to_owned(),
            params: record[2].to_owned(),
            values,
            pass,
        });
    }
    Ok(records)
}
