//! CSV schemas and deterministic formatting.
//!
//! Headers are fixed byte for byte, line endings are LF, and reals carry
//! nine significant digits so re-runs diff cleanly. The multiplicity CSV is
//! pure integers and round-trips a tally table losslessly.

use std::fs;
use std::io::Write;
use std::path::Path;

use cfml_core::{ComparisonRecord64, ResidueHistogram, TallyTable};

use crate::error::CliError;

pub const MULT_HEADER: &str = "n,mult,ball";
pub const COMPARE_HEADER: &str = "n,mult,heuristic,singular,ratio";
pub const EQUI_HEADER: &str = "m,largest_abs_error,normalized_error";

/// Nine significant digits, locale-free.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.8e}")
}

/// Writes through a same-directory temp file and renames into place.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::io(format!("{} has no file name", path.display())))?;
    let tmp = path.with_file_name(format!(
        "{}.tmp.{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let write = |p: &Path| -> std::io::Result<()> {
        let mut f = fs::File::create(p)?;
        f.write_all(bytes)?;
        f.sync_all()
    };
    write(&tmp).map_err(|e| CliError::io(format!("writing {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| CliError::io(format!("renaming into {}: {e}", path.display())))?;
    Ok(())
}

pub fn mult_csv(table: &TallyTable) -> String {
    let mut out = String::with_capacity(32 * table.bound() as usize + 16);
    out.push_str(MULT_HEADER);
    out.push('\n');
    for (n, mult, ball) in table.rows() {
        out.push_str(&format!("{n},{mult},{ball}\n"));
    }
    out
}

/// Parses a multiplicity CSV back into a tally table, rejecting anything
/// that is not exactly what [`mult_csv`] emits. Errors name the offending
/// 1-based line.
pub fn parse_mult_csv(text: &str, origin: &Path) -> Result<TallyTable, CliError> {
    let at = |line: usize, what: String| {
        CliError::parse(format!("{} line {line}: {what}", origin.display()))
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == MULT_HEADER => {}
        Some(h) => return Err(at(1, format!("expected header `{MULT_HEADER}`, found `{h}`"))),
        None => return Err(at(1, "empty file".into())),
    }
    let mut mult: Vec<u64> = vec![0, 0];
    let mut prev_ball = 0u64;
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(at(line_no, format!("expected 3 fields, found {}", fields.len())));
        }
        let n: u64 = fields[0]
            .parse()
            .map_err(|_| at(line_no, format!("bad n `{}`", fields[0])))?;
        let m: u64 = fields[1]
            .parse()
            .map_err(|_| at(line_no, format!("bad mult `{}`", fields[1])))?;
        let b: u64 = fields[2]
            .parse()
            .map_err(|_| at(line_no, format!("bad ball `{}`", fields[2])))?;
        if n as usize != mult.len() {
            return Err(at(line_no, format!("expected n={}, found {n}", mult.len())));
        }
        if b != prev_ball + m {
            return Err(at(
                line_no,
                format!("ball {b} does not extend {prev_ball} by mult {m}"),
            ));
        }
        mult.push(m);
        prev_ball = b;
    }
    TallyTable::from_mult(mult)
        .map_err(|e| CliError::parse(format!("{}: {e}", origin.display())))
}

pub fn compare_csv(records: &[ComparisonRecord64]) -> String {
    let mut out = String::with_capacity(64 * records.len() + 40);
    out.push_str(COMPARE_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.exact_mult,
            fmt_real(r.heuristic),
            fmt_real(r.singular),
            fmt_real(r.ratio)
        ));
    }
    out
}

pub fn equi_csv(hist: &ResidueHistogram) -> Result<String, CliError> {
    let mut out = String::new();
    out.push_str(EQUI_HEADER);
    out.push('\n');
    for m in 1..=hist.max_modulus() {
        let largest = hist.largest_error::<f64>(m)?;
        let normalized = hist.normalized_largest_error::<f64>(m)?;
        out.push_str(&format!("{m},{},{}\n", fmt_real(largest), fmt_real(normalized)));
    }
    Ok(out)
}
