use std::io::Write;

use clap::ValueEnum;
use oddlen_core::{GfValue, IntPoly, MjStatus, Report, ScanRow, Status};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON document per line.
    Json,
    Csv,
}

#[derive(Serialize)]
struct Coeffs<'a, T> {
    coeffs: &'a T,
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

pub(crate) fn gf(out: &mut dyn Write, format: Format, value: &GfValue) -> Result<(), csv::Error> {
    match format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => json_line(out, &Coeffs { coeffs: value })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            match value {
                GfValue::Signed(p) => {
                    w.write_record(["x_exponent", "coefficient"])?;
                    for (e, c) in p.terms() {
                        w.write_record([e.to_string(), c.to_string()])?;
                    }
                }
                GfValue::Graded(p) => {
                    w.write_record(["y_exponent", "x_exponent", "coefficient"])?;
                    for ((ey, ex), c) in p.terms() {
                        w.write_record([ey.to_string(), ex.to_string(), c.to_string()])?;
                    }
                }
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub(crate) fn factor(out: &mut dyn Write, format: Format, mj: &IntPoly) -> Result<(), csv::Error> {
    match format {
        Format::Text => writeln!(out, "M_J = {mj}")?,
        Format::Json => json_line(out, &Coeffs { coeffs: mj })?,
        Format::Csv => gf(out, format, &GfValue::Signed(mj.clone()))?,
    }
    Ok(())
}

fn mj_text(mj: &MjStatus) -> String {
    match mj {
        MjStatus::Cofactor(p) => p.to_string(),
        MjStatus::NotDivisible => "not divisible".into(),
        MjStatus::NotApplicable => String::new(),
    }
}

fn sizes(rest: &[usize]) -> String {
    rest.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn scan(
    out: &mut dyn Write,
    format: Format,
    rows: &[(usize, ScanRow)],
) -> Result<(), csv::Error> {
    match format {
        Format::Text => {
            for (n, r) in rows {
                let sig = format!("({}; {})", r.signature.j0, sizes(&r.signature.rest));
                write!(
                    out,
                    "n={n} {:<14} {sig:<12} gf = {}",
                    r.set.to_string(),
                    r.gf
                )?;
                match &r.mj {
                    MjStatus::NotApplicable => writeln!(out)?,
                    mj => writeln!(out, "  M_J = {}", mj_text(mj))?,
                }
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Line<'a> {
                n: usize,
                #[serde(flatten)]
                row: &'a ScanRow,
            }
            for (n, row) in rows {
                json_line(out, &Line { n: *n, row })?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "set", "j0", "rest", "gf", "mj"])?;
            for (n, r) in rows {
                w.write_record([
                    n.to_string(),
                    r.set.to_string(),
                    r.signature.j0.to_string(),
                    sizes(&r.signature.rest),
                    r.gf.to_string(),
                    mj_text(&r.mj),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub(crate) fn reports(
    out: &mut dyn Write,
    format: Format,
    reports: &[Report],
    timing: bool,
) -> Result<(), csv::Error> {
    match format {
        Format::Text => {
            for r in reports {
                write!(
                    out,
                    "{:<12} {} n={} {}",
                    r.status.to_string(),
                    r.claim,
                    r.n,
                    r.params
                )?;
                if timing {
                    write!(out, " ({:.1} ms)", r.elapsed.as_secs_f64() * 1e3)?;
                }
                writeln!(out)?;
                if let Some(c) = &r.counterexample {
                    writeln!(out, "    {c}")?;
                }
                if let Some(c) = &r.cofactor {
                    writeln!(out, "    cofactor: {c}")?;
                }
                if let Some(note) = &r.note {
                    writeln!(out, "    {note}")?;
                }
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            writeln!(
                out,
                "{} verified, {} mismatch, {} inapplicable",
                count(Status::Verified),
                count(Status::Mismatch),
                count(Status::Inapplicable)
            )?;
        }
        Format::Json => {
            for r in reports {
                json_line(out, &r.record(timing))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec![
                "claim",
                "n",
                "params",
                "status",
                "lhs",
                "rhs",
                "counterexample",
                "cofactor",
                "note",
            ];
            if timing {
                header.push("elapsed_ms");
            }
            w.write_record(&header)?;
            for r in reports {
                let mut row = vec![
                    r.claim.to_string(),
                    r.n.to_string(),
                    r.params.to_string(),
                    r.status.to_string(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.counterexample.clone().unwrap_or_default(),
                    r.cofactor
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    r.note.clone().unwrap_or_default(),
                ];
                if timing {
                    row.push(format!("{:.3}", r.elapsed.as_secs_f64() * 1e3));
                }
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
