//! CSV tables for profiles, curves and surfaces.

use std::io::Write;

use crate::curvature_ode::CurvatureProfile;
use crate::curve::{SpaceCurve, Vec3};
use crate::error::{Error, Result};
use crate::geometry::{SampledCurve, TranslationSurface};

pub const PROFILE_HEADER: [&str; 5] = ["s", "kappa", "kappa_prime", "tau", "residual"];
pub const CURVE_HEADER: [&str; 15] = [
    "s", "x", "y", "z", "tx", "ty", "tz", "nx", "ny", "nz", "bx", "by", "bz", "kappa", "tau",
];
pub const SAMPLED_HEADER: [&str; 4] = ["u", "x", "y", "z"];
pub const SURFACE_HEADER: [&str; 8] = ["s", "t", "x", "y", "z", "K", "H", "phi"];

/// Shortest round-trip decimal; scientific notation outside [1e-4, 1e15).
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => Error::Parse {
            line,
            column: (len.min(expected_len) + 1) as usize,
            message: format!("expected {expected_len} fields, found {len}"),
        },
        csv::ErrorKind::Utf8 { err, .. } => Error::Parse {
            line,
            column: err.field() + 1,
            message: "invalid UTF-8".into(),
        },
        other => Error::Parse {
            line,
            column: 0,
            message: format!("{other:?}"),
        },
    }
}

fn write_rows<W: Write>(w: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header).map_err(csv_error)?;
    for row in rows {
        out.write_record(row.into_iter().map(format_real))
            .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_profile_csv<W: Write>(p: &CurvatureProfile, w: W) -> Result<()> {
    let rows = (0..p.len()).map(|i| {
        vec![
            p.s[i],
            p.kappa[i],
            p.kappa_prime[i],
            p.tau[i],
            p.first_integral_residual[i],
        ]
    });
    write_rows(w, &PROFILE_HEADER, rows)
}

pub fn write_curve_csv<W: Write>(c: &SpaceCurve, w: W) -> Result<()> {
    let rows = (0..c.len()).map(|i| {
        let mut row = vec![c.s[i]];
        for v in [c.position[i], c.tangent[i], c.normal[i], c.binormal[i]] {
            row.extend(v.iter());
        }
        row.push(c.kappa[i]);
        row.push(c.tau[i]);
        row
    });
    write_rows(w, &CURVE_HEADER, rows)
}

pub fn write_sampled_csv<W: Write>(c: &SampledCurve, w: W) -> Result<()> {
    let rows =
        c.u.iter()
            .zip(&c.points)
            .map(|(&u, p)| vec![u, p.x, p.y, p.z]);
    write_rows(w, &SAMPLED_HEADER, rows)
}

/// One row per node, s-major; degenerate nodes carry NaN curvatures.
pub fn write_surface_csv<W: Write>(surf: &TranslationSurface, w: W) -> Result<()> {
    let rows = (0..surf.rows()).flat_map(move |i| {
        (0..surf.cols()).map(move |j| {
            let k = surf.index(i, j);
            let p = surf.position[k];
            vec![
                surf.s[i],
                surf.t[j],
                p.x,
                p.y,
                p.z,
                surf.gauss[k],
                surf.mean[k],
                surf.phi[k],
            ]
        })
    });
    write_rows(w, &SURFACE_HEADER, rows)
}

/// A curve read from disk: either with Frenet frames on an arc-length grid, or
/// bare positions on an arbitrary uniform parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveData {
    Frenet(SpaceCurve),
    Sampled(SampledCurve),
}

fn parse_rows(bytes: &[u8], header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(col, field)| match field.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse {
                    line,
                    column: col + 1,
                    message: format!(
                        "{:?} in column {:?} is not a finite number",
                        field, header[col]
                    ),
                }),
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 2,
            column: 1,
            message: "no data rows".into(),
        });
    }
    Ok(rows)
}

/// Reads a curve table, choosing the schema from the header line.
pub fn parse_curve_csv(bytes: &[u8]) -> Result<CurveData> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_owned)
        .collect();
    if header == CURVE_HEADER {
        let rows = parse_rows(bytes, &CURVE_HEADER)?;
        let v = |r: &[f64], k: usize| Vec3::new(r[k], r[k + 1], r[k + 2]);
        Ok(CurveData::Frenet(SpaceCurve {
            s: rows.iter().map(|r| r[0]).collect(),
            position: rows.iter().map(|r| v(r, 1)).collect(),
            tangent: rows.iter().map(|r| v(r, 4)).collect(),
            normal: rows.iter().map(|r| v(r, 7)).collect(),
            binormal: rows.iter().map(|r| v(r, 10)).collect(),
            kappa: rows.iter().map(|r| r[13]).collect(),
            tau: rows.iter().map(|r| r[14]).collect(),
        }))
    } else if header == SAMPLED_HEADER {
        let rows = parse_rows(bytes, &SAMPLED_HEADER)?;
        Ok(CurveData::Sampled(SampledCurve {
            u: rows.iter().map(|r| r[0]).collect(),
            points: rows.iter().map(|r| Vec3::new(r[1], r[2], r[3])).collect(),
        }))
    } else {
        Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!(
                "unrecognized header {:?}; expected {} or {}",
                header.join(","),
                CURVE_HEADER.join(","),
                SAMPLED_HEADER.join(",")
            ),
        })
    }
}
