//! On-disk formats: scattering data as JSON, sampled real functions as CSV,
//! and the inversion report. Floats serialize with shortest round-trip
//! decimals, so identical inputs produce bit-identical files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write as _};
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::direct::bound::BoundStateSet;
use crate::direct::export::ScatteringData;
use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexLine {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexLine {
    fn from_values(v: &[C64]) -> Self {
        ComplexLine {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    fn into_values(self) -> Result<Vec<C64>> {
        if self.re.len() != self.im.len() {
            return Err(Error::Validation("re/im length mismatch".into()));
        }
        Ok(self.re.iter().zip(&self.im).map(|(&r, &i)| C64::new(r, i)).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundStatesFile {
    pub zk: Vec<f64>,
    pub ws: Vec<f64>,
    pub include_zero: bool,
}

impl From<&BoundStateSet> for BoundStatesFile {
    fn from(b: &BoundStateSet) -> Self {
        BoundStatesFile { zk: b.zk.clone(), ws: b.ws.clone(), include_zero: b.include_zero }
    }
}

/// Scattering data set {S₂, S₃, C} with the real spectrum set, sampled on
/// the shared diameter grid of the line bundle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OmegaFile {
    pub a_prime: f64,
    pub r: i32,
    pub grid: Vec<f64>,
    pub s2: Vec<ComplexLine>,
    pub s3: Vec<ComplexLine>,
    pub c: Vec<ComplexLine>,
    pub ealpha: BoundStatesFile,
}

impl OmegaFile {
    pub fn from_data(d: &ScatteringData) -> Self {
        OmegaFile {
            a_prime: d.a_prime,
            r: d.r,
            grid: d.grid.clone(),
            s2: d.s2.iter().map(|v| ComplexLine::from_values(v)).collect(),
            s3: d.s3.iter().map(|v| ComplexLine::from_values(v)).collect(),
            c: d.c.iter().map(|v| ComplexLine::from_values(v)).collect(),
            ealpha: (&d.ealpha).into(),
        }
    }

    pub fn into_data(self) -> Result<ScatteringData> {
        let unpack = |v: Vec<ComplexLine>, what: &str| -> Result<[Vec<C64>; 3]> {
            if v.len() != 3 {
                return Err(Error::Validation(format!("{what} needs 3 lines")));
            }
            let mut it = v.into_iter();
            let mut out: [Vec<C64>; 3] = Default::default();
            for slot in out.iter_mut() {
                let line = it.next().unwrap().into_values()?;
                if line.len() != self.grid.len() {
                    return Err(Error::Validation(format!(
                        "{what} line length does not match the grid"
                    )));
                }
                *slot = line;
            }
            Ok(out)
        };
        let s2 = unpack(self.s2, "s2")?;
        let s3 = unpack(self.s3, "s3")?;
        let c = unpack(self.c, "c")?;
        let ealpha = BoundStateSet {
            zk: self.ealpha.zk,
            ws: self.ealpha.ws,
            include_zero: self.ealpha.include_zero,
        };
        Ok(ScatteringData::new(self.a_prime, self.r, self.grid, s2, s3, c, ealpha))
    }
}

/// Inversion report with per-stage residuals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvertReport {
    pub alpha_hat: f64,
    pub stage_residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let f = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(f, value)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let f = BufReader::new(File::open(path)?);
    Ok(serde_json::from_reader(f)?)
}

/// Two-column CSV with a header row.
pub fn write_xy_csv(path: &Path, headers: (&str, &str), xs: &[f64], ys: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record([headers.0, headers.1])?;
    for (x, y) in xs.iter().zip(ys) {
        w.write_record([format!("{x}"), format!("{y}")])?;
    }
    w.flush().map_err(|e| Error::Io(e))?;
    Ok(())
}

/// Reads a two-column CSV (header row required).
pub fn read_xy_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut r = csv::Reader::from_reader(BufReader::new(File::open(path)?));
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if rec.len() < 2 {
            return Err(Error::Validation("CSV row with fewer than two fields".into()));
        }
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse()
                .map_err(|_| Error::Validation(format!("bad float {s:?} in CSV")))
        };
        xs.push(parse(&rec[0])?);
        ys.push(parse(&rec[1])?);
    }
    Ok((xs, ys))
}

/// Multi-column CSV of complex line samples: x, then re/im per line.
pub fn write_lines_csv(
    path: &Path,
    xs: &[f64],
    lines: &[(&str, &[C64])],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    let mut header = vec!["x".to_string()];
    for (name, _) in lines {
        header.push(format!("{name}_re"));
        header.push(format!("{name}_im"));
    }
    w.write_record(&header)?;
    for (j, x) in xs.iter().enumerate() {
        let mut row = vec![format!("{x}")];
        for (_, vals) in lines {
            row.push(format!("{}", vals[j].re));
            row.push(format!("{}", vals[j].im));
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(Error::Io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::direct::export::export_scattering;
    use crate::direct::potential::Potential;

    #[test]
    fn omega_roundtrips_through_json() {
        let q = Potential::monomial(1, 1.0);
        let d = export_scattering(0.0, &q, &|_| C64::new(1.0, 0.0), 0, 0.3, 24).unwrap();
        let dir = std::env::temp_dir().join("cubic-scatter-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("omega.json");
        write_json(&path, &OmegaFile::from_data(&d)).unwrap();
        let back: OmegaFile = read_json(&path).unwrap();
        let d2 = back.into_data().unwrap();
        assert_eq!(d.grid, d2.grid);
        for k in 0..3 {
            for j in 0..d.grid.len() {
                assert_eq!(d.s2[k][j], d2.s2[k][j]);
                assert_eq!(d.c[k][j], d2.c[k][j]);
            }
        }
    }

    #[test]
    fn csv_roundtrip_is_lossless() {
        let xs = vec![0.1, 0.2, 0.30000000000000004];
        let ys = vec![1.5e-17, -2.0, 3.75];
        let dir = std::env::temp_dir().join("cubic-scatter-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("xy.csv");
        write_xy_csv(&path, ("x", "q"), &xs, &ys).unwrap();
        let (xs2, ys2) = read_xy_csv(&path).unwrap();
        assert_eq!(xs, xs2);
        assert_eq!(ys, ys2);
    }
}
