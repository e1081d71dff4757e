//! CSV tables, PPM class maps and rational formatting.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{EntanglementClass, EntanglementReport};

pub const CSV_HEADER: [&str; 12] = [
    "f", "phi", "neg1", "neg2", "neg3", "two_neg1", "two_neg2", "two_neg3", "tau3_lb", "cgme_lb",
    "ghz_fid", "class",
];

/// One grid point of a sweep or curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub f: f64,
    pub phi: f64,
    pub negativity: [f64; 3],
    pub tau3_lb: f64,
    pub cgme_lb: f64,
    pub ghz_fidelity_opt: f64,
    pub class: EntanglementClass,
}

impl SweepRow {
    pub fn new(f: f64, phi: f64, r: &EntanglementReport) -> Self {
        Self {
            f,
            phi,
            negativity: r.negativity,
            tau3_lb: r.tau3_lb,
            cgme_lb: r.cgme_lb,
            ghz_fidelity_opt: r.ghz_fidelity_opt,
            class: r.class,
        }
    }

    /// `2N` per cut, the scale negativity curves are usually drawn on.
    pub fn two_negativity(&self) -> [f64; 3] {
        self.negativity.map(|n| 2.0 * n)
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_rows<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in rows {
        let two = r.two_negativity();
        let mut rec: Vec<String> = vec![format_float(r.f), format_float(r.phi)];
        rec.extend(r.negativity.iter().map(|&x| format_float(x)));
        rec.extend(two.iter().map(|&x| format_float(x)));
        rec.push(format_float(r.tau3_lb));
        rec.push(format_float(r.cgme_lb));
        rec.push(format_float(r.ghz_fidelity_opt));
        rec.push(r.class.label().to_string());
        out.write_record(&rec)?;
    }
    out.flush()?;
    Ok(())
}

pub fn rows_to_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_rows(&mut buf, rows)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

/// Reads a table written by [`write_rows`]; `2N` columns must equal twice
/// the `N` columns.
pub fn read_rows<R: Read>(r: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::config("csv header", format!("expected {}", CSV_HEADER.join(","))));
    }
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| -> Result<f64> {
            rec[i].parse::<f64>().map_err(|_| {
                Error::config(format!("row {}, column {}", line + 2, CSV_HEADER[i]), "not a number")
            })
        };
        let negativity = [field(2)?, field(3)?, field(4)?];
        let two = [field(5)?, field(6)?, field(7)?];
        if negativity.iter().zip(&two).any(|(n, t)| 2.0 * n != *t) {
            return Err(Error::config(format!("row {}", line + 2), "2N columns disagree with N"));
        }
        let class = EntanglementClass::from_label(&rec[11])
            .ok_or_else(|| Error::config(format!("row {}, column class", line + 2), "unknown class"))?;
        rows.push(SweepRow {
            f: field(0)?,
            phi: field(1)?,
            negativity,
            tau3_lb: field(8)?,
            cgme_lb: field(9)?,
            ghz_fidelity_opt: field(10)?,
            class,
        });
    }
    Ok(rows)
}

/// Bath path table with columns `t,f,phi`.
pub fn write_path<W: Write>(w: W, times: &[f64], points: &[(f64, f64)]) -> Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(["t", "f", "phi"])?;
    for (t, (f, phi)) in times.iter().zip(points) {
        out.write_record([format_float(*t), format_float(*f), format_float(*phi)])?;
    }
    out.flush()?;
    Ok(())
}

/// Quantity rendered by [`emit_map`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    /// Red GHZ, yellow W, light blue biseparable, white undetected.
    #[default]
    Class,
    /// `2N` of one cut, white at 0 and black at 1.
    TwoNegativity(usize),
    Tau3,
    Cgme,
}

pub fn class_color(c: EntanglementClass) -> [u8; 3] {
    match c {
        EntanglementClass::Ghz => [255, 0, 0],
        EntanglementClass::W => [255, 255, 0],
        EntanglementClass::BiseparableEntangled => [173, 216, 230],
        EntanglementClass::Undetected => [255, 255, 255],
    }
}

/// Splits row-major rows (`φ` outer, `f` inner) into `(width, height)`.
pub fn grid_shape(rows: &[SweepRow]) -> Result<(usize, usize)> {
    let first = rows.first().ok_or_else(|| Error::RaggedGrid("no rows".into()))?;
    let width = rows.iter().take_while(|r| r.phi == first.phi).count();
    if rows.len() % width != 0 {
        return Err(Error::RaggedGrid(format!(
            "{} rows do not fill lines of {width}",
            rows.len()
        )));
    }
    let height = rows.len() / width;
    for (line, chunk) in rows.chunks(width).enumerate() {
        let phi = chunk[0].phi;
        if chunk.iter().any(|r| r.phi != phi) {
            return Err(Error::RaggedGrid(format!("line {line} mixes φ values")));
        }
        if line > 0 && chunk[0].phi == rows[(line - 1) * width].phi {
            return Err(Error::RaggedGrid(format!("line {line} repeats φ = {phi}")));
        }
        if chunk.iter().zip(&rows[..width]).any(|(a, b)| a.f != b.f) {
            return Err(Error::RaggedGrid(format!("line {line} has different f values")));
        }
    }
    Ok((width, height))
}

/// Binary P6 pixmap with one pixel per grid point, `f` to the right and `φ`
/// upward.
pub fn emit_map(rows: &[SweepRow], channel: Channel) -> Result<Vec<u8>> {
    let (width, height) = grid_shape(rows)?;
    if let Channel::TwoNegativity(cut) = channel {
        if cut >= 3 {
            return Err(Error::config("channel", "cut index must be 0, 1 or 2"));
        }
    }
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    for line in (0..height).rev() {
        for r in &rows[line * width..(line + 1) * width] {
            let px = match channel {
                Channel::Class => class_color(r.class),
                Channel::TwoNegativity(cut) => gray(r.two_negativity()[cut]),
                Channel::Tau3 => gray(r.tau3_lb),
                Channel::Cgme => gray(r.cgme_lb),
            };
            out.extend_from_slice(&px);
        }
    }
    Ok(out)
}

fn gray(v: f64) -> [u8; 3] {
    let g = (255.0 * (1.0 - v.clamp(0.0, 1.0))).round() as u8;
    [g, g, g]
}

/// `p/q` when `x` is within `1e-12` of a fraction with `q ≤ 1024`, else the
/// shortest float form.
pub fn format_rational(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    for q in 1..=1024u32 {
        let p = (x * q as f64).round();
        if (x - p / q as f64).abs() <= 1e-12 {
            return if q == 1 {
                format!("{}", p as i64)
            } else {
                format!("{}/{q}", p as i64)
            };
        }
    }
    format_float(x)
}
