//! Grid and polynomial files. JSON keeps full precision; CSV flattens
//! multivector components into one column per blade.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::clifford::{blade_label, Multivector};
use crate::error::{FueterError, Result};
use crate::inverse::{AxialFunction, Rectangle};
use crate::monogenic::{HomogeneousPolynomial, MonogenicPolynomial};

/// (blade label, coefficient) pairs, e.g. `[["", 1.0], ["13", -2.0]]`.
pub type BladePairs = Vec<(String, f64)>;

pub fn multivector_to_pairs(v: &Multivector) -> BladePairs {
    v.to_pairs(false)
}

pub fn multivector_from_pairs(m: usize, pairs: &BladePairs) -> Result<Multivector> {
    Multivector::from_pairs(m, pairs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: BladePairs,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub m: usize,
    pub k: u32,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn from_polynomial(p: &HomogeneousPolynomial) -> Self {
        Self {
            m: p.dim(),
            k: p.degree(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    exponents: e.to_vec(),
                    coeff: multivector_to_pairs(c),
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<HomogeneousPolynomial> {
        let mut p = HomogeneousPolynomial::zero(self.m, self.k)?;
        for t in &self.terms {
            p.add_term(&t.exponents, &multivector_from_pairs(self.m, &t.coeff)?)?;
        }
        Ok(p)
    }

    pub fn to_monogenic(&self) -> Result<MonogenicPolynomial> {
        MonogenicPolynomial::new(self.to_polynomial()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Pair([f64; 2]),
    Multivector(BladePairs),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub x0: f64,
    pub r: f64,
    pub value: GridValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFileMeta {
    pub m: usize,
    pub k: u32,
    pub rect: [f64; 4],
    pub nx0: usize,
    pub nr: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFile {
    pub meta: GridFileMeta,
    pub points: Vec<GridPoint>,
}

fn io_err(e: impl std::fmt::Display) -> FueterError {
    FueterError::Parse(e.to_string())
}

impl GridFile {
    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(io_err)
    }

    pub fn read_json<R: Read>(r: R) -> Result<Self> {
        serde_json::from_reader(r).map_err(io_err)
    }

    fn is_pair(&self) -> bool {
        matches!(self.points.first(), Some(GridPoint { value: GridValue::Pair(_), .. }))
    }

    /// Column order: x0, r, then `first,second` for pairs or `c<label>` for
    /// every blade of R_{0,m}. Metadata goes in a leading `#` line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let meta = serde_json::to_string(&self.meta).map_err(io_err)?;
        writeln!(w, "# {meta}").map_err(io_err)?;
        let pair = self.is_pair();
        let blades = 1u32 << self.meta.m;
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["x0".to_string(), "r".to_string()];
        if pair {
            header.extend(["first".to_string(), "second".to_string()]);
        } else {
            header.extend((0..blades).map(|b| format!("c{}", blade_label(b))));
        }
        out.write_record(&header).map_err(io_err)?;
        for p in &self.points {
            let mut row = vec![p.x0.to_string(), p.r.to_string()];
            match &p.value {
                GridValue::Pair([a, b]) if pair => row.extend([a.to_string(), b.to_string()]),
                GridValue::Multivector(pairs) if !pair => {
                    let v = multivector_from_pairs(self.meta.m, pairs)?;
                    row.extend(v.coeffs().iter().map(f64::to_string));
                }
                _ => return Err(FueterError::InvalidArgument("grid mixes pair and multivector values".into())),
            }
            out.write_record(&row).map_err(io_err)?;
        }
        out.flush().map_err(io_err)
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut reader = BufReader::new(r);
        let mut first = String::new();
        reader.read_line(&mut first).map_err(io_err)?;
        let meta: GridFileMeta = serde_json::from_str(
            first
                .strip_prefix('#')
                .ok_or_else(|| FueterError::Parse("missing metadata line".into()))?
                .trim(),
        )
        .map_err(io_err)?;
        let mut rd = csv::Reader::from_reader(reader);
        let header = rd.headers().map_err(io_err)?.clone();
        let pair = header.len() == 4 && &header[2] == "first";
        let blades: Vec<u32> = if pair {
            Vec::new()
        } else {
            header
                .iter()
                .skip(2)
                .map(|h| {
                    let label = h.strip_prefix('c').ok_or_else(|| FueterError::Parse(format!("bad column {h:?}")))?;
                    crate::clifford::parse_blade_label(label, meta.m)
                })
                .collect::<Result<_>>()?
        };
        let parse = |s: &str| s.trim().parse::<f64>().map_err(io_err);
        let mut points = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(io_err)?;
            let x0 = parse(&rec[0])?;
            let r = parse(&rec[1])?;
            let value = if pair {
                GridValue::Pair([parse(&rec[2])?, parse(&rec[3])?])
            } else {
                let mut coeffs = vec![0.0; 1 << meta.m];
                for (i, &b) in blades.iter().enumerate() {
                    coeffs[b as usize] = parse(&rec[i + 2])?;
                }
                GridValue::Multivector(multivector_to_pairs(&Multivector::from_coeffs(meta.m, coeffs)?))
            };
            points.push(GridPoint { x0, r, value });
        }
        Ok(Self { meta, points })
    }
}

fn axis(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Bilinear interpolation of tabulated (A, B) samples. The grid must be a
/// full tensor product; the resulting field lives on the bounding box of the
/// nodes. Accuracy is limited by the sample spacing.
pub fn tabulated_axial_field(grid: &GridFile, p_k: MonogenicPolynomial) -> Result<AxialFunction> {
    let xs = axis(grid.points.iter().map(|p| p.x0));
    let rs = axis(grid.points.iter().map(|p| p.r));
    if xs.len() < 2 || rs.len() < 2 || xs.len() * rs.len() != grid.points.len() {
        return Err(FueterError::InvalidArgument(
            "tabulated field needs a full tensor grid of at least 2×2 samples".into(),
        ));
    }
    let mut table: BTreeMap<(usize, usize), [f64; 2]> = BTreeMap::new();
    for p in &grid.points {
        let GridValue::Pair(v) = p.value else {
            return Err(FueterError::InvalidArgument("tabulated field needs (A, B) pairs".into()));
        };
        let i = xs.binary_search_by(|x| x.total_cmp(&p.x0)).unwrap();
        let j = rs.binary_search_by(|x| x.total_cmp(&p.r)).unwrap();
        table.insert((i, j), v);
    }
    if table.len() != grid.points.len() {
        return Err(FueterError::InvalidArgument("duplicate grid nodes".into()));
    }
    let nr = rs.len();
    let flat: Vec<[f64; 2]> = table.into_values().collect();
    let rect = Rectangle::new(xs[0], xs[xs.len() - 1], rs[0], rs[nr - 1])?;
    let interp = std::sync::Arc::new(move |x0: f64, r: f64, c: usize| -> f64 {
        let locate = |axis: &[f64], x: f64| -> Option<(usize, f64)> {
            if !(x >= axis[0] - 1e-12 && x <= axis[axis.len() - 1] + 1e-12) {
                return None;
            }
            let i = axis.partition_point(|&a| a <= x).clamp(1, axis.len() - 1) - 1;
            Some((i, (x - axis[i]) / (axis[i + 1] - axis[i])))
        };
        let (Some((i, tx)), Some((j, ty))) = (locate(&xs, x0), locate(&rs, r)) else {
            return f64::NAN;
        };
        let at = |i: usize, j: usize| flat[i * nr + j][c];
        (1.0 - tx) * ((1.0 - ty) * at(i, j) + ty * at(i, j + 1)) + tx * ((1.0 - ty) * at(i + 1, j) + ty * at(i + 1, j + 1))
    });
    let interp_b = std::sync::Arc::clone(&interp);
    AxialFunction::new(move |x0, r| interp(x0, r, 0), move |x0, r| interp_b(x0, r, 1), p_k, rect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenic::{builtin_pk, PkVariant};

    fn sample_grid(pair: bool) -> GridFile {
        let mut points = Vec::new();
        for i in 0..3 {
            for j in 0..4 {
                let x0 = 0.1 * i as f64 + 1.0 / 3.0;
                let r = 0.7 + 0.05 * j as f64;
                let value = if pair {
                    GridValue::Pair([x0 * r, std::f64::consts::PI * x0 - r])
                } else {
                    GridValue::Multivector(vec![("".into(), x0), ("2".into(), -r / 7.0), ("123".into(), 1e-300)])
                };
                points.push(GridPoint { x0, r, value });
            }
        }
        GridFile {
            meta: GridFileMeta { m: 3, k: 0, rect: [1.0 / 3.0, 0.5333, 0.7, 0.85], nx0: 3, nr: 4 },
            points,
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        for pair in [true, false] {
            let g = sample_grid(pair);
            let mut buf = Vec::new();
            g.write_json(&mut buf).unwrap();
            assert_eq!(GridFile::read_json(buf.as_slice()).unwrap(), g);
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        for pair in [true, false] {
            let g = sample_grid(pair);
            let mut buf = Vec::new();
            g.write_csv(&mut buf).unwrap();
            assert_eq!(GridFile::read_csv(buf.as_slice()).unwrap(), g);
        }
    }

    #[test]
    fn polynomial_json_round_trip() {
        let p = builtin_pk(5, 1, PkVariant::default()).unwrap();
        let j = PolynomialJson::from_polynomial(p.polynomial());
        let text = serde_json::to_string(&j).unwrap();
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_monogenic().unwrap().polynomial(), p.polynomial());
    }

    #[test]
    fn bilinear_field_reproduces_bilinear_data() {
        let g = sample_grid(true);
        let f = tabulated_axial_field(&g, MonogenicPolynomial::one(3).unwrap()).unwrap();
        let (x0, r) = (0.41, 0.777);
        assert!((f.eval_a(x0, r).unwrap() - x0 * r).abs() < 1e-14);
        assert!((f.eval_b(x0, r).unwrap() - (std::f64::consts::PI * x0 - r)).abs() < 1e-14);
        assert!(f.fields_unchecked(0.0, 0.8).0.is_nan());
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        let mut g = sample_grid(true);
        g.points.pop();
        assert!(tabulated_axial_field(&g, MonogenicPolynomial::one(3).unwrap()).is_err());
    }
}
