//! JSON mask files. Scalars are strings such as `"3/16"` or `"1/2-1/3 i"`.

use serde::{Deserialize, Serialize};

use crate::analysis::FilterJet;
use crate::error::{Error, Result};
use crate::mask::{Mask, Symmetry};
use crate::matrix::Mat;
use crate::scalar::{GaussRat, Rational};
use crate::sequence::MatrixSequence;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CenterSpec {
    Common(String),
    PerComponent(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDescriptor {
    pub center: CenterSpec,
    pub signs: Vec<i8>,
}

/// Filter jet block: `coeffs[k][l]` is the coefficient of `xi^k` in entry `l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterDescriptor {
    pub order: usize,
    pub coeffs: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaskDescriptor {
    pub r: usize,
    pub support: [i64; 2],
    pub coeff: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<FilterDescriptor>,
}

fn parse_scalar(s: &str) -> Result<GaussRat> {
    s.parse()
}

fn parse_rational(s: &str) -> Result<Rational> {
    let z = parse_scalar(s)?;
    if !z.is_real() {
        return Err(Error::Parse(format!("expected a real number, found `{s}`")));
    }
    Ok(z.re)
}

pub fn parse_vector(items: &[String]) -> Result<Vec<GaussRat>> {
    items.iter().map(|s| parse_scalar(s)).collect()
}

impl SymmetryDescriptor {
    pub fn to_symmetry(&self) -> Result<Symmetry> {
        let centers = match &self.center {
            CenterSpec::Common(c) => vec![parse_rational(c)?; self.signs.len()],
            CenterSpec::PerComponent(cs) => cs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?,
        };
        Symmetry::new(centers, self.signs.clone())
    }

    pub fn from_symmetry(s: &Symmetry) -> Self {
        let center = if s.is_uniform() {
            CenterSpec::Common(GaussRat::real(s.centers[0].clone()).to_string())
        } else {
            CenterSpec::PerComponent(s.centers.iter().map(|c| GaussRat::real(c.clone()).to_string()).collect())
        };
        SymmetryDescriptor { center, signs: s.signs.clone() }
    }
}

impl FilterDescriptor {
    pub fn to_filter(&self) -> Result<FilterJet> {
        if self.coeffs.len() != self.order + 1 {
            return Err(Error::Parse(format!(
                "filter of order {} needs {} coefficient rows, found {}",
                self.order,
                self.order + 1,
                self.coeffs.len()
            )));
        }
        let rows = self.coeffs.iter().map(|row| parse_vector(row)).collect::<Result<Vec<_>>>()?;
        FilterJet::from_rows(rows)
    }

    pub fn from_filter(v: &FilterJet) -> Self {
        let coeffs = v.jet().coeffs().iter().map(|c| c.entries().iter().map(|x| x.to_string()).collect()).collect();
        FilterDescriptor { order: v.order(), coeffs }
    }
}

impl MaskDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_mask(&self) -> Result<Mask> {
        let [lo, hi] = self.support;
        if hi < lo {
            return Err(Error::Parse(format!("support [{lo}, {hi}] is empty")));
        }
        let len = (hi - lo + 1) as usize;
        if self.coeff.len() != len {
            return Err(Error::Parse(format!("support [{lo}, {hi}] needs {len} coefficients, found {}", self.coeff.len())));
        }
        let mut coeffs = Vec::with_capacity(len);
        for (idx, m) in self.coeff.iter().enumerate() {
            if m.len() != self.r || m.iter().any(|row| row.len() != self.r) {
                return Err(Error::Parse(format!("coefficient {} is not {}x{}", lo + idx as i64, self.r, self.r)));
            }
            let rows = m.iter().map(|row| parse_vector(row)).collect::<Result<Vec<_>>>()?;
            coeffs.push(Mat::from_rows(rows)?);
        }
        let symmetry = self.symmetry.as_ref().map(|s| s.to_symmetry()).transpose()?;
        Mask::new(MatrixSequence::new(self.r, self.r, lo, coeffs)?, symmetry)
    }

    pub fn filter(&self) -> Result<Option<FilterJet>> {
        self.filter.as_ref().map(|f| f.to_filter()).transpose()
    }

    pub fn from_mask(a: &Mask, filter: Option<&FilterJet>) -> Self {
        let w = a.support();
        let coeff = w
            .iter()
            .map(|k| {
                let m = a.seq().at(k);
                (0..a.r()).map(|i| m.row_vec(i).iter().map(|x| x.to_string()).collect()).collect()
            })
            .collect();
        MaskDescriptor {
            r: a.r(),
            support: [w.lo, w.hi],
            coeff,
            symmetry: a.symmetry().map(SymmetryDescriptor::from_symmetry),
            filter: filter.map(FilterDescriptor::from_filter),
        }
    }
}

/// Column vector sequence file: `{"support": [lo, hi], "values": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorDescriptor {
    pub support: [i64; 2],
    pub values: Vec<Vec<String>>,
}

impl VectorDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses into a sequence whose coefficients are `rows x cols`, where
    /// each entry of `values` lists one coefficient row-major.
    pub fn to_sequence(&self, rows: usize, cols: usize) -> Result<MatrixSequence<GaussRat>> {
        let [lo, hi] = self.support;
        let len = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
        if self.values.len() != len {
            return Err(Error::Parse(format!("support [{lo}, {hi}] needs {len} entries, found {}", self.values.len())));
        }
        let mut coeffs = Vec::with_capacity(len);
        for v in &self.values {
            if v.len() != rows * cols {
                return Err(Error::Parse(format!("expected {} scalars per entry, found {}", rows * cols, v.len())));
            }
            let vals = parse_vector(v)?;
            coeffs.push(Mat::from_fn(rows, cols, |i, j| vals[i * cols + j].clone()));
        }
        MatrixSequence::new(rows, cols, lo, coeffs)
    }

    pub fn from_sequence(u: &MatrixSequence<GaussRat>) -> Self {
        match u.support() {
            None => VectorDescriptor { support: [0, -1], values: Vec::new() },
            Some(w) => VectorDescriptor {
                support: [w.lo, w.hi],
                values: w.iter().map(|k| u.at(k).entries().iter().map(|x| x.to_string()).collect()).collect(),
            },
        }
    }
}
