//! Structured output records and the plain-text Gram file format.
//!
//! A Gram file holds the dimension on its first line followed by one row of
//! whitespace-separated integers per line. Blank lines and lines starting
//! with `#` are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analyze::LatticeReport;
use crate::error::{Error, Result};
use crate::field::{FieldKind, RealField};
use crate::lattice::{CandidateDiagnostic, Construction, ExactGram};
use crate::quaternion::OrderProvenance;
use crate::scan::{CensusReport, DensityConstants, ScanItem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub parameter: u64,
    pub degree: usize,
    pub min_poly: Vec<String>,
    pub discriminant: String,
    pub index: u64,
}

impl From<&RealField> for FieldDescriptor {
    fn from(f: &RealField) -> Self {
        FieldDescriptor {
            kind: f.kind(),
            parameter: f.parameter(),
            degree: f.degree(),
            min_poly: f.min_poly().iter().map(ToString::to_string).collect(),
            discriminant: f.discriminant().to_string(),
            index: f.index(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    /// Power-basis coordinates of `alpha`.
    pub alpha: Vec<String>,
    pub label: String,
    pub selection_log: Vec<CandidateDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRecord {
    pub exact_det: String,
    pub det_via_formula: String,
    pub covolume: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub precision_bits: u32,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderProvenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<FormulaRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<LatticeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanItem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<DensityConstants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckLine>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// One named pass/fail line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl OutputRecord {
    /// Fills the field, order, twist, Gram and formula sections.
    pub fn with_construction(mut self, c: &Construction, gram: &ExactGram) -> Result<Self> {
        let lat = &c.lattice;
        self.field = Some(FieldDescriptor::from(lat.field()));
        self.order = Some(lat.order().provenance());
        self.twist = Some(TwistRecord {
            alpha: c.selection.alpha.coord_strings(),
            label: c.selection.label.clone(),
            selection_log: c.selection.log.clone(),
        });
        self.gram = gram.to_i64();
        let exact = gram.det();
        let formula = lat.det_via_formula()?;
        self.formula = Some(FormulaRecord {
            exact_det: exact.to_string(),
            det_via_formula: formula.to_string(),
            covolume: crate::lattice::formula_covolume(lat.order(), lat.alpha())?.to_string(),
            equal: exact == formula,
        });
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// `key: value` lines followed by the Gram matrix rows.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k}: {v}");
        };
        line("command", self.command.join(" "));
        if let Some(f) = &self.field {
            line("field", format!("{:?} parameter {} degree {}", f.kind, f.parameter, f.degree));
            line("field_discriminant", f.discriminant.clone());
            line("index", f.index.to_string());
        }
        if let Some(o) = &self.order {
            line("order", format!("{o:?}"));
        }
        if let Some(t) = &self.twist {
            line("alpha", t.alpha.join(" "));
            line("twist", t.label.clone());
        }
        if let Some(fm) = &self.formula {
            line("exact_det", fm.exact_det.clone());
            line("det_via_formula", fm.det_via_formula.clone());
        }
        if let Some(e) = &self.embedding {
            line("embedding_deviation", format!("{:e} at {} bits", e.relative_deviation, e.precision_bits));
        }
        if let Some(r) = &self.report {
            line("dimension", r.dimension.to_string());
            line("det", r.det.clone());
            line("integral", r.integral.to_string());
            line("even", r.even.to_string());
            if let Some(m) = r.min_norm {
                line("min", m.to_string());
            }
            if let Some(k) = r.kissing {
                line("kissing", k.to_string());
            }
            if !r.theta.is_empty() {
                line("theta", r.theta.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            if let Some(d) = &r.center_density {
                line(
                    "center_density",
                    match d {
                        crate::analyze::CenterDensity::Exact(s) => s.clone(),
                        crate::analyze::CenterDensity::Approximate(x) => format!("{x:.12}"),
                    },
                );
            }
            if let Some(c) = &r.root_components {
                line(
                    "root_components",
                    c.iter().map(|x| format!("rank {} roots {}", x.rank, x.roots)).collect::<Vec<_>>().join(", "),
                );
            }
            line("classification", format!("{:?}", r.classification));
            line("extremal", r.extremal.to_string());
        }
        if let Some(s) = &self.scan {
            line("scan", serde_json::to_string(s).expect("serialize"));
        }
        if let Some(c) = &self.census {
            line("census", serde_json::to_string(c).expect("serialize"));
        }
        if let Some(c) = &self.constants {
            line("P", c.p_bound.to_string());
            line("c1", format!("{:.12}", c.c1));
            line("tau", format!("{:.12}", c.tau));
            line("beta", format!("{:.12}", c.beta));
        }
        if let Some(checks) = &self.checks {
            for c in checks {
                line(if c.pass { "PASS" } else { "FAIL" }, format!("{} ({})", c.name, c.detail));
            }
        }
        if let Some(t) = self.timing_ms {
            line("timing_ms", t.to_string());
        }
        if let Some(g) = &self.gram {
            out.push_str("gram:\n");
            out.push_str(&format_gram_rows(g));
        }
        out
    }
}

fn format_gram_rows(rows: &[Vec<i64>]) -> String {
    rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
}

/// Gram file text for an integer matrix.
pub fn format_gram(rows: &[Vec<i64>]) -> String {
    format!("{}\n{}", rows.len(), format_gram_rows(rows))
}

/// Parses a Gram file.
pub fn parse_gram(text: &str) -> Result<ExactGram> {
    let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty Gram file".into()))?;
    let n: usize = first.parse().map_err(|_| Error::Parse(format!("bad dimension line {first:?}")))?;
    if n == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for (lineno, l) in lines {
        let row = l
            .split_whitespace()
            .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("line {}: bad integer {x:?}", lineno + 1))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!("line {}: {} entries, expected {n}", lineno + 1, row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse(format!("{} rows, expected {n}", rows.len())));
    }
    ExactGram::from_integers(&rows).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let text = "# comment\n2\n\n2 -1\n-1 2\n";
        let g = parse_gram(text).unwrap();
        assert_eq!(g.to_i64().unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(parse_gram(&format_gram(&g.to_i64().unwrap())).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_gram("").is_err());
        assert!(parse_gram("2\n1 0\n").is_err());
        assert!(parse_gram("2\n1 0\n0 x\n").is_err());
        assert!(parse_gram("2\n1 0\n1 1\n").is_err());
        assert!(parse_gram("2\n1 0 0\n0 1\n").is_err());
    }

    #[test]
    fn fixtures_parse() {
        let e8 = parse_gram(include_str!("../fixtures/e8_sqrt5.gram")).unwrap();
        assert_eq!(e8.dim(), 8);
        let bw = parse_gram(include_str!("../fixtures/bw16_m20.gram")).unwrap();
        assert_eq!(bw.dim(), 16);
    }

    #[test]
    fn json_roundtrip_default() {
        let r = OutputRecord { command: vec!["x".into()], timing_ms: Some(3), ..Default::default() };
        assert_eq!(OutputRecord::from_json(&r.to_json()).unwrap(), r);
    }
}
