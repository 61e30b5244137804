//! Machine-readable reports. Every field has a fixed order and integers and
//! rationals are written as strings, so equal runs give byte-identical JSON.

use std::fmt::Write as _;

use serde::Serialize;
use wellcap_core::{BigInt, CapImageReport, IntegerMatrix, Q};

use crate::problem::format_rational;

pub fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn matrix(m: &IntegerMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| ints(&m.row(i))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub norm: String,
    pub n: usize,
    pub radii: Vec<RadiusReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<MapReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub events: Option<Vec<EventReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiusReport {
    pub radius: String,
    pub x_simplices: usize,
    pub a_simplices: usize,
    pub b_simplices: usize,
    pub obstruction: ObstructionReport,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub test_point: Vec<String>,
    pub support: usize,
    /// `H^n(X, A)`.
    pub group: String,
    pub class: Vec<String>,
    pub trivial: bool,
}

/// One cap image `z ⌢ H_k(X, A ∪ B) ⊆ H_j(X, B)` with `j = k − n`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub k: usize,
    pub j: usize,
    pub source: String,
    pub ambient: String,
    pub cap_image: String,
    /// Cap-image basis in ambient coordinates.
    pub generators: Vec<Vec<String>>,
}

impl DegreeReport {
    pub fn from_cap(report: &CapImageReport) -> Self {
        DegreeReport {
            k: report.k,
            j: report.k - report.n,
            source: report.source.iso_type().to_string(),
            ambient: report.ambient.iso_type().to_string(),
            cap_image: report.subgroup.iso_type().to_string(),
            generators: report.subgroup.basis().iter().map(|b| ints(b)).collect(),
        }
    }
}

/// `ι` between consecutive radii for one degree, columns indexed by sources.
#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub from: String,
    pub to: String,
    pub degree: usize,
    pub iota: Vec<Vec<String>>,
    pub returns: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EventReport {
    pub radius: String,
    pub degree: usize,
    pub multiplicity: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub radius: String,
    pub seed: u64,
    pub samples: usize,
    pub contained: usize,
    pub violated: usize,
    pub rejected: usize,
    pub verdicts: Vec<VerdictReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub sample: usize,
    pub provenance: String,
    pub bound: String,
    pub k: usize,
    /// `contained`, `violated`, or `rejected` for a non-generic zero set.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// A short human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} (norm {}, n = {})", self.command, self.norm, self.n);
        for r in &self.radii {
            let o = &r.obstruction;
            let _ = writeln!(
                out,
                "r = {}: |X| = {}, |A| = {}, obstruction in {} is {}",
                r.radius,
                r.x_simplices,
                r.a_simplices,
                o.group,
                if o.trivial { "trivial" } else { "nontrivial" }
            );
            for d in &r.degrees {
                let _ = writeln!(out, "  k = {}: cap image {} in H_{} = {}", d.k, d.cap_image, d.j, d.ambient);
            }
        }
        if let Some(events) = &self.events {
            if events.is_empty() {
                let _ = writeln!(out, "no events");
            }
            for e in events {
                match &e.torsion {
                    None => {
                        let _ = writeln!(out, "event: degree {} loses rank {} at r = {}", e.degree, e.multiplicity, e.radius);
                    }
                    Some(t) => {
                        let _ = writeln!(out, "event: degree {} loses {} x Z/{} at r = {}", e.degree, e.multiplicity, t, e.radius);
                    }
                }
            }
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(
                out,
                "verify r = {}: {} samples, {} contained, {} violated, {} rejected",
                v.radius, v.samples, v.contained, v.violated, v.rejected
            );
        }
        out
    }
}

pub fn rational(q: &Q) -> String {
    format_rational(q)
}
