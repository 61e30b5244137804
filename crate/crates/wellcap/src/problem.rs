//! The JSON problem file: a complex, a subcomplex `B`, a vertex map and a norm.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wellcap_core::filtration::FiltrationError;
use wellcap_core::fixtures::Fixture;
use wellcap_core::{NormKind, PLMap, RadiiSchedule, Simplex, SimplicialComplex, VertexId, Q};

use crate::CliError;

/// Per-vertex values of a map `K → Q^n`, rationals written as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub n: usize,
    pub values: BTreeMap<u32, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    /// Maximal simplices over integer vertex ids.
    pub complex: Vec<Vec<u32>>,
    #[serde(rename = "B", default)]
    pub b: Vec<Vec<u32>>,
    pub map: MapFile,
    pub norm: String,
    #[serde(default)]
    pub radii: Vec<String>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub k: SimplicialComplex,
    pub b: SimplicialComplex,
    pub f: PLMap,
    pub norm: NormKind,
    pub radii: Vec<Q>,
}

pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    s.trim()
        .parse::<Q>()
        .map_err(|e| CliError::Invalid(format!("bad rational {s:?}: {e}")))
}

pub fn format_rational(q: &Q) -> String {
    q.to_string()
}

pub fn parse_norm(s: &str) -> Result<NormKind, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "linf" | "l_inf" | "inf" => Ok(NormKind::LInf),
        "l1" | "l_1" => Ok(NormKind::L1),
        "l2" | "l_2" => Err(CliError::UnsupportedNorm),
        other => Err(CliError::Invalid(format!("unknown norm {other:?}"))),
    }
}

fn simplices(list: &[Vec<u32>], what: &str) -> Result<Vec<Simplex>, CliError> {
    list.iter()
        .map(|ids| {
            Simplex::new(ids.iter().map(|&v| VertexId(v)).collect())
                .map_err(|e| CliError::Invalid(format!("{what}: {e}")))
        })
        .collect()
}

impl MapFile {
    pub fn from_map(f: &PLMap) -> Self {
        MapFile {
            n: f.n(),
            values: f
                .values()
                .iter()
                .map(|(v, x)| (v.0, x.iter().map(format_rational).collect()))
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<PLMap, CliError> {
        let mut values = BTreeMap::new();
        for (v, xs) in &self.values {
            let parsed = xs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            values.insert(VertexId(*v), parsed);
        }
        PLMap::new(self.n, values).map_err(|e| CliError::Invalid(format!("map: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn from_parts(k: &SimplicialComplex, b: &SimplicialComplex, f: &PLMap, norm: NormKind, radii: &[Q]) -> Self {
        let ids = |s: &Simplex| s.vertices().iter().map(|v| v.0).collect::<Vec<_>>();
        ProblemFile {
            complex: k.maximal_simplices().iter().map(ids).collect(),
            b: b.maximal_simplices().iter().map(ids).collect(),
            map: MapFile::from_map(f),
            norm: norm.name().to_string(),
            radii: radii.iter().map(format_rational).collect(),
        }
    }

    pub fn from_fixture(fx: &Fixture) -> Self {
        Self::from_parts(&fx.k, &fx.b, &fx.f, fx.norm, fx.radii.radii())
    }

    /// Parses and validates. `norm` overrides the file's norm when given.
    pub fn validate(&self, norm: Option<&str>) -> Result<Problem, CliError> {
        let norm = parse_norm(norm.unwrap_or(&self.norm))?;
        let k = SimplicialComplex::from_maximal(simplices(&self.complex, "complex")?);
        let b = SimplicialComplex::from_maximal(simplices(&self.b, "B")?);
        if !b.is_subcomplex_of(&k) {
            return Err(CliError::Invalid("B is not a subcomplex of the complex".into()));
        }
        let f = self.map.to_map()?;
        f.defined_on(&k).map_err(|e| CliError::Invalid(format!("map: {e}")))?;
        let radii = self.radii.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Problem { k, b, f, norm, radii })
    }
}

impl Problem {
    /// The file's radii together with `extra`, sorted decreasingly.
    pub fn schedule(&self, extra: &[Q]) -> Result<RadiiSchedule, CliError> {
        let mut all: Vec<Q> = self.radii.iter().chain(extra).cloned().collect();
        all.sort();
        all.dedup();
        RadiiSchedule::from_unsorted(all).map_err(|e| match e {
            FiltrationError::EmptySchedule => CliError::Invalid("no radius given (use --radius or radii in the file)".into()),
            other => CliError::Invalid(other.to_string()),
        })
    }
}
