//! Resolving `--map` arguments: catalog names or JSON files written by
//! `catalog build`.

use std::path::Path;

use bsmaps_core::catalog::{
    bowen_series, completely_folding, higher_bowen_series, interpolating_map, nielsen_rho2, non_example_b,
    non_example_c, punctured_sphere_group, reflection_map_n, thrice_punctured_group,
};
use bsmaps_core::{GroupPresentation, LabeledMap, PiecewiseMap};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// The catalog entries: name, parameters and a one-line description.
pub const CATALOG: [(&str, &str, &str); 8] = [
    (
        "bs",
        "--d D (D >= 2)",
        "Bowen-Series map of the (D+1)-punctured sphere group",
    ),
    ("hbs", "--k K (K >= 3)", "higher Bowen-Series map, k(k-1) arcs"),
    ("cfm", "--k K (K >= 3)", "completely folding map, 2(k-1)^2 arcs"),
    (
        "interp",
        "--k K --select 1,...,K",
        "interpolating map for a vertex selection",
    ),
    (
        "B",
        "--k K (K >= 3)",
        "non-example B: A on the lower half, A^2 on the upper half",
    ),
    (
        "C",
        "",
        "non-example C: octagonal degree-5 map over the thrice-punctured group",
    ),
    (
        "nielsen",
        "",
        "Nielsen map of the ideal triangle on the cube roots of unity",
    ),
    (
        "reflectN",
        "",
        "piecewise reflection map of the triangle (-1, 1, i)",
    ),
];

/// How a map was built; stored next to the map in JSON files so the group
/// can be recovered on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSource {
    /// Catalog name.
    pub map: String,
    /// `d` for Bowen-Series maps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// `k` for the folding family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Vertex selection for interpolating maps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub select: Option<Vec<usize>>,
}

/// A loaded map with its group, when known.
#[derive(Debug, Clone)]
pub struct LoadedMap {
    /// Display name.
    pub name: String,
    /// The circle map.
    pub map: PiecewiseMap,
    /// The presentation its labels refer to.
    pub group: Option<GroupPresentation>,
    /// The catalog source, when known.
    pub source: Option<MapSource>,
}

fn canonical(name: &str) -> Option<&'static str> {
    CATALOG.iter().map(|e| e.0).find(|n| n.eq_ignore_ascii_case(name))
}

/// Whether `name` is a catalog name.
pub fn is_catalog_name(name: &str) -> bool {
    canonical(name).is_some()
}

impl MapSource {
    /// A source for a catalog name, filling in default parameters.
    pub fn new(
        name: &str,
        d: Option<usize>,
        k: Option<usize>,
        select: Option<Vec<usize>>,
    ) -> Result<Self, CliError> {
        let map = canonical(name).ok_or_else(|| CliError::Usage(format!("unknown map {name}")))?;
        let (d, k, select) = match map {
            "bs" => (Some(d.unwrap_or(2)), None, None),
            "hbs" | "cfm" | "B" => (None, Some(k.unwrap_or(3)), None),
            "interp" => {
                let k = k.unwrap_or(3);
                (None, Some(k), Some(select.unwrap_or_else(|| vec![1, k])))
            }
            _ => (None, None, None),
        };
        Ok(MapSource {
            map: map.to_string(),
            d,
            k,
            select,
        })
    }

    /// Display name such as `hbs(k=3)`.
    pub fn display(&self) -> String {
        match (self.d, self.k, &self.select) {
            (Some(d), _, _) => format!("{}(d={d})", self.map),
            (_, Some(k), Some(s)) => format!(
                "{}(k={k}, select={})",
                self.map,
                s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            (_, Some(k), None) => format!("{}(k={k})", self.map),
            _ => self.map.clone(),
        }
    }

    /// Build the map.
    pub fn build(&self) -> Result<LoadedMap, CliError> {
        let d = self.d.unwrap_or(2);
        let k = self.k.unwrap_or(3);
        let labeled = |lm: LabeledMap| (lm.map, Some(lm.group));
        let (map, group) = match self.map.as_str() {
            "bs" => labeled(bowen_series(d)?),
            "hbs" => labeled(higher_bowen_series(k)?),
            "cfm" => labeled(completely_folding(k)?),
            "interp" => labeled(interpolating_map(k, self.select.as_deref().unwrap_or(&[1, k]))?),
            "B" => labeled(non_example_b(k)?),
            "C" => labeled(non_example_c()?),
            "nielsen" => (nielsen_rho2()?, None),
            "reflectN" => (reflection_map_n()?, None),
            other => return Err(CliError::Usage(format!("unknown map {other}"))),
        };
        Ok(LoadedMap {
            name: self.display(),
            map,
            group,
            source: Some(self.clone()),
        })
    }
}

impl LoadedMap {
    /// JSON document: the map schema plus a `source` entry when known.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.map.to_json();
        if let (Some(src), Some(obj)) = (&self.source, v.as_object_mut()) {
            obj.insert("source".into(), serde_json::to_value(src).expect("serializable"));
        }
        v
    }

    /// Load from a JSON document. The group is recovered from `source` when
    /// the stored labels agree with it.
    pub fn from_json(v: &serde_json::Value, name: &str) -> Result<Self, CliError> {
        let map = PiecewiseMap::from_json(v)?;
        let source: Option<MapSource> = match v.get("source") {
            Some(s) => Some(serde_json::from_value(s.clone())?),
            None => None,
        };
        let group = match &source {
            Some(src) => src
                .build()?
                .group
                .and_then(|g| LabeledMap::new(map.clone(), g).ok())
                .map(|lm| lm.group),
            None => None,
        };
        Ok(LoadedMap {
            name: name.to_string(),
            map,
            group,
            source,
        })
    }
}

/// Resolve a `--map` argument: a catalog name, or else a path to a JSON map.
pub fn load_map(
    arg: &str,
    d: Option<usize>,
    k: Option<usize>,
    select: Option<Vec<usize>>,
) -> Result<LoadedMap, CliError> {
    if is_catalog_name(arg) {
        return MapSource::new(arg, d, k, select)?.build();
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "{arg} is neither a catalog name nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: arg.to_string(),
        source,
    })?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    LoadedMap::from_json(&v, arg)
}

/// The group named by `--group`: `bs` (with `d`) or `thrice`.
pub fn load_group(name: &str, d: Option<usize>) -> Result<GroupPresentation, CliError> {
    match name {
        "bs" | "std" => Ok(punctured_sphere_group(d.unwrap_or(2))?),
        "thrice" => Ok(thrice_punctured_group()?),
        other => Err(CliError::Usage(format!(
            "unknown group {other}; expected bs or thrice"
        ))),
    }
}
