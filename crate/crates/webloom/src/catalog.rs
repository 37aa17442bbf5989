//! Loader for the golden data directory: catalog entries (tableau, hourglass
//! graph, polynomial, dual), the 32-web atlas on 12 black boundary vertices,
//! the eight type lists of mixed webs and a few worked examples.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::compatibility::Matching;
use crate::error::{Error, Result};
use crate::hourglass::HourglassGraph;
use crate::planar_map::CombMap;
use crate::plucker::PluckerPolynomial;
use crate::tableaux::RectTableau;
use crate::webs::Web;

/// Environment variable that overrides the data directory.
pub const DATA_ENV: &str = "WEBLOOM_DATA";

/// The data directory: `$WEBLOOM_DATA` if set, else the repository copy.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Quadratic,
    Cubic,
}

/// The diagram dual to a catalog polynomial.
#[derive(Debug, Clone)]
pub enum CatalogDual {
    Matching(Matching),
    Web(Web),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    /// Boundary type 1..=8 for cubics, `None` for quadratics.
    pub type_class: Option<usize>,
    pub tableau: RectTableau,
    pub polynomial: PluckerPolynomial,
    pub hourglass: HourglassGraph,
    pub dual: CatalogDual,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawDual {
    Matching(Matching),
    Web(CombMap),
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    kind: EntryKind,
    #[serde(rename = "type")]
    type_class: Option<usize>,
    n: usize,
    tableau: RectTableau,
    polynomial: String,
    hourglass: CombMap,
    dual: RawDual,
}

/// Identifiers of the catalog entries in table order.
pub fn catalog_ids() -> Vec<String> {
    let mut v: Vec<String> = (1..=3).map(|i| format!("q{i}")).collect();
    v.extend((1..=14).map(|i| format!("c{i}")));
    v
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Catalog(path.display().to_string(), e.to_string()))
}

fn parse_entry(id: &str, text: &str) -> Result<CatalogEntry> {
    let bad = |msg: String| Error::Catalog(id.to_string(), msg);
    let raw: RawEntry = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let polynomial = PluckerPolynomial::parse(&raw.polynomial, raw.n).map_err(|e| bad(e.to_string()))?;
    let lambda = polynomial.boundary_condition().map_err(|e| bad(e.to_string()))?;
    if raw.tableau.content(raw.n) != lambda {
        return Err(bad(format!("tableau content {:?} differs from polynomial boundary condition {:?}", raw.tableau.content(raw.n), lambda)));
    }
    let expected_degree = match raw.kind {
        EntryKind::Quadratic => 2,
        EntryKind::Cubic => 3,
    };
    if polynomial.degree() != expected_degree || raw.tableau.shape().1 != expected_degree {
        return Err(bad("degree does not match the entry kind".into()));
    }
    if raw.kind == EntryKind::Cubic && !matches!(raw.type_class, Some(1..=8)) {
        return Err(bad("cubic entry needs a type between 1 and 8".into()));
    }
    let hourglass = HourglassGraph::validate(raw.hourglass).map_err(|e| bad(e.to_string()))?;
    let dual = match raw.dual {
        RawDual::Matching(m) => {
            let m = Matching::new(m.n, m.pairs, m.isolated_white).map_err(|e| bad(e.to_string()))?;
            CatalogDual::Matching(m)
        }
        RawDual::Web(map) => CatalogDual::Web(Web::new(map).map_err(|e| bad(e.to_string()))?),
    };
    Ok(CatalogEntry { id: raw.id, kind: raw.kind, type_class: raw.type_class, tableau: raw.tableau, polynomial, hourglass, dual })
}

/// The 3 quadratic and 14 cubic entries, validated.
pub fn load_catalog() -> Result<Vec<CatalogEntry>> {
    load_catalog_from(&data_dir())
}

pub fn load_catalog_from(dir: &Path) -> Result<Vec<CatalogEntry>> {
    catalog_ids().iter().map(|id| parse_entry(id, &read(&dir.join("catalog").join(format!("{id}.json")))?)).collect()
}

/// Read one web from a JSON file in the interchange format.
pub fn load_web(path: &Path) -> Result<Web> {
    let map: CombMap = serde_json::from_str(&read(path)?).map_err(|e| Error::Catalog(path.display().to_string(), e.to_string()))?;
    Web::new(map).map_err(|e| Error::Catalog(path.display().to_string(), e.to_string()))
}

/// W1..W32 with their dihedral orbit sizes.
pub fn load_web_atlas() -> Result<Vec<(Web, usize)>> {
    load_web_atlas_from(&data_dir())
}

pub fn load_web_atlas_from(dir: &Path) -> Result<Vec<(Web, usize)>> {
    (1..=32)
        .map(|i| {
            let w = load_web(&dir.join("atlas").join(format!("W{i}.json")))?;
            let orbit = w.map().orbit_size();
            Ok((w, orbit))
        })
        .collect()
}

/// The transcribed mixed webs of each boundary type, indexed by type - 1.
pub fn load_type_lists() -> Result<Vec<Vec<Web>>> {
    load_type_lists_from(&data_dir())
}

pub fn load_type_lists_from(dir: &Path) -> Result<Vec<Vec<Web>>> {
    (1..=8)
        .map(|t| {
            let sub = dir.join("types").join(format!("type{t}"));
            let mut files: Vec<PathBuf> = std::fs::read_dir(&sub)
                .map_err(|e| Error::Catalog(sub.display().to_string(), e.to_string()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            files.iter().map(|p| load_web(p)).collect()
        })
        .collect()
}

/// A web from `examples/{name}.json`.
pub fn load_example_web(name: &str) -> Result<Web> {
    load_web(&data_dir().join("examples").join(format!("{name}.json")))
}

/// Raw JSON of `examples/{name}.json`.
pub fn load_example_json(name: &str) -> Result<serde_json::Value> {
    let path = data_dir().join("examples").join(format!("{name}.json"));
    serde_json::from_str(&read(&path)?).map_err(|e| Error::Catalog(path.display().to_string(), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_and_validates() {
        let cat = load_catalog().unwrap();
        assert_eq!(cat.len(), 17);
        assert_eq!(cat.iter().filter(|e| e.kind == EntryKind::Quadratic).count(), 3);
        assert_eq!(cat[0].tableau.to_rows(), vec![vec![1, 1], vec![2, 4], vec![3, 6], vec![5, 7]]);
        assert!(cat.iter().any(|e| e.tableau.short() == "113,245,367,578" && e.type_class == Some(8)));
        for e in &cat {
            let sum: usize = e.polynomial.boundary_condition().unwrap().iter().sum();
            assert!(sum == 8 || sum == 12, "{}", e.id);
        }
    }

    #[test]
    fn schema_errors_name_the_entry() {
        let err = parse_entry("zz", "{\"id\": \"zz\"}").unwrap_err();
        assert!(err.to_string().contains("zz"));
    }

    #[test]
    fn atlas_loads() {
        let atlas = load_web_atlas().unwrap();
        assert_eq!(atlas.len(), 32);
        assert_eq!(atlas.iter().map(|(_, o)| o).sum::<usize>(), 462);
        let mut codes: Vec<_> = atlas.iter().map(|(w, _)| w.canonical_code()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 32);
        assert!(atlas.iter().all(|(w, _)| w.is_non_elliptic()));
    }

    #[test]
    fn type_lists_load() {
        let lists = load_type_lists().unwrap();
        assert_eq!(lists.iter().map(Vec::len).collect::<Vec<_>>(), vec![23, 23, 23, 23, 22, 22, 23, 23]);
    }
}
