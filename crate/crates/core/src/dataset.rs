//! The JSON dataset format and the bundled examples.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::localization::{FixedComponent, HamiltonianSpace};
use crate::symcore::{parse_rational, EquivariantPolynomial, GradedAlgebra, LinearForm, NormalLine, Variables};
use crate::weyl::{WeylData, WeylElement};

pub const BUILTIN_NAMES: [&str; 4] = ["s2", "s2xs2-t2", "s2xs2-nonisolated", "s2cubed-su2"];

pub fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "s2" => Some(include_str!("../data/s2.json")),
        "s2xs2-t2" => Some(include_str!("../data/s2xs2-t2.json")),
        "s2xs2-nonisolated" => Some(include_str!("../data/s2xs2-nonisolated.json")),
        "s2cubed-su2" => Some(include_str!("../data/s2cubed-su2.json")),
        _ => None,
    }
}

/// A rational written as `"p/q"` or as a bare integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    fn value(&self, path: &str) -> Result<BigRational> {
        match self {
            RationalText::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            RationalText::Text(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub torus_rank: usize,
    #[serde(rename = "dim_M")]
    pub dim_m: u32,
    pub variables: Vec<String>,
    pub components: Vec<ComponentFile>,
    pub generators: Vec<GeneratorFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl: Option<WeylFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub name: String,
    pub moment: Vec<RationalText>,
    pub algebra: AlgebraFile,
    pub normal_lines: Vec<LineFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
    pub mult_table: Vec<(usize, usize, usize, RationalText)>,
    pub integral: Vec<RationalText>,
    pub top_degree: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineFile {
    pub weight: Vec<i64>,
    pub chern: Vec<RationalText>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub name: String,
    pub degree: u32,
    /// Components left out restrict to zero.
    pub restrictions: BTreeMap<String, Vec<TermFile>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub coeff: RationalText,
    pub exponents: Vec<u32>,
    pub basis_index: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylFile {
    pub elements: Vec<WeylElementFile>,
    pub positive_roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylElementFile {
    pub matrix: Vec<Vec<i64>>,
    /// `perm[i]` is the index of the image of component `i`.
    pub perm: Vec<usize>,
    /// `algebra_maps[i][j]`: image of basis element `j` of component `i`,
    /// over the basis of component `perm[i]`.
    pub algebra_maps: Vec<Vec<Vec<RationalText>>>,
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub space: HamiltonianSpace,
    pub weyl: Option<WeylData>,
    /// sha256 of the source text.
    pub digest: String,
}

/// Loads `builtin:NAME` or a file path.
pub fn load(spec: &str) -> Result<Dataset> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let src = builtin_source(name).ok_or_else(|| {
            Error::Parse(format!("unknown builtin dataset {name:?}; known: {}", BUILTIN_NAMES.join(", ")))
        })?;
        return parse_dataset(src);
    }
    let src = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    parse_dataset(&src)
}

pub fn load_builtin(name: &str) -> Result<Dataset> {
    load(&format!("builtin:{name}"))
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn parse_dataset(src: &str) -> Result<Dataset> {
    let file: DatasetFile = serde_json::from_str(src)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let (space, weyl) = build(&file)?;
    Ok(Dataset { space, weyl, digest: digest(src) })
}

fn build_algebra(a: &AlgebraFile, path: &str) -> Result<GradedAlgebra> {
    let entries = a
        .mult_table
        .iter()
        .enumerate()
        .map(|(k, (i, j, l, c))| Ok((*i, *j, *l, c.value(&format!("{path}.mult_table[{k}]"))?)))
        .collect::<Result<Vec<_>>>()?;
    let integral = a
        .integral
        .iter()
        .enumerate()
        .map(|(k, c)| c.value(&format!("{path}.integral[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    GradedAlgebra::new(a.basis.clone(), a.degrees.clone(), &entries, integral, a.top_degree)
        .map_err(|e| Error::InvalidAlgebra(format!("{path}: {e}")))
}

pub fn build(file: &DatasetFile) -> Result<(HamiltonianSpace, Option<WeylData>)> {
    let n = file.torus_rank;
    if file.variables.len() != n {
        return Err(Error::InvalidSpace(format!(
            "variables: {} names for torus rank {n}",
            file.variables.len()
        )));
    }
    let variables = Variables::new(file.variables.clone()).map_err(|e| Error::InvalidSpace(format!("variables: {e}")))?;
    let mut components = Vec::new();
    for (ci, c) in file.components.iter().enumerate() {
        let path = format!("components[{ci}]");
        let algebra = Arc::new(build_algebra(&c.algebra, &format!("{path}.algebra"))?);
        let moment = c
            .moment
            .iter()
            .enumerate()
            .map(|(k, v)| v.value(&format!("{path}.moment[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut lines = Vec::new();
        for (li, l) in c.normal_lines.iter().enumerate() {
            let lp = format!("{path}.normal_lines[{li}]");
            if l.weight.len() != n {
                return Err(Error::InvalidSpace(format!("{lp}.weight: expected {n} entries")));
            }
            let chern = l
                .chern
                .iter()
                .enumerate()
                .map(|(k, v)| v.value(&format!("{lp}.chern[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            lines.push(NormalLine::new(LinearForm::from_i64(&l.weight), chern));
        }
        let comp = FixedComponent::new(c.name.clone(), moment, algebra, lines)
            .map_err(|e| Error::InvalidSpace(format!("{path}: {e}")))?;
        // surfaces Chern-class shape errors with a path
        crate::symcore::euler_class(comp.algebra(), n, comp.normal_lines())
            .map_err(|e| Error::InvalidSpace(format!("{path}: {e}")))?;
        components.push(comp);
    }

    let mut generators = Vec::new();
    for (gi, g) in file.generators.iter().enumerate() {
        let path = format!("generators[{gi}]");
        for name in g.restrictions.keys() {
            if !components.iter().any(|c| c.name() == name) {
                return Err(Error::InvalidSpace(format!("{path}.restrictions: unknown component {name:?}")));
            }
        }
        let mut restrictions = Vec::new();
        for c in &components {
            let terms = g.restrictions.get(c.name()).map(Vec::as_slice).unwrap_or(&[]);
            let tp = format!("{path}.restrictions.{}", c.name());
            let parsed = terms
                .iter()
                .enumerate()
                .map(|(k, t)| Ok((t.coeff.value(&format!("{tp}[{k}].coeff"))?, t.exponents.clone(), t.basis_index)))
                .collect::<Result<Vec<_>>>()?;
            let p = EquivariantPolynomial::from_terms(c.algebra().clone(), n, parsed)
                .map_err(|e| Error::InvalidSpace(format!("{tp}: {e}")))?;
            restrictions.push(p);
        }
        generators.push((g.name.clone(), g.degree, restrictions));
    }
    let space = HamiltonianSpace::new(variables, file.dim_m, components, generators)?;

    let weyl = match &file.weyl {
        None => None,
        Some(w) => {
            let mut elements = Vec::new();
            for (ei, e) in w.elements.iter().enumerate() {
                let path = format!("weyl.elements[{ei}]");
                let maps = e
                    .algebra_maps
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        m.iter()
                            .enumerate()
                            .map(|(j, col)| {
                                col.iter()
                                    .enumerate()
                                    .map(|(k, v)| v.value(&format!("{path}.algebra_maps[{i}][{j}][{k}]")))
                                    .collect::<Result<Vec<_>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let matrix = e.matrix.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect();
                elements.push(WeylElement { matrix, perm: e.perm.clone(), maps });
            }
            let roots = w.positive_roots.iter().map(|r| LinearForm::from_i64(r)).collect();
            Some(WeylData::new(&space, elements, roots)?)
        }
    };
    Ok((space, weyl))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in BUILTIN_NAMES {
            let d = load_builtin(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(d.weyl.is_some(), name == "s2cubed-su2");
            assert_eq!(d.digest.len(), 64);
        }
        assert!(load("builtin:nope").is_err());
    }

    #[test]
    fn non_associative_table_names_triple() {
        let src = builtin_source("s2").unwrap();
        let mut v: serde_json::Value = serde_json::from_str(src).unwrap();
        v["components"][0]["algebra"] = serde_json::json!({
            "basis": ["1", "a", "b", "c", "d", "t"],
            "degrees": [0, 2, 2, 4, 4, 6],
            "mult_table": [[1,1,3,"1"],[1,2,4,"1"],[2,1,4,"1"],[1,3,5,"1"],[3,1,5,"1"],[2,3,5,"1"],[3,2,5,"1"]],
            "integral": [0, 0, 0, 0, 0, 1],
            "top_degree": 6
        });
        let err = parse_dataset(&v.to_string()).unwrap_err();
        assert!(matches!(err, Error::InvalidAlgebra(_)));
        assert!(err.to_string().contains("(a, a, b)"), "{err}");
        assert!(err.to_string().contains("components[0].algebra"), "{err}");
    }

    #[test]
    fn schema_errors_carry_positions() {
        let err = parse_dataset("{\"torus_rank\": 1,").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let src = builtin_source("s2").unwrap();
        let mut v: serde_json::Value = serde_json::from_str(src).unwrap();
        v["generators"][1]["restrictions"]["Q"] = serde_json::json!([]);
        let err = parse_dataset(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("unknown component \"Q\""), "{err}");
    }
}
