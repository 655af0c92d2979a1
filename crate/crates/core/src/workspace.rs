//! JSON workspaces: a graded space plus named maps on it.
//!
//! ```json
//! {"space": {"basis": [{"name": "a", "degree": 0}]},
//!  "maps": [{"name": "m", "arity": 2, "degree": 0,
//!            "entries": [{"in": ["a", "a"], "out": [{"basis": "a", "coeff": "1/2"}]}]}]}
//! ```
//!
//! Coefficients are rationals written `p` or `p/q`. The canonical form
//! reduces them, sorts entries by input tuple and outputs by basis order.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::Degree;
use crate::multimap::{BasisElement, GradedSpace, MultiMap, Scalar};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    pub space: SpaceDoc,
    #[serde(default)]
    pub maps: Vec<MapDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub basis: Vec<BasisDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub name: String,
    pub degree: Degree,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub name: String,
    pub arity: usize,
    pub degree: Degree,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    #[serde(rename = "in")]
    pub inputs: Vec<String>,
    pub out: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub basis: String,
    pub coeff: String,
}

/// Largest accepted `|degree|` for basis elements and maps.
pub const MAX_ABS_DEGREE: Degree = 1 << 20;
/// Largest accepted map arity.
pub const MAX_ARITY: usize = 16;

fn check_degree(what: &str, degree: Degree) -> Result<()> {
    if degree.abs() > MAX_ABS_DEGREE {
        return Err(Error::input(format!(
            "{what} has degree {degree} outside ±{MAX_ABS_DEGREE}"
        )));
    }
    Ok(())
}

/// Parses `p` or `p/q` with an optional leading sign on `p`; `q` must be
/// positive.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let bad = || Error::parse(format!("invalid rational {text:?}"));
    let digits = |s: &str, signed: bool| -> Result<BigInt> {
        let body = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (digits(p, true)?, digits(q, false)?),
        None => (digits(text, true)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in {text:?}")));
    }
    Ok(Scalar::new(num, den))
}

/// `p` for integers, otherwise `p/q` in lowest terms with `q > 0`.
pub fn format_rational(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn space_doc(space: &GradedSpace) -> SpaceDoc {
    SpaceDoc {
        basis: space
            .basis()
            .iter()
            .map(|b| BasisDoc {
                name: b.name.clone(),
                degree: b.degree,
            })
            .collect(),
    }
}

pub fn map_doc(name: &str, map: &MultiMap) -> MapDoc {
    let space = map.space();
    MapDoc {
        name: name.to_string(),
        arity: map.arity(),
        degree: map.degree(),
        entries: map
            .entries()
            .map(|(tuple, coeffs)| EntryDoc {
                inputs: tuple.iter().map(|&i| space.name(i).to_string()).collect(),
                out: coeffs
                    .iter()
                    .map(|(&j, c)| TermDoc {
                        basis: space.name(j).to_string(),
                        coeff: format_rational(c),
                    })
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    space: Arc<GradedSpace>,
    maps: Vec<(String, MultiMap)>,
}

impl Workspace {
    pub fn new(space: Arc<GradedSpace>) -> Self {
        Workspace {
            space,
            maps: Vec::new(),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn maps(&self) -> &[(String, MultiMap)] {
        &self.maps
    }

    pub fn get(&self, name: &str) -> Option<&MultiMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Looks up a map, failing with an input error naming it.
    pub fn require(&self, name: &str) -> Result<&MultiMap> {
        self.get(name)
            .ok_or_else(|| Error::input(format!("no map named {name:?} in the workspace")))
    }

    /// Adds a map, replacing any map of the same name in place.
    pub fn insert(&mut self, name: impl Into<String>, map: MultiMap) -> Result<()> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::input("map names must be non-empty"));
        }
        if map.space() != &self.space {
            return Err(Error::input(format!(
                "map {name:?} lives on a different space"
            )));
        }
        match self.maps.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = map,
            None => self.maps.push((name, map)),
        }
        Ok(())
    }

    pub fn from_doc(doc: &WorkspaceDoc) -> Result<Self> {
        for b in &doc.space.basis {
            check_degree(&format!("basis element {:?}", b.name), b.degree)?;
        }
        let basis = doc
            .space
            .basis
            .iter()
            .map(|b| BasisElement::new(b.name.clone(), b.degree))
            .collect();
        let space = GradedSpace::new(basis)?;
        let mut ws = Workspace::new(space.clone());
        let mut names = BTreeSet::new();
        for m in &doc.maps {
            if !names.insert(m.name.as_str()) {
                return Err(Error::input(format!("duplicate map name {:?}", m.name)));
            }
            let map = read_map(&space, m)?;
            ws.insert(m.name.clone(), map)?;
        }
        Ok(ws)
    }

    pub fn to_doc(&self) -> WorkspaceDoc {
        WorkspaceDoc {
            space: space_doc(&self.space),
            maps: self.maps.iter().map(|(n, m)| map_doc(n, m)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: WorkspaceDoc =
            serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        Workspace::from_doc(&doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
        Workspace::parse(&text)
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(&self.to_doc()).expect("workspace documents serialize");
        text.push('\n');
        text
    }
}

fn read_map(space: &Arc<GradedSpace>, doc: &MapDoc) -> Result<MultiMap> {
    let at = |detail: String| Error::input(format!("map {:?}: {detail}", doc.name));
    if doc.name.is_empty() {
        return Err(Error::input("map names must be non-empty"));
    }
    check_degree(&format!("map {:?}", doc.name), doc.degree)?;
    if doc.arity > MAX_ARITY {
        return Err(at(format!("arity {} exceeds {MAX_ARITY}", doc.arity)));
    }
    let mut map = MultiMap::zero(space, doc.arity, doc.degree).map_err(|e| at(e.detail()))?;
    let lookup = |name: &str| {
        space
            .index_of(name)
            .ok_or_else(|| at(format!("unknown basis element {name:?}")))
    };
    let mut seen = BTreeSet::new();
    for entry in &doc.entries {
        let tuple: Vec<usize> = entry
            .inputs
            .iter()
            .map(|n| lookup(n))
            .collect::<Result<_>>()?;
        let label = format!("entry [{}]", entry.inputs.join(", "));
        if tuple.len() != doc.arity {
            return Err(at(format!(
                "{label} has {} inputs, expected {}",
                tuple.len(),
                doc.arity
            )));
        }
        if !seen.insert(tuple.clone()) {
            return Err(at(format!("{label} is listed twice")));
        }
        let mut outs = BTreeSet::new();
        for term in &entry.out {
            let out = lookup(&term.basis)?;
            if !outs.insert(out) {
                return Err(at(format!("{label} lists output {:?} twice", term.basis)));
            }
            let coeff = parse_rational(&term.coeff).map_err(|e| {
                Error::parse(format!("map {:?}: {label}: {}", doc.name, e.detail()))
            })?;
            map.set_entry(&tuple, out, coeff)
                .map_err(|e| at(format!("{label} -> {}: {}", term.basis, e.detail())))?;
        }
    }
    Ok(map)
}

/// Compact canonical JSON for a map on its own.
pub fn map_json(name: &str, map: &MultiMap) -> serde_json::Value {
    serde_json::to_value(map_doc(name, map)).expect("map documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::new(p.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-2/4").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("+5/10").unwrap(), q(1, 2));
        for bad in ["", "1/0", "1/-2", "a", "1/", "/2", "--1", "1.5", " 1", "-"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&q(-6, 4)), "-3/2");
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert_eq!(format_rational(&q(0, 5)), "0");
    }

    #[test]
    fn minimal_workspace() {
        let ws =
            Workspace::parse(r#"{"space": {"basis": [{"name": "e", "degree": 0}]}, "maps": []}"#)
                .unwrap();
        assert_eq!(ws.space().dim(), 1);
        assert!(ws.maps().is_empty());
    }

    const SAMPLE: &str = r#"{
      "space": {"basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 1}]},
      "maps": [
        {"name": "m", "arity": 2, "degree": 0, "entries": [
          {"in": ["b", "a"], "out": [{"basis": "b", "coeff": "2/4"}]},
          {"in": ["a", "a"], "out": [{"basis": "a", "coeff": "1"}]}
        ]},
        {"name": "d", "arity": 1, "degree": -1, "entries": [
          {"in": ["b"], "out": [{"basis": "a", "coeff": "-3"}]}
        ]}
      ]
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        let m = ws.require("m").unwrap();
        assert_eq!(m.get(&[1, 0]).coeff(1), q(1, 2));
        let text = ws.to_canonical_string();
        let again = Workspace::parse(&text).unwrap();
        assert_eq!(again, ws);
        assert_eq!(again.to_canonical_string(), text);
        // Entries come out sorted by input tuple.
        let inputs: Vec<Vec<String>> = again.to_doc().maps[0]
            .entries
            .iter()
            .map(|e| e.inputs.clone())
            .collect();
        assert_eq!(inputs, vec![vec!["a", "a"], vec!["b", "a"]]);
    }

    #[test]
    fn homogeneity_error_names_entry() {
        let text = SAMPLE.replace(
            r#"{"basis": "b", "coeff": "2/4"}"#,
            r#"{"basis": "a", "coeff": "2/4"}"#,
        );
        let err = Workspace::parse(&text).unwrap_err().to_string();
        assert!(
            err.contains("\"m\"") && err.contains("entry [b, a]"),
            "{err}"
        );
    }

    #[test]
    fn rejects_malformed_documents() {
        let cases = [
            SAMPLE.replace("\"d\"", "\"m\""),
            SAMPLE.replace(r#"["b"]"#, r#"["c"]"#),
            SAMPLE.replace(r#"["b"]"#, r#"["b", "b"]"#),
            SAMPLE.replace("-3", "x"),
            SAMPLE.replace(r#""arity": 1"#, r#""arity": 0"#),
            SAMPLE.replace(r#""degree": -1,"#, r#""degree": -1, "extra": 1,"#),
            SAMPLE.replace(r#"["a", "a"]"#, r#"["b", "a"]"#),
            SAMPLE.replace(
                r#"{"name": "b", "degree": 1}"#,
                r#"{"name": "a", "degree": 1}"#,
            ),
            "{".to_string(),
            SAMPLE.replace(r#""degree": -1,"#, r#""degree": 9223372036854775807,"#),
            SAMPLE.replace(r#""arity": 1"#, r#""arity": 17"#),
            r#"{"space": {"basis": []}}"#.to_string(),
        ];
        for text in &cases {
            assert!(Workspace::parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn insert_replaces_by_name() {
        let mut ws = Workspace::parse(SAMPLE).unwrap();
        let zero = MultiMap::zero(ws.space(), 1, 0).unwrap();
        ws.insert("m", zero.clone()).unwrap();
        assert_eq!(ws.maps().len(), 2);
        assert_eq!(ws.maps()[0].1, zero);
        ws.insert("z", zero).unwrap();
        assert_eq!(ws.maps()[2].0, "z");
        assert!(ws.require("missing").is_err());
    }
}
