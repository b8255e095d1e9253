//! JSON system descriptions.
//!
//! ```json
//! {"kind":"finite","states":["0","1"],"map":{"0":["0","1"],"1":["0"]}}
//! {"kind":"pl","pieces":[{"type":"segment","x":["0","1/2"],"a":"2","b":"0"},
//!                        {"type":"rect","x":["0","1"],"y":["0","0"]}]}
//! ```
//!
//! Rationals are strings. Unknown fields are rejected and every error names
//! the JSON path of the offending value.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::builtin;
use crate::error::{Error, Result};
use crate::pl::{GraphPiece, PLMultiMap};
use crate::rational::Rational;
use crate::relation::{RelationSystem, StateSet};

// Plain structs rather than tagged enums so that path tracking reaches
// inside every field.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pieces: Option<Vec<RawPiece>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Kind {
    Finite,
    Pl,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum PieceType {
    Segment,
    Rect,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    #[serde(rename = "type")]
    kind: PieceType,
    x: [Rational; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<[Rational; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemDescription {
    Finite(RelationSystem),
    Pl(PLMultiMap),
}

impl SystemDescription {
    pub fn kind(&self) -> &'static str {
        match self {
            SystemDescription::Finite(_) => "finite",
            SystemDescription::Pl(_) => "pl",
        }
    }
}

pub fn parse_system(text: &str) -> Result<SystemDescription> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawSystem = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::validation(path, e.into_inner().to_string())
    })?;
    let stray = |field: &str| Error::validation(field, format!("field `{field}` does not belong to this kind"));
    let missing = |field: &str| Error::validation(field, format!("missing field `{field}`"));
    match raw.kind {
        Kind::Finite => {
            if raw.pieces.is_some() {
                return Err(stray("pieces"));
            }
            let states = raw.states.ok_or_else(|| missing("states"))?;
            let map = raw.map.ok_or_else(|| missing("map"))?;
            finite_from_raw(states, map).map(SystemDescription::Finite)
        }
        Kind::Pl => {
            if raw.states.is_some() {
                return Err(stray("states"));
            }
            if raw.map.is_some() {
                return Err(stray("map"));
            }
            let pieces = raw.pieces.ok_or_else(|| missing("pieces"))?;
            pl_from_raw(pieces).map(SystemDescription::Pl)
        }
    }
}

/// Reads a system file, or a built-in instance given as `builtin:NAME`.
pub fn load_system(spec: &str) -> Result<SystemDescription> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        if let Some(f) = builtin::finite_by_name(name) {
            return Ok(SystemDescription::Finite(f));
        }
        if let Some(f) = builtin::pl_by_name(name) {
            return Ok(SystemDescription::Pl(f));
        }
        return Err(Error::argument(format!("unknown built-in system {name:?}")));
    }
    let text = std::fs::read_to_string(Path::new(spec))?;
    parse_system(&text)
}

fn finite_from_raw(states: Vec<String>, map: BTreeMap<String, Vec<String>>) -> Result<RelationSystem> {
    let mut index = BTreeMap::new();
    for (i, s) in states.iter().enumerate() {
        if index.insert(s.as_str(), i).is_some() {
            return Err(Error::validation(format!("states[{i}]"), format!("duplicate state {s:?}")));
        }
    }
    for key in map.keys() {
        if !index.contains_key(key.as_str()) {
            return Err(Error::validation(format!("map.{key}"), "key is not a declared state"));
        }
    }
    let mut fibers = Vec::with_capacity(states.len());
    for s in &states {
        let targets = map
            .get(s)
            .ok_or_else(|| Error::validation(format!("map.{s}"), "missing fiber"))?;
        if targets.is_empty() {
            return Err(Error::validation(format!("map.{s}"), "fiber is empty"));
        }
        let mut fiber = StateSet::EMPTY;
        for (j, t) in targets.iter().enumerate() {
            let &k = index
                .get(t.as_str())
                .ok_or_else(|| Error::validation(format!("map.{s}[{j}]"), format!("unknown state {t:?}")))?;
            fiber.insert(k);
        }
        fibers.push(fiber);
    }
    RelationSystem::new(states, fibers).map_err(|e| Error::validation("states", e.to_string()))
}

fn pl_from_raw(pieces: Vec<RawPiece>) -> Result<PLMultiMap> {
    let mut out = Vec::with_capacity(pieces.len());
    for (i, p) in pieces.into_iter().enumerate() {
        let at = |field: &str| format!("pieces[{i}].{field}");
        let [x0, x1] = p.x;
        let piece = match p.kind {
            PieceType::Segment => {
                if p.y.is_some() {
                    return Err(Error::validation(at("y"), "segments take `a` and `b`"));
                }
                let a = p.a.ok_or_else(|| Error::validation(at("a"), "missing field `a`"))?;
                let b = p.b.ok_or_else(|| Error::validation(at("b"), "missing field `b`"))?;
                GraphPiece::segment(x0, x1, a, b)
            }
            PieceType::Rect => {
                if p.a.is_some() || p.b.is_some() {
                    return Err(Error::validation(at("a"), "rectangles take `y`"));
                }
                let [y0, y1] = p.y.ok_or_else(|| Error::validation(at("y"), "missing field `y`"))?;
                GraphPiece::rect(x0, x1, y0, y1)
            }
        }
        .map_err(|e| Error::validation(format!("pieces[{i}]"), e.to_string()))?;
        out.push(piece);
    }
    PLMultiMap::new(out).map_err(|e| Error::validation("pieces", e.to_string()))
}

/// The canonical JSON text of a system.
pub fn to_json(sys: &SystemDescription) -> String {
    let raw = match sys {
        SystemDescription::Finite(f) => RawSystem {
            kind: Kind::Finite,
            states: Some(f.labels().to_vec()),
            map: Some(
                (0..f.len())
                    .map(|i| {
                        let targets = f.fiber(i).iter().map(|j| f.label(j).to_string()).collect();
                        (f.label(i).to_string(), targets)
                    })
                    .collect(),
            ),
            pieces: None,
        },
        SystemDescription::Pl(m) => RawSystem {
            kind: Kind::Pl,
            states: None,
            map: None,
            pieces: Some(m
                .pieces()
                .iter()
                .map(|p| match p {
                    GraphPiece::Segment {
                        x_lo,
                        x_hi,
                        slope,
                        intercept,
                    } => RawPiece {
                        kind: PieceType::Segment,
                        x: [x_lo.clone(), x_hi.clone()],
                        a: Some(slope.clone()),
                        b: Some(intercept.clone()),
                        y: None,
                    },
                    GraphPiece::Rect { x_lo, x_hi, y_lo, y_hi } => RawPiece {
                        kind: PieceType::Rect,
                        x: [x_lo.clone(), x_hi.clone()],
                        a: None,
                        b: None,
                        y: Some([y_lo.clone(), y_hi.clone()]),
                    },
                })
                .collect(),
            ),
        },
    };
    serde_json::to_string(&raw).expect("serializable")
}
