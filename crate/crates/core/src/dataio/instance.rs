//! Versioned JSON instance files.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "family": "IM",
//!   "ground_size": 34,
//!   "matroid": {"kind": "partition", "blocks": [[0, 1], [2, 3]], "caps": [1, 1]},
//!   "payload": { ... },
//!   "meta": { ... }
//! }
//! ```
//!
//! Payloads by family:
//!
//! * `SM`: `{"partitions": [[i, ...], ...], "values": [[r_0, ..., r_{n-1}], ...]}`
//! * `IM`: `{"nodes": N, "cascades": [{"reach": [[u, ...], ...]}, ...], "model": {"graph": {"nodes": N, "edges": [[u, v], ...]}, "p": 0.5}}`
//!   where `model` is optional; with no cascades and a model the instance is generative.
//! * `FL`: `{"weights": [[w_0, ..., w_{n-1}], ...]}` (one row per customer)
//! * `CN`: `{"nodes": V, "catalogue": C, "edges": [{"u", "v", "mu"}], "requests": [{"item", "path", "rate"}]}`
//!
//! `meta` is free-form and carried through unchanged.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::graph::DiGraph;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidSpec};
use crate::objectives::{
    Cascade, CascadeModel, CnEdge, CnInstance, CnRequest, Family, FlInstance, ImInstance,
    Objective, SmInstance,
};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub objective: Objective,
    pub matroid: Matroid,
    pub meta: Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
struct ModelPayload {
    graph: DiGraph,
    p: f64,
}

impl InstanceFile {
    pub fn new(objective: Objective, matroid: Matroid) -> Result<Self> {
        if objective.ground_size() != matroid.n() {
            return Err(Error::DimensionMismatch {
                expected: objective.ground_size(),
                got: matroid.n(),
            });
        }
        Ok(Self {
            objective,
            matroid,
            meta: Map::new(),
        })
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.to_owned(), value.into());
        self
    }

    pub fn family(&self) -> Family {
        self.objective.family()
    }

    pub fn to_json(&self) -> Value {
        let payload = match &self.objective {
            Objective::Sm(sm) => json!({
                "partitions": sm.partitions(),
                "values": sm.values(),
            }),
            Objective::Im(im) => {
                let mut p = json!({
                    "nodes": im.nodes(),
                    "cascades": im.cascades(),
                });
                if let Some(model) = im.model() {
                    p["model"] = json!({ "graph": model.graph, "p": model.p });
                }
                p
            }
            Objective::Fl(fl) => json!({
                "weights": fl.customers().iter().map(|c| c.weights()).collect::<Vec<_>>(),
            }),
            Objective::Cn(cn) => json!({
                "nodes": cn.nodes(),
                "catalogue": cn.catalogue(),
                "edges": cn.edges(),
                "requests": cn.requests(),
            }),
        };
        json!({
            "schema_version": SCHEMA_VERSION,
            "family": self.family().tag(),
            "ground_size": self.objective.ground_size(),
            "matroid": self.matroid.spec(),
            "payload": payload,
            "meta": self.meta,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let root = value
            .as_object()
            .ok_or_else(|| Error::invalid("$", "instance must be a JSON object"))?;
        let version: u64 = field(root, "schema_version", "schema_version")?;
        if version != SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                found: version,
                expected: SCHEMA_VERSION,
            });
        }
        let tag: String = field(root, "family", "family")?;
        let family = Family::from_tag(&tag).ok_or_else(|| {
            Error::invalid("family", format!("unknown family `{tag}` (expected SM, IM, FL or CN)"))
        })?;
        let n: usize = field(root, "ground_size", "ground_size")?;
        let payload = root
            .get("payload")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::invalid("payload", "missing or not an object"))?;
        let objective = match family {
            Family::Sm => Objective::Sm(SmInstance::new(
                n,
                field(payload, "partitions", "payload.partitions")?,
                field(payload, "values", "payload.values")?,
            )?),
            Family::Im => {
                let nodes: usize = field(payload, "nodes", "payload.nodes")?;
                let cascades: Vec<Cascade> =
                    optional(payload, "cascades", "payload.cascades")?.unwrap_or_default();
                let model: Option<ModelPayload> = optional(payload, "model", "payload.model")?;
                if let Some(m) = &model {
                    DiGraph::new(m.graph.nodes(), m.graph.edges().to_vec()).map_err(|e| {
                        Error::invalid("payload.model.graph", e.to_string())
                    })?;
                }
                let im = match model {
                    Some(m) if cascades.is_empty() => {
                        if m.graph.nodes() != nodes {
                            return Err(Error::invalid("payload.model.graph", "node count differs from payload.nodes"));
                        }
                        ImInstance::generative(m.graph, m.p)
                            .map_err(|e| Error::invalid("payload.model.p", e.to_string()))?
                    }
                    Some(m) => ImInstance::new(nodes, cascades)?.with_model(CascadeModel {
                        graph: m.graph,
                        p: m.p,
                    }),
                    None => ImInstance::new(nodes, cascades)?,
                };
                Objective::Im(im)
            }
            Family::Fl => Objective::Fl(FlInstance::new(n, field(payload, "weights", "payload.weights")?)?),
            Family::Cn => {
                let edges: Vec<CnEdge> = field(payload, "edges", "payload.edges")?;
                let requests: Vec<CnRequest> = field(payload, "requests", "payload.requests")?;
                Objective::Cn(CnInstance::new(
                    field(payload, "nodes", "payload.nodes")?,
                    field(payload, "catalogue", "payload.catalogue")?,
                    edges,
                    requests,
                )?)
            }
        };
        if objective.ground_size() != n {
            return Err(Error::invalid(
                "ground_size",
                format!("declared {n} but the payload defines {}", objective.ground_size()),
            ));
        }
        let spec: MatroidSpec = field(root, "matroid", "matroid")?;
        let matroid =
            Matroid::from_spec(n, &spec).map_err(|e| Error::invalid("matroid", e.to_string()))?;
        let meta = match root.get("meta") {
            None | Some(Value::Null) => Map::new(),
            Some(Value::Object(m)) => m.clone(),
            Some(_) => return Err(Error::invalid("meta", "must be an object")),
        };
        Ok(Self {
            objective,
            matroid,
            meta,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_json(&value)
    }
}

fn field<T: DeserializeOwned>(obj: &Map<String, Value>, key: &str, path: &str) -> Result<T> {
    optional(obj, key, path)?.ok_or_else(|| Error::invalid(path, "missing field"))
}

fn optional<T: DeserializeOwned>(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<T>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => T::deserialize(v)
            .map(Some)
            .map_err(|e| Error::invalid(path, e.to_string())),
    }
}

pub fn save_instance(path: &Path, instance: &InstanceFile) -> Result<()> {
    std::fs::write(path, instance.to_json_string())?;
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<InstanceFile> {
    InstanceFile::from_json_str(&std::fs::read_to_string(path)?)
}
