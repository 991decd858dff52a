//! Declarative input formats.
//!
//! A manifest is a JSON envelope `{"kind": …, "name"?, "seed"?, "payload"}`
//! with `kind` one of `groupoid`, `bundle`, `system`, `function`. Rationals
//! are strings `"p"` or `"p/q"` with `q > 0` and `gcd(p, q) = 1`;
//! unnormalized input is a diagnostic, not a silent fixup. Parsing either
//! yields a fully validated value or a list of diagnostics with field paths
//! and distinct codes.
//!
//! Groupoid payloads: the explicit table form
//! `{"objects": n, "arrows": [{"id", "src", "dst"}…], "compose": [[a,b,c]…],
//! "inverse": [[a,b]…], "identity": [[x,a]…]}` or the shorthand constructors
//! `{"pair": n}`, `{"bundle": [table…]}`,
//! `{"action": {"group": table, "points": m, "act": [[image…]…]}}`,
//! `{"product": [payload, payload]}`.
//!
//! Piecewise functions are either polylines `[["x","v"]…]` (continuous
//! interpolation) or the explicit form
//! `{"breakpoints": […], "pieces": [[c0,c1,c2?]…], "values": […]}`.

use crate::construct;
use crate::group::GroupTable;
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidData};
use crate::haar::HaarSystem;
use crate::measures::{CoherentSystem, FiberMeasure, TestFunction};
use crate::piecewise::{Piecewise, Poly};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::stepbundle::{SheetFunction, StepSubgroupBundle};
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Stable machine-readable code, e.g. `schema`, `rational`, `dangling-id`.
    pub code: &'static str,
    /// JSON field path (or `line:col` for syntax errors).
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.code, self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionPayload {
    /// Weights per arrow id.
    Arrows(Vec<(u32, Rat)>),
    /// Weights per object id (for lambda-style inputs).
    Objects(Vec<(u32, Rat)>),
    /// One piecewise function per ambient element.
    Sheets(Vec<Piecewise>),
    /// A single piecewise function of the base coordinate.
    Piecewise(Piecewise),
}

/// One per-object measure `{"x": objectId, "weights": [[arrowId, "p/q"]…]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureEntry {
    pub object: u32,
    pub weights: Vec<(u32, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifestPayload {
    Groupoid(FiniteGroupoid),
    Bundle(StepSubgroupBundle),
    System(Vec<MeasureEntry>),
    Function(FunctionPayload),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub name: Option<String>,
    pub seed: Option<u64>,
    pub payload: ManifestPayload,
}

struct Parser {
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn new() -> Self {
        Self { diags: Vec::new() }
    }

    fn push(&mut self, code: &'static str, path: &str, message: impl Into<String>) {
        self.diags.push(Diagnostic {
            code,
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn obj<'a>(&mut self, value: &'a Value, path: &str) -> Option<&'a Map<String, Value>> {
        match value.as_object() {
            Some(map) => Some(map),
            None => {
                self.push("schema", path, "expected an object");
                None
            }
        }
    }

    fn array<'a>(&mut self, value: &'a Value, path: &str) -> Option<&'a Vec<Value>> {
        match value.as_array() {
            Some(items) => Some(items),
            None => {
                self.push("schema", path, "expected an array");
                None
            }
        }
    }

    fn uint(&mut self, value: &Value, path: &str) -> Option<u64> {
        match value.as_u64() {
            Some(n) => Some(n),
            None => {
                self.push("schema", path, "expected a nonnegative integer");
                None
            }
        }
    }

    fn rational(&mut self, value: &Value, path: &str) -> Option<Rat> {
        let Some(text) = value.as_str() else {
            self.push("rational", path, "expected a rational string \"p/q\"");
            return None;
        };
        match parse_rat(text) {
            Ok(r) => Some(r),
            Err(err) => {
                let code = match err {
                    crate::rat::RatParseError::NotNormalized(_) => "rational-unnormalized",
                    _ => "rational",
                };
                self.push(code, path, err.to_string());
                None
            }
        }
    }

    /// `[[a, b], …]` or `[[a, b, c], …]` integer tuples.
    fn uint_tuples(&mut self, value: &Value, path: &str, arity: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let Some(items) = self.array(value, path) else {
            return out;
        };
        for (i, item) in items.iter().enumerate() {
            let item_path = format!("{path}[{i}]");
            let Some(tuple) = self.array(item, &item_path) else {
                continue;
            };
            if tuple.len() != arity {
                self.push("schema", &item_path, format!("expected {arity} entries"));
                continue;
            }
            let mut numbers = Vec::with_capacity(arity);
            for (j, v) in tuple.iter().enumerate() {
                if let Some(n) = self.uint(v, &format!("{item_path}[{j}]")) {
                    numbers.push(n);
                }
            }
            if numbers.len() == arity {
                out.push(numbers);
            }
        }
        out
    }

    fn weight_pairs(&mut self, value: &Value, path: &str) -> Vec<(u32, Rat)> {
        let mut out = Vec::new();
        let Some(items) = self.array(value, path) else {
            return out;
        };
        for (i, item) in items.iter().enumerate() {
            let item_path = format!("{path}[{i}]");
            let Some(pair) = self.array(item, &item_path) else {
                continue;
            };
            if pair.len() != 2 {
                self.push("schema", &item_path, "expected [id, \"p/q\"]");
                continue;
            }
            let id = self.uint(&pair[0], &format!("{item_path}[0]"));
            let weight = self.rational(&pair[1], &format!("{item_path}[1]"));
            if let (Some(id), Some(weight)) = (id, weight) {
                out.push((id as u32, weight));
            }
        }
        out
    }

    fn group_table(&mut self, value: &Value, path: &str) -> Option<GroupTable> {
        let rows_json = self.array(value, path)?;
        let mut rows = Vec::new();
        for (i, row) in rows_json.iter().enumerate() {
            let row_path = format!("{path}[{i}]");
            let entries = self.array(row, &row_path)?;
            let mut parsed = Vec::new();
            for (j, e) in entries.iter().enumerate() {
                parsed.push(self.uint(e, &format!("{row_path}[{j}]"))? as usize);
            }
            rows.push(parsed);
        }
        match GroupTable::from_rows(&rows) {
            Ok(table) => Some(table),
            Err(err) => {
                self.push("group-table", path, err.to_string());
                None
            }
        }
    }

    fn piecewise(&mut self, value: &Value, path: &str) -> Option<Piecewise> {
        if value.is_array() {
            // polyline form
            let items = self.array(value, path)?;
            let mut points = Vec::new();
            for (i, item) in items.iter().enumerate() {
                let item_path = format!("{path}[{i}]");
                let pair = self.array(item, &item_path)?;
                if pair.len() != 2 {
                    self.push("schema", &item_path, "expected [\"x\", \"value\"]");
                    return None;
                }
                let x = self.rational(&pair[0], &format!("{item_path}[0]"))?;
                let v = self.rational(&pair[1], &format!("{item_path}[1]"))?;
                points.push((x, v));
            }
            match Piecewise::from_polyline(&points) {
                Ok(pw) => Some(pw),
                Err(err) => {
                    self.push("piecewise", path, err.to_string());
                    None
                }
            }
        } else {
            let map = self.obj(value, path)?;
            let null = Value::Null;
            let mut breakpoints = Vec::new();
            for (i, b) in self
                .array(map.get("breakpoints").unwrap_or(&null), &format!("{path}.breakpoints"))?
                .iter()
                .enumerate()
            {
                breakpoints.push(self.rational(b, &format!("{path}.breakpoints[{i}]"))?);
            }
            let mut pieces = Vec::new();
            for (i, piece) in self
                .array(map.get("pieces").unwrap_or(&null), &format!("{path}.pieces"))?
                .iter()
                .enumerate()
            {
                let piece_path = format!("{path}.pieces[{i}]");
                let coeffs_json = self.array(piece, &piece_path)?;
                let mut coeffs = Vec::new();
                for (j, c) in coeffs_json.iter().enumerate() {
                    coeffs.push(self.rational(c, &format!("{piece_path}[{j}]"))?);
                }
                pieces.push(Poly::new(coeffs));
            }
            let mut values = Vec::new();
            for (i, v) in self
                .array(map.get("values").unwrap_or(&null), &format!("{path}.values"))?
                .iter()
                .enumerate()
            {
                values.push(self.rational(v, &format!("{path}.values[{i}]"))?);
            }
            match Piecewise::new(breakpoints, pieces, values) {
                Ok(pw) => Some(pw),
                Err(err) => {
                    self.push("piecewise", path, err.to_string());
                    None
                }
            }
        }
    }

    fn element_set(&mut self, value: &Value, path: &str, order: usize) -> Option<BTreeSet<usize>> {
        let items = self.array(value, path)?;
        let mut set = BTreeSet::new();
        for (i, item) in items.iter().enumerate() {
            let e = self.uint(item, &format!("{path}[{i}]"))? as usize;
            if e >= order {
                self.push(
                    "dangling-id",
                    &format!("{path}[{i}]"),
                    format!("element {e} outside the ambient group of order {order}"),
                );
                return None;
            }
            set.insert(e);
        }
        Some(set)
    }

    fn groupoid(&mut self, value: &Value, path: &str) -> Option<FiniteGroupoid> {
        let map = self.obj(value, path)?;
        if let Some(n) = map.get("pair") {
            let n = self.uint(n, &format!("{path}.pair"))?;
            return match construct::try_pair_groupoid(n as usize) {
                Ok(g) => Some(g),
                Err(err) => {
                    self.push("schema", &format!("{path}.pair"), err.to_string());
                    None
                }
            };
        }
        if let Some(tables) = map.get("bundle") {
            let tables_path = format!("{path}.bundle");
            let items = self.array(tables, &tables_path)?;
            let mut fibers = Vec::new();
            for (i, t) in items.iter().enumerate() {
                fibers.push(self.group_table(t, &format!("{tables_path}[{i}]"))?);
            }
            return Some(construct::group_bundle(&fibers));
        }
        if let Some(spec) = map.get("action") {
            let spec_path = format!("{path}.action");
            let spec_map = self.obj(spec, &spec_path)?;
            let table = self.group_table(spec_map.get("group")?, &format!("{spec_path}.group"))?;
            let points = self.uint(spec_map.get("points")?, &format!("{spec_path}.points"))? as usize;
            let act_path = format!("{spec_path}.act");
            let rows_json = self.array(spec_map.get("act")?, &act_path)?;
            let mut act = Vec::new();
            for (i, row) in rows_json.iter().enumerate() {
                let row_path = format!("{act_path}[{i}]");
                let entries = self.array(row, &row_path)?;
                let mut parsed = Vec::new();
                for (j, e) in entries.iter().enumerate() {
                    parsed.push(self.uint(e, &format!("{row_path}[{j}]"))? as usize);
                }
                act.push(parsed);
            }
            return match construct::action_groupoid(&table, points, &act) {
                Ok(g) => Some(g),
                Err(err) => {
                    self.push("action", &spec_path, err.to_string());
                    None
                }
            };
        }
        if let Some(parts) = map.get("product") {
            let parts_path = format!("{path}.product");
            let items = self.array(parts, &parts_path)?;
            if items.len() != 2 {
                self.push("schema", &parts_path, "expected exactly two factors");
                return None;
            }
            let g1 = self.groupoid(&items[0], &format!("{parts_path}[0]"))?;
            let g2 = self.groupoid(&items[1], &format!("{parts_path}[1]"))?;
            return Some(construct::product_groupoid(&g1, &g2));
        }

        // explicit table form
        let objects = self.uint(map.get("objects").unwrap_or(&Value::Null), &format!("{path}.objects"))?;
        let arrows_path = format!("{path}.arrows");
        let arrows_json = self.array(map.get("arrows").unwrap_or(&Value::Null), &arrows_path)?;
        let mut arrows = Vec::new();
        for (i, arrow) in arrows_json.iter().enumerate() {
            let arrow_path = format!("{arrows_path}[{i}]");
            let arrow_map = self.obj(arrow, &arrow_path)?;
            let id = self.uint(arrow_map.get("id").unwrap_or(&Value::Null), &format!("{arrow_path}.id"))?;
            let src = self.uint(arrow_map.get("src").unwrap_or(&Value::Null), &format!("{arrow_path}.src"))?;
            let dst = self.uint(arrow_map.get("dst").unwrap_or(&Value::Null), &format!("{arrow_path}.dst"))?;
            arrows.push((id as u32, src as u32, dst as u32));
        }
        let compose = self
            .uint_tuples(map.get("compose").unwrap_or(&Value::Null), &format!("{path}.compose"), 3)
            .into_iter()
            .map(|t| (t[0] as u32, t[1] as u32, t[2] as u32))
            .collect();
        let inverse = self
            .uint_tuples(map.get("inverse").unwrap_or(&Value::Null), &format!("{path}.inverse"), 2)
            .into_iter()
            .map(|t| (t[0] as u32, t[1] as u32))
            .collect();
        let identity = self
            .uint_tuples(map.get("identity").unwrap_or(&Value::Null), &format!("{path}.identity"), 2)
            .into_iter()
            .map(|t| (t[0] as u32, t[1] as u32))
            .collect();
        if !self.diags.is_empty() {
            return None;
        }
        let data = GroupoidData {
            objects: objects as u32,
            arrows,
            compose,
            inverse,
            identity,
        };
        match FiniteGroupoid::from_data(&data) {
            Ok(g) => Some(g),
            Err(issues) => {
                for issue in issues {
                    self.push("dangling-id", path, issue.to_string());
                }
                None
            }
        }
    }

    fn bundle(&mut self, value: &Value, path: &str) -> Option<StepSubgroupBundle> {
        let map = self.obj(value, path)?;
        let ambient = self.group_table(map.get("ambient").unwrap_or(&Value::Null), &format!("{path}.ambient"))?;
        let order = ambient.order();
        let bp_path = format!("{path}.breakpoints");
        let bp_json = self.array(map.get("breakpoints").unwrap_or(&Value::Null), &bp_path)?;
        let mut breakpoints = Vec::new();
        for (i, b) in bp_json.iter().enumerate() {
            let b = self.rational(b, &format!("{bp_path}[{i}]"))?;
            if b < Rat::from_integer(0.into()) {
                self.push("breakpoint", &format!("{bp_path}[{i}]"), "breakpoint below 0");
                return None;
            }
            breakpoints.push(b);
        }
        let mut pieces = Vec::new();
        for (i, p) in self
            .array(map.get("pieces").unwrap_or(&Value::Null), &format!("{path}.pieces"))?
            .iter()
            .enumerate()
        {
            pieces.push(self.element_set(p, &format!("{path}.pieces[{i}]"), order)?);
        }
        let mut points = Vec::new();
        for (i, p) in self
            .array(map.get("points").unwrap_or(&Value::Null), &format!("{path}.points"))?
            .iter()
            .enumerate()
        {
            points.push(self.element_set(p, &format!("{path}.points[{i}]"), order)?);
        }
        let bundle = StepSubgroupBundle {
            ambient,
            breakpoints,
            pieces,
            points,
        };
        let report = crate::stepbundle::validate_bundle(&bundle);
        for issue in &report.shape_issues {
            self.push("breakpoint", path, issue.clone());
        }
        for (site, violation) in &report.subgroup_issues {
            self.push("subgroup", &format!("{path}.{site:?}"), violation.to_string());
        }
        if report.is_valid() {
            Some(bundle)
        } else {
            None
        }
    }

    fn system(&mut self, value: &Value, path: &str) -> Option<Vec<MeasureEntry>> {
        let map = self.obj(value, path)?;
        let measures_path = format!("{path}.measures");
        let items = self.array(map.get("measures").unwrap_or(&Value::Null), &measures_path)?;
        let mut entries = Vec::new();
        for (i, item) in items.iter().enumerate() {
            let entry_path = format!("{measures_path}[{i}]");
            let entry_map = self.obj(item, &entry_path)?;
            let object = self.uint(entry_map.get("x").unwrap_or(&Value::Null), &format!("{entry_path}.x"))?;
            let weights = self.weight_pairs(
                entry_map.get("weights").unwrap_or(&Value::Null),
                &format!("{entry_path}.weights"),
            );
            entries.push(MeasureEntry {
                object: object as u32,
                weights,
            });
        }
        Some(entries)
    }

    fn function(&mut self, value: &Value, path: &str) -> Option<FunctionPayload> {
        // bare-array shorthand: arrow weights [[arrowId, "p/q"], …]
        if value.is_array() {
            return Some(FunctionPayload::Arrows(self.weight_pairs(value, path)));
        }
        let map = self.obj(value, path)?;
        if let Some(arrows) = map.get("arrows") {
            return Some(FunctionPayload::Arrows(
                self.weight_pairs(arrows, &format!("{path}.arrows")),
            ));
        }
        if let Some(objects) = map.get("objects") {
            return Some(FunctionPayload::Objects(
                self.weight_pairs(objects, &format!("{path}.objects")),
            ));
        }
        if let Some(sheets) = map.get("sheets") {
            let sheets_path = format!("{path}.sheets");
            let items = self.array(sheets, &sheets_path)?;
            let mut parsed = Vec::new();
            for (i, s) in items.iter().enumerate() {
                parsed.push(self.piecewise(s, &format!("{sheets_path}[{i}]"))?);
            }
            return Some(FunctionPayload::Sheets(parsed));
        }
        if let Some(pw) = map.get("piecewise") {
            return Some(FunctionPayload::Piecewise(
                self.piecewise(pw, &format!("{path}.piecewise"))?,
            ));
        }
        self.push(
            "schema",
            path,
            "function payload needs one of: arrows, objects, sheets, piecewise",
        );
        None
    }
}

/// Parses and validates a manifest. On failure every collected diagnostic is
/// returned; each has a distinct code and a field path.
pub fn parse_manifest(text: &str) -> Result<Manifest, Vec<Diagnostic>> {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(err) => {
            return Err(vec![Diagnostic {
                code: "json-syntax",
                path: format!("{}:{}", err.line(), err.column()),
                message: err.to_string(),
            }]);
        }
    };
    let mut parser = Parser::new();
    let manifest = (|| {
        let map = parser.obj(&value, "$")?;
        let kind = match map.get("kind").and_then(Value::as_str) {
            Some(k) => k.to_string(),
            None => {
                parser.push("schema", "$.kind", "expected a kind string");
                return None;
            }
        };
        let name = map.get("name").and_then(Value::as_str).map(str::to_string);
        let seed = map.get("seed").and_then(Value::as_u64);
        let payload_json = map.get("payload").unwrap_or(&Value::Null);
        let payload = match kind.as_str() {
            "groupoid" => ManifestPayload::Groupoid(parser.groupoid(payload_json, "$.payload")?),
            "bundle" => ManifestPayload::Bundle(parser.bundle(payload_json, "$.payload")?),
            "system" => ManifestPayload::System(parser.system(payload_json, "$.payload")?),
            "function" => ManifestPayload::Function(parser.function(payload_json, "$.payload")?),
            other => {
                parser.push("schema", "$.kind", format!("unknown kind {other:?}"));
                return None;
            }
        };
        Some(Manifest {
            name,
            seed,
            payload,
        })
    })();
    match manifest {
        Some(m) if parser.diags.is_empty() => Ok(m),
        _ => {
            if parser.diags.is_empty() {
                parser.push("schema", "$", "invalid manifest");
            }
            Err(parser.diags)
        }
    }
}

fn rat_value(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

fn piecewise_value(pw: &Piecewise) -> Value {
    json!({
        "breakpoints": pw.breakpoints().iter().map(rat_value).collect::<Vec<_>>(),
        "pieces": pw
            .pieces()
            .iter()
            .map(|p| p.coeffs.iter().map(rat_value).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "values": pw.values().iter().map(rat_value).collect::<Vec<_>>(),
    })
}

/// Serializes a manifest canonically (explicit table forms, sorted entries).
pub fn serialize_manifest(manifest: &Manifest) -> String {
    let payload = match &manifest.payload {
        ManifestPayload::Groupoid(g) => groupoid_value(g),
        ManifestPayload::Bundle(b) => json!({
            "ambient": b.ambient.rows(),
            "breakpoints": b.breakpoints.iter().map(rat_value).collect::<Vec<_>>(),
            "pieces": b.pieces.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
            "points": b.points.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        ManifestPayload::System(entries) => json!({
            "measures": entries
                .iter()
                .map(|e| {
                    json!({
                        "x": e.object,
                        "weights": e
                            .weights
                            .iter()
                            .map(|(a, w)| json!([a, format_rat(w)]))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        }),
        ManifestPayload::Function(payload) => match payload {
            FunctionPayload::Arrows(weights) => json!({
                "arrows": weights
                    .iter()
                    .map(|(a, w)| json!([a, format_rat(w)]))
                    .collect::<Vec<_>>(),
            }),
            FunctionPayload::Objects(weights) => json!({
                "objects": weights
                    .iter()
                    .map(|(x, w)| json!([x, format_rat(w)]))
                    .collect::<Vec<_>>(),
            }),
            FunctionPayload::Sheets(sheets) => json!({
                "sheets": sheets.iter().map(piecewise_value).collect::<Vec<_>>(),
            }),
            FunctionPayload::Piecewise(pw) => json!({ "piecewise": piecewise_value(pw) }),
        },
    };
    let mut envelope = Map::new();
    envelope.insert("kind".into(), Value::String(kind_name(&manifest.payload).into()));
    if let Some(name) = &manifest.name {
        envelope.insert("name".into(), Value::String(name.clone()));
    }
    if let Some(seed) = manifest.seed {
        envelope.insert("seed".into(), json!(seed));
    }
    envelope.insert("payload".into(), payload);
    serde_json::to_string_pretty(&Value::Object(envelope)).expect("serializable")
}

fn kind_name(payload: &ManifestPayload) -> &'static str {
    match payload {
        ManifestPayload::Groupoid(_) => "groupoid",
        ManifestPayload::Bundle(_) => "bundle",
        ManifestPayload::System(_) => "system",
        ManifestPayload::Function(_) => "function",
    }
}

fn groupoid_value(g: &FiniteGroupoid) -> Value {
    let data = g.to_data();
    json!({
        "objects": data.objects,
        "arrows": data
            .arrows
            .iter()
            .map(|(id, src, dst)| json!({"id": id, "src": src, "dst": dst}))
            .collect::<Vec<_>>(),
        "compose": data.compose.iter().map(|&(a, b, c)| json!([a, b, c])).collect::<Vec<_>>(),
        "inverse": data.inverse.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "identity": data.identity.iter().map(|&(x, a)| json!([x, a])).collect::<Vec<_>>(),
    })
}

/// Binds system entries to a groupoid as a Haar-system candidate. Arrow ids
/// are kept as given; verification reports dangling or misplaced entries.
pub fn bind_haar_system(entries: &[MeasureEntry], g: &FiniteGroupoid) -> HaarSystem {
    let mut fibers = vec![FiberMeasure::default(); g.object_count()];
    for entry in entries {
        if (entry.object as usize) < fibers.len() {
            fibers[entry.object as usize] = FiberMeasure::from_entries(
                entry
                    .weights
                    .iter()
                    .map(|(a, w)| (ArrowId(*a), w.clone())),
            );
        }
    }
    HaarSystem { fibers }
}

/// Binds system entries as a coherent-system candidate on the isotropy
/// fibers (same wire format, different target).
pub fn bind_coherent_system(entries: &[MeasureEntry], g: &FiniteGroupoid) -> CoherentSystem {
    let bound = bind_haar_system(entries, g);
    CoherentSystem {
        fibers: bound.fibers,
    }
}

/// System entries for a Haar system (canonical: every object listed).
pub fn system_entries(system: &HaarSystem) -> Vec<MeasureEntry> {
    system
        .fibers
        .iter()
        .enumerate()
        .map(|(x, fiber)| MeasureEntry {
            object: x as u32,
            weights: fiber
                .weights
                .iter()
                .map(|(a, w)| (a.0, w.clone()))
                .collect(),
        })
        .collect()
}

/// Binds arrow weights to a test function.
pub fn bind_test_function(weights: &[(u32, Rat)]) -> TestFunction {
    TestFunction::from_entries(weights.iter().map(|(a, w)| (ArrowId(*a), w.clone())))
}

/// Lambda entries to a dense per-object vector; unlisted objects default to 1.
pub fn bind_lambda(weights: &[(u32, Rat)], object_count: usize) -> Vec<Rat> {
    let mut lambda = vec![Rat::from_integer(1.into()); object_count];
    for (x, w) in weights {
        if (*x as usize) < object_count {
            lambda[*x as usize] = w.clone();
        }
    }
    lambda
}

/// Sheet list to a sheet function (length checked against the bundle later).
pub fn bind_sheets(sheets: &[Piecewise]) -> SheetFunction {
    SheetFunction {
        sheets: sheets.to_vec(),
    }
}

/// Object ids referencing nothing in the groupoid (diagnostic helper).
pub fn dangling_objects(entries: &[MeasureEntry], g: &FiniteGroupoid) -> Vec<u32> {
    entries
        .iter()
        .map(|e| e.object)
        .filter(|&x| x as usize >= g.object_count())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn shorthand_groupoids_parse() {
        let m = parse_manifest(r#"{"kind":"groupoid","payload":{"pair":3}}"#).unwrap();
        let ManifestPayload::Groupoid(g) = &m.payload else {
            panic!("expected groupoid")
        };
        assert_eq!(g.arrow_count(), 9);
        assert_eq!(*g, construct::pair_groupoid(3));

        let m = parse_manifest(
            r#"{"kind":"groupoid","payload":{"bundle":[[[0,1],[1,0]],[[0]]]}}"#,
        )
        .unwrap();
        let ManifestPayload::Groupoid(g) = &m.payload else {
            panic!("expected groupoid")
        };
        assert_eq!(g.arrow_count(), 3);

        let m = parse_manifest(
            r#"{"kind":"groupoid","payload":{"product":[{"pair":2},{"bundle":[[[0,1],[1,0]],[[0,1],[1,0]]]}]}}"#,
        )
        .unwrap();
        let ManifestPayload::Groupoid(g) = &m.payload else {
            panic!("expected groupoid")
        };
        assert_eq!(g.arrow_count(), 16);
        assert_eq!(g.object_count(), 4);

        // swap action of Z2 on two points
        let m = parse_manifest(
            r#"{"kind":"groupoid","payload":{"action":{
                "group":[[0,1],[1,0]],"points":2,"act":[[0,1],[1,0]]}}}"#,
        )
        .unwrap();
        let ManifestPayload::Groupoid(g) = &m.payload else {
            panic!("expected groupoid")
        };
        assert_eq!(g.arrow_count(), 4);
        assert!(g.validate().is_valid());

        // a broken action is rejected with the `action` code
        let diags = parse_manifest(
            r#"{"kind":"groupoid","payload":{"action":{
                "group":[[0,1],[1,0]],"points":2,"act":[[1,0],[0,1]]}}}"#,
        )
        .unwrap_err();
        assert!(diags.iter().any(|d| d.code == "action"));
    }

    #[test]
    fn bare_array_function_payload_parses() {
        let m = parse_manifest(r#"{"kind":"function","payload":[[0,"1/2"],[3,"-2"]]}"#).unwrap();
        let ManifestPayload::Function(FunctionPayload::Arrows(weights)) = &m.payload else {
            panic!("expected arrow weights")
        };
        assert_eq!(weights.len(), 2);
        assert_eq!(weights[0], (0, crate::rat::rat(1, 2)));
        let f = bind_test_function(weights);
        assert_eq!(f.value(ArrowId(0)), crate::rat::rat(1, 2));
        assert_eq!(f.value(ArrowId(1)), int(0));
        assert_eq!(f.value(ArrowId(3)), int(-2));
    }

    #[test]
    fn diagnostics_have_codes_and_paths() {
        // dangling compose reference
        let text = r#"{"kind":"groupoid","payload":{
            "objects":1,
            "arrows":[{"id":0,"src":0,"dst":0}],
            "compose":[[0,0,5]],
            "inverse":[[0,0]],
            "identity":[[0,0]]}}"#;
        let diags = parse_manifest(text).unwrap_err();
        assert!(diags.iter().any(|d| d.code == "dangling-id"));

        // unnormalized rational
        let text = r#"{"kind":"function","payload":{"arrows":[[0,"2/4"]]}}"#;
        let diags = parse_manifest(text).unwrap_err();
        assert_eq!(diags[0].code, "rational-unnormalized");
        assert_eq!(diags[0].path, "$.payload.arrows[0][1]");

        // negative breakpoint
        let text = r#"{"kind":"bundle","payload":{
            "ambient":[[0,1],[1,0]],
            "breakpoints":["-1/2","1"],
            "pieces":[[0]],
            "points":[[0],[0]]}}"#;
        let diags = parse_manifest(text).unwrap_err();
        assert!(diags.iter().any(|d| d.code == "breakpoint"));

        // syntax errors carry line:col
        let diags = parse_manifest("{not json").unwrap_err();
        assert_eq!(diags[0].code, "json-syntax");
    }

    #[test]
    fn round_trip_through_serialization() {
        let examples = [
            Manifest {
                name: Some("pair3".into()),
                seed: None,
                payload: ManifestPayload::Groupoid(construct::pair_groupoid(3)),
            },
            Manifest {
                name: None,
                seed: Some(7),
                payload: ManifestPayload::Function(FunctionPayload::Arrows(vec![
                    (0, int(2)),
                    (3, crate::rat::rat(-1, 2)),
                ])),
            },
            Manifest {
                name: Some("drop".into()),
                seed: None,
                payload: ManifestPayload::Bundle(
                    crate::registry::example("drop-bundle")
                        .map(|m| match m.payload {
                            ManifestPayload::Bundle(b) => b,
                            _ => panic!("drop-bundle is a bundle"),
                        })
                        .unwrap(),
                ),
            },
        ];
        for manifest in examples {
            let text = serialize_manifest(&manifest);
            let reparsed = parse_manifest(&text).unwrap();
            assert_eq!(reparsed, manifest);
        }
    }
}
