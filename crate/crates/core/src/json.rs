//! Canonical JSON encoding of the library's values and reports.
//!
//! Objects are emitted with sorted keys, polynomial terms in lexicographic
//! exponent order and integers of arbitrary size as decimal strings, so equal
//! values always produce identical bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::algebra::{LatticeMap, LaurentPoly, Poly, RationalFunction, Weight};
use crate::bundle::{BundleReport, FiberIso, GkmBundle, HolonomyGroup};
use crate::gkm::{ClassReport, EquivariantClass, Finding, GkmGraph, GraphIso, MEntry, Theory, ValidationReport};
use crate::kostant::{KkContext, PropertyReport, TensorElement};
use crate::projective::Integral;
use crate::{Error, Result};

/// Values with a canonical JSON encoding.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

/// Values that can be decoded from their JSON encoding.
pub trait FromJson: Sized {
    fn from_json(v: &Value) -> Result<Self>;
}

/// Pretty-printed canonical text, ending in a newline.
pub fn emit(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn to_string<T: ToJson + ?Sized>(x: &T) -> String {
    emit(&x.to_json())
}

pub fn from_str<T: FromJson>(s: &str) -> Result<T> {
    T::from_json(&serde_json::from_str::<Value>(s)?)
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing field `{key}`")))
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| malformed("expected an object"))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| malformed("expected an array"))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| malformed("expected a string"))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| malformed("expected a nonnegative integer"))
}

fn int_vec(v: &Value) -> Result<Vec<i64>> {
    as_array(v)?.iter().map(|x| x.as_i64().ok_or_else(|| malformed("expected an integer"))).collect()
}

fn pair(v: &Value) -> Result<(String, String)> {
    match as_array(v)?.as_slice() {
        [a, b] => Ok((as_str(a)?.to_string(), as_str(b)?.to_string())),
        _ => Err(malformed("expected a pair of vertex names")),
    }
}

/// Parses a decimal integer with an optional sign.
pub fn parse_bigint(s: &str) -> Result<BigInt> {
    let t = s.strip_prefix('+').unwrap_or(s);
    if t.is_empty() || t.starts_with(['+', '-']) && t.len() == 1 {
        return Err(malformed(format!("`{s}` is not an integer")));
    }
    BigInt::from_str(t).map_err(|_| malformed(format!("`{s}` is not an integer")))
}

impl ToJson for LaurentPoly {
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms().map(|(e, c)| json!({"exp": e, "coeff": c.to_string()})).collect();
        json!({"rank": self.rank(), "terms": terms})
    }
}

impl FromJson for LaurentPoly {
    fn from_json(v: &Value) -> Result<Self> {
        let rank = as_usize(field(v, "rank")?)?;
        let terms = as_array(field(v, "terms")?)?
            .iter()
            .map(|t| Ok((int_vec(field(t, "exp")?)?, parse_bigint(as_str(field(t, "coeff")?)?)?)))
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(rank, terms)
    }
}

impl ToJson for Poly {
    fn to_json(&self) -> Value {
        self.as_laurent().to_json()
    }
}

impl FromJson for Poly {
    fn from_json(v: &Value) -> Result<Self> {
        Poly::new(LaurentPoly::from_json(v)?)
    }
}

impl ToJson for RationalFunction {
    fn to_json(&self) -> Value {
        json!({"numerator": self.numerator().to_json(), "denominator": self.denominator().to_json()})
    }
}

impl ToJson for Weight {
    fn to_json(&self) -> Value {
        json!(self.coords())
    }
}

impl FromJson for Weight {
    fn from_json(v: &Value) -> Result<Self> {
        Ok(Weight::new(int_vec(v)?))
    }
}

impl ToJson for LatticeMap {
    fn to_json(&self) -> Value {
        json!(self.rows())
    }
}

impl FromJson for LatticeMap {
    fn from_json(v: &Value) -> Result<Self> {
        let rows = as_array(v)?.iter().map(int_vec).collect::<Result<Vec<_>>>()?;
        LatticeMap::from_rows(rows)
    }
}

impl ToJson for GkmGraph {
    fn to_json(&self) -> Value {
        let edges: Vec<Value> = (0..self.num_edges())
            .map(|e| {
                let (s, d) = self.edge_names(e);
                json!({"src": s, "dst": d, "alpha": self.alpha(e).to_json()})
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("rank".into(), json!(self.rank()));
        obj.insert("vertices".into(), json!(self.vertices()));
        obj.insert("edges".into(), Value::Array(edges));
        if let Some(conn) = self.connection() {
            let mut entries = Vec::new();
            for (e, edge) in self.edges().iter().enumerate() {
                for &f in self.out_edges(edge.src) {
                    if let Some(t) = conn.get(self, e, f) {
                        let name = |x| {
                            let (a, b) = self.edge_names(x);
                            json!([a, b])
                        };
                        entries.push(json!({"edge": name(e), "from": name(f), "to": name(t)}));
                    }
                }
            }
            obj.insert("connection".into(), Value::Array(entries));
        }
        Value::Object(obj)
    }
}

impl FromJson for GkmGraph {
    fn from_json(v: &Value) -> Result<Self> {
        let rank = as_usize(field(v, "rank")?)?;
        let vertices = as_array(field(v, "vertices")?)?
            .iter()
            .map(|x| as_str(x).map(str::to_string))
            .collect::<Result<Vec<_>>>()?;
        let edges = as_array(field(v, "edges")?)?
            .iter()
            .map(|e| {
                Ok((
                    as_str(field(e, "src")?)?.to_string(),
                    as_str(field(e, "dst")?)?.to_string(),
                    Weight::from_json(field(e, "alpha")?)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let graph = GkmGraph::new(rank, vertices, edges)?;
        match v.get("connection") {
            None | Some(Value::Null) => Ok(graph),
            Some(c) => {
                let entries = as_array(c)?
                    .iter()
                    .map(|x| Ok((pair(field(x, "edge")?)?, pair(field(x, "from")?)?, pair(field(x, "to")?)?)))
                    .collect::<Result<Vec<_>>>()?;
                graph.with_connection_entries(&entries)
            }
        }
    }
}

impl ToJson for EquivariantClass {
    fn to_json(&self) -> Value {
        let values: Map<String, Value> = self.values().iter().map(|(v, p)| (v.clone(), p.to_json())).collect();
        json!({"theory": self.theory().to_string(), "values": values})
    }
}

impl FromJson for EquivariantClass {
    fn from_json(v: &Value) -> Result<Self> {
        let theory = match as_str(field(v, "theory")?)? {
            "K" => Theory::K,
            "H" => Theory::H,
            t => return Err(malformed(format!("unknown theory `{t}`"))),
        };
        let values = as_object(field(v, "values")?)?
            .iter()
            .map(|(k, p)| Ok((k.clone(), LaurentPoly::from_json(p)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let rank = match v.get("rank") {
            Some(r) => as_usize(r)?,
            None => values.values().next().map(LaurentPoly::rank).ok_or_else(|| malformed("class without values needs a `rank`"))?,
        };
        EquivariantClass::new(theory, rank, values)
    }
}

impl ToJson for GkmBundle {
    fn to_json(&self) -> Value {
        json!({"total": self.total().to_json(), "base": self.base().to_json(), "proj": self.projection()})
    }
}

impl FromJson for GkmBundle {
    fn from_json(v: &Value) -> Result<Self> {
        let proj = as_object(field(v, "proj")?)?
            .iter()
            .map(|(k, x)| Ok((k.clone(), as_str(x)?.to_string())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GkmBundle::new(GkmGraph::from_json(field(v, "total")?)?, GkmGraph::from_json(field(v, "base")?)?, &proj)
    }
}

impl ToJson for GraphIso {
    fn to_json(&self) -> Value {
        json!({"vertex_map": self.vertex_map, "lattice_map": self.lattice_map.to_json()})
    }
}

impl FromJson for GraphIso {
    fn from_json(v: &Value) -> Result<Self> {
        let vertex_map = as_object(field(v, "vertex_map")?)?
            .iter()
            .map(|(k, x)| Ok((k.clone(), as_str(x)?.to_string())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(GraphIso::new(vertex_map, LatticeMap::from_json(field(v, "lattice_map")?)?))
    }
}

impl ToJson for TensorElement {
    fn to_json(&self) -> Value {
        let summands: Vec<Value> =
            self.summands().iter().map(|(f, g)| json!({"f": f.to_json(), "g": g.to_json()})).collect();
        json!({"summands": summands})
    }
}

/// Decodes a tensor and validates it against the context.
pub fn tensor_from_json(ctx: &KkContext, v: &Value) -> Result<TensorElement> {
    let summands = as_array(field(v, "summands")?)?
        .iter()
        .map(|s| Ok((LaurentPoly::from_json(field(s, "f")?)?, LaurentPoly::from_json(field(s, "g")?)?)))
        .collect::<Result<Vec<_>>>()?;
    TensorElement::new(ctx, summands)
}

impl ToJson for Finding {
    fn to_json(&self) -> Value {
        json!({"check": self.check.as_str(), "location": self.location, "message": self.message})
    }
}

impl ToJson for MEntry {
    fn to_json(&self) -> Value {
        json!({"edge": [self.edge.0, self.edge.1], "from": [self.from.0, self.from.1], "to": [self.to.0, self.to.1], "m": self.m})
    }
}

fn list<T: ToJson>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(ToJson::to_json).collect())
}

impl ToJson for ValidationReport {
    fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "findings": list(&self.findings),
            "notes": list(&self.notes),
            "m_table": list(&self.m_table),
            "connection_inferred": self.connection_inferred,
            "connection_unique": self.connection_unique,
        })
    }
}

fn m_entries(entries: &[(Weight, i64)]) -> Value {
    Value::Array(entries.iter().map(|(x, m)| json!({"x": x.to_json(), "m": m})).collect())
}

impl ToJson for BundleReport {
    fn to_json(&self) -> Value {
        let tables: Vec<Value> = self
            .m_tables
            .iter()
            .map(|t| json!({"edge": [t.edge.0, t.edge.1], "entries": m_entries(&t.entries)}))
            .collect();
        json!({
            "valid": self.is_valid(),
            "findings": list(&self.findings),
            "notes": list(&self.notes),
            "total": self.total.to_json(),
            "base": self.base.to_json(),
            "m_tables": tables,
            "edge_independent_m": self.edge_independent_m,
        })
    }
}

impl ToJson for FiberIso {
    fn to_json(&self) -> Value {
        json!({
            "source": self.source,
            "target": self.target,
            "vertex_map": self.vertex_map,
            "lattice_map": self.lattice_map.to_json(),
            "m_table": m_entries(&self.m_table),
        })
    }
}

impl ToJson for HolonomyGroup {
    fn to_json(&self) -> Value {
        let generators: Vec<Value> = self
            .generators
            .iter()
            .map(|(path, g)| json!({"loop": path, "vertex_map": g.vertex_map, "lattice_map": g.lattice_map.to_json()}))
            .collect();
        json!({
            "base_vertex": self.base_vertex,
            "order": self.order(),
            "generators": generators,
            "permutations": self.permutations(),
        })
    }
}

impl ToJson for ClassReport {
    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("is_class".into(), json!(self.is_class));
        if let Some((a, b)) = &self.failing_edge {
            obj.insert("failing_edge".into(), json!([a, b]));
        }
        Value::Object(obj)
    }
}

impl ToJson for Integral {
    fn to_json(&self) -> Value {
        json!({"value": self.value.to_json(), "is_polynomial": self.is_polynomial})
    }
}

impl ToJson for PropertyReport {
    fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "multiplicative": self.multiplicative,
            "image_is_class": self.image_is_class,
            "balanced": self.balanced,
            "invariant_images": self.invariant_images,
            "all_pass": self.all_pass(),
            "failures": self.failures,
        })
    }
}

impl<T: ToJson> ToJson for [T] {
    fn to_json(&self) -> Value {
        list(self)
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        list(self)
    }
}
