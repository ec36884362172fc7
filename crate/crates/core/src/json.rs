//! JSON forms of every library object.
//!
//! Rationals are exact `"p/q"` strings. Coordinates are comma-joined level
//! indices (`"2,0,1"`); maps keep grid order so output is deterministic.

use dashu_int::UBig;
use serde_json::{json, Map, Value};

use crate::decompose::{ConstraintCensus, ConvexCombination, MonotoneGaiDecomposition};
use crate::elicit::{ElicitationResult, ElicitationStatus, InconsistencyCertificate, PreferenceDataset};
use crate::error::{Error, Result};
use crate::gai::{Alternative, Attribute, AttributeSpace, GaiModel, GaiTerm, TabulatedFunction};
use crate::kary::{format_coords, CapacityReport, GridPoint, GridShape, KaryGame, MobiusMap};
use crate::lp::LinearProgram;
use crate::polytope::{Antichain, VertexCapacity, VertexCensus, VertexSupport};
use crate::rational::{format_decimal, format_rational, parse_rational, Rational};

/// How rationals are written: exactly, or as `~`-marked truncated decimals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Style {
    #[default]
    Exact,
    Decimal(usize),
}

impl Style {
    pub fn rational(self, value: &Rational) -> Value {
        Value::String(match self {
            Style::Exact => format_rational(value),
            Style::Decimal(digits) => format_decimal(value, digits),
        })
    }
}

fn parse_error(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn field<'a>(value: &'a Value, key: &str) -> Result<&'a Value> {
    value
        .get(key)
        .ok_or_else(|| parse_error(format!("missing key {key:?}")))
}

fn object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| parse_error(format!("{what} must be an object")))
}

fn array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| parse_error(format!("{what} must be an array")))
}

fn unsigned(value: &Value, what: &str) -> Result<u64> {
    value
        .as_u64()
        .ok_or_else(|| parse_error(format!("{what} must be a nonnegative integer")))
}

fn small(value: &Value, what: &str) -> Result<u32> {
    u32::try_from(unsigned(value, what)?)
        .map_err(|_| parse_error(format!("{what} is too large")))
}

fn index(value: &Value, what: &str) -> Result<usize> {
    usize::try_from(unsigned(value, what)?)
        .map_err(|_| parse_error(format!("{what} is too large")))
}

/// A rational from a `"p/q"` string or a JSON integer.
pub fn rational(value: &Value) -> Result<Rational> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(parse_error(format!("expected a rational string, found {value}"))),
    };
    parse_rational(&text).map_err(|e| parse_error(e.to_string()))
}

fn levels(value: &Value, what: &str) -> Result<Vec<u32>> {
    array(value, what)?.iter().map(|v| small(v, what)).collect()
}

fn indices(value: &Value, what: &str) -> Result<Vec<usize>> {
    array(value, what)?.iter().map(|v| index(v, what)).collect()
}

fn big(value: &UBig) -> Value {
    serde_json::from_str(&value.to_string()).expect("integer literal")
}

/// A dense table keyed by coordinates in grid order.
fn table_to_json(shape: &GridShape, values: &[Rational], style: Style) -> Value {
    let mut map = Map::with_capacity(values.len());
    for (coords, value) in shape.points().zip(values) {
        map.insert(format_coords(&coords), style.rational(value));
    }
    Value::Object(map)
}

/// Reads a dense table; every point of `shape` must appear exactly once.
fn table_from_json(shape: &GridShape, value: &Value, what: &str) -> Result<Vec<Rational>> {
    let map = object(value, what)?;
    let mut slots: Vec<Option<Rational>> = vec![None; shape.len()];
    for (key, v) in map {
        let point: GridPoint = key.parse().map_err(|e: Error| parse_error(format!("{what} key {key:?}: {e}")))?;
        shape.check(point.coords())?;
        slots[shape.index(point.coords())] = Some(rational(v)?);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, slot)| {
            slot.ok_or_else(|| {
                parse_error(format!("{what} is missing point {}", format_coords(&shape.coords(i))))
            })
        })
        .collect()
}

pub fn game_to_json(v: &KaryGame, style: Style) -> Value {
    json!({
        "n": v.n(),
        "k": v.k(),
        "values": table_to_json(v.shape(), v.values(), style),
    })
}

pub fn game_from_json(value: &Value) -> Result<KaryGame> {
    let n = index(field(value, "n")?, "n")?;
    let k = small(field(value, "k")?, "k")?;
    let shape = GridShape::uniform(n, k)?;
    let values = table_from_json(&shape, field(value, "values")?, "values")?;
    KaryGame::new(n, k, values)
}

fn sparse_to_json(m: &MobiusMap, style: Style) -> Value {
    Value::Object(
        m.coefficients()
            .iter()
            .map(|(p, c)| (p.to_string(), style.rational(c)))
            .collect(),
    )
}

pub fn mobius_to_json(m: &MobiusMap, style: Style) -> Value {
    json!({ "n": m.n(), "k": m.k(), "mobius": sparse_to_json(m, style) })
}

pub fn mobius_from_json(value: &Value) -> Result<MobiusMap> {
    let n = index(field(value, "n")?, "n")?;
    let k = small(field(value, "k")?, "k")?;
    let mut entries = Vec::new();
    for (key, v) in object(field(value, "mobius")?, "mobius")? {
        let point: GridPoint = key.parse()?;
        entries.push((point, rational(v)?));
    }
    MobiusMap::new(n, k, entries)
}

pub fn report_to_json(report: &CapacityReport) -> Value {
    let mut value = serde_json::to_value(report).expect("serializable report");
    value
        .as_object_mut()
        .expect("report object")
        .insert("capacity".into(), Value::Bool(report.is_capacity()));
    value
}

fn attributes_to_json(space: &AttributeSpace) -> Value {
    Value::Array(
        space
            .attributes()
            .iter()
            .map(|a| json!({ "name": a.name, "levels": a.levels }))
            .collect(),
    )
}

fn attributes_from_json(value: &Value) -> Result<AttributeSpace> {
    let attributes = array(value, "attributes")?
        .iter()
        .map(|a| {
            let name = field(a, "name")?
                .as_str()
                .ok_or_else(|| parse_error("attribute name must be a string"))?
                .to_string();
            let levels = array(field(a, "levels")?, "levels")?
                .iter()
                .map(|l| match l {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(parse_error("levels must be strings")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Attribute { name, levels })
        })
        .collect::<Result<Vec<_>>>()?;
    AttributeSpace::new(attributes)
}

pub fn model_to_json(model: &GaiModel, style: Style) -> Value {
    let terms: Vec<Value> = model
        .terms()
        .iter()
        .map(|t| {
            json!({
                "scope": t.scope(),
                "values": table_to_json(t.shape(), t.values(), style),
            })
        })
        .collect();
    json!({ "attributes": attributes_to_json(model.space()), "terms": terms })
}

pub fn model_from_json(value: &Value) -> Result<GaiModel> {
    let space = attributes_from_json(field(value, "attributes")?)?;
    let terms = array(field(value, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let scope = indices(field(t, "scope")?, "scope")?;
            let bounds = scope
                .iter()
                .map(|&i| {
                    if i < space.n() {
                        Ok(space.m(i))
                    } else {
                        Err(parse_error(format!("scope attribute {i} does not exist")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let shape = GridShape::new(bounds)?;
            let values = table_from_json(&shape, field(t, "values")?, "term values")?;
            GaiTerm::new(&space, scope, values)
        })
        .collect::<Result<Vec<_>>>()?;
    GaiModel::new(space, terms)
}

pub fn tabulated_to_json(u: &TabulatedFunction, style: Style) -> Value {
    json!({
        "attributes": attributes_to_json(u.space()),
        "values": table_to_json(u.space().shape(), u.values(), style),
    })
}

pub fn tabulated_from_json(value: &Value) -> Result<TabulatedFunction> {
    let space = attributes_from_json(field(value, "attributes")?)?;
    let values = table_from_json(space.shape(), field(value, "values")?, "values")?;
    TabulatedFunction::new(space, values)
}

pub fn decomposition_to_json(d: &MonotoneGaiDecomposition, style: Style) -> Value {
    let singletons: Vec<Value> = d
        .singletons()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let shape = GridShape::new(vec![d.bounds()[i]]).expect("valid bound");
            json!({ "i": i, "values": table_to_json(&shape, t, style) })
        })
        .collect();
    let pairs: Vec<Value> = d
        .pairs()
        .iter()
        .map(|t| {
            let shape = GridShape::new(vec![d.bounds()[t.i], d.bounds()[t.j]]).expect("valid bounds");
            json!({ "i": t.i, "j": t.j, "values": table_to_json(&shape, t.values(), style) })
        })
        .collect();
    let mut out = Map::new();
    out.insert("n".into(), json!(d.n()));
    out.insert("k".into(), json!(d.k()));
    if !d.is_uniform() {
        out.insert("bounds".into(), json!(d.bounds()));
    }
    out.insert("singletons".into(), Value::Array(singletons));
    out.insert("pairs".into(), Value::Array(pairs));
    Value::Object(out)
}

pub fn decomposition_from_json(value: &Value) -> Result<MonotoneGaiDecomposition> {
    let n = index(field(value, "n")?, "n")?;
    let k = small(field(value, "k")?, "k")?;
    let bounds = match value.get("bounds") {
        Some(b) => levels(b, "bounds")?,
        None => vec![k; n],
    };
    if bounds.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: bounds.len(),
        });
    }
    if n == 0 || bounds.contains(&0) {
        return Err(Error::InvalidShape(format!("bounds {bounds:?}")));
    }
    let mut singletons: Vec<Option<Vec<Rational>>> = vec![None; n];
    for s in array(field(value, "singletons")?, "singletons")? {
        let i = index(field(s, "i")?, "i")?;
        if i >= n {
            return Err(parse_error(format!("singleton attribute {i} does not exist")));
        }
        let shape = GridShape::new(vec![bounds[i]])?;
        singletons[i] = Some(table_from_json(&shape, field(s, "values")?, "singleton values")?);
    }
    let pair_slot = |i: usize, j: usize| i * (2 * n - i - 1) / 2 + (j - i - 1);
    let mut pairs: Vec<Option<Vec<Rational>>> = vec![None; n * (n - 1) / 2];
    for p in array(field(value, "pairs")?, "pairs")? {
        let i = index(field(p, "i")?, "i")?;
        let j = index(field(p, "j")?, "j")?;
        if i >= j || j >= n {
            return Err(parse_error(format!("pair ({i}, {j}) is not i < j < n")));
        }
        let shape = GridShape::new(vec![bounds[i], bounds[j]])?;
        pairs[pair_slot(i, j)] = Some(table_from_json(&shape, field(p, "values")?, "pair values")?);
    }
    let singletons = singletons
        .into_iter()
        .enumerate()
        .map(|(i, t)| t.ok_or_else(|| parse_error(format!("missing singleton {i}"))))
        .collect::<Result<Vec<_>>>()?;
    let pairs = pairs
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| parse_error("missing pair table"))?;
    MonotoneGaiDecomposition::new(bounds, singletons, pairs)
}

pub fn antichain_to_json(a: &Antichain) -> Value {
    json!({
        "size": a.len(),
        "points": a.points().iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
    })
}

/// `{"support": [..], "antichain": [[a,b],..], "mobius": {..}}`; a singleton
/// threshold `l` is written `[[l]]`.
pub fn vertex_to_json(v: &VertexCapacity, style: Style) -> Value {
    let antichain: Vec<Value> = match v.support() {
        VertexSupport::Singleton { threshold, .. } => vec![json!([threshold])],
        VertexSupport::Pair { antichain, .. } => {
            antichain.points().iter().map(|&(a, b)| json!([a, b])).collect()
        }
    };
    json!({
        "support": v.support().attributes(),
        "antichain": antichain,
        "mobius": sparse_to_json(v.mobius(), style),
    })
}

pub fn vertex_from_json(value: &Value, n: usize, k: u32) -> Result<VertexCapacity> {
    let support = indices(field(value, "support")?, "support")?;
    let points = array(field(value, "antichain")?, "antichain")?
        .iter()
        .map(|p| levels(p, "antichain point"))
        .collect::<Result<Vec<_>>>()?;
    match (support.as_slice(), points.as_slice()) {
        ([i], [p]) if p.len() == 1 => crate::polytope::singleton_vertex(n, k, *i, p[0]),
        ([i, j], _) => {
            let pts = points
                .iter()
                .map(|p| match p.as_slice() {
                    [a, b] => Ok((*a, *b)),
                    _ => Err(parse_error("pair antichain points need two levels")),
                })
                .collect::<Result<Vec<_>>>()?;
            crate::polytope::vertex_from_antichain(&Antichain::new(k, pts)?, (*i, *j), n, k)
        }
        _ => Err(parse_error("vertex support must list one or two attributes")),
    }
}

/// `{"n": .., "k": .., "atoms": [{"vertex": {..}, "weight": ".."}]}`.
pub fn combination_to_json(c: &ConvexCombination, style: Style) -> Value {
    let atoms: Vec<Value> = c
        .atoms()
        .iter()
        .map(|(v, w)| json!({ "vertex": vertex_to_json(v, style), "weight": style.rational(w) }))
        .collect();
    json!({ "n": c.n(), "k": c.k(), "atoms": atoms })
}

pub fn combination_from_json(value: &Value) -> Result<ConvexCombination> {
    let n = index(field(value, "n")?, "n")?;
    let k = small(field(value, "k")?, "k")?;
    let atoms = array(field(value, "atoms")?, "atoms")?
        .iter()
        .map(|a| Ok((vertex_from_json(field(a, "vertex")?, n, k)?, rational(field(a, "weight")?)?)))
        .collect::<Result<Vec<_>>>()?;
    ConvexCombination::new(n, k, atoms)
}

pub fn vertex_census_to_json(c: &VertexCensus) -> Value {
    json!({
        "n": c.n,
        "k": c.k,
        "per_singleton": big(&c.per_singleton),
        "per_pair": big(&c.per_pair),
        "total": c.total.to_string(),
    })
}

pub fn constraint_census_to_json(bounds: &[u32], c: &ConstraintCensus) -> Value {
    let mut out = Map::new();
    out.insert("n".into(), json!(bounds.len()));
    if bounds.iter().all(|&m| m == bounds[0]) {
        out.insert("k".into(), json!(bounds[0]));
    } else {
        out.insert("m".into(), json!(bounds));
    }
    out.insert("variables".into(), big(&c.variables));
    out.insert("full".into(), big(&c.full_monotonicity_constraints));
    out.insert("decomposed".into(), big(&c.decomposed_monotonicity_constraints));
    Value::Object(out)
}

fn alternative(value: &Value) -> Result<Alternative> {
    Ok(GridPoint::new(levels(value, "alternative")?))
}

fn pairs_from_json(value: Option<&Value>, what: &str) -> Result<Vec<(Alternative, Alternative)>> {
    let Some(value) = value else {
        return Ok(Vec::new());
    };
    array(value, what)?
        .iter()
        .map(|p| Ok((alternative(field(p, "better")?)?, alternative(field(p, "worse")?)?)))
        .collect()
}

pub fn dataset_from_json(value: &Value) -> Result<PreferenceDataset> {
    let space = attributes_from_json(field(value, "attributes")?)?;
    let strict = pairs_from_json(value.get("strict"), "strict")?;
    let weak = pairs_from_json(value.get("weak"), "weak")?;
    let assignments = match value.get("assignments") {
        None => Vec::new(),
        Some(a) => array(a, "assignments")?
            .iter()
            .map(|x| Ok((alternative(field(x, "alt")?)?, index(field(x, "category")?, "category")?)))
            .collect::<Result<Vec<_>>>()?,
    };
    PreferenceDataset::new(space, strict, weak, assignments)
}

pub fn dataset_to_json(data: &PreferenceDataset) -> Value {
    let pairs = |list: &[(Alternative, Alternative)]| -> Vec<Value> {
        list.iter()
            .map(|(b, w)| json!({ "better": b.coords(), "worse": w.coords() }))
            .collect()
    };
    let assignments: Vec<Value> = data
        .assignments()
        .iter()
        .map(|(x, c)| json!({ "alt": x.coords(), "category": c }))
        .collect();
    json!({
        "attributes": attributes_to_json(data.space()),
        "strict": pairs(data.strict()),
        "weak": pairs(data.weak()),
        "assignments": assignments,
    })
}

/// Nonzero multipliers keyed by row name.
fn multipliers_to_json(lp: &LinearProgram, y: &[Rational], style: Style) -> Value {
    Value::Array(
        lp.constraints()
            .iter()
            .zip(y)
            .filter(|(_, y)| !y.is_zero())
            .map(|(row, y)| json!({ "row": row.name, "multiplier": style.rational(y) }))
            .collect(),
    )
}

/// `lp` is the program the certificate refers to.
pub fn elicitation_to_json(result: &ElicitationResult, lp: &LinearProgram, style: Style) -> Value {
    match result.status {
        ElicitationStatus::Consistent => json!({
            "status": "consistent",
            "margin": style.rational(result.margin.as_ref().expect("consistent margin")),
            "thresholds": result.thresholds.iter().map(|t| style.rational(t)).collect::<Vec<_>>(),
            "model": decomposition_to_json(result.model.as_ref().expect("consistent model"), style),
        }),
        ElicitationStatus::InfeasibleWithCertificate => {
            let (kind, y) = match result.certificate.as_ref().expect("certificate") {
                InconsistencyCertificate::Farkas(f) => ("farkas", &f.multipliers),
                InconsistencyCertificate::MarginBound(d) => ("margin_bound", &d.multipliers),
            };
            json!({
                "status": "infeasible_with_certificate",
                "certificate": { "kind": kind, "multipliers": multipliers_to_json(lp, y, style) },
            })
        }
    }
}

/// Parses JSON text, reporting `source` with line and column on failure.
pub fn parse_text(text: &str, source: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        parse_error(format!("{source}: line {} column {}: {e}", e.line(), e.column()))
    })
}

/// Compact single-line rendering.
pub fn to_line(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable value")
}

/// Two-space indented rendering with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable value");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::monotone_decompose;
    use crate::kary::{mobius, unanimity};
    use crate::polytope::enumerate_vertices;
    use crate::rational::ratio;

    #[test]
    fn game_round_trip() {
        let v = KaryGame::from_fn(2, 2, |x| ratio(x[0] as i64 * x[1] as i64, 4)).unwrap();
        let value = game_to_json(&v, Style::Exact);
        assert_eq!(value["values"]["1,1"], "1/4");
        assert_eq!(value["values"].as_object().unwrap().len(), 9);
        assert_eq!(game_from_json(&value).unwrap(), v);
        let m = mobius(&v);
        assert_eq!(mobius_from_json(&mobius_to_json(&m, Style::Exact)).unwrap(), m);
    }

    #[test]
    fn missing_point_is_reported() {
        let value = json!({"n": 1, "k": 1, "values": {"0": "0"}});
        let err = game_from_json(&value).unwrap_err().to_string();
        assert!(err.contains("missing point 1"), "{err}");
    }

    #[test]
    fn decimal_style_is_marked() {
        assert_eq!(Style::Decimal(3).rational(&ratio(1, 3)), "~0.333");
    }

    #[test]
    fn decomposition_and_vertex_round_trip() {
        let v = unanimity(3, 2, &GridPoint::new(vec![1, 0, 2])).unwrap();
        let d = monotone_decompose(&v).unwrap();
        assert_eq!(decomposition_from_json(&decomposition_to_json(&d, Style::Exact)).unwrap(), d);
        for vertex in enumerate_vertices(3, 2).unwrap() {
            let back = vertex_from_json(&vertex_to_json(&vertex, Style::Exact), 3, 2).unwrap();
            assert_eq!(back, vertex);
        }
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_text("{\n  \"n\": }", "input.json").unwrap_err().to_string();
        assert!(err.contains("input.json: line 2"), "{err}");
    }

    #[test]
    fn big_census_numbers_are_exact() {
        let c = crate::decompose::constraint_census_uniform(20, 4).unwrap();
        let text = to_line(&constraint_census_to_json(&[4; 20], &c));
        assert!(text.contains("\"full\":1525878906250000"), "{text}");
    }
}
