//! JSON documents.
//!
//! Every document is an object with a `"kind"` field. Coordinates are exact:
//! a coordinate is a JSON integer or a string holding an integer, a decimal
//! (`"-1.25"`, `"3e-2"`) or a fraction (`"7/16"`). JSON floats are rejected
//! for coordinates. Complex coefficients are `[re, im]` pairs of plain
//! numbers.
//!
//! ```json
//! {"kind": "surface", "type": "punctured_plane", "punctures": [[0, 0], ["1/2", 3]]}
//! {"kind": "curve", "surface": {"type": "plane"}, "vertices": [[0,0],[1,0],[1,1],[0,1]]}
//! {"kind": "track", "surface": {"type": "flat_torus"}, "offset": [1, 0], "frames": [[...], [...]]}
//! {"kind": "path", "surface": {"type": "plane"}, "points": [[0,0],[1,0]]}
//! {"kind": "function", "numerator": [[1,0]], "denominator": [[-1,0],[0,0],[1,0]],
//!  "poles": [{"at": [1,0], "order": 1}, {"at": [-1,0]}]}
//! {"kind": "scenario", "track": {...}, "c1": {...}, "function": {...}}
//! ```
//!
//! A scenario bundles documents under role names; a flag expecting a track
//! reads the `"track"` entry, `--c1` reads `"c1"`, and so on. Documents nested
//! in a scenario may omit `"kind"`.

use std::fmt;

use awin_core::{
    Complex64, HomotopyTrack, ManifoldMeta, PLCurve, PLPath, Pole, Pt, Rat, RationalFn, Surface,
};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

/// A document that does not follow the schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

impl FormatError {
    fn new(path: &str, message: impl Into<String>) -> Self {
        FormatError {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

type Res<T> = Result<T, FormatError>;

/// Parses an exact rational from an integer, decimal or `p/q` string.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let ten = BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let mut r = if scale >= 0 {
        Rat::from_integer(n * ten.pow(scale as u32))
    } else {
        Rat::new(n, ten.pow(scale.unsigned_abs()))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Canonical encoding: a JSON integer when it fits, otherwise a string.
pub fn rational_to_json(r: &Rat) -> Value {
    if r.denom().is_one() {
        match r.numer().to_i64() {
            Some(n) => Value::from(n),
            None => Value::String(r.numer().to_string()),
        }
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Parses `"X,Y"` as a point.
pub fn parse_point_arg(s: &str) -> Option<Pt> {
    let (x, y) = s.split_once(',')?;
    Some(Pt::new(parse_rational(x)?, parse_rational(y)?))
}

/// Parses `"M,N"` as an integer pair.
pub fn parse_class_arg(s: &str) -> Option<(i64, i64)> {
    let (m, n) = s.split_once(',')?;
    Some((m.trim().parse().ok()?, n.trim().parse().ok()?))
}

fn rational(v: &Value, path: &str) -> Res<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(u.into()))
            } else {
                Err(FormatError::new(
                    path,
                    "floating-point coordinates are not exact; use a decimal or p/q string",
                ))
            }
        }
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| FormatError::new(path, format!("not a rational number: {s:?}"))),
        _ => Err(FormatError::new(path, "expected a number or rational string")),
    }
}

fn integer(v: &Value, path: &str) -> Res<i64> {
    v.as_i64()
        .ok_or_else(|| FormatError::new(path, "expected an integer"))
}

fn float(v: &Value, path: &str) -> Res<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| FormatError::new(path, "number out of range")),
        Value::String(s) => parse_rational(s)
            .and_then(|r| r.to_f64())
            .ok_or_else(|| FormatError::new(path, format!("not a number: {s:?}"))),
        _ => Err(FormatError::new(path, "expected a number")),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Res<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| FormatError::new(path, "expected an array"))
}

fn object<'a>(v: &'a Value, path: &str) -> Res<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| FormatError::new(path, "expected an object"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Res<&'a Value> {
    o.get(key)
        .ok_or_else(|| FormatError::new(path, format!("missing field {key:?}")))
}

fn sub(path: &str, key: impl fmt::Display) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn pair<'a>(v: &'a Value, path: &str) -> Res<(&'a Value, &'a Value)> {
    match array(v, path)?.as_slice() {
        [a, b] => Ok((a, b)),
        _ => Err(FormatError::new(path, "expected a two-element array")),
    }
}

fn point(v: &Value, path: &str) -> Res<Pt> {
    let (x, y) = pair(v, path)?;
    Ok(Pt::new(rational(x, &sub(path, 0))?, rational(y, &sub(path, 1))?))
}

fn points(v: &Value, path: &str) -> Res<Vec<Pt>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| point(p, &sub(path, i)))
        .collect()
}

fn int_pair(v: &Value, path: &str) -> Res<(i64, i64)> {
    let (a, b) = pair(v, path)?;
    Ok((integer(a, &sub(path, 0))?, integer(b, &sub(path, 1))?))
}

fn complex(v: &Value, path: &str) -> Res<Complex64> {
    let (re, im) = pair(v, path)?;
    Ok(Complex64::new(float(re, &sub(path, 0))?, float(im, &sub(path, 1))?))
}

fn check_kind(o: &Map<String, Value>, kind: &str, path: &str) -> Res<()> {
    match o.get("kind") {
        None if !path.is_empty() => Ok(()),
        Some(Value::String(k)) if k == kind => Ok(()),
        Some(other) => Err(FormatError::new(
            path,
            format!("expected kind {kind:?}, found {other}"),
        )),
        None => Err(FormatError::new(path, "missing field \"kind\"")),
    }
}

fn point_json(p: &Pt) -> Value {
    json!([rational_to_json(&p.x), rational_to_json(&p.y)])
}

fn points_json(ps: &[Pt]) -> Value {
    Value::Array(ps.iter().map(point_json).collect())
}

/// Encodes a complex number as `[re, im]`.
pub fn complex_to_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn surface_body(v: &Value, path: &str) -> Res<Surface> {
    let o = object(v, path)?;
    let ty = field(o, "type", path)?
        .as_str()
        .ok_or_else(|| FormatError::new(&sub(path, "type"), "expected a string"))?;
    let punctures = o.get("punctures");
    match ty {
        "plane" | "flat_torus" => {
            if punctures.is_some_and(|p| !array(p, "").map(Vec::is_empty).unwrap_or(false)) {
                return Err(FormatError::new(
                    &sub(path, "punctures"),
                    format!("a {ty} surface has no punctures"),
                ));
            }
            Ok(if ty == "plane" {
                Surface::Plane
            } else {
                Surface::FlatTorus
            })
        }
        "punctured_plane" => {
            let key = sub(path, "punctures");
            let ps = points(field(o, "punctures", path)?, &key)?;
            Ok(Surface::PuncturedPlane(ps))
        }
        other => Err(FormatError::new(
            &sub(path, "type"),
            format!("unknown surface type {other:?}"),
        )),
    }
}

fn surface_json_body(s: &Surface) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("type".into(), Value::from(s.name()));
    if let Surface::PuncturedPlane(ps) = s {
        m.insert("punctures".into(), points_json(ps));
    }
    m
}

fn offset_of(o: &Map<String, Value>, path: &str) -> Res<(i64, i64)> {
    match o.get("offset") {
        Some(v) => int_pair(v, &sub(path, "offset")),
        None => Ok((0, 0)),
    }
}

fn surface_field(o: &Map<String, Value>, path: &str) -> Res<Surface> {
    match o.get("surface") {
        Some(v) => surface_body(v, &sub(path, "surface")),
        None => Ok(Surface::Plane),
    }
}

fn with_kind(kind: &str, mut body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from(kind));
    m.append(&mut body);
    Value::Object(m)
}

pub fn surface_from_json(v: &Value) -> Res<Surface> {
    surface_at(v, "")
}

fn surface_at(v: &Value, path: &str) -> Res<Surface> {
    check_kind(object(v, path)?, "surface", path)?;
    surface_body(v, path)
}

pub fn surface_to_json(s: &Surface) -> Value {
    with_kind("surface", surface_json_body(s))
}

fn curve_at(v: &Value, path: &str) -> Res<(PLCurve, Option<Rat>)> {
    let o = object(v, path)?;
    check_kind(o, "curve", path)?;
    let surface = surface_field(o, path)?;
    let vertices = points(field(o, "vertices", path)?, &sub(path, "vertices"))?;
    let offset = offset_of(o, path)?;
    let time = o
        .get("time")
        .map(|t| rational(t, &sub(path, "time")))
        .transpose()?;
    Ok((PLCurve::new(surface, vertices, offset), time))
}

/// A curve document. `"surface"` defaults to the plane, `"offset"` to
/// `[0, 0]`; the optional `"time"` is used for front snapshots.
pub fn curve_from_json(v: &Value) -> Res<(PLCurve, Option<Rat>)> {
    curve_at(v, "")
}

fn curve_body(c: &PLCurve) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("surface".into(), Value::Object(surface_json_body(&c.surface)));
    m.insert("offset".into(), json!([c.offset.0, c.offset.1]));
    m.insert("vertices".into(), points_json(&c.vertices));
    m
}

pub fn curve_to_json(c: &PLCurve, time: Option<&Rat>) -> Value {
    let mut body = curve_body(c);
    if let Some(t) = time {
        body.insert("time".into(), rational_to_json(t));
    }
    with_kind("curve", body)
}

/// Raw track contents before the frames are checked against each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackDoc {
    pub surface: Surface,
    pub offset: (i64, i64),
    pub frames: Vec<Vec<Pt>>,
}

impl TrackDoc {
    pub fn curves(&self) -> Vec<PLCurve> {
        self.frames
            .iter()
            .map(|f| PLCurve::new(self.surface.clone(), f.clone(), self.offset))
            .collect()
    }

    pub fn from_track(t: &HomotopyTrack) -> Self {
        TrackDoc {
            surface: t.surface().clone(),
            offset: t.offset(),
            frames: t.frames().iter().map(|c| c.vertices.clone()).collect(),
        }
    }
}

fn track_at(v: &Value, path: &str) -> Res<TrackDoc> {
    let o = object(v, path)?;
    check_kind(o, "track", path)?;
    let key = sub(path, "frames");
    let frames = array(field(o, "frames", path)?, &key)?
        .iter()
        .enumerate()
        .map(|(i, f)| points(f, &sub(&key, i)))
        .collect::<Res<Vec<_>>>()?;
    Ok(TrackDoc {
        surface: surface_field(o, path)?,
        offset: offset_of(o, path)?,
        frames,
    })
}

pub fn track_from_json(v: &Value) -> Res<TrackDoc> {
    track_at(v, "")
}

pub fn track_to_json(t: &TrackDoc) -> Value {
    let mut m = Map::new();
    m.insert("surface".into(), Value::Object(surface_json_body(&t.surface)));
    m.insert("offset".into(), json!([t.offset.0, t.offset.1]));
    m.insert(
        "frames".into(),
        Value::Array(t.frames.iter().map(|f| points_json(f)).collect()),
    );
    with_kind("track", m)
}

fn path_at(v: &Value, path: &str) -> Res<PLPath> {
    let o = object(v, path)?;
    check_kind(o, "path", path)?;
    let pts = points(field(o, "points", path)?, &sub(path, "points"))?;
    Ok(PLPath::new(surface_field(o, path)?, pts))
}

pub fn path_from_json(v: &Value) -> Res<PLPath> {
    path_at(v, "")
}

pub fn path_to_json(g: &PLPath) -> Value {
    let mut m = Map::new();
    m.insert("surface".into(), Value::Object(surface_json_body(&g.surface)));
    m.insert("points".into(), points_json(&g.points));
    with_kind("path", m)
}

/// Raw rational-function contents. Coefficients are in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDoc {
    pub numerator: Vec<Complex64>,
    pub denominator: Vec<Complex64>,
    pub poles: Vec<Pole>,
}

impl FunctionDoc {
    pub fn build(&self) -> awin_core::Result<RationalFn> {
        RationalFn::new(
            self.numerator.clone(),
            self.denominator.clone(),
            self.poles.clone(),
        )
    }
}

fn coefficients(v: &Value, path: &str) -> Res<Vec<Complex64>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| complex(c, &sub(path, i)))
        .collect()
}

fn function_at(v: &Value, path: &str) -> Res<FunctionDoc> {
    let o = object(v, path)?;
    check_kind(o, "function", path)?;
    let key = sub(path, "poles");
    let poles = array(field(o, "poles", path)?, &key)?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let here = sub(&key, i);
            let po = object(p, &here)?;
            let at = point(field(po, "at", &here)?, &sub(&here, "at"))?;
            let order = match po.get("order") {
                Some(n) => u32::try_from(integer(n, &sub(&here, "order"))?)
                    .map_err(|_| FormatError::new(&sub(&here, "order"), "order out of range"))?,
                None => 1,
            };
            Ok(Pole { at, order })
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(FunctionDoc {
        numerator: coefficients(field(o, "numerator", path)?, &sub(path, "numerator"))?,
        denominator: coefficients(field(o, "denominator", path)?, &sub(path, "denominator"))?,
        poles,
    })
}

pub fn function_from_json(v: &Value) -> Res<FunctionDoc> {
    function_at(v, "")
}

pub fn function_to_json(f: &FunctionDoc) -> Value {
    let coeffs = |cs: &[Complex64]| Value::Array(cs.iter().map(|&z| complex_to_json(z)).collect());
    let poles = f
        .poles
        .iter()
        .map(|p| json!({"at": point_json(&p.at), "order": p.order}))
        .collect();
    let mut m = Map::new();
    m.insert("numerator".into(), coeffs(&f.numerator));
    m.insert("denominator".into(), coeffs(&f.denominator));
    m.insert("poles".into(), Value::Array(poles));
    with_kind("function", m)
}

const META_FLAGS: [&str; 8] = [
    "m_closed",
    "component_null_homotopic",
    "n_is_sphere",
    "m_is_rational_homology_sphere",
    "pi1_trivial_image",
    "pi1_infinite_no_finite_index_z",
    "negatively_curved_closed",
    "class_finite_order",
];

fn meta_flag<'a>(m: &'a mut ManifoldMeta, key: &str) -> &'a mut bool {
    match key {
        "m_closed" => &mut m.m_closed,
        "component_null_homotopic" => &mut m.component_null_homotopic,
        "n_is_sphere" => &mut m.n_is_sphere,
        "m_is_rational_homology_sphere" => &mut m.m_is_rational_homology_sphere,
        "pi1_trivial_image" => &mut m.pi1_trivial_image,
        "pi1_infinite_no_finite_index_z" => &mut m.pi1_infinite_no_finite_index_z,
        "negatively_curved_closed" => &mut m.negatively_curved_closed,
        "class_finite_order" => &mut m.class_finite_order,
        _ => unreachable!("unknown flag {key}"),
    }
}

fn betti(v: &Value, path: &str) -> Res<Vec<u64>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            b.as_u64()
                .ok_or_else(|| FormatError::new(&sub(path, i), "expected a nonnegative integer"))
        })
        .collect()
}

fn meta_at(v: &Value, path: &str) -> Res<ManifoldMeta> {
    let o = object(v, path)?;
    check_kind(o, "meta", path)?;
    let mut m = ManifoldMeta {
        betti_n: betti(field(o, "betti_n", path)?, &sub(path, "betti_n"))?,
        betti_m: betti(field(o, "betti_m", path)?, &sub(path, "betti_m"))?,
        ..ManifoldMeta::default()
    };
    for key in META_FLAGS {
        if let Some(b) = o.get(key) {
            *meta_flag(&mut m, key) = b
                .as_bool()
                .ok_or_else(|| FormatError::new(&sub(path, key), "expected a boolean"))?;
        }
    }
    Ok(m)
}

/// Manifold metadata for the condition checker. Missing flags are false.
pub fn meta_from_json(v: &Value) -> Res<ManifoldMeta> {
    meta_at(v, "")
}

pub fn meta_to_json(meta: &ManifoldMeta) -> Value {
    let mut m = Map::new();
    m.insert("betti_n".into(), json!(meta.betti_n));
    m.insert("betti_m".into(), json!(meta.betti_m));
    let mut copy = meta.clone();
    for key in META_FLAGS {
        m.insert(key.into(), Value::from(*meta_flag(&mut copy, key)));
    }
    with_kind("meta", m)
}

/// Picks the document playing `role` out of `v`: either `v` itself or, for a
/// scenario, its entry named `role`. Returns the value and its path prefix.
pub fn select<'a>(v: &'a Value, role: &str) -> Res<(&'a Value, String)> {
    let o = object(v, "")?;
    if o.get("kind").and_then(Value::as_str) == Some("scenario") {
        let inner = o
            .get(role)
            .ok_or_else(|| FormatError::new("", format!("scenario has no {role:?} entry")))?;
        Ok((inner, role.to_string()))
    } else {
        Ok((v, String::new()))
    }
}

pub fn surface_in(v: &Value, role: &str) -> Res<Surface> {
    let (d, p) = select(v, role)?;
    surface_at(d, &p)
}

pub fn curve_in(v: &Value, role: &str) -> Res<(PLCurve, Option<Rat>)> {
    let (d, p) = select(v, role)?;
    curve_at(d, &p)
}

pub fn track_in(v: &Value, role: &str) -> Res<TrackDoc> {
    let (d, p) = select(v, role)?;
    track_at(d, &p)
}

pub fn path_in(v: &Value, role: &str) -> Res<PLPath> {
    let (d, p) = select(v, role)?;
    path_at(d, &p)
}

pub fn function_in(v: &Value, role: &str) -> Res<FunctionDoc> {
    let (d, p) = select(v, role)?;
    function_at(d, &p)
}

pub fn meta_in(v: &Value, role: &str) -> Res<ManifoldMeta> {
    let (d, p) = select(v, role)?;
    meta_at(d, &p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("7/16"), Some(r(7, 16)));
        assert_eq!(parse_rational("-3/6"), Some(r(-1, 2)));
        assert_eq!(parse_rational("-1.25"), Some(r(-5, 4)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("3e-2"), Some(r(3, 100)));
        assert_eq!(parse_rational("2.5E1"), Some(r(25, 1)));
        assert_eq!(parse_rational("12"), Some(r(12, 1)));
        for bad in ["", "1/0", "a", "1.2.3", "1/", "-", "0x10"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn canonical_rational_encoding() {
        assert_eq!(rational_to_json(&r(4, 2)), json!(2));
        assert_eq!(rational_to_json(&r(-2, 6)), json!("-1/3"));
        let big = Rat::from_integer(BigInt::from(10).pow(30u32));
        assert_eq!(rational_to_json(&big), json!("1000000000000000000000000000000"));
        assert_eq!(parse_rational("1000000000000000000000000000000"), Some(big));
    }

    #[test]
    fn floats_are_rejected_for_coordinates() {
        let v = json!({"kind": "curve", "vertices": [[0, 0], [1.5, 0], [1, 1]]});
        let e = curve_from_json(&v).unwrap_err();
        assert_eq!(e.path, "vertices.1.0");
    }

    #[test]
    fn args() {
        assert_eq!(parse_point_arg("1/2, 0.25"), Some(Pt::new(r(1, 2), r(1, 4))));
        assert_eq!(parse_point_arg("1"), None);
        assert_eq!(parse_class_arg("2,-4"), Some((2, -4)));
        assert_eq!(parse_class_arg("2,x"), None);
    }

    #[test]
    fn scenario_roles() {
        let v = json!({
            "kind": "scenario",
            "c1": {"vertices": [[0, 0], [1, 0], [0, 1]]},
            "surface": {"type": "flat_torus"},
        });
        let (c, t) = curve_in(&v, "c1").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(t, None);
        assert_eq!(surface_in(&v, "surface").unwrap(), Surface::FlatTorus);
        assert!(curve_in(&v, "c2").is_err());
        let wrong = json!({"kind": "scenario", "c1": {"kind": "path", "points": []}});
        assert_eq!(curve_in(&wrong, "c1").unwrap_err().path, "c1");
    }

    #[test]
    fn kind_is_required_at_top_level() {
        let v = json!({"vertices": [[0, 0], [1, 0], [0, 1]]});
        assert!(curve_from_json(&v).is_err());
        let v = json!({"kind": "track", "frames": []});
        assert!(curve_from_json(&v).is_err());
    }

    #[test]
    fn meta_defaults() {
        let v = json!({"kind": "meta", "betti_n": [1, 1], "betti_m": [1, 0, 1], "m_closed": true});
        let m = meta_from_json(&v).unwrap();
        assert!(m.m_closed && !m.n_is_sphere);
        assert_eq!(meta_from_json(&meta_to_json(&m)).unwrap(), m);
    }
}
