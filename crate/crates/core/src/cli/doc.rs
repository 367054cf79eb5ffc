//! JSON instance documents: parsing with validation, and canonical
//! serialization.

use serde_json::{json, Map, Value};

use crate::checkers::Witness;
use crate::error::Error;
use crate::fintop::Topology;
use crate::harness::Instance;
use crate::setfam::{FamilyCollection, SetFamily, Subset};

/// Why a document was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    /// Not JSON, or not shaped like any document kind.
    #[error("{0}")]
    Parse(String),
    /// Well formed, but violates an invariant of the value it describes.
    #[error("{0}")]
    Validation(String),
}

impl DocError {
    pub fn kind(&self) -> &'static str {
        match self {
            DocError::Parse(_) => "ParseError",
            DocError::Validation(_) => "ValidationError",
        }
    }
}

impl From<Error> for DocError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(m) => DocError::Validation(m),
            e => DocError::Validation(e.to_string()),
        }
    }
}

type DocResult<T> = std::result::Result<T, DocError>;

fn parse_err(msg: impl Into<String>) -> DocError {
    DocError::Parse(msg.into())
}

fn invalid(msg: impl Into<String>) -> DocError {
    DocError::Validation(msg.into())
}

/// Named values bundled into one document. Every field is optional; the
/// command that consumes the bundle decides which ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bundle {
    pub space: Option<Topology>,
    pub a_size: Option<usize>,
    pub i_size: Option<usize>,
    pub k: Option<usize>,
    pub point: Option<usize>,
    pub a: Option<SetFamily>,
    pub b: Option<SetFamily>,
    pub b_prime: Option<SetFamily>,
    pub d: Option<SetFamily>,
    pub e: Option<SetFamily>,
    pub f: Option<SetFamily>,
    pub g: Option<SetFamily>,
    pub m: Option<FamilyCollection>,
    pub cal_e: Option<FamilyCollection>,
    pub cal_g: Option<FamilyCollection>,
    pub seq: Option<Vec<usize>>,
    pub setseq: Option<Vec<Subset>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceDocument {
    Topology(Topology),
    Family(SetFamily),
    Collection(FamilyCollection),
    Bundle(Box<Bundle>),
}

pub fn parse_instance(text: &str) -> DocResult<InstanceDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("malformed JSON: {e}")))?;
    parse_value(&value)
}

pub fn parse_value(value: &Value) -> DocResult<InstanceDocument> {
    let obj = object(value, "document")?;
    match kind(obj)? {
        Some("topology") => Ok(InstanceDocument::Topology(topology(obj)?)),
        Some("family") => Ok(InstanceDocument::Family(family(obj)?)),
        Some("collection") => Ok(InstanceDocument::Collection(collection(obj)?)),
        Some("instance-bundle") => Ok(InstanceDocument::Bundle(Box::new(bundle(obj)?))),
        Some(other) => Err(parse_err(format!("unknown kind {other:?}"))),
        None => Err(parse_err("missing field \"kind\"")),
    }
}

fn object<'a>(value: &'a Value, what: &str) -> DocResult<&'a Map<String, Value>> {
    value.as_object().ok_or_else(|| parse_err(format!("{what} must be a JSON object")))
}

fn kind(obj: &Map<String, Value>) -> DocResult<Option<&str>> {
    match obj.get("kind") {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(parse_err("field \"kind\" must be a string")),
    }
}

/// Rejects keys outside `allowed` and a `kind` other than `expected`.
fn shape(obj: &Map<String, Value>, expected: &str, allowed: &[&str]) -> DocResult<()> {
    if let Some(k) = kind(obj)? {
        if k != expected {
            return Err(parse_err(format!("expected kind {expected:?}, found {k:?}")));
        }
    }
    match obj.keys().find(|k| *k != "kind" && !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_err(format!("unknown field {k:?} in {expected}"))),
        None => Ok(()),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> DocResult<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("{what} is missing field {key:?}")))
}

fn uint(value: &Value, what: &str) -> DocResult<usize> {
    value
        .as_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn array<'a>(value: &'a Value, what: &str) -> DocResult<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn ints(value: &Value, what: &str) -> DocResult<Vec<usize>> {
    array(value, what)?.iter().map(|v| uint(v, &format!("element of {what}"))).collect()
}

fn subset(value: &Value, ground: usize) -> DocResult<Subset> {
    let members = ints(value, "set")?;
    for w in members.windows(2) {
        if w[0] == w[1] {
            return Err(invalid(format!("set {members:?} repeats element {}", w[0])));
        }
        if w[0] > w[1] {
            return Err(invalid(format!("set {members:?} is not ascending")));
        }
    }
    if let Some(&x) = members.iter().find(|&&x| x >= ground) {
        return Err(invalid(format!("set {members:?} has element {x} outside ground of size {ground}")));
    }
    Ok(Subset::new(ground, &members)?)
}

fn sets(value: &Value, ground: usize, what: &str) -> DocResult<SetFamily> {
    let mut out = Vec::new();
    for v in array(value, what)? {
        let s = subset(v, ground)?;
        if out.contains(&s) {
            return Err(invalid(format!("{what} lists {:?} twice", s.to_vec())));
        }
        out.push(s);
    }
    Ok(SetFamily::from_sets(ground, out)?)
}

fn ground(obj: &Map<String, Value>, key: &str, what: &str) -> DocResult<usize> {
    let n = uint(field(obj, key, what)?, key)?;
    crate::setfam::check_ground(n)?;
    Ok(n)
}

fn topology(obj: &Map<String, Value>) -> DocResult<Topology> {
    shape(obj, "topology", &["points", "opens"])?;
    let points = ground(obj, "points", "topology")?;
    let opens = sets(field(obj, "opens", "topology")?, points, "opens")?;
    Ok(Topology::new(points, opens)?)
}

fn family(obj: &Map<String, Value>) -> DocResult<SetFamily> {
    shape(obj, "family", &["ground", "sets"])?;
    let n = ground(obj, "ground", "family")?;
    sets(field(obj, "sets", "family")?, n, "family")
}

fn collection(obj: &Map<String, Value>) -> DocResult<FamilyCollection> {
    shape(obj, "collection", &["ground", "families"])?;
    let n = ground(obj, "ground", "collection")?;
    let mut out: Vec<SetFamily> = Vec::new();
    for v in array(field(obj, "families", "collection")?, "families")? {
        let fam = sets(v, n, "family")?;
        if out.contains(&fam) {
            return Err(invalid("collection lists a family twice"));
        }
        out.push(fam);
    }
    Ok(FamilyCollection::new(n, out)?)
}

const BUNDLE_KEYS: &[&str] = &[
    "space", "a_size", "i_size", "k", "point", "a", "b", "b_prime", "d", "e", "f", "g", "m", "cal_e", "cal_g",
    "seq", "setseq",
];

fn bundle(obj: &Map<String, Value>) -> DocResult<Bundle> {
    shape(obj, "instance-bundle", BUNDLE_KEYS)?;
    let fam = |key: &str| -> DocResult<Option<SetFamily>> {
        obj.get(key).map(|v| family(object(v, key)?)).transpose()
    };
    let coll = |key: &str| -> DocResult<Option<FamilyCollection>> {
        obj.get(key).map(|v| collection(object(v, key)?)).transpose()
    };
    let num = |key: &str| obj.get(key).map(|v| uint(v, key)).transpose();
    let space = obj.get("space").map(|v| topology(object(v, "space")?)).transpose()?;
    let setseq = match obj.get("setseq") {
        None => None,
        Some(v) => {
            let n = space
                .as_ref()
                .map(Topology::point_count)
                .ok_or_else(|| parse_err("\"setseq\" needs \"space\""))?;
            Some(array(v, "setseq")?.iter().map(|s| subset(s, n)).collect::<DocResult<Vec<_>>>()?)
        }
    };
    Ok(Bundle {
        a_size: num("a_size")?,
        i_size: num("i_size")?,
        k: num("k")?,
        point: num("point")?,
        a: fam("a")?,
        b: fam("b")?,
        b_prime: fam("b_prime")?,
        d: fam("d")?,
        e: fam("e")?,
        f: fam("f")?,
        g: fam("g")?,
        m: coll("m")?,
        cal_e: coll("cal_e")?,
        cal_g: coll("cal_g")?,
        seq: obj.get("seq").map(|v| ints(v, "seq")).transpose()?,
        setseq,
        space,
    })
}

pub fn subset_json(s: &Subset) -> Value {
    json!(s.to_vec())
}

fn sets_json<'a>(sets: impl IntoIterator<Item = &'a Subset>) -> Value {
    Value::Array(sets.into_iter().map(subset_json).collect())
}

pub fn topology_json(x: &Topology) -> Value {
    json!({"kind": "topology", "points": x.point_count(), "opens": sets_json(x.opens())})
}

pub fn family_json(f: &SetFamily) -> Value {
    json!({"kind": "family", "ground": f.ground_size(), "sets": sets_json(f)})
}

pub fn collection_json(c: &FamilyCollection) -> Value {
    let fams: Vec<Value> = c.iter().map(sets_json).collect();
    json!({"kind": "collection", "ground": c.ground_size(), "families": fams})
}

pub fn bundle_json(b: &Bundle) -> Value {
    let mut out = Map::new();
    out.insert("kind".into(), json!("instance-bundle"));
    let mut put = |key: &str, v: Option<Value>| {
        if let Some(v) = v {
            out.insert(key.into(), v);
        }
    };
    put("space", b.space.as_ref().map(topology_json));
    put("a_size", b.a_size.map(|v| json!(v)));
    put("i_size", b.i_size.map(|v| json!(v)));
    put("k", b.k.map(|v| json!(v)));
    put("point", b.point.map(|v| json!(v)));
    for (key, fam) in [("a", &b.a), ("b", &b.b), ("b_prime", &b.b_prime), ("d", &b.d)] {
        put(key, fam.as_ref().map(family_json));
    }
    for (key, fam) in [("e", &b.e), ("f", &b.f), ("g", &b.g)] {
        put(key, fam.as_ref().map(family_json));
    }
    for (key, c) in [("m", &b.m), ("cal_e", &b.cal_e), ("cal_g", &b.cal_g)] {
        put(key, c.as_ref().map(collection_json));
    }
    put("seq", b.seq.as_ref().map(|s| json!(s)));
    put("setseq", b.setseq.as_ref().map(sets_json));
    Value::Object(out)
}

impl InstanceDocument {
    pub fn to_json(&self) -> Value {
        match self {
            InstanceDocument::Topology(x) => topology_json(x),
            InstanceDocument::Family(f) => family_json(f),
            InstanceDocument::Collection(c) => collection_json(c),
            InstanceDocument::Bundle(b) => bundle_json(b),
        }
    }
}

/// A harness instance as a bundle; `collection_key` names the slot its
/// collection goes into.
pub fn bundle_from_instance(inst: &Instance, collection_key: &str) -> Bundle {
    let mut b = Bundle {
        space: inst.space.clone(),
        a_size: inst.a_size,
        i_size: inst.i_size,
        point: inst.point,
        a: inst.a.clone(),
        b: inst.b.clone(),
        b_prime: inst.b_prime.clone(),
        f: inst.f.clone(),
        g: inst.g.clone(),
        seq: inst.seq.clone(),
        setseq: inst.setseq.clone(),
        ..Bundle::default()
    };
    let slot = match collection_key {
        "m" => &mut b.m,
        "cal_e" => &mut b.cal_e,
        _ => &mut b.cal_g,
    };
    *slot = inst.collection.clone();
    b
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::OpenSequence(s) => json!({"kind": "open-sequence", "sets": sets_json(s)}),
        Witness::ClosedSequence(s) => json!({"kind": "closed-sequence", "sets": sets_json(s)}),
        Witness::PointSequence(p) => json!({"kind": "point-sequence", "points": p}),
        Witness::SetSequence(s) => json!({"kind": "set-sequence", "sets": sets_json(s)}),
        Witness::Accumulation(entries) => {
            let entries: Vec<Value> =
                entries.iter().map(|(seq, x)| json!({"sequence": seq, "point": x})).collect();
            json!({"kind": "accumulation", "entries": entries})
        }
        Witness::LimitPoints(entries) => {
            let entries: Vec<Value> =
                entries.iter().map(|(seq, x)| json!({"sequence": sets_json(seq), "point": x})).collect();
            json!({"kind": "limit-points", "entries": entries})
        }
    }
}

fn entry(e: &Value) -> DocResult<(&Value, usize)> {
    let o = object(e, "entry")?;
    Ok((field(o, "sequence", "entry")?, uint(field(o, "point", "entry")?, "point")?))
}

/// Inverse of [`witness_json`]. Sets are read over `points` points; open
/// and closed sequences carry no ground of their own.
pub fn parse_witness(value: &Value, points: usize) -> DocResult<Witness> {
    let obj = object(value, "witness")?;
    let seq_of_sets = |v: &Value| -> DocResult<Vec<Subset>> {
        array(v, "sets")?.iter().map(|s| subset(s, points)).collect()
    };
    let entries = || array(field(obj, "entries", "witness")?, "entries");
    Ok(match kind(obj)? {
        Some("open-sequence") => Witness::OpenSequence(seq_of_sets(field(obj, "sets", "witness")?)?),
        Some("closed-sequence") => Witness::ClosedSequence(seq_of_sets(field(obj, "sets", "witness")?)?),
        Some("point-sequence") => Witness::PointSequence(ints(field(obj, "points", "witness")?, "points")?),
        Some("set-sequence") => Witness::SetSequence(seq_of_sets(field(obj, "sets", "witness")?)?),
        Some("accumulation") => Witness::Accumulation(
            entries()?
                .iter()
                .map(|e| {
                    let (s, x) = entry(e)?;
                    Ok((ints(s, "sequence")?, x))
                })
                .collect::<DocResult<_>>()?,
        ),
        Some("limit-points") => Witness::LimitPoints(
            entries()?
                .iter()
                .map(|e| {
                    let (s, x) = entry(e)?;
                    Ok((seq_of_sets(s)?, x))
                })
                .collect::<DocResult<_>>()?,
        ),
        _ => return Err(parse_err("unknown witness kind")),
    })
}
