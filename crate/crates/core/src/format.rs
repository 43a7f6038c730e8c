//! The text format: JSON documents with a `kind` tag, integer-coded
//! elements, operation tables as nested arrays in row-major argument order,
//! and transitions keyed as `"i<j"` strings.
//!
//! Parsing is strict: unknown keys are rejected, shapes must match exactly,
//! and every structure is run through its module's validator before a
//! [`Document`] is returned. Serialization is canonical (fixed key order,
//! one space after commas and colons, newline-terminated), so equal
//! documents produce identical bytes.

use std::collections::BTreeMap;
use std::fmt;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{FiniteAlgebra, Homomorphism, Signature};
use crate::band::{BandMorphism, LeftNormalBand};
use crate::plonka::{PlonkaAlgebra, PlonkaMorphism};
use crate::semilattice::{SslMorphism, SupSemilattice};
use crate::system::{InductiveSystem, SystemMorphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentError {
    /// Malformed text; positions are 1-based as reported by the JSON parser.
    Parse { line: usize, column: usize, message: String },
    /// Well-formed text describing an invalid structure; the message names
    /// the violated law and its witness.
    Validation { message: String },
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            DocumentError::Validation { message } => write!(f, "validation error: {message}"),
        }
    }
}

impl std::error::Error for DocumentError {}

impl DocumentError {
    /// The bare message, without the parse/validation prefix.
    pub fn message(&self) -> &str {
        match self {
            DocumentError::Parse { message, .. } => message,
            DocumentError::Validation { message } => message,
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, DocumentError::Parse { .. })
    }
}

fn invalid(message: impl fmt::Display) -> DocumentError {
    DocumentError::Validation { message: message.to_string() }
}

/// Carriers in documents stay desk-scale; anything larger is rejected before
/// any table arithmetic can overflow or allocate absurdly.
pub const MAX_DOCUMENT_CARRIER: usize = 4096;

fn check_carrier(carrier: usize, what: &str) -> Result<(), DocumentError> {
    if carrier > MAX_DOCUMENT_CARRIER {
        return Err(invalid(format!(
            "{what}: carrier {carrier} exceeds the document limit {MAX_DOCUMENT_CARRIER}"
        )));
    }
    Ok(())
}

/// A validated structure plus optional element names (pure metadata).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDocument {
    pub algebra: FiniteAlgebra,
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemilatticeDocument {
    pub semilattice: SupSemilattice,
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandDocument {
    pub band: LeftNormalBand,
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlonkaDocument {
    pub plonka: PlonkaAlgebra,
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemDocument {
    pub system: InductiveSystem,
    /// One optional name list per fiber.
    pub names: Vec<Option<Vec<String>>>,
}

/// The validated content of a morphism document; endpoints are embedded as
/// full documents so all references resolve within the document itself.
#[derive(Debug, Clone, PartialEq)]
pub enum MorphismPayload {
    Semilattice(SslMorphism),
    Algebra(Homomorphism),
    Band(BandMorphism),
    Plonka(PlonkaMorphism),
    System(SystemMorphism),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorphismDocument {
    pub source: Box<Document>,
    pub target: Box<Document>,
    pub payload: MorphismPayload,
}

/// A tagged union of every serializable structure.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Signature(Signature),
    Algebra(AlgebraDocument),
    Semilattice(SemilatticeDocument),
    Band(BandDocument),
    Plonka(PlonkaDocument),
    System(SystemDocument),
    Morphism(MorphismDocument),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Signature(_) => "signature",
            Document::Algebra(_) => "algebra",
            Document::Semilattice(_) => "semilattice",
            Document::Band(_) => "band",
            Document::Plonka(_) => "plonka",
            Document::System(_) => "system",
            Document::Morphism(_) => "morphism",
        }
    }
}

// ---------------------------------------------------------------------------
// wire structs
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureBody {
    symbols: Vec<(String, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SignatureDto {
    kind: KindSignature,
    symbols: Vec<(String, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct AlgebraDto {
    kind: KindAlgebra,
    signature: SignatureBody,
    carrier: usize,
    tables: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SemilatticeDto {
    kind: KindSemilattice,
    carrier: usize,
    join: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct BandDto {
    kind: KindBand,
    carrier: usize,
    d: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct PlonkaDto {
    kind: KindPlonka,
    signature: SignatureBody,
    carrier: usize,
    tables: Vec<Value>,
    d: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SslBody {
    carrier: usize,
    join: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberBody {
    carrier: usize,
    tables: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SystemDto {
    kind: KindSystem,
    signature: SignatureBody,
    index: SslBody,
    algebras: Vec<FiberBody>,
    transitions: BTreeMap<String, Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDto {
    kind: KindMorphism,
    source: Value,
    target: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<Vec<usize>>>,
}

/// Serialization-side counterpart of [`MorphismDto`] with typed endpoints,
/// so field order survives (JSON objects built as `Value` would be
/// re-sorted alphabetically).
#[derive(Serialize)]
pub(crate) struct MorphismOut {
    kind: KindMorphism,
    source: Box<DocumentOut>,
    target: Box<DocumentOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<Vec<usize>>>,
}

/// Every document shape, for serialization only; each variant carries its
/// own `kind` tag.
#[derive(Serialize)]
#[serde(untagged)]
pub(crate) enum DocumentOut {
    Signature(SignatureDto),
    Algebra(AlgebraDto),
    Semilattice(SemilatticeDto),
    Band(BandDto),
    Plonka(PlonkaDto),
    System(SystemDto),
    Morphism(MorphismOut),
}

macro_rules! kind_tag {
    ($name:ident, $tag:literal) => {
        #[derive(Serialize, Deserialize)]
        enum $name {
            #[serde(rename = $tag)]
            Tag,
        }
    };
}

kind_tag!(KindSignature, "signature");
kind_tag!(KindAlgebra, "algebra");
kind_tag!(KindSemilattice, "semilattice");
kind_tag!(KindBand, "band");
kind_tag!(KindPlonka, "plonka");
kind_tag!(KindSystem, "system");
kind_tag!(KindMorphism, "morphism");

// ---------------------------------------------------------------------------
// nested tables
// ---------------------------------------------------------------------------

/// Render a flat row-major table as nested arrays of depth `arity`.
fn nest_table(flat: &[usize], n: usize, arity: usize) -> Value {
    fn go(flat: &[usize], n: usize, arity: usize) -> Value {
        if arity == 0 {
            return Value::from(flat[0]);
        }
        let chunk = flat.len() / n.max(1);
        Value::Array(
            (0..n).map(|i| go(&flat[i * chunk..(i + 1) * chunk], n, arity - 1)).collect(),
        )
    }
    if n == 0 && arity > 0 {
        return Value::Array(Vec::new());
    }
    go(flat, n, arity)
}

/// Strictly flatten nested arrays of depth `arity` over a carrier of size
/// `n`: every level must have exactly `n` entries and leaves must be
/// nonnegative integers.
fn flatten_table(
    value: &Value,
    n: usize,
    arity: usize,
    context: &str,
) -> Result<Vec<usize>, DocumentError> {
    let mut flat = Vec::new();
    flatten_into(value, n, arity, context, &mut flat)?;
    Ok(flat)
}

fn flatten_into(
    value: &Value,
    n: usize,
    arity: usize,
    context: &str,
    out: &mut Vec<usize>,
) -> Result<(), DocumentError> {
    if arity == 0 {
        let entry = value
            .as_u64()
            .ok_or_else(|| invalid(format!("{context}: expected a nonnegative integer")))?;
        out.push(entry as usize);
        return Ok(());
    }
    let arr = value
        .as_array()
        .ok_or_else(|| invalid(format!("{context}: expected an array of depth {arity}")))?;
    if arr.len() != n {
        return Err(invalid(format!(
            "{context}: expected {n} entries at depth {arity}, found {}",
            arr.len()
        )));
    }
    for item in arr {
        flatten_into(item, n, arity - 1, context, out)?;
    }
    Ok(())
}

fn check_names(names: &Option<Vec<String>>, carrier: usize, what: &str) -> Result<(), DocumentError> {
    if let Some(names) = names {
        if names.len() != carrier {
            return Err(invalid(format!(
                "{what}: {} names for a carrier of {carrier}",
                names.len()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

fn parse_error(e: &serde_json::Error) -> DocumentError {
    DocumentError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Strict parse of a document: syntax errors carry positions, semantic
/// errors name the violated law and witness. The returned structures are
/// fully validated.
pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    document_from_value(&value, text)
}

fn kind_of(value: &Value) -> Result<&str, DocumentError> {
    value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("document needs a string `kind` field"))
}

/// When `text` is available the DTO is re-parsed from it so that field
/// errors keep line/column positions; embedded documents fall back to
/// position-free messages.
fn document_from_value(value: &Value, text: &str) -> Result<Document, DocumentError> {
    macro_rules! dto {
        ($t:ty) => {
            if text.is_empty() {
                serde_json::from_value::<$t>(value.clone())
                    .map_err(|e| invalid(e.to_string()))?
            } else {
                serde_json::from_str::<$t>(text).map_err(|e| parse_error(&e))?
            }
        };
    }
    match kind_of(value)? {
        "signature" => {
            let dto = dto!(SignatureDto);
            let signature = Signature::new(dto.symbols).map_err(invalid)?;
            Ok(Document::Signature(signature))
        }
        "algebra" => {
            let dto = dto!(AlgebraDto);
            check_carrier(dto.carrier, "algebra")?;
            let signature = Signature::new(dto.signature.symbols).map_err(invalid)?;
            let tables = flatten_tables(&signature, dto.carrier, &dto.tables)?;
            let algebra = FiniteAlgebra::new(signature, dto.carrier, tables).map_err(invalid)?;
            check_names(&dto.names, algebra.carrier(), "algebra names")?;
            Ok(Document::Algebra(AlgebraDocument { algebra, names: dto.names }))
        }
        "semilattice" => {
            let dto = dto!(SemilatticeDto);
            check_carrier(dto.carrier, "semilattice")?;
            let join = flatten_table(&dto.join, dto.carrier, 2, "join table")?;
            let semilattice = SupSemilattice::new(dto.carrier, join).map_err(invalid)?;
            check_names(&dto.names, semilattice.size(), "semilattice names")?;
            Ok(Document::Semilattice(SemilatticeDocument { semilattice, names: dto.names }))
        }
        "band" => {
            let dto = dto!(BandDto);
            check_carrier(dto.carrier, "band")?;
            let d = flatten_table(&dto.d, dto.carrier, 2, "operation table")?;
            let band = LeftNormalBand::new(dto.carrier, d).map_err(invalid)?;
            check_names(&dto.names, band.size(), "band names")?;
            Ok(Document::Band(BandDocument { band, names: dto.names }))
        }
        "plonka" => {
            let dto = dto!(PlonkaDto);
            check_carrier(dto.carrier, "plonka")?;
            let signature = Signature::new(dto.signature.symbols).map_err(invalid)?;
            let tables = flatten_tables(&signature, dto.carrier, &dto.tables)?;
            let algebra = FiniteAlgebra::new(signature, dto.carrier, tables).map_err(invalid)?;
            let d = flatten_table(&dto.d, dto.carrier, 2, "operator table")?;
            let plonka = PlonkaAlgebra::new(algebra, d).map_err(invalid)?;
            check_names(&dto.names, plonka.carrier(), "element names")?;
            Ok(Document::Plonka(PlonkaDocument { plonka, names: dto.names }))
        }
        "system" => {
            let dto = dto!(SystemDto);
            check_carrier(dto.index.carrier, "system index")?;
            for (i, fiber) in dto.algebras.iter().enumerate() {
                check_carrier(fiber.carrier, &format!("fiber {i}"))?;
            }
            let signature = Signature::new(dto.signature.symbols).map_err(invalid)?;
            let join = flatten_table(&dto.index.join, dto.index.carrier, 2, "index join table")?;
            let index = SupSemilattice::new(dto.index.carrier, join).map_err(invalid)?;
            let mut algebras = Vec::new();
            let mut names = Vec::new();
            for (i, fiber) in dto.algebras.iter().enumerate() {
                let tables = flatten_tables(&signature, fiber.carrier, &fiber.tables)?;
                let algebra = FiniteAlgebra::new(signature.clone(), fiber.carrier, tables)
                    .map_err(|e| invalid(format!("fiber {i}: {e}")))?;
                check_names(&fiber.names, algebra.carrier(), &format!("fiber {i} names"))?;
                algebras.push(algebra);
                names.push(fiber.names.clone());
            }
            let mut transitions = BTreeMap::new();
            for (key, map) in &dto.transitions {
                let (i, j) = parse_transition_key(key)?;
                transitions.insert((i, j), map.clone());
            }
            let system = InductiveSystem::new(signature, index, algebras, transitions)
                .map_err(invalid)?;
            Ok(Document::System(SystemDocument { system, names }))
        }
        "morphism" => {
            let dto = dto!(MorphismDto);
            let source = document_from_value(&dto.source, "")?;
            let target = document_from_value(&dto.target, "")?;
            let payload = morphism_payload(&source, &target, &dto)?;
            Ok(Document::Morphism(MorphismDocument {
                source: Box::new(source),
                target: Box::new(target),
                payload,
            }))
        }
        other => Err(invalid(format!("unknown document kind `{other}`"))),
    }
}

fn flatten_tables(
    signature: &Signature,
    carrier: usize,
    tables: &[Value],
) -> Result<Vec<Vec<usize>>, DocumentError> {
    if tables.len() != signature.len() {
        return Err(invalid(format!(
            "expected {} operation tables, found {}",
            signature.len(),
            tables.len()
        )));
    }
    signature
        .symbols()
        .iter()
        .zip(tables)
        .map(|((name, arity), v)| {
            flatten_table(v, carrier, *arity, &format!("table for `{name}`"))
        })
        .collect()
}

fn parse_transition_key(key: &str) -> Result<(usize, usize), DocumentError> {
    let (i, j) = key
        .split_once('<')
        .ok_or_else(|| invalid(format!("transition key `{key}` is not of the form `i<j`")))?;
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| invalid(format!("transition key `{key}` has a non-integer index")))
    };
    Ok((parse(i)?, parse(j)?))
}

fn morphism_payload(
    source: &Document,
    target: &Document,
    dto: &MorphismDto,
) -> Result<MorphismPayload, DocumentError> {
    let need_map = || {
        dto.map
            .clone()
            .ok_or_else(|| invalid("this morphism kind needs a `map` field"))
    };
    let no_system_fields = || {
        if dto.xi.is_some() || dto.components.is_some() {
            Err(invalid("`xi`/`components` are only for system morphisms"))
        } else {
            Ok(())
        }
    };
    match (source, target) {
        (Document::Semilattice(s), Document::Semilattice(t)) => {
            no_system_fields()?;
            let m = SslMorphism::new(s.semilattice.clone(), t.semilattice.clone(), need_map()?)
                .map_err(invalid)?;
            Ok(MorphismPayload::Semilattice(m))
        }
        (Document::Algebra(s), Document::Algebra(t)) => {
            no_system_fields()?;
            let m = Homomorphism::new(s.algebra.clone(), t.algebra.clone(), need_map()?)
                .map_err(invalid)?;
            Ok(MorphismPayload::Algebra(m))
        }
        (Document::Band(s), Document::Band(t)) => {
            no_system_fields()?;
            let m = BandMorphism::new(s.band.clone(), t.band.clone(), need_map()?)
                .map_err(invalid)?;
            Ok(MorphismPayload::Band(m))
        }
        (Document::Plonka(s), Document::Plonka(t)) => {
            no_system_fields()?;
            let m = PlonkaMorphism::new(s.plonka.clone(), t.plonka.clone(), need_map()?)
                .map_err(invalid)?;
            Ok(MorphismPayload::Plonka(m))
        }
        (Document::System(s), Document::System(t)) => {
            if dto.map.is_some() {
                return Err(invalid("system morphisms use `xi` and `components`, not `map`"));
            }
            let xi = dto
                .xi
                .clone()
                .ok_or_else(|| invalid("system morphisms need an `xi` field"))?;
            let components = dto
                .components
                .clone()
                .ok_or_else(|| invalid("system morphisms need a `components` field"))?;
            let m = SystemMorphism::new(s.system.clone(), t.system.clone(), xi, components)
                .map_err(invalid)?;
            Ok(MorphismPayload::System(m))
        }
        _ => Err(invalid(format!(
            "morphism endpoints must share a kind supporting morphisms; found {} and {}",
            source.kind(),
            target.kind()
        ))),
    }
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

/// JSON with a fixed layout: `", "` between items, `": "` after keys, no
/// other whitespace. Combined with ordered fields this makes serialization
/// canonical.
struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if !first {
            writer.write_all(b", ")?;
        }
        Ok(())
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if !first {
            writer.write_all(b", ")?;
        }
        Ok(())
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(b": ")
    }
}

pub(crate) fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    value.serialize(&mut ser).expect("serialization to memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Canonical text of a document, newline-terminated.
pub fn serialize_document(doc: &Document) -> String {
    let mut text = to_canonical(&document_out(doc));
    text.push('\n');
    text
}

fn signature_body(sig: &Signature) -> SignatureBody {
    SignatureBody { symbols: sig.symbols().to_vec() }
}

fn tables_values(a: &FiniteAlgebra) -> Vec<Value> {
    (0..a.signature().len())
        .map(|sym| nest_table(a.table(sym), a.carrier(), a.signature().arity(sym)))
        .collect()
}

pub(crate) fn document_out(doc: &Document) -> DocumentOut {
    match doc {
        Document::Signature(sig) => DocumentOut::Signature(SignatureDto {
            kind: KindSignature::Tag,
            symbols: sig.symbols().to_vec(),
        }),
        Document::Algebra(d) => DocumentOut::Algebra(AlgebraDto {
            kind: KindAlgebra::Tag,
            signature: signature_body(d.algebra.signature()),
            carrier: d.algebra.carrier(),
            tables: tables_values(&d.algebra),
            names: d.names.clone(),
        }),
        Document::Semilattice(d) => DocumentOut::Semilattice(SemilatticeDto {
            kind: KindSemilattice::Tag,
            carrier: d.semilattice.size(),
            join: nest_table(d.semilattice.join_table(), d.semilattice.size(), 2),
            names: d.names.clone(),
        }),
        Document::Band(d) => DocumentOut::Band(BandDto {
            kind: KindBand::Tag,
            carrier: d.band.size(),
            d: nest_table(d.band.table(), d.band.size(), 2),
            names: d.names.clone(),
        }),
        Document::Plonka(d) => DocumentOut::Plonka(PlonkaDto {
            kind: KindPlonka::Tag,
            signature: signature_body(d.plonka.algebra().signature()),
            carrier: d.plonka.carrier(),
            tables: tables_values(d.plonka.algebra()),
            d: nest_table(d.plonka.band().table(), d.plonka.carrier(), 2),
            names: d.names.clone(),
        }),
        Document::System(d) => {
            let sys = &d.system;
            let signature = sys.signature().clone();
            let algebras: Vec<FiberBody> = sys
                .algebras()
                .iter()
                .enumerate()
                .map(|(i, a)| FiberBody {
                    carrier: a.carrier(),
                    tables: tables_values(a),
                    names: d.names.get(i).cloned().flatten(),
                })
                .collect();
            let mut transitions = BTreeMap::new();
            for (&(i, j), map) in sys.transitions() {
                if i != j {
                    transitions.insert(format!("{i}<{j}"), map.clone());
                }
            }
            DocumentOut::System(SystemDto {
                kind: KindSystem::Tag,
                signature: signature_body(&signature),
                index: SslBody {
                    carrier: sys.index().size(),
                    join: nest_table(sys.index().join_table(), sys.index().size(), 2),
                },
                algebras,
                transitions,
            })
        }
        Document::Morphism(d) => {
            let (map, xi, components) = match &d.payload {
                MorphismPayload::Semilattice(m) => (Some(m.map().to_vec()), None, None),
                MorphismPayload::Algebra(m) => (Some(m.map().to_vec()), None, None),
                MorphismPayload::Band(m) => (Some(m.map().to_vec()), None, None),
                MorphismPayload::Plonka(m) => (Some(m.map().to_vec()), None, None),
                MorphismPayload::System(m) => {
                    (None, Some(m.index_map().to_vec()), Some(m.components().to_vec()))
                }
            };
            DocumentOut::Morphism(MorphismOut {
                kind: KindMorphism::Tag,
                source: Box::new(document_out(&d.source)),
                target: Box::new(document_out(&d.target)),
                map,
                xi,
                components,
            })
        }
    }
}
