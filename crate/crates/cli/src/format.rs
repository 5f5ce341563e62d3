//! The `.yb` file format: a JSON header plus a payload of exact scalars
//! written as canonical strings.
//!
//! ```text
//! {
//!   "header": { "format_version": 1, "kind": "matrix", "field": "Q",
//!               "site_dim": 2, "legs": 2, "variables": [] },
//!   "payload": { "entries": [["1", "1/2", ...], ...] }
//! }
//! ```
//!
//! Rationals are `"p/q"` in lowest terms with `q > 1`, or `"p"`. Elements of
//! `Q(i, √2)` are `["a", "b", "c", "d"]` for `a + b√2 + ci + di√2`. With a
//! nonempty variable list every entry is a term list `[[[e₁, e₂…], scalar], …]`
//! with exponents aligned to `variables`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use yb_core::spin_chain::Boundary;
use yb_core::verify::Witness;
use yb_core::{Field, Matrix, Poly, QExt, Rational, SpectralRMatrix, TensorMatrix, Var, VerificationReport};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u64),
    #[error("shape error: {0}")]
    Shape(String),
}

fn parse_err(location: &str, message: impl Into<String>) -> FormatError {
    FormatError::Parse { location: location.to_string(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Matrix,
    Spectral,
    Report,
    Chain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i,sqrt2)")]
    Extension,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Rational => "Q",
            FieldTag::Extension => "Q(i,sqrt2)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub format_version: u64,
    pub kind: Kind,
    pub field: FieldTag,
    pub site_dim: usize,
    pub legs: usize,
    pub variables: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    header: Header,
    payload: Value,
}

/// A field whose elements have a canonical text form.
pub trait Scalar: Field {
    const FIELD: FieldTag;
    fn encode(&self) -> Value;
    fn decode(v: &Value, loc: &str) -> Result<Self, FormatError>;
}

fn rational_text(x: &Rational) -> String {
    if *x.denom() == BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rational_from_text(s: &str, loc: &str) -> Result<Rational, FormatError> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(n).map_err(|_| parse_err(loc, format!("malformed rational {s:?}")))?;
    let den = BigInt::from_str(d).map_err(|_| parse_err(loc, format!("malformed rational {s:?}")))?;
    if den.is_zero() {
        return Err(parse_err(loc, format!("zero denominator in {s:?}")));
    }
    let x = Rational::new(num, den);
    if rational_text(&x) != s {
        return Err(parse_err(loc, format!("{s:?} is not canonical; expected {:?}", rational_text(&x))));
    }
    Ok(x)
}

impl Scalar for Rational {
    const FIELD: FieldTag = FieldTag::Rational;

    fn encode(&self) -> Value {
        Value::String(rational_text(self))
    }

    fn decode(v: &Value, loc: &str) -> Result<Self, FormatError> {
        match v {
            Value::String(s) => rational_from_text(s, loc),
            _ => Err(parse_err(loc, "expected a rational string")),
        }
    }
}

impl Scalar for QExt {
    const FIELD: FieldTag = FieldTag::Extension;

    fn encode(&self) -> Value {
        json!([rational_text(&self.a), rational_text(&self.b), rational_text(&self.c), rational_text(&self.d)])
    }

    fn decode(v: &Value, loc: &str) -> Result<Self, FormatError> {
        let parts = match v {
            Value::Array(a) if a.len() == 4 => a,
            _ => return Err(parse_err(loc, "expected [a, b, c, d]")),
        };
        let mut xs = Vec::with_capacity(4);
        for (k, p) in parts.iter().enumerate() {
            xs.push(Rational::decode(p, &format!("{loc}[{k}]"))?);
        }
        let [a, b, c, d]: [Rational; 4] = xs.try_into().expect("four parts");
        Ok(QExt::new(a, b, c, d))
    }
}

/// Decoded contents of a `.yb` file over a fixed field.
#[derive(Clone, Debug, PartialEq)]
pub enum Object<F> {
    /// Tensor matrix; constant matrices have constant polynomial entries.
    Matrix(TensorMatrix<Poly<F>>),
    Spectral(SpectralRMatrix<F>),
    Report(ReportDoc<F>),
    Chain(ChainDoc<F>),
}

/// A verification report together with the shape of the object it checked.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportDoc<F> {
    pub site_dim: usize,
    pub legs: usize,
    pub report: VerificationReport<F>,
}

/// A chain operator `Σ u^k C_k` on `legs` sites (one coefficient when constant).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainDoc<F> {
    pub boundary: Boundary,
    pub coefficients: Vec<TensorMatrix<F>>,
}

/// An object over either supported field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyObject {
    Q(Object<Rational>),
    Ext(Object<QExt>),
}

impl<F: Scalar> Object<F> {
    pub fn matrix(m: &TensorMatrix<F>) -> Self {
        Object::Matrix(m.map(|x| Poly::constant(x.clone())))
    }

    pub fn kind(&self) -> Kind {
        match self {
            Object::Matrix(_) => Kind::Matrix,
            Object::Spectral(_) => Kind::Spectral,
            Object::Report(_) => Kind::Report,
            Object::Chain(_) => Kind::Chain,
        }
    }
}

fn var_list(vars: &[String]) -> Vec<Var> {
    vars.iter().map(|v| Var::new(v)).collect()
}

fn encode_poly<F: Scalar>(p: &Poly<F>, vars: &[Var]) -> Value {
    let terms: Vec<Value> = p
        .terms_over(vars)
        .into_iter()
        .map(|((i, j), c)| {
            let exps: Vec<u32> = [i, j].into_iter().take(vars.len()).collect();
            json!([exps, c.encode()])
        })
        .collect();
    Value::Array(terms)
}

fn decode_poly<F: Scalar>(v: &Value, vars: &[Var], loc: &str) -> Result<Poly<F>, FormatError> {
    let terms = v.as_array().ok_or_else(|| parse_err(loc, "expected a term list"))?;
    let mut out = Vec::with_capacity(terms.len());
    let mut last: Option<(u32, u32)> = None;
    for (k, t) in terms.iter().enumerate() {
        let tloc = format!("{loc}[{k}]");
        let pair =
            t.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err(&tloc, "expected [exponents, scalar]"))?;
        let exps = pair[0]
            .as_array()
            .filter(|e| e.len() == vars.len())
            .ok_or_else(|| parse_err(&tloc, format!("expected {} exponents", vars.len())))?;
        let mut e = [0u32; 2];
        for (slot, x) in e.iter_mut().zip(exps) {
            *slot = x
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| parse_err(&tloc, "exponent must be a small non-negative integer"))?;
        }
        let c = F::decode(&pair[1], &format!("{tloc}[1]"))?;
        if c.is_zero() {
            return Err(parse_err(&tloc, "zero coefficient in term list"));
        }
        let key = (e[0], e[1]);
        if last.is_some_and(|l| l >= key) {
            return Err(parse_err(&tloc, "terms must be strictly increasing in exponent order"));
        }
        last = Some(key);
        out.push((key, c));
    }
    Ok(Poly::from_terms(vars, out))
}

fn check_dims(header: &Header) -> Result<usize, FormatError> {
    if header.site_dim == 0 {
        return Err(FormatError::Shape("site_dim must be positive".into()));
    }
    u32::try_from(header.legs)
        .ok()
        .and_then(|l| header.site_dim.checked_pow(l))
        .filter(|d| *d <= 1 << 16)
        .ok_or_else(|| FormatError::Shape(format!("{}^{} is too large", header.site_dim, header.legs)))
}

fn encode_grid<T>(m: &TensorMatrix<T>, entry: impl Fn(&T) -> Value) -> Value
where
    T: yb_core::Ring,
{
    let d = m.dim();
    Value::Array((0..d).map(|i| Value::Array((0..d).map(|j| entry(m.get(i, j))).collect())).collect())
}

fn decode_grid<T: yb_core::Ring>(
    v: &Value,
    header: &Header,
    loc: &str,
    entry: impl Fn(&Value, &str) -> Result<T, FormatError>,
) -> Result<TensorMatrix<T>, FormatError> {
    let d = check_dims(header)?;
    let rows = v.as_array().ok_or_else(|| parse_err(loc, "expected an array of rows"))?;
    if rows.len() != d {
        return Err(FormatError::Shape(format!("{loc}: {} rows, header implies {d}", rows.len())));
    }
    let mut data = Vec::with_capacity(d * d);
    for (i, row) in rows.iter().enumerate() {
        let rloc = format!("{loc}[{i}]");
        let row = row.as_array().ok_or_else(|| parse_err(&rloc, "expected a row array"))?;
        if row.len() != d {
            return Err(FormatError::Shape(format!("{rloc}: {} entries, header implies {d}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            data.push(entry(x, &format!("{rloc}[{j}]"))?);
        }
    }
    let m = Matrix::from_fn(d, d, |i, j| data[i * d + j].clone());
    TensorMatrix::new(header.site_dim, header.legs, m).map_err(|e| FormatError::Shape(e.to_string()))
}

fn poly_grid<F: Scalar>(m: &TensorMatrix<Poly<F>>, vars: &[Var]) -> Value {
    if vars.is_empty() {
        encode_grid(m, |p| p.constant_term().encode())
    } else {
        encode_grid(m, |p| encode_poly(p, vars))
    }
}

fn decode_poly_grid<F: Scalar>(v: &Value, header: &Header, loc: &str) -> Result<TensorMatrix<Poly<F>>, FormatError> {
    let vars = var_list(&header.variables);
    if vars.is_empty() {
        decode_grid(v, header, loc, |x, l| F::decode(x, l).map(Poly::constant))
    } else {
        decode_grid(v, header, loc, |x, l| decode_poly(x, &vars, l))
    }
}

fn field<'a>(payload: &'a Value, key: &str) -> Result<&'a Value, FormatError> {
    payload.get(key).ok_or_else(|| parse_err("payload", format!("missing field {key:?}")))
}

fn expect_keys(payload: &Value, keys: &[&str]) -> Result<(), FormatError> {
    let obj = payload.as_object().ok_or_else(|| parse_err("payload", "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(parse_err("payload", format!("unknown field {k:?}")));
    }
    Ok(())
}

fn sorted_vars(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v.dedup();
    v
}

impl<F: Scalar> Object<F> {
    pub fn header(&self) -> Header {
        let (site_dim, legs, variables) = match self {
            Object::Matrix(m) => (m.site_dim(), m.legs(), m.variables()),
            Object::Spectral(r) => (r.site_dim(), 2, vec![yb_core::spectral::SPECTRAL_VAR.to_string()]),
            Object::Report(r) => {
                let vars = r.report.scalar_factor.as_ref().map(poly_vars).unwrap_or_default();
                (r.site_dim, r.legs, vars)
            }
            Object::Chain(c) => {
                let vars = if c.coefficients.len() > 1 {
                    vec![yb_core::spectral::SPECTRAL_VAR.to_string()]
                } else {
                    Vec::new()
                };
                (c.coefficients[0].site_dim(), c.coefficients[0].legs(), vars)
            }
        };
        Header { format_version: FORMAT_VERSION, kind: self.kind(), field: F::FIELD, site_dim, legs, variables }
    }

    fn payload(&self, header: &Header) -> Value {
        let vars = var_list(&header.variables);
        match self {
            Object::Matrix(m) => json!({ "entries": poly_grid(m, &vars) }),
            Object::Spectral(r) => json!({
                "label": r.label(),
                "numerator": poly_grid(r.numerator(), &vars),
                "denominator": encode_poly(r.denominator(), &vars),
            }),
            Object::Report(r) => {
                let rep = &r.report;
                json!({
                    "identity": rep.identity,
                    "passed": rep.passed,
                    "witness": rep.witness.as_ref().map(|w| json!({
                        "row": w.row,
                        "col": w.col,
                        "monomial": [w.monomial.0, w.monomial.1],
                        "value": w.value.encode(),
                    })),
                    "scalar_factor": rep.scalar_factor.as_ref().map(|p| json!({
                        "text": p.to_string(),
                        "terms": encode_poly(p, &vars),
                    })),
                    "grid_size": rep.grid_size.map(|(a, b)| json!([a, b])),
                })
            }
            Object::Chain(c) => json!({
                "boundary": c.boundary.name(),
                "coefficients": c.coefficients.iter().map(|m| encode_grid(m, |x| x.encode())).collect::<Vec<_>>(),
            }),
        }
    }

    /// Canonical UTF-8 text, terminated by a newline.
    pub fn encode(&self) -> String {
        let header = self.header();
        let payload = self.payload(&header);
        let doc = Document { header, payload };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    fn decode_payload(header: &Header, payload: &Value) -> Result<Self, FormatError> {
        let vars = var_list(&header.variables);
        match header.kind {
            Kind::Matrix => {
                expect_keys(payload, &["entries"])?;
                let m = decode_poly_grid(field(payload, "entries")?, header, "payload.entries")?;
                Ok(Object::Matrix(m))
            }
            Kind::Spectral => {
                expect_keys(payload, &["label", "numerator", "denominator"])?;
                if header.legs != 2 || header.variables != [yb_core::spectral::SPECTRAL_VAR] {
                    return Err(FormatError::Shape("spectral objects have 2 legs and variables [\"u\"]".into()));
                }
                let label =
                    field(payload, "label")?.as_str().ok_or_else(|| parse_err("payload.label", "expected a string"))?;
                let num = decode_poly_grid(field(payload, "numerator")?, header, "payload.numerator")?;
                let den = decode_poly(field(payload, "denominator")?, &vars, "payload.denominator")?;
                SpectralRMatrix::new(num, den, label)
                    .map(Object::Spectral)
                    .map_err(|e| FormatError::Shape(e.to_string()))
            }
            Kind::Report => {
                expect_keys(payload, &["identity", "passed", "witness", "scalar_factor", "grid_size"])?;
                let identity = field(payload, "identity")?
                    .as_str()
                    .ok_or_else(|| parse_err("payload.identity", "expected a string"))?
                    .to_string();
                let passed = field(payload, "passed")?
                    .as_bool()
                    .ok_or_else(|| parse_err("payload.passed", "expected a boolean"))?;
                let witness = match field(payload, "witness")? {
                    Value::Null => None,
                    w => Some(decode_witness::<F>(w)?),
                };
                let scalar_factor = match field(payload, "scalar_factor")? {
                    Value::Null => None,
                    s => {
                        let terms =
                            s.get("terms").ok_or_else(|| parse_err("payload.scalar_factor", "missing terms"))?;
                        Some(decode_poly(terms, &vars, "payload.scalar_factor.terms")?)
                    }
                };
                let grid_size = match field(payload, "grid_size")? {
                    Value::Null => None,
                    g => {
                        let pair: (usize, usize) = serde_json::from_value(g.clone())
                            .map_err(|e| parse_err("payload.grid_size", e.to_string()))?;
                        Some(pair)
                    }
                };
                if passed == witness.is_some() {
                    return Err(parse_err("payload", "a report has a witness exactly when it failed"));
                }
                let report = VerificationReport { identity, passed, witness, scalar_factor, grid_size };
                Ok(Object::Report(ReportDoc { site_dim: header.site_dim, legs: header.legs, report }))
            }
            Kind::Chain => {
                expect_keys(payload, &["boundary", "coefficients"])?;
                let boundary = match field(payload, "boundary")?.as_str() {
                    Some("periodic") => Boundary::Periodic,
                    Some("open") => Boundary::Open,
                    _ => return Err(parse_err("payload.boundary", "expected \"periodic\" or \"open\"")),
                };
                let coeffs = field(payload, "coefficients")?
                    .as_array()
                    .filter(|c| !c.is_empty())
                    .ok_or_else(|| parse_err("payload.coefficients", "expected a nonempty array"))?;
                let expected_vars: &[&str] = if coeffs.len() > 1 { &[yb_core::spectral::SPECTRAL_VAR] } else { &[] };
                if header.variables != expected_vars {
                    return Err(FormatError::Shape(format!("chain variables should be {expected_vars:?}")));
                }
                let coefficients = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| decode_grid(c, header, &format!("payload.coefficients[{k}]"), F::decode))
                    .collect::<Result<Vec<_>, _>>()?;
                if coefficients.len() > 1 && coefficients.last().is_some_and(|c| c.is_zero()) {
                    return Err(parse_err("payload.coefficients", "leading coefficient is zero"));
                }
                Ok(Object::Chain(ChainDoc { boundary, coefficients }))
            }
        }
    }
}

fn poly_vars<F: Field>(p: &Poly<F>) -> Vec<String> {
    sorted_vars(p.vars().iter().map(|v| v.name().to_string()).collect())
}

fn decode_witness<F: Scalar>(w: &Value) -> Result<Witness<F>, FormatError> {
    let loc = "payload.witness";
    let idx = |k: &str| -> Result<u64, FormatError> {
        w.get(k).and_then(Value::as_u64).ok_or_else(|| parse_err(loc, format!("missing or invalid {k:?}")))
    };
    let mono: (u32, u32) = serde_json::from_value(w.get("monomial").cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(&format!("{loc}.monomial"), e.to_string()))?;
    let value = F::decode(w.get("value").unwrap_or(&Value::Null), &format!("{loc}.value"))?;
    if value.is_zero() {
        return Err(parse_err(&format!("{loc}.value"), "witness value must be nonzero"));
    }
    Ok(Witness { row: idx("row")? as usize, col: idx("col")? as usize, monomial: mono, value })
}

impl AnyObject {
    pub fn encode(&self) -> String {
        match self {
            AnyObject::Q(o) => o.encode(),
            AnyObject::Ext(o) => o.encode(),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            AnyObject::Q(o) => o.kind(),
            AnyObject::Ext(o) => o.kind(),
        }
    }
}

impl From<Object<Rational>> for AnyObject {
    fn from(o: Object<Rational>) -> Self {
        AnyObject::Q(o)
    }
}

impl From<Object<QExt>> for AnyObject {
    fn from(o: Object<QExt>) -> Self {
        AnyObject::Ext(o)
    }
}

/// Parses a `.yb` document.
pub fn decode(text: &str) -> Result<AnyObject, FormatError> {
    let raw: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let version = raw.get("header").and_then(|h| h.get("format_version")).and_then(Value::as_u64);
    match version {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(FormatError::Version(v)),
        None => return Err(parse_err("header.format_version", "missing or not an integer")),
    }
    let doc: Document = serde_json::from_value(raw).map_err(|e| parse_err("document", e.to_string()))?;
    let h = &doc.header;
    if h.variables.len() > 2 || sorted_vars(h.variables.clone()) != h.variables {
        return Err(FormatError::Shape("variables must be sorted, distinct and at most two".into()));
    }
    let obj = match h.field {
        FieldTag::Rational => AnyObject::Q(Object::decode_payload(h, &doc.payload)?),
        FieldTag::Extension => AnyObject::Ext(Object::decode_payload(h, &doc.payload)?),
    };
    // canonical: re-encoding must reproduce the header exactly
    let reencoded = match &obj {
        AnyObject::Q(o) => o.header(),
        AnyObject::Ext(o) => o.header(),
    };
    if reencoded != *h {
        return Err(FormatError::Shape(format!(
            "header does not match payload (expected variables {:?}, site_dim {}, legs {})",
            reencoded.variables, reencoded.site_dim, reencoded.legs
        )));
    }
    Ok(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use yb_core::q;
    use yb_core::tensor::permutation_op;

    #[test]
    fn rational_canonical_forms() {
        assert_eq!(rational_text(&q(-3, 6)), "-1/2");
        assert_eq!(rational_text(&q(4, 1)), "4");
        for good in ["0", "-7", "3/4", "-12/5"] {
            assert_eq!(rational_text(&rational_from_text(good, "x").unwrap()), good);
        }
        for bad in ["2/4", "3/1", "+1", "-0", "01", "1/0", "1/-2", "a", "", "1/2/3", " 1"] {
            assert!(matches!(rational_from_text(bad, "x"), Err(FormatError::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn permutation_payload_strings() {
        let text = Object::matrix(&permutation_op::<Rational>(2)).encode();
        let v: Value = serde_json::from_str(&text).unwrap();
        let rows = v["payload"]["entries"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[1], json!(["0", "0", "1", "0"]));
    }

    #[test]
    fn extension_scalars() {
        let x = QExt::new(q(1, 2), q(0, 1), q(-3, 1), q(1, 7));
        assert_eq!(x.encode(), json!(["1/2", "0", "-3", "1/7"]));
        assert_eq!(QExt::decode(&x.encode(), "x").unwrap(), x);
        assert!(QExt::decode(&json!(["1", "2", "3"]), "x").is_err());
    }

    #[test]
    fn version_and_shape_errors() {
        let text = Object::matrix(&permutation_op::<Rational>(2)).encode();
        let v2 = text.replacen("\"format_version\": 1", "\"format_version\": 2", 1);
        assert_eq!(decode(&v2), Err(FormatError::Version(2)));
        let bad_dim = text.replacen("\"site_dim\": 2", "\"site_dim\": 3", 1);
        assert!(matches!(decode(&bad_dim), Err(FormatError::Shape(_))));
        let bad_scalar = text.replacen("\"1\"", "\"2/4\"", 1);
        assert!(matches!(decode(&bad_scalar), Err(FormatError::Parse { .. })));
        assert!(matches!(decode("{"), Err(FormatError::Parse { .. })));
    }
}
