//! JSON files for algebras, representations and cochains, and canonical
//! report serialization. Objects serialize with sorted keys.
//!
//! Algebra: `{"field": {"mode": "rational"|"ratfunc", "q"?: scalar},
//! "basis": [{"label", "parity": 0|1}], "alpha": [[scalar]],
//! "brackets": [{"left", "right", "value": {label: scalar}}]}`.
//! `alpha[i][j]` is the coefficient of basis element `i` in `alpha(e_j)`.
//!
//! Representation: `{"algebra": path, "space": [{"label", "parity"}],
//! "beta": [[scalar]], "action": [{"element", "vector", "value": {label: scalar}}]}`.
//!
//! Cochain: `{"degree", "parity", "values": [{"args": [label], "value": {label: scalar} | scalar}]}`.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::homlie::{AlgebraBuilder, SuperAlgebra, SuperBasis};
use crate::linalg::{Matrix, SparseVec};
use crate::parity::Parity;
use crate::repr::Representation;
use crate::scalars::{FieldMode, FieldSpec, Scalar};

/// Version tag carried by every report.
pub const SCHEMA: &str = "1";

fn at(path: &str, msg: impl Into<String>) -> Error {
    Error::Input(format!("{path}: {}", msg.into()))
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Input(format!(
            "invalid JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn field_of<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| at(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| at(path, format!("missing key {key:?}")))
}

fn str_of<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| at(path, "expected a string"))
}

fn array_of<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| at(path, "expected an array"))
}

fn scalar_of(field: &FieldSpec, v: &Value, path: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(at(path, "expected a scalar string")),
    };
    field.parse(&text).map_err(|e| at(path, e.to_string()))
}

fn parity_of(v: &Value, path: &str) -> Result<Parity> {
    match v.as_u64() {
        Some(0) => Ok(Parity::Even),
        Some(1) => Ok(Parity::Odd),
        _ => Err(at(path, "parity must be 0 or 1")),
    }
}

fn field_spec(v: &Value) -> Result<FieldSpec> {
    let mode = str_of(field_of(v, "mode", "field")?, "field.mode")?;
    let q = v.get("q");
    match (mode, q) {
        ("rational", None) => Ok(FieldSpec::rational()),
        ("rational", Some(q)) => {
            let q = scalar_of(&FieldSpec::rational(), q, "field.q")?;
            Ok(FieldSpec::specialized(
                q.as_rational().expect("rational mode"),
            ))
        }
        ("ratfunc", None) => Ok(FieldSpec::symbolic()),
        ("ratfunc", Some(_)) => Err(at("field.q", "a ratfunc field keeps q symbolic")),
        (m, _) => Err(at("field.mode", format!("unknown mode {m:?}"))),
    }
}

fn field_value(f: &FieldSpec) -> Value {
    match (f.mode, &f.q) {
        (FieldMode::Rational, Some(q)) => json!({"mode": "rational", "q": q.to_string()}),
        (FieldMode::Rational, None) => json!({"mode": "rational"}),
        (FieldMode::RatFunc, _) => json!({"mode": "ratfunc"}),
    }
}

/// Basis entries as listed, then in canonical even-first order with the position map.
fn basis_of(v: &Value, path: &str) -> Result<(SuperBasis, Vec<usize>)> {
    let items = array_of(v, path)?;
    let mut entries = Vec::with_capacity(items.len());
    for (i, e) in items.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let label = str_of(field_of(e, "label", &p)?, &format!("{p}.label"))?;
        let parity = parity_of(field_of(e, "parity", &p)?, &format!("{p}.parity"))?;
        entries.push((label.to_string(), parity));
    }
    SuperBasis::sorted(entries).map_err(|e| at(path, e.to_string()))
}

fn basis_value(b: &SuperBasis) -> Value {
    Value::Array(
        (0..b.dim())
            .map(|i| json!({"label": b.label(i), "parity": b.parity(i).bit()}))
            .collect(),
    )
}

/// A square matrix in file order, permuted into canonical order.
fn matrix_of(field: &FieldSpec, v: &Value, pos: &[usize], path: &str) -> Result<Matrix> {
    let n = pos.len();
    let rows = array_of(v, path)?;
    if rows.len() != n {
        return Err(at(path, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut m = Matrix::zeros(field.mode, n, n);
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let row = array_of(row, &p)?;
        if row.len() != n {
            return Err(at(&p, format!("expected {n} entries, found {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            m.set(pos[i], pos[j], scalar_of(field, e, &format!("{p}[{j}]"))?);
        }
    }
    Ok(m)
}

fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// `{label: scalar}` for a vector over `basis`.
pub fn vector_value(basis: &SuperBasis, v: &SparseVec) -> Value {
    Value::Object(
        v.iter()
            .map(|(i, c)| (basis.label(i).to_string(), Value::String(c.to_string())))
            .collect(),
    )
}

fn vector_of(field: &FieldSpec, basis: &SuperBasis, v: &Value, path: &str) -> Result<SparseVec> {
    let obj = v
        .as_object()
        .ok_or_else(|| at(path, "expected an object of label: scalar"))?;
    let mut pairs = Vec::with_capacity(obj.len());
    for (label, c) in obj {
        let i = basis
            .index_of(label)
            .ok_or_else(|| at(path, format!("unknown label {label:?}")))?;
        pairs.push((i, scalar_of(field, c, &format!("{path}.{label}"))?));
    }
    Ok(SparseVec::from_pairs(pairs))
}

/// Reads an algebra description.
pub fn algebra_from_value(v: &Value) -> Result<SuperAlgebra> {
    let field = field_spec(field_of(v, "field", "$")?)?;
    let (basis, pos) = basis_of(field_of(v, "basis", "$")?, "basis")?;
    let alpha = matrix_of(&field, field_of(v, "alpha", "$")?, &pos, "alpha")?;
    let mut b = AlgebraBuilder::new(field.clone(), basis.clone());
    for (k, e) in array_of(field_of(v, "brackets", "$")?, "brackets")?
        .iter()
        .enumerate()
    {
        let p = format!("brackets[{k}]");
        let idx = |key: &str| -> Result<usize> {
            let l = str_of(field_of(e, key, &p)?, &format!("{p}.{key}"))?;
            basis
                .index_of(l)
                .ok_or_else(|| at(&format!("{p}.{key}"), format!("unknown label {l:?}")))
        };
        let (i, j) = (idx("left")?, idx("right")?);
        let value = vector_of(
            &field,
            &basis,
            field_of(e, "value", &p)?,
            &format!("{p}.value"),
        )?;
        b.set_bracket(i, j, value)
            .map_err(|e| at(&p, e.to_string()))?;
    }
    b.set_alpha(alpha);
    b.build()
}

pub fn algebra_from_json(text: &str) -> Result<SuperAlgebra> {
    algebra_from_value(&parse_json(text)?)
}

/// Canonical description: even-first basis, brackets on pairs `i <= j` with a nonzero value.
pub fn algebra_to_value(a: &SuperAlgebra) -> Value {
    let basis = a.basis();
    let mut brackets = Vec::new();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let v = a.bracket_basis(i, j);
            if !v.is_zero() {
                brackets.push(json!({"left": basis.label(i), "right": basis.label(j), "value": vector_value(basis, v)}));
            }
        }
    }
    json!({
        "field": field_value(a.field()),
        "basis": basis_value(basis),
        "alpha": matrix_value(a.alpha()),
        "brackets": brackets,
    })
}

/// Reads a representation; the algebra path is resolved against `base_dir`.
pub fn representation_from_value(v: &Value, base_dir: &Path) -> Result<(Representation, PathBuf)> {
    let rel = str_of(field_of(v, "algebra", "$")?, "algebra")?;
    let path = base_dir.join(rel);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| at("algebra", format!("cannot read {}: {e}", path.display())))?;
    let alg =
        algebra_from_json(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let field = alg.field().clone();
    let (space, pos) = basis_of(field_of(v, "space", "$")?, "space")?;
    let beta = matrix_of(&field, field_of(v, "beta", "$")?, &pos, "beta")?;
    let (n, m) = (alg.dim(), space.dim());
    let mut action = vec![SparseVec::new(); n * m];
    for (k, e) in array_of(field_of(v, "action", "$")?, "action")?
        .iter()
        .enumerate()
    {
        let p = format!("action[{k}]");
        let x = str_of(field_of(e, "element", &p)?, &format!("{p}.element"))?;
        let u = str_of(field_of(e, "vector", &p)?, &format!("{p}.vector"))?;
        let i = alg
            .basis()
            .index_of(x)
            .ok_or_else(|| at(&p, format!("unknown algebra label {x:?}")))?;
        let j = space
            .index_of(u)
            .ok_or_else(|| at(&p, format!("unknown module label {u:?}")))?;
        action[i * m + j] = vector_of(
            &field,
            &space,
            field_of(e, "value", &p)?,
            &format!("{p}.value"),
        )?;
    }
    Ok((Representation::new(alg, space, beta, action)?, path))
}

pub fn representation_from_file(path: &Path) -> Result<Representation> {
    let text = read(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Ok(representation_from_value(&parse_json(&text)?, base)?.0)
}

pub fn representation_to_value(rep: &Representation, algebra_path: &str) -> Value {
    let (g, v) = (rep.algebra().basis(), rep.space());
    let m = v.dim();
    let mut action = Vec::new();
    for i in 0..g.dim() {
        for u in 0..m {
            let val = &rep.action_table()[i * m + u];
            if !val.is_zero() {
                action.push(json!({"element": g.label(i), "vector": v.label(u), "value": vector_value(v, val)}));
            }
        }
    }
    json!({
        "algebra": algebra_path,
        "space": basis_value(v),
        "beta": matrix_value(rep.beta()),
        "action": action,
    })
}

/// Reads a cochain on `domain` with values in `codomain`. A bare scalar value is
/// accepted when the codomain is one-dimensional.
pub fn cochain_from_value(
    v: &Value,
    field: &FieldSpec,
    domain: &SuperBasis,
    codomain: &SuperBasis,
) -> Result<Cochain> {
    let degree = field_of(v, "degree", "$")?
        .as_u64()
        .ok_or_else(|| at("degree", "expected a count"))? as usize;
    let parity = parity_of(field_of(v, "parity", "$")?, "parity")?;
    let mut f = Cochain::zero(
        field.mode,
        domain.parities(),
        codomain.parities(),
        degree,
        parity,
    );
    for (k, e) in array_of(field_of(v, "values", "$")?, "values")?
        .iter()
        .enumerate()
    {
        let p = format!("values[{k}]");
        let args = array_of(field_of(e, "args", &p)?, &format!("{p}.args"))?;
        if args.len() != degree {
            return Err(at(
                &p,
                format!("expected {degree} arguments, found {}", args.len()),
            ));
        }
        let tuple = args
            .iter()
            .enumerate()
            .map(|(a, l)| {
                let l = str_of(l, &format!("{p}.args[{a}]"))?;
                domain
                    .index_of(l)
                    .ok_or_else(|| at(&p, format!("unknown label {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let value = field_of(e, "value", &p)?;
        let vec = if value.is_object() {
            vector_of(field, codomain, value, &format!("{p}.value"))?
        } else if codomain.dim() == 1 {
            SparseVec::from_pairs(vec![(0, scalar_of(field, value, &format!("{p}.value"))?)])
        } else {
            return Err(at(
                &format!("{p}.value"),
                "expected an object of label: scalar",
            ));
        };
        let c = f.value_at(&tuple);
        let mut g = Cochain::zero(
            field.mode,
            domain.parities(),
            codomain.parities(),
            degree,
            parity,
        );
        g.set(&tuple, vec).map_err(|e| at(&p, e.to_string()))?;
        if !c.is_zero() {
            return Err(at(&p, "duplicate entry for this argument tuple"));
        }
        f = f.add_scaled(&field.one(), &g)?;
    }
    Ok(f)
}

pub fn cochain_to_value(f: &Cochain, domain: &SuperBasis, codomain: &SuperBasis) -> Value {
    let values: Vec<Value> = f
        .values()
        .map(|(t, v)| {
            json!({
                "args": t.iter().map(|&i| domain.label(i)).collect::<Vec<_>>(),
                "value": vector_value(codomain, v),
            })
        })
        .collect();
    json!({"degree": f.degree(), "parity": f.parity().bit(), "values": values})
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Adds the schema tag to a report object.
pub fn report(mut body: Map<String, Value>) -> Value {
    body.insert("schema".into(), Value::String(SCHEMA.into()));
    Value::Object(body)
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn algebra_from_file(path: &Path) -> Result<SuperAlgebra> {
    algebra_from_json(&read(path)?).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}
