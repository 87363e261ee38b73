//! JSON forms of library values. Integers beyond 53 bits are written as
//! decimal strings and accepted in either form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hall::HallTree;
use crate::johnson::{basis_symbol, boundary_twist, braid_automorphism, parse_basis_symbol, HomValue, MappingClassData, TauKind, TauValue};
use crate::matrix::Matrix;
use crate::surface::standard_relator;
use crate::symplectic::Lagrangian;
use crate::word::{Alphabet, GroupEndomorphism, Letter, Word};
use crate::{Int, LieElement};

const SAFE: i64 = 1 << 53;

/// JSON number when it survives a double, decimal string otherwise.
pub fn int_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if (-SAFE..=SAFE).contains(&x) => Value::from(x),
        _ => Value::String(v.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("expected an integer, found {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, found `{s}`"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&int_to_json(x))?;
    }
    seq.end()
}

/// Accepts `"a1 b1 a1^-1"` or `[["a1", 1], ["b1", 1], ["a1", -1]]`.
pub fn word_from_json(v: &Value, alphabet: &Alphabet) -> Result<Word> {
    match v {
        Value::String(s) => alphabet.parse_word(s),
        Value::Array(items) => {
            let mut letters = Vec::new();
            for item in items {
                let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("expected [name, exponent], found {item}")))?;
                let name = pair[0].as_str().ok_or_else(|| Error::Parse("generator name must be a string".into()))?;
                let exp = pair[1].as_i64().ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
                let g = alphabet.lookup(name)?;
                let l = if exp < 0 { Letter::inv(g) } else { Letter::gen(g) };
                for _ in 0..exp.unsigned_abs() {
                    letters.push(l);
                }
            }
            Ok(Word::reduce(letters))
        }
        other => Err(Error::Parse(format!("expected a word, found {other}"))),
    }
}

pub fn word_to_json(w: &Word, alphabet: &Alphabet) -> Value {
    Value::Array(w.letters().iter().map(|l| json!([alphabet.name(l.generator), l.exponent()])).collect())
}

pub fn tree_to_json(t: &HallTree, alphabet: &Alphabet) -> Value {
    match t.children() {
        None => Value::String(alphabet.name(t.as_leaf().unwrap()).to_string()),
        Some((l, r)) => json!([tree_to_json(l, alphabet), tree_to_json(r, alphabet)]),
    }
}

pub fn tree_from_json(v: &Value, alphabet: &Alphabet) -> Result<HallTree> {
    match v {
        Value::String(s) if s.starts_with('[') => HallTree::parse(s, alphabet),
        Value::String(s) => Ok(HallTree::leaf(alphabet.lookup(s)?)),
        Value::Array(p) if p.len() == 2 => Ok(HallTree::pair(tree_from_json(&p[0], alphabet)?, tree_from_json(&p[1], alphabet)?)),
        other => Err(Error::Parse(format!("expected a tree, found {other}"))),
    }
}

/// `{"weight": k, "terms": [[coeff, tree], …]}`
pub fn lie_to_json(e: &LieElement, alphabet: &Alphabet) -> Value {
    let terms: Vec<Value> = e.terms().map(|(t, c)| json!([int_to_json(c), tree_to_json(t, alphabet)])).collect();
    json!({"weight": e.weight(), "terms": terms})
}

/// Parses a Lie element; non-basic trees are rewritten into the Hall basis.
pub fn lie_from_json(v: &Value, alphabet: &Alphabet) -> Result<LieElement> {
    let weight = v.get("weight").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `weight`".into()))? as usize;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing `terms`".into()))?;
    let mut e = LieElement::zero(weight);
    for term in terms {
        let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse("term must be [coeff, tree]".into()))?;
        let c = int_from_json(&pair[0])?;
        let t = tree_from_json(&pair[1], alphabet)?;
        if t.weight() != weight {
            return Err(Error::Parse(format!("term of weight {} in element of weight {weight}", t.weight())));
        }
        e.add_scaled(&crate::lie::normalize_tree(&t), &c);
    }
    Ok(e)
}

fn kind_str(k: TauKind) -> &'static str {
    match k {
        TauKind::Free => "free",
        TauKind::Surface => "surface",
    }
}

/// `{"genus", "k", "kind", "terms": {"alpha1": lie, …}}`, zero parts omitted.
pub fn tau_to_json(t: &TauValue, alphabet: &Alphabet) -> Value {
    let mut terms = Map::new();
    for (j, e) in t.terms() {
        terms.insert(basis_symbol(t.genus, j), lie_to_json(e, alphabet));
    }
    json!({"genus": t.genus, "k": t.weight, "kind": kind_str(t.kind), "terms": terms})
}

pub fn tau_from_json(v: &Value) -> Result<TauValue> {
    let genus = v.get("genus").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `genus`".into()))? as usize;
    let k = v.get("k").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `k`".into()))? as usize;
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some("free") => TauKind::Free,
        Some("surface") | None => TauKind::Surface,
        Some(other) => return Err(Error::Parse(format!("unknown kind `{other}`"))),
    };
    let alphabet = Alphabet::surface(genus);
    let mut t = TauValue::zero(genus, k, kind);
    if let Some(terms) = v.get("terms").and_then(Value::as_object) {
        for (sym, e) in terms {
            let j = parse_basis_symbol(genus, sym)?;
            let e = lie_from_json(e, &alphabet)?;
            if e.weight() != k {
                return Err(Error::Parse(format!("part `{sym}` has weight {}", e.weight())));
            }
            t.parts[j] = e;
        }
    }
    Ok(t)
}

pub fn hom_to_json(h: &HomValue, alphabet: &Alphabet) -> Value {
    let values: Map<String, Value> = h
        .values
        .iter()
        .enumerate()
        .map(|(j, e)| (basis_symbol(h.genus, j), lie_to_json(e, alphabet)))
        .collect();
    json!({"genus": h.genus, "k": h.weight, "kind": kind_str(h.kind), "values": values})
}

pub fn int_rows_from_json(v: &Value) -> Result<Vec<Vec<Int>>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a row array".into()))?
                .iter()
                .map(int_from_json)
                .collect()
        })
        .collect()
}

pub fn int_rows_to_json(rows: &[Vec<Int>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(int_to_json).collect())).collect())
}

/// Row-major integer array.
pub fn matrix_from_json(v: &Value) -> Result<Matrix<Int>> {
    let rows = int_rows_from_json(v)?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(Matrix::from_rows(rows))
}

pub fn matrix_to_json(m: &Matrix<Int>) -> Value {
    int_rows_to_json(&m.to_rows())
}

/// `{"genus": g, "span": [[…2g ints…], …]}`
pub fn lagrangian_from_json(v: &Value) -> Result<Lagrangian> {
    let genus = v.get("genus").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `genus`".into()))? as usize;
    let span = int_rows_from_json(v.get("span").ok_or_else(|| Error::Parse("missing `span`".into()))?)?;
    Lagrangian::new(genus, span)
}

pub fn lagrangian_to_json(l: &Lagrangian) -> Value {
    json!({"genus": l.genus(), "span": int_rows_to_json(&l.span())})
}

/// Mapping classes in one of three forms:
/// `{"genus", "images": {"a1": word, …}, "boundary"?: word}` (omitted
/// generators are fixed; the boundary defaults to `[a₁,b₁]⋯[a_g,b_g]`),
/// `{"genus", "boundary_twist": true}`, or `{"genus", "point_push": [word, …]}`.
pub fn mapping_class_from_json(v: &Value) -> Result<MappingClassData> {
    let genus = v.get("genus").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `genus`".into()))? as usize;
    if genus == 0 {
        return Err(Error::InvalidArgument("genus must be positive".into()));
    }
    let alphabet = Alphabet::surface(genus);
    if v.get("boundary_twist").and_then(Value::as_bool) == Some(true) {
        return Ok(boundary_twist(genus));
    }
    if let Some(ws) = v.get("point_push") {
        let ws = ws.as_array().ok_or_else(|| Error::Parse("`point_push` must be an array of words".into()))?;
        let lambdas = ws.iter().map(|w| word_from_json(w, &alphabet)).collect::<Result<Vec<_>>>()?;
        if lambdas.len() != genus {
            return Err(Error::DimensionMismatch { expected: genus, found: lambdas.len() });
        }
        return braid_automorphism(&lambdas);
    }
    let mut images: Vec<Word> = (0..2 * genus).map(Word::generator).collect();
    if let Some(map) = v.get("images") {
        let map = map.as_object().ok_or_else(|| Error::Parse("`images` must be an object".into()))?;
        for (name, w) in map {
            images[alphabet.lookup(name)?] = word_from_json(w, &alphabet)?;
        }
    }
    let boundary = match v.get("boundary") {
        Some(b) => word_from_json(b, &alphabet)?,
        None => standard_relator(genus),
    };
    MappingClassData::with_boundary(genus, GroupEndomorphism::new(images)?, boundary)
}

pub fn mapping_class_to_json(f: &MappingClassData) -> Value {
    let alphabet = Alphabet::surface(f.genus());
    let images: BTreeMap<String, Value> = (0..2 * f.genus())
        .map(|j| (alphabet.name(j).to_string(), Value::String(alphabet.format_word(f.map().image(j)))))
        .collect();
    json!({
        "genus": f.genus(),
        "images": images,
        "boundary": alphabet.format_word(f.boundary()),
    })
}
