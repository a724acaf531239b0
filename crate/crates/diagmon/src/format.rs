//! JSON encodings of elements, monoid dumps, reports and matrices.
//!
//! Objects go through `serde_json::Map`, which keeps keys sorted, so equal
//! inputs always serialize to identical bytes.

use std::collections::BTreeSet;

use diagmon_core::category::{EhresmannCategory, EiCheck, QuotientCheck, SteinCheck};
use diagmon_core::ehresmann::{EhresmannReport, RestSets, Witness};
use diagmon_core::zoo::Built;
use diagmon_core::{Axiom, BinaryRelation, Partition, RationalMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::Error;

pub fn partition_json(p: &Partition) -> Value {
    json!({ "n": p.degree(), "blocks": p.signed_blocks() })
}

pub fn relation_json(r: &BinaryRelation) -> Value {
    let pairs: Vec<[usize; 2]> = r.pairs().into_iter().map(|(x, y)| [x, y]).collect();
    json!({ "n": r.degree(), "pairs": pairs })
}

pub fn parse_partition(v: &Value) -> Result<Partition, Error> {
    let n = degree_field(v)?;
    let blocks = v
        .get("blocks")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("partition needs a \"blocks\" array".into()))?
        .iter()
        .map(|b| {
            b.as_array()
                .ok_or_else(|| Error::Format("each block must be an array".into()))?
                .iter()
                .map(|x| x.as_i64().and_then(|x| i32::try_from(x).ok()).ok_or_else(|| Error::Format(format!("bad vertex {x}"))))
                .collect::<Result<Vec<i32>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Partition::from_blocks(n, &blocks)?)
}

pub fn parse_relation(v: &Value) -> Result<BinaryRelation, Error> {
    let n = degree_field(v)?;
    let pairs = v
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("relation needs a \"pairs\" array".into()))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => match (x.as_u64(), y.as_u64()) {
                (Some(x), Some(y)) => Ok((x as usize, y as usize)),
                _ => Err(Error::Format(format!("bad pair {p}"))),
            },
            _ => Err(Error::Format(format!("bad pair {p}"))),
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(BinaryRelation::from_pairs(n, &pairs)?)
}

fn degree_field(v: &Value) -> Result<usize, Error> {
    v.get("n").and_then(Value::as_u64).map(|n| n as usize).ok_or_else(|| Error::Format("element needs an integer \"n\"".into()))
}

pub fn element_json(built: &Built, x: u32) -> Value {
    match built {
        Built::Partitions(m) => partition_json(m.element(x)),
        Built::Relations(m) => relation_json(m.element(x)),
    }
}

/// Short token for names: blocks joined by `|`, vertices by `,`; pairs as `x>y`.
pub fn element_token(built: &Built, x: u32) -> String {
    let body = match built {
        Built::Partitions(m) => m
            .element(x)
            .signed_blocks()
            .iter()
            .map(|b| b.iter().map(i32::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("|"),
        Built::Relations(m) => m.element(x).pairs().iter().map(|(a, b)| format!("{a}>{b}")).collect::<Vec<_>>().join(","),
    };
    if body.is_empty() {
        "empty".into()
    } else {
        body
    }
}

/// `{"size", "identity", "mul", "elements"}` with `mul` row-major.
pub fn dump_json(built: &Built) -> Value {
    let t = built.table();
    let elements: Vec<Value> = (0..t.size() as u32).map(|x| element_json(built, x)).collect();
    json!({
        "size": t.size(),
        "identity": t.identity(),
        "mul": t.raw(),
        "elements": elements,
    })
}

/// Element indices named by a shade file: a list of elements or a monoid dump.
pub fn parse_element_set(v: &Value, built: &Built) -> Result<BTreeSet<u32>, Error> {
    let list = match v {
        Value::Array(xs) => xs,
        Value::Object(o) => o
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("expected an element list or a dump with \"elements\"".into()))?,
        _ => return Err(Error::Format("expected an element list or a dump with \"elements\"".into())),
    };
    let mut out = BTreeSet::new();
    for item in list {
        let found = match built {
            Built::Partitions(m) => m.index_of(&parse_partition(item)?),
            Built::Relations(m) => m.index_of(&parse_relation(item)?),
        };
        // Elements outside the monoid simply shade nothing.
        out.extend(found);
    }
    Ok(out)
}

fn indexed(built: &Built, x: u32) -> Value {
    json!({ "index": x, "element": element_json(built, x) })
}

pub fn witness_json(built: &Built, w: &Witness) -> Value {
    match *w {
        Witness::ClassCount { element, count } => json!({
            "kind": "class_count",
            "element": indexed(built, element),
            "count": count,
        }),
        Witness::Congruence { theta, a, b } => json!({
            "kind": "congruence",
            "theta": indexed(built, theta),
            "a": indexed(built, a),
            "b": indexed(built, b),
        }),
        Witness::Containment { x, e } => json!({
            "kind": "containment",
            "x": indexed(built, x),
            "e": indexed(built, e),
        }),
    }
}

/// Extra facts attached to an axiom report by `analyze`.
pub struct AnalysisExtras<'a> {
    pub family: String,
    pub semilattice: String,
    pub semilattice_size: usize,
    pub rest: &'a RestSets,
    pub rest_matches: [Vec<String>; 3],
    pub reg_e: &'a [u32],
    pub reg_matches: Vec<String>,
}

pub fn report_json(built: &Built, report: &EhresmannReport, extras: &AnalysisExtras<'_>) -> Value {
    let mut axioms = Map::new();
    let mut witnesses = Map::new();
    for a in Axiom::ALL {
        axioms.insert(a.name().into(), report.holds(a).into());
        if let Some(w) = report.witness(a) {
            witnesses.insert(a.name().into(), witness_json(built, &w));
        }
    }
    let rest = |xs: &[u32], matches: &[String]| json!({ "size": xs.len(), "matches": matches });
    json!({
        "family": extras.family,
        "semilattice": extras.semilattice,
        "semilattice_size": extras.semilattice_size,
        "size": built.size(),
        "sweep": report.sweep.name(),
        "axioms": axioms,
        "witnesses": witnesses,
        "tilde_class_counts": {
            "R": report.r_tilde.count(),
            "L": report.l_tilde.count(),
            "H": report.h_tilde.count(),
        },
        "plus": report.plus,
        "star": report.star,
        "ehresmann": report.is_ehresmann(),
        "left_restriction": report.is_left_restriction(),
        "right_restriction": report.is_right_restriction(),
        "rest": {
            "left": rest(&extras.rest.left, &extras.rest_matches[0]),
            "right": rest(&extras.rest.right, &extras.rest_matches[1]),
            "both": rest(&extras.rest.both, &extras.rest_matches[2]),
        },
        "reg_e": rest(extras.reg_e, &extras.reg_matches),
    })
}

fn bigint_json(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| Value::String(v.to_string()), Value::from)
}

/// Row-major `[numerator, denominator]` pairs.
pub fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        m.to_pairs()
            .iter()
            .map(|row| Value::Array(row.iter().map(|(p, q)| json!([bigint_json(p), bigint_json(q)])).collect()))
            .collect(),
    )
}

pub fn category_json(built: &Built, cat: &EhresmannCategory, ei: &EiCheck) -> Value {
    let hom: Vec<Value> = cat
        .hom_sets()
        .iter()
        .map(|(&(from, to), members)| json!({ "from": from, "to": to, "members": members }))
        .collect();
    json!({
        "size": built.size(),
        "objects": cat.objects(),
        "hom": hom,
        "ei": { "holds": ei.is_ei, "witness": ei.witness.map(|w| indexed(built, w)) },
    })
}

pub struct SteinOutput<'a> {
    pub side: &'static str,
    pub check: &'a SteinCheck,
    pub order: &'a [u32],
    pub transform: &'a RationalMatrix,
    pub mobius: &'a RationalMatrix,
    pub quotient: Result<QuotientCheck, String>,
}

pub fn stein_json(built: &Built, out: &SteinOutput<'_>) -> Value {
    let quotient = match &out.quotient {
        Ok(q) => json!({
            "dim": q.dim,
            "radical": q.radical,
            "reg_size": q.reg_size,
            "reg_radical": q.reg_radical,
            "holds": q.holds(),
        }),
        Err(reason) => json!({ "skipped": reason }),
    };
    json!({
        "size": built.size(),
        "side": out.side,
        "holds": out.check.holds(),
        "multiplicative": out.check.multiplicative,
        "unitriangular": out.check.unitriangular,
        "inverse_is_mobius": out.check.inverse_is_mobius,
        "failure": out.check.failure.map(|(x, y)| [x, y]),
        "pairs_checked": out.check.pairs_checked,
        "linear_extension": out.order,
        "transform": matrix_json(out.transform),
        "mobius": matrix_json(out.mobius),
        "quotient": quotient,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Compact JSON with a trailing newline, for large dumps.
pub fn to_compact_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}
