//! JSON views of core values. Scalars and polynomials become strings in
//! the same grammar the parser accepts.

use serde_json::{json, Value};
use ulrich_core::curve_cover::{ChainStatus, CoverProfile, KeemCertificate};
use ulrich_core::graded::{Smoothness, ZeroDimensional};
use ulrich_core::linalg::Matrix;
use ulrich_core::matrix_factor::MatrixFactorization;
use ulrich_core::quadform::QuadraticFormRecord;
use ulrich_core::resultant::Transversality;
use ulrich_core::veronese::{FormDecomposition, LowerBoundCheck, PresentationCase, RankReport};
use ulrich_core::{Poly, Scalar};

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn poly(p: &Poly) -> Value {
    Value::String(p.to_string())
}

pub fn polys(v: &[Poly]) -> Value {
    Value::Array(v.iter().map(poly).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars(r)).collect())
}

pub fn poly_grid(rows: &[Vec<Poly>]) -> Value {
    Value::Array(rows.iter().map(|r| polys(r)).collect())
}

pub fn pairs(v: &[(Poly, Poly)]) -> Value {
    Value::Array(v.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect())
}

pub fn point(p: Option<&Vec<Scalar>>) -> Value {
    p.map_or(Value::Null, |v| scalars(v))
}

/// Integers beyond `u64` are written as decimal strings.
pub fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

pub fn quadric(rec: &QuadraticFormRecord) -> Value {
    json!({
        "poly": rec.poly.to_string(),
        "nvars": rec.nvars(),
        "gram": matrix(&rec.gram),
        "rank": rec.rank,
    })
}

pub fn factorization(mf: &MatrixFactorization, verified: bool) -> Value {
    json!({
        "field": mf.field().to_string(),
        "size": mf.size,
        "entries": poly_grid(&mf.entries),
        "quadric": mf.quadric.to_string(),
        "ulrich_rank": mf.ulrich_rank,
        "verified": verified,
    })
}

pub fn smoothness(s: &Smoothness) -> Value {
    match s {
        Smoothness::Smooth => json!({ "status": "smooth", "singular_point": null }),
        Smoothness::Singular(p) => json!({ "status": "singular", "singular_point": point(p.as_ref()) }),
        Smoothness::Inconclusive => json!({ "status": "inconclusive", "singular_point": null }),
    }
}

pub fn zero_dimensional(z: &ZeroDimensional) -> Value {
    match z {
        ZeroDimensional::Yes(e) => json!({ "status": "yes", "degree": e, "common_zero": null }),
        ZeroDimensional::No(p) => json!({ "status": "no", "degree": null, "common_zero": scalars(p) }),
        ZeroDimensional::Inconclusive => json!({ "status": "inconclusive", "degree": null, "common_zero": null }),
    }
}

pub fn transversality(t: &Transversality) -> Value {
    match t {
        Transversality::Transversal(c) => json!({
            "transversal": true,
            "points": c.points,
            "resultant": c.resultant.to_string(),
            "change": matrix(&c.change),
            "trial": c.trial,
            "reason": null,
        }),
        Transversality::Failed(reason) => json!({
            "transversal": false,
            "points": null,
            "resultant": null,
            "change": null,
            "trial": null,
            "reason": reason,
        }),
    }
}

pub fn decomposition(d: &FormDecomposition) -> Value {
    let c = &d.certificates;
    json!({
        "form": d.f.to_string(),
        "field": d.field().to_string(),
        "summands": pairs(&d.summands),
        "square_term": d.square_term,
        "secant_index": d.secant_index(),
        "certificates": {
            "smoothness": c.smoothness.as_ref().map(smoothness),
            "factor_ideal": c.factor_ideal.as_ref().map(zero_dimensional),
            "transversality": c.transversality.as_ref().map(transversality),
        },
    })
}

pub fn case(c: PresentationCase) -> &'static str {
    match c {
        PresentationCase::SquareTerm => "square_term",
        PresentationCase::NoSquareTerm => "no_square_term",
    }
}

pub fn rank_report(r: &RankReport) -> Value {
    let lower_check = match &r.lower_bound_check {
        LowerBoundCheck::Applicable { factor_ideal, two_k, n_plus_one, holds } => json!({
            "applicable": true,
            "factor_ideal": zero_dimensional(factor_ideal),
            "two_k": two_k,
            "n_plus_one": n_plus_one,
            "holds": holds,
            "reason": null,
            "witness": null,
        }),
        LowerBoundCheck::NotApplicable { reason, witness } => json!({
            "applicable": false,
            "factor_ideal": null,
            "two_k": null,
            "n_plus_one": null,
            "holds": null,
            "reason": reason,
            "witness": point(witness.as_ref()),
        }),
    };
    json!({
        "n": r.n,
        "d": r.d,
        "target_dim": r.target_dim,
        "summands": r.summands,
        "r": r.r,
        "case": case(r.case),
        "upper": big(r.upper_bound),
        "achieved": big(r.achieved),
        "lower": big(r.lower_bound),
        "lower_check": lower_check,
    })
}

pub fn profile(p: &CoverProfile) -> Value {
    json!({
        "h": p.h,
        "d": p.d,
        "g": p.g,
        "branch_degree": p.branch_degree,
        "genus_condition": p.genus_condition,
        "hurwitz_identity": p.satisfies_hurwitz(),
    })
}

pub fn keem(c: &KeemCertificate) -> Value {
    let det = match c.pencil.as_slice() {
        [only] => only.to_string(),
        coeffs => coeffs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
    };
    let chain: Vec<Value> = c
        .chain
        .iter()
        .map(|e| {
            let status = match e.status {
                ChainStatus::Verified => "verified",
                ChainStatus::Assumed => "assumed",
                ChainStatus::Failed => "failed",
            };
            json!({ "name": e.name, "statement": e.statement, "value": e.value, "status": status })
        })
        .collect();
    json!({
        "field": c.field.to_string(),
        "sqrt_minus_one": scalar(&c.sqrt_minus_one),
        "quadric": c.quadric.to_string(),
        "branch_form": c.branch_form.to_string(),
        "quadric_gram": matrix(&c.quadric_gram),
        "branch_gram": matrix(&c.branch_gram),
        "pencil_determinant": det,
        "pencil_coefficients": scalars(&c.pencil),
        "samples": c.samples,
        "max_sample_rank": c.max_sample_rank,
        "profile": profile(&c.profile),
        "chain": chain,
        "valid": c.valid,
    })
}

/// Indented `key: value` lines for `--output text`.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_leaf(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", leaf(val)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(val, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_leaf(item) {
                    out.push_str(&format!("{pad}- {}\n", leaf(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", leaf(other))),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(leaf).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
