//! JSON renderings of core results. Keys are sorted (serde_json's default map) and
//! rationals are always written as `"p/q"` strings.

use num_rational::BigRational;
use serde_json::{json, Value};
use tiling_core::{
    Coset, CosetSystem, PoleProbeParams, PoleReport, RationalGF, SearchResult, SearchSpec, VerificationReport,
    Witness,
};

pub fn rational(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn coset(c: &Coset) -> Value {
    json!({ "n": c.moduli(), "m": c.offset() })
}

pub fn system(s: &CosetSystem) -> Value {
    Value::Array(s.cosets().iter().map(coset).collect())
}

pub fn verification(r: &VerificationReport, lengths: &[u64]) -> Value {
    json!({
        "is_partition": r.is_partition,
        "is_disjoint": r.is_disjoint,
        "density_sum": rational(&r.density_sum),
        "lcm_box": lengths,
        "counterexample": r.counterexample.as_ref().map(|c| json!({ "cell": c.cell, "covers": c.covers })),
    })
}

pub fn identity(holds: bool, sum: &RationalGF) -> Value {
    let terms: Vec<Value> = sum
        .numerator
        .terms()
        .map(|(e, c)| json!({ "exponents": e, "coeff": rational(c) }))
        .collect();
    json!({
        "identity_holds": holds,
        "denominator_exponents": sum.denom_exponents,
        "numerator": terms,
        "numerator_text": sum.numerator.to_string(),
    })
}

pub fn witness(system: &CosetSystem, w: &Witness, cancelers: &[usize]) -> Value {
    let star = &system.cosets()[w.j_star];
    let partner = &system.cosets()[w.j_partner];
    json!({
        "status": "witness_found",
        "j_star": w.j_star,
        "j_partner": w.j_partner,
        "shared_shape": w.shared_shape.moduli(),
        "star_offset": star.offset(),
        "partner_offset": partner.offset(),
        "cancelers": cancelers,
    })
}

pub fn probe_params(p: &PoleProbeParams) -> Value {
    json!({
        "t_max": p.t_max,
        "t_min": p.t_min,
        "samples_per_decade": p.samples_per_decade,
        "directions": p.directions,
        "seed": p.seed,
    })
}

pub fn poles(r: &PoleReport) -> Value {
    json!({
        "point": r.point.to_string(),
        "exact_order": r.exact_order,
        "per_term_orders": r.per_term_orders.iter().map(|&(term, order)| json!({ "term": term, "order": order })).collect::<Vec<_>>(),
        "numeric_estimate": r.numeric_estimate,
        "probe": r.params.as_ref().map(probe_params),
    })
}

pub fn search(spec: &SearchSpec, result: &SearchResult, timing: bool) -> Value {
    let mut stats = json!({
        "nodes": result.stats.nodes,
        "solutions": result.stats.solutions,
        "complete": result.stats.complete,
    });
    if timing {
        stats["wall_time_ms"] = json!(result.stats.wall_time.as_secs_f64() * 1e3);
    }
    json!({
        "spec": {
            "dim": spec.dim,
            "max_n": spec.max_n,
            "distinct_shapes_only": spec.distinct_shapes_only,
            "exclude_trivial": spec.exclude_trivial,
            "max_cosets": spec.max_cosets,
        },
        "solutions": result.solutions.iter().map(system).collect::<Vec<_>>(),
        "stats": stats,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
