//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON string; errors come back as JS exceptions.

use minbase::bounds::{evaluate_qhat, family_terms, Family};
use minbase::catalog::parse_group_spec;
use minbase::invariants::{alpha, beta};
use minbase::lattice::{Lattice, DEFAULT_ORDER_CAP};
use minbase::partition::{partition_stabilizer, Parity, SetPartition};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// One partition per non-empty line, e.g. `{1,2}|{3,4}`.
pub fn stabilizer_json(text: &str, even: bool) -> Result<String, String> {
    let parts = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(SetPartition::parse)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    if parts.is_empty() {
        return Err("enter at least one partition".into());
    }
    let parity = if even { Parity::Even } else { Parity::All };
    let g = partition_stabilizer(&parts, parity).map_err(|e| e.to_string())?;
    let gens: Vec<String> = g.generators().iter().map(|x| x.to_string()).collect();
    Ok(json!({
        "degree": parts[0].ground_size(),
        "order": g.order().to_string(),
        "is_base": g.is_trivial(),
        "generators": gens,
    })
    .to_string())
}

pub fn invariants_json(spec: &str) -> Result<String, String> {
    let group = parse_group_spec(spec).map_err(|e| e.to_string())?;
    let l = Lattice::new(&group, DEFAULT_ORDER_CAP).map_err(|e| e.to_string())?;
    let a = alpha(&l);
    let b = beta(&l);
    Ok(json!({
        "order": l.order(),
        "subgroups": l.len(),
        "maximal_subgroups": l.maximal_subgroups().len(),
        "frattini_order": a.frattini_order,
        "alpha": a.value,
        "alpha_witness": a.witness_generators,
        "beta": b.value,
        "beta_subgroup_order": b.witness.as_ref().map(|w| w.subgroup_order),
        "beta_conjugators": b.witness.as_ref().map(|w| w.conjugator_perms.clone()),
    })
    .to_string())
}

pub fn qhat_json(family: &str, q: u64, c: u32) -> Result<String, String> {
    let fam = Family::parse(family).ok_or_else(|| format!("unknown family {family:?}"))?;
    let table = family_terms(fam, q).map_err(|e| e.to_string())?;
    let v = evaluate_qhat(&table, c).map_err(|e| e.to_string())?;
    let terms: Vec<_> = table
        .terms
        .iter()
        .map(|t| json!({"label": t.label, "u": t.u.to_string(), "v": t.v.to_string(), "multiplicity": t.multiplicity}))
        .collect();
    Ok(json!({
        "terms": terms,
        "value": v.value.to_string(),
        "approx": v.approx,
        "verdict": v.verdict,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn stabilizer(text: &str, even: bool) -> Result<String, JsValue> {
    js(stabilizer_json(text, even))
}

#[wasm_bindgen]
pub fn invariants(spec: &str) -> Result<String, JsValue> {
    js(invariants_json(spec))
}

#[wasm_bindgen]
pub fn qhat(family: &str, q: u32, c: u32) -> Result<String, JsValue> {
    js(qhat_json(family, q as u64, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn stabilizer_of_pairs() {
        let v = parse(&stabilizer_json("{1,2}|{3,4}\n", false).unwrap());
        assert_eq!(v["order"], "8");
        assert_eq!(v["is_base"], false);
        assert!(stabilizer_json("  \n", false).is_err());
    }

    #[test]
    fn a5_invariants() {
        let v = parse(&invariants_json("A5").unwrap());
        assert_eq!(v["alpha"], 2);
        assert_eq!(v["beta"], 2);
        let q8 = parse(&invariants_json("Q8").unwrap());
        assert!(q8["beta"].is_null());
    }

    #[test]
    fn g2_table() {
        let v = parse(&qhat_json("g2", 9, 3).unwrap());
        assert_eq!(v["verdict"], true);
        assert!(qhat_json("g2", 10, 3).is_err());
    }
}
