use std::path::Path;

use minbase::bounds::{evaluate_qhat, family_terms, qhat_empirical, BoundTermTable, Family};
use minbase::catalog::{parse_group_spec, ALMOST_SIMPLE, SOLUBLE};
use minbase::cert::{Certificate, GroupData, TermData, Witness};
use minbase::classical::{
    orth_field_check, orth_odd_pair_check, sp4_pair_stabilizer, sp4_triple_base_check, OrthVariant,
};
use minbase::invariants::{alpha as alpha_of, base_size_subgroup, beta as beta_of, check_theorem3, theorem4_bound};
use minbase::lattice::Lattice;
use minbase::matrix::FqMatrix;
use minbase::partition::base::{base_size_partitions, construct_theorem2_base_with, SearchOptions};
use minbase::partition::{partition_stabilizer, theorem2_value, Ambient, BaseCertificate, Mode, Parity, SetPartition};
use minbase::{Error, PermGroup, Result};
use serde_json::{json, Value};

use crate::{Global, ModeArg};

fn opts(g: &Global) -> SearchOptions {
    SearchOptions {
        seed: g.seed,
        budget: g.budget,
    }
}

fn ambient(alt: bool) -> Ambient {
    if alt {
        Ambient::Alt
    } else {
        Ambient::Sym
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn partition_witness(c: &BaseCertificate) -> Witness {
    Witness::PartitionBase {
        degree: c.a * c.b,
        even: c.ambient == Ambient::Alt,
        partitions: strings(&c.partitions),
        base_size: c.base_size,
    }
}

fn base_result(c: &BaseCertificate, theorem: usize) -> Value {
    json!({
        "base_size": c.base_size,
        "theorem_value": theorem,
        "exact": c.exact,
        "construction": c.construction,
        "partitions": strings(&c.partitions),
        "stabilizer_order": c.stabilizer_order,
        "trials": c.trials,
    })
}

pub fn partition_base(a: usize, b: usize, alt: bool, g: &Global) -> Result<Certificate> {
    let amb = ambient(alt);
    let theorem = theorem2_value(a, b, amb)?;
    let cert = match amb {
        Ambient::Sym => construct_theorem2_base_with(a, b, opts(g))?,
        Ambient::Alt => base_size_partitions(a, b, Mode::Upper, amb, opts(g))?,
    };
    let mut out = Certificate::new(
        "partition-base",
        json!({"a": a, "b": b, "ambient": amb}),
        base_result(&cert, theorem),
        cert.base_size == theorem,
    )
    .with_witness(partition_witness(&cert));
    out.seed = Some(g.seed);
    Ok(out)
}

pub fn base_size(a: usize, b: usize, mode: ModeArg, alt: bool, g: &Global) -> Result<Certificate> {
    let amb = ambient(alt);
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Upper => Mode::Upper,
    };
    let theorem = theorem2_value(a, b, amb)?;
    let cert = base_size_partitions(a, b, mode, amb, opts(g))?;
    // An exact value must agree with the theorem; an upper bound may not
    // undercut it.
    let pass = match mode {
        Mode::Exact => cert.base_size == theorem,
        Mode::Upper => cert.base_size >= theorem,
    };
    let mut out = Certificate::new(
        "base-size",
        json!({"a": a, "b": b, "mode": mode, "ambient": amb}),
        base_result(&cert, theorem),
        pass,
    )
    .with_witness(partition_witness(&cert));
    out.seed = Some(g.seed);
    Ok(out)
}

pub fn stabilizer(partitions: &[String], even: bool) -> Result<Certificate> {
    let parts = partitions
        .iter()
        .map(|p| SetPartition::parse(p))
        .collect::<Result<Vec<_>>>()?;
    let parity = if even { Parity::Even } else { Parity::All };
    let stab = partition_stabilizer(&parts, parity)?;
    let degree = parts[0].ground_size();
    let gens = strings(stab.generators());
    Ok(Certificate::new(
        "stabilizer",
        json!({"partitions": strings(&parts), "even": even}),
        json!({"order": stab.order().to_string(), "generators": gens}),
        true,
    )
    .with_witness(Witness::Stabilizer {
        degree,
        partitions: strings(&parts),
        generators: gens,
        order: stab.order().to_string(),
    }))
}

fn lattice_for(spec: &str, g: &Global) -> Result<(PermGroup, Lattice)> {
    let group = parse_group_spec(spec)?;
    let lattice = Lattice::new(&group, g.cap)?;
    Ok((group, lattice))
}

fn subgroup_strings(l: &Lattice, h: usize) -> Vec<String> {
    strings(&l.subgroup(h).generator_perms(l.table()))
}

fn alpha_witness(group: &PermGroup, l: &Lattice, witness: &[Vec<String>], frat: usize) -> Witness {
    Witness::Intersection {
        group: GroupData::of(group),
        subgroups: witness.to_vec(),
        target: subgroup_strings(l, frat),
    }
}

pub fn alpha(spec: &str, g: &Global) -> Result<Certificate> {
    let (group, l) = lattice_for(spec, g)?;
    let a = alpha_of(&l);
    let ok = a.verify(&l);
    Ok(Certificate::new(
        "alpha",
        json!({"spec": spec}),
        json!({
            "order": l.order(),
            "alpha": a.value,
            "frattini_order": a.frattini_order,
            "maximal_subgroups": l.maximal_subgroups().len(),
            "states_explored": a.states_explored,
        }),
        ok,
    )
    .with_witness(alpha_witness(&group, &l, &a.witness_generators, a.frattini)))
}

pub fn beta(spec: &str, g: &Global) -> Result<Certificate> {
    let (group, l) = lattice_for(spec, g)?;
    let a = alpha_of(&l);
    let b = beta_of(&l);
    let mut ok = a.verify(&l) && b.witness.as_ref().is_none_or(|w| w.verify(&l));
    let almost_simple = ALMOST_SIMPLE.contains(&spec);
    let mut assertions = Vec::new();
    if almost_simple {
        let checks = [
            ("alpha <= 3", a.value <= 3),
            ("beta <= 4", b.value.is_some_and(|v| v <= 4)),
            ("beta - alpha <= 1", b.value.is_some_and(|v| v <= a.value + 1)),
        ];
        for (name, holds) in checks {
            ok &= holds;
            assertions.push(json!({"assertion": name, "holds": holds}));
        }
    }
    let mut cert = Certificate::new(
        "beta",
        json!({"spec": spec}),
        json!({
            "order": l.order(),
            "alpha": a.value,
            "beta": b.value.map_or(json!("infinity"), |v| json!(v)),
            "m_star_size": b.m_star_size,
            "m_star_classes": b.m_star_classes,
            "almost_simple": almost_simple,
            "assertions": assertions,
        }),
        ok,
    )
    .with_witness(alpha_witness(&group, &l, &a.witness_generators, a.frattini));
    if let Some(w) = &b.witness {
        cert = cert.with_witness(Witness::Conjugates {
            group: GroupData::of(&group),
            subgroup: subgroup_strings(&l, w.subgroup),
            conjugators: w.conjugator_perms.clone(),
            core: subgroup_strings(&l, w.core),
        });
    }
    Ok(cert)
}

/// `lo..hi` (inclusive) or a comma-separated list.
fn parse_grid(grid: &str) -> Result<(Vec<u64>, bool)> {
    let bad = || Error::InvalidParameters(format!("bad q grid {grid:?}"));
    if let Some((lo, hi)) = grid.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi || hi - lo > 100_000 {
            return Err(bad());
        }
        Ok(((lo..=hi).collect(), true))
    } else {
        let qs = grid
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect::<Result<Vec<u64>>>()?;
        Ok((qs, false))
    }
}

fn qhat_witness(table: &BoundTermTable, c: u32, value: String) -> Witness {
    Witness::Qhat {
        c,
        terms: table
            .terms
            .iter()
            .map(|t| TermData {
                u: t.u.to_string(),
                v: t.v.to_string(),
                multiplicity: t.multiplicity,
            })
            .collect(),
        value,
    }
}

pub fn qhat_family(family: &str, grid: &str, c: u32) -> Result<Certificate> {
    let fam = Family::parse(family)
        .ok_or_else(|| Error::InvalidParameters(format!("unknown family {family:?} (g2, sp4, o10)")))?;
    let (qs, is_range) = parse_grid(grid)?;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;
    for q in qs {
        let table = match family_terms(fam, q) {
            Ok(t) => t,
            Err(_) if is_range => continue,
            Err(e) => return Err(e),
        };
        let v = evaluate_qhat(&table, c)?;
        pass &= v.verdict;
        rows.push(json!({
            "q": q,
            "value": v.value.to_string(),
            "approx": v.approx,
            "verdict": v.verdict,
            "gamma": table.gamma,
        }));
        if v.verdict {
            witnesses.push(qhat_witness(&table, c, v.value.to_string()));
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidParameters(format!("no valid q in {grid:?} for {family}")));
    }
    let mut cert = Certificate::new(
        "qhat",
        json!({"family": fam, "q": grid, "c": c}),
        json!({"rows": rows}),
        pass,
    );
    cert.witnesses = witnesses;
    Ok(cert)
}

/// Q̂ for each class of maximal subgroups of a concrete group, compared with
/// the true base size.
pub fn qhat_group(spec: &str, c: u32, g: &Global) -> Result<Certificate> {
    let (_, l) = lattice_for(spec, g)?;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    let mut pass = true;
    for h in l.class_representatives(l.maximal_subgroups()) {
        let e = qhat_empirical(&l, h, c)?;
        let b = base_size_subgroup(&l, h)?;
        // Q̂ < 1 forces b <= c.
        let consistent = !e.qhat.verdict || b.value <= c as usize;
        pass &= consistent;
        rows.push(json!({
            "subgroup_order": e.subgroup_order,
            "core_order": b.core_order,
            "value": e.qhat.value.to_string(),
            "approx": e.qhat.approx,
            "verdict": e.qhat.verdict,
            "base_size": b.value,
            "consistent": consistent,
        }));
        if e.qhat.verdict {
            witnesses.push(qhat_witness(&e.table, c, e.qhat.value.to_string()));
        }
    }
    let mut cert = Certificate::new("qhat", json!({"spec": spec, "c": c}), json!({"rows": rows}), pass);
    cert.witnesses = witnesses;
    Ok(cert)
}

fn matrices(ms: &[FqMatrix]) -> Vec<Vec<Vec<u16>>> {
    ms.iter().map(FqMatrix::to_rows).collect()
}

pub fn sp4(q: usize, triple: bool) -> Result<Certificate> {
    let pair = sp4_pair_stabilizer(q)?;
    let witness = Witness::Survivors {
        q,
        identity_only: false,
        matrices: matrices(&pair.survivors),
        count: pair.survivors.len(),
    };
    if triple {
        let t = sp4_triple_base_check(q)?;
        return Ok(Certificate::new(
            "sp4",
            json!({"q": q, "triple": true}),
            serde_json::to_value(&t)?,
            t.pass,
        )
        .with_witness(witness));
    }
    Ok(Certificate::new(
        "sp4",
        json!({"q": q, "triple": false}),
        json!({
            "candidates": pair.candidates,
            "survivors": pair.survivors.len(),
            "expected": q - 1,
            "all_scalar": pair.all_scalar,
            "closed_under_product": pair.closed_under_product,
            "form_violations": pair.form_violations,
        }),
        pair.pass(),
    )
    .with_witness(witness))
}

pub fn orth(n: usize, q: usize) -> Result<Certificate> {
    let (m, variant) = match n % 4 {
        1 if n >= 5 => ((n - 1) / 4, OrthVariant::OneMod4),
        3 if n >= 7 => ((n - 3) / 4, OrthVariant::ThreeMod4),
        _ => {
            return Err(Error::InvalidParameters(format!(
                "n = {n}: need odd n >= 5 (n = 1 mod 4) or n >= 7 (n = 3 mod 4)"
            )))
        }
    };
    let prime = (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d)) && q > 2;
    if prime {
        let r = orth_odd_pair_check(n, q)?;
        return Ok(Certificate::new(
            "orth",
            json!({"n": n, "q": q, "check": "pair"}),
            json!({
                "isometries_u": r.isometries_u,
                "isometries_complement": r.isometries_complement,
                "stabilizer_u": r.stabilizer_u,
                "survivors": r.survivors.len(),
                "form_violations": r.form_violations,
            }),
            r.pass,
        )
        .with_witness(Witness::Survivors {
            q,
            identity_only: true,
            matrices: matrices(&r.survivors),
            count: r.survivors.len(),
        }));
    }
    let r = orth_field_check(m, variant, q)?;
    Ok(Certificate::new(
        "orth",
        json!({"n": n, "q": q, "check": "field"}),
        serde_json::to_value(&r)?,
        r.pass,
    ))
}

pub fn soluble(spec: Option<&str>, catalog: bool, g: &Global) -> Result<Certificate> {
    let specs: Vec<&str> = match (spec, catalog) {
        (Some(s), _) => vec![s],
        (None, _) => SOLUBLE.iter().map(|(s, _)| *s).collect(),
    };
    let mut rows = Vec::new();
    let mut cert = Certificate::new("soluble", json!({"specs": specs}), Value::Null, true);
    for s in &specs {
        let (group, l) = lattice_for(s, g)?;
        let r = check_theorem3(&l)?;
        let a = alpha_of(&l);
        cert.pass &= r.pass && a.verify(&l);
        cert = cert
            .with_witness(alpha_witness(&group, &l, &a.witness_generators, a.frattini))
            .with_witness(Witness::Inequality {
                summands: vec![r.lambda as u64],
                bound: r.lambda as u64,
                value: r.alpha as u64,
            });
        if r.alpha_le_delta.is_some() {
            cert = cert.with_witness(Witness::Inequality {
                summands: vec![r.delta as u64],
                bound: r.delta as u64,
                value: r.alpha as u64,
            });
        }
        let mut row = serde_json::to_value(&r)?;
        row["spec"] = json!(s);
        rows.push(row);
    }
    cert.result = json!({"groups": rows});
    Ok(cert)
}

pub fn theorem4(spec: &str, g: &Global) -> Result<Certificate> {
    let (group, l) = lattice_for(spec, g)?;
    let r = theorem4_bound(&l);
    let a = alpha_of(&l);
    let mut summands: Vec<u64> = r
        .abelian
        .iter()
        .filter(|c| c.minimal_normal)
        .map(|c| (c.delta + c.dim_over_endomorphisms) as u64)
        .collect();
    summands.extend(
        r.nonabelian
            .iter()
            .map(|c| (c.delta.max(4) + (3 * c.composition_length - 1) / 2) as u64),
    );
    Ok(Certificate::new(
        "theorem4",
        json!({"spec": spec}),
        serde_json::to_value(&r)?,
        r.pass && a.verify(&l),
    )
    .with_witness(alpha_witness(&group, &l, &a.witness_generators, a.frattini))
    .with_witness(Witness::Inequality {
        summands,
        bound: r.bound as u64,
        value: r.alpha as u64,
    }))
}

/// Re-checks a certificate. True when every witness check holds and the
/// certificate claims a pass.
pub fn verify(file: &Path, as_json: bool) -> Result<bool> {
    let text = std::fs::read_to_string(file)?;
    let cert = Certificate::from_json(&text)?;
    let checks = cert.verify()?;
    let all = checks.iter().all(|c| c.ok);
    let ok = all && cert.pass;
    if as_json {
        let out = json!({"command": cert.command, "claimed_pass": cert.pass, "checks": checks, "verified": ok});
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for c in &checks {
            println!(
                "[{}] witness {}: {}",
                if c.ok { "ok" } else { "FAIL" },
                c.witness,
                c.description
            );
        }
        println!(
            "{}: {} checks, certificate claims {}",
            if ok { "verified" } else { "not verified" },
            checks.len(),
            if cert.pass { "pass" } else { "fail" }
        );
    }
    Ok(ok)
}

pub fn catalog(as_json: bool) {
    let order = |s: &str| parse_group_spec(s).map(|g| g.order().to_string()).unwrap_or_default();
    let almost: Vec<Value> = ALMOST_SIMPLE
        .iter()
        .map(|s| json!({"spec": s, "order": order(s)}))
        .collect();
    let soluble: Vec<Value> = SOLUBLE
        .iter()
        .map(|(s, nil)| json!({"spec": s, "order": order(s), "nilpotent": nil}))
        .collect();
    if as_json {
        let out = json!({"almost_simple": almost, "soluble": soluble});
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        return;
    }
    println!("almost simple:");
    for v in &almost {
        println!(
            "  {:<8} order {}",
            v["spec"].as_str().unwrap_or(""),
            v["order"].as_str().unwrap_or("")
        );
    }
    println!("soluble:");
    for v in &soluble {
        println!(
            "  {:<8} order {:<4} {}",
            v["spec"].as_str().unwrap_or(""),
            v["order"].as_str().unwrap_or(""),
            if v["nilpotent"] == json!(true) { "nilpotent" } else { "" }
        );
    }
    println!(
        "also: S<n>, A<n>, C<n>, C<p>^k, D<2n>, Q<4m>, F20, F21, SL23, L27, PGL27, wr(b,a), GxH, or a generator file"
    );
}

fn print_value(prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        println!("{prefix}{k}:");
                        print_value(&format!("{prefix}  "), x);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        println!("{prefix}{k}:");
                        for item in items {
                            println!("{prefix}  -");
                            print_value(&format!("{prefix}    "), item);
                        }
                    }
                    _ => println!("{prefix}{k}: {}", scalar(x)),
                }
            }
        }
        _ => println!("{prefix}{}", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn print_human(cert: &Certificate) {
    println!("{}", cert.command);
    print_value("  ", &cert.inputs);
    if let Some(seed) = cert.seed {
        println!("  seed: {seed}");
    }
    print_value("  ", &cert.result);
    println!("  witnesses: {}", cert.witnesses.len());
    if let Some(ms) = cert.elapsed_ms {
        println!("  elapsed: {ms} ms");
    }
    println!("{}", if cert.pass { "PASS" } else { "FAIL" });
}
