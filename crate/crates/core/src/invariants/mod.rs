//! Intersection numbers, base sizes of maximal subgroups, and the chief
//! factor bounds for the intersection number.

mod module;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{ElemId, Lattice};

pub use module::FpModule;

/// `α(G)` with a witness family of maximal subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaCertificate {
    pub value: usize,
    /// Lattice indices of the witness maximals.
    pub witness: Vec<usize>,
    /// Generators of each witness subgroup, in cycle notation.
    pub witness_generators: Vec<Vec<String>>,
    pub frattini: usize,
    pub frattini_order: usize,
    /// The breadth-first search visits every intersection of fewer maximals,
    /// so the value is always proved minimal.
    pub proved_minimal: bool,
    pub states_explored: usize,
}

impl AlphaCertificate {
    /// Recomputes the witness intersection and checks it is the Frattini
    /// subgroup.
    pub fn verify(&self, lattice: &Lattice) -> bool {
        let maximals = lattice.maximal_subgroups();
        let mut cur = lattice.whole();
        for &m in &self.witness {
            if !maximals.contains(&m) {
                return false;
            }
            cur = lattice.intersect(cur, m);
        }
        self.witness.len() == self.value && cur == lattice.frattini()
    }
}

fn generator_strings(lattice: &Lattice, h: usize) -> Vec<String> {
    lattice
        .subgroup(h)
        .generator_perms(lattice.table())
        .iter()
        .map(|g| g.to_string())
        .collect()
}

/// Exact intersection number: the fewest maximal subgroups whose
/// intersection is the Frattini subgroup.
pub fn alpha(lattice: &Lattice) -> AlphaCertificate {
    let frat = lattice.frattini();
    let whole = lattice.whole();
    let maximals = lattice.maximal_subgroups();
    // parent[state] = (previous state, maximal added)
    let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut frontier = Vec::new();
    let mut found = (frat == whole).then_some(whole);
    // Conjugating a family moves its first member to a class representative
    // and leaves the (normal) Frattini subgroup fixed.
    for m in lattice.class_representatives(maximals) {
        parent.entry(m).or_insert((whole, m));
        frontier.push(m);
        if m == frat {
            found = Some(m);
        }
    }
    while found.is_none() {
        let mut next = Vec::new();
        'outer: for &s in &frontier {
            for &m in maximals {
                let t = lattice.intersect(s, m);
                if t != s && !parent.contains_key(&t) {
                    parent.insert(t, (s, m));
                    next.push(t);
                    if t == frat {
                        found = Some(t);
                        break 'outer;
                    }
                }
            }
        }
        frontier = next;
    }
    let mut witness = Vec::new();
    let mut cur = found.unwrap();
    while cur != whole {
        let (prev, m) = parent[&cur];
        witness.push(m);
        cur = prev;
    }
    witness.reverse();
    AlphaCertificate {
        value: witness.len(),
        witness_generators: witness.iter().map(|&m| generator_strings(lattice, m)).collect(),
        witness,
        frattini: frat,
        frattini_order: lattice.subgroup(frat).order,
        proved_minimal: true,
        states_explored: parent.len(),
    }
}

/// `b(G,H)` for a maximal subgroup `H`, with conjugating elements.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupBaseCertificate {
    pub subgroup: usize,
    pub subgroup_order: usize,
    pub core: usize,
    pub core_order: usize,
    pub value: usize,
    /// Element ids `g_1 = 1, g_2, ...` with `⋂ H^{g_i}` equal to the core.
    pub conjugators: Vec<ElemId>,
    pub conjugator_perms: Vec<String>,
}

impl SubgroupBaseCertificate {
    pub fn verify(&self, lattice: &Lattice) -> bool {
        let mut cur = lattice.whole();
        for &g in &self.conjugators {
            cur = lattice.intersect(cur, lattice.conjugate(self.subgroup, g));
        }
        self.conjugators.len() == self.value && cur == lattice.core(self.subgroup)
    }
}

/// Minimal number of conjugates of the maximal subgroup `h` intersecting in
/// its core.
pub fn base_size_subgroup(lattice: &Lattice, h: usize) -> Result<SubgroupBaseCertificate> {
    if !lattice.maximal_subgroups().contains(&h) {
        return Err(Error::NotMaximal);
    }
    let core = lattice.core(h);
    let conjugates = lattice.conjugates(h);
    let mut parent: HashMap<usize, (usize, ElemId)> = HashMap::from([(h, (usize::MAX, 0))]);
    let mut frontier = vec![h];
    let mut found = (h == core).then_some(h);
    while found.is_none() {
        let mut next = Vec::new();
        'outer: for &s in &frontier {
            for &(c, g) in &conjugates {
                let t = lattice.intersect(s, c);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert((s, g));
                    next.push(t);
                    if t == core {
                        found = Some(t);
                        break 'outer;
                    }
                }
            }
        }
        frontier = next;
    }
    let mut conjugators = Vec::new();
    let mut cur = found.unwrap();
    loop {
        let (prev, g) = parent[&cur];
        conjugators.push(g);
        if prev == usize::MAX {
            break;
        }
        cur = prev;
    }
    conjugators.reverse();
    let table = lattice.table();
    Ok(SubgroupBaseCertificate {
        subgroup: h,
        subgroup_order: lattice.subgroup(h).order,
        core,
        core_order: lattice.subgroup(core).order,
        value: conjugators.len(),
        conjugator_perms: conjugators.iter().map(|&g| table.element(g).to_string()).collect(),
        conjugators,
    })
}

/// `β(G)`; `value` is `None` when no maximal subgroup has core equal to the
/// Frattini subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct BetaCertificate {
    pub value: Option<usize>,
    pub witness: Option<SubgroupBaseCertificate>,
    /// Number of maximal subgroups with core equal to the Frattini subgroup.
    pub m_star_size: usize,
    pub m_star_classes: usize,
}

pub fn beta(lattice: &Lattice) -> BetaCertificate {
    let frat = lattice.frattini();
    let m_star: Vec<usize> = lattice
        .maximal_subgroups()
        .iter()
        .copied()
        .filter(|&m| lattice.core(m) == frat)
        .collect();
    let reps = lattice.class_representatives(&m_star);
    let witness = reps
        .iter()
        .map(|&h| base_size_subgroup(lattice, h).expect("maximal"))
        .min_by_key(|c| c.value);
    BetaCertificate {
        value: witness.as_ref().map(|c| c.value),
        witness,
        m_star_size: m_star.len(),
        m_star_classes: reps.len(),
    }
}

/// `α ≤ λ` for soluble groups, and `α ≤ δ` when the derived subgroup is
/// nilpotent.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem3Report {
    pub order: usize,
    pub alpha: usize,
    pub lambda: usize,
    pub delta: usize,
    /// Chief length of `G / Frat(G)`.
    pub lambda_mod_frattini: usize,
    pub nilpotent: bool,
    pub derived_nilpotent: bool,
    pub alpha_le_lambda: bool,
    /// Checked only when the derived subgroup is nilpotent.
    pub alpha_le_delta: Option<bool>,
    pub pass: bool,
}

pub fn check_theorem3(lattice: &Lattice) -> Result<Theorem3Report> {
    if !lattice.is_soluble() {
        return Err(Error::NotSoluble);
    }
    let series = lattice.chief_series();
    let a = alpha(lattice).value;
    let (lambda, delta) = (series.lambda(), series.delta());
    let derived_nilpotent = lattice.is_nilpotent_subgroup(lattice.derived_subgroup_of(lattice.whole()));
    let alpha_le_delta = derived_nilpotent.then_some(a <= delta);
    Ok(Theorem3Report {
        order: lattice.order(),
        alpha: a,
        lambda,
        delta,
        lambda_mod_frattini: lattice.chief_series_between(lattice.whole(), lattice.frattini()).len() - 1,
        nilpotent: lattice.is_nilpotent(),
        derived_nilpotent,
        alpha_le_lambda: a <= lambda,
        alpha_le_delta,
        pass: a <= lambda && alpha_le_delta != Some(false),
    })
}

/// An equivalence class of abelian non-Frattini chief factors.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianClass {
    pub prime: u64,
    /// Dimension over the prime field.
    pub dimension: usize,
    /// Number of non-Frattini chief factors in the class.
    pub delta: usize,
    /// Degree of `End_G(A)` over the prime field.
    pub endomorphism_degree: usize,
    pub dim_over_endomorphisms: usize,
    /// Is the class represented by a minimal normal subgroup of `G/Frat(G)`?
    pub minimal_normal: bool,
}

/// A non-abelian non-Frattini chief factor, each taken as its own class.
#[derive(Clone, Debug, Serialize)]
pub struct NonabelianClass {
    pub order: usize,
    pub delta: usize,
    pub composition_length: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem4Report {
    pub abelian: Vec<AbelianClass>,
    pub nonabelian: Vec<NonabelianClass>,
    /// Sum over abelian classes represented in `G/Frat(G)` plus all
    /// non-abelian factors.
    pub bound: usize,
    /// The same sum taken over every abelian class.
    pub bound_all_classes: usize,
    /// `Σ (δ + 3)` over the abelian classes, for soluble groups.
    pub soluble_bound: Option<usize>,
    pub alpha: usize,
    pub pass: bool,
}

pub fn theorem4_bound(lattice: &Lattice) -> Theorem4Report {
    let series = lattice.chief_series();
    let frat = lattice.frattini();
    let minimal: Vec<FpModule> = lattice
        .minimal_normal_above(frat)
        .into_iter()
        .filter(|&n| lattice.quotient_is_abelian(n, frat))
        .map(|n| FpModule::from_chief_factor(lattice, n, frat))
        .collect();

    let mut classes: Vec<(FpModule, usize)> = Vec::new();
    let mut nonabelian = Vec::new();
    for f in series.factors.iter().filter(|f| f.non_frattini) {
        if !f.abelian {
            nonabelian.push(NonabelianClass {
                order: f.order,
                delta: 1,
                composition_length: f.composition_length,
            });
            continue;
        }
        let m = FpModule::from_chief_factor(lattice, f.upper, f.lower);
        match classes.iter_mut().find(|(c, _)| c.is_isomorphic(&m)) {
            Some((_, count)) => *count += 1,
            None => classes.push((m, 1)),
        }
    }
    let abelian: Vec<AbelianClass> = classes
        .iter()
        .map(|(m, delta)| {
            let e = m.endomorphism_degree();
            AbelianClass {
                prime: m.prime,
                dimension: m.dim,
                delta: *delta,
                endomorphism_degree: e,
                dim_over_endomorphisms: m.dim / e,
                minimal_normal: minimal.iter().any(|n| n.is_isomorphic(m)),
            }
        })
        .collect();

    let nonab_sum: usize = nonabelian
        .iter()
        .map(|c| c.delta.max(4) + (3 * c.composition_length - 1) / 2)
        .sum();
    let ab_term = |c: &AbelianClass| c.delta + c.dim_over_endomorphisms;
    let bound = abelian.iter().filter(|c| c.minimal_normal).map(ab_term).sum::<usize>() + nonab_sum;
    let bound_all_classes = abelian.iter().map(ab_term).sum::<usize>() + nonab_sum;
    let soluble_bound = lattice
        .is_soluble()
        .then(|| abelian.iter().filter(|c| c.minimal_normal).map(|c| c.delta + 3).sum());
    let a = alpha(lattice).value;
    Theorem4Report {
        abelian,
        nonabelian,
        bound,
        bound_all_classes,
        soluble_bound,
        alpha: a,
        pass: a <= bound,
    }
}

/// Distinct subgroups reachable as intersections of conjugates of `h`
/// (including `h`); used by tests as an independent cross-check.
#[cfg(test)]
fn conjugate_intersections(lattice: &Lattice, h: usize) -> std::collections::HashSet<usize> {
    let conj: Vec<usize> = lattice.conjugates(h).into_iter().map(|(c, _)| c).collect();
    let mut seen = std::collections::HashSet::from([h]);
    let mut stack = vec![h];
    while let Some(s) = stack.pop() {
        for &c in &conj {
            let t = lattice.intersect(s, c);
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    seen
}
