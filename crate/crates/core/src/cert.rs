//! Self-checking JSON certificates. Each certificate carries witnesses that
//! [`Certificate::verify`] re-checks from the certificate's own content.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::FqField;
use crate::group::PermGroup;
use crate::matrix::FqMatrix;
use crate::partition::{partition_stabilizer, Parity, SetPartition};
use crate::perm::Permutation;

/// Largest group whose elements a verifier will enumerate.
pub const VERIFY_ORDER_CAP: u64 = 100_000;

/// A permutation group given by generators in cycle notation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupData {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupData {
    pub fn of(group: &PermGroup) -> Self {
        Self {
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_perms(degree: usize, gens: &[Permutation]) -> Self {
        Self {
            degree,
            generators: gens.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn group(&self) -> Result<PermGroup> {
        subgroup(self.degree, &self.generators)
    }
}

fn subgroup(degree: usize, gens: &[String]) -> Result<PermGroup> {
    let perms = gens
        .iter()
        .map(|g| Permutation::parse(g, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(degree, perms)
}

fn element_set(g: &PermGroup) -> Result<HashSet<Permutation>> {
    Ok(g.elements(VERIFY_ORDER_CAP)?.into_iter().collect())
}

/// A term `multiplicity · v (u/v)^c` with `u`, `v` as rational strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermData {
    pub u: String,
    pub v: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The partitions have trivial stabilizer in `S_n` (or `A_n`).
    PartitionBase {
        degree: usize,
        even: bool,
        partitions: Vec<String>,
        base_size: usize,
    },
    /// The generators stabilize every partition and generate a group of the
    /// stated order.
    Stabilizer {
        degree: usize,
        partitions: Vec<String>,
        generators: Vec<String>,
        order: String,
    },
    /// The subgroups lie in the group and intersect exactly in `target`.
    Intersection {
        group: GroupData,
        subgroups: Vec<Vec<String>>,
        target: Vec<String>,
    },
    /// The conjugates `H^g` intersect exactly in `core`, which is normal.
    Conjugates {
        group: GroupData,
        subgroup: Vec<String>,
        conjugators: Vec<String>,
        core: Vec<String>,
    },
    /// Exact re-evaluation of term sums against stated values.
    Qhat {
        c: u32,
        terms: Vec<TermData>,
        value: String,
    },
    /// Matrices over `F_q` that must all be scalar (or all the identity),
    /// pairwise distinct, and `count` in number.
    Survivors {
        q: usize,
        identity_only: bool,
        matrices: Vec<Vec<Vec<u16>>>,
        count: usize,
    },
    /// `value <= bound`, where `bound` is recomputed from the listed
    /// summands.
    Inequality { summands: Vec<u64>, bound: u64, value: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub witness: usize,
    pub description: String,
    pub ok: bool,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Certificate(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl Witness {
    pub fn check(&self) -> Result<Vec<(String, bool)>> {
        let mut out = Vec::new();
        match self {
            Witness::PartitionBase {
                degree,
                even,
                partitions,
                base_size,
            } => {
                let parts = partitions
                    .iter()
                    .map(|p| SetPartition::parse(p))
                    .collect::<Result<Vec<_>>>()?;
                out.push((
                    format!("{} partitions of {degree} points", parts.len()),
                    parts.len() == *base_size && parts.iter().all(|p| p.ground_size() == *degree),
                ));
                let parity = if *even { Parity::Even } else { Parity::All };
                let stab = partition_stabilizer(&parts, parity)?;
                out.push(("stabilizer is trivial".into(), stab.is_trivial()));
            }
            Witness::Stabilizer {
                degree,
                partitions,
                generators,
                order,
            } => {
                let parts = partitions
                    .iter()
                    .map(|p| SetPartition::parse(p))
                    .collect::<Result<Vec<_>>>()?;
                let g = subgroup(*degree, generators)?;
                out.push((
                    "generators stabilize every partition".into(),
                    g.generators()
                        .iter()
                        .all(|x| parts.iter().all(|p| p.is_stabilized_by(x))),
                ));
                out.push((
                    format!("generated group has order {order}"),
                    g.order().to_string() == *order,
                ));
            }
            Witness::Intersection {
                group,
                subgroups,
                target,
            } => {
                let g = group.group()?;
                let mut cur: Option<HashSet<Permutation>> = None;
                for (i, gens) in subgroups.iter().enumerate() {
                    let h = subgroup(group.degree, gens)?;
                    out.push((format!("subgroup {i} lies in the group"), g.contains_group(&h)?));
                    let set = element_set(&h)?;
                    cur = Some(match cur {
                        None => set,
                        Some(c) => c.intersection(&set).cloned().collect(),
                    });
                }
                let t = element_set(&subgroup(group.degree, target)?)?;
                let cur = cur.unwrap_or(element_set(&g)?);
                out.push((format!("intersection has order {}", t.len()), cur == t));
            }
            Witness::Conjugates {
                group,
                subgroup: h,
                conjugators,
                core,
            } => {
                let g = group.group()?;
                let h = subgroup(group.degree, h)?;
                let hset = element_set(&h)?;
                let mut cur = hset.clone();
                for c in conjugators {
                    let x = Permutation::parse(c, group.degree)?;
                    out.push((format!("conjugator {c} lies in the group"), g.contains(&x)?));
                    let xi = x.inverse();
                    let conj: HashSet<Permutation> = hset.iter().map(|y| xi.compose(y).compose(&x)).collect();
                    cur = cur.intersection(&conj).cloned().collect();
                }
                let k = subgroup(group.degree, core)?;
                let kset = element_set(&k)?;
                out.push(("core lies in the subgroup".into(), kset.is_subset(&hset)));
                out.push((
                    "core is normal".into(),
                    g.generators()
                        .iter()
                        .all(|x| k.generators().iter().all(|y| kset.contains(&y.conjugate_by(x)))),
                ));
                out.push((
                    format!("intersection of conjugates has order {}", kset.len()),
                    cur == kset,
                ));
            }
            Witness::Qhat { c, terms, value } => {
                let mut sum = BigRational::zero();
                for t in terms {
                    let (u, v) = (parse_rational(&t.u)?, parse_rational(&t.v)?);
                    if !u.is_zero() {
                        sum += &v * num_traits::pow(&u / &v, *c as usize) * BigInt::from(t.multiplicity);
                    }
                }
                let stated = parse_rational(value)?;
                out.push(("term sum equals the stated value".into(), sum == stated));
                out.push(("stated value is below 1".into(), stated < BigRational::one()));
            }
            Witness::Survivors {
                q,
                identity_only,
                matrices,
                count,
            } => {
                let k = FqField::new(*q)?;
                let ms: Vec<FqMatrix> = matrices.iter().map(|m| FqMatrix::from_rows(m)).collect();
                let distinct: HashSet<&FqMatrix> = ms.iter().collect();
                out.push((
                    format!("{count} distinct survivors"),
                    distinct.len() == *count && ms.len() == *count,
                ));
                let ok = ms.iter().all(|m| {
                    m.rows() == m.cols()
                        && m.scalar_value().is_some_and(|s| s != 0 && (!identity_only || s == 1))
                        && m.inverse(&k).is_some()
                });
                let what = if *identity_only { "identity" } else { "nonzero scalar" };
                out.push((format!("every survivor is {what}"), ok));
            }
            Witness::Inequality { summands, bound, value } => {
                out.push((
                    "bound equals the sum of its terms".into(),
                    summands.iter().sum::<u64>() == *bound,
                ));
                out.push((format!("{value} <= {bound}"), value <= bound));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub command: String,
    pub inputs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// The command's own verdict.
    pub pass: bool,
    pub result: Value,
    pub witnesses: Vec<Witness>,
    /// Wall-clock time; omitted unless requested so that output is
    /// reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Certificate {
    pub fn new(command: &str, inputs: Value, result: Value, pass: bool) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            seed: None,
            pass,
            result,
            witnesses: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    /// Re-checks every witness.
    pub fn verify(&self) -> Result<Vec<Check>> {
        let mut checks = Vec::new();
        for (i, w) in self.witnesses.iter().enumerate() {
            for (description, ok) in w.check()? {
                checks.push(Check {
                    witness: i,
                    description,
                    ok,
                });
            }
        }
        Ok(checks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
