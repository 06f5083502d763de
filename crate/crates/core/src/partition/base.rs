//! Bases for `S_ab` (or `A_ab`) acting on partitions into `a` blocks of size `b`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::construct::{construct_bcd_equal, construct_bcd_plus1, construct_bcd_plus2};
use super::refine::{partition_stabilizer, Parity};
use super::{canonicalize, SetPartition};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest `n = ab` for exhaustive search.
pub const EXACT_MAX_N: usize = 12;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Sym,
    Alt,
}

impl Ambient {
    pub fn parity(self) -> Parity {
        match self {
            Ambient::Sym => Parity::All,
            Ambient::Alt => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Upper,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A certified base together with how it was obtained.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseCertificate {
    pub a: usize,
    pub b: usize,
    pub ambient: Ambient,
    pub construction: String,
    pub partitions: Vec<SetPartition>,
    pub stabilizer_order: String,
    pub base_size: usize,
    /// True when `base_size` is proved minimal.
    pub exact: bool,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

fn check_params(a: usize, b: usize) -> Result<()> {
    if b < 2 || a < b || (a, b) == (2, 2) {
        return Err(Error::InvalidParameters(format!(
            "need a >= b >= 2 and (a,b) != (2,2), got ({a},{b})"
        )));
    }
    if a * b > super::refine::MAX_GROUND_SIZE {
        return Err(Error::InvalidParameters(format!("n = {} is too large", a * b)));
    }
    Ok(())
}

/// Can two partitions form a base? (`S_n`: `b >= 3` and `a >= max(8, b+3)`;
/// `A_n`: `b >= 3` and `a >= b + e` with `e = 2` for `b >= 5`, else 3.)
pub fn admits_pair(a: usize, b: usize, ambient: Ambient) -> bool {
    match ambient {
        Ambient::Sym => b >= 3 && a >= (b + 3).max(8),
        Ambient::Alt => b >= 3 && a >= b + if b >= 5 { 2 } else { 3 },
    }
}

/// The base size stated by the theorem for `a >= b >= 2`.
pub fn theorem2_value(a: usize, b: usize, ambient: Ambient) -> Result<usize> {
    if b < 2 || a < b || (a, b) == (2, 2) {
        return Err(Error::InvalidParameters(format!("({a},{b}) outside a >= b >= 2")));
    }
    Ok(if admits_pair(a, b, ambient) {
        2
    } else if (a, b) == (3, 2) && ambient == Ambient::Sym {
        4
    } else {
        3
    })
}

fn certify(partitions: &[SetPartition], ambient: Ambient) -> Result<bool> {
    Ok(partition_stabilizer(partitions, ambient.parity())?.is_trivial())
}

fn random_partition(rng: &mut ChaCha8Rng, a: usize, b: usize) -> SetPartition {
    let mut points: Vec<usize> = (0..a * b).collect();
    points.shuffle(rng);
    SetPartition::new(a * b, points.chunks(b).map(<[usize]>::to_vec).collect()).unwrap()
}

/// Points lying in the same block of every partition can be swapped. One
/// such pair gives a transposition; in the alternating group a class of
/// three twins or two twin pairs give an even element.
fn has_obvious_symmetry(partitions: &[SetPartition], ambient: Ambient) -> bool {
    let labels: Vec<Vec<usize>> = partitions.iter().map(SetPartition::labels).collect();
    let n = partitions[0].ground_size();
    let mut classes: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in 0..n {
        *classes.entry(labels.iter().map(|l| l[x]).collect()).or_default() += 1;
    }
    match ambient {
        Ambient::Sym => classes.values().any(|&c| c >= 2),
        Ambient::Alt => classes.values().any(|&c| c >= 3) || classes.values().filter(|&&c| c >= 2).count() >= 2,
    }
}

/// Random search for `k` partitions (the first one fixed to consecutive
/// blocks) with trivial stabilizer. Returns the witness and the number of
/// trials used.
pub fn random_base_search(
    a: usize,
    b: usize,
    k: usize,
    ambient: Ambient,
    opts: SearchOptions,
) -> Result<Option<(Vec<SetPartition>, u64)>> {
    check_params(a, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let first = SetPartition::consecutive(a, b);
    for trial in 1..=opts.budget {
        let mut family = vec![first.clone()];
        family.extend((1..k).map(|_| random_partition(&mut rng, a, b)));
        if !has_obvious_symmetry(&family, ambient) && certify(&family, ambient)? {
            return Ok(Some((family, trial)));
        }
    }
    Ok(None)
}

/// All partitions of `{0..ab-1}` into `a` blocks of size `b`, as canonical
/// label vectors, with an index.
struct Omega {
    labels: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    a: usize,
    b: usize,
}

impl Omega {
    fn new(a: usize, b: usize) -> Self {
        let n = a * b;
        let mut labels = Vec::new();
        let mut current = vec![0u8; n];
        let mut counts = vec![0usize; a];
        fn rec(
            p: usize,
            used: usize,
            a: usize,
            b: usize,
            current: &mut Vec<u8>,
            counts: &mut Vec<usize>,
            out: &mut Vec<Vec<u8>>,
        ) {
            if p == current.len() {
                out.push(current.clone());
                return;
            }
            for l in 0..(used + 1).min(a) {
                if counts[l] < b {
                    counts[l] += 1;
                    current[p] = l as u8;
                    rec(p + 1, used.max(l + 1), a, b, current, counts, out);
                    counts[l] -= 1;
                }
            }
        }
        rec(0, 0, a, b, &mut current, &mut counts, &mut labels);
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        Self { labels, index, a, b }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    fn partition(&self, i: u32) -> SetPartition {
        let labels: Vec<usize> = self.labels[i as usize].iter().map(|&l| l as usize).collect();
        SetPartition::from_labels(&labels)
    }

    fn act(&self, i: u32, g: &Permutation) -> u32 {
        let src = &self.labels[i as usize];
        let mut img = vec![0usize; src.len()];
        for (x, &l) in src.iter().enumerate() {
            img[g.image(x)] = l as usize;
        }
        self.index[&canonicalize(&img)]
    }

    /// Orbits of the group generated by `gens`, each listed from its least member.
    fn orbits(&self, gens: &[Permutation]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut orbits = Vec::new();
        for start in 0..self.len() as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in gens {
                    let y = self.act(x, g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            orbits.push(orbit);
        }
        orbits
    }
}

struct ExactSearch {
    omega: Omega,
    ambient: Ambient,
    nodes: u64,
}

impl ExactSearch {
    /// A family of at most `k` partitions extending `family` with trivial
    /// stabilizer, trying one partition per orbit of the current stabilizer.
    fn extend(&mut self, family: &mut Vec<SetPartition>, k: usize) -> Result<bool> {
        self.nodes += 1;
        let h = partition_stabilizer(family, self.ambient.parity())?;
        if h.is_trivial() {
            return Ok(true);
        }
        if family.len() >= k {
            return Ok(false);
        }
        let order = h.order().to_usize().unwrap();
        let orbits = self.omega.orbits(h.generators());
        if family.len() + 1 == k {
            if let Some(orbit) = orbits.iter().find(|o| o.len() == order) {
                family.push(self.omega.partition(orbit[0]));
                return Ok(true);
            }
            return Ok(false);
        }
        for orbit in orbits.iter().filter(|o| o.len() > 1) {
            family.push(self.omega.partition(orbit[0]));
            if self.extend(family, k)? {
                return Ok(true);
            }
            family.pop();
        }
        Ok(false)
    }
}

/// Exhaustive minimum for `n = ab <= 12`.
fn exact_small(a: usize, b: usize, ambient: Ambient) -> Result<(Vec<SetPartition>, u64)> {
    let omega = Omega::new(a, b);
    debug_assert_eq!((omega.a, omega.b), (a, b));
    let mut search = ExactSearch {
        omega,
        ambient,
        nodes: 0,
    };
    // Transitivity on partitions lets the first one be fixed.
    for k in 1.. {
        let mut family = vec![SetPartition::consecutive(a, b)];
        if search.extend(&mut family, k)? {
            return Ok((family, search.nodes));
        }
    }
    unreachable!()
}

type Witness = (Vec<SetPartition>, Option<u64>);

/// Search-found witnesses keyed by `(a, b, seed)`.
fn cache() -> &'static Mutex<HashMap<(usize, usize, u64), Witness>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize, u64), Witness>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// A base for `S_ab` on partitions of the size given by the theorem, built
/// by the explicit constructions where they apply and by seeded search
/// otherwise. Every result is certified before it is returned.
pub fn construct_theorem2_base(a: usize, b: usize) -> Result<BaseCertificate> {
    construct_theorem2_base_with(a, b, SearchOptions::default())
}

pub fn construct_theorem2_base_with(a: usize, b: usize, opts: SearchOptions) -> Result<BaseCertificate> {
    check_params(a, b)?;
    let target = theorem2_value(a, b, Ambient::Sym)?;
    let explicit = if b >= 3 && a == b + 2 {
        Some(("plus2", construct_bcd_plus2(a)?.partitions()))
    } else if b >= 3 && a == b + 1 && a >= 5 {
        Some(("plus1", construct_bcd_plus1(a)?.partitions()))
    } else if a == b && a >= 6 {
        Some(("equal", construct_bcd_equal(a)?.partitions()))
    } else {
        None
    };
    // The a = b + 2 triple is not a base at (6,4); fall back to search there.
    let explicit = explicit.filter(|(_, f)| certify(f, Ambient::Sym).unwrap_or(false));
    let (construction, partitions, seed, trials) = match explicit {
        Some((name, f)) => (name.to_string(), f, None, None),
        None => {
            let cached = cache().lock().unwrap().get(&(a, b, opts.seed)).cloned();
            let (family, trials) = match cached {
                Some(w) => w,
                None if a * b <= EXACT_MAX_N => (exact_small(a, b, Ambient::Sym)?.0, None),
                None => match random_base_search(a, b, target, Ambient::Sym, opts)? {
                    Some((f, t)) => (f, Some(t)),
                    None => return Err(Error::SearchExhausted { budget: opts.budget }),
                },
            };
            cache()
                .lock()
                .unwrap()
                .insert((a, b, opts.seed), (family.clone(), trials));
            let kind = if target == 2 { "random pair" } else { "search" };
            (kind.to_string(), family, trials.map(|_| opts.seed), trials)
        }
    };
    let stab = partition_stabilizer(&partitions, Parity::All)?;
    if !stab.is_trivial() {
        return Err(Error::Certificate(format!(
            "{construction} family for ({a},{b}) has stabilizer of order {}",
            stab.order()
        )));
    }
    Ok(BaseCertificate {
        a,
        b,
        ambient: Ambient::Sym,
        construction,
        base_size: partitions.len(),
        exact: false,
        partitions,
        stabilizer_order: "1".into(),
        seed,
        trials,
    })
}

/// Base size of the action on partitions.
///
/// Exact mode searches exhaustively for `n <= 12`. Beyond that it can only
/// succeed when a pair is found, since no single partition is a base.
/// Upper mode starts from the constructed base and looks for smaller
/// families at random, down to the smallest size the theorem allows.
pub fn base_size_partitions(
    a: usize,
    b: usize,
    mode: Mode,
    ambient: Ambient,
    opts: SearchOptions,
) -> Result<BaseCertificate> {
    check_params(a, b)?;
    let n = a * b;
    match mode {
        Mode::Exact if n <= EXACT_MAX_N => {
            let (partitions, nodes) = exact_small(a, b, ambient)?;
            Ok(BaseCertificate {
                a,
                b,
                ambient,
                construction: "exhaustive".into(),
                base_size: partitions.len(),
                partitions,
                stabilizer_order: "1".into(),
                exact: true,
                seed: None,
                trials: Some(nodes),
            })
        }
        Mode::Exact => match random_base_search(a, b, 2, ambient, opts)? {
            Some((partitions, trials)) => Ok(BaseCertificate {
                a,
                b,
                ambient,
                construction: "random pair".into(),
                base_size: 2,
                partitions,
                stabilizer_order: "1".into(),
                exact: true,
                seed: Some(opts.seed),
                trials: Some(trials),
            }),
            None => Err(Error::InvalidParameters(format!(
                "exact mode needs n <= {EXACT_MAX_N} unless a pair is found; none in {} trials",
                opts.budget
            ))),
        },
        Mode::Upper => {
            let mut best = construct_theorem2_base_with(a, b, opts)?;
            best.ambient = ambient;
            let floor = theorem2_value(a, b, ambient)?;
            for k in floor..best.base_size {
                if let Some((partitions, trials)) = random_base_search(a, b, k, ambient, opts)? {
                    best = BaseCertificate {
                        a,
                        b,
                        ambient,
                        construction: format!("random {k}-family"),
                        base_size: k,
                        partitions,
                        stabilizer_order: "1".into(),
                        exact: false,
                        seed: Some(opts.seed),
                        trials: Some(trials),
                    };
                    break;
                }
            }
            if !certify(&best.partitions, ambient)? {
                return Err(Error::Certificate("upper-mode family is not a base".into()));
            }
            Ok(best)
        }
    }
}

/// Stabilizer of a family in the chosen ambient group.
pub fn family_stabilizer(partitions: &[SetPartition], ambient: Ambient) -> Result<PermGroup> {
    partition_stabilizer(partitions, ambient.parity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_sizes() {
        assert_eq!(Omega::new(3, 2).len(), 15);
        assert_eq!(Omega::new(2, 3).len(), 10);
        assert_eq!(Omega::new(3, 3).len(), 280);
    }

    #[test]
    fn theorem_values() {
        assert_eq!(theorem2_value(3, 2, Ambient::Sym).unwrap(), 4);
        assert_eq!(theorem2_value(3, 2, Ambient::Alt).unwrap(), 3);
        assert_eq!(theorem2_value(8, 3, Ambient::Sym).unwrap(), 2);
        assert_eq!(theorem2_value(7, 3, Ambient::Sym).unwrap(), 3);
        assert_eq!(theorem2_value(6, 3, Ambient::Alt).unwrap(), 2);
        assert_eq!(theorem2_value(7, 5, Ambient::Alt).unwrap(), 2);
        assert_eq!(theorem2_value(6, 4, Ambient::Alt).unwrap(), 3);
        assert!(theorem2_value(2, 2, Ambient::Sym).is_err());
    }

    #[test]
    fn exact_three_two() {
        let c = base_size_partitions(3, 2, Mode::Exact, Ambient::Sym, SearchOptions::default()).unwrap();
        assert_eq!(c.base_size, 4);
        let c = base_size_partitions(3, 2, Mode::Exact, Ambient::Alt, SearchOptions::default()).unwrap();
        assert_eq!(c.base_size, 3);
    }

    #[test]
    fn exact_witness_is_minimal() {
        let c = base_size_partitions(4, 2, Mode::Exact, Ambient::Sym, SearchOptions::default()).unwrap();
        assert_eq!(c.base_size, 3);
        assert!(family_stabilizer(&c.partitions, Ambient::Sym).unwrap().is_trivial());
        let shorter = &c.partitions[..c.partitions.len() - 1];
        assert!(!family_stabilizer(shorter, Ambient::Sym).unwrap().is_trivial());
    }

    #[test]
    fn dispatch_examples() {
        assert_eq!(construct_theorem2_base(7, 5).unwrap().construction, "plus2");
        assert_eq!(construct_theorem2_base(5, 2).unwrap().base_size, 3);
        assert_eq!(construct_theorem2_base(6, 3).unwrap().base_size, 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(construct_theorem2_base(2, 2).is_err());
        assert!(construct_theorem2_base(2, 3).is_err());
        assert!(base_size_partitions(5, 3, Mode::Exact, Ambient::Sym, SearchOptions { seed: 1, budget: 5 }).is_err());
    }
}
