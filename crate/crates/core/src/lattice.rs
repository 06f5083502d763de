//! Exhaustive subgroup lattices of small permutation groups.
//!
//! Every element of the ambient group gets an integer id (its index in the
//! lexicographically sorted element list, so the identity is id 0), and
//! subgroups are bitsets over those ids.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub type ElemId = u32;

/// Default and hard limits on the ambient group order.
pub const DEFAULT_ORDER_CAP: u64 = 1000;
pub const HARD_ORDER_CAP: u64 = 2000;

/// Set of element ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i as ElemId);
        }
        s
    }

    #[inline]
    pub fn contains(&self, x: ElemId) -> bool {
        self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: ElemId) -> bool {
        let w = &mut self.words[(x / 64) as usize];
        let bit = 1u64 << (x % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros();
                w &= w - 1;
                Some(k as ElemId * 64 + t)
            })
        })
    }
}

/// Enumerated elements of a group with a full multiplication table.
#[derive(Clone, Debug)]
pub struct ElementTable {
    group: PermGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElemId>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    gen_ids: Vec<ElemId>,
}

impl ElementTable {
    pub fn new(group: &PermGroup, cap: u64) -> Result<Self> {
        let cap = cap.min(HARD_ORDER_CAP);
        let mut elements = group.elements(cap)?;
        elements.sort();
        let n = elements.len();
        let index: HashMap<Permutation, ElemId> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as ElemId))
            .collect();
        let gen_ids: Vec<ElemId> = group.generators().iter().map(|g| index[g]).collect();

        // Right multiplication by each generator, then a spanning tree of
        // words so every product is a chain of table lookups.
        let right: Vec<Vec<u16>> = group
            .generators()
            .iter()
            .map(|s| elements.iter().map(|e| index[&e.compose(s)] as u16).collect())
            .collect();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut order = vec![0usize];
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (k, r) in right.iter().enumerate() {
                let y = r[x] as usize;
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = Some((x, k));
                    order.push(y);
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            mul[i * n] = i as u16;
            for &j in &order[1..] {
                let (pj, k) = parent[j].unwrap();
                mul[i * n + j] = right[k][mul[i * n + pj] as usize];
            }
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        Ok(Self {
            group: group.clone(),
            elements,
            index,
            mul,
            inv,
            gen_ids,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: ElemId) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, g: &Permutation) -> Option<ElemId> {
        self.index.get(g).copied()
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.gen_ids
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul[a as usize * self.elements.len() + b as usize] as ElemId
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a as usize] as ElemId
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: ElemId, g: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: ElemId, y: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: ElemId) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by the given ids, as a sorted element list.
    pub fn closure(&self, gens: &[ElemId]) -> ElementSet {
        self.extend_closure(&ElementSet::from_ids(self.len(), &[0]), &[0], gens)
    }

    /// Subgroup generated by a closed set `base` (generated by `base_gens`)
    /// and extra generators.
    fn extend_closure(&self, base: &ElementSet, base_gens: &[ElemId], extra: &[ElemId]) -> ElementSet {
        let gens: Vec<ElemId> = base_gens.iter().chain(extra).copied().filter(|&g| g != 0).collect();
        let mut set = base.clone();
        let mut queue: Vec<ElemId> = set.iter().collect();
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in &gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    pub fn conjugate_set(&self, set: &ElementSet, g: ElemId) -> ElementSet {
        let mut out = ElementSet::empty(self.len());
        for x in set.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    pub fn is_normalized_by(&self, set: &ElementSet, gens: &[ElemId]) -> bool {
        gens.iter().all(|&g| set.iter().all(|x| set.contains(self.conj(x, g))))
    }

    /// Conjugacy classes of elements, each sorted, ordered by least id.
    pub fn conjugacy_classes(&self) -> Vec<Vec<ElemId>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n as ElemId {
            if seen[x as usize] {
                continue;
            }
            seen[x as usize] = true;
            let mut class = vec![x];
            let mut head = 0;
            while head < class.len() {
                let y = class[head];
                head += 1;
                for &g in &self.gen_ids {
                    let z = self.conj(y, g);
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        class.push(z);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Subgroup generated by all commutators `[a, b]`, `a ∈ a_set`, `b ∈ b_set`.
    pub fn commutator_subgroup(&self, a_set: &ElementSet, b_set: &ElementSet) -> ElementSet {
        let mut gens = ElementSet::empty(self.len());
        for a in a_set.iter() {
            for b in b_set.iter() {
                gens.insert(self.commutator(a, b));
            }
        }
        let ids: Vec<ElemId> = gens.iter().collect();
        self.closure(&ids)
    }

    /// A short generating list for `set` (greedy: add the least element not
    /// yet generated).
    pub fn generators_of(&self, set: &ElementSet) -> Vec<ElemId> {
        let mut gens = Vec::new();
        let mut current = ElementSet::from_ids(self.len(), &[0]);
        for x in set.iter() {
            if !current.contains(x) {
                gens.push(x);
                current = self.extend_closure(&current, &gens[..gens.len() - 1], &[x]);
            }
        }
        gens
    }

    pub fn to_perm_group(&self, set: &ElementSet) -> PermGroup {
        let gens = self
            .generators_of(set)
            .into_iter()
            .map(|i| self.element(i).clone())
            .collect();
        PermGroup::from_generators(self.group.degree(), gens).unwrap()
    }
}

impl ElementSet {
    pub fn from_ids(universe: usize, ids: &[ElemId]) -> Self {
        let mut s = Self::empty(universe);
        for &i in ids {
            s.insert(i);
        }
        s
    }
}

/// One subgroup of the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub elements: ElementSet,
    pub order: usize,
    pub generators: Vec<ElemId>,
}

impl SubgroupRecord {
    pub fn new(table: &ElementTable, elements: ElementSet) -> Self {
        let generators = table.generators_of(&elements);
        let order = elements.len();
        Self {
            elements,
            order,
            generators,
        }
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.elements.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupRecord) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn generator_perms(&self, table: &ElementTable) -> Vec<Permutation> {
        self.generators.iter().map(|&g| table.element(g).clone()).collect()
    }
}

/// Full subgroup lattice of a small group.
#[derive(Clone, Debug)]
pub struct Lattice {
    table: ElementTable,
    subgroups: Vec<SubgroupRecord>,
    index: HashMap<ElementSet, usize>,
    maximals: Vec<usize>,
}

impl Lattice {
    /// Builds the lattice by join-closure: start from all cyclic subgroups,
    /// then repeatedly join each found subgroup with each cyclic subgroup.
    pub fn new(group: &PermGroup, order_cap: u64) -> Result<Self> {
        let cap = order_cap.min(HARD_ORDER_CAP);
        if group.order().to_u64().is_none_or(|o| o > cap) {
            return Err(Error::OrderCapExceeded {
                order: group.order().to_string(),
                cap,
            });
        }
        let table = ElementTable::new(group, cap)?;
        Ok(Self::from_table(table))
    }

    pub fn from_table(table: ElementTable) -> Self {
        let n = table.len();
        let mut sets: Vec<(ElementSet, Vec<ElemId>)> = Vec::new();
        let mut index: HashMap<ElementSet, usize> = HashMap::new();
        let mut cyclic_gens: Vec<ElemId> = Vec::new();
        for x in 0..n as ElemId {
            let set = table.closure(&[x]);
            if !index.contains_key(&set) {
                index.insert(set.clone(), sets.len());
                sets.push((set, if x == 0 { vec![] } else { vec![x] }));
                if x != 0 {
                    cyclic_gens.push(x);
                }
            }
        }
        let mut head = 0;
        while head < sets.len() {
            let (base, base_gens) = sets[head].clone();
            head += 1;
            for &c in &cyclic_gens {
                if base.contains(c) {
                    continue;
                }
                let joined = table.extend_closure(&base, &base_gens, &[c]);
                if !index.contains_key(&joined) {
                    let mut gens = base_gens.clone();
                    gens.push(c);
                    index.insert(joined.clone(), sets.len());
                    sets.push((joined, gens));
                }
            }
        }
        let mut records: Vec<SubgroupRecord> = sets
            .into_iter()
            .map(|(elements, generators)| SubgroupRecord {
                order: elements.len(),
                elements,
                generators,
            })
            .collect();
        records.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| b.elements.cmp(&a.elements)));
        let index = records
            .iter()
            .enumerate()
            .map(|(i, r)| (r.elements.clone(), i))
            .collect();
        let mut lattice = Self {
            table,
            subgroups: records,
            index,
            maximals: Vec::new(),
        };
        lattice.maximals = lattice.compute_maximals();
        lattice
    }

    fn compute_maximals(&self) -> Vec<usize> {
        let top = self.subgroups.len() - 1;
        let g_order = self.subgroups[top].order;
        // Process from large to small; a proper subgroup is maximal iff it is
        // not inside a maximal subgroup already found.
        let mut maximals: Vec<usize> = Vec::new();
        for i in (0..top).rev() {
            let h = &self.subgroups[i];
            if !g_order.is_multiple_of(h.order) {
                continue;
            }
            if !maximals
                .iter()
                .any(|&m| self.subgroups[m].order > h.order && h.is_subgroup_of(&self.subgroups[m]))
            {
                maximals.push(i);
            }
        }
        maximals.sort_unstable();
        maximals
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn subgroups(&self) -> &[SubgroupRecord] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupRecord {
        &self.subgroups[i]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, set: &ElementSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Indices of the maximal subgroups.
    pub fn maximal_subgroups(&self) -> &[usize] {
        &self.maximals
    }

    /// Record for a subgroup given by its element set (must be in the lattice).
    pub fn record_for(&self, set: &ElementSet) -> Result<&SubgroupRecord> {
        self.index_of(set).map(|i| &self.subgroups[i]).ok_or(Error::NotSubgroup)
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini(&self) -> usize {
        let mut set = self.subgroups[self.whole()].elements.clone();
        for &m in &self.maximals {
            set = set.intersection(&self.subgroups[m].elements);
        }
        self.index[&set]
    }

    /// Intersection of the maximal subgroups that contain `k`.
    pub fn frattini_preimage(&self, k: usize) -> usize {
        let kset = &self.subgroups[k].elements;
        let mut set = self.subgroups[self.whole()].elements.clone();
        for &m in &self.maximals {
            if kset.is_subset(&self.subgroups[m].elements) {
                set = set.intersection(&self.subgroups[m].elements);
            }
        }
        self.index[&set]
    }

    pub fn conjugate(&self, h: usize, g: ElemId) -> usize {
        self.index[&self.table.conjugate_set(&self.subgroups[h].elements, g)]
    }

    /// Distinct conjugates of `h`, each with a conjugating element.
    pub fn conjugates(&self, h: usize) -> Vec<(usize, ElemId)> {
        let mut out = vec![(h, 0)];
        let mut seen = std::collections::HashSet::from([h]);
        let mut head = 0;
        while head < out.len() {
            let (k, word) = out[head];
            head += 1;
            for &g in self.table.generator_ids() {
                let next = self.conjugate(k, g);
                if seen.insert(next) {
                    out.push((next, self.table.mul(word, g)));
                }
            }
        }
        out
    }

    /// Largest normal subgroup of the ambient group inside `h`.
    pub fn core(&self, h: usize) -> usize {
        let mut set = self.subgroups[h].elements.clone();
        for (k, _) in self.conjugates(h) {
            set = set.intersection(&self.subgroups[k].elements);
        }
        self.index[&set]
    }

    pub fn is_normal(&self, h: usize) -> bool {
        self.table
            .is_normalized_by(&self.subgroups[h].elements, self.table.generator_ids())
    }

    /// Is `n` normalized by every element of `h`?
    pub fn is_normal_in(&self, n: usize, h: usize) -> bool {
        let gens = &self.subgroups[h].generators;
        self.subgroups[n].is_subgroup_of(&self.subgroups[h])
            && self.table.is_normalized_by(&self.subgroups[n].elements, gens)
    }

    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }

    pub fn is_subgroup(&self, a: usize, b: usize) -> bool {
        self.subgroups[a].is_subgroup_of(&self.subgroups[b])
    }

    /// One representative (least index) per conjugacy class of the given subgroups.
    pub fn class_representatives(&self, subgroups: &[usize]) -> Vec<usize> {
        let mut reps = Vec::new();
        let mut covered = std::collections::HashSet::new();
        for &h in subgroups {
            if covered.contains(&h) {
                continue;
            }
            reps.push(h);
            for (k, _) in self.conjugates(h) {
                covered.insert(k);
            }
        }
        reps
    }

    pub fn intersect(&self, a: usize, b: usize) -> usize {
        self.index[&self.subgroups[a].elements.intersection(&self.subgroups[b].elements)]
    }

    pub fn derived_subgroup_of(&self, h: usize) -> usize {
        let set = &self.subgroups[h].elements;
        self.index[&self.table.commutator_subgroup(set, set)]
    }

    /// `[a, b]` for two subgroups.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.index[&self
            .table
            .commutator_subgroup(&self.subgroups[a].elements, &self.subgroups[b].elements)]
    }

    pub fn is_soluble(&self) -> bool {
        let mut h = self.whole();
        loop {
            let d = self.derived_subgroup_of(h);
            if d == h {
                return self.subgroups[h].order == 1;
            }
            h = d;
        }
    }

    pub fn is_nilpotent_subgroup(&self, h: usize) -> bool {
        let mut cur = h;
        loop {
            let next = self.commutator(cur, h);
            if next == cur {
                return self.subgroups[cur].order == 1;
            }
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_subgroup(self.whole())
    }

    /// Does `h / k` (with `k` normal in `h`) form an abelian quotient?
    pub fn quotient_is_abelian(&self, h: usize, k: usize) -> bool {
        let gens = &self.subgroups[h].generators;
        let kset = &self.subgroups[k].elements;
        gens.iter()
            .all(|&x| gens.iter().all(|&y| kset.contains(self.table.commutator(x, y))))
    }

    /// Normal subgroups of the ambient group strictly between `bottom` and
    /// `top`, used to step down a chief series.
    fn normal_between(&self, normals: &[usize], top: usize, bottom: usize) -> Vec<usize> {
        normals
            .iter()
            .copied()
            .filter(|&n| n != top && n != bottom && self.is_subgroup(n, top) && self.is_subgroup(bottom, n))
            .collect()
    }

    /// A chief series from `top` down to `bottom` (both normal, `bottom ≤ top`).
    /// At each step the largest normal subgroup strictly inside the current
    /// term is taken (ties broken by lattice index).
    pub fn chief_series_between(&self, top: usize, bottom: usize) -> Vec<usize> {
        let normals = self.normal_subgroups();
        let mut series = vec![top];
        let mut cur = top;
        while cur != bottom {
            let candidates = self.normal_between(&normals, cur, bottom);
            let next = candidates
                .iter()
                .copied()
                .filter(|&n| !candidates.iter().any(|&m| m != n && self.is_subgroup(n, m)))
                .max_by(|&a, &b| self.subgroups[a].order.cmp(&self.subgroups[b].order).then(b.cmp(&a)))
                .unwrap_or(bottom);
            series.push(next);
            cur = next;
        }
        series
    }

    /// Minimal normal subgroups of the ambient group strictly above `bottom`.
    pub fn minimal_normal_above(&self, bottom: usize) -> Vec<usize> {
        let normals = self.normal_subgroups();
        let above: Vec<usize> = normals
            .iter()
            .copied()
            .filter(|&n| n != bottom && self.is_subgroup(bottom, n))
            .collect();
        above
            .iter()
            .copied()
            .filter(|&n| !above.iter().any(|&m| m != n && self.is_subgroup(m, n)))
            .collect()
    }

    /// Chief factor analysis for `upper / lower`.
    pub fn chief_factor(&self, upper: usize, lower: usize) -> ChiefFactor {
        let order = self.subgroups[upper].order / self.subgroups[lower].order;
        let abelian = self.quotient_is_abelian(upper, lower);
        let frattini_top = self.frattini_preimage(lower);
        let non_frattini = !self.is_subgroup(upper, frattini_top);
        let composition_length = if abelian {
            let p = smallest_prime_factor(order);
            let mut d = 0;
            let mut m = order;
            while m > 1 {
                m /= p;
                d += 1;
            }
            d
        } else {
            // Minimal normal subgroups of T^k are its k simple factors.
            let between: Vec<usize> = (0..self.len())
                .filter(|&n| n != lower && self.is_subgroup(lower, n) && self.is_normal_in(n, upper))
                .collect();
            between
                .iter()
                .filter(|&&n| !between.iter().any(|&m| m != n && self.is_subgroup(m, n)))
                .count()
        };
        ChiefFactor {
            upper,
            lower,
            order,
            abelian,
            non_frattini,
            composition_length,
        }
    }

    pub fn chief_series(&self) -> ChiefSeriesReport {
        let series = self.chief_series_between(self.whole(), self.trivial());
        let factors = series.windows(2).map(|w| self.chief_factor(w[0], w[1])).collect();
        ChiefSeriesReport { series, factors }
    }

    /// Subgroup list with orders, generators in cycle notation and covering
    /// relations, for export.
    pub fn export(&self) -> LatticeExport {
        let subgroups = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| ExportedSubgroup {
                index: i,
                order: s.order,
                generators: s
                    .generators
                    .iter()
                    .map(|&g| self.table.element(g).to_string())
                    .collect(),
            })
            .collect();
        let mut edges = Vec::new();
        for k in 0..self.len() {
            let mut covers: Vec<usize> = Vec::new();
            for h in (0..k).rev() {
                if self.subgroups[h].order < self.subgroups[k].order
                    && self.is_subgroup(h, k)
                    && !covers
                        .iter()
                        .any(|&m| self.subgroups[m].order > self.subgroups[h].order && self.is_subgroup(h, m))
                {
                    covers.push(h);
                }
            }
            covers.sort_unstable();
            edges.extend(covers.into_iter().map(|h| (h, k)));
        }
        LatticeExport {
            group_order: self.order(),
            degree: self.table.group().degree(),
            subgroups,
            inclusions: edges,
        }
    }
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiefFactor {
    pub upper: usize,
    pub lower: usize,
    pub order: usize,
    pub abelian: bool,
    pub non_frattini: bool,
    pub composition_length: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiefSeriesReport {
    /// Lattice indices from the whole group down to the trivial subgroup.
    pub series: Vec<usize>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeriesReport {
    /// Chief length.
    pub fn lambda(&self) -> usize {
        self.factors.len()
    }

    /// Number of non-Frattini chief factors.
    pub fn delta(&self) -> usize {
        self.factors.iter().filter(|f| f.non_frattini).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportedSubgroup {
    pub index: usize,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeExport {
    pub group_order: usize,
    pub degree: usize,
    pub subgroups: Vec<ExportedSubgroup>,
    /// `(h, k)`: `h` is a maximal subgroup of `k`.
    pub inclusions: Vec<(usize, usize)>,
}
