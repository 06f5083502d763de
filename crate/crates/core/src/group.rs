//! Permutation groups backed by a deterministic Schreier–Sims stabilizer chain.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize) -> Self {
        Self {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: Vec::new(),
        }
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut head = 0;
        while head < orbit.len() {
            let beta = orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.image(beta);
                if transversal[gamma].is_none() {
                    let u = transversal[beta].as_ref().unwrap().compose(s);
                    transversal[gamma] = Some(u);
                    orbit.push(gamma);
                }
            }
        }
        self.orbit = orbit;
        self.transversal = transversal;
    }
}

/// A permutation group given by generators, with its stabilizer chain.
///
/// Immutable once built. Base points are chosen as the smallest point moved
/// by the generator that forces a new level, so two builds from the same
/// generator list agree exactly.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("empty generator list")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        Self::from_generators(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        Self::from_generators(n, gens).unwrap()
    }

    /// Builds the group generated by `gens`. All generators must have degree
    /// `degree`; an empty list gives the trivial group.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut group = Self {
            degree,
            generators: gens,
            chain: Vec::new(),
            order: BigUint::one(),
        };
        group.schreier_sims();
        Ok(group)
    }

    /// Convenience wrapper taking the degree from the first generator.
    pub fn generated_by(gens: &[Permutation]) -> Result<Self> {
        let degree = gens.first().map(|g| g.degree()).unwrap_or(0);
        Self::from_generators(degree, gens.to_vec())
    }

    fn schreier_sims(&mut self) {
        let degree = self.degree;
        let mut strong: Vec<Permutation> = Vec::new();
        for g in &self.generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut chain: Vec<Level> = Vec::new();
        for g in &strong {
            if chain.iter().all(|l| g.image(l.base_point) == l.base_point) {
                chain.push(Level::new(g.first_moved().unwrap()));
            }
        }
        for g in &strong {
            for l in 0..chain.len() {
                if (0..l).all(|m| g.image(chain[m].base_point) == chain[m].base_point) {
                    chain[l].gens.push(g.clone());
                }
            }
        }

        let mut i = chain.len();
        while i >= 1 {
            let level = i - 1;
            chain[level].rebuild_orbit(degree);
            let mut restart: Option<usize> = None;
            'outer: for &beta in &chain[level].orbit.clone() {
                let u_beta = chain[level].transversal[beta].clone().unwrap();
                for s in chain[level].gens.clone() {
                    let gamma = s.image(beta);
                    let u_gamma = chain[level].transversal[gamma].as_ref().unwrap();
                    let h = u_beta.compose(&s).compose(&u_gamma.inverse());
                    let (residue, j) = strip(&chain, level + 1, h);
                    if j < chain.len() || !residue.is_identity() {
                        if j == chain.len() {
                            chain.push(Level::new(residue.first_moved().unwrap()));
                        }
                        for l in chain.iter_mut().take(j + 1).skip(level + 1) {
                            l.gens.push(residue.clone());
                        }
                        // Stripping reads these transversals.
                        for l in chain.iter_mut().take(j + 1).skip(level + 1) {
                            l.rebuild_orbit(degree);
                        }
                        restart = Some(j + 1);
                        break 'outer;
                    }
                }
            }
            match restart {
                Some(next) => i = next,
                None => i -= 1,
            }
        }
        for l in chain.iter_mut() {
            l.rebuild_orbit(degree);
        }
        self.order = chain
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        self.chain = chain;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.base_point).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.chain {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.sift(g).is_identity())
    }

    /// Residue of `g` after sifting; the identity iff `g` is a member.
    fn sift(&self, g: &Permutation) -> Permutation {
        strip(&self.chain, 0, g.clone()).0
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_group(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.order == other.order && self.contains_group(other)?)
    }

    /// `g^-1 H g` with a freshly built chain.
    pub fn conjugate(&self, g: &Permutation) -> Result<PermGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        let gens = self.generators.iter().map(|h| h.conjugate_by(g)).collect();
        PermGroup::from_generators(self.degree, gens)
    }

    /// Enumerates all elements, refusing beyond `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        match self.order_u64() {
            Some(o) if o <= cap => {}
            _ => {
                return Err(Error::OrderCapExceeded {
                    order: self.order.to_string(),
                    cap,
                })
            }
        }
        let mut acc = vec![Permutation::identity(self.degree)];
        // g = u_last * ... * u_first (deepest level applied first).
        for level in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for a in &acc {
                for &p in &level.orbit {
                    next.push(a.compose(level.transversal[p].as_ref().unwrap()));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.chain.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(level.transversal[p].as_ref().unwrap());
        }
        g
    }

    /// Orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for g in &self.generators {
                    let q = g.image(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The subgroup of even permutations.
    pub fn even_part(&self) -> PermGroup {
        let Some(odd) = self.generators.iter().find(|g| !g.is_even()) else {
            return self.clone();
        };
        // Schreier generators for the index-2 subgroup with transversal {1, odd}.
        let reps = [Permutation::identity(self.degree), odd.clone()];
        let mut gens = Vec::new();
        for u in &reps {
            for s in &self.generators {
                let us = u.compose(s);
                let back = if us.is_even() { &reps[0] } else { &reps[1] };
                let h = us.compose(&back.inverse());
                if !h.is_identity() && !gens.contains(&h) {
                    gens.push(h);
                }
            }
        }
        PermGroup::from_generators(self.degree, gens).unwrap()
    }

    /// Action of the group on the right cosets of `sub` by right
    /// multiplication. The kernel of this action is the core of `sub`.
    pub fn coset_action(&self, sub: &PermGroup) -> Result<CosetAction> {
        if sub.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: sub.degree,
            });
        }
        if !self.contains_group(sub)? {
            return Err(Error::NotSubgroup);
        }
        let index = &self.order / &sub.order;
        let index = index
            .to_usize()
            .filter(|&i| i <= 50_000)
            .ok_or_else(|| Error::Budget("coset action index too large".into()))?;
        let mut reps = vec![Permutation::identity(self.degree)];
        let mut rep_inv = vec![Permutation::identity(self.degree)];
        let mut images: Vec<Vec<u16>> = vec![Vec::new(); self.generators.len()];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head].clone();
            for (k, s) in self.generators.iter().enumerate() {
                let y = r.compose(s);
                let found = (0..reps.len()).find(|&j| sub.sift(&y.compose(&rep_inv[j])).is_identity());
                let j = match found {
                    Some(j) => j,
                    None => {
                        reps.push(y.clone());
                        rep_inv.push(y.inverse());
                        reps.len() - 1
                    }
                };
                images[k].push(j as u16);
            }
            head += 1;
        }
        debug_assert_eq!(reps.len(), index);
        let gens = images.into_iter().map(Permutation::from_images_unchecked).collect();
        let image = PermGroup::from_generators(reps.len(), gens)?;
        Ok(CosetAction {
            image,
            representatives: reps,
        })
    }

    /// Image of a group element in a coset action.
    pub fn act_on_cosets(&self, action: &CosetAction, sub: &PermGroup, g: &Permutation) -> Permutation {
        let inv: Vec<Permutation> = action.representatives.iter().map(|r| r.inverse()).collect();
        let images = action
            .representatives
            .iter()
            .map(|r| {
                let y = r.compose(g);
                (0..inv.len())
                    .find(|&j| sub.sift(&y.compose(&inv[j])).is_identity())
                    .unwrap() as u16
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

/// Result of [`PermGroup::coset_action`]: the image group, and for each point
/// the coset representative it labels.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub image: PermGroup,
    pub representatives: Vec<Permutation>,
}

/// Sifts `h` starting at `from`. Returns the residue and the level at which
/// sifting stopped (`chain.len()` if it went through every level).
fn strip(chain: &[Level], from: usize, mut h: Permutation) -> (Permutation, usize) {
    for (l, level) in chain.iter().enumerate().skip(from) {
        let beta = h.image(level.base_point);
        match level.transversal.get(beta).and_then(|u| u.as_ref()) {
            Some(u) => h = h.compose(&u.inverse()),
            None => return (h, l),
        }
    }
    (h, chain.len())
}
