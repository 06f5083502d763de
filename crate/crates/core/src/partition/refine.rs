//! Stabilizer of a family of set partitions by colour refinement and
//! individualisation.
//!
//! The family is encoded as a coloured bipartite graph: one vertex per point
//! and one per block, block vertices coloured by the index of their
//! partition. Colour-preserving automorphisms of that graph are exactly the
//! point permutations stabilizing every partition.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::SetPartition;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Permutation, Point};

/// Largest ground size accepted.
pub const MAX_GROUND_SIZE: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    All,
    Even,
}

/// All `g` in `Sym(n)` (or `Alt(n)`) mapping every partition to itself.
pub fn partition_stabilizer(partitions: &[SetPartition], parity: Parity) -> Result<PermGroup> {
    let search = StabilizerSearch::run(partitions)?;
    let group = PermGroup::from_generators(search.n, search.generators.clone())?;
    debug_assert_eq!(group.order(), &search.order());
    Ok(match parity {
        Parity::All => group,
        Parity::Even => group.even_part(),
    })
}

struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    initial: Vec<u32>,
}

impl Graph {
    fn new(partitions: &[SetPartition]) -> Result<Self> {
        let n = partitions.first().map_or(0, |p| p.ground_size());
        if n > MAX_GROUND_SIZE {
            return Err(Error::InvalidParameters(format!(
                "ground size {n} exceeds {MAX_GROUND_SIZE}"
            )));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut initial = vec![0u32; n];
        for (j, p) in partitions.iter().enumerate() {
            if p.ground_size() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: p.ground_size(),
                });
            }
            for block in p.blocks() {
                let v = adj.len() as u32;
                adj.push(block.iter().map(|&x| x as u32).collect());
                initial.push(j as u32 + 1);
                for &x in block {
                    adj[x].push(v);
                }
            }
        }
        Ok(Self { n, adj, initial })
    }

    /// Refines `colors` to the coarsest equitable colouring below it and
    /// returns an isomorphism-invariant hash of the refinement steps.
    fn refine(&self, colors: &mut [u32]) -> u64 {
        let mut hasher = DefaultHasher::new();
        let mut cells = count_cells(colors);
        let mut keys: Vec<(Vec<u32>, u32)> = Vec::with_capacity(colors.len());
        loop {
            keys.clear();
            for (v, nbrs) in self.adj.iter().enumerate() {
                let mut key = Vec::with_capacity(nbrs.len() + 1);
                key.push(colors[v]);
                let start = key.len();
                key.extend(nbrs.iter().map(|&w| colors[w as usize]));
                key[start..].sort_unstable();
                keys.push((key, v as u32));
            }
            keys.sort_unstable();
            let mut rank = 0u32;
            for k in 0..keys.len() {
                if k > 0 && keys[k].0 != keys[k - 1].0 {
                    rank += 1;
                    keys[k - 1].0.hash(&mut hasher);
                }
                colors[keys[k].1 as usize] = rank;
            }
            if let Some(last) = keys.last() {
                last.0.hash(&mut hasher);
            }
            let new_cells = rank as usize + 1;
            new_cells.hash(&mut hasher);
            if new_cells == cells {
                return hasher.finish();
            }
            cells = new_cells;
        }
    }

    /// Colour of the cell to branch on: the smallest non-singleton cell of
    /// points, ties to the lowest colour.
    fn target_cell(&self, colors: &[u32]) -> Option<u32> {
        let mut size = vec![0usize; colors.len()];
        for &c in &colors[..self.n] {
            size[c as usize] += 1;
        }
        (0..colors.len())
            .filter(|&c| size[c] > 1)
            .min_by_key(|&c| (size[c], c))
            .map(|c| c as u32)
    }

    fn cell_members(&self, colors: &[u32], c: u32) -> Vec<usize> {
        (0..self.n).filter(|&v| colors[v] == c).collect()
    }

    fn individualize(&self, colors: &[u32], v: usize) -> (Vec<u32>, u64) {
        let c = colors[v];
        let mut out: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(u, &cu)| if cu > c || (cu == c && u != v) { cu + 1 } else { cu })
            .collect();
        let trace = self.refine(&mut out);
        (out, trace)
    }
}

fn count_cells(colors: &[u32]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Search state along the first path of the search tree.
struct PathNode {
    colors: Vec<u32>,
    trace: u64,
    cell: u32,
    chosen: usize,
}

/// Generators of the stabilizer together with the orbit sizes along the
/// first path, whose product is the group order.
pub struct StabilizerSearch {
    pub n: usize,
    pub generators: Vec<Permutation>,
    pub orbit_sizes: Vec<usize>,
    pub nodes_visited: u64,
}

impl StabilizerSearch {
    pub fn order(&self) -> BigUint {
        self.orbit_sizes.iter().map(|&s| BigUint::from(s)).product()
    }

    pub fn run(partitions: &[SetPartition]) -> Result<Self> {
        let graph = Graph::new(partitions)?;
        let n = graph.n;
        let labels: Vec<Vec<usize>> = partitions.iter().map(SetPartition::labels).collect();
        let mut root = graph.initial.clone();
        let root_trace = graph.refine(&mut root);

        let mut path: Vec<PathNode> = Vec::new();
        let mut colors = root;
        let mut trace = root_trace;
        while let Some(cell) = graph.target_cell(&colors) {
            let chosen = graph.cell_members(&colors, cell)[0];
            let (next, next_trace) = graph.individualize(&colors, chosen);
            path.push(PathNode {
                colors,
                trace,
                cell,
                chosen,
            });
            colors = next;
            trace = next_trace;
        }
        let leaf = colors;
        let leaf_trace = trace;

        let mut search = Search {
            graph: &graph,
            labels: &labels,
            path: &path,
            leaf: &leaf,
            leaf_trace,
            visited: 0,
        };
        let mut generators: Vec<(Permutation, usize)> = Vec::new();
        let mut orbit_sizes = vec![1usize; path.len()];
        for i in (0..path.len()).rev() {
            let node = &path[i];
            let members = graph.cell_members(&node.colors, node.cell);
            let mut orbit = orbit_of(n, node.chosen, generators.iter().map(|(g, _)| g));
            for &w in &members {
                if orbit[w] {
                    continue;
                }
                if let Some(g) = search.find(i, w) {
                    generators.push((g, i));
                    orbit = orbit_of(n, node.chosen, generators.iter().map(|(g, _)| g));
                }
            }
            orbit_sizes[i] = orbit.iter().filter(|&&x| x).count();
        }
        let nodes_visited = search.visited;
        Ok(Self {
            n,
            generators: generators.into_iter().map(|(g, _)| g).collect(),
            orbit_sizes,
            nodes_visited,
        })
    }
}

fn orbit_of<'a>(n: usize, start: usize, gens: impl Iterator<Item = &'a Permutation> + Clone) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for g in gens.clone() {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    seen
}

struct Search<'a> {
    graph: &'a Graph,
    labels: &'a [Vec<usize>],
    path: &'a [PathNode],
    leaf: &'a [u32],
    leaf_trace: u64,
    visited: u64,
}

impl Search<'_> {
    /// An automorphism fixing the first `i` chosen points and sending the
    /// `i`-th chosen point to `w`, if one exists.
    fn find(&mut self, i: usize, w: usize) -> Option<Permutation> {
        let (colors, trace) = self.graph.individualize(&self.path[i].colors, w);
        self.visited += 1;
        if trace != self.expected_trace(i + 1) {
            return None;
        }
        self.descend(i + 1, colors)
    }

    fn expected_trace(&self, depth: usize) -> u64 {
        if depth == self.path.len() {
            self.leaf_trace
        } else {
            self.path[depth].trace
        }
    }

    fn descend(&mut self, depth: usize, colors: Vec<u32>) -> Option<Permutation> {
        if depth == self.path.len() {
            return self.leaf_automorphism(&colors);
        }
        let cell = self.path[depth].cell;
        let members = self.graph.cell_members(&colors, cell);
        if members.len() != self.graph.cell_members(&self.path[depth].colors, cell).len() {
            return None;
        }
        for x in members {
            let (child, trace) = self.graph.individualize(&colors, x);
            self.visited += 1;
            if trace != self.expected_trace(depth + 1) {
                continue;
            }
            if let Some(g) = self.descend(depth + 1, child) {
                return Some(g);
            }
        }
        None
    }

    fn leaf_automorphism(&self, colors: &[u32]) -> Option<Permutation> {
        let n = self.graph.n;
        let mut by_color = vec![usize::MAX; colors.len()];
        for v in 0..n {
            by_color[colors[v] as usize] = v;
        }
        let mut images = Vec::with_capacity(n);
        for v in 0..n {
            let w = by_color[self.leaf[v] as usize];
            if w == usize::MAX {
                return None;
            }
            images.push(w as Point);
        }
        let g = Permutation::from_images(images).ok()?;
        let preserves = self.labels.iter().all(|labels| {
            let mut target = vec![usize::MAX; n];
            (0..n).all(|v| {
                let t = &mut target[labels[v]];
                let img = labels[g.image(v)];
                if *t == usize::MAX {
                    *t = img;
                }
                *t == img
            })
        });
        preserves.then_some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn grid(a: usize) -> Vec<SetPartition> {
        let rows = SetPartition::from_labels(&(0..a * a).map(|p| p / a).collect::<Vec<_>>());
        let cols = SetPartition::from_labels(&(0..a * a).map(|p| p % a).collect::<Vec<_>>());
        vec![rows, cols]
    }

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn single_partition_gives_wreath_product() {
        for (a, b) in [(2, 3), (3, 2), (4, 3), (3, 4), (5, 5)] {
            let p = SetPartition::consecutive(a, b);
            let g = partition_stabilizer(&[p], Parity::All).unwrap();
            let expected = BigUint::from(factorial(b as u64)).pow(a as u32) * factorial(a as u64);
            assert_eq!(g.order(), &expected, "a={a} b={b}");
        }
    }

    #[test]
    fn rows_and_columns() {
        let g = partition_stabilizer(&grid(3), Parity::All).unwrap();
        assert_eq!(g.order_u64(), Some(36));
        let g = partition_stabilizer(&grid(4), Parity::All).unwrap();
        assert_eq!(g.order_u64(), Some(24 * 24));
    }

    #[test]
    fn even_part_halves() {
        let p = SetPartition::consecutive(3, 2);
        let all = partition_stabilizer(std::slice::from_ref(&p), Parity::All).unwrap();
        let even = partition_stabilizer(&[p], Parity::Even).unwrap();
        assert_eq!(all.order_u64(), Some(48));
        assert_eq!(even.order_u64(), Some(24));
    }

    #[test]
    fn generators_stabilize_every_partition() {
        let fam = grid(4);
        let search = StabilizerSearch::run(&fam).unwrap();
        for g in &search.generators {
            assert!(fam.iter().all(|p| p.is_stabilized_by(g)));
        }
        assert_eq!(search.order().to_u64(), Some(576));
    }

    #[test]
    fn ground_size_mismatch() {
        let r = partition_stabilizer(
            &[SetPartition::consecutive(2, 2), SetPartition::consecutive(3, 2)],
            Parity::All,
        );
        assert!(matches!(r, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn repeated_partition() {
        let p = SetPartition::consecutive(2, 2);
        let g = partition_stabilizer(&[p.clone(), p], Parity::All).unwrap();
        assert_eq!(g.order_u64(), Some(8));
    }
}
