//! Explicit partition triples `(B, C, D)` on grid-like point sets.
//!
//! Points of the domain `X` are numbered in row-major lexicographic order of
//! their coordinate pairs. `B` is the partition into rows and `C` into
//! columns; `D` perturbs the rows.

use std::collections::HashMap;

use serde::Serialize;

use super::SetPartition;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridCase {
    /// `a = b + 2`, `X = {(i,j) in Z/a x Z/a : i - j != ±1}`.
    Plus2,
    /// `a = b + 1`, `X = {(i,j) in Z/a x Z/a : j - i != 1}`.
    Plus1,
    /// `a = b`, `X = {1..a} x {1..a}`.
    Equal,
}

/// Coordinates of the ground points.
#[derive(Clone, Debug)]
pub struct GridCoords {
    pub case: GridCase,
    pub a: usize,
    points: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl GridCoords {
    pub fn new(case: GridCase, a: usize) -> Self {
        let points: Vec<(usize, usize)> = match case {
            GridCase::Plus2 => pairs(0..a)
                .filter(|&(i, j)| (i + a - j) % a != 1 && (j + a - i) % a != 1)
                .collect(),
            GridCase::Plus1 => pairs(0..a).filter(|&(i, j)| (j + a - i) % a != 1).collect(),
            GridCase::Equal => pairs(1..a + 1).collect(),
        };
        let index = points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Self { case, a, points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, k: usize) -> (usize, usize) {
        self.points[k]
    }

    /// Ground point of a pair. Panics on pairs outside `X`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        match self.index.get(&(i, j)) {
            Some(&k) => k,
            None => panic!("({i},{j}) is not in the domain"),
        }
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.lines(|(i, _)| i)
    }

    fn columns(&self) -> Vec<Vec<usize>> {
        self.lines(|(_, j)| j)
    }

    fn lines(&self, key: impl Fn((usize, usize)) -> usize) -> Vec<Vec<usize>> {
        let offset = if self.case == GridCase::Equal { 1 } else { 0 };
        let mut out = vec![Vec::new(); self.a];
        for (k, &p) in self.points.iter().enumerate() {
            out[key(p) - offset].push(k);
        }
        out
    }
}

fn pairs(r: std::ops::Range<usize>) -> impl Iterator<Item = (usize, usize)> {
    let r2 = r.clone();
    r.flat_map(move |i| r2.clone().map(move |j| (i, j)))
}

/// A constructed triple together with its coordinates.
#[derive(Clone, Debug)]
pub struct BcdTriple {
    pub coords: GridCoords,
    pub b: SetPartition,
    pub c: SetPartition,
    pub d: SetPartition,
}

impl BcdTriple {
    pub fn partitions(&self) -> Vec<SetPartition> {
        vec![self.b.clone(), self.c.clone(), self.d.clone()]
    }

    fn assemble(coords: GridCoords, d: Vec<Vec<usize>>) -> Self {
        let n = coords.len();
        let b = SetPartition::new(n, coords.rows()).unwrap();
        let c = SetPartition::new(n, coords.columns()).unwrap();
        let d = SetPartition::new(n, d).expect("construction yields a partition");
        Self { coords, b, c, d }
    }
}

fn without(block: &[usize], remove: &[usize]) -> Vec<usize> {
    block.iter().copied().filter(|p| !remove.contains(p)).collect()
}

/// The triple for `a = b + 2`.
pub fn construct_bcd_plus2(a: usize) -> Result<BcdTriple> {
    if a < 4 {
        return Err(Error::InvalidParameters(format!(
            "plus2 construction needs a >= 4, got {a}"
        )));
    }
    let x = GridCoords::new(GridCase::Plus2, a);
    let mut d = x.rows();
    let p02 = x.index(0, 2);
    let p13 = x.index(1, 3);
    d[0] = without(&d[0], &[p02]);
    d[0].push(p13);
    d[1] = without(&d[1], &[p13]);
    d[1].push(p02);
    Ok(BcdTriple::assemble(x, d))
}

/// The triple for `a = b + 1`.
pub fn construct_bcd_plus1(a: usize) -> Result<BcdTriple> {
    if a < 5 {
        return Err(Error::InvalidParameters(format!(
            "plus1 construction needs a >= 5, got {a}"
        )));
    }
    let x = GridCoords::new(GridCase::Plus1, a);
    let rows = x.rows();
    let mut d = rows.clone();
    for i in 0..a / 2 {
        let y: Vec<usize> = (1..=i + 1).map(|t| x.index(2 * i, (2 * t) % a)).collect();
        let z: Vec<usize> = (1..=i + 1).map(|t| x.index(2 * i + 1, (2 * t + 1) % a)).collect();
        d[2 * i] = without(&rows[2 * i], &y);
        d[2 * i].extend(&z);
        d[2 * i + 1] = without(&rows[2 * i + 1], &z);
        d[2 * i + 1].extend(&y);
    }
    Ok(BcdTriple::assemble(x, d))
}

/// The triple for `a = b`. Coordinates are 1-based here.
pub fn construct_bcd_equal(a: usize) -> Result<BcdTriple> {
    if a < 6 {
        return Err(Error::InvalidParameters(format!(
            "equal construction needs a >= 6, got {a}"
        )));
    }
    let x = GridCoords::new(GridCase::Equal, a);
    let k = a / 2;
    let p = |i: usize, j: usize| x.index(i, j);
    let mut d: Vec<Vec<usize>> = Vec::with_capacity(a);
    for i in 0..=k - 2 {
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for t in 1..=i + 1 {
            odd.extend([p(2 * i + 2, 2 * t), p(2 * i + 1, 2 * t)]);
            even.extend([p(2 * i + 1, 2 * t - 1), p(2 * i + 2, 2 * t - 1)]);
        }
        odd.extend((2 * i + 3..=a).map(|y| p(2 * i + 1, y)));
        even.extend((2 * i + 3..=a).map(|y| p(2 * i + 2, y)));
        d.push(odd);
        d.push(even);
    }
    let (r, s) = (2 * k - 1, 2 * k);
    if a.is_multiple_of(2) {
        let mut d1 = vec![p(r, 1)];
        let mut d2 = vec![p(s, 1)];
        for t in 1..k {
            d1.extend([p(r, 2 * t), p(s, 2 * t)]);
            d2.extend([p(r, 2 * t + 1), p(s, 2 * t + 1)]);
        }
        d1.push(p(r, s));
        d2.push(p(s, s));
        d.push(d1);
        d.push(d2);
    } else {
        let mut d1 = vec![p(r, 1), p(r, 3)];
        for t in 2..=k {
            d1.extend([p(r, 2 * t), p(s, 2 * t)]);
        }
        d1.push(p(r, 2 * k + 1));
        let mut d2 = vec![p(s, 1), p(r, 2), p(s, 2), p(s, 3)];
        for t in 2..k {
            d2.extend([p(r, 2 * t + 1), p(s, 2 * t + 1)]);
        }
        d2.push(p(s, 2 * k + 1));
        d.push(d1);
        d.push(d2);
        d.push((1..=a).map(|y| p(a, y)).collect());
    }
    Ok(BcdTriple::assemble(x, d))
}

/// Block-intersection signatures between two partitions: `c[r][i]` counts
/// blocks `D_s` with `|C_r ∩ D_s| = i`, and `d[r][i]` counts blocks `C_s` with
/// `|C_s ∩ D_r| = i`.
pub fn signature_counts(c: &SetPartition, d: &SetPartition) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let dl = d.labels();
    let mut meet = vec![vec![0usize; d.num_blocks()]; c.num_blocks()];
    for (r, block) in c.blocks().iter().enumerate() {
        for &p in block {
            meet[r][dl[p]] += 1;
        }
    }
    let max = c.blocks().iter().map(Vec::len).max().unwrap_or(0);
    let mut cs = vec![vec![0usize; max + 1]; c.num_blocks()];
    let mut ds = vec![vec![0usize; max + 1]; d.num_blocks()];
    for r in 0..c.num_blocks() {
        for s in 0..d.num_blocks() {
            cs[r][meet[r][s]] += 1;
            ds[s][meet[r][s]] += 1;
        }
    }
    (cs, ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partition_stabilizer, Parity};

    fn check_uniform(t: &BcdTriple, a: usize, b: usize) {
        for p in [&t.b, &t.c, &t.d] {
            assert_eq!(p.ground_size(), a * b);
            assert_eq!(p.num_blocks(), a);
            assert_eq!(p.uniform_size(), Some(b));
        }
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(GridCoords::new(GridCase::Plus2, 7).len(), 7 * 5);
        assert_eq!(GridCoords::new(GridCase::Plus1, 7).len(), 7 * 6);
        assert_eq!(GridCoords::new(GridCase::Equal, 7).len(), 49);
    }

    #[test]
    fn plus2_shapes() {
        let t = construct_bcd_plus2(4).unwrap();
        check_uniform(&t, 4, 2);
        assert_eq!(t.d.blocks()[2], t.b.blocks()[2]);
        assert_eq!(t.d.blocks()[3], t.b.blocks()[3]);
        let t = construct_bcd_plus2(10).unwrap();
        check_uniform(&t, 10, 8);
        assert!(construct_bcd_plus2(3).is_err());
    }

    #[test]
    fn plus2_d_blocks() {
        let t = construct_bcd_plus2(7).unwrap();
        let x = &t.coords;
        let mut d0: Vec<usize> = [(1, 3), (0, 3), (0, 4), (0, 5), (0, 0)]
            .iter()
            .map(|&(i, j)| x.index(i, j))
            .collect();
        d0.sort_unstable();
        assert_eq!(t.d.blocks()[0], d0);
    }

    #[test]
    fn plus1_shapes() {
        for a in 5..=8 {
            let t = construct_bcd_plus1(a).unwrap();
            check_uniform(&t, a, a - 1);
        }
        let t = construct_bcd_plus1(7).unwrap();
        assert_eq!(t.d.blocks()[6], t.b.blocks()[6]);
        assert!(construct_bcd_plus1(4).is_err());
    }

    #[test]
    fn equal_shapes() {
        for a in 6..=10 {
            let t = construct_bcd_equal(a).unwrap();
            check_uniform(&t, a, a);
        }
        assert!(construct_bcd_equal(5).is_err());
    }

    #[test]
    fn small_constructions_are_bases() {
        for t in [
            construct_bcd_plus2(5).unwrap(),
            construct_bcd_plus1(5).unwrap(),
            construct_bcd_plus1(6).unwrap(),
            construct_bcd_equal(6).unwrap(),
            construct_bcd_equal(7).unwrap(),
        ] {
            let g = partition_stabilizer(&t.partitions(), Parity::All).unwrap();
            assert!(g.is_trivial(), "a = {}", t.coords.a);
        }
    }

    #[test]
    fn plus2_triple_at_six_has_an_involution() {
        let t = construct_bcd_plus2(6).unwrap();
        let x = &t.coords;
        let swaps = [
            ((2, 0), (4, 0)),
            ((2, 2), (4, 2)),
            ((2, 4), (4, 4)),
            ((2, 5), (4, 1)),
            ((1, 1), (1, 5)),
            ((3, 1), (3, 5)),
            ((5, 1), (5, 5)),
        ];
        let cycles: Vec<Vec<usize>> = swaps
            .iter()
            .map(|&((i, j), (k, l))| vec![x.index(i, j), x.index(k, l)])
            .collect();
        let g = crate::perm::Permutation::from_cycles(x.len(), &cycles).unwrap();
        assert!(t.partitions().iter().all(|p| p.is_stabilized_by(&g)));
        let stab = partition_stabilizer(&t.partitions(), Parity::All).unwrap();
        assert_eq!(stab.order_u64(), Some(2));
        assert!(stab.contains(&g).unwrap());
    }

    /// Expected signature rows for `r = 1..a` (1-based) from the tables for
    /// odd and even `a`.
    fn expected_c(a: usize, r: usize) -> [usize; 3] {
        let k = a / 2;
        if a % 2 == 1 {
            match r {
                1 => [k - 1, 3, k - 1],
                2 => [k, 1, k],
                3 => [k - 2, 5, k - 2],
                4 => [k - 1, 3, k - 1],
                _ if r == a => [0, a, 0],
                _ => {
                    let i = (r - 1) / 2;
                    [k - i, 2 * i + 1, k - i]
                }
            }
        } else {
            match r {
                1 => [k - 1, 2, k - 1],
                2 => [k, 0, k],
                _ if r == 2 * k - 1 => [1, 2 * k - 2, 1],
                _ if r == 2 * k => [0, 2 * k, 0],
                _ => {
                    let i = (r - 1) / 2;
                    [k - i, 2 * i, k - i]
                }
            }
        }
    }

    fn expected_d(a: usize, r: usize) -> [usize; 3] {
        let k = a / 2;
        if a % 2 == 1 && r == a {
            return [0, a, 0];
        }
        if r >= 2 * k - 1 {
            let mid = if a % 2 == 1 { 3 } else { 2 };
            return [k - 1, mid, k - 1];
        }
        let i = (r - 1) / 2;
        [i + 1, a - 2 * i - 2, i + 1]
    }

    #[test]
    fn signature_tables() {
        for a in 6..=9 {
            let t = construct_bcd_equal(a).unwrap();
            let (cs, ds) = signature_counts(&t.c, &t.d);
            for r in 1..=a {
                assert_eq!(&cs[r - 1][..3], &expected_c(a, r), "c_{r} for a={a}");
                assert_eq!(&ds[r - 1][..3], &expected_d(a, r), "d_{r} for a={a}");
                assert!(cs[r - 1][3..].iter().all(|&v| v == 0));
                assert!(ds[r - 1][3..].iter().all(|&v| v == 0));
            }
        }
        let t = construct_bcd_equal(7).unwrap();
        assert_eq!(signature_counts(&t.c, &t.d).0[6][1], 7);
        let t = construct_bcd_equal(6).unwrap();
        let ds = signature_counts(&t.c, &t.d).1;
        assert_eq!((ds[4][1], ds[5][1]), (2, 2));
    }
}
