//! Abelian chief factors as modules over the prime field.

use crate::lattice::{ElemId, Lattice};

/// A `G`-module `F_p^d`, given by the matrices of the group generators acting
/// on row vectors.
#[derive(Clone, Debug)]
pub struct FpModule {
    pub prime: u64,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<u64>>>,
}

impl FpModule {
    /// The conjugation module `upper / lower` for an elementary abelian
    /// chief factor.
    pub fn from_chief_factor(lattice: &Lattice, upper: usize, lower: usize) -> Self {
        let table = lattice.table();
        let up = &lattice.subgroup(upper).elements;
        let low = lattice.subgroup(lower);
        let order = lattice.subgroup(upper).order / low.order;
        let prime = (2..=order).find(|p| order.is_multiple_of(*p)).unwrap() as u64;

        // Lift a basis of the quotient.
        let mut basis: Vec<ElemId> = Vec::new();
        let mut span = low.elements.clone();
        for x in up.iter() {
            if !span.contains(x) {
                basis.push(x);
                let mut gens = low.generators.clone();
                gens.extend(&basis);
                span = table.closure(&gens);
            }
        }
        let dim = basis.len();

        // coords[x] = coefficient vector (as an index in base p) of x mod lower.
        let mut coords: Vec<u32> = vec![u32::MAX; table.len()];
        let total = (prime as usize).pow(dim as u32);
        for c in 0..total {
            let mut e: ElemId = 0;
            let mut rest = c;
            for &h in &basis {
                for _ in 0..rest % prime as usize {
                    e = table.mul(e, h);
                }
                rest /= prime as usize;
            }
            for k in low.elements.iter() {
                coords[table.mul(e, k) as usize] = c as u32;
            }
        }
        let vector = |x: ElemId| -> Vec<u64> {
            let mut c = coords[x as usize] as u64;
            (0..dim)
                .map(|_| {
                    let v = c % prime;
                    c /= prime;
                    v
                })
                .collect()
        };
        let matrices = table
            .generator_ids()
            .iter()
            .map(|&g| basis.iter().map(|&h| vector(table.conj(h, g))).collect())
            .collect();
        Self { prime, dim, matrices }
    }

    /// Dimension over `F_p` of `Hom_G(self, other)`.
    pub fn hom_dimension(&self, other: &FpModule) -> usize {
        if self.prime != other.prime || self.matrices.len() != other.matrices.len() {
            return 0;
        }
        let p = self.prime;
        let (da, db) = (self.dim, other.dim);
        let var = |k: usize, j: usize| k * db + j;
        let mut rows = Vec::new();
        // M X = X N for every generator.
        for (m, n) in self.matrices.iter().zip(&other.matrices) {
            for i in 0..da {
                for j in 0..db {
                    let mut row = vec![0u64; da * db];
                    for k in 0..da {
                        row[var(k, j)] = (row[var(k, j)] + m[i][k]) % p;
                    }
                    for k in 0..db {
                        row[var(i, k)] = (row[var(i, k)] + p - n[k][j]) % p;
                    }
                    rows.push(row);
                }
            }
        }
        da * db - rank_mod_p(rows, p)
    }

    /// Degree over `F_p` of the endomorphism field (the module is irreducible).
    pub fn endomorphism_degree(&self) -> usize {
        self.hom_dimension(self)
    }

    pub fn is_isomorphic(&self, other: &FpModule) -> bool {
        self.dim == other.dim && self.hom_dimension(other) > 0
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;

    /// Brute-force count of intertwiners, for small modules.
    fn count_intertwiners(a: &FpModule, b: &FpModule) -> usize {
        let p = a.prime as usize;
        let n = a.dim * b.dim;
        let mut count = 0;
        for code in 0..p.pow(n as u32) {
            let mut c = code;
            let x: Vec<Vec<u64>> = (0..a.dim)
                .map(|_| {
                    (0..b.dim)
                        .map(|_| {
                            let v = (c % p) as u64;
                            c /= p;
                            v
                        })
                        .collect()
                })
                .collect();
            let ok = a.matrices.iter().zip(&b.matrices).all(|(m, nn)| {
                (0..a.dim).all(|i| {
                    (0..b.dim).all(|j| {
                        let l: u64 = (0..a.dim).map(|k| m[i][k] * x[k][j]).sum();
                        let r: u64 = (0..b.dim).map(|k| x[i][k] * nn[k][j]).sum();
                        l % a.prime == r % a.prime
                    })
                })
            });
            count += ok as usize;
        }
        count
    }

    fn modules(spec: &str) -> Vec<FpModule> {
        let l = Lattice::new(&parse_group_spec(spec).unwrap(), 1000).unwrap();
        let s = l.chief_series();
        s.factors
            .iter()
            .filter(|f| f.abelian)
            .map(|f| FpModule::from_chief_factor(&l, f.upper, f.lower))
            .collect()
    }

    #[test]
    fn s4_modules() {
        let ms = modules("S4");
        let dims: Vec<_> = ms.iter().map(|m| (m.prime, m.dim)).collect();
        assert_eq!(dims, vec![(2, 1), (3, 1), (2, 2)]);
        for m in &ms {
            assert_eq!(m.endomorphism_degree(), 1);
        }
        // The sign module and V4 are different 2-modules.
        assert!(!ms[0].is_isomorphic(&ms[2]));
    }

    #[test]
    fn hom_dimension_matches_enumeration() {
        for spec in ["S4", "A4", "C2^2", "Q8", "C3^2", "F21", "D8xC3", "S3xS3"] {
            let ms = modules(spec);
            for a in &ms {
                for b in &ms {
                    if a.prime == b.prime && a.dim * b.dim <= 4 {
                        let h = a.hom_dimension(b);
                        assert_eq!((a.prime as usize).pow(h as u32), count_intertwiners(a, b), "{spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn a4_module_has_field_endomorphisms() {
        // V4 under C3 is F_4 as a one-dimensional space.
        let ms = modules("A4");
        let v4 = ms.iter().find(|m| m.dim == 2).unwrap();
        assert_eq!(v4.endomorphism_degree(), 2);
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 1]], 5), 2);
        assert_eq!(rank_mod_p(vec![], 2), 0);
    }
}
