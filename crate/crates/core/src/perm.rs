//! Permutations of `{0..n-1}`.
//!
//! Products compose left to right: `a.compose(&b)` applies `a` first, then
//! `b`. Text I/O uses disjoint cycle notation with 1-based points, e.g.
//! `(1,2)(3,4,5)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point type. Degrees in this crate never exceed `u16::MAX`.
pub type Point = u16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let p = p as usize;
            if p >= n || seen[p] {
                return Err(Error::NotBijection);
            }
            seen[p] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    /// Builds the permutation from a list of cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut perm = Self::identity(degree);
        for cycle in cycles {
            let mut c = Self::identity(degree);
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p + 1, degree });
                }
                let next = cycle[(k + 1) % cycle.len()];
                c.images[p] = next as Point;
            }
            let c = Self::from_images(c.images)?;
            // Cycles are applied right to left.
            perm = c.compose(&perm);
        }
        Ok(perm)
    }

    /// Parses 1-based cycle notation. Cycles need not be disjoint; they are
    /// applied right to left. Empty text and `( )` give the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(Error::Syntax(format!("expected '(' in {text:?}")));
            };
            let Some(close) = stripped.find(')') else {
                return Err(Error::Syntax(format!("unclosed cycle in {text:?}")));
            };
            let body = stripped[..close].trim();
            rest = stripped[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::Syntax(format!("bad point {tok:?} in {text:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if cycle.contains(&(p - 1)) {
                    return Err(Error::Syntax(format!("repeated point {p} in a cycle")));
                }
                cycle.push(p - 1);
            }
            cycles.push(cycle);
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as Point;
        }
        Self { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().compose(self).compose(g)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| i != p as usize)
            .map(|(i, _)| i)
    }
}

impl TryFrom<Vec<Point>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        Self::from_images(v)
    }
}

impl From<Permutation> for Vec<Point> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
