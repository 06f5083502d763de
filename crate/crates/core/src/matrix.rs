//! Dense matrices and subspaces over a small finite field. Vectors are rows
//! and matrices act on the right.

use serde::Serialize;

use crate::field::{Fq, FqField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(n: usize, s: Fq) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<Fq>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Fq))
    }

    /// Is this `s I` for some `s`? Returns `s`.
    pub fn scalar_value(&self) -> Option<Fq> {
        let s = self.get(0, 0);
        (*self == Self::scalar(self.rows, s)).then_some(s)
    }

    pub fn mul(&self, other: &Self, k: &FqField) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = k.add(out.get(i, j), k.mul(a, other.get(t, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, s: Fq, k: &FqField) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| k.mul(s, x)).collect(),
        }
    }

    /// Entrywise `x -> x^(p^times)`.
    pub fn frobenius(&self, times: usize, k: &FqField) -> Self {
        let mut data = self.data.clone();
        for _ in 0..times {
            for x in data.iter_mut() {
                *x = k.frobenius(*x);
            }
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form with zero rows removed.
    pub fn echelon(&self, k: &FqField) -> Self {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, piv * m.cols + j);
            }
            let s = k.inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, k.mul(s, m.get(r, j)));
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            r += 1;
            if r == m.rows {
                break;
            }
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        m
    }

    pub fn rank(&self, k: &FqField) -> usize {
        self.echelon(k).rows
    }

    pub fn determinant(&self, k: &FqField) -> Fq {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det: Fq = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    m.data.swap(c * n + j, piv * n + j);
                }
                det = k.neg(det);
            }
            let d = m.get(c, c);
            det = k.mul(det, d);
            let s = k.inv(d);
            for i in c + 1..n {
                let f = k.mul(m.get(i, c), s);
                if f != 0 {
                    for j in c..n {
                        let v = k.sub(m.get(i, j), k.mul(f, m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self, k: &FqField) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let e = aug.echelon(k);
        if e.rows < n || !(0..n).all(|i| e.get(i, i) == 1) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, e.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Fq], m: &FqMatrix, k: &FqField) -> Vec<Fq> {
    let mut out = vec![0; m.cols()];
    for (t, &a) in v.iter().enumerate() {
        if a != 0 {
            for (j, o) in out.iter_mut().enumerate() {
                *o = k.add(*o, k.mul(a, m.get(t, j)));
            }
        }
    }
    out
}

/// A subspace stored by its reduced echelon basis, so equal subspaces have
/// equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FqSubspace {
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl FqSubspace {
    pub fn span(vectors: &[Vec<Fq>], k: &FqField) -> Self {
        Self::from_matrix(&FqMatrix::from_rows(vectors), k)
    }

    pub fn from_matrix(m: &FqMatrix, k: &FqField) -> Self {
        let basis = m.echelon(k);
        let pivots = (0..basis.rows())
            .map(|i| (0..basis.cols()).find(|&j| basis.get(i, j) != 0).unwrap())
            .collect();
        Self { basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Fq], k: &FqField) -> bool {
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    *x = k.sub(*x, k.mul(f, self.basis.get(i, j)));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Image under `v -> v g`.
    pub fn image(&self, g: &FqMatrix, k: &FqField) -> Self {
        Self::from_matrix(&self.basis.mul(g, k), k)
    }

    /// Does `g` map this subspace into `target`?
    pub fn maps_into(&self, g: &FqMatrix, target: &FqSubspace, k: &FqField) -> bool {
        (0..self.dim()).all(|i| target.contains(&vec_mul(self.basis.row(i), g, k), k))
    }

    pub fn frobenius(&self, times: usize, k: &FqField) -> Self {
        Self::from_matrix(&self.basis.frobenius(times, k), k)
    }

    /// Gram matrix of the echelon basis under the form with matrix `form`.
    pub fn gram(&self, form: &FqMatrix, k: &FqField) -> FqMatrix {
        self.basis.mul(form, k).mul(&self.basis.transpose(), k)
    }
}
