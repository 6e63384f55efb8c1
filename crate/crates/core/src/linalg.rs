//! Dense matrices over GF(q): echelon form, rank, null space.

use crate::galois::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Fe>], cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.mul_add(out.get(r, c), a, other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn left_mul(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Fe::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.mul_add(*o, a, x);
            }
        }
        out
    }

    /// In-place reduced row echelon form; drops zero rows and returns the
    /// pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if p != rank {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, rank * self.cols + k);
                }
            }
            let inv = f.inv_nz(self.get(rank, c));
            for k in 0..self.cols {
                let v = f.mul(self.get(rank, k), inv);
                self.set(rank, k, v);
            }
            let pivot_row = self.row(rank).to_vec();
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let na = f.neg(a);
                for (k, &x) in pivot_row.iter().enumerate().skip(c) {
                    let v = f.mul_add(self.get(r, k), na, x);
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        self.rows = rank;
        self.data.truncate(rank * self.cols);
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`.
    pub fn null_space(&self, f: &Field) -> Matrix {
        let mut e = self.clone();
        let pivots = e.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Fe::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(e.get(r, fc)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_is_orthogonal() {
        let f = Field::new(3, 1).unwrap();
        let m = Matrix::from_rows(
            &[
                vec![Fe(1), Fe(2), Fe(0), Fe(1)],
                vec![Fe(2), Fe(1), Fe(1), Fe(0)],
                vec![Fe(0), Fe(0), Fe(1), Fe(1)],
            ],
            4,
        );
        let n = m.null_space(&f);
        assert_eq!(m.rank(&f) + n.rows, 4);
        let prod = m.mul(&n.transpose(), &f);
        assert!(prod.data.iter().all(|x| x.is_zero()));
    }
}
