//! Integer matrices: fraction-free elimination, column Hermite reduction, saturated
//! kernels and Smith invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length");
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "rectangular literal");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduction into any field (ℚ embedding or residues mod p).
    pub fn to_field<F: Field>(&self, field: &F) -> Matrix<F> {
        let rows = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| field.from_bigint(self.get(i, j)))
                    .collect()
            })
            .collect();
        Matrix::from_rows(field, self.cols, rows).expect("rectangular")
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[dst] -= q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) - q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) - q * self.get(src, j);
            self.set(dst, j, v);
        }
    }
}

fn bareiss(mut m: IntMatrix) -> (usize, BigInt, bool) {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            m.swap_rows(p, r);
            negate = !negate;
        }
        let piv = m.get(r, c).clone();
        for i in r + 1..m.rows {
            let lead = m.get(i, c).clone();
            for j in c + 1..m.cols {
                let v = (&piv * m.get(i, j) - &lead * m.get(r, j)) / &prev;
                m.set(i, j, v);
            }
            m.set(i, c, BigInt::zero());
        }
        prev = piv;
        r += 1;
    }
    (r, prev, negate)
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    bareiss(m.clone()).0
}

/// Exact determinant by Bareiss elimination.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "square matrix");
    if m.rows == 0 {
        return BigInt::one();
    }
    let (rank, last, negate) = bareiss(m.clone());
    if rank < m.rows {
        return BigInt::zero();
    }
    if negate {
        -last
    } else {
        last
    }
}

/// Column Hermite reduction: returns `(H, V)` with `A·V = H`, `V` unimodular and `H`
/// in column echelon form (the first `rank` columns carry the pivots, the rest vanish).
pub fn column_hermite(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut v = IntMatrix::identity(a.cols);
    let mut pivot = 0;
    for i in 0..h.rows {
        if pivot == h.cols {
            break;
        }
        // pivot on the smallest nonzero entry of row i among the unreduced columns
        while let Some(best) = (pivot..h.cols)
            .filter(|&c| !h.get(i, c).is_zero())
            .min_by_key(|&c| h.get(i, c).abs())
        {
            h.swap_cols(pivot, best);
            v.swap_cols(pivot, best);
            let mut clean = true;
            for c in pivot + 1..h.cols {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(i, pivot));
                h.col_axpy(c, pivot, &q);
                v.col_axpy(c, pivot, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                pivot += 1;
                break;
            }
        }
    }
    (h, v)
}

/// Saturated basis (as columns) of the integer kernel `{x ∈ ℤ^cols : A x = 0}`.
pub fn integer_kernel_saturated(a: &IntMatrix) -> IntMatrix {
    let (h, v) = column_hermite(a);
    let zero_cols: Vec<usize> = (0..h.cols)
        .filter(|&c| (0..h.rows).all(|i| h.get(i, c).is_zero()))
        .collect();
    let mut out = IntMatrix::zeros(a.cols, zero_cols.len());
    for (k, &c) in zero_cols.iter().enumerate() {
        for i in 0..a.cols {
            out.set(i, k, v.get(i, c).clone());
        }
    }
    out
}

/// Nonzero invariant factors of the Smith normal form, each positive, in divisibility order.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.clone();
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.rows.min(m.cols) {
        // pivot: smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if m.get(i, j).is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| m.get(i, j).abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        m.swap_cols(t, bj);
        let mut done = true;
        for i in t + 1..m.rows {
            let q = m.get(i, t).div_floor(m.get(t, t));
            if !q.is_zero() {
                m.row_axpy(i, t, &q);
            }
            if !m.get(i, t).is_zero() {
                done = false;
            }
        }
        for j in t + 1..m.cols {
            let q = m.get(t, j).div_floor(m.get(t, t));
            if !q.is_zero() {
                m.col_axpy(j, t, &q);
            }
            if !m.get(t, j).is_zero() {
                done = false;
            }
        }
        if !done {
            continue;
        }
        // divisibility: fold any entry not divisible by the pivot into row t
        let piv = m.get(t, t).clone();
        let bad = (t + 1..m.rows)
            .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !m.get(i, j).is_multiple_of(&piv));
        if let Some((i, _)) = bad {
            m.row_axpy(t, i, &BigInt::from(-1));
            continue;
        }
        out.push(piv.abs());
        t += 1;
    }
    out
}

/// Whether the lattice spanned by the columns is saturated in ℤ^rows: all invariant
/// factors equal 1 and the columns are independent.
pub fn is_saturated(basis: &IntMatrix) -> bool {
    let divs = elementary_divisors(basis);
    divs.len() == basis.cols && divs.iter().all(One::is_one)
}
