//! Dense integer matrices with Smith and Hermite normal forms.
//!
//! Everything is over arbitrary-precision integers. The Smith decomposition
//! keeps the unimodular transforms so kernels, images and integer solutions
//! can be read off directly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_columns(cols: &[Vec<BigInt>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Rows `range` of `self` as a new matrix.
    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let mut out = IntMatrix::zeros(range.len(), self.cols);
        for (k, i) in range.enumerate() {
            for j in 0..self.cols {
                out[(k, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `P · A · Q = D` with `P`, `Q` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero invariant factors, all positive.
    pub factors: Vec<BigInt>,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// A basis of `ker A` (columns of `Q` past the rank).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.q.cols()).map(|j| self.q.column(j)).collect()
    }

    /// Invariant factors greater than one, i.e. the torsion of `coker A`.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// One integer solution of `A x = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.p.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.q.cols()];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank() {
                let (quot, rem) = ci.div_rem(&self.factors[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = quot;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.q.mul_vec(&y))
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = IntMatrix::identity(m);
    let mut q = IntMatrix::identity(n);
    let mut q_inv = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&ij| !d[ij].is_zero())
            .min_by(|&x, &y| d[x].abs().cmp(&d[y].abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        p.swap_rows(t, pi);
        d.swap_cols(t, pj);
        q.swap_cols(t, pj);
        q_inv.swap_rows(t, pj);

        let mut clean = true;
        for i in t + 1..m {
            if d[(i, t)].is_zero() {
                continue;
            }
            let k = -d[(i, t)].div_floor(&d[(t, t)]);
            d.add_row(i, t, &k);
            p.add_row(i, t, &k);
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if d[(t, j)].is_zero() {
                continue;
            }
            let k = -d[(t, j)].div_floor(&d[(t, t)]);
            d.add_col(j, t, &k);
            q.add_col(j, t, &k);
            let neg = -&k;
            q_inv.add_row(t, j, &neg);
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and redo the pivot
        let offending = (t + 1..m)
            .find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
        if let Some(i) = offending {
            let one = BigInt::one();
            d.add_row(t, i, &one);
            p.add_row(t, i, &one);
            continue;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..t).map(|i| d[(i, i)].clone()).collect();
    Smith { factors, p, q, q_inv }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`;
/// zero rows are dropped. Pivots are positive and entries above each pivot
/// are reduced into `[0, pivot)`.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&x, &y| h[(x, c)].abs().cmp(&h[(y, c)].abs()));
            let Some(pi) = pivot else { break };
            h.swap_rows(r, pi);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let k = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row(i, r, &k);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let k = -h[(i, c)].div_floor(&h[(r, c)]);
            if !k.is_zero() {
                h.add_row(i, r, &k);
            }
        }
        r += 1;
    }
    h.select_rows(0..r)
}
