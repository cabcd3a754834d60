//! Dense exact rational matrices, stored as an integer matrix over one
//! positive common denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Invariant: `den > 0` and `gcd(den, all entries) = 1`, so structural
/// equality is equality of matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl RatMatrix {
    fn from_parts(rows: usize, cols: usize, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut m = RatMatrix { rows, cols, num, den };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for x in &mut self.num {
                *x = -&*x;
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                return;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() {
            for x in &mut self.num {
                *x /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, num: vec![BigInt::zero(); rows * cols], den: BigInt::one() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.num[i * n + i] = BigInt::one();
        }
        m
    }

    /// The 1×1 matrix `[q]`.
    pub fn scalar(q: &Rational) -> Self {
        Self::from_parts(1, 1, vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_rationals(rows: usize, cols: usize, entries: &[Rational]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let den = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let num = entries.iter().map(|e| e.numer() * (&den / e.denom())).collect();
        Ok(Self::from_parts(rows, cols, num, den))
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidShape("ragged matrix rows".into()));
        }
        let flat: Vec<Rational> = rows.iter().flatten().cloned().collect();
        Self::from_rationals(rows.len(), cols, &flat)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let num = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        RatMatrix { rows: rows.len(), cols, num, den: BigInt::one() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.num[i * self.cols + j].clone(), self.den.clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|x| x * q.numer()).collect();
        Self::from_parts(self.rows, self.cols, num, &self.den * q.denom())
    }

    fn combine(&self, other: &RatMatrix, sign: i8) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let den = self.den.lcm(&other.den);
        let (ka, kb) = (&den / &self.den, &den / &other.den);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| if sign > 0 { a * &ka + b * &kb } else { a * &ka - b * &kb })
            .collect();
        Self::from_parts(self.rows, self.cols, num, den)
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.combine(other, -1)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let num = match (small_entries(&self.num), small_entries(&other.num)) {
            (Some(a), Some(b)) if fits_i128(&a, &b, self.cols) => {
                mul_i128(&a, &b, self.rows, self.cols, other.cols)
            }
            _ => mul_big(&self.num, &other.num, self.rows, self.cols, other.cols),
        };
        Self::from_parts(self.rows, other.cols, num, &self.den * &other.den)
    }

    /// Kronecker product, row-major with the left factor slowest.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut num = vec![BigInt::zero(); r * c];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.num[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other.num[k * other.cols + l];
                        if !b.is_zero() {
                            num[(i * other.rows + k) * c + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        Self::from_parts(r, c, num, &self.den * &other.den)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = self.to_rows();
        let mut inv: Vec<Vec<Rational>> = Self::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
                return Err(Error::NotInvertible);
            };
            a.swap(col, p);
            inv.swap(col, p);
            let pivot = a[col][col].recip();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x *= &pivot;
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let k = a[i][col].clone();
                for j in 0..n {
                    let (s, t) = (&a[col][j] * &k, &inv[col][j] * &k);
                    a[i][j] -= s;
                    inv[i][j] -= t;
                }
            }
        }
        RatMatrix::from_rows(&inv)
    }

    /// `self^e`; negative exponents need an invertible matrix.
    pub fn pow(&self, e: i64) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::InvalidShape("powers need a square matrix".into()));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_nonneg(e.unsigned_abs()))
    }

    pub(crate) fn pow_nonneg(&self, mut e: u64) -> RatMatrix {
        let mut result = Self::identity(self.rows);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        result
    }

    /// The permutation matrix of `x⊗y ↦ y⊗x` from `X⊗Y` to `Y⊗X`.
    pub fn flip(dx: usize, dy: usize) -> RatMatrix {
        let n = dx * dy;
        let mut m = Self::zeros(n, n);
        for i in 0..dx {
            for j in 0..dy {
                m.num[(j * dx + i) * n + i * dy + j] = BigInt::one();
            }
        }
        m
    }
}

fn small_entries(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(ToPrimitive::to_i128).collect()
}

fn bits(v: &[i128]) -> u32 {
    v.iter().map(|x| 128 - x.unsigned_abs().leading_zeros()).max().unwrap_or(0)
}

/// Whether every dot product of length `inner` stays well inside i128.
fn fits_i128(a: &[i128], b: &[i128], inner: usize) -> bool {
    let inner_bits = usize::BITS - inner.leading_zeros();
    bits(a) + bits(b) + inner_bits <= 125
}

fn mul_i128(a: &[i128], b: &[i128], n: usize, k: usize, m: usize) -> Vec<BigInt> {
    let mut out = vec![0i128; n * m];
    for i in 0..n {
        let row = &mut out[i * m..(i + 1) * m];
        for t in 0..k {
            let x = a[i * k + t];
            if x == 0 {
                continue;
            }
            for (o, y) in row.iter_mut().zip(&b[t * m..(t + 1) * m]) {
                *o += x * y;
            }
        }
    }
    out.into_iter().map(BigInt::from).collect()
}

fn mul_big(a: &[BigInt], b: &[BigInt], n: usize, k: usize, m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * m];
    for i in 0..n {
        for t in 0..k {
            let x = &a[i * k + t];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                let y = &b[t * m + j];
                if !y.is_zero() {
                    out[i * m + j] += x * y;
                }
            }
        }
    }
    out
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(rational::format).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| rational::parse(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        RatMatrix::from_rows(&parsed).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn normalization_makes_equality_structural() {
        let a = RatMatrix::from_rows(&[vec![frac(1, 2), frac(2, 4)]]).unwrap();
        let b = RatMatrix::from_i64_rows(&[vec![1, 1]]).scale(&frac(1, 2));
        assert_eq!(a, b);
        assert_eq!(a.scale(&int(2)), RatMatrix::from_i64_rows(&[vec![1, 1]]));
    }

    #[test]
    fn kron_by_hand() {
        let a = RatMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        let b = RatMatrix::scalar(&int(2));
        assert_eq!(a.kron(&b), RatMatrix::from_i64_rows(&[vec![2, 2], vec![0, 2]]));
        let c = RatMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            a.kron(&c),
            RatMatrix::from_i64_rows(&[
                vec![0, 1, 0, 1],
                vec![1, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0]
            ])
        );
    }

    #[test]
    fn flip_swaps_kronecker_factors() {
        let a = RatMatrix::from_i64_rows(&[vec![1, 2], vec![3, 5]]);
        let b = RatMatrix::from_i64_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        let lhs = RatMatrix::flip(2, 3).mul(&a.kron(&b));
        let rhs = b.kron(&a).mul(&RatMatrix::flip(2, 3));
        assert_eq!(lhs, rhs);
        assert!(RatMatrix::flip(3, 2).mul(&RatMatrix::flip(2, 3)).is_identity());
    }

    #[test]
    fn inverse_and_powers() {
        let a = RatMatrix::from_rows(&[vec![int(2), int(1)], vec![int(1), frac(1, 2)]]).unwrap();
        assert_eq!(a.inverse(), Err(Error::NotInvertible));
        let b = RatMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]);
        assert!(b.mul(&b.inverse().unwrap()).is_identity());
        assert_eq!(b.pow(-2).unwrap().mul(&b.pow(2).unwrap()), RatMatrix::identity(2));
        assert_eq!(b.pow(0).unwrap(), RatMatrix::identity(2));
        assert_eq!(RatMatrix::scalar(&int(3)).pow(-1).unwrap(), RatMatrix::scalar(&frac(1, 3)));
    }

    #[test]
    fn big_entries_take_the_slow_path() {
        let big = RatMatrix::from_i64_rows(&[vec![i64::MAX, 1], vec![1, 0]]);
        let sq = big.mul(&big);
        let m = BigInt::from(i64::MAX);
        assert_eq!(sq.get(0, 0), Rational::from_integer(&m * &m + 1));
        let p4 = sq.mul(&sq);
        assert_eq!(p4, big.pow(4).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let a = RatMatrix::from_rows(&[vec![frac(1, 2), int(0)], vec![int(-3), frac(2, 3)]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1/2","0/1"],["-3/1","2/3"]]"#);
        assert_eq!(serde_json::from_str::<RatMatrix>(&s).unwrap(), a);
    }

    proptest! {
        #[test]
        fn fast_and_slow_products_agree(
            a in prop::collection::vec(-1000i64..1000, 9),
            b in prop::collection::vec(-1000i64..1000, 9),
        ) {
            let to = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
            let small = |v: &[i64]| v.iter().map(|&x| x as i128).collect::<Vec<_>>();
            prop_assert_eq!(mul_i128(&small(&a), &small(&b), 3, 3, 3), mul_big(&to(&a), &to(&b), 3, 3, 3));
        }

        #[test]
        fn inverse_round_trips(e in prop::collection::vec(-4i64..=4, 9), shift in 1i64..5) {
            let mut rows: Vec<Vec<i64>> = e.chunks(3).map(|r| r.to_vec()).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] += 20 * shift;
            }
            let m = RatMatrix::from_i64_rows(&rows).scale(&frac(1, shift));
            prop_assert!(m.mul(&m.inverse().unwrap()).is_identity());
        }
    }
}
