//! Solving "this unit must be 1" conditions over the monomial ansatz `t·x⊗y`.
//!
//! Every identity we solve is a product of units in a commutative ring, so the
//! exponents of its residual depend affinely on the exponents of the unknown
//! monomial and its scalar is a fixed scalar times a power of `t`. The affine
//! map is recovered by probing with basis vectors and then solved exactly.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::rational::{self, Rational};

/// Exponents and scalars of the residual units; the target is all-zero exponents
/// and all-one scalars.
pub(crate) type Residual = (Vec<BigInt>, Vec<Rational>);

/// All `(t, v)` with `residual(t, v)` trivial. Errors if the solution set is
/// infinite (a nontrivial exponent lattice or an unconstrained `t`).
pub(crate) fn solve<F>(unknowns: usize, residual: F) -> Result<Vec<(Rational, Vec<i64>)>>
where
    F: Fn(&Rational, &[i64]) -> Result<Residual>,
{
    let one = Rational::one();
    let zero = vec![0i64; unknowns];
    let (base, _) = residual(&one, &zero)?;
    let mut columns = Vec::with_capacity(unknowns);
    for k in 0..unknowns {
        let mut v = zero.clone();
        v[k] = 1;
        let (col, _) = residual(&one, &v)?;
        columns.push(col.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>());
    }
    let system = IntMatrix::from_columns(&columns, base.len());
    let snf = intmat::smith(&system);
    let rhs: Vec<BigInt> = base.iter().map(|b| -b).collect();
    let Some(solution) = snf.solve(&rhs) else {
        return Ok(Vec::new());
    };
    if snf.rank() < unknowns {
        return Err(Error::InvalidShape("the exponent solutions form an infinite lattice".into()));
    }
    let v = solution
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::InvalidShape("exponent overflow".into())))
        .collect::<Result<Vec<_>>>()?;

    let (_, s1) = residual(&one, &v)?;
    let (_, s2) = residual(&rational::int(2), &v)?;
    let mut candidates: Option<Vec<Rational>> = None;
    for (a, b) in s1.iter().zip(&s2) {
        let ratio = b / a;
        let two = rational::int(2);
        let Some(k) = (-16..=16).find(|&k| rational::pow(&two, k) == ratio) else {
            return Err(Error::InvalidShape(format!("scalar ratio {ratio} is not a power of t")));
        };
        if k == 0 {
            if !a.is_one() {
                return Ok(Vec::new());
            }
            continue;
        }
        let allowed = rational::roots(&a.recip(), k);
        candidates = Some(match candidates {
            None => allowed,
            Some(prev) => prev.into_iter().filter(|t| allowed.contains(t)).collect(),
        });
    }
    let Some(ts) = candidates else {
        return Err(Error::InvalidShape("the scalar t is unconstrained".into()));
    };
    Ok(ts.into_iter().map(|t| (t, v.clone())).collect())
}
