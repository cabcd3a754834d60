//! Sparse exact arithmetic in the group algebra k[Zʳ] and its tensor powers.
//!
//! An element of k[Zʳ]^{⊗m} is a finite sum of monomials `c · x₁⊗⋯⊗x_m` with
//! `xᵢ ∈ Zʳ` written multiplicatively. Units of these rings are exactly the
//! single-term elements, which is what makes unit recognition and inversion
//! purely syntactic here.

mod json;
mod maps;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use maps::{AlgebraMapSpec, CounitSpec};

/// An element of Zʳ, in multiplicative notation: entry `i` is the power of `gᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(exponents: Vec<i64>) -> Self {
        GroupElement(exponents)
    }

    pub fn identity(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    /// The generator `gᵢ` (0-based).
    pub fn generator(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        GroupElement(e)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Group law (componentwise addition of exponents).
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), other.rank());
        GroupElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|e| -e).collect())
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        GroupElement(self.0.iter().map(|e| e * k).collect())
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        if self.0.len() == 1 {
            return write!(f, "g^{}", self.0[0]);
        }
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "g^({})", parts.join(","))
    }
}

/// Key of a term: one group element per tensor leg.
pub type Monomial = Vec<GroupElement>;

fn mul_monomials(a: &[GroupElement], b: &[GroupElement]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
}

/// An element of k[Zʳ]^{⊗m}.
///
/// Terms live in a `BTreeMap` keyed by the leg tuple, so iteration order is
/// lexicographic on the concatenated exponents and structural equality is
/// mathematical equality. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    rank: usize,
    legs: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl TensorElement {
    fn check_shape(rank: usize, legs: usize) -> Result<()> {
        if rank == 0 {
            return Err(Error::InvalidShape("rank must be at least 1".into()));
        }
        if legs == 0 {
            return Err(Error::InvalidShape("an element needs at least one leg".into()));
        }
        Ok(())
    }

    pub fn zero(rank: usize, legs: usize) -> Result<Self> {
        Self::check_shape(rank, legs)?;
        Ok(TensorElement { rank, legs, terms: BTreeMap::new() })
    }

    pub fn one(rank: usize, legs: usize) -> Result<Self> {
        Self::scalar(rank, legs, Rational::one())
    }

    /// `c · 1⊗⋯⊗1`.
    pub fn scalar(rank: usize, legs: usize, c: Rational) -> Result<Self> {
        Self::term(rank, c, vec![GroupElement::identity(rank); legs])
    }

    /// A single term `c · x₁⊗⋯⊗x_m`.
    pub fn term(rank: usize, c: Rational, monomial: Monomial) -> Result<Self> {
        Self::from_terms(rank, monomial.len(), [(monomial, c)])
    }

    /// Builds an element from (monomial, coefficient) pairs, summing repeated
    /// monomials and dropping zeros.
    pub fn from_terms<I>(rank: usize, legs: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        Self::check_shape(rank, legs)?;
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mono, c) in terms {
            if mono.len() != legs {
                return Err(Error::LegMismatch { expected: legs, found: mono.len() });
            }
            if let Some(bad) = mono.iter().find(|x| x.rank() != rank) {
                return Err(Error::RankMismatch { expected: rank, found: bad.rank() });
            }
            *map.entry(mono).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(TensorElement { rank, legs, terms: map })
    }

    /// Convenience for tests and literals: integer exponent rows, one per leg.
    pub fn mono(rank: usize, c: Rational, legs: &[&[i64]]) -> Result<Self> {
        Self::term(rank, c, legs.iter().map(|e| GroupElement::new(e.to_vec())).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| c.is_one() && m.iter().all(GroupElement::is_identity))
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, monomial: &[GroupElement]) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    fn same_shape(&self, other: &TensorElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        if self.legs != other.legs {
            return Err(Error::LegMismatch { expected: self.legs, found: other.legs });
        }
        Ok(())
    }

    fn with_terms(&self, legs: usize, terms: BTreeMap<Monomial, Rational>) -> TensorElement {
        let mut terms = terms;
        terms.retain(|_, c| !c.is_zero());
        TensorElement { rank: self.rank, legs, terms }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.same_shape(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Rational::zero) += c;
        }
        Ok(self.with_terms(self.legs, terms))
    }

    pub fn neg(&self) -> TensorElement {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        TensorElement { rank: self.rank, legs: self.legs, terms }
    }

    pub fn scale(&self, s: &Rational) -> TensorElement {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        self.with_terms(self.legs, terms)
    }

    /// Product in k[Zʳ]^{⊗m}: legs multiply componentwise.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.same_shape(other)?;
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *terms.entry(mul_monomials(ma, mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(self.with_terms(self.legs, terms))
    }

    /// Product of a non-empty sequence of equally shaped elements, left to right.
    pub fn product<'a, I>(factors: I) -> Result<TensorElement>
    where
        I: IntoIterator<Item = &'a TensorElement>,
    {
        let mut it = factors.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidShape("empty product".into()))?
            .clone();
        it.try_fold(first, |acc, x| acc.mul(x))
    }

    /// Returns the canonical unit form iff `self` has exactly one term.
    pub fn as_unit(&self) -> Result<UnitElement> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit { terms: self.terms.len() });
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        Ok(UnitElement { rank: self.rank, scalar: c.clone(), factors: m.clone() })
    }

    pub fn invert_unit(&self) -> Result<TensorElement> {
        Ok(self.as_unit()?.inverse().to_tensor())
    }

    /// Outer tensor product: legs are concatenated, coefficients multiplied.
    pub fn tensor(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend(mb.iter().cloned());
                terms.insert(m, ca * cb);
            }
        }
        Ok(self.with_terms(self.legs + other.legs, terms))
    }

    /// Reorders legs: leg `j` of the result is leg `order[j]` of `self`.
    ///
    /// `order` must be a permutation of `0..legs`.
    pub fn permute_legs(&self, order: &[usize]) -> Result<TensorElement> {
        let mut seen = vec![false; self.legs];
        if order.len() != self.legs {
            return Err(Error::LegMismatch { expected: self.legs, found: order.len() });
        }
        for &i in order {
            if i >= self.legs || seen[i] {
                return Err(Error::InvalidShape(format!("{order:?} is not a leg permutation")));
            }
            seen[i] = true;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (order.iter().map(|&i| m[i].clone()).collect(), c.clone()))
            .collect();
        Ok(TensorElement { rank: self.rank, legs: self.legs, terms })
    }

    /// `id^{⊗i} ⊗ f ⊗ id^{⊗(m-i-1)}` for an algebra map `f` given on generators
    /// (0-based leg index). The leg is replaced by `f.target_legs()` legs.
    pub fn apply_map_on_leg(&self, f: &AlgebraMapSpec, leg: usize) -> Result<TensorElement> {
        if f.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: f.rank() });
        }
        if leg >= self.legs {
            return Err(Error::LegOutOfRange { leg, legs: self.legs });
        }
        let new_legs = self.legs - 1 + f.target_legs();
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let image = f.image_of(&m[leg]);
            let mut key = Vec::with_capacity(new_legs);
            key.extend(m[..leg].iter().cloned());
            key.extend(image.factors.iter().cloned());
            key.extend(m[leg + 1..].iter().cloned());
            *terms.entry(key).or_insert_with(Rational::zero) += c * &image.scalar;
        }
        Ok(self.with_terms(new_legs, terms))
    }

    /// Applies a coproduct (an algebra map into two legs) on `leg` (0-based).
    pub fn apply_coproduct_on_leg(&self, delta: &AlgebraMapSpec, leg: usize) -> Result<TensorElement> {
        if delta.target_legs() != 2 {
            return Err(Error::LegMismatch { expected: 2, found: delta.target_legs() });
        }
        self.apply_map_on_leg(delta, leg)
    }

    /// Contracts `leg` (0-based) with a counit. Needs at least two legs.
    pub fn apply_counit_on_leg(&self, eps: &CounitSpec, leg: usize) -> Result<TensorElement> {
        if eps.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: eps.rank() });
        }
        if leg >= self.legs {
            return Err(Error::LegOutOfRange { leg, legs: self.legs });
        }
        if self.legs < 2 {
            return Err(Error::InvalidShape(
                "counit contraction would leave no legs; use CounitSpec::eval".into(),
            ));
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = m.clone();
            let x = key.remove(leg);
            *terms.entry(key).or_insert_with(Rational::zero) += c * eps.eval(&x);
        }
        Ok(self.with_terms(self.legs - 1, terms))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let legs: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            write!(f, "{}·{}", c, legs.join("⊗"))?;
        }
        Ok(())
    }
}

/// Canonical form `q · x₁⊗⋯⊗x_m` of a unit. `m` may be 0 (a bare scalar).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitElement {
    rank: usize,
    scalar: Rational,
    factors: Monomial,
}

impl UnitElement {
    pub fn new(rank: usize, scalar: Rational, factors: Monomial) -> Result<Self> {
        if scalar.is_zero() {
            return Err(Error::NotAUnit { terms: 0 });
        }
        if let Some(bad) = factors.iter().find(|x| x.rank() != rank) {
            return Err(Error::RankMismatch { expected: rank, found: bad.rank() });
        }
        Ok(UnitElement { rank, scalar, factors })
    }

    pub fn identity(rank: usize, legs: usize) -> Self {
        UnitElement {
            rank,
            scalar: Rational::one(),
            factors: vec![GroupElement::identity(rank); legs],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn legs(&self) -> usize {
        self.factors.len()
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn factors(&self) -> &[GroupElement] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.scalar.is_one() && self.factors.iter().all(GroupElement::is_identity)
    }

    pub fn mul(&self, other: &UnitElement) -> Result<UnitElement> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        if self.legs() != other.legs() {
            return Err(Error::LegMismatch { expected: self.legs(), found: other.legs() });
        }
        Ok(UnitElement {
            rank: self.rank,
            scalar: &self.scalar * &other.scalar,
            factors: mul_monomials(&self.factors, &other.factors),
        })
    }

    pub fn inverse(&self) -> UnitElement {
        UnitElement {
            rank: self.rank,
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(GroupElement::inverse).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> UnitElement {
        UnitElement {
            rank: self.rank,
            scalar: rational::pow(&self.scalar, k),
            factors: self.factors.iter().map(|x| x.pow(k)).collect(),
        }
    }

    /// Panics for 0-leg units, which have no `TensorElement` counterpart.
    pub fn to_tensor(&self) -> TensorElement {
        assert!(!self.factors.is_empty(), "a 0-leg unit is a bare scalar");
        TensorElement::term(self.rank, self.scalar.clone(), self.factors.clone())
            .expect("unit shape is valid")
    }
}

impl fmt::Display for UnitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        if legs.is_empty() {
            write!(f, "{}", self.scalar)
        } else {
            write!(f, "{}·{}", self.scalar, legs.join("⊗"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m1(c: Rational, legs: &[&[i64]]) -> TensorElement {
        TensorElement::mono(1, c, legs).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let a = m1(int(2), &[&[1]]);
        let b = m1(int(3), &[&[-1]]);
        assert_eq!(a.mul(&b).unwrap(), m1(int(6), &[&[0]]));

        let x = m1(int(1), &[&[2], &[0], &[3]]);
        assert_eq!(x.mul(&TensorElement::one(1, 3).unwrap()).unwrap(), x);

        let s = m1(int(1), &[&[1], &[0]]).add(&m1(int(1), &[&[0], &[1]])).unwrap();
        let p = s.mul(&m1(int(1), &[&[1], &[0]])).unwrap();
        let expected = m1(int(1), &[&[2], &[0]]).add(&m1(int(1), &[&[1], &[1]])).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn multiply_shape_errors() {
        let a = TensorElement::one(1, 2).unwrap();
        let b = TensorElement::one(2, 2).unwrap();
        let c = TensorElement::one(1, 3).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::RankMismatch { .. })));
        assert!(matches!(a.mul(&c), Err(Error::LegMismatch { .. })));
        assert!(matches!(a.add(&c), Err(Error::LegMismatch { .. })));
    }

    #[test]
    fn add_examples() {
        let g = m1(int(1), &[&[1]]);
        let z = g.add(&g.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
        assert_eq!(g.add(&m1(int(1), &[&[2]])).unwrap().num_terms(), 2);
        let half = m1(frac(1, 2), &[&[0]]);
        assert_eq!(half.add(&half).unwrap(), TensorElement::one(1, 1).unwrap());
    }

    #[test]
    fn unit_recognition() {
        let x = m1(int(1), &[&[2], &[0], &[3]]);
        let u = x.as_unit().unwrap();
        assert_eq!(u.scalar(), &int(1));
        assert_eq!(
            u.factors(),
            &[GroupElement::new(vec![2]), GroupElement::new(vec![0]), GroupElement::new(vec![3])]
        );
        let one = TensorElement::one(1, 2).unwrap().as_unit().unwrap();
        assert!(one.is_identity());
        let two = m1(int(1), &[&[1]]).add(&m1(int(1), &[&[2]])).unwrap();
        assert_eq!(two.as_unit(), Err(Error::NotAUnit { terms: 2 }));
        assert_eq!(TensorElement::zero(1, 1).unwrap().as_unit(), Err(Error::NotAUnit { terms: 0 }));
    }

    #[test]
    fn invert_examples() {
        let x = m1(int(2), &[&[1], &[-1]]);
        assert_eq!(x.invert_unit().unwrap(), m1(frac(1, 2), &[&[-1], &[1]]));
        let one = TensorElement::one(1, 3).unwrap();
        assert_eq!(one.invert_unit().unwrap(), one);
        assert!(x.mul(&x.invert_unit().unwrap()).unwrap().is_one());
    }

    #[test]
    fn tensor_concat_examples() {
        let phi = m1(int(1), &[&[1], &[0], &[2]]);
        let one = TensorElement::one(1, 1).unwrap();
        assert_eq!(phi.tensor(&one).unwrap(), m1(int(1), &[&[1], &[0], &[2], &[0]]));
        assert_eq!(one.tensor(&phi).unwrap(), m1(int(1), &[&[0], &[1], &[0], &[2]]));
        let a = m1(int(2), &[&[1]]);
        let b = m1(int(3), &[&[2]]);
        assert_eq!(a.tensor(&b).unwrap(), m1(int(6), &[&[1], &[2]]));
        assert!(a.tensor(&TensorElement::one(2, 1).unwrap()).is_err());
    }

    #[test]
    fn coproduct_on_leg_examples() {
        let delta = AlgebraMapSpec::diagonal(1);
        let g2 = m1(int(1), &[&[2]]);
        assert_eq!(g2.apply_coproduct_on_leg(&delta, 0).unwrap(), m1(int(1), &[&[2], &[2]]));

        let phi = m1(int(1), &[&[1], &[0], &[3]]);
        assert_eq!(
            phi.apply_coproduct_on_leg(&delta, 1).unwrap(),
            m1(int(1), &[&[1], &[0], &[0], &[3]])
        );

        let skew = AlgebraMapSpec::new(1, 2, vec![m1(frac(1, 2), &[&[1], &[1]])]).unwrap();
        assert_eq!(g2.apply_coproduct_on_leg(&skew, 0).unwrap(), m1(frac(1, 4), &[&[2], &[2]]));

        assert!(matches!(
            phi.apply_coproduct_on_leg(&delta, 3),
            Err(Error::LegOutOfRange { leg: 3, legs: 3 })
        ));
        assert!(matches!(
            phi.apply_coproduct_on_leg(&AlgebraMapSpec::diagonal(2), 0),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn counit_on_leg_examples() {
        let eps = CounitSpec::trivial(1);
        let phi = m1(int(1), &[&[1], &[0], &[3]]);
        assert_eq!(phi.apply_counit_on_leg(&eps, 1).unwrap(), m1(int(1), &[&[1], &[3]]));
        let x = m1(int(1), &[&[0], &[1]]);
        assert_eq!(x.apply_counit_on_leg(&eps, 0).unwrap(), m1(int(1), &[&[1]]));

        let eps2 = CounitSpec::new(vec![int(2)]).unwrap();
        let y = m1(int(1), &[&[2], &[5]]);
        assert_eq!(y.apply_counit_on_leg(&eps2, 0).unwrap(), m1(int(4), &[&[5]]));

        assert!(matches!(
            m1(int(1), &[&[1]]).apply_counit_on_leg(&eps, 0),
            Err(Error::InvalidShape(_))
        ));
        assert!(matches!(y.apply_counit_on_leg(&eps, 2), Err(Error::LegOutOfRange { .. })));
    }

    #[test]
    fn permute_legs_reorders() {
        let x = m1(int(3), &[&[1], &[2], &[3]]);
        assert_eq!(x.permute_legs(&[1, 2, 0]).unwrap(), m1(int(3), &[&[2], &[3], &[1]]));
        assert!(x.permute_legs(&[0, 0, 1]).is_err());
    }

    #[test]
    fn display_renders_terms() {
        let x = m1(frac(1, 2), &[&[1], &[0]]);
        assert_eq!(x.to_string(), "1/2·g^1⊗1");
        let y = TensorElement::mono(2, int(3), &[&[1, -2]]).unwrap();
        assert_eq!(y.to_string(), "3·g^(1,-2)");
    }
}
