use num_traits::{One, Zero};

use super::{GroupElement, TensorElement, UnitElement};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// An algebra map k[Zʳ] → k[Zʳ]^{⊗m}, stored by the images of the generators.
///
/// Each image has to be a unit, otherwise the map would not extend to the
/// inverses `gᵢ⁻¹`. A monomial `g^e` is sent to `∏ image(gᵢ)^{eᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraMapSpec {
    rank: usize,
    target_legs: usize,
    images: Vec<UnitElement>,
}

impl AlgebraMapSpec {
    pub fn new(rank: usize, target_legs: usize, images: Vec<TensorElement>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::InvalidShape(format!(
                "algebra map on rank {rank} needs {rank} generator images, got {}",
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|x| {
                if x.rank() != rank {
                    return Err(Error::RankMismatch { expected: rank, found: x.rank() });
                }
                if x.legs() != target_legs {
                    return Err(Error::LegMismatch { expected: target_legs, found: x.legs() });
                }
                x.as_unit()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMapSpec { rank, target_legs, images })
    }

    pub fn from_units(rank: usize, target_legs: usize, images: Vec<UnitElement>) -> Result<Self> {
        Self::new(rank, target_legs, images.iter().map(UnitElement::to_tensor).collect())
    }

    /// `gᵢ ↦ gᵢ⊗⋯⊗gᵢ` (`m` copies); `m = 2` is the ordinary coproduct.
    pub fn diagonal_with_legs(rank: usize, target_legs: usize) -> Self {
        let images = (0..rank)
            .map(|i| UnitElement {
                rank,
                scalar: Rational::one(),
                factors: vec![GroupElement::generator(rank, i); target_legs],
            })
            .collect();
        AlgebraMapSpec { rank, target_legs, images }
    }

    /// The ordinary coproduct `Δ(g) = g⊗g`.
    pub fn diagonal(rank: usize) -> Self {
        Self::diagonal_with_legs(rank, 2)
    }

    pub fn identity(rank: usize) -> Self {
        Self::diagonal_with_legs(rank, 1)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn target_legs(&self) -> usize {
        self.target_legs
    }

    pub fn generator_images(&self) -> &[UnitElement] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> TensorElement {
        self.images[generator].to_tensor()
    }

    /// Image of the monomial `g^e`, always a unit.
    pub fn image_of(&self, x: &GroupElement) -> UnitElement {
        let mut scalar = Rational::one();
        let mut factors = vec![GroupElement::identity(self.rank); self.target_legs];
        for (img, &e) in self.images.iter().zip(x.exponents()) {
            if e == 0 {
                continue;
            }
            scalar *= rational::pow(&img.scalar, e);
            for (acc, y) in factors.iter_mut().zip(&img.factors) {
                *acc = acc.mul(&y.pow(e));
            }
        }
        UnitElement { rank: self.rank, scalar, factors }
    }

    /// Applies the map to a single-leg element.
    pub fn apply(&self, x: &TensorElement) -> Result<TensorElement> {
        if x.legs() != 1 {
            return Err(Error::LegMismatch { expected: 1, found: x.legs() });
        }
        x.apply_map_on_leg(self, 0)
    }

    /// Whether this is exactly the ordinary diagonal map.
    pub fn is_diagonal(&self) -> bool {
        *self == Self::diagonal_with_legs(self.rank, self.target_legs)
    }
}

/// A counit k[Zʳ] → k, stored by the (nonzero) values on generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CounitSpec {
    values: Vec<Rational>,
}

impl CounitSpec {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidShape("counit needs at least one generator".into()));
        }
        if values.iter().any(Zero::is_zero) {
            return Err(Error::InvalidShape("counit values must be nonzero".into()));
        }
        Ok(CounitSpec { values })
    }

    /// `ε(gᵢ) = 1`.
    pub fn trivial(rank: usize) -> Self {
        CounitSpec { values: vec![Rational::one(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    /// `ε(g^e) = ∏ ε(gᵢ)^{eᵢ}`.
    pub fn eval(&self, x: &GroupElement) -> Rational {
        self.values
            .iter()
            .zip(x.exponents())
            .fold(Rational::one(), |acc, (v, &e)| acc * rational::pow(v, e))
    }

    /// Linear extension to a single-leg element.
    pub fn eval_element(&self, x: &TensorElement) -> Result<Rational> {
        if x.legs() != 1 {
            return Err(Error::LegMismatch { expected: 1, found: x.legs() });
        }
        if x.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: x.rank() });
        }
        Ok(x.terms().fold(Rational::zero(), |acc, (m, c)| acc + c * self.eval(&m[0])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn images_extend_multiplicatively() {
        let f = AlgebraMapSpec::new(
            2,
            2,
            vec![
                TensorElement::mono(2, int(2), &[&[1, 0], &[0, 1]]).unwrap(),
                TensorElement::mono(2, frac(1, 3), &[&[0, 1], &[1, 1]]).unwrap(),
            ],
        )
        .unwrap();
        let img = f.image_of(&GroupElement::new(vec![2, -1]));
        assert_eq!(img.scalar(), &int(12));
        assert_eq!(img.factors(), &[GroupElement::new(vec![2, -1]), GroupElement::new(vec![-1, 1])]);
    }

    #[test]
    fn non_unit_image_rejected() {
        let two_terms = TensorElement::mono(1, int(1), &[&[1], &[1]])
            .unwrap()
            .add(&TensorElement::one(1, 2).unwrap())
            .unwrap();
        assert_eq!(AlgebraMapSpec::new(1, 2, vec![two_terms]), Err(Error::NotAUnit { terms: 2 }));
    }

    #[test]
    fn counit_values() {
        assert!(CounitSpec::new(vec![int(0)]).is_err());
        let eps = CounitSpec::new(vec![int(2), frac(1, 3)]).unwrap();
        assert_eq!(eps.eval(&GroupElement::new(vec![-1, 2])), frac(1, 18));
    }
}
