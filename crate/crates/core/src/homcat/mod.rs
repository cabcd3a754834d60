//! The Hom-category of finite-dimensional vector spaces: objects are pairs
//! `(X, f_X)` with `f_X` an automorphism, morphisms intertwine the automorphisms.
//!
//! Iterated tensor products use the flat, row-major index convention with the
//! left factor slowest, so `(X⊗Y)⊗Z` and `X⊗(Y⊗Z)` share one basis and every
//! constraint is just a matrix on it.

mod coherence;
mod matrix;

pub use coherence::{
    check_axiom, check_coherence, compare_structures, corrupted_params, negative_control, Axiom,
    CoherenceConfig, CoherenceInstance, CoherenceReport, ComparisonInstance, ComparisonReport, Constraint,
};
pub use matrix::RatMatrix;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::TensorElement;
use crate::quasibialgebra::QuasiBialgebraPresentation;
use crate::quasitriangular::RMatrix;
use crate::rational::{self, Rational};

/// `(X, f_X)`; the inverse of `f_X` is kept alongside for exact negative powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomObject {
    f: RatMatrix,
    f_inv: RatMatrix,
}

impl HomObject {
    pub fn new(f: RatMatrix) -> Result<Self> {
        let f_inv = f.inverse()?;
        Ok(HomObject { f, f_inv })
    }

    /// The unit object `(k, Id)`.
    pub fn unit() -> Self {
        HomObject { f: RatMatrix::identity(1), f_inv: RatMatrix::identity(1) }
    }

    /// A 1-dimensional object whose automorphism is multiplication by `c`.
    pub fn scalar(c: &Rational) -> Result<Self> {
        Self::new(RatMatrix::scalar(c))
    }

    pub fn dim(&self) -> usize {
        self.f.rows()
    }

    pub fn automorphism(&self) -> &RatMatrix {
        &self.f
    }

    /// `f_X^e` for any integer `e`.
    pub fn power(&self, e: i64) -> RatMatrix {
        let base = if e < 0 { &self.f_inv } else { &self.f };
        base.pow_nonneg(e.unsigned_abs())
    }

    pub fn identity_map(&self) -> RatMatrix {
        RatMatrix::identity(self.dim())
    }
}

/// `(X⊗Y, f_X⊗f_Y)`.
pub fn tensor_obj(x: &HomObject, y: &HomObject) -> HomObject {
    HomObject { f: x.f.kron(&y.f), f_inv: x.f_inv.kron(&y.f_inv) }
}

fn tensor_all(objects: &[&HomObject]) -> HomObject {
    objects.iter().fold(HomObject::unit(), |acc, o| tensor_obj(&acc, o))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomObjectRepr {
    dim: usize,
    f: RatMatrix,
}

impl Serialize for HomObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HomObjectRepr { dim: self.dim(), f: self.f.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = HomObjectRepr::deserialize(d)?;
        if r.f.rows() != r.dim || r.f.cols() != r.dim {
            return Err(D::Error::custom(format!("automorphism is not {0}x{0}", r.dim)));
        }
        HomObject::new(r.f).map_err(D::Error::custom)
    }
}

/// A linear map `ξ: M → N` with `f_N ∘ ξ = ξ ∘ f_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMorphism {
    source: HomObject,
    target: HomObject,
    map: RatMatrix,
}

impl HomMorphism {
    pub fn new(source: HomObject, target: HomObject, map: RatMatrix) -> Result<Self> {
        if map.rows() != target.dim() || map.cols() != source.dim() {
            return Err(Error::InvalidShape(format!(
                "a map {}-dim -> {}-dim must be {}x{}, got {}x{}",
                source.dim(),
                target.dim(),
                target.dim(),
                source.dim(),
                map.rows(),
                map.cols()
            )));
        }
        if !intertwines(&source, &target, &map) {
            return Err(Error::NotAMorphism);
        }
        Ok(HomMorphism { source, target, map })
    }

    pub fn identity(x: &HomObject) -> Self {
        HomMorphism { source: x.clone(), target: x.clone(), map: x.identity_map() }
    }

    pub fn source(&self) -> &HomObject {
        &self.source
    }

    pub fn target(&self) -> &HomObject {
        &self.target
    }

    pub fn map(&self) -> &RatMatrix {
        &self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomMorphism) -> Result<HomMorphism> {
        if other.target != self.source {
            return Err(Error::InvalidShape("composable morphisms must share an object".into()));
        }
        Ok(HomMorphism { source: other.source.clone(), target: self.target.clone(), map: self.map.mul(&other.map) })
    }

    pub fn tensor(&self, other: &HomMorphism) -> HomMorphism {
        HomMorphism {
            source: tensor_obj(&self.source, &other.source),
            target: tensor_obj(&self.target, &other.target),
            map: self.map.kron(&other.map),
        }
    }
}

pub(crate) fn intertwines(source: &HomObject, target: &HomObject, map: &RatMatrix) -> bool {
    target.f.mul(map) == map.mul(&source.f)
}

/// The constraints of a monoidal structure on the Hom-category, as matrices in
/// the flat basis.
pub trait HomStructure {
    /// `a_{X,Y,Z}: (X⊗Y)⊗Z → X⊗(Y⊗Z)`.
    fn associator(&self, x: &HomObject, y: &HomObject, z: &HomObject) -> RatMatrix;
    /// `l_X: 1⊗X → X`.
    fn left_unitor(&self, x: &HomObject) -> RatMatrix;
    /// `r_X: X⊗1 → X`.
    fn right_unitor(&self, x: &HomObject) -> RatMatrix;
    /// `c_{X,Y}: X⊗Y → Y⊗X`.
    fn braiding(&self, x: &HomObject, y: &HomObject) -> RatMatrix;
}

/// `(q, a, b)` for the structure `H^{a,b}_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonoidalParams {
    #[serde(serialize_with = "ser_rational")]
    q: Rational,
    a: i64,
    b: i64,
}

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    rational::format(q).serialize(s)
}

impl MonoidalParams {
    pub fn new(q: Rational, a: i64, b: i64) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidShape("q must be nonzero".into()));
        }
        Ok(MonoidalParams { q, a, b })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

impl HomStructure for MonoidalParams {
    fn associator(&self, x: &HomObject, y: &HomObject, z: &HomObject) -> RatMatrix {
        x.power(self.a).kron(&y.identity_map()).kron(&z.power(self.b))
    }

    fn left_unitor(&self, x: &HomObject) -> RatMatrix {
        x.power(-self.b).scale(&self.q)
    }

    fn right_unitor(&self, x: &HomObject) -> RatMatrix {
        x.power(self.a).scale(&self.q)
    }

    fn braiding(&self, x: &HomObject, y: &HomObject) -> RatMatrix {
        let s = self.a + self.b;
        y.power(-s).kron(&x.power(s)).mul(&RatMatrix::flip(x.dim(), y.dim()))
    }
}

/// The modified structure `ã = a∘((f_M⊗N)⊗f_P⁻¹)`, `l̃ = f_M∘l_M`,
/// `r̃ = f_M∘r_M`, with the plain flip as braiding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TildeStructure;

impl HomStructure for TildeStructure {
    fn associator(&self, m: &HomObject, n: &HomObject, p: &HomObject) -> RatMatrix {
        m.automorphism().kron(&n.identity_map()).kron(&p.f_inv)
    }

    fn left_unitor(&self, m: &HomObject) -> RatMatrix {
        m.automorphism().clone()
    }

    fn right_unitor(&self, m: &HomObject) -> RatMatrix {
        m.automorphism().clone()
    }

    fn braiding(&self, x: &HomObject, y: &HomObject) -> RatMatrix {
        RatMatrix::flip(x.dim(), y.dim())
    }
}

/// The structure of `H`-modules for a rank-1 quasi-bialgebra `H` with the
/// ordinary coalgebra, transported along `W`: φ, λ, ρ act on the factors and
/// the braiding is `x⊗y ↦ R²y⊗R¹x`.
#[derive(Clone, Debug)]
pub struct ModuleStructure {
    presentation: QuasiBialgebraPresentation,
    r: RMatrix,
}

impl ModuleStructure {
    pub fn new(presentation: QuasiBialgebraPresentation, r: RMatrix) -> Result<Self> {
        if presentation.rank() != 1 {
            return Err(Error::RankMismatch { expected: 1, found: presentation.rank() });
        }
        if r.rank() != 1 {
            return Err(Error::RankMismatch { expected: 1, found: r.rank() });
        }
        if !presentation.has_ordinary_coalgebra() {
            return Err(Error::InvalidShape("module structures need the ordinary coproduct and counit".into()));
        }
        Ok(ModuleStructure { presentation, r })
    }
}

impl HomStructure for ModuleStructure {
    fn associator(&self, x: &HomObject, y: &HomObject, z: &HomObject) -> RatMatrix {
        act(self.presentation.phi(), &[x, y, z]).expect("three legs")
    }

    fn left_unitor(&self, x: &HomObject) -> RatMatrix {
        act(self.presentation.lambda(), &[x]).expect("one leg")
    }

    fn right_unitor(&self, x: &HomObject) -> RatMatrix {
        act(self.presentation.rho(), &[x]).expect("one leg")
    }

    fn braiding(&self, x: &HomObject, y: &HomObject) -> RatMatrix {
        RatMatrix::flip(x.dim(), y.dim()).mul(&act(self.r.element(), &[x, y]).expect("two legs"))
    }
}

/// The action of `Σ c·g^{e₁}⊗⋯⊗g^{eₘ} ∈ k[Z]^{⊗m}` on `X₁⊗⋯⊗Xₘ`, where `g`
/// acts on `Xᵢ` by `f_{Xᵢ}`.
pub fn act(element: &TensorElement, objects: &[&HomObject]) -> Result<RatMatrix> {
    if element.rank() != 1 {
        return Err(Error::RankMismatch { expected: 1, found: element.rank() });
    }
    if element.legs() != objects.len() {
        return Err(Error::LegMismatch { expected: element.legs(), found: objects.len() });
    }
    let n = tensor_all(objects).dim();
    let mut sum = RatMatrix::zeros(n, n);
    for (monomial, c) in element.terms() {
        let term = monomial
            .iter()
            .zip(objects)
            .fold(RatMatrix::identity(1), |acc, (g, o)| acc.kron(&o.power(g.exponents()[0])));
        sum = sum.add(&term.scale(c));
    }
    Ok(sum)
}

/// `W` of the k[Z]-module on which the generator acts by `action`:
/// `f_X(x) = g·x`. The inverse of `W` returns the same data.
pub fn from_module_action(action: &RatMatrix) -> Result<HomObject> {
    if !action.is_square() {
        return Err(Error::NotInvertible);
    }
    HomObject::new(action.clone())
}

/// The action of `g` on `X⊗Y` through the coproduct of a rank-1 presentation.
pub fn module_tensor_action(p: &QuasiBialgebraPresentation, x: &RatMatrix, y: &RatMatrix) -> Result<RatMatrix> {
    if p.rank() != 1 {
        return Err(Error::RankMismatch { expected: 1, found: p.rank() });
    }
    act(&p.coproduct().image(0), &[&from_module_action(x)?, &from_module_action(y)?])
}

/// `a_{X,Y,Z}` of `H^{a,b}_q` as a morphism of the Hom-category.
pub fn associator(p: &MonoidalParams, x: &HomObject, y: &HomObject, z: &HomObject) -> Result<HomMorphism> {
    let xyz = tensor_all(&[x, y, z]);
    HomMorphism::new(xyz.clone(), xyz, p.associator(x, y, z))
}

/// `(l_X, r_X)` of `H^{a,b}_q`.
pub fn unitors(p: &MonoidalParams, x: &HomObject) -> Result<(HomMorphism, HomMorphism)> {
    let one_x = tensor_obj(&HomObject::unit(), x);
    let x_one = tensor_obj(x, &HomObject::unit());
    Ok((
        HomMorphism::new(one_x, x.clone(), p.left_unitor(x))?,
        HomMorphism::new(x_one, x.clone(), p.right_unitor(x))?,
    ))
}

/// `c_{X,Y}` of `H^{a,b}_q`.
pub fn braiding(p: &MonoidalParams, x: &HomObject, y: &HomObject) -> Result<HomMorphism> {
    HomMorphism::new(tensor_obj(x, y), tensor_obj(y, x), p.braiding(x, y))
}
