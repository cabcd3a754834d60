//! Quasi-bialgebra structures on k[Zʳ]: presentations, axiom checks,
//! Drinfeld twists, normalization of (Δ, ε) and trivializing twists.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::monomial_solve::{self, Residual};
use crate::laurent::{AlgebraMapSpec, CounitSpec, GroupElement, TensorElement, UnitElement};
use crate::rational::{self, Rational};
use crate::report::{to_value, AxiomCheck, VerificationReport};

/// `(H, Δ, ε, φ, λ, ρ)` with `H = k[Zʳ]`.
///
/// The constructor checks shapes only. Whether φ, λ, ρ are invertible is one
/// of the axioms [`verify`] reports on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiBialgebraPresentation {
    rank: usize,
    coproduct: AlgebraMapSpec,
    counit: CounitSpec,
    phi: TensorElement,
    lambda: TensorElement,
    rho: TensorElement,
}

impl QuasiBialgebraPresentation {
    pub fn new(
        coproduct: AlgebraMapSpec,
        counit: CounitSpec,
        phi: TensorElement,
        lambda: TensorElement,
        rho: TensorElement,
    ) -> Result<Self> {
        let rank = coproduct.rank();
        if coproduct.target_legs() != 2 {
            return Err(Error::LegMismatch { expected: 2, found: coproduct.target_legs() });
        }
        if counit.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: counit.rank() });
        }
        for (x, legs) in [(&phi, 3), (&lambda, 1), (&rho, 1)] {
            if x.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: x.rank() });
            }
            if x.legs() != legs {
                return Err(Error::LegMismatch { expected: legs, found: x.legs() });
            }
        }
        Ok(QuasiBialgebraPresentation { rank, coproduct, counit, phi, lambda, rho })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coproduct(&self) -> &AlgebraMapSpec {
        &self.coproduct
    }

    pub fn counit(&self) -> &CounitSpec {
        &self.counit
    }

    pub fn phi(&self) -> &TensorElement {
        &self.phi
    }

    pub fn lambda(&self) -> &TensorElement {
        &self.lambda
    }

    pub fn rho(&self) -> &TensorElement {
        &self.rho
    }

    /// Δ is the diagonal map and ε is trivial.
    pub fn has_ordinary_coalgebra(&self) -> bool {
        self.coproduct.is_diagonal() && self.counit.is_trivial()
    }

    /// Additionally φ, λ, ρ are all trivial.
    pub fn is_ordinary(&self) -> bool {
        self.has_ordinary_coalgebra() && self.phi.is_one() && self.lambda.is_one() && self.rho.is_one()
    }

    pub fn with_phi(&self, phi: TensorElement) -> Result<Self> {
        Self::new(self.coproduct.clone(), self.counit.clone(), phi, self.lambda.clone(), self.rho.clone())
    }

    pub fn with_lambda(&self, lambda: TensorElement) -> Result<Self> {
        Self::new(self.coproduct.clone(), self.counit.clone(), self.phi.clone(), lambda, self.rho.clone())
    }

    pub fn with_rho(&self, rho: TensorElement) -> Result<Self> {
        Self::new(self.coproduct.clone(), self.counit.clone(), self.phi.clone(), self.lambda.clone(), rho)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentations always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `(q, h, g) ∈ k* × Zʳ × Zʳ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalTriple {
    q: Rational,
    h: GroupElement,
    g: GroupElement,
}

impl CanonicalTriple {
    pub fn new(q: Rational, h: GroupElement, g: GroupElement) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidShape("q must be nonzero".into()));
        }
        if h.rank() != g.rank() {
            return Err(Error::RankMismatch { expected: h.rank(), found: g.rank() });
        }
        if h.rank() == 0 {
            return Err(Error::InvalidShape("rank must be at least 1".into()));
        }
        Ok(CanonicalTriple { q, h, g })
    }

    pub fn rank(&self) -> usize {
        self.h.rank()
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn h(&self) -> &GroupElement {
        &self.h
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }

    /// The twist `u = q·h⊗g⁻¹` taking `canonical(self)` to the ordinary bialgebra.
    pub fn trivializing_twist(&self) -> TensorElement {
        TensorElement::term(self.rank(), self.q.clone(), vec![self.h.clone(), self.g.inverse()])
            .expect("valid shape")
    }
}

/// The ordinary bialgebra k[Zʳ]: `Δ(g) = g⊗g`, `ε(g) = 1`, trivial φ, λ, ρ.
pub fn ordinary(rank: usize) -> Result<QuasiBialgebraPresentation> {
    QuasiBialgebraPresentation::new(
        AlgebraMapSpec::diagonal(rank),
        CounitSpec::trivial(rank),
        TensorElement::one(rank, 3)?,
        TensorElement::one(rank, 1)?,
        TensorElement::one(rank, 1)?,
    )
}

/// Ordinary Δ, ε with `φ = h⊗1⊗g`, `λ = q·g⁻¹`, `ρ = q·h`.
pub fn canonical(t: &CanonicalTriple) -> QuasiBialgebraPresentation {
    let r = t.rank();
    let phi = TensorElement::term(r, Rational::one(), vec![t.h.clone(), GroupElement::identity(r), t.g.clone()]);
    let lambda = TensorElement::term(r, t.q.clone(), vec![t.g.inverse()]);
    let rho = TensorElement::term(r, t.q.clone(), vec![t.h.clone()]);
    QuasiBialgebraPresentation::new(
        AlgebraMapSpec::diagonal(r),
        CounitSpec::trivial(r),
        phi.expect("valid shape"),
        lambda.expect("valid shape"),
        rho.expect("valid shape"),
    )
    .expect("canonical presentations are well formed")
}

fn generator(rank: usize, i: usize) -> TensorElement {
    TensorElement::term(rank, Rational::one(), vec![GroupElement::generator(rank, i)]).expect("valid shape")
}

/// Checks every quasi-bialgebra axiom and records both sides of each identity.
///
/// Quasi-coassociativity and the counit laws are checked on the generators
/// `gᵢ`, which suffices since every map involved is an algebra map.
pub fn verify(p: &QuasiBialgebraPresentation) -> VerificationReport {
    let mut report = VerificationReport::default();
    let r = p.rank;
    let delta = &p.coproduct;
    let eps = &p.counit;
    let phi_inv = p.phi.invert_unit().ok();
    let lambda_inv = p.lambda.invert_unit().ok();
    let rho_inv = p.rho.invert_unit().ok();

    // (H⊗H⊗Δ)(φ)·(Δ⊗H⊗H)(φ) = (1⊗φ)·(H⊗Δ⊗H)(φ)·(φ⊗1)
    let cocycle = || -> Result<AxiomCheck> {
        let one = TensorElement::one(r, 1)?;
        let lhs = p.phi.apply_coproduct_on_leg(delta, 2)?.mul(&p.phi.apply_coproduct_on_leg(delta, 0)?)?;
        let rhs = TensorElement::product(&[
            one.tensor(&p.phi)?,
            p.phi.apply_coproduct_on_leg(delta, 1)?,
            p.phi.tensor(&one)?,
        ])?;
        Ok(AxiomCheck::compare("cocycle", &lhs, &rhs))
    };
    report.push(cocycle().expect("shapes validated at construction"));

    // (H⊗ε⊗H)(φ) = ρ⊗λ⁻¹
    let lhs = p.phi.apply_counit_on_leg(eps, 1).expect("phi has three legs");
    report.push(match &lambda_inv {
        Some(li) => AxiomCheck::compare("counital", &lhs, &p.rho.tensor(li).expect("same rank")),
        None => AxiomCheck::failed("counital", to_value(&lhs), Value::Null),
    });

    for i in 0..r {
        let g = generator(r, i);
        let dg = delta.apply(&g).expect("single leg");
        let name = |axiom: &str| format!("{axiom}[g{}]", i + 1);

        // (H⊗Δ)Δ(g) = φ·(Δ⊗H)Δ(g)·φ⁻¹
        let lhs = dg.apply_coproduct_on_leg(delta, 1).expect("two legs");
        report.push(match &phi_inv {
            Some(pi) => {
                let inner = dg.apply_coproduct_on_leg(delta, 0).expect("two legs");
                let rhs = TensorElement::product(&[p.phi.clone(), inner, pi.clone()]).expect("same shape");
                AxiomCheck::compare(name("quasi_coassociativity"), &lhs, &rhs)
            }
            None => AxiomCheck::failed(name("quasi_coassociativity"), to_value(&lhs), Value::Null),
        });

        // (ε⊗H)Δ(g) = λ⁻¹gλ and (H⊗ε)Δ(g) = ρ⁻¹gρ
        for (axiom, leg, conj, conj_inv) in
            [("left_counit", 0, &p.lambda, &lambda_inv), ("right_counit", 1, &p.rho, &rho_inv)]
        {
            let lhs = dg.apply_counit_on_leg(eps, leg).expect("two legs");
            report.push(match conj_inv {
                Some(ci) => {
                    let rhs = TensorElement::product(&[ci.clone(), g.clone(), conj.clone()]).expect("same shape");
                    AxiomCheck::compare(name(axiom), &lhs, &rhs)
                }
                None => AxiomCheck::failed(name(axiom), to_value(&lhs), Value::Null),
            });
        }
    }

    for (axiom, x) in [("invertible_phi", &p.phi), ("invertible_lambda", &p.lambda), ("invertible_rho", &p.rho)] {
        let inv = x.invert_unit().ok();
        report.push(AxiomCheck {
            axiom: axiom.into(),
            pass: inv.is_some(),
            lhs: to_value(x),
            rhs: inv.as_ref().map_or(Value::Null, to_value),
        });
    }
    report
}

fn check_twist(p: &QuasiBialgebraPresentation, alpha: &TensorElement) -> Result<TensorElement> {
    if alpha.rank() != p.rank {
        return Err(Error::RankMismatch { expected: p.rank, found: alpha.rank() });
    }
    if alpha.legs() != 2 {
        return Err(Error::LegMismatch { expected: 2, found: alpha.legs() });
    }
    alpha.invert_unit()
}

/// The Drinfeld twist `H_α` of `p` by a unit `α ∈ H⊗H`.
pub fn twist(p: &QuasiBialgebraPresentation, alpha: &TensorElement) -> Result<QuasiBialgebraPresentation> {
    let alpha_inv = check_twist(p, alpha)?;
    let r = p.rank;
    let one = TensorElement::one(r, 1)?;
    let delta = &p.coproduct;

    let images = (0..r)
        .map(|i| TensorElement::product(&[alpha.clone(), delta.image(i), alpha_inv.clone()]))
        .collect::<Result<Vec<_>>>()?;
    let coproduct = AlgebraMapSpec::new(r, 2, images)?;

    let phi = TensorElement::product(&[
        one.tensor(alpha)?,
        alpha.apply_coproduct_on_leg(delta, 1)?,
        p.phi.clone(),
        alpha_inv.apply_coproduct_on_leg(delta, 0)?,
        alpha_inv.tensor(&one)?,
    ])?;
    let lambda = p.lambda.mul(&alpha_inv.apply_counit_on_leg(&p.counit, 0)?)?;
    let rho = p.rho.mul(&alpha_inv.apply_counit_on_leg(&p.counit, 1)?)?;
    QuasiBialgebraPresentation::new(coproduct, p.counit.clone(), phi, lambda, rho)
}

/// An algebra automorphism of k[Zʳ] sending each generator to a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BialgebraIso {
    generator_images: Vec<UnitElement>,
}

impl BialgebraIso {
    pub fn new(generator_images: Vec<UnitElement>) -> Result<Self> {
        let rank = generator_images.len();
        for u in &generator_images {
            if u.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: u.rank() });
            }
            if u.legs() != 1 {
                return Err(Error::LegMismatch { expected: 1, found: u.legs() });
            }
        }
        Ok(BialgebraIso { generator_images })
    }

    pub fn identity(rank: usize) -> Self {
        BialgebraIso {
            generator_images: (0..rank)
                .map(|i| UnitElement::new(rank, Rational::one(), vec![GroupElement::generator(rank, i)]).unwrap())
                .collect(),
        }
    }

    pub fn generator_images(&self) -> &[UnitElement] {
        &self.generator_images
    }

    pub fn as_map(&self) -> AlgebraMapSpec {
        AlgebraMapSpec::from_units(self.generator_images.len(), 1, self.generator_images.clone())
            .expect("images are units")
    }

    /// Applies the map on every leg of `x`.
    pub fn apply(&self, x: &TensorElement) -> Result<TensorElement> {
        let f = self.as_map();
        (0..x.legs()).try_fold(x.clone(), |acc, leg| acc.apply_map_on_leg(&f, leg))
    }

    /// Inverse of a diagonal rescaling `gᵢ ↦ cᵢ·gᵢ`; other isos are rejected.
    pub fn inverse(&self) -> Result<Self> {
        let rank = self.generator_images.len();
        let images = self
            .generator_images
            .iter()
            .enumerate()
            .map(|(i, u)| {
                if u.factors()[0] != GroupElement::generator(rank, i) {
                    return Err(Error::InvalidShape("only generator rescalings can be inverted".into()));
                }
                UnitElement::new(rank, u.scalar().recip(), u.factors().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BialgebraIso { generator_images: images })
    }
}

/// Replaces `(Δ, ε)` by the ordinary pair via `Ξ(gᵢ) = ε(gᵢ)·gᵢ`, after
/// checking that every `Δ(gᵢ)` has the forced form `ε(gᵢ)⁻¹·gᵢ⊗gᵢ`.
pub fn normalize(p: &QuasiBialgebraPresentation) -> Result<(BialgebraIso, QuasiBialgebraPresentation)> {
    let r = p.rank;
    let mut images = Vec::with_capacity(r);
    for i in 0..r {
        let e = &p.counit.values()[i];
        let gi = GroupElement::generator(r, i);
        let expected = TensorElement::term(r, e.recip(), vec![gi.clone(), gi.clone()])?;
        let found = p.coproduct.image(i);
        if found != expected {
            return Err(Error::NotForcedForm {
                generator: i + 1,
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
        images.push(UnitElement::new(r, e.clone(), vec![gi])?);
    }
    let iso = BialgebraIso::new(images)?;
    let out = QuasiBialgebraPresentation::new(
        AlgebraMapSpec::diagonal(r),
        CounitSpec::trivial(r),
        iso.apply(&p.phi)?,
        iso.apply(&p.lambda)?,
        iso.apply(&p.rho)?,
    )?;
    Ok((iso, out))
}

/// Exponents of φ, λ, ρ flattened into one integer vector, plus their scalars.
fn unit_profile(p: &QuasiBialgebraPresentation) -> Result<Residual> {
    let mut exps = Vec::with_capacity(5 * p.rank);
    let mut scalars = Vec::with_capacity(3);
    for x in [&p.phi, &p.lambda, &p.rho] {
        let u = x.as_unit()?;
        for g in u.factors() {
            exps.extend(g.exponents().iter().map(|&e| BigInt::from(e)));
        }
        scalars.push(u.scalar().clone());
    }
    Ok((exps, scalars))
}

/// `t·x⊗y` with `v = (x, y)` flattened.
pub(crate) fn monomial_pair(rank: usize, t: Rational, v: &[i64]) -> TensorElement {
    TensorElement::term(
        rank,
        t,
        vec![GroupElement::new(v[..rank].to_vec()), GroupElement::new(v[rank..].to_vec())],
    )
    .expect("valid shape")
}

/// Finds a unit `𝔣 = t·x⊗y` such that `twist(p, 𝔣)` is the ordinary bialgebra.
///
/// With ordinary Δ, ε and unit φ, λ, ρ the requirement `φ_𝔣 = 1⊗1⊗1`,
/// `λ_𝔣 = ρ_𝔣 = 1` is linear in the exponents of `x, y` and a power condition
/// on `t`; it is solved exactly and the answer re-checked by twisting.
pub fn find_trivializing_twist(p: &QuasiBialgebraPresentation) -> Result<TensorElement> {
    if !p.has_ordinary_coalgebra() {
        return Err(Error::NoMonomialTwist(
            "the presentation must have the ordinary coproduct and counit (normalize it first)".into(),
        ));
    }
    for x in [&p.phi, &p.lambda, &p.rho] {
        x.as_unit()
            .map_err(|e| Error::NoMonomialTwist(format!("phi, lambda and rho must be units ({e})")))?;
    }
    let r = p.rank;
    let solutions = monomial_solve::solve(2 * r, |t, v| unit_profile(&twist(p, &monomial_pair(r, t.clone(), v))?))
        .map_err(|e| Error::NoMonomialTwist(e.to_string()))?;
    for (t, v) in solutions {
        let f = monomial_pair(r, t, &v);
        if twist(p, &f)?.is_ordinary() {
            return Ok(f);
        }
    }
    Err(Error::NoMonomialTwist("the monomial system has no solution".into()))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationRepr {
    rank: usize,
    coproduct: Vec<TensorElement>,
    counit: Vec<String>,
    phi: TensorElement,
    lambda: TensorElement,
    rho: TensorElement,
}

impl Serialize for QuasiBialgebraPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationRepr {
            rank: self.rank,
            coproduct: (0..self.rank).map(|i| self.coproduct.image(i)).collect(),
            counit: self.counit.values().iter().map(rational::format).collect(),
            phi: self.phi.clone(),
            lambda: self.lambda.clone(),
            rho: self.rho.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiBialgebraPresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PresentationRepr::deserialize(d)?;
        let build = || -> Result<Self> {
            let coproduct = AlgebraMapSpec::new(r.rank, 2, r.coproduct)?;
            let counit = CounitSpec::new(r.counit.iter().map(|s| rational::parse(s)).collect::<Result<_>>()?)?;
            QuasiBialgebraPresentation::new(coproduct, counit, r.phi, r.lambda, r.rho)
        };
        build().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn triple(q: Rational, h: &[i64], g: &[i64]) -> CanonicalTriple {
        CanonicalTriple::new(q, GroupElement::new(h.to_vec()), GroupElement::new(g.to_vec())).unwrap()
    }

    fn t1(c: Rational, legs: &[&[i64]]) -> TensorElement {
        TensorElement::mono(1, c, legs).unwrap()
    }

    #[test]
    fn ordinary_presentations_verify() {
        for r in 1..=3 {
            let p = ordinary(r).unwrap();
            assert!(p.is_ordinary());
            assert!(verify(&p).all_pass());
        }
        let p3 = ordinary(3).unwrap();
        let g2 = GroupElement::generator(3, 2);
        assert_eq!(p3.coproduct().image(2), TensorElement::term(3, int(1), vec![g2.clone(), g2]).unwrap());
    }

    #[test]
    fn canonical_examples() {
        let p = canonical(&triple(int(2), &[1], &[1]));
        assert_eq!(p.phi(), &t1(int(1), &[&[1], &[0], &[1]]));
        assert_eq!(p.lambda(), &t1(int(2), &[&[-1]]));
        assert_eq!(p.rho(), &t1(int(2), &[&[1]]));
        assert!(verify(&p).all_pass());

        assert_eq!(canonical(&triple(int(1), &[0], &[0])), ordinary(1).unwrap());

        let p = canonical(&triple(int(3), &[2, 0], &[0, -1]));
        let phi = TensorElement::mono(2, int(1), &[&[2, 0], &[0, 0], &[0, -1]]).unwrap();
        assert_eq!(p.phi(), &phi);
        assert!(verify(&p).all_pass());
    }

    #[test]
    fn counital_identity_detects_bad_phi() {
        let p = ordinary(1).unwrap().with_phi(t1(int(1), &[&[1], &[0], &[1]])).unwrap();
        let report = verify(&p);
        assert!(!report.passes("counital"));
        assert!(report.passes("cocycle"));
        let failed: Vec<_> = report.failures().map(|c| c.axiom.as_str()).collect();
        assert_eq!(failed, vec!["counital"]);
        let f = report.failures().next().unwrap();
        assert_eq!(f.lhs, to_value(&t1(int(1), &[&[1], &[1]])));
        assert_eq!(f.rhs, to_value(&TensorElement::one(1, 2).unwrap()));
    }

    #[test]
    fn single_field_corruptions_rejected() {
        let p = canonical(&triple(int(2), &[1], &[1]));
        let shift = |x: &TensorElement, leg: usize| {
            let mut legs = vec![vec![0i64]; x.legs()];
            legs[leg] = vec![1];
            let refs: Vec<&[i64]> = legs.iter().map(Vec::as_slice).collect();
            x.mul(&t1(int(1), &refs)).unwrap()
        };
        for leg in 0..3 {
            assert!(!verify(&p.with_phi(shift(p.phi(), leg)).unwrap()).all_pass(), "phi leg {leg}");
        }
        assert!(!verify(&p.with_lambda(shift(p.lambda(), 0)).unwrap()).all_pass());
        assert!(!verify(&p.with_rho(shift(p.rho(), 0)).unwrap()).all_pass());
    }

    #[test]
    fn non_unit_phi_is_reported() {
        let two_terms = TensorElement::one(1, 3).unwrap().add(&t1(int(1), &[&[1], &[0], &[0]])).unwrap();
        let p = ordinary(1).unwrap().with_phi(two_terms).unwrap();
        let report = verify(&p);
        assert!(!report.passes("invertible_phi"));
        assert!(!report.passes("quasi_coassociativity"));
        assert!(report.passes("invertible_lambda"));
    }

    #[test]
    fn twist_examples() {
        let t = triple(int(2), &[1], &[1]);
        let p = canonical(&t);
        let u = t.trivializing_twist();
        assert_eq!(u, t1(int(2), &[&[1], &[-1]]));
        assert_eq!(twist(&p, &u).unwrap(), ordinary(1).unwrap());
        assert_eq!(twist(&p, &TensorElement::one(1, 2).unwrap()).unwrap(), p);
        let u_inv = u.invert_unit().unwrap();
        assert_eq!(twist(&ordinary(1).unwrap(), &u_inv).unwrap(), p);
    }

    #[test]
    fn twist_rejects_bad_alpha() {
        let p = ordinary(1).unwrap();
        let two = TensorElement::one(1, 2).unwrap().add(&t1(int(1), &[&[1], &[0]])).unwrap();
        assert!(matches!(twist(&p, &two), Err(Error::NotAUnit { .. })));
        assert!(matches!(twist(&p, &TensorElement::one(2, 2).unwrap()), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn normalize_examples() {
        let skew = QuasiBialgebraPresentation::new(
            AlgebraMapSpec::new(1, 2, vec![t1(frac(1, 2), &[&[1], &[1]])]).unwrap(),
            CounitSpec::new(vec![int(2)]).unwrap(),
            TensorElement::one(1, 3).unwrap(),
            TensorElement::one(1, 1).unwrap(),
            TensorElement::one(1, 1).unwrap(),
        )
        .unwrap();
        assert!(verify(&skew).all_pass());
        let (iso, out) = normalize(&skew).unwrap();
        assert_eq!(iso.generator_images()[0].to_tensor(), t1(int(2), &[&[1]]));
        assert_eq!(out, ordinary(1).unwrap());
        assert!(verify(&out).all_pass());

        let (iso, out) = normalize(&ordinary(2).unwrap()).unwrap();
        assert_eq!(iso, BialgebraIso::identity(2));
        assert_eq!(out, ordinary(2).unwrap());

        let bad = QuasiBialgebraPresentation::new(
            AlgebraMapSpec::diagonal(1),
            CounitSpec::new(vec![int(2)]).unwrap(),
            TensorElement::one(1, 3).unwrap(),
            TensorElement::one(1, 1).unwrap(),
            TensorElement::one(1, 1).unwrap(),
        )
        .unwrap();
        assert!(!verify(&bad).all_pass());
        assert!(matches!(normalize(&bad), Err(Error::NotForcedForm { generator: 1, .. })));
    }

    #[test]
    fn normalize_transports_phi_lambda_rho() {
        let skew = QuasiBialgebraPresentation::new(
            AlgebraMapSpec::new(1, 2, vec![t1(frac(1, 3), &[&[1], &[1]])]).unwrap(),
            CounitSpec::new(vec![int(3)]).unwrap(),
            t1(int(1), &[&[1], &[0], &[2]]),
            t1(int(5), &[&[-2]]),
            t1(int(5), &[&[1]]),
        )
        .unwrap();
        let (_, out) = normalize(&skew).unwrap();
        assert_eq!(out.phi(), &t1(int(27), &[&[1], &[0], &[2]]));
        assert_eq!(out.lambda(), &t1(frac(5, 9), &[&[-2]]));
        assert_eq!(out.rho(), &t1(int(15), &[&[1]]));
        assert!(out.has_ordinary_coalgebra());
    }

    #[test]
    fn trivializing_twist_examples() {
        let p = canonical(&triple(int(2), &[1], &[1]));
        assert_eq!(find_trivializing_twist(&p).unwrap(), t1(int(2), &[&[1], &[-1]]));

        assert_eq!(find_trivializing_twist(&ordinary(1).unwrap()).unwrap(), TensorElement::one(1, 2).unwrap());

        let p = canonical(&triple(int(3), &[2], &[-1]));
        let f = find_trivializing_twist(&p).unwrap();
        assert_eq!(f, t1(int(3), &[&[2], &[1]]));
        assert!(twist(&p, &f).unwrap().is_ordinary());
    }

    #[test]
    fn trivializing_twist_rejects_unclassified_input() {
        // counital identity broken: no twist can fix it
        let p = ordinary(1).unwrap().with_phi(t1(int(1), &[&[1], &[0], &[1]])).unwrap();
        assert!(matches!(find_trivializing_twist(&p), Err(Error::NoMonomialTwist(_))));
        let p = ordinary(1).unwrap().with_phi(t1(int(2), &[&[0], &[0], &[0]])).unwrap();
        assert!(matches!(find_trivializing_twist(&p), Err(Error::NoMonomialTwist(_))));
    }

    #[test]
    fn presentation_json_round_trip() {
        let p = canonical(&triple(frac(1, 2), &[1, -1], &[0, 3]));
        let s = p.to_json();
        assert_eq!(QuasiBialgebraPresentation::from_json(&s).unwrap(), p);
        assert!(QuasiBialgebraPresentation::from_json(r#"{"rank":1}"#).is_err());
    }
}
