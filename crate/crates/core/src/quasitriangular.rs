//! Quasi-triangular structures: R-matrix verification, twisting of R-matrices
//! and exact solving over the monomial ansatz `R = t·x⊗y`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{GroupElement, TensorElement};
use crate::monomial_solve::{self, Residual};
use crate::quasibialgebra::{self, monomial_pair, QuasiBialgebraPresentation};
use crate::rational::Rational;
use crate::report::{AxiomCheck, VerificationReport};

/// An invertible element of `H⊗H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix(TensorElement);

impl RMatrix {
    pub fn new(element: TensorElement) -> Result<Self> {
        if element.legs() != 2 {
            return Err(Error::LegMismatch { expected: 2, found: element.legs() });
        }
        element.as_unit()?;
        Ok(RMatrix(element))
    }

    /// `1⊗1` in rank `rank`.
    pub fn trivial(rank: usize) -> Result<Self> {
        Ok(RMatrix(TensorElement::one(rank, 2)?))
    }

    pub fn element(&self) -> &TensorElement {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn inverse(&self) -> RMatrix {
        RMatrix(self.0.invert_unit().expect("R-matrices are units"))
    }

    /// `R²⊗R¹`.
    pub fn flip(&self) -> RMatrix {
        RMatrix(self.0.permute_legs(&[1, 0]).expect("two legs"))
    }

    pub fn to_json(&self) -> String {
        self.0.to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        RMatrix::new(TensorElement::from_json(s)?)
    }

    fn sort_key(&self) -> (Vec<Vec<i64>>, Rational) {
        let u = self.0.as_unit().expect("R-matrices are units");
        (u.factors().iter().map(|g| g.exponents().to_vec()).collect(), u.scalar().clone())
    }
}

impl std::fmt::Display for RMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        RMatrix::new(TensorElement::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// The two sides of each quasi-triangularity identity, named as in the report.
fn identities(p: &QuasiBialgebraPresentation, r: &TensorElement) -> Result<Vec<(String, TensorElement, TensorElement)>> {
    let rank = p.rank();
    let delta = p.coproduct();
    let one = TensorElement::one(rank, 1)?;
    let phi = p.phi();
    let phi_inv = phi.invert_unit()?;
    let r_inv = r.invert_unit()?;
    let r1_1_r2 = r.tensor(&one)?.permute_legs(&[0, 2, 1])?;
    let mut out = Vec::with_capacity(2 + rank);

    // (Δ⊗H)(R) = (φ²⊗φ³⊗φ¹)(R¹⊗1⊗R²)(φ¹⊗φ³⊗φ²)⁻¹(1⊗R¹⊗R²)φ
    let lhs = r.apply_coproduct_on_leg(delta, 0)?;
    let rhs = TensorElement::product(&[
        phi.permute_legs(&[1, 2, 0])?,
        r1_1_r2.clone(),
        phi_inv.permute_legs(&[0, 2, 1])?,
        one.tensor(r)?,
        phi.clone(),
    ])?;
    out.push(("quasi_triangular_1".to_string(), lhs, rhs));

    // (H⊗Δ)(R) = (φ³⊗φ¹⊗φ²)⁻¹(R¹⊗1⊗R²)(φ²⊗φ¹⊗φ³)(R¹⊗R²⊗1)φ⁻¹
    let lhs = r.apply_coproduct_on_leg(delta, 1)?;
    let rhs = TensorElement::product(&[
        phi_inv.permute_legs(&[2, 0, 1])?,
        r1_1_r2,
        phi.permute_legs(&[1, 0, 2])?,
        r.tensor(&one)?,
        phi_inv,
    ])?;
    out.push(("quasi_triangular_2".to_string(), lhs, rhs));

    // Δ^cop(g) = RΔ(g)R⁻¹
    for i in 0..rank {
        let dg = delta.image(i);
        let lhs = dg.permute_legs(&[1, 0])?;
        let rhs = TensorElement::product(&[r.clone(), dg, r_inv.clone()])?;
        out.push((format!("quasi_triangular_3[g{}]", i + 1), lhs, rhs));
    }
    Ok(out)
}

fn check_shapes(p: &QuasiBialgebraPresentation, r: &RMatrix) -> Result<()> {
    if r.rank() != p.rank() {
        return Err(Error::RankMismatch { expected: p.rank(), found: r.rank() });
    }
    p.phi().as_unit()?;
    Ok(())
}

/// Checks the three quasi-triangularity identities and triangularity `R²⊗R¹ = R⁻¹`.
///
/// φ must be a unit; the third identity is checked on each generator.
pub fn verify_r(p: &QuasiBialgebraPresentation, r: &RMatrix) -> Result<VerificationReport> {
    check_shapes(p, r)?;
    let mut report = VerificationReport::default();
    for (name, lhs, rhs) in identities(p, r.element())? {
        report.push(AxiomCheck::compare(name, &lhs, &rhs));
    }
    report.push(AxiomCheck::compare("triangular", r.flip().element(), r.inverse().element()));
    Ok(report)
}

/// `R_α = (α²⊗α¹)·R·α⁻¹`.
pub fn twist_r(r: &RMatrix, alpha: &TensorElement) -> Result<RMatrix> {
    if alpha.rank() != r.rank() {
        return Err(Error::RankMismatch { expected: r.rank(), found: alpha.rank() });
    }
    if alpha.legs() != 2 {
        return Err(Error::LegMismatch { expected: 2, found: alpha.legs() });
    }
    let alpha_inv = alpha.invert_unit()?;
    let out = TensorElement::product(&[alpha.permute_legs(&[1, 0])?, r.element().clone(), alpha_inv])?;
    RMatrix::new(out)
}

fn residual(p: &QuasiBialgebraPresentation, r: &TensorElement) -> Result<Residual> {
    let mut exps = Vec::new();
    let mut scalars = Vec::new();
    for (_, lhs, rhs) in identities(p, r)? {
        let u = lhs.mul(&rhs.invert_unit()?)?.as_unit()?;
        for g in u.factors() {
            exps.extend(g.exponents().iter().map(|&e| BigInt::from(e)));
        }
        scalars.push(u.scalar().clone());
    }
    Ok((exps, scalars))
}

fn solve_direct(p: &QuasiBialgebraPresentation) -> Result<Vec<RMatrix>> {
    let rank = p.rank();
    let sols = monomial_solve::solve(2 * rank, |t, v| residual(p, &monomial_pair(rank, t.clone(), v)))?;
    let mut out = Vec::new();
    for (t, v) in sols {
        let r = RMatrix::new(monomial_pair(rank, t, &v))?;
        if verify_r(p, &r)?.passes("quasi_triangular") {
            out.push(r);
        }
    }
    Ok(out)
}

/// All R-matrices of `p`, in lexicographic order of their exponents.
///
/// Every unit of `H⊗H` is `t·x⊗y`, so the search over this ansatz is complete.
/// A non-ordinary (Δ, ε) is first normalized. When a trivializing twist `𝔣`
/// exists the equations are solved on `H_𝔣` and the solutions are carried back
/// with `twist_r(·, 𝔣⁻¹)`.
pub fn solve_r(p: &QuasiBialgebraPresentation) -> Result<Vec<RMatrix>> {
    if p.phi().as_unit().is_err() {
        return Ok(Vec::new());
    }
    let (iso, normal) = if p.has_ordinary_coalgebra() {
        (None, p.clone())
    } else {
        let (iso, normal) = quasibialgebra::normalize(p)?;
        (Some(iso), normal)
    };

    let mut found = match quasibialgebra::find_trivializing_twist(&normal) {
        Ok(f) => {
            let o = quasibialgebra::twist(&normal, &f)?;
            let f_inv = f.invert_unit()?;
            solve_direct(&o)?
                .iter()
                .map(|r| twist_r(r, &f_inv))
                .collect::<Result<Vec<_>>>()?
        }
        Err(_) => solve_direct(&normal)?,
    };

    if let Some(iso) = iso {
        let back = iso.inverse()?;
        found = found
            .iter()
            .map(|r| RMatrix::new(back.apply(r.element())?))
            .collect::<Result<Vec<_>>>()?;
    }
    found.retain(|r| verify_r(p, r).map(|rep| rep.passes("quasi_triangular")).unwrap_or(false));
    found.sort_by_key(RMatrix::sort_key);
    found.dedup();
    Ok(found)
}

/// `x⊗x⁻¹`; for the canonical structure of `(q, h, g)` take `x = gh`.
pub fn braided_r(x: &GroupElement) -> RMatrix {
    RMatrix(TensorElement::term(x.rank(), Rational::one(), vec![x.clone(), x.inverse()]).expect("valid shape"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::UnitElement;
    use crate::quasibialgebra::{canonical, ordinary, twist, CanonicalTriple};
    use crate::rational::{frac, int};

    fn t1(c: Rational, legs: &[&[i64]]) -> TensorElement {
        TensorElement::mono(1, c, legs).unwrap()
    }

    fn r1(c: Rational, x: i64, y: i64) -> RMatrix {
        RMatrix::new(t1(c, &[&[x], &[y]])).unwrap()
    }

    fn triple(q: Rational, h: &[i64], g: &[i64]) -> CanonicalTriple {
        CanonicalTriple::new(q, GroupElement::new(h.to_vec()), GroupElement::new(g.to_vec())).unwrap()
    }

    #[test]
    fn verify_examples() {
        let p = ordinary(1).unwrap();
        assert!(verify_r(&p, &RMatrix::trivial(1).unwrap()).unwrap().all_pass());

        let p = canonical(&triple(int(2), &[1], &[1]));
        assert!(verify_r(&p, &r1(int(1), 2, -2)).unwrap().all_pass());

        let p = ordinary(1).unwrap();
        let rep = verify_r(&p, &r1(int(2), 0, 0)).unwrap();
        assert!(!rep.passes("quasi_triangular_1"));
        let bad = rep.checks.iter().find(|c| c.axiom == "quasi_triangular_1").unwrap();
        assert_eq!(bad.lhs["terms"][0]["c"], "2/1");
        assert_eq!(bad.rhs["terms"][0]["c"], "4/1");
    }

    #[test]
    fn verify_rejects_bad_shapes() {
        let p = ordinary(2).unwrap();
        assert!(matches!(verify_r(&p, &RMatrix::trivial(1).unwrap()), Err(Error::RankMismatch { .. })));
        assert!(RMatrix::new(t1(int(1), &[&[0]])).is_err());
        let sum = t1(int(1), &[&[0], &[0]]).add(&t1(int(1), &[&[1], &[0]])).unwrap();
        assert!(matches!(RMatrix::new(sum), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn twist_examples() {
        let one = RMatrix::trivial(1).unwrap();
        let u_inv = t1(frac(1, 2), &[&[-1], &[1]]);
        assert_eq!(twist_r(&one, &u_inv).unwrap(), r1(int(1), 2, -2));

        let any = r1(frac(-3, 5), 4, 1);
        assert_eq!(twist_r(&any, &TensorElement::one(1, 2).unwrap()).unwrap(), any);

        assert_eq!(twist_r(&one, &t1(int(3), &[&[2], &[-1]])).unwrap(), r1(int(1), -3, 3));

        let not_unit = t1(int(1), &[&[0], &[0]]).add(&t1(int(1), &[&[1], &[1]])).unwrap();
        assert!(matches!(twist_r(&one, &not_unit), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_r(&ordinary(1).unwrap()).unwrap(), vec![RMatrix::trivial(1).unwrap()]);
        assert_eq!(solve_r(&ordinary(2).unwrap()).unwrap(), vec![RMatrix::trivial(2).unwrap()]);
        let p = canonical(&triple(frac(7, 3), &[2], &[3]));
        assert_eq!(solve_r(&p).unwrap(), vec![r1(int(1), 5, -5)]);
        let p = canonical(&triple(int(-2), &[1, 0], &[2, -1]));
        assert_eq!(solve_r(&p).unwrap(), vec![braided_r(&GroupElement::new(vec![3, -1]))]);
    }

    #[test]
    fn ordinary_rank_two_matches_grid() {
        let p = ordinary(2).unwrap();
        let ts = [int(1), int(-1), int(2), int(-2), frac(1, 2)];
        let mut found = Vec::new();
        for x0 in -2..=2 {
            for x1 in -2..=2 {
                for y0 in -2..=2 {
                    for y1 in -2..=2 {
                        for t in &ts {
                            let r = RMatrix::new(TensorElement::mono(2, t.clone(), &[&[x0, x1], &[y0, y1]]).unwrap())
                                .unwrap();
                            if verify_r(&p, &r).unwrap().passes("quasi_triangular") {
                                found.push(r);
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(found, solve_r(&p).unwrap());
    }

    #[test]
    fn solve_handles_rescaled_coalgebra() {
        // Δ(g) = ½·g⊗g, ε(g) = 2 is the ordinary bialgebra in disguise.
        let base = canonical(&triple(int(3), &[1], &[2]));
        let iso = crate::quasibialgebra::BialgebraIso::new(vec![UnitElement::new(1, frac(1, 2), vec![GroupElement::new(vec![1])]).unwrap()]).unwrap();
        let p = QuasiBialgebraPresentation::new(
            crate::laurent::AlgebraMapSpec::new(1, 2, vec![t1(frac(1, 2), &[&[1], &[1]])]).unwrap(),
            crate::laurent::CounitSpec::new(vec![int(2)]).unwrap(),
            iso.apply(base.phi()).unwrap(),
            iso.apply(base.lambda()).unwrap(),
            iso.apply(base.rho()).unwrap(),
        )
        .unwrap();
        assert!(crate::quasibialgebra::verify(&p).all_pass());
        let sols = solve_r(&p).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(verify_r(&p, &sols[0]).unwrap().all_pass());
    }

    #[test]
    fn product_order_is_immaterial() {
        let p = canonical(&triple(int(2), &[1], &[-3]));
        let r = braided_r(&GroupElement::new(vec![-2]));
        let one = TensorElement::one(1, 1).unwrap();
        let phi = p.phi();
        let factors = [
            phi.permute_legs(&[1, 2, 0]).unwrap(),
            r.element().tensor(&one).unwrap().permute_legs(&[0, 2, 1]).unwrap(),
            phi.invert_unit().unwrap().permute_legs(&[0, 2, 1]).unwrap(),
            one.tensor(r.element()).unwrap(),
            phi.clone(),
        ];
        let mut rev = factors.clone();
        rev.reverse();
        assert_eq!(TensorElement::product(&factors).unwrap(), TensorElement::product(&rev).unwrap());
    }

    #[test]
    fn twist_equivariance_example() {
        let p = canonical(&triple(int(2), &[1], &[1]));
        let r = r1(int(1), 2, -2);
        let alpha = t1(frac(-3, 2), &[&[1], &[-4]]);
        let q = twist(&p, &alpha).unwrap();
        assert!(verify_r(&q, &twist_r(&r, &alpha).unwrap()).unwrap().all_pass());
    }

    #[test]
    fn json_round_trip() {
        let r = r1(frac(1, 3), -3, 3);
        assert_eq!(RMatrix::from_json(&r.to_json()).unwrap(), r);
        assert!(RMatrix::from_json(r#"{"rank":1,"legs":1,"terms":[{"c":"1/1","e":[[0]]}]}"#).is_err());
    }
}
