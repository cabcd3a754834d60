//! The Harrison complex of k[Zʳ] with coefficients in the unit-group functor:
//! cofaces, boundaries and cohomology through integer linear algebra.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::intmat::{self, IntMatrix};
use crate::laurent::{GroupElement, UnitElement};
use crate::quasibialgebra::CanonicalTriple;
use crate::rational::{self, Rational};

/// A unit `q·x₁⊗⋯⊗xₙ` of `H^{⊗n}`; degree 0 is a bare scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HarrisonCochain {
    unit: UnitElement,
}

impl HarrisonCochain {
    pub fn new(rank: usize, scalar: Rational, elements: Vec<GroupElement>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidShape("rank must be at least 1".into()));
        }
        Ok(HarrisonCochain { unit: UnitElement::new(rank, scalar, elements)? })
    }

    pub fn from_unit(unit: UnitElement) -> Result<Self> {
        if unit.rank() == 0 {
            return Err(Error::InvalidShape("rank must be at least 1".into()));
        }
        Ok(HarrisonCochain { unit })
    }

    /// Builds from raw exponent vectors.
    pub fn from_exponents(rank: usize, scalar: Rational, elements: &[Vec<i64>]) -> Result<Self> {
        Self::new(rank, scalar, elements.iter().map(|e| GroupElement::new(e.clone())).collect())
    }

    pub fn identity(rank: usize, degree: usize) -> Self {
        HarrisonCochain { unit: UnitElement::identity(rank, degree) }
    }

    pub fn degree(&self) -> usize {
        self.unit.legs()
    }

    pub fn rank(&self) -> usize {
        self.unit.rank()
    }

    pub fn scalar(&self) -> &Rational {
        self.unit.scalar()
    }

    pub fn elements(&self) -> &[GroupElement] {
        self.unit.factors()
    }

    pub fn unit(&self) -> &UnitElement {
        &self.unit
    }

    pub fn is_identity(&self) -> bool {
        self.unit.is_identity()
    }

    pub fn mul(&self, other: &HarrisonCochain) -> Result<HarrisonCochain> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(HarrisonCochain { unit: self.unit.mul(&other.unit)? })
    }

    pub fn inverse(&self) -> HarrisonCochain {
        HarrisonCochain { unit: self.unit.inverse() }
    }

    /// All exponents, leg by leg.
    pub fn exponent_vector(&self) -> Vec<i64> {
        self.elements().iter().flat_map(|g| g.exponents().iter().copied()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cochains always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl std::fmt::Display for HarrisonCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.unit.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    scalar: String,
    elements: Vec<Vec<i64>>,
}

impl Serialize for HarrisonCochain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CochainRepr {
            rank: (self.degree() == 0).then_some(self.rank()),
            scalar: rational::format(self.scalar()),
            elements: self.elements().iter().map(|g| g.exponents().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HarrisonCochain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CochainRepr::deserialize(d)?;
        let build = || -> Result<Self> {
            let rank = match (r.rank, r.elements.first()) {
                (Some(rank), Some(e)) if e.len() != rank => {
                    return Err(Error::RankMismatch { expected: rank, found: e.len() })
                }
                (Some(rank), _) => rank,
                (None, Some(e)) => e.len(),
                (None, None) => return Err(Error::Parse("a degree 0 cochain needs an explicit \"rank\"".into())),
            };
            Self::from_exponents(rank, rational::parse(&r.scalar)?, &r.elements)
        };
        build().map_err(D::Error::custom)
    }
}

/// The coface `fᵢ: H^{⊗n} → H^{⊗(n+1)}`, `0 ≤ i ≤ n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CofaceIndex {
    n: usize,
    i: usize,
}

impl CofaceIndex {
    pub fn new(n: usize, i: usize) -> Result<Self> {
        if i > n + 1 {
            return Err(Error::InvalidShape(format!("coface index {i} out of range 0..={}", n + 1)));
        }
        Ok(CofaceIndex { n, i })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }
}

fn check_degree(n: usize, u: &HarrisonCochain) -> Result<()> {
    if u.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: u.degree() });
    }
    Ok(())
}

/// `f₀` prepends 1, `fᵢ` applies Δ to the i-th factor, `f_{n+1}` appends 1.
pub fn coface(ix: CofaceIndex, u: &HarrisonCochain) -> Result<HarrisonCochain> {
    check_degree(ix.n, u)?;
    let one = GroupElement::identity(u.rank());
    let xs = u.elements();
    let mut out = Vec::with_capacity(ix.n + 1);
    if ix.i == 0 {
        out.push(one);
        out.extend_from_slice(xs);
    } else if ix.i == ix.n + 1 {
        out.extend_from_slice(xs);
        out.push(one);
    } else {
        out.extend_from_slice(&xs[..ix.i]);
        out.extend_from_slice(&xs[ix.i - 1..]);
    }
    HarrisonCochain::new(u.rank(), u.scalar().clone(), out)
}

/// `δₙ = ∏ᵢ fᵢ^{(−1)ⁱ}` in the unit group.
pub fn boundary(n: usize, u: &HarrisonCochain) -> Result<HarrisonCochain> {
    check_degree(n, u)?;
    let mut acc = HarrisonCochain::identity(u.rank(), n + 1);
    for i in 0..=n + 1 {
        let f = coface(CofaceIndex::new(n, i)?, u)?;
        acc = acc.mul(&if i % 2 == 0 { f } else { f.inverse() })?;
    }
    Ok(acc)
}

/// The exponent `Σᵢ (−1)ⁱ` by which `δₙ` acts on scalars: 1 for odd `n`, 0 for even.
pub fn scalar_exponent(n: usize) -> i64 {
    (0..=n + 1).map(|i| if i % 2 == 0 { 1 } else { -1 }).sum()
}

/// Evaluates the parity-wise closed forms
/// `δ_{2m}(q·x₁⊗⋯⊗x_{2m}) = x₁⁻¹⊗1⊗x₂x₃⁻¹⊗1⊗⋯⊗x_{2m−2}x_{2m−1}⁻¹⊗1⊗x_{2m}` and
/// `δ_{2m+1}(q·x₁⊗⋯⊗x_{2m+1}) = q·1⊗x₂⊗x₂⊗x₄⊗x₄⊗⋯⊗x_{2m}⊗x_{2m}⊗1`.
pub fn boundary_closed_form(n: usize, u: &HarrisonCochain) -> Result<HarrisonCochain> {
    check_degree(n, u)?;
    if n == 0 {
        return Err(Error::InvalidShape("the closed forms start in degree 1".into()));
    }
    let r = u.rank();
    let one = GroupElement::identity(r);
    let x = |k: usize| u.elements()[k - 1].clone();
    let mut out = Vec::with_capacity(n + 1);
    if n.is_multiple_of(2) {
        let m = n / 2;
        out.push(x(1).inverse());
        for k in 1..m {
            out.push(one.clone());
            out.push(x(2 * k).mul(&x(2 * k + 1).inverse()));
        }
        out.push(one);
        out.push(x(n));
        HarrisonCochain::new(r, Rational::one(), out)
    } else {
        let m = (n - 1) / 2;
        out.push(one.clone());
        for k in 1..=m {
            out.push(x(2 * k));
            out.push(x(2 * k));
        }
        out.push(one);
        HarrisonCochain::new(r, u.scalar().clone(), out)
    }
}

/// The integer matrix of `fᵢ` on exponents, `Z^{rn} → Z^{r(n+1)}`.
fn coface_matrix(rank: usize, n: usize, i: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rank * (n + 1), rank * n);
    for j in 0..n {
        let targets: Vec<usize> = if i == 0 {
            vec![j + 1]
        } else if i == n + 1 || j + 1 < i {
            vec![j]
        } else if j + 1 == i {
            vec![j, j + 1]
        } else {
            vec![j + 1]
        };
        for t in targets {
            for c in 0..rank {
                m[(t * rank + c, j * rank + c)] += 1;
            }
        }
    }
    m
}

/// The exponent part of `δₙ` as an `r(n+1) × rn` integer matrix, assembled as
/// the alternating sum of the coface matrices.
pub fn exponent_matrix(rank: usize, n: usize) -> IntMatrix {
    let mut d = IntMatrix::zeros(rank * (n + 1), rank * n);
    for i in 0..=n + 1 {
        let f = coface_matrix(rank, n, i);
        for a in 0..d.rows() {
            for b in 0..d.cols() {
                if i % 2 == 0 {
                    d[(a, b)] += &f[(a, b)];
                } else {
                    d[(a, b)] -= &f[(a, b)];
                }
            }
        }
    }
    d
}

/// A finitely generated abelian group `Z^free ⊕ ⨁ Z/tᵢ`, optionally times
/// an abstract factor `k*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    #[serde(rename = "scalar_factor")]
    pub has_scalar_factor: bool,
}

impl AbelianGroupDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty() && !self.has_scalar_factor
    }
}

impl std::fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.has_scalar_factor {
            parts.push("k*".to_string());
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// `Hⁿ` of the complex for k[Zʳ].
///
/// The exponent part is `ker Dₙ / im Dₙ₋₁` computed with Smith normal forms;
/// the scalar part is `k*` or trivial according to the parity rule.
pub fn cohomology(rank: usize, n: usize) -> AbelianGroupDescriptor {
    let d = intmat::smith(&exponent_matrix(rank, n));
    let kernel_dim = rank * n - d.rank();
    let image = if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        // columns of D_{n-1} in the Q-coordinates of D_n, restricted to kernel directions
        let prev = exponent_matrix(rank, n - 1);
        d.q_inv.mul(&prev).select_rows(d.rank()..rank * n)
    };
    let im = intmat::smith(&image);
    let torsion = im.torsion().iter().map(|t| t.to_i64().expect("small invariant factor")).collect();

    let kernel_is_all = scalar_exponent(n) == 0;
    let image_is_all = n > 0 && scalar_exponent(n - 1) != 0;
    AbelianGroupDescriptor {
        free_rank: kernel_dim - im.rank(),
        torsion,
        has_scalar_factor: kernel_is_all && !image_is_all,
    }
}

/// The degree-3 cocycles, derived from the kernel of the assembled `δ₃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleClassification {
    pub rank: usize,
    /// Hermite-reduced kernel basis, each vector split into its three legs.
    pub kernel_basis: Vec<Vec<Vec<i64>>>,
    /// Every kernel vector is trivial on the middle leg.
    pub middle_leg_trivial: bool,
    /// `(x₁, x₃)` ranges over all of `(Zʳ)²`.
    pub outer_legs_free: bool,
    /// The scalar of a cocycle must be 1.
    pub scalar_trivial: bool,
}

impl CocycleClassification {
    /// Cocycles are exactly `h⊗1⊗g` with `(h, g)` arbitrary.
    pub fn is_h_one_g(&self) -> bool {
        self.middle_leg_trivial && self.outer_legs_free && self.scalar_trivial
    }

    pub fn cocycle(&self, h: &GroupElement, g: &GroupElement) -> Result<HarrisonCochain> {
        HarrisonCochain::new(
            self.rank,
            Rational::one(),
            vec![h.clone(), GroupElement::identity(self.rank), g.clone()],
        )
    }

    /// The canonical structure with associator `h⊗1⊗g` and free scalar `q`.
    pub fn triple(&self, q: Rational, h: GroupElement, g: GroupElement) -> Result<CanonicalTriple> {
        CanonicalTriple::new(q, h, g)
    }
}

pub fn cocycle_classify(rank: usize) -> CocycleClassification {
    let d = intmat::smith(&exponent_matrix(rank, 3));
    let basis = d.kernel_basis();
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("small kernel entry")).collect())
        .collect();
    let h = intmat::hermite_rows(&IntMatrix::from_rows(&rows));
    let kernel_basis: Vec<Vec<Vec<i64>>> = (0..h.rows())
        .map(|i| {
            h.row(i)
                .chunks(rank)
                .map(|c| c.iter().map(|x| x.to_i64().expect("small entry")).collect())
                .collect()
        })
        .collect();
    let middle_leg_trivial = kernel_basis.iter().all(|v| v[1].iter().all(|&x| x == 0));
    let outer: Vec<Vec<i64>> = kernel_basis.iter().map(|v| [v[0].clone(), v[2].clone()].concat()).collect();
    let outer_legs_free = outer.len() == 2 * rank && {
        let s = intmat::smith(&IntMatrix::from_rows(&outer));
        s.rank() == 2 * rank && s.factors.iter().all(BigInt::is_one)
    };
    CocycleClassification {
        rank,
        kernel_basis,
        middle_leg_trivial,
        outer_legs_free,
        scalar_trivial: scalar_exponent(3) != 0,
    }
}

/// Convenience: `δₙ` applied to the exponent vector alone.
pub fn apply_exponent_matrix(rank: usize, n: usize, v: &[i64]) -> Vec<i64> {
    let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    exponent_matrix(rank, n)
        .mul_vec(&big)
        .iter()
        .map(|x| if x.is_zero() { 0 } else { x.to_i64().expect("small entry") })
        .collect()
}
