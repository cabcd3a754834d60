//! Coherence checks by exact evaluation on randomly sampled objects.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{intertwines, tensor_obj, HomObject, HomStructure, MonoidalParams, RatMatrix};
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    #[serde(rename = "intertwining")]
    Intertwining,
    #[serde(rename = "pentagon")]
    Pentagon,
    #[serde(rename = "triangle")]
    Triangle,
    #[serde(rename = "hexagon_1")]
    Hexagon1,
    #[serde(rename = "hexagon_2")]
    Hexagon2,
    #[serde(rename = "symmetry")]
    Symmetry,
    #[serde(rename = "naturality_a")]
    NaturalityA,
    #[serde(rename = "naturality_l")]
    NaturalityL,
    #[serde(rename = "naturality_r")]
    NaturalityR,
    #[serde(rename = "naturality_c")]
    NaturalityC,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Intertwining,
        Axiom::Pentagon,
        Axiom::Triangle,
        Axiom::Hexagon1,
        Axiom::Hexagon2,
        Axiom::Symmetry,
        Axiom::NaturalityA,
        Axiom::NaturalityL,
        Axiom::NaturalityR,
        Axiom::NaturalityC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Intertwining => "intertwining",
            Axiom::Pentagon => "pentagon",
            Axiom::Triangle => "triangle",
            Axiom::Hexagon1 => "hexagon_1",
            Axiom::Hexagon2 => "hexagon_2",
            Axiom::Symmetry => "symmetry",
            Axiom::NaturalityA => "naturality_a",
            Axiom::NaturalityL => "naturality_l",
            Axiom::NaturalityR => "naturality_r",
            Axiom::NaturalityC => "naturality_c",
        }
    }

    /// Number of objects an instance needs.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Pentagon => 4,
            Axiom::Intertwining | Axiom::Hexagon1 | Axiom::Hexagon2 | Axiom::NaturalityA => 3,
            Axiom::Triangle | Axiom::Symmetry | Axiom::NaturalityC => 2,
            Axiom::NaturalityL | Axiom::NaturalityR => 1,
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Sampling parameters: object dimensions are drawn uniformly from `dims`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl CoherenceConfig {
    pub fn new(dims: Vec<usize>, trials: usize, seed: u64) -> Self {
        assert!(!dims.is_empty(), "at least one dimension to sample from");
        CoherenceConfig { dims, trials, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceInstance {
    pub axiom: Axiom,
    pub dims: Vec<usize>,
    pub pass: bool,
    /// `lhs − rhs` when the identity fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub config: CoherenceConfig,
    pub instances: Vec<CoherenceInstance>,
}

impl CoherenceReport {
    pub fn all_pass(&self) -> bool {
        self.instances.iter().all(|i| i.pass)
    }

    pub fn count(&self, axiom: Axiom) -> usize {
        self.instances.iter().filter(|i| i.axiom == axiom).count()
    }

    /// Every instance of `axiom` passed (and there was at least one).
    pub fn passes(&self, axiom: Axiom) -> bool {
        self.count(axiom) > 0 && self.instances.iter().filter(|i| i.axiom == axiom).all(|i| i.pass)
    }

    /// Some instance of `axiom` failed.
    pub fn detects(&self, axiom: Axiom) -> bool {
        self.instances.iter().any(|i| i.axiom == axiom && !i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CoherenceInstance> {
        self.instances.iter().filter(|i| !i.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A product of random elementary integer matrices, so `det = ±1` and all
/// powers stay integral.
fn random_unimodular(rng: &mut ChaCha8Rng, d: usize) -> RatMatrix {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..2 * d + 1 {
        let i = rng.gen_range(0..d);
        match (d > 1, rng.gen_range(0..4)) {
            (true, 0 | 1) => {
                let j = (i + rng.gen_range(1..d)) % d;
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                let row = m[j].clone();
                m[i].iter_mut().zip(&row).for_each(|(x, y)| *x += c * y);
            }
            (true, 2) => m.swap(i, (i + 1) % d),
            _ => m[i].iter_mut().for_each(|x| *x = -*x),
        }
    }
    RatMatrix::from_i64_rows(&m)
}

fn random_object(rng: &mut ChaCha8Rng, dims: &[usize]) -> HomObject {
    let d = *dims.choose(rng).expect("non-empty dims");
    HomObject::new(random_unimodular(rng, d)).expect("unimodular matrices are invertible")
}

/// A random morphism `ξ: X → X'` with `X' = (X, P f_X P⁻¹)` and
/// `ξ = P·(c₀ + c₁ f_X + c₂ f_X⁻¹)`.
fn random_morphism(rng: &mut ChaCha8Rng, x: &HomObject) -> (HomObject, RatMatrix) {
    let p = random_unimodular(rng, x.dim());
    let p_inv = p.inverse().expect("unimodular");
    let target = HomObject::new(p.mul(x.automorphism()).mul(&p_inv)).expect("conjugate of an automorphism");
    let mut c = || Rational::from_integer(rng.gen_range(-2i64..=2).into());
    let poly = x
        .identity_map()
        .scale(&c())
        .add(&x.power(1).scale(&c()))
        .add(&x.power(-1).scale(&c()));
    (target, p.mul(&poly))
}

fn kron_all(ms: &[&RatMatrix]) -> RatMatrix {
    ms.iter().fold(RatMatrix::identity(1), |acc, m| acc.kron(m))
}

fn compare(axiom: Axiom, dims: Vec<usize>, lhs: RatMatrix, rhs: RatMatrix) -> CoherenceInstance {
    let pass = lhs == rhs;
    CoherenceInstance { axiom, dims, pass, witness: (!pass).then(|| lhs.sub(&rhs)) }
}

fn inv(m: RatMatrix) -> RatMatrix {
    m.inverse().expect("constraints are isomorphisms")
}

/// One instance of `axiom` on `objs`. The first factor on the left-hand side
/// is taken from `designated`, everything else from `s`.
fn evaluate(
    axiom: Axiom,
    s: &dyn HomStructure,
    designated: &dyn HomStructure,
    objs: &[HomObject],
    rng: &mut ChaCha8Rng,
) -> CoherenceInstance {
    let dims: Vec<usize> = objs.iter().map(HomObject::dim).collect();
    let one = HomObject::unit();
    let id = |o: &HomObject| o.identity_map();
    match axiom {
        Axiom::Intertwining => {
            let (u, v, w) = (&objs[0], &objs[1], &objs[2]);
            let uvw = tensor_obj(&tensor_obj(u, v), w);
            let checks = [
                (uvw.clone(), uvw, designated.associator(u, v, w)),
                (tensor_obj(&one, u), u.clone(), designated.left_unitor(u)),
                (tensor_obj(u, &one), u.clone(), designated.right_unitor(u)),
                (tensor_obj(u, v), tensor_obj(v, u), designated.braiding(u, v)),
            ];
            for (src, tgt, m) in checks {
                if !intertwines(&src, &tgt, &m) {
                    return compare(axiom, dims, tgt.automorphism().mul(&m), m.mul(src.automorphism()));
                }
            }
            CoherenceInstance { axiom, dims, pass: true, witness: None }
        }
        Axiom::Pentagon => {
            let (u, v, w, x) = (&objs[0], &objs[1], &objs[2], &objs[3]);
            let lhs = designated
                .associator(u, v, &tensor_obj(w, x))
                .mul(&s.associator(&tensor_obj(u, v), w, x));
            let rhs = id(u)
                .kron(&s.associator(v, w, x))
                .mul(&s.associator(u, &tensor_obj(v, w), x))
                .mul(&s.associator(u, v, w).kron(&id(x)));
            compare(axiom, dims, lhs, rhs)
        }
        Axiom::Triangle => {
            let (v, w) = (&objs[0], &objs[1]);
            let lhs = id(v).kron(&designated.left_unitor(w)).mul(&s.associator(v, &one, w));
            let rhs = s.right_unitor(v).kron(&id(w));
            compare(axiom, dims, lhs, rhs)
        }
        Axiom::Hexagon1 => {
            let (u, v, w) = (&objs[0], &objs[1], &objs[2]);
            let lhs = s
                .associator(v, w, u)
                .mul(&designated.braiding(u, &tensor_obj(v, w)))
                .mul(&s.associator(u, v, w));
            let rhs = id(v)
                .kron(&s.braiding(u, w))
                .mul(&s.associator(v, u, w))
                .mul(&s.braiding(u, v).kron(&id(w)));
            compare(axiom, dims, lhs, rhs)
        }
        Axiom::Hexagon2 => {
            let (u, v, w) = (&objs[0], &objs[1], &objs[2]);
            let lhs = inv(s.associator(w, u, v))
                .mul(&designated.braiding(&tensor_obj(u, v), w))
                .mul(&inv(s.associator(u, v, w)));
            let rhs = s
                .braiding(u, w)
                .kron(&id(v))
                .mul(&inv(s.associator(u, w, v)))
                .mul(&id(u).kron(&s.braiding(v, w)));
            compare(axiom, dims, lhs, rhs)
        }
        Axiom::Symmetry => {
            let (u, v) = (&objs[0], &objs[1]);
            let lhs = designated.braiding(v, u).mul(&s.braiding(u, v));
            compare(axiom, dims, lhs, tensor_obj(u, v).identity_map())
        }
        Axiom::NaturalityA => {
            let (x, y, z) = (&objs[0], &objs[1], &objs[2]);
            let (x2, xi) = random_morphism(rng, x);
            let (y2, eta) = random_morphism(rng, y);
            let (z2, zeta) = random_morphism(rng, z);
            let t = kron_all(&[&xi, &eta, &zeta]);
            let lhs = designated.associator(&x2, &y2, &z2).mul(&t);
            let rhs = t.mul(&s.associator(x, y, z));
            compare(axiom, dims, lhs, rhs)
        }
        Axiom::NaturalityL | Axiom::NaturalityR => {
            let x = &objs[0];
            let (x2, xi) = random_morphism(rng, x);
            let (lhs, rhs) = if axiom == Axiom::NaturalityL {
                (designated.left_unitor(&x2).mul(&xi), xi.mul(&s.left_unitor(x)))
            } else {
                (designated.right_unitor(&x2).mul(&xi), xi.mul(&s.right_unitor(x)))
            };
            compare(axiom, dims, lhs, rhs)
        }
        Axiom::NaturalityC => {
            let (x, y) = (&objs[0], &objs[1]);
            let (x2, xi) = random_morphism(rng, x);
            let (y2, eta) = random_morphism(rng, y);
            let lhs = designated.braiding(&x2, &y2).mul(&xi.kron(&eta));
            let rhs = eta.kron(&xi).mul(&s.braiding(x, y));
            compare(axiom, dims, lhs, rhs)
        }
    }
}

/// `cfg.trials` random instances of `axiom`, followed by one instance per
/// supplied object (tuples taken cyclically from `objects`).
pub fn check_axiom(
    s: &dyn HomStructure,
    designated: &dyn HomStructure,
    axiom: Axiom,
    objects: &[HomObject],
    cfg: &CoherenceConfig,
) -> Vec<CoherenceInstance> {
    let salt = Axiom::ALL.iter().position(|&a| a == axiom).expect("listed") as u64 + 1;
    let mut rng = rng_for(cfg.seed, salt);
    let k = axiom.arity();
    let mut out = Vec::with_capacity(cfg.trials + objects.len());
    for _ in 0..cfg.trials {
        let objs: Vec<HomObject> = (0..k).map(|_| random_object(&mut rng, &cfg.dims)).collect();
        out.push(evaluate(axiom, s, designated, &objs, &mut rng));
    }
    for i in 0..objects.len() {
        let objs: Vec<HomObject> = (0..k).map(|j| objects[(i + j) % objects.len()].clone()).collect();
        out.push(evaluate(axiom, s, designated, &objs, &mut rng));
    }
    out
}

/// Pentagon, triangle, both hexagons, symmetry, naturality of `a, l, r, c`,
/// and the intertwining property of every constraint.
pub fn check_coherence(s: &dyn HomStructure, objects: &[HomObject], cfg: &CoherenceConfig) -> CoherenceReport {
    let instances = Axiom::ALL.iter().flat_map(|&ax| check_axiom(s, s, ax, objects, cfg)).collect();
    CoherenceReport { config: cfg.clone(), instances }
}

/// `p` with a single exponent shifted by one, chosen so that the constraint
/// `axiom` draws its designated factor from changes.
pub fn corrupted_params(p: &MonoidalParams, axiom: Axiom) -> MonoidalParams {
    let (a, b) = match axiom {
        Axiom::Triangle | Axiom::NaturalityL => (p.a, p.b + 1),
        _ => (p.a + 1, p.b),
    };
    MonoidalParams { q: p.q.clone(), a, b }
}

/// Runs `axiom` with its designated factor taken from `corrupted`.
pub fn negative_control(
    s: &dyn HomStructure,
    corrupted: &dyn HomStructure,
    axiom: Axiom,
    objects: &[HomObject],
    cfg: &CoherenceConfig,
) -> CoherenceReport {
    CoherenceReport { config: cfg.clone(), instances: check_axiom(s, corrupted, axiom, objects, cfg) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    Associator,
    LeftUnitor,
    RightUnitor,
    Braiding,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonInstance {
    pub constraint: Constraint,
    pub dims: Vec<usize>,
    pub equal: bool,
    /// `m₂·m₁⁻¹` when the two constraints differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub config: CoherenceConfig,
    pub instances: Vec<ComparisonInstance>,
}

impl ComparisonReport {
    pub fn all_equal(&self) -> bool {
        self.instances.iter().all(|i| i.equal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Evaluates `a, l, r, c` of both structures on the same sampled objects.
pub fn compare_structures(
    s1: &dyn HomStructure,
    s2: &dyn HomStructure,
    objects: &[HomObject],
    cfg: &CoherenceConfig,
) -> ComparisonReport {
    let mut rng = rng_for(cfg.seed, 0);
    let mut triples: Vec<[HomObject; 3]> = (0..cfg.trials)
        .map(|_| std::array::from_fn(|_| random_object(&mut rng, &cfg.dims)))
        .collect();
    for i in 0..objects.len() {
        triples.push(std::array::from_fn(|j| objects[(i + j) % objects.len()].clone()));
    }
    let mut instances = Vec::new();
    for [u, v, w] in &triples {
        let pairs = [
            (Constraint::Associator, vec![u.dim(), v.dim(), w.dim()], s1.associator(u, v, w), s2.associator(u, v, w)),
            (Constraint::LeftUnitor, vec![u.dim()], s1.left_unitor(u), s2.left_unitor(u)),
            (Constraint::RightUnitor, vec![u.dim()], s1.right_unitor(u), s2.right_unitor(u)),
            (Constraint::Braiding, vec![u.dim(), v.dim()], s1.braiding(u, v), s2.braiding(u, v)),
        ];
        for (constraint, dims, m1, m2) in pairs {
            let equal = m1 == m2;
            let relation = (!equal).then(|| m2.mul(&inv(m1)));
            instances.push(ComparisonInstance { constraint, dims, equal, relation });
        }
    }
    ComparisonReport { config: cfg.clone(), instances }
}

impl std::fmt::Display for MonoidalParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(q={}, a={}, b={})", rational::format(&self.q), self.a, self.b)
    }
}
