use proptest::prelude::*;

use qbialg::homcat::{self, HomObject, RatMatrix};
use qbialg::laurent::{AlgebraMapSpec, CounitSpec, GroupElement, TensorElement, UnitElement};
use qbialg::quasibialgebra::{self, canonical, ordinary, twist, CanonicalTriple};
use qbialg::quasitriangular::{self, twist_r};
use qbialg::rational::{frac, int, Rational};

fn scalar() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![int(1), int(-1), int(2), int(-2), int(3), int(-3), frac(1, 2), frac(-2, 3)])
}

fn group_element(rank: usize, bound: i64) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-bound..=bound, rank).prop_map(GroupElement::new)
}

fn element(rank: usize, legs: usize) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((prop::collection::vec(group_element(rank, 5), legs), scalar()), 0..=4)
        .prop_map(move |terms| TensorElement::from_terms(rank, legs, terms).unwrap())
}

fn unit(rank: usize, legs: usize) -> impl Strategy<Value = TensorElement> {
    (scalar(), prop::collection::vec(group_element(rank, 4), legs))
        .prop_map(move |(c, m)| TensorElement::term(rank, c, m).unwrap())
}

fn triple_of_rank(r: usize) -> impl Strategy<Value = CanonicalTriple> {
    let qs = vec![int(1), int(-1), int(2), int(-2), int(3), int(-3), frac(1, 2)];
    (prop::sample::select(qs), group_element(r, 5), group_element(r, 5))
        .prop_map(|(q, h, g)| CanonicalTriple::new(q, h, g).unwrap())
}

fn triple(max_rank: usize) -> impl Strategy<Value = CanonicalTriple> {
    (1..=max_rank).prop_flat_map(triple_of_rank)
}

fn ring_triple() -> impl Strategy<Value = (TensorElement, TensorElement, TensorElement)> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(r, m)| (element(r, m), element(r, m), element(r, m)))
}

proptest! {
    #[test]
    fn ring_laws((x, y, z) in ring_triple()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn units_are_exactly_single_terms(x in (1usize..=3).prop_flat_map(|r| element(r, 2))) {
        match x.as_unit() {
            Ok(_) => {
                prop_assert_eq!(x.num_terms(), 1);
                prop_assert!(x.mul(&x.invert_unit().unwrap()).unwrap().is_one());
            }
            Err(_) => prop_assert_ne!(x.num_terms(), 1),
        }
    }

    #[test]
    fn leg_maps_on_disjoint_legs_commute(
        x in element(1, 2),
        c in scalar(),
        e in (-3i64..=3, -3i64..=3),
        eps in scalar(),
    ) {
        let image = TensorElement::mono(1, c, &[&[e.0], &[e.1]]).unwrap();
        let delta = AlgebraMapSpec::new(1, 2, vec![image]).unwrap();
        let counit = CounitSpec::new(vec![eps]).unwrap();
        let lhs = x.apply_coproduct_on_leg(&delta, 0).unwrap().apply_counit_on_leg(&counit, 2).unwrap();
        let rhs = x.apply_counit_on_leg(&counit, 1).unwrap().apply_coproduct_on_leg(&delta, 0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serialization_is_canonical(x in element(2, 2)) {
        prop_assert_eq!(x.to_json(), x.to_json());
        prop_assert_eq!(TensorElement::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn canonical_presentations_verify(t in triple(3)) {
        let p = canonical(&t);
        prop_assert!(quasibialgebra::verify(&p).all_pass());
        let (iso, n) = quasibialgebra::normalize(&p).unwrap();
        prop_assert_eq!(n, p.clone());
        prop_assert_eq!(iso, quasibialgebra::BialgebraIso::identity(t.rank()));
        let f = quasibialgebra::find_trivializing_twist(&p).unwrap();
        prop_assert_eq!(&f, &t.trivializing_twist());
        prop_assert_eq!(twist(&p, &f).unwrap(), ordinary(t.rank()).unwrap());
    }

    #[test]
    fn twisting_back_is_the_identity(t in triple(2), seed in 0u64..1000) {
        let p = canonical(&t);
        let r = t.rank();
        let exps: Vec<i64> = (0..2 * r).map(|i| ((seed as i64 + 3 * i as i64) % 7) - 3).collect();
        let alpha = TensorElement::term(
            r,
            frac(seed as i64 % 5 + 1, 2),
            vec![GroupElement::new(exps[..r].to_vec()), GroupElement::new(exps[r..].to_vec())],
        )
        .unwrap();
        let back = twist(&twist(&p, &alpha).unwrap(), &alpha.invert_unit().unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn r_matrices_survive_twisting((t, alpha) in (1usize..=2).prop_flat_map(|r| (triple_of_rank(r), unit(r, 2)))) {
        let p = canonical(&t);
        let sols = quasitriangular::solve_r(&p).unwrap();
        prop_assert_eq!(sols.len(), 1);
        let r = &sols[0];
        prop_assert!(quasitriangular::verify_r(&p, r).unwrap().all_pass());
        let twisted = twist_r(r, &alpha).unwrap();
        prop_assert!(quasitriangular::verify_r(&twist(&p, &alpha).unwrap(), &twisted).unwrap().all_pass());
        prop_assert_eq!(twisted.flip(), twisted.inverse());
    }

    #[test]
    fn w_respects_tensor_products(
        a in prop::collection::vec(-3i64..=3, 4),
        b in prop::collection::vec(-3i64..=3, 9),
    ) {
        let ma = RatMatrix::from_i64_rows(&[vec![a[0] + 7, a[1]], vec![a[2], a[3] + 7]]);
        let mb = RatMatrix::from_i64_rows(&[
            vec![b[0] + 11, b[1], b[2]],
            vec![b[3], b[4] + 11, b[5]],
            vec![b[6], b[7], b[8] + 11],
        ]).scale(&frac(1, 2));
        let p = ordinary(1).unwrap();
        let lhs = homcat::tensor_obj(&homcat::from_module_action(&ma).unwrap(), &homcat::from_module_action(&mb).unwrap());
        let rhs = homcat::from_module_action(&homcat::module_tensor_action(&p, &ma, &mb).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn single_field_corruptions_are_rejected() {
    let p = canonical(&CanonicalTriple::new(int(2), GroupElement::new(vec![1]), GroupElement::new(vec![1])).unwrap());
    let g = |legs: usize, at: usize| {
        let mono: Vec<GroupElement> = (0..legs).map(|i| GroupElement::new(vec![i64::from(i == at)])).collect();
        TensorElement::term(1, int(1), mono).unwrap()
    };
    for leg in 0..3 {
        let bad = p.with_phi(p.phi().mul(&g(3, leg)).unwrap()).unwrap();
        assert!(!quasibialgebra::verify(&bad).all_pass(), "phi corrupted on leg {leg}");
    }
    assert!(!quasibialgebra::verify(&p.with_lambda(p.lambda().mul(&g(1, 0)).unwrap()).unwrap()).all_pass());
    assert!(!quasibialgebra::verify(&p.with_rho(p.rho().mul(&g(1, 0)).unwrap()).unwrap()).all_pass());
}

#[test]
fn module_structure_of_canonical_triple_matches_params() {
    let t = CanonicalTriple::new(frac(1, 2), GroupElement::new(vec![-2]), GroupElement::new(vec![3])).unwrap();
    let r = quasitriangular::solve_r(&canonical(&t)).unwrap().remove(0);
    let m = homcat::ModuleStructure::new(canonical(&t), r).unwrap();
    let p = homcat::MonoidalParams::new(frac(1, 2), -2, 3).unwrap();
    let cfg = homcat::CoherenceConfig::new(vec![1, 2, 3], 20, 5);
    assert!(homcat::compare_structures(&m, &p, &[], &cfg).all_equal());
    assert!(homcat::check_coherence(&m, &[HomObject::scalar(&int(2)).unwrap()], &cfg).all_pass());
}

#[test]
fn unit_elements_round_trip_through_tensors() {
    let u = UnitElement::new(2, frac(3, 4), vec![GroupElement::new(vec![1, -1]), GroupElement::new(vec![0, 2])]).unwrap();
    assert_eq!(u.to_tensor().as_unit().unwrap(), u);
}
