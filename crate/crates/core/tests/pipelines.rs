use alexmod::arrangements::{
    central_delta, delta_from_pipeline, hodge_report, intersection_data, os_algebra, Arrangement, ArrangementSpec, DeltaProvenance,
};
use alexmod::invariants::{jordan_profile, roots_of_unity_check, semisimplicity_check};
use alexmod::laurent::LaurentPoly;
use alexmod::localsys::{alexander_homology, torsion_via_psi, PresentationSpec};
use alexmod::rmodule::{conjugate, torsion_part};
use alexmod::thicken::{torsion_of_thickening, BifilteredCdga, Direction};
use proptest::prelude::*;

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn trefoil_from_json() {
    let spec = PresentationSpec::from_json(r#"{"generators":2,"relators":[[1,2,1,-2,-1,-2]],"epimorphism":[1,1]}"#).unwrap();
    let pc = spec.complex().unwrap();
    let h1 = alexander_homology(&pc, 1).unwrap();
    assert_eq!(h1.order().normalize(), p("t^2 - t + 1"));
    assert!(roots_of_unity_check(&h1).ok);
    assert!(semisimplicity_check(&h1).unwrap());
    assert_eq!(torsion_via_psi(&pc, 2).unwrap(), conjugate(&torsion_part(&h1)));
    let profile = jordan_profile(&h1).unwrap();
    assert_eq!(profile.len(), 1);
    assert_eq!(profile[0].cyclotomic_index, Some(6));
}

#[test]
fn arrangement_json_round_trip() {
    let spec = ArrangementSpec::from_json(r#"{"lines":[[1,0,0],["1/2",0,"1/2"],[0,1,0],[0,"-3","-3"],[1,1,1]]}"#).unwrap();
    let arr = spec.arrangement().unwrap();
    assert_eq!(intersection_data(&arr), intersection_data(&Arrangement::deleted()));
    let delta = delta_from_pipeline(&arr).unwrap();
    let r = hodge_report(arr.len(), &delta, DeltaProvenance::PresentationPipeline).unwrap();
    assert_eq!((r.h11, r.h10), (4, 1));
}

#[test]
fn os_thickening_sees_unipotent_part() {
    for d in 3..=4 {
        let arr = Arrangement::central(d).unwrap();
        let os = os_algebra(&arr).unwrap();
        let eta = Direction::sum_of_basis(&os);
        let h1 = torsion_of_thickening(&os, &eta, 1).unwrap();
        assert_eq!(h1.order(), p("t - 1"));
        let h2 = torsion_of_thickening(&os, &eta, 2).unwrap();
        assert_eq!(h2.torsion_dim(), central_delta(d).unwrap().multiplicity_of(&p("t - 1")));
    }
}

#[test]
fn heisenberg_round_trips_through_json() {
    let h = BifilteredCdga::heisenberg(1, 1, 1).unwrap();
    let json = serde_json::to_string(&h.to_spec()).unwrap();
    let back = BifilteredCdga::from_json(&json).unwrap();
    assert_eq!(back.to_spec(), h.to_spec());
}

proptest! {
    #[test]
    fn psi_matches_snf_on_torus_knots(a in 2i64..5, b in 2i64..5) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        // <x, y | x^a = y^b>, x -> b, y -> a
        let mut r: Vec<i64> = vec![1; a as usize];
        r.extend(std::iter::repeat_n(-2, b as usize));
        let spec = PresentationSpec { generators: 2, relators: vec![r], epimorphism: vec![b, a] };
        let pc = spec.complex().unwrap();
        let h1 = alexander_homology(&pc, 1).unwrap();
        prop_assert_eq!(torsion_via_psi(&pc, 2).unwrap(), conjugate(&torsion_part(&h1)));
        prop_assert!(roots_of_unity_check(&h1).ok);
    }
}
