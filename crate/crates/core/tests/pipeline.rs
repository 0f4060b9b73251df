use destab_core::algebra::{q, HomogeneousIdeal};
use destab_core::building::{building_point_of, FramedOnePS};
use destab_core::kempf::{optimal_destabilizer, Status};
use destab_core::opsub::{are_t_equivalent, canonicalize, WeightVector};
use destab_core::stability::{mu, state_of_hilbert_point, StateSet};
use destab_core::testconfig::{df_invariant, flat_limit, k_stability_sweep, torus_equivalent, SweepStatus, TestDegeneration};

fn w(v: &[i64]) -> WeightVector {
    WeightVector::new(v.to_vec()).unwrap()
}

fn conic() -> HomogeneousIdeal {
    HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2"]).unwrap()
}

#[test]
fn twisted_cubic_degenerates_flatly() {
    let i = HomogeneousIdeal::parse(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]).unwrap();
    let td = TestDegeneration::new(i.clone(), 1, w(&[3, 1, 0, 0])).unwrap();
    let limit = flat_limit(&td);
    for k in 0..=6 {
        assert_eq!(limit.hilbert_function(k), i.hilbert_function(k));
    }
    assert_eq!(limit.hilbert_polynomial().unwrap().poly, i.hilbert_polynomial().unwrap().poly);
}

#[test]
fn equivalent_weights_share_everything() {
    let a = w(&[2, -1, 0]);
    let b = a.scaled(3).shifted(7);
    assert!(are_t_equivalent(&a, &b).unwrap());
    assert_eq!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
    let pa = building_point_of(&FramedOnePS::diagonal(a.clone())).unwrap();
    let pb = building_point_of(&FramedOnePS::diagonal(b.clone())).unwrap();
    assert_eq!(pa, pb);
    let ta = TestDegeneration::new(conic(), 1, a).unwrap();
    let tb = TestDegeneration::new(conic(), 1, b).unwrap();
    assert!(torus_equivalent(&flat_limit(&ta), &flat_limit(&tb)));
    assert_eq!(df_invariant(&tb).unwrap().df, q(3) * df_invariant(&ta).unwrap().df);
}

#[test]
fn hilbert_points_of_the_conic_are_semistable() {
    for d in 2..=4 {
        let s = state_of_hilbert_point(&conic(), d).unwrap();
        assert_eq!(optimal_destabilizer(&s).status, Status::Stable, "d = {d}");
    }
}

#[test]
fn state_json_round_trip() {
    let s = StateSet::labeled(vec![(vec![2, 0, 0], "x^2".into()), (vec![1, 1, 0], "x*y".into())])
        .and_then(|s| s.with_degree(2))
        .unwrap();
    let text = serde_json::to_string(&s).unwrap();
    let back: StateSet = serde_json::from_str(&text).unwrap();
    assert_eq!(s, back);
    assert!(serde_json::from_str::<StateSet>(r#"{"characters": [[1, 0]], "extra": 1}"#).is_err());
    assert!(serde_json::from_str::<StateSet>(r#"{"characters": [[1, 0], [1, 1]], "degree": 1}"#).is_err());
}

#[test]
fn mu_is_the_largest_pairing() {
    let s = StateSet::new(vec![vec![2, 0, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
    let r = mu(&s, &w(&[-1, 0, 2])).unwrap();
    // -<a, chi> is 2, -2, -1
    assert_eq!(r.argmax, vec![vec![2, 0, 0]]);
}

#[test]
fn sweep_on_a_line_is_not_destabilized() {
    let line = HomogeneousIdeal::parse(&["x", "y", "z"], &["z"]).unwrap();
    let report = k_stability_sweep(&line, 1, 1).unwrap();
    assert_ne!(report.status, SweepStatus::Destabilized);
}
