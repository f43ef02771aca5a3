use bimon::checkers::{classify_monoid, monoid_from_group};
use bimon::duality::{groupoid_of, roundtrip};
use bimon::munn::munn_monoid;
use bimon::{BooleanInverseMonoid, Error, FinBim, FiniteGroupoid, Permutation};

#[test]
fn cyclic_group_on_three_points_patches_to_all_permutations() {
    let c = Permutation::parse("(1 2 3)", 3).unwrap();
    let s = monoid_from_group(3, &[c]).unwrap();
    assert_eq!(s.len(), 34);
    assert_eq!(s.units().len(), 6);
}

#[test]
fn munn_monoid_on_four_atoms() {
    let r = munn_monoid(4).unwrap();
    assert_eq!(r.munn.len(), 209);
    assert_eq!(r.munn.units().len(), 24);
}

#[test]
fn local_monoids_are_symmetric_inverse_monoids() {
    let i4 = FinBim::kb(FiniteGroupoid::pair(4).unwrap());
    let e = i4.parse("{1->1, 3->3, 4->4}").unwrap();
    let local = i4.local_monoid(&e).unwrap();
    assert_eq!(local.len(), 34);
    assert!(roundtrip(&local).unwrap().passes());
}

#[test]
fn groupoid_json_files_round_trip() {
    let g = FiniteGroupoid::from_spec("disjoint_union(pair:2,group:Z3)").unwrap();
    let dir = std::env::temp_dir().join(format!("bimon-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    std::fs::write(&path, g.to_json().to_string()).unwrap();
    let back = FiniteGroupoid::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.arrow_count(), g.arrow_count());
    assert_eq!(FinBim::kb(back).len(), FinBim::kb(g).len());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn non_closed_carriers_are_rejected_with_witness() {
    let g = FiniteGroupoid::pair(3).unwrap();
    let i3 = FinBim::kb(g.clone());
    let carrier = vec![
        i3.parse("{}").unwrap(),
        i3.one(),
        i3.parse("{1->2, 2->3, 3->1}").unwrap(),
    ];
    match FinBim::with_carrier(g, carrier) {
        Err(Error::NotClosed { operation, witness }) => {
            assert!(!operation.is_empty());
            assert!(!witness.is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn isotropy_groupoids() {
    let s = FinBim::kb(FiniteGroupoid::from_spec("group:S3").unwrap());
    assert_eq!(s.len(), 7);
    let p = classify_monoid(&s);
    assert!(!p.fundamental && !p.basic && p.zero_simplifying);
    let g = groupoid_of(&s).unwrap();
    assert_eq!(g.groupoid.arrow_count(), 6);
    assert!(!g.groupoid.properties().principal);
}
