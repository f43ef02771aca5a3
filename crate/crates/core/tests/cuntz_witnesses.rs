use bimon::cuntz::witness::{self, Certificate};
use bimon::cuntz::{random, ClopenSet, CuntzMonoid};
use bimon::{BooleanInverseMonoid, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ternary_witnesses_certify() {
    let m = CuntzMonoid::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let e = random::nonzero_clopen(&mut rng, 3, 3);
        let f = random::nonzero_clopen(&mut rng, 3, 3);
        assert!(witness::transporter(&m, &e, &f)
            .unwrap()
            .certificate
            .reverify()
            .unwrap());
        assert!(witness::orthogonal_pencil(&m, &e, &f)
            .unwrap()
            .certificate
            .reverify()
            .unwrap());
        assert!(witness::pencil_transport(&m, &e, &f)
            .unwrap()
            .certificate
            .reverify()
            .unwrap());
        let (x, y) = witness::properly_infinite_witness(&m, &e).unwrap().value;
        assert_eq!(m.d(&x), e);
        assert!(m.r(&x).is_disjoint(&m.r(&y), 3));
        if !e.is_full() {
            assert!(witness::conrade_unit(&m, &e, &f).unwrap().certificate.holds());
        }
        match witness::clopen_iso(&m, &e, &f) {
            Ok(w) => assert!(w.certificate.reverify().unwrap()),
            Err(Error::SizeObstruction(_)) => assert_ne!(e.len() % 2, f.len() % 2),
            Err(other) => panic!("{other}"),
        }
        let s = random::nonzero_element(&mut rng, &m, 3);
        assert!(witness::piecewise_unit_decomposition(&m, &s)
            .unwrap()
            .certificate
            .reverify()
            .unwrap());
    }
}

#[test]
fn certificates_survive_json() {
    let m = CuntzMonoid::new(2).unwrap();
    let e = m.parse_clopen("{0, 110}").unwrap();
    let f = m.parse_clopen("{111}").unwrap();
    let certs = vec![
        witness::transporter(&m, &e, &f).unwrap().certificate,
        witness::conrade_unit(&m, &e, &f).unwrap().certificate,
        witness::orthogonal_pencil(&m, &e, &f).unwrap().certificate,
        witness::properly_infinite_witness(&m, &e).unwrap().certificate,
        witness::infinitesimal_in(&m, &e).unwrap().certificate,
        witness::piecewise_unit_decomposition(&m, &m.parse("e->0").unwrap())
            .unwrap()
            .certificate,
    ];
    for c in certs {
        let text = serde_json::to_string_pretty(&c).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(back.reverify().unwrap());
    }
}

#[test]
fn depth_cap_is_enforced() {
    let m = CuntzMonoid::with_depth_cap(2, 4).unwrap();
    let a = m.parse("e->0000").unwrap();
    assert!(matches!(m.multiply(&a, &a), Err(Error::DepthCap { cap: 4 })));
    assert!(matches!(m.parse_clopen("{00000}"), Err(Error::DepthCap { cap: 4 })));
    let m = CuntzMonoid::new(2).unwrap();
    let deep = ClopenSet::cylinder(vec![1; 32]);
    assert!(matches!(
        witness::infinitesimal_in(&m, &deep),
        Err(Error::DepthCap { .. })
    ));
}

#[test]
fn congruence_obstruction_cites_residues() {
    let m = CuntzMonoid::new(3).unwrap();
    let e = m.parse_clopen("{0}").unwrap();
    let f = m.parse_clopen("{0, 1}").unwrap();
    match witness::clopen_iso(&m, &e, &f) {
        Err(Error::SizeObstruction(msg)) => assert!(msg.contains("mod 2"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn polycyclic_copy_in_every_corner() {
    let m = CuntzMonoid::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let e = random::nonzero_clopen(&mut rng, 2, 5);
        let (x, y) = witness::properly_infinite_witness(&m, &e).unwrap().value;
        let ee = m.idempotent(&e);
        assert_eq!(m.dom(&x).unwrap(), ee);
        assert_eq!(m.dom(&y).unwrap(), ee);
        let cross = m.multiply(&m.inverse(&x), &y).unwrap();
        assert!(cross.is_empty());
    }
}
