use zforce::bounds::{abajo_dianez_ex, extremal_bruteforce, mantel_ex, BoundError};
use zforce::graph::Girth;

#[test]
fn mantel_matches_enumeration() {
    for n in 1..=7 {
        let (edges, witness) = extremal_bruteforce(n, 3).unwrap();
        assert_eq!(edges, mantel_ex(n), "n={n}");
        assert!(witness.girth().finite().is_none_or(|g| g >= 4));
    }
}

#[test]
fn girth_window_formula_matches_enumeration() {
    let cases = [
        (4, 5, 5),
        (4, 6, 6),
        (4, 7, 8),
        (4, 8, 10),
        (5, 6, 6),
        (5, 7, 7),
        (5, 8, 9),
    ];
    for (ell, n, expected) in cases {
        let formula = abajo_dianez_ex(n, ell).unwrap();
        let (edges, witness) = extremal_bruteforce(n, ell).unwrap();
        assert_eq!(formula, expected, "formula n={n} l={ell}");
        assert_eq!(edges, expected, "enumeration n={n} l={ell}");
        assert_eq!(witness.edge_count(), edges);
        match witness.girth() {
            Girth::Finite(g) => assert!(g > ell),
            Girth::Acyclic => {}
        }
    }
}

#[test]
fn window_edges_are_rejected() {
    assert!(matches!(
        abajo_dianez_ex(9, 4),
        Err(BoundError::OutOfWindow { lo: 5, hi: 8, .. })
    ));
    assert!(abajo_dianez_ex(12, 6).is_ok());
    assert!(abajo_dianez_ex(13, 6).is_err());
}
