use std::collections::BTreeSet;

use polyia::lattice::{canonicalize, classify, internal_edges, neighbors, perimeter, Cell, Orientation};
use proptest::prelude::*;

fn cell_strategy() -> impl Strategy<Value = Cell> {
    (-50i32..50, -50i32..50, prop::bool::ANY)
        .prop_map(|(x, y, up)| Cell::new(x, y, if up { Orientation::U } else { Orientation::D }))
}

/// Connected cell set grown from a seed by repeatedly adding a neighbour
/// chosen by the supplied indices.
fn animal_strategy() -> impl Strategy<Value = Vec<Cell>> {
    (cell_strategy(), prop::collection::vec((0usize..64, 0usize..3), 0..14)).prop_map(|(seed, steps)| {
        let mut set = BTreeSet::from([seed]);
        for (i, j) in steps {
            let base = *set.iter().nth(i % set.len()).unwrap();
            set.insert(neighbors(base)[j]);
        }
        set.into_iter().collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn neighbours_are_symmetric_and_distinct(c in cell_strategy()) {
        let ns = neighbors(c);
        for n in ns {
            prop_assert_ne!(n.s, c.s);
            prop_assert!(neighbors(n).contains(&c));
        }
        prop_assert_ne!(ns[0], ns[1]);
        prop_assert_ne!(ns[1], ns[2]);
        prop_assert_ne!(ns[0], ns[2]);
    }

    #[test]
    fn canonical_form_ignores_translation(cells in animal_strategy(), dx in -20i32..20, dy in -20i32..20) {
        let moved: Vec<Cell> = cells.iter().map(|c| c.translate(dx, dy)).collect();
        let a = canonicalize(&cells).unwrap();
        let b = canonicalize(&moved).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(classify(&a), classify(&b));
    }

    #[test]
    fn perimeter_identities(cells in animal_strategy()) {
        let c = cells.len();
        let p = perimeter(&cells).unwrap();
        prop_assert_eq!(p, 3 * c - 2 * internal_edges(&cells));
        prop_assert_eq!(p % 2, c % 2);
        prop_assert!(p <= c + 2);
        prop_assert!(p * p >= 6 * c);
    }

    #[test]
    fn class_flags_are_consistent(cells in animal_strategy()) {
        let f = classify(&canonicalize(&cells).unwrap());
        prop_assert_eq!(f.convex, f.column_convex && f.row_convex);
        prop_assert_eq!(f.bu_monotone, f.u_monotone && f.b_monotone);
        prop_assert!(!f.baryiamond || f.column_convex);
        prop_assert!(!f.u_monotone || f.convex);
        prop_assert!(!f.b_monotone || f.convex);
    }
}

#[test]
fn disconnected_sets_are_rejected() {
    assert!(canonicalize(&[Cell::d(0, 0), Cell::d(5, 5)]).is_err());
    assert!(perimeter(&[]).is_err());
}

#[test]
fn cells_serialize_as_triples() {
    let json = serde_json::to_string(&Cell::u(2, -1)).unwrap();
    assert_eq!(json, r#"[2,-1,"U"]"#);
    let back: Cell = serde_json::from_str(&json).unwrap();
    assert_eq!(back, Cell::u(2, -1));
}
