use std::collections::BTreeMap;

use syzygy::homology::{betti_table, duality_check, frobenius_pairing, tor_algebra};
use syzygy::quadalg::QuadraticPresentation;

#[test]
fn grassmannian_2_5() {
    let p = QuadraticPresentation::pluecker(5).unwrap();
    let b = betti_table(&p, 5).unwrap();
    assert_eq!(b.entries, BTreeMap::from([((0, 0), 1), ((1, 2), 5), ((2, 3), 5), ((3, 5), 1)]));
    assert!(duality_check(&b, Some((9, 6, 5))).unwrap().pass);
}

#[test]
fn grassmannian_2_5_frobenius() {
    let p = QuadraticPresentation::pluecker(5).unwrap();
    let t = tor_algebra(&p, 5).unwrap();
    assert_eq!(t.betti(), betti_table(&p, 5).unwrap());
    let f = frobenius_pairing(&t, 9, 6, 5).unwrap();
    assert_eq!((f.dim, f.rank), (12, 12));
    assert!(f.symmetric && f.expected_symmetric);
    assert_eq!(t.mul_matrix((1, 2), (2, 3)).unwrap().rank(), 1);
    // s-commutativity on R_{1,2} × R_{2,3}
    for i in 0..5 {
        for j in 0..5 {
            assert_eq!(t.mul((1, 2, i), (2, 3, j)).unwrap(), t.mul((2, 3, j), (1, 2, i)).unwrap());
        }
    }
}
