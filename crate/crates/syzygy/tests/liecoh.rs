use syzygy::homology::TorAlgebra;
use syzygy::liecoh::{check_theorem, compare_products, perturbation_check, realize_lie, CohomologyAlgebra};
use syzygy::quadalg::QuadraticPresentation;

fn pres(s: &str) -> QuadraticPresentation {
    QuadraticPresentation::from_preset(s).unwrap()
}

#[test]
fn chevalley_matches_koszul_on_presets() {
    let cases = [
        ("pluecker:5", 5),
        ("veronese:3", 3),
        ("veronese:4", 4),
        ("veronese:5", 5),
        ("most_singular:2", 3),
        ("most_singular:3", 4),
        ("most_singular:4", 5),
    ];
    for (s, q) in cases {
        let r = check_theorem(&pres(s), q).unwrap();
        assert!(r.pass, "{s}: {r:?}");
    }
}

#[test]
fn products_match_tor_algebra() {
    let p = pres("pluecker:5");
    let tor = TorAlgebra::new(&p, 5).unwrap();
    let lie = realize_lie(&p, 5).unwrap();
    let coh = CohomologyAlgebra::new(&lie, 5).unwrap();
    let cmp = compare_products(&tor, &coh).unwrap();
    assert!(cmp.pass, "{:?}", cmp.rows);
    // R_{1,2} × R_{2,3} → R_{3,5} is the nonzero top pairing
    assert!(cmp.rows.iter().any(|r| r.0 == (1, 2) && r.1 == (2, 3) && r.2 == 1));
}

#[test]
fn perturbation_recovers_the_algebra() {
    for (s, q) in [("pluecker:5", 4), ("veronese:3", 3), ("most_singular:2", 3)] {
        let r = perturbation_check(&pres(s), q, 64).unwrap();
        assert!(r.lemma_holds, "{s}");
        assert!(r.pass, "{s}: {:?} vs {:?}", r.transported, r.algebra_dims);
    }
}
