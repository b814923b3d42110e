//! Invariants checked exhaustively on small ranges or by random sampling.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use syzygy::homology::{betti_table, betti_table_of, build_koszul, tor_algebra, KoszulComplex};
use syzygy::hookalg::{compare_preorder, hooked_product, PreorderCmp};
use syzygy::liecoh::{perturb, perturbation_check, realize_lie, ChevalleyComplex, Retract};
use syzygy::linalg::{qvec_from_unsorted, QVec, SparseMat};
use syzygy::partitions::{dim_gl, enumerate_ssyt, partitions_of, Hook, HookFilling, HookedTableau, Partition};
use syzygy::quadalg::{algebra_dims, dual_dims, koszul_hilbert_check, lie_dims, super_pbw_series, Algebra, QuadraticPresentation};
use syzygy::rootsys::{bwb_cohomology, BwbResult, RootSystem};
use syzygy::symfunc::{lr_coefficient, lr_coefficient_pieri, SymFunc};
use syzygy::Q;

fn presets() -> Vec<QuadraticPresentation> {
    let mut v = Vec::new();
    for n in [4, 5, 6] {
        v.push(QuadraticPresentation::pluecker(n).unwrap());
    }
    for n in [3, 4, 5] {
        v.push(QuadraticPresentation::veronese(n).unwrap());
    }
    for n in [2, 3, 4] {
        v.push(QuadraticPresentation::most_singular(n).unwrap());
    }
    v
}

fn all_partitions(max_weight: usize) -> Vec<Partition> {
    (0..=max_weight).flat_map(partitions_of).collect()
}

// ---- partitions and symmetric functions ----

#[test]
fn dim_gl_counts_ssyt() {
    for lambda in all_partitions(6) {
        for k in 1..=5 {
            assert_eq!(dim_gl(&lambda, k), BigInt::from(enumerate_ssyt(&lambda, k).len()), "{lambda:?} k={k}");
        }
    }
}

#[test]
fn lr_enumeration_matches_pieri() {
    let parts = all_partitions(6);
    for mu in &parts {
        for nu in &parts {
            let n = mu.weight() + nu.weight();
            if n > 6 {
                continue;
            }
            for lambda in partitions_of(n) {
                let c = lr_coefficient(&lambda, mu, nu);
                assert_eq!(c as i64, lr_coefficient_pieri(&lambda, mu, nu), "{lambda:?} {mu:?} {nu:?}");
                assert_eq!(c, lr_coefficient(&lambda, nu, mu));
                assert_eq!(c, lr_coefficient(&lambda.transpose(), &mu.transpose(), &nu.transpose()));
            }
        }
    }
}

fn small_symfunc(max_weight: usize) -> impl Strategy<Value = SymFunc> {
    let parts = all_partitions(max_weight);
    prop::collection::vec((0..parts.len(), -3i64..=3), 1..4)
        .prop_map(move |ts| SymFunc::from_terms(ts.into_iter().map(|(i, c)| (parts[i].clone(), Q::from_integer(c.into())))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schur_product_ring_axioms(f in small_symfunc(4), g in small_symfunc(4), h in small_symfunc(4)) {
        let c = 12;
        prop_assert_eq!(f.mul(&g, c), g.mul(&f, c));
        prop_assert_eq!(f.mul(&g, c).mul(&h, c), f.mul(&g.mul(&h, c), c));
    }

    #[test]
    fn omega_is_an_involutive_ring_map(f in small_symfunc(3), g in small_symfunc(3)) {
        prop_assert_eq!(f.omega().omega(), f.clone());
        prop_assert_eq!(f.mul(&g, 6).omega(), f.omega().mul(&g.omega(), 6));
    }

    #[test]
    fn plethysm_is_additive_and_multiplicative(f in small_symfunc(2), g in small_symfunc(2), h in small_symfunc(2)) {
        // keep the composite weight ≤ 5·2
        let h = h.filter(|p| !p.is_empty());
        prop_assume!(!h.is_empty());
        let c = 10;
        let l = f.add(&g).plethysm(&h, c).unwrap();
        prop_assert_eq!(l, f.plethysm(&h, c).unwrap().add(&g.plethysm(&h, c).unwrap()));
        let m = f.mul(&g, c).plethysm(&h, c).unwrap();
        prop_assert_eq!(m, f.plethysm(&h, c).unwrap().mul(&g.plethysm(&h, c).unwrap(), c));
    }

    #[test]
    fn specialization_at_ones(f in small_symfunc(5), k in 1usize..5) {
        let expected: Q = f.terms().iter().map(|(p, c)| c * Q::from_integer(dim_gl(p, k))).sum();
        prop_assert_eq!(f.dimension(k), expected);
    }
}

// ---- root systems ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The BWB degree is the number of positive roots on which μ + ρ′ is
    /// positive; singular μ + ρ′ gives nothing.
    #[test]
    fn bwb_degree_counts_positive_roots(sys in prop::sample::select(vec!["A1", "A2", "A3", "A2xA1", "D4"]), coords in prop::collection::vec(-4i64..=4, 4)) {
        let rs: RootSystem = sys.parse().unwrap();
        let mu = rs.weight(&coords[..rs.rank()]).unwrap();
        let x = mu.sub(rs.rho());
        let pairings: Vec<Q> = rs.positive_roots().iter().map(|a| x.dot(a)).collect();
        match bwb_cohomology(&rs, &mu).unwrap() {
            BwbResult::Zero => prop_assert!(pairings.iter().any(|p| p.is_zero())),
            BwbResult::NonZero { degree, .. } => {
                prop_assert!(pairings.iter().all(|p| !p.is_zero()));
                prop_assert_eq!(degree, pairings.iter().filter(|p| **p > Q::zero()).count());
            }
        }
    }

    #[test]
    fn lowest_weight_chamber_has_sections(sys in prop::sample::select(vec!["A2", "A4", "D5", "A2xA1"]), i in 0usize..5, m in 0i64..4) {
        let rs: RootSystem = sys.parse().unwrap();
        let mut c = vec![0; rs.rank()];
        c[i % rs.rank()] = 1;
        let lambda = rs.weight(&c).unwrap();
        let mu = lambda.scale(&Q::from_integer((-m).into()));
        match bwb_cohomology(&rs, &mu).unwrap() {
            BwbResult::NonZero { degree, lowest, .. } => {
                prop_assert_eq!(degree, 0);
                prop_assert_eq!(lowest, mu);
            }
            BwbResult::Zero => prop_assert!(false, "no sections"),
        }
    }
}

// ---- quadratic algebras and Koszul complexes ----

#[test]
fn hilbert_identity_to_degree_six() {
    for p in presets() {
        let r = koszul_hilbert_check(&p, 6).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn most_singular_is_trivial_beyond_degree_one() {
    for n in 2..=6 {
        let d = algebra_dims(&QuadraticPresentation::most_singular(n).unwrap(), 5).unwrap().dims;
        assert_eq!(d, [vec![1, n], vec![0; 4]].concat());
    }
}

#[test]
fn lie_dims_reexpand_to_dual_dims() {
    for p in presets() {
        let cutoff = if p.n_gens > 10 { 4 } else { 6 };
        let dual = dual_dims(&p, cutoff).unwrap().dims;
        let series = super_pbw_series(&lie_dims(&p, cutoff).unwrap(), cutoff);
        assert_eq!(series, dual.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>(), "{}", p.name);
    }
}

#[test]
fn koszul_differential_squares_to_zero() {
    for p in presets() {
        let kc = build_koszul(&p);
        for q in 0..=5 {
            assert!(kc.check_d_squared(q).unwrap(), "{} q={q}", p.name);
        }
    }
}

#[test]
fn betti_tables_are_minimal_and_order_independent() {
    for p in presets() {
        let q = 4;
        let t = betti_table(&p, q).unwrap();
        for &(pp, qq) in t.entries.keys() {
            assert!(pp == 0 || qq > pp, "{} has ({pp},{qq})", p.name);
        }
        let rev = KoszulComplex::new(Arc::new(Algebra::with_reversed_order(p.clone())));
        assert_eq!(betti_table_of(&rev, q).unwrap().entries, t.entries, "{}", p.name);
        if p.symmetric {
            let mut plain = p.clone();
            plain.symmetric = false;
            assert_eq!(betti_table(&plain, q).unwrap().entries, t.entries, "{} unreduced", p.name);
        }
    }
}

#[test]
fn tor_product_is_associative_and_graded_commutative() {
    let tor = tor_algebra(&QuadraticPresentation::pluecker(5).unwrap(), 5).unwrap();
    let keys: Vec<(usize, usize)> = tor.classes.keys().copied().collect();
    let basis = |&(p, q): &(usize, usize)| (0..tor.dim(p, q)).map(move |i| (p, q, i));
    let expand = |(p, q): (usize, usize), v: &QVec, b: (usize, usize, usize)| -> QVec {
        let mut acc = Vec::new();
        for (i, c) in v {
            acc.extend(tor.mul((p, q, *i), b).unwrap().into_iter().map(|(k, d)| (k, d * c)));
        }
        qvec_from_unsorted(acc)
    };
    for a in &keys {
        for b in &keys {
            if a.1 + b.1 > 5 {
                continue;
            }
            for x in basis(a) {
                for y in basis(b) {
                    let xy = tor.mul(x, y).unwrap();
                    let yx = tor.mul(y, x).unwrap();
                    let sign = if a.0 * b.0 % 2 == 1 { -Q::one() } else { Q::one() };
                    assert_eq!(xy, yx.iter().map(|(i, c)| (*i, c * &sign)).collect::<QVec>());
                    for c in &keys {
                        if a.1 + b.1 + c.1 > 5 {
                            continue;
                        }
                        for z in basis(c) {
                            let left = expand((a.0 + b.0, a.1 + b.1), &xy, z);
                            let yz = tor.mul(y, z).unwrap();
                            let mut acc = Vec::new();
                            for (i, cf) in &yz {
                                acc.extend(tor.mul(x, (b.0 + c.0, b.1 + c.1, *i)).unwrap().into_iter().map(|(k, d)| (k, d * cf)));
                            }
                            assert_eq!(left, qvec_from_unsorted(acc));
                        }
                    }
                }
            }
        }
    }
}

// ---- Lie superalgebras, Chevalley complexes, perturbation ----

#[test]
fn super_jacobi_and_antisymmetry() {
    for (p, cutoff) in [(QuadraticPresentation::pluecker(5).unwrap(), 5), (QuadraticPresentation::veronese(4).unwrap(), 5), (QuadraticPresentation::most_singular(3).unwrap(), 5)] {
        let lie = realize_lie(&p, cutoff).unwrap();
        assert!(lie.check_jacobi().unwrap() > 0);
        let n = lie.elems.len();
        for x in 0..n {
            for y in 0..n {
                if lie.elems[x].deg + lie.elems[y].deg > cutoff {
                    continue;
                }
                let sign = if lie.elems[x].odd() && lie.elems[y].odd() { Q::one() } else { -Q::one() };
                let yx: QVec = lie.bracket(y, x).unwrap().into_iter().map(|(i, c)| (i, c * &sign)).collect();
                assert_eq!(lie.bracket(x, y).unwrap(), yx, "{} ({x},{y})", p.name);
            }
        }
    }
}

#[test]
fn chevalley_differential_squares_to_zero() {
    for (p, cutoff) in [(QuadraticPresentation::pluecker(5).unwrap(), 5), (QuadraticPresentation::veronese(4).unwrap(), 5), (QuadraticPresentation::most_singular(3).unwrap(), 5)] {
        let lie = realize_lie(&p, cutoff).unwrap();
        for min_deg in [1, 2] {
            let cc = ChevalleyComplex::new(&lie, min_deg);
            for q in 0..=cutoff {
                assert!(cc.check_d_squared(q).unwrap(), "{} q={q} min_deg={min_deg}", p.name);
            }
        }
    }
}

#[test]
fn perturbation_on_presets() {
    for (p, q) in [(QuadraticPresentation::pluecker(5).unwrap(), 4), (QuadraticPresentation::veronese(4).unwrap(), 4), (QuadraticPresentation::most_singular(3).unwrap(), 4)] {
        let r = perturbation_check(&p, q, 64).unwrap();
        assert!(r.lemma_holds && r.pass, "{r:?}");
    }
}

fn unitriangular_inverse(n: &SparseMat) -> SparseMat {
    // (1 + N)^{-1} = Σ (-N)^k for nilpotent N
    let size = n.ncols;
    let mut inv = SparseMat::identity(size);
    let mut pw = SparseMat::identity(size);
    let neg = n.scale(&-Q::one());
    loop {
        pw = pw.mul(&neg);
        if pw.is_zero() {
            return inv;
        }
        inv = inv.add(&pw);
    }
}

/// A filtered complex D = h·d·h⁻¹, where d = g·d₀·g⁻¹ preserves the levels
/// and h − 1 strictly raises them, so δ = D − d is a small perturbation.
fn filtered_complex() -> impl Strategy<Value = (SparseMat, SparseMat)> {
    (prop::collection::vec(2usize..5, 2..4), any::<u64>()).prop_map(|(sizes, seed)| {
        let mut rng = seed;
        let mut next = move |m: i64| {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((rng >> 33) % (2 * m as u64 + 1)) as i64 - m
        };
        let n: usize = sizes.iter().sum();
        let level: Vec<usize> = sizes.iter().enumerate().flat_map(|(l, &s)| std::iter::repeat_n(l, s)).collect();
        let start: Vec<usize> = sizes.iter().scan(0, |a, &s| { let r = *a; *a += s; Some(r) }).collect();
        let mut d0 = Vec::new();
        for (l, &s) in sizes.iter().enumerate() {
            // pairs (a → a+1) inside the level
            let mut a = 0;
            while a + 1 < s {
                if next(1) != 0 {
                    let c = loop { let c = next(3); if c != 0 { break c; } };
                    d0.push((start[l] + a + 1, start[l] + a, Q::from_integer(c.into())));
                    a += 2;
                } else {
                    a += 1;
                }
            }
        }
        let d0 = SparseMat::from_triplets(n, n, d0);
        let mut g = Vec::new();
        let mut h = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if level[i] == level[j] && i > j {
                    g.push((i, j, Q::from_integer(next(2).into())));
                }
                if level[i] > level[j] {
                    h.push((i, j, Q::from_integer(next(2).into())));
                }
            }
        }
        let g = SparseMat::from_triplets(n, n, g);
        let h = SparseMat::from_triplets(n, n, h);
        let one = SparseMat::identity(n);
        let d = one.add(&g).mul(&d0).mul(&unitriangular_inverse(&g));
        let big = one.add(&h).mul(&d).mul(&unitriangular_inverse(&h));
        (d.clone(), big.sub(&d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn perturbation_lemma_identities((d, delta) in filtered_complex()) {
        prop_assert!(d.mul(&d).is_zero());
        let r = Retract::harmonic(&d).unwrap();
        prop_assert!(r.check(&d));
        let p = perturb(&d, &delta, &r, 16).unwrap();
        let checks = p.check(&d, &delta);
        prop_assert!(checks.all(), "{:?}", checks);
    }
}

// ---- hook algebras ----

fn hook_fillings(h: Hook, k: usize) -> Vec<HookFilling> {
    enumerate_ssyt(&h.partition(), k).iter().map(HookFilling::from_tableau).collect()
}

fn all_h_tableaux(hooks: &[Hook], k: usize) -> Vec<HookedTableau> {
    let mut out = vec![Vec::new()];
    for &h in hooks {
        let fs = hook_fillings(h, k);
        out = out.into_iter().flat_map(|pre: Vec<HookFilling>| fs.iter().map(move |f| [pre.clone(), vec![f.clone()]].concat())).collect();
    }
    out.into_iter().map(|fs| HookedTableau::new(hooks.to_vec(), fs).unwrap()).collect()
}

fn le(c: PreorderCmp) -> bool {
    c != PreorderCmp::Greater
}

#[test]
fn preorder_is_a_total_preorder() {
    let shapes: Vec<(Vec<Hook>, usize)> = vec![
        (vec![Hook::new(1, 1, 0)], 4),
        (vec![Hook::new(2, 1, 1)], 4),
        (vec![Hook::new(1, 1, 0), Hook::new(0, 0, 0)], 4),
        (vec![Hook::new(2, 1, 1), Hook::new(0, 0, 0)], 3),
        (vec![Hook::new(1, 2, 1), Hook::new(0, 1, 0)], 4),
    ];
    for (hooks, k) in shapes {
        assert!(hooks.iter().map(|h| h.weight()).sum::<usize>() <= 8);
        let ts = all_h_tableaux(&hooks, k);
        let n = ts.len();
        let cmp: Vec<Vec<PreorderCmp>> = ts.iter().map(|s| ts.iter().map(|t| compare_preorder(s, t).unwrap()).collect()).collect();
        for a in 0..n {
            assert_eq!(cmp[a][a], PreorderCmp::Equivalent);
            for b in 0..n {
                let flipped = match cmp[b][a] {
                    PreorderCmp::Less => PreorderCmp::Greater,
                    PreorderCmp::Greater => PreorderCmp::Less,
                    PreorderCmp::Equivalent => PreorderCmp::Equivalent,
                };
                assert_eq!(cmp[a][b], flipped);
                if !le(cmp[a][b]) {
                    continue;
                }
                for c in 0..n {
                    if le(cmp[b][c]) {
                        assert!(le(cmp[a][c]), "{:?} ≼ {:?} ≼ {:?}", ts[a], ts[b], ts[c]);
                    }
                }
            }
        }
    }
}

#[test]
fn preorder_is_multiplicative() {
    let k = 3;
    let r_hooks = [Hook::new(2, 2, 1), Hook::new(3, 2, 0)];
    let st_hooks = vec![Hook::new(1, 1, 0)];
    let st = all_h_tableaux(&st_hooks, k);
    let mut checked = 0;
    for rh in r_hooks {
        for r in all_h_tableaux(&[rh], k) {
            for s in &st {
                for t in &st {
                    if !le(compare_preorder(s, t).unwrap()) {
                        continue;
                    }
                    let (Some((_, rs)), Some((_, rt))) = (hooked_product(&r, s).unwrap(), hooked_product(&r, t).unwrap()) else {
                        continue;
                    };
                    assert!(le(compare_preorder(&rs, &rt).unwrap()), "{r:?} {s:?} {t:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn products_with_a_shared_hook_vanish() {
    let k = 3;
    let h = Hook::new(1, 1, 0);
    let ts = all_h_tableaux(&[h], k);
    for s in &ts {
        for t in &ts {
            assert!(hooked_product(s, t).unwrap().is_none());
        }
    }
    let g = Hook::new(0, 0, 0);
    for s in &ts {
        for t in all_h_tableaux(&[g], k) {
            let (sign, st) = hooked_product(s, &t).unwrap().expect("distinct hooks multiply");
            assert!(sign == 1 || sign == -1);
            assert_eq!(st.hooks.len(), 2);
            assert_eq!(st.shape().diagonal(), 2);
        }
    }
}
