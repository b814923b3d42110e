use syzygy::hookalg::{cross_check_gr2n, gr2n_hooks, straighten, verify_quadratic, HookAlgebraSpec, StraightenMethod};
use syzygy::partitions::{enumerate_ssyt, Hook, HookFilling, HookedTableau};

#[test]
fn gr2n_cross_checks() {
    let r4 = cross_check_gr2n(4, 4).unwrap();
    assert!(r4.pass, "{r4:?}");
    assert!(r4.rows.iter().any(|r| (r.p, r.q, r.betti) == (1, 2, 1)));
    for n in [5, 6] {
        let r = cross_check_gr2n(n, 5).unwrap();
        assert!(r.pass && r.euler_ok, "{r:?}");
    }
}

#[test]
fn gr2n_quadratic() {
    let r5 = verify_quadratic(&gr2n_hooks(5).unwrap(), 2).unwrap();
    assert!(r5.pass, "{r5:?}");
    let r6 = verify_quadratic(&gr2n_hooks(6).unwrap(), 3).unwrap();
    assert!(r6.pass, "{r6:?}");
    assert_eq!(r6.rows.len(), 2);
}

fn hook_fillings(h: Hook, k: usize) -> Vec<HookFilling> {
    enumerate_ssyt(&h.partition(), k).iter().map(HookFilling::from_tableau).collect()
}

/// Every invalid h-tableau of a two-hook shape gets a certified h_T whose
/// other terms are strictly smaller.
#[test]
fn straighten_exhaustive_pairs() {
    for (hooks, k) in [(vec![Hook::new(1, 1, 0), Hook::new(0, 0, 0)], 3), (vec![Hook::new(2, 2, 1), Hook::new(0, 1, 0)], 3), (vec![Hook::new(1, 3, 0), Hook::new(0, 2, 1)], 4)] {
        let spec = HookAlgebraSpec::new(hooks.clone(), k, None).unwrap();
        let mut seen = 0;
        let mut recipe = 0;
        for f1 in hook_fillings(hooks[0], k) {
            for f2 in hook_fillings(hooks[1], k) {
                let t = HookedTableau::new(hooks.clone(), vec![f1.clone(), f2.clone()]).unwrap();
                if t.is_valid_tableau() {
                    continue;
                }
                let r = straighten(&t, &spec).unwrap();
                assert!(r.in_kernel && r.leading_ok, "{t:?}: {r:?}");
                seen += 1;
                recipe += usize::from(r.method == StraightenMethod::Recipe);
            }
        }
        assert!(seen > 0);
        eprintln!("{hooks:?}: {seen} invalid h-tableaux, {recipe} certified by the recipe itself");
    }
}
