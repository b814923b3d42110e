//! Acceptance suite: one PASS/FAIL line per criterion. Runs on a single
//! worker thread so the timings are single-threaded figures.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use syzygy::homology::{betti_table, build_koszul, duality_check, frobenius_pairing, tor_algebra, trace};
use syzygy::hookalg::{cross_check_gr2n, gr2n_hooks, verify_quadratic};
use syzygy::liecoh::{check_theorem, perturbation_check, realize_lie, ChevalleyComplex};
use syzygy::partitions::{dim_gl, enumerate_ssyt, partitions_of, Partition};
use syzygy::quadalg::{koszul_hilbert_check, QuadraticPresentation};
use syzygy::rootsys::{check_hvprop, subcanonical_index, RootSystem};
use syzygy::symfunc::{check_gr_char, lr_coefficient, lr_coefficient_pieri, verify_littlewood_identity};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn table(entries: &[((usize, usize), usize)]) -> BTreeMap<(usize, usize), usize> {
    entries.iter().copied().collect()
}

fn c1() -> Outcome {
    let b = betti_table(&QuadraticPresentation::pluecker(5).map_err(e)?, 5).map_err(e)?;
    let want = table(&[((0, 0), 1), ((1, 2), 5), ((2, 3), 5), ((3, 5), 1)]);
    ensure(b.entries == want, format!("got {:?}", b.entries))?;
    Ok(format!("{:?}", b.entries))
}

fn c2() -> Outcome {
    let mut out = Vec::new();
    for n in 3..=5 {
        let t0 = Instant::now();
        let b = betti_table(&QuadraticPresentation::veronese(n).map_err(e)?, n).map_err(e)?;
        let mut want = table(&[((0, 0), 1)]);
        for p in 1..n {
            want.insert((p, p + 1), p * binom(n, p + 1));
        }
        ensure(b.entries == want, format!("n={n}: got {:?}, want {want:?}", b.entries))?;
        ensure(t0.elapsed() < Duration::from_secs(30), format!("n={n} took {:?}", t0.elapsed()))?;
        out.push(format!("n={n} ok"));
    }
    Ok(out.join(", "))
}

fn c3() -> Outcome {
    let mut out = Vec::new();
    for n in 2..=4 {
        let t0 = Instant::now();
        let b = betti_table(&QuadraticPresentation::most_singular(n).map_err(e)?, n + 1).map_err(e)?;
        let mut want = table(&[((0, 0), 1)]);
        for p in 1..=n {
            // closed form for dim_gl([2,1^{p-1}], n)
            let d = p * binom(n + 1, p + 1);
            let shape = Partition::new([vec![2], vec![1; p - 1]].concat()).map_err(e)?;
            ensure(dim_gl(&shape, n) == BigInt::from(d), format!("dim_gl({shape:?},{n}) != {d}"))?;
            want.insert((p, p + 1), d);
        }
        ensure(b.entries == want, format!("n={n}: got {:?}, want {want:?}", b.entries))?;
        ensure(t0.elapsed() < Duration::from_secs(30), format!("n={n} took {:?}", t0.elapsed()))?;
        out.push(format!("n={n} ok"));
    }
    Ok(out.join(", "))
}

fn c4() -> Outcome {
    let mut cases = vec![(QuadraticPresentation::pluecker(5).map_err(e)?, 5)];
    for n in 3..=5 {
        cases.push((QuadraticPresentation::veronese(n).map_err(e)?, n));
    }
    for n in 2..=4 {
        cases.push((QuadraticPresentation::most_singular(n).map_err(e)?, n + 1));
    }
    let mut names = Vec::new();
    for (p, q) in cases {
        let r = check_theorem(&p, q).map_err(e)?;
        ensure(r.pass, format!("{} q<={q}: koszul {:?} vs chevalley {:?}", r.preset, r.koszul, r.chevalley))?;
        names.push(format!("{}@{q}", r.preset));
    }
    Ok(names.join(" "))
}

fn c5() -> Outcome {
    let p = QuadraticPresentation::pluecker(5).map_err(e)?;
    let b = betti_table(&p, 5).map_err(e)?;
    let d = duality_check(&b, Some((9, 6, 5))).map_err(e)?;
    ensure(d.pass, format!("duality {d:?}"))?;
    for (&(pp, k), &v) in &b.entries {
        ensure(b.get(3 - pp, 5 - k) == v, format!("R_{pp},{k} vs R_{},{}", 3 - pp, 5 - k))?;
    }
    let t = tor_algebra(&p, 5).map_err(e)?;
    let f = frobenius_pairing(&t, 9, 6, 5).map_err(e)?;
    ensure(f.dim == 12 && f.rank == 12, format!("gram dim {} rank {}", f.dim, f.rank))?;
    for (&(pp, q), cls) in &t.classes {
        for i in 0..cls.len() {
            let tr = trace(&t, (3, 5), pp, q, i);
            ensure(tr.is_zero() != ((pp, q) == (3, 5)), format!("trace on ({pp},{q}) class {i} = {tr}"))?;
        }
    }
    Ok("duality, Gram rank 12, trace supported on (3,5)".into())
}

fn c6() -> Outcome {
    for n in 1..=3 {
        let r = verify_littlewood_identity(n, 8).map_err(e)?;
        ensure(r.pass, format!("littlewood n={n}: {:?}", r.mismatches))?;
    }
    let mut terms = 0;
    for n in [5, 6] {
        let r = check_gr_char(n, 8).map_err(e)?;
        ensure(r.pass, format!("gr_char N={n}: {:?}", r.mismatches))?;
        terms += r.checked_terms;
    }
    Ok(format!("littlewood n<=3 deg<=8; gr_char N=5,6 ({terms} hook terms)"))
}

fn c7() -> Outcome {
    let idx = |sys: &str, c: &[i64]| -> Result<Option<u64>, String> {
        let rs: RootSystem = sys.parse().map_err(e)?;
        subcanonical_index(&rs, &rs.weight(c).map_err(e)?).map_err(e)
    };
    ensure(idx("A4", &[0, 1, 0, 0])? == Some(5), "A4 ω2")?;
    ensure(idx("A2xA1", &[3, 0, 2])? == Some(1), "A2xA1 3ω1'+2ω1''")?;
    ensure(idx("D5", &[0, 0, 0, 0, 1])? == Some(8), "D5 ω5")?;
    for m in 4..=6 {
        let mut c = vec![0; m];
        c[m - 1] = 1;
        ensure(idx(&format!("D{m}"), &c)? == Some(2 * (m as u64 - 1)), format!("D{m} ω{m}"))?;
    }
    ensure(idx("A4", &[0, 2, 0, 0])?.is_none(), "A4 2ω2 should not be subcanonical")?;
    Ok("5, 1, 8, 2(m-1) for m=4..6, none".into())
}

fn c8() -> Outcome {
    let mut out = Vec::new();
    for (sys, c, range) in [("A4", vec![0, 1, 0, 0], -8..=3), ("A1", vec![1], -3..=3)] {
        let rs: RootSystem = sys.parse().map_err(e)?;
        let r = check_hvprop(&rs, &rs.weight(&c).map_err(e)?, range).map_err(e)?;
        ensure(r.pass, format!("{sys}: {:?}", r.rows))?;
        out.push(format!("{sys} N={} d={}", r.index, r.top_degree));
    }
    Ok(out.join(", "))
}

fn c9() -> Outcome {
    for n in [5, 6] {
        let t0 = Instant::now();
        let r = cross_check_gr2n(n, 5).map_err(e)?;
        ensure(r.pass && r.euler_ok, format!("cross_check N={n}: {:?}", r.rows))?;
        ensure(t0.elapsed() < Duration::from_secs(600), format!("N={n} took {:?}", t0.elapsed()))?;
    }
    for (n, s) in [(5, 2), (6, 3)] {
        let r = verify_quadratic(&gr2n_hooks(n).map_err(e)?, s).map_err(e)?;
        ensure(r.pass, format!("quadratic N={n} s<={s}: {:?}", r.rows))?;
    }
    Ok("cross-checks N=5,6 q<=5; quadratic N=5 s<=2, N=6 s<=3".into())
}

fn c10() -> Outcome {
    let mut presets = Vec::new();
    for n in 4..=6 {
        presets.push(QuadraticPresentation::pluecker(n).map_err(e)?);
    }
    for n in 3..=5 {
        presets.push(QuadraticPresentation::veronese(n).map_err(e)?);
    }
    for n in 2..=4 {
        presets.push(QuadraticPresentation::most_singular(n).map_err(e)?);
    }
    // d² = 0, Koszul side
    for p in &presets {
        let kc = build_koszul(p);
        for q in 0..=5 {
            ensure(kc.check_d_squared(q).map_err(e)?, format!("koszul d² on {} q={q}", p.name))?;
        }
    }
    // super-Jacobi and d² = 0 on Chevalley complexes; perturbation identities
    let mut triples = 0;
    for p in presets.iter().filter(|p| p.n_gens <= 10) {
        let lie = realize_lie(p, 5).map_err(e)?;
        triples += lie.check_jacobi().map_err(e)?;
        for min_deg in [1, 2] {
            let cc = ChevalleyComplex::new(&lie, min_deg);
            for q in 0..=5 {
                ensure(cc.check_d_squared(q).map_err(e)?, format!("chevalley d² on {} q={q}", p.name))?;
            }
        }
        let r = perturbation_check(p, 4, 64).map_err(e)?;
        ensure(r.lemma_holds && r.pass, format!("perturbation on {}", p.name))?;
    }
    for p in &presets {
        let r = koszul_hilbert_check(p, 6).map_err(e)?;
        ensure(r.pass, format!("hilbert on {}: {:?}", p.name, r.sums))?;
    }
    let parts: Vec<Partition> = (0..=6).flat_map(partitions_of).collect();
    let mut lr = 0;
    for mu in &parts {
        for nu in &parts {
            if mu.weight() + nu.weight() > 6 {
                continue;
            }
            for lambda in partitions_of(mu.weight() + nu.weight()) {
                ensure(lr_coefficient(&lambda, mu, nu) as i64 == lr_coefficient_pieri(&lambda, mu, nu), format!("LR {lambda:?} {mu:?} {nu:?}"))?;
                lr += 1;
            }
        }
    }
    for lambda in &parts {
        for k in 1..=5 {
            ensure(dim_gl(lambda, k) == BigInt::from(enumerate_ssyt(lambda, k).len()), format!("dim_gl {lambda:?} k={k}"))?;
        }
    }
    Ok(format!("{} presets, {triples} Jacobi triples, {lr} LR coefficients", presets.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Gr(2,5) Betti table", c1),
        ("Veronese curves n=3,4,5", c2),
        ("most singular algebra n=2,3,4", c3),
        ("Chevalley cohomology of L>=2 equals Betti tables", c4),
        ("Gr(2,5) duality and Frobenius structure", c5),
        ("character identities", c6),
        ("subcanonical indices", c7),
        ("BWB vanishing pattern", c8),
        ("hook-algebra cross-oracle", c9),
        ("property suites", c10),
    ];
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let r = pool.install(f);
        let dt = t0.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS criterion {}: {name} ({dt:.2}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({dt:.2}s) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
