//! Character identities behind the Grassmannian syzygies.

use serde::Serialize;

use super::poly::{elementary_poly, schur_poly, Poly};
use super::{GradedCharacter, SymFunc};
use crate::error::Result;
use crate::partitions::{FrobeniusForm, Partition};
use crate::Q;

#[derive(Clone, Debug, Serialize)]
pub struct CharIdentityReport {
    pub name: String,
    pub pass: bool,
    pub checked_terms: usize,
    pub mismatches: Vec<String>,
}

/// Strictly decreasing sequences from `hi` down to at least `lo`.
fn decreasing_subsets(hi: usize, lo: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for x in (lo..=hi).rev() {
        let ext: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.last().is_none_or(|&l| l > x))
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(ext);
    }
    out
}

/// Σ (-1)^{p+Σi} s_{(i₁+3,…|i₁,…)} = Π_{i≤j}(1 - x_i x_j) · Σ_j (e_j² - e_{j+1}e_{j-1}),
/// both sides expanded as polynomials in `n_vars` variables up to degree `cutoff`.
pub fn verify_littlewood_identity(n_vars: usize, cutoff: usize) -> Result<CharIdentityReport> {
    if n_vars == 0 || n_vars > 4 {
        return Err(crate::Error::BadParams("n_vars must lie in 1..=4".into()));
    }
    let deg = cutoff as u32;
    let mut lhs = Poly::zero(n_vars);
    let mut count = 0;
    for seq in decreasing_subsets(n_vars.saturating_sub(1), 0) {
        let w: usize = seq.iter().map(|i| 2 * i + 4).sum();
        if w > cutoff {
            continue;
        }
        let f = FrobeniusForm { arms: seq.iter().map(|i| i + 3).collect(), legs: seq.clone() };
        let lam = f.to_partition()?;
        let sign = (seq.len() + seq.iter().sum::<usize>()) % 2;
        let c = if sign == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
        lhs = lhs.add(&schur_poly(&lam, n_vars).scale(&c));
        count += 1;
    }
    let mut prod = Poly::one(n_vars);
    for i in 0..n_vars {
        for j in i..n_vars {
            let mut e = vec![0; n_vars];
            e[i] += 1;
            e[j] += 1;
            let factor = Poly::one(n_vars).sub(&Poly::monomial(e, Q::from_integer(1.into())));
            prod = prod.mul(&factor, deg);
        }
    }
    let e = |k: i64| -> Poly {
        if k < 0 || k as usize > n_vars {
            Poly::zero(n_vars)
        } else {
            elementary_poly(k as usize, n_vars)
        }
    };
    let mut second = Poly::zero(n_vars);
    for j in 0..=(n_vars as i64) {
        second = second.add(&e(j).mul(&e(j), deg)).sub(&e(j + 1).mul(&e(j - 1), deg));
    }
    let rhs = prod.mul(&second, deg);
    let diff = lhs.truncate(deg).sub(&rhs);
    let mismatches = diff.terms.iter().take(10).map(|(e, c)| format!("x^{e:?}: {c}")).collect();
    Ok(CharIdentityReport {
        name: format!("littlewood(n={n_vars}, degree<={cutoff})"),
        pass: diff.is_zero(),
        checked_terms: count,
        mismatches,
    })
}

/// χ_K = (Σ(-1)^k e_k∘e₂ t^k)·(Σ_j (h_j² - h_{j+1}h_{j-1}) t^j), restricted to
/// `n` rows, in internal degrees ≤ `cutoff` (the Schur weight is twice the degree).
pub fn grassmann_koszul_char(n: usize, cutoff: usize) -> Result<GradedCharacter> {
    if !(4..=7).contains(&n) {
        return Err(crate::Error::BadParams("N must lie in 4..=7".into()));
    }
    let e2 = SymFunc::elementary(2);
    let mut ext = GradedCharacter::zero();
    for k in 0..=cutoff {
        let f = SymFunc::elementary(k).plethysm(&e2, 2 * k)?.restrict_rows(n);
        ext.set(k, if k % 2 == 0 { f } else { f.scale(&-Q::from_integer(1.into())) });
    }
    let h = |j: i64| -> SymFunc {
        if j < 0 {
            SymFunc::zero()
        } else {
            SymFunc::complete(j as usize)
        }
    };
    let mut coord = GradedCharacter::zero();
    for j in 0..=(cutoff as i64) {
        let w = 2 * j as usize;
        let a = h(j).mul_bounded(&h(j), w, n).sub(&h(j + 1).mul_bounded(&h(j - 1), w, n));
        coord.set(j as usize, a.restrict_rows(n));
    }
    let mut out = GradedCharacter::zero();
    for a in 0..=cutoff {
        for b in 0..=(cutoff - a) {
            let x = ext.get(a);
            let y = coord.get(b);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            out.set(a + b, out.get(a + b).add(&x.mul_bounded(&y, 2 * (a + b), n)));
        }
    }
    Ok(out)
}

/// Σ (-1)^{Σi} s_{((i₁-1),…|(i₁+2),…)} t^{Σ(i+1)} over N-3 ≥ i₁ > … > i_p > 0.
pub fn gr_char_hook_sum(n: usize, cutoff: usize) -> Result<GradedCharacter> {
    let mut out = GradedCharacter::zero();
    if n < 4 {
        out.set(0, SymFunc::one());
        return Ok(out);
    }
    for seq in decreasing_subsets(n - 3, 1) {
        let q: usize = seq.iter().map(|i| i + 1).sum();
        if q > cutoff {
            continue;
        }
        let f = FrobeniusForm { arms: seq.iter().map(|i| i - 1).collect(), legs: seq.iter().map(|i| i + 2).collect() };
        let lam: Partition = f.to_partition()?;
        let sign = if seq.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
        let mut t = SymFunc::zero();
        t.add_term(lam, Q::from_integer(sign.into()));
        out.set(q, out.get(q).add(&t));
    }
    Ok(out)
}

/// Compares [`grassmann_koszul_char`] with [`gr_char_hook_sum`] degree by degree.
pub fn check_gr_char(n: usize, cutoff: usize) -> Result<CharIdentityReport> {
    let k = grassmann_koszul_char(n, cutoff)?;
    let h = gr_char_hook_sum(n, cutoff)?;
    let mut mismatches = Vec::new();
    for q in 0..=cutoff {
        if k.get(q) != h.get(q) {
            mismatches.push(format!("t^{q}: koszul {} vs hooks {}", k.get(q), h.get(q)));
        }
    }
    Ok(CharIdentityReport {
        name: format!("gr_char(N={n}, degree<={cutoff})"),
        pass: mismatches.is_empty(),
        checked_terms: h.degrees().map(|(_, f)| f.len()).sum(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn littlewood_small() {
        assert!(verify_littlewood_identity(1, 8).unwrap().pass);
        assert!(verify_littlewood_identity(2, 6).unwrap().pass);
    }

    #[test]
    fn gr_char_n4() {
        let k = grassmann_koszul_char(4, 4).unwrap();
        assert_eq!(k.get(0), SymFunc::one());
        assert_eq!(k.get(2), "-s[1,1,1,1]".parse().unwrap());
        for q in [1, 3, 4] {
            assert!(k.get(q).is_zero(), "degree {q}: {}", k.get(q));
        }
    }

    #[test]
    fn gr_char_n5_terms() {
        let h = gr_char_hook_sum(5, 6).unwrap();
        assert_eq!(h.get(2), "-s[1,1,1,1]".parse().unwrap());
        assert_eq!(h.get(3), "s[2,1,1,1,1]".parse().unwrap());
        assert_eq!(h.get(5), "-s[2,2,2,2,2]".parse().unwrap());
        assert!(check_gr_char(5, 6).unwrap().pass);
    }
}
