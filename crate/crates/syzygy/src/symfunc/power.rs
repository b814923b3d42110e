//! Power-sum basis, Murnaghan–Nakayama characters and plethysm.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::SymFunc;
use crate::error::Result;
use crate::partitions::{partitions_of, Partition};
use crate::Q;

/// Q-linear combination of power-sum products p_ρ.
pub type PowerSum = BTreeMap<Partition, Q>;

fn char_memo() -> &'static Mutex<HashMap<(Partition, Partition), i64>> {
    static M: OnceLock<Mutex<HashMap<(Partition, Partition), i64>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Irreducible S_n character χ^λ at cycle type ρ (Murnaghan–Nakayama rule on beta-sets).
pub fn char_value(lambda: &Partition, rho: &Partition) -> i64 {
    if lambda.weight() != rho.weight() {
        return 0;
    }
    if rho.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(v) = char_memo().lock().expect("char memo").get(&key) {
        return *v;
    }
    let r = rho.row(0);
    let rest = Partition::from_sorted(rho.rows()[1..].to_vec());
    let l = lambda.len();
    let beta: Vec<usize> = (0..l).map(|i| lambda.row(i) + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let rows: Vec<usize> = nb.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * char_value(&Partition::from_sorted(rows), &rest);
    }
    char_memo().lock().expect("char memo").insert(key, total);
    total
}

/// z_ρ = Π i^{m_i} m_i!.
pub fn z_rho(rho: &Partition) -> Q {
    let mut z = num_bigint::BigInt::one();
    let mut i = 0;
    let rows = rho.rows();
    while i < rows.len() {
        let mut j = i;
        while j < rows.len() && rows[j] == rows[i] {
            j += 1;
        }
        for m in 1..=(j - i) {
            z *= rows[i] * m;
        }
        i = j;
    }
    Q::from_integer(z)
}

/// s_λ = Σ_ρ χ^λ(ρ)/z_ρ p_ρ.
pub fn to_power_sum(f: &SymFunc) -> PowerSum {
    let mut out = PowerSum::new();
    for (lam, c) in f.terms() {
        for rho in partitions_of(lam.weight()) {
            let x = char_value(lam, &rho);
            if x != 0 {
                *out.entry(rho.clone()).or_insert_with(Q::zero) += c * Q::from_integer(x.into()) / z_rho(&rho);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// p_ρ = Σ_λ χ^λ(ρ) s_λ.
pub fn from_power_sum(p: &PowerSum) -> SymFunc {
    let mut out = SymFunc::zero();
    let mut by_weight: BTreeMap<usize, Vec<(&Partition, &Q)>> = BTreeMap::new();
    for (rho, c) in p {
        by_weight.entry(rho.weight()).or_default().push((rho, c));
    }
    for (w, terms) in by_weight {
        for lam in partitions_of(w) {
            let mut coeff = Q::zero();
            for (rho, c) in &terms {
                let x = char_value(&lam, rho);
                if x != 0 {
                    coeff += *c * Q::from_integer(x.into());
                }
            }
            out.add_term(lam, coeff);
        }
    }
    out
}

pub(crate) fn ps_mul(a: &PowerSum, b: &PowerSum, cutoff: usize) -> PowerSum {
    let mut out = PowerSum::new();
    for (x, cx) in a {
        for (y, cy) in b {
            if x.weight() + y.weight() > cutoff {
                continue;
            }
            let mut rows: Vec<usize> = x.rows().iter().chain(y.rows()).copied().collect();
            rows.sort_unstable_by(|a, b| b.cmp(a));
            *out.entry(Partition::from_sorted(rows)).or_insert_with(Q::zero) += cx * cy;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// p_k ∘ g: every p_ρ becomes p_{kρ}; constants stay constants.
pub(crate) fn ps_adams(g: &PowerSum, k: usize) -> PowerSum {
    g.iter()
        .map(|(rho, c)| (Partition::from_sorted(rho.rows().iter().map(|r| r * k).collect()), c.clone()))
        .collect()
}

/// f∘g computed in the power-sum basis, where p_k∘g = g(x^k) and p_k is a ring map.
///
/// Both arguments are finite, so a constant term in `g` is allowed.
pub fn plethysm(f: &SymFunc, g: &SymFunc, cutoff: usize) -> Result<SymFunc> {
    let gp = to_power_sum(g);
    let fp = to_power_sum(f);
    let mut adams: HashMap<usize, PowerSum> = HashMap::new();
    let mut out = PowerSum::new();
    for (rho, c) in &fp {
        let mut prod = PowerSum::new();
        prod.insert(Partition::empty(), c.clone());
        for &k in rho.rows() {
            let a = adams.entry(k).or_insert_with(|| ps_adams(&gp, k)).clone();
            prod = ps_mul(&prod, &a, cutoff);
            if prod.is_empty() {
                break;
            }
        }
        for (p, v) in prod {
            *out.entry(p).or_insert_with(Q::zero) += v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(from_power_sum(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_table_s3() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(char_value(&p("[2,1]"), &p("[1,1,1]")), 2);
        assert_eq!(char_value(&p("[2,1]"), &p("[2,1]")), 0);
        assert_eq!(char_value(&p("[2,1]"), &p("[3]")), -1);
        assert_eq!(char_value(&p("[1,1,1]"), &p("[2,1]")), -1);
    }

    #[test]
    fn power_sum_round_trip() {
        for w in 0..=6 {
            for lam in partitions_of(w) {
                let f = SymFunc::schur(lam);
                assert_eq!(from_power_sum(&to_power_sum(&f)), f);
            }
        }
    }
}
