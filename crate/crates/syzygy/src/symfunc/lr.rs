//! Littlewood–Richardson coefficients.
//!
//! The main routine builds LR tableaux letter by letter as horizontal strips,
//! pruning with the lattice condition; the Pieri-based routine is an
//! independent implementation used as an oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::partitions::Partition;

type ProductKey = (Partition, Partition, usize);
type Product = Arc<Vec<(Partition, u64)>>;

fn memo() -> &'static Mutex<HashMap<ProductKey, Product>> {
    static M: OnceLock<Mutex<HashMap<ProductKey, Product>>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// s_μ·s_ν = Σ c^λ_{μν} s_λ, restricted to λ with at most `max_rows` rows.
pub(crate) fn lr_product(mu: &Partition, nu: &Partition, max_rows: usize) -> Product {
    // the product is symmetric; put the longer factor first to shorten the search
    let (a, b) = if (mu.len(), mu) >= (nu.len(), nu) { (mu, nu) } else { (nu, mu) };
    let key = (a.clone(), b.clone(), max_rows.min(a.len() + b.len()));
    if let Some(p) = memo().lock().expect("lr memo").get(&key) {
        return p.clone();
    }
    let res = Arc::new(compute_product(a, b, key.2));
    memo().lock().expect("lr memo").insert(key, res.clone());
    res
}

fn compute_product(mu: &Partition, nu: &Partition, max_rows: usize) -> Vec<(Partition, u64)> {
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::new();
    if mu.len() > max_rows || nu.len() > max_rows {
        return Vec::new();
    }
    let mut shape: Vec<usize> = mu.rows().to_vec();
    // counts[i][r]: number of letters i+1 placed in row r
    let mut counts: Vec<Vec<usize>> = Vec::new();
    place_letter(0, nu.rows(), &mut shape, &mut counts, max_rows, &mut acc);
    acc.into_iter().collect()
}

fn place_letter(
    letter: usize,
    nu: &[usize],
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    max_rows: usize,
    acc: &mut BTreeMap<Partition, u64>,
) {
    if letter == nu.len() {
        *acc.entry(Partition::from_sorted(shape.clone())).or_insert(0) += 1;
        return;
    }
    let old = shape.clone();
    let rows = (old.len() + 1).min(max_rows);
    let mut add = vec![0usize; rows];
    strips(0, nu[letter], &old, rows, &mut add, &mut |add| {
        // lattice: #(letter) in rows ≤ r must not exceed #(letter-1) in rows < r
        if letter > 0 {
            let prev = &counts[letter - 1];
            let (mut cur, mut before) = (0usize, 0usize);
            for (r, &a) in add.iter().enumerate() {
                cur += a;
                if cur > before {
                    return;
                }
                before += prev.get(r).copied().unwrap_or(0);
            }
        }
        let mut new_shape: Vec<usize> = (0..rows).map(|r| old.get(r).copied().unwrap_or(0) + add[r]).collect();
        while new_shape.last() == Some(&0) {
            new_shape.pop();
        }
        let mut sh = new_shape;
        counts.push(add.to_vec());
        place_letter(letter + 1, nu, &mut sh, counts, max_rows, acc);
        counts.pop();
    });
    *shape = old;
}

/// Enumerates horizontal strips of size `n` added to `old` within `rows` rows.
fn strips(r: usize, n: usize, old: &[usize], rows: usize, add: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if r == rows {
        if n == 0 {
            f(add);
        }
        return;
    }
    let cur = old.get(r).copied().unwrap_or(0);
    let cap = if r == 0 { n } else { old[r - 1] - cur };
    for a in (0..=cap.min(n)).rev() {
        add[r] = a;
        strips(r + 1, n - a, old, rows, add, f);
    }
    add[r] = 0;
}

/// c^λ_{μν} from the tableau enumeration.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.weight() != mu.weight() + nu.weight() {
        return 0;
    }
    lr_product(mu, nu, lambda.len())
        .iter()
        .find(|(p, _)| p == lambda)
        .map_or(0, |(_, c)| *c)
}

/// h_k · s_κ by the Pieri rule, as a multiset of shapes.
fn pieri(kappa: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let rows = kappa.len() + 1;
    let mut add = vec![0; rows];
    strips(0, k, kappa, rows, &mut add, &mut |a| {
        let mut s: Vec<usize> = (0..rows).map(|r| kappa.get(r).copied().unwrap_or(0) + a[r]).collect();
        while s.last() == Some(&0) {
            s.pop();
        }
        out.push(s);
    });
    out
}

/// s_μ·s_ν via Jacobi–Trudi s_ν = det(h_{ν_i-i+j}) and repeated Pieri steps.
pub fn schur_product_pieri(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, i64> {
    let l = nu.len();
    let mut acc: BTreeMap<Partition, i64> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..l).collect();
    loop {
        // term Π_i h_{ν_i - i + σ(i)}
        let mut ks = Vec::with_capacity(l);
        let mut ok = true;
        for (i, &s) in perm.iter().enumerate() {
            let k = nu.row(i) as i64 - i as i64 + s as i64;
            if k < 0 {
                ok = false;
                break;
            }
            ks.push(k as usize);
        }
        if ok {
            let sign = if inversions(&perm).is_multiple_of(2) { 1 } else { -1 };
            let mut shapes: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
            shapes.insert(mu.rows().to_vec(), 1);
            for &k in &ks {
                let mut next = BTreeMap::new();
                for (s, c) in shapes {
                    for t in pieri(&s, k) {
                        *next.entry(t).or_insert(0) += c;
                    }
                }
                shapes = next;
            }
            for (s, c) in shapes {
                *acc.entry(Partition::from_sorted(s)).or_insert(0) += sign * c;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

pub fn lr_coefficient_pieri(lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    schur_product_pieri(mu, nu).get(lambda).copied().unwrap_or(0)
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    #[test]
    fn matches_pieri_oracle_small() {
        for a in 0..=3 {
            for b in 0..=3 {
                for mu in partitions_of(a) {
                    for nu in partitions_of(b) {
                        let fast: BTreeMap<Partition, i64> =
                            lr_product(&mu, &nu, usize::MAX).iter().map(|(p, c)| (p.clone(), *c as i64)).collect();
                        assert_eq!(fast, schur_product_pieri(&mu, &nu), "{mu} * {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn known_coefficient() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(lr_coefficient(&p("[3,2,1]"), &p("[2,1]"), &p("[2,1]")), 2);
    }
}
