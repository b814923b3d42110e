//! Graded GL-characters and the passage between a graded Lie superalgebra
//! and its Chevalley cohomology.
//!
//! Conventions. A Lie character χ_a = Σ_m ch(a_m) t^m is stored unsigned;
//! the component of degree m has parity m mod 2. A cohomology character is
//! the Euler character χ_H = Σ_{i,q} (-1)^i ch(H^i_q) t^q. The variable t is
//! plethystic: p_k∘t = t^k.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::power::{from_power_sum, ps_adams, ps_mul, to_power_sum, PowerSum};
use super::{SchurTerm, SymFunc};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    by_degree: BTreeMap<usize, SymFunc>,
}

impl GradedCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut g = Self::zero();
        g.set(0, SymFunc::one());
        g
    }

    pub fn set(&mut self, degree: usize, f: SymFunc) {
        if f.is_zero() {
            self.by_degree.remove(&degree);
        } else {
            self.by_degree.insert(degree, f);
        }
    }

    pub fn get(&self, degree: usize) -> SymFunc {
        self.by_degree.get(&degree).cloned().unwrap_or_default()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&usize, &SymFunc)> {
        self.by_degree.iter()
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.keys().next_back().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &GradedCharacter) -> GradedCharacter {
        let mut out = self.clone();
        for (d, f) in &other.by_degree {
            out.set(*d, out.get(*d).add(f));
        }
        out
    }

    pub fn sub(&self, other: &GradedCharacter) -> GradedCharacter {
        let mut out = self.clone();
        for (d, f) in &other.by_degree {
            out.set(*d, out.get(*d).sub(f));
        }
        out
    }

    pub fn truncate(&self, cutoff: usize) -> GradedCharacter {
        GradedCharacter { by_degree: self.by_degree.range(..=cutoff).map(|(d, f)| (*d, f.clone())).collect() }
    }

    pub fn restrict_rows(&self, k: usize) -> GradedCharacter {
        let mut out = GradedCharacter::zero();
        for (d, f) in &self.by_degree {
            out.set(*d, f.restrict_rows(k));
        }
        out
    }

    /// Substitutes t ↦ -t.
    pub fn regrade_sign(&self) -> GradedCharacter {
        let mut out = GradedCharacter::zero();
        for (d, f) in &self.by_degree {
            out.set(*d, if d % 2 == 1 { f.scale(&-Q::one()) } else { f.clone() });
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &GradedCharacter, cutoff: usize) -> GradedCharacter {
        let mut out = GradedCharacter::zero();
        for (a, f) in &self.by_degree {
            for (b, g) in &other.by_degree {
                if a + b <= cutoff {
                    let w = f.max_weight() + g.max_weight();
                    out.set(a + b, out.get(a + b).add(&f.mul(g, w)));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> BTreeMap<usize, Vec<SchurTerm>> {
        self.by_degree.iter().map(|(d, f)| (*d, f.to_json())).collect()
    }

    fn to_ps(&self) -> GradedPs {
        self.by_degree.iter().map(|(d, f)| (*d, to_power_sum(f))).collect()
    }

    fn from_ps(g: &GradedPs) -> GradedCharacter {
        let mut out = GradedCharacter::zero();
        for (d, p) in g {
            out.set(*d, from_power_sum(p));
        }
        out
    }
}

impl fmt::Display for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.by_degree.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, g)) in self.by_degree.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "t^{d}: {g}")?;
        }
        Ok(())
    }
}

type GradedPs = BTreeMap<usize, PowerSum>;

fn gps_add_scaled(acc: &mut GradedPs, a: &Q, x: &GradedPs) {
    for (d, p) in x {
        let e = acc.entry(*d).or_default();
        for (rho, c) in p {
            *e.entry(rho.clone()).or_insert_with(Q::zero) += a * c;
        }
        e.retain(|_, c| !c.is_zero());
    }
    acc.retain(|_, p| !p.is_empty());
}

fn gps_mul(x: &GradedPs, y: &GradedPs, cutoff: usize) -> GradedPs {
    let mut out = GradedPs::new();
    for (a, p) in x {
        for (b, q) in y {
            if a + b > cutoff {
                continue;
            }
            let prod = ps_mul(p, q, usize::MAX);
            gps_add_scaled(&mut out, &Q::one(), &BTreeMap::from([(a + b, prod)]));
        }
    }
    out
}

/// φ_m: the Adams operation twisted by parity, φ_m(f t^d) = ± p_m[f] t^{md}
/// with sign +1 for d even and (-1)^{m+1} for d odd; φ_j φ_k = φ_{jk}.
fn phi(x: &GradedPs, m: usize, cutoff: usize) -> GradedPs {
    let mut out = GradedPs::new();
    for (d, p) in x {
        if d * m > cutoff {
            continue;
        }
        let sign = if d % 2 == 0 || m % 2 == 1 { Q::one() } else { -Q::one() };
        gps_add_scaled(&mut out, &sign, &BTreeMap::from([(d * m, ps_adams(p, m))]));
    }
    out
}

fn gps_exp(z: &GradedPs, cutoff: usize) -> GradedPs {
    let one: GradedPs = BTreeMap::from([(0, BTreeMap::from([(Partition::empty(), Q::one())]))]);
    let mut out = one.clone();
    let mut term = one;
    for n in 1..=cutoff {
        term = gps_mul(&term, z, cutoff);
        if term.is_empty() {
            break;
        }
        let inv = Q::one() / Q::from_integer(n.into());
        let mut t = GradedPs::new();
        gps_add_scaled(&mut t, &inv, &term);
        term = t;
        gps_add_scaled(&mut out, &Q::one(), &term);
    }
    out
}

fn gps_log(y: &GradedPs, cutoff: usize) -> Result<GradedPs> {
    let y0 = y.get(&0).cloned().unwrap_or_default();
    let expected = BTreeMap::from([(Partition::empty(), Q::one())]);
    if y0 != expected {
        return Err(Error::BadParams("cohomology character must have constant term 1".into()));
    }
    let mut z = y.clone();
    z.remove(&0);
    let mut out = GradedPs::new();
    let mut pow = z.clone();
    for n in 1..=cutoff {
        if pow.is_empty() {
            break;
        }
        let c = Q::new(if n % 2 == 1 { 1.into() } else { (-1).into() }, n.into());
        gps_add_scaled(&mut out, &c, &pow);
        pow = gps_mul(&pow, &z, cutoff);
    }
    Ok(out)
}

pub(crate) fn mobius(n: usize) -> i64 {
    let (mut n, mut k, mut res) = (n, 2, 1i64);
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            res = -res;
        }
        k += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// χ_H = Σ_n (-1)^n Λ^n_super(χ_a): exterior powers on even parts, symmetric
/// powers on odd parts, i.e. exp(-Σ_k φ_k(χ_a)/k), truncated at t-degree `cutoff`.
pub fn lie_to_coh_char(chi_a: &GradedCharacter, cutoff: usize) -> Result<GradedCharacter> {
    if !chi_a.get(0).is_zero() {
        return Err(Error::BadParams("Lie character must vanish in degree 0".into()));
    }
    let x = chi_a.truncate(cutoff).to_ps();
    let mut z = GradedPs::new();
    for k in 1..=cutoff {
        gps_add_scaled(&mut z, &-Q::new(1.into(), k.into()), &phi(&x, k, cutoff));
    }
    Ok(GradedCharacter::from_ps(&gps_exp(&z, cutoff)))
}

/// Inverse of [`lie_to_coh_char`]: χ_a = -Σ_m μ(m)/m φ_m(log χ_H).
pub fn coh_to_lie_char(chi_h: &GradedCharacter, cutoff: usize) -> Result<GradedCharacter> {
    let f = gps_log(&chi_h.truncate(cutoff).to_ps(), cutoff)?;
    let mut x = GradedPs::new();
    for m in 1..=cutoff {
        let mu = mobius(m);
        if mu != 0 {
            gps_add_scaled(&mut x, &Q::new((-mu).into(), m.into()), &phi(&f, m, cutoff));
        }
    }
    Ok(GradedCharacter::from_ps(&x))
}
