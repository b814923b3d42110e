//! Explicit polynomials in finitely many variables; used to check
//! symmetric-function identities independently of the Schur-basis algebra.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SymFunc;
use crate::partitions::{enumerate_ssyt, Partition};
use crate::Q;

/// Polynomial: exponent vector → coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Q::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Q) -> Self {
        let mut p = Poly::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, a: &Q) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * a);
        }
        p
    }

    pub fn degree_of(e: &[u32]) -> u32 {
        e.iter().sum()
    }

    /// Product truncated to total degree ≤ `max_deg`.
    pub fn mul(&self, o: &Poly, max_deg: u32) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            let da = Self::degree_of(a);
            for (b, cb) in &o.terms {
                if da + Self::degree_of(b) > max_deg {
                    continue;
                }
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    pub fn truncate(&self, max_deg: u32) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if Self::degree_of(e) <= max_deg {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// s_λ(x_1..x_n) as a sum over semistandard tableaux.
pub fn schur_poly(lambda: &Partition, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for t in enumerate_ssyt(lambda, n) {
        p.add_term(t.content(n).into_iter().map(|x| x as u32).collect(), Q::one());
    }
    p
}

/// e_k(x_1..x_n) by expanding the subsets directly.
pub fn elementary_poly(k: usize, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            p.add_term((0..n).map(|i| (mask >> i) & 1).collect(), Q::one());
        }
    }
    p
}

pub fn symfunc_to_poly(f: &SymFunc, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for (lam, c) in f.terms() {
        p = p.add(&schur_poly(lam, n).scale(c));
    }
    p
}

/// Expands a symmetric polynomial in the Schur basis by subtracting leading
/// terms; `None` if the polynomial is not symmetric.
pub fn poly_to_symfunc(p: &Poly) -> Option<SymFunc> {
    let n = p.nvars;
    let mut rest = p.clone();
    let mut out = SymFunc::zero();
    while let Some((e, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if e.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        let lam = Partition::from_sorted(e.iter().map(|&x| x as usize).collect());
        rest = rest.sub(&schur_poly(&lam, n).scale(&c));
        out.add_term(lam, c);
    }
    Some(out)
}

/// f∘g by literal substitution: the monomials of g (g must have nonnegative
/// integer coefficients) become the variables of f.
pub fn plethysm_by_substitution(f: &SymFunc, g: &SymFunc, n: usize) -> Option<SymFunc> {
    let gp = symfunc_to_poly(g, n);
    let mut monos: Vec<Vec<u32>> = Vec::new();
    for (e, c) in &gp.terms {
        if c.is_negative() || !c.is_integer() {
            return None;
        }
        for _ in 0..c.to_integer().to_usize()? {
            monos.push(e.clone());
        }
    }
    let m = monos.len();
    let max_deg = (f.max_weight() * g.max_weight()) as u32;
    let mut out = Poly::zero(n);
    for (lam, c) in f.terms() {
        for t in enumerate_ssyt(lam, m) {
            let mut e = vec![0u32; n];
            for &x in t.0.iter().flatten() {
                for (a, b) in e.iter_mut().zip(&monos[x - 1]) {
                    *a += b;
                }
            }
            out.add_term(e, c.clone());
        }
    }
    poly_to_symfunc(&out.truncate(max_deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_oracle_matches() {
        let e2 = SymFunc::elementary(2);
        let h2 = SymFunc::complete(2);
        let a = plethysm_by_substitution(&e2, &e2, 4).unwrap();
        assert_eq!(a, "s[2,1,1]".parse().unwrap());
        let b = plethysm_by_substitution(&h2, &e2, 4).unwrap();
        assert_eq!(b, "s[2,2] + s[1,1,1,1]".parse().unwrap());
    }

    #[test]
    fn elementary_matches_schur() {
        assert_eq!(elementary_poly(2, 3), schur_poly(&"[1,1]".parse().unwrap(), 3));
    }
}
