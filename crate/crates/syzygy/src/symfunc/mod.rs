//! Symmetric functions in the Schur basis with exact rational coefficients.

mod graded;
mod identities;
mod lr;
mod parse;
pub mod poly;
mod power;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::partitions::{dim_gl, Partition};
use crate::Q;

pub use graded::{coh_to_lie_char, lie_to_coh_char, GradedCharacter};
pub use identities::{
    check_gr_char, gr_char_hook_sum, grassmann_koszul_char, verify_littlewood_identity, CharIdentityReport,
};
pub use lr::{lr_coefficient, lr_coefficient_pieri, schur_product_pieri};
pub use parse::parse_symfunc;
pub use power::{char_value, from_power_sum, to_power_sum, PowerSum};

/// Finite Q-linear combination of Schur functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymFunc {
    terms: BTreeMap<Partition, Q>,
}

impl SymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::schur(Partition::empty())
    }

    pub fn schur(lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, Q::one());
        SymFunc { terms }
    }

    pub fn constant(c: Q) -> Self {
        let mut f = SymFunc::zero();
        f.add_term(Partition::empty(), c);
        f
    }

    /// e_n = s[1^n].
    pub fn elementary(n: usize) -> Self {
        Self::schur(Partition::from_sorted(vec![1; n]))
    }

    /// h_n = s[n].
    pub fn complete(n: usize) -> Self {
        Self::schur(Partition::from_sorted(if n == 0 { vec![] } else { vec![n] }))
    }

    /// p_n in the Schur basis (Murnaghan–Nakayama: hooks with sign (-1)^leg).
    pub fn power(n: usize) -> Self {
        if n == 0 {
            return Self::one();
        }
        let mut f = SymFunc::zero();
        for leg in 0..n {
            let mut rows = vec![n - leg];
            rows.extend(std::iter::repeat_n(1, leg));
            let sign = if leg % 2 == 0 { Q::one() } else { -Q::one() };
            f.add_term(Partition::from_sorted(rows), sign);
        }
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut f = SymFunc::zero();
        for (p, c) in terms {
            f.add_term(p, c);
        }
        f
    }

    pub fn add_term(&mut self, p: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, p: &Partition) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Partition::empty())
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let mut f = self.clone();
        for (p, c) in &other.terms {
            f.add_term(p.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, a: &Q) -> SymFunc {
        if a.is_zero() {
            return SymFunc::zero();
        }
        SymFunc { terms: self.terms.iter().map(|(p, c)| (p.clone(), c * a)).collect() }
    }

    pub fn homogeneous(&self, w: usize) -> SymFunc {
        self.filter(|p| p.weight() == w)
    }

    pub fn truncate(&self, max_weight: usize) -> SymFunc {
        self.filter(|p| p.weight() <= max_weight)
    }

    /// Drops Schur terms with more than `k` rows (restriction to k variables).
    pub fn restrict_rows(&self, k: usize) -> SymFunc {
        self.filter(|p| p.len() <= k)
    }

    pub fn filter(&self, keep: impl Fn(&Partition) -> bool) -> SymFunc {
        SymFunc { terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// Product in the Schur basis by the Littlewood–Richardson rule.
    pub fn mul(&self, other: &SymFunc, cutoff: usize) -> SymFunc {
        self.mul_bounded(other, cutoff, usize::MAX)
    }

    /// Product truncated to weight ≤ `cutoff` and at most `max_rows` rows.
    pub fn mul_bounded(&self, other: &SymFunc, cutoff: usize, max_rows: usize) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.weight() + b.weight() > cutoff {
                    continue;
                }
                let c = ca * cb;
                for (lam, m) in lr::lr_product(a, b, max_rows).iter() {
                    out.add_term(lam.clone(), &c * Q::from_integer((*m).into()));
                }
            }
        }
        out
    }

    /// The involution s_λ ↦ s_λ'.
    pub fn omega(&self) -> SymFunc {
        SymFunc { terms: self.terms.iter().map(|(p, c)| (p.transpose(), c.clone())).collect() }
    }

    /// Plethysm f∘g truncated to weight ≤ `cutoff`.
    pub fn plethysm(&self, g: &SymFunc, cutoff: usize) -> crate::Result<SymFunc> {
        power::plethysm(self, g, cutoff)
    }

    /// Value at k variables all equal to 1.
    pub fn dimension(&self, k: usize) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (p, c)| acc + c * Q::from_integer(dim_gl(p, k)))
    }

    pub fn to_json(&self) -> Vec<SchurTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(p, c)| SchurTerm { partition: p.rows().to_vec(), num: c.numer().to_string(), den: c.denom().to_string() })
            .collect()
    }

    pub fn from_json(terms: &[SchurTerm]) -> crate::Result<SymFunc> {
        let mut f = SymFunc::zero();
        for t in terms {
            let p = Partition::new(t.partition.clone())?;
            let num = t.num.parse().map_err(|_| crate::Error::Parse(format!("bad numerator {}", t.num)))?;
            let den: crate::Z = t.den.parse().map_err(|_| crate::Error::Parse(format!("bad denominator {}", t.den)))?;
            if den.is_zero() {
                return Err(crate::Error::Parse("zero denominator".into()));
            }
            f.add_term(p, Q::new(num, den));
        }
        Ok(f)
    }

    /// Terms in display order: increasing weight, then decreasing partitions.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.weight().cmp(&b.0.weight()).then(b.0.cmp(a.0)));
        v
    }
}

/// JSON form of one Schur term; numerator and denominator are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurTerm {
    pub partition: Vec<usize>,
    pub num: String,
    pub den: String,
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if p.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "s{p}")?;
            } else {
                write!(f, "{a}*s{p}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for SymFunc {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        parse_symfunc(s, 64)
    }
}
