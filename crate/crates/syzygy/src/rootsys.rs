//! Root systems of types A and D (and direct products) in the ε-basis,
//! Borel–Weil–Bott cohomology of line bundles on G/P, and related numerics.
//!
//! Inner product: the standard one on the ε-coordinates, so every root has
//! squared length 2 and coroots coincide with roots. A weight of an A_n
//! factor lives on the hyperplane Σx = 0 of R^{n+1}.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::dim_gl;
use crate::symfunc::SymFunc;
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    A,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub kind: Kind,
    pub rank: usize,
}

impl Factor {
    /// Number of ambient ε-coordinates.
    fn ambient(&self) -> usize {
        match self.kind {
            Kind::A => self.rank + 1,
            Kind::D => self.rank,
        }
    }
}

/// A weight, stored in ambient ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Q::zero(); dim])
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    pub fn dot(&self, o: &Weight) -> Q {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// s_α(x) = x - (x,α)α for a root α of squared length 2.
    fn reflect(&self, alpha: &Weight) -> Weight {
        self.sub(&alpha.scale(&self.dot(alpha)))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    factors: Vec<Factor>,
    dim: usize,
    simple: Vec<Weight>,
    positive: Vec<Weight>,
    fundamental: Vec<Weight>,
    rho: Weight,
}

fn unit(dim: usize, i: usize, c: i64) -> Weight {
    let mut w = Weight::zero(dim);
    w.0[i] = Q::from_integer(c.into());
    w
}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

impl RootSystem {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::BadParams("root system needs at least one factor".into()));
        }
        for f in &factors {
            let ok = match f.kind {
                Kind::A => f.rank >= 1,
                Kind::D => f.rank >= 3,
            };
            if !ok {
                return Err(Error::BadParams(format!("unsupported factor {:?}{}", f.kind, f.rank)));
            }
        }
        let dim: usize = factors.iter().map(Factor::ambient).sum();
        let (mut simple, mut positive, mut fundamental) = (Vec::new(), Vec::new(), Vec::new());
        let mut off = 0;
        for f in &factors {
            let e = |i: usize, c: i64| unit(dim, off + i, c);
            let n = f.rank;
            match f.kind {
                Kind::A => {
                    for i in 0..n {
                        simple.push(e(i, 1).add(&e(i + 1, -1)));
                    }
                    for i in 0..=n {
                        for j in i + 1..=n {
                            positive.push(e(i, 1).add(&e(j, -1)));
                        }
                    }
                    for i in 1..=n {
                        let shift = Q::new((i as i64).into(), ((n + 1) as i64).into());
                        let mut w = Weight::zero(dim);
                        for j in 0..=n {
                            w.0[off + j] = if j < i { Q::one() - &shift } else { -shift.clone() };
                        }
                        fundamental.push(w);
                    }
                }
                Kind::D => {
                    for i in 0..n - 1 {
                        simple.push(e(i, 1).add(&e(i + 1, -1)));
                    }
                    simple.push(e(n - 2, 1).add(&e(n - 1, 1)));
                    for i in 0..n {
                        for j in i + 1..n {
                            positive.push(e(i, 1).add(&e(j, -1)));
                            positive.push(e(i, 1).add(&e(j, 1)));
                        }
                    }
                    for i in 1..=n - 2 {
                        let mut w = Weight::zero(dim);
                        for j in 0..i {
                            w.0[off + j] = Q::one();
                        }
                        fundamental.push(w);
                    }
                    let mut w1 = Weight::zero(dim);
                    let mut w2 = Weight::zero(dim);
                    for j in 0..n {
                        w1.0[off + j] = if j == n - 1 { -half() } else { half() };
                        w2.0[off + j] = half();
                    }
                    fundamental.push(w1);
                    fundamental.push(w2);
                }
            }
            off += f.ambient();
        }
        let rho = fundamental.iter().fold(Weight::zero(dim), |a, w| a.add(w));
        Ok(RootSystem { factors, dim, simple, positive, fundamental, rho })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Σ n_i ω_i.
    pub fn weight(&self, coords: &[i64]) -> Result<Weight> {
        if coords.len() != self.rank() {
            return Err(Error::BadParams(format!(
                "expected {} fundamental-weight coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(coords
            .iter()
            .zip(&self.fundamental)
            .fold(Weight::zero(self.dim), |a, (&n, w)| a.add(&w.scale(&Q::from_integer(n.into())))))
    }

    /// The coordinates (λ, α_i); `None` if the weight is not integral.
    pub fn fundamental_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.simple
            .iter()
            .map(|a| {
                let c = w.dot(a);
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple.iter().all(|a| !w.dot(a).is_negative())
    }

    /// Positive roots orthogonal to λ.
    pub fn parabolic(&self, lambda: &Weight) -> Result<ParabolicData> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(self.format_weight(lambda)));
        }
        let positive_p: Vec<Weight> = self.positive.iter().filter(|a| a.dot(lambda).is_zero()).cloned().collect();
        let rho_p = positive_p.iter().fold(Weight::zero(self.dim), |a, w| a.add(w)).scale(&half());
        Ok(ParabolicData { lambda: lambda.clone(), positive_p, rho_p })
    }

    /// dim V_Λ = Π_{α>0} (Λ+ρ, α)/(ρ, α) for dominant Λ.
    pub fn weyl_dimension(&self, highest: &Weight) -> Result<BigInt> {
        if !self.is_dominant(highest) {
            return Err(Error::NotDominant(self.format_weight(highest)));
        }
        let lr = highest.add(&self.rho);
        let mut d = Q::one();
        for a in &self.positive {
            d *= lr.dot(a) / self.rho.dot(a);
        }
        Ok(d.to_integer())
    }

    pub fn format_weight(&self, w: &Weight) -> String {
        match self.fundamental_coords(w) {
            Some(c) => format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
            None => format!("{:?}", w.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        }
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// `A4`, `D5`, `A2xA1` (also `×` or `*` as separator).
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split(['x', '×', '*']) {
            let part = part.trim();
            let (kind, rest) = match part.chars().next() {
                Some('A') | Some('a') => (Kind::A, &part[1..]),
                Some('D') | Some('d') => (Kind::D, &part[1..]),
                _ => return Err(Error::Parse(format!("unknown root system factor {part:?}"))),
            };
            let rank = rest.parse().map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
            factors.push(Factor { kind, rank });
        }
        RootSystem::new(factors)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{}{}", if x.kind == Kind::A { "A" } else { "D" }, x.rank))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub lambda: Weight,
    pub positive_p: Vec<Weight>,
    pub rho_p: Weight,
}

impl ParabolicData {
    /// dim G/P = |Δ⁺| - |Δ⁺_p|.
    pub fn dim_flag(&self, rs: &RootSystem) -> usize {
        rs.positive.len() - self.positive_p.len()
    }
}

/// N with 2(ρ - ρ_p) = N·λ, if such a positive integer exists.
pub fn subcanonical_index(rs: &RootSystem, lambda: &Weight) -> Result<Option<u64>> {
    if lambda.is_zero() {
        return Err(Error::BadParams("λ must be nonzero".into()));
    }
    let p = rs.parabolic(lambda)?;
    let lhs = rs.rho.sub(&p.rho_p).scale(&Q::from_integer(2.into()));
    let i = lambda.0.iter().position(|x| !x.is_zero()).expect("nonzero weight");
    let n = &lhs.0[i] / &lambda.0[i];
    if lhs != lambda.scale(&n) || !n.is_integer() || !n.is_positive() {
        return Ok(None);
    }
    Ok(n.to_integer().to_u64())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BwbResult {
    Zero,
    /// H^degree is the irreducible module with lowest weight `lowest`.
    NonZero { degree: usize, lowest: Weight, dim: BigInt },
}

/// Cohomology of the line bundle with lowest weight μ: sort μ + ρ′ (ρ′ = -ρ)
/// into the antidominant chamber by simple reflections; the number of steps
/// is the Weyl length of the element used.
pub fn bwb_cohomology(rs: &RootSystem, mu: &Weight) -> Result<BwbResult> {
    if rs.fundamental_coords(mu).is_none() {
        return Err(Error::NotParabolicWeight(format!("{:?} is not integral", mu.0)));
    }
    let mut x = mu.sub(&rs.rho);
    if rs.positive.iter().any(|a| x.dot(a).is_zero()) {
        return Ok(BwbResult::Zero);
    }
    let mut q = 0;
    while let Some(a) = rs.simple.iter().find(|a| x.dot(a).is_positive()) {
        x = x.reflect(a);
        q += 1;
    }
    let lowest = x.add(&rs.rho);
    let dim = rs.weyl_dimension(&lowest.scale(&-Q::one()))?;
    Ok(BwbResult::NonZero { degree: q, lowest, dim })
}

#[derive(Clone, Debug, Serialize)]
pub struct HvRow {
    pub k: i64,
    pub degree: Option<usize>,
    pub dim: Option<String>,
    pub expected: Option<usize>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HvReport {
    pub system: String,
    pub lambda: String,
    pub index: u64,
    pub top_degree: usize,
    pub rows: Vec<HvRow>,
    pub pass: bool,
}

/// For each k, the line bundle O(k) has lowest weight -kλ. Expected: H^0 for
/// k ≥ 0, nothing for -N < k < 0, H^d for k ≤ -N with d = dim G/P.
pub fn check_hvprop(rs: &RootSystem, lambda: &Weight, k_range: std::ops::RangeInclusive<i64>) -> Result<HvReport> {
    let n = subcanonical_index(rs, lambda)?
        .ok_or_else(|| Error::BadParams(format!("{} is not subcanonical", rs.format_weight(lambda))))?;
    let d = rs.parabolic(lambda)?.dim_flag(rs);
    let mut rows = Vec::new();
    for k in k_range {
        let mu = lambda.scale(&Q::from_integer((-k).into()));
        let expected = if k >= 0 {
            Some(0)
        } else if k <= -(n as i64) {
            Some(d)
        } else {
            None
        };
        let (degree, dim) = match bwb_cohomology(rs, &mu)? {
            BwbResult::Zero => (None, None),
            BwbResult::NonZero { degree, dim, .. } => (Some(degree), Some(dim.to_string())),
        };
        rows.push(HvRow { k, degree, dim, expected, ok: degree == expected });
    }
    Ok(HvReport {
        system: rs.to_string(),
        lambda: rs.format_weight(lambda),
        index: n,
        top_degree: d,
        pass: rows.iter().all(|r| r.ok),
        rows,
    })
}

/// c_λ = (λ + 2ρ, λ).
pub fn casimir_value(rs: &RootSystem, lambda: &Weight) -> Result<Q> {
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(rs.format_weight(lambda)));
    }
    Ok(lambda.add(&rs.rho.scale(&Q::from_integer(2.into()))).dot(lambda))
}

#[derive(Clone, Debug)]
pub struct QuadricSplit {
    /// The Cartan square V_{2μ}, i.e. the s[2,2] component.
    pub square: SymFunc,
    /// The complement Q (the quadrics cutting out the orbit).
    pub quadrics: SymFunc,
    pub square_dim: BigInt,
    pub quadrics_dim: BigInt,
}

/// S²(Λ²C^N) = h₂∘e₂ in N variables, split into s[2,2] and the rest.
pub fn quadric_character(n: usize) -> Result<QuadricSplit> {
    let full = SymFunc::complete(2).plethysm(&SymFunc::elementary(2), 4)?.restrict_rows(n);
    let square = full.filter(|p| p.rows() == [2, 2]);
    let quadrics = full.sub(&square);
    let dim = |f: &SymFunc| -> BigInt {
        f.terms().iter().map(|(p, c)| dim_gl(p, n) * c.to_integer()).sum()
    };
    Ok(QuadricSplit { square_dim: dim(&square), quadrics_dim: dim(&quadrics), square, quadrics })
}

/// A Weyl group element as a signed permutation of the ε-basis:
/// w(e_i) = sign[i]·e_{perm[i]}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement { perm: (0..dim).collect(), sign: vec![1; dim] }
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        let mut y = Weight::zero(x.0.len());
        for i in 0..x.0.len() {
            y.0[self.perm[i]] = if self.sign[i] > 0 { x.0[i].clone() } else { -x.0[i].clone() };
        }
        y
    }

    /// self ∘ other.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.perm.len();
        let mut out = WeylElement::identity(n);
        for i in 0..n {
            let j = other.perm[i];
            out.perm[i] = self.perm[j];
            out.sign[i] = self.sign[j] * other.sign[i];
        }
        out
    }
}

impl RootSystem {
    /// The simple reflections as signed permutations.
    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let mut off = 0;
        for f in &self.factors {
            let swap = |i: usize, j: usize, s: i8| {
                let mut w = WeylElement::identity(self.dim);
                w.perm.swap(off + i, off + j);
                w.sign[off + i] = s;
                w.sign[off + j] = s;
                w
            };
            match f.kind {
                Kind::A => (0..f.rank).for_each(|i| out.push(swap(i, i + 1, 1))),
                Kind::D => {
                    (0..f.rank - 1).for_each(|i| out.push(swap(i, i + 1, 1)));
                    out.push(swap(f.rank - 2, f.rank - 1, -1));
                }
            }
            off += f.ambient();
        }
        out
    }

    /// #{α > 0 : w(α) < 0}.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        self.positive.iter().filter(|a| w.apply(a).dot(&self.rho).is_negative()).count()
    }

    /// Every group element with its reduced-word length found by breadth-first
    /// search over words in the simple reflections. Refuses groups larger
    /// than `limit`.
    pub fn weyl_group_by_words(&self, limit: usize) -> Result<HashMap<WeylElement, usize>> {
        let gens = self.simple_reflections();
        let mut seen = HashMap::from([(WeylElement::identity(self.dim), 0usize)]);
        let mut queue = VecDeque::from([WeylElement::identity(self.dim)]);
        while let Some(w) = queue.pop_front() {
            let l = seen[&w];
            for s in &gens {
                let v = s.compose(&w);
                if !seen.contains_key(&v) {
                    if seen.len() >= limit {
                        return Err(Error::CutoffTooLarge { what: "Weyl group".into(), needed: seen.len() + 1, bound: limit });
                    }
                    seen.insert(v.clone(), l + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(seen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn rho_pairs_to_one() {
        for s in ["A1", "A4", "D4", "D5", "A2xA1"] {
            let r = rs(s);
            for a in r.simple_roots() {
                assert_eq!(r.rho().dot(a), Q::one(), "{s}");
            }
            for (i, w) in r.fundamental_weights().iter().enumerate() {
                let c = r.fundamental_coords(w).unwrap();
                assert_eq!(c, (0..r.rank()).map(|j| i64::from(i == j)).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(rs("A4").positive_roots().len(), 10);
        assert_eq!(rs("D5").positive_roots().len(), 20);
        assert_eq!(rs("A2xA1").positive_roots().len(), 4);
    }

    #[test]
    fn subcanonical_examples() {
        let a4 = rs("A4");
        assert_eq!(subcanonical_index(&a4, &a4.weight(&[0, 1, 0, 0]).unwrap()).unwrap(), Some(5));
        assert_eq!(subcanonical_index(&a4, &a4.weight(&[0, 2, 0, 0]).unwrap()).unwrap(), None);
        let p = rs("A2xA1");
        assert_eq!(subcanonical_index(&p, &p.weight(&[3, 0, 2]).unwrap()).unwrap(), Some(1));
        for m in 4..=6 {
            let d = rs(&format!("D{m}"));
            let mut c = vec![0; m];
            c[m - 1] = 1;
            assert_eq!(subcanonical_index(&d, &d.weight(&c).unwrap()).unwrap(), Some(2 * (m as u64 - 1)));
        }
        assert!(matches!(subcanonical_index(&a4, &a4.weight(&[0, -1, 0, 0]).unwrap()), Err(Error::NotDominant(_))));
    }

    #[test]
    fn projective_line() {
        let a1 = rs("A1");
        let w = |n: i64| a1.weight(&[n]).unwrap();
        for m in 0..4 {
            match bwb_cohomology(&a1, &w(-m)).unwrap() {
                BwbResult::NonZero { degree, lowest, dim } => {
                    assert_eq!((degree, lowest), (0, w(-m)));
                    assert_eq!(dim, BigInt::from(m + 1));
                }
                BwbResult::Zero => panic!(),
            }
        }
        assert_eq!(bwb_cohomology(&a1, &w(1)).unwrap(), BwbResult::Zero);
        assert_eq!(
            bwb_cohomology(&a1, &w(2)).unwrap(),
            BwbResult::NonZero { degree: 1, lowest: w(0), dim: BigInt::one() }
        );
    }

    #[test]
    fn hvprop_patterns() {
        let a4 = rs("A4");
        let r = check_hvprop(&a4, &a4.weight(&[0, 1, 0, 0]).unwrap(), -8..=3).unwrap();
        assert!(r.pass);
        assert_eq!((r.index, r.top_degree), (5, 6));
        let d5 = rs("D5");
        let r = check_hvprop(&d5, &d5.weight(&[0, 0, 0, 0, 1]).unwrap(), -9..=1).unwrap();
        assert!(r.pass);
        assert_eq!((r.index, r.top_degree), (8, 10));
        let gap: Vec<i64> = r.rows.iter().filter(|x| x.degree.is_none()).map(|x| x.k).collect();
        assert_eq!(gap, (-7..=-1).collect::<Vec<_>>());
    }

    #[test]
    fn spin10_dimension() {
        let d5 = rs("D5");
        assert_eq!(d5.weyl_dimension(&d5.weight(&[0, 0, 0, 0, 1]).unwrap()).unwrap(), BigInt::from(16));
        assert_eq!(d5.weyl_dimension(&d5.weight(&[1, 0, 0, 0, 0]).unwrap()).unwrap(), BigInt::from(10));
    }

    #[test]
    fn quadric_split() {
        let q5 = quadric_character(5).unwrap();
        assert_eq!((q5.square_dim.clone(), q5.quadrics_dim.clone()), (BigInt::from(50), BigInt::from(5)));
        assert_eq!(q5.quadrics, "s[1,1,1,1]".parse().unwrap());
        assert_eq!(quadric_character(6).unwrap().quadrics_dim, BigInt::from(15));
        assert_eq!(quadric_character(4).unwrap().quadrics_dim, BigInt::one());
    }

    #[test]
    fn weyl_lengths_agree() {
        for s in ["A1", "A3", "A4", "D4", "A2xA1"] {
            let r = rs(s);
            let g = r.weyl_group_by_words(10_000).unwrap();
            for (w, l) in &g {
                assert_eq!(r.inversion_count(w), *l, "{s}");
            }
        }
        assert_eq!(rs("A4").weyl_group_by_words(1000).unwrap().len(), 120);
        assert_eq!(rs("D4").weyl_group_by_words(1000).unwrap().len(), 192);
    }

    #[test]
    fn casimir_zero() {
        let a4 = rs("A4");
        assert!(casimir_value(&a4, &Weight::zero(5)).unwrap().is_zero());
    }
}
