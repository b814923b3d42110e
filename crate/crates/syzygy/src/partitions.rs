//! Young diagrams, hooks, Frobenius notation and semistandard tableaux.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as its nonzero rows, weakly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("rows not weakly decreasing: {rows:?}")));
        }
        Ok(Partition(rows))
    }

    /// Builds a partition from rows known to be weakly decreasing.
    pub fn from_sorted(mut rows: Vec<usize>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]));
        Partition(rows)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row `i` (0-based), zero past the end.
    pub fn row(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let w = self.row(0);
        let cols = (0..w)
            .map(|j| self.0.iter().take_while(|&&r| r > j).count())
            .collect();
        Partition(cols)
    }

    /// Whether the diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Number of diagonal cells.
    pub fn diagonal(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &r)| r > *i).count()
    }

    pub fn to_frobenius(&self) -> FrobeniusForm {
        let t = self.transpose();
        let p = self.diagonal();
        FrobeniusForm {
            arms: (0..p).map(|i| self.0[i] - i - 1).collect(),
            legs: (0..p).map(|i| t.0[i] - i - 1).collect(),
        }
    }

    /// Cells `(row, col)`, 0-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    pub fn hook_length(&self, i: usize, j: usize, t: &Partition) -> usize {
        (self.0[i] - j - 1) + (t.0[j] - i - 1) + 1
    }

    /// Restricts to partitions with at most `k` rows.
    pub fn fits(&self, k: usize) -> bool {
        self.len() <= k
    }

    /// Adds `other` row-wise.
    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.row(i) + other.row(i)).collect())
    }

    /// Multiplicative notation, e.g. `[3^2,1]`.
    pub fn compact(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let r = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == r {
                j += 1;
            }
            if j - i > 1 {
                parts.push(format!("{}^{}", r, j - i));
            } else {
                parts.push(r.to_string());
            }
            i = j;
        }
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `[5,3,3,1]`, `[3^2,1]`, `[]` and Frobenius form `(4,1,0|3,1,0)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('(') {
            return s.parse::<FrobeniusForm>()?.to_partition();
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..]: {s}")))?;
        let mut rows = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (base, mult) = match tok.split_once('^') {
                Some((b, m)) => (b.trim(), parse_usize(m.trim())?),
                None => (tok, 1),
            };
            let b = parse_usize(base)?;
            rows.extend(std::iter::repeat_n(b, mult));
        }
        Partition::new(rows)
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::Parse(format!("not a nonnegative integer: {s:?}")))
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, usize::MAX)
}

/// Partitions of `n` with parts at most `max_part` and at most `max_len` rows.
pub fn partitions_bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn rec(n: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, max_len - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// Γ = (arm | leg): one row of `arm+1` cells and one column of `leg+1` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hook {
    pub arm: usize,
    pub leg: usize,
    pub parity: u8,
}

impl Hook {
    pub fn new(arm: usize, leg: usize, parity: u8) -> Self {
        Hook { arm, leg, parity: parity % 2 }
    }

    pub fn weight(&self) -> usize {
        self.arm + self.leg + 1
    }

    pub fn partition(&self) -> Partition {
        let mut rows = vec![self.arm + 1];
        rows.extend(std::iter::repeat_n(1, self.leg));
        Partition(rows)
    }

    /// Γ > Γ' in the compatibility order: both arm and leg strictly larger.
    pub fn dominates(&self, other: &Hook) -> bool {
        self.arm > other.arm && self.leg > other.leg
    }
}

impl fmt::Display for Hook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.arm, self.leg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusForm {
    pub arms: Vec<usize>,
    pub legs: Vec<usize>,
}

impl FrobeniusForm {
    pub fn new(arms: Vec<usize>, legs: Vec<usize>) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::Parse("arms and legs differ in length".into()));
        }
        let strict = |v: &[usize]| v.windows(2).all(|w| w[0] > w[1]);
        if !strict(&arms) || !strict(&legs) {
            return Err(Error::Parse(format!("not strictly decreasing: ({arms:?}|{legs:?})")));
        }
        Ok(FrobeniusForm { arms, legs })
    }

    pub fn to_partition(&self) -> Result<Partition> {
        let f = FrobeniusForm::new(self.arms.clone(), self.legs.clone())?;
        let p = f.arms.len();
        let mut rows: Vec<usize> = (0..p).map(|i| f.arms[i] + i + 1).collect();
        // rows below the diagonal block are read off from the legs
        let height = if p == 0 { 0 } else { f.legs[0] + 1 };
        // row i below the diagonal block meets column j iff β_j + j >= i
        for i in p..height {
            rows.push((0..p).filter(|&j| f.legs[j] + j >= i).count());
        }
        Partition::new(rows)
    }
}

impl fmt::Display for FrobeniusForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", j(&self.arms), j(&self.legs))
    }
}

impl std::str::FromStr for FrobeniusForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (..|..): {s}")))?;
        let (a, b) = inner
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|': {s}")))?;
        let list = |t: &str| -> Result<Vec<usize>> {
            t.split(',').map(str::trim).filter(|x| !x.is_empty()).map(parse_usize).collect()
        };
        FrobeniusForm::new(list(a)?, list(b)?)
    }
}

/// Parses a single hook `(a|b)`; parity defaults to `(a+b) mod 2`.
pub fn parse_hook(s: &str) -> Result<Hook> {
    let f: FrobeniusForm = s.parse()?;
    if f.arms.len() != 1 {
        return Err(Error::Parse(format!("not a single hook: {s}")));
    }
    Ok(Hook::new(f.arms[0], f.legs[0], ((f.arms[0] + f.legs[0]) % 2) as u8))
}

/// Joins strictly decreasing hooks Γ₁ > Γ₂ > … into the diagram with
/// Frobenius form (α₁,…|β₁,…).
pub fn hook_join(hooks: &[Hook]) -> Result<Partition> {
    for w in hooks.windows(2) {
        if !w[0].dominates(&w[1]) {
            return Err(Error::IncompatibleHooks(format!("{} then {}", w[0], w[1])));
        }
    }
    FrobeniusForm {
        arms: hooks.iter().map(|h| h.arm).collect(),
        legs: hooks.iter().map(|h| h.leg).collect(),
    }
    .to_partition()
}

/// Dimension of the irreducible GL_k-module π_λ by the hook-content formula.
pub fn dim_gl(lambda: &Partition, k: usize) -> BigInt {
    if lambda.len() > k {
        return BigInt::zero();
    }
    let t = lambda.transpose();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, j) in lambda.cells() {
        num *= BigInt::from(k + j - i);
        den *= BigInt::from(lambda.hook_length(i, j, &t));
    }
    num / den
}

pub fn dim_gl_usize(lambda: &Partition, k: usize) -> usize {
    dim_gl(lambda, k).to_usize().expect("dimension fits in usize")
}

/// A filling of a Young diagram, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tableau(pub Vec<Vec<usize>>);

impl Tableau {
    pub fn shape(&self) -> Partition {
        Partition::from_sorted(self.0.iter().map(Vec::len).collect())
    }

    /// Exponent vector of the weight monomial in `k` letters.
    pub fn content(&self, k: usize) -> Vec<usize> {
        let mut c = vec![0; k];
        for &x in self.0.iter().flatten() {
            c[x - 1] += 1;
        }
        c
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.0.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.0.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(b, a)| a < b));
        rows_ok && cols_ok && self.0.iter().flatten().all(|&x| x >= 1)
    }

    /// Column `j` read top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.0.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()
    }
}

/// All semistandard fillings of λ with entries in 1..=k.
pub fn enumerate_ssyt(lambda: &Partition, k: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    if lambda.len() > k {
        return out;
    }
    let cells: Vec<(usize, usize)> = lambda.cells().collect();
    let mut rows: Vec<Vec<usize>> = lambda.rows().iter().map(|&r| vec![0; r]).collect();
    fn rec(idx: usize, cells: &[(usize, usize)], rows: &mut Vec<Vec<usize>>, k: usize, out: &mut Vec<Tableau>) {
        if idx == cells.len() {
            out.push(Tableau(rows.clone()));
            return;
        }
        let (i, j) = cells[idx];
        let lo_row = if j > 0 { rows[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        // leave room for the cells below in this column
        let hi = k + 1 - cells_below(rows, i, j);
        for v in lo..=hi {
            rows[i][j] = v;
            rec(idx + 1, cells, rows, k, out);
        }
        rows[i][j] = 0;
    }
    fn cells_below(rows: &[Vec<usize>], i: usize, j: usize) -> usize {
        rows[i..].iter().take_while(|r| r.len() > j).count()
    }
    rec(0, &cells, &mut rows, k, &mut out);
    out
}

/// Filling of a single hook: the row (corner first) and the column below the corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HookFilling {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
}

impl HookFilling {
    pub fn is_standard(&self) -> bool {
        let row_ok = self.row.windows(2).all(|w| w[0] <= w[1]);
        let mut column = vec![self.row[0]];
        column.extend(&self.col);
        row_ok && column.windows(2).all(|w| w[0] < w[1])
    }

    pub fn entries(&self) -> impl Iterator<Item = usize> + '_ {
        self.row.iter().chain(&self.col).copied()
    }

    /// As a tableau of hook shape.
    pub fn tableau(&self) -> Tableau {
        let mut rows = vec![self.row.clone()];
        rows.extend(self.col.iter().map(|&x| vec![x]));
        Tableau(rows)
    }

    pub fn from_tableau(t: &Tableau) -> HookFilling {
        HookFilling {
            row: t.0[0].clone(),
            col: t.0[1..].iter().map(|r| r[0]).collect(),
        }
    }
}

/// A filling of a join of hooks that is standard on each hook separately.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HookedTableau {
    pub hooks: Vec<Hook>,
    pub fillings: Vec<HookFilling>,
}

impl HookedTableau {
    pub fn new(hooks: Vec<Hook>, fillings: Vec<HookFilling>) -> Result<Self> {
        hook_join(&hooks)?;
        if hooks.len() != fillings.len() {
            return Err(Error::InvalidTableau("one filling per hook required".into()));
        }
        for (h, f) in hooks.iter().zip(&fillings) {
            if f.row.len() != h.arm + 1 || f.col.len() != h.leg || !f.is_standard() {
                return Err(Error::InvalidTableau(format!("bad filling for hook {h}")));
            }
        }
        Ok(HookedTableau { hooks, fillings })
    }

    /// Cuts a filling of the joined diagram into its hooks.
    pub fn from_tableau(hooks: Vec<Hook>, t: &Tableau) -> Result<Self> {
        let fillings = (0..hooks.len())
            .map(|nu| HookFilling {
                row: t.0[nu][nu..].to_vec(),
                col: t.0[nu + 1..].iter().take_while(|r| r.len() > nu).map(|r| r[nu]).collect(),
            })
            .collect();
        HookedTableau::new(hooks, fillings)
    }

    pub fn shape(&self) -> Partition {
        hook_join(&self.hooks).expect("validated on construction")
    }

    /// Assembles the filling of the joined diagram.
    pub fn to_tableau(&self) -> Tableau {
        let shape = self.shape();
        let mut rows: Vec<Vec<usize>> = shape.rows().iter().map(|&r| vec![0; r]).collect();
        for (nu, f) in self.fillings.iter().enumerate() {
            for (j, &x) in f.row.iter().enumerate() {
                rows[nu][nu + j] = x;
            }
            for (i, &x) in f.col.iter().enumerate() {
                rows[nu + 1 + i][nu] = x;
            }
        }
        Tableau(rows)
    }

    pub fn is_valid_tableau(&self) -> bool {
        self.to_tableau().is_semistandard()
    }

    /// χ(μ, ν): number of entries equal to μ in hook ν; indexed `[μ-1][ν]`.
    pub fn content_vectors(&self, k: usize) -> Vec<Vec<usize>> {
        let mut chi = vec![vec![0; self.hooks.len()]; k];
        for (nu, f) in self.fillings.iter().enumerate() {
            for x in f.entries() {
                chi[x - 1][nu] += 1;
            }
        }
        chi
    }

    pub fn max_entry(&self) -> usize {
        self.fillings.iter().flat_map(|f| f.entries()).max().unwrap_or(0)
    }
}

/// ∏(k + c)/h evaluated as an exact rational; used as a cross-check.
pub fn dim_gl_rational(lambda: &Partition, k: usize) -> BigRational {
    BigRational::from_integer(dim_gl(lambda, k))
}
