//! Exact sparse linear algebra over Q.
//!
//! Vectors are sorted `(index, value)` lists. Elimination is fraction-free:
//! stored echelon rows are primitive integer vectors and every combination
//! step is followed by removal of the content.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Q, Z};

pub type QVec = Vec<(usize, Q)>;
pub type IVec = Vec<(usize, Z)>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `a*x + b*y` for sorted sparse vectors.
fn lin_comb<T>(a: &T, x: &[(usize, T)], b: &T, y: &[(usize, T)]) -> Vec<(usize, T)>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    for<'r> &'r T: std::ops::Mul<&'r T, Output = T>,
{
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some(u), Some(v)) => u.0.cmp(&v.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match take {
            std::cmp::Ordering::Less => {
                let v = a * &x[i].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let v = b * &y[j].1;
                if !v.is_zero() {
                    out.push((y[j].0, v));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a * &x[i].1 + b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn qvec_add(x: &QVec, y: &QVec) -> QVec {
    lin_comb(&Q::one(), x, &Q::one(), y)
}

pub fn qvec_axpy(a: &Q, x: &QVec, b: &Q, y: &QVec) -> QVec {
    lin_comb(a, x, b, y)
}

pub fn qvec_scale(a: &Q, x: &QVec) -> QVec {
    if a.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v * a)).collect()
}

/// Sorts and merges an unsorted list of entries, dropping zeros.
pub fn qvec_from_unsorted(mut entries: Vec<(usize, Q)>) -> QVec {
    entries.sort_by_key(|e| e.0);
    let mut out: QVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn qvec_get(x: &QVec, i: usize) -> Q {
    match x.binary_search_by_key(&i, |e| e.0) {
        Ok(p) => x[p].1.clone(),
        Err(_) => Q::zero(),
    }
}

/// Writes `v = scale * w` with `w` a primitive integer vector.
pub fn to_primitive(v: &QVec) -> (IVec, Q) {
    if v.is_empty() {
        return (Vec::new(), Q::one());
    }
    let mut den = Z::one();
    for (_, x) in v {
        den = den.lcm(x.denom());
    }
    let mut w: IVec = v.iter().map(|(i, x)| (*i, x.numer() * (&den / x.denom()))).collect();
    let g = content(&w);
    for e in &mut w {
        e.1 /= &g;
    }
    if w[0].1.is_negative() {
        for e in &mut w {
            e.1 = -&e.1;
        }
        (w, Q::new(-g, den))
    } else {
        (w, Q::new(g, den))
    }
}

fn content(w: &IVec) -> Z {
    let mut g = Z::zero();
    for (_, x) in w {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Echelon basis of a growing subspace, optionally remembering how each
/// stored row is written through the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<IVec>,
    tags: Vec<QVec>,
    pivot_of: HashMap<usize, usize>,
    tagged: bool,
    inserted: usize,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug)]
pub enum Inserted {
    /// New pivot at this index.
    Pivot(usize),
    /// Dependent; with tagging on, the relation Σ c_j v_j = 0 over inserted vectors.
    Dependent(QVec),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tagged() -> Self {
        Echelon { tagged: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_of.contains_key(&i)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_of.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Stored rows as rational vectors (same span as the inserted vectors).
    pub fn basis(&self) -> Vec<QVec> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(i, x)| (*i, Q::from_integer(x.clone()))).collect())
            .collect()
    }

    /// Reduces an integer vector; `full` also clears non-leading pivot entries.
    /// Returns `(residual, alpha, tag)` with `residual = alpha*v - Σ tag_j v_j`.
    fn reduce_int(&self, mut r: IVec, full: bool, want_tag: bool) -> (IVec, Q, QVec) {
        let mut alpha = Q::one();
        let mut tag: QVec = Vec::new();
        let mut cursor = 0usize;
        loop {
            let pos = r[cursor.min(r.len())..]
                .iter()
                .position(|(i, _)| self.pivot_of.contains_key(i))
                .map(|p| p + cursor.min(r.len()));
            let Some(pos) = pos else { break };
            if !full && pos != 0 {
                break;
            }
            let idx = r[pos].0;
            let row = self.pivot_of[&idx];
            let u = &self.rows[row];
            let a = &u[0].1;
            let b = &r[pos].1;
            let g = a.gcd(b);
            let (a2, b2) = (a / &g, b / &g);
            r = lin_comb(&a2, &r, &(-&b2), u);
            if want_tag {
                let aq = Q::from_integer(a2.clone());
                alpha *= &aq;
                tag = lin_comb(&aq, &tag, &Q::from_integer(b2.clone()), &self.tags[row]);
            } else {
                alpha *= Q::from_integer(a2.clone());
            }
            let c = content(&r);
            if !c.is_zero() && !c.is_one() {
                for e in &mut r {
                    e.1 /= &c;
                }
                let cq = Q::from_integer(c);
                alpha /= &cq;
                if want_tag {
                    tag = qvec_scale(&(Q::one() / &cq), &tag);
                }
            }
            cursor = pos;
            if r.is_empty() {
                break;
            }
        }
        (r, alpha, tag)
    }

    pub fn insert(&mut self, v: &QVec) -> Inserted {
        let id = self.inserted;
        self.inserted += 1;
        let (w, scale) = to_primitive(v);
        if w.is_empty() {
            return Inserted::Dependent(if self.tagged { vec![(id, Q::one())] } else { Vec::new() });
        }
        let (r, alpha, tag) = self.reduce_int(w, false, self.tagged);
        // r = alpha*w - Σ tag_j v_j  and  w = v/scale
        let own = (id, &alpha / &scale);
        if r.is_empty() {
            if !self.tagged {
                return Inserted::Dependent(Vec::new());
            }
            let mut rel = qvec_scale(&-Q::one(), &tag);
            rel.push(own);
            return Inserted::Dependent(qvec_from_unsorted(rel));
        }
        let lead = r[0].0;
        let (mut r, flip) = if r[0].1.is_negative() {
            (r.into_iter().map(|(i, x)| (i, -x)).collect::<IVec>(), -Q::one())
        } else {
            (r, Q::one())
        };
        r.shrink_to_fit();
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(r);
        if self.tagged {
            let mut t = qvec_scale(&-flip.clone(), &tag);
            t.push((own.0, own.1 * flip));
            self.tags.push(qvec_from_unsorted(t));
        } else {
            self.tags.push(Vec::new());
        }
        Inserted::Pivot(lead)
    }

    /// Fully reduces `v` modulo the span: `v = residual + Σ c_j v_j` where the
    /// residual has no entries at pivot indices. Returns `(residual, c)`;
    /// `c` is empty unless tagging is on.
    pub fn reduce(&self, v: &QVec) -> (QVec, QVec) {
        let (w, scale) = to_primitive(v);
        if w.is_empty() {
            return (Vec::new(), Vec::new());
        }
        let (r, alpha, tag) = self.reduce_int(w, true, self.tagged);
        // r = alpha*v/scale - Σ tag_j v_j
        let f = &scale / &alpha;
        let res = r.into_iter().map(|(i, x)| (i, Q::from_integer(x) * &f)).collect();
        let comb = qvec_scale(&f, &tag);
        (res, comb)
    }

    pub fn contains(&self, v: &QVec) -> bool {
        let (w, _) = to_primitive(v);
        w.is_empty() || self.reduce_int(w, false, false).0.is_empty()
    }
}

/// Sparse matrix stored by columns; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<QVec>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { nrows: n, ncols: n, cols: (0..n).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn from_cols(nrows: usize, cols: Vec<QVec>) -> Self {
        debug_assert!(cols.iter().flatten().all(|(i, _)| *i < nrows));
        SparseMat { nrows, ncols: cols.len(), cols }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, t: Vec<(usize, usize, Q)>) -> Self {
        let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); ncols];
        for (i, j, v) in t {
            cols[j].push((i, v));
        }
        SparseMat { nrows, ncols, cols: cols.into_iter().map(qvec_from_unsorted).collect() }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        qvec_get(&self.cols[j], i)
    }

    pub fn transpose(&self) -> SparseMat {
        let mut cols: Vec<QVec> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMat { nrows: self.ncols, ncols: self.nrows, cols }
    }

    pub fn mul_vec(&self, x: &QVec) -> QVec {
        let mut acc = Vec::new();
        for (j, a) in x {
            for (i, v) in &self.cols[*j] {
                acc.push((*i, v * a));
            }
        }
        qvec_from_unsorted(acc)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        SparseMat {
            nrows: self.nrows,
            ncols: other.ncols,
            cols: other.cols.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.axpy(&-Q::one(), other)
    }

    /// `self + a*other`.
    pub fn axpy(&self, a: &Q, other: &SparseMat) -> SparseMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            cols: self.cols.iter().zip(&other.cols).map(|(x, y)| lin_comb(&Q::one(), x, a, y)).collect(),
        }
    }

    pub fn scale(&self, a: &Q) -> SparseMat {
        SparseMat { nrows: self.nrows, ncols: self.ncols, cols: self.cols.iter().map(|c| qvec_scale(a, c)).collect() }
    }

    /// Restriction to a subset of columns, in the given order.
    pub fn select_cols(&self, js: &[usize]) -> SparseMat {
        SparseMat { nrows: self.nrows, ncols: js.len(), cols: js.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    /// Rank by fraction-free elimination; sparser vectors are inserted first.
    pub fn rank(&self) -> usize {
        let t;
        let vecs = if self.nrows < self.ncols {
            t = self.transpose();
            &t.cols
        } else {
            &self.cols
        };
        let mut order: Vec<usize> = (0..vecs.len()).collect();
        order.sort_by_key(|&j| (vecs[j].len(), j));
        let mut e = Echelon::new();
        for j in order {
            if e.rank() == self.nrows.min(self.ncols) {
                break;
            }
            e.insert(&vecs[j]);
        }
        e.rank()
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<QVec> {
        let mut e = Echelon::tagged();
        let mut out = Vec::new();
        for c in &self.cols {
            if let Inserted::Dependent(rel) = e.insert(c) {
                out.push(rel);
            }
        }
        out
    }

    pub fn to_dense(&self) -> DenseMat {
        let mut d = DenseMat::zero(self.nrows, self.ncols);
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c {
                d.data[*i][j] = v.clone();
            }
        }
        d
    }
}

/// Dense rational matrix; the second, independent rank oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat {
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<Vec<Q>>,
}

impl DenseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        DenseMat { nrows, ncols, data: vec![vec![Q::zero(); ncols]; nrows] }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        DenseMat { nrows: rows.len(), ncols, data: rows }
    }

    /// Rank by Gauss–Jordan elimination with rational pivots.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(p) = (rank..self.nrows).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            let inv = Q::one() / &a[rank][col];
            for x in a[rank].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.nrows, self.ncols);
        let mut a = self.data.clone();
        let mut det = Q::one();
        for col in 0..self.ncols {
            let Some(p) = (col..self.nrows).find(|&r| !a[r][col].is_zero()) else { return Q::zero() };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            det *= &a[col][col];
            let inv = Q::one() / &a[col][col];
            for r in col + 1..self.nrows {
                if !a[r][col].is_zero() {
                    let f = &a[r][col] * &inv;
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        det
    }
}

/// Integer value of a rational known to be integral.
pub fn q_to_int(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[i64]) -> QVec {
        v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, q(*x))).collect()
    }

    #[test]
    fn rank_and_kernel_small() {
        let m = SparseMat::from_cols(3, vec![col(&[1, 2, 3]), col(&[2, 4, 6]), col(&[0, 1, 1]), col(&[1, 3, 4])]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.to_dense().rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn reduce_reports_combination() {
        let mut e = Echelon::tagged();
        e.insert(&col(&[2, 0, 1]));
        e.insert(&col(&[0, 3, 1]));
        let v = col(&[4, 9, 5]);
        let (res, comb) = e.reduce(&v);
        assert!(res.is_empty());
        assert_eq!(comb, vec![(0, q(2)), (1, q(3))]);
        let w = col(&[0, 0, 1]);
        let (res, comb) = e.reduce(&w);
        // w = res + Σ comb_j v_j
        let mut back = res.clone();
        back = qvec_add(&back, &qvec_scale(&qvec_get(&comb, 0), &col(&[2, 0, 1])));
        back = qvec_add(&back, &qvec_scale(&qvec_get(&comb, 1), &col(&[0, 3, 1])));
        assert_eq!(back, w);
        assert!(res.iter().all(|(i, _)| !e.is_pivot(*i)));
    }

    #[test]
    fn determinant_matches() {
        let d = DenseMat::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(3)]]);
        assert_eq!(d.determinant(), q(5));
    }
}
