//! Commutative quadratic algebras A = S(V*)/(Q), their graded pieces, and the
//! Koszul dual A^! = T(V)/(R) with R = Ann(Q) ∩ S²V, where the generators of
//! A^! are odd so that A^! = U(L) for a Lie superalgebra L.
//!
//! Every presentation carries a torus grading (a weight per generator, the
//! quadrics being weight-homogeneous). All linear algebra is done one
//! (degree, weight) block at a time.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{qvec_from_unsorted, Echelon, QVec};
use crate::Q;

/// Torus weight.
pub type Wt = Vec<i32>;
/// Exponent vector of a commutative monomial.
pub type Mono = Vec<u8>;

/// Largest number of nonzero entries in the spanning set of a single block.
pub const ENTRY_BOUND: usize = 2_000_000;

fn wt_add(a: &[i32], b: &[i32]) -> Wt {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn wt_sub(a: &[i32], b: &[i32]) -> Wt {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A quadric q = Σ_{i≤j} c_ij x_i x_j in polynomial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    pub terms: BTreeMap<(usize, usize), Q>,
}

impl Quadric {
    /// Entry a_ij of the symmetric matrix with q = Σ_{i,j} a_ij x_i x_j.
    pub fn matrix_entry(&self, i: usize, j: usize) -> Q {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let c = self.terms.get(&(a, b)).cloned().unwrap_or_else(Q::zero);
        if a == b {
            c
        } else {
            c / Q::from_integer(2.into())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PresetKind {
    Pluecker(usize),
    Veronese(usize),
    MostSingular(usize),
    Custom,
}

#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    pub name: String,
    pub kind: PresetKind,
    pub n_gens: usize,
    pub gen_weights: Vec<Wt>,
    pub quadrics: Vec<Quadric>,
    /// Whether the symmetric group permuting weight coordinates acts on the
    /// presentation, so that block dimensions are invariant under sorting weights.
    pub symmetric: bool,
    /// Human-readable generator labels.
    pub labels: Vec<String>,
}

#[derive(Deserialize)]
struct CustomJson {
    n_gens: usize,
    quadrics: Vec<Vec<[i64; 4]>>,
}

impl QuadraticPresentation {
    /// Checks weight homogeneity and linear independence of the quadrics.
    fn validated(self) -> Result<Self> {
        if self.gen_weights.len() != self.n_gens {
            return Err(Error::BadParams("one weight per generator required".into()));
        }
        let mut e = Echelon::new();
        let pairs: Vec<(usize, usize)> = (0..self.n_gens).flat_map(|i| (i..self.n_gens).map(move |j| (i, j))).collect();
        let idx: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        for (nu, q) in self.quadrics.iter().enumerate() {
            if q.terms.is_empty() {
                return Err(Error::BadParams(format!("quadric {nu} is zero")));
            }
            let mut ws = q.terms.keys().map(|&(i, j)| wt_add(&self.gen_weights[i], &self.gen_weights[j]));
            let w0 = ws.next().unwrap();
            if ws.any(|w| w != w0) {
                return Err(Error::BadParams(format!("quadric {nu} is not weight-homogeneous")));
            }
            for &(i, j) in q.terms.keys() {
                if i > j || j >= self.n_gens {
                    return Err(Error::BadParams(format!("quadric {nu} has bad index ({i},{j})")));
                }
            }
            let v = qvec_from_unsorted(q.terms.iter().map(|(p, c)| (idx[p], c.clone())).collect());
            if matches!(e.insert(&v), crate::linalg::Inserted::Dependent(_)) {
                return Err(Error::BadParams(format!("quadric {nu} is linearly dependent on the previous ones")));
            }
        }
        Ok(self)
    }

    pub fn quadric_weight(&self, nu: usize) -> Wt {
        let (i, j) = *self.quadrics[nu].terms.keys().next().expect("nonzero quadric");
        wt_add(&self.gen_weights[i], &self.gen_weights[j])
    }

    pub fn mono_weight(&self, m: &[u8]) -> Wt {
        let mut w = vec![0; self.weight_len()];
        for (i, &e) in m.iter().enumerate() {
            for (a, b) in w.iter_mut().zip(&self.gen_weights[i]) {
                *a += e as i32 * b;
            }
        }
        w
    }

    pub fn weight_len(&self) -> usize {
        self.gen_weights.first().map_or(0, Vec::len)
    }

    pub fn zero_weight(&self) -> Wt {
        vec![0; self.weight_len()]
    }

    /// Plücker embedding of Gr(2, N): generators x_ij (i<j), one quadric per
    /// 4-subset a<b<c<d: x_ab x_cd − x_ac x_bd + x_ad x_bc.
    pub fn pluecker(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::BadParams("pluecker needs N >= 4".into()));
        }
        let mut labels = Vec::new();
        let mut gen_weights = Vec::new();
        let mut idx = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                idx.insert((i, j), labels.len());
                labels.push(format!("x{}{}", i + 1, j + 1));
                let mut w = vec![0; n];
                w[i] = 1;
                w[j] = 1;
                gen_weights.push(w);
            }
        }
        let mut quadrics = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let mut t = BTreeMap::new();
                        let mut put = |p: (usize, usize), r: (usize, usize), s: i64| {
                            let (x, y) = (idx[&p], idx[&r]);
                            t.insert((x.min(y), x.max(y)), Q::from_integer(s.into()));
                        };
                        put((a, b), (c, d), 1);
                        put((a, c), (b, d), -1);
                        put((a, d), (b, c), 1);
                        quadrics.push(Quadric { terms: t });
                    }
                }
            }
        }
        QuadraticPresentation {
            name: format!("pluecker:{n}"),
            kind: PresetKind::Pluecker(n),
            n_gens: labels.len(),
            gen_weights,
            quadrics,
            symmetric: true,
            labels,
        }
        .validated()
    }

    /// Rational normal curve of degree n: for each s, x_{i0}x_{j0} − x_i x_j
    /// over the other pairs with i+j = s.
    pub fn veronese(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParams("veronese needs n >= 2".into()));
        }
        let mut quadrics = Vec::new();
        for s in 0..=2 * n {
            let pairs: Vec<(usize, usize)> = (0..=n).filter(|&i| s >= i && s - i >= i && s - i <= n).map(|i| (i, s - i)).collect();
            for p in pairs.iter().skip(1) {
                let mut t = BTreeMap::new();
                t.insert(pairs[0], Q::one());
                t.insert(*p, -Q::one());
                quadrics.push(Quadric { terms: t });
            }
        }
        QuadraticPresentation {
            name: format!("veronese:{n}"),
            kind: PresetKind::Veronese(n),
            n_gens: n + 1,
            gen_weights: (0..=n as i32).map(|i| vec![i]).collect(),
            quadrics,
            symmetric: false,
            labels: (0..=n).map(|i| format!("x{i}")).collect(),
        }
        .validated()
    }

    /// A = S(V*)/(S²V*).
    pub fn most_singular(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadParams("most_singular needs n >= 1".into()));
        }
        let mut quadrics = Vec::new();
        for i in 0..n {
            for j in i..n {
                quadrics.push(Quadric { terms: BTreeMap::from([((i, j), Q::one())]) });
            }
        }
        QuadraticPresentation {
            name: format!("most_singular:{n}"),
            kind: PresetKind::MostSingular(n),
            n_gens: n,
            gen_weights: (0..n).map(|i| (0..n).map(|j| i32::from(i == j)).collect()).collect(),
            quadrics,
            symmetric: true,
            labels: (1..=n).map(|i| format!("x{i}")).collect(),
        }
        .validated()
    }

    /// `{"n_gens": k, "quadrics": [[[i, j, num, den], …], …]}` with upper-triangle
    /// entries a_ij (i ≤ j) of the symmetric matrices; trivial torus grading.
    pub fn custom_from_json(text: &str) -> Result<Self> {
        let c: CustomJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut quadrics = Vec::new();
        for (nu, entries) in c.quadrics.iter().enumerate() {
            let mut t: BTreeMap<(usize, usize), Q> = BTreeMap::new();
            for &[i, j, num, den] in entries {
                if i < 0 || j < 0 || i > j || den == 0 || j as usize >= c.n_gens {
                    return Err(Error::BadParams(format!("quadric {nu}: bad entry [{i},{j},{num},{den}]")));
                }
                let mut v = Q::new(num.into(), den.into());
                if i != j {
                    v *= Q::from_integer(2.into());
                }
                *t.entry((i as usize, j as usize)).or_insert_with(Q::zero) += v;
            }
            t.retain(|_, v| !v.is_zero());
            quadrics.push(Quadric { terms: t });
        }
        QuadraticPresentation {
            name: "custom".into(),
            kind: PresetKind::Custom,
            n_gens: c.n_gens,
            gen_weights: vec![Vec::new(); c.n_gens],
            quadrics,
            symmetric: false,
            labels: (1..=c.n_gens).map(|i| format!("x{i}")).collect(),
        }
        .validated()
    }

    /// `pluecker:5`, `veronese:3`, `most_singular:2`.
    pub fn from_preset(spec: &str) -> Result<Self> {
        let (name, arg) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("preset {spec:?} needs name:param")))?;
        let n: usize = arg.trim().parse().map_err(|_| Error::Parse(format!("bad preset parameter {arg:?}")))?;
        match name.trim() {
            "pluecker" | "plucker" => Self::pluecker(n),
            "veronese" => Self::veronese(n),
            "most_singular" | "most-singular" => Self::most_singular(n),
            other => Err(Error::Parse(format!("unknown preset {other:?}"))),
        }
    }

    /// Sorted weight and the size of its orbit, when the symmetry applies.
    pub fn canonical_weight(&self, w: &[i32]) -> Wt {
        let mut v = w.to_vec();
        if self.symmetric {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        v
    }
}

/// Number of distinct permutations of `w`.
pub fn orbit_size(w: &[i32]) -> usize {
    let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
    for &x in w {
        *counts.entry(x).or_default() += 1;
    }
    let fact = |n: usize| (1..=n).fold(BigInt::one(), |a, k| a * k);
    let mut r = fact(w.len());
    for c in counts.values() {
        r /= fact(*c);
    }
    r.to_usize().expect("orbit size fits usize")
}

/// Monomials of degree q in n variables, lexicographically decreasing.
pub fn monomials(n: usize, q: usize) -> Vec<Mono> {
    fn rec(n: usize, q: usize, cur: &mut Mono, out: &mut Vec<Mono>) {
        if cur.len() == n - 1 {
            cur.push(q as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=q).rev() {
            cur.push(e as u8);
            rec(n, q - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if q == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, q, &mut Vec::new(), &mut out);
    out
}

pub fn mono_mul(a: &[u8], b: &[u8]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A_{q,w}: monomial basis of S^q_w, the echelonized ideal, and the standard
/// (non-pivot) monomials forming a basis of the quotient.
#[derive(Debug)]
pub struct ABlock {
    pub monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    ideal: Echelon,
    /// Monomial indices of the standard monomials.
    pub basis: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl ABlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_mono(&self, k: usize) -> &Mono {
        &self.monos[self.basis[k]]
    }

    /// Coordinates of a monomial of this block in the standard basis.
    pub fn normal_form(&self, m: &[u8]) -> QVec {
        let i = self.index[m];
        let (res, _) = self.ideal.reduce(&vec![(i, Q::one())]);
        let mut out: QVec = res.into_iter().map(|(j, c)| (self.pos[&j], c)).collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

type Cache<K, V> = Mutex<HashMap<K, Arc<V>>>;

fn cached<K: std::hash::Hash + Eq + Clone, V>(c: &Cache<K, V>, k: &K, make: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
    if let Some(v) = c.lock().unwrap().get(k) {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    Ok(c.lock().unwrap().entry(k.clone()).or_insert(v).clone())
}

/// The algebra A with lazily computed graded pieces.
pub struct Algebra {
    pub pres: QuadraticPresentation,
    reverse_order: bool,
    by_weight: Cache<usize, BTreeMap<Wt, Vec<Mono>>>,
    blocks: Cache<(usize, Wt), ABlock>,
}

impl Algebra {
    pub fn new(pres: QuadraticPresentation) -> Self {
        Algebra { pres, reverse_order: false, by_weight: Mutex::default(), blocks: Mutex::default() }
    }

    /// Same algebra, with monomials indexed in the opposite order (so a
    /// different set of standard monomials is chosen).
    pub fn with_reversed_order(pres: QuadraticPresentation) -> Self {
        Algebra { reverse_order: true, ..Self::new(pres) }
    }

    /// Monomials of S^q grouped by weight.
    pub fn monomials_by_weight(&self, q: usize) -> Arc<BTreeMap<Wt, Vec<Mono>>> {
        cached(&self.by_weight, &q, || {
            let mut g: BTreeMap<Wt, Vec<Mono>> = BTreeMap::new();
            for m in monomials(self.pres.n_gens, q) {
                g.entry(self.pres.mono_weight(&m)).or_default().push(m);
            }
            if self.reverse_order {
                g.values_mut().for_each(|v| v.reverse());
            }
            Ok(g)
        })
        .expect("infallible")
    }

    /// Weights occurring in S^q.
    pub fn weights(&self, q: usize) -> Vec<Wt> {
        self.monomials_by_weight(q).keys().cloned().collect()
    }

    pub fn block(&self, q: usize, w: &Wt) -> Result<Arc<ABlock>> {
        cached(&self.blocks, &(q, w.clone()), || self.build_block(q, w))
    }

    fn build_block(&self, q: usize, w: &Wt) -> Result<ABlock> {
        let monos = self.monomials_by_weight(q).get(w).cloned().unwrap_or_default();
        let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut ideal = Echelon::new();
        if q >= 2 {
            let lower = self.monomials_by_weight(q - 2);
            let mut entries = 0usize;
            for (nu, quad) in self.pres.quadrics.iter().enumerate() {
                let rest = wt_sub(w, &self.pres.quadric_weight(nu));
                let Some(ms) = lower.get(&rest) else { continue };
                for m in ms {
                    let mut v = Vec::with_capacity(quad.terms.len());
                    for (&(i, j), c) in &quad.terms {
                        let mut e = m.clone();
                        e[i] += 1;
                        e[j] += 1;
                        v.push((index[&e], c.clone()));
                    }
                    entries += v.len();
                    if entries > ENTRY_BOUND {
                        return Err(Error::CutoffTooLarge { what: format!("ideal in degree q={q}"), needed: entries, bound: ENTRY_BOUND });
                    }
                    ideal.insert(&qvec_from_unsorted(v));
                    if ideal.rank() == monos.len() {
                        break;
                    }
                }
            }
        }
        let basis: Vec<usize> = (0..monos.len()).filter(|&i| !ideal.is_pivot(i)).collect();
        let pos = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Ok(ABlock { monos, index, ideal, basis, pos })
    }

    /// dim A_q, using the weight symmetry when available.
    pub fn dim(&self, q: usize) -> Result<usize> {
        let ws = self.weights(q);
        let reps: Vec<(Wt, usize)> = if self.pres.symmetric {
            let set: BTreeSet<Wt> = ws.iter().map(|w| self.pres.canonical_weight(w)).collect();
            set.into_iter().map(|w| {
                let k = orbit_size(&w);
                (w, k)
            }).collect()
        } else {
            ws.into_iter().map(|w| (w, 1)).collect()
        };
        let parts: Result<Vec<usize>> = reps.par_iter().map(|(w, k)| Ok(self.block(q, w)?.dim() * k)).collect();
        Ok(parts?.into_iter().sum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
}

pub fn algebra_dims(p: &QuadraticPresentation, cutoff: usize) -> Result<GradedDims> {
    let a = Algebra::new(p.clone());
    Ok(GradedDims { dims: (0..=cutoff).map(|q| a.dim(q)).collect::<Result<_>>()? })
}

/// A^!_{m,w}: A^!_m is spanned by pairs (basis element of A^!_{m-1}, generator)
/// modulo the image of A^!_{m-2}⊗R; a basis element is thus a word.
#[derive(Debug)]
pub struct DualBlock {
    /// (generator j, basis index in block (m-1, w - wt_j)) for each pair coordinate.
    pub pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    /// Pair coordinates of the basis elements.
    pub basis: Vec<usize>,
    /// Normal form of every pair, in basis coordinates.
    nf: Vec<QVec>,
}

impl DualBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The Koszul dual algebra A^!, with lazily computed graded pieces.
pub struct DualAlgebra {
    pub pres: QuadraticPresentation,
    /// R_w: for each weight, a basis of R in the form Σ c (i, j) y_i y_j over ordered pairs.
    rels: BTreeMap<Wt, Vec<Vec<((usize, usize), Q)>>>,
    blocks: Cache<(usize, Wt), DualBlock>,
    weights: Cache<usize, BTreeSet<Wt>>,
}

impl DualAlgebra {
    pub fn new(pres: QuadraticPresentation) -> Self {
        let n = pres.n_gens;
        // S²V basis u_ij = y_i y_j + y_j y_i (i<j) and u_ii = y_i y_i, paired with
        // the quadrics through the polynomial coefficients.
        let mut by_w: BTreeMap<Wt, Vec<(usize, usize)>> = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                by_w.entry(wt_add(&pres.gen_weights[i], &pres.gen_weights[j])).or_default().push((i, j));
            }
        }
        let mut rels = BTreeMap::new();
        for (w, pairs) in by_w {
            let quads: Vec<&Quadric> = (0..pres.quadrics.len()).filter(|&nu| pres.quadric_weight(nu) == w).map(|nu| &pres.quadrics[nu]).collect();
            // kernel of the pairing matrix (rows: quadrics, cols: pairs)
            let cols: Vec<QVec> = pairs
                .iter()
                .map(|p| quads.iter().enumerate().filter_map(|(r, q)| q.terms.get(p).map(|c| (r, c.clone()))).collect())
                .collect();
            let mat = crate::linalg::SparseMat::from_cols(quads.len(), cols);
            let ker = mat.kernel();
            let basis: Vec<Vec<((usize, usize), Q)>> = ker
                .into_iter()
                .map(|v| {
                    let mut r = Vec::new();
                    for (k, c) in v {
                        let (i, j) = pairs[k];
                        r.push(((i, j), c.clone()));
                        if i != j {
                            r.push(((j, i), c));
                        }
                    }
                    r
                })
                .collect();
            if !basis.is_empty() {
                rels.insert(w, basis);
            }
        }
        DualAlgebra { pres, rels, blocks: Mutex::default(), weights: Mutex::default() }
    }

    /// dim R = dim S²V - number of quadrics.
    pub fn relation_count(&self) -> usize {
        self.rels.values().map(Vec::len).sum()
    }

    pub fn weights(&self, m: usize) -> Arc<BTreeSet<Wt>> {
        cached(&self.weights, &m, || {
            Ok(if m == 0 {
                BTreeSet::from([self.pres.zero_weight()])
            } else {
                let prev = self.weights(m - 1);
                prev.iter().flat_map(|w| self.pres.gen_weights.iter().map(move |g| wt_add(w, g))).collect()
            })
        })
        .expect("infallible")
    }

    pub fn block(&self, m: usize, w: &Wt) -> Result<Arc<DualBlock>> {
        cached(&self.blocks, &(m, w.clone()), || self.build_block(m, w))
    }

    fn build_block(&self, m: usize, w: &Wt) -> Result<DualBlock> {
        if m == 0 {
            let dim = usize::from(*w == self.pres.zero_weight());
            return Ok(DualBlock {
                pairs: Vec::new(),
                pair_index: HashMap::new(),
                basis: (0..dim).collect(),
                nf: (0..dim).map(|k| vec![(k, Q::one())]).collect(),
            });
        }
        let mut pairs = Vec::new();
        for j in 0..self.pres.n_gens {
            let prev = self.block(m - 1, &wt_sub(w, &self.pres.gen_weights[j]))?;
            for b in 0..prev.dim() {
                pairs.push((j, b));
            }
        }
        // order pairs by the word they represent (previous basis first, then generator)
        pairs.sort_by_key(|&(j, b)| (b, j));
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let mut ech = Echelon::new();
        if m >= 2 {
            for (rw, rs) in &self.rels {
                let cw = wt_sub(w, rw);
                let c_block = self.block(m - 2, &cw)?;
                for c in 0..c_block.dim() {
                    for r in rs {
                        let mut v: Vec<(usize, Q)> = Vec::new();
                        for ((i, j), coef) in r {
                            // (c·y_i) in A^!_{m-1}, then ⊗ y_j
                            let (_, ci) = self.mul_gen(m - 2, &cw, &vec![(c, Q::one())], *i)?;
                            for (b, x) in ci {
                                v.push((pair_index[&(*j, b)], x * coef));
                            }
                        }
                        ech.insert(&qvec_from_unsorted(v));
                    }
                }
            }
        }
        let basis: Vec<usize> = (0..pairs.len()).filter(|&k| !ech.is_pivot(k)).collect();
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(a, &k)| (k, a)).collect();
        let nf = (0..pairs.len())
            .map(|k| {
                let (res, _) = ech.reduce(&vec![(k, Q::one())]);
                let mut out: QVec = res.into_iter().map(|(i, c)| (pos[&i], c)).collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        Ok(DualBlock { pairs, pair_index, basis, nf })
    }

    /// Right multiplication by the generator y_j: A^!_{m,w} → A^!_{m+1,w+wt_j}.
    pub fn mul_gen(&self, m: usize, w: &Wt, x: &QVec, j: usize) -> Result<(Wt, QVec)> {
        let w2 = wt_add(w, &self.pres.gen_weights[j]);
        let blk = self.block(m + 1, &w2)?;
        let mut acc: Vec<(usize, Q)> = Vec::new();
        for (b, c) in x {
            for (k, d) in &blk.nf[blk.pair_index[&(j, *b)]] {
                acc.push((*k, c * d));
            }
        }
        Ok((w2, qvec_from_unsorted(acc)))
    }

    /// The word (sequence of generators) of a basis element.
    pub fn word(&self, m: usize, w: &Wt, k: usize) -> Result<Vec<usize>> {
        if m == 0 {
            return Ok(Vec::new());
        }
        let blk = self.block(m, w)?;
        let (j, b) = blk.pairs[blk.basis[k]];
        let mut out = self.word(m - 1, &wt_sub(w, &self.pres.gen_weights[j]), b)?;
        out.push(j);
        Ok(out)
    }

    /// Product x·y of homogeneous elements.
    pub fn mul(&self, (m1, w1, x): (usize, &Wt, &QVec), (m2, w2, y): (usize, &Wt, &QVec)) -> Result<(usize, Wt, QVec)> {
        let wt = wt_add(w1, w2);
        let mut acc: Vec<(usize, Q)> = Vec::new();
        for (k, c) in y {
            let mut cur_w = w1.clone();
            let mut cur = x.clone();
            for (step, j) in self.word(m2, w2, *k)?.into_iter().enumerate() {
                let (nw, nv) = self.mul_gen(m1 + step, &cur_w, &cur, j)?;
                cur_w = nw;
                cur = nv;
            }
            acc.extend(cur.into_iter().map(|(i, d)| (i, d * c)));
        }
        Ok((m1 + m2, wt, qvec_from_unsorted(acc)))
    }

    pub fn dim(&self, m: usize) -> Result<usize> {
        let ws: Vec<Wt> = self.weights(m).iter().cloned().collect();
        let reps: Vec<(Wt, usize)> = if self.pres.symmetric {
            let set: BTreeSet<Wt> = ws.iter().map(|w| self.pres.canonical_weight(w)).collect();
            set.into_iter().map(|w| {
                let k = orbit_size(&w);
                (w, k)
            }).collect()
        } else {
            ws.into_iter().map(|w| (w, 1)).collect()
        };
        // the recursion needs unsorted lower blocks, so blocks are built sequentially
        let mut total = 0;
        for (w, k) in reps {
            total += self.block(m, &w)?.dim() * k;
        }
        Ok(total)
    }
}

pub fn dual_dims(p: &QuadraticPresentation, cutoff: usize) -> Result<GradedDims> {
    let d = DualAlgebra::new(p.clone());
    Ok(GradedDims { dims: (0..=cutoff).map(|m| d.dim(m)).collect::<Result<_>>()? })
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub preset: String,
    pub algebra: Vec<usize>,
    pub dual: Vec<usize>,
    /// Σ_{i+j=m} (-1)^i dim A_i dim A^!_j for m = 0..=cutoff.
    pub sums: Vec<i64>,
    pub pass: bool,
}

/// H_A(-t)·H_{A^!}(t) = 1 up to the cutoff.
pub fn koszul_hilbert_check(p: &QuadraticPresentation, cutoff: usize) -> Result<HilbertReport> {
    let a = algebra_dims(p, cutoff)?.dims;
    let d = dual_dims(p, cutoff)?.dims;
    let sums: Vec<i64> = (0..=cutoff)
        .map(|m| (0..=m).map(|i| if i % 2 == 0 { 1 } else { -1 } * (a[i] * d[m - i]) as i64).sum())
        .collect();
    let pass = sums[0] == 1 && sums[1..].iter().all(|&s| s == 0);
    Ok(HilbertReport { preset: p.name.clone(), algebra: a, dual: d, sums, pass })
}

fn binom(n: &BigInt, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Series Π_{m odd}(1+t^m)^{ℓ_m} Π_{m even}(1-t^m)^{-ℓ_m} truncated at `cutoff`.
pub fn super_pbw_series(lie: &[usize], cutoff: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); cutoff + 1];
    s[0] = BigInt::one();
    for (m, &l) in lie.iter().enumerate().skip(1) {
        if l == 0 || m > cutoff {
            continue;
        }
        let l = BigInt::from(l);
        let factor: Vec<BigInt> = (0..=cutoff / m)
            .map(|k| if m % 2 == 1 { binom(&l, k) } else { binom(&(&l + k - 1usize), k) })
            .collect();
        let mut out = vec![BigInt::zero(); cutoff + 1];
        for (d, c) in s.iter().enumerate() {
            for (k, f) in factor.iter().enumerate() {
                if d + m * k <= cutoff {
                    out[d + m * k] += c * f;
                }
            }
        }
        s = out;
    }
    s
}

/// Dimensions ℓ_m of L (index 0 unused) from A^! = U(L) by super-PBW inversion.
pub fn lie_dims_from_dual(dual: &[usize]) -> Result<Vec<usize>> {
    let cutoff = dual.len() - 1;
    let mut lie = vec![0usize; cutoff + 1];
    for m in 1..=cutoff {
        let s = super_pbw_series(&lie, m);
        let l = BigInt::from(dual[m]) - &s[m];
        if l.is_negative() {
            return Err(Error::NonIntegerSolution(format!("negative dimension {l} for L_{m}")));
        }
        lie[m] = l.to_usize().expect("small");
    }
    Ok(lie)
}

pub fn lie_dims(p: &QuadraticPresentation, cutoff: usize) -> Result<Vec<usize>> {
    lie_dims_from_dual(&dual_dims(p, cutoff)?.dims)
}
