//! The Lie superalgebra L with U(L) = A^!, realized inside A^!; the Chevalley
//! complex of L≥2 and its cohomology algebra; the homological perturbation
//! lemma and its application comparing H(L≥2) with the syzygies of A.
//!
//! Chevalley signs. Chains are normal-ordered monomials ē₁⋯ē_n in S(ΠL)
//! (ē has parity |e|+1). They live in the algebra generated by L and ΠL with
//! [ē, ē′] = 0 and [e, ē′] = (-1)^{|e|} \overline{[e, e′]}, on which the odd
//! derivation d(e) = 0, d(ē) = e is well defined. The chain differential is
//! d applied to a monomial, followed by moving the produced e to the far
//! left, where the augmentation kills it. Only the bracket terms survive:
//! ē_k e = (-1)^{|ē_k||e|} e ē_k + \overline{[e_k, e]}. Cochains are the
//! dual spaces with the transposed differential.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{BettiTable, TorAlgebra};
use crate::linalg::{qvec_from_unsorted, qvec_get, DenseMat, Echelon, Inserted, QVec, SparseMat};
use crate::quadalg::{orbit_size, DualAlgebra, QuadraticPresentation, Wt};
use crate::Q;

fn sgn(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

#[derive(Clone, Debug)]
pub struct LieElem {
    pub deg: usize,
    pub weight: Wt,
    /// Coordinates in the basis of A^!_{deg, weight}.
    pub vec: QVec,
}

impl LieElem {
    /// Parity of the element of L (degree mod 2).
    pub fn odd(&self) -> bool {
        self.deg % 2 == 1
    }
}

struct LieBlock {
    /// Global indices of the basis elements of this block.
    members: Vec<usize>,
    ech: Echelon,
    /// Inserted position → local index among `members`.
    tag_to_local: HashMap<usize, usize>,
}

/// L_1 ⊕ … ⊕ L_cutoff inside A^!. The global basis is ordered by decreasing
/// degree, so that normal-ordered Chevalley monomials list L≥2 factors first.
pub struct TruncatedLie {
    pub cutoff: usize,
    pub dual: DualAlgebra,
    pub elems: Vec<LieElem>,
    blocks: HashMap<(usize, Wt), LieBlock>,
    brackets: Mutex<HashMap<(usize, usize), QVec>>,
}

impl TruncatedLie {
    pub fn pres(&self) -> &QuadraticPresentation {
        &self.dual.pres
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.cutoff + 1];
        for e in &self.elems {
            d[e.deg] += 1;
        }
        d
    }

    /// Global indices of the basis of L_deg, in order.
    pub fn degree_indices(&self, deg: usize) -> Vec<usize> {
        (0..self.elems.len()).filter(|&g| self.elems[g].deg == deg).collect()
    }

    /// Coordinates (over global indices) of an element of A^!_{deg,w} lying in L.
    pub fn lie_coords(&self, deg: usize, w: &Wt, v: &QVec) -> Result<QVec> {
        if v.is_empty() {
            return Ok(Vec::new());
        }
        let b = self
            .blocks
            .get(&(deg, w.clone()))
            .ok_or_else(|| Error::DimMismatch(format!("no L_{deg} in weight {w:?}")))?;
        let (rest, comb) = b.ech.reduce(v);
        if !rest.is_empty() {
            return Err(Error::DimMismatch(format!("element of A^!_{deg} is not in L")));
        }
        Ok(qvec_from_unsorted(comb.into_iter().map(|(t, c)| (b.members[b.tag_to_local[&t]], c)).collect()))
    }

    /// Super-bracket [x, y] = xy - (-1)^{|x||y|} yx of basis elements.
    pub fn bracket(&self, i: usize, j: usize) -> Result<QVec> {
        if let Some(v) = self.brackets.lock().unwrap().get(&(i, j)) {
            return Ok(v.clone());
        }
        let (x, y) = (&self.elems[i], &self.elems[j]);
        let deg = x.deg + y.deg;
        if deg > self.cutoff {
            return Err(Error::CutoffTooLarge { what: "Lie bracket degree".into(), needed: deg, bound: self.cutoff });
        }
        let (_, w, xy) = self.dual.mul((x.deg, &x.weight, &x.vec), (y.deg, &y.weight, &y.vec))?;
        let (_, _, yx) = self.dual.mul((y.deg, &y.weight, &y.vec), (x.deg, &x.weight, &x.vec))?;
        let s = -sgn(x.odd() && y.odd());
        let v = crate::linalg::qvec_axpy(&Q::one(), &xy, &s, &yx);
        let out = self.lie_coords(deg, &w, &v)?;
        self.brackets.lock().unwrap().insert((i, j), out.clone());
        Ok(out)
    }

    /// Checks [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] on all basis triples
    /// of total degree ≤ cutoff; returns the number of triples checked.
    pub fn check_jacobi(&self) -> Result<usize> {
        let n = self.elems.len();
        let mut count = 0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.elems[x].deg + self.elems[y].deg + self.elems[z].deg > self.cutoff {
                        continue;
                    }
                    let lhs = self.bracket_vec(x, &self.bracket(y, z)?)?;
                    let a = self.vec_bracket(&self.bracket(x, y)?, z)?;
                    let b = self.bracket_vec(y, &self.bracket(x, z)?)?;
                    let s = sgn(self.elems[x].odd() && self.elems[y].odd());
                    let rhs = crate::linalg::qvec_axpy(&Q::one(), &a, &s, &b);
                    if lhs != rhs {
                        return Err(Error::DimMismatch(format!("super-Jacobi fails on ({x},{y},{z})")));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    fn bracket_vec(&self, x: usize, v: &QVec) -> Result<QVec> {
        let mut acc = Vec::new();
        for (j, c) in v {
            acc.extend(self.bracket(x, *j)?.into_iter().map(|(k, d)| (k, d * c)));
        }
        Ok(qvec_from_unsorted(acc))
    }

    fn vec_bracket(&self, v: &QVec, y: usize) -> Result<QVec> {
        let mut acc = Vec::new();
        for (j, c) in v {
            acc.extend(self.bracket(*j, y)?.into_iter().map(|(k, d)| (k, d * c)));
        }
        Ok(qvec_from_unsorted(acc))
    }

    /// ⟨u, q⟩ for u ∈ A^!_2 and a quadric q = Σ a_ij x_i x_j, with
    /// ⟨y_i y_j, q⟩ = a_ij (well defined because R annihilates Q).
    pub fn pair_with_quadric(&self, w: &Wt, u: &QVec, nu: usize) -> Result<Q> {
        let q = &self.pres().quadrics[nu];
        let mut s = Q::zero();
        for (k, c) in u {
            let word = self.dual.word(2, w, *k)?;
            s += c * q.matrix_entry(word[0], word[1]);
        }
        Ok(s)
    }

    /// Structure constants as JSON records {"deg_a","deg_b","i","j","coeffs"},
    /// with indices local to each degree and coeffs as [k, num, den].
    pub fn structure_constants_json(&self) -> Result<serde_json::Value> {
        let local: HashMap<usize, usize> = (1..=self.cutoff)
            .flat_map(|d| self.degree_indices(d).into_iter().enumerate().map(|(l, g)| (g, l)).collect::<Vec<_>>())
            .collect();
        let mut out = Vec::new();
        for a in 1..=self.cutoff {
            for b in a..=self.cutoff - a {
                for (i, &gi) in self.degree_indices(a).iter().enumerate() {
                    for (j, &gj) in self.degree_indices(b).iter().enumerate() {
                        let br = self.bracket(gi, gj)?;
                        if br.is_empty() {
                            continue;
                        }
                        let coeffs: Vec<(usize, String, String)> =
                            br.iter().map(|(k, c)| (local[k], c.numer().to_string(), c.denom().to_string())).collect();
                        out.push(serde_json::json!({"deg_a": a, "deg_b": b, "i": i, "j": j, "coeffs": coeffs}));
                    }
                }
            }
        }
        Ok(serde_json::Value::Array(out))
    }
}

/// L_m as the span of [y_j, L_{m-1}] inside A^!_m, weight by weight.
pub fn realize_lie(pres: &QuadraticPresentation, cutoff: usize) -> Result<TruncatedLie> {
    let dual = DualAlgebra::new(pres.clone());
    let n = pres.n_gens;
    // per degree: list of (weight, vec)
    let mut by_deg: Vec<Vec<(Wt, QVec)>> = vec![Vec::new(); cutoff + 1];
    if cutoff >= 1 {
        for j in 0..n {
            let (w, v) = dual.mul_gen(0, &pres.zero_weight(), &vec![(0, Q::one())], j)?;
            by_deg[1].push((w, v));
        }
    }
    for m in 2..=cutoff {
        let mut per_w: BTreeMap<Wt, (Echelon, Vec<QVec>)> = BTreeMap::new();
        let prev = by_deg[m - 1].clone();
        for j in 0..n {
            let yj = by_deg[1][j].clone();
            for (w, v) in &prev {
                let (_, wt, a) = dual.mul((1, &yj.0, &yj.1), (m - 1, w, v))?;
                let (_, _, b) = dual.mul((m - 1, w, v), (1, &yj.0, &yj.1))?;
                // [y, v] = yv + (-1)^m vy
                let c = crate::linalg::qvec_axpy(&Q::one(), &a, &sgn(m % 2 == 1), &b);
                if c.is_empty() {
                    continue;
                }
                let e = per_w.entry(wt).or_insert_with(|| (Echelon::new(), Vec::new()));
                if matches!(e.0.insert(&c), Inserted::Pivot(_)) {
                    e.1.push(c);
                }
            }
        }
        for (w, (_, vs)) in per_w {
            for v in vs {
                by_deg[m].push((w.clone(), v));
            }
        }
    }
    let mut elems = Vec::new();
    for m in (1..=cutoff).rev() {
        let mut list = by_deg[m].clone();
        if m > 1 {
            // degree 1 keeps the generator order
            list.sort_by(|a, b| a.0.cmp(&b.0));
        }
        for (w, v) in list {
            elems.push(LieElem { deg: m, weight: w, vec: v });
        }
    }
    let mut blocks: HashMap<(usize, Wt), LieBlock> = HashMap::new();
    for (g, e) in elems.iter().enumerate() {
        let b = blocks.entry((e.deg, e.weight.clone())).or_insert_with(|| LieBlock {
            members: Vec::new(),
            ech: Echelon::tagged(),
            tag_to_local: HashMap::new(),
        });
        let t = b.ech.inserted();
        b.ech.insert(&e.vec);
        b.tag_to_local.insert(t, b.members.len());
        b.members.push(g);
    }
    let lie = TruncatedLie { cutoff, dual, elems, blocks, brackets: Mutex::default() };
    let pbw = crate::quadalg::lie_dims(pres, cutoff)?;
    let dims = lie.dims();
    if dims[1..] != pbw[1..] {
        return Err(Error::DimMismatch(format!("realized L dims {:?} vs PBW inversion {:?}", &dims[1..], &pbw[1..])));
    }
    Ok(lie)
}

/// A normal-ordered Chevalley monomial: nondecreasing global indices.
pub type ChainMono = Vec<usize>;

/// Chevalley chain/cochain complex of L≥min_deg, truncated at internal degree
/// `lie.cutoff`, split into (internal degree, weight) blocks.
pub struct ChevalleyComplex<'a> {
    pub lie: &'a TruncatedLie,
    pub min_deg: usize,
    monos: Mutex<HashMap<usize, std::sync::Arc<BTreeMap<Wt, Vec<ChainMono>>>>>,
}

impl<'a> ChevalleyComplex<'a> {
    pub fn new(lie: &'a TruncatedLie, min_deg: usize) -> Self {
        ChevalleyComplex { lie, min_deg, monos: Mutex::default() }
    }

    /// Parity of ē for the global element g.
    fn bar_odd(&self, g: usize) -> bool {
        self.lie.elems[g].deg.is_multiple_of(2)
    }

    fn factors(&self) -> Vec<usize> {
        (0..self.lie.elems.len()).filter(|&g| self.lie.elems[g].deg >= self.min_deg).collect()
    }

    /// Chain monomials of internal degree q grouped by weight, sorted by length.
    pub fn monomials(&self, q: usize) -> std::sync::Arc<BTreeMap<Wt, Vec<ChainMono>>> {
        if let Some(v) = self.monos.lock().unwrap().get(&q) {
            return v.clone();
        }
        let fs = self.factors();
        let mut all = Vec::new();
        fn rec(cc: &ChevalleyComplex, fs: &[usize], start: usize, left: usize, cur: &mut ChainMono, out: &mut Vec<ChainMono>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for k in start..fs.len() {
                let g = fs[k];
                let d = cc.lie.elems[g].deg;
                if d > left {
                    continue;
                }
                cur.push(g);
                let next = if cc.bar_odd(g) { k + 1 } else { k };
                rec(cc, fs, next, left - d, cur, out);
                cur.pop();
            }
        }
        rec(self, &fs, 0, q, &mut Vec::new(), &mut all);
        let zero = self.lie.pres().zero_weight();
        let mut g: BTreeMap<Wt, Vec<ChainMono>> = BTreeMap::new();
        for m in all {
            let w = m.iter().fold(zero.clone(), |a, &f| a.iter().zip(&self.lie.elems[f].weight).map(|(x, y)| x + y).collect());
            g.entry(w).or_default().push(m);
        }
        for v in g.values_mut() {
            v.sort_by_key(|m| (m.len(), m.clone()));
        }
        let g = std::sync::Arc::new(g);
        self.monos.lock().unwrap().insert(q, g.clone());
        g
    }

    pub fn block_basis(&self, q: usize, w: &Wt) -> Vec<ChainMono> {
        self.monomials(q).get(w).cloned().unwrap_or_default()
    }

    /// Sorts factors into normal order with Koszul signs; `None` if an odd
    /// factor repeats.
    pub fn normal_order(&self, mut f: Vec<usize>) -> Option<(bool, ChainMono)> {
        let mut neg = false;
        for i in 1..f.len() {
            let mut j = i;
            while j > 0 && f[j - 1] > f[j] {
                if self.bar_odd(f[j - 1]) && self.bar_odd(f[j]) {
                    neg = !neg;
                }
                f.swap(j - 1, j);
                j -= 1;
            }
        }
        if f.windows(2).any(|p| p[0] == p[1] && self.bar_odd(p[0])) {
            return None;
        }
        Some((neg, f))
    }

    /// Chain differential of one monomial, as (monomial, coefficient) terms.
    pub fn chain_d(&self, m: &ChainMono) -> Result<Vec<(ChainMono, Q)>> {
        let mut out = Vec::new();
        let mut prefix_odd = false;
        for i in 0..m.len() {
            let ei_odd = self.lie.elems[m[i]].odd();
            let mut acc = sgn(prefix_odd);
            for k in (0..i).rev() {
                for (g, c) in self.lie.bracket(m[k], m[i])? {
                    let mut f: Vec<usize> = Vec::with_capacity(m.len() - 1);
                    for (t, &x) in m.iter().enumerate() {
                        if t == k {
                            f.push(g);
                        } else if t != i {
                            f.push(x);
                        }
                    }
                    if let Some((neg, nf)) = self.normal_order(f) {
                        out.push((nf, &acc * c * sgn(neg)));
                    }
                }
                if self.bar_odd(m[k]) && ei_odd {
                    acc = -acc;
                }
            }
            prefix_odd ^= self.bar_odd(m[i]);
        }
        Ok(out)
    }

    /// Chain differential on the whole (q, w) block (all lengths at once).
    pub fn chain_matrix(&self, q: usize, w: &Wt) -> Result<SparseMat> {
        let basis = self.block_basis(q, w);
        let index: HashMap<&ChainMono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut cols = Vec::with_capacity(basis.len());
        for m in &basis {
            let mut col = Vec::new();
            for (t, c) in self.chain_d(m)? {
                let k = index.get(&t).ok_or_else(|| Error::DimMismatch(format!("chain term {t:?} outside its block")))?;
                col.push((*k, c));
            }
            cols.push(qvec_from_unsorted(col));
        }
        Ok(SparseMat::from_cols(basis.len(), cols))
    }

    /// Cochain differential: the transpose.
    pub fn cochain_matrix(&self, q: usize, w: &Wt) -> Result<SparseMat> {
        Ok(self.chain_matrix(q, w)?.transpose())
    }

    pub fn weight_classes(&self, q: usize) -> Vec<(Wt, usize)> {
        let pres = self.lie.pres();
        let ws: Vec<Wt> = self.monomials(q).keys().cloned().collect();
        if pres.symmetric {
            let set: BTreeSet<Wt> = ws.iter().map(|w| pres.canonical_weight(w)).collect();
            set.into_iter()
                .map(|w| {
                    let k = orbit_size(&w);
                    (w, k)
                })
                .collect()
        } else {
            ws.into_iter().map(|w| (w, 1)).collect()
        }
    }

    pub fn check_d_squared(&self, q: usize) -> Result<bool> {
        for w in self.monomials(q).keys() {
            let d = self.chain_matrix(q, w)?;
            if !d.mul(&d).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// dim H^i(L≥min_deg)_q for all i, per q ≤ q_cutoff: keys (i, q).
    pub fn cohomology_dims(&self, q_cutoff: usize) -> Result<BTreeMap<(usize, usize), usize>> {
        let mut out = BTreeMap::new();
        for q in 0..=q_cutoff.min(self.lie.cutoff) {
            for (w, mult) in self.weight_classes(q) {
                let basis = self.block_basis(q, &w);
                let d = self.chain_matrix(q, &w)?;
                let maxlen = basis.iter().map(Vec::len).max().unwrap_or(0);
                let mut dims = vec![0usize; maxlen + 2];
                let mut ranks = vec![0usize; maxlen + 2];
                for len in 0..=maxlen {
                    let cols: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].len() == len).collect();
                    dims[len] = cols.len();
                    ranks[len] = d.select_cols(&cols).rank();
                }
                for i in 0..=maxlen {
                    let h = dims[i] - ranks[i] - ranks[i + 1];
                    if h > 0 {
                        *out.entry((i, q)).or_insert(0) += h * mult;
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub preset: String,
    pub q_cutoff: usize,
    /// (p, q) → dim from the Koszul complex.
    pub koszul: Vec<((usize, usize), usize)>,
    /// (p, q) → dim H^{q-p}(L≥2)_q.
    pub chevalley: Vec<((usize, usize), usize)>,
    pub pass: bool,
}

/// H^i(L≥2)_q re-indexed as (p, q) = (q - i, q).
pub fn chevalley_table(pres: &QuadraticPresentation, q_cutoff: usize) -> Result<BettiTable> {
    let lie = realize_lie(pres, q_cutoff.max(1))?;
    let cc = ChevalleyComplex::new(&lie, 2);
    let h = cc.cohomology_dims(q_cutoff)?;
    let entries = h.into_iter().filter(|((i, q), _)| i <= q).map(|((i, q), d)| ((q - i, q), d)).collect();
    Ok(BettiTable { q_cutoff, entries })
}

pub fn check_theorem(pres: &QuadraticPresentation, q_cutoff: usize) -> Result<TheoremReport> {
    let b = crate::homology::betti_table(pres, q_cutoff)?;
    let c = chevalley_table(pres, q_cutoff)?;
    Ok(TheoremReport {
        preset: pres.name.clone(),
        q_cutoff,
        pass: b == c,
        koszul: b.entries.into_iter().collect(),
        chevalley: c.entries.into_iter().collect(),
    })
}

struct CohBlock {
    image: Echelon,
    reps: Echelon,
    offset: usize,
}

#[derive(Clone, Debug)]
pub struct Cocycle {
    pub weight: Wt,
    pub cochain: QVec,
}

/// H^•(L≥2) with cocycle representatives and the shuffle product. All weights
/// are kept, so this is meant for small presentations.
pub struct CohomologyAlgebra<'a> {
    pub cc: ChevalleyComplex<'a>,
    pub q_cutoff: usize,
    blocks: HashMap<(usize, usize, Wt), CohBlock>,
    /// Basis of H^i_q keyed by (i, q).
    pub classes: BTreeMap<(usize, usize), Vec<Cocycle>>,
    index: HashMap<(usize, Wt), HashMap<ChainMono, usize>>,
}

impl<'a> CohomologyAlgebra<'a> {
    pub fn new(lie: &'a TruncatedLie, q_cutoff: usize) -> Result<Self> {
        let cc = ChevalleyComplex::new(lie, 2);
        let mut blocks = HashMap::new();
        let mut classes: BTreeMap<(usize, usize), Vec<Cocycle>> = BTreeMap::new();
        let mut index = HashMap::new();
        for q in 0..=q_cutoff.min(lie.cutoff) {
            let ws: Vec<Wt> = cc.monomials(q).keys().cloned().collect();
            for w in ws {
                let basis = cc.block_basis(q, &w);
                index.insert((q, w.clone()), basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect());
                let delta = cc.cochain_matrix(q, &w)?;
                let maxlen = basis.iter().map(Vec::len).max().unwrap_or(0);
                for i in 0..=maxlen {
                    let cols: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].len() == i).collect();
                    if cols.is_empty() {
                        continue;
                    }
                    let prev: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].len() + 1 == i).collect();
                    let mut image = Echelon::new();
                    for &c in &prev {
                        image.insert(&delta.cols[c]);
                    }
                    let sub = delta.select_cols(&cols);
                    let cocycles: Vec<QVec> = sub
                        .kernel()
                        .into_iter()
                        .map(|v| v.into_iter().map(|(k, c)| (cols[k], c)).collect())
                        .collect();
                    let mut reps = Echelon::tagged();
                    let list = classes.entry((i, q)).or_default();
                    let offset = list.len();
                    for z in cocycles {
                        let (r, _) = image.reduce(&z);
                        if !r.is_empty() && !reps.contains(&r) {
                            reps.insert(&r);
                            list.push(Cocycle { weight: w.clone(), cochain: r });
                        }
                    }
                    let found = list.len() > offset;
                    if list.is_empty() {
                        classes.remove(&(i, q));
                    }
                    if found {
                        blocks.insert((i, q, w.clone()), CohBlock { image, reps, offset });
                    }
                }
            }
        }
        Ok(CohomologyAlgebra { cc, q_cutoff, blocks, classes, index })
    }

    pub fn dim(&self, i: usize, q: usize) -> usize {
        self.classes.get(&(i, q)).map_or(0, Vec::len)
    }

    /// Shuffle product: (φψ)(m) = Σ_S ε(S) (-1)^{|ψ||m_S|} φ(m_S) ψ(m_{S^c}),
    /// the transpose of the coproduct of S(ΠL≥2).
    pub fn shuffle_mul(&self, (i1, q1, w1, phi): (usize, usize, &Wt, &QVec), (i2, q2, w2, psi): (usize, usize, &Wt, &QVec)) -> Result<(Wt, QVec)> {
        let (q, i) = (q1 + q2, i1 + i2);
        if q > self.q_cutoff {
            return Err(Error::CutoffTooLarge { what: "shuffle product degree".into(), needed: q, bound: self.q_cutoff });
        }
        let w: Wt = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
        let Some(target) = self.index.get(&(q, w.clone())) else { return Ok((w, Vec::new())) };
        let (Some(idx1), Some(idx2)) = (self.index.get(&(q1, w1.clone())), self.index.get(&(q2, w2.clone()))) else {
            return Ok((w, Vec::new()));
        };
        let psi_odd = (q2 + i2) % 2 == 1;
        let mut out = Vec::new();
        for (m, &k) in target {
            if m.len() != i {
                continue;
            }
            let mut val = Q::zero();
            for mask in 0u32..(1 << i) {
                if mask.count_ones() as usize != i1 {
                    continue;
                }
                let (mut a, mut b) = (Vec::new(), Vec::new());
                let mut neg = false;
                for (t, &f) in m.iter().enumerate() {
                    if mask >> t & 1 == 1 {
                        // f moves past the already collected complement factors
                        let crossings = b.iter().filter(|&&g| self.cc.bar_odd(g) && self.cc.bar_odd(f)).count();
                        neg ^= crossings % 2 == 1;
                        a.push(f);
                    } else {
                        b.push(f);
                    }
                }
                let (Some(&ka), Some(&kb)) = (idx1.get(&a), idx2.get(&b)) else { continue };
                let (x, y) = (qvec_get(phi, ka), qvec_get(psi, kb));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let a_odd = a.iter().filter(|&&g| self.cc.bar_odd(g)).count() % 2 == 1;
                val += x * y * sgn(neg ^ (psi_odd && a_odd));
            }
            if !val.is_zero() {
                out.push((k, val));
            }
        }
        Ok((w, qvec_from_unsorted(out)))
    }

    /// Coordinates of a cocycle of C^i_q (weight w) in the basis of H^i_q.
    pub fn coords(&self, i: usize, q: usize, w: &Wt, z: &QVec) -> Result<QVec> {
        let Some(b) = self.blocks.get(&(i, q, w.clone())) else { return Ok(Vec::new()) };
        let (r, _) = b.image.reduce(z);
        let (rest, comb) = b.reps.reduce(&r);
        if !rest.is_empty() {
            return Err(Error::DimMismatch(format!("cochain in C^{i}_{q} is not a cocycle")));
        }
        Ok(comb.into_iter().map(|(t, c)| (t + b.offset, c)).collect())
    }

    pub fn mul(&self, (i1, q1, a): (usize, usize, usize), (i2, q2, b): (usize, usize, usize)) -> Result<QVec> {
        let x = &self.classes[&(i1, q1)][a];
        let y = &self.classes[&(i2, q2)][b];
        let (w, z) = self.shuffle_mul((i1, q1, &x.weight, &x.cochain), (i2, q2, &y.weight, &y.cochain))?;
        if z.is_empty() {
            return Ok(z);
        }
        self.coords(i1 + i2, q1 + q2, &w, &z)
    }

    pub fn mul_matrix(&self, (i1, q1): (usize, usize), (i2, q2): (usize, usize)) -> Result<SparseMat> {
        let (d1, d2) = (self.dim(i1, q1), self.dim(i2, q2));
        let mut cols = Vec::new();
        for a in 0..d1 {
            for b in 0..d2 {
                cols.push(self.mul((i1, q1, a), (i2, q2, b))?);
            }
        }
        Ok(SparseMat::from_cols(self.dim(i1 + i2, q1 + q2), cols))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductComparison {
    /// ((p1,q1),(p2,q2), rank on syzygies, rank on Lie cohomology)
    pub rows: Vec<((usize, usize), (usize, usize), usize, usize)>,
    pub pass: bool,
}

/// Ranks of every product map R_{p1,q1}⊗R_{p2,q2} → R_{p1+p2,q1+q2} against
/// H^{q1-p1}_{q1}⊗H^{q2-p2}_{q2} → H^{…}_{q1+q2}.
pub fn compare_products(tor: &TorAlgebra, coh: &CohomologyAlgebra) -> Result<ProductComparison> {
    let mut rows = Vec::new();
    let keys: Vec<(usize, usize)> = tor.classes.keys().copied().collect();
    for &(p1, q1) in &keys {
        for &(p2, q2) in &keys {
            if q1 + q2 > tor.q_cutoff.min(coh.q_cutoff) || (p1, q1) == (0, 0) || (p2, q2) == (0, 0) {
                continue;
            }
            let a = tor.mul_matrix((p1, q1), (p2, q2))?.rank();
            let b = coh.mul_matrix((q1 - p1, q1), (q2 - p2, q2))?.rank();
            rows.push(((p1, q1), (p2, q2), a, b));
        }
    }
    let pass = rows.iter().all(|r| r.2 == r.3);
    Ok(ProductComparison { rows, pass })
}

/// λ: E → H, ρ: H → E, κ: E → E with λρ = 1, ρλ = 1 + dκ + κd,
/// κ² = λκ = κρ = 0.
#[derive(Clone, Debug)]
pub struct Retract {
    pub lambda: SparseMat,
    pub rho: SparseMat,
    pub kappa: SparseMat,
}

fn dense_to_sparse(m: &DenseMat) -> SparseMat {
    let cols = (0..m.ncols)
        .map(|j| (0..m.nrows).filter(|&i| !m.data[i][j].is_zero()).map(|i| (i, m.data[i][j].clone())).collect())
        .collect();
    SparseMat::from_cols(m.nrows, cols)
}

fn invert(m: &DenseMat) -> Result<DenseMat> {
    let n = m.nrows;
    let mut a: Vec<Vec<Q>> = m.data.iter().enumerate().map(|(i, r)| {
        let mut row = r.clone();
        row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
        row
    }).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| Error::DimMismatch("singular splitting".into()))?;
        a.swap(col, p);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pr = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(DenseMat::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect()))
}

impl Retract {
    /// Harmonic splitting E = H ⊕ I ⊕ P for a differential d (d² = 0): P is
    /// spanned by the basis vectors whose images are greedily independent,
    /// I = d(P), H completes I inside ker d; κ = -(d|_P)^{-1} on I.
    pub fn harmonic(d: &SparseMat) -> Result<Retract> {
        let n = d.ncols;
        let mut ech = Echelon::new();
        let mut p_idx = Vec::new();
        let mut i_vecs = Vec::new();
        for (j, c) in d.cols.iter().enumerate() {
            if matches!(ech.insert(c), Inserted::Pivot(_)) {
                p_idx.push(j);
                i_vecs.push(c.clone());
            }
        }
        let mut h_vecs = Vec::new();
        let mut hech = Echelon::new();
        for z in d.kernel() {
            let (r, _) = ech.reduce(&z);
            if !r.is_empty() && matches!(hech.insert(&r), Inserted::Pivot(_)) {
                h_vecs.push(r);
            }
        }
        let (nh, ni) = (h_vecs.len(), i_vecs.len());
        if nh + 2 * ni != n {
            return Err(Error::DimMismatch(format!("splitting sizes {nh}+{ni}+{ni} != {n}")));
        }
        let mut b = DenseMat::zero(n, n);
        let all: Vec<QVec> = h_vecs.iter().chain(&i_vecs).cloned().chain(p_idx.iter().map(|&j| vec![(j, Q::one())])).collect();
        for (c, v) in all.iter().enumerate() {
            for (r, x) in v {
                b.data[*r][c] = x.clone();
            }
        }
        let binv = invert(&b)?;
        let mut lambda = DenseMat::zero(nh, n);
        for (r, row) in binv.data[..nh].iter().enumerate() {
            lambda.data[r].clone_from(row);
        }
        let lambda = dense_to_sparse(&lambda);
        let rho = SparseMat::from_cols(n, h_vecs);
        // κ(I-basis_k) = -e_{p_k}: κ = -E_P · (B^{-1} rows of I)
        let irows = DenseMat::from_rows(binv.data[nh..nh + ni].to_vec());
        let mut kd = DenseMat::zero(n, n);
        for (k, &pj) in p_idx.iter().enumerate() {
            for c in 0..n {
                if !irows.data[k][c].is_zero() {
                    kd.data[pj][c] = -irows.data[k][c].clone();
                }
            }
        }
        Ok(Retract { lambda, rho, kappa: dense_to_sparse(&kd) })
    }

    /// The four retract identities for the differential d.
    pub fn check(&self, d: &SparseMat) -> bool {
        let nh = self.rho.ncols;
        let n = self.rho.nrows;
        self.lambda.mul(&self.rho) == SparseMat::identity(nh)
            && self.rho.mul(&self.lambda) == SparseMat::identity(n).add(&d.mul(&self.kappa)).add(&self.kappa.mul(d))
            && self.kappa.mul(&self.kappa).is_zero()
            && self.lambda.mul(&self.kappa).is_zero()
            && self.kappa.mul(&self.rho).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct Perturbed {
    pub lambda: SparseMat,
    pub rho: SparseMat,
    pub kappa: SparseMat,
    /// ∂ = λ′δρ on H.
    pub partial: SparseMat,
    /// Number of nonzero terms in Σ(δκ)^m.
    pub iterations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaChecks {
    pub lambda_rho: bool,
    pub rho_lambda: bool,
    pub partial_squared: bool,
    pub chain_map: bool,
}

impl LemmaChecks {
    pub fn all(&self) -> bool {
        self.lambda_rho && self.rho_lambda && self.partial_squared && self.chain_map
    }
}

/// Perturbation lemma: with S = Σ_m (δκ)^m, λ′ = λS, ρ′ = ρ + κSδρ,
/// κ′ = κS, ∂ = λSδρ.
pub fn perturb(d: &SparseMat, delta: &SparseMat, r: &Retract, max_iter: usize) -> Result<Perturbed> {
    let big_d = d.add(delta);
    if !big_d.mul(&big_d).is_zero() {
        return Err(Error::BadParams("D = d + δ does not square to zero".into()));
    }
    let n = d.ncols;
    let t = delta.mul(&r.kappa);
    let mut s = SparseMat::identity(n);
    let mut pw = SparseMat::identity(n);
    let mut iterations = 0;
    loop {
        pw = pw.mul(&t);
        if pw.is_zero() {
            break;
        }
        iterations += 1;
        if iterations > max_iter {
            return Err(Error::SeriesDiverged(max_iter));
        }
        s = s.add(&pw);
    }
    let lambda = r.lambda.mul(&s);
    let kappa = r.kappa.mul(&s);
    let rho = r.rho.add(&kappa.mul(delta).mul(&r.rho));
    let partial = lambda.mul(delta).mul(&r.rho);
    Ok(Perturbed { lambda, rho, kappa, partial, iterations })
}

impl Perturbed {
    pub fn check(&self, d: &SparseMat, delta: &SparseMat) -> LemmaChecks {
        let big_d = d.add(delta);
        let n = d.ncols;
        let nh = self.rho.ncols;
        LemmaChecks {
            lambda_rho: self.lambda.mul(&self.rho) == SparseMat::identity(nh),
            rho_lambda: self.rho.mul(&self.lambda)
                == SparseMat::identity(n).add(&big_d.mul(&self.kappa)).add(&self.kappa.mul(&big_d)),
            partial_squared: self.partial.mul(&self.partial).is_zero(),
            chain_map: self.partial.mul(&self.lambda) == self.lambda.mul(&big_d),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationReport {
    pub preset: String,
    pub q_cutoff: usize,
    pub blocks: usize,
    pub lemma_holds: bool,
    pub max_iterations: usize,
    /// dim H^i(H(L≥2)⊗S, ∂)_q keyed (i, q): expected dim A_q on i = q only.
    pub transported: Vec<((usize, usize), usize)>,
    pub algebra_dims: Vec<usize>,
    pub pass: bool,
}

/// Re-runs the constructive comparison: C(L) = C(L≥2)⊗S(ΠL_1) on cochains,
/// d = d_{≥2}⊗1, δ = d_C - d, the harmonic retract of C(L≥2) extended by ⊗1,
/// and the transported differential on H(L≥2)⊗S, whose cohomology must be
/// A concentrated on the diagonal.
pub fn perturbation_check(pres: &QuadraticPresentation, q_cutoff: usize, max_iter: usize) -> Result<PerturbationReport> {
    let lie = realize_lie(pres, q_cutoff.max(1))?;
    let full = ChevalleyComplex::new(&lie, 1);
    let part = ChevalleyComplex::new(&lie, 2);
    let a_dims = crate::quadalg::algebra_dims(pres, q_cutoff)?.dims;
    let mut retracts: HashMap<(usize, Wt), (Vec<ChainMono>, Retract)> = HashMap::new();
    let mut transported: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut lemma = true;
    let mut max_it = 0;
    let mut blocks = 0;
    for q in 0..=q_cutoff {
        for (w, mult) in full.weight_classes(q) {
            let basis = full.block_basis(q, &w);
            if basis.is_empty() {
                continue;
            }
            blocks += 1;
            let index: HashMap<&ChainMono, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let big_d = full.cochain_matrix(q, &w)?;
            // split m = m2·m1 (L≥2 factors first by the global order)
            let split = |m: &ChainMono| -> (ChainMono, ChainMono) {
                let c = m.iter().position(|&g| lie.elems[g].deg == 1).unwrap_or(m.len());
                (m[..c].to_vec(), m[c..].to_vec())
            };
            let mut groups: BTreeMap<ChainMono, Vec<usize>> = BTreeMap::new();
            for (k, m) in basis.iter().enumerate() {
                groups.entry(split(m).1).or_default().push(k);
            }
            let n = basis.len();
            let (mut lam_t, mut rho_t, mut kap_t, mut d_t) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            let mut h_len: Vec<usize> = Vec::new();
            for m1 in groups.keys() {
                let deg1: usize = m1.len();
                let w1: Wt = m1.iter().fold(pres.zero_weight(), |a, &g| a.iter().zip(&lie.elems[g].weight).map(|(x, y)| x + y).collect());
                let w2: Wt = w.iter().zip(&w1).map(|(a, b)| a - b).collect();
                let key = (q - deg1, w2.clone());
                if !retracts.contains_key(&key) {
                    let b2 = part.block_basis(q - deg1, &w2);
                    let d2 = part.cochain_matrix(q - deg1, &w2)?;
                    let r = Retract::harmonic(&d2)?;
                    if !r.check(&d2) {
                        return Err(Error::DimMismatch(format!("retract identities fail at q={}", q - deg1)));
                    }
                    retracts.insert(key.clone(), (b2, r));
                }
                let (b2, r) = &retracts[&key];
                let d2 = part.cochain_matrix(q - deg1, &w2)?;
                let glob = |k2: usize| -> usize {
                    let mut m = b2[k2].clone();
                    m.extend(m1.iter().copied());
                    index[&m]
                };
                let h0 = h_len.len();
                for hc in 0..r.rho.ncols {
                    // cohomological degree of the harmonic vector
                    let len = r.rho.cols[hc].first().map_or(0, |(k, _)| b2[*k].len()) + m1.len();
                    h_len.push(len);
                    for (k2, c) in &r.rho.cols[hc] {
                        rho_t.push((glob(*k2), h0 + hc, c.clone()));
                    }
                }
                for (k2, col) in r.lambda.cols.iter().enumerate() {
                    for (hc, c) in col {
                        lam_t.push((h0 + hc, glob(k2), c.clone()));
                    }
                }
                for (k2, col) in r.kappa.cols.iter().enumerate() {
                    for (r2, c) in col {
                        kap_t.push((glob(*r2), glob(k2), c.clone()));
                    }
                }
                for (k2, col) in d2.cols.iter().enumerate() {
                    for (r2, c) in col {
                        d_t.push((glob(*r2), glob(k2), c.clone()));
                    }
                }
            }
            let nh = h_len.len();
            let retract = Retract {
                lambda: SparseMat::from_triplets(nh, n, lam_t),
                rho: SparseMat::from_triplets(n, nh, rho_t),
                kappa: SparseMat::from_triplets(n, n, kap_t),
            };
            let d = SparseMat::from_triplets(n, n, d_t);
            let delta = big_d.sub(&d);
            let pert = perturb(&d, &delta, &retract, max_iter)?;
            max_it = max_it.max(pert.iterations);
            lemma &= pert.check(&d, &delta).all();
            // cohomology of ∂ on H⊗S, graded by length
            let maxlen = h_len.iter().copied().max().unwrap_or(0);
            let mut dims = vec![0usize; maxlen + 2];
            let mut ranks = vec![0usize; maxlen + 2];
            for len in 0..=maxlen {
                let cols: Vec<usize> = (0..nh).filter(|&k| h_len[k] == len).collect();
                dims[len] = cols.len();
                // ∂ raises the length: rank of ∂ out of degree len lands in len+1
                ranks[len + 1] = pert.partial.select_cols(&cols).rank();
            }
            for i in 0..=maxlen {
                let h = dims[i] - ranks[i + 1] - ranks[i];
                if h > 0 {
                    *transported.entry((i, q)).or_insert(0) += h * mult;
                }
            }
        }
    }
    let diag_ok = transported.iter().all(|(&(i, q), &d)| i == q && d == a_dims[q])
        && (0..=q_cutoff).all(|q| a_dims[q] == 0 || transported.get(&(q, q)) == Some(&a_dims[q]));
    Ok(PerturbationReport {
        preset: pres.name.clone(),
        q_cutoff,
        blocks,
        lemma_holds: lemma,
        max_iterations: max_it,
        transported: transported.into_iter().collect(),
        algebra_dims: a_dims,
        pass: lemma && diag_ok,
    })
}
