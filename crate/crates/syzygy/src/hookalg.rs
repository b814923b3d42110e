//! Hook algebras: A = ⊕_I π_{Γ_I} over strictly decreasing sets of pairwise
//! compatible hooks, its bigraded character, the Gr(2,N) instance, the PBW
//! preorder on hooked tableaux, the straightening elements h_T and the
//! quadraticity check J_s = Ã·J₂·Ã.
//!
//! Realization. π_λ is Λ^λ (one exterior power per column) modulo column
//! exchange relations. Concretely a filling maps to the product over columns
//! of the minors det(z_{r,c}) (rows 1..h of a generic matrix, columns = the
//! entries); the kernel of that map is exactly the span of the exchange
//! relations, and the semistandard tableaux give a basis. Normal forms are
//! exact linear algebra inside one content at a time.
//!
//! The multiplication μ_I: π_{i₁}⊗…⊗π_{i_s} → π_{Γ_I} is the projection on a
//! multiplicity-one component; its kernel J_I is the sum of all other
//! isotypic components, computed weight by weight from the top: lower the
//! kernel from the weights above and add every highest-weight vector whose
//! weight is not Γ_I.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::betti_table;
use crate::linalg::{qvec_from_unsorted, qvec_get, Echelon, Inserted, QVec, SparseMat};
use crate::partitions::{dim_gl, enumerate_ssyt, hook_join, Hook, HookFilling, HookedTableau, Partition, Tableau};
use crate::quadalg::QuadraticPresentation;
use crate::symfunc::grassmann_koszul_char;
use crate::symfunc::SymFunc;
use crate::Q;

/// Tensor products larger than this are refused by [`verify_quadratic`].
pub const TENSOR_BOUND: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookAlgebraSpec {
    pub hooks: Vec<Hook>,
    /// Number of letters: the algebra is GL_k-equivariant.
    pub k: usize,
    /// Internal degree of each hook; defaults to the hook's cell count.
    #[serde(default)]
    pub weights: Vec<usize>,
}

impl HookAlgebraSpec {
    pub fn new(hooks: Vec<Hook>, k: usize, weights: Option<Vec<usize>>) -> Result<Self> {
        let weights = weights.unwrap_or_else(|| hooks.iter().map(Hook::weight).collect());
        let s = HookAlgebraSpec { hooks, k, weights };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.hooks.len() {
            return Err(Error::BadParams("one weight per hook required".into()));
        }
        for (a, h) in self.hooks.iter().enumerate() {
            if h.leg + 1 > self.k {
                return Err(Error::BadParams(format!("hook {h} is taller than k = {}", self.k)));
            }
            for g in &self.hooks[a + 1..] {
                if !(h.dominates(g) || g.dominates(h)) {
                    return Err(Error::IncompatibleHooks(format!("{h} and {g}")));
                }
            }
        }
        Ok(())
    }

    /// Accepts {"hooks":[{"arm","leg","parity"}…],"k":…} with optional "weights".
    pub fn from_json(text: &str) -> Result<Self> {
        let mut s: HookAlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if s.weights.is_empty() {
            s.weights = s.hooks.iter().map(Hook::weight).collect();
        }
        for h in &mut s.hooks {
            h.parity %= 2;
        }
        s.validate()?;
        Ok(s)
    }

    /// Spec indices of the hooks in `I`, sorted into diagram order (largest first).
    pub fn diagram_order(&self, idx: &[usize]) -> Vec<usize> {
        let mut v = idx.to_vec();
        v.sort_by(|&a, &b| self.hooks[b].arm.cmp(&self.hooks[a].arm));
        v
    }

    pub fn join(&self, idx: &[usize]) -> Result<Partition> {
        let hooks: Vec<Hook> = self.diagram_order(idx).into_iter().map(|i| self.hooks[i]).collect();
        hook_join(&hooks)
    }

    /// All index sets (as increasing spec indices) of size s.
    pub fn index_sets(&self, s: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(start: usize, m: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == s {
                out.push(cur.clone());
                return;
            }
            for i in start..m {
                cur.push(i);
                rec(i + 1, m, s, cur, out);
                cur.pop();
            }
        }
        rec(0, self.hooks.len(), s, &mut Vec::new(), &mut out);
        out
    }
}

/// Γ_i = (i-1 | i+2), 1 ≤ i ≤ N-3, parity i mod 2, internal degree i+1.
pub fn gr2n_hooks(n: usize) -> Result<HookAlgebraSpec> {
    if n < 4 {
        return Err(Error::BadParams(format!("Gr(2,N) hook algebra needs N >= 4, got {n}")));
    }
    let hooks = (1..=n - 3).map(|i| Hook::new(i - 1, i + 2, (i % 2) as u8)).collect();
    HookAlgebraSpec::new(hooks, n, Some((1..=n - 3).map(|i| i + 1).collect()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HookCharTable {
    pub k: usize,
    pub q_cutoff: usize,
    /// (p, q) → Σ s_{Γ_I} over index sets with #I = p and total degree q.
    pub entries: BTreeMap<(usize, usize), SymFunc>,
}

impl HookCharTable {
    pub fn get(&self, p: usize, q: usize) -> SymFunc {
        self.entries.get(&(p, q)).cloned().unwrap_or_else(SymFunc::zero)
    }

    pub fn dim(&self, p: usize, q: usize) -> BigInt {
        self.get(p, q)
            .terms()
            .iter()
            .map(|(l, c)| c.to_integer() * dim_gl(l, self.k))
            .fold(BigInt::zero(), |a, b| a + b)
    }
}

pub fn char_table(spec: &HookAlgebraSpec, q_cutoff: usize) -> Result<HookCharTable> {
    let mut entries: BTreeMap<(usize, usize), SymFunc> = BTreeMap::new();
    entries.insert((0, 0), SymFunc::one());
    for s in 1..=spec.hooks.len() {
        for idx in spec.index_sets(s) {
            let q: usize = idx.iter().map(|&i| spec.weights[i]).sum();
            if q > q_cutoff {
                continue;
            }
            let lam = spec.join(&idx)?;
            entries.entry((s, q)).or_insert_with(SymFunc::zero).add_term(lam, Q::one());
        }
    }
    Ok(HookCharTable { k: spec.k, q_cutoff, entries })
}

type Mono = Vec<u16>;
type Poly = HashMap<Mono, i64>;

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == used.len() {
            let inv = (0..cur.len()).flat_map(|i| (i + 1..cur.len()).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

struct ContentBlock {
    members: Vec<usize>,
    ech: Echelon,
    tag_to_local: HashMap<usize, usize>,
    mono_index: HashMap<Mono, usize>,
}

/// π_λ for GL_k in the bideterminant realization, with the semistandard basis.
pub struct SchurModule {
    pub shape: Partition,
    pub k: usize,
    pub basis: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    col_heights: Vec<usize>,
    perms: HashMap<usize, Vec<(Vec<usize>, i64)>>,
    blocks: Mutex<HashMap<Vec<usize>, Arc<ContentBlock>>>,
    memo: Mutex<HashMap<Vec<Vec<usize>>, QVec>>,
    actions: Mutex<HashMap<(usize, usize, usize), QVec>>,
}

impl SchurModule {
    pub fn new(shape: Partition, k: usize) -> Self {
        let basis = enumerate_ssyt(&shape, k);
        let index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let col_heights = shape.transpose().rows().to_vec();
        let perms = col_heights.iter().map(|&h| (h, permutations_with_sign(h))).collect();
        SchurModule {
            shape,
            k,
            basis,
            index,
            col_heights,
            perms,
            blocks: Mutex::default(),
            memo: Mutex::default(),
            actions: Mutex::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn columns_of(t: &Tableau) -> Vec<Vec<usize>> {
        let w = t.0.first().map_or(0, Vec::len);
        (0..w).map(|j| t.column(j)).collect()
    }

    fn content_of(&self, cols: &[Vec<usize>]) -> Vec<usize> {
        let mut c = vec![0; self.k];
        for &x in cols.iter().flatten() {
            c[x - 1] += 1;
        }
        c
    }

    /// Product of column minors of the generic matrix z.
    fn bideterminant(&self, cols: &[Vec<usize>]) -> Poly {
        let mut acc: Poly = HashMap::from([(Vec::new(), 1)]);
        for col in cols {
            let mut det: Vec<(Mono, i64)> = Vec::new();
            for (p, s) in &self.perms[&col.len()] {
                let m: Mono = p.iter().enumerate().map(|(r, &i)| (r * self.k + col[i] - 1) as u16).collect();
                det.push((m, *s));
            }
            let mut next: Poly = HashMap::new();
            for (a, ca) in &acc {
                for (b, cb) in &det {
                    let mut m = a.clone();
                    m.extend(b);
                    m.sort_unstable();
                    *next.entry(m).or_insert(0) += ca * cb;
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
        acc
    }

    fn block(&self, content: &[usize]) -> Arc<ContentBlock> {
        if let Some(b) = self.blocks.lock().unwrap().get(content) {
            return b.clone();
        }
        let mut b = ContentBlock { members: Vec::new(), ech: Echelon::tagged(), tag_to_local: HashMap::new(), mono_index: HashMap::new() };
        for (i, t) in self.basis.iter().enumerate() {
            if t.content(self.k) != content {
                continue;
            }
            let poly = self.bideterminant(&Self::columns_of(t));
            let v = self.poly_vec(&poly, &mut b.mono_index, true).expect("new monomials are allowed");
            let tag = b.ech.inserted();
            b.ech.insert(&v);
            b.tag_to_local.insert(tag, b.members.len());
            b.members.push(i);
        }
        let b = Arc::new(b);
        self.blocks.lock().unwrap().insert(content.to_vec(), b.clone());
        b
    }

    fn poly_vec(&self, p: &Poly, index: &mut HashMap<Mono, usize>, grow: bool) -> Option<QVec> {
        let mut v = Vec::with_capacity(p.len());
        for (m, c) in p {
            let i = match index.get(m) {
                Some(&i) => i,
                None if grow => {
                    let i = index.len();
                    index.insert(m.clone(), i);
                    i
                }
                None => return None,
            };
            v.push((i, Q::from_integer((*c).into())));
        }
        Some(qvec_from_unsorted(v))
    }

    /// Class of an arbitrary filling (given column by column) in the
    /// semistandard basis. Columns with a repeated entry give zero.
    pub fn normal_form(&self, cols: &[Vec<usize>]) -> Result<QVec> {
        let heights: Vec<usize> = cols.iter().map(Vec::len).collect();
        if heights != self.col_heights || cols.iter().flatten().any(|&x| x == 0 || x > self.k) {
            return Err(Error::InvalidTableau(format!("filling {cols:?} does not fit {} over {} letters", self.shape, self.k)));
        }
        if let Some(v) = self.memo.lock().unwrap().get(cols) {
            return Ok(v.clone());
        }
        let out = if cols.iter().any(|c| (1..c.len()).any(|i| c[..i].contains(&c[i]))) {
            Vec::new()
        } else {
            let content = self.content_of(cols);
            let b = self.block(&content);
            let poly = self.bideterminant(cols);
            let mut idx = b.mono_index.clone();
            let v = self.poly_vec(&poly, &mut idx, false).ok_or_else(|| Error::DimMismatch("filling outside the span of standard tableaux".into()))?;
            let (rest, comb) = b.ech.reduce(&v);
            if !rest.is_empty() {
                return Err(Error::DimMismatch("filling outside the span of standard tableaux".into()));
            }
            qvec_from_unsorted(comb.into_iter().map(|(t, c)| (b.members[b.tag_to_local[&t]], c)).collect())
        };
        self.memo.lock().unwrap().insert(cols.to_vec(), out.clone());
        Ok(out)
    }

    /// E_{ab} (letters 1-based) on a basis vector: replace one b by a, summed
    /// over positions, then straighten.
    pub fn e_action(&self, a: usize, b: usize, t: usize) -> Result<QVec> {
        if let Some(v) = self.actions.lock().unwrap().get(&(a, b, t)) {
            return Ok(v.clone());
        }
        let cols = Self::columns_of(&self.basis[t]);
        let mut acc = Vec::new();
        for j in 0..cols.len() {
            for r in 0..cols[j].len() {
                if cols[j][r] == b {
                    let mut c = cols.clone();
                    c[j][r] = a;
                    acc.extend(self.normal_form(&c)?);
                }
            }
        }
        let v = qvec_from_unsorted(acc);
        self.actions.lock().unwrap().insert((a, b, t), v.clone());
        Ok(v)
    }
}

type Wt = Vec<usize>;

/// π_{f₁}⊗…⊗π_{f_s}, split by GL_k weight.
pub struct TensorSpace {
    pub factors: Vec<Arc<SchurModule>>,
    pub blocks: BTreeMap<Wt, Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TensorSpace {
    pub fn new(factors: Vec<Arc<SchurModule>>) -> Result<Self> {
        let total: usize = factors.iter().map(|f| f.dim()).product();
        if total > TENSOR_BOUND {
            return Err(Error::CutoffTooLarge { what: "hook tensor product".into(), needed: total, bound: TENSOR_BOUND });
        }
        let k = factors.first().map_or(0, |f| f.k);
        let contents: Vec<Vec<Wt>> = factors.iter().map(|f| f.basis.iter().map(|t| t.content(k)).collect()).collect();
        let mut blocks: BTreeMap<Wt, Vec<Vec<usize>>> = BTreeMap::new();
        let mut tuple = vec![0usize; factors.len()];
        loop {
            let mut w = vec![0; k];
            for (f, &i) in tuple.iter().enumerate() {
                for (x, y) in w.iter_mut().zip(&contents[f][i]) {
                    *x += y;
                }
            }
            blocks.entry(w).or_default().push(tuple.clone());
            // odometer
            let mut f = factors.len();
            loop {
                if f == 0 {
                    let mut index = HashMap::new();
                    for tuples in blocks.values() {
                        for (i, t) in tuples.iter().enumerate() {
                            index.insert(t.clone(), i);
                        }
                    }
                    return Ok(TensorSpace { factors, blocks, index });
                }
                f -= 1;
                tuple[f] += 1;
                if tuple[f] < factors[f].dim() {
                    break;
                }
                tuple[f] = 0;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn k(&self) -> usize {
        self.factors[0].k
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// E_{ab} on a vector of weight w; returns the image (weight w + e_a - e_b).
    pub fn apply(&self, a: usize, b: usize, w: &Wt, v: &QVec) -> Result<(Wt, QVec)> {
        let mut w2 = w.clone();
        if w2[b - 1] == 0 {
            return Ok((w2, Vec::new()));
        }
        w2[b - 1] -= 1;
        w2[a - 1] += 1;
        let tuples = &self.blocks[w];
        let mut acc = Vec::new();
        for (pos, c) in v {
            let t = &tuples[*pos];
            for (f, m) in self.factors.iter().enumerate() {
                for (j, d) in m.e_action(a, b, t[f])? {
                    let mut t2 = t.clone();
                    t2[f] = j;
                    acc.push((self.index[&t2], c * d));
                }
            }
        }
        Ok((w2, qvec_from_unsorted(acc)))
    }
}

/// ker(π_{f₁}⊗…⊗π_{f_s} → π_target) weight by weight.
pub struct MuKernel {
    pub space: TensorSpace,
    pub target: Partition,
    pub kernel: BTreeMap<Wt, Vec<QVec>>,
    echelons: HashMap<Wt, Echelon>,
}

impl MuKernel {
    pub fn new(space: TensorSpace, target: Partition) -> Result<Self> {
        let k = space.k();
        let mut lam = target.rows().to_vec();
        lam.resize(k, 0);
        let weights: Vec<Wt> = space.blocks.keys().rev().cloned().collect();
        let mut kernel: BTreeMap<Wt, Vec<QVec>> = BTreeMap::new();
        let mut echelons = HashMap::new();
        let mut top_seen = 0;
        for w in weights {
            let mut ech = Echelon::new();
            let mut vecs = Vec::new();
            for a in 1..k {
                let mut up = w.clone();
                if up[a] == 0 {
                    continue;
                }
                up[a] -= 1;
                up[a - 1] += 1;
                if let Some(src) = kernel.get(&up) {
                    for v in src {
                        let (_, x) = space.apply(a + 1, a, &up, v)?;
                        if !x.is_empty() && matches!(ech.insert(&x), Inserted::Pivot(_)) {
                            vecs.push(x);
                        }
                    }
                }
            }
            let hw = Self::highest_weight_vectors(&space, &w)?;
            if w == lam {
                top_seen = hw.len();
            } else {
                for x in hw {
                    if matches!(ech.insert(&x), Inserted::Pivot(_)) {
                        vecs.push(x);
                    }
                }
            }
            if !vecs.is_empty() {
                kernel.insert(w.clone(), vecs);
                echelons.insert(w, ech);
            }
        }
        if top_seen != 1 {
            return Err(Error::DimMismatch(format!("{target} occurs {top_seen} times in the tensor product")));
        }
        let mk = MuKernel { space, target, kernel, echelons };
        let expected = mk.space.dim() - dim_gl(&mk.target, k).to_usize().unwrap_or(usize::MAX);
        if mk.dim() != expected {
            return Err(Error::DimMismatch(format!("ker μ has dim {} but {} was expected", mk.dim(), expected)));
        }
        Ok(mk)
    }

    fn highest_weight_vectors(space: &TensorSpace, w: &Wt) -> Result<Vec<QVec>> {
        let k = space.k();
        let n = space.blocks[w].len();
        let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n];
        let mut offset = 0;
        for a in 1..k {
            if w[a] == 0 {
                continue;
            }
            let mut up = w.clone();
            up[a] -= 1;
            up[a - 1] += 1;
            let m = space.blocks.get(&up).map_or(0, Vec::len);
            for (j, col) in cols.iter_mut().enumerate() {
                let (_, x) = space.apply(a, a + 1, w, &vec![(j, Q::one())])?;
                col.extend(x.into_iter().map(|(i, c)| (i + offset, c)));
            }
            offset += m;
        }
        let mat = SparseMat::from_cols(offset, cols.into_iter().map(qvec_from_unsorted).collect());
        Ok(mat.kernel())
    }

    pub fn dim(&self) -> usize {
        self.kernel.values().map(Vec::len).sum()
    }

    pub fn contains(&self, w: &Wt, v: &QVec) -> bool {
        v.is_empty() || self.echelons.get(w).is_some_and(|e| e.contains(v))
    }
}

fn module_cache() -> &'static Mutex<HashMap<(Partition, usize), Arc<SchurModule>>> {
    static CACHE: std::sync::OnceLock<Mutex<HashMap<(Partition, usize), Arc<SchurModule>>>> = std::sync::OnceLock::new();
    CACHE.get_or_init(Mutex::default)
}

/// Shared π_λ for GL_k (normal forms are memoized inside).
pub fn schur_module(shape: &Partition, k: usize) -> Arc<SchurModule> {
    let mut c = module_cache().lock().unwrap();
    c.entry((shape.clone(), k)).or_insert_with(|| Arc::new(SchurModule::new(shape.clone(), k))).clone()
}

/// ker μ for hooks given in diagram order.
pub fn hook_kernel(hooks: &[Hook], k: usize) -> Result<MuKernel> {
    let target = hook_join(hooks)?;
    let factors = hooks.iter().map(|h| schur_module(&h.partition(), k)).collect();
    MuKernel::new(TensorSpace::new(factors)?, target)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PreorderCmp {
    Less,
    Greater,
    Equivalent,
}

/// Double inverse-right-lexicographic comparison of the content vectors
/// χ_μ(ν) = #{μ in hook ν}: the largest letter with differing vectors
/// decides, and there the rightmost differing hook; a larger count there
/// means smaller.
pub fn compare_preorder(s: &HookedTableau, t: &HookedTableau) -> Result<PreorderCmp> {
    let strip = |h: &[Hook]| h.iter().map(|x| (x.arm, x.leg)).collect::<Vec<_>>();
    if strip(&s.hooks) != strip(&t.hooks) {
        return Err(Error::ShapeMismatch);
    }
    let k = s.max_entry().max(t.max_entry());
    let (cs, ct) = (s.content_vectors(k), t.content_vectors(k));
    for mu in (0..k).rev() {
        if cs[mu] == ct[mu] {
            continue;
        }
        for nu in (0..cs[mu].len()).rev() {
            if cs[mu][nu] != ct[mu][nu] {
                return Ok(if cs[mu][nu] > ct[mu][nu] { PreorderCmp::Less } else { PreorderCmp::Greater });
            }
        }
    }
    Ok(PreorderCmp::Equivalent)
}

/// x_S·x_T in Ã: zero if a hook repeats, otherwise ±x_{S·T} with the hooks
/// merged into diagram order and the Koszul sign of their parities.
pub fn hooked_product(s: &HookedTableau, t: &HookedTableau) -> Result<Option<(i32, HookedTableau)>> {
    let mut items: Vec<(Hook, HookFilling)> = s.hooks.iter().copied().zip(s.fillings.iter().cloned()).collect();
    items.extend(t.hooks.iter().copied().zip(t.fillings.iter().cloned()));
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if (items[i].0.arm, items[i].0.leg) == (items[j].0.arm, items[j].0.leg) {
                return Ok(None);
            }
        }
    }
    // bubble into decreasing order, tracking the sign
    let mut sign = 1;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1].0.arm < items[j].0.arm {
            if items[j - 1].0.parity == 1 && items[j].0.parity == 1 {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    let (hooks, fillings) = items.into_iter().unzip();
    Ok(Some((sign, HookedTableau::new(hooks, fillings)?)))
}

fn hook_columns(h: &HookFilling) -> Vec<Vec<usize>> {
    let mut cols = vec![std::iter::once(h.row[0]).chain(h.col.iter().copied()).collect::<Vec<_>>()];
    cols.extend(h.row[1..].iter().map(|&x| vec![x]));
    cols
}

fn filling_from_tableau(t: &Tableau) -> HookFilling {
    HookFilling::from_tableau(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StraightenCase {
    /// A wrong row inequality below the first row.
    A,
    /// Rows fine, a wrong column inequality against the first row.
    B,
}

#[derive(Clone, Debug)]
pub struct Straightened {
    pub case: StraightenCase,
    /// Position of the first hook of the processed pair D = Γ_i ⊔ Γ_{i+1}.
    pub pair: usize,
    /// h_T in the standard-monomial basis: (hooked tableau, coefficient).
    pub terms: Vec<(HookedTableau, Q)>,
    /// h_D ∈ ker(π_{Γ_i}⊗π_{Γ_{i+1}} → π_D), hence h_T ∈ J₂·Ã ∩ J_I.
    pub in_kernel: bool,
    /// Coefficient of x_T is nonzero and every other term is strictly ≺ T.
    pub leading_ok: bool,
    pub method: StraightenMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StraightenMethod {
    /// The exchange-relation (case A) or transposition (case B) element itself.
    Recipe,
    /// The recipe element missed ker μ (the case-B corrections it leaves
    /// implicit were needed), so h_T was solved from
    /// x_T ∈ ker μ + span{x_S : S ≺ T}.
    Solved,
}

fn pair_vector(m1: &SchurModule, m2: &SchurModule, sp: &TensorSpace, a: &[Vec<usize>], b: &[Vec<usize>], c: &Q, acc: &mut Vec<(usize, Q)>) -> Result<()> {
    let x = m1.normal_form(a)?;
    let y = m2.normal_form(b)?;
    for (i, ci) in &x {
        for (j, cj) in &y {
            let p = sp.position(&[*i, *j]).ok_or_else(|| Error::DimMismatch("tensor index".into()))?;
            acc.push((p, c * ci * cj));
        }
    }
    Ok(())
}

/// The element h_T of the PBW argument for an h-tableau that is not a valid
/// tableau, built on the first invalid pair of consecutive hooks.
pub fn straighten(t: &HookedTableau, spec: &HookAlgebraSpec) -> Result<Straightened> {
    if t.is_valid_tableau() {
        return Err(Error::AlreadyStandard);
    }
    if t.max_entry() > spec.k {
        return Err(Error::InvalidTableau(format!("entries exceed k = {}", spec.k)));
    }
    let s = t.hooks.len();
    let suffix_valid = |i: usize| HookedTableau { hooks: t.hooks[i..].to_vec(), fillings: t.fillings[i..].to_vec() }.is_valid_tableau();
    let mut i = s - 1;
    while i > 0 && suffix_valid(i) {
        i -= 1;
    }
    // now hooks i+1.. are valid together and i.. are not
    let (g1, g2) = (t.hooks[i], t.hooks[i + 1]);
    let pair = HookedTableau { hooks: vec![g1, g2], fillings: vec![t.fillings[i].clone(), t.fillings[i + 1].clone()] };
    let d = pair.to_tableau().0; // rows of D
    let k = spec.k;
    let m1 = schur_module(&g1.partition(), k);
    let m2 = schur_module(&g2.partition(), k);
    let ker = hook_kernel(&[g1, g2], k)?;
    let sp = &ker.space;
    // D cell (r, c) (0-based) belongs to hook 1 iff r == 0 or c == 0
    let split = |rows: &Vec<Vec<usize>>| -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let f1 = HookFilling { row: rows[0].clone(), col: rows[1..].iter().map(|r| r[0]).collect() };
        let f2 = HookFilling { row: rows[1][1..].to_vec(), col: rows[2..].iter().filter(|r| r.len() > 1).map(|r| r[1]).collect() };
        (hook_columns(&f1), hook_columns(&f2))
    };
    let mut acc = Vec::new();
    let (c1, c2) = split(&d);
    pair_vector(&m1, &m2, sp, &c1, &c2, &Q::one(), &mut acc)?;
    let rows_a: Vec<usize> = (1..d.len()).filter(|&r| d[r].len() > 1 && d[r][1] < d[r][0]).collect();
    let case = if let Some(&kk) = rows_a.last() {
        // exchange the top kk+1 cells of column 2 with every (kk+1)-subset of column 1
        let kk = kk + 1;
        let col1: Vec<usize> = d.iter().map(|r| r[0]).collect();
        let col2: Vec<usize> = d.iter().filter(|r| r.len() > 1).map(|r| r[1]).collect();
        for subset in subsets(col1.len(), kk) {
            let mut n1 = col1.clone();
            let mut n2 = col2.clone();
            for (slot, &p) in subset.iter().enumerate() {
                n1[p] = col2[slot];
                n2[slot] = col1[p];
            }
            let mut rows = d.clone();
            for (r, row) in rows.iter_mut().enumerate() {
                row[0] = n1[r];
                if row.len() > 1 {
                    row[1] = n2[r];
                }
            }
            let (a, b) = split(&rows);
            pair_vector(&m1, &m2, sp, &a, &b, &-Q::one(), &mut acc)?;
        }
        StraightenCase::A
    } else {
        let mut found = None;
        for l in (1..d[0].len()).rev() {
            // prefer a strict inversion; an equal pair makes e^D vanish in Λ^D
            let strict = (1..d.len()).rfind(|&r| d[r].len() > l && d[0][l] > d[r][l]);
            let equal = (1..d.len()).rfind(|&r| d[r].len() > l && d[0][l] == d[r][l]);
            if let Some(r) = strict.or(equal) {
                found = Some((l, r));
                break;
            }
        }
        let (l, r) = found.ok_or_else(|| Error::InvalidTableau("invalid pair without a wrong inequality".into()))?;
        if d[0][l] != d[r][l] {
            let mut rows = d.clone();
            rows[0][l] = d[r][l];
            rows[r][l] = d[0][l];
            let (a, b) = split(&rows);
            pair_vector(&m1, &m2, sp, &a, &b, &Q::one(), &mut acc)?;
        }
        StraightenCase::B
    };
    let mut w = vec![0; k];
    for x in c1.iter().chain(&c2).flatten() {
        w[x - 1] += 1;
    }
    let tuples = &sp.blocks[&w];
    let embed = |p: usize| -> Result<HookedTableau> {
        let tup = &tuples[p];
        let mut fillings = t.fillings.clone();
        fillings[i] = filling_from_tableau(&m1.basis[tup[0]]);
        fillings[i + 1] = filling_from_tableau(&m2.basis[tup[1]]);
        HookedTableau::new(t.hooks.clone(), fillings)
    };
    let lead_pos = match (m1.basis_index(&t.fillings[i].tableau()), m2.basis_index(&t.fillings[i + 1].tableau())) {
        (Some(a), Some(b)) => sp.position(&[a, b]),
        _ => None,
    }
    .ok_or_else(|| Error::InvalidTableau("hook fillings are not standard".into()))?;
    let certify = |h: &QVec| -> Result<(bool, bool)> {
        let in_kernel = !h.is_empty() && ker.contains(&w, h);
        let mut leading_ok = !qvec_get(h, lead_pos).is_zero();
        for (p, _) in h {
            if *p != lead_pos && compare_preorder(&embed(*p)?, t)? != PreorderCmp::Less {
                leading_ok = false;
            }
        }
        Ok((in_kernel, leading_ok))
    };
    let mut h = qvec_from_unsorted(acc);
    let mut method = StraightenMethod::Recipe;
    let (mut in_kernel, mut leading_ok) = certify(&h)?;
    if !(in_kernel && leading_ok) {
        // x_T = Σ a_S x_S + (kernel element) with S ≺ T
        let mut ech = Echelon::tagged();
        let mut smaller = Vec::new();
        for p in 0..tuples.len() {
            if p != lead_pos && compare_preorder(&embed(p)?, t)? == PreorderCmp::Less {
                smaller.push(p);
                ech.insert(&vec![(p, Q::one())]);
            }
        }
        for v in ker.kernel.get(&w).into_iter().flatten() {
            ech.insert(v);
        }
        let (rest, comb) = ech.reduce(&vec![(lead_pos, Q::one())]);
        if rest.is_empty() {
            let mut v = vec![(lead_pos, Q::one())];
            for (tag, c) in comb {
                if tag < smaller.len() {
                    v.push((smaller[tag], -c));
                }
            }
            h = qvec_from_unsorted(v);
            method = StraightenMethod::Solved;
            (in_kernel, leading_ok) = certify(&h)?;
        }
    }
    let terms = h.iter().map(|(p, c)| Ok((embed(*p)?, c.clone()))).collect::<Result<Vec<_>>>()?;
    Ok(Straightened { case, pair: i, terms, in_kernel, leading_ok, method })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticRow {
    pub s: usize,
    /// Σ_I (∏ dim π_i − dim π_I).
    pub expected: usize,
    /// dim of ker μ computed directly.
    pub kernel: usize,
    /// dim of (Ã·J₂·Ã)_s.
    pub generated: usize,
    pub contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticReport {
    pub rows: Vec<QuadraticRow>,
    pub pass: bool,
}

/// Checks J_s = Σ Ã_a·J₂·Ã_b for 2 ≤ s ≤ cutoff by exact ranks.
pub fn verify_quadratic(spec: &HookAlgebraSpec, cutoff: usize) -> Result<QuadraticReport> {
    let k = spec.k;
    let mut pair_kernels: HashMap<(usize, usize), Arc<MuKernel>> = HashMap::new();
    let mut pair = |a: usize, b: usize| -> Result<Arc<MuKernel>> {
        if let Some(x) = pair_kernels.get(&(a, b)) {
            return Ok(x.clone());
        }
        let hooks = [spec.hooks[a], spec.hooks[b]];
        let x = Arc::new(hook_kernel(&hooks, k)?);
        pair_kernels.insert((a, b), x.clone());
        Ok(x)
    };
    let mut rows = Vec::new();
    for s in 2..=cutoff.min(spec.hooks.len()) {
        let mut row = QuadraticRow { s, expected: 0, kernel: 0, generated: 0, contained: true };
        for idx in spec.index_sets(s) {
            let order = spec.diagram_order(&idx);
            let hooks: Vec<Hook> = order.iter().map(|&i| spec.hooks[i]).collect();
            let prod: usize = hooks.iter().map(|h| schur_module(&h.partition(), k).dim()).product();
            row.expected += prod - dim_gl(&hook_join(&hooks)?, k).to_usize().unwrap_or(0);
            let ker = hook_kernel(&hooks, k)?;
            row.kernel += ker.dim();
            if s == 2 {
                row.generated += ker.dim();
                continue;
            }
            let sp = &ker.space;
            let mut gen: HashMap<Wt, Echelon> = HashMap::new();
            for x in 0..s {
                for y in x + 1..s {
                    let pk = pair(order[x], order[y])?;
                    let rest: Vec<usize> = (0..s).filter(|&z| z != x && z != y).collect();
                    let rest_space = TensorSpace::new(rest.iter().map(|&z| sp.factors[z].clone()).collect())?;
                    for (wp, vecs) in &pk.kernel {
                        for (wr, tuples_r) in &rest_space.blocks {
                            let w: Wt = wp.iter().zip(wr).map(|(a, b)| a + b).collect();
                            for v in vecs {
                                for tr in tuples_r {
                                    let mut out = Vec::with_capacity(v.len());
                                    for (p, c) in v {
                                        let tp = &pk.space.blocks[wp][*p];
                                        let mut full = vec![0; s];
                                        full[x] = tp[0];
                                        full[y] = tp[1];
                                        for (slot, &z) in rest.iter().enumerate() {
                                            full[z] = tr[slot];
                                        }
                                        out.push((sp.position(&full).expect("tuple in space"), c.clone()));
                                    }
                                    let out = qvec_from_unsorted(out);
                                    if !ker.contains(&w, &out) {
                                        row.contained = false;
                                    }
                                    gen.entry(w.clone()).or_default().insert(&out);
                                }
                            }
                        }
                    }
                }
            }
            row.generated += gen.values().map(Echelon::rank).sum::<usize>();
        }
        rows.push(row);
    }
    let pass = rows.iter().all(|r| r.contained && r.expected == r.kernel && r.kernel == r.generated);
    Ok(QuadraticReport { rows, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckRow {
    pub p: usize,
    pub q: usize,
    pub betti: usize,
    pub hook: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub n: usize,
    pub q_cutoff: usize,
    pub rows: Vec<CrossCheckRow>,
    pub euler_ok: bool,
    pub pass: bool,
}

/// dim A_{q-p,q} of the Gr(2,N) hook algebra against the computed Betti table
/// of the Plücker ideal, plus the Euler characters degree by degree.
pub fn cross_check_gr2n(n: usize, q_cutoff: usize) -> Result<CrossCheckReport> {
    if !(4..=7).contains(&n) {
        return Err(Error::BadParams(format!("cross-check supports 4 <= N <= 7, got {n}")));
    }
    let spec = gr2n_hooks(n)?;
    let table = char_table(&spec, q_cutoff)?;
    let betti = betti_table(&QuadraticPresentation::pluecker(n)?, q_cutoff)?;
    let mut rows = Vec::new();
    for q in 0..=q_cutoff {
        for p in 0..=q {
            let hook = table.dim(q - p, q);
            let b = betti.get(p, q);
            if b == 0 && hook.is_zero() {
                continue;
            }
            rows.push(CrossCheckRow { p, q, betti: b, hook: hook.to_string(), ok: hook == BigInt::from(b) });
        }
    }
    let koszul = grassmann_koszul_char(n, q_cutoff)?;
    let mut euler_ok = true;
    for q in 0..=q_cutoff {
        let mut chi = SymFunc::zero();
        for p in 0..=q {
            let f = table.get(q - p, q);
            chi = if p % 2 == 0 { chi.add(&f) } else { chi.sub(&f) };
        }
        if chi != koszul.get(q) {
            euler_ok = false;
        }
        let num: i64 = (0..=q).map(|p| if p % 2 == 0 { betti.get(p, q) as i64 } else { -(betti.get(p, q) as i64) }).sum();
        let dims = chi.terms().iter().map(|(l, c)| c.to_integer() * dim_gl(l, n)).fold(BigInt::zero(), |a, b| a + b);
        if dims != BigInt::from(num) {
            euler_ok = false;
        }
    }
    let pass = euler_ok && rows.iter().all(|r| r.ok);
    Ok(CrossCheckReport { n, q_cutoff, rows, euler_ok, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qvec_add, qvec_scale};

    fn ht(hooks: &[(usize, usize)], rows: Vec<Vec<usize>>) -> HookedTableau {
        let hooks = hooks.iter().map(|&(a, l)| Hook::new(a, l, 0)).collect();
        HookedTableau::from_tableau(hooks, &Tableau(rows)).unwrap()
    }

    #[test]
    fn gr2n_presets() {
        let s = gr2n_hooks(5).unwrap();
        assert_eq!(s.hooks.iter().map(|h| (h.arm, h.leg, h.parity)).collect::<Vec<_>>(), vec![(0, 3, 1), (1, 4, 0)]);
        assert_eq!(gr2n_hooks(4).unwrap().hooks.len(), 1);
        assert_eq!(gr2n_hooks(6).unwrap().hooks.len(), 3);
        assert!(gr2n_hooks(3).is_err());
    }

    #[test]
    fn char_table_gr25() {
        let t = char_table(&gr2n_hooks(5).unwrap(), 5).unwrap();
        let p = |r: &[usize]| Partition::new(r.to_vec()).unwrap();
        assert_eq!(t.get(1, 2), SymFunc::schur(p(&[1, 1, 1, 1])));
        assert_eq!(t.get(1, 3), SymFunc::schur(p(&[2, 1, 1, 1, 1])));
        assert_eq!(t.get(2, 5), SymFunc::schur(p(&[2, 2, 2, 2, 2])));
        assert_eq!(t.get(0, 0), SymFunc::one());
        assert_eq!(t.dim(1, 2), 5.into());
        assert_eq!(t.dim(1, 3), 5.into());
        assert_eq!(t.dim(2, 5), 1.into());
        let t6 = char_table(&gr2n_hooks(6).unwrap(), 8).unwrap();
        assert_eq!(t6.dim(1, 2), 15.into());
        for ((p, _), f) in &t6.entries {
            for l in f.terms().keys() {
                assert_eq!(l.diagonal(), *p);
            }
        }
    }

    #[test]
    fn exchange_relation_is_jacobi() {
        let m = SchurModule::new(Partition::new(vec![2, 1]).unwrap(), 3);
        assert_eq!(m.dim(), 8);
        let nf = |c: Vec<Vec<usize>>| m.normal_form(&c).unwrap();
        let lhs = nf(vec![vec![1, 2], vec![3]]);
        let rhs = qvec_add(&nf(vec![vec![3, 2], vec![1]]), &nf(vec![vec![1, 3], vec![2]]));
        assert_eq!(lhs, rhs);
        // a standard tableau is its own normal form
        let t = Tableau(vec![vec![1, 3], vec![2]]);
        assert_eq!(lhs, vec![(m.basis_index(&t).unwrap(), Q::one())]);
    }

    #[test]
    fn gl_action_is_a_representation() {
        // [E_12, E_21] = E_11 - E_22 on π_{(1|2)} for GL_3
        let m = SchurModule::new(Partition::new(vec![2, 1, 1]).unwrap(), 3);
        for t in 0..m.dim() {
            let apply = |a, b, v: &QVec| -> QVec {
                let mut acc = Vec::new();
                for (i, c) in v {
                    acc.extend(m.e_action(a, b, *i).unwrap().into_iter().map(|(j, d)| (j, d * c)));
                }
                qvec_from_unsorted(acc)
            };
            let e = vec![(t, Q::one())];
            let lhs = crate::linalg::qvec_axpy(&Q::one(), &apply(1, 2, &apply(2, 1, &e)), &-Q::one(), &apply(2, 1, &apply(1, 2, &e)));
            let c = m.basis[t].content(3);
            let h = Q::from_integer((c[0] as i64 - c[1] as i64).into());
            assert_eq!(lhs, qvec_scale(&h, &e));
        }
    }

    #[test]
    fn preorder_examples() {
        let hooks = [(3, 2), (2, 1)];
        let t = ht(&hooks, vec![vec![1, 1, 2, 4], vec![3, 1, 2, 2], vec![4, 3]]);
        let chi = t.content_vectors(4);
        assert_eq!(chi, vec![vec![2, 1], vec![1, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compare_preorder(&t, &t).unwrap(), PreorderCmp::Equivalent);
        let t2 = ht(&hooks, vec![vec![1, 1, 4, 4], vec![2, 1, 2, 3], vec![3, 2]]);
        assert_eq!(t2.content_vectors(4), chi);
        assert_eq!(compare_preorder(&t, &t2).unwrap(), PreorderCmp::Equivalent);
        // move a 4 from hook 1 into hook 2 (and a 2 back): χ_4 = (1,1) has the larger last slot
        let s = ht(&hooks, vec![vec![1, 1, 2, 2], vec![3, 1, 2, 4], vec![4, 3]]);
        assert_eq!(compare_preorder(&s, &t).unwrap(), PreorderCmp::Less);
        assert_eq!(compare_preorder(&t, &s).unwrap(), PreorderCmp::Greater);
        let other = ht(&[(1, 1)], vec![vec![1, 1], vec![2]]);
        assert_eq!(compare_preorder(&other, &t), Err(Error::ShapeMismatch));
    }

    #[test]
    fn products_of_monomials() {
        let a = ht(&[(1, 4)], vec![vec![1, 1], vec![2], vec![3], vec![4], vec![5]]);
        let mut b = ht(&[(0, 3)], vec![vec![1], vec![2], vec![3], vec![4]]);
        b.hooks[0].parity = 1;
        let mut a2 = a.clone();
        a2.hooks[0].parity = 1;
        let (sign, ab) = hooked_product(&b, &a2).unwrap().unwrap();
        assert_eq!(sign, -1);
        assert_eq!(ab.hooks[0].arm, 1);
        assert!(hooked_product(&a, &a).unwrap().is_none());
    }

    #[test]
    fn straighten_case_b() {
        // Γ₁ = (2|4), Γ₂ = (1|3) over GL_5: rows are fine, column 3 reads 5 above 3
        let spec = HookAlgebraSpec::new(vec![Hook::new(2, 4, 0), Hook::new(1, 3, 1)], 5, None).unwrap();
        let t = HookedTableau::new(
            spec.hooks.clone(),
            vec![HookFilling { row: vec![1, 2, 5], col: vec![2, 3, 4, 5] }, HookFilling { row: vec![2, 3], col: vec![3, 4, 5] }],
        )
        .unwrap();
        let r = straighten(&t, &spec).unwrap();
        assert_eq!(r.case, StraightenCase::B);
        assert!(r.in_kernel && r.leading_ok, "{r:?}");
        assert_eq!(r.method, StraightenMethod::Recipe);
        // h_D = x_D + x_S with S the transposition of the offending pair
        assert_eq!(r.terms.len(), 2);
        assert!(r.terms.iter().all(|(_, c)| *c == Q::one()));
        assert_eq!(r.terms.iter().filter(|(s, _)| s.fillings[0].row == vec![1, 2, 3]).count(), 1);
    }

    #[test]
    fn straighten_case_a() {
        let spec = HookAlgebraSpec::new(vec![Hook::new(1, 4, 0), Hook::new(0, 3, 1)], 5, None).unwrap();
        // row 2 of D reads (2, 1): wrong row inequality
        let t = HookedTableau::new(
            spec.hooks.clone(),
            vec![HookFilling { row: vec![1, 1], col: vec![2, 3, 4, 5] }, HookFilling { row: vec![1], col: vec![2, 3, 4] }],
        )
        .unwrap();
        let r = straighten(&t, &spec).unwrap();
        assert_eq!(r.case, StraightenCase::A);
        assert!(r.in_kernel && r.leading_ok, "{r:?}");
        assert_eq!(r.method, StraightenMethod::Recipe);
        let valid = ht(&[(1, 4), (0, 3)], vec![vec![1, 1], vec![2, 2], vec![3, 3], vec![4, 4], vec![5, 5]]);
        assert_eq!(straighten(&valid, &spec).unwrap_err(), Error::AlreadyStandard);
    }

    #[test]
    fn quadratic_small() {
        let r = verify_quadratic(&gr2n_hooks(5).unwrap(), 2).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rows[0].expected, 24);
        let single = verify_quadratic(&gr2n_hooks(4).unwrap(), 3).unwrap();
        assert!(single.pass && single.rows.is_empty());
    }
}
