//! Iwahori-Weyl groups `W = Lambda x| W_0 = W_aff x| Omega`: length, reduced
//! words, Bruhat order, Kottwitz map, facets and admissible sets.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{dot, solve_integer, IVec, IntMatrix};
use crate::rootdata::{relative_root_data, GroupDatum, RelativeRootSystem};

/// An element `t^lambda w` with `lambda` in `Lambda` coordinates and `w` an
/// index into the finite Weyl group table of its group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    pub trans: IVec,
    pub fin: u16,
}

#[derive(Clone, Debug)]
pub struct W0Element {
    /// Permutation of relative roots.
    pub perm: Vec<u16>,
    /// Action on `Lambda` coordinates.
    pub matrix: IntMatrix,
    /// Reduced word in the simple relative reflections (indices into `simple`).
    pub word: Vec<u8>,
    pub inverse: u16,
}

/// The finite Weyl group of a relative root system, fully tabulated.
#[derive(Clone, Debug)]
pub struct FiniteWeyl {
    pub elements: Vec<W0Element>,
    index: BTreeMap<Vec<u16>, u16>,
    mult: Vec<u16>,
    /// Element index of each simple reflection.
    pub simple: Vec<u16>,
    /// Element index of the reflection in each relative root.
    pub reflection: Vec<u16>,
}

const MAX_W0: usize = 2048;

impl FiniteWeyl {
    fn build(rel: &RelativeRootSystem) -> Result<Self> {
        let nr = rel.roots.len();
        let lookup: BTreeMap<IVec, usize> = rel.roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let dim = rel.rank();
        let refl_perm = |b: usize| -> Vec<u16> {
            (0..nr)
                .map(|a| {
                    let k = dot(&rel.roots[a], &rel.coroots[b]);
                    let img: IVec = rel.roots[a].iter().zip(&rel.roots[b]).map(|(x, y)| x - k * y).collect();
                    lookup[&img] as u16
                })
                .collect()
        };
        let refl_matrix = |b: usize| -> IntMatrix {
            let mut m = IntMatrix::identity(dim);
            for r in 0..dim {
                for c in 0..dim {
                    m.set(r, c, m.get(r, c) - rel.coroots[b][r] * rel.roots[b][c]);
                }
            }
            rel.lattice.reduce_matrix(&m)
        };
        let gens: Vec<(Vec<u16>, IntMatrix)> = rel.simple.iter().map(|&s| (refl_perm(s), refl_matrix(s))).collect();
        let id_perm: Vec<u16> = (0..nr as u16).collect();
        let mut elements = vec![W0Element { perm: id_perm.clone(), matrix: IntMatrix::identity(dim), word: vec![], inverse: 0 }];
        let mut index = BTreeMap::new();
        index.insert(id_perm, 0u16);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, (sp, sm)) in gens.iter().enumerate() {
                let perm: Vec<u16> = sp.iter().map(|&a| elements[w].perm[a as usize]).collect();
                if index.contains_key(&perm) {
                    continue;
                }
                if elements.len() >= MAX_W0 {
                    return Err(Error::Unsupported(format!("finite Weyl group larger than {MAX_W0}")));
                }
                let matrix = rel.lattice.reduce_matrix(&elements[w].matrix.mul(sm));
                let mut word = elements[w].word.clone();
                word.push(i as u8);
                index.insert(perm.clone(), elements.len() as u16);
                elements.push(W0Element { perm, matrix, word, inverse: 0 });
                queue.push_back(elements.len() - 1);
            }
        }
        let n = elements.len();
        let mut mult = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let perm: Vec<u16> = elements[b].perm.iter().map(|&x| elements[a].perm[x as usize]).collect();
                mult[a * n + b] = index[&perm];
            }
        }
        for a in 0..n {
            let inv = (0..n).find(|&b| mult[a * n + b] == 0).expect("group element has an inverse");
            elements[a].inverse = inv as u16;
        }
        let simple: Vec<u16> = gens.iter().map(|g| index[&g.0]).collect();
        let reflection: Vec<u16> = (0..nr).map(|b| index[&refl_perm(b)]).collect();
        Ok(Self { elements, index, mult, simple, reflection })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.elements.len() + b as usize]
    }

    pub fn inverse(&self, a: u16) -> u16 {
        self.elements[a as usize].inverse
    }

    pub fn length(&self, a: u16) -> usize {
        self.elements[a as usize].word.len()
    }

    /// Element with a given root permutation.
    pub fn by_perm(&self, perm: &[u16]) -> Option<u16> {
        self.index.get(perm).copied()
    }
}

/// A simple affine reflection: the reflection in the wall `{a = k}` of the base alcove.
#[derive(Clone, Debug)]
pub struct AffineNode {
    pub element: WeylElement,
    /// Relative root `a` of the wall (the highest root for affine nodes).
    pub root: usize,
    pub k: i64,
    /// Hecke parameter exponent `L(s)`.
    pub param: u32,
    pub affine: bool,
    pub component: usize,
}

/// Iwahori-Weyl group of a quasi-split group.
///
/// Nodes `0..c` are the affine nodes of the `c` irreducible components, nodes
/// `c..c+r` are the finite simple reflections in the loaded order.
#[derive(Clone, Debug)]
pub struct IwahoriWeylGroup {
    pub name: String,
    pub rel: RelativeRootSystem,
    pub w0: FiniteWeyl,
    positive: Vec<usize>,
    nodes: Vec<AffineNode>,
    /// Node indices of each component (affine node first).
    components: Vec<Vec<usize>>,
    /// Simple coordinates of each relative root.
    simple_coords: Vec<IVec>,
}

/// A facet of the base alcove, given by the simple affine reflections fixing it.
#[derive(Clone, Debug)]
pub struct Facet {
    pub nodes: Vec<usize>,
    /// Elements of `W_f` with their weighted lengths `L(w)`.
    pub elements: Vec<(WeylElement, u32)>,
}

impl Facet {
    pub fn is_iwahori(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

impl IwahoriWeylGroup {
    pub fn build(g: &GroupDatum) -> Result<Self> {
        let rel = relative_root_data(g)?;
        Self::from_relative(g.name.clone(), rel)
    }

    pub fn from_relative(name: String, rel: RelativeRootSystem) -> Result<Self> {
        let w0 = FiniteWeyl::build(&rel)?;
        let positive: Vec<usize> = rel.positive_roots().collect();
        let r = rel.simple.len();
        let sm = IntMatrix::from_cols(rel.rank(), &rel.simple.iter().map(|&s| rel.roots[s].clone()).collect::<Vec<_>>());
        let simple_coords: Vec<IVec> = rel
            .roots
            .iter()
            .map(|a| solve_integer(&sm, a).ok_or_else(|| Error::Arithmetic("relative root outside the simple root span".into())))
            .collect::<Result<_>>()?;
        // connected components of the relative Dynkin diagram
        let cartan = rel.cartan_matrix();
        let mut comp_of = vec![usize::MAX; r];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..r {
            if comp_of[s] != usize::MAX {
                continue;
            }
            comp_of[s] = comps.len();
            let mut c = vec![s];
            let mut k = 0;
            while k < c.len() {
                for t in 0..r {
                    if comp_of[t] == usize::MAX && cartan[c[k]][t] != 0 {
                        comp_of[t] = comps.len();
                        c.push(t);
                    }
                }
                k += 1;
            }
            c.sort_unstable();
            comps.push(c);
        }
        let nc = comps.len();
        let mut nodes = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            let theta = positive
                .iter()
                .copied()
                .filter(|&a| (0..r).all(|s| simple_coords[a][s] == 0 || c.contains(&s)) && c.iter().any(|&s| simple_coords[a][s] != 0))
                .max_by_key(|&a| (simple_coords[a].iter().sum::<i64>(), simple_coords[a].clone()))
                .expect("component has a positive root");
            nodes.push(AffineNode {
                element: WeylElement { trans: rel.coroots[theta].clone(), fin: w0.reflection[theta] },
                root: theta,
                k: 1,
                param: rel.params[theta],
                affine: true,
                component: ci,
            });
        }
        for s in 0..r {
            nodes.push(AffineNode {
                element: WeylElement { trans: rel.lattice.zero(), fin: w0.simple[s] },
                root: rel.simple[s],
                k: 0,
                param: rel.params[rel.simple[s]],
                affine: false,
                component: comp_of[s],
            });
        }
        let components = comps.iter().enumerate().map(|(ci, c)| core::iter::once(ci).chain(c.iter().map(|s| nc + s)).collect()).collect();
        Ok(Self { name, rel, w0, positive, nodes, components, simple_coords })
    }

    /// Overrides the Hecke parameters of the simple affine reflections.
    pub fn with_params(mut self, params: &[u32]) -> Result<Self> {
        if params.len() != self.nodes.len() {
            return Err(Error::Incompatible(format!("{} parameters for {} nodes", params.len(), self.nodes.len())));
        }
        for (n, &p) in self.nodes.iter_mut().zip(params) {
            n.param = p;
        }
        Ok(self)
    }

    pub fn lattice_rank(&self) -> usize {
        self.rel.rank()
    }

    pub fn nodes(&self) -> &[AffineNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn affine_node_count(&self) -> usize {
        self.components.len()
    }

    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    pub fn simple_coords(&self, root: usize) -> &[i64] {
        &self.simple_coords[root]
    }

    pub fn node(&self, i: usize) -> &WeylElement {
        &self.nodes[i].element
    }

    pub fn param(&self, i: usize) -> u32 {
        self.nodes[i].param
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement { trans: self.rel.lattice.zero(), fin: 0 }
    }

    pub fn translation(&self, lam: &[i64]) -> WeylElement {
        WeylElement { trans: self.rel.lattice.reduce(lam.to_vec()), fin: 0 }
    }

    pub fn finite(&self, w: u16) -> WeylElement {
        WeylElement { trans: self.rel.lattice.zero(), fin: w }
    }

    pub fn act(&self, w: u16, lam: &[i64]) -> IVec {
        self.rel.lattice.reduce(self.w0.elements[w as usize].matrix.apply(lam))
    }

    pub fn mul(&self, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let wy = self.w0.elements[x.fin as usize].matrix.apply(&y.trans);
        let trans = self.rel.lattice.reduce(x.trans.iter().zip(&wy).map(|(a, b)| a + b).collect());
        WeylElement { trans, fin: self.w0.mul(x.fin, y.fin) }
    }

    pub fn inverse(&self, x: &WeylElement) -> WeylElement {
        let wi = self.w0.inverse(x.fin);
        let t = self.act(wi, &x.trans);
        WeylElement { trans: self.rel.lattice.reduce(t.iter().map(|a| -a).collect()), fin: wi }
    }

    fn is_positive(&self, root: u16) -> bool {
        self.rel.positive[root as usize]
    }

    /// Number of affine root hyperplanes separating the base alcove from `x` applied to it.
    pub fn length(&self, x: &WeylElement) -> usize {
        let winv = &self.w0.elements[self.w0.inverse(x.fin) as usize].perm;
        let mut l = 0i64;
        for &a in &self.positive {
            let n = dot(&self.rel.roots[a], &x.trans);
            l += if self.is_positive(winv[a]) { n.abs() } else { (n - 1).abs() };
        }
        l as usize
    }

    /// Sum of the parameters along a reduced word.
    pub fn weighted_length(&self, x: &WeylElement) -> u32 {
        let winv = &self.w0.elements[self.w0.inverse(x.fin) as usize].perm;
        let mut l = 0i64;
        for &a in &self.positive {
            let n = dot(&self.rel.roots[a], &x.trans);
            let c = if self.is_positive(winv[a]) { n.abs() } else { (n - 1).abs() };
            l += c * self.rel.params[a] as i64;
        }
        l as u32
    }

    /// Affine hyperplanes `(a, k)` (with `a` positive) separating the base alcove from `x A`.
    pub fn separating_hyperplanes(&self, x: &WeylElement) -> Vec<(usize, i64)> {
        let winv = &self.w0.elements[self.w0.inverse(x.fin) as usize].perm;
        let mut out = Vec::new();
        for &a in &self.positive {
            let n = dot(&self.rel.roots[a], &x.trans);
            // values of a on x A fill (lo, lo + 1)
            let lo = if self.is_positive(winv[a]) { n } else { n - 1 };
            if lo > 0 {
                out.extend((1..=lo).map(|k| (a, k)));
            } else if lo < 0 {
                out.extend((lo + 1..=0).map(|k| (a, k)));
            }
        }
        out
    }

    /// Affine reflection in the hyperplane `{a = k}`: `t^{k a^vee} s_a`.
    pub fn affine_reflection(&self, a: usize, k: i64) -> WeylElement {
        let t: IVec = self.rel.coroots[a].iter().map(|c| k * c).collect();
        WeylElement { trans: self.rel.lattice.reduce(t), fin: self.w0.reflection[a] }
    }

    pub fn is_left_descent(&self, i: usize, x: &WeylElement) -> bool {
        self.length(&self.mul(&self.nodes[i].element, x)) < self.length(x)
    }

    pub fn is_right_descent(&self, x: &WeylElement, i: usize) -> bool {
        self.length(&self.mul(x, &self.nodes[i].element)) < self.length(x)
    }

    /// `x = s_{i_1} ... s_{i_k} tau` with `tau` of length zero; the word is found by
    /// peeling the smallest left descent first.
    pub fn reduced_word(&self, x: &WeylElement) -> (Vec<usize>, WeylElement) {
        let mut x = x.clone();
        let mut word = Vec::new();
        let mut l = self.length(&x);
        while l > 0 {
            let (i, y) = (0..self.nodes.len())
                .map(|i| (i, self.mul(&self.nodes[i].element, &x)))
                .find(|(_, y)| self.length(y) < l)
                .expect("an element of positive length has a left descent");
            word.push(i);
            x = y;
            l -= 1;
        }
        (word, x)
    }

    pub fn from_word(&self, word: &[usize], tau: &WeylElement) -> WeylElement {
        let mut x = tau.clone();
        for &i in word.iter().rev() {
            x = self.mul(&self.nodes[i].element, &x);
        }
        x
    }

    /// `kappa(x)` in `pi_1(G)_I` coordinates.
    pub fn kottwitz(&self, x: &WeylElement) -> IVec {
        self.rel.fundamental_class(&x.trans)
    }

    /// Label of the length-zero part: its Kottwitz class.
    pub fn omega_label(&self, x: &WeylElement) -> IVec {
        self.kottwitz(x)
    }

    /// The length-zero element with a given Kottwitz class, if the class lies in the image.
    pub fn omega_element(&self, label: &[i64]) -> Option<WeylElement> {
        let q = &self.rel.fundamental_group;
        let a = q.projection.mul(&self.rel.embedding);
        let sys = a.hcat(&q.group.relations());
        let sol = solve_integer(&sys, label)?;
        let lam = self.rel.lattice.reduce(sol[..self.lattice_rank()].to_vec());
        Some(self.reduced_word(&self.translation(&lam)).1)
    }

    /// Bruhat order on `W_aff x| Omega` (equal Omega parts required).
    pub fn bruhat_leq(&self, x: &WeylElement, y: &WeylElement) -> bool {
        if self.kottwitz(x) != self.kottwitz(y) {
            return false;
        }
        let mut x = x.clone();
        let mut y = y.clone();
        loop {
            let ly = self.length(&y);
            let lx = self.length(&x);
            if lx >= ly {
                return lx == ly && x == y;
            }
            let i = (0..self.nodes.len()).find(|&i| self.is_left_descent(i, &y)).expect("descent exists");
            let s = &self.nodes[i].element;
            let sx = self.mul(s, &x);
            if self.length(&sx) < lx {
                x = sx;
            }
            y = self.mul(s, &y);
        }
    }

    /// All elements Bruhat-below some element of `tops`.
    pub fn lower_ideal(&self, tops: &[WeylElement]) -> BTreeSet<WeylElement> {
        let mut seen: BTreeSet<WeylElement> = tops.iter().cloned().collect();
        let mut queue: VecDeque<WeylElement> = tops.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for (a, k) in self.separating_hyperplanes(&x) {
                let y = self.mul(&self.affine_reflection(a, k), &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn facet(&self, nodes: &[usize]) -> Result<Facet> {
        let mut nodes = nodes.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&bad) = nodes.iter().find(|&&i| i >= self.nodes.len()) {
            return Err(Error::InfiniteFacet(format!("node {bad} does not exist ({} nodes)", self.nodes.len())));
        }
        for c in &self.components {
            if c.iter().all(|i| nodes.contains(i)) {
                return Err(Error::InfiniteFacet(format!("{nodes:?} contains every node of a component {c:?}")));
            }
        }
        let mut elements = vec![(self.identity(), 0u32)];
        let mut seen: BTreeSet<WeylElement> = BTreeSet::from([self.identity()]);
        let mut k = 0;
        while k < elements.len() {
            let (w, lw) = elements[k].clone();
            for &i in &nodes {
                let y = self.mul(&self.nodes[i].element, &w);
                if seen.insert(y.clone()) {
                    elements.push((y, lw + self.nodes[i].param));
                }
            }
            k += 1;
        }
        Ok(Facet { nodes, elements })
    }

    /// The hyperspecial facet at the origin (all finite simple nodes).
    pub fn hyperspecial(&self) -> Facet {
        let c = self.affine_node_count();
        self.facet(&(c..self.nodes.len()).collect::<Vec<_>>()).expect("finite nodes generate W_0")
    }

    pub fn iwahori(&self) -> Facet {
        self.facet(&[]).expect("empty facet")
    }

    /// Maximal-length element of `W_f x W_f`.
    pub fn max_in_double_coset(&self, x: &WeylElement, facet: &Facet) -> WeylElement {
        let mut x = x.clone();
        let mut l = self.length(&x);
        'outer: loop {
            for &i in &facet.nodes {
                let s = &self.nodes[i].element;
                for y in [self.mul(s, &x), self.mul(&x, s)] {
                    let ly = self.length(&y);
                    if ly > l {
                        x = y;
                        l = ly;
                        continue 'outer;
                    }
                }
            }
            return x;
        }
    }

    /// `W_0`-orbit of an element of `Lambda`.
    pub fn orbit(&self, lam: &[i64]) -> BTreeSet<IVec> {
        (0..self.w0.order() as u16).map(|w| self.act(w, lam)).collect()
    }

    /// Dominant representative of the orbit of `lam`.
    pub fn dominant(&self, lam: &[i64]) -> IVec {
        self.orbit(lam).into_iter().find(|x| self.rel.is_dominant(x)).expect("orbit meets the dominant chamber")
    }

    /// `Adm^f(lam)`: maximal-length representatives of the double cosets meeting
    /// the Bruhat ideal of `{t^{x lam}}`, sorted by length then reduced word.
    pub fn admissible_set(&self, lam: &[i64], facet: &Facet) -> Result<Vec<WeylElement>> {
        if !self.rel.is_dominant(lam) {
            return Err(Error::NotDominant(format!("{lam:?}")));
        }
        let tops: Vec<WeylElement> = self.orbit(lam).iter().map(|m| self.translation(m)).collect();
        let ideal = self.lower_ideal(&tops);
        let reps: BTreeSet<WeylElement> = if facet.is_iwahori() { ideal } else { ideal.iter().map(|x| self.max_in_double_coset(x, facet)).collect() };
        Ok(self.sort_canonical(reps))
    }

    pub fn sort_canonical(&self, set: impl IntoIterator<Item = WeylElement>) -> Vec<WeylElement> {
        let mut v: Vec<(usize, Vec<usize>, IVec, WeylElement)> = set
            .into_iter()
            .map(|x| {
                let (w, _) = self.reduced_word(&x);
                (w.len(), w, self.kottwitz(&x), x)
            })
            .collect();
        v.sort();
        v.into_iter().map(|t| t.3).collect()
    }

    /// Image in `Lambda` of an absolute coweight: dominated, projected to inertia
    /// coinvariants, and required to be Frobenius-invariant there.
    pub fn coweight_to_lattice(&self, mu: &[i64]) -> Result<IVec> {
        let lam = self
            .rel
            .coweight_to_lattice(mu)
            .ok_or_else(|| Error::Unsupported(format!("coweight {mu:?} is not Frobenius-invariant in the inertia coinvariants; base change to its field of definition")))?;
        Ok(self.dominant(&lam))
    }

    pub fn display(&self, x: &WeylElement) -> String {
        let (w, tau) = self.reduced_word(x);
        let mut s = String::new();
        for i in &w {
            s.push_str(&format!("s{i} "));
        }
        s.push_str(&format!("tau{:?}", self.kottwitz(&tau)));
        s
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{:?}.w{}", self.trans, self.fin)
    }
}

/// Identification of the Iwahori-Weyl group of `Res_{K/F} G_0` with that of `G_0` over `K`.
#[derive(Clone, Debug)]
pub struct RestrictionIso {
    pub base: IwahoriWeylGroup,
    /// Residue degree: parameters satisfy `L_F = f L_K`.
    pub f: u32,
    to_base_lattice: IntMatrix,
    from_base_lattice: IntMatrix,
    /// Finite Weyl group correspondence `F index -> K index`.
    fin_to_base: Vec<u16>,
    fin_from_base: Vec<u16>,
}

impl RestrictionIso {
    pub fn to_base(&self, x: &WeylElement) -> WeylElement {
        WeylElement { trans: self.base.rel.lattice.reduce(self.to_base_lattice.apply(&x.trans)), fin: self.fin_to_base[x.fin as usize] }
    }

    pub fn from_base(&self, g: &IwahoriWeylGroup, x: &WeylElement) -> WeylElement {
        WeylElement { trans: g.rel.lattice.reduce(self.from_base_lattice.apply(&x.trans)), fin: self.fin_from_base[x.fin as usize] }
    }

    pub fn lattice_from_base(&self, g: &IwahoriWeylGroup, lam0: &[i64]) -> IVec {
        g.rel.lattice.reduce(self.from_base_lattice.apply(lam0))
    }

    pub fn lattice_to_base(&self, lam: &[i64]) -> IVec {
        self.base.rel.lattice.reduce(self.to_base_lattice.apply(lam))
    }
}

/// Builds the identification for a datum produced by `weil_restrict`.
pub fn restriction_iso(g: &GroupDatum, w: &IwahoriWeylGroup) -> Result<RestrictionIso> {
    let blocks = g.restriction.as_ref().ok_or_else(|| Error::Incompatible(format!("{} is not a Weil restriction", g.name)))?;
    let base_g = &*blocks.base;
    let base = IwahoriWeylGroup::build(base_g)?;
    let r = base_g.root.rank();
    let n = g.root.rank();
    let brel = &base.rel;
    // K -> F: lift to X_*(T_0), copy into blocks (0, j), project
    let mut from_cols = Vec::new();
    for c in 0..brel.rank() {
        let mut e = vec![0; brel.rank()];
        e[c] = 1;
        let x0 = brel.coinvariants.section().apply(&brel.embedding.apply(&e));
        let mut x = vec![0; n];
        for j in 0..blocks.f {
            let b = blocks.block(0, j);
            for t in 0..r {
                x[b * r + t] += x0[t];
            }
        }
        let lam = w.rel.coweight_to_lattice(&x).ok_or_else(|| Error::Arithmetic("diagonal image is not Frobenius-invariant".into()))?;
        from_cols.push(lam);
    }
    let from_base_lattice = IntMatrix::from_cols(w.lattice_rank(), &from_cols);
    // F -> K: lift to X_*(T), sum the blocks (i, 0), project
    let mut to_cols = Vec::new();
    for c in 0..w.lattice_rank() {
        let mut e = vec![0; w.lattice_rank()];
        e[c] = 1;
        let x = w.rel.coinvariants.section().apply(&w.rel.embedding.apply(&e));
        let mut x0 = vec![0; r];
        for i in 0..blocks.e {
            let b = blocks.block(i, 0);
            for t in 0..r {
                x0[t] += x[b * r + t];
            }
        }
        let lam = brel.coweight_to_lattice(&x0).ok_or_else(|| Error::Arithmetic("block sum is not Frobenius-invariant".into()))?;
        to_cols.push(lam);
    }
    let to_base_lattice = IntMatrix::from_cols(base.lattice_rank(), &to_cols);
    if w.w0.order() != base.w0.order() || w.rel.simple.len() != base.rel.simple.len() {
        return Err(Error::Arithmetic("finite Weyl groups do not match under restriction".into()));
    }
    // W_0 correspondence through reduced words in matching simple reflections
    let mut fin_to_base = vec![0u16; w.w0.order()];
    let mut fin_from_base = vec![0u16; base.w0.order()];
    for (idx, el) in w.w0.elements.iter().enumerate() {
        let mut b = 0u16;
        for &i in &el.word {
            b = base.w0.mul(b, base.w0.simple[i as usize]);
        }
        fin_to_base[idx] = b;
        fin_from_base[b as usize] = idx as u16;
    }
    let iso = RestrictionIso { base, f: blocks.f, to_base_lattice, from_base_lattice, fin_to_base, fin_from_base };
    // the lattice maps must be inverse and equivariant
    for c in 0..w.lattice_rank() {
        let mut e = vec![0; w.lattice_rank()];
        e[c] = 1;
        let back = iso.lattice_from_base(w, &iso.lattice_to_base(&e));
        if back != w.rel.lattice.reduce(e.clone()) {
            return Err(Error::Arithmetic("lattice identification is not invertible".into()));
        }
        for s in 0..w.rel.simple.len() {
            let lhs = iso.lattice_to_base(&w.act(w.w0.simple[s], &e));
            let rhs = iso.base.act(iso.base.w0.simple[s], &iso.lattice_to_base(&e));
            if lhs != rhs {
                return Err(Error::Arithmetic("lattice identification is not W_0-equivariant".into()));
            }
        }
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::library::*;

    #[test]
    fn gl2_basics() {
        let w = IwahoriWeylGroup::build(&gl(2, 5)).unwrap();
        assert_eq!(w.w0.order(), 2);
        assert_eq!(w.node_count(), 2);
        assert_eq!(w.length(&w.translation(&[1, 0])), 1);
        assert_eq!(w.length(&w.translation(&[1, 1])), 0);
        for i in 0..2 {
            assert_eq!(w.length(w.node(i)), 1);
            assert_eq!(w.kottwitz(w.node(i)), vec![0]);
        }
        assert_eq!(w.kottwitz(&w.translation(&[1, 0])), vec![1]);
        let adm = w.admissible_set(&[1, 0], &w.iwahori()).unwrap();
        assert_eq!(adm.len(), 3);
        assert_eq!(w.length(&adm[0]), 0);
    }

    #[test]
    fn gl3_translation_length() {
        let w = IwahoriWeylGroup::build(&gl(3, 5)).unwrap();
        assert_eq!(w.length(&w.translation(&[1, 0, 0])), 2);
        assert_eq!(w.length(&w.translation(&[2, 1, 0])), 4);
    }

    #[test]
    fn reduced_words_roundtrip() {
        let w = IwahoriWeylGroup::build(&gl(3, 5)).unwrap();
        for lam in [[2, 0, -1], [0, 1, 0], [-1, 3, 0]] {
            for fin in 0..6u16 {
                let x = WeylElement { trans: lam.to_vec(), fin };
                let (word, tau) = w.reduced_word(&x);
                assert_eq!(word.len(), w.length(&x));
                assert_eq!(w.length(&tau), 0);
                assert_eq!(w.from_word(&word, &tau), x);
                assert_eq!(w.omega_element(&w.omega_label(&tau)).unwrap(), tau);
            }
        }
    }

    #[test]
    fn adm_counts_gl() {
        for n in 2..=4usize {
            let w = IwahoriWeylGroup::build(&gl(n, 5)).unwrap();
            let mut mu = vec![0; n];
            mu[0] = 1;
            assert_eq!(w.admissible_set(&mu, &w.iwahori()).unwrap().len(), (1 << n) - 1);
            assert_eq!(w.admissible_set(&mu, &w.hyperspecial()).unwrap().len(), 1);
        }
    }

    #[test]
    fn infinite_facet_rejected() {
        let w = IwahoriWeylGroup::build(&gl(2, 5)).unwrap();
        assert!(matches!(w.facet(&[0, 1]), Err(Error::InfiniteFacet(_))));
        assert!(matches!(w.admissible_set(&[0, 1], &w.iwahori()), Err(Error::NotDominant(_))));
    }

    #[test]
    fn restriction_identification() {
        for (e, f) in [(2, 1), (1, 2), (3, 1)] {
            let g = res_gl(2, e, f, 5);
            let w = IwahoriWeylGroup::build(&g).unwrap();
            let iso = restriction_iso(&g, &w).unwrap();
            for i in 0..w.node_count() {
                assert_eq!(iso.to_base(w.node(i)), *iso.base.node(i));
                assert_eq!(w.param(i), f * iso.base.param(i));
            }
        }
    }
}
