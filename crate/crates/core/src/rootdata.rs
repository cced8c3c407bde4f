//! Based root data with finite Galois actions, Weil restriction on lattices,
//! coinvariant lattices, and relative (restricted) root systems.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::lattice::{dot, kernel, solve_integer, FgAbelian, IVec, IntMatrix, Quotient};

/// Root datum `(X^*, roots, X_*, coroots)` with a chosen basis.
///
/// Coweights live in `Z^rank`. Roots are stored as functionals on coweights in
/// the dual basis, so the pairing is the dot product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRootDatum {
    rank: usize,
    roots: Vec<IVec>,
    coroots: Vec<IVec>,
    simple: Vec<usize>,
    positive: Vec<bool>,
    /// Coordinates of each root in the basis of simple roots.
    simple_coords: Vec<IVec>,
}

impl BasedRootDatum {
    /// Validates and normalizes a root datum.
    ///
    /// `roots[i]` is a vector of weights coordinates, paired with coweights by
    /// `pairing` (identity when `None`). `coroots[i]` is the coroot of `roots[i]`.
    /// `simple` lists the indices of the simple roots.
    pub fn new(rank: usize, roots: Vec<IVec>, coroots: Vec<IVec>, simple: Vec<usize>, pairing: Option<&IntMatrix>) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(invalid("root/coroot bijection", format!("{} roots but {} coroots", roots.len(), coroots.len())));
        }
        for v in roots.iter().chain(&coroots) {
            if v.len() != rank {
                return Err(invalid("lattice rank", format!("vector {v:?} has length != {rank}")));
            }
        }
        let roots = match pairing {
            None => roots,
            Some(b) => {
                if b.rows() != rank || b.cols() != rank {
                    return Err(invalid("pairing is rank x rank", format!("{}x{}", b.rows(), b.cols())));
                }
                if !b.is_unimodular() {
                    return Err(invalid("pairing is perfect", format!("det = {}", b.det())));
                }
                let bt = b.transpose();
                roots.iter().map(|r| bt.apply(r)).collect()
            }
        };
        for (i, (a, c)) in roots.iter().zip(&coroots).enumerate() {
            if dot(a, c) != 2 {
                return Err(invalid("<alpha, alpha^vee> = 2", format!("root #{i} pairs to {}", dot(a, c))));
            }
        }
        let mut seen = BTreeSet::new();
        for r in &roots {
            if !seen.insert(r.clone()) {
                return Err(invalid("roots distinct", format!("{r:?} repeated")));
            }
        }
        let index: BTreeMap<IVec, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        for r in &roots {
            let neg: IVec = r.iter().map(|x| -x).collect();
            if !index.contains_key(&neg) {
                return Err(invalid("root system closed under negation", format!("{r:?}")));
            }
            let dbl: IVec = r.iter().map(|x| 2 * x).collect();
            if index.contains_key(&dbl) {
                return Err(invalid("reduced root system", format!("{r:?} and its double are roots")));
            }
        }
        if simple.iter().any(|&s| s >= roots.len()) {
            return Err(invalid("simple roots are roots", format!("{simple:?}")));
        }
        // simple reflections permute roots and coroots compatibly
        for &s in &simple {
            for (i, (a, c)) in roots.iter().zip(&coroots).enumerate() {
                let ra: IVec = a.iter().zip(&roots[s]).map(|(x, y)| x - dot(a, &coroots[s]) * y).collect();
                let rc: IVec = c.iter().zip(&coroots[s]).map(|(x, y)| x - dot(&roots[s], c) * y).collect();
                match index.get(&ra) {
                    Some(&j) if coroots[j] == rc => {}
                    _ => {
                        return Err(invalid(
                            "simple reflections permute the roots",
                            format!("s_{s} does not map root/coroot #{i} to a root/coroot pair"),
                        ))
                    }
                }
            }
        }
        // generalized Cartan matrix
        for &i in &simple {
            for &j in &simple {
                let aij = dot(&roots[j], &coroots[i]);
                let aji = dot(&roots[i], &coroots[j]);
                if i != j && (aij > 0 || (aij == 0) != (aji == 0)) {
                    return Err(invalid("generalized Cartan matrix", format!("entries ({i},{j}) = {aij}, ({j},{i}) = {aji}")));
                }
            }
        }
        let sm = IntMatrix::from_cols(rank, &simple.iter().map(|&s| roots[s].clone()).collect::<Vec<_>>());
        if !simple.is_empty() && sm.rank() != simple.len() {
            return Err(invalid("simple roots independent", format!("{simple:?}")));
        }
        let mut simple_coords = Vec::with_capacity(roots.len());
        let mut positive = Vec::with_capacity(roots.len());
        for r in &roots {
            let c = solve_integer(&sm, r).ok_or_else(|| invalid("roots in the span of the simple roots", format!("{r:?}")))?;
            let pos = c.iter().all(|&x| x >= 0);
            let neg = c.iter().all(|&x| x <= 0);
            if !(pos || neg) {
                return Err(invalid("every root is positive or negative", format!("{r:?} has simple coordinates {c:?}")));
            }
            positive.push(pos);
            simple_coords.push(c);
        }
        let mut d = Self { rank, roots, coroots, simple, positive, simple_coords };
        d.canonicalize();
        Ok(d)
    }

    /// Sorts roots: positive before negative, then by height, then by simple coordinates.
    fn canonicalize(&mut self) {
        let n = self.roots.len();
        let mut order: Vec<usize> = (0..n).collect();
        let key = |i: usize| {
            let h: i64 = self.simple_coords[i].iter().sum();
            (!self.positive[i], h.abs(), self.simple_coords[i].iter().map(|x| -x.abs()).collect::<Vec<_>>(), self.simple_coords[i].clone())
        };
        order.sort_by_key(|&i| key(i));
        let inv: BTreeMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        self.roots = order.iter().map(|&i| self.roots[i].clone()).collect();
        self.coroots = order.iter().map(|&i| self.coroots[i].clone()).collect();
        self.positive = order.iter().map(|&i| self.positive[i]).collect();
        self.simple_coords = order.iter().map(|&i| self.simple_coords[i].clone()).collect();
        let mut simple: Vec<(usize, usize)> = self.simple.iter().enumerate().map(|(k, s)| (k, inv[s])).collect();
        simple.sort_by_key(|x| x.0);
        self.simple = simple.into_iter().map(|x| x.1).collect();
        // simple coordinates follow the loaded simple-root order, which is unchanged
    }

    /// `GL_n`: coweights `Z^n`, roots `e_i - e_j`.
    pub fn gl(n: usize) -> Self {
        let mut roots = Vec::new();
        let mut simple = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    r[j] = -1;
                    if j == i + 1 {
                        simple.push(roots.len());
                    }
                    roots.push(r);
                }
            }
        }
        // keep the simple roots in the order e_0-e_1, e_1-e_2, ...
        simple.sort_by_key(|&k| roots[k].iter().position(|&x| x == 1));
        Self::new(n, roots.clone(), roots, simple, None).expect("GL_n is a valid root datum")
    }

    /// A split torus of rank `n` (no roots).
    pub fn torus(n: usize) -> Self {
        Self::new(n, vec![], vec![], vec![], None).expect("torus is valid")
    }

    /// Semisimple datum of a Cartan matrix `a[i][j] = <alpha_j, alpha_i^vee>`.
    ///
    /// `simply_connected`: coweights = coroot lattice (basis = simple coroots);
    /// otherwise adjoint: coweights = coweight lattice (basis = fundamental coweights).
    pub fn from_cartan(a: &[IVec], simply_connected: bool) -> Result<Self> {
        let r = a.len();
        // coordinates: roots and coroots in the simple (co)root bases
        let mut pairs: Vec<(IVec, IVec)> = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                (e.clone(), e)
            })
            .collect();
        let mut seen: BTreeSet<IVec> = pairs.iter().map(|p| p.0.clone()).collect();
        let mut queue: VecDeque<usize> = (0..r).collect();
        // <root (simple coords c), coroot_i> = sum_j c_j a[i][j]
        let pair_rc = |c: &IVec, i: usize| -> i64 { (0..r).map(|j| c[j] * a[i][j]).sum() };
        let pair_cr = |d: &IVec, j: usize| -> i64 { (0..r).map(|i| d[i] * a[i][j]).sum() };
        while let Some(k) = queue.pop_front() {
            let (c, d) = pairs[k].clone();
            for i in 0..r {
                let mut c2 = c.clone();
                c2[i] -= pair_rc(&c, i);
                let mut d2 = d.clone();
                d2[i] -= pair_cr(&d, i);
                if seen.insert(c2.clone()) {
                    pairs.push((c2, d2));
                    queue.push_back(pairs.len() - 1);
                }
                if pairs.len() > 10_000 {
                    return Err(invalid("finite root system", "Cartan matrix generates too many roots"));
                }
            }
        }
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        // the orbit of the simple roots already contains the negative roots
        for (c, d) in &pairs {
            if simply_connected {
                // coweights in the simple coroot basis; root functional = (<alpha, alpha_i^vee>)_i
                roots.push((0..r).map(|i| pair_rc(c, i)).collect());
                coroots.push(d.clone());
            } else {
                // coweights in the fundamental coweight basis; coroot = (<alpha_j, beta^vee>)_j
                roots.push(c.clone());
                coroots.push((0..r).map(|j| pair_cr(d, j)).collect());
            }
        }
        Self::new(r, roots, coroots, (0..r).collect(), None)
    }

    /// Direct product of two root data (coordinates concatenated).
    pub fn product(&self, other: &Self) -> Self {
        let n = self.rank + other.rank;
        let pad = |v: &IVec, left: bool| -> IVec {
            let mut w = vec![0; n];
            let off = if left { 0 } else { self.rank };
            w[off..off + v.len()].copy_from_slice(v);
            w
        };
        let mut roots: Vec<IVec> = self.roots.iter().map(|r| pad(r, true)).collect();
        roots.extend(other.roots.iter().map(|r| pad(r, false)));
        let mut coroots: Vec<IVec> = self.coroots.iter().map(|r| pad(r, true)).collect();
        coroots.extend(other.coroots.iter().map(|r| pad(r, false)));
        let mut simple = self.simple.clone();
        simple.extend(other.simple.iter().map(|s| s + self.roots.len()));
        Self::new(n, roots, coroots, simple, None).expect("product of valid data is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[IVec] {
        &self.roots
    }

    pub fn coroots(&self) -> &[IVec] {
        &self.coroots
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_coords(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.roots.iter().position(|x| x.as_slice() == r)
    }

    pub fn coroot_index(&self, c: &[i64]) -> Option<usize> {
        self.coroots.iter().position(|x| x.as_slice() == c)
    }

    /// `2 rho`, the sum of positive roots, as a functional on coweights.
    pub fn two_rho(&self) -> IVec {
        let mut s = vec![0; self.rank];
        for i in self.positive_roots() {
            for (a, b) in s.iter_mut().zip(&self.roots[i]) {
                *a += b;
            }
        }
        s
    }

    /// `2 rho^vee`, the sum of positive coroots.
    pub fn two_rho_check(&self) -> IVec {
        let mut s = vec![0; self.rank];
        for i in self.positive_roots() {
            for (a, b) in s.iter_mut().zip(&self.coroots[i]) {
                *a += b;
            }
        }
        s
    }

    /// `<2 rho, mu>`.
    pub fn height(&self, mu: &[i64]) -> i64 {
        dot(&self.two_rho(), mu)
    }

    pub fn reflect_coweight(&self, root: usize, x: &[i64]) -> IVec {
        let k = dot(&self.roots[root], x);
        x.iter().zip(&self.coroots[root]).map(|(a, c)| a - k * c).collect()
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.simple.iter().all(|&s| dot(&self.roots[s], x) >= 0)
    }

    /// Dominant conjugate of `x` and the simple reflections applied (in order).
    /// The word is reduced and its product is the minimal-length conjugator.
    pub fn dominate(&self, x: &[i64]) -> (IVec, Vec<usize>) {
        let mut x = x.to_vec();
        let mut word = Vec::new();
        while let Some(k) = self.simple.iter().position(|&s| dot(&self.roots[s], &x) < 0) {
            x = self.reflect_coweight(self.simple[k], &x);
            word.push(k);
        }
        (x, word)
    }

    /// Orbit of a coweight under the Weyl group.
    pub fn weyl_orbit(&self, x: &[i64]) -> BTreeSet<IVec> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(x.to_vec());
        queue.push_back(x.to_vec());
        while let Some(y) = queue.pop_front() {
            for &s in &self.simple {
                let z = self.reflect_coweight(s, &y);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    /// Permutation of root indices induced by a coweight automorphism `g`
    /// (coroots map by `g`, roots by the contragredient). `None` if `g` does
    /// not preserve the root datum.
    pub fn root_permutation(&self, g: &IntMatrix) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.roots.len());
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            let gc = g.apply(c);
            let j = self.coroot_index(&gc)?;
            // contragredient: (g a)(g x) = a(x)  <=>  check on coweights e_k
            let ga = &self.roots[j];
            for k in 0..self.rank {
                let mut e = vec![0; self.rank];
                e[k] = 1;
                if dot(ga, &g.apply(&e)) != a[k] {
                    return None;
                }
            }
            perm.push(j);
        }
        Some(perm)
    }

    /// Cartan matrix `a[i][j] = <alpha_j, alpha_i^vee>` of the simple roots.
    pub fn cartan_matrix(&self) -> Vec<IVec> {
        self.simple.iter().map(|&i| self.simple.iter().map(|&j| dot(&self.roots[j], &self.coroots[i])).collect()).collect()
    }
}

/// Finite Galois data acting on the coweight lattice, plus local-field numerics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisDescentDatum {
    /// Order of the finite quotient generated by inertia and Frobenius.
    pub group_order: usize,
    /// Generators of the image of inertia.
    pub inertia: Vec<IntMatrix>,
    /// A fixed Frobenius lift.
    pub frobenius: IntMatrix,
    /// Residue cardinality of the base field.
    pub q: u64,
    /// Ramification index of the splitting data `K/F`.
    pub e: u32,
    /// Residue degree of `K/F`.
    pub f: u32,
}

impl GaloisDescentDatum {
    /// Trivial action on a lattice of rank `n`.
    pub fn split(n: usize, q: u64) -> Self {
        Self { group_order: 1, inertia: vec![], frobenius: IntMatrix::identity(n), q, e: 1, f: 1 }
    }

    pub fn generators(&self) -> Vec<IntMatrix> {
        let mut g = self.inertia.clone();
        g.push(self.frobenius.clone());
        g
    }

    /// All elements of the finite matrix group generated by inertia and Frobenius.
    pub fn group_elements(&self) -> Vec<IntMatrix> {
        matrix_group(self.frobenius.rows(), &self.generators())
    }

    /// All elements of the image of inertia.
    pub fn inertia_elements(&self) -> Vec<IntMatrix> {
        matrix_group(self.frobenius.rows(), &self.inertia)
    }

    /// Base change to the unramified extension of degree `m`: Frobenius `Phi^m`, `q^m`.
    pub fn unramified_base_change(&self, m: u32) -> Self {
        let mut d = self.clone();
        d.frobenius = self.frobenius.pow(m);
        d.q = self.q.pow(m);
        d.group_order = matrix_group(self.frobenius.rows(), &d.generators()).len();
        d
    }
}

/// Closure of a set of invertible matrices under multiplication (BFS).
pub fn matrix_group(n: usize, gens: &[IntMatrix]) -> Vec<IntMatrix> {
    let id = IntMatrix::identity(n);
    let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
            assert!(out.len() <= 100_000, "Galois action does not factor through a small finite group");
        }
    }
    out
}

/// Provenance of a datum built by [`weil_restrict`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilBlocks {
    pub base: Box<GroupDatum>,
    pub e: u32,
    pub f: u32,
}

impl WeilBlocks {
    pub fn block_count(&self) -> usize {
        (self.e * self.f) as usize
    }

    /// Block index of the coset `sigma^i Phi^j`.
    pub fn block(&self, i: u32, j: u32) -> usize {
        (i * self.f + j) as usize
    }
}

/// A quasi-split group over a local field, combinatorially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDatum {
    pub name: String,
    pub root: BasedRootDatum,
    pub galois: GaloisDescentDatum,
    pub restriction: Option<WeilBlocks>,
}

impl GroupDatum {
    /// Validates the Galois datum against the root datum.
    pub fn new(name: impl Into<String>, root: BasedRootDatum, galois: GaloisDescentDatum) -> Result<Self> {
        let d = Self { name: name.into(), root, galois, restriction: None };
        d.validate()?;
        Ok(d)
    }

    pub fn split(name: impl Into<String>, root: BasedRootDatum, q: u64) -> Self {
        let n = root.rank();
        Self { name: name.into(), root, galois: GaloisDescentDatum::split(n, q), restriction: None }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.root.rank();
        for g in self.galois.generators() {
            if g.rows() != n || g.cols() != n {
                return Err(invalid("Galois matrices act on the coweight lattice", format!("{}x{} for rank {n}", g.rows(), g.cols())));
            }
            if !g.is_unimodular() {
                return Err(invalid("Galois matrices are invertible", format!("{g:?}")));
            }
            if self.root.root_permutation(&g).is_none() {
                return Err(invalid("Galois action permutes roots and coroots", format!("{g:?}")));
            }
        }
        let all = self.galois.group_elements();
        if all.len() != self.galois.group_order {
            return Err(invalid("Galois group order", format!("generators give {} elements, stated {}", all.len(), self.galois.group_order)));
        }
        let inertia: BTreeSet<IntMatrix> = self.galois.inertia_elements().into_iter().collect();
        for g in &all {
            let ginv = g.inverse_unimodular().expect("checked unimodular");
            for h in &self.galois.inertia {
                if !inertia.contains(&g.mul(h).mul(&ginv)) {
                    return Err(invalid("inertia is normal", format!("{g:?} conjugates an inertia generator outside inertia")));
                }
            }
        }
        if self.galois.q < 2 || self.galois.e == 0 || self.galois.f == 0 {
            return Err(invalid("local field numerics", format!("q={}, e={}, f={}", self.galois.q, self.galois.e, self.galois.f)));
        }
        Ok(())
    }

    /// Direct product with diagonal Galois action.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.galois.q != other.galois.q {
            return Err(Error::Incompatible(format!("residue fields differ: {} vs {}", self.galois.q, other.galois.q)));
        }
        let root = self.root.product(&other.root);
        let block = |a: &IntMatrix, b: &IntMatrix| {
            let n = a.rows() + b.rows();
            let mut m = IntMatrix::zeros(n, n);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    m.set(r, c, a.get(r, c));
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.set(a.rows() + r, a.rows() + c, b.get(r, c));
                }
            }
            m
        };
        let ia = if self.galois.inertia.is_empty() { vec![IntMatrix::identity(self.root.rank())] } else { self.galois.inertia.clone() };
        let ib = if other.galois.inertia.is_empty() { vec![IntMatrix::identity(other.root.rank())] } else { other.galois.inertia.clone() };
        // inertia generated by pairs; assumes the common quotient is the product of the cyclic images
        let mut inertia = Vec::new();
        for a in &ia {
            inertia.push(block(a, &IntMatrix::identity(other.root.rank())));
        }
        for b in &ib {
            inertia.push(block(&IntMatrix::identity(self.root.rank()), b));
        }
        inertia.retain(|m| !m.is_identity());
        let mut galois = GaloisDescentDatum {
            group_order: 0,
            inertia,
            frobenius: block(&self.galois.frobenius, &other.galois.frobenius),
            q: self.galois.q,
            e: self.galois.e.max(other.galois.e),
            f: self.galois.f.max(other.galois.f),
        };
        galois.group_order = galois.group_elements().len();
        Self::new(format!("{} x {}", self.name, other.name), root, galois)
    }
}

/// `Z^n / <x - g x>`: coinvariants of a lattice under a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinvariantLattice {
    quotient: Quotient,
    source_rank: usize,
}

impl CoinvariantLattice {
    pub fn free_rank(&self) -> usize {
        self.quotient.group.free_rank
    }

    /// Elementary divisors `> 1`, ascending.
    pub fn torsion(&self) -> &[i64] {
        &self.quotient.group.torsion
    }

    pub fn group(&self) -> &FgAbelian {
        &self.quotient.group
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.quotient.projection
    }

    pub fn section(&self) -> &IntMatrix {
        &self.quotient.section
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn project(&self, v: &[i64]) -> IVec {
        self.quotient.project(v)
    }

    /// Matrix of the map induced by a lattice endomorphism commuting with the action.
    pub fn induced(&self, g: &IntMatrix) -> IntMatrix {
        self.quotient.induced(g)
    }
}

/// Coinvariants of `Z^n` under the group generated by `generators`.
pub fn coinvariants(n: usize, generators: &[IntMatrix]) -> CoinvariantLattice {
    let id = IntMatrix::identity(n);
    let mut rel = IntMatrix::zeros(n, 0);
    for g in generators {
        rel = rel.hcat(&id.sub(g));
    }
    CoinvariantLattice { quotient: Quotient::of(n, &rel), source_rank: n }
}

/// Coinvariants of a finitely generated abelian group under endomorphisms.
pub fn coinvariants_of_group(a: &FgAbelian, generators: &[IntMatrix]) -> CoinvariantLattice {
    let id = IntMatrix::identity(a.dim());
    let mut rel = IntMatrix::zeros(a.dim(), 0);
    for g in generators {
        rel = rel.hcat(&id.sub(g));
    }
    CoinvariantLattice { quotient: Quotient::of_group(a, &rel), source_rank: a.dim() }
}

/// Weil restriction of `base` (a group over `K`) along `K/F` with ramification
/// index `e` and residue degree `f`; `q` is the residue cardinality of `F`.
///
/// The coweight lattice becomes `e*f` blocks indexed by cosets `sigma^i Phi^j`,
/// block `(i, j)` at position `i*f + j`. Inertia of `F` acts by `sigma`, cycling
/// `i` and applying the inertia generator of `K` on wrap-around; Frobenius cycles
/// `j` and applies the Frobenius of `K` on wrap-around. This is the induced module
/// when the Galois quotient is abelian (e.g. `e | q - 1`, commuting actions on `K`).
pub fn weil_restrict(base: &GroupDatum, e: u32, f: u32, q: u64) -> Result<GroupDatum> {
    if e == 0 || f == 0 {
        return Err(Error::DegreeMismatch("degrees must be positive".into()));
    }
    if base.galois.q != q.pow(f) {
        return Err(Error::DegreeMismatch(format!(
            "residue field of K has {} elements, expected q^f = {}^{} = {}",
            base.galois.q,
            q,
            f,
            q.pow(f)
        )));
    }
    if base.galois.inertia.len() > 1 {
        return Err(Error::Unsupported("Weil restriction needs cyclic (tame) inertia on the base".into()));
    }
    let r = base.root.rank();
    let nb = (e * f) as usize;
    let n = r * nb;
    let sigma_k = base.galois.inertia.first().cloned().unwrap_or_else(|| IntMatrix::identity(r));
    let phi_k = &base.galois.frobenius;
    if sigma_k.mul(phi_k) != phi_k.mul(&sigma_k) {
        return Err(Error::Unsupported("Weil restriction needs commuting inertia and Frobenius on the base".into()));
    }
    let blocks = WeilBlocks { base: Box::new(base.clone()), e, f };
    let place = |m: &mut IntMatrix, to: usize, from: usize, g: &IntMatrix| {
        for a in 0..r {
            for b in 0..r {
                m.set(to * r + a, from * r + b, g.get(a, b));
            }
        }
    };
    let id = IntMatrix::identity(r);
    let mut sigma = IntMatrix::zeros(n, n);
    let mut phi = IntMatrix::zeros(n, n);
    for i in 0..e {
        for j in 0..f {
            let from = blocks.block(i, j);
            if i + 1 < e {
                place(&mut sigma, blocks.block(i + 1, j), from, &id);
            } else {
                place(&mut sigma, blocks.block(0, j), from, &sigma_k);
            }
            if j + 1 < f {
                place(&mut phi, blocks.block(i, j + 1), from, &id);
            } else {
                place(&mut phi, blocks.block(i, 0), from, phi_k);
            }
        }
    }
    let pad = |b: usize, v: &IVec| {
        let mut w = vec![0; n];
        w[b * r..(b + 1) * r].copy_from_slice(v);
        w
    };
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut simple = Vec::new();
    let nr = base.root.roots().len();
    for b in 0..nb {
        for k in 0..nr {
            roots.push(pad(b, &base.root.roots()[k]));
            coroots.push(pad(b, &base.root.coroots()[k]));
        }
        simple.extend(base.root.simple().iter().map(|s| b * nr + s));
    }
    let root = BasedRootDatum::new(n, roots, coroots, simple, None)?;
    let inertia = if sigma.is_identity() { vec![] } else { vec![sigma] };
    let mut galois = GaloisDescentDatum { group_order: 0, inertia, frobenius: phi, q, e, f };
    galois.group_order = galois.group_elements().len();
    let expected = nb * base.galois.group_order;
    if !galois.group_order.is_multiple_of((e * f) as usize) || galois.group_order > expected {
        return Err(Error::DegreeMismatch(format!("Galois quotient of order {} inconsistent with [K:F] = {}", galois.group_order, e * f)));
    }
    let mut d = GroupDatum::new(format!("Res_{{e={e},f={f}}}({})", base.name), root, galois)?;
    d.restriction = Some(blocks);
    Ok(d)
}

/// Relative root system over `F` of a quasi-split group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeRootSystem {
    /// `X_*(T)_I` with its projection from `X_*(T)`.
    pub coinvariants: CoinvariantLattice,
    /// Frobenius acting on `X_*(T)_I`.
    pub frobenius: IntMatrix,
    /// `Lambda = (X_*(T)_I)^Phi`.
    pub lattice: FgAbelian,
    /// Embedding `Lambda -> X_*(T)_I`.
    pub embedding: IntMatrix,
    /// Relative roots as functionals on `Lambda` coordinates (zero on torsion).
    pub roots: Vec<IVec>,
    /// Relative coroots as elements of `Lambda`.
    pub coroots: Vec<IVec>,
    pub positive: Vec<bool>,
    /// Simple relative roots, in the loaded simple-root order.
    pub simple: Vec<usize>,
    /// Hecke parameter exponent `L` of each relative root (number of inertia
    /// orbits of absolute roots in its Frobenius orbit).
    pub params: Vec<u32>,
    /// Number of absolute roots restricting to each relative root.
    pub multiplicity: Vec<usize>,
    /// For each absolute root, the relative root it restricts to.
    pub restriction: Vec<usize>,
    /// `pi_1(G)_I = X_*(T)_I / <coroots>`, presented on `X_*(T)_I` coordinates.
    pub fundamental_group: Quotient,
}

impl RelativeRootSystem {
    pub fn rank(&self) -> usize {
        self.lattice.dim()
    }

    pub fn pair(&self, root: usize, lam: &[i64]) -> i64 {
        dot(&self.roots[root], lam)
    }

    pub fn reflect(&self, root: usize, lam: &[i64]) -> IVec {
        let k = self.pair(root, lam);
        self.lattice.reduce(lam.iter().zip(&self.coroots[root]).map(|(a, c)| a - k * c).collect())
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.positive[i])
    }

    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        self.simple.iter().all(|&s| self.pair(s, lam) >= 0)
    }

    /// Sum of positive relative coroots.
    pub fn two_rho_check(&self) -> IVec {
        let mut s = self.lattice.zero();
        for i in self.positive_roots() {
            for (a, b) in s.iter_mut().zip(&self.coroots[i]) {
                *a += b;
            }
        }
        self.lattice.reduce(s)
    }

    /// Sum of positive relative roots (functional).
    pub fn two_rho(&self) -> IVec {
        let mut s = vec![0; self.rank()];
        for i in self.positive_roots() {
            for (a, b) in s.iter_mut().zip(&self.roots[i]) {
                *a += b;
            }
        }
        s
    }

    /// Cartan matrix of the simple relative roots.
    pub fn cartan_matrix(&self) -> Vec<IVec> {
        self.simple.iter().map(|&i| self.simple.iter().map(|&j| dot(&self.roots[j], &self.coroots[i])).collect()).collect()
    }

    /// Image in `Lambda` of an absolute coweight, if it is Frobenius-invariant in `X_*(T)_I`.
    pub fn coweight_to_lattice(&self, mu: &[i64]) -> Option<IVec> {
        let c = self.coinvariants.project(mu);
        self.coinvariant_to_lattice(&c)
    }

    /// Preimage under the embedding `Lambda -> X_*(T)_I`.
    pub fn coinvariant_to_lattice(&self, c: &[i64]) -> Option<IVec> {
        let g = self.coinvariants.group();
        let sys = self.embedding.hcat(&g.relations());
        let sol = solve_integer(&sys, c)?;
        Some(self.lattice.reduce(sol[..self.lattice.dim()].to_vec()))
    }

    /// Class in `pi_1(G)_I` of an element of `Lambda`.
    pub fn fundamental_class(&self, lam: &[i64]) -> IVec {
        let c = self.embedding.apply(lam);
        self.fundamental_group.project(&c)
    }

    /// Dynkin type of the relative root system, e.g. `["A1"]` or `["A2", "A1"]`.
    pub fn type_label(&self) -> Vec<String> {
        cartan_type(&self.cartan_matrix())
    }
}

/// Computes the relative root system of a quasi-split tame group.
pub fn relative_root_data(g: &GroupDatum) -> Result<RelativeRootSystem> {
    let rd = &g.root;
    let n = rd.rank();
    let nroots = rd.roots().len();
    let simple_set: BTreeSet<usize> = rd.simple().iter().copied().collect();
    let mut perms = Vec::new();
    for m in &g.galois.inertia {
        let p = rd.root_permutation(m).ok_or_else(|| invalid("inertia permutes roots", format!("{m:?}")))?;
        if rd.simple().iter().any(|s| !simple_set.contains(&p[*s])) {
            return Err(Error::Unsupported("inertia does not preserve the simple roots: not quasi-split over the maximal unramified extension".into()));
        }
        perms.push(p);
    }
    let phi_perm = rd.root_permutation(&g.galois.frobenius).ok_or_else(|| invalid("Frobenius permutes roots", String::new()))?;
    if rd.simple().iter().any(|s| !simple_set.contains(&phi_perm[*s])) {
        return Err(Error::Unsupported("Frobenius does not preserve the simple roots: group is not quasi-split".into()));
    }

    let coinv = coinvariants(n, &g.galois.inertia);
    let frob = coinv.induced(&g.galois.frobenius);

    // inertia orbits of absolute roots
    let mut iorbit = vec![usize::MAX; nroots];
    let mut iorbits: Vec<Vec<usize>> = Vec::new();
    for r in 0..nroots {
        if iorbit[r] != usize::MAX {
            continue;
        }
        let mut orb = vec![r];
        let mut k = 0;
        while k < orb.len() {
            for p in &perms {
                let s = p[orb[k]];
                if !orb.contains(&s) {
                    orb.push(s);
                }
            }
            k += 1;
        }
        orb.sort_unstable();
        for &x in &orb {
            iorbit[x] = iorbits.len();
        }
        iorbits.push(orb);
    }
    // inertia-relative roots: orbit sums on X_*(T)_I; coroots: projected coroot
    let sec = coinv.section();
    let ifunc: Vec<IVec> = iorbits
        .iter()
        .map(|orb| {
            let mut a = vec![0; n];
            for &r in orb {
                for (x, y) in a.iter_mut().zip(&rd.roots()[r]) {
                    *x += y;
                }
            }
            sec.transpose().apply(&a)
        })
        .collect();
    let icoroot: Vec<IVec> = iorbits.iter().map(|orb| coinv.project(&rd.coroots()[orb[0]])).collect();
    for (k, orb) in iorbits.iter().enumerate() {
        let lifted = coinv.section().apply(&icoroot[k]);
        let mut a = vec![0; n];
        for &r in orb {
            for (x, y) in a.iter_mut().zip(&rd.roots()[r]) {
                *x += y;
            }
        }
        if dot(&a, &lifted) != 2 {
            return Err(Error::Unsupported(format!(
                "inertia orbit of root #{} is not orthogonal: non-reduced (BC-type) echelonnage root system",
                orb[0]
            )));
        }
    }
    // Frobenius orbits of inertia orbits
    let mut forbit = vec![usize::MAX; iorbits.len()];
    let mut forbits: Vec<Vec<usize>> = Vec::new();
    for k in 0..iorbits.len() {
        if forbit[k] != usize::MAX {
            continue;
        }
        let mut orb = vec![k];
        let mut cur = k;
        loop {
            let next = iorbit[phi_perm[iorbits[cur][0]]];
            if next == k {
                break;
            }
            orb.push(next);
            cur = next;
        }
        for &x in &orb {
            forbit[x] = forbits.len();
        }
        forbits.push(orb);
    }
    // Lambda = Frobenius invariants of the coinvariants
    let cg = coinv.group().clone();
    let id = IntMatrix::identity(cg.dim());
    let (lattice, embedding) = kernel(&cg, &cg, &cg.reduce_matrix(&frob.sub(&id)));
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut positive = Vec::new();
    let mut params = Vec::new();
    let mut multiplicity = Vec::new();
    let mut rel_of_forbit = Vec::new();
    let rel_sys = embedding.hcat(&cg.relations());
    for orb in &forbits {
        let func = embedding.transpose().apply(&ifunc[orb[0]]);
        let mut norm = cg.zero();
        for &k in orb {
            for (x, y) in norm.iter_mut().zip(&icoroot[k]) {
                *x += y;
            }
        }
        let norm = cg.reduce(norm);
        let sol = solve_integer(&rel_sys, &norm).ok_or_else(|| Error::Arithmetic("coroot norm is not Frobenius invariant".into()))?;
        let cor = lattice.reduce(sol[..lattice.dim()].to_vec());
        if dot(&func, &cor) != 2 {
            return Err(Error::Unsupported("Frobenius orbit is not orthogonal: non-reduced relative root system".into()));
        }
        if roots.contains(&func) {
            return Err(Error::Unsupported("distinct Frobenius orbits restrict to the same relative root".into()));
        }
        rel_of_forbit.push(roots.len());
        roots.push(func);
        coroots.push(cor);
        positive.push(rd.is_positive(iorbits[orb[0]][0]));
        params.push(orb.len() as u32);
        multiplicity.push(orb.iter().map(|&k| iorbits[k].len()).sum());
    }
    let restriction: Vec<usize> = (0..nroots).map(|r| rel_of_forbit[forbit[iorbit[r]]]).collect();
    let mut simple = Vec::new();
    for &s in rd.simple() {
        let rel = restriction[s];
        if !simple.contains(&rel) {
            simple.push(rel);
        }
    }
    // pi_1(G)_I
    let gens: Vec<IVec> = icoroot.clone();
    let fundamental_group = Quotient::of_group(&cg, &IntMatrix::from_cols(cg.dim(), &gens));
    Ok(RelativeRootSystem {
        coinvariants: coinv,
        frobenius: frob,
        lattice,
        embedding,
        roots,
        coroots,
        positive,
        simple,
        params,
        multiplicity,
        restriction,
        fundamental_group,
    })
}

/// Dynkin labels of the connected components of a Cartan matrix.
pub fn cartan_type(a: &[IVec]) -> Vec<String> {
    let r = a.len();
    let mut comp = vec![usize::MAX; r];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..r {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut c = vec![s];
        comp[s] = comps.len();
        let mut k = 0;
        while k < c.len() {
            let i = c[k];
            for j in 0..r {
                if a[i][j] != 0 && i != j && comp[j] == usize::MAX {
                    comp[j] = comps.len();
                    c.push(j);
                }
            }
            k += 1;
        }
        comps.push(c);
    }
    comps
        .iter()
        .map(|c| {
            let n = c.len();
            let mut degree = vec![0usize; n];
            let mut multi = None;
            for (x, &i) in c.iter().enumerate() {
                for &j in c {
                    if i != j && a[i][j] != 0 {
                        degree[x] += 1;
                        if a[i][j] * a[j][i] > 1 {
                            multi = Some((a[i][j] * a[j][i], i, j));
                        }
                    }
                }
            }
            let branch = degree.iter().any(|&d| d > 2);
            match (multi, branch) {
                (None, false) => format!("A{n}"),
                (Some((3, _, _)), _) => "G2".into(),
                (Some((2, i, j)), _) if n == 4 && degree[c.iter().position(|&x| x == i).unwrap()] == 2 && degree[c.iter().position(|&x| x == j).unwrap()] == 2 => {
                    "F4".into()
                }
                (Some((2, i, j)), _) => {
                    // a[i][j] = -2 means alpha_j is long and alpha_i short
                    let short = if a[i][j].abs() == 2 { i } else { j };
                    let short_is_leaf = degree[c.iter().position(|&x| x == short).unwrap()] == 1;
                    if n == 2 {
                        "B2".into()
                    } else if short_is_leaf {
                        format!("B{n}")
                    } else {
                        format!("C{n}")
                    }
                }
                (None, true) => match n {
                    6 => "E6".into(),
                    7 if degree.iter().filter(|&&d| d == 1).count() == 3 && !is_d_shape(c, a) => "E7".into(),
                    8 if !is_d_shape(c, a) => "E8".into(),
                    _ => format!("D{n}"),
                },
                _ => format!("?{n}"),
            }
        })
        .collect()
}

fn is_d_shape(c: &[usize], a: &[IVec]) -> bool {
    // D_n: the branch node has two leaf neighbours
    for &i in c {
        let nb: Vec<usize> = c.iter().copied().filter(|&j| j != i && a[i][j] != 0).collect();
        if nb.len() == 3 {
            let leaves = nb.iter().filter(|&&j| c.iter().filter(|&&k| k != j && a[j][k] != 0).count() == 1).count();
            return leaves >= 2;
        }
    }
    false
}

/// Standard shipped group data.
pub mod library {
    use super::*;

    pub fn gl(n: usize, q: u64) -> GroupDatum {
        GroupDatum::split(format!("GL{n}"), BasedRootDatum::gl(n), q)
    }

    pub fn sl(n: usize, q: u64) -> GroupDatum {
        GroupDatum::split(format!("SL{n}"), BasedRootDatum::from_cartan(&type_a(n - 1), true).expect("type A"), q)
    }

    pub fn pgl(n: usize, q: u64) -> GroupDatum {
        GroupDatum::split(format!("PGL{n}"), BasedRootDatum::from_cartan(&type_a(n - 1), false).expect("type A"), q)
    }

    /// Cartan matrix of type `A_r`.
    pub fn type_a(r: usize) -> Vec<IVec> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    /// `a[i][j] = <alpha_j, alpha_i^vee>` for `B_r` (last simple root short).
    pub fn type_b(r: usize) -> Vec<IVec> {
        let mut a = type_a(r);
        if r >= 2 {
            a[r - 1][r - 2] = -2;
        }
        a
    }

    /// `C_r` (last simple root long).
    pub fn type_c(r: usize) -> Vec<IVec> {
        let mut a = type_a(r);
        if r >= 2 {
            a[r - 2][r - 1] = -2;
        }
        a
    }

    pub fn type_g2() -> Vec<IVec> {
        vec![vec![2, -1], vec![-3, 2]]
    }

    /// `Res_{K/F} GL_n` with `K/F` of ramification `e`, residue degree `f`.
    pub fn res_gl(n: usize, e: u32, f: u32, q: u64) -> GroupDatum {
        weil_restrict(&gl(n, q.pow(f)), e, f, q).expect("Weil restriction of a split group")
    }

    pub fn res_sl(n: usize, e: u32, f: u32, q: u64) -> GroupDatum {
        weil_restrict(&sl(n, q.pow(f)), e, f, q).expect("Weil restriction of a split group")
    }

    pub fn res_pgl(n: usize, e: u32, f: u32, q: u64) -> GroupDatum {
        weil_restrict(&pgl(n, q.pow(f)), e, f, q).expect("Weil restriction of a split group")
    }

    /// `Res_{K/F} G_m` with `K/F` totally ramified of degree `e`.
    pub fn ramified_torus(e: u32, q: u64) -> GroupDatum {
        let base = GroupDatum::split("Gm", BasedRootDatum::torus(1), q);
        weil_restrict(&base, e, 1, q).expect("Weil restriction of G_m")
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;

    #[test]
    fn gl_and_cartan_data() {
        let g = BasedRootDatum::gl(3);
        assert_eq!(g.roots().len(), 6);
        assert_eq!(g.two_rho(), vec![2, 0, -2]);
        assert_eq!(g.cartan_matrix(), type_a(2));
        let b2 = BasedRootDatum::from_cartan(&type_b(2), false).unwrap();
        assert_eq!(b2.roots().len(), 8);
        let g2 = BasedRootDatum::from_cartan(&type_g2(), true).unwrap();
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(cartan_type(&g2.cartan_matrix()), vec!["G2"]);
        assert_eq!(cartan_type(&type_b(3)), vec!["B3"]);
        assert_eq!(cartan_type(&type_c(3)), vec!["C3"]);
    }

    #[test]
    fn reflections_preserve_roots_exhaustively() {
        for d in [BasedRootDatum::gl(4), BasedRootDatum::from_cartan(&type_b(3), true).unwrap(), BasedRootDatum::from_cartan(&type_g2(), false).unwrap()] {
            let set: BTreeSet<IVec> = d.coroots().iter().cloned().collect();
            for r in 0..d.roots().len() {
                let img: BTreeSet<IVec> = d.coroots().iter().map(|c| d.reflect_coweight(r, c)).collect();
                assert_eq!(img, set);
            }
        }
    }

    #[test]
    fn malformed_pairing_is_rejected() {
        let bad = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let err = BasedRootDatum::new(2, vec![vec![1, -1], vec![-1, 1]], vec![vec![1, -1], vec![-1, 1]], vec![0], Some(&bad)).unwrap_err();
        assert!(matches!(err, Error::Invalid { invariant: "pairing is perfect", .. }));
        let err = BasedRootDatum::new(2, vec![vec![1, -1], vec![-1, 1]], vec![vec![2, -2], vec![-2, 2]], vec![0], None).unwrap_err();
        assert!(matches!(err, Error::Invalid { invariant: "<alpha, alpha^vee> = 2", .. }));
    }

    #[test]
    fn restriction_of_rank_one_torus() {
        let t = ramified_torus(2, 5);
        assert_eq!(t.root.rank(), 2);
        assert_eq!(t.galois.inertia[0], IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        let c = coinvariants(2, &t.galois.generators());
        assert_eq!(c.free_rank(), 1);
        assert!(c.torsion().is_empty());
    }

    #[test]
    fn restriction_multiplies_rank_and_roots() {
        for (e, f) in [(2, 1), (1, 2), (3, 1), (1, 3), (2, 2)] {
            let g = res_gl(3, e, f, 7);
            assert_eq!(g.root.rank(), 3 * (e * f) as usize);
            assert_eq!(g.root.roots().len(), 6 * (e * f) as usize);
            assert_eq!(g.galois.group_order, (e * f) as usize);
        }
    }

    #[test]
    fn restriction_degree_mismatch() {
        let base = gl(2, 5);
        assert!(matches!(weil_restrict(&base, 1, 2, 5), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn coinvariants_examples() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let c = coinvariants(2, &[swap]);
        assert_eq!((c.free_rank(), c.torsion().len()), (1, 0));
        let neg = IntMatrix::from_rows(&[vec![-1]]);
        let c = coinvariants(1, &[neg]);
        assert_eq!((c.free_rank(), c.torsion()), (0, &[2][..]));
    }

    #[test]
    fn relative_system_split_and_ramified() {
        let g = gl(3, 5);
        let rel = relative_root_data(&g).unwrap();
        assert_eq!(rel.roots.len(), 6);
        assert_eq!(rel.type_label(), vec!["A2"]);
        assert!(rel.params.iter().all(|&l| l == 1));

        let r = res_gl(3, 2, 1, 5);
        let rel = relative_root_data(&r).unwrap();
        assert_eq!(rel.lattice, FgAbelian::free(3));
        assert_eq!(rel.type_label(), vec!["A2"]);
        assert!(rel.params.iter().all(|&l| l == 1));
        assert!(rel.multiplicity.iter().all(|&m| m == 2));

        let u = res_gl(2, 1, 2, 5);
        let rel = relative_root_data(&u).unwrap();
        assert_eq!(rel.coinvariants.free_rank(), 4);
        assert_eq!(rel.lattice, FgAbelian::free(2));
        assert_eq!(rel.type_label(), vec!["A1"]);
        assert_eq!(rel.params, vec![2, 2]);
    }

    #[test]
    fn swap_on_two_a1_blocks() {
        // SL2 x SL2 with swapped factors, both as inertia and as Frobenius
        let sl2 = sl(2, 25);
        let base = BasedRootDatum::product(&sl2.root, &sl2.root);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ram = GroupDatum::new(
            "ram",
            base.clone(),
            GaloisDescentDatum { group_order: 2, inertia: vec![swap.clone()], frobenius: IntMatrix::identity(2), q: 5, e: 2, f: 1 },
        )
        .unwrap();
        let rel = relative_root_data(&ram).unwrap();
        assert_eq!(rel.type_label(), vec!["A1"]);
        let pos = rel.positive_roots().next().unwrap();
        assert_eq!(rel.pair(pos, &rel.coroots[pos]), 2);
        let unr = GroupDatum::new(
            "unr",
            base,
            GaloisDescentDatum { group_order: 2, inertia: vec![], frobenius: swap, q: 5, e: 1, f: 2 },
        )
        .unwrap();
        let rel = relative_root_data(&unr).unwrap();
        assert_eq!(rel.type_label(), vec!["A1"]);
        // the coroot is the diagonal (1,1) in X_*(T)
        let pos = rel.positive_roots().next().unwrap();
        let c = rel.coinvariants.section().apply(&rel.embedding.apply(&rel.coroots[pos]));
        assert_eq!(c, vec![1, 1]);
    }

    #[test]
    fn unitary_type_is_flagged() {
        // SL3 with the diagram automorphism in inertia: orbit {alpha_1, alpha_2} is not orthogonal
        let sl3 = sl(3, 5);
        let flip = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let g = GroupDatum::new(
            "SU3",
            sl3.root.clone(),
            GaloisDescentDatum { group_order: 2, inertia: vec![flip], frobenius: IntMatrix::identity(2), q: 5, e: 2, f: 1 },
        )
        .unwrap();
        assert!(matches!(relative_root_data(&g), Err(Error::Unsupported(_))));
    }
}
