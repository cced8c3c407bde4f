//! Representations of the L-group: weights (as coweights of `G`), Galois
//! operators over a cyclotomic field, induction, inertia invariants and traces.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{dot, IVec, IntMatrix};
use crate::rootdata::{BasedRootDatum, CoinvariantLattice, GroupDatum};
use crate::scalar::{rat, Cyclotomic, Ring};

/// Dominant weights below `mu` with multiplicities in the irreducible
/// representation of the dual group of highest weight `mu` (Freudenthal).
pub fn dominant_multiplicities(rd: &BasedRootDatum, mu: &[i64]) -> Result<BTreeMap<IVec, usize>> {
    if !rd.is_dominant(mu) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    // dual group: roots = coroots of G, pairing through the roots of G
    let pos: Vec<usize> = rd.positive_roots().collect();
    let form = |x: &[i64], y: &[i64]| -> i64 { rd.roots().iter().map(|a| dot(a, x) * dot(a, y)).sum() };
    let rho2 = rd.two_rho_check();
    // enumerate dominant weights below mu: consecutive ones differ by positive coroots
    let mut doms: BTreeSet<IVec> = BTreeSet::new();
    let mut queue = VecDeque::from([mu.to_vec()]);
    doms.insert(mu.to_vec());
    while let Some(l) = queue.pop_front() {
        for &b in &pos {
            let m: IVec = l.iter().zip(&rd.coroots()[b]).map(|(x, y)| x - y).collect();
            if rd.is_dominant(&m) && doms.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    let depth = |l: &[i64]| -> i64 { dot(&rd.two_rho(), mu) - dot(&rd.two_rho(), l) };
    let mut order: Vec<IVec> = doms.into_iter().collect();
    order.sort_by_key(|l| (depth(l), l.clone()));
    let mut mult: BTreeMap<IVec, usize> = BTreeMap::new();
    let mm = form(mu, mu) + form(mu, &rho2);
    for l in &order {
        if l.as_slice() == mu {
            mult.insert(l.clone(), 1);
            continue;
        }
        let denom = mm - form(l, l) - form(l, &rho2);
        let mut num = 0i64;
        for &b in &pos {
            let beta = &rd.coroots()[b];
            let mut k = 1;
            loop {
                let x: IVec = l.iter().zip(beta).map(|(a, c)| a + k * c).collect();
                if dot(&rd.two_rho(), &x) > dot(&rd.two_rho(), mu) {
                    break;
                }
                let (d, _) = rd.dominate(&x);
                if let Some(&m) = mult.get(&d) {
                    num += 2 * form(&x, beta) * m as i64;
                }
                k += 1;
            }
        }
        if denom <= 0 || num % denom != 0 {
            return Err(Error::Arithmetic(format!("Freudenthal recursion failed at {l:?}: {num}/{denom}")));
        }
        let m = (num / denom) as usize;
        if m > 0 {
            mult.insert(l.clone(), m);
        }
    }
    Ok(mult)
}

/// All weights with multiplicities.
pub fn weight_multiplicities(rd: &BasedRootDatum, mu: &[i64]) -> Result<BTreeMap<IVec, usize>> {
    let mut out = BTreeMap::new();
    for (l, m) in dominant_multiplicities(rd, mu)? {
        for x in rd.weyl_orbit(&l) {
            out.insert(x, m);
        }
    }
    Ok(out)
}

/// Weyl dimension formula `prod <mu + rho, alpha> / <rho, alpha>` over positive roots of `G`.
pub fn weyl_dimension(rd: &BasedRootDatum, mu: &[i64]) -> usize {
    let rho2 = rd.two_rho_check();
    let mut num = rat(1, 1);
    for a in rd.positive_roots() {
        let r = &rd.roots()[a];
        num *= rat(2 * dot(r, mu) + dot(r, &rho2), dot(r, &rho2));
    }
    crate::scalar::rational_to_i64(&num).expect("Weyl dimension is an integer") as usize
}

/// A linear operator over the cyclotomic field, stored by sparse columns.
#[derive(Clone, Debug)]
pub struct Operator {
    pub cols: Vec<Vec<(usize, Cyclotomic)>>,
}

impl PartialEq for Operator {
    fn eq(&self, other: &Self) -> bool {
        let norm = |c: &Vec<(usize, Cyclotomic)>| {
            let mut m: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
            for (r, x) in c {
                let e = m.entry(*r).or_insert_with(|| Cyclotomic::int(0));
                *e = e.add(x);
            }
            m.retain(|_, x| !x.is_zero());
            m.into_iter().collect::<Vec<_>>()
        };
        self.dim() == other.dim() && self.cols.iter().zip(&other.cols).all(|(a, b)| norm(a) == norm(b))
    }
}

impl Operator {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn identity(n: usize) -> Self {
        Self { cols: (0..n).map(|i| vec![(i, Cyclotomic::int(1))]).collect() }
    }

    /// Basis vector `j` goes to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self { cols: perm.iter().map(|&p| vec![(p, Cyclotomic::int(1))]).collect() }
    }

    pub fn from_dense(rows: &[Vec<Cyclotomic>]) -> Self {
        let n = rows.len();
        let cols = (0..n)
            .map(|c| (0..n).filter(|&r| !rows[r][c].is_zero()).map(|r| (r, rows[r][c].clone())).collect())
            .collect();
        Self { cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<Cyclotomic>> {
        let n = self.dim();
        let mut m = vec![vec![Cyclotomic::int(0); n]; n];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                m[*r][c] = x.clone();
            }
        }
        m
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::int(0); self.dim()];
        for (c, col) in self.cols.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, x) in col {
                out[*r] = out[*r].add(&x.mul(&v[c]));
            }
        }
        out
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
                for (k, y) in col {
                    for (r, x) in &self.cols[*k] {
                        let e = acc.entry(*r).or_insert_with(|| Cyclotomic::int(0));
                        *e = e.add(&x.mul(y));
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Self { cols }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..n {
            out = self.compose(&out);
        }
        out
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::int(0);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                if *r == c {
                    t = t.add(x);
                }
            }
        }
        t
    }

    /// Kronecker product; basis `(i, j) -> i * other.dim() + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim();
        let mut cols = Vec::with_capacity(self.dim() * m);
        for a in &self.cols {
            for b in &other.cols {
                let mut col = Vec::new();
                for (i, x) in a {
                    for (j, y) in b {
                        col.push((i * m + j, x.mul(y)));
                    }
                }
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
        }
        Self { cols }
    }

    /// Trace of the diagonal block on the basis vectors in `idx`.
    pub fn partial_trace(&self, idx: &[usize]) -> Cyclotomic {
        let set: BTreeSet<usize> = idx.iter().copied().collect();
        let mut t = Cyclotomic::int(0);
        for &c in idx {
            for (r, x) in &self.cols[c] {
                if *r == c && set.contains(r) {
                    t = t.add(x);
                }
            }
        }
        t
    }
}

/// A finite-dimensional representation of `G^vee x| Gamma` (Gamma through a finite quotient).
#[derive(Clone, Debug, PartialEq)]
pub struct LGroupRep {
    /// Weight (a coweight of `G`) of each basis vector.
    pub weights: Vec<IVec>,
    pub highest_weights: Vec<IVec>,
    /// Lattice action and operator of the Frobenius lift.
    pub frobenius_lattice: IntMatrix,
    pub frobenius: Operator,
    /// All elements of the inertia image with their operators; the identity first.
    pub inertia: Vec<(IntMatrix, Operator)>,
}

impl LGroupRep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Validates that the operators move weight spaces along the lattice action.
    pub fn new(
        weights: Vec<IVec>,
        highest_weights: Vec<IVec>,
        frobenius_lattice: IntMatrix,
        frobenius: Operator,
        inertia: Vec<(IntMatrix, Operator)>,
    ) -> Result<Self> {
        let n = weights.len();
        let check = |g: &IntMatrix, op: &Operator| -> Result<()> {
            if op.dim() != n {
                return Err(Error::Representation(format!("operator of size {} on a space of dimension {n}", op.dim())));
            }
            for (c, col) in op.cols.iter().enumerate() {
                let target = g.apply(&weights[c]);
                if col.iter().any(|(r, _)| weights[*r] != target) {
                    return Err(Error::Representation(format!("operator does not map weight {:?} to {:?}", weights[c], target)));
                }
            }
            Ok(())
        };
        check(&frobenius_lattice, &frobenius)?;
        if inertia.is_empty() || !inertia[0].0.is_identity() || inertia[0].1 != Operator::identity(n) {
            return Err(Error::Representation("inertia list must start with the identity".into()));
        }
        for (g, op) in &inertia {
            check(g, op)?;
        }
        Ok(Self { weights, highest_weights, frobenius_lattice, frobenius, inertia })
    }

    /// One-dimensional trivial representation with trivial Galois action.
    pub fn trivial(rank: usize) -> Self {
        let id = IntMatrix::identity(rank);
        Self {
            weights: vec![vec![0; rank]],
            highest_weights: vec![vec![0; rank]],
            frobenius_lattice: id.clone(),
            frobenius: Operator::identity(1),
            inertia: vec![(id, Operator::identity(1))],
        }
    }

    /// `sum_{nu in Gamma mu} V_nu` with Galois acting by `(nu, lambda, k) -> (g nu, g lambda, k)`.
    /// For `mu` fixed by the Galois action this is `V_mu`; over the unramified
    /// field `E_0` of definition of the orbit it is the induced representation `I(V_mu)`.
    pub fn orbit_sum(g: &GroupDatum, mu: &[i64]) -> Result<Self> {
        let rd = &g.root;
        if !rd.is_dominant(mu) {
            return Err(Error::NotDominant(format!("{mu:?}")));
        }
        let gens = g.galois.generators();
        let mut orbit = vec![mu.to_vec()];
        let mut k = 0;
        while k < orbit.len() {
            for m in &gens {
                let y = m.apply(&orbit[k]);
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit[1..].sort();
        let mut basis: Vec<(usize, IVec, usize)> = Vec::new();
        let mut weights = Vec::new();
        for (oi, nu) in orbit.iter().enumerate() {
            if !rd.is_dominant(nu) {
                return Err(Error::Representation(format!("Galois action does not preserve dominance: {nu:?}")));
            }
            for (l, m) in weight_multiplicities(rd, nu)? {
                for kk in 0..m {
                    basis.push((oi, l.clone(), kk));
                    weights.push(l.clone());
                }
            }
        }
        let index: BTreeMap<(usize, IVec, usize), usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let op_of = |m: &IntMatrix| -> Result<Operator> {
            let perm = basis
                .iter()
                .map(|(oi, l, kk)| {
                    let nu = m.apply(&orbit[*oi]);
                    let oj = orbit.iter().position(|x| *x == nu).expect("orbit is closed");
                    index.get(&(oj, m.apply(l), *kk)).copied().ok_or_else(|| Error::Representation("weight multiplicities are not Galois-stable".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Operator::permutation(&perm))
        };
        let inertia = g.galois.inertia_elements().into_iter().map(|m| op_of(&m).map(|op| (m, op))).collect::<Result<Vec<_>>>()?;
        let frobenius = op_of(&g.galois.frobenius)?;
        Self::new(weights, orbit, g.galois.frobenius.clone(), frobenius, inertia)
    }

    /// `V_mu`, requiring `mu` to be fixed by the Galois action.
    pub fn irreducible(g: &GroupDatum, mu: &[i64]) -> Result<Self> {
        for m in g.galois.generators() {
            if m.apply(mu) != mu {
                return Err(Error::Representation(format!("highest weight {mu:?} is not Galois-stable; use the induced representation")));
            }
        }
        Self::orbit_sum(g, mu)
    }

    /// Representation of a product group (Kronecker products, block-diagonal lattices).
    pub fn tensor(&self, other: &Self) -> Self {
        let mut weights = Vec::new();
        for a in &self.weights {
            for b in &other.weights {
                weights.push(a.iter().chain(b).copied().collect());
            }
        }
        let mut highest = Vec::new();
        for a in &self.highest_weights {
            for b in &other.highest_weights {
                highest.push(a.iter().chain(b).copied().collect());
            }
        }
        let mut inertia = Vec::new();
        for (ga, oa) in &self.inertia {
            for (gb, ob) in &other.inertia {
                inertia.push((block_diag(ga, gb), oa.kron(ob)));
            }
        }
        Self {
            weights,
            highest_weights: highest,
            frobenius_lattice: block_diag(&self.frobenius_lattice, &other.frobenius_lattice),
            frobenius: self.frobenius.kron(&other.frobenius),
            inertia,
        }
    }

    /// Tensor induction along an unramified extension of degree `n`:
    /// `V_0^{(x) n}` with Frobenius `x_0 (x) ... (x) x_{n-1} -> Phi_0 x_{n-1} (x) x_0 (x) ... (x) x_{n-2}`
    /// and inertia acting diagonally.
    pub fn tensor_induce(v0: &Self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Representation("induction degree must be positive".into()));
        }
        let d = v0.dim();
        let r = v0.frobenius_lattice.rows();
        let total = d.pow(n as u32);
        let digits = |mut idx: usize| -> Vec<usize> {
            let mut v = vec![0; n];
            for k in (0..n).rev() {
                v[k] = idx % d;
                idx /= d;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().fold(0usize, |acc, &x| acc * d + x);
        let weights: Vec<IVec> = (0..total).map(|i| digits(i).iter().flat_map(|&x| v0.weights[x].clone()).collect()).collect();
        let mut cols = Vec::with_capacity(total);
        for i in 0..total {
            let t = digits(i);
            let mut col = Vec::new();
            for (row, c) in &v0.frobenius.cols[t[n - 1]] {
                let mut s = vec![*row];
                s.extend_from_slice(&t[..n - 1]);
                col.push((encode(&s), c.clone()));
            }
            cols.push(col);
        }
        let mut lat = IntMatrix::zeros(n * r, n * r);
        for b in 0..n {
            let (to, m) = if b + 1 < n { (b + 1, IntMatrix::identity(r)) } else { (0, v0.frobenius_lattice.clone()) };
            for x in 0..r {
                for y in 0..r {
                    lat.set(to * r + x, b * r + y, m.get(x, y));
                }
            }
        }
        let inertia = v0
            .inertia
            .iter()
            .map(|(g, op)| {
                let mut big = op.clone();
                let mut gl = g.clone();
                for _ in 1..n {
                    big = big.kron(op);
                    gl = block_diag(&gl, g);
                }
                (gl, big)
            })
            .collect();
        let highest = v0.highest_weights.iter().map(|h| (0..n).flat_map(|_| h.clone()).collect()).collect();
        Self::new(weights, highest, lat, Operator { cols }, inertia)
    }

    /// Induction of Galois representations along an unramified extension of degree `n`:
    /// `sum_{j<n} Phi^j V_0`, `phi` the Frobenius on the lattice of the smaller field.
    pub fn gamma_induce(v0: &Self, phi: &IntMatrix, n: usize) -> Result<Self> {
        if phi.pow(n as u32) != v0.frobenius_lattice {
            return Err(Error::Ramified("Phi^n does not restrict to the Frobenius of the induced-from field".into()));
        }
        let d = v0.dim();
        let mut weights = Vec::new();
        let mut pj = IntMatrix::identity(phi.rows());
        for _ in 0..n {
            weights.extend(v0.weights.iter().map(|w| pj.apply(w)));
            pj = phi.mul(&pj);
        }
        let mut cols = Vec::new();
        for j in 0..n {
            for x in 0..d {
                if j + 1 < n {
                    cols.push(vec![((j + 1) * d + x, Cyclotomic::int(1))]);
                } else {
                    cols.push(v0.frobenius.cols[x].clone());
                }
            }
        }
        let phinv = phi.inverse_unimodular().ok_or_else(|| Error::Representation("Frobenius must be invertible".into()))?;
        let mut inertia = Vec::new();
        for (g, _) in &v0.inertia {
            let mut cols = Vec::new();
            let mut pj = IntMatrix::identity(phi.rows());
            let mut pjinv = IntMatrix::identity(phi.rows());
            for j in 0..n {
                let conj = pjinv.mul(g).mul(&pj);
                let op = &v0
                    .inertia
                    .iter()
                    .find(|(h, _)| *h == conj)
                    .ok_or_else(|| Error::Ramified("inertia is not normalized by Frobenius".into()))?
                    .1;
                for col in &op.cols {
                    cols.push(col.iter().map(|(r, c)| (j * d + r, c.clone())).collect());
                }
                pj = phi.mul(&pj);
                pjinv = pjinv.mul(&phinv);
            }
            inertia.push((g.clone(), Operator { cols }));
        }
        Self::new(weights, v0.highest_weights.clone(), phi.clone(), Operator { cols }, inertia)
    }

    /// Operator of `Phi gamma` for the `k`-th inertia element.
    pub fn lift_operator(&self, k: usize) -> Operator {
        self.frobenius.compose(&self.inertia[k].1)
    }

    pub fn trace_frobenius(&self, k: usize) -> Cyclotomic {
        self.lift_operator(k).trace()
    }

    /// Traces on the pieces `V(lambda_bar)` graded by inertia-coinvariant class.
    pub fn graded_trace(&self, coinv: &CoinvariantLattice, op: &Operator) -> BTreeMap<IVec, Cyclotomic> {
        let mut out: BTreeMap<IVec, Cyclotomic> = BTreeMap::new();
        for (idx, cls) in self.classes(coinv) {
            let t = op.partial_trace(&idx);
            if !t.is_zero() {
                out.insert(cls, t);
            }
        }
        out
    }

    /// Basis indices grouped by coinvariant class of their weight.
    pub fn classes(&self, coinv: &CoinvariantLattice) -> Vec<(Vec<usize>, IVec)> {
        let mut m: BTreeMap<IVec, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            m.entry(coinv.project(w)).or_default().push(i);
        }
        m.into_iter().map(|(c, idx)| (idx, c)).collect()
    }

    /// Averaging projector `(1/|I|) sum gamma`.
    pub fn inertia_projector(&self) -> Operator {
        let n = self.dim();
        let k = self.inertia.len() as i64;
        let mut dense = vec![vec![Cyclotomic::int(0); n]; n];
        for (_, op) in &self.inertia {
            for (c, col) in op.cols.iter().enumerate() {
                for (r, x) in col {
                    dense[*r][c] = dense[*r][c].add(x);
                }
            }
        }
        let inv = rat(1, k);
        let dense: Vec<Vec<Cyclotomic>> = dense.into_iter().map(|row| row.into_iter().map(|x| x.scale(&inv)).collect()).collect();
        Operator::from_dense(&dense)
    }

    /// `V^I` graded by coinvariant class: a basis of each nonzero piece.
    pub fn inertia_invariants(&self, coinv: &CoinvariantLattice) -> Vec<InvariantPiece> {
        let mut out = Vec::new();
        for (idx, cls) in self.classes(coinv) {
            // the piece is inertia-stable; invariants = common kernel of (gamma - 1) on it
            let local: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
            for (_, op) in &self.inertia[1..] {
                let mut block = vec![vec![Cyclotomic::int(0); idx.len()]; idx.len()];
                for (c, &gc) in idx.iter().enumerate() {
                    for (r, x) in &op.cols[gc] {
                        let rr = local[r];
                        block[rr][c] = block[rr][c].add(x);
                    }
                    block[c][c] = block[c][c].sub(&Cyclotomic::int(1));
                }
                rows.extend(block);
            }
            let kernel = if rows.is_empty() { identity_basis(idx.len()) } else { nullspace(&rows, idx.len()) };
            if !kernel.is_empty() {
                out.push(InvariantPiece { class: cls, indices: idx, basis: kernel });
            }
        }
        out
    }

    /// Trace of an operator preserving `V^I` on one invariant piece, via the explicit basis.
    pub fn trace_on_invariants(&self, piece: &InvariantPiece, op: &Operator) -> Result<Cyclotomic> {
        let n = self.dim();
        let embed = |v: &[Cyclotomic]| -> Vec<Cyclotomic> {
            let mut full = vec![Cyclotomic::int(0); n];
            for (a, &b) in piece.indices.iter().enumerate() {
                full[b] = v[a].clone();
            }
            full
        };
        let b: Vec<Vec<Cyclotomic>> = piece.basis.iter().map(|v| embed(v)).collect();
        let k = b.len();
        let mut t = Cyclotomic::int(0);
        for (j, bj) in b.iter().enumerate() {
            let img = op.apply(bj);
            let x = solve_in_span(&b, &img).ok_or_else(|| Error::Representation("operator does not preserve the invariant piece".into()))?;
            debug_assert_eq!(x.len(), k);
            t = t.add(&x[j]);
        }
        Ok(t)
    }

    /// `d_V = <2rho, mu> mod 2`, common to all highest weights.
    pub fn parity(&self, rd: &BasedRootDatum) -> Result<u8> {
        let rho = rd.two_rho();
        let ps: BTreeSet<i64> = self.highest_weights.iter().map(|h| dot(&rho, h).rem_euclid(2)).collect();
        if ps.len() > 1 {
            return Err(Error::Representation("highest weights of mixed parity".into()));
        }
        Ok(ps.into_iter().next().unwrap_or(0) as u8)
    }

    /// `<2rho, mu>` for the highest weights (all equal, else an error).
    pub fn degree(&self, rd: &BasedRootDatum) -> Result<i64> {
        let rho = rd.two_rho();
        let ds: BTreeSet<i64> = self.highest_weights.iter().map(|h| dot(&rho, h)).collect();
        if ds.len() > 1 {
            return Err(Error::Representation("highest weights of different heights".into()));
        }
        Ok(ds.into_iter().next().unwrap_or(0))
    }
}

/// A basis (in local coordinates on `indices`) of the inertia invariants of one graded piece.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPiece {
    pub class: IVec,
    pub indices: Vec<usize>,
    pub basis: Vec<Vec<Cyclotomic>>,
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
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
}

fn identity_basis(n: usize) -> Vec<Vec<Cyclotomic>> {
    (0..n).map(|i| (0..n).map(|j| Cyclotomic::int((i == j) as i64)).collect()).collect()
}

/// Reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<Cyclotomic>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].inverse().expect("nonzero element of a field");
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let t = m[row][c].mul(&f);
                    m[r][c] = m[r][c].sub(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of `{x : M x = 0}`.
pub fn nullspace(rows: &[Vec<Cyclotomic>], ncols: usize) -> Vec<Vec<Cyclotomic>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Cyclotomic::int(0); ncols];
            v[f] = Cyclotomic::int(1);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m[i][f].neg();
            }
            v
        })
        .collect()
}

/// Rank of a matrix over the cyclotomic field.
pub fn rank(rows: &[Vec<Cyclotomic>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Coordinates of `y` in the span of the independent vectors `basis`.
fn solve_in_span(basis: &[Vec<Cyclotomic>], y: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    let n = y.len();
    let k = basis.len();
    let mut m: Vec<Vec<Cyclotomic>> = (0..n).map(|r| basis.iter().map(|b| b[r].clone()).chain(core::iter::once(y[r].clone())).collect()).collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Cyclotomic::int(0); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][k].clone();
    }
    Some(x)
}

/// `(omega_V, tr(Phi | V))` for a representation of the L-group of a torus whose
/// weights form a single inertia orbit.
pub fn torus_test_scalar(rep: &LGroupRep, coinv: &CoinvariantLattice) -> Result<(IVec, Cyclotomic)> {
    let first = rep.weights.first().ok_or_else(|| Error::Representation("empty representation".into()))?;
    let orbit: BTreeSet<IVec> = rep.inertia.iter().map(|(g, _)| g.apply(first)).collect();
    if let Some(w) = rep.weights.iter().find(|w| !orbit.contains(*w)) {
        return Err(Error::Representation(format!("weights {first:?} and {w:?} are not inertia-conjugate")));
    }
    Ok((coinv.project(first), rep.frobenius.trace()))
}

/// Mean of a family indexed by the inertia elements `0..expected`.
pub fn average_over_inertia<T: Clone>(family: &BTreeMap<usize, T>, expected: usize, add: impl Fn(&T, &T) -> T, scale: impl Fn(&T, i64) -> T) -> Result<T> {
    if expected == 0 {
        return Err(Error::IncompleteFamily("no inertia elements".into()));
    }
    for k in 0..expected {
        if !family.contains_key(&k) {
            return Err(Error::IncompleteFamily(format!("missing lift {k} of {expected}")));
        }
    }
    let mut acc = family[&0].clone();
    for k in 1..expected {
        acc = add(&acc, &family[&k]);
    }
    Ok(scale(&acc, expected as i64))
}

/// Mean of cyclotomic values over all inertia lifts.
pub fn average_scalars(family: &BTreeMap<usize, Cyclotomic>, expected: usize) -> Result<Cyclotomic> {
    average_over_inertia(family, expected, |a, b| a.add(b), |a, k| a.scale(&rat(1, k)))
}

/// Smallest `m >= 1` with `Phi^m mu` in the inertia orbit of `mu` (the degree of
/// the unramified field `E_0` of definition of the Galois orbit).
pub fn reflex_degree(g: &GroupDatum, mu: &[i64]) -> u32 {
    let iorbit: BTreeSet<IVec> = g.galois.inertia_elements().iter().map(|s| s.apply(mu)).collect();
    let mut x = mu.to_vec();
    for m in 1..=g.galois.group_order as u32 {
        x = g.galois.frobenius.apply(&x);
        if iorbit.contains(&x) {
            return m;
        }
    }
    g.galois.group_order as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::library::*;
    use crate::rootdata::coinvariants;

    #[test]
    fn a1_and_a2_multiplicities() {
        let sl2 = sl(2, 5);
        let m = weight_multiplicities(&sl2.root, &[1]).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&x| x == 1));
        let pgl3 = pgl(3, 5);
        // adjoint highest weight of the dual SL3: the highest coroot of PGL3
        let theta = pgl3.root.coroots()[pgl3.root.positive_roots().max_by_key(|&a| pgl3.root.simple_coords(a).iter().sum::<i64>()).unwrap()].clone();
        let m = weight_multiplicities(&pgl3.root, &theta).unwrap();
        assert_eq!(m.values().sum::<usize>(), 8);
        assert_eq!(m[&vec![0, 0]], 2);
        assert_eq!(weyl_dimension(&pgl3.root, &theta), 8);
    }

    #[test]
    fn gl_standard_and_parity() {
        let g = gl(2, 5);
        let v = LGroupRep::irreducible(&g, &[1, 0]).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.parity(&g.root).unwrap(), 1);
        assert_eq!(v.trace_frobenius(0), Cyclotomic::int(2));
        assert_eq!(LGroupRep::trivial(2).parity(&g.root).unwrap(), 0);
    }

    #[test]
    fn ramified_torus_swap() {
        let t = ramified_torus(2, 5);
        let v = LGroupRep::orbit_sum(&t, &[1, 0]).unwrap();
        assert_eq!(v.dim(), 2);
        let c = coinvariants(2, &t.galois.inertia);
        let (omega, s) = torus_test_scalar(&v, &c).unwrap();
        assert_eq!(omega, vec![1]);
        assert_eq!(s, Cyclotomic::int(2));
        let inv = v.inertia_invariants(&c);
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].basis.len(), 1);
        let fam: BTreeMap<usize, Cyclotomic> = (0..v.inertia.len()).map(|k| (k, v.trace_frobenius(k))).collect();
        assert_eq!(average_scalars(&fam, 2).unwrap(), Cyclotomic::int(1));
        assert!(matches!(average_scalars(&BTreeMap::from([(0, Cyclotomic::int(1))]), 2), Err(Error::IncompleteFamily(_))));
    }

    #[test]
    fn saito_shintani_small() {
        // V_0 = 2-dim with Phi_0 = [[1,2],[3,4]] on the zero weight
        let rows = vec![vec![Cyclotomic::int(1), Cyclotomic::int(2)], vec![Cyclotomic::int(3), Cyclotomic::int(4)]];
        let id = IntMatrix::identity(1);
        let v0 = LGroupRep::new(vec![vec![0], vec![0]], vec![vec![0]], id.clone(), Operator::from_dense(&rows), vec![(id, Operator::identity(2))]).unwrap();
        for n in 1..=3 {
            let v = LGroupRep::tensor_induce(&v0, n).unwrap();
            assert_eq!(v.frobenius.trace(), v0.frobenius.trace());
            assert_eq!(v.frobenius.pow(n as u32), {
                let mut k = v0.frobenius.clone();
                for _ in 1..n {
                    k = k.kron(&v0.frobenius);
                }
                k
            });
        }
    }
}
