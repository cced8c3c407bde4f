//! Brute-force references used by the verification suites: Kostant's multiplicity
//! formula, the subword characterization of Bruhat order, explicit double-coset
//! counting, and the expansion of an element of the Bernstein subalgebra in `theta`s.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use parahoric_core::hecke::{HeckeAlgebra, HeckeElement};
use parahoric_core::iwahori::{IwahoriWeylGroup, WeylElement};
use parahoric_core::lattice::{dot, solve_integer, vadd, vscale, vsub, IVec, IntMatrix};
use parahoric_core::rootdata::{matrix_group, BasedRootDatum, GroupDatum};
use parahoric_core::scalar::LaurentZ;

struct Kostant {
    /// Positive coroots in simple-coroot coordinates.
    positive: Vec<IVec>,
    simple: IntMatrix,
    memo: HashMap<(IVec, usize), u64>,
}

impl Kostant {
    fn new(rd: &BasedRootDatum) -> Self {
        let cols: Vec<IVec> = rd.simple().iter().map(|&i| rd.coroots()[i].clone()).collect();
        let simple = IntMatrix::from_cols(rd.rank(), &cols);
        let positive = rd
            .positive_roots()
            .map(|i| solve_integer(&simple, &rd.coroots()[i]).expect("coroots lie in the simple coroot lattice"))
            .collect();
        Self { positive, simple, memo: HashMap::new() }
    }

    /// Number of ways to write `c` (simple coordinates) as a sum of positive coroots.
    fn partitions(&mut self, c: &IVec, idx: usize) -> u64 {
        if c.iter().any(|&x| x < 0) {
            return 0;
        }
        if idx == self.positive.len() {
            return u64::from(c.iter().all(|&x| x == 0));
        }
        if let Some(&v) = self.memo.get(&(c.clone(), idx)) {
            return v;
        }
        let beta = self.positive[idx].clone();
        let mut total = 0;
        let mut rest = c.clone();
        while rest.iter().all(|&x| x >= 0) {
            total += self.partitions(&rest, idx + 1);
            rest = vsub(&rest, &beta);
        }
        self.memo.insert((c.clone(), idx), total);
        total
    }

    fn p(&mut self, x: &IVec) -> u64 {
        match solve_integer(&self.simple, x) {
            Some(c) if self.simple.apply(&c) == *x => self.partitions(&c, 0),
            _ => 0,
        }
    }
}

/// Dominant weight multiplicities of `V_mu` by Kostant's formula
/// `m(nu) = sum_w sign(w) P(w(mu + rho) - (nu + rho))`.
pub fn kostant_multiplicities(rd: &BasedRootDatum, mu: &[i64]) -> BTreeMap<IVec, usize> {
    let two_rho_check = rd.two_rho_check();
    let two_rho = rd.two_rho();
    let top = vadd(&vscale(2, mu), &two_rho_check);
    // W-orbit of the regular vector 2(mu + rho), with signs
    let mut orbit: BTreeSet<IVec> = BTreeSet::new();
    let mut stack = vec![top.clone()];
    orbit.insert(top);
    while let Some(x) = stack.pop() {
        for &s in rd.simple() {
            let y = rd.reflect_coweight(s, &x);
            if orbit.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    let sign = |x: &IVec| -> i64 {
        let neg = rd.positive_roots().filter(|&a| dot(&rd.roots()[a], x) < 0).count();
        if neg % 2 == 0 {
            1
        } else {
            -1
        }
    };
    // candidate dominant weights: mu minus sums of simple coroots, down to height zero
    let simple_coroots: Vec<IVec> = rd.simple().iter().map(|&i| rd.coroots()[i].clone()).collect();
    let mut seen: BTreeSet<IVec> = BTreeSet::new();
    let mut stack = vec![mu.to_vec()];
    seen.insert(mu.to_vec());
    while let Some(x) = stack.pop() {
        for c in &simple_coroots {
            let y = vsub(&x, c);
            if dot(&two_rho, &y) >= 0 && !seen.contains(&y) {
                seen.insert(y.clone());
                stack.push(y);
            }
        }
    }
    let mut k = Kostant::new(rd);
    let mut out = BTreeMap::new();
    for nu in seen.into_iter().filter(|n| rd.is_dominant(n)) {
        let base = vadd(&vscale(2, &nu), &two_rho_check);
        let mut m: i64 = 0;
        for x in &orbit {
            let d = vsub(x, &base);
            if d.iter().any(|v| v % 2 != 0) {
                continue;
            }
            let half: IVec = d.iter().map(|v| v / 2).collect();
            m += sign(x) * k.p(&half) as i64;
        }
        assert!(m >= 0, "negative Kostant multiplicity");
        if m > 0 {
            out.insert(nu, m as usize);
        }
    }
    out
}

/// All products of subwords of a reduced expression of `y` (with its length-zero part):
/// the Bruhat lower ideal of `y`.
pub fn subword_ideal(w: &IwahoriWeylGroup, y: &WeylElement) -> BTreeSet<WeylElement> {
    let (word, tau) = w.reduced_word(y);
    assert!(word.len() < 24, "subword enumeration is exponential");
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            w.from_word(&sub, &tau)
        })
        .collect()
}

/// `mu`-admissible set of the Iwahori level by subwords of the translations `t^{x mu}`.
pub fn subword_admissible(w: &IwahoriWeylGroup, lam: &[i64]) -> BTreeSet<WeylElement> {
    w.orbit(lam).iter().flat_map(|x| subword_ideal(w, &w.translation(x))).collect()
}

/// `|<I, Phi^m> \ Gamma / <I, Phi^f>|` by enumerating the finite Galois quotient.
pub fn double_coset_count(g: &GroupDatum, m: u32) -> usize {
    let n = g.root.rank();
    let gamma = g.galois.group_elements();
    let sub = |k: u32| {
        let mut gens = g.galois.inertia.clone();
        gens.push(g.galois.frobenius.pow(k));
        matrix_group(n, &gens)
    };
    let left = sub(m);
    let right = sub(g.galois.f);
    let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
    let mut count = 0;
    for x in &gamma {
        if seen.contains(x) {
            continue;
        }
        count += 1;
        for a in &left {
            for b in &right {
                seen.insert(a.mul(x).mul(b));
            }
        }
    }
    count
}

/// Writes an element of the Bernstein subalgebra as `sum a_lambda theta_lambda` by
/// repeatedly removing the longest term, which must be a translation.
pub fn theta_expansion(h: &HeckeAlgebra, x: &HeckeElement) -> Result<Vec<(IVec, LaurentZ)>, String> {
    let w = h.w;
    let mut rest = x.clone();
    let mut out = Vec::new();
    let mut guard = 0;
    while !rest.is_zero() {
        guard += 1;
        if guard > 10_000 {
            return Err("theta expansion does not terminate".into());
        }
        let top = rest.support().max_by_key(|y| (w.length(y), (*y).clone())).cloned().expect("nonzero");
        if top.fin != 0 {
            return Err(format!("longest term {top} is not a translation"));
        }
        let theta = h.theta(&top.trans);
        let lead = theta.coeff(&top);
        let a = rest.coeff(&top).div_exact(&lead).ok_or_else(|| format!("leading coefficient of theta at {top} is not a unit"))?;
        rest = rest.sub(&theta.scale(&a));
        out.push((top.trans, a));
    }
    Ok(out)
}
