//! Iwahori-Hecke algebras with unequal parameters over `Z[v, v^-1]`, Bernstein
//! elements, central basis, parahoric compression and isogeny pushforward.
//!
//! Normalization: `T_s^2 = (v^L - v^-L) T_s + 1`, so `T_w = v^{-L(w)} 1_{IwI}` at `v^2 = q`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::iwahori::{Facet, IwahoriWeylGroup, WeylElement};
use crate::lattice::{dot, IVec, IntMatrix};
use crate::scalar::{embed, quadratic_coefficient, Cyclotomic, Laurent, LaurentZ, Ring};

/// Finite `Z[v, v^-1]`-combination of basis elements `T_w`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HeckeElement {
    pub terms: BTreeMap<WeylElement, LaurentZ>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: WeylElement) -> Self {
        Self::term(x, LaurentZ::one())
    }

    pub fn term(x: WeylElement, c: LaurentZ) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &c);
        h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &WeylElement) -> LaurentZ {
        self.terms.get(x).cloned().unwrap_or_else(LaurentZ::zero)
    }

    pub fn add_term(&mut self, x: WeylElement, c: &LaurentZ) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(x.clone()).or_insert_with(LaurentZ::zero);
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentZ::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentZ) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            out.add_term(x.clone(), &(a * c));
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = &WeylElement> {
        self.terms.keys()
    }

    /// Substitution `v -> v^k` in every coefficient.
    pub fn substitute_power(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(x, c)| (x.clone(), c.substitute_power(k))).collect() }
    }

    pub fn map_support(&self, f: impl Fn(&WeylElement) -> WeylElement) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_term(f(x), c);
        }
        out
    }
}

/// A central element with its expansion in the basis `z_lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralElement {
    pub element: HeckeElement,
    /// Dominant orbit labels with coefficients, sorted by label.
    pub labels: Vec<(IVec, LaurentZ)>,
    /// Common Kottwitz class of the support, when there is one.
    pub omega: Option<IVec>,
}

/// `e_J x e_J` kept as `numerator / denominator` with `denominator` a power of
/// the Poincare polynomial `P_J(v) = sum v^{2L(w)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Localized {
    pub numerator: HeckeElement,
    pub denominator: LaurentZ,
}

/// The Hecke algebra of an Iwahori-Weyl group.
#[derive(Clone, Copy, Debug)]
pub struct HeckeAlgebra<'a> {
    pub w: &'a IwahoriWeylGroup,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(w: &'a IwahoriWeylGroup) -> Self {
        Self { w }
    }

    pub fn one(&self) -> HeckeElement {
        HeckeElement::basis(self.w.identity())
    }

    pub fn t(&self, x: &WeylElement) -> HeckeElement {
        HeckeElement::basis(x.clone())
    }

    /// `a * T_s` for the simple affine reflection `s` of node `i`.
    pub fn mul_node_right(&self, a: &HeckeElement, i: usize) -> HeckeElement {
        let s = self.w.node(i);
        let c = quadratic_coefficient::<i64>(self.w.param(i) as i32);
        let mut out = HeckeElement::zero();
        for (x, coeff) in &a.terms {
            let xs = self.w.mul(x, s);
            out.add_term(xs.clone(), coeff);
            if self.w.length(&xs) < self.w.length(x) {
                out.add_term(x.clone(), &(coeff * &c));
            }
        }
        out
    }

    /// `T_s * a`.
    pub fn mul_node_left(&self, i: usize, a: &HeckeElement) -> HeckeElement {
        let s = self.w.node(i);
        let c = quadratic_coefficient::<i64>(self.w.param(i) as i32);
        let mut out = HeckeElement::zero();
        for (x, coeff) in &a.terms {
            let sx = self.w.mul(s, x);
            out.add_term(sx.clone(), coeff);
            if self.w.length(&sx) < self.w.length(x) {
                out.add_term(x.clone(), &(coeff * &c));
            }
        }
        out
    }

    /// `a * T_tau` for `tau` of length zero.
    pub fn mul_omega_right(&self, a: &HeckeElement, tau: &WeylElement) -> HeckeElement {
        a.map_support(|x| self.w.mul(x, tau))
    }

    /// Product in `T_w` normal form.
    pub fn mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, c) in &b.terms {
            let (word, tau) = self.w.reduced_word(y);
            let mut acc = a.clone();
            for &i in &word {
                acc = self.mul_node_right(&acc, i);
            }
            acc = self.mul_omega_right(&acc, &tau);
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// `T_x^{-1} = T_{tau^-1} T_{s_k}^{-1} ... T_{s_1}^{-1}` with `T_s^{-1} = T_s - (v^L - v^-L)`.
    pub fn inverse_t(&self, x: &WeylElement) -> HeckeElement {
        let (word, tau) = self.w.reduced_word(x);
        let mut acc = self.t(&self.w.inverse(&tau));
        for &i in word.iter().rev() {
            let c = quadratic_coefficient::<i64>(self.w.param(i) as i32);
            acc = self.mul_node_right(&acc, i).sub(&acc.scale(&c));
        }
        acc
    }

    /// Bernstein element `theta_lambda = T_{t^{lambda_1}} T_{t^{lambda_2}}^{-1}` for any
    /// dominant `lambda_1 - lambda_2 = lambda`, evaluated by the alcove walk.
    pub fn theta(&self, lam: &[i64]) -> HeckeElement {
        if self.w.rel.is_dominant(lam) {
            return self.t(&self.w.translation(lam));
        }
        self.theta_alcove_walk(lam)
    }

    /// `theta_lambda` computed from the decomposition with `lambda_2 = k * 2rho^vee`.
    pub fn theta_split(&self, lam: &[i64], k: i64) -> HeckeElement {
        let rho = self.w.rel.two_rho_check();
        let l2: IVec = rho.iter().map(|x| k * x).collect();
        let l1: IVec = lam.iter().zip(&l2).map(|(a, b)| a + b).collect();
        assert!(self.w.rel.is_dominant(&l1), "decomposition must be into dominant parts");
        self.mul(&self.t(&self.w.translation(&l1)), &self.inverse_t(&self.w.translation(&l2)))
    }

    /// `theta_lambda` as the alcove walk along a reduced word of `t^lambda`:
    /// crossings towards the positive side of the periodic orientation give
    /// `T_s`, the others `T_s^{-1}`.
    pub fn theta_alcove_walk(&self, lam: &[i64]) -> HeckeElement {
        let x = self.w.translation(lam);
        let (word, tau) = self.w.reduced_word(&x);
        let mut acc = self.one();
        let mut prefix = self.w.identity();
        let mut sep: BTreeSet<(usize, i64)> = BTreeSet::new();
        for &i in &word {
            prefix = self.w.mul(&prefix, self.w.node(i));
            let new: BTreeSet<(usize, i64)> = self.w.separating_hyperplanes(&prefix).into_iter().collect();
            let crossed: Vec<&(usize, i64)> = new.difference(&sep).collect();
            assert_eq!(crossed.len(), 1, "gallery along a reduced word crosses one wall per step");
            let positive = crossed[0].1 >= 1;
            let next = self.mul_node_right(&acc, i);
            acc = if positive {
                next
            } else {
                // T_s^{-1} = T_s - (v^L - v^-L)
                next.sub(&acc.scale(&quadratic_coefficient::<i64>(self.w.param(i) as i32)))
            };
            sep = new;
        }
        self.mul_omega_right(&acc, &tau)
    }

    /// `z_lambda = sum of theta_mu over the W_0-orbit of lambda`.
    pub fn z(&self, lam: &[i64]) -> CentralElement {
        let orbit = self.w.orbit(lam);
        let mut h = HeckeElement::zero();
        for mu in &orbit {
            h = h.add(&self.theta(mu));
        }
        let dom = self.w.dominant(lam);
        CentralElement { element: h, labels: vec![(dom.clone(), LaurentZ::one())], omega: Some(self.w.rel.fundamental_class(&dom)) }
    }

    /// Linear combination of basis elements `z_lambda`.
    pub fn z_combination(&self, labels: &[(IVec, LaurentZ)]) -> CentralElement {
        let mut h = HeckeElement::zero();
        let mut merged: BTreeMap<IVec, LaurentZ> = BTreeMap::new();
        for (lam, c) in labels {
            let dom = self.w.dominant(lam);
            merged.entry(dom).or_insert_with(LaurentZ::zero).add_assign(c);
        }
        merged.retain(|_, c| !c.is_zero());
        let mut omegas = BTreeSet::new();
        for (lam, c) in &merged {
            h = h.add(&self.z(lam).element.scale(c));
            omegas.insert(self.w.rel.fundamental_class(lam));
        }
        let omega = if omegas.len() == 1 { omegas.into_iter().next() } else { None };
        CentralElement { element: h, labels: merged.into_iter().collect(), omega }
    }

    /// Checks `h T_s = T_s h` for every simple affine reflection and `h T_tau = T_tau h`
    /// for the length-zero generators met on translations by lattice basis vectors.
    pub fn is_central(&self, h: &HeckeElement) -> bool {
        for i in 0..self.w.node_count() {
            if self.mul_node_right(h, i) != self.mul_node_left(i, h) {
                return false;
            }
        }
        for tau in self.omega_generators() {
            let t = self.t(&tau);
            if self.mul(h, &t) != self.mul(&t, h) {
                return false;
            }
        }
        true
    }

    /// Length-zero parts of the translations by lattice basis vectors.
    pub fn omega_generators(&self) -> Vec<WeylElement> {
        let n = self.w.lattice_rank();
        let mut out = BTreeSet::new();
        for c in 0..n {
            let mut e = vec![0; n];
            e[c] = 1;
            let tau = self.w.reduced_word(&self.w.translation(&e)).1;
            if tau != self.w.identity() {
                out.insert(tau);
            }
        }
        out.into_iter().collect()
    }

    /// Expands a central element in the basis `z_lambda` by repeatedly removing
    /// the longest translation in the support.
    pub fn decompose_central(&self, h: &HeckeElement) -> Result<CentralElement> {
        let mut rest = h.clone();
        let mut labels: BTreeMap<IVec, LaurentZ> = BTreeMap::new();
        while !rest.is_zero() {
            let top = rest
                .terms
                .iter()
                .filter(|(x, _)| x.fin == 0)
                .max_by_key(|(x, _)| (self.w.length(x), (*x).clone()))
                .map(|(x, c)| (x.clone(), c.clone()));
            let (x, c) = top.ok_or_else(|| Error::NotCentral("remaining terms contain no translation".into()))?;
            let dom = self.w.dominant(&x.trans);
            if self.w.length(&x) != self.w.length(&self.w.translation(&dom)) {
                return Err(Error::NotCentral(format!("leading translation {x} is not the head of an orbit")));
            }
            let z = self.z(&dom).element.scale(&c);
            rest = rest.sub(&z);
            labels.entry(dom).or_insert_with(LaurentZ::zero).add_assign(&c);
            if labels.len() > 100_000 {
                return Err(Error::NotCentral("decomposition does not terminate".into()));
            }
        }
        labels.retain(|_, c| !c.is_zero());
        let omegas: BTreeSet<IVec> = labels.keys().map(|l| self.w.rel.fundamental_class(l)).collect();
        let omega = if omegas.len() == 1 { omegas.into_iter().next() } else { None };
        Ok(CentralElement { element: h.clone(), labels: labels.into_iter().collect(), omega })
    }

    /// Bernstein pairing: `sum_O c_O sum_{mu in O} chi(mu)`.
    pub fn evaluate(&self, z: &CentralElement, chi: &UnramifiedCharacter) -> Laurent<Cyclotomic> {
        let mut out = Laurent::<Cyclotomic>::zero();
        for (lam, c) in &z.labels {
            let mut s = Cyclotomic::int(0);
            for mu in self.w.orbit(lam) {
                s = s.add(&chi.eval(&mu));
            }
            out.add_assign(&embed::<Cyclotomic>(c).scale(&s));
        }
        out
    }

    /// `E_J = sum_{w in W_J} v^{L(w)} T_w` and `P_J = sum v^{2L(w)}`; `e_J = E_J / P_J`.
    pub fn idempotent(&self, facet: &Facet) -> (HeckeElement, LaurentZ) {
        let mut e = HeckeElement::zero();
        let mut p = LaurentZ::zero();
        for (w, l) in &facet.elements {
            e.add_term(w.clone(), &LaurentZ::v_pow(*l as i32));
            p.add_term(2 * *l as i32, &1);
        }
        (e, p)
    }

    /// `e_J x e_J`, with the Poincare factors cancelled where exact.
    pub fn compress(&self, x: &HeckeElement, facet: &Facet) -> Localized {
        let (e, p) = self.idempotent(facet);
        let num = self.mul(&self.mul(&e, x), &e);
        let mut den = &p * &p;
        let mut num = num;
        for _ in 0..2 {
            match div_all(&num, &p) {
                Some(n) if !facet.is_iwahori() => {
                    num = n;
                    den = den.div_exact(&p).expect("P_J divides its square");
                }
                _ => break,
            }
        }
        Localized { numerator: num, denominator: den }
    }

    /// Values of the function `v^d x` on `I w I`, i.e. `v^{d - L(w)} c_w`.
    pub fn function_values(&self, x: &HeckeElement, d: i32) -> Vec<(WeylElement, LaurentZ)> {
        x.terms.iter().map(|(w, c)| (w.clone(), c.shift(d - self.w.weighted_length(w) as i32))).collect()
    }
}

fn div_all(h: &HeckeElement, p: &LaurentZ) -> Option<HeckeElement> {
    let mut out = HeckeElement::zero();
    for (x, c) in &h.terms {
        out.add_term(x.clone(), &c.div_exact(p)?);
    }
    Some(out)
}

/// An unramified character of `Lambda`, given by its values on the coordinate
/// generators (torsion generators must take root-of-unity values of matching order).
#[derive(Clone, Debug, PartialEq)]
pub struct UnramifiedCharacter {
    pub values: Vec<Cyclotomic>,
    inverses: Vec<Cyclotomic>,
}

impl UnramifiedCharacter {
    pub fn new(values: Vec<Cyclotomic>) -> Result<Self> {
        let inverses = values
            .iter()
            .map(|v| v.inverse().ok_or_else(|| Error::Arithmetic("character value must be nonzero".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values, inverses })
    }

    /// Checks that torsion generators are sent to roots of unity of the right order.
    pub fn is_well_defined(&self, w: &IwahoriWeylGroup) -> bool {
        let g = &w.rel.lattice;
        (0..g.dim()).all(|i| {
            let m = g.modulus(i);
            m == 0 || pow(&self.values[i], &self.inverses[i], m) == Cyclotomic::int(1)
        })
    }

    pub fn eval(&self, lam: &[i64]) -> Cyclotomic {
        let mut out = Cyclotomic::int(1);
        for (i, &k) in lam.iter().enumerate() {
            out = out.mul(&pow(&self.values[i], &self.inverses[i], k));
        }
        out
    }
}

fn pow(x: &Cyclotomic, xinv: &Cyclotomic, k: i64) -> Cyclotomic {
    let base = if k < 0 { xinv } else { x };
    let mut out = Cyclotomic::int(1);
    for _ in 0..k.unsigned_abs() {
        out = out.mul(base);
    }
    out
}

/// A homomorphism of Iwahori-Weyl groups induced by a map of coweight lattices
/// that matches roots (e.g. `G -> G_ad`).
#[derive(Clone, Debug)]
pub struct Pushforward<'a> {
    pub source: &'a IwahoriWeylGroup,
    pub target: &'a IwahoriWeylGroup,
    lattice: IntMatrix,
    fin: Vec<u16>,
}

impl<'a> Pushforward<'a> {
    /// `coweight_map` sends absolute coweights of the source to those of the target.
    pub fn new(source: &'a IwahoriWeylGroup, target: &'a IwahoriWeylGroup, coweight_map: &IntMatrix) -> Result<Self> {
        let sr = &source.rel;
        let n = sr.rank();
        let mut cols = Vec::new();
        for c in 0..n {
            let mut e = vec![0; n];
            e[c] = 1;
            let x = sr.coinvariants.section().apply(&sr.embedding.apply(&e));
            let y = coweight_map.apply(&x);
            let lam = target
                .rel
                .coweight_to_lattice(&y)
                .ok_or_else(|| Error::Incompatible("image of Lambda is not Frobenius-invariant".into()))?;
            cols.push(lam);
        }
        let lattice = IntMatrix::from_cols(target.lattice_rank(), &cols);
        if source.node_count() != target.node_count() || source.w0.order() != target.w0.order() {
            return Err(Error::Incompatible("isogeny must identify the affine Weyl groups".into()));
        }
        let fin: Vec<u16> = source
            .w0
            .elements
            .iter()
            .map(|el| el.word.iter().fold(0u16, |acc, &i| target.w0.mul(acc, target.w0.simple[i as usize])))
            .collect();
        let p = Self { source, target, lattice, fin };
        for i in 0..source.node_count() {
            if p.map(source.node(i)) != *target.node(i) || source.param(i) != target.param(i) {
                return Err(Error::Incompatible(format!("node {i} is not matched by the isogeny")));
            }
        }
        Ok(p)
    }

    pub fn map_lattice(&self, lam: &[i64]) -> IVec {
        self.target.rel.lattice.reduce(self.lattice.apply(lam))
    }

    pub fn map(&self, x: &WeylElement) -> WeylElement {
        WeylElement { trans: self.map_lattice(&x.trans), fin: self.fin[x.fin as usize] }
    }

    /// `T_w -> T_{p(w)}`.
    pub fn push(&self, h: &HeckeElement) -> HeckeElement {
        h.map_support(|x| self.map(x))
    }

    pub fn push_central(&self, z: &CentralElement) -> Result<CentralElement> {
        let img = self.push(&z.element);
        HeckeAlgebra::new(self.target).decompose_central(&img)
    }

    /// Inverse of `p` on the `kappa = omega` slice: transport the reduced word and
    /// attach the length-zero element of class `omega`.
    pub fn lift(&self, y: &WeylElement, omega: &[i64]) -> Result<WeylElement> {
        let (word, _) = self.target.reduced_word(y);
        let tau = self
            .source
            .omega_element(omega)
            .ok_or_else(|| Error::Incompatible(format!("no length-zero element with class {omega:?}")))?;
        let base = self.source.from_word(&word, &self.source.identity());
        let x = self.source.mul(&base, &tau);
        if self.map(&x) != *y {
            return Err(Error::Incompatible(format!("omega slice {omega:?} does not contain a preimage of {y}")));
        }
        Ok(x)
    }

    pub fn lift_element(&self, h: &HeckeElement, omega: &[i64]) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero();
        for (y, c) in &h.terms {
            out.add_term(self.lift(y, omega)?, c);
        }
        Ok(out)
    }
}

/// Evaluates `<2rho, lambda>` on relative data (the length of a dominant translation).
pub fn height(w: &IwahoriWeylGroup, lam: &[i64]) -> i64 {
    dot(&w.rel.two_rho(), lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::library::*;

    fn v(e: i32) -> LaurentZ {
        LaurentZ::v_pow(e)
    }

    #[test]
    fn quadratic_and_braid() {
        let w = IwahoriWeylGroup::build(&gl(3, 5)).unwrap();
        let h = HeckeAlgebra::new(&w);
        let s = h.t(w.node(1));
        let ss = h.mul(&s, &s);
        let expect = h.one().add(&s.scale(&(&v(1) - &v(-1))));
        assert_eq!(ss, expect);
        let t = h.t(w.node(2));
        let sts = h.mul(&h.mul(&s, &t), &s);
        let tst = h.mul(&h.mul(&t, &s), &t);
        assert_eq!(sts, tst);
        assert_eq!(sts.terms.len(), 1);
    }

    #[test]
    fn inverse_and_theta() {
        let w = IwahoriWeylGroup::build(&gl(2, 5)).unwrap();
        let h = HeckeAlgebra::new(&w);
        for lam in [[1, 0], [0, 1], [2, -1], [-1, 3]] {
            let x = w.translation(&lam);
            assert_eq!(h.mul(&h.t(&x), &h.inverse_t(&x)), h.one());
            let a = h.theta(&lam);
            assert_eq!(a, h.theta_split(&lam, h_k(&w, &lam) + 2));
            assert_eq!(a, h.theta_alcove_walk(&lam));
        }
        assert_eq!(h.theta(&[0, 0]), h.one());
        let w = IwahoriWeylGroup::build(&gl(3, 5)).unwrap();
        let h = HeckeAlgebra::new(&w);
        for lam in [[0, 0, 1], [1, -1, 0], [-1, 2, 0], [0, 1, 1]] {
            assert_eq!(h.theta_alcove_walk(&lam), h.theta_split(&lam, h_k(&w, &lam)));
        }
    }

    fn h_k(w: &IwahoriWeylGroup, lam: &[i64]) -> i64 {
        w.rel.simple.iter().map(|&s| (-w.rel.pair(s, lam) + 1) / 2).max().unwrap_or(0).max(0)
    }

    #[test]
    fn gl2_center() {
        let w = IwahoriWeylGroup::build(&gl(2, 5)).unwrap();
        let h = HeckeAlgebra::new(&w);
        let z = h.z(&[1, 0]);
        assert!(h.is_central(&z.element));
        assert_eq!(z.element.terms.len(), 3);
        let dec = h.decompose_central(&z.element).unwrap();
        assert_eq!(dec.labels, z.labels);
        let tau = w.omega_element(&[1]).unwrap();
        let lower: Vec<_> = z.element.terms.iter().filter(|(x, _)| x.fin != 0 || w.length(x) == 0).collect();
        assert_eq!(lower.len(), 1);
        assert_eq!(*lower[0].0, tau);
        assert_eq!(*lower[0].1, &v(-1) - &v(1));
    }

    #[test]
    fn idempotent_hyperspecial() {
        let w = IwahoriWeylGroup::build(&gl(2, 5)).unwrap();
        let h = HeckeAlgebra::new(&w);
        let f = w.hyperspecial();
        let (e, p) = h.idempotent(&f);
        assert_eq!(h.mul(&e, &e), e.scale(&p));
        let c = h.compress(&h.one(), &w.iwahori());
        assert_eq!(c.numerator, h.one());
    }
}
