//! Test functions `z^{Phi gamma}_{G,V}` and `z^{ss}_{G,V}` in the Bernstein basis,
//! their integrality and support, products, and unramified base reduction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dualside::{average_over_inertia, reflex_degree, LGroupRep};
use crate::error::{Error, Result};
use crate::hecke::{CentralElement, HeckeAlgebra, HeckeElement};
use crate::iwahori::{Facet, IwahoriWeylGroup, WeylElement};
use crate::lattice::{dot, IVec, IntMatrix};
use crate::rootdata::{BasedRootDatum, GaloisDescentDatum, GroupDatum};
use crate::scalar::{rat, Cyclotomic, LaurentZ, Ring};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Lift {
    /// `Phi gamma` for the `k`-th inertia element.
    Frobenius(usize),
    SemiSimple,
}

/// A test function: coefficients in the basis `z_lambda`, and the central
/// element itself when the coefficients are integers.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction {
    pub lift: Lift,
    /// Dominant labels in `Lambda`, sorted by decreasing height then label.
    pub coefficients: Vec<(IVec, Cyclotomic)>,
    pub central: Option<CentralElement>,
    /// `d = <2rho, mu>`, for the normalization `q^{d/2}`.
    pub degree: i64,
    pub omega: Option<IVec>,
}

/// Bernstein-side function `lambda -> trace` on `Lambda`, indexed by coinvariant class.
fn class_function_to_lattice(w: &IwahoriWeylGroup, graded: &BTreeMap<IVec, Cyclotomic>) -> Result<BTreeMap<IVec, Cyclotomic>> {
    let mut f = BTreeMap::new();
    for (cls, t) in graded {
        if t.is_zero() {
            continue;
        }
        let lam = w
            .rel
            .coinvariant_to_lattice(cls)
            .ok_or_else(|| Error::Arithmetic(format!("nonzero trace on the Frobenius-moved class {cls:?}")))?;
        f.insert(lam, t.clone());
    }
    Ok(f)
}

/// Expands a `W_0`-invariant function on `Lambda` in orbit sums, removing the
/// highest orbit first (ties broken by label).
pub fn solve_in_z_basis(w: &IwahoriWeylGroup, f: &BTreeMap<IVec, Cyclotomic>) -> Result<Vec<(IVec, Cyclotomic)>> {
    let mut rest = f.clone();
    rest.retain(|_, c| !c.is_zero());
    let rho = w.rel.two_rho();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let top = rest.keys().max_by_key(|l| (dot(&rho, &w.dominant(l)), w.dominant(l))).cloned().expect("nonempty");
        let dom = w.dominant(&top);
        let c = rest[&top].clone();
        for mu in w.orbit(&dom) {
            let e = rest.entry(mu.clone()).or_insert_with(|| Cyclotomic::int(0));
            *e = e.sub(&c);
            if e.is_zero() {
                rest.remove(&mu);
            }
        }
        if out.iter().any(|(l, _)| *l == dom) {
            return Err(Error::Representation(format!("trace function is not W_0-invariant near {dom:?}")));
        }
        out.push((dom, c));
    }
    Ok(out)
}

/// Coefficients in canonical order: decreasing height, then label.
fn assemble(w: &IwahoriWeylGroup, lift: Lift, mut coefficients: Vec<(IVec, Cyclotomic)>, degree: i64) -> TestFunction {
    sort_labels(w, &mut coefficients);
    let ints: Option<Vec<(IVec, LaurentZ)>> = coefficients.iter().map(|(l, c)| c.as_integer().map(|k| (l.clone(), LaurentZ::constant(k)))).collect();
    let central = ints.map(|labels| HeckeAlgebra::new(w).z_combination(&labels));
    let omegas: BTreeSet<IVec> = coefficients.iter().map(|(l, _)| w.rel.fundamental_class(l)).collect();
    let omega = if omegas.len() == 1 { omegas.into_iter().next() } else { None };
    TestFunction { lift, coefficients, central, degree, omega }
}

/// `z^{Phi gamma}`: Bernstein coefficients `tr(Phi gamma | V(lambda_bar))`.
pub fn z_phi(w: &IwahoriWeylGroup, rd: &BasedRootDatum, rep: &LGroupRep, k: usize) -> Result<TestFunction> {
    if k >= rep.inertia.len() {
        return Err(Error::IncompleteFamily(format!("lift {k} out of range ({} inertia elements)", rep.inertia.len())));
    }
    let graded = rep.graded_trace(&w.rel.coinvariants, &rep.lift_operator(k));
    let f = class_function_to_lattice(w, &graded)?;
    Ok(assemble(w, Lift::Frobenius(k), solve_in_z_basis(w, &f)?, rep.degree(rd)?))
}

/// `z^{ss}` as the average of `z^{Phi gamma}` over all inertia lifts.
pub fn z_ss_average(w: &IwahoriWeylGroup, rd: &BasedRootDatum, rep: &LGroupRep) -> Result<TestFunction> {
    let mut family = BTreeMap::new();
    for k in 0..rep.inertia.len() {
        let z = z_phi(w, rd, rep, k)?;
        family.insert(k, z.coefficients.into_iter().collect::<BTreeMap<IVec, Cyclotomic>>());
    }
    let avg = average_over_inertia(
        &family,
        rep.inertia.len(),
        |a, b| {
            let mut out = a.clone();
            for (l, c) in b {
                let e = out.entry(l.clone()).or_insert_with(|| Cyclotomic::int(0));
                *e = e.add(c);
            }
            out
        },
        |a, n| a.iter().map(|(l, c)| (l.clone(), c.scale(&rat(1, n)))).collect(),
    )?;
    let coeffs: Vec<(IVec, Cyclotomic)> = avg.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(assemble(w, Lift::SemiSimple, coeffs, rep.degree(rd)?))
}

/// `z^{ss}` with inertia invariants taken first: `tr(Phi | V(lambda_bar)^I)` on explicit bases.
pub fn z_ss_invariants(w: &IwahoriWeylGroup, rd: &BasedRootDatum, rep: &LGroupRep) -> Result<TestFunction> {
    let coinv = &w.rel.coinvariants;
    let mut graded = BTreeMap::new();
    for piece in rep.inertia_invariants(coinv) {
        let moved = coinv.group().reduce(w.rel.frobenius.apply(&piece.class));
        if moved != piece.class {
            continue;
        }
        graded.insert(piece.class.clone(), rep.trace_on_invariants(&piece, &rep.frobenius)?);
    }
    let f = class_function_to_lattice(w, &graded)?;
    let coeffs = solve_in_z_basis(w, &f)?;
    Ok(assemble(w, Lift::SemiSimple, coeffs, rep.degree(rd)?))
}

fn sort_labels(w: &IwahoriWeylGroup, c: &mut [(IVec, Cyclotomic)]) {
    let rho = w.rel.two_rho();
    c.sort_by(|a, b| (-dot(&rho, &a.0), &a.0).cmp(&(-dot(&rho, &b.0), &b.0)));
}

/// A highest weight `mu` over its field of definition `E_0` (unramified of degree
/// `m`, the reflex degree): the base-changed group, `I(V_mu)` there, and the image of `mu` in `Lambda`.
#[derive(Clone, Debug)]
pub struct Setup {
    pub m: u32,
    pub group: GroupDatum,
    pub w: IwahoriWeylGroup,
    pub rep: LGroupRep,
    pub lambda: IVec,
}

pub fn setup(g: &GroupDatum, mu: &[i64]) -> Result<Setup> {
    if mu.len() != g.root.rank() {
        return Err(Error::DegreeMismatch(format!("coweight of length {} for rank {}", mu.len(), g.root.rank())));
    }
    if !g.root.is_dominant(mu) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    let m = reflex_degree(g, mu);
    let group = if m == 1 {
        g.clone()
    } else {
        let mut bc = GroupDatum::new(format!("{} over E0 (degree {m})", g.name), g.root.clone(), g.galois.unramified_base_change(m))?;
        bc.restriction = None;
        bc
    };
    let w = IwahoriWeylGroup::build(&group)?;
    let rep = LGroupRep::orbit_sum(&group, mu)?;
    let lambda = w.coweight_to_lattice(mu)?;
    Ok(Setup { m, group, w, rep, lambda })
}

impl Setup {
    pub fn test_function(&self, lift: &Lift) -> Result<TestFunction> {
        match lift {
            Lift::Frobenius(k) => z_phi(&self.w, &self.group.root, &self.rep, *k),
            Lift::SemiSimple => z_ss_average(&self.w, &self.group.root, &self.rep),
        }
    }
}

/// Integrality of the function `q^{d/2} z` (parahoric level: `q^{d/2} z e_J` for the
/// Haar measure giving `K_J` volume one, i.e. the values of `q^{d/2} z * 1_{K_J}`).
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityReport {
    pub integral: bool,
    /// Function values as polynomials in `v` (even exponents only when integral).
    pub values: Vec<(WeylElement, LaurentZ)>,
    pub offending: Vec<(WeylElement, String)>,
}

/// `(v^{L(w)} c_w)` expansion of `z * sum_{w in W_J} v^{L(w)} T_w`, i.e. the
/// central element at parahoric level times `P_J`.
pub fn parahoric_element(h: &HeckeAlgebra, z: &HeckeElement, facet: &Facet) -> HeckeElement {
    if facet.is_iwahori() {
        return z.clone();
    }
    let (e, _) = h.idempotent(facet);
    h.mul(z, &e)
}

pub fn normalize_and_check_integrality(w: &IwahoriWeylGroup, z: &TestFunction, facet: &Facet) -> IntegralityReport {
    let Some(central) = &z.central else {
        return IntegralityReport {
            integral: false,
            values: vec![],
            offending: vec![(w.identity(), "Bernstein coefficients are not integers".into())],
        };
    };
    let h = HeckeAlgebra::new(w);
    let elem = parahoric_element(&h, &central.element, facet);
    let mut values = Vec::new();
    let mut offending = Vec::new();
    for (x, val) in h.function_values(&elem, z.degree as i32) {
        if val.terms().any(|(e, _)| e < 0 || e % 2 != 0) {
            offending.push((x.clone(), format!("{val:?} is not in Z[q]")));
        }
        values.push((x, val));
    }
    IntegralityReport { integral: offending.is_empty(), values, offending }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportReport {
    pub contained: bool,
    pub outside: Vec<WeylElement>,
}

/// Whether every `T_w` in the support has its double coset in `adm` (maximal representatives).
pub fn support_in_admissible(w: &IwahoriWeylGroup, z: &HeckeElement, adm: &[WeylElement], facet: &Facet) -> SupportReport {
    let set: BTreeSet<&WeylElement> = adm.iter().collect();
    let outside: Vec<WeylElement> = z
        .support()
        .map(|x| if facet.is_iwahori() { x.clone() } else { w.max_in_double_coset(x, facet) })
        .filter(|x| !set.contains(x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    SupportReport { contained: outside.is_empty(), outside }
}

/// Identification `W_1 x W_2 = W` for a product group built by `GroupDatum::product`.
pub struct ProductMap<'a> {
    pub left: &'a IwahoriWeylGroup,
    pub right: &'a IwahoriWeylGroup,
    pub product: &'a IwahoriWeylGroup,
    lattice_left: IntMatrix,
    lattice_right: IntMatrix,
    fin: BTreeMap<(u16, u16), u16>,
}

impl<'a> ProductMap<'a> {
    pub fn new(left: &'a IwahoriWeylGroup, right: &'a IwahoriWeylGroup, product: &'a IwahoriWeylGroup) -> Result<Self> {
        let embed = |side: &IwahoriWeylGroup, offset: usize| -> Result<IntMatrix> {
            let n = side.lattice_rank();
            let total = product.rel.coinvariants.source_rank();
            let mut cols = Vec::new();
            for c in 0..n {
                let mut e = vec![0; n];
                e[c] = 1;
                let x = side.rel.coinvariants.section().apply(&side.rel.embedding.apply(&e));
                let mut y = vec![0; total];
                y[offset..offset + x.len()].copy_from_slice(&x);
                cols.push(product.rel.coweight_to_lattice(&y).ok_or_else(|| Error::Incompatible("factor lattice is not Frobenius-invariant".into()))?);
            }
            Ok(IntMatrix::from_cols(product.lattice_rank(), &cols))
        };
        let lattice_left = embed(left, 0)?;
        let lattice_right = embed(right, left.rel.coinvariants.source_rank())?;
        let r1 = left.rel.simple.len();
        let mut fin = BTreeMap::new();
        for (a, ea) in left.w0.elements.iter().enumerate() {
            for (b, eb) in right.w0.elements.iter().enumerate() {
                let mut x = 0u16;
                for &i in &ea.word {
                    x = product.w0.mul(x, product.w0.simple[i as usize]);
                }
                for &i in &eb.word {
                    x = product.w0.mul(x, product.w0.simple[r1 + i as usize]);
                }
                fin.insert((a as u16, b as u16), x);
            }
        }
        if fin.len() != product.w0.order() {
            return Err(Error::Incompatible("finite Weyl group is not the product".into()));
        }
        Ok(Self { left, right, product, lattice_left, lattice_right, fin })
    }

    pub fn lattice(&self, a: &[i64], b: &[i64]) -> IVec {
        let x = self.lattice_left.apply(a);
        let y = self.lattice_right.apply(b);
        self.product.rel.lattice.reduce(x.iter().zip(&y).map(|(p, q)| p + q).collect())
    }

    pub fn element(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        WeylElement { trans: self.lattice(&a.trans, &b.trans), fin: self.fin[&(a.fin, b.fin)] }
    }

    /// `T_a (x) T_b -> T_{(a, b)}`.
    pub fn tensor(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in &a.terms {
            for (y, d) in &b.terms {
                out.add_term(self.element(x, y), &(c * d));
            }
        }
        out
    }

    /// Tensor product of test functions in the Bernstein basis.
    pub fn tensor_test(&self, a: &TestFunction, b: &TestFunction) -> TestFunction {
        let mut coeffs = Vec::new();
        for (l, c) in &a.coefficients {
            for (m, d) in &b.coefficients {
                coeffs.push((self.product.dominant(&self.lattice(l, m)), c.mul(d)));
            }
        }
        let lift = if a.lift == Lift::SemiSimple && b.lift == Lift::SemiSimple { Lift::SemiSimple } else { a.lift.clone().max(b.lift.clone()) };
        assemble(self.product, lift, coeffs, a.degree + b.degree)
    }
}

/// One factor `G_j` of `G x_F E_0`: the coordinates it occupies and its datum over `E_0`.
#[derive(Clone, Debug)]
pub struct BaseFactor {
    pub coords: Vec<usize>,
    pub datum: GroupDatum,
}

/// `G x_F E_0` for `E_0/F` unramified of degree `m`, split into its factors.
#[derive(Clone, Debug)]
pub struct UnramifiedReduction {
    pub m: u32,
    pub base_changed: GroupDatum,
    pub factors: Vec<BaseFactor>,
    /// Coordinate permutation from `G x E_0` to the concatenated factors.
    pub permutation: Vec<usize>,
}

/// Base change along an unramified tower `E_0/F` of ramification `e_tower` (must be 1)
/// and degree `m`, with the decomposition into factors `K_0 (x)_F E_0 = prod E_{j,0}`.
pub fn reduce_unramified_base(g: &GroupDatum, e_tower: u32, m: u32) -> Result<UnramifiedReduction> {
    if e_tower != 1 {
        return Err(Error::Ramified(format!("tower has ramification index {e_tower}")));
    }
    if m == 0 {
        return Err(Error::DegreeMismatch("degree must be positive".into()));
    }
    let galois = g.galois.unramified_base_change(m);
    let mut bc = GroupDatum::new(format!("{} x E0(m={m})", g.name), g.root.clone(), galois.clone())?;
    bc.restriction = None;
    let n = g.root.rank();
    // connected components of coordinates linked by roots, coroots and Galois matrices
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let link = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    for v in g.root.roots().iter().chain(g.root.coroots()) {
        let s: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        for w in s.windows(2) {
            link(&mut parent, w[0], w[1]);
        }
    }
    for mat in galois.generators() {
        for r in 0..n {
            for c in 0..n {
                if mat.get(r, c) != 0 {
                    link(&mut parent, r, c);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let mut factors = Vec::new();
    let mut permutation = Vec::new();
    for coords in comps.into_values() {
        let sub = |v: &IVec| -> Option<IVec> {
            if (0..n).any(|i| v[i] != 0 && !coords.contains(&i)) {
                return None;
            }
            Some(coords.iter().map(|&i| v[i]).collect())
        };
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut simple = Vec::new();
        for (k, (a, c)) in g.root.roots().iter().zip(g.root.coroots()).enumerate() {
            if let Some(ra) = sub(a) {
                if g.root.simple().contains(&k) {
                    simple.push((g.root.simple().iter().position(|&s| s == k).expect("simple"), roots.len()));
                }
                roots.push(ra);
                coroots.push(sub(c).ok_or_else(|| Error::Arithmetic("coroot leaves its factor".into()))?);
            }
        }
        simple.sort();
        let rd = BasedRootDatum::new(coords.len(), roots, coroots, simple.into_iter().map(|x| x.1).collect(), None)?;
        let restrict = |mat: &IntMatrix| -> IntMatrix {
            let mut out = IntMatrix::zeros(coords.len(), coords.len());
            for (a, &r) in coords.iter().enumerate() {
                for (b, &c) in coords.iter().enumerate() {
                    out.set(a, b, mat.get(r, c));
                }
            }
            out
        };
        let mut inertia: Vec<IntMatrix> = galois.inertia.iter().map(restrict).collect();
        inertia.retain(|x| !x.is_identity());
        let mut gd = GaloisDescentDatum { group_order: 0, inertia, frobenius: restrict(&galois.frobenius), q: galois.q, e: galois.e, f: galois.f };
        gd.group_order = gd.group_elements().len();
        let datum = GroupDatum::new(format!("{}[{}]", bc.name, factors.len()), rd, gd)?;
        permutation.extend(coords.iter().copied());
        factors.push(BaseFactor { coords, datum });
    }
    Ok(UnramifiedReduction { m, base_changed: bc, factors, permutation })
}

impl UnramifiedReduction {
    /// Product of the factor data, in concatenated coordinates.
    pub fn product_datum(&self) -> Result<GroupDatum> {
        let mut it = self.factors.iter();
        let mut acc = it.next().ok_or_else(|| Error::Arithmetic("no factors".into()))?.datum.clone();
        for f in it {
            acc = acc.product(&f.datum)?;
        }
        Ok(acc)
    }

    /// Splits an absolute coweight of `G x E_0` into its factor components.
    pub fn split_coweight(&self, mu: &[i64]) -> Vec<IVec> {
        self.factors.iter().map(|f| f.coords.iter().map(|&i| mu[i]).collect()).collect()
    }

    /// Rewrites a coweight of `G x E_0` in concatenated factor coordinates.
    pub fn permute_coweight(&self, mu: &[i64]) -> IVec {
        self.permutation.iter().map(|&i| mu[i]).collect()
    }

    /// `z^Phi` over `E_0` for `V_mu`, computed directly and as the tensor of the
    /// factor computations; errors unless they agree. Returns the reassembled function
    /// on the product group together with that group.
    pub fn check_reassembly(&self, mu: &[i64]) -> Result<(IwahoriWeylGroup, TestFunction)> {
        let mut parts = self.split_coweight(mu).into_iter().zip(&self.factors);
        let (mu0, f0) = parts.next().ok_or_else(|| Error::Arithmetic("no factors".into()))?;
        let mut acc_d = f0.datum.clone();
        let mut acc_w = IwahoriWeylGroup::build(&acc_d)?;
        let mut acc_t = z_phi(&acc_w, &acc_d.root, &LGroupRep::irreducible(&acc_d, &mu0)?, 0)?;
        for (mu_j, f) in parts {
            let w_j = IwahoriWeylGroup::build(&f.datum)?;
            let t_j = z_phi(&w_j, &f.datum.root, &LGroupRep::irreducible(&f.datum, &mu_j)?, 0)?;
            let prod_d = acc_d.product(&f.datum)?;
            let prod_w = IwahoriWeylGroup::build(&prod_d)?;
            acc_t = ProductMap::new(&acc_w, &w_j, &prod_w)?.tensor_test(&acc_t, &t_j);
            acc_d = prod_d;
            acc_w = prod_w;
        }
        let w = IwahoriWeylGroup::build(&self.base_changed)?;
        let direct = z_phi(&w, &self.base_changed.root, &LGroupRep::irreducible(&self.base_changed, mu)?, 0)?;
        let mut moved = Vec::new();
        for (l, c) in &direct.coefficients {
            let x = self.permute_coweight(&lattice_to_coweight(&w, l));
            let y = acc_w.rel.coweight_to_lattice(&x).ok_or_else(|| Error::Arithmetic("label leaves the factor lattice".into()))?;
            moved.push((acc_w.dominant(&y), c.clone()));
        }
        sort_labels(&acc_w, &mut moved);
        if moved != acc_t.coefficients || direct.degree != acc_t.degree {
            return Err(Error::Arithmetic(format!("reassembled {:?} differs from direct {:?}", acc_t.coefficients, moved)));
        }
        Ok((acc_w, acc_t))
    }
}

/// A representative in `X_*(T)` of a point of `Lambda`.
pub fn lattice_to_coweight(w: &IwahoriWeylGroup, lam: &[i64]) -> IVec {
    w.rel.coinvariants.section().apply(&w.rel.embedding.apply(lam))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::library::*;

    #[test]
    fn gl2_iwahori_testfn() {
        let g = gl(2, 5);
        let w = IwahoriWeylGroup::build(&g).unwrap();
        let v = LGroupRep::irreducible(&g, &[1, 0]).unwrap();
        let z = z_ss_average(&w, &g.root, &v).unwrap();
        assert_eq!(z.coefficients, vec![(vec![1, 0], Cyclotomic::int(1))]);
        assert_eq!(z.degree, 1);
        let rep = normalize_and_check_integrality(&w, &z, &w.iwahori());
        assert!(rep.integral, "{rep:?}");
        let mut seen: Vec<Vec<(i32, i64)>> = rep.values.iter().map(|(_, p)| p.terms().map(|(e, c)| (e, *c)).collect()).collect();
        seen.sort();
        assert_eq!(seen, vec![vec![(0, 1)], vec![(0, 1)], vec![(0, 1), (2, -1)]]);
        let hs = normalize_and_check_integrality(&w, &z, &w.hyperspecial());
        assert!(hs.integral, "{hs:?}");
        assert!(hs.values.iter().all(|(_, p)| *p == LaurentZ::one()));
        let adm = w.admissible_set(&[1, 0], &w.iwahori()).unwrap();
        assert!(support_in_admissible(&w, &z.central.unwrap().element, &adm, &w.iwahori()).contained);
    }

    #[test]
    fn unramified_factor_count() {
        let g = res_gl(2, 1, 2, 3);
        let r = reduce_unramified_base(&g, 1, 2).unwrap();
        assert_eq!(r.factors.len(), 2);
        let r = reduce_unramified_base(&g, 1, 1).unwrap();
        assert_eq!(r.factors.len(), 1);
        assert!(matches!(reduce_unramified_base(&g, 2, 1), Err(Error::Ramified(_))));
        let (_, z) = r.check_reassembly(&[1, 0, 1, 0]).unwrap();
        assert_eq!(z.coefficients.len(), 1);
        let r = reduce_unramified_base(&res_gl(2, 1, 2, 3), 1, 2).unwrap();
        let (_, z) = r.check_reassembly(&[1, 0, 0, 0]).unwrap();
        assert_eq!(z.coefficients.len(), 1);
        let g = res_gl(2, 2, 2, 3);
        assert_eq!(reduce_unramified_base(&g, 1, 2).unwrap().factors.len(), 2);
    }
}
