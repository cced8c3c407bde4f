use std::collections::{BTreeMap, BTreeSet};

use parahoric_core::dualside::{dominant_multiplicities, weyl_dimension, LGroupRep, Operator};
use parahoric_core::hecke::{HeckeAlgebra, HeckeElement, Pushforward};
use parahoric_core::iwahori::{IwahoriWeylGroup, WeylElement};
use parahoric_core::lattice::{dot, solve_integer, vadd, IVec, IntMatrix};
use parahoric_core::rootdata::library::{gl, pgl, ramified_torus, res_gl, res_pgl, res_sl, sl, type_a, type_b, type_g2};
use parahoric_core::rootdata::{coinvariants, coinvariants_of_group, BasedRootDatum, GroupDatum};
use parahoric_core::scalar::{Cyclotomic, Ring};
use parahoric_core::testfn::{self, Lift};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn groups() -> Vec<GroupDatum> {
    vec![
        gl(2, 5),
        gl(3, 5),
        sl(3, 5),
        pgl(3, 5),
        res_gl(2, 2, 1, 5),
        res_gl(2, 1, 2, 5),
        res_sl(2, 3, 1, 5),
        res_pgl(2, 1, 3, 5),
        ramified_torus(3, 5),
        GroupDatum::split("B2", BasedRootDatum::from_cartan(&type_b(2), true).unwrap(), 5),
        GroupDatum::split("G2", BasedRootDatum::from_cartan(&type_g2(), true).unwrap(), 5),
    ]
}

fn iwahori(i: usize) -> IwahoriWeylGroup {
    IwahoriWeylGroup::build(&groups()[i]).unwrap()
}

/// Random element: a word in the affine nodes followed by a translation's length-zero part.
fn element(w: &IwahoriWeylGroup, word: &[usize], shift: &[i64]) -> WeylElement {
    let word: Vec<usize> = word.iter().map(|i| i % w.node_count().max(1)).collect();
    let lam: IVec = (0..w.lattice_rank()).map(|k| shift.get(k).copied().unwrap_or(0)).collect();
    let tau = w.reduced_word(&w.translation(&w.rel.lattice.reduce(lam))).1;
    let mut x = tau;
    for &i in &word {
        if w.node_count() > 0 {
            x = w.mul(w.node(i), &x);
        }
    }
    x
}

fn ball(w: &IwahoriWeylGroup, radius: usize) -> BTreeSet<WeylElement> {
    let mut seen = BTreeSet::from([w.identity()]);
    let mut frontier = vec![w.identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for i in 0..w.node_count() {
                let y = w.mul(x, w.node(i));
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

fn specialize(h: &HeckeElement) -> BTreeMap<WeylElement, i64> {
    h.terms.iter().map(|(x, c)| (x.clone(), c.terms().map(|(_, a)| *a).sum::<i64>())).filter(|(_, s)| *s != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn length_changes_by_one(g in 0usize..11, word in prop::collection::vec(0usize..8, 0..10), shift in prop::collection::vec(-3i64..=3, 4)) {
        let w = iwahori(g);
        let x = element(&w, &word, &shift);
        for i in 0..w.node_count() {
            let l = w.length(&x) as i64;
            let ls = w.length(&w.mul(&x, w.node(i))) as i64;
            prop_assert_eq!((l - ls).abs(), 1);
        }
    }

    #[test]
    fn kottwitz_is_a_homomorphism(g in 0usize..11, a in prop::collection::vec(0usize..8, 0..8), b in prop::collection::vec(0usize..8, 0..8),
                                  s in prop::collection::vec(-4i64..=4, 4), t in prop::collection::vec(-4i64..=4, 4)) {
        let w = iwahori(g);
        let (x, y) = (element(&w, &a, &s), element(&w, &b, &t));
        let pi1 = &w.rel.fundamental_group.group;
        prop_assert_eq!(w.kottwitz(&w.mul(&x, &y)), pi1.reduce(vadd(&w.kottwitz(&x), &w.kottwitz(&y))));
    }

    #[test]
    fn weil_restriction_satisfies_shapiro(n in 1usize..=3, e in 1u32..=3, f in 1u32..=3) {
        let base = gl(n, 5);
        let res = res_gl(n, e, f, 5);
        let a = coinvariants(res.root.rank(), &res.galois.generators());
        let b = coinvariants(base.root.rank(), &base.galois.generators());
        prop_assert_eq!(a.group(), b.group());
        let base = pgl(n.max(2), 5);
        let res = res_pgl(n.max(2), e, f, 5);
        let a = coinvariants(res.root.rank(), &res.galois.generators());
        let b = coinvariants(base.root.rank(), &base.galois.generators());
        prop_assert_eq!(a.group(), b.group());
    }

    #[test]
    fn bernstein_relations(g in 0usize..4, l in prop::collection::vec(-2i64..=2, 3), m in prop::collection::vec(-2i64..=2, 3)) {
        let w = iwahori(g);
        let h = HeckeAlgebra::new(&w);
        let r = w.lattice_rank();
        let l = w.rel.lattice.reduce(l[..r].to_vec());
        let m = w.rel.lattice.reduce(m[..r].to_vec());
        let sum = w.rel.lattice.reduce(vadd(&l, &m));
        prop_assert_eq!(h.mul(&h.theta(&l), &h.theta(&m)), h.theta(&sum));
    }

    #[test]
    fn z_average_matches_invariants(g in 4usize..9, seed in 0u64..1000) {
        let d = &groups()[g];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu: IVec = (0..d.root.rank()).map(|_| rng.gen_range(-1..=1)).collect();
        if !d.root.is_dominant(&mu) {
            return Ok(());
        }
        let s = testfn::setup(d, &mu).unwrap();
        let a = testfn::z_ss_average(&s.w, &s.group.root, &s.rep).unwrap();
        let b = testfn::z_ss_invariants(&s.w, &s.group.root, &s.rep).unwrap();
        prop_assert_eq!(a.coefficients, b.coefficients);
    }

    #[test]
    fn tensor_induction_trace(seed in 0u64..10_000, n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=3);
        let dense: Vec<Vec<Cyclotomic>> = (0..d).map(|_| (0..d).map(|_| Cyclotomic::root_of_unity(6, rng.gen_range(0..6)).mul(&Cyclotomic::int(rng.gen_range(-2..=2)))).collect()).collect();
        let id = IntMatrix::identity(1);
        let v0 = LGroupRep::new(vec![vec![0]; d], vec![vec![0]], id.clone(), Operator::from_dense(&dense), vec![(id, Operator::identity(d))]).unwrap();
        let v = LGroupRep::tensor_induce(&v0, n).unwrap();
        prop_assert_eq!(v.trace_frobenius(0), v0.frobenius.trace());
        prop_assert_eq!(v.dim(), d.pow(n as u32));
    }
}

#[test]
fn reflections_fix_the_root_multiset() {
    for g in groups() {
        let rd = &g.root;
        let roots: BTreeSet<IVec> = rd.roots().iter().cloned().collect();
        let coroots: BTreeSet<IVec> = rd.coroots().iter().cloned().collect();
        for a in 0..rd.roots().len() {
            let (alpha, check) = (&rd.roots()[a], &rd.coroots()[a]);
            let image: BTreeSet<IVec> = rd.roots().iter().map(|b| b.iter().zip(alpha).map(|(x, y)| x - dot(b, check) * y).collect()).collect();
            assert_eq!(image, roots, "{}", g.name);
            let image: BTreeSet<IVec> = rd.coroots().iter().map(|c| rd.reflect_coweight(a, c)).collect();
            assert_eq!(image, coroots, "{}", g.name);
        }
    }
}

#[test]
fn coinvariants_idempotent_and_rank_bookkeeping() {
    for g in groups() {
        let n = g.root.rank();
        let gens = g.galois.inertia.clone();
        let c = coinvariants(n, &gens);
        let induced: Vec<IntMatrix> = gens.iter().map(|m| c.induced(m)).collect();
        let again = coinvariants_of_group(c.group(), &induced);
        assert_eq!(again.group(), c.group(), "{}", g.name);
        for i in 0..c.group().dim() {
            let mut e = vec![0; c.group().dim()];
            e[i] = 1;
            assert_eq!(again.project(&e), c.group().reduce(e.clone()));
        }
        let mut rel = IntMatrix::zeros(n, 0);
        for m in &gens {
            rel = rel.hcat(&IntMatrix::identity(n).sub(m));
        }
        assert_eq!(c.free_rank() + rel.rank(), n, "{}", g.name);
    }
}

#[test]
fn bruhat_is_a_partial_order_on_balls() {
    for (g, radius) in [(0, 6), (2, 5), (9, 4)] {
        let w = iwahori(g);
        let elts: Vec<WeylElement> = ball(&w, radius).into_iter().collect();
        let n = elts.len();
        let leq: Vec<Vec<bool>> = elts.iter().map(|x| elts.iter().map(|y| w.bruhat_leq(x, y)).collect()).collect();
        for i in 0..n {
            assert!(leq[i][i]);
            for j in 0..n {
                if i != j && leq[i][j] {
                    assert!(!leq[j][i], "antisymmetry");
                    assert!(w.length(&elts[i]) < w.length(&elts[j]));
                    for k in 0..n {
                        if leq[j][k] {
                            assert!(leq[i][k], "transitivity");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_of_kottwitz_on_translations_is_the_coroot_lattice() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [gl(3, 5), sl(3, 5), pgl(3, 5)] {
        let w = IwahoriWeylGroup::build(&g).unwrap();
        let n = g.root.rank();
        let coroots = IntMatrix::from_cols(n, g.root.coroots());
        for _ in 0..60 {
            let lam: IVec = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let in_kernel = w.rel.fundamental_group.group.is_zero(&w.kottwitz(&w.translation(&lam)));
            assert_eq!(in_kernel, solve_integer(&coroots, &lam).is_some(), "{} {lam:?}", g.name);
        }
    }
}

#[test]
fn admissible_sets_are_closed_and_single_class() {
    for (g, mu) in [(gl(3, 5), vec![1, 0, 0]), (gl(3, 5), vec![1, 1, 0]), (sl(3, 5), vec![1, 1]), (res_gl(2, 2, 1, 5), vec![1, 0, 0, 0])] {
        let s = testfn::setup(&g, &mu).unwrap();
        let w = &s.w;
        let adm = w.admissible_set(&s.lambda, &w.iwahori()).unwrap();
        let set: BTreeSet<WeylElement> = adm.iter().cloned().collect();
        assert_eq!(w.lower_ideal(&adm), set, "downward closed");
        let class = w.rel.fundamental_class(&s.lambda);
        assert!(adm.iter().all(|x| w.kottwitz(x) == class));
        let k = w.hyperspecial();
        let adm_k: BTreeSet<WeylElement> = w.admissible_set(&s.lambda, &k).unwrap().into_iter().collect();
        let image: BTreeSet<WeylElement> = adm.iter().map(|x| w.max_in_double_coset(x, &k)).collect();
        assert_eq!(image, adm_k, "{}", g.name);
    }
}

#[test]
fn specialization_at_one_is_the_group_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [0, 1, 4, 9] {
        let w = iwahori(g);
        let h = HeckeAlgebra::new(&w);
        for _ in 0..20 {
            let a: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..8)).collect();
            let b: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..8)).collect();
            let (x, y) = (element(&w, &a, &[1]), element(&w, &b, &[]));
            let prod = specialize(&h.mul(&h.t(&x), &h.t(&y)));
            assert_eq!(prod, BTreeMap::from([(w.mul(&x, &y), 1)]));
        }
    }
}

#[test]
fn centers_commute_and_act_through_parahorics() {
    for g in [0, 1, 4] {
        let w = iwahori(g);
        let h = HeckeAlgebra::new(&w);
        let labels: Vec<IVec> = [vec![1, 0, 0, 0], vec![1, 1, 0, 0], vec![2, 0, 0, 0], vec![0, 0, 0, 0]]
            .iter()
            .map(|l| w.dominant(&w.rel.lattice.reduce(l[..w.lattice_rank()].to_vec())))
            .collect();
        let zs: Vec<HeckeElement> = labels.iter().map(|l| h.z(l).element).collect();
        let k = w.hyperspecial();
        for a in &zs {
            for b in &zs {
                let ab = h.mul(a, b);
                assert_eq!(ab, h.mul(b, a));
                assert_eq!(testfn::parahoric_element(&h, &ab, &k), h.mul(a, &testfn::parahoric_element(&h, b, &k)));
            }
        }
    }
}

#[test]
fn adjoint_pushforward_is_multiplicative() {
    let (g, gad) = (gl(3, 5), pgl(3, 5));
    let w = IwahoriWeylGroup::build(&g).unwrap();
    let wad = IwahoriWeylGroup::build(&gad).unwrap();
    let p = Pushforward::new(&w, &wad, &IntMatrix::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]])).unwrap();
    let h = HeckeAlgebra::new(&w);
    let had = HeckeAlgebra::new(&wad);
    for (a, b) in [([1, 0, 0], [1, 1, 0]), ([1, 0, 0], [1, 0, 0]), ([2, 1, 0], [0, 0, -1])] {
        let (za, zb) = (h.z(&a).element, h.z(&b).element);
        assert_eq!(p.push(&h.mul(&za, &zb)), had.mul(&p.push(&za), &p.push(&zb)));
    }
}

#[test]
fn weights_sum_to_weyl_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in [type_a(2), type_b(2), type_g2(), type_a(3)] {
        let rd = BasedRootDatum::from_cartan(&a, true).unwrap();
        for _ in 0..40 {
            let mu: IVec = (0..rd.rank()).map(|_| rng.gen_range(-2..4)).collect();
            if !rd.is_dominant(&mu) {
                continue;
            }
            let total: usize = dominant_multiplicities(&rd, &mu).unwrap().iter().map(|(nu, m)| m * rd.weyl_orbit(nu).len()).sum();
            assert_eq!(total, weyl_dimension(&rd, &mu));
        }
    }
}

#[test]
fn invariants_dimension_is_average_trace() {
    for e in [2, 3] {
        let g = ramified_torus(e, 5);
        let coinv = coinvariants(g.root.rank(), &g.galois.inertia);
        for mu in [vec![1, 0, 0], vec![1, -1, 0], vec![2, 1, 0], vec![0, 0, 0]] {
            let mu = mu[..e as usize].to_vec();
            let v = LGroupRep::orbit_sum(&g, &mu).unwrap();
            let dim: usize = v.inertia_invariants(&coinv).iter().map(|p| p.basis.len()).sum();
            let total = v.inertia.iter().fold(Cyclotomic::int(0), |acc, (_, op)| acc.add(&op.trace()));
            assert_eq!(Cyclotomic::int(dim as i64).mul(&Cyclotomic::int(v.inertia.len() as i64)), total, "{mu:?}");
        }
    }
}

#[test]
fn test_functions_on_product_factor() {
    let g = gl(2, 5);
    let gg = g.product(&g).unwrap();
    let w = IwahoriWeylGroup::build(&g).unwrap();
    let ww = IwahoriWeylGroup::build(&gg).unwrap();
    let pm = testfn::ProductMap::new(&w, &w, &ww).unwrap();
    for (a, b) in [([1, 0], [0, -1]), ([1, 1], [2, 0])] {
        let za = testfn::z_phi(&w, &g.root, &LGroupRep::irreducible(&g, &a).unwrap(), 0).unwrap();
        let zb = testfn::z_phi(&w, &g.root, &LGroupRep::irreducible(&g, &b).unwrap(), 0).unwrap();
        let mu = [a.to_vec(), b.to_vec()].concat();
        let s = testfn::setup(&gg, &mu).unwrap();
        let direct = s.test_function(&Lift::Frobenius(0)).unwrap();
        assert_eq!(pm.tensor_test(&za, &zb).coefficients, direct.coefficients);
    }
}
