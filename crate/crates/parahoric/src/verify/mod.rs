//! The acceptance suites behind `parahoric verify` and the `acceptance` test target.

pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use parahoric_core::dualside::{dominant_multiplicities, torus_test_scalar, weyl_dimension, LGroupRep, Operator};
use parahoric_core::hecke::{HeckeAlgebra, Pushforward, UnramifiedCharacter};
use parahoric_core::iwahori::{restriction_iso, IwahoriWeylGroup, WeylElement};
use parahoric_core::lattice::{IVec, IntMatrix};
use parahoric_core::rootdata::library::{gl, pgl, type_a, type_b, type_c, type_g2};
use parahoric_core::rootdata::{BasedRootDatum, GroupDatum};
use parahoric_core::scalar::{embed, rat, Cyclotomic, Laurent, Ring};
use parahoric_core::testfn::{self, Lift, ProductMap};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::library;

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2}. {:<34} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Outcome = Result<String, String>;
type Suite = (usize, &'static str, fn() -> Outcome);

pub const SUITES: &[Suite] = &[
    (1, "centrality", centrality),
    (2, "Bernstein evaluation", evaluation),
    (3, "admissible-set counts", adm_counts),
    (4, "support in Adm", support),
    (5, "integrality", integrality),
    (6, "averaging over inertia", averaging),
    (7, "Saito-Shintani", saito_shintani),
    (8, "product factorization", product),
    (9, "adjoint transport", adjoint),
    (10, "Weil-restriction identifications", restriction),
    (11, "Freudenthal vs Kostant", freudenthal),
];

/// `"all"` or a comma-separated list of suite numbers.
pub fn select(selector: &str) -> Result<Vec<usize>, String> {
    if selector.trim() == "all" {
        return Ok(SUITES.iter().map(|s| s.0).collect());
    }
    selector
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if SUITES.iter().any(|s| s.0 == i) => Ok(i),
            _ => Err(format!("unknown suite {t:?} (1-{} or all)", SUITES.len())),
        })
        .collect()
}

pub fn run(ids: &[usize]) -> Vec<SuiteResult> {
    ids.iter()
        .filter_map(|id| SUITES.iter().find(|s| s.0 == *id))
        .map(|&(id, name, f)| {
            let start = Instant::now();
            let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
                let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                Err(format!("panicked: {}", msg.unwrap_or_default()))
            });
            let (passed, detail) = match out {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteResult { id, name, passed, detail, elapsed: start.elapsed() }
        })
        .collect()
}

macro_rules! check {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn err(e: impl Display) -> String {
    e.to_string()
}

fn shipped() -> Result<Vec<(&'static str, GroupDatum)>, String> {
    library::SHIPPED.iter().map(|(n, _)| library::load(n).map(|l| (*n, l.datum)).map_err(err)).collect()
}

/// Points of `Lambda` with free coordinates in `[-bound, bound]`.
fn lattice_points(w: &IwahoriWeylGroup, bound: i64) -> Vec<IVec> {
    let g = &w.rel.lattice;
    let mut pts = vec![vec![]];
    for i in 0..g.dim() {
        let m = g.modulus(i);
        let range: Vec<i64> = if m == 0 { (-bound..=bound).collect() } else { (0..m).collect() };
        pts = pts.into_iter().flat_map(|p: IVec| range.iter().map(move |&x| [p.clone(), vec![x]].concat())).collect();
    }
    pts
}

fn dominant_labels(w: &IwahoriWeylGroup, max_height: i64, bound: i64) -> Vec<IVec> {
    let set: BTreeSet<IVec> = lattice_points(w, bound)
        .into_iter()
        .filter(|l| w.rel.is_dominant(l) && parahoric_core::hecke::height(w, l) <= max_height)
        .collect();
    set.into_iter().collect()
}

/// Dominant minuscule coweights up to the Galois action (plus `0`).
pub fn minuscule(g: &GroupDatum) -> Vec<IVec> {
    let rd = &g.root;
    let n = rd.rank();
    let mut pts = vec![vec![]];
    for _ in 0..n {
        pts = pts.into_iter().flat_map(|p: IVec| (-1..=1).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    let gamma = g.galois.group_elements();
    let mut reps = BTreeSet::new();
    for mu in pts {
        let pairs: Vec<i64> = rd.roots().iter().map(|a| parahoric_core::lattice::dot(a, &mu)).collect();
        if !rd.is_dominant(&mu) || pairs.iter().any(|p| p.abs() > 1) {
            continue;
        }
        if pairs.iter().all(|&p| p == 0) && mu.iter().any(|&x| x != 0) {
            continue;
        }
        let rep = gamma.iter().map(|m| m.apply(&mu)).min().expect("identity");
        reps.insert(rep);
    }
    reps.into_iter().collect()
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Cyclotomic {
    match rng.gen_range(0..6) {
        0 => Cyclotomic::root_of_unity(3, rng.gen_range(0..3)),
        1 => Cyclotomic::root_of_unity(4, rng.gen_range(0..4)).mul(&Cyclotomic::int(rng.gen_range(1..4))),
        2 => Cyclotomic::rational(rat(rng.gen_range(1..5), rng.gen_range(1..5))),
        _ => Cyclotomic::int([-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)]),
    }
}

fn random_character(w: &IwahoriWeylGroup, rng: &mut ChaCha8Rng) -> Result<UnramifiedCharacter, String> {
    let g = &w.rel.lattice;
    let values = (0..g.dim())
        .map(|i| match g.modulus(i) {
            0 => random_scalar(rng),
            m => Cyclotomic::root_of_unity(m as u32, rng.gen_range(0..m)),
        })
        .collect();
    let chi = UnramifiedCharacter::new(values).map_err(err)?;
    check!(chi.is_well_defined(w), "random character is not well defined");
    Ok(chi)
}

fn pair(expansion: &[(IVec, parahoric_core::scalar::LaurentZ)], chi: &UnramifiedCharacter) -> Laurent<Cyclotomic> {
    let mut out = Laurent::zero();
    for (mu, a) in expansion {
        out = &out + &embed::<Cyclotomic>(a).scale(&chi.eval(mu));
    }
    out
}

fn centrality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let (mut orbits, mut groups) = (0, 0);
    for (name, g) in shipped()? {
        let w = IwahoriWeylGroup::build(&g).map_err(err)?;
        if w.rel.lattice.free_rank > 2 {
            continue;
        }
        groups += 1;
        let h = HeckeAlgebra::new(&w);
        let omegas = h.omega_generators();
        let mut labels = dominant_labels(&w, 8, 8);
        labels.shuffle(&mut rng);
        labels.truncate(20);
        for lam in labels {
            let z = h.z(&lam).element;
            for i in 0..w.node_count() {
                check!(h.mul_node_right(&z, i) == h.mul_node_left(i, &z), "{name}: z_{lam:?} does not commute with T_s{i}");
            }
            for tau in &omegas {
                let t = h.t(tau);
                check!(h.mul(&z, &t) == h.mul(&t, &z), "{name}: z_{lam:?} does not commute with T_{tau}");
            }
            orbits += 1;
        }
    }
    Ok(format!("{orbits} orbits on {groups} descriptors of rank <= 2"))
}

fn evaluation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut count = 0;
    for (name, g) in shipped()? {
        let w = IwahoriWeylGroup::build(&g).map_err(err)?;
        if w.rel.lattice.free_rank > 2 {
            continue;
        }
        let h = HeckeAlgebra::new(&w);
        let mut labels = dominant_labels(&w, 4, 3);
        labels.shuffle(&mut rng);
        labels.truncate(3);
        let mut exps = Vec::new();
        for lam in &labels {
            let z = h.z(lam);
            let exp = oracle::theta_expansion(&h, &z.element).map_err(|e| format!("{name}: {e}"))?;
            exps.push((lam.clone(), z, exp));
        }
        let prod = if labels.len() >= 2 {
            let p = h.mul(&exps[0].1.element, &exps[1].1.element);
            Some(oracle::theta_expansion(&h, &p).map_err(|e| format!("{name}: product: {e}"))?)
        } else {
            None
        };
        for _ in 0..50 {
            let chi = random_character(&w, &mut rng)?;
            let mut values = Vec::new();
            for (lam, z, exp) in &exps {
                let orbit_sum = w.orbit(lam).iter().fold(Cyclotomic::int(0), |acc, mu| acc.add(&chi.eval(mu)));
                let expected = Laurent::constant(orbit_sum);
                check!(pair(exp, &chi) == expected, "{name}: theta expansion of z_{lam:?} pairs to {:?}, expected {:?}", pair(exp, &chi), expected);
                check!(h.evaluate(z, &chi) == expected, "{name}: evaluation of z_{lam:?} disagrees with the orbit sum");
                values.push(expected);
                count += 1;
            }
            if let Some(p) = &prod {
                check!(pair(p, &chi) == &values[0] * &values[1], "{name}: evaluation is not multiplicative");
            }
        }
    }
    Ok(format!("{count} pairings, multiplicativity on products"))
}

fn adm_counts() -> Outcome {
    let mut out = Vec::new();
    for n in 2..=4usize {
        let g = gl(n, 7);
        let w = IwahoriWeylGroup::build(&g).map_err(err)?;
        let mut mu = vec![0; n];
        mu[0] = 1;
        let lam = w.coweight_to_lattice(&mu).map_err(err)?;
        let adm: BTreeSet<WeylElement> = w.admissible_set(&lam, &w.iwahori()).map_err(err)?.into_iter().collect();
        let reference = oracle::subword_admissible(&w, &lam);
        check!(adm.len() == (1 << n) - 1, "GL{n}: |Adm| = {}, expected {}", adm.len(), (1 << n) - 1);
        check!(adm == reference, "GL{n}: admissible set differs from the subword enumeration");
        let special = w.admissible_set(&lam, &w.hyperspecial()).map_err(err)?;
        check!(special.len() == 1, "GL{n}: hyperspecial Adm has {} elements", special.len());
        out.push(format!("GL{n}:{}", adm.len()));
    }
    Ok(out.join(" "))
}

fn support() -> Outcome {
    let mut pairs = 0;
    for (name, g) in shipped()? {
        for mu in minuscule(&g) {
            let s = testfn::setup(&g, &mu).map_err(|e| format!("{name} {mu:?}: {e}"))?;
            let z = s.test_function(&Lift::SemiSimple).map_err(|e| format!("{name} {mu:?}: {e}"))?;
            let central = z.central.as_ref().ok_or_else(|| format!("{name} {mu:?}: non-integral Bernstein coefficients"))?;
            for facet in [s.w.iwahori(), s.w.hyperspecial()] {
                let adm = s.w.admissible_set(&s.lambda, &facet).map_err(err)?;
                let rep = testfn::support_in_admissible(&s.w, &central.element, &adm, &facet);
                check!(rep.contained, "{name} {mu:?} facet {:?}: {} support elements outside Adm", facet.nodes, rep.outside.len());
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (group, minuscule mu) pairs at Iwahori and hyperspecial level"))
}

fn integrality() -> Outcome {
    let mut checked = Vec::new();
    for n in 2..=3 {
        let g = gl(n, 7);
        let mut mus = minuscule(&g);
        let mut two = vec![0; n];
        two[0] = 2;
        mus.push(two);
        for mu in mus {
            let s = testfn::setup(&g, &mu).map_err(err)?;
            let z = s.test_function(&Lift::SemiSimple).map_err(err)?;
            for facet in [s.w.iwahori(), s.w.hyperspecial()] {
                let rep = testfn::normalize_and_check_integrality(&s.w, &z, &facet);
                check!(rep.integral, "GL{n} {mu:?} facet {:?}: {:?}", facet.nodes, rep.offending);
            }
            checked.push(format!("{mu:?}"));
        }
    }
    Ok(format!("GL2/GL3, Iwahori and hyperspecial: {}", checked.join(" ")))
}

fn averaging() -> Outcome {
    let mut count = 0;
    for name in ["ramified_torus_2", "ramified_torus_3"] {
        let g = library::load(name).map_err(err)?.datum;
        let e = g.root.rank();
        let mut pts = vec![vec![]];
        for _ in 0..e {
            pts = pts.into_iter().flat_map(|p: IVec| (-2..=2).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        for mu in pts {
            let s = testfn::setup(&g, &mu).map_err(err)?;
            let avg = testfn::z_ss_average(&s.w, &s.group.root, &s.rep).map_err(err)?;
            let inv = testfn::z_ss_invariants(&s.w, &s.group.root, &s.rep).map_err(err)?;
            check!(avg.coefficients == inv.coefficients, "{name} {mu:?}: average {:?} vs invariants {:?}", avg.coefficients, inv.coefficients);
            // torus formula z^Phi = tr(Phi | V) 1_{omega_V}
            let (class, tr) = torus_test_scalar(&s.rep, &s.w.rel.coinvariants).map_err(err)?;
            let lam = s.w.rel.coinvariant_to_lattice(&class).ok_or("omega_V is not Frobenius-fixed")?;
            let phi = testfn::z_phi(&s.w, &s.group.root, &s.rep, 0).map_err(err)?;
            let expected = if tr.is_zero() { vec![] } else { vec![(lam, tr)] };
            check!(phi.coefficients == expected, "{name} {mu:?}: torus formula fails");
            count += 1;
        }
    }
    Ok(format!("{count} characters of the quadratic and cubic ramified tori"))
}

fn random_rep(rng: &mut ChaCha8Rng) -> Result<LGroupRep, String> {
    let d = rng.gen_range(1..=4);
    let weights: Vec<IVec> = (0..d).map(|_| vec![rng.gen_range(-1..=1)]).collect();
    let mut dense = vec![vec![Cyclotomic::int(0); d]; d];
    for r in 0..d {
        for c in 0..d {
            if weights[r] == weights[c] && rng.gen_bool(0.8) {
                dense[r][c] = random_scalar(rng);
            }
        }
    }
    let top = weights.iter().max().cloned().expect("nonempty");
    let id = IntMatrix::identity(1);
    LGroupRep::new(weights, vec![top], id.clone(), Operator::from_dense(&dense), vec![(id, Operator::identity(d))]).map_err(err)
}

/// Dense matrix of `v_0 (x) v_1 (x) ... (x) v_{n-1} -> v_1 (x) ... (x) v_{n-1} (x) Phi_0 v_0`.
fn block_cyclic(phi0: &[Vec<Cyclotomic>], n: usize) -> Vec<Vec<Cyclotomic>> {
    let d = phi0.len();
    let total = d.pow(n as u32);
    let digits = |mut i: usize| -> Vec<usize> {
        let mut v = vec![0; n];
        for k in (0..n).rev() {
            v[k] = i % d;
            i /= d;
        }
        v
    };
    let index = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);
    let mut m = vec![vec![Cyclotomic::int(0); total]; total];
    for col in 0..total {
        let t = digits(col);
        for (r, row) in phi0.iter().enumerate() {
            let mut s: Vec<usize> = t[1..].to_vec();
            s.push(r);
            m[index(&s)][col] = row[t[0]].clone();
        }
    }
    m
}

fn saito_shintani() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for i in 0..100 {
        let v0 = random_rep(&mut rng)?;
        let n = rng.gen_range(1..=3);
        let ind = LGroupRep::tensor_induce(&v0, n).map_err(err)?;
        check!(ind.dim() == v0.dim().pow(n as u32), "case {i}: induced dimension {}", ind.dim());
        // Phi^n acts on V_0 through the given operator of the smaller field
        let expected = v0.frobenius.trace();
        let oracle = block_cyclic(&v0.frobenius.to_dense(), n);
        let oracle_trace = (0..oracle.len()).fold(Cyclotomic::int(0), |acc, k| acc.add(&oracle[k][k]));
        check!(oracle_trace == expected, "case {i}: explicit block-cyclic trace {oracle_trace} vs {expected}");
        check!(ind.trace_frobenius(0) == expected, "case {i} (dim {}, n = {n}): {} vs {expected}", v0.dim(), ind.trace_frobenius(0));
        let mut kron = v0.frobenius.clone();
        for _ in 1..n {
            kron = kron.kron(&v0.frobenius);
        }
        check!(ind.frobenius.pow(n as u32) == kron, "case {i}: Phi^n on the induced space is not Phi_0 on every factor");
    }
    Ok("100 random V_0 of dimension <= 4, n <= 3".into())
}

fn product() -> Outcome {
    let g1 = gl(2, 7);
    let g12 = g1.product(&g1).map_err(err)?;
    let w1 = IwahoriWeylGroup::build(&g1).map_err(err)?;
    let w12 = IwahoriWeylGroup::build(&g12).map_err(err)?;
    let pm = ProductMap::new(&w1, &w1, &w12).map_err(err)?;
    let mus: [IVec; 5] = [vec![0, 0], vec![1, 0], vec![1, 1], vec![0, -1], vec![2, 0]];
    let mut count = 0;
    for a in &mus {
        for b in &mus {
            let va = LGroupRep::irreducible(&g1, a).map_err(err)?;
            let vb = LGroupRep::irreducible(&g1, b).map_err(err)?;
            let za = testfn::z_phi(&w1, &g1.root, &va, 0).map_err(err)?;
            let zb = testfn::z_phi(&w1, &g1.root, &vb, 0).map_err(err)?;
            let mu = [a.clone(), b.clone()].concat();
            let direct = testfn::z_phi(&w12, &g12.root, &LGroupRep::irreducible(&g12, &mu).map_err(err)?, 0).map_err(err)?;
            let via_tensor_rep = testfn::z_phi(&w12, &g12.root, &va.tensor(&vb), 0).map_err(err)?;
            let factored = pm.tensor_test(&za, &zb);
            check!(factored.coefficients == direct.coefficients, "{a:?} x {b:?}: Bernstein coefficients differ");
            check!(via_tensor_rep.coefficients == direct.coefficients, "{a:?} x {b:?}: V_a (x) V_b differs from V_(a,b)");
            let (ca, cb, cd) = (za.central.unwrap(), zb.central.unwrap(), direct.central.unwrap());
            check!(pm.tensor(&ca.element, &cb.element) == cd.element, "{a:?} x {b:?}: T_w expansions differ");
            check!(factored.degree == direct.degree, "{a:?} x {b:?}: degrees differ");
            check!(
                va.parity(&g1.root).map_err(err)? ^ vb.parity(&g1.root).map_err(err)? == va.tensor(&vb).parity(&g12.root).map_err(err)?,
                "{a:?} x {b:?}: parity is not additive"
            );
            count += 1;
        }
    }
    Ok(format!("{count} pairs (mu_1, mu_2) on GL2 x GL2"))
}

fn adjoint() -> Outcome {
    let mut count = 0;
    for n in 2..=3usize {
        let g = gl(n, 7);
        let gad = pgl(n, 7);
        let rows: Vec<IVec> = (0..n - 1)
            .map(|j| {
                let mut r = vec![0; n];
                r[j] = 1;
                r[j + 1] = -1;
                r
            })
            .collect();
        let p_abs = IntMatrix::from_rows(&rows);
        for mu in minuscule(&g).into_iter().filter(|m| m.iter().any(|&x| x != m[0])) {
            let s = testfn::setup(&g, &mu).map_err(err)?;
            let mu_ad = p_abs.apply(&mu);
            let sad = testfn::setup(&gad, &mu_ad).map_err(err)?;
            let p = Pushforward::new(&s.w, &sad.w, &p_abs).map_err(err)?;
            let z = s.test_function(&Lift::Frobenius(0)).map_err(err)?;
            let zad = sad.test_function(&Lift::Frobenius(0)).map_err(err)?;
            let (c, cad) = (z.central.clone().unwrap(), zad.central.clone().unwrap());
            let pushed = p.push_central(&c).map_err(err)?;
            check!(pushed.element == cad.element, "GL{n} {mu:?}: p_*(z) differs from z for PGL{n}");
            // omega_V -> omega_{V_ad}
            let omega = z.omega.clone().ok_or("z is not supported on one Kottwitz fiber")?;
            let omega_ad = zad.omega.clone().ok_or("z_ad is not supported on one Kottwitz fiber")?;
            check!(sad.w.kottwitz(&p.map(&s.w.translation(&s.lambda))) == omega_ad, "GL{n} {mu:?}: omega_V does not map to omega_V_ad");
            // slice: labels in the omega fiber supported on Adm
            let labels = |w: &IwahoriWeylGroup, lam: &IVec, om: &IVec| -> Result<BTreeSet<IVec>, String> {
                let adm = w.admissible_set(lam, &w.iwahori()).map_err(err)?;
                Ok(adm.iter().filter(|x| x.fin == 0).map(|x| w.dominant(&x.trans)).filter(|l| w.rel.fundamental_class(l) == *om).collect())
            };
            let src = labels(&s.w, &s.lambda, &omega)?;
            let dst = labels(&sad.w, &sad.lambda, &omega_ad)?;
            let image: BTreeSet<IVec> = src.iter().map(|l| sad.w.dominant(&p.map_lattice(l))).collect();
            check!(image.len() == src.len() && image == dst, "GL{n} {mu:?}: slice map {src:?} -> {image:?} is not onto {dst:?}");
            let h = HeckeAlgebra::new(&s.w);
            for l in &src {
                let zl = h.z(l).element;
                let back = p.lift_element(&p.push(&zl), &omega).map_err(err)?;
                check!(back == zl, "GL{n}: slice inverse fails on z_{l:?}");
            }
            check!(p.lift_element(&p.push(&c.element), &omega).map_err(err)? == c.element, "GL{n} {mu:?}: slice inverse fails on z^Phi");
            count += 1;
        }
    }
    Ok(format!("{count} minuscule coweights of GL2, GL3"))
}

/// Elements reachable by at most `depth` node or length-zero generators.
fn sample_elements(w: &IwahoriWeylGroup, depth: usize) -> Vec<WeylElement> {
    let h = HeckeAlgebra::new(w);
    let mut gens: Vec<WeylElement> = (0..w.node_count()).map(|i| w.node(i).clone()).collect();
    for t in h.omega_generators() {
        gens.push(w.inverse(&t));
        gens.push(t);
    }
    let mut seen: BTreeSet<WeylElement> = BTreeSet::from([w.identity()]);
    let mut frontier = vec![w.identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = w.mul(x, g);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

fn restriction() -> Outcome {
    let mut out = Vec::new();
    for name in ["res_gl2_ram2", "res_sl2_ram2", "res_pgl2_ram2"] {
        let g = library::load(name).map_err(err)?.datum;
        let w = IwahoriWeylGroup::build(&g).map_err(err)?;
        let iso = restriction_iso(&g, &w).map_err(err)?;
        let base = &iso.base;
        let blocks = g.restriction.as_ref().ok_or("not a Weil restriction")?;
        let f = blocks.f;
        // Iwahori-Weyl groups
        check!(w.node_count() == base.node_count(), "{name}: node counts differ");
        for i in 0..w.node_count() {
            check!(iso.to_base(w.node(i)) == *base.node(i), "{name}: node {i} is not matched");
            check!(w.param(i) == f * base.param(i), "{name}: parameter of node {i}");
        }
        let sample = sample_elements(&w, 3);
        let mut kappa: BTreeMap<IVec, IVec> = BTreeMap::new();
        let mut kappa_inv: BTreeMap<IVec, IVec> = BTreeMap::new();
        for x in &sample {
            let y = iso.to_base(x);
            check!(iso.from_base(&w, &y) == *x, "{name}: identification is not invertible at {x}");
            check!(w.length(x) == base.length(&y), "{name}: length of {x} changes");
            for z in sample.iter().take(12) {
                check!(iso.to_base(&w.mul(x, z)) == base.mul(&y, &iso.to_base(z)), "{name}: not multiplicative at {x}, {z}");
            }
            // Kottwitz maps: the identification induces a bijection of classes
            let (kf, kk) = (w.kottwitz(x), base.kottwitz(&y));
            check!(kappa.entry(kf.clone()).or_insert(kk.clone()) == &kk, "{name}: Kottwitz classes do not correspond");
            check!(kappa_inv.entry(kk).or_insert(kf.clone()) == &kf, "{name}: Kottwitz correspondence is not injective");
        }
        // centers: z for Res at the I-orbit of (mu_0, 0) vs z for G_0 at mu_0, both ways
        let r = blocks.base.root.rank();
        let mut mus = minuscule(&blocks.base);
        let dominant_big = (1..=2).map(|k| blocks.base.root.dominate(&blocks.base.root.coroots()[blocks.base.root.simple()[0]].iter().map(|x| k * x).collect::<IVec>()).0);
        mus.extend(dominant_big);
        let mut transported = 0;
        for mu0 in mus {
            let mut mu = vec![0; g.root.rank()];
            let b = blocks.block(0, 0);
            mu[b * r..(b + 1) * r].copy_from_slice(&mu0);
            let sf = testfn::setup(&g, &mu).map_err(err)?;
            let sk = testfn::setup(&blocks.base, &mu0).map_err(err)?;
            let zf = sf.test_function(&Lift::SemiSimple).map_err(err)?;
            let zk = sk.test_function(&Lift::Frobenius(0)).map_err(err)?;
            let (cf, ck) = (zf.central.clone().ok_or("non-integral")?, zk.central.clone().ok_or("non-integral")?);
            let up = ck.element.substitute_power(f as i32).map_support(|x| iso.from_base(&w, x));
            check!(up == cf.element, "{name} {mu0:?}: z over K transported to F differs");
            let down = cf.element.map_support(|x| iso.to_base(x));
            check!(down.substitute_power(1) == ck.element.substitute_power(f as i32), "{name} {mu0:?}: z over F transported to K differs");
            let mut labels: Vec<(IVec, Cyclotomic)> = zf.coefficients.iter().map(|(l, c)| (base.dominant(&iso.lattice_to_base(l)), c.clone())).collect();
            labels.sort_by(|a, b| a.0.cmp(&b.0));
            let mut expect = zk.coefficients.clone();
            expect.sort_by(|a, b| a.0.cmp(&b.0));
            check!(labels == expect, "{name} {mu0:?}: Bernstein labels do not correspond");
            transported += 1;
        }
        out.push(format!("{name}: {} elements, {transported} z", sample.len()));
    }
    Ok(out.join("; "))
}

fn cartan_sum(a: &[IVec], b: &[IVec]) -> Vec<IVec> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n + m]; n + m];
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i]);
    }
    for i in 0..m {
        out[n + i][n..].copy_from_slice(&b[i]);
    }
    out
}

/// Every Cartan type of rank at most 3.
fn cartan_types() -> Vec<(&'static str, Vec<IVec>)> {
    let a1 = type_a(1);
    vec![
        ("A1", a1.clone()),
        ("A2", type_a(2)),
        ("A3", type_a(3)),
        ("B2", type_b(2)),
        ("G2", type_g2()),
        ("B3", type_b(3)),
        ("C3", type_c(3)),
        ("A1xA1", cartan_sum(&a1, &a1)),
        ("A2xA1", cartan_sum(&type_a(2), &a1)),
        ("B2xA1", cartan_sum(&type_b(2), &a1)),
        ("G2xA1", cartan_sum(&type_g2(), &a1)),
        ("A1xA1xA1", cartan_sum(&cartan_sum(&a1, &a1), &a1)),
    ]
}

fn freudenthal() -> Outcome {
    let mut count = 0;
    for (label, a) in cartan_types() {
        for sc in [true, false] {
            let rd = BasedRootDatum::from_cartan(&a, sc).map_err(err)?;
            let two_rho = rd.two_rho();
            let r = rd.rank();
            let mut pts = vec![vec![]];
            for _ in 0..r {
                pts = pts.into_iter().flat_map(|p: IVec| (0..=12).map(move |x| [p.clone(), vec![x]].concat())).collect();
            }
            for mu in pts.into_iter().filter(|m| rd.is_dominant(m) && parahoric_core::lattice::dot(&two_rho, m) <= 12) {
                let fr: BTreeMap<IVec, usize> = dominant_multiplicities(&rd, &mu).map_err(err)?.into_iter().filter(|(_, m)| *m > 0).collect();
                let ko = oracle::kostant_multiplicities(&rd, &mu);
                check!(fr == ko, "{label} ({}) mu = {mu:?}: Freudenthal {fr:?} vs Kostant {ko:?}", if sc { "sc" } else { "ad" });
                let total: usize = fr.iter().map(|(nu, m)| m * rd.weyl_orbit(nu).len()).sum();
                check!(total == weyl_dimension(&rd, &mu), "{label} mu = {mu:?}: dimension {total} vs Weyl {}", weyl_dimension(&rd, &mu));
                count += 1;
            }
        }
    }
    let a2 = BasedRootDatum::from_cartan(&type_a(2), true).map_err(err)?;
    let adj = dominant_multiplicities(&a2, &[1, 1]).map_err(err)?;
    check!(adj.get(&vec![0, 0]) == Some(&2), "A2 adjoint zero weight has multiplicity {:?}", adj.get(&vec![0, 0]));
    Ok(format!("{count} highest weights of height <= 12 in rank <= 3; A2 adjoint m(0) = 2"))
}
