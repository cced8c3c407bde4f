//! The computation verbs behind the command line, returning serializable reports.

use std::collections::BTreeSet;

use parahoric_core::hecke::HeckeAlgebra;
use parahoric_core::iwahori::{Facet, IwahoriWeylGroup};
use parahoric_core::lattice::{FgAbelian, IVec, IntMatrix, Quotient};
use parahoric_core::scalar::Cyclotomic;
use parahoric_core::testfn::{self, Lift, Setup};
use serde::{Deserialize, Serialize};

use crate::descriptor::Loaded;
use crate::formats::{self, ElementJson, TermJson};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetSpec {
    Iwahori,
    Hyperspecial,
    Nodes(Vec<usize>),
}

impl FacetSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "iwahori" | "" => Ok(Self::Iwahori),
            "hyperspecial" | "special" => Ok(Self::Hyperspecial),
            list => list
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Validation(format!("--facet: bad node index {t:?}"))))
                .collect::<Result<Vec<_>, _>>()
                .map(Self::Nodes),
        }
    }

    pub fn resolve(&self, w: &IwahoriWeylGroup) -> Result<Facet, CliError> {
        match self {
            Self::Iwahori => Ok(w.iwahori()),
            Self::Hyperspecial => Ok(w.hyperspecial()),
            Self::Nodes(n) => {
                if let Some(&i) = n.iter().find(|&&i| i >= w.node_count()) {
                    return Err(CliError::Validation(format!("--facet: node {i} out of range (0..{})", w.node_count())));
                }
                w.facet(n).map_err(|e| CliError::Validation(format!("--facet: {e}")))
            }
        }
    }
}

pub fn parse_ints(flag: &str, s: &str) -> Result<IVec, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Validation(format!("{flag}: bad integer {t:?}"))))
        .collect()
}

pub fn parse_lift(s: &str) -> Result<Lift, CliError> {
    match s.trim() {
        "ss" => Ok(Lift::SemiSimple),
        k => k.parse::<usize>().map(Lift::Frobenius).map_err(|_| CliError::Validation(format!("--lift: expected an index or \"ss\", got {k:?}"))),
    }
}

fn lift_name(l: &Lift) -> String {
    match l {
        Lift::SemiSimple => "ss".into(),
        Lift::Frobenius(k) => k.to_string(),
    }
}

fn abelian(a: &FgAbelian) -> String {
    let mut parts = Vec::new();
    match a.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(a.torsion.iter().filter(|&&d| d > 1).map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Describes a Galois action by cycles when it permutes coordinates.
fn action_text(gens: &[IntMatrix]) -> String {
    if gens.iter().all(|g| g.is_identity()) {
        return "trivially".into();
    }
    let mut cycles = Vec::new();
    for g in gens {
        let n = g.rows();
        let perm: Option<Vec<usize>> =
            (0..n).map(|c| (0..n).find(|&r| g.get(r, c) == 1).filter(|_| (0..n).filter(|&r| g.get(r, c) != 0).count() == 1)).collect();
        let Some(perm) = perm else {
            return "by integer matrices".into();
        };
        let mut seen = vec![false; n];
        let mut cyc = Vec::new();
        for s in 0..n {
            if seen[s] || perm[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = perm[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = perm[x];
            }
            cyc.push(format!("({})", formats::words(&c)));
        }
        cycles.push(cyc.join(""));
    }
    if cycles.len() == 1 && cycles[0].matches('(').count() == 1 && cycles[0].split(' ').count() == 2 {
        "by swap".into()
    } else {
        format!("by {}", cycles.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub index: usize,
    pub affine: bool,
    pub param: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescribeReport {
    pub name: String,
    pub absolute_rank: usize,
    pub semisimple_rank: usize,
    pub relative_rank: usize,
    pub relative_type: Vec<String>,
    pub pi1_coinvariants: String,
    pub omega: String,
    pub inertia: String,
    pub frobenius: String,
    pub galois_order: usize,
    pub q: u64,
    pub e: u32,
    pub f: u32,
    pub nodes: Vec<NodeJson>,
}

fn iwahori_of(l: &Loaded) -> Result<IwahoriWeylGroup, CliError> {
    let w = IwahoriWeylGroup::build(&l.datum)?;
    match &l.descriptor.params {
        Some(p) => Ok(w.with_params(p)?),
        None => Ok(w),
    }
}

pub fn describe(l: &Loaded) -> Result<DescribeReport, CliError> {
    let g = &l.datum;
    let w = iwahori_of(l)?;
    let rel = &w.rel;
    let coroots = IntMatrix::from_cols(rel.rank(), &rel.coroots);
    let omega = Quotient::of_group(&rel.lattice, &coroots).group;
    let relative_type = rel.type_label();
    Ok(DescribeReport {
        name: g.name.clone(),
        absolute_rank: g.root.rank(),
        semisimple_rank: g.root.semisimple_rank(),
        relative_rank: rel.lattice.free_rank,
        relative_type,
        pi1_coinvariants: abelian(&rel.fundamental_group.group),
        omega: abelian(&omega),
        inertia: action_text(&g.galois.inertia),
        frobenius: action_text(std::slice::from_ref(&g.galois.frobenius)),
        galois_order: g.galois.group_order,
        q: g.galois.q,
        e: g.galois.e,
        f: g.galois.f,
        nodes: (0..w.node_count()).map(|i| NodeJson { index: i, affine: w.nodes()[i].affine, param: w.param(i) }).collect(),
    })
}

impl DescribeReport {
    pub fn text(&self) -> String {
        let ty = if self.relative_type.is_empty() { "T".to_string() } else { self.relative_type.join(" x ") };
        let mut s = format!("{}\n", self.name);
        s += &format!("relative type {ty}, \u{3c0}\u{2081} = {}, \u{3a9} \u{2245} {}\n", self.pi1_coinvariants, self.omega);
        s += &format!("\u{3c0}\u{2081} coinvariants {}, inertia acts {}\n", self.pi1_coinvariants, self.inertia);
        s += &format!("Frobenius acts {}; Galois quotient of order {}\n", self.frobenius, self.galois_order);
        s += &format!("ranks: absolute {}, semisimple {}, relative {}\n", self.absolute_rank, self.semisimple_rank, self.relative_rank);
        s += &format!("q = {}, e = {}, f = {}\n", self.q, self.e, self.f);
        let nodes: Vec<String> = self.nodes.iter().map(|n| format!("{}{}(L={})", n.index, if n.affine { "*" } else { "" }, n.param)).collect();
        s += &format!("nodes: {}\n", nodes.join(" "));
        s
    }

    pub fn csv(&self) -> String {
        let rows = vec![
            vec!["name".into(), self.name.clone()],
            vec!["relative_type".into(), self.relative_type.join(" x ")],
            vec!["pi1_coinvariants".into(), self.pi1_coinvariants.clone()],
            vec!["omega".into(), self.omega.clone()],
            vec!["inertia".into(), self.inertia.clone()],
            vec!["frobenius".into(), self.frobenius.clone()],
            vec!["absolute_rank".into(), self.absolute_rank.to_string()],
            vec!["semisimple_rank".into(), self.semisimple_rank.to_string()],
            vec!["relative_rank".into(), self.relative_rank.to_string()],
        ];
        formats::write_csv(&["key", "value"], &rows)
    }
}

fn setup_for(l: &Loaded, mu: &[i64]) -> Result<Setup, CliError> {
    if mu.len() != l.datum.root.rank() {
        return Err(CliError::Validation(format!("--mu: expected {} entries, got {}", l.datum.root.rank(), mu.len())));
    }
    if !l.datum.root.is_dominant(mu) {
        return Err(CliError::Validation(format!("--mu: {mu:?} is not dominant")));
    }
    let mut s = testfn::setup(&l.datum, mu)?;
    if s.m == 1 {
        if let Some(p) = &l.descriptor.params {
            s.w = s.w.with_params(p)?;
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmReport {
    pub group: String,
    pub mu: IVec,
    pub reflex_degree: u32,
    pub facet: Vec<usize>,
    pub count: usize,
    pub elements: Vec<ElementJson>,
}

pub fn adm(l: &Loaded, mu: &[i64], facet: &FacetSpec) -> Result<AdmReport, CliError> {
    let s = setup_for(l, mu)?;
    let f = facet.resolve(&s.w)?;
    let set = s.w.admissible_set(&s.lambda, &f)?;
    Ok(AdmReport {
        group: s.group.name.clone(),
        mu: mu.to_vec(),
        reflex_degree: s.m,
        facet: f.nodes.clone(),
        count: set.len(),
        elements: set.iter().map(|x| formats::element_to_json(&s.w, x)).collect(),
    })
}

impl AdmReport {
    pub fn text(&self) -> String {
        let mut s = format!("Adm({:?}) in {} at facet {:?}: {} elements\n", self.mu, self.group, self.facet, self.count);
        for e in &self.elements {
            s += &format!("  [{}] tau{:?}\n", formats::words(&e.reduced_word), e.omega_label);
        }
        s
    }

    pub fn csv(&self) -> String {
        let rows: Vec<Vec<String>> =
            self.elements.iter().map(|e| vec![formats::words(&e.reduced_word), formats::ints(&e.omega_label), e.reduced_word.len().to_string()]).collect();
        formats::write_csv(&["reduced_word", "omega_label", "length"], &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BernsteinReport {
    pub group: String,
    pub coweight: IVec,
    /// Dominant representative of the orbit in `Lambda` coordinates.
    pub label: IVec,
    pub element: Vec<TermJson>,
}

pub fn bernstein(l: &Loaded, coweight: &[i64]) -> Result<BernsteinReport, CliError> {
    if coweight.len() != l.datum.root.rank() {
        return Err(CliError::Validation(format!("--mu: expected {} entries, got {}", l.datum.root.rank(), coweight.len())));
    }
    let w = iwahori_of(l)?;
    let lam = w.coweight_to_lattice(coweight).map_err(|e| CliError::Validation(format!("--mu: {e}")))?;
    let label = w.dominant(&lam);
    let z = HeckeAlgebra::new(&w).z(&label);
    Ok(BernsteinReport { group: l.datum.name.clone(), coweight: coweight.to_vec(), label, element: formats::hecke_to_json(&w, &z.element) })
}

impl BernsteinReport {
    pub fn text(&self) -> String {
        let mut s = format!("z_{:?} in {} ({} terms)\n", self.label, self.group, self.element.len());
        for t in &self.element {
            let c = formats::laurent_from_pairs(&t.coeffs).map(|c| formats::laurent_text(&c)).unwrap_or_default();
            s += &format!("  ({c}) T[{}] tau{:?}\n", formats::words(&t.reduced_word), t.omega_label);
        }
        s
    }

    pub fn csv(&self) -> String {
        let mut rows = Vec::new();
        for t in &self.element {
            for (e, c) in &t.coeffs {
                rows.push(vec![formats::words(&t.reduced_word), formats::ints(&t.omega_label), e.to_string(), c.to_string()]);
            }
        }
        formats::write_csv(&["reduced_word", "omega_label", "exponent", "coefficient"], &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Bernstein,
    IwahoriMatsumoto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientJson {
    /// Coefficient of `z_label`, as an exact scalar string.
    Bernstein { label: IVec, value: String },
    Term(TermJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmissibleCheck {
    pub contained: bool,
    pub outside: Vec<ElementJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueJson {
    pub reduced_word: Vec<usize>,
    pub omega_label: IVec,
    /// Polynomial in `v`; integral values only involve even exponents (powers of `q`).
    pub value: Vec<(i32, i64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OffendingJson {
    pub reduced_word: Vec<usize>,
    pub omega_label: IVec,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralityJson {
    pub integral: bool,
    pub values: Vec<ValueJson>,
    pub offending: Vec<OffendingJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFnReport {
    pub group: String,
    pub mu: IVec,
    pub reflex_degree: u32,
    pub facet: Vec<usize>,
    pub lift: String,
    pub degree: i64,
    pub omega: Option<IVec>,
    pub basis: Basis,
    pub coefficients: Vec<CoefficientJson>,
    /// Double-coset representatives of the support at the facet.
    pub support: Vec<ElementJson>,
    pub admissible_check: AdmissibleCheck,
    pub integrality_report: IntegralityJson,
}

pub fn testfn(l: &Loaded, mu: &[i64], facet: &FacetSpec, lift: &Lift, basis: Basis) -> Result<TestFnReport, CliError> {
    let s = setup_for(l, mu)?;
    let f = facet.resolve(&s.w)?;
    let z = s.test_function(lift)?;
    let w = &s.w;
    let coefficients = match basis {
        Basis::Bernstein => z.coefficients.iter().map(|(label, c)| CoefficientJson::Bernstein { label: label.clone(), value: c.to_string() }).collect(),
        Basis::IwahoriMatsumoto => {
            let central = z.central.as_ref().ok_or_else(|| {
                CliError::Compute("Bernstein coefficients are not integers; use --basis bernstein".into())
            })?;
            formats::hecke_to_json(w, &central.element).into_iter().map(CoefficientJson::Term).collect()
        }
    };
    let (support, admissible_check) = match &z.central {
        Some(central) => {
            let h = HeckeAlgebra::new(w);
            let at_facet = testfn::parahoric_element(&h, &central.element, &f);
            let reps: BTreeSet<_> = at_facet.support().map(|x| if f.is_iwahori() { x.clone() } else { w.max_in_double_coset(x, &f) }).collect();
            let adm = w.admissible_set(&s.lambda, &f)?;
            let rep = testfn::support_in_admissible(w, &central.element, &adm, &f);
            (
                w.sort_canonical(reps).iter().map(|x| formats::element_to_json(w, x)).collect(),
                AdmissibleCheck { contained: rep.contained, outside: rep.outside.iter().map(|x| formats::element_to_json(w, x)).collect() },
            )
        }
        None => (vec![], AdmissibleCheck { contained: false, outside: vec![] }),
    };
    let integ = testfn::normalize_and_check_integrality(w, &z, &f);
    let integrality_report = IntegralityJson {
        integral: integ.integral,
        values: integ
            .values
            .iter()
            .map(|(x, v)| {
                let e = formats::element_to_json(w, x);
                ValueJson { reduced_word: e.reduced_word, omega_label: e.omega_label, value: formats::laurent_to_pairs(v) }
            })
            .collect(),
        offending: integ
            .offending
            .iter()
            .map(|(x, r)| {
                let e = formats::element_to_json(w, x);
                OffendingJson { reduced_word: e.reduced_word, omega_label: e.omega_label, reason: r.clone() }
            })
            .collect(),
    };
    Ok(TestFnReport {
        group: s.group.name.clone(),
        mu: mu.to_vec(),
        reflex_degree: s.m,
        facet: f.nodes.clone(),
        lift: lift_name(lift),
        degree: z.degree,
        omega: z.omega.clone(),
        basis,
        coefficients,
        support,
        admissible_check,
        integrality_report,
    })
}

impl TestFnReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "z^{} for mu = {:?} on {} (reflex degree {}, facet {:?}, d = {})\n",
            self.lift, self.mu, self.group, self.reflex_degree, self.facet, self.degree
        );
        for c in &self.coefficients {
            match c {
                CoefficientJson::Bernstein { label, value } => s += &format!("  {value} * z_{label:?}\n"),
                CoefficientJson::Term(t) => {
                    let c = formats::laurent_from_pairs(&t.coeffs).map(|c| formats::laurent_text(&c)).unwrap_or_default();
                    s += &format!("  ({c}) T[{}] tau{:?}\n", formats::words(&t.reduced_word), t.omega_label);
                }
            }
        }
        s += &format!("support: {} double cosets, inside Adm: {}\n", self.support.len(), if self.admissible_check.contained { "yes" } else { "no" });
        s += &format!("integrality: {}\n", if self.integrality_report.integral { "pass" } else { "fail" });
        for o in &self.integrality_report.offending {
            s += &format!("  [{}] tau{:?}: {}\n", formats::words(&o.reduced_word), o.omega_label, o.reason);
        }
        s
    }

    /// Trace table: one row per Bernstein coefficient (or `T_w` coefficient).
    pub fn csv(&self) -> String {
        let mut rows = Vec::new();
        for c in &self.coefficients {
            match c {
                CoefficientJson::Bernstein { label, value } => rows.push(vec!["z".into(), formats::ints(label), String::new(), value.clone()]),
                CoefficientJson::Term(t) => {
                    for (e, k) in &t.coeffs {
                        rows.push(vec![format!("T[{}]", formats::words(&t.reduced_word)), formats::ints(&t.omega_label), e.to_string(), k.to_string()]);
                    }
                }
            }
        }
        formats::write_csv(&["basis_element", "label", "exponent", "value"], &rows)
    }

    /// Bernstein coefficients as exact scalars.
    pub fn bernstein_coefficients(&self) -> Option<Vec<(IVec, Cyclotomic)>> {
        self.coefficients
            .iter()
            .map(|c| match c {
                CoefficientJson::Bernstein { label, value } => Cyclotomic::parse(value).map(|v| (label.clone(), v)),
                CoefficientJson::Term(_) => None,
            })
            .collect()
    }
}
