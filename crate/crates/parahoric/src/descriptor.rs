//! TOML group descriptors.
//!
//! A descriptor names either a family (`GL`, `SL`, `PGL`, `torus`) with an optional
//! Weil restriction, or gives the root datum and Galois action explicitly:
//!
//! ```toml
//! name = "Res GL2, ramified quadratic"
//! family = "GL"
//! n = 2
//! q = 7                  # residue field of F
//! facet = [1]            # optional default facet (affine node indices)
//!
//! [restriction]          # optional: Res_{K/F}, K/F tame with e | q^f - 1
//! e = 2
//! f = 1
//!
//! [[representation]]     # optional
//! highest_weight = [1, 0, 0, 0]
//! ```
//!
//! ```toml
//! name = "SU-like"
//! [root_datum]
//! rank = 2
//! roots = [[1, -1], [-1, 1]]
//! coroots = [[1, -1], [-1, 1]]
//! simple = [0]
//! pairing = [[1, 0], [0, 1]]   # optional; identity by default
//! [galois]
//! inertia = []                 # generators, integer matrices acting on coweights
//! frobenius = [[1, 0], [0, 1]]
//! q = 5
//! e = 1
//! f = 1
//! ```
//!
//! Explicit Galois operators on a representation (nontrivial cocycles) are given as
//! dense matrices of exact scalars (`"1"`, `"-1/2"`, `"Q(z3)[0,1]"` for a primitive cube root
//! of unity in the power basis) on the weight basis
//! produced by the default construction; `inertia` lists one matrix per inertia element
//! in the order of the default representation.

use std::path::Path;

use parahoric_core::dualside::{LGroupRep, Operator};
use parahoric_core::lattice::{IVec, IntMatrix};
use parahoric_core::rootdata::{weil_restrict, BasedRootDatum, GaloisDescentDatum, GroupDatum};
use parahoric_core::scalar::Cyclotomic;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub name: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub restriction: Option<RestrictionSpec>,
    pub root_datum: Option<RootDatumSpec>,
    pub galois: Option<GaloisSpec>,
    pub facet: Option<Vec<usize>>,
    /// User-supplied parameters `L(s)`, one per affine-diagram node.
    pub params: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representation: Vec<RepresentationSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionSpec {
    pub e: u32,
    pub f: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDatumSpec {
    pub rank: usize,
    pub roots: Vec<IVec>,
    pub coroots: Vec<IVec>,
    pub simple: Vec<usize>,
    pub pairing: Option<Vec<IVec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisSpec {
    #[serde(default)]
    pub inertia: Vec<Vec<IVec>>,
    pub frobenius: Vec<IVec>,
    pub q: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default = "one")]
    pub f: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub highest_weight: IVec,
    pub frobenius: Option<Vec<Vec<String>>>,
    pub inertia: Option<Vec<Vec<Vec<String>>>>,
}

/// A validated descriptor.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub descriptor: GroupDescriptor,
    pub datum: GroupDatum,
}

fn field(f: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{f}: {msg}"))
}

fn matrix(f: &str, rows: &[IVec], n: usize) -> Result<IntMatrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(field(f, format!("expected a {n}x{n} integer matrix")));
    }
    Ok(IntMatrix::from_rows(rows))
}

impl GroupDescriptor {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("descriptor: {}", e.message())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("descriptor serializes")
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let datum = match (&self.family, &self.root_datum) {
            (Some(_), Some(_)) => return Err(field("family", "give either a family or an explicit root_datum, not both")),
            (None, None) => return Err(field("family", "missing: give a family or an explicit root_datum")),
            (Some(fam), None) => self.family_datum(fam)?,
            (None, Some(rd)) => self.explicit_datum(rd)?,
        };
        if let Some(p) = &self.params {
            parahoric_core::iwahori::IwahoriWeylGroup::build(&datum)
                .and_then(|w| w.with_params(p))
                .map_err(|e| field("params", e))?;
        }
        for (i, r) in self.representation.iter().enumerate() {
            if r.highest_weight.len() != datum.root.rank() {
                return Err(field(&format!("representation[{i}].highest_weight"), format!("expected {} entries", datum.root.rank())));
            }
        }
        Ok(Loaded { descriptor: self.clone(), datum })
    }

    fn family_datum(&self, fam: &str) -> Result<GroupDatum, CliError> {
        if self.galois.is_some() {
            return Err(field("galois", "only allowed with an explicit root_datum"));
        }
        let n = self.n.ok_or_else(|| field("n", "missing"))?;
        let q = self.q.ok_or_else(|| field("q", "missing"))?;
        if q < 2 {
            return Err(field("q", "residue field needs at least 2 elements"));
        }
        let (e, f) = self.restriction.as_ref().map(|r| (r.e, r.f)).unwrap_or((1, 1));
        if e == 0 || f == 0 {
            return Err(field("restriction", "e and f must be positive"));
        }
        let qk = q.checked_pow(f).ok_or_else(|| field("restriction.f", "q^f overflows"))?;
        let root = match fam {
            "GL" if n >= 1 => BasedRootDatum::gl(n),
            "SL" if n >= 2 => BasedRootDatum::from_cartan(&parahoric_core::rootdata::library::type_a(n - 1), true).map_err(|e| field("n", e))?,
            "PGL" if n >= 2 => BasedRootDatum::from_cartan(&parahoric_core::rootdata::library::type_a(n - 1), false).map_err(|e| field("n", e))?,
            "torus" if n >= 1 => BasedRootDatum::torus(n),
            "GL" | "SL" | "PGL" | "torus" => return Err(field("n", format!("{n} is too small for {fam}"))),
            other => return Err(field("family", format!("unknown family {other:?} (GL, SL, PGL, torus)"))),
        };
        let base_name = if fam == "torus" { format!("Gm^{n}") } else { format!("{fam}{n}") };
        let base = GroupDatum::split(base_name.clone(), root, qk);
        let mut g = if self.restriction.is_some() { weil_restrict(&base, e, f, q).map_err(|e| field("restriction", e))? } else { base };
        g.name = self.name.clone().unwrap_or_else(|| if self.restriction.is_some() { format!("Res(e={e},f={f}) {base_name}") } else { base_name });
        Ok(g)
    }

    fn explicit_datum(&self, rd: &RootDatumSpec) -> Result<GroupDatum, CliError> {
        if self.n.is_some() || self.restriction.is_some() || self.q.is_some() {
            return Err(field("root_datum", "n, q and restriction belong to family descriptors"));
        }
        let n = rd.rank;
        for (name, list) in [("root_datum.roots", &rd.roots), ("root_datum.coroots", &rd.coroots)] {
            if let Some(i) = list.iter().position(|v| v.len() != n) {
                return Err(field(&format!("{name}[{i}]"), format!("expected {n} entries")));
            }
        }
        let pairing = rd.pairing.as_ref().map(|p| matrix("root_datum.pairing", p, n)).transpose()?;
        let root = BasedRootDatum::new(n, rd.roots.clone(), rd.coroots.clone(), rd.simple.clone(), pairing.as_ref()).map_err(|e| field("root_datum", e))?;
        let gs = self.galois.as_ref().ok_or_else(|| field("galois", "missing"))?;
        let inertia = gs
            .inertia
            .iter()
            .enumerate()
            .map(|(i, m)| matrix(&format!("galois.inertia[{i}]"), m, n))
            .collect::<Result<Vec<_>, _>>()?;
        let frobenius = matrix("galois.frobenius", &gs.frobenius, n)?;
        let mut galois = GaloisDescentDatum { group_order: 0, inertia, frobenius, q: gs.q, e: gs.e, f: gs.f };
        for (i, m) in galois.generators().iter().enumerate() {
            if !m.is_unimodular() {
                return Err(field(&format!("galois generator {i}"), "matrix is not invertible over Z"));
            }
        }
        galois.group_order = galois.group_elements().len();
        GroupDatum::new(self.name.clone().unwrap_or_else(|| "G".into()), root, galois).map_err(|e| field("galois", e))
    }
}

pub fn load_path(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    GroupDescriptor::parse(&text)?.load()
}

fn dense(f: &str, rows: &[Vec<String>], n: usize) -> Result<Operator, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(field(f, format!("expected a {n}x{n} matrix")));
    }
    let m = rows
        .iter()
        .map(|r| r.iter().map(|s| Cyclotomic::parse(s).ok_or_else(|| field(f, format!("bad scalar {s:?}")))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(Operator::from_dense(&m))
}

impl RepresentationSpec {
    /// The representation over `g`, with explicit operators replacing the permutation action.
    pub fn build(&self, g: &GroupDatum, index: usize) -> Result<LGroupRep, CliError> {
        let base = LGroupRep::orbit_sum(g, &self.highest_weight).map_err(|e| field(&format!("representation[{index}]"), e))?;
        if self.frobenius.is_none() && self.inertia.is_none() {
            return Ok(base);
        }
        let n = base.dim();
        let frob = match &self.frobenius {
            Some(m) => dense(&format!("representation[{index}].frobenius"), m, n)?,
            None => base.frobenius.clone(),
        };
        let inertia = match &self.inertia {
            Some(list) => {
                if list.len() != base.inertia.len() {
                    return Err(field(&format!("representation[{index}].inertia"), format!("expected {} matrices", base.inertia.len())));
                }
                list.iter()
                    .zip(&base.inertia)
                    .enumerate()
                    .map(|(k, (m, (g, _)))| Ok((g.clone(), dense(&format!("representation[{index}].inertia[{k}]"), m, n)?)))
                    .collect::<Result<Vec<_>, CliError>>()?
            }
            None => base.inertia.clone(),
        };
        LGroupRep::new(base.weights, base.highest_weights, base.frobenius_lattice, frob, inertia).map_err(|e| field(&format!("representation[{index}]"), e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_and_explicit_agree() {
        let a = GroupDescriptor::parse("family = \"GL\"\nn = 2\nq = 5\n").unwrap().load().unwrap();
        let b = GroupDescriptor::parse(
            "[root_datum]\nrank = 2\nroots = [[1, -1], [-1, 1]]\ncoroots = [[1, -1], [-1, 1]]\nsimple = [0]\n[galois]\nfrobenius = [[1, 0], [0, 1]]\nq = 5\n",
        )
        .unwrap()
        .load()
        .unwrap();
        assert_eq!(a.datum.root, b.datum.root);
        assert_eq!(a.datum.galois, b.datum.galois);
    }

    #[test]
    fn strict_fields() {
        let e = GroupDescriptor::parse("family = \"GL\"\nn = 2\nq = 5\nextra = 1\n").unwrap_err();
        assert!(e.to_string().contains("extra"));
        let e = GroupDescriptor::parse("family = \"GL\"\nq = 5\n").unwrap().load().unwrap_err();
        assert!(e.to_string().starts_with("n:"));
    }
}
