//! JSON and CSV encodings of Iwahori-Weyl elements and Hecke algebra elements.

use parahoric_core::hecke::HeckeElement;
use parahoric_core::iwahori::{IwahoriWeylGroup, WeylElement};
use parahoric_core::lattice::IVec;
use parahoric_core::scalar::LaurentZ;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `w = s_{i_1} ... s_{i_k} tau` with `tau` the length-zero element of class `omega_label`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub reduced_word: Vec<usize>,
    pub omega_label: IVec,
}

/// One `c_w T_w` term; `coeffs` lists `[exponent of v, integer]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub reduced_word: Vec<usize>,
    pub omega_label: IVec,
    pub coeffs: Vec<(i32, i64)>,
}

pub fn element_to_json(w: &IwahoriWeylGroup, x: &WeylElement) -> ElementJson {
    let (word, _) = w.reduced_word(x);
    ElementJson { reduced_word: word, omega_label: w.omega_label(x) }
}

pub fn element_from_json(w: &IwahoriWeylGroup, e: &ElementJson) -> Result<WeylElement, CliError> {
    if let Some(&i) = e.reduced_word.iter().find(|&&i| i >= w.node_count()) {
        return Err(CliError::Validation(format!("reduced_word: node {i} out of range (0..{})", w.node_count())));
    }
    let tau = w
        .omega_element(&e.omega_label)
        .ok_or_else(|| CliError::Validation(format!("omega_label: {:?} is not a class of a length-zero element", e.omega_label)))?;
    let x = w.from_word(&e.reduced_word, &tau);
    if w.length(&x) != e.reduced_word.len() {
        return Err(CliError::Validation(format!("reduced_word: {:?} is not reduced", e.reduced_word)));
    }
    Ok(x)
}

pub fn laurent_to_pairs(c: &LaurentZ) -> Vec<(i32, i64)> {
    c.terms().map(|(e, c)| (e, *c)).collect()
}

pub fn laurent_from_pairs(p: &[(i32, i64)]) -> Result<LaurentZ, CliError> {
    if p.windows(2).any(|w| w[0].0 >= w[1].0) || p.iter().any(|(_, c)| *c == 0) {
        return Err(CliError::Validation("coeffs: exponents must increase strictly and coefficients be nonzero".into()));
    }
    Ok(LaurentZ::from_terms(p.iter().copied()))
}

/// Terms in the order of the underlying element map (deterministic).
pub fn hecke_to_json(w: &IwahoriWeylGroup, h: &HeckeElement) -> Vec<TermJson> {
    h.terms
        .iter()
        .map(|(x, c)| {
            let e = element_to_json(w, x);
            TermJson { reduced_word: e.reduced_word, omega_label: e.omega_label, coeffs: laurent_to_pairs(c) }
        })
        .collect()
}

pub fn hecke_from_json(w: &IwahoriWeylGroup, terms: &[TermJson]) -> Result<HeckeElement, CliError> {
    let mut h = HeckeElement::zero();
    for t in terms {
        let x = element_from_json(w, &ElementJson { reduced_word: t.reduced_word.clone(), omega_label: t.omega_label.clone() })?;
        if h.terms.contains_key(&x) {
            return Err(CliError::Validation(format!("duplicate term {:?}", t.reduced_word)));
        }
        h.add_term(x, &laurent_from_pairs(&t.coeffs)?);
    }
    Ok(h)
}

pub fn ints(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn words(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `a v^k + ...` in a compact human-readable form.
pub fn laurent_text(c: &LaurentZ) -> String {
    let parts: Vec<String> = c
        .terms()
        .map(|(e, c)| match e {
            0 => c.to_string(),
            1 => format!("{c}v"),
            _ => format!("{c}v^{e}"),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn write_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for r in rows {
        w.write_record(r).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use parahoric_core::hecke::HeckeAlgebra;
    use parahoric_core::rootdata::library::gl;

    #[test]
    fn hecke_round_trip() {
        let g = gl(2, 5);
        let w = IwahoriWeylGroup::build(&g).unwrap();
        let z = HeckeAlgebra::new(&w).z(&[1, 0]);
        let json = serde_json::to_string(&hecke_to_json(&w, &z.element)).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        let h = hecke_from_json(&w, &back).unwrap();
        assert_eq!(h, z.element);
        assert_eq!(serde_json::to_string(&hecke_to_json(&w, &h)).unwrap(), json);
    }

    #[test]
    fn rejects_non_reduced() {
        let w = IwahoriWeylGroup::build(&gl(2, 5)).unwrap();
        let e = ElementJson { reduced_word: vec![1, 1], omega_label: vec![0] };
        assert!(element_from_json(&w, &e).is_err());
    }
}
