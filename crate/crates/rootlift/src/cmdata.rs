//! Embedding label data (labels, complex conjugation, restriction to the maximal CM subfield)
//! and the GL₁ feasibility criteria built on it.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    TotallyReal,
    Cm,
    GeneralImaginary,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmDiagnostic {
    #[error("label set is empty")]
    NoLabels,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("conj is not an involution at {0:?}")]
    ConjNotInvolution(String),
    #[error("restrict is not surjective: {0:?} has no preimage")]
    RestrictNotSurjective(String),
    #[error("restrict is not conj-equivariant at {0:?}")]
    NotEquivariant(String),
    #[error("cm_conj is not an involution at {0:?}")]
    CmConjNotInvolution(String),
    #[error("totally_real mode requires trivial conjugation, but {0:?} is moved")]
    ConjNotTrivial(String),
    #[error("cm mode requires restrict to be a bijection")]
    RestrictNotBijective,
    #[error("conjugation fixes {0:?}, which is not allowed in this mode")]
    FixedPoint(String),
    #[error("missing value for label {0:?}")]
    MissingValue(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error("invalid embedding data: {0}")]
    Invalid(#[from] CmDiagnostic),
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("modulus must be positive")]
    BadModulus,
    #[error("m(conj {label}) must equal -m({label}) mod {n}")]
    ConjugationSign { label: String, n: i64 },
}

/// Labels are indexed 0..labels.len(); maps are stored by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMEmbeddingData {
    pub labels: Vec<String>,
    pub conj: Vec<usize>,
    pub cm_labels: Vec<String>,
    pub restrict: Vec<usize>,
    pub cm_conj: Vec<usize>,
    pub mode: Mode,
    /// Marks the Grunwald–Wang special case; only annotates reports.
    pub grunwald_wang: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CmJson {
    pub labels: Vec<String>,
    pub conj: BTreeMap<String, String>,
    pub cm_labels: Vec<String>,
    pub restrict: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm_conj: Option<BTreeMap<String, String>>,
    pub mode: Mode,
    #[serde(default)]
    pub grunwald_wang: bool,
}

fn index_of(names: &[String]) -> Result<HashMap<&str, usize>, CmDiagnostic> {
    let mut idx = HashMap::new();
    for (i, l) in names.iter().enumerate() {
        if idx.insert(l.as_str(), i).is_some() {
            return Err(CmDiagnostic::DuplicateLabel(l.clone()));
        }
    }
    Ok(idx)
}

impl TryFrom<CmJson> for CMEmbeddingData {
    type Error = CmDiagnostic;
    fn try_from(j: CmJson) -> Result<Self, CmDiagnostic> {
        let li = index_of(&j.labels)?;
        let ci = index_of(&j.cm_labels)?;
        let look = |m: &BTreeMap<String, String>, key: &str, target: &HashMap<&str, usize>| {
            let v = m.get(key).ok_or_else(|| CmDiagnostic::MissingValue(key.to_string()))?;
            target.get(v.as_str()).copied().ok_or_else(|| CmDiagnostic::UnknownLabel(v.clone()))
        };
        let conj = j.labels.iter().map(|l| look(&j.conj, l, &li)).collect::<Result<Vec<_>, _>>()?;
        let restrict = j.labels.iter().map(|l| look(&j.restrict, l, &ci)).collect::<Result<Vec<_>, _>>()?;
        let cm_conj = match &j.cm_conj {
            Some(m) => j.cm_labels.iter().map(|l| look(m, l, &ci)).collect::<Result<Vec<_>, _>>()?,
            None => derive_cm_conj(&conj, &restrict, j.cm_labels.len(), &j.cm_labels)?,
        };
        let d = CMEmbeddingData {
            labels: j.labels,
            conj,
            cm_labels: j.cm_labels,
            restrict,
            cm_conj,
            mode: j.mode,
            grunwald_wang: j.grunwald_wang,
        };
        d.validate_cm()?;
        Ok(d)
    }
}

impl From<&CMEmbeddingData> for CmJson {
    fn from(d: &CMEmbeddingData) -> Self {
        CmJson {
            labels: d.labels.clone(),
            conj: d.labels.iter().zip(&d.conj).map(|(l, &c)| (l.clone(), d.labels[c].clone())).collect(),
            cm_labels: d.cm_labels.clone(),
            restrict: d.labels.iter().zip(&d.restrict).map(|(l, &c)| (l.clone(), d.cm_labels[c].clone())).collect(),
            cm_conj: Some(
                d.cm_labels.iter().zip(&d.cm_conj).map(|(l, &c)| (l.clone(), d.cm_labels[c].clone())).collect(),
            ),
            mode: d.mode,
            grunwald_wang: d.grunwald_wang,
        }
    }
}

fn derive_cm_conj(
    conj: &[usize],
    restrict: &[usize],
    n_cm: usize,
    cm_names: &[String],
) -> Result<Vec<usize>, CmDiagnostic> {
    let mut out: Vec<Option<usize>> = vec![None; n_cm];
    for (t, &c) in conj.iter().enumerate() {
        let (Some(&a), Some(&b)) = (restrict.get(t), restrict.get(c)) else { continue };
        match out[a] {
            Some(x) if x != b => return Err(CmDiagnostic::NotEquivariant(cm_names[a].clone())),
            _ => out[a] = Some(b),
        }
    }
    out.iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| CmDiagnostic::RestrictNotSurjective(cm_names[i].clone())))
        .collect()
}

impl CMEmbeddingData {
    /// Totally real field of degree `degree`; F_cm = ℚ.
    pub fn totally_real(degree: usize) -> Self {
        CMEmbeddingData {
            labels: (0..degree).map(|i| format!("t{i}")).collect(),
            conj: (0..degree).collect(),
            cm_labels: vec!["q".into()],
            restrict: vec![0; degree],
            cm_conj: vec![0],
            mode: Mode::TotallyReal,
            grunwald_wang: false,
        }
    }

    /// CM field with `pairs` pairs of conjugate embeddings, labelled s_i and s_i.c.
    pub fn cm(pairs: usize) -> Self {
        let labels: Vec<String> =
            (0..pairs).flat_map(|i| [format!("s{i}"), format!("s{i}.c")]).collect();
        let conj: Vec<usize> = (0..2 * pairs).map(|i| i ^ 1).collect();
        CMEmbeddingData {
            cm_labels: labels.clone(),
            labels,
            conj: conj.clone(),
            restrict: (0..2 * pairs).collect(),
            cm_conj: conj,
            mode: Mode::Cm,
            grunwald_wang: false,
        }
    }

    /// Totally imaginary F over a CM field with `cm_pairs` conjugate pairs, each CM embedding
    /// having `fiber` extensions to F.
    pub fn general_imaginary(cm_pairs: usize, fiber: usize) -> Self {
        let cm = Self::cm(cm_pairs);
        let mut labels = vec![];
        let mut restrict = vec![];
        for (s, name) in cm.cm_labels.iter().enumerate() {
            for f in 0..fiber {
                labels.push(format!("{name}/{f}"));
                restrict.push(s);
            }
        }
        // conj sends the f-th extension of s to the f-th extension of c(s)
        let conj = (0..labels.len())
            .map(|i| {
                let (s, f) = (i / fiber, i % fiber);
                cm.cm_conj[s] * fiber + f
            })
            .collect();
        CMEmbeddingData {
            labels,
            conj,
            cm_labels: cm.cm_labels,
            restrict,
            cm_conj: cm.cm_conj,
            mode: Mode::GeneralImaginary,
            grunwald_wang: false,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn is_complex(&self, t: usize) -> bool {
        self.conj[t] != t
    }

    pub fn is_imaginary(&self) -> bool {
        self.mode != Mode::TotallyReal
    }

    pub fn validate_cm(&self) -> Result<(), CmDiagnostic> {
        let n = self.labels.len();
        if n == 0 {
            return Err(CmDiagnostic::NoLabels);
        }
        index_of(&self.labels)?;
        index_of(&self.cm_labels)?;
        let k = self.cm_labels.len();
        if self.conj.len() != n || self.restrict.len() != n {
            return Err(CmDiagnostic::MissingValue(self.labels[0].clone()));
        }
        if self.cm_conj.len() != k {
            return Err(CmDiagnostic::MissingValue(self.cm_labels.first().cloned().unwrap_or_default()));
        }
        for t in 0..n {
            if self.conj[t] >= n || self.restrict[t] >= k {
                return Err(CmDiagnostic::UnknownLabel(self.labels[t].clone()));
            }
        }
        for t in 0..n {
            if self.conj[self.conj[t]] != t {
                return Err(CmDiagnostic::ConjNotInvolution(self.labels[t].clone()));
            }
        }
        let mut hit = vec![false; k];
        for &r in &self.restrict {
            hit[r] = true;
        }
        if let Some(i) = hit.iter().position(|h| !h) {
            return Err(CmDiagnostic::RestrictNotSurjective(self.cm_labels[i].clone()));
        }
        for s in 0..k {
            if self.cm_conj[s] >= k {
                return Err(CmDiagnostic::UnknownLabel(self.cm_labels[s].clone()));
            }
            if self.cm_conj[self.cm_conj[s]] != s {
                return Err(CmDiagnostic::CmConjNotInvolution(self.cm_labels[s].clone()));
            }
        }
        for t in 0..n {
            if self.restrict[self.conj[t]] != self.cm_conj[self.restrict[t]] {
                return Err(CmDiagnostic::NotEquivariant(self.labels[t].clone()));
            }
        }
        match self.mode {
            Mode::TotallyReal => {
                if let Some(t) = (0..n).find(|&t| self.conj[t] != t) {
                    return Err(CmDiagnostic::ConjNotTrivial(self.labels[t].clone()));
                }
                if let Some(s) = (0..k).find(|&s| self.cm_conj[s] != s) {
                    return Err(CmDiagnostic::ConjNotTrivial(self.cm_labels[s].clone()));
                }
            }
            Mode::Cm => {
                if n != k {
                    return Err(CmDiagnostic::RestrictNotBijective);
                }
                if let Some(s) = (0..k).find(|&s| self.cm_conj[s] == s) {
                    return Err(CmDiagnostic::FixedPoint(self.cm_labels[s].clone()));
                }
            }
            Mode::GeneralImaginary => {
                if let Some(t) = (0..n).find(|&t| self.conj[t] == t) {
                    return Err(CmDiagnostic::FixedPoint(self.labels[t].clone()));
                }
            }
        }
        Ok(())
    }

    /// Reads a label-keyed map into a vector ordered like `labels`.
    pub fn values_from_map<T: Clone>(&self, m: &BTreeMap<String, T>) -> Result<Vec<T>, CmDiagnostic> {
        if let Some(k) = m.keys().find(|k| self.label_index(k).is_none()) {
            return Err(CmDiagnostic::UnknownLabel(k.clone()));
        }
        self.labels
            .iter()
            .map(|l| m.get(l).cloned().ok_or_else(|| CmDiagnostic::MissingValue(l.clone())))
            .collect()
    }

    /// Relabels through a permutation of labels and one of cm_labels (new index of old i is p[i]).
    pub fn relabel(&self, p: &[usize], q: &[usize]) -> CMEmbeddingData {
        let n = self.labels.len();
        let k = self.cm_labels.len();
        let mut labels = vec![String::new(); n];
        let mut conj = vec![0; n];
        let mut restrict = vec![0; n];
        for t in 0..n {
            labels[p[t]] = self.labels[t].clone();
            conj[p[t]] = p[self.conj[t]];
            restrict[p[t]] = q[self.restrict[t]];
        }
        let mut cm_labels = vec![String::new(); k];
        let mut cm_conj = vec![0; k];
        for s in 0..k {
            cm_labels[q[s]] = self.cm_labels[s].clone();
            cm_conj[q[s]] = q[self.cm_conj[s]];
        }
        CMEmbeddingData { labels, conj, cm_labels, restrict, cm_conj, mode: self.mode, grunwald_wang: self.grunwald_wang }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeFeasibility {
    pub type_a: bool,
    pub finite_order: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn check_modulus(n: i64) -> Result<(), CmError> {
    if n <= 0 {
        Err(CmError::BadModulus)
    } else {
        Ok(())
    }
}

/// Type A and finite-order extension criteria for a character of μ_n(F_∞) with exponents m.
///
/// Real labels impose nothing; at complex labels m must satisfy m(conj τ) ≡ −m(τ).
pub fn hecke_extension_feasible(data: &CMEmbeddingData, n: i64, m: &[i64]) -> Result<HeckeFeasibility, CmError> {
    data.validate_cm()?;
    check_modulus(n)?;
    if m.len() != data.len() {
        return Err(CmError::Length { expected: data.len(), got: m.len() });
    }
    let r: Vec<i64> = m.iter().map(|x| x.rem_euclid(n)).collect();
    for t in 0..data.len() {
        if data.is_complex(t) && (r[t] + r[data.conj[t]]) % n != 0 {
            return Err(CmError::ConjugationSign { label: data.labels[t].clone(), n });
        }
    }
    let mut seen: HashMap<usize, i64> = HashMap::new();
    let mut type_a = true;
    for t in (0..data.len()).filter(|&t| data.is_complex(t)) {
        let v = *seen.entry(data.restrict[t]).or_insert(r[t]);
        if v != r[t] {
            type_a = false;
        }
    }
    let finite_order = (0..data.len()).filter(|&t| data.is_complex(t)).all(|t| r[t] == 0);
    let note = data
        .grunwald_wang
        .then(|| "Grunwald-Wang special case flagged: existence holds only after the usual correction at 2".into());
    Ok(HeckeFeasibility { type_a, finite_order, note })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisCharWitness {
    /// Purity weight class w mod n.
    #[serde(with = "crate::serde_util::big")]
    pub w: BigInt,
    /// Integer lift w̃ of w with x_{τ₀} + x_{τ₀∘c} = w̃/n exactly.
    #[serde(with = "crate::serde_util::big")]
    pub w_lift: BigInt,
    /// Weight x_τ ∈ ℚ per label, with n·x_τ ≡ k_τ mod n.
    #[serde(with = "crate::serde_util::rat_vec")]
    pub witness: Vec<BigRational>,
}

/// Decides whether HT weights ≡ k_τ/n mod ℤ are realized by an algebraic Galois character, and
/// builds weights x_τ from a maximal set of CM labels modulo conjugation.
pub fn galois_char_feasible(data: &CMEmbeddingData, n: i64, k: &[i64]) -> Result<Option<GaloisCharWitness>, CmError> {
    data.validate_cm()?;
    check_modulus(n)?;
    if k.len() != data.len() {
        return Err(CmError::Length { expected: data.len(), got: k.len() });
    }
    let nb = BigInt::from(n);
    let r: Vec<i64> = k.iter().map(|x| x.rem_euclid(n)).collect();
    let frac = |x: i64| BigRational::new(BigInt::from(x), nb.clone());

    if data.mode == Mode::TotallyReal {
        if r.iter().any(|&x| x != r[0]) {
            return Ok(None);
        }
        let w = (2 * r[0]).rem_euclid(n);
        return Ok(Some(GaloisCharWitness {
            w: BigInt::from(w),
            w_lift: BigInt::from(2 * r[0]),
            witness: vec![frac(r[0]); data.len()],
        }));
    }

    // (i) factor through restrict
    let kc_len = data.cm_labels.len();
    let mut kc: Vec<Option<i64>> = vec![None; kc_len];
    for t in 0..data.len() {
        let s = data.restrict[t];
        match kc[s] {
            Some(v) if v != r[t] => return Ok(None),
            _ => kc[s] = Some(r[t]),
        }
    }
    let kc: Vec<i64> = kc.into_iter().map(|x| x.expect("restrict is surjective")).collect();
    // (ii) one purity class w
    let sums: Vec<i64> = (0..kc_len).map(|s| (kc[s] + kc[data.cm_conj[s]]).rem_euclid(n)).collect();
    if sums.iter().any(|&x| x != sums[0]) {
        return Ok(None);
    }
    let w = sums[0];
    // fixed CM labels force x = w̃/2n, so their classes must agree
    let fixed: Vec<usize> = (0..kc_len).filter(|&s| data.cm_conj[s] == s).collect();
    if fixed.iter().any(|&s| kc[s] != kc[fixed[0]]) {
        return Ok(None);
    }
    let w_lift = match fixed.first() {
        Some(&s) => 2 * kc[s],
        None => w,
    };
    let mut x: Vec<Option<BigRational>> = vec![None; kc_len];
    for s in 0..kc_len {
        if x[s].is_some() {
            continue;
        }
        let c = data.cm_conj[s];
        x[s] = Some(frac(kc[s]));
        if c != s {
            x[c] = Some(frac(w_lift - kc[s]));
        }
    }
    let witness = (0..data.len()).map(|t| x[data.restrict[t]].clone().unwrap()).collect();
    Ok(Some(GaloisCharWitness { w: BigInt::from(w), w_lift: BigInt::from(w_lift), witness }))
}

/// Independent re-check of a witness against both criteria.
pub fn verify_galois_witness(data: &CMEmbeddingData, n: i64, k: &[i64], wit: &GaloisCharWitness) -> bool {
    let nb = BigInt::from(n);
    if wit.witness.len() != data.len() || n <= 0 {
        return false;
    }
    for (x, &kt) in wit.witness.iter().zip(k) {
        let diff = x - BigRational::new(BigInt::from(kt), nb.clone());
        if !diff.is_integer() {
            return false;
        }
    }
    if !(&wit.w_lift - &wit.w).is_multiple_of(&nb) {
        return false;
    }
    let total = BigRational::new(wit.w_lift.clone(), nb.clone());
    for t in 0..data.len() {
        for u in 0..data.len() {
            if data.restrict[t] == data.restrict[u] && wit.witness[t] != wit.witness[u] {
                return false;
            }
        }
        if data.mode == Mode::TotallyReal {
            if wit.witness[t] != wit.witness[0] {
                return false;
            }
            continue;
        }
        // τ ∘ c over F_cm: any label over cm_conj(restrict τ)
        let partner = (0..data.len()).find(|&u| data.restrict[u] == data.cm_conj[data.restrict[t]]).unwrap();
        if &wit.witness[t] + &wit.witness[partner] != total {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(CMEmbeddingData::totally_real(3).validate_cm().is_ok());
        assert!(CMEmbeddingData::cm(2).validate_cm().is_ok());
        assert!(CMEmbeddingData::general_imaginary(1, 2).validate_cm().is_ok());
        let mut bad = CMEmbeddingData::general_imaginary(1, 2);
        bad.restrict[0] = 1;
        assert!(matches!(bad.validate_cm(), Err(CmDiagnostic::NotEquivariant(_)) | Err(CmDiagnostic::RestrictNotSurjective(_))));
        let mut bad = CMEmbeddingData::cm(2);
        bad.restrict = vec![0, 1, 1, 0];
        assert!(bad.validate_cm().is_err());
    }

    #[test]
    fn json_roundtrip() {
        let s = r#"{"labels":["a","b"],"conj":{"a":"b","b":"a"},"cm_labels":["x","y"],
                    "restrict":{"a":"x","b":"y"},"mode":"cm"}"#;
        let j: CmJson = serde_json::from_str(s).unwrap();
        let d = CMEmbeddingData::try_from(j).unwrap();
        assert_eq!(d.cm_conj, vec![1, 0]);
        let back = CMEmbeddingData::try_from(CmJson::from(&d)).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn hecke_examples() {
        let d = CMEmbeddingData::cm(2);
        let h = hecke_extension_feasible(&d, 5, &[1, 4, 2, 3]).unwrap();
        assert!(h.type_a && !h.finite_order);
        let g = CMEmbeddingData::general_imaginary(1, 2);
        // labels: s0/0, s0/1, s0.c/0, s0.c/1
        let h = hecke_extension_feasible(&g, 5, &[1, 2, 4, 3]).unwrap();
        assert!(!h.type_a);
        let h = hecke_extension_feasible(&g, 5, &[0, 0, 0, 0]).unwrap();
        assert!(h.type_a && h.finite_order);
        assert!(hecke_extension_feasible(&g, 5, &[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn galois_examples() {
        let d = CMEmbeddingData::cm(2);
        let w = galois_char_feasible(&d, 2, &[1, 0, 1, 0]).unwrap().unwrap();
        assert_eq!(w.w, BigInt::from(1));
        assert!(verify_galois_witness(&d, 2, &[1, 0, 1, 0], &w));
        assert!(galois_char_feasible(&d, 2, &[1, 0, 0, 0]).unwrap().is_none());
        let tr = CMEmbeddingData::totally_real(3);
        let w = galois_char_feasible(&tr, 4, &[3, 7, -1]).unwrap().unwrap();
        assert_eq!(w.w, BigInt::from(2));
        assert!(galois_char_feasible(&tr, 4, &[3, 1, 3]).unwrap().is_none());
    }

    #[test]
    fn relabel_invariance() {
        let g = CMEmbeddingData::general_imaginary(2, 2);
        let p = [3, 0, 5, 1, 7, 2, 6, 4];
        let q = [2, 3, 0, 1];
        let h = g.relabel(&p, &q);
        assert!(h.validate_cm().is_ok());
        let k = [1, 1, 2, 2, 3, 3, 0, 0];
        let mut kp = [0; 8];
        for t in 0..8 {
            kp[p[t]] = k[t];
        }
        assert_eq!(
            galois_char_feasible(&g, 4, &k).unwrap().is_some(),
            galois_char_feasible(&h, 4, &kp).unwrap().is_some()
        );
    }
}
