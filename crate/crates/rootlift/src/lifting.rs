//! Obstruction classes for lifting through central torus quotients, lift decisions over totally
//! real and imaginary label data, archimedean parameter lifting and the simple-type table.
//!
//! Hodge data μ_τ are integral weights in X•(T) = X_•(T∨); the Sen-side normalisation is taken as
//! given.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{self, FinAbGroup};
use crate::cmdata::{galois_char_feasible, CMEmbeddingData, CmDiagnostic, CmError, CmJson, Mode};
use crate::rootdata::{
    minimal_torus_extension, simple_type, BasedRootDatum, CentralQuotientData, Family, Isogeny, RootDataError,
};
use crate::serde_util;

#[derive(Debug, Error)]
pub enum LiftError {
    #[error("weight for label {label:?} has length {got}, expected {expected}")]
    Dimension { label: String, expected: usize, got: usize },
    #[error("mode mismatch: requested {requested:?} but the label data is {data:?}")]
    ModeMismatch { requested: LiftMode, data: Mode },
    #[error("tempered parameters need mu = -nu, violated at label {0:?}")]
    NotTempered(String),
    #[error("mu - nu is not integral at label {0:?}")]
    NonIntegralDifference(String),
    #[error(transparent)]
    Root(#[from] RootDataError),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error(transparent)]
    Labels(#[from] CmDiagnostic),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMode {
    TotallyReal,
    Imaginary,
}

/// τ ↦ μ_τ ∈ X•(T), indexed like `data.labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeFamily {
    pub data: CMEmbeddingData,
    pub mu: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HodgeJson {
    pub data: CmJson,
    #[serde(with = "mu_map")]
    pub mu: BTreeMap<String, Vec<BigInt>>,
}

mod mu_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "serde_util::big_vec")] Vec<BigInt>);

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(k, v)| (k.clone(), W(v.clone()))).collect::<BTreeMap<_, _>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Vec<BigInt>>, D::Error> {
        Ok(BTreeMap::<String, W>::deserialize(d)?.into_iter().map(|(k, v)| (k, v.0)).collect())
    }
}

impl TryFrom<HodgeJson> for HodgeFamily {
    type Error = LiftError;
    fn try_from(j: HodgeJson) -> Result<Self, LiftError> {
        let data = CMEmbeddingData::try_from(j.data)?;
        let mu = data.values_from_map(&j.mu)?;
        Ok(HodgeFamily { data, mu })
    }
}

impl HodgeFamily {
    pub fn from_i64(data: CMEmbeddingData, mu: &[Vec<i64>]) -> Self {
        HodgeFamily { data, mu: mu.iter().map(|v| abelian::big(v)).collect() }
    }
}

/// θ_τ = (k_{τ,i} mod d_i)_i for every label.
pub fn obstruction_classes(cqd: &CentralQuotientData, h: &HodgeFamily) -> Result<Vec<Vec<BigInt>>, LiftError> {
    h.mu.iter()
        .enumerate()
        .map(|(t, mu)| {
            if mu.len() != cqd.datum.rank {
                return Err(LiftError::Dimension {
                    label: h.data.labels[t].clone(),
                    expected: cqd.datum.rank,
                    got: mu.len(),
                });
            }
            Ok(cqd.center_class(mu)?)
        })
        .collect()
}

/// Class of (μ, Σ_i s_i d_i w_i) in X•(Z_G)_tor; `None` if the central part is not integral.
pub fn twisted_class(cqd: &CentralQuotientData, mu: &[BigInt], s: &[BigRational]) -> Result<Option<Vec<BigInt>>, LiftError> {
    let theta = cqd.center_class(mu)?;
    let mut out = vec![];
    for ((k, d), si) in theta.iter().zip(&cqd.d).zip(s) {
        let scaled = si * BigRational::from_integer(d.clone());
        if !scaled.is_integer() {
            return Ok(None);
        }
        out.push((k - scaled.to_integer()).mod_floor(d));
    }
    Ok(Some(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    LiftExists,
    Obstructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub tau: String,
    pub tau_prime: String,
    pub coordinate: usize,
    pub reason: String,
}

/// Central twist weights s_{τ,i} (HT weights of the ψ_i), one row per label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistWitness {
    pub weights: Vec<LabelledRationals>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelledRationals {
    pub label: String,
    #[serde(with = "serde_util::rat_vec")]
    pub values: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelClass {
    pub label: String,
    #[serde(with = "serde_util::big_vec")]
    pub theta: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub mode: LiftMode,
    #[serde(with = "serde_util::big_vec")]
    pub moduli: Vec<BigInt>,
    /// Coordinates that enter the decision.
    pub considered: Vec<usize>,
    pub classes: Vec<LabelClass>,
    pub decision: Decision,
    pub witness: Option<TwistWitness>,
    pub certificate: Option<Certificate>,
    /// w_i per coordinate where a common purity weight exists.
    pub purity_weights: Vec<Option<String>>,
    pub notes: Vec<String>,
}

impl ObstructionReport {
    pub fn lift_exists(&self) -> bool {
        self.decision == Decision::LiftExists
    }
}

pub fn geometric_lift_exists(cqd: &CentralQuotientData, h: &HodgeFamily, mode: LiftMode) -> Result<ObstructionReport, LiftError> {
    h.data.validate_cm()?;
    match (mode, h.data.mode) {
        (LiftMode::TotallyReal, Mode::TotallyReal) => {}
        (LiftMode::Imaginary, Mode::Cm | Mode::GeneralImaginary) => {}
        (requested, data) => return Err(LiftError::ModeMismatch { requested, data }),
    }
    let theta = obstruction_classes(cqd, h)?;
    let labels = &h.data.labels;
    let n = labels.len();
    let r = cqd.r();
    let classes = labels.iter().zip(&theta).map(|(l, t)| LabelClass { label: l.clone(), theta: t.clone() }).collect();
    let coord = |i: usize| -> Vec<i64> { theta.iter().map(|t| t[i].to_i64_checked()).collect() };
    let mut notes = vec![];
    let mut purity_weights = vec![None; r];
    let mut certificate = None;
    let mut weights: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); r]; n];

    let considered: Vec<usize> = match mode {
        LiftMode::TotallyReal => (0..r).filter(|&i| cqd.d[i].is_even()).collect(),
        LiftMode::Imaginary => (0..r).collect(),
    };

    match mode {
        LiftMode::TotallyReal => {
            for i in 0..r {
                let d = &cqd.d[i];
                let k = coord(i);
                let twice: Vec<BigInt> = theta.iter().map(|t| (&t[i] * BigInt::from(2)).mod_floor(d)).collect();
                if twice.iter().all(|x| *x == twice[0]) {
                    purity_weights[i] = Some(twice[0].to_string());
                }
                let constant = k.iter().all(|&x| x == k[0]);
                if !constant && certificate.is_none() && considered.contains(&i) {
                    let j = k.iter().position(|&x| x != k[0]).unwrap();
                    certificate = Some(Certificate {
                        tau: labels[0].clone(),
                        tau_prime: labels[j].clone(),
                        coordinate: i,
                        reason: format!("theta differs: {} vs {} mod {d}", k[0], k[j]),
                    });
                }
                if !constant && !considered.contains(&i) {
                    notes.push(format!(
                        "coordinate {i} has odd modulus {d} and varies with the label; ignored, which presumes Hodge symmetry"
                    ));
                }
                for t in 0..n {
                    weights[t][i] = BigRational::new(BigInt::from(k[t]), d.clone());
                }
            }
        }
        LiftMode::Imaginary => {
            notes.push("Hodge symmetry of the input is assumed, not verified".into());
            for i in 0..r {
                let d = cqd.d[i].to_i64_checked();
                let k = coord(i);
                match galois_char_feasible(&h.data, d, &k)? {
                    Some(wit) => {
                        purity_weights[i] = Some(wit.w.to_string());
                        for t in 0..n {
                            weights[t][i] = wit.witness[t].clone();
                        }
                    }
                    None => {
                        if certificate.is_none() {
                            certificate = Some(imaginary_certificate(&h.data, d, &k, i));
                        }
                    }
                }
            }
            if h.data.grunwald_wang {
                notes.push("Grunwald-Wang special case flagged on the label data".into());
            }
        }
    }

    let decision = if certificate.is_none() { Decision::LiftExists } else { Decision::Obstructed };
    let witness = (decision == Decision::LiftExists).then(|| TwistWitness {
        weights: labels
            .iter()
            .zip(weights)
            .map(|(l, values)| LabelledRationals { label: l.clone(), values })
            .collect(),
    });
    Ok(ObstructionReport {
        mode,
        moduli: cqd.d.clone(),
        considered,
        classes,
        decision,
        witness,
        certificate,
        purity_weights,
        notes,
    })
}

trait ToI64Checked {
    fn to_i64_checked(&self) -> i64;
}

impl ToI64Checked for BigInt {
    fn to_i64_checked(&self) -> i64 {
        i64::try_from(self).expect("center classes and moduli are small")
    }
}

fn imaginary_certificate(data: &CMEmbeddingData, d: i64, k: &[i64], i: usize) -> Certificate {
    let n = data.len();
    let r: Vec<i64> = k.iter().map(|x| x.rem_euclid(d)).collect();
    for t in 0..n {
        for u in t + 1..n {
            if data.restrict[t] == data.restrict[u] && r[t] != r[u] {
                return Certificate {
                    tau: data.labels[t].clone(),
                    tau_prime: data.labels[u].clone(),
                    coordinate: i,
                    reason: format!("same CM restriction but theta {} vs {} mod {d}", r[t], r[u]),
                };
            }
        }
    }
    let over = |s: usize| (0..n).find(|&t| data.restrict[t] == s).unwrap();
    let k_cm = |s: usize| r[over(s)];
    let m = data.cm_labels.len();
    let sum = |s: usize| (k_cm(s) + k_cm(data.cm_conj[s])).rem_euclid(d);
    for s in 1..m {
        if sum(s) != sum(0) {
            return Certificate {
                tau: data.labels[over(0)].clone(),
                tau_prime: data.labels[over(s)].clone(),
                coordinate: i,
                reason: format!("no common purity weight: {} vs {} mod {d}", sum(0), sum(s)),
            };
        }
    }
    let fixed: Vec<usize> = (0..m).filter(|&s| data.cm_conj[s] == s).collect();
    let s2 = fixed.iter().copied().find(|&s| k_cm(s) != k_cm(fixed[0])).unwrap_or(fixed[0]);
    Certificate {
        tau: data.labels[over(fixed[0])].clone(),
        tau_prime: data.labels[over(s2)].clone(),
        coordinate: i,
        reason: "conjugation-fixed CM labels carry different classes".into(),
    }
}

/// Classes of the twisted family (μ_τ, Σ_i s_{τ,i} d_i w_i); all zero for a sound witness.
pub fn witness_classes(cqd: &CentralQuotientData, h: &HodgeFamily, w: &TwistWitness) -> Result<Vec<Option<Vec<BigInt>>>, LiftError> {
    h.mu.iter().zip(&w.weights).map(|(mu, s)| twisted_class(cqd, mu, &s.values)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleTypeRow {
    pub name: String,
    pub family: Family,
    pub rank: usize,
    #[serde(with = "serde_util::big_vec")]
    pub d: Vec<BigInt>,
    pub center: String,
    pub two_torsion: String,
    pub obstruction_possible: bool,
    pub note: String,
}

/// Simply connected simple types up to `max_rank`, each with its minimal central torus extension.
pub fn classify_simple_types(max_rank: usize) -> Result<Vec<SimpleTypeRow>, LiftError> {
    let mut types = vec![];
    for n in 1..=max_rank {
        types.push((Family::A, n));
    }
    for n in 2..=max_rank {
        types.push((Family::B, n));
    }
    for n in 2..=max_rank {
        types.push((Family::C, n));
    }
    for n in 4..=max_rank {
        types.push((Family::D, n));
    }
    for n in 6..=max_rank.min(8) {
        types.push((Family::E, n));
    }
    if max_rank >= 4 {
        types.push((Family::F, 4));
    }
    if max_rank >= 2 {
        types.push((Family::G, 2));
    }
    let mut rows = vec![];
    for (family, rank) in types {
        let rd = simple_type(family, rank, Isogeny::SimplyConnected)?;
        let cqd = minimal_torus_extension(&rd)?;
        let group = FinAbGroup::from_orders(&cqd.d, 0);
        let two = group.two_torsion();
        let obstruction_possible = !two.is_trivial();
        let note = match (obstruction_possible, family) {
            (false, _) => "always lifts".to_string(),
            (true, Family::B | Family::C | Family::E) => "automorphic counterexamples exist".to_string(),
            (true, Family::D) if rank % 2 == 0 => "automorphic counterexamples exist".to_string(),
            (true, Family::D) => {
                "2-torsion present; the discrete series construction does not apply (not treated)".to_string()
            }
            (true, Family::A) if rank == 1 => "2-torsion present; A1 coincides with C1".to_string(),
            (true, _) => {
                "2-torsion present; not covered by the discrete series construction (not treated)".to_string()
            }
        };
        rows.push(SimpleTypeRow {
            name: format!("{family}{rank}"),
            family,
            rank,
            d: cqd.d.clone(),
            center: group.to_string(),
            two_torsion: two.to_string(),
            obstruction_possible,
            note,
        });
    }
    Ok(rows)
}

/// μ_v, ν_v ∈ X•(T) ⊗ ℚ with μ − ν integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterPair {
    #[serde(with = "serde_util::rat_vec")]
    pub mu: Vec<BigRational>,
    #[serde(with = "serde_util::rat_vec")]
    pub nu: Vec<BigRational>,
}

impl ParameterPair {
    pub fn new(mu: Vec<BigRational>, nu: Vec<BigRational>) -> Self {
        ParameterPair { mu, nu }
    }

    pub fn from_halves(mu2: &[i64], nu2: &[i64]) -> Self {
        let h = |v: &[i64]| v.iter().map(|&x| BigRational::new(x.into(), 2.into())).collect();
        ParameterPair { mu: h(mu2), nu: h(nu2) }
    }

    pub fn difference_integral(&self) -> bool {
        self.mu.iter().zip(&self.nu).all(|(a, b)| (a - b).is_integer())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AlgebraicityClasses {
    pub l: bool,
    pub c: bool,
    pub w: bool,
}

impl fmt::Display for AlgebraicityClasses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        if self.l {
            parts.push("L");
        }
        if self.c {
            parts.push("C");
        }
        if self.w {
            parts.push("W");
        }
        if parts.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

fn all_integral(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[BigRational], k: i64) -> Vec<BigRational> {
    a.iter().map(|x| x * BigRational::from_integer(k.into())).collect()
}

/// L: μ, ν ∈ X; C: μ, ν ∈ ρ̂ + X; W: 2μ, 2ν ∈ X.
pub fn algebraicity_class(rd: &BasedRootDatum, p: &ParameterPair) -> AlgebraicityClasses {
    let rho = rd.half_sum_positive_roots();
    AlgebraicityClasses {
        l: all_integral(&p.mu) && all_integral(&p.nu),
        c: all_integral(&sub(&p.mu, &rho)) && all_integral(&sub(&p.nu, &rho)),
        w: all_integral(&scale(&p.mu, 2)) && all_integral(&scale(&p.nu, 2)),
    }
}

/// Same predicates for (χ, z) pairs on T̃, with ρ̂ of G̃ equal to (ρ̂, 0).
fn lifted_class(cqd: &CentralQuotientData, mu: &(Vec<BigRational>, Vec<BigRational>), nu: &(Vec<BigRational>, Vec<BigRational>)) -> AlgebraicityClasses {
    let rho = cqd.datum.half_sum_positive_roots();
    let inl = |x: &(Vec<BigRational>, Vec<BigRational>)| cqd.in_t_tilde(&x.0, &x.1);
    let shifted = |x: &(Vec<BigRational>, Vec<BigRational>)| (sub(&x.0, &rho), x.1.clone());
    let doubled = |x: &(Vec<BigRational>, Vec<BigRational>)| (scale(&x.0, 2), scale(&x.1, 2));
    AlgebraicityClasses {
        l: inl(mu) && inl(nu),
        c: inl(&shifted(mu)) && inl(&shifted(nu)),
        w: inl(&doubled(mu)) && inl(&doubled(nu)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    #[serde(alias = "cm-typeA", alias = "cm_type_a")]
    CmTypeA,
    #[serde(alias = "finite-order")]
    FiniteOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedWeight {
    #[serde(with = "serde_util::rat_vec")]
    pub chi: Vec<BigRational>,
    #[serde(with = "serde_util::rat_vec")]
    pub z: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedParameter {
    pub label: String,
    pub mu_tilde: LiftedWeight,
    pub nu_tilde: LiftedWeight,
    pub input_classes: AlgebraicityClasses,
    pub lifted_classes: AlgebraicityClasses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamLiftReport {
    pub recipe: Recipe,
    pub tempered: bool,
    pub entries: Vec<LiftedParameter>,
    /// Whether some L-algebraic lift exists; `None` when the inputs are not L-algebraic.
    pub l_lift_exists: Option<bool>,
    /// Whether every image of μ_v in X•(Z_G) is 2-torsion (finite-order recipe).
    pub images_in_two_torsion: Option<bool>,
    pub notes: Vec<String>,
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

pub fn lift_archimedean_parameter(
    cqd: &CentralQuotientData,
    params: &[(String, ParameterPair)],
    recipe: Recipe,
    tempered: bool,
) -> Result<ParamLiftReport, LiftError> {
    let n = cqd.datum.rank;
    for (label, p) in params {
        for v in [&p.mu, &p.nu] {
            if v.len() != n {
                return Err(LiftError::Dimension { label: label.clone(), expected: n, got: v.len() });
            }
        }
        if !p.difference_integral() {
            return Err(LiftError::NonIntegralDifference(label.clone()));
        }
        if tempered && p.mu.iter().zip(&p.nu).any(|(a, b)| !(a + b).is_zero()) {
            return Err(LiftError::NotTempered(label.clone()));
        }
    }
    let zero_z = vec![BigRational::zero(); cqd.z_rank()];
    let mut entries = vec![];
    let mut notes = vec![];
    for (label, p) in params {
        let (mu_t, nu_t) = match recipe {
            Recipe::CmTypeA => {
                let diff: Vec<BigInt> = sub(&p.mu, &p.nu).iter().map(|x| x.to_integer()).collect();
                let target = cqd.center_class(&diff)?;
                // prefer e_i = 2 h_i with h the class of μ: then (μ, Σ h_i w_i) is integral
                let e: Vec<BigInt> = if all_integral(&p.mu) {
                    let mu: Vec<BigInt> = p.mu.iter().map(|x| x.to_integer()).collect();
                    let h = cqd.center_class(&mu)?;
                    let even: Vec<BigInt> = h.iter().map(|x| x * 2).collect();
                    let ok = even.iter().zip(&target).zip(&cqd.d).all(|((a, b), d)| (a - b).is_multiple_of(d));
                    if ok {
                        even
                    } else {
                        target.clone()
                    }
                } else {
                    target.clone()
                };
                let half: Vec<BigRational> = e.iter().map(|x| rat(x) / rat(&BigInt::from(2))).collect();
                let z = cqd.combine_w(&half);
                let neg: Vec<BigRational> = z.iter().map(|x| -x).collect();
                ((p.mu.clone(), z), (p.nu.clone(), neg))
            }
            Recipe::FiniteOrder => ((p.mu.clone(), zero_z.clone()), (p.nu.clone(), zero_z.clone())),
        };
        let lifted_classes = lifted_class(cqd, &mu_t, &nu_t);
        entries.push(LiftedParameter {
            label: label.clone(),
            mu_tilde: LiftedWeight { chi: mu_t.0, z: mu_t.1 },
            nu_tilde: LiftedWeight { chi: nu_t.0, z: nu_t.1 },
            input_classes: algebraicity_class(&cqd.datum, p),
            lifted_classes,
        });
    }
    let all_l = entries.iter().all(|e| e.input_classes.l);
    let (l_lift_exists, images_in_two_torsion) = match recipe {
        Recipe::CmTypeA => (if all_l { Some(entries.iter().all(|e| e.lifted_classes.l)) } else { None }, None),
        Recipe::FiniteOrder => {
            if !all_l {
                notes.push("inputs are not L-algebraic; only W-algebraicity of the lift is reported".into());
                (None, None)
            } else {
                let images = params
                    .iter()
                    .map(|(_, p)| {
                        let mu: Vec<BigInt> = p.mu.iter().map(|x| x.to_integer()).collect();
                        cqd.center_class(&mu)
                    })
                    .collect::<Result<Vec<Vec<BigInt>>, _>>()?;
                let in_two = images.iter().all(|h| h.iter().zip(&cqd.d).all(|(x, d)| (x * BigInt::from(2)).is_multiple_of(d)));
                let constant = images.iter().all(|h| *h == images[0]);
                (Some(constant), Some(in_two))
            }
        }
    };
    if tempered {
        notes.push("tempered: mu = -nu enforced".into());
    }
    Ok(ParamLiftReport { recipe, tempered, entries, l_lift_exists, images_in_two_torsion, notes })
}

/// Convenience: half-integers are frequent inputs.
pub fn half(x: i64) -> BigRational {
    BigRational::new(x.into(), 2.into())
}

pub fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntMatrix;
    use crate::rootdata::{builtin, central_quotient_data, gl};

    fn gsp4() -> CentralQuotientData {
        central_quotient_data(&builtin("C2.sc").unwrap(), &IntMatrix::identity(1)).unwrap()
    }

    fn gl2_from_sl2() -> CentralQuotientData {
        minimal_torus_extension(&builtin("A1.sc").unwrap()).unwrap()
    }

    #[test]
    fn classes_examples() {
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(1), &[vec![2, 1]]);
        assert_eq!(obstruction_classes(&gsp4(), &h).unwrap(), vec![abelian::big(&[1])]);
        let sl3 = minimal_torus_extension(&builtin("A2.sc").unwrap()).unwrap();
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(1), &[vec![1, 0]]);
        let th = obstruction_classes(&sl3, &h).unwrap();
        assert_eq!(th[0].len(), 1);
        assert_ne!(th[0][0], BigInt::zero());
        let pgl3 = minimal_torus_extension(&builtin("A2.ad").unwrap()).unwrap();
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(1), &[vec![5, -7]]);
        assert!(obstruction_classes(&pgl3, &h).unwrap()[0].is_empty());
    }

    #[test]
    fn spin_examples() {
        let cqd = gsp4();
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(2), &[vec![2, 1], vec![1, 1]]);
        let rep = geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).unwrap();
        assert_eq!(rep.decision, Decision::Obstructed);
        let c = rep.certificate.unwrap();
        assert_eq!((c.tau.as_str(), c.tau_prime.as_str()), ("t0", "t1"));
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(2), &[vec![1, 0], vec![1, 0]]);
        let rep = geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).unwrap();
        assert!(rep.lift_exists());
        let w = rep.witness.unwrap();
        assert_eq!(w.weights[0].values, vec![half(1)]);
        assert!(geometric_lift_exists(&cqd, &h, LiftMode::Imaginary).is_err());
    }

    #[test]
    fn odd_moduli_never_obstruct() {
        let sl3 = minimal_torus_extension(&builtin("A2.sc").unwrap()).unwrap();
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(3), &[vec![1, 0], vec![0, 0], vec![2, 2]]);
        assert!(geometric_lift_exists(&sl3, &h, LiftMode::TotallyReal).unwrap().lift_exists());
        let h = HodgeFamily::from_i64(CMEmbeddingData::cm(1), &[vec![1, 0], vec![0, 1]]);
        let rep = geometric_lift_exists(&sl3, &h, LiftMode::Imaginary).unwrap();
        assert!(rep.lift_exists());
        for c in witness_classes(&sl3, &h, rep.witness.as_ref().unwrap()).unwrap() {
            assert!(c.unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn imaginary_purity_failure() {
        let cqd = gsp4();
        // parities (1,0) on one pair and (0,0) on the other: no common w
        let h = HodgeFamily::from_i64(CMEmbeddingData::cm(2), &[vec![1, 0], vec![0, 0], vec![0, 0], vec![0, 0]]);
        let rep = geometric_lift_exists(&cqd, &h, LiftMode::Imaginary).unwrap();
        assert_eq!(rep.decision, Decision::Obstructed);
        assert!(rep.witness.is_none());
    }

    #[test]
    fn table_split() {
        let rows = classify_simple_types(8).unwrap();
        let get = |n: &str| rows.iter().find(|r| r.name == n).unwrap();
        assert_eq!(get("A4").d, abelian::big(&[5]));
        assert!(!get("A4").obstruction_possible);
        assert!(get("E7").obstruction_possible);
        assert_eq!(get("D4").center, "Z/2 + Z/2");
        assert_eq!(get("D5").center, "Z/4");
        assert!(!get("E6").obstruction_possible && !get("E8").obstruction_possible);
    }

    #[test]
    fn algebraicity_examples() {
        let sl2 = builtin("A1.sc").unwrap();
        let p = ParameterPair::from_halves(&[1], &[-1]);
        assert_eq!(algebraicity_class(&sl2, &p), AlgebraicityClasses { l: false, c: false, w: true });
        let gl2 = gl(2).unwrap();
        let p = ParameterPair::from_halves(&[1, -1], &[1, -1]);
        assert_eq!(algebraicity_class(&gl2, &p), AlgebraicityClasses { l: false, c: true, w: true });
        let p = ParameterPair::from_halves(&[0, 0], &[0, 0]);
        assert_eq!(algebraicity_class(&gl2, &p), AlgebraicityClasses { l: true, c: false, w: true });
    }

    #[test]
    fn param_lift_fixtures() {
        let cqd = gl2_from_sl2();
        // μ = χ = α/2, tempered
        let p = vec![("v".to_string(), ParameterPair::new(vec![int(1)], vec![int(-1)]))];
        let rep = lift_archimedean_parameter(&cqd, &p, Recipe::CmTypeA, true).unwrap();
        assert!(rep.entries[0].lifted_classes.l);
        assert_eq!(rep.l_lift_exists, Some(true));
        // half-integral input only lifts to a W-algebraic parameter
        let p = vec![("v".to_string(), ParameterPair::new(vec![half(1)], vec![half(-1)]))];
        let rep = lift_archimedean_parameter(&cqd, &p, Recipe::CmTypeA, true).unwrap();
        assert_eq!(rep.entries[0].mu_tilde.z, cqd.combine_w(&[half(1)]));
        assert_eq!(rep.entries[0].lifted_classes, AlgebraicityClasses { l: false, c: false, w: true });
        // mixed parity
        let p = vec![
            ("v1".to_string(), ParameterPair::new(vec![int(1)], vec![int(-1)])),
            ("v2".to_string(), ParameterPair::new(vec![int(2)], vec![int(-2)])),
        ];
        let rep = lift_archimedean_parameter(&cqd, &p, Recipe::FiniteOrder, true).unwrap();
        assert!(rep.entries.iter().all(|e| e.lifted_classes.w));
        assert_eq!(rep.l_lift_exists, Some(false));
        let p = vec![
            ("v1".to_string(), ParameterPair::new(vec![int(1)], vec![int(-1)])),
            ("v2".to_string(), ParameterPair::new(vec![int(3)], vec![int(-3)])),
        ];
        let rep = lift_archimedean_parameter(&cqd, &p, Recipe::FiniteOrder, true).unwrap();
        assert_eq!(rep.l_lift_exists, Some(true));
        let p = vec![("v".to_string(), ParameterPair::new(vec![int(0)], vec![int(0)]))];
        let rep = lift_archimedean_parameter(&cqd, &p, Recipe::CmTypeA, false).unwrap();
        assert!(rep.entries[0].lifted_classes.l);
    }

    #[test]
    fn param_lift_errors() {
        let cqd = gl2_from_sl2();
        let p = vec![("v".to_string(), ParameterPair::new(vec![int(1)], vec![int(0)]))];
        assert!(matches!(
            lift_archimedean_parameter(&cqd, &p, Recipe::CmTypeA, true),
            Err(LiftError::NotTempered(_))
        ));
        let p = vec![("v".to_string(), ParameterPair::new(vec![half(1)], vec![int(0)]))];
        assert!(matches!(
            lift_archimedean_parameter(&cqd, &p, Recipe::CmTypeA, false),
            Err(LiftError::NonIntegralDifference(_))
        ));
    }

    #[test]
    fn hodge_json() {
        let s = r#"{"data":{"labels":["a","b"],"conj":{"a":"a","b":"b"},"cm_labels":["q"],
                    "restrict":{"a":"q","b":"q"},"mode":"totally_real"},
                    "mu":{"a":[2,1],"b":["1","1"]}}"#;
        let j: HodgeJson = serde_json::from_str(s).unwrap();
        let h = HodgeFamily::try_from(j).unwrap();
        assert_eq!(h.mu[1], abelian::big(&[1, 1]));
    }
}
