//! Weight multisets: Freudenthal multiplicities, the Weyl dimension formula, spin weights,
//! restriction along torus maps and the exterior-algebra identities for Sp₂g.
//!
//! Weights are stored doubled: an entry `v` stands for v/2. Everything built in stays in ½ℤ.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{dot, BasedRootDatum, RootDataError};
use crate::serde_util::fmt_rational;

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} has a denominator other than 1 or 2")]
    NotHalfIntegral(String),
    #[error("weight {0} does not pair integrally with the coroots")]
    NotIntegral(String),
    #[error("lattice map is not defined on weight {0}")]
    Denominator(String),
    #[error("{what} = {value} exceeds the bound {bound}")]
    BoundExceeded { what: String, value: u64, bound: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Root(#[from] RootDataError),
}

fn show_doubled(v: &[i64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|&x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") })
        .collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    rank: usize,
    weights: HashMap<Vec<i64>, u64>,
}

impl WeightMultiset {
    pub fn new(rank: usize) -> Self {
        WeightMultiset { rank, weights: HashMap::new() }
    }

    /// One copy of the zero weight.
    pub fn trivial(rank: usize) -> Self {
        let mut w = Self::new(rank);
        w.add_doubled(vec![0; rank], 1);
        w
    }

    pub fn from_doubled<I: IntoIterator<Item = Vec<i64>>>(rank: usize, it: I) -> Self {
        let mut w = Self::new(rank);
        for v in it {
            w.add_doubled(v, 1);
        }
        w
    }

    pub fn from_integral<I: IntoIterator<Item = Vec<i64>>>(rank: usize, it: I) -> Self {
        Self::from_doubled(rank, it.into_iter().map(|v| v.into_iter().map(|x| 2 * x).collect()))
    }

    pub fn add_doubled(&mut self, v: Vec<i64>, mult: u64) {
        assert_eq!(v.len(), self.rank, "weight of wrong rank");
        if mult > 0 {
            *self.weights.entry(v).or_insert(0) += mult;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Number of distinct weights.
    pub fn distinct(&self) -> usize {
        self.weights.len()
    }

    pub fn multiplicity_doubled(&self, v: &[i64]) -> u64 {
        self.weights.get(v).copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, v: &[BigRational]) -> u64 {
        match to_doubled(v) {
            Ok(d) => self.multiplicity_doubled(&d),
            Err(_) => 0,
        }
    }

    pub fn iter_doubled(&self) -> impl Iterator<Item = (&Vec<i64>, &u64)> {
        self.weights.iter()
    }

    /// Weights sorted lexicographically (in doubled coordinates).
    pub fn sorted(&self) -> Vec<(Vec<i64>, u64)> {
        let b: BTreeMap<_, _> = self.weights.iter().map(|(k, v)| (k.clone(), *v)).collect();
        b.into_iter().collect()
    }

    pub fn sum(&self, other: &Self) -> Result<Self, WeightError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (k, v) in &other.weights {
            out.add_doubled(k.clone(), *v);
        }
        Ok(out)
    }

    pub fn scalar_multiple(&self, k: u64) -> Self {
        let mut out = Self::new(self.rank);
        for (w, m) in &self.weights {
            out.add_doubled(w.clone(), m * k);
        }
        out
    }

    /// Character product.
    pub fn tensor(&self, other: &Self) -> Result<Self, WeightError> {
        self.check_rank(other)?;
        let mut out = Self::new(self.rank);
        for (a, m) in &self.weights {
            for (b, n) in &other.weights {
                out.add_doubled(a.iter().zip(b).map(|(x, y)| x + y).collect(), m * n);
            }
        }
        Ok(out)
    }

    /// External product on the direct sum of tori.
    pub fn boxtimes(&self, other: &Self) -> Self {
        let mut out = Self::new(self.rank + other.rank);
        for (a, m) in &self.weights {
            for (b, n) in &other.weights {
                let mut v = a.clone();
                v.extend_from_slice(b);
                out.add_doubled(v, m * n);
            }
        }
        out
    }

    fn exterior_levels(&self, max: usize) -> Vec<WeightMultiset> {
        let mut levels = vec![Self::trivial(self.rank)];
        for (w, m) in self.sorted() {
            let m = m as usize;
            let top = (levels.len() - 1 + m).min(max);
            let mut next: Vec<WeightMultiset> = (0..=top).map(|_| Self::new(self.rank)).collect();
            for (j, lvl) in levels.iter().enumerate() {
                let mut binom: u64 = 1;
                for i in 0..=m {
                    if j + i > top {
                        break;
                    }
                    for (v, c) in &lvl.weights {
                        let shifted: Vec<i64> = v.iter().zip(&w).map(|(a, b)| a + (i as i64) * b).collect();
                        next[j + i].add_doubled(shifted, c * binom);
                    }
                    binom = binom * (m - i) as u64 / (i + 1) as u64;
                }
            }
            levels = next;
        }
        levels
    }

    /// ∧ᵏ, with repeated weights treated as distinct basis vectors.
    pub fn exterior_power(&self, k: usize) -> Self {
        let levels = self.exterior_levels(k);
        levels.into_iter().nth(k).unwrap_or_else(|| Self::new(self.rank))
    }

    pub fn full_exterior_algebra(&self) -> Self {
        let mut out = Self::new(self.rank);
        for lvl in self.exterior_levels(usize::MAX) {
            for (v, c) in lvl.weights {
                out.add_doubled(v, c);
            }
        }
        out
    }

    /// The dual representation.
    pub fn dual(&self) -> Self {
        let mut out = Self::new(self.rank);
        for (w, m) in &self.weights {
            out.add_doubled(w.iter().map(|x| -x).collect(), *m);
        }
        out
    }

    /// Tensor with a one-dimensional character.
    pub fn shift_doubled(&self, by: &[i64]) -> Self {
        let mut out = Self::new(self.rank);
        for (w, m) in &self.weights {
            out.add_doubled(w.iter().zip(by).map(|(a, b)| a + b).collect(), *m);
        }
        out
    }

    pub fn is_weyl_invariant(&self, rd: &BasedRootDatum) -> bool {
        self.weights.iter().all(|(w, m)| {
            (0..rd.simple_roots.len()).all(|i| self.multiplicity_doubled(&rd.reflect(i, w)) == *m)
        })
    }

    fn check_rank(&self, other: &Self) -> Result<(), WeightError> {
        if self.rank != other.rank {
            return Err(WeightError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }
}

impl fmt::Display for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sorted()
            .into_iter()
            .rev()
            .map(|(w, m)| if m == 1 { show_doubled(&w) } else { format!("{}x{m}", show_doubled(&w)) })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize)]
struct WeightEntry {
    weight: Vec<String>,
    mult: u64,
}

#[derive(Serialize)]
struct MultisetJson {
    rank: usize,
    dim: u64,
    weights: Vec<WeightEntry>,
}

impl Serialize for WeightMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MultisetJson {
            rank: self.rank,
            dim: self.dim(),
            weights: self
                .sorted()
                .into_iter()
                .rev()
                .map(|(w, mult)| WeightEntry {
                    weight: w.iter().map(|&x| fmt_rational(&BigRational::new(x.into(), 2.into()))).collect(),
                    mult,
                })
                .collect(),
        }
        .serialize(s)
    }
}

pub fn to_doubled(v: &[BigRational]) -> Result<Vec<i64>, WeightError> {
    v.iter()
        .map(|x| {
            let d = x * BigRational::from_integer(2.into());
            if d.is_integer() {
                d.to_integer().to_i64().ok_or_else(|| WeightError::NotHalfIntegral(x.to_string()))
            } else {
                Err(WeightError::NotHalfIntegral(
                    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", "),
                ))
            }
        })
        .collect()
}

/// Linear map on weights, v ↦ (M v)/denominator; `matrix` is to × from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeMap {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<i64>>,
    pub denominator: i64,
}

impl LatticeMap {
    pub fn new(from: usize, matrix: Vec<Vec<i64>>, denominator: i64) -> Result<Self, WeightError> {
        if matrix.iter().any(|r| r.len() != from) {
            return Err(WeightError::Invalid("ragged lattice map".into()));
        }
        if denominator != 1 && denominator != 2 {
            return Err(WeightError::Invalid(format!("denominator {denominator}")));
        }
        Ok(LatticeMap { from, to: matrix.len(), matrix, denominator })
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        LatticeMap { from: n, to: n, matrix, denominator: 1 }
    }

    /// Image of a doubled weight, doubled.
    pub fn apply_doubled(&self, v: &[i64]) -> Result<Vec<i64>, WeightError> {
        self.matrix
            .iter()
            .map(|row| {
                let s = dot(row, v);
                if s % self.denominator != 0 {
                    Err(WeightError::Denominator(show_doubled(v)))
                } else {
                    Ok(s / self.denominator)
                }
            })
            .collect()
    }
}

pub fn restrict_multiset(f: &LatticeMap, w: &WeightMultiset) -> Result<WeightMultiset, WeightError> {
    if f.from != w.rank {
        return Err(WeightError::RankMismatch(f.from, w.rank));
    }
    let mut out = WeightMultiset::new(f.to);
    for (v, m) in &w.weights {
        out.add_doubled(f.apply_doubled(v)?, *m);
    }
    Ok(out)
}

fn check_dominant(rd: &BasedRootDatum, lambda: &[BigRational]) -> Result<Vec<i64>, WeightError> {
    if lambda.len() != rd.rank {
        return Err(WeightError::RankMismatch(lambda.len(), rd.rank));
    }
    let l2 = to_doubled(lambda)?;
    for c in &rd.simple_coroots {
        let p = dot(&l2, c);
        if p % 2 != 0 {
            return Err(WeightError::NotIntegral(show_doubled(&l2)));
        }
        if p < 0 {
            return Err(WeightError::NotDominant(show_doubled(&l2)));
        }
    }
    Ok(l2)
}

/// ∏_{α>0} ⟨λ+ρ̂, α∨⟩ / ⟨ρ̂, α∨⟩.
pub fn weyl_dimension(rd: &BasedRootDatum, lambda: &[BigRational]) -> Result<BigInt, WeightError> {
    let l2 = check_dominant(rd, lambda)?;
    let r2 = rd.two_rho();
    let mut q = BigRational::one();
    for b in rd.positive_roots() {
        let num = dot(&l2, &b.coroot) + dot(&r2, &b.coroot);
        q *= BigRational::new(num.into(), dot(&r2, &b.coroot).into());
    }
    debug_assert!(q.is_integer());
    Ok(q.to_integer())
}

pub fn weyl_dimension_int(rd: &BasedRootDatum, lambda: &[i64]) -> Result<BigInt, WeightError> {
    weyl_dimension(rd, &ints(lambda))
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

struct Freudenthal<'a> {
    rd: &'a BasedRootDatum,
    pos: Vec<(Vec<i64>, Vec<i64>)>,
    l2: Vec<i64>,
    r2: Vec<i64>,
    top: i64,
    dominant: HashSet<Vec<i64>>,
    memo: HashMap<Vec<i64>, u64>,
}

impl Freudenthal<'_> {
    /// (x, y) = Σ_{β>0} ⟨x, β∨⟩⟨y, β∨⟩, W-invariant.
    fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.pos.iter().map(|(_, c)| dot(x, c) * dot(y, c)).sum()
    }

    fn norm_shift(&self, v: &[i64]) -> i64 {
        let s: Vec<i64> = v.iter().zip(&self.r2).map(|(a, b)| a + b).collect();
        self.form(&s, &s)
    }

    fn mult(&mut self, v: &[i64]) -> u64 {
        let dom = self.rd.dominant(v);
        if let Some(&m) = self.memo.get(&dom) {
            return m;
        }
        if !self.dominant.contains(&dom) {
            return 0;
        }
        if dom == self.l2 {
            self.memo.insert(dom, 1);
            return 1;
        }
        let denom = self.top - self.norm_shift(&dom);
        if denom <= 0 {
            self.memo.insert(dom, 0);
            return 0;
        }
        let mut num: i64 = 0;
        for idx in 0..self.pos.len() {
            let a2: Vec<i64> = self.pos[idx].0.iter().map(|x| 2 * x).collect();
            let mut cur: Vec<i64> = dom.iter().zip(&a2).map(|(x, y)| x + y).collect();
            loop {
                let m = self.mult(&cur);
                if m == 0 {
                    break;
                }
                num += 4 * self.form(&cur, &self.pos[idx].0) * m as i64;
                for (c, a) in cur.iter_mut().zip(&a2) {
                    *c += a;
                }
            }
        }
        // doubled coordinates: 2·Σ(μ+kα, α) m / (|λ+ρ|² − |μ+ρ|²) with every length scaled by 4 and
        // every pairing with α by 2
        debug_assert_eq!(num % denom, 0);
        let m = (num / denom) as u64;
        self.memo.insert(dom, m);
        m
    }
}

/// Full weight multiset of the irreducible representation of highest weight λ.
pub fn irrep_weight_multiset(rd: &BasedRootDatum, lambda: &[BigRational]) -> Result<WeightMultiset, WeightError> {
    let l2 = check_dominant(rd, lambda)?;
    let pos: Vec<(Vec<i64>, Vec<i64>)> = rd.positive_roots().into_iter().map(|b| (b.root, b.coroot)).collect();
    let r2 = rd.two_rho();
    let mut fr = Freudenthal { rd, pos, l2: l2.clone(), r2, top: 0, dominant: HashSet::new(), memo: HashMap::new() };
    fr.top = fr.norm_shift(&l2);

    // dominant weights below λ: close under subtracting positive roots while staying dominant
    let mut dominant: Vec<Vec<i64>> = vec![];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([l2.clone()]);
    let mut queue = VecDeque::from([l2.clone()]);
    while let Some(v) = queue.pop_front() {
        for (a, _) in &fr.pos {
            let w: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - 2 * y).collect();
            if rd.is_dominant(&w) && fr.norm_shift(&w) < fr.top && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
        dominant.push(v);
    }
    dominant.sort_by_key(|v| -fr.norm_shift(v));
    fr.dominant = seen;

    let mut out = WeightMultiset::new(rd.rank);
    for d in dominant {
        let m = fr.mult(&d);
        if m == 0 {
            continue;
        }
        for w in weyl_orbit(rd, &d) {
            out.add_doubled(w, m);
        }
    }
    Ok(out)
}

pub fn irrep_weight_multiset_int(rd: &BasedRootDatum, lambda: &[i64]) -> Result<WeightMultiset, WeightError> {
    irrep_weight_multiset(rd, &ints(lambda))
}

fn weyl_orbit(rd: &BasedRootDatum, v: &[i64]) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::from([v.to_vec()]);
    let mut queue = VecDeque::from([v.to_vec()]);
    let mut out = vec![];
    while let Some(x) = queue.pop_front() {
        for i in 0..rd.simple_roots.len() {
            let y = rd.reflect(i, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinFamily {
    B,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Plus,
    Minus,
    Both,
}

impl FromStr for SpinFamily {
    type Err = WeightError;
    fn from_str(s: &str) -> Result<Self, WeightError> {
        match s {
            "B" | "b" => Ok(SpinFamily::B),
            "D" | "d" => Ok(SpinFamily::D),
            _ => Err(WeightError::Invalid(format!("spin family {s:?}"))),
        }
    }
}

impl FromStr for Half {
    type Err = WeightError;
    fn from_str(s: &str) -> Result<Self, WeightError> {
        match s {
            "plus" | "+" => Ok(Half::Plus),
            "minus" | "-" => Ok(Half::Minus),
            "both" => Ok(Half::Both),
            _ => Err(WeightError::Invalid(format!("half {s:?}"))),
        }
    }
}

/// Weights ½(±χ₁ ± … ± χₙ); for D the halves keep an even (plus) or odd (minus) number of
/// minus signs.
pub fn spin_weight_multiset(n: usize, family: SpinFamily, half: Half) -> WeightMultiset {
    let mut out = WeightMultiset::new(n);
    assert!(n < 63, "spin rank too large");
    for mask in 0u64..(1u64 << n) {
        let minus = mask.count_ones() as usize;
        let keep = match (family, half) {
            (SpinFamily::B, _) | (SpinFamily::D, Half::Both) => true,
            (SpinFamily::D, Half::Plus) => minus.is_multiple_of(2),
            (SpinFamily::D, Half::Minus) => minus % 2 == 1,
        };
        if keep {
            out.add_doubled((0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(), 1);
        }
    }
    out
}

/// Spin weights of so_N; `half` only matters for N even.
pub fn spin_of_so(n: usize, half: Half) -> WeightMultiset {
    if n % 2 == 1 {
        spin_weight_multiset(n / 2, SpinFamily::B, Half::Both)
    } else {
        spin_weight_multiset(n / 2, SpinFamily::D, half)
    }
}

fn bound_spin(n: usize, bound_log2: u32) -> Result<(), WeightError> {
    if (n / 2) as u32 > bound_log2 {
        return Err(WeightError::BoundExceeded {
            what: format!("spin dimension of so_{n}"),
            value: 1u64 << (n / 2).min(63),
            bound: 1u64 << bound_log2,
        });
    }
    Ok(())
}

/// Sp₂g in e-coordinates (C_g simply connected, including g = 1).
pub fn sp(g: usize) -> Result<BasedRootDatum, WeightError> {
    if g == 0 {
        return Err(WeightError::Invalid("Sp_0".into()));
    }
    let e = |i: usize| -> Vec<i64> { (0..g).map(|j| i64::from(i == j)).collect() };
    let mut roots: Vec<Vec<i64>> = (0..g - 1)
        .map(|i| {
            let mut v = e(i);
            v[i + 1] = -1;
            v
        })
        .collect();
    let mut coroots = roots.clone();
    roots.push(e(g - 1).into_iter().map(|x| 2 * x).collect());
    coroots.push(e(g - 1));
    Ok(BasedRootDatum::new(g, roots, coroots)?)
}

/// Standard representation of Sp₂g.
pub fn sp_standard(g: usize) -> WeightMultiset {
    let mut out = WeightMultiset::new(g);
    for i in 0..g {
        for s in [2, -2] {
            let mut v = vec![0; g];
            v[i] = s;
            out.add_doubled(v, 1);
        }
    }
    out
}

/// ω₁ + … + ω_{g−1} = (g−1, g−2, …, 1, 0) in e-coordinates.
pub fn ks_highest_weight(g: usize) -> Vec<i64> {
    (0..g).map(|i| (g - 1 - i) as i64).collect()
}

/// N = C(2g, 2) − 1, the dimension of V_{e₁+e₂}.
pub fn ks_dimension(g: usize) -> usize {
    g * (2 * g - 1) - 1
}

/// Positive weights e_i ± e_j (i < j) of V_{e₁+e₂}, lexicographically descending.
fn ks_positive_weights(g: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    for i in 0..g {
        for j in i + 1..g {
            for s in [1, -1] {
                let mut v = vec![0; g];
                v[i] = 1;
                v[j] = s;
                out.push(v);
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Torus map for Sp₂g → SO_N through V_{e₁+e₂}: χ_k pulls back to the k-th positive weight,
/// the remaining coordinates pair up zero weights.
pub fn kuga_satake_embedding(g: usize) -> LatticeMap {
    let pos = ks_positive_weights(g);
    let perm: Vec<usize> = (0..pos.len()).collect();
    let signs = vec![1; pos.len()];
    kuga_satake_embedding_with(g, &perm, &signs)
}

/// Same with χ_k ↦ signs[k] · β_{perm[k]}; `perm` and `signs` have length g(g − 1).
pub fn kuga_satake_embedding_with(g: usize, perm: &[usize], signs: &[i64]) -> LatticeMap {
    let pos = ks_positive_weights(g);
    let m = ks_dimension(g) / 2;
    let mut matrix = vec![vec![0; m]; g];
    for k in 0..pos.len() {
        for (i, row) in matrix.iter_mut().enumerate() {
            row[k] = signs[k] * pos[perm[k]][i];
        }
    }
    LatticeMap { from: m, to: g, matrix, denominator: 1 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterParity {
    Trivial,
    CentralElementC,
}

/// Action of −1 ∈ Sp₂g on the pulled-back spin representation: (−1)^{g(g−1)/2}.
pub fn center_action_parity(g: usize) -> CenterParity {
    if (g * g.saturating_sub(1) / 2).is_multiple_of(2) {
        CenterParity::Trivial
    } else {
        CenterParity::CentralElementC
    }
}

/// Signs of −1 on all pulled-back spin weights, computed from the distribution of coordinate
/// sums. Returns the set of signs that occur.
pub fn center_signs_by_distribution(g: usize) -> Vec<i64> {
    let f = kuga_satake_embedding(g);
    // a weight ½Σ ε_k χ_k pulls back to a vector with coordinate sum ½Σ ε_k s_k,
    // s_k the coordinate sum of column k
    let sums: Vec<i64> = (0..f.from).map(|k| f.matrix.iter().map(|r| r[k]).sum()).collect();
    let mut reach: HashSet<i64> = HashSet::from([0]);
    for s in sums {
        reach = reach.iter().flat_map(|&t| [t + s, t - s]).collect();
    }
    let mut signs: Vec<i64> = reach
        .into_iter()
        .map(|t2| {
            assert_eq!(t2 % 2, 0, "pulled-back spin weight is not integral");
            if (t2 / 2) % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    signs.sort();
    signs.dedup();
    signs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlethysmReport {
    pub g: usize,
    pub pass: bool,
    pub lhs_dim: u64,
    pub rhs_dim: u64,
    pub distinct_weights: usize,
}

pub const DEFAULT_MAX_PLETHYSM_G: usize = 3;

/// ∧•(∧² std) against 2^g · V_λ ⊗ V_λ, λ = ω₁ + … + ω_{g−1}.
pub fn verify_plethysm(g: usize, max_g: usize) -> Result<PlethysmReport, WeightError> {
    if g > max_g {
        return Err(WeightError::BoundExceeded { what: "plethysm g".into(), value: g as u64, bound: max_g as u64 });
    }
    let rd = sp(g)?;
    let lhs = sp_standard(g).exterior_power(2).full_exterior_algebra();
    let v = irrep_weight_multiset_int(&rd, &ks_highest_weight(g))?;
    let rhs = v.tensor(&v)?.scalar_multiple(1 << g);
    Ok(PlethysmReport { g, pass: lhs == rhs, lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), distinct_weights: lhs.distinct() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KugaSatakeReport {
    pub g: usize,
    pub n: usize,
    pub multiplicity: u64,
    pub pullback_dim: u64,
    pub pass: bool,
}

/// Spin (both halves) of so_N pulled back to Sp₂g equals 2^{⌊(g−1)/2⌋} · V_λ.
pub fn verify_kuga_satake_pullback(g: usize, f: &LatticeMap) -> Result<KugaSatakeReport, WeightError> {
    let n = ks_dimension(g);
    bound_spin(n, 24)?;
    let spin = spin_of_so(n, Half::Both);
    let pulled = restrict_multiset(f, &spin)?;
    let multiplicity = 1u64 << ((g.max(1) - 1) / 2);
    let v = irrep_weight_multiset_int(&sp(g)?, &ks_highest_weight(g))?;
    Ok(KugaSatakeReport {
        g,
        n,
        multiplicity,
        pullback_dim: pulled.dim(),
        pass: pulled == v.scalar_multiple(multiplicity),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchCase {
    pub name: String,
    pub lhs_dim: u64,
    pub rhs_dim: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingReport {
    pub from: String,
    pub to: String,
    pub cases: Vec<BranchCase>,
    pub pass: bool,
}

impl BranchingReport {
    fn new(from: String, to: String, cases: Vec<BranchCase>) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        BranchingReport { from, to, cases, pass }
    }
}

fn case(name: String, lhs: &WeightMultiset, rhs: &WeightMultiset) -> BranchCase {
    BranchCase { name, lhs_dim: lhs.dim(), rhs_dim: rhs.dim(), pass: lhs == rhs }
}

pub const DEFAULT_SPIN_BOUND_LOG2: u32 = 20;

/// Torus map for so_{n₁} × … × so_{n_d} ⊂ so_{Σn}: block coordinates map to themselves, the
/// coordinates pairing up leftover zero weights of odd blocks map to 0.
pub fn block_embedding(dims: &[usize]) -> LatticeMap {
    let total: usize = dims.iter().sum();
    let from = total / 2;
    let to: usize = dims.iter().map(|n| n / 2).sum();
    let mut matrix = vec![vec![0; from]; to];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = 1;
    }
    LatticeMap { from, to, matrix, denominator: 1 }
}

fn boxtimes_all(parts: &[WeightMultiset]) -> WeightMultiset {
    parts.iter().fold(WeightMultiset::trivial(0), |acc, p| acc.boxtimes(p))
}

/// Spin branching of so_{cd} along ∏₁ᵈ so_c.
pub fn verify_spin_branching(c: usize, d: usize, bound_log2: u32) -> Result<BranchingReport, WeightError> {
    if c == 0 || d == 0 {
        return Err(WeightError::Invalid("c and d must be positive".into()));
    }
    let n = c * d;
    bound_spin(n, bound_log2)?;
    let f = block_embedding(&vec![c; d]);
    let mut cases = vec![];
    let name = |s: &str| format!("so{n} {s} -> so{c}^{d}");
    if c % 2 == 1 {
        let w = spin_of_so(c, Half::Both);
        let block = boxtimes_all(&vec![w; d]);
        let d0 = (d / 2) as u32;
        if n % 2 == 1 {
            let lhs = restrict_multiset(&f, &spin_of_so(n, Half::Both))?;
            cases.push(case(name("spin"), &lhs, &block.scalar_multiple(1 << d0)));
        } else {
            let lhs = restrict_multiset(&f, &spin_of_so(n, Half::Both))?;
            cases.push(case(name("both"), &lhs, &block.scalar_multiple(1 << d0)));
            for h in [Half::Plus, Half::Minus] {
                let lhs = restrict_multiset(&f, &spin_of_so(n, h))?;
                cases.push(case(name(&format!("{h:?}").to_lowercase()), &lhs, &block.scalar_multiple(1 << (d0 - 1))));
            }
        }
    } else {
        let plus = spin_of_so(c, Half::Plus);
        let minus = spin_of_so(c, Half::Minus);
        for (h, parity) in [(Half::Plus, 0usize), (Half::Minus, 1)] {
            // ⊕ over sign vectors with product matching the half
            let mut rhs = WeightMultiset::new(f.to);
            for mask in 0u64..(1 << d) {
                if (mask.count_ones() as usize) % 2 != parity {
                    continue;
                }
                let parts: Vec<WeightMultiset> =
                    (0..d).map(|j| if mask >> j & 1 == 1 { minus.clone() } else { plus.clone() }).collect();
                rhs = rhs.sum(&boxtimes_all(&parts))?;
            }
            let lhs = restrict_multiset(&f, &spin_of_so(n, h))?;
            cases.push(case(name(&format!("{h:?}").to_lowercase()), &lhs, &rhs));
        }
    }
    Ok(BranchingReport::new(format!("so{n}"), format!("so{c}^{d}"), cases))
}

/// Spin branching of so_{a+t} along so_a × so_t.
pub fn verify_two_block_branching(a: usize, t: usize, bound_log2: u32) -> Result<BranchingReport, WeightError> {
    let n = a + t;
    bound_spin(n, bound_log2)?;
    let f = block_embedding(&[a, t]);
    let mut cases = vec![];
    let name = |s: &str| format!("so{n} {s} -> so{a} x so{t}");
    match (a % 2, t % 2) {
        (0, 0) => {
            for (h, same, other) in [(Half::Plus, Half::Plus, Half::Minus), (Half::Minus, Half::Plus, Half::Minus)] {
                let (x1, y1, x2, y2) = if h == Half::Plus { (same, same, other, other) } else { (same, other, other, same) };
                let rhs = spin_of_so(a, x1)
                    .boxtimes(&spin_of_so(t, y1))
                    .sum(&spin_of_so(a, x2).boxtimes(&spin_of_so(t, y2)))?;
                let lhs = restrict_multiset(&f, &spin_of_so(n, h))?;
                cases.push(case(name(&format!("{h:?}").to_lowercase()), &lhs, &rhs));
            }
        }
        (1, 1) => {
            let rhs = spin_of_so(a, Half::Both).boxtimes(&spin_of_so(t, Half::Both));
            for h in [Half::Plus, Half::Minus] {
                let lhs = restrict_multiset(&f, &spin_of_so(n, h))?;
                cases.push(case(name(&format!("{h:?}").to_lowercase()), &lhs, &rhs));
            }
            let lhs = restrict_multiset(&f, &spin_of_so(n, Half::Both))?;
            cases.push(case(name("both"), &lhs, &rhs.scalar_multiple(2)));
        }
        _ => {
            let rhs = spin_of_so(a, Half::Both).boxtimes(&spin_of_so(t, Half::Both));
            let lhs = restrict_multiset(&f, &spin_of_so(n, Half::Both))?;
            cases.push(case(name("spin"), &lhs, &rhs));
        }
    }
    Ok(BranchingReport::new(format!("so{n}"), format!("so{a} x so{t}"), cases))
}

/// Spin branching of so_{2cd} along ∏₁ᵈ gl_c: each factor contributes ⊕ᵢ ∧ⁱ(V_c^*) ⊗ det^{1/2}.
pub fn verify_gl_branching(c: usize, d: usize, bound_log2: u32) -> Result<BranchingReport, WeightError> {
    if c == 0 || d == 0 {
        return Err(WeightError::Invalid("c and d must be positive".into()));
    }
    let n = 2 * c * d;
    bound_spin(n, bound_log2)?;
    let f = LatticeMap::identity(c * d);
    let dual_std = WeightMultiset::from_integral(
        c,
        (0..c).map(|i| (0..c).map(|j| if i == j { -1 } else { 0 }).collect()),
    );
    let half_det = vec![1; c];
    let even = (0..=c)
        .step_by(2)
        .map(|i| dual_std.exterior_power(i).shift_doubled(&half_det))
        .try_fold(WeightMultiset::new(c), |acc, x| acc.sum(&x))?;
    let odd = (1..=c)
        .step_by(2)
        .map(|i| dual_std.exterior_power(i).shift_doubled(&half_det))
        .try_fold(WeightMultiset::new(c), |acc, x| acc.sum(&x))?;
    let mut cases = vec![];
    for (h, parity) in [(Half::Plus, 0usize), (Half::Minus, 1)] {
        let mut rhs = WeightMultiset::new(c * d);
        for mask in 0u64..(1 << d) {
            if (mask.count_ones() as usize) % 2 != parity {
                continue;
            }
            let parts: Vec<WeightMultiset> =
                (0..d).map(|j| if mask >> j & 1 == 1 { odd.clone() } else { even.clone() }).collect();
            rhs = rhs.sum(&boxtimes_all(&parts))?;
        }
        let lhs = restrict_multiset(&f, &spin_of_so(n, h))?;
        cases.push(case(format!("so{n} {} -> gl{c}^{d}", format!("{h:?}").to_lowercase()), &lhs, &rhs));
    }
    Ok(BranchingReport::new(format!("so{n}"), format!("gl{c}^{d}"), cases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{simple_type, Family, Isogeny};

    fn half(x: i64) -> BigRational {
        BigRational::new(x.into(), 2.into())
    }

    #[test]
    fn sp4_irreps() {
        let rd = sp(2).unwrap();
        let std = irrep_weight_multiset_int(&rd, &[1, 0]).unwrap();
        assert_eq!(std, sp_standard(2));
        let v = irrep_weight_multiset_int(&rd, &[1, 1]).unwrap();
        assert_eq!(v.dim(), 5);
        assert_eq!(v.multiplicity_doubled(&[0, 0]), 1);
        assert_eq!(v.multiplicity_doubled(&[2, -2]), 1);
        let wedge = std.exterior_power(2);
        assert_eq!(wedge, v.sum(&WeightMultiset::trivial(2)).unwrap());
    }

    #[test]
    fn sp6_dimension() {
        let rd = sp(3).unwrap();
        let v = irrep_weight_multiset_int(&rd, &[2, 1, 0]).unwrap();
        assert_eq!(v.dim(), 64);
        assert!(v.is_weyl_invariant(&rd));
        assert_eq!(weyl_dimension_int(&rd, &[2, 1, 0]).unwrap(), BigInt::from(64));
    }

    #[test]
    fn freudenthal_against_weyl() {
        for (f, n) in [(Family::G, 2), (Family::B, 3), (Family::A, 3), (Family::F, 4), (Family::D, 4)] {
            let rd = simple_type(f, n, Isogeny::SimplyConnected).unwrap();
            for i in 0..n {
                let mut l = vec![0; n];
                l[i] = 1;
                if f == Family::F && i > 0 {
                    continue;
                }
                let w = irrep_weight_multiset_int(&rd, &l).unwrap();
                assert_eq!(BigInt::from(w.dim()), weyl_dimension_int(&rd, &l).unwrap(), "{f}{n} w{i}");
                assert!(w.is_weyl_invariant(&rd));
            }
        }
        let g2 = simple_type(Family::G, 2, Isogeny::SimplyConnected).unwrap();
        let w = irrep_weight_multiset_int(&g2, &[1, 1]).unwrap();
        assert_eq!(w.dim(), 64);
    }

    #[test]
    fn dimension_errors() {
        let rd = sp(2).unwrap();
        assert!(matches!(weyl_dimension_int(&rd, &[0, 1]), Err(WeightError::NotDominant(_))));
        assert!(matches!(weyl_dimension(&rd, &[half(1), half(1)]), Err(WeightError::NotIntegral(_))));
        assert_eq!(weyl_dimension_int(&rd, &[0, 0]).unwrap(), BigInt::one());
    }

    #[test]
    fn spin_examples() {
        assert_eq!(spin_weight_multiset(2, SpinFamily::B, Half::Both).dim(), 4);
        let p = spin_weight_multiset(2, SpinFamily::D, Half::Plus);
        assert_eq!(p, WeightMultiset::from_doubled(2, [vec![1, 1], vec![-1, -1]]));
        assert_eq!(spin_weight_multiset(4, SpinFamily::D, Half::Both).dim(), 16);
        assert_eq!(spin_of_so(1, Half::Both).dim(), 1);
        assert_eq!(spin_of_so(0, Half::Both).dim(), 1);
    }

    #[test]
    fn d4_spin_matches_freudenthal() {
        // e-coordinates to the fundamental-weight coordinates of D4 (pairings with coroots)
        let coroots = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]];
        let f = LatticeMap::new(4, coroots.iter().map(|r| r.to_vec()).collect(), 1).unwrap();
        let rd = simple_type(Family::D, 4, Isogeny::SimplyConnected).unwrap();
        let lhs = restrict_multiset(&f, &spin_weight_multiset(4, SpinFamily::D, Half::Both)).unwrap();
        let rhs = irrep_weight_multiset_int(&rd, &[0, 0, 1, 0])
            .unwrap()
            .sum(&irrep_weight_multiset_int(&rd, &[0, 0, 0, 1]).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exterior_dimensions() {
        let w = WeightMultiset::from_integral(1, [vec![0], vec![0], vec![1], vec![-1], vec![2], vec![0]]);
        assert_eq!(w.full_exterior_algebra().dim(), 64);
        let binom = [1, 6, 15, 20, 15, 6, 1];
        for (k, b) in binom.iter().enumerate() {
            assert_eq!(w.exterior_power(k).dim(), *b);
        }
        assert_eq!(w.exterior_power(7).dim(), 0);
        let t = WeightMultiset::trivial(1);
        assert_eq!(w.tensor(&t).unwrap(), w);
        assert!(w.tensor(&WeightMultiset::trivial(2)).is_err());
    }

    #[test]
    fn plethysm_small() {
        for (g, dim) in [(1, 2), (2, 64), (3, 32768)] {
            let r = verify_plethysm(g, 3).unwrap();
            assert!(r.pass, "g={g}");
            assert_eq!(r.lhs_dim, dim);
        }
        assert!(verify_plethysm(4, 3).is_err());
    }

    #[test]
    fn kuga_satake() {
        let f = kuga_satake_embedding(2);
        let pulled = restrict_multiset(&f, &spin_of_so(5, Half::Both)).unwrap();
        assert_eq!(pulled, sp_standard(2));
        let f1 = kuga_satake_embedding(1);
        assert_eq!(f1.from, 0);
        assert_eq!(restrict_multiset(&f1, &spin_of_so(0, Half::Both)).unwrap(), WeightMultiset::trivial(1));
        let r = verify_kuga_satake_pullback(3, &kuga_satake_embedding(3)).unwrap();
        assert!(r.pass);
        assert_eq!((r.n, r.pullback_dim, r.multiplicity), (14, 128, 2));
        for g in 1..=4 {
            assert!(verify_kuga_satake_pullback(g, &kuga_satake_embedding(g)).unwrap().pass, "g={g}");
        }
    }

    #[test]
    fn center_parity() {
        assert_eq!(center_action_parity(1), CenterParity::Trivial);
        assert_eq!(center_action_parity(2), CenterParity::CentralElementC);
        assert_eq!(center_action_parity(3), CenterParity::CentralElementC);
        assert_eq!(center_action_parity(4), CenterParity::Trivial);
        for g in 1..=6 {
            let expected = if center_action_parity(g) == CenterParity::Trivial { 1 } else { -1 };
            assert_eq!(center_signs_by_distribution(g), vec![expected], "g={g}");
        }
    }

    #[test]
    fn branching_cases() {
        for (c, d) in [(3, 3), (2, 2), (2, 3), (3, 2), (2, 1), (4, 2), (1, 3)] {
            let r = verify_spin_branching(c, d, 20).unwrap();
            assert!(r.pass, "{c},{d}: {:?}", r.cases);
        }
        let r = verify_spin_branching(3, 3, 20).unwrap();
        assert_eq!(r.cases[0].lhs_dim, 16);
        for (a, t) in [(2, 3), (3, 3), (2, 2), (4, 5), (1, 1)] {
            let r = verify_two_block_branching(a, t, 20).unwrap();
            assert!(r.pass, "{a},{t}: {:?}", r.cases);
        }
        for (c, d) in [(1, 1), (2, 2), (3, 2)] {
            assert!(verify_gl_branching(c, d, 20).unwrap().pass);
        }
        assert!(verify_spin_branching(7, 7, 20).is_err());
    }

    #[test]
    fn restriction_examples() {
        let w = spin_of_so(5, Half::Both);
        assert_eq!(restrict_multiset(&LatticeMap::identity(2), &w).unwrap(), w);
        let r = restrict_multiset(&block_embedding(&[2, 3]), &w).unwrap();
        assert_eq!(r, spin_of_so(2, Half::Both).boxtimes(&spin_of_so(3, Half::Both)));
        let halving = LatticeMap::new(2, vec![vec![1, 0]], 2).unwrap();
        assert!(matches!(restrict_multiset(&halving, &w), Err(WeightError::Denominator(_))));
    }
}
