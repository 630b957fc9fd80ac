//! Based root data, Weyl groups, centers and normalized central quotient data.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{self, cokernel_invariants, kernel_basis, smith_normal_form, AbelianError, FinAbGroup, IntMatrix};

/// First violated axiom found by [`BasedRootDatum::validate`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    #[error("{count} simple roots but {coroots} simple coroots")]
    CountMismatch { count: usize, coroots: usize },
    #[error("vector {index} has length {len}, expected rank {rank}")]
    LengthMismatch { index: usize, len: usize, rank: usize },
    #[error("pairing ≠ 2: <alpha_{i}, alpha_{i}^v> = {value}")]
    PairingNotTwo { i: usize, value: i64 },
    #[error("positive off-diagonal Cartan entry <alpha_{i}, alpha_{j}^v> = {value}")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("Cartan entries ({i},{j}) and ({j},{i}) are not both zero or both nonzero")]
    ZeroPattern { i: usize, j: usize },
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
}

#[derive(Debug, Error)]
pub enum RootDataError {
    #[error("invalid root datum: {0}")]
    Invalid(#[from] Diagnostic),
    #[error("no simple type {family}{rank}")]
    InvalidType { family: Family, rank: usize },
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("embedding matrix must have {expected} rows, got {got}")]
    EmbedShape { expected: usize, got: usize },
    #[error("embedding X(Z~) -> X(Z_G) is not surjective")]
    EmbedNotSurjective,
    #[error("vector has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return Err(RootDataError::UnknownName(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

pub fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// (X, Δ, X∨, Δ∨) with X = ℤ^rank and the dot pairing. The order of Δ fixes the positive system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasedRootDatum {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

/// A positive root with its coroot and its coordinates in the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    /// Simple reflections acting on X, as rank × rank matrices (x ↦ s x, column vectors).
    pub generators: Vec<Vec<Vec<i64>>>,
    pub order: u128,
}

/// X•(Z_G) = X/Q together with the projection X → X/Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterCharacters {
    pub group: FinAbGroup,
    /// One row per generator: torsion generators first (ascending orders), then free ones.
    pub projection: IntMatrix,
    /// Order of each generator; 0 for free generators.
    pub moduli: Vec<BigInt>,
}

impl CenterCharacters {
    pub fn generators(&self) -> usize {
        self.moduli.len()
    }

    pub fn torsion_generators(&self) -> usize {
        self.group.invariant_factors.len()
    }

    pub fn reduce(&self, v: &mut [BigInt]) {
        for (x, m) in v.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *x = x.mod_floor(m);
            }
        }
    }

    pub fn project(&self, x: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        let mut v = self.projection.mul_vec(x)?;
        self.reduce(&mut v);
        Ok(v)
    }

    pub fn project_i64(&self, x: &[i64]) -> Result<Vec<BigInt>, AbelianError> {
        self.project(&abelian::big(x))
    }

    /// Diagonal relation matrix for the torsion generators (t × torsion count).
    pub fn relations(&self) -> IntMatrix {
        let t = self.generators();
        let k = self.torsion_generators();
        let mut r = IntMatrix::zeros(t, k);
        for i in 0..k {
            r[(i, i)] = self.moduli[i].clone();
        }
        r
    }
}

fn rational_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let v = &a[c][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn lcm_denominators(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

impl BasedRootDatum {
    pub fn new(rank: usize, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<Self, RootDataError> {
        let rd = BasedRootDatum { rank, simple_roots, simple_coroots };
        rd.validate()?;
        Ok(rd)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// C[i][j] = ⟨α_i, α_j∨⟩.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_roots
            .iter()
            .map(|a| self.simple_coroots.iter().map(|c| dot(a, c)).collect())
            .collect()
    }

    pub fn validate(&self) -> Result<(), Diagnostic> {
        let l = self.simple_roots.len();
        if self.simple_coroots.len() != l {
            return Err(Diagnostic::CountMismatch { count: l, coroots: self.simple_coroots.len() });
        }
        for (index, v) in self.simple_roots.iter().chain(&self.simple_coroots).enumerate() {
            if v.len() != self.rank {
                return Err(Diagnostic::LengthMismatch { index, len: v.len(), rank: self.rank });
            }
        }
        let c = self.cartan_matrix();
        for i in 0..l {
            if c[i][i] != 2 {
                return Err(Diagnostic::PairingNotTwo { i, value: c[i][i] });
            }
        }
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                if c[i][j] > 0 {
                    return Err(Diagnostic::PositiveOffDiagonal { i, j, value: c[i][j] });
                }
                if (c[i][j] == 0) != (c[j][i] == 0) {
                    return Err(Diagnostic::ZeroPattern { i, j });
                }
            }
        }
        // symmetrize: C diag(e) symmetric with e > 0, propagated along the Dynkin graph
        let mut e: Vec<Option<BigRational>> = vec![None; l];
        for start in 0..l {
            if e[start].is_some() {
                continue;
            }
            e[start] = Some(BigRational::one());
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let ei = e[i].clone().unwrap();
                for j in 0..l {
                    if j == i || c[i][j] == 0 {
                        continue;
                    }
                    // c[i][j] e_j = c[j][i] e_i
                    let ej = &ei * BigRational::new(c[j][i].into(), c[i][j].into());
                    match &e[j] {
                        Some(x) if *x != ej => return Err(Diagnostic::NotSymmetrizable),
                        Some(_) => {}
                        None => {
                            e[j] = Some(ej);
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        let mut s: Vec<Vec<BigRational>> = (0..l)
            .map(|i| (0..l).map(|j| BigRational::from_integer(c[i][j].into()) * e[j].clone().unwrap()).collect())
            .collect();
        for k in 0..l {
            if !s[k][k].is_positive() {
                return Err(Diagnostic::NotFiniteType);
            }
            for i in k + 1..l {
                let f = &s[i][k] / &s[k][k];
                for j in k..l {
                    let v = &s[k][j] * &f;
                    s[i][j] -= v;
                }
            }
        }
        Ok(())
    }

    pub fn dual(&self) -> BasedRootDatum {
        BasedRootDatum {
            rank: self.rank,
            simple_roots: self.simple_coroots.clone(),
            simple_coroots: self.simple_roots.clone(),
        }
    }

    /// s_i(x) = x − ⟨x, α_i∨⟩ α_i
    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let p = dot(x, &self.simple_coroots[i]);
        x.iter().zip(&self.simple_roots[i]).map(|(a, b)| a - p * b).collect()
    }

    /// Reflection on X∨.
    pub fn reflect_dual(&self, i: usize, y: &[i64]) -> Vec<i64> {
        let p = dot(&self.simple_roots[i], y);
        y.iter().zip(&self.simple_coroots[i]).map(|(a, b)| a - p * b).collect()
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.simple_coroots.iter().all(|c| dot(x, c) >= 0)
    }

    /// Dominant Weyl conjugate of x.
    pub fn dominant(&self, x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        while let Some(i) = (0..self.simple_roots.len()).find(|&i| dot(&v, &self.simple_coroots[i]) < 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    /// Positive roots by reflection closure, sorted by height then coefficients.
    pub fn positive_roots(&self) -> Vec<PositiveRoot> {
        let l = self.simple_roots.len();
        let cartan = self.cartan_matrix();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out = vec![];
        let mut queue = VecDeque::new();
        for i in 0..l {
            let mut coeffs = vec![0; l];
            coeffs[i] = 1;
            seen.insert(coeffs.clone());
            queue.push_back(PositiveRoot {
                root: self.simple_roots[i].clone(),
                coroot: self.simple_coroots[i].clone(),
                coeffs,
            });
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..l {
                let p: i64 = (0..l).map(|j| b.coeffs[j] * cartan[j][i]).sum();
                let mut coeffs = b.coeffs.clone();
                coeffs[i] -= p;
                if p == 0 || coeffs.iter().any(|&c| c < 0) || seen.contains(&coeffs) {
                    continue;
                }
                seen.insert(coeffs.clone());
                queue.push_back(PositiveRoot {
                    root: self.reflect(i, &b.root),
                    coroot: self.reflect_dual(i, &b.coroot),
                    coeffs,
                });
            }
            out.push(b);
        }
        out.sort_by(|a, b| {
            let ha: i64 = a.coeffs.iter().sum();
            let hb: i64 = b.coeffs.iter().sum();
            ha.cmp(&hb).then_with(|| b.coeffs.cmp(&a.coeffs))
        });
        out
    }

    /// 2ρ̂, the sum of the positive roots.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank];
        for b in self.positive_roots() {
            for (x, y) in s.iter_mut().zip(&b.root) {
                *x += y;
            }
        }
        s
    }

    pub fn half_sum_positive_roots(&self) -> Vec<BigRational> {
        self.two_rho().into_iter().map(|x| BigRational::new(x.into(), 2.into())).collect()
    }

    /// Integral multiple of the i-th fundamental weight lying in the span of the roots.
    fn scaled_fundamental_weight(&self, i: usize) -> Vec<i64> {
        let inv = rational_inverse(&self.cartan_matrix()).expect("finite type Cartan matrix is invertible");
        let c = &inv[i];
        let scale = lcm_denominators(c);
        let mut v = vec![0i64; self.rank];
        for (k, ck) in c.iter().enumerate() {
            let ck = (ck * BigRational::from_integer(scale.clone())).to_integer().to_i64().unwrap();
            for (x, a) in v.iter_mut().zip(&self.simple_roots[k]) {
                *x += ck * a;
            }
        }
        v
    }

    fn orbit_size(&self, subset: &[usize], v: &[i64]) -> u128 {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([v.to_vec()]);
        let mut queue = VecDeque::from([v.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for &i in subset {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() as u128
    }

    /// Simple reflections and |W|. The order is |W_J · ω_j| · |W_{J∖j}| down a chain of
    /// parabolic subgroups, each orbit enumerated explicitly.
    pub fn weyl_group(&self) -> Result<WeylGroup, RootDataError> {
        self.validate()?;
        let l = self.simple_roots.len();
        let generators = (0..l)
            .map(|i| {
                (0..self.rank)
                    .map(|r| {
                        (0..self.rank)
                            .map(|c| {
                                let id = i64::from(r == c);
                                id - self.simple_roots[i][r] * self.simple_coroots[i][c]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut order: u128 = 1;
        for j in (0..l).rev() {
            let subset: Vec<usize> = (0..=j).collect();
            order *= self.orbit_size(&subset, &self.scaled_fundamental_weight(j));
        }
        Ok(WeylGroup { generators, order })
    }

    /// |W| by the orbit of a single regular dominant vector; practical only for small groups.
    pub fn weyl_order_by_regular_orbit(&self) -> u128 {
        let l = self.simple_roots.len();
        let mut v = vec![0i64; self.rank];
        for j in 0..l {
            for (x, y) in v.iter_mut().zip(self.scaled_fundamental_weight(j)) {
                *x += y;
            }
        }
        self.orbit_size(&(0..l).collect::<Vec<_>>(), &v)
    }

    pub fn center_characters(&self) -> CenterCharacters {
        let cols: Vec<Vec<BigInt>> = self.simple_roots.iter().map(|a| abelian::big(a)).collect();
        let q = IntMatrix::from_columns(self.rank, &cols).expect("roots have length rank");
        let snf = smith_normal_form(&q);
        let r = snf.rank();
        let mut rows = vec![];
        let mut moduli = vec![];
        for (i, d) in snf.invariant_factors.iter().enumerate() {
            if !d.is_one() {
                rows.push(snf.u.row(i));
                moduli.push(d.clone());
            }
        }
        for i in r..self.rank {
            rows.push(snf.u.row(i));
            moduli.push(BigInt::zero());
        }
        let projection = if rows.is_empty() {
            IntMatrix::zeros(0, self.rank)
        } else {
            IntMatrix::from_rows(&rows).expect("rows of u")
        };
        let group = FinAbGroup {
            invariant_factors: moduli.iter().filter(|m| !m.is_zero()).cloned().collect(),
            free_rank: self.rank - r,
        };
        CenterCharacters { group, projection, moduli }
    }

    /// Whether x lies in the root lattice Q.
    pub fn in_root_lattice(&self, x: &[i64]) -> bool {
        let cols: Vec<Vec<BigInt>> = self.simple_roots.iter().map(|a| abelian::big(a)).collect();
        let q = IntMatrix::from_columns(self.rank, &cols).expect("roots have length rank");
        matches!(abelian::solve(&q, &abelian::big(x)), Ok(Some(_)))
    }
}

fn cartan_of_type(family: Family, n: usize) -> Result<Vec<Vec<i64>>, RootDataError> {
    let ok = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 3,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    };
    if !ok {
        return Err(RootDataError::InvalidType { family, rank: n });
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        Family::E => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (1, 3)] {
                link(i, j);
            }
            (4..n - 1).for_each(|i| link(i, i + 1));
        }
        Family::F => (0..3).for_each(|i| link(i, i + 1)),
        Family::G => link(0, 1),
    }
    match family {
        Family::B => c[n - 2][n - 1] = -2,
        Family::C => c[n - 1][n - 2] = -2,
        Family::F => c[1][2] = -2,
        Family::G => c[1][0] = -3,
        _ => {}
    }
    Ok(c)
}

/// Standard split datum of a simple type.
///
/// Sp₂ₙ (C sc) and SO₂ₙ₊₁ (B adjoint) use e_i coordinates; every other case uses the
/// fundamental-weight basis (simply connected) or the simple-root basis (adjoint).
pub fn simple_type(family: Family, n: usize, isogeny: Isogeny) -> Result<BasedRootDatum, RootDataError> {
    let c = cartan_of_type(family, n)?;
    let e = |i: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let diff = |i: usize| -> Vec<i64> {
        let mut v = e(i);
        v[i + 1] = -1;
        v
    };
    let scaled = |k: i64, i: usize| -> Vec<i64> { e(i).into_iter().map(|x| k * x).collect() };
    let rd = match (family, isogeny) {
        (Family::C, Isogeny::SimplyConnected) => {
            let mut roots: Vec<Vec<i64>> = (0..n - 1).map(diff).collect();
            let mut coroots = roots.clone();
            roots.push(scaled(2, n - 1));
            coroots.push(e(n - 1));
            BasedRootDatum { rank: n, simple_roots: roots, simple_coroots: coroots }
        }
        (Family::B, Isogeny::Adjoint) => {
            let mut roots: Vec<Vec<i64>> = (0..n - 1).map(diff).collect();
            let mut coroots = roots.clone();
            roots.push(e(n - 1));
            coroots.push(scaled(2, n - 1));
            BasedRootDatum { rank: n, simple_roots: roots, simple_coroots: coroots }
        }
        (_, Isogeny::SimplyConnected) => BasedRootDatum {
            rank: n,
            simple_roots: c.clone(),
            simple_coroots: (0..n).map(e).collect(),
        },
        (_, Isogeny::Adjoint) => BasedRootDatum {
            rank: n,
            simple_roots: (0..n).map(e).collect(),
            simple_coroots: (0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect(),
        },
    };
    rd.validate()?;
    debug_assert_eq!(rd.cartan_matrix(), c);
    Ok(rd)
}

/// GSp₂ₙ in coordinates e₀, e₁, …, eₙ: roots e_i − e_{i+1} and 2eₙ − e₀.
pub fn gsp(n: usize) -> Result<BasedRootDatum, RootDataError> {
    if n == 0 {
        return Err(RootDataError::InvalidType { family: Family::C, rank: 0 });
    }
    let dim = n + 1;
    let mut roots = vec![];
    let mut coroots = vec![];
    for i in 1..n {
        let mut v = vec![0; dim];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(v.clone());
        coroots.push(v);
    }
    let mut a = vec![0; dim];
    a[n] = 2;
    a[0] = -1;
    let mut c = vec![0; dim];
    c[n] = 1;
    roots.push(a);
    coroots.push(c);
    BasedRootDatum::new(dim, roots, coroots)
}

/// GLₙ in standard coordinates.
pub fn gl(n: usize) -> Result<BasedRootDatum, RootDataError> {
    let roots: Vec<Vec<i64>> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    BasedRootDatum::new(n, roots.clone(), roots)
}

/// Built-in data by name: "C2.sc", "E7.ad", "GSp4", "GL3".
pub fn builtin(name: &str) -> Result<BasedRootDatum, RootDataError> {
    let unknown = || RootDataError::UnknownName(name.to_string());
    let lower = name.to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix("gsp") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if !n.is_multiple_of(2) {
            return Err(unknown());
        }
        return gsp(n / 2);
    }
    if let Some(n) = lower.strip_prefix("gl") {
        return gl(n.parse().map_err(|_| unknown())?);
    }
    let (ty, iso) = name.split_once('.').ok_or_else(unknown)?;
    let isogeny = match iso.to_ascii_lowercase().as_str() {
        "sc" | "simply_connected" => Isogeny::SimplyConnected,
        "ad" | "adjoint" => Isogeny::Adjoint,
        _ => return Err(unknown()),
    };
    let family: Family = ty.get(..1).ok_or_else(unknown)?.parse()?;
    let rank: usize = ty[1..].parse().map_err(|_| unknown())?;
    simple_type(family, rank, isogeny)
}

/// Dominant lift λ_i of the dual basis vector ν_i* through X•(T̃∨) → X•(S∨).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominantLift {
    /// Values on the basis columns of X•(T̃).
    #[serde(with = "crate::serde_util::big_vec")]
    pub values: Vec<BigInt>,
    /// ⟨λ_i, α_k⟩ for the simple roots α_k.
    #[serde(with = "crate::serde_util::big_vec")]
    pub fundamental_coords: Vec<BigInt>,
}

/// Ranks and groups along 1 → Hom(X•(Z_G),ℤ) → X•(T∨)⊕X•(Z̃∨) → X•(T̃∨) → Ext¹(X•(Z_G),ℤ) → 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectSequence {
    pub hom_rank: usize,
    pub middle_rank: usize,
    pub t_tilde_dual_rank: usize,
    pub ext1: FinAbGroup,
    pub restriction_kernel_rank: usize,
    pub restriction_cokernel: FinAbGroup,
    pub alternating_rank_sum: i64,
    pub composites_vanish: bool,
    pub exact: bool,
}

/// Z_G ↪ Z̃ in normalized coordinates.
///
/// X•(Z̃) = ℤ^z has the basis w'_1..w'_s, w_1..w_r, followed by generators mapping onto the free
/// part of X•(Z_G); the kernel of X•(Z̃) → X•(Z_G) is ⊕ d_iℤw_i ⊕ ⊕ ℤw'_j.
#[derive(Debug, Clone)]
pub struct CentralQuotientData {
    pub datum: BasedRootDatum,
    pub center: CenterCharacters,
    pub embed: IntMatrix,
    pub d: Vec<BigInt>,
    pub w: Vec<Vec<BigInt>>,
    pub w_prime: Vec<Vec<BigInt>>,
    pub w_free: Vec<Vec<BigInt>>,
    /// x ↦ coordinates of x in the normalized basis.
    pub coords: IntMatrix,
    /// Columns: a basis of X•(T̃) ⊂ X•(T) ⊕ X•(Z̃).
    pub t_tilde: IntMatrix,
    pub lambdas: Vec<DominantLift>,
    pub defect: DefectSequence,
    /// [E | R]: the embedding with the torsion relations of X•(Z_G) appended.
    presentation: IntMatrix,
}

impl CentralQuotientData {
    pub fn r(&self) -> usize {
        self.d.len()
    }

    pub fn s(&self) -> usize {
        self.w_prime.len()
    }

    pub fn z_rank(&self) -> usize {
        self.embed.cols()
    }

    /// Some x ∈ X•(Z̃) with the same image in X•(Z_G) as μ ∈ X•(T).
    pub fn z_preimage(&self, mu: &[BigInt]) -> Result<Vec<BigInt>, RootDataError> {
        if mu.len() != self.datum.rank {
            return Err(RootDataError::Length { expected: self.datum.rank, got: mu.len() });
        }
        let img = self.center.project(mu)?;
        let sol = abelian::solve(&self.presentation, &img)?.ok_or(RootDataError::EmbedNotSurjective)?;
        Ok(sol[..self.z_rank()].to_vec())
    }

    /// Coordinates (k_i mod d_i) of the image of μ in the torsion of X•(Z_G), with respect to
    /// the images w̄_i.
    pub fn center_class(&self, mu: &[BigInt]) -> Result<Vec<BigInt>, RootDataError> {
        let x = self.z_preimage(mu)?;
        let c = self.coords.mul_vec(&x)?;
        let s = self.s();
        Ok(self.d.iter().enumerate().map(|(i, d)| c[s + i].mod_floor(d)).collect())
    }

    pub fn center_class_i64(&self, mu: &[i64]) -> Result<Vec<BigInt>, RootDataError> {
        self.center_class(&abelian::big(mu))
    }

    /// Σ c_i w_i in the standard coordinates of X•(Z̃) ⊗ ℚ.
    pub fn combine_w(&self, c: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.z_rank()];
        for (ci, wi) in c.iter().zip(&self.w) {
            for (o, x) in out.iter_mut().zip(wi) {
                *o += ci * BigRational::from_integer(x.clone());
            }
        }
        out
    }

    /// Whether (χ, z) ∈ X•(T)⊗ℚ ⊕ X•(Z̃)⊗ℚ lies in X•(T̃).
    pub fn in_t_tilde(&self, chi: &[BigRational], z: &[BigRational]) -> bool {
        if chi.iter().chain(z).any(|x| !x.is_integer()) {
            return false;
        }
        let chi: Vec<BigInt> = chi.iter().map(|x| x.to_integer()).collect();
        let z: Vec<BigInt> = z.iter().map(|x| x.to_integer()).collect();
        let (Ok(a), Ok(b)) = (self.center.project(&chi), self.embed.mul_vec(&z)) else {
            return false;
        };
        let mut b = b;
        self.center.reduce(&mut b);
        a == b
    }

    /// ⟨λ_i, v⟩ for v ∈ X•(T̃) given in ambient coordinates.
    pub fn lambda_value(&self, i: usize, v: &[BigInt]) -> Result<Option<BigInt>, RootDataError> {
        let Some(c) = abelian::solve(&self.t_tilde, v)? else { return Ok(None) };
        Ok(Some(c.iter().zip(&self.lambdas[i].values).map(|(a, b)| a * b).sum()))
    }
}

/// Minimal torus extension: one G_m per generator of X•(Z_G), each mapping to its generator.
pub fn minimal_torus_extension(rd: &BasedRootDatum) -> Result<CentralQuotientData, RootDataError> {
    let t = rd.center_characters().generators();
    central_quotient_data(rd, &IntMatrix::identity(t))
}

pub fn central_quotient_data(rd: &BasedRootDatum, embed: &IntMatrix) -> Result<CentralQuotientData, RootDataError> {
    rd.validate()?;
    let center = rd.center_characters();
    let t = center.generators();
    if embed.rows() != t {
        return Err(RootDataError::EmbedShape { expected: t, got: embed.rows() });
    }
    let n = rd.rank;
    let z = embed.cols();
    let rel = center.relations();
    let presentation = embed.hcat(&rel)?;
    if !cokernel_invariants(&presentation).is_trivial() {
        return Err(RootDataError::EmbedNotSurjective);
    }

    // K = ker(X•(Z̃) → X•(Z_G)); the relation coefficients are determined, so projecting is injective
    let kfull = kernel_basis(&presentation);
    let k_cols: Vec<Vec<BigInt>> = (0..kfull.cols()).map(|j| kfull.column(j)[..z].to_vec()).collect();
    let kb = IntMatrix::from_columns(z, &k_cols)?;
    let snf = smith_normal_form(&kb);
    let k = snf.rank();
    let mut d = vec![];
    let mut w = vec![];
    let mut w_prime = vec![];
    for (i, f) in snf.invariant_factors.iter().enumerate() {
        if f.is_one() {
            w_prime.push(snf.u_inv.column(i));
        } else {
            d.push(f.clone());
            w.push(snf.u_inv.column(i));
        }
    }
    let w_free: Vec<Vec<BigInt>> = (k..z).map(|i| snf.u_inv.column(i)).collect();
    if FinAbGroup::from_orders(&d, 0) != center.group.torsion() {
        return Err(RootDataError::Internal("invariant factors disagree with the center".into()));
    }

    // X•(T̃) = {(χ, x) : π(χ) = E x}
    let mut neg_e = embed.clone();
    for i in 0..t {
        for j in 0..z {
            let v = -&neg_e[(i, j)];
            neg_e[(i, j)] = v;
        }
    }
    let full = center.projection.hcat(&neg_e)?.hcat(&rel)?;
    let tfull = kernel_basis(&full);
    let tt_cols: Vec<Vec<BigInt>> = (0..tfull.cols()).map(|j| tfull.column(j)[..n + z].to_vec()).collect();
    let t_tilde = IntMatrix::from_columns(n + z, &tt_cols)?;
    let m = t_tilde.cols();

    let defect = defect_sequence(&center, &full, &t_tilde, n + z)?;
    if !defect.exact {
        return Err(RootDataError::Internal(format!("defect sequence not exact: {defect:?}")));
    }

    let mut cqd = CentralQuotientData {
        datum: rd.clone(),
        center,
        embed: embed.clone(),
        d,
        w,
        w_prime,
        w_free,
        coords: snf.u.clone(),
        t_tilde,
        lambdas: vec![],
        defect,
        presentation,
    };
    cqd.lambdas = dominant_lifts(&cqd, m)?;
    Ok(cqd)
}

fn defect_sequence(
    center: &CenterCharacters,
    full: &IntMatrix,
    t_tilde: &IntMatrix,
    middle: usize,
) -> Result<DefectSequence, RootDataError> {
    let tors = center.torsion_generators();
    let f = center.generators() - tors;
    let restriction = t_tilde.transpose();
    let ker = kernel_basis(&restriction);
    let coker = cokernel_invariants(&restriction);
    let ext1 = abelian::ext1_to_z(&center.group);

    // Hom(X•(Z_G), ℤ): the free coordinates of (χ, x) ↦ π(χ) − E x
    let phi_cols: Vec<Vec<BigInt>> = (tors..tors + f).map(|i| full.row(i)[..middle].to_vec()).collect();
    let phi = IntMatrix::from_columns(middle, &phi_cols)?;
    let composites_vanish = restriction.mul(&phi)?.is_zero();
    let phi_snf = smith_normal_form(&phi);
    let injective = phi_snf.rank() == f;
    let saturated = phi_snf.invariant_factors.iter().all(One::is_one);
    let exact = composites_vanish && injective && saturated && ker.cols() == f && coker == ext1;
    let alternating_rank_sum = f as i64 - middle as i64 + t_tilde.cols() as i64;
    Ok(DefectSequence {
        hom_rank: f,
        middle_rank: middle,
        t_tilde_dual_rank: t_tilde.cols(),
        ext1,
        restriction_kernel_rank: ker.cols(),
        restriction_cokernel: coker,
        alternating_rank_sum,
        composites_vanish,
        exact,
    })
}

fn dominant_lifts(cqd: &CentralQuotientData, m: usize) -> Result<Vec<DominantLift>, RootDataError> {
    let n = cqd.datum.rank;
    let z = cqd.z_rank();
    let l = cqd.datum.semisimple_rank();
    let r = cqd.r();
    let in_basis = |v: Vec<BigInt>| -> Result<Vec<BigInt>, RootDataError> {
        abelian::solve(&cqd.t_tilde, &v)?
            .ok_or_else(|| RootDataError::Internal("element expected in X(T~) is not".into()))
    };
    let mut q_rows = vec![];
    for a in &cqd.datum.simple_roots {
        let mut v = abelian::big(a);
        v.extend(std::iter::repeat_n(BigInt::zero(), z));
        q_rows.push(in_basis(v)?);
    }
    let mut k_rows = vec![];
    for (di, wi) in cqd.d.iter().zip(&cqd.w) {
        let mut v = vec![BigInt::zero(); n];
        v.extend(wi.iter().map(|x| x * di));
        k_rows.push(in_basis(v)?);
    }
    for wj in &cqd.w_prime {
        let mut v = vec![BigInt::zero(); n];
        v.extend(wj.iter().cloned());
        k_rows.push(in_basis(v)?);
    }
    let a_q = if l == 0 { IntMatrix::zeros(0, m) } else { IntMatrix::from_rows(&q_rows)? };
    let a_k = if k_rows.is_empty() { IntMatrix::zeros(0, m) } else { IntMatrix::from_rows(&k_rows)? };
    let n_k = kernel_basis(&a_k);
    let l_c = a_q.mul(&n_k)?;
    let lsnf = smith_normal_form(&l_c);
    if lsnf.rank() != l {
        return Err(RootDataError::Internal("root values of lifts are not of finite index".into()));
    }
    let moduli: Vec<BigInt> = lsnf.invariant_factors.clone();
    let class_of = |c: &[BigInt]| -> Vec<BigInt> {
        let u = lsnf.u.mul_vec(c).expect("length l");
        u.iter().zip(&moduli).map(|(x, d)| x.mod_floor(d)).collect()
    };

    let mut out = vec![];
    for i in 0..r {
        let mut target = vec![BigInt::zero(); a_k.rows()];
        target[i] = BigInt::one();
        let y0 = abelian::solve(&a_k, &target)?
            .ok_or_else(|| RootDataError::Internal("no integral lift of the dual basis".into()))?;
        let c0 = a_q.mul_vec(&y0)?;
        let c = min_sum_representative(l, &class_of(&c0), &class_of, &moduli);
        let delta: Vec<BigInt> = c.iter().zip(&c0).map(|(a, b)| a - b).collect();
        let zsol = abelian::solve(&l_c, &delta)?
            .ok_or_else(|| RootDataError::Internal("representative outside the coset".into()))?;
        let shift = n_k.mul_vec(&zsol)?;
        let values: Vec<BigInt> = y0.iter().zip(&shift).map(|(a, b)| a + b).collect();
        debug_assert_eq!(a_q.mul_vec(&values)?, c);
        debug_assert_eq!(a_k.mul_vec(&values)?, target);
        out.push(DominantLift { values, fundamental_coords: c });
    }
    Ok(out)
}

/// Smallest-sum nonnegative vector in a coset of a finite-index sublattice of ℤ^l, ties broken
/// lexicographically. Classes are compared through `class_of`.
fn min_sum_representative(
    l: usize,
    target: &[BigInt],
    class_of: &dyn Fn(&[BigInt]) -> Vec<BigInt>,
    moduli: &[BigInt],
) -> Vec<BigInt> {
    if l == 0 {
        return vec![];
    }
    let unit: Vec<Vec<BigInt>> = (0..l)
        .map(|k| {
            let mut e = vec![BigInt::zero(); l];
            e[k] = BigInt::one();
            class_of(&e)
        })
        .collect();
    let add = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        a.iter().zip(b).zip(moduli).map(|((x, y), d)| (x + y).mod_floor(d)).collect()
    };
    let zero = vec![BigInt::zero(); moduli.len()];
    // reach[k][s]: classes reachable with coordinates k.. summing to exactly s
    let mut s_max = 0usize;
    let mut reach: Vec<Vec<HashSet<Vec<BigInt>>>> = vec![vec![]; l + 1];
    loop {
        for k in (0..=l).rev() {
            while reach[k].len() <= s_max {
                let s = reach[k].len();
                let mut set = HashSet::new();
                if k == l {
                    if s == 0 {
                        set.insert(zero.clone());
                    }
                } else {
                    // c_k = j, rest from coordinates k+1..
                    let mut step = zero.clone();
                    for j in 0..=s {
                        for cls in &reach[k + 1][s - j] {
                            set.insert(add(cls, &step));
                        }
                        step = add(&step, &unit[k]);
                    }
                }
                reach[k].push(set);
            }
        }
        if reach[0][s_max].contains(target) {
            break;
        }
        s_max += 1;
    }
    let mut out = vec![];
    let mut rem_class = target.to_vec();
    let mut rem = s_max;
    let neg = |c: &[BigInt]| -> Vec<BigInt> { c.iter().zip(moduli).map(|(x, d)| (-x).mod_floor(d)).collect() };
    for k in 0..l {
        let mut step = zero.clone();
        for j in 0..=rem {
            let need = add(&rem_class, &neg(&step));
            if reach[k + 1][rem - j].contains(&need) {
                out.push(BigInt::from(j));
                rem_class = need;
                rem -= j;
                break;
            }
            step = add(&step, &unit[k]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(f: Family, n: usize) -> BasedRootDatum {
        simple_type(f, n, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn validate_examples() {
        let sl2 = BasedRootDatum { rank: 1, simple_roots: vec![vec![2]], simple_coroots: vec![vec![1]] };
        assert!(sl2.validate().is_ok());
        let bad = BasedRootDatum { rank: 1, simple_roots: vec![vec![3]], simple_coroots: vec![vec![1]] };
        let err = bad.validate().unwrap_err();
        assert!(err.to_string().contains("pairing ≠ 2"));
        assert!(gsp(2).unwrap().validate().is_ok());
        let affine = BasedRootDatum {
            rank: 2,
            simple_roots: vec![vec![2, -2], vec![-2, 2]],
            simple_coroots: vec![vec![1, 0], vec![0, 1]],
        };
        assert_eq!(affine.validate(), Err(Diagnostic::NotFiniteType));
    }

    #[test]
    fn dual_involution() {
        let g = gsp(2).unwrap();
        assert_eq!(g.dual().dual(), g);
        let sl2 = sc(Family::A, 1);
        let pgl2 = sl2.dual();
        assert!(pgl2.center_characters().group.is_trivial());
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(sc(Family::A, 1).weyl_group().unwrap().order, 2);
        assert_eq!(sc(Family::C, 2).weyl_group().unwrap().order, 8);
        assert_eq!(sc(Family::G, 2).weyl_group().unwrap().order, 12);
        assert_eq!(sc(Family::E, 8).weyl_group().unwrap().order, 696_729_600);
        assert_eq!(sc(Family::F, 4).weyl_group().unwrap().order, 1152);
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::D, 4), (Family::G, 2)] {
            let rd = sc(f, n);
            assert_eq!(rd.weyl_group().unwrap().order, rd.weyl_order_by_regular_orbit());
        }
    }

    #[test]
    fn c2_orbit_of_regular_vector() {
        let rd = sc(Family::C, 2);
        assert_eq!(rd.orbit_size(&[0, 1], &[2, 1]), 8);
    }

    #[test]
    fn rho_c2() {
        let rd = sc(Family::C, 2);
        assert_eq!(rd.two_rho(), vec![4, 2]);
        let roots: HashSet<Vec<i64>> = rd.positive_roots().into_iter().map(|b| b.root).collect();
        let expect: HashSet<Vec<i64>> = [vec![1, -1], vec![0, 2], vec![1, 1], vec![2, 0]].into_iter().collect();
        assert_eq!(roots, expect);
        let a1 = sc(Family::A, 1);
        assert_eq!(a1.two_rho(), a1.simple_roots[0]);
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (Family::A, 4, 10),
            (Family::B, 3, 9),
            (Family::C, 3, 9),
            (Family::D, 4, 12),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
            (Family::F, 4, 24),
            (Family::G, 2, 6),
        ];
        for (f, n, k) in cases {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let rd = simple_type(f, n, iso).unwrap();
                let pos = rd.positive_roots();
                assert_eq!(pos.len(), k, "{f}{n}");
                for b in &pos {
                    assert_eq!(dot(&b.root, &b.coroot), 2);
                }
                assert!(rd.in_root_lattice(&rd.two_rho()));
            }
        }
    }

    #[test]
    fn simple_type_rejects() {
        assert!(simple_type(Family::E, 5, Isogeny::SimplyConnected).is_err());
        assert!(simple_type(Family::G, 3, Isogeny::Adjoint).is_err());
        assert!(builtin("Q3.sc").is_err());
        assert_eq!(builtin("C2.sc").unwrap().simple_roots, vec![vec![1, -1], vec![0, 2]]);
    }

    #[test]
    fn gsp_and_sl3_extensions() {
        let sp4 = sc(Family::C, 2);
        let cqd = central_quotient_data(&sp4, &IntMatrix::identity(1)).unwrap();
        assert_eq!(cqd.d, abelian::big(&[2]));
        assert_eq!(cqd.s(), 0);
        assert_eq!(cqd.center_class_i64(&[2, 1]).unwrap(), abelian::big(&[1]));
        let sl3 = sc(Family::A, 2);
        let cqd = minimal_torus_extension(&sl3).unwrap();
        assert_eq!(cqd.d, abelian::big(&[3]));
        let pgl3 = simple_type(Family::A, 2, Isogeny::Adjoint).unwrap();
        let cqd = central_quotient_data(&pgl3, &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(cqd.r(), 0);
        assert_eq!(cqd.s(), 2);
    }

    #[test]
    fn non_surjective_embed_rejected() {
        let sl3 = sc(Family::A, 2);
        let e = IntMatrix::from_rows(&[vec![3i64]]).unwrap();
        assert!(matches!(central_quotient_data(&sl3, &e), Err(RootDataError::EmbedNotSurjective)));
    }

    #[test]
    fn lambda_pairings() {
        for name in ["C2.sc", "A2.sc", "D4.sc", "E7.sc", "B3.sc", "A3.sc"] {
            let rd = builtin(name).unwrap();
            let cqd = minimal_torus_extension(&rd).unwrap();
            let n = rd.rank;
            for i in 0..cqd.r() {
                for j in 0..cqd.r() {
                    let mut v = vec![BigInt::zero(); n];
                    v.extend(cqd.w[j].iter().map(|x| x * &cqd.d[j]));
                    let val = cqd.lambda_value(i, &v).unwrap().unwrap();
                    assert_eq!(val, BigInt::from(i64::from(i == j)), "{name}");
                }
                assert!(cqd.lambdas[i].fundamental_coords.iter().all(|c| !c.is_negative()));
            }
            assert!(cqd.defect.exact);
            assert_eq!(cqd.defect.alternating_rank_sum, 0);
        }
    }

    #[test]
    fn gsp4_lambda_is_minimal() {
        let cqd = minimal_torus_extension(&sc(Family::C, 2)).unwrap();
        assert_eq!(cqd.lambdas[0].fundamental_coords, abelian::big(&[0, 1]));
    }

    #[test]
    fn json_schema() {
        let rd: BasedRootDatum =
            serde_json::from_str(r#"{"rank":1,"simple_roots":[[2]],"simple_coroots":[[1]]}"#).unwrap();
        assert!(rd.validate().is_ok());
    }
}
