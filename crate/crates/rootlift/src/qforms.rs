//! Rational quadratic forms: diagonalization, Hilbert and Hasse symbols, and splitting of the
//! even Clifford algebra in odd rank.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{AbelianError, IntMatrix};

#[derive(Debug, Error)]
pub enum QFormError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("form is degenerate")]
    Degenerate,
    #[error("even Clifford algebra of an even-rank form has a nontrivial center; rank {0} is not supported")]
    EvenRank(usize),
    #[error("denominator must be positive")]
    BadDenominator,
    #[error("integer {0} too large to factor by trial division")]
    TooLarge(String),
    #[error(transparent)]
    Matrix(#[from] AbelianError),
}

/// Gram matrix `gram / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QForm {
    gram: IntMatrix,
    denominator: BigInt,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QFormJson {
    Bare(IntMatrix),
    Full { gram: IntMatrix, #[serde(default)] denominator: Option<crate::serde_util::BigLit> },
}

impl<'de> Deserialize<'de> for QForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (gram, den) = match QFormJson::deserialize(d)? {
            QFormJson::Bare(g) => (g, BigInt::one()),
            QFormJson::Full { gram, denominator } => (gram, denominator.map(|b| b.0).unwrap_or_else(BigInt::one)),
        };
        QForm::with_denominator(gram, den).map_err(serde::de::Error::custom)
    }
}

impl Serialize for QForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            gram: &'a IntMatrix,
            denominator: String,
        }
        Out { gram: &self.gram, denominator: self.denominator.to_string() }.serialize(s)
    }
}

impl QForm {
    pub fn new(gram: IntMatrix) -> Result<Self, QFormError> {
        Self::with_denominator(gram, BigInt::one())
    }

    pub fn with_denominator(gram: IntMatrix, denominator: BigInt) -> Result<Self, QFormError> {
        if gram.rows() != gram.cols() {
            return Err(QFormError::NotSquare);
        }
        if gram.transpose() != gram {
            return Err(QFormError::NotSymmetric);
        }
        if !denominator.is_positive() {
            return Err(QFormError::BadDenominator);
        }
        Ok(QForm { gram, denominator })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, QFormError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let d: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
        QForm { gram: IntMatrix::diagonal(d.len(), d.len(), &d), denominator: BigInt::one() }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.gram[(i, j)].clone(), self.denominator.clone())
    }

    /// Standard positive-definite even unimodular E₈ lattice (Cartan matrix).
    pub fn e8() -> Self {
        let mut rows = vec![vec![0i64; 8]; 8];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in edges {
            rows[i][j] = -1;
            rows[j][i] = -1;
        }
        Self::from_rows(&rows).expect("E8 Gram matrix")
    }

    pub fn hyperbolic() -> Self {
        Self::from_rows(&[vec![0, 1], vec![1, 0]]).expect("U")
    }

    pub fn scaled(&self, k: i64) -> Self {
        let rows: Vec<Vec<BigInt>> = self.gram.to_rows().into_iter().map(|r| r.into_iter().map(|x| x * k).collect()).collect();
        QForm { gram: IntMatrix::from_entries(self.rank(), self.rank(), rows.concat()).unwrap(), denominator: self.denominator.clone() }
    }

    pub fn direct_sum(&self, other: &QForm) -> QForm {
        let den = self.denominator.lcm(&other.denominator);
        let (s1, s2) = (&den / &self.denominator, &den / &other.denominator);
        let n = self.rank() + other.rank();
        let mut e = vec![BigInt::zero(); n * n];
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                e[i * n + j] = &self.gram[(i, j)] * &s1;
            }
        }
        let o = self.rank();
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                e[(o + i) * n + o + j] = &other.gram[(i, j)] * &s2;
            }
        }
        QForm { gram: IntMatrix::from_entries(n, n, e).unwrap(), denominator: den }
    }

    /// (−E₈)⊕² ⊕ U⊕² ⊕ ⟨−q⟩.
    pub fn k3_primitive(q_eta: i64) -> Self {
        let ne8 = Self::e8().scaled(-1);
        ne8.direct_sum(&ne8)
            .direct_sum(&Self::hyperbolic())
            .direct_sum(&Self::hyperbolic())
            .direct_sum(&Self::diagonal(&[-q_eta]))
    }

    /// Pᵀ G P for a rational change of basis P.
    pub fn transform(&self, p: &[Vec<BigRational>]) -> QForm {
        let n = self.rank();
        let g: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for k in 0..n {
                    if p[k][i].is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        s += &p[k][i] * &g[k][l] * &p[l][j];
                    }
                }
                out[i][j] = s;
            }
        }
        from_rational_rows(&out)
    }
}

fn from_rational_rows(rows: &[Vec<BigRational>]) -> QForm {
    let n = rows.len();
    let den = rows.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let e: Vec<BigInt> = rows.iter().flatten().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    QForm { gram: IntMatrix::from_entries(n, n, e).unwrap(), denominator: den }
}

/// Rational diagonalization by symmetric Gaussian elimination.
pub fn diagonalize(q: &QForm) -> Result<Vec<BigRational>, QFormError> {
    let n = q.rank();
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| q.entry(i, j)).collect()).collect();
    let mut out = vec![];
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ← e_k + e_j gives a_kk = 2 a_kj ≠ 0
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                return Err(QFormError::Degenerate);
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// Signed squarefree representative of the square class of a nonzero rational.
pub fn square_class(x: &BigRational) -> Result<BigInt, QFormError> {
    let n = x.numer() * x.denom();
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor(&n.abs())? {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}

const TRIAL_LIMIT: u64 = 1 << 40;

/// Prime factorization of a positive integer by trial division.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>, QFormError> {
    let mut m = n.to_u128().ok_or_else(|| QFormError::TooLarge(n.to_string()))?;
    let mut out = vec![];
    let mut p: u128 = 2;
    while p * p <= m {
        if p as u64 > TRIAL_LIMIT {
            return Err(QFormError::TooLarge(n.to_string()));
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((u64::try_from(m).map_err(|_| QFormError::TooLarge(n.to_string()))?, 1));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn split_p(x: &BigInt, p: u64) -> (u32, BigInt) {
    let mut u = x.clone();
    let mut v = 0;
    let pb = BigInt::from(p);
    while !u.is_zero() && (&u % &pb).is_zero() {
        u /= &pb;
        v += 1;
    }
    (v, u)
}

fn legendre(u: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let r = u.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().unwrap()
}

/// Hilbert symbol (a, b)_v of nonzero integers.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, v: Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (al, u) = split_p(a, 2);
            let (be, w) = split_p(b, 2);
            let eps = |x: u32| ((x - 1) / 2) % 2;
            let omega = |x: u32| ((x * x - 1) / 8) % 2;
            let (u8_, w8) = (mod8(&u), mod8(&w));
            let e = eps(u8_) * eps(w8) + al * omega(w8) + be * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (al, u) = split_p(a, p);
            let (be, w) = split_p(b, p);
            let mut s = 1;
            if (al * be) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if be % 2 == 1 {
                s *= legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= legendre(&w, p);
            }
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSymbol {
    pub place: Place,
    pub value: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QFormInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    /// Signed squarefree representative of the determinant.
    pub discriminant: String,
    pub hasse: Vec<LocalSymbol>,
    pub product_formula: bool,
}

impl QFormInvariants {
    pub fn hasse_at(&self, v: Place) -> i32 {
        self.hasse.iter().find(|s| s.place == v).map(|s| s.value).unwrap_or(1)
    }
}

fn relevant_places(classes: &[BigInt]) -> Result<Vec<Place>, QFormError> {
    let mut ps: BTreeSet<u64> = BTreeSet::from([2]);
    for c in classes {
        for (p, _) in factor(&c.abs())? {
            ps.insert(p);
        }
    }
    let mut out: Vec<Place> = ps.into_iter().map(Place::Prime).collect();
    out.push(Place::Infinity);
    Ok(out)
}

fn hasse_symbol(classes: &[BigInt], v: Place) -> i32 {
    let mut s = 1;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            s *= hilbert_symbol(&classes[i], &classes[j], v);
        }
    }
    s
}

pub fn invariants(q: &QForm) -> Result<QFormInvariants, QFormError> {
    let diag = diagonalize(q)?;
    let classes = diag.iter().map(square_class).collect::<Result<Vec<_>, _>>()?;
    let pos = diag.iter().filter(|x| x.is_positive()).count();
    let disc = square_class(&diag.iter().fold(BigRational::one(), |a, b| a * b))?;
    let places = relevant_places(&classes)?;
    let hasse: Vec<LocalSymbol> = places.iter().map(|&v| LocalSymbol { place: v, value: hasse_symbol(&classes, v) }).collect();
    let product_formula = hasse.iter().map(|s| s.value).product::<i32>() == 1;
    Ok(QFormInvariants {
        rank: q.rank(),
        signature: (pos, q.rank() - pos),
        discriminant: disc.to_string(),
        hasse,
        product_formula,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliffordSplit {
    pub rank: usize,
    pub split: bool,
    /// 2^((rank − 1)/2).
    pub matrix_size: String,
    /// Local classes of C⁺(q) at the relevant places.
    pub local_classes: Vec<LocalSymbol>,
}

/// Local Brauer class of C⁺(q) for odd rank n from the Hasse symbol s and determinant d:
/// n ≡ 1: s, n ≡ 3: s·(−1,d)·(−1,−1), n ≡ 5: s·(−1,−1), n ≡ 7: s·(−1,d)  (mod 8).
pub fn even_clifford_class(classes: &[BigInt], v: Place) -> i32 {
    let n = classes.len();
    let s = hasse_symbol(classes, v);
    let d: BigInt = classes.iter().product();
    let m1 = -BigInt::one();
    let minus_d = hilbert_symbol(&m1, &d, v);
    let minus_minus = hilbert_symbol(&m1, &m1, v);
    match n % 8 {
        1 => s,
        3 => s * minus_d * minus_minus,
        5 => s * minus_minus,
        7 => s * minus_d,
        _ => unreachable!("odd rank"),
    }
}

pub fn even_clifford_split(q: &QForm) -> Result<CliffordSplit, QFormError> {
    let n = q.rank();
    if n.is_multiple_of(2) {
        return Err(QFormError::EvenRank(n));
    }
    let diag = diagonalize(q)?;
    let classes = diag.iter().map(square_class).collect::<Result<Vec<_>, _>>()?;
    let places = relevant_places(&classes)?;
    let local_classes: Vec<LocalSymbol> =
        places.iter().map(|&v| LocalSymbol { place: v, value: even_clifford_class(&classes, v) }).collect();
    Ok(CliffordSplit {
        rank: n,
        split: local_classes.iter().all(|s| s.value == 1),
        matrix_size: (BigInt::one() << ((n - 1) / 2)).to_string(),
        local_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn diagonal_examples() {
        let d = diagonalize(&QForm::hyperbolic()).unwrap();
        let cls: Vec<i64> = d.iter().map(|x| square_class(x).unwrap().to_i64().unwrap()).collect();
        // basis (e+f, e−f) gives ⟨2, −2⟩ ≅ ⟨1, −1⟩
        assert_eq!(invariants(&QForm::diagonal(&cls)).unwrap(), invariants(&QForm::diagonal(&[2, -2])).unwrap());
        assert_eq!(invariants(&QForm::diagonal(&cls)).unwrap().hasse, invariants(&QForm::diagonal(&[1, -1])).unwrap().hasse);
        let e8 = diagonalize(&QForm::e8()).unwrap();
        assert_eq!(e8.len(), 8);
        assert!(e8.iter().all(|x| x.is_positive()));
        let prod = e8.iter().fold(BigRational::one(), |a, b| a * b);
        assert_eq!(prod, BigRational::one());
        assert!(matches!(diagonalize(&QForm::diagonal(&[1, 0])), Err(QFormError::Degenerate)));
    }

    #[test]
    fn hilbert_table() {
        let m1 = b(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Infinity), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Prime(3)), 1);
        assert_eq!(hilbert_symbol(&b(2), &b(3), Place::Prime(3)), -1);
        assert_eq!(hilbert_symbol(&b(2), &b(5), Place::Prime(5)), -1);
        assert_eq!(hilbert_symbol(&b(2), &b(7), Place::Prime(7)), 1);
        assert_eq!(hilbert_symbol(&b(3), &b(3), Place::Prime(3)), -1);
        assert_eq!(hilbert_symbol(&b(2), &b(-1), Place::Prime(2)), 1);
        assert_eq!(hilbert_symbol(&b(3), &b(5), Place::Prime(2)), 1);
        assert_eq!(hilbert_symbol(&b(3), &b(3), Place::Prime(2)), -1);
    }

    #[test]
    fn invariant_examples() {
        let inv = invariants(&QForm::diagonal(&[1, 1])).unwrap();
        assert!(inv.hasse.iter().all(|s| s.value == 1));
        let inv = invariants(&QForm::diagonal(&[-1, -1])).unwrap();
        assert_eq!(inv.hasse_at(Place::Prime(2)), -1);
        assert_eq!(inv.hasse_at(Place::Infinity), -1);
        assert!(inv.product_formula);
        let uu = QForm::hyperbolic().direct_sum(&QForm::hyperbolic());
        let inv = invariants(&uu).unwrap();
        assert_eq!(inv.discriminant, "1");
        assert_eq!(inv.signature, (2, 2));
        // same as ⟨1, −1, 1, −1⟩: the single nontrivial pair is (−1, −1)
        assert_eq!(inv.hasse_at(Place::Prime(2)), -1);
        assert_eq!(inv.hasse_at(Place::Infinity), -1);
        assert!(inv.hasse.iter().filter(|s| s.value == -1).count() == 2);
    }

    #[test]
    fn k3_split() {
        for q in [2, 4, 6, 8] {
            let f = QForm::k3_primitive(q);
            assert_eq!(f.rank(), 21);
            assert_eq!(invariants(&f).unwrap().signature, (2, 19));
            let c = even_clifford_split(&f).unwrap();
            assert!(c.split, "q = {q}");
            assert_eq!(c.matrix_size, "1024");
        }
        assert!(even_clifford_split(&QForm::diagonal(&[1])).unwrap().split);
        assert!(!even_clifford_split(&QForm::diagonal(&[-1, -1, -1])).unwrap().split);
        assert!(!even_clifford_split(&QForm::diagonal(&[1, 1, 1])).unwrap().split);
        assert!(matches!(even_clifford_split(&QForm::hyperbolic()), Err(QFormError::EvenRank(2))));
    }

    #[test]
    fn json_forms() {
        let q: QForm = serde_json::from_str("[[0,1],[1,0]]").unwrap();
        assert_eq!(q, QForm::hyperbolic());
        let q: QForm = serde_json::from_str(r#"{"gram":[[1,0],[0,3]],"denominator":2}"#).unwrap();
        assert_eq!(q.entry(1, 1), BigRational::new(b(3), b(2)));
        assert!(serde_json::from_str::<QForm>("[[0,1],[2,0]]").is_err());
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(&b(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(&b(1)).unwrap(), vec![]);
        assert_eq!(square_class(&BigRational::new(b(-12), b(5))).unwrap(), b(-15));
    }
}
