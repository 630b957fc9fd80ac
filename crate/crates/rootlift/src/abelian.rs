//! Integer matrices, Smith normal form and finitely generated abelian groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ragged matrix: row {row} has {len} entries, expected {cols}")]
    Ragged { row: usize, len: usize, cols: usize },
    #[error("cocharacter map is not surjective after tensoring with Q (rank {rank} < {rows})")]
    NotSurjectiveOverQ { rank: usize, rows: usize },
    #[error("invalid integer literal {0:?}")]
    BadInteger(String),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, AbelianError> {
        if entries.len() != rows * cols {
            return Err(AbelianError::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds from rows; an empty slice gives a 0x0 matrix.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, AbelianError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(AbelianError::Ragged { row: i, len: r.len(), cols });
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, entries })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self, AbelianError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(AbelianError::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        if self.cols != other.rows {
            return Err(AbelianError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AbelianError> {
        if v.len() != self.cols {
            return Err(AbelianError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + &self[(i, j)] * &v[j]))
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        if self.rows != other.rows {
            return Err(AbelianError::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn det(&self) -> Result<BigInt, AbelianError> {
        if self.rows != self.cols {
            return Err(AbelianError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).invariant_factors.len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = q * &self[(src, c)];
            self[(dst, c)] += v;
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = q * &self[(r, src)];
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Num(i64),
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.to_rows().into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<Vec<Cell>> = Vec::deserialize(d)?;
        let mut rows = Vec::with_capacity(raw.len());
        for r in raw {
            let mut row = Vec::with_capacity(r.len());
            for c in r {
                row.push(match c {
                    Cell::Num(n) => BigInt::from(n),
                    Cell::Text(t) => t
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| serde::de::Error::custom(AbelianError::BadInteger(t.clone())))?,
                });
            }
            rows.push(row);
        }
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// `u * a * v == d`, with inverses of the unimodular factors kept alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Positive diagonal entries of `d` in order, 1s included.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form. Pivot: smallest nonzero absolute value in the remaining block, ties to the
/// lowest (row, col). The result is a pure function of the input.
pub fn smith_normal_form(a0: &IntMatrix) -> SmithForm {
    let (m, n) = (a0.rows, a0.cols);
    let mut a = a0.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Every row operation E acts as a <- E a, u <- E u, u_inv <- u_inv E^-1; columns likewise.
    macro_rules! swap_r {
        ($i:expr, $j:expr) => {{
            a.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! swap_c {
        ($i:expr, $j:expr) => {{
            a.swap_cols($i, $j);
            v.swap_cols($i, $j);
            v_inv.swap_rows($i, $j);
        }};
    }
    macro_rules! add_r {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            a.add_row($dst, $src, &q);
            u.add_row($dst, $src, &q);
            u_inv.add_col($src, $dst, &(-q));
        }};
    }
    macro_rules! add_c {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q: BigInt = $q;
            a.add_col($dst, $src, &q);
            v.add_col($dst, $src, &q);
            v_inv.add_row($src, $dst, &(-q));
        }};
    }

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_pivot(&a, t) else { break };
        swap_r!(t, pi);
        swap_c!(t, pj);
        loop {
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = &a[(i, t)] / &p;
                if !q.is_zero() {
                    add_r!(i, t, -q);
                }
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = &a[(t, j)] / &p;
                if !q.is_zero() {
                    add_c!(j, t, -q);
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // remainders are strictly smaller than the pivot: re-pivot within row/column t
                let mut best = (t, t);
                for i in t..m {
                    let x = &a[(i, t)];
                    if !x.is_zero() && x.abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = &a[(t, j)];
                    if !x.is_zero() && x.abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                swap_r!(t, best.0);
                swap_c!(t, best.1);
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => add_r!(t, i, BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    let invariant_factors =
        (0..m.min(n)).map(|i| a[(i, i)].clone()).take_while(|x| !x.is_zero()).collect();
    SmithForm { u, d: a, v, u_inv, v_inv, invariant_factors }
}

/// Finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    /// Torsion orders, each at least 2, ascending with each dividing the next.
    #[serde(with = "crate::serde_util::big_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: vec![], free_rank: 0 }
    }

    /// Canonical form of ⊕ ℤ/orders[i] ⊕ ℤ^free; orders of 0 count as free summands.
    pub fn from_orders(orders: &[BigInt], free: usize) -> Self {
        let k = orders.len();
        let diag = IntMatrix::diagonal(k, k, orders);
        let g = cokernel_invariants(&diag);
        FinAbGroup { invariant_factors: g.invariant_factors, free_rank: g.free_rank + free }
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_orders(&[BigInt::from(d)], 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn torsion(&self) -> FinAbGroup {
        FinAbGroup { invariant_factors: self.invariant_factors.clone(), free_rank: 0 }
    }

    /// The 2-torsion subgroup G[2].
    pub fn two_torsion(&self) -> FinAbGroup {
        let n = self.invariant_factors.iter().filter(|d| d.is_even()).count();
        FinAbGroup { invariant_factors: vec![BigInt::from(2); n], free_rank: 0 }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cokernel of `a`, viewed as a map into ℤ^rows.
pub fn cokernel_invariants(a: &IntMatrix) -> FinAbGroup {
    let snf = smith_normal_form(a);
    FinAbGroup {
        invariant_factors: snf.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        free_rank: a.rows - snf.rank(),
    }
}

/// Ext¹(G, ℤ): the torsion part of G.
pub fn ext1_to_z(g: &FinAbGroup) -> FinAbGroup {
    g.torsion()
}

/// Columns form a basis of the integer kernel of `a`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<Vec<BigInt>> = (r..a.cols).map(|j| snf.v.column(j)).collect();
    IntMatrix::from_columns(a.cols, &cols).expect("kernel columns have matching length")
}

/// Some integer solution of `a x = b`, if any.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, AbelianError> {
    if b.len() != a.rows {
        return Err(AbelianError::DimensionMismatch { expected: a.rows, got: b.len() });
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, c) in ub.iter().enumerate() {
        match snf.invariant_factors.get(i) {
            Some(d) => {
                if !c.is_multiple_of(d) {
                    return Ok(None);
                }
                y[i] = c / d;
            }
            None if !c.is_zero() => return Ok(None),
            None => {}
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}

/// Lifts a cocharacter `lambda` of H through a torus quotient H' → H whose map on cocharacter
/// lattices is `coch` (rank H × rank H'). The obstruction lives in the finite group coker(coch).
pub fn torus_lift(coch: &IntMatrix, lambda: &[BigInt]) -> Result<Option<Vec<BigInt>>, AbelianError> {
    let rank = coch.rank();
    if rank < coch.rows {
        return Err(AbelianError::NotSurjectiveOverQ { rank, rows: coch.rows });
    }
    let lift = solve(coch, lambda)?;
    if let Some(l) = &lift {
        debug_assert_eq!(coch.mul_vec(l)?, lambda);
    }
    Ok(lift)
}

/// Coordinates of the class of `lambda` in coker(coch) ≅ ⊕ ℤ/d_i, one entry per factor d_i > 1.
pub fn torus_lift_obstruction(
    coch: &IntMatrix,
    lambda: &[BigInt],
) -> Result<(FinAbGroup, Vec<BigInt>), AbelianError> {
    let rank = coch.rank();
    if rank < coch.rows {
        return Err(AbelianError::NotSurjectiveOverQ { rank, rows: coch.rows });
    }
    let snf = smith_normal_form(coch);
    let ub = snf.u.mul_vec(lambda)?;
    let mut orders = vec![];
    let mut class = vec![];
    for (i, d) in snf.invariant_factors.iter().enumerate() {
        if !d.is_one() {
            orders.push(d.clone());
            class.push(ub[i].mod_floor(d));
        }
    }
    Ok((FinAbGroup { invariant_factors: orders, free_rank: 0 }, class))
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        s
    }

    #[test]
    fn snf_small() {
        let s = check(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors, big(&[2, 4]));
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(2, 2));
        assert!(s.invariant_factors.is_empty());
        let s = check(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors, big(&[1, 6]));
    }

    #[test]
    fn snf_empty_shapes() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
        assert_eq!(cokernel_invariants(&IntMatrix::zeros(3, 0)).free_rank, 3);
    }

    #[test]
    fn cokernels() {
        assert_eq!(cokernel_invariants(&m(&[&[6]])), FinAbGroup::cyclic(6));
        let g = cokernel_invariants(&m(&[&[2, 0], &[0, 4], &[0, 0]]));
        assert_eq!(g.invariant_factors, big(&[2, 4]));
        assert_eq!(g.free_rank, 1);
        assert!(cokernel_invariants(&IntMatrix::identity(2)).is_trivial());
    }

    #[test]
    fn ext1() {
        assert_eq!(ext1_to_z(&FinAbGroup::cyclic(6)), FinAbGroup::cyclic(6));
        let g = FinAbGroup { invariant_factors: big(&[2]), free_rank: 1 };
        assert_eq!(ext1_to_z(&g), FinAbGroup::cyclic(2));
        assert!(ext1_to_z(&FinAbGroup::trivial()).is_trivial());
    }

    #[test]
    fn canonical_orders() {
        let g = FinAbGroup::from_orders(&big(&[4, 6, 1]), 0);
        assert_eq!(g.invariant_factors, big(&[2, 12]));
        assert_eq!(g.to_string(), "Z/2 + Z/12");
    }

    #[test]
    fn toy_lifts() {
        let q = m(&[&[2, 4]]);
        assert_eq!(torus_lift(&q, &big(&[3])).unwrap(), None);
        let q = m(&[&[2, 3]]);
        let l = torus_lift(&q, &big(&[1])).unwrap().unwrap();
        assert_eq!(q.mul_vec(&l).unwrap(), big(&[1]));
        assert_eq!(torus_lift(&q, &big(&[0])).unwrap(), Some(big(&[0, 0])));
        assert!(torus_lift(&m(&[&[0, 0]]), &big(&[0])).is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).unwrap().is_zero());
        assert_eq!(solve(&m(&[&[2]]), &big(&[3])).unwrap(), None);
    }

    #[test]
    fn det_values() {
        assert_eq!(m(&[&[2, 1], &[1, 2]]).det().unwrap(), BigInt::from(3));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn json_roundtrip() {
        let a = m(&[&[1, -2], &[3, 4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1","-2"],["3","4"]]"#);
        let b: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let c: IntMatrix = serde_json::from_str("[[1,-2],[3,4]]").unwrap();
        assert_eq!(a, c);
        assert!(serde_json::from_str::<IntMatrix>(r#"[["1"],["2","3"]]"#).is_err());
    }
}
