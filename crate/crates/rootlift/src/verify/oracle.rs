//! Independent reference computations used to cross-check the library.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::{self, IntMatrix};
use crate::qforms::{self, Place, QForm};
use crate::rootdata::{BasedRootDatum, CentralQuotientData};

/// |det C|, the order of the center of the simply connected group.
pub fn center_order_from_cartan(rd: &BasedRootDatum) -> BigInt {
    IntMatrix::from_rows(&rd.cartan_matrix()).unwrap().det().unwrap().abs()
}

/// Weyl dimension for Sp₂g written out in e-coordinates: ρ = (g, …, 1), positive coroots
/// e_i ± e_j and e_i.
pub fn sp_weyl_dimension(lambda: &[i64]) -> BigInt {
    let g = lambda.len();
    let l: Vec<i64> = (0..g).map(|i| lambda[i] + (g - i) as i64).collect();
    let r: Vec<i64> = (0..g).map(|i| (g - i) as i64).collect();
    let mut q = BigRational::one();
    for i in 0..g {
        q *= BigRational::new(l[i].into(), r[i].into());
        for j in i + 1..g {
            q *= BigRational::new(((l[i] - l[j]) * (l[i] + l[j])).into(), ((r[i] - r[j]) * (r[i] + r[j])).into());
        }
    }
    q.to_integer()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Fraction-free elimination; exact for inputs whose minors fit in i128.
pub fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Invariant factors from gcds of k×k minors: d_k = D_k / D_{k−1}.
pub fn invariant_factors_by_minors(a: &IntMatrix) -> Vec<BigInt> {
    let mut out = vec![];
    let mut prev = BigInt::one();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let rows: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| a[(i, j)].to_i128().expect("small entries")).collect())
                    .collect();
                g = g.gcd(&BigInt::from(bareiss_det(rows)));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Whether r x + s y = n has an integer solution, by search.
pub fn bezout_search(r: i64, s: i64, n: i64) -> bool {
    let bound = 10 * (r.abs() + s.abs() + n.abs() + 1);
    (-bound..=bound).any(|x| {
        let rest = n - r * x;
        if s == 0 {
            rest == 0
        } else {
            rest % s == 0
        }
    })
}

/// Label-independence of Σ_j μ_j mod 2.
pub fn spin_parity_constant(mu: &[Vec<i64>]) -> bool {
    let p: Vec<i64> = mu.iter().map(|m| m.iter().sum::<i64>().rem_euclid(2)).collect();
    p.iter().all(|&x| x == p[0])
}

/// Membership in X•(T̃) by solving against its basis.
pub fn in_t_tilde_by_solve(cqd: &CentralQuotientData, chi: &[BigRational], z: &[BigRational]) -> bool {
    if chi.iter().chain(z).any(|x| !x.is_integer()) {
        return false;
    }
    let v: Vec<BigInt> = chi.iter().chain(z).map(|x| x.to_integer()).collect();
    matches!(abelian::solve(&cqd.t_tilde, &v), Ok(Some(_)))
}

type Blade = BTreeMap<u32, BigRational>;

/// Clifford algebra of ⟨a_1, …, a_n⟩ on the blade basis e_S.
struct Clifford {
    a: Vec<BigRational>,
}

impl Clifford {
    fn blade_mul(&self, s: u32, t: u32) -> (BigRational, u32) {
        // sign from moving each generator of t past the larger generators of s
        let mut swaps = 0;
        for j in 0..32 {
            if t >> j & 1 == 1 {
                swaps += (s >> (j + 1)).count_ones();
            }
        }
        let mut c = if swaps % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        for (i, ai) in self.a.iter().enumerate() {
            if (s & t) >> i & 1 == 1 {
                c *= ai;
            }
        }
        (c, s ^ t)
    }

    fn mul(&self, x: &Blade, y: &Blade) -> Blade {
        let mut out = Blade::new();
        for (s, c) in x {
            for (t, d) in y {
                let (k, m) = self.blade_mul(*s, *t);
                let e = out.entry(m).or_insert_with(BigRational::zero);
                *e += k * c * d;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn generator(i: usize) -> Blade {
        Blade::from([(1u32 << i, BigRational::one())])
    }

    fn scalar_of(x: &Blade) -> Option<BigRational> {
        match x.len() {
            0 => Some(BigRational::zero()),
            1 => x.get(&0).cloned(),
            _ => None,
        }
    }
}

/// Quaternion pairs (x_k, y_k) with C⁺(⟨a_1, …, a_n⟩) ≅ ⊗_k (x_k, y_k) for odd n, found from the
/// multiplication table: f_i = e_1 e_{i+1} anticommute, and u_1 u_2 u_i splits off one
/// quaternion algebra at a time.
pub fn even_clifford_quaternions(diag: &[BigRational]) -> Vec<(BigRational, BigRational)> {
    let n = diag.len();
    let cl = Clifford { a: diag.to_vec() };
    let e1 = Clifford::generator(0);
    let mut gens: Vec<Blade> = (1..n).map(|i| cl.mul(&e1, &Clifford::generator(i))).collect();
    let mut pairs = vec![];
    while gens.len() >= 2 {
        let sq: Vec<BigRational> = gens
            .iter()
            .map(|u| Clifford::scalar_of(&cl.mul(u, u)).expect("generator squares to a scalar"))
            .collect();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let mut s = cl.mul(&gens[i], &gens[j]);
                for (k, v) in cl.mul(&gens[j], &gens[i]) {
                    *s.entry(k).or_insert_with(BigRational::zero) += v;
                }
                s.retain(|_, v| !v.is_zero());
                assert!(s.is_empty(), "generators anticommute");
            }
        }
        pairs.push((sq[0].clone(), sq[1].clone()));
        let u12 = cl.mul(&gens[0], &gens[1]);
        gens = gens[2..].iter().map(|u| cl.mul(&u12, u)).collect();
    }
    pairs
}

fn valuation(x: i64, p: i64) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    let mut y = x;
    while y % p == 0 {
        y /= p;
        v += 1;
    }
    v
}

/// Local solubility of z² = a x² + b y² by search, with a cache.
#[derive(Default)]
pub struct HilbertOracle {
    cache: HashMap<(i64, i64, u64), i32>,
}

impl HilbertOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// (a, b)_v for squarefree nonzero integers.
    pub fn symbol(&mut self, a: i64, b: i64, v: Place) -> i32 {
        match v {
            Place::Infinity => {
                // z² = a x² + b y² has a nonzero real solution unless both are negative
                if a < 0 && b < 0 {
                    -1
                } else {
                    1
                }
            }
            Place::Prime(p) => {
                if let Some(&s) = self.cache.get(&(a, b, p)) {
                    return s;
                }
                let s = if p <= 7 { Self::hensel_search(a, b, p as i64) } else { Self::reduced_search(a, b, p as i64) };
                self.cache.insert((a, b, p), s);
                s
            }
        }
    }

    /// Primitive solution mod p^k with a partial derivative of valuation t, k > 2t; k = 3 for odd
    /// p and 5 for p = 2 suffices for squarefree coefficients.
    fn hensel_search(a: i64, b: i64, p: i64) -> i32 {
        let k = if p == 2 { 5 } else { 3 };
        let m = p.pow(k);
        let (am, bm) = (a.rem_euclid(m), b.rem_euclid(m));
        let vp2 = valuation(2, p);
        let (va, vb) = (valuation(a, p), valuation(b, p));
        let ok = |x: i64, y: i64, z: i64| {
            if (am * x % m * x + bm * y % m * y - z * z).rem_euclid(m) != 0 {
                return false;
            }
            let vx = if x == 0 { k } else { valuation(x, p).min(k) };
            let vy = if y == 0 { k } else { valuation(y, p).min(k) };
            let vz = if z == 0 { k } else { valuation(z, p).min(k) };
            let t = (vp2 + va + vx).min(vp2 + vb + vy).min(vp2 + vz);
            k > 2 * t
        };
        for s in 0..m {
            for t in 0..m {
                if ok(1, s, t) || ok(s, 1, t) || ok(s, t, 1) {
                    return 1;
                }
            }
        }
        -1
    }

    fn is_square_mod(x: i64, p: i64) -> bool {
        let x = x.rem_euclid(p);
        (0..p).any(|y| y * y % p == x)
    }

    /// Odd p: reduce to a congruence mod p and decide squareness by enumeration.
    fn reduced_search(a: i64, b: i64, p: i64) -> i32 {
        let (pa, pb) = (a % p == 0, b % p == 0);
        let yes = match (pa, pb) {
            (false, false) => true,
            // z² ≡ b y²: b must be a square mod p
            (true, false) => Self::is_square_mod(b, p),
            (false, true) => Self::is_square_mod(a, p),
            // z = p z′: p z′² = a′x² + b′y², so −a′b′ must be a square mod p
            (true, true) => Self::is_square_mod(-(a / p) * (b / p), p),
        };
        if yes {
            1
        } else {
            -1
        }
    }
}

fn squarefree_i64(x: &BigRational) -> i64 {
    qforms::square_class(x).unwrap().to_i64().expect("small square class")
}

fn prime_divisors(x: i64) -> Vec<u64> {
    qforms::factor(&BigInt::from(x.unsigned_abs())).unwrap().into_iter().map(|(p, _)| p).collect()
}

/// Square class of x when every prime dividing it is in `primes`.
fn squarefree_over(x: &BigRational, primes: &[u64]) -> i64 {
    let mut s = x.numer() * x.denom();
    for &p in primes {
        let p2 = BigInt::from(p * p);
        while s.is_multiple_of(&p2) {
            s /= &p2;
        }
    }
    s.to_i64().expect("squarefree over the given primes")
}

/// Splitting of C⁺(q) from the multiplication table and searched Hilbert symbols.
pub fn even_clifford_split_oracle(q: &QForm, hilbert: &mut HilbertOracle) -> bool {
    let diag = qforms::diagonalize(q).expect("nondegenerate");
    let classes: Vec<i64> = diag.iter().map(squarefree_i64).collect();
    let mut primes: Vec<u64> = classes.iter().flat_map(|&c| prime_divisors(c)).collect();
    primes.sort();
    primes.dedup();
    let reduced: Vec<BigRational> = classes.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    let pairs = even_clifford_quaternions(&reduced);
    let pairs: Vec<(i64, i64)> = pairs.iter().map(|(x, y)| (squarefree_over(x, &primes), squarefree_over(y, &primes))).collect();
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    places.extend(primes.iter().filter(|&&p| p != 2).map(|&p| Place::Prime(p)));
    places.into_iter().all(|v| pairs.iter().map(|&(x, y)| hilbert.symbol(x, y, v)).product::<i32>() == 1)
}

/// Hasse symbol at v computed with the searched Hilbert symbols.
pub fn hasse_by_search(q: &QForm, v: Place, hilbert: &mut HilbertOracle) -> i32 {
    let diag = qforms::diagonalize(q).expect("nondegenerate");
    let cls: Vec<i64> = diag.iter().map(squarefree_i64).collect();
    let mut s = 1;
    for i in 0..cls.len() {
        for j in i + 1..cls.len() {
            s *= hilbert.symbol(cls[i], cls[j], v);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn searched_symbols_match_table() {
        let mut h = HilbertOracle::new();
        for a in [-15i64, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
            for b in [-13i64, -11, -6, -3, -2, -1, 1, 2, 3, 5, 7, 22] {
                for p in [2u64, 3, 5, 7, 11, 13] {
                    let want = qforms::hilbert_symbol(&a.into(), &b.into(), Place::Prime(p));
                    assert_eq!(h.symbol(a, b, Place::Prime(p)), want, "({a},{b})_{p}");
                }
            }
        }
    }

    #[test]
    fn quaternion_pairs() {
        let r = |x: i64| BigRational::from_integer(x.into());
        let pairs = even_clifford_quaternions(&[r(-1), r(-1), r(-1)]);
        assert_eq!(pairs, vec![(r(-1), r(-1))]);
        assert!(even_clifford_quaternions(&[r(5)]).is_empty());
        assert_eq!(even_clifford_quaternions(&[r(1), r(2), r(3), r(5), r(7)]).len(), 2);
    }

    #[test]
    fn bareiss() {
        assert_eq!(bareiss_det(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(bareiss_det(vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), 6);
    }

    #[test]
    fn minors() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(invariant_factors_by_minors(&a), abelian::big(&[2, 6, 12]));
    }

    #[test]
    fn sp_dimension_formula() {
        assert_eq!(sp_weyl_dimension(&[2, 1, 0]), BigInt::from(64));
        assert_eq!(sp_weyl_dimension(&[1, 0]), BigInt::from(4));
    }
}
