//! The Heisenberg group H_n, its monomial representations ρ_α, elementwise projective conjugacy
//! versus twist equivalence, and determinants. Arithmetic is exact in ℤ[ζ_n] = ℤ[x]/Φ_n.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeisenbergError {
    #[error("n must be at least 2, got {0}")]
    SmallModulus(u64),
    #[error("alpha = {alpha} is not a unit mod {n}")]
    NotUnit { n: u64, alpha: u64 },
    #[error("representations have different moduli {0} and {1}")]
    ModulusMismatch(u64, u64),
    #[error("centralizer search is limited to n <= {0}")]
    TooLarge(u64),
}

/// Polynomial multiplication and exact division over ℤ, coefficients low to high.
fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut q = vec![0; r.len() + 1 - dl];
    for k in (0..q.len()).rev() {
        let c = r[k + dl - 1] / lead;
        q[k] = c;
        for (j, d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Φ_n by dividing xⁿ − 1 by Φ_d for the proper divisors d.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut den = vec![1i64];
    for d in 1..n {
        if n.is_multiple_of(d) {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    poly_div_exact(&num, &den)
}

/// ℤ[ζ_n] with reduced representatives in the basis 1, ζ, …, ζ^{φ(n)−1}.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    n: u64,
    powers: Vec<Vec<i64>>,
}

impl Cyclotomic {
    pub fn new(n: u64) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut powers = vec![];
        let mut cur = vec![0i64; deg.max(1)];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Φ_n
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            for i in 0..deg {
                next[i] -= top * phi[i];
            }
            cur = next;
        }
        Cyclotomic { n, powers }
    }

    pub fn degree(&self) -> usize {
        self.powers[0].len()
    }

    /// Σ_k c_k ζ^k reduced.
    pub fn reduce(&self, counts: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.degree()];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (o, p) in out.iter_mut().zip(&self.powers[k % self.n as usize]) {
                    *o += c * p;
                }
            }
        }
        out
    }

    pub fn zeta_pow(&self, k: i64) -> Vec<i64> {
        self.powers[k.rem_euclid(self.n as i64) as usize].clone()
    }

    /// The rational value of a reduced element, if it is one.
    pub fn as_integer(v: &[i64]) -> Option<i64> {
        v[1..].iter().all(|&x| x == 0).then_some(v[0])
    }
}

/// A^a B^b Z^c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HElem {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeisenbergGroup {
    pub n: u64,
}

pub fn heisenberg_group(n: u64) -> Result<HeisenbergGroup, HeisenbergError> {
    if n < 2 {
        return Err(HeisenbergError::SmallModulus(n));
    }
    Ok(HeisenbergGroup { n })
}

impl HeisenbergGroup {
    pub fn order(&self) -> u64 {
        self.n.pow(3)
    }

    pub fn identity(&self) -> HElem {
        HElem { a: 0, b: 0, c: 0 }
    }

    pub fn elements(&self) -> impl Iterator<Item = HElem> + '_ {
        let n = self.n;
        (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| HElem { a, b, c })))
    }

    /// ABA⁻¹ = ZB, so B^b A^{a'} = A^{a'} B^b Z^{−ba'}.
    pub fn mul(&self, x: HElem, y: HElem) -> HElem {
        let n = self.n;
        HElem {
            a: (x.a + y.a) % n,
            b: (x.b + y.b) % n,
            c: (x.c + y.c + n * n - (x.b * y.a) % n) % n,
        }
    }

    pub fn inv(&self, x: HElem) -> HElem {
        let n = self.n;
        // (A^a B^b Z^c)⁻¹ = A^{−a} B^{−b} Z^{−c−ab}
        HElem { a: (n - x.a) % n, b: (n - x.b) % n, c: (2 * n * n - x.c - x.a * x.b) % n }
    }

    pub fn center(&self) -> Vec<HElem> {
        self.elements().filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<HElem>> {
        let mut seen = HashSet::new();
        let mut out = vec![];
        for x in self.elements() {
            if seen.contains(&x) {
                continue;
            }
            let mut class: Vec<HElem> = self.elements().map(|g| self.mul(self.mul(g, x), self.inv(g))).collect();
            class.sort();
            class.dedup();
            for y in &class {
                seen.insert(*y);
            }
            out.push(class);
        }
        out
    }
}

/// Monomial matrix: column j carries ζ^{exps[j]} in row perm[j].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: u64,
    pub perm: Vec<usize>,
    pub exps: Vec<u64>,
}

impl Monomial {
    pub fn identity(dim: usize, n: u64) -> Self {
        Monomial { n, perm: (0..dim).collect(), exps: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let exps = other.exps.iter().zip(&other.perm).map(|(&e, &p)| (e + self.exps[p]) % self.n).collect();
        Monomial { n: self.n, perm, exps }
    }

    pub fn pow(&self, k: u64) -> Monomial {
        (0..k).fold(Monomial::identity(self.dim(), self.n), |acc, _| acc.mul(self))
    }

    pub fn inverse(&self) -> Monomial {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut exps = vec![0; d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            exps[self.perm[j]] = (self.n - self.exps[j]) % self.n;
        }
        Monomial { n: self.n, perm, exps }
    }

    pub fn scaled(&self, k: u64) -> Monomial {
        Monomial { n: self.n, perm: self.perm.clone(), exps: self.exps.iter().map(|e| (e + k) % self.n).collect() }
    }

    /// Trace as exponent counts: entry k counts the diagonal entries equal to ζ^k.
    pub fn trace_counts(&self) -> Vec<i64> {
        let mut out = vec![0; self.n as usize];
        for j in 0..self.dim() {
            if self.perm[j] == j {
                out[self.exps[j] as usize] += 1;
            }
        }
        out
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dim()];
        let mut out = vec![];
        for s in 0..self.dim() {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![];
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j);
                j = self.perm[j];
            }
            out.push(cyc);
        }
        out
    }

    /// Eigenvalues e^{2πi t} as reduced fractions t = (num, den) in [0, 1). A cycle of length L
    /// with entry product ζ^s contributes the L-th roots of ζ^s.
    pub fn eigenvalues(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        let mut out = vec![];
        for cyc in self.cycles() {
            let l = cyc.len() as i64;
            let s: i64 = cyc.iter().map(|&j| self.exps[j] as i64).sum::<i64>() % n;
            for j in 0..l {
                out.push(reduce_frac(s + j * n, n * l));
            }
        }
        out.sort();
        out
    }

    /// (sign of the permutation, k) with det = sign · ζ^k.
    pub fn determinant(&self) -> (i64, u64) {
        let sign = self.cycles().iter().map(|c| if c.len() % 2 == 0 { -1 } else { 1 }).product();
        (sign, self.exps.iter().sum::<u64>() % self.n)
    }
}

fn reduce_frac(num: i64, den: i64) -> (i64, i64) {
    let num = num.rem_euclid(den);
    let g = num.gcd(&den);
    (num / g, den / g)
}

fn shift_all(v: &[(i64, i64)], by: (i64, i64)) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = v
        .iter()
        .map(|&(p, q)| {
            let den = q.lcm(&by.1);
            reduce_frac(p * (den / q) + by.0 * (den / by.1), den)
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialRep {
    pub n: u64,
    pub alpha: u64,
    pub a: Monomial,
    pub b: Monomial,
    pub z: Monomial,
}

/// ρ_α(A)e_i = e_{i−1}, ρ_α(B)e_i = ζ^{(i−1)α}e_i, ρ_α(Z) = ζ^α (basis e_1, …, e_n), any α.
pub fn monomial_rep(n: u64, alpha: u64) -> Result<MonomialRep, HeisenbergError> {
    if n < 2 {
        return Err(HeisenbergError::SmallModulus(n));
    }
    let d = n as usize;
    let alpha = alpha % n;
    let a = Monomial { n, perm: (0..d).map(|j| (j + d - 1) % d).collect(), exps: vec![0; d] };
    let b = Monomial { n, perm: (0..d).collect(), exps: (0..n).map(|j| (j * alpha) % n).collect() };
    let z = Monomial { n, perm: (0..d).collect(), exps: vec![alpha; d] };
    Ok(MonomialRep { n, alpha, a, b, z })
}

pub fn rep_rho(n: u64, alpha: u64) -> Result<MonomialRep, HeisenbergError> {
    if n >= 2 && alpha.gcd(&n) != 1 {
        return Err(HeisenbergError::NotUnit { n, alpha });
    }
    monomial_rep(n, alpha)
}

impl MonomialRep {
    pub fn image(&self, g: HElem) -> Monomial {
        self.a.pow(g.a).mul(&self.b.pow(g.b)).mul(&self.z.pow(g.c))
    }

    pub fn group(&self) -> HeisenbergGroup {
        HeisenbergGroup { n: self.n }
    }

    /// Checks ρ(ABA⁻¹) = ζ^α ρ(B), centrality of ρ(Z), Aⁿ = Bⁿ = 1 and multiplicativity on all pairs.
    pub fn check_relations(&self) -> bool {
        let lhs = self.a.mul(&self.b).mul(&self.a.inverse());
        let rhs = self.b.scaled(self.alpha);
        let id = Monomial::identity(self.n as usize, self.n);
        let g = self.group();
        lhs == rhs
            && self.a.pow(self.n) == id
            && self.b.pow(self.n) == id
            && self.z.mul(&self.a) == self.a.mul(&self.z)
            && g.elements().all(|x| g.elements().all(|y| self.image(g.mul(x, y)) == self.image(x).mul(&self.image(y))))
    }

    fn character(&self) -> Vec<Vec<i64>> {
        self.group().elements().map(|g| self.image(g).trace_counts()).collect()
    }
}

fn check_same(r1: &MonomialRep, r2: &MonomialRep) -> Result<(), HeisenbergError> {
    if r1.n != r2.n {
        return Err(HeisenbergError::ModulusMismatch(r1.n, r2.n));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyWitness {
    pub element: HElem,
    /// The scalar e^{2πi t} with r1(g) ~ t · r2(g), as "p/q".
    pub scalar: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveConjugacy {
    pub all_conjugate: bool,
    pub witnesses: Vec<ConjugacyWitness>,
}

/// For every g, whether r1(g) and r2(g) have the same eigenvalues after a scalar shift. Both are
/// of finite order, hence diagonalizable, so this is conjugacy up to scalars.
pub fn elementwise_projective_conjugate(r1: &MonomialRep, r2: &MonomialRep) -> Result<ProjectiveConjugacy, HeisenbergError> {
    check_same(r1, r2)?;
    let mut witnesses = vec![];
    for g in r1.group().elements() {
        let e1 = r1.image(g).eigenvalues();
        let e2 = r2.image(g).eigenvalues();
        let first = e1[0];
        let scalar = e2.iter().find_map(|&u| {
            let diff = reduce_frac(first.0 * u.1 - u.0 * first.1, first.1 * u.1);
            (shift_all(&e2, diff) == e1).then_some(diff)
        });
        witnesses.push(ConjugacyWitness { element: g, scalar: scalar.map(|(p, q)| format!("{p}/{q}")) });
    }
    Ok(ProjectiveConjugacy { all_conjugate: witnesses.iter().all(|w| w.scalar.is_some()), witnesses })
}

/// ⟨χ, ψ⟩ = |G|⁻¹ Σ χ(g) ψ(g)‾ for characters given as exponent counts; `None` if not an integer.
fn inner_product(cyc: &Cyclotomic, n: u64, x: &[Vec<i64>], y: &[Vec<i64>]) -> Option<i64> {
    let nn = n as usize;
    let mut total = vec![0i64; nn];
    for (u, v) in x.iter().zip(y) {
        for (i, &p) in u.iter().enumerate() {
            if p == 0 {
                continue;
            }
            for (j, &q) in v.iter().enumerate() {
                if q != 0 {
                    total[(i + nn - j) % nn] += p * q;
                }
            }
        }
    }
    let v = Cyclotomic::as_integer(&cyc.reduce(&total))?;
    let order = (n * n * n) as i64;
    (v % order == 0).then_some(v / order)
}

fn twist(n: u64, chi: &[Vec<i64>], u: u64, v: u64) -> Vec<Vec<i64>> {
    let g = HeisenbergGroup { n };
    let nn = n as usize;
    g.elements()
        .zip(chi)
        .map(|(e, c)| {
            let k = ((u * e.a + v * e.b) % n) as usize;
            let mut out = vec![0; nn];
            for (i, &x) in c.iter().enumerate() {
                out[(i + k) % nn] += x;
            }
            out
        })
        .collect()
}

/// ⟨χ_ρ, χ_ρ⟩.
pub fn character_norm(r: &MonomialRep) -> i64 {
    let cyc = Cyclotomic::new(r.n);
    let chi = r.character();
    inner_product(&cyc, r.n, &chi, &chi).expect("character norm is an integer")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistEquivalence {
    pub equivalent: bool,
    /// (u, v) with r1 ≅ r2 ⊗ χ_{u,v}, χ_{u,v}(A^a B^b Z^c) = ζ^{ua+vb}.
    pub character: Option<(u64, u64)>,
}

/// r1 ≅ r2 ⊗ χ for a character χ of H_n^{ab}, decided by ‖χ₁ − χ₂χ‖² = 0.
pub fn globally_twist_equivalent(r1: &MonomialRep, r2: &MonomialRep) -> Result<TwistEquivalence, HeisenbergError> {
    check_same(r1, r2)?;
    let n = r1.n;
    let cyc = Cyclotomic::new(n);
    let c1 = r1.character();
    let c2 = r2.character();
    for u in 0..n {
        for v in 0..n {
            let t = twist(n, &c2, u, v);
            let diff: Vec<Vec<i64>> = c1.iter().zip(&t).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
            if inner_product(&cyc, n, &diff, &diff) == Some(0) {
                return Ok(TwistEquivalence { equivalent: true, character: Some((u, v)) });
            }
        }
    }
    Ok(TwistEquivalence { equivalent: false, character: None })
}

/// ±ζ^k, normalised so that −1 is absorbed into ζ^{n/2} when n is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity {
    pub n: u64,
    pub sign: i64,
    pub k: u64,
}

impl RootOfUnity {
    pub fn new(n: u64, sign: i64, k: u64) -> Self {
        if sign < 0 && n.is_multiple_of(2) {
            RootOfUnity { n, sign: 1, k: (k + n / 2) % n }
        } else {
            RootOfUnity { n, sign, k: k % n }
        }
    }

    pub fn to_cyclotomic(&self, cyc: &Cyclotomic) -> Vec<i64> {
        cyc.zeta_pow(self.k as i64).into_iter().map(|x| x * self.sign).collect()
    }

    /// ±1 if the value is rational.
    pub fn as_sign(&self) -> Option<i64> {
        let cyc = Cyclotomic::new(self.n);
        Cyclotomic::as_integer(&self.to_cyclotomic(&cyc))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.as_sign() {
            return write!(f, "{s}");
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}zeta^{}", self.k)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Determinants {
    pub a: RootOfUnity,
    pub b: RootOfUnity,
    pub z: RootOfUnity,
}

pub fn rep_determinant(r: &MonomialRep) -> Determinants {
    let d = |m: &Monomial| {
        let (s, k) = m.determinant();
        RootOfUnity::new(r.n, s, k)
    };
    Determinants { a: d(&r.a), b: d(&r.b), z: d(&r.z) }
}

/// A ↦ (−1)^{n−1}; B ↦ 1 if n is odd or α and n are even, −1 otherwise; Z ↦ 1.
pub fn determinant_table(n: u64, alpha: u64) -> (i64, i64, i64) {
    let a = if n % 2 == 1 { 1 } else { -1 };
    let b = if n % 2 == 1 || alpha.is_multiple_of(2) { 1 } else { -1 };
    (a, b, 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    pub n: u64,
    /// Number of projective classes of monomial matrices normalising every ρ(g) up to scalars.
    pub order: u64,
    pub equals_image: bool,
    pub cyclic_generated_by_a: bool,
}

fn normalise(m: &Monomial) -> Monomial {
    let k = (m.n - m.exps[0]) % m.n;
    m.scaled(k)
}

/// Brute force over monomial matrices with entries in μ_n; the image normalises the diagonal
/// torus, so candidates are restricted to its normaliser.
pub fn projective_centralizer(r: &MonomialRep) -> Result<CentralizerReport, HeisenbergError> {
    let n = r.n;
    if n > 5 {
        return Err(HeisenbergError::TooLarge(5));
    }
    let d = n as usize;
    let commutes_projectively = |m: &Monomial, x: &Monomial| {
        let lhs = m.mul(x);
        let rhs = x.mul(m);
        (0..n).any(|k| rhs.scaled(k) == lhs)
    };
    let mut found: HashSet<Monomial> = HashSet::new();
    let mut perm: Vec<usize> = (0..d).collect();
    let mut perms = vec![];
    permutations(&mut perm, 0, &mut perms);
    for p in perms {
        for code in 0..n.pow(n as u32 - 1) {
            let mut exps = vec![0u64; d];
            let mut c = code;
            for e in exps.iter_mut().skip(1) {
                *e = c % n;
                c /= n;
            }
            let m = Monomial { n, perm: p.clone(), exps };
            if commutes_projectively(&m, &r.a) && commutes_projectively(&m, &r.b) {
                found.insert(m);
            }
        }
    }
    let image: HashSet<Monomial> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| normalise(&r.a.pow(a).mul(&r.b.pow(b)))).collect();
    let powers_of_a: HashSet<Monomial> = (0..n).map(|a| normalise(&r.a.pow(a))).collect();
    Ok(CentralizerReport {
        n,
        order: found.len() as u64,
        equals_image: found == image,
        cyclic_generated_by_a: found == powers_of_a,
    })
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let c = Cyclotomic::new(5);
        // 1 + ζ + … + ζ⁴ = 0
        assert_eq!(c.reduce(&[1, 1, 1, 1, 1]), vec![0; 4]);
    }

    #[test]
    fn group_structure() {
        let g = heisenberg_group(2).unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        let g3 = heisenberg_group(3).unwrap();
        assert_eq!(g3.order(), 27);
        assert_eq!(g3.center().len(), 3);
        assert!(heisenberg_group(1).is_err());
        for x in g3.elements() {
            assert_eq!(g3.mul(x, g3.inv(x)), g3.identity());
        }
    }

    #[test]
    fn rho_relations() {
        let r = rep_rho(3, 1).unwrap();
        assert!(r.check_relations());
        assert_eq!(r.image(HElem { a: 0, b: 0, c: 0 }), Monomial::identity(3, 3));
        let r = rep_rho(5, 2).unwrap();
        assert_eq!(r.z, Monomial::identity(5, 5).scaled(2));
        assert!(r.check_relations());
        assert_eq!(rep_rho(4, 2), Err(HeisenbergError::NotUnit { n: 4, alpha: 2 }));
    }

    #[test]
    fn local_global() {
        for (n, x, y) in [(5, 1, 2), (4, 1, 3), (3, 1, 2)] {
            let r1 = rep_rho(n, x).unwrap();
            let r2 = rep_rho(n, y).unwrap();
            assert!(elementwise_projective_conjugate(&r1, &r2).unwrap().all_conjugate);
            assert!(!globally_twist_equivalent(&r1, &r2).unwrap().equivalent);
            assert!(globally_twist_equivalent(&r1, &r1).unwrap().equivalent);
            assert_eq!(character_norm(&r1), 1);
        }
    }

    #[test]
    fn determinants() {
        let d = rep_determinant(&monomial_rep(4, 2).unwrap());
        assert_eq!(d.b.as_sign(), Some(1));
        let d = rep_determinant(&rep_rho(4, 1).unwrap());
        assert_eq!(d.b.as_sign(), Some(-1));
        assert_eq!(d.z.as_sign(), Some(1));
        assert_eq!(d.a.as_sign(), Some(-1));
        assert_eq!(rep_determinant(&rep_rho(5, 3).unwrap()).a.as_sign(), Some(1));
    }

    #[test]
    fn centralizer_is_image() {
        for n in 2..=4 {
            let r = rep_rho(n, 1).unwrap();
            let c = projective_centralizer(&r).unwrap();
            assert_eq!(c.order, n * n);
            assert!(c.equals_image);
            assert!(!c.cyclic_generated_by_a);
        }
    }
}
