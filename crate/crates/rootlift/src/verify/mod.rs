//! Named reproducibility checks with per-check timing, shared by the CLI and the acceptance
//! target. Every check is deterministic given the seed.

pub mod oracle;

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{self, big, IntMatrix};
use crate::cmdata::{self, CMEmbeddingData};
use crate::heisenberg::{self, Cyclotomic};
use crate::lifting::{self, HodgeFamily, LiftMode, ParameterPair, Recipe};
use crate::qforms::{self, Place, QForm};
use crate::rootdata::{builtin, central_quotient_data, minimal_torus_extension, simple_type, Isogeny};
use crate::weights::{self, Half};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub name: String,
    pub pass: bool,
    /// The computation agreed with its oracle, regardless of timing.
    pub correct: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

type CheckFn = fn(&mut ChaCha8Rng) -> Result<String, String>;

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub limit_ms: u128,
    run: CheckFn,
}

pub const CHECKS: &[Check] = &[
    Check { id: "simple_types", name: "simple-type obstruction table", limit_ms: 5_000, run: simple_types },
    Check { id: "spin_parity", name: "spin parity criterion", limit_ms: 10_000, run: spin_parity },
    Check { id: "witness_soundness", name: "imaginary witness soundness", limit_ms: 10_000, run: witness_soundness },
    Check { id: "param_lift", name: "archimedean parameter lifting", limit_ms: 5_000, run: param_lift },
    Check { id: "torus_lift", name: "torus lifting gcd criterion", limit_ms: 1_000, run: torus_lift },
    Check { id: "dimension", name: "Weyl dimension 2^(g(g-1))", limit_ms: 30_000, run: dimension },
    Check { id: "plethysm", name: "Kuga-Satake plethysm", limit_ms: 60_000, run: plethysm },
    Check { id: "center_parity", name: "center parity", limit_ms: 5_000, run: center_parity },
    Check { id: "spin_branching", name: "spin branching", limit_ms: 30_000, run: spin_branching },
    Check { id: "k3_clifford", name: "K3 even Clifford splitting", limit_ms: 60_000, run: k3_clifford },
    Check { id: "hasse_product", name: "Hasse product formula", limit_ms: 30_000, run: hasse_product },
    Check { id: "heisenberg", name: "Heisenberg local-global gap", limit_ms: 30_000, run: heisenberg_gap },
    Check { id: "snf", name: "Smith normal form", limit_ms: 10_000, run: snf },
    Check { id: "gl1", name: "GL1 feasibility", limit_ms: 10_000, run: gl1 },
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

pub fn run_check(id: &str, seed: u64) -> Option<CheckOutcome> {
    let (index, check) = CHECKS.iter().enumerate().find(|(_, c)| c.id == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    let start = Instant::now();
    let result = (check.run)(&mut rng);
    let elapsed_ms = start.elapsed().as_millis();
    let (correct, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let detail = if correct && elapsed_ms > check.limit_ms {
        format!("{detail}; exceeded time limit")
    } else {
        detail
    };
    Some(CheckOutcome {
        id: check.id.into(),
        name: check.name.into(),
        pass: correct && elapsed_ms <= check.limit_ms,
        correct,
        detail,
        elapsed_ms,
        limit_ms: check.limit_ms,
    })
}

pub fn run_all(seed: u64) -> VerifyReport {
    let checks: Vec<CheckOutcome> = CHECKS.iter().filter_map(|c| run_check(c.id, seed)).collect();
    let pass = checks.iter().all(|c| c.pass);
    VerifyReport { seed, checks, pass }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn simple_types(_: &mut ChaCha8Rng) -> Result<String, String> {
    let rows = lifting::classify_simple_types(8).map_err(err)?;
    let unobstructed = ["A2", "A4", "A6", "A8", "E6", "E8", "F4", "G2"];
    let mut obstructed: Vec<String> = vec![];
    for n in 2..=8 {
        obstructed.push(format!("B{n}"));
        obstructed.push(format!("C{n}"));
    }
    obstructed.extend(["D4", "D6", "D8", "E7"].map(String::from));
    for name in unobstructed {
        let row = rows.iter().find(|r| r.name == name).ok_or_else(|| format!("{name} missing"))?;
        ensure(!row.obstruction_possible, || format!("{name} flagged obstruction-possible"))?;
    }
    for name in &obstructed {
        let row = rows.iter().find(|r| &r.name == name).ok_or_else(|| format!("{name} missing"))?;
        ensure(row.obstruction_possible, || format!("{name} flagged unobstructed"))?;
    }
    for row in &rows {
        let rd = simple_type(row.family, row.rank, Isogeny::SimplyConnected).map_err(err)?;
        let order = oracle::center_order_from_cartan(&rd);
        let product: BigInt = row.d.iter().product();
        ensure(product == order, || format!("{}: center order {product}, |det C| = {order}", row.name))?;
        ensure(row.obstruction_possible == order.is_even(), || format!("{}: 2-torsion disagrees with |det C|", row.name))?;
    }
    Ok(format!("{} types, {} unobstructed", rows.len(), rows.iter().filter(|r| !r.obstruction_possible).count()))
}

fn spin_parity(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut lifts = 0;
    let mut total = 0;
    for n in 1..=4 {
        let rd = weights::sp(n).map_err(err)?;
        let cqd = central_quotient_data(&rd, &IntMatrix::identity(1)).map_err(err)?;
        for _ in 0..200 {
            let labels = rng.gen_range(1..=5);
            let mu: Vec<Vec<i64>> = (0..labels).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(labels), &mu);
            let rep = lifting::geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).map_err(err)?;
            let expected = oracle::spin_parity_constant(&mu);
            ensure(rep.lift_exists() == expected, || format!("GSp{}: mu = {mu:?}, expected {expected}", 2 * n))?;
            lifts += usize::from(expected);
            total += 1;
        }
    }
    Ok(format!("{total} families agree ({lifts} lift)"))
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

/// Family over `data` whose classes satisfy the imaginary criterion: classes factor through the
/// CM restriction and θ(s) + θ(cs) is constant.
fn feasible_imaginary_family(rng: &mut ChaCha8Rng, data: &CMEmbeddingData, rank: usize, l: i64) -> Vec<Vec<i64>> {
    let m0 = random_vec(rng, rank, 4);
    let mut cm_mu: Vec<Option<Vec<i64>>> = vec![None; data.cm_labels.len()];
    for s in 0..cm_mu.len() {
        if cm_mu[s].is_some() {
            continue;
        }
        let x = random_vec(rng, rank, 4);
        let c = data.cm_conj[s];
        let y = add(&add(&m0, &scale(&x, -1)), &scale(&random_vec(rng, rank, 1), l));
        cm_mu[s] = Some(x);
        cm_mu[c] = Some(y);
    }
    (0..data.len())
        .map(|t| add(cm_mu[data.restrict[t]].as_ref().unwrap(), &scale(&random_vec(rng, rank, 1), l)))
        .collect()
}

fn witness_soundness(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let names = ["C2.sc", "A2.sc", "A3.sc", "D4.sc", "B3.sc"];
    let cqds = names
        .iter()
        .map(|n| builtin(n).map_err(err).and_then(|rd| minimal_torus_extension(&rd).map_err(err)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut accepted = 0;
    let mut tried = 0;
    while accepted < 200 {
        tried += 1;
        ensure(tried < 20_000, || format!("only {accepted} feasible instances found"))?;
        let k = rng.gen_range(0..cqds.len());
        let cqd = &cqds[k];
        let data = match rng.gen_range(0..3) {
            0 => CMEmbeddingData::cm(1),
            1 => CMEmbeddingData::cm(2),
            _ => CMEmbeddingData::general_imaginary(rng.gen_range(1..=2), rng.gen_range(1..=2)),
        };
        let rank = cqd.datum.rank;
        let l: i64 = cqd.d.iter().fold(BigInt::one(), |a, d| a.lcm(d)).try_into().map_err(err)?;
        let mu: Vec<Vec<i64>> = if rng.gen_bool(0.5) {
            feasible_imaginary_family(rng, &data, rank, l)
        } else {
            (0..data.len()).map(|_| random_vec(rng, rank, 3)).collect()
        };
        let h = HodgeFamily::from_i64(data, &mu);
        let rep = lifting::geometric_lift_exists(cqd, &h, LiftMode::Imaginary).map_err(err)?;
        let Some(w) = &rep.witness else { continue };
        for (t, c) in lifting::witness_classes(cqd, &h, w).map_err(err)?.into_iter().enumerate() {
            let zero = c.as_ref().is_some_and(|c| c.iter().all(Zero::is_zero));
            ensure(zero, || format!("{}: twisted class {c:?} at {} for mu = {mu:?}", names[k], h.data.labels[t]))?;
        }
        for i in 0..cqd.r() {
            let d: i64 = (&cqd.d[i]).try_into().map_err(err)?;
            let theta = lifting::obstruction_classes(cqd, &h).map_err(err)?;
            let ki: Vec<i64> = theta.iter().map(|t| (&t[i]).try_into().unwrap()).collect();
            let wit = cmdata::galois_char_feasible(&h.data, d, &ki).map_err(err)?;
            let ok = wit.as_ref().is_some_and(|x| cmdata::verify_galois_witness(&h.data, d, &ki, x));
            ensure(ok, || format!("{}: coordinate {i} witness does not re-verify", names[k]))?;
        }
        accepted += 1;
    }
    Ok(format!("{accepted} witnesses sound ({tried} instances sampled)"))
}

fn param_lift(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let names = ["A1.sc", "A2.sc", "A3.sc", "B2.sc", "B3.sc", "C2.sc", "C3.sc"];
    let cqds = names
        .iter()
        .map(|n| builtin(n).map_err(err).and_then(|rd| minimal_torus_extension(&rd).map_err(err)))
        .collect::<Result<Vec<_>, _>>()?;
    for _ in 0..100 {
        let k = rng.gen_range(0..cqds.len());
        let cqd = &cqds[k];
        let places = rng.gen_range(1..=3);
        let params: Vec<(String, ParameterPair)> = (0..places)
            .map(|v| {
                let mu = random_vec(rng, cqd.datum.rank, 5);
                let r = |x: &i64| BigRational::from_integer((*x).into());
                (format!("v{v}"), ParameterPair::new(mu.iter().map(r).collect(), mu.iter().map(|x| -r(x)).collect()))
            })
            .collect();
        let rep = lifting::lift_archimedean_parameter(cqd, &params, Recipe::CmTypeA, true).map_err(err)?;
        ensure(rep.l_lift_exists == Some(true), || format!("{}: {params:?} not lifted to L", names[k]))?;
        for e in &rep.entries {
            let ok = oracle::in_t_tilde_by_solve(cqd, &e.mu_tilde.chi, &e.mu_tilde.z)
                && oracle::in_t_tilde_by_solve(cqd, &e.nu_tilde.chi, &e.nu_tilde.z);
            ensure(ok, || format!("{}: lift of {} is not in X(T~)", names[k], e.label))?;
        }
    }
    let sl2 = minimal_torus_extension(&builtin("A1.sc").map_err(err)?).map_err(err)?;
    let fixture = |a: i64, b: i64| -> Result<lifting::ParamLiftReport, String> {
        let p = |x: i64| ParameterPair::new(vec![lifting::int(x)], vec![lifting::int(-x)]);
        let params = vec![("v1".to_string(), p(a)), ("v2".to_string(), p(b))];
        lifting::lift_archimedean_parameter(&sl2, &params, Recipe::FiniteOrder, true).map_err(err)
    };
    let mixed = fixture(1, 2)?;
    ensure(mixed.entries.iter().all(|e| e.lifted_classes.w), || "mixed parity lift not W-algebraic".into())?;
    ensure(mixed.l_lift_exists == Some(false), || "mixed parity reported an L-algebraic lift".into())?;
    for (a, b) in [(1, 3), (2, 4)] {
        ensure(fixture(a, b)?.l_lift_exists == Some(true), || format!("constant parity ({a}, {b}) not L-liftable"))?;
    }
    Ok("100 tempered inputs lift to L; SL2 fixtures W-not-L and L".into())
}

fn torus_lift(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut count = 0;
    for r in -10i64..=10 {
        for s in -10i64..=10 {
            let m = IntMatrix::from_rows(&[vec![r, s]]).map_err(err)?;
            for n in -10i64..=10 {
                let got = abelian::torus_lift(&m, &big(&[n]));
                if r == 0 && s == 0 {
                    ensure(got.is_err(), || "(0, 0) accepted".into())?;
                    continue;
                }
                let got = got.map_err(err)?;
                ensure(got.is_some() == oracle::bezout_search(r, s, n), || format!("r={r} s={s} n={n}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples agree; (0,0) rejected"))
}

fn dimension(_: &mut ChaCha8Rng) -> Result<String, String> {
    for g in 1..=5usize {
        let lambda = weights::ks_highest_weight(g);
        let dim = weights::weyl_dimension_int(&weights::sp(g).map_err(err)?, &lambda).map_err(err)?;
        let expected = BigInt::one() << (g * (g - 1));
        ensure(dim == expected, || format!("g={g}: {dim} != {expected}"))?;
        let closed = oracle::sp_weyl_dimension(&lambda);
        ensure(dim == closed, || format!("g={g}: closed product gives {closed}"))?;
        if g <= 3 {
            let total = weights::irrep_weight_multiset_int(&weights::sp(g).map_err(err)?, &lambda).map_err(err)?.dim();
            ensure(BigInt::from(total) == expected, || format!("g={g}: Freudenthal total {total}"))?;
        }
    }
    Ok("g = 1..5 match; Freudenthal totals match for g <= 3".into())
}

fn plethysm(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut dims = vec![];
    for g in 1..=3 {
        let rep = weights::verify_plethysm(g, weights::DEFAULT_MAX_PLETHYSM_G).map_err(err)?;
        let expected = 1u64 << (g * (2 * g - 1));
        ensure(rep.pass && rep.lhs_dim == expected, || format!("g={g}: pass={} dim={}", rep.pass, rep.lhs_dim))?;
        dims.push(rep.lhs_dim);
    }
    let pulled = weights::restrict_multiset(&weights::kuga_satake_embedding(2), &weights::spin_of_so(5, Half::Both))
        .map_err(err)?;
    let standard = weights::irrep_weight_multiset_int(&weights::sp(2).map_err(err)?, &[1, 0]).map_err(err)?;
    ensure(pulled == weights::sp_standard(2) && pulled == standard, || "KS(2) pullback is not the standard rep".into())?;
    for g in 2..=3 {
        let m = g * (g - 1);
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..m).collect();
            perm.shuffle(rng);
            let signs: Vec<i64> = (0..m).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            let f = weights::kuga_satake_embedding_with(g, &perm, &signs);
            let rep = weights::verify_kuga_satake_pullback(g, &f).map_err(err)?;
            ensure(rep.pass, || format!("g={g}: pairing {perm:?} {signs:?} fails"))?;
        }
    }
    Ok(format!("dims {dims:?}; KS(2) pullback = std; alternative pairings agree"))
}

fn center_parity(_: &mut ChaCha8Rng) -> Result<String, String> {
    for g in 1..=6usize {
        let expected = matches!(g % 4, 2 | 3);
        let got = weights::center_action_parity(g) == weights::CenterParity::CentralElementC;
        ensure(got == expected, || format!("g={g}: rule gives {expected}"))?;
        let sign = if expected { -1 } else { 1 };
        let signs: BTreeSet<i64> = if g <= 4 {
            let spin = weights::spin_of_so(weights::ks_dimension(g), Half::Both);
            let pulled = weights::restrict_multiset(&weights::kuga_satake_embedding(g), &spin).map_err(err)?;
            pulled
                .iter_doubled()
                .map(|(w, _)| if (w.iter().sum::<i64>() / 2).rem_euclid(2) == 0 { 1 } else { -1 })
                .collect()
        } else {
            weights::center_signs_by_distribution(g).into_iter().collect()
        };
        ensure(signs == BTreeSet::from([sign]), || format!("g={g}: -1 acts by {signs:?}"))?;
    }
    Ok("g = 1..6 match".into())
}

fn spin_branching(_: &mut ChaCha8Rng) -> Result<String, String> {
    let bound = weights::DEFAULT_SPIN_BOUND_LOG2;
    let mut reports = vec![];
    for (c, d) in [(3, 3), (2, 2), (2, 3), (3, 2)] {
        reports.push(weights::verify_spin_branching(c, d, bound).map_err(err)?);
    }
    for (a, t) in [(2, 3), (3, 3), (2, 2)] {
        reports.push(weights::verify_two_block_branching(a, t, bound).map_err(err)?);
    }
    reports.push(weights::verify_gl_branching(2, 2, bound).map_err(err)?);
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    if let Some(r) = reports.iter().find(|r| !r.pass) {
        return Err(format!("{} -> {} fails", r.from, r.to));
    }
    Ok(format!("{} branchings, {cases} multiset equalities", reports.len()))
}

fn random_odd_form(rng: &mut ChaCha8Rng, r: i64) -> QForm {
    loop {
        let n = [1usize, 3, 5][rng.gen_range(0..3)];
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-r..=r);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let q = QForm::from_rows(&rows).expect("symmetric");
        if !q.gram().det().expect("square").is_zero() {
            return q;
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, max_rank: usize, r: i64) -> QForm {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = rng.gen_range(-r..=r);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let q = QForm::from_rows(&rows).expect("symmetric");
        if !q.gram().det().expect("square").is_zero() {
            return q;
        }
    }
}

fn k3_clifford(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut hilbert = oracle::HilbertOracle::new();
    let k3 = qforms::even_clifford_split(&QForm::k3_primitive(2)).map_err(err)?;
    ensure(k3.split && k3.matrix_size == "1024", || format!("K3: split={} size={}", k3.split, k3.matrix_size))?;
    ensure(oracle::even_clifford_split_oracle(&QForm::k3_primitive(2), &mut hilbert), || "oracle: K3 not split".into())?;
    let mut others = vec![];
    for q in [4, 6, 8] {
        let s = qforms::even_clifford_split(&QForm::k3_primitive(q)).map_err(err)?;
        others.push(format!("q={q}: {}", if s.split { "split" } else { "non-split" }));
    }
    let mut split = 0;
    for _ in 0..500 {
        let q = random_odd_form(rng, 3);
        let got = qforms::even_clifford_split(&q).map_err(err)?.split;
        let want = oracle::even_clifford_split_oracle(&q, &mut hilbert);
        ensure(got == want, || format!("{:?}: table {got}, oracle {want}", q.gram().to_rows()))?;
        split += usize::from(got);
    }
    Ok(format!("K3 split, size 1024 ({}); 500 forms agree ({split} split)", others.join(", ")))
}

fn hasse_product(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut hilbert = oracle::HilbertOracle::new();
    for _ in 0..1000 {
        let q = random_form(rng, 6, 5);
        let inv = qforms::invariants(&q).map_err(err)?;
        ensure(inv.product_formula, || format!("{:?}: product formula fails", q.gram().to_rows()))?;
        let product: i32 = inv.hasse.iter().map(|s| s.value).product();
        ensure(product == 1, || format!("{:?}: reported symbols multiply to -1", q.gram().to_rows()))?;
        let mut searched = 1;
        for s in &inv.hasse {
            let h = oracle::hasse_by_search(&q, s.place, &mut hilbert);
            if matches!(s.place, Place::Infinity | Place::Prime(2..=7)) {
                ensure(h == s.value, || format!("{:?}: Hasse at {} is {}, search gives {h}", q.gram().to_rows(), s.place, s.value))?;
            }
            searched *= h;
        }
        for p in [2u64, 3, 5, 7] {
            let h = oracle::hasse_by_search(&q, Place::Prime(p), &mut hilbert);
            ensure(h == inv.hasse_at(Place::Prime(p)), || format!("{:?}: Hasse at {p} disagrees", q.gram().to_rows()))?;
        }
        ensure(searched == 1, || format!("{:?}: searched symbols multiply to -1", q.gram().to_rows()))?;
    }
    Ok("1000 forms satisfy the product formula; symbols at p <= 7 match search".into())
}

fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|a| a.gcd(&n) == 1).collect()
}

fn heisenberg_gap(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut pairs = 0;
    for n in [3u64, 4, 5] {
        for &a in &units(n) {
            let ra = heisenberg::rep_rho(n, a).map_err(err)?;
            ensure(ra.check_relations(), || format!("n={n} alpha={a}: relations fail"))?;
            ensure(heisenberg::character_norm(&ra) == 1, || format!("n={n} alpha={a}: not irreducible"))?;
            let c = heisenberg::projective_centralizer(&ra).map_err(err)?;
            ensure(c.order == n * n && c.equals_image, || format!("n={n}: centralizer order {}", c.order))?;
            for &b in &units(n) {
                if a == b {
                    continue;
                }
                let rb = heisenberg::rep_rho(n, b).map_err(err)?;
                let local = heisenberg::elementwise_projective_conjugate(&ra, &rb).map_err(err)?;
                let global = heisenberg::globally_twist_equivalent(&ra, &rb).map_err(err)?;
                ensure(local.all_conjugate, || format!("n={n} ({a},{b}): not locally conjugate"))?;
                ensure(!global.equivalent, || format!("n={n} ({a},{b}): globally twist-equivalent"))?;
                pairs += 1;
            }
        }
    }
    for n in 2..=12u64 {
        let cyc = Cyclotomic::new(n);
        for a in 0..n {
            let d = heisenberg::rep_determinant(&heisenberg::monomial_rep(n, a).map_err(err)?);
            let (ta, tb, tz) = heisenberg::determinant_table(n, a);
            let as_int = |x: i64| cyc.reduce(&[x]);
            for (name, got, want) in [("A", d.a, ta), ("B", d.b, tb), ("Z", d.z, tz)] {
                ensure(got.to_cyclotomic(&cyc) == as_int(want), || format!("n={n} alpha={a}: det {name} = {got}"))?;
            }
        }
    }
    Ok(format!("{pairs} unit pairs: locally conjugate, not twist-equivalent; det table n <= 12"))
}

fn snf(rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| random_vec(rng, c, 20)).collect();
        let a = IntMatrix::from_rows(&rows).map_err(err)?;
        let s = abelian::smith_normal_form(&a);
        let uav = s.u.mul(&a).and_then(|x| x.mul(&s.v)).map_err(err)?;
        ensure(uav == s.d, || format!("{rows:?}: UAV != D"))?;
        for (m, name) in [(&s.u, "U"), (&s.v, "V")] {
            ensure(m.det().map_err(err)?.abs().is_one(), || format!("{rows:?}: {name} not unimodular"))?;
        }
        for i in 0..r {
            for j in 0..c {
                let on_diag = i == j && i < s.invariant_factors.len();
                ensure(on_diag || s.d[(i, j)].is_zero(), || format!("{rows:?}: D not diagonal"))?;
            }
        }
        let f = &s.invariant_factors;
        ensure(f.iter().all(|x| x.is_positive()), || format!("{rows:?}: nonpositive factor"))?;
        ensure(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])), || format!("{rows:?}: divisibility chain"))?;
        let minors = oracle::invariant_factors_by_minors(&a);
        ensure(&minors == f, || format!("{rows:?}: minors give {minors:?}, SNF {f:?}"))?;
    }
    Ok("1000 matrices".into())
}

fn gl1(rng: &mut ChaCha8Rng) -> Result<String, String> {
    for _ in 0..500 {
        let n = rng.gen_range(2..=12i64);
        let (data, m) = if rng.gen_bool(0.5) {
            let pairs = rng.gen_range(1..=3);
            let mut m = vec![0; 2 * pairs];
            for i in 0..pairs {
                m[2 * i] = rng.gen_range(-30..=30);
                m[2 * i + 1] = -m[2 * i] + n * rng.gen_range(-3..=3);
            }
            (CMEmbeddingData::cm(pairs), m)
        } else {
            let deg = rng.gen_range(1..=4);
            (CMEmbeddingData::totally_real(deg), random_vec(rng, deg, 30))
        };
        let f = cmdata::hecke_extension_feasible(&data, n, &m).map_err(err)?;
        ensure(f.type_a, || format!("n={n} m={m:?}: type A extension reported infeasible"))?;
    }
    let mut accepted = 0;
    let mut tried = 0;
    while accepted < 500 {
        tried += 1;
        ensure(tried < 50_000, || format!("only {accepted} feasible instances"))?;
        let n = rng.gen_range(2..=12i64);
        let data = match rng.gen_range(0..3) {
            0 => CMEmbeddingData::cm(rng.gen_range(1..=3)),
            1 => CMEmbeddingData::general_imaginary(rng.gen_range(1..=2), rng.gen_range(1..=3)),
            _ => CMEmbeddingData::totally_real(rng.gen_range(1..=4)),
        };
        let k: Vec<i64> = if rng.gen_bool(0.7) {
            feasible_imaginary_family(rng, &data, 1, n).into_iter().map(|v| v[0]).collect()
        } else {
            random_vec(rng, data.len(), 20)
        };
        let Some(w) = cmdata::galois_char_feasible(&data, n, &k).map_err(err)? else { continue };
        ensure(cmdata::verify_galois_witness(&data, n, &k, &w), || format!("n={n} k={k:?}: witness fails"))?;
        for t in 0..data.len() {
            let x = &w.witness[t] - BigRational::new(k[t].into(), n.into());
            ensure(x.is_integer(), || format!("n={n} k={k:?}: weight {t} has the wrong class"))?;
        }
        accepted += 1;
    }
    Ok(format!("500 type A checks; {accepted} Galois witnesses re-verify ({tried} sampled)"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique() {
        let ids: BTreeSet<&str> = check_ids().into_iter().collect();
        assert_eq!(ids.len(), CHECKS.len());
        assert!(run_check("nope", 1).is_none());
    }

    #[test]
    fn quick_checks() {
        for id in ["simple_types", "torus_lift", "center_parity"] {
            let out = run_check(id, DEFAULT_SEED).unwrap();
            assert!(out.correct, "{}", out.detail);
        }
    }
}
