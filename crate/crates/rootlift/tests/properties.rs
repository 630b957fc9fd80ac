use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use rootlift::abelian::{big, smith_normal_form, IntMatrix};
use rootlift::cmdata::CMEmbeddingData;
use rootlift::lifting::{self, HodgeFamily, LiftMode, ParameterPair, Recipe};
use rootlift::qforms::{self, QForm};
use rootlift::rootdata::{builtin, minimal_torus_extension, simple_type, Family, Isogeny};
use rootlift::weights::{self, LatticeMap, WeightMultiset};

const TYPES: &[&str] = &["A1.sc", "A2.sc", "A3.sc", "B2.sc", "B3.sc", "C2.sc", "C3.sc", "D4.sc", "A3.ad"];

fn matrix(max: usize, r: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(m, n)| prop::collection::vec(prop::collection::vec(-r..=r, n), m))
}

fn symmetric(n: usize, r: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-r..=r, n * (n + 1) / 2).prop_map(move |v| {
        let mut m = vec![vec![0; n]; n];
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_factorization(rows in matrix(5, 15)) {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        prop_assert!(s.invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        prop_assert_eq!(s.rank(), a.rank());
    }

    #[test]
    fn theta_ignores_root_lattice(k in 0..TYPES.len(), mu in prop::collection::vec(-6i64..=6, 4), c in prop::collection::vec(-3i64..=3, 4)) {
        let rd = builtin(TYPES[k]).unwrap();
        let cqd = minimal_torus_extension(&rd).unwrap();
        let n = rd.rank;
        let mu = &mu[..n];
        let mut shifted = mu.to_vec();
        for (alpha, ci) in rd.simple_roots.iter().zip(&c) {
            for (s, a) in shifted.iter_mut().zip(alpha) {
                *s += ci * a;
            }
        }
        prop_assert_eq!(cqd.center_class_i64(mu).unwrap(), cqd.center_class_i64(&shifted).unwrap());
    }

    #[test]
    fn totally_real_is_constancy_of_even_coordinates(k in 0..TYPES.len(), mus in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..5)) {
        let rd = builtin(TYPES[k]).unwrap();
        let cqd = minimal_torus_extension(&rd).unwrap();
        let mus: Vec<Vec<i64>> = mus.iter().map(|m| m[..rd.rank].to_vec()).collect();
        let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(mus.len()), &mus);
        let classes = lifting::obstruction_classes(&cqd, &h).unwrap();
        let constant = (0..cqd.r())
            .filter(|&i| cqd.d[i].is_even())
            .all(|i| classes.iter().all(|t| t[i] == classes[0][i]));
        let rep = lifting::geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).unwrap();
        prop_assert_eq!(rep.lift_exists(), constant);
        if let Some(w) = &rep.witness {
            for c in lifting::witness_classes(&cqd, &h, w).unwrap() {
                let c = c.unwrap();
                for i in (0..cqd.r()).filter(|&i| cqd.d[i].is_even()) {
                    prop_assert!(c[i].is_zero());
                }
            }
        }
    }

    #[test]
    fn cm_recipe_keeps_l_algebraicity(k in 0..TYPES.len(), mus in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..4)) {
        let rd = builtin(TYPES[k]).unwrap();
        let cqd = minimal_torus_extension(&rd).unwrap();
        let r = |x: i64| BigRational::from_integer(x.into());
        let params: Vec<(String, ParameterPair)> = mus
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let m = &m[..rd.rank];
                (format!("v{i}"), ParameterPair::new(m.iter().map(|&x| r(x)).collect(), m.iter().map(|&x| r(-x)).collect()))
            })
            .collect();
        let rep = lifting::lift_archimedean_parameter(&cqd, &params, Recipe::CmTypeA, true).unwrap();
        prop_assert_eq!(rep.l_lift_exists, Some(true));
    }

    #[test]
    fn invariants_under_rational_congruence(g in symmetric(4, 4), p in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 4), den in 1i64..=3) {
        let q = QForm::from_rows(&g).unwrap();
        prop_assume!(!q.gram().det().unwrap().is_zero());
        let pm = IntMatrix::from_rows(&p).unwrap();
        prop_assume!(!pm.det().unwrap().is_zero());
        let pr: Vec<Vec<BigRational>> = p
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::new(x.into(), den.into())).collect())
            .collect();
        let before = qforms::invariants(&q).unwrap();
        let after = qforms::invariants(&q.transform(&pr)).unwrap();
        prop_assert_eq!(&before.signature, &after.signature);
        prop_assert_eq!(&before.discriminant, &after.discriminant);
        for v in [qforms::Place::Infinity, qforms::Place::Prime(2), qforms::Place::Prime(3), qforms::Place::Prime(5), qforms::Place::Prime(7)] {
            prop_assert_eq!(before.hasse_at(v), after.hasse_at(v));
        }
        prop_assert!(after.product_formula);
    }

    #[test]
    fn restriction_keeps_dimension(ws in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 1u64..4), 1..12), m in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2)) {
        let mut w = WeightMultiset::new(3);
        for (v, k) in ws {
            w.add_doubled(v.iter().map(|x| 2 * x).collect(), k);
        }
        let f = LatticeMap::new(3, m, 1).unwrap();
        let r = weights::restrict_multiset(&f, &w).unwrap();
        prop_assert_eq!(r.dim(), w.dim());
    }

    #[test]
    fn exterior_power_dimension(ws in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..9), k in 0usize..10) {
        let w = WeightMultiset::from_integral(2, ws.clone());
        let n = ws.len() as u64;
        let binom = if (k as u64) > n { 0 } else { (0..k as u64).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) };
        prop_assert_eq!(w.exterior_power(k).dim(), binom);
    }

    #[test]
    fn freudenthal_against_weyl(k in 0..4usize, v in prop::collection::vec(0i64..=2, 3)) {
        let (family, rank) = [(Family::A, 2), (Family::B, 2), (Family::G, 2), (Family::C, 3)][k];
        let rd = simple_type(family, rank, Isogeny::SimplyConnected).unwrap();
        let lambda = rd.dominant(&v[..rank]);
        let w = weights::irrep_weight_multiset_int(&rd, &lambda).unwrap();
        prop_assert!(w.is_weyl_invariant(&rd));
        prop_assert_eq!(BigInt::from(w.dim()), weights::weyl_dimension_int(&rd, &lambda).unwrap());
    }

    #[test]
    fn torus_lift_solutions_map_back(r in -12i64..=12, s in -12i64..=12, n in -12i64..=12) {
        prop_assume!(r != 0 || s != 0);
        let m = IntMatrix::from_rows(&[vec![r, s]]).unwrap();
        if let Some(x) = rootlift::abelian::torus_lift(&m, &big(&[n])).unwrap() {
            prop_assert_eq!(m.mul_vec(&x).unwrap(), big(&[n]));
        } else {
            prop_assert!(!BigInt::from(n).is_multiple_of(&BigInt::from(r.gcd(&s))));
        }
    }
}
