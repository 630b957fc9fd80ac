use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use rootlift::abelian::{self, big, IntMatrix};
use rootlift::cmdata::{self, CMEmbeddingData};
use rootlift::heisenberg::{self, Cyclotomic};
use rootlift::lifting::{self, HodgeFamily, LiftMode};
use rootlift::qforms::{self, Place, QForm};
use rootlift::rootdata::{builtin, minimal_torus_extension, simple_type, Family, Isogeny};
use rootlift::verify::oracle;
use rootlift::weights::{self, Half, SpinFamily, WeightMultiset};

fn r(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[test]
fn smith_examples_match_minors() {
    for rows in [vec![vec![2i64, 4], vec![6, 8]], vec![vec![6]], vec![vec![2, 0], vec![0, 4], vec![0, 0]]] {
        let a = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(abelian::smith_normal_form(&a).invariant_factors, oracle::invariant_factors_by_minors(&a));
    }
    let z = IntMatrix::zeros(2, 2);
    assert!(abelian::smith_normal_form(&z).invariant_factors.is_empty());
}

#[test]
fn toy_torus_quotient() {
    let m = IntMatrix::from_rows(&[vec![2i64, 4]]).unwrap();
    assert_eq!(abelian::torus_lift(&m, &big(&[3])).unwrap(), None);
    assert!(!oracle::bezout_search(2, 4, 3));
    let m = IntMatrix::from_rows(&[vec![2i64, 3]]).unwrap();
    let x = abelian::torus_lift(&m, &big(&[1])).unwrap().unwrap();
    assert_eq!(m.mul_vec(&x).unwrap(), big(&[1]));
    assert_eq!(abelian::torus_lift(&m, &big(&[0])).unwrap(), Some(big(&[0, 0])));
}

#[test]
fn center_orders_from_cartan() {
    for (f, n) in [(Family::A, 2), (Family::C, 3), (Family::D, 4), (Family::E, 6), (Family::E, 7), (Family::A, 4)] {
        let rd = simple_type(f, n, Isogeny::SimplyConnected).unwrap();
        let cqd = minimal_torus_extension(&rd).unwrap();
        let product: BigInt = cqd.d.iter().product();
        assert_eq!(product, oracle::center_order_from_cartan(&rd), "{f}{n}");
    }
}

#[test]
fn gsp4_obstruction_examples() {
    let cqd = rootlift::rootdata::central_quotient_data(&builtin("C2.sc").unwrap(), &IntMatrix::identity(1)).unwrap();
    let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(2), &[vec![2, 1], vec![1, 1]]);
    let rep = lifting::geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).unwrap();
    assert!(!rep.lift_exists());
    assert!(!oracle::spin_parity_constant(&[vec![2, 1], vec![1, 1]]));
    let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(2), &[vec![1, 0], vec![1, 0]]);
    assert!(lifting::geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).unwrap().lift_exists());
}

#[test]
fn sl3_never_obstructed() {
    let cqd = minimal_torus_extension(&builtin("A2.sc").unwrap()).unwrap();
    assert_eq!(cqd.d, big(&[3]));
    let h = HodgeFamily::from_i64(CMEmbeddingData::totally_real(4), &[vec![1, 0], vec![0, 0], vec![2, 1], vec![0, 1]]);
    assert!(lifting::geometric_lift_exists(&cqd, &h, LiftMode::TotallyReal).unwrap().lift_exists());
}

#[test]
fn galois_purity_examples() {
    let d = CMEmbeddingData::cm(2);
    let w = cmdata::galois_char_feasible(&d, 2, &[1, 0, 1, 0]).unwrap().unwrap();
    assert_eq!(w.w, BigInt::from(1));
    assert!(cmdata::verify_galois_witness(&d, 2, &[1, 0, 1, 0], &w));
    assert!(cmdata::galois_char_feasible(&d, 2, &[1, 0, 0, 0]).unwrap().is_none());
    let t = CMEmbeddingData::totally_real(3);
    let w = cmdata::galois_char_feasible(&t, 5, &[2, 2, 2]).unwrap().unwrap();
    assert_eq!(w.w, BigInt::from(4));
}

#[test]
fn general_imaginary_type_a_failure() {
    let d = CMEmbeddingData::general_imaginary(1, 2);
    // labels s0/0, s0/1 over s0 and s0.c/0, s0.c/1 over s0.c
    let f = cmdata::hecke_extension_feasible(&d, 5, &[1, 2, 4, 3]).unwrap();
    assert!(!f.type_a);
    let f = cmdata::hecke_extension_feasible(&d, 5, &[0, 0, 0, 0]).unwrap();
    assert!(f.type_a && f.finite_order);
}

#[test]
fn sp_weight_examples() {
    let sp2 = weights::sp(2).unwrap();
    assert_eq!(weights::irrep_weight_multiset_int(&sp2, &[1, 0]).unwrap(), weights::sp_standard(2));
    let v = weights::irrep_weight_multiset_int(&sp2, &[1, 1]).unwrap();
    let expected = WeightMultiset::from_integral(2, [vec![1, 1], vec![-1, -1], vec![1, -1], vec![-1, 1], vec![0, 0]]);
    assert_eq!(v, expected);
    let sp3 = weights::sp(3).unwrap();
    assert_eq!(weights::irrep_weight_multiset_int(&sp3, &[2, 1, 0]).unwrap().dim(), 64);
    assert_eq!(oracle::sp_weyl_dimension(&[2, 1, 0]), BigInt::from(64));
    assert_eq!(weights::weyl_dimension_int(&weights::sp(5).unwrap(), &weights::ks_highest_weight(5)).unwrap(), BigInt::from(1u64 << 20));
    // ∧² std = V_{e1+e2} + trivial
    let wedge = weights::sp_standard(2).exterior_power(2);
    assert_eq!(wedge, v.sum(&WeightMultiset::trivial(2)).unwrap());
}

#[test]
fn spin_examples() {
    assert_eq!(weights::spin_weight_multiset(2, SpinFamily::B, Half::Both).dim(), 4);
    let plus = weights::spin_weight_multiset(2, SpinFamily::D, Half::Plus);
    assert_eq!(plus, WeightMultiset::from_doubled(2, [vec![1, 1], vec![-1, -1]]));
    let d4 = simple_type(Family::D, 4, Isogeny::SimplyConnected).unwrap();
    let halves: u64 = [[0, 0, 1, 0], [0, 0, 0, 1]]
        .iter()
        .map(|l| weights::irrep_weight_multiset_int(&d4, l).unwrap().dim())
        .sum();
    assert_eq!(weights::spin_weight_multiset(4, SpinFamily::D, Half::Both).dim(), halves);
}

#[test]
fn branching_examples() {
    let so5 = weights::verify_two_block_branching(2, 3, 20).unwrap();
    assert!(so5.pass && so5.cases[0].lhs_dim == 4);
    let so6 = weights::verify_two_block_branching(3, 3, 20).unwrap();
    let both = so6.cases.iter().find(|c| c.name.contains("both")).unwrap();
    assert!(so6.pass && both.lhs_dim == 8);
    let so9 = weights::verify_spin_branching(3, 3, 20).unwrap();
    assert!(so9.pass && so9.cases[0].lhs_dim == 16);
    assert!(weights::verify_spin_branching(2, 1, 20).unwrap().pass);
    assert!(weights::verify_spin_branching(7, 7, 20).is_err());
}

#[test]
fn kuga_satake_examples() {
    let k1 = weights::verify_kuga_satake_pullback(1, &weights::kuga_satake_embedding(1)).unwrap();
    assert!(k1.pass && k1.pullback_dim == 1);
    let k3 = weights::verify_kuga_satake_pullback(3, &weights::kuga_satake_embedding(3)).unwrap();
    assert!(k3.pass && k3.pullback_dim == 128);
    assert_eq!(weights::center_action_parity(2), weights::CenterParity::CentralElementC);
    assert_eq!(weights::center_action_parity(4), weights::CenterParity::Trivial);
    assert_eq!(weights::center_action_parity(1), weights::CenterParity::Trivial);
    assert!(weights::verify_plethysm(4, 3).is_err());
}

fn isometric(a: &QForm, b: &QForm) -> bool {
    let (x, y) = (qforms::invariants(a).unwrap(), qforms::invariants(b).unwrap());
    x.signature == y.signature && x.discriminant == y.discriminant && x.hasse == y.hasse
}

#[test]
fn quadratic_form_examples() {
    assert!(isometric(&QForm::hyperbolic(), &QForm::diagonal(&[1, -1])));
    let e8 = qforms::diagonalize(&QForm::e8()).unwrap();
    assert!(e8.iter().all(|x| *x > BigRational::zero()));
    let inv = qforms::invariants(&QForm::diagonal(&[-1, -1])).unwrap();
    assert_eq!(inv.hasse_at(Place::Prime(2)), -1);
    assert_eq!(inv.hasse_at(Place::Infinity), -1);
    assert_eq!(inv.hasse_at(Place::Prime(3)), 1);
    let uu = QForm::hyperbolic().direct_sum(&QForm::hyperbolic());
    let inv = qforms::invariants(&uu).unwrap();
    assert_eq!(inv.discriminant, "1");
    // ⟨1,−1,1,−1⟩ contains the pair (−1,−1)
    let mut h = oracle::HilbertOracle::new();
    assert_eq!(inv.hasse_at(Place::Prime(2)), oracle::hasse_by_search(&uu, Place::Prime(2), &mut h));
    assert_eq!(inv.hasse_at(Place::Infinity), -1);
}

#[test]
fn clifford_examples() {
    let mut h = oracle::HilbertOracle::new();
    for (q, split) in [(QForm::diagonal(&[1]), true), (QForm::diagonal(&[-1, -1, -1]), false), (QForm::diagonal(&[1, 1, 1]), false)] {
        assert_eq!(qforms::even_clifford_split(&q).unwrap().split, split);
        assert_eq!(oracle::even_clifford_split_oracle(&q, &mut h), split);
    }
    let pairs = oracle::even_clifford_quaternions(&[r(-1), r(-1), r(-1)]);
    assert_eq!(pairs, vec![(r(-1), r(-1))]);
    let k3 = qforms::even_clifford_split(&QForm::k3_primitive(2)).unwrap();
    assert!(k3.split);
    assert_eq!(k3.matrix_size, "1024");
}

#[test]
fn heisenberg_class_equation() {
    let g = heisenberg::heisenberg_group(2).unwrap();
    let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    let g = heisenberg::heisenberg_group(3).unwrap();
    assert_eq!((g.order(), g.center().len()), (27, 3));
}

#[test]
fn heisenberg_twist_equivalence_up_to_eight() {
    for n in 3..=8u64 {
        let units: Vec<u64> = (1..n).filter(|a| num_integer::Integer::gcd(a, &n) == 1).collect();
        for &a in &units {
            let ra = heisenberg::rep_rho(n, a).unwrap();
            for &b in &units {
                let rb = heisenberg::rep_rho(n, b).unwrap();
                assert!(heisenberg::elementwise_projective_conjugate(&ra, &rb).unwrap().all_conjugate);
                assert_eq!(heisenberg::globally_twist_equivalent(&ra, &rb).unwrap().equivalent, a == b, "n={n} {a} {b}");
            }
        }
    }
}

#[test]
fn heisenberg_determinants() {
    let cyc = Cyclotomic::new(4);
    let b2 = heisenberg::rep_determinant(&heisenberg::monomial_rep(4, 2).unwrap()).b;
    assert_eq!(b2.to_cyclotomic(&cyc), cyc.reduce(&[1]));
    let b1 = heisenberg::rep_determinant(&heisenberg::rep_rho(4, 1).unwrap()).b;
    assert_eq!(b1.to_cyclotomic(&cyc), cyc.reduce(&[-1]));
    assert!(heisenberg::rep_rho(3, 1).unwrap().check_relations());
}
