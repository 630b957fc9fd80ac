use std::collections::BTreeMap;
use std::fmt::Write as _;

use rootlift::abelian::{self, IntMatrix};
use rootlift::cmdata;
use rootlift::heisenberg::{self, HeisenbergError};
use rootlift::lifting::{self, HodgeFamily, HodgeJson, LiftMode, ParameterPair, Recipe};
use rootlift::qforms::{self, QFormError};
use rootlift::serde_util::fmt_rational;
use rootlift::verify;
use rootlift::weights::{self, Half, SpinFamily, WeightError};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input;
use crate::{CliError, Command, ModeArg, RecipeArg};

pub struct Outcome {
    pub command: &'static str,
    pub report: Value,
    pub table: String,
    /// False when a verification or a lift decision failed; the process exits with 1.
    pub ok: bool,
}

fn outcome<T: Serialize>(command: &'static str, report: &T, table: String, ok: bool) -> Outcome {
    Outcome { command, report: serde_json::to_value(report).expect("report serializes"), table, ok }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn weight_err(e: WeightError) -> CliError {
    match e {
        WeightError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn heis_err(e: HeisenbergError) -> CliError {
    match e {
        HeisenbergError::TooLarge(_) => CliError::Bound(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn qform_err(e: QFormError) -> CliError {
    match e {
        QFormError::TooLarge(_) => CliError::Bound(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn rats(v: &[num_rational::BigRational]) -> String {
    format!("[{}]", v.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

pub fn dispatch(cmd: &Command, seed: u64) -> Result<Outcome, CliError> {
    match cmd {
        Command::LiftCheck { group, tilde, mode, hodge } => lift_check(group, tilde, *mode, hodge),
        Command::ParamLift { group, tilde, recipe, tempered, params } => param_lift(group, tilde, *recipe, *tempered, params),
        Command::ClassifySimpleTypes { max_rank } => classify(*max_rank),
        Command::TorusLift { coch, lambda } => torus_lift(coch, lambda),
        Command::HeckeFeasible { data, n, m } => hecke(data, *n, m),
        Command::GaloisCharFeasible { data, n, k } => galois(data, *n, k),
        Command::SpinWeights { n, family, half, max_spin_rank } => spin_weights(*n, family, half, *max_spin_rank),
        Command::Branch { from, to, max_spin_log2 } => branch(from, to, *max_spin_log2),
        Command::PlethysmCheck { g, max_g } => plethysm(*g, *max_g),
        Command::Dim { group, lambda, sp, freudenthal } => dim(group.as_deref(), lambda.as_deref(), *sp, *freudenthal),
        Command::QformInvariants { gram, builtin, q_eta } => qform_invariants(gram.as_deref(), builtin.as_deref(), *q_eta),
        Command::CliffordSplit { gram, builtin, q_eta } => clifford(gram.as_deref(), builtin.as_deref(), *q_eta),
        Command::HeisenbergDemo { n, alpha, beta } => heisenberg_demo(*n, *alpha, *beta),
        Command::VerifyPaper { only } => verify_paper(only, seed),
    }
}

fn lift_check(group: &str, tilde: &str, mode: ModeArg, hodge: &str) -> Result<Outcome, CliError> {
    let rd = input::group(group)?;
    let cqd = input::extension(&rd, tilde)?;
    let h: HodgeJson = input::json(hodge)?;
    let h = HodgeFamily::try_from(h).map_err(input_err)?;
    let mode = match mode {
        ModeArg::TotallyReal => LiftMode::TotallyReal,
        ModeArg::Imaginary => LiftMode::Imaginary,
    };
    let rep = lifting::geometric_lift_exists(&cqd, &h, mode).map_err(input_err)?;
    let mut t = String::new();
    writeln!(t, "moduli d_i: {}", list(&rep.moduli)).unwrap();
    for c in &rep.classes {
        writeln!(t, "  theta({}) = {}", c.label, list(&c.theta)).unwrap();
    }
    writeln!(t, "decision: {}", if rep.lift_exists() { "lift exists" } else { "obstructed" }).unwrap();
    if let Some(c) = &rep.certificate {
        writeln!(t, "certificate: {} vs {} at coordinate {}: {}", c.tau, c.tau_prime, c.coordinate, c.reason).unwrap();
    }
    if let Some(w) = &rep.witness {
        for l in &w.weights {
            writeln!(t, "  twist s({}) = {}", l.label, rats(&l.values)).unwrap();
        }
    }
    for n in &rep.notes {
        writeln!(t, "note: {n}").unwrap();
    }
    let ok = rep.lift_exists();
    Ok(outcome("lift-check", &rep, t, ok))
}

#[derive(Deserialize)]
struct ParamFile {
    #[serde(default)]
    tempered: bool,
    params: BTreeMap<String, ParameterPair>,
}

fn param_lift(group: &str, tilde: &str, recipe: RecipeArg, tempered: bool, path: &str) -> Result<Outcome, CliError> {
    let rd = input::group(group)?;
    let cqd = input::extension(&rd, tilde)?;
    let file: ParamFile = input::json(path)?;
    let params: Vec<(String, ParameterPair)> = file.params.into_iter().collect();
    let recipe = match recipe {
        RecipeArg::CmTypeA => Recipe::CmTypeA,
        RecipeArg::FiniteOrder => Recipe::FiniteOrder,
    };
    let rep = lifting::lift_archimedean_parameter(&cqd, &params, recipe, tempered || file.tempered).map_err(input_err)?;
    let mut t = String::new();
    for e in &rep.entries {
        writeln!(
            t,
            "{}: mu~ = ({}, {}), nu~ = ({}, {}); input {}, lift {}",
            e.label,
            rats(&e.mu_tilde.chi),
            rats(&e.mu_tilde.z),
            rats(&e.nu_tilde.chi),
            rats(&e.nu_tilde.z),
            e.input_classes,
            e.lifted_classes
        )
        .unwrap();
    }
    let verdict = match rep.l_lift_exists {
        Some(true) => "an L-algebraic lift exists",
        Some(false) => "no L-algebraic lift",
        None => "not applicable (inputs not L-algebraic)",
    };
    writeln!(t, "L-algebraic lift: {verdict}").unwrap();
    for n in &rep.notes {
        writeln!(t, "note: {n}").unwrap();
    }
    // an L-algebraic input must lift to an L-algebraic parameter under the CM recipe
    let ok = !(recipe == Recipe::CmTypeA && rep.l_lift_exists == Some(false));
    Ok(outcome("param-lift", &rep, t, ok))
}

fn classify(max_rank: usize) -> Result<Outcome, CliError> {
    let rows = lifting::classify_simple_types(max_rank).map_err(input_err)?;
    let mut t = format!("{:<6} {:<16} {:<10} {:<8} note\n", "type", "center", "2-torsion", "obstr.");
    for r in &rows {
        writeln!(t, "{:<6} {:<16} {:<10} {:<8} {}", r.name, r.center, r.two_torsion, yes(r.obstruction_possible), r.note)
            .unwrap();
    }
    Ok(outcome("classify-simple-types", &rows, t, true))
}

#[derive(Serialize)]
struct TorusLiftReport {
    lifts: bool,
    #[serde(with = "rootlift::serde_util::big_vec")]
    lift: Vec<num_bigint::BigInt>,
    cokernel: String,
    #[serde(with = "rootlift::serde_util::big_vec")]
    obstruction: Vec<num_bigint::BigInt>,
}

fn torus_lift(coch: &str, lambda: &str) -> Result<Outcome, CliError> {
    let m: IntMatrix = input::json(coch)?;
    let l = abelian::big(&input::integers(lambda)?);
    let lift = abelian::torus_lift(&m, &l).map_err(input_err)?;
    let (group, class) = abelian::torus_lift_obstruction(&m, &l).map_err(input_err)?;
    let rep = TorusLiftReport { lifts: lift.is_some(), lift: lift.unwrap_or_default(), cokernel: group.to_string(), obstruction: class };
    let mut t = format!("cokernel: {}\n", rep.cokernel);
    if rep.lifts {
        writeln!(t, "lift: {}", list(&rep.lift)).unwrap();
    } else {
        writeln!(t, "no lift; obstruction class {}", list(&rep.obstruction)).unwrap();
    }
    Ok(outcome("torus-lift", &rep, t, true))
}

fn hecke(data: &str, n: i64, m: &str) -> Result<Outcome, CliError> {
    let d = input::label_data(data)?;
    let m = input::integers(m)?;
    let f = cmdata::hecke_extension_feasible(&d, n, &m).map_err(input_err)?;
    let mut t = format!("type A: {}\nfinite order: {}\n", yes(f.type_a), yes(f.finite_order));
    if let Some(note) = &f.note {
        writeln!(t, "note: {note}").unwrap();
    }
    Ok(outcome("hecke-feasible", &f, t, true))
}

#[derive(Serialize)]
struct GaloisReport {
    feasible: bool,
    witness: Option<cmdata::GaloisCharWitness>,
    verified: Option<bool>,
}

fn galois(data: &str, n: i64, k: &str) -> Result<Outcome, CliError> {
    let d = input::label_data(data)?;
    let k = input::integers(k)?;
    let w = cmdata::galois_char_feasible(&d, n, &k).map_err(input_err)?;
    let verified = w.as_ref().map(|w| cmdata::verify_galois_witness(&d, n, &k, w));
    let mut t = format!("feasible: {}\n", yes(w.is_some()));
    if let Some(w) = &w {
        writeln!(t, "purity weight w = {} (lift {})", w.w, w.w_lift).unwrap();
        for (l, x) in d.labels.iter().zip(&w.witness) {
            writeln!(t, "  x({l}) = {}", fmt_rational(x)).unwrap();
        }
        writeln!(t, "witness re-verified: {}", yes(verified == Some(true))).unwrap();
    }
    let ok = verified != Some(false);
    Ok(outcome("galois-char-feasible", &GaloisReport { feasible: w.is_some(), witness: w, verified }, t, ok))
}

fn spin_weights(n: usize, family: &str, half: &str, max: usize) -> Result<Outcome, CliError> {
    let family: SpinFamily = family.parse().map_err(weight_err)?;
    let half: Half = half.parse().map_err(weight_err)?;
    if n > max {
        return Err(CliError::Bound(format!("spin rank {n} exceeds the bound {max}")));
    }
    let w = weights::spin_weight_multiset(n, family, half);
    let mut t = format!("dim {}, {} distinct weights\n", w.dim(), w.distinct());
    if w.distinct() <= 64 {
        writeln!(t, "{w}").unwrap();
    }
    Ok(outcome("spin-weights", &w, t, true))
}

fn so_index(s: &str) -> Option<usize> {
    s.trim().strip_prefix("so")?.parse().ok()
}

fn power(s: &str, prefix: &str) -> Option<(usize, usize)> {
    let (base, exp) = s.trim().split_once('^')?;
    Some((base.strip_prefix(prefix)?.parse().ok()?, exp.parse().ok()?))
}

fn branch(from: &str, to: &str, bound: u32) -> Result<Outcome, CliError> {
    let n = so_index(from).ok_or_else(|| CliError::Input(format!("expected so<N>, got {from:?}")))?;
    let bad = || CliError::Input(format!("cannot branch {from} to {to:?}"));
    let rep = if let Some((c, d)) = power(to, "so") {
        if c * d != n {
            return Err(bad());
        }
        weights::verify_spin_branching(c, d, bound).map_err(weight_err)?
    } else if let Some((c, d)) = power(to, "gl") {
        if 2 * c * d != n {
            return Err(bad());
        }
        weights::verify_gl_branching(c, d, bound).map_err(weight_err)?
    } else if let Some((a, t)) = to.split_once('x') {
        let (a, t) = (so_index(a).ok_or_else(bad)?, so_index(t).ok_or_else(bad)?);
        if a + t != n {
            return Err(bad());
        }
        weights::verify_two_block_branching(a, t, bound).map_err(weight_err)?
    } else {
        return Err(bad());
    };
    let mut t = String::new();
    for c in &rep.cases {
        writeln!(t, "{:<32} lhs {:>8}  rhs {:>8}  {}", c.name, c.lhs_dim, c.rhs_dim, if c.pass { "pass" } else { "FAIL" }).unwrap();
    }
    let ok = rep.pass;
    Ok(outcome("branch", &rep, t, ok))
}

#[derive(Serialize)]
struct PlethysmOutput {
    plethysm: weights::PlethysmReport,
    spin_pullback: weights::KugaSatakeReport,
}

fn plethysm(g: usize, max_g: usize) -> Result<Outcome, CliError> {
    if g == 0 {
        return Err(CliError::Input("g must be positive".into()));
    }
    let p = weights::verify_plethysm(g, max_g).map_err(weight_err)?;
    let k = weights::verify_kuga_satake_pullback(g, &weights::kuga_satake_embedding(g)).map_err(weight_err)?;
    let t = format!(
        "exterior algebra: lhs {} rhs {} ({} distinct weights): {}\nspin of so{} pulled back: dim {} = {} x V: {}\ncenter: {:?}\n",
        p.lhs_dim,
        p.rhs_dim,
        p.distinct_weights,
        if p.pass { "pass" } else { "FAIL" },
        k.n,
        k.pullback_dim,
        k.multiplicity,
        if k.pass { "pass" } else { "FAIL" },
        weights::center_action_parity(g),
    );
    let ok = p.pass && k.pass;
    Ok(outcome("plethysm-check", &PlethysmOutput { plethysm: p, spin_pullback: k }, t, ok))
}

#[derive(Serialize)]
struct DimReport {
    group: String,
    lambda: Vec<String>,
    weyl_dimension: String,
    freudenthal_dimension: Option<u64>,
}

fn dim(group: Option<&str>, lambda: Option<&str>, sp: Option<usize>, freudenthal: bool) -> Result<Outcome, CliError> {
    let (name, rd, lam) = match (group, sp) {
        (_, Some(g)) => {
            let l = weights::ks_highest_weight(g).iter().map(|&x| lifting::int(x)).collect();
            (format!("Sp{}", 2 * g), weights::sp(g).map_err(weight_err)?, l)
        }
        (Some(gr), None) => {
            let l = input::rationals(lambda.ok_or_else(|| CliError::Input("--lambda is required".into()))?)?;
            (gr.to_string(), input::group(gr)?, l)
        }
        (None, None) => return Err(CliError::Input("give --group and --lambda, or --sp".into())),
    };
    let d = weights::weyl_dimension(&rd, &lam).map_err(weight_err)?;
    let f = if freudenthal { Some(weights::irrep_weight_multiset(&rd, &lam).map_err(weight_err)?.dim()) } else { None };
    let ok = f.is_none_or(|f| num_bigint::BigInt::from(f) == d);
    let mut t = format!("{name}, lambda = {}: dimension {d}\n", rats(&lam));
    if let Some(f) = f {
        writeln!(t, "Freudenthal total: {f}").unwrap();
    }
    let rep = DimReport { group: name, lambda: lam.iter().map(fmt_rational).collect(), weyl_dimension: d.to_string(), freudenthal_dimension: f };
    Ok(outcome("dim", &rep, t, ok))
}

fn qform_invariants(path: Option<&str>, builtin: Option<&str>, q_eta: i64) -> Result<Outcome, CliError> {
    let q = input::qform(path, builtin, q_eta)?;
    let inv = qforms::invariants(&q).map_err(qform_err)?;
    let mut t = format!(
        "rank {}, signature ({}, {}), discriminant {}\n",
        inv.rank, inv.signature.0, inv.signature.1, inv.discriminant
    );
    for s in &inv.hasse {
        writeln!(t, "  eps_{} = {}", s.place, s.value).unwrap();
    }
    writeln!(t, "product formula: {}", yes(inv.product_formula)).unwrap();
    let ok = inv.product_formula;
    Ok(outcome("qform-invariants", &inv, t, ok))
}

fn clifford(path: Option<&str>, builtin: Option<&str>, q_eta: i64) -> Result<Outcome, CliError> {
    let q = input::qform(path, builtin, q_eta)?;
    let s = qforms::even_clifford_split(&q).map_err(qform_err)?;
    let mut t = format!("rank {}: {}", s.rank, if s.split { "split" } else { "non-split" });
    if s.split {
        write!(t, ", C+ = M_{}(Q)", s.matrix_size).unwrap();
    }
    t.push('\n');
    for c in &s.local_classes {
        writeln!(t, "  class at {} = {}", c.place, c.value).unwrap();
    }
    Ok(outcome("clifford-split", &s, t, true))
}

#[derive(Serialize)]
struct DetRow {
    alpha: u64,
    computed: heisenberg::Determinants,
    table: (i64, i64, i64),
    agree: bool,
}

#[derive(Serialize)]
struct HeisenbergReport {
    n: u64,
    alpha: u64,
    beta: u64,
    relations_hold: bool,
    character_norms: (i64, i64),
    elementwise_projective_conjugate: heisenberg::ProjectiveConjugacy,
    globally_twist_equivalent: heisenberg::TwistEquivalence,
    determinants: Vec<DetRow>,
    centralizer: Option<heisenberg::CentralizerReport>,
}

fn heisenberg_demo(n: u64, alpha: u64, beta: u64) -> Result<Outcome, CliError> {
    let ra = heisenberg::rep_rho(n, alpha).map_err(heis_err)?;
    let rb = heisenberg::rep_rho(n, beta).map_err(heis_err)?;
    let local = heisenberg::elementwise_projective_conjugate(&ra, &rb).map_err(heis_err)?;
    let global = heisenberg::globally_twist_equivalent(&ra, &rb).map_err(heis_err)?;
    let cyc = heisenberg::Cyclotomic::new(n);
    let determinants: Vec<DetRow> = [alpha, beta]
        .iter()
        .map(|&a| {
            let r = if a == alpha { &ra } else { &rb };
            let computed = heisenberg::rep_determinant(r);
            let table = heisenberg::determinant_table(n, a);
            let same = |x: heisenberg::RootOfUnity, y: i64| x.to_cyclotomic(&cyc) == cyc.reduce(&[y]);
            let agree = same(computed.a, table.0) && same(computed.b, table.1) && same(computed.z, table.2);
            DetRow { alpha: a, computed, table, agree }
        })
        .collect();
    let centralizer = if n <= 5 { Some(heisenberg::projective_centralizer(&ra).map_err(heis_err)?) } else { None };
    let rep = HeisenbergReport {
        n,
        alpha,
        beta,
        relations_hold: ra.check_relations() && rb.check_relations(),
        character_norms: (heisenberg::character_norm(&ra), heisenberg::character_norm(&rb)),
        elementwise_projective_conjugate: local,
        globally_twist_equivalent: global,
        determinants,
        centralizer,
    };
    let mut t = format!(
        "n = {n}, alpha = {alpha}, beta = {beta}\nrelations hold: {}\ncharacter norms: {:?}\nelementwise projectively conjugate: {}\nglobally twist-equivalent: {}\n",
        yes(rep.relations_hold),
        rep.character_norms,
        yes(rep.elementwise_projective_conjugate.all_conjugate),
        yes(rep.globally_twist_equivalent.equivalent),
    );
    for d in &rep.determinants {
        writeln!(
            t,
            "det rho_{}: A {}, B {}, Z {} (table {:?}, {})",
            d.alpha,
            d.computed.a,
            d.computed.b,
            d.computed.z,
            d.table,
            if d.agree { "agrees" } else { "DISAGREES" }
        )
        .unwrap();
    }
    if let Some(c) = &rep.centralizer {
        writeln!(t, "projective centralizer: order {}, equals image: {}", c.order, yes(c.equals_image)).unwrap();
    }
    let ok = rep.relations_hold && rep.determinants.iter().all(|d| d.agree);
    Ok(outcome("heisenberg-demo", &rep, t, ok))
}

fn verify_paper(only: &[String], seed: u64) -> Result<Outcome, CliError> {
    let known = verify::check_ids();
    for id in only {
        if !known.contains(&id.as_str()) {
            return Err(CliError::Input(format!("unknown check {id:?}; known: {}", known.join(", "))));
        }
    }
    let checks: Vec<verify::CheckOutcome> = known
        .iter()
        .filter(|id| only.is_empty() || only.iter().any(|o| o == *id))
        .filter_map(|id| verify::run_check(id, seed))
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    let mut t = String::new();
    for c in &checks {
        writeln!(
            t,
            "{} {:<18} {:>7} ms / {:>6} ms  {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.elapsed_ms,
            c.limit_ms,
            c.detail
        )
        .unwrap();
    }
    writeln!(t, "{} of {} checks passed", checks.iter().filter(|c| c.pass).count(), checks.len()).unwrap();
    let rep = verify::VerifyReport { seed, checks, pass };
    Ok(outcome("verify-paper", &rep, t, pass))
}
