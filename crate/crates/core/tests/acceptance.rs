//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Every tolerance used below is a named constant in this file.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use beatty_games::classifier::{classify_alpha, enumerate_families, golden_alpha, inverse_solve, Family};
use beatty_games::games::{ConstraintSpec, Position, RuleSet};
use beatty_games::quadfield::{BeattyPair, QuadraticNumber};
use beatty_games::solver::{
    beatty_table, compare_tables, retrograde_oracle, solve_doublemex, solve_relaxed, solve_rules,
    solve_rules_to_bound, PTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_SMALL_TABLES: Duration = Duration::from_secs(1);
const LIMIT_ORACLE_SUITE: Duration = Duration::from_secs(30);
const LIMIT_ENUMERATION: Duration = Duration::from_secs(60);
const LIMIT_RAYLEIGH: Duration = Duration::from_secs(10);
const LIMIT_INVERSE: Duration = Duration::from_secs(60);
/// Criteria without a stated time budget still get a generous ceiling.
const LIMIT_UNTIMED: Duration = Duration::from_secs(120);

const ORACLE_BOUND: u64 = 150;
const PARITY_COUNT: usize = 50;
const ENUM_MAX: u64 = 6;
const COMPARE_PAIRS: usize = 300;
const DELTA2_HORIZON: u64 = 10_000;
const GOLDEN_T_MAX: u64 = 10;
const RAYLEIGH_LIMIT: u64 = 100_000;
const RANDOM_ALPHAS: usize = 25;
const RANDOM_D_MAX: i128 = 50;
const RANDOM_SEED: u64 = 0x5eed_bea7;
const INVERSE_PAIRS: usize = 300;

type Check = Result<String, String>;

fn qn(p: i128, q: i128, r: i128, d: i128) -> QuadraticNumber {
    QuadraticNumber::new(p, q, r, d).expect("valid literal")
}

fn phi() -> QuadraticNumber {
    qn(1, 1, 2, 5)
}

fn divergent_alpha() -> QuadraticNumber {
    qn(5, 1, 5, 5)
}

fn sqrt19_alpha() -> QuadraticNumber {
    qn(-3, 1, 1, 19)
}

fn sqrt2() -> QuadraticNumber {
    qn(0, 1, 1, 2)
}

/// Non-golden values below 5/4.
fn small_alphas() -> Vec<QuadraticNumber> {
    vec![qn(0, 1, 2, 6), qn(1, 1, 2, 2), qn(3, 1, 4, 3), qn(1, 1, 3, 6)]
}

/// Hand-picked values with no compatible family.
fn incompatible_alphas() -> Vec<QuadraticNumber> {
    vec![divergent_alpha(), qn(0, 1, 1, 3), qn(0, 1, 2, 10), qn(3, 1, 3, 2), qn(7, 1, 6, 2)]
}

fn test_alphas() -> Vec<QuadraticNumber> {
    let mut v = vec![divergent_alpha(), sqrt19_alpha(), phi(), sqrt2()];
    v.extend((1..=GOLDEN_T_MAX).map(|t| golden_alpha(t).unwrap()));
    v.extend(small_alphas());
    v.extend(incompatible_alphas());
    let mut unique: Vec<QuadraticNumber> = Vec::new();
    for a in v {
        if !unique.contains(&a) {
            unique.push(a);
        }
    }
    unique
}

fn beatty(alpha: QuadraticNumber) -> ConstraintSpec {
    ConstraintSpec::beatty(alpha).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fmt_row(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn criterion_1() -> Check {
    let pair = BeattyPair::from_alpha(divergent_alpha()).unwrap();
    let table = solve_doublemex(&ConstraintSpec::BeattyDelta(pair), 10).map_err(|e| e.to_string())?;
    let bottom = beatty_table(&pair, 10);
    let a_want = [0, 1, 2, 4, 7, 8, 9, 10, 11, 12];
    let b_want = [0, 3, 6, 5, 13, 16, 19, 15, 23, 26];
    let mut problems = Vec::new();
    if table.a_values() != a_want {
        problems.push(format!("a row {} (expected {})", fmt_row(&table.a_values()), fmt_row(&a_want)));
    }
    if table.b_values() != b_want {
        problems.push(format!("b row {} (expected {})", fmt_row(&table.b_values()), fmt_row(&b_want)));
    }
    if bottom.a_values() != [0, 1, 2, 4, 5, 7, 8, 10, 11, 13] || bottom.b_values() != [0, 3, 6, 9, 12, 16, 19, 22, 25, 29] {
        problems.push("Beatty rows differ".into());
    }
    let div = compare_tables(&table, &bottom);
    if div != Some(3) {
        problems.push(format!("first divergence {div:?}, expected Some(3)"));
    }
    if problems.is_empty() {
        Ok("rows and divergence index 3 match".into())
    } else {
        Err(problems.join("; "))
    }
}

fn criterion_2() -> Check {
    let pair = BeattyPair::from_alpha(sqrt19_alpha()).unwrap();
    let table = solve_doublemex(&ConstraintSpec::BeattyDelta(pair), 10).map_err(|e| e.to_string())?;
    ensure(table.a_values() == [0, 1, 2, 4, 5, 6, 8, 9, 10, 12], || format!("a row {}", fmt_row(&table.a_values())))?;
    ensure(table.b_values() == [0, 3, 7, 11, 15, 18, 22, 26, 30, 34], || format!("b row {}", fmt_row(&table.b_values())))?;
    ensure(table.pairs() == beatty_table(&pair, 10).pairs(), || "differs from Beatty pairs".into())?;
    Ok("double mex equals the Beatty pairs for n = 0..9".into())
}

fn criterion_3() -> Check {
    let pair = BeattyPair::from_alpha(divergent_alpha()).unwrap();
    let table = solve_relaxed(&ConstraintSpec::BeattyDelta(pair), 10).map_err(|e| e.to_string())?;
    ensure(table.a_values() == [0, 1, 2, 4, 5, 7, 8, 10, 11, 13], || format!("a row {}", fmt_row(&table.a_values())))?;
    ensure(table.b_values() == [0, 3, 6, 9, 12, 16, 19, 22, 25, 29], || format!("b row {}", fmt_row(&table.b_values())))?;
    Ok("relaxed recurrence equals the Beatty rows".into())
}

fn oracle_suite() -> Vec<ConstraintSpec> {
    let mut specs: Vec<ConstraintSpec> = (1..=5).map(|t| ConstraintSpec::constant(t).unwrap()).collect();
    specs.extend([divergent_alpha(), sqrt19_alpha(), phi(), sqrt2()].map(beatty));
    specs.push(ConstraintSpec::ParityHalf);
    specs.push(ConstraintSpec::target_beatty(phi()).unwrap());
    specs
}

fn criterion_4() -> Check {
    let mut checked = 0;
    for spec in oracle_suite() {
        let mut rule_sets = vec![RuleSet::modified(spec.clone())];
        if let Ok(relaxed) = RuleSet::relaxed(spec.clone()) {
            rule_sets.push(relaxed);
        }
        for rules in rule_sets {
            let oracle = retrograde_oracle(&rules, ORACLE_BOUND).map_err(|e| e.to_string())?.to_table().to_set();
            let rec = solve_rules_to_bound(&rules, ORACLE_BOUND).map_err(|e| e.to_string())?.to_set();
            ensure(oracle == rec, || {
                let only_o: Vec<_> = oracle.difference(&rec).take(3).collect();
                let only_r: Vec<_> = rec.difference(&oracle).take(3).collect();
                format!("{} {}: oracle-only {only_o:?}, recurrence-only {only_r:?}", rules.family(), spec.kind())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} rule sets agree at bound {ORACLE_BOUND}"))
}

fn criterion_5() -> Check {
    let rules = RuleSet::modified(ConstraintSpec::ParityHalf);
    let from = Position::new(10, 29);
    let to = Position::new(8, 21);
    ensure(rules.is_legal_move(from, to).map_err(|e| e.to_string())?, || "(10,29) -> (8,21) rejected".into())?;
    let f = ConstraintSpec::ParityHalf.eval(8, 21, 10).map_err(|e| e.to_string())?.value();
    ensure(f == Some(8), || format!("f(8,21,10) = {f:?}"))?;
    let table = solve_doublemex(&ConstraintSpec::ParityHalf, PARITY_COUNT).map_err(|e| e.to_string())?;
    let p = table.pairs();
    for n in 2..p.len() {
        let (a, b) = p[n];
        let (a0, b0) = p[n - 1];
        let want = if b0 % 2 == 1 { a + b0 } else { a + b0 - a0 };
        ensure(b == want, || format!("step {n}: b = {b}, recurrence gives {want}"))?;
    }
    Ok(format!("worked move legal with f = 8; recurrence holds for n = 2..{}", PARITY_COUNT - 1))
}

fn criterion_6() -> Check {
    let family = |a| classify_alpha(a).unwrap().family;
    ensure(family(phi()) == Family::I { t: 1 }, || format!("phi -> {}", family(phi())))?;
    let want = Family::II { p: 3, q: 1, beta_floor: 3 };
    ensure(family(sqrt19_alpha()) == want, || format!("sqrt(19)-3 -> {}", family(sqrt19_alpha())))?;
    ensure(family(divergent_alpha()) == Family::Incompatible, || format!("(5+sqrt5)/5 -> {}", family(divergent_alpha())))?;
    for t in 1..=GOLDEN_T_MAX {
        let a = golden_alpha(t).unwrap();
        ensure(family(a) == Family::I { t }, || format!("golden t={t} -> {}", family(a)))?;
    }
    let quarter = qn(5, 0, 4, 2);
    for a in test_alphas() {
        if a < quarter && golden_index(a).is_none() {
            ensure(family(a) == Family::IV, || format!("{a} -> {}", family(a)))?;
        }
    }
    Ok("all fixtures classified as expected".into())
}

fn golden_index(a: QuadraticNumber) -> Option<u64> {
    (1..=GOLDEN_T_MAX).find(|&t| golden_alpha(t).unwrap() == a)
}

fn criterion_7() -> Check {
    let mut alphas: Vec<QuadraticNumber> =
        enumerate_families(ENUM_MAX, ENUM_MAX, ENUM_MAX).map_err(|e| e.to_string())?.iter().map(|m| m.alpha()).collect();
    let enumerated = alphas.len();
    for a in incompatible_alphas() {
        ensure(!classify_alpha(a).unwrap().is_compatible(), || format!("{a} is not incompatible"))?;
        alphas.push(a);
    }
    for a in &alphas {
        let pair = BeattyPair::from_alpha(*a).unwrap();
        let table = solve_doublemex(&ConstraintSpec::BeattyDelta(pair), COMPARE_PAIRS).map_err(|e| e.to_string())?;
        let agrees = compare_tables(&table, &beatty_table(&pair, COMPARE_PAIRS)).is_none();
        let compatible = classify_alpha(*a).unwrap().is_compatible();
        ensure(agrees == compatible, || format!("{a}: compatible = {compatible}, Beatty match = {agrees}"))?;
    }
    Ok(format!("{enumerated} enumerated + 5 incompatible values agree at {COMPARE_PAIRS} pairs"))
}

fn criterion_8() -> Check {
    for a in test_alphas() {
        let pair = BeattyPair::from_alpha(a).unwrap();
        let b = pair.beta_floor();
        let golden = golden_index(a).is_some();
        for n in 1..=DELTA2_HORIZON {
            let d = pair.delta2(n).map_err(|e| e.to_string())?;
            ensure(d + 2 >= b && d <= b, || format!("{a}: delta2({n}) = {d} outside [b-2, b]"))?;
            let predicted = b as i64 - 1 + pair.trichotomy(n - 1).offset();
            ensure(d as i64 == predicted, || format!("{a}: delta2({n}) = {d}, trichotomy gives {predicted}"))?;
            ensure(!golden || d == b - 1, || format!("{a}: golden delta2({n}) = {d}"))?;
        }
    }
    Ok(format!("{} values checked to n = {DELTA2_HORIZON}", test_alphas().len()))
}

fn criterion_9() -> Check {
    for a in test_alphas() {
        let pair = beatty_games::quadfield::conjugate_beatty(a).map_err(|e| e.to_string())?;
        let one = QuadraticNumber::from_integer(1, a.radicand()).unwrap();
        let sum = a.checked_inv().unwrap().checked_add(&pair.beta().checked_inv().unwrap()).unwrap();
        ensure(sum == one, || format!("{a}: 1/alpha + 1/beta = {sum}"))?;
        ensure(pair.rayleigh_verify(RAYLEIGH_LIMIT), || format!("{a}: sequences not complementary"))?;
    }
    Ok(format!("{} pairs complementary to {RAYLEIGH_LIMIT}", test_alphas().len()))
}

fn random_alphas() -> Vec<QuadraticNumber> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut out: Vec<QuadraticNumber> = Vec::new();
    while out.len() < RANDOM_ALPHAS {
        let d = rng.gen_range(2..=RANDOM_D_MAX);
        let q = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let r = rng.gen_range(1..=12);
        let p = rng.gen_range(-40..=40);
        let Ok(a) = QuadraticNumber::new(p, q, r, d) else { continue };
        if a.radicand() <= RANDOM_D_MAX && a.gt_int(1) && a.lt_int(2) && !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

fn criterion_10() -> Check {
    let mut relaxed = 0;
    for a in random_alphas() {
        let (rules, _) = inverse_solve(a).map_err(|e| format!("{a}: {e}"))?;
        let pair = BeattyPair::from_alpha(a).unwrap();
        let rec = solve_rules(&rules, INVERSE_PAIRS).map_err(|e| format!("{a}: {e}"))?;
        let want = beatty_table(&pair, INVERSE_PAIRS);
        ensure(compare_tables(&rec, &want).is_none(), || format!("{a} ({}): recurrence diverges", rules.family()))?;
        let oracle = retrograde_oracle(&rules, ORACLE_BOUND).map_err(|e| e.to_string())?.to_table();
        let board: PTable = want.restrict(ORACLE_BOUND);
        ensure(oracle.pairs() == board.pairs(), || format!("{a} ({}): oracle differs", rules.family()))?;
        if rules.family() == beatty_games::games::GameFamily::RelaxedWythoff {
            relaxed += 1;
        }
    }
    Ok(format!("{RANDOM_ALPHAS} random values solved ({relaxed} via relaxed rules)"))
}

type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "double mex rows and divergence for (5+sqrt5)/5", LIMIT_SMALL_TABLES, criterion_1),
        (2, "double mex rows for sqrt(19)-3", LIMIT_SMALL_TABLES, criterion_2),
        (3, "successful relaxed game", LIMIT_SMALL_TABLES, criterion_3),
        (4, "oracle equals recurrence", LIMIT_ORACLE_SUITE, criterion_4),
        (5, "parity constraint", LIMIT_UNTIMED, criterion_5),
        (6, "classifier fixtures", LIMIT_UNTIMED, criterion_6),
        (7, "inequality iff Beatty P-positions", LIMIT_ENUMERATION, criterion_7),
        (8, "second-difference properties", LIMIT_UNTIMED, criterion_8),
        (9, "Rayleigh complementarity", LIMIT_RAYLEIGH, criterion_9),
        (10, "inverse problem", LIMIT_INVERSE, criterion_10),
    ];
    let mut failures = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {:.2?}, limit {limit:?}", elapsed)),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {} {name} ({:.2?} / {limit:?}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed
        );
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
