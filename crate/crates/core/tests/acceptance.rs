//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! A criterion whose only failures are the documented discrepancies between
//! the published claims and brute force still prints FAIL, with the cells.
//! The process exits nonzero only for failures outside that list or for a
//! blown runtime limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use bchlab::analysis::{
    bch_bound, distance_via_dual, extended_weight_enumerator, is_dually_bch, macwilliams_transform, min_distance,
    sphere_packing_check, weight_enumerator_exhaustive, Certificate, WeightEnumerator,
};
use bchlab::codes::{minimal_polynomial, two_leader_code, CodeSpec, DefiningSet, Family, LinearCodeModel, UnivariatePoly};
use bchlab::cyclotomic::{shift_test_leader, small_leader_predicate, LeaderTable};
use bchlab::formulas::{self as f, ExtendedTable};
use bchlab::harness::{run_suite, GridConfig, Status, VerificationCase};
use bchlab::ExtensionField;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

/// `pass`: every check held. `known`: every failure is a documented
/// discrepancy.
struct Outcome {
    pass: bool,
    known: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            known: true,
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.known = false;
            self.notes.push(format!("unexpected: {}", what.into()));
        }
    }

    fn discrepancy(&mut self, what: impl Into<String>) {
        self.pass = false;
        self.notes.push(format!("known discrepancy: {}", what.into()));
    }
}

fn field(q: u64, m: u32) -> Res<Arc<ExtensionField>> {
    Ok(Arc::new(ExtensionField::from_q(q, m)?))
}

fn half(q: u64, m: u32) -> u64 {
    (q.pow(m) - 1) / 2
}

fn poly_string(w: &WeightEnumerator) -> String {
    w.nonzero()
        .into_iter()
        .map(|(k, v)| if k == 0 { v.to_string() } else { format!("{v}z^{k}") })
        .collect::<Vec<_>>()
        .join("+")
}

fn dimension_examples() -> Res<Outcome> {
    let mut o = Outcome::new();
    for (q, m, a, b, delta, k) in [(5, 3, 1, 0, 16, 32u64), (7, 3, 2, 0, 58, 62), (5, 4, 1, 2, 105, 80), (5, 4, 2, 2, 183, 16)] {
        let c = if b == 0 { f::dim_uniform_digit(q, m, a)? } else { f::dim_alternating_digit(q, m, a, b)? };
        let n = half(q, m);
        let t = bchlab::codes::defining_set_for(&CodeSpec::negacyclic(n, delta, 0)?, q);
        let counted = n - t.len() as u64;
        o.expect(
            c.delta == delta as u128 && c.k == BigUint::from(k) && counted == k,
            format!("C({n},-1,{delta},0): closed form delta={} k={}, coset count {counted}, expected {k}", c.delta, c.k),
        );
        o.notes.push(format!("dim C({n},-1,{delta},0) = {k} by closed form and by coset counting"));
    }
    Ok(o)
}

fn printed_enumerators() -> Res<Outcome> {
    let mut o = Outcome::new();
    let printed: [(u64, u32, ExtendedTable, [u64; 3], &[(u64, u64)]); 4] = [
        (3, 3, ExtendedTable::OddTop, [14, 4, 8], &[(0, 1), (8, 26), (9, 26), (11, 26), (14, 2)]),
        (5, 3, ExtendedTable::OddTop, [63, 4, 48], &[(0, 1), (48, 248), (50, 124), (53, 248), (63, 4)]),
        (
            3,
            4,
            ExtendedTable::EvenSecond,
            [41, 7, 23],
            &[(0, 1), (23, 280), (24, 300), (26, 336), (27, 240), (29, 600), (30, 168), (32, 240), (36, 20), (40, 2)],
        ),
        (
            3,
            3,
            ExtendedTable::OddSecond,
            [14, 7, 5],
            &[(0, 1), (5, 26), (6, 156), (8, 624), (9, 494), (11, 780), (12, 78), (13, 26), (14, 2)],
        ),
    ];
    let known: BTreeSet<(u64, u32)> = [(3, 4), (3, 3)].into();
    for (q, m, table, [n, k, d], pairs) in printed {
        let claim = f::table_weight_distribution(q, m, table)?;
        let model = LinearCodeModel::bch(field(q, m)?, CodeSpec::cyclic(claim.n as u64, claim.delta_range.1 as u64, 1)?)?;
        let w = extended_weight_enumerator(&model, 1 << 20)?;
        let label = format!("({q},{m}) {}", table.id());
        o.expect(
            (w.n, w.dimension(), w.min_distance()) == (n, Some(k), Some(d)),
            format!("{label}: enumerated [{}, {:?}, {:?}], printed [{n}, {k}, {d}]", w.n, w.dimension(), w.min_distance()),
        );
        o.expect(w == claim.enumerator()?, format!("{label}: closed-form table differs from enumeration"));
        let printed = WeightEnumerator::from_pairs(n, q, pairs);
        if w == printed {
            o.notes.push(format!("{label}: printed enumerator matches enumeration"));
        } else if known.contains(&(q, m)) && table != ExtendedTable::OddTop {
            o.discrepancy(format!(
                "{label}: printed {} but enumeration and the closed-form table give {}",
                poly_string(&printed),
                poly_string(&w)
            ));
        } else {
            o.expect(false, format!("{label}: printed {} vs enumerated {}", poly_string(&printed), poly_string(&w)));
        }
    }
    Ok(o)
}

fn low_weight_example() -> Res<Outcome> {
    let mut o = Outcome::new();
    let model = LinearCodeModel::bch(field(3, 4)?, CodeSpec::negacyclic(40, 5, 1)?)?;
    let r = distance_via_dual(&model, 1 << 20)?;
    o.expect(
        (model.n(), model.k(), r.d) == (40, 28, 6) && r.certificate == Certificate::ExactViaDual,
        format!("got [{}, {}, {}]", model.n(), model.k(), r.d),
    );
    let window = f::low_weight_bounds(3, 40, 1, 10)?;
    o.expect(window.contains(r.d), format!("6 outside [{}, {}]", window.d_lower, window.d_upper));
    o.notes.push(format!(
        "C(40,-1,5,1) = [40, 28, {}] via 3^12 dual words; window [{}, {}]",
        r.d, window.d_lower, window.d_upper
    ));
    Ok(o)
}

fn suite_cases(ids: &[&str], config: &GridConfig) -> Res<Vec<VerificationCase>> {
    let mut out = Vec::new();
    for id in ids {
        out.extend(run_suite(id, config)?.cases);
    }
    Ok(out)
}

fn leader_families() -> Res<Outcome> {
    let mut o = Outcome::new();
    let ids = ["top-leaders", "top-odd-leaders", "odd-leaders-mod3-2", "odd-leaders-mod3-0", "odd-leaders-mod3-1"];
    let cases = suite_cases(&ids, &GridConfig::default())?;
    let passed = cases.iter().filter(|c| c.status == Status::Pass).count();
    o.notes.push(format!("{passed} of {} cases pass", cases.len()));
    for q in [3u64, 5, 7] {
        let covered = cases
            .iter()
            .filter(|c| c.status == Status::Pass && c.claim_id == "top-leaders" && c.params["q"] == q)
            .count();
        o.expect(covered > 0, format!("no top-leader cell for q = {q}"));
    }
    for m in 7..=9u64 {
        let family = format!("odd-leaders-mod3-{}", m % 3);
        o.expect(
            cases.iter().any(|c| c.claim_id == family && c.params["q"] == 3 && c.params["m"] == m),
            format!("q=3, m={m} missing from {family}"),
        );
    }
    for c in cases.iter().filter(|c| c.status != Status::Pass) {
        let (i, m) = (c.params.get("i").copied(), c.params["m"]);
        let what = format!("{} {:?}: formula {} vs brute force {}", c.claim_id, c.params, c.expected, c.actual);
        match c.status {
            Status::Fail if i == Some(3) && c.claim_id == "top-odd-leaders" && m % 3 == 1 => o.discrepancy(what),
            Status::Fail if i == Some(3) && c.claim_id == "odd-leaders-mod3-2" => o.discrepancy(what),
            Status::SkippedPrecondition => {}
            _ => o.expect(false, format!("{what} ({})", c.status)),
        }
    }
    Ok(o)
}

fn dimension_grids() -> Res<Outcome> {
    let mut o = Outcome::new();
    let ids = [
        "small-delta",
        "uniform-digit",
        "leading-digit",
        "alternating-digit",
        "two-leading-digits",
        "alternating-zero",
        "dim-above-leader-mod3-2",
        "dim-above-leader-mod3-0",
        "dim-above-leader-mod3-1",
        "shifted-dim",
    ];
    let cases = suite_cases(&ids, &GridConfig::default())?;
    let dims: Vec<_> = cases.iter().filter(|c| !c.claim_id.ends_with("/distance")).collect();
    let passed = dims.iter().filter(|c| c.status == Status::Pass).count();
    o.expect(passed >= 50, format!("only {passed} passing dimension cells"));
    for c in dims.iter().filter(|c| c.status == Status::Fail || c.status == Status::SkippedBudget) {
        o.expect(false, format!("{} {:?}: {} vs {} ({})", c.claim_id, c.params, c.expected, c.actual, c.status));
    }
    for id in ids {
        let n = dims.iter().filter(|c| c.claim_id.starts_with(id) && c.status == Status::Pass).count();
        o.expect(n > 0, format!("{id}: no passing cell"));
        o.notes.push(format!("{id}: {n} cells agree with coset counting"));
    }
    Ok(o)
}

fn two_leader() -> Res<Outcome> {
    let mut o = Outcome::new();
    for m in [3u32, 4] {
        let code = two_leader_code(field(3, m)?)?;
        let n = half(3, m);
        let w = weight_enumerator_exhaustive(&code.model, 1 << 20)?;
        let d = w.min_distance().unwrap_or(n + 1);
        let bound = (3u64.pow(m - 1) - 1) / 2;
        let dual = macwilliams_transform(&w)?;
        let dd = dual.min_distance().unwrap_or(n + 1);
        o.expect(code.model.k() == 2 * m as u64, format!("(3,{m}) k = {}", code.model.k()));
        o.expect(d >= bound, format!("(3,{m}) d = {d} < {bound}"));
        o.expect(n - code.model.k() == n - 2 * m as u64, "dual dimension");
        o.expect((3..=5).contains(&dd), format!("(3,{m}) dual distance {dd}"));
        o.notes.push(format!("(3,{m}): C' = [{n}, {}, {d}] (d >= {bound}), dual [{n}, {}, {dd}]", 2 * m, n - 2 * m as u64));
    }
    let s7 = sphere_packing_check(13, 7, 7, 3)?;
    let s6 = sphere_packing_check(13, 7, 6, 3)?;
    let even = s6.even.clone().ok_or("even clause missing")?;
    o.expect(
        s7.radius.lhs == BigUint::from(2627u32) && s7.radius.rhs == BigUint::from(729u32) && !s7.radius.holds,
        format!("d = 7 clause {} vs {}", s7.radius.lhs, s7.radius.rhs),
    );
    o.expect(
        even.lhs == BigUint::from(289u32) && even.rhs == BigUint::from(243u32) && !even.holds,
        format!("d = 6 clause {} vs {}", even.lhs, even.rhs),
    );
    o.notes.push(format!("sphere packing: {} > {} and {} > {}", s7.radius.lhs, s7.radius.rhs, even.lhs, even.rhs));
    Ok(o)
}

fn dually_bch_law() -> Res<Outcome> {
    let mut o = Outcome::new();
    let known: BTreeSet<(u64, u32, u64)> = [(3, 3, 2), (3, 3, 3)].into();
    for (q, m) in [(3u64, 2u32), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
        let fd = field(q, m)?;
        let n = half(q, m);
        let mut agree = 0;
        for delta in 2..n {
            let model = LinearCodeModel::bch(Arc::clone(&fd), CodeSpec::cyclic(n, delta, 2)?)?;
            let witness = is_dually_bch(&model)?;
            let law = f::dually_bch_condition(q, m, delta)?;
            if witness.is_some() == law {
                agree += 1;
            } else if known.contains(&(q, m, delta)) {
                let (b, d) = witness.unwrap();
                o.discrepancy(format!(
                    "C({n},1,{delta},2): law says {law}, but the dual defining set is the consecutive union from {b} of length {}",
                    d - 1
                ));
            } else {
                o.expect(false, format!("C({n},1,{delta},2): law {law}, search {:?}", witness));
            }
        }
        o.notes.push(format!("({q},{m}): {agree} of {} designed distances agree", n - 2));
    }
    for (q, m, n) in [(3u64, 3u32, 13u64), (3, 2, 4)] {
        let model = LinearCodeModel::bch(field(q, m)?, CodeSpec::cyclic(n, 2, 2)?)?;
        match is_dually_bch(&model)? {
            Some((b, d)) => o.discrepancy(format!(
                "C({n},1,2,2) is called not dually-BCH, yet its dual set is the consecutive union from {b} of length {}",
                d - 1
            )),
            None => o.notes.push(format!("C({n},1,2,2) is not dually-BCH")),
        }
    }
    Ok(o)
}

fn complement_check_poly(model: &LinearCodeModel) -> Res<UnivariatePoly> {
    let t = model.defining_set();
    let rest = DefiningSet::universe(t.modulus, t.q, t.parity)
        .exponents
        .into_iter()
        .filter(|&e| !t.contains(e));
    let rest = DefiningSet::closure(t.modulus, t.q, t.parity, rest);
    let bf = model.field().base_field();
    let mut h = UnivariatePoly::one();
    for leader in rest.leaders() {
        h = h.mul(&minimal_polynomial(model.field(), t.modulus, leader)?, bf);
    }
    Ok(h)
}

fn properties() -> Res<Outcome> {
    let mut o = Outcome::new();
    let mut codes = 0;
    let mut solved = 0;
    for (q, m) in [(3u64, 2u32), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (9, 2)] {
        let fd = field(q, m)?;
        let n = half(q, m);
        for family in [Family::Cyclic, Family::Negacyclic] {
            for b in 0..=2 {
                for delta in 2..=n.min(12) {
                    let model = LinearCodeModel::bch(Arc::clone(&fd), CodeSpec::new(n, family, delta, b)?)?;
                    let label = model.describe();
                    codes += 1;
                    let gh = model.generator().mul(&complement_check_poly(&model)?, fd.base_field());
                    o.expect(gh == model.modulus_poly(), format!("{label}: g*h != x^n - lambda"));
                    let small = model.k().min(n - model.k());
                    let fits = |e: u64| q.checked_pow(e as u32).is_some_and(|v| v <= 1 << 14);
                    if !fits(small as u64) {
                        continue;
                    }
                    let r = min_distance(&model, 1 << 14)?;
                    solved += 1;
                    o.expect(r.d >= bch_bound(model.defining_set()).min(n + 1), format!("{label}: d below the BCH bound"));
                    if fits(model.k()) {
                        let w = weight_enumerator_exhaustive(&model, 1 << 14)?;
                        o.expect(w.total() == BigUint::from(q).pow(model.k() as u32), format!("{label}: weights do not sum to q^k"));
                        o.expect(macwilliams_transform(&macwilliams_transform(&w)?)? == w, format!("{label}: MacWilliams not an involution"));
                    }
                }
            }
        }
    }
    o.notes.push(format!("{codes} codes checked for g*h, {solved} solved exactly"));
    let mut leaders = 0;
    for (q, m) in [(3u64, 2u32), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7), (3, 8), (5, 2), (5, 3), (5, 4), (5, 5), (7, 2), (7, 3), (7, 4), (9, 2), (9, 3), (9, 4)] {
        let modulus = q.pow(m) - 1;
        let table = LeaderTable::compute(modulus, q, 1 << 24)?;
        for i in 1..modulus {
            let shift = shift_test_leader(q, m, i as u128);
            leaders += 1;
            o.expect(shift == table.is_leader(i), format!("shift test disagrees at q={q} m={m} i={i}"));
            if let Ok((lead, size)) = small_leader_predicate(q, m, i as u128) {
                o.expect(lead == table.is_leader(i), format!("small-leader predicate at q={q} m={m} i={i}"));
                if lead {
                    o.expect(table.size_of(i) == Some(size), format!("orbit size at q={q} m={m} i={i}"));
                }
            }
        }
    }
    o.notes.push(format!("shift test checked on {leaders} residues"));
    Ok(o)
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, u64, fn() -> Res<Outcome>);
    let criteria: [Criterion; 8] = [
        (1, "worked-example dimensions", 1, dimension_examples),
        (2, "worked-example weight enumerators", 1, printed_enumerators),
        (3, "low-weight example [40, 28, 6]", 30, low_weight_example),
        (4, "coset-leader families", 300, leader_families),
        (5, "dimension-formula grids", 300, dimension_grids),
        (6, "two-leader code at (3,3) and (3,4)", 60, two_leader),
        (7, "dually-BCH law", 120, dually_bch_law),
        (8, "property suites", 120, properties),
    ];
    let mut unexpected = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let (verdict, notes) = match outcome {
            Ok(o) => {
                if !(o.pass || o.known) || !in_time {
                    unexpected += 1;
                }
                (if o.pass && in_time { "PASS" } else { "FAIL" }, o.notes)
            }
            Err(e) => {
                unexpected += 1;
                ("FAIL", vec![format!("error: {e}")])
            }
        };
        println!("criterion {id} {verdict}: {title} ({} ms, limit {limit} s)", took.as_millis());
        if !in_time {
            println!("    runtime limit exceeded");
        }
        for n in notes {
            println!("    {n}");
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed outside the documented discrepancies");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
