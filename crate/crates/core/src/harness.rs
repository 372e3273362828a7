//! Verification suites that pair every closed form with an independent
//! oracle, plus deterministic JSON, CSV and text reports.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    consecutive_union_witness, extended_weight_enumerator, macwilliams_transform, min_distance,
    sphere_packing_check, weight_enumerator_exhaustive, Certificate, WeightEnumerator,
};
use crate::codes::{defining_set_for, low_weight_codeword, two_leader_code, CodeSpec, LinearCodeModel, TwoLeaderCode};
use crate::cyclotomic::{leader_table, LeaderCache, LeaderTable};
use crate::error::{Error, Result};
use crate::field::ExtensionField;
use crate::formulas::{self as f, ExtendedTable};
use crate::util::checked_pow;

/// Default size budget: leader tables, coset closures and enumerated words.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Symbol operations allowed per enumerated case, as a multiple of the budget.
const WORK_FACTOR: u128 = 16;

/// Which code an enumeration walks: the code itself, or whichever of the
/// code and its dual is smaller.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Code,
    Smaller,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
    SkippedPrecondition,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
            Status::SkippedPrecondition => "skipped-precondition",
        })
    }
}

/// One claim checked at one parameter tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationCase {
    pub claim_id: String,
    pub params: BTreeMap<String, u64>,
    pub expected: Value,
    pub actual: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped_budget: usize,
    pub skipped_precondition: usize,
}

impl Summary {
    fn tally(cases: &[VerificationCase]) -> Self {
        let mut s = Summary {
            total: cases.len(),
            ..Default::default()
        };
        for c in cases {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::SkippedBudget => s.skipped_budget += 1,
                Status::SkippedPrecondition => s.skipped_precondition += 1,
            }
        }
        s
    }
}

/// Parameter grid and budgets for a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridConfig {
    pub q_set: Vec<u64>,
    /// Largest `m`; by default the largest with `q^m <= budget`.
    pub m_max: Option<u32>,
    pub budget: u64,
    /// Leader tables go through the disk cache here when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            q_set: vec![3, 5, 7],
            m_max: None,
            budget: DEFAULT_BUDGET,
            cache_dir: None,
        }
    }
}

impl GridConfig {
    /// All `(q, m)` cells with `m >= 2`.
    pub fn cells(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for &q in &self.q_set {
            let top = self.m_max.unwrap_or_else(|| {
                (2..64)
                    .take_while(|&m| checked_pow(q, m).is_some_and(|v| v <= self.budget as u128))
                    .last()
                    .unwrap_or(1)
            });
            out.extend((2..=top).map(|m| (q, m)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub suite: String,
    pub config: GridConfig,
    pub cases: Vec<VerificationCase>,
    pub summary: Summary,
    /// Not serialized, so identical runs give identical JSON.
    #[serde(skip)]
    pub wall_clock_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    SmallDelta,
    UniformDigit,
    LeadingDigit,
    AlternatingDigit,
    TwoLeadingDigits,
    AlternatingZero,
    TopOddLeaders,
    OddLeadersMod3(u32),
    TopLeaders,
    DimAboveLeader(u32),
    TwoLeaderCode,
    ShiftedDim,
    LowWeightBounds,
    Table(ExtendedTable),
    DualParams,
    DuallyBch,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 24] = [
        Suite::SmallDelta,
        Suite::UniformDigit,
        Suite::LeadingDigit,
        Suite::AlternatingDigit,
        Suite::TwoLeadingDigits,
        Suite::AlternatingZero,
        Suite::TopOddLeaders,
        Suite::OddLeadersMod3(2),
        Suite::OddLeadersMod3(0),
        Suite::OddLeadersMod3(1),
        Suite::TopLeaders,
        Suite::DimAboveLeader(2),
        Suite::DimAboveLeader(0),
        Suite::DimAboveLeader(1),
        Suite::TwoLeaderCode,
        Suite::ShiftedDim,
        Suite::LowWeightBounds,
        Suite::Table(ExtendedTable::EvenTop),
        Suite::Table(ExtendedTable::OddTop),
        Suite::Table(ExtendedTable::OddSecond),
        Suite::Table(ExtendedTable::EvenSecond),
        Suite::DualParams,
        Suite::DuallyBch,
        Suite::Examples,
    ];

    pub fn all() -> Vec<Suite> {
        Suite::ALL.to_vec()
    }

    pub fn id(self) -> String {
        match self {
            Suite::SmallDelta => "small-delta".into(),
            Suite::UniformDigit => "uniform-digit".into(),
            Suite::LeadingDigit => "leading-digit".into(),
            Suite::AlternatingDigit => "alternating-digit".into(),
            Suite::TwoLeadingDigits => "two-leading-digits".into(),
            Suite::AlternatingZero => "alternating-zero".into(),
            Suite::TopOddLeaders => "top-odd-leaders".into(),
            Suite::OddLeadersMod3(r) => format!("odd-leaders-mod3-{r}"),
            Suite::TopLeaders => "top-leaders".into(),
            Suite::DimAboveLeader(r) => format!("dim-above-leader-mod3-{r}"),
            Suite::TwoLeaderCode => "two-leader-code".into(),
            Suite::ShiftedDim => "shifted-dim".into(),
            Suite::LowWeightBounds => "low-weight-bounds".into(),
            Suite::Table(t) => t.id().into(),
            Suite::DualParams => "dual-params".into(),
            Suite::DuallyBch => "dually-bch".into(),
            Suite::Examples => "examples".into(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::all()
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Names accepted by [`run_suite`]: every suite id plus `all`.
pub fn suite_ids() -> Vec<String> {
    let mut v: Vec<String> = Suite::all().into_iter().map(Suite::id).collect();
    v.push("all".into());
    v
}

type Params = BTreeMap<String, u64>;

fn params(pairs: &[(&str, u64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn num(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

fn big(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn interval(min: Option<u64>, max: Option<u64>) -> Value {
    let mut m = serde_json::Map::new();
    if let Some(v) = min {
        m.insert("min".into(), v.into());
    }
    if let Some(v) = max {
        m.insert("max".into(), v.into());
    }
    Value::Object(m)
}

fn pairs_value(pairs: impl IntoIterator<Item = (u128, BigUint)>) -> Value {
    Value::Array(pairs.into_iter().map(|(w, c)| json!([num(w), big(&c)])).collect())
}

fn enumerator_value(w: &WeightEnumerator) -> Value {
    pairs_value(w.nonzero().into_iter().map(|(k, v)| (k as u128, v)))
}

/// Exact equality, except that an expected `{min, max}` object (either key
/// optional) accepts any number inside the interval.
pub fn agrees(expected: &Value, actual: &Value) -> bool {
    if let (Value::Object(o), Some(a)) = (expected, actual.as_u64()) {
        if !o.is_empty() && o.keys().all(|k| k == "min" || k == "max") {
            let lo = o.get("min").and_then(Value::as_u64).unwrap_or(0);
            let hi = o.get("max").and_then(Value::as_u64).unwrap_or(u64::MAX);
            return (lo..=hi).contains(&a);
        }
    }
    expected == actual
}

/// Builds a case: a formula error is a precondition skip, a budget error
/// from the oracle is a budget skip, any other oracle error is a failure.
fn check(
    claim: &str,
    params: Params,
    expected: Result<Value>,
    actual: impl FnOnce() -> Result<Value>,
) -> VerificationCase {
    let base = |expected, actual, status, detail| VerificationCase {
        claim_id: claim.to_string(),
        params: params.clone(),
        expected,
        actual,
        status,
        detail,
    };
    let expected = match expected {
        Ok(v) => v,
        Err(Error::BudgetExceeded { .. }) => {
            return base(Value::Null, Value::Null, Status::SkippedBudget, Some("formula exceeds budget".into()))
        }
        Err(e) => return base(Value::Null, Value::Null, Status::SkippedPrecondition, Some(e.to_string())),
    };
    match actual() {
        Ok(a) => {
            let status = if agrees(&expected, &a) { Status::Pass } else { Status::Fail };
            base(expected, a, status, None)
        }
        Err(e @ Error::BudgetExceeded { .. }) => base(expected, Value::Null, Status::SkippedBudget, Some(e.to_string())),
        Err(e) => base(expected, Value::Null, Status::Fail, Some(e.to_string())),
    }
}

fn skip(claim: &str, params: Params, status: Status, why: impl Into<String>) -> VerificationCase {
    VerificationCase {
        claim_id: claim.to_string(),
        params,
        expected: Value::Null,
        actual: Value::Null,
        status,
        detail: Some(why.into()),
    }
}

fn with_detail(mut c: VerificationCase, detail: String) -> VerificationCase {
    if c.detail.is_none() {
        c.detail = Some(detail);
    }
    c
}

/// Shared state for one run: budgets plus memoized fields and leader tables.
pub struct Harness {
    config: GridConfig,
    cache: Option<LeaderCache>,
    fields: Mutex<HashMap<(u64, u32), Arc<ExtensionField>>>,
    tables: Mutex<HashMap<(u64, u64), Arc<LeaderTable>>>,
}

impl Harness {
    pub fn new(config: GridConfig) -> Self {
        let cache = config.cache_dir.clone().map(LeaderCache::new);
        Self {
            config,
            cache,
            fields: Mutex::default(),
            tables: Mutex::default(),
        }
    }

    pub fn config(&self) -> &GridConfig {
        &self.config
    }

    fn budget_check(&self, what: &'static str, size: u128) -> Result<()> {
        if size > self.config.budget as u128 {
            return Err(Error::BudgetExceeded {
                what,
                size,
                budget: self.config.budget as u128,
            });
        }
        Ok(())
    }

    fn qm(&self, q: u64, m: u32) -> Result<u64> {
        let v = checked_pow(q, m).ok_or(Error::BudgetExceeded {
            what: "q^m",
            size: u128::MAX,
            budget: self.config.budget as u128,
        })?;
        self.budget_check("q^m", v)?;
        Ok(v as u64)
    }

    fn field(&self, q: u64, m: u32) -> Result<Arc<ExtensionField>> {
        self.qm(q, m)?;
        if let Some(f) = self.fields.lock().unwrap().get(&(q, m)) {
            return Ok(Arc::clone(f));
        }
        let f = Arc::new(ExtensionField::from_q(q, m)?);
        self.fields.lock().unwrap().insert((q, m), Arc::clone(&f));
        Ok(f)
    }

    fn leaders(&self, modulus: u64, q: u64) -> Result<Arc<LeaderTable>> {
        self.budget_check("leader table", modulus as u128)?;
        if let Some(t) = self.tables.lock().unwrap().get(&(modulus, q)) {
            return Ok(Arc::clone(t));
        }
        let t = match &self.cache {
            Some(c) => Arc::new(c.get(modulus, q, self.config.budget)?),
            None => leader_table(modulus, q)?,
        };
        self.tables.lock().unwrap().insert((modulus, q), Arc::clone(&t));
        Ok(t)
    }

    /// `n - |T|` for `C_(n,-1,delta,b)` by coset closure.
    fn neg_dim(&self, q: u64, m: u32, delta: u128, b: u64) -> Result<Value> {
        let n = (self.qm(q, m)? - 1) / 2;
        let delta = u64::try_from(delta).map_err(|_| Error::InvalidParameter("delta too large".into()))?;
        let t = defining_set_for(&CodeSpec::negacyclic(n, delta, b)?, q);
        Ok(Value::from(n - t.len() as u64))
    }

    /// Whether exhaustive enumeration of `q^k` words of length `n` fits.
    fn enumerable(&self, q: u64, k: u64, n: u64) -> Result<()> {
        let words = u32::try_from(k).ok().and_then(|k| checked_pow(q, k)).unwrap_or(u128::MAX);
        self.budget_check("codewords", words)?;
        self.budget_check("enumeration work", words.saturating_mul(n as u128) / WORK_FACTOR)
    }

    /// Builds a code only once its defining set shows that both the
    /// generator and the enumeration on `side` fit the budget.
    fn code(&self, q: u64, m: u32, spec: CodeSpec, side: Side) -> Result<LinearCodeModel> {
        let n = spec.n;
        let t = defining_set_for(&spec, q).len() as u64;
        let k = n - t;
        self.budget_check("generator construction", (n as u128 * t as u128) / (16 * WORK_FACTOR))?;
        self.enumerable(q, if side == Side::Code { k } else { k.min(n - k) }, n)?;
        LinearCodeModel::bch(self.field(q, m)?, spec)
    }

    fn exact_distance(&self, model: &LinearCodeModel) -> Result<u64> {
        let r = min_distance(model, self.config.budget)?;
        if r.certificate == Certificate::LowerBoundOnly {
            return Err(Error::BudgetExceeded {
                what: "distance",
                size: u128::MAX,
                budget: self.config.budget as u128,
            });
        }
        Ok(r.d)
    }

    pub fn run(&self, suite: Suite) -> Vec<VerificationCase> {
        match suite {
            Suite::SmallDelta => self.small_delta(),
            Suite::UniformDigit => self.digit_suite(suite),
            Suite::LeadingDigit => self.digit_suite(suite),
            Suite::AlternatingDigit | Suite::TwoLeadingDigits | Suite::AlternatingZero => self.digit_suite(suite),
            Suite::TopOddLeaders => self.top_odd_leaders(),
            Suite::OddLeadersMod3(r) => self.residue_leaders(r),
            Suite::TopLeaders => self.top_leaders(),
            Suite::DimAboveLeader(r) => self.dim_above_leader(r),
            Suite::TwoLeaderCode => self.two_leader(),
            Suite::ShiftedDim => self.shifted(),
            Suite::LowWeightBounds => self.low_weight(),
            Suite::Table(t) => self.table(t),
            Suite::DualParams => self.dual_params(),
            Suite::DuallyBch => self.dually_bch(),
            Suite::Examples => self.examples(),
        }
    }

    fn per_cell(&self, f: impl Fn(u64, u32) -> Vec<VerificationCase> + Sync) -> Vec<VerificationCase> {
        self.config
            .cells()
            .into_par_iter()
            .flat_map_iter(|(q, m)| f(q, m))
            .collect()
    }

    fn small_delta(&self) -> Vec<VerificationCase> {
        const CLAIM: &str = "small-delta/dimension";
        self.per_cell(|q, m| {
            let Ok(max) = f::small_delta_max(q, m) else {
                return vec![skip(CLAIM, params(&[("q", q), ("m", m as u64)]), Status::SkippedBudget, "q^m too large")];
            };
            if let Err(e) = self.qm(q, m) {
                return vec![skip(CLAIM, params(&[("q", q), ("m", m as u64)]), Status::SkippedBudget, e.to_string())];
            }
            let mut out = Vec::new();
            for delta in 2..=max {
                let p = params(&[("q", q), ("m", m as u64), ("delta", delta as u64)]);
                let claim = f::dim_small_delta(q, m, delta);
                out.push(check(
                    CLAIM,
                    p.clone(),
                    claim.map(|c| num(c.k)),
                    || self.neg_dim(q, m, delta, 0),
                ));
                // The distance lower bound, wherever the exact distance is cheap.
                let n = (q.pow(m) - 1) / 2;
                if n <= 200 {
                    let lower = f::dim_small_delta(q, m, delta).map(|c| interval(Some(c.d_lower as u64), None));
                    out.push(check("small-delta/distance", p, lower, || {
                        let model = self.code(q, m, CodeSpec::negacyclic(n, delta as u64, 0)?, Side::Smaller)?;
                        self.exact_distance(&model).map(Value::from)
                    }));
                }
            }
            out
        })
    }

    fn digit_suite(&self, suite: Suite) -> Vec<VerificationCase> {
        let id = suite.id();
        self.per_cell(|q, m| {
            let cell = params(&[("q", q), ("m", m as u64)]);
            let mut tuples: Vec<(u64, u64)> = Vec::new();
            match suite {
                Suite::UniformDigit | Suite::LeadingDigit => {
                    if f::FormulaParams::new(q, m, 1, 0).check_uniform().is_ok() {
                        tuples.extend((1..).take_while(|a| 2 * a < q - 1).map(|a| (a, 0)));
                    }
                }
                Suite::AlternatingZero => {
                    if f::FormulaParams::new(q, m, 0, 1).check_alternating().is_ok() {
                        tuples.extend((1..q).map(|b| (0, b)));
                    }
                }
                _ => {
                    for a in 0..q {
                        for b in 1..q {
                            if f::FormulaParams::new(q, m, a, b).check_alternating().is_ok() {
                                tuples.push((a, b));
                            }
                        }
                    }
                }
            }
            if tuples.is_empty() {
                return vec![skip(&format!("{id}/coset"), cell, Status::SkippedPrecondition, "no admissible (a, b) at this (q, m)")];
            }
            let mut out = Vec::new();
            for (a, b) in tuples {
                let claim = match suite {
                    Suite::UniformDigit => f::dim_uniform_digit(q, m, a),
                    Suite::LeadingDigit => f::dim_leading_digit(q, m, a),
                    Suite::AlternatingDigit => f::dim_alternating_digit(q, m, a, b),
                    Suite::TwoLeadingDigits => f::dim_two_leading_digits(q, m, a, b),
                    _ => f::dim_alternating_zero(q, m, b),
                };
                let mut pairs = vec![("q", q), ("m", m as u64), ("a", a)];
                if !matches!(suite, Suite::UniformDigit | Suite::LeadingDigit) {
                    pairs.push(("b", b));
                }
                let p = params(&pairs);
                let delta = claim.as_ref().map(|c| c.delta).unwrap_or(0);
                out.push(check(
                    &format!("{id}/coset"),
                    p.clone(),
                    claim.as_ref().map(|c| big(&c.k)).map_err(Clone::clone),
                    || self.neg_dim(q, m, delta, 0),
                ));
                let digits = match suite {
                    Suite::UniformDigit => Some(f::digit_oracle_uniform(q, m, a)),
                    Suite::AlternatingDigit | Suite::AlternatingZero => Some(f::digit_oracle_alternating(q, m, a, b)),
                    _ => None,
                };
                if let Some(d) = digits {
                    out.push(check(
                        &format!("{id}/digits"),
                        p,
                        claim.as_ref().map(|c| big(&c.k)).map_err(Clone::clone),
                        || d.map(|v| big(&v)),
                    ));
                }
            }
            out
        })
    }

    fn leader_case(&self, claim: &str, q: u64, m: u32, i: u32, formula: Result<f::LeaderClaim>) -> VerificationCase {
        let p = params(&[("q", q), ("m", m as u64), ("i", i as u64)]);
        check(
            claim,
            p,
            formula.map(|c| json!({"value": num(c.value), "orbitSize": c.orbit_size})),
            || {
                let modulus = self.qm(q, m)? - 1;
                let t = self.leaders(modulus, q)?;
                let v = t.ith_largest_odd(i as usize)?;
                Ok(json!({"value": v, "orbitSize": t.size_of(v).unwrap_or(0)}))
            },
        )
    }

    fn top_odd_leaders(&self) -> Vec<VerificationCase> {
        self.per_cell(|q, m| {
            (1..=3)
                .map(|i| self.leader_case("top-odd-leaders", q, m, i, f::top_odd_leaders(q, m, i)))
                .collect()
        })
    }

    fn residue_leaders(&self, r: u32) -> Vec<VerificationCase> {
        let claim = format!("odd-leaders-mod3-{r}");
        self.per_cell(|q, m| {
            if m % 3 != r {
                return Vec::new();
            }
            let Some(max) = f::residue_family_max_index(m) else {
                return vec![skip(&claim, params(&[("q", q), ("m", m as u64)]), Status::SkippedPrecondition, "m below the family's floor")];
            };
            (2..=max)
                .map(|i| self.leader_case(&claim, q, m, i, f::odd_leader_residue_family(q, m, i)))
                .collect()
        })
    }

    fn top_leaders(&self) -> Vec<VerificationCase> {
        self.per_cell(|q, m| {
            let formula = f::top_leaders(q, m).map(|t| {
                json!({"delta1": num(t.delta1), "size1": t.size1, "delta2": num(t.delta2), "size2": t.size2})
            });
            vec![check("top-leaders", params(&[("q", q), ("m", m as u64)]), formula, || {
                let n = (self.qm(q, m)? - 1) / 2;
                let t = self.leaders(n, q)?;
                let (d1, d2) = (t.ith_largest(1)?, t.ith_largest(2)?);
                Ok(json!({"delta1": d1, "size1": t.size_of(d1), "delta2": d2, "size2": t.size_of(d2)}))
            })]
        })
    }

    fn dim_above_leader(&self, r: u32) -> Vec<VerificationCase> {
        let claim = format!("dim-above-leader-mod3-{r}");
        self.per_cell(|q, m| {
            if m % 3 != r {
                return Vec::new();
            }
            let Some(max) = f::residue_family_max_index(m) else {
                return vec![skip(&claim, params(&[("q", q), ("m", m as u64)]), Status::SkippedPrecondition, "m below the family's floor")];
            };
            (2..=max)
                .map(|i| {
                    let formula = f::dim_above_odd_leader(q, m, i);
                    let delta = formula.as_ref().map(|c| c.delta).unwrap_or(0);
                    let p = params(&[("q", q), ("m", m as u64), ("i", i as u64)]);
                    check(&claim, p, formula.map(|c| num(c.k)), || self.neg_dim(q, m, delta, 0))
                })
                .collect()
        })
    }

    fn two_leader(&self) -> Vec<VerificationCase> {
        self.per_cell(|q, m| {
            let cell = params(&[("q", q), ("m", m as u64)]);
            if m < 3 {
                return vec![skip("two-leader-code/dimension", cell, Status::SkippedPrecondition, "needs m >= 3")];
            }
            let n = (q.pow(m) - 1) / 2;
            let dual_k = n - 2 * m as u64;
            let mut out = Vec::new();
            for (d, even) in [(7u64, false), (6, true)] {
                let claim = format!("two-leader-code/packing-{d}");
                let c = sphere_packing_check(n, dual_k, d, q);
                let detail = c.as_ref().ok().map(|s| {
                    let clause = if even { s.even.clone().unwrap() } else { s.radius.clone() };
                    format!("lhs={} rhs={}", clause.lhs, clause.rhs)
                });
                let case = check(&claim, cell.clone(), Ok(Value::Bool(false)), || {
                    let s = c?;
                    Ok(Value::Bool(if even { s.even.unwrap().holds } else { s.radius.holds }))
                });
                out.push(match detail {
                    Some(d) => with_detail(case, d),
                    None => case,
                });
            }
            let code = self
                .enumerable(q, 2 * m as u64, n)
                .and_then(|_| self.field(q, m))
                .and_then(two_leader_code);
            let code = Arc::new(code);
            let enumerated = code.as_ref().as_ref().map_err(Clone::clone).and_then(|c| {
                let w = weight_enumerator_exhaustive(&c.model, self.config.budget)?;
                let dual = macwilliams_transform(&w)?;
                Ok((w, dual))
            });
            let claim_of = |f: fn(&TwoLeaderCode) -> Value| -> Result<Value> {
                code.as_ref().as_ref().map(f).map_err(Clone::clone)
            };
            out.push(check("two-leader-code/dimension", cell.clone(), Ok(Value::from(2 * m as u64)), || {
                claim_of(|c| Value::from(c.model.k()))
            }));
            out.push(check(
                "two-leader-code/distance",
                cell.clone(),
                Ok(interval(Some(((q - 2) * q.pow(m - 1) - 1) / 2), None)),
                || {
                    let (w, _) = enumerated.as_ref().map_err(Clone::clone)?;
                    Ok(Value::from(w.min_distance().unwrap_or(n + 1)))
                },
            ));
            out.push(check("two-leader-code/dual-dimension", cell.clone(), Ok(Value::from(dual_k)), || {
                claim_of(|c| Value::from(c.model.n() - c.model.k()))
            }));
            out.push(check("two-leader-code/dual-distance", cell, Ok(interval(Some(3), Some(5))), || {
                let (_, dual) = enumerated.as_ref().map_err(Clone::clone)?;
                Ok(Value::from(dual.min_distance().unwrap_or(n + 1)))
            }));
            out
        })
    }

    fn shifted(&self) -> Vec<VerificationCase> {
        const PER_SHIFT: usize = 24;
        self.per_cell(|q, m| {
            let cell = params(&[("q", q), ("m", m as u64)]);
            let mut out = Vec::new();
            for b in 0..=3u64 {
                let valid: Vec<u64> = (2..)
                    .map_while(|delta| match f::dim_shifted(q, m, delta, b) {
                        Err(Error::OutOfRange(_)) => None,
                        r => Some((delta, r.is_ok())),
                    })
                    .filter(|&(_, ok)| ok)
                    .map(|(d, _)| d)
                    .collect();
                let picks: Vec<u64> = if valid.len() <= PER_SHIFT {
                    valid
                } else {
                    (0..PER_SHIFT).map(|j| valid[j * (valid.len() - 1) / (PER_SHIFT - 1)]).collect()
                };
                for delta in picks {
                    let p = params(&[("q", q), ("m", m as u64), ("delta", delta), ("b", b)]);
                    let claim = f::dim_shifted(q, m, delta, b);
                    out.push(check(
                        "shifted-dim/dimension",
                        p.clone(),
                        claim.map(|c| num(c.k)),
                        || self.neg_dim(q, m, delta as u128, b),
                    ));
                    out.push(check("shifted-dim/absorption", p, Ok(Value::Bool(true)), || {
                        let n = (self.qm(q, m)? - 1) / 2;
                        let t1 = defining_set_for(&CodeSpec::negacyclic(n, delta, b)?, q);
                        let t2 = defining_set_for(&CodeSpec::negacyclic(n, b + delta, 0)?, q);
                        Ok(Value::Bool(t1 == t2))
                    }));
                }
            }
            if out.is_empty() {
                out.push(skip("shifted-dim/dimension", cell, Status::SkippedPrecondition, "no (delta, b) satisfies the range and shift condition"));
            }
            out
        })
    }

    fn low_weight(&self) -> Vec<VerificationCase> {
        self.per_cell(|q, m| {
            let cell = params(&[("q", q), ("m", m as u64)]);
            let Some(n) = checked_pow(q, m).map(|v| ((v - 1) / 2) as u64) else {
                return vec![skip("low-weight-bounds/distance", cell, Status::SkippedBudget, "q^m too large")];
            };
            if n % (q - 1) != 0 {
                return vec![skip("low-weight-bounds/distance", cell, Status::SkippedPrecondition, "(q-1) does not divide n")];
            }
            let r = n / (q - 1);
            let mut out = Vec::new();
            for delta_a in (1..=r).filter(|d| r % d == 0) {
                for k in 1..q {
                    let p = params(&[("q", q), ("m", m as u64), ("k", k), ("deltaA", delta_a)]);
                    let bounds = f::low_weight_bounds(q, n, k, delta_a);
                    if let Ok(b) = &bounds {
                        if b.delta < 2 || b.delta > n {
                            out.push(skip("low-weight-bounds/distance", p, Status::SkippedPrecondition, format!("designed distance {} outside [2, n]", b.delta)));
                            continue;
                        }
                    }
                    let expected = bounds.map(|b| interval(Some(b.d_lower), Some(b.d_upper)));
                    out.push(check("low-weight-bounds/distance", p.clone(), expected, || {
                        let delta = f::low_weight_bounds(q, n, k, delta_a)?.delta;
                        let model = self.code(q, m, CodeSpec::negacyclic(n, delta, 1)?, Side::Smaller)?;
                        self.exact_distance(&model).map(Value::from)
                    }));
                    if delta_a % 2 == 1 {
                        let upper = f::low_weight_bounds(q, n, k, delta_a).map(|b| interval(None, Some(b.d_upper)));
                        out.push(check("low-weight-bounds/codeword", p, upper, || {
                            let field = self.field(q, m)?;
                            let w = low_weight_codeword(&field, delta_a, k)?;
                            self.budget_check("root evaluations", w.weight as u128 * w.delta as u128)?;
                            if !w.vanishes_on_designed_roots(&field)? {
                                return Ok(Value::String("not a codeword".into()));
                            }
                            Ok(Value::from(w.weight as u64))
                        }));
                    }
                }
            }
            out
        })
    }

    /// One case per cell: the merged closed-form table against the
    /// enumerated extended code at the top designed distance of its range.
    fn table(&self, table: ExtendedTable) -> Vec<VerificationCase> {
        let id = table.id();
        self.per_cell(|q, m| {
            let cell = params(&[("q", q), ("m", m as u64)]);
            let claim = match f::table_weight_distribution(q, m, table) {
                Ok(c) => c,
                Err(Error::ParityMismatch(_)) => return Vec::new(),
                Err(e) => return vec![skip(id, cell, Status::SkippedPrecondition, e.to_string())],
            };
            let sums = claim.total() == crate::util::big_pow(q, claim.k as u32);
            let delta = claim.delta_range.1;
            let p = params(&[("q", q), ("m", m as u64), ("delta", delta as u64)]);
            let case = check(id, p, Ok(pairs_value(claim.merged())), || {
                let model = self.code(q, m, CodeSpec::cyclic(claim.n as u64, delta as u64, 1)?, Side::Code)?;
                Ok(enumerator_value(&extended_weight_enumerator(&model, self.config.budget)?))
            });
            let note = format!("closed-form total is q^k: {sums}; every row positive: {}", claim.all_positive());
            vec![with_detail(case, note)]
        })
    }

    fn dual_params(&self) -> Vec<VerificationCase> {
        self.per_cell(|q, m| {
            let mut out = Vec::new();
            for table in ExtendedTable::ALL {
                let id = format!("dual-params/{}", table.id());
                let cell = params(&[("q", q), ("m", m as u64)]);
                let claim = match f::table_weight_distribution(q, m, table) {
                    Ok(c) => c,
                    Err(Error::ParityMismatch(_)) => continue,
                    Err(e) => {
                        out.push(skip(&format!("{id}/dimension"), cell, Status::SkippedPrecondition, e.to_string()));
                        continue;
                    }
                };
                let n = claim.n as u64;
                let spec = CodeSpec::cyclic(n, claim.delta_range.1 as u64, 1);
                out.push(check(&format!("{id}/dimension"), cell.clone(), Ok(num(claim.dual.k)), || {
                    Ok(Value::from(defining_set_for(&spec.clone()?, q).len() as u64))
                }));
                out.push(check(
                    &format!("{id}/distance"),
                    cell,
                    Ok(interval(Some(claim.dual.d_min), Some(claim.dual.d_max))),
                    || {
                        let c = self.code(q, m, spec?, Side::Code)?;
                        let w = macwilliams_transform(&weight_enumerator_exhaustive(&c, self.config.budget)?)?;
                        Ok(Value::from(w.min_distance().unwrap_or(n + 1)))
                    },
                ));
            }
            out
        })
    }

    fn dually_bch(&self) -> Vec<VerificationCase> {
        const MAX_N: u64 = 1024;
        self.per_cell(|q, m| {
            let cell = params(&[("q", q), ("m", m as u64)]);
            if m < 2 || (m % 2 == 1 && m < 3) {
                return vec![skip("dually-bch", cell, Status::SkippedPrecondition, "needs odd m >= 3 or even m >= 2")];
            }
            let n = match self.qm(q, m) {
                Ok(v) => (v - 1) / 2,
                Err(e) => return vec![skip("dually-bch", cell, Status::SkippedBudget, e.to_string())],
            };
            if n > MAX_N {
                return vec![skip("dually-bch", cell, Status::SkippedBudget, format!("n = {n} above {MAX_N}"))];
            }
            (2..n)
                .map(|delta| {
                    let p = params(&[("q", q), ("m", m as u64), ("delta", delta)]);
                    let mut witness = None;
                    let case = check("dually-bch", p, f::dually_bch_condition(q, m, delta).map(Value::Bool), || {
                        let t = defining_set_for(&CodeSpec::cyclic(n, delta, 2)?, q);
                        witness = consecutive_union_witness(&t.dual());
                        Ok(Value::Bool(witness.is_some()))
                    });
                    match witness {
                        Some((b, d)) => with_detail(case, format!("dual set = consecutive union from {b}, length {}", d - 1)),
                        None => case,
                    }
                })
                .collect()
        })
    }

    fn examples(&self) -> Vec<VerificationCase> {
        let mut out = Vec::new();
        // Dimension examples: (q, m, a, b, delta, k).
        let dims: [(u64, u32, u64, u64, u128, u64); 4] =
            [(5, 3, 1, 0, 16, 32), (7, 3, 2, 0, 58, 62), (5, 4, 1, 2, 105, 80), (5, 4, 2, 2, 183, 16)];
        for (q, m, a, b, delta, k) in dims {
            let p = params(&[("q", q), ("m", m as u64), ("a", a), ("b", b), ("delta", delta as u64)]);
            let formula = if b == 0 { f::dim_uniform_digit(q, m, a) } else { f::dim_alternating_digit(q, m, a, b) };
            out.push(check("examples/dimension-formula", p.clone(), Ok(json!({"delta": delta as u64, "k": k})), || {
                let c = formula?;
                Ok(json!({"delta": num(c.delta), "k": big(&c.k)}))
            }));
            out.push(check("examples/dimension-coset", p, Ok(Value::from(k)), || self.neg_dim(q, m, delta, 0)));
        }
        // [40, 28, 6] with its distance window.
        let p = params(&[("q", 3), ("m", 4), ("k", 1), ("deltaA", 10)]);
        let model = Arc::new(self.field(3, 4).and_then(|f| LinearCodeModel::bch(f, CodeSpec::negacyclic(40, 5, 1)?)));
        out.push(check("examples/low-weight-parameters", p.clone(), Ok(json!({"n": 40, "k": 28, "d": 6})), || {
            let c = model.as_ref().as_ref().map_err(Clone::clone)?;
            let d = crate::analysis::distance_via_dual(c, self.config.budget.max(1 << 20))?.d;
            Ok(json!({"n": c.n(), "k": c.k(), "d": d}))
        }));
        let window = f::low_weight_bounds(3, 40, 1, 10).map(|b| interval(Some(b.d_lower), Some(b.d_upper)));
        out.push(check("examples/low-weight-window", p, window, || Ok(Value::from(6u64))));
        // Extended-code enumerators as printed: (q, m, table, [n, k, d], pairs).
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
        for (q, m, table, nkd, pairs) in printed {
            let p = params(&[("q", q), ("m", m as u64)]);
            let claim = format!("examples/{}", table.id());
            let enumerated = Arc::new(f::table_weight_distribution(q, m, table).and_then(|c| {
                let model = LinearCodeModel::bch(self.field(q, m)?, CodeSpec::cyclic(c.n as u64, c.delta_range.1 as u64, 1)?)?;
                extended_weight_enumerator(&model, self.config.budget.max(1 << 20))
            }));
            let get = || enumerated.as_ref().as_ref().map_err(Clone::clone);
            out.push(check(&format!("{claim}/parameters"), p.clone(), Ok(json!(nkd)), || {
                let w = get()?;
                Ok(json!([w.n, w.dimension(), w.min_distance()]))
            }));
            let expected = pairs_value(pairs.iter().map(|&(w, c)| (w as u128, BigUint::from(c))));
            out.push(check(&format!("{claim}/printed-enumerator"), p.clone(), Ok(expected), || {
                Ok(enumerator_value(get()?))
            }));
            out.push(check(&format!("{claim}/table-enumerator"), p, f::table_weight_distribution(q, m, table).map(|c| pairs_value(c.merged())), || {
                Ok(enumerator_value(get()?))
            }));
        }
        out
    }
}

/// Runs one suite (or `all`) over the grid.
pub fn run_suite(suite_id: &str, config: &GridConfig) -> Result<VerificationReport> {
    let suites = if suite_id == "all" {
        Suite::all()
    } else {
        vec![suite_id.parse::<Suite>()?]
    };
    let start = Instant::now();
    let harness = Harness::new(config.clone());
    let mut cases: Vec<VerificationCase> = suites.into_iter().flat_map(|s| harness.run(s)).collect();
    cases.sort_by(|a, b| (&a.claim_id, &a.params).cmp(&(&b.claim_id, &b.params)));
    Ok(VerificationReport {
        suite: suite_id.to_string(),
        config: config.clone(),
        summary: Summary::tally(&cases),
        cases,
        wall_clock_ms: start.elapsed().as_millis(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            _ => Err(Error::InvalidParameter(format!("unknown format {s}"))),
        }
    }
}

fn params_text(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["claimId", "params", "expected", "actual", "status", "detail"])?;
            for c in &report.cases {
                w.write_record([
                    c.claim_id.as_str(),
                    &params_text(&c.params),
                    &c.expected.to_string(),
                    &c.actual.to_string(),
                    &c.status.to_string(),
                    c.detail.as_deref().unwrap_or(""),
                ])?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
        ReportFormat::Text => {
            let mut s = format!("suite {}: {} cases\n", report.suite, report.summary.total);
            for c in &report.cases {
                s += &format!(
                    "{:<21} {} [{}] expected={} actual={}",
                    c.status.to_string(),
                    c.claim_id,
                    params_text(&c.params),
                    c.expected,
                    c.actual
                );
                if let Some(d) = &c.detail {
                    s += &format!(" ({d})");
                }
                s.push('\n');
            }
            let m = &report.summary;
            s += &format!(
                "pass={} fail={} skipped-budget={} skipped-precondition={} wall-clock={}ms\n",
                m.pass, m.fail, m.skipped_budget, m.skipped_precondition, report.wall_clock_ms
            );
            s += if report.passed() { "PASS\n" } else { "FAIL\n" };
            Ok(s.into_bytes())
        }
    }
}

/// Every closed form reachable through [`evaluate_formula`]:
/// `(id, arguments, what it returns)`.
pub const FORMULAS: &[(&str, &str, &str)] = &[
    ("small-delta", "q m delta", "dim C_(n,-1,delta,0) and its distance lower bound for small delta"),
    ("uniform-digit", "q m a", "designed distance and dimension for the uniform digit pattern"),
    ("leading-digit", "q m a", "the same with one leading digit changed"),
    ("alternating-digit", "q m a b", "designed distance and dimension for alternating digits, even m"),
    ("two-leading-digits", "q m a b", "the alternating pattern with two leading digits changed"),
    ("alternating-zero", "q m b", "the alternating pattern with a = 0"),
    ("top-odd-leaders", "q m i", "i-th largest odd coset leader modulo q^m-1, i <= 3"),
    ("odd-leaders-residue", "q m i", "i-th largest odd coset leader from the m mod 3 family"),
    ("dim-above-leader", "q m i", "dim C_(n,-1,(delta_i'+1)/2,0)"),
    ("top-leaders", "q m", "two largest coset leaders modulo n with orbit sizes"),
    ("two-leader-code", "q m", "parameters claimed for the code with check polynomial M_1 M_delta1'"),
    ("shifted-dim", "q m delta b", "dim C_(n,-1,delta,b) when the shift is absorbed"),
    ("low-weight-bounds", "q m k deltaA", "distance window of C_(n,-1,delta,1) from the constructed codeword"),
    ("ext-even-top", "q m", "weight table of the extended code, even m, delta up to delta_1"),
    ("ext-odd-top", "q m", "weight table of the extended code, odd m, delta up to delta_1"),
    ("ext-odd-second", "q m", "weight table of the extended code, odd m, delta = delta_2"),
    ("ext-even-second", "q m", "weight table of the extended code, even m, delta = delta_2"),
    ("dually-bch", "q m delta", "whether C_(n,1,delta,2) is dually-BCH"),
];

fn leader_json(c: f::LeaderClaim) -> Value {
    json!({"value": num(c.value), "orbitSize": c.orbit_size})
}

/// Evaluates one closed form. Missing arguments and unknown ids are errors;
/// a failed precondition yields `preconditionsOk: false` with the reason.
pub fn evaluate_formula(id: &str, args: &BTreeMap<String, u64>) -> Result<Value> {
    let spec = FORMULAS
        .iter()
        .find(|(fid, _, _)| *fid == id)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown formula id `{id}`")))?;
    let arg = |name: &str| -> Result<u64> {
        args.get(name)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("{id} needs --{name}")))
    };
    for name in spec.1.split(' ') {
        arg(name)?;
    }
    let q = arg("q")?;
    let m = u32::try_from(arg("m")?).map_err(|_| Error::InvalidParameter("m too large".into()))?;
    let digit = |r: Result<f::DigitDim>| r.map(|c| json!({"n": num(c.n), "delta": num(c.delta), "k": big(&c.k)}));
    let value: Result<Value> = match id {
        "small-delta" => f::dim_small_delta(q, m, arg("delta")? as u128)
            .map(|c| json!({"n": num(c.n), "k": num(c.k), "dLower": num(c.d_lower)})),
        "uniform-digit" => digit(f::dim_uniform_digit(q, m, arg("a")?)),
        "leading-digit" => digit(f::dim_leading_digit(q, m, arg("a")?)),
        "alternating-digit" => digit(f::dim_alternating_digit(q, m, arg("a")?, arg("b")?)),
        "two-leading-digits" => digit(f::dim_two_leading_digits(q, m, arg("a")?, arg("b")?)),
        "alternating-zero" => digit(f::dim_alternating_zero(q, m, arg("b")?)),
        "top-odd-leaders" => f::top_odd_leaders(q, m, arg("i")? as u32).map(leader_json),
        "odd-leaders-residue" => f::odd_leader_residue_family(q, m, arg("i")? as u32).map(leader_json),
        "dim-above-leader" => {
            f::dim_above_odd_leader(q, m, arg("i")? as u32).map(|c| json!({"delta": num(c.delta), "k": num(c.k)}))
        }
        "top-leaders" => f::top_leaders(q, m).map(|t| {
            json!({"delta1": num(t.delta1), "size1": t.size1, "delta2": num(t.delta2), "size2": t.size2})
        }),
        "two-leader-code" => two_leader_claim(q, m),
        "shifted-dim" => f::dim_shifted(q, m, arg("delta")?, arg("b")?)
            .map(|c| json!({"k": num(c.k), "absorbedDelta": c.absorbed_delta})),
        "low-weight-bounds" => checked_pow(q, m)
            .ok_or_else(|| Error::OutOfRange("q^m overflows".into()))
            .and_then(|v| f::low_weight_bounds(q, ((v - 1) / 2) as u64, arg("k")?, arg("deltaA")?))
            .map(|b| json!({"delta": b.delta, "exact": b.exact, "dLower": b.d_lower, "dUpper": b.d_upper})),
        "dually-bch" => f::dually_bch_condition(q, m, arg("delta")?).map(Value::Bool),
        table => f::table_weight_distribution(q, m, ExtendedTable::from_id(table).expect("listed id")).map(|c| {
            json!({
                "n": num(c.n + 1),
                "k": num(c.k),
                "d": num(c.d),
                "deltaRange": [num(c.delta_range.0), num(c.delta_range.1)],
                "weights": pairs_value(c.merged()),
                "dual": {"n": num(c.dual.n), "k": num(c.dual.k), "dMin": c.dual.d_min, "dMax": c.dual.d_max},
            })
        }),
    };
    Ok(match value {
        Ok(v) => json!({"id": id, "value": v, "preconditionsOk": true}),
        Err(e) => json!({"id": id, "value": Value::Null, "preconditionsOk": false, "reason": e.to_string()}),
    })
}

fn two_leader_claim(q: u64, m: u32) -> Result<Value> {
    if m < 3 {
        return Err(Error::OutOfRange("needs m >= 3".into()));
    }
    let qm = checked_pow(q, m).ok_or_else(|| Error::OutOfRange("q^m overflows".into()))?;
    let n = (qm - 1) / 2;
    let d_lower = ((q as u128 - 2) * (qm / q as u128) - 1) / 2;
    Ok(json!({
        "n": num(n),
        "k": 2 * m,
        "dLower": num(d_lower),
        "dualK": num(n - 2 * m as u128),
        "dualDistance": {"min": 3, "max": 5},
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(q: u64, m: u32) -> GridConfig {
        GridConfig {
            q_set: vec![q],
            m_max: Some(m),
            ..Default::default()
        }
    }

    #[test]
    fn odd_top_table_two_cells() {
        let mut cases = run_suite("ext-odd-top", &grid(3, 3)).unwrap().cases;
        cases.extend(run_suite("ext-odd-top", &grid(5, 3)).unwrap().cases);
        assert_eq!(cases.len(), 2);
        assert!(cases.iter().all(|c| c.status == Status::Pass), "{cases:#?}");
    }

    #[test]
    fn empty_grid_gives_no_cases() {
        let cfg = GridConfig {
            q_set: vec![],
            ..Default::default()
        };
        let r = run_suite("small-delta", &cfg).unwrap();
        assert!(r.cases.is_empty());
        assert_eq!(r.summary, Summary::default());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("no-such-suite", &GridConfig::default()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn interval_agreement() {
        let iv = interval(Some(3), Some(5));
        assert!(agrees(&iv, &json!(4)));
        assert!(!agrees(&iv, &json!(6)));
        assert!(agrees(&json!({"value": 1}), &json!({"value": 1})));
        assert!(!agrees(&json!({"value": 1}), &json!(1)));
    }

    #[test]
    fn reports_round_trip_and_are_stable() {
        let cfg = grid(3, 4);
        let a = run_suite("top-leaders", &cfg).unwrap();
        let b = run_suite("top-leaders", &cfg).unwrap();
        let ja = emit_report(&a, ReportFormat::Json).unwrap();
        assert_eq!(ja, emit_report(&b, ReportFormat::Json).unwrap());
        let mut back: VerificationReport = serde_json::from_slice(&ja).unwrap();
        back.wall_clock_ms = a.wall_clock_ms;
        assert_eq!(back, a);
        let csv = String::from_utf8(emit_report(&a, ReportFormat::Csv).unwrap()).unwrap();
        assert_eq!(csv.lines().count(), a.cases.len() + 1);
        let text = String::from_utf8(emit_report(&a, ReportFormat::Text).unwrap()).unwrap();
        assert_eq!(text.lines().last(), Some("PASS"));
    }

    #[test]
    fn budget_turns_into_skips() {
        let cfg = GridConfig {
            q_set: vec![3],
            m_max: Some(4),
            budget: 30,
            cache_dir: None,
        };
        let r = run_suite("top-leaders", &cfg).unwrap();
        assert_eq!(r.cases.len(), 3);
        assert_eq!(r.summary.skipped_budget, 1);
    }

    #[test]
    fn formula_evaluation() {
        let args: BTreeMap<String, u64> = [("q", 5), ("m", 3), ("a", 1)].map(|(k, v)| (k.to_string(), v)).into();
        let v = evaluate_formula("uniform-digit", &args).unwrap();
        assert_eq!(v["value"]["k"], json!(32));
        assert_eq!(v["preconditionsOk"], json!(true));
        let bad: BTreeMap<String, u64> = [("q", 3), ("m", 3), ("a", 1)].map(|(k, v)| (k.to_string(), v)).into();
        assert_eq!(evaluate_formula("uniform-digit", &bad).unwrap()["preconditionsOk"], json!(false));
        assert!(evaluate_formula("uniform-digit", &BTreeMap::new()).is_err());
        assert!(evaluate_formula("nope", &args).is_err());
    }
}
