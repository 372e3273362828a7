//! Closed-form parameter formulas for BCH codes of length `n = (q^m - 1)/2`
//! and the digit-automaton oracles that cross-check the dimension sums.
//!
//! Every formula checks its preconditions and returns `OutOfRange` (or a
//! more specific error) instead of extrapolating.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::codes::low_weight_check;
use crate::error::{out_of_range, Error, Result};
use crate::field::PrimePower;
use crate::util::{big_pow, binomial, checked_pow, gcd};

fn pow(q: u64, e: u32) -> Result<u128> {
    checked_pow(q, e).ok_or_else(|| out_of_range(format!("{q}^{e} exceeds 128 bits")))
}

fn check_q(q: u64) -> Result<()> {
    let pp = PrimePower::from_q(q)?;
    if pp.p() == 2 {
        return Err(out_of_range(format!("q = {q} must be odd")));
    }
    Ok(())
}

fn half_len(q: u64, m: u32) -> Result<u128> {
    Ok((pow(q, m)? - 1) / 2)
}

fn ceil_half(x: u128) -> u128 {
    x.div_ceil(2)
}

/// Free parameters of the digit-pattern dimension formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaParams {
    pub q: u64,
    pub m: u32,
    pub a: u64,
    pub b: u64,
}

impl FormulaParams {
    pub fn new(q: u64, m: u32, a: u64, b: u64) -> Self {
        Self { q, m, a, b }
    }

    /// `1` when `x` is even, else `0`.
    pub fn kappa(x: u64) -> u64 {
        u64::from(x.is_multiple_of(2))
    }

    /// Guards for the uniform-digit and leading-digit formulas:
    /// `1 <= a < (q-1)/2`, `q > 3`, `m > 2`.
    pub fn check_uniform(&self) -> Result<()> {
        check_q(self.q)?;
        if self.q <= 3 || self.m <= 2 {
            return Err(out_of_range(format!("need q > 3 and m > 2, got q={} m={}", self.q, self.m)));
        }
        if self.a < 1 || 2 * self.a >= self.q - 1 {
            return Err(out_of_range(format!("need 1 <= a < (q-1)/2, got a={}", self.a)));
        }
        Ok(())
    }

    /// Guards for the alternating-digit formulas: `2 | m`, `m > 2`,
    /// `1 <= a+b <= q-1`, `b >= 1`, `ceil((q-a-2)/2) >= 1`.
    pub fn check_alternating(&self) -> Result<()> {
        check_q(self.q)?;
        if !self.m.is_multiple_of(2) || self.m <= 2 {
            return Err(out_of_range(format!("need even m > 2, got m={}", self.m)));
        }
        if self.b < 1 || self.a + self.b > self.q - 1 {
            return Err(out_of_range(format!(
                "need b >= 1 and a+b <= q-1, got a={} b={}",
                self.a, self.b
            )));
        }
        if self.a + 3 > self.q {
            return Err(out_of_range(format!("need ceil((q-a-2)/2) >= 1, got a={}", self.a)));
        }
        Ok(())
    }
}

/// Dimension of `C_(n,-1,delta,0)` for a designed distance given by a digit
/// pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitDim {
    pub n: u128,
    /// The odd-leader bound `delta~` the designed distance is derived from.
    pub delta_tilde: u128,
    /// `ceil((delta~ + 1)/2)`.
    pub delta: u128,
    pub k: BigUint,
}

/// Dimension claim for small designed distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallDeltaDim {
    pub n: u128,
    pub k: u128,
    /// `delta + 1` when `q | (delta - (q+1)/2)`, else `delta`.
    pub d_lower: u128,
}

/// Largest designed distance the small-delta formula covers.
pub fn small_delta_max(q: u64, m: u32) -> Result<u128> {
    Ok(if m.is_multiple_of(2) {
        pow(q, m / 2)? + 1
    } else {
        pow(q, m.div_ceil(2))?.div_ceil(2)
    })
}

/// `k = n - m ceil((2 delta - 3)(q-1) / 2q)` for `2 <= delta <= small_delta_max`.
pub fn dim_small_delta(q: u64, m: u32, delta: u128) -> Result<SmallDeltaDim> {
    check_q(q)?;
    if m < 1 {
        return Err(out_of_range("m must be positive"));
    }
    let max = small_delta_max(q, m)?;
    if delta < 2 || delta > max {
        return Err(out_of_range(format!("delta = {delta} not in [2, {max}]")));
    }
    let n = half_len(q, m)?;
    let q = q as u128;
    let blocks = ((2 * delta - 3) * (q - 1)).div_ceil(2 * q);
    let k = n - m as u128 * blocks;
    let shifted = delta as i128 - q.div_ceil(2) as i128;
    let d_lower = if shifted.rem_euclid(q as i128) == 0 { delta + 1 } else { delta };
    Ok(SmallDeltaDim { n, k, d_lower })
}

/// `delta~ = a (q^m - 1)/(q - 1)`, the all-`a` digit string.
pub fn dim_uniform_digit(q: u64, m: u32, a: u64) -> Result<DigitDim> {
    let p = FormulaParams::new(q, m, a, 0);
    p.check_uniform()?;
    let n = half_len(q, m)?;
    let delta_tilde = a as u128 * ((pow(q, m)? - 1) / (q as u128 - 1));
    Ok(DigitDim {
        n,
        delta_tilde,
        delta: ceil_half(delta_tilde + 1),
        k: uniform_sum(q, m, a),
    })
}

fn uniform_sum(q: u64, m: u32, a: u64) -> BigUint {
    let odd = (q - a - 1).div_ceil(2);
    let even = (q - a).div_ceil(2);
    (0..=(m - 1) / 2)
        .map(|j| {
            big_pow(odd, 2 * j + 1) * big_pow(even, m - 2 * j - 1) * binomial(m as u64, 2 * j as u64 + 1)
        })
        .sum()
}

/// `delta~' = a q^(m-1) - 1`; the uniform-digit count plus `kappa(a) m`.
pub fn dim_leading_digit(q: u64, m: u32, a: u64) -> Result<DigitDim> {
    let base = dim_uniform_digit(q, m, a)?;
    let delta_tilde = a as u128 * pow(q, m - 1)? - 1;
    Ok(DigitDim {
        delta_tilde,
        delta: ceil_half(delta_tilde + 1),
        k: base.k + FormulaParams::kappa(a) * m as u64,
        ..base
    })
}

/// `delta~ = a (q^m-1)/(q-1) + b (q^m-1)/(q^2-1)`, digits alternating
/// `a+b, a, a+b, a, ...`.
pub fn dim_alternating_digit(q: u64, m: u32, a: u64, b: u64) -> Result<DigitDim> {
    FormulaParams::new(q, m, a, b).check_alternating()?;
    let qm = pow(q, m)?;
    let q1 = q as u128;
    let delta_tilde = a as u128 * ((qm - 1) / (q1 - 1)) + b as u128 * ((qm - 1) / (q1 * q1 - 1));
    Ok(DigitDim {
        n: (qm - 1) / 2,
        delta_tilde,
        delta: ceil_half(delta_tilde + 1),
        k: alternating_sum(q, m, a, b),
    })
}

fn alternating_sum(q: u64, m: u32, a: u64, b: u64) -> BigUint {
    let half = m / 2;
    let (low, high) = ((q - a - b) / 2, (q - a - b).div_ceil(2));
    let (odd_rest, even_rest) = ((q - a - 2).div_ceil(2), (q - a) / 2);
    let mut total = BigUint::zero();
    for t in 0..=half {
        // Cyclic placements of t non-adjacent marked positions: m/(m-t) C(m-t, t).
        let rings = if t == 0 {
            BigUint::from(1u32)
        } else {
            binomial((m - t) as u64, t as u64) * m / (m - t)
        };
        let free = m - 2 * t;
        let phi_even: BigUint = (0..=half - t)
            .map(|i| binomial(free as u64, 2 * i as u64) * big_pow(odd_rest, 2 * i) * big_pow(even_rest, free - 2 * i))
            .sum();
        let phi_odd: BigUint = (0..half - t)
            .map(|i| {
                binomial(free as u64, 2 * i as u64 + 1)
                    * big_pow(odd_rest, 2 * i + 1)
                    * big_pow(even_rest, free - 2 * i - 1)
            })
            .sum();
        for j in 0..=t {
            let even_case = if a % 2 == 1 { (t % 2) != (j % 2) } else { j % 2 == 1 };
            let phi = if even_case { &phi_even } else { &phi_odd };
            total += &rings * binomial(t as u64, j as u64) * big_pow(low, j) * big_pow(high, t - j) * phi;
        }
    }
    total
}

/// `delta~' = a(q^(m-1) + q^(m-2)) + b q^(m-2) - 1`; the alternating count
/// plus `kappa(b) m`.
pub fn dim_two_leading_digits(q: u64, m: u32, a: u64, b: u64) -> Result<DigitDim> {
    let base = dim_alternating_digit(q, m, a, b)?;
    let delta_tilde = a as u128 * (pow(q, m - 1)? + pow(q, m - 2)?) + b as u128 * pow(q, m - 2)? - 1;
    Ok(DigitDim {
        delta_tilde,
        delta: ceil_half(delta_tilde + 1),
        k: base.k + FormulaParams::kappa(b) * m as u64,
        ..base
    })
}

/// `delta'' = b (q^m - 1)/(q^2 - 1)`: the alternating formula at `a = 0`.
pub fn dim_alternating_zero(q: u64, m: u32, b: u64) -> Result<DigitDim> {
    check_q(q)?;
    if b < 1 || b > q - 1 {
        return Err(out_of_range(format!("need 1 <= b <= q-1, got b={b}")));
    }
    dim_alternating_digit(q, m, 0, b)
}

/// Transition rule of the alternating digit automaton: may digit `cur`
/// follow digit `prev` (one position lower)?
fn pair_allowed(a: u64, b: u64, prev: u64, cur: u64) -> bool {
    prev >= a && cur >= a && (cur != a || prev >= a + b)
}

/// Counts cyclic digit strings of length `m` over `[0, q)` whose adjacent
/// pairs satisfy `allowed` and whose digit sum is odd.
fn count_cyclic_odd(q: u64, m: u32, allowed: impl Fn(u64, u64) -> bool) -> BigUint {
    let q = q as usize;
    let ok: Vec<Vec<bool>> = (0..q)
        .map(|p| (0..q).map(|c| allowed(p as u64, c as u64)).collect())
        .collect();
    let mut total = BigUint::zero();
    for first in 0..q {
        // state[d][parity]: strings starting at `first` and ending at `d`.
        let mut state = vec![[BigUint::zero(), BigUint::zero()]; q];
        state[first][first % 2] = BigUint::from(1u32);
        for _ in 1..m {
            let mut next = vec![[BigUint::zero(), BigUint::zero()]; q];
            for (prev, counts) in state.iter().enumerate() {
                for cur in 0..q {
                    if ok[prev][cur] {
                        for par in 0..2 {
                            if !counts[par].is_zero() {
                                next[cur][(par + cur) % 2] += &counts[par];
                            }
                        }
                    }
                }
            }
            state = next;
        }
        for (last, counts) in state.iter().enumerate() {
            if ok[last][first] {
                total += &counts[1];
            }
        }
    }
    total
}

/// Odd residues of `Z_(q^m - 1)` whose base-`q` digits all lie in `[a, q-1]`.
/// For odd `q` a residue is odd exactly when its digit sum is odd.
pub fn digit_oracle_uniform(q: u64, m: u32, a: u64) -> Result<BigUint> {
    check_q(q)?;
    Ok(count_cyclic_odd(q, m, |p, c| p >= a && c >= a))
}

/// Odd residues whose digits satisfy, cyclically, `s_u = a => s_(u-1) >= a+b`
/// and `s_u > a => s_(u-1) >= a`.
pub fn digit_oracle_alternating(q: u64, m: u32, a: u64, b: u64) -> Result<BigUint> {
    check_q(q)?;
    Ok(count_cyclic_odd(q, m, |p, c| pair_allowed(a, b, p, c)))
}

/// A coset leader value with its claimed orbit size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeaderClaim {
    pub value: u128,
    pub orbit_size: u32,
}

fn leader_value(q: u64, m: u32, hi: i64, lo: i64) -> Result<u128> {
    if hi < 0 || lo < 0 {
        return Err(out_of_range(format!("negative exponent for q={q} m={m}")));
    }
    let top = pow(q, m)? - pow(q, m - 1)? - 1;
    top.checked_sub(pow(q, hi as u32)? + pow(q, lo as u32)?)
        .filter(|&v| v > 0)
        .ok_or_else(|| out_of_range(format!("formula is not positive at q={q} m={m}")))
}

/// The three largest odd coset leaders modulo `q^m - 1` (`i` in `1..=3`).
/// `i = 3` needs `q^m >= 25`.
pub fn top_odd_leaders(q: u64, m: u32, i: u32) -> Result<LeaderClaim> {
    check_q(q)?;
    if m < 2 {
        return Err(out_of_range("need m >= 2"));
    }
    let mi = m as i64;
    match i {
        1 => Ok(LeaderClaim {
            value: pow(q, m)? - pow(q, m - 1)? - 1,
            orbit_size: m,
        }),
        2 => Ok(LeaderClaim {
            value: leader_value(q, m, (2 * mi - 1) / 3, (mi - 1) / 3)?,
            orbit_size: if m.is_multiple_of(3) { m / 3 } else { m },
        }),
        3 => {
            if pow(q, m)? < 25 {
                return Err(out_of_range("the third leader needs q^m >= 25"));
            }
            let value = if !(m + 1).is_multiple_of(3) {
                leader_value(q, m, (2 * mi - 1 + 2) / 3, (mi - 1) / 3)?
            } else {
                leader_value(q, m, (2 * mi - 1) / 3, (mi + 1) / 3)?
            };
            Ok(LeaderClaim { value, orbit_size: m })
        }
        _ => Err(out_of_range(format!("i = {i} not in [1, 3]"))),
    }
}

/// Largest index `i` covered by the residue-class table for this `m`, or
/// `None` when `m` is below the table's floor.
pub fn residue_family_max_index(m: u32) -> Option<u32> {
    match m % 3 {
        2 if m >= 8 => Some(7),
        0 if m >= 9 => Some(10),
        1 if m >= 7 => Some(6),
        _ => None,
    }
}

/// `delta_i' = q^m - q^(m-1) - q^(E + eps) - q^(F + zeta) - 1` with the
/// offsets chosen by `m mod 3` and `i`.
pub fn odd_leader_residue_family(q: u64, m: u32, i: u32) -> Result<LeaderClaim> {
    check_q(q)?;
    let Some(max) = residue_family_max_index(m) else {
        return Err(out_of_range(format!("m = {m} below the family's floor")));
    };
    if i < 2 || i > max {
        return Err(out_of_range(format!("i = {i} not in [2, {max}] for m = {m}")));
    }
    let (mi, ii) = (m as i64, i as i64);
    let (hi, lo) = match m % 3 {
        2 => {
            let eps = if i <= 3 { 0 } else { 1 };
            let zeta = match i {
                2 => -1,
                3 => 1,
                _ => ii - 6,
            };
            ((2 * mi - 1) / 3 + eps, (mi + 1) / 3 + zeta)
        }
        0 => {
            let eps = match i {
                2 => -1,
                3..=5 => 0,
                _ => 1,
            };
            let zeta = match i {
                2 | 3 => -1,
                4 | 5 => ii - 4,
                _ => ii - 8,
            };
            (2 * mi / 3 + eps, mi / 3 + zeta)
        }
        _ => {
            let (eps, zeta) = if i == 2 { (-1, 0) } else { (0, ii - 4) };
            ((2 * mi + 1) / 3 + eps, (mi - 1) / 3 + zeta)
        }
    };
    let orbit_size = if i == 2 && m.is_multiple_of(3) { m / 3 } else { m };
    Ok(LeaderClaim {
        value: leader_value(q, m, hi, lo)?,
        orbit_size,
    })
}

/// The `i`-th largest odd leader: the residue-class table where it applies,
/// otherwise the top-three formula.
pub fn delta_prime_family(q: u64, m: u32, i: u32) -> Result<LeaderClaim> {
    match residue_family_max_index(m) {
        Some(max) if (2..=max).contains(&i) => odd_leader_residue_family(q, m, i),
        _ => top_odd_leaders(q, m, i),
    }
}

/// Dimension of `C_(n,-1,(delta_i'+1)/2,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeaderIndexDim {
    pub delta: u128,
    pub k: u128,
}

/// `k = i m` for `m ≡ 1, 2 (mod 3)` and `(i - 2/3) m` for `m ≡ 0 (mod 3)`,
/// on the residue-class ranges; `i = 1` gives `m`.
pub fn dim_above_odd_leader(q: u64, m: u32, i: u32) -> Result<LeaderIndexDim> {
    let leader = delta_prime_family(q, m, i)?;
    if i > 1 && residue_family_max_index(m).is_none_or(|max| i > max) {
        return Err(out_of_range(format!("i = {i} outside the dimension claim for m = {m}")));
    }
    let (i, m) = (i as u128, m as u128);
    let k = if i == 1 {
        m
    } else if m % 3 == 0 {
        (3 * i - 2) * m / 3
    } else {
        i * m
    };
    Ok(LeaderIndexDim {
        delta: leader.value.div_ceil(2),
        k,
    })
}

/// The two largest coset leaders modulo `n` with their orbit sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopLeaders {
    pub delta1: u128,
    pub size1: u32,
    pub delta2: u128,
    pub size2: u32,
}

/// `delta_1 = (q^m - 1 - q^(m-1) - q^floor((m-1)/2))/2` and
/// `delta_2 = (q^m - 1 - q^(m-1) - q^floor((m+1)/2))/2`.
pub fn top_leaders(q: u64, m: u32) -> Result<TopLeaders> {
    check_q(q)?;
    if m < 2 {
        return Err(out_of_range("need m >= 2"));
    }
    let base = pow(q, m)? - 1 - pow(q, m - 1)?;
    Ok(TopLeaders {
        delta1: (base - pow(q, (m - 1) / 2)?) / 2,
        size1: if m.is_multiple_of(2) { m / 2 } else { m },
        delta2: (base - pow(q, m.div_ceil(2))?) / 2,
        size2: m,
    })
}

/// The four extended-code weight tables for `C_(n,1,delta,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedTable {
    /// Even `m`, `delta_2 < delta <= delta_1`.
    EvenTop,
    /// Odd `m`, `delta_2 < delta <= delta_1`.
    OddTop,
    /// Odd `m`, `delta = delta_2`.
    OddSecond,
    /// Even `m`, `delta = delta_2`.
    EvenSecond,
}

impl ExtendedTable {
    pub const ALL: [ExtendedTable; 4] = [Self::EvenTop, Self::OddTop, Self::OddSecond, Self::EvenSecond];

    pub fn id(self) -> &'static str {
        match self {
            Self::EvenTop => "ext-even-top",
            Self::OddTop => "ext-odd-top",
            Self::OddSecond => "ext-odd-second",
            Self::EvenSecond => "ext-even-second",
        }
    }

    pub fn even_m(self) -> bool {
        matches!(self, Self::EvenTop | Self::EvenSecond)
    }

    pub fn from_id(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.id() == s)
    }
}

/// Claimed parameters `[n, k, d_min..=d_max]` of a dual code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualClaim {
    pub n: u128,
    pub k: u128,
    pub d_min: u64,
    pub d_max: u64,
}

impl DualClaim {
    pub fn contains(&self, d: u64) -> bool {
        (self.d_min..=self.d_max).contains(&d)
    }
}

/// Closed-form weight distribution of an extended code, rows as written
/// (equal weights not yet merged).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableClaim {
    pub table: ExtendedTable,
    pub q: u64,
    pub m: u32,
    /// Length of the unextended code.
    pub n: u128,
    /// Designed distances the table covers, inclusive.
    pub delta_range: (u128, u128),
    /// Dimension of the extended code.
    pub k: u128,
    /// Claimed minimum distance of the extended code.
    pub d: u128,
    pub rows: Vec<(u128, BigUint)>,
    pub dual: DualClaim,
}

impl TableClaim {
    /// Rows with equal weights merged and zero rows dropped, by weight.
    pub fn merged(&self) -> Vec<(u128, BigUint)> {
        let mut map = std::collections::BTreeMap::<u128, BigUint>::new();
        for (w, c) in &self.rows {
            *map.entry(*w).or_default() += c;
        }
        map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn total(&self) -> BigUint {
        self.rows.iter().map(|(_, c)| c).sum()
    }

    /// Whether every row has a positive frequency.
    pub fn all_positive(&self) -> bool {
        self.rows.iter().all(|(_, c)| !c.is_zero())
    }

    /// Smallest positive weight with a nonzero frequency.
    pub fn min_weight(&self) -> Option<u128> {
        self.merged().into_iter().map(|(w, _)| w).find(|&w| w > 0)
    }

    /// The table as a dense enumerator of length `n + 1`.
    pub fn enumerator(&self) -> Result<crate::analysis::WeightEnumerator> {
        let len = self.n + 1;
        let len64 = u64::try_from(len).map_err(|_| out_of_range("length exceeds 64 bits"))?;
        if len > 1 << 26 {
            return Err(Error::BudgetExceeded {
                what: "enumerator length",
                size: len,
                budget: 1 << 26,
            });
        }
        let mut counts = vec![BigUint::zero(); len as usize + 1];
        for (w, c) in self.merged() {
            counts[w as usize] += c;
        }
        Ok(crate::analysis::WeightEnumerator {
            n: len64,
            q: self.q,
            counts,
        })
    }
}

/// Term `num / den` of a frequency; must be an exact nonnegative integer.
fn frequency(num: BigInt, den: i64, what: &str) -> Result<BigUint> {
    let (quo, rem) = num.div_rem(&BigInt::from(den));
    if !rem.is_zero() {
        return Err(Error::NonIntegerResult(format!("{what}: {num}/{den}")));
    }
    if quo.is_negative() {
        return Err(Error::ConditionViolated(format!("{what}: negative frequency {quo}")));
    }
    Ok(quo.magnitude().clone())
}

fn ipow(q: u64, e: i64) -> BigInt {
    BigInt::from(big_pow(q, e as u32))
}

pub fn table_weight_distribution(q: u64, m: u32, table: ExtendedTable) -> Result<TableClaim> {
    check_q(q)?;
    if table.even_m() != m.is_multiple_of(2) {
        return Err(Error::ParityMismatch(format!("{} needs {} m, got m={m}", table.id(), if table.even_m() { "even" } else { "odd" })));
    }
    if m < 2 || (!table.even_m() && m < 3) {
        return Err(out_of_range(format!("m = {m} too small for {}", table.id())));
    }
    if table == ExtendedTable::EvenSecond && (q, m) == (3, 2) {
        return Err(out_of_range("(q, m) = (3, 2) is excluded: delta_2 = 1"));
    }
    let tops = top_leaders(q, m)?;
    let n = half_len(q, m)?;
    let me = m as i64;
    let p = |e: i64| ipow(q, e);
    let qq = BigInt::from(q);
    let one = BigInt::from(1);
    let qm = p(me);
    let qm1 = p(me - 1);
    let w = |x: BigInt, den: i64| -> Result<u128> {
        let v = frequency(x, den, "weight")?;
        v.to_u128().ok_or_else(|| out_of_range("weight exceeds 128 bits"))
    };
    let tag = table.id();
    let mut rows: Vec<(u128, BigUint)> = vec![(0, BigUint::from(1u32))];
    let mut push = |weight: u128, num: BigInt, den: i64| -> Result<()> {
        rows.push((weight, frequency(num, den, tag)?));
        Ok(())
    };
    let last = (w(&qm + &one, 2)?, BigInt::from(q - 1));
    let (delta_range, k, d, dual);
    match table {
        ExtendedTable::EvenTop => {
            let h = me / 2;
            push(w(&qm - &qm1 - p(h - 1) + &one, 2)?, (&qq - &one) * (p(h) - &one), 1)?;
            push(w((&qq - &one) * (&qm1 + p(h - 1)), 2)?, p(h) - &one, 1)?;
            delta_range = (tops.delta2 + 1, tops.delta1);
            k = m as u128 / 2 + 1;
            d = tops.delta1 + 1;
            let dd = if (q, m) == (3, 2) { 3 } else { 2 };
            dual = DualClaim { n, k: n - m as u128 / 2 - 1, d_min: dd, d_max: dd };
        }
        ExtendedTable::OddTop => {
            let h = (me - 1) / 2;
            let side = (&qq - &one) * (&qm - &one);
            push(w(&qm - &qm1 - p(h) + &one, 2)?, side.clone(), 2)?;
            push(w(&qm - &qm1, 2)?, &qm - &one, 1)?;
            push(w(&qm - &qm1 + p(h) + &one, 2)?, side, 2)?;
            delta_range = (tops.delta2 + 1, tops.delta1);
            k = m as u128 + 1;
            d = tops.delta1 + 1;
            let d_max = if q == 3 { 4 } else { 3 };
            dual = DualClaim { n, k: n - m as u128 - 1, d_min: 3, d_max };
        }
        ExtendedTable::OddSecond => {
            let (lo, hi, top) = ((me - 1) / 2, (me + 1) / 2, (me + 3) / 2);
            let den = 2 * (q as i64 + 1);
            let qm_1 = &qm - &one;
            let qq2 = &qq * &qq;
            push(w(&qm - &qm1 - p(hi) + &one, 2)?, &qm_1 * (&qm1 - &one), den)?;
            push(w((&qq - &one) * (&qm1 - p(lo)), 2)?, &qm_1 * (&qm1 + p(lo)), 2)?;
            push(
                w(&qm - &qm1 - p(lo) + &one, 2)?,
                &qm_1 * (p(me + 2) - &qm - &qm1 - p(top) + p(lo) + &qq2),
                den,
            )?;
            push(w(&qm - &qm1, 2)?, &qm_1 * (&qm - &qm1 + &one), 1)?;
            push(
                w(&qm - &qm1 + p(lo) + &one, 2)?,
                &qm_1 * (p(me + 2) - &qm - &qm1 + p(top) - p(lo) + &qq2),
                den,
            )?;
            push(w((&qq - &one) * (&qm1 + p(lo)), 2)?, &qm_1 * (&qm1 - p(lo)), 2)?;
            push(w(&qm - &qm1 + p(hi) + &one, 2)?, &qm_1 * (&qm1 - &one), den)?;
            delta_range = (tops.delta2, tops.delta2);
            k = 2 * m as u128 + 1;
            d = tops.delta2 + 1;
            let d_max = match q {
                3 => 6,
                5..=9 => 5,
                _ => 4,
            };
            dual = DualClaim { n, k: n - 2 * m as u128 - 1, d_min: 3, d_max };
        }
        ExtendedTable::EvenSecond => {
            let h = me / 2;
            let qm_1 = &qm - &one;
            let den = 2 * (q as i64 + 1);
            push(w(&qm - &qm1 - p(h) + &one, 2)?, &qm_1 * (p(h + 1) + p(h - 1) - BigInt::from(2)), den)?;
            push(w((&qq - &one) * (&qm1 - p(h - 1)), 2)?, &qm_1 * (p(h + 1) + &qq), den)?;
            push(
                w(&qm - &qm1 - p(h - 1) + &one, 2)?,
                (p(h) - &one) * (p(me + 1) - BigInt::from(2) * &qm + &qq),
                2,
            )?;
            push(w(&qm - &qm1, 2)?, &qm_1 * p(h - 1), 1)?;
            push(w(&qm - &qm1 + p(h - 1) + &one, 2)?, &qm_1 * (p(h + 1) + &qq) * (&qq - &one), den)?;
            push(
                w((&qq - &one) * (&qm1 + p(h - 1)), 2)?,
                (p(h + 1) - &qq) * (&qm - BigInt::from(2) * &qm1 + &one),
                2 * (q as i64 - 1),
            )?;
            push(w(&qm - &qm1 + p(h) + &one, 2)?, &qm_1 * (p(h) - p(h - 1)), 2)?;
            push(w((&qq - &one) * (&qm1 + p(h)), 2)?, &qm_1 * (p(h - 1) - &one), (q * q - 1) as i64)?;
            delta_range = (tops.delta2, tops.delta2);
            k = 3 * m as u128 / 2 + 1;
            d = tops.delta2 + 1;
            dual = DualClaim { n, k: n - 3 * m as u128 / 2 - 1, d_min: 2, d_max: 4 };
        }
    }
    push(last.0, last.1, 1)?;
    Ok(TableClaim { table, q, m, n, delta_range, k, d, rows, dual })
}

/// Dimension of `C_(n,-1,delta,b)` when the shift by `b` is absorbed into
/// `C_(n,-1,b+delta,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftedDim {
    pub k: u128,
    /// Designed distance of the equal code with `b = 0`.
    pub absorbed_delta: u64,
}

pub fn dim_shifted(q: u64, m: u32, delta: u64, b: u64) -> Result<ShiftedDim> {
    check_q(q)?;
    if m < 2 || delta < 2 {
        return Err(out_of_range("need m >= 2 and delta >= 2"));
    }
    let top = 1 + 2 * (b + delta - 2) as u128;
    let cap = if m % 2 == 1 {
        pow(q, m.div_ceil(2))? - 1
    } else {
        2 * pow(q, m / 2)? - 1
    };
    if top > cap {
        return Err(out_of_range(format!("1 + 2(b + delta - 2) = {top} exceeds {cap}")));
    }
    if 1 + 2 * b > (b + delta - 2) / q {
        return Err(Error::ConditionViolated(format!(
            "1 + 2b = {} > floor((b + delta - 2)/q) = {}",
            1 + 2 * b,
            (b + delta - 2) / q
        )));
    }
    let n = half_len(q, m)?;
    let q1 = q as u128;
    let blocks = ((2 * (delta + b) as u128 - 3) * (q1 - 1)).div_ceil(2 * q1);
    Ok(ShiftedDim {
        k: n - m as u128 * blocks,
        absorbed_delta: b + delta,
    })
}

/// Two-sided distance window for `C_(n,-1,delta,1)` from the constructed
/// low-weight codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowWeightBounds {
    pub d_lower: u64,
    pub d_upper: u64,
    pub delta: u64,
    /// False when `k delta_a` is even for odd `k`, so `delta` was rounded up.
    pub exact: bool,
}

impl LowWeightBounds {
    pub fn contains(&self, d: u64) -> bool {
        (self.d_lower..=self.d_upper).contains(&d)
    }
}

pub fn low_weight_bounds(q: u64, n: u64, k: u64, delta_a: u64) -> Result<LowWeightBounds> {
    check_q(q)?;
    if gcd(n, q) != 1 {
        return Err(Error::DivisibilityViolation(format!("gcd(n, q) != 1 for n={n}, q={q}")));
    }
    low_weight_check(q, n, k, delta_a)?;
    let kd = k * delta_a;
    Ok(if k % 2 == 1 {
        let delta = (kd - 1).div_ceil(2);
        LowWeightBounds {
            d_lower: delta,
            d_upper: k.div_ceil(2) * delta_a,
            delta,
            exact: kd % 2 == 1,
        }
    } else {
        LowWeightBounds {
            d_lower: kd / 2,
            d_upper: (k / 2 + 1) * delta_a,
            delta: kd / 2,
            exact: true,
        }
    })
}

/// `delta_1 - 1 < delta <= n - 1` for `C_(n,1,delta,2)`.
pub fn dually_bch_condition(q: u64, m: u32, delta: u64) -> Result<bool> {
    check_q(q)?;
    if m < 2 || (m % 2 == 1 && m < 3) {
        return Err(out_of_range(format!("need odd m >= 3 or even m >= 2, got m={m}")));
    }
    let n = half_len(q, m)?;
    if delta < 2 || delta as u128 > n - 1 {
        return Err(out_of_range(format!("delta = {delta} not in [2, {}]", n - 1)));
    }
    let d1 = top_leaders(q, m)?.delta1;
    Ok(d1 - 1 < delta as u128 && (delta as u128) < n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{defining_set_for, CodeSpec};

    fn coset_dim(q: u64, m: u32, delta: u128, b: u64) -> u128 {
        let n = (q.pow(m) - 1) / 2;
        let t = defining_set_for(&CodeSpec::negacyclic(n, delta as u64, b).unwrap(), q);
        (n - t.len() as u64) as u128
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn digit_pattern_examples() {
        let d = dim_uniform_digit(5, 3, 1).unwrap();
        assert_eq!((d.delta, d.k.clone()), (16, big(32)));
        let d = dim_uniform_digit(7, 3, 2).unwrap();
        assert_eq!((d.delta, d.k.clone()), (58, big(62)));
        let d = dim_alternating_digit(5, 4, 1, 2).unwrap();
        assert_eq!((d.n, d.delta, d.k.clone()), (312, 105, big(80)));
        let d = dim_alternating_digit(5, 4, 2, 2).unwrap();
        assert_eq!((d.delta, d.k.clone()), (183, big(16)));
        let d = dim_leading_digit(5, 3, 1).unwrap();
        assert_eq!((d.delta, d.k.clone()), (13, big(32)));
        let d = dim_leading_digit(7, 3, 2).unwrap();
        assert_eq!((d.delta, d.k.clone()), (49, big(65)));
    }

    #[test]
    fn digit_pattern_guards() {
        assert!(dim_uniform_digit(3, 3, 1).is_err());
        assert!(dim_uniform_digit(5, 2, 1).is_err());
        assert!(dim_uniform_digit(5, 3, 2).is_err());
        assert!(dim_alternating_digit(5, 3, 1, 1).is_err());
        assert!(dim_alternating_digit(5, 4, 1, 4).is_err());
        assert!(dim_alternating_digit(5, 4, 1, 0).is_err());
        assert!(dim_alternating_zero(3, 4, 3).is_err());
    }

    #[test]
    fn digit_sums_match_both_oracles() {
        for (q, m) in [(5, 3), (5, 4), (7, 3)] {
            for a in 1..(q - 1) / 2 {
                let d = dim_uniform_digit(q, m, a).unwrap();
                assert_eq!(d.k, digit_oracle_uniform(q, m, a).unwrap());
                assert_eq!(d.k, BigUint::from(coset_dim(q, m, d.delta, 0)));
                let l = dim_leading_digit(q, m, a).unwrap();
                assert_eq!(l.k, BigUint::from(coset_dim(q, m, l.delta, 0)));
            }
        }
        for (q, m) in [(3, 4), (5, 4), (3, 6)] {
            for a in 0..q {
                for b in 1..q {
                    let Ok(d) = dim_alternating_digit(q, m, a, b) else { continue };
                    assert_eq!(d.k, digit_oracle_alternating(q, m, a, b).unwrap(), "{q} {m} {a} {b}");
                    assert_eq!(d.k, BigUint::from(coset_dim(q, m, d.delta, 0)));
                    let t = dim_two_leading_digits(q, m, a, b).unwrap();
                    assert_eq!(t.k, BigUint::from(coset_dim(q, m, t.delta, 0)));
                }
            }
        }
    }

    #[test]
    fn small_delta_and_shift() {
        assert_eq!(dim_small_delta(3, 2, 2).unwrap().k, 2);
        assert_eq!(dim_small_delta(3, 5, 2).unwrap().k, 116);
        assert!(dim_small_delta(3, 2, 5).is_err());
        assert_eq!(dim_small_delta(5, 3, 3).unwrap().d_lower, 4);
        let s = dim_shifted(3, 5, 10, 1).unwrap();
        assert_eq!((s.k, s.absorbed_delta), (86, 11));
        assert_eq!(coset_dim(3, 5, 10, 1), 86);
        assert!(matches!(dim_shifted(3, 5, 4, 1), Err(Error::ConditionViolated(_))));
    }

    #[test]
    fn leader_families() {
        assert_eq!(top_odd_leaders(3, 2, 1).unwrap(), LeaderClaim { value: 5, orbit_size: 2 });
        assert_eq!(top_odd_leaders(3, 3, 2).unwrap(), LeaderClaim { value: 13, orbit_size: 1 });
        assert!(top_odd_leaders(3, 2, 3).is_err());
        assert_eq!(odd_leader_residue_family(3, 8, 4).unwrap().value, 3641);
        assert_eq!(odd_leader_residue_family(3, 9, 2).unwrap(), LeaderClaim { value: 12869, orbit_size: 3 });
        assert!(odd_leader_residue_family(3, 5, 2).is_err());
        assert_eq!(dim_above_odd_leader(3, 8, 3).unwrap().k, 24);
        assert_eq!(dim_above_odd_leader(3, 9, 2).unwrap().k, 12);
        assert_eq!(dim_above_odd_leader(3, 8, 1).unwrap().k, 8);
        let t = top_leaders(3, 3).unwrap();
        assert_eq!((t.delta1, t.delta2), (7, 4));
        let t = top_leaders(3, 4).unwrap();
        assert_eq!((t.delta1, t.size1, t.delta2), (25, 2, 22));
        let t = top_leaders(5, 2).unwrap();
        assert_eq!((t.delta1, t.size1), (9, 1));
    }

    fn merged(q: u64, m: u32, t: ExtendedTable) -> Vec<(u128, u64)> {
        table_weight_distribution(q, m, t)
            .unwrap()
            .merged()
            .into_iter()
            .map(|(w, c)| (w, c.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn tables() {
        assert_eq!(
            merged(3, 3, ExtendedTable::OddTop),
            [(0, 1), (8, 26), (9, 26), (11, 26), (14, 2)]
        );
        assert_eq!(
            merged(5, 3, ExtendedTable::OddTop),
            [(0, 1), (48, 248), (50, 124), (53, 248), (63, 4)]
        );
        let t4: Vec<u64> = merged(3, 4, ExtendedTable::EvenSecond).into_iter().map(|(_, c)| c).collect();
        assert_eq!(t4, [1, 280, 300, 336, 240, 600, 168, 240, 20, 2]);
        let c = table_weight_distribution(3, 4, ExtendedTable::EvenSecond).unwrap();
        assert_eq!((c.n + 1, c.k, c.d), (41, 7, 23));
        assert!(matches!(
            table_weight_distribution(3, 4, ExtendedTable::OddTop),
            Err(Error::ParityMismatch(_))
        ));
        assert!(table_weight_distribution(3, 2, ExtendedTable::EvenSecond).is_err());
        for (q, m, t) in [(3, 2, ExtendedTable::EvenTop), (7, 4, ExtendedTable::EvenSecond), (5, 5, ExtendedTable::OddSecond)] {
            let c = table_weight_distribution(q, m, t).unwrap();
            assert_eq!(c.total(), big_pow(q, c.k as u32));
        }
    }

    #[test]
    fn low_weight_window() {
        let b = low_weight_bounds(3, 40, 1, 10).unwrap();
        assert_eq!((b.d_lower, b.d_upper, b.delta, b.exact), (5, 10, 5, false));
        assert!(b.contains(6));
        let b = low_weight_bounds(3, 40, 2, 5).unwrap();
        assert_eq!((b.d_lower, b.d_upper), (5, 10));
        assert!(matches!(low_weight_bounds(3, 40, 1, 3), Err(Error::DivisibilityViolation(_))));
    }

    #[test]
    fn dually_bch_predicate() {
        assert!(dually_bch_condition(3, 3, 7).unwrap());
        assert!(!dually_bch_condition(3, 3, 2).unwrap());
        assert!(dually_bch_condition(3, 2, 2).unwrap());
        assert!(dually_bch_condition(3, 2, 3).unwrap());
        assert!(dually_bch_condition(3, 3, 13).is_err());
    }
}
