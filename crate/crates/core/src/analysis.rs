//! Parameters of realized codes: BCH bound, weight enumerators, minimum
//! distance, sphere-packing feasibility and the dually-BCH test.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{DefiningSet, Family, LinearCodeModel, Parity};
use crate::cyclotomic::orbit;
use crate::error::{Error, Result};
use crate::field::BaseField;
use crate::util::{big_pow, binomial};

/// Default cap on the number of codewords enumerated.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

/// Longest cyclic run of `true` in `mask`.
fn longest_cyclic_run(mask: &[bool]) -> usize {
    let len = mask.len();
    let Some(start) = mask.iter().position(|&b| !b) else {
        return len;
    };
    let (mut best, mut cur) = (0, 0);
    for step in 1..=len {
        if mask[(start + step) % len] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

/// One more than the longest run of consecutive roots in `T`: residues
/// `i, i+1, ...` modulo `n` for cyclic sets, and `1+2s` for consecutive `s`
/// modulo `n` for negacyclic sets.
pub fn bch_bound(t: &DefiningSet) -> u64 {
    let mask: Vec<bool> = match t.parity {
        Parity::All => (0..t.modulus).map(|i| t.contains(i)).collect(),
        Parity::Odd => (0..t.modulus / 2).map(|s| t.contains(1 + 2 * s)).collect(),
    };
    longest_cyclic_run(&mask) as u64 + 1
}

/// Exact weight distribution of a code of length `n` over GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    pub n: u64,
    pub q: u64,
    /// `counts[w]` for `w` in `0..=n`.
    pub counts: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn from_pairs(n: u64, q: u64, pairs: &[(u64, u64)]) -> Self {
        let mut counts = vec![BigUint::zero(); n as usize + 1];
        for &(w, c) in pairs {
            counts[w as usize] += c;
        }
        Self { n, q, counts }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest positive weight with nonzero count.
    pub fn min_distance(&self) -> Option<u64> {
        (1..self.counts.len())
            .find(|&w| !self.counts[w].is_zero())
            .map(|w| w as u64)
    }

    /// Nonzero entries as `weight -> count`.
    pub fn nonzero(&self) -> BTreeMap<u64, BigUint> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w as u64, c.clone()))
            .collect()
    }

    /// `log_q` of the total when it is an exact power of `q`.
    pub fn dimension(&self) -> Option<u64> {
        let mut t = self.total();
        let q = BigUint::from(self.q);
        let mut k = 0;
        while t > BigUint::one() {
            let (d, r) = t.div_rem(&q);
            if !r.is_zero() {
                return None;
            }
            t = d;
            k += 1;
        }
        (t == BigUint::one()).then_some(k)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, c) in self.nonzero() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (w, c == BigUint::one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "z^{w}")?,
                _ => write!(f, "{c}z^{w}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_budget(q: u64, k: u64, budget: u64) -> Result<u64> {
    let size = (q as u128).checked_pow(k as u32).filter(|&s| s <= budget as u128);
    size.map(|s| s as u64).ok_or(Error::BudgetExceeded {
        what: "codeword enumeration",
        size: (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX),
        budget: budget as u128,
    })
}

/// Counts of `wt(msg * g)` (plus one for a nonzero coordinate sum when
/// `extended`) over all messages of `k` symbols.
fn enumerate_multiples(g: &[u32], n: usize, k: usize, bf: &BaseField, extended: bool) -> Vec<u64> {
    let q = bf.q() as u64;
    // Digit d of the message walks the labels 0, 1, ..., q-1 and wraps to 0.
    // Step d adds (label(d+1) - label(d)) * g; over GF(p^e) repeated
    // addition of g alone would only reach the prime subfield.
    let scaled: Vec<Vec<u32>> = (0..q as u32).map(|c| g.iter().map(|&x| bf.mul(c, x)).collect()).collect();
    let sums: Vec<u32> = scaled.iter().map(|r| r.iter().fold(0, |acc, &c| bf.add(acc, c))).collect();
    let step = |d: u64| bf.sub(((d + 1) % q) as u32, d as u32) as usize;
    let mut top = 0;
    while top < k && q.pow(top as u32) < 1024 {
        top += 1;
    }
    let low = k - top;
    let width = n + 2;
    (0..q.pow(top as u32))
        .into_par_iter()
        .map(|prefix| {
            let mut word = vec![0u32; n];
            let mut wt = 0usize;
            let mut sum = 0u32;
            let mut counts = vec![0u64; width];
            let add_row = |row: usize, c: usize, word: &mut [u32], wt: &mut usize, sum: &mut u32| {
                for (j, &x) in scaled[c].iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let old = word[row + j];
                    let new = bf.add(old, x);
                    word[row + j] = new;
                    *wt = *wt + (new != 0) as usize - (old != 0) as usize;
                }
                *sum = bf.add(*sum, sums[c]);
            };
            let mut rest = prefix;
            for j in 0..top {
                add_row(low + j, (rest % q) as usize, &mut word, &mut wt, &mut sum);
                rest /= q;
            }
            let mut digits = vec![0u64; low];
            'outer: loop {
                counts[wt + (extended && sum != 0) as usize] += 1;
                let mut i = 0;
                loop {
                    if i == low {
                        break 'outer;
                    }
                    add_row(i, step(digits[i]), &mut word, &mut wt, &mut sum);
                    digits[i] += 1;
                    if digits[i] == q {
                        digits[i] = 0;
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

fn enumerate_model(model: &LinearCodeModel, budget: u64, extended: bool) -> Result<WeightEnumerator> {
    let k = model.k();
    check_budget(model.q(), k, budget)?;
    let n = model.n() as usize;
    let counts = enumerate_multiples(
        model.generator().coeffs(),
        n,
        k as usize,
        model.field().base_field(),
        extended,
    );
    let len = if extended { n + 2 } else { n + 1 };
    Ok(WeightEnumerator {
        n: len as u64 - 1,
        q: model.q(),
        counts: counts[..len].iter().map(|&c| BigUint::from(c)).collect(),
    })
}

/// Weight distribution by enumerating all `q^k` codewords.
pub fn weight_enumerator_exhaustive(model: &LinearCodeModel, budget: u64) -> Result<WeightEnumerator> {
    enumerate_model(model, budget, false)
}

/// Weight distribution of the extended code (length `n + 1`).
pub fn extended_weight_enumerator(model: &LinearCodeModel, budget: u64) -> Result<WeightEnumerator> {
    enumerate_model(model, budget, true)
}

/// Enumerator of the dual code through the MacWilliams identity, with
/// Krawtchouk values from their three-term recurrence in exact integers.
pub fn macwilliams_transform(w: &WeightEnumerator) -> Result<WeightEnumerator> {
    let n = w.n as usize;
    let q = BigInt::from(w.q);
    let qm1 = &q - 1;
    let size = BigInt::from(w.total());
    if size.is_zero() {
        return Err(Error::NonIntegerResult("empty enumerator".into()));
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in w.counts.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let a = BigInt::from(a.clone());
        let x = BigInt::from(i);
        // K_0 = 1, K_1 = (q-1)n - q x
        let mut prev = BigInt::one();
        acc[0] += &a;
        if n == 0 {
            continue;
        }
        let mut cur = &qm1 * BigInt::from(n) - &q * &x;
        acc[1] += &a * &cur;
        for j in 1..n {
            let jj = BigInt::from(j);
            let num = (&qm1 * BigInt::from(n - j) + &jj - &q * &x) * &cur
                - &qm1 * BigInt::from(n - j + 1) * &prev;
            let next = num / BigInt::from(j + 1);
            acc[j + 1] += &a * &next;
            prev = std::mem::replace(&mut cur, next);
        }
    }
    let counts = acc
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let (d, r) = v.div_rem(&size);
            if !r.is_zero() || d.is_negative() {
                Err(Error::NonIntegerResult(format!("weight {j}: {v} / {size}")))
            } else {
                Ok(d.to_biguint().unwrap())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightEnumerator { n: w.n, q: w.q, counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Read off the code's own enumerator.
    ExactDirect,
    /// Read off the MacWilliams transform of the dual's enumerator.
    ExactViaDual,
    /// Only the BCH bound is known.
    LowerBoundOnly,
}

#[derive(Debug, Clone)]
pub struct DistanceResult {
    /// Exact minimum distance, or a lower bound under `LowerBoundOnly`.
    /// The zero code gets `n + 1`.
    pub d: u64,
    pub certificate: Certificate,
    pub enumerator: Option<WeightEnumerator>,
}

/// Minimum distance, exact when one of `q^k`, `q^(n-k)` fits the budget.
pub fn min_distance(model: &LinearCodeModel, budget: u64) -> Result<DistanceResult> {
    let k = model.k();
    let n = model.n();
    if check_budget(model.q(), k, budget).is_ok() {
        return distance_direct(model, budget);
    }
    if check_budget(model.q(), n - k, budget).is_ok() {
        return distance_via_dual(model, budget);
    }
    Ok(DistanceResult {
        d: bch_bound(model.defining_set()).min(n + 1),
        certificate: Certificate::LowerBoundOnly,
        enumerator: None,
    })
}

pub fn distance_direct(model: &LinearCodeModel, budget: u64) -> Result<DistanceResult> {
    let w = weight_enumerator_exhaustive(model, budget)?;
    Ok(DistanceResult {
        d: w.min_distance().unwrap_or(model.n() + 1),
        certificate: Certificate::ExactDirect,
        enumerator: Some(w),
    })
}

pub fn distance_via_dual(model: &LinearCodeModel, budget: u64) -> Result<DistanceResult> {
    let dual = model.dual()?;
    let w = macwilliams_transform(&weight_enumerator_exhaustive(&dual, budget)?)?;
    Ok(DistanceResult {
        d: w.min_distance().unwrap_or(model.n() + 1),
        certificate: Certificate::ExactViaDual,
        enumerator: Some(w),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingClause {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

/// Both necessary conditions for an `[n, k, d]_q` code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpherePacking {
    /// `sum_{i <= (d-1)/2} (q-1)^i C(n,i) <= q^(n-k)`.
    pub radius: PackingClause,
    /// `sum_{i <= (d-2)/2} (q-1)^i C(n-1,i) <= q^(n-k-1)`, even `d` only.
    pub even: Option<PackingClause>,
}

impl SpherePacking {
    pub fn feasible(&self) -> bool {
        self.radius.holds && self.even.as_ref().is_none_or(|c| c.holds)
    }
}

fn ball(n: u64, q: u64, r: u64) -> BigUint {
    (0..=r)
        .map(|i| big_pow(q - 1, i as u32) * binomial(n, i))
        .sum()
}

pub fn sphere_packing_check(n: u64, k: u64, d: u64, q: u64) -> Result<SpherePacking> {
    if k > n || d == 0 || d > n {
        return Err(Error::InvalidParameter(format!("no [{n}, {k}, {d}] code shape")));
    }
    let lhs = ball(n, q, (d - 1) / 2);
    let rhs = big_pow(q, (n - k) as u32);
    let radius = PackingClause { holds: lhs <= rhs, lhs, rhs };
    let even = d.is_multiple_of(2).then(|| {
        let lhs = ball(n - 1, q, (d - 2) / 2);
        let rhs = if n > k {
            big_pow(q, (n - k - 1) as u32)
        } else {
            BigUint::zero()
        };
        PackingClause { holds: n > k && lhs <= rhs, lhs, rhs }
    });
    Ok(SpherePacking { radius, even })
}

/// `(b, delta')` with `T = C_b ∪ C_(b+1) ∪ ... ∪ C_(b+delta'-2)` modulo `n`,
/// smallest `b` first and then smallest `delta' <= n`; `None` if no such
/// consecutive union exists.
pub fn consecutive_union_witness(t: &DefiningSet) -> Option<(u64, u64)> {
    if t.parity != Parity::All || t.is_empty() {
        return None;
    }
    let n = t.modulus;
    let mut coset_id = vec![u32::MAX; n as usize];
    let mut cosets = 0u32;
    for &x in &t.exponents {
        if coset_id[x as usize] != u32::MAX {
            continue;
        }
        for y in orbit(n, t.q, x) {
            coset_id[y as usize] = cosets;
        }
        cosets += 1;
    }
    let mut seen = vec![u64::MAX; cosets as usize];
    for b in 0..n {
        if !t.contains(b) {
            continue;
        }
        let mut covered = 0;
        for j in 0..n - 1 {
            let i = (b + j) % n;
            let id = coset_id[i as usize];
            if id == u32::MAX {
                break;
            }
            if seen[id as usize] != b {
                seen[id as usize] = b;
                covered += 1;
            }
            if covered == cosets {
                return Some((b, j + 2));
            }
        }
    }
    None
}

/// Whether a cyclic code's dual defining set is a consecutive coset union.
pub fn is_dually_bch(model: &LinearCodeModel) -> Result<Option<(u64, u64)>> {
    if model.family() != Family::Cyclic {
        return Err(Error::InvalidParameter("dually-BCH is defined for cyclic codes".into()));
    }
    Ok(consecutive_union_witness(&model.dual_defining_set()))
}

/// Lossless conversion for counts known to be small.
pub fn count_u64(c: &BigUint) -> Option<u64> {
    c.to_u64()
}
