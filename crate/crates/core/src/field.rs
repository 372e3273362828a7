//! Exact arithmetic in GF(q) and GF(q^m) for odd prime powers `q = p^e`.
//!
//! GF(q^m) is realized once, as `GF(p)[x]/(f)` with `f` the canonical
//! primitive polynomial of degree `D = e*m`. Nonzero elements are stored as
//! discrete logarithms to the base `alpha = x mod f`, so multiplication is
//! exponent addition and addition goes through a Zech logarithm table.
//! GF(q) is the subfield `{0} ∪ {alpha^(j*(q^m-1)/(q-1))}`; its elements are
//! exchanged with the outside world as *labels*: the base-`p` packing of the
//! element in GF(q)'s own polynomial basis (for prime `q` the label of a
//! residue is the residue itself).

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::util::{checked_pow, gcd, is_prime, prime_divisors};

/// Default cap on the number of field elements backed by log tables.
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 22;

/// Cap on `q` for the `q x q` label tables of the coefficient field.
const MAX_BASE_FIELD: u64 = 1 << 12;

pub(crate) const ZERO: u32 = u32::MAX;

static NEXT_FIELD_ID: AtomicU32 = AtomicU32::new(1);

/// An odd prime power `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("exponent must be positive".into()));
        }
        let q = checked_pow(p, e)
            .filter(|&q| q <= u64::MAX as u128)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{e} overflows")))?;
        Ok(Self { p, e, q: q as u64 })
    }

    /// Factor `q` as `p^e`.
    pub fn from_q(q: u64) -> Result<Self> {
        let primes = prime_divisors(q);
        if primes.len() != 1 {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        let p = primes[0];
        let mut e = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            e += 1;
        }
        Self::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials over GF(p), only what the primitivity search needs.

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut prod = vec![0u64; 2 * d];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for top in (d..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for i in 0..d {
            let sub = c * f[i] % p;
            let idx = top - d + i;
            prod[idx] = (prod[idx] + p - sub) % p;
        }
    }
    prod.truncate(d);
    prod
}

fn poly_powmod_x(mut exp: u128, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    let mut result = vec![0u64; d];
    result[0] = 1;
    let mut base = vec![0u64; d];
    if d == 1 {
        // x = -f0 modulo a linear modulus
        base[0] = (p - f[0] % p) % p;
    } else {
        base[1] = 1;
    }
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mulmod(&result, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        exp >>= 1;
    }
    result
}

fn is_one(v: &[u64]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// The monic degree-`degree` polynomial over GF(p), minimal in the order that
/// reads `(c_{D-1}, ..., c_0)` as a base-`p` integer, whose root is a
/// primitive element. Coefficients are returned ascending (`c_0` first, the
/// leading 1 last).
pub fn find_primitive_polynomial(p: u64, degree: u32, budget: u64) -> Result<Vec<u64>> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let size = checked_pow(p, degree).ok_or(Error::BudgetExceeded {
        what: "field",
        size: u128::MAX,
        budget: budget as u128,
    })?;
    if size > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "field",
            size,
            budget: budget as u128,
        });
    }
    let order = size - 1;
    let cofactors: Vec<u128> = prime_divisors(order as u64)
        .into_iter()
        .map(|r| order / r as u128)
        .collect();
    let d = degree as usize;
    for idx in 0..size as u64 {
        let mut f = vec![0u64; d + 1];
        let mut rest = idx;
        for c in f.iter_mut().take(d) {
            *c = rest % p;
            rest /= p;
        }
        f[d] = 1;
        if f[0] == 0 {
            continue;
        }
        if !is_one(&poly_powmod_x(order, &f, p)) {
            continue;
        }
        if cofactors
            .iter()
            .all(|&c| !is_one(&poly_powmod_x(c, &f, p)))
        {
            return Ok(f);
        }
    }
    unreachable!("every finite field has a primitive element")
}

// ---------------------------------------------------------------------------
// Log/antilog/Zech tables.

#[derive(Debug, Clone)]
pub(crate) struct LogTables {
    p: u64,
    order: u64,
    /// exponent -> packed polynomial-basis value
    exp: Vec<u32>,
    /// packed value -> exponent (ZERO for 0)
    log: Vec<u32>,
    /// k -> log(1 + alpha^k)
    zech: Vec<u32>,
}

impl LogTables {
    fn build(p: u64, modulus: &[u64]) -> Self {
        let d = modulus.len() - 1;
        let size = p.pow(d as u32);
        let order = size - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![ZERO; size as usize];
        let mut cur = vec![0u64; d];
        cur[0] = 1;
        for k in 0..order {
            let packed = cur.iter().rev().fold(0u64, |acc, &c| acc * p + c);
            assert_eq!(log[packed as usize], ZERO, "modulus is not primitive");
            log[packed as usize] = k as u32;
            exp.push(packed as u32);
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..d {
                    cur[i] = (cur[i] + p - top * modulus[i] % p) % p;
                }
            }
        }
        let zech = exp
            .iter()
            .map(|&v| {
                let c0 = v as u64 % p;
                let bumped = v as u64 - c0 + (c0 + 1) % p;
                log[bumped as usize]
            })
            .collect();
        Self {
            p,
            order,
            exp,
            log,
            zech,
        }
    }

    #[inline]
    pub(crate) fn order(&self) -> u64 {
        self.order
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        ((a as u64 + b as u64) % self.order) as u32
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let diff = (b as u64 + self.order - a as u64) % self.order;
        let z = self.zech[diff as usize];
        if z == ZERO {
            ZERO
        } else {
            ((a as u64 + z as u64) % self.order) as u32
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            ((a as u64 + self.order / 2) % self.order) as u32
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        if a == ZERO {
            None
        } else {
            Some(((self.order - a as u64) % self.order) as u32)
        }
    }

    /// `a^k` for a possibly negative exponent; `0^0 = 1`.
    #[inline]
    pub(crate) fn pow(&self, a: u32, k: i128) -> u32 {
        if a == ZERO {
            return if k == 0 { 0 } else { ZERO };
        }
        let e = (a as i128 * k).rem_euclid(self.order as i128);
        e as u32
    }

    /// `alpha^k` for any integer exponent.
    #[inline]
    pub(crate) fn alpha_pow(&self, k: i128) -> u32 {
        k.rem_euclid(self.order as i128) as u32
    }

    pub(crate) fn packed(&self, a: u32) -> u64 {
        if a == ZERO {
            0
        } else {
            self.exp[a as usize] as u64
        }
    }

    pub(crate) fn from_packed(&self, v: u64) -> Option<u32> {
        self.log.get(v as usize).copied()
    }

    /// Embed a prime-field constant `c in [0, p)`.
    pub(crate) fn constant(&self, c: u64) -> u32 {
        self.log[(c % self.p) as usize]
    }
}

// ---------------------------------------------------------------------------
// The coefficient field GF(q), addressed by labels.

/// Table-driven arithmetic on GF(q) labels, together with the embedding of
/// GF(q) into the ambient GF(q^m).
#[derive(Debug, Clone)]
pub struct BaseField {
    p: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    /// label -> exponent in the ambient field
    to_ext: Vec<u32>,
    /// (ambient exponent / step) -> label
    from_ext: Vec<u32>,
    step: u64,
}

impl BaseField {
    fn build(base: PrimePower, ambient: &LogTables) -> Result<Self> {
        let (p, e, q) = (base.p, base.e, base.q);
        if q > MAX_BASE_FIELD {
            return Err(Error::BudgetExceeded {
                what: "coefficient field",
                size: q as u128,
                budget: MAX_BASE_FIELD as u128,
            });
        }
        let small_mod = find_primitive_polynomial(p, e, q)?;
        let small = LogTables::build(p, &small_mod);
        let step = ambient.order() / (q - 1);
        // Find theta = alpha^(step*j) that is a root of the small modulus.
        let eval_at = |theta: u32| {
            small_mod.iter().rev().fold(ZERO, |acc, &c| {
                ambient.add(ambient.mul(acc, theta), ambient.constant(c))
            })
        };
        let j = (1..q)
            .filter(|&j| gcd(j, q - 1) == 1)
            .find(|&j| eval_at(ambient.alpha_pow((step * j) as i128)) == ZERO)
            .expect("the small modulus splits in the subfield");
        let theta_exp = (step * j) % ambient.order();

        let qs = q as usize;
        let mut to_ext = vec![ZERO; qs];
        let mut from_ext = vec![0u32; qs - 1];
        for label in 1..q {
            let u = small.from_packed(label).expect("label in range") as u64;
            let ext = ((theta_exp as u128 * u as u128) % ambient.order() as u128) as u32;
            to_ext[label as usize] = ext;
            from_ext[(ext as u64 / step) as usize] = label as u32;
        }
        let label_of = |a: u32| small.packed(a) as u32;
        let exp_of = |label: usize| small.from_packed(label as u64).unwrap();
        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        for x in 0..qs {
            for y in 0..qs {
                add[x * qs + y] = label_of(small.add(exp_of(x), exp_of(y)));
                mul[x * qs + y] = label_of(small.mul(exp_of(x), exp_of(y)));
            }
        }
        let neg = (0..qs).map(|x| label_of(small.neg(exp_of(x)))).collect();
        let inv = (0..qs)
            .map(|x| small.inv(exp_of(x)).map(label_of).unwrap_or(0))
            .collect();
        Ok(Self {
            p: p as u32,
            q: q as u32,
            add,
            mul,
            neg,
            inv,
            to_ext,
            from_ext,
            step,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// The label of the integer `c` (reduced into the prime field).
    pub fn from_int(&self, c: i64) -> u32 {
        // labels below p are the prime-field constants in every packing
        c.rem_euclid(self.p as i64) as u32
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub(crate) fn to_ext_exp(&self, label: u32) -> u32 {
        self.to_ext[label as usize]
    }

    pub(crate) fn from_ext_exp(&self, exp: u32) -> Option<u32> {
        if exp == ZERO {
            return Some(0);
        }
        if !(exp as u64).is_multiple_of(self.step) {
            return None;
        }
        Some(self.from_ext[(exp as u64 / self.step) as usize])
    }
}

// ---------------------------------------------------------------------------

/// GF(q^m) as a degree-`e*m` extension of GF(p) with a fixed primitive
/// element.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    id: u32,
    base: PrimePower,
    m: u32,
    modulus: Vec<u64>,
    tables: LogTables,
    base_field: BaseField,
}

/// An element of a specific [`ExtensionField`]: zero or `alpha^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    owner: u32,
    exp: u32,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.exp == ZERO
    }

    /// Discrete logarithm to the base `alpha`, `None` for zero.
    pub fn log(&self) -> Option<u64> {
        (self.exp != ZERO).then_some(self.exp as u64)
    }

    pub(crate) fn raw(&self) -> u32 {
        self.exp
    }
}

impl ExtensionField {
    pub fn new(base: PrimePower, m: u32) -> Result<Self> {
        Self::with_budget(base, m, DEFAULT_TABLE_BUDGET)
    }

    pub fn from_q(q: u64, m: u32) -> Result<Self> {
        Self::new(PrimePower::from_q(q)?, m)
    }

    pub fn with_budget(base: PrimePower, m: u32, budget: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let budget = budget.min(u32::MAX as u64);
        let degree = base.e * m;
        let modulus = find_primitive_polynomial(base.p, degree, budget)?;
        let tables = LogTables::build(base.p, &modulus);
        let base_field = BaseField::build(base, &tables)?;
        Ok(Self {
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
            base,
            m,
            modulus,
            tables,
            base_field,
        })
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn q(&self) -> u64 {
        self.base.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree `D = e*m` over the prime field.
    pub fn degree(&self) -> u32 {
        self.base.e * self.m
    }

    pub fn size(&self) -> u64 {
        self.tables.order + 1
    }

    /// `q^m - 1`, the order of `alpha`.
    pub fn alpha_order(&self) -> u64 {
        self.tables.order
    }

    /// Modulus coefficients, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn base_field(&self) -> &BaseField {
        &self.base_field
    }

    pub(crate) fn tables(&self) -> &LogTables {
        &self.tables
    }

    fn wrap(&self, exp: u32) -> FieldElement {
        FieldElement {
            owner: self.id,
            exp,
        }
    }

    fn check(&self, x: FieldElement) -> Result<u32> {
        if x.owner == self.id {
            Ok(x.exp)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(ZERO)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    pub fn alpha_pow(&self, k: i128) -> FieldElement {
        self.wrap(self.tables.alpha_pow(k))
    }

    /// Element from its base-`p` packed polynomial-basis value.
    pub fn from_packed(&self, v: u64) -> Result<FieldElement> {
        self.tables
            .from_packed(v)
            .map(|e| self.wrap(e))
            .ok_or_else(|| Error::OutOfRange(format!("packed value {v} not below {}", self.size())))
    }

    pub fn packed(&self, x: FieldElement) -> Result<u64> {
        Ok(self.tables.packed(self.check(x)?))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.tables.add(self.check(x)?, self.check(y)?)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.tables.sub(self.check(x)?, self.check(y)?)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.tables.mul(self.check(x)?, self.check(y)?)))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.tables.neg(self.check(x)?)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        self.tables
            .inv(self.check(x)?)
            .map(|e| self.wrap(e))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, x: FieldElement, k: i128) -> Result<FieldElement> {
        let a = self.check(x)?;
        if a == ZERO && k < 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.tables.pow(a, k)))
    }

    /// Whether `x` lies in the subfield of degree `r` over GF(p).
    pub fn in_subfield(&self, x: FieldElement, r: u32) -> Result<bool> {
        let a = self.check(x)?;
        if r == 0 || !self.degree().is_multiple_of(r) {
            return Err(Error::InvalidParameter(format!(
                "{r} does not divide the degree {}",
                self.degree()
            )));
        }
        let frob = self.base.p.pow(r) as i128;
        Ok(self.tables.pow(a, frob) == a)
    }

    /// Relative trace from the subfield of degree `from` to the subfield of
    /// degree `to` (degrees over GF(p), `to | from | D`).
    pub fn relative_trace(&self, x: FieldElement, from: u32, to: u32) -> Result<FieldElement> {
        let a = self.check(x)?;
        if to == 0 || !from.is_multiple_of(to) || !self.degree().is_multiple_of(from) {
            return Err(Error::InvalidParameter(format!(
                "need {to} | {from} | {}",
                self.degree()
            )));
        }
        if !self.in_subfield(x, from)? {
            return Err(Error::InvalidParameter(format!(
                "element is not in the subfield of degree {from}"
            )));
        }
        Ok(self.wrap(self.raw_trace(a, from, to)))
    }

    pub(crate) fn raw_trace(&self, a: u32, from: u32, to: u32) -> u32 {
        let t = &self.tables;
        let frob = (self.base.p as u128).pow(to);
        let mut acc = ZERO;
        let mut power = 1u128;
        for _ in 0..from / to {
            acc = t.add(acc, t.pow(a, (power % t.order as u128) as i128));
            power = power * frob % t.order as u128;
        }
        acc
    }

    /// Trace of `x` onto the subfield of degree `r` over GF(p).
    pub fn trace_to_subfield(&self, x: FieldElement, r: u32) -> Result<FieldElement> {
        self.relative_trace(x, self.degree(), r)
    }

    /// Trace onto GF(q), returned as a label.
    pub fn trace_to_base(&self, x: FieldElement) -> Result<u32> {
        let t = self.trace_to_subfield(x, self.base.e)?;
        Ok(self.base_field.from_ext_exp(t.exp).expect("trace lands in GF(q)"))
    }

    /// Project an element of GF(q) to its label; `None` outside GF(q).
    pub fn to_label(&self, x: FieldElement) -> Result<Option<u32>> {
        Ok(self.base_field.from_ext_exp(self.check(x)?))
    }

    pub fn from_label(&self, label: u32) -> Result<FieldElement> {
        if label >= self.base_field.q() {
            return Err(Error::OutOfRange(format!("label {label} not below q")));
        }
        Ok(self.wrap(self.base_field.to_ext_exp(label)))
    }

    /// The designated GF(q) inside this field, as elements.
    pub fn subfield_elements(&self) -> Vec<FieldElement> {
        let step = self.alpha_order() / (self.base.q - 1);
        std::iter::once(self.zero())
            .chain((0..self.base.q - 1).map(|j| self.alpha_pow((j * step) as i128)))
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(self.zero()).chain((0..self.alpha_order()).map(|k| self.wrap(k as u32)))
    }
}
