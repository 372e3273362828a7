//! Cyclic and negacyclic BCH codes of length `n = (q^m - 1)/2`.
//!
//! Exponents of roots are residues modulo `N`, with `N = n` for cyclic codes
//! (roots `beta^i`, `beta = alpha^2`) and `N = 2n` for negacyclic codes (roots
//! `gamma^j` for odd `j`, `gamma = alpha`).

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{coset, orbit};
use crate::error::{out_of_range, Error, Result};
use crate::field::{BaseField, ExtensionField, FieldElement, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `lambda = 1`, codes in `F_q[x]/(x^n - 1)`.
    Cyclic,
    /// `lambda = -1`, codes in `F_q[x]/(x^n + 1)`.
    Negacyclic,
}

impl Family {
    pub fn lambda(self) -> i64 {
        match self {
            Family::Cyclic => 1,
            Family::Negacyclic => -1,
        }
    }

    /// Modulus of root exponents for length `n`.
    pub fn modulus(self, n: u64) -> u64 {
        match self {
            Family::Cyclic => n,
            Family::Negacyclic => 2 * n,
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Family::Cyclic => Parity::All,
            Family::Negacyclic => Parity::Odd,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cyclic => "cyc",
            Family::Negacyclic => "neg",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyc" | "cyclic" | "1" | "+1" => Ok(Family::Cyclic),
            "neg" | "negacyclic" | "-1" => Ok(Family::Negacyclic),
            _ => Err(Error::InvalidParameter(format!("unknown family `{s}`"))),
        }
    }
}

/// The BCH code `C_(n, lambda, delta, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CodeSpec {
    pub n: u64,
    pub family: Family,
    pub delta: u64,
    pub b: u64,
}

impl CodeSpec {
    pub fn new(n: u64, family: Family, delta: u64, b: u64) -> Result<Self> {
        if delta < 2 || delta > n {
            return Err(out_of_range(format!("designed distance {delta} not in [2, {n}]")));
        }
        Ok(Self { n, family, delta, b })
    }

    pub fn cyclic(n: u64, delta: u64, b: u64) -> Result<Self> {
        Self::new(n, Family::Cyclic, delta, b)
    }

    pub fn negacyclic(n: u64, delta: u64, b: u64) -> Result<Self> {
        Self::new(n, Family::Negacyclic, delta, b)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{},{})", self.n, self.family.lambda(), self.delta, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    All,
    Odd,
}

/// A union of q-cyclotomic cosets modulo `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefiningSet {
    pub modulus: u64,
    pub q: u64,
    pub parity: Parity,
    /// Sorted ascending.
    pub exponents: Vec<u64>,
}

impl DefiningSet {
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, t: u64) -> bool {
        self.exponents.binary_search(&t).is_ok()
    }

    /// Build from arbitrary residues by closing under `x -> q*x`.
    pub fn closure(modulus: u64, q: u64, parity: Parity, seeds: impl IntoIterator<Item = u64>) -> Self {
        let mut member = vec![false; modulus as usize];
        for s in seeds {
            let s = s % modulus;
            if member[s as usize] {
                continue;
            }
            for x in orbit(modulus, q, s) {
                member[x as usize] = true;
            }
        }
        Self::from_mask(modulus, q, parity, &member)
    }

    fn from_mask(modulus: u64, q: u64, parity: Parity, member: &[bool]) -> Self {
        let exponents = member
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u64))
            .collect();
        Self {
            modulus,
            q,
            parity,
            exponents,
        }
    }

    /// Coset leaders of the cosets making up the set, ascending.
    pub fn leaders(&self) -> Vec<u64> {
        let mut seen = vec![false; self.modulus as usize];
        let mut out = Vec::new();
        for &t in &self.exponents {
            if seen[t as usize] {
                continue;
            }
            for x in orbit(self.modulus, self.q, t) {
                seen[x as usize] = true;
            }
            out.push(t);
        }
        out
    }

    /// Every residue of the parity class, as a set.
    pub fn universe(modulus: u64, q: u64, parity: Parity) -> Self {
        let exponents = (0..modulus)
            .filter(|t| parity == Parity::All || t % 2 == 1)
            .collect();
        Self {
            modulus,
            q,
            parity,
            exponents,
        }
    }

    /// `{-t : t in universe \ self}`, the defining set of the dual code.
    pub fn dual(&self) -> Self {
        let n = self.modulus;
        let mut member = vec![false; n as usize];
        for t in 0..n {
            if self.parity == Parity::Odd && t % 2 == 0 {
                continue;
            }
            if !self.contains(t) {
                member[((n - t) % n) as usize] = true;
            }
        }
        Self::from_mask(n, self.q, self.parity, &member)
    }
}

/// `n = (q^m - 1)/2` for the field.
pub fn half_length(field: &ExtensionField) -> u64 {
    field.alpha_order() / 2
}

fn check_spec(spec: &CodeSpec, field: &ExtensionField) -> Result<()> {
    if spec.n != half_length(field) {
        return Err(Error::SpecMismatch(format!(
            "length {} but (q^m-1)/2 = {}",
            spec.n,
            half_length(field)
        )));
    }
    Ok(())
}

pub fn defining_set(spec: &CodeSpec, field: &ExtensionField) -> Result<DefiningSet> {
    check_spec(spec, field)?;
    Ok(defining_set_for(spec, field.q()))
}

/// Defining set from a `CodeSpec` alone, without building the field.
pub fn defining_set_for(spec: &CodeSpec, q: u64) -> DefiningSet {
    let modulus = spec.family.modulus(spec.n);
    let range = spec.b..=spec.b + spec.delta - 2;
    match spec.family {
        Family::Cyclic => DefiningSet::closure(modulus, q, Parity::All, range),
        Family::Negacyclic => {
            DefiningSet::closure(modulus, q, Parity::Odd, range.map(|i| (1 + 2 * (i % spec.n)) % modulus))
        }
    }
}

// ---------------------------------------------------------------------------

/// A polynomial over GF(q) in label form, ascending, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UnivariatePoly {
    coeffs: Vec<u32>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `x^n - lambda`.
    pub fn x_n_minus_lambda(n: u64, lambda: i64, bf: &BaseField) -> Self {
        let mut c = vec![0u32; n as usize + 1];
        c[0] = bf.neg(bf.from_int(lambda));
        c[n as usize] = 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn mul(&self, other: &Self, bf: &BaseField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = bf.add(out[i + j], bf.mul(a, b));
                }
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self, bf: &BaseField) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(
            (0..len)
                .map(|i| bf.add(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn divrem(&self, divisor: &Self, bf: &BaseField) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = bf.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = bf.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = bf.sub(rem[idx], bf.mul(c, d));
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `x^deg * p(1/x)` scaled to be monic.
    pub fn reciprocal_monic(&self, bf: &BaseField) -> Result<Self> {
        let mut c = self.coeffs.clone();
        c.reverse();
        let lead = *c.last().ok_or(Error::DivisionByZero)?;
        let s = bf.inv(lead)?;
        Ok(Self::new(c.into_iter().map(|x| bf.mul(x, s)).collect()))
    }

    /// Value at a point of the extension field.
    pub fn eval(&self, field: &ExtensionField, x: FieldElement) -> Result<FieldElement> {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x)?, field.from_label(c)?)?;
        }
        Ok(acc)
    }

    /// Coefficients padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), 0);
        v
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Exponent of `alpha` for the root with exponent `t` modulo `N`.
fn alpha_exponent(field: &ExtensionField, modulus: u64, t: u64) -> Result<u64> {
    let order = field.alpha_order();
    if !order.is_multiple_of(modulus) {
        return Err(Error::SpecMismatch(format!(
            "{modulus} does not divide q^m - 1 = {order}"
        )));
    }
    Ok((t % modulus) * (order / modulus))
}

/// Minimal polynomial over GF(q) of the root with exponent `t` modulo `N`
/// (`beta^t` for `N = n`, `gamma^t` for `N = 2n`).
pub fn minimal_polynomial(field: &ExtensionField, modulus: u64, t: u64) -> Result<UnivariatePoly> {
    alpha_exponent(field, modulus, 0)?;
    let tables = field.tables();
    let members = coset(modulus, field.q(), t)?.members;
    // product of (x - root) with extension-field coefficients (raw exponents)
    let mut acc: Vec<u32> = vec![0];
    for &c in &members {
        let root = alpha_exponent(field, modulus, c)? as u32;
        let neg_root = tables.neg(root);
        let mut next = vec![ZERO; acc.len() + 1];
        for (i, &a) in acc.iter().enumerate() {
            next[i + 1] = tables.add(next[i + 1], a);
            next[i] = tables.add(next[i], tables.mul(a, neg_root));
        }
        acc = next;
    }
    let bf = field.base_field();
    let coeffs = acc
        .into_iter()
        .map(|e| bf.from_ext_exp(e).expect("minimal polynomial has coefficients in GF(q)"))
        .collect();
    Ok(UnivariatePoly::new(coeffs))
}

/// How a model came about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Origin {
    Bch(CodeSpec),
    Custom(String),
}

/// A realized code together with its field.
#[derive(Debug, Clone)]
pub struct LinearCodeModel {
    field: Arc<ExtensionField>,
    origin: Origin,
    family: Family,
    n: u64,
    generator: UnivariatePoly,
    defining_set: DefiningSet,
}

impl LinearCodeModel {
    /// The BCH code named by `spec`.
    pub fn bch(field: Arc<ExtensionField>, spec: CodeSpec) -> Result<Self> {
        let t = defining_set(&spec, &field)?;
        Self::from_defining_set(field, spec.family, t, Origin::Bch(spec))
    }

    /// The code with the given defining set; the generator is the product of
    /// the minimal polynomials of its cosets.
    pub fn from_defining_set(
        field: Arc<ExtensionField>,
        family: Family,
        t: DefiningSet,
        origin: Origin,
    ) -> Result<Self> {
        let n = half_length(&field);
        if t.modulus != family.modulus(n) || t.parity != family.parity() {
            return Err(Error::SpecMismatch("defining set does not match the family".into()));
        }
        let bf = field.base_field();
        let mut g = UnivariatePoly::one();
        for leader in t.leaders() {
            g = g.mul(&minimal_polynomial(&field, t.modulus, leader)?, bf);
        }
        debug_assert_eq!(g.degree(), Some(t.len()));
        Ok(Self {
            field,
            origin,
            family,
            n,
            generator: g,
            defining_set: t,
        })
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.n - self.defining_set.len() as u64
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn generator(&self) -> &UnivariatePoly {
        &self.generator
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.defining_set
    }

    pub fn modulus_poly(&self) -> UnivariatePoly {
        UnivariatePoly::x_n_minus_lambda(self.n, self.family.lambda(), self.field.base_field())
    }

    /// `h = (x^n - lambda)/g`.
    pub fn parity_check_polynomial(&self) -> UnivariatePoly {
        let (h, r) = self
            .modulus_poly()
            .divrem(&self.generator, self.field.base_field())
            .expect("generator is nonzero");
        debug_assert!(r.is_zero());
        h
    }

    pub fn dual_defining_set(&self) -> DefiningSet {
        self.defining_set.dual()
    }

    pub fn dual(&self) -> Result<Self> {
        Self::from_defining_set(
            Arc::clone(&self.field),
            self.family,
            self.dual_defining_set(),
            Origin::Custom(format!("dual of {}", self.describe())),
        )
    }

    pub fn describe(&self) -> String {
        match &self.origin {
            Origin::Bch(s) => s.to_string(),
            Origin::Custom(s) => s.clone(),
        }
    }

    /// Codeword `msg(x) * g(x)` for a message of at most `k` symbols.
    pub fn encode(&self, msg: &[u32]) -> Result<Vec<u32>> {
        if msg.len() as u64 > self.k() {
            return Err(out_of_range(format!("message longer than k = {}", self.k())));
        }
        let c = UnivariatePoly::new(msg.to_vec()).mul(&self.generator, self.field.base_field());
        Ok(c.padded(self.n as usize))
    }

    /// Whether a length-`n` word lies in the code (divisible by `g`).
    pub fn contains(&self, word: &[u32]) -> Result<bool> {
        if word.len() as u64 != self.n {
            return Err(out_of_range("word length differs from n"));
        }
        let (_, r) = UnivariatePoly::new(word.to_vec()).divrem(&self.generator, self.field.base_field())?;
        Ok(r.is_zero())
    }
}

/// Append the negated coordinate sum.
pub fn extended_codeword(word: &[u32], bf: &BaseField) -> Vec<u32> {
    let sum = word.iter().fold(0, |acc, &c| bf.add(acc, c));
    let mut out = word.to_vec();
    out.push(bf.neg(sum));
    out
}

/// The word `(sum_t Tr(a_t * beta^(-l * i_t)))_l` of length `n`, where
/// `beta` has order `n` and each trace goes from GF(q^(m_t)) down to GF(q),
/// `m_t` being the size of the coset of `i_t` modulo `n`.
pub fn trace_codeword(
    field: &ExtensionField,
    n: u64,
    roots: &[u64],
    coefficients: &[FieldElement],
) -> Result<Vec<u32>> {
    if roots.len() != coefficients.len() {
        return Err(Error::InvalidParameter("one coefficient per root".into()));
    }
    alpha_exponent(field, n, 0)?;
    let q = field.q();
    let leaders: Vec<u64> = roots
        .iter()
        .map(|&i| crate::cyclotomic::coset_leader(n, q, i))
        .collect::<Result<_>>()?;
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            if leaders[a] == leaders[b] {
                return Err(Error::ConjugateRoots(roots[a], roots[b]));
            }
        }
    }
    let e = field.base().e();
    let tables = field.tables();
    let bf = field.base_field();
    let mut parts = Vec::with_capacity(roots.len());
    for (&i, &a) in roots.iter().zip(coefficients) {
        let mt = crate::cyclotomic::coset_size(n, q, i)? as u32;
        if !field.in_subfield(a, e * mt)? {
            return Err(Error::InvalidParameter(format!(
                "coefficient for root {i} is not in GF(q^{mt})"
            )));
        }
        parts.push((alpha_exponent(field, n, i)?, a.raw(), mt));
    }
    let order = field.alpha_order();
    Ok((0..n)
        .map(|l| {
            parts.iter().fold(0u32, |acc, &(root, a, mt)| {
                let shift = (order - (l * root) % order) % order;
                let x = tables.mul(a, tables.alpha_pow(shift as i128));
                let tr = field.raw_trace(x, e * mt, e);
                bf.add(acc, bf.from_ext_exp(tr).expect("trace lands in GF(q)"))
            })
        })
        .collect())
}

/// The negacyclic code with check polynomial `M_1 * M_(delta_1')`, where
/// `delta_1'` is the largest odd coset leader modulo `2n`.
#[derive(Debug, Clone)]
pub struct TwoLeaderCode {
    pub model: LinearCodeModel,
    pub delta1_prime: u64,
    /// Claimed `d(C') >= ((q-2)q^(m-1) - 1)/2`.
    pub d_lower: u64,
    pub dual_dim: u64,
    /// Claimed interval for the dual distance.
    pub dual_d_range: (u64, u64),
}

pub fn two_leader_code(field: Arc<ExtensionField>) -> Result<TwoLeaderCode> {
    let m = field.m();
    if m < 3 {
        return Err(out_of_range("m must be at least 3"));
    }
    let q = field.q();
    let n = half_length(&field);
    let qm1 = q.pow(m - 1);
    let delta1_prime = q.pow(m) - qm1 - 1;
    let nonzeros = DefiningSet::closure(2 * n, q, Parity::Odd, [1, delta1_prime]);
    let t = DefiningSet {
        exponents: DefiningSet::universe(2 * n, q, Parity::Odd)
            .exponents
            .into_iter()
            .filter(|x| !nonzeros.contains(*x))
            .collect(),
        ..nonzeros
    };
    let model = LinearCodeModel::from_defining_set(
        field,
        Family::Negacyclic,
        t,
        Origin::Custom(format!("C' (check polynomial M_1 M_{delta1_prime})")),
    )?;
    Ok(TwoLeaderCode {
        dual_dim: n - 2 * m as u64,
        model,
        delta1_prime,
        d_lower: ((q - 2) * qm1 - 1) / 2,
        dual_d_range: (3, 5),
    })
}

/// The sparse word built from `(x^n + 1)/(x^(n/delta_a) + 1)` times
/// `prod_{t=1}^{floor(k/2)} (x^(n/(delta_a(q-1))) - gamma^(n(2t-1)/(q-1)))`.
#[derive(Debug, Clone)]
pub struct LowWeightCodeword {
    /// Coefficients in the extension field, ascending.
    pub coeffs: Vec<FieldElement>,
    /// The same polynomial over GF(q), when every coefficient lies there.
    pub base: Option<UnivariatePoly>,
    pub weight: usize,
    /// Designed distance `(k delta_a - 1)/2` (odd k) or `k delta_a / 2`.
    pub delta: u64,
}

impl LowWeightCodeword {
    /// Sparse evaluation: the word has only `weight` nonzero coefficients.
    pub fn eval(&self, field: &ExtensionField, x: FieldElement) -> Result<FieldElement> {
        let mut acc = field.zero();
        for (j, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            acc = field.add(acc, field.mul(c, field.pow(x, j as i128)?)?)?;
        }
        Ok(acc)
    }

    /// Whether `f(gamma^(1+2i)) = 0` for `1 <= i <= delta - 1`.
    pub fn vanishes_on_designed_roots(&self, field: &ExtensionField) -> Result<bool> {
        for i in 1..self.delta {
            if !self.eval(field, field.alpha_pow((1 + 2 * i) as i128))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn low_weight_check(q: u64, n: u64, k: u64, delta_a: u64) -> Result<()> {
    if k == 0 || k > q - 1 {
        return Err(out_of_range(format!("k = {k} not in [1, {}]", q - 1)));
    }
    if delta_a == 0 || !n.is_multiple_of(q - 1) || !(n / (q - 1)).is_multiple_of(delta_a) {
        return Err(Error::DivisibilityViolation(format!(
            "need (q-1) | n and delta_a | n/(q-1) for q={q}, n={n}, delta_a={delta_a}"
        )));
    }
    Ok(())
}

pub fn low_weight_codeword(field: &ExtensionField, delta_a: u64, k: u64) -> Result<LowWeightCodeword> {
    let q = field.q();
    let n = half_length(field);
    low_weight_check(q, n, k, delta_a)?;
    if delta_a.is_multiple_of(2) {
        return Err(Error::DivisibilityViolation(format!(
            "x^{} + 1 is not divisible by x^{} + 1 for even delta_a = {delta_a}",
            n,
            n / delta_a
        )));
    }
    let step = (n / delta_a) as usize;
    let mut coeffs = vec![field.zero(); n as usize];
    for j in 0..delta_a as usize {
        coeffs[j * step] = if j % 2 == 0 { field.one() } else { field.neg(field.one())? };
    }
    let shift = (n / (delta_a * (q - 1))) as usize;
    for t in 1..=k / 2 {
        let c = field.alpha_pow((n * (2 * t - 1) / (q - 1)) as i128);
        let neg_c = field.neg(c)?;
        let mut next = vec![field.zero(); n as usize];
        for (i, &a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if i + shift >= n as usize {
                return Err(Error::DivisibilityViolation("product exceeds degree n - 1".into()));
            }
            next[i + shift] = field.add(next[i + shift], a)?;
            next[i] = field.add(next[i], field.mul(a, neg_c)?)?;
        }
        coeffs = next;
    }
    let labels: Option<Vec<u32>> = coeffs
        .iter()
        .map(|&c| field.to_label(c).ok().flatten())
        .collect();
    let weight = coeffs.iter().filter(|c| !c.is_zero()).count();
    let delta = if k % 2 == 1 { (k * delta_a - 1) / 2 } else { k * delta_a / 2 };
    Ok(LowWeightCodeword {
        coeffs,
        base: labels.map(UnivariatePoly::new),
        weight,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64, m: u32) -> Arc<ExtensionField> {
        Arc::new(ExtensionField::from_q(q, m).unwrap())
    }

    #[test]
    fn defining_sets_small() {
        let f = field(3, 2);
        let t = defining_set(&CodeSpec::negacyclic(4, 2, 0).unwrap(), &f).unwrap();
        assert_eq!(t.exponents, vec![1, 3]);
        let t = defining_set(&CodeSpec::cyclic(4, 2, 1).unwrap(), &f).unwrap();
        assert_eq!(t.exponents, vec![1, 3]);
        let t = defining_set(&CodeSpec::cyclic(4, 2, 0).unwrap(), &f).unwrap();
        assert_eq!(t.exponents, vec![0]);
        assert!(matches!(
            defining_set(&CodeSpec::cyclic(5, 2, 0).unwrap(), &f),
            Err(Error::SpecMismatch(_))
        ));
    }

    #[test]
    fn negacyclic_40_defining_set() {
        let f = field(3, 4);
        let t = defining_set(&CodeSpec::negacyclic(40, 5, 1).unwrap(), &f).unwrap();
        let mut expect = vec![1, 3, 9, 27, 5, 15, 45, 55, 7, 21, 63, 29];
        expect.sort();
        assert_eq!(t.exponents, expect);
        assert!(t.exponents.iter().all(|x| x % 2 == 1));
    }

    #[test]
    fn minimal_polynomials() {
        let f = field(3, 2);
        assert_eq!(minimal_polynomial(&f, 4, 0).unwrap().coeffs(), &[2, 1]);
        // gamma = alpha is a root of the field modulus x^2 + x + 2
        assert_eq!(minimal_polynomial(&f, 8, 1).unwrap().coeffs(), &[2, 1, 1]);
        assert_eq!(minimal_polynomial(&f, 8, 2).unwrap().coeffs(), &[1, 0, 1]);
        let f = field(3, 3);
        for t in 0..26 {
            let mp = minimal_polynomial(&f, 26, t).unwrap();
            assert_eq!(mp.degree().unwrap(), coset(26, 3, t).unwrap().size());
            assert!(mp.is_monic());
            assert!(mp.eval(&f, f.alpha_pow(t as i128)).unwrap().is_zero());
        }
    }

    #[test]
    fn generator_divides_modulus() {
        let f = field(3, 2);
        let model = LinearCodeModel::bch(f, CodeSpec::negacyclic(4, 2, 0).unwrap()).unwrap();
        assert_eq!((model.generator().degree(), model.k()), (Some(2), 2));
        let h = model.parity_check_polynomial();
        let bf = model.field().base_field();
        assert_eq!(model.generator().mul(&h, bf), model.modulus_poly());
        assert_eq!(model.modulus_poly().coeffs(), &[1, 0, 0, 0, 1]);
    }

    #[test]
    fn dual_defining_set_rules() {
        let t = DefiningSet::closure(13, 3, Parity::All, 1..13);
        assert_eq!(t.dual().exponents, vec![0]);
        let empty = DefiningSet::closure(13, 3, Parity::All, []);
        assert_eq!(empty.dual().len(), 13);
        let f = field(3, 3);
        let model = LinearCodeModel::bch(f, CodeSpec::cyclic(13, 7, 1).unwrap()).unwrap();
        assert_eq!(model.dual_defining_set().exponents, vec![0, 2, 5, 6]);
    }

    #[test]
    fn dual_generator_is_reciprocal_of_check_polynomial() {
        for (q, m) in [(3u64, 3u32), (3, 4), (5, 2)] {
            let f = field(q, m);
            let n = half_length(&f);
            for family in [Family::Cyclic, Family::Negacyclic] {
                for delta in [2, 3, n / 3 + 1] {
                    let model = LinearCodeModel::bch(Arc::clone(&f), CodeSpec::new(n, family, delta, 1).unwrap()).unwrap();
                    let bf = f.base_field();
                    let hstar = model.parity_check_polynomial().reciprocal_monic(bf).unwrap();
                    assert_eq!(model.dual().unwrap().generator(), &hstar, "{}", model.describe());
                }
            }
        }
    }

    #[test]
    fn extended_words() {
        let f = field(3, 2);
        let bf = f.base_field();
        assert_eq!(extended_codeword(&[0, 0, 0, 0], bf), vec![0; 5]);
        assert_eq!(extended_codeword(&[1, 1, 1, 1], bf), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn trace_words_are_codewords() {
        let f = field(3, 3);
        let model = LinearCodeModel::bch(Arc::clone(&f), CodeSpec::cyclic(13, 7, 1).unwrap()).unwrap();
        // roots of h: beta^0 and beta^7
        let mut from_traces = std::collections::BTreeSet::new();
        for a in f.elements() {
            for b in f.subfield_elements() {
                let w = trace_codeword(&f, 13, &[7, 0], &[a, b]).unwrap();
                assert!(model.contains(&w).unwrap());
                from_traces.insert(w);
            }
        }
        assert_eq!(from_traces.len(), 81);
        assert_eq!(model.k(), 4);
        assert!(matches!(
            trace_codeword(&f, 13, &[2, 6], &[f.one(), f.one()]),
            Err(Error::ConjugateRoots(2, 6))
        ));
        let zero = trace_codeword(&f, 13, &[1], &[f.zero()]).unwrap();
        assert!(zero.iter().all(|&c| c == 0));
    }

    #[test]
    fn two_leader_shape() {
        let c = two_leader_code(field(3, 3)).unwrap();
        assert_eq!((c.model.n(), c.model.k(), c.d_lower, c.dual_dim), (13, 6, 4, 7));
        assert_eq!(c.delta1_prime, 17);
        let c = two_leader_code(field(3, 4)).unwrap();
        assert_eq!((c.delta1_prime, c.model.k()), (53, 8));
        assert_eq!(coset(80, 3, 53).unwrap().members, vec![53, 71, 77, 79]);
        assert!(two_leader_code(field(3, 2)).is_err());
    }

    #[test]
    fn low_weight_words() {
        let f = field(3, 4);
        // even delta_a: the quotient is not a polynomial
        assert!(matches!(
            low_weight_codeword(&f, 10, 1),
            Err(Error::DivisibilityViolation(_))
        ));
        let w = low_weight_codeword(&f, 5, 1).unwrap();
        assert_eq!((w.weight, w.delta), (5, 2));
        assert!(w.base.is_some());
        assert!(w.vanishes_on_designed_roots(&f).unwrap());
    }
}
