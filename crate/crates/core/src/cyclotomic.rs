//! q-cyclotomic cosets modulo N, coset leaders and leader tables.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::util::{checked_pow, digits, gcd, mul_mod};

/// Largest modulus for which a full leader table is built.
pub const DEFAULT_LEADER_BUDGET: u64 = 1 << 24;

const CACHE_VERSION: u32 = 1;

/// The orbit of a residue under multiplication by `q` modulo `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub modulus: u64,
    pub q: u64,
    pub leader: u64,
    /// Sorted ascending.
    pub members: Vec<u64>,
}

impl Coset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

fn check_coprime(modulus: u64, q: u64) -> Result<()> {
    if modulus == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    if gcd(modulus, q) != 1 {
        return Err(Error::NotCoprime { modulus, q });
    }
    Ok(())
}

/// Orbit of `t mod modulus` under `x -> q*x`, in generation order.
pub(crate) fn orbit(modulus: u64, q: u64, t: u64) -> Vec<u64> {
    let start = t % modulus;
    let mut out = vec![start];
    let mut x = mul_mod(start, q, modulus);
    while x != start {
        out.push(x);
        x = mul_mod(x, q, modulus);
    }
    out
}

pub fn coset(modulus: u64, q: u64, t: u64) -> Result<Coset> {
    check_coprime(modulus, q)?;
    let mut members = orbit(modulus, q, t);
    members.sort_unstable();
    Ok(Coset {
        modulus,
        q,
        leader: members[0],
        members,
    })
}

pub fn coset_leader(modulus: u64, q: u64, t: u64) -> Result<u64> {
    check_coprime(modulus, q)?;
    Ok(*orbit(modulus, q, t).iter().min().unwrap())
}

pub fn coset_size(modulus: u64, q: u64, t: u64) -> Result<usize> {
    check_coprime(modulus, q)?;
    Ok(orbit(modulus, q, t).len())
}

/// All coset leaders modulo `N` in ascending order, with parallel orbit sizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeaderTable {
    pub modulus: u64,
    pub q: u64,
    pub leaders: Vec<u64>,
    pub sizes: Vec<u32>,
}

impl LeaderTable {
    /// One ascending sweep over `Z_N`; the first unvisited residue of every
    /// orbit is its minimum.
    pub fn compute(modulus: u64, q: u64, budget: u64) -> Result<Self> {
        check_coprime(modulus, q)?;
        if modulus > budget {
            return Err(Error::BudgetExceeded {
                what: "leader table",
                size: modulus as u128,
                budget: budget as u128,
            });
        }
        let mut visited = vec![0u64; (modulus as usize).div_ceil(64)];
        let mut leaders = Vec::new();
        let mut sizes = Vec::new();
        for t in 0..modulus {
            if visited[(t / 64) as usize] >> (t % 64) & 1 == 1 {
                continue;
            }
            let mut x = t;
            let mut size = 0u32;
            loop {
                visited[(x / 64) as usize] |= 1 << (x % 64);
                size += 1;
                x = mul_mod(x, q, modulus);
                if x == t {
                    break;
                }
            }
            leaders.push(t);
            sizes.push(size);
        }
        Ok(Self {
            modulus,
            q,
            leaders,
            sizes,
        })
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    pub fn is_leader(&self, t: u64) -> bool {
        self.leaders.binary_search(&t).is_ok()
    }

    /// Orbit size of a leader, `None` if `t` is not a leader.
    pub fn size_of(&self, t: u64) -> Option<u32> {
        self.leaders.binary_search(&t).ok().map(|i| self.sizes[i])
    }

    /// The `i`-th largest leader, `i >= 1`.
    pub fn ith_largest(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.leaders.len() {
            return Err(out_of_range(format!(
                "only {} leaders modulo {}",
                self.leaders.len(),
                self.modulus
            )));
        }
        Ok(self.leaders[self.leaders.len() - i])
    }

    /// The `i`-th largest odd leader, `i >= 1`.
    pub fn ith_largest_odd(&self, i: usize) -> Result<u64> {
        if i == 0 {
            return Err(out_of_range("index must be at least 1"));
        }
        self.leaders
            .iter()
            .rev()
            .filter(|&&l| l % 2 == 1)
            .nth(i - 1)
            .copied()
            .ok_or_else(|| out_of_range(format!("fewer than {i} odd leaders modulo {}", self.modulus)))
    }

    /// Odd leaders in `[a1, a2]`, ascending.
    pub fn odd_leaders_in_range(&self, a1: u64, a2: u64) -> Vec<u64> {
        if a1 > a2 {
            return Vec::new();
        }
        let lo = self.leaders.partition_point(|&l| l < a1);
        let hi = self.leaders.partition_point(|&l| l <= a2);
        self.leaders[lo..hi]
            .iter()
            .copied()
            .filter(|l| l % 2 == 1)
            .collect()
    }

    fn to_csv(&self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        writeln!(out, "# modulus={} q={} version={}", self.modulus, self.q, CACHE_VERSION)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["leader", "size"])?;
        for (l, s) in self.leaders.iter().zip(&self.sizes) {
            w.serialize((l, s))?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }

    fn from_csv(bytes: &[u8], modulus: u64, q: u64) -> Option<Self> {
        let text = std::str::from_utf8(bytes).ok()?;
        let (header, body) = text.split_once('\n')?;
        let expected = format!("# modulus={modulus} q={q} version={CACHE_VERSION}");
        if header.trim_end() != expected {
            return None;
        }
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let mut leaders = Vec::new();
        let mut sizes = Vec::new();
        for row in r.deserialize::<(u64, u32)>() {
            let (l, s) = row.ok()?;
            leaders.push(l);
            sizes.push(s);
        }
        let total: u64 = sizes.iter().map(|&s| s as u64).sum();
        (total == modulus).then_some(Self {
            modulus,
            q,
            leaders,
            sizes,
        })
    }
}

fn memo() -> &'static Mutex<HashMap<(u64, u64), Arc<LeaderTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<(u64, u64), Arc<LeaderTable>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Leader table under the default budget, memoized for the process.
pub fn leader_table(modulus: u64, q: u64) -> Result<Arc<LeaderTable>> {
    if let Some(t) = memo().lock().unwrap().get(&(modulus, q)) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(LeaderTable::compute(modulus, q, DEFAULT_LEADER_BUDGET)?);
    memo()
        .lock()
        .unwrap()
        .insert((modulus, q), Arc::clone(&table));
    Ok(table)
}

/// On-disk cache of leader tables, one CSV file per `(N, q)`.
#[derive(Debug, Clone)]
pub struct LeaderCache {
    dir: PathBuf,
}

impl LeaderCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Directory from `BCHLAB_CACHE`, defaulting to `./cache`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os("BCHLAB_CACHE").unwrap_or_else(|| "cache".into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, modulus: u64, q: u64) -> PathBuf {
        self.dir.join(format!("leaders_N{modulus}_q{q}.csv"))
    }

    /// Load a cached table or compute and store it. A cache file that fails
    /// to parse or disagrees with its header is recomputed and overwritten.
    pub fn get(&self, modulus: u64, q: u64, budget: u64) -> Result<LeaderTable> {
        let path = self.path(modulus, q);
        if let Ok(bytes) = fs::read(&path) {
            if let Some(t) = LeaderTable::from_csv(&bytes, modulus, q) {
                return Ok(t);
            }
        }
        let table = LeaderTable::compute(modulus, q, budget)?;
        fs::create_dir_all(&self.dir)?;
        static SEQ: AtomicU64 = AtomicU64::new(0);
        let tmp = self.dir.join(format!(
            ".leaders_N{modulus}_q{q}.{}.{}.tmp",
            std::process::id(),
            SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, table.to_csv()?)?;
        fs::rename(&tmp, &path)?;
        Ok(table)
    }

    /// Whether a valid cache entry exists.
    pub fn contains(&self, modulus: u64, q: u64) -> bool {
        fs::read(self.path(modulus, q))
            .ok()
            .and_then(|b| LeaderTable::from_csv(&b, modulus, q))
            .is_some()
    }
}

/// Leader test modulo `q^m - 1` by rotating the `m`-digit base-`q` expansion
/// of `i`: `i` is a leader iff no rotation is smaller.
pub fn shift_test_leader(q: u64, m: u32, i: u128) -> bool {
    let d = digits(i, q, m);
    let value = |rot: usize| {
        (0..m as usize)
            .rev()
            .fold(0u128, |acc, k| acc * q as u128 + d[(k + m as usize - rot) % m as usize] as u128)
    };
    (1..m as usize).all(|j| value(j) >= i)
}

/// Closed-form leader test modulo `q^m - 1` for small `i`: returns whether
/// `i` is a leader (iff `q` does not divide `i`) and its orbit size.
///
/// Odd `m >= 3` covers `1 <= i <= q^((m+1)/2) - 1`; even `m` covers
/// `1 <= i <= 2q^(m/2) - 1`, where `q^(m/2) + 1` has orbit size `m/2`.
pub fn small_leader_predicate(q: u64, m: u32, i: u128) -> Result<(bool, u32)> {
    let bound = if m % 2 == 1 {
        if m < 3 {
            return Err(out_of_range("odd m must be at least 3"));
        }
        checked_pow(q, m.div_ceil(2)).unwrap() - 1
    } else {
        2 * checked_pow(q, m / 2).unwrap() - 1
    };
    if i == 0 || i > bound {
        return Err(out_of_range(format!("i = {i} outside [1, {bound}]")));
    }
    let size = if m.is_multiple_of(2) && i == checked_pow(q, m / 2).unwrap() + 1 {
        m / 2
    } else {
        m
    };
    Ok((!i.is_multiple_of(q as u128), size))
}
