//! Cyclotomic cosets of `{0, …, N-1}` under multiplication by `p`.
//!
//! The sieve walks `0..N` once. Each unmarked index starts a new coset, whose
//! orbit `a, ap, ap², …` is marked until it closes on a marked cell, so every
//! cell is read twice and marked once. Marks live in a bit array.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, gcd, mul_mod, pow_mod, totient};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    pub leader: u64,
    pub size: u64,
    /// Orbit order: `leader, leader·p, leader·p², …` (mod N).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetPartition {
    #[serde(rename = "N")]
    pub modulus: u64,
    pub p: u64,
    /// Ordered by leader.
    pub cosets: Vec<Coset>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn get(&self, leader: u64) -> Option<&Coset> {
        self.cosets
            .binary_search_by_key(&leader, |c| c.leader)
            .ok()
            .map(|i| &self.cosets[i])
    }

    /// The coset containing `x`, found by walking its orbit.
    pub fn coset_of(&self, x: u64) -> Option<&Coset> {
        let x = x % self.modulus;
        let mut a = x;
        let mut leader = x;
        loop {
            a = mul_mod(a, self.p, self.modulus);
            leader = leader.min(a);
            if a == x {
                break;
            }
        }
        self.get(leader)
    }
}

impl fmt::Display for CosetPartition {
    /// One coset per line in brace notation, e.g. `{5,15,13,7}`; cosets
    /// without materialized members print as `leader: size`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cosets {
            match &c.members {
                Some(m) => {
                    let body: Vec<String> = m.iter().map(u64::to_string).collect();
                    writeln!(f, "{{{}}}", body.join(","))?;
                }
                None => writeln!(f, "{}: {}", c.leader, c.size)?,
            }
        }
        Ok(())
    }
}

/// Work counters for one sieve run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SieveStats {
    pub reads: u64,
    pub marks: u64,
}

/// Streaming sieve yielding `(leader, size)` in increasing leader order.
pub struct CosetLeaders {
    modulus: u64,
    p: u64,
    marks: Vec<u64>,
    next: u64,
    stats: SieveStats,
}

impl CosetLeaders {
    pub fn new(modulus: u64, p: u64) -> Result<Self> {
        validate(modulus, p)?;
        let words = modulus.div_ceil(64) as usize;
        Ok(CosetLeaders {
            modulus,
            p: p % modulus,
            marks: vec![0; words],
            next: 0,
            stats: SieveStats::default(),
        })
    }

    pub fn stats(&self) -> SieveStats {
        self.stats
    }

    #[inline]
    fn is_marked(&mut self, i: u64) -> bool {
        self.stats.reads += 1;
        self.marks[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn mark(&mut self, i: u64) {
        self.stats.marks += 1;
        self.marks[(i >> 6) as usize] |= 1 << (i & 63);
    }
}

impl Iterator for CosetLeaders {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        while self.next < self.modulus {
            let i = self.next;
            self.next += 1;
            if self.is_marked(i) {
                continue;
            }
            self.mark(i);
            let mut size = 1;
            let mut a = mul_mod(i, self.p, self.modulus);
            while !self.is_marked(a) {
                self.mark(a);
                size += 1;
                a = mul_mod(a, self.p, self.modulus);
            }
            return Some((i, size));
        }
        None
    }
}

fn validate(modulus: u64, p: u64) -> Result<()> {
    if modulus == 0 || p < 2 {
        return Err(Error::InvalidParameters(format!(
            "cosets need N >= 1 and p >= 2, got N = {modulus}, p = {p}"
        )));
    }
    if gcd(modulus, p) != 1 {
        return Err(Error::NotCoprime(modulus, p));
    }
    Ok(())
}

/// Leaders and sizes only.
pub fn coset_leaders(modulus: u64, p: u64) -> Result<CosetPartition> {
    let cosets = CosetLeaders::new(modulus, p)?
        .map(|(leader, size)| Coset {
            leader,
            size,
            members: None,
        })
        .collect();
    Ok(CosetPartition { modulus, p, cosets })
}

/// Cosets with member lists in orbit order.
pub fn cosets_full(modulus: u64, p: u64) -> Result<CosetPartition> {
    let mut partition = coset_leaders(modulus, p)?;
    for c in partition.cosets.iter_mut() {
        let mut members = Vec::with_capacity(c.size as usize);
        let mut a = c.leader;
        for _ in 0..c.size {
            members.push(a);
            a = mul_mod(a, p, modulus);
        }
        c.members = Some(members);
    }
    Ok(partition)
}

/// Smallest `s >= 1` with `q^s ≡ 1 (mod f)`.
pub fn multiplicative_order(q: u64, f: u64) -> Result<u64> {
    if f == 0 {
        return Err(Error::InvalidParameters("order modulo zero".into()));
    }
    if gcd(q, f) != 1 {
        return Err(Error::NotCoprime(q, f));
    }
    if f == 1 {
        return Ok(1);
    }
    let mut order = totient(f);
    for (prime, _) in factorize(order) {
        while order.is_multiple_of(prime) && pow_mod(q, order / prime, f) == 1 {
            order /= prime;
        }
    }
    Ok(order)
}

/// Number of `q`-cyclotomic cosets mod `N`: `Σ_{f | N} φ(f) / ord_f(q)`.
pub fn coset_count_formula(modulus: u64, q: u64) -> Result<u64> {
    validate(modulus, q)?;
    divisors(modulus)
        .into_iter()
        .map(|f| Ok(totient(f) / multiplicative_order(q, f)?))
        .sum()
}
