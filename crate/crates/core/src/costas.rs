//! Welch and Golomb Costas permutations and their families.
//!
//! Both classical algebraic constructions are provided, together with the
//! exhaustive Costas-property verifier used to validate them:
//!
//! * Welch: π_g(i) ≡ g^{i+c} (mod p) on {1,…,p−1} for a primitive root g
//!   modulo a prime p. The family W_p collects one permutation per
//!   primitive root, all with shift c = 0.
//! * Golomb: π_{g1,g2}(i) = h defined by g1^i + g2^h = 1 in GF(q) on
//!   {1,…,q−2} for primitive elements g1, g2. Fixing g2 gives the
//!   subfamily G_q; letting both vary gives the full family L_q.
//!
//! Indexing is 1-based throughout the public contract: `values[i-1]` holds
//! π(i). That matches the defining equations and keeps the correlation
//! window arithmetic free of off-by-one adjustments.

use crate::error::{Error, Result};
use crate::ffield::{FieldElement, FieldSpec, LogTable};
use crate::numtheory::is_prime;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How a permutation was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    /// π(i) ≡ g^{i+shift} mod p.
    Welch { p: u64, g: u64, shift: u64 },
    /// π(i) = h with g1^i + g2^h = 1 in GF(q); g1, g2 are canonical
    /// integer encodings of field elements.
    Golomb { q: u64, g1: u64, g2: u64 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Provenance::Welch { p, g, shift } => write!(f, "welch p={p} g={g} shift={shift}"),
            Provenance::Golomb { q, g1, g2 } => write!(f, "golomb q={q} g1={g1} g2={g2}"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    /// Parse the display form, e.g. `welch p=5 g=2 shift=0` (a leading
    /// `#` from the text-serialization header is tolerated).
    fn from_str(s: &str) -> Result<Provenance> {
        parse_provenance(s)
    }
}

/// Reconstruct the permutation a provenance names.
pub fn from_provenance(prov: Provenance) -> Result<CostasPermutation> {
    match prov {
        Provenance::Welch { p, g, shift } => welch(p, g, shift as i64),
        Provenance::Golomb { q, g1, g2 } => {
            let spec = FieldSpec::of_order(q)?;
            golomb(&spec, spec.element(g1)?, spec.element(g2)?)
        }
    }
}

/// A constructed Costas permutation with its provenance.
///
/// Immutable after construction; `values()[i-1]` is π(i) on {1,…,n}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostasPermutation {
    n: u32,
    values: Vec<u32>,
    provenance: Provenance,
}

impl CostasPermutation {
    /// Domain size n.
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The permutation values; `values()[i-1]` = π(i).
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// π(i) for 1 ≤ i ≤ n.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// Construction parameters.
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The inverse permutation as a plain vector: `inv[h-1] = i` with
    /// π(i) = h.
    pub fn inverse_values(&self) -> Vec<u32> {
        let mut inv = vec![0u32; self.values.len()];
        for (i, &h) in self.values.iter().enumerate() {
            inv[(h - 1) as usize] = (i + 1) as u32;
        }
        inv
    }

    /// Two-line text form: a provenance header, then π(1)…π(n)
    /// space-separated.
    pub fn to_text(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("# {}\n{}\n", self.provenance, vals.join(" "))
    }

    /// Parse the two-line text form and reconstruct the permutation from
    /// its header parameters, rejecting values that do not match. The
    /// format is therefore self-verifying: a tampered line cannot parse.
    pub fn from_text(text: &str) -> Result<CostasPermutation> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let body = lines
            .next()
            .ok_or_else(|| Error::Parse("missing values line".into()))?;
        let provenance = parse_provenance(header)?;
        let values: Vec<u32> = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad value {tok:?}")))
            })
            .collect::<Result<_>>()?;
        let rebuilt = from_provenance(provenance)?;
        if rebuilt.values != values {
            return Err(Error::Parse(
                "values do not match the permutation named by the header".into(),
            ));
        }
        Ok(rebuilt)
    }
}

fn parse_provenance(header: &str) -> Result<Provenance> {
    let bad = |msg: &str| Error::Parse(format!("{msg}: {header:?}"));
    let mut tokens = header
        .trim()
        .trim_start_matches('#')
        .split_whitespace();
    let kind = tokens.next().ok_or_else(|| bad("empty header"))?;
    let mut fields = std::collections::BTreeMap::new();
    for tok in tokens {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| bad("expected key=value"))?;
        let val: u64 = val.parse().map_err(|_| bad("bad integer"))?;
        fields.insert(key.to_string(), val);
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad("missing field"));
    match kind {
        "welch" => Ok(Provenance::Welch {
            p: get("p")?,
            g: get("g")?,
            shift: fields.get("shift").copied().unwrap_or(0),
        }),
        "golomb" => Ok(Provenance::Golomb {
            q: get("q")?,
            g1: get("g1")?,
            g2: get("g2")?,
        }),
        _ => Err(bad("unknown construction")),
    }
}

/// Welch permutation π(i) ≡ g^{i+shift} (mod p) on {1,…,p−1}.
///
/// `shift` may be any integer; it is reduced modulo p−1.
pub fn welch(p: u64, g: u64, shift: i64) -> Result<CostasPermutation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::ArgumentOutOfRange {
            name: "p",
            value: p as i64,
            min: 5,
            max: i64::MAX,
        });
    }
    let field = FieldSpec::new(p, 1)?;
    let g_el = field.element(g)?;
    if !field.is_primitive(g_el) {
        return Err(Error::NotPrimitive(g));
    }
    let n = (p - 1) as usize;
    let shift = shift.rem_euclid((p - 1) as i64) as u64;
    let mut values = Vec::with_capacity(n);
    // cur = g^{i+shift}, starting at i = 1 and multiplying by g each step.
    let mut cur = field.pow(g_el, 1 + shift);
    for _ in 0..n {
        values.push(cur.value() as u32);
        cur = field.mul(cur, g_el);
    }
    Ok(CostasPermutation {
        n: n as u32,
        values,
        provenance: Provenance::Welch { p, g, shift },
    })
}

/// The family W_p: one shift-0 Welch permutation per primitive root
/// modulo p, ordered by g.
pub fn welch_family(p: u64) -> Result<Vec<CostasPermutation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::ArgumentOutOfRange {
            name: "p",
            value: p as i64,
            min: 5,
            max: i64::MAX,
        });
    }
    let field = FieldSpec::new(p, 1)?;
    field
        .primitive_elements()
        .into_iter()
        .map(|g| welch(p, g.value(), 0))
        .collect()
}

fn require_golomb_order(q: u64) -> Result<()> {
    if q < 4 {
        return Err(Error::ArgumentOutOfRange {
            name: "q",
            value: q as i64,
            min: 4,
            max: i64::MAX,
        });
    }
    Ok(())
}

/// Golomb permutation π(i) = h with g1^i + g2^h = 1 in GF(q), on
/// {1,…,q−2}.
pub fn golomb(
    spec: &FieldSpec,
    g1: FieldElement,
    g2: FieldElement,
) -> Result<CostasPermutation> {
    let table = LogTable::build(spec, g2)?;
    golomb_with_table(spec, g1, &table)
}

/// Golomb permutation using a prebuilt log table for g2 = `table.base()`.
///
/// Lets family constructors share one O(q) table per g2.
pub fn golomb_with_table(
    spec: &FieldSpec,
    g1: FieldElement,
    table: &LogTable,
) -> Result<CostasPermutation> {
    require_golomb_order(spec.q())?;
    if !spec.is_primitive(g1) {
        return Err(Error::NotPrimitive(g1.value()));
    }
    let q = spec.q();
    let n = (q - 2) as usize;
    let mut values = Vec::with_capacity(n);
    // power = g1^i; 1 - g1^i is nonzero for 1 <= i <= q-2, so the log is
    // always defined and lands in {1,…,q−2}.
    let mut power = g1;
    for _ in 0..n {
        let h = table
            .log(spec.sub(FieldElement::ONE, power))
            .expect("1 - g1^i is nonzero for i in 1..=q-2");
        debug_assert!(h >= 1);
        values.push(h as u32);
        power = spec.mul(power, g1);
    }
    Ok(CostasPermutation {
        n: n as u32,
        values,
        provenance: Provenance::Golomb {
            q,
            g1: g1.value(),
            g2: table.base().value(),
        },
    })
}

/// The subfamily G_q with fixed g2: {π_{g1,g2} : g1 primitive}, ordered
/// by the encoding of g1.
pub fn golomb_subfamily(spec: &FieldSpec, g2: FieldElement) -> Result<Vec<CostasPermutation>> {
    require_golomb_order(spec.q())?;
    let table = LogTable::build(spec, g2)?;
    spec.primitive_elements()
        .into_iter()
        .map(|g1| golomb_with_table(spec, g1, &table))
        .collect()
}

/// The full family L_q over all primitive pairs (g1, g2), ordered by
/// (g1, g2) encodings.
pub fn golomb_full_family(spec: &FieldSpec) -> Result<Vec<CostasPermutation>> {
    require_golomb_order(spec.q())?;
    let prims = spec.primitive_elements();
    let tables: Vec<LogTable> = prims
        .iter()
        .map(|&g2| LogTable::build(spec, g2))
        .collect::<Result<_>>()?;
    let mut family = Vec::with_capacity(prims.len() * prims.len());
    for &g1 in &prims {
        for table in &tables {
            family.push(golomb_with_table(spec, g1, table)?);
        }
    }
    Ok(family)
}

/// Validate that `seq` is a permutation of {1,…,n} (n = seq.len()).
fn check_permutation(seq: &[u32]) -> Result<()> {
    let n = seq.len();
    let mut seen = vec![false; n];
    for &v in seq {
        let ok = (1..=n as u32).contains(&v) && !std::mem::replace(&mut seen[(v - 1) as usize], true);
        if !ok {
            return Err(Error::NotPermutation(n));
        }
    }
    Ok(())
}

/// Exhaustive Costas check: for every row k of the difference triangle,
/// the differences π(i+k) − π(i) must be pairwise distinct.
///
/// Rejects non-permutations with an error, which is distinct from an
/// honest `false` verdict on a valid permutation.
pub fn is_costas(seq: &[u32]) -> Result<bool> {
    check_permutation(seq)?;
    let n = seq.len();
    if n < 3 {
        return Ok(true);
    }
    // seen_at[d + n - 1] = k when difference d was seen in row k; a stamp
    // array avoids clearing 2n-1 slots for each of the n-2 rows.
    let mut seen_at = vec![u32::MAX; 2 * n - 1];
    for k in 1..=n - 2 {
        for i in 0..n - k {
            let d = (seq[i + k] as i64 - seq[i] as i64 + n as i64 - 1) as usize;
            if seen_at[d] == k as u32 {
                return Ok(false);
            }
            seen_at[d] = k as u32;
        }
    }
    Ok(true)
}
