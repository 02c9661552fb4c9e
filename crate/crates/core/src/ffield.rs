//! Arithmetic in GF(q) for prime powers q = p^r up to 2^20.
//!
//! Elements are identified with integers in 0..q through the canonical
//! encoding Σ cᵢ·pⁱ of their coefficient vector (constant term least
//! significant). That gives every field a deterministic total order on
//! elements, which the rest of the toolkit relies on for "smallest
//! primitive element" choices and witness tie-breaking.
//!
//! Extension fields use the lexicographically smallest monic irreducible
//! modulus (smallest encoding, constant term upward), found by direct
//! search: root absence settles degrees 2 and 3, and higher degrees get the
//! standard Frobenius/gcd irreducibility test. Discrete logarithms are full
//! exp/log tables; at this scale O(q) tables are cheap and make Golomb
//! construction O(1) per entry.

use crate::error::{Error, Result};
use crate::numtheory::{self, factorize, is_prime};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of GF(q), stored as its canonical integer encoding in 0..q.
///
/// Elements are plain values; all arithmetic goes through the
/// [`FieldSpec`] they belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    /// The additive identity.
    pub const ZERO: FieldElement = FieldElement(0);
    /// The multiplicative identity (constant polynomial 1 in any GF(q)).
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical integer encoding of this element.
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field GF(p^r) with its reduction modulus.
///
/// Immutable after construction and freely shareable between threads; all
/// arithmetic methods are pure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    r: u32,
    q: u64,
    /// Modulus coefficients, little-endian, length r+1 with leading 1.
    /// Empty for prime fields, where arithmetic is plain mod p.
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Construct GF(p^r). Rejects composite `p`, `r = 0`, orders below 3,
    /// and orders above [`MAX_FIELD_ORDER`].
    pub fn new(p: u64, r: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..r {
            q = q.checked_mul(p).ok_or(Error::FieldTooLarge {
                order: u64::MAX,
                max: MAX_FIELD_ORDER,
            })?;
            if q > MAX_FIELD_ORDER {
                return Err(Error::FieldTooLarge {
                    order: q,
                    max: MAX_FIELD_ORDER,
                });
            }
        }
        if q < 3 {
            return Err(Error::InvalidParameter(
                "field order must be at least 3".into(),
            ));
        }
        let modulus = if r == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, r)
        };
        Ok(FieldSpec { p, r, q, modulus })
    }

    /// Construct the field of order `q`, decomposing it as a prime power.
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        let (p, r) = numtheory::prime_power_decompose(q)?;
        FieldSpec::new(p, r)
    }

    /// Characteristic p.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree r.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Field order q = p^r.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, little-endian with leading 1 (empty for r = 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Integer encoding of the modulus polynomial (0 for prime fields).
    pub fn modulus_encoding(&self) -> u64 {
        self.modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c)
    }

    /// Validate an integer encoding and wrap it as an element.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::ElementOutOfRange {
                value,
                order: self.q,
            })
        }
    }

    /// Coefficient vector of an element, little-endian, length r.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        let mut v = a.0;
        (0..self.r)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    fn decode(&self, a: u64, out: &mut [u64]) {
        let mut v = a;
        for slot in out.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    /// Field addition.
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.r == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let r = self.r as usize;
        let (mut ca, mut cb) = ([0u64; 24], [0u64; 24]);
        self.decode(a.0, &mut ca[..r]);
        self.decode(b.0, &mut cb[..r]);
        for i in 0..r {
            ca[i] = (ca[i] + cb[i]) % self.p;
        }
        FieldElement(self.encode(&ca[..r]))
    }

    /// Additive inverse.
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q);
        if self.r == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        if self.p == 2 {
            return a;
        }
        let r = self.r as usize;
        let mut ca = [0u64; 24];
        self.decode(a.0, &mut ca[..r]);
        for c in &mut ca[..r] {
            *c = (self.p - *c) % self.p;
        }
        FieldElement(self.encode(&ca[..r]))
    }

    /// Field subtraction `a - b`.
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Field multiplication, reducing modulo the field's modulus.
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.r == 1 {
            return FieldElement(a.0 * b.0 % self.p);
        }
        let r = self.r as usize;
        let (mut ca, mut cb) = ([0u64; 24], [0u64; 24]);
        self.decode(a.0, &mut ca[..r]);
        self.decode(b.0, &mut cb[..r]);
        let mut prod = [0u64; 48];
        for i in 0..r {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % self.p;
            }
        }
        // Reduce modulo the monic modulus: fold each high coefficient down.
        for i in (r..2 * r - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..r {
                let term = c * self.modulus[j] % self.p;
                prod[i - r + j] = (prod[i - r + j] + self.p - term) % self.p;
            }
        }
        FieldElement(self.encode(&prod[..r]))
    }

    /// Exponentiation by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via a^{q-2}; zero is rejected.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let group = self.q - 1;
        let mut ord = group;
        for p in factorize(group)?.primes() {
            while ord % p == 0 && self.pow(a, ord / p) == FieldElement::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Whether `a` generates the full multiplicative group.
    pub fn is_primitive(&self, a: FieldElement) -> bool {
        if a.0 == 0 {
            return false;
        }
        let group = self.q - 1;
        factorize(group)
            .expect("q - 1 >= 2")
            .primes()
            .all(|t| self.pow(a, group / t) != FieldElement::ONE)
    }

    /// The primitive element with the smallest integer encoding.
    pub fn smallest_primitive(&self) -> FieldElement {
        for v in 2..self.q {
            let a = FieldElement(v);
            if self.is_primitive(a) {
                return a;
            }
        }
        // q >= 3 guarantees a generator other than 1 exists.
        unreachable!("every finite field of order >= 3 has a primitive element")
    }

    /// All φ(q−1) primitive elements, in encoding order.
    ///
    /// Computed as {g₀^k : gcd(k, q−1) = 1} from the smallest primitive g₀,
    /// then sorted.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        let g0 = self.smallest_primitive();
        let group = self.q - 1;
        let mut out = Vec::new();
        let mut power = FieldElement::ONE;
        for k in 0..group {
            if k > 0 && numtheory::gcd(k, group) == 1 {
                out.push(power);
            }
            power = self.mul(power, g0);
        }
        // k = 1 is coprime to everything, so g0 itself is always included.
        out.sort_unstable();
        out
    }
}

/// Full exp/log tables for one primitive base of one field.
///
/// `exp[i] = base^i` for 0 ≤ i ≤ q−2, and `log` inverts it on the nonzero
/// elements. Immutable and shareable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogTable {
    p: u64,
    r: u32,
    modulus_encoding: u64,
    base: u64,
    exp: Vec<u64>,
    /// Indexed by element encoding; q−1 marks the (undefined) log of zero.
    log: Vec<u32>,
}

impl LogTable {
    /// Build the table by walking the powers of `base`; rejects a base
    /// that fails to generate the full multiplicative group.
    pub fn build(spec: &FieldSpec, base: FieldElement) -> Result<LogTable> {
        let q = spec.q();
        let group = (q - 1) as usize;
        let mut exp = vec![0u64; group];
        let mut log = vec![(q - 1) as u32; q as usize];
        let mut cur = FieldElement::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            if cur == FieldElement::ONE && i > 0 {
                return Err(Error::NotPrimitive(base.value()));
            }
            *slot = cur.value();
            log[cur.value() as usize] = i as u32;
            cur = spec.mul(cur, base);
        }
        if cur != FieldElement::ONE {
            // The walk must close after exactly q-1 steps.
            return Err(Error::NotPrimitive(base.value()));
        }
        Ok(LogTable {
            p: spec.p(),
            r: spec.r(),
            modulus_encoding: spec.modulus_encoding(),
            base: base.value(),
            exp,
            log,
        })
    }

    /// The base the table was built for.
    pub fn base(&self) -> FieldElement {
        FieldElement(self.base)
    }

    /// Order of the multiplicative group, q − 1.
    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    /// `base^k`, with `k` reduced modulo q − 1.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % self.group_order()) as usize])
    }

    /// Discrete log of a nonzero element; zero is rejected.
    pub fn log(&self, x: FieldElement) -> Result<u64> {
        if x.value() == 0 {
            return Err(Error::ZeroArgument);
        }
        let v = self.log[x.value() as usize];
        debug_assert!((v as u64) < self.group_order());
        Ok(v as u64)
    }

    /// Whether this table belongs to `spec` with the given base.
    fn matches(&self, spec: &FieldSpec, base: FieldElement) -> bool {
        self.p == spec.p()
            && self.r == spec.r()
            && self.modulus_encoding == spec.modulus_encoding()
            && self.base == base.value()
            && self.exp.len() as u64 == spec.q() - 1
            && self.log.len() as u64 == spec.q()
    }

    /// Canonical cache file name, keyed by (p, r, modulus, base).
    pub fn cache_file_name(spec: &FieldSpec, base: FieldElement) -> String {
        format!(
            "logtable-p{}-r{}-m{}-g{}.json",
            spec.p(),
            spec.r(),
            spec.modulus_encoding(),
            base.value()
        )
    }

    /// Load a previously cached table, or `None` if the file is missing,
    /// unreadable, or fails validation against `spec`/`base`.
    pub fn load_cached(spec: &FieldSpec, base: FieldElement, cache_dir: &Path) -> Option<LogTable> {
        let path = cache_dir.join(Self::cache_file_name(spec, base));
        let bytes = std::fs::read(path).ok()?;
        let table: LogTable = serde_json::from_slice(&bytes).ok()?;
        if !table.matches(spec, base) {
            return None;
        }
        // Spot-check the inverse-map identity before trusting the file.
        let checks = [0usize, 1, table.exp.len() / 2, table.exp.len() - 1];
        for i in checks {
            let e = table.exp[i];
            if e == 0 || e >= spec.q() || table.log[e as usize] as usize != i {
                return None;
            }
        }
        Some(table)
    }

    /// Load from cache or build and write through. A failed or corrupt
    /// cache entry is silently rebuilt; the write is atomic (temp file,
    /// then rename) so readers never observe a partial table.
    pub fn load_or_build(spec: &FieldSpec, base: FieldElement, cache_dir: &Path) -> Result<LogTable> {
        if let Some(table) = Self::load_cached(spec, base, cache_dir) {
            return Ok(table);
        }
        let table = Self::build(spec, base)?;
        let _ = table.write_cache(spec, base, cache_dir);
        Ok(table)
    }

    fn write_cache(&self, spec: &FieldSpec, base: FieldElement, cache_dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(cache_dir)?;
        let final_path = cache_dir.join(Self::cache_file_name(spec, base));
        let tmp_path: PathBuf = final_path.with_extension("json.tmp");
        let bytes = serde_json::to_vec(self).expect("log table serializes");
        std::fs::write(&tmp_path, bytes)?;
        std::fs::rename(&tmp_path, &final_path)
    }
}

/// Scalar exponentiation mod p.
fn powp(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn invp(a: u64, p: u64) -> u64 {
    powp(a, p - 2, p)
}

/// Polynomials over GF(p): little-endian coefficient vectors with no
/// trailing zeros (the zero polynomial is the empty vector).
fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let r = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for i in (r..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..r {
            let term = c * f[j] % p;
            prod[i - r + j] = (prod[i - r + j] + p - term) % p;
        }
    }
    prod.truncate(r);
    poly_trim(prod)
}

fn poly_pow_mod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = a.to_vec();
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        // a mod b by long division.
        let lead_inv = invp(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = *a.last().unwrap() * lead_inv % p;
            for (i, &bi) in b.iter().enumerate() {
                let term = factor * bi % p;
                a[shift + i] = (a[shift + i] + p - term) % p;
            }
            a = poly_trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn poly_eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p)
}

/// Irreducibility of a monic polynomial of degree ≥ 2 over GF(p).
///
/// Root absence settles degrees 2 and 3; degree ≥ 4 uses the Frobenius
/// test: x^{p^r} ≡ x (mod f) and gcd(x^{p^{r/t}} − x, f) = 1 for every
/// prime t | r.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    debug_assert!(r >= 2 && f[r] == 1);
    for x in 0..p {
        if poly_eval(f, x, p) == 0 {
            return false;
        }
    }
    if r <= 3 {
        return true;
    }
    let x_poly = vec![0u64, 1];
    // frob[i] = x^{p^{i+1}} mod f, built by iterated p-th powers.
    let mut frob = x_poly.clone();
    let mut frobs = Vec::with_capacity(r);
    for _ in 0..r {
        frob = poly_pow_mod(&frob, p, f, p);
        frobs.push(frob.clone());
    }
    if frobs[r - 1] != x_poly {
        return false;
    }
    for t in factorize(r as u64).expect("r >= 4").primes() {
        let i = r / t as usize;
        let mut diff = frobs[i - 1].clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(poly_trim(diff), f.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree r over GF(p),
/// comparing coefficient vectors from the constant term upward as base-p
/// integers.
fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    let r = r as usize;
    let count = p.pow(r as u32);
    let mut coeffs = vec![0u64; r + 1];
    coeffs[r] = 1;
    for m in 0..count {
        let mut v = m;
        for slot in coeffs.iter_mut().take(r) {
            *slot = v % p;
            v /= p;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::euler_phi;
    use proptest::prelude::*;

    fn gf(p: u64, r: u32) -> FieldSpec {
        FieldSpec::new(p, r).unwrap()
    }

    #[test]
    fn construction_validates_parameters() {
        assert_eq!(FieldSpec::new(4, 1), Err(Error::NotPrime(4)));
        assert!(FieldSpec::new(2, 0).is_err());
        assert!(FieldSpec::new(2, 1).is_err(), "GF(2) is below the q >= 3 floor");
        assert!(matches!(
            FieldSpec::new(2, 21),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldSpec::new(2, 20).is_ok());
        assert_eq!(FieldSpec::of_order(49).unwrap(), gf(7, 2));
        assert!(FieldSpec::of_order(12).is_err());
    }

    #[test]
    fn canonical_moduli() {
        // x² + x + 1 is the unique irreducible quadratic over GF(2).
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        // x² + 1 over GF(3): smallest constant-term-upward candidate.
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]);
        // x³ + x + 1 over GF(2).
        assert_eq!(gf(2, 3).modulus(), &[1, 1, 0, 1]);
        // Prime fields carry no modulus.
        assert_eq!(gf(5, 1).modulus(), &[] as &[u64]);
        // Every generated modulus is monic of the right degree.
        for (p, r) in [(2u64, 10u32), (3, 5), (5, 4), (7, 3), (11, 2), (31, 4)] {
            let spec = gf(p, r);
            assert_eq!(spec.modulus().len(), r as usize + 1);
            assert_eq!(*spec.modulus().last().unwrap(), 1);
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f4 = gf(2, 2);
        let w = f4.element(2).unwrap();
        // ω·ω = ω+1 under x² + x + 1.
        assert_eq!(f4.mul(w, w).value(), 3);

        let f5 = gf(5, 1);
        let two = f5.element(2).unwrap();
        assert_eq!(f5.inv(two).unwrap().value(), 3);
        assert_eq!(f5.inv(FieldElement::ZERO), Err(Error::ZeroInverse));

        for spec in [&f4, &f5, &gf(3, 2)] {
            for a in spec.elements() {
                assert_eq!(spec.add(a, spec.neg(a)), FieldElement::ZERO);
            }
        }
        assert!(f5.element(5).is_err());
    }

    fn check_axioms(spec: &FieldSpec, a: FieldElement, b: FieldElement, c: FieldElement) {
        assert_eq!(spec.add(a, b), spec.add(b, a));
        assert_eq!(spec.mul(a, b), spec.mul(b, a));
        assert_eq!(spec.add(spec.add(a, b), c), spec.add(a, spec.add(b, c)));
        assert_eq!(spec.mul(spec.mul(a, b), c), spec.mul(a, spec.mul(b, c)));
        assert_eq!(
            spec.mul(a, spec.add(b, c)),
            spec.add(spec.mul(a, b), spec.mul(a, c))
        );
        assert_eq!(spec.add(a, FieldElement::ZERO), a);
        assert_eq!(spec.mul(a, FieldElement::ONE), a);
        assert_eq!(spec.sub(a, b), spec.add(a, spec.neg(b)));
        if a != FieldElement::ZERO {
            let ai = spec.inv(a).unwrap();
            assert_eq!(spec.mul(a, ai), FieldElement::ONE);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16] {
            let spec = FieldSpec::of_order(q).unwrap();
            for a in spec.elements() {
                for b in spec.elements() {
                    for c in spec.elements() {
                        check_axioms(&spec, a, b, c);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms_random_larger_orders(
            which in 0usize..4,
            x in 0u64..343,
            y in 0u64..343,
            z in 0u64..343,
        ) {
            let spec = match which {
                0 => gf(7, 3),   // 343
                1 => gf(3, 5),   // 243
                2 => gf(2, 8),   // 256
                _ => gf(181, 1), // large prime field
            };
            let q = spec.q();
            let a = spec.element(x % q).unwrap();
            let b = spec.element(y % q).unwrap();
            let c = spec.element(z % q).unwrap();
            check_axioms(&spec, a, b, c);
        }
    }

    #[test]
    fn primitive_element_examples() {
        let vals = |spec: &FieldSpec| {
            spec.primitive_elements()
                .iter()
                .map(|e| e.value())
                .collect::<Vec<_>>()
        };
        assert_eq!(vals(&gf(5, 1)), vec![2, 3]);
        assert_eq!(vals(&gf(7, 1)), vec![3, 5]);
        assert_eq!(vals(&gf(2, 2)), vec![2, 3]);
        assert_eq!(vals(&gf(3, 2)), vec![4, 5, 7, 8]);
        assert_eq!(gf(5, 1).smallest_primitive().value(), 2);
    }

    #[test]
    fn primitive_counts_and_orders_match_phi() {
        for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 128] {
            let spec = FieldSpec::of_order(q).unwrap();
            let prims = spec.primitive_elements();
            assert_eq!(prims.len() as u64, euler_phi(q - 1).unwrap(), "q = {q}");
            for g in prims {
                assert_eq!(spec.order(g).unwrap(), q - 1, "q = {q}, g = {g}");
            }
            // Generated subgroup really has q - 1 distinct members.
            let g = spec.smallest_primitive();
            let mut seen = vec![false; q as usize];
            let mut cur = FieldElement::ONE;
            for _ in 0..q - 1 {
                assert!(!seen[cur.value() as usize]);
                seen[cur.value() as usize] = true;
                cur = spec.mul(cur, g);
            }
            assert_eq!(cur, FieldElement::ONE);
        }
    }

    #[test]
    fn log_table_examples() {
        let f5 = gf(5, 1);
        let t = LogTable::build(&f5, f5.element(2).unwrap()).unwrap();
        let exps: Vec<u64> = (0..4).map(|k| t.exp(k).value()).collect();
        assert_eq!(exps, vec![1, 2, 4, 3]);

        let f4 = gf(2, 2);
        let t4 = LogTable::build(&f4, f4.element(2).unwrap()).unwrap();
        let exps4: Vec<u64> = (0..3).map(|k| t4.exp(k).value()).collect();
        assert_eq!(exps4, vec![1, 2, 3]);

        for q in [9u64, 27, 64, 121] {
            let spec = FieldSpec::of_order(q).unwrap();
            let table = LogTable::build(&spec, spec.smallest_primitive()).unwrap();
            for k in 0..q - 1 {
                assert_eq!(table.log(table.exp(k)).unwrap(), k);
            }
            assert!(table.log(FieldElement::ZERO).is_err());
        }

        // Non-primitive bases are rejected: 4 has order 2 mod 5 ... and 1
        // has order 1 everywhere.
        assert_eq!(
            LogTable::build(&f5, f5.element(4).unwrap()),
            Err(Error::NotPrimitive(4))
        );
        assert!(LogTable::build(&f5, FieldElement::ONE).is_err());
    }

    #[test]
    fn log_table_cache_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let spec = gf(3, 3);
        let base = spec.smallest_primitive();

        assert!(LogTable::load_cached(&spec, base, dir.path()).is_none());
        let built = LogTable::load_or_build(&spec, base, dir.path()).unwrap();
        let cached = LogTable::load_cached(&spec, base, dir.path()).unwrap();
        assert_eq!(built, cached);

        // A table for one base must not satisfy a request for another.
        let other = spec
            .primitive_elements()
            .into_iter()
            .find(|&g| g != base)
            .unwrap();
        assert!(LogTable::load_cached(&spec, other, dir.path()).is_none());

        // Corrupt cache entries are ignored and rebuilt.
        let path = dir.path().join(LogTable::cache_file_name(&spec, base));
        std::fs::write(&path, b"{definitely not a table").unwrap();
        assert!(LogTable::load_cached(&spec, base, dir.path()).is_none());
        let rebuilt = LogTable::load_or_build(&spec, base, dir.path()).unwrap();
        assert_eq!(rebuilt, built);
        let reread = LogTable::load_cached(&spec, base, dir.path()).unwrap();
        assert_eq!(reread, built);
    }

    #[test]
    fn moduli_are_irreducible_by_definition() {
        // Brute-force oracle: no factorization into two smaller monic
        // polynomials, checked by trial division over all lower degrees.
        for (p, r) in [(2u64, 4u32), (2, 6), (3, 3), (5, 2), (7, 2)] {
            let spec = gf(p, r);
            let q = spec.q();
            let f = spec.modulus().to_vec();
            // Divisor candidates: monic of degree 1..r, encoded by integer.
            for d in 1..r {
                let dn = p.pow(d);
                for m in 0..dn {
                    let mut g = vec![0u64; d as usize + 1];
                    let mut v = m;
                    for slot in g.iter_mut().take(d as usize) {
                        *slot = v % p;
                        v /= p;
                    }
                    g[d as usize] = 1;
                    // f mod g must be nonzero.
                    let rem = poly_gcd(f.clone(), g.clone(), p);
                    let divides = {
                        // g divides f iff long division leaves zero; reuse
                        // gcd: gcd(f, g) = g (up to scalar) in that case.
                        rem.len() == g.len()
                    };
                    assert!(!divides, "GF({q}) modulus divisible by degree-{d} poly");
                }
            }
        }
    }
}
