//! Exact cross-correlation of Costas permutations.
//!
//! For permutations f1, f2 of {1,…,n} and shifts (u, v), the
//! cross-correlation counts solutions of f1(x) + v = f2(x + u) with x
//! ranging over the overlap {max(1, 1−u), …, min(n, n−u)}. Three levels of
//! machinery are provided:
//!
//! * [`cross_correlation_at`]: the definitional per-(u,v) count. Slow and
//!   obviously correct; it is the oracle the fast paths are tested against.
//! * [`cross_correlation_table`]: all (2n−1)² values at once, built per
//!   shift u by histogramming the differences f2(x+u) − f1(x), O(n) per u.
//! * [`family_max`]: the family-wide maximum over all distinct pairs,
//!   scanning unordered pairs in parallel with a stamped histogram buffer
//!   that never needs clearing between shifts.
//!
//! The identity C_{f1,f2}(u,v) = C_{f2,f1}(−u,−v) (substitute y = x + u in
//! the defining equation) means unordered pairs suffice for family maxima.

use crate::costas::CostasPermutation;
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Full (2n−1)×(2n−1) table of cross-correlation values for one ordered
/// pair, indexed by shifts 1−n ≤ u, v ≤ n−1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationTable {
    n: usize,
    /// Row-major grid; entry (u, v) lives at (u+n−1)·(2n−1) + (v+n−1).
    grid: Vec<u32>,
    /// Provenance descriptors of (f1, f2).
    pair: (String, String),
}

impl CorrelationTable {
    /// Domain size n of the correlated permutations.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Provenance descriptors of the pair (f1, f2).
    pub fn pair(&self) -> (&str, &str) {
        (&self.pair.0, &self.pair.1)
    }

    /// The correlation value at shifts (u, v).
    pub fn get(&self, u: i64, v: i64) -> Result<u32> {
        let w = self.n as i64 - 1;
        check_shift("u", u, w)?;
        check_shift("v", v, w)?;
        let side = 2 * self.n - 1;
        Ok(self.grid[(u + w) as usize * side + (v + w) as usize])
    }

    /// Sum of one u-row; always n − |u|.
    pub fn row_sum(&self, u: i64) -> Result<u64> {
        let w = self.n as i64 - 1;
        check_shift("u", u, w)?;
        let side = 2 * self.n - 1;
        let start = (u + w) as usize * side;
        Ok(self.grid[start..start + side].iter().map(|&c| c as u64).sum())
    }

    /// Sum of all entries; always n².
    pub fn total_mass(&self) -> u64 {
        self.grid.iter().map(|&c| c as u64).sum()
    }

    /// Largest entry and its lexicographically least (u, v) witness.
    pub fn max_entry(&self) -> (u32, i64, i64) {
        let side = 2 * self.n - 1;
        let w = self.n as i64 - 1;
        let mut best = (0u32, -w, -w);
        for (idx, &c) in self.grid.iter().enumerate() {
            if c > best.0 {
                best = (c, (idx / side) as i64 - w, (idx % side) as i64 - w);
            }
        }
        best
    }

    /// CSV rendering: a header row of v values, then one row per u with
    /// the shift u in the first column.
    pub fn to_csv(&self) -> String {
        let w = self.n as i64 - 1;
        let mut out = String::new();
        out.push_str("u\\v");
        for v in -w..=w {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
        for u in -w..=w {
            out.push_str(&u.to_string());
            for v in -w..=w {
                out.push(',');
                let val = self.get(u, v).expect("in-range by construction");
                out.push_str(&val.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Result of a family-wide maximal cross-correlation scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyScanResult {
    /// Family descriptor, e.g. `W_13`, `G_59(g2=2)`, `L_59`.
    pub family: String,
    /// Number of members scanned (including any duplicate sequences).
    pub size: usize,
    /// The maximal cross-correlation over all distinct pairs and shifts.
    pub max: u32,
    /// Lexicographically least witness attaining `max`.
    pub witness: Witness,
}

/// Where a family maximum is attained: the pair (by provenance) and the
/// shifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub f1: String,
    pub f2: String,
    pub u: i64,
    pub v: i64,
}

fn check_shift(name: &'static str, value: i64, w: i64) -> Result<()> {
    if value < -w || value > w {
        return Err(Error::ArgumentOutOfRange {
            name,
            value,
            min: -w,
            max: w,
        });
    }
    Ok(())
}

fn check_same_n(f1: &CostasPermutation, f2: &CostasPermutation) -> Result<usize> {
    if f1.n() != f2.n() {
        return Err(Error::LengthMismatch(f1.n(), f2.n()));
    }
    Ok(f1.n())
}

/// The definitional count: solutions x of f1(x) + v = f2(x + u) with
/// max(1, 1−u) ≤ x ≤ min(n, n−u).
///
/// Deliberately naive (one pass over the overlap per call); this is the
/// oracle against which the histogram engine is verified.
pub fn cross_correlation_at(
    f1: &CostasPermutation,
    f2: &CostasPermutation,
    u: i64,
    v: i64,
) -> Result<u32> {
    let n = check_same_n(f1, f2)? as i64;
    check_shift("u", u, n - 1)?;
    check_shift("v", v, n - 1)?;
    let lo = 1.max(1 - u);
    let hi = n.min(n - u);
    let mut count = 0;
    for x in lo..=hi {
        if f1.at(x as usize) as i64 + v == f2.at((x + u) as usize) as i64 {
            count += 1;
        }
    }
    Ok(count)
}

/// All correlation values of an ordered pair, computed per shift u by
/// histogramming the differences f2(x+u) − f1(x) over the overlap.
pub fn cross_correlation_table(
    f1: &CostasPermutation,
    f2: &CostasPermutation,
) -> Result<CorrelationTable> {
    let n = check_same_n(f1, f2)?;
    let side = 2 * n - 1;
    let mut grid = vec![0u32; side * side];
    let a = f1.values();
    let b = f2.values();
    for (row, chunk) in grid.chunks_exact_mut(side).enumerate() {
        let u = row as i64 - (n as i64 - 1);
        // Overlapping x (0-based): a[x] pairs with b[x + u].
        let (xa, xb) = if u >= 0 {
            (&a[..n - u as usize], &b[u as usize..])
        } else {
            (&a[(-u) as usize..], &b[..n - (-u) as usize])
        };
        for (&av, &bv) in xa.iter().zip(xb) {
            // v = f2(x+u) − f1(x), shifted by n−1 into 0..2n−1.
            chunk[(bv as usize + n - 1) - av as usize] += 1;
        }
    }
    Ok(CorrelationTable {
        n,
        grid,
        pair: (f1.provenance().to_string(), f2.provenance().to_string()),
    })
}

/// Maximum correlation of one pair together with its least witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMax {
    pub max: u32,
    pub u: i64,
    pub v: i64,
}

/// Maximum of the full table over all shifts, (0,0) included, for two
/// distinct permutations. The witness is the least (u, v) attaining the
/// maximum, ordered by u then v.
pub fn pair_max(f1: &CostasPermutation, f2: &CostasPermutation) -> Result<PairMax> {
    check_same_n(f1, f2)?;
    if f1.values() == f2.values() {
        return Err(Error::IdenticalPermutations);
    }
    let table = cross_correlation_table(f1, f2)?;
    let (max, u, v) = table.max_entry();
    Ok(PairMax { max, u, v })
}

/// Reusable per-thread state for the family scan: a stamped difference
/// histogram.
///
/// Each cell packs (stamp, count); a cell whose stamp is stale counts as
/// zero, so rows for successive shifts and pairs reuse the buffer without
/// any clearing. Counts fit in 20 bits (n < 2^20) and the stamp has 44
/// bits, far more rows than any scan at the supported field sizes can
/// consume.
struct ScanBuffer {
    cells: Vec<u64>,
    stamp: u64,
}

const COUNT_BITS: u32 = 20;
const COUNT_MASK: u64 = (1 << COUNT_BITS) - 1;

impl ScanBuffer {
    fn new(n: usize) -> ScanBuffer {
        ScanBuffer {
            cells: vec![0u64; 2 * n - 1],
            stamp: 0,
        }
    }

    /// Max correlation over all (u, v) for the ordered pair (a, b); by
    /// table symmetry this equals the unordered-pair maximum.
    fn max_correlation(&mut self, a: &[u32], b: &[u32]) -> u32 {
        let n = a.len();
        let mut best = 0u64;
        let mut row = |xa: &[u32], xb: &[u32], buf: &mut ScanBuffer| {
            buf.stamp += 1;
            let tag = buf.stamp << COUNT_BITS;
            for (&av, &bv) in xa.iter().zip(xb) {
                let d = (bv as usize + n - 1) - av as usize;
                let cell = buf.cells[d];
                let count = if cell & !COUNT_MASK == tag {
                    (cell & COUNT_MASK) + 1
                } else {
                    1
                };
                buf.cells[d] = tag | count;
                if count > best {
                    best = count;
                }
            }
        };
        for u in (1..n).rev() {
            row(&a[u..], &b[..n - u], self);
        }
        for u in 0..n {
            row(&a[..n - u], &b[u..], self);
        }
        best as u32
    }
}

/// Derive the family descriptor from member provenances.
fn family_descriptor(family: &[CostasPermutation]) -> String {
    use crate::costas::Provenance::*;
    let first = family[0].provenance();
    match first {
        Welch { p, .. } => {
            if family
                .iter()
                .all(|f| matches!(f.provenance(), Welch { p: fp, shift: 0, .. } if fp == p))
            {
                return format!("W_{p}");
            }
        }
        Golomb { q, g2, .. } => {
            let same_q = family
                .iter()
                .all(|f| matches!(f.provenance(), Golomb { q: fq, .. } if fq == q));
            if same_q {
                let same_g2 = family
                    .iter()
                    .all(|f| matches!(f.provenance(), Golomb { g2: fg2, .. } if fg2 == g2));
                return if same_g2 {
                    format!("G_{q}(g2={g2})")
                } else {
                    format!("L_{q}")
                };
            }
        }
    }
    format!("family(n={})", family[0].n())
}

/// Canonical ordering key so scan results do not depend on the order the
/// caller assembled the family in.
fn provenance_key(f: &CostasPermutation) -> (u8, u64, u64, u64) {
    use crate::costas::Provenance::*;
    match f.provenance() {
        Welch { p, g, shift } => (0, p, g, shift),
        Golomb { q, g1, g2 } => (1, q, g1, g2),
    }
}

/// Family-wide maximal cross-correlation over all pairs that are distinct
/// as sequences, scanned in parallel.
///
/// Members are ranked by provenance, and ties in the maximum are broken
/// toward the least pair in that ranking, then the least (u, v); the
/// result is therefore independent of both input order and worker count.
/// Pairs whose sequences coincide (which happens in full Golomb families,
/// e.g. L_4) are skipped, since the correlation of a permutation with
/// itself is trivially n; at least two distinct sequences are required.
pub fn family_max(family: &[CostasPermutation]) -> Result<FamilyScanResult> {
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by_key(|&i| provenance_key(&family[i]));
    let members: Vec<&CostasPermutation> = order.iter().map(|&i| &family[i]).collect();

    {
        let mut distinct: Vec<&[u32]> = members.iter().map(|f| f.values()).collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::FamilyTooSmall(distinct.len()));
        }
    }
    let n = members[0].n();
    for f in &members {
        if f.n() != n {
            return Err(Error::LengthMismatch(n, f.n()));
        }
    }

    // Best = (max, i, j) with the smallest (i, j) among maximal pairs.
    let identity = (0u32, usize::MAX, usize::MAX);
    let better = |a: (u32, usize, usize), b: (u32, usize, usize)| {
        if a.0 != b.0 {
            if a.0 > b.0 {
                a
            } else {
                b
            }
        } else if (a.1, a.2) <= (b.1, b.2) {
            a
        } else {
            b
        }
    };
    let (max, bi, bj) = (0..members.len().saturating_sub(1))
        .into_par_iter()
        .map_init(
            || ScanBuffer::new(n),
            |buf, i| {
                let a = members[i].values();
                let mut local = identity;
                for (j, fj) in members.iter().enumerate().skip(i + 1) {
                    let b = fj.values();
                    if a == b {
                        continue;
                    }
                    let m = buf.max_correlation(a, b);
                    if m > local.0 {
                        local = (m, i, j);
                    }
                }
                local
            },
        )
        .reduce(|| identity, better);
    debug_assert!(max >= 1);

    // Recover the least (u, v) for the winning pair via the table engine.
    let pm = pair_max(members[bi], members[bj])?;
    debug_assert_eq!(pm.max, max);
    Ok(FamilyScanResult {
        family: family_descriptor(family),
        size: family.len(),
        max,
        witness: Witness {
            f1: members[bi].provenance().to_string(),
            f2: members[bj].provenance().to_string(),
            u: pm.u,
            v: pm.v,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costas::{golomb_full_family, welch, welch_family};
    use crate::ffield::FieldSpec;

    fn w5_pair() -> (CostasPermutation, CostasPermutation) {
        (welch(5, 2, 0).unwrap(), welch(5, 3, 0).unwrap())
    }

    #[test]
    fn definitional_count_examples() {
        let (f1, f2) = w5_pair();
        // π_2 = (2,4,3,1), π_3 = (3,4,2,1): f1(x) = f2(x) at x = 2 and 4.
        assert_eq!(cross_correlation_at(&f1, &f2, 0, 0).unwrap(), 2);
        assert_eq!(cross_correlation_at(&f1, &f1, 0, 0).unwrap(), 4);
        // Row sums partition the overlap.
        for u in -3i64..=3 {
            let sum: u32 = (-3i64..=3)
                .map(|v| cross_correlation_at(&f1, &f2, u, v).unwrap())
                .sum();
            assert_eq!(sum as i64, 4 - u.abs());
        }
        assert!(cross_correlation_at(&f1, &f2, 4, 0).is_err());
        assert!(cross_correlation_at(&f1, &f2, 0, -4).is_err());
        let f7 = welch(7, 3, 0).unwrap();
        assert_eq!(
            cross_correlation_at(&f1, &f7, 0, 0),
            Err(Error::LengthMismatch(4, 6))
        );
    }

    #[test]
    fn table_matches_definitional_oracle() {
        let (f1, f2) = w5_pair();
        let table = cross_correlation_table(&f1, &f2).unwrap();
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                assert_eq!(
                    table.get(u, v).unwrap(),
                    cross_correlation_at(&f1, &f2, u, v).unwrap(),
                    "(u,v)=({u},{v})"
                );
            }
        }
        assert_eq!(table.total_mass(), 16);
        for u in -3i64..=3 {
            assert_eq!(table.row_sum(u).unwrap(), (4 - u.abs()) as u64);
        }
    }

    #[test]
    fn autocorrelation_of_costas_is_flat() {
        let f = welch(13, 2, 0).unwrap();
        let table = cross_correlation_table(&f, &f).unwrap();
        assert_eq!(table.get(0, 0).unwrap(), 12);
        for u in -11i64..=11 {
            for v in -11i64..=11 {
                if (u, v) != (0, 0) {
                    assert!(table.get(u, v).unwrap() <= 1);
                }
            }
        }
    }

    #[test]
    fn table_symmetry_under_role_swap() {
        let (f1, f2) = w5_pair();
        let ab = cross_correlation_table(&f1, &f2).unwrap();
        let ba = cross_correlation_table(&f2, &f1).unwrap();
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                assert_eq!(ab.get(u, v).unwrap(), ba.get(-u, -v).unwrap());
            }
        }
    }

    #[test]
    fn pair_max_examples() {
        let (f1, f2) = w5_pair();
        let pm = pair_max(&f1, &f2).unwrap();
        assert_eq!(pm.max, 2);
        assert_eq!(
            cross_correlation_at(&f1, &f2, pm.u, pm.v).unwrap(),
            pm.max
        );
        // No (u, v) before the witness attains the max.
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                if (u, v) < (pm.u, pm.v) {
                    assert!(cross_correlation_at(&f1, &f2, u, v).unwrap() < pm.max);
                }
            }
        }
        assert_eq!(pair_max(&f2, &f1).unwrap().max, pm.max);
        assert_eq!(pair_max(&f1, &f1), Err(Error::IdenticalPermutations));
    }

    #[test]
    fn scan_buffer_agrees_with_tables() {
        let fam = welch_family(13).unwrap();
        let mut buf = ScanBuffer::new(fam[0].n());
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                let fast = buf.max_correlation(fam[i].values(), fam[j].values());
                let slow = pair_max(&fam[i], &fam[j]).unwrap().max;
                assert_eq!(fast, slow, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn family_scan_w5() {
        let result = family_max(&welch_family(5).unwrap()).unwrap();
        assert_eq!(result.family, "W_5");
        assert_eq!(result.size, 2);
        assert_eq!(result.max, 2);
        assert_eq!(result.witness.f1, "welch p=5 g=2 shift=0");
        assert_eq!(result.witness.f2, "welch p=5 g=3 shift=0");
        // f1(x) + 1 = f2(x-1) at x = 3 and x = 4, and no earlier (u, v)
        // reaches 2.
        assert_eq!((result.witness.u, result.witness.v), (-1, 1));
    }

    #[test]
    fn family_scan_is_order_invariant() {
        let mut fam = welch_family(13).unwrap();
        let forward = family_max(&fam).unwrap();
        fam.reverse();
        fam.swap(0, 2);
        let shuffled = family_max(&fam).unwrap();
        assert_eq!(forward, shuffled);
    }

    #[test]
    fn family_scan_skips_duplicate_sequences() {
        // L_4 contains two distinct sequences, each constructed twice; the
        // scan must compare distinct sequences only.
        let f4 = FieldSpec::new(2, 2).unwrap();
        let l4 = golomb_full_family(&f4).unwrap();
        let result = family_max(&l4).unwrap();
        assert_eq!(result.family, "L_4");
        assert_eq!(result.size, 4);
        assert_eq!(result.max, 1);

        // A family that is all copies of one sequence cannot be scanned.
        let copies = vec![l4[0].clone(), l4[3].clone()];
        assert_eq!(family_max(&copies), Err(Error::FamilyTooSmall(1)));
        assert!(family_max(&l4[..1]).is_err());
    }

    #[test]
    fn family_result_json_round_trip() {
        let result = family_max(&welch_family(7).unwrap()).unwrap();
        let json = serde_json::to_string(&result).unwrap();
        let back: FamilyScanResult = serde_json::from_str(&json).unwrap();
        assert_eq!(result, back);
        // Schema sanity: the documented field names are present.
        for key in ["family", "size", "max", "witness", "\"f1\"", "\"u\""] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
    }

    #[test]
    fn csv_has_header_and_one_row_per_shift() {
        let (f1, f2) = w5_pair();
        let table = cross_correlation_table(&f1, &f2).unwrap();
        let csv = table.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[0], "u\\v,-3,-2,-1,0,1,2,3");
        assert!(lines[4].starts_with("0,"));
        // Row entries reproduce the table.
        let row0: Vec<u32> = lines[4]
            .split(',')
            .skip(1)
            .map(|t| t.parse().unwrap())
            .collect();
        let expect: Vec<u32> = (-3i64..=3)
            .map(|v| table.get(0, v).unwrap())
            .collect();
        assert_eq!(row0, expect);
    }
}
