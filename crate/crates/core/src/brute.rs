//! Exhaustive oracles: scan every unicellular hypermonopole of a given
//! size and tally or list them.
//!
//! With the vertex rotation fixed to `(0, 1, .., m-1)`, unicellular
//! hypermonopoles on `m` points correspond exactly to the `(m-1)!`
//! circular face rotations, written as words `[0, a_1, .., a_{m-1}]`.
//! The scan walks these words in lexicographic order, reads off the
//! hyperedge count, and optionally restricts to reduced maps. Reduced
//! means the face has no position taken to its cyclic successor, which
//! allows pruning whole prefixes.
//!
//! Counting scans split the word space by the first letter into slices
//! that are processed independently and summed, so the result does not
//! depend on the number of threads.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::exact;
use crate::hypermap::Hypermap;
use crate::perm::Permutation;

/// Default ceiling on the point count of exhaustive scans.
/// `m = 12` means 11! (about 4.0e7) faces, minutes of work at worst.
pub const DEFAULT_SCAN_LIMIT: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScanError {
    #[error("scan at m = {m} exceeds the safety limit {limit} ({m} points means ({m}-1)! faces); raise the limit or force to override")]
    AboveLimit { m: usize, limit: usize },
    #[error("genus {g} needs scans up to m = {needed} points, beyond the safety limit {limit}; raise the limit or force to override")]
    GenusAboveLimit {
        g: usize,
        needed: usize,
        limit: usize,
    },
}

/// Knobs for exhaustive scans.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Refuse scans with more points than this unless `force` is set.
    pub limit: usize,
    /// Run even above the limit.
    pub force: bool,
    /// Worker threads for counting scans; 0 uses the process-wide
    /// default pool, 1 forces a fully serial scan.
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            limit: DEFAULT_SCAN_LIMIT,
            force: false,
            threads: 0,
        }
    }
}

impl ScanOptions {
    pub fn serial() -> Self {
        ScanOptions {
            threads: 1,
            ..Self::default()
        }
    }

    fn admit(&self, m: usize) -> Result<(), ScanError> {
        if m > self.limit && !self.force {
            return Err(ScanError::AboveLimit {
                m,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Tally of scanned maps by hyperedge count `k`, zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountByK {
    counts: BTreeMap<usize, BigUint>,
    total: BigUint,
}

impl CountByK {
    fn from_raw(raw: &[u64]) -> Self {
        let counts: BTreeMap<usize, BigUint> = raw
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(k, &c)| (k, BigUint::from(c)))
            .collect();
        let total = counts.values().sum();
        CountByK { counts, total }
    }

    /// Count at `k`, zero if absent.
    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    pub fn counts(&self) -> &BTreeMap<usize, BigUint> {
        &self.counts
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Depth-first generator of face words `[0, a_1, .., a_{m-1}]` in
/// lexicographic order, optionally restricted to a fixed first letter
/// (for slicing) and optionally pruned to reduced faces.
struct FaceDfs {
    m: usize,
    pruned: bool,
    first: Option<usize>,
    word: Vec<usize>,
    used: Vec<bool>,
    try_from: Vec<usize>,
    pos: usize,
    complete: bool,
    finished: bool,
}

impl FaceDfs {
    fn new(m: usize, first: Option<usize>, pruned: bool) -> Self {
        assert!(m >= 1);
        let mut try_from = vec![1; m.max(2)];
        if let Some(f) = first {
            try_from[1] = f;
        }
        FaceDfs {
            m,
            pruned,
            first,
            word: vec![0; m],
            used: {
                let mut u = vec![false; m];
                u[0] = true;
                u
            },
            try_from,
            pos: 1,
            complete: false,
            finished: false,
        }
    }

    /// Advances to the next complete word; the word is then in
    /// `self.word`. Returns false when the space is exhausted.
    fn advance(&mut self) -> bool {
        let m = self.m;
        if self.finished {
            return false;
        }
        if m == 1 {
            self.finished = true;
            // the single 1-point face takes 0 to its successor 0, so it
            // is never reduced
            return !self.pruned;
        }
        if self.complete {
            self.complete = false;
            self.pos -= 1;
            self.used[self.word[self.pos]] = false;
            self.try_from[self.pos] = self.word[self.pos] + 1;
        }
        loop {
            if self.pos == m {
                self.complete = true;
                return true;
            }
            let prev = self.word[self.pos - 1];
            let hi = match (self.pos, self.first) {
                (1, Some(f)) => f + 1,
                _ => m,
            };
            let mut v = self.try_from[self.pos];
            let mut placed = false;
            while v < hi {
                let adjacency = v == (prev + 1) % m || (self.pos == m - 1 && v == m - 1);
                if !self.used[v] && !(self.pruned && adjacency) {
                    placed = true;
                    break;
                }
                v += 1;
            }
            if placed {
                self.word[self.pos] = v;
                self.used[v] = true;
                self.pos += 1;
                if self.pos < m {
                    self.try_from[self.pos] = 1;
                }
            } else {
                if self.pos == 1 {
                    self.finished = true;
                    return false;
                }
                self.pos -= 1;
                self.used[self.word[self.pos]] = false;
                self.try_from[self.pos] = self.word[self.pos] + 1;
            }
        }
    }

    fn word(&self) -> &[usize] {
        &self.word
    }
}

/// Reads the hyperedge count of a face word without building
/// permutations, reusing scratch buffers across calls.
struct EdgeCounter {
    alpha: Vec<usize>,
    stamp: Vec<u64>,
    generation: u64,
}

impl EdgeCounter {
    fn new(m: usize) -> Self {
        EdgeCounter {
            alpha: vec![0; m],
            stamp: vec![0; m],
            generation: 0,
        }
    }

    /// `z(alpha)` for the face word: `alpha` takes each word letter's
    /// successor in the word to the letter's successor modulo m.
    fn k_of(&mut self, word: &[usize]) -> usize {
        let m = word.len();
        for j in 0..m {
            self.alpha[word[(j + 1) % m]] = (word[j] + 1) % m;
        }
        self.generation += 1;
        let gen = self.generation;
        let mut k = 0;
        for start in 0..m {
            if self.stamp[start] == gen {
                continue;
            }
            k += 1;
            let mut x = start;
            while self.stamp[x] != gen {
                self.stamp[x] = gen;
                x = self.alpha[x];
            }
        }
        k
    }
}

/// Does the face word correspond to a reduced map, i.e. is no letter
/// followed cyclically by its successor modulo m?
fn word_is_reduced(word: &[usize]) -> bool {
    let m = word.len();
    (0..m).all(|j| word[(j + 1) % m] != (word[j] + 1) % m)
}

fn scan_slice(m: usize, firsts: &[Option<usize>], pruned: bool) -> Vec<u64> {
    let mut counts = vec![0u64; m + 1];
    let mut counter = EdgeCounter::new(m);
    for &first in firsts {
        let mut dfs = FaceDfs::new(m, first, pruned);
        while dfs.advance() {
            counts[counter.k_of(dfs.word())] += 1;
        }
    }
    counts
}

fn merge_counts(mut acc: Vec<u64>, other: Vec<u64>) -> Vec<u64> {
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b;
    }
    acc
}

/// The branch seeds of the scan space: one per admissible first letter.
fn branches(m: usize) -> Vec<Option<usize>> {
    if m == 1 {
        vec![None]
    } else {
        (1..m).map(Some).collect()
    }
}

/// Round-robin grouping of branches into `parts` slices. Any grouping
/// yields the same merged counts; round-robin balances work.
fn slices(m: usize, parts: usize) -> Vec<Vec<Option<usize>>> {
    let parts = parts.max(1);
    let mut slices = vec![Vec::new(); parts];
    for (i, b) in branches(m).into_iter().enumerate() {
        slices[i % parts].push(b);
    }
    slices
}

fn scan_counts(m: usize, pruned: bool, opts: &ScanOptions) -> Vec<u64> {
    if opts.threads == 1 {
        return scan_slice(m, &branches(m), pruned);
    }
    let run = || {
        use rayon::prelude::*;
        slices(m, branches(m).len())
            .par_iter()
            .map(|slice| scan_slice(m, slice, pruned))
            .reduce(|| vec![0u64; m + 1], merge_counts)
    };
    if opts.threads == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("building a scan thread pool");
        pool.install(run)
    }
}

/// Counts all unicellular hypermonopoles on `m` points by hyperedge
/// count. The total is `(m-1)!`.
pub fn count_by_cycles(m: usize, opts: &ScanOptions) -> Result<CountByK, ScanError> {
    opts.admit(m)?;
    Ok(CountByK::from_raw(&scan_counts(m, false, opts)))
}

/// Counts reduced unicellular hypermonopoles on `m` points by hyperedge
/// count, using the pruned scan.
pub fn count_reduced(m: usize, opts: &ScanOptions) -> Result<CountByK, ScanError> {
    opts.admit(m)?;
    Ok(CountByK::from_raw(&scan_counts(m, true, opts)))
}

/// Reference implementation of [`count_reduced`] that scans every face
/// and filters afterwards, with no prefix pruning. Exists to validate
/// the pruned scan; serial.
pub fn count_reduced_unpruned(m: usize, opts: &ScanOptions) -> Result<CountByK, ScanError> {
    opts.admit(m)?;
    let mut counts = vec![0u64; m + 1];
    let mut counter = EdgeCounter::new(m);
    let mut dfs = FaceDfs::new(m, None, false);
    while dfs.advance() {
        if word_is_reduced(dfs.word()) {
            counts[counter.k_of(dfs.word())] += 1;
        }
    }
    Ok(CountByK::from_raw(&counts))
}

/// Counting scan split into exactly `parts` slices, merged in slice
/// order. Exposed so the slice decomposition itself can be validated
/// against the serial scan.
pub fn count_by_cycles_partitioned(
    m: usize,
    parts: usize,
    opts: &ScanOptions,
) -> Result<CountByK, ScanError> {
    opts.admit(m)?;
    let merged = slices(m, parts)
        .iter()
        .map(|slice| scan_slice(m, slice, false))
        .fold(vec![0u64; m + 1], merge_counts);
    Ok(CountByK::from_raw(&merged))
}

/// Lazy stream of all reduced unicellular hypermonopoles with `m` points
/// and `k` hyperedges, in lexicographic face-word order.
pub struct ReducedMaps {
    dfs: FaceDfs,
    counter: EdgeCounter,
    k: usize,
}

impl ReducedMaps {
    fn new(m: usize, k: usize) -> Self {
        ReducedMaps {
            dfs: FaceDfs::new(m, None, true),
            counter: EdgeCounter::new(m),
            k,
        }
    }
}

impl Iterator for ReducedMaps {
    type Item = Hypermap;

    fn next(&mut self) -> Option<Hypermap> {
        while self.dfs.advance() {
            if self.counter.k_of(self.dfs.word()) != self.k {
                continue;
            }
            let pi = Permutation::from_circular_word(self.dfs.word())
                .expect("scan words are circular by construction");
            let h =
                Hypermap::from_standard_face(pi).expect("a circular face always yields a hypermap");
            debug_assert!(h.class().is_reduced);
            return Some(h);
        }
        None
    }
}

/// Streams every reduced unicellular hypermonopole with `m` points and
/// `k` hyperedges, each exactly once, deterministically ordered.
pub fn enumerate_reduced(m: usize, k: usize, opts: &ScanOptions) -> Result<ReducedMaps, ScanError> {
    opts.admit(m)?;
    Ok(ReducedMaps::new(m, k))
}

/// Lazy stream of every circular face rotation on `m` points, in
/// lexicographic word order.
pub struct CircularFaces {
    dfs: FaceDfs,
}

impl Iterator for CircularFaces {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.dfs.advance() {
            Some(
                Permutation::from_circular_word(self.dfs.word())
                    .expect("scan words are circular by construction"),
            )
        } else {
            None
        }
    }
}

/// Streams all `(m-1)!` circular permutations of `{0, .., m-1}`.
pub fn circular_faces(m: usize, opts: &ScanOptions) -> Result<CircularFaces, ScanError> {
    opts.admit(m)?;
    Ok(CircularFaces {
        dfs: FaceDfs::new(m, None, false),
    })
}

/// Lazy stream of all reduced unicellular hypermonopoles of genus `g`,
/// ordered by point count `m = 2g+1 .. 4g`, then lexicographically.
pub struct GenusMaps {
    g: usize,
    next_m: usize,
    current: Option<ReducedMaps>,
}

impl Iterator for GenusMaps {
    type Item = Hypermap;

    fn next(&mut self) -> Option<Hypermap> {
        loop {
            if let Some(stream) = &mut self.current {
                if let Some(h) = stream.next() {
                    return Some(h);
                }
            }
            if self.g == 0 || self.next_m > 4 * self.g {
                return None;
            }
            let m = self.next_m;
            self.next_m += 1;
            self.current = Some(ReducedMaps::new(m, m - 2 * self.g));
        }
    }
}

/// Streams every reduced unicellular hypermonopole of genus `g`;
/// stream length is `u_of_g(g)`. Empty for `g = 0`.
pub fn enumerate_by_genus(g: usize, opts: &ScanOptions) -> Result<GenusMaps, ScanError> {
    if g >= 1 {
        let needed = 4 * g;
        if needed > opts.limit && !opts.force {
            return Err(ScanError::GenusAboveLimit {
                g,
                needed,
                limit: opts.limit,
            });
        }
    }
    Ok(GenusMaps {
        g,
        next_m: 2 * g + 1,
        current: None,
    })
}

/// Which count family a mismatch belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountFamily {
    /// All unicellular hypermonopoles, against the Stirling-quotient formula.
    Hultman,
    /// Reduced maps, against the inclusion-exclusion formula.
    Reduced,
}

/// A single cell where scan and formula disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub family: CountFamily,
    pub k: usize,
    pub scanned: BigUint,
    pub formula: BigUint,
}

/// Outcome of comparing both scan distributions at one size against the
/// closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionReport {
    pub m: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DistributionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Scans size `m` twice (all maps, reduced maps) and diffs both tallies
/// against the exact formulas, cell by cell.
pub fn distribution_check(m: usize, opts: &ScanOptions) -> Result<DistributionReport, ScanError> {
    let all = count_by_cycles(m, opts)?;
    let reduced = count_reduced(m, opts)?;
    let mut mismatches = Vec::new();
    for k in 1..=m {
        let formula = exact::hultman(m, k);
        let scanned = all.get(k);
        if scanned != formula {
            mismatches.push(Mismatch {
                family: CountFamily::Hultman,
                k,
                scanned,
                formula,
            });
        }
        let formula = if (1..=m / 2).contains(&k) && m >= 2 {
            exact::reduced_count(m, k)
        } else {
            BigUint::default()
        };
        let scanned = reduced.get(k);
        if scanned != formula {
            mismatches.push(Mismatch {
                family: CountFamily::Reduced,
                k,
                scanned,
                formula,
            });
        }
    }
    Ok(DistributionReport { m, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn counts(m: usize) -> CountByK {
        count_by_cycles(m, &ScanOptions::serial()).unwrap()
    }

    fn reduced(m: usize) -> CountByK {
        count_reduced(m, &ScanOptions::serial()).unwrap()
    }

    #[test]
    fn small_unfiltered_distributions() {
        assert_eq!(counts(1).counts(), &BTreeMap::from([(1, big(1))]));
        assert_eq!(counts(2).counts(), &BTreeMap::from([(2, big(1))]));
        assert_eq!(
            counts(3).counts(),
            &BTreeMap::from([(1, big(1)), (3, big(1))])
        );
        assert_eq!(
            counts(4).counts(),
            &BTreeMap::from([(2, big(5)), (4, big(1))])
        );
    }

    #[test]
    fn totals_are_factorials() {
        for m in 1..=8 {
            assert_eq!(counts(m).total(), &exact::factorial(m - 1), "m = {m}");
        }
    }

    #[test]
    fn small_reduced_distributions() {
        assert!(reduced(1).is_empty());
        assert!(reduced(2).is_empty());
        assert_eq!(reduced(3).counts(), &BTreeMap::from([(1, big(1))]));
        assert_eq!(reduced(4).counts(), &BTreeMap::from([(2, big(1))]));
        assert_eq!(
            reduced(7).counts(),
            &BTreeMap::from([(1, big(180)), (3, big(49))])
        );
    }

    #[test]
    fn pruned_scan_matches_unpruned_reference() {
        for m in 1..=7 {
            assert_eq!(
                reduced(m),
                count_reduced_unpruned(m, &ScanOptions::serial()).unwrap(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn partitioned_scan_matches_serial() {
        for m in 1..=6 {
            let serial = counts(m);
            for parts in [2, 3, 7] {
                assert_eq!(
                    count_by_cycles_partitioned(m, parts, &ScanOptions::serial()).unwrap(),
                    serial,
                    "m = {m}, parts = {parts}"
                );
            }
        }
    }

    #[test]
    fn parallel_scan_matches_serial() {
        for m in [5, 7, 8] {
            let serial = counts(m);
            let parallel = count_by_cycles(
                m,
                &ScanOptions {
                    threads: 2,
                    ..ScanOptions::default()
                },
            )
            .unwrap();
            assert_eq!(parallel, serial, "m = {m}");
        }
    }

    #[test]
    fn limit_refusals() {
        let opts = ScanOptions::default();
        assert_eq!(
            count_by_cycles(13, &opts),
            Err(ScanError::AboveLimit { m: 13, limit: 12 })
        );
        assert!(matches!(
            enumerate_by_genus(4, &opts),
            Err(ScanError::GenusAboveLimit {
                g: 4,
                needed: 16,
                limit: 12
            })
        ));
        let lowered = ScanOptions {
            limit: 6,
            ..ScanOptions::default()
        };
        assert!(count_by_cycles(7, &lowered).is_err());
        let forced = ScanOptions {
            limit: 6,
            force: true,
            threads: 1,
        };
        assert_eq!(count_by_cycles(7, &forced).unwrap().total(), &big(720));
    }

    #[test]
    fn enumerate_single_reduced_map() {
        let maps: Vec<_> = enumerate_reduced(3, 1, &ScanOptions::serial())
            .unwrap()
            .collect();
        assert_eq!(maps.len(), 1);
        assert_eq!(
            maps[0].alpha(),
            &Permutation::from_circular_word(&[0, 2, 1]).unwrap()
        );
        assert!(enumerate_reduced(5, 2, &ScanOptions::serial())
            .unwrap()
            .next()
            .is_none());
    }

    #[test]
    fn enumerate_counts_and_classes() {
        let maps: Vec<_> = enumerate_reduced(8, 4, &ScanOptions::serial())
            .unwrap()
            .collect();
        assert_eq!(maps.len(), 21);
        for h in &maps {
            let class = h.class();
            assert!(class.is_reduced);
            assert_eq!(class.k, 4);
            assert_eq!(class.genus, 2);
        }
    }

    #[test]
    fn genus_one_listing() {
        let maps: Vec<_> = enumerate_by_genus(1, &ScanOptions::serial())
            .unwrap()
            .collect();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0].point_count(), 3);
        assert_eq!(
            maps[0].alpha(),
            &Permutation::from_circular_word(&[0, 2, 1]).unwrap()
        );
        assert_eq!(maps[1].point_count(), 4);
        assert_eq!(
            maps[1].alpha(),
            &Permutation::from_cycles(&[vec![0, 2], vec![1, 3]], 4).unwrap()
        );
        for h in &maps {
            assert_eq!(h.genus(), 1);
        }
        assert!(enumerate_by_genus(0, &ScanOptions::serial())
            .unwrap()
            .next()
            .is_none());
    }

    #[test]
    fn distribution_checks_pass_on_small_sizes() {
        for m in 1..=7 {
            let report = distribution_check(m, &ScanOptions::serial()).unwrap();
            assert!(report.passed(), "m = {m}: {:?}", report.mismatches);
        }
    }
}
