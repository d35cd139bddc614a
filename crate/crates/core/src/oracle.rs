//! Brute-force reference implementations: exhaustive occurrence
//! enumeration, exact maximum non-overlapping set size, and exhaustive
//! top-k mining over the whole pattern space.
//!
//! Everything here is correct by construction and exponential in the worst
//! case; the limits gate keeps calls at desk scale. The production engine
//! is validated against this module, so nothing below may share code with
//! the Nettree path logic.

use std::collections::HashSet;
use std::time::Instant;

use thiserror::Error;

use crate::miner::{rank_canonical, MiningMetrics, MiningParams, MiningReport};
use crate::model::{
    is_occurrence, GapConstraint, LengthConstraint, Occurrence, Pattern, Sequence, SequenceDatabase,
};

/// Input-size bounds enforced before any exhaustive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_sequence_length: usize,
    pub max_pattern_length: usize,
    pub max_total_patterns: usize,
    pub max_occurrences: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_sequence_length: 20,
            max_pattern_length: 5,
            max_total_patterns: 100_000,
            max_occurrences: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("sequence length {actual} exceeds the oracle limit {limit}")]
    SequenceTooLong { actual: usize, limit: usize },
    #[error("pattern length {actual} exceeds the oracle limit {limit}")]
    PatternTooLong { actual: usize, limit: usize },
    #[error("pattern space of {actual} strings exceeds the oracle limit {limit}")]
    PatternSpaceTooLarge { actual: u128, limit: usize },
    #[error("{actual} occurrences exceed the oracle limit {limit}")]
    TooManyOccurrences { actual: usize, limit: usize },
    #[error("k must be at least 1")]
    ZeroK,
}

/// All valid occurrences of `pat` in `seq`, in lexicographic position
/// order, found by plain backtracking over the definition.
pub fn enumerate_occurrences(
    seq: &Sequence,
    pat: &Pattern,
    gap: GapConstraint,
    len: LengthConstraint,
    limits: &OracleLimits,
) -> Result<Vec<Occurrence>, OracleError> {
    if seq.len() > limits.max_sequence_length {
        return Err(OracleError::SequenceTooLong {
            actual: seq.len(),
            limit: limits.max_sequence_length,
        });
    }
    if pat.len() > limits.max_pattern_length {
        return Err(OracleError::PatternTooLong {
            actual: pat.len(),
            limit: limits.max_pattern_length,
        });
    }

    let mut found = Vec::new();
    let mut positions = Vec::with_capacity(pat.len());
    extend(seq, pat, gap, len, limits, &mut positions, &mut found)?;
    Ok(found)
}

fn extend(
    seq: &Sequence,
    pat: &Pattern,
    gap: GapConstraint,
    len: LengthConstraint,
    limits: &OracleLimits,
    positions: &mut Vec<usize>,
    found: &mut Vec<Occurrence>,
) -> Result<(), OracleError> {
    let depth = positions.len();
    if depth == pat.len() {
        let span = positions.last().unwrap() - positions.first().unwrap() + 1;
        if len.admits_span(span) {
            debug_assert_eq!(
                is_occurrence(seq, pat, positions, gap, len),
                Ok(true),
                "enumerated occurrence must satisfy the definition"
            );
            if found.len() == limits.max_occurrences {
                return Err(OracleError::TooManyOccurrences {
                    actual: found.len() + 1,
                    limit: limits.max_occurrences,
                });
            }
            found.push(Occurrence::new(seq.sid(), positions.clone()));
        }
        return Ok(());
    }

    let item = pat.items()[depth];
    let (lo, hi) = match positions.last() {
        None => (1, seq.len()),
        Some(&prev) => (
            prev.saturating_add(1 + gap.mingap()),
            prev.saturating_add(1 + gap.maxgap()).min(seq.len()),
        ),
    };
    for pos in lo..=hi.min(seq.len()) {
        if seq.item_at(pos) != Some(item) {
            continue;
        }
        // the span can only grow; cut branches that already exceed maxlen
        if let Some(&first) = positions.first() {
            if pos - first + 1 > len.maxlen() {
                break;
            }
        }
        positions.push(pos);
        extend(seq, pat, gap, len, limits, positions, found)?;
        positions.pop();
    }
    Ok(())
}

/// Exact maximum cardinality of a pairwise non-overlapping subset, by
/// branch and bound. All occurrences must share one pattern length.
pub fn max_nonoverlapping(
    occurrences: &[Occurrence],
    limits: &OracleLimits,
) -> Result<u64, OracleError> {
    if occurrences.is_empty() {
        return Ok(0);
    }
    if occurrences.len() > limits.max_occurrences {
        return Err(OracleError::TooManyOccurrences {
            actual: occurrences.len(),
            limit: limits.max_occurrences,
        });
    }
    let m = occurrences[0].len();
    debug_assert!(occurrences.iter().all(|o| o.len() == m));

    // Singleton occurrences are pairwise distinct positions; all coexist.
    if m == 1 {
        return Ok(occurrences.len() as u64);
    }

    // Resource bound: picks available from occs[i..] can never exceed the
    // number of distinct positions left at any single pattern index.
    let n = occurrences.len();
    let mut suffix_bound = vec![0usize; n + 1];
    {
        let mut distinct: Vec<HashSet<usize>> = vec![HashSet::new(); m];
        for i in (0..n).rev() {
            for (j, &p) in occurrences[i].positions().iter().enumerate() {
                distinct[j].insert(p);
            }
            suffix_bound[i] = distinct.iter().map(HashSet::len).min().unwrap_or(0);
        }
    }

    // Greedy first-fit seeds the bound; the search then proves optimality.
    let mut best = {
        let mut taken: Vec<&Occurrence> = Vec::new();
        for occ in occurrences {
            if taken.iter().all(|t| disjoint(t, occ)) {
                taken.push(occ);
            }
        }
        taken.len()
    };

    let mut chosen: Vec<&Occurrence> = Vec::new();
    branch(occurrences, 0, &suffix_bound, &mut chosen, &mut best);
    Ok(best as u64)
}

fn disjoint(a: &Occurrence, b: &Occurrence) -> bool {
    a.positions().iter().zip(b.positions()).all(|(x, y)| x != y)
}

fn branch<'a>(
    occs: &'a [Occurrence],
    start: usize,
    suffix_bound: &[usize],
    chosen: &mut Vec<&'a Occurrence>,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    for i in start..occs.len() {
        if chosen.len() + suffix_bound[i] <= *best {
            // bounds only shrink further right
            break;
        }
        let cand = &occs[i];
        if chosen.iter().all(|t| disjoint(t, cand)) {
            chosen.push(cand);
            branch(occs, i + 1, suffix_bound, chosen, best);
            chosen.pop();
        }
    }
}

/// Reference support: enumerate everything, then solve the maximum
/// non-overlapping subset exactly.
pub fn oracle_support(
    seq: &Sequence,
    pat: &Pattern,
    gap: GapConstraint,
    len: LengthConstraint,
    limits: &OracleLimits,
) -> Result<u64, OracleError> {
    let occs = enumerate_occurrences(seq, pat, gap, len, limits)?;
    max_nonoverlapping(&occs, limits)
}

/// Reference database support: sum of per-sequence oracle supports.
pub fn oracle_db_support(
    db: &SequenceDatabase,
    pat: &Pattern,
    gap: GapConstraint,
    len: LengthConstraint,
    limits: &OracleLimits,
) -> Result<u64, OracleError> {
    let mut total = 0;
    for seq in db.sequences() {
        total += oracle_support(seq, pat, gap, len, limits)?;
    }
    Ok(total)
}

/// Scores every alphabet string of length 1..=maxlen and returns the top-k
/// under the miner's tie policy (support desc, length asc, lexicographic).
/// Patterns with support 0 are never returned.
pub fn exhaustive_topk(
    db: &SequenceDatabase,
    k: usize,
    gap: GapConstraint,
    len: LengthConstraint,
    limits: &OracleLimits,
) -> Result<MiningReport, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let started = Instant::now();
    let params = MiningParams {
        k,
        gap,
        len,
        db_fingerprint: db.fingerprint(),
    };
    let alphabet: Vec<_> = db.alphabet().into_iter().collect();

    let mut space: u128 = 0;
    for m in 1..=len.maxlen() {
        space = space.saturating_add((alphabet.len() as u128).saturating_pow(m as u32));
    }
    if space > limits.max_total_patterns as u128 {
        return Err(OracleError::PatternSpaceTooLarge {
            actual: space,
            limit: limits.max_total_patterns,
        });
    }

    let mut scored: Vec<(Pattern, u64)> = Vec::new();
    let mut candidates_per_length = Vec::new();
    let mut supports_computed = 0u64;
    let mut current: Vec<Vec<crate::model::Item>> = vec![Vec::new()];
    for _ in 1..=len.maxlen() {
        let mut next = Vec::with_capacity(current.len() * alphabet.len());
        for stem in &current {
            for &item in &alphabet {
                let mut items = stem.clone();
                items.push(item);
                next.push(items);
            }
        }
        if next.is_empty() {
            break;
        }
        candidates_per_length.push(next.len());
        for items in &next {
            let pattern = Pattern::new(items.clone()).expect("non-empty by construction");
            let support = oracle_db_support(db, &pattern, gap, len, limits)?;
            supports_computed += 1;
            if support > 0 {
                scored.push((pattern, support));
            }
        }
        current = next;
    }

    rank_canonical(&mut scored);
    let shortfall = scored.len() < k;
    scored.truncate(k);
    let l_max = scored.iter().map(|(p, _)| p.len()).max().unwrap_or(0);
    Ok(MiningReport {
        params,
        ranked: scored,
        l_max,
        metrics: MiningMetrics {
            runtime: started.elapsed(),
            visited_nodes: 0,
            candidates_per_length,
            supports_computed,
            shortfall,
        },
    })
}
