//! Core domain types: items, sequences, databases, patterns, the gap and
//! length constraint windows, and the occurrence predicates everything else
//! is built on.
//!
//! Positions are 1-based in every public interface. All types here are
//! immutable after construction and safe to share across threads.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from constructing or validating core types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("an item must be a single non-whitespace character")]
    WhitespaceItem,
    #[error("a pattern must contain at least one item")]
    EmptyPattern,
    #[error("invalid gap constraint [{min}, {max}]: min must not exceed max")]
    InvalidGap { min: usize, max: usize },
    #[error("invalid length constraint [{min}, {max}]: need min <= max and max >= 1")]
    InvalidLength { min: usize, max: usize },
    #[error("duplicate sequence id {0:?}")]
    DuplicateSid(String),
    #[error("position list has {got} entries but the pattern has {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("position {pos} lies outside the sequence (length {len}, positions are 1-based)")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("occurrences have different lengths ({a} vs {b})")]
    OccurrenceLengthMismatch { a: usize, b: usize },
}

/// A single symbol from a finite alphabet: a nucleotide letter for DNA
/// inputs, or any non-whitespace character in general.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(char);

impl Item {
    pub fn new(c: char) -> Result<Self, ModelError> {
        if c.is_whitespace() {
            return Err(ModelError::WhitespaceItem);
        }
        Ok(Item(c))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One identifier-tagged symbol sequence. Positions run 1..=len with no
/// holes; each position holds exactly one item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    sid: String,
    items: Vec<Item>,
}

impl Sequence {
    pub fn new(sid: impl Into<String>, items: Vec<Item>) -> Self {
        Sequence {
            sid: sid.into(),
            items,
        }
    }

    /// Builds a sequence from a string, one item per character.
    pub fn parse(sid: impl Into<String>, text: &str) -> Result<Self, ModelError> {
        let items = text.chars().map(Item::new).collect::<Result<Vec<_>, _>>()?;
        Ok(Sequence::new(sid, items))
    }

    pub fn sid(&self) -> &str {
        &self.sid
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Item at a 1-based position.
    pub fn item_at(&self, pos: usize) -> Option<Item> {
        if pos == 0 {
            return None;
        }
        self.items.get(pos - 1).copied()
    }
}

/// An ordered collection of sequences with unique sids. The alphabet is
/// derived as the union of items over all sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDatabase {
    sequences: Vec<Sequence>,
}

impl SequenceDatabase {
    pub fn new(sequences: Vec<Sequence>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        for s in &sequences {
            if !seen.insert(s.sid().to_string()) {
                return Err(ModelError::DuplicateSid(s.sid().to_string()));
            }
        }
        Ok(SequenceDatabase { sequences })
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn total_items(&self) -> usize {
        self.sequences.iter().map(Sequence::len).sum()
    }

    /// Union of items over all sequences, in lexicographic order.
    pub fn alphabet(&self) -> BTreeSet<Item> {
        self.sequences
            .iter()
            .flat_map(|s| s.items().iter().copied())
            .collect()
    }

    /// FNV-1a hash over sids and items; used to detect reports produced
    /// from different databases.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |b: u8| {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        for s in &self.sequences {
            for b in s.sid().bytes() {
                eat(b);
            }
            eat(0xff);
            for it in s.items() {
                let mut buf = [0u8; 4];
                for b in it.as_char().encode_utf8(&mut buf).bytes() {
                    eat(b);
                }
            }
            eat(0xfe);
        }
        h
    }
}

/// The allowed count of items strictly between two adjacent matched
/// positions, uniform across all adjacent pattern positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapConstraint {
    min: usize,
    max: usize,
}

impl GapConstraint {
    pub fn new(min: usize, max: usize) -> Result<Self, ModelError> {
        if min > max {
            return Err(ModelError::InvalidGap { min, max });
        }
        Ok(GapConstraint { min, max })
    }

    pub fn mingap(self) -> usize {
        self.min
    }

    pub fn maxgap(self) -> usize {
        self.max
    }
}

/// The allowed occurrence span, where span = last position - first
/// position + 1. minlen 0 and 1 behave identically since any occurrence
/// spans at least one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthConstraint {
    min: usize,
    max: usize,
}

impl LengthConstraint {
    pub fn new(min: usize, max: usize) -> Result<Self, ModelError> {
        if min > max || max == 0 {
            return Err(ModelError::InvalidLength { min, max });
        }
        Ok(LengthConstraint { min, max })
    }

    pub fn minlen(self) -> usize {
        self.min
    }

    pub fn maxlen(self) -> usize {
        self.max
    }

    pub fn admits_span(self, span: usize) -> bool {
        self.min <= span && span <= self.max
    }
}

/// An ordered list of items to be located in sequences under gap and
/// length constraints. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    items: Vec<Item>,
}

impl Pattern {
    pub fn new(items: Vec<Item>) -> Result<Self, ModelError> {
        if items.is_empty() {
            return Err(ModelError::EmptyPattern);
        }
        Ok(Pattern { items })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The length-(m-1) prefix, or None for a 1-pattern.
    pub fn prefix(&self) -> Option<&[Item]> {
        if self.items.len() < 2 {
            None
        } else {
            Some(&self.items[..self.items.len() - 1])
        }
    }

    /// The length-(m-1) suffix, or None for a 1-pattern.
    pub fn suffix(&self) -> Option<&[Item]> {
        if self.items.len() < 2 {
            None
        } else {
            Some(&self.items[1..])
        }
    }

    /// A new pattern with `item` appended.
    pub fn extended_with(&self, item: Item) -> Pattern {
        let mut items = self.items.clone();
        items.push(item);
        Pattern { items }
    }
}

impl FromStr for Pattern {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let items = s.chars().map(Item::new).collect::<Result<Vec<_>, _>>()?;
        Pattern::new(items)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.items {
            write!(f, "{it}")?;
        }
        Ok(())
    }
}

/// A strictly increasing list of 1-based positions realizing a pattern in
/// one sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    sid: String,
    positions: Vec<usize>,
}

impl Occurrence {
    pub fn new(sid: impl Into<String>, positions: Vec<usize>) -> Self {
        Occurrence {
            sid: sid.into(),
            positions,
        }
    }

    pub fn sid(&self) -> &str {
        &self.sid
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// last - first + 1; 0 for an empty position list.
    pub fn span(&self) -> usize {
        match (self.positions.first(), self.positions.last()) {
            (Some(first), Some(last)) => last - first + 1,
            _ => 0,
        }
    }
}

/// Decides whether `positions` is a valid occurrence of `pat` in `seq`
/// under the given constraints: symbols match, every adjacent gap lies in
/// the gap window, and the span lies in the length window.
///
/// Rejects (as an error, not `false`) position lists of the wrong arity or
/// containing out-of-range positions.
pub fn is_occurrence(
    seq: &Sequence,
    pat: &Pattern,
    positions: &[usize],
    gap: GapConstraint,
    len: LengthConstraint,
) -> Result<bool, ModelError> {
    if positions.len() != pat.len() {
        return Err(ModelError::ArityMismatch {
            expected: pat.len(),
            got: positions.len(),
        });
    }
    for &pos in positions {
        if pos == 0 || pos > seq.len() {
            return Err(ModelError::PositionOutOfRange {
                pos,
                len: seq.len(),
            });
        }
    }
    for (&pos, &item) in positions.iter().zip(pat.items()) {
        if seq.item_at(pos) != Some(item) {
            return Ok(false);
        }
    }
    for pair in positions.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            return Ok(false);
        }
        let g = b - a - 1;
        if g < gap.mingap() || g > gap.maxgap() {
            return Ok(false);
        }
    }
    let span = positions.last().unwrap() - positions.first().unwrap() + 1;
    Ok(len.admits_span(span))
}

/// Two occurrences are non-overlapping iff they differ at every pattern
/// index. The comparison is per index only: <1,5> and <5,8> are
/// non-overlapping even though position 5 appears in both.
///
/// Both occurrences are assumed to come from the same sequence; only their
/// position lists are inspected. Rejects occurrences of different lengths.
pub fn non_overlapping(a: &Occurrence, b: &Occurrence) -> Result<bool, ModelError> {
    if a.len() != b.len() {
        return Err(ModelError::OccurrenceLengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    Ok(a.positions().iter().zip(b.positions()).all(|(x, y)| x != y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> Sequence {
        Sequence::parse("s", text).unwrap()
    }

    fn pat(text: &str) -> Pattern {
        text.parse().unwrap()
    }

    fn gap(min: usize, max: usize) -> GapConstraint {
        GapConstraint::new(min, max).unwrap()
    }

    fn len(min: usize, max: usize) -> LengthConstraint {
        LengthConstraint::new(min, max).unwrap()
    }

    #[test]
    fn occurrence_check_accepts_gap_feasible_positions() {
        let s = seq("GCGCGT");
        let p = pat("GCG");
        assert_eq!(
            is_occurrence(&s, &p, &[1, 2, 3], gap(0, 2), len(0, 5)),
            Ok(true)
        );
    }

    #[test]
    fn occurrence_check_rejects_wide_gap() {
        let s = seq("GCGCGT");
        let p = pat("GCG");
        // gap between 2 and 5 is 2, above maxgap 1
        assert_eq!(
            is_occurrence(&s, &p, &[1, 2, 5], gap(0, 1), len(0, 5)),
            Ok(false)
        );
    }

    #[test]
    fn occurrence_check_rejects_long_span() {
        let s = seq("GCGCGT");
        let p = pat("GCG");
        // span 5 exceeds maxlen 4
        assert_eq!(
            is_occurrence(&s, &p, &[1, 2, 5], gap(0, 2), len(1, 4)),
            Ok(false)
        );
    }

    #[test]
    fn occurrence_check_rejects_bad_arity_and_range() {
        let s = seq("GCGCGT");
        let p = pat("GCG");
        assert!(matches!(
            is_occurrence(&s, &p, &[1, 2], gap(0, 2), len(0, 5)),
            Err(ModelError::ArityMismatch { .. })
        ));
        assert!(matches!(
            is_occurrence(&s, &p, &[1, 2, 7], gap(0, 2), len(0, 5)),
            Err(ModelError::PositionOutOfRange { .. })
        ));
        assert!(matches!(
            is_occurrence(&s, &p, &[0, 2, 3], gap(0, 2), len(0, 5)),
            Err(ModelError::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn occurrence_check_rejects_non_increasing_positions() {
        let s = seq("GCGCGT");
        let p = pat("GCG");
        assert_eq!(
            is_occurrence(&s, &p, &[3, 2, 5], gap(0, 2), len(0, 6)),
            Ok(false)
        );
    }

    #[test]
    fn single_item_occurrence_spans_one() {
        let s = seq("AGGAT");
        let p = pat("A");
        assert_eq!(is_occurrence(&s, &p, &[4], gap(0, 0), len(0, 5)), Ok(true));
        assert_eq!(is_occurrence(&s, &p, &[4], gap(0, 0), len(1, 5)), Ok(true));
        // minlen 2 can never be met by a 1-pattern
        assert_eq!(is_occurrence(&s, &p, &[4], gap(0, 0), len(2, 5)), Ok(false));
    }

    #[test]
    fn overlap_is_per_index() {
        let a = Occurrence::new("s", vec![1, 2, 3]);
        let b = Occurrence::new("s", vec![1, 2, 5]);
        assert_eq!(non_overlapping(&a, &b), Ok(false));

        let a = Occurrence::new("s", vec![1, 3, 4, 5]);
        let b = Occurrence::new("s", vec![7, 9, 10, 12]);
        assert_eq!(non_overlapping(&a, &b), Ok(true));

        // position 5 appears in both, but at different indices
        let a = Occurrence::new("s", vec![1, 5]);
        let b = Occurrence::new("s", vec![5, 8]);
        assert_eq!(non_overlapping(&a, &b), Ok(true));
    }

    #[test]
    fn overlap_rejects_length_mismatch() {
        let a = Occurrence::new("s", vec![1, 2]);
        let b = Occurrence::new("s", vec![1, 2, 3]);
        assert!(matches!(
            non_overlapping(&a, &b),
            Err(ModelError::OccurrenceLengthMismatch { .. })
        ));
    }

    #[test]
    fn constraint_constructors_validate() {
        assert!(GapConstraint::new(3, 2).is_err());
        assert!(GapConstraint::new(0, 0).is_ok());
        assert!(LengthConstraint::new(4, 3).is_err());
        assert!(LengthConstraint::new(0, 0).is_err());
        assert!(LengthConstraint::new(0, 1).is_ok());
    }

    #[test]
    fn database_rejects_duplicate_sids() {
        let err = SequenceDatabase::new(vec![seq("AG"), seq("GT")]);
        assert!(matches!(err, Err(ModelError::DuplicateSid(_))));
    }

    #[test]
    fn alphabet_is_item_union() {
        let db = SequenceDatabase::new(vec![
            Sequence::parse("a", "AGGAT").unwrap(),
            Sequence::parse("b", "CCT").unwrap(),
        ])
        .unwrap();
        let letters: Vec<char> = db.alphabet().iter().map(|i| i.as_char()).collect();
        assert_eq!(letters, vec!['A', 'C', 'G', 'T']);
    }

    #[test]
    fn items_reject_whitespace() {
        assert!(Item::new(' ').is_err());
        assert!(Item::new('\t').is_err());
        assert!("G C".parse::<Pattern>().is_err());
        assert!("".parse::<Pattern>().is_err());
    }

    #[test]
    fn fingerprint_distinguishes_databases() {
        let a = SequenceDatabase::new(vec![Sequence::parse("1", "AG").unwrap()]).unwrap();
        let b = SequenceDatabase::new(vec![Sequence::parse("1", "GA").unwrap()]).unwrap();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), a.clone().fingerprint());
    }
}
