//! Digit lists, coefficient functions and L-block membership.
//!
//! A periodic Zeckendorf collection is fixed by a list `L = (e_1, ..., e_N)`.
//! Its members are the finitely supported digit vectors that split into
//! disjoint L-blocks. Reading an L-block from its top index downwards, the
//! digits follow the cyclic pattern `e_1, e_2, ...` and the block closes at
//! the first digit that is strictly below the pattern. A block that follows
//! the pattern all the way down to index 1 is the maximal block.
//!
//! Indices are 1-based throughout.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A single digit of a coefficient function.
pub type Digit = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("list must have at least two entries, got {len}")]
    TooShort { len: usize },
    #[error("first entry of the list must be nonzero")]
    LeadingZero,
    #[error("entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: i64 },
    #[error("entry {index} ({value}) does not fit in a digit")]
    EntryTooLarge { index: usize, value: i64 },
    #[error("cannot parse list `{0}`")]
    Parse(String),
}

/// The digit list `L = (e_1, ..., e_N)` defining a periodic collection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListSpec {
    entries: Vec<Digit>,
}

/// Checks the list constraints: `N >= 2`, `e_1 >= 1`, all entries nonnegative.
pub fn validate_list(entries: &[i64]) -> Result<ListSpec, ListError> {
    if entries.len() < 2 {
        return Err(ListError::TooShort { len: entries.len() });
    }
    let mut out = Vec::with_capacity(entries.len());
    for (i, &value) in entries.iter().enumerate() {
        if value < 0 {
            return Err(ListError::NegativeEntry { index: i + 1, value });
        }
        let digit =
            Digit::try_from(value).map_err(|_| ListError::EntryTooLarge { index: i + 1, value })?;
        out.push(digit);
    }
    if out[0] == 0 {
        return Err(ListError::LeadingZero);
    }
    Ok(ListSpec { entries: out })
}

impl ListSpec {
    pub fn new(entries: Vec<Digit>) -> Result<Self, ListError> {
        let wide: Vec<i64> = entries.iter().map(|&e| i64::from(e)).collect();
        validate_list(&wide)
    }

    /// The period `N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; a valid list has at least two entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Digit] {
        &self.entries
    }

    /// `e_j` for `1 <= j <= N`.
    pub fn entry(&self, j: usize) -> Digit {
        self.entries[j - 1]
    }

    /// Cyclic pattern value at `offset` steps from a block start: `e_{(offset mod N) + 1}`.
    pub fn pattern(&self, offset: usize) -> Digit {
        self.entries[offset % self.entries.len()]
    }

    pub fn max_entry(&self) -> Digit {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// True when both lists generate the same collection, i.e. their cyclic
    /// patterns agree (`(1,0)` and `(1,0,1,0)` are the same system).
    pub fn same_collection(&self, other: &ListSpec) -> bool {
        let span = lcm(self.len(), other.len());
        (0..span).all(|k| self.pattern(k) == other.pattern(k))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for ListSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ListSpec {
    type Err = ListError;

    /// Parses a comma separated list such as `2,3,0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ListError::Parse(s.to_string()))?;
        validate_list(&values)
    }
}

/// A finitely supported coefficient function `ε = (ε_1, ε_2, ...)`.
///
/// Stored densely with `digits[k - 1] = ε_k` and no trailing zeros, so the
/// zero function is the empty vector and `ord` is the vector length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CoeffFn {
    digits: Vec<Digit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffParseError {
    #[error("malformed digit pair `{0}` (expected index:value)")]
    Pair(String),
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("index {0} appears more than once or out of ascending order")]
    Order(usize),
}

impl CoeffFn {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis function `β^i`.
    pub fn basis(i: usize) -> Self {
        assert!(i >= 1, "basis index starts at 1");
        let mut digits = vec![0; i];
        digits[i - 1] = 1;
        Self { digits }
    }

    /// Builds from dense digits, lowest index first. Trailing zeros are dropped.
    pub fn from_digits(mut digits: Vec<Digit>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Self { digits }
    }

    /// Builds from `(index, value)` pairs; repeated indices add up.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Digit)>>(pairs: I) -> Self {
        let mut digits = Vec::new();
        for (i, v) in pairs {
            assert!(i >= 1, "coefficient indices start at 1");
            if digits.len() < i {
                digits.resize(i, 0);
            }
            digits[i - 1] += v;
        }
        Self::from_digits(digits)
    }

    /// `ε_k`; zero outside the support.
    pub fn get(&self, k: usize) -> Digit {
        if k == 0 {
            return 0;
        }
        self.digits.get(k - 1).copied().unwrap_or(0)
    }

    /// Largest index with a nonzero digit, 0 for the zero function.
    pub fn ord(&self) -> usize {
        self.digits.len()
    }

    /// Smallest index with a nonzero digit, `None` for the zero function.
    pub fn ord_star(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0).map(|p| p + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Dense digits `ε_1..ε_ord`.
    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// Nonzero `(index, value)` pairs in ascending index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, Digit)> + '_ {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (i + 1, d))
    }

    /// `res_m`: keeps indices `<= m`.
    pub fn res_low(&self, m: usize) -> Self {
        Self::from_digits(self.digits.iter().copied().take(m).collect())
    }

    /// `res^m`: keeps indices `>= m`.
    pub fn res_high(&self, m: usize) -> Self {
        let mut digits = self.digits.clone();
        for d in digits.iter_mut().take(m.saturating_sub(1)) {
            *d = 0;
        }
        Self::from_digits(digits)
    }

    /// `rev_n`: `(ε_n, ε_{n-1}, ..., ε_1)`.
    pub fn rev(&self, n: usize) -> Self {
        Self::from_digits((1..=n).rev().map(|k| self.get(k)).collect())
    }

    /// Digit-wise sum.
    pub fn add(&self, other: &CoeffFn) -> Self {
        let len = self.ord().max(other.ord());
        Self::from_digits((1..=len).map(|k| self.get(k) + other.get(k)).collect())
    }
}

/// Ascending lexicographic comparison: the largest index where the two
/// functions differ decides.
pub fn cmp_asc(a: &CoeffFn, b: &CoeffFn) -> Ordering {
    a.ord()
        .cmp(&b.ord())
        .then_with(|| a.digits.iter().rev().cmp(b.digits.iter().rev()))
}

impl Ord for CoeffFn {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_asc(self, other)
    }
}

impl PartialOrd for CoeffFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse `i1:v1,i2:v2` form in ascending index order; the zero function is `0`.
impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.nonzero().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for CoeffFn {
    type Err = CoeffParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::zero());
        }
        let mut pairs = Vec::new();
        let mut last = 0usize;
        for part in s.split(',') {
            let (i, v) = part
                .split_once(':')
                .ok_or_else(|| CoeffParseError::Pair(part.to_string()))?;
            let i: usize = i.trim().parse().map_err(|_| CoeffParseError::Pair(part.to_string()))?;
            let v: Digit = v.trim().parse().map_err(|_| CoeffParseError::Pair(part.to_string()))?;
            if i == 0 {
                return Err(CoeffParseError::ZeroIndex);
            }
            if i <= last {
                return Err(CoeffParseError::Order(i));
            }
            last = i;
            pairs.push((i, v));
        }
        Ok(Self::from_pairs(pairs))
    }
}

/// The immediate predecessor of `β^n`: `rev_{n-1}` of the periodic
/// extension of `L`. Its digit at index `k` is `e_{((n-1-k) mod N) + 1}`.
pub fn theta_hat(list: &ListSpec, n: usize) -> CoeffFn {
    assert!(n >= 2, "theta_hat is defined for n >= 2");
    CoeffFn::from_digits((1..n).map(|k| list.pattern(n - 1 - k)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// Closes at a digit strictly below the pattern.
    Proper,
    /// Follows the pattern down to index 1.
    Maximal,
}

/// One L-block with support `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub lo: usize,
    pub hi: usize,
    /// Digits on `lo..=hi`, lowest index first.
    pub digits: Vec<Digit>,
    pub kind: BlockKind,
}

impl Block {
    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

/// Blocks ordered top-down; their supports partition `[1, ord]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// Rebuilds the coefficient function from its blocks.
    pub fn reassemble(&self) -> CoeffFn {
        CoeffFn::from_pairs(
            self.blocks
                .iter()
                .flat_map(|b| b.digits.iter().enumerate().map(move |(i, &d)| (b.lo + i, d))),
        )
    }
}

/// Membership failure: the scan met a digit above the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("not a member: digit at index {index} exceeds the block pattern (block top {block_top})")]
pub struct NotMember {
    pub index: usize,
    pub block_top: usize,
}

/// Result of a top-down block scan, including the completed blocks above a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockScan {
    pub completed: Vec<Block>,
    pub failure: Option<NotMember>,
}

/// Single top-down pass. Each block starts at the current top with pattern
/// `e_1` and closes at the first digit below the pattern; no backtracking.
pub fn scan_blocks(list: &ListSpec, eps: &CoeffFn) -> BlockScan {
    let mut completed = Vec::new();
    let mut top = eps.ord();
    while top >= 1 {
        let mut j = top;
        loop {
            let expected = list.pattern(top - j);
            let d = eps.get(j);
            if d > expected {
                return BlockScan {
                    completed,
                    failure: Some(NotMember {
                        index: j,
                        block_top: top,
                    }),
                };
            }
            if d < expected || j == 1 {
                let kind = if d < expected {
                    BlockKind::Proper
                } else {
                    BlockKind::Maximal
                };
                completed.push(Block {
                    lo: j,
                    hi: top,
                    digits: (j..=top).map(|k| eps.get(k)).collect(),
                    kind,
                });
                top = j - 1;
                break;
            }
            j -= 1;
        }
    }
    BlockScan {
        completed,
        failure: None,
    }
}

pub fn decompose_blocks(list: &ListSpec, eps: &CoeffFn) -> Result<BlockDecomposition, NotMember> {
    let scan = scan_blocks(list, eps);
    match scan.failure {
        Some(err) => Err(err),
        None => Ok(BlockDecomposition {
            blocks: scan.completed,
        }),
    }
}

pub fn is_member(list: &ListSpec, eps: &CoeffFn) -> bool {
    scan_blocks(list, eps).failure.is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(v: &[u32]) -> ListSpec {
        ListSpec::new(v.to_vec()).unwrap()
    }

    fn cf(v: &[u32]) -> CoeffFn {
        CoeffFn::from_digits(v.to_vec())
    }

    #[test]
    fn validate_examples() {
        assert!(validate_list(&[1, 0]).is_ok());
        assert!(validate_list(&[2, 3, 0]).is_ok());
        assert_eq!(validate_list(&[0, 3]), Err(ListError::LeadingZero));
        assert_eq!(validate_list(&[4]), Err(ListError::TooShort { len: 1 }));
        assert_eq!(
            validate_list(&[1, -2]),
            Err(ListError::NegativeEntry { index: 2, value: -2 })
        );
        assert!("2, 3,0".parse::<ListSpec>().is_ok());
        assert!("2,x".parse::<ListSpec>().is_err());
    }

    #[test]
    fn theta_hat_examples() {
        let l = list(&[2, 3, 0]);
        assert_eq!(theta_hat(&l, 5), cf(&[2, 0, 3, 2]));
        assert_eq!(theta_hat(&l, 2), cf(&[2]));
        assert_eq!(theta_hat(&l, 3), cf(&[3, 2]));
        assert_eq!(theta_hat(&l, 4), cf(&[0, 3, 2]));
        assert_eq!(theta_hat(&l, 9), cf(&[3, 2, 0, 3, 2, 0, 3, 2]));
    }

    #[test]
    fn theta_hat_matches_reversed_periodic_extension() {
        // Build β* directly, then reverse the first n-1 entries.
        for l in [list(&[1, 0]), list(&[2, 3, 0]), list(&[1, 2, 1, 0])] {
            let star: Vec<u32> = (1..40).map(|k| l.entries()[(k - 1) % l.len()]).collect();
            for n in 2..40 {
                let expected: Vec<u32> = star[..n - 1].iter().rev().copied().collect();
                assert_eq!(theta_hat(&l, n), cf(&expected), "n={n}");
            }
        }
        assert_eq!(theta_hat(&list(&[1, 0]), 4), cf(&[1, 0, 1]));
    }

    #[test]
    fn ascending_order_examples() {
        assert_eq!(cmp_asc(&cf(&[1, 2, 10, 3, 7]), &cf(&[1, 3, 1, 4, 7])), Ordering::Less);
        let e = cf(&[3, 0, 1]);
        assert_eq!(cmp_asc(&e, &e), Ordering::Equal);
        assert_eq!(cmp_asc(&cf(&[0, 0, 1]), &cf(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn ascending_order_matches_binary_value() {
        // Every pair of 0/1 vectors of support <= 3 against their binary value.
        let all: Vec<CoeffFn> = (0u32..8)
            .map(|m| cf(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
            .collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                assert_eq!(cmp_asc(a, b), i.cmp(&j));
            }
        }
    }

    #[test]
    fn decomposition_of_worked_example() {
        let l = list(&[2, 3, 0]);
        let eps = cf(&[2, 0, 3, 2, 0, 0, 0, 3, 2, 2, 2, 1]);
        let dec = decompose_blocks(&l, &eps).unwrap();
        let supports: Vec<(usize, usize)> = dec.blocks.iter().map(|b| (b.lo, b.hi)).collect();
        assert_eq!(supports, vec![(12, 12), (10, 11), (6, 9), (5, 5), (1, 4)]);
        assert_eq!(dec.blocks.last().unwrap().kind, BlockKind::Maximal);
        assert_eq!(dec.reassemble(), eps);
    }

    #[test]
    fn non_member_reports_failing_block() {
        let l = list(&[1, 0]);
        assert_eq!(
            decompose_blocks(&l, &cf(&[0, 1, 1])),
            Err(NotMember {
                index: 2,
                block_top: 3
            })
        );
        assert!(is_member(&l, &cf(&[1, 0, 1, 0, 1])));
    }

    #[test]
    fn zero_is_member_everywhere() {
        for l in [list(&[1, 0]), list(&[2, 3, 0]), list(&[10, 4])] {
            assert!(is_member(&l, &CoeffFn::zero()));
            assert!(decompose_blocks(&l, &CoeffFn::zero()).unwrap().blocks.is_empty());
        }
    }

    #[test]
    fn full_binary_collection() {
        let l = list(&[1, 1]);
        for m in 0u32..1024 {
            let v: Vec<u32> = (0..10).map(|b| (m >> b) & 1).collect();
            assert!(is_member(&l, &cf(&v)));
        }
        assert!(!is_member(&l, &cf(&[0, 2])));
        assert!(!is_member(&l, &cf(&[2])));
    }

    #[test]
    fn fibonacci_collection_is_no_adjacent_ones() {
        let l = list(&[1, 0]);
        for m in 0u32..1024 {
            let v: Vec<u32> = (0..10).map(|b| (m >> b) & 1).collect();
            let no_adjacent = m & (m >> 1) == 0;
            assert_eq!(is_member(&l, &cf(&v)), no_adjacent, "mask {m:b}");
        }
    }

    #[test]
    fn sparse_format_roundtrip() {
        let e: CoeffFn = "3:1,6:1,7:1".parse().unwrap();
        assert_eq!(e, CoeffFn::from_pairs([(3, 1), (6, 1), (7, 1)]));
        assert_eq!(e.to_string(), "3:1,6:1,7:1");
        assert_eq!("0".parse::<CoeffFn>().unwrap(), CoeffFn::zero());
        assert!("2:1,1:1".parse::<CoeffFn>().is_err());
        assert!("0:1".parse::<CoeffFn>().is_err());
    }

    #[test]
    fn restriction_and_reversal() {
        let e = cf(&[1, 2, 3, 4]);
        assert_eq!(e.res_low(2), cf(&[1, 2]));
        assert_eq!(e.res_high(3), cf(&[0, 0, 3, 4]));
        assert_eq!(e.rev(4), cf(&[4, 3, 2, 1]));
        assert_eq!(e.rev(5), cf(&[0, 4, 3, 2, 1]));
        assert_eq!(e.ord_star(), Some(1));
        assert_eq!(CoeffFn::zero().ord_star(), None);
    }

    #[test]
    fn same_collection_up_to_duplication() {
        assert!(list(&[1, 0]).same_collection(&list(&[1, 0, 1, 0])));
        assert!(list(&[2, 2]).same_collection(&list(&[2, 2, 2])));
        assert!(!list(&[1, 0]).same_collection(&list(&[1, 1])));
    }
}
