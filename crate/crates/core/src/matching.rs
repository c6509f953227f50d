//! Pattern detection and counting.
//!
//! All searches share one backtracking engine. Pattern positions are matched
//! left to right; each new text entry must fall strictly between the images of
//! the nearest smaller and nearest larger pattern values placed so far, which
//! is enough to keep every partial match order-isomorphic to its pattern
//! prefix.

use std::ops::ControlFlow;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Strictly increasing 1-based text positions of a pattern copy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    indices: Vec<usize>,
}

impl Embedding {
    pub fn new(indices: Vec<usize>) -> Self {
        Embedding { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Result of a capped enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub embeddings: Vec<Embedding>,
    /// More embeddings exist beyond the cap.
    pub truncated: bool,
}

// Texts up to this length get an O(n^2) prefix table for the last level.
const TABLE_LIMIT: usize = 2048;
// Below this text length the top level runs sequentially.
const PARALLEL_MIN_TEXT: usize = 48;

struct Matcher<'a> {
    pattern: &'a [usize],
    text: &'a [usize],
    floor: Vec<Option<usize>>,
    ceil: Vec<Option<usize>>,
    // smaller_from[i * stride + v] = #{ j >= i : text[j] < v }
    smaller_from: Option<Vec<u32>>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a [usize], text: &'a [usize], with_table: bool) -> Self {
        let k = pattern.len();
        let mut floor = vec![None; k];
        let mut ceil = vec![None; k];
        for t in 0..k {
            for s in 0..t {
                if pattern[s] < pattern[t] && floor[t].is_none_or(|f: usize| pattern[s] > pattern[f]) {
                    floor[t] = Some(s);
                }
                if pattern[s] > pattern[t] && ceil[t].is_none_or(|c: usize| pattern[s] < pattern[c]) {
                    ceil[t] = Some(s);
                }
            }
        }
        let n = text.len();
        let smaller_from = (with_table && k >= 2 && n <= TABLE_LIMIT).then(|| {
            let stride = n + 2;
            let mut table = vec![0u32; (n + 1) * stride];
            for i in (0..n).rev() {
                for v in 0..stride {
                    table[i * stride + v] =
                        table[(i + 1) * stride + v] + u32::from(text[i] < v);
                }
            }
            table
        });
        Matcher {
            pattern,
            text,
            floor,
            ceil,
            smaller_from,
        }
    }

    fn k(&self) -> usize {
        self.pattern.len()
    }

    fn n(&self) -> usize {
        self.text.len()
    }

    /// Open value interval allowed for pattern position `t`.
    fn window(&self, t: usize, images: &[usize]) -> (usize, usize) {
        let lo = self.floor[t].map_or(0, |s| self.text[images[s]]);
        let hi = self.ceil[t].map_or(self.n() + 1, |s| self.text[images[s]]);
        (lo, hi)
    }

    fn count_last(&self, start: usize, lo: usize, hi: usize) -> u128 {
        if lo + 1 >= hi || start >= self.n() {
            return 0;
        }
        match &self.smaller_from {
            Some(table) => {
                let row = start * (self.n() + 2);
                (table[row + hi] - table[row + lo + 1]) as u128
            }
            None => self.text[start..]
                .iter()
                .filter(|&&v| lo < v && v < hi)
                .count() as u128,
        }
    }

    fn count_from(&self, t: usize, start: usize, images: &mut [usize]) -> u128 {
        let (lo, hi) = self.window(t, images);
        if t + 1 == self.k() {
            return self.count_last(start, lo, hi);
        }
        let last = self.n() - (self.k() - t);
        let mut total = 0;
        for i in start..=last {
            let v = self.text[i];
            if lo < v && v < hi {
                images[t] = i;
                total += self.count_from(t + 1, i + 1, images);
            }
        }
        total
    }

    fn visit<F>(&self, t: usize, start: usize, images: &mut [usize], f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if t == self.k() {
            return f(images);
        }
        let (lo, hi) = self.window(t, images);
        let last = self.n() - (self.k() - t);
        for i in start..=last {
            let v = self.text[i];
            if lo < v && v < hi {
                images[t] = i;
                self.visit(t + 1, i + 1, images, f)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// Visits embeddings in lexicographic order; the first pattern entry is
    /// pinned to text position 0 when `pinned`.
    fn for_each<F>(&self, pinned: bool, mut f: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.k() > self.n() {
            return;
        }
        let mut images = vec![0; self.k()];
        if pinned {
            images[0] = 0;
            let _ = self.visit(1, 1, &mut images, &mut f);
        } else {
            let _ = self.visit(0, 0, &mut images, &mut f);
        }
    }

    fn count(&self) -> u128 {
        let (k, n) = (self.k(), self.n());
        if k > n {
            return 0;
        }
        if k == 1 {
            return n as u128;
        }
        let first = |i0: usize| {
            let mut images = vec![0; k];
            images[0] = i0;
            self.count_from(1, i0 + 1, &mut images)
        };
        if n >= PARALLEL_MIN_TEXT {
            (0..=n - k).into_par_iter().map(first).sum()
        } else {
            (0..=n - k).map(first).sum()
        }
    }

    fn count_pinned(&self) -> u128 {
        let (k, n) = (self.k(), self.n());
        if k > n {
            return 0;
        }
        if k == 1 {
            return 1;
        }
        let mut images = vec![0; k];
        self.count_from(1, 1, &mut images)
    }
}

fn require_pattern(pi: &Permutation) -> Result<()> {
    if pi.is_empty() {
        Err(Error::EmptyPattern)
    } else {
        Ok(())
    }
}

fn require_both(pi: &Permutation, tau: &Permutation) -> Result<()> {
    require_pattern(pi)?;
    if tau.is_empty() {
        Err(Error::EmptyText)
    } else {
        Ok(())
    }
}

/// Whether `tau` contains `pi`.
pub fn contains(pi: &Permutation, tau: &Permutation) -> Result<bool> {
    require_pattern(pi)?;
    let matcher = Matcher::new(pi.as_slice(), tau.as_slice(), false);
    let mut found = false;
    matcher.for_each(false, |_| {
        found = true;
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Whether `tau` contains a copy of `pi` that starts at the first text entry.
pub fn contains_left_aligned(pi: &Permutation, tau: &Permutation) -> Result<bool> {
    require_both(pi, tau)?;
    let matcher = Matcher::new(pi.as_slice(), tau.as_slice(), false);
    let mut found = false;
    matcher.for_each(true, |_| {
        found = true;
        ControlFlow::Break(())
    });
    Ok(found)
}

/// Exact number of copies of `pi` in `tau`.
pub fn count_copies(pi: &Permutation, tau: &Permutation) -> Result<BigCount> {
    require_pattern(pi)?;
    Ok(Matcher::new(pi.as_slice(), tau.as_slice(), true).count().into())
}

/// Reference count by checking every `k`-subset of text positions.
pub fn count_copies_naive(pi: &Permutation, tau: &Permutation) -> Result<BigCount> {
    require_pattern(pi)?;
    let (p, t) = (pi.as_slice(), tau.as_slice());
    let k = p.len();
    let count = (0..t.len())
        .combinations(k)
        .filter(|idx| {
            (0..k).all(|a| (a + 1..k).all(|b| (p[a] < p[b]) == (t[idx[a]] < t[idx[b]])))
        })
        .count();
    Ok(BigCount::from(count))
}

/// Number of left-aligned copies, by pinned backtracking.
pub fn count_left_aligned(pi: &Permutation, tau: &Permutation) -> Result<BigCount> {
    require_both(pi, tau)?;
    Ok(Matcher::new(pi.as_slice(), tau.as_slice(), true)
        .count_pinned()
        .into())
}

/// Number of left-aligned copies as `#pi(tau) - #pi(tau without its first entry)`.
pub fn count_left_aligned_by_difference(pi: &Permutation, tau: &Permutation) -> Result<BigCount> {
    require_both(pi, tau)?;
    let all = count_copies(pi, tau)?;
    let rest = count_copies(pi, &tau.delete_leftmost()?)?;
    Ok(all - rest)
}

/// Both left-aligned counts side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftAlignedCounts {
    pub direct: BigCount,
    pub difference: BigCount,
}

impl LeftAlignedCounts {
    pub fn agree(&self) -> bool {
        self.direct == self.difference
    }
}

pub fn left_aligned_counts(pi: &Permutation, tau: &Permutation) -> Result<LeftAlignedCounts> {
    Ok(LeftAlignedCounts {
        direct: count_left_aligned(pi, tau)?,
        difference: count_left_aligned_by_difference(pi, tau)?,
    })
}

/// Lists embeddings in lexicographic order, stopping after `cap` of them.
pub fn enumerate_embeddings(
    pi: &Permutation,
    tau: &Permutation,
    cap: usize,
    require_left_aligned: bool,
) -> Result<Enumeration> {
    require_pattern(pi)?;
    if cap == 0 {
        return Err(Error::ZeroCap);
    }
    if require_left_aligned && tau.is_empty() {
        return Err(Error::EmptyText);
    }
    let matcher = Matcher::new(pi.as_slice(), tau.as_slice(), false);
    let mut embeddings = Vec::new();
    let mut truncated = false;
    matcher.for_each(require_left_aligned, |images| {
        if embeddings.len() == cap {
            truncated = true;
            return ControlFlow::Break(());
        }
        embeddings.push(Embedding::new(images.iter().map(|&i| i + 1).collect()));
        ControlFlow::Continue(())
    });
    Ok(Enumeration {
        embeddings,
        truncated,
    })
}

/// Number of inversions (copies of `21`) with a Fenwick tree over values.
pub fn count_inversions(tau: &Permutation) -> BigCount {
    let n = tau.len();
    let mut tree = vec![0u32; n + 1];
    let mut inversions: u128 = 0;
    for (seen, &v) in tau.as_slice().iter().enumerate() {
        // entries seen so far with value <= v
        let mut not_greater = 0u64;
        let mut i = v;
        while i > 0 {
            not_greater += u64::from(tree[i]);
            i &= i - 1;
        }
        inversions += (seen as u64 - not_greater) as u128;
        let mut i = v;
        while i <= n {
            tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }
    inversions.into()
}

/// `floor(sqrt(n^k))`, the canonical integer form of `n^(k/2)`.
pub fn sqrt_power(n: usize, k: usize) -> BigUint {
    BigUint::from(n).pow(k as u32).sqrt()
}

/// Detection-based estimate: `0` if `tau` avoids `pi`, else `floor(sqrt(n^k))`.
///
/// For a true count `C >= 1` this satisfies `A^2 <= C^2 n^k` and
/// `C^2 <= A^2 n^k`.
pub fn approx_count(pi: &Permutation, tau: &Permutation) -> Result<BigCount> {
    require_both(pi, tau)?;
    if contains(pi, tau)? {
        Ok(sqrt_power(tau.len(), pi.len()).into())
    } else {
        Ok(BigCount::zero())
    }
}
