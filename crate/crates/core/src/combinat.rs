//! Brute-force alternating-tree counts.
//!
//! A labeled tree is alternating when every vertex is either smaller than all
//! of its neighbors or larger than all of them. Counting them over every
//! Prüfer sequence gives an enumeration independent of the series machinery.

use std::thread;

use num_bigint::BigInt;

use crate::{Error, Result};

/// Largest vertex count the exhaustive count accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 9;

/// A tree on vertices `1..=m`, edges stored as `(small, large)` and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    m: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Apply a relabeling `v -> f(v)` of `1..=m`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> LabeledTree {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (f(u), f(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        LabeledTree { m: self.m, edges }
    }

    /// True iff no vertex has both a smaller and a larger neighbor.
    pub fn is_alternating(&self) -> bool {
        // (has smaller neighbor, has larger neighbor)
        let mut seen = vec![(false, false); self.m + 1];
        for &(u, v) in &self.edges {
            seen[u].1 = true;
            seen[v].0 = true;
        }
        seen.iter().all(|&(lo, hi)| !(lo && hi))
    }
}

/// Decode a Prüfer sequence of length `m - 2` over `1..=m`.
pub fn prufer_decode(seq: &[usize], m: usize) -> Result<LabeledTree> {
    if m < 2 {
        return Err(Error::InvalidPrufer(format!(
            "need at least 2 vertices, got {m}"
        )));
    }
    if seq.len() != m - 2 {
        return Err(Error::InvalidPrufer(format!(
            "length {} does not match {m} vertices",
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x == 0 || x > m) {
        return Err(Error::InvalidPrufer(format!("label {bad} outside 1..={m}")));
    }
    Ok(decode_unchecked(seq, m, &mut vec![0; m + 1]))
}

fn decode_unchecked(seq: &[usize], m: usize, degree: &mut [usize]) -> LabeledTree {
    degree.iter_mut().for_each(|d| *d = 1);
    degree[0] = 0;
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &x in seq {
        let leaf = (1..=m)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let mut rest = (1..=m).filter(|&v| degree[v] == 1);
    let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((u, v));
    edges.sort_unstable();
    LabeledTree { m, edges }
}

/// Every labeled tree on `1..=m`, one per Prüfer sequence.
pub fn all_labeled_trees(m: usize) -> Result<Vec<LabeledTree>> {
    if m < 2 {
        return Err(Error::InvalidPrufer(format!(
            "need at least 2 vertices, got {m}"
        )));
    }
    let mut out = Vec::new();
    for_each_tree(m, None, |t| out.push(t.clone()));
    Ok(out)
}

/// Visit the trees whose Prüfer sequence starts with `first` (all trees when
/// `first` is `None`).
fn for_each_tree(m: usize, first: Option<usize>, mut visit: impl FnMut(&LabeledTree)) {
    let len = m - 2;
    let mut seq = vec![1usize; len];
    if let Some(f) = first {
        seq[0] = f;
    }
    let fixed = usize::from(first.is_some());
    let mut degree = vec![0; m + 1];
    loop {
        visit(&decode_unchecked(&seq, m, &mut degree));
        // odometer over the free positions
        let mut i = len;
        loop {
            if i == fixed {
                return;
            }
            i -= 1;
            if seq[i] < m {
                seq[i] += 1;
                break;
            }
            seq[i] = 1;
        }
    }
}

/// Number of alternating trees on `1..=m`; `m = 1` counts the single vertex.
pub fn count_alternating_trees(m: usize) -> Result<BigInt> {
    count_alternating_trees_capped(m, DEFAULT_ORACLE_CAP)
}

pub fn count_alternating_trees_capped(m: usize, cap: usize) -> Result<BigInt> {
    if m > cap {
        return Err(Error::OracleScale { m, cap });
    }
    match m {
        0 => Err(Error::InvalidArgument(
            "a tree needs at least one vertex".into(),
        )),
        1 | 2 => Ok(BigInt::from(1)),
        _ => {
            let total: u64 = thread::scope(|s| {
                let workers: Vec<_> = (1..=m)
                    .map(|first| {
                        s.spawn(move || {
                            let mut count = 0u64;
                            for_each_tree(m, Some(first), |t| {
                                count += u64::from(t.is_alternating())
                            });
                            count
                        })
                    })
                    .collect();
                workers
                    .into_iter()
                    .map(|w| w.join().expect("worker panicked"))
                    .sum()
            });
            Ok(BigInt::from(total))
        }
    }
}
