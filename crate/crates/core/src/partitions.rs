//! Partitions, tuples of partitions and the constraint set `c_0(λ)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config(format!("{parts:?} is not a partition")));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `k` (0-based), zero past the end.
    pub fn part(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Conjugate partition.
    pub fn transpose(&self) -> Self {
        let width = self.part(0);
        Self((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// Partitions obtained by adding one box.
    pub fn add_box(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for row in 0..=self.len() {
            if row == 0 || self.part(row) < self.part(row - 1) {
                let mut parts = self.0.clone();
                if row == parts.len() {
                    parts.push(1);
                } else {
                    parts[row] += 1;
                }
                out.push(Self(parts));
            }
        }
        out
    }

    /// All partitions of `size` with at most `max_len` parts, largest part
    /// first in reverse-lexicographic order.
    pub fn all_of_size(size: usize, max_len: usize) -> Vec<Self> {
        fn rec(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, max_len, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `(ρ^(1), …, ρ^(n))`, one partition per non-zero node.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionTuple(Vec<Partition>);

impl PartitionTuple {
    pub fn new(components: Vec<Partition>) -> Self {
        Self(components)
    }

    pub fn empty(rank: usize) -> Self {
        Self(vec![Partition::empty(); rank])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|c_0| = Σ |ρ^(i)|`.
    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// Whether `ℓ(ρ^(i)) ≤ caps[i]` for all `i`, i.e. membership in `c_0(λ)`.
    pub fn fits(&self, caps: &[usize]) -> bool {
        self.0.len() == caps.len() && self.0.iter().zip(caps).all(|(p, &c)| p.len() <= c)
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Compositions of `total` into `slots` non-negative parts, first slot
/// largest first.
fn compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every tuple with `ℓ(ρ^(i)) ≤ caps[i]` and `|c_0| ≤ max_size`.
///
/// Ordered by total size, then by the composition of sizes (first colour
/// largest first), then reverse-lexicographically within each colour.
pub fn enumerate_c0(caps: &[usize], max_size: usize) -> Vec<PartitionTuple> {
    let mut out = Vec::new();
    for total in 0..=max_size {
        for sizes in compositions(total, caps.len()) {
            let choices: Vec<Vec<Partition>> = sizes
                .iter()
                .zip(caps)
                .map(|(&s, &cap)| Partition::all_of_size(s, cap))
                .collect();
            let product = choices.iter().fold(vec![Vec::new()], |acc, options| {
                acc.into_iter()
                    .flat_map(|prefix: Vec<Partition>| {
                        options.iter().map(move |p| {
                            let mut t = prefix.clone();
                            t.push(p.clone());
                            t
                        })
                    })
                    .collect()
            });
            out.extend(product.into_iter().map(PartitionTuple));
        }
    }
    out
}

/// All tuples of `rank` partitions with `|c_0| ≤ max_size`, ignoring length
/// constraints.
pub fn enumerate_all_tuples(rank: usize, max_size: usize) -> Vec<PartitionTuple> {
    enumerate_c0(&vec![usize::MAX; rank], max_size)
}
