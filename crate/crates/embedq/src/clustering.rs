//! Bottom-up agglomerative clustering producing a flat c-cluster partition.
//!
//! Each step merges the active pair with the globally minimal linkage
//! dissimilarity. Ties are broken by the lexicographically smallest
//! (min member index, max member index) over the two clusters' smallest
//! members, which makes merge order deterministic across platforms and thread
//! counts. Dissimilarities live in an O(n^2) condensed store; cached nearest
//! neighbors keep the merge loop near O(n^2) overall.

use rayon::prelude::*;

use crate::data::{euclid, sq_dist, DataMatrix};
use crate::error::{Error, Result};

/// Samples above this count are rejected by [`agglomerate`]; supervised mode
/// has no such limit.
pub const DEFAULT_CLUSTERING_CAP: usize = 20_000;

/// Cluster-pair dissimilarity rule driving the merges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linkage {
    /// Minimum pairwise distance between members.
    Single,
    /// Maximum pairwise distance between members.
    Complete,
    /// Unweighted mean of pairwise distances (UPGMA).
    Average,
    /// Ward variance criterion on Euclidean distances.
    #[default]
    Ward,
}

impl Linkage {
    /// Ward's recurrence works on squared distances.
    fn squared_domain(self) -> bool {
        matches!(self, Linkage::Ward)
    }
}

/// One merge step: the two cluster node ids joined, the linkage dissimilarity
/// at which they merged, and the size of the new cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub distance: f64,
    pub size: usize,
}

/// A full stepwise dendrogram over n leaves.
///
/// Node ids 0..n-1 are leaves; merge t creates node n+t. Merge distances are
/// non-decreasing for the supported (reducible) linkages.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    n: usize,
    merges: Vec<Merge>,
}

impl Dendrogram {
    /// Leaf count.
    pub fn len(&self) -> usize {
        self.n
    }

    /// True for a zero-leaf dendrogram (never produced by [`agglomerate`]).
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The n-1 merge steps in execution order.
    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }
}

/// Builds the full dendrogram of `x` under `linkage` with the default
/// sample cap.
pub fn agglomerate(x: &DataMatrix, linkage: Linkage) -> Result<Dendrogram> {
    agglomerate_with_cap(x, linkage, DEFAULT_CLUSTERING_CAP)
}

/// [`agglomerate`] with an explicit sample cap guarding the O(n^2)
/// dissimilarity store.
pub fn agglomerate_with_cap(x: &DataMatrix, linkage: Linkage, cap: usize) -> Result<Dendrogram> {
    let n = x.rows();
    if n < 2 {
        return Err(Error::TooFewSamples { n });
    }
    if n > cap {
        return Err(Error::ClusteringTooLarge { n, cap });
    }

    let mut state = MergeState::new(x, linkage);
    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..n - 1 {
        merges.push(state.merge_best(n + step));
    }
    Ok(Dendrogram { n, merges })
}

/// Cuts a dendrogram into exactly `c` clusters by undoing the last c-1
/// merges. Groups are labeled 0..c-1 in order of their smallest member index.
pub fn cut(d: &Dendrogram, c: usize) -> Result<crate::data::ClusterAssignment> {
    let n = d.len();
    if c == 0 || c > n {
        return Err(Error::InvalidClusterCount { c, n });
    }
    // Union-find over leaves, replaying the first n-c merges.
    let mut parent: Vec<usize> = (0..2 * n - 1).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (t, m) in d.merges[..n - c].iter().enumerate() {
        let node = n + t;
        let l = find(&mut parent, m.left);
        let r = find(&mut parent, m.right);
        parent[l] = node;
        parent[r] = node;
    }

    let mut group_of_root: Vec<Option<usize>> = vec![None; 2 * n - 1];
    let mut labels = vec![0usize; n];
    let mut next = 0usize;
    for (leaf, label) in labels.iter_mut().enumerate() {
        let root = find(&mut parent, leaf);
        *label = *group_of_root[root].get_or_insert_with(|| {
            let g = next;
            next += 1;
            g
        });
    }
    debug_assert_eq!(next, c);
    crate::data::ClusterAssignment::new(labels)
}

/// Candidate key for the next merge: dissimilarity first, then the
/// lexicographic (min member, max member) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Key {
    w: f64,
    lo: usize,
    hi: usize,
}

impl Key {
    fn new(w: f64, mm_a: usize, mm_b: usize) -> Key {
        Key {
            w,
            lo: mm_a.min(mm_b),
            hi: mm_a.max(mm_b),
        }
    }

    fn beats(&self, other: &Key) -> bool {
        if self.w != other.w {
            return self.w < other.w;
        }
        (self.lo, self.hi) < (other.lo, other.hi)
    }
}

struct MergeState {
    linkage: Linkage,
    n: usize,
    /// Condensed dissimilarity store, indexed by slot pair (i < j).
    dis: Vec<f64>,
    active: Vec<usize>,
    size: Vec<usize>,
    /// Smallest original sample index inside each slot's cluster.
    min_member: Vec<usize>,
    node_id: Vec<usize>,
    /// Best partner per active slot under `Key` ordering.
    nn: Vec<Option<(Key, usize)>>,
}

impl MergeState {
    fn new(x: &DataMatrix, linkage: Linkage) -> MergeState {
        let n = x.rows();
        let mut dis = vec![0.0; n * (n - 1) / 2];
        let squared = linkage.squared_domain();
        // Row i owns the strip of pairs (i, i+1..n); fill strips in parallel.
        {
            let mut strips: Vec<(usize, &mut [f64])> = Vec::with_capacity(n);
            let mut rest = dis.as_mut_slice();
            for i in 0..n {
                let (head, tail) = rest.split_at_mut(n - 1 - i);
                strips.push((i, head));
                rest = tail;
            }
            strips.into_par_iter().for_each(|(i, strip)| {
                for (off, slot) in strip.iter_mut().enumerate() {
                    let j = i + 1 + off;
                    *slot = if squared {
                        sq_dist(x.row(i), x.row(j))
                    } else {
                        euclid(x.row(i), x.row(j))
                    };
                }
            });
        }

        let mut state = MergeState {
            linkage,
            n,
            dis,
            active: (0..n).collect(),
            size: vec![1; n],
            min_member: (0..n).collect(),
            node_id: (0..n).collect(),
            nn: vec![None; n],
        };
        for idx in 0..n {
            state.nn[idx] = state.scan_best(idx);
        }
        state
    }

    fn dist(&self, a: usize, b: usize) -> f64 {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.dis[strip_offset(self.n, i) + (j - i - 1)]
    }

    fn set_dist(&mut self, a: usize, b: usize, v: f64) {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.dis[strip_offset(self.n, i) + (j - i - 1)] = v;
    }

    fn key(&self, a: usize, b: usize) -> Key {
        Key::new(self.dist(a, b), self.min_member[a], self.min_member[b])
    }

    /// Best partner for `slot` over all other active slots.
    fn scan_best(&self, slot: usize) -> Option<(Key, usize)> {
        let mut best: Option<(Key, usize)> = None;
        for &other in &self.active {
            if other == slot {
                continue;
            }
            let k = self.key(slot, other);
            if best.as_ref().is_none_or(|(bk, _)| k.beats(bk)) {
                best = Some((k, other));
            }
        }
        best
    }

    /// Merges the globally best pair and returns the recorded step.
    fn merge_best(&mut self, new_node: usize) -> Merge {
        let mut best: Option<(Key, usize, usize)> = None;
        for &slot in &self.active {
            if let Some((k, partner)) = self.nn[slot] {
                if best.as_ref().is_none_or(|(bk, _, _)| k.beats(bk)) {
                    best = Some((k, slot, partner));
                }
            }
        }
        let (key, s1, s2) = best.expect("at least two active clusters");
        let (keep, drop) = (s1.min(s2), s1.max(s2));

        let recorded = if self.linkage.squared_domain() {
            key.w.max(0.0).sqrt()
        } else {
            key.w
        };
        let merge = Merge {
            left: self.node_id[keep].min(self.node_id[drop]),
            right: self.node_id[keep].max(self.node_id[drop]),
            distance: recorded,
            size: self.size[keep] + self.size[drop],
        };

        // Lance-Williams update of every surviving dissimilarity, into `keep`.
        let (size_a, size_b) = (self.size[keep] as f64, self.size[drop] as f64);
        let d_ab = key.w;
        let others: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&s| s != keep && s != drop)
            .collect();
        for &x in &others {
            let d_ax = self.dist(keep, x);
            let d_bx = self.dist(drop, x);
            let updated = match self.linkage {
                Linkage::Single => d_ax.min(d_bx),
                Linkage::Complete => d_ax.max(d_bx),
                Linkage::Average => (size_a * d_ax + size_b * d_bx) / (size_a + size_b),
                Linkage::Ward => {
                    let size_x = self.size[x] as f64;
                    let total = size_a + size_b + size_x;
                    ((size_a + size_x) * d_ax + (size_b + size_x) * d_bx - size_x * d_ab) / total
                }
            };
            self.set_dist(keep, x, updated);
        }

        self.size[keep] += self.size[drop];
        self.min_member[keep] = self.min_member[keep].min(self.min_member[drop]);
        self.node_id[keep] = new_node;
        self.active.retain(|&s| s != drop);
        self.nn[drop] = None;

        if self.active.len() > 1 {
            self.nn[keep] = self.scan_best(keep);
            for &x in &others {
                let stale = match self.nn[x] {
                    Some((_, partner)) => partner == keep || partner == drop,
                    None => true,
                };
                if stale {
                    self.nn[x] = self.scan_best(x);
                } else {
                    // The merged cluster may have become x's new best partner.
                    let k = self.key(x, keep);
                    if self.nn[x].as_ref().is_none_or(|(bk, _)| k.beats(bk)) {
                        self.nn[x] = Some((k, keep));
                    }
                }
            }
        } else {
            self.nn[keep] = None;
        }
        merge
    }
}

/// Offset of row i's strip in the condensed store.
fn strip_offset(n: usize, i: usize) -> usize {
    // sum_{r<i} (n-1-r)
    i * (n - 1) - i * (i.saturating_sub(1)) / 2
}
