//! The occurrence-counting engine.
//!
//! For one (pattern, sequence) pair the engine builds a leveled DAG whose
//! level-j nodes are the positions matching the j-th pattern item, with
//! edges wherever the gap window holds between adjacent levels. Nodes that
//! lie on no gap-feasible full path (lonely nodes) are pruned to a
//! fixpoint. Support is then computed by repeatedly extracting the
//! leftmost length-feasible full path, recording it as an occurrence, and
//! pruning its nodes; every extraction starts from the leftmost live root,
//! so the selected occurrence set is the lexicographically smallest
//! maximum non-overlapping set.
//!
//! The descent is leftmost-first with backtracking: with minlen > 1 the
//! plain leftmost child can dead-end even though a path further right
//! completes, and dead ends are only valid per root (the feasible span
//! window shifts with the root position), so they are remembered with a
//! per-root stamp rather than pruned globally.
//!
//! Every node creation, every node touched while scanning for the next
//! hop, and every prune increments the visited-node counter.

use crate::model::{
    GapConstraint, LengthConstraint, Occurrence, Pattern, Sequence, SequenceDatabase,
};

/// One (level, position) node. `children` and `parents` hold indices into
/// the adjacent levels' node lists, ascending by position.
#[derive(Debug, Clone)]
pub struct NettreeNode {
    position: usize,
    children: Vec<usize>,
    parents: Vec<usize>,
    pruned: bool,
    live_children: usize,
    live_parents: usize,
}

impl NettreeNode {
    fn new(position: usize) -> Self {
        NettreeNode {
            position,
            children: Vec::new(),
            parents: Vec::new(),
            pruned: false,
            live_children: 0,
            live_parents: 0,
        }
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn children(&self) -> &[usize] {
        &self.children
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }
}

/// The leveled DAG for one (pattern, sequence) pair plus its visited-node
/// counter. Private to one support computation; not meant to be shared.
#[derive(Debug, Clone)]
pub struct Nettree {
    levels: Vec<Vec<NettreeNode>>,
    visited: u64,
}

impl Nettree {
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, level: usize) -> &[NettreeNode] {
        &self.levels[level]
    }

    /// All positions ever created at a level, pruned or not.
    pub fn positions(&self, level: usize) -> Vec<usize> {
        self.levels[level].iter().map(|n| n.position).collect()
    }

    /// Positions of the unpruned nodes at a level.
    pub fn live_positions(&self, level: usize) -> Vec<usize> {
        self.levels[level]
            .iter()
            .filter(|n| !n.pruned)
            .map(|n| n.position)
            .collect()
    }

    pub fn visited_nodes(&self) -> u64 {
        self.visited
    }

    /// Prunes a node and cascades: a prune may leave neighbours without any
    /// live parent (level > 1) or live child (level < m), which are then
    /// pruned too, until a fixpoint.
    fn prune_cascade(&mut self, level: usize, idx: usize) {
        if self.levels[level][idx].pruned {
            return;
        }
        let last = self.levels.len() - 1;
        let mut stack = vec![(level, idx)];
        self.levels[level][idx].pruned = true;
        while let Some((l, i)) = stack.pop() {
            self.visited += 1;
            if l > 0 {
                let parents = self.levels[l][i].parents.clone();
                for pi in parents {
                    let parent = &mut self.levels[l - 1][pi];
                    if parent.pruned {
                        continue;
                    }
                    parent.live_children -= 1;
                    if parent.live_children == 0 {
                        parent.pruned = true;
                        stack.push((l - 1, pi));
                    }
                }
            }
            if l < last {
                let children = self.levels[l][i].children.clone();
                for ci in children {
                    let child = &mut self.levels[l + 1][ci];
                    if child.pruned {
                        continue;
                    }
                    child.live_parents -= 1;
                    if child.live_parents == 0 {
                        child.pruned = true;
                        stack.push((l + 1, ci));
                    }
                }
            }
        }
    }
}

/// Result of one per-sequence support computation: the greedy-selected
/// pairwise non-overlapping occurrence set and the visited-node count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportResult {
    pub support: u64,
    pub occurrences: Vec<Occurrence>,
    pub visited_nodes: u64,
}

/// Database-level support: sum of per-sequence supports and counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DbSupport {
    pub support: u64,
    pub visited_nodes: u64,
}

/// Builds the Nettree of `pat` over `seq`: populates one node per matching
/// position per level, connects adjacent levels where the gap window
/// holds, and prunes lonely nodes to a fixpoint. If some pattern item has
/// no matching position the cascade empties the tree and the downstream
/// support is 0.
///
/// Edge existence depends only on the gap window; the length window is
/// enforced during path extraction, so `len` does not affect the structure.
pub fn build_nettree(
    seq: &Sequence,
    pat: &Pattern,
    gap: GapConstraint,
    _len: LengthConstraint,
) -> Nettree {
    let m = pat.len();
    let mut visited = 0u64;
    let mut levels: Vec<Vec<NettreeNode>> = Vec::with_capacity(m);
    for &item in pat.items() {
        let nodes: Vec<NettreeNode> = seq
            .items()
            .iter()
            .enumerate()
            .filter(|(_, &it)| it == item)
            .map(|(i, _)| NettreeNode::new(i + 1))
            .collect();
        visited += nodes.len() as u64;
        levels.push(nodes);
    }

    for j in 0..m.saturating_sub(1) {
        let (left, right) = levels.split_at_mut(j + 1);
        let upper = &mut left[j];
        let lower = &mut right[0];
        let mut start = 0usize;
        for (i, node) in upper.iter_mut().enumerate() {
            let lo = node.position.saturating_add(1 + gap.mingap());
            let hi = node.position.saturating_add(1 + gap.maxgap());
            while start < lower.len() && lower[start].position < lo {
                start += 1;
            }
            let mut t = start;
            while t < lower.len() && lower[t].position <= hi {
                node.children.push(t);
                lower[t].parents.push(i);
                t += 1;
            }
            node.live_children = node.children.len();
        }
        for node in lower.iter_mut() {
            node.live_parents = node.parents.len();
        }
    }

    let mut tree = Nettree { levels, visited };
    let last = m - 1;
    for l in 0..m {
        for i in 0..tree.levels[l].len() {
            let node = &tree.levels[l][i];
            if node.pruned {
                continue;
            }
            let lonely = (l > 0 && node.live_parents == 0) || (l < last && node.live_children == 0);
            if lonely {
                tree.prune_cascade(l, i);
            }
        }
    }
    tree
}

struct PathSearch<'a> {
    tree: &'a mut Nettree,
    dead: &'a mut Vec<Vec<u32>>,
    stamp: u32,
    root_pos: usize,
    last: usize,
    mingap: usize,
    maxgap: usize,
    minlen: usize,
    maxlen: usize,
}

impl PathSearch<'_> {
    /// Extends `path` (node indices per level, root already pushed) to the
    /// last level along the leftmost feasible children, backtracking where
    /// the span window cannot be met. Returns true when a full path with
    /// span in [minlen, maxlen] is found.
    fn descend(&mut self, level: usize, idx: usize, path: &mut Vec<usize>) -> bool {
        if level == self.last {
            return true;
        }
        let child_count = self.tree.levels[level][idx].children.len();
        for ci in 0..child_count {
            let child_idx = self.tree.levels[level][idx].children[ci];
            self.tree.visited += 1;
            let child = &self.tree.levels[level + 1][child_idx];
            let pos = child.position;
            let pruned = child.pruned;
            let span = pos - self.root_pos + 1;
            let remaining = self.last - (level + 1);
            // children ascend, so overshooting maxlen ends the scan
            if span + remaining.saturating_mul(1 + self.mingap) > self.maxlen {
                break;
            }
            if level + 1 == self.last {
                if span < self.minlen {
                    continue; // scan rightward until minlen is reachable
                }
                if pruned {
                    continue;
                }
                path.push(child_idx);
                return true;
            }
            // even maximal advances cannot reach minlen through this child
            if span + remaining.saturating_mul(1 + self.maxgap) < self.minlen {
                continue;
            }
            if pruned || self.dead[level + 1][child_idx] == self.stamp {
                continue;
            }
            path.push(child_idx);
            if self.descend(level + 1, child_idx, path) {
                return true;
            }
            path.pop();
            self.dead[level + 1][child_idx] = self.stamp;
        }
        false
    }
}

/// Computes the non-overlapping support of `pat` in `seq` together with
/// the selected occurrence set, by iterating roots left to right over the
/// pruned Nettree and extracting one full path per root.
pub fn netgap_support(
    seq: &Sequence,
    pat: &Pattern,
    gap: GapConstraint,
    len: LengthConstraint,
) -> SupportResult {
    let mut tree = build_nettree(seq, pat, gap, len);
    let m = pat.len();

    // A 1-pattern degenerates to one level: support is the match count
    // (zero if the unit span cannot meet minlen), one visit per match.
    if m == 1 {
        let occurrences: Vec<Occurrence> = if len.admits_span(1) {
            tree.levels[0]
                .iter()
                .map(|n| Occurrence::new(seq.sid(), vec![n.position]))
                .collect()
        } else {
            Vec::new()
        };
        return SupportResult {
            support: occurrences.len() as u64,
            occurrences,
            visited_nodes: tree.visited,
        };
    }

    let mut occurrences = Vec::new();
    // the shortest possible span already exceeds maxlen: nothing to scan
    let min_span = 1 + (m - 1).saturating_mul(1 + gap.mingap());
    if min_span <= len.maxlen() {
        let mut dead: Vec<Vec<u32>> = tree.levels.iter().map(|l| vec![0; l.len()]).collect();
        let mut stamp = 0u32;
        for root_idx in 0..tree.levels[0].len() {
            tree.visited += 1;
            if tree.levels[0][root_idx].pruned {
                continue;
            }
            stamp += 1;
            let root_pos = tree.levels[0][root_idx].position;
            let mut path = vec![root_idx];
            let mut search = PathSearch {
                tree: &mut tree,
                dead: &mut dead,
                stamp,
                root_pos,
                last: m - 1,
                mingap: gap.mingap(),
                maxgap: gap.maxgap(),
                minlen: len.minlen(),
                maxlen: len.maxlen(),
            };
            if search.descend(0, root_idx, &mut path) {
                let positions: Vec<usize> = path
                    .iter()
                    .enumerate()
                    .map(|(l, &i)| tree.levels[l][i].position)
                    .collect();
                occurrences.push(Occurrence::new(seq.sid(), positions));
                for (l, &i) in path.iter().enumerate() {
                    tree.prune_cascade(l, i);
                }
            }
        }
    }

    SupportResult {
        support: occurrences.len() as u64,
        occurrences,
        visited_nodes: tree.visited,
    }
}

/// Sum of per-sequence supports and visited-node counters over the
/// database.
pub fn db_support(
    db: &SequenceDatabase,
    pat: &Pattern,
    gap: GapConstraint,
    len: LengthConstraint,
) -> DbSupport {
    let mut total = DbSupport::default();
    for seq in db.sequences() {
        let r = netgap_support(seq, pat, gap, len);
        total.support += r.support;
        total.visited_nodes += r.visited_nodes;
    }
    total
}
