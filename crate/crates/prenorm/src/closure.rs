//! Congruence closure on finite carriers: plain equivalences, preorders,
//! monoid congruences (two-sided translation-compatible equivalences), and
//! groupoid congruences (composition-compatible after endpoint merging).
//!
//! All closures run a worklist to a fixpoint over an explicit carrier, so
//! results are exact, deterministic, and independent of seed order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CongruenceKind {
    Equivalence,
    Preorder,
    Monoid,
    Groupoid,
}

/// A closed relation on `0..carrier_size` of the stated kind. For every kind
/// except `Preorder` the pair set is an equivalence relation; quotients are
/// only defined for those kinds.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Congruence {
    pub kind: CongruenceKind,
    pub carrier_size: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Congruence {
    pub fn relates(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    /// True when the relation is the diagonal.
    pub fn is_discrete(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a == b)
    }

    /// Partition into classes, ordered by minimal representative. Panics on
    /// `Preorder` kind, which is not symmetric.
    pub fn partition(&self) -> Partition {
        assert!(
            self.kind != CongruenceKind::Preorder,
            "preorder closures do not partition the carrier"
        );
        let mut uf = UnionFind::new(self.carrier_size);
        for &(a, b) in &self.pairs {
            uf.union(a, b);
        }
        uf.partition()
    }
}

/// A partition of `0..n`: `class_of[x]` is the class index of `x`, classes
/// numbered by ascending minimal representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rep(&self, class: usize) -> usize {
        self.members[class][0]
    }
}

/// Union-find with path compression; no union-by-rank so that roots stay
/// deterministic (the smaller element wins, keeping minimal representatives).
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when the call actually merged two classes.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn partition(&mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        let mut reps: Vec<usize> = roots
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        reps.sort_unstable();
        let mut class_of = vec![0; n];
        let mut members = vec![Vec::new(); reps.len()];
        for x in 0..n {
            let class = reps.binary_search(&roots[x]).unwrap();
            class_of[x] = class;
            members[class].push(x);
        }
        Partition { class_of, members }
    }

    fn pairs(&mut self) -> BTreeSet<(usize, usize)> {
        let part = self.partition();
        let mut pairs = BTreeSet::new();
        for class in &part.members {
            for &a in class {
                for &b in class {
                    pairs.insert((a, b));
                }
            }
        }
        pairs
    }
}

/// Smallest equivalence relation containing the seed.
pub fn smallest_equivalence(n: usize, seed: &[(usize, usize)]) -> Congruence {
    let mut uf = UnionFind::new(n);
    for &(a, b) in seed {
        uf.union(a, b);
    }
    Congruence {
        kind: CongruenceKind::Equivalence,
        carrier_size: n,
        pairs: uf.pairs(),
    }
}

/// Smallest preorder (reflexive + transitive) containing the seed.
pub fn preorder_closure(n: usize, seed: &[(usize, usize)]) -> Congruence {
    let mut rel = vec![false; n * n];
    for x in 0..n {
        rel[x * n + x] = true;
    }
    for &(a, b) in seed {
        rel[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rel[i * n + j])
        .collect();
    Congruence {
        kind: CongruenceKind::Preorder,
        carrier_size: n,
        pairs,
    }
}

/// Smallest monoid congruence on `0..n` (with multiplication `table`,
/// row-major) containing the seed: an equivalence compatible with
/// translation on both sides.
pub fn smallest_monoid_congruence(
    n: usize,
    table: &[usize],
    seed: &[(usize, usize)],
) -> Congruence {
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = seed.to_vec();
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        // A fresh merge propagates through both translations; the worklist
        // re-checks pairs that may already be merged, which is harmless.
        for c in 0..n {
            work.push((table[a * n + c], table[b * n + c]));
            work.push((table[c * n + a], table[c * n + b]));
        }
    }
    Congruence {
        kind: CongruenceKind::Monoid,
        carrier_size: n,
        pairs: uf.pairs(),
    }
}

/// Borrowed view of a groupoid's arrow tables. Arrows are the carrier;
/// objects are represented by their identity arrows. `comp[a * n + b]` is the
/// diagrammatic composite "a then b" where defined.
#[derive(Clone, Copy)]
pub struct GroupoidView<'a> {
    pub n: usize,
    pub src: &'a [usize],
    pub tgt: &'a [usize],
    pub inv: &'a [usize],
    pub comp: &'a [Option<usize>],
}

impl<'a> GroupoidView<'a> {
    pub fn is_identity(&self, a: usize) -> bool {
        self.src[a] == a && self.tgt[a] == a
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.comp[a * self.n + b]
    }

    pub fn identities(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.is_identity(a)).collect()
    }
}

/// Smallest groupoid congruence containing the seed: an equivalence on
/// arrows that merges endpoint objects of related arrows and is compatible
/// with composition through arrows already identified with identities.
///
/// The fixpoint alternates three rules until stable: endpoints of related
/// arrows merge as objects; inverses of related arrows are related; and for
/// arrows a, b composable in the quotient, all composites `a · κ · b` over
/// identity-class connectors κ (and over representatives of the classes of a
/// and b) land in one class.
pub fn groupoid_congruence(g: GroupoidView<'_>, seed: &[(usize, usize)]) -> Congruence {
    let n = g.n;
    let mut arrows = UnionFind::new(n);
    let mut objects = UnionFind::new(n);
    for &(a, b) in seed {
        arrows.union(a, b);
    }
    loop {
        let mut changed = false;
        // Endpoints of related arrows name the same quotient objects.
        for a in 0..n {
            for b in (a + 1)..n {
                if arrows.same(a, b) {
                    changed |= objects.union(g.src[a], g.src[b]);
                    changed |= objects.union(g.tgt[a], g.tgt[b]);
                    changed |= arrows.union(g.inv[a], g.inv[b]);
                }
            }
        }
        // Arrows merged with an identity become quotient identities, hence
        // usable as connectors between merged endpoints.
        let connector: Vec<bool> = {
            let ids = g.identities();
            (0..n)
                .map(|a| ids.iter().any(|&i| arrows.same(a, i)))
                .collect()
        };
        // Quotient composition: every way of composing representatives of
        // [a] and [b] through a connector must agree.
        let mut buckets: std::collections::BTreeMap<(usize, usize), usize> =
            std::collections::BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                if objects.find(g.tgt[a]) != objects.find(g.src[b]) {
                    continue;
                }
                for k in 0..n {
                    if !connector[k] || g.src[k] != g.tgt[a] || g.tgt[k] != g.src[b] {
                        continue;
                    }
                    let Some(ak) = g.compose(a, k) else { continue };
                    let Some(akb) = g.compose(ak, b) else {
                        continue;
                    };
                    let key = (arrows.find(a), arrows.find(b));
                    match buckets.get(&key) {
                        Some(&rep) => changed |= arrows.union(rep, akb),
                        None => {
                            buckets.insert(key, akb);
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Congruence {
        kind: CongruenceKind::Groupoid,
        carrier_size: n,
        pairs: arrows.pairs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: intersect every relation on `0..n` that contains
    /// the seed and is closed under the kind's rules. Only feasible for tiny
    /// carriers, which is exactly where it is used.
    fn oracle_smallest(
        n: usize,
        seed: &[(usize, usize)],
        closed: impl Fn(&BTreeSet<(usize, usize)>) -> bool,
    ) -> BTreeSet<(usize, usize)> {
        let all_pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .collect();
        let m = all_pairs.len();
        let mut best: Option<BTreeSet<(usize, usize)>> = None;
        for mask in 0..(1u32 << m) {
            let rel: BTreeSet<(usize, usize)> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            if !seed.iter().all(|p| rel.contains(p)) || !closed(&rel) {
                continue;
            }
            best = match best {
                None => Some(rel),
                Some(b) => Some(if rel.len() < b.len() { rel } else { b }),
            };
        }
        best.expect("the full relation is always closed")
    }

    fn is_equivalence(n: usize, rel: &BTreeSet<(usize, usize)>) -> bool {
        (0..n).all(|x| rel.contains(&(x, x)))
            && rel.iter().all(|&(a, b)| rel.contains(&(b, a)))
            && rel
                .iter()
                .all(|&(a, b)| rel.iter().all(|&(c, d)| c != b || rel.contains(&(a, d))))
    }

    #[test]
    fn equivalence_closure_matches_bruteforce_intersection() {
        // Oracle values computed by intersecting all closed relations on a
        // 3-element carrier; frozen through the assertions below.
        let n = 3;
        for seed in [vec![], vec![(0, 1)], vec![(0, 1), (1, 2)], vec![(2, 0)]] {
            let got = smallest_equivalence(n, &seed);
            let want = oracle_smallest(n, &seed, |rel| is_equivalence(n, rel));
            assert_eq!(got.pairs, want, "seed {seed:?}");
        }
    }

    #[test]
    fn empty_seed_gives_diagonal() {
        let c = smallest_equivalence(4, &[]);
        assert!(c.is_discrete());
        assert_eq!(c.pairs.len(), 4);
    }

    #[test]
    fn preorder_closure_chains() {
        let c = preorder_closure(3, &[(0, 1), (1, 2)]);
        assert!(c.relates(0, 2));
        assert!(!c.relates(2, 0));
        assert_eq!(c.pairs.len(), 6);
    }

    #[test]
    fn monoid_congruence_on_z4_seed_0_2() {
        // Z4 under addition; the oracle is the brute-force intersection of
        // all translation-closed equivalences containing {(0,2)}. Expected
        // classes: {0,2} and {1,3}.
        let n = 4;
        let table: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        let got = smallest_monoid_congruence(n, &table, &[(0, 2)]);
        let part = got.partition();
        assert_eq!(part.members, vec![vec![0, 2], vec![1, 3]]);

        let closed = |rel: &BTreeSet<(usize, usize)>| {
            is_equivalence(n, rel)
                && rel.iter().all(|&(a, b)| {
                    (0..n).all(|c| {
                        rel.contains(&(table[a * n + c], table[b * n + c]))
                            && rel.contains(&(table[c * n + a], table[c * n + b]))
                    })
                })
        };
        let want = oracle_smallest(n, &[(0, 2)], closed);
        assert_eq!(got.pairs, want);
    }

    #[test]
    fn monoid_congruence_closure_is_idempotent() {
        let n = 4;
        let table: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        let once = smallest_monoid_congruence(n, &table, &[(1, 3)]);
        let seed: Vec<(usize, usize)> = once.pairs.iter().copied().collect();
        let twice = smallest_monoid_congruence(n, &table, &seed);
        assert_eq!(once, twice);
    }

    #[test]
    fn groupoid_congruence_collapsing_z2_loop() {
        // One object, arrows {id, s} with s·s = id. Killing s (relating it
        // to the identity) must collapse both arrows into one class.
        let src = vec![0, 0];
        let tgt = vec![0, 0];
        let inv = vec![0, 1];
        let comp = vec![Some(0), Some(1), Some(1), Some(0)];
        let g = GroupoidView {
            n: 2,
            src: &src,
            tgt: &tgt,
            inv: &inv,
            comp: &comp,
        };
        let c = groupoid_congruence(g, &[(1, 0)]);
        assert!(c.relates(0, 1));
    }

    #[test]
    fn groupoid_congruence_keeps_disconnected_identities_apart() {
        // Two isolated objects: relating nothing keeps the two identity
        // arrows in distinct classes even though both are identities.
        let src = vec![0, 1];
        let tgt = vec![0, 1];
        let inv = vec![0, 1];
        let comp = vec![Some(0), None, None, Some(1)];
        let g = GroupoidView {
            n: 2,
            src: &src,
            tgt: &tgt,
            inv: &inv,
            comp: &comp,
        };
        let c = groupoid_congruence(g, &[]);
        assert!(!c.relates(0, 1));
    }
}
