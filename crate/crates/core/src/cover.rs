//! Covering instances and the exact minimum set cover solver.
//!
//! A subgroup contains `g` iff it contains `<g>`, so covering one generator of
//! every maximal cyclic subgroup covers the whole group. The solver first
//! applies the classical reductions (forced candidates, dominated targets,
//! dominated candidates) and then runs a depth-first branch and bound that
//! branches on the target with the fewest remaining candidates.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::group::{Elem, Group};
use crate::lattice::{cyclic_subgroups, maximal_cyclic_subgroups};
use crate::subgroup::Subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    FullGroup,
    CosetRestricted,
}

#[derive(Clone, Debug)]
pub struct CoverInstance {
    /// One generator element per target cyclic subgroup.
    pub universe: Vec<Elem>,
    pub candidates: Vec<Subgroup>,
    /// `hits[c]` is the set of targets contained in candidate `c`.
    pub hits: Vec<FixedBitSet>,
    pub origin: Origin,
}

impl CoverInstance {
    /// Targets: generators of the maximal cyclic subgroups of `g`, or, when
    /// `restrict` is given, of the cyclic subgroups generated by elements of
    /// `restrict` that are maximal among those.
    pub fn build(g: &Group, candidates: Vec<Subgroup>, restrict: Option<&FixedBitSet>) -> Self {
        let (universe, origin) = match restrict {
            None => (
                maximal_cyclic_subgroups(g)
                    .into_iter()
                    .map(|c| c.generator)
                    .collect(),
                Origin::FullGroup,
            ),
            Some(r) => (restricted_targets(g, r), Origin::CosetRestricted),
        };
        CoverInstance::from_parts(universe, candidates, origin)
    }

    pub fn from_parts(universe: Vec<Elem>, candidates: Vec<Subgroup>, origin: Origin) -> Self {
        let hits = candidates
            .iter()
            .map(|c| {
                let mut h = FixedBitSet::with_capacity(universe.len());
                for (t, &x) in universe.iter().enumerate() {
                    if c.contains(x) {
                        h.insert(t);
                    }
                }
                h
            })
            .collect();
        CoverInstance {
            universe,
            candidates,
            hits,
            origin,
        }
    }

    /// Every target is hit by some candidate.
    pub fn is_feasible(&self) -> bool {
        let mut all = FixedBitSet::with_capacity(self.universe.len());
        for h in &self.hits {
            all.union_with(h);
        }
        all.count_ones(..) == self.universe.len()
    }
}

fn restricted_targets(g: &Group, restrict: &FixedBitSet) -> Vec<Elem> {
    let cyc = cyclic_subgroups(g);
    let mut gen_of = vec![usize::MAX; g.len()];
    for (i, c) in cyc.iter().enumerate() {
        for x in c.members.ones() {
            if g.elem_order(x) == c.order {
                gen_of[x] = i;
            }
        }
    }
    let mut picked: Vec<usize> = Vec::new();
    let mut seen = vec![false; cyc.len()];
    for x in restrict.ones() {
        if x == g.identity() {
            // the identity lies in every subgroup; track it as its own target
            continue;
        }
        let i = gen_of[x];
        if !seen[i] {
            seen[i] = true;
            picked.push(i);
        }
    }
    picked.sort_by_key(|&i| std::cmp::Reverse(cyc[i].order));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &picked {
        if !kept
            .iter()
            .any(|&j| cyc[j].order > cyc[i].order && cyc[j].members.contains(cyc[i].generator))
        {
            kept.push(i);
        }
    }
    let mut out: Vec<Elem> = kept.iter().map(|&i| cyc[i].generator).collect();
    if restrict.contains(g.identity()) {
        out.push(g.identity());
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug)]
pub struct CoverSolution {
    /// Best cover found (candidate indices), if any.
    pub witness: Option<Vec<usize>>,
    pub lower: usize,
    /// `usize::MAX` when infeasible.
    pub upper: usize,
    pub exact: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl CoverSolution {
    pub fn size(&self) -> Option<usize> {
        (self.exact && self.upper != usize::MAX).then_some(self.upper)
    }

    pub fn is_infeasible(&self) -> bool {
        self.exact && self.upper == usize::MAX
    }
}

/// Bitset over at most a few thousand bits, stored inline as words.
type Words = Vec<u64>;

fn words_from(bits: &FixedBitSet, keep: &[usize]) -> Words {
    let mut w = vec![0u64; keep.len().div_ceil(64)];
    for (i, &t) in keep.iter().enumerate() {
        if bits.contains(t) {
            w[i / 64] |= 1 << (i % 64);
        }
    }
    w
}

#[inline]
fn count(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

#[inline]
fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

fn ones(w: &[u64]) -> impl Iterator<Item = usize> + '_ {
    w.iter().enumerate().flat_map(|(k, &x)| {
        let mut x = x;
        std::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(k * 64 + b)
            }
        })
    })
}

/// Reduced instance: forced picks plus a residual problem over surviving
/// targets and candidates.
struct Reduced {
    forced: Vec<usize>,
    /// surviving original candidate ids
    cands: Vec<usize>,
    /// per surviving candidate, bitset over surviving targets
    hits: Vec<Words>,
    /// per surviving target, surviving candidate positions
    cands_of: Vec<Vec<usize>>,
    n_targets: usize,
}

fn reduce(n_targets: usize, hits: &[FixedBitSet]) -> Option<Reduced> {
    let n_cands = hits.len();
    let mut alive_t = FixedBitSet::with_capacity(n_targets);
    alive_t.insert_range(..);
    let mut alive_c = FixedBitSet::with_capacity(n_cands);
    alive_c.insert_range(..);
    let mut forced = Vec::new();
    // candidates per target
    let mut cand_sets: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n_cands); n_targets];
    for (c, h) in hits.iter().enumerate() {
        for t in h.ones() {
            cand_sets[t].insert(c);
        }
    }
    loop {
        let mut changed = false;
        // forced candidates and infeasibility
        for (t, cands) in cand_sets.iter().enumerate() {
            if !alive_t.contains(t) {
                continue;
            }
            let mut cs = cands.clone();
            cs.intersect_with(&alive_c);
            match cs.count_ones(..) {
                0 => return None,
                1 => {
                    let c = cs.ones().next().unwrap();
                    forced.push(c);
                    alive_c.set(c, false);
                    for u in hits[c].ones() {
                        alive_t.set(u, false);
                    }
                    changed = true;
                }
                _ => {}
            }
        }
        // dominated targets: covering t1 forces covering t2 when cands(t1) ⊆ cands(t2)
        let ts: Vec<usize> = alive_t.ones().collect();
        let restricted: Vec<FixedBitSet> = ts
            .iter()
            .map(|&t| {
                let mut s = cand_sets[t].clone();
                s.intersect_with(&alive_c);
                s
            })
            .collect();
        let sizes: Vec<usize> = restricted.iter().map(|s| s.count_ones(..)).collect();
        let mut removed = vec![false; ts.len()];
        for i in 0..ts.len() {
            for j in 0..ts.len() {
                if i == j || removed[j] || removed[i] || sizes[j] > sizes[i] {
                    continue;
                }
                // remove i if cands(j) ⊆ cands(i); ties keep the lower index
                if restricted[j].is_subset(&restricted[i]) && (sizes[j] < sizes[i] || j < i) {
                    removed[i] = true;
                    changed = true;
                }
            }
        }
        for (i, &t) in ts.iter().enumerate() {
            if removed[i] {
                alive_t.set(t, false);
            }
        }
        // dominated candidates
        let cs: Vec<usize> = alive_c.ones().collect();
        let restricted: Vec<FixedBitSet> = cs
            .iter()
            .map(|&c| {
                let mut s = hits[c].clone();
                s.intersect_with(&alive_t);
                s
            })
            .collect();
        let sizes: Vec<usize> = restricted.iter().map(|s| s.count_ones(..)).collect();
        let mut removed = vec![false; cs.len()];
        for i in 0..cs.len() {
            if sizes[i] == 0 {
                removed[i] = true;
                changed = true;
                continue;
            }
            for j in 0..cs.len() {
                if i == j || removed[j] || sizes[j] < sizes[i] {
                    continue;
                }
                if restricted[i].is_subset(&restricted[j]) && (sizes[i] < sizes[j] || j < i) {
                    removed[i] = true;
                    changed = true;
                    break;
                }
            }
        }
        for (i, &c) in cs.iter().enumerate() {
            if removed[i] {
                alive_c.set(c, false);
            }
        }
        if !changed {
            break;
        }
    }
    let keep_t: Vec<usize> = alive_t.ones().collect();
    let cands: Vec<usize> = alive_c.ones().collect();
    let rhits: Vec<Words> = cands
        .iter()
        .map(|&c| words_from(&hits[c], &keep_t))
        .collect();
    let mut cands_of = vec![Vec::new(); keep_t.len()];
    for (pos, h) in rhits.iter().enumerate() {
        for t in ones(h) {
            cands_of[t].push(pos);
        }
    }
    Some(Reduced {
        forced,
        cands,
        hits: rhits,
        cands_of,
        n_targets: keep_t.len(),
    })
}

struct Search<'a> {
    r: &'a Reduced,
    best: Vec<usize>,
    best_size: usize,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
    /// stop once a cover of this size is found
    floor: usize,
}

impl Search<'_> {
    /// Lower bound on the number of further candidates needed.
    fn bound(&self, uncovered: &[u64], excluded: &[bool]) -> usize {
        let n_unc = count(uncovered);
        if n_unc == 0 {
            return 0;
        }
        let mut max_cov = 0;
        for (c, h) in self.r.hits.iter().enumerate() {
            if !excluded[c] {
                max_cov = max_cov.max(and_count(h, uncovered));
            }
        }
        if max_cov == 0 {
            return usize::MAX / 2;
        }
        let counting = n_unc.div_ceil(max_cov);
        // targets pairwise without a common candidate each need their own pick
        let mut order: Vec<(usize, usize)> = ones(uncovered)
            .map(|t| {
                let k = self.r.cands_of[t].iter().filter(|&&c| !excluded[c]).count();
                (k, t)
            })
            .collect();
        order.sort_unstable();
        let mut blocked = vec![false; self.r.cands.len()];
        let mut disjoint = 0;
        for &(k, t) in &order {
            if k == 0 {
                return usize::MAX / 2;
            }
            let cs = &self.r.cands_of[t];
            if cs.iter().all(|&c| excluded[c] || !blocked[c]) {
                disjoint += 1;
                for &c in cs {
                    blocked[c] = true;
                }
            }
        }
        counting.max(disjoint)
    }

    fn dfs(&mut self, uncovered: &mut Words, chosen: &mut Vec<usize>, excluded: &mut Vec<bool>) {
        if self.timed_out || self.best_size <= self.floor {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(256) && Instant::now() > self.deadline {
            self.timed_out = true;
            return;
        }
        if count(uncovered) == 0 {
            if chosen.len() < self.best_size {
                self.best_size = chosen.len();
                self.best = chosen.clone();
            }
            return;
        }
        let lb = self.bound(uncovered, excluded);
        if chosen.len() + lb >= self.best_size {
            return;
        }
        // most constrained target
        let mut pick = None;
        let mut fewest = usize::MAX;
        for t in ones(uncovered) {
            let k = self.r.cands_of[t].iter().filter(|&&c| !excluded[c]).count();
            if k < fewest {
                fewest = k;
                pick = Some(t);
            }
        }
        let t = pick.unwrap();
        let mut options: Vec<(usize, usize)> = self.r.cands_of[t]
            .iter()
            .filter(|&&c| !excluded[c])
            .map(|&c| (and_count(&self.r.hits[c], uncovered), c))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut newly_excluded = Vec::new();
        for &(_, c) in &options {
            let saved: Words = uncovered.clone();
            for (u, h) in uncovered.iter_mut().zip(&self.r.hits[c]) {
                *u &= !h;
            }
            chosen.push(c);
            self.dfs(uncovered, chosen, excluded);
            chosen.pop();
            *uncovered = saved;
            excluded[c] = true;
            newly_excluded.push(c);
            if self.timed_out || self.best_size <= self.floor {
                break;
            }
        }
        for c in newly_excluded {
            excluded[c] = false;
        }
    }
}

fn greedy(r: &Reduced) -> Vec<usize> {
    let mut uncovered = vec![0u64; r.n_targets.div_ceil(64)];
    for t in 0..r.n_targets {
        uncovered[t / 64] |= 1 << (t % 64);
    }
    let mut out = Vec::new();
    while count(&uncovered) > 0 {
        let (best, _) = r
            .hits
            .iter()
            .enumerate()
            .map(|(c, h)| (c, and_count(h, &uncovered)))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        for (u, h) in uncovered.iter_mut().zip(&r.hits[best]) {
            *u &= !h;
        }
        out.push(best);
    }
    out
}

/// Exact minimum number of candidates covering the universe.
///
/// `lb_hint` must be a valid lower bound; `ub_hint`, if given, only prunes
/// (covers of that size or larger are not reported as improvements).
pub fn exact_min_cover(
    inst: &CoverInstance,
    lb_hint: usize,
    ub_hint: Option<usize>,
    budget: Duration,
) -> CoverSolution {
    let start = Instant::now();
    let n_targets = inst.universe.len();
    let Some(r) = reduce(n_targets, &inst.hits) else {
        return CoverSolution {
            witness: None,
            lower: usize::MAX,
            upper: usize::MAX,
            exact: true,
            nodes: 0,
            elapsed: start.elapsed(),
        };
    };
    let nf = r.forced.len();
    let initial = greedy(&r);
    let mut search = Search {
        r: &r,
        best_size: initial.len(),
        best: initial,
        nodes: 0,
        deadline: start + budget,
        timed_out: false,
        floor: lb_hint.saturating_sub(nf),
    };
    if let Some(ub) = ub_hint {
        if ub.saturating_sub(nf) < search.best_size {
            // keep the greedy witness but only accept strictly better covers than the hint
            search.best_size = search.best_size.min(ub.saturating_sub(nf) + 1);
        }
    }
    let mut uncovered = vec![0u64; r.n_targets.div_ceil(64)];
    for t in 0..r.n_targets {
        uncovered[t / 64] |= 1 << (t % 64);
    }
    let excluded0 = vec![false; r.cands.len()];
    let root_lb = search.bound(&uncovered, &excluded0);
    let mut excluded = excluded0;
    let mut chosen = Vec::new();
    search.dfs(&mut uncovered, &mut chosen, &mut excluded);

    let mut witness: Vec<usize> = r.forced.clone();
    witness.extend(search.best.iter().map(|&p| r.cands[p]));
    witness.sort_unstable();
    let upper = witness.len();
    let lower = if search.timed_out {
        (nf + root_lb).max(lb_hint).min(upper)
    } else {
        upper
    };
    CoverSolution {
        witness: Some(witness),
        lower,
        upper,
        exact: !search.timed_out,
        nodes: search.nodes,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, items: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &i in items {
            b.insert(i);
        }
        b
    }

    fn inst(n: usize, sets: &[&[usize]]) -> CoverInstance {
        CoverInstance {
            universe: (0..n).collect(),
            candidates: Vec::new(),
            hits: sets.iter().map(|s| bits(n, s)).collect(),
            origin: Origin::FullGroup,
        }
    }

    fn solve(i: &CoverInstance) -> CoverSolution {
        exact_min_cover(i, 0, None, Duration::from_secs(10))
    }

    #[test]
    fn single_target() {
        let s = solve(&inst(1, &[&[0]]));
        assert_eq!(s.size(), Some(1));
    }

    #[test]
    fn infeasible() {
        let s = solve(&inst(2, &[&[0]]));
        assert!(s.is_infeasible());
        assert_eq!(s.size(), None);
    }

    #[test]
    fn greedy_trap() {
        // greedy takes the big middle set first and needs 3
        let i = inst(6, &[&[0, 1, 2], &[3, 4, 5], &[1, 2, 3, 4]]);
        let s = solve(&i);
        assert_eq!(s.size(), Some(2));
        assert_eq!(s.witness.unwrap(), vec![0, 1]);
    }

    #[test]
    fn zero_budget_gives_interval() {
        let i = inst(6, &[&[0, 1], &[2, 3], &[4, 5], &[0, 2, 4], &[1, 3, 5]]);
        let s = exact_min_cover(&i, 0, None, Duration::ZERO);
        assert!(s.lower <= 2 && s.upper >= 2);
    }

    fn brute_force(n: usize, sets: &[Vec<usize>]) -> Option<usize> {
        let mut best = None;
        for mask in 0u32..(1 << sets.len()) {
            let mut covered = vec![false; n];
            for (i, s) in sets.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &t in s {
                        covered[t] = true;
                    }
                }
            }
            let k = mask.count_ones() as usize;
            if covered.iter().all(|&c| c) && best.is_none_or(|b| k < b) {
                best = Some(k);
            }
        }
        best
    }

    fn arb_instance() -> impl proptest::strategy::Strategy<Value = (usize, Vec<Vec<usize>>)> {
        use proptest::prelude::*;
        (1usize..20).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(proptest::collection::btree_set(0..n, 0..n), 1..12)
                    .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect()),
            )
        })
    }

    fn as_refs(sets: &[Vec<usize>]) -> Vec<&[usize]> {
        sets.iter().map(|s| s.as_slice()).collect()
    }

    proptest::proptest! {
        #[test]
        fn matches_brute_force((n, sets) in arb_instance()) {
            let i = inst(n, &as_refs(&sets));
            let s = solve(&i);
            proptest::prop_assert!(s.exact);
            proptest::prop_assert_eq!(s.size(), brute_force(n, &sets));
            if let Some(w) = &s.witness {
                let mut covered = FixedBitSet::with_capacity(n);
                for &c in w {
                    covered.union_with(&i.hits[c]);
                }
                proptest::prop_assert_eq!(covered.count_ones(..), n);
            }
        }

        #[test]
        fn monotone_in_candidates_and_targets((n, sets) in arb_instance(), drop in 0usize..20) {
            let full = solve(&inst(n, &as_refs(&sets))).size();
            // fewer candidates never helps
            let fewer = solve(&inst(n, &as_refs(&sets[..sets.len() - 1]))).size();
            proptest::prop_assert!(fewer.is_none() || full.is_some_and(|f| f <= fewer.unwrap()));
            // fewer targets never hurts
            if n > 1 {
                let d = drop % n;
                let shrunk: Vec<Vec<usize>> = sets
                    .iter()
                    .map(|s| s.iter().filter(|&&t| t != d).map(|&t| if t > d { t - 1 } else { t }).collect())
                    .collect();
                let small = solve(&inst(n - 1, &as_refs(&shrunk))).size();
                proptest::prop_assert!(full.is_none() || small.is_some_and(|s| s <= full.unwrap()));
            }
        }
    }
}
