//! Subgroup lattice and structural computations.
//!
//! All subgroups are found by extending conjugacy-class representatives by
//! cyclic subgroups of prime-power order: every subgroup is generated by its
//! prime-power elements, so adding them one at a time reaches every class.
//! Each new class is materialized in full by conjugating under the
//! generators of `G`.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::perm::Perm;
use crate::subgroup::Subgroup;

/// A cyclic subgroup with its canonical (smallest-index) generator.
#[derive(Clone, Debug)]
pub struct Cyclic {
    pub generator: Elem,
    pub members: FixedBitSet,
    pub order: usize,
}

/// All non-trivial cyclic subgroups, ordered by canonical generator.
pub fn cyclic_subgroups(g: &Group) -> Vec<Cyclic> {
    let n = g.len();
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for e in 1..n {
        if assigned[e] {
            continue;
        }
        let ord = g.elem_order(e);
        let mut members = g.empty_set();
        let mut x = 0;
        for k in 0..ord {
            members.insert(x);
            if num_integer::gcd(k, ord) == 1 {
                assigned[x] = true;
            }
            x = g.mul(x, e);
        }
        out.push(Cyclic {
            generator: e,
            members,
            order: ord,
        });
    }
    out
}

/// Cyclic subgroups not properly contained in another cyclic subgroup.
pub fn maximal_cyclic_subgroups(g: &Group) -> Vec<Cyclic> {
    let cyc = cyclic_subgroups(g);
    let mut covered = g.empty_set();
    let mut order_idx: Vec<usize> = (0..cyc.len()).collect();
    order_idx.sort_by_key(|&i| std::cmp::Reverse(cyc[i].order));
    let mut keep = vec![false; cyc.len()];
    for &i in &order_idx {
        // a larger cyclic subgroup containing this one contains its generator
        if !covered.contains(cyc[i].generator) {
            keep[i] = true;
            covered.union_with(&cyc[i].members);
        }
    }
    cyc.into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

fn is_prime_power(mut n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = smallest_prime_factor(n);
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn smallest_prime_factor(n: usize) -> usize {
    (2..)
        .find(|p| n.is_multiple_of(*p) || p * p > n)
        .map_or(n, |p| if n.is_multiple_of(p) { p } else { n })
}

pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The full subgroup lattice of a group.
#[derive(Clone, Debug)]
pub struct Lattice {
    /// Every subgroup once, sorted by (order, lexicographically smallest member list).
    pub subgroups: Vec<Subgroup>,
    /// Conjugacy class id of each subgroup.
    pub class_of: Vec<usize>,
    /// Subgroup indices grouped by conjugacy class; classes ordered by their first member.
    pub classes: Vec<Vec<usize>>,
    /// Whether each subgroup is maximal.
    pub maximal: Vec<bool>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn maximal_subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.subgroups
            .iter()
            .zip(&self.maximal)
            .filter_map(|(s, &m)| m.then_some(s))
    }

    /// One representative per conjugacy class.
    pub fn class_representatives(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().map(|c| &self.subgroups[c[0]])
    }

    pub fn position(&self, members: &FixedBitSet) -> Option<usize> {
        self.subgroups.iter().position(|s| &s.members == members)
    }
}

/// Every subgroup of `g`, up to `caps.lattice`.
pub fn all_subgroups(g: &Group, caps: &Caps) -> Result<Lattice> {
    g.require_elements()?;
    let n = g.len();
    if n > caps.lattice {
        return Err(Error::CapExceeded {
            what: "lattice (supply `maximal_subgroups` in the spec file instead)",
            order: n as u128,
            cap: caps.lattice,
        });
    }
    let cyclics: Vec<Cyclic> = cyclic_subgroups(g)
        .into_iter()
        .filter(|c| is_prime_power(c.order))
        .collect();
    // element -> prime-power cyclic subgroup it generates
    let mut cyc_of = vec![usize::MAX; n];
    for (i, c) in cyclics.iter().enumerate() {
        for x in c.members.ones() {
            if g.elem_order(x) == c.order {
                cyc_of[x] = i;
            }
        }
    }
    let g_gens = g.generator_elems();

    let mut all: Vec<Subgroup> = Vec::new();
    let mut class_of: Vec<usize> = Vec::new();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();

    let mut register =
        |k: Subgroup, all: &mut Vec<Subgroup>, class_of: &mut Vec<usize>, reps: &mut Vec<usize>| {
            if index.contains_key(&k.members) {
                return;
            }
            let class = reps.len();
            reps.push(all.len());
            let start = all.len();
            index.insert(k.members.clone(), start);
            all.push(k);
            class_of.push(class);
            let mut i = start;
            while i < all.len() {
                for &x in &g_gens {
                    let c = all[i].conjugate(g, x);
                    if !index.contains_key(&c.members) {
                        index.insert(c.members.clone(), all.len());
                        all.push(c);
                        class_of.push(class);
                    }
                }
                i += 1;
            }
        };

    register(Subgroup::trivial(g), &mut all, &mut class_of, &mut reps);
    let mut maximal_class: Vec<bool> = Vec::new();
    let mut r = 0;
    while r < reps.len() {
        let h = all[reps[r]].clone();
        if h.order == n {
            maximal_class.push(false);
            r += 1;
            continue;
        }
        // extensions by z and z^x (x in N(H)) are conjugate; keep one per orbit
        let norm = h.normalizer(g);
        let mut done = vec![false; cyclics.len()];
        let mut is_max = true;
        for (zi, z) in cyclics.iter().enumerate() {
            if done[zi] || h.contains(z.generator) {
                continue;
            }
            let mut orbit = vec![zi];
            done[zi] = true;
            let mut k = 0;
            while k < orbit.len() {
                let gen = cyclics[orbit[k]].generator;
                for &x in &norm.gens {
                    let c = cyc_of[g.conj(gen, x)];
                    if !done[c] {
                        done[c] = true;
                        orbit.push(c);
                    }
                }
                k += 1;
            }
            let ext = g.extend(&h, &[z.generator]);
            if ext.order < n {
                is_max = false;
                register(ext, &mut all, &mut class_of, &mut reps);
            }
        }
        maximal_class.push(is_max);
        r += 1;
    }
    register(g.whole(), &mut all, &mut class_of, &mut reps);
    maximal_class.resize(reps.len(), false);

    // deterministic order
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by(|&a, &b| all[a].sort_key_cmp(&all[b]));
    let subgroups: Vec<Subgroup> = order.iter().map(|&i| all[i].clone()).collect();
    let old_class: Vec<usize> = order.iter().map(|&i| class_of[i]).collect();
    let mut renumber = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut new_class_of = Vec::with_capacity(subgroups.len());
    for (i, &c) in old_class.iter().enumerate() {
        let id = *renumber.entry(c).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(i);
        new_class_of.push(id);
    }
    let maximal = old_class.iter().map(|&c| maximal_class[c]).collect();
    Ok(Lattice {
        subgroups,
        class_of: new_class_of,
        classes,
        maximal,
    })
}

/// A maximal subgroup together with its normal core.
#[derive(Clone, Debug)]
pub struct MaximalSubgroup {
    pub sub: Subgroup,
    pub core: Subgroup,
}

impl MaximalSubgroup {
    pub fn contains(&self, n: &Subgroup) -> bool {
        n.is_subset(&self.sub)
    }

    pub fn is_core_free(&self) -> bool {
        self.core.order == 1
    }
}

/// Where a list of maximal subgroups came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalSource {
    Lattice,
    /// Supplied externally; validated for subgrouphood and pairwise non-containment only.
    External,
}

#[derive(Clone, Debug)]
pub struct Maximals {
    pub list: Vec<MaximalSubgroup>,
    pub source: MaximalSource,
}

impl Maximals {
    pub fn subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.list.iter().map(|m| &m.sub)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

fn with_cores(g: &Group, subs: Vec<Subgroup>) -> Vec<MaximalSubgroup> {
    subs.into_iter()
        .map(|sub| {
            let core = sub.core(g);
            MaximalSubgroup { sub, core }
        })
        .collect()
}

/// Maximal subgroups, from the lattice when the group is within the lattice cap,
/// otherwise from the supplied generator lists.
pub fn maximal_subgroups(
    g: &Group,
    caps: &Caps,
    external: Option<&[Vec<Perm>]>,
) -> Result<Maximals> {
    g.require_elements()?;
    if let Some(ext) = external {
        return external_maximals(g, ext);
    }
    let lat = all_subgroups(g, caps)?;
    Ok(maximals_from_lattice(g, &lat))
}

pub fn maximals_from_lattice(g: &Group, lat: &Lattice) -> Maximals {
    let subs: Vec<Subgroup> = lat.maximal_subgroups().cloned().collect();
    Maximals {
        list: with_cores_by_class(g, lat, subs),
        source: MaximalSource::Lattice,
    }
}

fn with_cores_by_class(g: &Group, lat: &Lattice, subs: Vec<Subgroup>) -> Vec<MaximalSubgroup> {
    let mut by_class: HashMap<usize, Subgroup> = HashMap::new();
    subs.into_iter()
        .map(|sub| {
            let pos = lat.position(&sub.members).expect("maximal from lattice");
            let core = by_class
                .entry(lat.class_of[pos])
                .or_insert_with(|| sub.core(g))
                .clone();
            MaximalSubgroup { sub, core }
        })
        .collect()
}

fn external_maximals(g: &Group, ext: &[Vec<Perm>]) -> Result<Maximals> {
    let subs = ext
        .iter()
        .map(|gens| g.subgroup_from_perms(gens))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in subs.iter().enumerate() {
        if !a.is_proper(g) {
            return Err(Error::NotSubgroup(format!(
                "supplied maximal subgroup #{i} is the whole group"
            )));
        }
        for (j, b) in subs.iter().enumerate() {
            if i != j && a.is_subset(b) {
                return Err(Error::NotSubgroup(format!(
                    "supplied maximal subgroup #{i} is contained in #{j}"
                )));
            }
        }
    }
    let mut subs = subs;
    subs.sort_by(|a, b| a.sort_key_cmp(b));
    Ok(Maximals {
        list: with_cores(g, subs),
        source: MaximalSource::External,
    })
}

pub fn frattini(g: &Group, maximals: &Maximals) -> Subgroup {
    let mut m = g.full_set();
    for s in maximals.subgroups() {
        m.intersect_with(&s.members);
    }
    Subgroup::from_members(g, m.ones())
}

/// All normal subgroups, via normal closures of unions of conjugacy classes.
pub fn normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let classes = g.conjugacy_classes();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = vec![Subgroup::trivial(g)];
    seen.insert(out[0].members.clone());
    let mut i = 0;
    while i < out.len() {
        let base = out[i].clone();
        for c in &classes {
            if base.contains(c[0]) {
                continue;
            }
            let mut seed = base.gens.clone();
            seed.push(c[0]);
            let k = g.normal_closure(&seed);
            if seen.insert(k.members.clone()) {
                out.push(k);
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.sort_key_cmp(b));
    out
}

pub fn minimal_normal_subgroups(normals: &[Subgroup]) -> Vec<Subgroup> {
    normals
        .iter()
        .filter(|n| {
            n.order > 1
                && !normals
                    .iter()
                    .any(|m| m.order > 1 && m.order < n.order && m.is_subset(n))
        })
        .cloned()
        .collect()
}

pub fn socle(g: &Group, minimal_normals: &[Subgroup]) -> Subgroup {
    let gens: Vec<Elem> = minimal_normals
        .iter()
        .flat_map(|n| n.gens.iter().copied())
        .collect();
    g.closure(&gens)
}

/// Normal-subgroup summary of a group.
#[derive(Clone, Debug)]
pub struct NormalStructure {
    pub normals: Vec<Subgroup>,
    pub minimal: Vec<Subgroup>,
    pub socle: Subgroup,
}

impl NormalStructure {
    pub fn of(g: &Group) -> Self {
        let normals = normal_subgroups(g);
        let minimal = minimal_normal_subgroups(&normals);
        let socle = socle(g, &minimal);
        NormalStructure {
            normals,
            minimal,
            socle,
        }
    }

    pub fn is_monolithic(&self) -> bool {
        self.minimal.len() == 1
    }
}

/// Some maximal subgroup has trivial core.
pub fn is_primitive(maximals: &Maximals) -> bool {
    maximals.list.iter().any(MaximalSubgroup::is_core_free)
}

#[derive(Clone, Debug)]
pub struct ChiefFactorReport {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub order: usize,
    pub multiple_complements: bool,
}

/// Every chief factor `H/K` (K normal, H/K minimal normal in G/K), with whether
/// it has at least two complements in `G/K`.
///
/// A complement of `H/K` in `G/K` corresponds to a subgroup `C >= K` of `G`
/// with `C ∩ H = K` and `CH = G`, so the search runs over the lattice of `G`.
pub fn chief_factors_with_complements(
    g: &Group,
    lattice: &Lattice,
    normals: &[Subgroup],
) -> Vec<ChiefFactorReport> {
    let n = g.len();
    let mut out = Vec::new();
    for k in normals {
        for h in normals {
            if h.order <= k.order || !k.is_subset(h) {
                continue;
            }
            let between = normals.iter().any(|l| {
                l.order > k.order && l.order < h.order && k.is_subset(l) && l.is_subset(h)
            });
            if between {
                continue;
            }
            let want = n / h.order * k.order;
            let mut count = 0;
            for c in &lattice.subgroups {
                if c.order != want || !k.is_subset(c) {
                    continue;
                }
                let mut meet = c.members.clone();
                meet.intersect_with(&h.members);
                if meet.count_ones(..) == k.order {
                    count += 1;
                    if count >= 2 {
                        break;
                    }
                }
            }
            out.push(ChiefFactorReport {
                lower: k.clone(),
                upper: h.clone(),
                order: h.order / k.order,
                multiple_complements: count >= 2,
            });
        }
    }
    out
}

/// A Sylow `p`-subgroup, grown one factor `p` at a time inside normalizers.
pub fn sylow(g: &Group, p: usize) -> Result<Subgroup> {
    let n = g.len();
    if p < 2 || !n.is_multiple_of(p) || smallest_prime_factor(p) != p {
        return Err(Error::Hypothesis(format!(
            "{p} is not a prime divisor of {n}"
        )));
    }
    let mut full = 1;
    while n.is_multiple_of(full * p) {
        full *= p;
    }
    let mut sub = Subgroup::trivial(g);
    while sub.order < full {
        let norm = sub.normalizer(g);
        let next = norm
            .elements()
            .find(|&x| {
                !sub.contains(x)
                    && is_power_of(g.elem_order(x), p)
                    && sub.contains(g.pow(x, p as u64))
            })
            .expect("Cauchy: N(P)/P has an element of order p");
        sub = g.extend(&sub, &[next]);
    }
    Ok(sub)
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn is_nilpotent(g: &Group) -> bool {
    prime_factors(g.len())
        .into_iter()
        .all(|p| sylow(g, p).map(|s| s.is_normal_in(g)).unwrap_or(false))
}

pub fn derived_subgroup(g: &Group, h: &Subgroup) -> Subgroup {
    let mut comms = Vec::new();
    for &a in &h.gens {
        for &b in &h.gens {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if c != 0 {
                comms.push(c);
            }
        }
    }
    // normal closure inside H
    let mut sub = g.closure(&comms);
    loop {
        let mut extra = Vec::new();
        for &s in &sub.gens {
            for &x in &h.gens {
                let c = g.conj(s, x);
                if !sub.contains(c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return sub;
        }
        sub = g.extend(&sub, &extra);
    }
}

pub fn is_solvable(g: &Group) -> bool {
    let mut h = g.whole();
    loop {
        if h.order == 1 {
            return true;
        }
        let d = derived_subgroup(g, &h);
        if d.order == h.order {
            return false;
        }
        h = d;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(degree: usize, words: &[&str]) -> Group {
        Group::from_words(degree, words, &Caps::default()).unwrap()
    }

    fn lat(g: &Group) -> Lattice {
        all_subgroups(g, &Caps::default()).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(lat(&grp(3, &["(0 1 2)", "(0 1)"])).len(), 6);
        assert_eq!(lat(&grp(4, &["(0 1)", "(2 3)"])).len(), 5);
        let q8 = grp(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        assert_eq!(q8.order(), 8);
        assert_eq!(lat(&q8).len(), 6);
        // S4 has 30 subgroups in 11 classes
        let s4 = lat(&grp(4, &["(0 1 2 3)", "(0 1)"]));
        assert_eq!(s4.len(), 30);
        assert_eq!(s4.classes.len(), 11);
    }

    #[test]
    fn maximal_lists() {
        let c3c3 = grp(6, &["(0 1 2)", "(3 4 5)"]);
        let m = maximal_subgroups(&c3c3, &Caps::default(), None).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.subgroups().all(|s| s.index_in(&c3c3) == 3));
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        assert_eq!(
            maximal_subgroups(&s3, &Caps::default(), None)
                .unwrap()
                .len(),
            4
        );
        let a4 = grp(4, &["(0 1 2)", "(1 2 3)"]);
        let m = maximal_subgroups(&a4, &Caps::default(), None).unwrap();
        let mut orders: Vec<usize> = m.subgroups().map(|s| s.order).collect();
        orders.sort();
        assert_eq!(orders, vec![3, 3, 3, 3, 4]);
    }

    #[test]
    fn maximality_against_lattice() {
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let l = lat(&s4);
        for (i, s) in l.subgroups.iter().enumerate() {
            let proper = s.order < s4.len();
            let inside = l
                .subgroups
                .iter()
                .any(|t| t.order > s.order && t.order < s4.len() && s.is_subset(t));
            assert_eq!(l.maximal[i], proper && !inside);
        }
    }

    #[test]
    fn frattini_examples() {
        let c4 = grp(4, &["(0 1 2 3)"]);
        let m = maximal_subgroups(&c4, &Caps::default(), None).unwrap();
        assert_eq!(frattini(&c4, &m).order, 2);
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let m = maximal_subgroups(&s3, &Caps::default(), None).unwrap();
        assert_eq!(frattini(&s3, &m).order, 1);
        let q8 = grp(8, &["(0 1 2 3)(4 5 6 7)", "(0 4 2 6)(1 7 3 5)"]);
        let m = maximal_subgroups(&q8, &Caps::default(), None).unwrap();
        let phi = frattini(&q8, &m);
        assert_eq!(phi.members, q8.center().members);
        assert_eq!(phi.order, 2);
    }

    #[test]
    fn normal_structure() {
        let v4 = grp(4, &["(0 1)", "(2 3)"]);
        let ns = NormalStructure::of(&v4);
        assert_eq!(ns.minimal.len(), 3);
        assert!(!ns.is_monolithic());
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let ns = NormalStructure::of(&s3);
        assert_eq!(ns.minimal.len(), 1);
        assert_eq!(ns.minimal[0].order, 3);
        assert!(ns.socle.is_normal_in(&s3));
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(NormalStructure::of(&s4).normals.len(), 4);
    }

    #[test]
    fn chief_factor_examples() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let l = lat(&s3);
        let ns = normal_subgroups(&s3);
        let rep = chief_factors_with_complements(&s3, &l, &ns);
        assert!(rep.iter().any(|r| r.order == 3 && r.multiple_complements));

        let c4 = grp(4, &["(0 1 2 3)"]);
        let l = lat(&c4);
        let ns = normal_subgroups(&c4);
        let rep = chief_factors_with_complements(&c4, &l, &ns);
        assert_eq!(rep.len(), 2);
        assert!(rep.iter().all(|r| !r.multiple_complements));

        let d10 = grp(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        let l = lat(&d10);
        let ns = normal_subgroups(&d10);
        let rep = chief_factors_with_complements(&d10, &l, &ns);
        assert!(rep.iter().any(|r| r.order == 5 && r.multiple_complements));
    }

    #[test]
    fn sylow_and_solvability() {
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(sylow(&s4, 2).unwrap().order, 8);
        assert_eq!(sylow(&s4, 3).unwrap().order, 3);
        assert!(sylow(&s4, 5).is_err());
        assert!(sylow(&s4, 4).is_err());
        let d8 = grp(4, &["(0 1 2 3)", "(0 2)"]);
        assert!(is_nilpotent(&d8));
        assert!(!is_nilpotent(&grp(3, &["(0 1 2)", "(0 1)"])));
        assert!(!is_solvable(&grp(5, &["(0 1 2)", "(2 3 4)"])));
        assert!(is_solvable(&s4));
    }

    #[test]
    fn maximal_cyclics() {
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        assert_eq!(maximal_cyclic_subgroups(&s3).len(), 4);
        let v4 = grp(4, &["(0 1)", "(2 3)"]);
        assert_eq!(maximal_cyclic_subgroups(&v4).len(), 3);
    }
}
