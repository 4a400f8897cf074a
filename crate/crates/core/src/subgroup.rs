use fixedbitset::FixedBitSet;

use crate::group::{Elem, Group};

/// A subgroup of an enumerated parent group: membership bitset over the
/// parent's element index plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: FixedBitSet,
    pub gens: Vec<Elem>,
    pub order: usize,
}

impl Subgroup {
    pub fn trivial(g: &Group) -> Subgroup {
        let mut members = g.empty_set();
        members.insert(g.identity());
        Subgroup {
            members,
            gens: Vec::new(),
            order: 1,
        }
    }

    /// Builds a subgroup from a member set that is already known to be closed,
    /// choosing generators greedily in index order.
    pub fn from_members(g: &Group, members: impl IntoIterator<Item = Elem>) -> Subgroup {
        let mut target = g.empty_set();
        for e in members {
            target.insert(e);
        }
        let mut sub = Subgroup::trivial(g);
        for e in target.ones() {
            if !sub.members.contains(e) {
                sub = g.extend(&sub, &[e]);
            }
            if sub.order == target.count_ones(..) {
                break;
            }
        }
        debug_assert_eq!(sub.members, target, "member set is not closed");
        sub
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn index_in(&self, g: &Group) -> usize {
        g.len() / self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones()
    }

    /// Closure under products and inverses, checked directly.
    pub fn is_subgroup_of(&self, g: &Group) -> bool {
        if self.members.len() != g.len() || !self.members.contains(g.identity()) {
            return false;
        }
        let m: Vec<Elem> = self.members.ones().collect();
        m.len() == self.order
            && m.iter().all(|&a| {
                self.members.contains(g.inv(a))
                    && self
                        .gens
                        .iter()
                        .all(|&s| self.members.contains(g.mul(a, s)))
            })
            && self.gens.iter().all(|&s| self.members.contains(s))
            && g.closure(&self.gens).members == self.members
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        let gg = g.generator_elems();
        self.gens
            .iter()
            .all(|&s| gg.iter().all(|&x| self.members.contains(g.conj(s, x))))
    }

    pub fn is_proper(&self, g: &Group) -> bool {
        self.order < g.len()
    }

    /// `H^x = x^-1 H x`
    pub fn conjugate(&self, g: &Group, x: Elem) -> Subgroup {
        let mut members = g.empty_set();
        for h in self.members.ones() {
            members.insert(g.conj(h, x));
        }
        Subgroup {
            members,
            gens: self.gens.iter().map(|&s| g.conj(s, x)).collect(),
            order: self.order,
        }
    }

    pub fn intersection(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Subgroup::from_members(g, m.ones())
    }

    /// Normal core: intersection of all conjugates.
    pub fn core(&self, g: &Group) -> Subgroup {
        let mut m = self.members.clone();
        let mut frontier = vec![self.clone()];
        let mut seen = std::collections::HashSet::new();
        seen.insert(self.members.clone());
        let gg = g.generator_elems();
        while let Some(h) = frontier.pop() {
            for &x in &gg {
                let c = h.conjugate(g, x);
                if seen.insert(c.members.clone()) {
                    m.intersect_with(&c.members);
                    frontier.push(c);
                }
            }
        }
        Subgroup::from_members(g, m.ones())
    }

    /// `N_G(H)`
    pub fn normalizer(&self, g: &Group) -> Subgroup {
        Subgroup::from_members(
            g,
            g.elements().filter(|&x| {
                self.gens
                    .iter()
                    .all(|&s| self.members.contains(g.conj(s, x)))
            }),
        )
    }

    /// `C_G(H)`
    pub fn centralizer(&self, g: &Group) -> Subgroup {
        Subgroup::from_members(
            g,
            g.elements()
                .filter(|&x| self.gens.iter().all(|&s| g.mul(s, x) == g.mul(x, s))),
        )
    }

    /// Product set `HK` as a bitset (a subgroup only when one normalizes the other).
    pub fn product_set(&self, g: &Group, other: &Subgroup) -> FixedBitSet {
        let mut out = g.empty_set();
        let ks: Vec<Elem> = other.members.ones().collect();
        for h in self.members.ones() {
            for &k in &ks {
                out.insert(g.mul(h, k));
            }
        }
        out
    }

    /// Sort key: order, then lexicographically smallest member list.
    pub fn sort_key_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }

    pub fn generator_words(&self, g: &Group) -> Vec<String> {
        self.gens.iter().map(|&e| g.perm(e).to_string()).collect()
    }
}
