//! Finite permutation groups with an indexed element list.
//!
//! Elements are numbered in the discovery order of a breadth-first search
//! over the generators (identity first), so every bitset over a group is
//! reproducible from its generator list.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::schreier::StabChain;
use crate::subgroup::Subgroup;

pub type Elem = usize;

const NO_GEN: u32 = u32::MAX;

struct Elements {
    perms: Vec<Perm>,
    index: HashMap<Perm, u32>,
    /// `gen_mul[e * k + j] = e * generator_j`
    gen_mul: Vec<u32>,
    /// BFS tree: element = parent * generator
    parent: Vec<(u32, u32)>,
    table: Option<Vec<u16>>,
    inv: Vec<u32>,
    orders: Vec<u32>,
}

pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    order: u128,
    elements: Option<Elements>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    /// Builds a group from cycle words. Elements are enumerated when the order is
    /// within `caps.elements`; otherwise only the order is known.
    pub fn from_words(degree: usize, words: &[&str], caps: &Caps) -> Result<Group> {
        let gens = words
            .iter()
            .map(|w| Perm::parse(degree, w))
            .collect::<Result<Vec<_>>>()?;
        Group::from_perms(degree, gens, caps)
    }

    pub fn from_perms(degree: usize, generators: Vec<Perm>, caps: &Caps) -> Result<Group> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::CycleWord {
                    word: g.to_string(),
                    reason: format!("degree {} does not match {}", g.degree(), degree),
                });
            }
        }
        let order = StabChain::new(degree, &generators).order();
        let mut group = Group {
            degree,
            generators,
            order,
            elements: None,
        };
        if order <= caps.elements as u128 {
            group.enumerate(caps.table);
        }
        Ok(group)
    }

    /// Like [`Group::from_perms`] but fails when the group cannot be enumerated.
    pub fn enumerated(degree: usize, generators: Vec<Perm>, caps: &Caps) -> Result<Group> {
        let g = Group::from_perms(degree, generators, caps)?;
        if !g.is_enumerated() {
            return Err(Error::CapExceeded {
                what: "element",
                order: g.order,
                cap: caps.elements,
            });
        }
        Ok(g)
    }

    fn enumerate(&mut self, table_cap: usize) {
        let k = self.generators.len();
        let id = Perm::identity(self.degree);
        let mut perms = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, NO_GEN)];
        let mut gen_mul = Vec::with_capacity(self.order as usize * k);
        let mut i = 0;
        while i < perms.len() {
            for (j, g) in self.generators.iter().enumerate() {
                let p = perms[i].compose(g);
                let next = index.len() as u32;
                let e = *index.entry(p.clone()).or_insert_with(|| next);
                if e == next {
                    perms.push(p);
                    parent.push((i as u32, j as u32));
                }
                gen_mul.push(e);
            }
            i += 1;
        }
        let n = perms.len();
        debug_assert_eq!(n as u128, self.order);
        let inv = perms
            .iter()
            .map(|p| index[&p.inverse()])
            .collect::<Vec<_>>();
        let orders = perms.iter().map(|p| p.order() as u32).collect();
        let table = (n <= table_cap && n <= u16::MAX as usize + 1).then(|| {
            let mut t = vec![0u16; n * n];
            for a in 0..n {
                let row = &mut t[a * n..(a + 1) * n];
                row[0] = a as u16;
                for f in 1..n {
                    let (p, j) = parent[f];
                    let af = row[p as usize] as usize;
                    row[f] = gen_mul[af * k + j as usize] as u16;
                }
            }
            t
        });
        self.elements = Some(Elements {
            perms,
            index,
            gen_mul,
            parent,
            table,
            inv,
            orders,
        });
    }

    fn el(&self) -> &Elements {
        self.elements
            .as_ref()
            .expect("group elements must be enumerated for this operation")
    }

    pub fn require_elements(&self) -> Result<()> {
        if self.is_enumerated() {
            Ok(())
        } else {
            Err(Error::NotEnumerated(self.order))
        }
    }

    pub fn is_enumerated(&self) -> bool {
        self.elements.is_some()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Number of enumerated elements.
    pub fn len(&self) -> usize {
        self.el().perms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn perm(&self, e: Elem) -> &Perm {
        &self.el().perms[e]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.el().index.get(p).map(|&i| i as usize)
    }

    /// Element indices of the generators.
    pub fn generator_elems(&self) -> Vec<Elem> {
        let el = self.el();
        let k = self.generators.len();
        (0..k).map(|j| el.gen_mul[j] as usize).collect()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let el = self.el();
        match &el.table {
            Some(t) => t[a * el.perms.len() + b] as usize,
            None => el.index[&el.perms[a].compose(&el.perms[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.el().inv[a] as usize
    }

    /// `g^-1 a g`
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let n = self.elem_order(a) as u64;
        let mut k = k % n;
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn elem_order(&self, a: Elem) -> usize {
        self.el().orders[a] as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.len()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Word of generator indices along the BFS tree.
    fn factor(&self, mut e: Elem) -> Vec<u32> {
        let el = self.el();
        let mut word = Vec::new();
        while e != 0 {
            let (p, j) = el.parent[e];
            word.push(j);
            e = p as usize;
        }
        word.reverse();
        word
    }

    /// Closure of `seed` elements (as generators).
    pub fn closure(&self, seed: &[Elem]) -> Subgroup {
        self.extend(&Subgroup::trivial(self), seed)
    }

    /// `<H, extra>` computed as a union of right cosets of `H`.
    pub fn extend(&self, h: &Subgroup, extra: &[Elem]) -> Subgroup {
        let n = self.len();
        let mut gens: Vec<Elem> = h.gens.clone();
        for &x in extra {
            if !h.members.contains(x) && !gens.contains(&x) {
                gens.push(x);
            }
        }
        if gens.len() == h.gens.len() {
            return h.clone();
        }
        let hmembers: Vec<Elem> = h.members.ones().collect();
        let mut members = h.members.clone();
        let mut count = hmembers.len();
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let x = self.mul(r, s);
                if members.contains(x) {
                    continue;
                }
                for &hm in &hmembers {
                    members.insert(self.mul(hm, x));
                }
                count += hmembers.len();
                reps.push(x);
                if 2 * count > n {
                    // order divides |G|, so anything past half is everything
                    return Subgroup {
                        members: self.full_set(),
                        gens,
                        order: n,
                    };
                }
            }
            i += 1;
        }
        Subgroup {
            members,
            gens,
            order: count,
        }
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[Elem]) -> Subgroup {
        let g_gens = self.generator_elems();
        let mut sub = self.closure(seed);
        loop {
            let mut extra = Vec::new();
            for &s in &sub.gens {
                for &g in &g_gens {
                    let c = self.conj(s, g);
                    if !sub.members.contains(c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return sub;
            }
            sub = self.extend(&sub, &extra);
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.full_set(),
            gens: self.generator_elems(),
            order: self.len(),
        }
    }

    /// Conjugacy classes sorted by (element order of representative, size, representative).
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let n = self.len();
        let gens = self.generator_elems();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let mut class = vec![x];
            let mut i = 0;
            while i < class.len() {
                let y = class[i];
                for &g in &gens {
                    let z = self.conj(y, g);
                    if !seen[z] {
                        seen[z] = true;
                        class.push(z);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes.sort_by_key(|c| (self.elem_order(c[0]), c.len(), c[0]));
        classes
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_elems();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.len();
        self.elements().any(|e| self.elem_order(e) == n)
    }

    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        self.elements()
            .fold(1usize, |acc, e| acc.lcm(&self.elem_order(e)))
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generator_elems();
        let central: Vec<Elem> = self
            .elements()
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_members(self, central.iter().copied())
    }

    /// Class-size multiset plus order statistics; equal for isomorphic groups.
    pub fn fingerprint(&self) -> Fingerprint {
        let mut class_sizes: Vec<(usize, usize)> = self
            .conjugacy_classes()
            .iter()
            .map(|c| (self.elem_order(c[0]), c.len()))
            .collect();
        class_sizes.sort_unstable();
        Fingerprint {
            order: self.order,
            exponent: self.exponent(),
            abelian: self.is_abelian(),
            class_sizes,
        }
    }

    /// A standalone group generated by the members of `sub`.
    pub fn subgroup_as_group(&self, sub: &Subgroup, caps: &Caps) -> Result<Group> {
        let gens = sub.gens.iter().map(|&e| self.perm(e).clone()).collect();
        Group::enumerated(self.degree, gens, caps)
    }

    /// Converts a list of permutations into a subgroup of `self`.
    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let elems = perms
            .iter()
            .map(|p| {
                self.index_of(p).ok_or_else(|| {
                    Error::NotSubgroup(format!("{p} is not an element of the group"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&elems))
    }

    /// Image of every element under the homomorphism given by generator images.
    fn extend_hom(&self, target: &Group, gen_images: &[Elem]) -> Vec<u32> {
        let el = self.el();
        let mut map = vec![0u32; self.len()];
        for e in 1..self.len() {
            let (p, j) = el.parent[e];
            map[e] = target.mul(map[p as usize] as usize, gen_images[j as usize]) as u32;
        }
        map
    }

    /// Whether generator images extend to a well-defined homomorphism; checked on
    /// every element by comparing two factorizations `e * g_j`.
    fn hom_is_consistent(&self, target: &Group, gen_images: &[Elem], map: &[u32]) -> bool {
        let el = self.el();
        let k = self.generators.len();
        (0..self.len()).all(|e| {
            (0..k).all(|j| {
                let prod = el.gen_mul[e * k + j] as usize;
                map[prod] as usize == target.mul(map[e] as usize, gen_images[j])
            })
        })
    }

    /// Word evaluation helper used by tests and certificate tooling.
    pub fn word_of(&self, e: Elem) -> Vec<u32> {
        self.factor(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u128,
    pub exponent: usize,
    pub abelian: bool,
    pub class_sizes: Vec<(usize, usize)>,
}

/// A homomorphism from an enumerated group, stored as the image of every element.
pub struct GroupHom {
    pub target: Group,
    map: Vec<u32>,
}

impl GroupHom {
    /// Builds the homomorphism from generator images, verifying consistency.
    pub fn from_generator_images(source: &Group, target: Group, images: &[Perm]) -> Result<Self> {
        source.require_elements()?;
        target.require_elements()?;
        let gen_images = images
            .iter()
            .map(|p| {
                target
                    .index_of(p)
                    .ok_or_else(|| Error::NotSubgroup(format!("image {p} not in target")))
            })
            .collect::<Result<Vec<_>>>()?;
        if gen_images.len() != source.generators().len() {
            return Err(Error::Hypothesis(
                "one image per source generator is required".into(),
            ));
        }
        let map = source.extend_hom(&target, &gen_images);
        if !source.hom_is_consistent(&target, &gen_images, &map) {
            return Err(Error::Hypothesis(
                "generator images do not define a homomorphism".into(),
            ));
        }
        Ok(GroupHom { target, map })
    }

    pub fn image_of(&self, e: Elem) -> Elem {
        self.map[e] as usize
    }

    pub fn kernel(&self, source: &Group) -> Subgroup {
        Subgroup::from_members(source, source.elements().filter(|&e| self.map[e] == 0))
    }

    pub fn image_order(&self) -> usize {
        self.target.len()
    }

    /// Image of a subgroup of the source.
    pub fn image(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = sub.gens.iter().map(|&e| self.image_of(e)).collect();
        self.target.closure(&gens)
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, source: &Group, sub: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            source,
            source
                .elements()
                .filter(|&e| sub.members.contains(self.map[e] as usize)),
        )
    }
}

/// Action of `g` on the right cosets of `h`; the image is `G/H` when `H` is normal.
pub fn coset_action(g: &Group, h: &Subgroup, caps: &Caps) -> Result<GroupHom> {
    g.require_elements()?;
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup("coset action needs a subgroup".into()));
    }
    let n = g.len();
    let mut coset = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let hm: Vec<Elem> = h.members.ones().collect();
    for x in 0..n {
        if coset[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        for &y in &hm {
            coset[g.mul(y, x)] = c;
        }
        reps.push(x);
    }
    let m = reps.len();
    let images: Vec<Perm> = g
        .generator_elems()
        .iter()
        .map(|&s| {
            Perm::from_images_unchecked(
                reps.iter()
                    .map(|&r| coset[g.mul(r, s)])
                    .collect::<Vec<u32>>(),
            )
        })
        .collect();
    let target = Group::enumerated(m, images.clone(), caps)?;
    GroupHom::from_generator_images(g, target, &images)
}

/// `A x B` on the disjoint union of the point sets.
pub struct DirectProduct {
    pub group: Group,
    /// The factor `A x 1`.
    pub left: Subgroup,
    /// The factor `1 x B`.
    pub right: Subgroup,
}

pub fn direct_product(a: &Group, b: &Group, caps: &Caps) -> Result<DirectProduct> {
    let degree = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|p| p.shifted(0, degree))
        .collect();
    let na = gens.len();
    gens.extend(b.generators().iter().map(|p| p.shifted(a.degree(), degree)));
    let order = a.order() * b.order();
    if order > caps.elements as u128 {
        return Err(Error::CapExceeded {
            what: "element",
            order,
            cap: caps.elements,
        });
    }
    let group = Group::enumerated(degree, gens, caps)?;
    let ge = group.generator_elems();
    let left = group.closure(&ge[..na]);
    let right = group.closure(&ge[na..]);
    Ok(DirectProduct { group, left, right })
}

/// `X wr C_m`: `m` blocks of `deg(X)` points, base `X^m`, top cyclic block shift.
pub struct Wreath {
    pub group: Group,
    pub blocks: usize,
    pub block_size: usize,
    /// The base group `X^m`.
    pub base: Subgroup,
    /// The block-cycling generator (the coordinate swap when `m = 2`).
    pub top: Elem,
}

impl Wreath {
    /// The permutation of block `i` induced by `e`, as a permutation of `0..block_size`,
    /// together with the block it lands on.
    pub fn block_component(&self, e: Elem, block: usize) -> (Perm, usize) {
        let p = self.group.perm(e);
        let d = self.block_size;
        let first = p.apply(block * d);
        let dest = first / d;
        let images = (0..d)
            .map(|i| (p.apply(block * d + i) - dest * d) as u32)
            .collect();
        (Perm::from_images_unchecked(images), dest)
    }
}

pub fn wreath_cyclic_top(x: &Group, m: usize, caps: &Caps) -> Result<Wreath> {
    if m < 2 {
        return Err(Error::Hypothesis("wreath product needs m >= 2".into()));
    }
    let d = x.degree();
    let degree = d * m;
    let mut gens: Vec<Perm> = x
        .generators()
        .iter()
        .map(|p| p.shifted(0, degree))
        .collect();
    let nx = gens.len();
    let shift =
        Perm::from_images_unchecked((0..degree).map(|i| ((i + d) % degree) as u32).collect());
    gens.push(shift);
    let order = x.order().pow(m as u32) * m as u128;
    if order > caps.elements as u128 {
        return Err(Error::CapExceeded {
            what: "element",
            order,
            cap: caps.elements,
        });
    }
    let group = Group::enumerated(degree, gens, caps)?;
    let ge = group.generator_elems();
    let top = ge[nx];
    let mut base_gens = Vec::new();
    for b in 0..m {
        for p in x.generators() {
            base_gens.push(
                group
                    .index_of(&p.shifted(b * d, degree))
                    .expect("base generator"),
            );
        }
    }
    let base = group.closure(&base_gens);
    Ok(Wreath {
        group,
        blocks: m,
        block_size: d,
        base,
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn small_groups() {
        let s3 = Group::from_words(3, &["(0 1 2)", "(0 1)"], &caps()).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.len(), 6);
        let a5 = Group::from_words(5, &["(0 1 2)", "(2 3 4)"], &caps()).unwrap();
        assert_eq!(a5.len(), 60);
        let triv = Group::from_words(4, &[], &caps()).unwrap();
        assert_eq!(triv.len(), 1);
        assert!(triv.perm(0).is_identity());
    }

    #[test]
    fn closure_axioms() {
        let a5 = Group::from_words(5, &["(0 1 2)", "(2 3 4)"], &caps()).unwrap();
        for a in a5.elements() {
            assert_eq!(a5.mul(a, a5.inv(a)), 0);
            for b in a5.elements() {
                let p = a5.perm(a).compose(a5.perm(b));
                assert_eq!(a5.index_of(&p), Some(a5.mul(a, b)));
            }
        }
        for g in a5.generators() {
            assert!(a5.index_of(g).is_some());
        }
    }

    #[test]
    fn no_table_path_agrees() {
        let small = Caps {
            table: 0,
            ..Caps::default()
        };
        let a = Group::from_words(5, &["(0 1 2 3 4)", "(0 1)"], &small).unwrap();
        let b = Group::from_words(5, &["(0 1 2 3 4)", "(0 1)"], &caps()).unwrap();
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn lazy_large_group() {
        let s11 = Group::from_words(11, &["(0 1 2 3 4 5 6 7 8 9 10)", "(0 1)"], &caps()).unwrap();
        assert_eq!(s11.order(), 39_916_800);
        assert!(!s11.is_enumerated());
        assert!(s11.require_elements().is_err());
        assert!(Group::enumerated(s11.degree(), s11.generators().to_vec(), &caps()).is_err());
    }

    #[test]
    fn conjugacy_class_sizes() {
        let s3 = Group::from_words(3, &["(0 1 2)", "(0 1)"], &caps()).unwrap();
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let c4 = Group::from_words(4, &["(0 1 2 3)"], &caps()).unwrap();
        assert_eq!(c4.conjugacy_classes().len(), 4);
        let a5 = Group::from_words(5, &["(0 1 2)", "(2 3 4)"], &caps()).unwrap();
        let sizes: Vec<usize> = a5.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
    }

    #[test]
    fn products() {
        let c2 = Group::from_words(2, &["(0 1)"], &caps()).unwrap();
        let c5 = Group::from_words(5, &["(0 1 2 3 4)"], &caps()).unwrap();
        let s3 = Group::from_words(3, &["(0 1 2)", "(0 1)"], &caps()).unwrap();
        let a5 = Group::from_words(5, &["(0 1 2)", "(2 3 4)"], &caps()).unwrap();
        assert_eq!(direct_product(&c2, &c2, &caps()).unwrap().group.order(), 4);
        assert_eq!(direct_product(&s3, &c5, &caps()).unwrap().group.order(), 30);
        let a5a5 = direct_product(&a5, &a5, &caps()).unwrap();
        assert_eq!(a5a5.group.order(), 3600);
        assert_eq!(a5a5.left.order, 60);

        let w = wreath_cyclic_top(&a5, 2, &caps()).unwrap();
        assert_eq!(w.group.order(), 7200);
        assert_eq!(w.base.order, 3600);
        assert_eq!(
            wreath_cyclic_top(&s3, 2, &caps()).unwrap().group.order(),
            72
        );
        assert!(wreath_cyclic_top(&s3, 1, &caps()).is_err());
    }

    #[test]
    fn c2_wreath_c2_is_d8() {
        let c2 = Group::from_words(2, &["(0 1)"], &caps()).unwrap();
        let w = wreath_cyclic_top(&c2, 2, &caps()).unwrap().group;
        let d8 = Group::from_words(4, &["(0 1 2 3)", "(0 2)"], &caps()).unwrap();
        assert_eq!(w.order(), 8);
        assert!(!w.is_abelian());
        assert_eq!(w.exponent(), 4);
        assert_eq!(w.fingerprint(), d8.fingerprint());
    }

    #[test]
    fn coset_actions() {
        let s3 = Group::from_words(3, &["(0 1 2)", "(0 1)"], &caps()).unwrap();
        let a3 = s3.closure(&[s3.index_of(&Perm::parse(3, "(0 1 2)").unwrap()).unwrap()]);
        let hom = coset_action(&s3, &a3, &caps()).unwrap();
        assert_eq!(hom.image_order(), 2);
        assert_eq!(hom.kernel(&s3).order, 3);

        let v4 = Group::from_words(4, &["(0 1)", "(2 3)"], &caps()).unwrap();
        let hom = coset_action(&v4, &Subgroup::trivial(&v4), &caps()).unwrap();
        assert_eq!(hom.image_order(), 4);
    }

    #[test]
    fn inconsistent_hom_rejected() {
        let c4 = Group::from_words(4, &["(0 1 2 3)"], &caps()).unwrap();
        let c3 = Group::from_words(3, &["(0 1 2)"], &caps()).unwrap();
        let img = Perm::parse(3, "(0 1 2)").unwrap();
        assert!(GroupHom::from_generator_images(&c4, c3, &[img]).is_err());
    }
}
