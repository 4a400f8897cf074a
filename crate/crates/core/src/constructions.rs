//! Explicit cover families: odd symmetric groups, `A5 wr C2`, product-type
//! covers of monolithic groups, plus supplement classification and the
//! non-cycle lower bound.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::Serialize;

use crate::certificates::{
    is_irredundant, subgroup_words, verify_cover, Claim, CoverCertificate, CoverCheck, GroupRef,
    PiSpec,
};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::formulas::{eval_formula, nonciclo_bound, FormulaKind, Params, Value};
use crate::group::{wreath_cyclic_top, Elem, Group, GroupHom};
use crate::lattice::{
    all_subgroups, derived_subgroup, maximal_subgroups, minimal_normal_subgroups, normal_subgroups,
    smallest_prime_factor, NormalStructure,
};
use crate::perm::Perm;
use crate::subgroup::Subgroup;

fn cycle_perm(degree: usize, points: &[usize]) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()] as u32;
    }
    Perm::from_images(images).expect("a cycle is a permutation")
}

/// Generators of `Sym(points)` inside `Sym(degree)`.
fn sym_on(degree: usize, points: &[usize]) -> Vec<Perm> {
    match points.len() {
        0 | 1 => Vec::new(),
        2 => vec![cycle_perm(degree, points)],
        _ => vec![cycle_perm(degree, &points[..2]), cycle_perm(degree, points)],
    }
}

pub fn symmetric_generators(n: usize) -> Vec<Perm> {
    sym_on(n, &(0..n).collect::<Vec<_>>())
}

/// `(0 1 2)` with the long cycle on `0..n` (odd `n`) or on `1..n` (even `n`).
pub fn alternating_generators(n: usize) -> Vec<Perm> {
    if n < 3 {
        return Vec::new();
    }
    let long: Vec<usize> = if n % 2 == 1 {
        (0..n).collect()
    } else {
        (1..n).collect()
    };
    let mut gens = vec![cycle_perm(n, &[0, 1, 2])];
    if n > 3 {
        gens.push(cycle_perm(n, &long));
    }
    gens
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `Alt(n)` and the stabilizers of the `k`-subsets, `1 <= k <= (n-1)/2`.
#[derive(Clone, Debug)]
pub struct SymOddCover {
    pub n: usize,
    pub group_gens: Vec<Perm>,
    /// Generators of each member, `Alt(n)` first.
    pub members: Vec<Vec<Perm>>,
    /// The stabilized subset of each member after the first.
    pub subsets: Vec<Vec<usize>>,
    /// Fixed points count as cycles.
    pub pi: PiSpec,
    /// Only non-trivial cycles count.
    pub pi_alternate: PiSpec,
    /// `n = 9` with `m = 1` lies outside the exact formula's range.
    pub excluded: bool,
}

pub fn sym_odd_cover(n: usize) -> Result<SymOddCover> {
    if n.is_multiple_of(2) || n < 7 {
        return Err(Error::Hypothesis(format!("needs odd n >= 7, got {n}")));
    }
    let mut members = vec![alternating_generators(n)];
    let mut subsets = Vec::new();
    for k in 1..=(n - 1) / 2 {
        for a in subsets_of_size(n, k) {
            let rest: Vec<usize> = (0..n).filter(|p| !a.contains(p)).collect();
            let mut gens = sym_on(n, &a);
            gens.extend(sym_on(n, &rest));
            members.push(gens);
            subsets.push(a);
        }
    }
    Ok(SymOddCover {
        n,
        group_gens: symmetric_generators(n),
        members,
        subsets,
        pi: PiSpec::AtMostTwoCycles {
            count_fixed_points: true,
        },
        pi_alternate: PiSpec::AtMostTwoCycles {
            count_fixed_points: false,
        },
        excluded: n == 9,
    })
}

impl SymOddCover {
    pub fn family_size(&self) -> usize {
        self.members.len()
    }

    pub fn group(&self, caps: &Caps) -> Result<Group> {
        Group::enumerated(self.n, self.group_gens.clone(), caps)
    }

    pub fn materialize(&self, g: &Group) -> Result<Vec<Subgroup>> {
        self.members
            .iter()
            .map(|gens| g.subgroup_from_perms(gens))
            .collect()
    }

    /// Reading three: a sparse subset of the first reading's set, one element
    /// per member, any two generating the group.
    pub fn sparse_pi(&self, g: &Group, family: &[Subgroup]) -> Result<PiSpec> {
        let pool = self.pi.materialize(g)?;
        let chosen = sparse_pi(g, family, &pool)?;
        Ok(PiSpec::Explicit {
            elements: chosen.ones().map(|e| g.perm(e).to_string()).collect(),
        })
    }

    /// A cover certificate that needs no enumeration to write.
    pub fn certificate(&self) -> CoverCertificate {
        let claim = if self.excluded {
            Claim::IsCover
        } else {
            Claim::IsMinimalCover {
                value: self.family_size() as u64,
            }
        };
        CoverCertificate {
            group: GroupRef {
                name: format!("Sym({})", self.n),
                degree: self.n,
                generators: self.group_gens.iter().map(Perm::to_string).collect(),
            },
            subgroups: self
                .members
                .iter()
                .map(|gens| gens.iter().map(Perm::to_string).collect())
                .collect(),
            claim,
        }
    }
}

/// One element of `pool` per member, each lying in no other member, with any
/// two chosen elements generating `g`. Then every proper subgroup outside the
/// family meets the choice at most once. Depth-first in element order.
pub fn sparse_pi(g: &Group, family: &[Subgroup], pool: &FixedBitSet) -> Result<FixedBitSet> {
    let owned: Vec<Vec<Elem>> = family
        .iter()
        .enumerate()
        .map(|(i, h)| {
            h.elements()
                .filter(|&x| {
                    pool.contains(x)
                        && family
                            .iter()
                            .enumerate()
                            .all(|(j, o)| j == i || !o.contains(x))
                })
                .collect()
        })
        .collect();
    if let Some(i) = owned.iter().position(Vec::is_empty) {
        return Err(Error::Hypothesis(format!(
            "member {i} has no element of its own in the pool"
        )));
    }
    let mut chosen: Vec<Elem> = Vec::new();
    let mut next = vec![0usize; family.len()];
    let mut steps = 0usize;
    let mut i = 0;
    while i < family.len() {
        steps += 1;
        if steps > 1_000_000 {
            return Err(Error::Hypothesis("sparse choice search gave up".into()));
        }
        let found = owned[i][next[i]..]
            .iter()
            .position(|&c| chosen.iter().all(|&y| g.closure(&[c, y]).order == g.len()));
        match found {
            Some(off) => {
                chosen.push(owned[i][next[i] + off]);
                next[i] += off + 1;
                i += 1;
            }
            None => {
                if i == 0 {
                    return Err(Error::Hypothesis(
                        "no pairwise generating choice exists".into(),
                    ));
                }
                next[i] = 0;
                chosen.pop();
                i -= 1;
            }
        }
    }
    let mut out = g.empty_set();
    for c in chosen {
        out.insert(c);
    }
    Ok(out)
}

/// Points of each block in frame order, plus the inverse lookup.
#[derive(Clone, Debug)]
struct Frame {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    pos_of: Vec<usize>,
}

/// A monolithic group with non-abelian socle `S^m`, where the factors move
/// disjoint blocks of points. Elements are read as `(x_1, ..., x_m) k` with
/// `x_i` in `X` and `k` in `K`.
pub struct MonolithicData {
    pub group: Group,
    pub socle: Subgroup,
    pub factors: Vec<Subgroup>,
    /// Action on the factors; the target is `K` on `m` points.
    pub rho: GroupHom,
    /// `N_G(S_1)/C_G(S_1)`, acting on the block of `S_1`.
    pub x: Group,
    pub s_in_x: Subgroup,
    pub l: Subgroup,
    pub t: Subgroup,
    frame: Frame,
}

fn moved_points(g: &Group, sub: &Subgroup) -> Vec<usize> {
    let mut pts: Vec<usize> = (0..g.degree())
        .filter(|&p| sub.gens.iter().any(|&e| g.perm(e).apply(p) != p))
        .collect();
    pts.sort_unstable();
    pts
}

impl MonolithicData {
    pub fn new(g: Group, caps: &Caps) -> Result<Self> {
        g.require_elements()?;
        let ns = NormalStructure::of(&g);
        if !ns.is_monolithic() {
            return Err(Error::Hypothesis("group is not monolithic".into()));
        }
        let socle = ns.minimal[0].clone();
        let ng = g.subgroup_as_group(&socle, caps)?;
        if ng.is_abelian() {
            return Err(Error::Hypothesis("socle is abelian".into()));
        }
        let factors: Vec<Subgroup> = minimal_normal_subgroups(&normal_subgroups(&ng))
            .iter()
            .map(|f| {
                let perms: Vec<Perm> = f.gens.iter().map(|&e| ng.perm(e).clone()).collect();
                g.subgroup_from_perms(&perms)
            })
            .collect::<Result<_>>()?;
        let m = factors.len();

        let supports: Vec<Vec<usize>> = factors.iter().map(|f| moved_points(&g, f)).collect();
        let d = supports[0].len();
        let mut block_of = vec![usize::MAX; g.degree()];
        for (i, s) in supports.iter().enumerate() {
            if s.len() != d {
                return Err(Error::Hypothesis("factor supports differ in size".into()));
            }
            for &p in s {
                if block_of[p] != usize::MAX {
                    return Err(Error::Hypothesis("factor supports overlap".into()));
                }
                block_of[p] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::Hypothesis(
                "factor supports do not cover every point".into(),
            ));
        }

        // block i is read through an element carrying block 0 onto it
        let mut blocks = vec![Vec::new(); m];
        blocks[0] = supports[0].clone();
        for e in g.elements() {
            let p = g.perm(e);
            let i = block_of[p.apply(supports[0][0])];
            if blocks[i].is_empty() {
                blocks[i] = supports[0].iter().map(|&q| p.apply(q)).collect();
            }
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::Hypothesis(
                "action on the factors is not transitive".into(),
            ));
        }
        let mut pos_of = vec![0; g.degree()];
        for b in &blocks {
            for (pos, &p) in b.iter().enumerate() {
                pos_of[p] = pos;
            }
        }
        let frame = Frame {
            blocks,
            block_of,
            pos_of,
        };

        let k_images: Vec<Perm> = g
            .generators()
            .iter()
            .map(|p| {
                Perm::from_images(
                    (0..m)
                        .map(|i| frame.block_of[p.apply(frame.blocks[i][0])] as u32)
                        .collect(),
                )
            })
            .collect::<Result<_>>()?;
        let k = Group::enumerated(m, k_images.clone(), caps)?;
        let rho = GroupHom::from_generator_images(&g, k, &k_images)?;

        let stab0 = Subgroup::from_members(
            &g,
            g.elements()
                .filter(|&e| frame.block_of[g.perm(e).apply(frame.blocks[0][0])] == 0),
        );
        let restrict = |e: Elem| component_in(&frame, g.perm(e), 0).0;
        let x_gens: Vec<Perm> = stab0.gens.iter().map(|&e| restrict(e)).collect();
        let x = Group::enumerated(d, x_gens, caps)?;
        let centralizer = factors[0].centralizer(&g);
        if x.len() * centralizer.order != stab0.order {
            return Err(Error::Hypothesis(
                "block action does not realise N_G(S_1)/C_G(S_1)".into(),
            ));
        }
        let s_perms: Vec<Perm> = factors[0].gens.iter().map(|&e| restrict(e)).collect();
        let s_in_x = x.subgroup_from_perms(&s_perms)?;

        let mut data = MonolithicData {
            group: g,
            socle,
            factors,
            rho,
            x,
            s_in_x: s_in_x.clone(),
            l: s_in_x.clone(),
            t: s_in_x,
            frame,
        };
        data.l = data.compute_l()?;
        data.t = data.compute_t(caps)?;
        Ok(data)
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// `x_i` and the block it is carried to.
    pub fn component(&self, e: Elem, i: usize) -> (Perm, usize) {
        component_in(&self.frame, self.group.perm(e), i)
    }

    fn x_elem(&self, p: &Perm) -> Result<Elem> {
        self.x
            .index_of(p)
            .ok_or_else(|| Error::Hypothesis(format!("component {p} lies outside X")))
    }

    /// `x_{i_1} x_{i_2} ... x_{i_r}` as an element of `X`.
    pub fn component_product(&self, e: Elem, indices: &[usize]) -> Result<Elem> {
        let mut acc = self.x.identity();
        for &i in indices {
            let c = self.x_elem(&self.component(e, i).0)?;
            acc = self.x.mul(acc, c);
        }
        Ok(acc)
    }

    fn compute_l(&self) -> Result<Subgroup> {
        let all: Vec<usize> = (0..self.m()).collect();
        let mut seed: Vec<Elem> = self.s_in_x.gens.clone();
        let mut seen = self.x.empty_set();
        for e in self.group.elements() {
            let p = self.component_product(e, &all)?;
            if !seen.put(p) {
                seed.push(p);
            }
        }
        Ok(self.x.closure(&seed))
    }

    fn compute_t(&self, caps: &Caps) -> Result<Subgroup> {
        if self.l.order == self.s_in_x.order {
            return Ok(self.l.clone());
        }
        let lat = all_subgroups(&self.x, caps)?;
        lat.subgroups
            .iter()
            .find(|t| {
                self.s_in_x.is_subset(t)
                    && t.is_subset(&self.l)
                    && t.order < self.l.order
                    && is_prime(self.l.order / t.order)
                    && t.is_normal_in(&self.x)
            })
            .cloned()
            .ok_or_else(|| Error::Hypothesis("no normal T of prime index in L".into()))
    }

    /// `X/S` abelian.
    pub fn top_is_abelian(&self) -> bool {
        derived_subgroup(&self.x, &self.x.whole()).is_subset(&self.s_in_x)
    }

    /// `sub` (a subgroup of `X`) placed on block `i`.
    fn embed(&self, sub: &Subgroup, i: usize) -> Vec<Perm> {
        sub.gens
            .iter()
            .map(|&e| {
                let xp = self.x.perm(e);
                let mut images: Vec<u32> = (0..self.group.degree() as u32).collect();
                let b = &self.frame.blocks[i];
                for (pos, &p) in b.iter().enumerate() {
                    images[p] = b[xp.apply(pos)] as u32;
                }
                Perm::from_images(images).expect("block permutation")
            })
            .collect()
    }

    /// `N_G(A_1 x ... x A_m)` for subgroups `A_i` of `S`.
    pub fn product_type_subgroup(&self, parts: &[Subgroup]) -> Result<Subgroup> {
        let mut gens = Vec::new();
        for (i, a) in parts.iter().enumerate() {
            gens.extend(self.embed(a, i));
        }
        let d = self.group.subgroup_from_perms(&gens)?;
        Ok(d.normalizer(&self.group))
    }

    /// Distinct `S`-conjugates of `sub`.
    fn s_conjugates(&self, sub: &Subgroup) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        for s in self.s_in_x.elements() {
            let c = sub.conjugate(&self.x, s);
            if !out.iter().any(|o| o.members == c.members) {
                out.push(c);
            }
        }
        out
    }
}

fn component_in(frame: &Frame, p: &Perm, i: usize) -> (Perm, usize) {
    let b = &frame.blocks[i];
    let dest = frame.block_of[p.apply(b[0])];
    let images = b.iter().map(|&q| frame.pos_of[p.apply(q)] as u32).collect();
    (Perm::from_images(images).expect("block map"), dest)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyPart {
    /// `R`, the subgroup of elements whose component product lies in `T`.
    R,
    /// Preimage of an intransitive subgroup of `K`.
    Intransitive,
    /// Normalizer of a product of conjugates of `M ∩ S`.
    ProductType,
}

#[derive(Clone, Debug)]
pub struct ConstructedCover {
    pub members: Vec<Subgroup>,
    pub parts: Vec<FamilyPart>,
    pub check: CoverCheck,
    pub irredundant: bool,
}

impl ConstructedCover {
    fn assess(g: &Group, members: Vec<Subgroup>, parts: Vec<FamilyPart>) -> Result<Self> {
        let check = verify_cover(g, &members)?;
        let irredundant = check.is_cover && is_irredundant(g, &members);
        Ok(ConstructedCover {
            members,
            parts,
            check,
            irredundant,
        })
    }

    pub fn count(&self, part: FamilyPart) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub fn certificate(&self, name: &str, g: &Group) -> CoverCertificate {
        CoverCertificate {
            group: GroupRef::of(name, g),
            subgroups: subgroup_words(g, &self.members),
            claim: if self.irredundant {
                Claim::IsIrredundant
            } else {
                Claim::IsCover
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct SopraCover {
    pub cover: ConstructedCover,
    pub bound: BigUint,
    /// The coset representative `x` with `xS` inside the union of the family.
    pub witness_x: Perm,
}

/// The family `R`, intransitive preimages and product-type normalizers for
/// maximal subgroups `family` of `X` supplementing `S`.
pub fn sopra_cover(data: &MonolithicData, family: &[Subgroup], caps: &Caps) -> Result<SopraCover> {
    let m = data.m();
    if m < 2 {
        return Err(Error::Hypothesis("needs m >= 2".into()));
    }
    if !data.top_is_abelian() {
        return Err(Error::Hypothesis("X/S is not abelian".into()));
    }
    if family.is_empty() {
        return Err(Error::Hypothesis(
            "the family of maximal subgroups is empty".into(),
        ));
    }
    let x = &data.x;
    let s = &data.s_in_x;
    let maximals = maximal_subgroups(x, caps, None)?;
    for mx in family {
        if !maximals.subgroups().any(|y| y.members == mx.members) {
            return Err(Error::Hypothesis(
                "a family member is not maximal in X".into(),
            ));
        }
        if mx.order * s.order / mx.intersection(x, s).order != x.len() {
            return Err(Error::Hypothesis(
                "a family member does not supplement S".into(),
            ));
        }
    }
    let mut union = x.empty_set();
    for mx in family {
        union.union_with(&mx.members);
    }
    let witness = data
        .l
        .elements()
        .find(|&c| {
            s.elements().all(|t| union.contains(x.mul(c, t)))
                && data.l.is_subset(&x.extend(&data.t, &[c]))
        })
        .ok_or_else(|| {
            Error::Hypothesis("no generating coset of S in L lies in the family's union".into())
        })?;

    let g = &data.group;
    let all: Vec<usize> = (0..m).collect();
    let mut members = Vec::new();
    let mut parts = Vec::new();
    if data.l.order != data.t.order {
        let mut r = Vec::new();
        for e in g.elements() {
            if data.t.contains(data.component_product(e, &all)?) {
                r.push(e);
            }
        }
        let r = Subgroup::from_members(g, r);
        if !r.is_subgroup_of(g) {
            return Err(Error::Hypothesis("R is not a subgroup".into()));
        }
        members.push(r);
        parts.push(FamilyPart::R);
    }
    for mask in 1usize..(1 << (m - 1)) {
        let a: Vec<usize> = (1..m).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let sub = Subgroup::from_members(
            g,
            g.elements().filter(|&e| {
                let k = data.rho.target.perm(data.rho.image_of(e));
                a.iter().all(|&i| a.contains(&k.apply(i)))
            }),
        );
        members.push(sub);
        parts.push(FamilyPart::Intransitive);
    }
    let mut indices = Vec::new();
    for mx in family {
        let ms = mx.intersection(x, s);
        indices.push((s.order / ms.order) as u64);
        let conj = data.s_conjugates(&ms);
        let mut tuple = vec![0usize; m - 1];
        loop {
            let mut factors = vec![ms.clone()];
            factors.extend(tuple.iter().map(|&c| conj[c].clone()));
            members.push(data.product_type_subgroup(&factors)?);
            parts.push(FamilyPart::ProductType);
            let mut pos = 0;
            while pos < tuple.len() {
                tuple[pos] += 1;
                if tuple[pos] < conj.len() {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
            if pos == tuple.len() {
                break;
            }
        }
    }
    let params = Params {
        m: Some(m as u64),
        indices,
        ..Params::default()
    };
    let bound = match eval_formula(FormulaKind::SopraUb, &params)?.value {
        Value::UpperBound(b) => b,
        _ => unreachable!("sopra-ub is an upper bound"),
    };
    Ok(SopraCover {
        cover: ConstructedCover::assess(g, members, parts)?,
        bound,
        witness_x: x.perm(witness).clone(),
    })
}

/// `A5 wr C2` with two readings of its 57-member family.
pub struct A5Wrc2 {
    pub data: MonolithicData,
    /// Socle, `N_G(Stab(j) x Stab(j)^a)` for `j != 0` and every `a`, and all
    /// pairs of Sylow 5-normalizers.
    pub literal: ConstructedCover,
    /// Socle, `N_G(Stab(j) x Stab(k))` over ordered pairs `j != k`, and all
    /// pairs of Sylow 5-normalizers.
    pub distinct_pairs: ConstructedCover,
}

impl A5Wrc2 {
    /// The first reading that verifies as an irredundant cover.
    pub fn accepted(&self) -> Option<(&'static str, &ConstructedCover)> {
        [
            ("literal", &self.literal),
            ("distinct-pairs", &self.distinct_pairs),
        ]
        .into_iter()
        .find(|(_, c)| c.check.is_cover && c.irredundant)
    }
}

pub fn a5wrc2_cover(caps: &Caps) -> Result<A5Wrc2> {
    let a5 = Group::enumerated(5, alternating_generators(5), caps)?;
    let w = wreath_cyclic_top(&a5, 2, caps)?;
    let data = MonolithicData::new(w.group, caps)?;
    let x = &data.x;
    let stab =
        |j: usize| Subgroup::from_members(x, x.elements().filter(|&e| x.perm(e).apply(j) == j));
    let sylow_normalizers: Vec<Subgroup> = {
        let mut out: Vec<Subgroup> = Vec::new();
        for e in x.elements().filter(|&e| x.elem_order(e) == 5) {
            let nrm = x.closure(&[e]).normalizer(x);
            if !out.iter().any(|o| o.members == nrm.members) {
                out.push(nrm);
            }
        }
        out
    };
    let mut family: Vec<Subgroup> = (1..5).map(stab).collect();
    family.extend(sylow_normalizers.iter().cloned());
    let literal = sopra_cover(&data, &family, caps)?.cover;

    let g = &data.group;
    let mut members = vec![data.socle.clone()];
    let mut parts = vec![FamilyPart::Intransitive];
    for j in 0..5 {
        for k in (0..5).filter(|&k| k != j) {
            members.push(data.product_type_subgroup(&[stab(j), stab(k)])?);
            parts.push(FamilyPart::ProductType);
        }
    }
    for p in &sylow_normalizers {
        for q in &sylow_normalizers {
            members.push(data.product_type_subgroup(&[p.clone(), q.clone()])?);
            parts.push(FamilyPart::ProductType);
        }
    }
    let distinct_pairs = ConstructedCover::assess(g, members, parts)?;
    Ok(A5Wrc2 {
        data,
        literal,
        distinct_pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SupplementType {
    /// `H ∩ N` is the product of its projections `M^{a_i}`.
    ProductType {
        m_order: usize,
        /// `a_i` with `π_i(H ∩ N) = M^{a_i}`, read in `X`; `a_1 = 1`.
        conjugators: Vec<String>,
        is_full_product: bool,
    },
    /// Every projection is onto; the blocks are the factors joined diagonally.
    DiagonalType {
        blocks: Vec<Vec<usize>>,
    },
    Complement,
}

pub fn classify_supplement(data: &MonolithicData, h: &Subgroup) -> Result<SupplementType> {
    let g = &data.group;
    let n = &data.socle;
    let hn = h.intersection(g, n);
    if h.order * n.order / hn.order != g.len() {
        return Err(Error::Hypothesis("H does not supplement the socle".into()));
    }
    if hn.order == 1 {
        return Ok(SupplementType::Complement);
    }
    let s_order = data.s_in_x.order;
    let m = data.m();
    let centralizers: Vec<Subgroup> = data
        .factors
        .iter()
        .map(|f| f.centralizer(g).intersection(g, n))
        .collect();
    let proj_order = |c: &Subgroup| hn.order / hn.intersection(g, c).order;
    let onto: Vec<bool> = centralizers
        .iter()
        .map(|c| proj_order(c) == s_order)
        .collect();
    if onto.iter().all(|&b| !b) {
        // projections read in X through the frame
        let proj = |i: usize| -> Result<Subgroup> {
            let perms: Vec<Perm> = hn.gens.iter().map(|&e| data.component(e, i).0).collect();
            data.x.subgroup_from_perms(&perms)
        };
        let first = proj(0)?;
        let mut conjugators = vec![data.x.perm(data.x.identity()).to_string()];
        let mut prod = first.order;
        for i in 1..m {
            let pi = proj(i)?;
            prod *= pi.order;
            let a = data
                .s_in_x
                .elements()
                .find(|&a| first.conjugate(&data.x, a).members == pi.members)
                .ok_or_else(|| Error::Hypothesis("projections are not S-conjugate".into()))?;
            conjugators.push(data.x.perm(a).to_string());
        }
        return Ok(SupplementType::ProductType {
            m_order: first.order,
            conjugators,
            is_full_product: prod == hn.order,
        });
    }
    if onto.iter().all(|&b| b) {
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for i in 0..m {
            for j in i + 1..m {
                let both = centralizers[i].intersection(g, &centralizers[j]);
                if proj_order(&both) == s_order {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[b] = a;
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..m {
            let r = find(&mut parent, i);
            match blocks.iter_mut().find(|b| find(&mut parent, b[0]) == r) {
                Some(b) => b.push(i),
                None => blocks.push(vec![i]),
            }
        }
        return Ok(SupplementType::DiagonalType { blocks });
    }
    Err(Error::Hypothesis(
        "projections are onto for some factors only".into(),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct NoncicloReport {
    /// Pairs of `S`-classes of `X` whose members always generate a group containing `S`.
    pub class_pairs: usize,
    /// `|Z ∩ (S x S)|`.
    pub z_in_s_squared: usize,
    pub e_k: usize,
    pub r: usize,
    pub exponent: i64,
    #[serde(serialize_with = "as_decimal")]
    pub bound: BigUint,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

const NONCICLO_MAX_S: usize = 60;

/// `|E_k| * |S|^(m - m/r - 2)`, rounded up, for `k` in `K` not an `m`-cycle.
pub fn nonciclo_lower_bound(data: &MonolithicData, k: &Perm) -> Result<NoncicloReport> {
    let x = &data.x;
    let s = &data.s_in_x;
    let m = data.m();
    if s.order > NONCICLO_MAX_S {
        return Err(Error::CapExceeded {
            what: "socle factor",
            order: s.order as u128,
            cap: NONCICLO_MAX_S,
        });
    }
    let kt = &data.rho.target;
    let ke = kt
        .index_of(k)
        .ok_or_else(|| Error::Hypothesis(format!("{k} is not in K")))?;
    let cycles = k.cycles();
    if cycles.len() < 2 {
        return Err(Error::Hypothesis("k is an m-cycle".into()));
    }
    let (o1, o2) = (&cycles[0], &cycles[1]);

    // membership in Z depends only on the S-classes of z and w
    let mut class_of = vec![usize::MAX; x.len()];
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for z in x.elements() {
        if class_of[z] != usize::MAX {
            continue;
        }
        let mut cls: Vec<Elem> = s.elements().map(|a| x.conj(z, a)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &c in &cls {
            class_of[c] = classes.len();
        }
        classes.push(cls);
    }
    let nc = classes.len();
    let mut good = vec![false; nc * nc];
    for c1 in 0..nc {
        let z = classes[c1][0];
        for c2 in 0..nc {
            good[c1 * nc + c2] = classes[c2]
                .iter()
                .all(|&w| s.is_subset(&x.closure(&[z, w])));
        }
    }
    let z_in_s_squared = (0..nc)
        .flat_map(|a| (0..nc).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            good[a * nc + b] && s.contains(classes[a][0]) && s.contains(classes[b][0])
        })
        .map(|(a, b)| classes[a].len() * classes[b].len())
        .sum();

    let mut pairs: HashSet<(Elem, Elem)> = HashSet::new();
    for e in data.group.elements() {
        if data.rho.image_of(e) != ke {
            continue;
        }
        let p1 = data.component_product(e, o1)?;
        let p2 = data.component_product(e, o2)?;
        if good[class_of[p1] * nc + class_of[p2]] {
            pairs.insert((p1, p2));
        }
    }
    let r = smallest_prime_factor(m);
    let exponent = m as i64 - (m / r) as i64 - 2;
    Ok(NoncicloReport {
        class_pairs: good.iter().filter(|&&b| b).count(),
        z_in_s_squared,
        e_k: pairs.len(),
        r,
        exponent,
        bound: nonciclo_bound(pairs.len() as u64, s.order as u64, m as u64),
    })
}

#[derive(Clone, Debug)]
pub struct AbmnsCover {
    pub cover: ConstructedCover,
    /// `2|V| - 1`.
    pub bound: u64,
}

/// `{H^v : v in V} ∪ {C_H(v) V : 1 != v in V}`, duplicates removed.
pub fn abmns_cover(g: &Group, v: &Subgroup, h: &Subgroup) -> Result<AbmnsCover> {
    if !v.is_normal_in(g) {
        return Err(Error::Hypothesis("V is not normal".into()));
    }
    let abelian = v
        .gens
        .iter()
        .all(|&a| v.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if !abelian {
        return Err(Error::Hypothesis("V is not abelian".into()));
    }
    if v.order == 1 || v.intersection(g, &g.center()).order != 1 {
        return Err(Error::Hypothesis("V meets the center non-trivially".into()));
    }
    if h.order * v.order != g.len() || h.intersection(g, v).order != 1 {
        return Err(Error::Hypothesis("H does not complement V".into()));
    }
    let mut members: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut push = |s: Subgroup, members: &mut Vec<Subgroup>| {
        if seen.insert(s.members.clone()) {
            members.push(s);
        }
    };
    for a in v.elements() {
        push(h.conjugate(g, a), &mut members);
    }
    for a in v.elements().filter(|&a| a != g.identity()) {
        let ca = Subgroup::from_members(g, h.elements().filter(|&y| g.mul(y, a) == g.mul(a, y)));
        let mut gens = ca.gens.clone();
        gens.extend(v.gens.iter().copied());
        push(g.closure(&gens), &mut members);
    }
    let parts = vec![FamilyPart::ProductType; members.len()];
    Ok(AbmnsCover {
        cover: ConstructedCover::assess(g, members, parts)?,
        bound: 2 * v.order as u64 - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn sym_odd_sizes() {
        for n in [7usize, 9, 11, 13, 15] {
            let c = sym_odd_cover(n).unwrap();
            assert_eq!(c.family_size(), 1 << (n - 1));
            assert_eq!(c.excluded, n == 9);
        }
        assert!(sym_odd_cover(8).is_err());
        assert!(sym_odd_cover(5).is_err());
    }

    #[test]
    fn sym7_family_covers() {
        let c = sym_odd_cover(7).unwrap();
        let g = c.group(&caps()).unwrap();
        assert_eq!(g.len(), 5040);
        let fam = c.materialize(&g).unwrap();
        assert_eq!(fam[0].order, 2520);
        assert!(fam[1..].iter().all(|h| h.order < 5040));
        assert!(verify_cover(&g, &fam).unwrap().is_cover);
        assert!(is_irredundant(&g, &fam));
    }

    #[test]
    fn alternating_gens() {
        for n in 3..=7 {
            let g = Group::enumerated(n, alternating_generators(n), &caps()).unwrap();
            assert_eq!(g.len(), (1..=n).product::<usize>() / 2, "n = {n}");
        }
    }

    #[test]
    fn a5wrc2_readings() {
        let w = a5wrc2_cover(&caps()).unwrap();
        assert_eq!(w.data.m(), 2);
        assert_eq!(w.data.x.len(), 60);
        assert_eq!(w.literal.members.len(), 57);
        assert_eq!(w.literal.count(FamilyPart::Intransitive), 1);
        assert_eq!(w.literal.count(FamilyPart::ProductType), 56);
        assert!(w.literal.check.is_cover);
        assert!(w.literal.irredundant);
        assert_eq!(w.distinct_pairs.members.len(), 57);
        assert!(!w.distinct_pairs.check.is_cover);
        assert_eq!(w.accepted().unwrap().0, "literal");
    }

    #[test]
    fn classify_in_a5wrc2() {
        let w = a5wrc2_cover(&caps()).unwrap();
        let d = &w.data;
        let g = &d.group;
        let h = &w.literal.members[1];
        match classify_supplement(d, h).unwrap() {
            SupplementType::ProductType {
                m_order,
                is_full_product,
                ..
            } => {
                assert_eq!(m_order, 12);
                assert!(is_full_product);
            }
            other => panic!("{other:?}"),
        }
        // the diagonal {(x, x)} extended by the swap
        let mut diag_gens: Vec<Perm> = Vec::new();
        for p in alternating_generators(5) {
            let mut images: Vec<u32> = (0..10).collect();
            for i in 0..5 {
                images[i] = p.apply(i) as u32;
                images[i + 5] = p.apply(i) as u32 + 5;
            }
            diag_gens.push(Perm::from_images(images).unwrap());
        }
        diag_gens.push(Perm::parse(10, "(0 5)(1 6)(2 7)(3 8)(4 9)").unwrap());
        let diag = g.subgroup_from_perms(&diag_gens).unwrap();
        assert_eq!(diag.order, 120);
        assert_eq!(
            classify_supplement(d, &diag).unwrap(),
            SupplementType::DiagonalType {
                blocks: vec![vec![0, 1]]
            }
        );
        assert!(classify_supplement(d, &d.factors[0]).is_err());
    }

    #[test]
    fn nonciclo_on_a5wrc2() {
        let w = a5wrc2_cover(&caps()).unwrap();
        let r = nonciclo_lower_bound(&w.data, &Perm::identity(2)).unwrap();
        assert!(r.z_in_s_squared > 0);
        assert_eq!(r.exponent, -1);
        assert_eq!(r.e_k, r.z_in_s_squared);
        assert_eq!(r.bound, nonciclo_bound(r.e_k as u64, 60, 2));
        assert!(nonciclo_lower_bound(&w.data, &Perm::parse(2, "(0 1)").unwrap()).is_err());
    }

    #[test]
    fn sopra_refusals() {
        let w = a5wrc2_cover(&caps()).unwrap();
        let x = &w.data.x;
        let stab0 = Subgroup::from_members(x, x.elements().filter(|&e| x.perm(e).apply(0) == 0));
        // a single point stabilizer misses the 5-cycles
        assert!(sopra_cover(&w.data, &[stab0], &caps()).is_err());
        assert!(sopra_cover(&w.data, &[], &caps()).is_err());
        let s5 = Group::enumerated(5, symmetric_generators(5), &caps()).unwrap();
        assert!(MonolithicData::new(s5, &caps()).is_ok());
        let v4 = Group::from_words(4, &["(0 1)", "(2 3)"], &caps()).unwrap();
        assert!(MonolithicData::new(v4, &caps()).is_err());
    }

    #[test]
    fn abmns_examples() {
        let s4 = Group::enumerated(4, symmetric_generators(4), &caps()).unwrap();
        let v = normal_subgroups(&s4)
            .into_iter()
            .find(|n| n.order == 4)
            .unwrap();
        let h = Subgroup::from_members(&s4, s4.elements().filter(|&e| s4.perm(e).apply(3) == 3));
        let c = abmns_cover(&s4, &v, &h).unwrap();
        assert!(c.cover.members.len() as u64 <= c.bound);
        assert_eq!(c.bound, 7);
        assert!(c.cover.check.is_cover);

        let s3 = Group::enumerated(3, symmetric_generators(3), &caps()).unwrap();
        let a3 = normal_subgroups(&s3)
            .into_iter()
            .find(|n| n.order == 3)
            .unwrap();
        let c2 = s3.closure(&[s3.index_of(&Perm::parse(3, "(0 1)").unwrap()).unwrap()]);
        let c = abmns_cover(&s3, &a3, &c2).unwrap();
        assert_eq!(c.cover.members.len(), 4);
        assert!(c.cover.check.is_cover);

        let c6 = Group::from_words(5, &["(0 1 2)", "(3 4)"], &caps()).unwrap();
        let z = normal_subgroups(&c6)
            .into_iter()
            .find(|n| n.order == 2)
            .unwrap();
        let h = normal_subgroups(&c6)
            .into_iter()
            .find(|n| n.order == 3)
            .unwrap();
        assert!(abmns_cover(&c6, &z, &h).is_err());
    }
}
