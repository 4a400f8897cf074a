//! Cover verification and definite-unbeatability checking.
//!
//! A family `H` of proper subgroups is definitely unbeatable on `Π ⊆ X` when
//!
//! 1. every member meets `Π`,
//! 2. the members cover `Π`,
//! 3. no element of `Π` lies in two members,
//! 4. `|Π ∩ K| <= |Π ∩ H|` for every member `H` and every proper `K` outside the family.
//!
//! Then any family of proper subgroups covering `Π` has at least `|H|` members.

use std::collections::HashSet;
use std::path::Path;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::lattice::Lattice;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

const MAX_UNCOVERED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub is_cover: bool,
    /// Up to ten elements outside the union.
    pub uncovered: Vec<Elem>,
}

/// Whether the subgroups cover `g`. A member equal to `g` is an error.
pub fn verify_cover(g: &Group, subs: &[Subgroup]) -> Result<CoverCheck> {
    g.require_elements()?;
    let mut union = g.empty_set();
    for (i, s) in subs.iter().enumerate() {
        if !s.is_proper(g) {
            return Err(Error::Certificate(format!(
                "member #{i} is the whole group"
            )));
        }
        union.union_with(&s.members);
    }
    union.toggle_range(..);
    let uncovered: Vec<Elem> = union.ones().take(MAX_UNCOVERED).collect();
    Ok(CoverCheck {
        is_cover: uncovered.is_empty(),
        uncovered,
    })
}

/// No member can be dropped without losing coverage.
pub fn is_irredundant(g: &Group, cover: &[Subgroup]) -> bool {
    let mut multiplicity = vec![0u32; g.len()];
    for s in cover {
        for x in s.members.ones() {
            multiplicity[x] += 1;
        }
    }
    cover
        .iter()
        .all(|s| s.members.ones().any(|x| multiplicity[x] == 1))
}

/// How `Π` is described in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PiSpec {
    Explicit {
        elements: Vec<String>,
    },
    /// Permutations with at most two cycles. With `count_fixed_points` the
    /// fixed points count as cycles of length one; otherwise only
    /// non-identity permutations with at most two non-trivial cycles qualify.
    AtMostTwoCycles {
        count_fixed_points: bool,
    },
    /// Union of the conjugacy classes of the listed representatives.
    UnionOfClasses {
        representatives: Vec<String>,
    },
}

impl PiSpec {
    pub fn materialize(&self, g: &Group) -> Result<FixedBitSet> {
        let mut pi = g.empty_set();
        match self {
            PiSpec::Explicit { elements } => {
                for w in elements {
                    pi.insert(element_of(g, w)?);
                }
            }
            PiSpec::AtMostTwoCycles { count_fixed_points } => {
                for x in g.elements() {
                    let p = g.perm(x);
                    let cycles = p.cycles();
                    let keep = if *count_fixed_points {
                        cycles.len() <= 2
                    } else {
                        let nontrivial = cycles.iter().filter(|c| c.len() > 1).count();
                        (1..=2).contains(&nontrivial)
                    };
                    if keep {
                        pi.insert(x);
                    }
                }
            }
            PiSpec::UnionOfClasses { representatives } => {
                let reps = representatives
                    .iter()
                    .map(|w| element_of(g, w))
                    .collect::<Result<HashSet<_>>>()?;
                for class in g.conjugacy_classes() {
                    if class.iter().any(|x| reps.contains(x)) {
                        for &x in &class {
                            pi.insert(x);
                        }
                    }
                }
            }
        }
        Ok(pi)
    }

    /// Conjugation-closed by construction.
    pub fn is_conjugation_closed(&self) -> bool {
        !matches!(self, PiSpec::Explicit { .. })
    }
}

fn element_of(g: &Group, word: &str) -> Result<Elem> {
    let p = Perm::parse(g.degree(), word)?;
    g.index_of(&p)
        .ok_or_else(|| Error::Certificate(format!("{word} is not in the group")))
}

pub fn is_conjugation_closed(g: &Group, set: &FixedBitSet) -> bool {
    let gens = g.generator_elems();
    set.ones()
        .all(|x| gens.iter().all(|&s| set.contains(g.conj(x, s))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition4Mode {
    PerClass,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    /// `None` when the condition could not be checked.
    pub holds: Option<bool>,
    pub detail: String,
}

impl ConditionResult {
    fn pass(detail: impl Into<String>) -> Self {
        ConditionResult {
            holds: Some(true),
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        ConditionResult {
            holds: Some(false),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    /// The first failing condition (1-based).
    Fails(u8),
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnbeatabilityReport {
    pub conditions: [ConditionResult; 4],
    pub verdict: Verdict,
    pub family_size: usize,
    pub pi_size: usize,
    pub mode: Option<Condition4Mode>,
    /// Largest `|Π ∩ K|` over proper subgroups `K` outside the family.
    pub max_outside: Option<usize>,
    /// Smallest `|Π ∩ H|` over the family.
    pub min_inside: usize,
}

impl UnbeatabilityReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Checks the four conditions. Condition 4 needs the subgroup lattice; without
/// it the verdict is `Indeterminate` unless an earlier condition fails.
pub fn check_definitely_unbeatable(
    g: &Group,
    family: &[Subgroup],
    pi: &FixedBitSet,
    lattice: Option<&Lattice>,
    mode: Condition4Mode,
) -> Result<UnbeatabilityReport> {
    g.require_elements()?;
    for (i, h) in family.iter().enumerate() {
        if !h.is_proper(g) {
            return Err(Error::Certificate(format!(
                "family member #{i} is the whole group"
            )));
        }
    }
    if mode == Condition4Mode::PerClass && !is_conjugation_closed(g, pi) {
        return Err(Error::Certificate(
            "per-class checking needs a conjugation-closed set".into(),
        ));
    }
    let meet = |s: &Subgroup| {
        let mut m = s.members.clone();
        m.intersect_with(pi);
        m.count_ones(..)
    };
    let inside: Vec<usize> = family.iter().map(meet).collect();
    let min_inside = inside.iter().copied().min().unwrap_or(0);

    let c1 = match inside.iter().position(|&k| k == 0) {
        Some(i) => ConditionResult::fail(format!("member #{i} misses the set")),
        None if pi.count_ones(..) == 0 => ConditionResult::fail("the set is empty"),
        None => ConditionResult::pass("every member meets the set"),
    };

    let mut multiplicity = vec![0u32; g.len()];
    for h in family {
        for x in h.members.ones() {
            if pi.contains(x) {
                multiplicity[x] += 1;
            }
        }
    }
    let c2 = match pi.ones().find(|&x| multiplicity[x] == 0) {
        Some(x) => ConditionResult::fail(format!("{} is not covered", g.perm(x))),
        None => ConditionResult::pass("the set is covered"),
    };
    let c3 = match pi.ones().find(|&x| multiplicity[x] > 1) {
        Some(x) => {
            let others: Vec<usize> = family
                .iter()
                .enumerate()
                .filter(|(_, h)| h.contains(x))
                .map(|(i, _)| i)
                .collect();
            ConditionResult::fail(format!(
                "{} lies in members {:?}",
                g.perm(x),
                &others[..others.len().min(4)]
            ))
        }
        None => ConditionResult::pass("members meet the set disjointly"),
    };

    let (c4, max_outside) = match lattice {
        None => (
            ConditionResult {
                holds: None,
                detail: "subgroup lattice unavailable".into(),
            },
            None,
        ),
        Some(lat) => {
            let in_family: HashSet<&FixedBitSet> = family.iter().map(|h| &h.members).collect();
            let mut worst: Option<(usize, usize)> = None;
            let consider = |pos: usize, worst: &mut Option<(usize, usize)>| {
                let k = &lat.subgroups[pos];
                let v = meet(k);
                if worst.is_none_or(|(w, _)| v > w) {
                    *worst = Some((v, pos));
                }
            };
            match mode {
                Condition4Mode::Exhaustive => {
                    for (pos, k) in lat.subgroups.iter().enumerate() {
                        if k.order < g.len() && !in_family.contains(&k.members) {
                            consider(pos, &mut worst);
                        }
                    }
                }
                Condition4Mode::PerClass => {
                    for class in &lat.classes {
                        let k = &lat.subgroups[class[0]];
                        if k.order == g.len() {
                            continue;
                        }
                        // |Π ∩ K| is constant on the class
                        if let Some(&pos) = class
                            .iter()
                            .find(|&&p| !in_family.contains(&lat.subgroups[p].members))
                        {
                            consider(pos, &mut worst);
                        }
                    }
                }
            }
            match worst {
                None => (
                    ConditionResult::pass("no subgroup outside the family"),
                    None,
                ),
                Some((v, _)) if v <= min_inside => (
                    ConditionResult::pass(format!(
                        "max |Π∩K| outside the family is {v} <= {min_inside}"
                    )),
                    Some(v),
                ),
                Some((v, pos_k)) => {
                    let k = &lat.subgroups[pos_k];
                    (
                        ConditionResult::fail(format!(
                            "subgroup of order {} generated by [{}] meets the set in {v} > {min_inside} elements",
                            k.order,
                            k.generator_words(g).join(", ")
                        )),
                        Some(v),
                    )
                }
            }
        }
    };

    let conditions = [c1, c2, c3, c4];
    let verdict = match conditions.iter().position(|c| c.holds == Some(false)) {
        Some(i) => Verdict::Fails(i as u8 + 1),
        None if conditions.iter().all(|c| c.holds == Some(true)) => Verdict::Holds,
        None => Verdict::Indeterminate,
    };
    Ok(UnbeatabilityReport {
        conditions,
        verdict,
        family_size: family.len(),
        pi_size: pi.count_ones(..),
        mode: lattice.map(|_| mode),
        max_outside,
        min_inside,
    })
}

/// The least number of proper subgroups covering `Π`, read off a verified
/// definitely-unbeatable family. It is also a lower bound for `sigma`.
pub fn conclude_sigma_pi(report: &UnbeatabilityReport) -> Result<u64> {
    if !report.holds() {
        return Err(Error::Certificate(format!(
            "certificate not verified (verdict {:?})",
            report.verdict
        )));
    }
    Ok(report.family_size as u64)
}

/// A group referenced by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupRef {
    pub fn of(name: &str, g: &Group) -> Self {
        GroupRef {
            name: name.to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(Perm::to_string).collect(),
        }
    }

    pub fn build(&self, caps: &Caps) -> Result<Group> {
        let words: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        Group::from_words(self.degree, &words, caps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    IsCover,
    IsMinimalCover { value: u64 },
    IsIrredundant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub group: GroupRef,
    pub subgroups: Vec<Vec<String>>,
    pub claim: Claim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnbeatabilityCertificate {
    pub group: GroupRef,
    pub family: Vec<Vec<String>>,
    pub pi: PiSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    Cover(CoverCertificate),
    Unbeatability(UnbeatabilityCertificate),
}

impl Certificate {
    pub fn load(path: impl AsRef<Path>) -> Result<Certificate> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn group(&self) -> &GroupRef {
        match self {
            Certificate::Cover(c) => &c.group,
            Certificate::Unbeatability(c) => &c.group,
        }
    }
}

pub fn subgroup_words(g: &Group, subs: &[Subgroup]) -> Vec<Vec<String>> {
    subs.iter().map(|s| s.generator_words(g)).collect()
}

pub fn subgroups_from_words(g: &Group, lists: &[Vec<String>]) -> Result<Vec<Subgroup>> {
    lists
        .iter()
        .map(|words| {
            let perms = words
                .iter()
                .map(|w| Perm::parse(g.degree(), w))
                .collect::<Result<Vec<_>>>()?;
            g.subgroup_from_perms(&perms)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverCertificateReport {
    pub members: usize,
    pub is_cover: bool,
    pub uncovered: Vec<String>,
    pub irredundant: Option<bool>,
    pub claim_holds: bool,
}

/// Checks a cover certificate. A minimal-cover claim is checked for coverage,
/// size and irredundancy; minimality itself is not re-derived here.
pub fn check_cover_certificate(
    cert: &CoverCertificate,
    caps: &Caps,
) -> Result<CoverCertificateReport> {
    let g = cert.group.build(caps)?;
    g.require_elements()?;
    let subs = subgroups_from_words(&g, &cert.subgroups)?;
    let check = verify_cover(&g, &subs)?;
    let irredundant = match cert.claim {
        Claim::IsCover => None,
        _ => Some(check.is_cover && is_irredundant(&g, &subs)),
    };
    let claim_holds = check.is_cover
        && match cert.claim {
            Claim::IsCover => true,
            Claim::IsIrredundant => irredundant == Some(true),
            Claim::IsMinimalCover { value } => {
                irredundant == Some(true) && subs.len() as u64 == value
            }
        };
    Ok(CoverCertificateReport {
        members: subs.len(),
        is_cover: check.is_cover,
        uncovered: check
            .uncovered
            .iter()
            .map(|&x| g.perm(x).to_string())
            .collect(),
        irredundant,
        claim_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{all_subgroups, maximal_cyclic_subgroups};

    fn caps() -> Caps {
        Caps::default()
    }

    fn s3() -> Group {
        Group::from_words(3, &["(0 1 2)", "(0 1)"], &caps()).unwrap()
    }

    fn proper(g: &Group) -> Vec<Subgroup> {
        all_subgroups(g, &caps())
            .unwrap()
            .subgroups
            .into_iter()
            .filter(|s| s.is_proper(g) && s.order > 1)
            .collect()
    }

    #[test]
    fn klein_cover() {
        let v4 = Group::from_words(4, &["(0 1)", "(2 3)"], &caps()).unwrap();
        let subs = proper(&v4);
        assert_eq!(subs.len(), 3);
        assert!(verify_cover(&v4, &subs).unwrap().is_cover);
        assert!(is_irredundant(&v4, &subs));
    }

    #[test]
    fn s3_by_a3_leaves_transpositions() {
        let g = s3();
        let a3 = g.closure(&[g.index_of(&Perm::parse(3, "(0 1 2)").unwrap()).unwrap()]);
        let check = verify_cover(&g, &[a3]).unwrap();
        assert!(!check.is_cover);
        assert_eq!(check.uncovered.len(), 3);
        assert!(check
            .uncovered
            .iter()
            .all(|&x| g.perm(x).cycle_type() == vec![1, 2]));
        assert!(verify_cover(&g, &[g.whole()]).is_err());
    }

    #[test]
    fn elementary_abelian_rank_three() {
        let g = Group::from_words(6, &["(0 1)", "(2 3)", "(4 5)"], &caps()).unwrap();
        let cyclic: Vec<Subgroup> = maximal_cyclic_subgroups(&g)
            .into_iter()
            .map(|c| g.closure(&[c.generator]))
            .collect();
        assert_eq!(cyclic.len(), 7);
        assert!(verify_cover(&g, &cyclic).unwrap().is_cover);
        assert!(is_irredundant(&g, &cyclic));
    }

    #[test]
    fn duplicated_member_is_redundant() {
        let g = s3();
        let lat = all_subgroups(&g, &caps()).unwrap();
        let mut cover: Vec<Subgroup> = lat.maximal_subgroups().cloned().collect();
        assert_eq!(cover.len(), 4);
        assert!(is_irredundant(&g, &cover));
        let a3 = cover.iter().find(|s| s.order == 3).unwrap().clone();
        cover.push(a3);
        assert!(verify_cover(&g, &cover).unwrap().is_cover);
        assert!(!is_irredundant(&g, &cover));
    }

    #[test]
    fn empty_set_fails_condition_one() {
        let g = s3();
        let lat = all_subgroups(&g, &caps()).unwrap();
        let family: Vec<Subgroup> = lat.maximal_subgroups().cloned().collect();
        let r = check_definitely_unbeatable(
            &g,
            &family,
            &g.empty_set(),
            Some(&lat),
            Condition4Mode::Exhaustive,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Fails(1));
        assert!(conclude_sigma_pi(&r).is_err());
    }

    #[test]
    fn single_maximal_on_a_subset_of_itself() {
        // any K meets Π ⊆ M in at most |Π| elements, so ties keep condition 4 true
        let g = Group::from_words(4, &["(0 1 2)", "(1 2 3)"], &caps()).unwrap();
        let lat = all_subgroups(&g, &caps()).unwrap();
        let v4 = lat.subgroups.iter().find(|s| s.order == 4).unwrap().clone();
        let mut pi = v4.members.clone();
        pi.set(0, false);
        let r = check_definitely_unbeatable(&g, &[v4], &pi, Some(&lat), Condition4Mode::Exhaustive)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(conclude_sigma_pi(&r).unwrap(), 1);
    }

    #[test]
    fn condition_four_violation_is_reported() {
        // C2^3 with the family {<a>, <b>} on Π = {a, b}: <a, b> meets Π twice
        let g = Group::from_words(6, &["(0 1)", "(2 3)", "(4 5)"], &caps()).unwrap();
        let lat = all_subgroups(&g, &caps()).unwrap();
        let a = g.index_of(&Perm::parse(6, "(0 1)").unwrap()).unwrap();
        let b = g.index_of(&Perm::parse(6, "(2 3)").unwrap()).unwrap();
        let family = vec![g.closure(&[a]), g.closure(&[b])];
        let mut pi = g.empty_set();
        pi.insert(a);
        pi.insert(b);
        for mode in [Condition4Mode::Exhaustive, Condition4Mode::PerClass] {
            let r = check_definitely_unbeatable(&g, &family, &pi, Some(&lat), mode).unwrap();
            assert!(r.conditions[..3].iter().all(|c| c.holds == Some(true)));
            assert_eq!(r.verdict, Verdict::Fails(4));
            assert_eq!(r.max_outside, Some(2));
            assert!(r.conditions[3].detail.contains("order 4"));
        }
        // an element in two members breaks condition 3
        let mut pi3 = pi.clone();
        pi3.insert(0);
        let r =
            check_definitely_unbeatable(&g, &family, &pi3, Some(&lat), Condition4Mode::Exhaustive)
                .unwrap();
        assert_eq!(r.verdict, Verdict::Fails(3));
    }

    #[test]
    fn missing_lattice_is_indeterminate() {
        let g = s3();
        let lat = all_subgroups(&g, &caps()).unwrap();
        let family: Vec<Subgroup> = lat.maximal_subgroups().cloned().collect();
        let mut pi = g.full_set();
        pi.set(0, false);
        let r =
            check_definitely_unbeatable(&g, &family, &pi, None, Condition4Mode::PerClass).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
        assert!(conclude_sigma_pi(&r).is_err());
        let r = check_definitely_unbeatable(&g, &family, &pi, Some(&lat), Condition4Mode::PerClass)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(conclude_sigma_pi(&r).unwrap(), 4);
    }

    #[test]
    fn certificate_json_round_trip() {
        let g = s3();
        let lat = all_subgroups(&g, &caps()).unwrap();
        let family: Vec<Subgroup> = lat.maximal_subgroups().cloned().collect();
        let cert = Certificate::Cover(CoverCertificate {
            group: GroupRef::of("S3", &g),
            subgroups: subgroup_words(&g, &family),
            claim: Claim::IsMinimalCover { value: 4 },
        });
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        let Certificate::Cover(c) = back else {
            unreachable!()
        };
        let rep = check_cover_certificate(&c, &caps()).unwrap();
        assert!(rep.claim_holds);
        let mut tampered = c.clone();
        tampered.subgroups.pop();
        let rep = check_cover_certificate(&tampered, &caps()).unwrap();
        assert!(!rep.claim_holds);
        assert!(!rep.uncovered.is_empty());
    }

    #[test]
    fn pi_descriptors() {
        let g = Group::from_words(4, &["(0 1 2 3)", "(0 1)"], &caps()).unwrap();
        let a = PiSpec::AtMostTwoCycles {
            count_fixed_points: true,
        }
        .materialize(&g)
        .unwrap();
        // 4-cycles, 3-cycles with a fixed point, double transpositions
        assert_eq!(a.count_ones(..), 6 + 8 + 3);
        let b = PiSpec::AtMostTwoCycles {
            count_fixed_points: false,
        }
        .materialize(&g)
        .unwrap();
        assert_eq!(b.count_ones(..), 23);
        let c = PiSpec::UnionOfClasses {
            representatives: vec!["(0 1)".into()],
        }
        .materialize(&g)
        .unwrap();
        assert_eq!(c.count_ones(..), 6);
        assert!(is_conjugation_closed(&g, &c));
        let e = PiSpec::Explicit {
            elements: vec!["(0 1)".into()],
        }
        .materialize(&g)
        .unwrap();
        assert!(!is_conjugation_closed(&g, &e));
    }
}
