//! Classification of corpus groups and the monolithicity probe.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{coset_action, Group};
use crate::lattice::{is_primitive, maximal_subgroups, NormalStructure};
use crate::sigma::{sigma, sigma_star, Mode, Sigma, SigmaOptions, SigmaResult};
use crate::spec_file::GroupSpec;

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub name: String,
    pub order: String,
    pub sigma: Option<Sigma>,
    pub interval: (Sigma, Sigma),
    pub method: String,
    /// `None` for cyclic groups or when a quotient value is undecided.
    pub sigma_elementary: Option<bool>,
    pub monolithic: Option<bool>,
    pub primitive: Option<bool>,
    pub abelian: Option<bool>,
    pub expected: Option<Sigma>,
    pub expected_matches: Option<bool>,
    /// A non-abelian, non-monolithic sigma-elementary group.
    pub conjecture_event: bool,
    pub error: Option<String>,
}

impl GroupReport {
    fn failed(name: &str, order: String, err: &Error) -> Self {
        GroupReport {
            name: name.to_string(),
            order,
            sigma: None,
            interval: (Sigma::Finite(3), Sigma::Infinite),
            method: "error".into(),
            sigma_elementary: None,
            monolithic: None,
            primitive: None,
            abelian: None,
            expected: None,
            expected_matches: None,
            conjecture_event: false,
            error: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub groups: Vec<GroupReport>,
}

#[derive(Serialize)]
struct ConjectureEvent<'a> {
    event: &'static str,
    group: &'a str,
    sigma: Option<Sigma>,
}

impl ClassificationReport {
    pub fn conjecture_events(&self) -> impl Iterator<Item = &GroupReport> {
        self.groups.iter().filter(|g| g.conjecture_event)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &GroupReport> {
        self.groups
            .iter()
            .filter(|g| g.expected_matches == Some(false))
    }

    /// One JSON object per group, then one `CONJECTURE EVENT` record per event.
    pub fn json_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .groups
            .iter()
            .map(|g| serde_json::to_string(g).expect("plain data"))
            .collect();
        for g in self.conjecture_events() {
            let ev = ConjectureEvent {
                event: "CONJECTURE EVENT",
                group: &g.name,
                sigma: g.sigma,
            };
            out.push(serde_json::to_string(&ev).expect("plain data"));
        }
        out
    }

    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<22} {:>6} {:>8} {:<14} {:>5} {:>5} {:>5}  expected",
            "group", "order", "sigma", "method", "elem", "mono", "prim"
        );
        let flag = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "?",
        };
        for g in &self.groups {
            let sigma = match g.sigma {
                Some(v) => v.to_string(),
                None => format!("{}..{}", g.interval.0, g.interval.1),
            };
            let expected = match (g.expected, g.expected_matches) {
                (Some(e), Some(true)) => format!("{e} ok"),
                (Some(e), _) => format!("{e} MISMATCH"),
                (None, _) => String::new(),
            };
            let _ = writeln!(
                s,
                "{:<22} {:>6} {:>8} {:<14} {:>5} {:>5} {:>5}  {}",
                g.name,
                g.order,
                sigma,
                g.method,
                flag(g.sigma_elementary),
                flag(g.monolithic),
                flag(g.primitive),
                expected
            );
            if let Some(e) = &g.error {
                let _ = writeln!(s, "    error: {e}");
            }
        }
        for g in self.conjecture_events() {
            let _ = writeln!(s, "CONJECTURE EVENT: {}", g.name);
        }
        s
    }

    /// sigma-elementary groups with `3 <= sigma <= 25`, grouped by value.
    pub fn small_sigma_elementary(&self) -> BTreeMap<u64, Vec<String>> {
        let mut rows: BTreeMap<u64, Vec<String>> = BTreeMap::new();
        for g in &self.groups {
            if let (Some(Sigma::Finite(k)), Some(true)) = (g.sigma, g.sigma_elementary) {
                if (3..=25).contains(&k) {
                    rows.entry(k).or_default().push(g.name.clone());
                }
            }
        }
        rows
    }
}

/// Decides `sigma(G) < sigma(G/N)` from two possibly inexact results.
fn strictly_below(a: &SigmaResult, b: &SigmaResult) -> Option<bool> {
    if a.upper < b.lower {
        Some(true)
    } else if a.lower >= b.upper {
        Some(false)
    } else {
        None
    }
}

/// Whether `sigma(G) < sigma(G/N)` for every minimal normal `N`; this covers
/// every non-trivial normal subgroup since quotients of quotients only grow.
pub fn sigma_elementary(
    g: &Group,
    result: &SigmaResult,
    ns: &NormalStructure,
    caps: &Caps,
) -> Result<Option<bool>> {
    if result.value == Some(Sigma::Infinite) {
        return Ok(None);
    }
    let opts = SigmaOptions::new(caps.clone());
    let mut verdict = Some(true);
    for n in &ns.minimal {
        let q = coset_action(g, n, caps)?;
        let qr = sigma(&q.target, &opts)?;
        match strictly_below(result, &qr) {
            Some(false) => return Ok(Some(false)),
            None => verdict = None,
            Some(true) => {}
        }
    }
    Ok(verdict)
}

pub fn classify_one(spec: &GroupSpec, caps: &Caps) -> GroupReport {
    let g = match spec.build(caps) {
        Ok(g) => g,
        Err(e) => return GroupReport::failed(&spec.name, "?".into(), &e),
    };
    let order = g.order().to_string();
    match classify_group(spec, &g, caps) {
        Ok(r) => r,
        Err(e) => GroupReport::failed(&spec.name, order, &e),
    }
}

fn classify_group(spec: &GroupSpec, g: &Group, caps: &Caps) -> Result<GroupReport> {
    let opts = SigmaOptions {
        caps: caps.clone(),
        mode: Mode::Auto,
        maximals: spec.maximal_subgroups.clone(),
    };
    let r = sigma(g, &opts)?;
    let expected = spec
        .expected_sigma
        .as_ref()
        .map(|e| e.value.map_or(Sigma::Infinite, Sigma::Finite));
    let expected_matches = expected.map(|e| r.value == Some(e));
    let mut report = GroupReport {
        name: spec.name.clone(),
        order: g.order().to_string(),
        sigma: r.value,
        interval: (r.lower, r.upper),
        method: r.method.to_string(),
        sigma_elementary: None,
        monolithic: None,
        primitive: None,
        abelian: None,
        expected,
        expected_matches,
        conjecture_event: false,
        error: None,
    };
    if !g.is_enumerated() {
        return Ok(report);
    }
    let abelian = g.is_abelian();
    let ns = NormalStructure::of(g);
    let maximals = maximal_subgroups(g, caps, spec.maximal_subgroups.as_deref())?;
    let elementary = sigma_elementary(g, &r, &ns, caps)?;
    report.abelian = Some(abelian);
    report.monolithic = Some(ns.is_monolithic());
    report.primitive = Some(is_primitive(&maximals));
    report.sigma_elementary = elementary;
    report.conjecture_event = elementary == Some(true) && !abelian && !ns.is_monolithic();
    Ok(report)
}

/// Classifies every spec; failures are recorded per group. Output is sorted by name.
pub fn classify(specs: &[GroupSpec], caps: &Caps) -> ClassificationReport {
    let mut groups: Vec<GroupReport> = specs.iter().map(|s| classify_one(s, caps)).collect();
    groups.sort_by(|a, b| a.name.cmp(&b.name));
    ClassificationReport { groups }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub group: String,
    pub sigma: Option<Sigma>,
    pub sigma_interval: (Sigma, Sigma),
    /// Smallest index of a proper supplement of the socle.
    pub ell: u64,
    pub sigma_star: Option<Sigma>,
    /// `sigma < 2 sigma*`, when both are known.
    pub below_twice_star: Option<bool>,
    /// `ell <= sigma* <= sigma`, when both are known.
    pub chain_holds: Option<bool>,
}

/// `sigma(X)`, `sigma*(X)` and `ell_X(N)` for a primitive monolithic group with
/// non-abelian socle.
pub fn probe_conjecture(name: &str, g: &Group, opts: &SigmaOptions) -> Result<ProbeReport> {
    let ns = NormalStructure::of(g);
    if !ns.is_monolithic() {
        return Err(Error::Hypothesis("group is not monolithic".into()));
    }
    let n = &ns.minimal[0];
    let ng = g.subgroup_as_group(n, &opts.caps)?;
    if ng.is_abelian() {
        return Err(Error::Hypothesis("socle is abelian".into()));
    }
    let maximals = maximal_subgroups(g, &opts.caps, opts.maximals.as_deref())?;
    if !is_primitive(&maximals) {
        return Err(Error::Hypothesis("group is not primitive".into()));
    }
    let r = sigma(g, opts)?;
    let star = sigma_star(g, n, &maximals, &opts.caps)?;
    let star_value = if star.exact { star.value } else { None };
    let below_twice_star = match (r.value, star_value) {
        (Some(Sigma::Finite(s)), Some(Sigma::Finite(t))) => Some(s < 2 * t),
        _ => None,
    };
    let chain_holds = match (r.value, star_value) {
        (Some(s), Some(t)) => Some(Sigma::Finite(star.ell) <= t && t <= s),
        _ => None,
    };
    Ok(ProbeReport {
        group: name.to_string(),
        sigma: r.value,
        sigma_interval: (r.lower, r.upper),
        ell: star.ell,
        sigma_star: star_value,
        below_twice_star,
        chain_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{alternating, elementary_pair, symmetric, wreath2};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn classify_small() {
        let specs = vec![
            symmetric(3),
            elementary_pair(3),
            symmetric(4),
            crate::corpus::cyclic(6),
        ];
        let rep = classify(&specs, &caps());
        let get = |n: &str| rep.groups.iter().find(|g| g.name == n).unwrap();
        assert_eq!(get("S3").sigma, Some(Sigma::Finite(4)));
        assert_eq!(get("S3").sigma_elementary, Some(true));
        assert_eq!(get("C3xC3").sigma_elementary, Some(true));
        assert_eq!(get("S4").sigma, Some(Sigma::Finite(4)));
        assert_eq!(get("S4").sigma_elementary, Some(false));
        assert_eq!(get("C6").sigma, Some(Sigma::Infinite));
        assert_eq!(get("C6").sigma_elementary, None);
        assert_eq!(rep.conjecture_events().count(), 0);
        assert!(rep.table().contains("S4"));
        assert_eq!(rep.json_lines().len(), 4);
        assert_eq!(rep.small_sigma_elementary()[&4], vec!["C3xC3", "S3"]);
    }

    #[test]
    fn errors_are_isolated() {
        let mut bad = symmetric(3);
        bad.generators.push(crate::perm::Perm::identity(4));
        let rep = classify(&[bad, symmetric(3)], &caps());
        assert_eq!(rep.groups.len(), 2);
        assert!(rep.groups.iter().any(|g| g.error.is_some()));
        assert!(rep.groups.iter().any(|g| g.sigma == Some(Sigma::Finite(4))));
    }

    #[test]
    fn probe_examples() {
        let opts = SigmaOptions::new(caps());
        let a5 = alternating(5).build(&caps()).unwrap();
        let p = probe_conjecture("A5", &a5, &opts).unwrap();
        assert_eq!(p.sigma, Some(Sigma::Finite(10)));
        assert_eq!(p.sigma_star, Some(Sigma::Finite(10)));
        assert_eq!(p.ell, 5);
        assert_eq!(p.below_twice_star, Some(true));

        let s5 = symmetric(5).build(&caps()).unwrap();
        let p = probe_conjecture("S5", &s5, &opts).unwrap();
        assert_eq!(p.sigma, Some(Sigma::Finite(16)));
        assert_eq!(p.ell, 5);
        assert_eq!(p.chain_holds, Some(true));

        let s3 = symmetric(3).build(&caps()).unwrap();
        assert!(probe_conjecture("S3", &s3, &opts).is_err());
        let v4 = elementary_pair(2).build(&caps()).unwrap();
        assert!(probe_conjecture("V4", &v4, &opts).is_err());
        let w = wreath2(&symmetric(3)).build(&caps()).unwrap();
        assert!(probe_conjecture("S3wrC2", &w, &opts).is_err());
    }
}
