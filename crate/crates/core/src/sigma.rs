//! The covering number `sigma(G)` and its coset-restricted relatives.
//!
//! The pipeline replaces `G` by `G/Φ(G)`, splits off coprime direct factors,
//! answers nilpotent and solvable groups by formula, and otherwise solves the
//! covering problem over the maximal subgroups exactly. Every answer carries a
//! witness cover, checked before it is returned.

use std::fmt;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::certificates::verify_cover;
use crate::config::Caps;
use crate::cover::{exact_min_cover, CoverInstance};
use crate::error::{Error, Result};
use crate::formulas::{nilpotent_sigma, tomkinson_sigma};
use crate::group::{coset_action, Elem, Group};
use crate::lattice::{
    all_subgroups, frattini, is_nilpotent, is_primitive, is_solvable, maximal_subgroups,
    normal_subgroups, Maximals, NormalStructure,
};
use crate::perm::Perm;
use crate::subgroup::Subgroup;

/// A covering number; cyclic groups have none and get `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sigma {
    Finite(u64),
    Infinite,
}

impl Sigma {
    pub fn finite(self) -> Option<u64> {
        match self {
            Sigma::Finite(k) => Some(k),
            Sigma::Infinite => None,
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Finite(k) => write!(f, "{k}"),
            Sigma::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Sigma {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Sigma::Finite(k) => s.serialize_u64(*k),
            Sigma::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Cyclic,
    Tomkinson,
    Nilpotent,
    CoprimeSplit,
    FrattiniThen,
    ExactCover,
    BoundsOnly,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Cyclic => "cyclic",
            Method::Tomkinson => "tomkinson",
            Method::Nilpotent => "nilpotent",
            Method::CoprimeSplit => "coprime-split",
            Method::FrattiniThen => "frattini-then",
            Method::ExactCover => "exact-cover",
            Method::BoundsOnly => "bounds-only",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Reductions and formulas first, exact cover as the fallback.
    #[default]
    Auto,
    /// Exact cover over the maximal subgroups of the group itself.
    Exact,
    /// Bounds only, no search.
    Bounds,
}

#[derive(Clone, Debug, Default)]
pub struct SigmaOptions {
    pub caps: Caps,
    pub mode: Mode,
    /// Externally supplied maximal subgroups, one generator list each.
    pub maximals: Option<Vec<Vec<Perm>>>,
}

impl SigmaOptions {
    pub fn new(caps: Caps) -> Self {
        SigmaOptions {
            caps,
            ..SigmaOptions::default()
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

#[derive(Clone, Debug)]
pub struct SigmaResult {
    /// Present when the value is known exactly.
    pub value: Option<Sigma>,
    pub lower: Sigma,
    pub upper: Sigma,
    /// A cover of size `value`, present iff the value is known and finite.
    pub witness: Option<Vec<Subgroup>>,
    pub method: Method,
    /// Every reduction and final step applied, outermost first.
    pub steps: Vec<Method>,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SigmaResult {
    fn exact(value: Sigma, witness: Option<Vec<Subgroup>>, method: Method) -> Self {
        SigmaResult {
            value: Some(value),
            lower: value,
            upper: value,
            witness,
            method,
            steps: vec![method],
            nodes: 0,
            elapsed: Duration::ZERO,
        }
    }

    fn bounds(lower: Sigma, upper: Sigma) -> Self {
        SigmaResult {
            value: None,
            lower,
            upper,
            witness: None,
            method: Method::BoundsOnly,
            steps: vec![Method::BoundsOnly],
            nodes: 0,
            elapsed: Duration::ZERO,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }

    /// The finite exact value, if any.
    pub fn finite(&self) -> Option<u64> {
        self.value.and_then(Sigma::finite)
    }

    fn wrapped(mut self, step: Method) -> Self {
        self.steps.insert(0, step);
        self.method = if self.value.is_some() {
            step
        } else {
            Method::BoundsOnly
        };
        self
    }

    pub fn to_json(&self, name: &str, g: &Group) -> serde_json::Value {
        let mut out = json!({
            "group": name,
            "order": g.order().to_string(),
            "method": self.method,
            "steps": self.steps,
            "timings": {
                "total_ms": self.elapsed.as_secs_f64() * 1000.0,
                "nodes": self.nodes,
            },
        });
        match self.value {
            Some(v) => out["sigma"] = json!(v),
            None => out["interval"] = json!([self.lower, self.upper]),
        }
        out["witness"] = match &self.witness {
            Some(w) => json!(w.iter().map(|s| s.generator_words(g)).collect::<Vec<_>>()),
            None => serde_json::Value::Null,
        };
        out
    }
}

/// `sigma(G)`. Caps and the time budget come from `opts.caps`.
pub fn sigma(g: &Group, opts: &SigmaOptions) -> Result<SigmaResult> {
    let start = Instant::now();
    let deadline = start + opts.caps.time_budget;
    let mut r = solve(g, opts, opts.maximals.as_deref(), deadline)?;
    r.elapsed = start.elapsed();
    if let Some(w) = &r.witness {
        let check = verify_cover(g, w)?;
        if !check.is_cover {
            return Err(Error::BoundViolated(format!(
                "witness of size {} leaves {} uncovered",
                w.len(),
                g.perm(check.uncovered[0])
            )));
        }
        if r.value != Some(Sigma::Finite(w.len() as u64)) {
            return Err(Error::BoundViolated(format!(
                "witness size {} disagrees with the value {:?}",
                w.len(),
                r.value
            )));
        }
    }
    Ok(r)
}

/// `σ > min index` of any minimal cover, hence of any maximal subgroup.
fn min_index_bound(g: &Group, maximals: &Maximals) -> u64 {
    let min_index = maximals
        .subgroups()
        .map(|m| m.index_in(g) as u64)
        .min()
        .unwrap_or(1);
    (min_index + 1).max(3)
}

fn remaining(deadline: Instant) -> Duration {
    deadline.saturating_duration_since(Instant::now())
}

fn solve(
    g: &Group,
    opts: &SigmaOptions,
    external: Option<&[Vec<Perm>]>,
    deadline: Instant,
) -> Result<SigmaResult> {
    if !g.is_enumerated() {
        return Ok(SigmaResult::bounds(Sigma::Finite(3), Sigma::Infinite));
    }
    if g.is_cyclic() {
        return Ok(SigmaResult::exact(Sigma::Infinite, None, Method::Cyclic));
    }
    let maximals = match maximal_subgroups(g, &opts.caps, external) {
        Ok(m) => m,
        Err(Error::CapExceeded { .. }) => {
            return Ok(SigmaResult::bounds(Sigma::Finite(3), Sigma::Infinite))
        }
        Err(e) => return Err(e),
    };
    let lb = min_index_bound(g, &maximals);
    match opts.mode {
        Mode::Bounds => return Ok(bounds_stage(g, &maximals, lb)),
        Mode::Exact => return exact_stage(g, &maximals, lb, None, deadline),
        Mode::Auto if external.is_some() => return exact_stage(g, &maximals, lb, None, deadline),
        Mode::Auto => {}
    }

    let phi = frattini(g, &maximals);
    if phi.order > 1 {
        let hom = coset_action(g, &phi, &opts.caps)?;
        let mut r = solve(&hom.target, opts, None, deadline)?;
        r.witness = r
            .witness
            .map(|w| w.iter().map(|h| hom.preimage(g, h)).collect());
        return Ok(r.wrapped(Method::FrattiniThen));
    }

    let normals = normal_subgroups(g);
    if let Some((n, m)) = coprime_split(g, &normals) {
        return coprime_stage(g, &n, &m, opts, deadline);
    }

    if is_nilpotent(g) {
        let v = nilpotent_sigma(g)?.as_u64().expect("small value");
        let mut r = exact_stage(g, &maximals, lb.max(v), Some(v), deadline)?;
        r.method = Method::Nilpotent;
        r.steps = vec![Method::Nilpotent];
        return Ok(r);
    }
    if is_solvable(g) {
        let v = tomkinson_sigma(g, &opts.caps)?
            .as_u64()
            .expect("small value");
        let mut r = if g.len() <= opts.caps.exact_crosscheck {
            let r = exact_stage(g, &maximals, lb, None, deadline)?;
            if let Some(k) = r.finite() {
                if k != v {
                    return Err(Error::BoundViolated(format!(
                        "chief factor formula gives {v}, exact cover gives {k}"
                    )));
                }
            }
            r
        } else {
            exact_stage(g, &maximals, lb.max(v), Some(v), deadline)?
        };
        if r.value.is_some() {
            r.method = Method::Tomkinson;
            r.steps = vec![Method::Tomkinson];
        }
        return Ok(r);
    }
    exact_stage(g, &maximals, lb, None, deadline)
}

fn bounds_stage(g: &Group, maximals: &Maximals, lb: u64) -> SigmaResult {
    let inst = CoverInstance::build(g, maximals.subgroups().cloned().collect(), None);
    let sol = exact_min_cover(&inst, lb as usize, None, Duration::ZERO);
    let lower = lb.max(sol.lower as u64);
    let mut r = SigmaResult::bounds(Sigma::Finite(lower), Sigma::Finite(sol.upper as u64));
    if sol.exact && sol.upper as u64 == lower {
        // the greedy cover already meets the lower bound
        r = SigmaResult::exact(
            Sigma::Finite(lower),
            sol.witness
                .map(|w| w.iter().map(|&c| inst.candidates[c].clone()).collect()),
            Method::ExactCover,
        );
    }
    r.nodes = sol.nodes;
    r
}

/// Exact cover over the maximal subgroups. With `expected`, the search stops at
/// the first cover of that size; a smaller cover is a contradiction.
fn exact_stage(
    g: &Group,
    maximals: &Maximals,
    lb: u64,
    expected: Option<u64>,
    deadline: Instant,
) -> Result<SigmaResult> {
    let inst = CoverInstance::build(g, maximals.subgroups().cloned().collect(), None);
    let sol = exact_min_cover(&inst, lb as usize, None, remaining(deadline));
    if sol.is_infeasible() {
        return Err(Error::Hypothesis(
            "maximal subgroups do not cover a non-cyclic group".into(),
        ));
    }
    if let Some(v) = expected {
        if (sol.upper as u64) < v {
            return Err(Error::BoundViolated(format!(
                "formula value {v} beaten by a cover of size {}",
                sol.upper
            )));
        }
    }
    let mut r = if sol.exact {
        let witness = sol
            .witness
            .as_ref()
            .map(|w| w.iter().map(|&c| inst.candidates[c].clone()).collect());
        SigmaResult::exact(Sigma::Finite(sol.upper as u64), witness, Method::ExactCover)
    } else {
        let lower = expected.unwrap_or(lb).max(sol.lower as u64);
        SigmaResult::bounds(Sigma::Finite(lower), Sigma::Finite(sol.upper as u64))
    };
    r.nodes = sol.nodes;
    Ok(r)
}

/// Normal subgroups `N`, `M` of coprime orders with `|N||M| = |G|`, so `G = N x M`.
pub fn coprime_split(g: &Group, normals: &[Subgroup]) -> Option<(Subgroup, Subgroup)> {
    let n = g.len();
    normals.iter().find_map(|a| {
        if a.order == 1 || a.order == n || a.order.gcd(&(n / a.order)) != 1 {
            return None;
        }
        normals
            .iter()
            .find(|b| b.order == n / a.order)
            .map(|b| (a.clone(), b.clone()))
    })
}

fn coprime_stage(
    g: &Group,
    n: &Subgroup,
    m: &Subgroup,
    opts: &SigmaOptions,
    deadline: Instant,
) -> Result<SigmaResult> {
    let mut parts = Vec::new();
    for (factor, other) in [(n, m), (m, n)] {
        let fg = g.subgroup_as_group(factor, &opts.caps)?;
        let r = solve(&fg, opts, None, deadline)?;
        parts.push((fg, r, other));
    }
    let lower = parts[0].1.lower.min(parts[1].1.lower);
    let upper = parts[0].1.upper.min(parts[1].1.upper);
    let nodes = parts[0].1.nodes + parts[1].1.nodes;
    let both_exact = parts.iter().all(|p| p.1.is_exact());
    let mut r = if both_exact {
        let best = if parts[0].1.value <= parts[1].1.value {
            0
        } else {
            1
        };
        let (fg, sub, other) = &parts[best];
        let witness = sub.witness.as_ref().map(|w| {
            w.iter()
                .map(|h| lift_from_factor(g, fg, h, other))
                .collect::<Vec<_>>()
        });
        let mut r = SigmaResult::exact(sub.value.unwrap(), witness, Method::CoprimeSplit);
        r.steps.extend(sub.steps.iter().copied());
        r
    } else {
        SigmaResult::bounds(lower, upper)
    };
    r.nodes = nodes;
    Ok(r)
}

/// `H x other` inside `G`, for `H` a subgroup of the factor group `fg`.
fn lift_from_factor(g: &Group, fg: &Group, h: &Subgroup, other: &Subgroup) -> Subgroup {
    let mut gens: Vec<Elem> = h
        .gens
        .iter()
        .map(|&e| {
            g.index_of(fg.perm(e))
                .expect("factor element lies in the group")
        })
        .collect();
    gens.extend(other.gens.iter().copied());
    g.closure(&gens)
}

/// Maximal subgroups not containing `n`: every proper supplement lies in one.
/// When `n` is the whole group every proper subgroup supplements it.
pub fn maximal_supplements(x: &Group, n: &Subgroup, maximals: &Maximals) -> Vec<Subgroup> {
    maximals
        .subgroups()
        .filter(|m| n.order == x.len() || !n.is_subset(m))
        .cloned()
        .collect()
}

/// Smallest index of a proper supplement of `n`.
pub fn ell(x: &Group, n: &Subgroup, maximals: &Maximals) -> Option<u64> {
    maximal_supplements(x, n, maximals)
        .iter()
        .map(|m| m.index_in(x) as u64)
        .min()
}

/// Checks that `x` is primitive and monolithic with minimal normal subgroup `n`.
pub fn require_primitive_monolithic(x: &Group, n: &Subgroup, maximals: &Maximals) -> Result<()> {
    let ns = NormalStructure::of(x);
    if !ns.is_monolithic() {
        return Err(Error::Hypothesis(format!(
            "group has {} minimal normal subgroups",
            ns.minimal.len()
        )));
    }
    if ns.minimal[0].members != n.members {
        return Err(Error::Hypothesis(
            "the given subgroup is not the minimal normal subgroup".into(),
        ));
    }
    if !is_primitive(maximals) {
        return Err(Error::Hypothesis("group is not primitive".into()));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct OmegaResult {
    pub value: Sigma,
    pub lower: u64,
    pub witness: Vec<Subgroup>,
    pub exact: bool,
}

/// Least number of supplements of `n` covering `omega`, a union of cosets of `n`.
pub fn sigma_omega(
    x: &Group,
    n: &Subgroup,
    omega: &FixedBitSet,
    maximals: &Maximals,
    budget: Duration,
) -> Result<OmegaResult> {
    require_primitive_monolithic(x, n, maximals)?;
    for w in omega.ones() {
        if n.elements().any(|y| !omega.contains(x.mul(y, w))) {
            return Err(Error::Hypothesis(
                "the element set is not a union of cosets".into(),
            ));
        }
    }
    if omega.count_ones(..) == 0 {
        return Ok(OmegaResult {
            value: Sigma::Finite(0),
            lower: 0,
            witness: Vec::new(),
            exact: true,
        });
    }
    let inst = CoverInstance::build(x, maximal_supplements(x, n, maximals), Some(omega));
    if !inst.is_feasible() {
        return Ok(OmegaResult {
            value: Sigma::Infinite,
            lower: u64::MAX,
            witness: Vec::new(),
            exact: true,
        });
    }
    let sol = exact_min_cover(&inst, 1, None, budget);
    let witness = sol
        .witness
        .unwrap_or_default()
        .iter()
        .map(|&c| inst.candidates[c].clone())
        .collect();
    Ok(OmegaResult {
        value: Sigma::Finite(sol.upper as u64),
        lower: sol.lower as u64,
        witness,
        exact: sol.exact,
    })
}

/// All cosets of `n` in `x`, as element sets, indexed like the quotient.
struct Cosets {
    quotient: Group,
    coset_of: Vec<Elem>,
}

impl Cosets {
    fn new(x: &Group, n: &Subgroup, caps: &Caps) -> Result<Self> {
        if !n.is_normal_in(x) {
            return Err(Error::Hypothesis("subgroup is not normal".into()));
        }
        let hom = coset_action(x, n, caps)?;
        let coset_of = x.elements().map(|e| hom.image_of(e)).collect();
        Ok(Cosets {
            quotient: hom.target,
            coset_of,
        })
    }

    fn union(&self, x: &Group, cosets: &[Elem]) -> FixedBitSet {
        let mut out = x.empty_set();
        for e in x.elements() {
            if cosets.contains(&self.coset_of[e]) {
                out.insert(e);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct StarResult {
    /// `None` when the coset count exceeds the cap.
    pub value: Option<Sigma>,
    /// Smallest index of a proper supplement; always a lower bound.
    pub ell: u64,
    /// Coset representatives of the best generating union.
    pub best_omega: Vec<Perm>,
    pub witness: Vec<Subgroup>,
    pub subsets_checked: usize,
    pub exact: bool,
}

/// Minimum of `sigma_omega` over unions of cosets generating `x`. By
/// monotonicity only inclusion-minimal generating sets are tried.
pub fn sigma_star(x: &Group, n: &Subgroup, maximals: &Maximals, caps: &Caps) -> Result<StarResult> {
    require_primitive_monolithic(x, n, maximals)?;
    let ell =
        ell(x, n, maximals).ok_or_else(|| Error::Hypothesis("no proper supplement".into()))?;
    let cosets = Cosets::new(x, n, caps)?;
    let q = &cosets.quotient;
    let k = q.len();
    if k > caps.coset_subsets {
        return Ok(StarResult {
            value: None,
            ell,
            best_omega: Vec::new(),
            witness: Vec::new(),
            subsets_checked: 0,
            exact: false,
        });
    }
    let generates = |mask: u32| {
        let elems: Vec<Elem> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        q.closure(&elems).order == k
    };
    let deadline = Instant::now() + caps.time_budget;
    let mut best: Option<(Sigma, Vec<Elem>, Vec<Subgroup>)> = None;
    let mut checked = 0;
    let mut exact = true;
    for mask in 1u32..(1 << k) {
        if !generates(mask) {
            continue;
        }
        let minimal = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| mask.count_ones() == 1 || !generates(mask & !(1 << i)));
        if !minimal {
            continue;
        }
        let chosen: Vec<Elem> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let omega = cosets.union(x, &chosen);
        let r = sigma_omega(x, n, &omega, maximals, remaining(deadline))?;
        checked += 1;
        exact &= r.exact;
        if best.as_ref().is_none_or(|(v, _, _)| r.value < *v) {
            best = Some((r.value, chosen, r.witness));
        }
    }
    let (value, chosen, witness) = best.expect("the whole quotient generates");
    let best_omega = chosen
        .iter()
        .map(|&c| {
            let e = (0..x.len()).find(|&e| cosets.coset_of[e] == c).unwrap();
            x.perm(e).clone()
        })
        .collect();
    Ok(StarResult {
        value: Some(value),
        ell,
        best_omega,
        witness,
        subsets_checked: checked,
        exact,
    })
}

/// Closes a union of cosets of `n` under `yN -> y^a N` for `a` prime to `|y|`.
pub fn spancoprime_closure(x: &Group, n: &Subgroup, covered: &FixedBitSet) -> Result<FixedBitSet> {
    if !n.is_normal_in(x) {
        return Err(Error::Hypothesis("subgroup is not normal".into()));
    }
    let mut out = covered.clone();
    for y in covered.ones() {
        let o = x.elem_order(y);
        for a in 1..o {
            if a.gcd(&o) == 1 {
                let z = x.pow(y, a as u64);
                for t in n.elements() {
                    out.insert(x.mul(t, z));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientCheck {
    pub normal_order: usize,
    pub quotient_sigma: Sigma,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbmnsCheck {
    pub normal_order: usize,
    pub bound: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub sigma: Sigma,
    /// `(smallest index in the witness, sigma)`.
    pub min_index: Option<(u64, u64)>,
    pub quotients: Vec<QuotientCheck>,
    pub abmns: Vec<AbmnsCheck>,
}

/// Checks the general bounds against an exact result: smallest witness index
/// below `sigma`, `sigma(G) <= sigma(G/N)`, and `sigma(G) <= 2|V| - 1` for
/// complemented abelian normal `V` meeting the center trivially. Any violation
/// is an error.
pub fn bound_checks(
    g: &Group,
    result: &SigmaResult,
    opts: &SigmaOptions,
    all_normals: bool,
) -> Result<BoundReport> {
    let value = result
        .value
        .ok_or_else(|| Error::Hypothesis("bound checks need an exact value".into()))?;
    let mut report = BoundReport {
        sigma: value,
        min_index: None,
        quotients: Vec::new(),
        abmns: Vec::new(),
    };
    let Sigma::Finite(k) = value else {
        return Ok(report);
    };
    if k < 3 {
        return Err(Error::BoundViolated(format!("sigma = {k} < 3")));
    }
    if let Some(w) = &result.witness {
        let mi = w.iter().map(|h| h.index_in(g) as u64).min().unwrap_or(0);
        report.min_index = Some((mi, k));
        if mi >= k {
            return Err(Error::BoundViolated(format!(
                "smallest witness index {mi} is not below sigma = {k}"
            )));
        }
    }

    let ns = NormalStructure::of(g);
    let targets: Vec<&Subgroup> = if all_normals {
        ns.normals.iter().filter(|n| n.order > 1).collect()
    } else {
        ns.minimal.iter().collect()
    };
    let sub_opts = SigmaOptions {
        caps: opts.caps.clone(),
        mode: Mode::Auto,
        maximals: None,
    };
    for n in targets {
        let hom = coset_action(g, n, &opts.caps)?;
        let qs = sigma(&hom.target, &sub_opts)?;
        let holds = value <= qs.upper;
        report.quotients.push(QuotientCheck {
            normal_order: n.order,
            quotient_sigma: qs.value.unwrap_or(qs.upper),
            holds,
        });
        if !holds {
            return Err(Error::BoundViolated(format!(
                "sigma = {k} exceeds sigma of the quotient by a normal subgroup of order {}",
                n.order
            )));
        }
    }

    if g.len() <= opts.caps.lattice {
        let center = g.center();
        let lat = all_subgroups(g, &opts.caps)?;
        for v in ns
            .normals
            .iter()
            .filter(|v| v.order > 1 && v.order < g.len())
        {
            let abelian = v
                .gens
                .iter()
                .all(|&a| v.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
            if !abelian || v.intersection(g, &center).order != 1 {
                continue;
            }
            let complemented = lat
                .subgroups
                .iter()
                .any(|h| h.order * v.order == g.len() && h.intersection(g, v).order == 1);
            if !complemented {
                continue;
            }
            let bound = 2 * v.order as u64 - 1;
            let holds = k <= bound;
            report.abmns.push(AbmnsCheck {
                normal_order: v.order,
                bound,
                holds,
            });
            if !holds {
                return Err(Error::BoundViolated(format!(
                    "sigma = {k} exceeds 2|V| - 1 = {bound}"
                )));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn g(degree: usize, words: &[&str]) -> Group {
        Group::from_words(degree, words, &caps()).unwrap()
    }

    fn value(grp: &Group) -> Sigma {
        sigma(grp, &SigmaOptions::new(caps()))
            .unwrap()
            .value
            .unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(value(&g(4, &["(0 1)", "(2 3)"])), Sigma::Finite(3));
        assert_eq!(value(&g(6, &["(0 1 2 3 4 5)"])), Sigma::Infinite);
        assert_eq!(
            value(&g(5, &["(0 1 2 3 4)", "(1 4)(2 3)"])),
            Sigma::Finite(6)
        );
        assert_eq!(value(&g(4, &["(0 1 2)", "(1 2 3)"])), Sigma::Finite(5));
        assert_eq!(value(&g(3, &["(0 1 2)", "(0 1)"])), Sigma::Finite(4));
        assert_eq!(value(&g(1, &[])), Sigma::Infinite);
    }

    #[test]
    fn pipeline_paths() {
        let opts = SigmaOptions::new(caps());
        // C4 x C2: Frattini quotient is C2 x C2
        let r = sigma(&g(6, &["(0 1 2 3)", "(4 5)"]), &opts).unwrap();
        assert_eq!(r.value, Some(Sigma::Finite(3)));
        assert_eq!(r.method, Method::FrattiniThen);
        // S3 x C5 splits coprimely
        let r = sigma(&g(8, &["(0 1 2)", "(0 1)", "(3 4 5 6 7)"]), &opts).unwrap();
        assert_eq!(r.value, Some(Sigma::Finite(4)));
        assert_eq!(r.method, Method::CoprimeSplit);
        assert_eq!(r.witness.as_ref().unwrap().len(), 4);
        // C3 x C3 is nilpotent
        let r = sigma(&g(6, &["(0 1 2)", "(3 4 5)"]), &opts).unwrap();
        assert_eq!(r.method, Method::Nilpotent);
        assert_eq!(r.value, Some(Sigma::Finite(4)));
        let r = sigma(&g(5, &["(0 1 2 3 4)", "(1 2 4 3)"]), &opts).unwrap();
        assert_eq!(r.method, Method::Tomkinson);
        assert_eq!(r.value, Some(Sigma::Finite(6)));
        let r = sigma(&g(5, &["(0 1 2)", "(2 3 4)"]), &opts).unwrap();
        assert_eq!(r.method, Method::ExactCover);
        assert_eq!(r.value, Some(Sigma::Finite(10)));
    }

    #[test]
    fn modes_agree() {
        let s4 = g(4, &["(0 1 2 3)", "(0 1)"]);
        let auto = sigma(&s4, &SigmaOptions::new(caps())).unwrap();
        let exact = sigma(&s4, &SigmaOptions::new(caps()).with_mode(Mode::Exact)).unwrap();
        assert_eq!(auto.value, Some(Sigma::Finite(4)));
        assert_eq!(exact.value, auto.value);
        let b = sigma(&s4, &SigmaOptions::new(caps()).with_mode(Mode::Bounds)).unwrap();
        assert!(b.lower <= Sigma::Finite(4) && Sigma::Finite(4) <= b.upper);
    }

    #[test]
    fn zero_budget_degrades_to_bounds() {
        let s6 = g(6, &["(0 1 2 3 4 5)", "(0 1)"]);
        let caps = caps().with_time_budget(Duration::ZERO);
        let r = sigma(&s6, &SigmaOptions::new(caps)).unwrap();
        assert!(r.lower <= Sigma::Finite(13) && Sigma::Finite(13) <= r.upper);
        if r.value.is_none() {
            assert_eq!(r.method, Method::BoundsOnly);
            assert!(r.witness.is_none());
        }
    }

    #[test]
    fn json_shape() {
        let s3 = g(3, &["(0 1 2)", "(0 1)"]);
        let r = sigma(&s3, &SigmaOptions::new(caps())).unwrap();
        let j = r.to_json("S3", &s3);
        assert_eq!(j["sigma"], 4);
        assert_eq!(j["method"], "tomkinson");
        assert_eq!(j["witness"].as_array().unwrap().len(), 4);
        let c6 = g(6, &["(0 1 2 3 4 5)"]);
        let j = sigma(&c6, &SigmaOptions::new(caps()))
            .unwrap()
            .to_json("C6", &c6);
        assert_eq!(j["sigma"], "inf");
        assert_eq!(j["method"], "cyclic");
    }

    fn maximals(x: &Group) -> Maximals {
        maximal_subgroups(x, &caps(), None).unwrap()
    }

    fn normal_of_order(x: &Group, order: usize) -> Subgroup {
        normal_subgroups(x)
            .into_iter()
            .find(|n| n.order == order)
            .unwrap()
    }

    #[test]
    fn sigma_omega_on_s3() {
        let s3 = g(3, &["(0 1 2)", "(0 1)"]);
        let a3 = normal_of_order(&s3, 3);
        let m = maximals(&s3);
        let mut odd = s3.full_set();
        odd.difference_with(&a3.members);
        let r = sigma_omega(&s3, &a3, &odd, &m, Duration::from_secs(5)).unwrap();
        assert_eq!(r.value, Sigma::Finite(3));
        // the supplements of A3 are the three C2, which miss the 3-cycles
        let r = sigma_omega(&s3, &a3, &a3.members, &m, Duration::from_secs(5)).unwrap();
        assert_eq!(r.value, Sigma::Infinite);
        let mut half = s3.empty_set();
        half.insert(odd.ones().next().unwrap());
        assert!(sigma_omega(&s3, &a3, &half, &m, Duration::from_secs(5)).is_err());
    }

    #[test]
    fn sigma_star_and_ell() {
        let s5 = g(5, &["(0 1 2 3 4)", "(0 1)"]);
        let a5 = normal_of_order(&s5, 60);
        let m = maximals(&s5);
        assert_eq!(ell(&s5, &a5, &m), Some(5));
        let st = sigma_star(&s5, &a5, &m, &caps()).unwrap();
        assert_eq!(st.subsets_checked, 1);
        assert!(st.value.unwrap() >= Sigma::Finite(st.ell));

        let a5g = g(5, &["(0 1 2)", "(2 3 4)"]);
        let whole = a5g.whole();
        let m = maximals(&a5g);
        let st = sigma_star(&a5g, &whole, &m, &caps()).unwrap();
        assert_eq!(st.value, Some(Sigma::Finite(10)));
        assert_eq!(st.ell, 5);

        let v4 = g(4, &["(0 1)", "(2 3)"]);
        let n = normal_of_order(&v4, 2);
        assert!(sigma_star(&v4, &n, &maximals(&v4), &caps()).is_err());
    }

    #[test]
    fn spancoprime_examples() {
        let c5 = g(5, &["(0 1 2 3 4)"]);
        let one = Subgroup::trivial(&c5);
        let mut covered = c5.empty_set();
        covered.insert(c5.generator_elems()[0]);
        let closed = spancoprime_closure(&c5, &one, &covered).unwrap();
        assert_eq!(closed.count_ones(..), 4);
        assert!(!closed.contains(0));

        let c2 = g(2, &["(0 1)"]);
        let mut cov = c2.empty_set();
        cov.insert(1);
        assert_eq!(
            spancoprime_closure(&c2, &Subgroup::trivial(&c2), &cov).unwrap(),
            cov
        );

        // X = C8, N = C2: X/N = C4
        let c8 = g(8, &["(0 1 2 3 4 5 6 7)"]);
        let x = c8.generator_elems()[0];
        let n = c8.closure(&[c8.pow(x, 4)]);
        let mut cov = c8.empty_set();
        for t in n.elements() {
            cov.insert(c8.mul(t, x));
        }
        let closed = spancoprime_closure(&c8, &n, &cov).unwrap();
        let has_coset = |k: u64| closed.contains(c8.pow(x, k));
        assert!(has_coset(1) && has_coset(3) && has_coset(5) && has_coset(7));
        assert!(!has_coset(2) && !has_coset(6) && !has_coset(0));
    }

    #[test]
    fn bound_checks_small() {
        let opts = SigmaOptions::new(caps());
        let a4 = g(4, &["(0 1 2)", "(1 2 3)"]);
        let r = sigma(&a4, &opts).unwrap();
        let rep = bound_checks(&a4, &r, &opts, true).unwrap();
        assert_eq!(rep.min_index.unwrap().1, 5);
        assert!(rep.min_index.unwrap().0 < 5);

        let s4 = g(4, &["(0 1 2 3)", "(0 1)"]);
        let r = sigma(&s4, &opts).unwrap();
        let rep = bound_checks(&s4, &r, &opts, true).unwrap();
        assert!(rep
            .abmns
            .iter()
            .any(|c| c.normal_order == 4 && c.bound == 7 && c.holds));
        assert!(rep.quotients.iter().all(|q| q.holds));

        let s3 = g(3, &["(0 1 2)", "(0 1)"]);
        let r = sigma(&s3, &opts).unwrap();
        let rep = bound_checks(&s3, &r, &opts, false).unwrap();
        assert_eq!(rep.quotients[0].quotient_sigma, Sigma::Infinite);
    }
}
