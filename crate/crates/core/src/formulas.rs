//! Closed-form covering numbers and bounds, evaluated in exact integer arithmetic.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{
    all_subgroups, chief_factors_with_complements, is_nilpotent, is_solvable, normal_subgroups,
    prime_factors, smallest_prime_factor, sylow,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    Tomkinson,
    Nilpotent,
    /// Alternating socle, `12 < n ≡ 2 (mod 4)`.
    T1OddAlt,
    /// Symmetric `X`, odd degree.
    T2OddSym,
    /// Symmetric `X`, even degree: lower and upper bound.
    T2EvenSymBounds,
    /// `2^(n-1)` for odd `n >= 11`.
    SymPow,
    A5WrC2,
    SopraUb,
    NoncicloLb,
    AbmnsUb,
}

impl FormulaKind {
    pub const ALL: [FormulaKind; 10] = [
        FormulaKind::Tomkinson,
        FormulaKind::Nilpotent,
        FormulaKind::T1OddAlt,
        FormulaKind::T2OddSym,
        FormulaKind::T2EvenSymBounds,
        FormulaKind::SymPow,
        FormulaKind::A5WrC2,
        FormulaKind::SopraUb,
        FormulaKind::NoncicloLb,
        FormulaKind::AbmnsUb,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FormulaKind::Tomkinson => "tomkinson",
            FormulaKind::Nilpotent => "nilpotent",
            FormulaKind::T1OddAlt => "t1-odd-alt",
            FormulaKind::T2OddSym => "t2-odd-sym",
            FormulaKind::T2EvenSymBounds => "t2-even-sym-bounds",
            FormulaKind::SymPow => "sym-2^{n-1}",
            FormulaKind::A5WrC2 => "a5wrc2",
            FormulaKind::SopraUb => "sopra-ub",
            FormulaKind::NoncicloLb => "nonciclo-lb",
            FormulaKind::AbmnsUb => "abmns-ub",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        let tag = match tag {
            "t2-odd" => "t2-odd-sym",
            "sym-pow" => "sym-2^{n-1}",
            t => t,
        };
        FormulaKind::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Named integer parameters; which ones are read depends on the formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub p: Option<u64>,
    pub q: Option<u64>,
    /// Order of the simple factor.
    pub s: Option<u64>,
    /// Size of the pair set used by the non-cycle lower bound.
    pub e: Option<u64>,
    /// Order of the abelian normal subgroup.
    pub v: Option<u64>,
    /// Indices `|S : S ∩ M|` of the supplementing maximal subgroups.
    pub indices: Vec<u64>,
}

impl Params {
    /// Parses `n=7,m=1` or `m=2,indices=5/6`.
    pub fn parse(s: &str) -> Result<Params> {
        let mut p = Params::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Hypothesis(format!("expected key=value, got `{item}`")))?;
            let num = |v: &str| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Hypothesis(format!("bad integer `{v}`")))
            };
            match k.trim() {
                "n" => p.n = Some(num(v)?),
                "m" => p.m = Some(num(v)?),
                "p" => p.p = Some(num(v)?),
                "q" => p.q = Some(num(v)?),
                "s" => p.s = Some(num(v)?),
                "e" => p.e = Some(num(v)?),
                "v" => p.v = Some(num(v)?),
                "indices" => {
                    p.indices = v.split('/').map(num).collect::<Result<Vec<_>>>()?;
                }
                other => return Err(Error::Hypothesis(format!("unknown parameter `{other}`"))),
            }
        }
        Ok(p)
    }

    fn get(&self, v: Option<u64>, name: &str, kind: FormulaKind) -> Result<u64> {
        v.ok_or_else(|| Error::Hypothesis(format!("{kind} needs parameter `{name}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(BigUint),
    Interval { lower: BigUint, upper: BigUint },
    LowerBound(BigUint),
    UpperBound(BigUint),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(v) => write!(f, "{v}"),
            Value::Interval { lower, upper } => write!(f, "[{lower}, {upper}]"),
            Value::LowerBound(v) => write!(f, ">= {v}"),
            Value::UpperBound(v) => write!(f, "<= {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub kind: FormulaKind,
    pub params: Params,
    pub value: Value,
}

impl FormulaValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match &self.value {
            Value::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// The exact value as `u64`, if it is exact and fits.
    pub fn as_u64(&self) -> Option<u64> {
        self.exact().and_then(|v| u64::try_from(v).ok())
    }
}

/// Number of distinct prime divisors; `omega(1) = 0`.
pub fn omega(n: u64) -> u32 {
    let mut n = n;
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            count += 1;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn pow(b: BigUint, e: u64) -> BigUint {
    num_traits::pow(b, e as usize)
}

fn refuse(kind: FormulaKind, why: &str) -> Error {
    Error::Hypothesis(format!("{kind}: {why}"))
}

pub fn eval_formula(kind: FormulaKind, params: &Params) -> Result<FormulaValue> {
    let value = match kind {
        FormulaKind::Tomkinson => {
            let q = params.get(params.q, "q", kind)?;
            if q < 2 {
                return Err(refuse(kind, "chief factor order must be at least 2"));
            }
            Value::Exact(BigUint::from(q + 1))
        }
        FormulaKind::Nilpotent => {
            let p = params.get(params.p, "p", kind)?;
            if p < 2 || smallest_prime_factor(p as usize) as u64 != p {
                return Err(refuse(kind, "p must be prime"));
            }
            Value::Exact(BigUint::from(p + 1))
        }
        FormulaKind::T1OddAlt => {
            let n = params.get(params.n, "n", kind)?;
            let m = params.get(params.m, "m", kind)?;
            if n <= 12 || n % 4 != 2 || m == 0 {
                return Err(refuse(kind, "requires 12 < n ≡ 2 (mod 4) and m >= 1"));
            }
            let mut acc = BigUint::from(omega(m));
            for i in (1..=n / 2 - 2).step_by(2) {
                acc += pow(binomial(n, i), m);
            }
            // C(n, n/2) is even, so the halved power is integral
            acc += pow(binomial(n, n / 2) / 2u32, m);
            Value::Exact(acc)
        }
        FormulaKind::T2OddSym => {
            let n = params.get(params.n, "n", kind)?;
            let m = params.get(params.m, "m", kind)?;
            if n < 7 || n % 2 == 0 || m == 0 {
                return Err(refuse(kind, "requires odd n >= 7 and m >= 1"));
            }
            if (n, m) == (9, 1) {
                return Err(refuse(kind, "(n, m) = (9, 1) is excluded"));
            }
            let mut acc = BigUint::from(omega(2 * m));
            for i in 1..=(n - 1) / 2 {
                acc += pow(binomial(n, i), m);
            }
            Value::Exact(acc)
        }
        FormulaKind::T2EvenSymBounds => {
            let n = params.get(params.n, "n", kind)?;
            let m = params.get(params.m, "m", kind)?;
            if n < 8 || n % 2 == 1 || m == 0 {
                return Err(refuse(kind, "requires even n >= 8 and m >= 1"));
            }
            let half = pow(binomial(n, n / 2) / 2u32, m);
            let mut upper = BigUint::from(omega(2 * m)) + &half;
            for i in 1..=n / 3 {
                upper += pow(binomial(n, i), m);
            }
            Value::Interval { lower: half, upper }
        }
        FormulaKind::SymPow => {
            let n = params.get(params.n, "n", kind)?;
            if n < 11 || n % 2 == 0 {
                return Err(refuse(kind, "requires odd n >= 11"));
            }
            Value::Exact(BigUint::one() << (n - 1))
        }
        FormulaKind::A5WrC2 => Value::Exact(BigUint::from(1u32 + 4 * 5 + 6 * 6)),
        FormulaKind::SopraUb => {
            let m = params.get(params.m, "m", kind)?;
            if m == 0 {
                return Err(refuse(kind, "m must be positive"));
            }
            if params.indices.is_empty() {
                return Err(refuse(kind, "needs the supplement indices"));
            }
            let mut acc = BigUint::one() << (m - 1);
            for &i in &params.indices {
                acc += pow(BigUint::from(i), m - 1);
            }
            Value::UpperBound(acc)
        }
        FormulaKind::NoncicloLb => {
            let m = params.get(params.m, "m", kind)?;
            let s = params.get(params.s, "s", kind)?;
            let e = params.get(params.e, "e", kind)?;
            if m < 2 {
                return Err(refuse(kind, "m must be at least 2"));
            }
            Value::LowerBound(nonciclo_bound(e, s, m))
        }
        FormulaKind::AbmnsUb => {
            let v = params.get(params.v, "v", kind)?;
            if v < 2 {
                return Err(refuse(kind, "V must be non-trivial"));
            }
            Value::UpperBound(BigUint::from(2 * v - 1))
        }
    };
    Ok(FormulaValue {
        kind,
        params: params.clone(),
        value,
    })
}

/// `ceil(e * s^(m - m/r - 2))`, `r` the smallest prime divisor of `m`; the
/// exponent may be negative.
pub fn nonciclo_bound(e: u64, s: u64, m: u64) -> BigUint {
    let r = smallest_prime_factor(m as usize) as i64;
    let exp = m as i64 - m as i64 / r - 2;
    let e = BigUint::from(e);
    if exp >= 0 {
        e * pow(BigUint::from(s), exp as u64)
    } else {
        let d = pow(BigUint::from(s), (-exp) as u64);
        let (q, rem) = e.div_rem(&d);
        if rem.is_zero() {
            q
        } else {
            q + 1u32
        }
    }
}

/// `q + 1` where `q` is the least order of a chief factor with more than one
/// complement.
pub fn tomkinson_sigma(g: &Group, caps: &Caps) -> Result<FormulaValue> {
    g.require_elements()?;
    if g.is_cyclic() {
        return Err(refuse(FormulaKind::Tomkinson, "group is cyclic"));
    }
    if !is_solvable(g) {
        return Err(refuse(FormulaKind::Tomkinson, "group is not solvable"));
    }
    let lattice = all_subgroups(g, caps)?;
    let normals = normal_subgroups(g);
    let q = chief_factors_with_complements(g, &lattice, &normals)
        .into_iter()
        .filter(|r| r.multiple_complements)
        .map(|r| r.order as u64)
        .min()
        .ok_or_else(|| {
            Error::Hypothesis(format!(
                "COUNTEREXAMPLE: solvable non-cyclic group of order {} has no chief factor \
                 with more than one complement",
                g.order()
            ))
        })?;
    eval_formula(
        FormulaKind::Tomkinson,
        &Params {
            q: Some(q),
            ..Params::default()
        },
    )
}

/// `p + 1` for the least prime `p` whose Sylow subgroup is not cyclic.
pub fn nilpotent_sigma(g: &Group) -> Result<FormulaValue> {
    g.require_elements()?;
    if !is_nilpotent(g) {
        return Err(refuse(FormulaKind::Nilpotent, "group is not nilpotent"));
    }
    for p in prime_factors(g.len()) {
        let s = sylow(g, p)?;
        let sg = g.subgroup_as_group(&s, &Caps::default())?;
        if !sg.is_cyclic() {
            return eval_formula(
                FormulaKind::Nilpotent,
                &Params {
                    p: Some(p as u64),
                    ..Params::default()
                },
            );
        }
    }
    Err(refuse(
        FormulaKind::Nilpotent,
        "all Sylow subgroups are cyclic",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: &str) -> Params {
        Params::parse(s).unwrap()
    }

    fn exact(kind: FormulaKind, s: &str) -> u64 {
        eval_formula(kind, &params(s)).unwrap().as_u64().unwrap()
    }

    #[test]
    fn omega_counts_distinct_primes() {
        assert_eq!(omega(1), 0);
        assert_eq!(omega(2), 1);
        assert_eq!(omega(12), 2);
        assert_eq!(omega(30), 3);
        assert_eq!(omega(64), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 7), BigUint::from(3432u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn t2_odd_small() {
        assert_eq!(exact(FormulaKind::T2OddSym, "n=7,m=1"), 64);
        assert_eq!(exact(FormulaKind::T2OddSym, "n=11,m=1"), 1024);
        // omega(4) + 7^2 + 21^2 + 35^2
        assert_eq!(exact(FormulaKind::T2OddSym, "n=7,m=2"), 1 + 49 + 441 + 1225);
        assert!(eval_formula(FormulaKind::T2OddSym, &params("n=9,m=1")).is_err());
        assert!(eval_formula(FormulaKind::T2OddSym, &params("n=8,m=1")).is_err());
        assert_eq!(
            exact(FormulaKind::T2OddSym, "n=9,m=2"),
            1 + 81 + 1296 + 7056 + 15876
        );
    }

    #[test]
    fn t1_n14() {
        assert_eq!(exact(FormulaKind::T1OddAlt, "n=14,m=1"), 4096);
        assert!(eval_formula(FormulaKind::T1OddAlt, &params("n=10,m=1")).is_err());
        assert!(eval_formula(FormulaKind::T1OddAlt, &params("n=16,m=1")).is_err());
    }

    #[test]
    fn odd_symmetric_family_sizes_are_powers_of_two() {
        for n in (7..=15u64).step_by(2) {
            if n == 9 {
                continue;
            }
            assert_eq!(
                exact(FormulaKind::T2OddSym, &format!("n={n},m=1")),
                1 << (n - 1)
            );
        }
        assert_eq!(exact(FormulaKind::SymPow, "n=11"), 1024);
        assert!(eval_formula(FormulaKind::SymPow, &params("n=7")).is_err());
    }

    #[test]
    fn t2_even_is_an_interval() {
        let v = eval_formula(FormulaKind::T2EvenSymBounds, &params("n=8,m=1")).unwrap();
        // lower 35, upper 1 + 35 + 8 + 28
        assert_eq!(
            v.value,
            Value::Interval {
                lower: BigUint::from(35u32),
                upper: BigUint::from(72u32)
            }
        );
    }

    #[test]
    fn large_values_do_not_overflow() {
        let v = eval_formula(FormulaKind::T2OddSym, &params("n=41,m=3")).unwrap();
        assert!(v.as_u64().is_none());
        assert!(v.exact().unwrap().bits() > 64);
    }

    #[test]
    fn misc_formulas() {
        assert_eq!(exact(FormulaKind::A5WrC2, ""), 57);
        assert_eq!(exact(FormulaKind::Tomkinson, "q=5"), 6);
        assert_eq!(exact(FormulaKind::Nilpotent, "p=3"), 4);
        assert!(eval_formula(FormulaKind::Nilpotent, &params("p=4")).is_err());
        let s = eval_formula(FormulaKind::SopraUb, &params("m=2,indices=5/6")).unwrap();
        assert_eq!(s.value, Value::UpperBound(BigUint::from(13u32)));
        let a = eval_formula(FormulaKind::AbmnsUb, &params("v=4")).unwrap();
        assert_eq!(a.value, Value::UpperBound(BigUint::from(7u32)));
        assert!(eval_formula(FormulaKind::AbmnsUb, &params("v=1")).is_err());
    }

    #[test]
    fn nonciclo_exponents() {
        // m = 2: divide by |S| and round up
        assert_eq!(nonciclo_bound(960, 60, 2), BigUint::from(16u32));
        assert_eq!(nonciclo_bound(961, 60, 2), BigUint::from(17u32));
        // m = 4, r = 2: exponent 0
        assert_eq!(nonciclo_bound(7, 60, 4), BigUint::from(7u32));
        // m = 3, r = 3: exponent 0
        assert_eq!(nonciclo_bound(5, 60, 3), BigUint::from(5u32));
    }

    #[test]
    fn tags_round_trip() {
        for k in FormulaKind::ALL {
            assert_eq!(FormulaKind::from_tag(k.tag()), Some(k));
        }
        assert_eq!(FormulaKind::from_tag("t2-odd"), Some(FormulaKind::T2OddSym));
    }

    #[test]
    fn group_formulas() {
        let caps = Caps::default();
        let s3 = Group::from_words(3, &["(0 1 2)", "(0 1)"], &caps).unwrap();
        assert_eq!(tomkinson_sigma(&s3, &caps).unwrap().as_u64(), Some(4));
        let d10 = Group::from_words(5, &["(0 1 2 3 4)", "(1 4)(2 3)"], &caps).unwrap();
        assert_eq!(tomkinson_sigma(&d10, &caps).unwrap().as_u64(), Some(6));
        let agl15 = Group::from_words(5, &["(0 1 2 3 4)", "(1 2 4 3)"], &caps).unwrap();
        assert_eq!(tomkinson_sigma(&agl15, &caps).unwrap().as_u64(), Some(6));
        let c6 = Group::from_words(6, &["(0 1 2 3 4 5)"], &caps).unwrap();
        assert!(tomkinson_sigma(&c6, &caps).is_err());
        let a5 = Group::from_words(5, &["(0 1 2)", "(2 3 4)"], &caps).unwrap();
        assert!(tomkinson_sigma(&a5, &caps).is_err());
        let v4 = Group::from_words(4, &["(0 1)", "(2 3)"], &caps).unwrap();
        assert_eq!(nilpotent_sigma(&v4).unwrap().as_u64(), Some(3));
        assert!(nilpotent_sigma(&s3).is_err());
    }
}
