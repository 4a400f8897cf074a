//! Group builders and the curated corpus.
//!
//! Frobenius groups `p:q` act on `F_p` by `x -> ax + b` with `a` of order `q`.
//! Affine groups over `F_{p^k}` use a primitive element found by search, and
//! `p^k:d` keeps the multipliers of order dividing `d`.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Caps;
use crate::constructions::{alternating_generators, symmetric_generators};
use crate::error::{Error, Result};
use crate::lattice::{is_solvable, smallest_prime_factor};
use crate::perm::Perm;
use crate::spec_file::{ExpectedSigma, GroupSpec};

fn perm(images: Vec<usize>) -> Perm {
    Perm::from_images(images.into_iter().map(|i| i as u32).collect()).expect("bijection")
}

fn spec(name: &str, degree: usize, gens: Vec<Perm>, tags: &[&str], note: &str) -> GroupSpec {
    let mut s = GroupSpec::new(name, degree, gens);
    s.tags = tags.iter().map(|t| t.to_string()).collect();
    s.note = Some(note.to_string());
    s
}

/// `F_q`, `q = p^k`, with elements `0..q` read as base-`p` digit vectors.
pub struct Field {
    pub p: usize,
    pub k: usize,
    /// Monic modulus, low coefficient first, length `k + 1`.
    modulus: Vec<usize>,
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        let p = smallest_prime_factor(q);
        let mut k = 0;
        let mut r = q;
        while r > 1 {
            if !r.is_multiple_of(p) {
                return Err(Error::Hypothesis(format!("{q} is not a prime power")));
            }
            r /= p;
            k += 1;
        }
        if k == 0 {
            return Err(Error::Hypothesis("field order must exceed 1".into()));
        }
        let modulus = (0..p.pow(k as u32))
            .map(|tail| {
                let mut c = digits(tail, p, k);
                c.push(1);
                c
            })
            .find(|c| is_irreducible(c, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Field { p, k, modulus })
    }

    pub fn order(&self) -> usize {
        self.p.pow(self.k as u32)
    }

    fn digits(&self, a: usize) -> Vec<usize> {
        digits(a, self.p, self.k)
    }

    fn join_digits(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.join_digits(&s)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0usize; 2 * self.k];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for top in (self.k..2 * self.k).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let at = top - self.k + i;
                prod[at] = (prod[at] + self.p * self.p - c * m % self.p) % self.p;
            }
        }
        self.join_digits(&prod[..self.k])
    }

    pub fn mult_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn primitive_element(&self) -> usize {
        (2..self.order())
            .find(|&a| self.mult_order(a) == self.order() - 1)
            .unwrap_or(1)
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }
}

fn digits(mut a: usize, p: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for x in d.iter_mut() {
        *x = a % p;
        a /= p;
    }
    d
}

/// Remainder of `a` modulo the monic `b` over `F_p`.
fn poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &m) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * m % p) % p;
        }
        r.pop();
    }
    r
}

fn is_irreducible(c: &[usize], p: usize) -> bool {
    let deg = c.len() - 1;
    for d in 1..=deg / 2 {
        for tail in 0..p.pow(d as u32) {
            let mut b = digits(tail, p, d);
            b.push(1);
            if poly_rem(c, &b, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

pub fn cyclic(n: usize) -> GroupSpec {
    let gens = if n > 1 {
        vec![perm((0..n).map(|i| (i + 1) % n).collect())]
    } else {
        Vec::new()
    };
    spec(
        &format!("C{n}"),
        n.max(1),
        gens,
        &["solvable"],
        "regular cyclic group",
    )
}

/// `C_p x C_p` on `2p` points.
pub fn elementary_pair(p: usize) -> GroupSpec {
    let a = perm(
        (0..2 * p)
            .map(|i| if i < p { (i + 1) % p } else { i })
            .collect(),
    );
    let b = perm(
        (0..2 * p)
            .map(|i| if i < p { i } else { p + (i + 1 - p) % p })
            .collect(),
    );
    spec(
        &format!("C{p}xC{p}"),
        2 * p,
        vec![a, b],
        &["solvable", "nilpotent"],
        "two disjoint p-cycles",
    )
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> GroupSpec {
    let r = perm((0..n).map(|i| (i + 1) % n).collect());
    let s = perm((0..n).map(|i| (n - i) % n).collect());
    spec(
        &format!("D{}", 2 * n),
        n,
        vec![r, s],
        &["solvable"],
        "symmetries of the n-gon",
    )
}

/// `p^k : d`, the affine maps `x -> ax + b` of `F_q` with `a^d = 1`.
pub fn affine(q: usize, d: usize) -> Result<GroupSpec> {
    let f = Field::new(q)?;
    if !(q - 1).is_multiple_of(d) {
        return Err(Error::Hypothesis(format!("{d} does not divide {}", q - 1)));
    }
    let mut gens = Vec::new();
    for i in 0..f.k {
        let e = f.p.pow(i as u32);
        gens.push(perm((0..q).map(|x| f.add(x, e)).collect()));
    }
    if d > 1 {
        let a = f.pow(f.primitive_element(), (q - 1) / d);
        gens.push(perm((0..q).map(|x| f.mul(x, a)).collect()));
    }
    let name = if d == q - 1 {
        format!("AGL(1,{q})")
    } else if f.k == 1 {
        if d == 2 {
            format!("D{}", 2 * q)
        } else {
            format!("{q}:{d}")
        }
    } else {
        format!("{}^{}:{d}", f.p, f.k)
    };
    let note = format!("affine maps x -> ax + b of F_{q} with a of order dividing {d}");
    Ok(spec(&name, q, gens, &["solvable"], &note))
}

pub fn alternating(n: usize) -> GroupSpec {
    let mut tags = vec![];
    if n <= 4 {
        tags.push("solvable");
    }
    spec(
        &format!("A{n}"),
        n,
        alternating_generators(n),
        &tags,
        "natural action",
    )
}

pub fn symmetric(n: usize) -> GroupSpec {
    let mut tags = vec![];
    if n <= 4 {
        tags.push("solvable");
    }
    spec(
        &format!("S{n}"),
        n,
        symmetric_generators(n),
        &tags,
        "natural action",
    )
}

/// `SL(3,2)` on the seven non-zero vectors of `F_2^3`.
pub fn sl32() -> GroupSpec {
    // vectors 1..=7 as bit masks, point = mask - 1; matrices act on columns
    let apply = |rows: [u32; 3], v: usize| -> usize {
        let mut out = 0;
        for (i, r) in rows.iter().enumerate() {
            if (r & v as u32).count_ones() % 2 == 1 {
                out |= 1 << i;
            }
        }
        out
    };
    let mat = |rows: [u32; 3]| perm((1..8).map(|v| apply(rows, v) - 1).collect());
    // a transvection and the coordinate 3-cycle
    let t = mat([0b011, 0b010, 0b100]);
    let c = mat([0b100, 0b001, 0b010]);
    spec(
        "SL(3,2)",
        7,
        vec![t, c],
        &[],
        "action on the non-zero vectors of F_2^3",
    )
}

pub fn m11() -> GroupSpec {
    spec(
        "M11",
        11,
        vec![
            Perm::parse(11, "(0 1 2 3 4 5 6 7 8 9 10)").unwrap(),
            Perm::parse(11, "(2 6 10 7)(3 9 4 5)").unwrap(),
        ],
        &[],
        "sharply 4-transitive action on 11 points",
    )
}

/// `Q8` in its regular representation.
pub fn quaternion() -> GroupSpec {
    // element 4s + u is (-1)^s * [1, i, j, k][u]
    let unit = |a: usize, b: usize| -> (usize, usize) {
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        T[a][b]
    };
    let mul = |x: usize, y: usize| {
        let (s, u) = unit(x % 4, y % 4);
        4 * ((x / 4 + y / 4 + s) % 2) + u
    };
    let right = |g: usize| perm((0..8).map(|x| mul(x, g)).collect());
    spec(
        "Q8",
        8,
        vec![right(1), right(2)],
        &["solvable", "nilpotent"],
        "regular representation",
    )
}

fn with_expected(mut s: GroupSpec, sigma: u64) -> GroupSpec {
    s.expected_sigma = Some(ExpectedSigma {
        value: Some(sigma),
        source: "published".into(),
    });
    s.tags.push("table1".into());
    s
}

/// The groups with `3 <= sigma <= 25` whose every proper quotient has larger
/// covering number, with their listed values.
pub fn table1() -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    let mut add = |s: GroupSpec, sigma: u64| out.push(with_expected(s, sigma));
    add(elementary_pair(2), 3);
    add(elementary_pair(3), 4);
    add(symmetric(3), 4);
    add(alternating(4), 5);
    add(elementary_pair(5), 6);
    add(dihedral(5), 6);
    add(affine(5, 4)?, 6);
    add(elementary_pair(7), 8);
    add(dihedral(7), 8);
    add(affine(7, 3)?, 8);
    add(affine(7, 6)?, 8);
    add(affine(8, 7)?, 9);
    add(affine(9, 4)?, 10);
    add(affine(9, 8)?, 10);
    add(alternating(5), 10);
    add(elementary_pair(11), 12);
    add(affine(11, 5)?, 12);
    add(dihedral(11), 12);
    add(affine(11, 10)?, 12);
    add(symmetric(6), 13);
    add(elementary_pair(13), 14);
    add(dihedral(13), 14);
    for d in [3, 4, 6, 12] {
        add(affine(13, d)?, 14);
    }
    add(sl32(), 15);
    add(symmetric(5), 16);
    add(alternating(6), 16);
    add(affine(16, 5)?, 17);
    add(affine(16, 15)?, 17);
    add(elementary_pair(17), 18);
    add(dihedral(17), 18);
    for d in [4, 8, 16] {
        add(affine(17, d)?, 18);
    }
    add(elementary_pair(19), 20);
    add(dihedral(19), 20);
    for d in [3, 6, 9, 18] {
        add(affine(19, d)?, 20);
    }
    add(m11(), 23);
    add(elementary_pair(23), 24);
    add(dihedral(23), 24);
    for d in [11, 22] {
        add(affine(23, d)?, 24);
    }
    Ok(out)
}

fn shift_all(gens: &[Perm], offset: usize, degree: usize) -> Vec<Perm> {
    gens.iter().map(|p| p.shifted(offset, degree)).collect()
}

pub fn direct(a: &GroupSpec, b: &GroupSpec) -> GroupSpec {
    let degree = a.degree + b.degree;
    let mut gens = shift_all(&a.generators, 0, degree);
    gens.extend(shift_all(&b.generators, a.degree, degree));
    let mut s = GroupSpec::new(&format!("{}x{}", a.name, b.name), degree, gens);
    s.note = Some("direct product on disjoint points".into());
    s
}

/// `A wr C2` in the imprimitive action.
pub fn wreath2(a: &GroupSpec) -> GroupSpec {
    let d = a.degree;
    let mut gens = shift_all(&a.generators, 0, 2 * d);
    gens.push(perm((0..2 * d).map(|i| (i + d) % (2 * d)).collect()));
    let mut s = GroupSpec::new(&format!("({})wrC2", a.name), 2 * d, gens);
    s.note = Some("wreath product with the block swap".into());
    s
}

/// `C_n : <u>`, the maps `x -> u^i x + b` of `Z/n`.
pub fn metacyclic(n: usize, u: usize) -> GroupSpec {
    let gens = vec![
        perm((0..n).map(|x| (x + 1) % n).collect()),
        perm((0..n).map(|x| x * u % n).collect()),
    ];
    spec(
        &format!("C{n}:<{u}>"),
        n,
        gens,
        &["solvable"],
        "multiplication by a unit extended by translations",
    )
}

fn units(n: usize) -> Vec<usize> {
    (2..n)
        .filter(|&u| num_integer::Integer::gcd(&u, &n) == 1)
        .collect()
}

fn random_block(rng: &mut ChaCha8Rng) -> GroupSpec {
    match rng.gen_range(0..8) {
        0 => cyclic(rng.gen_range(2..=12)),
        1 => dihedral(rng.gen_range(3..=12)),
        2 => {
            let n = rng.gen_range(5..=21);
            match units(n).choose(rng) {
                Some(&u) => metacyclic(n, u),
                None => dihedral(n),
            }
        }
        3 => symmetric(rng.gen_range(3..=4)),
        4 => alternating(4),
        5 => quaternion(),
        6 => elementary_pair(*[2, 3].choose(rng).unwrap()),
        _ => {
            let p = *[3, 5, 7].choose(rng).unwrap();
            affine(p, p - 1).expect("prime field")
        }
    }
}

/// Deterministic solvable non-cyclic groups of order at most `max_order`,
/// built from small blocks by direct products and wreath products with `C2`.
/// Groups with equal coarse invariants are kept once.
pub fn random_solvable(
    seed: u64,
    count: usize,
    max_order: usize,
    caps: &Caps,
) -> Result<Vec<GroupSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<GroupSpec> = Vec::new();
    let mut seen = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 200 * count {
            return Err(Error::Hypothesis("random corpus did not fill".into()));
        }
        let mut s = random_block(&mut rng);
        for _ in 0..rng.gen_range(0..=2) {
            s = match rng.gen_range(0..3) {
                0 => wreath2(&s),
                _ => direct(&s, &random_block(&mut rng)),
            };
        }
        let g = match s.build(caps) {
            Ok(g) if g.is_enumerated() => g,
            _ => continue,
        };
        if g.len() > max_order || g.is_cyclic() || !is_solvable(&g) {
            continue;
        }
        let fp = g.fingerprint();
        if seen.contains(&fp) {
            continue;
        }
        seen.push(fp);
        s.name = format!("R{:02}_{}", out.len() + 1, s.name);
        s.tags = vec!["solvable".into(), "random".into()];
        out.push(s);
    }
    Ok(out)
}

/// Pairs of groups of coprime orders.
pub fn coprime_pairs() -> Result<Vec<(GroupSpec, GroupSpec)>> {
    let pairs = vec![
        (symmetric(3), elementary_pair(5)),
        (symmetric(3), cyclic(5)),
        (symmetric(3), elementary_pair(7)),
        (symmetric(3), affine(11, 5)?),
        (alternating(4), elementary_pair(5)),
        (alternating(4), cyclic(7)),
        (alternating(4), elementary_pair(7)),
        (elementary_pair(2), elementary_pair(3)),
        (elementary_pair(2), affine(7, 3)?),
        (elementary_pair(2), elementary_pair(5)),
        (elementary_pair(3), elementary_pair(5)),
        (elementary_pair(3), dihedral(5)),
        (elementary_pair(3), affine(5, 4)?),
        (elementary_pair(3), dihedral(7)),
        (dihedral(5), affine(7, 3)?),
        (elementary_pair(5), affine(7, 3)?),
        (elementary_pair(5), elementary_pair(7)),
        (affine(5, 4)?, affine(7, 3)?),
        (alternating(5), elementary_pair(7)),
        (quaternion(), affine(7, 3)?),
    ];
    Ok(pairs)
}

/// Every `*.grp` file in `dir`, sorted by file name.
pub fn load_dir(dir: impl AsRef<Path>) -> Result<Vec<GroupSpec>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths.iter().map(GroupSpec::load).collect()
}

/// A file-system friendly name.
pub fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect::<String>()
        .split('_')
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("_")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn field_arithmetic() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::new(q).unwrap();
            let w = f.primitive_element();
            assert_eq!(f.mult_order(w), q - 1, "q = {q}");
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
            // distributivity on a sample
            for a in 0..q.min(6) {
                for b in 0..q {
                    for c in 0..q.min(5) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
        assert!(Field::new(12).is_err());
    }

    #[test]
    fn table1_orders() {
        let want: &[(&str, u128)] = &[
            ("C2xC2", 4),
            ("S3", 6),
            ("AGL(1,5)", 20),
            ("7:3", 21),
            ("AGL(1,8)", 56),
            ("3^2:4", 36),
            ("AGL(1,9)", 72),
            ("SL(3,2)", 168),
            ("2^4:5", 80),
            ("AGL(1,16)", 240),
            ("13:4", 52),
            ("D46", 46),
            ("AGL(1,23)", 506),
            ("M11", 7920),
            ("A6", 360),
        ];
        let t = table1().unwrap();
        assert_eq!(t.len(), 47);
        for (name, order) in want {
            let s = t
                .iter()
                .find(|s| s.name == *name)
                .unwrap_or_else(|| panic!("{name}"));
            assert_eq!(s.build(&caps()).unwrap().order(), *order, "{name}");
        }
    }

    #[test]
    fn small_builders() {
        assert_eq!(quaternion().build(&caps()).unwrap().len(), 8);
        assert!(!quaternion().build(&caps()).unwrap().is_abelian());
        assert_eq!(metacyclic(7, 2).build(&caps()).unwrap().len(), 21);
        assert_eq!(wreath2(&symmetric(3)).build(&caps()).unwrap().len(), 72);
        assert_eq!(
            direct(&cyclic(2), &cyclic(3)).build(&caps()).unwrap().len(),
            6
        );
        assert_eq!(cyclic(1).build(&caps()).unwrap().len(), 1);
        assert_eq!(file_stem("AGL(1,5)"), "agl_1_5");
        assert_eq!(file_stem("3^2:4"), "3_2_4");
    }

    #[test]
    fn random_corpus_is_deterministic() {
        let a = random_solvable(7, 10, 500, &caps()).unwrap();
        let b = random_solvable(7, 10, 500, &caps()).unwrap();
        assert_eq!(a, b);
        for s in &a {
            let g = s.build(&caps()).unwrap();
            assert!(
                g.len() <= 500 && !g.is_cyclic() && is_solvable(&g),
                "{}",
                s.name
            );
        }
    }

    #[test]
    fn coprime_pairs_are_coprime() {
        for (a, b) in coprime_pairs().unwrap() {
            let (x, y) = (
                a.build(&caps()).unwrap().len(),
                b.build(&caps()).unwrap().len(),
            );
            assert_eq!(
                num_integer::Integer::gcd(&x, &y),
                1,
                "{} {}",
                a.name,
                b.name
            );
        }
    }
}
