//! Deterministic Schreier–Sims for the order of groups too large to enumerate.

use std::collections::HashMap;

use crate::perm::Perm;

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// orbit point -> transversal element mapping `base` to that point
    transversal: HashMap<usize, Perm>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            transversal: HashMap::new(),
            orbit: Vec::new(),
        }
    }
}

/// Base and strong generating set.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        let base = (0..degree)
            .find(|&p| gens.iter().any(|g| g.apply(p) != p))
            .unwrap();
        let mut top = Level::new(base);
        top.gens = gens;
        chain.levels.push(top);
        chain.rebuild_orbit(0);

        let mut i = 0isize;
        while i >= 0 {
            match chain.find_new_generator(i as usize) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = (0..degree).find(|&p| h.apply(p) != p).unwrap();
                        chain.levels.push(Level::new(b));
                    }
                    chain.levels[j].gens.push(h);
                    for l in (i as usize + 1)..=j {
                        chain.rebuild_orbit(l);
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// Generators of the stabilizer of the first `level` base points.
    fn strong_gens(&self, level: usize) -> impl Iterator<Item = &Perm> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter())
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens: Vec<Perm> = self.strong_gens(level).cloned().collect();
        let lvl = &mut self.levels[level];
        lvl.transversal.clear();
        lvl.transversal
            .insert(lvl.base, Perm::identity(self.degree));
        lvl.orbit = vec![lvl.base];
        let mut k = 0;
        while k < lvl.orbit.len() {
            let p = lvl.orbit[k];
            for g in &gens {
                let q = g.apply(p);
                if !lvl.transversal.contains_key(&q) {
                    let t = lvl.transversal[&p].compose(g);
                    lvl.transversal.insert(q, t);
                    lvl.orbit.push(q);
                }
            }
            k += 1;
        }
    }

    /// Finds a Schreier generator of `level` that does not sift through the levels below.
    fn find_new_generator(&self, level: usize) -> Option<(Perm, usize)> {
        let lvl = &self.levels[level];
        for &p in &lvl.orbit {
            let up = &lvl.transversal[&p];
            for s in self.strong_gens(level) {
                let q = s.apply(p);
                let schreier = up.compose(s).compose(&lvl.transversal[&q].inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (res, at) = self.sift(schreier, level + 1);
                if !res.is_identity() {
                    return Some((res, at));
                }
            }
        }
        None
    }

    /// Sifts `g` starting at `start`; returns the residue and the level it dropped out at.
    fn sift(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(start) {
            let b = g.apply(lvl.base);
            match lvl.transversal.get(&b) {
                Some(t) => g = g.compose(&t.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (res, _) = self.sift(g.clone(), 0);
        res.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: String = format!(
            "({})",
            (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        );
        vec![
            Perm::parse(n, &cyc).unwrap(),
            Perm::parse(n, "(0 1)").unwrap(),
        ]
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(StabChain::new(5, &sym(5)).order(), 120);
        assert_eq!(StabChain::new(9, &sym(9)).order(), 362_880);
        assert_eq!(StabChain::new(11, &sym(11)).order(), 39_916_800);
    }

    #[test]
    fn membership() {
        let a5 = vec![
            Perm::parse(5, "(0 1 2)").unwrap(),
            Perm::parse(5, "(2 3 4)").unwrap(),
        ];
        let chain = StabChain::new(5, &a5);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&Perm::parse(5, "(0 1)(2 3)").unwrap()));
        assert!(!chain.contains(&Perm::parse(5, "(0 1)").unwrap()));
        assert_eq!(StabChain::new(4, &[]).order(), 1);
    }
}
