//! Automorphism groups of complexes, group orders by Schreier-Sims, vertex
//! transitivity and the wreath group `(S_{d+1})^n ⋊ Aut K` acting on
//! `∂Δ_d ≀ K`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::complex::SimplicialComplex;
use crate::constructions::wreath_product;
use crate::error::{Error, Result};
use crate::iso::{is_facet_bijection, Matcher, Search};
use crate::label::VertexLabel;

/// A permutation of `0..n` stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter("images do not form a permutation".into()));
            }
        }
        Ok(Permutation(images))
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation over the given labels, `()` for the identity.
    pub fn to_cycle_string(&self, labels: &[VertexLabel]) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ")))
            .collect()
    }
}

/// Order of the group generated by `gens` (all of degree `n`), by the
/// Schreier-Sims algorithm.
pub fn group_order(n: usize, gens: &[Permutation]) -> BigUint {
    StabChain::new(n, gens).order()
}

struct StabChain {
    n: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
}

impl StabChain {
    fn new(n: usize, gens: &[Permutation]) -> Self {
        let mut sc = StabChain { n, base: Vec::new(), strong: gens.iter().filter(|g| !g.is_identity()).cloned().collect() };
        for g in sc.strong.clone() {
            if sc.base.iter().all(|&b| g.apply(b) == b) {
                sc.base.push((0..n).find(|&x| g.apply(x) != x).unwrap());
            }
        }
        let mut i = sc.base.len() as isize - 1;
        while i >= 0 {
            match sc.check_level(i as usize) {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        sc
    }

    fn level_gens(&self, i: usize) -> Vec<&Permutation> {
        self.strong.iter().filter(|g| self.base[..i].iter().all(|&b| g.apply(b) == b)).collect()
    }

    /// Transversal for level `i`: `trans[x]` maps the base point to `x`.
    fn transversal(&self, i: usize) -> Vec<Option<Permutation>> {
        let gens = self.level_gens(i);
        let b = self.base[i];
        let mut trans: Vec<Option<Permutation>> = vec![None; self.n];
        trans[b] = Some(Permutation::identity(self.n));
        let mut queue = vec![b];
        while let Some(y) = queue.pop() {
            for s in &gens {
                let z = s.apply(y);
                if trans[z].is_none() {
                    trans[z] = Some(s.compose(trans[y].as_ref().unwrap()));
                    queue.push(z);
                }
            }
        }
        trans
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where it left the chain.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.base.len() {
            let trans = self.transversal(l);
            match &trans[g.apply(self.base[l])] {
                Some(u) => g = u.inverse().compose(&g),
                None => return (g, l),
            }
        }
        (g, self.base.len())
    }

    /// Checks the Schreier generators of level `i`. If one does not sift,
    /// it joins the strong generators and the level to revisit is returned.
    fn check_level(&mut self, i: usize) -> Option<usize> {
        let trans = self.transversal(i);
        let gens: Vec<Permutation> = self.level_gens(i).into_iter().cloned().collect();
        for (x, ux) in trans.iter().enumerate() {
            let Some(ux) = ux else { continue };
            for s in &gens {
                let usx = trans[s.apply(x)].as_ref().unwrap();
                let schreier = usx.inverse().compose(&s.compose(ux));
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(schreier, i + 1);
                if h.is_identity() {
                    continue;
                }
                if j == self.base.len() {
                    self.base.push((0..self.n).find(|&p| h.apply(p) != p).unwrap());
                }
                self.strong.push(h);
                return Some(j);
            }
        }
        None
    }

    fn order(&self) -> BigUint {
        (0..self.base.len()).map(|i| BigUint::from(self.transversal(i).iter().flatten().count())).product()
    }
}

/// A group of vertex permutations of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    pub labels: Vec<VertexLabel>,
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    /// False when the search ran out of budget; the order is then a lower
    /// bound.
    pub complete: bool,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    /// Orbits of the vertex action, each sorted, in order of least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut root: Vec<usize> = (0..n).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while root[r] != r {
                r = root[r];
            }
            root[x] = r;
            r
        }
        for g in &self.generators {
            for x in 0..n {
                let (a, b) = (find(&mut root, x), find(&mut root, g.apply(x)));
                if a != b {
                    root[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut root, x);
            if index[r] == usize::MAX {
                index[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[index[r]].push(x);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }
}

impl fmt::Display for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = if self.complete { "" } else { " (lower bound)" };
        writeln!(f, "order {}{bound}", self.order)?;
        for g in &self.generators {
            writeln!(f, "{}", g.to_cycle_string(&self.labels))?;
        }
        Ok(())
    }
}

/// All automorphisms of `K` through a chain of point stabilizers: for each
/// base vertex (last first) every candidate image outside the known orbit is
/// tried by a backtracking search fixing the earlier base vertices. The
/// group order is the product of the orbit lengths.
pub fn automorphism_group(k: &SimplicialComplex, budget: u64) -> PermutationGroup {
    let n = k.num_vertices();
    let mut m = Matcher::new(k, k).expect("a complex matches itself");
    m.budget = budget;
    let colors = m.colors_a().to_vec();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = BigUint::one();
    let mut complete = true;
    for i in (0..n).rev() {
        let fixed: Vec<(usize, usize)> = (0..i).map(|b| (b, b)).collect();
        let fixes_prefix = |g: &Permutation| (0..i).all(|b| g.apply(b) == b);
        let mut level: Vec<Permutation> = gens.iter().filter(|g| fixes_prefix(g)).cloned().collect();
        let mut orbit = orbit_of(i, &level, n);
        for w in 0..n {
            if orbit[w] || colors[w] != colors[i] {
                continue;
            }
            let mut pairs = fixed.clone();
            pairs.push((i, w));
            match m.search(&pairs) {
                Search::Found(map) => {
                    let g = Permutation(map);
                    debug_assert!(is_facet_bijection(k, k, g.images()));
                    level.push(g.clone());
                    gens.push(g);
                    orbit = orbit_of(i, &level, n);
                }
                Search::NotFound => {}
                Search::BudgetExceeded => complete = false,
            }
        }
        order *= BigUint::from(orbit.iter().filter(|&&b| b).count());
    }
    PermutationGroup { labels: k.vertices().to_vec(), generators: gens, order, complete }
}

fn orbit_of(x: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

pub fn is_vertex_transitive(k: &SimplicialComplex, budget: u64) -> Result<bool> {
    let g = automorphism_group(k, budget);
    if g.is_transitive() {
        return Ok(true);
    }
    if !g.complete {
        return Err(Error::InvalidParameter("automorphism search ran out of budget".into()));
    }
    Ok(false)
}

/// Generators of `(S_{d+1})^n ⋊ Aut K` acting on the vertices of
/// `∂Δ_d ≀ K`: adjacent transpositions of the copies of each vertex, and each
/// generator of `Aut K` moving whole blocks of copies. Every generator is
/// checked to preserve the facets; the order is computed from the generators.
pub fn wreath_group_generators(d: usize, k: &SimplicialComplex, aut_k: &PermutationGroup) -> Result<PermutationGroup> {
    if aut_k.labels != k.vertices() {
        return Err(Error::InvalidParameter("group does not act on this complex".into()));
    }
    if let Some(g) = aut_k.generators.iter().find(|g| !is_facet_bijection(k, k, g.images())) {
        return Err(Error::InvalidParameter(format!("{} is not an automorphism", g.to_cycle_string(&aut_k.labels))));
    }
    if d == 0 {
        return Ok(aut_k.clone());
    }
    let w = wreath_product(d, k);
    let n = w.num_vertices();
    let at = |v: usize, c: usize| w.index_of(&k.label(v).copy(c)).expect("wreath copy label");
    let mut gens = Vec::new();
    for v in 0..k.num_vertices() {
        for c in 1..=d {
            gens.push(Permutation::transposition(n, at(v, c), at(v, c + 1)));
        }
    }
    for g in &aut_k.generators {
        let mut images = vec![0; n];
        for v in 0..k.num_vertices() {
            for c in 1..=d + 1 {
                images[at(v, c)] = at(g.apply(v), c);
            }
        }
        gens.push(Permutation(images));
    }
    if let Some(g) = gens.iter().find(|g| !is_facet_bijection(&w, &w, g.images())) {
        return Err(Error::Internal(format!("{} does not preserve the wreath product", g.to_cycle_string(w.vertices()))));
    }
    let order = group_order(n, &gens);
    Ok(PermutationGroup { labels: w.vertices().to_vec(), generators: gens, order, complete: aut_k.complete })
}
