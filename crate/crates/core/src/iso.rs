//! Combinatorial isomorphism search.
//!
//! Vertices are first colored by an invariant (facet degree plus the
//! f-vector of the vertex link) and the coloring is refined against the
//! facet-incidence structure until it is stable. A backtracking search then
//! extends partial vertex maps, pruning with colors, pairwise facet
//! co-degrees and partial face images.

use std::collections::{BTreeMap, HashSet};

use crate::complex::SimplicialComplex;
use crate::label::VertexLabel;
use crate::vset::VertexSet;

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

/// A vertex bijection between two complexes that maps facets onto facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub pairs: Vec<(VertexLabel, VertexLabel)>,
}

/// Finds a combinatorial isomorphism from `a` to `b` if one exists.
pub fn find_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Isomorphism> {
    match find_isomorphism_budgeted(a, b, u64::MAX) {
        Search::Found(iso) => Some(iso),
        _ => None,
    }
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn find_isomorphism_budgeted(a: &SimplicialComplex, b: &SimplicialComplex, budget: u64) -> Search<Isomorphism> {
    let Some(mut m) = Matcher::new(a, b) else { return Search::NotFound };
    m.budget = budget;
    match m.search(&[]) {
        Search::Found(map) => Search::Found(Isomorphism {
            pairs: map.iter().enumerate().map(|(i, &j)| (a.label(i).clone(), b.label(j).clone())).collect(),
        }),
        Search::NotFound => Search::NotFound,
        Search::BudgetExceeded => Search::BudgetExceeded,
    }
}

/// Checks that `map` (indices of `a` to indices of `b`) is a bijection on
/// vertices carrying facets onto facets.
pub fn is_facet_bijection(a: &SimplicialComplex, b: &SimplicialComplex, map: &[usize]) -> bool {
    if a.num_vertices() != b.num_vertices() || a.num_facets() != b.num_facets() || map.len() != a.num_vertices() {
        return false;
    }
    let mut seen = vec![false; map.len()];
    for &j in map {
        if j >= seen.len() || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    let target: HashSet<&VertexSet> = b.facet_sets().iter().collect();
    a.facet_sets().iter().all(|f| target.contains(&f.map(|i| map[i])))
}

pub(crate) struct Matcher<'a> {
    a: &'a SimplicialComplex,
    b: &'a SimplicialComplex,
    color_a: Vec<usize>,
    color_b: Vec<usize>,
    codeg_a: Vec<Vec<u32>>,
    codeg_b: Vec<Vec<u32>>,
    inc_a: Vec<Vec<usize>>,
    inc_b: Vec<Vec<usize>>,
    facets_b: HashSet<VertexSet>,
    order: Vec<usize>,
    pub(crate) budget: u64,
    pub(crate) nodes: u64,
}

impl<'a> Matcher<'a> {
    /// Returns `None` when cheap invariants already rule out an isomorphism.
    pub(crate) fn new(a: &'a SimplicialComplex, b: &'a SimplicialComplex) -> Option<Self> {
        if a.num_vertices() != b.num_vertices() || a.num_facets() != b.num_facets() {
            return None;
        }
        let mut sizes_a: Vec<usize> = a.facet_sets().iter().map(VertexSet::len).collect();
        let mut sizes_b: Vec<usize> = b.facet_sets().iter().map(VertexSet::len).collect();
        sizes_a.sort_unstable();
        sizes_b.sort_unstable();
        if sizes_a != sizes_b {
            return None;
        }
        let (color_a, color_b) = refine_colors(a, b);
        let mut ca = color_a.clone();
        let mut cb = color_b.clone();
        ca.sort_unstable();
        cb.sort_unstable();
        if ca != cb {
            return None;
        }
        let codeg_a = codegrees(a);
        let codeg_b = codegrees(b);
        let inc_a = incidences(a);
        let inc_b = incidences(b);
        let order = search_order(&color_a, &codeg_a);
        Some(Matcher {
            a,
            b,
            color_a,
            color_b,
            codeg_a,
            codeg_b,
            inc_a,
            inc_b,
            facets_b: b.facet_sets().iter().cloned().collect(),
            order,
            budget: u64::MAX,
            nodes: 0,
        })
    }

    pub(crate) fn colors_a(&self) -> &[usize] {
        &self.color_a
    }

    /// Searches for a facet-preserving bijection extending `fixed`.
    /// The returned vector maps vertex indices of `a` to those of `b`.
    pub(crate) fn search(&mut self, fixed: &[(usize, usize)]) -> Search<Vec<usize>> {
        let n = self.a.num_vertices();
        let mut map = vec![usize::MAX; n];
        let mut inv = vec![usize::MAX; n];
        let mut mapped: Vec<usize> = Vec::new();
        for &(u, x) in fixed {
            if map[u] != usize::MAX || inv[x] != usize::MAX {
                if map[u] == x {
                    continue;
                }
                return Search::NotFound;
            }
            if !self.consistent(u, x, &map, &inv, &mapped) {
                return Search::NotFound;
            }
            map[u] = x;
            inv[x] = u;
            mapped.push(u);
        }
        let order: Vec<usize> = self.order.iter().copied().filter(|&u| map[u] == usize::MAX).collect();
        match self.extend(&order, 0, &mut map, &mut inv, &mut mapped) {
            Some(true) => Search::Found(map),
            Some(false) => Search::NotFound,
            None => Search::BudgetExceeded,
        }
    }

    fn extend(
        &mut self,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        inv: &mut [usize],
        mapped: &mut Vec<usize>,
    ) -> Option<bool> {
        if depth == order.len() {
            let ok = self.a.facet_sets().iter().all(|f| self.facets_b.contains(&f.map(|i| map[i])));
            return Some(ok);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let u = order[depth];
        for x in 0..map.len() {
            if inv[x] != usize::MAX || self.color_b[x] != self.color_a[u] {
                continue;
            }
            if !self.consistent(u, x, map, inv, mapped) {
                continue;
            }
            map[u] = x;
            inv[x] = u;
            mapped.push(u);
            match self.extend(order, depth + 1, map, inv, mapped)? {
                true => return Some(true),
                false => {
                    mapped.pop();
                    map[u] = usize::MAX;
                    inv[x] = usize::MAX;
                }
            }
        }
        Some(false)
    }

    fn consistent(&self, u: usize, x: usize, map: &[usize], inv: &[usize], mapped: &[usize]) -> bool {
        if self.color_a[u] != self.color_b[x] {
            return false;
        }
        if mapped.iter().any(|&w| self.codeg_a[u][w] != self.codeg_b[x][map[w]]) {
            return false;
        }
        // Mapped parts of facets through u must land inside faces of b, and
        // conversely for facets of b through x.
        for &fi in &self.inc_a[u] {
            let f = &self.a.facet_sets()[fi];
            let img: VertexSet = f.iter().filter(|&w| w == u || map[w] != usize::MAX).map(|w| if w == u { x } else { map[w] }).collect();
            if !self.b.facet_sets().iter().any(|g| img.is_subset(g)) {
                return false;
            }
        }
        for &gi in &self.inc_b[x] {
            let g = &self.b.facet_sets()[gi];
            let pre: VertexSet = g.iter().filter(|&y| y == x || inv[y] != usize::MAX).map(|y| if y == x { u } else { inv[y] }).collect();
            if !self.a.facet_sets().iter().any(|f| pre.is_subset(f)) {
                return false;
            }
        }
        true
    }
}

fn codegrees(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    let n = k.num_vertices();
    let mut c = vec![vec![0u32; n]; n];
    for f in k.facet_sets() {
        let m: Vec<usize> = f.iter().collect();
        for &i in &m {
            for &j in &m {
                c[i][j] += 1;
            }
        }
    }
    c
}

fn incidences(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); k.num_vertices()];
    for (fi, f) in k.facet_sets().iter().enumerate() {
        for v in f.iter() {
            inc[v].push(fi);
        }
    }
    inc
}

/// Greedy order: start in the smallest color class, then prefer vertices
/// sharing many facets with already ordered ones.
fn search_order(colors: &[usize], codeg: &[Vec<u32>]) -> Vec<usize> {
    let n = colors.len();
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in colors {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&w| codeg[v][w] > 0).count();
                (links, std::cmp::Reverse(class_size[&colors[v]]), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Joint color refinement of the vertices of `a` and `b`, so that equal colors
/// mean equal invariants across both complexes.
pub(crate) fn refine_colors(a: &SimplicialComplex, b: &SimplicialComplex) -> (Vec<usize>, Vec<usize>) {
    let initial = |k: &SimplicialComplex| -> Vec<Vec<u64>> {
        (0..k.num_vertices())
            .map(|v| {
                let link_facets: Vec<VertexSet> =
                    k.facet_sets().iter().filter(|f| f.contains(v)).map(|f| f.without(v)).collect();
                let mut sig = vec![link_facets.len() as u64];
                let fv = crate::complex::count_faces(&crate::vset::maximal_sets(link_facets));
                sig.extend(fv.iter().map(|c| c.iter_u64_digits().next().unwrap_or(0)));
                sig
            })
            .collect()
    };
    let sa = initial(a);
    let sb = initial(b);
    let (mut ca, mut cb) = assign_ids(&sa, &sb);
    let mut classes = count_classes(&ca, &cb);
    loop {
        let sig = |k: &SimplicialComplex, colors: &[usize]| -> Vec<(usize, Vec<Vec<usize>>)> {
            (0..k.num_vertices())
                .map(|v| {
                    let mut around: Vec<Vec<usize>> = k
                        .facet_sets()
                        .iter()
                        .filter(|f| f.contains(v))
                        .map(|f| {
                            let mut cs: Vec<usize> = f.iter().filter(|&w| w != v).map(|w| colors[w]).collect();
                            cs.sort_unstable();
                            cs
                        })
                        .collect();
                    around.sort();
                    (colors[v], around)
                })
                .collect()
        };
        let na = sig(a, &ca);
        let nb = sig(b, &cb);
        let (ra, rb) = assign_ids(&na, &nb);
        let c = count_classes(&ra, &rb);
        ca = ra;
        cb = rb;
        if c == classes {
            break;
        }
        classes = c;
    }
    (ca, cb)
}

fn assign_ids<T: Ord + Clone>(a: &[T], b: &[T]) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<T, usize> = BTreeMap::new();
    for s in a.iter().chain(b) {
        ids.entry(s.clone()).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (a.iter().map(|s| ids[s]).collect(), b.iter().map(|s| ids[s]).collect())
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).collect::<HashSet<_>>().len()
}
