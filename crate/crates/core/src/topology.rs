//! Integer homology, pseudomanifolds, neighborliness, Cohen-Macaulayness over
//! the rationals and dual-graph diagnostics.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed};
use rayon::prelude::*;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::verdict::{Budget, Certificate, PropertyVerdict};
use crate::vset::VertexSet;

/// Faces of the complex above which the Cohen-Macaulay check gives up.
pub const CM_FACE_LIMIT: usize = 1 << 20;

/// Sparse boundary map from `i`-faces to `(i-1)`-faces, one column per
/// `i`-face. Faces are listed in canonical order and the sign of removing the
/// vertex at position `p` is `(-1)^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    fn from_layers(lower: &[VertexSet], upper: &[VertexSet]) -> Self {
        let index: HashMap<&VertexSet, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let columns = upper
            .iter()
            .map(|face| {
                let mut col: Vec<(usize, i64)> = face
                    .iter()
                    .enumerate()
                    .map(|(p, v)| (index[&face.without(v)], if p % 2 == 0 { 1 } else { -1 }))
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        BoundaryMatrix { rows: lower.len(), cols: upper.len(), columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                m[i][j] = x;
            }
        }
        m
    }

    /// `self ∘ other` as a dense matrix.
    pub fn compose(&self, other: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; other.cols]; self.rows];
        for (j, col) in other.columns.iter().enumerate() {
            for &(k, y) in col {
                for &(i, x) in &self.columns[k] {
                    out[i][j] += x * y;
                }
            }
        }
        out
    }
}

/// The boundary map out of the faces with `i + 1` vertices, including the
/// augmentation when `i = 0`.
pub fn boundary_matrix(k: &SimplicialComplex, i: usize) -> BoundaryMatrix {
    let layers = k.faces_by_size();
    let empty = Vec::new();
    let lower = layers.get(i).unwrap_or(&empty);
    let upper = layers.get(i + 1).unwrap_or(&empty);
    BoundaryMatrix::from_layers(lower, upper)
}

/// Nonzero diagonal of a Smith normal form (not yet in divisibility order).
/// Returns `None` if an intermediate value overflows `T`.
fn snf_diagonal<T>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let Some((pi, pj)) = min_entry(&a, t, cols) else { break };
        a.swap(t, pi);
        for row in a.iter_mut().skip(t) {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            let pivot = a[t][t].clone();
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                let (head, tail) = a.split_at_mut(i);
                let src = &head[t];
                let dst = &mut tail[0];
                for j in t..cols {
                    if !src[j].is_zero() {
                        dst[j] = dst[j].checked_sub(&q.checked_mul(&src[j])?)?;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        row[j] = row[j].checked_sub(&q.checked_mul(&row[t])?)?;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // a remainder is smaller than the pivot; move it into place
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else {
                for row in a.iter_mut().skip(t) {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

fn min_entry<T: Signed + Clone + PartialOrd>(a: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if ax.is_one() {
                return Some((i, j));
            }
            if best.as_ref().is_none_or(|b| ax < b.2) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Invariant factors of an integer matrix given by sparse columns: the
/// nonzero Smith normal form entries in divisibility order.
pub fn invariant_factors(m: &BoundaryMatrix) -> Vec<BigInt> {
    let dense = m.to_dense();
    let diag = match snf_diagonal(dense.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect(), m.cols) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => {
            log::debug!("SNF overflowed i128, retrying with big integers");
            snf_diagonal(dense.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), m.cols)
                .expect("big integers do not overflow")
        }
    };
    smith_chain(diag)
}

/// Turns a diagonal into the equivalent one with each entry dividing the
/// next.
fn smith_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// One reduced homology group `Z^rank ⊕ Z/t_1 ⊕ ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Reduced homology with integer coefficients. Only nontrivial groups are
/// stored; equality ignores the dimension of the complex.
#[derive(Clone, Debug)]
pub struct HomologyGroups {
    dim: isize,
    groups: BTreeMap<isize, HomologyGroup>,
}

impl PartialEq for HomologyGroups {
    fn eq(&self, other: &Self) -> bool {
        self.groups == other.groups
    }
}

impl Eq for HomologyGroups {}

impl HomologyGroups {
    pub fn get(&self, i: isize) -> HomologyGroup {
        self.groups.get(&i).cloned().unwrap_or_default()
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = (isize, &HomologyGroup)> {
        self.groups.iter().map(|(&i, g)| (i, g))
    }

    /// The groups moved up by `by` degrees.
    pub fn shifted(&self, by: isize) -> HomologyGroups {
        HomologyGroups { dim: self.dim + by, groups: self.groups.iter().map(|(&i, g)| (i + by, g.clone())).collect() }
    }

    /// Homology of a sphere of dimension `m`.
    pub fn sphere(m: isize) -> HomologyGroups {
        HomologyGroups { dim: m, groups: BTreeMap::from([(m, HomologyGroup::free(1))]) }
    }

    /// `Σ (-1)^i rank H~_i`, which equals the reduced Euler characteristic.
    pub fn euler_characteristic(&self) -> BigInt {
        self.groups.iter().map(|(&i, g)| if i.rem_euclid(2) == 0 { BigInt::from(g.rank) } else { -BigInt::from(g.rank) }).sum()
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let start = if self.groups.contains_key(&-1) { -1 } else { 0 };
        for i in start..=self.dim {
            writeln!(f, "H~_{i} = {}", self.get(i))?;
        }
        Ok(())
    }
}

/// Reduced integer homology via Smith normal forms of the boundary maps,
/// including the augmentation to the empty face.
pub fn reduced_homology(k: &SimplicialComplex) -> HomologyGroups {
    let layers = k.faces_by_size();
    let maps: Vec<BoundaryMatrix> = (1..layers.len()).map(|s| BoundaryMatrix::from_layers(&layers[s - 1], &layers[s])).collect();
    let factors: Vec<Vec<BigInt>> = maps.par_iter().map(invariant_factors).collect();
    let mut groups = BTreeMap::new();
    for s in 0..layers.len() {
        let i = s as isize - 1;
        let out_rank = if s == 0 { 0 } else { factors[s - 1].len() };
        let (in_rank, torsion) = match factors.get(s) {
            Some(f) => (f.len(), f.iter().filter(|x| !x.is_one()).map(|x| x.magnitude().clone()).collect()),
            None => (0, Vec::new()),
        };
        let g = HomologyGroup { rank: layers[s].len() - out_rank - in_rank, torsion };
        if !g.is_trivial() {
            groups.insert(i, g);
        }
    }
    HomologyGroups { dim: k.dimension(), groups }
}

/// Ranks of reduced homology over the rationals, indexed from degree `-1`.
pub fn rational_betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let layers = k.faces_by_size();
    let ranks: Vec<usize> = (1..layers.len())
        .map(|s| invariant_factors(&BoundaryMatrix::from_layers(&layers[s - 1], &layers[s])).len())
        .collect();
    (0..layers.len())
        .map(|s| layers[s].len() - if s == 0 { 0 } else { ranks[s - 1] } - ranks.get(s).copied().unwrap_or(0))
        .collect()
}

pub fn is_z_acyclic(k: &SimplicialComplex) -> bool {
    reduced_homology(k).is_trivial()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pseudomanifold {
    /// Every ridge lies in exactly two facets.
    Closed,
    /// Every ridge lies in one or two facets, and some in one.
    WithBoundary,
    Neither,
}

/// Ridge-to-facet incidence counts of a pure complex.
fn ridge_counts(k: &SimplicialComplex) -> HashMap<VertexSet, Vec<usize>> {
    let mut ridges: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (fi, f) in k.facet_sets().iter().enumerate() {
        for v in f.iter() {
            ridges.entry(f.without(v)).or_default().push(fi);
        }
    }
    ridges
}

pub fn is_pseudomanifold(k: &SimplicialComplex) -> Result<Pseudomanifold> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let ridges = ridge_counts(k);
    if ridges.values().any(|fs| fs.len() > 2) {
        return Ok(Pseudomanifold::Neither);
    }
    if ridges.values().all(|fs| fs.len() == 2) {
        Ok(Pseudomanifold::Closed)
    } else {
        Ok(Pseudomanifold::WithBoundary)
    }
}

/// Largest `k` such that every set of at most `k` vertices is a face.
///
/// A vertex set is a non-face exactly when it meets the complement of every
/// facet, so this is one less than the smallest such transversal, found by
/// branch and bound.
pub fn neighborliness(k: &SimplicialComplex) -> usize {
    let n = k.num_vertices();
    let all = VertexSet::full(n);
    let mut complements: Vec<VertexSet> = k.facet_sets().iter().map(|f| all.difference(f)).collect();
    if complements.is_empty() {
        return 0;
    }
    complements.sort_by_key(VertexSet::len);
    if complements[0].is_empty() {
        return n;
    }
    fn search(complements: &[VertexSet], chosen: &VertexSet, size: usize, best: &mut usize) {
        if size + 1 >= *best {
            // `chosen` cannot be completed into a strictly smaller transversal
            if complements.iter().all(|c| !c.is_disjoint(chosen)) {
                *best = size;
            }
            return;
        }
        match complements.iter().find(|c| c.is_disjoint(chosen)) {
            None => *best = size,
            Some(c) => {
                for x in c.iter() {
                    search(complements, &chosen.with(x), size + 1, best);
                }
            }
        }
    }
    let mut best = n + 1;
    search(&complements, &VertexSet::new(), 0, &mut best);
    best - 1
}

/// Predicted neighborliness of `∂Δ_d ≀ ∂C_e(n)` for a neighborly sphere that
/// is not a simplex boundary: `e - 1` odd, `e + 2 <= n <= e + 3`, and `d = 1`
/// when `n = e + 3`.
pub fn neighborly_wreath_parameter_check(e: usize, n: usize, d: usize) -> bool {
    (e - 1) % 2 == 1 && (n == e + 2 || (n == e + 3 && d == 1))
}

/// Checks vanishing of `H~_i(link G; Q)` below the top dimension of each link,
/// over all faces `G` including the empty face.
pub fn is_cohen_macaulay_q(k: &SimplicialComplex) -> PropertyVerdict {
    let faces = k.faces_by_size();
    let total: usize = faces.iter().map(Vec::len).sum();
    if total > CM_FACE_LIMIT {
        return PropertyVerdict::unknown(0);
    }
    let all: Vec<&VertexSet> = faces.iter().flatten().collect();
    let failure = all.par_iter().find_map_first(|g| {
        let link = k.link_of_face(g);
        let betti = rational_betti_numbers(&link);
        let top = link.dimension();
        (-1..top).find(|&i| betti.get((i + 1) as usize).is_some_and(|&b| b > 0)).map(|i| (*g, i))
    });
    let explored = total as u64;
    match failure {
        Some((g, i)) => PropertyVerdict::fails(Certificate::Face { face: k.to_simplex(g), dimension: i }, explored),
        None => PropertyVerdict::holds(Certificate::None, explored),
    }
}

/// Facets joined by an edge when they share a ridge.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub facets: Vec<VertexSet>,
    pub adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn num_nodes(&self) -> usize {
        self.facets.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        self.num_nodes() == 0 || self.bfs(0).0.iter().all(|&d| d != usize::MAX)
    }

    /// Distances from `src`, `usize::MAX` where unreachable, plus BFS parents.
    fn bfs(&self, src: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.num_nodes();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }
}

pub fn dual_graph(k: &SimplicialComplex) -> Result<DualGraph> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let mut adjacency = vec![Vec::new(); k.num_facets()];
    for fs in ridge_counts(k).values() {
        for (a, &x) in fs.iter().enumerate() {
            for &y in &fs[a + 1..] {
                adjacency[x].push(y);
                adjacency[y].push(x);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
        adj.dedup();
    }
    Ok(DualGraph { facets: k.facet_sets().to_vec(), adjacency })
}

pub fn dual_diameter(k: &SimplicialComplex) -> Result<usize> {
    let g = dual_graph(k)?;
    let eccentricities: Vec<usize> = (0..g.num_nodes()).into_par_iter().map(|s| *g.bfs(s).0.iter().max().unwrap()).collect();
    let diam = eccentricities.into_iter().max().unwrap_or(0);
    if diam == usize::MAX {
        return Err(Error::DisconnectedDualGraph);
    }
    Ok(diam)
}

/// `(f_0 - e) - diameter` with `e` the number of vertices per facet; negative
/// values violate the Hirsch bound.
pub fn hirsch_gap(k: &SimplicialComplex) -> Result<isize> {
    let diam = dual_diameter(k)? as isize;
    Ok(k.num_vertices() as isize - (k.dimension() + 1) - diam)
}

fn facet_index(k: &SimplicialComplex, f: &Simplex) -> Result<usize> {
    k.to_set(f)
        .and_then(|s| k.facet_sets().binary_search(&s).ok())
        .ok_or_else(|| Error::NotAFacet(f.to_string()))
}

/// Distance between two facets in the dual graph with a shortest path.
pub fn facet_distance(k: &SimplicialComplex, f1: &Simplex, f2: &Simplex) -> Result<(usize, Vec<Simplex>)> {
    let g = dual_graph(k)?;
    let (a, b) = (facet_index(k, f1)?, facet_index(k, f2)?);
    let (dist, parent) = g.bfs(a);
    if dist[b] == usize::MAX {
        return Err(Error::DisconnectedDualGraph);
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Ok((dist[b], path.into_iter().map(|i| k.to_simplex(&g.facets[i])).collect()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum RevisitReport {
    /// A facet path on which no vertex re-enters after leaving, of minimum
    /// length among such paths.
    NonRevisiting(Vec<Simplex>),
    /// Every facet path between the two facets revisits some vertex.
    AllRevisit { explored: u64 },
    Unknown { explored: u64 },
}

/// Searches for a dual-graph path from `f1` to `f2` that never re-enters a
/// vertex it has left. Such a path has at most `f_0` steps (each step retires
/// a vertex for good), so the search is exhaustive unless the budget runs out.
pub fn revisiting_path_report(k: &SimplicialComplex, f1: &Simplex, f2: &Simplex, budget: u64) -> Result<RevisitReport> {
    let g = dual_graph(k)?;
    let (a, b) = (facet_index(k, f1)?, facet_index(k, f2)?);
    let (dist, _) = g.bfs(a);
    if dist[b] == usize::MAX {
        return Err(Error::DisconnectedDualGraph);
    }
    let mut budget = Budget::new(budget);
    for limit in dist[b]..=k.num_vertices() {
        let mut path = vec![a];
        match non_revisiting(&g, b, limit, &mut path, &VertexSet::new(), &mut budget) {
            Ok(true) => {
                return Ok(RevisitReport::NonRevisiting(path.iter().map(|&i| k.to_simplex(&g.facets[i])).collect()))
            }
            Ok(false) => {}
            Err(_) => return Ok(RevisitReport::Unknown { explored: budget.used() }),
        }
    }
    Ok(RevisitReport::AllRevisit { explored: budget.used() })
}

fn non_revisiting(
    g: &DualGraph,
    target: usize,
    steps_left: usize,
    path: &mut Vec<usize>,
    left: &VertexSet,
    budget: &mut Budget,
) -> std::result::Result<bool, crate::verdict::Exhausted> {
    budget.tick()?;
    let cur = *path.last().unwrap();
    if cur == target {
        return Ok(true);
    }
    if steps_left == 0 {
        return Ok(false);
    }
    for &next in &g.adjacency[cur] {
        let entering = g.facets[next].difference(&g.facets[cur]);
        if !entering.is_disjoint(left) {
            continue;
        }
        let leaving = g.facets[cur].difference(&g.facets[next]);
        path.push(next);
        if non_revisiting(g, target, steps_left - 1, path, &left.union(&leaving), budget)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::constructions::{one_point_suspension, wreath_product};
    use crate::generators::*;

    fn cx(f: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facet_strs(f).unwrap()
    }

    #[test]
    fn boundary_squares_to_zero() {
        for k in [simplex_boundary(3), cycle(5).unwrap(), cross_polytope_boundary(3).unwrap(), simplex(4)] {
            for i in 0..k.dimension() as usize {
                let prod = boundary_matrix(&k, i).compose(&boundary_matrix(&k, i + 1));
                assert!(prod.iter().flatten().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn homology_of_basic_complexes() {
        let c5 = reduced_homology(&cycle(5).unwrap());
        assert_eq!(c5, HomologyGroups::sphere(1));
        assert_eq!(c5.to_string(), "H~_0 = 0\nH~_1 = Z\n");
        assert_eq!(reduced_homology(&simplex_boundary(3)), HomologyGroups::sphere(2));
        assert!(reduced_homology(&simplex(3)).is_trivial());
        assert!(is_z_acyclic(&path(4).unwrap()));
        assert!(!is_z_acyclic(&cycle(5).unwrap()));
        assert_eq!(reduced_homology(&SimplicialComplex::empty_face()), HomologyGroups::sphere(-1));
        let s = one_point_suspension(&cycle(5).unwrap(), &"1".parse().unwrap()).unwrap();
        assert_eq!(reduced_homology(&s), HomologyGroups::sphere(2));
        let two = reduced_homology(&cx(&["1 2", "3 4"]));
        assert_eq!(two.get(0), HomologyGroup::free(1));
    }

    /// The six-vertex real projective plane has H~_1 = Z/2.
    #[test]
    fn torsion_in_projective_plane() {
        let rp2 = cx(&[
            "1 2 3", "1 3 4", "1 4 5", "1 5 6", "1 2 6", "2 3 5", "3 4 6", "2 4 5", "3 5 6", "2 4 6",
        ]);
        let h = reduced_homology(&rp2);
        assert_eq!(h.get(1), HomologyGroup { rank: 0, torsion: vec![2u32.into()] });
        assert!(h.get(2).is_trivial());
        assert_eq!(h.to_string(), "H~_0 = 0\nH~_1 = Z/2\nH~_2 = 0\n");
    }

    #[test]
    fn smith_chain_orders_divisors() {
        let d = smith_chain(vec![6.into(), 4.into(), 1.into()]);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn big_integer_fallback_agrees() {
        let m = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
        let d = smith_chain(snf_diagonal(m, 2).unwrap());
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(4)]);
        let small = smith_chain(
            snf_diagonal(vec![vec![2i128, 4], vec![6, 8]], 2).unwrap().into_iter().map(BigInt::from).collect(),
        );
        assert_eq!(small, d);
    }

    #[test]
    fn euler_matches_betti() {
        for k in [cycle(5).unwrap(), cx(&["1 2", "3 4"]), simplex_boundary(3), cx(&["1 2 3", "3 4", "4 5", "5 3"])] {
            assert_eq!(reduced_homology(&k).euler_characteristic(), k.reduced_euler_characteristic());
        }
    }

    #[test]
    fn pseudomanifolds() {
        assert_eq!(is_pseudomanifold(&cycle(5).unwrap()).unwrap(), Pseudomanifold::Closed);
        assert_eq!(is_pseudomanifold(&path(4).unwrap()).unwrap(), Pseudomanifold::WithBoundary);
        assert_eq!(is_pseudomanifold(&cx(&["1 2", "1 3", "1 4"])).unwrap(), Pseudomanifold::Neither);
        assert!(is_pseudomanifold(&cx(&["1 2", "3"])).is_err());
    }

    #[test]
    fn neighborliness_values() {
        assert_eq!(neighborliness(&cycle(5).unwrap()), 1);
        assert_eq!(neighborliness(&simplex_boundary(4)), 4);
        assert_eq!(neighborliness(&simplex(3)), 4);
        assert_eq!(neighborliness(&wreath_product(1, &cycle(5).unwrap())), 3);
        assert_eq!(neighborliness(&cyclic_polytope_boundary(4, 7).unwrap()), 2);
    }

    fn binomial(n: usize, r: usize) -> BigUint {
        if r > n {
            return BigUint::zero();
        }
        (0..r).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn neighborliness_agrees_with_f_vector() {
        let mut ks = vec![cx(&["1 2", "3 4"]), cx(&["1 2 3", "3 4 5"]), path(5).unwrap(), simplex(0)];
        for (e, n) in [(2, 6), (3, 6), (4, 7), (4, 8), (5, 8), (6, 9)] {
            ks.push(cyclic_polytope_boundary(e, n).unwrap());
        }
        ks.push(wreath_product(1, &cycle(4).unwrap()));
        ks.push(wreath_product(2, &cyclic_polytope_boundary(3, 5).unwrap()));
        for k in ks {
            let n = k.num_vertices();
            let f = k.f_vector();
            let oracle = f.counts().iter().enumerate().take_while(|(i, c)| **c == binomial(n, i + 1)).count();
            assert_eq!(neighborliness(&k), oracle, "{k:?}");
        }
    }

    #[test]
    fn parameter_check_cells() {
        assert!(neighborly_wreath_parameter_check(4, 6, 1));
        assert!(neighborly_wreath_parameter_check(4, 6, 2));
        assert!(!neighborly_wreath_parameter_check(3, 5, 1));
        assert!(!neighborly_wreath_parameter_check(4, 7, 2));
        assert!(!neighborly_wreath_parameter_check(2, 6, 1));
    }

    #[test]
    fn cohen_macaulay() {
        assert!(is_cohen_macaulay_q(&simplex_boundary(3)).is_holds());
        let v = is_cohen_macaulay_q(&cx(&["1 2", "3 4"]));
        assert!(v.is_fails());
        assert_eq!(v.certificate, Certificate::Face { face: Simplex::empty(), dimension: 0 });
        // a bowtie is connected but the link of the shared vertex is not
        let bowtie = is_cohen_macaulay_q(&cx(&["1 2 3", "3 4 5"]));
        assert_eq!(bowtie.certificate, Certificate::Face { face: Simplex::parse("3").unwrap(), dimension: 0 });
        assert!(is_cohen_macaulay_q(&path(4).unwrap()).is_holds());
    }

    #[test]
    fn dual_graph_diagnostics() {
        assert_eq!(dual_diameter(&simplex_boundary(3)).unwrap(), 1);
        let c5 = cycle(5).unwrap();
        assert_eq!(dual_diameter(&c5).unwrap(), 2);
        assert_eq!(hirsch_gap(&c5).unwrap(), 1);
        assert!(hirsch_gap(&wreath_product(1, &c5)).unwrap() >= 0);
        assert_eq!(dual_graph(&c5).unwrap().num_edges(), 5);
        assert_eq!(dual_diameter(&cx(&["1 2", "3 4"])), Err(Error::DisconnectedDualGraph));
    }

    #[test]
    fn facet_paths() {
        let s = |t: &str| Simplex::parse(t).unwrap();
        let t = simplex_boundary(3);
        let (d, p) = facet_distance(&t, &s("1 2 3"), &s("2 3 4")).unwrap();
        assert_eq!((d, p.len()), (1, 2));
        let c5 = cycle(5).unwrap();
        assert_eq!(facet_distance(&c5, &s("1 2"), &s("3 4")).unwrap().0, 2);
        match revisiting_path_report(&c5, &s("1 2"), &s("3 4"), 1000).unwrap() {
            RevisitReport::NonRevisiting(p) => assert_eq!(p, vec![s("1 2"), s("2 3"), s("3 4")]),
            other => panic!("{other:?}"),
        }
        let oct = cross_polytope_boundary(3).unwrap();
        match revisiting_path_report(&oct, &s("1 3 5"), &s("2 4 6"), 10_000).unwrap() {
            RevisitReport::NonRevisiting(p) => assert_eq!(p.len(), 4),
            other => panic!("{other:?}"),
        }
        assert!(facet_distance(&c5, &s("1 3"), &s("3 4")).is_err());
    }
}
