//! Abstract simplicial complexes stored by their facets.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::vset::{maximal_sets, VertexSet};

/// Token standing for the empty face in facet files and certificates.
pub const EMPTY_FACE_TOKEN: &str = "EMPTYFACET";

/// A face, given by its strictly sorted vertex labels. The empty simplex is
/// the empty face.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexLabel>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexLabel>) -> Result<Self> {
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0].to_string()));
        }
        Ok(Simplex(vertices))
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    /// Parses whitespace-separated labels; the empty string and
    /// [`EMPTY_FACE_TOKEN`] both give the empty face.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == EMPTY_FACE_TOKEN {
            return Ok(Simplex::empty());
        }
        let labels = text.split_whitespace().map(VertexLabel::new).collect::<Result<Vec<_>>>()?;
        Simplex::new(labels)
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(EMPTY_FACE_TOKEN);
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Face counts `f_0, ..., f_dim`. The implicit `f_{-1} = 1` is not stored, so
/// the complex `{∅}` has an empty count sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    counts: Vec<BigUint>,
}

impl FVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        FVector { counts }
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        FVector { counts: counts.iter().map(|&c| BigUint::from(c)).collect() }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Number of faces of dimension `i`, with `f_{-1} = 1`.
    pub fn get(&self, i: isize) -> BigUint {
        match i {
            -1 => BigUint::one(),
            i if i < -1 => BigUint::zero(),
            i => self.counts.get(i as usize).cloned().unwrap_or_default(),
        }
    }

    pub fn dim(&self) -> isize {
        self.counts.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> BigInt {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = BigInt::from(c.clone());
                if i % 2 == 0 { c } else { -c }
            })
            .sum()
    }

    pub fn reduced_euler_characteristic(&self) -> BigInt {
        self.euler_characteristic() - 1
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite abstract simplicial complex, stored as its list of facets.
///
/// Vertices are kept in label order and facets are bitsets over vertex
/// positions, sorted canonically. The empty complex (no faces at all) and the
/// complex `{∅}` (only the empty face) are distinct values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    labels: Vec<VertexLabel>,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Builds a complex from its facets, rejecting any facet contained in
    /// another. Repeated facets are merged.
    pub fn new(facets: Vec<Simplex>) -> Result<Self> {
        let mut facets = facets;
        facets.sort();
        facets.dedup();
        for (i, f) in facets.iter().enumerate() {
            if facets.iter().enumerate().any(|(j, g)| i != j && f.is_subset(g)) {
                return Err(Error::NonMaximalFacet(f.to_string()));
            }
        }
        Ok(Self::from_simplices_pruned(facets))
    }

    /// Builds the complex generated by arbitrary faces (non-maximal ones are
    /// dropped).
    pub fn from_simplices_pruned(faces: Vec<Simplex>) -> Self {
        let mut labels: Vec<VertexLabel> = faces.iter().flat_map(|f| f.vertices().iter().cloned()).collect();
        labels.sort();
        labels.dedup();
        let sets = faces
            .iter()
            .map(|f| f.vertices().iter().map(|v| labels.binary_search(v).unwrap()).collect())
            .collect();
        SimplicialComplex { facets: maximal_sets(sets), labels }
    }

    /// Convenience constructor from strings such as `["1 2", "2 3"]`. An empty
    /// string (or `EMPTYFACET`) is the empty facet.
    pub fn from_facet_strs(facets: &[&str]) -> Result<Self> {
        Self::new(facets.iter().map(|s| Simplex::parse(s)).collect::<Result<_>>()?)
    }

    /// The complex with no faces at all.
    pub fn empty() -> Self {
        SimplicialComplex { labels: Vec::new(), facets: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty_face() -> Self {
        SimplicialComplex { labels: Vec::new(), facets: vec![VertexSet::new()] }
    }

    /// Builds a complex from index sets over `labels` (which need not be
    /// sorted, but must be distinct). Unused labels are dropped and the sets
    /// are pruned to maximal ones.
    pub fn from_index_sets(labels: &[VertexLabel], sets: Vec<VertexSet>) -> Self {
        let used = sets.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
        let mut order: Vec<usize> = used.iter().collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut remap = vec![usize::MAX; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let new_labels = order.iter().map(|&i| labels[i].clone()).collect();
        let sets = sets.iter().map(|s| s.map(|i| remap[i])).collect();
        SimplicialComplex { labels: new_labels, facets: maximal_sets(sets) }
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &VertexLabel {
        &self.labels[i]
    }

    pub fn index_of(&self, v: &VertexLabel) -> Option<usize> {
        self.labels.binary_search(v).ok()
    }

    pub fn require_vertex(&self, v: &VertexLabel) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn facet_sets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> Vec<Simplex> {
        self.facets.iter().map(|f| self.to_simplex(f)).collect()
    }

    pub fn to_simplex(&self, set: &VertexSet) -> Simplex {
        Simplex(set.iter().map(|i| self.labels[i].clone()).collect())
    }

    /// Index set of a simplex, or `None` if some vertex is not in the complex.
    pub fn to_set(&self, simplex: &Simplex) -> Option<VertexSet> {
        simplex.vertices().iter().map(|v| self.index_of(v)).collect()
    }

    /// True if the complex has no faces at all.
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// True for the complex `{∅}`.
    pub fn is_empty_face_only(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// True when the complex consists of a single facet (including `{∅}`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn contains_set(&self, face: &VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(f))
    }

    pub fn contains_face(&self, face: &Simplex) -> bool {
        self.to_set(face).is_some_and(|s| self.contains_set(&s))
    }

    pub fn is_facet(&self, face: &Simplex) -> bool {
        self.to_set(face).is_some_and(|s| self.facets.binary_search(&s).is_ok())
    }

    /// Dimension of the largest facet; `-1` for `{∅}` and the empty complex.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(count_faces(&self.facets))
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.f_vector().euler_characteristic()
    }

    pub fn reduced_euler_characteristic(&self) -> BigInt {
        self.f_vector().reduced_euler_characteristic()
    }

    /// All faces (including ∅), grouped by cardinality.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        faces_by_size(&self.facets)
    }

    pub fn link(&self, v: &VertexLabel) -> Result<Self> {
        let i = self.require_vertex(v)?;
        Ok(Self::from_index_sets(&self.labels, link_sets(&self.facets, i)))
    }

    /// Link of an arbitrary face.
    pub fn link_of_face(&self, face: &VertexSet) -> Self {
        let sets = self.facets.iter().filter(|f| face.is_subset(f)).map(|f| f.difference(face)).collect();
        Self::from_index_sets(&self.labels, sets)
    }

    pub fn star(&self, v: &VertexLabel) -> Result<Self> {
        let i = self.require_vertex(v)?;
        let sets = self.facets.iter().filter(|f| f.contains(i)).cloned().collect();
        Ok(Self::from_index_sets(&self.labels, sets))
    }

    pub fn deletion(&self, v: &VertexLabel) -> Result<Self> {
        let i = self.require_vertex(v)?;
        Ok(Self::from_index_sets(&self.labels, deletion_sets(&self.facets, i)))
    }

    /// Join product. If the vertex sets meet, every left label gets the prefix
    /// `L.` and every right label `R.`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let clash = self.labels.iter().any(|v| other.index_of(v).is_some());
        let rename = |l: &VertexLabel, p: &str| if clash { VertexLabel::new(format!("{p}{l}")).unwrap() } else { l.clone() };
        let mut labels: Vec<VertexLabel> = self.labels.iter().map(|l| rename(l, "L.")).collect();
        let offset = labels.len();
        labels.extend(other.labels.iter().map(|l| rename(l, "R.")));
        let mut sets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                sets.push(f.union(&g.map(|i| i + offset)));
            }
        }
        Self::from_index_sets(&labels, sets)
    }

    /// Cone with a new apex vertex.
    pub fn cone(&self, apex: VertexLabel) -> Result<SimplicialComplex> {
        if self.index_of(&apex).is_some() {
            return Err(Error::InvalidParameter(format!("apex {apex} already a vertex")));
        }
        let point = SimplicialComplex::new(vec![Simplex::new(vec![apex])?])?;
        Ok(point.join(self))
    }

    /// Renames vertices with an injective map.
    pub fn relabel(&self, f: impl Fn(&VertexLabel) -> VertexLabel) -> Result<SimplicialComplex> {
        let labels: Vec<VertexLabel> = self.labels.iter().map(f).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("relabeling is not injective at {}", w[0])));
        }
        Ok(Self::from_index_sets(&labels, self.facets.clone()))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.facets()).finish()
    }
}

/// Facets of the link of vertex `v`, as index sets over the same vertices.
pub fn link_sets(facets: &[VertexSet], v: usize) -> Vec<VertexSet> {
    let sets = facets.iter().filter(|f| f.contains(v)).map(|f| f.without(v)).collect();
    maximal_sets(sets)
}

/// Facets of the deletion of vertex `v`.
pub fn deletion_sets(facets: &[VertexSet], v: usize) -> Vec<VertexSet> {
    let sets = facets.iter().map(|f| f.without(v)).collect();
    maximal_sets(sets)
}

/// Union of the facets.
pub fn support(facets: &[VertexSet]) -> VertexSet {
    facets.iter().fold(VertexSet::new(), |acc, f| acc.union(f))
}

/// Per-size face counts (`counts[k]` = faces with `k + 1` vertices).
///
/// Each face is attributed to the first facet containing it, so nothing has to
/// be stored: a subset of facet `i` is new exactly when it avoids every
/// maximal intersection of facet `i` with an earlier facet.
pub fn count_faces(facets: &[VertexSet]) -> Vec<BigUint> {
    let top = facets.iter().map(VertexSet::len).max();
    let Some(top) = top else { return Vec::new() };
    let per_facet: Vec<Vec<u64>> = (0..facets.len())
        .into_par_iter()
        .map(|i| new_faces_of_facet(facets, i))
        .collect();
    let mut counts = vec![BigUint::zero(); top];
    for c in per_facet {
        for (size, n) in c.into_iter().enumerate().skip(1) {
            counts[size - 1] += n;
        }
    }
    counts
}

/// Counts (by size) the faces whose first containing facet is `facets[i]`.
fn new_faces_of_facet(facets: &[VertexSet], i: usize) -> Vec<u64> {
    let f = &facets[i];
    let members: Vec<usize> = f.iter().collect();
    let k = members.len();
    assert!(k <= 63, "facets with more than 63 vertices are not supported");
    let inters: Vec<u64> = facets[..i].iter().map(|g| g.local_mask(&members)).collect();
    let mut inters = maximal_masks(inters);
    inters.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let binom = binomial_table(k);
    let mut counts = vec![0u64; k + 1];
    // Depth-first over subsets, tracking which intersections still contain the
    // partial subset; once none does, all completions are new faces.
    fn walk(pos: usize, size: usize, alive: &[u64], k: usize, binom: &[Vec<u64>], counts: &mut [u64]) {
        if alive.is_empty() {
            let rest = k - pos;
            for t in 0..=rest {
                counts[size + t] += binom[rest][t];
            }
            return;
        }
        if pos == k {
            return;
        }
        // Skip element `pos`.
        walk(pos + 1, size, alive, k, binom, counts);
        // Take element `pos`.
        let bit = 1u64 << pos;
        let next: Vec<u64> = alive.iter().copied().filter(|m| m & bit != 0).collect();
        walk(pos + 1, size + 1, &next, k, binom, counts);
    }
    walk(0, 0, &inters, k, &binom, &mut counts);
    counts
}

fn maximal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    kept
}

pub(crate) fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

/// Explicit list of all faces (including ∅) grouped by cardinality, each
/// group sorted. Only sensible for small complexes.
pub fn faces_by_size(facets: &[VertexSet]) -> Vec<Vec<VertexSet>> {
    let top = facets.iter().map(VertexSet::len).max();
    let Some(top) = top else { return Vec::new() };
    let mut layers: Vec<std::collections::HashSet<VertexSet>> = vec![Default::default(); top + 1];
    for f in facets {
        let members: Vec<usize> = f.iter().collect();
        let k = members.len();
        assert!(k <= 30, "face listing is limited to facets with at most 30 vertices");
        for mask in 0u64..(1u64 << k) {
            let s: VertexSet = (0..k).filter(|p| mask >> p & 1 == 1).map(|p| members[p]).collect();
            layers[mask.count_ones() as usize].insert(s);
        }
    }
    layers
        .into_iter()
        .map(|l| {
            let mut v: Vec<_> = l.into_iter().collect();
            v.sort();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(f: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facet_strs(f).unwrap()
    }

    fn c5() -> SimplicialComplex {
        cx(&["1 2", "2 3", "3 4", "4 5", "1 5"])
    }

    fn v(s: &str) -> VertexLabel {
        VertexLabel::new(s).unwrap()
    }

    #[test]
    fn link_star_deletion_of_pentagon() {
        let k = c5();
        assert_eq!(k.link(&v("1")).unwrap(), cx(&["2", "5"]));
        assert_eq!(k.star(&v("1")).unwrap(), cx(&["1 2", "1 5"]));
        assert_eq!(k.deletion(&v("1")).unwrap(), cx(&["2 3", "3 4", "4 5"]));
        assert_eq!(k.link(&v("9")), Err(Error::UnknownVertex("9".into())));
    }

    #[test]
    fn link_in_tetrahedron_boundary() {
        let k = cx(&["1 2 3", "1 2 4", "1 3 4", "2 3 4"]);
        assert_eq!(k.link(&v("1")).unwrap(), cx(&["2 3", "3 4", "2 4"]));
        assert_eq!(k.f_vector(), FVector::from_u64s(&[4, 6, 4]));
    }

    #[test]
    fn rejects_non_maximal_facets() {
        assert!(matches!(SimplicialComplex::from_facet_strs(&["1 2", "1"]), Err(Error::NonMaximalFacet(_))));
    }

    #[test]
    fn empty_and_empty_face_are_distinct() {
        let e = SimplicialComplex::empty();
        let z = SimplicialComplex::from_facet_strs(&["EMPTYFACET"]).unwrap();
        assert_ne!(e, z);
        assert!(z.is_empty_face_only());
        assert!(z.f_vector().is_empty());
        assert_eq!(z.dimension(), -1);
        assert_eq!(z.reduced_euler_characteristic(), BigInt::from(-1));
    }

    #[test]
    fn purity_and_euler() {
        let k = c5();
        assert!(k.is_pure());
        assert_eq!(k.dimension(), 1);
        assert_eq!(k.euler_characteristic(), BigInt::zero());
        assert_eq!(k.reduced_euler_characteristic(), BigInt::from(-1));
        assert!(!cx(&["1 2", "3"]).is_pure());
    }

    #[test]
    fn join_of_two_zero_spheres_is_a_square() {
        let s0 = cx(&["a", "b"]);
        let j = s0.join(&s0);
        assert_eq!(j.num_vertices(), 4);
        assert_eq!(j.f_vector(), FVector::from_u64s(&[4, 4]));
        assert!(j.vertices().iter().any(|l| l.as_str() == "L.a"));
        let point = cx(&["x"]);
        let cone = point.join(&c5());
        assert_eq!(cone.num_facets(), 5);
        assert!(cone.facet_sets().iter().all(|f| f.contains(cone.index_of(&v("x")).unwrap())));
    }

    #[test]
    fn star_is_cone_over_link() {
        let k = cx(&["1 2 3", "1 3 4", "2 3 5", "4 5"]);
        for x in k.vertices() {
            let star = k.star(x).unwrap();
            let link = k.link(x).unwrap();
            let mut expected: Vec<Simplex> = link
                .facets()
                .into_iter()
                .map(|f| {
                    let mut vs = f.vertices().to_vec();
                    vs.push(x.clone());
                    Simplex::new(vs).unwrap()
                })
                .collect();
            expected.sort();
            assert_eq!(star.facets(), expected);
            let mut union = star.facets();
            union.extend(k.deletion(x).unwrap().facets());
            assert_eq!(SimplicialComplex::from_simplices_pruned(union), k);
        }
    }

    #[test]
    fn face_listing_agrees_with_counts() {
        let k = cx(&["1 2 3", "1 3 4", "2 3 5", "4 5", "6"]);
        let listed: Vec<u64> = k.faces_by_size().iter().skip(1).map(|l| l.len() as u64).collect();
        assert_eq!(k.f_vector(), FVector::from_u64s(&listed));
    }
}
