//! Vertex-decomposability, shellability, constructibility, cones,
//! non-evasiveness and collapsibility, with certificates, their verifiers and
//! the liftings of certificates through one-point suspensions.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::complex::{deletion_sets, link_sets, support, Simplex, SimplicialComplex, EMPTY_FACE_TOKEN};
use crate::constructions::{one_point_suspension_labeled, reduced_join_traced, suspension_labels};
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::topology::{dual_graph, reduced_homology};
use crate::verdict::{Budget, Certificate, Exhausted, PropertyVerdict};
use crate::vset::{maximal_sets, VertexSet};

type Search<T> = std::result::Result<T, Exhausted>;

fn is_pure_sets(facets: &[VertexSet]) -> bool {
    facets.windows(2).all(|w| w[0].len() == w[1].len())
}

/// Integer homology of a shellable (or constructible, or Cohen-Macaulay)
/// complex vanishes below the top dimension.
fn homology_below_top(k: &SimplicialComplex) -> Option<String> {
    let h = reduced_homology(k);
    let top = k.dimension();
    let found = h.nontrivial().find(|(i, _)| *i < top).map(|(i, g)| format!("H~_{i} = {g} below the top dimension"));
    found
}

fn rename_simplex(s: &Simplex, renames: &[(VertexLabel, VertexLabel)]) -> Simplex {
    let vs = s
        .vertices()
        .iter()
        .map(|l| renames.iter().find(|(from, _)| from == l).map_or_else(|| l.clone(), |(_, to)| to.clone()))
        .collect();
    Simplex::new(vs).expect("renaming is injective")
}

fn simplex_with(s: &Simplex, extra: &[&VertexLabel]) -> Simplex {
    let mut vs = s.vertices().to_vec();
    vs.extend(extra.iter().map(|&l| l.clone()));
    Simplex::new(vs).expect("added vertices are new")
}

fn simplex_without(s: &Simplex, v: &VertexLabel) -> Simplex {
    Simplex::new(s.vertices().iter().filter(|&l| l != v).cloned().collect()).unwrap()
}

/// A binary tree of vertices: shedding vertices for vertex-decomposability or
/// evasion vertices for non-evasiveness. Each node splits into link and
/// deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTree {
    /// A simplex (shedding) or a single point (evasion).
    Leaf,
    Node { vertex: VertexLabel, link: Box<DecisionTree>, deletion: Box<DecisionTree> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeKind {
    Shedding,
    Evasion,
}

impl DecisionTree {
    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize, tag: &str) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            DecisionTree::Leaf => writeln!(f, "{pad}{tag}*"),
            DecisionTree::Node { vertex, link, deletion } => {
                writeln!(f, "{pad}{tag}{vertex}")?;
                link.write(f, depth + 1, "link ")?;
                deletion.write(f, depth + 1, "del ")
            }
        }
    }
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, "")
    }
}

/// Checks a decision tree against the complex without any search.
pub fn verify_decision_tree(k: &SimplicialComplex, tree: &DecisionTree, kind: TreeKind) -> bool {
    match tree {
        DecisionTree::Leaf => match kind {
            TreeKind::Shedding => k.is_simplex(),
            TreeKind::Evasion => k.is_simplex() && k.num_vertices() == 1,
        },
        DecisionTree::Node { vertex, link, deletion } => {
            if kind == TreeKind::Shedding && !k.is_pure() {
                return false;
            }
            match (k.link(vertex), k.deletion(vertex)) {
                (Ok(l), Ok(d)) => verify_decision_tree(&l, link, kind) && verify_decision_tree(&d, deletion, kind),
                _ => false,
            }
        }
    }
}

struct TreeSearch<'a> {
    k: &'a SimplicialComplex,
    kind: TreeKind,
    budget: Budget,
    failed: HashSet<Vec<VertexSet>>,
}

impl TreeSearch<'_> {
    fn run(&mut self, facets: &[VertexSet]) -> Search<Option<DecisionTree>> {
        self.budget.tick()?;
        match self.kind {
            TreeKind::Shedding => {
                if facets.len() == 1 {
                    return Ok(Some(DecisionTree::Leaf));
                }
                if !is_pure_sets(facets) {
                    return Ok(None);
                }
            }
            TreeKind::Evasion => {
                if facets.len() == 1 && facets[0].len() == 1 {
                    return Ok(Some(DecisionTree::Leaf));
                }
                if facets.iter().all(VertexSet::is_empty) {
                    return Ok(None);
                }
                let euler = crate::complex::FVector::new(crate::complex::count_faces(facets));
                if !num_traits::Zero::is_zero(&euler.reduced_euler_characteristic()) {
                    return Ok(None);
                }
            }
        }
        if self.failed.contains(facets) {
            return Ok(None);
        }
        for v in support(facets).iter() {
            let link = link_sets(facets, v);
            let del = deletion_sets(facets, v);
            if self.kind == TreeKind::Shedding && (!is_pure_sets(&link) || !is_pure_sets(&del)) {
                continue;
            }
            let Some(lt) = self.run(&link)? else { continue };
            let Some(dt) = self.run(&del)? else { continue };
            return Ok(Some(DecisionTree::Node { vertex: self.k.label(v).clone(), link: Box::new(lt), deletion: Box::new(dt) }));
        }
        self.failed.insert(facets.to_vec());
        Ok(None)
    }
}

fn tree_verdict(k: &SimplicialComplex, kind: TreeKind, budget: u64) -> PropertyVerdict {
    let mut s = TreeSearch { k, kind, budget: Budget::new(budget), failed: HashSet::new() };
    match s.run(k.facet_sets()) {
        Ok(Some(tree)) => PropertyVerdict::holds(Certificate::Tree(tree), s.budget.used()),
        Ok(None) => PropertyVerdict::fails(
            Certificate::Obstruction("exhaustive search found no decomposition".into()),
            s.budget.used(),
        ),
        Err(Exhausted) => PropertyVerdict::unknown(s.budget.used()),
    }
}

/// Vertex-decomposability: `K` is a simplex (possibly `{∅}`), or some vertex
/// has vertex-decomposable link and deletion, all complexes pure.
pub fn is_vertex_decomposable(k: &SimplicialComplex, budget: u64) -> Result<PropertyVerdict> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    if k.is_empty() {
        return Ok(PropertyVerdict::obstruction("the empty complex"));
    }
    if let Some(why) = homology_below_top(k) {
        return Ok(PropertyVerdict::obstruction(why));
    }
    Ok(tree_verdict(k, TreeKind::Shedding, budget))
}

/// Non-evasiveness: `K` is a single point, or some vertex has non-evasive
/// link and deletion.
pub fn is_non_evasive(k: &SimplicialComplex, budget: u64) -> PropertyVerdict {
    if k.num_vertices() == 0 {
        return PropertyVerdict::obstruction("no vertices");
    }
    let chi = k.reduced_euler_characteristic();
    if !num_traits::Zero::is_zero(&chi) {
        return PropertyVerdict::obstruction(format!("reduced Euler characteristic {chi} is not 0"));
    }
    let h = reduced_homology(k);
    if !h.is_trivial() {
        return PropertyVerdict::obstruction(format!("not Z-acyclic:\n{h}"));
    }
    tree_verdict(k, TreeKind::Evasion, budget)
}

/// A vertex lying in every facet.
pub fn is_cone(k: &SimplicialComplex) -> PropertyVerdict {
    let Some(first) = k.facet_sets().first() else {
        return PropertyVerdict::obstruction("the empty complex");
    };
    let common = k.facet_sets().iter().fold(first.clone(), |acc, f| acc.intersection(f));
    let apex = common.iter().next();
    match apex {
        Some(a) => PropertyVerdict::holds(Certificate::Apex(k.label(a).clone()), 0),
        None => PropertyVerdict::obstruction("no vertex lies in every facet"),
    }
}

/// True if `facets[order[..]]` (placed) meets `candidate` in a pure complex of
/// codimension one in `candidate`.
fn extends_shelling(facets: &[VertexSet], placed: &[usize], candidate: &VertexSet) -> bool {
    let want = candidate.len() - 1;
    let meets: Vec<VertexSet> = placed.iter().map(|&i| facets[i].intersection(candidate)).collect();
    let ridges: Vec<&VertexSet> = meets.iter().filter(|m| m.len() == want).collect();
    meets.iter().all(|m| ridges.iter().any(|r| m.is_subset(r)))
}

fn shell(facets: &[VertexSet], placed: &mut Vec<usize>, used: &mut VertexSet, failed: &mut HashSet<VertexSet>, budget: &mut Budget) -> Search<bool> {
    budget.tick()?;
    if placed.len() == facets.len() {
        return Ok(true);
    }
    if failed.contains(used) {
        return Ok(false);
    }
    for i in 0..facets.len() {
        if used.contains(i) || (!placed.is_empty() && !extends_shelling(facets, placed, &facets[i])) {
            continue;
        }
        placed.push(i);
        used.insert(i);
        if shell(facets, placed, used, failed, budget)? {
            return Ok(true);
        }
        used.remove(i);
        placed.pop();
    }
    failed.insert(used.clone());
    Ok(false)
}

/// Shelling search over facet sets; returns the order as facet indices.
fn find_shelling_sets(facets: &[VertexSet], budget: &mut Budget) -> Search<Option<Vec<usize>>> {
    let mut placed = Vec::new();
    let mut used = VertexSet::new();
    let mut failed = HashSet::new();
    Ok(shell(facets, &mut placed, &mut used, &mut failed, budget)?.then_some(placed))
}

/// Backtracking search for a shelling order. Complexes with homology below
/// the top dimension or a disconnected dual graph are rejected up front.
pub fn find_shelling(k: &SimplicialComplex, budget: u64) -> Result<PropertyVerdict> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    if k.is_empty() {
        return Ok(PropertyVerdict::obstruction("the empty complex"));
    }
    if !dual_graph(k)?.is_connected() {
        return Ok(PropertyVerdict::obstruction("dual graph is disconnected"));
    }
    if let Some(why) = homology_below_top(k) {
        return Ok(PropertyVerdict::obstruction(why));
    }
    let mut b = Budget::new(budget);
    Ok(match find_shelling_sets(k.facet_sets(), &mut b) {
        Ok(Some(order)) => {
            let order = order.iter().map(|&i| k.to_simplex(&k.facet_sets()[i])).collect();
            PropertyVerdict::holds(Certificate::Shelling(order), b.used())
        }
        Ok(None) => PropertyVerdict::fails(Certificate::Obstruction("exhaustive search found no shelling".into()), b.used()),
        Err(Exhausted) => PropertyVerdict::unknown(b.used()),
    })
}

/// Checks that `order` lists every facet once and that each facet meets the
/// union of the earlier ones in a pure complex of dimension one less.
pub fn verify_shelling(k: &SimplicialComplex, order: &[Simplex]) -> bool {
    if order.len() != k.num_facets() || !k.is_pure() {
        return false;
    }
    let mut seen = HashSet::new();
    for (i, f) in order.iter().enumerate() {
        if !k.is_facet(f) || !seen.insert(f) {
            return false;
        }
        if i == 0 {
            continue;
        }
        let fs = k.to_set(f).unwrap();
        let meet = maximal_sets(order[..i].iter().map(|g| k.to_set(g).unwrap().intersection(&fs)).collect());
        if meet.iter().any(|m| m.len() + 1 != fs.len()) {
            return false;
        }
    }
    true
}

/// Lifts a shelling of `K` to `Susp_1(v, K)`: a facet `F` without `v` becomes
/// the consecutive pair `v'F, v''F`, a facet `G` with `v` becomes `v'v''(G∖v)`.
pub fn lift_shelling(k: &SimplicialComplex, order: &[Simplex], v: &VertexLabel) -> Result<Vec<Simplex>> {
    if !verify_shelling(k, order) {
        return Err(Error::InvalidCertificate("not a shelling of the input complex".into()));
    }
    let (susp, names) = one_point_suspension_labeled(k, v)?;
    let mut lifted = Vec::with_capacity(susp.num_facets());
    for f in order {
        if f.contains(v) {
            lifted.push(simplex_with(&simplex_without(f, v), &[&names.upper, &names.lower]));
        } else {
            lifted.push(simplex_with(f, &[&names.upper]));
            lifted.push(simplex_with(f, &[&names.lower]));
        }
    }
    if !verify_shelling(&susp, &lifted) {
        return Err(Error::Internal("lifted order is not a shelling".into()));
    }
    Ok(lifted)
}

/// Maps a shelling of `Susp_1(v, K)` back to `K` by forgetting which copy of
/// `v` a facet uses, keeping the first occurrence of each facet.
pub fn project_shelling(k: &SimplicialComplex, v: &VertexLabel, susp_order: &[Simplex]) -> Result<Vec<Simplex>> {
    let names = suspension_labels(k, v)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in susp_order {
        let has_copy = f.contains(&names.upper) || f.contains(&names.lower);
        if !has_copy {
            return Err(Error::InvalidCertificate(format!("{f} is not a facet of the suspension")));
        }
        let base = simplex_without(&simplex_without(f, &names.upper), &names.lower);
        let g = simplex_with(&base, &[v]);
        let g = if k.is_facet(&g) { g } else { base };
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    if !verify_shelling(k, &out) {
        return Err(Error::InvalidCertificate("projected order is not a shelling".into()));
    }
    Ok(out)
}

/// Replays the suspension steps of a reduced join, lifting a certificate
/// through each step and renaming the final copies.
fn lift_through_reduced_join<C>(
    d: usize,
    k: &SimplicialComplex,
    v: &VertexLabel,
    cert: C,
    lift: impl Fn(&SimplicialComplex, &C, &VertexLabel) -> Result<C>,
    rename: impl Fn(&C, &[(VertexLabel, VertexLabel)]) -> C,
) -> Result<(SimplicialComplex, C)> {
    let trace = reduced_join_traced(d, k, v)?;
    let mut current = k.clone();
    let mut cert = cert;
    for step in &trace.steps {
        cert = lift(&current, &cert, &step.vertex)?;
        current = one_point_suspension_labeled(&current, &step.vertex)?.0;
    }
    Ok((trace.result, rename(&cert, &trace.renames)))
}

pub fn lift_shelling_to_reduced_join(d: usize, k: &SimplicialComplex, order: &[Simplex], v: &VertexLabel) -> Result<(SimplicialComplex, Vec<Simplex>)> {
    lift_through_reduced_join(d, k, v, order.to_vec(), |c, o, x| lift_shelling(c, o, x), |o, r| {
        o.iter().map(|s| rename_simplex(s, r)).collect()
    })
}

/// A shelling of `∂Δ_d ≀ K` from one of `K`, by lifting through the reduced
/// joins at every vertex of `K` in label order.
pub fn lift_shelling_to_wreath(d: usize, k: &SimplicialComplex, order: &[Simplex]) -> Result<(SimplicialComplex, Vec<Simplex>)> {
    let mut current = k.clone();
    let mut order = order.to_vec();
    for v in k.vertices() {
        (current, order) = lift_shelling_to_reduced_join(d, &current, &order, v)?;
    }
    if !verify_shelling(&current, &order) {
        return Err(Error::Internal("lifted wreath order is not a shelling".into()));
    }
    Ok((current, order))
}

pub fn shelling_to_text(order: &[Simplex]) -> String {
    order.iter().map(|f| format!("{f}\n")).collect()
}

/// Reads a shelling written one facet per line (`#` comments allowed).
pub fn parse_shelling(text: &str) -> Result<Vec<Simplex>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(n, l)| {
            let t = l.trim();
            if t == EMPTY_FACE_TOKEN {
                Ok(Simplex::empty())
            } else {
                Simplex::parse(t).map_err(|e| Error::Parse { line: n + 1, msg: e.to_string() })
            }
        })
        .collect()
}

/// A decomposition of a pure complex into two pure pieces of the same
/// dimension meeting in a pure complex of one dimension less, recursively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionTree {
    Simplex(Simplex),
    Split { left: Box<ConstructionTree>, right: Box<ConstructionTree>, meet: Box<ConstructionTree> },
}

impl ConstructionTree {
    /// Facets of the complex the tree describes.
    pub fn facets(&self) -> Vec<Simplex> {
        match self {
            ConstructionTree::Simplex(s) => vec![s.clone()],
            ConstructionTree::Split { left, right, .. } => {
                let mut fs = left.facets();
                fs.extend(right.facets());
                SimplicialComplex::from_simplices_pruned(fs).facets()
            }
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize, tag: &str) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self {
            ConstructionTree::Simplex(s) => writeln!(f, "{pad}{tag}{s}"),
            ConstructionTree::Split { left, right, meet } => {
                writeln!(f, "{pad}{tag}split")?;
                left.write(f, depth + 1, "left ")?;
                right.write(f, depth + 1, "right ")?;
                meet.write(f, depth + 1, "meet ")
            }
        }
    }
}

impl fmt::Display for ConstructionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, "")
    }
}

fn simplex_meet(a: &Simplex, b: &Simplex) -> Simplex {
    Simplex::new(a.vertices().iter().filter(|v| b.contains(v)).cloned().collect()).unwrap()
}

fn meet_sets(a: &[VertexSet], b: &[VertexSet]) -> Vec<VertexSet> {
    maximal_sets(a.iter().flat_map(|f| b.iter().map(move |g| f.intersection(g))).collect())
}

/// Checks a construction tree: leaves are simplices, the two halves of every
/// split have the dimension of the whole, and their intersection is the
/// complex described by the meet subtree and has dimension one less.
pub fn verify_construction(k: &SimplicialComplex, tree: &ConstructionTree) -> bool {
    fn complex(t: &ConstructionTree) -> SimplicialComplex {
        SimplicialComplex::from_simplices_pruned(t.facets())
    }
    fn check(k: &SimplicialComplex, t: &ConstructionTree) -> bool {
        if !k.is_pure() {
            return false;
        }
        match t {
            ConstructionTree::Simplex(s) => k.is_simplex() && k.is_facet(s),
            ConstructionTree::Split { left, right, meet } => {
                let (l, r) = (complex(left), complex(right));
                let dim = k.dimension();
                if l.dimension() != dim || r.dimension() != dim || complex(t) != *k {
                    return false;
                }
                let meet_faces: Vec<Simplex> = l
                    .facets()
                    .iter()
                    .flat_map(|f| r.facets().into_iter().map(move |g| simplex_meet(f, &g)))
                    .collect();
                let m = SimplicialComplex::from_simplices_pruned(meet_faces);
                m.dimension() == dim - 1 && complex(meet) == m && check(&l, left) && check(&r, right) && check(&m, meet)
            }
        }
    }
    check(k, tree)
}

/// A construction tree read off a shelling: each new facet is glued along its
/// intersection with the earlier ones, which is generated by facets of the
/// facet's boundary and is therefore shellable in any order.
fn tree_from_shelling(k: &SimplicialComplex, facets: &[VertexSet]) -> ConstructionTree {
    if facets.len() == 1 {
        return ConstructionTree::Simplex(k.to_simplex(&facets[0]));
    }
    let (last, rest) = facets.split_last().unwrap();
    let meet = meet_sets(rest, std::slice::from_ref(last));
    ConstructionTree::Split {
        left: Box::new(tree_from_shelling(k, rest)),
        right: Box::new(ConstructionTree::Simplex(k.to_simplex(last))),
        meet: Box::new(tree_from_shelling(k, &meet)),
    }
}

struct ConstructSearch<'a> {
    k: &'a SimplicialComplex,
    budget: Budget,
    memo: HashMap<Vec<VertexSet>, Option<ConstructionTree>>,
}

impl ConstructSearch<'_> {
    fn run(&mut self, facets: &[VertexSet]) -> Search<Option<ConstructionTree>> {
        self.budget.tick()?;
        if facets.len() == 1 {
            return Ok(Some(ConstructionTree::Simplex(self.k.to_simplex(&facets[0]))));
        }
        if !is_pure_sets(facets) {
            return Ok(None);
        }
        if let Some(hit) = self.memo.get(facets) {
            return Ok(hit.clone());
        }
        if let Some(order) = find_shelling_sets(facets, &mut self.budget)? {
            let sorted: Vec<VertexSet> = order.iter().map(|&i| facets[i].clone()).collect();
            let t = tree_from_shelling(self.k, &sorted);
            self.memo.insert(facets.to_vec(), Some(t.clone()));
            return Ok(Some(t));
        }
        let m = facets.len();
        let dim = facets[0].len();
        let mut found = None;
        // facet 0 always goes left, so each split is seen once
        for mask in 0u64..(1u64 << (m - 1)) - 1 {
            let (mut left, mut right) = (vec![facets[0].clone()], Vec::new());
            for (i, f) in facets.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    left.push(f.clone());
                } else {
                    right.push(f.clone());
                }
            }
            let meet = meet_sets(&left, &right);
            if meet.iter().any(|s| s.len() + 1 != dim) {
                continue;
            }
            let Some(l) = self.run(&left)? else { continue };
            let Some(r) = self.run(&right)? else { continue };
            let Some(mt) = self.run(&meet)? else { continue };
            found = Some(ConstructionTree::Split { left: Box::new(l), right: Box::new(r), meet: Box::new(mt) });
            break;
        }
        self.memo.insert(facets.to_vec(), found.clone());
        Ok(found)
    }
}

/// Constructibility by a shelling attempt followed by a memoized search over
/// splits of the facet set. Only feasible for small complexes.
pub fn is_constructible(k: &SimplicialComplex, budget: u64) -> Result<PropertyVerdict> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    if k.is_empty() {
        return Ok(PropertyVerdict::obstruction("the empty complex"));
    }
    if k.num_facets() > 63 {
        return Ok(PropertyVerdict::unknown(0));
    }
    if let Some(why) = homology_below_top(k) {
        return Ok(PropertyVerdict::obstruction(why));
    }
    let mut s = ConstructSearch { k, budget: Budget::new(budget), memo: HashMap::new() };
    Ok(match s.run(k.facet_sets()) {
        Ok(Some(t)) => PropertyVerdict::holds(Certificate::Construction(t), s.budget.used()),
        Ok(None) => PropertyVerdict::fails(Certificate::Obstruction("exhaustive search found no construction".into()), s.budget.used()),
        Err(Exhausted) => PropertyVerdict::unknown(s.budget.used()),
    })
}

/// A matched pair of faces in the Hasse diagram; `lower` is `upper` minus one
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchedPair {
    pub upper: Simplex,
    pub lower: Simplex,
}

/// A matching on the Hasse diagram including the empty face.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorseMatching {
    pub pairs: Vec<MatchedPair>,
}

impl MorseMatching {
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let face = |t: &str| if t.trim() == EMPTY_FACE_TOKEN { Ok(Simplex::empty()) } else { Simplex::parse(t) };
        let pairs = pairs.iter().map(|(u, l)| Ok(MatchedPair { upper: face(u)?, lower: face(l)? })).collect::<Result<_>>()?;
        Ok(MorseMatching { pairs })
    }

    /// The vertex matched with the empty face.
    pub fn critical_vertex(&self) -> Option<&VertexLabel> {
        self.pairs.iter().find(|p| p.lower.is_empty() && p.upper.len() == 1).map(|p| &p.upper.vertices()[0])
    }

    fn renamed(&self, renames: &[(VertexLabel, VertexLabel)]) -> Self {
        let pairs = self
            .pairs
            .iter()
            .map(|p| MatchedPair { upper: rename_simplex(&p.upper, renames), lower: rename_simplex(&p.lower, renames) })
            .collect();
        MorseMatching { pairs }
    }
}

impl fmt::Display for MorseMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            writeln!(f, "{} -> {}", p.upper, p.lower)?;
        }
        Ok(())
    }
}

impl FromStr for MorseMatching {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: n + 1, msg };
            let (u, l) = t.split_once("->").ok_or_else(|| err("expected `upper -> lower`".into()))?;
            let face = |s: &str| {
                let s = s.trim();
                if s == EMPTY_FACE_TOKEN { Ok(Simplex::empty()) } else { Simplex::parse(s).map_err(|e| err(e.to_string())) }
            };
            pairs.push(MatchedPair { upper: face(u)?, lower: face(l)? });
        }
        Ok(MorseMatching { pairs })
    }
}

/// Checks that the matching pairs every face of `K` (including `∅`) exactly
/// once along Hasse edges, and that reversing the matched edges leaves no
/// directed cycle. Cycles can only alternate between two adjacent layers, so
/// each pair of layers is searched separately.
pub fn verify_morse_matching(k: &SimplicialComplex, m: &MorseMatching) -> bool {
    if k.is_empty() {
        return false;
    }
    let layers = k.faces_by_size();
    let mut partner: HashMap<VertexSet, VertexSet> = HashMap::new();
    for p in &m.pairs {
        let (Some(u), Some(l)) = (k.to_set(&p.upper), k.to_set(&p.lower)) else { return false };
        if !k.contains_set(&u) || u.len() != l.len() + 1 || !l.is_subset(&u) {
            return false;
        }
        if partner.insert(u.clone(), l.clone()).is_some() || partner.insert(l, u).is_some() {
            return false;
        }
    }
    let total: usize = layers.iter().map(Vec::len).sum();
    if partner.len() != total {
        return false;
    }
    (1..layers.len()).all(|s| layer_acyclic(&layers[s], &layers[s - 1], &partner))
}

fn layer_acyclic(upper: &[VertexSet], lower: &[VertexSet], partner: &HashMap<VertexSet, VertexSet>) -> bool {
    let lower_index: HashMap<&VertexSet, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let nu = upper.len();
    // nodes: upper faces 0..nu, lower faces nu..
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nu + lower.len()];
    for (i, u) in upper.iter().enumerate() {
        for v in u.iter() {
            let l = u.without(v);
            let j = nu + lower_index[&l];
            if partner.get(u) == Some(&l) {
                out[j].push(i);
            } else {
                out[i].push(j);
            }
        }
    }
    // iterative three-colour depth-first search
    let mut color = vec![0u8; out.len()];
    for start in 0..out.len() {
        if color[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        color[start] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < out[node].len() {
                let w = out[node][*next];
                *next += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                color[node] = 2;
                stack.pop();
            }
        }
    }
    true
}

struct CollapseSearch {
    budget: Budget,
    failed: HashSet<Vec<VertexSet>>,
}

impl CollapseSearch {
    /// Elementary collapses down to a single vertex. `pairs` collects
    /// `(upper, lower)` in collapse order.
    fn run(&mut self, facets: Vec<VertexSet>, pairs: &mut Vec<(VertexSet, VertexSet)>) -> Search<bool> {
        self.budget.tick()?;
        if facets.len() == 1 && facets[0].len() == 1 {
            return Ok(true);
        }
        if self.failed.contains(&facets) {
            return Ok(false);
        }
        for (i, sigma) in facets.iter().enumerate() {
            if sigma.len() < 2 {
                continue;
            }
            for x in sigma.iter() {
                let tau = sigma.without(x);
                if facets.iter().enumerate().any(|(j, g)| j != i && tau.is_subset(g)) {
                    continue;
                }
                let mut next: Vec<VertexSet> = facets.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
                next.extend(sigma.iter().filter(|&y| y != x).map(|y| sigma.without(y)));
                pairs.push((sigma.clone(), tau));
                if self.run(maximal_sets(next), pairs)? {
                    return Ok(true);
                }
                pairs.pop();
            }
        }
        self.failed.insert(facets);
        Ok(false)
    }
}

/// Searches for a sequence of elementary collapses to a point; the collapse
/// pairs together with the last vertex matched to `∅` form a perfect acyclic
/// matching.
pub fn find_morse_matching(k: &SimplicialComplex, budget: u64) -> PropertyVerdict {
    if k.num_vertices() == 0 {
        return PropertyVerdict::obstruction("no vertices");
    }
    let chi = k.reduced_euler_characteristic();
    if !num_traits::Zero::is_zero(&chi) {
        return PropertyVerdict::obstruction(format!("reduced Euler characteristic {chi} is not 0"));
    }
    let h = reduced_homology(k);
    if !h.is_trivial() {
        return PropertyVerdict::obstruction(format!("not Z-acyclic:\n{h}"));
    }
    let mut s = CollapseSearch { budget: Budget::new(budget), failed: HashSet::new() };
    let mut pairs = Vec::new();
    match s.run(k.facet_sets().to_vec(), &mut pairs) {
        Ok(true) => {
            let mut m = MorseMatching {
                pairs: pairs.iter().map(|(u, l)| MatchedPair { upper: k.to_simplex(u), lower: k.to_simplex(l) }).collect(),
            };
            let covered: HashSet<&VertexSet> = pairs.iter().flat_map(|(u, l)| [u, l]).collect();
            let last = (0..k.num_vertices()).map(VertexSet::singleton).find(|v| !covered.contains(v)).expect("one vertex remains");
            m.pairs.push(MatchedPair { upper: k.to_simplex(&last), lower: Simplex::empty() });
            PropertyVerdict::holds(Certificate::Matching(m), s.budget.used())
        }
        Ok(false) => PropertyVerdict::fails(Certificate::Obstruction("exhaustive search found no collapse".into()), s.budget.used()),
        Err(Exhausted) => PropertyVerdict::unknown(s.budget.used()),
    }
}

/// Lifts a perfect acyclic matching of `K` to `Susp_1(v, K)`:
/// a pair inside the star of `v` moves to the `v'v''` copies; a pair
/// `(τ ∪ v, τ)` becomes `(τ ∪ v', τ)` and `(τ ∪ v'v'', τ ∪ v'')`; any other
/// pair is repeated plain, with `v'` and with `v''`.
pub fn lift_morse_matching(k: &SimplicialComplex, m: &MorseMatching, v: &VertexLabel) -> Result<MorseMatching> {
    if !verify_morse_matching(k, m) {
        return Err(Error::InvalidCertificate("not a perfect acyclic matching of the input complex".into()));
    }
    let (susp, names) = one_point_suspension_labeled(k, v)?;
    let (a, b) = (&names.upper, &names.lower);
    let mut pairs = Vec::new();
    let mut push = |upper: Simplex, lower: Simplex| pairs.push(MatchedPair { upper, lower });
    for p in &m.pairs {
        match (p.upper.contains(v), p.lower.contains(v)) {
            (true, true) => push(
                simplex_with(&simplex_without(&p.upper, v), &[a, b]),
                simplex_with(&simplex_without(&p.lower, v), &[a, b]),
            ),
            (true, false) => {
                push(simplex_with(&p.lower, &[a]), p.lower.clone());
                push(simplex_with(&p.lower, &[a, b]), simplex_with(&p.lower, &[b]));
            }
            (false, false) => {
                push(p.upper.clone(), p.lower.clone());
                push(simplex_with(&p.upper, &[a]), simplex_with(&p.lower, &[a]));
                push(simplex_with(&p.upper, &[b]), simplex_with(&p.lower, &[b]));
            }
            (false, true) => return Err(Error::InvalidCertificate("lower face not contained in upper face".into())),
        }
    }
    let lifted = MorseMatching { pairs };
    if !verify_morse_matching(&susp, &lifted) {
        return Err(Error::Internal("lifted matching is not perfect and acyclic".into()));
    }
    Ok(lifted)
}

pub fn lift_morse_matching_to_reduced_join(d: usize, k: &SimplicialComplex, m: &MorseMatching, v: &VertexLabel) -> Result<(SimplicialComplex, MorseMatching)> {
    lift_through_reduced_join(d, k, v, m.clone(), lift_morse_matching, |mm, r| mm.renamed(r))
}

/// A perfect acyclic matching of `∂Δ_d ≀ K` lifted from one of `K` through
/// the reduced joins at every vertex in label order.
pub fn lift_morse_matching_to_wreath(d: usize, k: &SimplicialComplex, m: &MorseMatching) -> Result<(SimplicialComplex, MorseMatching)> {
    let mut current = k.clone();
    let mut m = m.clone();
    for v in k.vertices() {
        (current, m) = lift_morse_matching_to_reduced_join(d, &current, &m, v)?;
    }
    if !verify_morse_matching(&current, &m) {
        return Err(Error::Internal("lifted wreath matching is not perfect and acyclic".into()));
    }
    Ok((current, m))
}

/// Text form of a certificate, for writing to a file.
pub fn certificate_to_text(c: &Certificate) -> String {
    match c {
        Certificate::None => String::new(),
        Certificate::Shelling(order) => shelling_to_text(order),
        Certificate::Tree(t) => t.to_string(),
        Certificate::Construction(t) => t.to_string(),
        Certificate::Matching(m) => m.to_string(),
        Certificate::Apex(a) => format!("{a}\n"),
        Certificate::Obstruction(why) => format!("# {}\n", why.replace('\n', "\n# ")),
        Certificate::Face { face, dimension } => format!("{face}\n# homology in degree {dimension}\n"),
        Certificate::Facet { index, reason } => format!("# facet {index}: {reason}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{one_point_suspension, wreath_product};
    use crate::generators::*;
    use crate::verdict::{Status, DEFAULT_BUDGET};

    fn cx(f: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facet_strs(f).unwrap()
    }

    fn s(t: &str) -> Simplex {
        Simplex::parse(t).unwrap()
    }

    fn lbl(t: &str) -> VertexLabel {
        t.parse().unwrap()
    }

    fn rp2() -> SimplicialComplex {
        cx(&["1 2 3", "1 3 4", "1 4 5", "1 5 6", "1 2 6", "2 3 5", "3 4 6", "2 4 5", "3 5 6", "2 4 6"])
    }

    #[test]
    fn vertex_decomposability() {
        let check = |k: &SimplicialComplex| {
            let v = is_vertex_decomposable(k, DEFAULT_BUDGET).unwrap();
            if let Certificate::Tree(t) = &v.certificate {
                assert!(verify_decision_tree(k, t, TreeKind::Shedding));
            }
            v.status
        };
        assert_eq!(check(&simplex(3)), Status::Holds);
        assert_eq!(check(&SimplicialComplex::empty_face()), Status::Holds);
        assert_eq!(check(&cycle(5).unwrap()), Status::Holds);
        assert_eq!(check(&one_point_suspension(&cycle(5).unwrap(), &lbl("1")).unwrap()), Status::Holds);
        assert_eq!(check(&cx(&["1 2", "3 4"])), Status::Fails);
        assert_eq!(check(&cx(&["1 2 3", "3 4 5"])), Status::Fails);
        assert_eq!(check(&rp2()), Status::Fails);
        assert!(is_vertex_decomposable(&cx(&["1 2", "3"]), 10).is_err());
    }

    #[test]
    fn decision_tree_rejects_wrong_vertex() {
        let bad = DecisionTree::Node { vertex: lbl("1"), link: Box::new(DecisionTree::Leaf), deletion: Box::new(DecisionTree::Leaf) };
        assert!(!verify_decision_tree(&cycle(5).unwrap(), &bad, TreeKind::Shedding));
        assert!(verify_decision_tree(&cx(&["1 2"]), &bad, TreeKind::Evasion));
    }

    #[test]
    fn shellings() {
        let t = simplex_boundary(3);
        let mut order = t.facets();
        assert!(verify_shelling(&t, &order));
        order.reverse();
        assert!(verify_shelling(&t, &order));
        let c5 = cycle(5).unwrap();
        let path_order = vec![s("1 2"), s("2 3"), s("3 4"), s("4 5"), s("1 5")];
        assert!(verify_shelling(&c5, &path_order));
        assert!(!verify_shelling(&c5, &[s("1 2"), s("3 4"), s("2 3"), s("4 5"), s("1 5")]));
        assert!(!verify_shelling(&c5, &path_order[..4]));
        let v = find_shelling(&cx(&["1 2", "3 4"]), 100).unwrap();
        assert!(v.is_fails());
        let v = find_shelling(&cross_polytope_boundary(3).unwrap(), DEFAULT_BUDGET).unwrap();
        let Certificate::Shelling(order) = v.certificate else { panic!() };
        assert!(verify_shelling(&cross_polytope_boundary(3).unwrap(), &order));
    }

    #[test]
    fn shelling_lift_and_projection() {
        let c5 = cycle(5).unwrap();
        let order = vec![s("1 2"), s("2 3"), s("3 4"), s("4 5"), s("1 5")];
        let lifted = lift_shelling(&c5, &order, &lbl("1")).unwrap();
        assert_eq!(lifted.len(), 8);
        let back = project_shelling(&c5, &lbl("1"), &lifted).unwrap();
        assert_eq!(back, order);
        let tri = simplex_boundary(2);
        for v in tri.vertices() {
            let l = lift_shelling(&tri, &tri.facets(), v).unwrap();
            assert!(verify_shelling(&one_point_suspension(&tri, v).unwrap(), &l));
        }
        let (w, wo) = lift_shelling_to_wreath(1, &c5, &order).unwrap();
        assert_eq!(w, wreath_product(1, &c5));
        assert!(verify_shelling(&w, &wo));
        assert!(lift_shelling(&c5, &order[..3], &lbl("1")).is_err());
    }

    #[test]
    fn constructibility() {
        let v = is_constructible(&simplex(2), 100).unwrap();
        assert!(v.is_holds());
        assert!(is_constructible(&cx(&["1 2", "3 4"]), 1000).unwrap().is_fails());
        let oct = cross_polytope_boundary(3).unwrap();
        let v = is_constructible(&oct, DEFAULT_BUDGET).unwrap();
        let Certificate::Construction(t) = v.certificate else { panic!() };
        assert!(verify_construction(&oct, &t));
        // two triangles glued along an edge, built from a split
        let k = cx(&["1 2 3", "2 3 4"]);
        let t = ConstructionTree::Split {
            left: Box::new(ConstructionTree::Simplex(s("1 2 3"))),
            right: Box::new(ConstructionTree::Simplex(s("2 3 4"))),
            meet: Box::new(ConstructionTree::Simplex(s("2 3"))),
        };
        assert!(verify_construction(&k, &t));
        let bad = ConstructionTree::Split {
            left: Box::new(ConstructionTree::Simplex(s("1 2 3"))),
            right: Box::new(ConstructionTree::Simplex(s("2 3 4"))),
            meet: Box::new(ConstructionTree::Simplex(s("2"))),
        };
        assert!(!verify_construction(&k, &bad));
    }

    #[test]
    fn cones() {
        let c5 = cycle(5).unwrap();
        let st = c5.star(&lbl("1")).unwrap();
        assert_eq!(is_cone(&st).certificate, Certificate::Apex(lbl("1")));
        assert!(is_cone(&c5).is_fails());
        let cone = c5.cone(lbl("a")).unwrap();
        assert!(is_cone(&one_point_suspension(&cone, &lbl("a")).unwrap()).is_holds());
    }

    #[test]
    fn non_evasiveness() {
        assert!(is_non_evasive(&cx(&["p"]), 100).is_holds());
        let p4 = path(4).unwrap();
        let v = is_non_evasive(&p4, 1000);
        let Certificate::Tree(t) = &v.certificate else { panic!() };
        assert!(verify_decision_tree(&p4, t, TreeKind::Evasion));
        assert!(is_non_evasive(&cycle(5).unwrap(), 1000).is_fails());
        assert!(is_non_evasive(&SimplicialComplex::empty_face(), 10).is_fails());
        assert!(is_non_evasive(&simplex(3), 1000).is_holds());
    }

    #[test]
    fn path_matching_lifts() {
        let p = path(4).unwrap();
        let mu = MorseMatching::from_pairs(&[("1 2", "1"), ("2 3", "2"), ("3 4", "3"), ("4", EMPTY_FACE_TOKEN)]).unwrap();
        assert!(verify_morse_matching(&p, &mu));
        assert_eq!(mu.critical_vertex(), Some(&lbl("4")));
        let lifted = lift_morse_matching(&p, &mu, &lbl("4")).unwrap();
        assert_eq!(lifted.critical_vertex().map(|v| v.as_str()), Some("4'"));
        assert_eq!(lifted.pairs.len(), 3 + 3 + 2 + 2);
        let text = lifted.to_string();
        assert!(text.contains("4' -> EMPTYFACET"));
        assert_eq!(text.parse::<MorseMatching>().unwrap(), lifted);
    }

    #[test]
    fn matching_verifier_catches_defects() {
        let p = path(4).unwrap();
        // misses the empty face
        let m = MorseMatching::from_pairs(&[("1 2", "1"), ("2 3", "2"), ("3 4", "3")]).unwrap();
        assert!(!verify_morse_matching(&p, &m));
        // a gradient cycle around a triangle boundary with a filled face
        let tri = simplex(2);
        let cyc = MorseMatching::from_pairs(&[
            ("1 2", "1"),
            ("2 3", "2"),
            ("1 3", "3"),
            ("1 2 3", "1 2"),
        ])
        .unwrap();
        assert!(!verify_morse_matching(&tri, &cyc));
    }

    #[test]
    fn collapsibility() {
        let v = find_morse_matching(&simplex(2), 1000);
        let Certificate::Matching(m) = &v.certificate else { panic!() };
        assert!(verify_morse_matching(&simplex(2), m));
        assert!(find_morse_matching(&cycle(5).unwrap(), 1000).is_fails());
        let cone = cx(&["a 1 2", "a 2 3", "a 3 4", "a 1 4"]);
        let Certificate::Matching(m) = find_morse_matching(&cone, 100_000).certificate else { panic!() };
        let lifted = lift_morse_matching(&cone, &m, &lbl("a")).unwrap();
        assert!(verify_morse_matching(&one_point_suspension(&cone, &lbl("a")).unwrap(), &lifted));
        let p = path(4).unwrap();
        let Certificate::Matching(m) = find_morse_matching(&p, 1000).certificate else { panic!() };
        let (w, wm) = lift_morse_matching_to_wreath(1, &p, &m).unwrap();
        assert!(verify_morse_matching(&w, &wm));
    }

    #[test]
    fn certificate_text() {
        let order = parse_shelling("# c\n1 2\n2 3\n").unwrap();
        assert_eq!(shelling_to_text(&order), "1 2\n2 3\n");
        let t = DecisionTree::Node { vertex: lbl("1"), link: Box::new(DecisionTree::Leaf), deletion: Box::new(DecisionTree::Leaf) };
        assert_eq!(t.to_string(), "1\n  link *\n  del *\n");
        assert!("1 2 3".parse::<MorseMatching>().is_err());
    }
}
