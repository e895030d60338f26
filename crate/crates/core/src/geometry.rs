//! Exact-coordinate polytopes: dual wedges, the wreath product `P ≀ Q`, its
//! predicted facets with normalized normals, and verification of facet
//! systems by sign conditions.
//!
//! A facet with normal `γ` is the set of vertices `x` with `1 + ⟨x, γ⟩ = 0`
//! while all other vertices satisfy `1 + ⟨x, γ⟩ > 0`. This needs the origin in
//! the interior of the polytope.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex};
use crate::constructions::wreath_product;
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::label::VertexLabel;
use crate::verdict::{Certificate, PropertyVerdict};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Geometry(format!("not a rational number: {s}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?);
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![BigRational::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &RationalVector) -> BigRational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    /// `self ⊕ other`.
    pub fn concat(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// `1 + ⟨x, normal⟩`.
    pub fn slack(&self, normal: &RationalVector) -> BigRational {
        BigRational::one() + self.dot(normal)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for RationalVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(parse_rational).collect::<Result<_>>().map(RationalVector)
    }
}

/// Rank of a set of vectors, by exact Gaussian elimination.
fn rank(rows: &[RationalVector]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.0.clone()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let q = &m[i][c] / &m[r][c];
            let pivot = m[r].clone();
            for (x, p) in m[i][c..].iter_mut().zip(&pivot[c..]) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    r
}

/// The unique `γ` with `⟨x, γ⟩ = -1` for all given points, if the points span
/// a hyperplane avoiding the origin.
pub fn normal_through(points: &[RationalVector]) -> Option<RationalVector> {
    let dim = points.first()?.dim();
    let mut m: Vec<Vec<BigRational>> = points.iter().map(|p| p.0.iter().cloned().chain([rat(-1)]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let q = m[i][c].clone();
            let pivot = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x -= &q * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if r < dim || m[r..].iter().any(|row| !row[dim].is_zero()) {
        return None;
    }
    let mut gamma = RationalVector::zeros(dim);
    for (row, &c) in pivots.iter().enumerate() {
        gamma.0[c] = m[row][dim].clone();
    }
    Some(gamma)
}

/// A polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricPolytope {
    pub dim: usize,
    pub vertices: Vec<RationalVector>,
    pub names: Vec<VertexLabel>,
}

impl GeometricPolytope {
    pub fn new(names: Vec<VertexLabel>, vertices: Vec<RationalVector>) -> Result<Self> {
        let dim = vertices.first().map_or(0, RationalVector::dim);
        if names.len() != vertices.len() {
            return Err(Error::Geometry("names and vertices differ in number".into()));
        }
        if vertices.iter().any(|v| v.dim() != dim) {
            return Err(Error::Geometry("vertices of different dimensions".into()));
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(Error::Geometry(format!("{} and {} coincide", names[i], names[j])));
                }
                if names[i] == names[j] {
                    return Err(Error::Geometry(format!("duplicate vertex name {}", names[i])));
                }
            }
        }
        Ok(GeometricPolytope { dim, vertices, names })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, name: &VertexLabel) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex(&self, name: &VertexLabel) -> Result<&RationalVector> {
        Ok(&self.vertices[self.index_of(name)?])
    }

    pub fn barycenter(&self) -> RationalVector {
        let sum = self.vertices.iter().fold(RationalVector::zeros(self.dim), |acc, v| acc.add(v));
        sum.scale(&rat(self.vertices.len() as i64).recip())
    }

    pub fn is_centered(&self) -> bool {
        self.barycenter().0.iter().all(Zero::is_zero)
    }
}

/// A facet given by its vertex names and normalized normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSpec {
    pub vertices: Vec<VertexLabel>,
    pub normal: RationalVector,
}

/// Why a facet fails its sign check, if it does.
fn facet_defect(p: &GeometricPolytope, f: &FacetSpec) -> Option<String> {
    if f.normal.dim() != p.dim {
        return Some(format!("normal has dimension {} instead of {}", f.normal.dim(), p.dim));
    }
    for name in &f.vertices {
        if p.index_of(name).is_err() {
            return Some(format!("unknown vertex {name}"));
        }
    }
    for (name, x) in p.names.iter().zip(&p.vertices) {
        let s = x.slack(&f.normal);
        let on = f.vertices.contains(name);
        if on && !s.is_zero() {
            return Some(format!("vertex {name} has slack {s}, expected 0"));
        }
        if !on && !s.is_positive() {
            return Some(format!("vertex {name} has slack {s}, expected > 0"));
        }
    }
    let pts: Vec<RationalVector> = f.vertices.iter().map(|n| p.vertex(n).unwrap().clone()).collect();
    let diffs: Vec<RationalVector> = pts.iter().skip(1).map(|x| x.sub(&pts[0])).collect();
    if pts.is_empty() || rank(&diffs) + 1 != p.dim {
        return Some("vertices do not span a hyperplane".into());
    }
    None
}

/// Checks every facet by its sign conditions and affine span and, when all
/// facets are simplices, that every ridge lies in exactly two of them.
pub fn verify_facet_system(p: &GeometricPolytope, facets: &[FacetSpec]) -> PropertyVerdict {
    for (i, f) in facets.iter().enumerate() {
        if let Some(reason) = facet_defect(p, f) {
            return PropertyVerdict::fails(Certificate::Facet { index: i, reason }, i as u64 + 1);
        }
    }
    if facets.iter().all(|f| f.vertices.len() == p.dim) {
        let mut ridges: HashMap<Vec<&VertexLabel>, Vec<usize>> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            let mut vs: Vec<&VertexLabel> = f.vertices.iter().collect();
            vs.sort();
            for skip in 0..vs.len() {
                let mut r = vs.clone();
                r.remove(skip);
                ridges.entry(r).or_default().push(i);
            }
        }
        if let Some((r, fs)) = ridges.iter().find(|(_, fs)| fs.len() != 2) {
            let names: Vec<String> = r.iter().map(|l| l.to_string()).collect();
            return PropertyVerdict::fails(
                Certificate::Facet { index: fs[0], reason: format!("ridge {} lies in {} facets", names.join(" "), fs.len()) },
                facets.len() as u64,
            );
        }
    }
    PropertyVerdict::holds(Certificate::None, facets.len() as u64)
}

/// Computes normals for facets given by vertex names.
pub fn facet_system(p: &GeometricPolytope, facets: &[Vec<VertexLabel>]) -> Result<Vec<FacetSpec>> {
    facets
        .iter()
        .map(|names| {
            let pts = names.iter().map(|n| p.vertex(n).cloned()).collect::<Result<Vec<_>>>()?;
            let normal = normal_through(&pts).ok_or_else(|| {
                Error::InvalidFacetSystem(format!("{} do not span a hyperplane avoiding the origin", names.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(" ")))
            })?;
            Ok(FacetSpec { vertices: names.clone(), normal })
        })
        .collect()
}

/// The boundary complex of a simplicial polytope from its facet system.
pub fn boundary_complex(facets: &[FacetSpec]) -> Result<SimplicialComplex> {
    SimplicialComplex::new(facets.iter().map(|f| Simplex::new(f.vertices.clone())).collect::<Result<_>>()?)
}

fn names(prefix: &str, n: usize) -> Vec<VertexLabel> {
    (1..=n).map(|i| VertexLabel::new(format!("{prefix}{i}")).unwrap()).collect()
}

/// The segment `[-1, 1]` with vertices `prefix1 = -1`, `prefix2 = 1`.
pub fn segment(prefix: &str) -> (GeometricPolytope, Vec<FacetSpec>) {
    simplex_polytope(1, prefix)
}

/// The `d`-simplex with vertices `e_1, ..., e_d, -(1, ..., 1)` (centered),
/// named `prefix1..`, and its facet system. For `d = 1` the vertices are
/// `1` and `-1`.
pub fn simplex_polytope(d: usize, prefix: &str) -> (GeometricPolytope, Vec<FacetSpec>) {
    let mut verts: Vec<RationalVector> = (0..d)
        .map(|i| {
            let mut v = RationalVector::zeros(d);
            v.0[i] = rat(1);
            v
        })
        .collect();
    verts.push(RationalVector(vec![rat(-1); d]));
    if d == 1 {
        verts.reverse();
    }
    let p = GeometricPolytope::new(names(prefix, d + 1), verts).unwrap();
    let facets: Vec<Vec<VertexLabel>> = (0..=d).map(|skip| p.names.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, n)| n.clone()).collect()).collect();
    let fs = facet_system(&p, &facets).unwrap();
    (p, fs)
}

/// A convex polygon given in cyclic order, with its edges as facets.
pub fn polygon(prefix: &str, points: &[(i64, i64)]) -> Result<(GeometricPolytope, Vec<FacetSpec>)> {
    let p = GeometricPolytope::new(names(prefix, points.len()), points.iter().map(|&(x, y)| RationalVector::from_ints(&[x, y])).collect())?;
    let n = points.len();
    let edges: Vec<Vec<VertexLabel>> = (0..n).map(|i| vec![p.names[i].clone(), p.names[(i + 1) % n].clone()]).collect();
    let fs = facet_system(&p, &edges)?;
    Ok((p, fs))
}

/// The square with vertices `(±1, ±1)`.
pub fn square(prefix: &str) -> (GeometricPolytope, Vec<FacetSpec>) {
    polygon(prefix, &[(1, 1), (-1, 1), (-1, -1), (1, -1)]).unwrap()
}

/// A convex pentagon with integer coordinates and vertex barycenter zero.
pub fn pentagon(prefix: &str) -> (GeometricPolytope, Vec<FacetSpec>) {
    polygon(prefix, &[(0, 2), (3, 1), (2, -2), (-2, -2), (-3, 1)]).unwrap()
}

fn fresh_copy_names(p: &GeometricPolytope, v: &VertexLabel) -> (VertexLabel, VertexLabel) {
    let mut escape = String::new();
    loop {
        let a = v.suffixed(&format!("{escape}'"));
        let b = v.suffixed(&format!("{escape}''"));
        if !p.names.contains(&a) && !p.names.contains(&b) {
            return (a, b);
        }
        escape.push('\'');
    }
}

/// `DW(v, P) = conv(P ⊕ 0 ∪ {v ⊕ 1, v ⊕ (-1)})`. The vertex `v` is replaced by
/// `v'` (at height 1) and `v''` (at height -1).
pub fn dual_wedge(p: &GeometricPolytope, v: &VertexLabel) -> Result<GeometricPolytope> {
    dual_wedge_with_facets(p, &[], v).map(|(q, _)| q)
}

/// Dual wedge together with the facet system derived from one of `P`: a
/// facet `F ∌ v` with normal `φ` gives `F ∪ v'` with normal
/// `φ ⊕ -(1 + ⟨v, φ⟩)` and `F ∪ v''` with `φ ⊕ (1 + ⟨v, φ⟩)`; a facet `G ∋ v`
/// gives `(G ∖ v) ∪ v'v''` with normal `γ ⊕ 0`.
pub fn dual_wedge_with_facets(p: &GeometricPolytope, facets: &[FacetSpec], v: &VertexLabel) -> Result<(GeometricPolytope, Vec<FacetSpec>)> {
    let vi = p.index_of(v)?;
    let (up, down) = fresh_copy_names(p, v);
    let mut names = Vec::new();
    let mut verts = Vec::new();
    for (i, (n, x)) in p.names.iter().zip(&p.vertices).enumerate() {
        if i == vi {
            names.push(up.clone());
            verts.push(x.concat(&RationalVector::from_ints(&[1])));
            names.push(down.clone());
            verts.push(x.concat(&RationalVector::from_ints(&[-1])));
        } else {
            names.push(n.clone());
            verts.push(x.concat(&RationalVector::zeros(1)));
        }
    }
    let q = GeometricPolytope::new(names, verts)?;
    let x = &p.vertices[vi];
    let mut out = Vec::new();
    for f in facets {
        if f.vertices.contains(v) {
            let mut vs: Vec<VertexLabel> = f.vertices.iter().filter(|&n| n != v).cloned().collect();
            vs.push(up.clone());
            vs.push(down.clone());
            out.push(FacetSpec { vertices: vs, normal: f.normal.concat(&RationalVector::zeros(1)) });
        } else {
            let s = x.slack(&f.normal);
            for (copy, h) in [(&up, -s.clone()), (&down, s.clone())] {
                let mut vs = f.vertices.clone();
                vs.push(copy.clone());
                out.push(FacetSpec { vertices: vs, normal: f.normal.concat(&RationalVector(vec![h])) });
            }
        }
    }
    Ok((q, out))
}

/// Moves the vertex barycenter to the origin.
pub fn translate_to_vertex_barycenter(p: &GeometricPolytope) -> GeometricPolytope {
    let c = p.barycenter();
    GeometricPolytope { dim: p.dim, vertices: p.vertices.iter().map(|x| x.sub(&c)).collect(), names: p.names.clone() }
}

/// Renormalizes a facet system after translating the polytope by `-shift`:
/// `γ ↦ γ / (1 + ⟨shift, γ⟩)`, valid when `shift` is interior.
pub fn translate_facets(facets: &[FacetSpec], shift: &RationalVector) -> Vec<FacetSpec> {
    facets
        .iter()
        .map(|f| FacetSpec { vertices: f.vertices.clone(), normal: f.normal.scale(&shift.slack(&f.normal).recip()) })
        .collect()
}

/// `P ≀ Q ⊂ R^{nd+e}` with the bookkeeping needed by π and β.
#[derive(Clone, Debug)]
pub struct WreathPolytope {
    pub polytope: GeometricPolytope,
    pub p: GeometricPolytope,
    pub q: GeometricPolytope,
}

/// Vertices `(v_i)^k ⊕ w_k`, where `(v_i)^k` puts `v_i` into the `k`-th of
/// `n` blocks of `d` coordinates. Vertex `(v_i)^k ⊕ w_k` is named `v_i^k`,
/// with `k` the position of `w_k` among the vertices of `Q`. Inputs whose
/// vertex barycenter is not zero are translated first.
pub fn polytope_wreath(p: &GeometricPolytope, q: &GeometricPolytope) -> WreathPolytope {
    let center = |x: &GeometricPolytope| {
        if x.is_centered() {
            x.clone()
        } else {
            log::info!("translating a factor to its vertex barycenter");
            translate_to_vertex_barycenter(x)
        }
    };
    let (p, q) = (center(p), center(q));
    let (d, n) = (p.dim, q.num_vertices());
    let mut names = Vec::new();
    let mut verts = Vec::new();
    for (k, w) in q.vertices.iter().enumerate() {
        for (name, v) in p.names.iter().zip(&p.vertices) {
            let mut x = RationalVector::zeros(n * d);
            x.0[k * d..(k + 1) * d].clone_from_slice(&v.0);
            names.push(name.copy(k + 1));
            verts.push(x.concat(w));
        }
    }
    let polytope = GeometricPolytope::new(names, verts).expect("wreath vertices are distinct");
    WreathPolytope { polytope, p, q }
}

/// A facet `(F_{g+1}, ..., F_n; G)` of `P ≀ Q`: a facet `G` of `Q` and a facet
/// of `P` for every vertex of `Q` outside `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedFacet {
    /// Index of `G` in the facet system of `Q`.
    pub base: usize,
    /// `(k, index of F_k)` for every vertex `w_k ∉ G`, in vertex order.
    pub choices: Vec<(usize, usize)>,
    pub spec: FacetSpec,
}

/// Enumerates every `(G, choice)` pair with normal
/// `(Σ_{k ∉ G} (1 + ⟨w_k, γ⟩) (φ_k)^k) ⊕ γ`. Both facet systems are checked
/// first (against the centered factors).
pub fn predicted_facets(w: &WreathPolytope, facets_p: &[FacetSpec], facets_q: &[FacetSpec]) -> Result<Vec<PredictedFacet>> {
    for (label, poly, fs) in [("P", &w.p, facets_p), ("Q", &w.q, facets_q)] {
        if let Some((i, why)) = fs.iter().enumerate().find_map(|(i, f)| facet_defect(poly, f).map(|r| (i, r))) {
            return Err(Error::InvalidFacetSystem(format!("facet {i} of {label}: {why}")));
        }
    }
    let (d, n) = (w.p.dim, w.q.num_vertices());
    let mut out = Vec::new();
    for (gi, g) in facets_q.iter().enumerate() {
        let outside: Vec<usize> = (0..n).filter(|&k| !g.vertices.contains(&w.q.names[k])).collect();
        let mut choice = vec![0usize; outside.len()];
        loop {
            let mut normal = RationalVector::zeros(n * d);
            let mut vertices = Vec::new();
            for k in 0..n {
                match outside.iter().position(|&o| o == k) {
                    None => vertices.extend(w.p.names.iter().map(|v| v.copy(k + 1))),
                    Some(pos) => {
                        let f = &facets_p[choice[pos]];
                        let c = w.q.vertices[k].slack(&g.normal);
                        for (j, x) in f.normal.0.iter().enumerate() {
                            normal.0[k * d + j] = &c * x;
                        }
                        vertices.extend(f.vertices.iter().map(|v| v.copy(k + 1)));
                    }
                }
            }
            vertices.sort();
            out.push(PredictedFacet {
                base: gi,
                choices: outside.iter().zip(&choice).map(|(&k, &c)| (k, c)).collect(),
                spec: FacetSpec { vertices, normal: normal.concat(&g.normal) },
            });
            // next choice function, last position fastest
            let mut pos = choice.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < facets_p.len() {
                    break;
                }
                choice[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if choice.is_empty() || pos == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

/// π on vertex names: `v_i^k ↦ (v_i, w_k)`.
pub fn projection_pi(w: &WreathPolytope) -> Vec<(VertexLabel, (VertexLabel, VertexLabel))> {
    let m = w.p.num_vertices();
    w.polytope
        .names
        .iter()
        .enumerate()
        .map(|(idx, name)| (name.clone(), (w.p.names[idx % m].clone(), w.q.names[idx / m].clone())))
        .collect()
}

/// β: the facet `G` of `Q` underlying a predicted facet.
pub fn blocking_beta(f: &PredictedFacet) -> usize {
    f.base
}

/// Compares the boundary of `Δ_d ≀ Q`, from its predicted facets, with the
/// iterated dual wedge `DW^d(w_1, ... DW^d(w_n, Q))` built with coordinates.
/// Both facet systems must pass their sign checks and the two boundary
/// complexes must be isomorphic.
pub fn wreath_equals_iterated_dual_wedge(d: usize, q: &GeometricPolytope, facets_q: &[FacetSpec]) -> Result<PropertyVerdict> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let (p, facets_p) = simplex_polytope(d, "s");
    let shift = q.barycenter();
    let qc = translate_to_vertex_barycenter(q);
    let facets_qc = translate_facets(facets_q, &shift);
    let w = polytope_wreath(&p, &qc);
    let predicted: Vec<FacetSpec> = predicted_facets(&w, &facets_p, &facets_qc)?.into_iter().map(|f| f.spec).collect();
    let v = verify_facet_system(&w.polytope, &predicted);
    if !v.is_holds() {
        return Ok(v);
    }
    let mut dw = qc.clone();
    let mut dw_facets = facets_qc.clone();
    for base in &qc.names {
        let mut last = base.clone();
        for _ in 0..d {
            let (_, down) = fresh_copy_names(&dw, &last);
            (dw, dw_facets) = dual_wedge_with_facets(&dw, &dw_facets, &last)?;
            last = down;
        }
    }
    let v = verify_facet_system(&dw, &dw_facets);
    if !v.is_holds() {
        return Ok(v);
    }
    let a = boundary_complex(&predicted)?;
    let b = boundary_complex(&dw_facets)?;
    if is_isomorphic(&a, &b) && is_isomorphic(&a, &wreath_product(d, &boundary_complex(&facets_qc)?)) {
        Ok(PropertyVerdict::holds(Certificate::None, predicted.len() as u64))
    } else {
        Ok(PropertyVerdict::fails(Certificate::Obstruction("boundary complexes are not isomorphic".into()), predicted.len() as u64))
    }
}

/// A polytope file: a header `POLYTOPE <dim> <n>`, `n` lines `name: x_1 ... x_dim`,
/// then optional `FACET names... | normal: γ_1 ... γ_dim` lines. `#` starts a
/// comment line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub polytope: GeometricPolytope,
    pub facets: Vec<FacetSpec>,
}

pub fn parse_polytope(text: &str) -> Result<PolytopeFile> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let err = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.to_string() };
    let (hl, header) = lines.next().ok_or_else(|| err(0, "missing POLYTOPE header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "POLYTOPE" {
        return Err(err(hl, "expected `POLYTOPE <dim> <n>`"));
    }
    let dim: usize = parts[1].parse().map_err(|_| err(hl, "bad dimension"))?;
    let n: usize = parts[2].parse().map_err(|_| err(hl, "bad vertex count"))?;
    let mut names = Vec::new();
    let mut verts = Vec::new();
    let mut facets = Vec::new();
    for (ln, line) in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("FACET") {
            let (vs, normal) = rest.split_once('|').ok_or_else(|| err(ln, "expected `| normal:`"))?;
            let normal = normal.trim().strip_prefix("normal:").ok_or_else(|| err(ln, "expected `normal:`"))?;
            let vertices = vs.split_whitespace().map(VertexLabel::new).collect::<Result<Vec<_>>>().map_err(|e| err(ln, &e.to_string()))?;
            let normal: RationalVector = normal.parse().map_err(|e: Error| err(ln, &e.to_string()))?;
            if normal.dim() != dim {
                return Err(err(ln, "normal has the wrong dimension"));
            }
            facets.push(FacetSpec { vertices, normal });
        } else {
            let (name, coords) = line.split_once(':').ok_or_else(|| err(ln, "expected `name: coordinates`"))?;
            names.push(VertexLabel::new(name.trim()).map_err(|e| err(ln, &e.to_string()))?);
            let x: RationalVector = coords.parse().map_err(|e: Error| err(ln, &e.to_string()))?;
            if x.dim() != dim {
                return Err(err(ln, "vertex has the wrong dimension"));
            }
            verts.push(x);
        }
    }
    if names.len() != n {
        return Err(err(hl, &format!("header announces {n} vertices, found {}", names.len())));
    }
    let mut polytope = GeometricPolytope::new(names, verts)?;
    polytope.dim = dim;
    Ok(PolytopeFile { polytope, facets })
}

pub fn write_polytope(p: &GeometricPolytope, facets: &[FacetSpec]) -> String {
    let mut out = format!("POLYTOPE {} {}\n", p.dim, p.num_vertices());
    for (n, x) in p.names.iter().zip(&p.vertices) {
        let _ = writeln!(out, "{n}: {x}");
    }
    for f in facets {
        let vs: Vec<&str> = f.vertices.iter().map(VertexLabel::as_str).collect();
        let _ = writeln!(out, "FACET {} | normal: {}", vs.join(" "), f.normal);
    }
    out
}
