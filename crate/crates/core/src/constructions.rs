//! One-point suspensions, reduced joins and wreath products of complexes.
//!
//! Copies of a vertex `v` are labeled `v'` and `v''` by a suspension and
//! `v^1, ..., v^{d+1}` by reduced joins and wreath products. When a derived
//! label is already taken, primes are appended to the base until it is free.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::complex::{FVector, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::vset::VertexSet;

/// The two copies `v'` and `v''` introduced by a one-point suspension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionLabels {
    pub vertex: VertexLabel,
    pub upper: VertexLabel,
    pub lower: VertexLabel,
}

/// Chooses the copy labels for suspending `k` at `v`.
pub fn suspension_labels(k: &SimplicialComplex, v: &VertexLabel) -> Result<SuspensionLabels> {
    k.require_vertex(v)?;
    let mut escape = String::new();
    loop {
        let upper = v.suffixed(&format!("{escape}'"));
        let lower = v.suffixed(&format!("{escape}''"));
        if k.index_of(&upper).is_none() && k.index_of(&lower).is_none() {
            return Ok(SuspensionLabels { vertex: v.clone(), upper, lower });
        }
        escape.push('\'');
    }
}

/// `Susp_1(v, K)`, built from its facets: `v'∪F` and `v''∪F` for every facet
/// `F` avoiding `v`, and `v'v''∪(G∖v)` for every facet `G` containing `v`.
pub fn one_point_suspension(k: &SimplicialComplex, v: &VertexLabel) -> Result<SimplicialComplex> {
    one_point_suspension_labeled(k, v).map(|(s, _)| s)
}

pub fn one_point_suspension_labeled(
    k: &SimplicialComplex,
    v: &VertexLabel,
) -> Result<(SimplicialComplex, SuspensionLabels)> {
    let names = suspension_labels(k, v)?;
    let vi = k.require_vertex(v)?;
    let mut labels = k.vertices().to_vec();
    let upper = labels.len();
    labels.push(names.upper.clone());
    let lower = labels.len();
    labels.push(names.lower.clone());
    let mut sets = Vec::new();
    for f in k.facet_sets() {
        if f.contains(vi) {
            sets.push(f.without(vi).with(upper).with(lower));
        } else {
            sets.push(f.with(upper));
            sets.push(f.with(lower));
        }
    }
    Ok((SimplicialComplex::from_index_sets(&labels, sets), names))
}

/// One step of an iterated suspension: the vertex that was split and the
/// labels of its two copies.
pub type SuspensionStep = SuspensionLabels;

/// How a reduced join was produced: the suspension steps in order, followed
/// by a renaming of the final copies to `v^1, ..., v^{d+1}`.
#[derive(Clone, Debug)]
pub struct ReducedJoinTrace {
    pub steps: Vec<SuspensionStep>,
    pub renames: Vec<(VertexLabel, VertexLabel)>,
    pub result: SimplicialComplex,
}

/// `∂Δ_d *_v K` as `d` iterated one-point suspensions at `v` and its copies.
pub fn reduced_join(d: usize, k: &SimplicialComplex, v: &VertexLabel) -> Result<SimplicialComplex> {
    reduced_join_traced(d, k, v).map(|t| t.result)
}

pub fn reduced_join_traced(d: usize, k: &SimplicialComplex, v: &VertexLabel) -> Result<ReducedJoinTrace> {
    k.require_vertex(v)?;
    if d == 0 {
        return Ok(ReducedJoinTrace { steps: Vec::new(), renames: Vec::new(), result: k.clone() });
    }
    let mut current = k.clone();
    let mut copies = vec![v.clone()];
    let mut steps = Vec::with_capacity(d);
    for _ in 0..d {
        let last = copies.pop().unwrap();
        let (next, names) = one_point_suspension_labeled(&current, &last)?;
        copies.push(names.upper.clone());
        copies.push(names.lower.clone());
        steps.push(names);
        current = next;
    }
    let base = free_copy_base(&current, v, &copies, d + 1);
    let renames: Vec<(VertexLabel, VertexLabel)> =
        copies.iter().enumerate().map(|(i, c)| (c.clone(), base.copy(i + 1))).collect();
    let result = current.relabel(|l| renames.iter().find(|(from, _)| from == l).map_or_else(|| l.clone(), |(_, to)| to.clone()))?;
    Ok(ReducedJoinTrace { steps, renames, result })
}

/// A base label `b` (starting from `v`) such that `b^1..b^count` do not clash
/// with vertices of `k` other than `ignore`.
fn free_copy_base(k: &SimplicialComplex, v: &VertexLabel, ignore: &[VertexLabel], count: usize) -> VertexLabel {
    let mut base = v.clone();
    loop {
        let clash = (1..=count).any(|i| {
            let c = base.copy(i);
            k.index_of(&c).is_some() && !ignore.contains(&c)
        });
        if !clash {
            return base;
        }
        base = base.suffixed("'");
    }
}

/// Vertex labels of `∂Δ_d ≀ K` in base-major order: `v^1..v^{d+1}` for each
/// vertex `v` of `K`.
pub fn wreath_labels(d: usize, k: &SimplicialComplex) -> Vec<VertexLabel> {
    k.vertices().iter().flat_map(|v| (1..=d + 1).map(move |i| v.copy(i))).collect()
}

/// Lazily enumerates the facets of `∂Δ_d ≀ K` as index sets over
/// [`wreath_labels`]: for each facet `F` of `K` (in canonical order) every
/// choice of one omitted copy per vertex outside `F`, in mixed-radix order.
pub struct WreathFacets<'a> {
    k: &'a SimplicialComplex,
    d: usize,
    facet: usize,
    outside: Vec<usize>,
    choice: Vec<usize>,
    fresh: bool,
}

impl<'a> WreathFacets<'a> {
    fn load(&mut self) {
        let n = self.k.num_vertices();
        if let Some(f) = self.k.facet_sets().get(self.facet) {
            self.outside = (0..n).filter(|&v| !f.contains(v)).collect();
            self.choice = vec![0; self.outside.len()];
            self.fresh = true;
        }
    }

    fn current(&self) -> VertexSet {
        let w = self.d + 1;
        let n = self.k.num_vertices();
        let mut s = VertexSet::new();
        let mut oi = 0;
        for v in 0..n {
            if oi < self.outside.len() && self.outside[oi] == v {
                let omit = self.choice[oi];
                for c in 0..w {
                    if c != omit {
                        s.insert(v * w + c);
                    }
                }
                oi += 1;
            } else {
                for c in 0..w {
                    s.insert(v * w + c);
                }
            }
        }
        s
    }

    fn advance(&mut self) -> bool {
        for digit in self.choice.iter_mut().rev() {
            *digit += 1;
            if *digit <= self.d {
                return true;
            }
            *digit = 0;
        }
        false
    }
}

impl Iterator for WreathFacets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if self.facet >= self.k.num_facets() {
                return None;
            }
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if self.advance() {
                return Some(self.current());
            }
            self.facet += 1;
            self.load();
        }
    }
}

pub fn wreath_facets(d: usize, k: &SimplicialComplex) -> WreathFacets<'_> {
    let mut it = WreathFacets { k, d, facet: 0, outside: Vec::new(), choice: Vec::new(), fresh: false };
    it.load();
    it
}

/// Number of facets of `∂Δ_d ≀ K`, `Σ_F (d+1)^{n-|F|}`, without enumerating.
pub fn wreath_facet_count(d: usize, k: &SimplicialComplex) -> BigUint {
    let n = k.num_vertices();
    k.facet_sets().iter().map(|f| BigUint::from(d + 1).pow((n - f.len()) as u32)).sum()
}

/// `∂Δ_d ≀ K` materialized. For `d = 0` this is `K` itself.
pub fn wreath_product(d: usize, k: &SimplicialComplex) -> SimplicialComplex {
    if d == 0 {
        return k.clone();
    }
    let labels = wreath_labels(d, k);
    SimplicialComplex::from_index_sets(&labels, wreath_facets(d, k).collect())
}

/// Facets of `∂Δ_d ≀ K` as simplices, streamed.
pub fn wreath_facet_simplices<'a>(d: usize, k: &'a SimplicialComplex) -> impl Iterator<Item = Simplex> + 'a {
    let labels = wreath_labels(d, k);
    wreath_facets(d, k).map(move |s| Simplex::new(s.iter().map(|i| labels[i].clone()).collect()).unwrap())
}

/// Applies reduced joins with `∂Δ_d` at the vertices of `K` in the given
/// order.
pub fn wreath_by_reduced_joins(d: usize, k: &SimplicialComplex, order: &[VertexLabel]) -> Result<SimplicialComplex> {
    let mut current = k.clone();
    for v in order {
        k.require_vertex(v)?;
        current = reduced_join(d, &current, v)?;
    }
    Ok(current)
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Closed-form f-vector of `∂Δ_d ≀ K` from the f-vector of `K` (`n = f_0(K)`).
///
/// `f_i` sums over the number `j` of vertices of `K` contributing all `d+1`
/// copies (they form a face, counted by `f_{j-1}(K)`) and over how many of
/// the remaining vertices contribute exactly `k` copies (`u_k` of them,
/// `Σ k u_k = i + 1 - j(d+1)`).
pub fn wreath_f_vector_formula(d: usize, fk: &FVector, n: usize) -> Result<FVector> {
    if fk.is_empty() {
        return Err(Error::InvalidParameter("f-vector of a complex with at least one vertex required".into()));
    }
    if fk.get(0) != BigUint::from(n) {
        return Err(Error::InvalidParameter(format!("n = {n} does not match f_0 = {}", fk.get(0))));
    }
    let e = fk.len();
    let top = n * d + e;
    let mut out = Vec::with_capacity(top);
    for i in 0..top {
        let lo = (i + 1).saturating_sub(n * d);
        let hi = e.min((i + 1) / (d + 1));
        let mut total = BigUint::zero();
        for j in lo..=hi {
            let rest = i + 1 - j * (d + 1);
            let inner = composition_sum(d, d, rest, n - j);
            total += fk.get(j as isize - 1) * inner;
        }
        out.push(total);
    }
    Ok(FVector::new(out))
}

/// `Σ Π_k C(pool_k, u_k) C(d+1, k)^{u_k}` over `u_part, ..., u_1` with
/// `Σ k u_k = rest`, choosing the vertices contributing `k` copies from the
/// pool left after larger contributions.
fn composition_sum(d: usize, part: usize, rest: usize, pool: usize) -> BigUint {
    if part == 0 {
        return if rest == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut total = BigUint::zero();
    let ways = binom(d + 1, part);
    for u in 0..=(rest / part).min(pool) {
        let sub = composition_sum(d, part - 1, rest - u * part, pool - u);
        if sub.is_zero() {
            continue;
        }
        total += binom(pool, u) * ways.pow(u as u32) * sub;
    }
    total
}

/// Applies the two reduced joins in both orders and compares. Labels agree
/// in both orders, so identical facet sets (the identity witness) are tried
/// first, then a general isomorphism search.
pub fn verify_reduced_join_commutes(
    k: &SimplicialComplex,
    v1: &VertexLabel,
    v2: &VertexLabel,
    d1: usize,
    d2: usize,
) -> Result<bool> {
    k.require_vertex(v1)?;
    k.require_vertex(v2)?;
    if v1 == v2 {
        return Err(Error::InvalidParameter("the two vertices must differ".into()));
    }
    let a = reduced_join(d1, &reduced_join(d2, k, v2)?, v1)?;
    let b = reduced_join(d2, &reduced_join(d1, k, v1)?, v2)?;
    Ok(a == b || crate::iso::is_isomorphic(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::iso::is_isomorphic;

    fn cx(f: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facet_strs(f).unwrap()
    }

    fn v(s: &str) -> VertexLabel {
        s.parse().unwrap()
    }

    #[test]
    fn suspension_of_a_point_is_an_edge() {
        let s = one_point_suspension(&cx(&["v"]), &v("v")).unwrap();
        assert_eq!(s, cx(&["v' v''"]));
    }

    #[test]
    fn suspension_of_pentagon() {
        let c5 = cycle(5).unwrap();
        let s = one_point_suspension(&c5, &v("1")).unwrap();
        let want = cx(&["1' 2 3", "1'' 2 3", "1' 3 4", "1'' 3 4", "1' 4 5", "1'' 4 5", "1' 1'' 2", "1' 1'' 5"]);
        assert_eq!(s, want);
        assert_eq!(s.f_vector(), FVector::from_u64s(&[6, 12, 8]));
        assert_eq!(s.euler_characteristic(), 2.into());
    }

    #[test]
    fn suspension_facet_count_and_kinds() {
        let k = cx(&["1 2 3", "1 3 4", "2 3 5", "4 5"]);
        for x in k.vertices() {
            let (s, names) = one_point_suspension_labeled(&k, x).unwrap();
            let with = k.star(x).unwrap().num_facets();
            assert_eq!(s.num_facets(), 2 * (k.num_facets() - with) + with);
            let up = s.index_of(&names.upper).unwrap();
            let lo = s.index_of(&names.lower).unwrap();
            assert!(s.facet_sets().iter().all(|f| f.contains(up) || f.contains(lo)));
            // K is the link of v'
            assert_eq!(s.link(&names.upper).unwrap().relabel(|l| if l == &names.lower { x.clone() } else { l.clone() }).unwrap(), k);
        }
    }

    #[test]
    fn repeated_suspension_escapes_labels() {
        let (s, n1) = one_point_suspension_labeled(&cx(&["v w"]), &v("v")).unwrap();
        let (t, n2) = one_point_suspension_labeled(&s, &n1.upper).unwrap();
        assert_eq!(n2.upper.as_str(), "v'''");
        assert_eq!(n2.lower.as_str(), "v''''");
        assert_eq!(t.num_vertices(), 4);
    }

    /// Oracle for reduced joins: ((∂Δ_d * K) ∖ (∂Δ_d * star v)) ∪ (Δ_d * link v),
    /// computed on explicit face sets.
    fn reduced_join_by_faces(d: usize, k: &SimplicialComplex, x: &VertexLabel) -> SimplicialComplex {
        let copies: Vec<VertexLabel> = (1..=d + 1).map(|i| x.copy(i)).collect();
        let vi = k.index_of(x).unwrap();
        let faces = k.faces_by_size().concat();
        let mut result: Vec<Simplex> = Vec::new();
        let name = |s: &VertexSet, extra: &[VertexLabel]| {
            let mut vs: Vec<VertexLabel> = s.iter().map(|i| k.label(i).clone()).collect();
            vs.extend_from_slice(extra);
            Simplex::new(vs).unwrap()
        };
        for mask in 0u32..(1 << (d + 1)) {
            let sub: Vec<VertexLabel> = (0..=d).filter(|i| mask >> i & 1 == 1).map(|i| copies[i].clone()).collect();
            let in_boundary = sub.len() <= d;
            for f in &faces {
                let in_star = f.contains(vi);
                if in_boundary && !in_star {
                    result.push(name(f, &sub));
                }
                if !in_star && k.contains_set(&f.with(vi)) {
                    result.push(name(f, &sub));
                }
            }
        }
        SimplicialComplex::from_simplices_pruned(result)
    }

    #[test]
    fn reduced_join_matches_face_formula() {
        let samples = [cycle(5).unwrap(), path(4).unwrap(), cx(&["1 2 3", "1 3 4", "2 3 5", "4 5"]), simplex_boundary(3)];
        for k in &samples {
            for x in k.vertices() {
                for d in 0..=3 {
                    let got = reduced_join(d, k, x).unwrap();
                    if d == 0 {
                        assert_eq!(&got, k);
                    } else {
                        assert_eq!(got, reduced_join_by_faces(d, k, x), "d={d} v={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_join_basics() {
        let c5 = cycle(5).unwrap();
        assert!(is_isomorphic(&reduced_join(1, &c5, &v("1")).unwrap(), &one_point_suspension(&c5, &v("1")).unwrap()));
        let r2 = reduced_join(2, &c5, &v("1")).unwrap();
        assert_eq!(r2.num_vertices(), 7);
        assert_eq!(r2.euler_characteristic(), 0.into());
        assert!(r2.vertices().iter().any(|l| l.as_str() == "1^3"));
    }

    #[test]
    fn wreath_special_cases() {
        let k = cx(&["1 2 3", "1 3 4", "2 3 5", "4 5"]);
        assert_eq!(wreath_product(0, &k), k);
        let pt = cx(&["a"]);
        assert_eq!(wreath_product(3, &pt), cx(&["a^1 a^2 a^3 a^4"]));
        assert!(is_isomorphic(&wreath_product(1, &simplex_boundary(2)), &simplex_boundary(5)));
        assert_eq!(wreath_product(1, &simplex_boundary(2)).num_facets(), 6);
    }

    #[test]
    fn wreath_is_iterated_reduced_join_in_any_order() {
        let samples = [cycle(4).unwrap(), path(4).unwrap(), simplex_boundary(2), cx(&["1 2 3", "3 4"])];
        for k in &samples {
            for d in 1..=2 {
                if k.num_vertices() * (d + 1) > 12 {
                    continue;
                }
                let w = wreath_product(d, k);
                let mut order = k.vertices().to_vec();
                assert_eq!(wreath_by_reduced_joins(d, k, &order).unwrap(), w);
                order.reverse();
                assert_eq!(wreath_by_reduced_joins(d, k, &order).unwrap(), w);
                order.rotate_left(1);
                assert_eq!(wreath_by_reduced_joins(d, k, &order).unwrap(), w);
            }
        }
    }

    #[test]
    fn wreath_dimension_purity_and_count() {
        let samples = [cycle(5).unwrap(), cx(&["1 2 3", "3 4"]), simplex_boundary(3)];
        for k in &samples {
            for d in 1..=2 {
                let w = wreath_product(d, k);
                let n = k.num_vertices() as isize;
                assert_eq!(w.dimension(), n * d as isize + k.dimension());
                assert_eq!(w.is_pure(), k.is_pure());
                assert_eq!(BigUint::from(w.num_facets()), wreath_facet_count(d, k));
                assert_eq!(wreath_facets(d, k).count(), w.num_facets());
            }
        }
    }

    #[test]
    fn formula_endpoints() {
        let c5 = cycle(5).unwrap();
        for d in 1..=3 {
            let f = wreath_f_vector_formula(d, &c5.f_vector(), 5).unwrap();
            assert_eq!(f.get(0), BigUint::from(5 * (d + 1)));
            assert_eq!(f.get(f.dim()), BigUint::from(5u32) * BigUint::from(d + 1).pow(3));
        }
        assert!(wreath_f_vector_formula(1, &c5.f_vector(), 6).is_err());
    }

    #[test]
    fn reduced_join_commutes() {
        let c5 = cycle(5).unwrap();
        assert!(verify_reduced_join_commutes(&c5, &v("1"), &v("2"), 1, 1).unwrap());
        let p4 = path(4).unwrap();
        assert!(verify_reduced_join_commutes(&p4, &v("1"), &v("4"), 2, 1).unwrap());
        assert!(verify_reduced_join_commutes(&p4, &v("2"), &v("3"), 0, 0).unwrap());
        assert!(verify_reduced_join_commutes(&p4, &v("2"), &v("9"), 1, 1).is_err());
    }
}
