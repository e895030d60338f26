//! Standard complexes: simplices, their boundaries, cycles, paths,
//! cross-polytope boundaries and boundaries of cyclic polytopes.
//!
//! Vertices are labeled `1..n`.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::vset::VertexSet;

fn labels(n: usize) -> Vec<VertexLabel> {
    (1..=n).map(VertexLabel::from).collect()
}

fn build(n: usize, sets: Vec<VertexSet>) -> SimplicialComplex {
    SimplicialComplex::from_index_sets(&labels(n), sets)
}

/// The full `k`-simplex on `k + 1` vertices.
pub fn simplex(k: usize) -> SimplicialComplex {
    build(k + 1, vec![VertexSet::full(k + 1)])
}

/// Boundary of the `k`-simplex: all `k`-subsets of `k + 1` vertices. For
/// `k = 0` this is `{∅}`.
pub fn simplex_boundary(k: usize) -> SimplicialComplex {
    if k == 0 {
        return SimplicialComplex::empty_face();
    }
    let full = VertexSet::full(k + 1);
    build(k + 1, (0..=k).map(|i| full.without(i)).collect())
}

/// The `n`-gon.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(build(n, (0..n).map(|i| [i, (i + 1) % n].into_iter().collect()).collect()))
}

/// Path with `n` vertices and `n - 1` edges.
pub fn path(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("path needs n >= 2, got {n}")));
    }
    Ok(build(n, (0..n - 1).map(|i| [i, i + 1].into_iter().collect()).collect()))
}

/// Boundary of the `k`-dimensional cross-polytope, the join of `k` copies of
/// `S^0`. Antipodal pairs are `{1,2}, {3,4}, ...`.
pub fn cross_polytope_boundary(k: usize) -> Result<SimplicialComplex> {
    if k < 1 {
        return Err(Error::InvalidParameter("cross-polytope needs k >= 1".into()));
    }
    let sets = (0..1u64 << k)
        .map(|choice| (0..k).map(|i| 2 * i + (choice >> i & 1) as usize).collect())
        .collect();
    Ok(build(2 * k, sets))
}

/// Boundary of the cyclic polytope `C_e(n)` via Gale's evenness condition.
pub fn cyclic_polytope_boundary(e: usize, n: usize) -> Result<SimplicialComplex> {
    if e < 2 || n < e + 1 {
        return Err(Error::InvalidParameter(format!("cyclic polytope needs e >= 2 and n >= e + 1, got e={e}, n={n}")));
    }
    if n > 63 {
        return Err(Error::InvalidParameter("cyclic polytope limited to n <= 63".into()));
    }
    let mut sets = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == e && gale_even(mask, n) {
            sets.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    Ok(build(n, sets))
}

/// Every maximal run of chosen positions with unchosen positions on both
/// sides has even length. Runs touching position 1 or n are free.
fn gale_even(mask: u64, n: usize) -> bool {
    let mut i = 0;
    while i < n {
        if mask >> i & 1 == 0 {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && mask >> i & 1 == 1 {
            i += 1;
        }
        let interior = start > 0 && i < n;
        if interior && (i - start) % 2 == 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FVector;
    use crate::iso::is_isomorphic;

    #[test]
    fn simplex_boundaries() {
        assert_eq!(simplex_boundary(1).f_vector(), FVector::from_u64s(&[2]));
        assert_eq!(simplex_boundary(3).f_vector(), FVector::from_u64s(&[4, 6, 4]));
        assert!(simplex_boundary(0).is_empty_face_only());
        assert_eq!(simplex(2).num_facets(), 1);
    }

    #[test]
    fn small_families() {
        let p = path(4).unwrap();
        assert_eq!(p, SimplicialComplex::from_facet_strs(&["1 2", "2 3", "3 4"]).unwrap());
        assert_eq!(cross_polytope_boundary(3).unwrap().f_vector(), FVector::from_u64s(&[6, 12, 8]));
        assert!(is_isomorphic(&cycle(4).unwrap(), &cross_polytope_boundary(2).unwrap()));
        assert!(cycle(2).is_err());
        assert!(path(1).is_err());
        assert!(cross_polytope_boundary(0).is_err());
    }

    /// Brute-force oracle: a set S of size e is a facet of the cyclic polytope
    /// iff for every pair i<j outside S the number of elements of S strictly
    /// between them is even.
    fn gale_oracle(e: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != e {
                continue;
            }
            let outside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let ok = outside.iter().all(|&i| {
                outside.iter().filter(|&&j| j > i).all(|&j| ((i + 1)..j).filter(|k| mask >> k & 1 == 1).count() % 2 == 0)
            });
            if ok {
                out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn cyclic_matches_pairwise_oracle() {
        for e in 2..=6 {
            for n in e + 1..=10 {
                let k = cyclic_polytope_boundary(e, n).unwrap();
                let mut got: Vec<Vec<usize>> = k.facet_sets().iter().map(|f| f.iter().collect()).collect();
                got.sort();
                let mut want = gale_oracle(e, n);
                want.sort();
                assert_eq!(got, want, "e={e} n={n}");
            }
        }
    }

    #[test]
    fn cyclic_values() {
        assert!(is_isomorphic(&cyclic_polytope_boundary(2, 5).unwrap(), &cycle(5).unwrap()));
        // f-vector from the evenness oracle; Euler characteristic 0 and
        // f_2 = 2 f_3 hold for a simplicial 3-sphere.
        let c46 = cyclic_polytope_boundary(4, 6).unwrap();
        assert_eq!(c46.f_vector(), FVector::from_u64s(&[6, 15, 18, 9]));
        let c47 = cyclic_polytope_boundary(4, 7).unwrap();
        assert_eq!(c47.f_vector().get(1), 21u32.into());
    }
}
