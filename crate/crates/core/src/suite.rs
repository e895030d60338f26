//! The regression suite: fourteen numbered checks on concrete instances,
//! each reporting a single pass/fail line.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::complex::{FVector, Simplex, SimplicialComplex, EMPTY_FACE_TOKEN};
use crate::constructions::{one_point_suspension, wreath_f_vector_formula, wreath_product};
use crate::decompose::{
    find_shelling, is_cone, is_non_evasive, is_vertex_decomposable, lift_morse_matching, lift_shelling,
    lift_shelling_to_wreath, project_shelling, verify_morse_matching, verify_shelling, MorseMatching,
};
use crate::error::Result;
use crate::generators::{cross_polytope_boundary, cycle, cyclic_polytope_boundary, path, simplex, simplex_boundary};
use crate::geometry::{
    pentagon, polytope_wreath, predicted_facets, segment, simplex_polytope, square, verify_facet_system,
    wreath_equals_iterated_dual_wedge, FacetSpec, RationalVector,
};
use crate::iso::is_isomorphic;
use crate::label::VertexLabel;
use crate::symmetry::{automorphism_group, group_order, wreath_group_generators};
use crate::topology::{dual_diameter, hirsch_gap, neighborliness, neighborly_wreath_parameter_check, reduced_homology, HomologyGroup};
use crate::verdict::{Certificate, PropertyVerdict, Status, DEFAULT_BUDGET};

pub const CRITERIA: [&str; 14] = [
    "f-vector regression",
    "formula vs enumeration",
    "simplex identities",
    "facet count",
    "tetrahedron coordinates",
    "wreath vs iterated dual wedge",
    "Morse lift on a path",
    "preservation under suspension",
    "homology shift",
    "neighborliness transfer",
    "neighborly parameter law",
    "symmetry embedding",
    "shelling lift",
    "Hirsch diagnostics",
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

/// Small pure complexes (at most 8 vertices) used by the preservation checks.
pub fn corpus() -> Vec<(&'static str, SimplicialComplex)> {
    let f = |s: &[&str]| SimplicialComplex::from_facet_strs(s).unwrap();
    vec![
        ("C5", cycle(5).unwrap()),
        ("path4", path(4).unwrap()),
        ("bd-tetrahedron", simplex_boundary(3)),
        ("triangle", simplex(2)),
        ("two-edges", f(&["1 2", "3 4"])),
        ("bowtie", f(&["1 2 3", "3 4 5"])),
        ("octahedron", cross_polytope_boundary(3).unwrap()),
        ("cone-C4", cycle(4).unwrap().cone(VertexLabel::new("a").unwrap()).unwrap()),
        ("two-triangles", f(&["1 2 3", "2 3 4"])),
        ("RP2", f(&["1 2 3", "1 3 4", "1 4 5", "1 5 6", "1 6 2", "2 3 5", "3 4 6", "4 5 2", "5 6 3", "6 2 4"])),
        ("S0", simplex_boundary(1)),
        ("point", simplex(0)),
        ("theta", f(&["1 2", "2 3", "3 4", "4 5", "5 1", "1 3"])),
    ]
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(run).collect()
}

pub fn run(id: usize) -> CriterionResult {
    let outcome = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(),
        9 => c9(),
        10 => c10(),
        11 => c11(),
        12 => c12(),
        13 => c13(),
        14 => c14(),
        _ => Err(crate::error::Error::InvalidParameter(format!("no criterion {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok((p, d)) => (p, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), passed, detail }
}

type Outcome = Result<(bool, String)>;

fn fv(xs: &[u64]) -> FVector {
    FVector::from_u64s(xs)
}

fn c1() -> Outcome {
    let k = cyclic_polytope_boundary(2, 5)?;
    let want = fv(&[10, 45, 120, 205, 222, 140, 40]);
    let direct = wreath_product(1, &k).f_vector();
    let formula = wreath_f_vector_formula(1, &k.f_vector(), k.num_vertices())?;
    Ok((direct == want && formula == want, format!("enumerated {direct}, formula {formula}")))
}

fn c2() -> Outcome {
    let ks = [("C5", cycle(5)?), ("bd-tetrahedron", simplex_boundary(3)), ("octahedron", cross_polytope_boundary(3)?), ("path4", path(4)?)];
    let mut checked = 0;
    for d in 1..=2 {
        for (name, k) in &ks {
            if k.num_vertices() * (d + 1) > 18 {
                continue;
            }
            let formula = wreath_f_vector_formula(d, &k.f_vector(), k.num_vertices())?;
            let direct = wreath_product(d, k).f_vector();
            if formula != direct {
                return Ok((false, format!("d={d}, {name}: formula {formula} vs {direct}")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} cases agree")))
}

fn c3() -> Outcome {
    let mut cases = Vec::new();
    for k in 1..=3 {
        cases.push((1, k, 2 * k + 1));
    }
    cases.push((2, 2, 8));
    for &(d, k, target) in &cases {
        if !is_isomorphic(&wreath_product(d, &simplex_boundary(k)), &simplex_boundary(target)) {
            return Ok((false, format!("wreath({d}, bd simplex {k}) is not bd simplex {target}")));
        }
    }
    Ok((true, format!("{} identities hold", cases.len())))
}

fn c4() -> Outcome {
    for (name, k) in corpus() {
        let (e, n) = ((k.dimension() + 1) as usize, k.num_vertices());
        let facets_k = k.num_facets();
        let want = BigUint::from(facets_k) * BigUint::from(2u32).pow((n - e) as u32);
        let got = wreath_product(1, &k).f_vector().counts().last().cloned().unwrap_or_default();
        if got != want {
            return Ok((false, format!("{name}: {got} facets, expected {want}")));
        }
    }
    let (p, fp) = segment("a");
    let (q, fq) = pentagon("p");
    let w = polytope_wreath(&p, &q);
    let pf: Vec<FacetSpec> = predicted_facets(&w, &fp, &fq)?.into_iter().map(|f| f.spec).collect();
    let verdict = verify_facet_system(&w.polytope, &pf);
    Ok((pf.len() == 40 && verdict.is_holds(), format!("corpus counts match; pentagon wreath has {} facets, verification {}", pf.len(), verdict.status)))
}

fn c5() -> Outcome {
    let (a, _) = segment("v");
    let (b, _) = segment("w");
    let w = polytope_wreath(&a, &b);
    let mut got = w.polytope.vertices.clone();
    got.sort();
    let mut want: Vec<RationalVector> = [[-1, 0, -1], [1, 0, -1], [0, -1, 1], [0, 1, 1]].iter().map(|x| RationalVector::from_ints(x)).collect();
    want.sort();
    let shown: Vec<String> = w.polytope.vertices.iter().map(|x| format!("({})", x.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))).collect();
    Ok((got == want, shown.join(" ")))
}

fn c6() -> Outcome {
    let (tri, ft) = simplex_polytope(2, "t");
    let (sq, fs) = square("q");
    let (seg, fseg) = segment("a");
    let cases = [("1,triangle", 1, tri, ft), ("1,square", 1, sq, fs), ("2,segment", 2, seg, fseg)];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, d, q, f) in cases {
        let v = wreath_equals_iterated_dual_wedge(d, &q, &f)?;
        ok &= v.is_holds();
        parts.push(format!("({name}) {}", v.status));
    }
    Ok((ok, parts.join(", ")))
}

fn c7() -> Outcome {
    let p = path(4)?;
    let mu = MorseMatching::from_pairs(&[("1 2", "1"), ("2 3", "2"), ("3 4", "3"), ("4", EMPTY_FACE_TOKEN)])?;
    let v = VertexLabel::new("4")?;
    let lifted = lift_morse_matching(&p, &mu, &v)?;
    let susp = one_point_suspension(&p, &v)?;
    let ok = verify_morse_matching(&p, &mu) && verify_morse_matching(&susp, &lifted);
    let critical = lifted.critical_vertex().map(|c| c.to_string()).unwrap_or_default();
    Ok((ok && critical == "4'", format!("{} pairs, critical vertex {critical}", lifted.pairs.len())))
}

fn property_verdicts(k: &SimplicialComplex) -> Result<[PropertyVerdict; 4]> {
    Ok([
        is_vertex_decomposable(k, DEFAULT_BUDGET)?,
        find_shelling(k, DEFAULT_BUDGET)?,
        is_cone(k),
        is_non_evasive(k, DEFAULT_BUDGET),
    ])
}

fn c8() -> Outcome {
    const NAMES: [&str; 4] = ["vertex-decomposable", "shellable", "cone", "non-evasive"];
    let mut comparisons = 0;
    for (name, k) in corpus() {
        let base = property_verdicts(&k)?;
        for v in k.vertices() {
            let s = property_verdicts(&one_point_suspension(&k, v)?)?;
            for i in 0..4 {
                if base[i].status == Status::Unknown || s[i].status == Status::Unknown {
                    return Ok((false, format!("{name}, v={v}: {} undecided", NAMES[i])));
                }
                if base[i].status != s[i].status {
                    return Ok((false, format!("{name}, v={v}: {} {} vs {}", NAMES[i], base[i].status, s[i].status)));
                }
                comparisons += 1;
            }
        }
    }
    Ok((true, format!("{comparisons} verdict pairs agree over {} complexes", corpus().len())))
}

fn c9() -> Outcome {
    let mut checked = 0;
    for (name, k) in corpus() {
        let h = reduced_homology(&k);
        for v in k.vertices() {
            let hs = reduced_homology(&one_point_suspension(&k, v)?);
            if hs != h.shifted(1) {
                return Ok((false, format!("{name}, v={v}: {hs:?} vs shifted {h:?}")));
            }
            checked += 1;
        }
    }
    let c5 = cycle(5)?;
    let s = reduced_homology(&one_point_suspension(&c5, &VertexLabel::new("1")?)?);
    let nontrivial: Vec<(isize, HomologyGroup)> = s.nontrivial().map(|(i, g)| (i, g.clone())).collect();
    let ok = nontrivial == vec![(2, HomologyGroup::free(1))];
    Ok((ok, format!("{checked} suspensions shift homology; Susp(1, C5) has {}", s.to_string().replace('\n', ", "))))
}

fn c10() -> Outcome {
    let mut checked = 0;
    for (name, k) in corpus() {
        let n = k.num_vertices();
        let nk = neighborliness(&k);
        for d in 1..=2 {
            if n * (d + 1) > 18 {
                continue;
            }
            let nw = neighborliness(&wreath_product(d, &k));
            for j in 1..=n {
                let ok = if j <= nk { j == n || nw >= j * (d + 1) + d } else { nw < j * (d + 1) };
                if !ok {
                    return Ok((false, format!("{name}, d={d}, k={j}: wreath is {nw}-neighborly, K is {nk}-neighborly")));
                }
                checked += 1;
            }
        }
    }
    let c5 = neighborliness(&wreath_product(1, &cycle(5)?));
    Ok((c5 == 3, format!("{checked} bounds hold; wreath(1, C5) is {c5}-neighborly")))
}

fn c11() -> Outcome {
    let mut cells = 0;
    for e in 2..=4 {
        for n in e + 2..=e + 4 {
            for d in 1..=2 {
                let k = cyclic_polytope_boundary(e, n)?;
                let w = wreath_product(d, &k);
                let measured = neighborliness(&w) >= (n * d + e) / 2;
                let predicted = neighborly_wreath_parameter_check(e, n, d);
                if measured != predicted {
                    return Ok((false, format!("e={e}, n={n}, d={d}: predicted {predicted}, measured {measured}")));
                }
                cells += 1;
            }
        }
    }
    let c46 = neighborliness(&wreath_product(1, &cyclic_polytope_boundary(4, 6)?));
    let c25 = neighborliness(&wreath_product(1, &cyclic_polytope_boundary(2, 5)?));
    Ok((c46 == 5 && c25 < 6, format!("{cells} cells agree; wreath(1, C4(6)) is {c46}-neighborly, wreath(1, C2(5)) is {c25}-neighborly")))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn c12() -> Outcome {
    let mut parts = Vec::new();
    for (name, d, k) in [("S0", 1, simplex_boundary(1)), ("C4", 1, cycle(4)?), ("C5", 1, cycle(5)?)] {
        let aut_k = automorphism_group(&k, DEFAULT_BUDGET);
        let wg = wreath_group_generators(d, &k, &aut_k)?;
        let w = wreath_product(d, &k);
        let aut_w = automorphism_group(&w, DEFAULT_BUDGET);
        let want = factorial(d + 1).pow(k.num_vertices() as u32) * &aut_k.order;
        let got = group_order(w.num_vertices(), &wg.generators);
        let divides = aut_w.complete && (&aut_w.order % &got) == BigUint::default();
        let transfer = !aut_k.is_transitive() || aut_w.is_transitive();
        if got != want || !divides || !transfer {
            return Ok((false, format!("{name}: wreath group {got} (expected {want}), Aut {}", aut_w.order)));
        }
        parts.push(format!("{name}: {got} | {}", aut_w.order));
    }
    Ok((true, parts.join(", ")))
}

fn c13() -> Outcome {
    let mut lifted = 0;
    for (name, k) in corpus() {
        let PropertyVerdict { certificate: Certificate::Shelling(order), .. } = find_shelling(&k, DEFAULT_BUDGET)? else { continue };
        for v in k.vertices() {
            let susp = one_point_suspension(&k, v)?;
            let up = lift_shelling(&k, &order, v)?;
            let down = project_shelling(&k, v, &up)?;
            if !verify_shelling(&susp, &up) || !verify_shelling(&k, &down) {
                return Ok((false, format!("{name}, v={v}: lifted or projected shelling rejected")));
            }
            lifted += 1;
        }
    }
    let c5 = cycle(5)?;
    let order: Vec<Simplex> = c5.facets();
    let order = if verify_shelling(&c5, &order) {
        order
    } else {
        match find_shelling(&c5, DEFAULT_BUDGET)?.certificate {
            Certificate::Shelling(o) => o,
            _ => return Ok((false, "C5 has no shelling".into())),
        }
    };
    let (w, wo) = lift_shelling_to_wreath(1, &c5, &order)?;
    let ok = verify_shelling(&w, &wo);
    Ok((ok, format!("{lifted} suspension lifts and projections verified; wreath(1, C5) shelling of {} facets {}", wo.len(), if ok { "verified" } else { "rejected" })))
}

fn c14() -> Outcome {
    for d in 1..=5 {
        if dual_diameter(&simplex_boundary(d))? != 1 {
            return Ok((false, format!("bd simplex {d} has dual diameter != 1")));
        }
    }
    let c5 = cycle(5)?;
    let (diam, gap) = (dual_diameter(&c5)?, hirsch_gap(&c5)?);
    let wgap = hirsch_gap(&wreath_product(1, &c5))?;
    Ok((diam == 2 && gap == 1 && wgap >= 0, format!("C5 diameter {diam}, gap {gap}; wreath(1, C5) gap {wgap}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_small_and_pure() {
        let c = corpus();
        assert!(c.len() >= 10);
        assert!(c.iter().all(|(_, k)| k.num_vertices() <= 8 && k.is_pure()));
    }

    #[test]
    fn unknown_criterion_fails() {
        let r = run(15);
        assert!(!r.passed);
        assert!(r.to_string().starts_with("[FAIL] 15"));
    }
}
