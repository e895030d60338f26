//! The facet file format.
//!
//! UTF-8 text. A line whose first non-blank character is `#` is a comment.
//! Every other non-blank line is one facet given as whitespace-separated
//! vertex labels; the line `EMPTYFACET` is the empty facet.

use std::fmt::Write as _;

use crate::complex::{Simplex, SimplicialComplex, EMPTY_FACE_TOKEN};
use crate::error::{Error, Result};

/// What to do with a facet that is contained in another facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NonMaximalPolicy {
    #[default]
    Reject,
    /// Drop it and log a warning.
    WarnAndPrune,
}

pub fn parse_facets(text: &str, policy: NonMaximalPolicy) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    let mut lines = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let s = if trimmed == EMPTY_FACE_TOKEN {
            Simplex::empty()
        } else {
            Simplex::parse(trimmed).map_err(|e| Error::Parse { line: n + 1, msg: e.to_string() })?
        };
        facets.push(s);
        lines.push(n + 1);
    }
    for (i, f) in facets.iter().enumerate() {
        if let Some(j) = facets.iter().position(|g| g != f && f.is_subset(g)) {
            match policy {
                NonMaximalPolicy::Reject => {
                    return Err(Error::Parse {
                        line: lines[i],
                        msg: format!("facet {f} is contained in facet {} (line {})", facets[j], lines[j]),
                    })
                }
                NonMaximalPolicy::WarnAndPrune => {
                    log::warn!("line {}: dropping facet {f}, contained in {}", lines[i], facets[j]);
                }
            }
        }
    }
    Ok(SimplicialComplex::from_simplices_pruned(facets))
}

/// Writes facets one per line in canonical order.
pub fn write_facets(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in k.facets() {
        let _ = writeln!(out, "{f}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_empty_facet() {
        let k = parse_facets("# pentagon\n1 2\n  2 3\n\n3 4\n4 5\n5 1\n", NonMaximalPolicy::Reject).unwrap();
        assert_eq!(k.num_facets(), 5);
        let z = parse_facets("EMPTYFACET\n", NonMaximalPolicy::Reject).unwrap();
        assert!(z.is_empty_face_only());
        assert_eq!(write_facets(&z), "EMPTYFACET\n");
        assert!(parse_facets("", NonMaximalPolicy::Reject).unwrap().is_empty());
    }

    #[test]
    fn non_maximal_policy() {
        let err = parse_facets("1 2 3\n1 2\n", NonMaximalPolicy::Reject).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let k = parse_facets("1 2 3\n1 2\n", NonMaximalPolicy::WarnAndPrune).unwrap();
        assert_eq!(k.num_facets(), 1);
    }

    #[test]
    fn rejects_duplicate_vertices() {
        assert!(parse_facets("1 1 2\n", NonMaximalPolicy::Reject).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(sets in proptest::collection::vec(proptest::collection::btree_set(0usize..9, 0..5), 1..8)) {
            let faces: Vec<Simplex> = sets
                .iter()
                .map(|s| Simplex::new(s.iter().map(|&i| format!("x{i}").parse().unwrap()).collect()).unwrap())
                .collect();
            let k = SimplicialComplex::from_simplices_pruned(faces);
            let text = write_facets(&k);
            let back = parse_facets(&text, NonMaximalPolicy::Reject).unwrap();
            prop_assert_eq!(&back, &k);
            prop_assert_eq!(write_facets(&back), text);
        }
    }
}
