//! Three-valued verdicts with certificates, and node budgets for searches.

use std::fmt;

use crate::complex::Simplex;
use crate::decompose::{ConstructionTree, DecisionTree, MorseMatching};
use crate::label::VertexLabel;

/// Default node budget for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    /// The search ran out of budget before deciding.
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        })
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    None,
    Shelling(Vec<Simplex>),
    /// Shedding tree (vertex-decomposability) or decision tree (non-evasiveness).
    Tree(DecisionTree),
    Construction(ConstructionTree),
    Matching(MorseMatching),
    Apex(VertexLabel),
    /// A necessary condition that fails, or the reason the search gave up.
    Obstruction(String),
    /// A face whose link has homology below its top dimension.
    Face { face: Simplex, dimension: isize },
    /// A predicted facet that does not pass its sign or ridge check.
    Facet { index: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyVerdict {
    pub status: Status,
    pub certificate: Certificate,
    pub nodes_explored: u64,
}

impl PropertyVerdict {
    pub fn holds(certificate: Certificate, nodes_explored: u64) -> Self {
        PropertyVerdict { status: Status::Holds, certificate, nodes_explored }
    }

    pub fn fails(certificate: Certificate, nodes_explored: u64) -> Self {
        PropertyVerdict { status: Status::Fails, certificate, nodes_explored }
    }

    pub fn unknown(nodes_explored: u64) -> Self {
        PropertyVerdict {
            status: Status::Unknown,
            certificate: Certificate::Obstruction("budget exhausted".into()),
            nodes_explored,
        }
    }

    pub fn obstruction(reason: impl Into<String>) -> Self {
        Self::fails(Certificate::Obstruction(reason.into()), 0)
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_decided(&self) -> bool {
        self.status != Status::Unknown
    }
}

/// Counts search nodes against a limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

/// Raised (internally) when a budget runs out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn tick(&mut self) -> Result<(), Exhausted> {
        if self.used >= self.limit {
            return Err(Exhausted);
        }
        self.used += 1;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}
