//! Vertex labels.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An opaque, non-empty vertex name without whitespace or `#`.
///
/// Labels order "naturally": maximal digit runs compare by numeric value, so
/// `2 < 10` and `v^2 < v^10`. Labels that tie numerically (`01` vs `1`) fall
/// back to plain byte order, which keeps the order total and consistent with
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexLabel(String);

impl VertexLabel {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidLabel("empty label".into()));
        }
        if name.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::InvalidLabel(format!("{name:?} contains whitespace or '#'")));
        }
        Ok(VertexLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Appends `suffix` to the label.
    pub fn suffixed(&self, suffix: &str) -> VertexLabel {
        VertexLabel(format!("{}{}", self.0, suffix))
    }

    /// Label of the `index`-th copy of this vertex, rendered `base^index`.
    pub fn copy(&self, index: usize) -> VertexLabel {
        VertexLabel(format!("{}^{}", self.0, index))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl std::str::FromStr for VertexLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        VertexLabel::new(s)
    }
}

impl From<usize> for VertexLabel {
    fn from(n: usize) -> Self {
        VertexLabel(n.to_string())
    }
}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0).then_with(|| self.0.cmp(&other.0))
    }
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let la = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let lb = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let da = trim_zeros(&a[..la]);
                let db = trim_zeros(&b[..lb]);
                let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[la..];
                b = &b[lb..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let start = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[start..]
}
