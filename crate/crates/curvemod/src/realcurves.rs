//! Combinatorics of real plane curves: Harnack's bound, the oval/non-oval
//! parity rule and nesting trees (dual graphs) of user-supplied topology.

use crate::arith::field::binomial;
use crate::Error;
use serde::{Deserialize, Serialize};

/// An oval with the ovals directly inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Oval(pub Vec<Oval>);

impl Oval {
    fn count(&self) -> usize {
        1 + self.0.iter().map(Oval::count).sum::<usize>()
    }

    fn canonical(&self) -> String {
        let mut kids: Vec<String> = self.0.iter().map(Oval::canonical).collect();
        kids.sort();
        format!("({})", kids.concat())
    }

    fn depth(&self) -> usize {
        1 + self.0.iter().map(Oval::depth).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum NonOvalField {
    Flag(bool),
    Count(u32),
}

/// Nesting forest of ovals in the outer region. The root region carries a
/// loop for each non-oval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "GraphJson", into = "GraphJson")]
pub struct DualGraph {
    pub root: Vec<Oval>,
    pub non_ovals: u32,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    root: Vec<Oval>,
    #[serde(rename = "nonOval", default = "no_non_oval")]
    non_oval: NonOvalField,
}

fn no_non_oval() -> NonOvalField {
    NonOvalField::Flag(false)
}

impl From<GraphJson> for DualGraph {
    fn from(g: GraphJson) -> Self {
        let non_ovals = match g.non_oval {
            NonOvalField::Flag(b) => b as u32,
            NonOvalField::Count(c) => c,
        };
        DualGraph { root: g.root, non_ovals }
    }
}

impl From<DualGraph> for GraphJson {
    fn from(g: DualGraph) -> Self {
        let non_oval = if g.non_ovals <= 1 { NonOvalField::Flag(g.non_ovals == 1) } else { NonOvalField::Count(g.non_ovals) };
        GraphJson { root: g.root, non_oval }
    }
}

impl DualGraph {
    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn ovals(&self) -> usize {
        self.root.iter().map(Oval::count).sum()
    }

    pub fn components(&self) -> usize {
        self.ovals() + self.non_ovals as usize
    }

    /// Longest chain of nested ovals.
    pub fn depth(&self) -> usize {
        self.root.iter().map(Oval::depth).max().unwrap_or(0)
    }

    /// Sorted recursive encoding; equal iff the rooted trees are isomorphic.
    pub fn canonical(&self) -> String {
        let mut kids: Vec<String> = self.root.iter().map(Oval::canonical).collect();
        kids.sort();
        format!("{}[{}]", "N".repeat(self.non_ovals as usize), kids.concat())
    }
}

/// C(n-1, 2) + 1
pub fn harnack_bound(n: u64) -> Result<u64, Error> {
    if n < 1 {
        return Err(Error::DegreeTooLow { need: 1, got: 0 });
    }
    Ok(binomial(n - 1, 2) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason")]
pub enum Validity {
    Valid,
    Violation(String),
}

/// Necessary conditions only; the first violated rule is reported.
pub fn validate_arrangement(g: &DualGraph, n: u64) -> Result<Validity, Error> {
    let bound = harnack_bound(n)?;
    let v = |s: String| Ok(Validity::Violation(s));
    if g.non_ovals > 1 {
        return v("two non-ovals must intersect".into());
    }
    if n % 2 == 1 && g.non_ovals == 0 {
        return v(format!("degree {n} is odd, so the curve has exactly one non-oval"));
    }
    if n.is_multiple_of(2) && g.non_ovals == 1 {
        return v(format!("degree {n} is even, so every component is an oval"));
    }
    if g.components() as u64 > bound {
        return v(format!("{} components exceed the bound {bound}", g.components()));
    }
    if g.components() == 0 {
        return v("empty arrangement".into());
    }
    Ok(Validity::Valid)
}

pub fn isotopy_equal(a: &DualGraph, b: &DualGraph) -> bool {
    a.canonical() == b.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> DualGraph {
        DualGraph::from_json(s).unwrap()
    }

    #[test]
    fn bounds() {
        let b: Vec<u64> = (1..=6).map(|n| harnack_bound(n).unwrap()).collect();
        assert_eq!(b, vec![1, 1, 2, 4, 7, 11]);
    }

    #[test]
    fn validation() {
        let seven = g(r#"{"root": [[[]], [], [], [], [], []], "nonOval": false}"#);
        assert_eq!(seven.components(), 7);
        assert_eq!(validate_arrangement(&seven, 6).unwrap(), Validity::Valid);
        let five = g(r#"{"root": [[], [], [], [], []], "nonOval": true}"#);
        assert_eq!(validate_arrangement(&five, 5).unwrap(), Validity::Valid);
        let two = g(r#"{"root": [], "nonOval": 2}"#);
        assert_eq!(validate_arrangement(&two, 5).unwrap(), Validity::Violation("two non-ovals must intersect".into()));
        assert!(matches!(validate_arrangement(&five, 6).unwrap(), Validity::Violation(_)));
        assert!(matches!(validate_arrangement(&seven, 5).unwrap(), Validity::Violation(_)));
        let three = g(r#"{"root": [[], []], "nonOval": true}"#);
        assert!(matches!(validate_arrangement(&three, 3).unwrap(), Validity::Violation(_)));
    }

    #[test]
    fn isotopy() {
        let nested = g(r#"{"root": [[[]]]}"#);
        let disjoint = g(r#"{"root": [[], []]}"#);
        assert!(isotopy_equal(&nested, &nested));
        assert!(!isotopy_equal(&nested, &disjoint));
        let a = g(r#"{"root": [[[], [[]]], []]}"#);
        let b = g(r#"{"root": [[], [[[]], []]]}"#);
        assert!(isotopy_equal(&a, &b));
        assert_eq!(g(&a.to_json()), a);
        assert!(!isotopy_equal(&disjoint, &g(r#"{"root": [[], []], "nonOval": true}"#)));
    }
}
