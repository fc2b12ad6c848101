//! Outcome of a construct-and-verify run.

use serde::{Deserialize, Serialize};

use crate::semiring::{verify_canonical_map, verify_semiring_axioms, Elem, FiniteSemiring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub title: String,
    /// The constructed algebra.
    pub semiring: FiniteSemiring,
    /// What the construction is compared against, if anything.
    pub target: Option<FiniteSemiring>,
    /// Canonical map from `semiring` to `target`.
    pub map: Option<Vec<Elem>>,
    pub claims: Vec<Claim>,
}

impl WitnessReport {
    pub fn new(title: impl Into<String>, semiring: FiniteSemiring) -> Self {
        WitnessReport {
            title: title.into(),
            semiring,
            target: None,
            map: None,
            claims: Vec::new(),
        }
    }

    pub fn claim(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) -> bool {
        self.claims.push(Claim {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
        holds
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.holds)
    }

    pub fn find(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// Re-runs the axiom and map verifiers on the stored data. Returns the
    /// discrepancies; a report built by this crate comes back empty.
    pub fn recheck(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let report = verify_semiring_axioms(&self.semiring);
        if !report.is_valid() {
            problems.push(format!("constructed semiring: {}", report.describe(&self.semiring).join("; ")));
        }
        if let Some(t) = &self.target {
            let report = verify_semiring_axioms(t);
            if !report.is_valid() {
                problems.push(format!("target: {}", report.describe(t).join("; ")));
            }
            if let Some(map) = &self.map {
                match verify_canonical_map(&self.semiring, t, map) {
                    Ok(v) => {
                        if !v.homomorphism {
                            problems.push("map is not a homomorphism".into());
                        }
                        if let Some(c) = self.find("isomorphism") {
                            if c.holds != v.is_isomorphism() {
                                problems.push("isomorphism claim disagrees with the map".into());
                            }
                        }
                    }
                    Err(e) => problems.push(e.to_string()),
                }
            }
        }
        problems
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.title);
        out.push_str(&self.semiring.to_text());
        if let Some(t) = &self.target {
            out.push_str("# target\n");
            for line in t.to_text().lines() {
                out.push_str("#   ");
                out.push_str(line);
                out.push('\n');
            }
        }
        if let (Some(map), Some(t)) = (&self.map, &self.target) {
            out.push_str("# map:");
            for (x, &y) in map.iter().enumerate() {
                out.push_str(&format!(" {}->{}", self.semiring.name(x), t.name(y)));
            }
            out.push('\n');
        }
        out.push_str("# claims\n");
        for c in &self.claims {
            let mark = if c.holds { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("#   {mark} {}\n", c.name));
            } else {
                out.push_str(&format!("#   {mark} {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn text_parses_back_as_the_semiring() {
        let mut r = WitnessReport::new("identity", fixtures::s7());
        r.target = Some(fixtures::s7());
        r.map = Some(vec![0, 1, 2]);
        r.claim("isomorphism", true, "");
        assert!(r.passed());
        assert!(r.recheck().is_empty());
        let back = FiniteSemiring::from_text(&r.to_text()).unwrap();
        assert_eq!(back, fixtures::s7());
    }

    #[test]
    fn recheck_catches_a_false_claim() {
        let mut r = WitnessReport::new("bad", fixtures::s7());
        r.target = Some(fixtures::s7());
        r.map = Some(vec![1, 1, 1]);
        r.claim("isomorphism", true, "");
        assert_eq!(r.recheck().len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let mut r = WitnessReport::new("j", fixtures::b21());
        r.claim("flat", false, "a + b is not the top");
        let json = serde_json::to_string(&r).unwrap();
        let back: WitnessReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
    }
}
