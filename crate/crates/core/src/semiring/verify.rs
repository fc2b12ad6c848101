use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteSemiring};

/// Stop recording individual violations past this many; the count keeps going.
const MAX_RECORDED: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdempotent,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
    OneIsIdentity,
    ZeroIsAdditiveIdentity,
    ZeroIsAbsorbing,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AddAssociative => "(x+y)+z = x+(y+z)",
            Axiom::AddCommutative => "x+y = y+x",
            Axiom::AddIdempotent => "x+x = x",
            Axiom::MulAssociative => "(xy)z = x(yz)",
            Axiom::LeftDistributive => "x(y+z) = xy+xz",
            Axiom::RightDistributive => "(x+y)z = xz+yz",
            Axiom::OneIsIdentity => "1x = x1 = x",
            Axiom::ZeroIsAdditiveIdentity => "0+x = x",
            Axiom::ZeroIsAbsorbing => "0x = x0 = 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// The elements substituted for x, y, z (as many as the law uses).
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    /// The first violations found, in lexicographic order of the witnesses
    /// within each law.
    pub violations: Vec<AxiomViolation>,
    /// Total number of violating instances, including unrecorded ones.
    pub total: u64,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.total == 0
    }

    fn record(&mut self, axiom: Axiom, witness: &[Elem]) {
        self.total += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(AxiomViolation {
                axiom,
                witness: witness.to_vec(),
            });
        }
    }

    pub fn describe(&self, s: &FiniteSemiring) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                let names: Vec<&str> = v.witness.iter().map(|&x| s.name(x)).collect();
                format!("{} fails at ({})", v.axiom, names.join(", "))
            })
            .collect()
    }
}

/// Checks every ai-semiring law by exhaustion, plus the laws of whichever
/// constants are designated.
///
/// The report is empty iff all laws hold. Tables are total by construction
/// of [`FiniteSemiring`], so structural problems never reach this point.
pub fn verify_semiring_axioms(s: &FiniteSemiring) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = s.len();

    for x in 0..n {
        if s.add(x, x) != x {
            report.record(Axiom::AddIdempotent, &[x]);
        }
        for y in 0..n {
            if s.add(x, y) != s.add(y, x) {
                report.record(Axiom::AddCommutative, &[x, y]);
            }
        }
    }

    for x in 0..n {
        let add_x = s.add_row(x);
        let mul_x = s.mul_row(x);
        for y in 0..n {
            let xy_add = add_x[y];
            let xy_mul = mul_x[y];
            let add_y = s.add_row(y);
            let mul_y = s.mul_row(y);
            let add_xy = s.add_row(xy_add);
            let mul_xy = s.mul_row(xy_mul);
            for z in 0..n {
                if add_xy[z] != add_x[add_y[z]] {
                    report.record(Axiom::AddAssociative, &[x, y, z]);
                }
                if mul_xy[z] != mul_x[mul_y[z]] {
                    report.record(Axiom::MulAssociative, &[x, y, z]);
                }
                if mul_x[add_y[z]] != s.add(xy_mul, mul_x[z]) {
                    report.record(Axiom::LeftDistributive, &[x, y, z]);
                }
                if s.mul(xy_add, z) != s.add(s.mul(x, z), mul_y[z]) {
                    report.record(Axiom::RightDistributive, &[x, y, z]);
                }
            }
        }
    }

    if let Some(one) = s.one() {
        for x in 0..n {
            if s.mul(one, x) != x || s.mul(x, one) != x {
                report.record(Axiom::OneIsIdentity, &[x]);
            }
        }
    }
    if let Some(zero) = s.zero() {
        for x in 0..n {
            if s.add(zero, x) != x {
                report.record(Axiom::ZeroIsAdditiveIdentity, &[x]);
            }
            if s.mul(zero, x) != zero || s.mul(x, zero) != zero {
                report.record(Axiom::ZeroIsAbsorbing, &[x]);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s7_and_b21_pass() {
        assert!(verify_semiring_axioms(&fixtures::s7()).is_valid());
        assert!(verify_semiring_axioms(&fixtures::b21()).is_valid());
    }

    #[test]
    fn mutated_s7_is_caught() {
        // add(1, a) := 1, and symmetric so commutativity still holds.
        let s7 = fixtures::s7();
        let names = s7.names().to_vec();
        let add = |x: usize, y: usize| {
            if (x, y) == (0, 1) || (x, y) == (1, 0) {
                0
            } else {
                s7.add(x, y)
            }
        };
        let broken = FiniteSemiring::from_fn(names, add, |x, y| s7.mul(x, y)).unwrap();
        let report = verify_semiring_axioms(&broken);
        assert!(!report.is_valid());
        let axioms: Vec<Axiom> = report.violations.iter().map(|v| v.axiom).collect();
        // 1+a = 1 makes a <= 1 while 1*a = a and a*a = 0 break distributivity:
        // a(1+a) = a*1 = a but a*1 + a*a = a + 0 = 0.
        assert!(axioms.contains(&Axiom::LeftDistributive));
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::LeftDistributive && v.witness == vec![1, 0, 1]));
    }

    #[test]
    fn designated_constants_are_checked() {
        let s7 = fixtures::s7();
        // "a" is not an identity.
        let wrong = s7.clone().with_constants(Some(1), None).unwrap();
        let report = verify_semiring_axioms(&wrong);
        assert!(report.violations.iter().any(|v| v.axiom == Axiom::OneIsIdentity));
        // The top of a flat semiring is absorbing but not an additive identity.
        let wrong = s7.with_constants(None, Some(2)).unwrap();
        let report = verify_semiring_axioms(&wrong);
        assert!(report
            .violations
            .iter()
            .all(|v| v.axiom == Axiom::ZeroIsAdditiveIdentity));
        assert!(!report.is_valid());
    }
}
