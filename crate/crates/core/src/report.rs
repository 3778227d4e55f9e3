//! Named inequality instances and their verdicts.

use std::fmt;

use serde::Serialize;

/// Float slack below which a proved inequality is re-examined exactly.
pub const NEAR_VIOLATION: f64 = 1e-9;

/// Relative tolerance applied when no exact recheck is available.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Float slack was marginal; exact arithmetic confirmed the inequality.
    PassAfterExactRecheck,
    /// Slightly negative float slack within the relative tolerance, with no
    /// exact recheck available.
    PassWithinTolerance,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::PassAfterExactRecheck => "pass (exact recheck)",
            Verdict::PassWithinTolerance => "pass (within tolerance)",
            Verdict::Fail => "FAIL",
        })
    }
}

/// An instance of `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    pub verdict: Verdict,
}

impl BoundReport {
    /// Judges `lhs ≤ rhs` in floating point only.
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::with_recheck(name, lhs, rhs, || None)
    }

    /// Judges `lhs ≤ rhs`; when the float slack is marginal or negative,
    /// `recheck` may settle the question exactly (`Some(holds)`) or decline
    /// (`None`).
    pub fn with_recheck(
        name: impl Into<String>,
        lhs: f64,
        rhs: f64,
        recheck: impl FnOnce() -> Option<bool>,
    ) -> Self {
        let slack = rhs - lhs;
        let verdict = if slack.is_nan() {
            Verdict::Fail
        } else if slack >= NEAR_VIOLATION {
            Verdict::Pass
        } else {
            match recheck() {
                Some(true) => Verdict::PassAfterExactRecheck,
                Some(false) => Verdict::Fail,
                None if slack >= 0.0 => Verdict::Pass,
                None => {
                    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
                    if -slack <= RELATIVE_TOLERANCE * scale {
                        Verdict::PassWithinTolerance
                    } else {
                        Verdict::Fail
                    }
                }
            }
        };
        BoundReport { name: name.into(), lhs, rhs, slack, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<48} lhs={:<14.8e} rhs={:<14.8e} slack={:<11.3e} {}",
            self.name, self.lhs, self.rhs, self.slack, self.verdict
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert_eq!(BoundReport::new("a", 1.0, 2.0).verdict, Verdict::Pass);
        assert_eq!(BoundReport::new("b", 2.0, 1.0).verdict, Verdict::Fail);
        assert_eq!(BoundReport::new("c", 1.0 + 1e-12, 1.0).verdict, Verdict::PassWithinTolerance);
        assert_eq!(
            BoundReport::with_recheck("d", 1.0 + 1e-12, 1.0, || Some(true)).verdict,
            Verdict::PassAfterExactRecheck
        );
        assert_eq!(BoundReport::with_recheck("e", 1.0, 1.0, || Some(false)).verdict, Verdict::Fail);
        assert_eq!(BoundReport::new("f", f64::NAN, 1.0).verdict, Verdict::Fail);
    }
}
