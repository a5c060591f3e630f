//! Acceptance criteria: disjoint reject/accept sets of probabilities.

use alloc::vec::Vec;
use core::fmt;

use crate::error::AnalysisError;

/// An interval in `[0,1]` with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self, AnalysisError> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        if !in_unit(lo) || !in_unit(hi) {
            return Err(AnalysisError::BadInterval(alloc::format!(
                "endpoints {lo}, {hi} outside [0,1]"
            )));
        }
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Err(AnalysisError::BadInterval(alloc::format!("empty interval {lo}..{hi}")));
        }
        Ok(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self, AnalysisError> {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: f64) -> Result<Self, AnalysisError> {
        Self::closed(x, x)
    }

    pub fn contains(&self, p: f64) -> bool {
        let above = if self.lo_closed { p >= self.lo } else { p > self.lo };
        let below = if self.hi_closed { p <= self.hi } else { p < self.hi };
        above && below
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        let (lo, lo_closed) = match self.lo.partial_cmp(&other.lo) {
            Some(core::cmp::Ordering::Greater) => (self.lo, self.lo_closed),
            Some(core::cmp::Ordering::Less) => (other.lo, other.lo_closed),
            _ => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.partial_cmp(&other.hi) {
            Some(core::cmp::Ordering::Less) => (self.hi, self.hi_closed),
            Some(core::cmp::Ordering::Greater) => (other.hi, other.hi_closed),
            _ => (self.hi, self.hi_closed && other.hi_closed),
        };
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.lo, self.hi)
    }
}

/// A finite union of intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet(Vec<Interval>);

impl IntervalSet {
    pub fn new(parts: Vec<Interval>) -> Self {
        IntervalSet(parts)
    }

    pub fn parts(&self) -> &[Interval] {
        &self.0
    }

    pub fn contains(&self, p: f64) -> bool {
        self.0.iter().any(|i| i.contains(p))
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        self.0.iter().any(|a| other.0.iter().any(|b| a.intersects(b)))
    }
}

impl From<Interval> for IntervalSet {
    fn from(i: Interval) -> Self {
        IntervalSet(alloc::vec![i])
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceCriterion {
    reject: IntervalSet,
    accept: IntervalSet,
}

impl AcceptanceCriterion {
    pub fn new(reject: IntervalSet, accept: IntervalSet) -> Result<Self, AnalysisError> {
        if reject.intersects(&accept) {
            return Err(AnalysisError::Overlap);
        }
        Ok(AcceptanceCriterion { reject, accept })
    }

    pub fn reject(&self) -> &IntervalSet {
        &self.reject
    }

    pub fn accept(&self) -> &IntervalSet {
        &self.accept
    }

    /// Named criteria for the classical and quantum class tables.
    pub fn preset(name: &str) -> Option<Self> {
        let zero = || IntervalSet::from(Interval::point(0.0).unwrap());
        let (reject, accept) = match name.to_ascii_uppercase().as_str() {
            "P" | "EQP" => (zero(), Interval::point(1.0).unwrap().into()),
            "NP" | "CEQP" => (zero(), Interval::new(0.0, 1.0, false, true).unwrap().into()),
            "RP" | "RQP" => (zero(), Interval::new(0.5, 1.0, false, true).unwrap().into()),
            "BPP" | "BQP" => (
                Interval::closed(0.0, 1.0 / 3.0).unwrap().into(),
                Interval::closed(2.0 / 3.0, 1.0).unwrap().into(),
            ),
            "PP" => (
                Interval::closed(0.0, 0.5).unwrap().into(),
                Interval::new(0.5, 1.0, false, true).unwrap().into(),
            ),
            _ => return None,
        };
        Some(AcceptanceCriterion::new(reject, accept).expect("preset sets are disjoint"))
    }

    pub const PRESETS: [&'static str; 9] = ["P", "NP", "RP", "BPP", "PP", "EQP", "CEQP", "RQP", "BQP"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reject,
    Accept,
    Undefined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reject => "reject",
            Verdict::Accept => "accept",
            Verdict::Undefined => "undefined",
        })
    }
}

/// Classifies the probability of seeing 1.
pub fn evaluate_acceptance(p: f64, crit: &AcceptanceCriterion) -> Result<Verdict, AnalysisError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(AnalysisError::ProbabilityRange(p));
    }
    Ok(if crit.accept.contains(p) {
        Verdict::Accept
    } else if crit.reject.contains(p) {
        Verdict::Reject
    } else {
        Verdict::Undefined
    })
}
