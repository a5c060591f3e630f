//! Text syntax for acceptance sets: `[0,1/3]`, `(1/2,1]`, `{0}`, and unions
//! joined with `u`, e.g. `[0,0.1] u [0.9,1]`.

use qcir_core::analysis::{AcceptanceCriterion, Interval, IntervalSet};

use crate::dsl::parse_real;

fn parse_interval(s: &str) -> Result<Interval, String> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
        let x = parse_real(inner.trim())?;
        return Interval::point(x).map_err(|e| e.to_string());
    }
    let lo_closed = match s.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(format!("`{s}` does not start with `[`, `(` or `{{`")),
    };
    let hi_closed = match s.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(format!("`{s}` does not end with `]` or `)`")),
    };
    let inner = &s[1..s.len() - 1];
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| format!("`{s}` needs two endpoints separated by `,`"))?;
    Interval::new(parse_real(lo.trim())?, parse_real(hi.trim())?, lo_closed, hi_closed).map_err(|e| e.to_string())
}

pub fn parse_interval_set(s: &str) -> Result<IntervalSet, String> {
    let s = s.trim();
    if s == "{}" || s.is_empty() {
        return Ok(IntervalSet::default());
    }
    s.split(['u', 'U', '∪'])
        .map(parse_interval)
        .collect::<Result<Vec<_>, _>>()
        .map(IntervalSet::new)
}

pub fn parse_criterion(reject: &str, accept: &str) -> Result<AcceptanceCriterion, String> {
    AcceptanceCriterion::new(parse_interval_set(reject)?, parse_interval_set(accept)?).map_err(|e| e.to_string())
}
