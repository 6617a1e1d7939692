//! Evaluation of a batch of constants with precision escalation and caching.

use std::sync::OnceLock;

use hzeta::engine::Engine;
use hzeta::key::ConstantId;
use rayon::prelude::*;
use rug::Float;

use crate::cache::{Cache, CacheEntry};
use crate::render::{bound_fits, bound_string, Decimal};
use crate::CliError;

const FIRST_EXTRA: u32 = 5;
const STEP: u32 = 15;
const ATTEMPTS: usize = 4;

/// One evaluated constant, ready to print.
#[derive(Debug, Clone)]
pub struct Row {
    pub id: ConstantId,
    pub digits: u32,
    pub value: Decimal,
    pub error_bound: Float,
}

impl Row {
    pub fn value_string(&self) -> String {
        self.value.truncated(self.digits as usize)
    }

    pub fn bound_string(&self) -> String {
        bound_string(&self.error_bound)
    }
}

struct Ladder {
    digits: u32,
    engines: [OnceLock<Engine>; ATTEMPTS],
}

impl Ladder {
    fn new(digits: u32) -> Self {
        Ladder {
            digits,
            engines: Default::default(),
        }
    }

    fn engine(&self, attempt: usize) -> &Engine {
        self.engines[attempt]
            .get_or_init(|| Engine::with_digits(self.digits + FIRST_EXTRA + STEP * attempt as u32))
    }
}

fn compute(id: &ConstantId, ladder: &Ladder) -> Result<(Row, u32), CliError> {
    let d = ladder.digits;
    let mut last = None;
    for attempt in 0..ATTEMPTS {
        let engine = ladder.engine(attempt);
        let approx = id.evaluate(engine).map_err(|source| CliError::Eval {
            key: id.to_string(),
            source,
        })?;
        let stored = engine.ctx().target_digits();
        let value = Decimal::from_float(&approx.value, stored as usize);
        if bound_fits(&value, &approx.error_bound, d as usize) {
            let row = Row {
                id: id.clone(),
                digits: d,
                value,
                error_bound: approx.error_bound,
            };
            return Ok((row, stored));
        }
        last = Some(approx.error_bound);
    }
    Err(CliError::Precision {
        key: id.to_string(),
        digits: d,
        bound: last.map(|b| bound_string(&b)).unwrap_or_default(),
    })
}

fn from_cache(entry: &CacheEntry, id: &ConstantId, digits: u32) -> Option<Row> {
    let value = Decimal::parse(&entry.value)?;
    let bound = Float::parse(&entry.error_bound).ok()?;
    let bound = Float::with_val(64, bound);
    if !bound_fits(&value, &bound, digits as usize) {
        return None;
    }
    Some(Row {
        id: id.clone(),
        digits,
        value,
        error_bound: bound,
    })
}

/// Evaluates `ids` at `digits` significant digits, reading and updating
/// `cache` when one is given. Rows come back in the order of `ids`.
pub fn evaluate_all(
    ids: &[ConstantId],
    digits: u32,
    mut cache: Option<&mut Cache>,
) -> Result<Vec<Row>, CliError> {
    let mut rows: Vec<Option<Row>> = ids
        .iter()
        .map(|id| {
            let c = cache.as_deref()?;
            from_cache(c.get(id, digits)?, id, digits)
        })
        .collect();
    let ladder = Ladder::new(digits);
    let missing: Vec<usize> = (0..ids.len()).filter(|&i| rows[i].is_none()).collect();
    let fresh: Vec<Result<(Row, u32), CliError>> =
        missing.par_iter().map(|&i| compute(&ids[i], &ladder)).collect();
    for (i, r) in missing.into_iter().zip(fresh) {
        let (row, stored) = r?;
        if let Some(c) = cache.as_deref_mut() {
            let entry = CacheEntry::new(&row.id, stored, row.value.stored(), row.bound_string());
            c.insert(row.id.clone(), entry)?;
        }
        rows[i] = Some(row);
    }
    Ok(rows.into_iter().map(|r| r.expect("every row filled")).collect())
}
