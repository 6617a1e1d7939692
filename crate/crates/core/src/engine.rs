//! Evaluation context: precision plus memoised intermediate values.

use rug::float::Constant;
use rug::{Float, Rational};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::combinatorics::bernoulli_number;
use crate::error::Result;
use crate::precision::{Approx, PrecisionCtx};
use crate::quadrature::IntegralResult;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum ScalarKey {
    Stieltjes(u32, Rational),
    ZetaDerivInt(u32, u32),
    Digamma(Rational),
    GammaA(u32, u32),
    EtaH(u32),
    EtaHMinus(u32),
    HalfA(u32),
    HalfB(u32),
    Mellin(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum MomentFamily {
    /// i_{m,k}
    Kernel(u32),
    /// J_m
    LogMinus,
    /// K_m
    LogPlus,
}

type MomentSlot = Arc<Mutex<Option<Arc<Vec<IntegralResult>>>>>;

/// Shared by every computation at one precision. Cheap to query concurrently;
/// each cached item is computed deterministically from its key alone.
pub struct Engine {
    ctx: PrecisionCtx,
    scalars: Mutex<HashMap<ScalarKey, Approx>>,
    moments: Mutex<HashMap<(MomentFamily, u32), MomentSlot>>,
    inv_gamma: Mutex<Option<Arc<Vec<Approx>>>>,
    bernoulli: Mutex<Vec<Float>>,
}

impl Engine {
    pub fn new(ctx: PrecisionCtx) -> Self {
        Self {
            ctx,
            scalars: Mutex::new(HashMap::new()),
            moments: Mutex::new(HashMap::new()),
            inv_gamma: Mutex::new(None),
            bernoulli: Mutex::new(Vec::new()),
        }
    }

    pub fn with_digits(digits: u32) -> Self {
        Self::new(PrecisionCtx::digits(digits))
    }

    pub fn ctx(&self) -> &PrecisionCtx {
        &self.ctx
    }

    pub fn prec(&self) -> u32 {
        self.ctx.working_bits()
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec(), v)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), Constant::Pi)
    }

    pub fn ln2(&self) -> Float {
        Float::with_val(self.prec(), Constant::Log2)
    }

    /// Euler's constant from MPFR.
    pub fn euler_gamma(&self) -> Approx {
        Approx::rounded(Float::with_val(self.prec(), Constant::Euler))
    }

    /// Bernoulli numbers B_0..=B_n at working precision.
    pub fn bernoulli_floats(&self, n: usize) -> Vec<Float> {
        let mut cache = self.bernoulli.lock().unwrap();
        while cache.len() <= n {
            let b = bernoulli_number(cache.len() as u32);
            cache.push(Float::with_val(self.prec(), &b));
        }
        cache[..=n].to_vec()
    }

    pub(crate) fn memo<F>(&self, key: ScalarKey, f: F) -> Result<Approx>
    where
        F: FnOnce() -> Result<Approx>,
    {
        if let Some(v) = self.scalars.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.scalars.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub(crate) fn memo_moments<F>(
        &self,
        family: MomentFamily,
        bucket: u32,
        f: F,
    ) -> Result<Arc<Vec<IntegralResult>>>
    where
        F: FnOnce() -> Result<Vec<IntegralResult>>,
    {
        // one lock per key: concurrent callers wait for the first computation
        let slot = self
            .moments
            .lock()
            .unwrap()
            .entry((family, bucket))
            .or_default()
            .clone();
        let mut guard = slot.lock().unwrap();
        if let Some(v) = guard.as_ref() {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        *guard = Some(v.clone());
        Ok(v)
    }

    pub(crate) fn cached_inv_gamma(&self) -> Option<Arc<Vec<Approx>>> {
        self.inv_gamma.lock().unwrap().clone()
    }

    pub(crate) fn store_inv_gamma(&self, v: Arc<Vec<Approx>>) {
        let mut slot = self.inv_gamma.lock().unwrap();
        let longer = slot.as_ref().map_or(true, |old| old.len() < v.len());
        if longer {
            *slot = Some(v);
        }
    }
}
