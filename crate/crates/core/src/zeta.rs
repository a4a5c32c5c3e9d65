//! Numerical evaluation of convergent multiple zeta series
//!
//! `ζ(s1, ..., sk) = Σ_{n1 > ... > nk > 0} n1^(-s1) ... nk^(-sk)`
//!
//! Truncations are computed with one running accumulator per depth level, so a
//! cutoff of `N` costs `O(k N)`. Every summand is positive, whatever the signs
//! of the entries. Error control is empirical: the cutoff is doubled until two
//! successive truncations agree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::convergence::ensure_convergent;
use crate::error::{Error, Result};
use crate::free_algebra::lincomb::LinComb;
use crate::shuffle::ext_shuffle;
use crate::Composition;

pub const DEFAULT_START_CUTOFF: u64 = 1 << 10;
pub const DEFAULT_MAX_CUTOFF: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaEstimate {
    pub value: f64,
    /// Largest cutoff `N` used (bound on `n1`).
    pub cutoff: u64,
    /// `|S(N) - S(N/2)|` at the final cutoff, weighted for combinations.
    pub est_error: f64,
    pub converged: bool,
}

impl ZetaEstimate {
    fn exact(value: f64) -> Self {
        ZetaEstimate {
            value,
            cutoff: 0,
            est_error: 0.0,
            converged: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaConfig {
    pub start_cutoff: u64,
    pub max_cutoff: u64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig {
            start_cutoff: DEFAULT_START_CUTOFF,
            max_cutoff: DEFAULT_MAX_CUTOFF,
        }
    }
}

impl ZetaConfig {
    pub fn with_max_cutoff(max_cutoff: u64) -> Self {
        ZetaConfig {
            max_cutoff,
            ..Self::default()
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Incremental truncated nested sum. After `advance_to(N)`, `levels[j]` holds
/// `Σ_{N >= n_{j+1} > ... > n_k > 0}` of the tail product, so `levels[0]` is
/// the truncation at `N`.
#[derive(Debug)]
struct NestedSum {
    exponents: Vec<i32>,
    levels: Vec<CompensatedSum>,
    n: u64,
}

impl NestedSum {
    fn new(c: &Composition) -> Self {
        NestedSum {
            exponents: c
                .entries()
                .iter()
                .map(|&s| i32::try_from(s).expect("entry fits in i32"))
                .collect(),
            levels: vec![CompensatedSum::default(); c.depth()],
            n: 0,
        }
    }

    fn advance_to(&mut self, cutoff: u64) {
        let k = self.exponents.len();
        while self.n < cutoff {
            self.n += 1;
            let x = self.n as f64;
            // Outer levels read the inner sums over n' < n before they absorb n.
            for j in 0..k {
                let inner = if j + 1 < k { self.levels[j + 1].value() } else { 1.0 };
                let term = x.powi(-self.exponents[j]) * inner;
                self.levels[j].add(term);
            }
        }
    }

    fn value(&self) -> f64 {
        self.levels.first().map_or(1.0, CompensatedSum::value)
    }
}

/// Truncation of the series at `n1 <= cutoff`.
pub fn zeta_truncated(c: &Composition, cutoff: u64) -> Result<f64> {
    ensure_convergent(c)?;
    if cutoff < c.depth() as u64 {
        return Err(Error::CutoffTooSmall {
            cutoff,
            depth: c.depth(),
        });
    }
    let mut sum = NestedSum::new(c);
    sum.advance_to(cutoff);
    Ok(sum.value())
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

pub fn zeta(c: &Composition, tol: f64) -> Result<ZetaEstimate> {
    zeta_with(c, tol, &ZetaConfig::default())
}

/// Doubles the cutoff from `config.start_cutoff` until successive truncations
/// differ by less than `tol / 2`, or the next cutoff would pass
/// `config.max_cutoff`. Hitting the cap is reported through `converged`.
pub fn zeta_with(c: &Composition, tol: f64, config: &ZetaConfig) -> Result<ZetaEstimate> {
    ensure_convergent(c)?;
    check_tolerance(tol)?;
    if c.is_unit() {
        return Ok(ZetaEstimate::exact(1.0));
    }
    Ok(Track::new(c, config).estimate(tol, config.max_cutoff))
}

/// Truncations of one series at `start, 2 start, 4 start, ...`, extended on
/// demand.
#[derive(Debug)]
struct Track {
    sum: NestedSum,
    start: u64,
    values: Vec<f64>,
}

impl Track {
    fn new(c: &Composition, config: &ZetaConfig) -> Self {
        Track {
            sum: NestedSum::new(c),
            start: config.start_cutoff.max(c.depth() as u64).max(1),
            values: Vec::new(),
        }
    }

    fn cutoff(&self, i: usize) -> u64 {
        self.start << i
    }

    fn value(&mut self, i: usize) -> f64 {
        while self.values.len() <= i {
            let next = self.cutoff(self.values.len());
            self.sum.advance_to(next);
            self.values.push(self.sum.value());
        }
        self.values[i]
    }

    fn estimate(&mut self, tol: f64, max_cutoff: u64) -> ZetaEstimate {
        let mut prev = self.value(0);
        let mut cutoff = self.cutoff(0);
        let mut est_error = f64::INFINITY;
        let mut i = 0;
        while cutoff.saturating_mul(2) <= max_cutoff {
            i += 1;
            cutoff = self.cutoff(i);
            let value = self.value(i);
            est_error = (value - prev).abs();
            prev = value;
            if est_error < tol / 2.0 {
                return ZetaEstimate {
                    value,
                    cutoff,
                    est_error,
                    converged: true,
                };
            }
        }
        ZetaEstimate {
            value: prev,
            cutoff,
            est_error,
            converged: false,
        }
    }
}

/// Evaluates `zeta_with` per composition, keeping each series' truncations so
/// that a later request at a tighter tolerance resumes where the last one
/// stopped. Safe to share between threads.
#[derive(Debug, Default)]
pub struct ZetaEvaluator {
    config: ZetaConfig,
    tracks: Mutex<HashMap<Composition, Arc<Mutex<Track>>>>,
}

impl ZetaEvaluator {
    pub fn new(config: ZetaConfig) -> Self {
        ZetaEvaluator {
            config,
            tracks: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &ZetaConfig {
        &self.config
    }

    pub fn zeta(&self, c: &Composition, tol: f64) -> Result<ZetaEstimate> {
        ensure_convergent(c)?;
        check_tolerance(tol)?;
        if c.is_unit() {
            return Ok(ZetaEstimate::exact(1.0));
        }
        let track = {
            let mut tracks = self.tracks.lock().expect("track table lock");
            let entry = tracks
                .entry(c.clone())
                .or_insert_with(|| Arc::new(Mutex::new(Track::new(c, &self.config))));
            Arc::clone(entry)
        };
        let mut track = track.lock().expect("track lock");
        Ok(track.estimate(tol, self.config.max_cutoff))
    }

    /// Coefficient-weighted sum of per-term estimates, each at `tol`. Terms are
    /// evaluated in parallel and summed in canonical order.
    pub fn zeta_of_lincomb(&self, x: &LinComb<Composition>, tol: f64) -> Result<ZetaEstimate> {
        check_tolerance(tol)?;
        for c in x.keys() {
            ensure_convergent(c)?;
        }
        let terms: Vec<_> = x.iter().collect();
        let estimates = terms
            .par_iter()
            .map(|(c, _)| self.zeta(c, tol))
            .collect::<Result<Vec<_>>>()?;
        let mut out = ZetaEstimate::exact(0.0);
        for ((_, coef), est) in terms.iter().zip(&estimates) {
            let k = coef.to_f64().expect("finite coefficient");
            let mag = coef.abs().to_f64().expect("finite coefficient");
            out.value += k * est.value;
            out.est_error += mag * est.est_error;
            out.cutoff = out.cutoff.max(est.cutoff);
            out.converged &= est.converged;
        }
        Ok(out)
    }

    /// Compares `ζ(a ⧢ b)` with `ζ(a) ζ(b)`.
    ///
    /// Each side gets half of `tol`: expansion terms are evaluated at `tol`
    /// divided by the coefficient mass of `a ⧢ b`, and each factor at `tol`
    /// divided by twice the other factor's size. Passes iff
    /// `Δ < tol + propagated`, where `propagated` is the first-order
    /// propagation of the per-term `est_error`s through both sides.
    pub fn verify_homomorphism(&self, a: &Composition, b: &Composition, tol: f64) -> Result<HomomorphismReport> {
        ensure_convergent(a)?;
        ensure_convergent(b)?;
        check_tolerance(tol)?;
        let product = ext_shuffle(a, b);
        let mass: f64 = product
            .iter()
            .map(|(_, k)| k.abs().to_f64().expect("finite coefficient"))
            .sum();
        let expansion = self.zeta_of_lincomb(&product, tol / mass.max(1.0))?;
        let rough_a = self.zeta(a, tol)?.value.abs();
        let rough_b = self.zeta(b, tol)?.value.abs();
        let za = self.zeta(a, tol / (4.0 * rough_b.max(1.0)))?;
        let zb = self.zeta(b, tol / (4.0 * rough_a.max(1.0)))?;
        let factored = za.value * zb.value;
        let factored_error =
            za.value.abs() * zb.est_error + zb.value.abs() * za.est_error + za.est_error * zb.est_error;
        let delta = (expansion.value - factored).abs();
        let tolerance = tol + expansion.est_error + factored_error;
        Ok(HomomorphismReport {
            a: a.clone(),
            b: b.clone(),
            product,
            expansion,
            factors: (za, zb),
            factored,
            delta,
            tolerance,
            passed: delta < tolerance,
        })
    }
}

pub fn zeta_of_lincomb(x: &LinComb<Composition>, tol: f64) -> Result<ZetaEstimate> {
    ZetaEvaluator::default().zeta_of_lincomb(x, tol)
}

pub fn verify_homomorphism(a: &Composition, b: &Composition, tol: f64) -> Result<HomomorphismReport> {
    ZetaEvaluator::default().verify_homomorphism(a, b, tol)
}

#[derive(Clone, Debug)]
pub struct HomomorphismReport {
    pub a: Composition,
    pub b: Composition,
    /// `a ⧢ b`.
    pub product: LinComb<Composition>,
    /// `ζ(a ⧢ b)`.
    pub expansion: ZetaEstimate,
    pub factors: (ZetaEstimate, ZetaEstimate),
    /// `ζ(a) ζ(b)`.
    pub factored: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl HomomorphismReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a.entries(),
            "b": self.b.entries(),
            "product": self.product.to_json(),
            "expansion": self.expansion,
            "factors": [self.factors.0, self.factors.1],
            "factored": self.factored,
            "delta": self.delta,
            "tolerance": self.tolerance,
            "passed": self.passed,
        })
    }
}
