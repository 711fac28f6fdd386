use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rootstat::algebra::Ring;
use rootstat::incexc::{check_system, SetSystem};
use rootstat::polyring::{resultant_det, resultant_poly, resultant_uni, Shape, ShapedMultiPoly};
use rootstat::Result;

#[derive(Debug, Default, Serialize)]
pub struct ResultantSummary {
    pub pairs: u64,
    pub points: u64,
    pub specialization_failures: u64,
    pub degree_failures: u64,
    pub gcd_failures: u64,
    pub first_failure: Option<String>,
}

impl ResultantSummary {
    pub fn passed(&self) -> bool {
        self.specialization_failures == 0 && self.degree_failures == 0 && self.gcd_failures == 0
    }

    fn fail(&mut self, what: String) {
        self.first_failure.get_or_insert(what);
    }
}

/// Random monic shaped pairs; at every point of F_q^(nvars-1) the
/// specialized resultant polynomial must equal both univariate resultants,
/// and vanish exactly when the specializations share a factor.
pub fn resultant_suite(
    fields: &[u64],
    max_vars: usize,
    max_deg: usize,
    trials: u64,
    seed: u64,
) -> Result<ResultantSummary> {
    let rings = fields.iter().map(|&q| Ring::finite_field(q)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ResultantSummary::default();
    for trial in 0..trials {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let q = ring.cardinality();
        let nvars = rng.gen_range(2..=max_vars);
        let (da, db) = (rng.gen_range(1..=max_deg), rng.gen_range(1..=max_deg));
        let a = ShapedMultiPoly::random(ring, Arc::new(Shape::new(nvars, da)?), &mut rng);
        let b = ShapedMultiPoly::random(ring, Arc::new(Shape::new(nvars, db)?), &mut rng);
        let r = resultant_poly(&a, &b)?;
        out.pairs += 1;
        if r.total_degree().unwrap_or(0) > da * db {
            out.degree_failures += 1;
            out.fail(format!("trial {trial}: deg R exceeds {}", da * db));
        }
        let mut point = vec![0; nvars - 1];
        for idx in 0..q.pow(nvars as u32 - 1) {
            let mut rest = idx;
            for c in point.iter_mut() {
                *c = rest % q;
                rest /= q;
            }
            let mut full = vec![0];
            full.extend_from_slice(&point);
            let (fa, fb) = (a.eval(&point)?, b.eval(&point)?);
            let euclid = resultant_uni(&fa, &fb)?;
            let det = resultant_det(ring, fa.coeffs(), fb.coeffs())?;
            out.points += 1;
            if r.eval(&full)? != euclid || euclid != det {
                out.specialization_failures += 1;
                out.fail(format!("trial {trial}: specialization at {point:?}"));
            }
            if fa.gcd(&fb)?.is_one() == (euclid == 0) {
                out.gcd_failures += 1;
                out.fail(format!("trial {trial}: gcd and resultant disagree at {point:?}"));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Default, Serialize)]
pub struct IncexcSummary {
    pub systems: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

pub fn incexc_suite(systems: impl IntoIterator<Item = SetSystem>) -> IncexcSummary {
    let mut out = IncexcSummary::default();
    for sys in systems {
        out.systems += 1;
        let check = check_system(&sys);
        if !check.passed() {
            out.failures += 1;
            out.first_failure.get_or_insert_with(|| format!("{check:?}"));
        }
    }
    out
}

pub fn random_systems(trials: u64, seed: u64, max_sets: usize, max_universe: usize) -> Vec<SetSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| SetSystem::random(&mut rng, max_sets, max_universe)).collect()
}
