//! Weak and strong Lefschetz verdicts from seeded random trials, with
//! deterministic failure certificates where the Betti numbers force one.

use serde::Serialize;

use super::{
    build_integer_reduction, build_reduction, field_kind, integer_lefschetz_element,
    random_lefschetz_element, GradedQuotient, QuotientLimits, Ring,
};
use crate::betti::{hochster_betti, hochster_cost, omega_lower_bound};
use crate::criteria::{bigint_string, f_value};
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::grid::{face_counts, GridShape};
use crate::linalg::derive_seed;
use crate::simplicial::h_vector;
use crate::with_field;
use crate::{Fp61, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Property {
    Wlp,
    Slp,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Wlp => "WLP",
            Property::Slp => "SLP",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Some draw has maximal rank at every required position.
    HoldsCertified,
    /// A Betti-number obstruction rules out maximal rank for every choice.
    FailsCertified,
    /// Every trial, over at least two primes, is rank deficient at the same positions.
    FailsProbabilistic,
    /// Trials disagree about where the rank drops.
    Inconclusive,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::HoldsCertified => "holds_certified",
            Outcome::FailsCertified => "fails_certified",
            Outcome::FailsProbabilistic => "fails_probabilistic",
            Outcome::Inconclusive => "inconclusive",
        }
    }

    pub fn holds(self) -> bool {
        self == Outcome::HoldsCertified
    }

    pub fn fails(self) -> bool {
        matches!(self, Outcome::FailsCertified | Outcome::FailsProbabilistic)
    }
}

/// Rank of `×L^s : A_j -> A_{j+s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub j: usize,
    pub s: usize,
    pub dim_j: usize,
    pub dim_js: usize,
    pub rank: usize,
    pub maximal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trial {
    pub index: usize,
    pub field: FieldKind,
    /// Prime used to evaluate an integer draw for a rational trial.
    pub modulus: Option<u64>,
    pub seed: u64,
    pub hilbert_function: Vec<usize>,
    pub checks: Vec<RankCheck>,
    /// `(j, s)` positions without maximal rank.
    pub deficient: Vec<(usize, usize)>,
}

impl Trial {
    fn new(
        index: usize,
        field: FieldKind,
        modulus: Option<u64>,
        seed: u64,
        hilbert_function: Vec<usize>,
        checks: Vec<RankCheck>,
    ) -> Self {
        let deficient = checks
            .iter()
            .filter(|c| !c.maximal)
            .map(|c| (c.j, c.s))
            .collect();
        Trial {
            index,
            field,
            modulus,
            seed,
            hilbert_function,
            checks,
            deficient,
        }
    }

    pub fn all_maximal(&self) -> bool {
        self.deficient.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// `dim A_j <= dim A_{j+1}` but the socle in degree `j` is nonzero.
    Injectivity,
    /// `dim A_j - dim Soc_j < dim A_{j+1}`.
    Surjectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiSource {
    /// `Σ_a dim H̃_{t-2}(Ω_a)` over Q.
    OmegaBound,
    /// Full Hochster sum over Q.
    HochsterExact,
}

/// Deterministic reason why `×L : A_j -> A_{j+1}` never has maximal rank:
/// the degree-`j` socle of the reduction equals `β_{h,h+j}` and lies in the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub degree: usize,
    pub obstruction: Obstruction,
    pub betti_lower_bound: u64,
    pub betti_source: BettiSource,
    pub dim_j: usize,
    pub dim_j1: usize,
    #[serde(serialize_with = "bigint_string")]
    pub f_value: num_bigint::BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictConfig {
    pub field: FieldKind,
    pub seed: u64,
    pub trials: usize,
    /// Largest Hochster sum (in subsets) attempted for a certificate.
    pub betti_budget: u64,
    pub limits: QuotientLimits,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig {
            field: FieldKind::default(),
            seed: DEFAULT_SEED,
            trials: 3,
            betti_budget: 200_000,
            limits: QuotientLimits::default(),
        }
    }
}

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LefschetzVerdict {
    pub shape: GridShape,
    pub ring: Ring,
    pub property: Property,
    pub outcome: Outcome,
    /// Checks from the witness trial, or from the first trial when none succeeded.
    pub evidence: Vec<RankCheck>,
    pub trials: Vec<Trial>,
    pub certificate: Option<Certificate>,
}

fn run_trial<F: Field>(
    shape: GridShape,
    ring: Ring,
    property: Property,
    index: usize,
    seed: u64,
    limits: QuotientLimits,
) -> Result<Trial> {
    let model = build_reduction::<F>(shape, ring, seed)?;
    let q = model.quotient(limits)?;
    let lin = random_lefschetz_element::<F>(shape.height(), seed);
    let (hilbert_function, checks) = rank_checks(&q, &lin, property)?;
    Ok(Trial::new(
        index,
        field_kind::<F>(),
        None,
        seed,
        hilbert_function,
        checks,
    ))
}

/// A rational trial evaluated modulo a large prime. The draw has integer
/// coefficients, and ranks over Q are at least the ranks modulo p, so once the
/// Hilbert function modulo p is the h-vector (the least it can be) every
/// maximal rank found here is maximal over Q too. Falls back to exact rational
/// arithmetic when the Hilbert function comes out larger.
fn run_rational_trial(
    shape: GridShape,
    ring: Ring,
    property: Property,
    index: usize,
    seed: u64,
    limits: QuotientLimits,
) -> Result<Trial> {
    let model = build_integer_reduction::<Fp61>(shape, ring, seed)?;
    let q = model.quotient(limits)?;
    if q.hilbert_function() != expected_hilbert(shape)? {
        return run_trial::<Rational>(shape, ring, property, index, seed, limits);
    }
    let lin = integer_lefschetz_element::<Fp61>(shape.height(), seed);
    let (hilbert_function, checks) = rank_checks(&q, &lin, property)?;
    let modulus = Some(Fp61::characteristic());
    Ok(Trial::new(
        index,
        FieldKind::Rational,
        modulus,
        seed,
        hilbert_function,
        checks,
    ))
}

fn rank_checks<F: Field>(
    q: &GradedQuotient<F>,
    lin: &[F],
    property: Property,
) -> Result<(Vec<usize>, Vec<RankCheck>)> {
    let hf = q.hilbert_function();
    let top = hf.len() - 1;
    let dim = |j: usize| hf.get(j).copied().unwrap_or(0);
    let mut checks = Vec::new();
    for j in 0..=top {
        let smax = match property {
            Property::Wlp => 1,
            Property::Slp => top + 1 - j,
        };
        let ranks = q.power_ranks(lin, j, smax)?;
        for (k, rank) in ranks.into_iter().enumerate() {
            let s = k + 1;
            let (dj, djs) = (dim(j), dim(j + s));
            checks.push(RankCheck {
                j,
                s,
                dim_j: dj,
                dim_js: djs,
                rank,
                maximal: rank == dj.min(djs),
            });
        }
    }
    Ok((hf, checks))
}

/// The h-vector of `Δ(t,m,n)` without trailing zeros, which is the Hilbert
/// function of every Artinian reduction of either ring.
pub fn expected_hilbert(shape: GridShape) -> Result<Vec<usize>> {
    let f = face_counts(shape, 1 << 32)?;
    let mut hv: Vec<usize> = h_vector(&f, f.len() - 1)
        .into_iter()
        .map(|x| x as usize)
        .collect();
    while hv.len() > 1 && *hv.last().unwrap() == 0 {
        hv.pop();
    }
    Ok(hv)
}

fn check_obstruction(dj: usize, dj1: usize, b: u64) -> Option<Obstruction> {
    if dj <= dj1 {
        (b >= 1).then_some(Obstruction::Injectivity)
    } else {
        ((dj as u64).saturating_sub(b) < dj1 as u64).then_some(Obstruction::Surjectivity)
    }
}

fn socle_upper_bounds(shape: GridShape, hv: &[usize]) -> Option<Vec<usize>> {
    let model = build_reduction::<Fp61>(shape, Ring::Initial, DEFAULT_SEED).ok()?;
    let q = model.quotient(QuotientLimits::default()).ok()?;
    if q.hilbert_function() != hv {
        return None;
    }
    q.socle_dimensions().ok()
}

/// Searches for a Betti-number obstruction for `R/in(I_t)`. Homology is taken
/// over Q and the dimensions come from the h-vector, so nothing here is random.
pub fn failure_certificate_for(shape: GridShape, betti_budget: u64) -> Result<Option<Certificate>> {
    let t = shape.t();
    if t >= shape.m().min(shape.n()) {
        return Ok(None);
    }
    let hv = expected_hilbert(shape)?;
    let dim = |j: usize| hv.get(j).copied().unwrap_or(0);
    let h = shape.height();
    let make = |j: usize, b: u64, source: BettiSource| {
        check_obstruction(dim(j), dim(j + 1), b).map(|obstruction| Certificate {
            degree: j,
            obstruction,
            betti_lower_bound: b,
            betti_source: source,
            dim_j: dim(j),
            dim_j1: dim(j + 1),
            f_value: f_value(shape),
        })
    };
    let omega = omega_lower_bound(shape, FieldKind::Rational)?.value;
    if let Some(c) = make(t - 1, omega, BettiSource::OmegaBound) {
        return Ok(Some(c));
    }
    // β over Q is at most β over GF(p), which is the socle of a reduction mod p
    // once its Hilbert function matches the h-vector. Degrees where even that
    // bound gives no obstruction are skipped.
    let upper = socle_upper_bounds(shape, &hv);
    let mut degrees: Vec<usize> = vec![t - 1];
    degrees.extend((0..hv.len()).filter(|&j| j != t - 1));
    for j in degrees {
        let ub = upper
            .as_ref()
            .map_or(dim(j) as u64, |u| u.get(j).copied().unwrap_or(0) as u64);
        if check_obstruction(dim(j), dim(j + 1), ub).is_none() {
            continue;
        }
        if hochster_cost(shape, h + j) > betti_budget as u128 {
            continue;
        }
        let b = hochster_betti(shape, h, h + j, FieldKind::Rational, betti_budget)?.value;
        if let Some(c) = make(j, b, BettiSource::HochsterExact) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Decides the WLP or SLP of the generic Artinian reduction of `ring`.
pub fn lefschetz_verdict(
    shape: GridShape,
    ring: Ring,
    property: Property,
    config: &VerdictConfig,
) -> Result<LefschetzVerdict> {
    if config.trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    let field = config.field.validate()?;
    let fields = match field {
        FieldKind::Prime(_) => vec![field, field.companion()],
        FieldKind::Rational => vec![field],
    };
    let mut trials: Vec<Trial> = Vec::new();
    let mut k = 0;
    loop {
        let enough = k >= config.trials;
        if enough {
            let distinct: std::collections::BTreeSet<u64> =
                trials.iter().map(|t| t.field.characteristic()).collect();
            let need_second_prime = fields.len() > 1 && distinct.len() < 2;
            if !need_second_prime || k > config.trials {
                break;
            }
        }
        let kind = fields[k % fields.len()];
        let seed = derive_seed(config.seed, k as u64);
        let trial = match kind {
            FieldKind::Rational => {
                run_rational_trial(shape, ring, property, k, seed, config.limits)?
            }
            FieldKind::Prime(_) => {
                with_field!(kind, F => run_trial::<F>(shape, ring, property, k, seed, config.limits))?
            }
        };
        let witness = trial.all_maximal();
        trials.push(trial);
        if witness {
            break;
        }
        k += 1;
    }

    let certificate = match ring {
        Ring::Initial => failure_certificate_for(shape, config.betti_budget)?,
        Ring::Minors => None,
    };
    let witness = trials.iter().find(|t| t.all_maximal());
    let outcome = match (witness, &certificate) {
        (Some(w), Some(c)) => {
            return Err(Error::Inconsistent(format!(
                "trial {} has maximal rank although degree {} is obstructed",
                w.index, c.degree
            )))
        }
        (Some(_), None) => Outcome::HoldsCertified,
        (None, Some(_)) => Outcome::FailsCertified,
        (None, None) => {
            if trials.iter().all(|t| t.deficient == trials[0].deficient) {
                Outcome::FailsProbabilistic
            } else {
                Outcome::Inconclusive
            }
        }
    };
    let evidence = witness.unwrap_or(&trials[0]).checks.clone();
    Ok(LefschetzVerdict {
        shape,
        ring,
        property,
        outcome,
        evidence,
        trials,
        certificate,
    })
}
