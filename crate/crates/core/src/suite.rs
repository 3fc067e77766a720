//! Named verification suites shared by the command line and the acceptance
//! tests. Each suite sweeps a parameter range and records one [`Instance`]
//! per comparison.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::charsum::{gross_koblitz_exhaustive, CharOracle};
use crate::error::{Error, Result};
use crate::ffield::{build_field, FqElem, FqField};
use crate::frobtrace::{
    corollary_values, legendre_single_trace, rational_curve_trace, trace_sum_pair, TheoremId,
};
use crate::gfunc::{check_reduction_identity, check_splitting_identity, choose_precision, trace_sum_bound};
use crate::padic::identities::{self, Tally};
use crate::padic::{product_formula_check, ExactRational, PadicCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteName {
    Theorem(TheoremId),
    /// All three `4G4` forms of the `c, d` pair, with the `6G6` cross-check.
    CdPair,
    Corollary,
    IdentitySplitting,
    IdentityReduction,
    Lemmas,
    Oracle,
}

impl SuiteName {
    pub const ALL: [&'static str; 14] = [
        "t13", "t14", "t15", "t16", "t17", "t18", "t19", "t110", "t111", "corollary",
        "identity-splitting", "identity-reduction", "lemmas", "oracle",
    ];
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteName::Theorem(t) => write!(f, "{t}"),
            SuiteName::CdPair => f.write_str("t17"),
            SuiteName::Corollary => f.write_str("corollary"),
            SuiteName::IdentitySplitting => f.write_str("identity-splitting"),
            SuiteName::IdentityReduction => f.write_str("identity-reduction"),
            SuiteName::Lemmas => f.write_str("lemmas"),
            SuiteName::Oracle => f.write_str("oracle"),
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "t17" => SuiteName::CdPair,
            "corollary" => SuiteName::Corollary,
            "identity-splitting" => SuiteName::IdentitySplitting,
            "identity-reduction" => SuiteName::IdentityReduction,
            "lemmas" => SuiteName::Lemmas,
            "oracle" => SuiteName::Oracle,
            other => match other.parse::<TheoremId>() {
                Ok(t) if !matches!(t, TheoremId::T17a | TheoremId::T17b | TheoremId::T17c) => {
                    SuiteName::Theorem(t)
                }
                _ => {
                    return Err(Error::InvalidParameters(format!(
                        "unknown suite {other:?}; expected one of {}",
                        SuiteName::ALL.join(", ")
                    )))
                }
            },
        })
    }
}

/// Range and sampling controls. `None` picks the suite's default range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub pmax: Option<u64>,
    pub rmax: Option<u32>,
    /// Random parameter choices per field.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            pmax: None,
            rmax: None,
            samples: 30,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Instance {
    fn new(label: String, lhs: impl ToString, rhs: impl ToString, pass: bool) -> Self {
        Instance {
            label,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    fn from_tally(t: &Tally) -> Self {
        let inst = Instance::new(t.name.clone(), format!("checked {}", t.checked), format!("failed {}", t.failed), t.passed());
        match &t.first_failure {
            Some(f) => inst.with_note(format!("first failure: {f}")),
            None => inst,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub instances: Vec<Instance>,
}

impl SuiteReport {
    fn new(suite: SuiteName, instances: Vec<Instance>) -> Self {
        let passed = instances.iter().filter(|i| i.pass).count();
        SuiteReport {
            suite: suite.to_string(),
            passed,
            failed: instances.len() - passed,
            instances,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.pass)
    }
}

pub fn run_suite(name: SuiteName, opts: &SuiteOptions) -> Result<SuiteReport> {
    let instances = match name {
        SuiteName::Theorem(TheoremId::T13) => legendre_pairs(opts)?,
        SuiteName::Theorem(t) if t.is_rational() => rational_curves(t, opts)?,
        SuiteName::Theorem(t) => sampled_pairs(t, opts)?,
        SuiteName::CdPair => cd_pairs(opts)?,
        SuiteName::Corollary => corollary()?,
        SuiteName::IdentitySplitting => splitting(opts)?,
        SuiteName::IdentityReduction => reduction(opts)?,
        SuiteName::Lemmas => lemmas()?,
        SuiteName::Oracle => oracle()?,
    };
    Ok(SuiteReport::new(name, instances))
}

fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| arith::is_prime(p)).collect()
}

/// A field and a context precise enough for sums of two traces.
fn trace_field(p: u64, r: u32) -> Result<(FqField, PadicCtx)> {
    let f = build_field(p, r)?;
    let c = PadicCtx::new(&f, choose_precision(p, trace_sum_bound(f.q())))?;
    Ok((f, c))
}

fn fields(primes: &[u64], rmax: u32) -> Vec<(u64, u32)> {
    primes.iter().flat_map(|&p| (1..=rmax).map(move |r| (p, r))).collect()
}

fn legendre_pairs(opts: &SuiteOptions) -> Result<Vec<Instance>> {
    let grid = fields(&odd_primes(3, opts.pmax.unwrap_or(13)), opts.rmax.unwrap_or(2));
    let per_field: Vec<Vec<Instance>> = grid
        .par_iter()
        .map(|&(p, r)| -> Result<Vec<Instance>> {
            let (f, c) = trace_field(p, r)?;
            let minus_one = f.from_int(-1);
            f.nonzero_elements()
                .filter(|&l| l != f.one() && l != minus_one)
                .map(|l| {
                    let chk = trace_sum_pair(TheoremId::T13, &[l], &f, &c)?;
                    let label = format!("t13 q={} lambda={}", f.q(), l.encoding());
                    Ok(Instance::new(label, chk.lhs, chk.rhs, chk.holds()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_field.into_iter().flatten().collect())
}

fn random_pair(rng: &mut ChaCha8Rng, f: &FqField) -> [FqElem; 2] {
    let mut pick = || f.from_encoding(rng.gen_range(1..f.q())).expect("in range");
    [pick(), pick()]
}

/// `samples` nonsingular parameter pairs per field, for one pair theorem.
fn sampled_pairs(theorem: TheoremId, opts: &SuiteOptions) -> Result<Vec<Instance>> {
    let grid = fields(&odd_primes(5, opts.pmax.unwrap_or(13)), opts.rmax.unwrap_or(2));
    let per_field: Vec<Vec<Instance>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(p, r))| -> Result<Vec<Instance>> {
            let (f, c) = trace_field(p, r)?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64) << 8 ^ theorem as u64);
            let mut out = Vec::with_capacity(opts.samples);
            while out.len() < opts.samples {
                let params = random_pair(&mut rng, &f);
                match trace_sum_pair(theorem, &params, &f, &c) {
                    Ok(chk) => {
                        let label = format!("{theorem} q={} params={:?}", f.q(), chk.params);
                        out.push(Instance::new(label, chk.lhs, chk.rhs, chk.holds()));
                    }
                    Err(Error::SingularCurve) => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_field.into_iter().flatten().collect())
}

/// Each applicable `4G4` form of the `c, d` pair, and its agreement with
/// the `6G6` form at the same parameters.
fn cd_pairs(opts: &SuiteOptions) -> Result<Vec<Instance>> {
    let grid = fields(&odd_primes(5, opts.pmax.unwrap_or(13)), opts.rmax.unwrap_or(2));
    let per_field: Vec<Vec<Instance>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(p, r))| -> Result<Vec<Instance>> {
            let Some(part) = TheoremId::cd_part(p, r) else {
                return Ok(Vec::new());
            };
            let (f, c) = trace_field(p, r)?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64) << 8 ^ 0x17);
            let mut out = Vec::with_capacity(2 * opts.samples);
            let mut taken = 0;
            while taken < opts.samples {
                let params = random_pair(&mut rng, &f);
                let four = match trace_sum_pair(part, &params, &f, &c) {
                    Err(Error::SingularCurve) => continue,
                    other => other?,
                };
                let six = trace_sum_pair(TheoremId::T16, &params, &f, &c)?;
                taken += 1;
                let label = format!("{part} q={} params={:?}", f.q(), four.params);
                out.push(Instance::new(label.clone(), four.lhs, four.rhs, four.holds()));
                out.push(Instance::new(
                    format!("{label} vs t16"),
                    six.rhs,
                    four.rhs,
                    six.rhs == four.rhs,
                ));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_field.into_iter().flatten().collect())
}

fn rational_params(theorem: TheoremId) -> Vec<ExactRational> {
    let r = ExactRational::new;
    match theorem {
        TheoremId::T18 => vec![r(2, 1), r(1, 2)],
        _ => vec![r(1, 1), r(2, 1), r(3, 1), r(-5, 2)],
    }
}

/// For each admissible `(p, r, parameter)`: the stated prediction against
/// the point count and against the recurrence, and the twin's `a_p = 0`.
fn rational_curves(theorem: TheoremId, opts: &SuiteOptions) -> Result<Vec<Instance>> {
    let primes: Vec<u64> = odd_primes(5, opts.pmax.unwrap_or(23))
        .into_iter()
        .filter(|&p| theorem.check_field(p, 1).is_ok())
        .collect();
    let grid = fields(&primes, opts.rmax.unwrap_or(3));
    let per_field: Vec<Vec<Instance>> = grid
        .par_iter()
        .map(|&(p, r)| -> Result<Vec<Instance>> {
            let (f, c) = trace_field(p, r)?;
            let mut out = Vec::new();
            for a in rational_params(theorem) {
                let chk = match rational_curve_trace(theorem, &a, &f, &c) {
                    Err(Error::HypothesisViolation(_) | Error::DenominatorDivisibleByP(_)) => continue,
                    other => other?,
                };
                let label = format!("{theorem} p={p} r={r} param={a}");
                let note = format!(
                    "g={} a_p={} power_sum={} corrected={}",
                    chk.g, chk.ap, chk.power_sum, chk.corrected
                );
                out.push(
                    Instance::new(format!("{label} vs count"), chk.counted, chk.predicted, chk.literal_matches_count())
                        .with_note(note.clone()),
                );
                out.push(
                    Instance::new(
                        format!("{label} vs recurrence"),
                        chk.recurrence,
                        chk.predicted,
                        chk.literal_matches_recurrence(),
                    )
                    .with_note(note),
                );
                if r == 1 {
                    out.push(Instance::new(format!("{label} twin a_p"), chk.twin_ap, 0, chk.twin_ap == 0));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_field.into_iter().flatten().collect())
}

/// The four `G`-values against the stated integers, which are the values
/// the recurrence route implies.
fn corollary() -> Result<Vec<Instance>> {
    Ok(corollary_values()?
        .into_iter()
        .map(|it| {
            Instance::new(
                format!("item {} ({}, q={}, param={})", it.item, it.theorem, it.q, it.param),
                it.g,
                it.via_recurrence,
                it.g == it.via_recurrence,
            )
            .with_note(format!("value implied by the point count: {}", it.via_count))
        })
        .collect())
}

fn divisors(n: u64) -> Vec<i64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d as i64).collect()
}

const SPLITTING_INSTANCES: usize = 100;
const REDUCTION_INSTANCES: usize = 10;

/// Random `(a_1..a_4, x, q)` with every denominator dividing `p - 1`.
fn splitting(opts: &SuiteOptions) -> Result<Vec<Instance>> {
    let grid = [(5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (7, 2), (3, 3)];
    let ctxs: Vec<(FqField, PadicCtx)> = grid
        .iter()
        .map(|&(p, r)| {
            let f = build_field(p, r)?;
            let c = PadicCtx::new(&f, 3)?;
            Ok((f, c))
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x11);
    let draws: Vec<(usize, [ExactRational; 4], u64)> = (0..SPLITTING_INSTANCES)
        .map(|_| {
            let k = rng.gen_range(0..ctxs.len());
            let f = &ctxs[k].0;
            let dens = divisors(f.p() - 1);
            let a = std::array::from_fn(|_| {
                let d = *dens.choose(&mut rng).expect("1 divides p - 1");
                ExactRational::new(rng.gen_range(0..d), d)
            });
            (k, a, rng.gen_range(1..f.q()))
        })
        .collect();
    draws
        .par_iter()
        .map(|(k, a, x)| {
            let (f, c) = &ctxs[*k];
            let x = f.from_encoding(*x).expect("in range");
            let ok = check_splitting_identity(a, x, f, c)?;
            let label = format!("splitting q={} a={:?} x={}", f.q(), a.iter().map(|v| v.to_string()).collect::<Vec<_>>(), x.encoding());
            Ok(Instance::new(label, ok, true, ok))
        })
        .collect()
}

const REDUCTION_PAIRS: [(u64, u64); 6] = [(5, 2), (5, 3), (5, 6), (7, 4), (11, 4), (11, 12)];

fn reduction(opts: &SuiteOptions) -> Result<Vec<Instance>> {
    let dens = [1i64, 2, 3, 4, 6, 8, 12];
    let per_pair: Vec<Vec<Instance>> = REDUCTION_PAIRS
        .par_iter()
        .map(|&(p, d)| -> Result<Vec<Instance>> {
            let f = build_field(p, 1)?;
            let c = PadicCtx::new(&f, 3)?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ p << 8 ^ d);
            let mut out = Vec::new();
            for _ in 0..REDUCTION_INSTANCES {
                let len = rng.gen_range(1..=3);
                let mut row = || -> Vec<ExactRational> {
                    (0..len)
                        .map(|_| loop {
                            let den = *dens.choose(&mut rng).expect("nonempty");
                            if den % p as i64 != 0 {
                                break ExactRational::new(rng.gen_range(0..den), den);
                            }
                        })
                        .collect()
                };
                let (top, bottom) = (row(), row());
                let t = f.from_encoding(rng.gen_range(1..p)).expect("in range");
                let ok = check_reduction_identity(&top, &bottom, d, t, &f, &c)?;
                let show = |v: &[ExactRational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                let label = format!("reduction p={p} d={d} top={} bottom={} t={}", show(&top), show(&bottom), t.encoding());
                out.push(Instance::new(label, ok, true, ok));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_pair.into_iter().flatten().collect())
}

/// Exhaustive `Gamma_p` and floor identities at `q` in `{25, 27, 49, 121}`,
/// and the root quotient over prime fields.
fn lemmas() -> Result<Vec<Instance>> {
    let grid = [(5u64, 2u32), (3, 3), (7, 2), (11, 2)];
    let per_field: Vec<Vec<Tally>> = grid
        .par_iter()
        .map(|&(p, r)| -> Result<Vec<Tally>> {
            let f = build_field(p, r)?;
            let c = PadicCtx::new(&f, 3)?;
            let mut out = vec![
                identities::reflection_exhaustive(&c)?,
                product_formula_exhaustive(&f, &c)?,
                identities::gamma_pair_product_exhaustive(&c)?,
                identities::half_shift_quotient_exhaustive(&c)?,
                identities::multiplication_formula_exhaustive(&c, &f, &[2, 3, 4, 6], false)?,
                identities::floor_identities_exhaustive(p, r, &[2, 3, 4, 6, 8, 12]),
            ];
            if (f.q() - 1) % 4 == 0 {
                out.push(identities::quarter_shift_product_exhaustive(&c)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut tallies: Vec<Tally> = per_field.into_iter().flatten().collect();
    for p in [5u64, 7, 11] {
        let f = build_field(p, 1)?;
        let c = PadicCtx::new(&f, 3)?;
        for d in (2..=p as i64 + 1).filter(|d| (p as i64 + 1) % d == 0) {
            tallies.push(identities::root_quotient_exhaustive(&c, d)?);
        }
    }
    Ok(tallies.iter().map(Instance::from_tally).collect())
}

fn product_formula_exhaustive(f: &FqField, c: &PadicCtx) -> Result<Tally> {
    let q1 = f.q() as i64 - 1;
    let mut t = Tally::new(format!("product formula q={}", f.q()));
    for m in [2u64, 3, 4, 6].into_iter().filter(|m| m % f.p() != 0) {
        for k in 0..q1 {
            let x = ExactRational::new(k, q1);
            t.record(product_formula_check(&x, m, c, f)?, || format!("x = {x}, m = {m}"));
        }
    }
    Ok(t)
}

/// Complex and `p`-adic character-sum checks.
fn oracle() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (p, r) in [(13, 1), (5, 2), (7, 2)] {
        let f = build_field(p, r)?;
        let o = CharOracle::new(&f)?;
        let mut t = Tally::new(format!("gauss pair q={}", f.q()));
        for k in 0..o.order() {
            t.record(o.gauss_pair_check(k), || format!("k = {k}"));
        }
        out.push(Instance::from_tally(&t));
    }
    for (p, r) in [(13, 1), (5, 2)] {
        let f = build_field(p, r)?;
        let o = CharOracle::new(&f)?;
        for m in [2, 3, 4, 6] {
            let mut t = Tally::new(format!("Davenport-Hasse m={m} q={}", f.q()));
            for psi in 0..o.order() {
                t.record(o.davenport_hasse_check(m, psi)?, || format!("psi = {psi}"));
            }
            out.push(Instance::from_tally(&t));
        }
        let mut t = Tally::new(format!("2F1 and 2G2 against point counts q={}", f.q()));
        let c = PadicCtx::new(&f, choose_precision(p, trace_sum_bound(f.q())))?;
        for l in f.nonzero_elements().filter(|&l| l != f.one() && l != f.from_int(-1)) {
            let via_greene = o.legendre_trace(l)?;
            let (counted, via_g) = legendre_single_trace(l, &f, &c)?;
            t.record(via_greene == counted && via_g == counted, || format!("lambda = {}", l.encoding()));
        }
        out.push(Instance::from_tally(&t));
    }
    for (p, r) in [(5, 2), (3, 3)] {
        let f = build_field(p, r)?;
        let c = PadicCtx::new(&f, 3)?;
        out.push(Instance::from_tally(&gross_koblitz_exhaustive(&f, &c)?));
    }
    Ok(out)
}
