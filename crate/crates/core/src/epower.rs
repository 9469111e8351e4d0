//! Entangling power `EP_μ(U) = max E(U ρ U†)` over unentangled inputs `ρ` of
//! purity `μ`, estimated by exhaustive evaluation of sampled candidate pools.
//!
//! Every candidate is a pure function of `(seed, family, μ index, cell,
//! sample index)`: cell `c` draws its `j`-th sample from ChaCha stream
//! `(family, μ index, c)` at word offset `j · 2³²`. Pools therefore do not
//! depend on how work is split across threads, and growing the budget only
//! appends candidates to each cell.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entanglement;
use crate::error::{Error, Result};
use crate::gates::{angle_label, apply_gate, cartan_kernel, CartanAngles, TwoQubitGate};
use crate::output::format_sig12;
use crate::qmat::C64;
use crate::states::{
    self, basis_vectors, cc_factor, mdms, mems, product_factor, random_direction, rho_c, rho_diag,
    rho_s, DensityMatrix4, ProbVector4, StateFactor, ESD_PURITY, MEMS_BRANCH_GAMMA,
    MEMS_BRANCH_PURITY,
};

/// Candidates must have concurrence at most this before the gate acts.
pub const ZERO_ENTANGLEMENT_TOL: f64 = 1e-10;
/// Default number of purity grid points.
pub const DEFAULT_MU_STEPS: usize = 64;
/// Basis-angle step of the classical-classical grid.
pub const CC_ANGLE_STEP: f64 = 0.1 * PI;
/// Purity step of the `(μ_A, μ_B)` grid of the product family.
pub const PRODUCT_PURITY_STEP: f64 = 0.01;
/// p-samples per basis pattern in the classical-classical protocol.
pub const CC_SAMPLES_PER_PATTERN: u64 = 1000;
/// Samples per purity in the product-state protocol.
pub const PRODUCT_SAMPLES_PER_MU: u64 = 1_000_000;

const MU_SLACK: f64 = 1e-12;
const TASK_CHUNK: u64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Classical-classical states `Σ p_ij |α_i⟩⟨α_i| ⊗ |β_j⟩⟨β_j|`.
    Cc,
    /// Product states `ρ_A ⊗ ρ_B`.
    Product,
    /// Only the closed-form inputs `ρ_s`, `ρ_diag`, `ρ_c`.
    Analytic,
}

impl FamilyKind {
    fn stream_tag(self) -> u64 {
        match self {
            FamilyKind::Cc => 1,
            FamilyKind::Product => 2,
            FamilyKind::Analytic => 3,
        }
    }

    /// Default sample budget per purity point.
    pub fn default_samples(self) -> u64 {
        match self {
            FamilyKind::Cc => CC_SAMPLES_PER_PATTERN * cc_cell_count() as u64,
            FamilyKind::Product => PRODUCT_SAMPLES_PER_MU,
            FamilyKind::Analytic => 0,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Cc => "cc",
            FamilyKind::Product => "product",
            FamilyKind::Analytic => "analytic",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cc" => Ok(FamilyKind::Cc),
            "product" => Ok(FamilyKind::Product),
            "analytic" => Ok(FamilyKind::Analytic),
            other => Err(format!(
                "unknown family '{other}' (expected cc, product or analytic)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub gate: CartanAngles,
    pub family: FamilyKind,
    pub mu_min: f64,
    pub mu_max: f64,
    pub mu_steps: usize,
    pub samples_per_mu: u64,
    pub seed: u64,
    pub inject_analytic: bool,
}

impl SweepConfig {
    /// Full purity range, default grid and the family's default budget.
    pub fn new(gate: CartanAngles, family: FamilyKind) -> Self {
        Self {
            gate,
            family,
            mu_min: ESD_PURITY,
            mu_max: 1.0,
            mu_steps: DEFAULT_MU_STEPS,
            samples_per_mu: family.default_samples(),
            seed: 0,
            inject_analytic: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.gate.validate()?;
        let ok_range = self.mu_min >= ESD_PURITY - MU_SLACK
            && self.mu_max <= 1.0 + MU_SLACK
            && self.mu_min <= self.mu_max;
        if !ok_range {
            return Err(Error::InvalidConfig(format!(
                "purity range [{}, {}] must satisfy 1/3 <= mu_min <= mu_max <= 1",
                self.mu_min, self.mu_max
            )));
        }
        if self.mu_steps == 0 {
            return Err(Error::InvalidConfig("mu_steps must be positive".into()));
        }
        if self.mu_steps > 1 && self.mu_min == self.mu_max {
            return Err(Error::InvalidConfig(
                "several purity points need mu_min < mu_max".into(),
            ));
        }
        Ok(())
    }

    /// Uniform grid including both endpoints.
    pub fn mu_grid(&self) -> Vec<f64> {
        mu_grid(self.mu_min, self.mu_max, self.mu_steps)
    }
}

/// `steps` uniform points on `[lo, hi]`, both ends included.
pub fn mu_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub mu: f64,
    pub ep_eof: f64,
    pub ep_tangle: f64,
    pub mems_eof: f64,
    /// `mems_eof - ep_eof`.
    pub gap: f64,
    pub argmax: String,
    pub n_samples: u64,
    /// The maximizing input state (before the gate).
    pub argmax_input: DensityMatrix4,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCurve {
    pub config: SweepConfig,
    pub points: Vec<SweepPoint>,
}

impl SweepCurve {
    pub fn max_gap(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.gap)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Per-qubit basis grid `(θ, φ)` of the classical-classical family.
///
/// `θ` runs over `[0, π/4]`, which with `φ ∈ [0, 2π)` covers every basis
/// (a basis and its label-swapped twin share one unordered pair). In
/// Bloch-sphere terms both the polar and azimuthal angles step by `0.1π`.
pub fn cc_basis_grid() -> Vec<(f64, f64)> {
    let theta_steps = (FRAC_PI_4 / (CC_ANGLE_STEP / 2.0)).round() as usize;
    let phi_steps = (2.0 * PI / CC_ANGLE_STEP).round() as usize;
    (0..=theta_steps)
        .flat_map(|t| {
            (0..phi_steps).map(move |f| (t as f64 * CC_ANGLE_STEP / 2.0, f as f64 * CC_ANGLE_STEP))
        })
        .collect()
}

/// Number of ordered basis-pair patterns in the classical-classical grid.
pub fn cc_cell_count() -> usize {
    let n = cc_basis_grid().len();
    n * n
}

/// `μ_A` values of the product family at total purity `μ`, stepping by
/// `0.01` from `max(1/2, μ)` up to `min(1, 2μ)` (endpoint included).
pub fn product_purity_grid(mu: f64) -> Vec<f64> {
    let lo = mu.max(0.5);
    let hi = (2.0 * mu).min(1.0);
    let mut grid = Vec::new();
    let mut k = 0u32;
    loop {
        let x = lo + f64::from(k) * PRODUCT_PURITY_STEP;
        if x > hi - 1e-9 {
            break;
        }
        grid.push(x);
        k += 1;
    }
    grid.push(hi);
    grid
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum AnalyticInput {
    RhoS(f64),
    RhoDiag(f64),
    RhoC(f64),
}

impl AnalyticInput {
    fn state(self) -> Result<DensityMatrix4> {
        match self {
            AnalyticInput::RhoS(g) => rho_s(g),
            AnalyticInput::RhoDiag(a) => rho_diag(a),
            AnalyticInput::RhoC(g) => rho_c(g),
        }
    }

    fn describe(self) -> String {
        match self {
            AnalyticInput::RhoS(g) => format!("rho_s(gamma={})", format_sig12(g)),
            AnalyticInput::RhoDiag(a) => format!("rho_diag(a={})", format_sig12(a)),
            AnalyticInput::RhoC(g) => format!("rho_c(gamma={})", format_sig12(g)),
        }
    }
}

/// Closed-form unentangled inputs that the π/8 gate (and, below purity 1/2,
/// the CNOT kernel) maps onto the MEMS of purity `μ`.
fn analytic_inputs(mu: f64) -> Vec<AnalyticInput> {
    let mut out = Vec::new();
    if mu <= MEMS_BRANCH_PURITY + MU_SLACK {
        let g = (2.0 * (mu - ESD_PURITY))
            .max(0.0)
            .sqrt()
            .min(MEMS_BRANCH_GAMMA);
        out.push(AnalyticInput::RhoS(g));
    }
    if mu >= MEMS_BRANCH_PURITY - MU_SLACK {
        let a = ((1.0 + (2.0 * mu - 1.0).max(0.0).sqrt()) / 2.0).clamp(0.0, 1.0);
        out.push(AnalyticInput::RhoDiag(a));
    }
    if mu <= 0.5 + MU_SLACK {
        let g = (2.0 * (mu - ESD_PURITY))
            .max(0.0)
            .sqrt()
            .min(1.0 / 3f64.sqrt());
        out.push(AnalyticInput::RhoC(g));
    }
    out
}

/// Index space of the candidates evaluated at one purity.
struct Pool<'a> {
    family: FamilyKind,
    mu: f64,
    seed: u64,
    stream_base: u64,
    cells: Vec<u64>,
    sampled: u64,
    analytic: Vec<AnalyticInput>,
    cc_vectors: &'a [[[C64; 2]; 2]],
    cc_grid: &'a [(f64, f64)],
    product_grid: Vec<f64>,
}

impl<'a> Pool<'a> {
    fn new(
        family: FamilyKind,
        mu: f64,
        mu_index: usize,
        samples: u64,
        seed: u64,
        inject: bool,
        cc: &'a CcGrid,
    ) -> Self {
        let product_grid = match family {
            FamilyKind::Product => product_purity_grid(mu),
            _ => Vec::new(),
        };
        let n_cells = match family {
            FamilyKind::Cc => cc.grid.len() * cc.grid.len(),
            FamilyKind::Product => product_grid.len(),
            FamilyKind::Analytic => 0,
        };
        let cells = if n_cells == 0 {
            Vec::new()
        } else {
            let q = samples / n_cells as u64;
            let r = samples % n_cells as u64;
            (0..n_cells as u64).map(|c| q + u64::from(c < r)).collect()
        };
        let sampled = if n_cells == 0 { 0 } else { samples };
        let analytic = if inject || family == FamilyKind::Analytic {
            analytic_inputs(mu)
        } else {
            Vec::new()
        };
        Pool {
            family,
            mu,
            seed,
            stream_base: (family.stream_tag() << 60) | ((mu_index as u64) << 30),
            cells,
            sampled,
            analytic,
            cc_vectors: &cc.vectors,
            cc_grid: &cc.grid,
            product_grid,
        }
    }

    fn len(&self) -> u64 {
        self.sampled + self.analytic.len() as u64
    }

    fn rng_for_cell(&self, cell: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_base | cell as u64);
        rng
    }

    /// Global index of sample `j` in `cell`.
    fn global_index(&self, cell: usize, j: u64) -> u64 {
        let n = self.cells.len() as u64;
        let q = self.sampled / n;
        let r = self.sampled % n;
        let c = cell as u64;
        if c < r {
            c * (q + 1) + j
        } else {
            r * (q + 1) + (c - r) * q + j
        }
    }

    fn locate(&self, index: u64) -> (usize, u64) {
        let n = self.cells.len() as u64;
        let q = self.sampled / n;
        let r = self.sampled % n;
        let head = r * (q + 1);
        if index < head {
            ((index / (q + 1)) as usize, index % (q + 1))
        } else {
            let k = index - head;
            ((r + k / q) as usize, k % q)
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng, cell: usize, j: u64) -> Result<Sample> {
        rng.set_word_pos(u128::from(j) << 32);
        match self.family {
            FamilyKind::Cc => {
                let n = self.cc_grid.len();
                let (a, b) = (cell / n, cell % n);
                let p = states::sample_prob_vector_with(self.mu, rng)?;
                let factor = cc_factor(&self.cc_vectors[a], &self.cc_vectors[b], &p);
                Ok(Sample {
                    factor,
                    params: SampleParams::Cc { a, b, p },
                })
            }
            FamilyKind::Product => {
                let mu_a = self.product_grid[cell];
                let mu_b = (self.mu / mu_a).clamp(0.5, 1.0);
                let dir_a = random_direction(rng);
                let dir_b = random_direction(rng);
                let factor = product_factor(mu_a, mu_b, dir_a, dir_b)?;
                Ok(Sample {
                    factor,
                    params: SampleParams::Product {
                        mu_a,
                        mu_b,
                        dir_a,
                        dir_b,
                    },
                })
            }
            FamilyKind::Analytic => unreachable!("analytic pools have no sampled cells"),
        }
    }

    fn describe(&self, params: &SampleParams) -> String {
        match params {
            SampleParams::Cc { a, b, p } => {
                let (ta, pa) = self.cc_grid[*a];
                let (tb, pb) = self.cc_grid[*b];
                let pv = p.values().map(format_sig12).join(":");
                format!(
                    "cc(ta={};pa={};tb={};pb={};p={pv})",
                    angle_label(ta),
                    angle_label(pa),
                    angle_label(tb),
                    angle_label(pb)
                )
            }
            SampleParams::Product {
                mu_a,
                mu_b,
                dir_a,
                dir_b,
            } => {
                let v = |d: &[f64; 3]| d.map(format_sig12).join(":");
                format!(
                    "product(mu_a={};mu_b={};dir_a={};dir_b={})",
                    format_sig12(*mu_a),
                    format_sig12(*mu_b),
                    v(dir_a),
                    v(dir_b)
                )
            }
        }
    }

    /// Candidate state and descriptor by global index.
    fn candidate(&self, index: u64) -> Result<(DensityMatrix4, String)> {
        if index >= self.sampled {
            let a = self.analytic[(index - self.sampled) as usize];
            return Ok((a.state()?, a.describe()));
        }
        let (cell, j) = self.locate(index);
        let mut rng = self.rng_for_cell(cell);
        let s = self.sample(&mut rng, cell, j)?;
        Ok((s.factor.density(), self.describe(&s.params)))
    }

    /// Work units: contiguous sample ranges within one cell, then one unit
    /// per analytic input.
    fn tasks(&self) -> Vec<Task> {
        let mut tasks = Vec::new();
        for (cell, &count) in self.cells.iter().enumerate() {
            let mut start = 0;
            while start < count {
                let end = (start + TASK_CHUNK).min(count);
                tasks.push(Task::Cell { cell, start, end });
                start = end;
            }
        }
        tasks.extend((0..self.analytic.len()).map(Task::Analytic));
        tasks
    }
}

enum SampleParams {
    Cc {
        a: usize,
        b: usize,
        p: ProbVector4,
    },
    Product {
        mu_a: f64,
        mu_b: f64,
        dir_a: [f64; 3],
        dir_b: [f64; 3],
    },
}

struct Sample {
    factor: StateFactor,
    params: SampleParams,
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Cell { cell: usize, start: u64, end: u64 },
    Analytic(usize),
}

/// Best candidate so far: larger EOF wins, ties go to the smaller index.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Best {
    eof: f64,
    tangle: f64,
    index: u64,
}

impl Best {
    const NONE: Best = Best {
        eof: f64::NEG_INFINITY,
        tangle: 0.0,
        index: u64::MAX,
    };

    fn merge(self, other: Best) -> Best {
        if other.eof > self.eof || (other.eof == self.eof && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

fn evaluate(gates: &[TwoQubitGate], f: &StateFactor, index: u64, best: &mut [Best]) -> Result<()> {
    let c0 = entanglement::factor_concurrence(f);
    if c0 > ZERO_ENTANGLEMENT_TOL {
        return Err(Error::EntangledCandidate { concurrence: c0 });
    }
    for (gate, slot) in gates.iter().zip(best.iter_mut()) {
        let c = entanglement::factor_concurrence(&f.transformed(&gate.matrix));
        let cand = Best {
            eof: entanglement::eof_from_concurrence(c),
            tangle: c * c,
            index,
        };
        *slot = slot.merge(cand);
    }
    Ok(())
}

fn run_task(pool: &Pool<'_>, gates: &[TwoQubitGate], task: Task) -> Result<Vec<Best>> {
    let mut best = vec![Best::NONE; gates.len()];
    match task {
        Task::Cell { cell, start, end } => {
            let mut rng = pool.rng_for_cell(cell);
            for j in start..end {
                let s = pool.sample(&mut rng, cell, j)?;
                evaluate(gates, &s.factor, pool.global_index(cell, j), &mut best)?;
            }
        }
        Task::Analytic(k) => {
            let f = StateFactor::from_density(&pool.analytic[k].state()?)?;
            evaluate(gates, &f, pool.sampled + k as u64, &mut best)?;
        }
    }
    Ok(best)
}

fn merge_all(a: Vec<Best>, b: Vec<Best>) -> Vec<Best> {
    a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()
}

struct CcGrid {
    grid: Vec<(f64, f64)>,
    vectors: Vec<[[C64; 2]; 2]>,
}

impl CcGrid {
    fn new() -> Self {
        let grid = cc_basis_grid();
        let vectors = grid.iter().map(|&(t, p)| basis_vectors(t, p)).collect();
        CcGrid { grid, vectors }
    }
}

#[allow(clippy::too_many_arguments)]
fn evaluate_point(
    gates: &[TwoQubitGate],
    family: FamilyKind,
    mu: f64,
    mu_index: usize,
    samples: u64,
    seed: u64,
    inject: bool,
    cc: &CcGrid,
) -> Result<Vec<SweepPoint>> {
    if !(ESD_PURITY - MU_SLACK..=1.0 + MU_SLACK).contains(&mu) {
        return Err(Error::PurityOutOfRange {
            value: mu,
            min: ESD_PURITY,
            max: 1.0,
        });
    }
    let mu = mu.clamp(ESD_PURITY, 1.0);
    let pool = Pool::new(family, mu, mu_index, samples, seed, inject, cc);
    if pool.len() == 0 {
        return Err(Error::EmptyPool);
    }
    let best = pool
        .tasks()
        .into_par_iter()
        .map(|task| run_task(&pool, gates, task))
        .try_reduce(|| vec![Best::NONE; gates.len()], |a, b| Ok(merge_all(a, b)))?;

    let mems_eof = states::mems_eof_curve(mu)?;
    best.into_iter()
        .map(|b| {
            let (argmax_input, argmax) = pool.candidate(b.index)?;
            Ok(SweepPoint {
                mu,
                ep_eof: b.eof,
                ep_tangle: b.tangle,
                mems_eof,
                gap: mems_eof - b.eof,
                argmax,
                n_samples: pool.len(),
                argmax_input,
            })
        })
        .collect()
}

/// Entangling power of one gate at one purity.
pub fn entangling_power(
    gate: CartanAngles,
    mu: f64,
    family: FamilyKind,
    samples: u64,
    seed: u64,
    inject_analytic: bool,
) -> Result<SweepPoint> {
    let u = cartan_kernel(gate)?;
    let cc = CcGrid::new();
    let mut points = evaluate_point(&[u], family, mu, 0, samples, seed, inject_analytic, &cc)?;
    Ok(points.remove(0))
}

/// One [`SweepPoint`] per purity grid value.
pub fn sweep(config: &SweepConfig) -> Result<SweepCurve> {
    let mut curves = sweep_gates(&[config.gate], config)?;
    Ok(curves.remove(0))
}

/// Sweeps several gates over the same candidate pools.
///
/// Each returned curve equals `sweep` run with that gate substituted into
/// `config`; the candidates are generated and checked once.
pub fn sweep_gates(gates: &[CartanAngles], config: &SweepConfig) -> Result<Vec<SweepCurve>> {
    config.validate()?;
    let kernels = gates
        .iter()
        .map(|&g| cartan_kernel(g))
        .collect::<Result<Vec<_>>>()?;
    let cc = CcGrid::new();
    let mut per_gate: Vec<Vec<SweepPoint>> = vec![Vec::new(); gates.len()];
    for (i, mu) in config.mu_grid().into_iter().enumerate() {
        let points = evaluate_point(
            &kernels,
            config.family,
            mu,
            i,
            config.samples_per_mu,
            config.seed,
            config.inject_analytic,
            &cc,
        )?;
        for (curve, p) in per_gate.iter_mut().zip(points) {
            curve.push(p);
        }
    }
    Ok(gates
        .iter()
        .zip(per_gate)
        .map(|(&gate, points)| SweepCurve {
            config: SweepConfig {
                gate,
                ..config.clone()
            },
            points,
        })
        .collect())
}

/// `(μ, mems_eof(μ) - ep_eof)` per point.
pub fn gap_to_mems(curve: &SweepCurve) -> Result<Vec<(f64, f64)>> {
    curve
        .points
        .iter()
        .map(|p| Ok((p.mu, states::mems_eof_curve(p.mu)? - p.ep_eof)))
        .collect()
}

/// One named identity check over a parameter grid.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticCheck {
    pub name: String,
    pub cases: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub tolerance: f64,
    pub checks: Vec<AnalyticCheck>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Mixing angles used by the θz-independence checks.
pub const CHI_VALUES: [f64; 4] = [0.0, 0.3, FRAC_PI_4, 1.1];

fn linspace_with_end(step: f64, end: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..)
        .map(|k| f64::from(k) * step)
        .take_while(|&x| x < end - 1e-12)
        .collect();
    v.push(end);
    v
}

/// Entrywise checks of the closed-form gate actions that map unentangled
/// inputs onto the MEMS frontier.
pub fn verify_analytic(tolerance: f64) -> Result<VerificationReport> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let pi8 = cartan_kernel(CartanAngles::PI_8)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, deviations: Vec<f64>| {
        let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
        checks.push(AnalyticCheck {
            name: name.to_string(),
            cases: deviations.len(),
            max_deviation,
            passed: max_deviation <= tolerance,
        });
    };

    let a_grid: Vec<f64> = (5..=10).map(|k| f64::from(k) / 10.0).collect();
    let mut dev = Vec::new();
    for &a in &a_grid {
        let out = apply_gate(&pi8, &rho_diag(a)?);
        dev.push(
            out.matrix()
                .max_abs_diff(mdms(a, 1.0 - a, FRAC_PI_2)?.matrix()),
        );
        if a >= MEMS_BRANCH_GAMMA {
            dev.push(out.matrix().max_abs_diff(mems(a, FRAC_PI_2)?.matrix()));
        }
    }
    push("pi8_rho_diag_to_mdms", dev);

    let mut dev = Vec::new();
    for g in linspace_with_end(0.1, MEMS_BRANCH_GAMMA) {
        let out = apply_gate(&pi8, &rho_s(g)?);
        dev.push(out.matrix().max_abs_diff(mems(g, FRAC_PI_2)?.matrix()));
    }
    push("pi8_rho_s_to_mems", dev);

    let mut dev = Vec::new();
    for chi in CHI_VALUES {
        let u = cartan_kernel(CartanAngles::new(FRAC_PI_4, 0.0, chi)?)?;
        for g in linspace_with_end(0.1, 1.0 / 3f64.sqrt()) {
            let out = apply_gate(&u, &rho_c(g)?);
            dev.push(out.matrix().max_abs_diff(mems(g, FRAC_PI_2)?.matrix()));
        }
    }
    push("cnot_rho_c_to_mems", dev);

    let mut dev = Vec::new();
    for chi in CHI_VALUES {
        let u = cartan_kernel(CartanAngles::PI_8.with_theta_z(chi)?)?;
        for &a in &a_grid {
            let rho = rho_diag(a)?;
            let reference = apply_gate(&pi8, &rho);
            dev.push(
                apply_gate(&u, &rho)
                    .matrix()
                    .max_abs_diff(reference.matrix()),
            );
        }
    }
    push("pi8_theta_z_independence", dev);

    Ok(VerificationReport { tolerance, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::ComplexMat4;

    #[test]
    fn grids() {
        let g = cc_basis_grid();
        assert_eq!(g.len(), 120);
        assert_eq!(cc_cell_count(), 14_400);
        assert!(g.iter().any(|&(t, _)| (t - FRAC_PI_4).abs() < 1e-15));

        let m = mu_grid(1.0 / 3.0, 1.0, 64);
        assert_eq!(m.len(), 64);
        assert_eq!(m[0], 1.0 / 3.0);
        assert_eq!(m[63], 1.0);
        assert!(m.windows(2).all(|w| w[0] < w[1]));

        let p = product_purity_grid(0.7);
        assert_eq!(p.first(), Some(&0.7));
        assert_eq!(p.last(), Some(&1.0));
        assert!(p.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(product_purity_grid(1.0), vec![1.0]);
        let low = product_purity_grid(0.4);
        assert_eq!(low.first(), Some(&0.5));
        assert_eq!(low.last(), Some(&0.8));
    }

    #[test]
    fn pool_index_layout_round_trips() {
        let cc = CcGrid::new();
        let pool = Pool::new(FamilyKind::Product, 0.7, 3, 1000, 1, true, &cc);
        let n = pool.cells.len();
        assert_eq!(pool.cells.iter().sum::<u64>(), 1000);
        let mut seen = 0;
        for cell in 0..n {
            for j in 0..pool.cells[cell] {
                let idx = pool.global_index(cell, j);
                assert_eq!(idx, seen);
                assert_eq!(pool.locate(idx), (cell, j));
                seen += 1;
            }
        }
        assert_eq!(pool.len(), 1000 + pool.analytic.len() as u64);
    }

    #[test]
    fn analytic_inputs_match_purity() {
        for mu in mu_grid(ESD_PURITY, 1.0, 97) {
            let inputs = analytic_inputs(mu);
            assert!(!inputs.is_empty());
            for a in inputs {
                let rho = a.state().unwrap();
                assert!((rho.purity() - mu).abs() < 1e-12, "{a:?} at μ={mu}");
            }
        }
    }

    #[test]
    fn best_merge_is_order_independent() {
        let a = Best {
            eof: 0.5,
            tangle: 0.1,
            index: 7,
        };
        let b = Best {
            eof: 0.5,
            tangle: 0.1,
            index: 3,
        };
        let c = Best {
            eof: 0.4,
            tangle: 0.1,
            index: 1,
        };
        assert_eq!(a.merge(b), b);
        assert_eq!(b.merge(a), b);
        assert_eq!(c.merge(a).merge(b), b);
        assert_eq!(Best::NONE.merge(c), c);
    }

    #[test]
    fn identity_gate_never_entangles() {
        for family in [FamilyKind::Cc, FamilyKind::Product, FamilyKind::Analytic] {
            let p = entangling_power(CartanAngles::IDENTITY, 0.7, family, 500, 3, true).unwrap();
            assert_eq!(p.ep_eof, 0.0, "{family}");
            assert_eq!(p.gap, p.mems_eof);
        }
    }

    #[test]
    fn pi8_with_injection_reaches_frontier() {
        let p =
            entangling_power(CartanAngles::PI_8, 0.68, FamilyKind::Product, 200, 0, true).unwrap();
        let h08 = -0.8 * 0.8f64.log2() - 0.2 * 0.2f64.log2();
        assert!((p.ep_eof - h08).abs() < 1e-10);
        assert!(p.gap.abs() <= 1e-10);
        assert_eq!(p.argmax, "rho_diag(a=0.8)");

        let mu = 1.0 / 3.0 + 0.125;
        let p = entangling_power(CartanAngles::PI_8, mu, FamilyKind::Cc, 200, 0, true).unwrap();
        assert!(p.gap.abs() <= 1e-10);
        assert_eq!(p.argmax, "rho_s(gamma=0.5)");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            entangling_power(CartanAngles::PI_8, 0.3, FamilyKind::Cc, 10, 0, false),
            Err(Error::PurityOutOfRange { .. })
        ));
        assert!(matches!(
            entangling_power(CartanAngles::PI_8, 0.5, FamilyKind::Product, 0, 0, false),
            Err(Error::EmptyPool)
        ));
        let mut cfg = SweepConfig::new(CartanAngles::PI_8, FamilyKind::Product);
        cfg.mu_min = 0.2;
        assert!(sweep(&cfg).is_err());
        cfg.mu_min = 0.5;
        cfg.mu_max = 0.5;
        assert!(sweep(&cfg).is_err());
        cfg.mu_steps = 0;
        assert!(sweep(&cfg).is_err());
    }

    #[test]
    fn single_point_pure_endpoint() {
        let cfg = SweepConfig {
            mu_min: 1.0,
            mu_max: 1.0,
            mu_steps: 1,
            samples_per_mu: 100,
            inject_analytic: true,
            ..SweepConfig::new(CartanAngles::PI_8, FamilyKind::Product)
        };
        let curve = sweep(&cfg).unwrap();
        assert_eq!(curve.points.len(), 1);
        assert!((curve.points[0].ep_eof - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entangled_candidates_are_rejected() {
        let mut best = vec![Best::NONE];
        let bell = DensityMatrix4::pure([
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ])
        .unwrap();
        let gates = [TwoQubitGate::identity()];
        let f = StateFactor::from_density(&bell).unwrap();
        assert!(matches!(
            evaluate(&gates, &f, 0, &mut best),
            Err(Error::EntangledCandidate { .. })
        ));
        let _ = ComplexMat4::zeros();
    }

    #[test]
    fn verification_passes_and_reports_deviations() {
        let r = verify_analytic(1e-12).unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.all_passed(), "{r:?}");
        let strict = verify_analytic(1e-30).unwrap();
        assert!(!strict.all_passed());
        assert!(strict.checks.iter().all(|c| c.max_deviation < 1e-14));
        assert!(verify_analytic(0.0).is_err());
    }

    #[test]
    fn cnot_on_rho_c_example() {
        let chi = FRAC_PI_4;
        let u = cartan_kernel(CartanAngles::new(FRAC_PI_4, 0.0, chi).unwrap()).unwrap();
        let out = apply_gate(&u, &rho_c(0.5).unwrap());
        let third = 1.0 / 3.0;
        let mut want = ComplexMat4::diag([third, third, third, 0.0]);
        want[(1, 2)] = C64::new(0.0, -0.25);
        want[(2, 1)] = C64::new(0.0, 0.25);
        assert!(out.matrix().max_abs_diff(&want) < 1e-15);
    }
}
