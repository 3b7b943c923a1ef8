//! Monte Carlo simulation of the prepare-and-measure scheme.
//!
//! Per pulse: Alice draws `x_A ~ N(0, V_M)` and prepares the state
//! `diag(1/r, r)` displaced by `x_A` along x; the channel applies loss and
//! excess noise independently in each quadrature; Bob picks a basis with a
//! fair coin and measures with efficiency `η` and electronic noise `v_el`.
//! A random `reveal_fraction` of the x-basis pulses is disclosed for
//! parameter estimation; all y-basis pulses estimate `V_y^B1`.
//!
//! # Randomness
//!
//! Pulses are generated in batches of [`BATCH_SIZE`]. Batch `b` of a run
//! with seed `s` keys a ChaCha8 generator with the 32-byte seed
//! `s.to_le_bytes() ‖ b.to_le_bytes() ‖ 0…`, and every pulse component
//! reads its own ChaCha stream ([`Stream`]). Adding or removing draws in one
//! component never shifts the numbers seen by another, and batches can be
//! produced in any order: results are merged in batch order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{build_gamma_abrh, ebs_variance, noise_budget, PhaseHypothesis, ProtocolParams};

pub const BATCH_SIZE: u64 = 1 << 16;
/// Minimum number of revealed x-basis pairs for estimation.
pub const MIN_REVEALED: usize = 1000;

/// Per-component random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Modulation = 0,
    StateNoise = 1,
    ChannelNoise = 2,
    BasisCoin = 3,
    DetectorNoise = 4,
    Reveal = 5,
}

fn stream_rng(seed: u64, batch: u64, stream: Stream) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&batch.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream as u64);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub params: ProtocolParams,
    /// Phase-quadrature transmission; ground truth only, never estimated.
    pub t_y: f64,
    pub eps_y: f64,
    pub n_pulses: u64,
    pub seed: u64,
    pub reveal_fraction: f64,
}

impl SimConfig {
    /// Symmetric channel (`T_y = T_x`, `ε_y = ε_x`), half the x data revealed.
    pub fn symmetric(params: ProtocolParams, n_pulses: u64, seed: u64) -> Self {
        Self {
            params,
            t_y: params.t_x(),
            eps_y: params.eps_x(),
            n_pulses,
            seed,
            reveal_fraction: 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field, value, range| Err(Error::InvalidParameter { field, value, range });
        if !(self.t_y > 0.0 && self.t_y <= 1.0) {
            return bad("t_y", self.t_y, "0 < t_y <= 1");
        }
        if !(self.eps_y >= 0.0) || !self.eps_y.is_finite() {
            return bad("eps_y", self.eps_y, "eps_y >= 0");
        }
        if self.n_pulses == 0 {
            return bad("n_pulses", 0.0, "n_pulses >= 1");
        }
        if !(self.reveal_fraction > 0.0 && self.reveal_fraction < 1.0) {
            return bad("reveal_fraction", self.reveal_fraction, "0 < reveal_fraction < 1");
        }
        Ok(())
    }

    /// `V_y^B1` implied by the simulated phase-quadrature channel.
    pub fn true_v_y(&self) -> f64 {
        self.t_y * self.params.r() + (1.0 - self.t_y) + self.t_y * self.eps_y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
}

/// One sifted measurement: Bob's basis, Alice's modulation and Bob's outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawRecord {
    pub basis: Basis,
    pub alice_x: f64,
    pub bob_value: f64,
}

/// Neumaier-compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.c);
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Running first and second moments of a pair of variables.
#[derive(Debug, Clone, Copy, Default)]
pub struct PairSums {
    n: u64,
    a: CompensatedSum,
    b: CompensatedSum,
    aa: CompensatedSum,
    bb: CompensatedSum,
    ab: CompensatedSum,
}

impl PairSums {
    fn push(&mut self, a: f64, b: f64) {
        self.n += 1;
        self.a.add(a);
        self.b.add(b);
        self.aa.add(a * a);
        self.bb.add(b * b);
        self.ab.add(a * b);
    }

    fn merge(&mut self, o: &PairSums) {
        self.n += o.n;
        self.a.merge(&o.a);
        self.b.merge(&o.b);
        self.aa.merge(&o.aa);
        self.bb.merge(&o.bb);
        self.ab.merge(&o.ab);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    fn mean_a(&self) -> f64 {
        self.a.value() / self.n as f64
    }
    fn mean_b(&self) -> f64 {
        self.b.value() / self.n as f64
    }
    pub fn var_a(&self) -> f64 {
        self.aa.value() / self.n as f64 - self.mean_a().powi(2)
    }
    pub fn var_b(&self) -> f64 {
        self.bb.value() / self.n as f64 - self.mean_b().powi(2)
    }
    pub fn cov(&self) -> f64 {
        self.ab.value() / self.n as f64 - self.mean_a() * self.mean_b()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct BatchSums {
    /// (x_A, prepared x) over all pulses
    prepared: PairSums,
    /// (x_A, Bob x) over x-basis pulses
    x_all: PairSums,
    /// revealed subset of `x_all`
    x_revealed: PairSums,
    /// (x_A, Bob y) over y-basis pulses
    y_all: PairSums,
}

impl BatchSums {
    fn merge(&mut self, o: &BatchSums) {
        self.prepared.merge(&o.prepared);
        self.x_all.merge(&o.x_all);
        self.x_revealed.merge(&o.x_revealed);
        self.y_all.merge(&o.y_all);
    }
}

/// Empirical second moments of the sifted data, in shot-noise units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoments {
    /// Variance of Alice's modulation over all pulses.
    pub var_x_a: f64,
    /// Variance of the prepared x quadrature (modulation plus state noise).
    pub var_x_prepared: f64,
    /// Covariance of Alice's modulation and Bob's x outcome.
    pub cov_x_a_x_b: f64,
    pub var_x_b: f64,
    /// Covariance of Alice's modulation and Bob's y outcome (zero in theory).
    pub cov_x_a_y_b: f64,
    pub var_y_b: f64,
}

/// Parameter estimates with their approximate standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimates {
    pub t_x_hat: f64,
    pub t_x_se: f64,
    pub eps_x_hat: f64,
    pub eps_x_se: f64,
    pub v_y_hat: f64,
    pub v_y_se: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOutcome {
    pub moments: EmpiricalMoments,
    pub estimates: Estimates,
    pub n_x_sifted: u64,
    pub n_y_sifted: u64,
    pub n_revealed: u64,
}

impl SimOutcome {
    pub fn t_x_hat(&self) -> f64 {
        self.estimates.t_x_hat
    }
    pub fn eps_x_hat(&self) -> f64 {
        self.estimates.eps_x_hat
    }
    pub fn v_y_hat(&self) -> f64 {
        self.estimates.v_y_hat
    }
}

fn run_batch(cfg: &SimConfig, batch: u64, n: u64, mut sink: Option<&mut Vec<RawRecord>>) -> BatchSums {
    let p = &cfg.params;
    let mut modulation = stream_rng(cfg.seed, batch, Stream::Modulation);
    let mut state_noise = stream_rng(cfg.seed, batch, Stream::StateNoise);
    let mut channel = stream_rng(cfg.seed, batch, Stream::ChannelNoise);
    let mut coin = stream_rng(cfg.seed, batch, Stream::BasisCoin);
    let mut detector = stream_rng(cfg.seed, batch, Stream::DetectorNoise);
    let mut reveal = stream_rng(cfg.seed, batch, Stream::Reveal);

    let sd_mod = p.v_mod().sqrt();
    let (sd_nx, sd_ny) = ((1.0 / p.r()).sqrt(), p.r().sqrt());
    let (gx, gy) = (p.t_x().sqrt(), cfg.t_y.sqrt());
    let sd_cx = ((1.0 - p.t_x()) + p.t_x() * p.eps_x()).sqrt();
    let sd_cy = ((1.0 - cfg.t_y) + cfg.t_y * cfg.eps_y).sqrt();
    let g_det = p.eta().sqrt();
    let sd_det = ((1.0 - p.eta()) + p.v_el()).sqrt();

    let mut sums = BatchSums::default();
    for _ in 0..n {
        let z: f64 = modulation.sample(StandardNormal);
        let x_a = sd_mod * z;
        let nx: f64 = state_noise.sample(StandardNormal);
        let ny: f64 = state_noise.sample(StandardNormal);
        let (x, y) = (x_a + sd_nx * nx, sd_ny * ny);
        sums.prepared.push(x_a, x);

        let cx: f64 = channel.sample(StandardNormal);
        let cy: f64 = channel.sample(StandardNormal);
        let (x_out, y_out) = (gx * x + sd_cx * cx, gy * y + sd_cy * cy);

        let basis = if coin.random::<bool>() { Basis::X } else { Basis::Y };
        let d: f64 = detector.sample(StandardNormal);
        let revealed = reveal.random::<f64>() < cfg.reveal_fraction;

        let bob = match basis {
            Basis::X => g_det * x_out + sd_det * d,
            Basis::Y => g_det * y_out + sd_det * d,
        };
        match basis {
            Basis::X => {
                sums.x_all.push(x_a, bob);
                if revealed {
                    sums.x_revealed.push(x_a, bob);
                }
            }
            Basis::Y => sums.y_all.push(x_a, bob),
        }
        if let Some(out) = sink.as_deref_mut() {
            out.push(RawRecord {
                basis,
                alice_x: x_a,
                bob_value: bob,
            });
        }
    }
    sums
}

fn batches(n_pulses: u64) -> Vec<(u64, u64)> {
    let n_batches = n_pulses.div_ceil(BATCH_SIZE);
    (0..n_batches)
        .map(|b| (b, BATCH_SIZE.min(n_pulses - b * BATCH_SIZE)))
        .collect()
}

fn finish(cfg: &SimConfig, sums: &BatchSums) -> Result<SimOutcome> {
    let moments = EmpiricalMoments {
        var_x_a: sums.prepared.var_a(),
        var_x_prepared: sums.prepared.var_b(),
        cov_x_a_x_b: sums.x_all.cov(),
        var_x_b: sums.x_all.var_b(),
        cov_x_a_y_b: sums.y_all.cov(),
        var_y_b: sums.y_all.var_b(),
    };
    let estimates = estimate_params(&cfg.params, &sums.x_revealed, &sums.y_all)?;
    Ok(SimOutcome {
        moments,
        estimates,
        n_x_sifted: sums.x_all.count(),
        n_y_sifted: sums.y_all.count(),
        n_revealed: sums.x_revealed.count(),
    })
}

/// Runs the simulation. Deterministic given the config (including seed).
pub fn simulate(cfg: &SimConfig) -> Result<SimOutcome> {
    cfg.validate()?;
    let parts: Vec<BatchSums> = batches(cfg.n_pulses)
        .into_par_iter()
        .map(|(b, n)| run_batch(cfg, b, n, None))
        .collect();
    let mut total = BatchSums::default();
    for s in &parts {
        total.merge(s);
    }
    finish(cfg, &total)
}

/// As [`simulate`], also returning every sifted record in pulse order.
pub fn simulate_with_samples(cfg: &SimConfig) -> Result<(SimOutcome, Vec<RawRecord>)> {
    cfg.validate()?;
    let parts: Vec<(BatchSums, Vec<RawRecord>)> = batches(cfg.n_pulses)
        .into_par_iter()
        .map(|(b, n)| {
            let mut recs = Vec::with_capacity(n as usize);
            let s = run_batch(cfg, b, n, Some(&mut recs));
            (s, recs)
        })
        .collect();
    let mut total = BatchSums::default();
    let mut records = Vec::with_capacity(cfg.n_pulses as usize);
    for (s, recs) in parts {
        total.merge(&s);
        records.extend(recs);
    }
    Ok((finish(cfg, &total)?, records))
}

/// Estimates `T_x`, `ε_x` (channel-input referred) and `V_y^B1` from
/// revealed x-basis pairs and y-basis outcomes. The detector (`η`, `v_el`) is
/// assumed calibrated.
pub fn estimate_params(p: &ProtocolParams, revealed_x: &PairSums, y_data: &PairSums) -> Result<Estimates> {
    let n = revealed_x.count() as usize;
    if n < MIN_REVEALED {
        return Err(Error::InsufficientData {
            got: n,
            need: MIN_REVEALED,
        });
    }
    if y_data.count() < 2 {
        return Err(Error::InsufficientData {
            got: y_data.count() as usize,
            need: 2,
        });
    }
    let eta = p.eta();
    let nf = n as f64;
    let var_a = revealed_x.var_a();
    let slope = revealed_x.cov() / var_a;
    let resid = revealed_x.var_b() - slope * revealed_x.cov();
    let t_x_hat = slope * slope / eta;
    let slope_se = (resid / (nf * var_a)).sqrt();
    let t_x_se = 2.0 * slope.abs() * slope_se / eta;

    // resid = η T (1/r + ε) + 1 − η T + v_el
    let eta_t = eta * t_x_hat;
    let eps_x_hat = (resid - 1.0 - p.v_el()) / eta_t + 1.0 - 1.0 / p.r();
    let eps_x_se = resid * (2.0 / nf).sqrt() / eta_t;

    let chi_hom = noise_budget(p).chi_hom;
    let var_y = y_data.var_b();
    let v_y_hat = var_y / eta - chi_hom;
    let v_y_se = var_y * (2.0 / y_data.count() as f64).sqrt() / eta;

    Ok(Estimates {
        t_x_hat,
        t_x_se,
        eps_x_hat,
        eps_x_se,
        v_y_hat,
        v_y_se,
    })
}

/// An empirical moment next to its model value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub name: &'static str,
    pub empirical: f64,
    pub analytic: f64,
    pub std_err: f64,
}

impl MomentCheck {
    /// Deviation in standard errors.
    pub fn z(&self) -> f64 {
        (self.empirical - self.analytic) / self.std_err
    }
}

/// Compares the empirical moments with the entanglement-based detected
/// covariance matrix. Alice's modulation is `g · x_A^EB` with
/// `g = √((V² − 1)/(r V))`, so her entries are rescaled by `g` and `g²`.
pub fn moment_checks(cfg: &SimConfig, out: &SimOutcome) -> Result<Vec<MomentCheck>> {
    let p = &cfg.params;
    let v = ebs_variance(p);
    let g = ((v * v - 1.0) / (p.r() * v)).sqrt();
    let eb = build_gamma_abrh(p, &PhaseHypothesis::new(cfg.true_v_y(), 0.0))?;
    let m = &out.moments;
    let (n_all, nx, ny) = (cfg.n_pulses as f64, out.n_x_sifted as f64, out.n_y_sifted as f64);

    let var_se = |var: f64, n: f64| var * (2.0 / n).sqrt();
    let cov_se = |va: f64, vb: f64, c: f64, n: f64| ((va * vb + c * c) / n).sqrt();

    let var_x_a = g * g * eb.get(0, 0);
    let cov_ab = g * eb.get(0, 2);
    let var_x_b = eb.get(2, 2);
    let var_y_b = eb.get(3, 3);
    let var_prepared = v * v / p.r();
    Ok(vec![
        MomentCheck {
            name: "var_x_a",
            empirical: m.var_x_a,
            analytic: var_x_a,
            std_err: var_se(var_x_a, n_all).max(f64::MIN_POSITIVE),
        },
        MomentCheck {
            name: "var_x_prepared",
            empirical: m.var_x_prepared,
            analytic: var_prepared,
            std_err: var_se(var_prepared, n_all),
        },
        MomentCheck {
            name: "cov_x_a_x_b",
            empirical: m.cov_x_a_x_b,
            analytic: cov_ab,
            std_err: cov_se(var_x_a, var_x_b, cov_ab, nx).max(f64::MIN_POSITIVE),
        },
        MomentCheck {
            name: "var_x_b",
            empirical: m.var_x_b,
            analytic: var_x_b,
            std_err: var_se(var_x_b, nx),
        },
        MomentCheck {
            name: "cov_x_a_y_b",
            empirical: m.cov_x_a_y_b,
            analytic: g * eb.get(0, 3),
            std_err: cov_se(var_x_a, var_y_b, 0.0, ny).max(f64::MIN_POSITIVE),
        },
        MomentCheck {
            name: "var_y_b",
            empirical: m.var_y_b,
            analytic: var_y_b,
            std_err: var_se(var_y_b, ny),
        },
    ])
}

/// Magic bytes opening a raw-sample dump.
pub const RAW_MAGIC: [u8; 8] = *b"UDQKDRAW";
pub const RAW_VERSION: u32 = 1;

/// Writes records as little-endian `f64` triples `(basis, alice_x, bob_value)`
/// with basis `0.0` for x and `1.0` for y, after a 16-byte header: the magic,
/// a `u32` version and four reserved zero bytes.
pub fn write_raw_dump(path: &Path, records: &[RawRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&RAW_MAGIC)?;
    w.write_all(&RAW_VERSION.to_le_bytes())?;
    w.write_all(&[0u8; 4])?;
    for r in records {
        let flag = match r.basis {
            Basis::X => 0.0f64,
            Basis::Y => 1.0f64,
        };
        w.write_all(&flag.to_le_bytes())?;
        w.write_all(&r.alice_x.to_le_bytes())?;
        w.write_all(&r.bob_value.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_raw_dump(path: &Path) -> Result<Vec<RawRecord>> {
    let mut bytes = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut bytes)?;
    if bytes.len() < 16 || bytes[..8] != RAW_MAGIC {
        return Err(Error::Io("not a raw-sample dump".into()));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != RAW_VERSION {
        return Err(Error::Io(format!("unsupported raw dump version {version}")));
    }
    let body = &bytes[16..];
    if body.len() % 24 != 0 {
        return Err(Error::Io("truncated raw dump".into()));
    }
    let f = |b: &[u8]| f64::from_le_bytes(b.try_into().unwrap());
    body.chunks_exact(24)
        .map(|c| {
            let basis = match f(&c[..8]) {
                0.0 => Basis::X,
                1.0 => Basis::Y,
                x => return Err(Error::Io(format!("bad basis flag {x}"))),
            };
            Ok(RawRecord {
                basis,
                alice_x: f(&c[8..16]),
                bob_value: f(&c[16..24]),
            })
        })
        .collect()
}
