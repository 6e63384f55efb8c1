//! q-ary symmetric channel, closed-form codeword error rates and Monte
//! Carlo estimates.
//!
//! Trial `t` of a run with seed `s` draws all of its randomness from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `t`, so estimates do not
//! depend on how trials are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{encode, generator, CodeSpec, GeneratorMatrix};
use crate::decoder::{Decoder, MddDecoder};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::geometry::{chart_len, chart_offset};
use crate::word::Word;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct ChannelSpec {
    pub p: f64,
    pub field: Field,
    pub rng_seed: u64,
}

impl ChannelSpec {
    /// Error word of length `n`: each position is hit with probability `p`
    /// and then takes a uniform nonzero value.
    pub fn error_word<R: Rng>(&self, rng: &mut R, n: usize) -> Word {
        let q = self.field.q();
        Word(
            (0..n)
                .map(|_| {
                    if rng.gen::<f64>() < self.p {
                        Fe(rng.gen_range(1..q) as u8)
                    } else {
                        Fe::ZERO
                    }
                })
                .collect(),
        )
    }
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Chart-wise decoding, every outcome counted as it falls.
    #[serde(rename = "ALG2")]
    Algorithm2,
    /// Chart-wise decoding credited only when the total weight is at most `t0`.
    #[serde(rename = "PM1")]
    Pm1,
    /// Chart-wise decoding credited only when every chart below `i0` has at
    /// most `t0` errors.
    #[serde(rename = "PM2")]
    Pm2,
    #[serde(rename = "MDD")]
    Mdd,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Algorithm2 => "ALG2",
            Method::Pm1 => "PM1",
            Method::Pm2 => "PM2",
            Method::Mdd => "MDD",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Method, String> {
        match s.to_ascii_uppercase().as_str() {
            "ALG2" | "ALGORITHM2" => Ok(Method::Algorithm2),
            "PM1" => Ok(Method::Pm1),
            "PM2" => Ok(Method::Pm2),
            "MDD" => Ok(Method::Mdd),
            _ => Err(format!(
                "unknown method `{s}` (expected ALG2, PM1, PM2 or MDD)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CerPoint {
    pub p: f64,
    pub method: Method,
    pub cer: f64,
    /// Binomial standard error; absent for closed-form values.
    pub stderr: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

impl CerPoint {
    pub const CSV_HEADER: &'static str = "p,method,cer,stderr,trials,seed";

    pub fn analytic(p: f64, method: Method, cer: f64) -> CerPoint {
        CerPoint {
            p,
            method,
            cer,
            stderr: None,
            trials: None,
            seed: None,
        }
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{:e},{},{:e},{},{},{}",
            self.p,
            self.method,
            self.cer,
            opt(self.stderr.map(|s| format!("{s:e}"))),
            opt(self.trials.map(|t| t.to_string())),
            opt(self.seed.map(|s| s.to_string()))
        )
    }
}

/// `P(X > t)` for `X ~ Binomial(n, p)`, summed term by term in the log
/// domain so small tails keep their precision.
pub fn binomial_tail(n: usize, t: usize, p: f64) -> f64 {
    if t >= n || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let mut ln_c = 0.0f64;
    let mut sum = 0.0;
    for j in 1..=n {
        ln_c += ((n - j + 1) as f64).ln() - (j as f64).ln();
        if j > t {
            sum += (ln_c + j as f64 * lp + (n - j) as f64 * lq).exp();
        }
    }
    sum.clamp(0.0, 1.0)
}

pub fn cer_pm1(spec: &CodeSpec, p: f64) -> f64 {
    binomial_tail(spec.n, spec.t0, p)
}

/// `1 - prod_{i < i0} P_i`, `P_i` the probability of at most `t0` errors
/// among the `q^(m-i)` positions of chart `i`.
pub fn cer_pm2(spec: &CodeSpec, p: f64) -> f64 {
    let i0 = spec.i0.unwrap_or(0);
    let log_ok: f64 = (0..i0)
        .map(|i| (-binomial_tail(spec.q.pow((spec.m - i) as u32), spec.t0, p)).ln_1p())
        .sum();
    (-log_ok.exp_m1()).clamp(0.0, 1.0)
}

pub fn cer_mdd(spec: &CodeSpec, p: f64) -> f64 {
    binomial_tail(spec.n, spec.t_md, p)
}

pub fn cer_analytic(spec: &CodeSpec, method: Method, p: f64) -> f64 {
    match method {
        Method::Pm1 => cer_pm1(spec, p),
        Method::Pm2 | Method::Algorithm2 => cer_pm2(spec, p),
        Method::Mdd => cer_mdd(spec, p),
    }
}

/// Log-spaced grid of `points` values from `pmin` to `pmax`, endpoints exact.
pub fn log_grid(pmin: f64, pmax: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![pmin];
    }
    let (a, b) = (pmin.ln(), pmax.ln());
    let mut g: Vec<f64> = (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect();
    g[0] = pmin;
    g[points - 1] = pmax;
    g
}

/// Encoder and decoders for one code, reusable across runs.
pub struct Simulator {
    pub spec: CodeSpec,
    gen: GeneratorMatrix,
    decoder: Decoder,
    mdd: Option<MddDecoder>,
}

impl Simulator {
    pub fn new(spec: &CodeSpec) -> Result<Simulator> {
        Ok(Simulator {
            spec: spec.clone(),
            gen: generator(spec),
            decoder: Decoder::new(spec)?,
            mdd: None,
        })
    }

    /// Also prepares the exhaustive decoder; fails if it is infeasible.
    pub fn with_mdd(mut self) -> Result<Simulator> {
        self.mdd = Some(MddDecoder::new(&self.spec)?);
        Ok(self)
    }

    pub fn decoder(&self) -> &Decoder {
        &self.decoder
    }

    /// Runs one trial; true on a codeword error.
    pub fn trial(&self, channel: &ChannelSpec, method: Method, trial: u64) -> Result<bool> {
        Ok(self.trial_many(channel, &[method], trial)?[0])
    }

    /// Runs one trial and scores it under each method, decoding at most once
    /// per decoder.
    pub fn trial_many(
        &self,
        channel: &ChannelSpec,
        methods: &[Method],
        trial: u64,
    ) -> Result<Vec<bool>> {
        let spec = &self.spec;
        let f = &spec.field;
        let mut rng = trial_rng(channel.rng_seed, trial);
        let msg: Vec<Fe> = (0..spec.k)
            .map(|_| Fe(rng.gen_range(0..spec.q) as u8))
            .collect();
        let c = encode(&self.gen, f, &msg)?;
        let e = channel.error_word(&mut rng, spec.n);
        let r = c.add(&e, f);
        let mut chart_decode: Option<bool> = None;
        let mut decode_ok = || -> Result<bool> {
            if let Some(ok) = chart_decode {
                return Ok(ok);
            }
            let out = self.decoder.decode(&r)?;
            let ok = out.is_success() && out.estimated_codeword == c;
            chart_decode = Some(ok);
            Ok(ok)
        };
        let mut errors = Vec::with_capacity(methods.len());
        for &method in methods {
            let ok = match method {
                Method::Algorithm2 => decode_ok()?,
                Method::Pm1 => e.weight() <= spec.t0 && decode_ok()?,
                Method::Pm2 => {
                    let within = (0..spec.i0.unwrap_or(0)).all(|i| {
                        let off = chart_offset(spec.m, spec.q, i);
                        let len = chart_len(spec.m, spec.q, i);
                        e.0[off..off + len].iter().filter(|x| !x.is_zero()).count() <= spec.t0
                    });
                    within && decode_ok()?
                }
                Method::Mdd => {
                    let mdd = self.mdd.as_ref().ok_or(Error::MddInfeasible {
                        n: spec.n,
                        k: spec.k,
                        q: spec.q,
                    })?;
                    mdd.decode(&r)? == c
                }
            };
            errors.push(!ok);
        }
        Ok(errors)
    }

    pub fn simulate(&self, channel: &ChannelSpec, method: Method, trials: u64) -> Result<CerPoint> {
        Ok(self.simulate_many(channel, &[method], trials)?.remove(0))
    }

    /// Estimates for several methods from one shared set of trials.
    pub fn simulate_many(
        &self,
        channel: &ChannelSpec,
        methods: &[Method],
        trials: u64,
    ) -> Result<Vec<CerPoint>> {
        if methods.contains(&Method::Mdd) && self.mdd.is_none() {
            return Err(Error::MddInfeasible {
                n: self.spec.n,
                k: self.spec.k,
                q: self.spec.q,
            });
        }
        let zero = || vec![0u64; methods.len()];
        let errors = (0..trials)
            .into_par_iter()
            .map(|t| self.trial_many(channel, methods, t))
            .try_fold(zero, |mut acc, r| {
                for (a, b) in acc.iter_mut().zip(r?) {
                    *a += u64::from(b);
                }
                Ok::<_, Error>(acc)
            })
            .try_reduce(zero, |a, b| {
                Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect())
            })?;
        let n = trials.max(1) as f64;
        Ok(methods
            .iter()
            .zip(errors)
            .map(|(&method, errs)| {
                let cer = errs as f64 / n;
                CerPoint {
                    p: channel.p,
                    method,
                    cer,
                    stderr: Some((cer * (1.0 - cer) / n).sqrt()),
                    trials: Some(trials),
                    seed: Some(channel.rng_seed),
                }
            })
            .collect())
    }
}

pub fn simulate_cer(
    spec: &CodeSpec,
    channel: &ChannelSpec,
    method: Method,
    trials: u64,
) -> Result<CerPoint> {
    let sim = Simulator::new(spec)?;
    let sim = if method == Method::Mdd {
        sim.with_mdd()?
    } else {
        sim
    };
    sim.simulate(channel, method, trials)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_edges() {
        assert_eq!(binomial_tail(10, 3, 0.0), 0.0);
        assert_eq!(binomial_tail(10, 10, 0.4), 0.0);
        let p: f64 = 0.1;
        let direct = 1.0 - (1.0 - p).powi(10);
        assert!((binomial_tail(10, 0, p) - direct).abs() < 1e-14);
    }

    #[test]
    fn grid_endpoints() {
        let g = log_grid(1e-4, 1e-1, 4);
        assert_eq!((g[0], g[3]), (1e-4, 1e-1));
        assert!((g[1] - 1e-3).abs() < 1e-15);
    }
}
