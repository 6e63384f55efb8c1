//! Chart-wise decoding of PRM codes and a nearest-codeword oracle.
//!
//! For chart `i` the syndrome `S_h = sum_{P in P^m} r_P h(P)` is taken over
//! the whole projective space, with `h` running over the degree-`mu` forms
//! `X_i^(mu - |a|) X^a` of the chart's dual monomials and `r` the received
//! word with the estimates of earlier charts already removed. Charts below
//! `i0` are decoded with BMS, the syndrome extension and the inverse DFT;
//! from `i0` on the syndrome is the full spectrum and the inverse DFT alone
//! recovers the chart error.

use std::collections::HashMap;

use serde::Serialize;

use crate::bms::{bms_run, capacity, BmsConfig, BmsStats};
use crate::codes::{
    dual_monomials, encode, generator, homogenize, CodeSpec, Family, GeneratorMatrix,
};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::geometry::{chart_len, chart_offset, PointList};
use crate::linalg::Matrix;
use crate::monomial::{GroebnerSet, Monomial};
use crate::transform::{box_key, dft, extend_with, idft, Spectrum, SyndromeArray};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartMode {
    Bms,
    IdftOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Success,
    Failure { chart: usize, reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartReport {
    pub chart: usize,
    pub mode: ChartMode,
    pub ok: bool,
    pub reason: Option<String>,
    /// Nonzero positions of the chart's error estimate.
    pub corrected: usize,
    pub basis_size: Option<usize>,
    pub footprint: Option<usize>,
    pub voted: Option<usize>,
    pub contested: Option<usize>,
    #[serde(skip)]
    pub basis: Option<GroebnerSet>,
    #[serde(skip)]
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecodeOutcome {
    #[serde(serialize_with = "ser_word")]
    pub estimated_error: Word,
    #[serde(serialize_with = "ser_word")]
    pub estimated_codeword: Word,
    pub status: Status,
    pub charts: Vec<ChartReport>,
}

fn ser_word<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(w.0.iter().map(|c| c.0))
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        self.status == Status::Success
    }
}

/// Result of decoding one chart from its syndrome.
pub struct ChartResult {
    pub error: Vec<Fe>,
    pub failure: Option<String>,
    pub stats: Option<BmsStats>,
    pub basis: Option<GroebnerSet>,
    pub trace: Vec<String>,
}

/// Decodes one affine chart of dimension `nv` from a syndrome known on a
/// divisor-closed monomial set. `IdftOnly` requires the full spectrum.
pub fn decode_chart(
    syndrome: &SyndromeArray,
    field: &Field,
    mode: ChartMode,
    cfg: &BmsConfig,
) -> Result<ChartResult> {
    let (nv, q) = (syndrome.nvars, syndrome.q);
    let spectrum = match mode {
        ChartMode::IdftOnly => {
            let values = syndrome
                .values
                .iter()
                .map(|v| v.ok_or_else(|| Error::MissingSyndrome("full spectrum required".into())))
                .collect::<Result<Vec<_>>>()?;
            Spectrum {
                nvars: nv,
                q,
                values,
            }
        }
        ChartMode::Bms => {
            let out = bms_run(syndrome, field, cfg)?;
            let stats = Some(out.stats.clone());
            if let Some(f) = out.failure {
                return Ok(ChartResult {
                    error: vec![Fe::ZERO; q.pow(nv as u32)],
                    failure: Some(f.to_string()),
                    stats,
                    basis: None,
                    trace: out.trace,
                });
            }
            let nf = out
                .normal_forms
                .as_ref()
                .expect("normal forms exist on success");
            let known: Vec<Fe> = out
                .footprint
                .iter()
                .map(|h| out.values.get(&h.0).expect("footprint values are known"))
                .collect();
            let spectrum = extend_with(nf, &known, nv, q, field);
            let error = idft(&spectrum, field)?;
            let cap = out.stats.capacity;
            let weight = error.iter().filter(|c| !c.is_zero()).count();
            let check = dft(&error, nv, field)?;
            let consistent = syndrome
                .values
                .iter()
                .zip(&check.values)
                .all(|(s, c)| s.is_none_or(|s| s == *c));
            let failure = if !consistent {
                Some("estimate does not reproduce the syndrome".to_string())
            } else if weight > cap {
                Some(format!("estimate has weight {weight} above capacity {cap}"))
            } else {
                None
            };
            let error = if failure.is_some() {
                vec![Fe::ZERO; error.len()]
            } else {
                error
            };
            return Ok(ChartResult {
                error,
                failure,
                stats,
                basis: Some(out.basis),
                trace: out.trace,
            });
        }
    };
    Ok(ChartResult {
        error: idft(&spectrum, field)?,
        failure: None,
        stats: None,
        basis: None,
        trace: Vec::new(),
    })
}

struct Chart {
    nv: usize,
    offset: usize,
    len: usize,
    mode: ChartMode,
    /// Box keys of the dual monomials.
    keys: Vec<usize>,
    /// `evals[t * n + k]`: `t`-th dual form at the `k`-th point.
    evals: Vec<Fe>,
}

/// Precomputed data for decoding one PRM code.
pub struct Decoder {
    pub spec: CodeSpec,
    charts: Vec<Chart>,
    pub config: BmsConfig,
}

impl Decoder {
    pub fn new(spec: &CodeSpec) -> Result<Decoder> {
        Self::with_config(spec, BmsConfig::default())
    }

    pub fn with_config(spec: &CodeSpec, config: BmsConfig) -> Result<Decoder> {
        if spec.family != Family::Prm {
            return Err(Error::OrderOutOfRangeNu {
                nu: spec.nu,
                lo: 1,
                hi: spec.m * (spec.q - 1),
            });
        }
        let (m, q, f) = (spec.m, spec.q, &spec.field);
        let points = spec.points();
        let i0 = spec.i0.unwrap_or(m + 1);
        let mut charts = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let duals = dual_monomials(spec, i)?;
            let forms: Vec<Monomial> = duals.iter().map(|h| homogenize(spec, i, h)).collect();
            let evals = eval_forms(&forms, &points, f);
            charts.push(Chart {
                nv: m - i,
                offset: chart_offset(m, q, i),
                len: chart_len(m, q, i),
                mode: if i >= i0 {
                    ChartMode::IdftOnly
                } else {
                    ChartMode::Bms
                },
                keys: duals.iter().map(|h| box_key(&h.0, q)).collect(),
                evals,
            });
        }
        Ok(Decoder {
            spec: spec.clone(),
            charts,
            config,
        })
    }

    /// Chart-`i` syndrome of `word`, summed literally over all points.
    pub fn chart_syndrome(&self, i: usize, word: &[Fe]) -> SyndromeArray {
        let f = &self.spec.field;
        let ch = &self.charts[i];
        let n = self.spec.n;
        let mut s = SyndromeArray::empty(ch.nv, self.spec.q);
        for (t, &key) in ch.keys.iter().enumerate() {
            let row = &ch.evals[t * n..(t + 1) * n];
            let v = row.iter().zip(word).fold(Fe::ZERO, |acc, (&h, &r)| {
                if r.is_zero() {
                    acc
                } else {
                    f.mul_add(acc, h, r)
                }
            });
            s.values[key] = Some(v);
        }
        s
    }

    pub fn chart_mode(&self, i: usize) -> ChartMode {
        self.charts[i].mode
    }

    /// Voting capacity of each chart decoded with BMS.
    pub fn capacities(&self) -> Vec<Option<usize>> {
        (0..self.charts.len())
            .map(|i| {
                (self.charts[i].mode == ChartMode::Bms)
                    .then(|| capacity(&self.chart_syndrome(i, &vec![Fe::ZERO; self.spec.n])))
            })
            .collect()
    }

    pub fn decode(&self, received: &Word) -> Result<DecodeOutcome> {
        let (f, n) = (&self.spec.field, self.spec.n);
        if received.len() != n {
            return Err(Error::Length {
                expected: n,
                got: received.len(),
            });
        }
        let mut work = received.0.clone();
        let mut est = vec![Fe::ZERO; n];
        let mut status = Status::Success;
        let mut reports = Vec::with_capacity(self.charts.len());
        for (i, ch) in self.charts.iter().enumerate() {
            let syn = self.chart_syndrome(i, &work);
            let res = decode_chart(&syn, f, ch.mode, &self.config)?;
            let part = &mut est[ch.offset..ch.offset + ch.len];
            part.copy_from_slice(&res.error);
            for (w, &e) in work[ch.offset..ch.offset + ch.len]
                .iter_mut()
                .zip(&res.error)
            {
                *w = f.sub(*w, e);
            }
            if let (Some(reason), Status::Success) = (&res.failure, &status) {
                status = Status::Failure {
                    chart: i,
                    reason: reason.clone(),
                };
            }
            reports.push(ChartReport {
                chart: i,
                mode: ch.mode,
                ok: res.failure.is_none(),
                reason: res.failure.clone(),
                corrected: res.error.iter().filter(|c| !c.is_zero()).count(),
                basis_size: res.stats.as_ref().map(|s| s.basis_size),
                footprint: res.stats.as_ref().map(|s| s.footprint),
                voted: res.stats.as_ref().map(|s| s.voted),
                contested: res.stats.as_ref().map(|s| s.contested),
                basis: res.basis,
                trace: res.trace,
            });
        }
        let est = Word(est);
        Ok(DecodeOutcome {
            estimated_codeword: received.sub(&est, f),
            estimated_error: est,
            status,
            charts: reports,
        })
    }
}

fn eval_forms(forms: &[Monomial], points: &PointList, f: &Field) -> Vec<Fe> {
    let n = points.len();
    let mut out = vec![Fe::ZERO; forms.len() * n];
    for (k, p) in points.iter().enumerate() {
        for (t, h) in forms.iter().enumerate() {
            out[t * n + k] =
                h.0.iter()
                    .zip(p)
                    .fold(Fe::ONE, |acc, (&a, &x)| f.mul(acc, f.pow(x, a as u64)));
        }
    }
    out
}

/// Convenience wrapper building a fresh [`Decoder`].
pub fn decode_prm(spec: &CodeSpec, received: &Word) -> Result<DecodeOutcome> {
    Decoder::new(spec)?.decode(received)
}

/// Nearest-codeword decoding by exhaustive search.
pub struct MddDecoder {
    field: Field,
    n: usize,
    method: MddMethod,
}

enum MddMethod {
    /// Every codeword, in message odometer order (last symbol fastest).
    Enumerate(Vec<Vec<Fe>>),
    /// Parity checks and the first minimum-weight leader of each coset,
    /// leaders tried by weight, then support, then values.
    Cosets {
        parity: Matrix,
        leaders: HashMap<Vec<Fe>, Vec<Fe>>,
    },
}

pub const MDD_LIMIT: u128 = 2_000_000;

impl MddDecoder {
    pub fn new(spec: &CodeSpec) -> Result<MddDecoder> {
        let gen = generator(spec);
        Self::from_generator(&gen, &spec.field)
    }

    pub fn from_generator(gen: &GeneratorMatrix, field: &Field) -> Result<MddDecoder> {
        let (n, k, q) = (gen.n(), gen.k(), field.q());
        let count = |e: usize| (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
        if count(k) <= MDD_LIMIT {
            let total = count(k) as usize;
            let words = (0..total)
                .map(|idx| {
                    let msg = crate::geometry::affine_coords(idx, k, q);
                    encode(gen, field, &msg).map(|w| w.0)
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(MddDecoder {
                field: field.clone(),
                n,
                method: MddMethod::Enumerate(words),
            });
        }
        if count(n - k) <= MDD_LIMIT {
            let parity = gen.matrix.null_space(field);
            let target = count(n - k) as usize;
            let mut leaders: HashMap<Vec<Fe>, Vec<Fe>> = HashMap::with_capacity(target);
            'w: for w in 0..=n {
                let mut supp: Vec<usize> = (0..w).collect();
                loop {
                    for vidx in 0..(q - 1).pow(w as u32) {
                        let mut e = vec![Fe::ZERO; n];
                        let mut v = vidx;
                        for &pos in supp.iter().rev() {
                            e[pos] = Fe((v % (q - 1) + 1) as u8);
                            v /= q - 1;
                        }
                        let s = syndrome_of(&parity, &e, field);
                        leaders.entry(s).or_insert(e);
                        if leaders.len() == target {
                            break 'w;
                        }
                    }
                    if !next_combination(&mut supp, n) {
                        break;
                    }
                }
            }
            return Ok(MddDecoder {
                field: field.clone(),
                n,
                method: MddMethod::Cosets { parity, leaders },
            });
        }
        Err(Error::MddInfeasible { n, k, q })
    }

    pub fn decode(&self, received: &Word) -> Result<Word> {
        if received.len() != self.n {
            return Err(Error::Length {
                expected: self.n,
                got: received.len(),
            });
        }
        match &self.method {
            MddMethod::Enumerate(words) => {
                let mut best = 0;
                let mut best_d = usize::MAX;
                for (i, c) in words.iter().enumerate() {
                    let d = c.iter().zip(&received.0).filter(|(a, b)| a != b).count();
                    if d < best_d {
                        best_d = d;
                        best = i;
                    }
                }
                Ok(Word(words[best].clone()))
            }
            MddMethod::Cosets { parity, leaders } => {
                let s = syndrome_of(parity, &received.0, &self.field);
                let e = &leaders[&s];
                Ok(received.sub(&Word(e.clone()), &self.field))
            }
        }
    }
}

fn syndrome_of(parity: &Matrix, e: &[Fe], f: &Field) -> Vec<Fe> {
    (0..parity.rows)
        .map(|r| {
            parity
                .row(r)
                .iter()
                .zip(e)
                .fold(Fe::ZERO, |acc, (&h, &x)| f.mul_add(acc, h, x))
        })
        .collect()
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if c[i] < n - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn mdd_decode(spec: &CodeSpec, received: &Word) -> Result<Word> {
    MddDecoder::new(spec)?.decode(received)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::prm_params;

    #[test]
    fn clean_word_decodes_to_itself() {
        let f = Field::new(2, 2).unwrap();
        let spec = prm_params(3, &f, 5).unwrap();
        let gen = generator(&spec);
        let msg: Vec<Fe> = (0..spec.k).map(|i| Fe((i % 4) as u8)).collect();
        let c = encode(&gen, &f, &msg).unwrap();
        let out = Decoder::new(&spec).unwrap().decode(&c).unwrap();
        assert!(out.is_success());
        assert_eq!(out.estimated_error.weight(), 0);
        assert_eq!(out.estimated_codeword, c);
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
