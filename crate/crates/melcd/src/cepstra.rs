//! Mel-cepstra extraction: pre-emphasis, Hamming-windowed frames, magnitude
//! spectrum, triangular mel filterbank, log, DCT-II. c0 is dropped.

use std::path::Path;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{McdError, Result};
use crate::wav::Signal;
use crate::Sample;

/// Extraction settings. The defaults are the shipped convention
/// (data/default_config.json); scores are comparable only under one config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MelConfig {
    pub frame_ms: f64,
    pub hop_ms: f64,
    pub mel_bands: usize,
    /// Retained cepstral coefficients c1..=cD.
    pub coefficients: usize,
    pub pre_emphasis: f64,
    pub log_floor: f64,
}

impl Default for MelConfig {
    fn default() -> Self {
        MelConfig {
            frame_ms: 25.0,
            hop_ms: 10.0,
            mel_bands: 40,
            coefficients: 24,
            pre_emphasis: 0.97,
            log_floor: 1e-10,
        }
    }
}

impl MelConfig {
    pub fn from_json_str(json: &str) -> Result<Self> {
        let cfg: MelConfig =
            serde_json::from_str(json).map_err(|e| McdError::MalformedConfig(e.to_string()))?;
        if cfg.frame_ms <= 0.0 || cfg.hop_ms <= 0.0 || cfg.mel_bands == 0 || cfg.coefficients == 0
        {
            return Err(McdError::MalformedConfig(
                "frame_ms, hop_ms, mel_bands and coefficients must be positive".into(),
            ));
        }
        if cfg.coefficients >= cfg.mel_bands {
            return Err(McdError::MalformedConfig(
                "coefficients must be below mel_bands".into(),
            ));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn frame_samples(&self, sample_rate: u32) -> usize {
        (sample_rate as f64 * self.frame_ms / 1000.0).round() as usize
    }

    pub fn hop_samples(&self, sample_rate: u32) -> usize {
        (sample_rate as f64 * self.hop_ms / 1000.0).round() as usize
    }

    /// floor((samples - frame) / hop) + 1
    pub fn frame_count(&self, samples: usize, sample_rate: u32) -> Option<usize> {
        let frame = self.frame_samples(sample_rate);
        let hop = self.hop_samples(sample_rate);
        if samples < frame || frame == 0 || hop == 0 {
            return None;
        }
        Some((samples - frame) / hop + 1)
    }
}

/// Frames x coefficients matrix of mel-cepstra (c1..cD; c0 excluded),
/// row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CepstraMatrix<T> {
    data: Vec<T>,
    frames: usize,
    dims: usize,
    pub frame_ms: f64,
    pub hop_ms: f64,
}

impl<T: Sample> CepstraMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>, frame_ms: f64, hop_ms: f64) -> Result<Self> {
        let frames = rows.len();
        if frames == 0 {
            return Err(McdError::BadCepstra("no frames".into()));
        }
        let dims = rows[0].len();
        if dims == 0 {
            return Err(McdError::BadCepstra("zero-dimensional frames".into()));
        }
        let mut data = Vec::with_capacity(frames * dims);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dims {
                return Err(McdError::BadCepstra(format!("ragged row {i}")));
            }
            for v in &row {
                if !v.is_finite() {
                    return Err(McdError::BadCepstra(format!("non-finite entry in row {i}")));
                }
            }
            data.extend(row);
        }
        Ok(CepstraMatrix {
            data,
            frames,
            dims,
            frame_ms,
            hop_ms,
        })
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dims..(i + 1) * self.dims]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.dims)
    }
}

/// Extracts mel-cepstra from a signal. Deterministic: identical input and
/// config give bit-identical output.
pub fn mel_cepstra<T: Sample>(sig: &Signal<T>, cfg: &MelConfig) -> Result<CepstraMatrix<T>> {
    let frame_len = cfg.frame_samples(sig.sample_rate);
    let hop = cfg.hop_samples(sig.sample_rate);
    let n_frames = cfg
        .frame_count(sig.samples.len(), sig.sample_rate)
        .ok_or(McdError::TooShort {
            samples: sig.samples.len(),
            needed: frame_len,
        })?;
    let nfft = frame_len.next_power_of_two();
    let n_bins = nfft / 2 + 1;

    // whole-signal pre-emphasis: y[n] = x[n] - k * x[n-1]
    let k = T::from_f64(cfg.pre_emphasis).unwrap();
    let mut emphasized = Vec::with_capacity(sig.samples.len());
    emphasized.push(sig.samples[0]);
    for w in sig.samples.windows(2) {
        emphasized.push(w[1] - k * w[0]);
    }

    let window = hamming::<T>(frame_len);
    let filterbank = mel_filterbank::<T>(cfg.mel_bands, n_bins, nfft, sig.sample_rate);
    let dct = dct_rows::<T>(cfg.coefficients, cfg.mel_bands);
    let floor = T::from_f64(cfg.log_floor).unwrap();

    let mut planner = FftPlanner::<T>::new();
    let fft: Arc<dyn Fft<T>> = planner.plan_fft_forward(nfft);
    let mut buf = vec![Complex::new(T::zero(), T::zero()); nfft];
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];

    let mut data = Vec::with_capacity(n_frames * cfg.coefficients);
    for f in 0..n_frames {
        let start = f * hop;
        for (i, slot) in buf.iter_mut().enumerate() {
            let v = if i < frame_len {
                emphasized[start + i] * window[i]
            } else {
                T::zero()
            };
            *slot = Complex::new(v, T::zero());
        }
        fft.process_with_scratch(&mut buf, &mut scratch);

        // log mel energies over the magnitude spectrum
        let mut log_mel = Vec::with_capacity(cfg.mel_bands);
        for filter in &filterbank {
            let mut acc = T::zero();
            for &(bin, weight) in filter {
                acc = acc + weight * buf[bin].norm();
            }
            log_mel.push(acc.max(floor).ln());
        }

        for row in &dct {
            let mut acc = T::zero();
            for (m, &c) in row.iter().enumerate() {
                acc = acc + c * log_mel[m];
            }
            data.push(acc);
        }
    }

    CepstraMatrix::from_rows(
        data.chunks_exact(cfg.coefficients).map(|c| c.to_vec()).collect(),
        cfg.frame_ms,
        cfg.hop_ms,
    )
}

fn hamming<T: Sample>(len: usize) -> Vec<T> {
    let denom = (len - 1) as f64;
    (0..len)
        .map(|i| {
            T::from_f64(0.54 - 0.46 * (2.0 * std::f64::consts::PI * i as f64 / denom).cos())
                .unwrap()
        })
        .collect()
}

fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// Triangular filters as sparse (bin, weight) lists over 0..nyquist.
fn mel_filterbank<T: Sample>(
    bands: usize,
    n_bins: usize,
    nfft: usize,
    sample_rate: u32,
) -> Vec<Vec<(usize, T)>> {
    let nyquist = sample_rate as f64 / 2.0;
    let mel_max = hz_to_mel(nyquist);
    let points: Vec<f64> = (0..bands + 2)
        .map(|i| mel_to_hz(mel_max * i as f64 / (bands + 1) as f64))
        .collect();
    let to_bin = |hz: f64| hz * nfft as f64 / sample_rate as f64;

    let mut filters = Vec::with_capacity(bands);
    for m in 0..bands {
        let (lo, mid, hi) = (to_bin(points[m]), to_bin(points[m + 1]), to_bin(points[m + 2]));
        let mut filter = Vec::new();
        for bin in lo.ceil() as usize..=(hi.floor() as usize).min(n_bins - 1) {
            let x = bin as f64;
            let w = if x <= mid {
                if mid > lo { (x - lo) / (mid - lo) } else { 0.0 }
            } else if hi > mid {
                (hi - x) / (hi - mid)
            } else {
                0.0
            };
            if w > 0.0 {
                filter.push((bin, T::from_f64(w).unwrap()));
            }
        }
        filters.push(filter);
    }
    filters
}

/// Orthonormal DCT-II rows for c1..=cD over M mel bands.
fn dct_rows<T: Sample>(coefficients: usize, bands: usize) -> Vec<Vec<T>> {
    let m = bands as f64;
    let scale = (2.0 / m).sqrt();
    (1..=coefficients)
        .map(|k| {
            (0..bands)
                .map(|j| {
                    T::from_f64(
                        scale
                            * (std::f64::consts::PI * k as f64 * (2.0 * j as f64 + 1.0)
                                / (2.0 * m))
                                .cos(),
                    )
                    .unwrap()
                })
                .collect()
        })
        .collect()
}
