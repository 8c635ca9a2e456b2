//! Minimal RIFF/WAVE reader for the scoring pipeline: 16-bit PCM, mono.

use std::path::Path;

use crate::error::{McdError, Result};
use crate::Sample;

/// A mono audio signal with samples in [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    pub samples: Vec<T>,
    pub sample_rate: u32,
}

impl<T: Sample> Signal<T> {
    pub fn new(samples: Vec<T>, sample_rate: u32) -> Result<Self> {
        if samples.is_empty() || sample_rate == 0 {
            return Err(McdError::EmptySignal);
        }
        Ok(Signal {
            samples,
            sample_rate,
        })
    }
}

/// Parses a 16-bit PCM mono RIFF/WAVE file; samples are scaled by 1/32768.
pub fn load_pcm_wav<T: Sample>(path: &Path) -> Result<Signal<T>> {
    let bytes = std::fs::read(path)?;
    decode_pcm_wav(&bytes)
}

pub fn decode_pcm_wav<T: Sample>(bytes: &[u8]) -> Result<Signal<T>> {
    if bytes.len() < 12 {
        return Err(McdError::TruncatedFile);
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(McdError::NotWav);
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // format, channels, rate, bits
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_start = pos + 8;
        let body_end = body_start
            .checked_add(size)
            .ok_or(McdError::TruncatedFile)?;
        if body_end > bytes.len() {
            return Err(McdError::TruncatedFile);
        }
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(McdError::TruncatedFile);
                }
                let format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                fmt = Some((format, channels, rate, bits));
            }
            b"data" => data = Some(body),
            _ => {}
        }
        // chunks are word-aligned
        pos = body_end + (size & 1);
    }

    let (format, channels, rate, bits) = fmt.ok_or(McdError::TruncatedFile)?;
    if format != 1 {
        return Err(McdError::UnsupportedEncoding(format!(
            "audio format {format}, only PCM (1) is supported"
        )));
    }
    if channels != 1 {
        return Err(McdError::UnsupportedEncoding(format!(
            "{channels} channels, only mono is supported"
        )));
    }
    if bits != 16 {
        return Err(McdError::UnsupportedEncoding(format!(
            "{bits}-bit samples, only 16-bit is supported"
        )));
    }
    let data = data.ok_or(McdError::TruncatedFile)?;
    if data.len() % 2 != 0 {
        return Err(McdError::TruncatedFile);
    }

    let scale = T::from_f64(1.0 / 32768.0).unwrap();
    let samples: Vec<T> = data
        .chunks_exact(2)
        .map(|pair| {
            let v = i16::from_le_bytes([pair[0], pair[1]]);
            T::from_i16(v).unwrap() * scale
        })
        .collect();
    if samples.is_empty() {
        return Err(McdError::EmptySignal);
    }
    Signal::new(samples, rate)
}

/// Encodes a mono 16-bit PCM WAV; the inverse of `decode_pcm_wav` up to
/// sample quantization. Used by tools and tests that synthesize fixtures.
pub fn encode_pcm_wav(samples: &[i16], sample_rate: u32) -> Vec<u8> {
    let data_len = samples.len() * 2;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for s in samples {
        out.extend_from_slice(&s.to_le_bytes());
    }
    out
}
