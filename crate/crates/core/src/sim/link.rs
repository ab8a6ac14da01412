//! Radio channel: airtime, bursty interferer and frame loss.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::frame::{FCS_LEN, LINK_MTU, MAC_HEADER_LEN};

/// Synchronisation header and PHY header, in bytes.
pub const PREAMBLE_LEN: usize = 6;
/// 250 kbit/s.
pub const PER_BYTE_AIRTIME_US: u64 = 32;

/// Half-open interval of simulated microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub start: u64,
    pub end: u64,
}

impl Interval {
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkModel {
    pub per_byte_airtime_us: u64,
    pub base_loss: f64,
}

impl Default for LinkModel {
    fn default() -> Self {
        LinkModel {
            per_byte_airtime_us: PER_BYTE_AIRTIME_US,
            base_loss: 0.0,
        }
    }
}

impl LinkModel {
    pub fn with_loss(base_loss: f64) -> Self {
        LinkModel {
            base_loss,
            ..LinkModel::default()
        }
    }

    /// Octets on air for a LoWPAN payload: MAC header and FCS added.
    pub fn frame_len(payload_len: usize) -> usize {
        MAC_HEADER_LEN + payload_len + FCS_LEN
    }

    /// `(preamble + frame length) × per-byte time`.
    pub fn airtime_us(&self, frame_len: usize) -> u64 {
        (PREAMBLE_LEN + frame_len) as u64 * self.per_byte_airtime_us
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfererParams {
    pub burst_len: usize,
    pub frame_len: usize,
    /// Idle time between frames of a burst, end to start, in µs.
    pub gap_us: (u64, u64),
    pub silence_us: (u64, u64),
}

impl Default for InterfererParams {
    fn default() -> Self {
        InterfererParams {
            burst_len: 200,
            frame_len: LINK_MTU,
            gap_us: (5_000, 15_000),
            silence_us: (500_000, 1_500_000),
        }
    }
}

/// Sorted, non-overlapping interferer transmissions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InterfererSchedule {
    frames: Vec<Interval>,
}

impl InterfererSchedule {
    pub fn none() -> Self {
        InterfererSchedule::default()
    }

    /// Alternates bursts and silences from time 0 until `horizon_us`,
    /// starting with a silence.
    pub fn generate(params: &InterfererParams, link: &LinkModel, seed: u64, horizon_us: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let airtime = link.airtime_us(params.frame_len);
        let mut frames = Vec::new();
        let mut t = 0;
        while t < horizon_us {
            t += rng.gen_range(params.silence_us.0..=params.silence_us.1);
            for i in 0..params.burst_len {
                if i > 0 {
                    t += rng.gen_range(params.gap_us.0..=params.gap_us.1);
                }
                frames.push(Interval {
                    start: t,
                    end: t + airtime,
                });
                t += airtime;
            }
        }
        InterfererSchedule { frames }
    }

    pub fn frames(&self) -> &[Interval] {
        &self.frames
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn overlaps(&self, interval: &Interval) -> bool {
        // first frame ending after the interval starts
        let i = self.frames.partition_point(|f| f.end <= interval.start);
        self.frames.get(i).is_some_and(|f| f.overlaps(interval))
    }

    /// Fraction of `[0, horizon)` occupied by interferer frames.
    pub fn occupancy(&self, horizon_us: u64) -> f64 {
        let busy: u64 = self
            .frames
            .iter()
            .map(|f| f.end.min(horizon_us).saturating_sub(f.start.min(horizon_us)))
            .sum();
        busy as f64 / horizon_us as f64
    }
}

/// A frame is lost when it overlaps an interferer frame, otherwise with
/// probability `base_loss`.
pub fn collision_check<R: Rng>(frame: Interval, schedule: &InterfererSchedule, base_loss: f64, rng: &mut R) -> bool {
    schedule.overlaps(&frame) || (base_loss > 0.0 && rng.gen_bool(base_loss.min(1.0)))
}
