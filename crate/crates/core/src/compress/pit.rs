//! Pending Interest Table extended with per-hop HopID columns.
//!
//! Every entry may carry an outbound HopID (`hid_out`), generated locally when
//! the Interest is forwarded, and one inbound HopID per downstream face
//! (`hid_in`), copied from the arriving Interest. Returning Data carries only
//! the HopID: a hop resolves it against `hid_out` and rewrites it to the
//! matching `hid_in` before passing the Data on.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::num::NonZeroU8;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Error;
use crate::ndn::Name;

/// A one-byte, non-zero HopID.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HopId(NonZeroU8);

impl HopId {
    pub fn new(value: u8) -> Option<HopId> {
        NonZeroU8::new(value).map(HopId)
    }

    pub fn get(self) -> u8 {
        self.0.get()
    }
}

impl fmt::Display for HopId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.get())
    }
}

/// Number of usable HopIDs; 0 is reserved.
pub const HOP_ID_SPACE: usize = 255;
pub const DEFAULT_PIT_CAPACITY: usize = 1024;

/// Where an Interest came from: the local application or a neighbour node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    App,
    Node(u16),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InRecord {
    pub face: Face,
    pub hid_in: Option<HopId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PitEntry {
    pub name: Name,
    pub expiry_us: u64,
    pub in_records: Vec<InRecord>,
    pub hid_out: Option<HopId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InboundOutcome {
    /// A new entry was created; the Interest should be forwarded.
    Created,
    /// Another face already asked for this name; the Interest is absorbed.
    Aggregated,
    /// Same face and HopID as an existing record; only the expiry moved.
    Duplicate,
}

/// A satisfied (and removed) PIT entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfied {
    pub entry: PitEntry,
    /// Data name components beyond the Interest name.
    pub suffix: Name,
}

impl Satisfied {
    pub fn data_name(&self) -> Name {
        self.entry.name.join(&self.suffix)
    }
}

#[derive(Debug)]
pub struct Pit {
    entries: BTreeMap<Name, PitEntry>,
    by_hid_out: HashMap<HopId, Name>,
    capacity: usize,
    rng: ChaCha8Rng,
}

impl Pit {
    pub fn new(capacity: usize, seed: u64) -> Self {
        Pit {
            entries: BTreeMap::new(),
            by_hid_out: HashMap::new(),
            capacity,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &Name) -> Option<&PitEntry> {
        self.entries.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &PitEntry> {
        self.entries.values()
    }

    /// Records an arriving Interest (and its HopID, if any).
    pub fn interest_inbound(
        &mut self,
        face: Face,
        hop_id: Option<HopId>,
        name: &Name,
        expiry_us: u64,
    ) -> Result<InboundOutcome, Error> {
        if let Some(entry) = self.entries.get_mut(name) {
            entry.expiry_us = entry.expiry_us.max(expiry_us);
            return Ok(match entry.in_records.iter_mut().find(|r| r.face == face) {
                Some(r) if r.hid_in == hop_id => InboundOutcome::Duplicate,
                Some(r) => {
                    r.hid_in = hop_id;
                    InboundOutcome::Duplicate
                }
                None => {
                    entry.in_records.push(InRecord { face, hid_in: hop_id });
                    InboundOutcome::Aggregated
                }
            });
        }
        if self.entries.len() >= self.capacity {
            return Err(Error::PitFull);
        }
        self.entries.insert(
            name.clone(),
            PitEntry {
                name: name.clone(),
                expiry_us,
                in_records: vec![InRecord { face, hid_in: hop_id }],
                hid_out: None,
            },
        );
        Ok(InboundOutcome::Created)
    }

    /// Assigns the entry a fresh outbound HopID, unique among live ones.
    /// Repeated calls for the same entry return the same ID.
    pub fn interest_outbound(&mut self, name: &Name) -> Result<HopId, Error> {
        let entry = self.entries.get_mut(name).ok_or(Error::NoPitMatch)?;
        if let Some(hid) = entry.hid_out {
            return Ok(hid);
        }
        if self.by_hid_out.len() >= HOP_ID_SPACE {
            return Err(Error::HopIdSpaceExhausted);
        }
        let hid = loop {
            let candidate = HopId::new(self.rng.gen_range(1..=255)).unwrap();
            if !self.by_hid_out.contains_key(&candidate) {
                break candidate;
            }
        };
        entry.hid_out = Some(hid);
        self.by_hid_out.insert(hid, name.clone());
        Ok(hid)
    }

    /// Entry whose inbound record from `face` carries `hop_id`.
    pub fn find_by_hid_in(&self, face: Face, hop_id: HopId) -> Option<&PitEntry> {
        self.entries
            .values()
            .find(|e| e.in_records.iter().any(|r| r.face == face && r.hid_in == Some(hop_id)))
    }

    pub fn find_by_hid_out(&self, hop_id: HopId) -> Option<&PitEntry> {
        self.by_hid_out.get(&hop_id).and_then(|n| self.entries.get(n))
    }

    /// Satisfies the longest pending Interest name that prefixes `data_name`.
    pub fn data_outbound(&mut self, data_name: &Name) -> Result<Satisfied, Error> {
        let matched = (0..=data_name.component_count())
            .rev()
            .map(|n| data_name.prefix(n))
            .find(|prefix| self.entries.contains_key(prefix))
            .ok_or(Error::NoPitMatch)?;
        let entry = self.remove(&matched).unwrap();
        let suffix = data_name.suffix_from(entry.name.component_count());
        Ok(Satisfied { entry, suffix })
    }

    /// Satisfies the entry whose outbound HopID is `hop_id`. The caller
    /// forwards the Data to each in-record, rewriting the HopID to `hid_in`.
    pub fn data_inbound_swap(&mut self, hop_id: HopId, suffix: &Name) -> Result<Satisfied, Error> {
        let name = self
            .by_hid_out
            .get(&hop_id)
            .cloned()
            .ok_or(Error::UnknownHopId(hop_id.get()))?;
        let entry = self.remove(&name).unwrap();
        Ok(Satisfied {
            entry,
            suffix: suffix.clone(),
        })
    }

    pub fn remove(&mut self, name: &Name) -> Option<PitEntry> {
        let entry = self.entries.remove(name)?;
        if let Some(hid) = entry.hid_out {
            self.by_hid_out.remove(&hid);
        }
        Some(entry)
    }

    /// Removes every entry that expired at or before `now_us`.
    pub fn expire(&mut self, now_us: u64) -> Vec<PitEntry> {
        let names: Vec<Name> = self
            .entries
            .values()
            .filter(|e| e.expiry_us <= now_us)
            .map(|e| e.name.clone())
            .collect();
        names.iter().filter_map(|n| self.remove(n)).collect()
    }

    pub fn live_hid_outs(&self) -> impl Iterator<Item = HopId> + '_ {
        self.entries.values().filter_map(|e| e.hid_out)
    }

    /// Checks that live outbound HopIDs are pairwise distinct and that the
    /// reverse index agrees with the entries.
    pub fn hid_out_consistent(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        let distinct = self.live_hid_outs().all(|h| seen.insert(h));
        distinct
            && seen.len() == self.by_hid_out.len()
            && self
                .by_hid_out
                .iter()
                .all(|(h, n)| self.entries.get(n).and_then(|e| e.hid_out) == Some(*h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> Name {
        s.parse().unwrap()
    }

    fn hid(v: u8) -> HopId {
        HopId::new(v).unwrap()
    }

    #[test]
    fn hop_id_zero_is_reserved() {
        assert!(HopId::new(0).is_none());
    }

    #[test]
    fn outbound_ids_are_unique_until_exhausted() {
        let mut pit = Pit::new(DEFAULT_PIT_CAPACITY, 1);
        let mut seen = std::collections::HashSet::new();
        for i in 0..255 {
            let n = name(&format!("/n/{i}"));
            pit.interest_inbound(Face::App, None, &n, 10).unwrap();
            assert!(seen.insert(pit.interest_outbound(&n).unwrap()));
        }
        assert!(pit.hid_out_consistent());
        let n = name("/n/overflow");
        pit.interest_inbound(Face::App, None, &n, 10).unwrap();
        assert_eq!(pit.interest_outbound(&n), Err(Error::HopIdSpaceExhausted));
    }

    #[test]
    fn freed_ids_are_reused_after_expiry() {
        let mut pit = Pit::new(DEFAULT_PIT_CAPACITY, 2);
        for i in 0..255 {
            let n = name(&format!("/n/{i}"));
            pit.interest_inbound(Face::App, None, &n, 100).unwrap();
            pit.interest_outbound(&n).unwrap();
        }
        assert_eq!(pit.expire(100).len(), 255);
        let n = name("/again");
        pit.interest_inbound(Face::App, None, &n, 200).unwrap();
        assert!(pit.interest_outbound(&n).is_ok());
        assert!(pit.hid_out_consistent());
    }

    #[test]
    fn outbound_is_idempotent() {
        let mut pit = Pit::new(8, 3);
        let n = name("/a");
        pit.interest_inbound(Face::App, None, &n, 1).unwrap();
        assert_eq!(pit.interest_outbound(&n).unwrap(), pit.interest_outbound(&n).unwrap());
        assert_eq!(pit.interest_outbound(&name("/b")), Err(Error::NoPitMatch));
    }

    #[test]
    fn pit_full() {
        let mut pit = Pit::new(1, 0);
        pit.interest_inbound(Face::App, None, &name("/a"), 1).unwrap();
        assert_eq!(
            pit.interest_inbound(Face::App, None, &name("/b"), 1),
            Err(Error::PitFull)
        );
    }

    #[test]
    fn duplicate_interest_is_idempotent() {
        let mut pit = Pit::new(8, 0);
        let n = name("/a");
        let face = Face::Node(1);
        assert_eq!(
            pit.interest_inbound(face, Some(hid(7)), &n, 10).unwrap(),
            InboundOutcome::Created
        );
        assert_eq!(
            pit.interest_inbound(face, Some(hid(7)), &n, 20).unwrap(),
            InboundOutcome::Duplicate
        );
        let entry = pit.get(&n).unwrap();
        assert_eq!(entry.in_records.len(), 1);
        assert_eq!(entry.expiry_us, 20);
    }

    #[test]
    fn colliding_inbound_ids_from_different_neighbours() {
        let mut pit = Pit::new(8, 0);
        pit.interest_inbound(Face::Node(1), Some(hid(7)), &name("/a"), 10)
            .unwrap();
        pit.interest_inbound(Face::Node(2), Some(hid(7)), &name("/b"), 10)
            .unwrap();
        assert_eq!(pit.find_by_hid_in(Face::Node(1), hid(7)).unwrap().name, name("/a"));
        assert_eq!(pit.find_by_hid_in(Face::Node(2), hid(7)).unwrap().name, name("/b"));
    }

    #[test]
    fn data_outbound_suffix() {
        let mut pit = Pit::new(8, 0);
        pit.interest_inbound(Face::Node(1), Some(hid(3)), &name("/a/b"), 10)
            .unwrap();
        let s = pit.data_outbound(&name("/a/b/v1")).unwrap();
        assert_eq!(s.suffix, name("/v1"));
        assert_eq!(s.entry.in_records[0].hid_in, Some(hid(3)));
        assert!(pit.is_empty());
        assert_eq!(pit.data_outbound(&name("/a/b")), Err(Error::NoPitMatch));
    }

    #[test]
    fn stale_hop_id_after_expiry() {
        let mut pit = Pit::new(8, 0);
        let n = name("/a");
        pit.interest_inbound(Face::App, None, &n, 10).unwrap();
        let h = pit.interest_outbound(&n).unwrap();
        pit.expire(10);
        assert_eq!(
            pit.data_inbound_swap(h, &Name::new()),
            Err(Error::UnknownHopId(h.get()))
        );
    }
}
