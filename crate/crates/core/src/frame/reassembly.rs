use std::collections::HashMap;
use std::hash::Hash;

use super::frag::{FragHeader, FragKind};
use super::Error;

/// Default lifetime of an incomplete datagram, in simulated microseconds.
pub const DEFAULT_REASSEMBLY_TIMEOUT_US: u64 = 4_000_000;

#[derive(Debug)]
struct Partial {
    size: usize,
    data: Vec<u8>,
    filled: Vec<bool>,
    missing: usize,
    started_us: u64,
}

impl Partial {
    fn new(size: usize, now_us: u64) -> Self {
        Partial {
            size,
            data: vec![0; size],
            filled: vec![false; size],
            missing: size,
            started_us: now_us,
        }
    }

    fn insert(&mut self, offset: usize, bytes: &[u8]) -> Result<(), Error> {
        let end = offset + bytes.len();
        if end > self.size {
            return Err(Error::SizeMismatch);
        }
        // identical duplicates are fine, conflicting overlaps are not
        for (i, &b) in bytes.iter().enumerate() {
            let at = offset + i;
            if self.filled[at] && self.data[at] != b {
                return Err(Error::OverlappingFragment);
            }
        }
        for (i, &b) in bytes.iter().enumerate() {
            let at = offset + i;
            if !self.filled[at] {
                self.filled[at] = true;
                self.data[at] = b;
                self.missing -= 1;
            }
        }
        Ok(())
    }
}

/// Per-node reassembly buffers keyed by `(source, datagram tag)`.
#[derive(Debug)]
pub struct Reassembler<S> {
    timeout_us: u64,
    partial: HashMap<(S, u16), Partial>,
}

impl<S: Copy + Eq + Hash> Default for Reassembler<S> {
    fn default() -> Self {
        Reassembler::new(DEFAULT_REASSEMBLY_TIMEOUT_US)
    }
}

impl<S: Copy + Eq + Hash> Reassembler<S> {
    pub fn new(timeout_us: u64) -> Self {
        Reassembler {
            timeout_us,
            partial: HashMap::new(),
        }
    }

    pub fn timeout_us(&self) -> u64 {
        self.timeout_us
    }

    /// Number of datagrams currently being reassembled.
    pub fn pending(&self) -> usize {
        self.partial.len()
    }

    /// Feeds one link payload. Returns the datagram once it is complete;
    /// unfragmented payloads are returned immediately.
    ///
    /// On an inconsistent fragment the whole datagram is discarded.
    pub fn accept(&mut self, source: S, payload: &[u8], now_us: u64) -> Result<Option<Vec<u8>>, Error> {
        let (header, body) = FragHeader::split(payload)?;
        let Some(header) = header else {
            return Ok(Some(payload.to_vec()));
        };
        let key = (source, header.datagram_tag);
        let size = header.datagram_size as usize;
        let entry = self.partial.entry(key).or_insert_with(|| Partial::new(size, now_us));
        let offset = match header.kind {
            FragKind::First => 0,
            FragKind::Subsequent => header.byte_offset(),
        };
        let result = if entry.size != size {
            Err(Error::SizeMismatch)
        } else {
            entry.insert(offset, body)
        };
        if let Err(e) = result {
            self.partial.remove(&key);
            return Err(e);
        }
        if entry.missing == 0 {
            return Ok(self.partial.remove(&key).map(|p| p.data));
        }
        Ok(None)
    }

    /// Drops every buffer older than the timeout and returns their keys.
    pub fn expire(&mut self, now_us: u64) -> Vec<(S, u16)> {
        let timeout = self.timeout_us;
        let expired: Vec<_> = self
            .partial
            .iter()
            .filter(|(_, p)| now_us.saturating_sub(p.started_us) >= timeout)
            .map(|(k, _)| *k)
            .collect();
        for key in &expired {
            self.partial.remove(key);
        }
        expired
    }

    /// Drops one buffer if it has outlived the timeout. Returns whether it did.
    pub fn expire_one(&mut self, source: S, tag: u16, now_us: u64) -> bool {
        let key = (source, tag);
        match self.partial.get(&key) {
            Some(p) if now_us.saturating_sub(p.started_us) >= self.timeout_us => {
                self.partial.remove(&key);
                true
            }
            _ => false,
        }
    }
}

/// Reassembles a complete, unordered set of link payloads of one datagram.
///
/// There is no retransmission: if the set does not cover the datagram it
/// would never complete, which is reported as [`Error::ReassemblyTimeout`].
pub fn reassemble<P: AsRef<[u8]>>(fragments: &[P]) -> Result<Vec<u8>, Error> {
    let mut r: Reassembler<()> = Reassembler::default();
    let mut tag = None;
    let mut done = None;
    for f in fragments {
        let (header, _) = FragHeader::split(f.as_ref())?;
        if let Some(h) = header {
            match tag {
                Some(t) if t != h.datagram_tag => return Err(Error::SizeMismatch),
                _ => tag = Some(h.datagram_tag),
            }
        }
        if let Some(d) = r.accept((), f.as_ref(), 0)? {
            if done.is_some() || fragments.len() > 1 && header.is_none() {
                return Err(Error::SizeMismatch);
            }
            done = Some(d);
        }
    }
    done.ok_or(Error::ReassemblyTimeout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{fragment, LINK_MTU};

    fn datagram(n: usize) -> Vec<u8> {
        (0..n).map(|i| (i * 7 + 3) as u8).collect()
    }

    #[test]
    fn reverse_order() {
        let d = datagram(300);
        let mut frames = fragment(&d, LINK_MTU, 5).unwrap();
        frames.reverse();
        assert_eq!(reassemble(&frames).unwrap(), d);
    }

    #[test]
    fn missing_fragment_times_out() {
        let d = datagram(300);
        let mut frames = fragment(&d, LINK_MTU, 5).unwrap();
        frames.remove(1);
        assert_eq!(reassemble(&frames), Err(Error::ReassemblyTimeout));

        let mut r: Reassembler<u8> = Reassembler::default();
        for f in &frames {
            assert_eq!(r.accept(1, f, 0).unwrap(), None);
        }
        assert_eq!(r.pending(), 1);
        assert!(r.expire(DEFAULT_REASSEMBLY_TIMEOUT_US - 1).is_empty());
        assert_eq!(r.expire(DEFAULT_REASSEMBLY_TIMEOUT_US), vec![(1, 5)]);
        assert_eq!(r.pending(), 0);
    }

    #[test]
    fn duplicate_fragment_is_idempotent() {
        let d = datagram(250);
        let frames = fragment(&d, LINK_MTU, 9).unwrap();
        let mut with_dup = frames.clone();
        with_dup.insert(1, frames[1].clone());
        assert_eq!(reassemble(&with_dup).unwrap(), reassemble(&frames).unwrap());
    }

    #[test]
    fn conflicting_overlap_rejected() {
        let d = datagram(250);
        let frames = fragment(&d, LINK_MTU, 9).unwrap();
        let mut bad = frames[1].clone();
        let last = bad.len() - 1;
        bad[last] ^= 0xFF;
        let mut r: Reassembler<u8> = Reassembler::default();
        r.accept(0, &frames[1], 0).unwrap();
        assert_eq!(r.accept(0, &bad, 0), Err(Error::OverlappingFragment));
        assert_eq!(r.pending(), 0);
    }

    #[test]
    fn size_mismatch_rejected() {
        let a = fragment(&datagram(250), LINK_MTU, 3).unwrap();
        let b = fragment(&datagram(260), LINK_MTU, 3).unwrap();
        let mut r: Reassembler<u8> = Reassembler::default();
        r.accept(0, &a[0], 0).unwrap();
        assert_eq!(r.accept(0, &b[1], 0), Err(Error::SizeMismatch));
    }

    #[test]
    fn sources_do_not_mix() {
        let d1 = datagram(200);
        let d2: Vec<u8> = datagram(200).iter().map(|b| !b).collect();
        let f1 = fragment(&d1, LINK_MTU, 1).unwrap();
        let f2 = fragment(&d2, LINK_MTU, 1).unwrap();
        let mut r: Reassembler<u8> = Reassembler::default();
        assert_eq!(r.accept(1, &f1[0], 0).unwrap(), None);
        assert_eq!(r.accept(2, &f2[0], 0).unwrap(), None);
        assert_eq!(r.accept(2, &f2[1], 0).unwrap(), None);
        assert_eq!(r.accept(1, &f1[1], 0).unwrap(), None);
        assert_eq!(r.accept(2, &f2[2], 0).unwrap(), Some(d2));
        assert_eq!(r.accept(1, &f1[2], 0).unwrap(), Some(d1));
    }
}
