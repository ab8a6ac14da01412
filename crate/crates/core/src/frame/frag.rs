//! RFC 4944 link fragmentation (FRAG1 / FRAGN headers).

use super::{Error, FCS_LEN, MAC_HEADER_LEN};

pub const FRAG1_DISPATCH: u8 = 0b1100_0000;
pub const FRAGN_DISPATCH: u8 = 0b1110_0000;
const FRAG_DISPATCH_MASK: u8 = 0b1111_1000;

pub const FRAG1_HEADER_LEN: usize = 4;
pub const FRAGN_HEADER_LEN: usize = 5;

/// Largest datagram the 11-bit size field can describe.
pub const MAX_DATAGRAM_SIZE: usize = 2047;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FragKind {
    First,
    Subsequent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FragHeader {
    pub kind: FragKind,
    pub datagram_size: u16,
    pub datagram_tag: u16,
    /// Offset in units of 8 bytes; always 0 for `First`.
    pub offset_units8: u8,
}

impl FragHeader {
    pub fn first(datagram_size: u16, datagram_tag: u16) -> Self {
        FragHeader {
            kind: FragKind::First,
            datagram_size,
            datagram_tag,
            offset_units8: 0,
        }
    }

    pub fn subsequent(datagram_size: u16, datagram_tag: u16, offset_units8: u8) -> Self {
        FragHeader {
            kind: FragKind::Subsequent,
            datagram_size,
            datagram_tag,
            offset_units8,
        }
    }

    pub fn encoded_len(&self) -> usize {
        match self.kind {
            FragKind::First => FRAG1_HEADER_LEN,
            FragKind::Subsequent => FRAGN_HEADER_LEN,
        }
    }

    pub fn byte_offset(&self) -> usize {
        self.offset_units8 as usize * 8
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        let dispatch = match self.kind {
            FragKind::First => FRAG1_DISPATCH,
            FragKind::Subsequent => FRAGN_DISPATCH,
        };
        let size = self.datagram_size & 0x07FF;
        out.push(dispatch | (size >> 8) as u8);
        out.push(size as u8);
        out.extend_from_slice(&self.datagram_tag.to_be_bytes());
        if self.kind == FragKind::Subsequent {
            out.push(self.offset_units8);
        }
    }

    /// Splits a link payload into its fragment header (if any) and the rest.
    pub fn split(payload: &[u8]) -> Result<(Option<FragHeader>, &[u8]), Error> {
        let Some(&first) = payload.first() else {
            return Ok((None, payload));
        };
        let kind = match first & FRAG_DISPATCH_MASK {
            FRAG1_DISPATCH => FragKind::First,
            FRAGN_DISPATCH => FragKind::Subsequent,
            _ => return Ok((None, payload)),
        };
        let header_len = match kind {
            FragKind::First => FRAG1_HEADER_LEN,
            FragKind::Subsequent => FRAGN_HEADER_LEN,
        };
        if payload.len() < header_len {
            return Err(Error::TruncatedFrame);
        }
        let header = FragHeader {
            kind,
            datagram_size: u16::from(first & 0x07) << 8 | u16::from(payload[1]),
            datagram_tag: u16::from_be_bytes([payload[2], payload[3]]),
            offset_units8: if kind == FragKind::Subsequent { payload[4] } else { 0 },
        };
        Ok((Some(header), &payload[header_len..]))
    }
}

/// Bytes available for LoWPAN headers and payload in one physical frame.
pub fn link_payload_budget(link_mtu: usize) -> usize {
    link_mtu.saturating_sub(MAC_HEADER_LEN + FCS_LEN)
}

/// Splits `datagram` into link payloads that each fit a `link_mtu`-byte frame.
///
/// A datagram that already fits is returned unchanged without a fragment
/// header. Otherwise every fragment but the last carries a multiple of 8
/// payload bytes.
pub fn fragment(datagram: &[u8], link_mtu: usize, tag: u16) -> Result<Vec<Vec<u8>>, Error> {
    if datagram.len() > MAX_DATAGRAM_SIZE {
        return Err(Error::DatagramTooLarge(datagram.len()));
    }
    let budget = link_payload_budget(link_mtu);
    if datagram.len() <= budget {
        return Ok(vec![datagram.to_vec()]);
    }
    let first_chunk = budget.saturating_sub(FRAG1_HEADER_LEN) / 8 * 8;
    let next_chunk = budget.saturating_sub(FRAGN_HEADER_LEN) / 8 * 8;
    if first_chunk == 0 || next_chunk == 0 {
        return Err(Error::MtuTooSmall(link_mtu));
    }
    let size = datagram.len() as u16;
    let mut out = Vec::new();

    let mut frame = Vec::with_capacity(budget);
    FragHeader::first(size, tag).encode_into(&mut frame);
    frame.extend_from_slice(&datagram[..first_chunk]);
    out.push(frame);

    let mut offset = first_chunk;
    while offset < datagram.len() {
        let end = (offset + next_chunk).min(datagram.len());
        let mut frame = Vec::with_capacity(budget);
        FragHeader::subsequent(size, tag, (offset / 8) as u8).encode_into(&mut frame);
        frame.extend_from_slice(&datagram[offset..end]);
        out.push(frame);
        offset = end;
    }
    Ok(out)
}
