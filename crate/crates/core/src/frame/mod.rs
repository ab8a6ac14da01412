//! 6LoWPAN-compatible framing: the page-2 ICNLoWPAN dispatches, RFC 4944
//! fragmentation and reassembly, and IEEE 802.15.4 frame size accounting.

mod dispatch;
mod frag;
mod reassembly;

pub use dispatch::{
    frame_encapsulate, parse_frame, DispatchChain, IcnDispatch, DISPATCH_COMPRESSED_DATA, DISPATCH_COMPRESSED_INTEREST,
    DISPATCH_FLAG_CID, DISPATCH_FLAG_HOP_ID, DISPATCH_UNCOMPRESSED_DATA, DISPATCH_UNCOMPRESSED_INTEREST,
    ICNLOWPAN_PAGE, MAX_CONTEXT_ID, PAGE_SWITCH_MASK,
};
pub use frag::{
    fragment, link_payload_budget, FragHeader, FragKind, FRAG1_HEADER_LEN, FRAGN_HEADER_LEN, MAX_DATAGRAM_SIZE,
};
pub use reassembly::{reassemble, Reassembler, DEFAULT_REASSEMBLY_TIMEOUT_US};

/// IEEE 802.15.4 physical MTU.
pub const LINK_MTU: usize = 127;
/// MAC header size used for accounting; the header itself is never built.
pub const MAC_HEADER_LEN: usize = 21;
pub const FCS_LEN: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid dispatch chain: {0}")]
    InvalidChain(&'static str),
    #[error("unknown dispatch {0:#04x}")]
    UnknownDispatch(u8),
    #[error("frame truncated")]
    TruncatedFrame,
    #[error("frame belongs to 6LoWPAN (page 0/1) or is not a LoWPAN frame")]
    NotIcnlowpan,
    #[error("fragment header where a complete datagram was expected")]
    UnexpectedFragment,
    #[error("datagram of {0} bytes exceeds the 11-bit size field")]
    DatagramTooLarge(usize),
    #[error("link MTU {0} leaves no room for fragment payload")]
    MtuTooSmall(usize),
    #[error("incomplete datagram discarded")]
    ReassemblyTimeout,
    #[error("fragment overlaps previously received bytes with different content")]
    OverlappingFragment,
    #[error("fragment disagrees with the datagram size")]
    SizeMismatch,
}

/// One IEEE 802.15.4 frame as seen by the size accounting: the MAC header and
/// FCS are fixed-size and only the LoWPAN payload is materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowpanFrame {
    pub payload: Vec<u8>,
}

impl LowpanFrame {
    pub fn new(payload: Vec<u8>) -> Self {
        LowpanFrame { payload }
    }

    /// Fragment header carried at the front of the payload, if any.
    pub fn frag_header(&self) -> Option<FragHeader> {
        FragHeader::split(&self.payload).ok().and_then(|(h, _)| h)
    }

    pub fn page_switch_present(&self) -> bool {
        let rest = match FragHeader::split(&self.payload) {
            Ok((Some(h), rest)) if h.kind == FragKind::First => rest,
            Ok((None, rest)) => rest,
            _ => return false,
        };
        rest.first().is_some_and(|b| b & PAGE_SWITCH_MASK == PAGE_SWITCH_MASK)
    }

    /// Total on-air frame length: MAC header, payload and FCS.
    pub fn total_len(&self) -> usize {
        MAC_HEADER_LEN + self.payload.len() + FCS_LEN
    }

    pub fn fits(&self) -> bool {
        self.total_len() <= LINK_MTU
    }
}
