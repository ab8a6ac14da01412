//! Page-switch and ICNLoWPAN dispatch serialization.
//!
//! Datagram layout:
//!
//! ```text
//! [RFC 4944 mesh/broadcast]* | 0xF2 | dispatch | CID chain? | HopID? | body
//! ```
//!
//! The dispatch byte is `0b1000_CHkk`: `kk` selects one of the four message
//! kinds, `H` announces a trailing HopID byte and `C` announces a CID chain.

use super::Error;

/// Page-switch dispatch for page `n` is `0xF0 | n`.
pub const PAGE_SWITCH_MASK: u8 = 0xF0;
pub const ICNLOWPAN_PAGE: u8 = 2;

pub const DISPATCH_UNCOMPRESSED_INTEREST: u8 = 0x80;
pub const DISPATCH_UNCOMPRESSED_DATA: u8 = 0x81;
pub const DISPATCH_COMPRESSED_INTEREST: u8 = 0x82;
pub const DISPATCH_COMPRESSED_DATA: u8 = 0x83;

pub const DISPATCH_FLAG_HOP_ID: u8 = 0x04;
pub const DISPATCH_FLAG_CID: u8 = 0x08;

const DISPATCH_KIND_MASK: u8 = 0x03;
const DISPATCH_BASE_MASK: u8 = 0xF0;
const CID_CHAIN_BIT: u8 = 0x80;

/// RFC 4944 broadcast header LOWPAN_BC0.
const LOWPAN_BC0: u8 = 0x50;

/// Largest context identifier; the MSB of a CID byte is the chain flag.
pub const MAX_CONTEXT_ID: u8 = 0x7F;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IcnDispatch {
    UncompressedInterest,
    UncompressedData,
    CompressedInterest,
    CompressedData,
}

impl IcnDispatch {
    pub fn base_byte(self) -> u8 {
        match self {
            IcnDispatch::UncompressedInterest => DISPATCH_UNCOMPRESSED_INTEREST,
            IcnDispatch::UncompressedData => DISPATCH_UNCOMPRESSED_DATA,
            IcnDispatch::CompressedInterest => DISPATCH_COMPRESSED_INTEREST,
            IcnDispatch::CompressedData => DISPATCH_COMPRESSED_DATA,
        }
    }

    fn from_kind(bits: u8) -> Self {
        match bits & DISPATCH_KIND_MASK {
            0 => IcnDispatch::UncompressedInterest,
            1 => IcnDispatch::UncompressedData,
            2 => IcnDispatch::CompressedInterest,
            _ => IcnDispatch::CompressedData,
        }
    }

    pub fn is_compressed(self) -> bool {
        matches!(self, IcnDispatch::CompressedInterest | IcnDispatch::CompressedData)
    }

    pub fn is_interest(self) -> bool {
        matches!(
            self,
            IcnDispatch::UncompressedInterest | IcnDispatch::CompressedInterest
        )
    }
}

/// Everything between the page switch and the message body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DispatchChain {
    pub page: u8,
    pub dispatch: IcnDispatch,
    /// Context identifiers in chain order, each `0..=0x7F`.
    pub cids: Vec<u8>,
    /// HopID, never 0.
    pub hop_id: Option<u8>,
}

impl DispatchChain {
    pub fn new(dispatch: IcnDispatch) -> Self {
        DispatchChain {
            page: ICNLOWPAN_PAGE,
            dispatch,
            cids: Vec::new(),
            hop_id: None,
        }
    }

    pub fn with_cids(mut self, cids: Vec<u8>) -> Self {
        self.cids = cids;
        self
    }

    pub fn with_hop_id(mut self, hop_id: Option<u8>) -> Self {
        self.hop_id = hop_id;
        self
    }

    /// Serialized size of the chain including the page switch.
    pub fn encoded_len(&self) -> usize {
        2 + self.cids.len() + usize::from(self.hop_id.is_some())
    }

    fn validate(&self) -> Result<(), Error> {
        if self.page != ICNLOWPAN_PAGE {
            return Err(Error::InvalidChain("ICNLoWPAN dispatches live on page 2"));
        }
        if self.cids.iter().any(|&cid| cid > MAX_CONTEXT_ID) {
            return Err(Error::InvalidChain("context identifier uses the chain bit"));
        }
        if self.hop_id == Some(0) {
            return Err(Error::InvalidChain("HopID 0 is reserved"));
        }
        Ok(())
    }

    fn dispatch_byte(&self) -> u8 {
        let mut b = self.dispatch.base_byte();
        if self.hop_id.is_some() {
            b |= DISPATCH_FLAG_HOP_ID;
        }
        if !self.cids.is_empty() {
            b |= DISPATCH_FLAG_CID;
        }
        b
    }
}

/// Serializes `chain ‖ body` into a LoWPAN datagram.
pub fn frame_encapsulate(chain: &DispatchChain, body: &[u8]) -> Result<Vec<u8>, Error> {
    chain.validate()?;
    let mut out = Vec::with_capacity(chain.encoded_len() + body.len());
    out.push(PAGE_SWITCH_MASK | chain.page);
    out.push(chain.dispatch_byte());
    if let Some((last, rest)) = chain.cids.split_last() {
        out.extend(rest.iter().map(|cid| cid | CID_CHAIN_BIT));
        out.push(*last);
    }
    if let Some(hop_id) = chain.hop_id {
        out.push(hop_id);
    }
    out.extend_from_slice(body);
    Ok(out)
}

/// Parses a (reassembled) LoWPAN datagram into its dispatch chain and body.
///
/// RFC 4944 mesh and broadcast headers are skipped; IPv6 dispatches of pages
/// 0 and 1 are reported as [`Error::NotIcnlowpan`].
pub fn parse_frame(bytes: &[u8]) -> Result<(DispatchChain, &[u8]), Error> {
    let mut pos = 0;
    let byte_at = |pos: usize| bytes.get(pos).copied().ok_or(Error::TruncatedFrame);

    // optional RFC 4944 headers before the page switch
    loop {
        let b = byte_at(pos)?;
        match b {
            // NALP: not a LoWPAN frame at all
            0x00..=0x3F => return Err(Error::NotIcnlowpan),
            LOWPAN_BC0 => pos += 2,
            // IPv6, HC1, IPHC and the rest of the 01xxxxxx space
            0x40..=0x7F => return Err(Error::NotIcnlowpan),
            // mesh header: V/F select 2- or 8-byte addresses, hops-left 0xF escapes
            0x80..=0xBF => {
                let originator = if b & 0x20 != 0 { 2 } else { 8 };
                let last = if b & 0x10 != 0 { 2 } else { 8 };
                let hops_escape = usize::from(b & 0x0F == 0x0F);
                pos += 1 + hops_escape + originator + last;
            }
            0xC0..=0xC7 | 0xE0..=0xE7 => return Err(Error::UnexpectedFragment),
            _ if b & PAGE_SWITCH_MASK == PAGE_SWITCH_MASK => break,
            _ => return Err(Error::UnknownDispatch(b)),
        }
    }

    let page = byte_at(pos)? & 0x0F;
    match page {
        ICNLOWPAN_PAGE => {}
        0 | 1 => return Err(Error::NotIcnlowpan),
        _ => return Err(Error::UnknownDispatch(bytes[pos])),
    }
    pos += 1;

    let dispatch_byte = byte_at(pos)?;
    if dispatch_byte & DISPATCH_BASE_MASK != DISPATCH_UNCOMPRESSED_INTEREST {
        return Err(Error::UnknownDispatch(dispatch_byte));
    }
    pos += 1;
    let mut chain = DispatchChain::new(IcnDispatch::from_kind(dispatch_byte));

    if dispatch_byte & DISPATCH_FLAG_CID != 0 {
        loop {
            let cid = byte_at(pos)?;
            pos += 1;
            chain.cids.push(cid & MAX_CONTEXT_ID);
            if cid & CID_CHAIN_BIT == 0 {
                break;
            }
        }
    }
    if dispatch_byte & DISPATCH_FLAG_HOP_ID != 0 {
        let hop_id = byte_at(pos)?;
        if hop_id == 0 {
            return Err(Error::InvalidChain("HopID 0 is reserved"));
        }
        chain.hop_id = Some(hop_id);
        pos += 1;
    }
    Ok((chain, &bytes[pos..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_compressed_interest_is_two_bytes() {
        let chain = DispatchChain::new(IcnDispatch::CompressedInterest);
        assert_eq!(frame_encapsulate(&chain, &[]).unwrap(), [0xF2, 0x82]);
    }

    #[test]
    fn cid_chain_sets_msb_on_all_but_last() {
        let chain = DispatchChain::new(IcnDispatch::CompressedData).with_cids(vec![0x05, 0x11]);
        let bytes = frame_encapsulate(&chain, &[0xAA]).unwrap();
        assert_eq!(bytes, [0xF2, 0x83 | DISPATCH_FLAG_CID, 0x85, 0x11, 0xAA]);
        let (parsed, body) = parse_frame(&bytes).unwrap();
        assert_eq!(parsed, chain);
        assert_eq!(body, [0xAA]);
    }

    #[test]
    fn four_byte_overhead_with_cid_and_hop_id() {
        let chain = DispatchChain::new(IcnDispatch::CompressedInterest)
            .with_cids(vec![1])
            .with_hop_id(Some(9));
        let body = [0u8; 19];
        let bytes = frame_encapsulate(&chain, &body).unwrap();
        assert_eq!(bytes.len(), 19 + 4);
        assert_eq!(chain.encoded_len(), 4);
    }

    #[test]
    fn invalid_chains_rejected() {
        let bad_cid = DispatchChain::new(IcnDispatch::CompressedInterest).with_cids(vec![0x80]);
        assert!(matches!(frame_encapsulate(&bad_cid, &[]), Err(Error::InvalidChain(_))));
        let mut bad_page = DispatchChain::new(IcnDispatch::CompressedInterest);
        bad_page.page = 0;
        assert!(frame_encapsulate(&bad_page, &[]).is_err());
        let zero_hop = DispatchChain::new(IcnDispatch::CompressedData).with_hop_id(Some(0));
        assert!(frame_encapsulate(&zero_hop, &[]).is_err());
    }

    #[test]
    fn ipv6_dispatch_space_is_not_ours() {
        assert_eq!(parse_frame(&[0x41, 0x60]), Err(Error::NotIcnlowpan));
        assert_eq!(parse_frame(&[0x7A, 0x33]), Err(Error::NotIcnlowpan));
        assert_eq!(parse_frame(&[0xF0, 0x82]), Err(Error::NotIcnlowpan));
        assert_eq!(parse_frame(&[0xF1, 0x82]), Err(Error::NotIcnlowpan));
        assert_eq!(parse_frame(&[0x00]), Err(Error::NotIcnlowpan));
    }

    #[test]
    fn unterminated_cid_chain_is_truncated() {
        assert_eq!(
            parse_frame(&[0xF2, 0x82 | DISPATCH_FLAG_CID, 0x81]),
            Err(Error::TruncatedFrame)
        );
        assert_eq!(parse_frame(&[]), Err(Error::TruncatedFrame));
        assert_eq!(parse_frame(&[0xF2]), Err(Error::TruncatedFrame));
        assert_eq!(
            parse_frame(&[0xF2, 0x82 | DISPATCH_FLAG_HOP_ID]),
            Err(Error::TruncatedFrame)
        );
    }

    #[test]
    fn unknown_dispatch_on_page_two() {
        assert_eq!(parse_frame(&[0xF2, 0x41]), Err(Error::UnknownDispatch(0x41)));
        assert_eq!(parse_frame(&[0xF5, 0x82]), Err(Error::UnknownDispatch(0xF5)));
    }

    #[test]
    fn mesh_and_broadcast_headers_are_skipped() {
        // mesh header with short originator and final addresses, then BC0
        let mut bytes = vec![0xB5, 0x00, 0x01, 0x00, 0x02, 0x50, 0x07];
        bytes.extend_from_slice(&[0xF2, 0x80, 0xEE]);
        let (chain, body) = parse_frame(&bytes).unwrap();
        assert_eq!(chain.dispatch, IcnDispatch::UncompressedInterest);
        assert_eq!(body, [0xEE]);
    }

    #[test]
    fn fragment_headers_are_not_datagrams() {
        assert_eq!(parse_frame(&[0xC1, 0x2C, 0x00, 0x01]), Err(Error::UnexpectedFragment));
    }
}
