//! Uncompressed NDN Interest/Data messages in the standard TLV wire format.
//!
//! This is the ground truth every compressed representation must restore
//! exactly.

mod name;
mod packet;
pub mod tlv;

pub use name::{escape_component, name_tlv_overhead_uncompressed, Name};
pub use packet::{
    decode_data, decode_interest, encode_data, encode_interest, Data, Interest, Packet, DEFAULT_INTEREST_LIFETIME_MS,
};
pub use tlv::{RawTlv, TlvHeader};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed TLV: {0}")]
    MalformedTlv(String),
    #[error("malformed TLV: unknown critical type {0:#x}")]
    UnknownCritical(u64),
    #[error("name has a TLV header that needs a multi-byte encoding")]
    OverheadAssumptionViolated,
    #[error("invalid name URI: {0:?}")]
    InvalidUri(String),
}

impl Error {
    pub(crate) fn malformed(reason: impl Into<String>) -> Self {
        Error::MalformedTlv(reason.into())
    }
}
