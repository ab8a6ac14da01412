//! Header compression: stateless (presence bit fields, nibble-packed names)
//! and stateful (LoWPAN-wide CIDs, en-route HopIDs kept in the PIT).

mod cid;
mod codec;
mod name;
mod pit;
mod stateless;

pub use cid::{cid_compress, cid_decompress, cid_prefix, CidTable};
pub use codec::{
    decode_datagram, encode_data, encode_data_uncompressed, encode_interest, encode_interest_uncompressed,
    restore_data_name, CompressionPath, DataNameSource, Decoded, Encoded,
};
pub use name::{
    compress_name, compressed_name_overhead, decompress_name, decompress_name_prefix, is_compressible, CompressedName,
    MAX_COMPONENT_LEN,
};
pub use pit::{Face, HopId, InRecord, InboundOutcome, Pit, PitEntry, Satisfied, DEFAULT_PIT_CAPACITY, HOP_ID_SPACE};
pub use stateless::{
    compress_data, compress_interest, data_bits, decompress_data, decompress_interest, interest_bits, BodyFlags,
    CompressOptions, Decompressed,
};

/// `⌈1.5·|c|⌉ + 1`: bytes saved on a name by the nibble encoding.
pub fn name_overhead_saving(component_count: usize) -> usize {
    (3 * component_count).div_ceil(2) + 1
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("name component of {0} bytes does not fit a 4-bit length")]
    ComponentTooLong(usize),
    #[error("empty name component cannot be nibble-encoded")]
    EmptyComponent,
    #[error("malformed compressed name: {0}")]
    MalformedCompressedName(&'static str),
    #[error("malformed compressed message: {0}")]
    MalformedBody(&'static str),
    #[error("compressed message truncated")]
    Truncated,
    #[error("invalid compression options: {0}")]
    InvalidOptions(&'static str),
    #[error("context id {0} exceeds 127")]
    CidOutOfRange(u8),
    #[error("context id {0} maps to an empty prefix")]
    EmptyCidPrefix(u8),
    #[error("context id {0} or its prefix is already configured")]
    DuplicateCid(u8),
    #[error("unknown context id {0}")]
    UnknownCid(u8),
    #[error("CID configuration: {0}")]
    Config(String),
    #[error("PIT is full")]
    PitFull,
    #[error("all 255 HopIDs are in use")]
    HopIdSpaceExhausted,
    #[error("no matching PIT entry")]
    NoPitMatch,
    #[error("HopID {0:#04x} matches no PIT entry")]
    UnknownHopId(u8),
    #[error(transparent)]
    Name(crate::ndn::Error),
    #[error(transparent)]
    Frame(#[from] crate::frame::Error),
    #[error(transparent)]
    Ndn(#[from] crate::ndn::Error),
}
