//! The temperature-reading workload: name schemes, the default CID table,
//! and the request/response pair used for size reports and simulations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::compress::{self, encode_data, encode_interest, CidTable, DataNameSource, HopId};
use crate::frame::{FCS_LEN, MAC_HEADER_LEN};
use crate::ndn::{Data, Interest, Name};

pub const SHORT_PREFIX: &str = "/org/example/temp";
pub const LONG_PREFIX: &str = "/org/example/building/1/floor/4/room/481/temp";
pub const LONG_CID_PREFIX: &str = "/org/example/building/1/floor/4/room/481";

/// CoAP GET request size over 6LoWPAN, a published figure. Never computed.
pub const COAP_REQUEST_BYTES: usize = 97;

pub const HARNESS_LIFETIME_MS: u64 = 4000;
pub const HARNESS_FRESHNESS_MS: u64 = 1000;
/// Request interval of the byte-count runs.
pub const REQUEST_INTERVAL_US: u64 = 500_000;
/// Request interval of the reliability runs.
pub const RELIABILITY_REQUEST_INTERVAL_US: u64 = 300_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown name scheme `{0}` (expected short, long or a URI)")]
pub struct UnknownScheme(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NameScheme {
    /// `/org/example/temp/<id>`
    Short,
    /// `/org/example/building/1/floor/4/room/481/temp/<id>`
    Long,
    /// A fixed prefix; the request id is appended as the last component.
    Custom(Name),
}

impl NameScheme {
    pub fn prefix(&self) -> Name {
        match self {
            NameScheme::Short => SHORT_PREFIX.parse().unwrap(),
            NameScheme::Long => LONG_PREFIX.parse().unwrap(),
            NameScheme::Custom(name) => name.clone(),
        }
    }

    pub fn name_for(&self, id: u64) -> Name {
        self.prefix().child(id.to_string())
    }

    /// The name used in single-message reports: id 1 for the built-in
    /// schemes, the URI itself for a custom one.
    pub fn sample_name(&self) -> Name {
        match self {
            NameScheme::Custom(name) => name.clone(),
            _ => self.name_for(1),
        }
    }
}

impl FromStr for NameScheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "short" => Ok(NameScheme::Short),
            "long" => Ok(NameScheme::Long),
            uri if uri.starts_with('/') || uri.starts_with("ndn:") => uri
                .parse()
                .map(NameScheme::Custom)
                .map_err(|_| UnknownScheme(s.to_owned())),
            _ => Err(UnknownScheme(s.to_owned())),
        }
    }
}

impl fmt::Display for NameScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameScheme::Short => f.write_str("short"),
            NameScheme::Long => f.write_str("long"),
            NameScheme::Custom(name) => write!(f, "{name}"),
        }
    }
}

/// `/org` for the short scheme and the building prefix for the long one.
pub fn default_cid_table() -> CidTable {
    CidTable::new()
        .with(0, "/org")
        .and_then(|t| t.with(1, LONG_CID_PREFIX))
        .expect("static table is valid")
}

/// Nonce derived from the request id, so runs are reproducible.
pub fn harness_nonce(id: u64) -> [u8; 4] {
    (id as u32).wrapping_mul(0x9E37_79B1).to_be_bytes()
}

/// Interest with a nonce and an explicit 4 s lifetime.
pub fn harness_interest(name: Name, id: u64) -> Interest {
    Interest::new(name)
        .with_nonce(harness_nonce(id))
        .with_lifetime(HARNESS_LIFETIME_MS)
}

/// Data carrying a 4-byte signed temperature reading, 1 s freshness and
/// empty signature fields.
pub fn harness_data(name: Name, reading: i32) -> Data {
    Data::new(name, reading.to_be_bytes().to_vec()).with_freshness(HARNESS_FRESHNESS_MS)
}

/// Reading reported for request `id`, in hundredths of a degree.
pub fn harness_reading(id: u64) -> i32 {
    2150 + (id % 97) as i32 - 48
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MessageSizes {
    /// NDN TLV bytes.
    pub uncompressed: usize,
    /// Compressed body, without dispatch bytes.
    pub compressed_body: usize,
    /// Page switch, dispatch, CIDs and HopID.
    pub dispatch: usize,
    /// `1 - body / uncompressed`.
    pub body_saving: f64,
    /// Saving on the full 802.15.4 frame, MAC header and FCS included.
    pub frame_saving: f64,
    pub path: compress::CompressionPath,
}

impl MessageSizes {
    fn new(uncompressed: usize, encoded: &compress::Encoded) -> Self {
        let body = encoded.body_len();
        let dispatch = encoded.chain.encoded_len();
        let link = MAC_HEADER_LEN + FCS_LEN;
        MessageSizes {
            uncompressed,
            compressed_body: body,
            dispatch,
            body_saving: 1.0 - body as f64 / uncompressed as f64,
            frame_saving: 1.0 - (body + dispatch + link) as f64 / (uncompressed + link) as f64,
            path: encoded.path,
        }
    }

    pub fn compressed_total(&self) -> usize {
        self.compressed_body + self.dispatch
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeReport {
    pub name: String,
    pub interest: MessageSizes,
    pub data: MessageSizes,
    pub coap_request_literature: usize,
}

/// Sizes of the harness request/response pair for `name`, compressed as on
/// the first hop: CID prefix plus HopID for the Interest, fully elided name
/// for the Data.
pub fn size_report(name: &Name, table: &CidTable) -> Result<SizeReport, compress::Error> {
    let hop_id = HopId::new(1).unwrap();
    let interest = harness_interest(name.clone(), 1);
    let data = harness_data(name.clone(), harness_reading(1));
    let ei = encode_interest(&interest, table, Some(hop_id))?;
    let ed = encode_data(
        &data,
        table,
        DataNameSource::EnRoute {
            hop_id,
            interest_components: name.component_count(),
        },
    )?;
    Ok(SizeReport {
        name: name.to_string(),
        interest: MessageSizes::new(interest.encode().len(), &ei),
        data: MessageSizes::new(data.encode().len(), &ed),
        coap_request_literature: COAP_REQUEST_BYTES,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_names() {
        assert_eq!(NameScheme::Short.name_for(7).to_string(), "/org/example/temp/7");
        assert_eq!(NameScheme::Long.name_for(3).component_count(), 10);
        assert_eq!("long".parse::<NameScheme>().unwrap(), NameScheme::Long);
        assert!(matches!("/a/b".parse::<NameScheme>().unwrap(), NameScheme::Custom(_)));
        assert!("medium".parse::<NameScheme>().is_err());
    }

    #[test]
    fn long_name_uses_building_context() {
        let table = default_cid_table();
        let (cids, residual) = compress::cid_compress(&NameScheme::Long.name_for(1), &table);
        assert_eq!(cids, [1]);
        assert_eq!(residual.to_string(), "/temp/1");
    }

    #[test]
    fn long_scheme_sizes() {
        let r = size_report(&NameScheme::Long.sample_name(), &default_cid_table()).unwrap();
        // 2 + 2*10 + 39 name bytes, 6 nonce, 4 lifetime, 2 outer header
        assert_eq!(r.interest.uncompressed, 71);
        assert_eq!(r.interest.dispatch, 4);
        assert_eq!(r.data.dispatch, 3);
        assert!(r.interest.body_saving > r.interest.frame_saving);
    }

    #[test]
    fn empty_table_isolates_stateless_savings() {
        let name = NameScheme::Short.sample_name();
        let with = size_report(&name, &default_cid_table()).unwrap();
        let without = size_report(&name, &CidTable::new()).unwrap();
        assert!(without.interest.compressed_body > with.interest.compressed_body);
        assert!(without.interest.body_saving > 0.0);
        assert_eq!(without.interest.dispatch, 3);
    }
}
