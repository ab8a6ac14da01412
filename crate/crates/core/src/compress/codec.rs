//! Whole-message encoding onto LoWPAN datagrams, combining the stateful and
//! stateless schemes.
//!
//! The encoder walks a fixed ladder and keeps the first rung that works:
//! en-route HopID, then CID prefix plus stateless body, then stateless body
//! alone, then the uncompressed dispatch.

use super::cid::{cid_compress, cid_prefix, CidTable};
use super::pit::HopId;
use super::stateless::{compress_data, compress_interest, decompress_data, decompress_interest, CompressOptions};
use super::Error;
use crate::frame::{frame_encapsulate, parse_frame, DispatchChain, IcnDispatch};
use crate::ndn::{Data, Interest, Name, Packet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompressionPath {
    /// HopID present (Interest collecting state, or Data with an elided name).
    EnRoute,
    /// CID chain plus stateless body.
    Cid,
    Stateless,
    Uncompressed,
}

impl std::fmt::Display for CompressionPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CompressionPath::EnRoute => "en-route",
            CompressionPath::Cid => "cid",
            CompressionPath::Stateless => "stateless",
            CompressionPath::Uncompressed => "uncompressed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub datagram: Vec<u8>,
    pub chain: DispatchChain,
    pub path: CompressionPath,
    /// The carried name did not fit the nibble encoding and went as a Name TLV.
    pub name_fallback: bool,
}

impl Encoded {
    pub fn body_len(&self) -> usize {
        self.datagram.len() - self.chain.encoded_len()
    }
}

fn name_fallback(body: &[u8], fallback_bit: u8) -> bool {
    body.first().is_some_and(|b| b & fallback_bit != 0)
}

fn uncompressed(packet: Packet) -> Result<Encoded, Error> {
    let dispatch = match packet {
        Packet::Interest(_) => IcnDispatch::UncompressedInterest,
        Packet::Data(_) => IcnDispatch::UncompressedData,
    };
    let chain = DispatchChain::new(dispatch);
    Ok(Encoded {
        datagram: frame_encapsulate(&chain, &packet.encode())?,
        chain,
        path: CompressionPath::Uncompressed,
        name_fallback: false,
    })
}

pub fn encode_interest_uncompressed(interest: &Interest) -> Result<Encoded, Error> {
    uncompressed(Packet::Interest(interest.clone()))
}

pub fn encode_data_uncompressed(data: &Data) -> Result<Encoded, Error> {
    uncompressed(Packet::Data(data.clone()))
}

/// Compresses an Interest, eliding the longest CID prefix and attaching
/// `hop_id` when given.
pub fn encode_interest(interest: &Interest, table: &CidTable, hop_id: Option<HopId>) -> Result<Encoded, Error> {
    let (cids, residual) = cid_compress(&interest.name, table);
    let opts = CompressOptions {
        elided_components: interest.name.component_count() - residual.component_count(),
        cid: !cids.is_empty(),
        hop_id: hop_id.is_some(),
    };
    let Ok(body) = compress_interest(interest, &opts) else {
        return encode_interest_uncompressed(interest);
    };
    let path = if hop_id.is_some() {
        CompressionPath::EnRoute
    } else if opts.cid {
        CompressionPath::Cid
    } else {
        CompressionPath::Stateless
    };
    let chain = DispatchChain::new(IcnDispatch::CompressedInterest)
        .with_cids(cids)
        .with_hop_id(hop_id.map(HopId::get));
    Ok(Encoded {
        datagram: frame_encapsulate(&chain, &body)?,
        name_fallback: name_fallback(&body, super::stateless::interest_bits::FALLBACK),
        chain,
        path,
    })
}

/// Where a compressed Data message takes its elided name from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataNameSource {
    /// Full name carried, CID prefix elided when the table matches.
    Table,
    /// The name is covered by the pending Interest name (`interest_components`
    /// long); only the suffix beyond it is carried.
    EnRoute { hop_id: HopId, interest_components: usize },
}

pub fn encode_data(data: &Data, table: &CidTable, source: DataNameSource) -> Result<Encoded, Error> {
    let (cids, opts, path) = match source {
        DataNameSource::EnRoute {
            hop_id: _,
            interest_components,
        } => (
            Vec::new(),
            CompressOptions {
                elided_components: interest_components,
                cid: false,
                hop_id: true,
            },
            CompressionPath::EnRoute,
        ),
        DataNameSource::Table => {
            let (cids, residual) = cid_compress(&data.name, table);
            let opts = CompressOptions {
                elided_components: data.name.component_count() - residual.component_count(),
                cid: !cids.is_empty(),
                hop_id: false,
            };
            let path = if opts.cid {
                CompressionPath::Cid
            } else {
                CompressionPath::Stateless
            };
            (cids, opts, path)
        }
    };
    let Ok(body) = compress_data(data, &opts) else {
        return encode_data_uncompressed(data);
    };
    let hop_id = match source {
        DataNameSource::EnRoute { hop_id, .. } => Some(hop_id.get()),
        DataNameSource::Table => None,
    };
    let chain = DispatchChain::new(IcnDispatch::CompressedData)
        .with_cids(cids)
        .with_hop_id(hop_id);
    Ok(Encoded {
        datagram: frame_encapsulate(&chain, &body)?,
        name_fallback: name_fallback(&body, super::stateless::data_bits::FALLBACK),
        chain,
        path,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Interest {
        interest: Interest,
        hop_id: Option<HopId>,
        path: CompressionPath,
    },
    /// A Data message with its complete name.
    Data { data: Data, path: CompressionPath },
    /// A Data message whose name must be restored from the PIT entry that
    /// `hop_id` designates; `data.name` holds only the carried suffix.
    DataByHopId { data: Data, hop_id: HopId },
}

/// Parses and decompresses a LoWPAN datagram.
pub fn decode_datagram(datagram: &[u8], table: &CidTable) -> Result<Decoded, Error> {
    let (chain, body) = parse_frame(datagram)?;
    let hop_id = chain.hop_id.and_then(HopId::new);
    match chain.dispatch {
        IcnDispatch::UncompressedInterest | IcnDispatch::UncompressedData => {
            if !chain.cids.is_empty() || hop_id.is_some() {
                return Err(Error::MalformedBody("context on an uncompressed message"));
            }
            match (chain.dispatch, Packet::decode(body)?) {
                (IcnDispatch::UncompressedInterest, Packet::Interest(interest)) => Ok(Decoded::Interest {
                    interest,
                    hop_id: None,
                    path: CompressionPath::Uncompressed,
                }),
                (IcnDispatch::UncompressedData, Packet::Data(data)) => Ok(Decoded::Data {
                    data,
                    path: CompressionPath::Uncompressed,
                }),
                _ => Err(Error::MalformedBody("dispatch disagrees with message type")),
            }
        }
        IcnDispatch::CompressedInterest => {
            let prefix = cid_prefix(&chain.cids, table)?;
            let d = decompress_interest(body, &prefix)?;
            if d.flags.cid != !chain.cids.is_empty() || d.flags.hop_id != hop_id.is_some() {
                return Err(Error::MalformedBody("presence bits disagree with dispatch chain"));
            }
            let path = if hop_id.is_some() {
                CompressionPath::EnRoute
            } else if d.flags.cid {
                CompressionPath::Cid
            } else {
                CompressionPath::Stateless
            };
            Ok(Decoded::Interest {
                interest: d.packet,
                hop_id,
                path,
            })
        }
        IcnDispatch::CompressedData => {
            if hop_id.is_some() && !chain.cids.is_empty() {
                return Err(Error::MalformedBody("Data with both HopID and CID chain"));
            }
            let prefix = cid_prefix(&chain.cids, table)?;
            let d = decompress_data(body, &prefix)?;
            if d.flags.hop_id != hop_id.is_some() {
                return Err(Error::MalformedBody("presence bits disagree with dispatch chain"));
            }
            match hop_id {
                Some(hop_id) => Ok(Decoded::DataByHopId { data: d.packet, hop_id }),
                None => Ok(Decoded::Data {
                    data: d.packet,
                    path: if chain.cids.is_empty() {
                        CompressionPath::Stateless
                    } else {
                        CompressionPath::Cid
                    },
                }),
            }
        }
    }
}

/// Completes a Data name received with a HopID.
pub fn restore_data_name(mut data: Data, interest_name: &Name) -> Data {
    data.name = interest_name.join(&data.name);
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::DISPATCH_FLAG_CID;

    fn name(s: &str) -> Name {
        s.parse().unwrap()
    }

    fn table() -> CidTable {
        CidTable::new().with(0, "/org").unwrap()
    }

    #[test]
    fn interest_paths() {
        let i = Interest::new(name("/org/example/temp/7"))
            .with_nonce([1; 4])
            .with_lifetime(4000);
        let t = table();
        let stateless = encode_interest(&i, &CidTable::new(), None).unwrap();
        let cid = encode_interest(&i, &t, None).unwrap();
        let enroute = encode_interest(&i, &t, HopId::new(5)).unwrap();
        assert_eq!(stateless.path, CompressionPath::Stateless);
        assert_eq!(cid.path, CompressionPath::Cid);
        assert_eq!(enroute.path, CompressionPath::EnRoute);
        assert_eq!(cid.datagram[1], 0x82 | DISPATCH_FLAG_CID);
        for e in [&stateless, &cid, &enroute] {
            match decode_datagram(&e.datagram, &t).unwrap() {
                Decoded::Interest { interest, .. } => assert_eq!(interest, i),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn data_by_hop_id_needs_pit_name() {
        let d = Data::new(name("/a/b/v1"), vec![1, 2]);
        let e = encode_data(
            &d,
            &CidTable::new(),
            DataNameSource::EnRoute {
                hop_id: HopId::new(9).unwrap(),
                interest_components: 2,
            },
        )
        .unwrap();
        match decode_datagram(&e.datagram, &CidTable::new()).unwrap() {
            Decoded::DataByHopId { data, hop_id } => {
                assert_eq!(hop_id.get(), 9);
                assert_eq!(data.name, name("/v1"));
                assert_eq!(restore_data_name(data, &name("/a/b")), d);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_cid_fails_decoding() {
        let i = Interest::new(name("/org/x"));
        let e = encode_interest(&i, &table(), None).unwrap();
        assert_eq!(
            decode_datagram(&e.datagram, &CidTable::new()),
            Err(Error::UnknownCid(0))
        );
    }

    #[test]
    fn uncompressed_dispatch_round_trip() {
        let d = Data::new(name("/a"), vec![0; 3]);
        let e = encode_data_uncompressed(&d).unwrap();
        assert_eq!(&e.datagram[..2], &[0xF2, 0x81]);
        assert_eq!(
            decode_datagram(&e.datagram, &CidTable::new()).unwrap(),
            Decoded::Data {
                data: d,
                path: CompressionPath::Uncompressed
            }
        );
    }
}
