//! Stateless message compression.
//!
//! A compressed body starts with a one-byte presence bit field. A set bit
//! stands in for the type of the corresponding TLV; fixed-size values and the
//! value that ends the body are written without a length. The name is
//! nibble-packed, or carried as a plain Name TLV when any component falls
//! outside 1..=15 bytes.
//!
//! Interest body: `bits | name? | nonce(4)? | lifetime? | ext?`
//!
//! Data body: `bits | name? | freshness? | content? | sig_info? | sig_value? | ext?`
//!
//! Variable-length values carry a TLV variable-size length prefix unless they
//! are the last item in the body.

use super::name::{compress_name_into, decompress_name_prefix, is_compressible};
use super::Error;
use crate::ndn::tlv::{self, nonneg_bytes, parse_nonneg, put_varnum, RawTlv, Reader};
use crate::ndn::{Data, Interest, Name, DEFAULT_INTEREST_LIFETIME_MS};

/// Interest presence bits, most significant first.
pub mod interest_bits {
    pub const NONCE: u8 = 0x80;
    pub const LIFETIME: u8 = 0x40;
    pub const HOP_ID: u8 = 0x20;
    pub const CID: u8 = 0x10;
    pub const NAME: u8 = 0x08;
    pub const FALLBACK: u8 = 0x04;
    /// Trailing block of uncompressed TLVs (selectors, unknown fields).
    pub const EXT: u8 = 0x02;
    pub const RESERVED: u8 = 0x01;
}

/// Data presence bits, most significant first.
pub mod data_bits {
    pub const FRESHNESS: u8 = 0x80;
    pub const CONTENT: u8 = 0x40;
    pub const SIG_INFO: u8 = 0x20;
    pub const SIG_VALUE: u8 = 0x10;
    pub const HOP_ID: u8 = 0x08;
    pub const NAME: u8 = 0x04;
    pub const FALLBACK: u8 = 0x02;
    /// Trailing MetaInfo extras and unknown fields.
    pub const EXT: u8 = 0x01;
}

/// Which leading part of the name is restored from shared state instead of
/// being carried in the body.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompressOptions {
    /// Number of leading name components not carried.
    pub elided_components: usize,
    /// The elided prefix is named by the CID chain.
    pub cid: bool,
    /// A HopID accompanies the message.
    pub hop_id: bool,
}

impl CompressOptions {
    pub fn stateless() -> Self {
        CompressOptions::default()
    }
}

/// Flags recovered from a compressed body.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BodyFlags {
    pub hop_id: bool,
    pub cid: bool,
    pub name_carried: bool,
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decompressed<T> {
    pub packet: T,
    pub flags: BodyFlags,
}

enum Item {
    /// Length known to the decoder (fixed size or self-delimiting).
    Fixed(Vec<u8>),
    /// Length-prefixed unless last.
    Var(Vec<u8>),
}

fn write_body(bits: u8, items: Vec<Item>) -> Vec<u8> {
    let mut out = vec![bits];
    let last = items.len().saturating_sub(1);
    for (i, item) in items.into_iter().enumerate() {
        match item {
            Item::Fixed(v) => out.extend_from_slice(&v),
            Item::Var(v) => {
                if i != last {
                    put_varnum(&mut out, v.len() as u64);
                }
                out.extend_from_slice(&v);
            }
        }
    }
    out
}

fn name_item(name: &Name) -> (Item, bool) {
    let mut out = Vec::new();
    if is_compressible(name) {
        compress_name_into(name, &mut out);
        (Item::Fixed(out), false)
    } else {
        name.encode_into(&mut out);
        (Item::Fixed(out), true)
    }
}

fn carried_name(name: &Name, opts: &CompressOptions) -> Result<Name, Error> {
    if opts.elided_components > name.component_count() {
        return Err(Error::InvalidOptions("elided prefix longer than the name"));
    }
    if opts.elided_components > 0 && !(opts.cid || opts.hop_id) {
        return Err(Error::InvalidOptions("elided prefix without CID or HopID"));
    }
    Ok(name.suffix_from(opts.elided_components))
}

fn raw_block(tlvs: &[RawTlv]) -> Vec<u8> {
    let mut out = Vec::new();
    for t in tlvs {
        t.encode_into(&mut out);
    }
    out
}

pub fn compress_interest(interest: &Interest, opts: &CompressOptions) -> Result<Vec<u8>, Error> {
    use interest_bits::*;
    let carried = carried_name(&interest.name, opts)?;
    let mut bits = 0;
    let mut items = Vec::new();
    if opts.hop_id {
        bits |= HOP_ID;
    }
    if opts.cid {
        bits |= CID;
    }
    if !carried.is_empty() {
        let (item, fallback) = name_item(&carried);
        bits |= NAME;
        if fallback {
            bits |= FALLBACK;
        }
        items.push(item);
    }
    if let Some(nonce) = interest.nonce {
        bits |= NONCE;
        items.push(Item::Fixed(nonce.to_vec()));
    }
    if interest.lifetime_ms != Some(DEFAULT_INTEREST_LIFETIME_MS) {
        bits |= LIFETIME;
        // an absent lifetime is written as an empty value
        items.push(Item::Var(interest.lifetime_ms.map(nonneg_bytes).unwrap_or_default()));
    }
    let mut ext = Vec::new();
    if interest.can_be_prefix {
        ext.push(RawTlv::new(tlv::TLV_CAN_BE_PREFIX, Vec::new()));
    }
    if interest.must_be_fresh {
        ext.push(RawTlv::new(tlv::TLV_MUST_BE_FRESH, Vec::new()));
    }
    ext.extend(interest.extra.iter().cloned());
    if !ext.is_empty() {
        bits |= EXT;
        items.push(Item::Var(raw_block(&ext)));
    }
    Ok(write_body(bits, items))
}

/// Parses the items of a body in order, honouring the last-item rule.
struct BodyReader<'a> {
    reader: Reader<'a>,
    remaining_vars: usize,
}

impl<'a> BodyReader<'a> {
    fn fixed(&mut self, n: usize) -> Result<&'a [u8], Error> {
        self.reader.read_bytes(n).map_err(|_| Error::Truncated)
    }

    /// `is_last` says whether this is the final item of the body.
    fn var(&mut self, is_last: bool) -> Result<&'a [u8], Error> {
        self.remaining_vars -= 1;
        if is_last {
            let rest = self.reader.remaining();
            self.reader.read_bytes(rest.len()).map_err(|_| Error::Truncated)
        } else {
            let len = self.reader.read_varnum().map_err(|_| Error::Truncated)?;
            let len = usize::try_from(len).map_err(|_| Error::Truncated)?;
            self.reader.read_bytes(len).map_err(|_| Error::Truncated)
        }
    }

    fn name(&mut self, fallback: bool) -> Result<Name, Error> {
        let rest = self.reader.remaining();
        if fallback {
            let mut r = Reader::new(rest);
            let value = r
                .expect_tlv(tlv::TLV_NAME)
                .map_err(|_| Error::MalformedBody("fallback Name TLV"))?;
            let name = Name::decode_value(value).map_err(|_| Error::MalformedBody("fallback Name TLV"))?;
            self.reader.read_bytes(r.position()).map_err(|_| Error::Truncated)?;
            Ok(name)
        } else {
            let (name, used) = decompress_name_prefix(rest)?;
            self.reader.read_bytes(used).map_err(|_| Error::Truncated)?;
            Ok(name)
        }
    }

    fn finish(self) -> Result<(), Error> {
        if self.reader.is_empty() {
            Ok(())
        } else {
            Err(Error::MalformedBody("trailing bytes"))
        }
    }
}

fn parse_raw_block(bytes: &[u8]) -> Result<Vec<RawTlv>, Error> {
    let mut r = Reader::new(bytes);
    let mut out = Vec::new();
    while !r.is_empty() {
        let (t, v) = r.read_tlv().map_err(|_| Error::MalformedBody("extension block"))?;
        out.push(RawTlv::new(t, v));
    }
    Ok(out)
}

/// Restores an Interest. `prefix` supplies the components elided by the CID
/// chain or HopID and is prepended to the carried name.
pub fn decompress_interest(body: &[u8], prefix: &Name) -> Result<Decompressed<Interest>, Error> {
    use interest_bits::*;
    let (&bits, _) = body.split_first().ok_or(Error::Truncated)?;
    if bits & RESERVED != 0 {
        return Err(Error::MalformedBody("reserved Interest bit set"));
    }
    if bits & FALLBACK != 0 && bits & NAME == 0 {
        return Err(Error::MalformedBody("fallback flag without a name"));
    }
    let vars = [LIFETIME, EXT].iter().filter(|&&b| bits & b != 0).count();
    let mut r = BodyReader {
        reader: Reader::new(&body[1..]),
        remaining_vars: vars,
    };
    let carried = if bits & NAME != 0 {
        r.name(bits & FALLBACK != 0)?
    } else {
        Name::new()
    };
    let mut interest = Interest::new(prefix.join(&carried));
    if bits & NONCE != 0 {
        interest.nonce = Some(r.fixed(4)?.try_into().unwrap());
    }
    interest.lifetime_ms = if bits & LIFETIME != 0 {
        let last = r.remaining_vars == 1;
        let v = r.var(last)?;
        if v.is_empty() {
            None
        } else {
            Some(parse_nonneg(v).map_err(|_| Error::MalformedBody("lifetime"))?)
        }
    } else {
        Some(DEFAULT_INTEREST_LIFETIME_MS)
    };
    if bits & EXT != 0 {
        for t in parse_raw_block(r.var(true)?)? {
            match t.tlv_type {
                tlv::TLV_CAN_BE_PREFIX if t.value.is_empty() => interest.can_be_prefix = true,
                tlv::TLV_MUST_BE_FRESH if t.value.is_empty() => interest.must_be_fresh = true,
                _ => interest.extra.push(t),
            }
        }
    }
    r.finish()?;
    Ok(Decompressed {
        packet: interest,
        flags: BodyFlags {
            hop_id: bits & HOP_ID != 0,
            cid: bits & CID != 0,
            name_carried: bits & NAME != 0,
            fallback: bits & FALLBACK != 0,
        },
    })
}

pub fn compress_data(data: &Data, opts: &CompressOptions) -> Result<Vec<u8>, Error> {
    use data_bits::*;
    let carried = carried_name(&data.name, opts)?;
    if opts.cid && opts.hop_id {
        return Err(Error::InvalidOptions("Data prefix comes from either a CID or a HopID"));
    }
    let mut bits = 0;
    let mut items = Vec::new();
    if opts.hop_id {
        bits |= HOP_ID;
    }
    if !carried.is_empty() {
        let (item, fallback) = name_item(&carried);
        bits |= NAME;
        if fallback {
            bits |= FALLBACK;
        }
        items.push(item);
    }
    if let Some(ms) = data.meta_freshness_ms {
        bits |= FRESHNESS;
        items.push(Item::Var(nonneg_bytes(ms)));
    }
    if !data.content.is_empty() {
        bits |= CONTENT;
        items.push(Item::Var(data.content.clone()));
    }
    if !data.sig_info.is_empty() {
        bits |= SIG_INFO;
        items.push(Item::Var(data.sig_info.clone()));
    }
    if !data.sig_value.is_empty() {
        bits |= SIG_VALUE;
        items.push(Item::Var(data.sig_value.clone()));
    }
    if !data.meta_extra.is_empty() || !data.extra.is_empty() {
        bits |= EXT;
        items.push(Item::Var(raw_block(&data.meta_extra)));
        items.push(Item::Var(raw_block(&data.extra)));
    }
    Ok(write_body(bits, items))
}

/// Restores a Data message. With a HopID the caller passes the PIT entry's
/// name as `prefix`; with a CID chain, the chain's prefix.
pub fn decompress_data(body: &[u8], prefix: &Name) -> Result<Decompressed<Data>, Error> {
    use data_bits::*;
    let (&bits, _) = body.split_first().ok_or(Error::Truncated)?;
    if bits & FALLBACK != 0 && bits & NAME == 0 {
        return Err(Error::MalformedBody("fallback flag without a name"));
    }
    let vars = [FRESHNESS, CONTENT, SIG_INFO, SIG_VALUE]
        .iter()
        .filter(|&&b| bits & b != 0)
        .count()
        + if bits & EXT != 0 { 2 } else { 0 };
    let mut r = BodyReader {
        reader: Reader::new(&body[1..]),
        remaining_vars: vars,
    };
    let carried = if bits & NAME != 0 {
        r.name(bits & FALLBACK != 0)?
    } else {
        Name::new()
    };
    let mut data = Data::new(prefix.join(&carried), Vec::new());
    if bits & FRESHNESS != 0 {
        let last = r.remaining_vars == 1;
        let v = r.var(last)?;
        data.meta_freshness_ms = Some(parse_nonneg(v).map_err(|_| Error::MalformedBody("freshness"))?);
    }
    for (bit, field) in [
        (CONTENT, &mut data.content),
        (SIG_INFO, &mut data.sig_info),
        (SIG_VALUE, &mut data.sig_value),
    ] {
        if bits & bit != 0 {
            let last = r.remaining_vars == 1;
            let v = r.var(last)?;
            if v.is_empty() {
                return Err(Error::MalformedBody("present field with empty value"));
            }
            *field = v.to_vec();
        }
    }
    if bits & EXT != 0 {
        data.meta_extra = parse_raw_block(r.var(false)?)?;
        data.extra = parse_raw_block(r.var(true)?)?;
        if data.meta_extra.is_empty() && data.extra.is_empty() {
            return Err(Error::MalformedBody("empty extension block"));
        }
    }
    r.finish()?;
    Ok(Decompressed {
        packet: data,
        flags: BodyFlags {
            hop_id: bits & HOP_ID != 0,
            cid: false,
            name_carried: bits & NAME != 0,
            fallback: bits & FALLBACK != 0,
        },
    })
}
