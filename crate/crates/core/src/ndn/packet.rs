use super::name::Name;
use super::tlv::{self, is_critical, nonneg_bytes, parse_nonneg, put_tlv, put_varnum, RawTlv, Reader};
use super::Error;

/// InterestLifetime assumed when the field is absent.
pub const DEFAULT_INTEREST_LIFETIME_MS: u64 = 4000;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interest {
    pub name: Name,
    pub can_be_prefix: bool,
    pub must_be_fresh: bool,
    pub nonce: Option<[u8; 4]>,
    pub lifetime_ms: Option<u64>,
    /// Unrecognised non-critical elements, re-emitted after the known fields.
    pub extra: Vec<RawTlv>,
}

impl Interest {
    pub fn new(name: Name) -> Self {
        Interest {
            name,
            ..Default::default()
        }
    }

    pub fn with_nonce(mut self, nonce: [u8; 4]) -> Self {
        self.nonce = Some(nonce);
        self
    }

    pub fn with_lifetime(mut self, lifetime_ms: u64) -> Self {
        self.lifetime_ms = Some(lifetime_ms);
        self
    }

    fn encode_value(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.name.encoded_len() + 16);
        self.name.encode_into(&mut v);
        if self.can_be_prefix {
            put_tlv(&mut v, tlv::TLV_CAN_BE_PREFIX, &[]);
        }
        if self.must_be_fresh {
            put_tlv(&mut v, tlv::TLV_MUST_BE_FRESH, &[]);
        }
        if let Some(nonce) = self.nonce {
            put_tlv(&mut v, tlv::TLV_NONCE, &nonce);
        }
        if let Some(ms) = self.lifetime_ms {
            put_tlv(&mut v, tlv::TLV_INTEREST_LIFETIME, &nonneg_bytes(ms));
        }
        for raw in &self.extra {
            raw.encode_into(&mut v);
        }
        v
    }

    pub fn encode(&self) -> Vec<u8> {
        let value = self.encode_value();
        let mut out = Vec::with_capacity(value.len() + 4);
        put_varnum(&mut out, tlv::TLV_INTEREST);
        put_varnum(&mut out, value.len() as u64);
        out.extend_from_slice(&value);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Interest, Error> {
        let mut outer = Reader::new(bytes);
        let value = outer.expect_tlv(tlv::TLV_INTEREST)?;
        if !outer.is_empty() {
            return Err(Error::malformed("trailing bytes after Interest"));
        }
        let mut r = Reader::new(value);
        let name = Name::decode_value(r.expect_tlv(tlv::TLV_NAME)?)?;
        let mut interest = Interest::new(name);
        let mut seen = Vec::new();
        while !r.is_empty() {
            let (tlv_type, v) = r.read_tlv()?;
            if seen.contains(&tlv_type) {
                return Err(Error::malformed(format!("duplicate TLV {tlv_type:#x}")));
            }
            match tlv_type {
                tlv::TLV_CAN_BE_PREFIX | tlv::TLV_MUST_BE_FRESH if !v.is_empty() => {
                    return Err(Error::malformed("selector flag with non-empty value"));
                }
                tlv::TLV_CAN_BE_PREFIX => interest.can_be_prefix = true,
                tlv::TLV_MUST_BE_FRESH => interest.must_be_fresh = true,
                tlv::TLV_NONCE => {
                    let nonce: [u8; 4] = v.try_into().map_err(|_| Error::malformed("Nonce must be 4 bytes"))?;
                    interest.nonce = Some(nonce);
                }
                tlv::TLV_INTEREST_LIFETIME => interest.lifetime_ms = Some(parse_nonneg(v)?),
                t if is_critical(t) => return Err(Error::UnknownCritical(t)),
                t => {
                    interest.extra.push(RawTlv::new(t, v));
                    continue;
                }
            }
            seen.push(tlv_type);
        }
        Ok(interest)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Data {
    pub name: Name,
    pub meta_freshness_ms: Option<u64>,
    /// MetaInfo children other than FreshnessPeriod (ContentType, FinalBlockId, ...).
    pub meta_extra: Vec<RawTlv>,
    pub content: Vec<u8>,
    pub sig_info: Vec<u8>,
    pub sig_value: Vec<u8>,
    pub extra: Vec<RawTlv>,
}

const TLV_CONTENT_TYPE: u64 = 0x18;
const TLV_FINAL_BLOCK_ID: u64 = 0x1A;

impl Data {
    pub fn new(name: Name, content: impl Into<Vec<u8>>) -> Self {
        Data {
            name,
            content: content.into(),
            ..Default::default()
        }
    }

    pub fn with_freshness(mut self, ms: u64) -> Self {
        self.meta_freshness_ms = Some(ms);
        self
    }

    fn has_meta_info(&self) -> bool {
        self.meta_freshness_ms.is_some() || !self.meta_extra.is_empty()
    }

    fn encode_meta_info(&self) -> Vec<u8> {
        let mut m = Vec::new();
        if let Some(ms) = self.meta_freshness_ms {
            put_tlv(&mut m, tlv::TLV_FRESHNESS_PERIOD, &nonneg_bytes(ms));
        }
        for raw in &self.meta_extra {
            raw.encode_into(&mut m);
        }
        m
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.name.encoded_len() + self.content.len() + 16);
        self.name.encode_into(&mut v);
        if self.has_meta_info() {
            put_tlv(&mut v, tlv::TLV_META_INFO, &self.encode_meta_info());
        }
        put_tlv(&mut v, tlv::TLV_CONTENT, &self.content);
        put_tlv(&mut v, tlv::TLV_SIGNATURE_INFO, &self.sig_info);
        put_tlv(&mut v, tlv::TLV_SIGNATURE_VALUE, &self.sig_value);
        for raw in &self.extra {
            raw.encode_into(&mut v);
        }
        let mut out = Vec::with_capacity(v.len() + 4);
        put_varnum(&mut out, tlv::TLV_DATA);
        put_varnum(&mut out, v.len() as u64);
        out.extend_from_slice(&v);
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Data, Error> {
        let mut outer = Reader::new(bytes);
        let value = outer.expect_tlv(tlv::TLV_DATA)?;
        if !outer.is_empty() {
            return Err(Error::malformed("trailing bytes after Data"));
        }
        let mut r = Reader::new(value);
        let name = Name::decode_value(r.expect_tlv(tlv::TLV_NAME)?)?;
        let mut data = Data::new(name, Vec::new());
        let mut seen = Vec::new();
        while !r.is_empty() {
            let (tlv_type, v) = r.read_tlv()?;
            if seen.contains(&tlv_type) {
                return Err(Error::malformed(format!("duplicate TLV {tlv_type:#x}")));
            }
            match tlv_type {
                tlv::TLV_META_INFO => data.decode_meta_info(v)?,
                tlv::TLV_CONTENT => data.content = v.to_vec(),
                tlv::TLV_SIGNATURE_INFO => data.sig_info = v.to_vec(),
                tlv::TLV_SIGNATURE_VALUE => data.sig_value = v.to_vec(),
                t if is_critical(t) => return Err(Error::UnknownCritical(t)),
                t => {
                    data.extra.push(RawTlv::new(t, v));
                    continue;
                }
            }
            seen.push(tlv_type);
        }
        Ok(data)
    }

    fn decode_meta_info(&mut self, value: &[u8]) -> Result<(), Error> {
        let mut r = Reader::new(value);
        while !r.is_empty() {
            let (tlv_type, v) = r.read_tlv()?;
            match tlv_type {
                tlv::TLV_FRESHNESS_PERIOD if self.meta_freshness_ms.is_none() => {
                    self.meta_freshness_ms = Some(parse_nonneg(v)?)
                }
                tlv::TLV_FRESHNESS_PERIOD => return Err(Error::malformed("duplicate FreshnessPeriod")),
                TLV_CONTENT_TYPE | TLV_FINAL_BLOCK_ID => self.meta_extra.push(RawTlv::new(tlv_type, v)),
                t if is_critical(t) => return Err(Error::UnknownCritical(t)),
                t => self.meta_extra.push(RawTlv::new(t, v)),
            }
        }
        Ok(())
    }
}

/// A decoded NDN network-layer packet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Packet {
    Interest(Interest),
    Data(Data),
}

impl Packet {
    pub fn name(&self) -> &Name {
        match self {
            Packet::Interest(i) => &i.name,
            Packet::Data(d) => &d.name,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        match self {
            Packet::Interest(i) => i.encode(),
            Packet::Data(d) => d.encode(),
        }
    }

    /// Dispatches on the outer TLV type.
    pub fn decode(bytes: &[u8]) -> Result<Packet, Error> {
        match Reader::new(bytes).peek_type()? {
            tlv::TLV_INTEREST => Interest::decode(bytes).map(Packet::Interest),
            tlv::TLV_DATA => Data::decode(bytes).map(Packet::Data),
            t => Err(Error::malformed(format!("not an Interest or Data: {t:#x}"))),
        }
    }
}

pub fn encode_interest(interest: &Interest) -> Vec<u8> {
    interest.encode()
}

pub fn decode_interest(bytes: &[u8]) -> Result<Interest, Error> {
    Interest::decode(bytes)
}

pub fn encode_data(data: &Data) -> Vec<u8> {
    data.encode()
}

pub fn decode_data(bytes: &[u8]) -> Result<Data, Error> {
    Data::decode(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> Name {
        s.parse().unwrap()
    }

    #[test]
    fn minimal_interest_is_seven_bytes() {
        let bytes = Interest::new(name("/a")).encode();
        assert_eq!(bytes, [0x05, 0x05, 0x07, 0x03, 0x08, 0x01, b'a']);
    }

    #[test]
    fn empty_name_interest_is_four_bytes() {
        let bytes = Interest::new(Name::new()).encode();
        assert_eq!(bytes, [0x05, 0x02, 0x07, 0x00]);
        assert_eq!(Interest::decode(&bytes).unwrap().name.component_count(), 0);
    }

    #[test]
    fn interest_field_order() {
        let i = Interest::new(name("/a")).with_nonce([1, 2, 3, 4]).with_lifetime(4000);
        let bytes = i.encode();
        assert_eq!(
            bytes,
            [0x05, 0x0F, 0x07, 0x03, 0x08, 0x01, b'a', 0x0A, 0x04, 1, 2, 3, 4, 0x0C, 0x02, 0x0F, 0xA0]
        );
        assert_eq!(Interest::decode(&bytes).unwrap(), i);
    }

    #[test]
    fn truncated_and_empty_inputs() {
        assert!(matches!(Interest::decode(&[]), Err(Error::MalformedTlv(_))));
        // declared length 9 exceeds the 3 remaining bytes
        assert!(Interest::decode(&[0x05, 0x09, 0x07, 0x01, 0x08]).is_err());
        // trailing garbage
        assert!(Interest::decode(&[0x05, 0x02, 0x07, 0x00, 0x00]).is_err());
    }

    #[test]
    fn unknown_critical_rejected_noncritical_kept() {
        let mut bytes = vec![0x05, 0x05, 0x07, 0x00, 0x1F, 0x01, 0xAA];
        assert_eq!(Interest::decode(&bytes), Err(Error::UnknownCritical(0x1F)));
        bytes[4] = 0x40;
        let i = Interest::decode(&bytes).unwrap();
        assert_eq!(i.extra, vec![RawTlv::new(0x40, vec![0xAA])]);
        assert_eq!(i.encode(), bytes);
    }

    #[test]
    fn data_with_empty_content_and_signatures() {
        let d = Data::new(name("/a/b"), Vec::new());
        let bytes = d.encode();
        // Name(8) + Content(2) + SigInfo(2) + SigValue(2) + outer(2)
        assert_eq!(bytes.len(), 16);
        let back = Data::decode(&bytes).unwrap();
        assert!(back.content.is_empty());
        assert_eq!(back, d);
    }

    #[test]
    fn data_meta_info_round_trip() {
        let mut d = Data::new(name("/x"), vec![1, 2, 3, 4]).with_freshness(1000);
        d.meta_extra.push(RawTlv::new(0x18, vec![0]));
        d.sig_info = vec![0x1B, 0x01, 0x00];
        d.sig_value = vec![9; 8];
        assert_eq!(Data::decode(&d.encode()).unwrap(), d);
    }

    #[test]
    fn packet_dispatch() {
        let bytes = Interest::new(name("/a")).encode();
        assert!(matches!(Packet::decode(&bytes), Ok(Packet::Interest(_))));
        assert!(Packet::decode(&[0x09, 0x00]).is_err());
    }
}
