//! NDN TLV primitives: variable-size numbers, non-negative integers and a
//! bounds-checked element reader.

use super::Error;

pub const TLV_INTEREST: u64 = 0x05;
pub const TLV_DATA: u64 = 0x06;
pub const TLV_NAME: u64 = 0x07;
pub const TLV_GENERIC_NAME_COMPONENT: u64 = 0x08;
pub const TLV_NONCE: u64 = 0x0A;
pub const TLV_INTEREST_LIFETIME: u64 = 0x0C;
pub const TLV_MUST_BE_FRESH: u64 = 0x12;
pub const TLV_META_INFO: u64 = 0x14;
pub const TLV_CONTENT: u64 = 0x15;
pub const TLV_SIGNATURE_INFO: u64 = 0x16;
pub const TLV_SIGNATURE_VALUE: u64 = 0x17;
pub const TLV_FRESHNESS_PERIOD: u64 = 0x19;
pub const TLV_CAN_BE_PREFIX: u64 = 0x21;

/// Types below 32 and odd types are critical: a decoder that does not
/// recognise them must reject the enclosing packet.
pub fn is_critical(tlv_type: u64) -> bool {
    tlv_type < 32 || tlv_type % 2 == 1
}

/// Size in bytes of the variable-size number encoding of `value`.
pub fn varnum_len(value: u64) -> usize {
    match value {
        0..=252 => 1,
        253..=0xFFFF => 3,
        0x1_0000..=0xFFFF_FFFF => 5,
        _ => 9,
    }
}

pub fn put_varnum(out: &mut Vec<u8>, value: u64) {
    match value {
        0..=252 => out.push(value as u8),
        253..=0xFFFF => {
            out.push(253);
            out.extend_from_slice(&(value as u16).to_be_bytes());
        }
        0x1_0000..=0xFFFF_FFFF => {
            out.push(254);
            out.extend_from_slice(&(value as u32).to_be_bytes());
        }
        _ => {
            out.push(255);
            out.extend_from_slice(&value.to_be_bytes());
        }
    }
}

/// Size of a complete TLV element whose value is `value_len` bytes long.
pub fn tlv_size(tlv_type: u64, value_len: usize) -> usize {
    varnum_len(tlv_type) + varnum_len(value_len as u64) + value_len
}

pub fn put_tlv(out: &mut Vec<u8>, tlv_type: u64, value: &[u8]) {
    put_varnum(out, tlv_type);
    put_varnum(out, value.len() as u64);
    out.extend_from_slice(value);
}

/// Shortest big-endian encoding of a NonNegativeInteger (1, 2, 4 or 8 bytes).
pub fn nonneg_bytes(value: u64) -> Vec<u8> {
    if value <= 0xFF {
        vec![value as u8]
    } else if value <= 0xFFFF {
        (value as u16).to_be_bytes().to_vec()
    } else if value <= 0xFFFF_FFFF {
        (value as u32).to_be_bytes().to_vec()
    } else {
        value.to_be_bytes().to_vec()
    }
}

pub fn parse_nonneg(bytes: &[u8]) -> Result<u64, Error> {
    match bytes.len() {
        1 => Ok(bytes[0] as u64),
        2 => Ok(u16::from_be_bytes([bytes[0], bytes[1]]) as u64),
        4 => Ok(u32::from_be_bytes(bytes.try_into().unwrap()) as u64),
        8 => Ok(u64::from_be_bytes(bytes.try_into().unwrap())),
        n => Err(Error::malformed(format!("non-negative integer of {n} bytes"))),
    }
}

/// Header of one TLV element as read off the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TlvHeader {
    pub tlv_type: u64,
    pub tlv_length: u64,
}

impl TlvHeader {
    /// Encoded size of the type and length fields together.
    pub fn encoded_len(&self) -> usize {
        varnum_len(self.tlv_type) + varnum_len(self.tlv_length)
    }
}

/// A TLV element carried opaquely so that round trips stay lossless.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawTlv {
    pub tlv_type: u64,
    pub value: Vec<u8>,
}

impl RawTlv {
    pub fn new(tlv_type: u64, value: impl Into<Vec<u8>>) -> Self {
        RawTlv {
            tlv_type,
            value: value.into(),
        }
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        put_tlv(out, self.tlv_type, &self.value);
    }

    pub fn encoded_len(&self) -> usize {
        tlv_size(self.tlv_type, self.value.len())
    }
}

/// Cursor over a byte slice that yields TLV elements.
#[derive(Debug, Clone)]
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.pos >= self.buf.len()
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> &'a [u8] {
        &self.buf[self.pos..]
    }

    pub fn read_u8(&mut self) -> Result<u8, Error> {
        let b = *self
            .buf
            .get(self.pos)
            .ok_or_else(|| Error::malformed("unexpected end of input"))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn read_bytes(&mut self, n: usize) -> Result<&'a [u8], Error> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&end| end <= self.buf.len())
            .ok_or_else(|| Error::malformed("declared length exceeds buffer"))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub fn read_varnum(&mut self) -> Result<u64, Error> {
        let first = self.read_u8()?;
        let value = match first {
            0..=252 => first as u64,
            253 => u16::from_be_bytes(self.read_bytes(2)?.try_into().unwrap()) as u64,
            254 => u32::from_be_bytes(self.read_bytes(4)?.try_into().unwrap()) as u64,
            255 => u64::from_be_bytes(self.read_bytes(8)?.try_into().unwrap()),
        };
        Ok(value)
    }

    pub fn peek_type(&self) -> Result<u64, Error> {
        self.clone().read_varnum()
    }

    pub fn read_header(&mut self) -> Result<TlvHeader, Error> {
        let tlv_type = self.read_varnum()?;
        let tlv_length = self.read_varnum()?;
        Ok(TlvHeader { tlv_type, tlv_length })
    }

    /// Reads one complete element and returns its type and value.
    pub fn read_tlv(&mut self) -> Result<(u64, &'a [u8]), Error> {
        let header = self.read_header()?;
        let len = usize::try_from(header.tlv_length).map_err(|_| Error::malformed("length does not fit in memory"))?;
        Ok((header.tlv_type, self.read_bytes(len)?))
    }

    /// Reads one element and requires it to be of `expected` type.
    pub fn expect_tlv(&mut self, expected: u64) -> Result<&'a [u8], Error> {
        let (tlv_type, value) = self.read_tlv()?;
        if tlv_type != expected {
            return Err(Error::malformed(format!(
                "expected TLV type {expected:#x}, found {tlv_type:#x}"
            )));
        }
        Ok(value)
    }
}
