//! Nibble-packed name encoding.
//!
//! Two consecutive component lengths share one byte (earlier component in
//! the high nibble), each length byte is followed by the bytes of its
//! components, and a zero nibble terminates the name. For an odd component
//! count the terminator is the low nibble of the last length byte; for an
//! even count a whole `0x00` byte is appended.

use super::Error;
use crate::ndn::Name;

pub const MAX_COMPONENT_LEN: usize = 15;
const STOP: u8 = 0x0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedName {
    bytes: Vec<u8>,
}

impl CompressedName {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }
}

/// Overhead of the compressed encoding: `⌈(|c|+1)/2⌉` length bytes.
pub fn compressed_name_overhead(component_count: usize) -> usize {
    (component_count + 1).div_ceil(2)
}

/// Whether every component fits the 1..=15 byte nibble range.
pub fn is_compressible(name: &Name) -> bool {
    name.components()
        .iter()
        .all(|c| (1..=MAX_COMPONENT_LEN).contains(&c.len()))
}

fn check(name: &Name) -> Result<(), Error> {
    for c in name.components() {
        if c.is_empty() {
            return Err(Error::EmptyComponent);
        }
        if c.len() > MAX_COMPONENT_LEN {
            return Err(Error::ComponentTooLong(c.len()));
        }
    }
    Ok(())
}

pub fn compress_name(name: &Name) -> Result<CompressedName, Error> {
    check(name)?;
    let mut bytes = Vec::with_capacity(name.payload_len() + compressed_name_overhead(name.component_count()));
    compress_name_into(name, &mut bytes);
    Ok(CompressedName { bytes })
}

/// Appends the compressed encoding; the name must already be compressible.
pub(crate) fn compress_name_into(name: &Name, out: &mut Vec<u8>) {
    let mut pairs = name.components().chunks(2);
    loop {
        match pairs.next() {
            Some([a, b]) => {
                out.push((a.len() as u8) << 4 | b.len() as u8);
                out.extend_from_slice(a);
                out.extend_from_slice(b);
            }
            Some([a]) => {
                out.push((a.len() as u8) << 4 | STOP);
                out.extend_from_slice(a);
                return;
            }
            _ => {
                out.push(STOP << 4 | STOP);
                return;
            }
        }
    }
}

/// Decodes a compressed name from the front of `bytes`, returning the name
/// and the number of bytes consumed.
pub fn decompress_name_prefix(bytes: &[u8]) -> Result<(Name, usize), Error> {
    let mut pos = 0;
    let mut name = Name::new();
    loop {
        let len_byte = *bytes
            .get(pos)
            .ok_or(Error::MalformedCompressedName("missing stop marker"))?;
        pos += 1;
        let (high, low) = (len_byte >> 4, len_byte & 0x0F);
        if high == STOP {
            if low != STOP {
                return Err(Error::MalformedCompressedName("data after stop nibble"));
            }
            return Ok((name, pos));
        }
        pos = take_component(bytes, pos, high as usize, &mut name)?;
        if low == STOP {
            return Ok((name, pos));
        }
        pos = take_component(bytes, pos, low as usize, &mut name)?;
    }
}

fn take_component(bytes: &[u8], pos: usize, len: usize, name: &mut Name) -> Result<usize, Error> {
    let component = bytes
        .get(pos..pos + len)
        .ok_or(Error::MalformedCompressedName("truncated component"))?;
    name.push(component);
    Ok(pos + len)
}

/// Decodes a compressed name that must span all of `bytes`.
pub fn decompress_name(compressed: &[u8]) -> Result<Name, Error> {
    let (name, used) = decompress_name_prefix(compressed)?;
    if used != compressed.len() {
        return Err(Error::MalformedCompressedName("bytes after stop marker"));
    }
    Ok(name)
}
