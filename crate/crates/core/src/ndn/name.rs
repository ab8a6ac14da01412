use std::fmt;
use std::str::FromStr;

use percent_encoding::{percent_decode_str, utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use super::tlv::{self, put_tlv, put_varnum, varnum_len, Reader};
use super::Error;

// Unreserved URI characters stay literal; everything else is escaped.
const COMPONENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

/// An NDN name: an ordered sequence of generic byte-string components.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name {
    components: Vec<Vec<u8>>,
}

impl Name {
    pub fn new() -> Self {
        Name::default()
    }

    pub fn from_components<I, C>(components: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<Vec<u8>>,
    {
        Name {
            components: components.into_iter().map(Into::into).collect(),
        }
    }

    pub fn components(&self) -> &[Vec<u8>] {
        &self.components
    }

    /// Number of components, |c|.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn push(&mut self, component: impl Into<Vec<u8>>) {
        self.components.push(component.into());
    }

    /// Returns a copy with `component` appended.
    pub fn child(&self, component: impl Into<Vec<u8>>) -> Name {
        let mut out = self.clone();
        out.push(component);
        out
    }

    /// Concatenation `self ‖ suffix`.
    pub fn join(&self, suffix: &Name) -> Name {
        let mut components = self.components.clone();
        components.extend(suffix.components.iter().cloned());
        Name { components }
    }

    pub fn is_prefix_of(&self, other: &Name) -> bool {
        other.components.starts_with(&self.components)
    }

    /// Components of `self` after `prefix`, or `None` if `prefix` does not match.
    pub fn strip_prefix(&self, prefix: &Name) -> Option<Name> {
        self.components
            .strip_prefix(prefix.components.as_slice())
            .map(|rest| Name {
                components: rest.to_vec(),
            })
    }

    /// The first `n` components.
    pub fn prefix(&self, n: usize) -> Name {
        Name {
            components: self.components[..n.min(self.components.len())].to_vec(),
        }
    }

    /// Components from index `n` on.
    pub fn suffix_from(&self, n: usize) -> Name {
        Name {
            components: self.components[n.min(self.components.len())..].to_vec(),
        }
    }

    /// Sum of component byte lengths.
    pub fn payload_len(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    fn value_len(&self) -> usize {
        self.components
            .iter()
            .map(|c| tlv::tlv_size(tlv::TLV_GENERIC_NAME_COMPONENT, c.len()))
            .sum()
    }

    /// Size of the complete Name TLV.
    pub fn encoded_len(&self) -> usize {
        tlv::tlv_size(tlv::TLV_NAME, self.value_len())
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) {
        put_varnum(out, tlv::TLV_NAME);
        put_varnum(out, self.value_len() as u64);
        for c in &self.components {
            put_tlv(out, tlv::TLV_GENERIC_NAME_COMPONENT, c);
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len());
        self.encode_into(&mut out);
        out
    }

    /// Decodes the value part of a Name TLV.
    pub fn decode_value(value: &[u8]) -> Result<Name, Error> {
        let mut reader = Reader::new(value);
        let mut components = Vec::new();
        while !reader.is_empty() {
            let (tlv_type, bytes) = reader.read_tlv()?;
            if tlv_type != tlv::TLV_GENERIC_NAME_COMPONENT {
                return Err(Error::malformed(format!(
                    "unsupported name component type {tlv_type:#x}"
                )));
            }
            components.push(bytes.to_vec());
        }
        Ok(Name { components })
    }

    /// Decodes a complete Name TLV, rejecting trailing bytes.
    pub fn decode(bytes: &[u8]) -> Result<Name, Error> {
        let mut reader = Reader::new(bytes);
        let name = Name::decode_value(reader.expect_tlv(tlv::TLV_NAME)?)?;
        if !reader.is_empty() {
            return Err(Error::malformed("trailing bytes after Name"));
        }
        Ok(name)
    }
}

/// TLV overhead of an uncompressed name: `2 + 2·|c|`.
///
/// The closed form only holds while every header fits in one byte, so names
/// with a component or total value of 253 bytes or more are rejected.
pub fn name_tlv_overhead_uncompressed(name: &Name) -> Result<usize, Error> {
    if name.components.iter().any(|c| varnum_len(c.len() as u64) > 1) || varnum_len(name.value_len() as u64) > 1 {
        return Err(Error::OverheadAssumptionViolated);
    }
    Ok(2 + 2 * name.component_count())
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("/");
        }
        for c in &self.components {
            write!(f, "/")?;
            for chunk in percent_encoding::percent_encode(c, COMPONENT) {
                f.write_str(chunk)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Name {
    type Err = Error;

    /// Parses `/a/b/c`. A leading `ndn:` scheme is accepted, empty segments
    /// are skipped and `%XX` escapes are decoded.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix("ndn:").unwrap_or(s);
        if !s.starts_with('/') {
            return Err(Error::InvalidUri(s.to_string()));
        }
        let components = s
            .split('/')
            .filter(|seg| !seg.is_empty())
            .map(|seg| percent_decode_str(seg).collect::<Vec<u8>>())
            .collect();
        Ok(Name { components })
    }
}

/// Percent-encodes a string the same way [`Name`]'s `Display` does.
pub fn escape_component(s: &str) -> String {
    utf8_percent_encode(s, COMPONENT).to_string()
}
