//! LoWPAN-wide context identifiers for name prefixes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::Error;
use crate::frame::MAX_CONTEXT_ID;
use crate::ndn::Name;

/// Static bidirectional map between context identifiers and name prefixes.
///
/// Config format, one entry per line, `#` starts a comment:
///
/// ```text
/// cid 0 /org
/// cid 1 /org/example/building/1/floor/4/room/481
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CidTable {
    by_id: BTreeMap<u8, Name>,
    by_prefix: HashMap<Name, u8>,
}

impl CidTable {
    pub fn new() -> Self {
        CidTable::default()
    }

    pub fn insert(&mut self, cid: u8, prefix: Name) -> Result<(), Error> {
        if cid > MAX_CONTEXT_ID {
            return Err(Error::CidOutOfRange(cid));
        }
        if prefix.is_empty() {
            return Err(Error::EmptyCidPrefix(cid));
        }
        if self.by_id.contains_key(&cid) || self.by_prefix.contains_key(&prefix) {
            return Err(Error::DuplicateCid(cid));
        }
        self.by_prefix.insert(prefix.clone(), cid);
        self.by_id.insert(cid, prefix);
        Ok(())
    }

    pub fn with(mut self, cid: u8, prefix: &str) -> Result<Self, Error> {
        let prefix = prefix.parse().map_err(Error::Name)?;
        self.insert(cid, prefix)?;
        Ok(self)
    }

    pub fn get(&self, cid: u8) -> Option<&Name> {
        self.by_id.get(&cid)
    }

    pub fn lookup(&self, prefix: &Name) -> Option<u8> {
        self.by_prefix.get(prefix).copied()
    }

    pub fn len(&self) -> usize {
        self.by_id.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &Name)> {
        self.by_id.iter().map(|(&id, name)| (id, name))
    }

    /// Longest table prefix of `name`.
    fn longest_match(&self, name: &Name) -> Option<(u8, usize)> {
        (1..=name.component_count())
            .rev()
            .find_map(|n| self.lookup(&name.prefix(n)).map(|cid| (cid, n)))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Config(format!("{}: {e}", path.as_ref().display())))?;
        text.parse()
    }
}

impl FromStr for CidTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut table = CidTable::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Config(format!("line {}: {what}", lineno + 1));
            let mut fields = line.split_whitespace();
            if fields.next() != Some("cid") {
                return Err(bad("expected `cid <id> <uri>`"));
            }
            let id: u8 = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| bad("context id must be 0..=127"))?;
            let uri = fields.next().ok_or_else(|| bad("missing prefix URI"))?;
            if fields.next().is_some() {
                return Err(bad("trailing fields"));
            }
            let prefix: Name = uri.parse().map_err(|_| bad("invalid prefix URI"))?;
            table.insert(id, prefix).map_err(|e| bad(&e.to_string()))?;
        }
        Ok(table)
    }
}

impl fmt::Display for CidTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, prefix) in &self.by_id {
            writeln!(f, "cid {id} {prefix}")?;
        }
        Ok(())
    }
}

/// Replaces leading parts of `name` with context identifiers.
///
/// The longest matching table prefix is taken first; if the remainder again
/// starts with a table prefix the chain continues. Returns the chain and the
/// components that still have to be carried.
pub fn cid_compress(name: &Name, table: &CidTable) -> (Vec<u8>, Name) {
    let mut cids = Vec::new();
    let mut residual = name.clone();
    while let Some((cid, n)) = table.longest_match(&residual) {
        cids.push(cid);
        residual = residual.suffix_from(n);
    }
    (cids, residual)
}

/// Expands a CID chain into the prefix it stands for.
pub fn cid_prefix(cids: &[u8], table: &CidTable) -> Result<Name, Error> {
    let mut prefix = Name::new();
    for &cid in cids {
        let part = table.get(cid).ok_or(Error::UnknownCid(cid))?;
        prefix = prefix.join(part);
    }
    Ok(prefix)
}

pub fn cid_decompress(cids: &[u8], residual: &Name, table: &CidTable) -> Result<Name, Error> {
    Ok(cid_prefix(cids, table)?.join(residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LONG_PREFIX: &str = "/org/example/building/1/floor/4/room/481";

    fn name(s: &str) -> Name {
        s.parse().unwrap()
    }

    #[test]
    fn short_name_with_org_context() {
        let table = CidTable::new().with(0, "/org").unwrap();
        let n = name("/org/example/temp/7");
        let (cids, residual) = cid_compress(&n, &table);
        assert_eq!(cids, [0]);
        assert_eq!(residual, name("/example/temp/7"));
        assert_eq!(cid_decompress(&cids, &residual, &table).unwrap(), n);
    }

    #[test]
    fn long_name_longest_prefix_wins() {
        let table = CidTable::new().with(0, "/org").unwrap().with(1, LONG_PREFIX).unwrap();
        let n = name("/org/example/building/1/floor/4/room/481/temp/id_x");
        let (cids, residual) = cid_compress(&n, &table);
        assert_eq!(cids, [1]);
        assert_eq!(residual, name("/temp/id_x"));
        assert_eq!(residual.component_count(), 2);
        assert_eq!(cid_decompress(&cids, &residual, &table).unwrap(), n);
    }

    #[test]
    fn no_match() {
        let table = CidTable::new().with(0, "/org").unwrap();
        let n = name("/net/x");
        assert_eq!(cid_compress(&n, &table), (vec![], n));
    }

    #[test]
    fn unknown_cid() {
        let table = CidTable::new();
        assert_eq!(
            cid_decompress(&[0x7F], &Name::new(), &table),
            Err(Error::UnknownCid(0x7F))
        );
    }

    #[test]
    fn two_cid_chain_concatenates_in_order() {
        let table = CidTable::new()
            .with(0x05, "/org/example")
            .unwrap()
            .with(0x11, "/building/1")
            .unwrap();
        let n = name("/org/example/building/1/temp");
        let (cids, residual) = cid_compress(&n, &table);
        assert_eq!(cids, [0x05, 0x11]);
        assert_eq!(residual, name("/temp"));
        assert_eq!(
            cid_prefix(&[0x05, 0x11], &table).unwrap(),
            name("/org/example/building/1")
        );
        assert_eq!(cid_decompress(&cids, &residual, &table).unwrap(), n);
    }

    #[test]
    fn config_file_parsing() {
        let text = "# shared contexts\ncid 0 /org\n\ncid 1 /org/example # trailing\n";
        let table: CidTable = text.parse().unwrap();
        assert_eq!(table.len(), 2);
        assert_eq!(table.get(1), Some(&name("/org/example")));
        assert_eq!(table.to_string().parse::<CidTable>().unwrap(), table);

        for bad in [
            "cid 128 /a",
            "ctx 0 /a",
            "cid 0",
            "cid 0 /a\ncid 0 /b",
            "cid 0 /a\ncid 1 /a",
            "cid 0 /",
            "cid 0 a",
        ] {
            assert!(bad.parse::<CidTable>().is_err(), "{bad:?}");
        }
    }
}
