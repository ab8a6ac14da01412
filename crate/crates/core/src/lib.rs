//! Header compression and fragmentation of NDN messages over IEEE 802.15.4.
//!
//! ```
//! use icnlowpan::compress::{decode_datagram, encode_interest};
//! use icnlowpan::{CidTable, Decoded, Interest};
//!
//! let table = CidTable::new().with(0, "/org/example").unwrap();
//! let interest = Interest::new("/org/example/temp/1".parse().unwrap()).with_nonce([1, 2, 3, 4]);
//! let wire = encode_interest(&interest, &table, None).unwrap().datagram;
//! assert!(wire.len() < interest.encode().len());
//! match decode_datagram(&wire, &table).unwrap() {
//!     Decoded::Interest { interest: got, .. } => assert_eq!(got, interest),
//!     _ => unreachable!(),
//! }
//! ```

pub mod cli;
pub mod compress;
pub mod frame;
pub mod ndn;
pub mod ratio;
pub mod scenario;
pub mod sim;

pub use compress::{CidTable, CompressionPath, Decoded, HopId};
pub use ndn::{Data, Interest, Name, Packet};
