//! Fixed-width binary packets and finite sets of them.
//!
//! A packet is a binary string of a fixed width. Bits are indexed base-1,
//! left to right, with the leftmost bit the most significant when the string
//! is read as a binary number.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};

/// Hard ceiling on packet width; packets are stored as `u32` values.
pub const MAX_WIDTH: u32 = 30;

/// Default cap on widths for operations that enumerate the full space `2^n`.
pub const DEFAULT_WIDTH_CAP: u32 = 24;

/// An n-bit binary string. Width 0 is the empty string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Packet {
    width: u32,
    value: u32,
}

impl Packet {
    pub fn new(width: u32, value: u32) -> Result<Self, Error> {
        if width > MAX_WIDTH {
            return Err(Error::WidthCap {
                width,
                cap: MAX_WIDTH,
            });
        }
        if value >> width != 0 && width < 32 {
            return Err(Error::Invalid(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Packet { width, value })
    }

    /// The all-zero packet of the given width.
    pub fn zero(width: u32) -> Self {
        assert!(width <= MAX_WIDTH, "width {width} exceeds {MAX_WIDTH}");
        Packet { width, value: 0 }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        assert!(bits.len() as u32 <= MAX_WIDTH);
        let mut value = 0u32;
        for &b in bits {
            value = value << 1 | u32::from(b);
        }
        Packet {
            width: bits.len() as u32,
            value,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Numeric value of the string read MSB-first.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// The i-th bit, base-1 from the left.
    pub fn bit(&self, index: u32) -> bool {
        assert!(
            index >= 1 && index <= self.width,
            "bit index {index} out of range 1..={}",
            self.width
        );
        (self.value >> (self.width - index)) & 1 == 1
    }

    /// Copy of this packet with the i-th bit replaced.
    pub fn with_bit(&self, index: u32, bit: bool) -> Packet {
        assert!(index >= 1 && index <= self.width);
        let mask = 1u32 << (self.width - index);
        let value = if bit {
            self.value | mask
        } else {
            self.value & !mask
        };
        Packet {
            width: self.width,
            value,
        }
    }

    pub fn bit_vec(&self) -> Vec<bool> {
        (1..=self.width).map(|i| self.bit(i)).collect()
    }
}

impl fmt::Display for Packet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.width {
            write!(f, "{}", if self.bit(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for Packet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseError::new("empty packet string", None));
        }
        if s.len() as u32 > MAX_WIDTH {
            return Err(ParseError::new(
                format!("packet wider than {MAX_WIDTH} bits"),
                None,
            ));
        }
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.char_indices() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(ParseError::new(
                        format!("invalid packet character {c:?}"),
                        Some(crate::error::SourceSpan::new(i, i + c.len_utf8())),
                    )
                    .expecting(["0", "1"]))
                }
            }
        }
        Ok(Packet::from_bits(&bits))
    }
}

/// A finite set of packets, all of one width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketSet {
    width: u32,
    members: BTreeSet<u32>,
}

impl PacketSet {
    pub fn empty(width: u32) -> Self {
        assert!(width <= MAX_WIDTH);
        PacketSet {
            width,
            members: BTreeSet::new(),
        }
    }

    /// The full space `2^width`. Caller is responsible for keeping the width
    /// within an enumeration cap; the hard limit is [`MAX_WIDTH`].
    pub fn universe(width: u32) -> Self {
        assert!(width <= MAX_WIDTH);
        let members = (0..(1u64 << width)).map(|v| v as u32).collect();
        PacketSet { width, members }
    }

    pub fn singleton(p: Packet) -> Self {
        let mut members = BTreeSet::new();
        members.insert(p.value());
        PacketSet {
            width: p.width(),
            members,
        }
    }

    pub fn from_packets(
        width: u32,
        packets: impl IntoIterator<Item = Packet>,
    ) -> Result<Self, Error> {
        let mut set = PacketSet::empty(width);
        for p in packets {
            if p.width() != width {
                return Err(Error::WidthMismatch {
                    left: width,
                    right: p.width(),
                });
            }
            set.members.insert(p.value());
        }
        Ok(set)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Packet) -> bool {
        p.width() == self.width && self.members.contains(&p.value())
    }

    pub fn insert(&mut self, p: Packet) {
        assert_eq!(p.width(), self.width, "packet width mismatch");
        self.members.insert(p.value());
    }

    /// Packets in ascending numeric order.
    pub fn iter(&self) -> impl Iterator<Item = Packet> + '_ {
        let width = self.width;
        self.members
            .iter()
            .map(move |&value| Packet { width, value })
    }

    pub fn min(&self) -> Option<Packet> {
        self.members.iter().next().map(|&value| Packet {
            width: self.width,
            value,
        })
    }

    pub fn union(&self, other: &PacketSet) -> PacketSet {
        assert_eq!(self.width, other.width, "set width mismatch");
        PacketSet {
            width: self.width,
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersect(&self, other: &PacketSet) -> PacketSet {
        assert_eq!(self.width, other.width, "set width mismatch");
        PacketSet {
            width: self.width,
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn difference(&self, other: &PacketSet) -> PacketSet {
        assert_eq!(self.width, other.width, "set width mismatch");
        PacketSet {
            width: self.width,
            members: self.members.difference(&other.members).copied().collect(),
        }
    }

    pub fn symmetric_difference(&self, other: &PacketSet) -> PacketSet {
        assert_eq!(self.width, other.width, "set width mismatch");
        PacketSet {
            width: self.width,
            members: self
                .members
                .symmetric_difference(&other.members)
                .copied()
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &PacketSet) -> bool {
        assert_eq!(self.width, other.width, "set width mismatch");
        self.members.is_subset(&other.members)
    }

    /// `2^width` minus this set.
    pub fn complement(&self) -> PacketSet {
        let mut members = BTreeSet::new();
        for v in 0..(1u64 << self.width) {
            let v = v as u32;
            if !self.members.contains(&v) {
                members.insert(v);
            }
        }
        PacketSet {
            width: self.width,
            members,
        }
    }

    /// Pairwise string concatenation: `{ xy | x in self, y in other }`.
    pub fn concat(&self, other: &PacketSet) -> PacketSet {
        let width = self.width + other.width;
        assert!(
            width <= MAX_WIDTH,
            "concatenated width {width} exceeds {MAX_WIDTH}"
        );
        let mut members = BTreeSet::new();
        for &a in &self.members {
            for &b in &other.members {
                members.insert(a << other.width | b);
            }
        }
        PacketSet { width, members }
    }

    pub fn filter(&self, keep: impl Fn(&Packet) -> bool) -> PacketSet {
        PacketSet {
            width: self.width,
            members: self.iter().filter(keep).map(|p| p.value()).collect(),
        }
    }

    /// Image of the set under a width-preserving packet function.
    pub fn map(&self, f: impl Fn(Packet) -> Packet) -> PacketSet {
        let mut members = BTreeSet::new();
        for p in self.iter() {
            let q = f(p);
            assert_eq!(q.width(), self.width, "map must preserve width");
            members.insert(q.value());
        }
        PacketSet {
            width: self.width,
            members,
        }
    }
}

impl fmt::Display for PacketSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_indexing_is_base1_msb_first() {
        let p: Packet = "110".parse().unwrap();
        assert_eq!(p.width(), 3);
        assert_eq!(p.value(), 0b110);
        assert!(p.bit(1));
        assert!(p.bit(2));
        assert!(!p.bit(3));
    }

    #[test]
    fn with_bit_replaces_one_position() {
        let p: Packet = "00".parse().unwrap();
        assert_eq!(p.with_bit(2, true).to_string(), "01");
        assert_eq!(p.with_bit(1, true).to_string(), "10");
        assert_eq!(p.with_bit(1, false), p);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "0101", "111000"] {
            let p: Packet = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_packet_strings() {
        assert!("".parse::<Packet>().is_err());
        assert!("01a".parse::<Packet>().is_err());
    }

    #[test]
    fn set_operations_are_exact() {
        let a = PacketSet::from_packets(2, ["00", "01"].map(|s| s.parse().unwrap())).unwrap();
        let b = PacketSet::from_packets(2, ["01", "10"].map(|s| s.parse().unwrap())).unwrap();
        assert_eq!(a.union(&b).len(), 3);
        assert_eq!(a.intersect(&b).len(), 1);
        assert_eq!(a.difference(&b).len(), 1);
        assert_eq!(a.symmetric_difference(&b).len(), 2);
        assert_eq!(a.complement().union(&a), PacketSet::universe(2));
    }

    #[test]
    fn concat_is_pairwise() {
        let a = PacketSet::from_packets(1, ["0", "1"].map(|s| s.parse().unwrap())).unwrap();
        let b = PacketSet::from_packets(1, ["1"].map(|s| s.parse().unwrap())).unwrap();
        let ab = a.concat(&b);
        assert_eq!(ab.width(), 2);
        let expect = PacketSet::from_packets(2, ["01", "11"].map(|s| s.parse().unwrap())).unwrap();
        assert_eq!(ab, expect);
    }

    #[test]
    fn width_zero_universe_is_the_empty_string() {
        let u = PacketSet::universe(0);
        assert_eq!(u.len(), 1);
        assert_eq!(u.min().unwrap().width(), 0);
    }
}
