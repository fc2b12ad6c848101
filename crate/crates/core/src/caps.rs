//! Size limits for the brute-force parts of the library.
//!
//! Every verifier here is exhaustive, so the caps keep runs at desk scale and
//! make oversized requests fail fast with [`Error::SizeCap`].

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest carrier built by products, powers and generated subsemirings.
    pub carrier: usize,
    /// Largest carrier of a power semiring of a semigroup.
    pub power_semiring: usize,
    /// Largest group handed to subgroup enumeration.
    pub group: usize,
    /// Assignment evaluations per identity check.
    pub assignments: u64,
    /// Candidate identities tried by a separation search.
    pub candidates: u64,
    /// Full satisfactions (or homomorphisms) used as coordinates of a witness.
    pub satisfactions: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            carrier: 4096,
            power_semiring: 512,
            group: 32,
            assignments: 10_000_000,
            candidates: 1_000_000,
            satisfactions: 4096,
        }
    }
}

impl Caps {
    /// Parses overrides of the form `carrier=8192,group=64`.
    ///
    /// Keys not mentioned keep their default value.
    pub fn parse_overrides(text: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(1, 0, format!("expected key=value, got {item:?}")))?;
            let bad = || Error::parse(1, 0, format!("invalid number in {item:?}"));
            let value = value.trim();
            match key.trim() {
                "carrier" => caps.carrier = value.parse().map_err(|_| bad())?,
                "power_semiring" => caps.power_semiring = value.parse().map_err(|_| bad())?,
                "group" => caps.group = value.parse().map_err(|_| bad())?,
                "assignments" => caps.assignments = value.parse().map_err(|_| bad())?,
                "candidates" => caps.candidates = value.parse().map_err(|_| bad())?,
                "satisfactions" => caps.satisfactions = value.parse().map_err(|_| bad())?,
                other => return Err(Error::parse(1, 0, format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    pub(crate) fn check(what: &'static str, size: u128, cap: u128) -> Result<()> {
        if size > cap {
            Err(Error::SizeCap { what, size, cap })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply_to_named_keys_only() {
        let caps = Caps::parse_overrides("carrier=10, group = 7").unwrap();
        assert_eq!(caps.carrier, 10);
        assert_eq!(caps.group, 7);
        assert_eq!(caps.assignments, Caps::default().assignments);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Caps::parse_overrides("widgets=3").is_err());
        assert!(Caps::parse_overrides("carrier").is_err());
    }
}
