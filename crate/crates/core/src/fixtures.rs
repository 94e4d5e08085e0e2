//! Reference matrices bundled with the crate.

use crate::confusion::{parse_records, InputFormat, InputRecord};
use crate::error::{Error, Result};

const BUNDLED: [(&str, &str); 5] = [
    ("binary", include_str!("../../../fixtures/binary.json")),
    ("skewed-94", include_str!("../../../fixtures/skewed-94.json")),
    ("skewed-95", include_str!("../../../fixtures/skewed-95.json")),
    ("three-class", include_str!("../../../fixtures/three-class.json")),
    ("equal-rates", include_str!("../../../fixtures/equal-rates.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(name, _)| *name)
}

/// Raw JSON of a bundled fixture.
pub fn raw(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn load(name: &str) -> Result<Vec<InputRecord>> {
    let text = raw(name).ok_or_else(|| Error::InvalidArgument(format!("no bundled fixture `{name}`")))?;
    parse_records(text, InputFormat::Json)
}
