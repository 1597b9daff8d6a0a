use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a body or curve. Labels are totally ordered lexicographically;
/// every bottom-to-top order and every canonical form relies on this order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Labels "1", "2", ..., "n"; zero-padded when n has more digits so the
    /// lexicographic order agrees with the numeric one.
    pub fn numbered(n: usize) -> Vec<Label> {
        let width = n.to_string().len();
        (1..=n)
            .map(|i| Label(format!("{i:0width$}")))
            .collect()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}
