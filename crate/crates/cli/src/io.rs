use std::fs;
use std::io::Read;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use cak_core::exact::Point2;
use cak_core::Label;

/// Reads JSON from a path, or from standard input when the path is "-".
pub fn read_json<T: DeserializeOwned>(path: &str) -> Result<T, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("parsing {path}: {e}"))
}

pub fn print_json<T: Serialize>(value: &T) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    // Tolerate closed pipes (e.g. piping into head).
    let _ = writeln!(std::io::stdout(), "{text}");
}

/// A labeled point set, the input of the point-side commands.
#[derive(Serialize, Deserialize)]
pub struct PointsFile {
    pub points: Vec<LabeledPoint>,
}

#[derive(Serialize, Deserialize)]
pub struct LabeledPoint {
    pub label: Label,
    pub at: Point2,
}

impl PointsFile {
    pub fn into_pairs(self) -> Vec<(Label, Point2)> {
        self.points.into_iter().map(|p| (p.label, p.at)).collect()
    }
}
