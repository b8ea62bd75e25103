//! Global signs pinned by the committed `conventions.lock` file.

use serde::Deserialize;

use crate::error::{Error, Result};

const LOCK: &str = include_str!("../conventions.lock");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Conventions {
    pub tau1_closed_sign: i64,
    pub tau1prime_closed_sign: i64,
    pub graph_route_sign: i64,
}

impl Conventions {
    pub fn parse(text: &str) -> Result<Self> {
        let c: Conventions = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for (name, s) in [
            ("tau1_closed_sign", c.tau1_closed_sign),
            ("tau1prime_closed_sign", c.tau1prime_closed_sign),
            ("graph_route_sign", c.graph_route_sign),
        ] {
            if s != 1 && s != -1 {
                return Err(Error::Parse(format!("{name} must be 1 or -1, got {s}")));
            }
        }
        Ok(c)
    }
}

/// The committed conventions.
pub fn lock() -> Conventions {
    Conventions::parse(LOCK).expect("committed lock file is valid")
}
