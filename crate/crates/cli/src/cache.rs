//! Order-profile cache: `<dir>/<schema-version>/<sha256(canonical)>.json`.
//! Profiles are the one expensive, stable payload; witnesses stay out
//! because they are cheap to re-derive and sensitive to search-order
//! changes.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use exatlas_core::group::OrderProfile;
use exatlas_core::SCHEMA_VERSION;

pub fn profile_path(dir: &Path, canonical: &str) -> PathBuf {
    let digest = Sha256::digest(canonical.as_bytes());
    let mut name = String::with_capacity(64);
    for byte in digest {
        name.push_str(&format!("{byte:02x}"));
    }
    dir.join(SCHEMA_VERSION).join(format!("{name}.json"))
}

/// A hit must also carry the right group label; anything else is treated
/// as a miss rather than an error.
pub fn load(dir: &Path, canonical: &str) -> Option<OrderProfile> {
    let text = fs::read_to_string(profile_path(dir, canonical)).ok()?;
    let profile: OrderProfile = serde_json::from_str(&text).ok()?;
    (profile.group == canonical).then_some(profile)
}

pub fn store(dir: &Path, canonical: &str, profile: &OrderProfile) -> io::Result<()> {
    let path = profile_path(dir, canonical);
    fs::create_dir_all(path.parent().expect("cache path has a parent"))?;
    let text = serde_json::to_string_pretty(profile).expect("profiles serialize");
    fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exatlas_core::group::{build_group, GroupSpec};

    #[test]
    fn round_trip_and_label_guard() {
        let dir = tempfile::tempdir().unwrap();
        let g = build_group(&GroupSpec::Cyclic(12)).unwrap();
        let profile = g.order_profile();
        assert!(load(dir.path(), "C12").is_none());
        store(dir.path(), "C12", &profile).unwrap();
        assert_eq!(load(dir.path(), "C12"), Some(profile.clone()));
        // a profile filed under the wrong key is ignored
        store(dir.path(), "D6", &profile).unwrap();
        assert!(load(dir.path(), "D6").is_none());
        let path = profile_path(dir.path(), "C12");
        assert!(path.starts_with(dir.path().join(exatlas_core::SCHEMA_VERSION)));
    }
}
