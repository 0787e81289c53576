use std::fs;
use std::path::{Path, PathBuf};

use beta_trees::verify::{Check, VerifyReport};
use serde::{Deserialize, Serialize};

use crate::codec::ReportJson;

/// Finished reports on disk, one file per `(check, n_max)`.
///
/// Entries written by another version, and unreadable files, are ignored.
/// Removing the directory only costs recomputation.
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    report: ReportJson,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, check: Check, n_max: u32) -> PathBuf {
        self.dir.join(format!("{}-n{n_max}.json", check.name()))
    }

    pub fn load(&self, check: Check, n_max: u32) -> Option<VerifyReport> {
        let text = fs::read_to_string(self.path(check, n_max)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.version != env!("CARGO_PKG_VERSION") {
            return None;
        }
        let report = VerifyReport::try_from(entry.report).ok()?;
        (report.check == check && report.n_max == n_max).then_some(report)
    }

    pub fn store(&self, report: &VerifyReport) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry { version: env!("CARGO_PKG_VERSION").into(), report: report.into() };
        let text = serde_json::to_string_pretty(&entry).map_err(std::io::Error::other)?;
        let target = self.path(report.check, report.n_max);
        let tmp = target.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(tmp, target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use beta_trees::verify::{run_check, Sequential};

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("reports"));
        assert!(cache.load(Check::Census, 5).is_none());
        let r = run_check(&Sequential, Check::Census, 5);
        cache.store(&r).unwrap();
        assert_eq!(cache.load(Check::Census, 5), Some(r));
        assert!(cache.load(Check::Census, 6).is_none());
    }

    #[test]
    fn corrupt_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        fs::write(dir.path().join("census-n5.json"), "{ not json").unwrap();
        assert!(cache.load(Check::Census, 5).is_none());
    }
}
