//! Append-only JSONL result cache.
//!
//! One JSON object per line, fields exactly the record schema. Later
//! lines win on duplicate keys, corrupt lines are skipped with a warning,
//! and a cached row is only reused after its witness pair has been
//! decoded and its product size recomputed.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use metakappa_core::bounds::BoundsContext;
use metakappa_core::presentation::GroupTable;

use crate::records::{decode_set, ResultRecord};

pub struct ResultCache {
    path: PathBuf,
    entries: HashMap<(u32, u32, u32, u32, u32, u32), ResultRecord>,
}

impl ResultCache {
    pub fn open(path: &Path) -> Result<ResultCache> {
        let mut entries = HashMap::new();
        match std::fs::File::open(path) {
            Ok(file) => {
                for (lineno, line) in BufReader::new(file).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<ResultRecord>(&line) {
                        Ok(record) => {
                            entries.insert(record.cell_key(), record);
                        }
                        Err(e) => {
                            eprintln!(
                                "warning: skipping corrupt cache line {} of {}: {e}",
                                lineno + 1,
                                path.display()
                            );
                        }
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e).with_context(|| format!("opening {}", path.display())),
        }
        Ok(ResultCache {
            path: path.to_path_buf(),
            entries,
        })
    }

    /// A cached record for this exact cell, re-verified before reuse: the
    /// stored witness must decode, have the advertised sizes, and its
    /// recomputed product size and bound columns must match. Records
    /// without witnesses cannot be re-verified and are not reused.
    pub fn lookup(
        &self,
        table: &GroupTable,
        ctx: &BoundsContext,
        r: u32,
        s: u32,
    ) -> Option<ResultRecord> {
        let params = table.params();
        let key = (params.m(), params.n_exp(), params.g(), params.h(), r, s);
        let record = self.entries.get(&key)?;
        if record.witness_a.is_empty() || record.witness_b.is_empty() {
            return None;
        }
        let a = decode_set(params, &record.witness_a).ok()?;
        let b = decode_set(params, &record.witness_b).ok()?;
        if a.len() != r as usize || b.len() != s as usize {
            return None;
        }
        if table.product_set(&a, &b).len() as u32 != record.mu {
            return None;
        }
        let profile = ctx.profile(r, s);
        if (record.kappa, record.dkappa, record.nkappa)
            != (profile.kappa, profile.dkappa, profile.nkappa)
        {
            return None;
        }
        Some(record.clone())
    }

    pub fn append(&mut self, record: &ResultRecord) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("appending to {}", self.path.display()))?;
        writeln!(file, "{}", serde_json::to_string(record)?)?;
        self.entries.insert(record.cell_key(), record.clone());
        Ok(())
    }
}
