use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde_json::{json, Value};

use crate::Cli;

/// What a command produced: a verdict, a certificate, and the files to write
/// once everything has succeeded.
pub struct Outcome {
    pub pass: bool,
    pub certificate: Value,
    /// Plain text printed before the certificate (the GRM table).
    pub text: Option<String>,
    pub files: Vec<(PathBuf, String)>,
    pub cert_path: Option<PathBuf>,
}

impl Outcome {
    pub fn new(pass: bool, certificate: Value) -> Outcome {
        Outcome {
            pass,
            certificate,
            text: None,
            files: Vec::new(),
            cert_path: None,
        }
    }

    pub fn file(mut self, path: &Option<PathBuf>, contents: impl FnOnce() -> anyhow::Result<String>) -> anyhow::Result<Self> {
        if let Some(p) = path {
            self.files.push((p.clone(), contents()?));
        }
        Ok(self)
    }

    /// Certificate goes to `explicit`, else next to `beside` as `<file>.json`.
    pub fn cert_to(mut self, explicit: &Option<PathBuf>, beside: &Option<PathBuf>) -> Self {
        self.cert_path = explicit.clone().or_else(|| {
            beside.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".json");
                PathBuf::from(s)
            })
        });
        self
    }

    /// Echoes the config into the certificate, writes every file and prints
    /// the certificate. Returns the verdict.
    pub fn finish(mut self, cli: &Cli) -> anyhow::Result<bool> {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        if let Value::Object(map) = &mut self.certificate {
            map.insert("verdict".into(), json!(verdict));
            let mut config = serde_json::to_value(cli)?;
            config["threads"] = json!(std::env::var("PERFMIX_THREADS").ok());
            map.insert("config".into(), config);
        }
        let rendered = serde_json::to_string_pretty(&self.certificate)? + "\n";
        if let Some(p) = &self.cert_path {
            self.files.push((p.clone(), rendered.clone()));
        }
        for (path, contents) in &self.files {
            write_atomic(path, contents)?;
        }
        if let Some(t) = &self.text {
            print!("{t}");
        }
        print!("{rendered}");
        Ok(self.pass)
    }
}

fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}
