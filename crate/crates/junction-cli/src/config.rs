//! Zero-dependency flag and config-file parsing.
//!
//! Flags are `--key value` pairs (plus a few value-less booleans). An
//! optional `--config file` loads line-oriented `key=value` pairs first, so
//! command-line flags override the file. Lookups take the last occurrence.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Invalid flags, values, files, or domain validation: exit 2.
    Config(String),
    /// The computation itself failed to converge: exit 3.
    Numerical(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

pub fn config_err<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Config(msg.into()))
}

/// Value-less flags; everything else takes a value.
const BOOL_FLAGS: &[&str] = &["no-timestamp"];

pub struct Flags {
    entries: Vec<(String, String)>,
}

impl Flags {
    /// Parse `args` (everything after the subcommand). `allowed` is the
    /// command's full flag list; unknown keys are a config error.
    pub fn parse(args: &[String], allowed: &[&str]) -> Result<Flags, CliError> {
        let mut cli_entries = Vec::new();
        let mut config_path: Option<String> = None;
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let key = match arg.strip_prefix("--") {
                Some(k) if !k.is_empty() => k.to_string(),
                _ => return config_err(format!("unexpected argument '{arg}' (flags are --key value)")),
            };
            if BOOL_FLAGS.contains(&key.as_str()) {
                cli_entries.push((key, "true".to_string()));
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| CliError::Config(format!("flag --{key} needs a value")))?;
            if key == "config" {
                config_path = Some(value.clone());
            } else {
                cli_entries.push((key, value.clone()));
            }
            i += 2;
        }

        let mut entries = Vec::new();
        if let Some(path) = config_path {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Config(format!("cannot read config {path}: {e}")))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    CliError::Config(format!("{path}:{}: expected key=value", lineno + 1))
                })?;
                entries.push((k.trim().to_string(), v.trim().to_string()));
            }
        }
        entries.extend(cli_entries);

        for (k, _) in &entries {
            if !allowed.contains(&k.as_str()) {
                return config_err(format!("unknown flag --{k}"));
            }
        }
        Ok(Flags { entries })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn str_or(&self, key: &str, default: &str) -> String {
        self.get(key).unwrap_or(default).to_string()
    }

    pub fn opt_str(&self, key: &str) -> Option<String> {
        self.get(key).map(|s| s.to_string())
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(key) {
            Some(s) => parse_number(s)
                .ok_or_else(|| CliError::Config(format!("flag --{key}: '{s}' is not a number"))),
            None => Ok(default),
        }
    }

    pub fn req_str(&self, key: &str) -> Result<String, CliError> {
        self.get(key)
            .map(|s| s.to_string())
            .ok_or_else(|| CliError::Config(format!("missing required flag --{key}")))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| CliError::Config(format!("flag --{key}: '{s}' is not an integer"))),
            None => Ok(default),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        self.get(key).is_some_and(|v| v == "true")
    }
}

/// Parse a float, accepting fraction syntax like `1/128`.
pub fn parse_number(s: &str) -> Option<f64> {
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().ok()?;
        let d: f64 = den.trim().parse().ok()?;
        if d == 0.0 {
            return None;
        }
        return Some(n / d);
    }
    s.trim().parse().ok()
}

/// Parse a comma-separated list of floats (fractions allowed).
pub fn parse_number_list(s: &str) -> Option<Vec<f64>> {
    s.split(',')
        .map(|item| parse_number(item.trim()))
        .collect()
}
