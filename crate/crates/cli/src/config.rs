//! Plain-text `key=value` run configuration.
//!
//! Each key names a long flag. The file's entries are spliced in ahead of the
//! command-line flags, and since every flag keeps its last occurrence, flags
//! given on the command line win.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

/// Flags that take no value; set them with `true` or `false`.
const SWITCHES: [&str; 1] = ["optimize-alpha"];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: expected key=value, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("config line {line}: {key} expects true or false, found {value:?}")]
    Switch { line: usize, key: String, value: String },
    #[error("config line {line}: key {key:?} is not allowed in a config file")]
    Forbidden { line: usize, key: String },
    #[error("--config requires a path")]
    MissingPath,
    #[error("--config must follow a subcommand")]
    NoSubcommand,
}

/// Turns config text into command-line tokens. Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_config(text: &str) -> Result<Vec<String>, ConfigError> {
    let mut tokens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            text: trimmed.to_string(),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.starts_with('-') {
            return Err(ConfigError::Syntax {
                line,
                text: trimmed.to_string(),
            });
        }
        if key == "config" {
            return Err(ConfigError::Forbidden {
                line,
                key: key.to_string(),
            });
        }
        if SWITCHES.contains(&key) {
            match value {
                "true" => tokens.push(format!("--{key}")),
                "false" => {}
                _ => {
                    return Err(ConfigError::Switch {
                        line,
                        key: key.to_string(),
                        value: value.to_string(),
                    })
                }
            }
        } else {
            tokens.push(format!("--{key}={value}"));
        }
    }
    Ok(tokens)
}

pub fn read_config(path: &Path) -> Result<Vec<String>, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

fn config_path(args: &[OsString]) -> Result<Option<PathBuf>, ConfigError> {
    let mut found = None;
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--" {
            break;
        }
        if text == "--config" {
            found = Some(iter.next().ok_or(ConfigError::MissingPath)?.into());
        } else if let Some(path) = text.strip_prefix("--config=") {
            found = Some(PathBuf::from(path));
        }
    }
    Ok(found)
}

/// Splices the entries of the `--config` file, if any, right after the
/// subcommand name so that explicit flags override them.
pub fn expand_args(args: Vec<OsString>) -> Result<Vec<OsString>, ConfigError> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let subcommand_given = args.get(1).is_some_and(|a| !a.to_string_lossy().starts_with('-'));
    if !subcommand_given {
        return Err(ConfigError::NoSubcommand);
    }
    let tokens = read_config(&path)?;
    let mut out = Vec::with_capacity(args.len() + tokens.len());
    out.extend(args[..2].iter().cloned());
    out.extend(tokens.into_iter().map(OsString::from));
    out.extend(args[2..].iter().cloned());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_become_flags() {
        let text = "# run manifest\nmodel = aqc1\n\nT-grid=0.02:0.17:10\noptimize-alpha=true\n";
        assert_eq!(
            parse_config(text).unwrap(),
            ["--model=aqc1", "--T-grid=0.02:0.17:10", "--optimize-alpha"]
        );
        assert!(parse_config("optimize-alpha=false").unwrap().is_empty());
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(matches!(parse_config("model aqc1"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(parse_config("x=1\n=2"), Err(ConfigError::Syntax { line: 2, .. })));
        assert!(matches!(parse_config("optimize-alpha=yes"), Err(ConfigError::Switch { .. })));
        assert!(matches!(parse_config("config=other.txt"), Err(ConfigError::Forbidden { .. })));
    }

    #[test]
    fn no_config_leaves_args_alone() {
        let args: Vec<OsString> = ["adiasweep", "gap", "--model", "lz"].map(OsString::from).to_vec();
        assert_eq!(expand_args(args.clone()).unwrap(), args);
    }
}
