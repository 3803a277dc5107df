//! `key = value` configuration text.
//!
//! One entry per line. Blank lines and lines starting with `#` are ignored,
//! keys are lowercase ASCII with `-` or `_` (treated as the same character),
//! values may be wrapped in double quotes. Keys mirror the command-line flags,
//! so `max_full_n = 2048` in a file means the same as `--max-full-n 2048`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    entries: Vec<(String, String)>,
}

fn normalize_key(key: &str) -> String {
    key.replace('_', "-")
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'-' || b == b'_')
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            if !valid_key(key) {
                return Err(Error::Config {
                    line: line_no,
                    msg: format!("invalid key `{key}`"),
                });
            }
            let key = normalize_key(key);
            let value =
                unquote(value.trim()).map_err(|msg| Error::Config { line: line_no, msg })?;
            if config.get(&key).is_some() {
                return Err(Error::Config {
                    line: line_no,
                    msg: format!("duplicate key `{key}`"),
                });
            }
            config.entries.push((key, value.to_string()));
        }
        Ok(config)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        let key = normalize_key(key);
        self.entries
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Inserts or replaces an entry.
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let key = normalize_key(key);
        let value = value.into();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key, value)),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    /// Fails on the first key not in `allowed`.
    pub fn expect_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(Error::InvalidValue {
                key: k.to_string(),
                msg: "unknown key".into(),
            }),
            None => Ok(()),
        }
    }

    pub fn parse_value<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| Error::InvalidValue {
                    key: key.to_string(),
                    msg: e.to_string(),
                })
            })
            .transpose()
    }

    pub fn parse_bool(&self, key: &str) -> Result<Option<bool>> {
        self.get(key)
            .map(|v| match v.to_ascii_lowercase().as_str() {
                "true" | "yes" | "on" | "1" => Ok(true),
                "false" | "no" | "off" | "0" => Ok(false),
                _ => Err(Error::InvalidValue {
                    key: key.to_string(),
                    msg: format!("`{v}` is not a boolean"),
                }),
            })
            .transpose()
    }

    pub fn parse_list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                parse_list(v).map_err(|msg| Error::InvalidValue {
                    key: key.to_string(),
                    msg,
                })
            })
            .transpose()
    }
}

impl FromStr for Config {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Config::parse(s)
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            if needs_quotes(v) {
                writeln!(f, "{k} = \"{v}\"")?;
            } else {
                writeln!(f, "{k} = {v}")?;
            }
        }
        Ok(())
    }
}

fn needs_quotes(v: &str) -> bool {
    v.is_empty() || v.trim() != v || v.starts_with('"') || v.starts_with('#')
}

fn unquote(v: &str) -> std::result::Result<&str, String> {
    match v.strip_prefix('"') {
        Some(rest) => match rest.strip_suffix('"') {
            Some(inner) if !inner.contains('"') => Ok(inner),
            _ => Err(format!("unbalanced quotes in `{v}`")),
        },
        None if v.contains('"') => Err(format!("stray quote in `{v}`")),
        None => Ok(v),
    }
}

/// Comma-separated list, e.g. `256, 1024,4096`. Empty items are rejected.
pub fn parse_list<T: FromStr>(text: &str) -> std::result::Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    text.split(',')
        .map(|item| {
            let item = item.trim();
            if item.is_empty() {
                return Err(format!("empty item in list `{text}`"));
            }
            item.parse::<T>().map_err(|e| format!("`{item}`: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_entries_and_comments() {
        let c = Config::parse(
            "# run\nn = 1024\n\nbeta=0.8\ncorrected = true\nout = \"a b.csv\"\nmax_full_n = 9\n",
        )
        .unwrap();
        assert_eq!(c.get("n"), Some("1024"));
        assert_eq!(c.get("beta"), Some("0.8"));
        assert_eq!(c.parse_bool("corrected").unwrap(), Some(true));
        assert_eq!(c.get("out"), Some("a b.csv"));
        assert_eq!(c.parse_value::<usize>("max-full-n").unwrap(), Some(9));
        assert_eq!(c.get("steps"), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        for (text, line) in [
            ("n 1024", 1),
            ("n = 1\nn = 2", 2),
            ("N = 3", 1),
            (" = 3", 1),
            ("\nout = \"x", 2),
            ("out = a\"b", 1),
        ] {
            match Config::parse(text) {
                Err(Error::Config { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn value_errors_name_the_key() {
        let c = Config::parse("n = lots\ncorrected = maybe\nbeta = 0,x").unwrap();
        assert!(
            matches!(c.parse_value::<usize>("n"), Err(Error::InvalidValue { key, .. }) if key == "n")
        );
        assert!(c.parse_bool("corrected").is_err());
        assert!(c.parse_list::<f64>("beta").is_err());
        assert!(c.expect_keys(&["n", "corrected"]).is_err());
    }

    #[test]
    fn set_overrides() {
        let mut c = Config::parse("n = 3").unwrap();
        c.set("n", "5");
        c.set("max_full_n", "7");
        assert_eq!(c.get("n"), Some("5"));
        assert_eq!(c.get("max-full-n"), Some("7"));
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_list::<usize>("256, 1024,4096").unwrap(),
            vec![256, 1024, 4096]
        );
        assert!(parse_list::<usize>("1,,2").is_err());
        assert!(parse_list::<usize>("").is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(entries in proptest::collection::btree_map("[a-z][a-z0-9-]{0,8}", "[ -!#-~]{0,12}", 0..6)) {
            let mut c = Config::default();
            for (k, v) in &entries {
                c.set(k, v.as_str());
            }
            let text = c.to_string();
            prop_assert_eq!(Config::parse(&text).unwrap(), c);
        }

        #[test]
        fn parse_never_panics(text in "\\PC{0,200}") {
            let _ = Config::parse(&text);
        }
    }
}
