//! Config-file handling and flag/file merging.
//!
//! Config files are `key=value` text, one pair per line, `#` comments.
//! Command-line flags override file values; every resolved value is echoed
//! into the output provenance header.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

/// Errors carrying their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad config key/value, bad range, parameter violation: exit 3.
    Config(String),
    /// File system problems: exit 4.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl From<lowzeros_core::Error> for CliError {
    fn from(e: lowzeros_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Keys accepted in config files; anything else is rejected.
const KNOWN_KEYS: &[&str] = &[
    "m", "n", "q", "chi", "mode", "n-max", "q-max", "b-max", "p-max", "m-max", "r-max",
    "max-level", "intermediate-max-level", "count", "k", "k1", "k2", "level", "levels", "n1",
    "n2", "m1", "m2", "b1", "b2", "sigma", "x", "p-cap", "d-cap", "cap-m", "cap-d", "cap-r",
    "conductor", "pole", "eigenvalues", "zeros", "seed", "format",
];

/// Merged view of a parsed config file plus the provenance trail.
pub struct Ctx {
    file: BTreeMap<String, String>,
    resolved: RefCell<BTreeMap<String, String>>,
}

impl Ctx {
    pub fn empty() -> Self {
        Ctx {
            file: BTreeMap::new(),
            resolved: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let mut file = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key=value", i + 1))
            })?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Config(format!("line {}: unknown key {key:?}", i + 1)));
            }
            file.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Ctx {
            file,
            resolved: RefCell::new(BTreeMap::new()),
        })
    }

    /// Resolve one parameter: flag wins over file, file over default.
    pub fn get<T: FromStr + Display>(
        &self,
        flag: Option<T>,
        key: &str,
        default: Option<T>,
    ) -> Result<T, CliError> {
        let value = if let Some(v) = flag {
            v
        } else if let Some(raw) = self.file.get(key) {
            raw.parse().map_err(|_| {
                CliError::Config(format!("config value for {key} does not parse: {raw:?}"))
            })?
        } else if let Some(d) = default {
            d
        } else {
            return Err(CliError::Config(format!("missing required parameter {key}")));
        };
        self.resolved
            .borrow_mut()
            .insert(key.to_string(), value.to_string());
        Ok(value)
    }

    /// Like [`Ctx::get`], but the flag arrives as raw text (used for range
    /// syntax so that malformed ranges report as config violations, exit 3,
    /// rather than usage errors).
    pub fn get_parsed<T: FromStr + Display>(
        &self,
        flag: Option<String>,
        key: &str,
        default: Option<T>,
    ) -> Result<T, CliError>
    where
        T::Err: Display,
    {
        let parsed = match flag {
            Some(raw) => Some(raw.parse::<T>().map_err(|e| {
                CliError::Config(format!("bad value for --{key}: {e}"))
            })?),
            None => None,
        };
        self.get(parsed, key, default)
    }

    /// The resolved key=value pairs, sorted, for the provenance header.
    pub fn provenance(&self) -> String {
        self.resolved
            .borrow()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Inclusive numeric range `a..b` or `a..b..step`, or a single value.
#[derive(Debug, Clone, Copy)]
pub struct FloatRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl FloatRange {
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut x = self.start;
        while x <= self.end + 1e-12 * self.step.abs() {
            out.push(x);
            x += self.step;
        }
        out
    }
}

impl FromStr for FloatRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split("..").collect();
        let parse = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}"));
        let (start, end, step) = match parts.as_slice() {
            [one] => {
                let v = parse(one)?;
                (v, v, 1.0)
            }
            [a, b] => (parse(a)?, parse(b)?, 1.0),
            [a, b, c] => (parse(a)?, parse(b)?, parse(c)?),
            _ => return Err(format!("bad range {s:?}")),
        };
        if end < start {
            return Err(format!("range {s:?} is empty (end below start)"));
        }
        if step <= 0.0 {
            return Err(format!("range {s:?} has non-positive step"));
        }
        Ok(FloatRange { start, end, step })
    }
}

impl Display for FloatRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}..{}", self.start, self.end, self.step)
        }
    }
}

/// Inclusive integer range with the same syntax.
#[derive(Debug, Clone, Copy)]
pub struct IntRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl IntRange {
    pub fn values(&self) -> Vec<u64> {
        (self.start..=self.end).step_by(self.step as usize).collect()
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split("..").collect();
        let parse = |p: &str| p.trim().parse::<u64>().map_err(|_| format!("bad integer {p:?}"));
        let (start, end, step) = match parts.as_slice() {
            [one] => {
                let v = parse(one)?;
                (v, v, 1)
            }
            [a, b] => (parse(a)?, parse(b)?, 1),
            [a, b, c] => (parse(a)?, parse(b)?, parse(c)?),
            _ => return Err(format!("bad range {s:?}")),
        };
        if end < start {
            return Err(format!("range {s:?} is empty (end below start)"));
        }
        if step == 0 {
            return Err(format!("range {s:?} has zero step"));
        }
        Ok(IntRange { start, end, step })
    }
}

impl Display for IntRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}..{}", self.start, self.end, self.step)
        }
    }
}

/// Comma-separated integer list (for level sweeps).
#[derive(Debug, Clone)]
pub struct IntList(pub Vec<u64>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad integer {p:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(IntList)
    }
}

impl Display for IntList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}
