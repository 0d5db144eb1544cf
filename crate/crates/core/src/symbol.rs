//! Interned symbols and per-run fresh-name generation.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

/// An interned name. Equality and hashing use the interned pointer; ordering
/// uses the text so that sorted output does not depend on interning order.
#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static INTERNER: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        let mut table = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(existing) = table.get(name) {
            return Symbol(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        table.insert(leaked);
        Symbol(leaked)
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0.as_ptr(), other.0.as_ptr()) && self.0.len() == other.0.len()
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state);
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self == other {
            std::cmp::Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl serde::Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Fresh names scoped to one pipeline run.
///
/// Every name handed out is distinct from all names registered with
/// [`FreshNames::reserve`] and from every name handed out before.
#[derive(Debug, Clone, Default)]
pub struct FreshNames {
    used: HashSet<String>,
    counters: HashMap<String, usize>,
}

impl FreshNames {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_owned());
    }

    pub fn reserve_all<I, S>(&mut self, names: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for n in names {
            self.reserve(n.as_ref());
        }
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    /// Next unused `prefix{n}`, counting from `start` the first time a prefix
    /// is seen.
    pub fn fresh_from(&mut self, prefix: &str, start: usize) -> Symbol {
        let counter = self.counters.entry(prefix.to_owned()).or_insert(start);
        loop {
            let candidate = format!("{prefix}{counter}");
            *counter += 1;
            if !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return Symbol::new(&candidate);
            }
        }
    }

    pub fn fresh(&mut self, prefix: &str) -> Symbol {
        self.fresh_from(prefix, 0)
    }

    /// `base` itself if unused, otherwise `base_1`, `base_2`, ...
    pub fn fresh_like(&mut self, base: &str) -> Symbol {
        if !self.used.contains(base) {
            self.used.insert(base.to_owned());
            return Symbol::new(base);
        }
        self.fresh_from(&format!("{base}_"), 1)
    }
}
