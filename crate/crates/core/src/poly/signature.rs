use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of weighted variables shared by every polynomial over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    names: Vec<String>,
    weights: Vec<u32>,
    aliases: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Self>> {
        let (names, weights): (Vec<String>, Vec<u32>) =
            vars.into_iter().map(|(n, w)| (n.into(), w)).unzip();
        if names.is_empty() {
            return Err(Error::InvalidSpec("signature has no variables".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidSpec(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidSpec(format!("duplicate variable `{n}`")));
            }
        }
        if let Some(w) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidSpec(format!("variable weight {w} must be positive")));
        }
        Ok(Arc::new(Signature {
            names,
            weights,
            aliases: Vec::new(),
        }))
    }

    /// Variables `x1..xk, y1..yk, t` with weights 1 and 2; for k = 1 the
    /// primary names are `x, y, t` and `x1, y1` are accepted as aliases.
    pub fn heisenberg(k: usize) -> Arc<Self> {
        assert!(k >= 1, "Heisenberg group needs k >= 1");
        let mut names = Vec::with_capacity(2 * k + 1);
        let mut aliases = Vec::new();
        if k == 1 {
            names.extend(["x".to_string(), "y".to_string()]);
            aliases.push(("x1".to_string(), 0));
            aliases.push(("y1".to_string(), 1));
        } else {
            names.extend((1..=k).map(|j| format!("x{j}")));
            names.extend((1..=k).map(|j| format!("y{j}")));
        }
        names.push("t".to_string());
        let mut weights = vec![1; 2 * k];
        weights.push(2);
        Arc::new(Signature {
            names,
            weights,
            aliases,
        })
    }

    /// Doubled signature `v1.., v1'..` used to write a group law.
    pub fn primed(&self) -> Arc<Self> {
        let names = self
            .names
            .iter()
            .cloned()
            .chain(self.names.iter().map(|n| format!("{n}'")))
            .collect();
        let weights = self.weights.iter().chain(self.weights.iter()).copied().collect();
        let n = self.len();
        let aliases = self
            .aliases
            .iter()
            .cloned()
            .chain(self.aliases.iter().map(|(a, i)| (format!("{a}'"), i + n)))
            .collect();
        Arc::new(Signature {
            names,
            weights,
            aliases,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Sum of the weights (the homogeneous dimension for a graded group).
    pub fn homogeneous_dimension(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .or_else(|| self.aliases.iter().find(|(a, _)| a == name).map(|(_, i)| *i))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    let rest: String = chars.collect();
    let core = rest.trim_end_matches('\'');
    core.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}
