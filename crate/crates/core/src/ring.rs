use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

/// Ordered list of distinct variable names. The coefficient field is the
/// type parameter of the polynomials living in the ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Arc<PolyRing>> {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "`{n}` is not a valid variable name"
                )));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(PolyRing { names, index }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// A ring with one extra trailing variable whose name starts with
    /// `prefix` and does not clash with existing names.
    pub fn with_fresh_var(&self, prefix: &str) -> (Arc<PolyRing>, usize) {
        let mut k = 0usize;
        let name = loop {
            let cand = if k == 0 {
                prefix.to_string()
            } else {
                format!("{prefix}{k}")
            };
            if !self.index.contains_key(&cand) {
                break cand;
            }
            k += 1;
        };
        let mut names = self.names.clone();
        names.push(name);
        let n = names.len() - 1;
        (PolyRing::new(names).expect("fresh name is valid"), n)
    }

    /// Header line of the generator file format, compressing runs such as
    /// `x1,x2,...,x12` into `x1..x12`.
    pub fn header(&self, field: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.names.len() {
            let (stem, num) = split_numeric(&self.names[i]);
            let mut j = i;
            if let Some(start) = num {
                while j + 1 < self.names.len() {
                    let (s2, n2) = split_numeric(&self.names[j + 1]);
                    if s2 == stem && n2 == Some(start + (j + 1 - i) as u64) {
                        j += 1;
                    } else {
                        break;
                    }
                }
            }
            if j > i + 1 {
                parts.push(format!("{}..{}", self.names[i], self.names[j]));
            } else {
                for k in i..=j {
                    parts.push(self.names[k].clone());
                }
            }
            i = j + 1;
        }
        format!("ring {field}[{}]", parts.join(","))
    }

    /// Parses `ring Q[x1..x12,y,z]` (the field token is returned verbatim).
    pub fn parse_header(line: &str) -> Result<(String, Arc<PolyRing>)> {
        let err = |column: usize, message: &str| AlgebraError::Parse {
            line: 1,
            column,
            message: message.to_string(),
        };
        let rest = line
            .trim()
            .strip_prefix("ring")
            .ok_or_else(|| err(1, "expected `ring <field>[<variables>]`"))?
            .trim_start();
        let open = rest.find('[').ok_or_else(|| err(1, "missing `[`"))?;
        let close = rest.rfind(']').ok_or_else(|| err(1, "missing `]`"))?;
        if close < open {
            return Err(err(1, "malformed variable list"));
        }
        let field = rest[..open].trim().to_string();
        if field.is_empty() {
            return Err(err(1, "missing coefficient field"));
        }
        let mut names = Vec::new();
        for item in rest[open + 1..close].split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            if let Some((a, b)) = item.split_once("..") {
                let (sa, na) = split_numeric(a.trim());
                let (sb, nb) = split_numeric(b.trim());
                match (na, nb) {
                    (Some(na), Some(nb)) if sa == sb && na <= nb => {
                        for k in na..=nb {
                            names.push(format!("{sa}{k}"));
                        }
                    }
                    _ => return Err(err(1, &format!("bad variable range `{item}`"))),
                }
            } else {
                names.push(item.to_string());
            }
        }
        let ring = PolyRing::new(names).map_err(|e| err(1, &e.to_string()))?;
        Ok((field, ring))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn split_numeric(s: &str) -> (&str, Option<u64>) {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if cut == s.len() || cut == 0 {
        (s, None)
    } else {
        (&s[..cut], s[cut..].parse().ok())
    }
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyRing{:?}", self.names)
    }
}
