use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered set of uniquely labelled elements.
///
/// Every matrix, group and ranking in the crate is indexed by positions in
/// one of these sets.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct ElementSet {
    labels: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl ElementSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyElementSet);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(ElementSet { labels, index })
    }

    /// Elements labelled `E1`..`En`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("E{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    /// Sub-set of elements at the given positions, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check_index(i)?;
        }
        Self::new(indices.iter().map(|&i| self.labels[i].clone()))
    }
}

impl TryFrom<Vec<String>> for ElementSet {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        ElementSet::new(labels)
    }
}

impl From<ElementSet> for Vec<String> {
    fn from(set: ElementSet) -> Self {
        set.labels
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(matches!(
            ElementSet::new(["A", "B", "A"]),
            Err(Error::DuplicateLabel(l)) if l == "A"
        ));
        assert!(matches!(
            ElementSet::new(Vec::<String>::new()),
            Err(Error::EmptyElementSet)
        ));
    }

    #[test]
    fn lookup() {
        let s = ElementSet::new(["R", "P", "S"]).unwrap();
        assert_eq!(s.index_of("S").unwrap(), 2);
        assert!(s.index_of("X").is_err());
        assert_eq!(ElementSet::indexed(2).unwrap().labels(), ["E1", "E2"]);
    }
}
