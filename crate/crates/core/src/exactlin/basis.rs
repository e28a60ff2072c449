use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        BasisElement {
            name: name.into(),
            degree,
            weight: None,
        }
    }

    pub fn weighted(name: impl Into<String>, degree: i32, weight: u32) -> Self {
        BasisElement {
            name: name.into(),
            degree,
            weight: Some(weight),
        }
    }
}

/// Ordered basis of a graded vector space. Elements are kept sorted by
/// `(degree, insertion index)`; that order is the tie-break used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedBasis {
    elements: Vec<BasisElement>,
    by_name: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts `elements` canonically. The returned permutation maps input
    /// positions to canonical indices.
    pub fn with_permutation(elements: Vec<BasisElement>) -> Result<(Self, Vec<usize>)> {
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| (elements[i].degree, i));
        let mut perm = vec![0; elements.len()];
        for (canon, &orig) in order.iter().enumerate() {
            perm[orig] = canon;
        }
        let sorted: Vec<BasisElement> = order.iter().map(|&i| elements[i].clone()).collect();
        let mut by_name = HashMap::new();
        for (i, e) in sorted.iter().enumerate() {
            if by_name.insert(e.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis name {:?}", e.name)));
            }
        }
        let weights_given = sorted.iter().filter(|e| e.weight.is_some()).count();
        if weights_given != 0 && weights_given != sorted.len() {
            return Err(Error::Invalid(
                "weights must be given for all basis elements or for none".into(),
            ));
        }
        if sorted.iter().any(|e| e.weight == Some(0)) {
            return Err(Error::Invalid("weights must be at least 1".into()));
        }
        Ok((
            GradedBasis {
                elements: sorted,
                by_name,
            },
            perm,
        ))
    }

    /// Keeps the given order. Only for internal relabellings where the
    /// position of each element is meaningful; names must be unique.
    pub(crate) fn unsorted(elements: Vec<BasisElement>) -> Self {
        let by_name = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), i))
            .collect();
        GradedBasis { elements, by_name }
    }

    pub fn new(elements: Vec<BasisElement>) -> Result<Self> {
        Self::with_permutation(elements).map(|(b, _)| b)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.elements[i].degree
    }

    pub fn weight(&self, i: usize) -> Option<u32> {
        self.elements[i].weight
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn is_weighted(&self) -> bool {
        self.elements.first().is_some_and(|e| e.weight.is_some())
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasisElement> + '_ {
        self.elements.iter()
    }

    pub fn without_weights(&self) -> GradedBasis {
        let elements = self
            .elements
            .iter()
            .map(|e| BasisElement::new(e.name.clone(), e.degree))
            .collect();
        GradedBasis::new(elements).expect("names stay unique")
    }

    pub fn with_weights(&self, weights: &[u32]) -> Result<GradedBasis> {
        let elements = self
            .elements
            .iter()
            .zip(weights)
            .map(|(e, &w)| BasisElement::weighted(e.name.clone(), e.degree, w))
            .collect();
        GradedBasis::new(elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_by_degree_then_insertion() {
        let (b, perm) = GradedBasis::with_permutation(vec![
            BasisElement::new("c", 2),
            BasisElement::new("a", 0),
            BasisElement::new("b", 0),
        ])
        .unwrap();
        assert_eq!(b.name(0), "a");
        assert_eq!(b.name(1), "b");
        assert_eq!(b.name(2), "c");
        assert_eq!(perm, vec![2, 0, 1]);
        assert_eq!(b.index_of("c"), Some(2));
    }

    #[test]
    fn rejects_duplicates_and_partial_weights() {
        assert!(GradedBasis::new(vec![BasisElement::new("a", 0), BasisElement::new("a", 1)]).is_err());
        assert!(GradedBasis::new(vec![
            BasisElement::weighted("a", 0, 1),
            BasisElement::new("b", 0)
        ])
        .is_err());
    }
}
