//! Finite, duplicate-free enumerations used to quantify laws.

use std::fmt;

use thiserror::Error;

/// Errors raised when declaring a finite domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error(
        "domain must not be empty (use FiniteDomain::empty for an intentionally empty domain)"
    )]
    Empty,
    #[error("duplicate element in domain: {0}")]
    Duplicate(String),
}

/// An ordered list of distinct values.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDomain<T> {
    elems: Vec<T>,
}

impl<T: Clone + PartialEq + fmt::Debug> FiniteDomain<T> {
    /// Declares a domain, rejecting duplicates and emptiness.
    pub fn new(elems: Vec<T>) -> Result<Self, DomainError> {
        if elems.is_empty() {
            return Err(DomainError::Empty);
        }
        for (i, x) in elems.iter().enumerate() {
            if elems[..i].contains(x) {
                return Err(DomainError::Duplicate(format!("{x:?}")));
            }
        }
        Ok(Self { elems })
    }

    /// Builds a domain from values that may repeat, keeping first occurrences.
    pub fn dedup(values: impl IntoIterator<Item = T>) -> Self {
        let mut elems: Vec<T> = Vec::new();
        for v in values {
            if !elems.contains(&v) {
                elems.push(v);
            }
        }
        Self { elems }
    }

    /// The empty domain. Laws quantified over it hold vacuously.
    pub fn empty() -> Self {
        Self { elems: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &T {
        &self.elems[i]
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elems.contains(x)
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.elems.iter().position(|y| y == x)
    }

    /// Keeps the elements satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&T) -> bool) -> Self {
        Self {
            elems: self.elems.iter().filter(|x| keep(x)).cloned().collect(),
        }
    }

    /// Same elements regardless of order.
    pub fn same_set(&self, other: &Self) -> bool {
        self.len() == other.len() && self.elems.iter().all(|x| other.contains(x))
    }

    /// Cartesian product in row-major order.
    pub fn product<U: Clone + PartialEq + fmt::Debug>(
        &self,
        other: &FiniteDomain<U>,
    ) -> FiniteDomain<(T, U)> {
        let mut elems = Vec::with_capacity(self.len() * other.len());
        for x in &self.elems {
            for y in &other.elems {
                elems.push((x.clone(), y.clone()));
            }
        }
        FiniteDomain { elems }
    }

    pub fn map<U: Clone + PartialEq + fmt::Debug>(&self, f: impl Fn(&T) -> U) -> FiniteDomain<U> {
        FiniteDomain::dedup(self.elems.iter().map(f))
    }

    pub fn into_vec(self) -> Vec<T> {
        self.elems
    }
}

impl<'a, T> IntoIterator for &'a FiniteDomain<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// All lists over `base` whose length is at most `max_len`, shortest first.
pub fn lists_up_to<T: Clone>(base: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for x in base {
                let mut l = prefix.clone();
                l.push(x.clone());
                next.push(l);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
