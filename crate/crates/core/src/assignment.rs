use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::rational::Rational;
use crate::stream::ElementId;

/// Values assigned to revealed elements. Missing elements read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<ElementId, Rational>,
    w_min: Rational,
    w_max: Rational,
}

impl Assignment {
    pub fn new(w_min: Rational, w_max: Rational) -> Result<Self> {
        if w_min <= Rational::zero() || w_max < w_min {
            return Err(Error::Parameter(format!(
                "need 0 < w_min <= w_max, got w_min={w_min}, w_max={w_max}"
            )));
        }
        Ok(Assignment {
            values: BTreeMap::new(),
            w_min,
            w_max,
        })
    }

    /// 0/1 assignment (`w_min = w_max = 1`).
    pub fn binary() -> Self {
        Assignment {
            values: BTreeMap::new(),
            w_min: Rational::one(),
            w_max: Rational::one(),
        }
    }

    pub fn w_min(&self) -> Rational {
        self.w_min
    }

    pub fn w_max(&self) -> Rational {
        self.w_max
    }

    pub fn in_domain(&self, value: Rational) -> bool {
        value.is_zero() || (value >= self.w_min && value <= self.w_max)
    }

    pub fn get(&self, e: ElementId) -> Rational {
        self.values.get(&e).copied().unwrap_or_else(Rational::zero)
    }

    pub fn is_set(&self, e: ElementId) -> bool {
        self.values.contains_key(&e)
    }

    pub fn vertex(&self, v: usize) -> Rational {
        self.get(ElementId::Vertex(v))
    }

    pub fn edge(&self, e: Edge) -> Rational {
        self.get(ElementId::Edge(e))
    }

    /// Sets a value and returns the previous one.
    pub fn set(&mut self, e: ElementId, value: Rational) -> Result<Rational> {
        if !self.in_domain(value) {
            return Err(Error::ValueOutOfRange {
                element: e,
                value: value.to_string(),
            });
        }
        Ok(self.values.insert(e, value).unwrap_or_else(Rational::zero))
    }

    pub fn total(&self) -> Rational {
        self.values.values().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ElementId, Rational)> + '_ {
        self.values.iter().map(|(e, v)| (*e, *v))
    }

    /// Elements with a non-zero value, in element order.
    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(e, _)| *e)
    }

    pub fn accepted_vertices(&self) -> Vec<usize> {
        self.support()
            .filter_map(|e| match e {
                ElementId::Vertex(v) => Some(v),
                ElementId::Edge(_) => None,
            })
            .collect()
    }

    pub fn accepted_edges(&self) -> Vec<Edge> {
        self.support()
            .filter_map(|e| match e {
                ElementId::Edge(e) => Some(e),
                ElementId::Vertex(_) => None,
            })
            .collect()
    }

    /// Elements whose value differs between `self` and `target`, as
    /// `(element, old, new)` in element order.
    pub fn diff(&self, target: &Assignment) -> Vec<(ElementId, Rational, Rational)> {
        let mut keys: Vec<ElementId> = self.values.keys().chain(target.values.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|e| {
                let (old, new) = (self.get(e), target.get(e));
                (old != new).then_some((e, old, new))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn domain_is_zero_or_between_bounds() {
        let mut a = Assignment::new(frac(1, 2), int(1)).unwrap();
        assert!(a.set(ElementId::Vertex(0), frac(1, 2)).is_ok());
        assert!(a.set(ElementId::Vertex(1), frac(1, 4)).is_err());
        assert!(a.set(ElementId::Vertex(1), int(0)).is_ok());
        assert!(a.set(ElementId::Vertex(2), int(2)).is_err());
        assert_eq!(a.total(), frac(1, 2));
        assert!(Assignment::new(int(0), int(1)).is_err());
    }

    #[test]
    fn diff_covers_both_sides() {
        let mut a = Assignment::binary();
        let mut b = Assignment::binary();
        a.set(ElementId::Vertex(0), int(1)).unwrap();
        b.set(ElementId::Vertex(1), int(1)).unwrap();
        b.set(ElementId::Vertex(2), int(0)).unwrap();
        let d = a.diff(&b);
        assert_eq!(
            d,
            vec![
                (ElementId::Vertex(0), int(1), int(0)),
                (ElementId::Vertex(1), int(0), int(1)),
            ]
        );
    }
}
