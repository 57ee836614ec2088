//! Recourse accounting.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::stream::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryPhase {
    /// Value given to an element during its own arrival event (free).
    Arrival,
    /// Any later change (one late operation).
    Late,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RecourseType {
    /// Number of changed elements.
    Count,
    /// Total absolute change in value.
    Amount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LedgerEntry {
    pub event: usize,
    pub element: ElementId,
    pub old: Rational,
    pub new: Rational,
    pub phase: EntryPhase,
}

#[derive(Debug, Clone, Default)]
pub struct RecourseLedger {
    entries: Vec<LedgerEntry>,
    type1: usize,
    type2: Rational,
}

impl RecourseLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record_arrival(&mut self, event: usize, element: ElementId, value: Rational) {
        self.entries.push(LedgerEntry {
            event,
            element,
            old: Rational::zero(),
            new: value,
            phase: EntryPhase::Arrival,
        });
    }

    /// Re-assignment of an element within its own arrival event; still free.
    pub fn record_arrival_change(&mut self, event: usize, element: ElementId, old: Rational, new: Rational) {
        if old != new {
            self.entries.push(LedgerEntry {
                event,
                element,
                old,
                new,
                phase: EntryPhase::Arrival,
            });
        }
    }

    /// Records a late operation; no-op when the value does not change.
    pub fn record_late(&mut self, event: usize, element: ElementId, old: Rational, new: Rational) {
        if old == new {
            return;
        }
        self.type1 += 1;
        self.type2 += (new - old).abs();
        self.entries.push(LedgerEntry {
            event,
            element,
            old,
            new,
            phase: EntryPhase::Late,
        });
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn late_entries(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| e.phase == EntryPhase::Late)
    }

    pub fn type1_total(&self) -> usize {
        self.type1
    }

    pub fn type2_total(&self) -> Rational {
        self.type2
    }

    pub fn total(&self, kind: RecourseType) -> Rational {
        match kind {
            RecourseType::Count => Rational::from_integer(self.type1 as i64),
            RecourseType::Amount => self.type2,
        }
    }

    /// Late operations logged for one event.
    pub fn late_ops_in(&self, event: usize) -> usize {
        self.late_entries().filter(|e| e.event == event).count()
    }

    /// Applies every entry, in order, to the all-zero assignment.
    pub fn replay(&self) -> BTreeMap<ElementId, Rational> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            out.insert(e.element, e.new);
        }
        out
    }
}

/// Total recourse of the requested type divided by the number of
/// value-carrying elements of the final instance.
pub fn amortized_recourse(ledger: &RecourseLedger, final_element_count: usize, kind: RecourseType) -> Result<Rational> {
    if final_element_count == 0 {
        return Err(Error::UndefinedMetric);
    }
    Ok(ledger.total(kind) / Rational::from_integer(final_element_count as i64))
}

/// `Σx / Σy` and `max x/y` over groups with positive denominators; the first
/// never exceeds the second.
pub fn sum_and_max_ratio(groups: &[(Rational, Rational)]) -> Option<(Rational, Rational)> {
    let mut sx = Rational::zero();
    let mut sy = Rational::zero();
    let mut best: Option<Rational> = None;
    for &(x, y) in groups {
        if y <= Rational::zero() || x < Rational::zero() {
            return None;
        }
        sx += x;
        sy += y;
        let r = x / y;
        best = Some(best.map_or(r, |b| b.max(r)));
    }
    best.map(|b| (sx / sy, b))
}
