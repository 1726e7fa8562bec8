use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::Qubit;

/// A sum modulo 2 of measurement outcomes, stored as its domain.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signal(BTreeSet<Qubit>);

impl Signal {
    pub fn empty() -> Signal {
        Signal::default()
    }

    pub fn single(q: Qubit) -> Signal {
        Signal(BTreeSet::from([q]))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, q: Qubit) -> bool {
        self.0.contains(&q)
    }

    /// Adds `s_q` once more, cancelling an existing occurrence.
    pub fn toggle(&mut self, q: Qubit) {
        if !self.0.remove(&q) {
            self.0.insert(q);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.0.iter().copied()
    }

    pub fn domain(&self) -> &BTreeSet<Qubit> {
        &self.0
    }

    /// Replaces `s_q` by `s_q + by` if `s_q` occurs; returns whether it did.
    pub fn substitute(&mut self, q: Qubit, by: &Signal) -> bool {
        if self.contains(q) {
            *self += by;
            true
        } else {
            false
        }
    }

    /// Parity of the outcomes in the domain.
    pub fn eval(&self, outcome: impl Fn(Qubit) -> bool) -> bool {
        self.0.iter().fold(false, |acc, &q| acc ^ outcome(q))
    }
}

impl FromIterator<Qubit> for Signal {
    /// Collects with cancellation: a qubit listed twice drops out.
    fn from_iter<I: IntoIterator<Item = Qubit>>(iter: I) -> Signal {
        let mut s = Signal::empty();
        for q in iter {
            s.toggle(q);
        }
        s
    }
}

impl AddAssign<&Signal> for Signal {
    fn add_assign(&mut self, rhs: &Signal) {
        for q in rhs.iter() {
            self.toggle(q);
        }
    }
}

impl Add<&Signal> for &Signal {
    type Output = Signal;
    fn add(self, rhs: &Signal) -> Signal {
        let mut s = self.clone();
        s += rhs;
        s
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, q) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{self}")
    }
}
