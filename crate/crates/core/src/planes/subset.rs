use std::fmt;
use std::marker::PhantomData;

use fixedbitset::FixedBitSet;

use super::{IncidenceStructure, PlaneError};

/// Selects which side of the incidence structure a [`Subset`] lives on.
pub trait Side: Clone + fmt::Debug {
    const NAME: &'static str;
    fn universe(s: &IncidenceStructure) -> usize;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Points;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lines;

impl Side for Points {
    const NAME: &'static str = "point";
    fn universe(s: &IncidenceStructure) -> usize {
        s.point_count()
    }
}

impl Side for Lines {
    const NAME: &'static str = "line";
    fn universe(s: &IncidenceStructure) -> usize {
        s.line_count()
    }
}

/// A set of points or lines tagged with the structure it belongs to.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset<S: Side> {
    owner: u64,
    bits: FixedBitSet,
    len: usize,
    _side: PhantomData<S>,
}

pub type PointSet = Subset<Points>;
pub type LineSet = Subset<Lines>;

impl<S: Side> Subset<S> {
    pub fn empty(s: &IncidenceStructure) -> Self {
        Subset {
            owner: s.fingerprint(),
            bits: FixedBitSet::with_capacity(S::universe(s)),
            len: 0,
            _side: PhantomData,
        }
    }

    pub fn full(s: &IncidenceStructure) -> Self {
        let mut out = Self::empty(s);
        out.bits.insert_range(..);
        out.len = out.bits.len();
        out
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        s: &IncidenceStructure,
        indices: I,
    ) -> Result<Self, PlaneError> {
        let mut out = Self::empty(s);
        for i in indices {
            if i >= out.bits.len() {
                return Err(PlaneError::IndexOutOfRange {
                    what: S::NAME,
                    index: i,
                    bound: out.bits.len(),
                });
            }
            out.insert(i);
        }
        Ok(out)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.bits.put(i);
        self.len += usize::from(fresh);
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let present = self.bits.contains(i);
        if present {
            self.bits.set(i, false);
            self.len -= 1;
        }
        present
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the universe this subset is drawn from.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn belongs_to(&self, s: &IncidenceStructure) -> bool {
        self.owner == s.fingerprint() && self.bits.len() == S::universe(s)
    }
}

impl<S: Side> fmt::Debug for Subset<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Set", S::NAME)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;
    use crate::planes::build_desarguesian_affine;

    #[test]
    fn cardinality_tracks_membership() {
        let ag = build_desarguesian_affine(&FiniteField::of_order(3).unwrap()).unwrap();
        let mut s = PointSet::empty(&ag);
        assert!(s.insert(4));
        assert!(!s.insert(4));
        assert!(s.insert(0));
        assert_eq!(s.len(), 2);
        assert!(s.remove(4));
        assert!(!s.remove(4));
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_vec(), vec![0]);
        assert_eq!(PointSet::full(&ag).len(), 9);
        assert_eq!(LineSet::full(&ag).len(), 12);
    }

    #[test]
    fn rejects_foreign_indices() {
        let ag = build_desarguesian_affine(&FiniteField::of_order(2).unwrap()).unwrap();
        assert!(matches!(
            PointSet::from_indices(&ag, [4]),
            Err(PlaneError::IndexOutOfRange { index: 4, bound: 4, .. })
        ));
        let other = build_desarguesian_affine(&FiniteField::of_order(3).unwrap()).unwrap();
        let s = PointSet::from_indices(&ag, [0]).unwrap();
        assert!(s.belongs_to(&ag));
        assert!(!s.belongs_to(&other));
    }
}
