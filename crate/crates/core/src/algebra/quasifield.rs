//! Right quasifields given by an explicit multiplication table over a
//! vector space GF(q)^dim.
//!
//! Element `v` of a dimension-2 quasifield encodes `a + λb` as
//! `v = a + b·q`, so the elements `0..q` form the embedded copy of GF(q).

use super::{AlgebraError, FiniteField};

/// Largest base order accepted by [`Quasifield::hall`] (so `q² <= 4096`).
pub const MAX_HALL_BASE: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuasifieldKind {
    /// The field itself, viewed as a quasifield.
    Field,
    /// Hall system with parameters `(r, s)` of `f(t) = t² - r t - s`.
    Hall { r: u32, s: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasifield {
    field: FiniteField,
    dim: u32,
    order: u32,
    kind: QuasifieldKind,
    mul: Vec<u32>,
}

impl Quasifield {
    /// A field is a (trivial) quasifield.
    pub fn from_field(field: FiniteField) -> Self {
        let n = field.order();
        let mut mul = vec![0u32; (n * n) as usize];
        for x in 0..n {
            for m in 0..n {
                mul[(x * n + m) as usize] = field.mul(x, m);
            }
        }
        Quasifield {
            order: n,
            dim: 1,
            kind: QuasifieldKind::Field,
            field,
            mul,
        }
    }

    /// The Hall quasifield of order `q²` built over GF(q).
    pub fn hall(q: u32) -> Result<Self, AlgebraError> {
        if !(3..=MAX_HALL_BASE).contains(&q) {
            return Err(AlgebraError::OrderOutOfRange(q as u64));
        }
        let field = FiniteField::of_order(q as u64).map_err(|_| AlgebraError::OrderOutOfRange(q as u64))?;
        let f = &field;
        // f(t) = t² - r t - s, evaluated in GF(q).
        let poly = |r: u32, s: u32, t: u32| f.sub(f.sub(f.mul(t, t), f.mul(r, t)), s);
        let (r, s) = (0..q)
            .flat_map(|r| (0..q).map(move |s| (r, s)))
            .find(|&(r, s)| (0..q).all(|t| poly(r, s, t) != 0))
            .expect("irreducible quadratics exist over every finite field");

        let n = q * q;
        let mut mul = vec![0u32; (n * n) as usize];
        for x in 0..n {
            let (a, b) = (x % q, x / q);
            for m in 0..n {
                let (c, d) = (m % q, m / q);
                let (lo, hi) = if d == 0 {
                    (f.mul(a, c), f.mul(b, c))
                } else {
                    let d_inv = f.inv(d).unwrap();
                    let lo = f.sub(f.mul(a, c), f.mul(f.mul(b, d_inv), poly(r, s, c)));
                    let hi = f.add(f.sub(f.mul(a, d), f.mul(b, c)), f.mul(b, r));
                    (lo, hi)
                };
                mul[(x * n + m) as usize] = lo + hi * q;
            }
        }
        Ok(Quasifield {
            field,
            dim: 2,
            order: n,
            kind: QuasifieldKind::Hall { r, s },
            mul,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the coordinate field the additive group is built over.
    pub fn base_order(&self) -> u32 {
        self.field.order()
    }

    pub fn kind(&self) -> QuasifieldKind {
        self.kind
    }

    pub fn base_field(&self) -> &FiniteField {
        &self.field
    }

    #[inline]
    pub fn mul(&self, x: u32, m: u32) -> u32 {
        self.mul[(x * self.order + m) as usize]
    }

    /// Componentwise addition in GF(q)^dim.
    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.dim == 1 {
            return self.field.add(x, y);
        }
        let q = self.field.order();
        let lo = self.field.add(x % q, y % q);
        let hi = self.field.add(x / q, y / q);
        lo + hi * q
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        if self.dim == 1 {
            return self.field.neg(x);
        }
        let q = self.field.order();
        self.field.neg(x % q) + self.field.neg(x / q) * q
    }

    /// Exhaustive check of the quasifield laws: identities, right
    /// distributivity, and unique solvability of `x·m = x·m' + c`.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.order;
        let fail = |what: &str| Err(AlgebraError::InvalidQuasifield(what.to_string()));
        for x in 0..n {
            if self.mul(1, x) != x || self.mul(x, 1) != x {
                return fail(&format!("1 is not an identity at {x}"));
            }
            if self.mul(0, x) != 0 || self.mul(x, 0) != 0 {
                return fail(&format!("0 is not absorbing at {x}"));
            }
        }
        for m in 0..n {
            for x in 0..n {
                let xm = self.mul(x, m);
                for y in 0..n {
                    if self.mul(self.add(x, y), m) != self.add(xm, self.mul(y, m)) {
                        return fail(&format!("right distributivity fails at ({x}, {y}, {m})"));
                    }
                }
            }
        }
        // x ↦ x·m − x·m' must be a bijection whenever m ≠ m'.
        let mut seen = vec![false; n as usize];
        for m in 0..n {
            for m2 in 0..n {
                if m == m2 {
                    continue;
                }
                seen.iter_mut().for_each(|s| *s = false);
                for x in 0..n {
                    let c = self.add(self.mul(x, m), self.neg(self.mul(x, m2)));
                    if std::mem::replace(&mut seen[c as usize], true) {
                        return fail(&format!("x·{m} = x·{m2} + {c} has two solutions"));
                    }
                }
            }
        }
        Ok(())
    }

    /// First triple violating multiplicative associativity, if any.
    pub fn associativity_witness(&self) -> Option<(u32, u32, u32)> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// First failure of a law that every field satisfies but a proper
    /// quasifield need not: associativity, then left distributivity, then
    /// commutativity of multiplication.
    pub fn non_field_witness(&self) -> Option<NonFieldWitness> {
        if let Some((x, y, z)) = self.associativity_witness() {
            return Some(NonFieldWitness::Associativity(x, y, z));
        }
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return Some(NonFieldWitness::LeftDistributivity(x, y, z));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.mul(x, y) != self.mul(y, x) {
                    return Some(NonFieldWitness::Commutativity(x, y));
                }
            }
        }
        None
    }
}

/// A concrete triple (or pair) showing a quasifield is not a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonFieldWitness {
    /// `(x·y)·z ≠ x·(y·z)`
    Associativity(u32, u32, u32),
    /// `x·(y+z) ≠ x·y + x·z`
    LeftDistributivity(u32, u32, u32),
    /// `x·y ≠ y·x`
    Commutativity(u32, u32),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hall_of_three_parameters() {
        let h = Quasifield::hall(3).unwrap();
        assert_eq!(h.order(), 9);
        // t² + 1 is the first irreducible t² - r t - s over GF(3).
        assert_eq!(h.kind(), QuasifieldKind::Hall { r: 0, s: 2 });
    }

    #[test]
    fn hall_laws_small_orders() {
        for q in [3, 4, 5] {
            let h = Quasifield::hall(q).unwrap();
            h.validate().unwrap();
        }
    }

    #[test]
    fn hall_subfield_agrees_with_base_field() {
        let h = Quasifield::hall(3).unwrap();
        let f = FiniteField::new(3, 1).unwrap();
        for a in 0..3 {
            for c in 0..3 {
                assert_eq!(h.mul(a, c), f.mul(a, c));
            }
        }
    }

    #[test]
    fn hall_nine_is_a_nearfield_but_not_a_field() {
        // The order-9 Hall system is multiplicatively associative; it fails
        // left distributivity instead.
        let h = Quasifield::hall(3).unwrap();
        assert_eq!(h.associativity_witness(), None);
        match h.non_field_witness() {
            Some(NonFieldWitness::LeftDistributivity(x, y, z)) => {
                assert_ne!(h.mul(x, h.add(y, z)), h.add(h.mul(x, y), h.mul(x, z)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn larger_hall_systems_are_not_associative() {
        for q in [4, 5] {
            let h = Quasifield::hall(q).unwrap();
            let (x, y, z) = h.associativity_witness().expect("non-associative");
            assert_ne!(h.mul(h.mul(x, y), z), h.mul(x, h.mul(y, z)));
        }
    }

    #[test]
    fn fields_are_quasifields() {
        let q = Quasifield::from_field(FiniteField::of_order(4).unwrap());
        q.validate().unwrap();
        assert_eq!(q.non_field_witness(), None);
    }

    #[test]
    fn hall_order_range() {
        assert_eq!(Quasifield::hall(2), Err(AlgebraError::OrderOutOfRange(2)));
        assert_eq!(Quasifield::hall(6), Err(AlgebraError::OrderOutOfRange(6)));
        assert_eq!(Quasifield::hall(65), Err(AlgebraError::OrderOutOfRange(65)));
    }

    #[test]
    fn broken_table_is_rejected() {
        let mut h = Quasifield::hall(3).unwrap();
        h.mul[(4 * 9 + 5) as usize] = 0;
        assert!(matches!(h.validate(), Err(AlgebraError::InvalidQuasifield(_))));
    }
}
