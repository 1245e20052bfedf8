//! Prime-power finite fields GF(p^e) with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..p^e` whose base-`p` digits are the
//! polynomial coefficients, least significant digit = constant term. The
//! modulus is the lexicographically least monic irreducible polynomial of
//! degree `e` (coefficients compared from the highest degree down), so two
//! fields built from the same `(p, e)` agree element-for-element.

use super::AlgebraError;

/// Upper bound on the field order accepted by [`FiniteField::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Which operation [`FiniteField::arith`] should perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    e: u32,
    order: u32,
    /// Modulus coefficients, constant term first; `modulus[e] == 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive element `g`, doubled so that
    /// `exp[log a + log b]` never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomial helpers over GF(p); coefficient vectors are constant-term first.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let den = trim(den.to_vec());
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    let p64 = p as u64;
    let mut r = num.to_vec();
    while r.len() > dd && r.len() > 1 {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv as u64 % p64;
        if c != 0 {
            let shift = top - dd;
            for (i, &dc) in den.iter().enumerate() {
                let sub = c * dc as u64 % p64;
                r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
            }
        }
        r.pop();
    }
    trim(r)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // Any factorization has a monic factor of degree <= deg / 2.
    for dd in 1..=deg / 2 {
        let count = (p as u64).pow(dd as u32);
        for low in 0..count {
            let mut g = digits(low, p, dd);
            g.push(1);
            let r = poly_rem(f, &g, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Lexicographically least monic irreducible of degree `e` over GF(p).
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let count = (p as u64).pow(e as u32);
    // Reading coefficients from degree e-1 down to 0 is exactly the base-p
    // value of the lower digits, so counting upwards walks lex order.
    for low in 0..count {
        let mut f = digits(low, p, e);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn mul_mod_poly(a: u32, b: u32, modulus: &[u32], p: u32) -> u32 {
    let e = modulus.len() - 1;
    let da = digits(a as u64, p, e);
    let db = digits(b as u64, p, e);
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(e, 0);
    undigits(&r, p)
}

fn pow_mod_poly(mut base: u32, mut exp: u64, modulus: &[u32], p: u32) -> u32 {
    let mut acc = 1u32;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_poly(acc, base, modulus, p);
        }
        base = mul_mod_poly(base, base, modulus, p);
        exp >>= 1;
    }
    acc
}

impl FiniteField {
    pub fn new(p: u32, e: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NonPrimeCharacteristic(p));
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if e == 0 || order > MAX_FIELD_ORDER {
            return Err(AlgebraError::DegreeOutOfRange { p, e });
        }
        let order = order as u32;
        let modulus = least_irreducible(p, e);

        let group = (order - 1) as u64;
        let factors = prime_factors(group);
        let generator = (1..order)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| pow_mod_poly(g, group / r, &modulus, p) != 1)
            })
            .expect("multiplicative group is cyclic");

        let n = order as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; n];
        let mut x = 1u32;
        for (i, e) in exp.iter_mut().take(n - 1).enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x = mul_mod_poly(x, generator, &modulus, p);
        }
        for i in n - 1..2 * n {
            exp[i] = exp[i - (n - 1)];
        }

        let mut field = FiniteField {
            p,
            e,
            order,
            modulus,
            exp,
            log,
            neg: Vec::new(),
            inv: Vec::new(),
        };
        field.neg = (0..order).map(|a| field.neg_digits(a)).collect();
        field.inv = (0..order)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    field.exp[(n - 1 - field.log[a as usize] as usize) % (n - 1)]
                }
            })
            .collect();
        Ok(field)
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, AlgebraError> {
        let (p, e) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients, constant term first (length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let d: Vec<u32> = digits(a as u64, self.p, self.e as usize)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        undigits(&d, self.p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Checked arithmetic entry point with domain validation.
    pub fn arith(&self, op: FieldOp, x: u32, y: Option<u32>) -> Result<u32, AlgebraError> {
        let check = |v: u32| {
            if v < self.order {
                Ok(v)
            } else {
                Err(AlgebraError::Domain {
                    value: v as u64,
                    order: self.order as u64,
                })
            }
        };
        let x = check(x)?;
        let binary = |y: Option<u32>| y.ok_or(AlgebraError::MissingOperand).and_then(check);
        match op {
            FieldOp::Add => Ok(self.add(x, binary(y)?)),
            FieldOp::Mul => Ok(self.mul(x, binary(y)?)),
            FieldOp::Neg => Ok(self.neg(x)),
            FieldOp::Inv => self.inv(x).ok_or(AlgebraError::ZeroInverse),
        }
    }

    /// Exhaustive check of the field axioms. Quadratic in the order for
    /// the pairwise laws and cubic for associativity/distributivity, so only
    /// meant for small fields.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.order;
        for a in 0..n {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv(a).unwrap()) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}
