//! Finite fields of small order by lookup table.
//!
//! Prime orders use modular arithmetic. Orders 4, 8 and 9 are built as
//! `GF(p)[x]/(f)` for a fixed irreducible `f`; an element is the integer
//! whose base-`p` digits are its polynomial coefficients, constant term
//! first.

use crate::error::{Error, Result};

pub const SUPPORTED_ORDERS: [usize; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// Coefficients of the monic modulus below the leading term, constant first.
fn modulus(q: usize) -> Option<(usize, &'static [usize])> {
    match q {
        4 => Some((2, &[1, 1])),    // x² + x + 1
        8 => Some((2, &[1, 1, 0])), // x³ + x + 1
        9 => Some((3, &[1, 0])),    // x² + 1
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(Error::UnsupportedDegree {
                construction: "finite field",
                degree: q,
                reason: format!("supported orders are {SUPPORTED_ORDERS:?}"),
            });
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        match modulus(q) {
            None => {
                for a in 0..q {
                    for b in 0..q {
                        add[a * q + b] = ((a + b) % q) as u8;
                        mul[a * q + b] = ((a * b) % q) as u8;
                    }
                }
            }
            Some((p, low)) => {
                let k = low.len();
                let digits = |mut x: usize| {
                    let mut d = vec![0usize; k];
                    for slot in d.iter_mut() {
                        *slot = x % p;
                        x /= p;
                    }
                    d
                };
                let pack = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
                for a in 0..q {
                    let da = digits(a);
                    for b in 0..q {
                        let db = digits(b);
                        let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                        add[a * q + b] = pack(&sum) as u8;

                        let mut prod = vec![0usize; 2 * k - 1];
                        for (i, x) in da.iter().enumerate() {
                            for (j, y) in db.iter().enumerate() {
                                prod[i + j] = (prod[i + j] + x * y) % p;
                            }
                        }
                        // Reduce with x^k = -(low).
                        for deg in (k..prod.len()).rev() {
                            let c = prod[deg];
                            if c == 0 {
                                continue;
                            }
                            prod[deg] = 0;
                            for (i, l) in low.iter().enumerate() {
                                let idx = deg - k + i;
                                prod[idx] = (prod[idx] + (p - l % p) * c) % p;
                            }
                        }
                        mul[a * q + b] = pack(&prod[..k]) as u8;
                    }
                }
            }
        }
        Ok(FiniteField { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    /// Field axioms checked exhaustively on the tables.
    pub fn check_axioms(&self) -> bool {
        let q = self.q;
        let elems = 0..q;
        let assoc_comm = elems.clone().all(|a| {
            (0..q).all(|b| {
                self.add(a, b) == self.add(b, a)
                    && self.mul(a, b) == self.mul(b, a)
                    && (0..q).all(|c| {
                        self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                            && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                            && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                    })
            })
        });
        let identities = elems.clone().all(|a| self.add(a, 0) == a && self.mul(a, 1) == a);
        let inverses = elems.clone().all(|a| (0..q).any(|b| self.add(a, b) == 0))
            && (1..q).all(|a| (1..q).any(|b| self.mul(a, b) == 1));
        assoc_comm && identities && inverses
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_fields_satisfy_axioms() {
        for q in SUPPORTED_ORDERS {
            assert!(FiniteField::new(q).unwrap().check_axioms(), "q={q}");
        }
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 12, 16] {
            assert!(FiniteField::new(q).is_err());
        }
    }

    #[test]
    fn gf4_generator() {
        // x has order 3: x·x = x + 1, x·(x + 1) = 1.
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
    }
}
