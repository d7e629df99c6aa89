//! Small finite fields GF(q).
//!
//! Prime orders use arithmetic mod q. The prime powers 4, 8 and 9 are built
//! as polynomial quotients: GF(4) = GF(2)[x]/(x^2+x+1),
//! GF(8) = GF(2)[x]/(x^3+x+1), GF(9) = GF(3)[x]/(x^2+1). An element is
//! encoded as the integer whose base-p digits are its coefficients.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl Field {
    /// Largest prime order accepted. Designs over bigger fields would not fit
    /// in a [`crate::PointSet`] anyway.
    pub const MAX_PRIME: usize = 127;

    pub fn new(q: usize) -> Result<Self> {
        // (characteristic, degree, low coefficients of the monic modulus)
        let (p, n, modulus): (usize, usize, &[usize]) = match q {
            4 => (2, 2, &[1, 1]),
            8 => (2, 3, &[1, 1, 0]),
            9 => (3, 2, &[1, 0]),
            _ if is_prime(q) && q <= Self::MAX_PRIME => (q, 1, &[0]),
            _ => return Err(Error::UnsupportedField(q)),
        };
        let digits = |mut a: usize| -> Vec<usize> {
            (0..n)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;

                let mut prod = vec![0usize; 2 * n - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce: x^n = -(modulus)
                for deg in (n..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (k, m) in modulus.iter().enumerate() {
                        let t = deg - n + k;
                        prod[t] = (prod[t] + (p - c) * m) % p;
                    }
                }
                prod.truncate(n);
                mul[a * q + b] = encode(&prod) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or(Error::UnsupportedField(q))? as u8;
        }
        Ok(Field {
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b] as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    /// Multiplicative inverse; `inv(0)` is 0 by convention.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(q: usize) {
        let f = Field::new(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.sub(a, a), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11] {
            check_axioms(q);
        }
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 16, 25, 27] {
            assert_eq!(Field::new(q), Err(Error::UnsupportedField(q)));
        }
    }
}
