//! Bernoulli numbers `B_n^*` of `z / (1 - e^{-z}) = Σ B_n^* z^n / n!` and
//! two identities built from them.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, Rational};

/// `B_0^*, …, B_N^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

/// Table of `B_n^*` for `n <= n_max`, from
/// `Σ_{j=0}^{n} (-1)^{n-j} B_j^* / (j! (n+1-j)!) = [n = 0]`.
pub fn bernoulli_star(n_max: usize) -> BernoulliTable {
    let mut values: Vec<Rational> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = if n == 0 { Rational::one() } else { Rational::zero() };
        for (j, b) in values.iter().enumerate() {
            let term = b / Rational::from_integer(factorial(j as u64) * factorial((n + 1 - j) as u64));
            if (n - j) % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        values.push(acc * Rational::from_integer(factorial(n as u64)));
    }
    BernoulliTable { values }
}

impl BernoulliTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `B_n^*`
    pub fn get(&self, n: usize) -> Result<&Rational> {
        self.values
            .get(n)
            .ok_or(Error::TruncationExceeded { needed: n, available: self.values.len().saturating_sub(1) })
    }

    /// First-kind Bernoulli number `B_n = (-1)^n B_n^*`.
    pub fn first_kind(&self, n: usize) -> Result<Rational> {
        let b = self.get(n)?.clone();
        Ok(if n % 2 == 1 { -b } else { b })
    }

    /// The defining recurrence holds for every stored index.
    pub fn satisfies_recurrence(&self) -> bool {
        (0..self.values.len()).all(|n| {
            let s: Rational = (0..=n)
                .map(|j| {
                    let t = &self.values[j]
                        / Rational::from_integer(factorial(j as u64) * factorial((n + 1 - j) as u64));
                    if (n - j) % 2 == 0 { t } else { -t }
                })
                .sum();
            s == if n == 0 { Rational::one() } else { Rational::zero() }
        })
    }

    /// `|B_n^*| <= n!` for every stored index.
    pub fn within_factorial_bound(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(n, b)| b.abs() <= Rational::from_integer(factorial(n as u64)))
    }
}

/// `K(k, s) = 1/(k+1) Σ_{n=0}^{k} C(k+1, n) B_n^* Σ_{j=0}^{n} (-1)^j C(n, j)
/// #{ℓ ∈ [0, k-n] : ℓ + j = s}`.
pub fn kernel_k(table: &BernoulliTable, k: usize, s: usize) -> Result<Rational> {
    if s > k {
        return Err(Error::InvalidParameter(format!("need s <= k, got s = {s}, k = {k}")));
    }
    let mut total = Rational::zero();
    for n in 0..=k {
        let b = table.get(n)?;
        if b.is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        for j in 0..=n.min(s) {
            if s - j > k - n {
                continue;
            }
            let c = Rational::from_integer(binomial(n as u64, j as u64));
            if j % 2 == 0 {
                inner += c;
            } else {
                inner -= c;
            }
        }
        total += Rational::from_integer(binomial(k as u64 + 1, n as u64)) * b * inner;
    }
    Ok(total / Rational::from_integer((k + 1).into()))
}

/// `(-1)^k Σ_j C(k,j) B_{m+j} - (-1)^m Σ_i C(m,i) B_{k+i}` with first-kind
/// Bernoulli numbers.
pub fn carlitz_check(table: &BernoulliTable, k: usize, m: usize) -> Result<Rational> {
    let side = |k: usize, m: usize| -> Result<Rational> {
        let mut acc = Rational::zero();
        for j in 0..=k {
            acc += Rational::from_integer(binomial(k as u64, j as u64)) * table.first_kind(m + j)?;
        }
        Ok(if k % 2 == 1 { -acc } else { acc })
    };
    Ok(side(k, m)? - side(m, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn leading_values() {
        let t = bernoulli_star(6);
        assert_eq!(t.values()[..5], [int(1), rat(1, 2), rat(1, 6), int(0), rat(-1, 30)]);
        assert_eq!(t.first_kind(1).unwrap(), rat(-1, 2));
        assert!(t.get(7).is_err());
    }

    #[test]
    fn invariants_to_thirty() {
        let t = bernoulli_star(30);
        assert!(t.satisfies_recurrence());
        assert!(t.within_factorial_bound());
        assert!((3..=30).step_by(2).all(|n| t.values()[n].is_zero()));
    }

    #[test]
    fn kernel_small() {
        let t = bernoulli_star(12);
        assert_eq!(kernel_k(&t, 2, 1).unwrap(), int(0));
        assert_eq!(kernel_k(&t, 1, 0).unwrap(), int(1));
        assert!(kernel_k(&t, 1, 2).is_err());
    }

    #[test]
    fn carlitz_small() {
        let t = bernoulli_star(30);
        for m in 0..=6 {
            assert_eq!(carlitz_check(&t, 0, m).unwrap(), int(0));
        }
        assert_eq!(carlitz_check(&t, 3, 2).unwrap(), int(0));
        assert!(carlitz_check(&bernoulli_star(3), 2, 2).is_err());
    }
}
