//! Truncated series in the free associative algebra on `X`, `Y`, and the
//! expansion of `log(e^X e^Y)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// Largest supported truncation degree.
pub const MAX_TRUNCATION: usize = 12;

/// Default truncation degree.
pub const DEFAULT_TRUNCATION: usize = 8;

/// Word over `{X, Y}`: bit `i` of `bits` is set iff letter `i` is `Y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    len: u8,
    bits: u32,
}

impl FreeWord {
    pub fn new(len: usize, bits: u32) -> Self {
        assert!(len <= 31 && (len == 31 || bits >> len == 0), "bits outside word length");
        FreeWord { len: len as u8, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `true` for `Y`, `false` for `X`.
    pub fn is_y(&self, pos: usize) -> bool {
        self.bits >> pos & 1 == 1
    }

    /// Number of `X` and `Y` letters.
    pub fn bidegree(&self) -> (usize, usize) {
        let b = self.bits.count_ones() as usize;
        (self.len() - b, b)
    }

    /// All words of bidegree `(a, b)`, in increasing order of `bits`.
    pub fn with_bidegree(a: usize, b: usize) -> Vec<FreeWord> {
        let n = a + b;
        (0u32..1 << n)
            .filter(|w| w.count_ones() as usize == b)
            .map(|w| FreeWord::new(n, w))
            .collect()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.is_y(i) { "Y" } else { "X" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.len() > 31 {
            return Err(Error::Parse { pos: 31, msg: "word too long".into() });
        }
        let mut bits = 0;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                'X' => {}
                'Y' => bits |= 1 << i,
                _ => return Err(Error::Parse { pos: i, msg: format!("unexpected letter {ch:?}") }),
            }
        }
        Ok(FreeWord::new(s.len(), bits))
    }
}

/// Series truncated at total degree `N`, stored densely per word length.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSeries {
    // slices[n][bits] is the coefficient of the length-n word `bits`
    slices: Vec<Vec<Rational>>,
}

impl FreeSeries {
    pub fn zero(truncation: usize) -> Self {
        FreeSeries { slices: (0..=truncation).map(|n| vec![Rational::zero(); 1 << n]).collect() }
    }

    pub fn truncation(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn coeff(&self, w: FreeWord) -> Result<Rational> {
        self.slices
            .get(w.len())
            .map(|s| s[w.bits as usize].clone())
            .ok_or(Error::TruncationExceeded { needed: w.len(), available: self.truncation() })
    }

    pub(crate) fn coeff_ref(&self, w: FreeWord) -> &Rational {
        &self.slices[w.len()][w.bits as usize]
    }

    /// Nonzero terms of length `n`.
    pub fn words(&self, n: usize) -> impl Iterator<Item = (FreeWord, &Rational)> {
        self.slices
            .get(n)
            .into_iter()
            .flat_map(move |s| s.iter().enumerate())
            .filter(|(_, c)| !c.is_zero())
            .map(move |(bits, c)| (FreeWord::new(n, bits as u32), c))
    }

    /// Nonzero terms of bidegree `(a, b)`.
    pub fn bidegree_slice(&self, a: usize, b: usize) -> Vec<(FreeWord, Rational)> {
        self.words(a + b).filter(|(w, _)| w.bidegree() == (a, b)).map(|(w, c)| (w, c.clone())).collect()
    }

    fn add_scaled(&mut self, other: &FreeSeries, c: &Rational) {
        for (dst, src) in self.slices.iter_mut().zip(&other.slices) {
            for (a, b) in dst.iter_mut().zip(src) {
                if !b.is_zero() {
                    *a += b * c;
                }
            }
        }
    }

    /// Truncated product with a sparse right factor.
    fn mul_sparse(&self, rhs: &[(FreeWord, Rational)]) -> FreeSeries {
        let n_max = self.truncation();
        let mut out = FreeSeries::zero(n_max);
        for (la, slice) in self.slices.iter().enumerate() {
            for (wa, ca) in slice.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (wb, cb) in rhs {
                    let lb = wb.len();
                    if la + lb > n_max {
                        continue;
                    }
                    let bits = wa | (wb.bits as usize) << la;
                    out.slices[la + lb][bits] += ca * cb;
                }
            }
        }
        out
    }
}

/// `log(e^X e^Y)` up to words of length `n_max`.
pub fn log_expansion(n_max: usize) -> FreeSeries {
    // e^X e^Y - 1 = Σ_{a+b>=1} X^a Y^b / (a! b!)
    let mut t = Vec::new();
    for n in 1..=n_max {
        for a in 0..=n {
            let b = n - a;
            let bits = ((1u32 << b) - 1) << a;
            let c = Rational::new(1.into(), factorial(a as u64) * factorial(b as u64));
            t.push((FreeWord::new(n, bits), c));
        }
    }
    let mut power = FreeSeries::zero(n_max);
    for (w, c) in &t {
        power.slices[w.len()][w.bits as usize] = c.clone();
    }
    let mut out = FreeSeries::zero(n_max);
    for m in 1..=n_max {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        out.add_scaled(&power, &Rational::new(sign.into(), m.into()));
        if m < n_max {
            power = power.mul_sparse(&t);
        }
    }
    out
}

static SHARED: Mutex<Option<Arc<FreeSeries>>> = Mutex::new(None);

/// Process-wide `log(e^X e^Y)` table with truncation at least `n`.
pub fn shared_series(n: usize) -> Result<Arc<FreeSeries>> {
    if n > MAX_TRUNCATION {
        return Err(Error::TruncationExceeded { needed: n, available: MAX_TRUNCATION });
    }
    let mut guard = SHARED.lock().unwrap();
    if let Some(s) = guard.as_ref().filter(|s| s.truncation() >= n) {
        return Ok(s.clone());
    }
    let s = Arc::new(log_expansion(n.max(DEFAULT_TRUNCATION)));
    *guard = Some(s.clone());
    Ok(s)
}

/// Goldberg coefficient `g_w`: the coefficient of `w` in `log(e^X e^Y)`.
pub fn goldberg_coefficient(w: FreeWord) -> Result<Rational> {
    shared_series(w.len())?.coeff(w)
}

/// `Σ_{|w| = n} |g_w|`
pub fn thompson_sum(n: usize) -> Result<Rational> {
    Ok(shared_series(n)?.words(n).map(|(_, c)| c.abs()).sum())
}

/// Left-nested commutator `[..[[w_1, w_2], w_3], .., w_n]` of the letters of
/// `w`, expanded in the free associative algebra.
pub fn left_nested_expansion(w: FreeWord) -> HashMap<FreeWord, i64> {
    let mut acc: HashMap<u32, i64> = HashMap::new();
    if w.is_empty() {
        return HashMap::new();
    }
    acc.insert(w.bits & 1, 1);
    for pos in 1..w.len() {
        let c = w.bits >> pos & 1;
        let mut next: HashMap<u32, i64> = HashMap::new();
        for (&bits, &k) in &acc {
            *next.entry(bits | c << pos).or_default() += k;
            *next.entry(c | bits << 1).or_default() -= k;
        }
        next.retain(|_, v| *v != 0);
        acc = next;
    }
    acc.into_iter().map(|(bits, k)| (FreeWord::new(w.len(), bits), k)).collect()
}

/// Re-expands `Σ_{|w|=n} (g_w / n) [w]` in the free associative algebra and
/// compares it with the length-`n` slice of `series`.
pub fn dynkin_consistent(series: &FreeSeries, n: usize) -> Result<bool> {
    if n == 0 || n > series.truncation() {
        return Err(Error::TruncationExceeded { needed: n, available: series.truncation() });
    }
    let mut rebuilt = vec![Rational::zero(); 1 << n];
    let scale = Rational::new(1.into(), n.into());
    for (w, g) in series.words(n) {
        let gw = g * &scale;
        for (v, k) in left_nested_expansion(w) {
            rebuilt[v.bits as usize] += &gw * Rational::from_integer(k.into());
        }
    }
    Ok(rebuilt == series.slices[n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn low_degree_coefficients() {
        let s = log_expansion(4);
        assert_eq!(s.coeff(w("X")).unwrap(), rat(1, 1));
        assert_eq!(s.coeff(w("Y")).unwrap(), rat(1, 1));
        assert_eq!(s.coeff(w("XY")).unwrap(), rat(1, 2));
        assert_eq!(s.coeff(w("YX")).unwrap(), rat(-1, 2));
        assert_eq!(s.coeff(w("XX")).unwrap(), rat(0, 1));
        // log(e^X e^Y) degree 3 = (1/12)[X,[X,Y]] + (1/12)[Y,[Y,X]]
        assert_eq!(s.coeff(w("XXY")).unwrap(), rat(1, 12));
        assert_eq!(s.coeff(w("XYX")).unwrap(), rat(-1, 6));
        assert_eq!(s.coeff(w("XYY")).unwrap(), rat(1, 12));
        assert!(matches!(s.coeff(w("XXXXX")), Err(Error::TruncationExceeded { .. })));
    }

    #[test]
    fn word_round_trip() {
        for s in ["X", "Y", "XYYX", "YYYXXY"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert_eq!(w("XYY").bidegree(), (1, 2));
        assert_eq!(FreeWord::with_bidegree(2, 2).len(), 6);
        assert!("XZ".parse::<FreeWord>().is_err());
    }

    #[test]
    fn nested_expansion() {
        let e = left_nested_expansion(w("XY"));
        assert_eq!(e.len(), 2);
        assert_eq!(e[&w("XY")], 1);
        assert_eq!(e[&w("YX")], -1);
        assert!(left_nested_expansion(w("XX")).is_empty());
    }

    #[test]
    fn dynkin_low_degrees() {
        let s = log_expansion(6);
        for n in 1..=6 {
            assert!(dynkin_consistent(&s, n).unwrap(), "n = {n}");
        }
    }
}
