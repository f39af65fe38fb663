//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use smallvec::SmallVec;

pub type Exponent = u16;

/// An exponent vector with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 16]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, var: usize, power: Exponent) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = power;
        m.deg = power as u32;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> Exponent {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exponent; 16]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exponent; 16]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i mod 64` occurs.
    #[inline]
    pub fn divmask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << (i % 64)))
    }

    pub(crate) fn set_exponent(&mut self, var: usize, e: Exponent) {
        self.deg = self.deg - self.exps[var] as u32 + e as u32;
        self.exps[var] = e;
    }

    /// Degree in the variables `vars`.
    pub fn partial_degree(&self, vars: std::ops::Range<usize>) -> u32 {
        self.exps[vars].iter().map(|&e| e as u32).sum()
    }

    /// Reorders/extends the exponent vector: entry `i` of the result is the
    /// exponent of `map[i]` (or 0 for `None`).
    pub fn remap(&self, map: &[Option<usize>]) -> Monomial {
        let exps: SmallVec<[Exponent; 16]> = map
            .iter()
            .map(|m| m.map_or(0, |j| self.exps[j]))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }
}

/// Monomial orders. `Block(k)` eliminates the first `k` variables and uses
/// grevlex inside each block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Block(usize),
}


impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => s
                .strip_prefix("block:")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::Block)
                .ok_or_else(|| format!("unknown monomial order `{s}`")),
        }
    }
}

fn grevlex_slice(a: &[Exponent], b: &[Exponent], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_slice(&a.exps, &b.exps, a.deg, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block(k) => {
                let k = k.min(a.exps.len());
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let da1: u32 = a1.iter().map(|&e| e as u32).sum();
                let db1: u32 = b1.iter().map(|&e| e as u32).sum();
                match grevlex_slice(a1, b1, da1, db1) {
                    Ordering::Equal => grevlex_slice(a2, b2, a.deg - da1, b.deg - db1),
                    o => o,
                }
            }
        }
    }

    /// Whether every monomial involving one of the first `k` variables
    /// dominates every monomial free of them.
    pub fn eliminates(&self, k: usize) -> bool {
        match *self {
            MonomialOrder::Lex => true,
            MonomialOrder::Block(b) => b >= k,
            MonomialOrder::Grevlex => k == 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x^2 > xy > y^2 > xz > yz > z^2 in grevlex
        let seq = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn block_order_eliminates() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 1, 1]);
        assert_eq!(a.lcm(&b), m(&[2, 2, 1]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.quotient(&m(&[2, 3, 1])), Some(m(&[1, 1, 1])));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 3, 1])));
    }

    #[test]
    fn parse_order() {
        assert_eq!("block:2".parse::<MonomialOrder>(), Ok(MonomialOrder::Block(2)));
        assert!("foo".parse::<MonomialOrder>().is_err());
    }
}
