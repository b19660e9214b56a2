use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graded_ring::superscript;

/// Exponents of `v_1, v_2, …` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VMono(Vec<u32>);

impl VMono {
    pub fn one() -> Self {
        VMono(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        VMono(exps)
    }

    /// `v_i^e`, with `v_1` at `i = 1`.
    pub fn v(i: usize, e: u32) -> Self {
        let mut exps = vec![0; i];
        exps[i - 1] = e;
        VMono::new(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &VMono) -> VMono {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        VMono(exps)
    }

    /// `Σ α_i (p^i - 1)`, i.e. minus the half-degree.
    pub fn codegree(&self, p: u64) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| a as u64 * (p.pow(i as u32 + 1) - 1))
            .sum()
    }
}

/// Polynomial in `v_1, …, v_K` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPoly {
    terms: BTreeMap<VMono, BigRational>,
}

impl VPoly {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(VMono::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn term(m: VMono, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (VMono, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<VMono, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: VMono, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &VPoly) -> VPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VPoly) -> VPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &VPoly) -> VPoly {
        let mut out = VPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> VPoly {
        if k.is_zero() {
            return VPoly::zero();
        }
        VPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> VPoly {
        let mut out = VPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Every coefficient an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficient of the `v`-free monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&VMono::one())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// For an integral polynomial: membership in the ideal `(p, v_1, v_2, …)`.
    pub fn in_ideal_i(&self, p: u64) -> bool {
        let c = self.constant_term();
        c.is_integer() && (c.to_integer() % BigInt::from(p)).is_zero()
    }

    pub fn max_v_index(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono: String =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| match e {
                        1 => format!("v{}", j + 1),
                        _ => format!("v{}{}", j + 1, superscript(e)),
                    })
                    .collect::<Vec<_>>()
                    .join("");
            let neg = c.is_negative();
            let mag = fmt_rational(&c.abs());
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (mono.is_empty(), mag.as_str()) {
                (true, _) => write!(f, "{mag}")?,
                (false, "1") => write!(f, "{mono}")?,
                (false, _) => write!(f, "{mag}·{mono}")?,
            }
        }
        Ok(())
    }
}
