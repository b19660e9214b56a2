//! Truncated graded polynomial quotient rings `Z[x_1, .., x_k] / (t_1 x_1, .., t_k x_k)`.
//!
//! All generators sit in even cohomological degree, so degrees are stored as
//! half-degrees and the rings are commutative. Every monomial other than `1`
//! carries a finite coefficient group `Z / gcd{t_i : x_i divides m}`; the
//! constant monomial is an unrestricted integer. Elements are kept in normal
//! form: coefficients in `[0, modulus)`, no zero terms, nothing above the
//! truncation bound.

mod display;
mod map;
mod subgroup;

pub(crate) use display::{monomial_string, superscript};
pub use map::RingMap;
pub use subgroup::{subring_component, GradedSubgroup};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Coefficient type for integral classes.
pub type Coeff = i128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub half_degree: u32,
    pub torsion: u64,
}

impl Generator {
    pub fn new(name: impl Into<String>, half_degree: u32, torsion: u64) -> Self {
        Self {
            name: name.into(),
            half_degree,
            torsion,
        }
    }
}

/// Presentation of a truncated quotient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    generators: Vec<Generator>,
    max_half_degree: u32,
    prime: u64,
}

fn prime_power_base(t: u64) -> Option<u64> {
    if t < 2 {
        return None;
    }
    let mut q = 2;
    while q * q <= t && !t.is_multiple_of(q) {
        q += 1;
    }
    let base = if t.is_multiple_of(q) { q } else { t };
    let mut r = t;
    while r.is_multiple_of(base) {
        r /= base;
    }
    (r == 1).then_some(base)
}

impl RingSpec {
    pub fn new(generators: Vec<Generator>, max_half_degree: u32) -> Result<Arc<Self>> {
        if generators.is_empty() {
            return Err(Error::Config("a ring needs at least one generator".into()));
        }
        let mut prime = None;
        for g in &generators {
            if g.half_degree == 0 {
                return Err(Error::Config(format!(
                    "generator {} must have positive degree",
                    g.name
                )));
            }
            if g.half_degree > max_half_degree {
                return Err(Error::Config(format!(
                    "generator {} lies above the truncation bound {}",
                    g.name, max_half_degree
                )));
            }
            let base = prime_power_base(g.torsion).ok_or_else(|| {
                Error::Config(format!(
                    "torsion {} of generator {} is not a prime power",
                    g.torsion, g.name
                ))
            })?;
            match prime {
                None => prime = Some(base),
                Some(q) if q != base => {
                    return Err(Error::Config(format!(
                        "torsion orders mix the primes {q} and {base}"
                    )))
                }
                _ => {}
            }
        }
        Ok(Arc::new(Self {
            generators,
            max_half_degree,
            prime: prime.expect("non-empty generator list"),
        }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn max_half_degree(&self) -> u32 {
        self.max_half_degree
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn half_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.half_degree)
            .sum()
    }

    /// Order of the coefficient group at `m`; zero for the constant monomial.
    pub fn modulus(&self, m: &Monomial) -> Coeff {
        m.0.iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(_, g)| g.torsion as Coeff)
            .fold(0, |acc: Coeff, t| acc.gcd(&t))
    }

    /// All monomials of exactly the given half-degree, in lexicographic order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn go(
            gens: &[Generator],
            idx: usize,
            rest: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if idx == gens.len() {
                if rest == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let h = gens[idx].half_degree;
            for e in (0..=rest / h).rev() {
                cur.push(e);
                go(gens, idx + 1, rest - e * h, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if d <= self.max_half_degree {
            go(&self.generators, 0, d, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// Exponent vector, one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// An element of a [`RingSpec`] in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Arc<RingSpec>,
    terms: BTreeMap<Monomial, Coeff>,
}

/// Reduces raw terms into normal form.
pub fn normalize<I>(raw_terms: I, ring: &Arc<RingSpec>) -> Result<RingElement>
where
    I: IntoIterator<Item = (Monomial, Coeff)>,
{
    let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
    for (m, c) in raw_terms {
        if m.0.len() != ring.rank() {
            return Err(Error::Structural(format!(
                "monomial with {} exponents in a ring with {} generators",
                m.0.len(),
                ring.rank()
            )));
        }
        if ring.half_degree(&m) > ring.max_half_degree {
            continue;
        }
        *acc.entry(m).or_insert(0) += c;
    }
    let terms = acc
        .into_iter()
        .filter_map(|(m, c)| {
            let modulus = ring.modulus(&m);
            let c = if modulus > 0 {
                c.rem_euclid(modulus)
            } else {
                c
            };
            (c != 0).then_some((m, c))
        })
        .collect();
    Ok(RingElement {
        ring: Arc::clone(ring),
        terms,
    })
}

impl RingElement {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Self {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<RingSpec>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.rank()), c)
    }

    pub fn generator(ring: &Arc<RingSpec>, i: usize) -> Self {
        Self::monomial(ring, Monomial::generator(ring.rank(), i), 1)
    }

    /// The generator with the given name; panics if there is none.
    pub fn var(ring: &Arc<RingSpec>, name: &str) -> Self {
        let i = ring
            .generator_index(name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        Self::generator(ring, i)
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Monomial, c: Coeff) -> Self {
        normalize([(m, c)], ring).expect("monomial built for this ring")
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coeff> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` if every term has half-degree `d`; `None` for mixed degrees
    /// and for zero, which is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| self.ring.half_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| self.ring.half_degree(m) == d)
    }

    pub fn homogeneous_component(&self, d: u32) -> RingElement {
        RingElement {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.half_degree(m) == d)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Structural(
                "operands live in different rings".to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        normalize(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (m.clone(), *c)),
            &self.ring,
        )
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        let d = self.ring.max_half_degree;
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            let da = self.ring.half_degree(ma);
            for (mb, cb) in &other.terms {
                if da + self.ring.half_degree(mb) <= d {
                    raw.push((ma.mul(mb), ca * cb));
                }
            }
        }
        normalize(raw, &self.ring)
    }

    pub fn scale(&self, k: Coeff) -> RingElement {
        normalize(
            self.terms.iter().map(|(m, c)| (m.clone(), c * k)),
            &self.ring,
        )
        .expect("terms already belong to this ring")
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut result = RingElement::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(-1)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs)
            .expect("ring mismatch in multiplication")
    }
}

impl std::iter::Sum for RingElement {
    fn sum<I: Iterator<Item = RingElement>>(mut iter: I) -> RingElement {
        let first = iter.next().expect("sum of an empty iterator has no ring");
        iter.fold(first, |acc, x| &acc + &x)
    }
}
