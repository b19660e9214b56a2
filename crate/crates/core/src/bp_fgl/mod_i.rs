use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::series::TruncSeries;
use crate::error::{Error, Result};
use crate::graded_ring::{monomial_string, Monomial, RingElement, RingSpec};

/// Image of a series after killing `p, v_1, v_2, …`: a truncated
/// polynomial over `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModIClass {
    p: u64,
    names: Vec<String>,
    max_degree: u32,
    terms: BTreeMap<Vec<u32>, u64>,
}

/// Drops every term involving some `v_i` and reduces the rest mod `p`.
/// Coefficients must be integral.
pub fn reduce_mod_i(s: &TruncSeries, p: u64) -> Result<ModIClass> {
    let mut terms = BTreeMap::new();
    for (e, c) in s.terms() {
        if !c.is_integral() {
            return Err(Error::Internal(format!(
                "non-integral coefficient {c} reached reduction mod I"
            )));
        }
        let r =
            (c.constant_term().to_integer() % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
        let r = r.to_u64().expect("residue below p");
        if r != 0 {
            terms.insert(e.clone(), r);
        }
    }
    Ok(ModIClass {
        p,
        names: s.names().iter().map(|n| n.to_string()).collect(),
        max_degree: s.max_degree(),
        terms,
    })
}

impl ModIClass {
    /// `c · x^e` in the given variables.
    pub fn monomial(p: u64, names: &[&str], max_degree: u32, exps: Vec<u32>, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        let r = c.rem_euclid(p as i64) as u64;
        if r != 0 && exps.iter().sum::<u32>() <= max_degree {
            terms.insert(exps, r);
        }
        Self {
            p,
            names: names.iter().map(|s| s.to_string()).collect(),
            max_degree,
            terms,
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, other: &ModIClass) -> Result<()> {
        if self.p != other.p || self.names != other.names || self.max_degree != other.max_degree {
            return Err(Error::Contract("classes live in different rings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModIClass) -> Result<ModIClass> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            let r = (out.terms.get(e).copied().unwrap_or(0) + c) % self.p;
            if r == 0 {
                out.terms.remove(e);
            } else {
                out.terms.insert(e.clone(), r);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ModIClass) -> Result<ModIClass> {
        self.compatible(other)?;
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() <= self.max_degree {
                    let slot = acc.entry(e).or_insert(0);
                    *slot = (*slot + ca * cb) % self.p;
                }
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(ModIClass {
            terms: acc,
            ..self.clone()
        })
    }

    /// Part of total degree `d`.
    pub fn component(&self, d: u32) -> ModIClass {
        ModIClass {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
            ..self.clone()
        }
    }

    /// The same class in an integral ring whose positive-degree monomials
    /// all have modulus `p`.
    pub fn to_ring_element(&self, ring: &Arc<RingSpec>) -> Result<RingElement> {
        crate::graded_ring::normalize(
            self.terms
                .iter()
                .map(|(e, &c)| (Monomial(e.clone()), c as i128)),
            ring,
        )
    }

    /// Coefficients `c > p/2` shown as negatives.
    pub fn signed_string(&self) -> String {
        self.render(true)
    }

    fn render(&self, signed: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        let mut out = String::new();
        for (i, e) in keys.into_iter().enumerate() {
            let c = self.terms[e] as i64;
            let c = if signed && 2 * c > self.p as i64 {
                c - self.p as i64
            } else {
                c
            };
            let mono = monomial_string(&names, e);
            let (neg, mag) = (c < 0, c.abs());
            out.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            out.push_str(&match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}·{mono}"),
            });
        }
        out
    }
}

impl fmt::Display for ModIClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bp_fgl::build_fgl;
    use crate::bp_fgl::vpoly::VPoly;

    #[test]
    fn law_reduces_to_addition() {
        let ctx = build_fgl(5, 8, 2).unwrap();
        let r = reduce_mod_i(ctx.law(), 5).unwrap();
        let x = ModIClass::monomial(5, &["x", "y"], 8, vec![1, 0], 1);
        let y = ModIClass::monomial(5, &["x", "y"], 8, vec![0, 1], 1);
        assert_eq!(r, x.add(&y).unwrap());
    }

    #[test]
    fn multiples_of_p_vanish() {
        let x = TruncSeries::var(&["x"], 8, 0);
        let px = x.scale_vpoly(&VPoly::integer(5));
        assert!(reduce_mod_i(&px, 5).unwrap().is_zero());
    }

    #[test]
    fn non_integral_is_internal_error() {
        let x = TruncSeries::var(&["x"], 8, 0);
        let half = x.scale(&num_rational::BigRational::new(1.into(), 2.into()));
        assert!(matches!(reduce_mod_i(&half, 5), Err(Error::Internal(_))));
    }

    #[test]
    fn display_forms() {
        let c = ModIClass::monomial(5, &["β′"], 8, vec![6], -1);
        assert_eq!(c.to_string(), "4·β′⁶");
        assert_eq!(c.signed_string(), "-β′⁶");
    }
}
