use std::cmp::Reverse;
use std::fmt;

use super::{Coeff, Monomial, RingElement, RingSpec};

pub(crate) fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn monomial_string(names: &[&str], exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}{}", superscript(e))),
        }
    }
    parts.join("")
}

impl RingElement {
    /// Terms in display order: by half-degree, then lexicographically with
    /// higher powers of earlier generators first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, Coeff)> {
        let ring = self.ring();
        let mut terms: Vec<_> = self.terms().iter().map(|(m, c)| (m, *c)).collect();
        terms.sort_by_key(|(m, _)| (ring.half_degree(m), Reverse((*m).clone())));
        terms
    }

    /// Display wrapper writing coefficients `c > modulus / 2` as negatives.
    pub fn signed(&self) -> Signed<'_> {
        Signed(self)
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>, signed: bool) -> fmt::Result {
        let ring: &RingSpec = self.ring();
        let names: Vec<&str> = ring.generators().iter().map(|g| g.name.as_str()).collect();
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let modulus = ring.modulus(m);
            let c = if signed && modulus > 0 && 2 * c > modulus {
                c - modulus
            } else {
                c
            };
            let (neg, mag) = (c < 0, c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = monomial_string(&names, &m.0);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}·{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, false)
    }
}

pub struct Signed<'a>(&'a RingElement);

impl fmt::Display for Signed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_terms(f, true)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{ring_b, ring_m};
    use super::*;

    #[test]
    fn canonical_and_signed_forms() {
        let rb = ring_b();
        let bp = RingElement::var(&rb, "β′");
        let x = &RingElement::one(&rb) - &bp.pow(4);
        assert_eq!(x.to_string(), "1 + 4·β′⁴");
        assert_eq!(x.signed().to_string(), "1 - β′⁴");
        assert_eq!(bp.pow(6).scale(4).to_string(), "4·β′⁶");
        assert_eq!(RingElement::zero(&rb).to_string(), "0");
    }

    #[test]
    fn term_order_is_degree_then_lex() {
        let r = ring_m();
        let b = RingElement::var(&r, "β");
        let g = RingElement::var(&r, "γ");
        let x = &(&g.pow(2) + &(&b * &g).scale(2)) + &(&b.pow(2) + &g);
        assert_eq!(x.to_string(), "γ + β² + 2·βγ + γ²");
    }
}
