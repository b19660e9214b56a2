use std::sync::Arc;

use super::{Coeff, RingElement, RingSpec};
use crate::error::{Error, Result};

/// The additive subgroup of one graded piece spanned by a list of classes.
#[derive(Debug, Clone)]
pub struct GradedSubgroup {
    ring: Arc<RingSpec>,
    half_degree: u32,
    generators: Vec<RingElement>,
}

impl GradedSubgroup {
    pub fn new(
        ring: &Arc<RingSpec>,
        half_degree: u32,
        generators: Vec<RingElement>,
    ) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::Structural("generator from another ring".into()));
            }
            if !g.is_homogeneous_of(half_degree) {
                return Err(Error::Contract(format!(
                    "generator {g} is not homogeneous of half-degree {half_degree}"
                )));
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            half_degree,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// The whole graded piece of the ring in this degree.
    pub fn full_component(ring: &Arc<RingSpec>, half_degree: u32) -> Self {
        let generators = ring
            .monomials_of_degree(half_degree)
            .into_iter()
            .map(|m| RingElement::monomial(ring, m, 1))
            .collect();
        Self::new(ring, half_degree, generators).expect("monomials are homogeneous")
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn half_degree(&self) -> u32 {
        self.half_degree
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Decides whether `x` is an integer combination of the generators.
    ///
    /// Each monomial of the degree is a coordinate; the lattice spanned by
    /// the generator vectors together with `modulus · e_m` for every
    /// coordinate is brought to row echelon form over `Z`, and `x` is
    /// reduced against it.
    pub fn contains(&self, x: &RingElement) -> Result<bool> {
        if x.ring() != &self.ring {
            return Err(Error::Structural("element from another ring".into()));
        }
        if !x.is_homogeneous_of(self.half_degree) {
            return Err(Error::Contract(format!(
                "{x} is not homogeneous of half-degree {}",
                self.half_degree
            )));
        }
        let monomials = self.ring.monomials_of_degree(self.half_degree);
        let to_vec = |e: &RingElement| -> Vec<Coeff> {
            monomials.iter().map(|m| e.coefficient(m)).collect()
        };
        let mut rows: Vec<Vec<Coeff>> = self.generators.iter().map(to_vec).collect();
        for (j, m) in monomials.iter().enumerate() {
            let modulus = self.ring.modulus(m);
            if modulus > 0 {
                let mut row = vec![0; monomials.len()];
                row[j] = modulus;
                rows.push(row);
            }
        }
        let echelon = row_echelon(rows, monomials.len());
        Ok(reduces_to_zero(&echelon, to_vec(x)))
    }

    /// Same subgroup of the same graded piece.
    pub fn same_as(&self, other: &GradedSubgroup) -> Result<bool> {
        if self.half_degree != other.half_degree {
            return Ok(false);
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Row echelon form over `Z` using gcd row operations. Rows of the result
/// have strictly increasing pivot columns and positive pivots.
fn row_echelon(mut rows: Vec<Vec<Coeff>>, ncols: usize) -> Vec<(usize, Vec<Coeff>)> {
    let mut out = Vec::new();
    for col in 0..ncols {
        loop {
            rows.retain(|r| r.iter().any(|&c| c != 0));
            let pivot = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| r[col].abs())
                .map(|(i, _)| i);
            let Some(pi) = pivot else { break };
            let prow = rows[pi].clone();
            let mut done = true;
            for (i, r) in rows.iter_mut().enumerate() {
                if i == pi || r[col] == 0 {
                    continue;
                }
                let q = r[col].div_euclid(prow[col]);
                for (a, b) in r.iter_mut().zip(&prow) {
                    *a -= q * b;
                }
                if r[col] != 0 {
                    done = false;
                }
            }
            if done {
                let mut row = rows.swap_remove(pi);
                if row[col] < 0 {
                    row.iter_mut().for_each(|c| *c = -*c);
                }
                out.push((col, row));
                break;
            }
        }
    }
    out
}

fn reduces_to_zero(echelon: &[(usize, Vec<Coeff>)], mut x: Vec<Coeff>) -> bool {
    for (col, row) in echelon {
        if x[*col] % row[*col] != 0 {
            return false;
        }
        let q = x[*col] / row[*col];
        for (a, b) in x.iter_mut().zip(row) {
            *a -= q * b;
        }
    }
    x.iter().all(|&c| c == 0)
}

/// The degree-`d` piece of the subring generated by homogeneous classes:
/// spanned by all products of generators whose degrees add up to `d`.
pub fn subring_component(
    ring: &Arc<RingSpec>,
    gens: &[RingElement],
    d: u32,
) -> Result<GradedSubgroup> {
    let mut graded = Vec::new();
    for g in gens {
        if g.ring() != ring {
            return Err(Error::Structural("generators from different rings".into()));
        }
        if g.is_zero() {
            continue;
        }
        match g.homogeneous_degree() {
            Some(0) => return Err(Error::Contract(format!("generator {g} has degree zero"))),
            Some(k) => graded.push((k, g.clone())),
            None => return Err(Error::Contract(format!("generator {g} is not homogeneous"))),
        }
    }

    fn go(
        gens: &[(u32, RingElement)],
        start: usize,
        rest: u32,
        acc: &RingElement,
        out: &mut Vec<RingElement>,
    ) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..gens.len() {
            let (k, g) = &gens[i];
            if *k <= rest {
                let next = acc * g;
                if !next.is_zero() {
                    go(gens, i, rest - k, &next, out);
                }
            }
        }
    }

    let mut products = Vec::new();
    if d <= ring.max_half_degree() {
        go(&graded, 0, d, &RingElement::one(ring), &mut products);
    }
    products.sort_by(|a, b| a.sorted_terms().cmp(&b.sorted_terms()));
    products.dedup();
    GradedSubgroup::new(ring, d, products)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{ring_b, ring_m};
    use super::*;

    #[test]
    fn subring_components_of_semigroup_four_five() {
        let r = ring_b();
        let b = RingElement::var(&r, "β′");
        let gens = [b.pow(4), b.pow(5)];
        assert!(subring_component(&r, &gens, 6).unwrap().is_zero());
        let nine = subring_component(&r, &gens, 9).unwrap();
        assert!(nine
            .same_as(&GradedSubgroup::full_component(&r, 9))
            .unwrap());
        let zero = subring_component(&r, &gens, 0).unwrap();
        assert_eq!(zero.generators(), &[RingElement::one(&r)]);
    }

    #[test]
    fn membership_examples() {
        let r = ring_b();
        let b = RingElement::var(&r, "β′");
        let s = GradedSubgroup::new(&r, 4, vec![b.pow(4)]).unwrap();
        assert!(s.contains(&b.pow(4).scale(3)).unwrap());
        let empty = GradedSubgroup::new(&r, 6, vec![]).unwrap();
        assert!(!empty.contains(&b.pow(6)).unwrap());
        assert!(empty.contains(&RingElement::zero(&r)).unwrap());

        let m = ring_m();
        let beta = RingElement::var(&m, "β");
        let gamma = RingElement::var(&m, "γ");
        let s = GradedSubgroup::new(&m, 2, vec![&beta.pow(2) + &(&beta * &gamma)]).unwrap();
        assert!(!s.contains(&beta.pow(2)).unwrap());
        assert!(s
            .contains(&(&beta.pow(2) + &(&beta * &gamma)).scale(3))
            .unwrap());
    }

    #[test]
    fn membership_degree_mismatch_is_contract_error() {
        let r = ring_b();
        let b = RingElement::var(&r, "β′");
        let s = GradedSubgroup::new(&r, 4, vec![b.pow(4)]).unwrap();
        assert!(matches!(s.contains(&b.pow(5)), Err(Error::Contract(_))));
    }

    #[test]
    fn non_homogeneous_generator_rejected() {
        let r = ring_b();
        let b = RingElement::var(&r, "β′");
        let mixed = &b + &b.pow(2);
        assert!(matches!(
            subring_component(&r, &[mixed], 3),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn torsion_relations_enter_membership() {
        // 25γ² = 0 and 5βγ = 0: the class 5γ² generates a subgroup of order 5
        let m = ring_m();
        let gamma = RingElement::var(&m, "γ");
        let s = GradedSubgroup::new(&m, 2, vec![gamma.pow(2).scale(5)]).unwrap();
        assert!(s.contains(&gamma.pow(2).scale(20)).unwrap());
        assert!(!s.contains(&gamma.pow(2)).unwrap());
        let t = GradedSubgroup::new(&m, 2, vec![gamma.pow(2).scale(7)]).unwrap();
        assert!(t.contains(&gamma.pow(2)).unwrap());
    }
}
