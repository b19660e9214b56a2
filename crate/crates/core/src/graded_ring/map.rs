use std::sync::Arc;

use super::{RingElement, RingSpec};
use crate::error::{Error, Result};

/// A degree-preserving ring homomorphism given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    source: Arc<RingSpec>,
    target: Arc<RingSpec>,
    images: Vec<RingElement>,
}

impl RingMap {
    /// Checks that each image is homogeneous of its generator's degree and is
    /// killed by that generator's torsion order.
    pub fn new(
        source: &Arc<RingSpec>,
        target: &Arc<RingSpec>,
        images: Vec<RingElement>,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Structural(format!(
                "{} images given for {} generators",
                images.len(),
                source.rank()
            )));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if img.ring() != target {
                return Err(Error::Structural(format!(
                    "image of {} is not in the target ring",
                    g.name
                )));
            }
            if !img.is_homogeneous_of(g.half_degree) {
                return Err(Error::Contract(format!(
                    "image {img} of {} is not homogeneous of half-degree {}",
                    g.name, g.half_degree
                )));
            }
            if !img.scale(g.torsion as i128).is_zero() {
                return Err(Error::Contract(format!(
                    "image {img} of {} is not killed by {}",
                    g.name, g.torsion
                )));
            }
        }
        Ok(Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    pub fn identity(ring: &Arc<RingSpec>) -> Self {
        let images = (0..ring.rank())
            .map(|i| RingElement::generator(ring, i))
            .collect();
        Self::new(ring, ring, images).expect("identity respects relations")
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement> {
        if x.ring() != &self.source {
            return Err(Error::Structural(
                "element is not in the source ring of the map".into(),
            ));
        }
        // powers[i][e] = images[i]^e, filled lazily up to the largest exponent used
        let mut powers: Vec<Vec<RingElement>> = self
            .images
            .iter()
            .map(|img| vec![RingElement::one(&self.target), img.clone()])
            .collect();
        let mut acc = RingElement::zero(&self.target);
        for (m, &c) in x.terms() {
            let mut term = RingElement::constant(&self.target, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &self.images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
                if term.is_zero() {
                    break;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &RingMap) -> Result<RingMap> {
        if first.target != self.source {
            return Err(Error::Structural("maps are not composable".into()));
        }
        let images = first
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>>>()?;
        RingMap::new(&first.source, &self.target, images)
    }

    /// The `k`-fold composite of an endomorphism with itself.
    pub fn iterate(&self, k: u32) -> Result<RingMap> {
        if self.source != self.target {
            return Err(Error::Structural(
                "only endomorphisms can be iterated".into(),
            ));
        }
        let mut out = RingMap::identity(&self.source);
        for _ in 0..k {
            out = self.after(&out)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{ring_b, ring_m};
    use super::*;

    fn restriction() -> RingMap {
        let (m, b) = (ring_m(), ring_b());
        RingMap::new(
            &m,
            &b,
            vec![RingElement::var(&b, "β′"), RingElement::zero(&b)],
        )
        .unwrap()
    }

    #[test]
    fn conjugation_example() {
        let r = ring_m();
        let beta = RingElement::var(&r, "β");
        let gamma = RingElement::var(&r, "γ");
        // (p, n, ε) = (5, 4, 1): β ↦ β + 5γ, γ ↦ γ + β
        let conj = RingMap::new(&r, &r, vec![&beta + &gamma.scale(5), &gamma + &beta]).unwrap();
        let img = conj.apply(&gamma.pow(2)).unwrap();
        let expected = &(&gamma.pow(2) + &(&beta * &gamma).scale(2)) + &beta.pow(2);
        assert_eq!(img, expected);
        // order p
        assert_eq!(conj.iterate(5).unwrap(), RingMap::identity(&r));
    }

    #[test]
    fn restriction_examples() {
        let res = restriction();
        let r = ring_m();
        let beta = RingElement::var(&r, "β");
        let gamma = RingElement::var(&r, "γ");
        assert!(res
            .apply(&(&gamma.pow(4) * &beta.pow(2)))
            .unwrap()
            .is_zero());
        let bp = RingElement::var(res.target(), "β′");
        assert_eq!(res.apply(&beta.pow(3)).unwrap(), bp.pow(3));
    }

    #[test]
    fn rejects_maps_breaking_relations() {
        let (m, b) = (ring_m(), ring_b());
        // γ has order 25 but β′ only 5: fine. The reverse direction is not.
        let bad = RingMap::new(&b, &m, vec![RingElement::var(&m, "γ")]);
        assert!(matches!(bad, Err(Error::Contract(_))));
        let inhomog = RingMap::new(
            &b,
            &b,
            vec![&RingElement::var(&b, "β′") + &RingElement::one(&b)],
        );
        assert!(matches!(inhomog, Err(Error::Contract(_))));
    }
}
