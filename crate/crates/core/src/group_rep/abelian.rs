use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// `Z/m_1 × … × Z/m_k`, elements written as exponent tuples.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Config("invariant factors must be positive".into()));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
            .collect()
    }

    /// All exponent tuples, last coordinate fastest.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|e| Character {
                group: self.clone(),
                exponents: e,
            })
            .collect()
    }

    fn lcm(&self) -> u64 {
        self.factors.iter().fold(1, |acc, m| acc.lcm(m))
    }
}

/// A linear character `a ↦ Σ e_j a_j / m_j ∈ Q/Z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    group: AbelianGroup,
    exponents: Vec<u64>,
}

impl Character {
    pub fn new(group: &AbelianGroup, exponents: &[i64]) -> Result<Self> {
        if exponents.len() != group.rank() {
            return Err(Error::Structural(format!(
                "{} exponents for a group of rank {}",
                exponents.len(),
                group.rank()
            )));
        }
        Ok(Self {
            group: group.clone(),
            exponents: group.reduce(exponents),
        })
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Self {
            group: group.clone(),
            exponents: vec![0; group.rank()],
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Numerator over `lcm(m_j)` of the value at `a`, reduced into range.
    fn value_numerator(&self, a: &[u64]) -> u64 {
        let l = self.group.lcm() as u128;
        let s: u128 = self
            .exponents
            .iter()
            .zip(a)
            .zip(&self.group.factors)
            .map(|((&e, &x), &m)| e as u128 * x as u128 * (l / m as u128))
            .sum();
        (s % l) as u64
    }

    /// The value at `a` as a reduced fraction in `[0, 1)`.
    pub fn value(&self, a: &[u64]) -> Ratio<u64> {
        Ratio::new(self.value_numerator(a), self.group.lcm())
    }

    /// Pointwise product, i.e. tensor product of line representations.
    pub fn tensor(&self, other: &Character) -> Result<Character> {
        if self.group != other.group {
            return Err(Error::Structural("characters of different groups".into()));
        }
        let e: Vec<i64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| (a + b) as i64)
            .collect();
        Character::new(&self.group, &e)
    }

    pub fn pow(&self, k: i64) -> Character {
        let e: Vec<i64> = self
            .exponents
            .iter()
            .zip(&self.group.factors)
            .map(|(&x, &m)| (x as i64 * k.rem_euclid(m as i64)) % m as i64)
            .collect();
        Character::new(&self.group, &e).expect("same rank")
    }

    /// `χ ∘ f` for an endomorphism `f` of the group.
    pub fn pullback(&self, f: &Automorphism) -> Result<Character> {
        if f.group != self.group {
            return Err(Error::Structural(
                "automorphism of a different group".into(),
            ));
        }
        let l = self.group.lcm();
        let mut e = Vec::with_capacity(self.group.rank());
        for (k, &m) in self.group.factors.iter().enumerate() {
            let num = self.value_numerator(&f.columns[k]) as u128 * m as u128;
            if !num.is_multiple_of(l as u128) {
                return Err(Error::Internal(
                    "pulled-back character is not defined on the generator order".into(),
                ));
            }
            e.push((num / l as u128) as i64);
        }
        Character::new(&self.group, &e)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .zip(&self.group.factors)
            .map(|(e, m)| format!("{e}/{m}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An automorphism given by the images of the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    group: AbelianGroup,
    /// `columns[j]` is the image of the `j`-th generator.
    columns: Vec<Vec<u64>>,
}

impl Automorphism {
    pub fn new(group: &AbelianGroup, columns: Vec<Vec<i64>>) -> Result<Self> {
        if columns.len() != group.rank() || columns.iter().any(|c| c.len() != group.rank()) {
            return Err(Error::Structural(
                "matrix shape does not match the group".into(),
            ));
        }
        let columns: Vec<Vec<u64>> = columns.iter().map(|c| group.reduce(c)).collect();
        // image of e_j must be killed by m_j
        for (col, &mj) in columns.iter().zip(&group.factors) {
            for (&x, &mi) in col.iter().zip(&group.factors) {
                if !(x as u128 * mj as u128).is_multiple_of(mi as u128) {
                    return Err(Error::Contract(
                        "matrix does not define a homomorphism".into(),
                    ));
                }
            }
        }
        let f = Self {
            group: group.clone(),
            columns,
        };
        if !f.is_bijective() {
            return Err(Error::Contract("homomorphism is not invertible".into()));
        }
        Ok(f)
    }

    pub fn identity(group: &AbelianGroup) -> Self {
        let columns = (0..group.rank())
            .map(|j| (0..group.rank()).map(|i| u64::from(i == j)).collect())
            .collect();
        Self {
            group: group.clone(),
            columns,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        let mut out = vec![0u128; self.group.rank()];
        for (col, &x) in self.columns.iter().zip(a) {
            for (o, &c) in out.iter_mut().zip(col) {
                *o += c as u128 * x as u128;
            }
        }
        out.iter()
            .zip(&self.group.factors)
            .map(|(&o, &m)| (o % m as u128) as u64)
            .collect()
    }

    fn is_bijective(&self) -> bool {
        // kernel is trivial iff the only element sent to 0 is 0
        self.group
            .elements()
            .iter()
            .filter(|a| self.apply(a).iter().all(|&x| x == 0))
            .count()
            == 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Automorphism {
            group: self.group.clone(),
            columns,
        }
    }

    pub fn pow(&self, k: u64) -> Automorphism {
        let mut out = Automorphism::identity(&self.group);
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Automorphism::identity(&self.group)
    }

    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut f = self.clone();
        while !f.is_identity() {
            f = self.compose(&f);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> Automorphism {
        self.pow(self.order() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> AbelianGroup {
        AbelianGroup::new(vec![5, 25]).unwrap()
    }

    #[test]
    fn exact_values() {
        let g = m();
        let theta = Character::new(&g, &[1, 0]).unwrap();
        let phi = Character::new(&g, &[0, 1]).unwrap();
        assert_eq!(theta.value(&[2, 7]), Ratio::new(2, 5));
        assert_eq!(phi.value(&[2, 7]), Ratio::new(7, 25));
        assert_eq!(
            theta.tensor(&phi).unwrap().value(&[1, 1]),
            Ratio::new(6, 25)
        );
        assert_eq!(phi.pow(25), Character::trivial(&g));
        assert_eq!(phi.pow(-1).exponents(), &[0, 24]);
    }

    #[test]
    fn automorphism_checks() {
        let g = m();
        // e_1 (order 5) cannot go to an element of order 25
        assert!(Automorphism::new(&g, vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(Automorphism::new(&g, vec![vec![1, 0], vec![0, 5]]).is_err());
        let f = Automorphism::new(&g, vec![vec![1, 5], vec![1, 1]]).unwrap();
        assert_eq!(f.order(), 5);
        assert!(f.compose(&f.inverse()).is_identity());
    }

    #[test]
    fn pullback_along_identity() {
        let g = m();
        let chi = Character::new(&g, &[3, 11]).unwrap();
        assert_eq!(chi.pullback(&Automorphism::identity(&g)).unwrap(), chi);
    }

    #[test]
    fn pullback_matches_pointwise_composition() {
        let g = m();
        let f = Automorphism::new(&g, vec![vec![1, 5], vec![1, 1]]).unwrap();
        for chi in g.characters().into_iter().step_by(7) {
            let pulled = chi.pullback(&f).unwrap();
            for a in g.elements().into_iter().step_by(11) {
                assert_eq!(pulled.value(&a), chi.value(&f.apply(&a)));
            }
        }
    }
}
