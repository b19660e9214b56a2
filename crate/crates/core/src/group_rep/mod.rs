//! The groups `G(n, ε) = M ⋊ ⟨A⟩` with `M = ⟨B⟩ × ⟨C⟩ ≅ C_p × C_{p^{n-2}}`,
//! their characters, and their irreducible representations.
//!
//! The automorphism `α` by which `A` acts on `M` is pinned by its action on
//! characters: `A · θ = θ φ^{p^{n-3}}` and `A · φ = φ θ^ε`, where `θ` and
//! `φ` are the characters picking out the `B` and `C` exponents. That
//! statement does not depend on a commutator convention, so `α` is built
//! from it and the constructor checks the result.

mod abelian;
mod census;

pub use abelian::{AbelianGroup, Automorphism, Character};
pub use census::census_report;

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let (mut b, mut e, mut acc) = (base % m, exp, 1 % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Euler's criterion; `x` must be prime to `p`.
pub fn is_quadratic_residue(x: u64, p: u64) -> bool {
    pow_mod(x, (p - 1) / 2, p) == 1
}

/// Parameters of `G(n, ε)` together with the truncation used for its rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GnEpsilonConfig {
    pub p: u64,
    pub n: u32,
    /// Reduced into `1..p`.
    pub epsilon: u64,
    pub max_half_degree: u32,
}

impl GnEpsilonConfig {
    /// Accepts `ε = 1` or a quadratic non-residue mod `p`.
    pub fn new(p: u64, n: u32, epsilon: i64, max_half_degree: u32) -> Result<Self> {
        let cfg = Self::with_any_epsilon(p, n, epsilon, max_half_degree)?;
        if cfg.epsilon != 1 && is_quadratic_residue(cfg.epsilon, p) {
            return Err(Error::Config(format!(
                "epsilon = {} is a nonzero square mod {p} other than 1; use 1 or a non-residue",
                cfg.epsilon
            )));
        }
        Ok(cfg)
    }

    /// Like [`GnEpsilonConfig::new`] but allows any `ε` prime to `p`. A square
    /// `ε ≠ 1` still defines a group, isomorphic to `G(n, 1)`.
    pub fn with_any_epsilon(p: u64, n: u32, epsilon: i64, max_half_degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("p = {p} is not prime")));
        }
        if p < 5 {
            return Err(Error::Config(format!("p must be >= 5 (got {p})")));
        }
        if n < 4 {
            return Err(Error::Config(format!("n must be >= 4 (got {n})")));
        }
        let eps = epsilon.rem_euclid(p as i64) as u64;
        if eps == 0 {
            return Err(Error::Config(format!(
                "epsilon = {epsilon} is divisible by p = {p}"
            )));
        }
        if (max_half_degree as u64) < p + 2 {
            return Err(Error::Config(format!(
                "max half-degree {max_half_degree} is below p + 2 = {}",
                p + 2
            )));
        }
        Ok(Self {
            p,
            n,
            epsilon: eps,
            max_half_degree,
        })
    }

    /// Default truncation `2p + 4` for the integral computations.
    pub fn default_max_half_degree(p: u64) -> u32 {
        (2 * p + 4) as u32
    }
}

/// Which subgroup of `M` a restriction targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupOfM {
    /// `⟨B⟩`, embedded as the first invariant factor.
    B,
    M,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Irrep {
    /// Line representation `A^i m ↦ (a_exponent · i)/p + χ(m)` with `χ`
    /// an invariant character of `M`.
    OneDim { a_exponent: u64, on_m: Character },
    /// `Ind_M^G(χ)` for a representative of a free orbit.
    Induced(Character),
}

impl Irrep {
    pub fn dimension(&self, p: u64) -> u64 {
        match self {
            Irrep::OneDim { .. } => 1,
            Irrep::Induced(_) => p,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SemidirectPGroup {
    cfg: GnEpsilonConfig,
    base: AbelianGroup,
    alpha: Automorphism,
    alpha_inv: Automorphism,
}

/// Builds `G(n, ε)` and checks that `α` acts on `θ`, `φ` as prescribed and has order `p`.
pub fn build_gne(cfg: &GnEpsilonConfig) -> Result<SemidirectPGroup> {
    let p = cfg.p;
    let pn2 = p.pow(cfg.n - 2);
    let pn3 = (p.pow(cfg.n - 3)) as i64;
    let eps = cfg.epsilon as i64;
    let base = AbelianGroup::new(vec![p, pn2])?;
    // α⁻¹(B) = B C^{ε p^{n-3}},  α⁻¹(C) = B C: then θ∘α⁻¹ = θ φ^{p^{n-3}} and φ∘α⁻¹ = φ θ^ε.
    let alpha_inv = Automorphism::new(&base, vec![vec![1, eps * pn3], vec![1, 1]])
        .map_err(|e| Error::Internal(format!("conjugation matrix rejected: {e}")))?;
    let alpha = alpha_inv.inverse();
    let g = SemidirectPGroup {
        cfg: *cfg,
        base,
        alpha,
        alpha_inv,
    };

    if !g.alpha.pow(p).is_identity() {
        return Err(Error::Internal("alpha^p is not the identity".into()));
    }
    let (theta, phi) = (g.theta(), g.phi());
    let want_theta = theta.tensor(&phi.pow(pn3))?;
    let want_phi = phi.tensor(&theta.pow(eps))?;
    if g.dual_action(1, &theta)? != want_theta || g.dual_action(1, &phi)? != want_phi {
        return Err(Error::Internal(
            "action of A on characters disagrees with θ ↦ θφ^(p^(n-3)), φ ↦ φθ^ε".into(),
        ));
    }
    Ok(g)
}

impl SemidirectPGroup {
    pub fn config(&self) -> &GnEpsilonConfig {
        &self.cfg
    }

    pub fn p(&self) -> u64 {
        self.cfg.p
    }

    pub fn base(&self) -> &AbelianGroup {
        &self.base
    }

    /// The automorphism `m ↦ A m A⁻¹` of `M`.
    pub fn alpha(&self) -> &Automorphism {
        &self.alpha
    }

    pub fn order(&self) -> u64 {
        self.cfg.p * self.base.order()
    }

    pub fn theta(&self) -> Character {
        Character::new(&self.base, &[1, 0]).expect("rank 2")
    }

    pub fn phi(&self) -> Character {
        Character::new(&self.base, &[0, 1]).expect("rank 2")
    }

    pub fn subgroup(&self, k: SubgroupOfM) -> AbelianGroup {
        match k {
            SubgroupOfM::B => AbelianGroup::new(vec![self.cfg.p]).expect("p > 0"),
            SubgroupOfM::M => self.base.clone(),
        }
    }

    /// `A^i · χ = χ ∘ α^{-i}`.
    pub fn dual_action(&self, i: i64, chi: &Character) -> Result<Character> {
        let steps = i.rem_euclid(self.cfg.p as i64) as u64;
        let mut out = chi.clone();
        for _ in 0..steps {
            out = out.pullback(&self.alpha_inv)?;
        }
        Ok(out)
    }

    /// Orbits of the characters of `M` under `⟨A⟩`, each listed as
    /// `χ, A·χ, A²·χ, …`, ordered by their smallest member.
    pub fn character_orbits(&self) -> Result<Vec<Vec<Character>>> {
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for chi in self.base.characters() {
            if seen.contains(&chi) {
                continue;
            }
            let mut orbit = vec![chi.clone()];
            let mut cur = self.dual_action(1, &chi)?;
            while cur != chi {
                orbit.push(cur.clone());
                cur = self.dual_action(1, &cur)?;
            }
            if !self.cfg.p.is_multiple_of(orbit.len() as u64) {
                return Err(Error::Internal(format!(
                    "orbit of size {} does not divide p",
                    orbit.len()
                )));
            }
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit);
        }
        let fixed = orbits.iter().filter(|o| o.len() == 1).count() as u64;
        let free = orbits.len() as u64 - fixed;
        if fixed + self.cfg.p * free != self.base.order() {
            return Err(Error::Internal("orbit census does not add up".into()));
        }
        Ok(orbits)
    }

    /// Characters of `M` that extend to `G`: trivial on the commutator
    /// subgroup `⟨B, C^{ε p^{n-3}}⟩`.
    fn abelianization_characters(&self) -> Vec<Character> {
        let p = self.cfg.p;
        let pn2 = self.base.factors()[1];
        let c_power = (self.cfg.epsilon * p.pow(self.cfg.n - 3)) % pn2;
        self.base
            .characters()
            .into_iter()
            .filter(|chi| {
                chi.value(&[1, 0]) == Ratio::from_integer(0)
                    && chi.value(&[0, c_power]) == Ratio::from_integer(0)
            })
            .collect()
    }

    pub fn irreps(&self) -> Result<Vec<Irrep>> {
        let orbits = self.character_orbits()?;
        let fixed: BTreeSet<Character> = orbits
            .iter()
            .filter(|o| o.len() == 1)
            .map(|o| o[0].clone())
            .collect();
        let from_presentation: BTreeSet<Character> =
            self.abelianization_characters().into_iter().collect();
        if fixed != from_presentation {
            return Err(Error::Internal(
                "invariant characters of M differ from characters of G^ab".into(),
            ));
        }
        let p = self.cfg.p;
        let mut out: Vec<Irrep> = fixed
            .iter()
            .flat_map(|chi| {
                (0..p).map(move |a| Irrep::OneDim {
                    a_exponent: a,
                    on_m: chi.clone(),
                })
            })
            .collect();
        out.extend(
            orbits
                .into_iter()
                .filter(|o| o.len() as u64 == p)
                .map(|o| Irrep::Induced(o[0].clone())),
        );
        let sum_sq: u64 = out.iter().map(|r| r.dimension(p).pow(2)).sum();
        if sum_sq != self.order() {
            return Err(Error::Internal(format!(
                "sum of squared dimensions {sum_sq} differs from |G| = {}",
                self.order()
            )));
        }
        Ok(out)
    }

    /// Restriction of an irreducible representation to a subgroup `K ≤ M`,
    /// as a sorted multiset of characters of `K`. For an induced
    /// representation this is the Mackey decomposition over the coset
    /// representatives `A^i`.
    pub fn restrict_irrep(&self, rho: &Irrep, k: SubgroupOfM) -> Result<Vec<Character>> {
        let restrict = |chi: &Character| -> Result<Character> {
            match k {
                SubgroupOfM::M => Ok(chi.clone()),
                SubgroupOfM::B => Character::new(&self.subgroup(k), &[chi.exponents()[0] as i64]),
            }
        };
        let mut out = match rho {
            Irrep::OneDim { on_m, .. } => vec![restrict(on_m)?],
            Irrep::Induced(chi) => {
                if chi.group() != &self.base {
                    return Err(Error::Contract("induced from a non-M character".into()));
                }
                (0..self.cfg.p as i64)
                    .map(|i| restrict(&self.dual_action(i, chi)?))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        out.sort();
        Ok(out)
    }
}
