//! Chern classes in integral cohomology and the restriction of the Chern
//! subring of `G(n, ε)` to `⟨B⟩`.
//!
//! `H^even(M) = Z[β, γ] / (pβ, p^{n-2}γ)` with `β = c_1(θ)`, `γ = c_1(φ)`,
//! and `H^even(⟨B⟩) = Z[β′] / (pβ′)`. Conjugation by `A` on `H(M)` is the
//! `c_1`-image of the action on characters, iterated exactly.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::graded_ring::{
    monomial_string, subring_component, superscript, Generator, GradedSubgroup, RingElement,
    RingMap, RingSpec,
};
use crate::group_rep::{
    build_gne, AbelianGroup, Character, GnEpsilonConfig, SemidirectPGroup, SubgroupOfM,
};
use crate::report::{inputs, VerificationReport};
use crate::semigroup::semigroup_members;

/// Which generator of `⟨A⟩` drives the double coset sum: `A^i` or `A^{-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Orientation {
    #[default]
    Plus,
    Minus,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Plus => "plus",
            Orientation::Minus => "minus",
        }
    }
}

/// Knobs shared by the verification entry points.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub orientation: Orientation,
    /// Test hook: perturb the first expected value so the claim must fail.
    pub corrupt_expectation: bool,
}

/// `Z[x_1..x_k] / (m_1 x_1, .., m_k x_k)` for `Z/m_1 × … × Z/m_k`, with
/// `x_j = c_1` of the `j`-th coordinate character.
pub fn cohomology_presentation(
    group: &AbelianGroup,
    names: &[&str],
    max_half_degree: u32,
) -> Result<Arc<RingSpec>> {
    if names.len() != group.rank() {
        return Err(Error::Structural("one name per invariant factor".into()));
    }
    let gens = names
        .iter()
        .zip(group.factors())
        .map(|(name, &m)| Generator::new(*name, 1, m))
        .collect();
    RingSpec::new(gens, max_half_degree)
}

pub fn c1(ring: &Arc<RingSpec>, chi: &Character) -> Result<RingElement> {
    if chi.group().factors().len() != ring.rank()
        || chi
            .group()
            .factors()
            .iter()
            .zip(ring.generators())
            .any(|(&m, g)| m != g.torsion)
    {
        return Err(Error::Structural(
            "character group does not match the cohomology presentation".into(),
        ));
    }
    Ok(chi
        .exponents()
        .iter()
        .enumerate()
        .map(|(j, &e)| RingElement::generator(ring, j).scale(e as i128))
        .fold(RingElement::zero(ring), |acc, t| &acc + &t))
}

/// `∏ (1 + c_1(χ))` over a multiset of line characters.
pub fn total_chern(ring: &Arc<RingSpec>, chars: &[Character]) -> Result<RingElement> {
    let one = RingElement::one(ring);
    chars
        .iter()
        .try_fold(one.clone(), |acc, chi| Ok(&acc * &(&one + &c1(ring, chi)?)))
}

/// Everything needed to compute in `H(M)` and `H(⟨B⟩)` for one group.
#[derive(Debug, Clone)]
pub struct ChernContext {
    group: SemidirectPGroup,
    h_m: Arc<RingSpec>,
    h_b: Arc<RingSpec>,
    res: RingMap,
}

impl ChernContext {
    pub fn new(cfg: &GnEpsilonConfig) -> Result<Self> {
        let group = build_gne(cfg)?;
        let d = cfg.max_half_degree;
        let h_m = cohomology_presentation(group.base(), &["β", "γ"], d)?;
        let h_b = cohomology_presentation(&group.subgroup(SubgroupOfM::B), &["β′"], d)?;
        let res = RingMap::new(
            &h_m,
            &h_b,
            vec![RingElement::generator(&h_b, 0), RingElement::zero(&h_b)],
        )?;
        Ok(Self {
            group,
            h_m,
            h_b,
            res,
        })
    }

    pub fn group(&self) -> &SemidirectPGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.group.p()
    }

    pub fn h_m(&self) -> &Arc<RingSpec> {
        &self.h_m
    }

    pub fn h_b(&self) -> &Arc<RingSpec> {
        &self.h_b
    }

    pub fn restriction(&self) -> &RingMap {
        &self.res
    }

    pub fn beta(&self) -> RingElement {
        RingElement::generator(&self.h_m, 0)
    }

    pub fn gamma(&self) -> RingElement {
        RingElement::generator(&self.h_m, 1)
    }

    pub fn beta_prime(&self) -> RingElement {
        RingElement::generator(&self.h_b, 0)
    }

    /// `c_A^*` (or `c_{A^{-1}}^*`): `β ↦ c_1(A·θ)`, `γ ↦ c_1(A·φ)`.
    pub fn conj_step(&self, orientation: Orientation) -> Result<RingMap> {
        let s = orientation.sign();
        let images = [self.group.theta(), self.group.phi()]
            .iter()
            .map(|chi| c1(&self.h_m, &self.group.dual_action(s, chi)?))
            .collect::<Result<Vec<_>>>()?;
        RingMap::new(&self.h_m, &self.h_m, images)
    }

    /// The `i`-th iterate of [`ChernContext::conj_step`].
    pub fn conj_map(&self, i: u32, orientation: Orientation) -> Result<RingMap> {
        self.conj_step(orientation)?.iterate(i)
    }

    /// `Res^G_⟨B⟩ Cor^G_M (x) = Σ_{i<p} Res^M_⟨B⟩ c_{A^i}^*(x)`.
    pub fn res_cor(&self, x: &RingElement, orientation: Orientation) -> Result<RingElement> {
        if x.ring() != &self.h_m {
            return Err(Error::Structural("res_cor expects a class of H(M)".into()));
        }
        let step = self.conj_step(orientation)?;
        let mut acc = RingElement::zero(&self.h_b);
        let mut y = x.clone();
        for _ in 0..self.p() {
            acc = &acc + &self.res.apply(&y)?;
            y = step.apply(&y)?;
        }
        if y != *x {
            return Err(Error::Internal(
                "conjugation does not have order p on H(M)".into(),
            ));
        }
        Ok(acc)
    }

    /// Nonzero homogeneous components `c_j(Res ρ)`, `1 ≤ j ≤ dim ρ`, over
    /// all irreducible `ρ`, without repetitions.
    pub fn restricted_chern_generators(&self) -> Result<Vec<RingElement>> {
        let mut restrictions = BTreeSet::new();
        for rho in self.group.irreps()? {
            restrictions.insert(self.group.restrict_irrep(&rho, SubgroupOfM::B)?);
        }
        let mut gens: Vec<RingElement> = Vec::new();
        for chars in restrictions {
            let total = total_chern(&self.h_b, &chars)?;
            for j in 1..=chars.len() as u32 {
                let c = total.homogeneous_component(j);
                if !c.is_zero() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        gens.sort_by(|a, b| a.sorted_terms().cmp(&b.sorted_terms()));
        Ok(gens)
    }

    /// Degree-`d` piece of `Res Ch(G)`.
    pub fn chern_image(&self, gens: &[RingElement], d: u32) -> Result<GradedSubgroup> {
        subring_component(&self.h_b, gens, d)
    }

    /// Degree-`d` piece of the subring generated by `β′^{p-1}` and `β′^p`.
    pub fn reference_image(&self, d: u32) -> Result<GradedSubgroup> {
        let p = self.p() as u32;
        let b = self.beta_prime();
        subring_component(&self.h_b, &[b.pow(p - 1), b.pow(p)], d)
    }
}

fn lemma1_params(r: &mut VerificationReport, cfg: &GnEpsilonConfig, orientation: Orientation) {
    r.param("p", cfg.p)
        .param("n", cfg.n)
        .param("epsilon", cfg.epsilon)
        .param("max_degree", 2 * cfg.max_half_degree)
        .param("orientation", orientation.name());
}

fn element_json(x: &RingElement) -> serde_json::Value {
    json!({ "canonical": x.to_string(), "signed": x.signed().to_string() })
}

/// Checks `Res Cor(γ^{p-1} β^m) = -β′^{m+p-1}` for `m ≤ m_max`, and that
/// the restricted Chern image agrees degree by degree with the subring
/// generated by `β′^{p-1}`, `β′^p`.
pub fn verify_lemma1(
    cfg: &GnEpsilonConfig,
    m_max: u32,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let p = cfg.p as u32;
    if cfg.max_half_degree < p - 1 + m_max {
        return Err(Error::Config(format!(
            "max half-degree {} is below p - 1 + m_max = {}",
            cfg.max_half_degree,
            p - 1 + m_max
        )));
    }
    let ctx = ChernContext::new(cfg)?;
    let mut r = VerificationReport::new("lemma1");
    lemma1_params(&mut r, cfg, opts.orientation);
    r.param("m_max", m_max);

    let (beta, gamma, bp) = (ctx.beta(), ctx.gamma(), ctx.beta_prime());
    for m in 0..=m_max {
        let x = &gamma.pow(p - 1) * &beta.pow(m);
        let computed = ctx.res_cor(&x, opts.orientation)?;
        let mut expected = -&bp.pow(m + p - 1);
        if opts.corrupt_expectation && m == 0 {
            expected = &expected + &bp.pow(m + p - 1);
        }
        r.push_case(
            inputs([
                ("m", json!(m)),
                ("class", json!(monomial_string(&["γ", "β"], &[p - 1, m]))),
            ]),
            format!("{} ({})", computed, computed.signed()),
            format!("{} ({})", expected, expected.signed()),
            computed == expected,
        );
    }

    let gens = ctx.restricted_chern_generators()?;
    let mut mismatched = Vec::new();
    for d in 0..=cfg.max_half_degree {
        if !ctx
            .chern_image(&gens, d)?
            .same_as(&ctx.reference_image(d)?)?
        {
            mismatched.push(2 * d);
        }
    }
    r.require(mismatched.is_empty());
    r.witness(
        "chern_generators",
        gens.iter()
            .map(|g| g.signed().to_string())
            .collect::<Vec<_>>(),
    )
    .witness(
        "image_matches_subring_up_to_degree",
        2 * cfg.max_half_degree,
    )
    .witness("image_mismatched_degrees", mismatched);
    Ok(r)
}

fn sup(e: u32) -> String {
    superscript(e)
}

/// The strict containment report: the class `β′^{p+1}` is hit by
/// `Res Cor` of an even class but is not in `Res Ch(G)`.
pub fn chern_gap_report(cfg: &GnEpsilonConfig, opts: VerifyOptions) -> Result<VerificationReport> {
    let p = cfg.p as u32;
    let d_max = cfg.max_half_degree;
    if d_max < 2 * p - 2 {
        return Err(Error::Config(format!(
            "max half-degree {d_max} is below 2p - 2 = {}",
            2 * p - 2
        )));
    }
    let ctx = ChernContext::new(cfg)?;
    let mut r = VerificationReport::new("chern_gap");
    lemma1_params(&mut r, cfg, opts.orientation);
    let (beta, gamma, bp) = (ctx.beta(), ctx.gamma(), ctx.beta_prime());
    let gens = ctx.restricted_chern_generators()?;

    // (a) the transfer witness
    let w = ctx.res_cor(&(&gamma.pow(p - 1) * &beta.pow(2)), opts.orientation)?;
    let mut expected = -&bp.pow(p + 1);
    if opts.corrupt_expectation {
        expected = &expected + &bp.pow(p + 1);
    }
    r.push_case(
        inputs([
            ("check", json!("res_cor_witness")),
            ("degree", json!(2 * (p + 1))),
        ]),
        format!("{} ({})", w, w.signed()),
        format!("{} ({})", expected, expected.signed()),
        w == expected && !w.is_zero(),
    );

    // (b), (c) membership in the restricted Chern image
    let membership = [(p + 1, false), (p - 1, true), (p, true), (2 * p - 2, true)];
    for (d, want) in membership {
        let got = ctx.chern_image(&gens, d)?.contains(&bp.pow(d))?;
        r.push_case(
            inputs([("check", json!("membership")), ("degree", json!(2 * d))]),
            format!("β′{} ∈ Res Ch(G): {got}", sup(d)),
            format!("β′{} ∈ Res Ch(G): {want}", sup(d)),
            got == want,
        );
    }

    // (d) degrees hit by the image against a brute-force semigroup
    let mut hit = Vec::new();
    for d in 0..=d_max {
        if !ctx.chern_image(&gens, d)?.is_zero() {
            hit.push(d);
        }
    }
    let semigroup = semigroup_members(&[p - 1, p], d_max);
    let doubled = |v: &[u32]| v.iter().map(|d| 2 * d).collect::<Vec<_>>();
    r.push_case(
        inputs([("check", json!("hit_degrees"))]),
        format!("{:?}", doubled(&hit)),
        format!("{:?}", doubled(&semigroup)),
        hit == semigroup,
    );

    r.witness("gap_degree", 2 * (p + 1))
        .witness("res_cor_witness", element_json(&w))
        .witness("witness_class", format!("γ{}β²", sup(p - 1)))
        .witness("hit_degrees", doubled(&hit))
        .witness(
            "note",
            "AHSS of B<B> has no differentials, so Res(B_inf(G)) = 0; the witness is a \
             corestricted Chern class, hence a permanent cycle, and misses Res(Ch(G) + B_inf(G)).",
        );
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32, eps: i64) -> ChernContext {
        let d = GnEpsilonConfig::default_max_half_degree(p);
        ChernContext::new(&GnEpsilonConfig::new(p, n, eps, d).unwrap()).unwrap()
    }

    #[test]
    fn first_chern_classes() {
        let c = ctx(5, 4, 1);
        let g = c.group();
        assert_eq!(c1(c.h_m(), &g.theta()).unwrap(), c.beta());
        assert_eq!(c1(c.h_m(), &g.phi()).unwrap(), c.gamma());
        assert!(c1(c.h_m(), &Character::trivial(g.base()))
            .unwrap()
            .is_zero());
        let prod = g.theta().tensor(&g.phi().pow(3)).unwrap();
        assert_eq!(c1(c.h_m(), &prod).unwrap(), &c.beta() + &c.gamma().scale(3));
    }

    #[test]
    fn total_chern_examples() {
        let c = ctx(5, 4, 1);
        let b = c.group().subgroup(SubgroupOfM::B);
        let one = RingElement::one(c.h_b());
        let bp = c.beta_prime();
        let same = vec![Character::new(&b, &[1]).unwrap(); 5];
        assert_eq!(total_chern(c.h_b(), &same).unwrap(), &one + &bp.pow(5));
        assert_eq!(
            total_chern(c.h_b(), &b.characters()).unwrap(),
            &one + &bp.pow(4).scale(4)
        );
        assert_eq!(total_chern(c.h_b(), &[]).unwrap(), one);
    }

    #[test]
    fn res_cor_examples() {
        let c = ctx(5, 4, 1);
        let (b, g, bp) = (c.beta(), c.gamma(), c.beta_prime());
        let o = Orientation::Plus;
        assert_eq!(c.res_cor(&g.pow(4), o).unwrap(), bp.pow(4).scale(4));
        assert_eq!(
            c.res_cor(&(&g.pow(4) * &b.pow(2)), o).unwrap(),
            bp.pow(6).scale(4)
        );
        assert!(c.res_cor(&b, o).unwrap().is_zero());
    }

    #[test]
    fn conj_step_matches_stated_action() {
        let c = ctx(5, 4, 1);
        let step = c.conj_step(Orientation::Plus).unwrap();
        assert_eq!(step.images()[0], &c.beta() + &c.gamma().scale(5));
        assert_eq!(step.images()[1], &c.gamma() + &c.beta());
        assert_eq!(step.iterate(5).unwrap(), RingMap::identity(c.h_m()));
        let back = c.conj_step(Orientation::Minus).unwrap();
        assert_eq!(back.after(&step).unwrap(), RingMap::identity(c.h_m()));
    }

    #[test]
    fn chern_generators_are_pure_powers() {
        let c = ctx(5, 4, 1);
        let gens = c.restricted_chern_generators().unwrap();
        assert!(!gens.is_empty());
        for g in &gens {
            let d = g.homogeneous_degree().unwrap();
            assert!(d == 4 || d == 5, "{g}");
            assert_eq!(g.terms().len(), 1);
        }
    }

    #[test]
    fn lemma1_small() {
        let cfg = GnEpsilonConfig::new(5, 4, 1, 14).unwrap();
        let r = verify_lemma1(&cfg, 4, VerifyOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.cases.len(), 5);
    }

    #[test]
    fn lemma1_needs_room() {
        let cfg = GnEpsilonConfig::new(5, 4, 1, 8).unwrap();
        assert!(matches!(
            verify_lemma1(&cfg, 6, VerifyOptions::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn corrupted_expectation_fails() {
        let cfg = GnEpsilonConfig::new(5, 4, 1, 14).unwrap();
        let opts = VerifyOptions {
            corrupt_expectation: true,
            ..Default::default()
        };
        assert!(!verify_lemma1(&cfg, 2, opts).unwrap().pass);
        assert!(!chern_gap_report(&cfg, opts).unwrap().pass);
    }

    #[test]
    fn gap_report_for_five() {
        let cfg = GnEpsilonConfig::new(5, 4, 1, 14).unwrap();
        let r = chern_gap_report(&cfg, VerifyOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.witnesses["gap_degree"], json!(12));
        assert_eq!(
            r.witnesses["hit_degrees"],
            json!([0, 8, 10, 16, 18, 20, 24, 26, 28])
        );
    }
}
