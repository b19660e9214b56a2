use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::fgl::{build_fgl, FglContext};
use super::mod_i::{reduce_mod_i, ModIClass};
use super::series::TruncSeries;
use crate::chern_integral::{Orientation, VerifyOptions};
use crate::error::{Error, Result};
use crate::graded_ring::{subring_component, superscript, Generator, RingSpec};
use crate::group_rep::{build_gne, Character, GnEpsilonConfig, SemidirectPGroup, SubgroupOfM};
use crate::report::{inputs, VerificationReport};

pub const M_NAMES: [&str; 2] = ["β", "γ"];
pub const B_NAMES: [&str; 1] = ["β′"];

/// `c_1` of a character of `Z/m_1 × … × Z/m_k` in BP: the formal sum of
/// `[e_j] x_j` over the coordinates, with the exponents as stored
/// (non-negative representatives).
pub fn bp_c1(fgl: &FglContext, names: &[&str], chi: &Character) -> Result<TruncSeries> {
    if chi.exponents().len() != names.len() {
        return Err(Error::Structural(format!(
            "character of rank {} against {} variables",
            chi.exponents().len(),
            names.len()
        )));
    }
    let d = fgl.max_degree();
    let mut acc = TruncSeries::zero(names, d);
    for (j, &e) in chi.exponents().iter().enumerate() {
        let x = TruncSeries::var(names, d, j);
        let term = fgl.multiple_via_log(e, &x)?;
        acc = fgl.formal_sum(&acc, &term)?;
    }
    Ok(acc)
}

/// `∏ (1 + c_1(χ))` in BP.
pub fn bp_total_chern(
    fgl: &FglContext,
    names: &[&str],
    chars: &[Character],
) -> Result<TruncSeries> {
    let one = TruncSeries::one(names, fgl.max_degree());
    chars.iter().try_fold(one.clone(), |acc, chi| {
        acc.mul(&one.add(&bp_c1(fgl, names, chi)?)?)
    })
}

/// Substitution for conjugation by `A^i` (or `A^{-i}`) on two-variable
/// series in `β, γ`. Entry `j` is the image of the `j`-th variable.
#[derive(Debug, Clone, PartialEq)]
pub struct BpConjMap {
    pub images: Vec<TruncSeries>,
}

impl BpConjMap {
    pub fn identity(d: u32) -> Self {
        Self {
            images: (0..2).map(|j| TruncSeries::var(&M_NAMES, d, j)).collect(),
        }
    }

    pub fn apply(&self, s: &TruncSeries) -> Result<TruncSeries> {
        s.compose(&self.images)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &BpConjMap) -> Result<BpConjMap> {
        Ok(Self {
            images: self
                .images
                .iter()
                .map(|s| next.apply(s))
                .collect::<Result<_>>()?,
        })
    }
}

/// One step: `β ↦ c_1(A·θ)`, `γ ↦ c_1(A·φ)` computed with formal sums, so
/// for the `+` orientation `β ↦ β +_F [p^{n-3}]γ` and `γ ↦ γ +_F [ε]β`.
pub fn bp_conj_step(
    fgl: &FglContext,
    group: &SemidirectPGroup,
    orientation: Orientation,
) -> Result<BpConjMap> {
    let s = orientation.sign();
    let images = [group.theta(), group.phi()]
        .iter()
        .map(|chi| bp_c1(fgl, &M_NAMES, &group.dual_action(s, chi)?))
        .collect::<Result<_>>()?;
    Ok(BpConjMap { images })
}

/// The `i`-th exact iterate of [`bp_conj_step`].
pub fn bp_conj_map(
    fgl: &FglContext,
    group: &SemidirectPGroup,
    i: u32,
    orientation: Orientation,
) -> Result<BpConjMap> {
    let step = bp_conj_step(fgl, group, orientation)?;
    let mut out = BpConjMap::identity(fgl.max_degree());
    for _ in 0..i {
        out = out.then(&step)?;
    }
    Ok(out)
}

fn restrict_to_b(s: &TruncSeries) -> TruncSeries {
    s.restrict_to(&[0]).embed(&B_NAMES, &[0])
}

fn b_class(fgl: &FglContext, terms: &[(u32, i64)]) -> ModIClass {
    let (p, d) = (fgl.p(), fgl.max_degree());
    terms
        .iter()
        .map(|&(e, c)| ModIClass::monomial(p, &B_NAMES, d, vec![e], c))
        .fold(ModIClass::monomial(p, &B_NAMES, d, vec![0], 0), |acc, t| {
            acc.add(&t).expect("same ring")
        })
}

fn shown(c: &ModIClass) -> String {
    format!("{c} ({})", c.signed_string())
}

/// Expected mod-I total Chern class of a restriction to `⟨B⟩`, by shape.
fn expected_restriction(fgl: &FglContext, exps: &[u64]) -> Option<(&'static str, ModIClass)> {
    let p = fgl.p();
    let pu = p as u32;
    let distinct: BTreeSet<u64> = exps.iter().copied().collect();
    match (exps.len() as u64, distinct.len() as u64) {
        (1, 1) if exps[0] == 0 => Some(("trivial", b_class(fgl, &[(0, 1)]))),
        (len, 1) if len == p => Some(("equal", b_class(fgl, &[(0, 1), (pu, exps[0] as i64)]))),
        (len, k) if len == p && k == p => Some(("distinct", b_class(fgl, &[(0, 1), (pu - 1, -1)]))),
        _ => None,
    }
}

/// Verifies the BP analogue of the gap: congruences mod `I = (p, v_1, …)`
/// for restricted total Chern classes, the transfer witness
/// `-β′^{p+1}`, and that `β′^{p+1}` is outside the mod-`I` span of the
/// restricted BP Chern classes.
pub fn verify_lemma4(
    cfg: &GnEpsilonConfig,
    max_degree: u32,
    k: usize,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let fgl = build_fgl(cfg.p, max_degree, k)?;
    verify_lemma4_with_law(cfg, &fgl, opts)
}

pub fn verify_lemma4_with_law(
    cfg: &GnEpsilonConfig,
    fgl: &FglContext,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let p = cfg.p;
    let pu = p as u32;
    if fgl.p() != p {
        return Err(Error::Contract(format!(
            "formal group law for p = {} used with p = {p}",
            fgl.p()
        )));
    }
    let d = fgl.max_degree();
    if d < pu + 2 {
        return Err(Error::Config(format!("truncation {d} is below p + 2")));
    }
    let group = build_gne(cfg)?;
    let b_group = group.subgroup(SubgroupOfM::B);
    let mut r = VerificationReport::new("lemma4");
    r.param("p", p)
        .param("n", cfg.n)
        .param("epsilon", cfg.epsilon)
        .param("max_degree", 2 * d)
        .param("k", fgl.k() as u64)
        .param("orientation", opts.orientation.name())
        .param("v_generators", "hazewinkel");

    let bprime = TruncSeries::var(&B_NAMES, d, 0);
    let one_b = TruncSeries::one(&B_NAMES, d);
    let b_char = |j: u64| Character::new(&b_group, &[j as i64]);

    // (a) product over all characters of <B>
    let all: Vec<Character> = (0..p).map(b_char).collect::<Result<_>>()?;
    let got = reduce_mod_i(&bp_total_chern(fgl, &B_NAMES, &all)?, p)?;
    let want = b_class(fgl, &[(0, 1), (pu - 1, -1)]);
    r.push_case(
        inputs([("check", json!("product_of_all_characters"))]),
        shown(&got),
        shown(&want),
        got == want,
    );

    // (b) p-th powers
    for i in 1..p {
        let s = one_b.add(&fgl.multiple_via_log(i, &bprime)?)?.pow(pu)?;
        let got = reduce_mod_i(&s, p)?;
        let want = b_class(fgl, &[(0, 1), (pu, i as i64)]);
        r.push_case(
            inputs([("check", json!("pth_power")), ("i", json!(i))]),
            shown(&got),
            shown(&want),
            got == want,
        );
    }

    // restriction of every irreducible representation, grouped by shape
    let mut restrictions: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for rho in group.irreps()? {
        let chars = group.restrict_irrep(&rho, SubgroupOfM::B)?;
        let exps = chars.iter().map(|c| c.exponents()[0]).collect();
        *restrictions.entry(exps).or_default() += 1;
    }
    let mut shapes: BTreeMap<&str, usize> = BTreeMap::new();
    let mut span_gens = Vec::new();
    let ring_b = RingSpec::new(vec![Generator::new(B_NAMES[0], 1, p)], d)?;
    for (exps, count) in &restrictions {
        let chars: Vec<Character> = exps.iter().map(|&j| b_char(j)).collect::<Result<_>>()?;
        let total = bp_total_chern(fgl, &B_NAMES, &chars)?;
        let got = reduce_mod_i(&total, p)?;
        let expected = expected_restriction(fgl, exps);
        if let Some((shape, _)) = expected {
            *shapes.entry(shape).or_default() += count;
        }
        r.push_case(
            inputs([
                ("check", json!("restricted_total_chern")),
                ("restriction", json!(exps)),
                ("irreps", json!(count)),
            ]),
            shown(&got),
            expected
                .as_ref()
                .map_or("1 + i·β′^p or 1 - β′^(p-1)".to_string(), |(_, c)| {
                    shown(c)
                }),
            expected.is_some_and(|(_, c)| c == got),
        );
        // BP Chern classes c_j are the homogeneous pieces of the total class
        for j in 1..=exps.len().min(d as usize) as i64 {
            let c = reduce_mod_i(&total.homogeneous_component(p, j), p)?;
            let c = c.to_ring_element(&ring_b)?;
            if !c.is_zero() && !span_gens.contains(&c) {
                span_gens.push(c);
            }
        }
    }

    // (c) the transfer witness
    let step = bp_conj_step(fgl, &group, opts.orientation)?;
    let beta = TruncSeries::var(&M_NAMES, d, 0);
    let gamma = TruncSeries::var(&M_NAMES, d, 1);
    let x = gamma.pow(pu - 1)?.mul(&beta.pow(2)?)?;
    let mut conj = BpConjMap::identity(d);
    let mut transfer = TruncSeries::zero(&B_NAMES, d);
    for _ in 0..p {
        transfer = transfer.add(&restrict_to_b(&conj.apply(&x)?))?;
        conj = conj.then(&step)?;
    }
    let got = reduce_mod_i(&transfer, p)?;
    let mut want = b_class(fgl, &[(pu + 1, -1)]);
    if opts.corrupt_expectation {
        want = want.add(&b_class(fgl, &[(pu + 1, 1)]))?;
    }
    r.push_case(
        inputs([
            ("check", json!("transfer_witness")),
            ("degree", json!(2 * (pu + 1))),
        ]),
        shown(&got),
        shown(&want),
        got == want && !got.is_zero(),
    );

    // the same sum with the i-th conjugate written in closed form,
    // γ ↦ γ +_F [iε]β and β ↦ β +_F [i p^{n-3}]γ, instead of iterated
    let q = p.pow(cfg.n - 2);
    let t = p.pow(cfg.n - 3);
    let mut closed = TruncSeries::zero(&B_NAMES, d);
    for i in 0..p {
        let i = match opts.orientation {
            Orientation::Plus => i,
            Orientation::Minus => (p - i) % p,
        };
        let g_i = fgl.formal_sum(&gamma, &fgl.multiple_via_log(i * cfg.epsilon % p, &beta)?)?;
        let b_i = fgl.formal_sum(&beta, &fgl.multiple_via_log(i * t % q, &gamma)?)?;
        let term = g_i.pow(pu - 1)?.mul(&b_i.pow(2)?)?;
        closed = closed.add(&restrict_to_b(&term))?;
    }
    let closed = reduce_mod_i(&closed, p)?;
    r.push_case(
        inputs([
            ("check", json!("transfer_closed_form")),
            ("degree", json!(2 * (pu + 1))),
        ]),
        shown(&closed),
        shown(&want),
        closed == want,
    );

    // conj^p is the identity after reduction; the exact residual is only recorded
    let id = BpConjMap::identity(d);
    let mut order_ok = true;
    let mut residual_terms = 0usize;
    for (img, var) in conj.images.iter().zip(&id.images) {
        order_ok &= reduce_mod_i(img, p)? == reduce_mod_i(var, p)?;
        residual_terms += img.sub(var)?.terms().len();
    }
    r.push_case(
        inputs([("check", json!("conjugation_order_mod_i"))]),
        format!("conj^{p} ≡ id mod I: {order_ok}"),
        format!("conj^{p} ≡ id mod I: true"),
        order_ok,
    );

    // (d) β′^{p+1} outside the mod-I span of BP Chern classes
    let target = b_class(fgl, &[(pu + 1, 1)]).to_ring_element(&ring_b)?;
    let inside = subring_component(&ring_b, &span_gens, pu + 1)?.contains(&target)?;
    r.push_case(
        inputs([
            ("check", json!("span_membership")),
            ("degree", json!(2 * (pu + 1))),
        ]),
        format!("β′{} ∈ Ch_BP mod I: {inside}", superscript(pu + 1)),
        format!("β′{} ∈ Ch_BP mod I: false", superscript(pu + 1)),
        !inside,
    );

    r.witness("transfer_mod_i", format!("{got} mod I"))
        .witness(
            "transfer_mod_i_signed",
            format!("{} mod I", got.signed_string()),
        )
        .witness(
            "bp_chern_generators_mod_i",
            span_gens
                .iter()
                .map(|g| g.signed().to_string())
                .collect::<Vec<_>>(),
        )
        .witness("restriction_shapes", json!(shapes))
        .witness("conjugation_exact_identity", residual_terms == 0)
        .witness("conjugation_exact_residual_terms", residual_terms as u64);
    Ok(r)
}
