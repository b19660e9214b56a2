use std::collections::BTreeSet;

use serde_json::json;

use super::{build_gne, GnEpsilonConfig, Irrep, SubgroupOfM};
use crate::error::Result;
use crate::report::{inputs, VerificationReport};

/// Counts of irreducible representations and the shape of their
/// restrictions to `⟨B⟩`.
pub fn census_report(cfg: &GnEpsilonConfig) -> Result<VerificationReport> {
    let g = build_gne(cfg)?;
    let p = cfg.p;
    let n = cfg.n;
    let irreps = g.irreps()?;
    let one_dim: Vec<&Irrep> = irreps.iter().filter(|r| r.dimension(p) == 1).collect();
    let induced = irreps.len() - one_dim.len();
    let sum_sq: u64 = irreps.iter().map(|r| r.dimension(p).pow(2)).sum();

    let mut r = VerificationReport::new("census");
    r.param("p", p).param("n", n).param("epsilon", cfg.epsilon);
    let mut count = |what: &str, got: u64, want: u64| {
        r.push_case(
            inputs([("check", json!(what))]),
            got.to_string(),
            want.to_string(),
            got == want,
        );
    };
    count("order", g.order(), p.pow(n));
    count("one_dimensional", one_dim.len() as u64, p.pow(n - 2));
    count("p_dimensional", induced as u64, p.pow(n - 2) - p.pow(n - 4));
    count("sum_of_squared_dimensions", sum_sq, p.pow(n));

    let mut trivial = 0u64;
    for rho in &one_dim {
        if g.restrict_irrep(rho, SubgroupOfM::B)?
            .iter()
            .all(|c| c.is_trivial())
        {
            trivial += 1;
        }
    }
    count(
        "one_dimensional_trivial_on_B",
        trivial,
        one_dim.len() as u64,
    );

    let shape = |chi| -> Result<(u64, usize)> {
        let res = g.restrict_irrep(&Irrep::Induced(chi), SubgroupOfM::B)?;
        let distinct: BTreeSet<u64> = res.iter().map(|c| c.exponents()[0]).collect();
        Ok((res.len() as u64, distinct.len()))
    };
    let (len_t, distinct_t) = shape(g.theta())?;
    let (len_f, distinct_f) = shape(g.phi())?;
    r.push_case(
        inputs([("check", json!("restriction_of_induced_theta"))]),
        format!("{len_t} characters, {distinct_t} distinct"),
        format!("{p} characters, 1 distinct"),
        len_t == p && distinct_t == 1,
    );
    r.push_case(
        inputs([("check", json!("restriction_of_induced_phi"))]),
        format!("{len_f} characters, {distinct_f} distinct"),
        format!("{p} characters, {p} distinct"),
        len_f == p && distinct_f == p as usize,
    );
    r.witness("order", g.order())
        .witness("irreps", irreps.len() as u64);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_passes() {
        for (p, n, e) in [(5, 4, 1), (5, 5, 2), (7, 4, 3)] {
            let cfg = GnEpsilonConfig::new(p, n, e, 2 * p as u32 + 4).unwrap();
            let r = census_report(&cfg).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
