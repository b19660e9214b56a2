use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::vpoly::VPoly;
use crate::error::{Error, Result};
use crate::graded_ring::monomial_string;

/// Power series in a few variables over `Q[v_1, …]`, truncated at total
/// variable degree `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    names: Vec<String>,
    max_degree: u32,
    terms: BTreeMap<Vec<u32>, VPoly>,
}

impl TruncSeries {
    pub fn zero(names: &[&str], max_degree: u32) -> Self {
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(names: &[&str], max_degree: u32) -> Self {
        Self::zero(names, max_degree).with_term(vec![0; names.len()], VPoly::one())
    }

    pub fn var(names: &[&str], max_degree: u32, i: usize) -> Self {
        let mut e = vec![0; names.len()];
        e[i] = 1;
        Self::zero(names, max_degree).with_term(e, VPoly::one())
    }

    pub fn with_term(mut self, exps: Vec<u32>, c: VPoly) -> Self {
        self.add_term(exps, c);
        self
    }

    pub fn zero_like(&self) -> Self {
        Self {
            names: self.names.clone(),
            max_degree: self.max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: VPoly) -> Self {
        self.zero_like().with_term(vec![0; self.nvars()], c)
    }

    pub fn names(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, VPoly> {
        &self.terms
    }

    pub fn coefficient(&self, exps: &[u32]) -> VPoly {
        self.terms.get(exps).cloned().unwrap_or_else(VPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u32>, c: VPoly) {
        if exps.iter().sum::<u32>() > self.max_degree || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(VPoly::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.names != other.names || self.max_degree != other.max_degree {
            return Err(Error::Contract(format!(
                "series over {:?} (degree ≤ {}) and {:?} (degree ≤ {}) cannot be combined",
                self.names, self.max_degree, other.names, other.max_degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.add(&other.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> TruncSeries {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(k));
        }
        out
    }

    pub fn scale_vpoly(&self, k: &VPoly) -> TruncSeries {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(k));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<TruncSeries> {
        let mut out = self.constant_like(VPoly::one());
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn has_zero_constant_term(&self) -> bool {
        !self.terms.contains_key(&vec![0; self.nvars()])
    }

    /// Substitutes `subs[i]` for the `i`-th variable. The substituted series
    /// must have no constant term and share variables and truncation.
    pub fn compose(&self, subs: &[TruncSeries]) -> Result<TruncSeries> {
        if subs.len() != self.nvars() {
            return Err(Error::Contract(format!(
                "{} substitutions for {} variables",
                subs.len(),
                self.nvars()
            )));
        }
        let first = subs
            .first()
            .ok_or_else(|| Error::Contract("nothing to substitute".into()))?;
        for s in subs {
            first.check_compatible(s)?;
            if !s.has_zero_constant_term() {
                return Err(Error::Contract(
                    "substituted series must have zero constant term".into(),
                ));
            }
        }
        let d = first.max_degree;
        let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(subs.len());
        for (i, s) in subs.iter().enumerate() {
            let top = self.terms.keys().map(|e| e[i]).max().unwrap_or(0).min(d);
            let mut pw = vec![first.constant_like(VPoly::one())];
            for k in 1..=top as usize {
                let next = pw[k - 1].mul(s)?;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = first.zero_like();
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() > d {
                continue;
            }
            let mut term = first.constant_like(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[i][k as usize])?;
                }
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Keeps the listed variables; the others are set to zero and dropped.
    pub fn restrict_to(&self, keep: &[usize]) -> TruncSeries {
        let names: Vec<&str> = keep.iter().map(|&i| self.names[i].as_str()).collect();
        let mut out = TruncSeries::zero(&names, self.max_degree);
        for (e, c) in &self.terms {
            let dropped_zero = (0..self.nvars())
                .filter(|i| !keep.contains(i))
                .all(|i| e[i] == 0);
            if dropped_zero {
                out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
            }
        }
        out
    }

    /// Same series with variables renamed (and possibly re-embedded into
    /// more variables via `positions`).
    pub fn embed(&self, names: &[&str], positions: &[usize]) -> TruncSeries {
        let mut out = TruncSeries::zero(names, self.max_degree);
        for (e, c) in &self.terms {
            let mut f = vec![0; names.len()];
            for (j, &pos) in positions.iter().enumerate() {
                f[pos] += e[j];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// True if every term `v^α x^e` has `|e| - Σ α_i (p^i - 1) = degree`.
    pub fn is_homogeneous(&self, p: u64, degree: i64) -> bool {
        self.terms.iter().all(|(e, c)| {
            let d: i64 = e.iter().map(|&k| k as i64).sum();
            c.terms().keys().all(|m| d - m.codegree(p) as i64 == degree)
        })
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(VPoly::is_integral)
    }

    pub fn homogeneous_component(&self, p: u64, degree: i64) -> TruncSeries {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let d: i64 = e.iter().map(|&k| k as i64).sum();
            let part = VPoly::from_terms(
                c.terms()
                    .iter()
                    .filter(|(m, _)| d - m.codegree(p) as i64 == degree)
                    .map(|(m, q)| (m.clone(), q.clone())),
            );
            out.add_term(e.clone(), part);
        }
        out
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.names();
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        for (i, e) in keys.into_iter().enumerate() {
            let mono = monomial_string(&names, e);
            let c = &self.terms[e];
            let single = c.terms().len() == 1;
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = match (mono.is_empty(), mag.as_str()) {
                (true, _) => mag.clone(),
                (false, "1") => mono,
                (false, _) if single => format!("{mag}·{mono}"),
                (false, _) => format!("({mag})·{mono}"),
            };
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}
