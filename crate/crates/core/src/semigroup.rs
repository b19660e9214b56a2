//! Numerical semigroups by direct enumeration.

use std::collections::BTreeSet;

/// Elements `≤ bound` of the semigroup generated by `gens`, found by
/// enumerating every coefficient vector with `Σ c_i g_i ≤ bound`.
pub fn semigroup_members(gens: &[u32], bound: u32) -> Vec<u32> {
    fn go(gens: &[u32], partial: u32, bound: u32, out: &mut BTreeSet<u32>) {
        match gens.split_first() {
            None => {
                out.insert(partial);
            }
            Some((&g, rest)) => {
                let mut s = partial;
                loop {
                    go(rest, s, bound, out);
                    if g == 0 || s + g > bound {
                        break;
                    }
                    s += g;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(gens, 0, bound, &mut out);
    out.into_iter().collect()
}

/// Values in `0..=bound` missed by the semigroup.
pub fn gaps(gens: &[u32], bound: u32) -> Vec<u32> {
    let members: BTreeSet<u32> = semigroup_members(gens, bound).into_iter().collect();
    (0..=bound).filter(|d| !members.contains(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_five() {
        assert_eq!(
            semigroup_members(&[4, 5], 14),
            vec![0, 4, 5, 8, 9, 10, 12, 13, 14]
        );
        assert!(gaps(&[4, 5], 14).contains(&6));
        assert!(!gaps(&[6, 7], 18).contains(&12));
        assert!(gaps(&[6, 7], 18).contains(&8));
        // Frobenius number of ⟨a, b⟩ is ab - a - b
        assert_eq!(*gaps(&[4, 5], 40).last().unwrap(), 11);
        assert_eq!(*gaps(&[6, 7], 60).last().unwrap(), 29);
    }
}
