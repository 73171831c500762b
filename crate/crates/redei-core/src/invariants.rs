//! Closed-form block invariants for both defect-group families, plus the
//! inequality gates they must clear.
//!
//! Every provider carries a source tag: theorem-backed values for the
//! r > s = 1 family, special-case values for r = s (normal 2-core, maximal
//! defect, or r = 2), and an explicit bound-only record where the value is
//! open.

use crate::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceTag {
    Theorem,
    SpecialCase,
    BoundOnly,
}

/// k(B), its height decomposition, l(B) and the defect d with |D| = 2^d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockInvariants {
    pub defect: u32,
    pub k: u64,
    /// k_0, k_1, k_2, ... (dense from height 0)
    pub k_by_height: Vec<u64>,
    pub l: u64,
    pub source: SourceTag,
}

impl BlockInvariants {
    pub fn group_order(&self) -> u64 {
        1 << self.defect
    }

    pub fn heights_sum_to_k(&self) -> bool {
        self.k_by_height.iter().sum::<u64>() == self.k
    }
}

/// r > s = 1: k = 5*2^(r-1), k0 = 2^(r+1), k1 = 2^(r-1), l = 2, d = r+2.
pub fn invariants_rs1(r: u32) -> Result<BlockInvariants> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    Ok(BlockInvariants {
        defect: r + 2,
        k: 5 << (r - 1),
        k_by_height: vec![1 << (r + 1), 1 << (r - 1)],
        l: 2,
        source: SourceTag::Theorem,
    })
}

/// r = s, settled cases (normal 2-core / maximal defect / r = 2):
/// k = (5*2^(2(r-1)) + 16)/3, k0 = (2^(2r) + 8)/3, k1 = (2^(2(r-1)) + 8)/3,
/// l = 3, d = 2r+1. All three fractions are exact.
pub fn invariants_req_s_special(r: u32) -> Result<BlockInvariants> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let k_num = (5u64 << (2 * (r - 1))) + 16;
    let k0_num = (1u64 << (2 * r)) + 8;
    let k1_num = (1u64 << (2 * (r - 1))) + 8;
    assert!(k_num % 3 == 0 && k0_num % 3 == 0 && k1_num % 3 == 0);
    Ok(BlockInvariants {
        defect: 2 * r + 1,
        k: k_num / 3,
        k_by_height: vec![k0_num / 3, k1_num / 3],
        l: 3,
        source: SourceTag::SpecialCase,
    })
}

/// Blocks with defect group C_{2^s} x C2 x C2 and inertial index 3:
/// k = k0 = 2^(s+2), l = 3.
pub fn invariants_eb3(s: u32) -> BlockInvariants {
    BlockInvariants {
        defect: s + 2,
        k: 1 << (s + 2),
        k_by_height: vec![1 << (s + 2)],
        l: 3,
        source: SourceTag::Theorem,
    }
}

/// Bounds for the open r = s case: the difference k - l is settled, l >= 3,
/// and k is squeezed between them and the (|D|+16)/3 bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReqSBounds {
    pub defect: u32,
    pub k_minus_l: u64,
    pub l_min: u64,
    pub k_min: u64,
    pub k_max: u64,
    pub source: SourceTag,
}

pub fn req_s_bounds(r: u32) -> Result<ReqSBounds> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let k_minus_l_num = (5u64 << (2 * (r - 1))) + 7;
    assert!(k_minus_l_num % 3 == 0);
    let k_minus_l = k_minus_l_num / 3;
    let order = 1u64 << (2 * r + 1);
    Ok(ReqSBounds {
        defect: 2 * r + 1,
        k_minus_l,
        l_min: 3,
        k_min: k_minus_l + 3,
        k_max: (order + 16) / 3,
        source: SourceTag::BoundOnly,
    })
}

/// Gate results: the weighted height-sum bound, the k0 bound against
/// |D : D'|, the (|D|+16)/3 bound where it applies, and the vanishing of
/// heights >= 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityGates {
    pub robinson: bool,
    pub olsson: bool,
    pub kw_bound: Option<bool>,
    pub heights_above_3_vanish: bool,
}

impl InequalityGates {
    pub fn all_pass(&self) -> bool {
        self.robinson
            && self.olsson
            && self.kw_bound.unwrap_or(true)
            && self.heights_above_3_vanish
    }
}

/// `dd_prime_index` is |D : D'|; `kw` applies the (|D|+16)/3 bound (the
/// r = s family only).
pub fn check_inequalities(inv: &BlockInvariants, dd_prime_index: u64, kw: bool) -> InequalityGates {
    let weighted: u64 = inv
        .k_by_height
        .iter()
        .enumerate()
        .map(|(i, &k_i)| (1u64 << (2 * i)) * k_i)
        .sum();
    let robinson = inv.k <= weighted && weighted <= inv.group_order();
    let k0 = inv.k_by_height.first().copied().unwrap_or(0);
    let olsson = k0 <= dd_prime_index;
    let kw_bound = kw.then(|| inv.k <= (inv.group_order() + 16) / 3);
    let heights_above_3_vanish = inv.k_by_height.iter().skip(4).all(|&k_i| k_i == 0);
    InequalityGates {
        robinson,
        olsson,
        kw_bound,
        heights_above_3_vanish,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf_group::{conjugacy_class_count, GroupParams};

    #[test]
    fn rs1_values() {
        let inv = invariants_rs1(2).unwrap();
        assert_eq!(
            (inv.k, inv.k_by_height[0], inv.k_by_height[1], inv.l),
            (10, 8, 2, 2)
        );
        let inv = invariants_rs1(4).unwrap();
        assert_eq!(
            (inv.k, inv.k_by_height[0], inv.k_by_height[1], inv.l),
            (40, 32, 8, 2)
        );
        assert!(invariants_rs1(1).is_err());
        for r in 2..=6 {
            let inv = invariants_rs1(r).unwrap();
            assert!(inv.heights_sum_to_k());
            // k equals the ordinary character count of the defect group
            let p = GroupParams::new(r, 1).unwrap();
            assert_eq!(inv.k, conjugacy_class_count(p));
        }
    }

    #[test]
    fn req_s_special_values() {
        let inv = invariants_req_s_special(2).unwrap();
        assert_eq!(
            (inv.k, inv.k_by_height[0], inv.k_by_height[1], inv.l),
            (12, 8, 4, 3)
        );
        let inv = invariants_req_s_special(3).unwrap();
        assert_eq!(
            (inv.k, inv.k_by_height[0], inv.k_by_height[1], inv.l),
            (32, 24, 8, 3)
        );
        for r in 2..=8 {
            let inv = invariants_req_s_special(r).unwrap();
            assert!(inv.heights_sum_to_k()); // no characters of height >= 2
        }
    }

    #[test]
    fn divisibility_of_the_fractions() {
        for r in 2..=8u32 {
            assert_eq!(((5u64 << (2 * (r - 1))) + 16) % 3, 0);
            assert_eq!(((1u64 << (2 * r)) + 8) % 3, 0);
            assert_eq!(((5u64 << (2 * (r - 1))) + 4) % 3, 0);
            assert_eq!(((5u64 << (2 * (r - 1))) + 7) % 3, 0);
        }
    }

    #[test]
    fn eb3_values() {
        let inv = invariants_eb3(0);
        assert_eq!((inv.k, inv.l), (4, 3));
        let inv = invariants_eb3(2);
        assert_eq!(inv.k, 16);
        assert_eq!(inv.k_by_height, vec![16]);
        for s in 0..=5u32 {
            let inv = invariants_eb3(s);
            // subsection bookkeeping: k - l = 2^s + (2^s - 1) * 3
            assert_eq!(inv.k - inv.l, (1 << s) + ((1u64 << s) - 1) * 3);
            assert_eq!(inv.k - inv.l, (1 << (s + 2)) - 3);
        }
    }

    #[test]
    fn req_s_bounds_are_consistent() {
        for r in 2..=6 {
            let b = req_s_bounds(r).unwrap();
            let special = invariants_req_s_special(r).unwrap();
            assert_eq!(special.k - special.l, b.k_minus_l);
            assert!(b.k_min <= special.k && special.k <= b.k_max);
            assert_eq!(b.source, SourceTag::BoundOnly);
        }
    }

    #[test]
    fn inequality_gates() {
        // r = 2 family: 8 + 4*2 = 16 = |D|, equality in the height bound
        let inv = invariants_rs1(2).unwrap();
        let gates = check_inequalities(&inv, 1 << 3, false);
        assert!(gates.all_pass());
        assert_eq!(
            inv.k_by_height[0] + 4 * inv.k_by_height[1],
            inv.group_order()
        );

        // r = s = 2: k = 12 <= (32+16)/3 = 16
        let inv = invariants_req_s_special(2).unwrap();
        let gates = check_inequalities(&inv, 1 << 4, true);
        assert!(gates.all_pass());
        assert_eq!(gates.kw_bound, Some(true));

        // fabricated k0 = 2^(r+2) violates the index bound
        let bad = BlockInvariants {
            defect: 4,
            k: 16,
            k_by_height: vec![16],
            l: 2,
            source: SourceTag::Theorem,
        };
        let gates = check_inequalities(&bad, 8, false);
        assert!(!gates.olsson);

        for r in 2..=6 {
            let inv = invariants_rs1(r).unwrap();
            assert!(check_inequalities(&inv, 1 << (r + 1), false).all_pass());
        }
        for r in 2..=5 {
            let inv = invariants_req_s_special(r).unwrap();
            assert!(check_inequalities(&inv, 1 << (2 * r), true).all_pass());
        }
        for s in 0..=5 {
            let inv = invariants_eb3(s);
            assert!(check_inequalities(&inv, 1 << (s + 2), false).all_pass());
        }
    }
}
