//! Subsection representative sets for both families.
//!
//! For r > s = 1 the set is Z(D) together with all x^i y^j with i odd; for
//! r = s it is a transversal of the order-3 orbits on Z(D) together with
//! all y^i x^(2j) with i odd. Each entry carries the Brauer character count
//! of its subsection (the l-value, attached as data from the case analysis)
//! and a Galois orbit tag. On top: the k - l cross-check, the column orbit
//! census under the 2-adic Galois action, and the chains of elementary
//! abelian subgroups used by the cancellation argument.

use crate::nf_group::{
    self, conjugate, element_order, inverse, is_central, multiply, subgroup_closure_nf,
    GroupParams, NfAutomorphism, NfElement,
};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsectionCase {
    Rs1,
    ReqS,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsectionEntry {
    pub element: NfElement,
    pub l_value: u64,
    pub orbit_id: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsectionSet {
    pub params: GroupParams,
    pub case: SubsectionCase,
    /// sorted by element; the identity entry carries l(B) itself and is
    /// excluded from the k - l sum
    pub entries: Vec<SubsectionEntry>,
    pub canonical_c: Option<NfElement>,
}

impl SubsectionSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, e: NfElement) -> Option<&SubsectionEntry> {
        self.entries.iter().find(|en| en.element == e)
    }

    pub fn orbit_count(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.orbit_id)
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// The fixed central element c = x^2 (order 2^(r-1), z outside <c>).
pub fn canonical_c(_p: GroupParams) -> NfElement {
    NfElement { a: 2, b: 0, c: 0 }
}

/// Subsection representative of the conjugacy class of g: central elements
/// are their own class, noncentral classes {g, gz} are represented by the
/// z-free member.
fn class_rep(p: GroupParams, g: NfElement) -> NfElement {
    if is_central(p, g) {
        g
    } else {
        NfElement { c: 0, ..g }
    }
}

/// Galois orbit ids for a list of subsection representatives: orbits of
/// u -> rep(u^gamma) over odd gamma modulo the exponent 2^r, where rep is
/// conjugacy normalization composed with `central_rep` on central values.
fn galois_orbit_ids<F>(
    p: GroupParams,
    elements: &[NfElement],
    central_rep: F,
) -> Vec<usize>
where
    F: Fn(NfElement) -> NfElement,
{
    let index: BTreeMap<NfElement, usize> = elements
        .iter()
        .copied()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let exponent = p.x_modulus().max(2 * p.y_modulus());
    let mut orbit_of = vec![usize::MAX; elements.len()];
    let mut next_orbit = 0;
    for (i, &u) in elements.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut stack = vec![u];
        orbit_of[i] = next_orbit;
        while let Some(v) = stack.pop() {
            let mut gamma = 1;
            while gamma < exponent {
                let mut w = class_rep(p, nf_group::power(p, v, gamma as i64));
                if is_central(p, w) {
                    w = central_rep(w);
                }
                let j = *index
                    .get(&w)
                    .unwrap_or_else(|| panic!("orbit left the set at {w:?}"));
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = next_orbit;
                    stack.push(elements[j]);
                }
                gamma += 2;
            }
        }
        next_orbit += 1;
    }
    orbit_of
}

/// The r > s = 1 set: Z(D) plus all x^i y^j with i odd; size 2^(r+1).
/// l-values: 2 on <c> \ {1} and on the identity (which stands for l(B)),
/// 1 everywhere else.
pub fn t_set_rs1(r: u32) -> Result<SubsectionSet> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let p = GroupParams::new(r, 1)?;
    let c = canonical_c(p);
    let c_cyclic: BTreeSet<NfElement> = subgroup_closure_nf(p, &[c]).into_iter().collect();
    debug_assert_eq!(element_order(p, c), 1 << (r - 1));
    debug_assert!(!c_cyclic.contains(&NfElement::z()));
    let mut elements: Vec<NfElement> = p.elements().filter(|&g| is_central(p, g)).collect();
    for i in (1..p.x_modulus()).step_by(2) {
        for j in 0..2 {
            elements.push(NfElement { a: i, b: j, c: 0 });
        }
    }
    elements.sort_unstable();
    let orbit_ids = galois_orbit_ids(p, &elements, |w| w);
    let entries = elements
        .iter()
        .zip(&orbit_ids)
        .map(|(&element, &orbit_id)| SubsectionEntry {
            element,
            l_value: if c_cyclic.contains(&element) { 2 } else { 1 },
            orbit_id,
        })
        .collect();
    Ok(SubsectionSet {
        params: p,
        case: SubsectionCase::Rs1,
        entries,
        canonical_c: Some(c),
    })
}

/// The canonical order-3 automorphism of D(r,r): x -> y, y -> x^-1 y^-1.
pub fn order3_automorphism(p: GroupParams) -> Result<NfAutomorphism> {
    if p.r() != p.s() || p.r() < 2 {
        return Err(Error::InvalidParams(
            "an order-3 automorphism needs r = s >= 2".into(),
        ));
    }
    let ximg = NfElement::y();
    let yimg = multiply(
        p,
        inverse(p, NfElement::x()),
        inverse(p, NfElement::y()),
    );
    let alpha = NfAutomorphism::from_images(p, ximg, yimg)?;
    debug_assert_eq!(alpha.order(), 3);
    Ok(alpha)
}

/// The r = s set: a lexicographically least transversal of the alpha-orbits
/// on Z(D), plus all y^i x^(2j) with i odd; size (5*2^(2(r-1)) + 4)/3.
/// l-values: 3 at z and the identity (the latter stands for l(B)), 1
/// everywhere else.
pub fn t_set_req_s(r: u32, alpha: &NfAutomorphism) -> Result<SubsectionSet> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let p = GroupParams::new(r, r)?;
    if alpha.params != p {
        return Err(Error::InvalidParams("automorphism acts on the wrong group".into()));
    }
    if alpha.order() != 3 {
        return Err(Error::NotAutomorphism("need an automorphism of order 3".into()));
    }
    // transversal of alpha-orbits on the center, least representative first
    let center: Vec<NfElement> = p.elements().filter(|&g| is_central(p, g)).collect();
    let mut transversal: Vec<NfElement> = Vec::new();
    let mut seen: BTreeSet<NfElement> = BTreeSet::new();
    for &u in &center {
        if seen.contains(&u) {
            continue;
        }
        let orbit = [u, alpha.apply(u), alpha.apply(alpha.apply(u))];
        let rep = *orbit.iter().min().unwrap();
        transversal.push(rep);
        seen.extend(orbit);
    }
    transversal.sort_unstable();
    let rep_of: BTreeMap<NfElement, NfElement> = center
        .iter()
        .map(|&u| {
            let orbit = [u, alpha.apply(u), alpha.apply(alpha.apply(u))];
            (u, *orbit.iter().min().unwrap())
        })
        .collect();
    let mut elements = transversal.clone();
    for i in (1..p.y_modulus()).step_by(2) {
        for j in (0..p.x_modulus()).step_by(2) {
            // y^i x^(2j') has normal form (even, odd, 0)
            let e = multiply(
                p,
                nf_group::power(p, NfElement::y(), i as i64),
                nf_group::power(p, NfElement::x(), j as i64),
            );
            debug_assert_eq!(e, NfElement { a: j, b: i, c: 0 });
            elements.push(e);
        }
    }
    elements.sort_unstable();
    let orbit_ids = galois_orbit_ids(p, &elements, |w| rep_of[&w]);
    let z = NfElement::z();
    let entries = elements
        .iter()
        .zip(&orbit_ids)
        .map(|(&element, &orbit_id)| SubsectionEntry {
            element,
            l_value: if element == z || element.is_identity() { 3 } else { 1 },
            orbit_id,
        })
        .collect();
    Ok(SubsectionSet {
        params: p,
        case: SubsectionCase::ReqS,
        entries,
        canonical_c: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KMinusLCheck {
    pub sum: u64,
    pub closed_form: u64,
    pub matches: bool,
}

/// Sum of l-values over nonidentity entries against the closed form for
/// the case: 2^(r+1) + 2^(r-1) - 2 for r > s = 1, (5*2^(2(r-1)) + 7)/3 for
/// r = s.
pub fn k_minus_l_check(ts: &SubsectionSet) -> KMinusLCheck {
    let sum: u64 = ts
        .entries
        .iter()
        .filter(|e| !e.element.is_identity())
        .map(|e| e.l_value)
        .sum();
    let r = ts.params.r();
    let closed_form = match ts.case {
        SubsectionCase::Rs1 => (1 << (r + 1)) + (1 << (r - 1)) - 2,
        SubsectionCase::ReqS => ((5 << (2 * (r - 1))) + 7) / 3,
    };
    KMinusLCheck {
        sum,
        closed_form,
        matches: sum == closed_form,
    }
}

/// Column orbit census under the Galois action, r > s = 1 case: subsections
/// in <c> (including 1) carry two Brauer characters and hence two columns
/// each; everything else carries one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisOrbitReport {
    pub orbit_count: usize,
    /// sorted orbit lengths, one entry per column orbit
    pub length_multiset: Vec<usize>,
    /// 2-conjugate character family sizes at height 0 and 1 (theorem data;
    /// their counts must rebalance the column census exactly)
    pub height0_family_sizes: Vec<u64>,
    pub height1_family_sizes: Vec<u64>,
}

pub fn galois_orbit_structure(ts: &SubsectionSet) -> Result<GaloisOrbitReport> {
    if ts.case != SubsectionCase::Rs1 {
        return Err(Error::InvalidParams("column census needs the r > s = 1 case".into()));
    }
    let p = ts.params;
    let r = p.r();
    let c_cyclic: BTreeSet<NfElement> =
        subgroup_closure_nf(p, &[ts.canonical_c.unwrap()]).into_iter().collect();
    // columns: (u, character index), two per <c>-member, one otherwise
    let columns: Vec<(NfElement, u8)> = ts
        .entries
        .iter()
        .flat_map(|e| {
            let n = if c_cyclic.contains(&e.element) { 2 } else { 1 };
            (0..n).map(move |i| (e.element, i))
        })
        .collect();
    let col_index: BTreeMap<(NfElement, u8), usize> = columns
        .iter()
        .copied()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let mut orbit_of = vec![usize::MAX; columns.len()];
    let mut lengths = Vec::new();
    for start in 0..columns.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let orbit_id = lengths.len();
        let mut members = BTreeSet::new();
        let mut stack = vec![columns[start]];
        orbit_of[start] = orbit_id;
        members.insert(start);
        while let Some((u, chi)) = stack.pop() {
            let mut gamma = 1;
            while gamma < p.x_modulus() {
                let w = class_rep(p, nf_group::power(p, u, gamma as i64));
                let j = col_index[&(w, chi)];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbit_id;
                    members.insert(j);
                    stack.push(columns[j]);
                }
                gamma += 2;
            }
        }
        lengths.push(members.len());
    }
    lengths.sort_unstable();
    // character family sizes: 1,1,1,1,2,2,...,2^(r-1),2^(r-1) at height 0
    // and 1,1,2,...,2^(r-2) at height 1
    let mut height0 = vec![1, 1, 1, 1];
    for i in 1..r {
        height0.push(1 << i);
        height0.push(1 << i);
    }
    let mut height1 = vec![1, 1];
    for i in 1..r.saturating_sub(1) {
        height1.push(1 << i);
    }
    let report = GaloisOrbitReport {
        orbit_count: lengths.len(),
        length_multiset: lengths,
        height0_family_sizes: height0,
        height1_family_sizes: height1,
    };
    // the two censuses count the same orbits
    debug_assert_eq!(
        report.height0_family_sizes.len() + report.height1_family_sizes.len(),
        report.orbit_count
    );
    Ok(report)
}

/// Chains of nontrivial elementary abelian subgroups of D(r,1), up to
/// conjugacy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub max_length: usize,
    pub e8_class_count: usize,
    /// class counts indexed by chain length - 1
    pub chain_counts_by_length: Vec<u64>,
    /// every maximal-length chain tops out at the unique order-8 subgroup
    pub longest_all_end_at_top: bool,
}

pub fn elem_abelian_chains(p: GroupParams) -> Result<ChainReport> {
    if p.s() != 1 || p.r() < 2 {
        return Err(Error::InvalidParams("chain census needs r >= 2, s = 1".into()));
    }
    // all involutions together with 1 must form one elementary abelian
    // subgroup of order 8 (x^(2^(r-1)), y, z and their products)
    let top: Vec<NfElement> = p
        .elements()
        .filter(|&g| multiply(p, g, g).is_identity())
        .collect();
    assert_eq!(top.len(), 8, "involutions plus identity");
    for &g in &top {
        for &h in &top {
            let ghk = multiply(p, g, h);
            assert!(top.contains(&ghk), "involution set is closed");
            assert_eq!(multiply(p, g, h), multiply(p, h, g), "and abelian");
        }
    }
    // every elementary abelian subgroup sits inside `top`; enumerate its
    // nontrivial subgroups (7 lines, 7 planes, the whole space)
    let mut subs: Vec<Vec<NfElement>> = Vec::new();
    let nonid: Vec<NfElement> = top.iter().copied().filter(|g| !g.is_identity()).collect();
    for mask in 1u32..(1 << 7) {
        let gens: Vec<NfElement> = (0..7).filter(|i| mask & (1 << i) != 0).map(|i| nonid[i]).collect();
        let sub = subgroup_closure_nf(p, &gens);
        if !subs.contains(&sub) {
            subs.push(sub);
        }
    }
    subs.sort();
    assert_eq!(subs.len(), 15); // 7 + 7 + 1
    let e8_class_count = subs.iter().filter(|s| s.len() == 8).count();

    // chains under inclusion, canonicalized by least conjugate
    let mut chain_classes: BTreeSet<Vec<Vec<NfElement>>> = BTreeSet::new();
    let mut max_length = 0;
    let mut longest_all_end_at_top = true;
    let mut stack: Vec<Vec<usize>> = (0..subs.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let chain_subs: Vec<&Vec<NfElement>> = chain.iter().map(|&i| &subs[i]).collect();
        let canon = canonical_chain(p, &chain_subs);
        if chain_classes.insert(canon) {
            if chain.len() > max_length {
                max_length = chain.len();
            }
        }
        let last = &subs[*chain.last().unwrap()];
        for (j, cand) in subs.iter().enumerate() {
            if cand.len() > last.len() && last.iter().all(|g| cand.contains(g)) {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    let mut chain_counts_by_length = vec![0u64; max_length];
    for chain in &chain_classes {
        chain_counts_by_length[chain.len() - 1] += 1;
        if chain.len() == max_length && chain.last().unwrap().len() != 8 {
            longest_all_end_at_top = false;
        }
    }
    Ok(ChainReport {
        max_length,
        e8_class_count,
        chain_counts_by_length,
        longest_all_end_at_top,
    })
}

fn canonical_chain(p: GroupParams, chain: &[&Vec<NfElement>]) -> Vec<Vec<NfElement>> {
    let mut best: Option<Vec<Vec<NfElement>>> = None;
    for t in p.elements() {
        let conj: Vec<Vec<NfElement>> = chain
            .iter()
            .map(|sub| {
                let mut c: Vec<NfElement> = sub.iter().map(|&g| conjugate(p, g, t)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.unwrap()
}
