//! Generic finite-group engine over dense multiplication tables.
//!
//! Groups are built from concrete element sets (normal forms, permutation
//! pairs, cosets) and then handled uniformly through element indices:
//! closures, normalizers, quotients, abelian invariants and subgroup-class
//! enumeration by cyclic extension.

use crate::nf_group::{self, AbelianType, GroupParams, NfElement};
use crate::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// Hard cap on table-backed group orders.
pub const TABLE_CAP: usize = 1 << 12;

/// Full-lattice enumeration cap without an order filter.
pub const LATTICE_CAP: usize = 1 << 8;

/// A finite group as an indexed multiplication table.
#[derive(Debug, Clone)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
}

impl CayleyGroup {
    /// Build from a deterministic element list and a multiplication closure.
    /// The element list must be closed under the product.
    pub fn from_elements<T, F>(
        elements: Vec<T>,
        labels: Option<Vec<String>>,
        mul: F,
    ) -> Result<Self>
    where
        T: Clone + Eq + std::hash::Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        if n == 0 || n > TABLE_CAP {
            return Err(Error::CapExceeded(format!("group order {n} out of range")));
        }
        let index: HashMap<&T, usize> = elements.iter().zip(0..).collect();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = mul(&elements[i], &elements[j]);
                let k = *index
                    .get(&p)
                    .ok_or_else(|| Error::InvalidParams("element set not closed".into()))?;
                table[i * n + j] = k as u32;
            }
        }
        Self::from_table(table, labels)
    }

    /// Build from a raw table; checks the Latin-square property, finds the
    /// identity and fills the inverse table.
    pub fn from_table(table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = (table.len() as f64).sqrt() as usize;
        if n * n != table.len() {
            return Err(Error::SizeMismatch("table is not square".into()));
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[table[i * n + j] as usize] = true;
                col[table[j * n + i] as usize] = true;
            }
            if row.iter().any(|&b| !b) || col.iter().any(|&b| !b) {
                return Err(Error::InvalidParams("table is not a Latin square".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|g| table[e * n + g] as usize == g && table[g * n + e] as usize == g)
            })
            .ok_or_else(|| Error::InvalidParams("no identity element".into()))?;
        let mut inverse = vec![0u32; n];
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g * n + h] as usize == identity)
                .ok_or_else(|| Error::InvalidParams("missing inverse".into()))?;
            if table[inv * n + g] as usize != identity {
                return Err(Error::InvalidParams("one-sided inverse".into()));
            }
            inverse[g] = inv as u32;
        }
        Ok(CayleyGroup {
            order: n,
            table,
            inverse,
            identity,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    pub fn conj(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inv(by))
    }

    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(self.mul(h, g)))
    }

    pub fn pow(&self, g: usize, n: u64) -> usize {
        let mut acc = self.identity;
        let mut base = g;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut acc = g;
        let mut n = 1;
        while acc != self.identity {
            acc = self.mul(acc, g);
            n += 1;
        }
        n
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels
            .as_ref()
            .and_then(|ls| ls.iter().position(|l| l == label))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (g..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect()
    }

    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| set.iter().all(|&h| self.mul(g, h) == self.mul(h, g)))
            .collect()
    }

    pub fn normalizer(&self, subgroup: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        (0..self.order)
            .filter(|&g| subgroup.iter().all(|&h| set.contains(&self.conj(h, g))))
            .collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for t in 0..self.order {
                class.insert(self.conj(g, t));
            }
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Associativity check: exhaustive below 2^7, sampled above (the
    /// Latin-square/identity/inverse checks already ran at construction).
    pub fn check_associativity(&self, samples: usize, seed: u64) -> bool {
        if self.order <= (1 << 7) {
            for g in 0..self.order {
                for h in 0..self.order {
                    for k in 0..self.order {
                        if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)) {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        // small LCG; avoids a rand dependency in the library proper
        let mut state = seed | 1;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize % self.order
        };
        for _ in 0..samples {
            let (g, h, k) = (next(), next(), next());
            if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)) {
                return false;
            }
        }
        true
    }

    /// Text dump: header `order n`, then n label lines, then n table rows.
    pub fn dump(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for g in 0..self.order {
            out.push_str(&self.label(g));
            out.push('\n');
        }
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| self.mul(i, j).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Subgroup of a table-backed group: sorted element indices plus the
/// generators it was built from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgroupRef {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
}

impl SubgroupRef {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

/// Least subgroup containing the generators; deterministic sorted list.
pub fn subgroup_closure(group: &CayleyGroup, gens: &[usize]) -> SubgroupRef {
    let mut seen = vec![false; group.order()];
    seen[group.identity()] = true;
    let mut frontier = vec![group.identity()];
    while let Some(g) = frontier.pop() {
        for &t in gens {
            for n in [group.mul(g, t), group.mul(t, g)] {
                if !seen[n] {
                    seen[n] = true;
                    frontier.push(n);
                }
            }
        }
    }
    SubgroupRef {
        elements: (0..group.order()).filter(|&g| seen[g]).collect(),
        generators: gens.to_vec(),
    }
}

pub fn subgroup_from_elements(elements: Vec<usize>) -> SubgroupRef {
    debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
    SubgroupRef {
        generators: elements.clone(),
        elements,
    }
}

/// D(r,s) as a Cayley table with normal-form labels; element 0 is the
/// identity because (0,0,0) sorts first.
pub fn build_nf_group(p: GroupParams) -> Result<CayleyGroup> {
    if p.order() as usize > TABLE_CAP {
        return Err(Error::CapExceeded(format!("|D| = {}", p.order())));
    }
    let elements: Vec<NfElement> = p.elements().collect();
    let labels = elements.iter().map(|g| g.label()).collect();
    CayleyGroup::from_elements(elements, Some(labels), |g, h| nf_group::multiply(p, *g, *h))
}

/// Index of (a, b, c) inside the group built by `build_nf_group`.
pub fn nf_index(p: GroupParams, g: NfElement) -> usize {
    ((g.a * p.y_modulus() + g.b) * 2 + g.c) as usize
}

// --- permutations of four points, for the alternating-group construction ---

pub type Perm4 = [u8; 4];

pub const PERM4_ID: Perm4 = [0, 1, 2, 3];

pub fn perm_compose(a: Perm4, b: Perm4) -> Perm4 {
    // (a o b)(i) = a(b(i))
    [
        a[b[0] as usize],
        a[b[1] as usize],
        a[b[2] as usize],
        a[b[3] as usize],
    ]
}

pub fn perm_inverse(a: Perm4) -> Perm4 {
    let mut r = [0u8; 4];
    for i in 0..4 {
        r[a[i] as usize] = i as u8;
    }
    r
}

pub fn perm_is_even(a: Perm4) -> bool {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if a[i] > a[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

pub fn all_perms() -> Vec<Perm4> {
    let mut out = Vec::new();
    let mut p: Perm4 = PERM4_ID;
    loop {
        out.push(p);
        // next permutation in lexicographic order
        let mut i = 3;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub fn all_even_perms() -> Vec<Perm4> {
    all_perms().into_iter().filter(|&p| perm_is_even(p)).collect()
}

pub fn perm_label(p: Perm4) -> String {
    // cycle notation on points 1..4
    let mut seen = [false; 4];
    let mut out = String::new();
    for start in 0..4 {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut cur = p[start] as usize;
        while cur != start {
            seen[cur] = true;
            cyc.push(cur);
            cur = p[cur] as usize;
        }
        out.push('(');
        out.push_str(
            &cyc.iter()
                .map(|&i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A4 as a Cayley table (test target for fusion checks).
pub fn build_a4() -> CayleyGroup {
    let elems = all_even_perms();
    let labels = elems.iter().map(|&p| perm_label(p)).collect();
    CayleyGroup::from_elements(elems, Some(labels), |a, b| perm_compose(*a, *b))
        .expect("A4 table")
}

/// The semidirect product A4 x| C_{2^r} where the cyclic generator acts by
/// conjugation with a fixed 4-cycle t chosen so that (12)(34) maps to
/// (13)(24). Carries the indices of the distinguished generators
/// x~ = (id, 1) and y~ = ((12)(34), 0).
pub struct A4Semidirect {
    pub group: CayleyGroup,
    pub xt: usize,
    pub yt: usize,
}

/// t = (1 3 4 2): 1 -> 3 -> 4 -> 2 -> 1, i.e. [2, 0, 3, 1] zero-indexed;
/// conjugation by t sends (12)(34) to (13)(24).
pub const A4_TWIST: Perm4 = [2, 0, 3, 1];

pub fn build_a4_semidirect(r: u32) -> Result<A4Semidirect> {
    build_a4_semidirect_with_twist(r, A4_TWIST)
}

/// Same construction for an arbitrary 4-cycle twist (the isomorphism type
/// does not depend on the choice; tests verify that).
pub fn build_a4_semidirect_with_twist(r: u32, twist: Perm4) -> Result<A4Semidirect> {
    if r < 2 {
        return Err(Error::InvalidParams(
            "need r >= 2 for an order-4 action".into(),
        ));
    }
    let h_order = 1u64 << r;
    if 12 * h_order > TABLE_CAP as u64 {
        return Err(Error::CapExceeded(format!("|G| = {}", 12 * h_order)));
    }
    {
        let t2 = perm_compose(twist, twist);
        if t2 == PERM4_ID || perm_compose(t2, t2) != PERM4_ID {
            return Err(Error::InvalidParams("twist must be a 4-cycle".into()));
        }
    }
    let mut elements: Vec<(Perm4, u64)> = Vec::with_capacity(12 * h_order as usize);
    for sigma in all_even_perms() {
        for h in 0..h_order {
            elements.push((sigma, h));
        }
    }
    elements.sort();
    let labels = elements
        .iter()
        .map(|&(sigma, h)| format!("({}, {})", perm_label(sigma), h))
        .collect();
    // phi_h = conjugation by twist^h; the action has order 4
    let twist_pows: [Perm4; 4] = {
        let mut v = [PERM4_ID; 4];
        for i in 1..4 {
            v[i] = perm_compose(twist, v[i - 1]);
        }
        v
    };
    let act = |h: u64, sigma: Perm4| -> Perm4 {
        let t = twist_pows[(h % 4) as usize];
        perm_compose(perm_compose(t, sigma), perm_inverse(t))
    };
    let group = CayleyGroup::from_elements(elements.clone(), Some(labels), |a, b| {
        (perm_compose(a.0, act(a.1, b.0)), (a.1 + b.1) % h_order)
    })?;
    let find = |target: (Perm4, u64)| elements.iter().position(|&e| e == target).unwrap();
    Ok(A4Semidirect {
        xt: find((PERM4_ID, 1)),
        yt: find(([1, 0, 3, 2], 0)),
        group,
    })
}

/// True iff gx, gy satisfy the five defining relations of D(r,s) and
/// generate a subgroup of order 2^(r+s+1); a surjective image of the
/// presented group with equal order is an isomorphism.
pub fn presentation_match(group: &CayleyGroup, gx: usize, gy: usize, p: GroupParams) -> bool {
    let e = group.identity();
    let z = group.commutator(gx, gy);
    group.pow(gx, p.x_modulus()) == e
        && group.pow(gy, p.y_modulus()) == e
        && group.mul(z, z) == e
        && group.commutator(gx, z) == e
        && group.commutator(gy, z) == e
        && subgroup_closure(group, &[gx, gy]).order() as u64 == p.order()
}

/// Coset group G/N; rejects non-normal N. Cosets are labeled by their
/// least representative.
pub fn quotient(group: &CayleyGroup, n: &SubgroupRef) -> Result<CayleyGroup> {
    let nset: BTreeSet<usize> = n.elements.iter().copied().collect();
    for g in 0..group.order() {
        for &h in &n.elements {
            if !nset.contains(&group.conj(h, g)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let mut coset_rep = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if coset_rep[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = n.elements.iter().map(|&h| group.mul(g, h)).collect();
        members.sort_unstable();
        let rep = members[0];
        for &m in &members {
            coset_rep[m] = rep;
        }
        reps.push(rep);
    }
    reps.sort_unstable();
    let rep_index: HashMap<usize, usize> = reps.iter().copied().zip(0..).collect();
    let m = reps.len();
    let mut table = vec![0u32; m * m];
    for (i, &gi) in reps.iter().enumerate() {
        for (j, &gj) in reps.iter().enumerate() {
            table[i * m + j] = rep_index[&coset_rep[group.mul(gi, gj)]] as u32;
        }
    }
    let labels = reps
        .iter()
        .map(|&g| format!("[{}]", group.label(g)))
        .collect();
    CayleyGroup::from_table(table, Some(labels))
}

/// Invariant factors of an abelian group, splitting off an element of
/// maximal order and recursing on the quotient.
pub fn abelian_invariants(group: &CayleyGroup) -> Result<AbelianType> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut factors = Vec::new();
    let mut current = group.clone();
    while current.order() > 1 {
        let g = (0..current.order())
            .max_by_key(|&g| (current.element_order(g), std::cmp::Reverse(g)))
            .unwrap();
        factors.push(current.element_order(g));
        let cyclic = subgroup_closure(&current, &[g]);
        current = quotient(&current, &cyclic)?;
    }
    Ok(AbelianType::new(factors))
}

/// Restrict the parent table to a subgroup, giving a standalone group.
pub fn subgroup_as_group(group: &CayleyGroup, sub: &SubgroupRef) -> CayleyGroup {
    let idx: HashMap<usize, usize> = sub.elements.iter().copied().zip(0..).collect();
    let n = sub.elements.len();
    let mut table = vec![0u32; n * n];
    for (i, &a) in sub.elements.iter().enumerate() {
        for (j, &b) in sub.elements.iter().enumerate() {
            table[i * n + j] = idx[&group.mul(a, b)] as u32;
        }
    }
    let labels = sub.elements.iter().map(|&g| group.label(g)).collect();
    CayleyGroup::from_table(table, Some(labels)).expect("subgroup table")
}

/// Conjugacy classes of subgroups by cyclic extension, bottom-up. Requires
/// a solvable group (every group this crate builds is); each class is
/// represented by its lexicographically least conjugate, and the result is
/// sorted by (order, element list).
pub fn subgroup_classes(
    group: &CayleyGroup,
    order_filter: Option<usize>,
) -> Result<Vec<SubgroupRef>> {
    if order_filter.is_none() && group.order() > LATTICE_CAP {
        return Err(Error::CapExceeded(format!(
            "full lattice needs |G| <= {LATTICE_CAP}; pass an order filter"
        )));
    }
    if !is_solvable(group) {
        return Err(Error::InvalidParams(
            "subgroup enumeration by cyclic extension needs a solvable group".into(),
        ));
    }
    let primes = prime_divisors(group.order());
    let trivial = vec![group.identity()];
    let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
    known.insert(trivial.clone());
    let mut queue = vec![trivial];
    let mut out: Vec<Vec<usize>> = Vec::new();
    while let Some(h) = queue.pop() {
        if order_filter.is_none_or(|m| h.len() == m) {
            out.push(h.clone());
        }
        let normalizer = group.normalizer(&h);
        let hset: BTreeSet<usize> = h.iter().copied().collect();
        for &p in &primes {
            let target = h.len() * p;
            if target > group.order()
                || group.order() % target != 0
                || order_filter.is_some_and(|m| m % target != 0)
            {
                continue;
            }
            for &g in &normalizer {
                if hset.contains(&g) || !hset.contains(&group.pow(g, p as u64)) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let ext = subgroup_closure(group, &gens);
                if ext.order() != target {
                    continue; // some intermediate power of g escapes h
                }
                let canon = canonical_conjugate(group, &ext.elements);
                if known.insert(canon.clone()) {
                    queue.push(canon);
                }
            }
        }
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out.into_iter().map(subgroup_from_elements).collect())
}

/// Lexicographically least conjugate element list — the class key.
pub fn canonical_conjugate(group: &CayleyGroup, elements: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for t in 0..group.order() {
        let mut conj: Vec<usize> = elements.iter().map(|&g| group.conj(g, t)).collect();
        conj.sort_unstable();
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.unwrap()
}

pub fn is_solvable(group: &CayleyGroup) -> bool {
    let mut current: Vec<usize> = (0..group.order()).collect();
    loop {
        if current.len() == 1 {
            return true;
        }
        let mut gens = BTreeSet::new();
        for &g in &current {
            for &h in &current {
                gens.insert(group.commutator(g, h));
            }
        }
        let derived = subgroup_closure(group, &gens.into_iter().collect::<Vec<_>>());
        if derived.elements.len() == current.len() {
            return false;
        }
        current = derived.elements;
    }
}

pub fn derived_subgroup(group: &CayleyGroup) -> SubgroupRef {
    let mut gens = BTreeSet::new();
    for g in 0..group.order() {
        for h in 0..group.order() {
            gens.insert(group.commutator(g, h));
        }
    }
    subgroup_closure(group, &gens.into_iter().collect::<Vec<_>>())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: u32, s: u32) -> GroupParams {
        GroupParams::new(r, s).unwrap()
    }

    #[test]
    fn nf_group_tables() {
        let p = params(2, 1);
        let g = build_nf_group(p).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.identity(), 0);
        assert!(g.check_associativity(0, 0));
        for a in p.elements() {
            for b in p.elements() {
                let prod = nf_group::multiply(p, a, b);
                assert_eq!(g.mul(nf_index(p, a), nf_index(p, b)), nf_index(p, prod));
            }
        }
        assert_eq!(build_nf_group(params(2, 2)).unwrap().order(), 32);
    }

    #[test]
    fn nf_group_table_agreement_larger() {
        for (r, s) in [(3, 2), (4, 4)] {
            let p = params(r, s);
            let g = build_nf_group(p).unwrap();
            assert!(g.check_associativity(100_000, 99));
            for a in p.elements() {
                for b in p.elements() {
                    let prod = nf_group::multiply(p, a, b);
                    assert_eq!(g.mul(nf_index(p, a), nf_index(p, b)), nf_index(p, prod));
                }
            }
        }
    }

    #[test]
    fn a4_semidirect_construction() {
        let c = build_a4_semidirect(2).unwrap();
        assert_eq!(c.group.order(), 48);
        // [x~, y~] = (13)(24)(12)(34) = (14)(23)
        let comm = c.group.commutator(c.xt, c.yt);
        assert_eq!(c.group.label(comm), "((1 4)(2 3), 0)");
        // phi_x~ sends y~ to (13)(24)
        let conj = c.group.conj(c.yt, c.xt);
        assert_eq!(c.group.label(conj), "((1 3)(2 4), 0)");
        // <x~, y~> is a Sylow 2-subgroup of order 2^(r+2)
        let d = subgroup_closure(&c.group, &[c.xt, c.yt]);
        assert_eq!(d.order(), 16);
        assert!(build_a4_semidirect(1).is_err());

        let c3 = build_a4_semidirect(3).unwrap();
        assert_eq!(c3.group.order(), 96);
        assert_eq!(subgroup_closure(&c3.group, &[c3.xt, c3.yt]).order(), 32);
    }

    #[test]
    fn a4_twist_choice_does_not_matter() {
        let four_cycles: Vec<Perm4> = all_perms()
            .into_iter()
            .filter(|&p| {
                let p2 = perm_compose(p, p);
                p2 != PERM4_ID && perm_compose(p2, p2) == PERM4_ID
            })
            .collect();
        assert_eq!(four_cycles.len(), 6);
        let pp = params(2, 1);
        let klein: [Perm4; 3] = [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        for t in four_cycles {
            let c = build_a4_semidirect_with_twist(2, t).unwrap();
            // pick an involution actually moved by the twist action
            let moved = klein
                .iter()
                .find(|&&v| perm_compose(perm_compose(t, v), perm_inverse(t)) != v)
                .unwrap();
            let yt = c
                .group
                .find_label(&format!("({}, 0)", perm_label(*moved)))
                .unwrap();
            assert!(presentation_match(&c.group, c.xt, yt, pp), "twist {t:?}");
        }
    }

    #[test]
    fn closure_examples() {
        let p = params(2, 1);
        let g = build_nf_group(p).unwrap();
        assert_eq!(subgroup_closure(&g, &[g.identity()]).order(), 1);
        let x2 = nf_index(p, NfElement { a: 2, b: 0, c: 0 });
        let y = nf_index(p, NfElement::y());
        let z = nf_index(p, NfElement::z());
        assert_eq!(subgroup_closure(&g, &[x2, y, z]).order(), 8);
    }

    #[test]
    fn presentation_match_examples() {
        let p31 = params(3, 1);
        let g = build_nf_group(p31).unwrap();
        let x = nf_index(p31, NfElement::x());
        let y = nf_index(p31, NfElement::y());
        assert!(presentation_match(&g, x, y, p31));

        let c = build_a4_semidirect(2).unwrap();
        assert!(presentation_match(&c.group, c.xt, c.yt, params(2, 1)));
        assert!(!presentation_match(&c.group, c.xt, c.xt, params(2, 1)));
        for r in [3u32, 4] {
            let c = build_a4_semidirect(r).unwrap();
            assert!(presentation_match(&c.group, c.xt, c.yt, params(r, 1)));
        }
    }

    #[test]
    fn quotient_examples() {
        let p = params(2, 1);
        let g = build_nf_group(p).unwrap();
        // D(2,1)/<x^2> is dihedral of order 8
        let c = subgroup_closure(&g, &[nf_index(p, NfElement { a: 2, b: 0, c: 0 })]);
        let q = quotient(&g, &c).unwrap();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        let order4 = (0..q.order()).filter(|&h| q.element_order(h) == 4).count();
        assert_eq!(order4, 2); // dihedral; the quaternion group would have 6

        // D(r,r)/<z> is homocyclic of type [2^r, 2^r]
        let p22 = params(2, 2);
        let g22 = build_nf_group(p22).unwrap();
        let zc = subgroup_closure(&g22, &[nf_index(p22, NfElement::z())]);
        let q22 = quotient(&g22, &zc).unwrap();
        assert!(q22.is_abelian());
        assert_eq!(abelian_invariants(&q22).unwrap(), AbelianType::new(vec![4, 4]));

        let whole = subgroup_closure(
            &g,
            &[nf_index(p, NfElement::x()), nf_index(p, NfElement::y())],
        );
        assert_eq!(quotient(&g, &whole).unwrap().order(), 1);

        // <y> is not normal in D(2,1)
        let yc = subgroup_closure(&g, &[nf_index(p, NfElement::y())]);
        assert!(matches!(quotient(&g, &yc), Err(Error::NotNormal)));
    }

    #[test]
    fn quotient_by_z_is_abelian_for_all_params() {
        for (r, s) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let p = params(r, s);
            let g = build_nf_group(p).unwrap();
            let zc = subgroup_closure(&g, &[nf_index(p, NfElement::z())]);
            assert!(quotient(&g, &zc).unwrap().is_abelian());
        }
    }

    #[test]
    fn abelian_invariants_examples() {
        let p = params(3, 2);
        let g = build_nf_group(p).unwrap();
        let center = subgroup_from_elements(g.center());
        let center_group = subgroup_as_group(&g, &center);
        assert_eq!(
            abelian_invariants(&center_group).unwrap(),
            AbelianType::new(vec![4, 2, 2])
        );

        let trivial = CayleyGroup::from_table(vec![0], None).unwrap();
        assert_eq!(
            abelian_invariants(&trivial).unwrap(),
            AbelianType::new(vec![])
        );

        assert_eq!(abelian_invariants(&g), Err(Error::NotAbelian).map(|_: AbelianType| unreachable!()));
    }

    #[test]
    fn subgroup_class_enumeration() {
        let p = params(2, 1);
        let g = build_nf_group(p).unwrap();
        let order8 = subgroup_classes(&g, Some(8)).unwrap();
        assert_eq!(order8.len(), 3); // exactly the maximal subgroups

        let whole = subgroup_classes(&g, Some(16)).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].order(), 16);
        let all = subgroup_classes(&g, None).unwrap();
        assert!(all.iter().any(|s| s.order() == 1));
        assert!(all.iter().any(|s| s.order() == 16));

        // D8: classes 1 | <z>, <x>~, <y>~ | C4, V, V | D8 -> 8 classes
        let d8 = build_nf_group(params(1, 1)).unwrap();
        let classes = subgroup_classes(&d8, None).unwrap();
        let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn subgroup_classes_match_known_count_on_a4() {
        let a4 = build_a4();
        let classes = subgroup_classes(&a4, None).unwrap();
        // A4: trivial, C2, C3, V, A4
        let orders: Vec<usize> = classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 12]);
    }

    #[test]
    fn elementary_abelian_order8_unique_in_rs1() {
        for r in [2u32, 3] {
            let p = params(r, 1);
            let g = build_nf_group(p).unwrap();
            let order8 = subgroup_classes(&g, Some(8)).unwrap();
            let elem_abelian: Vec<&SubgroupRef> = order8
                .iter()
                .filter(|s| s.elements.iter().all(|&h| g.mul(h, h) == g.identity()))
                .collect();
            assert_eq!(elem_abelian.len(), 1, "r = {r}");
        }
    }

    #[test]
    fn dump_format_shape() {
        let p = params(1, 1);
        let g = build_nf_group(p).unwrap();
        let dump = g.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "order 8");
        assert_eq!(lines.len(), 1 + 8 + 8);
        assert_eq!(lines[1], "(0,0,0)");
        assert_eq!(lines[9], "0 1 2 3 4 5 6 7");
    }

    #[test]
    fn solvability_detection() {
        assert!(is_solvable(&build_a4()));
        assert!(is_solvable(&build_nf_group(params(3, 2)).unwrap()));
    }
}
