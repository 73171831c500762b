//! Normal-form arithmetic for D(r,s).
//!
//! Every element has a unique normal form x^a y^b z^c with
//! 0 <= a < 2^r, 0 <= b < 2^s, c in {0,1}, where z = [x,y] is central of
//! order 2. The whole multiplication law follows from the single rewrite
//! yx = xyz:
//!
//! ```text
//! (x^a1 y^b1 z^c1)(x^a2 y^b2 z^c2) = x^(a1+a2) y^(b1+b2) z^(c1+c2+a2*b1).
//! ```

use crate::{Error, Result};
use serde::Serialize;

/// Exponent pair (r, s) for D(r,s), with a size cap on 2^(r+s+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    r: u32,
    s: u32,
}

/// Default cap: |D| <= 2^12.
pub const DEFAULT_CAP_LOG2: u32 = 12;

impl GroupParams {
    pub fn new(r: u32, s: u32) -> Result<Self> {
        Self::with_cap(r, s, DEFAULT_CAP_LOG2)
    }

    /// Same as `new` but with an explicit cap on log2 |D|.
    pub fn with_cap(r: u32, s: u32, cap_log2: u32) -> Result<Self> {
        if r < 1 || s < 1 || r < s {
            return Err(Error::InvalidParams(format!(
                "need r >= s >= 1, got r={r}, s={s}"
            )));
        }
        if r + s + 1 > cap_log2 {
            return Err(Error::CapExceeded(format!(
                "|D| = 2^{} exceeds cap 2^{}",
                r + s + 1,
                cap_log2
            )));
        }
        Ok(GroupParams { r, s })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// |D| = 2^(r+s+1).
    pub fn order(&self) -> u64 {
        1u64 << (self.r + self.s + 1)
    }

    pub fn x_modulus(&self) -> u64 {
        1u64 << self.r
    }

    pub fn y_modulus(&self) -> u64 {
        1u64 << self.s
    }

    /// Iterator over all elements in lexicographic (a, b, c) order.
    pub fn elements(&self) -> impl Iterator<Item = NfElement> + '_ {
        let (xm, ym) = (self.x_modulus(), self.y_modulus());
        (0..xm).flat_map(move |a| {
            (0..ym).flat_map(move |b| (0..2).map(move |c| NfElement { a, b, c }))
        })
    }
}

/// Normal form x^a y^b z^c; residues stored canonically in [0, modulus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NfElement {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl NfElement {
    pub fn new(p: GroupParams, a: i64, b: i64, c: i64) -> Self {
        NfElement {
            a: a.rem_euclid(p.x_modulus() as i64) as u64,
            b: b.rem_euclid(p.y_modulus() as i64) as u64,
            c: c.rem_euclid(2) as u64,
        }
    }

    pub fn identity() -> Self {
        NfElement { a: 0, b: 0, c: 0 }
    }

    pub fn x() -> Self {
        NfElement { a: 1, b: 0, c: 0 }
    }

    pub fn y() -> Self {
        NfElement { a: 0, b: 1, c: 0 }
    }

    pub fn z() -> Self {
        NfElement { a: 0, b: 0, c: 1 }
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    pub fn label(&self) -> String {
        format!("({},{},{})", self.a, self.b, self.c)
    }
}

/// Group law: the z-cocycle h.a * g.b comes from pushing h's x-block past
/// g's y-block with yx = xyz.
pub fn multiply(p: GroupParams, g: NfElement, h: NfElement) -> NfElement {
    NfElement {
        a: (g.a + h.a) & (p.x_modulus() - 1),
        b: (g.b + h.b) & (p.y_modulus() - 1),
        c: (g.c + h.c + h.a * g.b) & 1,
    }
}

/// Closed-form inverse (-a, -b, -c + a*b).
pub fn inverse(p: GroupParams, g: NfElement) -> NfElement {
    NfElement {
        a: g.a.wrapping_neg() & (p.x_modulus() - 1),
        b: g.b.wrapping_neg() & (p.y_modulus() - 1),
        c: (g.c + g.a * g.b) & 1,
    }
}

pub fn power(p: GroupParams, g: NfElement, n: i64) -> NfElement {
    let mut base = if n < 0 { inverse(p, g) } else { g };
    let mut n = n.unsigned_abs();
    let mut acc = NfElement::identity();
    while n > 0 {
        if n & 1 == 1 {
            acc = multiply(p, acc, base);
        }
        base = multiply(p, base, base);
        n >>= 1;
    }
    acc
}

/// Least n >= 1 with g^n = 1; always a 2-power here.
pub fn element_order(p: GroupParams, g: NfElement) -> u64 {
    let mut n = 1u64;
    let mut acc = g;
    while !acc.is_identity() {
        acc = multiply(p, acc, g);
        n += 1;
    }
    n
}

/// g h g^-1 h^-1; always lands in {1, z}.
pub fn commutator(p: GroupParams, g: NfElement, h: NfElement) -> NfElement {
    let gh = multiply(p, g, h);
    let hg = multiply(p, h, g);
    multiply(p, gh, inverse(p, hg))
}

pub fn conjugate(p: GroupParams, g: NfElement, by: NfElement) -> NfElement {
    multiply(p, multiply(p, by, g), inverse(p, by))
}

/// g is central iff both a and b are even (for s = 1, b even means b = 0).
pub fn is_central(p: GroupParams, g: NfElement) -> bool {
    commutator(p, g, NfElement::x()).is_identity()
        && commutator(p, g, NfElement::y()).is_identity()
}

/// Abelian invariant-factor type; factors >= 2, descending, each divisible
/// by the next. Trivial factors are dropped, so the trivial group is [].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianType(pub Vec<u64>);

impl AbelianType {
    pub fn new(mut factors: Vec<u64>) -> Self {
        factors.retain(|&f| f > 1);
        factors.sort_unstable_by(|a, b| b.cmp(a));
        AbelianType(factors)
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    /// True iff all invariant factors are pairwise distinct.
    pub fn exponents_pairwise_distinct(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl std::fmt::Display for AbelianType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|n| format!("C{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Invariant factors of an abelian subset of D, from the element-order
/// census: if n_k elements satisfy g^(2^k) = 1, the exponent partition is
/// the conjugate of (log2 n_1 - log2 n_0, log2 n_2 - log2 n_1, ...).
pub fn abelian_type_of_subset(p: GroupParams, elements: &[NfElement]) -> Result<AbelianType> {
    for &g in elements {
        for &h in elements {
            if multiply(p, g, h) != multiply(p, h, g) {
                return Err(Error::NotAbelian);
            }
        }
    }
    let mut counts = Vec::new();
    let mut k = 0u32;
    loop {
        let n_k = elements
            .iter()
            .filter(|&&g| power(p, g, 1i64 << k).is_identity())
            .count() as u64;
        counts.push(n_k);
        if n_k == elements.len() as u64 {
            break;
        }
        k += 1;
    }
    let mut ranks = Vec::new();
    for w in counts.windows(2) {
        ranks.push((w[1] / w[0]).trailing_zeros()); // #cyclic factors of exponent > 2^k
    }
    // conjugate partition: factor i has exponent #{k : ranks[k] > i}
    let rank = counts.get(1).map_or(0, |n| n.trailing_zeros());
    let mut factors = Vec::new();
    for i in 0..rank {
        let exp = 1 + ranks.iter().skip(1).filter(|&&d| d > i).count() as u32;
        factors.push(1u64 << exp);
    }
    Ok(AbelianType::new(factors))
}

/// Closure of a generator list inside D, sorted.
pub fn subgroup_closure_nf(p: GroupParams, gens: &[NfElement]) -> Vec<NfElement> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(NfElement::identity());
    let mut frontier = vec![NfElement::identity()];
    while let Some(g) = frontier.pop() {
        for &t in gens {
            let n = multiply(p, g, t);
            if seen.insert(n) {
                frontier.push(n);
            }
        }
    }
    seen.into_iter().collect()
}

/// Structural subgroup data: center, derived subgroup, Frattini subgroup
/// and the socle of the center, all as abelian types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicSubgroups {
    pub center: AbelianType,
    pub center_order: u64,
    pub derived: AbelianType,
    pub frattini: AbelianType,
    pub omega_of_center: AbelianType,
}

pub fn characteristic_subgroups(p: GroupParams) -> CharacteristicSubgroups {
    let center: Vec<NfElement> = p.elements().filter(|&g| is_central(p, g)).collect();
    let derived: Vec<NfElement> = {
        // image of the commutator map, closed under products (subset of <z>)
        let mut comms = std::collections::BTreeSet::new();
        for g in p.elements() {
            for h in [NfElement::x(), NfElement::y()] {
                comms.insert(commutator(p, g, h));
            }
        }
        subgroup_closure_nf(p, &comms.into_iter().collect::<Vec<_>>())
    };
    // Frattini subgroup of a 2-group: generated by squares and commutators.
    let frattini = {
        let mut gens: Vec<NfElement> = p.elements().map(|g| multiply(p, g, g)).collect();
        gens.extend_from_slice(&derived);
        subgroup_closure_nf(p, &gens)
    };
    let omega: Vec<NfElement> = center
        .iter()
        .copied()
        .filter(|&g| multiply(p, g, g).is_identity())
        .collect();
    CharacteristicSubgroups {
        center_order: center.len() as u64,
        center: abelian_type_of_subset(p, &center).expect("center is abelian"),
        derived: abelian_type_of_subset(p, &derived).expect("derived subgroup is abelian"),
        frattini: abelian_type_of_subset(p, &frattini).expect("frattini subgroup is abelian"),
        omega_of_center: abelian_type_of_subset(p, &omega).expect("socle is abelian"),
    }
}

/// The three index-2 subgroups with generators and types; rejects D(1,1).
pub fn maximal_subgroups(p: GroupParams) -> Result<Vec<(Vec<NfElement>, AbelianType)>> {
    if p.r() < 2 {
        return Err(Error::InvalidParams(
            "maximal subgroup types require r >= 2 (D(1,1) is dihedral)".into(),
        ));
    }
    let x = NfElement::x();
    let y = NfElement::y();
    let z = NfElement::z();
    let x2 = multiply(p, x, x);
    let y2 = multiply(p, y, y);
    let xy = multiply(p, x, y);
    let gen_sets = vec![vec![x2, y, z], vec![x, y2, z], vec![xy, x2, z]];
    let mut out = Vec::new();
    for gens in gen_sets {
        let elems = subgroup_closure_nf(p, &gens);
        debug_assert_eq!(elems.len() as u64, p.order() / 2);
        let ty = abelian_type_of_subset(p, &elems)?;
        out.push((gens, ty));
    }
    Ok(out)
}

/// Exhaustive conjugacy class enumeration; count equals 5 * 2^(r+s-2).
pub fn conjugacy_class_count(p: GroupParams) -> u64 {
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0u64;
    let gens = [NfElement::x(), NfElement::y()];
    for g in p.elements() {
        if seen.contains(&g) {
            continue;
        }
        count += 1;
        // orbit under conjugation, generator-driven closure
        let mut orbit = vec![g];
        seen.insert(g);
        while let Some(h) = orbit.pop() {
            for t in gens {
                let c = conjugate(p, h, t);
                if seen.insert(c) {
                    orbit.push(c);
                }
            }
        }
    }
    count
}

/// Conjugacy class of one element (either {g} or {g, gz}).
pub fn conjugacy_class(p: GroupParams, g: NfElement) -> Vec<NfElement> {
    if is_central(p, g) {
        vec![g]
    } else {
        let gz = multiply(p, g, NfElement::z());
        let mut v = vec![g, gz];
        v.sort_unstable();
        v
    }
}

/// An automorphism of D(r,s) given by generator images, applied through the
/// normal form: phi(x^a y^b z^c) = phi(x)^a phi(y)^b phi(z)^c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NfAutomorphism {
    pub params: GroupParams,
    pub image_x: NfElement,
    pub image_y: NfElement,
    image_z: NfElement,
}

impl NfAutomorphism {
    /// Validates multiplicativity on generator pairs, relation satisfaction
    /// and bijectivity before accepting the images.
    pub fn from_images(p: GroupParams, image_x: NfElement, image_y: NfElement) -> Result<Self> {
        let image_z = commutator(p, image_x, image_y);
        let phi = NfAutomorphism {
            params: p,
            image_x,
            image_y,
            image_z,
        };
        // relations of the presentation must hold for the images
        if !power(p, image_x, p.x_modulus() as i64).is_identity()
            || !power(p, image_y, p.y_modulus() as i64).is_identity()
            || !multiply(p, image_z, image_z).is_identity()
            || !commutator(p, image_x, image_z).is_identity()
            || !commutator(p, image_y, image_z).is_identity()
        {
            return Err(Error::NotAutomorphism("images violate the relations".into()));
        }
        // surjectivity (hence bijectivity on a finite set)
        let closure = subgroup_closure_nf(p, &[image_x, image_y]);
        if closure.len() as u64 != p.order() {
            return Err(Error::NotAutomorphism("images do not generate".into()));
        }
        Ok(phi)
    }

    pub fn apply(&self, g: NfElement) -> NfElement {
        let p = self.params;
        let xa = power(p, self.image_x, g.a as i64);
        let yb = power(p, self.image_y, g.b as i64);
        let zc = power(p, self.image_z, g.c as i64);
        multiply(p, multiply(p, xa, yb), zc)
    }

    pub fn compose(&self, other: &NfAutomorphism) -> NfAutomorphism {
        NfAutomorphism {
            params: self.params,
            image_x: self.apply(other.image_x),
            image_y: self.apply(other.image_y),
            image_z: self.apply(other.image_z),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image_x == NfElement::x() && self.image_y == NfElement::y()
    }

    pub fn order(&self) -> u64 {
        let mut acc = *self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            n += 1;
        }
        n
    }
}
