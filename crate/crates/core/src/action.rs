//! Binary group actions on a finite carrier, and the maps between them.
//!
//! A binary action of a finite group `G` on carrier `X` assigns each
//! group element `g` a binary-operation table `act[g]` so that the
//! identity element gets the identity table and `act[g * h]` is the
//! table product `act[g] * act[h]`. Equivalently it is a homomorphism
//! from `G` into the group of invertible tables; both readings are
//! implemented and kept as separate checks. Fixing the first argument
//! `t` of every table yields a family of ordinary actions, one per
//! carrier point, and the carrier square inherits an ordinary action
//! `g . (x, x') = (x, act[g](x, x'))` that is functorial over
//! bi-equivariant maps.

use crate::binop::{BinOpTable, Carrier};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use serde::Serialize;

/// A concrete counterexample to the binary-action axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionViolation {
    /// `act[e](t, x) != x`.
    Identity { t: usize, x: usize },
    /// `act[g * h](t, x) != act[g](t, act[h](t, x))`.
    Composition {
        g: usize,
        h: usize,
        t: usize,
        x: usize,
    },
}

/// A concrete counterexample to the ordinary-action axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrdinaryViolation {
    /// `act[e](x) != x`.
    Identity { x: usize },
    /// `act[g * h](x) != act[g](act[h](x))`.
    Composition { g: usize, h: usize, x: usize },
}

/// A binary action: one table per group element. The constructor only
/// checks shape; use [`BinaryActionTable::violation`] to test the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryActionTable {
    group: FiniteGroup,
    carrier: Carrier,
    act: Vec<BinOpTable>,
}

impl BinaryActionTable {
    pub fn new(group: FiniteGroup, act: Vec<BinOpTable>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::Validation(format!(
                "{} tables for a group of order {}",
                act.len(),
                group.order()
            )));
        }
        let carrier = act[0].carrier();
        for table in &act {
            if table.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier.n(),
                    right: table.carrier().n(),
                });
            }
        }
        Ok(BinaryActionTable {
            group,
            carrier,
            act,
        })
    }

    #[inline]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    #[inline]
    pub fn tables(&self) -> &[BinOpTable] {
        &self.act
    }

    #[inline]
    pub fn table_of(&self, g: usize) -> &BinOpTable {
        &self.act[g]
    }

    /// `act[g](t, x)`.
    #[inline]
    pub fn apply(&self, g: usize, t: usize, x: usize) -> usize {
        self.act[g].get(t, x)
    }

    /// First axiom failure in a fixed scan order, if any.
    pub fn violation(&self) -> Option<ActionViolation> {
        let n = self.carrier.n();
        let e = self.group.identity();
        for t in 0..n {
            for x in 0..n {
                if self.apply(e, t, x) != x {
                    return Some(ActionViolation::Identity { t, x });
                }
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                for t in 0..n {
                    for x in 0..n {
                        if self.apply(gh, t, x) != self.apply(g, t, self.apply(h, t, x)) {
                            return Some(ActionViolation::Composition { g, h, t, x });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_binary_action(&self) -> bool {
        self.violation().is_none()
    }

    /// The other face of the same coin: the assignment `g -> act[g]` is
    /// a homomorphism into the group of invertible tables. Checked
    /// directly (identity to identity, products to table products, every
    /// image invertible) rather than via [`BinaryActionTable::violation`],
    /// so the two characterizations can be compared in tests.
    pub fn is_homomorphism_into_h2(&self) -> bool {
        let e = BinOpTable::identity(self.carrier);
        if self.act[self.group.identity()] != e {
            return false;
        }
        if !self.act.iter().all(BinOpTable::is_invertible) {
            return false;
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let product = self.act[g].compose(&self.act[h]).expect("same carrier");
                if self.act[self.group.mul(g, h)] != product {
                    return false;
                }
            }
        }
        true
    }

    /// The conjugation action of a group on itself:
    /// `act[g](h1, h2) = h1 g h1^-1 h2`. Its slice at the identity is
    /// left translation.
    pub fn conjugation(group: FiniteGroup) -> Self {
        let n = group.order();
        let carrier = Carrier::new(n).expect("group is nonempty");
        let act = group
            .elements()
            .map(|g| {
                let rows = (0..n)
                    .map(|h1| {
                        let conj = group.mul(group.mul(h1, g), group.inv(h1));
                        (0..n).map(|h2| group.mul(conj, h2)).collect()
                    })
                    .collect();
                BinOpTable::from_rows(rows).expect("entries are group elements")
            })
            .collect();
        BinaryActionTable {
            group,
            carrier,
            act,
        }
    }

    /// Reads an ordinary action as a binary action whose tables are
    /// constant in the first argument. The result satisfies the binary
    /// axioms exactly when the input satisfies the ordinary ones.
    pub fn from_ordinary(theta: &OrdinaryActionTable) -> Self {
        let n = theta.carrier.n();
        let act = theta
            .group
            .elements()
            .map(|g| {
                let row: Vec<usize> = (0..n).map(|x| theta.apply(g, x)).collect();
                BinOpTable::from_rows(vec![row; n]).expect("entries are carrier points")
            })
            .collect();
        BinaryActionTable {
            group: theta.group.clone(),
            carrier: theta.carrier,
            act,
        }
    }

    /// The ordinary action obtained by fixing the first argument:
    /// `induced(t)(g, x) = act[g](t, x)`.
    pub fn induced(&self, t: usize) -> Result<OrdinaryActionTable> {
        self.carrier.check_index(t)?;
        let n = self.carrier.n();
        let act = self
            .group
            .elements()
            .flat_map(|g| (0..n).map(move |x| self.apply(g, t, x)))
            .collect();
        Ok(OrdinaryActionTable {
            group: self.group.clone(),
            carrier: self.carrier,
            act,
        })
    }

    /// The ordinary action on the carrier square,
    /// `g . (x, x') = (x, act[g](x, x'))`, with the pair `(x, x')`
    /// stored at index `x * n + x'`.
    pub fn product_space(&self) -> OrdinaryActionTable {
        let n = self.carrier.n();
        let carrier = Carrier::new(n * n).expect("n >= 1");
        let act = self
            .group
            .elements()
            .flat_map(|g| {
                (0..n * n).map(move |pair| {
                    let (x, x1) = (pair / n, pair % n);
                    x * n + self.apply(g, x, x1)
                })
            })
            .collect();
        OrdinaryActionTable {
            group: self.group.clone(),
            carrier,
            act,
        }
    }
}

/// An ordinary action: `act[g]` is a self-map of the carrier, flat at
/// `g * n + x`. Construct via [`OrdinaryActionTable::from_rows`] or one
/// of the named actions; validity is again a separate question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryActionTable {
    group: FiniteGroup,
    carrier: Carrier,
    act: Vec<usize>,
}

impl OrdinaryActionTable {
    /// Builds from rows indexed by group element, each a carrier self-map.
    pub fn from_rows(group: FiniteGroup, rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() != group.order() {
            return Err(Error::Validation(format!(
                "{} rows for a group of order {}",
                rows.len(),
                group.order()
            )));
        }
        let carrier = Carrier::new(rows[0].len())?;
        let n = carrier.n();
        let mut act = Vec::with_capacity(group.order() * n);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "row {g} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                carrier.check_index(v)?;
                act.push(v);
            }
        }
        Ok(OrdinaryActionTable {
            group,
            carrier,
            act,
        })
    }

    /// The trivial action `g . x = x` on a carrier of `n` points.
    pub fn trivial(group: FiniteGroup, carrier: Carrier) -> Self {
        let n = carrier.n();
        let act = group.elements().flat_map(|_| 0..n).collect();
        OrdinaryActionTable {
            group,
            carrier,
            act,
        }
    }

    /// Left translation of a group on itself, `g . h = g h`.
    pub fn left_translation(group: FiniteGroup) -> Self {
        let n = group.order();
        let carrier = Carrier::new(n).expect("group is nonempty");
        let mut act = Vec::with_capacity(n * n);
        for g in group.elements() {
            for h in 0..n {
                act.push(group.mul(g, h));
            }
        }
        OrdinaryActionTable {
            group,
            carrier,
            act,
        }
    }

    /// The symmetric group on `k` letters acting on those letters, with
    /// elements indexed as in [`FiniteGroup::symmetric`].
    pub fn symmetric_natural(k: usize) -> Result<Self> {
        use itertools::Itertools;
        let group = FiniteGroup::symmetric(k)?;
        let act = (0..k).permutations(k).flatten().collect();
        Ok(OrdinaryActionTable {
            group,
            carrier: Carrier::new(k).expect("k >= 1"),
            act,
        })
    }

    #[inline]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// `act[g](x)`.
    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.act[g * self.carrier.n() + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.carrier.n()).map(|r| r.to_vec()).collect()
    }

    /// First axiom failure in a fixed scan order, if any.
    pub fn violation(&self) -> Option<OrdinaryViolation> {
        let n = self.carrier.n();
        let e = self.group.identity();
        for x in 0..n {
            if self.apply(e, x) != x {
                return Some(OrdinaryViolation::Identity { x });
            }
        }
        for g in self.group.elements() {
            for h in self.group.elements() {
                let gh = self.group.mul(g, h);
                for x in 0..n {
                    if self.apply(gh, x) != self.apply(g, self.apply(h, x)) {
                        return Some(OrdinaryViolation::Composition { g, h, x });
                    }
                }
            }
        }
        None
    }

    pub fn is_action(&self) -> bool {
        self.violation().is_none()
    }
}

/// A total map between two carriers, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    domain: Carrier,
    codomain: Carrier,
    image: Vec<usize>,
}

impl FiniteMap {
    pub fn new(domain: Carrier, codomain: Carrier, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.n() {
            return Err(Error::Validation(format!(
                "map has {} values for a domain of {} points",
                image.len(),
                domain.n()
            )));
        }
        for &y in &image {
            codomain.check_index(y)?;
        }
        Ok(FiniteMap {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(carrier: Carrier) -> Self {
        FiniteMap {
            domain: carrier,
            codomain: carrier,
            image: carrier.points().collect(),
        }
    }

    #[inline]
    pub fn domain(&self) -> Carrier {
        self.domain
    }

    #[inline]
    pub fn codomain(&self) -> Carrier {
        self.codomain
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    #[inline]
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &FiniteMap) -> Result<FiniteMap> {
        if other.codomain != self.domain {
            return Err(Error::CarrierMismatch {
                left: other.codomain.n(),
                right: self.domain.n(),
            });
        }
        Ok(FiniteMap {
            domain: other.domain,
            codomain: self.codomain,
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        })
    }
}

fn check_same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// First triple `(g, t, x)` with
/// `f(a[g](t, x)) != b[g](f(t), f(x))`, if any.
pub fn biequivariance_witness(
    f: &FiniteMap,
    a: &BinaryActionTable,
    b: &BinaryActionTable,
) -> Result<Option<(usize, usize, usize)>> {
    check_same_group(a.group(), b.group())?;
    if f.domain() != a.carrier() || f.codomain() != b.carrier() {
        return Err(Error::CarrierMismatch {
            left: f.domain().n(),
            right: a.carrier().n(),
        });
    }
    let n = a.carrier().n();
    for g in a.group().elements() {
        for t in 0..n {
            for x in 0..n {
                if f.apply(a.apply(g, t, x)) != b.apply(g, f.apply(t), f.apply(x)) {
                    return Ok(Some((g, t, x)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `f` respects both arguments of the two binary actions.
pub fn is_biequivariant(
    f: &FiniteMap,
    a: &BinaryActionTable,
    b: &BinaryActionTable,
) -> Result<bool> {
    Ok(biequivariance_witness(f, a, b)?.is_none())
}

/// First pair `(g, x)` with `f(a[g](x)) != b[g](f(x))`, if any.
pub fn equivariance_witness(
    f: &FiniteMap,
    a: &OrdinaryActionTable,
    b: &OrdinaryActionTable,
) -> Result<Option<(usize, usize)>> {
    check_same_group(a.group(), b.group())?;
    if f.domain() != a.carrier() || f.codomain() != b.carrier() {
        return Err(Error::CarrierMismatch {
            left: f.domain().n(),
            right: a.carrier().n(),
        });
    }
    for g in a.group().elements() {
        for x in a.carrier().points() {
            if f.apply(a.apply(g, x)) != b.apply(g, f.apply(x)) {
                return Ok(Some((g, x)));
            }
        }
    }
    Ok(None)
}

pub fn is_equivariant(
    f: &FiniteMap,
    a: &OrdinaryActionTable,
    b: &OrdinaryActionTable,
) -> Result<bool> {
    Ok(equivariance_witness(f, a, b)?.is_none())
}

/// Hard cap on `|codomain| ^ |domain|` for map enumeration.
pub const MAP_ENUMERATION_MAX: u128 = 1_000_000;

/// Every bi-equivariant map from `a` to `b`, in lexicographic image
/// order. The search is a plain scan over all `|Y|^|X|` maps, so both
/// carriers must be tiny.
pub fn enumerate_biequivariant_maps(
    a: &BinaryActionTable,
    b: &BinaryActionTable,
) -> Result<Vec<FiniteMap>> {
    use itertools::Itertools;
    check_same_group(a.group(), b.group())?;
    let dom = a.carrier();
    let cod = b.carrier();
    let total = (cod.n() as u128)
        .checked_pow(dom.n() as u32)
        .unwrap_or(u128::MAX);
    if total > MAP_ENUMERATION_MAX {
        return Err(Error::CapacityExceeded {
            what: "map enumeration",
            requested: total.min(usize::MAX as u128) as usize,
            max: MAP_ENUMERATION_MAX as usize,
        });
    }
    let mut out = Vec::new();
    for image in (0..dom.n()).map(|_| 0..cod.n()).multi_cartesian_product() {
        let f = FiniteMap {
            domain: dom,
            codomain: cod,
            image,
        };
        if is_biequivariant(&f, a, b)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Sends `f : X -> Y` to the pair map `(x, x') -> (f(x), f(x'))` between
/// the carrier squares, in the indexing of
/// [`BinaryActionTable::product_space`]. Functorial: identities go to
/// identities and composites to composites, and bi-equivariant maps go
/// to equivariant maps of the product actions.
pub fn lift_map(f: &FiniteMap) -> FiniteMap {
    let n = f.domain().n();
    let m = f.codomain().n();
    let image = (0..n * n)
        .map(|pair| f.apply(pair / n) * m + f.apply(pair % n))
        .collect();
    FiniteMap {
        domain: Carrier::new(n * n).expect("n >= 1"),
        codomain: Carrier::new(m * m).expect("m >= 1"),
        image,
    }
}

/// The inner automorphism `x -> h x h^-1` of the group carrier. It
/// intertwines the ordinary actions induced from conjugation at the
/// identity and at `h`: conjugating after translating by `g` equals
/// acting through slice `h` after conjugating.
pub fn conjugation_equivalence_map(group: &FiniteGroup, h: usize) -> Result<FiniteMap> {
    if h >= group.order() {
        return Err(Error::IndexOutOfRange {
            index: h,
            bound: group.order(),
        });
    }
    let carrier = Carrier::new(group.order()).expect("group is nonempty");
    let image = group
        .elements()
        .map(|x| group.mul(group.mul(h, x), group.inv(h)))
        .collect();
    Ok(FiniteMap {
        domain: carrier,
        codomain: carrier,
        image,
    })
}
