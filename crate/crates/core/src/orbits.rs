//! Invariant subsets and orbits of a binary action.
//!
//! For a subset `A` of the carrier, `gA = { act[g](a, a') : a, a' in A }`
//! and `KA` is the union of `gA` over `g in K`. A subset is invariant
//! when `GA = A`, and the orbit of a point is the least invariant subset
//! containing it, computed here as a fixpoint. On a finite carrier that
//! fixpoint exists unconditionally: invariant supersets of `{x}` are
//! closed under intersection and there are finitely many of them, and
//! the iteration below lands exactly on their intersection.
//!
//! The diagonal set `G(x, x) = { act[g](x, x) : g }` always sits inside
//! the orbit of `x`; for distributive actions it is itself invariant,
//! hence equal to the orbit. The two-argument variant `G(x, y)` is
//! computable the same way, but nothing is known about its invariance in
//! general, so this module only ever reports it and never asserts it.

use crate::action::BinaryActionTable;
use crate::error::{Error, Result};
use crate::binop::Carrier;
use fixedbitset::FixedBitSet;
use serde::Serialize;

/// A subset of a carrier, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    carrier: Carrier,
    bits: FixedBitSet,
}

impl Subset {
    pub fn new(carrier: Carrier, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(carrier.n());
        for x in members {
            carrier.check_index(x)?;
            bits.insert(x);
        }
        Ok(Subset { carrier, bits })
    }

    pub fn empty(carrier: Carrier) -> Self {
        Subset {
            carrier,
            bits: FixedBitSet::with_capacity(carrier.n()),
        }
    }

    pub fn full(carrier: Carrier) -> Self {
        let mut bits = FixedBitSet::with_capacity(carrier.n());
        bits.insert_range(..);
        Subset { carrier, bits }
    }

    pub fn singleton(carrier: Carrier, x: usize) -> Result<Self> {
        Subset::new(carrier, [x])
    }

    #[inline]
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Member indices in increasing order.
    pub fn members(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_same_carrier(other)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(Subset {
            carrier: self.carrier,
            bits,
        })
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check_same_carrier(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(Subset {
            carrier: self.carrier,
            bits,
        })
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.carrier == other.carrier && self.bits.is_subset(&other.bits)
    }

    fn check_same_carrier(&self, other: &Subset) -> Result<()> {
        if self.carrier == other.carrier {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.carrier.n(),
                right: other.carrier.n(),
            })
        }
    }
}

/// Cap for the set-closure operations (`gA`, `KA`, orbits), which are
/// quadratic in the subset size.
pub const CLOSURE_MAX_N: usize = 4096;

/// Cap for the `2^n` scan over all subsets.
pub const INVARIANT_ENUM_MAX_N: usize = 20;

fn check_closure_cap(carrier: Carrier) -> Result<()> {
    if carrier.n() > CLOSURE_MAX_N {
        return Err(Error::CapacityExceeded {
            what: "subset closure",
            requested: carrier.n(),
            max: CLOSURE_MAX_N,
        });
    }
    Ok(())
}

fn check_compatible(action: &BinaryActionTable, s: &Subset) -> Result<()> {
    if action.carrier() != s.carrier() {
        return Err(Error::CarrierMismatch {
            left: action.carrier().n(),
            right: s.carrier().n(),
        });
    }
    check_closure_cap(s.carrier())
}

/// `gA = { act[g](a, a') : a, a' in A }`.
pub fn apply_g(action: &BinaryActionTable, g: usize, s: &Subset) -> Result<Subset> {
    check_compatible(action, s)?;
    if g >= action.group().order() {
        return Err(Error::IndexOutOfRange {
            index: g,
            bound: action.group().order(),
        });
    }
    let table = action.table_of(g);
    let members = s.members();
    let mut out = Subset::empty(s.carrier());
    for &a in &members {
        for &b in &members {
            out.bits.insert(table.get(a, b));
        }
    }
    Ok(out)
}

/// `KA`: the union of `gA` over `g in K`.
pub fn apply_set(action: &BinaryActionTable, k: &[usize], s: &Subset) -> Result<Subset> {
    check_compatible(action, s)?;
    let mut out = Subset::empty(s.carrier());
    for &g in k {
        out = out.union(&apply_g(action, g, s)?)?;
    }
    Ok(out)
}

/// Whether `GA = A` for the full group.
pub fn is_invariant(action: &BinaryActionTable, s: &Subset) -> Result<bool> {
    let all: Vec<usize> = action.group().elements().collect();
    Ok(apply_set(action, &all, s)? == *s)
}

/// The least invariant subset containing `x`: the fixpoint of
/// `S -> S ∪ GS` seeded with `{x}`. Each round only looks at pairs with
/// at least one coordinate discovered in the previous round; pairs of
/// older points were already expanded.
pub fn orbit(action: &BinaryActionTable, x: usize) -> Result<Subset> {
    action.carrier().check_index(x)?;
    check_closure_cap(action.carrier())?;
    let mut current = Subset::singleton(action.carrier(), x)?;
    let mut fresh = vec![x];
    while !fresh.is_empty() {
        let snapshot = current.members();
        let mut discovered = Vec::new();
        for g in action.group().elements() {
            let table = action.table_of(g);
            for &a in &fresh {
                for &b in &snapshot {
                    for y in [table.get(a, b), table.get(b, a)] {
                        if !current.contains(y) {
                            current.bits.insert(y);
                            discovered.push(y);
                        }
                    }
                }
            }
        }
        fresh = discovered;
    }
    Ok(current)
}

/// The diagonal set `G(x, x) = { act[g](x, x) : g in G }`.
pub fn g_xx_set(action: &BinaryActionTable, x: usize) -> Result<Subset> {
    action.carrier().check_index(x)?;
    let members = action
        .group()
        .elements()
        .map(|g| action.apply(g, x, x));
    Subset::new(action.carrier(), members)
}

/// The two-argument variant `G(x, y) = { act[g](x, y) : g in G }`.
/// Whether this set is invariant is an open matter; callers may report
/// its status but nothing here relies on it.
pub fn g_xy_set(action: &BinaryActionTable, x: usize, y: usize) -> Result<Subset> {
    action.carrier().check_index(x)?;
    action.carrier().check_index(y)?;
    let members = action
        .group()
        .elements()
        .map(|g| action.apply(g, x, y));
    Subset::new(action.carrier(), members)
}

/// First counterexample `(g, h, x, x1, x2)` to the distributivity law
/// `act[g](act[h](x, x1), act[h](x, x2)) = act[h](x, act[g](x1, x2))`,
/// if any, by exhaustive scan.
pub fn distributivity_witness(
    action: &BinaryActionTable,
) -> Option<(usize, usize, usize, usize, usize)> {
    let n = action.carrier().n();
    for g in action.group().elements() {
        for h in action.group().elements() {
            for x in 0..n {
                for x1 in 0..n {
                    for x2 in 0..n {
                        let lhs =
                            action.apply(g, action.apply(h, x, x1), action.apply(h, x, x2));
                        let rhs = action.apply(h, x, action.apply(g, x1, x2));
                        if lhs != rhs {
                            return Some((g, h, x, x1, x2));
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_distributive(action: &BinaryActionTable) -> bool {
    distributivity_witness(action).is_none()
}

/// Result of checking, for every carrier point, that the diagonal set
/// `G(x, x)` of a distributive action is invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalInvarianceReport {
    /// Number of carrier points checked.
    pub checked: usize,
    /// Points whose diagonal set failed the invariance check.
    pub violations: Vec<usize>,
}

impl DiagonalInvarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For a distributive action, checks invariance of `G(x, x)` at every
/// `x`. Requires distributivity up front and reports any violating
/// points (none are expected: the law forces the diagonal sets of a
/// distributive action to be invariant).
pub fn check_diagonal_invariance(action: &BinaryActionTable) -> Result<DiagonalInvarianceReport> {
    if !is_distributive(action) {
        return Err(Error::NotDistributive);
    }
    let n = action.carrier().n();
    let mut violations = Vec::new();
    for x in 0..n {
        if !is_invariant(action, &g_xx_set(action, x)?)? {
            violations.push(x);
        }
    }
    Ok(DiagonalInvarianceReport {
        checked: n,
        violations,
    })
}

/// All invariant subsets, in increasing order of the bitmask whose bit
/// `i` is membership of point `i`. Always contains the empty set and
/// the full carrier.
pub fn enumerate_invariant_subsets(action: &BinaryActionTable) -> Result<Vec<Subset>> {
    let n = action.carrier().n();
    if n > INVARIANT_ENUM_MAX_N {
        return Err(Error::CapacityExceeded {
            what: "invariant-subset enumeration",
            requested: n,
            max: INVARIANT_ENUM_MAX_N,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let s = Subset::new(action.carrier(), (0..n).filter(|i| mask >> i & 1 == 1))?;
        if is_invariant(action, &s)? {
            out.push(s);
        }
    }
    Ok(out)
}
