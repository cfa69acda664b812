//! Finite groups as explicit multiplication tables.
//!
//! Elements are indices `0..order` with a flat `order x order` product
//! table, a designated identity, and a precomputed inverse array. The
//! constructors here cover the small catalog the rest of the crate uses
//! as fixtures (cyclic, symmetric, dihedral, quaternion, products), plus
//! a Cayley builder that closes a set of binary-operation tables under
//! composition and reads off their abstract group.

use crate::binop::{BinOpTable, Carrier};
use crate::error::{Error, Result};
use itertools::Itertools;
use serde::Serialize;
use std::collections::HashMap;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// `mul[g * order + h]` is the product `g * h`.
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

/// The structural data used to recognize a group up to isomorphism
/// within the small orders this crate cares about: order, commutativity,
/// and the sorted multiset of element orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table given as rows, checking
    /// all the axioms (closure by range check, associativity, identity,
    /// inverses).
    pub fn from_mul_table(mul_rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = mul_rows.len();
        if order == 0 {
            return Err(Error::InvalidArgument("group must be nonempty".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (g, row) in mul_rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Validation(format!(
                    "row {g} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::Validation(format!(
                        "product {v} out of range 0..{order}"
                    )));
                }
                mul.push(v);
            }
        }
        if identity >= order {
            return Err(Error::IndexOutOfRange {
                index: identity,
                bound: order,
            });
        }
        let group = FiniteGroup {
            order,
            mul,
            identity,
            inv: vec![0; order],
        };
        group.validate_axioms()?;
        let mut group = group;
        group.inv = group.compute_inverses()?;
        Ok(group)
    }

    fn validate_axioms(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                return Err(Error::Validation(format!(
                    "{} is not a two-sided identity at element {g}",
                    self.identity
                )));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)) {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({g}, {h}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_inverses(&self) -> Result<Vec<usize>> {
        let n = self.order;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if self.mul(g, h) == self.identity && self.mul(h, g) == self.identity {
                    inv[g] = h;
                    break;
                }
            }
            if inv[g] == usize::MAX {
                return Err(Error::Validation(format!("element {g} has no inverse")));
            }
        }
        Ok(inv)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Re-checks every axiom; `from_mul_table` already guarantees them,
    /// so this exists for tests and for data loaded from files.
    pub fn group_axioms_hold(&self) -> bool {
        self.validate_axioms().is_ok() && self.compute_inverses().is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|g| (g..n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Least `k >= 1` with `g^k` equal to the identity.
    pub fn element_order(&self, g: usize) -> usize {
        let mut power = g;
        let mut k = 1;
        while power != self.identity {
            power = self.mul(power, g);
            k += 1;
        }
        k
    }

    pub fn structure_fingerprint(&self) -> Fingerprint {
        let mut element_orders: Vec<usize> =
            self.elements().map(|g| self.element_order(g)).collect();
        element_orders.sort_unstable();
        Fingerprint {
            order: self.order,
            abelian: self.is_abelian(),
            element_orders,
        }
    }

    /// The cyclic group of order `m` with addition mod `m`.
    pub fn cyclic(m: usize) -> Result<FiniteGroup> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "cyclic group order must be positive".into(),
            ));
        }
        let mul = (0..m)
            .flat_map(|g| (0..m).map(move |h| (g + h) % m))
            .collect();
        let inv = (0..m).map(|g| (m - g) % m).collect();
        Ok(FiniteGroup {
            order: m,
            mul,
            identity: 0,
            inv,
        })
    }

    /// The symmetric group on `k` letters; elements are the `k!`
    /// permutations in lexicographic image order, and the product of
    /// indices `i, j` is the composite "apply `j` first, then `i`".
    pub fn symmetric(k: usize) -> Result<FiniteGroup> {
        const MAX_K: usize = 5;
        if k == 0 || k > MAX_K {
            return Err(Error::CapacityExceeded {
                what: "symmetric group letters",
                requested: k,
                max: MAX_K,
            });
        }
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let order = perms.len();
        let mut mul = Vec::with_capacity(order * order);
        for p in &perms {
            for q in &perms {
                let composite: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                mul.push(index[composite.as_slice()]);
            }
        }
        let identity = index[(0..k).collect::<Vec<_>>().as_slice()];
        let group = FiniteGroup {
            order,
            mul,
            identity,
            inv: vec![0; order],
        };
        let inv = group.compute_inverses()?;
        Ok(FiniteGroup { inv, ..group })
    }

    /// The dihedral group of order `2m` (symmetries of the `m`-gon).
    /// Element `i < m` is the rotation `r^i`; element `m + i` is the
    /// reflection `r^i s`, with `s r = r^-1 s`.
    pub fn dihedral(m: usize) -> Result<FiniteGroup> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "dihedral group needs a positive rotation order".into(),
            ));
        }
        let order = 2 * m;
        let mut mul = vec![0; order * order];
        for i in 0..m {
            for j in 0..m {
                mul[i * order + j] = (i + j) % m;
                mul[i * order + (m + j)] = m + (i + j) % m;
                mul[(m + i) * order + j] = m + (i + m - j) % m;
                mul[(m + i) * order + (m + j)] = (i + m - j) % m;
            }
        }
        FiniteGroup::from_mul_table(
            mul.chunks(order).map(|r| r.to_vec()).collect(),
            0,
        )
    }

    /// The quaternion group of order 8 with elements
    /// `1, -1, i, -i, j, -j, k, -k` in that order.
    pub fn quaternion() -> FiniteGroup {
        // Signed-basis products: index 2g + s encodes (-1)^s * basis g,
        // with basis 1, i, j, k.
        const BASIS_MUL: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let mut rows = vec![vec![0; 8]; 8];
        for g in 0..8 {
            for h in 0..8 {
                let (basis, sign) = BASIS_MUL[g / 2][h / 2];
                rows[g][h] = 2 * basis + (sign + g % 2 + h % 2) % 2;
            }
        }
        FiniteGroup::from_mul_table(rows, 0).expect("quaternion table is a group")
    }

    /// The direct product with componentwise multiplication; the pair
    /// `(g, h)` gets index `g * other.order + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let order = self.order * other.order;
        let mut mul = Vec::with_capacity(order * order);
        for g1 in 0..self.order {
            for h1 in 0..other.order {
                for g2 in 0..self.order {
                    for h2 in 0..other.order {
                        mul.push(self.mul(g1, g2) * other.order + other.mul(h1, h2));
                    }
                }
            }
        }
        let inv = (0..self.order)
            .flat_map(|g| (0..other.order).map(move |h| (g, h)))
            .map(|(g, h)| self.inv(g) * other.order + other.inv(h))
            .collect();
        FiniteGroup {
            order,
            mul,
            identity: self.identity * other.order + other.identity,
            inv,
        }
    }
}

/// Hard cap on the order of a Cayley closure, i.e. on `(n!)^n`.
pub const CAYLEY_MAX_ORDER: usize = 1024;

/// Closes a set of invertible tables under composition and returns the
/// resulting abstract group next to its concrete elements (identity
/// first, then generators, then products in discovery order).
pub fn cayley_closure(generators: &[BinOpTable]) -> Result<(FiniteGroup, Vec<BinOpTable>)> {
    let carrier = match generators.first() {
        Some(f) => f.carrier(),
        None => {
            return Err(Error::InvalidArgument(
                "need at least one generator".into(),
            ));
        }
    };
    let mut bound = 1usize;
    let factorial: usize = (1..=carrier.n()).product();
    for _ in 0..carrier.n() {
        bound = bound.saturating_mul(factorial);
    }
    if bound > CAYLEY_MAX_ORDER {
        return Err(Error::CapacityExceeded {
            what: "Cayley closure",
            requested: bound,
            max: CAYLEY_MAX_ORDER,
        });
    }

    let identity = BinOpTable::identity(carrier);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<BinOpTable, usize> = HashMap::new();
    index.insert(identity, 0);
    for g in generators {
        if g.carrier() != carrier {
            return Err(Error::CarrierMismatch {
                left: carrier.n(),
                right: g.carrier().n(),
            });
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible {
                t: (0..carrier.n())
                    .find(|&t| {
                        let s = g.slice(t).expect("t in range");
                        let mut seen = vec![false; carrier.n()];
                        s.iter().any(|&y| std::mem::replace(&mut seen[y], true))
                    })
                    .unwrap_or(0),
            });
        }
        if !index.contains_key(g) {
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
        }
    }

    // Worklist closure under left and right products with the generators.
    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while let Some(i) = frontier.pop() {
        for g in generators {
            for product in [elements[i].compose(g)?, g.compose(&elements[i])?] {
                if !index.contains_key(&product) {
                    index.insert(product.clone(), elements.len());
                    frontier.push(elements.len());
                    elements.push(product);
                }
            }
        }
    }

    let order = elements.len();
    let mut mul = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            mul.push(index[&a.compose(b)?]);
        }
    }
    let group = FiniteGroup::from_mul_table(
        mul.chunks(order).map(|r| r.to_vec()).collect(),
        0,
    )?;
    Ok((group, elements))
}

/// The full group of invertible tables on `carrier` as an abstract
/// group, elements in the deterministic enumeration order.
pub fn h2_group(carrier: Carrier) -> Result<(FiniteGroup, Vec<BinOpTable>)> {
    let mut bound = 1usize;
    let factorial: usize = (1..=carrier.n()).product();
    for _ in 0..carrier.n() {
        bound = bound.saturating_mul(factorial);
    }
    if bound > CAYLEY_MAX_ORDER {
        return Err(Error::CapacityExceeded {
            what: "Cayley closure",
            requested: bound,
            max: CAYLEY_MAX_ORDER,
        });
    }
    let elements: Vec<BinOpTable> = crate::binop::enumerate_h2(carrier)?.collect();
    let index: HashMap<&BinOpTable, usize> =
        elements.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let order = elements.len();
    let mut mul = Vec::with_capacity(order * order);
    for a in &elements {
        for b in &elements {
            mul.push(index[&a.compose(b)?]);
        }
    }
    let group = FiniteGroup::from_mul_table(
        mul.chunks(order).map(|r| r.to_vec()).collect(),
        index[&BinOpTable::identity(carrier)],
    )?;
    Ok((group, elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_cyclic() {
        for m in 1..=8 {
            let g = FiniteGroup::cyclic(m).unwrap();
            assert!(g.group_axioms_hold());
            assert!(g.is_abelian());
            assert_eq!(g.element_order(1 % m), m);
        }
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn symmetric_group_fingerprints() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(s3.group_axioms_hold());
        assert_eq!(
            s3.structure_fingerprint(),
            Fingerprint {
                order: 6,
                abelian: false,
                element_orders: vec![1, 2, 2, 2, 3, 3],
            }
        );
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert!(FiniteGroup::symmetric(6).is_err());
    }

    #[test]
    fn z4_and_klein_are_distinguished() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.structure_fingerprint().element_orders, vec![1, 2, 4, 4]);

        let z2 = FiniteGroup::cyclic(2).unwrap();
        let klein = z2.direct_product(&z2);
        assert!(klein.group_axioms_hold());
        assert_eq!(
            klein.structure_fingerprint(),
            Fingerprint {
                order: 4,
                abelian: true,
                element_orders: vec![1, 2, 2, 2],
            }
        );
    }

    #[test]
    fn dihedral_and_quaternion_are_groups() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert_eq!(
            d4.structure_fingerprint().element_orders,
            vec![1, 2, 2, 2, 2, 2, 4, 4]
        );

        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        assert_eq!(
            q8.structure_fingerprint().element_orders,
            vec![1, 2, 4, 4, 4, 4, 4, 4]
        );
        // Exactly one element of order 2 separates Q8 from D4.
        assert_ne!(q8.structure_fingerprint(), d4.structure_fingerprint());
    }

    #[test]
    fn dihedral_3_matches_symmetric_3() {
        assert_eq!(
            FiniteGroup::dihedral(3).unwrap().structure_fingerprint(),
            FiniteGroup::symmetric(3).unwrap().structure_fingerprint()
        );
    }

    #[test]
    fn from_mul_table_rejects_broken_tables() {
        // Identity row wrong.
        assert!(FiniteGroup::from_mul_table(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        // Not associative: the cyclic-dominance ("roshambo") magma.
        let rps = vec![vec![0, 1, 0], vec![1, 1, 2], vec![0, 2, 2]];
        assert!(FiniteGroup::from_mul_table(rps, 0).is_err());
    }

    #[test]
    fn two_point_cayley_closure_is_the_full_group() {
        let phi1 = BinOpTable::from_rows(vec![vec![1, 0], vec![1, 0]]).unwrap();
        let phi2 = BinOpTable::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (group, elements) = cayley_closure(&[phi1, phi2]).unwrap();
        assert_eq!(group.order(), 4);
        assert_eq!(elements.len(), 4);
        assert_eq!(
            group.structure_fingerprint(),
            Fingerprint {
                order: 4,
                abelian: true,
                element_orders: vec![1, 2, 2, 2],
            }
        );
    }

    #[test]
    fn h2_group_matches_closure_of_everything() {
        let carrier = Carrier::new(2).unwrap();
        let (group, elements) = h2_group(carrier).unwrap();
        assert_eq!(group.order(), 4);
        assert_eq!(elements.len(), 4);
        assert!(group.group_axioms_hold());

        let all: Vec<BinOpTable> = crate::binop::enumerate_h2(carrier).unwrap().collect();
        let (closed, _) = cayley_closure(&all).unwrap();
        assert_eq!(closed.structure_fingerprint(), group.structure_fingerprint());
    }

    #[test]
    fn h2_group_caps_large_carriers() {
        assert!(h2_group(Carrier::new(4).unwrap()).is_err());
    }

    #[test]
    fn direct_product_orders_multiply() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let p = z2.direct_product(&z4);
        assert_eq!(p.order(), 8);
        assert!(p.group_axioms_hold());
        assert!(p.is_abelian());
        assert_eq!(
            p.structure_fingerprint().element_orders,
            vec![1, 2, 2, 2, 4, 4, 4, 4]
        );
    }
}
