//! Binary operations on a finite carrier and the group they generate.
//!
//! A carrier is the index set `{0, .., n-1}`. A binary operation is an
//! `n x n` table whose entry at `(t, x)` is `f(t, x)`; the row at `t` is
//! the slice `f_t`. Tables compose by `(f * g)(t, x) = f(t, g(t, x))`,
//! which makes them a monoid with identity `e(t, x) = x`. A table is
//! invertible exactly when every slice is a bijection, and the invertible
//! tables correspond one-to-one with families of permutations indexed by
//! the slice parameter. Enumerating those families lists the whole group
//! of invertible tables, all `(n!)^n` of them.

use crate::error::{Error, Result};
use itertools::Itertools;

/// The finite index set `{0, .., n-1}` everything in this crate acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Carrier {
    n: usize,
}

impl Carrier {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "carrier must have at least one point".into(),
            ));
        }
        Ok(Carrier { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                bound: self.n,
            })
        }
    }

    fn check_same(&self, other: &Carrier) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }
}

/// A bijection of the carrier, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    carrier: Carrier,
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from `image[x] = sigma(x)`, rejecting
    /// anything that is not a bijection of `{0, .., len-1}`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let carrier = Carrier::new(image.len())?;
        let mut seen = vec![false; image.len()];
        for &y in &image {
            if y >= image.len() || seen[y] {
                return Err(Error::Validation(format!(
                    "image {image:?} is not a permutation of 0..{}",
                    image.len()
                )));
            }
            seen[y] = true;
        }
        Ok(Permutation { carrier, image })
    }

    pub fn identity(carrier: Carrier) -> Self {
        Permutation {
            carrier,
            image: carrier.points().collect(),
        }
    }

    #[inline]
    pub fn carrier(&self) -> Carrier {
        self.carrier
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
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.carrier.check_same(&other.carrier)?;
        let image = other.image.iter().map(|&x| self.image[x]).collect();
        Ok(Permutation {
            carrier: self.carrier,
            image,
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation {
            carrier: self.carrier,
            image,
        }
    }

    /// All `n!` permutations of the carrier, in lexicographic order of
    /// their image arrays.
    pub fn enumerate(carrier: Carrier) -> Vec<Permutation> {
        carrier
            .points()
            .permutations(carrier.n())
            .map(|image| Permutation { carrier, image })
            .collect()
    }
}

/// A permutation for every point of the carrier, indexed by the slice
/// parameter `t`. These families are exactly the invertible tables in
/// disguise: `fam -> table` by `table(t, x) = fam[t](x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermFamily {
    carrier: Carrier,
    perms: Vec<Permutation>,
}

impl PermFamily {
    /// Requires exactly one permutation per carrier point, all on the
    /// same carrier.
    pub fn new(perms: Vec<Permutation>) -> Result<Self> {
        let carrier = match perms.first() {
            Some(p) => p.carrier(),
            None => {
                return Err(Error::Validation("permutation family is empty".into()));
            }
        };
        if perms.len() != carrier.n() {
            return Err(Error::Validation(format!(
                "family has {} members for a carrier of {} points",
                perms.len(),
                carrier.n()
            )));
        }
        for p in &perms {
            carrier.check_same(&p.carrier())?;
        }
        Ok(PermFamily { carrier, perms })
    }

    pub fn identity(carrier: Carrier) -> Self {
        PermFamily {
            carrier,
            perms: vec![Permutation::identity(carrier); carrier.n()],
        }
    }

    #[inline]
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    #[inline]
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// Pointwise composition `(f ∘ g)(t) = f(t) ∘ g(t)`, the group law
    /// on families that the table product mirrors.
    pub fn compose(&self, other: &PermFamily) -> Result<PermFamily> {
        self.carrier.check_same(&other.carrier)?;
        let perms = self
            .perms
            .iter()
            .zip(&other.perms)
            .map(|(f, g)| f.compose(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermFamily {
            carrier: self.carrier,
            perms,
        })
    }
}

/// An `n x n` table over element indices; entry at `(t, x)` holds
/// `f(t, x)`. Stored flat in row-major order, row `t` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinOpTable {
    carrier: Carrier,
    entries: Vec<usize>,
}

impl BinOpTable {
    /// Builds a table from its rows, validating shape and entry range.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let carrier = Carrier::new(rows.len())?;
        let n = carrier.n();
        let mut entries = Vec::with_capacity(n * n);
        for (t, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "row {t} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (x, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::Validation(format!(
                        "entry ({t}, {x}) = {v} out of range 0..{n}"
                    )));
                }
                entries.push(v);
            }
        }
        Ok(BinOpTable { carrier, entries })
    }

    /// The identity operation `e(t, x) = x`.
    pub fn identity(carrier: Carrier) -> Self {
        let n = carrier.n();
        let entries = (0..n * n).map(|i| i % n).collect();
        BinOpTable { carrier, entries }
    }

    /// The table constant in `t`: every row equals the given permutation.
    /// This embeds the permutation group into the invertible tables.
    pub fn embed_permutation(sigma: &Permutation) -> Self {
        let carrier = sigma.carrier();
        let n = carrier.n();
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n {
            entries.extend_from_slice(sigma.image());
        }
        BinOpTable { carrier, entries }
    }

    /// The table of a permutation family: row `t` is `fam[t]`.
    pub fn from_perm_family(fam: &PermFamily) -> Self {
        let carrier = fam.carrier();
        let n = carrier.n();
        let mut entries = Vec::with_capacity(n * n);
        for p in fam.perms() {
            entries.extend_from_slice(p.image());
        }
        BinOpTable { carrier, entries }
    }

    #[inline]
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// Entry `f(t, x)`. Both indices must be in range.
    #[inline]
    pub fn get(&self, t: usize, x: usize) -> usize {
        self.entries[t * self.carrier.n() + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.carrier.n())
            .map(|row| row.to_vec())
            .collect()
    }

    /// The slice `f_t`, i.e. the unary map `x -> f(t, x)` (row `t` of the
    /// table, not necessarily a bijection).
    pub fn slice(&self, t: usize) -> Result<Vec<usize>> {
        self.carrier.check_index(t)?;
        let n = self.carrier.n();
        Ok(self.entries[t * n..(t + 1) * n].to_vec())
    }

    /// The product `(self * other)(t, x) = self(t, other(t, x))`.
    pub fn compose(&self, other: &BinOpTable) -> Result<BinOpTable> {
        self.carrier.check_same(&other.carrier)?;
        let n = self.carrier.n();
        let mut entries = Vec::with_capacity(n * n);
        for t in 0..n {
            for x in 0..n {
                entries.push(self.get(t, other.get(t, x)));
            }
        }
        Ok(BinOpTable {
            carrier: self.carrier,
            entries,
        })
    }

    /// True exactly when every slice is a bijection of the carrier.
    pub fn is_invertible(&self) -> bool {
        self.first_non_bijective_slice().is_none()
    }

    fn first_non_bijective_slice(&self) -> Option<usize> {
        let n = self.carrier.n();
        let mut seen = vec![false; n];
        for t in 0..n {
            seen.fill(false);
            for x in 0..n {
                let y = self.get(t, x);
                if seen[y] {
                    return Some(t);
                }
                seen[y] = true;
            }
        }
        None
    }

    /// The two-sided inverse: row `t` of the result is the inverse
    /// permutation of row `t` of `self`.
    pub fn invert(&self) -> Result<BinOpTable> {
        if let Some(t) = self.first_non_bijective_slice() {
            return Err(Error::NotInvertible { t });
        }
        let n = self.carrier.n();
        let mut entries = vec![0; n * n];
        for t in 0..n {
            for x in 0..n {
                entries[t * n + self.get(t, x)] = x;
            }
        }
        Ok(BinOpTable {
            carrier: self.carrier,
            entries,
        })
    }

    /// Reads an invertible table as a permutation family, the inverse
    /// direction of [`BinOpTable::from_perm_family`].
    pub fn to_perm_family(&self) -> Result<PermFamily> {
        if let Some(t) = self.first_non_bijective_slice() {
            return Err(Error::NotInvertible { t });
        }
        let perms = self
            .carrier
            .points()
            .map(|t| Permutation {
                carrier: self.carrier,
                image: self.slice(t).expect("t in range"),
            })
            .collect();
        Ok(PermFamily {
            carrier: self.carrier,
            perms,
        })
    }

    /// Least `k >= 1` with the `k`-fold product of `self` equal to the
    /// identity. Defined only for invertible tables.
    pub fn element_order(&self) -> Result<usize> {
        if let Some(t) = self.first_non_bijective_slice() {
            return Err(Error::NotInvertible { t });
        }
        let e = BinOpTable::identity(self.carrier);
        let mut power = self.clone();
        let mut k = 1;
        while power != e {
            power = power.compose(self).expect("same carrier");
            k += 1;
        }
        Ok(k)
    }
}

/// Caps for the enumeration routines below. The row-product enumeration
/// grows as `(n!)^n` and the brute scan as `n^(n^2)`, so both are hard
/// limits, not tunables.
pub const ENUMERATE_MAX_N: usize = 4;
pub const BRUTE_MAX_N: usize = 3;

/// Every invertible table exactly once, generated as all `n`-fold
/// products of row permutations. Order is lexicographic over the tuple
/// of permutations, each ranked by its image array, so the output is
/// stable for golden files. Yields `(n!)^n` tables.
pub fn enumerate_h2(carrier: Carrier) -> Result<impl Iterator<Item = BinOpTable>> {
    if carrier.n() > ENUMERATE_MAX_N {
        return Err(Error::CapacityExceeded {
            what: "invertible-table enumeration",
            requested: carrier.n(),
            max: ENUMERATE_MAX_N,
        });
    }
    let perms = Permutation::enumerate(carrier);
    let n = carrier.n();
    let iter = (0..n)
        .map(|_| 0..perms.len())
        .multi_cartesian_product()
        .map(move |choice| {
            let mut entries = Vec::with_capacity(n * n);
            for &i in &choice {
                entries.extend_from_slice(perms[i].image());
            }
            BinOpTable { carrier, entries }
        });
    Ok(iter)
}

/// Every table on the carrier, invertible or not, in lexicographic
/// entry order. There are `n^(n^2)` of them, hence the low cap.
pub fn enumerate_all_tables(carrier: Carrier) -> Result<impl Iterator<Item = BinOpTable>> {
    if carrier.n() > BRUTE_MAX_N {
        return Err(Error::CapacityExceeded {
            what: "full table scan",
            requested: carrier.n(),
            max: BRUTE_MAX_N,
        });
    }
    let n = carrier.n();
    let iter = (0..n * n)
        .map(|_| 0..n)
        .multi_cartesian_product()
        .map(move |entries| BinOpTable { carrier, entries });
    Ok(iter)
}

/// Independent oracle for [`enumerate_h2`]: scan every table and keep
/// the invertible ones.
pub fn brute_enumerate_invertible(carrier: Carrier) -> Result<impl Iterator<Item = BinOpTable>> {
    Ok(enumerate_all_tables(carrier)?.filter(BinOpTable::is_invertible))
}
