//! JSON wire formats for the core types.
//!
//! Each wire struct mirrors one domain type and validates on the way
//! in; writing is loss-free and deterministic (fixed field order,
//! sorted map keys), so re-serializing an unchanged value is
//! byte-identical. Group inverses are derivable, so they are accepted
//! and cross-checked when present but never written.

use crate::action::BinaryActionTable;
use crate::binop::{BinOpTable, Carrier, PermFamily, Permutation};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::orbits::Subset;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `{"n": 2, "table": [[0, 1], [1, 0]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinOpTableWire {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl BinOpTableWire {
    pub fn from_model(table: &BinOpTable) -> Self {
        BinOpTableWire {
            n: table.carrier().n(),
            table: table.rows(),
        }
    }

    pub fn into_model(self) -> Result<BinOpTable> {
        if self.table.len() != self.n {
            return Err(Error::Validation(format!(
                "declared n = {} but table has {} rows",
                self.n,
                self.table.len()
            )));
        }
        BinOpTable::from_rows(self.table)
    }
}

/// `{"n": 2, "perms": [[0, 1], [1, 0]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermFamilyWire {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PermFamilyWire {
    pub fn from_model(family: &PermFamily) -> Self {
        PermFamilyWire {
            n: family.carrier().n(),
            perms: family.perms().iter().map(|p| p.image().to_vec()).collect(),
        }
    }

    pub fn into_model(self) -> Result<PermFamily> {
        if self.perms.len() != self.n {
            return Err(Error::Validation(format!(
                "declared n = {} but family has {} permutations",
                self.n,
                self.perms.len()
            )));
        }
        let perms = self
            .perms
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        PermFamily::new(perms)
    }
}

/// `{"order": 2, "mul": [[0, 1], [1, 0]], "identity": 0}`; an optional
/// `"inv"` array is verified against the recomputed inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupWire {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<Vec<usize>>,
}

impl FiniteGroupWire {
    pub fn from_model(group: &FiniteGroup) -> Self {
        FiniteGroupWire {
            order: group.order(),
            mul: group.mul_rows(),
            identity: group.identity(),
            inv: None,
        }
    }

    pub fn into_model(self) -> Result<FiniteGroup> {
        if self.mul.len() != self.order {
            return Err(Error::Validation(format!(
                "declared order = {} but multiplication table has {} rows",
                self.order,
                self.mul.len()
            )));
        }
        let group = FiniteGroup::from_mul_table(self.mul, self.identity)?;
        if let Some(inv) = self.inv {
            let recomputed: Vec<usize> = group.elements().map(|g| group.inv(g)).collect();
            if inv != recomputed {
                return Err(Error::Validation(
                    "stored inverses disagree with the multiplication table".into(),
                ));
            }
        }
        Ok(group)
    }
}

/// A binary action: the group, the carrier size, and one table per
/// group element, keyed by the element index as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryActionWire {
    pub group: FiniteGroupWire,
    pub n: usize,
    pub act: BTreeMap<String, BinOpTableWire>,
}

impl BinaryActionWire {
    pub fn from_model(action: &BinaryActionTable) -> Self {
        BinaryActionWire {
            group: FiniteGroupWire::from_model(action.group()),
            n: action.carrier().n(),
            act: action
                .tables()
                .iter()
                .enumerate()
                .map(|(g, t)| (g.to_string(), BinOpTableWire::from_model(t)))
                .collect(),
        }
    }

    /// Validates shape only (group axioms, one table per element, all on
    /// the declared carrier); whether the tables satisfy the action
    /// axioms is a separate question for the caller.
    pub fn into_model(self) -> Result<BinaryActionTable> {
        let group = self.group.into_model()?;
        if self.act.len() != group.order() {
            return Err(Error::Validation(format!(
                "{} action tables for a group of order {}",
                self.act.len(),
                group.order()
            )));
        }
        let mut tables: Vec<Option<BinOpTable>> = vec![None; group.order()];
        for (key, wire) in self.act {
            let g: usize = key
                .parse()
                .map_err(|_| Error::Validation(format!("bad element key {key:?}")))?;
            if g >= group.order() {
                return Err(Error::IndexOutOfRange {
                    index: g,
                    bound: group.order(),
                });
            }
            if wire.n != self.n {
                return Err(Error::Validation(format!(
                    "table for element {g} is on {} points, expected {}",
                    wire.n, self.n
                )));
            }
            tables[g] = Some(wire.into_model()?);
        }
        let act = tables
            .into_iter()
            .enumerate()
            .map(|(g, t)| t.ok_or_else(|| Error::Validation(format!("missing table for element {g}"))))
            .collect::<Result<Vec<_>>>()?;
        BinaryActionTable::new(group, act)
    }
}

/// `{"n": 4, "members": [0, 2]}` with members sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetWire {
    pub n: usize,
    pub members: Vec<usize>,
}

impl SubsetWire {
    pub fn from_model(subset: &Subset) -> Self {
        SubsetWire {
            n: subset.carrier().n(),
            members: subset.members(),
        }
    }

    pub fn into_model(self) -> Result<Subset> {
        Subset::new(Carrier::new(self.n)?, self.members)
    }
}
