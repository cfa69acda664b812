//! Parsing of group names like `Z4`, `S3`, `D4`, `Q8`, and products
//! such as `Z2xZ4`, plus the catalog of all groups of small order used
//! by the sweep command.

use anyhow::{bail, Context, Result};
use binop_core::group::FiniteGroup;

/// Parses a group name: `Z<m>` cyclic, `S<k>` symmetric, `D<m>`
/// dihedral of order `2m`, `Q8` quaternion, and `x`-separated direct
/// products of those.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let mut factors = spec.split('x').map(parse_factor);
    let first = factors
        .next()
        .context("empty group name")??;
    factors.try_fold(first, |product, factor| Ok(product.direct_product(&factor?)))
}

fn parse_factor(token: &str) -> Result<FiniteGroup> {
    let token = token.trim();
    let (kind, rest) = token
        .split_at_checked(1)
        .with_context(|| format!("empty factor in group name {token:?}"))?;
    let order: usize = rest
        .parse()
        .with_context(|| format!("bad group factor {token:?} (expected Z<m>, S<k>, D<m>, or Q8)"))?;
    let group = match kind {
        "Z" | "z" => FiniteGroup::cyclic(order)?,
        "S" | "s" => FiniteGroup::symmetric(order)?,
        "D" | "d" => FiniteGroup::dihedral(order)?,
        "Q" | "q" if order == 8 => FiniteGroup::quaternion(),
        _ => bail!("unknown group factor {token:?} (expected Z<m>, S<k>, D<m>, or Q8)"),
    };
    Ok(group)
}

/// Every group of order at most 8 up to isomorphism, by name.
pub const SMALL_GROUP_CATALOG: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4",
    "Q8",
];
