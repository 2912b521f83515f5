//! JSON group specifications and structural reports.

use std::path::Path;

use holoforge_core::group::{cyclic, dihedral, direct_product, quaternion, vector_group, Group};
use holoforge_core::oracle::fingerprint;
use holoforge_core::{Matrix, RingSpec};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group described in JSON, for example
/// `{"kind":"holomorph","ring":[2,1],"n":2,"H":[[[1,1],[0,1]]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Holomorph {
        ring: (u64, u32),
        n: usize,
        #[serde(rename = "H")]
        h: Vec<Vec<Vec<i64>>>,
    },
    Vector {
        ring: (u64, u32),
        n: usize,
    },
    Cyclic {
        n: usize,
    },
    Dihedral {
        /// Half the order.
        n: usize,
    },
    Quaternion {
        /// A quarter of the order.
        n: usize,
    },
    Direct {
        factors: Vec<GroupSpec>,
    },
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<Group> {
        Ok(match self {
            GroupSpec::Holomorph { ring, n, h } => {
                let ring = RingSpec::new(ring.0, ring.1)?;
                let mats = h.iter().map(|rows| Ok(Matrix::from_rows(ring, rows)?)).collect::<Result<Vec<_>>>()?;
                Group::holomorph(ring, *n, &mats, cap)?
            }
            GroupSpec::Vector { ring, n } => vector_group(RingSpec::new(ring.0, ring.1)?, *n, cap)?,
            GroupSpec::Cyclic { n } => cyclic(*n)?,
            GroupSpec::Dihedral { n } => dihedral(*n)?,
            GroupSpec::Quaternion { n } => quaternion(*n)?,
            GroupSpec::Direct { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| Error::Invalid("direct product of no factors".into()))?;
                let mut g = first.build(cap)?;
                for f in it {
                    let h = f.build(cap)?;
                    if g.order().saturating_mul(h.order()) > cap {
                        return Err(holoforge_core::Error::CapExceeded { cap }.into());
                    }
                    g = direct_product(&g, &h)?;
                }
                g
            }
        })
    }

    pub fn read(path: &Path) -> Result<GroupSpec> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub order: usize,
    /// Abelian invariants of `[G,G]`, or `None` when it is not abelian.
    pub derived_invariants: Option<Vec<u64>>,
    pub lcs_orders: Vec<usize>,
    pub center_order: usize,
    pub nilpotency_class: Option<usize>,
}

pub fn group_report(g: &Group) -> GroupReport {
    let whole = g.whole();
    let derived = g.derived_subgroup(&whole);
    GroupReport {
        order: g.order(),
        derived_invariants: g.abelian_invariants(&derived).ok().map(|a| a.divisors().to_vec()),
        lcs_orders: g.lower_central_series(&whole).iter().map(|s| s.order()).collect(),
        center_order: g.center(&whole).order(),
        nilpotency_class: g.nilpotency_class(&whole),
    }
}

/// Fingerprint with the cap raised to the group order.
pub fn fingerprint_of(g: &Group) -> Result<holoforge_core::oracle::Fingerprint> {
    Ok(fingerprint(g, g.order().max(holoforge_core::oracle::FINGERPRINT_CAP))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holomorph_spec() {
        let s: GroupSpec = serde_json::from_str(r#"{"kind":"holomorph","ring":[2,1],"n":2,"H":[[[1,1],[0,1]]]}"#).unwrap();
        let g = s.build(1 << 20).unwrap();
        let r = group_report(&g);
        assert_eq!(r.order, 8);
        assert_eq!(r.center_order, 2);
        assert_eq!(r.lcs_orders, vec![8, 2, 1]);
        assert_eq!(r.derived_invariants, Some(vec![2]));
        assert_eq!(r.nilpotency_class, Some(2));
    }

    #[test]
    fn composite_specs() {
        let s: GroupSpec = serde_json::from_str(
            r#"{"kind":"direct","factors":[{"kind":"cyclic","n":3},{"kind":"dihedral","n":3}]}"#,
        )
        .unwrap();
        assert_eq!(s.build(1 << 20).unwrap().order(), 18);
        let bad: Result<GroupSpec, _> = serde_json::from_str(r#"{"kind":"holomorph","ring":[4,1],"n":1,"H":[]}"#);
        let err = bad.unwrap().build(1 << 20).unwrap_err();
        assert!(matches!(err, Error::Core(holoforge_core::Error::InvalidRing { .. })));
        let json = serde_json::to_string(&GroupSpec::Quaternion { n: 2 }).unwrap();
        assert_eq!(json, r#"{"kind":"quaternion","n":2}"#);
    }
}
