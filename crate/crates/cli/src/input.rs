use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use ybtwist_core::{
    Birack, CayleyTable, Elem, Error, Grading, LeftQuasigroup, Perm, RightQuasigroup, TwistSystem,
};

/// The on-disk description of a structure. All indices are 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub n: usize,
    pub circ: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bullet: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<Elem>>>,
}

/// Input that cannot be interpreted; carries the location of the fault.
#[derive(Debug)]
pub struct Malformed(pub String);

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn malformed(field: &str, e: Error) -> Malformed {
    Malformed(format!("{field}: {e}"))
}

/// A validated document.
pub struct Structure {
    pub n: usize,
    pub left: LeftQuasigroup,
    /// The supplied `bullet`, already checked to be a right quasigroup.
    pub right: Option<RightQuasigroup>,
    pub grading: Grading,
    pub grading_given: bool,
    pub phi: Option<Vec<Perm>>,
}

fn table(field: &str, rows: &[Vec<Elem>], n: usize) -> Result<CayleyTable, Malformed> {
    if rows.len() != n {
        return Err(Malformed(format!(
            "{field}: {} rows, expected n = {n}",
            rows.len()
        )));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Malformed(format!(
            "{field}[{i}]: {} entries, expected n = {n}",
            row.len()
        )));
    }
    CayleyTable::from_rows(rows).map_err(|e| malformed(field, e))
}

impl InputDocument {
    pub fn read(path: &Path) -> Result<Self, Malformed> {
        let text =
            fs::read_to_string(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Malformed(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<Structure, Malformed> {
        let n = self.n;
        if n == 0 {
            return Err(Malformed("n: must be at least 1".into()));
        }
        let left = LeftQuasigroup::validate(table("circ", &self.circ, n)?)
            .map_err(|e| malformed("circ", e))?;
        let right = match &self.bullet {
            Some(rows) => Some(
                RightQuasigroup::validate(table("bullet", rows, n)?)
                    .map_err(|e| malformed("bullet", e))?,
            ),
            None => None,
        };
        let grading = match &self.grading {
            Some(blocks) if blocks.len() != n => {
                return Err(Malformed(format!(
                    "grading: {} entries, expected n = {n}",
                    blocks.len()
                )))
            }
            Some(blocks) => Grading::new(blocks.clone()).map_err(|e| malformed("grading", e))?,
            None => Grading::trivial(n),
        };
        let phi = match &self.phi {
            Some(perms) => {
                if perms.len() != grading.p() {
                    return Err(Malformed(format!(
                        "phi: {} permutations but the grading has {} blocks",
                        perms.len(),
                        grading.p()
                    )));
                }
                let mut out = Vec::with_capacity(perms.len());
                for (s, p) in perms.iter().enumerate() {
                    if p.len() != n {
                        return Err(Malformed(format!(
                            "phi[{s}]: {} entries, expected n = {n}",
                            p.len()
                        )));
                    }
                    out.push(Perm::new(p.clone()).map_err(|e| malformed(&format!("phi[{s}]"), e))?);
                }
                Some(out)
            }
            None => None,
        };
        Ok(Structure {
            n,
            left,
            right,
            grading,
            grading_given: self.grading.is_some(),
            phi,
        })
    }

    pub fn from_birack(b: &Birack, grading: Option<&Grading>) -> Self {
        InputDocument {
            n: b.n(),
            circ: b.circ().to_rows(),
            bullet: Some(b.bullet().to_rows()),
            grading: grading.map(|g| g.blocks().to_vec()),
            phi: None,
        }
    }
}

impl Structure {
    /// `x • y = (x ∘ y) \ x`, whether or not it is a right quasigroup.
    pub fn derived_bullet(&self) -> CayleyTable {
        let q = &self.left;
        CayleyTable::from_fn(self.n, |x, y| q.div(q.op(x, y), x))
    }

    /// The supplied birack, or the one derived from `circ`.
    pub fn birack(&self) -> Result<Birack, Error> {
        match &self.right {
            Some(r) => Birack::from_tables(self.left.circ().clone(), r.bullet().clone()),
            None => Birack::derive(&self.left),
        }
    }

    pub fn twist_system(&self) -> Result<TwistSystem, Malformed> {
        let phis = self
            .phi
            .clone()
            .ok_or_else(|| Malformed("phi: required by this command".into()))?;
        TwistSystem::new(self.grading.clone(), phis).map_err(|e| malformed("phi", e))
    }
}
