//! Named pass/fail outcomes for theorem checks.
//!
//! Sweeps aggregate these instead of aborting on the first failure.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    Pass,
    Fail,
    NotApplicable { reason: String },
    /// Recorded, never asserted.
    Observed { holds: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub name: String,
    #[serde(flatten)]
    pub status: CellStatus,
}

impl Cell {
    pub fn check(name: impl Into<String>, ok: bool) -> Cell {
        Cell {
            name: name.into(),
            status: if ok { CellStatus::Pass } else { CellStatus::Fail },
        }
    }

    pub fn not_applicable(name: impl Into<String>, reason: impl Into<String>) -> Cell {
        Cell {
            name: name.into(),
            status: CellStatus::NotApplicable {
                reason: reason.into(),
            },
        }
    }

    pub fn observed(name: impl Into<String>, holds: bool) -> Cell {
        Cell {
            name: name.into(),
            status: CellStatus::Observed { holds },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CellStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CellStatus::Fail
    }

    pub fn is_asserted(&self) -> bool {
        matches!(self.status, CellStatus::Pass | CellStatus::Fail)
    }
}

/// No asserted cell failed.
pub fn all_pass(cells: &[Cell]) -> bool {
    !cells.iter().any(Cell::failed)
}

/// Look up a cell by name.
pub fn find<'a>(cells: &'a [Cell], name: &str) -> Option<&'a Cell> {
    cells.iter().find(|c| c.name == name)
}
