use crate::error::{Error, Result};

pub const DEFAULT_MAX_EXPONENT: u32 = 30;
pub const DEFAULT_MAX_CELLS: u64 = 1 << 24;

/// Guards on exponent size and grid memory.
///
/// Exceeding a limit is always an error, never silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_exponent: u32,
    pub max_cells: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_exponent: DEFAULT_MAX_EXPONENT, max_cells: DEFAULT_MAX_CELLS }
    }
}

impl Limits {
    pub fn with_max_cells(mut self, max_cells: u64) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub fn with_max_exponent(mut self, max_exponent: u32) -> Self {
        self.max_exponent = max_exponent;
        self
    }

    pub fn check_exponent(&self, exponent: u32) -> Result<()> {
        if exponent > self.max_exponent {
            Err(Error::ExponentLimit { exponent, limit: self.max_exponent })
        } else {
            Ok(())
        }
    }

    pub fn check_exponents(&self, exponents: &[u32]) -> Result<()> {
        exponents.iter().try_for_each(|&e| self.check_exponent(e))
    }

    /// Checks a grid holding `2^log2_cells` cells.
    pub fn check_cells(&self, log2_cells: u32) -> Result<()> {
        if log2_cells >= 64 || (1u64 << log2_cells) > self.max_cells {
            Err(Error::CellLimit { log2_cells, cap: self.max_cells })
        } else {
            Ok(())
        }
    }
}
