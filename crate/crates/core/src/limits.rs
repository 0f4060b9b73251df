//! Combinatorial resource guards.

/// Environment variable that overrides every combinatorial guard.
pub const MAX_CELLS_ENV: &str = "DESTAB_MAX_CELLS";

/// Default cap on enumerated cells (minors, grid points, flags).
pub const DEFAULT_MAX_CELLS: u64 = 1_000_000;

/// The cell budget in force: `DESTAB_MAX_CELLS` when set and parseable,
/// otherwise [`DEFAULT_MAX_CELLS`].
pub fn max_cells() -> u64 {
    std::env::var(MAX_CELLS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CELLS)
}
