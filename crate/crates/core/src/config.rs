/// Grids, tolerances and refinement budgets shared by the quadrature,
/// the one-dimensional maximizer and the interval supremum searches.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Uniform grid size on `[0, 1]` used to seed the maximization of the ratio curve.
    pub eps_grid: usize,
    /// Points per decade of the supplementary log-spaced grid that resolves
    /// maximizers sitting very close to `eps = 0`.
    pub eps_log_per_decade: usize,
    /// Smallest `eps` represented on the supplementary log grid, as a power of ten.
    pub eps_log_min_exp10: i32,
    /// Width (in the search coordinate) at which golden-section refinement stops.
    pub golden_tol: f64,
    /// Convergence tolerance of the optimizer (relative, on the critical equation residual).
    pub optimizer_tol: f64,
    /// Iteration cap for the guarded Newton polish.
    pub newton_max_iter: usize,
    /// Requested tolerance for every power mean.
    pub quad_tol: f64,
    /// Number of mesh refinement levels the quadrature may try.
    pub quad_max_level: usize,
    /// Seed grid size per dimension for the interval supremum searches.
    pub seed_grid: usize,
    /// Local refinement rounds always run after the seed grid.
    pub refine_rounds: usize,
    /// Further rounds are added until the incumbent settles, up to this total.
    pub max_refine_rounds: usize,
    /// Factor by which each refinement round shrinks the local span.
    pub refine_shrink: f64,
    /// Local grid size per dimension in each refinement round.
    pub refine_grid: usize,
    /// Smallest interval scale explored for functions defined on the whole half-line.
    pub scale_min: f64,
    /// Largest interval scale explored for functions defined on the whole half-line.
    pub scale_max: f64,
    /// A search is flagged converged when its last refinement improved the
    /// incumbent by less than this (relative).
    pub converge_rel: f64,
    /// Uniform grid size for the one-dimensional even-extension search on power laws.
    pub shape_grid: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            eps_grid: 4096,
            eps_log_per_decade: 8,
            eps_log_min_exp10: -300,
            golden_tol: 1e-13,
            optimizer_tol: 1e-8,
            newton_max_iter: 60,
            quad_tol: 1e-10,
            quad_max_level: 7,
            seed_grid: 64,
            refine_rounds: 3,
            max_refine_rounds: 12,
            refine_shrink: 4.0,
            refine_grid: 9,
            scale_min: 1e-4,
            scale_max: 1e2,
            converge_rel: 1e-6,
            shape_grid: 256,
        }
    }
}

impl SearchConfig {
    /// Smaller grids for quick interactive runs and debug-build tests.
    pub fn coarse() -> Self {
        Self {
            eps_grid: 1024,
            eps_log_per_decade: 4,
            seed_grid: 24,
            refine_grid: 7,
            shape_grid: 96,
            ..Self::default()
        }
    }
}
