//! Exact tilings of `Z^d` by cosets of Cartesian sublattices `n_1 Z x ... x n_d Z`.
//!
//! * [`coset`]: coset systems and exact partition verification on the period box.
//! * [`cyclotomic`]: exact arithmetic in `Q(zeta_M)` for evaluating polynomials at
//!   roots of unity.
//! * [`poly`]: sparse multivariate polynomials with rational coefficients.
//! * [`genfun`]: generating functions of coset systems, the tiling identity, and pole
//!   orders at roots of unity (exact and numeric).
//! * [`mirsky`]: the maximal-index pole-cancellation argument and the repeated-shape
//!   witness it produces.
//! * [`search`]: exhaustive exact-cover search for tilings with bounded moduli, and a
//!   random tiling generator.

pub mod coset;
pub mod cyclotomic;
pub mod error;
pub mod genfun;
pub mod mirsky;
pub mod poly;
pub mod search;

pub use coset::{
    canonicalize, lcm_box, verify_partition, Coset, CosetSystem, Counterexample, LcmBox, SubgroupShape,
    VerificationReport, DEFAULT_CELL_BUDGET,
};
pub use cyclotomic::{
    cyclotomic_poly, embed_root, eval_at_point, eval_at_point_in, CycloNumber, CyclotomicField, IntPoly,
    RootPoint, DEFAULT_CONDUCTOR_BOUND,
};
pub use error::{Error, Result};
pub use genfun::{
    identity_check, numeric_pole_order, pole_report, principal_point, sum_pole_order_exact, system_sum,
    term_from_coset, term_pole_order, GenTerm, PoleProbeParams, PoleReport, RationalGF, SumEvaluator,
    DEFAULT_TERM_BUDGET,
};
pub use mirsky::{cancelers, max_index_coset, theorem_check, witness, Witness, WitnessError};
pub use poly::MultiPoly;
pub use search::{
    enumerate_candidates, random_split_cover, search_exact_covers, CandidateOrder, ColumnRule, SearchResult,
    SearchSpec, SearchStats,
};
