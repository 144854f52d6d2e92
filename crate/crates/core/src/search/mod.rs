//! φ_k and extreme forests.

pub mod arborescence;
pub mod extreme;
pub mod kruskal;
pub mod oracle;
pub mod profile;
pub mod relatives;

pub use arborescence::{min_in_tree, InTree};
pub use extreme::{
    enumerate_extreme, enumerate_extreme_at, ExtremeForestSet, DEFAULT_ENUMERATION_CAP,
};
pub use kruskal::{kruskal_edges, kruskal_phi};
pub use oracle::{
    oracle_all_levels, oracle_enumerate, oracle_undirected, OracleLevel, DEFAULT_ORACLE_CAP,
};
pub use profile::{descendant_step, phi_profile, PhiProfile};
pub use relatives::{is_descendant, relatives_hold, verify_relatives};
