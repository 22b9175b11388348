//! Nothing here; this crate only carries the criterion bench targets
//! under `benches/`.
