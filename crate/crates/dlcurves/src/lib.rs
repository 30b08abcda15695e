pub mod curves;
pub mod finite_field;
pub mod fixtures;
pub mod graph_equations;
pub mod local_series;
pub mod multipoly;
pub mod semigroup;
pub mod variety_checks;
pub mod automorphisms;
pub mod checks;
pub mod cli;
