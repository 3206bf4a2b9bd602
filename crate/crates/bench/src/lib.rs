//! Shared inputs for the benchmarks.

use finlat_core::constructions::{hexagon, m_lattice, pentagon};
use finlat_core::FiniteLattice;

pub fn sample_lattices() -> Vec<(&'static str, FiniteLattice)> {
    vec![("m3", m_lattice(3)), ("n5", pentagon()), ("h", hexagon())]
}
