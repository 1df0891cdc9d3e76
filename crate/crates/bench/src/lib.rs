//! Inputs shared by the benchmarks.

use coxrack::{build_coxeter_rack, CoxeterSpec, FiniteRack, LinkDiagram};

/// Closure of the two-strand braid with `n` positive crossings: a torus knot
/// for odd `n`, a two-component torus link for even `n`.
pub fn torus_2(n: usize) -> LinkDiagram {
    let arcs: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let crossings: Vec<(bool, &str, &str, &str)> = (0..n)
        .map(|i| {
            (
                true,
                arcs[i].as_str(),
                arcs[(i + 1) % n].as_str(),
                arcs[(i + 2) % n].as_str(),
            )
        })
        .collect();
    LinkDiagram::new(&crossings, 0).expect("torus code")
}

pub fn coxeter(n: u32, dim: usize, alpha: i64, form: &str) -> FiniteRack {
    build_coxeter_rack(&CoxeterSpec::from_parts(n, dim, alpha, form).expect("spec")).expect("rack")
}
