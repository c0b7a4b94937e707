//! Quantum tori of seeds, quantum mutation, dualities and the bimodule
//! structure on the classical A-torus algebra.

pub mod bimodule;
pub mod duality;
pub mod factored;
pub mod suite;
pub mod mutation;
pub mod torus;
pub mod tpoly;

pub use factored::FactoredQTElem;
pub use mutation::{
    check_mutation_preserves_relations, check_quantum_involution, quantum_mutation_image,
    QuantumMutation,
};
pub use torus::{QTElem, QuantumTorus};
pub use tpoly::TPoly;
pub use duality::{
    check_duality_commutes_with_mutation, check_duality_preserves_relations, duality_image,
    Duality, DualityKind,
};
pub use bimodule::{bimodule_act, check_bimodule, ALaurent, Bimodule, BimoduleReport, Side};
pub use suite::{run_suite, suite_seeds, CaseResult, Suite};
