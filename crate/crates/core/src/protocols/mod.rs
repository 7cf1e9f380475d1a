//! Strategies for generating common randomness from shared isotropic states,
//! in three models: no communication, one-way classical messages and one-way
//! quantum messages. Includes exact evaluators, a small library of example
//! strategies, a seesaw optimizer for the free model, and a JSON file format.

mod evaluate;
mod file;
mod library;
mod povm;
mod seesaw;
mod strategy;

pub use evaluate::{
    min_entropy_of, output_distribution, output_min_entropy, output_min_entropy_with, success,
    success_classical, success_classical_paths, success_free, success_free_paths, success_quantum,
    EvaluationPaths, MinEntropyMode, PATH_TOL,
};
pub use file::{
    strategy_from_json, strategy_to_json, ElementRecord, JointElementRecord, KrausRecord,
    MessagePovmRecord, StrategyBody, StrategyFile, SubchannelRecord, FORMAT_TAG, FORMAT_VERSION,
};
pub use library::{
    basis_protocol, coarse_basis_povm, embed_classical, forward_qubit, full_communication,
    measure_and_embed,
};
pub use povm::{bit_label, check_label, label_value, Povm};
pub use seesaw::{
    restart_seed, seesaw_from, seesaw_optimize, seesaw_restarts, SeesawResult, SeesawStart,
};
pub use strategy::{ClassicalStrategy, FreeStrategy, QuantumStrategy, Strategy};
