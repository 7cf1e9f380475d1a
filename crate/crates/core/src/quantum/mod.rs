//! Depolarizing and erasure channels, EPR and isotropic states, Kraus
//! channels and their adjoints, Pauli expansions and entropy.

mod channel;
mod depolarize;
mod pauli;
mod states;

pub use channel::{channel_adjoint, channel_apply, erasure_channel, QuantumChannel};
pub use depolarize::depolarize;
pub use pauli::{pauli_decompose, pauli_string, PauliExpansion};
pub use states::{
    block_to_pairwise, density_spectrum, epr_state, isotropic_eigenvalues, isotropic_state,
    pairwise_to_block, shannon_entropy, von_neumann_entropy, IsotropicParams,
};

pub(crate) use channel::check_unit_interval;
pub(crate) use depolarize::depolarize_unchecked;
