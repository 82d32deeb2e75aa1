"""Quantum renormalization group of entanglement in the spin-1/2 XXZ chain."""
from .flow import (
    CouplingState,
    FixedPointReport,
    IsingLimitReached,
    RGTrajectory,
    classify_fixed_points,
    correlation_length_exponent,
    d_delta_prime,
    q_of_delta,
    rg_step,
    rg_trajectory,
)
from .hamiltonian import (
    build_block_hamiltonian,
    build_chain_hamiltonian,
    build_projector,
    renormalize_operator,
)
from .measures import (
    EntanglementReport,
    concurrence_closed_form,
    density_matrix,
    entanglement_of_formation,
    entropy_site2,
    partial_trace,
    renormalized_measures,
    wootters_concurrence,
)
from .qgroup import QGCoupling, build_qg_block_hamiltonian, qg_entropy, qg_from_delta, qg_rg_step, qg_sweep
from .scaling import derivative_chain, locate_minimum, nu_cross_check, powerlaw_fit

__version__ = "0.1.0"
