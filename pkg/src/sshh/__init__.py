"""Adiabatic statevector simulation of the SSH-Hubbard model.

Construct the Jordan-Wigner qubit Hamiltonian, prepare noninteracting
Slater ground states with Givens networks, evolve them through Trotterized
adiabatic schedules, and read out the many-body Berry phase and sublattice
polarization, all validated against an exact-diagonalization oracle.
"""

from .adiabatic import (Schedule, StepAngles, build_adiabatic_circuit,
                        build_trotter_step, fidelity_sweep,
                        reference_final_state_noninteracting, run_adiabatic,
                        trotter_step_gate_count)
from .errors import (FermiDegeneracyWarning, NumericError,
                     PhaseMagnitudeWarning, ResourceError, UsageError)
from .model import (OBC, PBC, PauliTerm, SSHHParams, SpinFilling,
                    build_hamiltonian_terms, dense_matrix, map_mode,
                    sector_parity)
from .observables import (EstimateReport, ReducedFilling, angle_distance,
                          berry_phase, charge_center, edge_occupation,
                          exact_report, polarization_profile, position_weight,
                          position_weight_spin, reduced_filling,
                          sampled_report, z_exact, z_exact_spin, z_sampled)
from .oracle import (SectorBasis, SectorGroundState, adiabatic_benchmark,
                     build_sector_hamiltonian, crosscheck_pauli_vs_fermionic,
                     ground_state_sector, sector_basis)
from .simulator import (Circuit, Gate, ShotBatch, Statevector, apply_gate,
                        basis_state, expectation_diagonal, fidelity,
                        run_circuit, sample, zero_state)
from .singleparticle import (Spectrum, band_gap, build_hopping_matrix,
                             check_weak_interaction, eigensolve, suggest_min_T,
                             winding_class)
from .stateprep import (PrepCircuit, SlaterSpec, direct_slater,
                        givens_decompose, ground_state_spec,
                        occupied_orbitals, prepare_ground_state)

__version__ = "0.1.0"
