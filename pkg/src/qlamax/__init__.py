"""Quantum lattice algorithm (QLA) for electromagnetic waves in the x-y plane.

The field is carried as the Riemann-Silberstein-Weber vector F+ packed into a
four-component qubit state per lattice site and advanced by interleaved
collision (entangling) and streaming unitaries.
"""

from qlamax.fields import (
    EMField,
    FieldGrid,
    RswVector,
    decode_state,
    em_to_rsw,
    encode_state,
    energy_and_norm,
    gauss_residual,
    rsw_to_em,
)
from qlamax.gamma import (
    PlaneWaveSpec,
    build_gammas,
    check_gamma_algebra,
    continuum_rhs,
    gaussian_pulse_state,
    plane_wave_state,
    reference_evolve,
)
from qlamax.lattice import (
    StepParams,
    collision_x,
    collision_y,
    measure_convergence,
    step,
    stream,
)

__all__ = [
    "EMField",
    "FieldGrid",
    "PlaneWaveSpec",
    "RswVector",
    "StepParams",
    "build_gammas",
    "check_gamma_algebra",
    "collision_x",
    "collision_y",
    "continuum_rhs",
    "decode_state",
    "em_to_rsw",
    "encode_state",
    "energy_and_norm",
    "gauss_residual",
    "gaussian_pulse_state",
    "measure_convergence",
    "plane_wave_state",
    "reference_evolve",
    "rsw_to_em",
    "step",
    "stream",
]

__version__ = "0.1.0"
