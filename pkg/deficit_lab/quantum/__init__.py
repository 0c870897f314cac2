"""
Quantum primitives for deficit-lab.

Contains:
- linalg: Dense complex matrices and the Jacobi Hermitian eigensolver
- state: Density matrices, pure states, ensembles and entropies
- channel: Kraus and Bloch-affine qubit channels
- measurement: Alice-side projective measurements and POVMs
- measures: c_HV, δ_cl and the one-way quantum deficit per measurement
"""

from .channel import (
    BlochAffineChannel,
    Channel,
    KrausChannel,
    apply,
    apply_to_bob,
    identity_channel,
    make_knr01_channel,
    make_sw99_channel,
)
from .linalg import HermitianEigen, hermitian_eig, matmul, tensor
from .measurement import (
    Povm,
    ProjectiveMeasurement,
    basis_measurement,
    commutes_with,
    compress_to_support,
    computational_measurement,
    dephase,
    eigenbasis_degeneracy,
    eigenbasis_measurement,
    outcome_ensemble,
    refine,
)
from .measures import (
    MeasureReport,
    c_hv,
    concentrable_information,
    deficit_q,
    delta_cl,
    i_go,
    i_lo,
    measure_report,
)
from .state import (
    DensityMatrix,
    Ensemble,
    PureState,
    entropy,
    holevo_chi,
    information_content,
    mutual_information,
    partial_trace,
    state_from_ensemble,
)

__all__ = [
    "HermitianEigen",
    "hermitian_eig",
    "matmul",
    "tensor",
    "DensityMatrix",
    "PureState",
    "Ensemble",
    "partial_trace",
    "entropy",
    "information_content",
    "mutual_information",
    "state_from_ensemble",
    "holevo_chi",
    "Channel",
    "KrausChannel",
    "BlochAffineChannel",
    "apply",
    "apply_to_bob",
    "identity_channel",
    "make_sw99_channel",
    "make_knr01_channel",
    "ProjectiveMeasurement",
    "Povm",
    "basis_measurement",
    "computational_measurement",
    "eigenbasis_measurement",
    "eigenbasis_degeneracy",
    "dephase",
    "outcome_ensemble",
    "refine",
    "commutes_with",
    "compress_to_support",
    "MeasureReport",
    "c_hv",
    "delta_cl",
    "deficit_q",
    "concentrable_information",
    "i_go",
    "i_lo",
    "measure_report",
]
