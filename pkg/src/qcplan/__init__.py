"""qcplan: surface-code scaling laws, Monte Carlo decoder validation, and
hardware blueprint planning for fault-tolerant quantum computers."""

__version__ = "0.1.0"

from .backend import BACKEND
from .scaling import (
    ScalingParams,
    distance_for_qubits,
    logical_error_rate,
    logical_error_rate_per_qubits,
    qubits_for_distance,
    required_distance,
    statevector_memory_bytes,
    threshold,
)

__all__ = [
    "BACKEND",
    "ScalingParams",
    "__version__",
    "distance_for_qubits",
    "logical_error_rate",
    "logical_error_rate_per_qubits",
    "qubits_for_distance",
    "required_distance",
    "statevector_memory_bytes",
    "threshold",
]
