"""Work extraction from quantum Szilard engines and derived binding energies."""

from .engine import (
    EngineConfig,
    Statistics,
    WorkResult,
    binding_energy_N,
    binding_two_bosons,
    capacitive_energy_first,
    capacitive_energy_second,
    critical_boson_number,
    work_bosons_lowT,
    work_fermions_lowT,
    work_general,
    work_two_bosons,
)

__version__ = "0.1.0"
