"""Relativistic information: channels, temperatures, boosted gases and spins."""

from .gas import GasSpec, MIEstimate, REST_DISK_MI, disk_mi_quadrature, gas_mutual_info
from .kinematics import (
    Boost,
    boosted_temperature,
    channel_capacity,
    doppler_factor,
    unruh_temperature,
)
from .lorentz4 import rotation_angle, wigner_rotation_4
from .spin import (
    MomentumGrid,
    SpinMomentumState,
    boost_state,
    boosted_pair_concurrence,
    fig2_concurrence_analytic,
    fig2_concurrence_numeric,
    spin_entropy,
    spinor_rotation_angle,
    wigner_rotation,
)

__all__ = [
    "Boost",
    "GasSpec",
    "MIEstimate",
    "MomentumGrid",
    "REST_DISK_MI",
    "SpinMomentumState",
    "boost_state",
    "boosted_pair_concurrence",
    "boosted_temperature",
    "channel_capacity",
    "disk_mi_quadrature",
    "doppler_factor",
    "fig2_concurrence_analytic",
    "fig2_concurrence_numeric",
    "gas_mutual_info",
    "rotation_angle",
    "spin_entropy",
    "spinor_rotation_angle",
    "unruh_temperature",
    "wigner_rotation",
    "wigner_rotation_4",
]
