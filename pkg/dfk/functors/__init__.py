"""Functors between frames, domains and CF-approximation spaces."""
from .cfspaces import (
    C_on_morphism,
    C_on_object,
    E_on_morphism,
    E_on_object,
    check_delta_naturality,
    check_gamma_naturality,
    delta,
    gamma,
)
from .domains import (
    D_on_morphism,
    DomainIsoPair,
    F_on_morphism,
    F_on_object,
    check_eta_naturality,
    check_tau_naturality,
    eta,
    tau,
)

__all__ = [
    "F_on_object", "F_on_morphism", "D_on_morphism", "eta", "tau", "DomainIsoPair",
    "check_eta_naturality", "check_tau_naturality",
    "C_on_object", "C_on_morphism", "E_on_object", "E_on_morphism", "delta", "gamma",
    "check_delta_naturality", "check_gamma_naturality",
]
