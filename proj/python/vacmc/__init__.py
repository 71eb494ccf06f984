"""Vacuity detection and CTL* model checking over Kripke structures."""

from ._core import (
    VacmcError,
    __version__,
    bisim,
    check,
    fixture_text,
    fixtures,
    normalize_formula,
    qctl,
    run,
    table1,
    vacuity,
)

__all__ = [
    "VacmcError",
    "__version__",
    "bisim",
    "check",
    "fixture_text",
    "fixtures",
    "normalize_formula",
    "qctl",
    "run",
    "table1",
    "vacuity",
]
