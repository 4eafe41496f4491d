"""Built-in models, addressable by name."""

from __future__ import annotations

from .bundle import ModelBundle, shared_abstraction
from .example2 import example2, example2_model
from .example3 import example3, example3_model
from .program_p import program_p, program_p_alpha, program_p_model
from .ticket_lock import ticket_lock, ticket_lock_abstraction, ticket_lock_model

# name -> (factory(n, abstraction, error), default n, default abstraction)
BUILTINS = {
    "example2": (example2, 3, "shared"),
    "example3": (example3, 1, "identity"),
    "program-p": (program_p, 2, "alpha2"),
    "ticket-lock": (ticket_lock, 2, "predicates"),
}


def load_builtin(name: str, n: int | None = None, abstraction: str | None = None,
                 error=None) -> ModelBundle:
    factory, n0, a0 = BUILTINS[name]
    return factory(n if n is not None else n0, abstraction or a0, error)


def builtin_family(name: str, abstraction: str | None = None, error=None):
    """``n -> ModelBundle`` for the unbounded-thread driver."""
    return lambda n: load_builtin(name, n, abstraction, error)


__all__ = [
    "BUILTINS", "ModelBundle", "builtin_family", "example2", "example2_model", "example3",
    "example3_model", "load_builtin", "program_p", "program_p_alpha", "program_p_model",
    "shared_abstraction", "ticket_lock", "ticket_lock_abstraction", "ticket_lock_model",
]
