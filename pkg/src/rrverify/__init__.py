"""Bounded Round-Robin exploration that proves safety once abstract reach sets converge."""

from .abstraction import (Abstraction, Property, alpha_image, closure_test, identity_abstraction,
                          make_predicate_abstraction, verify_respect)
from .explore import (SAFE, UNKNOWN, VIOLATION, Explorer, Limits, SchedState, VerdictReport,
                      druba, finish_rounds, image, merge_into)
from .kernel import IMPLEMENTATION as KERNEL
from .model import Action, Program, ProgramState, Thread, thread_successors, validate_program
from .schedule import delay_cost, validate_rr_path

__all__ = [
    "Abstraction", "Action", "Explorer", "KERNEL", "Limits", "Program", "ProgramState",
    "Property", "SAFE", "SchedState", "Thread", "UNKNOWN", "VIOLATION", "VerdictReport",
    "alpha_image", "closure_test", "delay_cost", "druba", "finish_rounds", "identity_abstraction",
    "image", "make_predicate_abstraction", "merge_into", "thread_successors", "validate_program",
    "validate_rr_path", "verify_respect",
]
