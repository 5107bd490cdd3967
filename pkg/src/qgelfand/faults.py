"""Soundness-probe hooks.

The verification suite is only trustworthy if every check can actually
fail.  Each probe kind perturbs one construction site by a single entry:

* ``"rmatrix"`` -- one entry of the R-matrix,
* ``"rep"``     -- one generator image of the vector representation,
* ``"qnum"``    -- every nonzero q-integer (off by one).

Probes are activated through ``inject`` (tests) or the hidden
``--inject-fault`` CLI flag, and are meant for single-threaded runs.
"""

from __future__ import annotations

from contextlib import contextmanager

KINDS = ("rmatrix", "rep", "qnum")

_active: str | None = None


def active(kind):
    return _active == kind


def current():
    return _active


def set_fault(kind):
    global _active
    if kind is not None and kind not in KINDS:
        raise ValueError(f"unknown fault kind: {kind!r}")
    _active = kind


@contextmanager
def inject(kind):
    """Activate a fault kind for the duration of a with-block."""
    previous = current()
    set_fault(kind)
    try:
        yield
    finally:
        set_fault(previous)
