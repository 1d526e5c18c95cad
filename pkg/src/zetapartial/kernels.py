"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy reference in ``_pykernels`` takes over.  ``ZETAPARTIAL_BACKEND`` may be
set to ``python`` or ``cython`` to force one (``cython`` fails loudly if the
extension is missing).
"""
import importlib
import os

from . import _pykernels

_NAMES = {"python": "_pykernels", "cython": "_ckernels"}


def load(name):
    """Return the kernel module for ``name`` (``"python"`` or ``"cython"``)."""
    return importlib.import_module(f"{__package__}.{_NAMES[name]}")


def available():
    out = ["python"]
    try:
        load("cython")
    except ImportError:
        pass
    else:
        out.append("cython")
    return out


def _select():
    choice = os.environ.get("ZETAPARTIAL_BACKEND", "auto").lower()
    if choice == "python":
        return _pykernels
    try:
        return load("cython")
    except ImportError:
        if choice == "cython":
            raise
        return _pykernels


active = _select()
BACKEND = active.BACKEND
