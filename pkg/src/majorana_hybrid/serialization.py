"""Canonical JSON documents for programs and matrices.

Floats are written with 17 significant digits so they round-trip bit-exactly,
and negative zero is normalized to zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import MajoranaProgram, MajoranaStep
from .errors import BadParams

PROGRAM_VERSION = 1


def format_float(x: float) -> str:
    if x == 0:
        return "0"
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _num(x) -> float:
    x = float(x)
    return 0.0 if x == 0 else x


def dumps(doc, indent=None) -> str:
    """JSON text with every float in the canonical 17-digit form."""
    return _dump_value(doc, indent, 0)


def _dump_value(v, indent, level) -> str:
    if isinstance(v, (bool, np.bool_)) or v is None or isinstance(v, str):
        return json.dumps(v if not isinstance(v, np.bool_) else bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(float(v))
    nl = "" if indent is None else "\n"
    pad = "" if indent is None else " " * (indent * (level + 1))
    end = "" if indent is None else " " * (indent * level)
    sep = ", " if indent is None else ","
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump_value(x, indent, level + 1)}" for k, x in v.items()]
        return "{" + nl + (sep + nl).join(items) + nl + end + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [pad + _dump_value(x, indent, level + 1) for x in v]
        return "[" + nl + (sep + nl).join(items) + nl + end + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _angle_doc(step: MajoranaStep):
    if step.exact is not None:
        return {"numerator": step.exact.numerator, "denominator": step.exact.denominator, "times_pi": True}
    return _num(step.angle)


def program_to_document(program: MajoranaProgram, num_majoranas: int | None = None) -> dict:
    m = num_majoranas or program.num_majoranas or max(program.max_index() + program.max_index() % 2, 2)
    doc = {
        "version": PROGRAM_VERSION,
        "num_majoranas": int(m),
        "prefactor": {"re": _num(program.prefactor.real), "im": _num(program.prefactor.imag)},
        "steps": [{"indices": list(s.indices), "angle": _angle_doc(s)} for s in program.steps],
    }
    if program.phase is not None:
        doc["phase"] = {"numerator": program.phase.numerator, "denominator": program.phase.denominator,
                        "times_pi": True}
    return doc


def _angle_from(doc):
    if isinstance(doc, dict):
        try:
            frac = Fraction(int(doc["numerator"]), int(doc["denominator"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise BadParams(f"malformed angle {doc!r}") from exc
        if doc.get("times_pi", True):
            return frac
        return float(frac)
    if isinstance(doc, (int, float)) and not isinstance(doc, bool):
        return float(doc)
    raise BadParams(f"malformed angle {doc!r}")


def program_from_document(doc: dict) -> MajoranaProgram:
    if not isinstance(doc, dict) or "steps" not in doc:
        raise BadParams("program document needs a 'steps' list")
    if doc.get("version", PROGRAM_VERSION) != PROGRAM_VERSION:
        raise BadParams(f"unsupported program version {doc.get('version')}")
    steps = []
    for s in doc["steps"]:
        try:
            steps.append(MajoranaStep.of(s["indices"], _angle_from(s["angle"])))
        except KeyError as exc:
            raise BadParams(f"step missing field {exc}") from exc
    m = doc.get("num_majoranas")
    if "phase" in doc and isinstance(doc["phase"], dict):
        return MajoranaProgram(tuple(steps), phase=_angle_from(doc["phase"]), num_majoranas=m)
    pref = doc.get("prefactor", {"re": 1.0, "im": 0.0})
    return MajoranaProgram(tuple(steps), prefactor=complex(pref["re"], pref["im"]), num_majoranas=m)


def program_to_json(program: MajoranaProgram, num_majoranas: int | None = None, indent=2) -> str:
    return dumps(program_to_document(program, num_majoranas), indent)


def program_from_json(text: str) -> MajoranaProgram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParams(f"invalid program JSON: {exc}") from exc
    return program_from_document(doc)


def load_program(path) -> MajoranaProgram:
    return program_from_json(Path(path).read_text())


def matrix_to_document(U: np.ndarray, basis: str) -> dict:
    if basis not in ("physical", "logical"):
        raise BadParams(f"basis must be 'physical' or 'logical', got {basis!r}")
    U = np.asarray(U, dtype=complex)
    d = U.shape[0]
    return {
        "dimension": int(d),
        "basis": basis,
        "entries": [[_num(z.real), _num(z.imag)] for z in U.reshape(-1)],
    }


def matrix_from_document(doc: dict) -> np.ndarray:
    d = int(doc["dimension"])
    vals = np.array([complex(re, im) for re, im in doc["entries"]])
    if vals.size != d * d:
        raise BadParams(f"expected {d * d} entries, got {vals.size}")
    return vals.reshape(d, d)


def schema_path(name: str) -> Path:
    return Path(__file__).with_name("schemas") / f"{name}.schema.json"


def load_schema(name: str) -> dict:
    return json.loads(schema_path(name).read_text())
