"""Binary quadratic forms, QCQP instances, and the binary/spin change of variables.

Bit ordering convention used everywhere in this package: a bit vector
``b = (b_0, ..., b_{n-1})`` corresponds to the computational-basis index ``k``
whose MSB-first binary expansion is ``b_0 b_1 ... b_{n-1}``. For n = 3 the bit
vector ``(1, 1, 0)`` maps to index 6.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, InstanceFormatError

BitVector = np.ndarray  # length-n integer array over {0, 1}


def bits_of_index(k: int, n: int) -> BitVector:
    """Bit vector of basis index ``k``, MSB first."""
    if not 0 <= k < (1 << n):
        raise ValueError(f"index {k} out of range for n={n}")
    return np.array([(k >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.int64)


def index_of_bits(bits) -> int:
    """Basis index of a bit vector, MSB first."""
    bits = np.asarray(bits, dtype=np.int64)
    k = 0
    for b in bits:
        k = (k << 1) | int(b)
    return k


def bit_matrix(n: int) -> np.ndarray:
    """All 2**n bit vectors as a (2**n, n) array, row k = bits_of_index(k, n)."""
    ks = np.arange(1 << n, dtype=np.int64)
    cols = [(ks >> (n - 1 - i)) & 1 for i in range(n)]
    return np.stack(cols, axis=1)


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """f(b) = b^T A b + b^T c + d over binary vectors b in {0,1}^n.

    A is stored as given; it is not required to be symmetric. Evaluation is
    invariant under A <- (A + A^T)/2.
    """

    n: int
    A: np.ndarray
    c: np.ndarray
    d: float

    def __post_init__(self):
        A = _as_readonly(self.A)
        c = _as_readonly(self.c)
        if A.shape != (self.n, self.n):
            raise DimensionMismatchError("QuadraticForm.A", (self.n, self.n), A.shape)
        if c.shape != (self.n,):
            raise DimensionMismatchError("QuadraticForm.c", (self.n,), c.shape)
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(c)) and np.isfinite(self.d)):
            raise ValueError("QuadraticForm entries must be finite")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", float(self.d))

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.c, other.c)
            and self.d == other.d
        )


@dataclass(frozen=True, eq=False)
class SpinForm:
    """fbar(s) = s^T A_bar s + s^T c_bar + d_bar over spin vectors s in {-1,+1}^n."""

    n: int
    A_bar: np.ndarray
    c_bar: np.ndarray
    d_bar: float

    def __post_init__(self):
        A = _as_readonly(self.A_bar)
        c = _as_readonly(self.c_bar)
        if A.shape != (self.n, self.n):
            raise DimensionMismatchError("SpinForm.A_bar", (self.n, self.n), A.shape)
        if c.shape != (self.n,):
            raise DimensionMismatchError("SpinForm.c_bar", (self.n,), c.shape)
        object.__setattr__(self, "A_bar", A)
        object.__setattr__(self, "c_bar", c)
        object.__setattr__(self, "d_bar", float(self.d_bar))

    def __eq__(self, other):
        if not isinstance(other, SpinForm):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.A_bar, other.A_bar)
            and np.array_equal(self.c_bar, other.c_bar)
            and self.d_bar == other.d_bar
        )


@dataclass(frozen=True, eq=False)
class QcqpInstance:
    """A binary QCQP: minimize the objective form subject to f_m(b) <= 0."""

    n: int
    objective: QuadraticForm
    constraints: tuple[QuadraticForm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.objective.n != self.n:
            raise DimensionMismatchError("QcqpInstance.objective.n", self.n, self.objective.n)
        for m, form in enumerate(self.constraints):
            if form.n != self.n:
                raise DimensionMismatchError(f"QcqpInstance.constraints[{m}].n", self.n, form.n)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def __eq__(self, other):
        if not isinstance(other, QcqpInstance):
            return NotImplemented
        return (
            self.n == other.n
            and self.objective == other.objective
            and self.constraints == other.constraints
        )


def eval_quadratic(form: QuadraticForm, b) -> float:
    """Evaluate f(b) = b^T A b + b^T c + d for a single bit vector."""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (form.n,):
        raise DimensionMismatchError("bit vector length", form.n, b.shape)
    return float(b @ form.A @ b + b @ form.c + form.d)


def eval_spin(spin: SpinForm, s) -> float:
    """Evaluate fbar(s) = s^T A_bar s + s^T c_bar + d_bar for a single spin vector."""
    s = np.asarray(s, dtype=np.float64)
    if s.shape != (spin.n,):
        raise DimensionMismatchError("spin vector length", spin.n, s.shape)
    return float(s @ spin.A_bar @ s + s @ spin.c_bar + spin.d_bar)


def to_spin_form(form: QuadraticForm) -> SpinForm:
    """Change variables from bits to spins, s_i = 1 - 2 b_i.

    Returns the SpinForm with f(b) = fbar(1 - 2b) for every b:

        A_bar = A / 4
        c_bar = -(A + A^T) @ 1 / 4 - c / 2
        d_bar = 1^T A 1 / 4 + 1^T c / 2 + d

    For symmetric A the c_bar expression reduces to -(A @ 1 + c) / 2; the
    symmetrized row sums keep the identity exact for general A.
    """
    ones = np.ones(form.n)
    a_bar = form.A / 4.0
    c_bar = -(form.A + form.A.T) @ ones / 4.0 - form.c / 2.0
    d_bar = float(ones @ form.A @ ones / 4.0 + form.c.sum() / 2.0 + form.d)
    return SpinForm(form.n, a_bar, c_bar, d_bar)


# --- instance documents ---------------------------------------------------
#
# Schema:
#   {"n": int,
#    "objective":   {"A": [[...], ...], "c": [...], "d": float},
#    "constraints": [{"A": ..., "c": ..., "d": ...}, ...],
#    "meta":        {"seed": int, "generator-version": str}}   (optional)
#
# A is written as a list of rows (row-major). Numbers round-trip exactly
# through JSON's shortest-repr float serialization.


def serialize_instance(inst: QcqpInstance, meta: dict | None = None) -> str:
    """Serialize an instance to its JSON document."""
    doc = {
        "n": inst.n,
        "objective": _form_to_doc(inst.objective),
        "constraints": [_form_to_doc(f) for f in inst.constraints],
    }
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, indent=2) + "\n"


def parse_instance(text: str) -> QcqpInstance:
    """Parse an instance document, raising InstanceFormatError with a location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("document must be a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise InstanceFormatError("must be a positive integer", "n")
    if "objective" not in doc:
        raise InstanceFormatError("missing field", "objective")
    objective = _form_from_doc(doc["objective"], n, "objective")
    raw_constraints = doc.get("constraints", [])
    if not isinstance(raw_constraints, list):
        raise InstanceFormatError("must be a list", "constraints")
    constraints = tuple(
        _form_from_doc(item, n, f"constraints[{m}]") for m, item in enumerate(raw_constraints)
    )
    meta = doc.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise InstanceFormatError("must be an object", "meta")
    return QcqpInstance(n, objective, constraints)


def _form_to_doc(form: QuadraticForm) -> dict:
    return {"A": form.A.tolist(), "c": form.c.tolist(), "d": form.d}


def _form_from_doc(doc, n: int, location: str) -> QuadraticForm:
    if not isinstance(doc, dict):
        raise InstanceFormatError("must be an object", location)
    for key in ("A", "c", "d"):
        if key not in doc:
            raise InstanceFormatError("missing field", f"{location}.{key}")
    A = doc["A"]
    if not isinstance(A, list) or len(A) != n:
        raise InstanceFormatError(f"must be a list of {n} rows", f"{location}.A")
    for i, row in enumerate(A):
        if not isinstance(row, list) or len(row) != n:
            raise InstanceFormatError(f"row must have length {n}", f"{location}.A[{i}]")
        for j, v in enumerate(row):
            _require_number(v, f"{location}.A[{i}][{j}]")
    c = doc["c"]
    if not isinstance(c, list) or len(c) != n:
        raise InstanceFormatError(f"must be a list of length {n}", f"{location}.c")
    for i, v in enumerate(c):
        _require_number(v, f"{location}.c[{i}]")
    _require_number(doc["d"], f"{location}.d")
    return QuadraticForm(n, np.array(A, dtype=np.float64), np.array(c, dtype=np.float64), float(doc["d"]))


def _require_number(v, location: str) -> None:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InstanceFormatError("must be a number", location)
    if not np.isfinite(v):
        raise InstanceFormatError("must be finite", location)
