"""State file format: versioned JSON documents for every state kind.

Layout (format_version "1"):

    {"format_version": "1", "kind": "pure",      "num_qubits": N,
     "amplitudes": [[re, im], ...]}                       # length 2^N
    {"format_version": "1", "kind": "density",   "num_qubits": N,
     "matrix": [[[re, im], ...], ...]}                    # 2^N rows
    {"format_version": "1", "kind": "symmetric", "num_qubits": N,
     "dicke_amplitudes": [[re, im], ...]}                 # length N+1
    {"format_version": "1", "kind": "mixture",   "num_qubits": N,
     "terms": [{"weight": w, "factors": [2x2 matrix, ...]}, ...]}

Floats are written with 17 significant digits so serialize -> parse ->
serialize is byte-identical at double precision.
"""

import json

import numpy as np

from .errors import ValidationError
from .states import DensityMatrix, MixtureTerm, PureState, SymmetricState, mix

FORMAT_VERSION = "1"
KINDS = ("pure", "density", "symmetric", "mixture")


def _fmt_float(x):
    if x != x or x in (float("inf"), float("-inf")):
        raise ValidationError("cannot serialize non-finite numbers")
    return format(float(x), ".17g")


def render_json(obj):
    """Deterministic JSON rendering with 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(k)}:{render_json(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(render_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise ValidationError(f"cannot serialize {type(obj).__name__}")


def _complex_pair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _matrix_rows(mat):
    return [[_complex_pair(z) for z in row] for row in np.asarray(mat)]


def state_to_document(state):
    """Build the JSON document for a state or a list of MixtureTerms."""
    if isinstance(state, PureState):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "pure",
            "num_qubits": state.num_qubits,
            "amplitudes": [_complex_pair(z) for z in state.amplitudes],
        }
    if isinstance(state, DensityMatrix):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "density",
            "num_qubits": state.num_qubits,
            "matrix": _matrix_rows(state.matrix),
        }
    if isinstance(state, SymmetricState):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "symmetric",
            "num_qubits": state.num_qubits,
            "dicke_amplitudes": [_complex_pair(z) for z in state.dicke_amplitudes],
        }
    if isinstance(state, (list, tuple)) and all(isinstance(t, MixtureTerm) for t in state):
        terms = list(state)
        if not terms:
            raise ValidationError("mixture documents need at least one term")
        return {
            "format_version": FORMAT_VERSION,
            "kind": "mixture",
            "num_qubits": terms[0].num_qubits,
            "terms": [
                {"weight": t.weight, "factors": [_matrix_rows(f) for f in t.factors]}
                for t in terms
            ],
        }
    raise ValidationError(f"cannot serialize {type(state).__name__} as a state file")


def dumps(document):
    return render_json(document) + "\n"


def _field(doc, name, kind=None):
    if name not in doc:
        where = f" for kind {kind!r}" if kind else ""
        raise ValidationError(f"state file is missing field {name!r}{where}")
    return doc[name]


def _parse_complex(value, field_name):
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, (int, float)) for x in value)):
        raise ValidationError(f"field {field_name!r} must contain [re, im] pairs")
    return complex(value[0], value[1])


def _parse_complex_vector(raw, field_name):
    if not isinstance(raw, list):
        raise ValidationError(f"field {field_name!r} must be a list")
    return np.array([_parse_complex(v, field_name) for v in raw], dtype=complex)


def _parse_complex_matrix(raw, field_name):
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise ValidationError(f"field {field_name!r} must be a list of rows")
    return np.array([[_parse_complex(v, field_name) for v in row] for row in raw],
                    dtype=complex)


def document_to_state(doc):
    """Parse and re-validate a state file document.

    Mixture documents return the list of MixtureTerms; call
    spinsqueeze.states.mix to realize the density matrix.
    """
    if not isinstance(doc, dict):
        raise ValidationError("state file must be a JSON object")
    version = _field(doc, "format_version")
    if version != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported format_version {version!r} (expected {FORMAT_VERSION!r})")
    kind = _field(doc, "kind")
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r} (expected one of {KINDS})")
    n = _field(doc, "num_qubits")
    if not isinstance(n, int) or n < 1:
        raise ValidationError("field 'num_qubits' must be a positive integer")
    if kind == "pure":
        amps = _parse_complex_vector(_field(doc, "amplitudes", kind), "amplitudes")
        return PureState(n, amps)
    if kind == "density":
        mat = _parse_complex_matrix(_field(doc, "matrix", kind), "matrix")
        return DensityMatrix(n, mat)
    if kind == "symmetric":
        amps = _parse_complex_vector(
            _field(doc, "dicke_amplitudes", kind), "dicke_amplitudes")
        return SymmetricState(n, amps)
    raw_terms = _field(doc, "terms", kind)
    if not isinstance(raw_terms, list) or not raw_terms:
        raise ValidationError("field 'terms' must be a non-empty list")
    terms = []
    for idx, raw in enumerate(raw_terms):
        if not isinstance(raw, dict):
            raise ValidationError(f"term {idx} must be an object")
        weight = _field(raw, "weight")
        if not isinstance(weight, (int, float)):
            raise ValidationError(f"term {idx} field 'weight' must be a number")
        factors = _field(raw, "factors")
        if not isinstance(factors, list) or len(factors) != n:
            raise ValidationError(f"term {idx} must carry {n} factors")
        mats = tuple(_parse_complex_matrix(f, f"terms[{idx}].factors") for f in factors)
        terms.append(MixtureTerm(float(weight), mats))
    return terms


def realize(parsed):
    """Turn document_to_state output into an analyzable state object."""
    if isinstance(parsed, list):
        return mix(parsed)
    return parsed


def save_state(path, state):
    text = dumps(state_to_document(state))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def load_document(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.loads(fh.read())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"state file is not valid JSON: {exc}") from exc


def load_state(path):
    """Read, parse and validate a state file; mixtures come back as term lists."""
    return document_to_state(load_document(path))
