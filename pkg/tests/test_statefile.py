import json
import math

import numpy as np
import pytest

from spinsqueeze import (
    DensityMatrix,
    PureState,
    ValidationError,
    coherent_spin_state,
    random_separable_terms,
)
from spinsqueeze.statefile import (
    document_to_state,
    dumps,
    load_state,
    realize,
    save_state,
    state_to_document,
)

from conftest import bell_state


def roundtrip_text(state):
    return dumps(state_to_document(state))


def test_round_trip_is_byte_identical_for_all_kinds(tmp_path, rng):
    pure = bell_state()
    dense = DensityMatrix(2, np.outer(pure.amplitudes, pure.amplitudes.conj()))
    symmetric = coherent_spin_state(3, 1.1, 2.2)
    mixture = random_separable_terms(3, 4, seed=5)
    for idx, state in enumerate((pure, dense, symmetric, mixture)):
        first = roundtrip_text(state)
        parsed = document_to_state(json.loads(first))
        second = roundtrip_text(parsed)
        assert first == second, f"kind {idx} round trip not byte-identical"


def test_save_and_load(tmp_path):
    path = tmp_path / "state.json"
    save_state(path, bell_state())
    loaded = load_state(path)
    assert isinstance(loaded, PureState)
    assert np.allclose(loaded.amplitudes, bell_state().amplitudes)


def test_mixture_realizes_to_density_matrix():
    terms = random_separable_terms(2, 3, seed=9)
    parsed = document_to_state(json.loads(roundtrip_text(terms)))
    rho = realize(parsed)
    assert isinstance(rho, DensityMatrix)


def test_seventeen_digit_floats():
    text = roundtrip_text(PureState(1, np.array([math.sqrt(1 / 3), math.sqrt(2 / 3)])))
    assert "0.57735026918962573" in text


def test_errors_name_the_offending_field():
    with pytest.raises(ValidationError, match="format_version"):
        document_to_state({"kind": "pure"})
    with pytest.raises(ValidationError, match="kind"):
        document_to_state({"format_version": "1", "kind": "wave", "num_qubits": 1})
    with pytest.raises(ValidationError, match="num_qubits"):
        document_to_state({"format_version": "1", "kind": "pure", "num_qubits": "two"})
    with pytest.raises(ValidationError, match="amplitudes"):
        document_to_state({"format_version": "1", "kind": "pure", "num_qubits": 1,
                           "amplitudes": [[1.0, 0.0], ["x", 0.0]]})


def test_deserialization_revalidates_invariants():
    doc = {"format_version": "1", "kind": "pure", "num_qubits": 1,
           "amplitudes": [[1.0, 0.0], [1.0, 0.0]]}
    with pytest.raises(ValidationError):
        document_to_state(doc)
