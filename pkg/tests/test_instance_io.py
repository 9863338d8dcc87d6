import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uncertainty_bounds import instance_io
from uncertainty_bounds.errors import DimensionMismatch, NotHermitian, ParseError
from uncertainty_bounds.instances import norm_counterexample, pauli_triple
from uncertainty_bounds.quantum import QuantumState

from conftest import make_instance

BASE = {
    "dimension": 2,
    "observables": [{"name": "X", "matrix": [[0, 1], [1, 0]]}, {"name": "Y", "matrix": [[0, [0, -1]], [[0, 1], 0]]}],
    "state": {"bloch": [0, 0, 1]},
}


def _with(**kw):
    d = json.loads(json.dumps(BASE))
    d.update(kw)
    return d


class TestParse:
    def test_base(self):
        inst = instance_io.parse_instance(BASE)
        assert inst.dimension == 2 and [a.name for a in inst.observables] == ["X", "Y"]
        assert inst.observables[1].matrix[0, 1] == -1j
        assert inst.state.kind == "bloch"

    def test_syntax_error_has_line(self):
        with pytest.raises(ParseError, match="line 2"):
            instance_io.loads('{"dimension": 2,\n ]')

    def test_bad_entry_has_field_path(self):
        bad = _with(observables=[{"name": "X", "matrix": [[0, "one"], [1, 0]]}])
        with pytest.raises(ParseError, match=r"observables\[0\]\.matrix\[0\]\[1\]"):
            instance_io.parse_instance(bad)

    def test_non_square(self):
        with pytest.raises(ParseError, match="square"):
            instance_io.parse_instance(_with(observables=[{"matrix": [[0, 1], [1]]}]))

    def test_wrong_size(self):
        with pytest.raises(ParseError, match="dimension"):
            instance_io.parse_instance(_with(observables=[{"matrix": [[1]]}]))

    def test_non_hermitian_named(self):
        with pytest.raises(NotHermitian, match="'Bad'"):
            instance_io.parse_instance(_with(observables=[{"name": "Bad", "matrix": [[0, 1], [0, 0]]}]))

    def test_state_kinds(self):
        with pytest.raises(ParseError, match="exactly one"):
            instance_io.parse_instance(_with(state={"pure": [1, 0], "bloch": [0, 0, 1]}))
        with pytest.raises(ParseError):
            instance_io.parse_instance(_with(state={}))

    def test_state_length(self):
        with pytest.raises(DimensionMismatch):
            instance_io.parse_instance(_with(state={"pure": [1, 0, 0]}))

    def test_missing_state(self):
        d = _with()
        del d["state"]
        with pytest.raises(ParseError, match="state"):
            instance_io.parse_instance(d)
        assert instance_io.parse_instance(d, require_state=False).state is None

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="nope.json"):
            instance_io.load(tmp_path / "nope.json")


class TestRoundTrip:
    def _roundtrip(self, obs, state):
        inst = instance_io.make_instance(obs, state)
        back = instance_io.loads(instance_io.dumps(inst))
        for a, b in zip(inst.observables, back.observables):
            assert a.name == b.name
            assert np.array_equal(a.matrix, b.matrix)
        return inst, back

    @given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(1, 4))
    def test_pure(self, seed, d, k):
        inst, back = self._roundtrip(*make_instance(seed, d, k))
        assert np.array_equal(inst.state.vector, back.state.vector)

    @given(st.integers(0, 2**32 - 1), st.integers(1, 4))
    def test_density(self, seed, d):
        inst, back = self._roundtrip(*make_instance(seed, d, 2, mixed=True))
        assert np.allclose(inst.state.rho, back.state.rho, atol=1e-15)

    def test_bloch(self):
        inst, back = self._roundtrip(*pauli_triple())
        assert back.state.bloch == inst.state.bloch

    def test_counterexample(self):
        self._roundtrip(*norm_counterexample())

    def test_dumps_is_stable(self):
        inst = instance_io.make_instance(*pauli_triple())
        assert instance_io.dumps(inst) == instance_io.dumps(instance_io.loads(instance_io.dumps(inst)))

    def test_pure_state_from_file(self, tmp_path):
        p = tmp_path / "k.json"
        p.write_text(json.dumps(_with(state={"pure": [[0, 1], 0]})))
        inst = instance_io.load(p)
        assert inst.instance_id == "k"
        assert isinstance(inst.state, QuantumState) and inst.state.vector[0] == 1j
