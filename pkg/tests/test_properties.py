"""Tests for the property suite and its ledger bookkeeping."""

import numpy as np
import pytest

from qumetrics.linalg import random_observable
from qumetrics.properties import PropertyLedger, check_properties
from qumetrics.states import hansen, maximally_mixed, pure, random_density, werner


def _sample_set(dims=(2, 3, 4), count=10, seed=0):
    rng = np.random.default_rng(seed)
    states = []
    observables = []
    for dim in dims:
        states.append(maximally_mixed(dim))
        states.append(pure(rng.standard_normal(dim) + 1j * rng.standard_normal(dim)))
        if dim > 1:
            states.append(random_density(dim, rng, rank=dim - 1))
        for _ in range(count):
            states.append(random_density(dim, rng))
        if dim == 4:
            states.extend([werner(0.25), werner(0.6), werner(1.0), hansen()])
        for _ in range(max(3, count // 2)):
            observables.append(random_observable(dim, rng))
    return states, observables


class TestCheckProperties:
    def test_all_properties_hold_on_seeded_samples(self):
        states, observables = _sample_set()
        ledger = check_properties(states, observables, seed=1)
        failing = [r.name for r in ledger.results if not r.ok]
        assert ledger.ok, f"failing properties: {failing}"

    def test_every_predicate_collected_samples(self):
        states, observables = _sample_set()
        ledger = check_properties(states, observables, seed=1)
        for result in ledger.results:
            assert result.samples > 0, f"{result.name} never ran"

    def test_deterministic_for_fixed_seed(self):
        states, observables = _sample_set(dims=(2, 3), count=4)
        first = check_properties(states, observables, seed=5)
        second = check_properties(states, observables, seed=5)
        assert first.to_dict() == second.to_dict()

    def test_identity_checks_are_tight(self):
        states, observables = _sample_set(dims=(2, 3), count=6)
        ledger = check_properties(states, observables, seed=2)
        by_name = {r.name: r for r in ledger.results}
        assert by_name["wyd_additive_over_products"].worst <= 1e-9
        assert by_name["q_product_probability_identity"].worst <= 1e-10

    def test_requires_matching_observables(self):
        with pytest.raises(ValueError, match="dimension 3"):
            check_properties(
                [maximally_mixed(3)], [random_observable(2, 0)], seed=0
            )

    def test_requires_states(self):
        with pytest.raises(ValueError, match="at least one"):
            check_properties([], [random_observable(2, 0)], seed=0)

    def test_failures_are_counted_not_raised(self):
        # an absurdly tight tolerance must produce failures, not exceptions
        states, observables = _sample_set(dims=(3,), count=3)
        ledger = check_properties(states, observables, tol=1e-18, seed=3)
        assert not ledger.ok
        assert any(r.failures > 0 for r in ledger.results)


class TestLedger:
    def test_table_lists_every_property(self):
        states, observables = _sample_set(dims=(2,), count=3)
        ledger = check_properties(states, observables, seed=4)
        table = ledger.format_table()
        for result in ledger.results:
            assert result.name in table
        assert "all properties hold" in table

    def test_dict_is_json_safe(self):
        import json

        states, observables = _sample_set(dims=(2,), count=3)
        ledger = check_properties(states, observables, seed=4)
        payload = json.loads(json.dumps(ledger.to_dict()))
        assert payload["ok"] is True
        assert payload["dims"] == [2]

    def test_ledger_metadata(self):
        states, observables = _sample_set(dims=(2, 4), count=2)
        ledger = check_properties(states, observables, alphas=(0.3, 0.5), seed=9)
        assert isinstance(ledger, PropertyLedger)
        assert ledger.alphas == (0.3, 0.5)
        assert ledger.dims == (2, 4)
