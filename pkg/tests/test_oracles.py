import pytest

from oracle_values import ORACLE

derive_oracles = pytest.importorskip("derive_oracles")


def test_frozen_values_match_a_fresh_derivation():
    assert derive_oracles.derive() == ORACLE
