import random

import pytest

from signbench.symbols import (
    SymbolId,
    SymbolIdError,
    is_symbol_ref,
    is_user_ref,
    parse_symbol_id,
    user_ref,
    user_ref_number,
)


def test_parse_minimum_id():
    assert parse_symbol_id("01-01-001-01-01-01") == SymbolId(1, 1, 1, 1, 1, 1)


def test_parse_mirrored_rotation():
    sid = parse_symbol_id("02-05-012-01-02-09")
    assert sid.as_tuple() == (2, 5, 12, 1, 2, 9)
    assert sid.mirrored
    assert sid.rotation_step == 0


def test_parse_rejects_fill_out_of_range():
    with pytest.raises(SymbolIdError, match="fill"):
        parse_symbol_id("01-01-001-01-07-01")


@pytest.mark.parametrize("text", [
    "", "01-01-001-01-01", "1-01-001-01-01-01", "01-01-0001-01-01-01",
    "01_01_001_01_01_01", "00-01-001-01-01-01", "09-01-001-01-01-01",
    "01-00-001-01-01-01", "01-01-000-01-01-01", "01-01-001-00-01-01",
    "01-01-001-01-00-01", "01-01-001-01-01-00", "01-01-001-01-01-17",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(SymbolIdError):
        parse_symbol_id(text)


def test_parse_format_bijection_random_sample():
    rng = random.Random(7)
    for _ in range(500):
        sid = SymbolId(rng.randint(1, 8), rng.randint(1, 99),
                       rng.randint(1, 999), rng.randint(1, 99),
                       rng.randint(1, 6), rng.randint(1, 16))
        assert parse_symbol_id(sid.text) == sid
        # and in text space: parse then format restores the text
        assert parse_symbol_id(sid.text).text == sid.text


def test_rotation_view_round_trips():
    for rotation in range(1, 17):
        sid = SymbolId(1, 1, 1, 1, 1, rotation)
        assert sid.with_rotation(sid.rotation_step, sid.mirrored) == sid


def test_constructor_checks_ranges():
    with pytest.raises(SymbolIdError, match="category"):
        SymbolId(9, 1, 1, 1, 1, 1)
    with pytest.raises(SymbolIdError, match="rotation"):
        SymbolId(1, 1, 1, 1, 1, 17)


def test_user_refs_are_a_disjoint_namespace():
    assert is_user_ref("U-1")
    assert is_user_ref(user_ref(123))
    assert user_ref_number("U-42") == 42
    assert not is_user_ref("01-01-001-01-01-01")
    assert not is_symbol_ref("U-1")
    assert not is_user_ref("U-0")
    assert not is_user_ref("U-01")


def test_user_ref_rejects_non_positive():
    with pytest.raises(ValueError):
        user_ref(0)
