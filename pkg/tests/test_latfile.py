import pytest

from latkit import herringbone as hb
from latkit.constructions import (
    free_modular_3,
    lattice_T,
    lattice_T_doubleprime,
    lattice_T_prime,
    m3,
)
from latkit.core import covers
from latkit.errors import ParseError
from latkit.latfile import parse, serialize, to_dot

M3_TEXT = """\
# the diamond
name: m3
elements: 0 a1 a2 a3 1
covers:
0 a1
0 a2
0 a3
a1 1
a2 1
a3 1
generators: a1 a2 a3
"""


def test_parse_m3():
    parsed = parse(M3_TEXT)
    assert parsed.name == "m3"
    assert parsed.lattice.n == 5
    assert parsed.generators == ("a1", "a2", "a3")


def test_roundtrip_is_identity():
    parsed = parse(M3_TEXT)
    text = serialize(parsed.lattice, parsed.name, parsed.generators)
    again = parse(text)
    assert again.lattice.universe == parsed.lattice.universe
    assert covers(again.lattice) == covers(parsed.lattice)
    assert serialize(again.lattice, again.name, again.generators) == text


def test_roundtrip_all_builtins():
    builtins = {
        "m3": m3(),
        "fm3": free_modular_3(),
        "T": lattice_T(),
        "T'": lattice_T_prime(),
        "T''": lattice_T_doubleprime(),
        "K/Theta": hb.k_theta_quotient(),
        "H_3": hb.truncation_H(3),
        "K_4": hb.truncation_K(4),
    }
    for name, lat in builtins.items():
        text = serialize(lat, name)
        parsed = parse(text)
        assert parsed.name == name
        assert set(parsed.lattice.universe) == set(lat.universe)
        assert covers(parsed.lattice) == covers(lat)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse("elements: a b\ncovers:\na b c\n")
    assert err.value.line == 3
    with pytest.raises(ParseError) as err:
        parse("elements: a b\ncovers:\na q\n")
    assert err.value.line == 3
    with pytest.raises(ParseError):
        parse("covers:\n")  # no elements line


def test_parse_rejects_duplicate_elements():
    with pytest.raises(ParseError):
        parse("elements: a a\ncovers:\n")


def test_colon_names_parse():
    text = serialize(hb.truncation_H(1), "H_1")
    parsed = parse(text)
    assert "A:2" in parsed.lattice.universe
    assert "Q:1" in parsed.lattice.universe


def test_to_dot():
    dot = to_dot(m3(), "m3")
    assert dot.startswith('digraph "m3"')
    assert "rankdir=BT" in dot
    assert dot.count("->") == 6
    assert '"0" -> "a1"' in dot
