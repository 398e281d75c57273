import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordism import RootOfUnity, SeifertForm, lt_invariants
from cobordism.generators import random_complex, random_seifert, random_triad
from cobordism.polyarith import primitive_roots
from cobordism.seifert import MKInstance
from cobordism.textio import (
    ParseError,
    SeifertFile,
    format_chain_triad,
    format_complex,
    format_lagrangian_triad,
    format_mk_instance,
    format_profile,
    format_seifert,
    parse_chain_triad,
    parse_complex,
    parse_lagrangian_triad,
    parse_mk_instance,
    parse_profile,
    parse_seifert,
    profile_rows,
    read_text,
)

from strategies import seeds

TREFOIL_TEXT = """\
# comment
label: trefoil
parity: 1
matrix:
  -1 1
  0 -1
"""


class TestSeifertFile:
    def test_parse(self):
        sf = parse_seifert(TREFOIL_TEXT)
        assert sf == SeifertFile(SeifertForm.from_rows([[-1, 1], [0, -1]], 1), "trefoil")

    def test_empty_matrix(self):
        sf = parse_seifert("parity: 1\nmatrix:\n")
        assert sf.form.dim == 0 and sf.label is None

    def test_ragged_row_is_named(self):
        with pytest.raises(ParseError) as e:
            parse_seifert("parity: 1\nmatrix:\n  1 2\n  3\n")
        assert e.value.line == 4 and e.value.field == "matrix"
        assert "row 2 has 1 entries, expected 2" in str(e.value)
        assert str(e.value).startswith("line 4, field 'matrix'")

    @pytest.mark.parametrize("text, field", [
        ("matrix:\n 1\n", None),
        ("parity: x\nmatrix:\n 1\n", "parity"),
        ("parity: 1\ncolour: red\nmatrix:\n 1\n", "colour"),
        ("parity: 1\nmatrix:\n 1 a\n", "matrix"),
        ("parity: 1\nparity: 0\nmatrix:\n 1\n", "parity"),
    ])
    def test_diagnostics(self, text, field):
        with pytest.raises(ParseError) as e:
            parse_seifert(text)
        assert e.value.field == field

    @settings(max_examples=80, deadline=None)
    @given(seeds, st.one_of(st.none(), st.text("abcxyz_-0123456789", min_size=1, max_size=12)))
    def test_round_trip(self, seed, label):
        s = random_seifert(random.Random(seed), 5, 4)
        assert parse_seifert(format_seifert(s, label)) == SeifertFile(s, label)


class TestComplexFile:
    def test_times_two(self):
        C = parse_complex("degrees: 0 1\nrank 0: 1\nrank 1: 1\nd 1:\n  2\n")
        assert str(C.homology(0)) == "Z/2"

    def test_empty_complex(self):
        assert parse_complex("degrees: 0 -1\n").is_zero()

    def test_rejects_non_complex(self):
        text = "degrees: 0 2\nrank 0: 1\nrank 1: 1\nrank 2: 1\nd 1:\n 1\nd 2:\n 1\n"
        with pytest.raises(ParseError, match="nonzero"):
            parse_complex(text)

    def test_degree_out_of_range(self):
        with pytest.raises(ParseError, match="outside declared range") as e:
            parse_complex("degrees: 0 1\nrank 3: 1\n")
        assert e.value.line == 2

    @settings(max_examples=60, deadline=None)
    @given(seeds, st.integers(-2, 2))
    def test_round_trip(self, seed, lo):
        C = random_complex(random.Random(seed), lo, 4).complex
        assert parse_complex(format_complex(C)) == C


class TestTriadFiles:
    def test_lagrangian_round_trip(self, data_dir):
        t = parse_lagrangian_triad(read_text(data_dir / "cp2.triad"))
        assert parse_lagrangian_triad(format_lagrangian_triad(t)) == t

    def test_lagrangian_is_checked(self):
        text = "epsilon: -1\nform:\n 0 1\n -1 0\nlagrangian minus:\n 2\n 0\nlagrangian dprime:\n 0\n 1\nlagrangian plus:\n 1\n 0\n"
        with pytest.raises(ValueError, match="j_minus"):
            parse_lagrangian_triad(text)

    def test_unknown_section(self):
        with pytest.raises(ParseError, match="unknown section") as e:
            parse_chain_triad("[complex D]\ndegrees: 0 0\nrank 0: 1\n[nonsense]\n")
        assert e.value.line == 4

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_chain_triad_round_trip(self, seed):
        g = random_triad(random.Random(seed))
        assert parse_chain_triad(format_chain_triad(g)) == g


class TestMKFile:
    def test_round_trip(self, data_dir):
        inst = parse_mk_instance(read_text(data_dir / "trefoil_unknot.mk"))
        assert inst.xi == RootOfUnity(1, 2) and inst.b_sigma == 4
        assert parse_mk_instance(format_mk_instance(inst)) == inst

    def test_rejects_xi_one(self):
        with pytest.raises(ParseError, match="excluded") as e:
            parse_mk_instance("parity: 1\nxi: 0/1\nb_sigma: 0\nb_sigma0: 0\nb_sigma1: 0\nA0:\nA1:\n")
        assert e.value.field == "xi"

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_random_round_trip(self, seed):
        rng = random.Random(seed)
        parity = rng.randint(0, 1)
        inst = MKInstance(random_seifert(rng, 3, 3, parity), random_seifert(rng, 3, 3, parity),
                          rng.randint(0, 9), rng.randint(0, 9), rng.randint(0, 9), rng.choice(primitive_roots(9)))
        assert parse_mk_instance(format_mk_instance(inst)) == inst


class TestProfile:
    def test_trefoil_profile(self):
        s = SeifertForm.from_rows([[-1, 1], [0, -1]], 1)
        text = format_profile(profile_rows([lt_invariants(s, xi) for xi in primitive_roots(6)]))
        lines = text.splitlines()
        assert lines[0] == "p/q,nullity,signature,delta_zero"
        assert [ln.split(",")[0] for ln in lines[1:] if ln.split(",")[1] == "1"] == ["1/6", "5/6"]
        assert parse_profile(text) == profile_rows([lt_invariants(s, xi) for xi in primitive_roots(6)])

    def test_bad_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_profile("a,b,c,d\n")

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_rows_sorted_and_symmetric(self, seed):
        s = random_seifert(random.Random(seed), 4, 2)
        rows = profile_rows([lt_invariants(s, xi) for xi in reversed(primitive_roots(8))])
        angles = [r.xi.angle for r in rows]
        assert angles == sorted(angles)
        by_root = {r.xi: r for r in rows}
        for r in rows:
            mirror = by_root[r.xi.conjugate()]
            assert mirror.nullity == r.nullity
            assert mirror.signature == -s.epsilon * r.signature
        assert parse_profile(format_profile(rows)) == rows
