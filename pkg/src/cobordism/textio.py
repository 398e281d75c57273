"""Line-oriented text formats for Seifert forms, complexes, triads and profiles.

Every format is a sequence of ``key: value`` lines. A key with an empty
value may be followed by matrix rows, one row of whitespace-separated
integers per line. ``#`` starts a comment; blank lines are ignored.
Chain-triad files additionally use ``[section]`` header lines.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from pathlib import Path

from .chain import ChainComplex, ChainMap, RelativeCobordismTriad
from .exact_linalg import IntMatrix
from .forms import EpsSymmetricForm, TriadLagrangians
from .polyarith import RootOfUnity
from .seifert import LTResult, MKInstance, SeifertForm

__all__ = [
    "ParseError",
    "SeifertFile",
    "ProfileRow",
    "parse_seifert",
    "format_seifert",
    "parse_complex",
    "format_complex",
    "parse_lagrangian_triad",
    "format_lagrangian_triad",
    "parse_chain_triad",
    "format_chain_triad",
    "parse_mk_instance",
    "format_mk_instance",
    "profile_rows",
    "format_profile",
    "parse_profile",
    "read_text",
]


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based (None when the whole file is at fault)."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


@dataclass
class _Field:
    key: str
    value: str
    line: int
    rows: list[tuple[int, list[int]]] = field(default_factory=list)


@dataclass
class _Section:
    header: str
    line: int
    fields: list[_Field] = field(default_factory=list)


_KEY_LINE = re.compile(r"^([A-Za-z_][\w' -]*?)\s*:\s*(.*)$")
_SECTION_LINE = re.compile(r"^\[\s*(.+?)\s*\]$")


def _tokenize(text: str, allow_sections: bool = False) -> list[_Section]:
    """Split text into sections of fields; the first section has header ''."""
    sections = [_Section("", 0)]
    current: _Field | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_LINE.match(line)
        if m:
            if not allow_sections:
                raise ParseError(f"unexpected section header '{line}'", lineno)
            sections.append(_Section(m.group(1), lineno))
            current = None
            continue
        m = _KEY_LINE.match(line)
        if m:
            current = _Field(m.group(1).strip(), m.group(2).strip(), lineno)
            sections[-1].fields.append(current)
            continue
        if current is None:
            raise ParseError(f"matrix row outside any field: '{line}'", lineno)
        if current.value:
            raise ParseError("field takes an inline value, not matrix rows", lineno, current.key)
        try:
            current.rows.append((lineno, [int(tok) for tok in line.split()]))
        except ValueError:
            raise ParseError(f"expected integers, got '{line}'", lineno, current.key) from None
    return sections


def _index(fields: list[_Field]) -> dict[str, _Field]:
    out: dict[str, _Field] = {}
    for f in fields:
        if f.key in out:
            raise ParseError("duplicate field", f.line, f.key)
        out[f.key] = f
    return out


def _require(fields: dict[str, _Field], key: str, where: int | None = None) -> _Field:
    if key not in fields:
        raise ParseError(f"missing required field '{key}'", where)
    return fields[key]


def _int_value(f: _Field) -> int:
    try:
        return int(f.value)
    except ValueError:
        raise ParseError(f"expected an integer, got '{f.value}'", f.line, f.key) from None


def _matrix(f: _Field, rows: int | None = None, cols: int | None = None) -> IntMatrix:
    """The rows attached to a field, checked against the expected shape."""
    if rows is not None and len(f.rows) != rows:
        if not f.rows and cols == 0:
            return IntMatrix.zeros(rows, 0)
        raise ParseError(f"expected {rows} rows, got {len(f.rows)}", f.line, f.key)
    if cols is None:
        cols = len(f.rows[0][1]) if f.rows else 0
    for i, (lineno, r) in enumerate(f.rows, start=1):
        if len(r) != cols:
            raise ParseError(f"row {i} has {len(r)} entries, expected {cols}", lineno, f.key)
    return IntMatrix.from_rows([r for _, r in f.rows], cols=cols)


def _matrix_lines(M: IntMatrix) -> list[str]:
    return ["  " + " ".join(str(x) for x in row) for row in M.to_rows()]


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


# ---------------------------------------------------------------- Seifert files

@dataclass(frozen=True)
class SeifertFile:
    form: SeifertForm
    label: str | None = None


def parse_seifert(text: str) -> SeifertFile:
    """``label:`` (optional), ``parity:`` n and a square ``matrix:``."""
    (top,) = _tokenize(text)
    fields = _index(top.fields)
    for f in fields.values():
        if f.key not in ("label", "parity", "matrix"):
            raise ParseError("unknown field", f.line, f.key)
    parity = _int_value(_require(fields, "parity"))
    mf = _require(fields, "matrix")
    if mf.value:
        raise ParseError("matrix rows go on the following lines", mf.line, "matrix")
    k = len(mf.rows)
    A = _matrix(mf, k, k)
    label = fields["label"].value if "label" in fields else None
    return SeifertFile(SeifertForm(A, parity), label or None)


def format_seifert(s: SeifertForm, label: str | None = None) -> str:
    lines = [f"label: {label}"] if label else []
    lines += [f"parity: {s.parity}", "matrix:"] + _matrix_lines(s.A)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- chain complexes

_RANK_KEY = re.compile(r"^rank\s+(-?\d+)$")
_DIFF_KEY = re.compile(r"^d\s+(-?\d+)$")
_COMP_KEY = re.compile(r"^f\s+(-?\d+)$")


def _complex_from_fields(fields: list[_Field], where: int | None = None) -> ChainComplex:
    ranks: dict[int, int] = {}
    rank_fields: dict[int, _Field] = {}
    diffs: dict[int, _Field] = {}
    degrees = None
    for f in fields:
        if f.key == "degrees":
            parts = f.value.split()
            try:
                lo, hi = (int(p) for p in parts)
            except ValueError:
                raise ParseError(f"expected 'lo hi', got '{f.value}'", f.line, f.key) from None
            if hi < lo - 1:
                raise ParseError(f"empty range must be written 'lo {lo - 1}'", f.line, f.key)
            degrees = (lo, hi)
        elif m := _RANK_KEY.match(f.key):
            r = int(m.group(1))
            if r in ranks:
                raise ParseError("duplicate field", f.line, f.key)
            ranks[r], rank_fields[r] = _int_value(f), f
            if ranks[r] < 0:
                raise ParseError("rank must be non-negative", f.line, f.key)
        elif m := _DIFF_KEY.match(f.key):
            r = int(m.group(1))
            if r in diffs:
                raise ParseError("duplicate field", f.line, f.key)
            diffs[r] = f
        else:
            raise ParseError("unknown field", f.line, f.key)
    if degrees is None:
        raise ParseError("missing required field 'degrees'", where)
    lo, hi = degrees
    for r, f in rank_fields.items():
        if not lo <= r <= hi:
            raise ParseError(f"degree {r} outside declared range {lo}..{hi}", f.line, f.key)
    rank_list = [ranks.get(r, 0) for r in range(lo, hi + 1)]

    def rk(r):
        return rank_list[r - lo] if lo <= r <= hi else 0

    mats = {}
    for r, f in diffs.items():
        mats[r] = _matrix(f, rk(r - 1), rk(r))
    try:
        return ChainComplex(lo, rank_list, mats)
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def parse_complex(text: str) -> ChainComplex:
    """``degrees: lo hi``, then ``rank r: n`` and ``d r:`` blocks (d_r: C_r → C_{r−1})."""
    (top,) = _tokenize(text)
    return _complex_from_fields(top.fields)


def _complex_lines(C: ChainComplex) -> list[str]:
    lines = [f"degrees: {C.lo} {C.hi}"]
    lines += [f"rank {r}: {C.rank(r)}" for r in C.degrees]
    for r in C.degrees:
        d = C.d(r)
        if not d.is_zero():
            lines.append(f"d {r}:")
            lines += _matrix_lines(d)
    return lines


def format_complex(C: ChainComplex) -> str:
    return "\n".join(_complex_lines(C)) + "\n"


# ---------------------------------------------------------------- triads

_LAGRANGIAN_KEYS = {"lagrangian minus": "j_minus", "lagrangian dprime": "j_dprime", "lagrangian plus": "j_plus"}


def parse_lagrangian_triad(text: str) -> TriadLagrangians:
    """``epsilon:``, ``form:`` and three ``lagrangian minus|dprime|plus:`` blocks.

    Each lagrangian is written as a matrix whose columns span it.
    """
    (top,) = _tokenize(text)
    fields = _index(top.fields)
    for f in fields.values():
        if f.key not in ("epsilon", "form", *_LAGRANGIAN_KEYS):
            raise ParseError("unknown field", f.line, f.key)
    eps_field = _require(fields, "epsilon")
    epsilon = _int_value(eps_field)
    if epsilon not in (1, -1):
        raise ParseError("epsilon must be 1 or -1", eps_field.line, "epsilon")
    ff = _require(fields, "form")
    k = len(ff.rows)
    gram = _matrix(ff, k, k)
    try:
        form = EpsSymmetricForm(epsilon, gram)
    except ValueError as exc:
        raise ParseError(str(exc), ff.line, "form") from None
    incl = {}
    for key, attr in _LAGRANGIAN_KEYS.items():
        f = _require(fields, key)
        rows = f.rows
        cols = len(rows[0][1]) if rows else 0
        incl[attr] = _matrix(f, k, cols)
    return TriadLagrangians(form, **incl)


def format_lagrangian_triad(t: TriadLagrangians) -> str:
    lines = [f"epsilon: {t.ambient.epsilon}", "form:"] + _matrix_lines(t.ambient.gram)
    for key, attr in _LAGRANGIAN_KEYS.items():
        lines.append(f"{key}:")
        lines += _matrix_lines(getattr(t, attr))
    return "\n".join(lines) + "\n"


_TRIAD_COMPLEXES = ("B", "Bp", "C", "Cp", "E", "D")
_TRIAD_MAPS = {
    ("B", "C"): "b_to_c",
    ("B", "E"): "b_to_e",
    ("Bp", "Cp"): "bp_to_cp",
    ("Bp", "E"): "bp_to_e",
    ("C", "D"): "c_to_d",
    ("Cp", "D"): "cp_to_d",
    ("E", "D"): "e_to_d",
}
_MAP_HEADER = re.compile(r"^map\s+(\w+)\s*->\s*(\w+)$")
_COMPLEX_HEADER = re.compile(r"^complex\s+(\w+)$")


def parse_chain_triad(text: str) -> RelativeCobordismTriad:
    """``[complex NAME]`` and ``[map X -> Y]`` sections.

    Names are B, Bp, C, Cp, E, D; omitted complexes are zero and omitted
    maps are zero. A map section holds ``f r:`` blocks.
    """
    sections = _tokenize(text, allow_sections=True)
    if sections[0].fields:
        f = sections[0].fields[0]
        raise ParseError("field outside any section", f.line, f.key)
    complexes: dict[str, ChainComplex] = {}
    map_sections: dict[tuple[str, str], _Section] = {}
    for sec in sections[1:]:
        if m := _COMPLEX_HEADER.match(sec.header):
            name = m.group(1)
            if name not in _TRIAD_COMPLEXES:
                raise ParseError(f"unknown complex '{name}'; expected one of {', '.join(_TRIAD_COMPLEXES)}", sec.line)
            if name in complexes:
                raise ParseError(f"complex '{name}' given twice", sec.line)
            complexes[name] = _complex_from_fields(sec.fields, sec.line)
        elif m := _MAP_HEADER.match(sec.header):
            key = (m.group(1), m.group(2))
            if key not in _TRIAD_MAPS:
                allowed = ", ".join(f"{a} -> {b}" for a, b in _TRIAD_MAPS)
                raise ParseError(f"unknown map '{sec.header}'; expected one of {allowed}", sec.line)
            if key in map_sections:
                raise ParseError(f"map '{sec.header}' given twice", sec.line)
            map_sections[key] = sec
        else:
            raise ParseError(f"unknown section '[{sec.header}]'", sec.line)
    for name in _TRIAD_COMPLEXES:
        complexes.setdefault(name, ChainComplex.zero())
    maps = {}
    for (src, tgt), attr in _TRIAD_MAPS.items():
        S, T = complexes[src], complexes[tgt]
        comps = {}
        sec = map_sections.get((src, tgt))
        if sec is not None:
            for f in sec.fields:
                m = _COMP_KEY.match(f.key)
                if not m:
                    raise ParseError("unknown field", f.line, f.key)
                r = int(m.group(1))
                if r in comps:
                    raise ParseError("duplicate field", f.line, f.key)
                comps[r] = _matrix(f, T.rank(r), S.rank(r))
        try:
            maps[attr] = ChainMap(S, T, comps)
        except ValueError as exc:
            raise ParseError(f"map {src} -> {tgt}: {exc}", sec.line if sec else None) from None
    return RelativeCobordismTriad(**maps)


def format_chain_triad(g: RelativeCobordismTriad) -> str:
    lines = []
    for name in _TRIAD_COMPLEXES:
        C = getattr(g, name)
        if C.is_zero():
            continue
        lines.append(f"[complex {name}]")
        lines += _complex_lines(C)
    for (src, tgt), attr in _TRIAD_MAPS.items():
        f: ChainMap = getattr(g, attr)
        body = []
        for r in f.source.degrees:
            comp = f.f(r)
            if not comp.is_zero():
                body.append(f"f {r}:")
                body += _matrix_lines(comp)
        if body:
            lines.append(f"[map {src} -> {tgt}]")
            lines += body
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- Murasugi–Kawauchi instances

_MK_COUNTS = ("b_sigma", "b_sigma0", "b_sigma1")


def parse_mk_instance(text: str) -> MKInstance:
    """``parity:``, ``xi: p/q``, the three Betti numbers and ``A0:``/``A1:`` blocks."""
    (top,) = _tokenize(text)
    fields = _index(top.fields)
    for f in fields.values():
        if f.key not in ("parity", "xi", "A0", "A1", *_MK_COUNTS):
            raise ParseError("unknown field", f.line, f.key)
    parity = _int_value(_require(fields, "parity"))
    xf = _require(fields, "xi")
    try:
        xi = RootOfUnity.parse(xf.value)
    except ValueError as exc:
        raise ParseError(str(exc), xf.line, "xi") from None
    counts = {}
    for key in _MK_COUNTS:
        f = _require(fields, key)
        counts[key] = _int_value(f)
        if counts[key] < 0:
            raise ParseError("Betti number must be non-negative", f.line, key)
    forms = {}
    for key in ("A0", "A1"):
        f = _require(fields, key)
        k = len(f.rows)
        forms[key] = SeifertForm(_matrix(f, k, k), parity)
    return MKInstance(forms["A0"], forms["A1"], xi=xi, **counts)


def format_mk_instance(inst: MKInstance) -> str:
    lines = [f"parity: {inst.A0.parity}", f"xi: {inst.xi}"]
    lines += [f"{key}: {getattr(inst, key)}" for key in _MK_COUNTS]
    for key in ("A0", "A1"):
        lines.append(f"{key}:")
        lines += _matrix_lines(getattr(inst, key).A)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- LT profiles

PROFILE_HEADER = ("p/q", "nullity", "signature", "delta_zero")


@dataclass(frozen=True)
class ProfileRow:
    xi: RootOfUnity
    nullity: int
    signature: int
    delta_zero: bool


def profile_rows(results: list[LTResult]) -> list[ProfileRow]:
    rows = [ProfileRow(r.xi, r.nullity, r.signature, r.alexander_value_is_zero) for r in results]
    return sorted(rows, key=lambda row: row.xi.angle)


def format_profile(rows: list[ProfileRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PROFILE_HEADER)
    for row in rows:
        w.writerow([str(row.xi), row.nullity, row.signature, "true" if row.delta_zero else "false"])
    return buf.getvalue()


def parse_profile(text: str) -> list[ProfileRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != PROFILE_HEADER:
        raise ParseError(f"header must be {','.join(PROFILE_HEADER)}", 1)
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != 4:
            raise ParseError(f"expected 4 columns, got {len(rec)}", lineno)
        try:
            xi = RootOfUnity.parse(rec[0])
        except ValueError as exc:
            raise ParseError(str(exc), lineno, "p/q") from None
        try:
            nullity, signature = int(rec[1]), int(rec[2])
        except ValueError:
            raise ParseError("nullity and signature must be integers", lineno) from None
        if rec[3] not in ("true", "false"):
            raise ParseError(f"expected true or false, got '{rec[3]}'", lineno, "delta_zero")
        rows.append(ProfileRow(xi, nullity, signature, rec[3] == "true"))
    return rows
