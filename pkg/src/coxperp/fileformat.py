"""Line-oriented Coxeter matrix files.

::

    # comment
    gens a b c d
    m a b 3
    m b d inf

Pairs not listed default to 2.
"""
from __future__ import annotations

from .coxeter import INF, CoxeterMatrix, format_label
from .errors import InputError, ParseError


def parse(text: str) -> CoxeterMatrix:
    gens: list[str] | None = None
    entries: dict = {}
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "gens":
            if gens is not None:
                raise ParseError("generators declared twice", lineno)
            if not rest:
                raise ParseError("'gens' needs at least one generator", lineno)
            if len(set(rest)) != len(rest):
                raise ParseError("duplicate generator in 'gens'", lineno)
            gens = rest
        elif head == "m":
            if gens is None:
                raise ParseError("'m' entry before 'gens'", lineno)
            if len(rest) != 3:
                raise ParseError("expected 'm <s> <t> <label>'", lineno)
            s, t, label = rest
            for g in (s, t):
                if g not in gens:
                    raise ParseError(f"unknown generator {g!r}", lineno)
            if s == t:
                raise ParseError(f"diagonal entry m({s},{s}) cannot be set", lineno)
            value = _label(label, lineno)
            key = frozenset((s, t))
            if key in seen and entries[key] != value:
                raise ParseError(f"conflicting value for m({s},{t}); first set on line {seen[key]}", lineno)
            seen.setdefault(key, lineno)
            entries[key] = value
        else:
            raise ParseError(f"unrecognised directive {head!r}", lineno)
    if gens is None:
        raise ParseError("no 'gens' line")
    try:
        return CoxeterMatrix(gens, {tuple(k): v for k, v in entries.items()})
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def _label(token: str, lineno: int):
    if token.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"label {token!r} is not an integer or 'inf'", lineno) from None
    if value < 2:
        raise ParseError(f"off-diagonal label {value} is below 2", lineno)
    return value


def render(cm: CoxeterMatrix) -> str:
    lines = ["gens " + " ".join(cm.generators)]
    lines += [f"m {s} {t} {format_label(m)}" for s, t, m in cm.labelled_pairs() if m != 2]
    return "\n".join(lines) + "\n"
