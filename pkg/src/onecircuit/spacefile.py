"""Text format for space descriptions: parse, validate, serialize.

A space file is line oriented; blank lines and ``#`` comments are ignored
and each remaining line is ``key: value``.  Rationals are written ``p/q``
(or a bare integer) -- never decimals.  Sequence blocks share one grammar::

    prefix=<r r ...>; q=<r>; poly=<c0 c1 ...>

with polynomial coefficients listed low power to high and empty lists
allowed.  The three kinds::

    kind: circuit          kind: shift            kind: tree
    kappa: 2               form: products         trunk: 1 1/2
    circuit: 2 3           seq: prefix=; q=1; ... fan: 2 2
    branch: prefix=; ...                          profile: prefix=; ...

``branch`` and ``profile`` lines repeat, one per branch, in order.  Domain
starts are implied by role: shift data at 0, branch measures and tree
profiles at 1.  Parsing then serializing then parsing again is the identity
on the parsed objects, and serialization is canonical, so equal objects
produce byte-identical files.
"""

from __future__ import annotations

from fractions import Fraction

from .exactseq import EvSeq, Poly, format_rational
from .spaces import CircuitSpace, TreeShift, UnilateralShift


class SpaceFileError(ValueError):
    """Malformed space description, with a line-level diagnostic."""


def _parse_rational(token: str, line_no: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpaceFileError(f"line {line_no}: bad rational {token!r}: {exc}") from exc


def _parse_rational_list(text: str, line_no: int) -> list[Fraction]:
    return [_parse_rational(tok, line_no) for tok in text.split()]


def _parse_evseq(text: str, start: int, line_no: int) -> EvSeq:
    fields: dict[str, str] = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise SpaceFileError(f"line {line_no}: expected key=value, got {part!r}")
        key, _, value = part.partition("=")
        fields[key.strip()] = value.strip()
    missing = {"prefix", "q", "poly"} - fields.keys()
    if missing:
        raise SpaceFileError(f"line {line_no}: sequence block missing {sorted(missing)}")
    prefix = _parse_rational_list(fields["prefix"], line_no)
    q = _parse_rational(fields["q"], line_no)
    coeffs = _parse_rational_list(fields["poly"], line_no)
    try:
        return EvSeq(start, tuple(prefix), q, Poly(tuple(coeffs)))
    except ValueError as exc:
        raise SpaceFileError(f"line {line_no}: {exc}") from exc


def _format_evseq(seq: EvSeq) -> str:
    prefix = " ".join(format_rational(v) for v in seq.prefix)
    coeffs = " ".join(format_rational(c) for c in seq.poly.coeffs)
    return f"prefix={prefix}; q={format_rational(seq.q)}; poly={coeffs}"


def parse_space(text: str) -> CircuitSpace | UnilateralShift | TreeShift:
    """Parse and validate a space description; diagnostics carry line numbers."""
    single: dict[str, tuple[str, int]] = {}
    repeated: dict[str, list[tuple[str, int]]] = {"branch": [], "profile": []}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise SpaceFileError(f"line {line_no}: expected 'key: value', got {raw!r}")
        key, _, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if key in repeated:
            repeated[key].append((value, line_no))
        elif key in single:
            raise SpaceFileError(f"line {line_no}: duplicate field {key!r}")
        else:
            single[key] = (value, line_no)

    def need(key: str) -> tuple[str, int]:
        if key not in single:
            raise SpaceFileError(f"missing required field {key!r}")
        return single[key]

    kind, kind_line = need("kind")
    try:
        if kind == "circuit":
            kappa_text, kappa_line = need("kappa")
            try:
                kappa = int(kappa_text)
            except ValueError as exc:
                raise SpaceFileError(f"line {kappa_line}: bad kappa {kappa_text!r}") from exc
            circuit_text, circuit_line = need("circuit")
            circuit = _parse_rational_list(circuit_text, circuit_line)
            if len(circuit) != kappa:
                raise SpaceFileError(
                    f"line {circuit_line}: expected {kappa} circuit measures, got {len(circuit)}"
                )
            branches = [_parse_evseq(v, 1, n) for v, n in repeated["branch"]]
            if not branches:
                raise SpaceFileError("a circuit space needs at least one branch line")
            return CircuitSpace(tuple(circuit), tuple(branches))
        if kind == "shift":
            form, _ = need("form")
            seq_text, seq_line = need("seq")
            seq = _parse_evseq(seq_text, 0, seq_line)
            return UnilateralShift(form, seq)
        if kind == "tree":
            trunk_text, trunk_line = need("trunk")
            fan_text, fan_line = need("fan")
            trunk = _parse_rational_list(trunk_text, trunk_line)
            fan = _parse_rational_list(fan_text, fan_line)
            profiles = [_parse_evseq(v, 1, n) for v, n in repeated["profile"]]
            return TreeShift(tuple(trunk), tuple(fan), tuple(profiles))
    except SpaceFileError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpaceFileError(str(exc)) from exc
    raise SpaceFileError(f"line {kind_line}: unknown kind {kind!r}")


def parse_space_file(path: str) -> CircuitSpace | UnilateralShift | TreeShift:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_space(handle.read())


def serialize_space(obj: CircuitSpace | UnilateralShift | TreeShift) -> str:
    """Canonical text form; parse(serialize(parse(f))) == parse(f)."""
    lines: list[str] = []
    if isinstance(obj, CircuitSpace):
        lines.append("kind: circuit")
        lines.append(f"kappa: {obj.kappa}")
        lines.append("circuit: " + " ".join(format_rational(v) for v in obj.circuit))
        for b in obj.branches:
            lines.append("branch: " + _format_evseq(b))
    elif isinstance(obj, UnilateralShift):
        lines.append("kind: shift")
        lines.append(f"form: {obj.form}")
        lines.append("seq: " + _format_evseq(obj.seq))
    elif isinstance(obj, TreeShift):
        lines.append("kind: tree")
        lines.append("trunk: " + " ".join(format_rational(v) for v in obj.trunk_sq))
        lines.append("fan: " + " ".join(format_rational(v) for v in obj.fan_sq))
        for p in obj.profiles:
            lines.append("profile: " + _format_evseq(p))
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def write_space_file(path: str, obj: CircuitSpace | UnilateralShift | TreeShift) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_space(obj))
