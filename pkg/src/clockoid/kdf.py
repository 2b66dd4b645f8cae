"""KDF v1: a small line-oriented text format for starred 1-linkoid diagrams.

::

    kdf 1                     # header, required
    x <id> <a> <b> <c> <d>    # crossing: slots ccw, slot 0 = incoming under arc
    loop <first> <last>       # closed component using arcs first..last
    star tail | star head | star <arc> <L|R>
    weights + m0 m1 m2 m3     # optional corner weights, positive crossings
    weights - m0 m1 m2 m3     # and negative crossings

``#`` starts a comment; blank lines are ignored.  Monomials follow the
grammar of :meth:`clockoid.laurent.LaurentPoly.parse_monomial`
(``1``, ``-1``, ``W``, ``-W``, ``W^-1``, ``3W^2``, ``0``).
"""

from __future__ import annotations

from .diagram import LinkoidDiagram, StarPlacement
from .errors import KdfSyntaxError
from .laurent import LaurentPoly
from .weights import WeightTable


def parse_kdf(text: str, name: str = "") -> LinkoidDiagram:
    """Parse a KDF document into a validated :class:`LinkoidDiagram`."""
    crossings = []
    loops = []
    star = None
    weight_rows: dict[int, list[LaurentPoly]] = {}
    saw_header = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if not saw_header:
            if fields != ["kdf", "1"]:
                raise KdfSyntaxError("expected header 'kdf 1'", lineno)
            saw_header = True
            continue
        kind = fields[0]
        if kind == "x":
            if len(fields) != 6:
                raise KdfSyntaxError("crossing needs 'x <id> <a> <b> <c> <d>'", lineno)
            try:
                values = [int(f) for f in fields[1:]]
            except ValueError:
                raise KdfSyntaxError("crossing fields must be integers", lineno)
            crossings.append((values[0], tuple(values[1:])))
        elif kind == "loop":
            if len(fields) != 3:
                raise KdfSyntaxError("loop needs 'loop <first> <last>'", lineno)
            try:
                loops.append((int(fields[1]), int(fields[2])))
            except ValueError:
                raise KdfSyntaxError("loop fields must be integers", lineno)
        elif kind == "star":
            if star is not None:
                raise KdfSyntaxError("more than one star line", lineno)
            star = _parse_star(fields, lineno)
        elif kind == "weights":
            sign = _parse_weight_sign(fields, lineno)
            if sign in weight_rows:
                raise KdfSyntaxError(f"duplicate 'weights {fields[1]}' line", lineno)
            try:
                weight_rows[sign] = [LaurentPoly.parse_monomial(f) for f in fields[2:]]
            except ValueError as exc:
                raise KdfSyntaxError(str(exc), lineno)
        else:
            raise KdfSyntaxError(f"unknown directive {kind!r}", lineno)

    if not saw_header:
        raise KdfSyntaxError("empty document, expected header 'kdf 1'", 1)

    weights = None
    if weight_rows:
        if set(weight_rows) != {1, -1}:
            raise KdfSyntaxError("need both 'weights +' and 'weights -' lines")
        weights = WeightTable(
            positive=tuple(weight_rows[1]), negative=tuple(weight_rows[-1])
        )
    return LinkoidDiagram(crossings, loops=loops, star=star, name=name, weights=weights)


def _parse_star(fields, lineno):
    if len(fields) == 2 and fields[1] in ("tail", "head"):
        return StarPlacement(fields[1])
    if len(fields) == 3 and fields[2] in ("L", "R"):
        try:
            return StarPlacement.at_arc(int(fields[1]), fields[2])
        except ValueError:
            raise KdfSyntaxError("star arc must be an integer", lineno)
    raise KdfSyntaxError("star needs 'tail', 'head' or '<arc> <L|R>'", lineno)


def _parse_weight_sign(fields, lineno):
    if len(fields) != 6 or fields[1] not in ("+", "-"):
        raise KdfSyntaxError("weights needs 'weights <+|-> m0 m1 m2 m3'", lineno)
    return 1 if fields[1] == "+" else -1


def parse_kdf_file(path, name=None) -> LinkoidDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if name is None:
        import os

        name = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_kdf(text, name=name)


def to_kdf(diagram: LinkoidDiagram) -> str:
    """Serialize a diagram back to KDF text (weights included if present)."""
    lines = ["kdf 1"]
    for c in diagram.crossings:
        lines.append("x {} {} {} {} {}".format(c.id, *c.slots))
    for first, last in diagram.loops:
        lines.append(f"loop {first} {last}")
    lines.append(str(diagram.star))
    if diagram.weights is not None:
        lines.extend(diagram.weights.kdf_lines())
    return "\n".join(lines) + "\n"
