"""Corner weight tables for the Mock Alexander state sum.

A table assigns one Laurent monomial to each of the four corners of a
positive crossing and each of the four corners of a negative crossing.
Corner indices follow the diagram convention (corner q sits between slots
q and q+1 counterclockwise), so for a positive crossing corner 1 lies
between the two outgoing strands and corner 3 between the two incoming
ones; for a negative crossing those roles fall to corners 2 and 0.

The shipped default table makes the state sum invariant under
Reidemeister moves performed away from the star and the endpoints; see
``clockoid.polynomial`` for the polynomial itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly


def _m(text: str) -> LaurentPoly:
    return LaurentPoly.parse_monomial(text)


@dataclass(frozen=True)
class WeightTable:
    """Monomial weights per (crossing sign, corner index)."""

    positive: tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]
    negative: tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]

    def __post_init__(self):
        for row in (self.positive, self.negative):
            if len(row) != 4:
                raise ValueError("weight rows need exactly 4 monomials")
            for mono in row:
                if mono and not mono.is_monomial():
                    raise ValueError(f"weight {mono} is not a monomial")

    def weight(self, sign: int, corner: int) -> LaurentPoly:
        row = self.positive if sign > 0 else self.negative
        return row[corner % 4]

    @classmethod
    def from_strings(cls, positive, negative) -> "WeightTable":
        return cls(
            positive=tuple(_m(s) for s in positive),
            negative=tuple(_m(s) for s in negative),
        )

    @classmethod
    def all_ones(cls) -> "WeightTable":
        """Every corner weighs 1; the state sum becomes the state count."""
        ones = ("1", "1", "1", "1")
        return cls.from_strings(ones, ones)

    def kdf_lines(self) -> list[str]:
        return [
            "weights + " + " ".join(str(m) for m in self.positive),
            "weights - " + " ".join(str(m) for m in self.negative),
        ]

    def __str__(self):
        return "; ".join(self.kdf_lines())


# The default corner weights.  Mixed corners (between one incoming and one
# outgoing strand) weigh 1, which makes curls invisible to the state sum.
# Among all tables of signed monomials in {1, W, W^-1} this is the only
# one that reproduces W^2 + W - W^-1 on the simplest proper knotoid and is
# exactly invariant across the twist/push/slide-move corpus.
DEFAULT_WEIGHTS = WeightTable.from_strings(
    positive=("1", "W", "1", "-W^-1"),
    negative=("-W", "1", "W^-1", "1"),
)
