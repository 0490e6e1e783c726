"""
Named lattices and direct-sum expressions such as ``U+A1+E8^2``.

Root lattices are negative definite with Bourbaki node numbering: simple
roots have square ``-2`` and adjacent nodes pair to ``1``. ``U`` is the
hyperbolic plane and ``<k>`` the rank one lattice with generator of square
``k``. An explicit block is written ``gram:[[2,1],[1,-2]]``.
"""

import json
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from toricdual.linalg.matrix import IntMatrix, int_matrix
from toricdual.utils.exceptions import ParseError

from .lattice import IntLattice, block_diagonal

# edges between Bourbaki nodes, 1-based
_E_DIAGRAMS: Dict[int, List[Tuple[int, int]]] = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    8: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}

_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def _from_diagram(n: int, edges: List[Tuple[int, int]]) -> IntMatrix:
    g = np.zeros((n, n), dtype=int)
    np.fill_diagonal(g, -2)
    for a, b in edges:
        g[a - 1, b - 1] = g[b - 1, a - 1] = 1
    return int_matrix(g)


def root_gram(kind: str, n: int) -> IntMatrix:
    """Negative definite Cartan form of ``A_n``, ``D_n`` or ``E_n``."""
    if kind == "A" and n >= 1:
        return _from_diagram(n, [(k, k + 1) for k in range(1, n)])
    if kind == "D" and n >= 4:
        chain = [(k, k + 1) for k in range(1, n - 1)]
        return _from_diagram(n, chain + [(n - 2, n)])
    if kind == "E" and n in _E_DIAGRAMS:
        return _from_diagram(n, _E_DIAGRAMS[n])
    raise ParseError(f"There is no root lattice {kind}{n}")


U_GRAM = int_matrix([[0, 1], [1, 0]])


@dataclass(frozen=True)
class Summand:
    """One direct summand of a lattice expression."""

    kind: str
    n: Optional[int] = None
    block: Optional[Tuple[Tuple[int, ...], ...]] = None

    def gram(self) -> IntMatrix:
        if self.kind == "U":
            return U_GRAM
        if self.kind == "<>":
            return int_matrix([[self.n]])
        if self.kind == "gram":
            return int_matrix(self.block)
        return root_gram(self.kind, self.n)

    def __str__(self) -> str:
        if self.kind == "U":
            return "U"
        if self.kind == "<>":
            return f"<{self.n}>"
        if self.kind == "gram":
            rows = json.dumps([list(r) for r in self.block])
            return "gram:" + rows.replace(" ", "")
        return f"{self.kind}{self.n}"


_ROOT = re.compile(r"^([ADE])(\d+)$")
_RANK_ONE = re.compile(r"^<([+-]?\d+)>$")
_POWER = re.compile(r"^(.*?)\^(\d+)$")


def _split_terms(text: str) -> List[str]:
    terms, depth, current = [], 0, []
    for ch in text:
        if ch in "[<":
            depth += 1
        elif ch in "]>":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(current))
            current = []
        else:
            current.append(ch)
    terms.append("".join(current))
    return terms


def _parse_summand(term: str) -> Summand:
    if term == "U":
        return Summand("U")
    match = _ROOT.match(term)
    if match:
        summand = Summand(match.group(1), int(match.group(2)))
        summand.gram()
        return summand
    match = _RANK_ONE.match(term)
    if match:
        k = int(match.group(1))
        if k == 0:
            raise ParseError("<0> is degenerate", location=term)
        return Summand("<>", k)
    if term.startswith("gram:"):
        try:
            rows = json.loads(term[len("gram:") :])
            block = int_matrix(rows)
        except (ValueError, TypeError) as e:
            raise ParseError(f"Malformed Gram block: {e}", location=term) from e
        if block.shape[0] != block.shape[1] or not np.all(block == block.T):
            raise ParseError("Gram block must be square and symmetric", location=term)
        return Summand("gram", block=tuple(tuple(int(x) for x in r) for r in block))
    raise ParseError(f"Unknown lattice summand {term!r}", location=term)


@dataclass(frozen=True)
class NamedLatticeExpr:
    """
    Direct sum of named lattices.

    Parse with :meth:`parse`; ``str()`` gives the canonical text form.
    """

    terms: Tuple[Tuple[Summand, int], ...]

    @classmethod
    def parse(cls, text: str) -> "NamedLatticeExpr":
        cleaned = (
            text.replace("⊕", "+")
            .replace("⟨", "<")
            .replace("⟩", ">")
            .translate(_SUBSCRIPTS)
        )
        cleaned = "".join(cleaned.split())
        if not cleaned:
            raise ParseError("Empty lattice expression")
        terms = []
        for term in _split_terms(cleaned):
            if not term:
                raise ParseError("Empty summand", location=text)
            multiplicity = 1
            match = _POWER.match(term)
            if match:
                term, multiplicity = match.group(1), int(match.group(2))
            if multiplicity < 1:
                raise ParseError("Multiplicity must be positive", location=text)
            terms.append((_parse_summand(term), multiplicity))
        return cls(tuple(terms))

    def gram(self) -> IntMatrix:
        blocks = [s.gram() for s, m in self.terms for _ in range(m)]
        return block_diagonal(*blocks)

    def lattice(self) -> IntLattice:
        return IntLattice(self.gram())

    @property
    def rank(self) -> int:
        return self.gram().shape[0]

    def __str__(self) -> str:
        return "+".join(
            str(s) if m == 1 else f"{s}^{m}" for s, m in self.terms
        )

    def pretty(self) -> str:
        """Human form with direct-sum signs, e.g. ``U ⊕ A1 ⊕ E8^2``."""
        parts = []
        for s, m in self.terms:
            text = f"⟨{s.n}⟩" if s.kind == "<>" else str(s)
            parts.append(text if m == 1 else f"{text}^{m}")
        return " ⊕ ".join(parts)


def named_gram(expr: Union[str, NamedLatticeExpr]) -> IntMatrix:
    """Block-diagonal Gram matrix of a lattice expression."""
    if isinstance(expr, str):
        expr = NamedLatticeExpr.parse(expr)
    return expr.gram()


CATALOG: Tuple[str, ...] = (
    "U",
    "U+A1",
    "U+A2",
    "U+E6",
    "U+E7",
    "U+A1+E7",
    "U+A1+E8",
    "U+A2+E8",
    "U+E6+E8",
    "U+E7+E8",
    "U+E8^2",
    "U+U+E8^2",
    "U+<-2>+E8^2",
    "U+<-4>+E8^2",
    "U+<2>+E8^2",
    "U+<4>+E8^2",
    "<2>",
    "<4>",
    "gram:[[2,1],[1,-2]]",
)
"""Named lattices that computed Picard lattices are matched against."""
