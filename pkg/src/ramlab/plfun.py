"""Exact continuous piecewise-linear functions on the half-line ``[0, oo)``."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .valgroup import as_rat, format_rat

__all__ = [
    "PLFun",
    "pl_eval",
    "pl_add",
    "pl_scale",
    "pl_max",
    "pl_right_slope",
    "pl_left_slope",
    "pl_is_convex",
    "pl_eventual_slope",
    "pl_breakpoints",
    "plot_rows",
    "emit_plot_csv",
]


@dataclass(frozen=True)
class PLFun:
    """Continuous PL function given by its value at 0 and its slopes.

    ``pieces[j] = (x_j, s_j)`` means slope ``s_j`` on the segment ending at
    ``x_j``; ``final_slope`` holds after the last breakpoint.  Instances are
    always canonical: breakpoints strictly increase and adjacent slopes differ.
    """

    at0: Fraction
    pieces: Tuple[Tuple[Fraction, Fraction], ...]
    final_slope: Fraction

    def __init__(self, at0=0, pieces: Iterable[Tuple[object, object]] = (), final_slope=0):
        at0 = as_rat(at0)
        final_slope = as_rat(final_slope)
        raw = [(as_rat(x), as_rat(s)) for x, s in pieces]
        prev = Fraction(0)
        for x, _ in raw:
            if x <= prev:
                raise ValueError("breakpoints must be positive and strictly increasing")
            prev = x
        # merge segments that share a slope with their successor
        slopes = [s for _, s in raw] + [final_slope]
        xs = [x for x, _ in raw]
        canon: List[Tuple[Fraction, Fraction]] = []
        for j, x in enumerate(xs):
            if slopes[j] != slopes[j + 1]:
                canon.append((x, slopes[j]))
        object.__setattr__(self, "at0", at0)
        object.__setattr__(self, "pieces", tuple(canon))
        object.__setattr__(self, "final_slope", final_slope)

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c) -> "PLFun":
        return cls(c, (), 0)

    @classmethod
    def linear(cls, at0, slope) -> "PLFun":
        return cls(at0, (), slope)

    @classmethod
    def from_nodes(cls, nodes: Sequence[Tuple[Fraction, Fraction]], final_slope) -> "PLFun":
        """Interpolate through ``(x, y)`` nodes starting at ``x = 0``."""
        if not nodes or nodes[0][0] != 0:
            raise ValueError("nodes must start at x = 0")
        pieces = []
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            if x1 <= x0:
                raise ValueError("node abscissae must increase")
            pieces.append((x1, (y1 - y0) / (x1 - x0)))
        return cls(nodes[0][1], pieces, final_slope)

    # -- queries ------------------------------------------------------
    def breakpoints(self) -> List[Fraction]:
        return [x for x, _ in self.pieces]

    def slopes(self) -> List[Fraction]:
        return [s for _, s in self.pieces] + [self.final_slope]

    def nodes(self) -> List[Tuple[Fraction, Fraction]]:
        """``(x, f(x))`` at 0 and at every breakpoint."""
        out = [(Fraction(0), self.at0)]
        x0, y = Fraction(0), self.at0
        for x, s in self.pieces:
            y += s * (x - x0)
            x0 = x
            out.append((x, y))
        return out

    def __call__(self, x) -> Fraction:
        x = as_rat(x)
        if x < 0:
            raise ValueError(f"PLFun is defined on [0, oo), got {x}")
        x0, y = Fraction(0), self.at0
        for b, s in self.pieces:
            if x <= b:
                return y + s * (x - x0)
            y += s * (b - x0)
            x0 = b
        return y + self.final_slope * (x - x0)

    def right_slope(self, x) -> Fraction:
        x = as_rat(x)
        if x < 0:
            raise ValueError(f"right slope needs x >= 0, got {x}")
        for b, s in self.pieces:
            if x < b:
                return s
        return self.final_slope

    def left_slope(self, x) -> Fraction:
        x = as_rat(x)
        if x <= 0:
            raise ValueError(f"left slope needs x > 0, got {x}")
        for b, s in self.pieces:
            if x <= b:
                return s
        return self.final_slope

    def is_convex(self) -> bool:
        sl = self.slopes()
        return all(a <= b for a, b in zip(sl, sl[1:]))

    def is_nondecreasing(self) -> bool:
        return all(s >= 0 for s in self.slopes())

    @property
    def eventual_slope(self) -> Fraction:
        return self.final_slope

    @property
    def eventual_intercept(self) -> Fraction:
        """``c`` such that ``f(x) = eventual_slope * x + c`` past the last breakpoint."""
        x, y = self.nodes()[-1]
        return y - self.final_slope * x

    @property
    def linearity_onset(self) -> Fraction:
        return self.pieces[-1][0] if self.pieces else Fraction(0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "PLFun") -> "PLFun":
        xs = sorted(set(self.breakpoints()) | set(other.breakpoints()))
        pieces = [(x, self.left_slope(x) + other.left_slope(x)) for x in xs]
        return PLFun(self.at0 + other.at0, pieces, self.final_slope + other.final_slope)

    def scale(self, c) -> "PLFun":
        c = as_rat(c)
        return PLFun(self.at0 * c, [(x, s * c) for x, s in self.pieces], self.final_slope * c)

    def maximum(self, other: "PLFun") -> "PLFun":
        xs = sorted(set(self.breakpoints()) | set(other.breakpoints()) | {Fraction(0)})
        cuts = set(xs)
        # crossings strictly inside each segment, and on the unbounded tail
        bounds = list(zip(xs, xs[1:])) + [(xs[-1], None)]
        for a, b in bounds:
            da = self(a) - other(a)
            dslope = self.right_slope(a) - other.right_slope(a)
            if dslope == 0:
                continue
            t = a - da / dslope
            if t > a and (b is None or t < b):
                cuts.add(t)
        grid = sorted(cuts)
        nodes = [(x, max(self(x), other(x))) for x in grid]
        last = grid[-1]
        fl, gl = self(last), other(last)
        if fl != gl:
            final = self.final_slope if fl > gl else other.final_slope
        else:
            final = max(self.final_slope, other.final_slope)
        return PLFun.from_nodes(nodes, final)

    def shift(self, s) -> "PLFun":
        """``x -> f(x - s)`` on ``[s, oo)``, constant ``f(0)`` before ``s``."""
        s = as_rat(s)
        if s < 0:
            raise ValueError("shift must be non-negative")
        if s == 0:
            return self
        pieces = [(s, Fraction(0))] + [(x + s, sl) for x, sl in self.pieces]
        return PLFun(self.at0, pieces, self.final_slope)

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        return {
            "at0": format_rat(self.at0),
            "pieces": [{"until": format_rat(x), "slope": format_rat(s)} for x, s in self.pieces],
            "final_slope": format_rat(self.final_slope),
        }

    @classmethod
    def from_json(cls, obj) -> "PLFun":
        return cls(
            as_rat(obj.get("at0", 0)),
            [(as_rat(p["until"]), as_rat(p["slope"])) for p in obj.get("pieces", [])],
            as_rat(obj.get("final_slope", 0)),
        )

    def __repr__(self):
        body = ", ".join(f"({format_rat(x)}, {format_rat(s)})" for x, s in self.pieces)
        return f"PLFun(at0={format_rat(self.at0)}, pieces=[{body}], final={format_rat(self.final_slope)})"


ZERO = PLFun()


def pl_eval(f: PLFun, x) -> Fraction:
    return f(x)


def pl_add(f: PLFun, g: PLFun) -> PLFun:
    return f + g


def pl_scale(f: PLFun, c) -> PLFun:
    return f.scale(c)


def pl_max(f: PLFun, g: PLFun) -> PLFun:
    return f.maximum(g)


def pl_right_slope(f: PLFun, x) -> Fraction:
    return f.right_slope(x)


def pl_left_slope(f: PLFun, x) -> Fraction:
    return f.left_slope(x)


def pl_is_convex(f: PLFun) -> bool:
    return f.is_convex()


def pl_eventual_slope(f: PLFun) -> Fraction:
    return f.eventual_slope


def pl_breakpoints(f: PLFun) -> List[Fraction]:
    return f.breakpoints()


def plot_rows(f: PLFun) -> List[Tuple[Fraction, Fraction]]:
    """Rows at 0, at each breakpoint, and one unit past the last breakpoint."""
    rows = f.nodes()
    tail = rows[-1][0] + 1
    rows.append((tail, f(tail)))
    return rows


def emit_plot_csv(f: PLFun, path=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    for x, y in plot_rows(f):
        w.writerow([format_rat(x), format_rat(y)])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text
