"""Line-oriented `key: value` problem files for the command-line frontend.

A file is a sequence of `key: value` lines; `#` starts a comment and blank
lines are ignored.  Repeatable keys (equation, approx, compare, ...) collect
in order.  Unknown keys are rejected with the offending line number, so
fixtures stay diff-friendly and typo-proof.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field as dc_field

from .errors import ParseError
from .fields import QQ, PrimeField
from .parse import parse_polynomial, parse_series
from .series import SeriesVector, TruncatedSeries

FIELD_ENV_VAR = "MADIC_FIELD"

_REPEATABLE = {
    "equation",
    "approx",
    "compare",
    "ideal",
    "colon_left",
    "colon_right",
    "member",
    "radical_member",
    "family",
}

_SCALAR = {
    "field",
    "series_vars",
    "unknowns",
    "precision",
    "target_order",
    "order",
    "strategy",
    "seed",
    "jet_length",
    "m",
    "d",
    "n",
    "s",
    "c",
    "k",
    "K",
    "inner_constant",
    "series",
    "dividend",
    "divisor",
    "family_range",
    "targets",
}

_GF_RE = re.compile(r"^GF\(\s*(\d+)\s*\)$")


def parse_field_spec(text):
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    m = _GF_RE.match(text)
    if m:
        return PrimeField(int(m.group(1)))
    raise ParseError(f"unknown field {text!r}; expected Q or GF(p)")


def default_field():
    return parse_field_spec(os.environ.get(FIELD_ENV_VAR, "Q"))


@dataclass
class ProblemFile:
    """Parsed problem file: raw strings plus typed accessors.

    Equation/series text is kept verbatim so a single file can be re-read
    under a different field or precision supplied on the command line.
    """

    path: str
    scalars: dict = dc_field(default_factory=dict)
    lists: dict = dc_field(default_factory=dict)

    # -- raw access ---------------------------------------------------

    def get(self, key, default=None):
        return self.scalars.get(key, default)

    def get_int(self, key, default=None):
        if key not in self.scalars:
            return default
        try:
            return int(self.scalars[key])
        except ValueError:
            raise ParseError(f"{key} must be an integer, got {self.scalars[key]!r}")

    def get_list(self, key):
        return self.lists.get(key, [])

    def require(self, key):
        if key in self.scalars:
            return self.scalars[key]
        raise ParseError(f"missing required key {key!r} in {self.path}")

    def require_list(self, key):
        vals = self.get_list(key)
        if not vals:
            raise ParseError(f"need at least one {key!r} line in {self.path}")
        return vals

    # -- typed accessors ----------------------------------------------

    def field(self):
        if "field" in self.scalars:
            return parse_field_spec(self.scalars["field"])
        return default_field()

    def series_vars(self):
        names = tuple(self.require("series_vars").split())
        if len(names) not in (1, 2):
            raise ParseError("series_vars must list one or two names")
        return names

    def unknowns(self):
        return tuple(self.require("unknowns").split())

    def all_vars(self):
        """Ambient ring variables; series_vars is optional for the purely
        polynomial commands."""
        if "series_vars" in self.scalars:
            return self.series_vars() + self.unknowns()
        return self.unknowns()

    def assignment(self):
        return {u: i for i, u in enumerate(self.unknowns())}

    def equations(self, fld=None):
        fld = fld or self.field()
        vars = self.all_vars()
        return [parse_polynomial(t, vars, fld) for t in self.require_list("equation")]

    def polynomials(self, key, vars=None, fld=None):
        fld = fld or self.field()
        vars = vars or self.all_vars()
        return [parse_polynomial(t, vars, fld) for t in self.get_list(key)]

    def series_value(self, text, precision=None, fld=None):
        fld = fld or self.field()
        poly, prec = parse_series(text, self.series_vars(), fld)
        prec = precision or prec
        return TruncatedSeries.from_polynomial(poly, prec)

    def approx_vector(self, precision=None, fld=None):
        texts = self.require_list("approx")
        if len(texts) != len(self.unknowns()):
            raise ParseError(
                f"{len(self.unknowns())} unknowns but {len(texts)} approx lines"
            )
        fld = fld or self.field()
        entries = [self.series_value(t, fld=fld) for t in texts]
        prec = precision or min(s.precision for s in entries)
        return SeriesVector([s.truncate(min(prec, s.precision)) for s in entries])

    def family_vectors(self, precision=None, fld=None):
        """Expand `family` template lines over the `family_range` indices.

        Each family line is a series literal that may contain `{k}`; the
        range line `family_range: a b` substitutes k = a..b inclusive.
        """
        templates = self.require_list("family")
        lo, hi = self._range()
        fld = fld or self.field()
        out = []
        labels = []
        for k in range(lo, hi + 1):
            entries = [
                self.series_value(t.replace("{k}", str(k)), fld=fld)
                for t in templates
            ]
            prec = precision or min(s.precision for s in entries)
            out.append(SeriesVector([s.truncate(min(prec, s.precision)) for s in entries]))
            labels.append(f"k={k}")
        return out, labels

    def _range(self):
        parts = self.require("family_range").split()
        if len(parts) != 2:
            raise ParseError("family_range must be two integers")
        lo, hi = int(parts[0]), int(parts[1])
        if hi < lo:
            raise ParseError("empty family_range")
        return lo, hi

    def targets(self):
        if "targets" in self.scalars:
            return [int(t) for t in self.scalars["targets"].split()]
        c = self.get_int("target_order")
        return [c] if c is not None else []


def load_problem(path):
    pf = ProblemFile(path)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value' in {path}", lineno)
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        if key in _REPEATABLE:
            pf.lists.setdefault(key, []).append(value)
        elif key in _SCALAR:
            if key in pf.scalars:
                raise ParseError(f"duplicate key {key!r} in {path}", lineno)
            pf.scalars[key] = value
        else:
            raise ParseError(f"unknown key {key!r} in {path}", lineno)
    return pf
