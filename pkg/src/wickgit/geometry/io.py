"""Metric input documents."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import SchemaError
from .coord import flat, sphere2
from .g2 import g2_metric
from .lie import FrameMetric, su2_metric, wick_rotate_frame_metric
from .walker import WalkerSpec

KINDS = ("frame", "walker", "g2", "g2split", "coord-builtin")


def _need(doc, key):
    if key not in doc:
        raise SchemaError(f"metric document missing field {key!r}", field=key)
    return doc[key]


def _rational(x):
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10**12)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"not a rational number: {x!r}") from exc


def metric_from_json(doc):
    if not isinstance(doc, dict):
        raise SchemaError("metric document must be a JSON object")
    kind = _need(doc, "kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown metric kind {kind!r}; expected one of {KINDS}", field="kind")
    if kind == "frame":
        if "preset" in doc:
            if doc["preset"] != "su2":
                raise SchemaError("only the 'su2' frame preset exists", field="preset")
            m = su2_metric(_rational(doc.get("lambda", 1)), int(doc.get("factors", 1)))
            return wick_rotate_frame_metric(m) if doc.get("wick") else m
        c = np.vectorize(_rational, otypes=[object])(np.array(_need(doc, "structure_constants"), dtype=object))
        eta = np.vectorize(_rational, otypes=[object])(np.array(_need(doc, "eta"), dtype=object))
        return FrameMetric(eta.shape[0], c, eta, doc.get("name", ""))
    if kind == "walker":
        pt = doc.get("point")
        if pt is not None:
            pt = tuple(_rational(x) for x in pt)
        return WalkerSpec(str(_need(doc, "A")), str(_need(doc, "B")), str(doc.get("C", "0")), pt,
                          doc.get("name", ""))
    if kind == "g2":
        return g2_metric(False)
    if kind == "g2split":
        return g2_metric(True)
    name = _need(doc, "name")
    if name == "sphere2":
        return sphere2()
    if name == "flat":
        return flat(doc.get("signs", [1, 1, 1, 1]))
    raise SchemaError(f"unknown built-in metric {name!r}", field="name")
