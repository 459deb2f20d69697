"""Problem documents: a prior, a channel and an optional attribute channel, as JSON.

Example::

    {"name": "bsc", "prior": [0.5, 0.5],
     "channel": [[0.75, 0.25], [0.25, 0.75]],
     "labels_x": ["a", "b"], "labels_y": ["0", "1"]}

``attr_channel`` holds ``P_{U|X}`` (one row per input symbol, labelled by
``labels_u``); it defines an attribute ``U`` for the post-processing checks.
"""

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, ParseError
from .simplex import Channel, Dist, default_labels, make_channel, make_dist

KNOWN_FIELDS = ("name", "prior", "channel", "attr_channel", "labels_x", "labels_y", "labels_u")


@dataclass(frozen=True)
class ProblemSpec:
    prior: Dist
    channel: Channel
    attr_channel: Optional[Channel] = None
    name: str = ""


def _matrix(doc, key):
    value = doc[key]
    if (not isinstance(value, list) or not value
            or not all(isinstance(r, list) for r in value)):
        raise ParseError(f"{key!r} must be a non-empty array of arrays")
    width = len(value[0])
    if any(len(r) != width for r in value):
        raise DimensionMismatch("rows have different lengths", key)
    return _numbers(value, key)


def _numbers(value, key):
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"{key!r} must contain only numbers") from None
    if arr.dtype == object:
        raise ParseError(f"{key!r} must contain only numbers")
    return arr


def _labels(doc, key, n, prefix):
    if key not in doc:
        return default_labels(n, prefix)
    labels = doc[key]
    if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise ParseError(f"{key!r} must be an array of strings")
    if len(labels) != n:
        raise DimensionMismatch(f"{len(labels)} labels for {n} symbols", key)
    return tuple(labels)


def problem_from_dict(doc):
    """Validate a decoded document and build the `ProblemSpec`."""
    if not isinstance(doc, dict):
        raise ParseError("problem document must be a JSON object")
    unknown = sorted(set(doc) - set(KNOWN_FIELDS))
    if unknown:
        raise ParseError(f"unknown fields: {', '.join(unknown)}")
    for key in ("prior", "channel"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    if not isinstance(doc["prior"], list) or not doc["prior"]:
        raise ParseError("'prior' must be a non-empty array of numbers")
    prior_arr = _numbers(doc["prior"], "prior")
    if prior_arr.ndim != 1:
        raise ParseError("'prior' must be a flat array of numbers")
    x_labels = _labels(doc, "labels_x", prior_arr.size, "x")
    prior = make_dist(x_labels, prior_arr, field="prior")

    rows = _matrix(doc, "channel")
    if rows.shape[0] != len(prior):
        raise DimensionMismatch(
            f"channel row count {rows.shape[0]} != prior length {len(prior)}", "channel")
    y_labels = _labels(doc, "labels_y", rows.shape[1], "y")
    channel = make_channel(rows, x_labels, y_labels, field="channel")

    attr = None
    if "attr_channel" in doc:
        arows = _matrix(doc, "attr_channel")
        if arows.shape[0] != len(prior):
            raise DimensionMismatch(
                f"attr_channel row count {arows.shape[0]} != prior length {len(prior)}",
                "attr_channel")
        u_labels = _labels(doc, "labels_u", arows.shape[1], "u")
        attr = make_channel(arows, x_labels, u_labels, field="attr_channel")
    elif "labels_u" in doc:
        raise ParseError("'labels_u' given without 'attr_channel'")

    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")
    return ProblemSpec(prior, channel, attr, name)


def parse_problem(path):
    """Read a problem document from ``path``.

    Raises
    ------
    ParseError
        Unreadable file, malformed JSON or a document of the wrong shape.
    ValidationError
        Values that fail the simplex invariants; ``field`` names the culprit.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON at line {exc.lineno}: {exc.msg}") from None
    return problem_from_dict(doc)


def problem_to_dict(spec):
    doc = {}
    if spec.name:
        doc["name"] = spec.name
    doc["prior"] = spec.prior.probs.tolist()
    doc["channel"] = spec.channel.rows.tolist()
    doc["labels_x"] = list(spec.prior.labels)
    doc["labels_y"] = list(spec.channel.output_labels)
    if spec.attr_channel is not None:
        doc["attr_channel"] = spec.attr_channel.rows.tolist()
        doc["labels_u"] = list(spec.attr_channel.output_labels)
    return doc


def dump_problem(spec, path):
    """Write ``spec`` so that `parse_problem` reads back an equal spec."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(problem_to_dict(spec), fh, indent=2)
        fh.write("\n")

