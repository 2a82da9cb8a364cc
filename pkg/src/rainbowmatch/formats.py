"""Canonical JSON formats for instances, matchings and solver outcomes.

Parsing keeps track of where every array and object starts so that a malformed
file can be reported by byte offset.  Serialization is compact and canonical:
serializing a parsed canonical file reproduces it byte for byte.
"""
from __future__ import annotations

import json
import json.decoder
import json.scanner

from .core import Edge, Instance, Matching
from .errors import FormatError


class _PosList(list):
    offset = 0


class _PosDict(dict):
    offset = 0


class _PositionDecoder(json.JSONDecoder):
    def __init__(self):
        super().__init__()

        def parse_array(s_and_end, scan_once, *args, **kwargs):
            values, end = json.decoder.JSONArray(s_and_end, scan_once, *args, **kwargs)
            out = _PosList(values)
            out.offset = s_and_end[1] - 1
            return out, end

        def parse_object(s_and_end, *args, **kwargs):
            values, end = json.decoder.JSONObject(s_and_end, *args, **kwargs)
            out = _PosDict(values)
            out.offset = s_and_end[1] - 1
            return out, end

        self.parse_array = parse_array
        self.parse_object = parse_object
        self.scan_once = json.scanner.py_make_scanner(self)


class _Doc:
    """Parsed JSON text plus char-index to byte-offset conversion."""

    def __init__(self, text):
        if isinstance(text, bytes):
            try:
                text = text.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise FormatError("input is not valid UTF-8", exc.start) from None
        self.text = text
        try:
            self.root = _PositionDecoder().decode(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", self.byte(exc.pos)) from None

    def byte(self, idx):
        return len(self.text[:idx].encode("utf-8"))

    def fail(self, node, rule):
        raise FormatError(rule, self.byte(getattr(node, "offset", 0)))


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _check_keys(doc, obj, required, optional=()):
    if not isinstance(obj, dict):
        doc.fail(obj, "expected a JSON object")
    for k in required:
        if k not in obj:
            doc.fail(obj, f"missing key {k!r}")
    extra = set(obj) - set(required) - set(optional)
    if extra:
        doc.fail(obj, f"unexpected key {sorted(extra)[0]!r}")


def parse_instance_located(text):
    """Parse instance JSON; return (instance, locations).

    ``locations`` maps (colour, clique index) and (colour, None) to byte offsets.
    Structural problems raise FormatError; invariant violations (small cliques,
    ordering, shared pairs) are left for ``validate_instance``.
    """
    doc = _Doc(text)
    root = doc.root
    _check_keys(doc, root, ("n", "classes"), ("simple_mode",))
    n = root["n"]
    if not _is_int(n) or n < 0:
        doc.fail(root, "'n' must be a non-negative integer")
    simple = root.get("simple_mode", False)
    if not isinstance(simple, bool):
        doc.fail(root, "'simple_mode' must be a boolean")
    classes = root["classes"]
    if not isinstance(classes, list):
        doc.fail(root, "'classes' must be an array")
    if len(classes) != n:
        doc.fail(classes, f"expected {n} colour classes, found {len(classes)}")
    locations = {}
    out = []
    for c, obj in enumerate(classes):
        _check_keys(doc, obj, ("colour", "cliques"))
        if obj["colour"] != c or not _is_int(obj["colour"]):
            doc.fail(obj, f"colours must appear once each in order: expected colour {c}")
        locations[(c, None)] = doc.byte(obj.offset)
        cliques = obj["cliques"]
        if not isinstance(cliques, list):
            doc.fail(obj, "'cliques' must be an array")
        cls = []
        for j, k in enumerate(cliques):
            if not isinstance(k, list) or not all(_is_int(x) for x in k):
                doc.fail(k if isinstance(k, list) else cliques, "a clique must be an array of integers")
            locations[(c, j)] = doc.byte(k.offset)
            cls.append(tuple(k))
        out.append(tuple(cls))
    return Instance(tuple(out), simple), locations


def parse_instance(text) -> Instance:
    return parse_instance_located(text)[0]


def dumps_instance(instance: Instance) -> str:
    obj = {
        "n": instance.n,
        "simple_mode": instance.simple_mode,
        "classes": [{"colour": c, "cliques": [list(k) for k in cls]} for c, cls in enumerate(instance.classes)],
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def matching_to_obj(m: Matching) -> dict:
    return {"edges": [{"colour": e.colour, "u": e.u, "v": e.v} for e in m]}


def parse_matching(text) -> Matching:
    doc = _Doc(text)
    root = doc.root
    _check_keys(doc, root, ("edges",))
    edges = root["edges"]
    if not isinstance(edges, list):
        doc.fail(root, "'edges' must be an array")
    out = []
    for obj in edges:
        _check_keys(doc, obj, ("colour", "u", "v"))
        if not all(_is_int(obj[k]) for k in ("colour", "u", "v")):
            doc.fail(obj, "edge fields must be integers")
        if not obj["u"] < obj["v"]:
            doc.fail(obj, "edge endpoints must satisfy u < v")
        out.append(Edge(obj["colour"], obj["u"], obj["v"]))
    return Matching(tuple(out))


def dumps_matching(m: Matching) -> str:
    return json.dumps(matching_to_obj(m), separators=(",", ":")) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def read_text(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()
