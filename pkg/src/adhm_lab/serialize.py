"""Canonical JSON reading and writing.

Rendering is deterministic (sorted keys, two-space indent, trailing newline)
so that parse/render round-trips are byte-identical and corpus files double
as golden output.
"""

from __future__ import annotations

import json


class SerializeError(Exception):
    pass


def render_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def parse_json(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializeError("%s: malformed JSON at line %d column %d: %s"
                             % (source, exc.lineno, exc.colno, exc.msg)) from None


def load_json_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SerializeError("cannot read %s: %s" % (path, exc)) from None
    return parse_json(text, source=str(path))
