"""Presentations of subgroups of mapping tori of free group endomorphisms."""

import json

from ._core import Error, ParseError, fold, normalize, present_json, verify_json

__all__ = ["Error", "ParseError", "fold", "normalize", "present", "verify"]


def present(problem, depth=None, jobs=None):
    """Run a problem file's text; returns the JSON document as a dict."""
    return json.loads(present_json(problem, depth, jobs))


def verify(document, problem):
    if not isinstance(document, str):
        document = json.dumps(document)
    return verify_json(document, problem)
