"""Bundled demo resources: lexicon, syntactic map, grammar and texts."""

from importlib import resources


def path(name):
    """Filesystem path of a bundled data file (e.g. path("demo.lex"))."""
    return resources.files(__package__) / name


def read(name):
    return path(name).read_text(encoding="utf-8")
