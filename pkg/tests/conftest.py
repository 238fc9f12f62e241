import pytest

from fslat import data
from fslat.engine import Pipeline
from fslat.grammar import parse_grammar
from fslat.lattice import default_registry, parse_syntactic_map
from fslat.lexicon import parse_lexicon


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture(scope="session")
def demo_lexicon():
    return parse_lexicon(data.read("demo.lex"))


@pytest.fixture(scope="session")
def demo_map(registry):
    return parse_syntactic_map(data.read("demo.map"), registry)


@pytest.fixture(scope="session")
def demo_grammar():
    return parse_grammar(data.read("demo.fsg"))


@pytest.fixture(scope="session")
def demo_pipeline(demo_lexicon, demo_map, demo_grammar, registry):
    return Pipeline.build(demo_lexicon, demo_map, demo_grammar, registry)


@pytest.fixture(scope="session")
def bare_pipeline(demo_lexicon, demo_map, registry):
    """Pipeline without any grammar rules."""
    return Pipeline.build(demo_lexicon, demo_map, None, registry)
