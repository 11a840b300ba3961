"""Exact computer algebra for differential graded modules with a possibly
non-associative multiplication: polynomial arithmetic, signed monomial
algebras, multigraded chain complexes, associator calculus, resolution
constructions and a signed Buchberger engine."""

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path to a bundled .mdg document (name with or without extension)."""
    from importlib.resources import files
    if not name.endswith(".mdg"):
        name += ".mdg"
    return files(__name__).joinpath("fixtures", name)


def load_fixture(name: str):
    """Parse a bundled .mdg document and return the Document."""
    from .parser import parse_document
    return parse_document(fixture_path(name).read_text())
