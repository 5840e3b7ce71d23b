"""Knot mosaics, tree mosaics and exact realizations of the knots they present."""

from importlib.resources import files

from .grid import Kind, Mosaic, Tile, classify, mosaic, parse_mosaic, read_mosaic
from .transforms import D4, D4Element, EmbedSpec, d4_act, embed, zoom
from .tree import TreeMosaic, contract, read_tree, star_reduce, validate

__version__ = "0.1.0"


def corpus_path(name: str = "") -> str:
    """Path of a file in the bundled example corpus."""
    return str(files(__name__) / "corpus" / name)


__all__ = [
    "D4", "D4Element", "EmbedSpec", "Kind", "Mosaic", "Tile", "TreeMosaic",
    "classify", "contract", "corpus_path", "d4_act", "embed", "mosaic",
    "parse_mosaic", "read_mosaic", "read_tree", "star_reduce", "validate", "zoom",
]
