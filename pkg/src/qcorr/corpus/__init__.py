"""Catalog of explicit maps and expectations, its file format and a runner."""

from .format import (
    CorpusEntry,
    DegreeMismatch,
    ParseError,
    UnknownGenerator,
    parse_catalog,
    parse_expr,
    parse_map_file,
    print_entry,
    print_expr,
)
from .runner import CatalogReport, EntryResult, load_catalog, run_catalog, run_entry

__all__ = [
    "CorpusEntry", "DegreeMismatch", "ParseError", "UnknownGenerator", "parse_catalog",
    "parse_expr", "parse_map_file", "print_entry", "print_expr", "CatalogReport",
    "EntryResult", "load_catalog", "run_catalog", "run_entry",
]
