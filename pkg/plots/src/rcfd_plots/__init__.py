"""Figures from rcfd-sim sweep results: throughput and delay versus network size."""

from .render import SchemaMismatch, SeriesTable, render

__all__ = ["SchemaMismatch", "SeriesTable", "render"]
