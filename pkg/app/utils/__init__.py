"""Parsing and formatting shared by the CLI, templates and reports."""

from .formatting import format_element, parse_element, parse_ring_spec  # noqa: F401
