"""Complexes of groups, coverings and presentations for lattices in right-angled buildings and Davis complexes."""

__version__ = "0.1.0"
