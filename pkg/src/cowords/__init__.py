"""Exact deciders for co-word problems of Houghton and Higman-Thompson
type groups, with pushdown machine constructions and a cross-validation
harness."""

__version__ = "0.1.0"
